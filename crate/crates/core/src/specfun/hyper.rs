use super::dd::Dd;
use super::gamma::ln_gamma_signed;
use super::{SeriesEval, MAX_TERMS, TERM_EPS};
use crate::error::{Error, Result};

/// Parameters of pFq(a_1..a_p; b_1..b_q | z).
#[derive(Debug, Clone, PartialEq)]
pub struct HypParams {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub z: f64,
}

impl HypParams {
    pub fn new(a: Vec<f64>, b: Vec<f64>, z: f64) -> Self {
        HypParams { a, b, z }
    }
}

fn nonpositive_index(x: f64) -> Option<usize> {
    if x <= 0.0 && x == x.round() {
        Some((-x) as usize)
    } else {
        None
    }
}

/// Generalized hypergeometric series, summed in double-double arithmetic
/// until three consecutive terms fall below 1e-16 of the partial sum.
pub fn hyp_pfq(params: &HypParams) -> Result<SeriesEval> {
    let HypParams { a, b, z } = params;
    let z = *z;
    if !z.is_finite() || a.iter().chain(b.iter()).any(|x| !x.is_finite()) {
        return Err(Error::Domain("non-finite hypergeometric parameter".into()));
    }
    // the series stops after term m when some a_i = -m
    let stop = a.iter().filter_map(|&x| nonpositive_index(x)).min();
    for &bj in b {
        if let Some(mb) = nonpositive_index(bj) {
            match stop {
                Some(m) if m <= mb => {}
                _ => {
                    return Err(Error::Pole(format!(
                        "denominator parameter {bj} is a non-positive integer"
                    )))
                }
            }
        }
    }
    if z == 0.0 || stop == Some(0) {
        return Ok(SeriesEval { value: 1.0, terms_used: 1, est_abs_error: 0.0 });
    }
    let p = a.len();
    let q = b.len();
    if stop.is_none() {
        if p > q + 1 {
            return Err(Error::Divergence(format!("{p}F{q} series diverges for z != 0")));
        }
        if p == q + 1 && z.abs() >= 1.0 {
            return Err(Error::Divergence(format!(
                "{p}F{q} series diverges at |z| = {} >= 1",
                z.abs()
            )));
        }
    }
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut max_term = 1.0f64;
    let mut quiet = 0;
    let mut n = 0usize;
    loop {
        if let Some(m) = stop {
            if n == m {
                break;
            }
        }
        if n >= MAX_TERMS {
            return Err(Error::Accuracy(format!(
                "{p}F{q} not converged after {MAX_TERMS} terms"
            )));
        }
        let nf = n as f64;
        let mut num = Dd::new(z);
        for &ai in a {
            num = num * Dd::sum(ai, nf);
        }
        let mut den = Dd::new(nf + 1.0);
        for &bj in b {
            den = den * Dd::sum(bj, nf);
        }
        term = term * num / den;
        sum = sum + term;
        n += 1;
        let t = term.hi.abs();
        max_term = max_term.max(t);
        if stop.is_none() {
            if t <= TERM_EPS * sum.hi.abs() || t < 1e-300 {
                quiet += 1;
                if quiet == 3 {
                    break;
                }
            } else {
                quiet = 0;
            }
        }
    }
    let value = sum.to_f64();
    if !value.is_finite() {
        return Err(Error::Accuracy(format!("{p}F{q} overflowed")));
    }
    let est = value.abs() * 1.2e-16 + max_term * (n as f64 + 1.0) * 4e-32;
    if est > 1e-9 * value.abs() {
        return Err(Error::Accuracy(format!(
            "{p}F{q} cancellation: error estimate {est:.2e} vs value {value:.2e}"
        )));
    }
    Ok(SeriesEval { value, terms_used: n + 1, est_abs_error: est })
}

/// Gauss summation Γ(c)Γ(c-a-b)/(Γ(c-a)Γ(c-b)), valid for c-a-b > 0.
pub fn hyp2f1_unit_gauss(a: f64, b: f64, c: f64) -> Result<f64> {
    if !(c - a - b > 0.0) {
        return Err(Error::Divergence(format!(
            "2F1 at z=1 needs c-a-b > 0, got {}",
            c - a - b
        )));
    }
    let (l1, s1) = ln_gamma_signed(c)?;
    let (l2, s2) = ln_gamma_signed(c - a - b)?;
    let (l3, s3) = match ln_gamma_signed(c - a) {
        Ok(v) => v,
        Err(Error::Pole(_)) => return Ok(0.0),
        Err(e) => return Err(e),
    };
    let (l4, s4) = match ln_gamma_signed(c - b) {
        Ok(v) => v,
        Err(Error::Pole(_)) => return Ok(0.0),
        Err(e) => return Err(e),
    };
    Ok(s1 * s2 * s3 * s4 * (l1 + l2 - l3 - l4).exp())
}

/// ₂F₁(a, b; c | 1): direct sum when the series terminates, Gauss formula
/// when c-a-b > 0.1, error otherwise.
pub fn hyp2f1_unit(a: f64, b: f64, c: f64) -> Result<SeriesEval> {
    if nonpositive_index(a).is_some() || nonpositive_index(b).is_some() {
        return hyp_pfq(&HypParams::new(vec![a, b], vec![c], 1.0));
    }
    if c - a - b > 0.1 {
        let value = hyp2f1_unit_gauss(a, b, c)?;
        return Ok(SeriesEval { value, terms_used: 1, est_abs_error: value.abs() * 1e-14 });
    }
    Err(Error::Divergence(format!(
        "2F1({a},{b};{c}|1) neither terminates nor has c-a-b > 0.1"
    )))
}
