use super::dd::Dd;
use super::gamma::{gamma_ln, ln_factorial};
use super::{hyp_pfq, HypParams, SeriesEval, MAX_TERMS, TERM_EPS};
use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Largest argument accepted by [`bessel_j`].
pub const Z_MAX: f64 = 24.0;

// Internal callers (quadrature between the small-x and asymptotic pieces)
// go up to this argument, where the double-double series is still exact
// to about 1e-15 absolute.
const Z_EXT: f64 = 42.0;

/// S(ν, h) = Σ_m (-h²)^m / (m! (ν+1)_m), so that J_ν(2h) = h^ν S / Γ(ν+1).
/// Returns (S, terms, estimated absolute error of S).
pub(crate) fn j_scaled_series(nu: f64, h: f64) -> Result<(f64, usize, f64)> {
    if h == 0.0 {
        return Ok((1.0, 1, 0.0));
    }
    let q = Dd::prod(h, h);
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut max_term = 1.0f64;
    let mut quiet = 0;
    let mut m = 0usize;
    loop {
        if m >= MAX_TERMS {
            return Err(Error::Accuracy(format!(
                "Bessel series J_{nu}({}) not converged after {MAX_TERMS} terms",
                2.0 * h
            )));
        }
        let den = Dd::new((m + 1) as f64) * Dd::sum(nu, (m + 1) as f64);
        term = -(term * q) / den;
        sum = sum + term;
        m += 1;
        let t = term.hi.abs();
        max_term = max_term.max(t);
        if t <= TERM_EPS * sum.hi.abs() || t < 1e-300 {
            quiet += 1;
            if quiet == 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    let s = sum.to_f64();
    let err = s.abs() * 1.2e-16 + max_term * (m as f64) * 4e-32;
    Ok((s, m + 1, err))
}

/// (ln prefactor, relative error of prefactor) for (z/2)^ν / Γ(ν+1).
fn j_prefactor(nu: f64, h: f64) -> Result<(f64, f64)> {
    let n = nu as usize;
    if nu == n as f64 && n <= 30 {
        let mut p = 1.0;
        for k in 1..=n {
            p *= h / k as f64;
        }
        return Ok((p.ln(), (n as f64 + 1.0) * 1.2e-16));
    }
    let l = nu * h.ln() - gamma_ln(nu + 1.0)?;
    let rel = (nu * h.ln().abs() + gamma_ln(nu + 1.0)?.abs() + 1.0) * 2.3e-16;
    Ok((l, rel))
}

fn j_eval(nu: f64, z: f64, z_max: f64) -> Result<SeriesEval> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(Error::Domain(format!("Bessel order must be >= 0, got {nu}")));
    }
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("Bessel argument must be >= 0, got {z}")));
    }
    if z > z_max {
        return Err(Error::Accuracy(format!(
            "Bessel argument {z} exceeds Z_MAX = {z_max}"
        )));
    }
    if z == 0.0 {
        let value = if nu == 0.0 { 1.0 } else { 0.0 };
        return Ok(SeriesEval { value, terms_used: 1, est_abs_error: 0.0 });
    }
    let h = 0.5 * z;
    let (s, terms, s_err) = j_scaled_series(nu, h)?;
    let (lp, rel) = j_prefactor(nu, h)?;
    let pref = lp.exp();
    let value = pref * s;
    let est = pref * s_err + value.abs() * rel;
    if !value.is_finite() {
        return Err(Error::Accuracy(format!("J_{nu}({z}) not finite")));
    }
    if est > 1e-12f64.max(1e-12 * value.abs()) {
        return Err(Error::Accuracy(format!(
            "J_{nu}({z}) error estimate {est:.2e} exceeds tolerance"
        )));
    }
    Ok(SeriesEval { value, terms_used: terms, est_abs_error: est })
}

/// Bessel function of the first kind J_ν(z) for ν >= 0, 0 <= z <= Z_MAX,
/// by its power series summed in double-double arithmetic.
pub fn bessel_j(nu: f64, z: f64) -> Result<SeriesEval> {
    j_eval(nu, z, Z_MAX)
}

pub(crate) fn bessel_j_extended(nu: f64, z: f64) -> Result<SeriesEval> {
    j_eval(nu, z, Z_EXT)
}

/// K_{L+1/2}(z) for z > 0 through the terminating ₁F₁(-L; -2L | 2z).
pub fn bessel_k_half(l: usize, z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("K_(L+1/2) requires z > 0, got {z}")));
    }
    let lf = l as f64;
    let f = hyp_pfq(&HypParams::new(vec![-lf], vec![-2.0 * lf], 2.0 * z))?;
    let ln = -z - 0.5 * (2.0 * z).ln() + gamma_ln(lf + 0.5)? - lf * (0.5 * z).ln() + f.value.ln();
    Ok(ln.exp())
}

/// x^{L+1/2} e^x K_{L+1/2}(x) as the finite polynomial
/// √(π/2) Σ_k (L+k)!/(k!(L-k)!) 2^{-k} x^{L-k}. Finite at x = 0.
pub fn k_half_scaled(l: usize, x: f64) -> f64 {
    let mut c = 1.0;
    let mut sum = 0.0;
    // Horner in x over descending powers x^L ... x^0
    let mut coeffs = Vec::with_capacity(l + 1);
    for k in 0..=l {
        coeffs.push(c);
        c *= ((l + k + 1) as f64) * ((l - k) as f64) / (2.0 * (k + 1) as f64);
    }
    for k in 0..=l {
        sum = sum * x + coeffs[k];
    }
    (0.5 * PI).sqrt() * sum
}

/// ln of the x -> 0 limit of x^{L+1/2} K_{L+1/2}(x), i.e. ln(Γ(L+1/2) 2^{L-1/2}).
#[allow(dead_code)]
pub(crate) fn ln_k_half_origin(l: usize) -> f64 {
    ln_factorial(2 * l) - ln_factorial(l) - l as f64 * 2f64.ln() + 0.5 * (0.5 * PI).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    // J_1(2), 60-digit series sum
    const J1_2: f64 = 0.576_724_807_756_873_4;

    #[test]
    fn j_trivial() {
        assert_eq!(bessel_j(0.0, 0.0).unwrap().value, 1.0);
        assert_eq!(bessel_j(2.5, 0.0).unwrap().value, 0.0);
        let v = bessel_j(1.0, 2.0).unwrap();
        assert!((v.value - J1_2).abs() < 1e-15);
        assert!(v.terms_used >= 1);
    }

    #[test]
    fn j_rejects_large_argument() {
        assert!(matches!(bessel_j(0.0, 30.0), Err(Error::Accuracy(_))));
        assert!(bessel_j_extended(0.0, 30.0).is_ok());
        assert!(bessel_j(-1.0, 1.0).is_err());
    }

    #[test]
    fn k_half_forms() {
        let k0 = bessel_k_half(0, 1.0).unwrap();
        assert!((k0 - (PI / 2.0).sqrt() * (-1.0f64).exp()).abs() < 1e-15);
        for &z in &[0.3, 1.0, 4.0, 11.0] {
            let k1 = bessel_k_half(1, z).unwrap();
            let closed = (PI / (2.0 * z)).sqrt() * (-z).exp() * (1.0 + 1.0 / z);
            assert!(((k1 - closed) / closed).abs() < 1e-14);
            for l in 0..8 {
                let a = bessel_k_half(l, z).unwrap();
                let b = k_half_scaled(l, z) * (-z).exp() / z.powf(l as f64 + 0.5);
                assert!(((a - b) / b).abs() < 1e-13, "L={l} z={z}");
            }
        }
        assert!(bessel_k_half(2, 0.0).is_err());
        assert!((k_half_scaled(3, 0.0).ln() - ln_k_half_origin(3)).abs() < 1e-14);
    }
}
