//! Coefficient vectors of the coherent-state families.
//!
//! All Bessel-based coefficients are evaluated from the scaled series
//! S(ν, r) = Σ (-r²)^m / (m! (ν+1)_m), so J_ν(2r)/r^ν = S/Γ(ν+1) and the
//! r -> 0 limits need no special casing. Magnitudes are assembled in log
//! space, which keeps κ in the thousands finite.

use crate::error::{Error, Result};
use crate::fockspace::{two_kappa, FockVector, C64};
use crate::specfun::{
    bessel_k_half, gamma_ln, hyp_pfq, j_scaled_series, ln_binomial, ln_factorial, ln_pochhammer,
    HypParams,
};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Largest |α| accepted for the SG and MSG families.
pub const R_MAX: f64 = 12.0;

/// Tail mass above which a truncated state is rejected.
pub const TAIL_LIMIT: f64 = 1e-12;

const DIM_TAIL: f64 = 1e-14;
const DIM_CAP: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Sg,
    Msg,
    Sgi,
    Sgii,
    Su11,
    Su2,
    Gs,
}

impl Family {
    pub const ALL: [Family; 7] =
        [Family::Sg, Family::Msg, Family::Sgi, Family::Sgii, Family::Su11, Family::Su2, Family::Gs];

    pub fn name(self) -> &'static str {
        match self {
            Family::Sg => "sg",
            Family::Msg => "msg",
            Family::Sgi => "sgi",
            Family::Sgii => "sgii",
            Family::Su11 => "su11",
            Family::Su2 => "su2",
            Family::Gs => "gs",
        }
    }

    /// Whether the family carries a κ parameter.
    pub fn uses_kappa(self) -> bool {
        matches!(self, Family::Sgi | Family::Sgii | Family::Su11 | Family::Su2)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Family(format!("unknown family '{s}'")))
    }
}

/// Coherence parameter in polar form, φ reduced to (-π, π].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coherence {
    r: f64,
    phi: f64,
}

impl Coherence {
    pub fn polar(r: f64, phi: f64) -> Result<Self> {
        if !(r >= 0.0) || !r.is_finite() || !phi.is_finite() {
            return Err(Error::Domain(format!("invalid coherence parameter ({r}, {phi})")));
        }
        let mut p = phi % (2.0 * PI);
        if p <= -PI {
            p += 2.0 * PI;
        } else if p > PI {
            p -= 2.0 * PI;
        }
        Ok(Coherence { r, phi: p })
    }

    pub fn real(x: f64) -> Result<Self> {
        if x < 0.0 {
            Self::polar(-x, PI)
        } else {
            Self::polar(x, 0.0)
        }
    }

    pub fn from_complex(z: C64) -> Result<Self> {
        Self::polar(z.norm(), if z.norm() == 0.0 { 0.0 } else { z.arg() })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn to_complex(&self) -> C64 {
        C64::from_polar(self.r, self.phi)
    }

    fn phase(&self, n: usize) -> C64 {
        C64::from_polar(1.0, n as f64 * self.phi)
    }
}

/// Closed-form normalization with an optional brute-force oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormEval {
    pub closed_form: f64,
    pub oracle: Option<f64>,
    pub rel_gap: Option<f64>,
}

impl NormEval {
    fn new(closed_form: f64, oracle: Option<f64>) -> Result<Self> {
        if !(closed_form > 0.0) || !closed_form.is_finite() {
            return Err(Error::Accuracy(format!("normalization {closed_form} not positive")));
        }
        let rel_gap = oracle.map(|o| (closed_form - o).abs() / closed_form);
        Ok(NormEval { closed_form, oracle, rel_gap })
    }
}

/// Universal state descriptor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateFamily {
    pub family: Family,
    pub coherence: Coherence,
    pub kappa: f64,
    pub dim: usize,
}

impl StateFamily {
    /// Descriptor with the truncation chosen by [`suggest_dim`].
    pub fn new(family: Family, coherence: Coherence, kappa: f64) -> Result<Self> {
        let dim = suggest_dim(family, coherence.r, kappa)?;
        let s = StateFamily { family, coherence, kappa, dim };
        s.validate()?;
        Ok(s)
    }

    pub fn with_dim(mut self, dim: usize) -> Result<Self> {
        self.dim = dim;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.kappa;
        let r = self.coherence.r;
        match self.family {
            Family::Sg | Family::Msg => {
                if r > R_MAX {
                    return Err(Error::Domain(format!("|α| = {r} exceeds {R_MAX}")));
                }
            }
            Family::Sgi => {
                if !(k > 0.5) || !k.is_finite() {
                    return Err(Error::Domain(format!("SGI needs κ > 1/2, got {k}")));
                }
            }
            Family::Sgii => {
                let l = sgii_order(k)?;
                if self.dim != 2 * l + 2 {
                    return Err(Error::Size(format!("SGII dimension must be 2κ+1 = {}", 2 * l + 2)));
                }
            }
            Family::Su11 => {
                if !(k >= 1.0) || !k.is_finite() {
                    return Err(Error::Domain(format!("SU(1,1) needs κ >= 1, got {k}")));
                }
                if r >= 1.0 {
                    return Err(Error::Domain(format!("SU(1,1) needs |τ| < 1, got {r}")));
                }
            }
            Family::Su2 => {
                let tk = two_kappa(k)?;
                if self.dim != tk + 1 {
                    return Err(Error::Size(format!("SU(2) dimension must be 2κ+1 = {}", tk + 1)));
                }
            }
            Family::Gs => {}
        }
        if self.dim == 0 {
            return Err(Error::Size("dimension must be >= 1".into()));
        }
        Ok(())
    }

    pub fn build(&self) -> Result<FockVector> {
        self.validate()?;
        let a = self.coherence;
        match self.family {
            Family::Sg => sg_coeffs(a, self.dim),
            Family::Msg => msg_coeffs(a, self.dim),
            Family::Sgi => sgi_coeffs(a, self.kappa, self.dim),
            Family::Sgii => sgii_coeffs(a, sgii_order(self.kappa)?),
            Family::Su11 => su11_coeffs(a, self.kappa, self.dim),
            Family::Su2 => su2_coeffs(a, self.kappa),
            Family::Gs => gs_coeffs(a, self.dim),
        }
    }
}

/// L for κ = L + 1/2; rejects integer κ.
pub fn sgii_order(kappa: f64) -> Result<usize> {
    let tk = two_kappa(kappa)?;
    if tk % 2 == 0 {
        return Err(Error::Domain(format!(
            "SGII is implemented for half-integer κ only, got {kappa}"
        )));
    }
    Ok((tk - 1) / 2)
}

fn assemble(alpha: Coherence, amps: &[f64]) -> Result<FockVector> {
    let coeffs: Vec<C64> = amps.iter().enumerate().map(|(n, &c)| alpha.phase(n) * c).collect();
    let v = FockVector::new(coeffs)?;
    let tail = 1.0 - v.norm_sqr();
    if tail > TAIL_LIMIT {
        return Err(Error::Truncation { tail });
    }
    if tail < -1e-10 {
        return Err(Error::Accuracy(format!("norm exceeds one by {:.2e}", -tail)));
    }
    Ok(v)
}

fn check_r(r: f64) -> Result<()> {
    if r > R_MAX {
        Err(Error::Domain(format!("|α| = {r} exceeds {R_MAX}")))
    } else {
        Ok(())
    }
}

/// Susskind-Glogower states α^n (n+1) J_{n+1}(2r) / r^{n+1}.
pub fn sg_coeffs(alpha: Coherence, dim: usize) -> Result<FockVector> {
    check_r(alpha.r)?;
    let r = alpha.r;
    // r^n / n!
    let mut p = 1.0;
    let mut amps = Vec::with_capacity(dim);
    for n in 0..dim {
        if n > 0 {
            p *= r / n as f64;
        }
        let (s, _, _) = j_scaled_series(n as f64 + 1.0, r)?;
        amps.push(p * s);
    }
    assemble(alpha, &amps)
}

/// 𝒩(r) = ₁F₂(1/2; 2, 2 | -4r²) with oracle r^{-2} Σ n J_n(2r)².
pub fn msg_norm(r: f64) -> Result<NormEval> {
    check_r(r)?;
    let closed = hyp_pfq(&HypParams::new(vec![0.5], vec![2.0, 2.0], -4.0 * r * r))?.value;
    // n J_n(2r)² / r² = n r^{2n-2} S_n² / n!²
    let mut sum = 0.0;
    let mut p = 1.0; // r^{n-1}/n!
    for n in 1..DIM_CAP {
        if n > 1 {
            p *= r / n as f64;
        }
        let (s, _, _) = j_scaled_series(n as f64, r)?;
        let t = n as f64 * (p * s).powi(2);
        sum += t;
        if t < 1e-18 * sum && n as f64 > 2.0 * r + 5.0 {
            break;
        }
    }
    NormEval::new(closed, Some(sum))
}

/// Modified SG states α^n √((n+1)/𝒩) J_{n+1}(2r)/r^{n+1}.
pub fn msg_coeffs(alpha: Coherence, dim: usize) -> Result<FockVector> {
    check_r(alpha.r)?;
    let r = alpha.r;
    let norm = hyp_pfq(&HypParams::new(vec![0.5], vec![2.0, 2.0], -4.0 * r * r))?.value;
    if !(norm > 0.0) {
        return Err(Error::Accuracy("MSG normalization not positive".into()));
    }
    let mut p = 1.0; // r^n/(n+1)!
    let mut amps = Vec::with_capacity(dim);
    for n in 0..dim {
        if n > 0 {
            p *= r / (n + 1) as f64;
        }
        let (s, _, _) = j_scaled_series(n as f64 + 1.0, r)?;
        amps.push(((n + 1) as f64 / norm).sqrt() * p * s);
    }
    assemble(alpha, &amps)
}

fn check_sgi_kappa(kappa: f64) -> Result<()> {
    if !(kappa > 0.5) || !kappa.is_finite() {
        return Err(Error::Domain(format!("SGI needs κ > 1/2, got {kappa}")));
    }
    Ok(())
}

/// ₁F₂(1/2; κ+1, κ+1 | -4r²).
pub(crate) fn sgi_hyp(kappa: f64, r: f64) -> Result<f64> {
    let v = hyp_pfq(&HypParams::new(vec![0.5], vec![kappa + 1.0, kappa + 1.0], -4.0 * r * r))?.value;
    if !(v > 0.0) {
        return Err(Error::Accuracy(format!("1F2 normalization {v} not positive")));
    }
    Ok(v)
}

/// 𝒩_κ(r) = Γ(2κ)/Γ(κ+1)² ₁F₂(1/2; κ+1, κ+1 | -4r²), oracle
/// Σ_n (n+1)_{2κ-1} J_{n+κ}(2r)² / r^{2κ}.
pub fn sgi_norm(kappa: f64, r: f64) -> Result<NormEval> {
    check_sgi_kappa(kappa)?;
    if !(r >= 0.0) {
        return Err(Error::Domain(format!("r must be >= 0, got {r}")));
    }
    if r > R_MAX {
        return Err(Error::Accuracy(format!("r = {r} > {R_MAX}: series cancellation")));
    }
    let pre = gamma_ln(2.0 * kappa)? - 2.0 * gamma_ln(kappa + 1.0)?;
    let closed = pre.exp() * sgi_hyp(kappa, r)?;
    NormEval::new(closed, Some(sgi_norm_oracle(kappa, r)?))
}

fn sgi_norm_oracle(kappa: f64, r: f64) -> Result<f64> {
    let lr = r.ln();
    let mut sum = 0.0;
    for n in 0..DIM_CAP {
        let nf = n as f64;
        let (s, _, _) = j_scaled_series(nf + kappa, r)?;
        if s == 0.0 {
            continue;
        }
        let (lp, _) = ln_pochhammer(nf + 1.0, 2.0 * kappa - 1.0)?;
        let lpow = if n == 0 { 0.0 } else { 2.0 * nf * lr };
        let t = (lp + lpow - 2.0 * gamma_ln(nf + kappa + 1.0)? + 2.0 * s.abs().ln()).exp();
        sum += t;
        if (t < 1e-17 * sum && nf > 2.0 * r + 5.0) || (r == 0.0 && n == 0) {
            break;
        }
    }
    Ok(sum)
}

/// Real SGI amplitudes c_n(r) for n < count (phase e^{inφ} omitted).
pub fn sgi_amplitudes(kappa: f64, r: f64, count: usize) -> Result<Vec<f64>> {
    check_sgi_kappa(kappa)?;
    let lf = sgi_hyp(kappa, r)?.ln();
    let lg = gamma_ln(kappa + 1.0)?;
    let lr = r.ln();
    let mut out = Vec::with_capacity(count);
    for n in 0..count {
        let nf = n as f64;
        if r == 0.0 && n > 0 {
            out.push(0.0);
            continue;
        }
        let (s, _, _) = j_scaled_series(nf + kappa, r)?;
        if s == 0.0 {
            out.push(0.0);
            continue;
        }
        let (lp, _) = ln_pochhammer(2.0 * kappa, nf)?;
        let lpow = if n == 0 { 0.0 } else { nf * lr };
        let l = 0.5 * (lp - ln_factorial(n)) + lg - 0.5 * lf + lpow - gamma_ln(nf + kappa + 1.0)?
            + s.abs().ln();
        out.push(s.signum() * l.exp());
    }
    Ok(out)
}

/// SGI states, coefficients √((2κ)_n/n!) Γ(κ+1) ₁F₂^{-1/2} e^{inφ} J_{n+κ}(2r)/r^κ.
pub fn sgi_coeffs(alpha: Coherence, kappa: f64, dim: usize) -> Result<FockVector> {
    let amps = sgi_amplitudes(kappa, alpha.r, dim)?;
    assemble(alpha, &amps)
}

/// ln c^{(II)}_{n;L}(r) for n <= L; -inf when the coefficient vanishes.
fn sgii_ln_c(l: usize, n: usize, r: f64) -> Result<f64> {
    if r == 0.0 && n > 0 {
        return Ok(f64::NEG_INFINITY);
    }
    let m = l - n;
    // ₁F₁(-m; -2m | 4r), all terms positive
    let mut lt = 0.0f64;
    let mut terms = vec![0.0];
    for k in 0..m {
        if r == 0.0 {
            break;
        }
        lt += ((m - k) as f64).ln() - ((2 * m - k) as f64).ln() - ((k + 1) as f64).ln() + (4.0 * r).ln();
        terms.push(lt);
    }
    let mx = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lse = mx + terms.iter().map(|t| (t - mx).exp()).sum::<f64>().ln();
    let lpow = if n == 0 { 0.0 } else { n as f64 * r.ln() };
    Ok(0.5 * ln_binomial((2 * l + 1) as f64, n as f64)? + gamma_ln(m as f64 + 0.5)? + lpow + lse)
}

fn log_sum_exp(v: &[f64]) -> f64 {
    let mx = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    mx + v.iter().map(|t| (t - mx).exp()).sum::<f64>().ln()
}

/// Real folded SGII amplitudes on |0>..|2L+1>, phases omitted.
pub fn sgii_amplitudes(l: usize, r: f64) -> Result<Vec<f64>> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("invalid r = {r}")));
    }
    let lc: Vec<f64> = (0..=l).map(|n| sgii_ln_c(l, n, r)).collect::<Result<_>>()?;
    let ln_norm = 2f64.ln() + log_sum_exp(&lc.iter().map(|x| 2.0 * x).collect::<Vec<_>>());
    let mut amps = vec![0.0; 2 * l + 2];
    for (n, &x) in lc.iter().enumerate() {
        let v = (x - 0.5 * ln_norm).exp();
        amps[n] = v;
        amps[2 * l + 1 - n] = v;
    }
    Ok(amps)
}

/// SGII states for κ = L + 1/2 in the folded form
/// 𝔑^{-1/2} Σ_{n<=L} e^{inφ} c_n [ |n> + e^{i(2L-2n+1)φ} |2L+1-n> ].
pub fn sgii_coeffs(z: Coherence, l: usize) -> Result<FockVector> {
    let amps = sgii_amplitudes(l, z.r)?;
    assemble(z, &amps)
}

/// 𝔑_L(r) = 2 Σ c_n², oracle from the unfolded K-Bessel sum
/// 4 e^{4r} Σ_n C(2κ,n) K_{n-κ}(2r)² r^{2κ}.
pub fn sgii_norm(l: usize, r: f64) -> Result<NormEval> {
    let lc: Vec<f64> = (0..=l).map(|n| sgii_ln_c(l, n, r)).collect::<Result<_>>()?;
    let closed = 2.0 * lc.iter().map(|x| (2.0 * x).exp()).sum::<f64>();
    if !closed.is_finite() {
        return Err(Error::Accuracy(format!("𝔑_{l}({r}) overflows")));
    }
    let oracle = if r > 0.0 {
        let kappa = l as f64 + 0.5;
        let mut s = 0.0;
        for n in 0..=2 * l + 1 {
            let ord = if n <= l { l - n } else { n - l - 1 };
            let k = bessel_k_half(ord, 2.0 * r)?;
            s += (ln_binomial(2.0 * kappa, n as f64)?.exp()) * k * k;
        }
        Some(4.0 * (4.0 * r + 2.0 * kappa * r.ln()).exp() * s)
    } else {
        None
    };
    NormEval::new(closed, oracle)
}

/// SGII states evaluated directly from the unfolded K-Bessel definition
/// z^n √(C(2κ,n)/𝔑) K_{n-κ}(2r)/r^{n-κ}, n = 0..2κ. Needs r > 0.
pub fn sgii_unfolded(z: Coherence, l: usize) -> Result<FockVector> {
    let r = z.r;
    if !(r > 0.0) {
        return Err(Error::Domain("unfolded SGII form needs r > 0".into()));
    }
    let kappa = l as f64 + 0.5;
    let mut amps = Vec::with_capacity(2 * l + 2);
    for n in 0..=2 * l + 1 {
        let ord = if n <= l { l - n } else { n - l - 1 };
        let k = bessel_k_half(ord, 2.0 * r)?;
        amps.push(ln_binomial(2.0 * kappa, n as f64)?.exp().sqrt() * k * r.powf(kappa));
    }
    let norm: f64 = amps.iter().map(|a| a * a).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    assemble(z, &amps)
}

fn check_tau(tau: Coherence, kappa: f64) -> Result<()> {
    if tau.r >= 1.0 {
        return Err(Error::Domain(format!("|τ| must be < 1, got {}", tau.r)));
    }
    if !(kappa >= 1.0) {
        return Err(Error::Domain(format!("SU(1,1) states need κ >= 1, got {kappa}")));
    }
    Ok(())
}

/// Perelomov SU(1,1) states (1-|τ|²)^κ τ^n √((2κ)_n/n!).
pub fn su11_coeffs(tau: Coherence, kappa: f64, dim: usize) -> Result<FockVector> {
    check_tau(tau, kappa)?;
    let r = tau.r;
    let mut c = (1.0 - r * r).powf(kappa);
    let mut amps = Vec::with_capacity(dim);
    for n in 0..dim {
        if n > 0 {
            c *= r * ((2.0 * kappa + n as f64 - 1.0) / n as f64).sqrt();
        }
        amps.push(c);
    }
    assemble(tau, &amps)
}

/// <τ₂|τ₁> = (1-|τ₁|²)^κ (1-|τ₂|²)^κ / (1 - τ₁ τ̄₂)^{2κ}.
pub fn su11_overlap(tau1: C64, tau2: C64, kappa: f64) -> Result<C64> {
    check_tau(Coherence::from_complex(tau1)?, kappa)?;
    check_tau(Coherence::from_complex(tau2)?, kappa)?;
    let num = ((1.0 - tau1.norm_sqr()) * (1.0 - tau2.norm_sqr())).powf(kappa);
    let w = C64::new(1.0, 0.0) - tau1 * tau2.conj();
    Ok(num / (w.ln() * (2.0 * kappa)).exp())
}

/// Spin coherent states √C(2κ,n) ξ^n / (1+|ξ|²)^κ on dimension 2κ+1.
pub fn su2_coeffs(xi: Coherence, kappa: f64) -> Result<FockVector> {
    let tk = two_kappa(kappa)?;
    let r = xi.r;
    let mut amps = Vec::with_capacity(tk + 1);
    let base = -kappa * (r * r).ln_1p();
    for n in 0..=tk {
        let lpow = if n == 0 { 0.0 } else { n as f64 * r.ln() };
        let v = if r == 0.0 && n > 0 {
            0.0
        } else {
            (0.5 * ln_binomial(tk as f64, n as f64)? + lpow + base).exp()
        };
        amps.push(v);
    }
    assemble(xi, &amps)
}

/// Glauber-Sudarshan states e^{-|α|²/2} α^n / √n!.
pub fn gs_coeffs(alpha: Coherence, dim: usize) -> Result<FockVector> {
    let r = alpha.r;
    let mut c = (-0.5 * r * r).exp();
    let mut amps = Vec::with_capacity(dim);
    for n in 0..dim {
        if n > 0 {
            c *= r / (n as f64).sqrt();
        }
        amps.push(c);
    }
    assemble(alpha, &amps)
}

/// Smallest truncation D whose neglected tail is certified below 1e-14,
/// from envelopes that decay with a monotonically decreasing ratio:
/// |J_ν(x)| <= (x/2)^ν/Γ(ν+1) for the Bessel families, Poisson for GS,
/// the negative-binomial weights for SU(1,1).
pub fn suggest_dim(family: Family, r: f64, kappa: f64) -> Result<usize> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("invalid r = {r}")));
    }
    let envelope: Box<dyn Fn(usize) -> f64> = match family {
        Family::Sgii => return Ok(2 * sgii_order(kappa)? + 2),
        Family::Su2 => return Ok(two_kappa(kappa)? + 1),
        Family::Sg | Family::Msg | Family::Sgi => {
            let k = if family == Family::Sgi { kappa } else { 1.0 };
            check_sgi_kappa(k)?;
            let lnorm = if family == Family::Sg {
                0.0
            } else {
                (gamma_ln(k + 1.0)? * 2.0) - sgi_hyp(k, r)?.ln()
            };
            // SG: |c_n|² <= r^{2n}/n!², one extra factor (n+1) over the MSG form
            let sg = family == Family::Sg;
            let lr = r.ln();
            Box::new(move |n| {
                let nf = n as f64;
                let lp = ln_pochhammer(2.0 * k, nf).map(|x| x.0).unwrap_or(0.0);
                let lpow = if n == 0 { 0.0 } else { 2.0 * nf * lr };
                let extra = if sg { (nf + 1.0).ln() } else { 0.0 };
                lp - ln_factorial(n) + lnorm + lpow - 2.0 * gamma_ln(nf + k + 1.0).unwrap_or(0.0) + extra
            })
        }
        Family::Gs => {
            let lr = r.ln();
            Box::new(move |n| {
                let lpow = if n == 0 { 0.0 } else { 2.0 * n as f64 * lr };
                -r * r + lpow - ln_factorial(n)
            })
        }
        Family::Su11 => {
            check_tau(Coherence::polar(r, 0.0)?, kappa)?;
            let lr = r.ln();
            Box::new(move |n| {
                let nf = n as f64;
                let lp = ln_pochhammer(2.0 * kappa, nf).map(|x| x.0).unwrap_or(0.0);
                let lpow = if n == 0 { 0.0 } else { 2.0 * nf * lr };
                2.0 * kappa * (-r * r).ln_1p() + lpow + lp - ln_factorial(n)
            })
        }
    };
    if r == 0.0 {
        return Ok(2);
    }
    let mut prev = envelope(0);
    for n in 1..DIM_CAP {
        let cur = envelope(n);
        let q = (cur - prev).exp();
        if q < 0.95 {
            let tail = cur.exp() / (1.0 - q);
            if tail < DIM_TAIL {
                return Ok((n + 1).max(2));
            }
        }
        prev = cur;
    }
    Err(Error::Size(format!("no truncation below {DIM_CAP} for {family} at r = {r}")))
}
