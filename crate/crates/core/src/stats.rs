//! Photon statistics, quadrature variances and the r ↦ n̄ reparametrization.

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::fockspace::{FockVector, C64};
use crate::specfun::{gamma_ln, hyp_pfq, HypParams};
use crate::states::{sgi_hyp, sgii_order, Family, StateFamily, R_MAX};

/// Moments of one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatsRecord {
    pub r: f64,
    pub n_bar: f64,
    pub n2: f64,
    pub mandel_q: f64,
    pub var_x: f64,
    pub var_p: f64,
    pub uncertainty_product: f64,
}

const NORM_TOL: f64 = 1e-10;

/// Moments of a normalized state; `r` is left at 0.
///
/// The quadrature moments use the ladder sums
/// ⟨x²⟩ = Re⟨a²⟩ + n̄ + 1/2 and ⟨p²⟩ = -Re⟨a²⟩ + n̄ + 1/2,
/// which equal the expectations of x and p built two levels above the
/// support of the state.
pub fn stats_of(state: &FockVector) -> Result<StatsRecord> {
    let norm = state.norm_sqr();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::Unnormalized(norm));
    }
    let c = state.coeffs();
    let mut n_bar = 0.0;
    let mut n2 = 0.0;
    let mut a1 = C64::new(0.0, 0.0);
    let mut a2 = C64::new(0.0, 0.0);
    for (n, z) in c.iter().enumerate() {
        let nf = n as f64;
        let p = z.norm_sqr();
        n_bar += nf * p;
        n2 += nf * nf * p;
        if let Some(w) = c.get(n + 1) {
            a1 += z.conj() * w * (nf + 1.0).sqrt();
        }
        if let Some(w) = c.get(n + 2) {
            a2 += z.conj() * w * ((nf + 1.0) * (nf + 2.0)).sqrt();
        }
    }
    let x1 = std::f64::consts::SQRT_2 * a1.re;
    let p1 = std::f64::consts::SQRT_2 * a1.im;
    let var_x = a2.re + n_bar + 0.5 - x1 * x1;
    let var_p = -a2.re + n_bar + 0.5 - p1 * p1;
    // Q is set to 0 for the vacuum, where the ratio is undefined
    let mandel_q = if n_bar > 0.0 { (n2 - n_bar * n_bar) / n_bar - 1.0 } else { 0.0 };
    let rec = StatsRecord {
        r: 0.0,
        n_bar,
        n2,
        mandel_q,
        var_x,
        var_p,
        uncertainty_product: (var_x.max(0.0) * var_p.max(0.0)).sqrt(),
    };
    if [n_bar, n2, mandel_q, var_x, var_p].iter().any(|v| !v.is_finite()) {
        return Err(Error::Accuracy("non-finite moment".into()));
    }
    Ok(rec)
}

/// Builds the state and records its moments with r = |α|.
pub fn family_stats(state: &StateFamily) -> Result<StatsRecord> {
    let v = state.build()?;
    let mut rec = stats_of(&v)?;
    rec.r = state.coherence.r();
    Ok(rec)
}

/// Closed SGI moments: n̄ in the ₂F₃ and the reduced 𝒩_κ form, and ⟨n²⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SgiMoments {
    pub n_bar: f64,
    pub n_bar_reduced: f64,
    pub n2: f64,
}

fn check_sgi(kappa: f64, r: f64) -> Result<()> {
    if !(kappa > 0.5) || !kappa.is_finite() {
        return Err(Error::Domain(format!("SGI needs κ > 1/2, got {kappa}")));
    }
    if !(r >= 0.0) || r > R_MAX {
        return Err(Error::Domain(format!("r must lie in [0, {R_MAX}], got {r}")));
    }
    Ok(())
}

/// 𝒩_κ(r) = Γ(2κ)/Γ(κ+1)² ₁F₂(1/2; κ+1, κ+1 | -4r²).
fn sgi_norm_value(kappa: f64, r: f64) -> Result<f64> {
    Ok((gamma_ln(2.0 * kappa)? - 2.0 * gamma_ln(kappa + 1.0)?).exp() * sgi_hyp(kappa, r)?)
}

/// Reduced form n̄ = Γ(2κ+1)/(2Γ(κ+1)² 𝒩_κ(r)) - κ.
pub fn sgi_nbar_reduced(kappa: f64, r: f64) -> Result<f64> {
    check_sgi(kappa, r)?;
    let c = (gamma_ln(2.0 * kappa + 1.0)? - 2f64.ln() - 2.0 * gamma_ln(kappa + 1.0)?).exp();
    Ok(c / sgi_norm_value(kappa, r)? - kappa)
}

pub fn sgi_moments_closed(kappa: f64, r: f64) -> Result<SgiMoments> {
    check_sgi(kappa, r)?;
    let reduced = sgi_nbar_reduced(kappa, r)?;
    if r == 0.0 {
        return Ok(SgiMoments { n_bar: 0.0, n_bar_reduced: reduced, n2: 0.0 });
    }
    let norm = sgi_norm_value(kappa, r)?;
    let z = -4.0 * r * r;
    let f1 = hyp_pfq(&HypParams::new(vec![1.5, 1.0], vec![kappa + 2.0, kappa + 2.0, 2.0], z))?.value;
    let c1 = (gamma_ln(2.0 * kappa + 1.0)? - 2.0 * gamma_ln(kappa + 2.0)?).exp();
    let n_bar = c1 * r * r * f1 / norm;
    let f2 = hyp_pfq(&HypParams::new(vec![1.5, 2.0], vec![kappa + 3.0, kappa + 3.0, 3.0], z))?.value;
    let c2 = (gamma_ln(2.0 * kappa + 2.0)? - 2.0 * gamma_ln(kappa + 3.0)?).exp();
    let n2 = n_bar + c2 * r.powi(4) * f2 / norm;
    if (n_bar - reduced).abs() > 1e-9 * n_bar.max(1.0) {
        return Err(Error::Accuracy(format!(
            "the two closed forms of n̄ differ: {n_bar} vs {reduced} (κ={kappa}, r={r})"
        )));
    }
    Ok(SgiMoments { n_bar, n_bar_reduced: reduced, n2 })
}

/// Large-r limit of SGII statistics: (κ, κ(κ+1/2), -1/2).
pub fn sgii_asymptotic_stats(kappa: f64) -> Result<(f64, f64, f64)> {
    sgii_order(kappa)?;
    Ok((kappa, kappa * (kappa + 0.5), -0.5))
}

/// n̄ as a function of r for the families where it is monotone.
pub fn nbar_of_r(family: Family, kappa: f64, r: f64) -> Result<f64> {
    match family {
        Family::Gs => Ok(r * r),
        Family::Su11 => {
            if !(kappa >= 1.0) || !(0.0..1.0).contains(&r) {
                return Err(Error::Domain(format!("SU(1,1) needs κ >= 1 and |τ| < 1 (κ={kappa}, r={r})")));
            }
            Ok(2.0 * kappa * r * r / (1.0 - r * r))
        }
        Family::Sgi => sgi_nbar_reduced(kappa, r),
        Family::Msg => sgi_nbar_reduced(1.0, r),
        f => Err(Error::Family(format!("n̄(r) inversion is not available for {f}"))),
    }
}

const INV_TOL: f64 = 1e-12;

/// r with n̄(r) = target, by bracket doubling from r = 1 and bisection.
pub fn invert_nbar(family: Family, kappa: f64, target: f64) -> Result<f64> {
    if !(target >= 0.0) || !target.is_finite() {
        return Err(Error::Domain(format!("target n̄ must be >= 0, got {target}")));
    }
    let f = |r: f64| nbar_of_r(family, kappa, r).map(|v| v - target);
    if target == 0.0 {
        f(0.0)?;
        return Ok(0.0);
    }
    let mut lo = 0.0;
    let mut hi;
    if family == Family::Su11 {
        // bracket inside the unit disk: r = 1 - 2^{-k}
        hi = 0.5;
        let mut k = 1;
        while f(hi)? < 0.0 {
            lo = hi;
            k += 1;
            if k > 50 {
                return Err(Error::Bracket(format!("no SU(1,1) bracket for n̄ = {target}")));
            }
            hi = 1.0 - 0.5f64.powi(k);
        }
    } else {
        hi = 1.0;
        let cap = if family == Family::Gs { 1e150 } else { R_MAX };
        while f(hi)? < 0.0 {
            lo = hi;
            if hi >= cap {
                return Err(Error::Bracket(format!("n̄ = {target} is out of reach for r <= {cap}")));
            }
            hi = (2.0 * hi).min(cap);
        }
    }
    while hi - lo > INV_TOL * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if f(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// P_n = |c_n|² for the given state.
pub fn probability_density(state: &StateFamily, n: usize) -> Result<f64> {
    let v = state.build()?;
    Ok(v.coeffs().get(n).map(|c| c.norm_sqr()).unwrap_or(0.0))
}

/// P_n at the r solving n̄(r) = n_bar.
pub fn probability_at_nbar(family: Family, kappa: f64, n_bar: f64, n: usize) -> Result<f64> {
    let r = invert_nbar(family, kappa, n_bar)?;
    let c = crate::states::Coherence::real(r)?;
    probability_density(&StateFamily::new(family, c, kappa)?, n)
}

/// Statistics over a grid of |α| values, in grid order.
pub fn sweep(family: Family, kappa: f64, rs: &[f64], exec: Exec) -> Result<Vec<StatsRecord>> {
    let out = exec::map(exec, rs, |&r| {
        let c = crate::states::Coherence::real(r)?;
        family_stats(&StateFamily::new(family, c, kappa)?)
    });
    exec::collect_results(out)
}

/// Statistics over a grid of target n̄ values; the `r` column holds the
/// inverted parameter.
pub fn sweep_by_nbar(family: Family, kappa: f64, nbars: &[f64], exec: Exec) -> Result<Vec<StatsRecord>> {
    let out = exec::map(exec, nbars, |&t| {
        let r = invert_nbar(family, kappa, t)?;
        let c = crate::states::Coherence::real(r)?;
        family_stats(&StateFamily::new(family, c, kappa)?)
    });
    exec::collect_results(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockspace::{build_quadratures, expectation};
    use crate::states::Coherence;

    #[test]
    fn ladder_sums_match_padded_quadratures() {
        let s = StateFamily::new(Family::Sgi, Coherence::polar(1.3, 0.4).unwrap(), 2.0).unwrap();
        let v = s.build().unwrap();
        let rec = stats_of(&v).unwrap();
        let d = v.dim() + 2;
        let w = v.resized(d).unwrap();
        let (x, p) = build_quadratures(d).unwrap();
        let ex = expectation(&x, &w).unwrap().re;
        let ex2 = expectation(&x.mul(&x).unwrap(), &w).unwrap().re;
        let ep = expectation(&p, &w).unwrap().re;
        let ep2 = expectation(&p.mul(&p).unwrap(), &w).unwrap().re;
        assert!((rec.var_x - (ex2 - ex * ex)).abs() < 1e-12);
        assert!((rec.var_p - (ep2 - ep * ep)).abs() < 1e-12);
    }

    #[test]
    fn vacuum_and_fock() {
        let vac = FockVector::basis(5, 0).unwrap();
        let r = stats_of(&vac).unwrap();
        assert_eq!(r.n_bar, 0.0);
        assert!((r.uncertainty_product - 0.5).abs() < 1e-15);
        let f4 = FockVector::basis(8, 4).unwrap();
        assert!((stats_of(&f4).unwrap().mandel_q + 1.0).abs() < 1e-15);
    }

    #[test]
    fn unnormalized_rejected() {
        let v = FockVector::from_real(&[1.0, 1.0]).unwrap();
        assert!(matches!(stats_of(&v), Err(Error::Unnormalized(_))));
    }

    #[test]
    fn inversions() {
        assert!((invert_nbar(Family::Gs, 0.0, 4.0).unwrap() - 2.0).abs() < 1e-11);
        assert!((invert_nbar(Family::Su11, 1.0, 2.0).unwrap() - 0.5f64.sqrt()).abs() < 1e-11);
        assert!(matches!(invert_nbar(Family::Sgii, 1.5, 1.0), Err(Error::Family(_))));
    }

    #[test]
    fn sgii_limits() {
        assert_eq!(sgii_asymptotic_stats(2.5).unwrap(), (2.5, 7.5, -0.5));
        assert!(sgii_asymptotic_stats(2.0).is_err());
    }
}
