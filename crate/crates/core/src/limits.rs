//! Contraction limits: generalized states towards Glauber-Sudarshan states
//! and scaled ladder operators towards the boson annihilator.

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::fockspace::{build_boson, build_su11_ladder, two_kappa, FockOperator};
use crate::states::{gs_coeffs, sgi_amplitudes, sgii_amplitudes, Coherence, R_MAX};

/// Gap sequences along a κ grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractionReport {
    pub kappa_grid: Vec<f64>,
    pub sup_coeff_gap: Vec<f64>,
    pub op_gap: Vec<f64>,
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

impl ContractionReport {
    pub fn coeff_decreasing(&self) -> bool {
        strictly_decreasing(&self.sup_coeff_gap)
    }

    pub fn op_decreasing(&self) -> bool {
        strictly_decreasing(&self.op_gap)
    }
}

fn gs_amplitudes(z: Coherence, count: usize) -> Result<Vec<f64>> {
    let r = Coherence::real(z.r())?;
    let dim = count.max(2);
    // the GS vector rejects truncations with a visible tail, so pad generously
    let pad = dim.max((2.0 * r.r() * r.r() + 12.0 * r.r() + 40.0) as usize);
    let v = gs_coeffs(r, pad)?;
    Ok(v.coeffs()[..count].iter().map(|c| c.re).collect())
}

/// max_{n<=n_max} |c^{(I)}_{n;κ}(√(κ/2)|z|) - c^{GS}_n(z)|. Both families
/// carry the phase e^{inφ}, so only the moduli are compared.
pub fn sgi_contraction_gap(kappa: f64, z: Coherence, n_max: usize) -> Result<f64> {
    if !(kappa >= 2.0) || !kappa.is_finite() {
        return Err(Error::Domain(format!("contraction needs κ >= 2, got {kappa}")));
    }
    let r = (kappa / 2.0).sqrt() * z.r();
    if r > R_MAX {
        return Err(Error::Domain(format!(
            "reparametrized |α| = {r:.3} exceeds {R_MAX} (κ={kappa}, |z|={})",
            z.r()
        )));
    }
    let a = sgi_amplitudes(kappa, r, n_max + 1)?;
    let g = gs_amplitudes(z, n_max + 1)?;
    Ok(a.iter().zip(&g).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}

/// Reparametrization used for the SGII contraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SgiiScaling {
    /// r = √(L/2)|z|
    #[default]
    SqrtHalfL,
    /// r = (L/2)|z|
    HalfL,
}

/// SGII contraction gaps: (renormalized, raw).
///
/// The folded state spreads its weight evenly over |n⟩ and |2L+1-n⟩, so the
/// lower-half amplitudes are compared after multiplying by √2 (the first
/// value); the raw amplitudes are reported as the second value.
pub fn sgii_contraction_gap(l: usize, z: Coherence, n_max: usize, scaling: SgiiScaling) -> Result<(f64, f64)> {
    if l < 2 {
        return Err(Error::Domain(format!("contraction needs L >= 2, got {l}")));
    }
    if n_max > l {
        return Err(Error::Size(format!("n_max = {n_max} must not exceed L = {l}")));
    }
    let r = match scaling {
        SgiiScaling::SqrtHalfL => (l as f64 / 2.0).sqrt() * z.r(),
        SgiiScaling::HalfL => l as f64 / 2.0 * z.r(),
    };
    let a = sgii_amplitudes(l, r)?;
    let g = gs_amplitudes(z, n_max + 1)?;
    let mut renorm = 0.0f64;
    let mut raw = 0.0f64;
    for n in 0..=n_max {
        renorm = renorm.max((std::f64::consts::SQRT_2 * a[n] - g[n]).abs());
        raw = raw.max((a[n] - g[n]).abs());
    }
    Ok((renorm, raw))
}

/// Ladder algebra for the operator contraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algebra {
    Su11,
    Su2,
}

impl std::str::FromStr for Algebra {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "su11" => Ok(Algebra::Su11),
            "su2" => Ok(Algebra::Su2),
            _ => Err(Error::Domain(format!("unknown algebra '{s}' (expected su11 or su2)"))),
        }
    }
}

/// Max entry gap between the ladder lowering operator divided by √(2κ)
/// and the boson annihilator on the leading D×D block.
pub fn operator_contraction_gap(algebra: Algebra, kappa: f64, d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::Size(format!("block size must be >= 2, got {d}")));
    }
    let (a, _, _) = build_boson(d)?;
    let scale = 1.0 / (2.0 * kappa).sqrt();
    let block = match algebra {
        Algebra::Su11 => build_su11_ladder(kappa, d.max(3))?.0.block(d)?,
        Algebra::Su2 => {
            let tk = two_kappa(kappa)?;
            if d > tk {
                return Err(Error::Size(format!("su(2) block size must be <= 2κ = {tk}, got {d}")));
            }
            // leading block of the Holstein-Primakoff ladder, without the full 2κ+1 matrix
            let vals: Vec<f64> = (0..d - 1)
                .map(|n| ((n as f64 + 1.0) * (tk as f64 - n as f64)).sqrt())
                .collect();
            FockOperator::superdiagonal(&vals)
        }
    };
    block.scaled_re(scale).max_gap(&a)
}

/// Coefficient and su(1,1) operator gaps along a κ grid at fixed z.
pub fn sgi_report(grid: &[f64], z: Coherence, n_max: usize, d: usize, exec: Exec) -> Result<ContractionReport> {
    let rows = exec::collect_results(exec::map(exec, grid, |&k| {
        Ok::<_, Error>((sgi_contraction_gap(k, z, n_max)?, operator_contraction_gap(Algebra::Su11, k, d)?))
    }))?;
    Ok(ContractionReport {
        kappa_grid: grid.to_vec(),
        sup_coeff_gap: rows.iter().map(|r| r.0).collect(),
        op_gap: rows.iter().map(|r| r.1).collect(),
    })
}

/// Coefficient and su(2) operator gaps along an L grid (κ = L + 1/2).
pub fn sgii_report(
    ls: &[usize],
    z: Coherence,
    n_max: usize,
    d: usize,
    scaling: SgiiScaling,
    exec: Exec,
) -> Result<ContractionReport> {
    let rows = exec::collect_results(exec::map(exec, ls, |&l| {
        let k = l as f64 + 0.5;
        Ok::<_, Error>((
            sgii_contraction_gap(l, z, n_max, scaling)?.0,
            operator_contraction_gap(Algebra::Su2, k, d)?,
        ))
    }))?;
    Ok(ContractionReport {
        kappa_grid: ls.iter().map(|&l| l as f64 + 0.5).collect(),
        sup_coeff_gap: rows.iter().map(|r| r.0).collect(),
        op_gap: rows.iter().map(|r| r.1).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_argument() {
        let z = Coherence::real(0.0).unwrap();
        assert!(sgi_contraction_gap(10.0, z, 6).unwrap() < 1e-15);
        assert!(sgii_contraction_gap(5, z, 4, SgiiScaling::SqrtHalfL).unwrap().0 < 1e-15);
    }

    #[test]
    fn su11_entry_bound() {
        let k = 50.0;
        let d = 12;
        let (am, _, _) = build_su11_ladder(k, d).unwrap();
        for n in 0..d - 1 {
            let nf = n as f64;
            let v = am.get(n, n + 1).re / (2.0 * k).sqrt();
            assert!((v - (nf + 1.0).sqrt()).abs() <= (nf + 1.0).sqrt() * nf / (4.0 * k) + 1e-15);
        }
    }

    #[test]
    fn su2_block_matches_full_ladder() {
        let (cm, _, _) = crate::fockspace::build_su2_ladder(3.5).unwrap();
        let full = cm.scaled_re(1.0 / 7f64.sqrt()).block(5).unwrap();
        let (a, _, _) = build_boson(5).unwrap();
        let g = full.max_gap(&a).unwrap();
        assert_eq!(g, operator_contraction_gap(Algebra::Su2, 3.5, 5).unwrap());
    }

    #[test]
    fn su2_block_checked() {
        assert!(operator_contraction_gap(Algebra::Su2, 2.0, 5).is_err());
        assert!(operator_contraction_gap(Algebra::Su2, 2.0, 4).is_ok());
    }
}
