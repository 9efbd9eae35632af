//! Truncated Fock-space linear algebra.
//!
//! Truncated ladder operators drop transitions that leave the span of
//! |0>..|D-1>. Commutation relations therefore hold on rows and columns
//! 0..D-3 only; use [`interior_gap`] to compare there.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;

const NORM_TOL: f64 = 1e-10;

/// Coefficient vector over |0>..|D-1>.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    coeffs: Vec<C64>,
    normalized: bool,
}

impl FockVector {
    pub fn new(coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Size("Fock vector needs dimension >= 1".into()));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Accuracy("non-finite Fock coefficient".into()));
        }
        let normalized = (norm_sqr(&coeffs) - 1.0).abs() <= NORM_TOL;
        Ok(FockVector { coeffs, normalized })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Number state |n> in dimension `dim`.
    pub fn basis(dim: usize, n: usize) -> Result<Self> {
        if n >= dim {
            return Err(Error::Size(format!("|{n}> outside dimension {dim}")));
        }
        let mut c = vec![C64::new(0.0, 0.0); dim];
        c[n] = C64::new(1.0, 0.0);
        Self::new(c)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C64> {
        self.coeffs
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.coeffs)
    }

    pub fn normalize(&self) -> Result<Self> {
        let n = self.norm_sqr().sqrt();
        if n == 0.0 {
            return Err(Error::Domain("cannot normalize the zero vector".into()));
        }
        Self::new(self.coeffs.iter().map(|c| c / n).collect())
    }

    /// Zero-pad (or truncate) to `dim`.
    pub fn resized(&self, dim: usize) -> Result<Self> {
        let mut c = self.coeffs.clone();
        c.resize(dim, C64::new(0.0, 0.0));
        Self::new(c)
    }

    pub(crate) fn to_dvector(&self) -> DVector<C64> {
        DVector::from_column_slice(&self.coeffs)
    }

    /// Largest entrywise modulus difference.
    pub fn max_diff(&self, other: &FockVector) -> Result<f64> {
        check_dims(self.dim(), other.dim())?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

fn norm_sqr(c: &[C64]) -> f64 {
    c.iter().map(|x| x.norm_sqr()).sum()
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        Err(Error::DimMismatch { left: a, right: b })
    } else {
        Ok(())
    }
}

/// D x D complex matrix with an optional (lower, upper) bandwidth hint.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    matrix: DMatrix<C64>,
    band: Option<(usize, usize)>,
}

impl FockOperator {
    pub fn from_matrix(matrix: DMatrix<C64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimMismatch { left: matrix.nrows(), right: matrix.ncols() });
        }
        if matrix.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Accuracy("non-finite operator entry".into()));
        }
        Ok(FockOperator { matrix, band: None })
    }

    /// Attach a bandwidth hint; rejected if an entry lies outside the band.
    pub fn with_band(mut self, lower: usize, upper: usize) -> Result<Self> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let outside = (i > j && i - j > lower) || (j > i && j - i > upper);
                if outside && self.matrix[(i, j)] != C64::new(0.0, 0.0) {
                    return Err(Error::Domain(format!("entry ({i},{j}) outside band")));
                }
            }
        }
        self.band = Some((lower, upper));
        Ok(self)
    }

    pub fn zeros(dim: usize) -> Self {
        FockOperator { matrix: DMatrix::zeros(dim, dim), band: Some((0, 0)) }
    }

    pub fn identity(dim: usize) -> Self {
        FockOperator { matrix: DMatrix::identity(dim, dim), band: Some((0, 0)) }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let d = values.len();
        let mut m = DMatrix::zeros(d, d);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        FockOperator { matrix: m, band: Some((0, 0)) }
    }

    /// Operator with `values[n]` at (n, n+1), i.e. Σ v_n |n><n+1|.
    pub fn superdiagonal(values: &[f64]) -> Self {
        let d = values.len() + 1;
        let mut m = DMatrix::zeros(d, d);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i + 1)] = C64::new(v, 0.0);
        }
        FockOperator { matrix: m, band: Some((0, 1)) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn band(&self) -> Option<(usize, usize)> {
        self.band
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.matrix[(i, j)]
    }

    pub fn adjoint(&self) -> Self {
        FockOperator {
            matrix: self.matrix.adjoint(),
            band: self.band.map(|(l, u)| (u, l)),
        }
    }

    pub fn scaled(&self, s: C64) -> Self {
        FockOperator { matrix: &self.matrix * s, band: self.band }
    }

    pub fn scaled_re(&self, s: f64) -> Self {
        self.scaled(C64::new(s, 0.0))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Ok(FockOperator { matrix: &self.matrix + &other.matrix, band: merge_band(self.band, other.band) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Ok(FockOperator { matrix: &self.matrix - &other.matrix, band: merge_band(self.band, other.band) })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        let band = match (self.band, other.band) {
            (Some((l1, u1)), Some((l2, u2))) => Some((l1 + l2, u1 + u2)),
            _ => None,
        };
        Ok(FockOperator { matrix: &self.matrix * &other.matrix, band })
    }

    pub fn apply(&self, v: &FockVector) -> Result<FockVector> {
        check_dims(self.dim(), v.dim())?;
        let w = &self.matrix * v.to_dvector();
        FockVector::new(w.iter().copied().collect())
    }

    /// Max entrywise modulus over the whole matrix.
    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Max entrywise |A - B| over the full matrix.
    pub fn max_gap(&self, other: &Self) -> Result<f64> {
        check_dims(self.dim(), other.dim())?;
        Ok((&self.matrix - &other.matrix).iter().map(|c| c.norm()).fold(0.0, f64::max))
    }

    /// Leading k x k block.
    pub fn block(&self, k: usize) -> Result<Self> {
        if k > self.dim() {
            return Err(Error::Size(format!("block {k} larger than dimension {}", self.dim())));
        }
        Ok(FockOperator { matrix: self.matrix.view((0, 0), (k, k)).into_owned(), band: self.band })
    }

    fn norm1(&self) -> f64 {
        (0..self.dim())
            .map(|j| self.matrix.column(j).iter().map(|c| c.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

fn merge_band(a: Option<(usize, usize)>, b: Option<(usize, usize)>) -> Option<(usize, usize)> {
    match (a, b) {
        (Some((l1, u1)), Some((l2, u2))) => Some((l1.max(l2), u1.max(u2))),
        _ => None,
    }
}

/// Max |A_ij - B_ij| over the interior block i, j < D-2.
pub fn interior_gap(a: &FockOperator, b: &FockOperator) -> Result<f64> {
    check_dims(a.dim(), b.dim())?;
    let k = a.dim().saturating_sub(2);
    let mut g = 0.0f64;
    for i in 0..k {
        for j in 0..k {
            g = g.max((a.get(i, j) - b.get(i, j)).norm());
        }
    }
    Ok(g)
}

fn need_dim(d: usize, min: usize) -> Result<()> {
    if d < min {
        Err(Error::Size(format!("dimension {d} below minimum {min}")))
    } else {
        Ok(())
    }
}

/// Boson annihilation, creation and number operators.
pub fn build_boson(d: usize) -> Result<(FockOperator, FockOperator, FockOperator)> {
    need_dim(d, 2)?;
    let vals: Vec<f64> = (1..d).map(|n| (n as f64).sqrt()).collect();
    let a = FockOperator::superdiagonal(&vals);
    let ad = a.adjoint();
    let n = FockOperator::diagonal(&(0..d).map(|n| n as f64).collect::<Vec<_>>());
    Ok((a, ad, n))
}

/// Susskind-Glogower phase operators V = Σ |n-1><n| and V†.
pub fn build_v(d: usize) -> Result<(FockOperator, FockOperator)> {
    need_dim(d, 2)?;
    let v = FockOperator::superdiagonal(&vec![1.0; d - 1]);
    let vd = v.adjoint();
    Ok((v, vd))
}

/// One-photon su(1,1) generators: (a₋)_{n,n+1} = √((n+1)(n+2κ)), a₊ = a₋†,
/// n^(κ) = diag(n+κ).
pub fn build_su11_ladder(kappa: f64, d: usize) -> Result<(FockOperator, FockOperator, FockOperator)> {
    if !(kappa >= 1.0) || !kappa.is_finite() {
        return Err(Error::Domain(format!("su(1,1) ladder needs κ >= 1, got {kappa}")));
    }
    need_dim(d, 3)?;
    let vals: Vec<f64> = (0..d - 1)
        .map(|n| ((n as f64 + 1.0) * (n as f64 + 2.0 * kappa)).sqrt())
        .collect();
    let am = FockOperator::superdiagonal(&vals);
    let ap = am.adjoint();
    let nk = FockOperator::diagonal(&(0..d).map(|n| n as f64 + kappa).collect::<Vec<_>>());
    Ok((am, ap, nk))
}

/// Casimir (n^(κ))² - ½(a₊a₋ + a₋a₊).
pub fn build_su11_casimir(kappa: f64, d: usize) -> Result<FockOperator> {
    let (am, ap, nk) = build_su11_ladder(kappa, d)?;
    let sym = ap.mul(&am)?.add(&am.mul(&ap)?)?;
    nk.mul(&nk)?.sub(&sym.scaled_re(0.5))
}

/// Checks that 2κ is a positive integer and returns it.
pub fn two_kappa(kappa: f64) -> Result<usize> {
    let t = 2.0 * kappa;
    if !(t >= 1.0) || t != t.round() || t > 1e6 {
        return Err(Error::Domain(format!("2κ must be a positive integer, got κ = {kappa}")));
    }
    Ok(t as usize)
}

/// Holstein-Primakoff su(2) ladder on dimension 2κ+1:
/// (c₋)_{n,n+1} = √((n+1)(2κ-n)), c₊ = c₋†, c₀ = diag(n-κ).
/// With this c₀, [c₀, c±] = ±c± and [c₋, c₊] = -2c₀ hold exactly.
pub fn build_su2_ladder(kappa: f64) -> Result<(FockOperator, FockOperator, FockOperator)> {
    let tk = two_kappa(kappa)?;
    let vals: Vec<f64> = (0..tk)
        .map(|n| ((n as f64 + 1.0) * (tk as f64 - n as f64)).sqrt())
        .collect();
    let cm = FockOperator::superdiagonal(&vals);
    let cp = cm.adjoint();
    let c0 = FockOperator::diagonal(&(0..=tk).map(|n| n as f64 - kappa).collect::<Vec<_>>());
    Ok((cm, cp, c0))
}

/// Quadratures x = (a+a†)/√2 and p = -i(a-a†)/√2.
pub fn build_quadratures(d: usize) -> Result<(FockOperator, FockOperator)> {
    let (a, ad, _) = build_boson(d)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let x = a.add(&ad)?.scaled_re(s);
    let p = a.sub(&ad)?.scaled(C64::new(0.0, -s));
    Ok((x, p))
}

pub fn commutator(a: &FockOperator, b: &FockOperator) -> Result<FockOperator> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// e^{tG} v by scaling and squaring with a truncated Taylor series.
pub fn matexp_apply(g: &FockOperator, v: &FockVector, t: f64) -> Result<FockVector> {
    check_dims(g.dim(), v.dim())?;
    if t == 0.0 {
        return Ok(v.clone());
    }
    let a = g.scaled_re(t);
    let norm = a.norm1();
    if !norm.is_finite() {
        return Err(Error::Convergence("non-finite generator".into()));
    }
    let mut s = 0i32;
    while norm / 2f64.powi(s) > 0.5 {
        s += 1;
        if s > 200 {
            return Err(Error::Convergence("generator norm too large".into()));
        }
    }
    let b = &a.matrix / C64::new(2f64.powi(s), 0.0);
    let d = g.dim();
    let mut e = DMatrix::<C64>::identity(d, d);
    let mut term = DMatrix::<C64>::identity(d, d);
    let mut converged = false;
    for k in 1..=40 {
        term = &term * &b / C64::new(k as f64, 0.0);
        e += &term;
        let tn = term.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if tn < 1e-18 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence("Taylor series of the scaled exponential".into()));
    }
    for _ in 0..s {
        e = &e * &e;
    }
    let w = e * v.to_dvector();
    FockVector::new(w.iter().copied().collect())
        .map_err(|_| Error::Convergence("matrix exponential produced non-finite entries".into()))
}

/// <v|A|v>.
pub fn expectation(a: &FockOperator, v: &FockVector) -> Result<C64> {
    let w = a.apply(v)?;
    inner(v, &w)
}

/// <u|v>, antilinear in u.
pub fn inner(u: &FockVector, v: &FockVector) -> Result<C64> {
    check_dims(u.dim(), v.dim())?;
    Ok(u.coeffs.iter().zip(&v.coeffs).map(|(a, b)| a.conj() * b).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn boson_basics() {
        let (a, ad, n) = build_boson(2).unwrap();
        assert_eq!(a.get(0, 1), c(1.0));
        assert_eq!(a.get(1, 0), c(0.0));
        let (a, ad2, n5) = build_boson(5).unwrap();
        let ada = ad2.mul(&a).unwrap();
        for k in 0..5 {
            assert!((ada.get(k, k) - c(k as f64)).norm() < 1e-14);
            assert_eq!(n5.get(k, k), c(k as f64));
        }
        // [a, a†] = 1 - D|D-1><D-1|
        let comm = commutator(&a, &ad2).unwrap();
        for k in 0..4 {
            assert!((comm.get(k, k) - c(1.0)).norm() < 1e-14);
        }
        assert!((comm.get(4, 4) - c(-4.0)).norm() < 1e-14);
        assert!(build_boson(1).is_err());
        let _ = (ad, n);
    }

    #[test]
    fn v_operators() {
        let d = 6;
        let (v, vd) = build_v(d).unwrap();
        let comm = commutator(&v, &vd).unwrap();
        let mut expect = vec![0.0; d];
        expect[0] = 1.0;
        expect[d - 1] = -1.0;
        assert_eq!(comm.max_gap(&FockOperator::diagonal(&expect)).unwrap(), 0.0);
        let vac = FockVector::basis(d, 0).unwrap();
        assert_eq!(v.apply(&vac).unwrap().norm_sqr(), 0.0);
        // V = (n+1)^{-1/2} a
        let (a, _, _) = build_boson(4).unwrap();
        let inv = FockOperator::diagonal(&(0..4).map(|k| 1.0 / ((k + 1) as f64).sqrt()).collect::<Vec<_>>());
        let (v4, _) = build_v(4).unwrap();
        assert!(inv.mul(&a).unwrap().max_gap(&v4).unwrap() < 1e-15);
    }

    #[test]
    fn su11_entries() {
        let (am, ap, nk) = build_su11_ladder(1.0, 8).unwrap();
        for n in 0..7 {
            let e = 2.0 * ((n as f64 + 1.0) * (n as f64 + 2.0)).sqrt() / 2.0;
            assert!((am.get(n, n + 1) - c(e)).norm() < 1e-14);
        }
        let (am2, _, _) = build_su11_ladder(2.5, 4).unwrap();
        assert!((am2.get(0, 1) - c(5f64.sqrt())).norm() < 1e-15);
        assert_eq!(ap, am.adjoint());
        let half = commutator(&am, &ap).unwrap().scaled_re(0.5);
        assert!(interior_gap(&half, &nk).unwrap() < 1e-12);
        assert!(build_su11_ladder(0.9, 5).is_err());
    }

    #[test]
    fn su2_small() {
        let (cm, cp, c0) = build_su2_ladder(0.5).unwrap();
        assert_eq!(cm.dim(), 2);
        assert_eq!(cm.get(0, 1), c(1.0));
        assert_eq!(commutator(&c0, &cp).unwrap().max_gap(&cp).unwrap(), 0.0);
        let (cm, _, _) = build_su2_ladder(2.0).unwrap();
        assert!((cm.get(3, 4) - c(4f64.sqrt())).norm() < 1e-15);
        assert!(build_su2_ladder(0.75).is_err());
    }

    #[test]
    fn band_hint_checked() {
        let (a, _, _) = build_boson(4).unwrap();
        assert_eq!(a.band(), Some((0, 1)));
        let bad = FockOperator::from_matrix(a.matrix().clone()).unwrap().with_band(0, 0);
        assert!(bad.is_err());
    }

    #[test]
    fn matexp_identity_at_zero() {
        let (v, vd) = build_v(5).unwrap();
        let g = vd.sub(&v).unwrap();
        let s = FockVector::basis(5, 2).unwrap();
        assert_eq!(matexp_apply(&g, &s, 0.0).unwrap(), s);
    }

    #[test]
    fn expectation_examples() {
        let (_, _, n) = build_boson(6).unwrap();
        let s = FockVector::basis(6, 3).unwrap();
        assert!((expectation(&n, &s).unwrap() - c(3.0)).norm() < 1e-15);
        assert!((inner(&s, &s).unwrap() - c(1.0)).norm() < 1e-15);
        assert!(matches!(
            inner(&s, &FockVector::basis(5, 0).unwrap()),
            Err(Error::DimMismatch { .. })
        ));
    }
}
