//! Coherent-state quantization maps on truncated Fock spaces.
//!
//! Every matrix element reduces, after the analytic angular integral, to one
//! radial integral: a product of two Bessel J (SGI), two Bessel K (SGII) or a
//! Beta-type integral on the unit disk (SU(1,1)). Each element has a
//! Γ-ratio closed form and an independent quadrature value.

mod gk;
mod radial;

pub use gk::integrate;
pub use radial::{
    closed_disk, closed_jj, closed_kk, jj_in_cone, kk_in_cone, radial_quadrature,
    radial_quadrature_with_error, RadialIntegralSpec,
};

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::fockspace::FockOperator;
use crate::specfun::{gamma_ln, ln_binomial, ln_pochhammer};
use crate::states::{sgii_order, Family, StateFamily};

/// How the entries of a [`QuantizedOperator`] were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Quadrature,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    /// relative tolerance of each radial quadrature
    pub tol: f64,
    pub exec: Exec,
    pub method: Method,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { tol: 1e-10, exec: Exec::default(), method: Method::Quadrature }
    }
}

impl QuadOptions {
    pub fn closed_form() -> Self {
        QuadOptions { method: Method::ClosedForm, ..Self::default() }
    }
}

/// Quantized operator with the closed-form/quadrature cross-check.
#[derive(Debug, Clone)]
pub struct QuantizedOperator {
    pub op: FockOperator,
    pub method: Method,
    /// max relative gap between the two evaluation paths, when both ran
    pub max_elem_gap: Option<f64>,
}

impl QuantizedOperator {
    /// Fails when the recorded gap exceeds `tol`.
    pub fn verify(&self, tol: f64) -> Result<()> {
        match self.max_elem_gap {
            Some(g) if g > tol => Err(Error::Accuracy(format!(
                "closed form and quadrature differ by {g:.3e} (tolerance {tol:.1e})"
            ))),
            _ => Ok(()),
        }
    }

    fn adjoint(&self) -> Self {
        QuantizedOperator { op: self.op.adjoint(), method: self.method, max_elem_gap: self.max_elem_gap }
    }
}

fn rel_gap(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s == 0.0 {
        0.0
    } else {
        (a - b).abs() / s
    }
}

/// Evaluates `count` elements by the requested method; with quadrature the
/// closed forms also run and the largest relative gap is returned.
fn elements<C, Q>(count: usize, opts: &QuadOptions, closed: C, quad: Q) -> Result<(Vec<f64>, Option<f64>)>
where
    C: Fn(usize) -> Result<f64> + Sync + Send,
    Q: Fn(usize) -> Result<f64> + Sync + Send,
{
    let cf = exec::collect_results(exec::map_range(opts.exec, count, &closed))?;
    match opts.method {
        Method::ClosedForm => Ok((cf, None)),
        Method::Quadrature => {
            let qv = exec::collect_results(exec::map_range(opts.exec, count, &quad))?;
            let gap = cf.iter().zip(&qv).map(|(a, b)| rel_gap(*a, *b)).fold(0.0, f64::max);
            Ok((qv, Some(gap)))
        }
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(Error::Size(format!("operator dimension must be >= 2, got {dim}")));
    }
    Ok(())
}

fn check_tol(opts: &QuadOptions) -> Result<()> {
    if !(opts.tol > 0.0 && opts.tol < 1e-2) {
        return Err(Error::Domain(format!("quadrature tolerance must lie in (0, 1e-2), got {}", opts.tol)));
    }
    Ok(())
}

// ------------------------------------------------------------ SGI

/// Weight constant 𝒟_κ = (2κ-1) Γ(κ) / (2^{2κ-1} (1/2)_κ).
pub fn sgi_weight_constant(kappa: f64) -> Result<f64> {
    let l = (2.0 * kappa - 1.0).ln() + gamma_ln(kappa)? - (2.0 * kappa - 1.0) * 2f64.ln()
        - gamma_ln(kappa + 0.5)?
        + gamma_ln(0.5)?;
    Ok(l.exp())
}

/// ln (n+1)_{2κ-1}
fn ln_sgi_c(kappa: f64, n: usize) -> Result<f64> {
    Ok(ln_pochhammer(n as f64 + 1.0, 2.0 * kappa - 1.0)?.0)
}

fn check_sgi_kappa(kappa: f64, min: f64) -> Result<()> {
    if !(kappa >= min) || !kappa.is_finite() {
        return Err(Error::Domain(format!("κ must be >= {min}, got {kappa}")));
    }
    Ok(())
}

/// ⟨m| A_{r^s e^{ikφ}} |m+k⟩ for SGI: 2𝒟√(C_m C_{m+k}) ∫ r^{1+s-2κ} J_{m+κ} J_{m+k+κ}.
fn sgi_spec(kappa: f64, m: usize, k: usize, s: f64) -> RadialIntegralSpec {
    RadialIntegralSpec::BesselJJ {
        nu: m as f64 + kappa,
        mu: (m + k) as f64 + kappa,
        lambda: 2.0 * kappa - 1.0 - s,
        scale: 2.0,
    }
}

fn sgi_prefactor(kappa: f64, m: usize, k: usize) -> Result<f64> {
    let l = 0.5 * (ln_sgi_c(kappa, m)? + ln_sgi_c(kappa, m + k)?);
    Ok(2.0 * sgi_weight_constant(kappa)? * l.exp())
}

fn sgi_element_quad(kappa: f64, m: usize, k: usize, s: f64, tol: f64) -> Result<f64> {
    Ok(sgi_prefactor(kappa, m, k)? * radial_quadrature(&sgi_spec(kappa, m, k, s), tol)?)
}

fn sgi_element_closed(kappa: f64, m: usize, k: usize, s: f64) -> Result<f64> {
    let RadialIntegralSpec::BesselJJ { nu, mu, lambda, scale } = sgi_spec(kappa, m, k, s) else {
        unreachable!()
    };
    Ok(sgi_prefactor(kappa, m, k)? * closed_jj(nu, mu, lambda, scale)?)
}

/// Quantized α and ᾱ for SGI states: superdiagonal a_n = √((n+1)(n+2κ))/2.
/// The quadrature path needs κ > 1; κ = 1 uses the λ → 0 limit.
pub fn quantize_linear_sgi(
    kappa: f64,
    dim: usize,
    opts: &QuadOptions,
) -> Result<(QuantizedOperator, QuantizedOperator)> {
    check_sgi_kappa(kappa, 1.0)?;
    check_dim(dim)?;
    check_tol(opts)?;
    if opts.method == Method::Quadrature && kappa <= 1.0 {
        return Err(Error::Cone(format!(
            "quadrature for the linear map needs κ > 1, got {kappa}"
        )));
    }
    let (vals, gap) = elements(
        dim - 1,
        opts,
        |n| sgi_element_closed(kappa, n, 1, 1.0),
        |n| sgi_element_quad(kappa, n, 1, 1.0, opts.tol),
    )?;
    let a = QuantizedOperator { op: FockOperator::superdiagonal(&vals), method: opts.method, max_elem_gap: gap };
    let ad = a.adjoint();
    Ok((a, ad))
}

/// Closed a_n^{(κ)} = √((n+1)(n+2κ))/2.
pub fn sgi_linear_closed(kappa: f64, n: usize) -> f64 {
    let n = n as f64;
    ((n + 1.0) * (n + 2.0 * kappa)).sqrt() / 2.0
}

/// 𝒟_{κ;γ} = 2^{-γ} (2κ-1)/(2κ-γ-1) (κ-γ/2)_{1/2} / (κ)_{1/2}.
pub fn modulus_constant(kappa: f64, gamma: f64) -> Result<f64> {
    let l = -gamma * 2f64.ln() + ((2.0 * kappa - 1.0) / (2.0 * kappa - gamma - 1.0)).ln()
        + ln_pochhammer(kappa - gamma / 2.0, 0.5)?.0
        - ln_pochhammer(kappa, 0.5)?.0;
    Ok(l.exp())
}

/// Closed A_n^{(κ;γ)} = 𝒟_{κ;γ} (n+1)_{2κ-1} / (n+1+γ/2)_{2κ-γ-1}.
pub fn sgi_modulus_closed(kappa: f64, gamma: f64, n: usize) -> Result<f64> {
    check_modulus(kappa, gamma)?;
    let n = n as f64;
    let (a, _) = ln_pochhammer(n + 1.0, 2.0 * kappa - 1.0)?;
    let (b, _) = ln_pochhammer(n + 1.0 + gamma / 2.0, 2.0 * kappa - gamma - 1.0)?;
    Ok(modulus_constant(kappa, gamma)? * (a - b).exp())
}

fn check_modulus(kappa: f64, gamma: f64) -> Result<()> {
    check_sgi_kappa(kappa, 1.0)?;
    if !(gamma > -2.0 && gamma < 2.0 * kappa - 1.0) {
        return Err(Error::Cone(format!(
            "quantizing |α|^γ needs -2 < γ < 2κ-1 (κ={kappa}, γ={gamma})"
        )));
    }
    Ok(())
}

/// Quantized |α|^γ for SGI states (diagonal).
pub fn quantize_modulus_sgi(kappa: f64, gamma: f64, dim: usize, opts: &QuadOptions) -> Result<QuantizedOperator> {
    check_modulus(kappa, gamma)?;
    check_dim(dim)?;
    check_tol(opts)?;
    let (vals, gap) = elements(
        dim,
        opts,
        |n| sgi_element_closed(kappa, n, 0, gamma),
        |n| sgi_element_quad(kappa, n, 0, gamma, opts.tol),
    )?;
    Ok(QuantizedOperator { op: FockOperator::diagonal(&vals), method: opts.method, max_elem_gap: gap })
}

// ------------------------------------------------------------ SU(1,1) disk

fn ln_su11_p(kappa: f64, n: usize) -> Result<f64> {
    Ok(ln_pochhammer(2.0 * kappa, n as f64)?.0 - gamma_ln(n as f64 + 1.0)?)
}

fn disk_value(p: f64, e: f64, opts: &QuadOptions, quad: bool) -> Result<f64> {
    if quad {
        radial_quadrature(&RadialIntegralSpec::Disk { power: p, exponent: e }, opts.tol)
    } else {
        closed_disk(p, e)
    }
}

fn su11_identity(kappa: f64, n: usize, opts: &QuadOptions, quad: bool) -> Result<f64> {
    Ok((2.0 * kappa - 1.0) * ln_su11_p(kappa, n)?.exp() * disk_value(n as f64, 2.0 * kappa - 2.0, opts, quad)?)
}

fn su11_ladder(kappa: f64, n: usize, opts: &QuadOptions, quad: bool) -> Result<f64> {
    let p = 0.5 * (ln_su11_p(kappa, n)? + ln_su11_p(kappa, n + 1)?);
    Ok((2.0 * kappa - 1.0) * p.exp() * disk_value(n as f64 + 1.0, 2.0 * kappa - 3.0, opts, quad)?)
}

fn su11_modulus(kappa: f64, gamma: f64, n: usize, opts: &QuadOptions, quad: bool) -> Result<f64> {
    Ok((2.0 * kappa - 1.0) * ln_su11_p(kappa, n)?.exp() * disk_value(n as f64 + gamma, 2.0 * kappa - 3.0, opts, quad)?)
}

/// Closed b_n = √((n+1)(n+2κ)) / (2(κ-1)).
pub fn su11_ladder_closed(kappa: f64, n: usize) -> f64 {
    let n = n as f64;
    ((n + 1.0) * (n + 2.0 * kappa)).sqrt() / (2.0 * (kappa - 1.0))
}

/// Closed B_n^{(κ;γ)} = (n+1)_γ / (n+2κ)_{γ-1} / (2(κ-1)).
pub fn su11_modulus_closed(kappa: f64, gamma: f64, n: usize) -> Result<f64> {
    let n = n as f64;
    let (a, sa) = ln_pochhammer(n + 1.0, gamma)?;
    let (b, sb) = ln_pochhammer(n + 2.0 * kappa, gamma - 1.0)?;
    Ok(sa * sb * (a - b).exp() / (2.0 * (kappa - 1.0)))
}

/// Disk quantization with the SU(1,1) weight (2κ-1)/(1-|τ|²)²: b, b† and
/// the diagonal B^{(κ;γ)}.
pub fn quantize_disk_su11(
    kappa: f64,
    gamma: f64,
    dim: usize,
    opts: &QuadOptions,
) -> Result<(QuantizedOperator, QuantizedOperator, QuantizedOperator)> {
    if !(kappa > 1.0) || !kappa.is_finite() {
        return Err(Error::Cone(format!("the disk quantization map needs κ > 1, got {kappa}")));
    }
    if !(gamma > -1.0) || !gamma.is_finite() {
        return Err(Error::Cone(format!("disk modulus power needs γ > -1, got {gamma}")));
    }
    check_dim(dim)?;
    check_tol(opts)?;
    let (vals, gap) = elements(
        dim - 1,
        opts,
        |n| su11_ladder(kappa, n, opts, false),
        |n| su11_ladder(kappa, n, opts, true),
    )?;
    let b = QuantizedOperator { op: FockOperator::superdiagonal(&vals), method: opts.method, max_elem_gap: gap };
    let bd = b.adjoint();
    let (diag, gap) = elements(
        dim,
        opts,
        |n| su11_modulus(kappa, gamma, n, opts, false),
        |n| su11_modulus(kappa, gamma, n, opts, true),
    )?;
    let bg = QuantizedOperator { op: FockOperator::diagonal(&diag), method: opts.method, max_elem_gap: gap };
    Ok((b, bd, bg))
}

// ------------------------------------------------------------ SGII

/// 𝔇_κ = 4(2κ+1)/Γ(κ+1)².
pub fn sgii_weight_constant(kappa: f64) -> Result<f64> {
    Ok(4.0 * (2.0 * kappa + 1.0) * (-2.0 * gamma_ln(kappa + 1.0)?).exp())
}

fn sgii_identity(kappa: f64, n: usize, opts: &QuadOptions, quad: bool) -> Result<f64> {
    let o = n as f64 - kappa;
    let lam = -(2.0 * kappa + 1.0);
    let v = if quad {
        radial_quadrature(&RadialIntegralSpec::BesselKK { mu: o, nu: o, lambda: lam, scale: 2.0 }, opts.tol)?
    } else {
        closed_kk(o, o, lam, 2.0)?
    };
    Ok(2.0 * sgii_weight_constant(kappa)? * ln_binomial(2.0 * kappa, n as f64)?.exp() * v)
}

fn sgii_ladder(kappa: f64, n: usize, opts: &QuadOptions, quad: bool) -> Result<f64> {
    let (o1, o2) = (n as f64 - kappa, n as f64 + 1.0 - kappa);
    let lam = -(2.0 * kappa + 2.0);
    let v = if quad {
        radial_quadrature(&RadialIntegralSpec::BesselKK { mu: o1, nu: o2, lambda: lam, scale: 2.0 }, opts.tol)?
    } else {
        closed_kk(o1, o2, lam, 2.0)?
    };
    let b = 0.5 * (ln_binomial(2.0 * kappa, n as f64)? + ln_binomial(2.0 * kappa, n as f64 + 1.0)?);
    // c₋ is twice the quantized z
    Ok(2.0 * 2.0 * sgii_weight_constant(kappa)? * b.exp() * v)
}

/// Closed c_n = √((n+1)(2κ-n)).
pub fn sgii_ladder_closed(kappa: f64, n: usize) -> f64 {
    let n = n as f64;
    ((n + 1.0) * (2.0 * kappa - n)).sqrt()
}

/// Quantized su(2) ladder c₋, c₊ on dimension 2κ+1 (half-integer κ).
pub fn quantize_sgii(kappa: f64, opts: &QuadOptions) -> Result<(QuantizedOperator, QuantizedOperator)> {
    let l = sgii_order(kappa)?;
    check_tol(opts)?;
    let count = 2 * l + 1;
    let (vals, gap) = elements(
        count,
        opts,
        |n| sgii_ladder(kappa, n, opts, false),
        |n| sgii_ladder(kappa, n, opts, true),
    )?;
    let c = QuantizedOperator { op: FockOperator::superdiagonal(&vals), method: opts.method, max_elem_gap: gap };
    let cd = c.adjoint();
    Ok((c, cd))
}

// ------------------------------------------------------------ identity

/// Diagonal element ⟨n| ∫ w |α⟩⟨α| |n⟩ for the families with a known weight.
/// Off-diagonal elements vanish after the angular integral.
pub fn identity_diagonal(family: Family, kappa: f64, n: usize, opts: &QuadOptions) -> Result<f64> {
    let quad = opts.method == Method::Quadrature;
    match family {
        Family::Msg | Family::Sgi => {
            let k = if family == Family::Msg { 1.0 } else { kappa };
            if !(k > 0.5) || !k.is_finite() {
                return Err(Error::Domain(format!("SGI identity needs κ > 1/2, got {k}")));
            }
            if quad {
                sgi_element_quad(k, n, 0, 0.0, opts.tol)
            } else {
                sgi_element_closed(k, n, 0, 0.0)
            }
        }
        Family::Sgii => {
            let l = sgii_order(kappa)?;
            if n > 2 * l + 1 {
                return Err(Error::Size(format!("SGII states live on n <= {}", 2 * l + 1)));
            }
            sgii_identity(kappa, n, opts, quad)
        }
        Family::Su11 => {
            if !(kappa > 0.5) || !kappa.is_finite() {
                return Err(Error::Domain(format!("SU(1,1) identity needs κ > 1/2, got {kappa}")));
            }
            su11_identity(kappa, n, opts, quad)
        }
        f => Err(Error::Family(format!("no identity-resolution weight implemented for {f}"))),
    }
}

/// max_n |diag_n - 1| over n <= n_max (clamped to the space for SGII).
pub fn identity_resolution_check(state: &StateFamily, n_max: usize, opts: &QuadOptions) -> Result<f64> {
    check_tol(opts)?;
    let top = match state.family {
        Family::Sgii => n_max.min(state.dim - 1),
        _ => {
            if n_max >= state.dim {
                return Err(Error::Size(format!("n_max = {n_max} must be below the dimension {}", state.dim)));
            }
            n_max
        }
    };
    let vals = exec::collect_results(exec::map_range(opts.exec, top + 1, |n| {
        identity_diagonal(state.family, state.kappa, n, opts)
    }))?;
    Ok(vals.iter().map(|v| (v - 1.0).abs()).fold(0.0, f64::max))
}
