use crate::error::{Error, Result};
use std::f64::consts::PI;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

// B_{2k} / (2k (2k-1))
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// Riemann zeta for integer k >= 2 by partial sum plus Euler-Maclaurin tail.
fn zeta_int(k: u32) -> f64 {
    const N: f64 = 50.0;
    let s = k as f64;
    let mut sum = 0.0;
    for n in (1..50).rev() {
        sum += (n as f64).powf(-s);
    }
    let nk = N.powf(-s);
    sum += N * nk / (s - 1.0) + 0.5 * nk;
    sum += s * nk / N / 12.0;
    sum -= s * (s + 1.0) * (s + 2.0) * nk / N.powi(3) / 720.0;
    sum += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * nk / N.powi(5) / 30240.0;
    sum
}

/// ln Γ(1+e) for |e| <= 0.2 by its Taylor series about 1.
fn ln_gamma_1p_small(e: f64) -> f64 {
    let mut sum = 0.0;
    let mut p = e * e;
    for k in 2..60u32 {
        let t = zeta_int(k) * p / k as f64;
        let t = if k % 2 == 0 { t } else { -t };
        sum += t;
        if t.abs() < 1e-19 {
            break;
        }
        p *= e;
    }
    sum - EULER_GAMMA * e
}

fn ln_gamma_stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut corr = 0.0;
    let mut p = inv;
    for c in STIRLING {
        corr += c * p;
        p *= inv2;
    }
    (x - 0.5) * x.ln() - x + LN_SQRT_2PI + corr
}

fn ln_gamma_lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + a.ln()
}

/// ln Γ(x) for x > 0, no validation.
fn ln_gamma_pos(x: f64) -> f64 {
    if x == x.round() && x <= 171.0 {
        let mut p = 1.0;
        let mut k = 2.0;
        while k < x {
            p *= k;
            k += 1.0;
        }
        return p.ln();
    }
    if x < 0.5 {
        return ln_gamma_pos(x + 1.0) - x.ln();
    }
    if (x - 1.0).abs() <= 0.2 {
        return ln_gamma_1p_small(x - 1.0);
    }
    if (x - 2.0).abs() <= 0.2 {
        let e = x - 2.0;
        return e.ln_1p() + ln_gamma_1p_small(e);
    }
    if x >= 10.0 {
        return ln_gamma_stirling(x);
    }
    ln_gamma_lanczos(x)
}

/// sin(πx) with exact zeros at the integers.
fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let f = x - n;
    let s = (PI * f).sin();
    if (n as i64).rem_euclid(2) == 0 {
        s
    } else {
        -s
    }
}

/// ln Γ(x) for x > 0.
pub fn gamma_ln(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("gamma_ln requires x > 0, got {x}")));
    }
    Ok(ln_gamma_pos(x))
}

/// (ln |Γ(x)|, sign Γ(x)) for any real x off the poles.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("non-finite gamma argument {x}")));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(format!("Γ({x})")));
    }
    if x > 0.0 {
        return Ok((ln_gamma_pos(x), 1.0));
    }
    // reflection: Γ(x) Γ(1-x) = π / sin(πx)
    let s = sin_pi(x);
    Ok(((PI / s.abs()).ln() - ln_gamma_pos(1.0 - x), s.signum()))
}

/// 1/Γ(x), zero at the poles.
pub fn rgamma(x: f64) -> f64 {
    match ln_gamma_signed(x) {
        Ok((l, s)) => s * (-l).exp(),
        Err(_) => 0.0,
    }
}

/// ln n!
pub fn ln_factorial(n: usize) -> f64 {
    ln_gamma_pos(n as f64 + 1.0)
}

/// Rising factorial (a)_n for integer n by direct product.
pub fn pochhammer(a: f64, n: usize) -> f64 {
    let mut p = 1.0;
    for k in 0..n {
        p *= a + k as f64;
    }
    p
}

/// (ln |(a)_ν|, sign) for real ν. Integer ν uses the product form whenever
/// a Γ pole would otherwise block the ratio.
pub fn ln_pochhammer(a: f64, nu: f64) -> Result<(f64, f64)> {
    if nu == 0.0 {
        return Ok((0.0, 1.0));
    }
    let int_nu = nu == nu.round() && nu > 0.0;
    if int_nu && (is_nonpositive_integer(a) || is_nonpositive_integer(a + nu) || nu <= 64.0) {
        let p = pochhammer(a, nu as usize);
        if p == 0.0 {
            return Ok((f64::NEG_INFINITY, 1.0));
        }
        if p.is_finite() {
            return Ok((p.abs().ln(), p.signum()));
        }
    }
    let (la, sa) = ln_gamma_signed(a)?;
    let (lb, sb) = ln_gamma_signed(a + nu)?;
    Ok((lb - la, sa * sb))
}

/// (a)_ν = Γ(a+ν)/Γ(a) for real ν.
pub fn pochhammer_real(a: f64, nu: f64) -> Result<f64> {
    let (l, s) = ln_pochhammer(a, nu)?;
    let v = s * l.exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Accuracy(format!("({a})_{nu} overflows")))
    }
}

/// ln of the binomial coefficient C(n, k) for real n >= k >= 0.
pub fn ln_binomial(n: f64, k: f64) -> Result<f64> {
    Ok(gamma_ln(n + 1.0)? - gamma_ln(k + 1.0)? - gamma_ln(n - k + 1.0)?)
}
