//! Verification checks shared by the verify-* commands and `verify --suite`.

use sgcs::fockspace::{
    build_boson, build_su11_casimir, build_su11_ladder, build_su2_ladder, build_v, commutator, interior_gap,
    matexp_apply, FockOperator, FockVector, C64,
};
use sgcs::limits::{self, SgiiScaling};
use sgcs::quantize::{self, QuadOptions, QuantizedOperator};
use sgcs::states::{self, Coherence, Family, StateFamily};
use sgcs::stats;
use sgcs::Exec;

use crate::output::{num, Check};
use crate::settings::{CliError, CliResult};

fn k(x: f64) -> String {
    num(x)
}

// ------------------------------------------------------------ identity

pub fn identity(family: Family, kappas: &[f64], n_max: usize, tol: f64, exec: Exec) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    let opts = QuadOptions { exec, ..QuadOptions::default() };
    for &kappa in kappas {
        let kk = if family == Family::Msg { 1.0 } else { kappa };
        let base = StateFamily::new(family, Coherence::real(0.5)?, kk)?;
        let s = if family == Family::Sgii { base } else { base.with_dim(n_max + 1)? };
        let gap = quantize::identity_resolution_check(&s, n_max, &opts)?;
        out.push(Check::new(format!("identity {family} kappa={} n<={n_max}", k(kk)), gap, tol));
    }
    Ok(out)
}

// ------------------------------------------------------------ algebra

fn scalar_identity(d: usize, s: f64) -> FockOperator {
    FockOperator::identity(d).scaled_re(s)
}

pub fn algebra(name: &str, kappas: &[f64], dim: usize, tol: f64) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    match name {
        "su11" => {
            for &kappa in kappas {
                let (am, ap, nk) = build_su11_ladder(kappa, dim)?;
                let tag = format!("su11 kappa={} D={dim}", k(kappa));
                let half = commutator(&am, &ap)?.scaled_re(0.5);
                out.push(Check::new(format!("{tag} [a-,a+]/2=n"), interior_gap(&half, &nk)?, tol));
                let up = commutator(&nk, &ap)?;
                out.push(Check::new(format!("{tag} [n,a+]=a+"), interior_gap(&up, &ap)?, tol));
                let down = commutator(&nk, &am)?;
                out.push(Check::new(format!("{tag} [n,a-]=-a-"), interior_gap(&down, &am.scaled_re(-1.0))?, tol));
                let cas = build_su11_casimir(kappa, dim)?;
                let want = scalar_identity(dim, kappa * (kappa - 1.0));
                out.push(Check::new(format!("{tag} casimir=k(k-1)"), interior_gap(&cas, &want)?, tol.max(1e-10)));
            }
        }
        "su2" => {
            for &kappa in kappas {
                let (cm, cp, c0) = build_su2_ladder(kappa)?;
                let tag = format!("su2 kappa={}", k(kappa));
                out.push(Check::new(format!("{tag} [c0,c+]=c+"), commutator(&c0, &cp)?.max_gap(&cp)?, tol));
                out.push(Check::new(
                    format!("{tag} [c0,c-]=-c-"),
                    commutator(&c0, &cm)?.max_gap(&cm.scaled_re(-1.0))?,
                    tol,
                ));
                out.push(Check::new(
                    format!("{tag} [c-,c+]=-2c0"),
                    commutator(&cm, &cp)?.max_gap(&c0.scaled_re(-2.0))?,
                    tol,
                ));
            }
        }
        "v" => {
            let (v, vd) = build_v(dim)?;
            let mut want = vec![0.0; dim];
            want[0] = 1.0;
            want[dim - 1] = -1.0;
            let gap = commutator(&v, &vd)?.max_gap(&FockOperator::diagonal(&want))?;
            out.push(Check::new(format!("v D={dim} [V,Vdag]=P0-P(D-1)"), gap, tol));
        }
        "boson" => {
            let (a, ad, _) = build_boson(dim)?;
            let gap = interior_gap(&commutator(&a, &ad)?, &FockOperator::identity(dim))?;
            out.push(Check::new(format!("boson D={dim} [a,adag]=1"), gap, tol));
        }
        other => return Err(CliError::Param(format!("unknown algebra '{other}' (su11, su2, v, boson)"))),
    }
    Ok(out)
}

// ------------------------------------------------------------ quantization

fn max_rel(op: &FockOperator, entries: &[(usize, usize, f64)]) -> f64 {
    entries
        .iter()
        .map(|&(i, j, want)| (op.get(i, j).re - want).abs() / want.abs())
        .fold(0.0, f64::max)
}

fn gap_check(name: String, q: &QuantizedOperator, tol: f64) -> Check {
    Check::new(name, q.max_elem_gap.unwrap_or(f64::NAN), tol)
}

/// Closed-vs-quadrature and formula checks for one quantized function.
pub fn quantization(op: &str, kappas: &[f64], gamma: f64, dim: usize, tol: f64, exec: Exec) -> CliResult<Vec<Check>> {
    let opts = QuadOptions { exec, ..QuadOptions::default() };
    let mut out = Vec::new();
    for &kappa in kappas {
        match op {
            "a" => {
                let (a, _) = quantize::quantize_linear_sgi(kappa, dim, &opts)?;
                let tag = format!("a kappa={} n<={}", k(kappa), dim - 2);
                out.push(gap_check(format!("{tag} quadrature-vs-closed"), &a, tol));
                let want: Vec<_> = (0..dim - 1).map(|n| (n, n + 1, quantize::sgi_linear_closed(kappa, n))).collect();
                out.push(Check::new(format!("{tag} sqrt((n+1)(n+2k))/2"), max_rel(&a.op, &want), tol));
            }
            "modulus" => {
                let q = quantize::quantize_modulus_sgi(kappa, gamma, dim, &opts)?;
                let tag = format!("modulus kappa={} gamma={} n<={}", k(kappa), k(gamma), dim - 1);
                out.push(gap_check(format!("{tag} quadrature-vs-closed"), &q, tol));
                let want = (0..dim)
                    .map(|n| Ok((n, n, quantize::sgi_modulus_closed(kappa, gamma, n)?)))
                    .collect::<sgcs::Result<Vec<_>>>()?;
                out.push(Check::new(format!("{tag} pochhammer ratio"), max_rel(&q.op, &want), tol));
            }
            "disk-b" | "disk-modulus" => {
                let (b, _, bg) = quantize::quantize_disk_su11(kappa, gamma, dim, &opts)?;
                if op == "disk-b" {
                    let tag = format!("disk-b kappa={} n<={}", k(kappa), dim - 2);
                    out.push(gap_check(format!("{tag} quadrature-vs-closed"), &b, tol));
                    let want: Vec<_> = (0..dim - 1).map(|n| (n, n + 1, quantize::su11_ladder_closed(kappa, n))).collect();
                    out.push(Check::new(format!("{tag} sqrt((n+1)(n+2k))/(2(k-1))"), max_rel(&b.op, &want), tol));
                } else {
                    let tag = format!("disk-modulus kappa={} gamma={} n<={}", k(kappa), k(gamma), dim - 1);
                    out.push(gap_check(format!("{tag} quadrature-vs-closed"), &bg, tol));
                    let want = (0..dim)
                        .map(|n| Ok((n, n, quantize::su11_modulus_closed(kappa, gamma, n)?)))
                        .collect::<sgcs::Result<Vec<_>>>()?;
                    out.push(Check::new(format!("{tag} pochhammer ratio"), max_rel(&bg.op, &want), tol));
                }
            }
            "sgii-c" => {
                let (c, _) = quantize::quantize_sgii(kappa, &opts)?;
                let tag = format!("sgii-c kappa={}", k(kappa));
                out.push(gap_check(format!("{tag} quadrature-vs-closed"), &c, tol));
                let tk = (2.0 * kappa).round() as usize;
                let want: Vec<_> = (0..tk).map(|n| (n, n + 1, quantize::sgii_ladder_closed(kappa, n))).collect();
                out.push(Check::new(format!("{tag} sqrt((n+1)(2k-n))"), max_rel(&c.op, &want), tol));
                let (hp, _, _) = build_su2_ladder(kappa)?;
                out.push(Check::new(format!("{tag} equals su2 ladder"), c.op.max_gap(&hp)?, tol * tk as f64));
            }
            other => {
                return Err(CliError::Param(format!(
                    "unknown op '{other}' (a, modulus, disk-b, disk-modulus, sgii-c)"
                )))
            }
        }
    }
    Ok(out)
}

// ------------------------------------------------------------ normalization

pub fn normalization(kappas: &[f64], rs: &[f64], tol: f64) -> CliResult<Vec<Check>> {
    let mut worst = 0.0f64;
    for &kappa in kappas {
        for &r in rs {
            let e = states::sgi_norm(kappa, r)?;
            worst = worst.max(e.rel_gap.unwrap_or(f64::NAN));
        }
    }
    Ok(vec![Check::new(
        format!("sgi normalization 1F2 vs Bessel sum ({} points)", kappas.len() * rs.len()),
        worst,
        tol,
    )])
}

// ------------------------------------------------------------ reduction

pub fn reduction(tol: f64) -> CliResult<Vec<Check>> {
    let mut g1 = 0.0f64;
    let mut g2 = 0.0f64;
    for &(r, phi) in &[(0.3, 0.0), (1.0, 0.7), (2.5, -2.0), (6.0, 1.1)] {
        let a = Coherence::polar(r, phi)?;
        let d = states::suggest_dim(Family::Sg, r, 1.0)?;
        let msg = states::msg_coeffs(a, d)?;
        g1 = g1.max(states::sgi_coeffs(a, 1.0, d)?.max_diff(&msg)?);
        let sg = states::sg_coeffs(a, d)?;
        let scaled: Vec<C64> = sg.coeffs().iter().enumerate().map(|(n, c)| c / ((n + 1) as f64).sqrt()).collect();
        let scaled = FockVector::new(scaled)?.normalize()?;
        g2 = g2.max(scaled.max_diff(&msg)?);
    }
    Ok(vec![
        Check::new("sgi(kappa=1) = msg", g1, tol),
        Check::new("msg = normalized (n+1)^(-1/2) sg", g2, tol),
    ])
}

// ------------------------------------------------------------ displacement

pub fn displacement(tol: f64) -> CliResult<Vec<Check>> {
    // SG: e^{x(V†-V)}|0>, x = 0.8, D = 40
    let d = 40;
    let (v, vd) = build_v(d)?;
    let g = vd.sub(&v)?;
    let e = matexp_apply(&g, &FockVector::basis(d, 0)?, 0.8)?;
    let sg = states::sg_coeffs(Coherence::real(0.8)?, d)?;
    let c1 = Check::new("exp(x(Vdag-V))|0> = sg, x=0.8, D=40", e.max_diff(&sg)?, tol);
    // SU(1,1): e^{z a+ - z a-}|0> with τ = tanh z, κ = 2, D = 60
    let d = 60;
    let z = 0.6;
    let (am, ap, _) = build_su11_ladder(2.0, d)?;
    let g = ap.sub(&am)?;
    let e = matexp_apply(&g, &FockVector::basis(d, 0)?, z)?;
    let su = states::su11_coeffs(Coherence::real(z.tanh())?, 2.0, d)?;
    let c2 = Check::new("exp(z(a+ - a-))|0> = su11, tau=tanh 0.6, kappa=2, D=60", e.max_diff(&su)?, tol);
    Ok(vec![c1, c2])
}

// ------------------------------------------------------------ statistics

pub fn statistics(exec: Exec) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    let gs: Vec<stats::StatsRecord> = stats::sweep(Family::Gs, 0.0, &[0.5, 1.5, 3.0], exec)?;
    let q = gs.iter().map(|s| s.mandel_q.abs()).fold(0.0, f64::max);
    let hur = gs.iter().map(|s| (s.uncertainty_product - 0.5).abs()).fold(0.0, f64::max);
    out.push(Check::new("gs mandel Q = 0", q, 1e-10));
    out.push(Check::new("gs dx dp = 1/2", hur, 1e-10));
    let f4 = stats::stats_of(&FockVector::basis(8, 4)?)?;
    out.push(Check::new("fock |4> Q = -1", (f4.mandel_q + 1.0).abs(), 1e-12));
    let mut nb = 0.0f64;
    for l in 0..=4usize {
        let kappa = l as f64 + 0.5;
        for &r in &[0.1, 1.0, 5.0, 20.0] {
            let s = stats::family_stats(&StateFamily::new(Family::Sgii, Coherence::real(r)?, kappa)?)?;
            nb = nb.max((s.n_bar - kappa).abs());
        }
    }
    out.push(Check::new("sgii n_bar = kappa (L<=4, r in 0.1..20)", nb, 1e-8));
    let mut qg = 0.0f64;
    for &kappa in &[0.5, 1.5] {
        let s = stats::family_stats(&StateFamily::new(Family::Sgii, Coherence::real(50.0)?, kappa)?)?;
        qg = qg.max((s.mandel_q + 0.5).abs());
    }
    out.push(Check::new("sgii Q(r=50) = -1/2 (kappa 1/2, 3/2)", qg, 1e-2));
    let rs: Vec<f64> = (1..=200).map(|i| 0.05 * i as f64).collect();
    let mut bad = 0usize;
    for &kappa in &[1.0, 2.0, 5.0] {
        let recs = stats::sweep(Family::Sgi, kappa, &rs, exec)?;
        bad += recs.windows(2).filter(|w| !(w[1].n_bar > w[0].n_bar)).count();
    }
    out.push(Check::new("sgi n_bar strictly increasing (violations)", bad as f64, 0.0));
    let mut fg = 0.0f64;
    for &(kappa, r) in &[(2.0, 1.0), (3.0, 2.0), (1.5, 0.5), (5.0, 4.0)] {
        let m = stats::sgi_moments_closed(kappa, r)?;
        fg = fg.max((m.n_bar - m.n_bar_reduced).abs());
    }
    out.push(Check::new("sgi n_bar 2F3 form = reduced form", fg, 1e-9));
    Ok(out)
}

// ------------------------------------------------------------ contraction

pub fn parse_scaling(s: Option<&str>) -> CliResult<SgiiScaling> {
    match s.unwrap_or("sqrt-half") {
        "sqrt-half" => Ok(SgiiScaling::SqrtHalfL),
        "half" => Ok(SgiiScaling::HalfL),
        other => Err(CliError::Param(format!("unknown SGII scaling '{other}' (sqrt-half, half)"))),
    }
}

fn violations(v: &[f64]) -> f64 {
    v.windows(2).filter(|w| !(w[1] < w[0])).count() as f64
}

pub fn contraction(exec: Exec) -> CliResult<Vec<Check>> {
    let z = Coherence::real(1.0)?;
    let sgi = limits::sgi_report(&[10.0, 20.0, 40.0, 80.0, 160.0], z, 10, 10, exec)?;
    let sgii = limits::sgii_report(&[5, 10, 20, 40, 80], z, 4, 10, SgiiScaling::SqrtHalfL, exec)?;
    Ok(vec![
        Check::new("sgi coefficient gaps decreasing, kappa 10..160 (violations)", violations(&sgi.sup_coeff_gap), 0.0),
        Check::new("su11 scaled ladder gaps decreasing (violations)", violations(&sgi.op_gap), 0.0),
        Check::new("sgii coefficient gaps decreasing, L 5..80 (violations)", violations(&sgii.sup_coeff_gap), 0.0),
        Check::new("su2 scaled ladder gaps decreasing (violations)", violations(&sgii.op_gap), 0.0),
    ])
}
