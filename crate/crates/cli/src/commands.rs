use std::str::FromStr;

use sgcs::limits;
use sgcs::states::{Coherence, Family, StateFamily};
use sgcs::stats::{self, StatsRecord};
use sgcs::Exec;

use crate::output::{check_table, num, Check, Table};
use crate::settings::{CliError, CliResult, Settings};
use crate::suites;

fn exec_of(s: &Settings) -> Exec {
    if s.opts.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    }
}

fn family_of(s: &Settings) -> CliResult<Family> {
    let name = s.family()?.ok_or_else(|| CliError::Param("--family is required".into()))?;
    Ok(Family::from_str(&name)?)
}

/// Family and κ, with SGI at κ = 1 folded into MSG.
fn canonical(family: Family, kappa: Option<f64>) -> CliResult<(Family, f64)> {
    if family.uses_kappa() {
        let k = kappa.ok_or_else(|| CliError::Param(format!("--kappa is required for {family}")))?;
        if family == Family::Sgi && k == 1.0 {
            return Ok((Family::Msg, 1.0));
        }
        Ok((family, k))
    } else {
        Ok((family, 1.0))
    }
}

fn echo_family(t: &mut Table, family: Family, kappa: f64) {
    t.echo("family", family);
    if family.uses_kappa() {
        t.echo("kappa", num(kappa));
    }
}

/// Writes the check table and returns 0 when every check passes, else 1.
fn report(s: &Settings, echo: &[(&str, String)], checks: &[Check]) -> CliResult<i32> {
    let mut t = check_table(checks);
    for (k, v) in echo {
        t.echo(k, v);
    }
    for c in checks {
        eprintln!("{} {} {}", if c.pass() { "PASS" } else { "FAIL" }, c.name, num(c.value));
    }
    t.emit(s.out()?.as_deref())?;
    Ok(if checks.iter().all(Check::pass) { 0 } else { 1 })
}

pub fn coeffs(s: &Settings) -> CliResult<i32> {
    let (family, kappa) = canonical(family_of(s)?, s.kappa()?)?;
    let a = Coherence::polar(s.alpha_r()?, s.alpha_phi()?)?;
    let mut sf = StateFamily::new(family, a, kappa)?;
    if let Some(d) = s.dim()? {
        sf = sf.with_dim(d)?;
    }
    let v = sf.build()?;
    let mut t = Table::new(vec!["n", "re", "im", "abs2"]);
    t.echo("command", "coeffs");
    echo_family(&mut t, family, kappa);
    t.echo("alpha_r", num(a.r()));
    t.echo("alpha_phi", num(a.phi()));
    t.echo("dim", sf.dim);
    for (n, c) in v.coeffs().iter().enumerate() {
        t.row(vec![n.to_string(), num(c.re), num(c.im), num(c.norm_sqr())]);
    }
    t.row(vec!["norm".into(), String::new(), String::new(), num(v.norm_sqr())]);
    t.emit(s.out()?.as_deref())?;
    Ok(0)
}

fn stats_row(kappa: f64, target: Option<f64>, r: &StatsRecord) -> Vec<String> {
    let mut row = vec![num(kappa)];
    if let Some(x) = target {
        row.push(num(x));
    }
    row.extend([r.r, r.n_bar, r.n2, r.mandel_q, r.var_x, r.var_p, r.uncertainty_product].map(num));
    row
}

pub fn stats_sweep(s: &Settings) -> CliResult<i32> {
    let family = family_of(s)?;
    let by_nbar = s.by_nbar()?;
    let kappas = if family.uses_kappa() {
        s.kappa_list(&[])?
    } else {
        vec![1.0]
    };
    if kappas.is_empty() {
        return Err(CliError::Param(format!("--kappa or --kappa-list is required for {family}")));
    }
    let grid = s.grid(if family == Family::Su11 && !by_nbar { "0:0.95:96" } else { "0:5:101" })?;
    let exec = exec_of(s);
    let mut header = vec!["kappa"];
    if by_nbar {
        header.push("nbar_target");
    }
    header.extend(["r", "n_bar", "n2", "mandel_q", "var_x", "var_p", "product"]);
    let mut t = Table::new(header);
    t.echo("command", "stats-sweep");
    t.echo("family", family);
    if family.uses_kappa() {
        t.echo("kappa_list", kappas.iter().map(|k| num(*k)).collect::<Vec<_>>().join(";"));
    }
    t.echo("grid", format!("{}:{}:{}", num(grid[0]), num(grid[grid.len() - 1]), grid.len()));
    t.echo("by_nbar", by_nbar);
    for &kappa in &kappas {
        let (fam, k) = canonical(family, Some(kappa))?;
        let recs = if by_nbar {
            stats::sweep_by_nbar(fam, k, &grid, exec)?
        } else {
            stats::sweep(fam, k, &grid, exec)?
        };
        for (x, r) in grid.iter().zip(&recs) {
            t.row(stats_row(kappa, by_nbar.then_some(*x), r));
        }
    }
    t.emit(s.out()?.as_deref())?;
    Ok(0)
}

pub fn verify_identity(s: &Settings) -> CliResult<i32> {
    let family = family_of(s)?;
    let kappas = if family.uses_kappa() { s.kappa_list(&[])? } else { vec![1.0] };
    if kappas.is_empty() {
        return Err(CliError::Param(format!("--kappa or --kappa-list is required for {family}")));
    }
    let n_max = s.n_max()?.unwrap_or(10);
    let tol = s.tol(1e-6)?;
    let checks = suites::identity(family, &kappas, n_max, tol, exec_of(s))?;
    let echo = [("command", "verify-identity".into()), ("family", family.to_string()), ("n_max", n_max.to_string())];
    report(s, &echo, &checks)
}

pub fn verify_algebra(s: &Settings) -> CliResult<i32> {
    let alg = s.algebra()?.ok_or_else(|| CliError::Param("--algebra is required".into()))?;
    let default: &[f64] = match alg.as_str() {
        "su11" => &[1.0, 2.0, 5.0],
        "su2" => &[0.5, 2.0, 3.5],
        _ => &[1.0],
    };
    let kappas = s.kappa_list(default)?;
    let dim = s.dim()?.unwrap_or(40);
    let tol = s.tol(1e-12)?;
    let checks = suites::algebra(&alg, &kappas, dim, tol)?;
    report(s, &[("command", "verify-algebra".into()), ("algebra", alg)], &checks)
}

pub fn verify_quantization(s: &Settings) -> CliResult<i32> {
    let op = s.op()?.ok_or_else(|| CliError::Param("--op is required".into()))?;
    let kappas = s.kappa_list(&[])?;
    if kappas.is_empty() {
        return Err(CliError::Param("--kappa or --kappa-list is required".into()));
    }
    let gamma = s.gamma()?.unwrap_or(if op == "modulus" { 1.0 } else { 0.0 });
    let dim = s.dim()?.unwrap_or(9);
    let tol = s.tol(1e-6)?;
    let checks = suites::quantization(&op, &kappas, gamma, dim, tol, exec_of(s))?;
    report(s, &[("command", "verify-quantization".into()), ("op", op)], &checks)
}

pub fn contract(s: &Settings) -> CliResult<i32> {
    let family = family_of(s)?;
    let z = Coherence::polar(s.alpha_r_or(1.0)?, s.alpha_phi()?)?;
    let exec = exec_of(s);
    let d = s.dim()?.unwrap_or(10);
    let mut t;
    let (coeff, op);
    match family {
        Family::Sgi => {
            let grid = s.kappa_list(&[10.0, 20.0, 40.0, 80.0, 160.0])?;
            let n_max = s.n_max()?.unwrap_or(10);
            let rep = limits::sgi_report(&grid, z, n_max, d, exec)?;
            t = Table::new(vec!["kappa", "coeff_gap", "op_gap"]);
            t.echo("command", "contract");
            t.echo("family", family);
            t.echo("z_abs", num(z.r()));
            t.echo("n_max", n_max);
            t.echo("dim", d);
            for i in 0..grid.len() {
                t.row(vec![num(grid[i]), num(rep.sup_coeff_gap[i]), num(rep.op_gap[i])]);
            }
            coeff = rep.coeff_decreasing();
            op = rep.op_decreasing();
        }
        Family::Sgii => {
            let grid = s.kappa_list(&[5.5, 10.5, 20.5, 40.5, 80.5])?;
            let ls = grid
                .iter()
                .map(|&k| sgcs::states::sgii_order(k))
                .collect::<sgcs::Result<Vec<_>>>()?;
            let n_max = s.n_max()?.unwrap_or(4);
            let scaling = suites::parse_scaling(s.sgii_scaling()?.as_deref())?;
            let rep = limits::sgii_report(&ls, z, n_max, d, scaling, exec)?;
            t = Table::new(vec!["kappa", "coeff_gap", "raw_gap", "op_gap"]);
            t.echo("command", "contract");
            t.echo("family", family);
            t.echo("z_abs", num(z.r()));
            t.echo("n_max", n_max);
            t.echo("dim", d);
            t.echo("sgii_scaling", if scaling == limits::SgiiScaling::HalfL { "half" } else { "sqrt-half" });
            for (i, &l) in ls.iter().enumerate() {
                let raw = limits::sgii_contraction_gap(l, z, n_max, scaling)?.1;
                t.row(vec![num(grid[i]), num(rep.sup_coeff_gap[i]), num(raw), num(rep.op_gap[i])]);
            }
            coeff = rep.coeff_decreasing();
            op = rep.op_decreasing();
        }
        f => return Err(CliError::Param(format!("contraction is defined for sgi and sgii, not {f}"))),
    }
    t.emit(s.out()?.as_deref())?;
    eprintln!("coefficient gaps decreasing: {coeff}");
    eprintln!("operator gaps decreasing: {op}");
    Ok(if coeff && op { 0 } else { 1 })
}

pub const SUITES: [&str; 8] =
    ["normalization", "identity", "quantization", "algebra", "displacement", "stats", "contraction", "reduction"];

fn suite_checks(name: &str, exec: Exec) -> CliResult<Vec<Check>> {
    match name {
        "normalization" => suites::normalization(&[0.75, 1.0, 1.5, 2.0, 5.0], &[0.1, 0.5, 1.0, 2.0, 5.0], 1e-9),
        "identity" => {
            let mut c = suites::identity(Family::Msg, &[1.0], 10, 1e-6, exec)?;
            c.extend(suites::identity(Family::Sgi, &[1.5, 2.0, 4.0], 10, 1e-6, exec)?);
            c.extend(suites::identity(Family::Sgii, &[0.5, 1.5, 2.5], 10, 1e-6, exec)?);
            c.extend(suites::identity(Family::Su11, &[1.5, 2.0], 10, 1e-6, exec)?);
            Ok(c)
        }
        "quantization" => {
            let mut c = suites::quantization("a", &[1.5, 2.0, 3.0], 0.0, 10, 1e-6, exec)?;
            for &(k, g) in &[(2.0, -1.0), (3.0, 2.0), (2.5, 0.5)] {
                c.extend(suites::quantization("modulus", &[k], g, 9, 1e-6, exec)?);
            }
            c.extend(suites::quantization("disk-b", &[1.5, 2.0, 3.5], 0.0, 10, 1e-6, exec)?);
            c.extend(suites::quantization("sgii-c", &[1.5, 2.5, 4.5], 0.0, 9, 1e-6, exec)?);
            Ok(c)
        }
        "algebra" => {
            let mut c = suites::algebra("su11", &[1.0, 2.0, 5.0], 40, 1e-12)?;
            c.extend(suites::algebra("su2", &[0.5, 2.0, 3.5], 40, 1e-12)?);
            c.extend(suites::algebra("v", &[1.0], 40, 0.0)?);
            Ok(c)
        }
        "displacement" => suites::displacement(1e-8),
        "stats" => suites::statistics(exec),
        "contraction" => suites::contraction(exec),
        "reduction" => suites::reduction(1e-10),
        other => Err(CliError::Param(format!("unknown suite '{other}' (all, {})", SUITES.join(", ")))),
    }
}

pub fn verify(s: &Settings) -> CliResult<i32> {
    let name = s.suite()?.unwrap_or_else(|| "all".to_string());
    let exec = exec_of(s);
    let mut checks = Vec::new();
    if name == "all" {
        for n in SUITES {
            checks.extend(suite_checks(n, exec)?);
        }
    } else {
        checks = suite_checks(&name, exec)?;
    }
    report(s, &[("command", "verify".into()), ("suite", name)], &checks)
}
