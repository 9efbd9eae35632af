//! Flag / config-file merging. Flags win over the file, the file over defaults.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::Args;

/// Failure categories mapped to exit codes.
#[derive(Debug)]
pub enum CliError {
    /// usage or parameter problem, exit 2
    Param(String),
    /// numerical failure, exit 3
    Numeric(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Param(m) | CliError::Numeric(m) => f.write_str(m),
        }
    }
}

impl From<sgcs::Error> for CliError {
    fn from(e: sgcs::Error) -> Self {
        if e.is_parameter_error() {
            CliError::Param(e.to_string())
        } else {
            CliError::Numeric(e.to_string())
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Args, Debug, Clone, Default)]
pub struct Opts {
    /// state family: sg, msg, sgi, sgii, su11, su2, gs
    #[arg(long, global = true)]
    pub family: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub kappa: Option<f64>,
    /// comma-separated κ values
    #[arg(long, global = true)]
    pub kappa_list: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha_r: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha_phi: Option<f64>,
    /// min:max:steps
    #[arg(long, global = true)]
    pub grid: Option<String>,
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    #[arg(long, global = true)]
    pub n_max: Option<usize>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true)]
    pub suite: Option<String>,
    /// key=value file; flags override its entries
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// quantized function: a, modulus, disk-b, disk-modulus, sgii-c
    #[arg(long, global = true)]
    pub op: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// su11, su2, v or boson
    #[arg(long, global = true)]
    pub algebra: Option<String>,
    /// sweep over target n̄ instead of |α|
    #[arg(long, global = true)]
    pub by_nbar: bool,
    /// SGII contraction argument: sqrt-half (√(L/2)|z|) or half (L/2·|z|)
    #[arg(long, global = true)]
    pub sgii_scaling: Option<String>,
    /// evaluate grid points one at a time
    #[arg(long, global = true)]
    pub sequential: bool,
}

const KEYS: [&str; 16] = [
    "family", "kappa", "kappa-list", "alpha-r", "alpha-phi", "grid", "dim", "n-max", "out", "tol", "suite",
    "op", "gamma", "algebra", "by-nbar", "sgii-scaling",
];

/// Resolved settings: flag value, then config entry.
pub struct Settings {
    pub opts: Opts,
    file: BTreeMap<String, String>,
}

fn parse_config(path: &Path) -> CliResult<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Param(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Param(format!("config line {}: expected key=value", i + 1)))?;
        let k = k.trim().replace('_', "-");
        if !KEYS.contains(&k.as_str()) {
            return Err(CliError::Param(format!("config line {}: unknown key '{k}'", i + 1)));
        }
        map.insert(k, v.trim().to_string());
    }
    Ok(map)
}

impl Settings {
    pub fn new(opts: Opts) -> CliResult<Self> {
        let file = match &opts.config {
            Some(p) => parse_config(p)?,
            None => BTreeMap::new(),
        };
        Ok(Settings { opts, file })
    }

    fn file_value<T: FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        match self.file.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| CliError::Param(format!("config: invalid value '{v}' for {key}"))),
        }
    }

    fn pick<T: FromStr + Clone>(&self, flag: &Option<T>, key: &str) -> CliResult<Option<T>> {
        match flag {
            Some(v) => Ok(Some(v.clone())),
            None => self.file_value(key),
        }
    }

    pub fn family(&self) -> CliResult<Option<String>> {
        self.pick(&self.opts.family, "family")
    }
    pub fn kappa(&self) -> CliResult<Option<f64>> {
        self.pick(&self.opts.kappa, "kappa")
    }
    pub fn alpha_r(&self) -> CliResult<f64> {
        self.alpha_r_or(0.0)
    }
    pub fn alpha_r_or(&self, default: f64) -> CliResult<f64> {
        Ok(self.pick(&self.opts.alpha_r, "alpha-r")?.unwrap_or(default))
    }
    pub fn alpha_phi(&self) -> CliResult<f64> {
        Ok(self.pick(&self.opts.alpha_phi, "alpha-phi")?.unwrap_or(0.0))
    }
    pub fn dim(&self) -> CliResult<Option<usize>> {
        self.pick(&self.opts.dim, "dim")
    }
    pub fn n_max(&self) -> CliResult<Option<usize>> {
        self.pick(&self.opts.n_max, "n-max")
    }
    pub fn out(&self) -> CliResult<Option<PathBuf>> {
        self.pick(&self.opts.out, "out")
    }
    pub fn tol(&self, default: f64) -> CliResult<f64> {
        let t = self.pick(&self.opts.tol, "tol")?.unwrap_or(default);
        if !(t > 0.0) || !t.is_finite() {
            return Err(CliError::Param(format!("--tol must be positive, got {t}")));
        }
        Ok(t)
    }
    pub fn suite(&self) -> CliResult<Option<String>> {
        self.pick(&self.opts.suite, "suite")
    }
    pub fn op(&self) -> CliResult<Option<String>> {
        self.pick(&self.opts.op, "op")
    }
    pub fn gamma(&self) -> CliResult<Option<f64>> {
        self.pick(&self.opts.gamma, "gamma")
    }
    pub fn algebra(&self) -> CliResult<Option<String>> {
        self.pick(&self.opts.algebra, "algebra")
    }
    pub fn sgii_scaling(&self) -> CliResult<Option<String>> {
        self.pick(&self.opts.sgii_scaling, "sgii-scaling")
    }
    pub fn by_nbar(&self) -> CliResult<bool> {
        Ok(self.opts.by_nbar || self.file_value::<bool>("by-nbar")?.unwrap_or(false))
    }

    /// κ values from --kappa-list, else --kappa, else `default`.
    pub fn kappa_list(&self, default: &[f64]) -> CliResult<Vec<f64>> {
        if let Some(s) = self.pick(&self.opts.kappa_list, "kappa-list")? {
            return parse_list(&s);
        }
        if let Some(k) = self.kappa()? {
            return Ok(vec![k]);
        }
        Ok(default.to_vec())
    }

    pub fn grid(&self, default: &str) -> CliResult<Vec<f64>> {
        let s = self.pick(&self.opts.grid, "grid")?.unwrap_or_else(|| default.to_string());
        parse_grid(&s)
    }
}

pub fn parse_list(s: &str) -> CliResult<Vec<f64>> {
    let v: Result<Vec<f64>, _> = s.split(',').map(|t| t.trim().parse::<f64>()).collect();
    match v {
        Ok(v) if !v.is_empty() => Ok(v),
        _ => Err(CliError::Param(format!("invalid number list '{s}'"))),
    }
}

/// "min:max:steps" with steps >= 2, inclusive endpoints.
pub fn parse_grid(s: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || CliError::Param(format!("invalid grid '{s}', expected min:max:steps"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let steps: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if steps < 2 || !(lo >= 0.0) || !(hi > lo) || !hi.is_finite() {
        return Err(CliError::Param(format!("grid '{s}' needs 0 <= min < max and steps >= 2")));
    }
    let h = (hi - lo) / (steps - 1) as f64;
    Ok((0..steps).map(|i| if i + 1 == steps { hi } else { lo + h * i as f64 }).collect())
}
