//! Run configuration: CLI flags over a `key = value` file over defaults.

use crate::error::{CliError, CliResult};
use clap::Args;
use serde::Serialize;
use slepian_core::kernels::SpectralBand;
use slepian_core::regions::{AngularMask, Region};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// Flags shared by every subcommand. Unset flags fall back to the config file, then defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Plain-text `key = value` configuration file
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Spectral domain: fl (Fourier-Laguerre) or fb (Fourier-Bessel)
    #[arg(long)]
    pub domain: Option<String>,
    /// Radial band-limit P (fl)
    #[arg(long = "P")]
    pub p: Option<usize>,
    /// Angular band-limit L
    #[arg(long = "L")]
    pub l: Option<usize>,
    /// Radial wavenumber band-limit K (fb)
    #[arg(long = "K")]
    pub k: Option<f64>,
    /// Number of wavenumber samples M (fb)
    #[arg(long = "M")]
    pub m: Option<usize>,
    /// product:R1,R2,theta1,theta2 | mask:<path>,R1,R2 | fullball
    #[arg(long)]
    pub region: Option<String>,
    /// Output directory
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Azimuthal order m
    #[arg(long)]
    pub order: Option<i64>,
    /// Number of eigenfunctions to write
    #[arg(long)]
    pub count: Option<usize>,
    /// Eigenfunction (r, theta) grid resolution nr,ntheta
    #[arg(long)]
    pub grid: Option<String>,
    /// Outer radius of eigenfunction grids
    #[arg(long)]
    pub rmax: Option<f64>,
    /// Truncation J for the quality measure
    #[arg(long = "J")]
    pub j: Option<usize>,
    /// Coefficient or sample file (SLEPB001)
    #[arg(long)]
    pub signal: Option<PathBuf>,
    /// Seed of the synthetic signal
    #[arg(long)]
    pub seed: Option<u64>,
    /// Eigenvalue threshold of the synthetic signal's span
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Out-of-span energy fraction of the synthetic signal
    #[arg(long = "out-fraction")]
    pub out_fraction: Option<f64>,
}

const KEYS: [&str; 17] = [
    "domain",
    "P",
    "L",
    "K",
    "M",
    "region",
    "out",
    "order",
    "count",
    "grid",
    "rmax",
    "J",
    "signal",
    "seed",
    "threshold",
    "out_fraction",
    "config",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Fl,
    Fb,
}

/// Fully resolved and validated settings; serialized verbatim into meta.json.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub domain: Domain,
    #[serde(rename = "P")]
    pub p: usize,
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "M")]
    pub m: usize,
    pub region: String,
    pub out: PathBuf,
    pub order: Option<i64>,
    pub count: usize,
    pub grid: Option<(usize, usize)>,
    pub rmax: Option<f64>,
    #[serde(rename = "J")]
    pub j: Option<usize>,
    pub signal: Option<PathBuf>,
    pub seed: u64,
    pub threshold: f64,
    pub out_fraction: f64,
    #[serde(skip)]
    pub band: SpectralBand,
    #[serde(skip)]
    pub region_value: Region,
}

fn bad(field: &str, msg: impl Into<String>) -> CliError {
    CliError::Config { field: field.into(), msg: msg.into() }
}

/// Parse a `key = value` file; `#` starts a comment.
pub fn parse_config_file(text: &str) -> CliResult<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(bad("config", format!("line {}: expected key = value", i + 1)));
        };
        let k = k.trim();
        if !KEYS.contains(&k) || k == "config" {
            return Err(bad("config", format!("line {}: unknown key '{k}'", i + 1)));
        }
        out.insert(k.to_string(), v.trim().to_string());
    }
    Ok(out)
}

struct Layer<'a> {
    file: &'a BTreeMap<String, String>,
}

impl Layer<'_> {
    fn get<T: std::str::FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<Option<T>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.file.get(key) {
            Some(v) => v.parse().map(Some).map_err(|_| bad(key, format!("cannot parse '{v}'"))),
            None => Ok(None),
        }
    }
}

fn parse_list(field: &str, s: &str, n: usize) -> CliResult<Vec<f64>> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| bad(field, format!("'{x}' is not a number"))))
        .collect::<CliResult<_>>()?;
    if v.len() != n {
        return Err(bad(field, format!("expected {n} comma-separated numbers, got {}", v.len())));
    }
    Ok(v)
}

/// `product:R1,R2,theta1,theta2` | `mask:<path>,R1,R2` | `fullball` (angles in radians).
pub fn parse_region(s: &str, base: &Path) -> CliResult<Region> {
    let check_radii = |r1: f64, r2: f64| -> CliResult<()> {
        if !(r1 >= 0.0) || !(r2 > r1) {
            return Err(bad("region", format!("need 0 <= R1 < R2, got R1={r1}, R2={r2}")));
        }
        Ok(())
    };
    if s == "fullball" {
        return Ok(Region::full_ball());
    }
    if let Some(rest) = s.strip_prefix("product:") {
        let v = parse_list("region", rest, 4)?;
        check_radii(v[0], v[1])?;
        if !(v[2] >= 0.0 && v[2] < v[3] && v[3] <= std::f64::consts::PI) {
            return Err(bad("region", format!("need 0 <= theta1 < theta2 <= pi, got theta1={}, theta2={}", v[2], v[3])));
        }
        return Region::product(v[0], v[1], v[2], v[3]).map_err(|e| bad("region", e.to_string()));
    }
    if let Some(rest) = s.strip_prefix("mask:") {
        let Some((path, radii)) = rest.split_once(',') else {
            return Err(bad("region", "mask needs mask:<path>,R1,R2"));
        };
        let v = parse_list("region", radii, 2)?;
        check_radii(v[0], v[1])?;
        let path = base.join(path);
        let text = std::fs::read_to_string(&path).map_err(|e| bad("region", format!("cannot read mask {}: {e}", path.display())))?;
        let mask = AngularMask::from_pixel_text(&text).map_err(|e| bad("region", e.to_string()))?;
        return Region::mask(mask, v[0], v[1]).map_err(|e| bad("region", e.to_string()));
    }
    Err(bad("region", format!("'{s}' is not product:R1,R2,theta1,theta2, mask:<path>,R1,R2 or fullball")))
}

impl RunConfig {
    pub fn resolve(flags: &Flags) -> CliResult<Self> {
        let file = match &flags.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| bad("config", format!("cannot read {}: {e}", path.display())))?;
                parse_config_file(&text)?
            }
            None => BTreeMap::new(),
        };
        let layer = Layer { file: &file };
        let domain = match layer.get(flags.domain.clone(), "domain")?.as_deref().unwrap_or("fl") {
            "fl" => Domain::Fl,
            "fb" => Domain::Fb,
            other => return Err(bad("domain", format!("'{other}' is not fl or fb"))),
        };
        let p = layer.get(flags.p, "P")?.unwrap_or(30);
        let l = layer.get(flags.l, "L")?.unwrap_or(20);
        let k = layer.get(flags.k, "K")?.unwrap_or(1.4);
        let m = layer.get(flags.m, "M")?.unwrap_or(70);
        let band = match domain {
            Domain::Fl => SpectralBand::fourier_laguerre(p, l),
            Domain::Fb => SpectralBand::fourier_bessel(k, l, m),
        }
        .map_err(|e| bad(if domain == Domain::Fl { "P/L" } else { "K/L/M" }, e.to_string()))?;
        let region =
            layer.get(flags.region.clone(), "region")?.unwrap_or_else(|| "product:15,25,0.39269908169872414,1.1780972450961724".into());
        // Mask paths in a config file are relative to that file.
        let base = match (&flags.region, &flags.config) {
            (None, Some(cfg)) if file.contains_key("region") => cfg.parent().map(Path::to_path_buf).unwrap_or_default(),
            _ => PathBuf::new(),
        };
        let region_value = parse_region(&region, &base)?;
        let order = layer.get(flags.order, "order")?;
        if let Some(o) = order {
            if o.unsigned_abs() as usize >= l {
                return Err(bad("order", format!("|m| = {} must be < L = {l}", o.abs())));
            }
        }
        let grid = match layer.get(flags.grid.clone(), "grid")? {
            Some(g) => {
                let v = parse_list("grid", &g, 2)?;
                if v.iter().any(|x| *x < 2.0 || x.fract() != 0.0) {
                    return Err(bad("grid", "nr and ntheta must be integers >= 2"));
                }
                Some((v[0] as usize, v[1] as usize))
            }
            None => None,
        };
        let rmax = layer.get(flags.rmax, "rmax")?;
        if rmax.is_some_and(|r| !(r > 0.0 && r.is_finite())) {
            return Err(bad("rmax", "must be positive and finite"));
        }
        let threshold = layer.get(flags.threshold, "threshold")?.unwrap_or(0.5);
        if !(0.0..1.0).contains(&threshold) {
            return Err(bad("threshold", "must lie in [0, 1)"));
        }
        let out_fraction = layer.get(flags.out_fraction, "out_fraction")?.unwrap_or(0.01);
        if !(out_fraction >= 0.0 && out_fraction.is_finite()) {
            return Err(bad("out_fraction", "must be >= 0"));
        }
        Ok(Self {
            domain,
            p,
            l,
            k,
            m,
            region,
            out: layer.get(flags.out.as_ref().map(|p| p.display().to_string()), "out")?.map(PathBuf::from).unwrap_or_else(|| "out".into()),
            order,
            count: layer.get(flags.count, "count")?.unwrap_or(20),
            grid,
            rmax,
            j: layer.get(flags.j, "J")?,
            signal: layer.get(flags.signal.as_ref().map(|p| p.display().to_string()), "signal")?.map(PathBuf::from),
            seed: layer.get(flags.seed, "seed")?.unwrap_or(1),
            threshold,
            out_fraction,
            band,
            region_value,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file_override_defaults() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("run.cfg");
        std::fs::write(&cfg, "# paper setup\nP = 12\nL = 6 # angular\ndomain = fl\n").unwrap();
        let flags = Flags { config: Some(cfg), l: Some(9), ..Default::default() };
        let rc = RunConfig::resolve(&flags).unwrap();
        assert_eq!((rc.p, rc.l, rc.m, rc.count), (12, 9, 70, 20));
        assert_eq!(rc.band, SpectralBand::FourierLaguerre { p: 12, l: 9 });
    }

    #[test]
    fn validation_names_the_field() {
        let flags = Flags { region: Some("product:25,15,0.1,0.2".into()), ..Default::default() };
        let err = RunConfig::resolve(&flags).unwrap_err();
        assert!(err.to_string().contains("region"), "{err}");
        let flags = Flags { domain: Some("xx".into()), ..Default::default() };
        assert!(RunConfig::resolve(&flags).unwrap_err().to_string().contains("domain"));
        assert!(parse_config_file("Q = 3").is_err());
        assert!(parse_config_file("P 3").is_err());
        let flags = Flags { order: Some(20), ..Default::default() };
        assert!(RunConfig::resolve(&flags).unwrap_err().to_string().contains("order"));
    }

    #[test]
    fn region_grammar() {
        assert!(parse_region("fullball", Path::new("")).unwrap().is_full_ball());
        let r = parse_region("product:1,2,0,3.141592653589793", Path::new("")).unwrap();
        assert!((r.volume() - 4.0 * std::f64::consts::PI / 3.0 * 7.0).abs() < 1e-9);
        assert!(parse_region("product:1,2,0", Path::new("")).is_err());
        assert!(parse_region("mask:/nonexistent,1,2", Path::new("")).is_err());
        assert!(parse_region("sphere", Path::new("")).is_err());
    }
}
