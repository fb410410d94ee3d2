//! Subcommands: thin wrappers over slepian-core that write files into the output directory.

use crate::config::{Domain, RunConfig};
use crate::error::{CliError, CliResult};
use crate::io::{read_matrix, write_csv, write_json, write_matrix, Cell, Matrix};
use serde_json::{json, Value};
use slepian_core::eigen::{shannon_fb, shannon_fl, solve_fb, solve_fl, EigenResult, HarmonicCoeffs};
use slepian_core::kernels::{kernel_fl_fixed_order, kernel_fl_mask, FbOperator, FlOperator, KernelMatrix, SpectralBand};
use slepian_core::regions::{BallPoint, Region, RegionShape};
use slepian_core::transforms::{analysis_fl, quality_measure, slepian_coeffs, synthesis, synthetic_concentrated_signal, SpatialGrid};
use std::path::PathBuf;

/// Files written by a command, for the summary printed on stdout.
pub type Written = Vec<PathBuf>;

fn meta(cfg: &RunConfig, command: &str, results: Value) -> Value {
    json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "config": cfg,
        "results": results,
    })
}

fn is_product_band(region: &Region) -> bool {
    matches!(region.shape(), RegionShape::Product(pr) if pr.band().is_some())
}

fn multiplicity(m: usize) -> f64 {
    if m == 0 {
        1.0
    } else {
        2.0
    }
}

fn kernel_block_matrix(k: &KernelMatrix) -> Matrix {
    Matrix::from_dmatrix_complex(&k.to_complex())
}

/// Radial trace N^P and angular trace N_L of a separable Fourier-Laguerre kernel.
fn fl_factor_traces(cfg: &RunConfig) -> CliResult<Option<(f64, f64)>> {
    let region = &cfg.region_value;
    if is_product_band(region) {
        let op = FlOperator::new(&cfg.band, region)?;
        let te = op.e().map(|e| e.trace()).unwrap_or(0.0);
        let mut nl = 0.0;
        for m in 0..cfg.l {
            if let Some(g) = op.g(m as i64)? {
                nl += multiplicity(m) * g.trace();
            }
        }
        return Ok(Some((te, nl)));
    }
    if matches!(region.shape(), RegionShape::Product(_)) {
        let mk = kernel_fl_mask(&cfg.band, region)?;
        return Ok(Some((mk.e().trace(), mk.g().trace().re)));
    }
    Ok(None)
}

pub fn kernel(cfg: &RunConfig) -> CliResult<Written> {
    let out = &cfg.out;
    let region = &cfg.region_value;
    let mut written = Vec::new();
    let mut put = |name: String, m: Matrix| -> CliResult<()> {
        let path = out.join(name);
        write_matrix(&path, &m)?;
        written.push(path);
        Ok(())
    };
    let results = match cfg.domain {
        Domain::Fl => {
            if is_product_band(region) {
                let op = FlOperator::new(&cfg.band, region)?;
                if let Some(e) = op.e() {
                    put("E.mat".into(), Matrix::from_dmatrix(e))?;
                }
                for m in 0..cfg.l {
                    if let Some(g) = op.g(m as i64)? {
                        put(format!("G_m{m}.mat"), Matrix::from_dmatrix(&g))?;
                    }
                }
            } else {
                let mk = kernel_fl_mask(&cfg.band, region)?;
                put("E.mat".into(), Matrix::from_dmatrix(mk.e()))?;
                put("G_mask.mat".into(), Matrix::from_dmatrix_complex(mk.g()))?;
            }
            if let Some(m) = cfg.order {
                if !is_product_band(region) {
                    return Err(CliError::Config { field: "order".into(), msg: "fixed-order kernels need an axisymmetric region".into() });
                }
                put(format!("K_m{m}.mat"), kernel_block_matrix(&kernel_fl_fixed_order(m, &cfg.band, region)?))?;
            }
            let (te, nl) = fl_factor_traces(cfg)?.expect("product regions separate");
            json!({
                "trace_E": te,
                "trace_G": nl,
                "trace": te * nl,
                "shannon": shannon_fl(region, &cfg.band)?,
            })
        }
        Domain::Fb => {
            let op = FbOperator::new(&cfg.band, region)?;
            let orders: Vec<usize> = match cfg.order {
                Some(m) => vec![m.unsigned_abs() as usize],
                None => (0..cfg.l).collect(),
            };
            let mut trace = 0.0;
            for m in orders {
                let b = op.block(m as i64)?;
                trace += multiplicity(m) * b.trace();
                put(format!("B_m{m}.mat"), Matrix::from_dmatrix(&b))?;
            }
            json!({
                "trace": if cfg.order.is_none() { Some(trace) } else { None },
                "wavenumbers": op.wavenumbers(),
                "shannon": shannon_fb(region, &cfg.band)?,
            })
        }
    };
    let path = out.join("meta.json");
    write_json(&path, &meta(cfg, "kernel", results))?;
    written.push(path);
    Ok(written)
}

pub fn solve(cfg: &RunConfig) -> CliResult<EigenResult> {
    Ok(match cfg.domain {
        Domain::Fl => solve_fl(&cfg.region_value, &cfg.band)?,
        Domain::Fb => solve_fb(&cfg.region_value, &cfg.band)?,
    })
}

pub fn eigenvalue_rows(basis: &EigenResult) -> Vec<Vec<Cell>> {
    basis
        .eigenvalues()
        .iter()
        .zip(basis.meta())
        .enumerate()
        .map(|(i, (&lambda, meta))| {
            vec![Cell::from(i + 1), lambda.into(), meta.order.into(), meta.lambda_radial.into(), meta.lambda_angular.into()]
        })
        .collect()
}

pub const EIGENVALUE_HEADER: [&str; 5] = ["rank", "lambda", "m", "lambda_radial", "lambda_angular"];

fn outer_radius(cfg: &RunConfig) -> f64 {
    if let Some(r) = cfg.rmax {
        return r;
    }
    let r2 = match cfg.region_value.shape() {
        RegionShape::Product(pr) => pr.r2,
        _ => f64::INFINITY,
    };
    if r2.is_finite() {
        1.25 * r2
    } else {
        4.0 * cfg.p as f64
    }
}

pub fn eigen(cfg: &RunConfig) -> CliResult<Written> {
    let out = &cfg.out;
    let basis = solve(cfg)?;
    let mut written = Vec::new();

    let path = out.join("eigenvalues.csv");
    write_csv(&path, &EIGENVALUE_HEADER, eigenvalue_rows(&basis))?;
    written.push(path);

    let dim = cfg.band.dim();
    let n = cfg.count.min(basis.len());
    let mut vecs = Vec::with_capacity(n * dim);
    for alpha in 0..n {
        vecs.extend(basis.eigenvector(alpha)?.into_values());
    }
    let path = out.join("eigenvectors.mat");
    write_matrix(&path, &Matrix::complex(n, dim, vecs))?;
    written.push(path);

    let (raw_min, raw_max) = basis.raw_range();
    let shannon = json!({
        "shannon": basis.shannon(),
        "eigenvalue_sum": basis.sum(),
        "count_at_least_half": basis.count_at_least(0.5),
        "dim": dim,
        "raw_min": raw_min,
        "raw_max": raw_max,
    });
    let path = out.join("shannon.json");
    write_json(&path, &shannon)?;
    written.push(path);

    if let Some((nr, nt)) = cfg.grid {
        let rmax = outer_radius(cfg);
        let pts: Vec<BallPoint> = (0..nr)
            .flat_map(|i| {
                let r = rmax * i as f64 / (nr - 1) as f64;
                (0..nt).map(move |j| BallPoint { r, theta: std::f64::consts::PI * j as f64 / (nt - 1) as f64, phi: 0.0 })
            })
            .collect();
        let picks: Vec<usize> =
            (0..basis.len()).filter(|&a| cfg.order.is_none() || basis.meta()[a].order == cfg.order).take(cfg.count).collect();
        for alpha in picks {
            let vals = synthesis(&basis.eigenvector(alpha)?, &pts)?;
            let name = match cfg.order {
                Some(m) => format!("eigenfunctions/m{m}_rank{}.csv", alpha + 1),
                None => format!("eigenfunctions/rank{}.csv", alpha + 1),
            };
            let path = out.join(name);
            write_csv(
                &path,
                &["r", "theta", "re", "im"],
                pts.iter().zip(&vals).map(|(p, v)| vec![p.r.into(), p.theta.into(), v.re.into(), v.im.into()]),
            )?;
            written.push(path);
        }
    }

    let path = out.join("meta.json");
    write_json(&path, &meta(cfg, "eigen", json!({ "eigenvectors_written": n, "shannon": shannon })))?;
    written.push(path);
    Ok(written)
}

pub fn shannon(cfg: &RunConfig) -> CliResult<(Value, Written)> {
    let region = &cfg.region_value;
    let value = match cfg.domain {
        Domain::Fl => {
            let n = shannon_fl(region, &cfg.band)?;
            match fl_factor_traces(cfg)? {
                Some((te, nl)) => json!({ "shannon": n, "radial": te, "angular": nl }),
                None => json!({ "shannon": n }),
            }
        }
        Domain::Fb => json!({ "shannon": shannon_fb(region, &cfg.band)? }),
    };
    let mut written = Vec::new();
    let path = cfg.out.join("shannon.json");
    write_json(&path, &value)?;
    written.push(path);
    let path = cfg.out.join("meta.json");
    write_json(&path, &meta(cfg, "shannon", value.clone()))?;
    written.push(path);
    Ok((value, written))
}

pub fn synth(cfg: &RunConfig) -> CliResult<Written> {
    let basis = solve(cfg)?;
    let h = synthetic_concentrated_signal(&basis, cfg.threshold, cfg.out_fraction, cfg.seed)?;
    let mut written = Vec::new();
    let path = cfg.out.join("signal.mat");
    write_matrix(&path, &Matrix::complex(1, h.len(), h.values().to_vec()))?;
    written.push(path);
    if cfg.domain == Domain::Fl {
        let grid = SpatialGrid::for_analysis(&cfg.band)?;
        let samples = grid.synthesize(&h);
        let path = cfg.out.join("samples.mat");
        write_matrix(&path, &Matrix::complex(samples.len(), 1, samples))?;
        written.push(path);
    }
    let results = json!({
        "shannon": basis.shannon(),
        "in_span": basis.eigenvalues().iter().filter(|&&v| v > cfg.threshold).count(),
        "energy": h.energy(),
    });
    let path = cfg.out.join("meta.json");
    write_json(&path, &meta(cfg, "synth", results))?;
    written.push(path);
    Ok(written)
}

/// Coefficients from a SLEPB001 file holding either the band coefficients or, for
/// Fourier-Laguerre bands, samples on the analysis grid (radius-major, then θ, then φ).
pub fn load_signal(path: &std::path::Path, band: &SpectralBand) -> CliResult<HarmonicCoeffs> {
    let m = read_matrix(path)?;
    let values = m.to_complex();
    if values.len() == band.dim() {
        return Ok(HarmonicCoeffs::from_values(*band, values)?);
    }
    if matches!(band, SpectralBand::FourierLaguerre { .. }) {
        let grid = SpatialGrid::for_analysis(band)?;
        if values.len() == grid.len() {
            return Ok(analysis_fl(&grid, &values, band)?);
        }
    }
    Err(CliError::Format {
        path: path.to_path_buf(),
        msg: format!("{} values match neither the band dimension {} nor its analysis grid", values.len(), band.dim()),
    })
}

pub fn project(cfg: &RunConfig) -> CliResult<Written> {
    let Some(signal) = &cfg.signal else {
        return Err(CliError::Config { field: "signal".into(), msg: "project needs --signal <file>".into() });
    };
    let h = load_signal(signal, &cfg.band)?;
    let basis = solve(cfg)?;
    let ha = slepian_coeffs(&h, &basis)?;
    let mut written = Vec::new();

    let path = cfg.out.join("slepian_coeffs.mat");
    write_matrix(&path, &Matrix::complex(1, ha.len(), ha.clone()))?;
    written.push(path);

    let sw = cfg.band.radial_weight().sqrt();
    let mut fl: Vec<f64> = h.values().iter().map(|v| v.norm() * sw).collect();
    let mut sl: Vec<f64> = ha.iter().map(|v| v.norm()).collect();
    fl.sort_by(|a, b| b.total_cmp(a));
    sl.sort_by(|a, b| b.total_cmp(a));
    let path = cfg.out.join("decay.csv");
    write_csv(
        &path,
        &["index", "fl_abs", "slepian_abs"],
        (0..fl.len().max(sl.len())).map(|i| vec![Cell::from(i + 1), fl.get(i).copied().into(), sl.get(i).copied().into()]),
    )?;
    written.push(path);

    let qs: Vec<f64> = (0..=basis.len()).map(|j| quality_measure(&ha, &basis, j)).collect::<Result<_, _>>()?;
    let path = cfg.out.join("q.csv");
    write_csv(&path, &["J", "Q"], qs.iter().enumerate().map(|(j, q)| vec![Cell::from(j), (*q).into()]))?;
    written.push(path);

    let floor_n = (basis.shannon().floor() as usize).min(basis.len());
    let mut q = json!({
        "shannon": basis.shannon(),
        "floor_shannon": floor_n,
        "q_at_floor_shannon": qs[floor_n],
    });
    if let Some(j) = cfg.j {
        if j > basis.len() {
            return Err(CliError::Config { field: "J".into(), msg: format!("{j} exceeds {} eigenfunctions", basis.len()) });
        }
        q["J"] = json!(j);
        q["q_at_J"] = json!(qs[j]);
    }
    let path = cfg.out.join("q.json");
    write_json(&path, &q)?;
    written.push(path);

    let path = cfg.out.join("meta.json");
    write_json(&path, &meta(cfg, "project", q))?;
    written.push(path);
    Ok(written)
}
