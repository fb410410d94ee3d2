//! Transforms on the ball, Slepian-basis projection, truncation and the quality measure.

use crate::eigen::{EigenResult, HarmonicCoeffs};
use crate::error::{Error, Result};
use crate::kernels::{fb_radial_rule, fl_radial_rule, SpectralBand};
use crate::regions::{Angular, BallPoint, Orientation, ProductRegion, Region, RegionShape};
use crate::specfun::{laguerre_k_upto, spherical_bessel_j_upto, LegendreTable, QuadratureKind, QuadratureRule};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use std::f64::consts::PI;

/// Radial basis values R_{ℓ,q}(r), laid out [ℓ·R + q]: K_p(r) for Fourier-Laguerre,
/// Δk √(2/π) k_n j_ℓ(k_n r) for Fourier-Bessel (synthesis carries the Δk Riemann weight).
fn radial_table(band: &SpectralBand, r: f64) -> Vec<f64> {
    match *band {
        SpectralBand::FourierLaguerre { p, l } => laguerre_k_upto(p, r).repeat(l),
        SpectralBand::FourierBessel { l, m, .. } => {
            let dk = band.radial_weight();
            let ks = band.wavenumbers();
            let mut out = vec![0.0; l * m];
            for (n, &k) in ks.iter().enumerate() {
                let j = spherical_bessel_j_upto(l - 1, k * r);
                for ell in 0..l {
                    out[ell * m + n] = dk * (2.0 / PI).sqrt() * k * j[ell];
                }
            }
            out
        }
    }
}

fn eval_point(h: &HarmonicCoeffs, pt: &BallPoint) -> Complex64 {
    let band = h.band();
    let (r, l) = (band.radial_count(), band.l());
    let rad = radial_table(band, pt.r);
    let leg = LegendreTable::new(l, pt.theta);
    let vals = h.values();
    let mut acc = Complex64::new(0.0, 0.0);
    for ell in 0..l {
        let li = ell as i64;
        for m in -li..=li {
            let base = (ell * ell + ell) * r;
            let idx = (base as i64 + m * r as i64) as usize;
            let mut s = Complex64::new(0.0, 0.0);
            for q in 0..r {
                s += vals[idx + q] * rad[ell * r + q];
            }
            acc += s * leg.get(ell, m) * Complex64::from_polar(1.0, m as f64 * pt.phi);
        }
    }
    acc
}

/// Pointwise synthesis in either domain.
pub fn synthesis(h: &HarmonicCoeffs, points: &[BallPoint]) -> Result<Vec<Complex64>> {
    Ok(points.par_iter().map(|p| eval_point(h, p)).collect())
}

/// f(x) = Σ f_{ℓmp} K_p(r) Y_ℓm(θ, φ).
pub fn synthesis_fl(h: &HarmonicCoeffs, points: &[BallPoint]) -> Result<Vec<Complex64>> {
    if !matches!(h.band(), SpectralBand::FourierLaguerre { .. }) {
        return Err(Error::BandMismatch("synthesis_fl needs Fourier-Laguerre coefficients".into()));
    }
    synthesis(h, points)
}

/// f(x) = Σ_n Δk Σ_ℓm f_ℓm(k_n) √(2/π) k_n j_ℓ(k_n r) Y_ℓm(θ, φ).
pub fn synthesis_fb(h: &HarmonicCoeffs, points: &[BallPoint]) -> Result<Vec<Complex64>> {
    if !matches!(h.band(), SpectralBand::FourierBessel { .. }) {
        return Err(Error::BandMismatch("synthesis_fb needs Fourier-Bessel coefficients".into()));
    }
    synthesis(h, points)
}

/// One tensor block: radial rule × rings (θ, weight in cos θ) × uniform φ, with an optional
/// per-node indicator laid out [(ir·n_theta + it)·n_phi + k].
#[derive(Debug, Clone)]
struct GridBlock {
    radial: QuadratureRule,
    thetas: Vec<f64>,
    theta_weights: Vec<f64>,
    n_phi: usize,
    include: Option<Vec<bool>>,
}

impl GridBlock {
    fn included(&self, ir: usize, it: usize, k: usize) -> bool {
        match &self.include {
            Some(v) => v[(ir * self.thetas.len() + it) * self.n_phi + k],
            None => true,
        }
    }

    fn nodes(&self) -> impl Iterator<Item = (BallPoint, f64)> + '_ {
        let nt = self.thetas.len();
        let dphi = 2.0 * PI / self.n_phi as f64;
        (0..self.radial.len()).flat_map(move |ir| {
            (0..nt).flat_map(move |it| {
                (0..self.n_phi).filter(move |&k| self.included(ir, it, k)).map(move |k| {
                    let r = self.radial.nodes()[ir];
                    let w = self.radial.weights()[ir] * r * r * self.theta_weights[it] * dphi;
                    (BallPoint { r, theta: self.thetas[it], phi: k as f64 * dphi }, w)
                })
            })
        })
    }

    /// Values at the included nodes, in `nodes()` order, by separable radial, Legendre and
    /// Fourier stages.
    fn synthesize(&self, h: &HarmonicCoeffs) -> Vec<Complex64> {
        let band = h.band();
        let (r, l) = (band.radial_count(), band.l());
        let vals = h.values();
        let legendre: Vec<LegendreTable> = self.thetas.iter().map(|&t| LegendreTable::new(l, t)).collect();
        let phases: Vec<Vec<Complex64>> = (0..self.n_phi)
            .map(|k| {
                let phi = 2.0 * PI * k as f64 / self.n_phi as f64;
                (-(l as i64 - 1)..l as i64).map(|m| Complex64::from_polar(1.0, m as f64 * phi)).collect()
            })
            .collect();
        let per_radius: Vec<Vec<Complex64>> = self
            .radial
            .nodes()
            .par_iter()
            .enumerate()
            .map(|(ir, &rad)| {
                let table = radial_table(band, rad);
                // a[ℓ² + ℓ + m] = Σ_q f_{ℓmq} R_{ℓq}(r)
                let mut a = vec![Complex64::new(0.0, 0.0); l * l];
                for ell in 0..l {
                    for m in -(ell as i64)..=ell as i64 {
                        let ai = ((ell * ell + ell) as i64 + m) as usize;
                        let mut s = Complex64::new(0.0, 0.0);
                        for q in 0..r {
                            s += vals[ai * r + q] * table[ell * r + q];
                        }
                        a[ai] = s;
                    }
                }
                let mut out = Vec::new();
                for (it, leg) in legendre.iter().enumerate() {
                    // b[m + L − 1] = Σ_ℓ a_ℓm λ_ℓm(θ)
                    let mut b = vec![Complex64::new(0.0, 0.0); 2 * l - 1];
                    for ell in 0..l {
                        for m in -(ell as i64)..=ell as i64 {
                            b[(m + l as i64 - 1) as usize] += a[((ell * ell + ell) as i64 + m) as usize] * leg.get(ell, m);
                        }
                    }
                    for (k, ph) in phases.iter().enumerate() {
                        if self.included(ir, it, k) {
                            out.push(b.iter().zip(ph).map(|(x, y)| x * y).sum());
                        }
                    }
                }
                out
            })
            .collect();
        per_radius.into_iter().flatten().collect()
    }
}

/// Quadrature grid on the ball (or on a region), exact for the band-limited integrands it was
/// built for.
#[derive(Debug, Clone)]
pub struct SpatialGrid {
    blocks: Vec<GridBlock>,
    orientation: Option<Orientation>,
    points: Vec<BallPoint>,
    weights: Vec<f64>,
}

impl SpatialGrid {
    fn from_blocks(blocks: Vec<GridBlock>, orientation: Option<Orientation>) -> Self {
        let mut points = Vec::new();
        let mut weights = Vec::new();
        for b in &blocks {
            for (p, w) in b.nodes() {
                points.push(match orientation {
                    Some(o) => o.rotate(p),
                    None => p,
                });
                weights.push(w);
            }
        }
        Self { blocks, orientation, points, weights }
    }

    /// Full-ball Fourier-Laguerre analysis grid: Gauss-Laguerre in r (P + 9 nodes),
    /// Gauss-Legendre in cos θ (L + 1 nodes), 2L − 1 uniform longitudes.
    pub fn for_analysis(band: &SpectralBand) -> Result<Self> {
        let SpectralBand::FourierLaguerre { p, l } = *band else {
            return Err(Error::BandMismatch("analysis grids are Fourier-Laguerre".into()));
        };
        let polar = QuadratureRule::gauss_legendre(l + 1, -1.0, 1.0);
        let block = GridBlock {
            radial: QuadratureRule::gauss_laguerre(p + 9),
            thetas: polar.nodes().iter().rev().map(|x| x.acos()).collect(),
            theta_weights: polar.weights().iter().rev().copied().collect(),
            n_phi: 2 * l - 1,
            include: None,
        };
        Ok(Self::from_blocks(vec![block], None))
    }

    /// Grid over a region, exact for |f|² of band-limited f (for Fourier-Bessel, oscillation
    /// resolved up to K on the radial interval).
    pub fn for_region(region: &Region, band: &SpectralBand) -> Result<Self> {
        let l = band.l();
        let radial_rule = |r1: f64, r2: f64| -> Result<QuadratureRule> {
            match *band {
                SpectralBand::FourierLaguerre { p, .. } => Ok(fl_radial_rule(p, r1, r2)),
                SpectralBand::FourierBessel { k_max, .. } => {
                    if r2.is_infinite() {
                        return Err(Error::Domain("Fourier-Bessel grids need a finite outer radius".into()));
                    }
                    Ok(fb_radial_rule(k_max, r1, r2))
                }
            }
        };
        let product = |pr: &ProductRegion| -> Result<GridBlock> {
            let radial = radial_rule(pr.r1, pr.r2)?;
            Ok(match &pr.angular {
                Angular::Band { theta1, theta2 } => {
                    let polar = QuadratureRule::gauss_legendre(l + 1, theta2.cos(), theta1.cos());
                    GridBlock {
                        radial,
                        thetas: polar.nodes().iter().rev().map(|x| x.clamp(-1.0, 1.0).acos()).collect(),
                        theta_weights: polar.weights().iter().rev().copied().collect(),
                        n_phi: 2 * l - 1,
                        include: None,
                    }
                }
                Angular::Mask(mask) => {
                    if mask.l_grid() < l {
                        return Err(Error::BandMismatch(format!("mask grid band-limit {} < L = {l}", mask.l_grid())));
                    }
                    let (nt, np) = (mask.thetas().len(), mask.n_phi());
                    let mut include = Vec::with_capacity(radial.len() * nt * np);
                    for _ in 0..radial.len() {
                        for it in 0..nt {
                            for k in 0..np {
                                include.push(mask.indicator(it, k));
                            }
                        }
                    }
                    GridBlock {
                        radial,
                        thetas: mask.thetas().to_vec(),
                        theta_weights: mask.theta_weights().to_vec(),
                        n_phi: np,
                        include: Some(include),
                    }
                }
            })
        };
        let blocks = match region.shape() {
            RegionShape::Product(pr) => vec![product(pr)?],
            RegionShape::Union(prs) => prs.iter().map(product).collect::<Result<_>>()?,
            RegionShape::Azimuthal(a) => {
                let n_phi = 2 * l - 1;
                let nt = a.polar().len();
                let mut include = Vec::with_capacity(a.radial().len() * nt * n_phi);
                for ir in 0..a.radial().len() {
                    for it in 0..nt {
                        include.extend(std::iter::repeat_n(a.indicator(ir, it), n_phi));
                    }
                }
                vec![GridBlock {
                    radial: a.radial().clone(),
                    thetas: a.polar().nodes().iter().map(|x| x.clamp(-1.0, 1.0).acos()).collect(),
                    theta_weights: a.polar().weights().to_vec(),
                    n_phi,
                    include: Some(include),
                }]
            }
        };
        Ok(Self::from_blocks(blocks, region.orientation()))
    }

    pub fn points(&self) -> &[BallPoint] {
        &self.points
    }

    /// Volume weights w r² (indicator applied).
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Values of h at `points()`, via the separable tensor stages in the grid's canonical frame.
    pub fn synthesize(&self, h: &HarmonicCoeffs) -> Vec<Complex64> {
        let canon = match self.orientation {
            Some(o) => h.rotated(o, true),
            None => h.clone(),
        };
        self.blocks.iter().flat_map(|b| b.synthesize(&canon)).collect()
    }

    pub fn integrate(&self, values: &[Complex64]) -> Complex64 {
        values.iter().zip(&self.weights).map(|(v, w)| v * *w).sum()
    }

    /// ∫ f g* dv over the grid.
    pub fn inner(&self, f: &[Complex64], g: &[Complex64]) -> Complex64 {
        f.iter().zip(g).zip(&self.weights).map(|((a, b), w)| a * b.conj() * *w).sum()
    }

    /// ∫ |h|² dv over the grid.
    pub fn energy(&self, h: &HarmonicCoeffs) -> f64 {
        let v = self.synthesize(h);
        v.iter().zip(&self.weights).map(|(a, w)| a.norm_sqr() * w).sum()
    }
}

/// f_{ℓmp} = ∫ f Z*_{ℓmp} dv on a full-ball analysis grid.
pub fn analysis_fl(grid: &SpatialGrid, values: &[Complex64], band: &SpectralBand) -> Result<HarmonicCoeffs> {
    let SpectralBand::FourierLaguerre { p, l } = *band else {
        return Err(Error::BandMismatch("analysis_fl needs a Fourier-Laguerre band".into()));
    };
    let [block] = grid.blocks.as_slice() else {
        return Err(Error::BandMismatch("analysis_fl needs a single full-ball analysis grid".into()));
    };
    if grid.orientation.is_some()
        || block.include.is_some()
        || block.radial.kind() != QuadratureKind::GaussLaguerre
        || block.radial.len() < p + 1
        || block.thetas.len() < l
        || block.n_phi < 2 * l - 1
    {
        return Err(Error::BandMismatch(format!("grid not exact for P = {p}, L = {l}")));
    }
    if values.len() != grid.len() {
        return Err(Error::BandMismatch(format!("{} samples for a grid of {} nodes", values.len(), grid.len())));
    }
    let (nr, nt, np) = (block.radial.len(), block.thetas.len(), block.n_phi);
    let legendre: Vec<LegendreTable> = block.thetas.iter().map(|&t| LegendreTable::new(l, t)).collect();
    let dphi = 2.0 * PI / np as f64;
    let li = l as i64;
    // Per radius: c[ℓ² + ℓ + m] = Σ_θ w_θ λ_ℓm Σ_φ Δφ f e^{−imφ}.
    let per_radius: Vec<Vec<Complex64>> = (0..nr)
        .into_par_iter()
        .map(|ir| {
            let mut c = vec![Complex64::new(0.0, 0.0); l * l];
            for it in 0..nt {
                let row = &values[(ir * nt + it) * np..(ir * nt + it + 1) * np];
                for m in -(li - 1)..li {
                    let fm: Complex64 =
                        row.iter().enumerate().map(|(k, v)| v * Complex64::from_polar(dphi, -(m as f64) * k as f64 * dphi)).sum();
                    for ell in m.unsigned_abs() as usize..l {
                        c[((ell * ell + ell) as i64 + m) as usize] += fm * legendre[it].get(ell, m) * block.theta_weights[it];
                    }
                }
            }
            c
        })
        .collect();
    let mut out = vec![Complex64::new(0.0, 0.0); band.dim()];
    for (ir, c) in per_radius.iter().enumerate() {
        let rad = block.radial.nodes()[ir];
        let w = block.radial.weights()[ir] * rad * rad;
        let k = laguerre_k_upto(p, rad);
        for (a, ca) in c.iter().enumerate() {
            for q in 0..p {
                out[a * p + q] += ca * (w * k[q]);
            }
        }
    }
    HarmonicCoeffs::from_values(*band, out)
}

/// Slepian coefficients h_α = ⟨h, f^α⟩.
pub fn slepian_coeffs(h: &HarmonicCoeffs, basis: &EigenResult) -> Result<Vec<Complex64>> {
    basis.project(h)
}

/// ĥ = Σ_{α<J} h_α f^α.
pub fn truncate_reconstruct(h_alpha: &[Complex64], basis: &EigenResult, j: usize) -> Result<HarmonicCoeffs> {
    basis.reconstruct(h_alpha, j)
}

/// Q(J) = Σ_{α<J} λ_α |h_α|² / Σ_α λ_α |h_α|².
pub fn quality_measure(h_alpha: &[Complex64], basis: &EigenResult, j: usize) -> Result<f64> {
    if h_alpha.len() != basis.len() {
        return Err(Error::BandMismatch(format!("{} Slepian coefficients for {} eigenfunctions", h_alpha.len(), basis.len())));
    }
    if j > basis.len() {
        return Err(Error::Domain(format!("truncation J = {j} exceeds {} eigenfunctions", basis.len())));
    }
    let terms: Vec<f64> = h_alpha.iter().zip(basis.eigenvalues()).map(|(h, l)| l * h.norm_sqr()).collect();
    let total: f64 = terms.iter().sum();
    if total < 1e-30 {
        return Err(Error::Domain("signal has no energy in the region".into()));
    }
    if j == basis.len() {
        return Ok(1.0);
    }
    Ok(terms[..j].iter().sum::<f64>() / total)
}

/// Q(J) from its definition ∫_R |ĥ_J|² / ∫_R |h|² by spatial quadrature.
pub fn quality_measure_spatial(h: &HarmonicCoeffs, basis: &EigenResult, j: usize) -> Result<f64> {
    let grid = SpatialGrid::for_region(basis.region(), basis.band())?;
    let h_alpha = basis.project(h)?;
    let approx = basis.reconstruct(&h_alpha, j)?;
    let full = basis.reconstruct(&h_alpha, basis.len())?;
    Ok(grid.energy(&approx) / grid.energy(&full))
}

/// Test signal concentrated in the basis region: white complex Gaussian coefficients on the
/// eigenfunctions with λ > `threshold`, plus a white component orthogonal to their span
/// carrying `out_fraction` of the in-span energy.
pub fn synthetic_concentrated_signal(basis: &EigenResult, threshold: f64, out_fraction: f64, seed: u64) -> Result<HarmonicCoeffs> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gauss = || Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng));
    let n_in = basis.eigenvalues().iter().filter(|&&v| v > threshold).count();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); basis.len()];
    for c in coeffs.iter_mut().take(n_in) {
        *c = gauss();
    }
    let inside = basis.reconstruct(&coeffs, n_in)?;
    let band = *basis.band();
    let white = HarmonicCoeffs::from_values(band, (0..band.dim()).map(|_| gauss()).collect())?;
    let w_alpha = basis.project(&white)?;
    let in_part = basis.reconstruct(&w_alpha, n_in)?;
    let out = white.add(&in_part.scaled(Complex64::new(-1.0, 0.0)))?;
    let scale = (out_fraction * inside.energy() / out.energy()).sqrt();
    inside.add(&out.scaled(Complex64::new(scale, 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::solve_fl;
    use rand::Rng;

    fn random(band: SpectralBand, seed: u64) -> HarmonicCoeffs {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = (0..band.dim()).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        HarmonicCoeffs::from_values(band, v).unwrap()
    }

    #[test]
    fn single_coefficient_synthesis() {
        let band = SpectralBand::fourier_laguerre(3, 3).unwrap();
        let mut h = HarmonicCoeffs::zeros(band);
        h.set(0, 0, 0, Complex64::new(1.0, 0.0)).unwrap();
        let pts = [BallPoint { r: 2.5, theta: 0.4, phi: 1.0 }, BallPoint { r: 0.1, theta: 2.0, phi: 5.0 }];
        for (p, v) in pts.iter().zip(synthesis_fl(&h, &pts).unwrap()) {
            let want = laguerre_k_upto(1, p.r)[0] / (4.0 * PI).sqrt();
            assert!((v - want).norm() < 1e-15);
        }
    }

    #[test]
    fn grid_synthesis_matches_pointwise() {
        let band = SpectralBand::fourier_laguerre(4, 5).unwrap();
        let h = random(band, 3);
        let grid = SpatialGrid::for_region(&Region::product(1.0, 4.0, 0.3, 1.0).unwrap().oriented(0.5, 0.2).unwrap(), &band).unwrap();
        let a = grid.synthesize(&h);
        let b = synthesis_fl(&h, grid.points()).unwrap();
        assert!(a.iter().zip(&b).all(|(x, y)| (x - y).norm() < 1e-12));
    }

    #[test]
    fn round_trip_and_parseval() {
        let band = SpectralBand::fourier_laguerre(8, 9).unwrap();
        let h = random(band, 4);
        let grid = SpatialGrid::for_analysis(&band).unwrap();
        let vals = grid.synthesize(&h);
        let back = analysis_fl(&grid, &vals, &band).unwrap();
        let err = back.values().iter().zip(h.values()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err < 1e-10, "{err}");
        let e_space = grid.inner(&vals, &vals).re;
        assert!((e_space - h.energy()).abs() < 1e-10 * h.energy());
    }

    #[test]
    fn quality_measure_closed_form_matches_definition() {
        let band = SpectralBand::fourier_laguerre(4, 4).unwrap();
        let region = Region::product(1.0, 6.0, 0.3, 1.2).unwrap();
        let basis = solve_fl(&region, &band).unwrap();
        let h = random(band, 5);
        let ha = slepian_coeffs(&h, &basis).unwrap();
        for j in [0usize, 3, 10, 40, 64] {
            let a = quality_measure(&ha, &basis, j).unwrap();
            let b = quality_measure_spatial(&h, &basis, j).unwrap();
            assert!((a - b).abs() < 1e-10, "J={j}: {a} vs {b}");
        }
        assert!(quality_measure(&ha, &basis, 65).is_err());
    }
}
