//! Concentration eigenproblems, Shannon numbers, space-limited duals and rotations.

mod coeffs;
mod shannon;

pub use coeffs::HarmonicCoeffs;
pub use shannon::{shannon_fb, shannon_fl};

use crate::error::{domain, Error, Result};
use crate::kernels::{kernel_fl_dense, kernel_fl_mask, FbOperator, FlOperator, SpectralBand, DENSE_LIMIT};
use crate::regions::{Angular, BallPoint, Orientation, ProductRegion, Region, RegionShape};
use nalgebra::{ComplexField, DMatrix};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::cmp::Ordering;

/// Raw eigenvalues must lie in [−EIG_TOL, 1 + EIG_TOL] before clamping.
pub const EIG_TOL: f64 = 1e-9;
/// Smallest eigenvalue admitted for a space-limited dual.
pub const DUAL_THRESHOLD: f64 = 1e-12;

/// Where an eigenfunction came from: its fixed order and separated factors, when they exist.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenMeta {
    pub order: Option<i64>,
    pub radial_index: Option<usize>,
    pub lambda_radial: Option<f64>,
    pub angular_index: Option<usize>,
    pub lambda_angular: Option<f64>,
}

#[derive(Debug, Clone, Copy)]
enum Ref {
    /// Radial eigenvector × G^{|m|} eigenvector placed at order m.
    Sep {
        radial: usize,
        m: i64,
        col: usize,
    },
    /// Radial eigenvector × G_mask eigenvector.
    SepMask {
        radial: usize,
        col: usize,
    },
    /// Column of a fixed-order block solved at |m|, placed at order m.
    Block {
        m: i64,
        col: usize,
    },
    Dense {
        col: usize,
    },
}

#[derive(Debug, Clone)]
enum Basis {
    Separable { radial: DMatrix<f64>, angular: Vec<DMatrix<f64>> },
    SeparableMask { radial: DMatrix<f64>, angular: DMatrix<Complex64> },
    Blocks { blocks: Vec<DMatrix<f64>>, scale: f64 },
    Dense { vecs: DMatrix<Complex64> },
}

/// Sorted spectrum and eigenfunctions of a concentration problem.
#[derive(Debug, Clone)]
pub struct EigenResult {
    eigenvalues: Vec<f64>,
    raw_range: (f64, f64),
    shannon: f64,
    band: SpectralBand,
    region: Region,
    meta: Vec<EigenMeta>,
    refs: Vec<Ref>,
    basis: Basis,
    orientation: Option<Orientation>,
    radial_eigenvalues: Option<Vec<f64>>,
}

struct Solved<T: ComplexField> {
    values: Vec<f64>,
    vectors: DMatrix<T>,
}

/// Dense Hermitian eigensolve with ascending-order output.
fn hermitian_eigen<T>(a: DMatrix<T>, block: &str) -> Result<Solved<T>>
where
    T: ComplexField<RealField = f64> + faer::traits::ComplexField,
{
    let n = a.nrows();
    if n == 0 {
        return Ok(Solved { values: Vec::new(), vectors: DMatrix::zeros(0, 0) });
    }
    let m = faer::Mat::from_fn(n, n, |r, c| a[(r, c)].clone());
    let eig = m.self_adjoint_eigen(faer::Side::Lower).map_err(|_| Error::NonConvergence(block.to_string()))?;
    // faer returns eigenvalues in nondecreasing order.
    let s = eig.S().column_vector();
    let values = (0..n).map(|i| ComplexField::real(s[i].clone())).collect();
    let u = eig.U();
    let vectors = DMatrix::from_fn(n, n, |r, c| u[(r, c)].clone());
    Ok(Solved { values, vectors })
}

fn validate(v: f64, block: &str, range: &mut (f64, f64)) -> Result<f64> {
    range.0 = range.0.min(v);
    range.1 = range.1.max(v);
    if !(-EIG_TOL..=1.0 + EIG_TOL).contains(&v) {
        return Err(Error::EigenvalueOutOfRange { value: v, block: block.to_string() });
    }
    Ok(v.clamp(0.0, 1.0))
}

fn sort_key(meta: &EigenMeta) -> (i64, usize, usize) {
    (meta.order.unwrap_or(0), meta.radial_index.unwrap_or(0), meta.angular_index.unwrap_or(0))
}

impl EigenResult {
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        mut entries: Vec<(f64, EigenMeta, Ref)>,
        raw_range: (f64, f64),
        shannon: f64,
        band: SpectralBand,
        region: &Region,
        basis: Basis,
        orientation: Option<Orientation>,
        radial_eigenvalues: Option<Vec<f64>>,
    ) -> Self {
        entries.sort_by(|a, b| match b.0.total_cmp(&a.0) {
            Ordering::Equal => sort_key(&a.1).cmp(&sort_key(&b.1)),
            o => o,
        });
        let eigenvalues = entries.iter().map(|e| e.0).collect();
        let meta = entries.iter().map(|e| e.1).collect();
        let refs = entries.iter().map(|e| e.2).collect();
        Self { eigenvalues, raw_range, shannon, band, region: region.clone(), meta, refs, basis, orientation, radial_eigenvalues }
    }

    /// Eigenvalues, descending, clamped to [0, 1].
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// (min, max) of the raw solver eigenvalues before clamping.
    pub fn raw_range(&self) -> (f64, f64) {
        self.raw_range
    }

    /// Shannon number from the trace integral.
    pub fn shannon(&self) -> f64 {
        self.shannon
    }

    pub fn band(&self) -> &SpectralBand {
        &self.band
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn meta(&self) -> &[EigenMeta] {
        &self.meta
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Eigenvalues of the radial factor E, when the problem separates radially.
    pub fn radial_eigenvalues(&self) -> Option<&[f64]> {
        self.radial_eigenvalues.as_deref()
    }

    pub fn count_at_least(&self, threshold: f64) -> usize {
        self.eigenvalues.iter().filter(|&&v| v >= threshold).count()
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    fn check_index(&self, alpha: usize) -> Result<()> {
        if alpha >= self.len() {
            return domain(format!("eigenfunction index {alpha} out of range (0..{})", self.len()));
        }
        Ok(())
    }

    /// Nonzero entries (flat index, value) of eigenfunction α before any rotation.
    fn canonical_entries(&self, alpha: usize, mut f: impl FnMut(usize, Complex64)) {
        let map = self.band.index_map();
        let r = map.radial_count();
        match (self.refs[alpha], &self.basis) {
            (Ref::Sep { radial, m, col }, Basis::Separable { radial: u, angular }) => {
                let ma = m.unsigned_abs() as usize;
                let v = &angular[ma];
                for a in 0..v.nrows() {
                    let base = crate::kernels::angular_index(ma + a, m) * r;
                    for q in 0..r {
                        f(base + q, Complex64::new(u[(q, radial)] * v[(a, col)], 0.0));
                    }
                }
            }
            (Ref::SepMask { radial, col }, Basis::SeparableMask { radial: u, angular }) => {
                for a in 0..angular.nrows() {
                    for q in 0..r {
                        f(a * r + q, angular[(a, col)] * u[(q, radial)]);
                    }
                }
            }
            (Ref::Block { m, col }, Basis::Blocks { blocks, scale }) => {
                let v = &blocks[m.unsigned_abs() as usize];
                for (i, flat) in map.order_indices(m).into_iter().enumerate() {
                    f(flat, Complex64::new(v[(i, col)] * scale, 0.0));
                }
            }
            (Ref::Dense { col }, Basis::Dense { vecs }) => {
                for i in 0..vecs.nrows() {
                    f(i, vecs[(i, col)]);
                }
            }
            _ => unreachable!("eigenfunction reference does not match basis storage"),
        }
    }

    /// Eigenfunction f^α as band coefficients, unit energy under the band's inner product.
    pub fn eigenvector(&self, alpha: usize) -> Result<HarmonicCoeffs> {
        self.check_index(alpha)?;
        let mut h = HarmonicCoeffs::zeros(self.band);
        let vals = h.values_mut();
        self.canonical_entries(alpha, |i, v| vals[i] = v);
        Ok(match self.orientation {
            Some(o) => h.rotated(o, false),
            None => h,
        })
    }

    /// Slepian coefficients h_α = ⟨h, f^α⟩ for every stored eigenfunction.
    pub fn project(&self, h: &HarmonicCoeffs) -> Result<Vec<Complex64>> {
        h.check_same_band(&self.band)?;
        let canon = match self.orientation {
            Some(o) => h.rotated(o, true),
            None => h.clone(),
        };
        let w = self.band.radial_weight();
        let vals = canon.values();
        Ok((0..self.len())
            .into_par_iter()
            .map(|alpha| {
                let mut acc = Complex64::new(0.0, 0.0);
                self.canonical_entries(alpha, |i, v| acc += vals[i] * v.conj());
                acc * w
            })
            .collect())
    }

    /// ĥ = Σ_{α<J} h_α f^α.
    pub fn reconstruct(&self, h_alpha: &[Complex64], j: usize) -> Result<HarmonicCoeffs> {
        if h_alpha.len() != self.len() {
            return Err(Error::BandMismatch(format!("{} Slepian coefficients for {} eigenfunctions", h_alpha.len(), self.len())));
        }
        if j > self.len() {
            return domain(format!("truncation J = {j} exceeds {} eigenfunctions", self.len()));
        }
        let mut h = HarmonicCoeffs::zeros(self.band);
        let vals = h.values_mut();
        for (alpha, &c) in h_alpha.iter().enumerate().take(j) {
            if c != Complex64::new(0.0, 0.0) {
                self.canonical_entries(alpha, |i, v| vals[i] += c * v);
            }
        }
        Ok(match self.orientation {
            Some(o) => h.rotated(o, false),
            None => h,
        })
    }
}

fn fl_dims(band: &SpectralBand) -> Result<(usize, usize)> {
    match *band {
        SpectralBand::FourierLaguerre { p, l } => Ok((p, l)),
        _ => Err(Error::BandMismatch("expected a Fourier-Laguerre band".into())),
    }
}

/// Fourier-Laguerre concentration problem. Product regions separate into E and G^m (or
/// G_mask) subproblems with λ = λ¹λ²; azimuthal regions and unions decompose by order;
/// rotated symmetric regions are solved in their canonical frame and rotated.
pub fn solve_fl(region: &Region, band: &SpectralBand) -> Result<EigenResult> {
    let (p, l) = fl_dims(band)?;
    let shannon = shannon_fl(region, band)?;
    let orientation = region.orientation();
    let canonical = region.canonical();
    let mut range = (f64::INFINITY, f64::NEG_INFINITY);
    match canonical.shape() {
        RegionShape::Product(ProductRegion { angular: Angular::Band { .. }, .. }) => {
            let op = FlOperator::new(band, &canonical)?;
            let e = hermitian_eigen(op.e().expect("single product").clone(), "E")?;
            let li = l as i64;
            let angular: Vec<(Vec<f64>, DMatrix<f64>)> = (0..li)
                .into_par_iter()
                .map(|m| {
                    let g = op.g(m)?.expect("single product");
                    let s = hermitian_eigen(g, &format!("G^{m}"))?;
                    Ok((s.values, s.vectors))
                })
                .collect::<Result<_>>()?;
            let mut radial_vals = Vec::with_capacity(p);
            for &v in &e.values {
                radial_vals.push(validate(v, "E", &mut range)?);
            }
            let mut entries = Vec::with_capacity(p * l * l);
            for (m, (gv, _)) in angular.iter().enumerate() {
                for (col, &g) in gv.iter().enumerate() {
                    let g = validate(g, &format!("G^{m}"), &mut range)?;
                    for (radial, &e) in radial_vals.iter().enumerate() {
                        for sm in if m == 0 { vec![0i64] } else { vec![-(m as i64), m as i64] } {
                            let meta = EigenMeta {
                                order: Some(sm),
                                radial_index: Some(p - 1 - radial),
                                lambda_radial: Some(e),
                                angular_index: Some(gv.len() - 1 - col),
                                lambda_angular: Some(g),
                            };
                            entries.push((e * g, meta, Ref::Sep { radial, m: sm, col }));
                        }
                    }
                }
            }
            let basis = Basis::Separable { radial: e.vectors, angular: angular.into_iter().map(|a| a.1).collect() };
            Ok(EigenResult::assemble(entries, range, shannon, *band, region, basis, orientation, Some(desc(&radial_vals))))
        }
        RegionShape::Product(ProductRegion { angular: Angular::Mask(_), .. }) => {
            let mk = kernel_fl_mask(band, &canonical)?;
            let e = hermitian_eigen(mk.e().clone(), "E")?;
            // Operator on coefficients is the transpose of the kernel.
            let g = hermitian_eigen(mk.g().transpose(), "G_mask")?;
            let mut radial_vals = Vec::with_capacity(p);
            for &v in &e.values {
                radial_vals.push(validate(v, "E", &mut range)?);
            }
            let mut entries = Vec::with_capacity(p * l * l);
            for (col, &gv) in g.values.iter().enumerate() {
                let gv = validate(gv, "G_mask", &mut range)?;
                for (radial, &ev) in radial_vals.iter().enumerate() {
                    let meta = EigenMeta {
                        order: None,
                        radial_index: Some(p - 1 - radial),
                        lambda_radial: Some(ev),
                        angular_index: Some(g.values.len() - 1 - col),
                        lambda_angular: Some(gv),
                    };
                    entries.push((ev * gv, meta, Ref::SepMask { radial, col }));
                }
            }
            let basis = Basis::SeparableMask { radial: e.vectors, angular: g.vectors };
            Ok(EigenResult::assemble(entries, range, shannon, *band, region, basis, None, Some(desc(&radial_vals))))
        }
        RegionShape::Azimuthal(_) | RegionShape::Union(_) => {
            let op = FlOperator::new(band, &canonical)?;
            let blocks = solve_blocks(l, |m| op.block(m))?;
            finish_blocks(blocks, &mut range, shannon, band, region, orientation, 1.0)
        }
    }
}

fn desc(v: &[f64]) -> Vec<f64> {
    let mut v = v.to_vec();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn solve_blocks(l: usize, block: impl Fn(i64) -> Result<DMatrix<f64>> + Sync) -> Result<Vec<Solved<f64>>> {
    (0..l as i64).into_par_iter().map(|m| hermitian_eigen(block(m)?, &format!("m={m}"))).collect()
}

fn finish_blocks(
    blocks: Vec<Solved<f64>>,
    range: &mut (f64, f64),
    shannon: f64,
    band: &SpectralBand,
    region: &Region,
    orientation: Option<Orientation>,
    scale: f64,
) -> Result<EigenResult> {
    let mut entries = Vec::new();
    for (m, s) in blocks.iter().enumerate() {
        let n = s.values.len();
        for (col, &v) in s.values.iter().enumerate() {
            let v = validate(v, &format!("m={m}"), range)?;
            for sm in if m == 0 { vec![0i64] } else { vec![-(m as i64), m as i64] } {
                let meta = EigenMeta {
                    order: Some(sm),
                    radial_index: None,
                    lambda_radial: None,
                    angular_index: Some(n - 1 - col),
                    lambda_angular: None,
                };
                entries.push((v, meta, Ref::Block { m: sm, col }));
            }
        }
    }
    let basis = Basis::Blocks { blocks: blocks.into_iter().map(|s| s.vectors).collect(), scale };
    Ok(EigenResult::assemble(entries, *range, shannon, *band, region, basis, orientation, None))
}

/// Dense PL² × PL² solve of the full kernel; the general path and the oracle for the
/// structured solvers.
pub fn solve_fl_dense(region: &Region, band: &SpectralBand) -> Result<EigenResult> {
    fl_dims(band)?;
    if band.dim() > DENSE_LIMIT {
        return Err(Error::Dimension { dim: band.dim(), limit: DENSE_LIMIT });
    }
    let shannon = shannon_fl(region, band)?;
    let k = kernel_fl_dense(band, region)?;
    let s = hermitian_eigen(k.operator(), "dense")?;
    let mut range = (f64::INFINITY, f64::NEG_INFINITY);
    let n = s.values.len();
    let mut entries = Vec::with_capacity(n);
    for (col, &v) in s.values.iter().enumerate() {
        let v = validate(v, "dense", &mut range)?;
        let meta =
            EigenMeta { order: None, radial_index: None, lambda_radial: None, angular_index: Some(n - 1 - col), lambda_angular: None };
        entries.push((v, meta, Ref::Dense { col }));
    }
    Ok(EigenResult::assemble(entries, range, shannon, *band, region, Basis::Dense { vecs: s.vectors }, None, None))
}

/// Fourier-Bessel concentration problem over fixed-order blocks of the W-symmetrized kernel;
/// eigenvectors map back to samples f_ℓm(k_n) through W^{−1/2}.
pub fn solve_fb(region: &Region, band: &SpectralBand) -> Result<EigenResult> {
    let SpectralBand::FourierBessel { l, .. } = *band else {
        return Err(Error::BandMismatch("solve_fb needs a Fourier-Bessel band".into()));
    };
    let shannon = shannon_fb(region, band)?;
    let canonical = region.canonical();
    let op = FbOperator::new(band, &canonical)?;
    let blocks = solve_blocks(l, |m| op.block(m))?;
    let mut range = (f64::INFINITY, f64::NEG_INFINITY);
    finish_blocks(blocks, &mut range, shannon, band, region, region.orientation(), 1.0 / band.radial_weight().sqrt())
}

/// Space-limited dual g = I_R f / √λ of a band-limited eigenfunction.
#[derive(Debug, Clone)]
pub struct SpaceLimited {
    f: HarmonicCoeffs,
    lambda: f64,
    region: Region,
}

impl SpaceLimited {
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    /// In-band coefficients g_band = √λ f.
    pub fn band_coeffs(&self) -> HarmonicCoeffs {
        self.f.scaled(Complex64::new(self.lambda.sqrt(), 0.0))
    }

    /// Pointwise value I_R(x) f(x) / √λ.
    pub fn evaluate(&self, points: &[BallPoint]) -> Result<Vec<Complex64>> {
        let vals = crate::transforms::synthesis(&self.f, points)?;
        let s = 1.0 / self.lambda.sqrt();
        Ok(points.iter().zip(vals).map(|(p, v)| if self.region.contains(*p) { v * s } else { Complex64::new(0.0, 0.0) }).collect())
    }
}

pub fn space_limit(f: &HarmonicCoeffs, lambda: f64, region: &Region) -> Result<SpaceLimited> {
    if !(lambda >= DUAL_THRESHOLD) {
        return domain(format!("space_limit: eigenvalue {lambda:e} below threshold {DUAL_THRESHOLD:e}"));
    }
    Ok(SpaceLimited { f: f.clone(), lambda, region: region.clone() })
}

/// Rotate band coefficients by R_z(φ0) R_y(θ0): f'_{ℓmq} = Σ_n e^{−imφ0} d^ℓ_{mn}(θ0) f_{ℓnq}.
pub fn rotate_eigenfunction(f: &HarmonicCoeffs, theta0: f64, phi0: f64) -> Result<HarmonicCoeffs> {
    Ok(f.rotated(Orientation::new(theta0, phi0)?, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::kernel_fl_fixed_order;
    use std::f64::consts::PI;

    const T1: f64 = PI / 8.0;
    const T2: f64 = 3.0 * PI / 8.0;

    #[test]
    fn full_ball_spectrum_is_one() {
        let band = SpectralBand::fourier_laguerre(4, 5).unwrap();
        let res = solve_fl(&Region::full_ball(), &band).unwrap();
        assert_eq!(res.len(), 100);
        assert!(res.eigenvalues().iter().all(|v| (v - 1.0).abs() < 1e-10));
        assert!((res.shannon() - 100.0).abs() < 1e-10);
    }

    #[test]
    fn separable_matches_dense_and_fixed_order() {
        let band = SpectralBand::fourier_laguerre(5, 6).unwrap();
        let region = Region::product(2.0, 9.0, 0.3, 1.4).unwrap();
        let sep = solve_fl(&region, &band).unwrap();
        let dense = solve_fl_dense(&region, &band).unwrap();
        for (a, b) in sep.eigenvalues().iter().zip(dense.eigenvalues()) {
            assert!((a - b).abs() < 1e-10);
        }
        assert!((sep.sum() - sep.shannon()).abs() < 1e-9 * sep.shannon());
        // order m = 2 block solved directly.
        let k = kernel_fl_fixed_order(2, &band, &region).unwrap();
        let crate::kernels::KernelData::Real(b) = k.data().clone() else { panic!() };
        let direct = hermitian_eigen(b, "m=2").unwrap().values;
        let mut from_sep: Vec<f64> =
            sep.meta().iter().zip(sep.eigenvalues()).filter(|(m, _)| m.order == Some(2)).map(|(_, &v)| v).collect();
        from_sep.sort_by(f64::total_cmp);
        for (a, b) in from_sep.iter().zip(direct) {
            assert!((a - b.clamp(0.0, 1.0)).abs() < 1e-8);
        }
    }

    #[test]
    fn eigenvectors_orthonormal_and_project() {
        let band = SpectralBand::fourier_laguerre(4, 5).unwrap();
        let region = Region::product(1.0, 6.0, T1, T2).unwrap();
        let res = solve_fl(&region, &band).unwrap();
        let vs: Vec<HarmonicCoeffs> = (0..res.len()).map(|a| res.eigenvector(a).unwrap()).collect();
        for a in 0..vs.len() {
            for b in 0..vs.len() {
                let d = vs[a].dot(&vs[b]).unwrap();
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((d - want).norm() < 1e-12);
            }
        }
        let h = res.project(&vs[7]).unwrap();
        for (i, v) in h.iter().enumerate() {
            assert!((v - if i == 7 { 1.0 } else { 0.0 }).norm() < 1e-12);
        }
        let back = res.reconstruct(&h, res.len()).unwrap();
        assert!(back.values().iter().zip(vs[7].values()).all(|(a, b)| (a - b).norm() < 1e-12));
    }

    #[test]
    fn mask_and_blocks_agree_with_dense() {
        let band = SpectralBand::fourier_laguerre(3, 4).unwrap();
        let mask = crate::regions::AngularMask::from_fn(4, |t, p| t < 1.5 && p > 1.0).unwrap();
        let region = Region::mask(mask, 1.0, 5.0).unwrap();
        let a = solve_fl(&region, &band).unwrap();
        let b = solve_fl_dense(&region, &band).unwrap();
        for (x, y) in a.eigenvalues().iter().zip(b.eigenvalues()) {
            assert!((x - y).abs() < 1e-10);
        }
        let u = Region::union(vec![Region::product(1.0, 3.0, 0.2, 0.9).unwrap(), Region::product(3.0, 6.0, 0.9, 2.0).unwrap()]).unwrap();
        let a = solve_fl(&u, &band).unwrap();
        let b = solve_fl_dense(&u, &band).unwrap();
        for (x, y) in a.eigenvalues().iter().zip(b.eigenvalues()) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn rotated_region_rotates_eigenfunctions() {
        let band = SpectralBand::fourier_laguerre(3, 4).unwrap();
        let region = Region::product(1.0, 5.0, 0.0, 0.6).unwrap().oriented(0.9, 2.0).unwrap();
        let res = solve_fl(&region, &band).unwrap();
        let dense = solve_fl_dense(&region, &band).unwrap();
        for (x, y) in res.eigenvalues().iter().zip(dense.eigenvalues()) {
            assert!((x - y).abs() < 1e-10);
        }
        let k = kernel_fl_dense(&band, &region).unwrap().operator();
        let f = res.eigenvector(0).unwrap();
        let v = nalgebra::DVector::from_vec(f.values().to_vec());
        let e = (v.adjoint() * &k * &v)[(0, 0)];
        assert!((e.re - res.eigenvalues()[0]).abs() < 1e-10);
    }

    #[test]
    fn space_limit_threshold() {
        let band = SpectralBand::fourier_laguerre(2, 2).unwrap();
        let f = HarmonicCoeffs::zeros(band);
        assert!(space_limit(&f, 0.0, &Region::full_ball()).is_err());
        let g = space_limit(&f, 0.25, &Region::full_ball()).unwrap();
        assert_eq!(g.band_coeffs(), f);
    }
}
