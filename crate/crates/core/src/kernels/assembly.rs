//! Kernel assembly over regions: fixed-order blocks, separable mask factors, dense kernels.

use super::angular::{g_mask, g_mask_entry, g_matrix};
use super::bessel::CTable;
use super::radial::e_matrix;
use super::{KernelData, KernelMatrix, SpectralBand};
use crate::error::{domain, Error, Result};
use crate::regions::{Angular, AzimuthalRegion, Orientation, ProductRegion, Region, RegionShape};
use crate::specfun::{laguerre_k_upto, spherical_bessel_j_upto, wigner_small_d_all, LegendreTable};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Largest band dimension assembled as one dense matrix.
pub const DENSE_LIMIT: usize = 10_000;

fn fl_dims(band: &SpectralBand) -> Result<(usize, usize)> {
    match *band {
        SpectralBand::FourierLaguerre { p, l } => Ok((p, l)),
        _ => Err(Error::BandMismatch("expected a Fourier-Laguerre band".into())),
    }
}

fn fb_dims(band: &SpectralBand) -> Result<(f64, usize, usize)> {
    match *band {
        SpectralBand::FourierBessel { k_max, l, m } => Ok((k_max, l, m)),
        _ => Err(Error::BandMismatch("expected a Fourier-Bessel band".into())),
    }
}

/// Per-part radial/angular factors of a region that decomposes by order m.
#[derive(Debug, Clone)]
enum FlPart {
    Product { e: DMatrix<f64>, theta1: f64, theta2: f64 },
    Azimuthal(AzimuthalRegion),
}

/// Fixed-order Fourier-Laguerre operator of an unrotated symmetric region; E is computed once
/// per radial interval and reused for every order.
#[derive(Debug, Clone)]
pub struct FlOperator {
    p: usize,
    l: usize,
    parts: Vec<FlPart>,
}

impl FlOperator {
    pub fn new(band: &SpectralBand, region: &Region) -> Result<Self> {
        let (p, l) = fl_dims(band)?;
        if region.orientation().is_some() {
            return Err(Error::Unsupported("fixed-order assembly needs an unrotated region".into()));
        }
        let product = |pr: &ProductRegion| -> Result<FlPart> {
            let Some((theta1, theta2)) = pr.band() else {
                return Err(Error::Unsupported("mask regions do not decompose by order; use kernel_fl_mask".into()));
            };
            Ok(FlPart::Product { e: e_matrix(p, pr.r1, pr.r2)?, theta1, theta2 })
        };
        let parts = match region.shape() {
            RegionShape::Product(pr) => vec![product(pr)?],
            RegionShape::Union(prs) => prs.iter().map(product).collect::<Result<_>>()?,
            RegionShape::Azimuthal(a) => vec![FlPart::Azimuthal(a.clone())],
        };
        Ok(Self { p, l, parts })
    }

    /// Radial matrix E of a single product region.
    pub fn e(&self) -> Option<&DMatrix<f64>> {
        match self.parts.as_slice() {
            [FlPart::Product { e, .. }] => Some(e),
            _ => None,
        }
    }

    /// Angular matrix G^m of a single product region.
    pub fn g(&self, m: i64) -> Result<Option<DMatrix<f64>>> {
        match self.parts.as_slice() {
            [FlPart::Product { theta1, theta2, .. }] => Ok(Some(g_matrix(m, self.l, *theta1, *theta2)?)),
            _ => Ok(None),
        }
    }

    /// Real symmetric block over (ℓ, p), local index (ℓ − |m|)·P + p.
    pub fn block(&self, m: i64) -> Result<DMatrix<f64>> {
        if m.unsigned_abs() as usize >= self.l {
            return Err(Error::IndexOutOfBand { ell: m.abs(), m, radial: 0 });
        }
        let n = (self.l - m.unsigned_abs() as usize) * self.p;
        let mut k = DMatrix::zeros(n, n);
        for part in &self.parts {
            match part {
                FlPart::Product { e, theta1, theta2 } => k += g_matrix(m, self.l, *theta1, *theta2)?.kronecker(e),
                FlPart::Azimuthal(a) => {
                    let (p, l) = (self.p, self.l);
                    k += azimuthal_block(a, m, l, p, |r| laguerre_k_upto(p, r).repeat(l), 1.0)
                }
            }
        }
        Ok(k)
    }
}

/// Fixed-order Fourier-Laguerre kernel block for ProductSymmetric, AzimuthallySymmetric or
/// disjoint-union regions.
pub fn kernel_fl_fixed_order(m: i64, band: &SpectralBand, region: &Region) -> Result<KernelMatrix> {
    band.check_order(m)?;
    let block = FlOperator::new(band, region)?.block(m)?;
    Ok(KernelMatrix {
        data: KernelData::Real(block),
        rows: band.index_map().order_indices(m),
        band: *band,
        region: region.clone(),
        weights: None,
        order: Some(m),
    })
}

/// Separable kernel E ⊗ G_mask of a radially independent mask region.
#[derive(Debug, Clone)]
pub struct MaskKernel {
    e: DMatrix<f64>,
    g: DMatrix<Complex64>,
    band: SpectralBand,
    region: Region,
}

impl MaskKernel {
    /// Radial factor (P × P).
    pub fn e(&self) -> &DMatrix<f64> {
        &self.e
    }

    /// Angular factor (L² × L², angular index ℓ² + ℓ + m).
    pub fn g(&self) -> &DMatrix<Complex64> {
        &self.g
    }

    pub fn band(&self) -> &SpectralBand {
        &self.band
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn trace(&self) -> f64 {
        self.e.trace() * self.g.trace().re
    }

    /// K_{(a,p),(b,q)} = G_ab E_pq.
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        let p = self.e.nrows();
        self.g[(i / p, j / p)] * self.e[(i % p, j % p)]
    }

    /// Materialized PL² × PL² kernel.
    pub fn dense(&self) -> Result<KernelMatrix> {
        let n = self.band.dim();
        if n > DENSE_LIMIT {
            return Err(Error::Dimension { dim: n, limit: DENSE_LIMIT });
        }
        Ok(KernelMatrix {
            data: KernelData::Complex(self.g.kronecker(&self.e.map(|v| Complex64::new(v, 0.0)))),
            rows: (0..n).collect(),
            band: self.band,
            region: self.region.clone(),
            weights: None,
            order: None,
        })
    }
}

/// Radial and angular factors of a ProductMask region, never materializing their product.
pub fn kernel_fl_mask(band: &SpectralBand, region: &Region) -> Result<MaskKernel> {
    let (p, l) = fl_dims(band)?;
    if region.orientation().is_some() {
        return Err(Error::Unsupported("rotated mask regions: rotate the mask pixels instead".into()));
    }
    let RegionShape::Product(ProductRegion { r1, r2, angular: Angular::Mask(mask) }) = region.shape() else {
        return Err(Error::Unsupported("kernel_fl_mask needs a ProductMask region".into()));
    };
    Ok(MaskKernel { e: e_matrix(p, *r1, *r2)?, g: g_mask(mask, l)?, band: *band, region: region.clone() })
}

/// Per-degree rotation blocks D^ℓ_{mn} = e^{−imφ0} d^ℓ_{mn}(θ0), ℓ < L, indexed (m+ℓ, n+ℓ).
pub fn rotation_blocks(l: usize, orientation: Orientation) -> Vec<DMatrix<Complex64>> {
    wigner_small_d_all(l, orientation.theta0)
        .into_iter()
        .enumerate()
        .map(|(ell, d)| {
            let li = ell as i64;
            DMatrix::from_fn(2 * ell + 1, 2 * ell + 1, |i, j| {
                Complex64::from_polar(d[(i, j)], -((i as i64 - li) as f64) * orientation.phi0)
            })
        })
        .collect()
}

/// Kernel of the rotated region from the canonical kernel over the full band:
/// K' = conj(D) K Dᵀ, D block-diagonal over ℓ (identity in the radial slot).
pub fn rotate_kernel(k: &DMatrix<Complex64>, band: &SpectralBand, orientation: Orientation) -> DMatrix<Complex64> {
    let (r, l) = (band.radial_count(), band.l());
    let blocks = rotation_blocks(l, orientation);
    let n = band.dim();
    let apply_rows = |src: &DMatrix<Complex64>, conj: bool| -> DMatrix<Complex64> {
        let mut out = DMatrix::zeros(n, n);
        for (ell, d) in blocks.iter().enumerate().take(l) {
            let base = ell * ell * r;
            for a in 0..2 * ell + 1 {
                for b in 0..2 * ell + 1 {
                    let c = if conj { d[(a, b)].conj() } else { d[(a, b)] };
                    if c.norm() == 0.0 {
                        continue;
                    }
                    for q in 0..r {
                        let (i, j) = (base + a * r + q, base + b * r + q);
                        let row = src.row(j).clone_owned() * c;
                        let mut dst = out.row_mut(i);
                        dst += row;
                    }
                }
            }
        }
        out
    };
    // conj(D) K, then (D (conj(D) K)ᵀ)ᵀ = conj(D) K Dᵀ.
    let left = apply_rows(k, true);
    apply_rows(&left.transpose(), false).transpose()
}

fn canonical_dense(band: &SpectralBand, region: &Region) -> Result<DMatrix<Complex64>> {
    let (_, l) = fl_dims(band)?;
    let canonical = region.canonical();
    if let RegionShape::Product(ProductRegion { angular: Angular::Mask(_), .. }) = canonical.shape() {
        return Ok(kernel_fl_mask(band, &canonical)?.dense()?.to_complex());
    }
    let op = FlOperator::new(band, &canonical)?;
    let map = band.index_map();
    let n = band.dim();
    let mut k = DMatrix::zeros(n, n);
    let li = l as i64;
    let blocks: Vec<(i64, DMatrix<f64>)> = (-(li - 1)..li).into_par_iter().map(|m| op.block(m).map(|b| (m, b))).collect::<Result<_>>()?;
    for (m, b) in blocks {
        let idx = map.order_indices(m);
        for (a, &i) in idx.iter().enumerate() {
            for (c, &j) in idx.iter().enumerate() {
                k[(i, j)] = Complex64::new(b[(a, c)], 0.0);
            }
        }
    }
    Ok(k)
}

/// Dense PL² × PL² Fourier-Laguerre kernel of any supported region, rotated regions included.
pub fn kernel_fl_dense(band: &SpectralBand, region: &Region) -> Result<KernelMatrix> {
    fl_dims(band)?;
    let n = band.dim();
    if n > DENSE_LIMIT {
        return Err(Error::Dimension { dim: n, limit: DENSE_LIMIT });
    }
    let mut k = canonical_dense(band, region)?;
    if let Some(o) = region.orientation() {
        k = rotate_kernel(&k, band, o);
    }
    Ok(KernelMatrix {
        data: KernelData::Complex(k),
        rows: (0..n).collect(),
        band: *band,
        region: region.clone(),
        weights: None,
        order: None,
    })
}

type FlIndex = (usize, i64, usize);

fn canonical_entry(band: &SpectralBand, shape: &RegionShape, i: FlIndex, j: FlIndex) -> Result<Complex64> {
    let (p, l) = fl_dims(band)?;
    let ((ell, m, pi), (ellp, mp, pj)) = (i, j);
    let product = |pr: &ProductRegion| -> Result<Complex64> {
        let e = e_matrix(pi.max(pj) + 1, pr.r1, pr.r2)?[(pi, pj)];
        match &pr.angular {
            Angular::Band { theta1, theta2 } => {
                if m != mp {
                    return Ok(Complex64::new(0.0, 0.0));
                }
                let ma = m.unsigned_abs() as usize;
                let g = g_matrix(m, ell.max(ellp) + 1, *theta1, *theta2)?;
                Ok(Complex64::new(e * g[(ell - ma, ellp - ma)], 0.0))
            }
            Angular::Mask(mask) => {
                if mask.l_grid() < l {
                    return Err(Error::BandMismatch(format!("mask grid band-limit {} < L = {l}", mask.l_grid())));
                }
                Ok(g_mask_entry(mask, ell, m, ellp, mp) * e)
            }
        }
    };
    match shape {
        RegionShape::Product(pr) => product(pr),
        RegionShape::Union(prs) => prs.iter().map(product).sum(),
        RegionShape::Azimuthal(a) => {
            if m != mp {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let mut acc = 0.0;
            for (ir, (&r, &wr)) in a.radial().nodes().iter().zip(a.radial().weights()).enumerate() {
                let k = laguerre_k_upto(p, r);
                for (ix, (&x, &wx)) in a.polar().nodes().iter().zip(a.polar().weights()).enumerate() {
                    if a.indicator(ir, ix) {
                        let t = LegendreTable::new(l, x.clamp(-1.0, 1.0).acos());
                        acc += wr * r * r * wx * 2.0 * PI * k[pi] * k[pj] * t.get(ell, m) * t.get(ellp, m);
                    }
                }
            }
            Ok(Complex64::new(acc, 0.0))
        }
    }
}

/// Single Fourier-Laguerre entry ∫_R Z_{ℓmp} Z*_{ℓ'm'p'} dv.
pub fn kernel_fl_entry(region: &Region, band: &SpectralBand, i: FlIndex, j: FlIndex) -> Result<Complex64> {
    let map = band.index_map();
    fl_dims(band)?;
    map.flat(i.0, i.1, i.2)?;
    map.flat(j.0, j.1, j.2)?;
    let Some(o) = region.orientation() else {
        return canonical_entry(band, region.shape(), i, j);
    };
    // K'_ij = Σ_{n,n'} conj(D^ℓ_{m n}) K_{(ℓ n p),(ℓ' n' p')} D^ℓ'_{m' n'}
    let blocks = rotation_blocks(i.0.max(j.0) + 1, o);
    let (ell, ellp) = (i.0 as i64, j.0 as i64);
    let mut acc = Complex64::new(0.0, 0.0);
    for n in -ell..=ell {
        let a = blocks[i.0][((i.1 + ell) as usize, (n + ell) as usize)].conj();
        if a.norm() == 0.0 {
            continue;
        }
        for np in -ellp..=ellp {
            let b = blocks[j.0][((j.1 + ellp) as usize, (np + ellp) as usize)];
            if b.norm() == 0.0 {
                continue;
            }
            acc += a * canonical_entry(band, region.shape(), (i.0, n, i.2), (j.0, np, j.2))? * b;
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone)]
enum FbPart {
    Product { c: CTable, theta1: f64, theta2: f64 },
    Azimuthal(AzimuthalRegion),
}

/// Fixed-order Fourier-Bessel operator of an unrotated symmetric region; the radial couplings
/// C_{ℓℓ'}(k_n, k_n') are tabulated once per radial interval.
#[derive(Debug, Clone)]
pub struct FbOperator {
    ks: Vec<f64>,
    dk: f64,
    l: usize,
    parts: Vec<FbPart>,
}

impl FbOperator {
    pub fn new(band: &SpectralBand, region: &Region) -> Result<Self> {
        let (_, l, _) = fb_dims(band)?;
        if region.orientation().is_some() {
            return Err(Error::Unsupported("fixed-order assembly needs an unrotated region".into()));
        }
        let ks = band.wavenumbers();
        let product = |pr: &ProductRegion| -> Result<FbPart> {
            let Some((theta1, theta2)) = pr.band() else {
                return Err(Error::Unsupported("Fourier-Bessel kernels over general angular masks".into()));
            };
            if pr.r2.is_infinite() {
                return domain("Fourier-Bessel regions need a finite outer radius R2");
            }
            Ok(FbPart::Product { c: CTable::new(l, &ks, pr.r1, pr.r2)?, theta1, theta2 })
        };
        let parts = match region.shape() {
            RegionShape::Product(pr) => vec![product(pr)?],
            RegionShape::Union(prs) => prs.iter().map(product).collect::<Result<_>>()?,
            RegionShape::Azimuthal(a) => vec![FbPart::Azimuthal(a.clone())],
        };
        Ok(Self { ks, dk: band.radial_weight(), l, parts })
    }

    pub fn wavenumbers(&self) -> &[f64] {
        &self.ks
    }

    /// B = W^{1/2} (C∘G) W^{1/2} over (ℓ, k_n), local index (ℓ − |m|)·M + (n − 1).
    pub fn block(&self, m: i64) -> Result<DMatrix<f64>> {
        if m.unsigned_abs() as usize >= self.l {
            return Err(Error::IndexOutOfBand { ell: m.abs(), m, radial: 0 });
        }
        let ma = m.unsigned_abs() as usize;
        let nk = self.ks.len();
        let n = (self.l - ma) * nk;
        let mut b = DMatrix::zeros(n, n);
        for part in &self.parts {
            match part {
                FbPart::Product { c, theta1, theta2 } => {
                    let g = g_matrix(m, self.l, *theta1, *theta2)?;
                    for a in 0..self.l - ma {
                        for bb in 0..self.l - ma {
                            let gab = g[(a, bb)] * self.dk;
                            if gab == 0.0 {
                                continue;
                            }
                            let cb = c.block(ma + a, ma + bb);
                            let mut view = b.view_mut((a * nk, bb * nk), (nk, nk));
                            view += cb * gab;
                        }
                    }
                }
                FbPart::Azimuthal(az) => {
                    let ks = &self.ks;
                    let l = self.l;
                    let radial_fn = |r: f64| -> Vec<f64> {
                        let mut out = vec![0.0; ks.len() * l];
                        for (n, &k) in ks.iter().enumerate() {
                            let j = spherical_bessel_j_upto(l - 1, k * r);
                            for ell in 0..l {
                                out[ell * ks.len() + n] = (2.0 / PI).sqrt() * k * j[ell];
                            }
                        }
                        out
                    };
                    b += azimuthal_block(az, m, l, ks.len(), radial_fn, self.dk);
                }
            }
        }
        Ok(b)
    }
}

/// Σ over the region's (r, cos θ) grid of w_r r² w_x 2π I · scale · v vᵀ, with
/// v_(ℓ,q) = radial_fn(r)[ℓ·R + q] λ_ℓm(θ).
fn azimuthal_block(
    a: &AzimuthalRegion,
    m: i64,
    l: usize,
    radial: usize,
    radial_fn: impl Fn(f64) -> Vec<f64> + Sync,
    scale: f64,
) -> DMatrix<f64> {
    let ma = m.unsigned_abs() as usize;
    let n = (l - ma) * radial;
    let cells: Vec<(usize, usize)> =
        (0..a.radial().len()).flat_map(|ir| (0..a.polar().len()).map(move |ix| (ir, ix))).filter(|&(ir, ix)| a.indicator(ir, ix)).collect();
    let legendre: Vec<LegendreTable> = a.polar().nodes().iter().map(|x| LegendreTable::new(l, x.clamp(-1.0, 1.0).acos())).collect();
    let radial_vals: Vec<Vec<f64>> = a.radial().nodes().par_iter().map(|&r| radial_fn(r)).collect();
    let mut v = DMatrix::zeros(n, cells.len());
    for (col, &(ir, ix)) in cells.iter().enumerate() {
        let r = a.radial().nodes()[ir];
        let s = (a.radial().weights()[ir] * r * r * a.polar().weights()[ix] * 2.0 * PI * scale).sqrt();
        for ell in ma..l {
            let y = legendre[ix].get(ell, m) * s;
            for q in 0..radial {
                v[((ell - ma) * radial + q, col)] = y * radial_vals[ir][ell * radial + q];
            }
        }
    }
    &v * v.transpose()
}

/// Symmetrized fixed-order Fourier-Bessel kernel B = W^{1/2} (C∘G^m) W^{1/2}, W = diag(Δk).
pub fn kernel_fb_fixed_order(m: i64, band: &SpectralBand, region: &Region) -> Result<KernelMatrix> {
    band.check_order(m)?;
    let block = FbOperator::new(band, region)?.block(m)?;
    let rows = band.index_map().order_indices(m);
    let weights = vec![band.radial_weight(); rows.len()];
    Ok(KernelMatrix { data: KernelData::Real(block), rows, band: *band, region: region.clone(), weights: Some(weights), order: Some(m) })
}
