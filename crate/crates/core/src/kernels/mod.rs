//! Concentration-kernel assembly in the Fourier-Laguerre and Fourier-Bessel domains.

mod angular;
mod assembly;
mod bessel;
mod radial;

pub use angular::{angular_index, g_mask, g_mask_entry, g_matrix, g_matrix_quadrature};
pub use assembly::{
    kernel_fb_fixed_order, kernel_fl_dense, kernel_fl_entry, kernel_fl_fixed_order, kernel_fl_mask, rotate_kernel, rotation_blocks,
    FbOperator, FlOperator, MaskKernel, DENSE_LIMIT,
};
pub use bessel::{c_kernel, c_kernel_quadrature, fb_radial_rule, CTable};
pub use radial::{e_matrix, e_matrix_quadrature, fl_radial_rule};

use crate::error::{domain, Error, Result};
use crate::regions::Region;
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

/// Spectral truncation: A_PL (p < P, ℓ < L) or Ã_KL sampled at k_n = (n − ½)K/M, n = 1…M.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "domain", rename_all = "snake_case")]
pub enum SpectralBand {
    FourierLaguerre { p: usize, l: usize },
    FourierBessel { k_max: f64, l: usize, m: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelDomain {
    FourierLaguerre,
    FourierBessel,
}

impl SpectralBand {
    pub fn fourier_laguerre(p: usize, l: usize) -> Result<Self> {
        if p == 0 || l == 0 {
            return domain(format!("Fourier-Laguerre band needs P, L >= 1, got P={p}, L={l}"));
        }
        Ok(Self::FourierLaguerre { p, l })
    }

    pub fn fourier_bessel(k_max: f64, l: usize, m: usize) -> Result<Self> {
        if !(k_max > 0.0) || !k_max.is_finite() || l == 0 || m == 0 {
            return domain(format!("Fourier-Bessel band needs K > 0, L, M >= 1, got K={k_max}, L={l}, M={m}"));
        }
        Ok(Self::FourierBessel { k_max, l, m })
    }

    pub fn l(&self) -> usize {
        match *self {
            Self::FourierLaguerre { l, .. } | Self::FourierBessel { l, .. } => l,
        }
    }

    /// Radial slots per (ℓ, m): P or M.
    pub fn radial_count(&self) -> usize {
        match *self {
            Self::FourierLaguerre { p, .. } => p,
            Self::FourierBessel { m, .. } => m,
        }
    }

    pub fn dim(&self) -> usize {
        self.radial_count() * self.l() * self.l()
    }

    pub fn domain(&self) -> KernelDomain {
        match self {
            Self::FourierLaguerre { .. } => KernelDomain::FourierLaguerre,
            Self::FourierBessel { .. } => KernelDomain::FourierBessel,
        }
    }

    /// Quadrature weight of one radial slot: 1 for Fourier-Laguerre, Δk for Fourier-Bessel.
    pub fn radial_weight(&self) -> f64 {
        match *self {
            Self::FourierLaguerre { .. } => 1.0,
            Self::FourierBessel { k_max, m, .. } => k_max / m as f64,
        }
    }

    /// Midpoint wavenumbers k_n (empty for Fourier-Laguerre).
    pub fn wavenumbers(&self) -> Vec<f64> {
        match *self {
            Self::FourierLaguerre { .. } => Vec::new(),
            Self::FourierBessel { k_max, m, .. } => (1..=m).map(|n| (n as f64 - 0.5) * k_max / m as f64).collect(),
        }
    }

    pub fn index_map(&self) -> IndexMap {
        IndexMap { radial: self.radial_count(), l: self.l() }
    }

    pub(crate) fn check_order(&self, m: i64) -> Result<()> {
        if m.unsigned_abs() as usize >= self.l() {
            return Err(Error::IndexOutOfBand { ell: m.abs(), m, radial: 0 });
        }
        Ok(())
    }
}

/// Flat ordering (ℓ, m, q) → (ℓ² + ℓ + m)·R + q, where q is the radial degree p (R = P)
/// or the wavenumber slot n − 1 (R = M).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndexMap {
    radial: usize,
    l: usize,
}

impl IndexMap {
    pub fn new(radial: usize, l: usize) -> Self {
        Self { radial, l }
    }

    pub fn len(&self) -> usize {
        self.radial * self.l * self.l
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn radial_count(&self) -> usize {
        self.radial
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn flat(&self, ell: usize, m: i64, q: usize) -> Result<usize> {
        if ell >= self.l || m.unsigned_abs() as usize > ell || q >= self.radial {
            return Err(Error::IndexOutOfBand { ell: ell as i64, m, radial: q as i64 });
        }
        Ok(angular_index(ell, m) * self.radial + q)
    }

    pub fn locate(&self, flat: usize) -> (usize, i64, usize) {
        let a = flat / self.radial;
        let q = flat % self.radial;
        let ell = (a as f64).sqrt() as usize;
        let ell = if (ell + 1) * (ell + 1) <= a {
            ell + 1
        } else if ell * ell > a {
            ell - 1
        } else {
            ell
        };
        (ell, a as i64 - (ell * ell + ell) as i64, q)
    }

    /// Flat indices of the fixed-order block m, in local order (ℓ − |m|)·R + q.
    pub fn order_indices(&self, m: i64) -> Vec<usize> {
        let ma = m.unsigned_abs() as usize;
        (ma..self.l).flat_map(|ell| (0..self.radial).map(move |q| angular_index(ell, m) * self.radial + q)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum KernelData {
    Real(DMatrix<f64>),
    Complex(DMatrix<Complex64>),
}

/// Assembled kernel K_ij = ∫_R Z_i Z_j* (Fourier-Laguerre) or the W-symmetrized discretized
/// operator (Fourier-Bessel) over the flat indices `rows` of the band's IndexMap.
#[derive(Debug, Clone)]
pub struct KernelMatrix {
    pub(crate) data: KernelData,
    pub(crate) rows: Vec<usize>,
    pub(crate) band: SpectralBand,
    pub(crate) region: Region,
    pub(crate) weights: Option<Vec<f64>>,
    pub(crate) order: Option<i64>,
}

impl KernelMatrix {
    pub fn data(&self) -> &KernelData {
        &self.data
    }

    /// Flat band index of each row/column.
    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn band(&self) -> &SpectralBand {
        &self.band
    }

    pub fn index_map(&self) -> IndexMap {
        self.band.index_map()
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn domain(&self) -> KernelDomain {
        self.band.domain()
    }

    /// Fourier-Bessel symmetrization weights (Δk per row).
    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    /// Fixed order m of a block kernel.
    pub fn order(&self) -> Option<i64> {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        match &self.data {
            KernelData::Real(a) => Complex64::new(a[(i, j)], 0.0),
            KernelData::Complex(a) => a[(i, j)],
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.get(i, i).re).sum()
    }

    /// max|K − Kᴴ| / max|K|.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim();
        let mut scale = 0.0f64;
        let mut defect = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                scale = scale.max(a.norm());
                defect = defect.max((a - self.get(j, i).conj()).norm());
            }
        }
        if scale == 0.0 {
            0.0
        } else {
            defect / scale
        }
    }

    pub fn to_complex(&self) -> DMatrix<Complex64> {
        match &self.data {
            KernelData::Real(a) => a.map(|v| Complex64::new(v, 0.0)),
            KernelData::Complex(a) => a.clone(),
        }
    }

    /// Operator acting on coefficient vectors, Kᵀ: the concentration energy of f is fᴴ Kᵀ f.
    pub fn operator(&self) -> DMatrix<Complex64> {
        self.to_complex().transpose()
    }
}
