//! Coefficient vectors over a spectral band.

use crate::error::{Error, Result};
use crate::kernels::{rotation_blocks, IndexMap, SpectralBand};
use crate::regions::Orientation;
use num_complex::Complex64;

/// Flat coefficient vector f_{ℓmp} (Fourier-Laguerre) or samples f_ℓm(k_n) (Fourier-Bessel).
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicCoeffs {
    values: Vec<Complex64>,
    band: SpectralBand,
}

impl HarmonicCoeffs {
    pub fn zeros(band: SpectralBand) -> Self {
        Self { values: vec![Complex64::new(0.0, 0.0); band.dim()], band }
    }

    pub fn from_values(band: SpectralBand, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != band.dim() {
            return Err(Error::BandMismatch(format!("{} coefficients for a band of dimension {}", values.len(), band.dim())));
        }
        Ok(Self { values, band })
    }

    pub fn band(&self) -> &SpectralBand {
        &self.band
    }

    pub fn index_map(&self) -> IndexMap {
        self.band.index_map()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, ell: usize, m: i64, q: usize) -> Result<Complex64> {
        Ok(self.values[self.index_map().flat(ell, m, q)?])
    }

    pub fn set(&mut self, ell: usize, m: i64, q: usize, v: Complex64) -> Result<()> {
        let i = self.index_map().flat(ell, m, q)?;
        self.values[i] = v;
        Ok(())
    }

    pub(crate) fn check_same_band(&self, other: &SpectralBand) -> Result<()> {
        if self.band != *other {
            return Err(Error::BandMismatch(format!("{:?} vs {:?}", self.band, other)));
        }
        Ok(())
    }

    /// Discrete L² inner product ⟨f, g⟩ = Σ w f_i g_i*, w = 1 (Fourier-Laguerre) or Δk (Fourier-Bessel).
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_same_band(&other.band)?;
        let w = self.band.radial_weight();
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| a * b.conj()).sum::<Complex64>() * w)
    }

    /// Unweighted coefficient-space product 𝐟ᴴ𝐠 = Σ f_i* g_i.
    pub fn dot(&self, other: &Self) -> Result<Complex64> {
        self.check_same_band(&other.band)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| a.conj() * b).sum())
    }

    /// Weighted energy ⟨f, f⟩.
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.band.radial_weight()
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self { values: self.values.iter().map(|v| v * s).collect(), band: self.band }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_band(&other.band)?;
        Ok(Self { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(), band: self.band })
    }

    /// Apply the rotation R_z(φ0)R_y(θ0) degree by degree: f'_ℓm = Σ_n e^{−imφ0} d^ℓ_mn(θ0) f_ℓn
    /// (or its inverse).
    pub(crate) fn rotated(&self, orientation: Orientation, inverse: bool) -> Self {
        let (r, l) = (self.band.radial_count(), self.band.l());
        let blocks = rotation_blocks(l, orientation);
        let mut out = vec![Complex64::new(0.0, 0.0); self.values.len()];
        for (ell, d) in blocks.iter().enumerate() {
            let base = ell * ell * r;
            let w = 2 * ell + 1;
            for a in 0..w {
                for b in 0..w {
                    let c = if inverse { d[(b, a)].conj() } else { d[(a, b)] };
                    if c.norm() == 0.0 {
                        continue;
                    }
                    for q in 0..r {
                        out[base + a * r + q] += c * self.values[base + b * r + q];
                    }
                }
            }
        }
        Self { values: out, band: self.band }
    }
}
