//! Browser bindings: Shannon-number curves, eigenvalue spectra and (r, θ) eigenfunction slices.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use slepian_core::eigen::{shannon_fb, shannon_fl, solve_fb, solve_fl, EigenResult};
use slepian_core::kernels::SpectralBand;
use slepian_core::regions::{BallPoint, Region};
use slepian_core::transforms::synthesis;
use wasm_bindgen::prelude::*;

type Res<T> = std::result::Result<T, String>;

fn js<T>(r: Res<T>) -> Result<T, JsError> {
    r.map_err(|e| JsError::new(&e))
}

fn region(r1: f64, r2: f64, theta1: f64, theta2: f64) -> Res<Region> {
    Region::product(r1, r2, theta1, theta2).map_err(|e| e.to_string())
}

/// `size` is P for the Fourier-Laguerre domain and K for Fourier-Bessel.
fn band(domain: &str, size: f64, l: usize, m: usize) -> Res<SpectralBand> {
    match domain {
        "fl" if size >= 1.0 && size.fract() == 0.0 => SpectralBand::fourier_laguerre(size as usize, l),
        "fl" => return Err(format!("P must be a positive integer, got {size}")),
        "fb" => SpectralBand::fourier_bessel(size, l, m),
        other => return Err(format!("unknown domain {other:?}, expected \"fl\" or \"fb\"")),
    }
    .map_err(|e| e.to_string())
}

pub fn shannon_curve_fl_impl(r1: f64, r2: f64, theta1: f64, theta2: f64, l: usize, p_max: usize) -> Res<Vec<f64>> {
    let region = region(r1, r2, theta1, theta2)?;
    (1..=p_max)
        .map(|p| {
            let band = SpectralBand::fourier_laguerre(p, l).map_err(|e| e.to_string())?;
            shannon_fl(&region, &band).map_err(|e| e.to_string())
        })
        .collect()
}

pub fn shannon_curve_fb_impl(r1: f64, r2: f64, theta1: f64, theta2: f64, l: usize, k_max: f64, steps: usize) -> Res<Vec<f64>> {
    let region = region(r1, r2, theta1, theta2)?;
    (1..=steps)
        .map(|i| {
            let band = SpectralBand::fourier_bessel(k_max * i as f64 / steps as f64, l, 1).map_err(|e| e.to_string())?;
            shannon_fb(&region, &band).map_err(|e| e.to_string())
        })
        .collect()
}

/// N_FL(P) for P = 1..=p_max.
#[wasm_bindgen]
pub fn shannon_curve_fl(r1: f64, r2: f64, theta1: f64, theta2: f64, l: usize, p_max: usize) -> Result<Vec<f64>, JsError> {
    js(shannon_curve_fl_impl(r1, r2, theta1, theta2, l, p_max))
}

/// N_FB(K) at K = k_max·i/steps for i = 1..=steps.
#[wasm_bindgen]
pub fn shannon_curve_fb(r1: f64, r2: f64, theta1: f64, theta2: f64, l: usize, k_max: f64, steps: usize) -> Result<Vec<f64>, JsError> {
    js(shannon_curve_fb_impl(r1, r2, theta1, theta2, l, k_max, steps))
}

/// A solved Slepian basis kept alive on the JS side so spectrum and slices share one solve.
#[wasm_bindgen]
pub struct Basis {
    inner: EigenResult,
}

impl Basis {
    #[allow(clippy::too_many_arguments)]
    pub fn solve(domain: &str, r1: f64, r2: f64, theta1: f64, theta2: f64, size: f64, l: usize, m: usize) -> Res<Self> {
        let region = region(r1, r2, theta1, theta2)?;
        let band = band(domain, size, l, m)?;
        let inner = match domain {
            "fl" => solve_fl(&region, &band),
            _ => solve_fb(&region, &band),
        }
        .map_err(|e| e.to_string())?;
        Ok(Basis { inner })
    }

    /// Re f on the φ = 0 half-plane, rows θ_i = π(i+½)/n_theta, columns r_j = r_max(j+½)/n_r.
    /// The global phase is fixed so the largest sample is real and positive.
    pub fn slice_impl(&self, rank: usize, n_r: usize, n_theta: usize, r_max: f64) -> Res<Vec<f64>> {
        if n_r == 0 || n_theta == 0 || !(r_max > 0.0) {
            return Err(format!("slice needs n_r, n_theta >= 1 and r_max > 0, got {n_r}, {n_theta}, {r_max}"));
        }
        let f = self.inner.eigenvector(rank).map_err(|e| e.to_string())?;
        let points: Vec<BallPoint> = (0..n_theta)
            .flat_map(|i| {
                let theta = std::f64::consts::PI * (i as f64 + 0.5) / n_theta as f64;
                (0..n_r).map(move |j| BallPoint { r: r_max * (j as f64 + 0.5) / n_r as f64, theta, phi: 0.0 })
            })
            .collect();
        let values = synthesis(&f, &points).map_err(|e| e.to_string())?;
        let peak = values.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap_or_default();
        let phase = if peak.norm() > 0.0 { peak.conj() / peak.norm() } else { 1.0.into() };
        Ok(values.iter().map(|v| (v * phase).re).collect())
    }
}

#[wasm_bindgen]
impl Basis {
    /// `domain` is "fl" (size = P) or "fb" (size = K, `m` radial nodes); region is [r1,r2]×[θ1,θ2]×[0,2π).
    #[wasm_bindgen(constructor)]
    #[allow(clippy::too_many_arguments)]
    pub fn new(domain: &str, r1: f64, r2: f64, theta1: f64, theta2: f64, size: f64, l: usize, m: usize) -> Result<Basis, JsError> {
        js(Self::solve(domain, r1, r2, theta1, theta2, size, l, m))
    }

    /// Eigenvalues in decreasing order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.inner.eigenvalues().to_vec()
    }

    /// Azimuthal order of each eigenfunction, aligned with `eigenvalues`.
    pub fn orders(&self) -> Vec<i32> {
        self.inner.meta().iter().map(|m| m.order.unwrap_or(0) as i32).collect()
    }

    pub fn shannon(&self) -> f64 {
        self.inner.shannon()
    }

    pub fn slice(&self, rank: usize, n_r: usize, n_theta: usize, r_max: f64) -> Result<Vec<f64>, JsError> {
        js(self.slice_impl(rank, n_r, n_theta, r_max))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn curves_grow_and_match_the_library() {
        let fl = shannon_curve_fl_impl(2.0, 12.0, 0.3, 1.2, 6, 8).unwrap();
        assert_eq!(fl.len(), 8);
        assert!(fl.windows(2).all(|w| w[1] >= w[0]));
        let region = Region::product(2.0, 12.0, 0.3, 1.2).unwrap();
        let direct = shannon_fl(&region, &SpectralBand::fourier_laguerre(8, 6).unwrap()).unwrap();
        assert!((fl[7] - direct).abs() < 1e-12 * direct);
        let fb = shannon_curve_fb_impl(2.0, 12.0, 0.3, 1.2, 6, 2.0, 4).unwrap();
        assert!(fb.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn basis_spectrum_and_slice() {
        let b = Basis::solve("fl", 2.0, 12.0, 0.3, 1.2, 5.0, 5, 0).unwrap();
        let ev = b.eigenvalues();
        assert_eq!(ev.len(), 125);
        assert_eq!(b.orders().len(), 125);
        assert!((ev.iter().sum::<f64>() - b.shannon()).abs() < 1e-9 * b.shannon());
        let s = b.slice_impl(0, 12, 9, 20.0).unwrap();
        assert_eq!(s.len(), 108);
        let peak = s.iter().copied().fold(f64::MIN, f64::max);
        assert!(peak > 0.0 && s.iter().all(|v| v.abs() <= peak + 1e-12));
        let fb = Basis::solve("fb", 2.0, 12.0, 0.3, 1.2, 1.0, 4, 20).unwrap();
        assert!(fb.eigenvalues()[0] <= 1.0);
    }

    #[test]
    fn bad_inputs_are_reported() {
        assert!(Basis::solve("xx", 2.0, 12.0, 0.3, 1.2, 5.0, 5, 0).is_err());
        assert!(Basis::solve("fl", 2.0, 12.0, 0.3, 1.2, 2.5, 5, 0).is_err());
        assert!(Basis::solve("fl", 12.0, 2.0, 0.3, 1.2, 5.0, 5, 0).is_err());
        assert!(shannon_curve_fl_impl(1.0, 2.0, 0.0, PI + 1.0, 3, 2).is_err());
        let b = Basis::solve("fl", 2.0, 12.0, 0.3, 1.2, 3.0, 3, 0).unwrap();
        assert!(b.slice_impl(27, 4, 4, 10.0).is_err());
        assert!(b.slice_impl(0, 0, 4, 10.0).is_err());
    }
}
