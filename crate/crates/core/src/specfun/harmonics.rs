use crate::error::{domain, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Normalized associated Legendre values λ_ℓm(θ) = Y_ℓm(θ, 0) for 0 ≤ m ≤ ℓ < L,
/// Condon-Shortley phase included.
#[derive(Debug, Clone)]
pub struct LegendreTable {
    l: usize,
    values: Vec<f64>,
}

impl LegendreTable {
    pub fn new(l: usize, theta: f64) -> Self {
        let mut values = vec![0.0; l * (l + 1) / 2];
        if l == 0 {
            return Self { l, values };
        }
        let (s, x) = theta.sin_cos();
        let mut pmm = (0.25 / PI).sqrt();
        for m in 0..l {
            if m > 0 {
                pmm *= -((2 * m + 1) as f64 / (2 * m) as f64).sqrt() * s;
            }
            values[tri(m, m)] = pmm;
            if m + 1 < l {
                values[tri(m + 1, m)] = ((2 * m + 3) as f64).sqrt() * x * pmm;
            }
            for ell in m + 2..l {
                let (lf, mf) = (ell as f64, m as f64);
                let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
                let b = (((lf - 1.0).powi(2) - mf * mf) / (4.0 * (lf - 1.0).powi(2) - 1.0)).sqrt();
                values[tri(ell, m)] = a * (x * values[tri(ell - 1, m)] - b * values[tri(ell - 2, m)]);
            }
        }
        Self { l, values }
    }

    pub fn band_limit(&self) -> usize {
        self.l
    }

    /// λ_ℓm for m ≥ 0; negative m uses λ_{ℓ,−m} = (−1)^m λ_ℓm.
    #[inline]
    pub fn get(&self, ell: usize, m: i64) -> f64 {
        let v = self.values[tri(ell, m.unsigned_abs() as usize)];
        if m < 0 && m % 2 != 0 {
            -v
        } else {
            v
        }
    }
}

#[inline]
fn tri(ell: usize, m: usize) -> usize {
    ell * (ell + 1) / 2 + m
}

/// Orthonormal complex spherical harmonic Y_ℓm(θ, φ) with Condon-Shortley phase.
pub fn spherical_harmonic(ell: i64, m: i64, theta: f64, phi: f64) -> Result<Complex64> {
    if ell < 0 || m.abs() > ell {
        return domain(format!("spherical_harmonic: invalid (ell, m) = ({ell}, {m})"));
    }
    if !(0.0..=PI).contains(&theta) {
        return domain(format!("spherical_harmonic: theta = {theta} outside [0, pi]"));
    }
    let table = LegendreTable::new(ell as usize + 1, theta);
    Ok(table.get(ell as usize, m) * Complex64::from_polar(1.0, m as f64 * phi))
}

/// Legendre polynomial P_j(x) for j ≥ 0.
pub fn legendre_p(j: usize, x: f64) -> f64 {
    let (mut p0, mut p1) = (1.0, x);
    if j == 0 {
        return 1.0;
    }
    for k in 2..=j {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    p1
}
