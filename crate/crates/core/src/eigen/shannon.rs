//! Spherical Shannon numbers from trace integrals, independent of any eigen-solve.

use crate::error::{domain, Error, Result};
use crate::kernels::{fb_radial_rule, fl_radial_rule, SpectralBand};
use crate::regions::{solid_angle, ProductRegion, Region, RegionShape};
use crate::specfun::{laguerre_k_upto, spherical_bessel_j_upto, QuadratureRule};
use std::f64::consts::PI;

/// Σ_p ∫_{R1}^{R2} r² K_p(r)² dr by quadrature.
fn radial_fl(p: usize, r1: f64, r2: f64) -> f64 {
    if r1 == r2 {
        return 0.0;
    }
    let rule = fl_radial_rule(p, r1, r2);
    rule.integrate(|r| r * r * laguerre_k_upto(p, r).iter().map(|k| k * k).sum::<f64>())
}

/// Σ_ℓ (2ℓ+1) (j_ℓ² − j_{ℓ−1} j_{ℓ+1})(x), with j₋₁(x) = cos x / x.
fn bessel_density(l: usize, x: f64) -> f64 {
    let j = spherical_bessel_j_upto(l, x);
    (0..l)
        .map(|ell| {
            let jm = if ell == 0 { x.cos() / x } else { j[ell - 1] };
            (2 * ell + 1) as f64 * (j[ell] * j[ell] - jm * j[ell + 1])
        })
        .sum()
}

fn radial_fb(k: f64, l: usize, r1: f64, r2: f64) -> f64 {
    if r1 == r2 {
        return 0.0;
    }
    let rule = fb_radial_rule(k, r1, r2);
    rule.integrate(|r| r * r * bessel_density(l, k * r))
}

/// N_PL = L²/(4π) Σ_p ∫_R K_p(r)² dv.
pub fn shannon_fl(region: &Region, band: &SpectralBand) -> Result<f64> {
    let SpectralBand::FourierLaguerre { p, l } = *band else {
        return Err(Error::BandMismatch("shannon_fl needs a Fourier-Laguerre band".into()));
    };
    let ang = (l * l) as f64 / (4.0 * PI);
    let product = |pr: &ProductRegion| radial_fl(p, pr.r1, pr.r2) * solid_angle(&pr.angular);
    let integral = match region.shape() {
        RegionShape::Product(pr) => product(pr),
        RegionShape::Union(prs) => prs.iter().map(product).sum(),
        RegionShape::Azimuthal(a) => {
            grid_integral(a.radial(), a.polar(), |ir, ix| a.indicator(ir, ix), |r| laguerre_k_upto(p, r).iter().map(|k| k * k).sum())
        }
    };
    Ok(ang * integral)
}

/// Ñ_KL = Σ_ℓ (2ℓ+1) K³/(4π²) ∫_R (j_ℓ² − j_{ℓ−1} j_{ℓ+1})(Kr) dv, analytic in k.
pub fn shannon_fb(region: &Region, band: &SpectralBand) -> Result<f64> {
    let SpectralBand::FourierBessel { k_max, l, .. } = *band else {
        return Err(Error::BandMismatch("shannon_fb needs a Fourier-Bessel band".into()));
    };
    let pre = k_max.powi(3) / (4.0 * PI * PI);
    let product = |pr: &ProductRegion| -> Result<f64> {
        if pr.r2.is_infinite() {
            return domain("Fourier-Bessel Shannon number needs a finite outer radius");
        }
        Ok(radial_fb(k_max, l, pr.r1, pr.r2) * solid_angle(&pr.angular))
    };
    let integral = match region.shape() {
        RegionShape::Product(pr) => product(pr)?,
        RegionShape::Union(prs) => prs.iter().map(product).sum::<Result<f64>>()?,
        RegionShape::Azimuthal(a) => grid_integral(a.radial(), a.polar(), |ir, ix| a.indicator(ir, ix), |r| bessel_density(l, k_max * r)),
    };
    Ok(pre * integral)
}

fn grid_integral(
    radial: &QuadratureRule,
    polar: &QuadratureRule,
    inside: impl Fn(usize, usize) -> bool,
    density: impl Fn(f64) -> f64,
) -> f64 {
    let mut acc = 0.0;
    for (ir, (&r, &wr)) in radial.nodes().iter().zip(radial.weights()).enumerate() {
        let d = density(r);
        for (ix, &wx) in polar.weights().iter().enumerate() {
            if inside(ir, ix) {
                acc += wr * r * r * d * wx * 2.0 * PI;
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::e_matrix;

    #[test]
    fn full_ball_is_band_dimension() {
        let band = SpectralBand::fourier_laguerre(7, 5).unwrap();
        let n = shannon_fl(&Region::full_ball(), &band).unwrap();
        assert!((n - 175.0).abs() < 1e-10, "{n}");
    }

    #[test]
    fn product_factorizes() {
        let band = SpectralBand::fourier_laguerre(30, 20).unwrap();
        let region = Region::product(15.0, 25.0, PI / 8.0, 3.0 * PI / 8.0).unwrap();
        let n = shannon_fl(&region, &band).unwrap();
        let np = e_matrix(30, 15.0, 25.0).unwrap().trace();
        let nl = 200.0 * ((PI / 8.0).cos() - (3.0 * PI / 8.0).cos());
        assert!((n - np * nl).abs() < 1e-10 * n);
    }

    #[test]
    fn fb_scales_with_volume_for_small_regions() {
        let band = SpectralBand::fourier_bessel(1.4, 20, 70).unwrap();
        let a = shannon_fb(&Region::product(20.0, 20.5, 0.5, 0.6).unwrap(), &band).unwrap();
        let b = shannon_fb(&Region::product(20.0, 20.5, 0.5, 0.7).unwrap(), &band).unwrap();
        let ratio_vol = Region::product(20.0, 20.5, 0.5, 0.7).unwrap().volume() / Region::product(20.0, 20.5, 0.5, 0.6).unwrap().volume();
        assert!((b / a / ratio_vol - 1.0).abs() < 0.05);
    }

    #[test]
    fn fb_monotone_in_k() {
        let region = Region::product(15.0, 25.0, PI / 8.0, 3.0 * PI / 8.0).unwrap();
        let mut last = 0.0;
        for i in 1..=14 {
            let band = SpectralBand::fourier_bessel(0.1 * i as f64, 20, 10).unwrap();
            let n = shannon_fb(&region, &band).unwrap();
            assert!(n > last);
            last = n;
        }
    }
}
