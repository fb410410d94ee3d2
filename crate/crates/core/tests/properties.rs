use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slepian_core::eigen::{rotate_eigenfunction, shannon_fl, solve_fl, HarmonicCoeffs};
use slepian_core::kernels::{kernel_fl_mask, SpectralBand};
use slepian_core::regions::{AngularMask, BallPoint, Orientation, Region};
use slepian_core::transforms::{analysis_fl, synthesis, SpatialGrid};
use std::f64::consts::{PI, TAU};

fn random_coeffs(band: SpectralBand, seed: u64) -> HarmonicCoeffs {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = (0..band.dim()).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    HarmonicCoeffs::from_values(band, v).unwrap()
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

prop_compose! {
    fn product_region()(r1 in 0.0..20.0f64, dr in 0.5..20.0f64, t1 in 0.0..2.5f64, dt in 0.1..1.5f64) -> Region {
        Region::product(r1, r1 + dr, t1, (t1 + dt).min(PI)).unwrap()
    }
}

prop_compose! {
    fn fl_band()(p in 1usize..7, l in 1usize..7) -> SpectralBand {
        SpectralBand::fourier_laguerre(p, l).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn spectrum_is_bounded_and_sums_to_the_trace(region in product_region(), band in fl_band()) {
        let basis = solve_fl(&region, &band).unwrap();
        let (lo, hi) = basis.raw_range();
        prop_assert!(lo >= -1e-9 && hi <= 1.0 + 1e-9);
        prop_assert_eq!(basis.len(), band.dim());
        prop_assert!(basis.eigenvalues().windows(2).all(|w| w[0] >= w[1]));
        let n = shannon_fl(&region, &band).unwrap();
        prop_assert!((basis.sum() - n).abs() <= 1e-9 * n.max(1.0), "{} vs {}", basis.sum(), n);
    }

    #[test]
    fn slepian_basis_is_complete(region in product_region(), band in fl_band(), theta0 in 0.0..PI, phi0 in 0.0..TAU, seed in any::<u64>()) {
        let region = region.oriented(theta0, phi0).unwrap();
        let basis = solve_fl(&region, &band).unwrap();
        let h = random_coeffs(band, seed);
        let ha = basis.project(&h).unwrap();
        let energy: f64 = ha.iter().map(|c| c.norm_sqr()).sum();
        prop_assert!((energy - h.energy()).abs() <= 1e-12 * h.energy());
        let back = basis.reconstruct(&ha, basis.len()).unwrap();
        prop_assert!(max_diff(back.values(), h.values()) <= 1e-12);
    }

    #[test]
    fn rotation_moves_the_function(theta0 in 0.0..PI, phi0 in 0.0..TAU, seed in any::<u64>(), r in 0.1..10.0f64, theta in 0.0..PI, phi in 0.0..TAU) {
        let band = SpectralBand::fourier_laguerre(3, 6).unwrap();
        let f = random_coeffs(band, seed);
        let g = rotate_eigenfunction(&f, theta0, phi0).unwrap();
        prop_assert!((g.energy() - f.energy()).abs() <= 1e-12 * f.energy());
        let x = BallPoint { r, theta, phi };
        let rx = Orientation::new(theta0, phi0).unwrap().rotate(x);
        let a = synthesis(&f, &[x]).unwrap()[0];
        let b = synthesis(&g, &[rx]).unwrap()[0];
        prop_assert!((a - b).norm() <= 1e-11 * (1.0 + a.norm()), "{} vs {}", a, b);
    }

    #[test]
    fn mask_kernels_are_hermitian_with_shannon_trace(cut in 0.2..2.8f64, width in 0.3..5.0f64, r1 in 0.0..10.0f64, band in fl_band()) {
        let mask = AngularMask::from_fn(band.l() + 2, |t, p| t < cut && p < width).unwrap();
        let region = Region::mask(mask, r1, r1 + 5.0).unwrap();
        let k = kernel_fl_mask(&band, &region).unwrap().dense().unwrap();
        prop_assert!(k.hermitian_defect() <= 1e-12);
        let n = shannon_fl(&region, &band).unwrap();
        prop_assert!((k.trace() - n).abs() <= 1e-9 * n.max(1.0));
    }

    #[test]
    fn disjoint_unions_are_additive(split in 0.3..2.8f64, r1 in 0.0..10.0f64, band in fl_band()) {
        let a = Region::product(r1, r1 + 4.0, 0.0, split).unwrap();
        let b = Region::product(r1, r1 + 4.0, split, PI).unwrap();
        let u = Region::union(vec![a.clone(), b.clone()]).unwrap();
        prop_assert!((u.volume() - a.volume() - b.volume()).abs() <= 1e-9 * u.volume());
        let (na, nb) = (shannon_fl(&a, &band).unwrap(), shannon_fl(&b, &band).unwrap());
        let basis = solve_fl(&u, &band).unwrap();
        prop_assert!((basis.sum() - na - nb).abs() <= 1e-9 * (na + nb).max(1.0));
    }

    #[test]
    fn analysis_inverts_synthesis(band in fl_band(), seed in any::<u64>()) {
        let h = random_coeffs(band, seed);
        let grid = SpatialGrid::for_analysis(&band).unwrap();
        let back = analysis_fl(&grid, &grid.synthesize(&h), &band).unwrap();
        prop_assert!(max_diff(back.values(), h.values()) <= 1e-10);
    }
}
