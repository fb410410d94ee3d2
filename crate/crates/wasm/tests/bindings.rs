use slepian_core::eigen::{solve_fb, EigenResult};
use slepian_core::kernels::SpectralBand;
use slepian_core::regions::Region;
use slepian_wasm::{shannon_curve_fb_impl, shannon_curve_fl_impl, Basis};
use std::f64::consts::PI;

const R: (f64, f64, f64, f64) = (15.0, 25.0, PI / 8.0, 3.0 * PI / 8.0);

#[test]
fn fl_curve_reaches_the_product_shannon_number() {
    let curve = shannon_curve_fl_impl(R.0, R.1, R.2, R.3, 20, 30).unwrap();
    // N_L = 108.2392..., and the radial factor at P=30 is 3.6577...
    assert!((curve[29] - 395.911860).abs() < 1e-5, "{}", curve[29]);
}

#[test]
fn fb_curve_scales_like_k_cubed_at_small_k() {
    let c = shannon_curve_fb_impl(R.0, R.1, R.2, R.3, 20, 0.2, 2).unwrap();
    assert!(c[1] > c[0] && c[1] / c[0] < 8.5);
}

#[test]
fn fb_basis_matches_the_library_solve() {
    let basis = Basis::solve("fb", 2.0, 10.0, 0.2, 1.4, 0.8, 6, 24).unwrap();
    let direct: EigenResult =
        solve_fb(&Region::product(2.0, 10.0, 0.2, 1.4).unwrap(), &SpectralBand::fourier_bessel(0.8, 6, 24).unwrap()).unwrap();
    assert_eq!(basis.eigenvalues(), direct.eigenvalues());
    assert_eq!(basis.orders().len(), direct.len());
    assert!((basis.shannon() - direct.shannon()).abs() < 1e-12 * direct.shannon());
}

#[test]
fn slice_is_concentrated_in_the_region() {
    let (r1, r2, t1, t2) = (4.0, 10.0, 0.4, 1.2);
    let basis = Basis::solve("fl", r1, r2, t1, t2, 10.0, 10, 0).unwrap();
    let (n_r, n_t, r_max) = (60, 40, 20.0);
    let s = basis.slice_impl(0, n_r, n_t, r_max).unwrap();
    let (mut inside, mut total) = (0.0, 0.0);
    for i in 0..n_t {
        let theta = PI * (i as f64 + 0.5) / n_t as f64;
        for j in 0..n_r {
            let r = r_max * (j as f64 + 0.5) / n_r as f64;
            // Volume weight r² sin θ on the half-plane slice.
            let w = s[i * n_r + j].powi(2) * r * r * theta.sin();
            total += w;
            if (r1..r2).contains(&r) && (t1..t2).contains(&theta) {
                inside += w;
            }
        }
    }
    assert!(inside / total > 0.8, "{}", inside / total);
}
