//! Angular couplings: G^m over a colatitude band and G_mask over a pixel mask.

use crate::error::{domain, Error, Result};
use crate::regions::AngularMask;
use crate::specfun::{legendre_p, wigner_3j, LegendreTable, QuadratureRule};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

fn check(m: i64, l: usize, theta1: f64, theta2: f64) -> Result<()> {
    if m.unsigned_abs() as usize >= l {
        return domain(format!("G_matrix: need |m| < L, got m={m}, L={l}"));
    }
    if !(0.0..=PI).contains(&theta1) || !(0.0..=PI).contains(&theta2) || !(theta2 > theta1) {
        return domain(format!("G_matrix: need 0 <= theta1 < theta2 <= pi, got [{theta1}, {theta2}]"));
    }
    Ok(())
}

/// G^m_{ℓℓ'} = ∫_band Y_ℓm Y*_ℓ'm dΩ for ℓ, ℓ' ∈ [|m|, L), via the Wigner-3j expansion
///   (−1)^m √((2ℓ+1)(2ℓ'+1))/2 Σ_j (ℓ j ℓ'; 0 0 0)(ℓ j ℓ'; m 0 −m)
///     · [P_{j−1}(c2) + P_{j+1}(c1) − P_{j+1}(c2) − P_{j−1}(c1)],  c = cos θ, P_{−1} ≡ 1.
pub fn g_matrix(m: i64, l: usize, theta1: f64, theta2: f64) -> Result<DMatrix<f64>> {
    check(m, l, theta1, theta2)?;
    let ma = m.abs();
    let n = l - ma as usize;
    let (c1, c2) = (theta1.cos(), theta2.cos());
    let jmax = 2 * l;
    let p = |j: i64, x: f64| if j < 0 { 1.0 } else { legendre_p(j as usize, x) };
    let diffs: Vec<f64> = (0..=jmax as i64).map(|j| p(j - 1, c2) + p(j + 1, c1) - p(j + 1, c2) - p(j - 1, c1)).collect();
    let sign = if ma % 2 == 0 { 1.0 } else { -1.0 };
    let mut g = DMatrix::zeros(n, n);
    for a in 0..n {
        let ell = ma + a as i64;
        for b in a..n {
            let ellp = ma + b as i64;
            let mut s = 0.0;
            for j in (ellp - ell)..=(ell + ellp) {
                let w0 = wigner_3j(ell, j, ellp, 0, 0, 0);
                if w0 == 0.0 {
                    continue;
                }
                s += w0 * wigner_3j(ell, j, ellp, ma, 0, -ma) * diffs[j as usize];
            }
            let v = sign * (((2 * ell + 1) * (2 * ellp + 1)) as f64).sqrt() / 2.0 * s;
            g[(a, b)] = v;
            g[(b, a)] = v;
        }
    }
    Ok(g)
}

/// G^m by Gauss-Legendre quadrature in cos θ; independent oracle for [`g_matrix`].
pub fn g_matrix_quadrature(m: i64, l: usize, theta1: f64, theta2: f64) -> Result<DMatrix<f64>> {
    check(m, l, theta1, theta2)?;
    let ma = m.unsigned_abs() as usize;
    let n = l - ma;
    let rule = QuadratureRule::gauss_legendre(l + 2, theta2.cos(), theta1.cos());
    let mut g = DMatrix::zeros(n, n);
    for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
        let t = LegendreTable::new(l, x.clamp(-1.0, 1.0).acos());
        for a in 0..n {
            for b in 0..n {
                g[(a, b)] += 2.0 * PI * w * t.get(ma + a, m) * t.get(ma + b, m);
            }
        }
    }
    Ok(g)
}

/// Flat angular index ℓ² + ℓ + m.
#[inline]
pub fn angular_index(ell: usize, m: i64) -> usize {
    ((ell * ell + ell) as i64 + m) as usize
}

/// G_mask_{(ℓm),(ℓ'm')} = Σ_pixels w I Y_ℓm Y*_ℓ'm' over all ℓ, ℓ' < L (L² × L², Hermitian).
pub fn g_mask(mask: &AngularMask, l: usize) -> Result<DMatrix<Complex64>> {
    if mask.l_grid() < l {
        return Err(Error::BandMismatch(format!("mask grid band-limit {} < L = {l}", mask.l_grid())));
    }
    let n = l * l;
    let nphi = mask.n_phi();
    let dmax = 2 * l as i64 - 2;
    let dphi = 2.0 * PI / nphi as f64;
    let mut g = DMatrix::<Complex64>::zeros(n, n);
    for (ring, (&theta, &wt)) in mask.thetas().iter().zip(mask.theta_weights()).enumerate() {
        // S(d) = Σ_k Δφ I_k e^{i d φ_k}
        let s: Vec<Complex64> = (-dmax..=dmax)
            .map(|d| (0..nphi).filter(|&k| mask.indicator(ring, k)).map(|k| Complex64::from_polar(dphi, d as f64 * k as f64 * dphi)).sum())
            .collect();
        if s.iter().all(|v| v.norm() == 0.0) {
            continue;
        }
        let t = LegendreTable::new(l, theta);
        for ell in 0..l {
            for m in -(ell as i64)..=ell as i64 {
                let a = t.get(ell, m) * wt;
                let i = angular_index(ell, m);
                for ellp in 0..l {
                    for mp in -(ellp as i64)..=ellp as i64 {
                        let j = angular_index(ellp, mp);
                        g[(i, j)] += a * t.get(ellp, mp) * s[(m - mp + dmax) as usize];
                    }
                }
            }
        }
    }
    Ok(g)
}

/// Single G_mask entry ∫_mask Y_ℓm Y*_ℓ'm' dΩ by direct pixel sum.
pub fn g_mask_entry(mask: &AngularMask, ell: usize, m: i64, ellp: usize, mp: i64) -> Complex64 {
    let l = ell.max(ellp) + 1;
    let dphi = 2.0 * PI / mask.n_phi() as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for (ring, (&theta, &wt)) in mask.thetas().iter().zip(mask.theta_weights()).enumerate() {
        let t = LegendreTable::new(l, theta);
        let a = t.get(ell, m) * t.get(ellp, mp) * wt;
        for k in (0..mask.n_phi()).filter(|&k| mask.indicator(ring, k)) {
            acc += Complex64::from_polar(a * dphi, (m - mp) as f64 * k as f64 * dphi);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    const T1: f64 = PI / 8.0;
    const T2: f64 = 3.0 * PI / 8.0;

    #[test]
    fn trivial_cases() {
        let g = g_matrix(0, 1, 0.0, PI).unwrap();
        assert!((g[(0, 0)] - 1.0).abs() < 1e-15);
        let g = g_matrix(0, 3, T1, T2).unwrap();
        assert!((g[(0, 0)] - (T1.cos() - T2.cos()) / 2.0).abs() < 1e-15);
        assert!(g_matrix(3, 3, T1, T2).is_err());
        assert!(g_matrix(0, 3, T2, T1).is_err());
    }

    #[test]
    fn wigner_form_matches_quadrature() {
        for m in 0..20i64 {
            let a = g_matrix(m, 20, T1, T2).unwrap();
            let b = g_matrix_quadrature(m, 20, T1, T2).unwrap();
            assert!((&a - &b).amax() < 1e-12, "m={m} diff={}", (&a - &b).amax());
        }
    }

    #[test]
    fn plus_minus_m_symmetry() {
        for m in 1..6i64 {
            assert_eq!(g_matrix(m, 12, 0.3, 1.2).unwrap(), g_matrix(-m, 12, 0.3, 1.2).unwrap());
        }
    }

    #[test]
    fn angular_shannon_number() {
        let l = 20usize;
        let mut n = 0.0;
        for m in 0..l as i64 {
            let t = g_matrix(m, l, T1, T2).unwrap().trace();
            n += if m == 0 { t } else { 2.0 * t };
        }
        let closed = (l * l) as f64 / 2.0 * (T1.cos() - T2.cos());
        assert!((n - closed).abs() < 1e-9);
        assert!((n - 108.24).abs() < 0.01);
    }

    #[test]
    fn full_sky_mask_is_identity() {
        let mask = AngularMask::full_sky(10).unwrap();
        let g = g_mask(&mask, 10).unwrap();
        let eye = DMatrix::<Complex64>::identity(100, 100);
        assert!((g - eye).iter().map(|v| v.norm()).fold(0.0, f64::max) < 1e-12);
        assert!(g_mask(&mask, 11).is_err());
    }

    #[test]
    fn band_mask_matches_g_matrix() {
        let l = 12usize;
        let mask = AngularMask::band(l, T1, T2).unwrap();
        let g = g_mask(&mask, l).unwrap();
        let idx = |ell: usize, m: i64| ((ell * ell + ell) as i64 + m) as usize;
        for ell in 0..l {
            for m in -(ell as i64)..=ell as i64 {
                for ellp in 0..l {
                    for mp in -(ellp as i64)..=ellp as i64 {
                        let v = g[(idx(ell, m), idx(ellp, mp))];
                        if m != mp {
                            assert!(v.norm() < 1e-10);
                        }
                    }
                }
            }
        }
        for m in -(l as i64 - 1)..l as i64 {
            let gm = g_matrix(m, l, T1, T2).unwrap();
            let ma = m.unsigned_abs() as usize;
            for a in 0..l - ma {
                for b in 0..l - ma {
                    let v = g[(idx(ma + a, m), idx(ma + b, m))];
                    assert!((v.re - gm[(a, b)]).abs() < 1e-10 && v.im.abs() < 1e-10);
                }
            }
        }
    }
}
