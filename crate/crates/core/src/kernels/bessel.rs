//! Radial Fourier-Bessel coupling C_{ℓℓ'}(k,k') = (2/π) k k' ∫_{R1}^{R2} r² j_ℓ(kr) j_ℓ'(k'r) dr.

use crate::error::{domain, Result};
use crate::specfun::{spherical_bessel_j_upto, QuadratureRule};
use nalgebra::DMatrix;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Gauss-Legendre nodes per radial panel.
const PANEL_NODES: usize = 10;
/// Relative |k − k'| below which the ℓ = ℓ' cross formula loses digits to cancellation.
const NEAR_DIAGONAL: f64 = 1e-3;

/// Panel rule resolving j_ℓ(kr) oscillation up to wavenumber `k_max` on [r1, r2]:
/// max(32, ⌈4 k_max R2/π⌉) panels of 10 Gauss-Legendre nodes.
pub fn fb_radial_rule(k_max: f64, r1: f64, r2: f64) -> QuadratureRule {
    let panels = ((4.0 * k_max * r2 / PI).ceil() as usize).max(32);
    QuadratureRule::composite_gauss_legendre(panels, PANEL_NODES, r1, r2)
}

fn check(ell: i64, ellp: i64, k: f64, kp: f64, r1: f64, r2: f64) -> Result<()> {
    if ell < 0 || ellp < 0 {
        return domain(format!("C_kernel: negative degree ({ell}, {ellp})"));
    }
    if !(k > 0.0) || !(kp > 0.0) || !k.is_finite() || !kp.is_finite() {
        return domain(format!("C_kernel: wavenumbers must be positive, got ({k}, {kp})"));
    }
    if !(r1 >= 0.0) || !r2.is_finite() || !(r2 >= r1) {
        return domain(format!("C_kernel: need 0 <= R1 <= R2 < inf, got [{r1}, {r2}]"));
    }
    Ok(())
}

/// C_{ℓℓ'}(k, k'): closed forms when ℓ = ℓ', panel quadrature otherwise.
pub fn c_kernel(ell: i64, ellp: i64, k: f64, kp: f64, r1: f64, r2: f64) -> Result<f64> {
    check(ell, ellp, k, kp, r1, r2)?;
    if r1 == r2 {
        return Ok(0.0);
    }
    if ell == ellp {
        let l = ell as usize;
        if k == kp {
            return Ok(c_equal(l, k, r1, r2));
        }
        if (k - kp).abs() >= NEAR_DIAGONAL * k.max(kp) {
            return Ok(c_cross(l, k, kp, r1, r2));
        }
    }
    Ok(c_kernel_quadrature(ell, ellp, k, kp, r1, r2))
}

/// Quadrature oracle for C, independent of the closed forms.
pub fn c_kernel_quadrature(ell: i64, ellp: i64, k: f64, kp: f64, r1: f64, r2: f64) -> f64 {
    if r1 == r2 {
        return 0.0;
    }
    let rule = fb_radial_rule(k.max(kp), r1, r2);
    let (l, lp) = (ell as usize, ellp as usize);
    rule.nodes()
        .iter()
        .zip(rule.weights())
        .map(|(&r, &w)| w * r * r * spherical_bessel_j_upto(l, k * r)[l] * spherical_bessel_j_upto(lp, kp * r)[lp])
        .sum::<f64>()
        * 2.0
        / PI
        * k
        * kp
}

/// (j_{ℓ−1}(x), j_ℓ(x), j_{ℓ+1}(x)) with j₋₁(x) = cos x / x.
fn triple(l: usize, x: f64) -> (f64, f64, f64) {
    let j = spherical_bessel_j_upto(l + 1, x);
    let jm = if l == 0 { x.cos() / x } else { j[l - 1] };
    (jm, j[l], j[l + 1])
}

/// k = k': (k²/π)[T(ℓ,k,R2) − T(ℓ,k,R1)], T = R³(j_ℓ² − j_{ℓ−1} j_{ℓ+1})(kR).
fn c_equal(l: usize, k: f64, r1: f64, r2: f64) -> f64 {
    let t = |r: f64| {
        if r == 0.0 {
            return 0.0;
        }
        let (jm, j, jp) = triple(l, k * r);
        r.powi(3) * (j * j - jm * jp)
    };
    k * k / PI * (t(r2) - t(r1))
}

/// k ≠ k': (2kk'/π)/(k²−k'²) [r²(k' j_{ℓ−1}(k'r) j_ℓ(kr) − k j_{ℓ−1}(kr) j_ℓ(k'r))]_{R1}^{R2}.
fn c_cross(l: usize, k: f64, kp: f64, r1: f64, r2: f64) -> f64 {
    let f = |r: f64| {
        if r == 0.0 {
            return 0.0;
        }
        let (jm_k, j_k, _) = triple(l, k * r);
        let (jm_kp, j_kp, _) = triple(l, kp * r);
        r * r * (kp * jm_kp * j_k - k * jm_k * j_kp)
    };
    2.0 * k * kp / PI / (k * k - kp * kp) * (f(r2) - f(r1))
}

/// All C_{ℓℓ'}(k_n, k_n') for ℓ, ℓ' < L over one wavenumber grid and radial interval.
/// Diagonal-degree blocks use the closed forms; off-diagonal blocks come from one panel
/// quadrature shared through tabulated Bessel values.
#[derive(Debug, Clone)]
pub struct CTable {
    l: usize,
    blocks: Vec<DMatrix<f64>>,
}

impl CTable {
    pub fn new(l: usize, ks: &[f64], r1: f64, r2: f64) -> Result<Self> {
        let k_max = ks.iter().copied().fold(0.0, f64::max);
        check(0, 0, k_max.max(f64::MIN_POSITIVE), k_max.max(f64::MIN_POSITIVE), r1, r2)?;
        let nk = ks.len();
        if r1 == r2 || nk == 0 {
            let blocks = vec![DMatrix::zeros(nk, nk); l * (l + 1) / 2];
            return Ok(Self { l, blocks });
        }
        let rule = fb_radial_rule(k_max, r1, r2);
        let nq = rule.len();
        // tab[ℓ][(n, q)] = √(w_q) r_q j_ℓ(k_n r_q)
        let rows: Vec<Vec<f64>> = ks
            .par_iter()
            .map(|&k| {
                let mut row = vec![0.0; l * nq];
                for (q, (&r, &w)) in rule.nodes().iter().zip(rule.weights()).enumerate() {
                    let j = spherical_bessel_j_upto(l.saturating_sub(1), k * r);
                    let s = w.sqrt() * r;
                    for ell in 0..l {
                        row[ell * nq + q] = s * j[ell];
                    }
                }
                row
            })
            .collect();
        let tab: Vec<DMatrix<f64>> = (0..l).map(|ell| DMatrix::from_fn(nk, nq, |n, q| rows[n][ell * nq + q])).collect();
        let pairs: Vec<(usize, usize)> = (0..l).flat_map(|a| (a..l).map(move |b| (a, b))).collect();
        let blocks: Vec<DMatrix<f64>> = pairs
            .par_iter()
            .map(|&(a, b)| {
                let mut c = &tab[a] * tab[b].transpose();
                for n in 0..nk {
                    for np in 0..nk {
                        c[(n, np)] *= 2.0 / PI * ks[n] * ks[np];
                    }
                }
                if a == b {
                    for n in 0..nk {
                        for np in 0..nk {
                            let (k, kp) = (ks[n], ks[np]);
                            if k == kp {
                                c[(n, np)] = c_equal(a, k, r1, r2);
                            } else if (k - kp).abs() >= NEAR_DIAGONAL * k.max(kp) {
                                c[(n, np)] = c_cross(a, k, kp, r1, r2);
                            }
                        }
                    }
                }
                c
            })
            .collect();
        Ok(Self { l, blocks })
    }

    /// Block C_{ℓℓ'} (rows k_n, columns k_n'); C_{ℓ'ℓ} = C_{ℓℓ'}ᵀ.
    pub fn block(&self, ell: usize, ellp: usize) -> DMatrix<f64> {
        if ell <= ellp {
            self.blocks[self.pair_index(ell, ellp)].clone()
        } else {
            self.blocks[self.pair_index(ellp, ell)].transpose()
        }
    }

    pub fn get(&self, ell: usize, ellp: usize, n: usize, np: usize) -> f64 {
        if ell <= ellp {
            self.blocks[self.pair_index(ell, ellp)][(n, np)]
        } else {
            self.blocks[self.pair_index(ellp, ell)][(np, n)]
        }
    }

    fn pair_index(&self, a: usize, b: usize) -> usize {
        // Row-major upper triangle including the diagonal.
        a * (2 * self.l + 1 - a) / 2 + (b - a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_l0_equal_k() {
        let (k, r1, r2) = (0.9f64, 15.0f64, 25.0f64);
        let want = 2.0 / PI * ((r2 - r1) / 2.0 - ((2.0 * k * r2).sin() - (2.0 * k * r1).sin()) / (4.0 * k));
        let got = c_kernel(0, 0, k, k, r1, r2).unwrap();
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
    }

    #[test]
    fn closed_forms_match_quadrature() {
        let cases = [(2, 0.8, 1.1), (0, 0.3, 1.7), (5, 1.3, 1.3), (12, 1.9, 0.4), (19, 1.4, 1.39)];
        for (l, k, kp) in cases {
            let a = c_kernel(l, l, k, kp, 15.0, 25.0).unwrap();
            let b = c_kernel_quadrature(l, l, k, kp, 15.0, 25.0);
            assert!((a - b).abs() < 1e-9, "l={l} k={k} k'={kp}: {a} vs {b}");
        }
    }

    #[test]
    fn degenerate_and_invalid() {
        assert_eq!(c_kernel(1, 2, 0.5, 0.7, 3.0, 3.0).unwrap(), 0.0);
        assert!(c_kernel(-1, 0, 0.5, 0.7, 1.0, 3.0).is_err());
        assert!(c_kernel(0, 0, 0.0, 0.7, 1.0, 3.0).is_err());
        assert!(c_kernel(0, 0, 0.5, 0.7, 3.0, 1.0).is_err());
    }

    #[test]
    fn table_matches_pointwise() {
        let ks: Vec<f64> = (0..9).map(|n| (n as f64 + 0.5) * 0.2).collect();
        let t = CTable::new(5, &ks, 2.0, 9.0).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                for n in [0usize, 3, 8] {
                    for np in [0usize, 4, 8] {
                        let want = c_kernel(a as i64, b as i64, ks[n], ks[np], 2.0, 9.0).unwrap();
                        assert!((t.get(a, b, n, np) - want).abs() < 1e-11);
                        assert_eq!(t.block(a, b)[(n, np)], t.get(a, b, n, np));
                    }
                }
            }
        }
    }
}
