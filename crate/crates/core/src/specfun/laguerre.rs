/// Orthonormal radial Laguerre function K_p(r) = √(p!/(p+2)!) e^{−r/2} L_p^{(2)}(r).
pub fn laguerre_k(p: usize, r: f64) -> f64 {
    laguerre_k_upto(p + 1, r)[p]
}

/// K_0(r) … K_{count−1}(r) by the three-term recurrence on e^{−r/2} L_p^{(2)}(r).
pub fn laguerre_k_upto(count: usize, r: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    let (mut prev, mut cur) = (0.0, (-0.5 * r).exp());
    for n in 0..count {
        let nf = n as f64;
        out.push(cur / ((nf + 1.0) * (nf + 2.0)).sqrt());
        // (n+1) L_{n+1} = (2n + 3 − r) L_n − (n + 2) L_{n−1}
        let next = ((2.0 * nf + 3.0 - r) * cur - (nf + 2.0) * prev) / (nf + 1.0);
        prev = cur;
        cur = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::QuadratureRule;

    #[test]
    fn k0_closed_form() {
        for r in [0.0f64, 0.3, 5.0, 42.0] {
            let want = (-0.5 * r).exp() / 2f64.sqrt();
            assert!((laguerre_k(0, r) - want).abs() < 1e-16);
        }
    }

    #[test]
    fn orthonormal_by_gauss_laguerre() {
        let n = 2 * 41 + 2;
        let rule = QuadratureRule::gauss_laguerre(n);
        let tables: Vec<Vec<f64>> = rule.nodes().iter().map(|&r| laguerre_k_upto(41, r)).collect();
        for p in 0..=40 {
            for q in 0..=40 {
                let s: f64 = rule.nodes().iter().zip(rule.weights()).zip(&tables).map(|((r, w), t)| w * r * r * t[p] * t[q]).sum();
                let want = if p == q { 1.0 } else { 0.0 };
                assert!((s - want).abs() <= 1e-10, "p={p} q={q} s={s}");
            }
        }
    }

    #[test]
    fn decays_at_large_radius() {
        for k in laguerre_k_upto(32, 500.0) {
            assert!(k.abs() < 1e-50);
        }
    }
}
