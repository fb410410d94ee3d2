use crate::error::{domain, Result};
use nalgebra::DMatrix;
use std::sync::OnceLock;

const LN_FACT_MAX: usize = 4096;

/// ln(n!) from a compensated cumulative sum, n ≤ 4096.
pub fn ln_factorial(n: usize) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(LN_FACT_MAX + 1);
        let (mut sum, mut comp) = (0.0f64, 0.0f64);
        t.push(0.0);
        for k in 1..=LN_FACT_MAX {
            let y = (k as f64).ln() - comp;
            let s = sum + y;
            comp = (s - sum) - y;
            sum = s;
            t.push(sum);
        }
        t
    });
    assert!(n <= LN_FACT_MAX, "ln_factorial: n = {n} exceeds table");
    table[n]
}

/// Wigner 3j symbol by the Racah single-sum formula; zero outside the selection rules.
pub fn wigner_3j(l1: i64, l2: i64, l3: i64, m1: i64, m2: i64, m3: i64) -> f64 {
    if l1 < 0 || l2 < 0 || l3 < 0 || m1 + m2 + m3 != 0 {
        return 0.0;
    }
    if m1.abs() > l1 || m2.abs() > l2 || m3.abs() > l3 {
        return 0.0;
    }
    if l3 < (l1 - l2).abs() || l3 > l1 + l2 {
        return 0.0;
    }
    if m1 == 0 && m2 == 0 && m3 == 0 && (l1 + l2 + l3) % 2 == 1 {
        return 0.0;
    }
    let lf = |n: i64| ln_factorial(n as usize);
    let half = 0.5
        * (lf(l1 + l2 - l3) + lf(l1 - l2 + l3) + lf(-l1 + l2 + l3) - lf(l1 + l2 + l3 + 1)
            + lf(l1 + m1)
            + lf(l1 - m1)
            + lf(l2 + m2)
            + lf(l2 - m2)
            + lf(l3 + m3)
            + lf(l3 - m3));
    let tmin = 0.max(l2 - l3 - m1).max(l1 - l3 + m2);
    let tmax = (l1 + l2 - l3).min(l1 - m1).min(l2 + m2);
    // Successive terms differ by an exact rational ratio; only the leading term needs exp().
    let den = |t: i64| lf(t) + lf(l3 - l2 + t + m1) + lf(l3 - l1 + t - m2) + lf(l1 + l2 - l3 - t) + lf(l1 - t - m1) + lf(l2 - t + m2);
    let (mut ratio, mut acc) = (1.0f64, 1.0f64);
    for t in tmin..tmax {
        let num = ((l1 + l2 - l3 - t) * (l1 - t - m1) * (l2 - t + m2)) as f64;
        let dnm = ((t + 1) * (l3 - l2 + t + 1 + m1) * (l3 - l1 + t + 1 - m2)) as f64;
        ratio *= -num / dnm;
        acc += ratio;
    }
    let lead = (half - den(tmin)).exp();
    let sum = if tmin % 2 == 0 { lead * acc } else { -lead * acc };
    if (l1 - l2 - m3).rem_euclid(2) == 1 {
        -sum
    } else {
        sum
    }
}

/// Wigner small-d element d^ℓ_{mn}(β).
pub fn wigner_d_beta(ell: i64, m: i64, n: i64, beta: f64) -> Result<f64> {
    if ell < 0 || m.abs() > ell || n.abs() > ell {
        return domain(format!("wigner_d_beta: invalid indices ({ell}, {m}, {n})"));
    }
    let col = d_column(ell as usize + 1, m, n, beta);
    Ok(col[ell as usize])
}

/// d^ℓ_{mn}(β) for all ℓ < l, each as a (2ℓ+1)×(2ℓ+1) matrix indexed by (m+ℓ, n+ℓ).
pub fn wigner_small_d_all(l: usize, beta: f64) -> Vec<DMatrix<f64>> {
    let mut out: Vec<DMatrix<f64>> = (0..l).map(|ell| DMatrix::zeros(2 * ell + 1, 2 * ell + 1)).collect();
    let li = l as i64;
    for m in -(li - 1)..li {
        for n in -(li - 1)..li {
            let col = d_column(l, m, n, beta);
            let l0 = m.abs().max(n.abs());
            for ell in l0..li {
                out[ell as usize][((m + ell) as usize, (n + ell) as usize)] = col[ell as usize];
            }
        }
    }
    out
}

/// d^ℓ_{mn}(β) for ℓ = 0 … l−1 at fixed (m, n): seed at ℓ0 = max(|m|,|n|), then the ascending
/// three-term recurrence
///   d^{ℓ+1} = (ℓ+1)(2ℓ+1)/√(((ℓ+1)²−m²)((ℓ+1)²−n²)) ·
///             [(cosβ − mn/(ℓ(ℓ+1))) d^ℓ − √((ℓ²−m²)(ℓ²−n²))/(ℓ(2ℓ+1)) d^{ℓ−1}].
fn d_column(l: usize, m: i64, n: i64, beta: f64) -> Vec<f64> {
    let mut col = vec![0.0; l];
    let l0 = m.abs().max(n.abs());
    if l0 as usize >= l {
        return col;
    }
    if beta == 0.0 {
        if m == n {
            col[l0 as usize..].fill(1.0);
        }
        return col;
    }
    col[l0 as usize] = d_seed(l0, m, n, beta);
    let c = beta.cos();
    let (mf, nf) = (m as f64, n as f64);
    for ell in l0..(l as i64 - 1) {
        let lf = ell as f64;
        let l1 = lf + 1.0;
        let pre = l1 * (2.0 * lf + 1.0) / ((l1 * l1 - mf * mf) * (l1 * l1 - nf * nf)).sqrt();
        let shift = if ell == 0 { 0.0 } else { mf * nf / (lf * l1) };
        let mut v = (c - shift) * col[ell as usize];
        if ell > l0 {
            let back = ((lf * lf - mf * mf) * (lf * lf - nf * nf)).sqrt() / (lf * (2.0 * lf + 1.0));
            v -= back * col[ell as usize - 1];
        }
        col[ell as usize + 1] = pre * v;
    }
    col
}

/// d^j_{mn}(β) at j = max(|m|,|n|), evaluated in log-magnitude form.
fn d_seed(j: i64, m: i64, n: i64, beta: f64) -> f64 {
    if n.abs() > m.abs() {
        let sign = if (m - n).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        return sign * d_seed(j, n, m, beta);
    }
    let (s, c) = (0.5 * beta).sin_cos();
    let lnbin = 0.5 * (ln_factorial((2 * j) as usize) - ln_factorial((j + n) as usize) - ln_factorial((j - n) as usize));
    let amp = lnbin.exp();
    if m == j {
        // √C(2j, j+n) cos^{j+n}(β/2) (−sin(β/2))^{j−n}
        amp * c.powi((j + n) as i32) * (-s).powi((j - n) as i32)
    } else {
        // m = −j: √C(2j, j+n) cos^{j−n}(β/2) sin^{j+n}(β/2)
        amp * c.powi((j - n) as i32) * s.powi((j + n) as i32)
    }
}
