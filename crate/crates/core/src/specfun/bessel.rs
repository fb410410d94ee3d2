use crate::error::{domain, Result};

/// Spherical Bessel function of the first kind j_ℓ(x), ℓ ≥ −1, with j₋₁(x) = cos(x)/x.
///
/// j₋₁ diverges at the origin; `(−1, 0)` returns `+∞`.
pub fn spherical_bessel_j(ell: i32, x: f64) -> Result<f64> {
    if ell < -1 {
        return domain(format!("spherical_bessel_j: ell = {ell} < -1"));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return domain(format!("spherical_bessel_j: x = {x} must be finite and >= 0"));
    }
    if ell == -1 {
        return Ok(if x == 0.0 { f64::INFINITY } else { x.cos() / x });
    }
    Ok(spherical_bessel_j_upto(ell as usize, x)[ell as usize])
}

/// All orders j_0(x) … j_lmax(x). `x` must be finite and non-negative.
pub fn spherical_bessel_j_upto(lmax: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; lmax + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    if x <= 1.0 {
        for (ell, v) in out.iter_mut().enumerate() {
            *v = series(ell, x);
        }
        return out;
    }
    let (s, c) = x.sin_cos();
    let j0 = s / x;
    let j1 = s / (x * x) - c / x;
    if (lmax as f64) < x {
        // Upward recurrence is stable while ℓ < x.
        out[0] = j0;
        if lmax >= 1 {
            out[1] = j1;
        }
        for ell in 1..lmax {
            out[ell + 1] = (2 * ell + 1) as f64 / x * out[ell] - out[ell - 1];
        }
        return out;
    }
    miller(lmax, x, j0, j1, &mut out);
    out
}

/// Ascending series x^ℓ/(2ℓ+1)!! Σ_k (−x²/2)^k / (k! (2ℓ+3)(2ℓ+5)…(2ℓ+2k+1)); used for x ≤ 1.
fn series(ell: usize, x: f64) -> f64 {
    let mut lead = 1.0;
    for k in 1..=ell {
        lead *= x / (2 * k + 1) as f64;
    }
    if lead == 0.0 {
        return 0.0;
    }
    let h = -0.5 * x * x;
    let (mut term, mut sum) = (1.0, 1.0);
    for k in 1..60 {
        term *= h / (k as f64 * (2 * ell + 2 * k + 1) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    lead * sum
}

/// Miller's downward recurrence from well above max(ℓ, x), normalized against j_0 or j_1.
fn miller(lmax: usize, x: f64, j0: f64, j1: f64, out: &mut [f64]) {
    let top = lmax.max(x as usize) as f64;
    let start = (top + 30.0 + 4.0 * top.sqrt()) as usize;
    let (mut above, mut cur) = (0.0f64, 1e-300f64);
    for ell in (1..=start).rev() {
        let below = (2 * ell + 1) as f64 / x * cur - above;
        above = cur;
        cur = below;
        let idx = ell - 1;
        if idx <= lmax {
            out[idx] = cur;
        }
        if cur.abs() > 1e250 {
            let scale = 1e-250;
            cur *= scale;
            above *= scale;
            for v in out.iter_mut().skip(idx) {
                *v *= scale;
            }
        }
    }
    // After the loop `cur` = unnormalized j_0, `above` = unnormalized j_1.
    let norm = if j0.abs() >= j1.abs() { j0 / cur } else { j1 / above };
    for v in out.iter_mut() {
        *v *= norm;
    }
}
