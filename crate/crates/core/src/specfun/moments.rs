use super::wigner::ln_factorial;
use crate::error::{domain, Result};

/// ∫_{R1}^{R2} e^{−r} r^j dr. `r2` may be `f64::INFINITY`. Overflows to `+∞` when the
/// value exceeds the f64 range; use [`ln_radial_moment_integral`] for large j.
pub fn radial_moment_integral(j: usize, r1: f64, r2: f64) -> Result<f64> {
    Ok(ln_radial_moment_integral(j, r1, r2)?.exp())
}

/// Natural log of ∫_{R1}^{R2} e^{−r} r^j dr, accumulated in log domain.
pub fn ln_radial_moment_integral(j: usize, r1: f64, r2: f64) -> Result<f64> {
    if !(r1 >= 0.0) || !(r2 > r1) {
        return domain(format!("radial_moment_integral: need 0 <= R1 < R2, got [{r1}, {r2}]"));
    }
    let peak = (j + 1) as f64;
    let ln_fact = ln_factorial(j);
    if r2 <= peak {
        // γ(R2) − γ(R1)
        Ok(ln_diff(ln_lower(j, r2), ln_lower(j, r1)))
    } else if r1 >= peak {
        // Γ(R1) − Γ(R2)
        Ok(ln_diff(ln_upper(j, r1), ln_upper(j, r2)))
    } else {
        // j! − γ(R1) − Γ(R2)
        let tails = ln_add(ln_lower(j, r1), ln_upper(j, r2));
        Ok(ln_diff(ln_fact, tails))
    }
}

/// ln γ(j+1, x) = ln[e^{−x} x^{j+1} Σ_k x^k / ((j+1)(j+2)…(j+1+k))].
fn ln_lower(j: usize, x: f64) -> f64 {
    if x == 0.0 {
        return f64::NEG_INFINITY;
    }
    let (mut term, mut sum) = (1.0 / (j + 1) as f64, 1.0 / (j + 1) as f64);
    let mut k = 1usize;
    while term > 1e-18 * sum && k < 100_000 {
        term *= x / (j + 1 + k) as f64;
        sum += term;
        k += 1;
    }
    -x + (j + 1) as f64 * x.ln() + sum.ln()
}

/// ln Γ(j+1, x) = ln[j! e^{−x} Σ_{a≤j} x^a/a!], all terms positive.
fn ln_upper(j: usize, x: f64) -> f64 {
    if x.is_infinite() {
        return f64::NEG_INFINITY;
    }
    if x == 0.0 {
        return ln_factorial(j);
    }
    let lx = x.ln();
    let logs: Vec<f64> = (0..=j).map(|a| a as f64 * lx - ln_factorial(a)).collect();
    ln_factorial(j) - x + log_sum_exp(&logs)
}

fn log_sum_exp(v: &[f64]) -> f64 {
    let mx = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if mx == f64::NEG_INFINITY {
        return mx;
    }
    mx + v.iter().map(|x| (x - mx).exp()).sum::<f64>().ln()
}

fn ln_add(a: f64, b: f64) -> f64 {
    log_sum_exp(&[a, b])
}

/// ln(e^a − e^b), a ≥ b.
fn ln_diff(a: f64, b: f64) -> f64 {
    if b == f64::NEG_INFINITY {
        return a;
    }
    a + (-(b - a).exp()).ln_1p()
}
