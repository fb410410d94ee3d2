//! Radial coupling E_{pp'} = ∫_{R1}^{R2} r² K_p K_{p'} dr.

use crate::error::{domain, Result};
use crate::specfun::{laguerre_k_upto, QuadratureRule};
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

/// Fixed-point fraction bits for the truncated exponential series.
const FRAC: u64 = 512;

/// Quadrature exact for e^{−r}·poly(2P) integrands on [r1, r2] (r2 may be infinite):
/// shifted Gauss-Laguerre on a half-line, composite Gauss-Legendre (≥ 2P+16 nodes per
/// panel, panels ≤ 8 units wide) on a finite interval.
pub fn fl_radial_rule(p_count: usize, r1: f64, r2: f64) -> QuadratureRule {
    if r2.is_infinite() {
        QuadratureRule::gauss_laguerre_shifted(p_count + 9, r1)
    } else {
        let panels = ((r2 - r1) / 8.0).ceil().max(1.0) as usize;
        QuadratureRule::composite_gauss_legendre(panels, 2 * p_count + 16, r1, r2)
    }
}

fn check_interval(r1: f64, r2: f64) -> Result<()> {
    if !(r1 >= 0.0) || r1.is_infinite() || !(r2 >= r1) {
        return domain(format!("radial interval must satisfy 0 <= R1 <= R2, got [{r1}, {r2}]"));
    }
    Ok(())
}

/// E matrix from the closed form
///   E_{pp'} = c_p c_{p'} Σ_{j,j'} (−1)^{j+j'} C(p+2, p−j) C(p'+2, p'−j') / (j! j'!) ∫ e^{−r} r^{j+j'+2} dr,
/// with the incomplete-gamma moments expanded as n!(e^{−R1} S_n(R1) − e^{−R2} S_n(R2)),
/// S_n(R) = Σ_{a≤n} R^a/a!. Integer coefficients are exact; the series is evaluated in
/// 512-bit fixed point, so the alternating sum never cancels in floating point.
pub fn e_matrix(p_count: usize, r1: f64, r2: f64) -> Result<DMatrix<f64>> {
    check_interval(r1, r2)?;
    if r1 == r2 {
        return Ok(DMatrix::zeros(p_count, p_count));
    }
    if r1 == 0.0 && r2.is_infinite() {
        return Ok(DMatrix::identity(p_count, p_count));
    }
    let binom = pascal(2 * p_count + 2);
    let pairs: Vec<(usize, usize)> = (0..p_count).flat_map(|p| (p..p_count).map(move |q| (p, q))).collect();
    let vals: Vec<f64> = pairs
        .par_iter()
        .map(|&(p, q)| {
            let big_b = suffix_coefficients(p, q, &binom);
            let c = 1.0 / (((p + 1) * (p + 2)) as f64).sqrt() / (((q + 1) * (q + 2)) as f64).sqrt();
            c * (tail(&big_b, r1) - tail(&big_b, r2))
        })
        .collect();
    let mut e = DMatrix::zeros(p_count, p_count);
    for (&(p, q), v) in pairs.iter().zip(vals) {
        e[(p, q)] = v;
        e[(q, p)] = v;
    }
    Ok(e)
}

/// E by direct quadrature; independent oracle for [`e_matrix`].
pub fn e_matrix_quadrature(p_count: usize, r1: f64, r2: f64) -> Result<DMatrix<f64>> {
    check_interval(r1, r2)?;
    if r1 == r2 {
        return Ok(DMatrix::zeros(p_count, p_count));
    }
    let rule = fl_radial_rule(p_count, r1, r2);
    let mut e = DMatrix::zeros(p_count, p_count);
    for (&r, &w) in rule.nodes().iter().zip(rule.weights()) {
        let k = laguerre_k_upto(p_count, r);
        for p in 0..p_count {
            for q in 0..p_count {
                e[(p, q)] += w * r * r * k[p] * k[q];
            }
        }
    }
    Ok(e)
}

fn pascal(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![BigInt::one(); i + 1];
        for k in 1..i {
            row[k] = &rows[i - 1][k - 1] + &rows[i - 1][k];
        }
        rows.push(row);
    }
    rows
}

/// B_a = Σ_{n ≥ max(a,2)} b_n, with
/// b_n = (−1)^n (n−1) n Σ_{j+j'=n−2} C(p+2, p−j) C(q+2, q−j') C(n−2, j).
fn suffix_coefficients(p: usize, q: usize, binom: &[Vec<BigInt>]) -> Vec<BigInt> {
    let top = p + q + 2;
    let mut b = vec![BigInt::zero(); top + 1];
    for (n, bn) in b.iter_mut().enumerate().skip(2) {
        let s = n - 2;
        let mut acc = BigInt::zero();
        for j in s.saturating_sub(q)..=p.min(s) {
            let jp = s - j;
            acc += &binom[p + 2][p - j] * &binom[q + 2][q - jp] * &binom[s][j];
        }
        acc *= BigInt::from((n - 1) * n);
        *bn = if n % 2 == 0 { acc } else { -acc };
    }
    let mut big_b = vec![BigInt::zero(); top + 1];
    let mut run = BigInt::zero();
    for a in (0..=top).rev() {
        if a >= 2 {
            run += &b[a];
        }
        big_b[a] = run.clone();
    }
    big_b
}

/// e^{−R} Σ_a B_a R^a / a!; zero at R = ∞.
fn tail(big_b: &[BigInt], r: f64) -> f64 {
    if r.is_infinite() {
        return 0.0;
    }
    let r_fix = to_fixed(r);
    let mut term = BigInt::one() << FRAC;
    let mut acc = BigInt::zero();
    for (a, coeff) in big_b.iter().enumerate() {
        if a > 0 {
            term = ((term * &r_fix) >> FRAC) / BigInt::from(a);
        }
        acc += coeff * &term;
    }
    if acc.is_zero() {
        return 0.0;
    }
    let bits = acc.bits();
    let shift = bits.saturating_sub(62);
    let top = (acc.abs() >> shift).to_f64().expect("62-bit mantissa fits f64");
    let ln_mag = top.ln() + (shift as f64 - FRAC as f64) * std::f64::consts::LN_2;
    let mag = (ln_mag - r).exp();
    if acc.is_negative() {
        -mag
    } else {
        mag
    }
}

/// Exact conversion of a non-negative f64 to a FRAC-bit fixed-point integer.
fn to_fixed(x: f64) -> BigInt {
    if x == 0.0 {
        return BigInt::zero();
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let mant = if exp == 0 { (bits & ((1 << 52) - 1)) << 1 } else { (bits & ((1 << 52) - 1)) | (1 << 52) };
    // x = mant · 2^(exp − 1075)
    let shift = exp - 1075 + FRAC as i64;
    let m = BigInt::from(mant);
    if shift >= 0 {
        m << shift as u64
    } else {
        m >> (-shift) as u64
    }
}
