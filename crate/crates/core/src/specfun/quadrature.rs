use nalgebra::{DMatrix, SymmetricEigen};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum QuadratureKind {
    /// Gauss-Legendre on a finite interval (possibly composite).
    GaussLegendre,
    /// Gauss-Laguerre on [shift, ∞). Weights are pre-multiplied by e^{x},
    /// so the rule integrates g(x) = e^{-x}·poly(x) as Σ w_i g(x_i).
    GaussLaguerre,
}

/// Immutable set of nodes (strictly increasing) and positive weights.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    kind: QuadratureKind,
    /// Highest polynomial degree (per panel, in the relevant weight) integrated exactly.
    exact_degree: usize,
}

impl QuadratureRule {
    pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Self {
        assert!(n >= 1 && b > a, "gauss_legendre needs n >= 1 and b > a");
        let (x, w) = legendre_nodes(n);
        let (half, mid) = (0.5 * (b - a), 0.5 * (a + b));
        Self {
            nodes: x.iter().map(|t| mid + half * t).collect(),
            weights: w.iter().map(|v| v * half).collect(),
            kind: QuadratureKind::GaussLegendre,
            exact_degree: 2 * n - 1,
        }
    }

    /// `panels` equal sub-intervals of [a, b], each with an n-point Gauss-Legendre rule.
    pub fn composite_gauss_legendre(panels: usize, n: usize, a: f64, b: f64) -> Self {
        assert!(panels >= 1 && n >= 1 && b > a);
        let (x, w) = legendre_nodes(n);
        let h = (b - a) / panels as f64;
        let mut nodes = Vec::with_capacity(panels * n);
        let mut weights = Vec::with_capacity(panels * n);
        for k in 0..panels {
            let lo = a + h * k as f64;
            let mid = lo + 0.5 * h;
            for (t, v) in x.iter().zip(&w) {
                nodes.push(mid + 0.5 * h * t);
                weights.push(0.5 * h * v);
            }
        }
        Self { nodes, weights, kind: QuadratureKind::GaussLegendre, exact_degree: 2 * n - 1 }
    }

    /// n-point Gauss-Laguerre rule (weight e^{-x}) on [0, ∞), weights stored scaled by e^{x_i}.
    pub fn gauss_laguerre(n: usize) -> Self {
        Self::gauss_laguerre_shifted(n, 0.0)
    }

    /// Gauss-Laguerre rule for ∫_{shift}^∞ e^{-x}·poly(x) dx.
    pub fn gauss_laguerre_shifted(n: usize, shift: f64) -> Self {
        assert!(n >= 1);
        let (x, w) = laguerre_nodes(n);
        Self { nodes: x.iter().map(|t| t + shift).collect(), weights: w, kind: QuadratureKind::GaussLaguerre, exact_degree: 2 * n - 1 }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn kind(&self) -> QuadratureKind {
        self.kind
    }

    pub fn exact_degree(&self) -> usize {
        self.exact_degree
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Gauss-Legendre nodes/weights on [-1, 1], ascending, by Newton iteration on P_n.
fn legendre_nodes(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                let (_, d) = legendre_with_derivative(n, z);
                dp = d;
                break;
            }
        }
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, z);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (z * p1 - p0) / (z * z - 1.0))
}

/// Gauss-Laguerre (α = 0) nodes and e^{x}-scaled weights. Initial guesses from the
/// Jacobi matrix eigenvalues, then Newton polishing with an e^{-x/2}-scaled recurrence.
fn laguerre_nodes(n: usize) -> (Vec<f64>, Vec<f64>) {
    let jac = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            2.0 * i as f64 + 1.0
        } else if i.abs_diff(j) == 1 {
            i.max(j) as f64
        } else {
            0.0
        }
    });
    let mut guess: Vec<f64> = SymmetricEigen::new(jac).eigenvalues.iter().copied().collect();
    guess.sort_by(|a, b| a.total_cmp(b));
    let mut x = Vec::with_capacity(n);
    let mut w = Vec::with_capacity(n);
    for z0 in guess {
        let mut z = z0;
        for _ in 0..50 {
            let (p, _, dp) = laguerre_scaled(n, z);
            let dz = p / dp;
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        let (_, pm1, dp) = laguerre_scaled(n, z);
        // w e^{z} = -1 / (n L'_n L_{n-1}) with both factors carrying e^{-z/2}.
        x.push(z);
        w.push(-1.0 / (n as f64 * dp * pm1));
    }
    (x, w)
}

/// (e^{-z/2} L_n, e^{-z/2} L_{n-1}, e^{-z/2} L'_n).
fn laguerre_scaled(n: usize, z: f64) -> (f64, f64, f64) {
    let mut p1 = (-0.5 * z).exp();
    let mut p2 = 0.0;
    for j in 1..=n {
        let jf = j as f64;
        let p3 = p2;
        p2 = p1;
        p1 = ((2.0 * jf - 1.0 - z) * p2 - (jf - 1.0) * p3) / jf;
    }
    let nf = n as f64;
    (p1, p2, nf * (p1 - p2) / z)
}
