//! Spatial concentration regions in the ball and their measure/indicator queries.

use crate::error::{domain, Error, Result};
use crate::specfun::QuadratureRule;
use std::f64::consts::PI;

/// Point (r, θ, φ) of the ball: r ≥ 0, θ ∈ [0, π], φ ∈ [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BallPoint {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
}

impl BallPoint {
    pub fn new(r: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(r >= 0.0) || !(0.0..=PI).contains(&theta) || !phi.is_finite() {
            return domain(format!("BallPoint: invalid ({r}, {theta}, {phi})"));
        }
        Ok(Self { r, theta, phi: phi.rem_euclid(2.0 * PI) })
    }

    pub fn to_cartesian(self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [self.r * st * cp, self.r * st * sp, self.r * ct]
    }

    pub fn from_cartesian(v: [f64; 3]) -> Self {
        let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if r == 0.0 {
            return Self { r: 0.0, theta: 0.0, phi: 0.0 };
        }
        let theta = (v[2] / r).clamp(-1.0, 1.0).acos();
        let phi = v[1].atan2(v[0]).rem_euclid(2.0 * PI);
        Self { r, theta, phi }
    }
}

/// Rotation taking the north pole to (θ0, φ0): R = R_z(φ0) R_y(θ0).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Orientation {
    pub theta0: f64,
    pub phi0: f64,
}

impl Orientation {
    pub fn new(theta0: f64, phi0: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta0) || !phi0.is_finite() {
            return domain(format!("orientation: invalid (theta0, phi0) = ({theta0}, {phi0})"));
        }
        Ok(Self { theta0, phi0 })
    }

    pub fn matrix(&self) -> [[f64; 3]; 3] {
        let (sb, cb) = self.theta0.sin_cos();
        let (sa, ca) = self.phi0.sin_cos();
        [[ca * cb, -sa, ca * sb], [sa * cb, ca, sa * sb], [-sb, 0.0, cb]]
    }

    /// Active rotation of a point.
    pub fn rotate(&self, p: BallPoint) -> BallPoint {
        BallPoint::from_cartesian(mat_vec(&self.matrix(), p.to_cartesian(), false))
    }

    pub fn unrotate(&self, p: BallPoint) -> BallPoint {
        BallPoint::from_cartesian(mat_vec(&self.matrix(), p.to_cartesian(), true))
    }
}

fn mat_vec(m: &[[f64; 3]; 3], v: [f64; 3], transpose: bool) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (i, o) in out.iter_mut().enumerate() {
        for (j, vj) in v.iter().enumerate() {
            *o += if transpose { m[j][i] } else { m[i][j] } * vj;
        }
    }
    out
}

/// Binary angular region on a Gauss-Legendre (in cos θ) × uniform-φ pixel grid.
///
/// Rings cover `theta_range`; directions outside it are not in the mask.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularMask {
    l_grid: usize,
    thetas: Vec<f64>,
    theta_weights: Vec<f64>,
    n_phi: usize,
    indicator: Vec<bool>,
    theta_range: (f64, f64),
}

impl AngularMask {
    /// Full-sphere grid exact for harmonic products up to degree 2·l_grid − 2.
    pub fn from_fn(l_grid: usize, f: impl Fn(f64, f64) -> bool) -> Result<Self> {
        Self::on_band(l_grid, 0.0, PI, f)
    }

    pub fn full_sky(l_grid: usize) -> Result<Self> {
        Self::from_fn(l_grid, |_, _| true)
    }

    /// Band θ ∈ [θ1, θ2] encoded as pixels: rings placed by Gauss-Legendre over the band's
    /// cos θ range, all indicators set.
    pub fn band(l_grid: usize, theta1: f64, theta2: f64) -> Result<Self> {
        Self::on_band(l_grid, theta1, theta2, |_, _| true)
    }

    fn on_band(l_grid: usize, theta1: f64, theta2: f64, f: impl Fn(f64, f64) -> bool) -> Result<Self> {
        if l_grid == 0 {
            return domain("AngularMask: l_grid must be >= 1");
        }
        check_band(theta1, theta2)?;
        let rule = QuadratureRule::gauss_legendre(l_grid, theta2.cos(), theta1.cos());
        // Ascending θ = descending cos θ.
        let thetas: Vec<f64> = rule.nodes().iter().rev().map(|x| x.acos()).collect();
        let theta_weights: Vec<f64> = rule.weights().iter().rev().copied().collect();
        let n_phi = 2 * l_grid - 1;
        let mut indicator = Vec::with_capacity(thetas.len() * n_phi);
        for &t in &thetas {
            for k in 0..n_phi {
                indicator.push(f(t, 2.0 * PI * k as f64 / n_phi as f64));
            }
        }
        Ok(Self { l_grid, thetas, theta_weights, n_phi, indicator, theta_range: (theta1, theta2) })
    }

    /// Parse `theta phi indicator` lines (blank lines and `#` comments skipped). The pixel
    /// centers must form the full-sphere grid of some band-limit, in any order.
    pub fn from_pixel_text(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Format(format!("mask line {}: expected 3 fields", lineno + 1)));
            }
            let parse = |s: &str| -> Result<f64> {
                s.parse::<f64>().map_err(|_| Error::Format(format!("mask line {}: bad number '{s}'", lineno + 1)))
            };
            let (t, p) = (parse(fields[0])?, parse(fields[1])?);
            let ind = match fields[2] {
                "0" => false,
                "1" => true,
                other => return Err(Error::Format(format!("mask line {}: indicator '{other}' not 0/1", lineno + 1))),
            };
            rows.push((t, p, ind));
        }
        let mut ts: Vec<f64> = rows.iter().map(|r| r.0).collect();
        ts.sort_by(f64::total_cmp);
        ts.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        let l_grid = ts.len();
        if l_grid == 0 || rows.len() % l_grid != 0 {
            return Err(Error::Format("mask: pixel count is not rings x longitudes".into()));
        }
        let n_phi = rows.len() / l_grid;
        if n_phi < 2 * l_grid - 1 {
            return Err(Error::Format(format!("mask: {n_phi} longitudes, need >= {}", 2 * l_grid - 1)));
        }
        let mut mask = Self::on_band(l_grid, 0.0, PI, |_, _| false)?;
        mask.n_phi = n_phi;
        mask.indicator = vec![false; l_grid * n_phi];
        for (a, b) in ts.iter().zip(&mask.thetas) {
            if (a - b).abs() > 1e-9 {
                return Err(Error::Format(format!("mask: ring at theta={a} is not a Gauss-Legendre node")));
            }
        }
        let mut seen = vec![false; l_grid * n_phi];
        for (t, p, ind) in rows {
            let i = mask.nearest_ring(t).filter(|&i| (mask.thetas[i] - t).abs() < 1e-9);
            let kf = p.rem_euclid(2.0 * PI) * n_phi as f64 / (2.0 * PI);
            let k = (kf.round() as usize) % n_phi;
            let (Some(i), true) = (i, (kf - kf.round()).abs() < 1e-6) else {
                return Err(Error::Format(format!("mask: pixel ({t}, {p}) not on the grid")));
            };
            if seen[i * n_phi + k] {
                return Err(Error::Format(format!("mask: duplicate pixel ({t}, {p})")));
            }
            seen[i * n_phi + k] = true;
            mask.indicator[i * n_phi + k] = ind;
        }
        Ok(mask)
    }

    /// `theta phi indicator` lines, the inverse of [`AngularMask::from_pixel_text`].
    pub fn to_pixel_text(&self) -> String {
        let mut s = String::new();
        for (t, p, _, ind) in self.pixels() {
            s.push_str(&format!("{t:.17e} {p:.17e} {}\n", ind as u8));
        }
        s
    }

    pub fn l_grid(&self) -> usize {
        self.l_grid
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn theta_weights(&self) -> &[f64] {
        &self.theta_weights
    }

    pub fn indicator(&self, ring: usize, k: usize) -> bool {
        self.indicator[ring * self.n_phi + k]
    }

    /// (θ, φ, weight, indicator) for every pixel, ring-major.
    pub fn pixels(&self) -> impl Iterator<Item = (f64, f64, f64, bool)> + '_ {
        let dphi = 2.0 * PI / self.n_phi as f64;
        self.thetas
            .iter()
            .zip(&self.theta_weights)
            .enumerate()
            .flat_map(move |(i, (&t, &w))| (0..self.n_phi).map(move |k| (t, k as f64 * dphi, w * dphi, self.indicator[i * self.n_phi + k])))
    }

    pub fn solid_angle(&self) -> f64 {
        self.pixels().filter(|p| p.3).map(|p| p.2).sum()
    }

    fn nearest_ring(&self, theta: f64) -> Option<usize> {
        let (lo, hi) = self.theta_range;
        if theta < lo - 1e-12 || theta > hi + 1e-12 {
            return None;
        }
        let idx = self.thetas.partition_point(|&t| t < theta);
        let cands = [idx.checked_sub(1), (idx < self.thetas.len()).then_some(idx)];
        cands.into_iter().flatten().min_by(|&a, &b| (self.thetas[a] - theta).abs().total_cmp(&(self.thetas[b] - theta).abs()))
    }

    /// Nearest-pixel indicator lookup.
    pub fn contains_direction(&self, theta: f64, phi: f64) -> bool {
        let Some(i) = self.nearest_ring(theta) else { return false };
        let k = (phi.rem_euclid(2.0 * PI) * self.n_phi as f64 / (2.0 * PI)).round() as usize % self.n_phi;
        self.indicator[i * self.n_phi + k]
    }
}

/// Angular factor of a radially independent region.
#[derive(Debug, Clone, PartialEq)]
pub enum Angular {
    Band { theta1: f64, theta2: f64 },
    Mask(AngularMask),
}

/// Solid angle in steradians of a band or mask.
pub fn solid_angle(angular: &Angular) -> f64 {
    match angular {
        Angular::Band { theta1, theta2 } => 2.0 * PI * (theta1.cos() - theta2.cos()),
        Angular::Mask(m) => m.solid_angle(),
    }
}

/// Radial interval [r1, r2] × angular region; r2 may be infinite.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductRegion {
    pub r1: f64,
    pub r2: f64,
    pub angular: Angular,
}

impl ProductRegion {
    pub fn band(&self) -> Option<(f64, f64)> {
        match self.angular {
            Angular::Band { theta1, theta2 } => Some((theta1, theta2)),
            Angular::Mask(_) => None,
        }
    }

    pub fn radial_length(&self) -> f64 {
        self.r2 - self.r1
    }

    fn contains(&self, p: &BallPoint) -> bool {
        if p.r < self.r1 || p.r > self.r2 {
            return false;
        }
        match &self.angular {
            Angular::Band { theta1, theta2 } => p.theta >= *theta1 && p.theta <= *theta2,
            Angular::Mask(m) => m.contains_direction(p.theta, p.phi),
        }
    }

    fn volume(&self) -> f64 {
        if self.r1 == self.r2 {
            return 0.0;
        }
        (self.r2.powi(3) - self.r1.powi(3)) / 3.0 * solid_angle(&self.angular)
    }
}

/// Azimuthally symmetric region sampled on a (r, cos θ) quadrature grid.
#[derive(Debug, Clone, PartialEq)]
pub struct AzimuthalRegion {
    radial: QuadratureRule,
    polar: QuadratureRule,
    indicator: Vec<bool>,
}

impl AzimuthalRegion {
    /// `radial` integrates over r, `polar` over x = cos θ ∈ [−1, 1]; `f(r, θ)` is the indicator.
    pub fn from_fn(radial: QuadratureRule, polar: QuadratureRule, f: impl Fn(f64, f64) -> bool) -> Result<Self> {
        if polar.nodes().iter().any(|x| x.abs() > 1.0) || radial.nodes().iter().any(|r| *r < 0.0) {
            return domain("AzimuthalRegion: polar nodes must lie in [-1, 1] and radial nodes >= 0");
        }
        let mut indicator = Vec::with_capacity(radial.len() * polar.len());
        for &r in radial.nodes() {
            for &x in polar.nodes() {
                indicator.push(f(r, x.acos()));
            }
        }
        Ok(Self { radial, polar, indicator })
    }

    pub fn radial(&self) -> &QuadratureRule {
        &self.radial
    }

    pub fn polar(&self) -> &QuadratureRule {
        &self.polar
    }

    pub fn indicator(&self, ir: usize, ix: usize) -> bool {
        self.indicator[ir * self.polar.len() + ix]
    }

    fn contains(&self, p: &BallPoint) -> bool {
        let Some(ir) = nearest_node(self.radial.nodes(), p.r) else { return false };
        let Some(ix) = nearest_node(self.polar.nodes(), p.theta.cos()) else { return false };
        self.indicator(ir, ix)
    }

    fn volume(&self) -> f64 {
        let mut v = 0.0;
        for (ir, (&r, &wr)) in self.radial.nodes().iter().zip(self.radial.weights()).enumerate() {
            for (ix, &wx) in self.polar.weights().iter().enumerate() {
                if self.indicator(ir, ix) {
                    v += wr * r * r * wx * 2.0 * PI;
                }
            }
        }
        v
    }
}

/// Index of the node whose cell (bounded by midpoints, clipped to the node span
/// extended by half the end gaps) contains `v`.
fn nearest_node(nodes: &[f64], v: f64) -> Option<usize> {
    let n = nodes.len();
    if n == 0 {
        return None;
    }
    let lo_gap = if n > 1 { nodes[1] - nodes[0] } else { 0.0 };
    let hi_gap = if n > 1 { nodes[n - 1] - nodes[n - 2] } else { 0.0 };
    if v < nodes[0] - 0.5 * lo_gap || v > nodes[n - 1] + 0.5 * hi_gap {
        return None;
    }
    let idx = nodes.partition_point(|&t| t < v);
    [idx.checked_sub(1), (idx < n).then_some(idx)]
        .into_iter()
        .flatten()
        .min_by(|&a, &b| (nodes[a] - v).abs().total_cmp(&(nodes[b] - v).abs()))
}

#[derive(Debug, Clone, PartialEq)]
pub enum RegionShape {
    Product(ProductRegion),
    Azimuthal(AzimuthalRegion),
    /// Disjoint union of radial-interval × band products.
    Union(Vec<ProductRegion>),
}

/// Closed spatial region R ⊂ B³, optionally rotated so its symmetry axis points at (θ0, φ0).
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    shape: RegionShape,
    orientation: Option<Orientation>,
}

fn check_band(theta1: f64, theta2: f64) -> Result<()> {
    if !(0.0..=PI).contains(&theta1) || !(0.0..=PI).contains(&theta2) || !(theta2 > theta1) {
        return domain(format!("theta bounds must satisfy 0 <= theta1 < theta2 <= pi, got [{theta1}, {theta2}]"));
    }
    Ok(())
}

fn check_radial(r1: f64, r2: f64) -> Result<()> {
    if !(r1 >= 0.0) || r1.is_infinite() || !(r2 >= r1) {
        return domain(format!("radial bounds must satisfy 0 <= R1 <= R2, got [{r1}, {r2}]"));
    }
    Ok(())
}

impl Region {
    /// ProductSymmetric region [r1, r2] × {θ1 ≤ θ ≤ θ2}.
    pub fn product(r1: f64, r2: f64, theta1: f64, theta2: f64) -> Result<Self> {
        check_radial(r1, r2)?;
        check_band(theta1, theta2)?;
        Ok(Self::from_shape(RegionShape::Product(ProductRegion { r1, r2, angular: Angular::Band { theta1, theta2 } })))
    }

    /// The whole ball: [0, ∞) × S².
    pub fn full_ball() -> Self {
        Self::from_shape(RegionShape::Product(ProductRegion {
            r1: 0.0,
            r2: f64::INFINITY,
            angular: Angular::Band { theta1: 0.0, theta2: PI },
        }))
    }

    /// ProductMask region [r1, r2] × mask.
    pub fn mask(mask: AngularMask, r1: f64, r2: f64) -> Result<Self> {
        check_radial(r1, r2)?;
        Ok(Self::from_shape(RegionShape::Product(ProductRegion { r1, r2, angular: Angular::Mask(mask) })))
    }

    pub fn azimuthal(region: AzimuthalRegion) -> Self {
        Self::from_shape(RegionShape::Azimuthal(region))
    }

    /// Union of ProductSymmetric regions; positive-measure overlap is an error.
    pub fn union(parts: Vec<Region>) -> Result<Self> {
        let mut products = Vec::with_capacity(parts.len());
        for part in parts {
            match (part.shape, part.orientation) {
                (RegionShape::Product(p), None) if p.band().is_some() => products.push(p),
                _ => return Err(Error::Unsupported("union members must be unrotated ProductSymmetric regions".into())),
            }
        }
        if products.is_empty() {
            return domain("union of zero regions");
        }
        for i in 0..products.len() {
            for j in i + 1..products.len() {
                let (a, b) = (&products[i], &products[j]);
                let (ta, tb) = (a.band().unwrap(), b.band().unwrap());
                let radial = a.r1.max(b.r1) < a.r2.min(b.r2);
                let angular = ta.0.max(tb.0) < ta.1.min(tb.1);
                if radial && angular {
                    return Err(Error::Overlap(format!("union members {i} and {j} intersect")));
                }
            }
        }
        Ok(Self::from_shape(RegionShape::Union(products)))
    }

    fn from_shape(shape: RegionShape) -> Self {
        Self { shape, orientation: None }
    }

    /// Rotate the region so its symmetry axis points at (θ0, φ0).
    pub fn oriented(mut self, theta0: f64, phi0: f64) -> Result<Self> {
        self.orientation = Some(Orientation::new(theta0, phi0)?);
        Ok(self)
    }

    pub fn shape(&self) -> &RegionShape {
        &self.shape
    }

    pub fn orientation(&self) -> Option<Orientation> {
        self.orientation
    }

    /// The same region without its orientation.
    pub fn canonical(&self) -> Region {
        Self { shape: self.shape.clone(), orientation: None }
    }

    pub fn contains(&self, p: BallPoint) -> bool {
        let q = match self.orientation {
            Some(o) => o.unrotate(p),
            None => p,
        };
        match &self.shape {
            RegionShape::Product(pr) => pr.contains(&q),
            RegionShape::Azimuthal(a) => a.contains(&q),
            RegionShape::Union(parts) => parts.iter().any(|pr| pr.contains(&q)),
        }
    }

    pub fn volume(&self) -> f64 {
        match &self.shape {
            RegionShape::Product(pr) => pr.volume(),
            RegionShape::Azimuthal(a) => a.volume(),
            RegionShape::Union(parts) => parts.iter().map(ProductRegion::volume).sum(),
        }
    }

    /// Whether the region is the whole ball.
    pub fn is_full_ball(&self) -> bool {
        matches!(&self.shape, RegionShape::Product(ProductRegion { r1, r2, angular: Angular::Band { theta1, theta2 } })
            if *r1 == 0.0 && r2.is_infinite() && *theta1 == 0.0 && *theta2 == PI)
    }

    /// Compact human-readable descriptor.
    pub fn describe(&self) -> String {
        let base = match &self.shape {
            RegionShape::Product(p) => match &p.angular {
                Angular::Band { theta1, theta2 } => format!("product:{},{},{},{}", p.r1, p.r2, theta1, theta2),
                Angular::Mask(m) => format!("mask(l_grid={},solid_angle={}):{},{}", m.l_grid(), m.solid_angle(), p.r1, p.r2),
            },
            RegionShape::Azimuthal(a) => format!("azimuthal({}x{} samples)", a.radial.len(), a.polar.len()),
            RegionShape::Union(parts) => format!("union of {} products", parts.len()),
        };
        match self.orientation {
            Some(o) => format!("{base}@({},{})", o.theta0, o.phi0),
            None => base,
        }
    }
}

pub fn volume(region: &Region) -> f64 {
    region.volume()
}

pub fn contains(region: &Region, point: BallPoint) -> bool {
    region.contains(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const T1: f64 = PI / 8.0;
    const T2: f64 = 3.0 * PI / 8.0;

    #[test]
    fn solid_angles() {
        let full = Angular::Band { theta1: 0.0, theta2: PI };
        assert!((solid_angle(&full) - 4.0 * PI).abs() < 1e-14);
        let band = Angular::Band { theta1: T1, theta2: T2 };
        // 2π(cos π/8 − cos 3π/8) = 3.4004354…
        assert!((solid_angle(&band) - 3.4004354).abs() < 1e-6);
        let sky = AngularMask::full_sky(12).unwrap();
        assert!((sky.solid_angle() - 4.0 * PI).abs() < 1e-12);
        let m = AngularMask::band(20, T1, T2).unwrap();
        assert!((m.solid_angle() - solid_angle(&band)).abs() < 1e-10);
    }

    #[test]
    fn volumes() {
        let r = Region::product(15.0, 25.0, T1, T2).unwrap();
        let want = (25f64.powi(3) - 15f64.powi(3)) / 3.0 * 2.0 * PI * (T1.cos() - T2.cos());
        assert!((r.volume() - want).abs() < 1e-9);
        assert!((r.volume() - 13885.1).abs() < 0.1);
        let ball = Region::product(0.0, 1.0, 0.0, PI).unwrap();
        assert!((ball.volume() - 4.0 * PI / 3.0).abs() < 1e-14);
        assert_eq!(Region::product(3.0, 3.0, 0.0, PI).unwrap().volume(), 0.0);
        assert!(Region::product(3.0, 2.0, 0.0, PI).is_err());
        assert!(Region::product(1.0, 2.0, 1.0, 0.5).is_err());
    }

    #[test]
    fn volume_monte_carlo() {
        let r = Region::product(15.0, 25.0, T1, T2).unwrap();
        let rmax = 25.0f64;
        let n = 1_000_000usize;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut hits = 0usize;
        for _ in 0..n {
            let v = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0f64..1.0)];
            if v.iter().map(|x| x * x).sum::<f64>() > 1.0 {
                continue;
            }
            let p = BallPoint::from_cartesian([v[0] * rmax, v[1] * rmax, v[2] * rmax]);
            hits += r.contains(p) as usize;
        }
        // Cube sampling, so the volume estimate uses the cube measure.
        let cube = (2.0 * rmax).powi(3);
        let frac = hits as f64 / n as f64;
        let est = cube * frac;
        let se = cube * (frac * (1.0 - frac) / n as f64).sqrt();
        assert!((est - r.volume()).abs() <= 3.0 * se, "est={est} se={se} vol={}", r.volume());
    }

    #[test]
    fn containment() {
        let r = Region::product(15.0, 25.0, T1, T2).unwrap();
        assert!(r.contains(BallPoint::new(20.0, PI / 4.0, 1.0).unwrap()));
        assert!(!r.contains(BallPoint::new(5.0, PI / 4.0, 1.0).unwrap()));
        assert!(r.contains(BallPoint::new(15.0, PI / 4.0, 1.0).unwrap()));
        assert!(r.contains(BallPoint::new(25.0, T2, 1.0).unwrap()));
    }

    #[test]
    fn zero_rotation_is_identity() {
        let radial = QuadratureRule::gauss_legendre(12, 10.0, 30.0);
        let polar = QuadratureRule::gauss_legendre(16, -1.0, 1.0);
        let shape = |r: f64, t: f64| r < 20.0 + 5.0 * t.cos();
        let a = Region::azimuthal(AzimuthalRegion::from_fn(radial.clone(), polar.clone(), shape).unwrap());
        let b = a.clone().oriented(0.0, 0.0).unwrap();
        for &r in radial.nodes() {
            for &x in polar.nodes() {
                for k in 0..7 {
                    let p = BallPoint::new(r, x.acos(), k as f64).unwrap();
                    assert_eq!(a.contains(p), b.contains(p));
                }
            }
        }
    }

    #[test]
    fn oriented_contains_rotated_center() {
        let r = Region::product(1.0, 2.0, 0.0, 0.2).unwrap().oriented(1.0, 2.0).unwrap();
        assert!(r.contains(BallPoint::new(1.5, 1.0, 2.0).unwrap()));
        assert!(!r.contains(BallPoint::new(1.5, 0.0, 0.0).unwrap()));
    }

    #[test]
    fn union_rejects_overlap() {
        let a = Region::product(0.0, 2.0, 0.0, 1.0).unwrap();
        let b = Region::product(1.0, 3.0, 0.5, 1.5).unwrap();
        let c = Region::product(2.0, 3.0, 0.0, 1.0).unwrap();
        assert!(matches!(Region::union(vec![a.clone(), b]), Err(Error::Overlap(_))));
        let u = Region::union(vec![a.clone(), c.clone()]).unwrap();
        assert!((u.volume() - a.volume() - c.volume()).abs() < 1e-12);
    }

    #[test]
    fn mask_text_round_trip() {
        let m = AngularMask::from_fn(6, |t, p| t < 1.0 && p > 2.0).unwrap();
        let back = AngularMask::from_pixel_text(&m.to_pixel_text()).unwrap();
        assert_eq!(m.indicator, back.indicator);
        assert!((m.solid_angle() - back.solid_angle()).abs() < 1e-13);
        assert!(AngularMask::from_pixel_text("0.1 0.2 1\n").is_err());
        assert!(AngularMask::from_pixel_text("0.1 0.2 7\n").is_err());
    }

    #[test]
    fn mask_nearest_pixel_lookup() {
        let m = AngularMask::from_fn(8, |t, _| t < PI / 2.0).unwrap();
        assert!(m.contains_direction(0.1, 0.0));
        assert!(!m.contains_direction(3.0, 0.0));
        let band = AngularMask::band(8, T1, T2).unwrap();
        assert!(band.contains_direction(PI / 4.0, 0.3));
        assert!(!band.contains_direction(0.1, 0.3));
    }
}
