//! Projections onto the Coxeter plane and grouping of images into circles.
//!
//! Two projections are provided, each registered by name in a
//! [`ProjectionRegistry`]:
//!
//! * `ortho`: orthogonal projection onto the plane in the orthonormal frame
//!   `î = γ₁/√2`, `ĵ = (γ₂/√2 + (c/2)γ₁/√2)/sin(π/h)`. Each Coxeter-element
//!   orbit lands on a single circle.
//! * `skew`: takes the covariant components `Λ₁ = v·γ₁/√2`, `Λ₂ = v·γ₂/√2`
//!   and places them at `x = Λ₁ − (c/2)Λ₂`, `y = Λ₂√(1 − c²/4)`, so that
//!   `|Λ'|² = Λ₁² + Λ₂² − cΛ₁Λ₂`.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::coxplane::CoxeterPlane;
use crate::error::{Error, Result};
use crate::registry::{Named, Registry};
use crate::roots::{RootSystem, Vector};

/// Default relative tolerance for grouping radii.
pub const CIRCLE_REL_TOL: f64 = 1e-6;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Mode {
    Orthogonal,
    Skew,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Orthogonal => "ortho",
            Mode::Skew => "skew",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct PlanarPoint {
    pub x: f64,
    pub y: f64,
    pub radius: f64,
    /// Index into the projected vector list.
    pub source: usize,
}

impl PlanarPoint {
    pub fn new(x: f64, y: f64, source: usize) -> Self {
        Self {
            x,
            y,
            radius: x.hypot(y),
            source,
        }
    }

    /// Polar angle in `[0, 2π)`.
    pub fn angle(&self) -> f64 {
        let a = self.y.atan2(self.x);
        if a < 0.0 {
            a + 2.0 * PI
        } else {
            a
        }
    }
}

/// A way of mapping ambient vectors into the Coxeter plane.
pub trait Projection: Named + Send + Sync {
    fn mode(&self) -> Mode;
    /// Planar coordinates of `v`.
    fn coordinates(&self, plane: &CoxeterPlane, v: &Vector) -> (f64, f64);

    fn project(&self, plane: &CoxeterPlane, v: &Vector, source: usize) -> PlanarPoint {
        let (x, y) = self.coordinates(plane, v);
        PlanarPoint::new(x, y, source)
    }

    fn project_all(&self, plane: &CoxeterPlane, vs: &[Vector]) -> Vec<PlanarPoint> {
        vs.iter()
            .enumerate()
            .map(|(i, v)| self.project(plane, v, i))
            .collect()
    }
}

/// Orthonormal frame `(î, ĵ)` of the Coxeter plane.
#[derive(Clone, Debug)]
pub struct OrthoBasis {
    pub i_hat: Vector,
    pub j_hat: Vector,
}

pub fn ortho_basis(plane: &CoxeterPlane) -> OrthoBasis {
    let i_hat = plane.gamma1.scale(1.0 / SQRT_2);
    let s = (PI / plane.h as f64).sin();
    let j_hat = plane
        .gamma2
        .scale(1.0 / SQRT_2)
        .add_scaled(plane.c / 2.0, &i_hat)
        .scale(1.0 / s);
    OrthoBasis { i_hat, j_hat }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Orthogonal;

impl Named for Orthogonal {
    fn name(&self) -> &'static str {
        "ortho"
    }
}

impl Projection for Orthogonal {
    fn mode(&self) -> Mode {
        Mode::Orthogonal
    }
    fn coordinates(&self, plane: &CoxeterPlane, v: &Vector) -> (f64, f64) {
        let basis = ortho_basis(plane);
        (v.dot(&basis.i_hat), v.dot(&basis.j_hat))
    }
    fn project_all(&self, plane: &CoxeterPlane, vs: &[Vector]) -> Vec<PlanarPoint> {
        let basis = ortho_basis(plane);
        vs.iter()
            .enumerate()
            .map(|(i, v)| PlanarPoint::new(v.dot(&basis.i_hat), v.dot(&basis.j_hat), i))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Skew;

impl Skew {
    /// `(Λ₁, Λ₂)`: components of `v` along `γ₁/√2` and `γ₂/√2`.
    pub fn covariant(plane: &CoxeterPlane, v: &Vector) -> (f64, f64) {
        (v.dot(&plane.gamma1) / SQRT_2, v.dot(&plane.gamma2) / SQRT_2)
    }

    /// `(Λ₁² + Λ₂² − cΛ₁Λ₂)^{1/2}`.
    pub fn norm(plane: &CoxeterPlane, v: &Vector) -> f64 {
        let (l1, l2) = Self::covariant(plane, v);
        (l1 * l1 + l2 * l2 - plane.c * l1 * l2).max(0.0).sqrt()
    }
}

impl Named for Skew {
    fn name(&self) -> &'static str {
        "skew"
    }
}

impl Projection for Skew {
    fn mode(&self) -> Mode {
        Mode::Skew
    }
    fn coordinates(&self, plane: &CoxeterPlane, v: &Vector) -> (f64, f64) {
        let (l1, l2) = Self::covariant(plane, v);
        let c = plane.c;
        (l1 - c / 2.0 * l2, l2 * (1.0 - c * c / 4.0).sqrt())
    }
}

pub type ProjectionRegistry = Registry<dyn Projection>;

/// The built-in projections: `ortho` and `skew`.
pub fn projections() -> ProjectionRegistry {
    let mut r: ProjectionRegistry = Registry::new("projection");
    r.register(Arc::new(Orthogonal)).register(Arc::new(Skew));
    r
}

/// Which vectors of a root system to project.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PointSet {
    Roots,
    Simples,
    Weights,
}

impl PointSet {
    pub fn vectors(self, rs: &RootSystem) -> Result<Vec<Vector>> {
        match self {
            PointSet::Roots => Ok(rs.roots().to_vec()),
            PointSet::Simples => Ok(rs.simples().to_vec()),
            PointSet::Weights => fundamental_weights(rs),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PointSet::Roots => "roots",
            PointSet::Simples => "simples",
            PointSet::Weights => "weights",
        }
    }
}

impl FromStr for PointSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "roots" => Ok(PointSet::Roots),
            "simples" => Ok(PointSet::Simples),
            "weights" => Ok(PointSet::Weights),
            other => Err(Error::InvalidArgument(format!("unknown point set `{other}`"))),
        }
    }
}

/// `ω_j = Σ_k (C⁻¹)_{jk} α_k`, so that `α_i·ω_j = δ_ij`.
pub fn fundamental_weights(rs: &RootSystem) -> Result<Vec<Vector>> {
    let inv = rs.gram().to_matrix().inverse()?;
    Ok((0..rs.rank())
        .map(|j| Vector::combination(inv.row(j), rs.simples()))
        .collect())
}

#[derive(Clone, Debug)]
pub struct Circle {
    pub radius: f64,
    pub count: usize,
    /// Sorted by angle, then source index.
    pub members: Vec<PlanarPoint>,
}

impl Circle {
    /// `(max − min)/mean` of the member radii.
    pub fn radial_spread(&self) -> f64 {
        let (lo, hi) = self
            .members
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                (lo.min(p.radius), hi.max(p.radius))
            });
        if self.radius == 0.0 {
            hi - lo
        } else {
            (hi - lo) / self.radius
        }
    }

    /// Largest deviation of consecutive angular gaps from `2π/count`.
    pub fn angular_gap_error(&self) -> f64 {
        let n = self.members.len();
        if n < 2 {
            return 0.0;
        }
        let expected = 2.0 * PI / n as f64;
        let angles: Vec<f64> = self.members.iter().map(PlanarPoint::angle).collect();
        (0..n)
            .map(|k| {
                let next = if k + 1 == n { angles[0] + 2.0 * PI } else { angles[k + 1] };
                (next - angles[k] - expected).abs()
            })
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug)]
pub struct CircleSpectrum {
    pub mode: Mode,
    /// Ascending radius.
    pub circles: Vec<Circle>,
}

impl CircleSpectrum {
    pub fn radii(&self) -> Vec<f64> {
        self.circles.iter().map(|c| c.radius).collect()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.circles.iter().map(|c| c.count).collect()
    }

    pub fn point_count(&self) -> usize {
        self.circles.iter().map(|c| c.count).sum()
    }

    pub fn max_radius(&self) -> f64 {
        self.circles.last().map_or(0.0, |c| c.radius)
    }
}

fn same_circle(r_lo: f64, r_hi: f64, rel_tol: f64) -> bool {
    r_hi - r_lo <= rel_tol * r_hi || r_hi - r_lo <= 1e-12
}

/// Groups points into concentric circles by single linkage on the sorted
/// radii with relative tolerance `rel_tol`.
pub fn circle_spectrum(points: &[PlanarPoint], rel_tol: f64, mode: Mode) -> CircleSpectrum {
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a.radius.total_cmp(&b.radius).then(a.source.cmp(&b.source)));
    let mut groups: Vec<Vec<PlanarPoint>> = Vec::new();
    for p in sorted {
        match groups.last_mut() {
            Some(g) if same_circle(g.last().expect("nonempty").radius, p.radius, rel_tol) => {
                g.push(p)
            }
            _ => groups.push(vec![p]),
        }
    }
    let circles = groups
        .into_iter()
        .map(|mut members| {
            let radius = members.iter().map(|p| p.radius).sum::<f64>() / members.len() as f64;
            members.sort_by(|a, b| a.angle().total_cmp(&b.angle()).then(a.source.cmp(&b.source)));
            Circle {
                radius,
                count: members.len(),
                members,
            }
        })
        .collect();
    CircleSpectrum { mode, circles }
}

/// Image radius of each simple root, indexed like the simple roots.
pub fn simple_root_radii(projection: &dyn Projection, plane: &CoxeterPlane, rs: &RootSystem) -> Vec<f64> {
    projection
        .project_all(plane, rs.simples())
        .iter()
        .map(|p| p.radius)
        .collect()
}
