//! The Coxeter plane of a finite Coxeter group.
//!
//! The plane is spanned by `γ₁ = Σ_{i∈A} z_i α_i` and `γ₂ = Σ_{i∈B} z_i α_i`
//! where `A`, `B` is the bipartition of the diagram and `z` the Perron vector
//! of `2I − C`. With `Σ_A z_i² = Σ_B z_i² = 1` these are unit-√2 roots of an
//! `I₂(h)` subsystem: `γ₁·γ₂ = −c`, `c = 2cos(π/h)`.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::roots::{reflection_matrix, RootSystem, Vector, VectorIndex};
use crate::scalars::EIGEN_TOL;

pub const POWER_ITERATION_CAP: usize = 100_000;

/// Largest eigenvalue and its positive eigenvector.
#[derive(Clone, Debug)]
pub struct PerronPair {
    pub value: f64,
    pub vector: Vec<f64>,
    pub iterations: usize,
}

fn is_irreducible(m: &Matrix) -> bool {
    let n = m.dim();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && (m[(i, j)] != 0.0 || m[(j, i)] != 0.0) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Perron pair of a symmetric matrix with nonnegative off-diagonal entries
/// (here always `2I − C`), by power iteration on `M + 2I`. The vector is
/// scaled so that `Σ_{i∈normalize_on} z_i² = 1`.
pub fn perron_eigenvector(m: &Matrix, normalize_on: &BTreeSet<usize>) -> Result<PerronPair> {
    let n = m.dim();
    if n == 0 || !is_irreducible(m) {
        return Err(Error::Disconnected);
    }
    if normalize_on.is_empty() || normalize_on.iter().any(|&i| i >= n) {
        return Err(Error::InvalidArgument("bad normalization index set".into()));
    }
    let shift = 2.0;
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut value = f64::NAN;
    let mut converged_at = None;
    for it in 1..=POWER_ITERATION_CAP {
        let mut y = m.apply(&x);
        for (yi, xi) in y.iter_mut().zip(&x) {
            *yi += shift * xi;
        }
        let rayleigh: f64 = y.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() - shift;
        let len = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        for yi in &mut y {
            *yi /= len;
        }
        let step = y
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let value_step = (rayleigh - value).abs();
        x = y;
        value = rayleigh;
        // The eigenvalue converges twice as fast as the vector, so the
        // vector gets its own stopping test.
        if value_step < EIGEN_TOL && step < 1e-3 * EIGEN_TOL {
            converged_at = Some(it);
            break;
        }
    }
    let iterations = converged_at.ok_or(Error::NoConvergence(POWER_ITERATION_CAP))?;
    if x.iter().any(|&v| v <= 0.0) {
        return Err(Error::InvalidArgument(
            "Perron vector is not strictly positive; matrix is not of the form 2I − C".into(),
        ));
    }
    let scale = normalize_on.iter().map(|&i| x[i] * x[i]).sum::<f64>().sqrt();
    Ok(PerronPair {
        value,
        vector: x.iter().map(|v| v / scale).collect(),
        iterations,
    })
}

#[derive(Clone, Debug)]
pub struct CoxeterPlane {
    pub c: f64,
    pub z: Vec<f64>,
    pub gamma1: Vector,
    pub gamma2: Vector,
    pub color_a: Vec<usize>,
    pub color_b: Vec<usize>,
    /// `|roots| / rank`.
    pub h: usize,
}

impl CoxeterPlane {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        let d = rs.diagram();
        if d.rank() < 2 {
            return Err(Error::InvalidArgument("a Coxeter plane needs rank ≥ 2".into()));
        }
        if !d.is_connected() {
            return Err(Error::Disconnected);
        }
        let (a, b) = d.bipartition()?;
        let perron = perron_eigenvector(&rs.gram().shifted_adjacency(), &a)?;
        let z = perron.vector;
        let span = |set: &BTreeSet<usize>| {
            set.iter()
                .fold(Vector::zeros(rs.rank()), |acc, &i| acc.add_scaled(z[i], rs.simple(i)))
        };
        Ok(Self {
            c: perron.value,
            gamma1: span(&a),
            gamma2: span(&b),
            z,
            color_a: a.into_iter().collect(),
            color_b: b.into_iter().collect(),
            h: rs.coxeter_number(),
        })
    }

    /// `h` recovered from `c = 2cos(π/h)`.
    pub fn h_spectral(&self) -> usize {
        (PI / (self.c / 2.0).acos()).round() as usize
    }

    pub fn in_color_a(&self, i: usize) -> bool {
        self.color_a.contains(&i)
    }

    /// `Σ_A z_i²` and `Σ_B z_i²`; both 1 after normalization.
    pub fn color_sums(&self) -> (f64, f64) {
        let sum = |set: &[usize]| set.iter().map(|&i| self.z[i] * self.z[i]).sum();
        (sum(&self.color_a), sum(&self.color_b))
    }
}

/// `S₁` (product of the colour-A reflections) and `S₂` (colour B). Reflections
/// within a class commute, so the order of the product does not matter.
#[derive(Clone, Debug)]
pub struct DihedralPair {
    pub s1: Matrix,
    pub s2: Matrix,
}

impl DihedralPair {
    pub fn new(plane: &CoxeterPlane, rs: &RootSystem) -> Result<Self> {
        let product = |set: &[usize]| -> Result<Matrix> {
            set.iter().try_fold(Matrix::identity(rs.rank()), |acc, &i| {
                Ok(&acc * &reflection_matrix(rs.simple(i))?)
            })
        };
        Ok(Self {
            s1: product(&plane.color_a)?,
            s2: product(&plane.color_b)?,
        })
    }

    /// The bipartite Coxeter element `S₁S₂`.
    pub fn rotation(&self) -> Matrix {
        &self.s1 * &self.s2
    }

    pub fn order(&self, cap: usize) -> Option<usize> {
        self.rotation().order(cap, 1e-9)
    }
}

/// An orbit of the Coxeter element on the roots.
#[derive(Clone, Debug)]
pub struct Orbit {
    /// Index of the simple root labelling the orbit.
    pub label: usize,
    /// `+1` when the orbit contains `α_label` (label in colour A), `−1` when it
    /// contains `−α_label` (colour B).
    pub sign: i8,
    pub members: Vec<Vector>,
}

impl Orbit {
    pub fn representative(&self) -> &Vector {
        &self.members[0]
    }
}

/// Orbits of `⟨S₁S₂⟩` on the roots. There are `rank` of them, each of size
/// `h`, and each contains exactly one of `{α_i : i∈A} ∪ {−α_i : i∈B}`; the
/// orbits are ordered by that label. When `−1` is a power of `S₁S₂`
/// these are also the orbits of the full dihedral group `⟨S₁, S₂⟩`.
pub fn orbit_decomposition(
    rs: &RootSystem,
    plane: &CoxeterPlane,
    dihedral: &DihedralPair,
) -> Result<Vec<Orbit>> {
    let rotation = dihedral.rotation();
    let mut index = VectorIndex::new();
    for r in rs.roots() {
        index.insert(r.clone());
    }
    let n_roots = rs.roots().len();
    let mut owner: Vec<Option<usize>> = vec![None; n_roots];
    let mut orbits = Vec::with_capacity(rs.rank());
    for i in 0..rs.rank() {
        let sign: i8 = if plane.in_color_a(i) { 1 } else { -1 };
        let start = rs.simple(i).scale(sign as f64);
        let start_idx = index
            .find(&start)
            .ok_or_else(|| Error::OrbitConsistency(format!("±α{} is not a root", i + 1)))?;
        if let Some(other) = owner[start_idx] {
            return Err(Error::OrbitConsistency(format!(
                "orbit of label {} also contains the label of {}",
                other + 1,
                i + 1
            )));
        }
        let mut members = Vec::new();
        let mut v = start;
        loop {
            let idx = index
                .find(&v)
                .ok_or_else(|| Error::OrbitConsistency("rotation left the root set".into()))?;
            match owner[idx] {
                Some(o) if o == i => break,
                Some(o) => {
                    return Err(Error::OrbitConsistency(format!(
                        "orbits of labels {} and {} intersect",
                        o + 1,
                        i + 1
                    )))
                }
                None => {}
            }
            owner[idx] = Some(i);
            members.push(v.clone());
            if members.len() > n_roots {
                return Err(Error::OrbitConsistency("orbit does not close".into()));
            }
            v = v.transform(&rotation);
        }
        orbits.push(Orbit {
            label: i,
            sign,
            members,
        });
    }
    if let Some(missing) = owner.iter().position(Option::is_none) {
        return Err(Error::OrbitConsistency(format!(
            "root {missing} lies in an orbit without a simple-root label"
        )));
    }
    Ok(orbits)
}

/// Everything the projection and mass code needs about one root system.
#[derive(Clone, Debug)]
pub struct PlaneData {
    pub roots: RootSystem,
    pub plane: CoxeterPlane,
    pub dihedral: DihedralPair,
}

impl PlaneData {
    pub fn new(roots: RootSystem) -> Result<Self> {
        let plane = CoxeterPlane::new(&roots)?;
        let dihedral = DihedralPair::new(&plane, &roots)?;
        Ok(Self {
            roots,
            plane,
            dihedral,
        })
    }

    pub fn parse(spec: &str) -> Result<Self> {
        Self::new(RootSystem::parse(spec)?)
    }

    pub fn orbits(&self) -> Result<Vec<Orbit>> {
        orbit_decomposition(&self.roots, &self.plane, &self.dihedral)
    }
}
