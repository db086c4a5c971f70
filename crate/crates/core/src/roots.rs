//! Realized root systems: simple roots as vectors, reflections, closure.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Deref, Mul, Neg, Sub};

use crate::diagrams::{CoxeterDiagram, GramMatrix};
use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix};

/// Roots closer than this in max-norm are the same root.
pub const DEDUP_TOL: f64 = 1e-6;

/// Closure gives up past this many vectors.
pub const CLOSURE_CAP: usize = 1_000_000;

/// A vector in the ambient Euclidean space of a root system.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct Vector(pub Vec<f64>);

impl Vector {
    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        dot(&self.0, &other.0)
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scale(&self, k: f64) -> Vector {
        Vector(self.0.iter().map(|x| x * k).collect())
    }

    /// `self + k·other`.
    pub fn add_scaled(&self, k: f64, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + k * b).collect())
    }

    pub fn max_abs_diff(&self, other: &Vector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Vector, tol: f64) -> bool {
        self.dim() == other.dim() && self.max_abs_diff(other) <= tol
    }

    /// `Σ coeffs[i]·basis[i]`.
    pub fn combination(coeffs: &[f64], basis: &[Vector]) -> Vector {
        let n = basis.first().map_or(0, Vector::dim);
        coeffs
            .iter()
            .zip(basis)
            .fold(Vector::zeros(n), |acc, (&k, b)| acc.add_scaled(k, b))
    }

    pub fn transform(&self, m: &Matrix) -> Vector {
        Vector(m.apply(&self.0))
    }
}

impl Deref for Vector {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for Vector {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        self.add_scaled(1.0, rhs)
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        self.add_scaled(-1.0, rhs)
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self.scale(-1.0)
    }
}

impl Mul<&Vector> for f64 {
    type Output = Vector;
    fn mul(self, rhs: &Vector) -> Vector {
        rhs.scale(self)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| format!("{x:.6}")).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `v − 2(v·root)/(root·root)·root`.
pub fn reflect(root: &Vector, v: &Vector) -> Result<Vector> {
    let rr = root.norm_sq();
    if rr == 0.0 {
        return Err(Error::ZeroRoot);
    }
    Ok(v.add_scaled(-2.0 * v.dot(root) / rr, root))
}

/// Matrix of the reflection in the hyperplane orthogonal to `root`.
pub fn reflection_matrix(root: &Vector) -> Result<Matrix> {
    let rr = root.norm_sq();
    if rr == 0.0 {
        return Err(Error::ZeroRoot);
    }
    let n = root.dim();
    Ok(Matrix::from_fn(n, |i, j| {
        let d = if i == j { 1.0 } else { 0.0 };
        d - 2.0 * root[i] * root[j] / rr
    }))
}

/// Lookup of vectors up to [`DEDUP_TOL`], keyed on coordinates rounded to
/// six decimals. Key collisions are re-checked by distance.
#[derive(Clone, Debug, Default)]
pub struct VectorIndex {
    buckets: HashMap<Vec<i64>, Vec<usize>>,
    items: Vec<Vector>,
}

fn rounded_key(v: &Vector) -> Vec<i64> {
    v.iter().map(|x| (x * 1e6).round() as i64).collect()
}

impl VectorIndex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn find(&self, v: &Vector) -> Option<usize> {
        self.buckets
            .get(&rounded_key(v))?
            .iter()
            .copied()
            .find(|&i| self.items[i].approx_eq(v, DEDUP_TOL))
    }

    /// Inserts unless already present; returns the index and whether it was new.
    pub fn insert(&mut self, v: Vector) -> (usize, bool) {
        if let Some(i) = self.find(&v) {
            return (i, false);
        }
        let i = self.items.len();
        self.buckets.entry(rounded_key(&v)).or_default().push(i);
        self.items.push(v);
        (i, true)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn into_items(self) -> Vec<Vector> {
        self.items
    }
}

/// Simple roots as the rows of the lower Cholesky factor of the Gram matrix:
/// root `i` has zero coordinates beyond index `i`.
pub fn realize_simple_roots(diagram: &CoxeterDiagram) -> Result<Vec<Vector>> {
    let l = diagram.gram_matrix().to_matrix().cholesky()?;
    Ok((0..diagram.rank()).map(|i| Vector(l.row(i).to_vec())).collect())
}

/// Closure of `simples` under their own reflections, breadth first.
/// The result is sorted lexicographically on rounded coordinates.
pub fn enumerate_roots(simples: &[Vector]) -> Result<Vec<Vector>> {
    let mut index = VectorIndex::new();
    let mut frontier = Vec::new();
    for s in simples {
        if s.norm_sq() == 0.0 {
            return Err(Error::ZeroRoot);
        }
        if index.insert(s.clone()).1 {
            frontier.push(s.clone());
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for s in simples {
                let w = reflect(s, v)?;
                if index.insert(w.clone()).1 {
                    if index.len() > CLOSURE_CAP {
                        return Err(Error::NotFiniteType(format!(
                            "root closure exceeded {CLOSURE_CAP} vectors"
                        )));
                    }
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    let mut roots = index.into_items();
    roots.sort_by_cached_key(rounded_key);
    Ok(roots)
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    diagram: CoxeterDiagram,
    gram: GramMatrix,
    simples: Vec<Vector>,
    roots: Vec<Vector>,
    coxeter_number: usize,
    marks: Option<Vec<u32>>,
}

impl RootSystem {
    pub fn new(diagram: CoxeterDiagram) -> Result<Self> {
        let simples = realize_simple_roots(&diagram)?;
        Self::from_simples(diagram, simples)
    }

    /// Uses a caller-supplied realization (any basis with the right Gram matrix).
    pub fn from_simples(diagram: CoxeterDiagram, simples: Vec<Vector>) -> Result<Self> {
        let gram = diagram.gram_matrix();
        if simples.len() != diagram.rank() {
            return Err(Error::LengthMismatch(simples.len(), diagram.rank()));
        }
        let roots = enumerate_roots(&simples)?;
        let coxeter_number = roots.len() / diagram.rank();
        let mut rs = Self {
            diagram,
            gram,
            simples,
            roots,
            coxeter_number,
            marks: None,
        };
        if rs.diagram.is_crystallographic() && rs.diagram.is_connected() {
            rs.marks = Some(rs.highest_root()?.1);
        }
        Ok(rs)
    }

    pub fn parse(spec: &str) -> Result<Self> {
        Self::new(CoxeterDiagram::parse(spec)?)
    }

    pub fn diagram(&self) -> &CoxeterDiagram {
        &self.diagram
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.diagram.rank()
    }

    pub fn simples(&self) -> &[Vector] {
        &self.simples
    }

    pub fn simple(&self, i: usize) -> &Vector {
        &self.simples[i]
    }

    pub fn roots(&self) -> &[Vector] {
        &self.roots
    }

    /// `h = |roots| / rank`.
    pub fn coxeter_number(&self) -> usize {
        self.coxeter_number
    }

    /// Highest-root coefficients `n_i`; `None` for non-crystallographic types.
    pub fn marks(&self) -> Option<&[u32]> {
        self.marks.as_deref()
    }

    /// The simple reflection `r_i` applied to `v`.
    pub fn reflect_simple(&self, i: usize, v: &Vector) -> Vector {
        reflect(&self.simples[i], v).expect("simple roots are nonzero")
    }

    pub fn generator(&self, i: usize) -> Matrix {
        reflection_matrix(&self.simples[i]).expect("simple roots are nonzero")
    }

    /// Coefficients of `v` in the simple-root basis.
    pub fn coefficients(&self, v: &Vector) -> Result<Vec<f64>> {
        let rhs: Vec<f64> = self.simples.iter().map(|s| s.dot(v)).collect();
        self.gram.to_matrix().solve(&rhs)
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.roots.iter().any(|r| r.approx_eq(v, DEDUP_TOL))
    }

    /// The root with the largest coefficient sum, and its integer coefficients.
    pub fn highest_root(&self) -> Result<(Vector, Vec<u32>)> {
        if !self.diagram.is_crystallographic() {
            return Err(Error::NonCrystallographic);
        }
        if !self.diagram.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut best: Option<(f64, &Vector, Vec<f64>)> = None;
        for r in &self.roots {
            let coeffs = self.coefficients(r)?;
            let sum: f64 = coeffs.iter().sum();
            if best.as_ref().is_none_or(|(s, _, _)| sum > *s + 0.5) {
                best = Some((sum, r, coeffs));
            }
        }
        let (_, theta, coeffs) = best.ok_or(Error::NotFiniteType("empty root set".into()))?;
        let marks = coeffs
            .iter()
            .map(|&x| {
                let n = x.round();
                if (x - n).abs() > 1e-9 || n < 1.0 {
                    Err(Error::NonCrystallographic)
                } else {
                    Ok(n as u32)
                }
            })
            .collect::<Result<Vec<u32>>>()?;
        Ok((theta.clone(), marks))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(name: &str) -> RootSystem {
        RootSystem::parse(name).unwrap()
    }

    #[test]
    fn a1_realization() {
        let s = realize_simple_roots(&CoxeterDiagram::a(1).unwrap()).unwrap();
        assert_eq!(s, vec![Vector(vec![2f64.sqrt()])]);
    }

    #[test]
    fn a2_realization() {
        let s = realize_simple_roots(&CoxeterDiagram::a(2).unwrap()).unwrap();
        assert!(s[0].approx_eq(&Vector(vec![2f64.sqrt(), 0.0]), 1e-15));
        assert!(s[1].approx_eq(&Vector(vec![-1.0 / 2f64.sqrt(), 1.5f64.sqrt()]), 1e-15));
        assert!((s[0].dot(&s[1]) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn realization_reproduces_gram() {
        for name in ["H4", "E8", "D5", "I2(30)"] {
            let d = CoxeterDiagram::parse(name).unwrap();
            let s = realize_simple_roots(&d).unwrap();
            let g = d.gram_matrix().to_matrix();
            for i in 0..d.rank() {
                for j in 0..d.rank() {
                    assert!((s[i].dot(&s[j]) - g[(i, j)]).abs() < 1e-9);
                }
                assert!(s[i][i + 1..].iter().all(|&x| x == 0.0));
            }
        }
        let s = realize_simple_roots(&CoxeterDiagram::h4()).unwrap();
        assert!((s[2].dot(&s[3]) + crate::scalars::tau_f64()).abs() < 1e-12);
    }

    #[test]
    fn indefinite_diagram_is_rejected() {
        let d = CoxeterDiagram::parse("rank=3;edges=1-2,2-3,1-3").unwrap();
        assert!(matches!(RootSystem::new(d), Err(Error::NotFiniteType(_))));
    }

    #[test]
    fn reflections() {
        let s = realize_simple_roots(&CoxeterDiagram::a(2).unwrap()).unwrap();
        assert!(reflect(&s[0], &s[0]).unwrap().approx_eq(&-&s[0], 1e-15));
        let perp = Vector(vec![0.0, 1.0]);
        assert!(reflect(&s[0], &perp).unwrap().approx_eq(&perp, 1e-15));
        assert!(reflect(&s[0], &s[1]).unwrap().approx_eq(&(&s[0] + &s[1]), 1e-15));
        assert_eq!(reflect(&Vector::zeros(2), &perp), Err(Error::ZeroRoot));
    }

    #[test]
    fn root_counts() {
        let table = [
            ("A1", 2, 2),
            ("A2", 6, 3),
            ("A3", 12, 4),
            ("A4", 20, 5),
            ("D4", 24, 6),
            ("D5", 40, 8),
            ("E6", 72, 12),
            ("E7", 126, 18),
            ("E8", 240, 30),
            ("H3", 30, 10),
            ("H4", 120, 30),
            ("H4'", 120, 30),
            ("I2(5)", 10, 5),
            ("I2(30)", 60, 30),
        ];
        for (name, count, h) in table {
            let r = rs(name);
            assert_eq!(r.roots().len(), count, "{name}");
            assert_eq!(r.coxeter_number(), h, "{name}");
        }
    }

    #[test]
    fn e8_roots_are_a_symmetric_norm_two_set() {
        let r = rs("E8");
        for v in r.roots() {
            assert!((v.norm_sq() - 2.0).abs() < 1e-9);
            assert!(r.contains(&-v));
            for s in r.simples() {
                let k = v.dot(s);
                assert!((k - k.round()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn marks() {
        assert_eq!(rs("A2").marks(), Some(&[1, 1][..]));
        assert_eq!(rs("A3").marks(), Some(&[1, 1, 1][..]));
        let e8 = rs("E8");
        let marks = e8.marks().unwrap();
        assert_eq!(marks.iter().sum::<u32>(), 29);
        let mut sorted = marks.to_vec();
        sorted.sort();
        assert_eq!(sorted, vec![2, 2, 3, 3, 4, 4, 5, 6]);
        // Node 5 carries the branch, hence the largest mark.
        assert_eq!(marks[4], 6);
        let (theta, _) = e8.highest_root().unwrap();
        assert!(e8.contains(&theta));
        assert_eq!(rs("H4").highest_root().err(), Some(Error::NonCrystallographic));
        assert!(rs("H4").marks().is_none());
    }

    #[test]
    fn a2_highest_root() {
        let r = rs("A2");
        let (theta, marks) = r.highest_root().unwrap();
        assert!(theta.approx_eq(&(r.simple(0) + r.simple(1)), 1e-12));
        assert_eq!(marks, vec![1, 1]);
    }

    #[test]
    fn marks_sum_to_h_minus_one() {
        for name in ["A2", "A5", "D4", "D6", "E6", "E7", "E8"] {
            let r = rs(name);
            let sum: u32 = r.marks().unwrap().iter().sum();
            assert_eq!(sum as usize, r.coxeter_number() - 1, "{name}");
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = rs("H4");
        let b = rs("H4");
        assert_eq!(a.roots(), b.roots());
    }
}
