//! The H4 ⊂ E8 embedding.
//!
//! Pairing the E8 nodes (1,7),(2,6),(3,5),(4,8) gives two orthogonal copies
//! of the H4 simple roots:
//!
//! ```text
//! β_a  = (α_i + τ·α_j)/√(2+τ)      β'_a = (α_i + σ·α_j)/√(2+σ)
//! ```
//!
//! (with the τ on α₄ for the last pair). Coefficients are kept exact in the
//! golden field and the normalizers symbolically, so Gram products of the
//! β's come out exact.

use std::fmt;

use crate::coxplane::perron_eigenvector;
use crate::diagrams::CoxeterDiagram;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::roots::{RootSystem, Vector};
use crate::scalars::GoldenScalar;

/// E8 node pairs (0-based) whose reflections multiply to the H4 generators.
/// The first node of each pair carries coefficient 1 except in the last
/// pair, where the first (node 4) carries the golden coefficient.
pub const PAIRS: [(usize, usize); 4] = [(0, 6), (1, 5), (2, 4), (3, 7)];

/// Which conjugate a row of `g` is built from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Conjugate {
    /// τ, 144° between the third and fourth roots.
    Tau,
    /// σ, 72° between the third and fourth roots.
    Sigma,
}

impl Conjugate {
    pub fn value(self) -> GoldenScalar {
        match self {
            Conjugate::Tau => GoldenScalar::tau(),
            Conjugate::Sigma => GoldenScalar::sigma(),
        }
    }

    /// `2 + t`, the squared normalizer.
    pub fn normalizer_sq(self) -> GoldenScalar {
        &GoldenScalar::from_int(2) + &self.value()
    }
}

/// `1/(√(2+t_a)·√(2+t_b))` in the golden field. The mixed product is
/// `1/√5` because `(2+τ)(2+σ) = 5`.
fn normalizer_product(a: Conjugate, b: Conjugate) -> GoldenScalar {
    if a == b {
        GoldenScalar::one()
            .try_div(&a.normalizer_sq())
            .expect("2 + t is nonzero")
    } else {
        let prod = &a.normalizer_sq() * &b.normalizer_sq();
        assert_eq!(prod, GoldenScalar::from_int(5));
        GoldenScalar::sqrt5()
            .try_div(&GoldenScalar::from_int(5))
            .expect("nonzero")
    }
}

/// One row of the change of basis `g`: `β = (Σ coeffs_i α_i)/√(2+t)`.
#[derive(Clone, PartialEq, Debug)]
pub struct FoldingRow {
    pub coeffs: Vec<GoldenScalar>,
    pub conjugate: Conjugate,
}

impl FoldingRow {
    fn new(pair_index: usize, conjugate: Conjugate) -> Self {
        let (i, j) = PAIRS[pair_index];
        let mut coeffs = vec![GoldenScalar::zero(); 8];
        let t = conjugate.value();
        if pair_index == 3 {
            coeffs[i] = t;
            coeffs[j] = GoldenScalar::one();
        } else {
            coeffs[i] = GoldenScalar::one();
            coeffs[j] = t;
        }
        Self { coeffs, conjugate }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        let norm = self.conjugate.normalizer_sq().to_f64().sqrt();
        self.coeffs.iter().map(|c| c.to_f64() / norm).collect()
    }
}

/// Square matrix over the golden field.
#[derive(Clone, PartialEq, Debug)]
pub struct GoldenMatrix {
    pub rows: Vec<Vec<GoldenScalar>>,
}

impl GoldenMatrix {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &GoldenScalar {
        &self.rows[i][j]
    }

    /// Sub-block with rows and columns `range`.
    pub fn block(&self, range: std::ops::Range<usize>) -> GoldenMatrix {
        GoldenMatrix {
            rows: self.rows[range.clone()]
                .iter()
                .map(|r| r[range.clone()].to_vec())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(self.dim(), |i, j| self.rows[i][j].to_f64())
    }

    /// Exact Gram matrix of a diagram, if all entries lie in the golden field.
    pub fn from_diagram(d: &CoxeterDiagram) -> Option<GoldenMatrix> {
        let g = d.gram_matrix();
        let n = g.dim();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| g.exact(i, j).cloned()).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(GoldenMatrix { rows })
    }
}

impl fmt::Display for GoldenMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Folding {
    /// Rows 0..4 are the τ block (β), rows 4..8 the σ block (β').
    pub g: Vec<FoldingRow>,
    pub beta: Vec<Vector>,
    pub beta_prime: Vec<Vector>,
    cartan: GoldenMatrix,
    e8: RootSystem,
}

/// True when `rs` is built on the E8 diagram with the folding labeling.
fn is_e8(rs: &RootSystem) -> bool {
    let d = rs.diagram();
    let reference = CoxeterDiagram::e8();
    d.rank() == 8 && d.edges().eq(reference.edges())
}

impl Folding {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        if !is_e8(rs) {
            return Err(Error::WrongDiagram(rs.diagram().label()));
        }
        let cartan = GoldenMatrix::from_diagram(rs.diagram()).expect("E8 Gram is exact");
        let g: Vec<FoldingRow> = [Conjugate::Tau, Conjugate::Sigma]
            .into_iter()
            .flat_map(|t| (0..4).map(move |a| FoldingRow::new(a, t)))
            .collect();
        let realize = |row: &FoldingRow| Vector::combination(&row.to_f64(), rs.simples());
        let beta = g[..4].iter().map(realize).collect();
        let beta_prime = g[4..].iter().map(realize).collect();
        Ok(Self {
            g,
            beta,
            beta_prime,
            cartan,
            e8: rs.clone(),
        })
    }

    /// `g·C_E8·gᵀ`, the Gram matrix of `(β₁..β₄, β'₁..β'₄)`, exactly.
    pub fn block_diagonalize(&self) -> GoldenMatrix {
        let n = 8;
        let mut rows = vec![vec![GoldenScalar::zero(); n]; n];
        for (a, ra) in self.g.iter().enumerate() {
            for (b, rb) in self.g.iter().enumerate() {
                let mut acc = GoldenScalar::zero();
                for i in 0..n {
                    if ra.coeffs[i].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        if rb.coeffs[j].is_zero() {
                            continue;
                        }
                        let term = &(&ra.coeffs[i] * self.cartan.get(i, j)) * &rb.coeffs[j];
                        acc = &acc + &term;
                    }
                }
                rows[a][b] = &acc * &normalizer_product(ra.conjugate, rb.conjugate);
            }
        }
        GoldenMatrix { rows }
    }

    /// The composite reflections `R_a = r_i·r_j` over [`PAIRS`].
    pub fn generators(&self) -> Vec<Matrix> {
        PAIRS
            .iter()
            .map(|&(i, j)| &self.e8.generator(i) * &self.e8.generator(j))
            .collect()
    }

    /// Splits `v` into its components in `span(β)` and `span(β')`.
    pub fn split(&self, v: &Vector) -> Result<(Vector, Vector)> {
        let part = |basis: &[Vector]| -> Result<Vector> {
            let gram = Matrix::from_fn(4, |a, b| basis[a].dot(&basis[b]));
            let rhs: Vec<f64> = basis.iter().map(|b| b.dot(v)).collect();
            Ok(Vector::combination(&gram.solve(&rhs)?, basis))
        };
        Ok((part(&self.beta)?, part(&self.beta_prime)?))
    }

    /// Coxeter plane built in two stages: the H4 Perron vector `z` first, then
    /// `γ₁ = z₁β₁ + z₃β₃`, `γ₂ = z₂β₂ + z₄β₄`. Returns `(z, γ₁, γ₂)`.
    pub fn coxeter_plane_via_h4(&self) -> Result<(Vec<f64>, Vector, Vector)> {
        let h4 = CoxeterDiagram::h4();
        let (a, _) = h4.bipartition()?;
        let perron = perron_eigenvector(&h4.gram_matrix().shifted_adjacency(), &a)?;
        let z = perron.vector;
        let gamma1 = Vector::combination(&[z[0], z[2]], &[self.beta[0].clone(), self.beta[2].clone()]);
        let gamma2 = Vector::combination(&[z[1], z[3]], &[self.beta[1].clone(), self.beta[3].clone()]);
        Ok((z, gamma1, gamma2))
    }
}

/// Exact `block-diag(C_H4(τ), C_H4(σ))`.
pub fn expected_block_diagonal() -> GoldenMatrix {
    let upper = GoldenMatrix::from_diagram(&CoxeterDiagram::h4()).expect("exact");
    let lower = GoldenMatrix::from_diagram(&CoxeterDiagram::h4_prime()).expect("exact");
    let mut rows = vec![vec![GoldenScalar::zero(); 8]; 8];
    for i in 0..4 {
        for j in 0..4 {
            rows[i][j] = upper.get(i, j).clone();
            rows[i + 4][j + 4] = lower.get(i, j).clone();
        }
    }
    GoldenMatrix { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::tau_f64;

    fn folding() -> Folding {
        Folding::new(&RootSystem::new(CoxeterDiagram::e8()).unwrap()).unwrap()
    }

    #[test]
    fn rejects_other_diagrams() {
        let h4 = RootSystem::new(CoxeterDiagram::h4()).unwrap();
        assert!(matches!(Folding::new(&h4), Err(Error::WrongDiagram(_))));
        let e7 = RootSystem::new(CoxeterDiagram::e7()).unwrap();
        assert!(matches!(Folding::new(&e7), Err(Error::WrongDiagram(_))));
    }

    #[test]
    fn exact_gram_of_the_betas() {
        let gram = folding().block_diagonalize();
        let tau = GoldenScalar::tau();
        let sigma = GoldenScalar::sigma();
        assert_eq!(gram.get(2, 3), &-tau.clone());
        assert_eq!(gram.get(6, 7), &-sigma);
        assert_eq!(gram.get(0, 5), &GoldenScalar::zero());
        for a in 0..8 {
            assert_eq!(gram.get(a, a), &GoldenScalar::from_int(2));
        }
        assert_eq!(gram, expected_block_diagonal());
    }

    #[test]
    fn lower_block_entry_is_positive() {
        // −σ ≈ +0.618: the 72° convention.
        let gram = folding().block_diagonalize();
        assert!((gram.get(6, 7).to_f64() - 0.618_033_988_749_895).abs() < 1e-15);
    }

    #[test]
    fn float_betas_match_exact_gram() {
        let f = folding();
        let exact = f.block_diagonalize().to_matrix();
        let all: Vec<&Vector> = f.beta.iter().chain(&f.beta_prime).collect();
        for a in 0..8 {
            for b in 0..8 {
                assert!((all[a].dot(all[b]) - exact[(a, b)]).abs() < 1e-12);
            }
        }
        assert!((f.beta[2].dot(&f.beta[3]) + tau_f64()).abs() < 1e-12);
    }

    #[test]
    fn generators_act_as_h4_reflections() {
        let f = folding();
        let r = f.generators();
        for a in 0..4 {
            for b in 0..4 {
                let image = f.beta[b].transform(&r[a]);
                let expected = f.beta[b].add_scaled(-f.beta[a].dot(&f.beta[b]), &f.beta[a]);
                assert!(image.approx_eq(&expected, 1e-12), "R{} β{}", a + 1, b + 1);
            }
        }
        assert!(f.beta[0].transform(&r[0]).approx_eq(&-&f.beta[0], 1e-12));
        assert!(f.beta[2].transform(&r[0]).approx_eq(&f.beta[2], 1e-12));
    }

    #[test]
    fn generator_orders_follow_h4() {
        let f = folding();
        let r = f.generators();
        let h4 = CoxeterDiagram::h4();
        let rot = &r[2] * &r[3];
        let mut v = f.beta[2].clone();
        for _ in 0..5 {
            v = v.transform(&rot);
        }
        assert!(v.approx_eq(&f.beta[2], 1e-9));
        for a in 0..4 {
            assert_eq!((&r[a] * &r[a]).order(2, 1e-9), Some(1));
            for b in a + 1..4 {
                let m = h4.bond(a, b).num as usize;
                assert_eq!((&r[a] * &r[b]).order(10, 1e-9), Some(m), "R{}R{}", a + 1, b + 1);
            }
        }
    }

    #[test]
    fn every_root_splits_into_orthogonal_parts() {
        let f = folding();
        for v in f.e8.roots() {
            let (vt, vs) = f.split(v).unwrap();
            assert!((vt.norm_sq() + vs.norm_sq() - 2.0).abs() < 1e-9);
            assert!((&vt + &vs).approx_eq(v, 1e-9));
        }
    }
}
