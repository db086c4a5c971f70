//! The E8 mass spectrum, three ways.
//!
//! * closed form: `m₂ = τm₁`, `m₃ = 2m₁cos(π/30)`, `m₄ = 2m₂cos(7π/30)`,
//!   `m₅ = 2m₂cos(2π/15)`, `m₆..m₈ = τ·(m₃, m₄, m₅)`;
//! * affine Toda: square roots of the eigenvalues of
//!   `M = Σ_{i=0}^{8} n_i α_i ⊗ α_i` with `α₀ = −θ`, `n₀ = 1`;
//! * geometry: radii of the projected simple roots, norms of projected
//!   fundamental weights, and the Perron vector of `2I − C` itself.
//!
//! Every route is a [`MassRoute`] in a name-keyed registry, so reports can
//! compare any pair.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::coxplane::PlaneData;
use crate::error::{Error, Result};
use crate::linalg::{jacobi_eigen, Matrix};
use crate::project::{fundamental_weights, simple_root_radii, Orthogonal, Projection, Skew};
use crate::registry::{Named, Registry};
use crate::roots::{RootSystem, Vector};
use crate::scalars::tau_f64;

/// Eight masses in ascending order.
#[derive(Clone, Debug, PartialEq)]
pub struct MassSpectrum {
    pub m1: f64,
    pub masses: Vec<f64>,
}

pub fn zamolodchikov_spectrum(m1: f64) -> Result<MassSpectrum> {
    if !(m1 > 0.0 && m1.is_finite()) {
        return Err(Error::InvalidArgument(format!("m1 must be positive, got {m1}")));
    }
    let tau = tau_f64();
    let m2 = tau * m1;
    let m3 = 2.0 * m1 * (PI / 30.0).cos();
    let m4 = 2.0 * m2 * (7.0 * PI / 30.0).cos();
    let m5 = 2.0 * m2 * (2.0 * PI / 15.0).cos();
    let mut masses = vec![m1, m2, m3, m4, m5, tau * m3, tau * m4, tau * m5];
    masses.sort_by(f64::total_cmp);
    Ok(MassSpectrum { m1, masses })
}

/// The affine Toda mass matrix `M` (rank × rank) and its companion `N`
/// ((rank+1) × (rank+1)), both at unit mass scale.
#[derive(Clone, Debug)]
pub struct TodaMassMatrix {
    pub m: Matrix,
    pub n: Matrix,
    /// `n₀ = 1` followed by the highest-root marks.
    pub marks: Vec<u32>,
}

impl TodaMassMatrix {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        let (theta, marks) = rs.highest_root()?;
        let mut affine: Vec<Vector> = vec![-&theta];
        affine.extend(rs.simples().iter().cloned());
        let mut all_marks = vec![1];
        all_marks.extend(marks);
        let dim = rs.rank();
        let mut m = Matrix::zeros(dim);
        for (alpha, &n) in affine.iter().zip(&all_marks) {
            for a in 0..dim {
                for b in 0..dim {
                    m[(a, b)] += n as f64 * alpha[a] * alpha[b];
                }
            }
        }
        // Both M and N are Gram forms of the array with rows √n_i·α_i,
        // so they share their nonzero spectrum.
        let n = Matrix::from_fn(dim + 1, |i, j| {
            (all_marks[i] as f64 * all_marks[j] as f64).sqrt() * affine[i].dot(&affine[j])
        });
        Ok(Self {
            m,
            n,
            marks: all_marks,
        })
    }

    /// Ascending eigenvalues of `M`.
    pub fn m_eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(jacobi_eigen(&self.m)?.values)
    }

    /// Ascending eigenvalues of `N`; the first is zero.
    pub fn n_eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(jacobi_eigen(&self.n)?.values)
    }

    /// Square roots of the eigenvalues of `M`, ascending.
    pub fn masses(&self) -> Result<Vec<f64>> {
        Ok(self.m_eigenvalues()?.into_iter().map(|x| x.max(0.0).sqrt()).collect())
    }
}

/// Comparison of two spectra up to scale.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioReport {
    pub max_rel_dev: f64,
    /// Sorted `a` divided by its smallest entry.
    pub ratios_a: Vec<f64>,
    pub ratios_b: Vec<f64>,
    /// `pairing[k] = (i, j)`: the k-th smallest entries were `a[i]` and `b[j]`.
    pub pairing: Vec<(usize, usize)>,
}

fn sorted_with_index(v: &[f64]) -> Vec<(usize, f64)> {
    let mut s: Vec<(usize, f64)> = v.iter().copied().enumerate().collect();
    s.sort_by(|x, y| x.1.total_cmp(&y.1).then(x.0.cmp(&y.0)));
    s
}

/// Sorts both lists, normalizes each by its smallest entry and reports the
/// largest componentwise relative deviation.
pub fn ratio_report(a: &[f64], b: &[f64]) -> Result<RatioReport> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    if a.is_empty() || a.iter().chain(b).any(|&x| x.is_nan() || x <= 0.0) {
        return Err(Error::InvalidArgument("ratio report needs positive entries".into()));
    }
    let sa = sorted_with_index(a);
    let sb = sorted_with_index(b);
    let ratios_a: Vec<f64> = sa.iter().map(|(_, x)| x / sa[0].1).collect();
    let ratios_b: Vec<f64> = sb.iter().map(|(_, x)| x / sb[0].1).collect();
    let max_rel_dev = ratios_a
        .iter()
        .zip(&ratios_b)
        .map(|(x, y)| ((x - y) / y).abs())
        .fold(0.0, f64::max);
    Ok(RatioReport {
        max_rel_dev,
        ratios_a,
        ratios_b,
        pairing: sa.iter().zip(&sb).map(|(x, y)| (x.0, y.0)).collect(),
    })
}

/// One way of producing a mass spectrum (up to scale) from a root system.
pub trait MassRoute: Named + Send + Sync {
    fn describe(&self) -> &'static str;
    /// Positive values, one per simple root, in no particular order.
    fn spectrum(&self, data: &PlaneData) -> Result<Vec<f64>>;
}

macro_rules! route {
    ($ty:ident, $name:literal) => {
        #[derive(Clone, Copy, Debug, Default)]
        pub struct $ty;
        impl Named for $ty {
            fn name(&self) -> &'static str {
                $name
            }
        }
    };
}

route!(Zamolodchikov, "zamolodchikov");
route!(TodaM, "toda");
route!(TodaN, "toda-n");
route!(GossetOrtho, "gosset-ortho");
route!(GossetSkew, "gosset-skew");
route!(PerronVector, "perron");
route!(WeightNorms, "weights");

fn require_rank8(data: &PlaneData) -> Result<()> {
    if data.roots.rank() == 8 && data.roots.coxeter_number() == 30 {
        Ok(())
    } else {
        Err(Error::WrongDiagram(data.roots.diagram().label()))
    }
}

impl MassRoute for Zamolodchikov {
    fn describe(&self) -> &'static str {
        "closed-form bound-state masses, m1 = 1"
    }
    fn spectrum(&self, data: &PlaneData) -> Result<Vec<f64>> {
        require_rank8(data)?;
        Ok(zamolodchikov_spectrum(1.0)?.masses)
    }
}

impl MassRoute for TodaM {
    fn describe(&self) -> &'static str {
        "square roots of the affine Toda mass matrix eigenvalues"
    }
    fn spectrum(&self, data: &PlaneData) -> Result<Vec<f64>> {
        TodaMassMatrix::new(&data.roots)?.masses()
    }
}

impl MassRoute for TodaN {
    fn describe(&self) -> &'static str {
        "square roots of the nonzero eigenvalues of N"
    }
    fn spectrum(&self, data: &PlaneData) -> Result<Vec<f64>> {
        let ev = TodaMassMatrix::new(&data.roots)?.n_eigenvalues()?;
        Ok(ev[1..].iter().map(|x| x.max(0.0).sqrt()).collect())
    }
}

impl MassRoute for GossetOrtho {
    fn describe(&self) -> &'static str {
        "orthogonal-projection radii of the simple roots"
    }
    fn spectrum(&self, data: &PlaneData) -> Result<Vec<f64>> {
        Ok(simple_root_radii(&Orthogonal, &data.plane, &data.roots))
    }
}

impl MassRoute for GossetSkew {
    fn describe(&self) -> &'static str {
        "skew-projection radii of the simple roots"
    }
    fn spectrum(&self, data: &PlaneData) -> Result<Vec<f64>> {
        Ok(simple_root_radii(&Skew, &data.plane, &data.roots))
    }
}

impl MassRoute for PerronVector {
    fn describe(&self) -> &'static str {
        "Perron eigenvector components of 2I - C"
    }
    fn spectrum(&self, data: &PlaneData) -> Result<Vec<f64>> {
        Ok(data.plane.z.clone())
    }
}

impl MassRoute for WeightNorms {
    fn describe(&self) -> &'static str {
        "orthogonal-projection norms of the fundamental weights"
    }
    fn spectrum(&self, data: &PlaneData) -> Result<Vec<f64>> {
        let w = fundamental_weights(&data.roots)?;
        Ok(Orthogonal
            .project_all(&data.plane, &w)
            .iter()
            .map(|p| p.radius)
            .collect())
    }
}

pub type MassRouteRegistry = Registry<dyn MassRoute>;

/// All built-in routes.
pub fn mass_routes() -> MassRouteRegistry {
    let mut r: MassRouteRegistry = Registry::new("mass route");
    r.register(Arc::new(Zamolodchikov))
        .register(Arc::new(TodaM))
        .register(Arc::new(TodaN))
        .register(Arc::new(GossetOrtho))
        .register(Arc::new(GossetSkew))
        .register(Arc::new(PerronVector))
        .register(Arc::new(WeightNorms));
    r
}
