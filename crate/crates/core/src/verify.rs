//! Self-checks over a computed root system, each a named [`Check`].

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::coxplane::PlaneData;
use crate::error::Result;
use crate::folding::{expected_block_diagonal, Folding};
use crate::linalg::Matrix;
use crate::masses::{mass_routes, ratio_report, TodaMassMatrix};
use crate::project::{circle_spectrum, projections, simple_root_radii, Mode, CIRCLE_REL_TOL};
use crate::registry::{Named, Registry};
use crate::scalars::tau_f64;

pub const CHECK_TOL: f64 = 1e-9;

/// `(i, j)` with `r(α_j) = τ·r(α_i)` under either projection (0-based).
pub const TAU_LADDER: [(usize, usize); 4] = [(0, 6), (1, 5), (7, 3), (2, 4)];

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {:<16} {}", self.name, self.detail)
    }
}

pub trait Check: Named + Send + Sync {
    /// Whether the check is meaningful for `data` at all.
    fn applies(&self, data: &PlaneData) -> bool;
    /// `Ok((passed, detail))`; errors count as failures.
    fn run(&self, data: &PlaneData) -> Result<(bool, String)>;
}

fn is_e8(data: &PlaneData) -> bool {
    Folding::new(&data.roots).is_ok()
}

macro_rules! check {
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

check!(RootCount, "root-count");
check!(CoxeterNumber, "coxeter-number");
check!(Dihedral, "dihedral");
check!(Orbits, "orbits");
check!(OrthoCircles, "ortho-circles");
check!(FoldingExact, "folding");
check!(TauLadder, "tau-ladder");
check!(MassRoutes, "mass-routes");
check!(TodaN, "toda-n");

impl Check for RootCount {
    fn applies(&self, _: &PlaneData) -> bool {
        true
    }
    fn run(&self, data: &PlaneData) -> Result<(bool, String)> {
        let n = data.roots.roots().len();
        let expected = data.roots.rank() * data.plane.h_spectral();
        Ok((n == expected, format!("{n} roots, rank·h = {expected}")))
    }
}

impl Check for CoxeterNumber {
    fn applies(&self, _: &PlaneData) -> bool {
        true
    }
    fn run(&self, data: &PlaneData) -> Result<(bool, String)> {
        let h = data.roots.coxeter_number();
        let hs = data.plane.h_spectral();
        let c_err = (data.plane.c - 2.0 * (PI / h as f64).cos()).abs();
        let mut ok = h == hs && c_err < 1e-12;
        let mut detail = format!("h = {h}, spectral h = {hs}, |c − 2cos(π/h)| = {c_err:.1e}");
        if let Some(marks) = data.roots.marks() {
            let from_marks = marks.iter().sum::<u32>() as usize + 1;
            ok &= from_marks == h;
            detail.push_str(&format!(", 1 + Σmarks = {from_marks}"));
        }
        Ok((ok, detail))
    }
}

impl Check for Dihedral {
    fn applies(&self, _: &PlaneData) -> bool {
        true
    }
    fn run(&self, data: &PlaneData) -> Result<(bool, String)> {
        let d = &data.dihedral;
        let id = Matrix::identity(data.roots.rank());
        let e1 = (&d.s1 * &d.s1).max_abs_diff(&id);
        let e2 = (&d.s2 * &d.s2).max_abs_diff(&id);
        let order = d.order(10 * data.roots.roots().len().max(1));
        let h = data.roots.coxeter_number();
        Ok((
            e1 < CHECK_TOL && e2 < CHECK_TOL && order == Some(h),
            format!("S1² err {e1:.1e}, S2² err {e2:.1e}, order(S1S2) = {order:?}"),
        ))
    }
}

impl Check for Orbits {
    fn applies(&self, _: &PlaneData) -> bool {
        true
    }
    fn run(&self, data: &PlaneData) -> Result<(bool, String)> {
        let orbits = data.orbits()?;
        let h = data.roots.coxeter_number();
        let sizes: Vec<usize> = orbits.iter().map(|o| o.members.len()).collect();
        let ok = orbits.len() == data.roots.rank() && sizes.iter().all(|&s| s == h);
        Ok((ok, format!("{} orbits, sizes {:?}", orbits.len(), sizes)))
    }
}

impl Check for OrthoCircles {
    fn applies(&self, _: &PlaneData) -> bool {
        true
    }
    fn run(&self, data: &PlaneData) -> Result<(bool, String)> {
        let ortho = projections().get(Mode::Orthogonal.as_str())?;
        let h = data.roots.coxeter_number();
        let mut worst_spread: f64 = 0.0;
        let mut worst_gap: f64 = 0.0;
        for orbit in data.orbits()? {
            let pts = ortho.project_all(&data.plane, &orbit.members);
            let cs = circle_spectrum(&pts, CIRCLE_REL_TOL, Mode::Orthogonal);
            for c in &cs.circles {
                worst_spread = worst_spread.max(c.radial_spread());
                if c.count == h {
                    worst_gap = worst_gap.max(c.angular_gap_error());
                }
            }
        }
        Ok((
            worst_spread < CHECK_TOL && worst_gap < 1e-6,
            format!("orbit radial spread {worst_spread:.1e}, angular gap error {worst_gap:.1e}"),
        ))
    }
}

impl Check for FoldingExact {
    fn applies(&self, data: &PlaneData) -> bool {
        is_e8(data)
    }
    fn run(&self, data: &PlaneData) -> Result<(bool, String)> {
        let f = Folding::new(&data.roots)?;
        let ok = f.block_diagonalize() == expected_block_diagonal();
        Ok((ok, "g·C·gᵀ equals diag(H4, H4') exactly".to_string()))
    }
}

impl Check for TauLadder {
    fn applies(&self, data: &PlaneData) -> bool {
        is_e8(data)
    }
    fn run(&self, data: &PlaneData) -> Result<(bool, String)> {
        let tau = tau_f64();
        let mut worst: f64 = 0.0;
        for p in projections().iter() {
            let r = simple_root_radii(p.as_ref(), &data.plane, &data.roots);
            for &(i, j) in &TAU_LADDER {
                worst = worst.max((r[j] / r[i] - tau).abs() / tau);
            }
        }
        Ok((worst < CHECK_TOL, format!("max |r'/r − τ|/τ = {worst:.1e}")))
    }
}

impl Check for MassRoutes {
    fn applies(&self, data: &PlaneData) -> bool {
        is_e8(data)
    }
    fn run(&self, data: &PlaneData) -> Result<(bool, String)> {
        let routes = mass_routes();
        let reference = routes.get("zamolodchikov")?.spectrum(data)?;
        let mut worst: f64 = 0.0;
        let mut parts = Vec::new();
        for route in routes.iter().filter(|r| r.name() != "zamolodchikov") {
            let dev = ratio_report(&reference, &route.spectrum(data)?)?.max_rel_dev;
            worst = worst.max(dev);
            parts.push(format!("{} {dev:.1e}", route.name()));
        }
        Ok((worst < CHECK_TOL, parts.join(", ")))
    }
}

impl Check for TodaN {
    fn applies(&self, data: &PlaneData) -> bool {
        data.roots.marks().is_some()
    }
    fn run(&self, data: &PlaneData) -> Result<(bool, String)> {
        let toda = TodaMassMatrix::new(&data.roots)?;
        let n_ev = toda.n_eigenvalues()?;
        let m_ev = toda.m_eigenvalues()?;
        let zeros = n_ev.iter().filter(|x| x.abs() < CHECK_TOL).count();
        let mismatch = n_ev[1..]
            .iter()
            .zip(&m_ev)
            .map(|(a, b)| (a - b).abs() / b.abs().max(1.0))
            .fold(0.0, f64::max);
        Ok((
            zeros == 1 && mismatch < CHECK_TOL,
            format!("{zeros} null eigenvalue(s), spectrum mismatch {mismatch:.1e}"),
        ))
    }
}

pub type CheckRegistry = Registry<dyn Check>;

pub fn checks() -> CheckRegistry {
    let mut r: CheckRegistry = Registry::new("check");
    r.register(Arc::new(RootCount))
        .register(Arc::new(CoxeterNumber))
        .register(Arc::new(Dihedral))
        .register(Arc::new(Orbits))
        .register(Arc::new(OrthoCircles))
        .register(Arc::new(FoldingExact))
        .register(Arc::new(TauLadder))
        .register(Arc::new(MassRoutes))
        .register(Arc::new(TodaN));
    r
}

/// Runs every applicable check in registry order.
pub fn run_checks(registry: &CheckRegistry, data: &PlaneData) -> Vec<CheckOutcome> {
    registry
        .iter()
        .filter(|c| c.applies(data))
        .map(|c| match c.run(data) {
            Ok((passed, detail)) => CheckOutcome { name: c.name(), passed, detail },
            Err(e) => CheckOutcome { name: c.name(), passed: false, detail: e.to_string() },
        })
        .collect()
}
