//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use gosset_core::coxplane::PlaneData;
use gosset_core::diagrams::CoxeterDiagram;
use gosset_core::folding::{expected_block_diagonal, Folding};
use gosset_core::masses::{zamolodchikov_spectrum, TodaMassMatrix};
use gosset_core::project::{
    circle_spectrum, fundamental_weights, simple_root_radii, Mode, Orthogonal, Projection, Skew,
    CIRCLE_REL_TOL,
};
use gosset_core::roots::RootSystem;
use gosset_core::scalars::GoldenScalar;

const TAU: f64 = 1.618_033_988_749_895;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&Ctx) -> Outcome);

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn sorted(v: &[f64]) -> Vec<f64> {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    s
}

/// Largest relative deviation between two spectra after sorting and scaling
/// each by its smallest entry.
fn max_rel_dev(a: &[f64], b: &[f64]) -> f64 {
    let (a, b) = (sorted(a), sorted(b));
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(&b)
        .map(|(x, y)| {
            let (p, q) = (x / a[0], y / b[0]);
            (p - q).abs() / q.abs()
        })
        .fold(0.0, f64::max)
}

/// Bound-state masses at m1 = 1, written out from the closed form.
fn mass_oracle() -> Vec<f64> {
    let m1 = 1.0;
    let m2 = TAU;
    let m3 = 2.0 * (PI / 30.0).cos();
    let m4 = 2.0 * m2 * (7.0 * PI / 30.0).cos();
    let m5 = 2.0 * m2 * (2.0 * PI / 15.0).cos();
    sorted(&[m1, m2, m3, m4, m5, TAU * m3, TAU * m4, TAU * m5])
}

struct Ctx {
    e8: PlaneData,
    h4: PlaneData,
}

fn c1_perron(ctx: &Ctx) -> Outcome {
    let printed = [0.3204, 0.6373, 0.9473, 0.7706];
    let direct = &ctx.h4.plane.z;
    let (via_fold, _, _) = Folding::new(&ctx.e8.roots)
        .map_err(|e| e.to_string())?
        .coxeter_plane_via_h4()
        .map_err(|e| e.to_string())?;
    let dz = printed
        .iter()
        .zip(direct)
        .chain(printed.iter().zip(&via_fold))
        .map(|(p, z)| (p - z).abs())
        .fold(0.0, f64::max);
    let dc = (ctx.h4.plane.c - 2.0 * (PI / 30.0).cos())
        .abs()
        .max((ctx.e8.plane.c - 2.0 * (PI / 30.0).cos()).abs());
    ensure(
        dz < 5e-4 && dc < 1e-12,
        format!("z = {direct:.4?}, max |Δz| = {dz:.1e}, |Δc| = {dc:.1e}"),
    )
}

fn c2_skew_radii(ctx: &Ctx) -> Outcome {
    let printed = [0.4745, 0.7678, 0.9438, 1.141, 1.403, 1.527, 1.846, 2.270];
    let r = sorted(&simple_root_radii(&Skew, &ctx.e8.plane, &ctx.e8.roots));
    let d = printed.iter().zip(&r).map(|(p, x)| (p - x).abs()).fold(0.0, f64::max);
    ensure(d < 5e-4, format!("radii = {r:.4?}, max |Δ| = {d:.1e}"))
}

fn c3_gosset_circles(ctx: &Ctx) -> Outcome {
    let pts = Orthogonal.project_all(&ctx.e8.plane, ctx.e8.roots.roots());
    let cs = circle_spectrum(&pts, CIRCLE_REL_TOL, Mode::Orthogonal);
    let spread = cs.circles.iter().map(|c| c.radial_spread()).fold(0.0, f64::max);
    let gap = cs.circles.iter().map(|c| c.angular_gap_error()).fold(0.0, f64::max);
    let counts = cs.counts();
    ensure(
        pts.len() == 240 && counts == vec![30; 8] && spread < 1e-9 && gap < 1e-6,
        format!("{} points, counts {counts:?}, spread {spread:.1e}, gap error {gap:.1e}", pts.len()),
    )
}

fn c4_tau_ladder(ctx: &Ctx) -> Outcome {
    let mut worst: f64 = 0.0;
    let modes: [&dyn Projection; 2] = [&Orthogonal, &Skew];
    for p in modes {
        let raw = simple_root_radii(p, &ctx.e8.plane, &ctx.e8.roots);
        let r = sorted(&raw);
        for (lo, hi) in [(0, 1), (2, 5), (3, 6), (4, 7)] {
            worst = worst.max((r[hi] / r[lo] - TAU).abs() / TAU);
        }
        for (lo, hi) in [(0, 6), (1, 5), (7, 3), (2, 4)] {
            worst = worst.max((raw[hi] / raw[lo] - TAU).abs() / TAU);
        }
    }
    ensure(worst < 1e-9, format!("both modes, max rel |ratio − τ| = {worst:.1e}"))
}

fn c5_mass_relations(ctx: &Ctx) -> Outcome {
    let r = sorted(&simple_root_radii(&Skew, &ctx.e8.plane, &ctx.e8.roots));
    let rel = |lhs: f64, rhs: f64| (lhs - rhs).abs() / rhs.abs();
    let d3 = rel(r[2], 2.0 * r[0] * (PI / 30.0).cos());
    let d4 = rel(r[3], 2.0 * r[1] * (7.0 * PI / 30.0).cos());
    let d5 = rel(r[4], 2.0 * r[1] * (2.0 * PI / 15.0).cos());
    ensure(
        d3 < 1e-9 && d4 < 1e-9 && d5 < 1e-9,
        format!("relative errors r3 {d3:.1e}, r4 {d4:.1e}, r5 {d5:.1e}"),
    )
}

fn c6_three_routes(ctx: &Ctx) -> Outcome {
    let a = zamolodchikov_spectrum(1.0).map_err(|e| e.to_string())?.masses;
    let b = TodaMassMatrix::new(&ctx.e8.roots)
        .and_then(|t| t.masses())
        .map_err(|e| e.to_string())?;
    let c = simple_root_radii(&Orthogonal, &ctx.e8.plane, &ctx.e8.roots);
    let z = &ctx.e8.plane.z;
    let (ab, ac, bc) = (max_rel_dev(&a, &b), max_rel_dev(&a, &c), max_rel_dev(&b, &c));
    let az = max_rel_dev(&a, z);
    let oracle = max_rel_dev(&a, &mass_oracle());
    ensure(
        ab < 1e-9 && ac < 1e-9 && bc < 1e-9 && az < 1e-9 && oracle < 1e-12,
        format!("a~b {ab:.1e}, a~c {ac:.1e}, b~c {bc:.1e}, perron~a {az:.1e}"),
    )
}

fn c7_block_diagonal(ctx: &Ctx) -> Outcome {
    let g = Folding::new(&ctx.e8.roots)
        .map_err(|e| e.to_string())?
        .block_diagonalize();
    let zero = GoldenScalar::zero();
    let mut off_block = 0;
    let mut nonzero = 0;
    for i in 0..8 {
        for j in 0..8 {
            if (i < 4) != (j < 4) {
                off_block += 1;
                if *g.get(i, j) != zero {
                    nonzero += 1;
                }
            }
        }
    }
    let blocks_match = g == expected_block_diagonal();
    ensure(
        off_block == 32 && nonzero == 0 && blocks_match,
        format!("{off_block} off-block entries, {nonzero} nonzero; diagonal blocks exact: {blocks_match}"),
    )
}

fn c8_n_singular(ctx: &Ctx) -> Outcome {
    let toda = TodaMassMatrix::new(&ctx.e8.roots).map_err(|e| e.to_string())?;
    let n = toda.n_eigenvalues().map_err(|e| e.to_string())?;
    let m = toda.m_eigenvalues().map_err(|e| e.to_string())?;
    let null = n.iter().filter(|x| x.abs() < 1e-9).count();
    let rest = sorted(&n.iter().copied().filter(|x| x.abs() >= 1e-9).collect::<Vec<_>>());
    let d = if rest.len() == m.len() {
        rest.iter().zip(&m).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    ensure(
        n.len() == 9 && null == 1 && d < 1e-9,
        format!("{null} null eigenvalue of {}, max |λN − λM| = {d:.1e}", n.len()),
    )
}

fn c9_h4(ctx: &Ctx) -> Outcome {
    let pts = Orthogonal.project_all(&ctx.h4.plane, ctx.h4.roots.roots());
    let cs = circle_spectrum(&pts, CIRCLE_REL_TOL, Mode::Orthogonal);
    let m = mass_oracle();
    let expected = [m[0], m[2], m[3], m[4]];
    let z = &ctx.h4.plane.z;
    let via_z = [z[0], z[1], z[3], z[2]];
    let radii = cs.radii();
    let ok_shape = cs.counts() == vec![30; 4];
    let d = if ok_shape { max_rel_dev(&radii, &expected).max(max_rel_dev(&radii, &via_z)) } else { f64::INFINITY };
    ensure(
        ok_shape && d < 1e-9,
        format!("counts {:?}, ratio deviation {d:.1e}", cs.counts()),
    )
}

fn c10_weights(ctx: &Ctx) -> Outcome {
    let w = fundamental_weights(&ctx.e8.roots).map_err(|e| e.to_string())?;
    let norms: Vec<f64> = Orthogonal
        .project_all(&ctx.e8.plane, &w)
        .iter()
        .map(|p| p.radius)
        .collect();
    let d = max_rel_dev(&norms, &mass_oracle());
    ensure(d < 1e-9, format!("ratio deviation {d:.1e}"))
}

fn c11_generality(_: &Ctx) -> Outcome {
    // name, rank, |roots|, Coxeter number
    let table = [
        ("A2", 2, 6, 3),
        ("A3", 3, 12, 4),
        ("D4", 4, 24, 6),
        ("E6", 6, 72, 12),
        ("E7", 7, 126, 18),
        ("H3", 3, 30, 10),
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, rank, count, h) in table {
        let data = PlaneData::parse(name).map_err(|e| format!("{name}: {e}"))?;
        let roots = data.roots.roots().len();
        let h_count = roots / data.roots.rank();
        let h_spec = data.plane.h_spectral();
        let orbits = data.orbits().map_err(|e| format!("{name}: {e}"))?;
        let covered: usize = orbits.iter().map(|o| o.members.len()).sum();
        let good = data.roots.rank() == rank
            && roots == count
            && h_count == h
            && h_spec == h
            && orbits.len() == rank
            && orbits.iter().all(|o| o.members.len() == h)
            && covered == roots;
        ok &= good;
        lines.push(format!("{name} {roots}/{h_spec}/{}x{}", orbits.len(), h));
    }
    ensure(ok, lines.join(", "))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let ctx = Ctx {
        e8: PlaneData::parse("E8").expect("E8 pipeline"),
        h4: PlaneData::new(RootSystem::new(CoxeterDiagram::h4()).expect("H4 roots")).expect("H4 plane"),
    };
    let criteria: [Criterion; 11] = [
        ("perron data", c1_perron),
        ("skew radii", c2_skew_radii),
        ("gosset circles", c3_gosset_circles),
        ("tau ladder", c4_tau_ladder),
        ("mass relations", c5_mass_relations),
        ("three routes", c6_three_routes),
        ("block diagonal", c7_block_diagonal),
        ("N singular", c8_n_singular),
        ("H4 circles", c9_h4),
        ("fundamental weights", c10_weights),
        ("generality", c11_generality),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run(&ctx) {
            Ok(detail) => println!("PASS {:>2} {name:<20} {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name:<20} {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed in {:.2}s",
        criteria.len() - failures,
        start.elapsed().as_secs_f64()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
