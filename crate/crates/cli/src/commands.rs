use std::fs;

use gosset_core::coxplane::PlaneData;
use gosset_core::diagrams::CoxeterDiagram;
use gosset_core::masses::{mass_routes, ratio_report, zamolodchikov_spectrum, TodaMassMatrix};
use gosset_core::project::{circle_spectrum, projections, PointSet, CIRCLE_REL_TOL};
use gosset_core::roots::RootSystem;
use gosset_core::verify::{checks, run_checks};
use gosset_core::Error;

use crate::export::{exporters, ExportContext};
use crate::Command;

pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_COMPUTE: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnknownDiagram(_) | Error::MalformedDiagram(_) | Error::InvalidArgument(_) => {
                EXIT_USAGE
            }
            _ => EXIT_COMPUTE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

pub fn run(cmd: Command) -> Result<u8, Failure> {
    match cmd {
        Command::Diagram { spec } => diagram(&spec),
        Command::Roots { spec } => roots(&spec),
        Command::Eigvec { spec } => eigvec(&spec),
        Command::Project { spec, mode, points, out, file, tol, size, labels } => {
            let text = project(&spec, &mode, &points, &out, tol, size, labels)?;
            match file {
                Some(path) => fs::write(&path, text).map_err(|e| Failure {
                    code: EXIT_COMPUTE,
                    message: format!("{}: {e}", path.display()),
                })?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Masses { m1 } => masses(m1),
        Command::Verify { spec } => verify(&spec),
    }
}

fn diagram(spec: &str) -> Result<u8, Failure> {
    let d = CoxeterDiagram::parse(spec)?;
    println!("diagram: {}", d.label());
    println!("rank: {}", d.rank());
    println!("edges:");
    for (i, j, b) in d.edges() {
        println!("  {}-{}: {}", i + 1, j + 1, b);
    }
    println!("gram:");
    print!("{}", d.gram_matrix());
    Ok(0)
}

fn roots(spec: &str) -> Result<u8, Failure> {
    let rs = RootSystem::parse(spec)?;
    println!("{} roots, h = {}", rs.roots().len(), rs.coxeter_number());
    if let Some(marks) = rs.marks() {
        let m: Vec<String> = marks.iter().map(u32::to_string).collect();
        println!("marks: {}", m.join(" "));
    }
    Ok(0)
}

fn eigvec(spec: &str) -> Result<u8, Failure> {
    let data = PlaneData::parse(spec)?;
    let p = &data.plane;
    println!("c = {:.15}", p.c);
    println!("h = {}", p.h_spectral());
    for (i, z) in p.z.iter().enumerate() {
        let colour = if p.in_color_a(i) { 'A' } else { 'B' };
        println!("z{} = {z:.10}  ({colour})", i + 1);
    }
    Ok(0)
}

fn project(
    spec: &str,
    mode: &str,
    points: &str,
    out: &str,
    tol: Option<f64>,
    size: u32,
    labels: bool,
) -> Result<String, Failure> {
    let projection = projections().get(mode)?;
    let exporter = exporters().get(out)?;
    let set: PointSet = points.parse()?;
    let tol = tol.unwrap_or(CIRCLE_REL_TOL);
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(usage(format!("--tol must be a non-negative number, got {tol}")));
    }
    let data = PlaneData::parse(spec)?;
    let vectors = set.vectors(&data.roots)?;
    let pts = projection.project_all(&data.plane, &vectors);
    let cs = circle_spectrum(&pts, tol, projection.mode());
    let ctx = ExportContext {
        group: data.roots.diagram().label(),
        c: data.plane.c,
        h: data.plane.h_spectral(),
        spectrum: &cs,
        size,
        labels,
    };
    Ok(exporter.export(&ctx)?)
}

fn masses(m1: f64) -> Result<u8, Failure> {
    let spec = zamolodchikov_spectrum(m1)?;
    let e8 = PlaneData::parse("E8")?;
    let toda = TodaMassMatrix::new(&e8.roots)?.masses()?;
    let scale = m1 / toda[0];
    println!("{:>3}  {:>10}  {:>10}  {:>10}", "k", "mass", "m/m1", "toda");
    for (k, (m, t)) in spec.masses.iter().zip(&toda).enumerate() {
        println!("{:>3}  {m:>10.4}  {:>10.6}  {:>10.4}", k + 1, m / m1, t * scale);
    }
    let dev = ratio_report(&spec.masses, &toda)?.max_rel_dev;
    println!("toda cross-check: max relative deviation {dev:.2e}");
    println!("routes (max relative deviation of ratios from the closed form):");
    for route in mass_routes().iter() {
        let v = route.spectrum(&e8)?;
        let d = ratio_report(&spec.masses, &v)?.max_rel_dev;
        println!("  {:<14} {d:.2e}  {}", route.name(), route.describe());
    }
    Ok(0)
}

fn verify(spec: &str) -> Result<u8, Failure> {
    let data = PlaneData::parse(spec)?;
    println!("verify {}", data.roots.diagram().label());
    let outcomes = run_checks(&checks(), &data);
    for o in &outcomes {
        println!("{o}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} passed, {failed} failed", outcomes.len() - failed);
    Ok(if failed == 0 { 0 } else { EXIT_VERIFY })
}
