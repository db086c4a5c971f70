//! Serializers for projected circle spectra.

use std::fmt::Write as _;
use std::sync::Arc;

use gosset_core::project::CircleSpectrum;
use gosset_core::registry::{Named, Registry};
use gosset_core::render::{render_spectrum, RenderOptions};
use gosset_core::Result;
use serde::Serialize;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Shortest round-trip decimal of `x`, truncated to 12 significant digits.
/// Negative zero becomes zero.
pub fn truncate_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let repr = format!("{x:e}");
    let (mantissa, exp) = repr.split_once('e').expect("exponent form");
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", mantissa),
    };
    let digits: String = digits.chars().filter(|c| *c != '.').take(SIGNIFICANT_DIGITS).collect();
    let (lead, tail) = digits.split_at(1);
    let y: f64 = format!("{sign}{lead}.{tail}0e{exp}").parse().expect("valid float");
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

fn csv_float(x: f64) -> String {
    serde_json::to_string(&truncate_sig(x)).expect("finite float")
}

/// Everything an exporter needs besides the spectrum.
pub struct ExportContext<'a> {
    pub group: String,
    pub c: f64,
    pub h: usize,
    pub spectrum: &'a CircleSpectrum,
    pub size: u32,
    pub labels: bool,
}

pub trait Exporter: Named + Send + Sync {
    fn export(&self, ctx: &ExportContext) -> Result<String>;
}

pub struct Json;
pub struct Csv;
pub struct Svg;

impl Named for Json {
    fn name(&self) -> &'static str {
        "json"
    }
}

impl Named for Csv {
    fn name(&self) -> &'static str {
        "csv"
    }
}

impl Named for Svg {
    fn name(&self) -> &'static str {
        "svg"
    }
}

#[derive(Serialize)]
struct JsonPoint {
    x: f64,
    y: f64,
    source: usize,
}

#[derive(Serialize)]
struct JsonCircle {
    radius: f64,
    count: usize,
    points: Vec<JsonPoint>,
}

#[derive(Serialize)]
struct JsonDoc<'a> {
    group: &'a str,
    mode: &'a str,
    c: f64,
    h: usize,
    circles: Vec<JsonCircle>,
}

impl Exporter for Json {
    fn export(&self, ctx: &ExportContext) -> Result<String> {
        let doc = JsonDoc {
            group: &ctx.group,
            mode: ctx.spectrum.mode.as_str(),
            c: truncate_sig(ctx.c),
            h: ctx.h,
            circles: ctx
                .spectrum
                .circles
                .iter()
                .map(|c| JsonCircle {
                    radius: truncate_sig(c.radius),
                    count: c.count,
                    points: c
                        .members
                        .iter()
                        .map(|p| JsonPoint { x: truncate_sig(p.x), y: truncate_sig(p.y), source: p.source })
                        .collect(),
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
        s.push('\n');
        Ok(s)
    }
}

impl Exporter for Csv {
    fn export(&self, ctx: &ExportContext) -> Result<String> {
        let mut out = String::from("circle_index,radius,x,y,source\n");
        for (k, c) in ctx.spectrum.circles.iter().enumerate() {
            for p in &c.members {
                let _ = writeln!(
                    out,
                    "{k},{},{},{},{}",
                    csv_float(c.radius),
                    csv_float(p.x),
                    csv_float(p.y),
                    p.source
                );
            }
        }
        Ok(out)
    }
}

impl Exporter for Svg {
    fn export(&self, ctx: &ExportContext) -> Result<String> {
        render_spectrum(ctx.spectrum, ctx.size, RenderOptions { labels: ctx.labels })
    }
}

pub type ExporterRegistry = Registry<dyn Exporter>;

pub fn exporters() -> ExporterRegistry {
    let mut r: ExporterRegistry = Registry::new("output format");
    r.register(Arc::new(Json)).register(Arc::new(Csv)).register(Arc::new(Svg));
    r
}
