//! Static SVG rendering of a [`CircleSpectrum`].

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::project::CircleSpectrum;

pub const MIN_SIZE: u32 = 64;
const POINT_RADIUS_PX: f64 = 2.5;

#[derive(Clone, Debug, PartialEq)]
pub enum Element {
    Line { x1: f64, y1: f64, x2: f64, y2: f64 },
    Outline { cx: f64, cy: f64, r: f64 },
    Disk { cx: f64, cy: f64, r: f64, source: usize },
    Label { x: f64, y: f64, text: String },
}

#[derive(Clone, Debug)]
pub struct SvgScene {
    pub width: u32,
    pub height: u32,
    /// Pixels per plane unit.
    pub scale: f64,
    pub elements: Vec<Element>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RenderOptions {
    /// Annotate each circle with its radius at angle 0.
    pub labels: bool,
}

impl SvgScene {
    /// Lays out `cs` in a `size`×`size` square, scaled so the outermost circle
    /// sits at 1/1.1 of the half-width. Mathematical y points up.
    pub fn from_spectrum(cs: &CircleSpectrum, size: u32, opts: RenderOptions) -> Result<Self> {
        if size < MIN_SIZE {
            return Err(Error::InvalidArgument(format!("SVG size must be ≥ {MIN_SIZE}")));
        }
        let half = size as f64 / 2.0;
        let max_r = cs.max_radius();
        let scale = if max_r > 0.0 { half / (1.1 * max_r) } else { half };
        let to_px = |x: f64, y: f64| (half + x * scale, half - y * scale);
        let mut elements = vec![
            Element::Line { x1: 0.0, y1: half, x2: size as f64, y2: half },
            Element::Line { x1: half, y1: 0.0, x2: half, y2: size as f64 },
        ];
        for c in &cs.circles {
            elements.push(Element::Outline { cx: half, cy: half, r: c.radius * scale });
        }
        for c in &cs.circles {
            for p in &c.members {
                let (cx, cy) = to_px(p.x, p.y);
                elements.push(Element::Disk { cx, cy, r: POINT_RADIUS_PX, source: p.source });
            }
        }
        if opts.labels {
            for c in &cs.circles {
                let (x, y) = to_px(c.radius, 0.0);
                elements.push(Element::Label { x: x + 2.0, y: y - 2.0, text: format!("{:.4}", c.radius) });
            }
        }
        Ok(Self { width: size, height: size, scale, elements })
    }

    pub fn to_svg(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}" data-scale="{s:.6}">"#,
            w = self.width,
            h = self.height,
            s = self.scale
        );
        let group = |out: &mut String, id: &str, style: &str, f: &dyn Fn(&Element) -> Option<String>| {
            let _ = writeln!(out, r#"  <g id="{id}" {style}>"#);
            for e in &self.elements {
                if let Some(line) = f(e) {
                    let _ = writeln!(out, "    {line}");
                }
            }
            let _ = writeln!(out, "  </g>");
        };
        group(&mut out, "axes", r##"stroke="#c8c8c8" stroke-width="0.5""##, &|e| match e {
            Element::Line { x1, y1, x2, y2 } => Some(format!(
                r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#
            )),
            _ => None,
        });
        group(&mut out, "circles", r##"fill="none" stroke="#3b5b92" stroke-width="0.75""##, &|e| match e {
            Element::Outline { cx, cy, r } => {
                Some(format!(r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="{r:.3}"/>"#))
            }
            _ => None,
        });
        group(&mut out, "points", r##"fill="#b22222""##, &|e| match e {
            Element::Disk { cx, cy, r, source } => Some(format!(
                r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="{r:.3}" data-source="{source}"/>"#
            )),
            _ => None,
        });
        if self.elements.iter().any(|e| matches!(e, Element::Label { .. })) {
            group(&mut out, "labels", r#"font-family="sans-serif" font-size="10""#, &|e| match e {
                Element::Label { x, y, text } => {
                    Some(format!(r#"<text x="{x:.3}" y="{y:.3}">{text}</text>"#))
                }
                _ => None,
            });
        }
        out.push_str("</svg>\n");
        out
    }
}

pub fn render_spectrum(cs: &CircleSpectrum, size: u32, opts: RenderOptions) -> Result<String> {
    Ok(SvgScene::from_spectrum(cs, size, opts)?.to_svg())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::project::Mode;

    #[test]
    fn empty_spectrum_renders_axes_only() {
        let cs = CircleSpectrum { mode: Mode::Orthogonal, circles: vec![] };
        let svg = render_spectrum(&cs, 200, RenderOptions::default()).unwrap();
        let doc = roxmltree::Document::parse(&svg).unwrap();
        assert_eq!(doc.descendants().filter(|n| n.has_tag_name("circle")).count(), 0);
        assert_eq!(doc.descendants().filter(|n| n.has_tag_name("line")).count(), 2);
    }

    #[test]
    fn tiny_canvas_is_rejected() {
        let cs = CircleSpectrum { mode: Mode::Orthogonal, circles: vec![] };
        assert!(render_spectrum(&cs, 10, RenderOptions::default()).is_err());
    }
}
