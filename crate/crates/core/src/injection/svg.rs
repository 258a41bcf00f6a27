//! Static six-panel picture of one application of the map.

use std::fmt::Write;

use crate::injection::{ConstructionTrace, InjectionInstance, PathPair};
use crate::lattice::{LatticePath, LatticePoint};

const CELL: f64 = 36.0;
const PAD: f64 = 28.0;

struct Frame {
    x0: f64,
    y0: f64,
    ymax: i64,
}

impl Frame {
    fn at(&self, p: LatticePoint) -> (f64, f64) {
        (self.x0 + PAD + p.x as f64 * CELL, self.y0 + PAD + (self.ymax - p.y) as f64 * CELL)
    }
}

fn polyline(out: &mut String, f: &Frame, pts: &[LatticePoint], color: &str, width: f64, dash: bool, offset: f64) {
    if pts.is_empty() {
        return;
    }
    let coords: Vec<String> = pts
        .iter()
        .map(|p| {
            let (x, y) = f.at(*p);
            format!("{:.1},{:.1}", x + offset, y - offset)
        })
        .collect();
    let dash = if dash { r#" stroke-dasharray="5,3""# } else { "" };
    let _ = writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="{width}"{dash} stroke-linejoin="round"/>"#,
        coords.join(" ")
    );
}

fn path_line(out: &mut String, f: &Frame, path: &LatticePath, color: &str, offset: f64) {
    polyline(out, f, &path.vertices(), color, 2.5, false, offset);
}

fn dot(out: &mut String, f: &Frame, p: LatticePoint, color: &str, label: &str) {
    let (x, y) = f.at(p);
    let _ = writeln!(out, r#"<circle cx="{x:.1}" cy="{y:.1}" r="5" fill="{color}"/>"#);
    if !label.is_empty() {
        let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}" font-size="12" fill="{color}">{label}</text>"#, x + 6.0, y - 6.0);
    }
}

/// Panels: input pair; `chi_hat` and `E`; `eta_plus_hat`, `zeta` and `F`; `Lambda` and `G`;
/// the new first path; the new second path.
pub fn render_trace_svg(inst: &InjectionInstance, input: &PathPair, output: &PathPair, trace: &ConstructionTrace) -> String {
    let region = inst.region();
    let s = inst.shift();
    let ymin = region.columns().iter().map(|c| c.0).min().unwrap_or(0).min(trace.chi_hat.iter().map(|p| p.y).min().unwrap_or(0));
    let ymax = region.columns().iter().map(|c| c.1).max().unwrap_or(0).max(trace.chi_hat.iter().map(|p| p.y).max().unwrap_or(0));
    let pw = 2.0 * PAD + region.width() as f64 * CELL;
    let ph = 2.0 * PAD + (ymax - ymin) as f64 * CELL + 20.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" font-family="sans-serif">"#,
        3.0 * pw,
        2.0 * ph
    );
    let titles = ["(0) input", "(1) chi_hat, E", "(2) eta_plus_hat, zeta, F", "(3) Lambda, G", "(4) xi_AC'", "(5) xi_BD'"];
    for (n, title) in titles.iter().enumerate() {
        let f = Frame { x0: (n % 3) as f64 * pw, y0: (n / 3) as f64 * ph + 16.0, ymax };
        let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}" font-size="13">{title}</text>"#, f.x0 + 6.0, f.y0);
        for p in region.points() {
            let (x, y) = f.at(p);
            let _ = writeln!(out, r##"<circle cx="{x:.1}" cy="{y:.1}" r="2" fill="#bbb"/>"##);
        }
        match n {
            0 => {
                path_line(&mut out, &f, &input.first, "#c0392b", 2.0);
                path_line(&mut out, &f, &input.second, "#2471a3", -2.0);
                dot(&mut out, &f, inst.a(), "#c0392b", "A");
                dot(&mut out, &f, inst.b(), "#2471a3", "B");
                dot(&mut out, &f, inst.c(), "#c0392b", "C");
                dot(&mut out, &f, inst.d(), "#2471a3", "D");
            }
            1 => {
                polyline(&mut out, &f, &trace.chi_hat, "#7d3c98", 2.0, true, 0.0);
                path_line(&mut out, &f, &input.first, "#c0392b", 2.0);
                dot(&mut out, &f, trace.e, "#7d3c98", if trace.fallback_used { "E (fallback)" } else { "E" });
            }
            2 => {
                polyline(&mut out, &f, &trace.eta_plus_hat, "#117a65", 2.0, true, 0.0);
                path_line(&mut out, &f, &trace.zeta, "#2471a3", -2.0);
                dot(&mut out, &f, trace.f, "#117a65", "F");
                dot(&mut out, &f, inst.b_prime(), "#2471a3", "B'");
            }
            3 => {
                for p in &trace.lambda {
                    let (x, y) = f.at(*p);
                    let _ = writeln!(
                        out,
                        r##"<rect x="{:.1}" y="{:.1}" width="{:.1}" height="{:.1}" fill="#f9e79f" opacity="0.6"/>"##,
                        x - CELL / 2.0,
                        y - CELL / 2.0,
                        CELL,
                        CELL
                    );
                }
                path_line(&mut out, &f, &input.first.suffix(trace.e_index), "#c0392b", 2.0);
                path_line(&mut out, &f, &trace.zeta.suffix(trace.f_index), "#2471a3", -2.0);
                dot(&mut out, &f, trace.g, "#000", "G");
            }
            4 => {
                path_line(&mut out, &f, &output.first, "#c0392b", 0.0);
                dot(&mut out, &f, inst.c_prime(), "#c0392b", "C'");
                dot(&mut out, &f, trace.g, "#000", "G");
            }
            _ => {
                path_line(&mut out, &f, &output.second, "#2471a3", 0.0);
                dot(&mut out, &f, inst.d_prime(), "#2471a3", "D'");
                dot(&mut out, &f, trace.g.shifted(-s), "#000", "G'");
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
