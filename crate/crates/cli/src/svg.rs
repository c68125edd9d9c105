//! Hand-written SVG for a single Voronoi cell.

use std::fmt::Write;

use torus_spectra::VoronoiCell;

const SIZE: f64 = 480.0;

pub fn render_cell(cell: &VoronoiCell) -> String {
    let extent = 1.15 * cell.r2;
    let scale = 0.5 * SIZE / extent;
    // Plane coordinates to SVG pixels, y up.
    let px = |x: f64| 0.5 * SIZE + scale * x;
    let py = |y: f64| 0.5 * SIZE - scale * y;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        s,
        "<title>Voronoi cell a={} b={} vertices={}</title>",
        cell.params.a(),
        cell.params.b(),
        cell.vertices.len()
    );
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let _ = writeln!(
        s,
        r##"<g id="axes" stroke="#999999" stroke-width="1"><line x1="0" y1="{c:.3}" x2="{SIZE}" y2="{c:.3}"/><line x1="{c:.3}" y1="0" x2="{c:.3}" y2="{SIZE}"/></g>"##,
        c = 0.5 * SIZE
    );
    let pts: Vec<String> = cell
        .vertices
        .iter()
        .map(|v| format!("{:.3},{:.3}", px(v.x), py(v.y)))
        .collect();
    let _ = writeln!(
        s,
        r##"<polygon id="cell" points="{}" fill="#dce9f5" stroke="#1f4e79" stroke-width="2"/>"##,
        pts.join(" ")
    );
    for (id, r, color) in [("incircle", cell.r1, "#2e7d32"), ("circumcircle", cell.r2, "#c62828")] {
        let _ = writeln!(
            s,
            r#"<circle id="{id}" cx="{:.3}" cy="{:.3}" r="{:.3}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            px(0.0),
            py(0.0),
            scale * r
        );
    }
    let _ = writeln!(s, r##"<circle cx="{:.3}" cy="{:.3}" r="2.5" fill="#000000"/>"##, px(0.0), py(0.0));
    s.push_str("</svg>\n");
    s
}
