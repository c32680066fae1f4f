//! SVG preview of an embedding tiled over several periods.

use std::fmt::Write as _;

use crate::embedding::GroundEmbedding;

const CELL: f64 = 40.0;
const MARGIN: f64 = 30.0;
/// Sideways offset of the control point of a long arc, in cell units.
const BOW: f64 = 0.18;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderOptions {
    pub repeat_rows: u32,
    pub repeat_cols: u32,
    /// Print each vertex's coordinates in the fundamental tile.
    pub labels: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            repeat_rows: 1,
            repeat_cols: 1,
            labels: false,
        }
    }
}

/// Draw `e` repeated `repeat_rows` by `repeat_cols` times: one arrowed path
/// per arc copy, a dot per lattice point and a dashed outline around the
/// fundamental period.
pub fn render_svg(e: &GroundEmbedding, opts: &RenderOptions) -> String {
    let dims = e.dims();
    let (rr, rc) = (opts.repeat_rows.max(1), opts.repeat_cols.max(1));
    let total_rows = (dims.rows() * rr) as f64;
    let total_cols = (dims.cols() * rc) as f64;
    let width = total_cols * CELL + 2.0 * MARGIN;
    let height = total_rows * CELL + 2.0 * MARGIN;
    let at = |row: f64, col: f64| (MARGIN + col * CELL, MARGIN + row * CELL);

    let mut svg = String::new();
    writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    svg.push_str(concat!(
        "<defs><marker id=\"head\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\">",
        "<path d=\"M0,0 L10,5 L0,10 z\" fill=\"#333\"/></marker></defs>\n"
    ));
    let (x0, y0) = at(0.0, 0.0);
    writeln!(
        svg,
        r##"<rect class="period" x="{x0}" y="{y0}" width="{}" height="{}" fill="none" stroke="#c33" stroke-dasharray="4 3"/>"##,
        dims.cols() as f64 * CELL,
        dims.rows() as f64 * CELL
    )
    .unwrap();

    svg.push_str("<g class=\"arcs\" fill=\"none\" stroke=\"#333\" stroke-width=\"1.5\">\n");
    for tr in 0..rr {
        for tc in 0..rc {
            for a in e.arcs() {
                let r = (tr * dims.rows() + a.origin.row) as f64;
                let c = (tc * dims.cols() + a.origin.col) as f64;
                let (x1, y1) = at(r, c);
                let (x2, y2) = at(r + a.step.dy() as f64, c + a.step.dx() as f64);
                let d = if a.step.length() == 2 {
                    // bow to the right of the direction of travel
                    let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
                    let (dx, dy) = (x2 - x1, y2 - y1);
                    let (cx, cy) = (mx - dy * BOW, my + dx * BOW);
                    format!("M{x1},{y1} Q{cx},{cy} {x2},{y2}")
                } else {
                    format!("M{x1},{y1} L{x2},{y2}")
                };
                writeln!(
                    svg,
                    r#"<path class="arc" d="{d}" marker-end="url(#head)"/>"#
                )
                .unwrap();
            }
        }
    }
    svg.push_str("</g>\n<g class=\"vertices\" fill=\"#000\">\n");
    for r in 0..dims.rows() * rr {
        for c in 0..dims.cols() * rc {
            let (x, y) = at(r as f64, c as f64);
            writeln!(svg, r#"<circle class="vertex" cx="{x}" cy="{y}" r="2.5"/>"#).unwrap();
        }
    }
    svg.push_str("</g>\n");
    if opts.labels {
        svg.push_str(
            "<g class=\"labels\" font-family=\"monospace\" font-size=\"8\" fill=\"#06c\">\n",
        );
        for v in dims.positions() {
            let (x, y) = at(v.row as f64, v.col as f64);
            writeln!(
                svg,
                r#"<text x="{}" y="{}">{},{}</text>"#,
                x + 4.0,
                y - 4.0,
                v.row,
                v.col
            )
            .unwrap();
        }
        svg.push_str("</g>\n");
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::deserialize;

    #[test]
    fn counts_arc_copies() {
        let e = deserialize("ground v1\ndims 1 1\narc 0 0 -1 1\narc 0 0 1 0\n").unwrap();
        let svg = render_svg(
            &e,
            &RenderOptions {
                repeat_rows: 4,
                repeat_cols: 4,
                labels: true,
            },
        );
        assert_eq!(svg.matches(r#"class="arc""#).count(), 32);
        assert_eq!(svg.matches(r#"class="vertex""#).count(), 16);
    }

    #[test]
    fn long_arcs_are_curved() {
        let e = deserialize("ground v1\ndims 2 1\narc 0 0 0 2\n").unwrap();
        let svg = render_svg(&e, &RenderOptions::default());
        assert!(svg.contains(" Q"));
    }
}
