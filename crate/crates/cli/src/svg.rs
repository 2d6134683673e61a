//! Hand-written SVG for diagrams and sampled persistent Betti number grids.

use std::fmt::Write;

use graphtda::persistence::PbnGrid;
use graphtda::{ExtReal, PersistenceDiagram};

const SIZE: f64 = 600.0;
const MARGIN: f64 = 0.05 * SIZE;
const SPAN: f64 = SIZE - 2.0 * MARGIN;

struct Scale {
    lo: f64,
    hi: f64,
}

impl Scale {
    fn fit(values: &[f64]) -> Scale {
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        match (lo.is_finite(), lo < hi) {
            (false, _) => Scale { lo: 0.0, hi: 1.0 },
            (true, false) => Scale { lo: lo - 1.0, hi: hi + 1.0 },
            (true, true) => {
                let pad = (hi - lo) * 0.05;
                Scale { lo: lo - pad, hi: hi + pad }
            }
        }
    }

    fn unit(&self, t: ExtReal) -> f64 {
        match t {
            ExtReal::NegInf => 0.0,
            ExtReal::PosInf => 1.0,
            ExtReal::Finite(x) => (x - self.lo) / (self.hi - self.lo),
        }
    }

    fn x(&self, t: ExtReal) -> f64 {
        MARGIN + self.unit(t) * SPAN
    }

    fn y(&self, t: ExtReal) -> f64 {
        SIZE - MARGIN - self.unit(t) * SPAN
    }
}

fn open(out: &mut String, title: &str) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(out, "<title>{title}</title>").unwrap();
    writeln!(out, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#).unwrap();
}

fn axes(out: &mut String, lo: &str, hi: &str) {
    let (a, b) = (MARGIN, SIZE - MARGIN);
    writeln!(out, r#"<g stroke="black" stroke-width="1">"#).unwrap();
    writeln!(out, r#"<line x1="{a:.2}" y1="{b:.2}" x2="{b:.2}" y2="{b:.2}"/>"#).unwrap();
    writeln!(out, r#"<line x1="{a:.2}" y1="{b:.2}" x2="{a:.2}" y2="{a:.2}"/>"#).unwrap();
    writeln!(out, "</g>").unwrap();
    writeln!(
        out,
        r#"<line class="diagonal" x1="{a:.2}" y1="{b:.2}" x2="{b:.2}" y2="{a:.2}" stroke="gray" stroke-dasharray="4 3"/>"#
    )
    .unwrap();
    writeln!(out, r#"<g font-family="sans-serif" font-size="10">"#).unwrap();
    writeln!(out, r#"<text x="{a:.2}" y="{:.2}">{lo}</text>"#, b + 12.0).unwrap();
    writeln!(out, r#"<text x="{b:.2}" y="{:.2}" text-anchor="end">{hi}</text>"#, b + 12.0).unwrap();
    writeln!(out, r#"<text x="{:.2}" y="{b:.2}" text-anchor="end">{lo}</text>"#, a - 3.0).unwrap();
    writeln!(out, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{hi}</text>"#, a - 3.0, a + 10.0).unwrap();
    writeln!(out, "</g>").unwrap();
}

/// Proper points as discs of area proportional to multiplicity; points at
/// infinity as rays rising from the diagonal to the top edge.
pub fn diagram(d: &PersistenceDiagram) -> String {
    let mut values = d.finite_values();
    values.sort_by(f64::total_cmp);
    let scale = Scale::fit(&values);
    let mut out = String::new();
    open(&mut out, &format!("persistence diagram, degree {}", d.dimension));
    axes(&mut out, &format!("{:.2}", scale.lo), &format!("{:.2}", scale.hi));
    writeln!(out, r#"<g class="proper" fill="steelblue" fill-opacity="0.8">"#).unwrap();
    for p in &d.points {
        writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="{:.2}"><title>({}, {}) x{}</title></circle>"#,
            scale.x(p.birth),
            scale.y(p.death),
            4.0 * (p.multiplicity as f64).sqrt(),
            p.birth,
            p.death,
            p.multiplicity
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, r#"<g class="essential" stroke="firebrick" fill="firebrick">"#).unwrap();
    for e in &d.essential {
        let (x, y) = (scale.x(e.birth), scale.y(e.birth));
        writeln!(
            out,
            r#"<g><title>({}, inf) x{}</title><line x1="{x:.2}" y1="{y:.2}" x2="{x:.2}" y2="{MARGIN:.2}" stroke-width="{:.2}"/><path d="M{x:.2} {:.2} l-4 8 h8 z"/></g>"#,
            e.birth,
            e.multiplicity,
            1.5 * (e.multiplicity as f64).sqrt(),
            MARGIN - 4.0
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();
    out.push_str("</svg>\n");
    out
}

/// One cell per sample `(u, v)`, shaded by value. Cells above the diagonal
/// come from the ascending filtration, cells below it from the descending one.
pub fn heatmap(grid: &PbnGrid) -> String {
    let n = grid.u.len().max(1);
    let cell = SPAN / n as f64;
    let top = grid.values.iter().flatten().copied().max().unwrap_or(0).max(1);
    let mut out = String::new();
    open(&mut out, &format!("extended persistent Betti numbers, degree {}", grid.dimension));
    writeln!(out, r#"<g class="cells" stroke="none">"#).unwrap();
    for (i, row) in grid.values.iter().enumerate() {
        for (j, &value) in row.iter().enumerate() {
            let shade = 255 - (value * 200 / top) as u32;
            writeln!(
                out,
                r#"<rect x="{:.2}" y="{:.2}" width="{cell:.2}" height="{cell:.2}" fill="rgb({shade},{shade},255)"><title>u={} v={} value={value}</title></rect>"#,
                MARGIN + i as f64 * cell,
                SIZE - MARGIN - (j + 1) as f64 * cell,
                grid.u[i],
                grid.v[j]
            )
            .unwrap();
        }
    }
    writeln!(out, "</g>").unwrap();
    let label = |xs: &[f64], last: bool| {
        let x = if last { xs.last() } else { xs.first() };
        x.map_or_else(String::new, |x| format!("{x:.2}"))
    };
    axes(&mut out, &label(&grid.u, false), &label(&grid.u, true));
    out.push_str("</svg>\n");
    out
}
