//! SVG 1.1 documents built as strings.

use std::fmt::Write;

use twenty_vertex::arctic::CurveBranch;
use twenty_vertex::lattice::{edges, PathConfig, PhaseLabel, Segment};

const SCALE: f64 = 200.0;
const PAD: f64 = 20.0;

fn header(w: f64, h: f64) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    )
}

fn branch_color(name: &str) -> &'static str {
    match name {
        "NE" => "#c0392b",
        "SE" => "#2471a3",
        _ => "#1e8449",
    }
}

/// Branches in the rescaled frame `{X ≤ 0, Y ≤ 2, X + Y ≥ 0}`, with the triangle and the two
/// phase rays from the middle of the diagonal.
pub fn curve(branches: &[CurveBranch]) -> String {
    let map = |x: f64, y: f64| (PAD + (x + 2.0) * SCALE, PAD + (2.0 - y) * SCALE);
    let size = 2.0 * SCALE + 2.0 * PAD;
    let mut s = header(size, size);
    let corners = [(0.0, 0.0), (0.0, 2.0), (-2.0, 2.0)].map(|(x, y)| map(x, y));
    let pts: Vec<String> = corners.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
    let _ = writeln!(s, "<polygon points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>", pts.join(" "));
    for end in [(-1.0, 2.0), (0.0, 1.0)] {
        let (a, b) = (map(-1.0, 1.0), map(end.0, end.1));
        let _ = writeln!(
            s,
            "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>",
            a.0, a.1, b.0, b.1
        );
    }
    for b in branches {
        let pts: Vec<String> = b
            .points
            .iter()
            .map(|q| {
                let (x, y) = map(q.x, q.y);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            s,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"><title>{}</title></polyline>",
            pts.join(" "),
            branch_color(b.kind.name()),
            b.kind
        );
    }
    s.push_str("</svg>\n");
    s
}

fn phase_color(l: PhaseLabel) -> Option<&'static str> {
    Some(match l {
        PhaseLabel::F0 => "#f4f6f7",
        PhaseLabel::F1 => "#f5b041",
        PhaseLabel::F2 => "#5dade2",
        PhaseLabel::F3 => "#af7ac5",
        PhaseLabel::F4 => "#58d68d",
        PhaseLabel::F5 => "#ec7063",
        PhaseLabel::F6 => "#f7dc6f",
        PhaseLabel::Liquid => return None,
    })
}

/// A configuration in lattice coordinates, origin at the bottom-right corner. With `window`,
/// each vertex is shaded by the phase label of the window whose top-left corner it is.
pub fn lattice(c: &PathConfig, window: Option<usize>) -> String {
    let m = c.m() as f64;
    let cell = 40.0;
    // external edges reach x = −m, x = 1, y = −1 and y = m
    let map = |(x, y): (i32, i32)| ((x as f64 + m + 1.0) * cell, (m + 1.0 - y as f64) * cell);
    let size = (m + 3.0) * cell;
    let mut s = header(size, size);
    if let Some(w) = window {
        for v in twenty_vertex::lattice::vertices(c.m()) {
            if let Some(col) = c.phase_label(v, w).ok().and_then(phase_color) {
                let (x, y) = map(v);
                let _ = writeln!(
                    s,
                    "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"{cell:.1}\" height=\"{cell:.1}\" fill=\"{col}\" fill-opacity=\"0.6\"/>",
                    x - cell / 2.0,
                    y - cell / 2.0
                );
            }
        }
    }
    for (t, f) in edges(c.m()) {
        let Segment { a, b } = Segment::of_edge(t, f);
        let (p, q) = (map(a), map(b));
        let _ = writeln!(
            s,
            "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#d5d8dc\"/>",
            p.0, p.1, q.0, q.1
        );
    }
    // paths() resolves osculations without crossings, so touching paths stay distinct
    for path in c.paths() {
        let pts: Vec<String> = path
            .iter()
            .map(|&v| {
                let (x, y) = map(v);
                format!("{x:.1},{y:.1}")
            })
            .collect();
        let _ = writeln!(
            s,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"#1b2631\" stroke-width=\"3\" stroke-linejoin=\"round\"/>",
            pts.join(" ")
        );
    }
    s.push_str("</svg>\n");
    s
}
