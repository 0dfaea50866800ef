//! DOT and SVG output. Both are deterministic functions of their input.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::error::Result;
use crate::geometry::build_nng;
use crate::graph::{Edge, Network, Variant};
use crate::metric::{MetricSpace, SpaceKind};

fn nng_edges(space: &MetricSpace) -> Result<BTreeSet<Edge>> {
    if space.len() < 2 {
        return Ok(BTreeSet::new());
    }
    Ok(build_nng(space, false)?.edges().clone())
}

/// Graphviz source. NNG edges are red; an undirected edge with an owner
/// gets an arrowhead pointing away from the owner.
pub fn render_dot(network: &Network, space: &MetricSpace) -> Result<String> {
    let nng = nng_edges(space)?;
    let directed = network.variant() == Variant::Directed;
    let mut out = String::new();
    writeln!(out, "{} navnet {{", if directed { "digraph" } else { "graph" }).unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for u in 0..network.len() {
        let label = match space.as_euclidean().and_then(|e| e.labels()) {
            Some(l) => l[u].replace('"', "\\\""),
            None => u.to_string(),
        };
        match space.as_euclidean() {
            Some(e) if e.dimension() >= 2 => writeln!(
                out,
                "  {u} [label=\"{label}\", pos=\"{},{}!\"];",
                e.coordinate_decimal(u, 0),
                e.coordinate_decimal(u, 1)
            ),
            Some(e) => writeln!(out, "  {u} [label=\"{label}\", pos=\"{},0!\"];", e.coordinate_decimal(u, 0)),
            None => writeln!(out, "  {u} [label=\"{label}\"];"),
        }
        .unwrap();
    }
    let connector = if directed { "->" } else { "--" };
    let mut lines = Vec::new();
    if directed {
        for a in 0..network.len() {
            for &b in network.neighbors(a) {
                lines.push((a, b, nng.contains(&crate::graph::edge(a, b)), false));
            }
        }
    } else {
        for (a, b) in network.edges() {
            let owned_by_b = network.owner((a, b)) == Some(b);
            let (tail, head) = if owned_by_b { (b, a) } else { (a, b) };
            lines.push((tail, head, nng.contains(&(a, b)), network.owner((a, b)).is_some()));
        }
    }
    for (a, b, is_nng, owned) in lines {
        let mut attrs = Vec::new();
        if is_nng {
            attrs.push("color=red".to_string());
        }
        if owned {
            attrs.push("dir=forward".to_string());
        }
        if attrs.is_empty() {
            writeln!(out, "  {a} {connector} {b};").unwrap();
        } else {
            writeln!(out, "  {a} {connector} {b} [{}];", attrs.join(", ")).unwrap();
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgStyle {
    pub width: f64,
    pub margin: f64,
    pub radius: f64,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle {
            width: 600.0,
            margin: 20.0,
            radius: 4.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rendered {
    pub document: String,
    /// Set when the layout is not the true 2D position.
    pub warning: Option<String>,
}

fn layout(space: &MetricSpace) -> (Vec<(f64, f64)>, Option<String>) {
    match space.kind() {
        SpaceKind::Euclidean(e) if e.dimension() == 2 => (
            (0..e.len()).map(|i| (e.coordinate_f64(i, 0), e.coordinate_f64(i, 1))).collect(),
            None,
        ),
        SpaceKind::Euclidean(e) if e.dimension() == 1 => (
            (0..e.len()).map(|i| (e.coordinate_f64(i, 0), 0.0)).collect(),
            None,
        ),
        SpaceKind::Euclidean(e) => (
            (0..e.len()).map(|i| (e.coordinate_f64(i, 0), e.coordinate_f64(i, 1))).collect(),
            Some(format!("{}-dimensional points projected on the first two axes", e.dimension())),
        ),
        SpaceKind::General(g) => {
            let n = g.len().max(1) as f64;
            (
                (0..g.len())
                    .map(|i| {
                        let t = std::f64::consts::TAU * i as f64 / n;
                        (t.cos(), t.sin())
                    })
                    .collect(),
                Some("general metric drawn on a circle".to_string()),
            )
        }
    }
}

/// SVG 1.1 drawing. NNG edges are red and thicker; ownership is a dot on
/// the owner's end of the edge.
pub fn render_svg(network: &Network, space: &MetricSpace, style: &SvgStyle) -> Result<Rendered> {
    let nng = nng_edges(space)?;
    let (pos, warning) = layout(space);
    let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &pos {
        lo_x = lo_x.min(x);
        hi_x = hi_x.max(x);
        lo_y = lo_y.min(y);
        hi_y = hi_y.max(y);
    }
    if pos.is_empty() {
        (lo_x, hi_x, lo_y, hi_y) = (0.0, 1.0, 0.0, 1.0);
    }
    let span = (hi_x - lo_x).max(hi_y - lo_y).max(f64::MIN_POSITIVE);
    let inner = style.width - 2.0 * style.margin;
    let height = (hi_y - lo_y) / span * inner + 2.0 * style.margin;
    // Flip y so that larger coordinates are drawn higher.
    let map = |(x, y): (f64, f64)| {
        (
            style.margin + (x - lo_x) / span * inner,
            style.margin + (hi_y - y) / span * inner,
        )
    };
    let screen: Vec<(f64, f64)> = pos.iter().map(|&p| map(p)).collect();

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.2}" height="{:.2}" viewBox="0 0 {:.2} {:.2}">"#,
        style.width, height, style.width, height
    )
    .unwrap();
    writeln!(out, r#"<g id="edges" stroke-linecap="round">"#).unwrap();
    let mut drawn = BTreeSet::new();
    let mut markers = Vec::new();
    for a in 0..network.len() {
        for &b in network.neighbors(a) {
            let e = crate::graph::edge(a, b);
            let owner = match network.variant() {
                Variant::Directed => Some(a),
                Variant::Undirected => network.owner(e),
            };
            if network.variant() == Variant::Undirected && !drawn.insert(e) {
                continue;
            }
            let ((x1, y1), (x2, y2)) = (screen[a], screen[b]);
            let (stroke, w) = if nng.contains(&e) { ("#d62728", 2.0) } else { ("#555555", 1.0) };
            writeln!(
                out,
                r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{stroke}" stroke-width="{w:.1}"/>"#
            )
            .unwrap();
            if let Some(o) = owner {
                let other = if o == a { b } else { a };
                let ((ox, oy), (tx, ty)) = (screen[o], screen[other]);
                markers.push((ox + (tx - ox) * 0.2, oy + (ty - oy) * 0.2));
            }
        }
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, r##"<g id="owners" fill="#1f77b4">"##).unwrap();
    for (x, y) in markers {
        writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{:.2}"/>"#, style.radius * 0.6).unwrap();
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, r#"<g id="points" fill="white" stroke="black">"#).unwrap();
    for (i, (x, y)) in screen.iter().enumerate() {
        writeln!(out, r#"<circle id="p{i}" cx="{x:.2}" cy="{y:.2}" r="{:.2}"/>"#, style.radius).unwrap();
    }
    writeln!(out, "</g>").unwrap();
    out.push_str("</svg>\n");
    Ok(Rendered { document: out, warning })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{induce_network, StrategyProfile};

    #[test]
    fn line_path_svg() {
        let s = MetricSpace::line(&[0, 1, 3]).unwrap();
        let g = Network::from_edges(Variant::Undirected, 3, [(0, 1), (1, 2)]).unwrap();
        let r = render_svg(&g, &s, &SvgStyle::default()).unwrap();
        assert_eq!(r.document.matches("<circle id=").count(), 3);
        assert_eq!(r.document.matches("<line").count(), 2);
        assert_eq!(r.document.matches("#d62728").count(), 2);
        assert!(r.warning.is_none());
        assert_eq!(render_svg(&g, &s, &SvgStyle::default()).unwrap(), r);
    }

    #[test]
    fn empty_network_draws_points_only() {
        let s = MetricSpace::euclidean(2, vec![vec![0, 0], vec![3, 4]]).unwrap();
        let r = render_svg(&Network::new(Variant::Undirected, 2), &s, &SvgStyle::default()).unwrap();
        assert_eq!(r.document.matches("<line").count(), 0);
        assert_eq!(r.document.matches("<circle id=").count(), 2);
    }

    #[test]
    fn projection_warns() {
        let s = MetricSpace::euclidean(3, vec![vec![0, 0, 0], vec![1, 2, 3]]).unwrap();
        let r = render_svg(&Network::new(Variant::Undirected, 2), &s, &SvgStyle::default()).unwrap();
        assert!(r.warning.is_some());
    }

    #[test]
    fn dot_ownership() {
        let s = MetricSpace::line(&[0, 1, 3]).unwrap();
        let p = StrategyProfile::new(Variant::Undirected, vec![vec![], vec![0], vec![1]]).unwrap();
        let dot = render_dot(&induce_network(&p), &s).unwrap();
        assert!(dot.starts_with("graph navnet {"));
        assert!(dot.contains("1 -- 0 [color=red, dir=forward];"));
        assert!(dot.contains("2 -- 1 [color=red, dir=forward];"));
        let d = StrategyProfile::new(Variant::Directed, vec![vec![1], vec![0, 2], vec![1]]).unwrap();
        let dot = render_dot(&induce_network(&d), &s).unwrap();
        assert!(dot.contains("1 -> 2 [color=red];"));
    }
}
