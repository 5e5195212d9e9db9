//! SVG drawings of filled graphs and their partitions.
//!
//! The skeleton is placed by a barycentric embedding with the outer face on a
//! regular polygon. Chords of inner faces are straight segments; chords of the
//! outer face bulge outwards as quadratic arcs.

use std::collections::VecDeque;
use std::fmt::Write;

use kplane::verify::crossing_counts;
use kplane::TopoGraph;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 60.0;

/// Per-class stroke styles: solid, dashed, dotted, then coloured solids.
const STYLES: [(&str, &str); 6] = [
    ("#222222", ""),
    ("#1b9e4b", "8 5"),
    ("#d62728", "2 4"),
    ("#1f77b4", ""),
    ("#9467bd", "6 3"),
    ("#ff7f0e", "1 3"),
];

pub struct Rendered {
    pub svg: String,
    pub warnings: Vec<String>,
}

/// Barycentric placement: outer walk on a circle, every other vertex at the
/// mean of its neighbours (Gauss-Seidel until the largest move is tiny).
fn barycentric(n: usize, edges: &[[usize; 2]], outer: &[usize]) -> Vec<(f64, f64)> {
    let mut adj = vec![Vec::new(); n];
    for &[u, v] in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut pos = vec![(0.0, 0.0); n];
    let mut fixed = vec![false; n];
    let k = outer.len() as f64;
    for (i, &v) in outer.iter().enumerate() {
        let a = std::f64::consts::TAU * i as f64 / k - std::f64::consts::FRAC_PI_2;
        pos[v] = (a.cos(), a.sin());
        fixed[v] = true;
    }
    for _ in 0..20_000 {
        let mut moved: f64 = 0.0;
        for v in (0..n).filter(|&v| !fixed[v] && !adj[v].is_empty()) {
            let d = adj[v].len() as f64;
            let (sx, sy) = adj[v].iter().fold((0.0, 0.0), |(x, y), &w| (x + pos[w].0, y + pos[w].1));
            let next = (sx / d, sy / d);
            moved = moved.max((next.0 - pos[v].0).abs() + (next.1 - pos[v].1).abs());
            pos[v] = next;
        }
        if moved < 1e-10 {
            break;
        }
    }
    pos
}

/// Breadth-first layers from vertex 0, spread evenly per layer.
fn layered(n: usize, edges: &[[usize; 2]]) -> Vec<(f64, f64)> {
    let mut adj = vec![Vec::new(); n];
    for &[u, v] in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut depth = vec![usize::MAX; n];
    let mut layers: Vec<Vec<usize>> = Vec::new();
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        let base = layers.len();
        depth[root] = base;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            if layers.len() <= depth[v] {
                layers.resize(depth[v] + 1, Vec::new());
            }
            layers[depth[v]].push(v);
            for &w in &adj[v] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut pos = vec![(0.0, 0.0); n];
    let rows = layers.len().max(1) as f64;
    for (r, layer) in layers.iter().enumerate() {
        let cols = layer.len() as f64;
        for (c, &v) in layer.iter().enumerate() {
            pos[v] = (2.0 * (c as f64 + 0.5) / cols - 1.0, 2.0 * (r as f64 + 0.5) / rows - 1.0);
        }
    }
    pos
}

fn degenerate(pos: &[(f64, f64)]) -> bool {
    let mut sorted: Vec<(f64, f64)> = pos.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    sorted.windows(2).any(|w| (w[0].0 - w[1].0).abs() + (w[0].1 - w[1].1).abs() < 1e-7)
        || pos.iter().any(|p| !p.0.is_finite() || !p.1.is_finite())
}

/// Renders `g`; `classes` are `(label, edges)` pairs from a partition.
pub fn render(g: &TopoGraph, classes: Option<&[(String, Vec<usize>)]>) -> Rendered {
    let mut warnings = Vec::new();
    let n = g.vertex_count();
    let filling = g.filling();
    let mut outer_chords = vec![false; g.edge_count()];
    let mut poles = vec![false; n];
    let pos = match filling.and_then(|f| f.skeleton.faces().ok().map(|faces| (f, faces))) {
        Some((f, faces)) => {
            for ff in &f.faces {
                if let Some(p) = ff.poles {
                    for local in p {
                        poles[ff.walk[local]] = true;
                    }
                }
                if ff.face == faces.outer {
                    for c in &ff.chords {
                        outer_chords[c.edge] = true;
                    }
                }
            }
            let pos = barycentric(n, f.skeleton.edges(), &faces.outer_face().vertices);
            if degenerate(&pos) {
                warnings.push("barycentric embedding is degenerate; using a layered layout".to_string());
                layered(n, g.edges())
            } else {
                pos
            }
        }
        None => {
            warnings.push("graph has no skeleton; using a layered layout".to_string());
            layered(n, g.edges())
        }
    };
    let scale = (SIZE - 2.0 * MARGIN) / 2.0;
    let at = |v: usize| (MARGIN + (pos[v].0 + 1.0) * scale, MARGIN + (pos[v].1 + 1.0) * scale);
    let center = (SIZE / 2.0, SIZE / 2.0);

    let mut class_of = vec![usize::MAX; g.edge_count()];
    if let Some(cs) = classes {
        for (i, (_, edges)) in cs.iter().enumerate() {
            for &e in edges {
                if let Some(slot) = class_of.get_mut(e) {
                    *slot = i;
                }
            }
        }
    }
    let total = crossing_counts(g);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{h}" viewBox="0 0 {SIZE} {h}">"#,
        h = SIZE + 20.0 * classes.map_or(1, |c| c.len()) as f64
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (e, &[u, v]) in g.edges().iter().enumerate() {
        let (x1, y1) = at(u);
        let (x2, y2) = at(v);
        let (color, dash) = match class_of[e] {
            usize::MAX if total[e] == 0 => STYLES[0],
            usize::MAX => ("#999999", ""),
            c => STYLES[c % STYLES.len()],
        };
        let dash = if dash.is_empty() {
            String::new()
        } else {
            format!(r#" stroke-dasharray="{dash}""#)
        };
        let style = format!(r#"fill="none" stroke="{color}" stroke-width="1.6"{dash}"#);
        if outer_chords[e] {
            let mid = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
            let (dx, dy) = (mid.0 - center.0, mid.1 - center.1);
            let len = (dx * dx + dy * dy).sqrt().max(1.0);
            let push = 0.45 * SIZE / 2.0;
            let ctrl = (mid.0 + dx / len * push, mid.1 + dy / len * push);
            let _ = writeln!(
                svg,
                r#"<path d="M {x1:.2} {y1:.2} Q {:.2} {:.2} {x2:.2} {y2:.2}" {style}><title>edge {e}, {} crossings</title></path>"#,
                ctrl.0, ctrl.1, total[e]
            );
        } else {
            let _ = writeln!(
                svg,
                r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" {style}><title>edge {e}, {} crossings</title></line>"#,
                total[e]
            );
        }
    }
    for (v, &pole) in poles.iter().enumerate() {
        let (x, y) = at(v);
        let (r, fill) = if pole { (5.5, "#d62728") } else { (3.5, "#222222") };
        let _ = writeln!(svg, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r}" fill="{fill}"><title>vertex {v}</title></circle>"#);
    }
    if let Some(cs) = classes {
        for (i, (label, edges)) in cs.iter().enumerate() {
            let member: Vec<bool> = {
                let mut m = vec![false; g.edge_count()];
                for &e in edges {
                    if let Some(slot) = m.get_mut(e) {
                        *slot = true;
                    }
                }
                m
            };
            let mut inner = vec![0usize; g.edge_count()];
            for x in g.crossings() {
                let [a, b] = x.edges;
                if member[a] && member[b] {
                    inner[a] += 1;
                    inner[b] += 1;
                }
            }
            let worst = edges.iter().filter(|&&e| e < inner.len()).map(|&e| inner[e]).max().unwrap_or(0);
            let (color, dash) = STYLES[i % STYLES.len()];
            let y = SIZE + 20.0 * i as f64;
            let _ = writeln!(
                svg,
                r#"<line x1="20" y1="{y}" x2="60" y2="{y}" stroke="{color}" stroke-width="2" stroke-dasharray="{dash}"/>"#
            );
            let _ = writeln!(
                svg,
                r#"<text x="70" y="{}" font-family="sans-serif" font-size="13">{label}: {} edges, at most {worst} crossings per edge within the class</text>"#,
                y + 4.0,
                edges.len()
            );
        }
    } else {
        let worst = total.iter().copied().max().unwrap_or(0);
        let _ = writeln!(
            svg,
            r#"<text x="20" y="{}" font-family="sans-serif" font-size="13">{} vertices, {} edges, at most {worst} crossings per edge</text>"#,
            SIZE + 4.0,
            n,
            g.edge_count()
        );
    }
    svg.push_str("</svg>\n");
    Rendered { svg, warnings }
}

#[cfg(test)]
mod tests {
    use super::*;
    use kplane::generate::dodecahedron;
    use kplane::topo::{filled_hexagon, realize_optimal_2plane};

    #[test]
    fn dodecahedron_embedding_is_proper() {
        let g = realize_optimal_2plane(&dodecahedron()).unwrap();
        let r = render(&g, None);
        assert!(r.warnings.is_empty());
        assert_eq!(r.svg.matches("<line").count() + r.svg.matches("<path").count(), 90);
        assert_eq!(r.svg.matches("<path").count(), 5);
    }

    #[test]
    fn hexagon_poles_highlighted() {
        let r = render(&filled_hexagon(0), None);
        assert_eq!(r.svg.matches(r##"fill="#d62728""##).count(), 2);
    }

    #[test]
    fn layered_fallback() {
        let g = TopoGraph::plane(4, vec![[0, 1], [1, 2], [2, 3]]).unwrap();
        let r = render(&g, Some(&[("all".to_string(), vec![0, 1, 2])]));
        assert_eq!(r.warnings.len(), 1);
        assert!(r.svg.contains("all: 3 edges"));
    }
}
