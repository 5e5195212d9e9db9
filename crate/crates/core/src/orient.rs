//! Edge orientations: st-orientations, face types under them, Schnyder
//! 3-orientations of triangulations, exact k-orientations and the 5-cycle
//! vertex selector.

use std::collections::VecDeque;

use thiserror::Error;

use crate::embed::{Dart, Face, FaceProfile, PlaneGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrientError {
    #[error("graph is not biconnected")]
    NotBiconnected,
    #[error("vertex {0} is not on the outer face")]
    NotOnOuterFace(usize),
    #[error("no edge joins {0} and {1}")]
    MissingEdge(usize, usize),
    #[error("graph is not a simple triangulation")]
    NotTriangulation,
    #[error("face {0} is not bounded by two directed paths")]
    CorruptFace(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrientationKind {
    St { s: usize, t: usize },
    Schnyder3,
    KBounded(usize),
}

/// A direction for every edge id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    kind: OrientationKind,
    arcs: Vec<[usize; 2]>,
}

impl Orientation {
    pub fn new(kind: OrientationKind, arcs: Vec<[usize; 2]>) -> Self {
        Orientation { kind, arcs }
    }

    pub fn kind(&self) -> OrientationKind {
        self.kind
    }

    pub fn edge_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn tail(&self, e: usize) -> usize {
        self.arcs[e][0]
    }

    pub fn head(&self, e: usize) -> usize {
        self.arcs[e][1]
    }

    pub fn arcs(&self) -> &[[usize; 2]] {
        &self.arcs
    }

    /// Does dart `d` of `g` run along its edge's direction?
    pub fn along(&self, g: &PlaneGraph, d: Dart) -> bool {
        self.arcs[d.edge()][0] == g.tail(d)
    }

    pub fn out_degrees(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for &[u, _] in &self.arcs {
            out[u] += 1;
        }
        out
    }

    /// Keeps the first `m` edges.
    pub fn truncated(&self, m: usize) -> Orientation {
        Orientation {
            kind: self.kind,
            arcs: self.arcs[..m].to_vec(),
        }
    }
}

/// st-orientation by st-numbering (depth-first search with lowpoints). The
/// edge `{s, t}` must exist and both ends must lie on the outer face.
pub fn st_orientation(g: &PlaneGraph, s: usize, t: usize) -> Result<Orientation, OrientError> {
    let n = g.vertex_count();
    let first = g.dart_between(s, t).ok_or(OrientError::MissingEdge(s, t))?;
    if n > 2 && !g.is_biconnected() {
        return Err(OrientError::NotBiconnected);
    }
    let faces = g.faces().map_err(|_| OrientError::NotBiconnected)?;
    let outer = faces.outer_face();
    for v in [s, t] {
        if !outer.vertices.contains(&v) {
            return Err(OrientError::NotOnOuterFace(v));
        }
    }
    let number = st_numbering(g, s, first);
    let arcs = g
        .edges()
        .iter()
        .map(|&[u, v]| if number[u] < number[v] { [u, v] } else { [v, u] })
        .collect();
    Ok(Orientation::new(OrientationKind::St { s, t }, arcs))
}

fn st_numbering(g: &PlaneGraph, s: usize, first: Dart) -> Vec<usize> {
    let n = g.vertex_count();
    const NONE: usize = usize::MAX;
    let mut pre = vec![NONE; n];
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![NONE; n];
    let mut parent_edge = vec![NONE; n];
    let mut low = vec![NONE; n];
    // iterative DFS; the edge {s, t} is explored first
    let mut stack: Vec<(usize, usize)> = vec![(s, 0)];
    pre[s] = 0;
    order.push(s);
    low[s] = s;
    let neighbours = |v: usize| -> Vec<Dart> {
        if v == s {
            let mut r = vec![first];
            r.extend(g.rotation(s).iter().copied().filter(|&d| d != first));
            r
        } else {
            g.rotation(v).to_vec()
        }
    };
    let mut lists: Vec<Vec<Dart>> = vec![Vec::new(); n];
    lists[s] = neighbours(s);
    while let Some(&mut (v, ref mut i)) = stack.last_mut() {
        if *i < lists[v].len() {
            let d = lists[v][*i];
            *i += 1;
            if d.edge() == parent_edge[v] {
                continue;
            }
            let w = g.head(d);
            if pre[w] == NONE {
                pre[w] = order.len();
                order.push(w);
                parent[w] = v;
                parent_edge[w] = d.edge();
                low[w] = w;
                lists[w] = neighbours(w);
                stack.push((w, 0));
            } else if pre[w] < pre[low[v]] {
                low[v] = w;
            }
        } else {
            stack.pop();
            let p = parent[v];
            if p != NONE && pre[low[v]] < pre[low[p]] {
                low[p] = low[v];
            }
        }
    }
    let t = g.head(first);
    // Ebert's list construction
    let mut next = vec![NONE; n];
    let mut prev = vec![NONE; n];
    let mut minus = vec![false; n];
    next[s] = t;
    prev[t] = s;
    minus[s] = true;
    for &v in &order {
        if v == s || v == t {
            continue;
        }
        let p = parent[v];
        if minus[low[v]] {
            // before p
            let a = prev[p];
            prev[v] = a;
            next[v] = p;
            prev[p] = v;
            if a != NONE {
                next[a] = v;
            }
            minus[p] = false;
        } else {
            let b = next[p];
            next[v] = b;
            prev[v] = p;
            next[p] = v;
            if b != NONE {
                prev[b] = v;
            }
            minus[p] = true;
        }
    }
    let mut head = s;
    while prev[head] != NONE {
        head = prev[head];
    }
    let mut number = vec![0; n];
    let mut k = 0;
    let mut v = head;
    while v != NONE {
        number[v] = k;
        k += 1;
        v = next[v];
    }
    number
}

/// A face split into its two directed boundary paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceType {
    pub face: usize,
    /// Walk position of the source.
    pub s: usize,
    /// Walk position of the target.
    pub t: usize,
    /// Walk positions from s to t against the walk direction.
    pub left: Vec<usize>,
    /// Walk positions from s to t along the walk direction.
    pub right: Vec<usize>,
}

impl FaceType {
    /// `(|p_l|, |p_r|)` in edges.
    pub fn pair(&self) -> (usize, usize) {
        (self.left.len() - 1, self.right.len() - 1)
    }

    pub fn on_left(&self, local: usize) -> bool {
        self.left[1..self.left.len() - 1].contains(&local)
    }

    pub fn on_right(&self, local: usize) -> bool {
        self.right[1..self.right.len() - 1].contains(&local)
    }
}

/// Splits a face boundary into the two directed s(f)→t(f) paths. Walks keep
/// the face on their left, so the path along the walk is the right path.
pub fn classify_face(g: &PlaneGraph, f: &Face, o: &Orientation) -> Result<FaceType, OrientError> {
    let len = f.len();
    let forward: Vec<bool> = f.darts.iter().map(|&d| o.along(g, d)).collect();
    let mut s = None;
    let mut t = None;
    for k in 0..len {
        let before = forward[(k + len - 1) % len];
        match (before, forward[k]) {
            (false, true) if s.replace(k).is_some() => return Err(OrientError::CorruptFace(f.id)),
            (true, false) if t.replace(k).is_some() => return Err(OrientError::CorruptFace(f.id)),
            _ => {}
        }
    }
    let (Some(s), Some(t)) = (s, t) else {
        return Err(OrientError::CorruptFace(f.id));
    };
    let r = (t + len - s) % len;
    let right = (0..=r).map(|i| (s + i) % len).collect();
    let left = (0..=len - r).map(|i| (s + len - i) % len).collect();
    Ok(FaceType {
        face: f.id,
        s,
        t,
        left,
        right,
    })
}

/// Schnyder 3-orientation from a canonical ordering, computed by peeling
/// vertices off the outer cycle. Inner vertices get out-degree exactly 3.
pub fn schnyder_3_orientation(t: &PlaneGraph) -> Result<Orientation, OrientError> {
    let n = t.vertex_count();
    if n < 3 || !t.is_simple() || t.face_profile() != FaceProfile::Triangulation {
        return Err(OrientError::NotTriangulation);
    }
    let faces = t.faces().map_err(|_| OrientError::NotTriangulation)?;
    let outer = &faces.outer_face().vertices;
    let (a, b, c) = (outer[0], outer[1], outer[2]);
    const NONE: usize = usize::MAX;
    let mut arcs = vec![[NONE; 2]; t.edge_count()];
    // contour as a cyclic list in outer-walk order
    let mut next = vec![NONE; n];
    let mut prev = vec![NONE; n];
    for (i, &v) in outer.iter().enumerate() {
        next[v] = outer[(i + 1) % 3];
        prev[v] = outer[(i + 2) % 3];
    }
    let mut removed = vec![false; n];
    let mut chords = vec![0usize; n];
    let mut fresh = vec![false; n];
    let mut stack = vec![c];
    let mut left = n;
    while left > 2 {
        let v = loop {
            let v = stack.pop().ok_or(OrientError::NotTriangulation)?;
            if !removed[v] && next[v] != NONE && chords[v] == 0 && v != a && v != b {
                break v;
            }
        };
        let (l, r) = (prev[v], next[v]);
        let rot = t.rotation(v);
        let deg = rot.len();
        let il = rot.iter().position(|&d| t.head(d) == l).ok_or(OrientError::NotTriangulation)?;
        let ir = rot.iter().position(|&d| t.head(d) == r).ok_or(OrientError::NotTriangulation)?;
        // the two arcs of the rotation strictly between l and r
        let arc = |from: usize, to: usize| -> Vec<Dart> {
            let mut out = Vec::new();
            let mut i = (from + 1) % deg;
            while i != to {
                out.push(rot[i]);
                i = (i + 1) % deg;
            }
            out
        };
        let (one, two) = (arc(il, ir), arc(ir, il));
        let clean = |side: &[Dart]| side.iter().all(|&d| !removed[t.head(d)]);
        let inner: Vec<Dart> = match (clean(&one), clean(&two)) {
            (true, true) => {
                if one.len() >= two.len() {
                    one
                } else {
                    two.into_iter().rev().collect()
                }
            }
            (true, false) => one,
            (false, true) => two.into_iter().rev().collect(),
            (false, false) => return Err(OrientError::NotTriangulation),
        };
        // exposed vertices, ordered from l to r
        let exposed: Vec<usize> = inner.iter().map(|&d| t.head(d)).collect();
        removed[v] = true;
        left -= 1;
        for d in t.rotation(v) {
            let w = t.head(*d);
            if w == l || w == r {
                arcs[d.edge()] = [v, w];
            }
        }
        for &d in &inner {
            arcs[d.edge()] = [t.head(d), v];
        }
        next[v] = NONE;
        prev[v] = NONE;
        if exposed.is_empty() {
            next[l] = r;
            prev[r] = l;
            if left > 2 {
                chords[l] = chords[l].saturating_sub(1);
                chords[r] = chords[r].saturating_sub(1);
            }
            for w in [l, r] {
                if chords[w] == 0 {
                    stack.push(w);
                }
            }
            continue;
        }
        let mut p = l;
        for &u in &exposed {
            next[p] = u;
            prev[u] = p;
            p = u;
        }
        next[p] = r;
        prev[r] = p;
        for &u in &exposed {
            fresh[u] = true;
        }
        for &u in &exposed {
            for d in t.rotation(u) {
                let w = t.head(*d);
                if removed[w] || next[w] == NONE || w == prev[u] || w == next[u] {
                    continue;
                }
                chords[u] += 1;
                if !fresh[w] {
                    chords[w] += 1;
                }
            }
        }
        for &u in &exposed {
            fresh[u] = false;
        }
        for &u in exposed.iter().rev() {
            if chords[u] == 0 {
                stack.push(u);
            }
        }
    }
    let e_ab = t.dart_between(a, b).ok_or(OrientError::NotTriangulation)?;
    arcs[e_ab.edge()] = [a, b];
    if arcs.iter().any(|x| x[0] == NONE) {
        return Err(OrientError::NotTriangulation);
    }
    Ok(Orientation::new(OrientationKind::Schnyder3, arcs))
}

/// Subgraph proving that no k-orientation exists: more than `k * |vertices|`
/// edges have both ends in `vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityWitness {
    pub vertices: Vec<usize>,
    pub edges: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KOrientation {
    Feasible(Orientation),
    Infeasible(DensityWitness),
}

impl KOrientation {
    pub fn feasible(&self) -> Option<&Orientation> {
        match self {
            KOrientation::Feasible(o) => Some(o),
            KOrientation::Infeasible(_) => None,
        }
    }
}

/// Orientation with every out-degree at most `k`, or a density witness.
///
/// Starts from a smallest-last orientation and reverses directed paths from
/// overloaded vertices to vertices with spare capacity.
pub fn k_orientation(n: usize, edges: &[[usize; 2]], k: usize) -> KOrientation {
    let mut arcs = degeneracy_orientation(n, edges);
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &[u, _]) in arcs.iter().enumerate() {
        out[u].push(e);
    }
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![0usize; n];
    let mut mark = 0;
    for v in 0..n {
        while out[v].len() > k {
            mark += 1;
            // breadth-first search along out-arcs for spare capacity
            let mut queue = VecDeque::from([v]);
            let mut reached = vec![v];
            seen[v] = mark;
            let mut found = None;
            while let Some(x) = queue.pop_front() {
                if out[x].len() < k {
                    found = Some(x);
                    break;
                }
                for &e in &out[x] {
                    let y = arcs[e][1];
                    if seen[y] != mark {
                        seen[y] = mark;
                        parent[y] = e;
                        reached.push(y);
                        queue.push_back(y);
                    }
                }
            }
            let Some(mut w) = found else {
                reached.sort_unstable();
                let inside = edges
                    .iter()
                    .filter(|&&[a, b]| seen[a] == mark && seen[b] == mark)
                    .count();
                return KOrientation::Infeasible(DensityWitness {
                    vertices: reached,
                    edges: inside,
                });
            };
            while w != v {
                let e = parent[w];
                let x = arcs[e][0];
                out[x].retain(|&f| f != e);
                arcs[e] = [w, x];
                out[w].push(e);
                w = x;
            }
        }
    }
    KOrientation::Feasible(Orientation::new(OrientationKind::KBounded(k), arcs))
}

/// Orients every edge away from the endpoint removed first in a
/// smallest-last order.
fn degeneracy_orientation(n: usize, edges: &[[usize; 2]]) -> Vec<[usize; 2]> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &[u, v]) in edges.iter().enumerate() {
        adj[u].push(e);
        adj[v].push(e);
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let max = degree.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max + 1];
    for v in 0..n {
        buckets[degree[v]].push(v);
    }
    let mut removed = vec![false; n];
    let mut arcs = vec![[0; 2]; edges.len()];
    let mut done = vec![false; edges.len()];
    let mut low = 0;
    for _ in 0..n {
        let v = loop {
            while buckets[low].is_empty() {
                low += 1;
            }
            let v = buckets[low].pop().unwrap();
            if !removed[v] && degree[v] == low {
                break v;
            }
        };
        removed[v] = true;
        for &e in &adj[v] {
            if done[e] {
                continue;
            }
            done[e] = true;
            let [a, b] = edges[e];
            let w = if a == v { b } else { a };
            arcs[e] = [v, w];
            degree[w] -= 1;
            buckets[degree[w]].push(w);
            low = low.min(degree[w]);
        }
    }
    arcs
}

/// For a pentagon whose edge `(v_i, v_{i+1})` is directed forward iff
/// `forward[i]`, picks `j` such that `v_j`, `v_{j+2}` and `v_{j+3}` each have
/// an outgoing pentagon edge.
pub fn pentagon_select(forward: [bool; 5]) -> usize {
    let in_in: Vec<usize> = (0..5)
        .filter(|&i| forward[(i + 4) % 5] && !forward[i])
        .collect();
    match in_in[..] {
        [] => 0,
        [h] => (h + 1) % 5,
        [x, y] => {
            // two in-in vertices are never adjacent, so they sit at distance 2
            if (x + 2) % 5 == y {
                (x + 1) % 5
            } else {
                (y + 1) % 5
            }
        }
        _ => unreachable!("at most two pairwise non-adjacent vertices on a 5-cycle"),
    }
}
