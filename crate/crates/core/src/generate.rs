//! Instance generators.

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use thiserror::Error;

use crate::embed::{key, EmbedError, PlaneGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("stacked triangulation needs n >= 4, got {0}")]
    TooSmall(usize),
    #[error("outer length must be 3 or 4, got {0}")]
    OuterLength(usize),
    #[error("no gadget with outer length {outer_len} found within {max_vertices} vertices")]
    NotFound { outer_len: usize, max_vertices: usize },
    #[error("face {face} has length {len}, expected 6")]
    NotHexagon { face: usize, len: usize },
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

/// Vertex bound used when a gadget is requested implicitly.
pub const DEFAULT_GADGET_BOUND: usize = 28;

/// The dodecahedron: 20 vertices, 30 edges, 12 pentagons; outer face 0..5.
pub fn dodecahedron() -> PlaneGraph {
    let a = |i: usize| i % 5;
    let b = |i: usize| 5 + i % 5;
    let c = |i: usize| 10 + i % 5;
    let d = |i: usize| 15 + i % 5;
    let mut faces = vec![(0..5).collect::<Vec<_>>()];
    for i in 0..5 {
        faces.push(vec![a(i), a(i + 1), b(i + 1), c(i), b(i)]);
        faces.push(vec![c(i), b(i + 1), c(i + 1), d(i + 1), d(i)]);
    }
    faces.push((15..20).collect());
    PlaneGraph::from_faces(20, &faces, 0).expect("dodecahedron is a valid plane graph")
}

/// Maximal plane graph grown from K4 by stacking a vertex into the oldest
/// inner face, breadth first. The outer face is (0, 1, 2).
pub fn stacked_triangulation(n: usize) -> Result<PlaneGraph, GenerateError> {
    if n < 4 {
        return Err(GenerateError::TooSmall(n));
    }
    let faces = stacked_faces(n);
    Ok(PlaneGraph::from_faces(n, &faces, 0)?)
}

fn stacked_faces(n: usize) -> Vec<Vec<usize>> {
    let mut done = vec![vec![0, 1, 2]];
    let mut queue: VecDeque<[usize; 3]> = VecDeque::from([[0, 1, 3], [1, 2, 3], [2, 0, 3]]);
    for v in 4..n {
        let [x, y, z] = queue.pop_front().unwrap();
        queue.extend([[x, y, v], [y, z, v], [z, x, v]]);
    }
    done.extend(queue.into_iter().map(|f| f.to_vec()));
    done
}

/// A disk whose inner faces are pentagons and whose outer face is the cycle
/// `0, 1, .., outer_len - 1`.
#[derive(Clone, Debug)]
pub struct Gadget {
    pub graph: PlaneGraph,
    pub outer_len: usize,
    /// Inner faces as vertex walks.
    pub faces: Vec<Vec<usize>>,
    /// Whether filling every inner pentagon yields a simple graph, and keeps
    /// doing so after gluing into the faces of a simple host.
    pub glues_simply: bool,
}

impl Gadget {
    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }
}

/// Pairs at face-distance two, the endpoints of the chords of `face`.
fn chord_pairs(face: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    let len = face.len();
    (0..len).map(move |i| key(face[i], face[(i + 2) % len]))
}

/// Filling a pentagon disk with pentagrams is simple iff no chord joins two
/// adjacent vertices and no vertex pair is a chord of two faces.
pub fn fills_simply(edges: &[[usize; 2]], faces: &[Vec<usize>]) -> bool {
    let adjacent: HashSet<(usize, usize)> = edges.iter().map(|&[u, v]| key(u, v)).collect();
    let mut chords = HashSet::new();
    faces
        .iter()
        .flat_map(|f| chord_pairs(f).collect::<Vec<_>>())
        .all(|p| !adjacent.contains(&p) && chords.insert(p))
}

struct Search {
    target: usize,
    outer_len: usize,
    vertices: usize,
    edges: HashSet<(usize, usize)>,
    chords: HashSet<(usize, usize)>,
    faces: Vec<Vec<usize>>,
}

impl Search {
    fn face_ok(&self, face: &[usize]) -> bool {
        let mut local = HashSet::new();
        chord_pairs(face)
            .all(|p| !self.edges.contains(&p) && !self.chords.contains(&p) && local.insert(p))
    }

    fn add_face(&mut self, face: Vec<usize>) {
        for p in chord_pairs(&face) {
            self.chords.insert(p);
        }
        self.faces.push(face);
    }

    fn remove_face(&mut self) {
        let face = self.faces.pop().unwrap();
        for p in chord_pairs(&face) {
            self.chords.remove(&p);
        }
    }

    /// Fills the region bounded by `boundary`, always using the face on its
    /// first edge.
    fn fill(&mut self, boundary: &[usize]) -> bool {
        let len = boundary.len();
        if len == 5 && self.vertices == self.target && self.face_ok(boundary) {
            self.add_face(boundary.to_vec());
            return true;
        }
        for d1 in 1..=4.min(len - 1) {
            let q = 4 - d1;
            let next_len = len + 5 - 2 * d1;
            if self.vertices + q > self.target || next_len < 3 {
                continue;
            }
            for s in 0..d1 {
                let rot: Vec<usize> = (0..len).map(|i| boundary[(i + len - s) % len]).collect();
                let start = rot[0];
                let end = rot[d1];
                let fresh: Vec<usize> = (self.vertices..self.vertices + q).collect();
                let mut face: Vec<usize> = rot[..=d1].to_vec();
                face.extend(&fresh);
                let mut new_edges = Vec::new();
                if q == 0 {
                    let e = key(start, end);
                    if self.edges.contains(&e) || self.chords.contains(&e) {
                        continue;
                    }
                    new_edges.push(e);
                } else {
                    let mut prev = end;
                    for &x in fresh.iter().chain([&start]) {
                        new_edges.push(key(prev, x));
                        prev = x;
                    }
                }
                if !self.face_ok(&face) {
                    continue;
                }
                let mut next = vec![start];
                next.extend(fresh.iter().rev());
                next.extend(&rot[d1..]);
                self.vertices += q;
                for &e in &new_edges {
                    self.edges.insert(e);
                }
                self.add_face(face);
                if self.fill(&next) {
                    return true;
                }
                self.remove_face();
                for e in &new_edges {
                    self.edges.remove(e);
                }
                self.vertices -= q;
            }
        }
        false
    }
}

/// Smallest pentagonal disk with the given outer length whose filling glues
/// simply, found by peeling pentagons off the open boundary with iterative
/// deepening on the vertex count.
pub fn gadget_search(outer_len: usize, max_vertices: usize) -> Result<Gadget, GenerateError> {
    if !(3..=4).contains(&outer_len) {
        return Err(GenerateError::OuterLength(outer_len));
    }
    // 3F = 2n - 2 - L for a disk of F pentagons with outer length L
    let first = (outer_len..).find(|&n| (2 * n - 2 - outer_len).is_multiple_of(3) && n > outer_len + 1).unwrap();
    for target in (first..=max_vertices).step_by(3) {
        let outer: Vec<usize> = (0..outer_len).collect();
        let mut search = Search {
            target,
            outer_len,
            vertices: outer_len,
            edges: (0..outer_len).map(|i| key(i, (i + 1) % outer_len)).collect(),
            chords: HashSet::new(),
            faces: Vec::new(),
        };
        if search.fill(&outer) {
            return Ok(build_gadget(search.outer_len, search.target, search.faces)?);
        }
    }
    Err(GenerateError::NotFound {
        outer_len,
        max_vertices,
    })
}

fn build_gadget(outer_len: usize, n: usize, faces: Vec<Vec<usize>>) -> Result<Gadget, EmbedError> {
    let mut all = vec![(0..outer_len).collect::<Vec<_>>()];
    all.extend(faces.iter().cloned());
    let graph = PlaneGraph::from_faces(n, &all, 0)?;
    let glues_simply =
        graph.is_simple() && graph.is_biconnected() && fills_simply(graph.edges(), &faces);
    Ok(Gadget {
        graph,
        outer_len,
        faces,
        glues_simply,
    })
}

/// The triangle gadget used by [`glue_family`], searched once per process.
pub fn default_triangle_gadget() -> Result<&'static Gadget, GenerateError> {
    static GADGET: OnceLock<Result<Gadget, GenerateError>> = OnceLock::new();
    GADGET
        .get_or_init(|| gadget_search(3, DEFAULT_GADGET_BOUND))
        .as_ref()
        .map_err(Clone::clone)
}

/// Pentangulation obtained by gluing a copy of the triangle gadget into every
/// face of the stacked triangulation on `n` vertices, outer face included.
pub fn glue_family(n: usize) -> Result<PlaneGraph, GenerateError> {
    glue_with(n, default_triangle_gadget()?)
}

/// [`glue_family`] with an explicit gadget.
pub fn glue_with(n: usize, gadget: &Gadget) -> Result<PlaneGraph, GenerateError> {
    if gadget.outer_len != 3 {
        return Err(GenerateError::OuterLength(gadget.outer_len));
    }
    if n < 4 {
        return Err(GenerateError::TooSmall(n));
    }
    let host = stacked_faces(n);
    let inner = gadget.vertex_count() - 3;
    let mut faces = Vec::with_capacity(host.len() * gadget.faces.len());
    for (copy, tri) in host.iter().enumerate() {
        let base = n + copy * inner;
        let map = |v: usize| if v < 3 { tri[v] } else { base + v - 3 };
        for f in &gadget.faces {
            faces.push(f.iter().map(|&v| map(v)).collect());
        }
    }
    let total = n + host.len() * inner;
    Ok(PlaneGraph::from_faces(total, &faces, 0)?)
}

/// Number of vertices of `glue_family(n)` for the default gadget.
pub fn glue_vertex_count(n: usize) -> Result<usize, GenerateError> {
    let g = default_triangle_gadget()?;
    Ok(n + (2 * n - 4) * (g.vertex_count() - 3))
}

/// A single 6-cycle: two hexagonal faces.
pub fn hex_base() -> PlaneGraph {
    let walk: Vec<usize> = (0..6).collect();
    let rev: Vec<usize> = walk.iter().rev().copied().collect();
    PlaneGraph::from_faces(6, &[walk, rev], 0).expect("6-cycle is a valid plane graph")
}

/// Inserts a new 6-cycle `b0..b5` inside hexagonal face `face` with walk
/// `a0..a5`, joined by the spokes `a0 b0`, `a2 b2`, `a4 b4`.
pub fn hex_expand(h: &PlaneGraph, face: usize) -> Result<PlaneGraph, GenerateError> {
    let faces = h.faces()?;
    let Some(target) = faces.faces.get(face) else {
        return Err(GenerateError::NotHexagon { face, len: 0 });
    };
    if target.len() != 6 {
        return Err(GenerateError::NotHexagon {
            face,
            len: target.len(),
        });
    }
    let n = h.vertex_count();
    let a = &target.vertices;
    let b: Vec<usize> = (n..n + 6).collect();
    let mut walks: Vec<Vec<usize>> = Vec::with_capacity(faces.len() + 3);
    let mut outer = 0;
    for f in faces.iter() {
        if f.id == face {
            continue;
        }
        if f.id == faces.outer {
            outer = walks.len();
        }
        walks.push(f.vertices.clone());
    }
    for k in [0, 2, 4] {
        let (k1, k2) = ((k + 1) % 6, (k + 2) % 6);
        walks.push(vec![a[k], a[k1], a[k2], b[k2], b[k1], b[k]]);
    }
    if face == faces.outer {
        outer = walks.len();
    }
    walks.push(b);
    Ok(PlaneGraph::from_faces(n + 6, &walks, outer)?)
}

/// `hex_base` expanded `expansions` times, cycling through face ids.
pub fn hex_family(expansions: usize) -> Result<PlaneGraph, GenerateError> {
    let mut h = hex_base();
    for step in 0..expansions {
        let f = h.faces()?.len();
        h = hex_expand(&h, (step * 7 + 1) % f)?;
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::FaceProfile;

    #[test]
    fn dodecahedron_counts() {
        let g = dodecahedron();
        let faces = g.faces().unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), faces.len()), (20, 30, 12));
        assert_eq!(3 * faces.len(), 2 * (g.vertex_count() - 2));
        assert_eq!(g.face_profile(), FaceProfile::Pentangulation);
        assert!(!g.has_separating_triangle().unwrap());
        assert!(g.is_simple() && g.is_biconnected());
    }

    #[test]
    fn stacked_triangulations() {
        assert!(matches!(stacked_triangulation(3), Err(GenerateError::TooSmall(3))));
        for n in 4..12 {
            let g = stacked_triangulation(n).unwrap();
            assert_eq!(g.edge_count(), 3 * n - 6);
            assert_eq!(g.face_profile(), FaceProfile::Triangulation);
            assert!(g.is_simple());
        }
        let k4 = stacked_triangulation(4).unwrap();
        assert!((0..4).all(|v| k4.degree(v) == 3));
    }

    #[test]
    fn two_pentagons_on_a_square_do_not_fill_simply() {
        // faces share the path 1-4-5-3 ... share a 3-edge path u-x-y-v
        let faces = vec![vec![0, 1, 4, 5, 3], vec![1, 2, 3, 5, 4]];
        let g = PlaneGraph::from_faces(6, &[vec![0, 1, 2, 3], faces[0].clone(), faces[1].clone()], 0)
            .unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert!(!fills_simply(g.edges(), &faces));
    }

    #[test]
    fn square_gadget() {
        let g = gadget_search(4, 24).unwrap();
        assert!(g.glues_simply);
        assert!(g.faces.iter().all(|f| f.len() == 5));
        assert_eq!(g.graph.faces().unwrap().outer_face().len(), 4);
    }

    #[test]
    fn triangle_gadget() {
        let g = default_triangle_gadget().unwrap();
        assert!(g.glues_simply);
        let faces = g.graph.faces().unwrap();
        assert_eq!(faces.outer_face().len(), 3);
        assert!(faces.internal().all(|f| f.len() == 5));
    }

    #[test]
    fn bad_outer_length() {
        assert!(matches!(gadget_search(5, 10), Err(GenerateError::OuterLength(5))));
    }

    #[test]
    fn glued_family_is_a_pentangulation() {
        for n in 4..7 {
            let p = glue_family(n).unwrap();
            assert_eq!(p.face_profile(), FaceProfile::Pentangulation);
            assert!(p.is_biconnected() && p.is_simple());
            let f = p.faces().unwrap().len();
            assert_eq!(3 * f, 2 * (p.vertex_count() - 2));
            assert_eq!(p.vertex_count(), glue_vertex_count(n).unwrap());
        }
    }

    #[test]
    fn hexangulations() {
        let h = hex_base();
        assert_eq!((h.vertex_count(), h.edge_count(), h.faces().unwrap().len()), (6, 6, 2));
        let h1 = hex_expand(&h, 0).unwrap();
        assert_eq!((h1.vertex_count(), h1.edge_count()), (12, 15));
        assert_eq!(h1.faces().unwrap().len(), 5);
        assert_eq!(h1.euler_characteristic().unwrap(), 2);
        assert_eq!(h1.face_profile(), FaceProfile::Hexangulation);
        let h9 = hex_family(9).unwrap();
        assert_eq!(h9.vertex_count(), 60);
        assert!(h9.is_simple() && h9.is_biconnected());
        assert_eq!(h9.face_profile(), FaceProfile::Hexangulation);
    }

    #[test]
    fn expanding_a_non_hexagon_fails() {
        let p = dodecahedron();
        assert!(matches!(hex_expand(&p, 0), Err(GenerateError::NotHexagon { .. })));
    }
}
