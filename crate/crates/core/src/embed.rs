//! Plane graphs stored as rotation systems.
//!
//! A [`PlaneGraph`] keeps, for every vertex, the clockwise cyclic list of its
//! incident darts (edge-ends). Faces are never stored: they are traced on
//! demand by following `next(d) = succ_cw(twin(d))`, which walks every face
//! with the face on its left. Parallel edges are allowed and are told apart by
//! their edge ids; self-loops are rejected.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

/// One end of an edge. Dart `2e` starts at `ends[e][0]`, dart `2e + 1` at
/// `ends[e][1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart(pub usize);

impl Dart {
    pub fn new(edge: usize, side: usize) -> Self {
        Dart(2 * edge + side)
    }

    pub fn edge(self) -> usize {
        self.0 >> 1
    }

    pub fn side(self) -> usize {
        self.0 & 1
    }

    pub fn twin(self) -> Dart {
        Dart(self.0 ^ 1)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edge {0} is a self-loop")]
    SelfLoop(usize),
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("face list does not describe a plane graph: {0}")]
    InvalidFaces(String),
    #[error("expected a {expected}-angulation, face {face} has length {len}")]
    FaceLength {
        face: usize,
        len: usize,
        expected: usize,
    },
    #[error("face {0} visits a vertex more than once")]
    RepeatedVertex(usize),
    #[error("graph is not biconnected")]
    NotBiconnected,
    #[error("graph is not simple")]
    NotSimple,
}

/// A closed boundary walk. `darts[i]` runs from `vertices[i]` to
/// `vertices[(i + 1) % len]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    pub darts: Vec<Dart>,
    pub vertices: Vec<usize>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// True when no vertex repeats along the walk.
    pub fn is_simple_cycle(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.vertices.len());
        self.vertices.iter().all(|v| seen.insert(*v))
    }

    /// Position of `v` on the walk, if it occurs.
    pub fn index_of(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v)
    }
}

/// All faces of a connected plane graph.
#[derive(Clone, Debug)]
pub struct Faces {
    pub faces: Vec<Face>,
    /// Face id of every dart.
    pub face_of: Vec<usize>,
    pub outer: usize,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn outer_face(&self) -> &Face {
        &self.faces[self.outer]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter()
    }

    pub fn internal(&self) -> impl Iterator<Item = &Face> {
        let outer = self.outer;
        self.faces.iter().filter(move |f| f.id != outer)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum FaceProfile {
    Triangulation,
    Pentangulation,
    Hexangulation,
    /// Every face has this length, which is none of 3, 5 or 6.
    Uniform(usize),
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneGraph {
    n: usize,
    ends: Vec<[usize; 2]>,
    rotation: Vec<Vec<Dart>>,
    position: Vec<usize>,
    outer: Dart,
}

impl PlaneGraph {
    /// Builds a plane graph from edge endpoints and clockwise rotations.
    ///
    /// Every dart must appear exactly once, in the rotation of its tail.
    /// `outer` is any dart whose left face is the outer face.
    pub fn new(
        n: usize,
        ends: Vec<[usize; 2]>,
        rotation: Vec<Vec<Dart>>,
        outer: Dart,
    ) -> Result<Self, EmbedError> {
        if n == 0 {
            return Err(EmbedError::Empty);
        }
        if rotation.len() != n {
            return Err(EmbedError::InvalidRotation(format!(
                "expected {n} rotations, found {}",
                rotation.len()
            )));
        }
        for (e, &[u, v]) in ends.iter().enumerate() {
            if u >= n {
                return Err(EmbedError::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(EmbedError::VertexOutOfRange(v));
            }
            if u == v {
                return Err(EmbedError::SelfLoop(e));
            }
        }
        let mut position = vec![usize::MAX; 2 * ends.len()];
        for (v, rot) in rotation.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                if d.edge() >= ends.len() {
                    return Err(EmbedError::InvalidRotation(format!(
                        "vertex {v} lists unknown edge {}",
                        d.edge()
                    )));
                }
                if ends[d.edge()][d.side()] != v {
                    return Err(EmbedError::InvalidRotation(format!(
                        "dart {} listed at vertex {v} but starts at {}",
                        d.0,
                        ends[d.edge()][d.side()]
                    )));
                }
                if position[d.0] != usize::MAX {
                    return Err(EmbedError::InvalidRotation(format!(
                        "dart {} listed twice",
                        d.0
                    )));
                }
                position[d.0] = i;
            }
        }
        if let Some(d) = position.iter().position(|&p| p == usize::MAX) {
            return Err(EmbedError::InvalidRotation(format!(
                "edge {} is missing from the rotation of vertex {}",
                d / 2,
                ends[d / 2][d % 2]
            )));
        }
        if ends.is_empty() {
            if n != 1 {
                return Err(EmbedError::Disconnected);
            }
        } else if outer.0 >= 2 * ends.len() {
            return Err(EmbedError::InvalidRotation(format!(
                "outer dart {} does not exist",
                outer.0
            )));
        }
        Ok(PlaneGraph {
            n,
            ends,
            rotation,
            position,
            outer,
        })
    }

    /// Builds a simple plane graph from its face boundaries.
    ///
    /// Faces may be listed in either direction; they are re-oriented so that
    /// every edge is traversed once each way. `outer_face` indexes `faces`.
    pub fn from_faces(
        n: usize,
        faces: &[Vec<usize>],
        outer_face: usize,
    ) -> Result<Self, EmbedError> {
        if outer_face >= faces.len() {
            return Err(EmbedError::InvalidFaces("outer face index out of range".into()));
        }
        let mut edge_faces: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
        for (fi, f) in faces.iter().enumerate() {
            if f.len() < 3 {
                return Err(EmbedError::InvalidFaces(format!("face {fi} is shorter than 3")));
            }
            for i in 0..f.len() {
                let (u, v) = (f[i], f[(i + 1) % f.len()]);
                if u >= n || v >= n {
                    return Err(EmbedError::VertexOutOfRange(u.max(v)));
                }
                if u == v {
                    return Err(EmbedError::InvalidFaces(format!("face {fi} has a loop")));
                }
                edge_faces.entry(key(u, v)).or_default().push((fi, i));
            }
        }
        if edge_faces.values().any(|occ| occ.len() != 2) {
            return Err(EmbedError::InvalidFaces(
                "every edge must border exactly two face sides".into(),
            ));
        }

        // Orient faces consistently by a BFS over shared edges.
        let mut flip: Vec<Option<bool>> = vec![None; faces.len()];
        let forward = |fi: usize, i: usize, flipped: bool| -> (usize, usize) {
            let f = &faces[fi];
            let (u, v) = (f[i], f[(i + 1) % f.len()]);
            if flipped {
                (v, u)
            } else {
                (u, v)
            }
        };
        let mut adjacency: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); faces.len()];
        for occ in edge_faces.values() {
            let (a, ia) = occ[0];
            let (b, ib) = occ[1];
            adjacency[a].push((ia, b, ib));
            adjacency[b].push((ib, a, ia));
        }
        let mut queue = std::collections::VecDeque::new();
        flip[outer_face] = Some(false);
        queue.push_back(outer_face);
        while let Some(fi) = queue.pop_front() {
            let fl = flip[fi].unwrap();
            for &(i, other, j) in &adjacency[fi] {
                let mine = forward(fi, i, fl);
                let need = {
                    let theirs = forward(other, j, false);
                    theirs == mine
                };
                match flip[other] {
                    None => {
                        flip[other] = Some(need);
                        queue.push_back(other);
                    }
                    Some(f) => {
                        if forward(other, j, f) == mine {
                            return Err(EmbedError::InvalidFaces(
                                "faces cannot be oriented consistently".into(),
                            ));
                        }
                    }
                }
            }
        }
        if flip.iter().any(|f| f.is_none()) {
            return Err(EmbedError::Disconnected);
        }

        let mut edge_id: HashMap<(usize, usize), usize> = HashMap::new();
        let mut ends: Vec<[usize; 2]> = Vec::new();
        let dart_of = |edge_id: &HashMap<(usize, usize), usize>, ends: &Vec<[usize; 2]>, u: usize, v: usize| {
            let e = edge_id[&key(u, v)];
            Dart::new(e, if ends[e][0] == u { 0 } else { 1 })
        };
        for f in faces {
            for i in 0..f.len() {
                let (u, v) = (f[i], f[(i + 1) % f.len()]);
                edge_id.entry(key(u, v)).or_insert_with(|| {
                    ends.push([u, v]);
                    ends.len() - 1
                });
            }
        }
        // succ_cw(v -> u) = v -> w whenever u -> v -> w is a face corner.
        let mut succ: HashMap<Dart, Dart> = HashMap::with_capacity(2 * ends.len());
        let mut outer = None;
        for (fi, f) in faces.iter().enumerate() {
            let walk: Vec<usize> = if flip[fi].unwrap() {
                f.iter().rev().copied().collect()
            } else {
                f.clone()
            };
            let len = walk.len();
            for i in 0..len {
                let (u, v, w) = (walk[i], walk[(i + 1) % len], walk[(i + 2) % len]);
                let back = dart_of(&edge_id, &ends, v, u);
                let fwd = dart_of(&edge_id, &ends, v, w);
                if succ.insert(back, fwd).is_some() {
                    return Err(EmbedError::InvalidFaces("corner listed twice".into()));
                }
            }
            if fi == outer_face {
                outer = Some(dart_of(&edge_id, &ends, walk[0], walk[1]));
            }
        }
        let mut rotation: Vec<Vec<Dart>> = vec![Vec::new(); n];
        let mut first: Vec<Option<Dart>> = vec![None; n];
        for (e, pair) in ends.iter().enumerate() {
            for (side, &v) in pair.iter().enumerate() {
                let d = Dart::new(e, side);
                if first[v].is_none() || d < first[v].unwrap() {
                    first[v] = Some(d);
                }
            }
        }
        let mut degree = vec![0usize; n];
        for &[u, v] in &ends {
            degree[u] += 1;
            degree[v] += 1;
        }
        for v in 0..n {
            let Some(start) = first[v] else {
                return Err(EmbedError::Disconnected);
            };
            let mut d = start;
            loop {
                rotation[v].push(d);
                d = *succ.get(&d).ok_or_else(|| {
                    EmbedError::InvalidFaces(format!("missing corner at vertex {v}"))
                })?;
                if d == start {
                    break;
                }
                if rotation[v].len() > degree[v] {
                    break;
                }
            }
            if rotation[v].len() != degree[v] {
                return Err(EmbedError::InvalidFaces(format!(
                    "faces around vertex {v} do not form a single disk"
                )));
            }
        }
        PlaneGraph::new(n, ends, rotation, outer.unwrap())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn ends(&self, e: usize) -> [usize; 2] {
        self.ends[e]
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.ends
    }

    pub fn tail(&self, d: Dart) -> usize {
        self.ends[d.edge()][d.side()]
    }

    pub fn head(&self, d: Dart) -> usize {
        self.ends[d.edge()][1 - d.side()]
    }

    pub fn rotation(&self, v: usize) -> &[Dart] {
        &self.rotation[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn outer_dart(&self) -> Dart {
        self.outer
    }

    /// Next dart clockwise around the tail of `d`.
    pub fn succ_cw(&self, d: Dart) -> Dart {
        let rot = &self.rotation[self.tail(d)];
        rot[(self.position[d.0] + 1) % rot.len()]
    }

    /// Next dart counter-clockwise around the tail of `d`.
    pub fn pred_cw(&self, d: Dart) -> Dart {
        let rot = &self.rotation[self.tail(d)];
        rot[(self.position[d.0] + rot.len() - 1) % rot.len()]
    }

    /// Successor of `d` along the face on its left.
    pub fn face_next(&self, d: Dart) -> Dart {
        self.succ_cw(d.twin())
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rotation[v].iter().map(move |&d| self.head(d))
    }

    /// Dart from `u` to `v`, if the two are adjacent.
    pub fn dart_between(&self, u: usize, v: usize) -> Option<Dart> {
        self.rotation[u].iter().copied().find(|&d| self.head(d) == v)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.ends.len());
        self.ends.iter().all(|&[u, v]| seen.insert(key(u, v)))
    }

    /// Traces every face. Fails on disconnected input, where the rotation
    /// system alone cannot place components relative to each other.
    pub fn faces(&self) -> Result<Faces, EmbedError> {
        if !self.is_connected() {
            return Err(EmbedError::Disconnected);
        }
        let darts = 2 * self.ends.len();
        let mut face_of = vec![usize::MAX; darts];
        let mut faces = Vec::new();
        for start in 0..darts {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut walk = Vec::new();
            let mut verts = Vec::new();
            let mut d = Dart(start);
            loop {
                face_of[d.0] = id;
                walk.push(d);
                verts.push(self.tail(d));
                d = self.face_next(d);
                if d.0 == start {
                    break;
                }
            }
            faces.push(Face {
                id,
                darts: walk,
                vertices: verts,
            });
        }
        let outer = if darts == 0 { 0 } else { face_of[self.outer.0] };
        if darts == 0 {
            faces.push(Face {
                id: 0,
                darts: Vec::new(),
                vertices: vec![0],
            });
        }
        Ok(Faces {
            faces,
            face_of,
            outer,
        })
    }

    /// `V - E + F`; equals 2 for every connected plane graph.
    pub fn euler_characteristic(&self) -> Result<i64, EmbedError> {
        let f = self.faces()?.len() as i64;
        Ok(self.n as i64 - self.ends.len() as i64 + f)
    }

    /// True iff the graph has at least three vertices, is connected and has
    /// no cutvertex.
    pub fn is_biconnected(&self) -> bool {
        self.n >= 3 && self.is_connected() && articulation_points(self.n, &self.ends).is_empty()
    }

    pub fn face_profile(&self) -> FaceProfile {
        let Ok(faces) = self.faces() else {
            return FaceProfile::Other;
        };
        let len = faces.faces[0].len();
        if faces.iter().any(|f| f.len() != len) {
            return FaceProfile::Other;
        }
        match len {
            3 => FaceProfile::Triangulation,
            5 => FaceProfile::Pentangulation,
            6 => FaceProfile::Hexangulation,
            l => FaceProfile::Uniform(l),
        }
    }

    /// True iff some 3-cycle does not bound a face.
    pub fn has_separating_triangle(&self) -> Result<bool, EmbedError> {
        if !self.is_simple() {
            return Err(EmbedError::NotSimple);
        }
        let faces = self.faces()?;
        let mut facial: HashSet<[usize; 3]> = HashSet::new();
        for f in faces.iter().filter(|f| f.len() == 3) {
            let mut t = [f.vertices[0], f.vertices[1], f.vertices[2]];
            t.sort_unstable();
            facial.insert(t);
        }
        let adj: Vec<HashSet<usize>> = (0..self.n).map(|v| self.neighbors(v).collect()).collect();
        for &[u, v] in &self.ends {
            let (a, b) = if adj[u].len() <= adj[v].len() { (u, v) } else { (v, u) };
            for &w in &adj[a] {
                if w > u.max(v) && adj[b].contains(&w) {
                    let mut t = [u, v, w];
                    t.sort_unstable();
                    if !facial.contains(&t) {
                        return Ok(true);
                    }
                }
            }
        }
        Ok(false)
    }

    /// Adds chords inside faces. Each chord is `(face, i, j)` with `i`, `j`
    /// positions on that face's walk; chords of one face must not cross.
    /// New edges get ids `edge_count()..` in input order.
    pub fn with_face_chords(
        &self,
        faces: &Faces,
        chords: &[(usize, usize, usize)],
    ) -> Result<PlaneGraph, EmbedError> {
        let mut ends = self.ends.clone();
        // anchor dart -> darts to insert clockwise after it, with sort key
        let mut inserts: HashMap<Dart, Vec<(usize, Dart)>> = HashMap::new();
        for &(fid, i, j) in chords {
            let face = &faces.faces[fid];
            let len = face.len();
            if i >= len || j >= len || i == j {
                return Err(EmbedError::InvalidRotation(format!(
                    "chord ({i}, {j}) does not fit face {fid}"
                )));
            }
            let (u, v) = (face.vertices[i], face.vertices[j]);
            let e = ends.len();
            ends.push([u, v]);
            for (here, there, dart) in [(i, j, Dart::new(e, 0)), (j, i, Dart::new(e, 1))] {
                let anchor = face.darts[(here + len - 1) % len].twin();
                inserts
                    .entry(anchor)
                    .or_default()
                    .push((corner_key(here, there, len), dart));
            }
        }
        let mut rotation = Vec::with_capacity(self.n);
        for v in 0..self.n {
            let mut rot = Vec::with_capacity(self.rotation[v].len());
            for &d in &self.rotation[v] {
                rot.push(d);
                if let Some(list) = inserts.get_mut(&d) {
                    list.sort_by_key(|&(k, _)| k);
                    rot.extend(list.iter().map(|&(_, nd)| nd));
                }
            }
            rotation.push(rot);
        }
        PlaneGraph::new(self.n, ends, rotation, self.outer)
    }

    /// Triangulates every pentagonal face (outer face included) by the two
    /// chords sharing walk position 2: `(v0, v2)` and `(v2, v4)`.
    pub fn triangulate_pentangulation(&self) -> Result<Triangulated, EmbedError> {
        let faces = self.faces()?;
        let mut chords = Vec::with_capacity(2 * faces.len());
        for f in faces.iter() {
            if f.len() != 5 {
                return Err(EmbedError::FaceLength {
                    face: f.id,
                    len: f.len(),
                    expected: 5,
                });
            }
            if !f.is_simple_cycle() {
                return Err(EmbedError::RepeatedVertex(f.id));
            }
            chords.push((f.id, 0, 2));
            chords.push((f.id, 2, 4));
        }
        let base = self.edge_count();
        let graph = self.with_face_chords(&faces, &chords)?;
        let added = chords
            .iter()
            .enumerate()
            .map(|(k, &(f, _, _))| (f, base + k))
            .collect();
        Ok(Triangulated { graph, added })
    }
}

/// Result of [`PlaneGraph::triangulate_pentangulation`].
#[derive(Clone, Debug)]
pub struct Triangulated {
    pub graph: PlaneGraph,
    /// `(face of the original graph, new edge id)` for every inserted chord.
    pub added: Vec<(usize, usize)>,
}

/// Clockwise insertion key at corner `here` for a chord towards `there`.
/// Sweeping clockwise from the previous walk vertex, targets appear in order
/// `here - 2, here - 3, ..., here + 2`.
pub(crate) fn corner_key(here: usize, there: usize, len: usize) -> usize {
    (here + len - there) % len
}

pub(crate) fn key(u: usize, v: usize) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Cutvertices of an undirected multigraph (iterative lowpoint DFS).
pub fn articulation_points(n: usize, ends: &[[usize; 2]]) -> Vec<usize> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (e, &[u, v]) in ends.iter().enumerate() {
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    let mut pre = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut counter = 0;
    for root in 0..n {
        if pre[root] != usize::MAX {
            continue;
        }
        pre[root] = counter;
        low[root] = counter;
        counter += 1;
        let mut root_children = 0;
        // (vertex, parent edge, next adjacency index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, pe, idx) = *top;
            if idx < adj[v].len() {
                top.2 += 1;
                let (w, e) = adj[v][idx];
                if e == pe {
                    continue;
                }
                if pre[w] == usize::MAX {
                    pre[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, e, 0));
                } else {
                    low[v] = low[v].min(pre[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if p != root && low[v] >= pre[p] {
                        is_cut[p] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    (0..n).filter(|&v| is_cut[v]).collect()
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::generate::dodecahedron;

    fn brute_force_biconnected(g: &PlaneGraph) -> bool {
        let n = g.vertex_count();
        if n < 3 || !g.is_connected() {
            return false;
        }
        (0..n).all(|cut| {
            let start = if cut == 0 { 1 } else { 0 };
            let mut seen = vec![false; n];
            seen[cut] = true;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in g.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            seen.iter().all(|&s| s)
        })
    }

    #[test]
    fn five_cycle_has_two_pentagonal_faces() {
        let g = cycle(5);
        let faces = g.faces().unwrap();
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| f.len() == 5));
        assert_eq!(g.face_profile(), FaceProfile::Pentangulation);
    }

    #[test]
    fn six_cycle_is_a_hexangulation() {
        let g = cycle(6);
        let faces = g.faces().unwrap();
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| f.len() == 6));
        assert_eq!(g.face_profile(), FaceProfile::Hexangulation);
    }

    #[test]
    fn dodecahedron_faces() {
        let g = dodecahedron();
        let faces = g.faces().unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), faces.len()), (20, 30, 12));
        assert!(faces.iter().all(|f| f.len() == 5));
        assert_eq!(g.euler_characteristic().unwrap(), 2);
        let total: usize = faces.iter().map(Face::len).sum();
        assert_eq!(total, 2 * g.edge_count());
        assert_eq!(g.face_profile(), FaceProfile::Pentangulation);
    }

    #[test]
    fn k4_is_a_triangulation_without_separating_triangles() {
        let g = k4();
        assert_eq!(g.face_profile(), FaceProfile::Triangulation);
        assert!(!g.has_separating_triangle().unwrap());
        assert!(!dodecahedron().has_separating_triangle().unwrap());
    }

    #[test]
    fn k5_minus_edge_has_a_separating_triangle() {
        // vertices 0,1,2 form the triangle; 3 inside, 4 outside
        let faces = vec![
            vec![0, 1, 3],
            vec![1, 2, 3],
            vec![2, 0, 3],
            vec![1, 0, 4],
            vec![2, 1, 4],
            vec![0, 2, 4],
        ];
        let g = PlaneGraph::from_faces(5, &faces, 0).unwrap();
        assert_eq!(g.edge_count(), 9);
        assert!(g.has_separating_triangle().unwrap());
    }

    #[test]
    fn biconnectivity() {
        assert!(dodecahedron().is_biconnected());
        let single = PlaneGraph::new(
            2,
            vec![[0, 1]],
            vec![vec![Dart(0)], vec![Dart(1)]],
            Dart(0),
        )
        .unwrap();
        assert!(!single.is_biconnected());
        // two pentagons glued at vertex 0
        let faces = vec![
            vec![0, 1, 2, 3, 4],
            vec![0, 5, 6, 7, 8],
            vec![0, 4, 3, 2, 1, 0, 8, 7, 6, 5],
        ];
        let glued = PlaneGraph::from_faces(9, &faces, 2).unwrap();
        assert!(!glued.is_biconnected());
        // same graph from a hand-written rotation
        let ends = vec![
            [0, 1],
            [1, 2],
            [2, 3],
            [3, 4],
            [4, 0],
            [0, 5],
            [5, 6],
            [6, 7],
            [7, 8],
            [8, 0],
        ];
        let mut rotation = vec![Vec::new(); 9];
        for (e, &[u, v]) in ends.iter().enumerate() {
            rotation[u].push(Dart::new(e, 0));
            rotation[v].push(Dart::new(e, 1));
        }
        let g = PlaneGraph::new(9, ends, rotation, Dart(0)).unwrap();
        assert!(!g.is_biconnected());
        assert_eq!(articulation_points(9, g.edges()), vec![0]);
        assert_eq!(brute_force_biconnected(&g), g.is_biconnected());
        let faces = g.faces().unwrap();
        assert!(faces.iter().any(|f| !f.is_simple_cycle()));
    }

    #[test]
    fn biconnectivity_agrees_with_brute_force() {
        for g in [dodecahedron(), k4(), octahedron(), cycle(5), cycle(7)] {
            assert_eq!(g.is_biconnected(), brute_force_biconnected(&g));
        }
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let ends = vec![[0, 1], [2, 3]];
        let rotation = vec![vec![Dart(0)], vec![Dart(1)], vec![Dart(2)], vec![Dart(3)]];
        let g = PlaneGraph::new(4, ends, rotation, Dart(0)).unwrap();
        assert_eq!(g.faces().unwrap_err(), EmbedError::Disconnected);
    }

    #[test]
    fn triangulating_the_dodecahedron() {
        let t = dodecahedron().triangulate_pentangulation().unwrap();
        assert_eq!(t.graph.edge_count(), 54);
        assert_eq!(t.graph.face_profile(), FaceProfile::Triangulation);
        assert_eq!(t.graph.euler_characteristic().unwrap(), 2);
        assert!(t.graph.is_simple());
        assert_eq!(t.added.len(), 24);
    }

    #[test]
    fn triangulating_a_single_pentagon() {
        let g = cycle(5);
        let inner = g.faces().unwrap().internal().next().unwrap().id;
        let t = g.triangulate_pentangulation().unwrap();
        assert_eq!(t.graph.edge_count(), 9);
        let faces = t.graph.faces().unwrap();
        assert_eq!(faces.len(), 6);
        assert!(faces.iter().all(|f| f.len() == 3));
        assert_eq!(t.added.iter().filter(|(f, _)| *f == inner).count(), 2);
    }

    #[test]
    fn triangulating_rejects_non_pentangulations() {
        assert!(matches!(
            cycle(6).triangulate_pentangulation(),
            Err(EmbedError::FaceLength { .. })
        ));
    }

    #[test]
    fn retracing_is_stable() {
        let g = dodecahedron();
        let a = g.faces().unwrap();
        let b = g.faces().unwrap();
        assert_eq!(a.faces, b.faces);
        assert_eq!(a.outer, b.outer);
    }
}
