//! Independent checkers and brute-force oracles.
//!
//! Everything here reads the raw edge and crossing lists of a
//! [`TopoGraph`] (plus the skeleton embedding when a check is about faces)
//! and never calls into the partition or orientation code.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Exec;
use crate::topo::TopoGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown edge id {0}")]
    UnknownEdge(usize),
    #[error("graph has {n} vertices, above the enumeration cap {cap}")]
    OverCap { n: usize, cap: usize },
    #[error("{edges} candidate edges exceed the enumeration budget {budget}")]
    Budget { edges: usize, budget: usize },
    #[error("graph carries no skeleton")]
    NoSkeleton,
}

/// A property claimed for one edge class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "bound", rename_all = "kebab-case")]
pub enum Claim {
    /// Every edge crossed at most this many times by edges of the class.
    KPlane(usize),
    /// Acyclic, hence also simple.
    Forest,
    /// Maximum vertex degree within the class.
    MaxDegree(usize),
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::KPlane(0) => write!(f, "plane"),
            Claim::KPlane(k) => write!(f, "{k}-plane"),
            Claim::Forest => write!(f, "forest"),
            Claim::MaxDegree(d) => write!(f, "max-degree<={d}"),
        }
    }
}

/// Outcome of checking one claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub claim: Claim,
    pub pass: bool,
    /// Measured quantity: max crossings, cycle length found, or max degree.
    pub value: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

fn class_mask(g: &TopoGraph, class: &[usize]) -> Result<Vec<bool>, VerifyError> {
    let mut mask = vec![false; g.edge_count()];
    for &e in class {
        *mask.get_mut(e).ok_or(VerifyError::UnknownEdge(e))? = true;
    }
    Ok(mask)
}

/// Crossings on every edge of the whole graph, counted from the crossing list.
pub fn crossing_counts(g: &TopoGraph) -> Vec<usize> {
    let mut count = vec![0; g.edge_count()];
    for x in g.crossings() {
        count[x.edges[0]] += 1;
        count[x.edges[1]] += 1;
    }
    count
}

pub fn is_k_plane(g: &TopoGraph, k: usize) -> bool {
    crossing_counts(g).into_iter().all(|c| c <= k)
}

/// Largest number of crossings on one class edge by other class edges, and
/// an edge attaining it.
fn class_max_crossings(g: &TopoGraph, mask: &[bool]) -> (usize, Option<usize>) {
    let mut count = vec![0; g.edge_count()];
    for x in g.crossings() {
        let [a, b] = x.edges;
        if mask[a] && mask[b] {
            count[a] += 1;
            count[b] += 1;
        }
    }
    count
        .iter()
        .enumerate()
        .max_by_key(|&(e, &c)| (c, std::cmp::Reverse(e)))
        .map_or((0, None), |(e, &c)| (c, (c > 0).then_some(e)))
}

pub fn is_k_plane_class(g: &TopoGraph, class: &[usize], k: usize) -> Result<bool, VerifyError> {
    Ok(class_max_crossings(g, &class_mask(g, class)?).0 <= k)
}

pub fn is_plane_class(g: &TopoGraph, class: &[usize]) -> Result<bool, VerifyError> {
    is_k_plane_class(g, class, 0)
}

/// Edge closing the first cycle, if any.
fn first_cycle_edge(g: &TopoGraph, class: &[usize]) -> Option<usize> {
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &e in class {
        let [u, v] = g.ends(e);
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return Some(e);
        }
        parent[a] = b;
    }
    None
}

pub fn is_forest(g: &TopoGraph, class: &[usize]) -> Result<bool, VerifyError> {
    class_mask(g, class)?;
    let mut seen = HashSet::new();
    let unique: Vec<usize> = class.iter().copied().filter(|&e| seen.insert(e)).collect();
    Ok(first_cycle_edge(g, &unique).is_none())
}

pub fn max_degree(g: &TopoGraph, class: &[usize]) -> Result<usize, VerifyError> {
    let mask = class_mask(g, class)?;
    let mut deg = vec![0; g.vertex_count()];
    for (e, _) in mask.iter().enumerate().filter(|(_, &m)| m) {
        let [u, v] = g.ends(e);
        deg[u] += 1;
        deg[v] += 1;
    }
    Ok(deg.into_iter().max().unwrap_or(0))
}

pub fn verify_claim(g: &TopoGraph, class: &[usize], claim: Claim) -> Result<Verdict, VerifyError> {
    let mask = class_mask(g, class)?;
    Ok(match claim {
        Claim::KPlane(k) => {
            let (value, worst) = class_max_crossings(g, &mask);
            Verdict {
                claim,
                pass: value <= k,
                value,
                witness: worst.filter(|_| value > k).map(|e| format!("edge {e} has {value} crossings")),
            }
        }
        Claim::Forest => {
            let members: Vec<usize> = (0..g.edge_count()).filter(|&e| mask[e]).collect();
            let cycle = first_cycle_edge(g, &members);
            Verdict {
                claim,
                pass: cycle.is_none(),
                value: usize::from(cycle.is_some()),
                witness: cycle.map(|e| format!("edge {e} closes a cycle")),
            }
        }
        Claim::MaxDegree(d) => {
            let value = max_degree(g, class)?;
            Verdict {
                claim,
                pass: value <= d,
                value,
                witness: (value > d).then(|| format!("a vertex has degree {value}")),
            }
        }
    })
}

/// Named pass/fail line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    fn push(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(name, pass, detail));
    }
}

/// Classes are pairwise disjoint and cover `0..m`.
pub fn check_cover(m: usize, classes: &[&[usize]]) -> Check {
    let mut owner = vec![usize::MAX; m];
    for (i, class) in classes.iter().enumerate() {
        for &e in *class {
            if e >= m {
                return Check::new("cover", false, format!("unknown edge {e}"));
            }
            if owner[e] != usize::MAX {
                return Check::new("cover", false, format!("edge {e} is in classes {} and {i}", owner[e]));
            }
            owner[e] = i;
        }
    }
    match owner.iter().position(|&o| o == usize::MAX) {
        Some(e) => Check::new("cover", false, format!("edge {e} is in no class")),
        None => Check::new("cover", true, format!("{m} edges in {} classes", classes.len())),
    }
}

fn pair(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Strictly separated along a cycle of length `len`: `c` and `d` fall on
/// different sides of the pair `a, b`.
fn separates(a: usize, b: usize, c: usize, d: usize, len: usize) -> bool {
    if [c, d].iter().any(|x| *x == a || *x == b) {
        return false;
    }
    let side = |x: usize| (x + len - a) % len < (b + len - a) % len;
    side(c) ^ side(d)
}

/// Counts and skeleton checks shared by both optimal-graph checkers.
struct SkeletonView {
    faces: Vec<Vec<usize>>,
    crossings: Vec<Vec<usize>>,
}

fn skeleton_view(g: &TopoGraph, report: &mut Report, len: usize) -> Option<SkeletonView> {
    let Some(filling) = g.filling() else {
        report.push("skeleton", false, "no crossing-free skeleton attached");
        return None;
    };
    let mut crossings = vec![Vec::new(); g.edge_count()];
    for x in g.crossings() {
        let [a, b] = x.edges;
        crossings[a].push(b);
        crossings[b].push(a);
    }
    let uncrossed: HashSet<usize> = (0..g.edge_count()).filter(|&e| crossings[e].is_empty()).collect();
    let skeleton: HashSet<usize> = filling.skeleton_edges.iter().copied().collect();
    let same = uncrossed == skeleton
        && filling.skeleton_edges.iter().enumerate().all(|(se, &te)| {
            let [a, b] = filling.skeleton.ends(se);
            let [u, v] = g.ends(te);
            pair(a, b) == pair(u, v)
        });
    report.push(
        "skeleton",
        same,
        format!("{} crossing-free edges, {} skeleton edges", uncrossed.len(), skeleton.len()),
    );
    let faces = match filling.skeleton.faces() {
        Ok(f) => f,
        Err(e) => {
            report.push("face profile", false, e.to_string());
            return None;
        }
    };
    let walks: Vec<Vec<usize>> = faces.iter().map(|f| f.vertices.clone()).collect();
    let bad = walks
        .iter()
        .position(|w| w.len() != len || w.iter().collect::<HashSet<_>>().len() != len);
    report.push(
        "face profile",
        bad.is_none(),
        match bad {
            None => format!("{} faces of length {len}", walks.len()),
            Some(f) => format!("face {f} is not a simple {len}-cycle"),
        },
    );
    Some(SkeletonView {
        faces: walks,
        crossings,
    })
}

/// Checks the defining structure of an optimal 2-plane graph: `5n - 10`
/// edges, a pentangulation skeleton, a pentagram in every face, and no
/// parallel edges.
pub fn check_optimal2(g: &TopoGraph) -> Report {
    let mut report = Report::default();
    let (n, m) = (g.vertex_count(), g.edge_count());
    report.push("edge count", n >= 5 && m == 5 * n - 10, format!("n = {n}, m = {m}"));
    let mut seen = HashMap::new();
    let dup = g
        .edges()
        .iter()
        .enumerate()
        .find_map(|(e, &[u, v])| seen.insert(pair(u, v), e).map(|f| (f, e)));
    report.push(
        "simple",
        dup.is_none(),
        dup.map_or("no parallel edges".into(), |(a, b)| format!("edges {a} and {b} are parallel")),
    );
    let Some(view) = skeleton_view(g, &mut report, 5) else {
        return report;
    };
    let f = view.faces.len();
    report.push(
        "face count",
        n >= 2 && 3 * f == 2 * (n - 2),
        format!("{f} faces for {n} vertices"),
    );
    // chords are recovered from endpoint pairs alone
    let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for e in 0..m {
        if !view.crossings[e].is_empty() {
            let [u, v] = g.ends(e);
            by_pair.entry(pair(u, v)).or_default().push(e);
        }
    }
    let mut used = vec![false; m];
    let mut problems = Vec::new();
    for (fi, walk) in view.faces.iter().enumerate().filter(|(_, w)| w.len() == 5) {
        let mut local: Vec<(usize, usize, usize)> = Vec::new();
        for i in 0..5 {
            let key = pair(walk[i], walk[(i + 2) % 5]);
            match by_pair.get(&key).map(Vec::as_slice) {
                Some([e]) if !used[*e] => {
                    used[*e] = true;
                    local.push((*e, i, (i + 2) % 5));
                }
                _ => problems.push(format!("face {fi}: no unique chord for {key:?}")),
            }
        }
        for &(e, a, b) in &local {
            let mut want: Vec<usize> = local
                .iter()
                .filter(|&&(_, c, d)| separates(a, b, c, d, 5))
                .map(|&(x, _, _)| x)
                .collect();
            let mut got = view.crossings[e].clone();
            want.sort_unstable();
            got.sort_unstable();
            if got.len() != 2 || got != want {
                problems.push(format!("chord {e} crosses {got:?}, expected {want:?}"));
            }
        }
    }
    if let Some(e) = (0..m).find(|&e| !view.crossings[e].is_empty() && !used[e]) {
        problems.push(format!("crossing edge {e} is not a chord of any face"));
    }
    report.push(
        "pentagrams",
        problems.is_empty(),
        problems.first().cloned().unwrap_or_else(|| format!("{f} filled pentagons")),
    );
    report
}

/// Checks the defining structure of an optimal 3-plane graph: `5.5n - 11`
/// edges, a hexangulation skeleton, eight chords per face around an
/// antipodal pole pair, and no homotopic parallel edges.
pub fn check_optimal3(g: &TopoGraph) -> Report {
    let mut report = Report::default();
    let (n, m) = (g.vertex_count(), g.edge_count());
    report.push("edge count", n >= 6 && 2 * m == 11 * n - 22, format!("n = {n}, m = {m}"));
    let Some(view) = skeleton_view(g, &mut report, 6) else {
        return report;
    };
    let filling = g.filling().unwrap();
    let mut owner = vec![usize::MAX; m];
    let mut problems = Vec::new();
    let mut filled = vec![0usize; view.faces.len()];
    for ff in &filling.faces {
        let Some(walk) = view.faces.get(ff.face) else {
            problems.push(format!("filled face {} does not exist", ff.face));
            continue;
        };
        filled[ff.face] += 1;
        if walk.len() != 6 {
            continue;
        }
        let Some([p, q]) = ff.poles else {
            problems.push(format!("face {} has no poles", ff.face));
            continue;
        };
        if (p + 3) % 6 != q {
            problems.push(format!("face {} poles are not antipodal", ff.face));
        }
        let mut expected: HashSet<(usize, usize)> = HashSet::new();
        for a in 0..6 {
            for b in a + 1..6 {
                let d = (b - a).min(6 + a - b);
                if d >= 2 && pair(a, b) != pair(p, q) {
                    expected.insert((a, b));
                }
            }
        }
        let mut got = HashSet::new();
        let mut local: HashMap<usize, (usize, usize)> = HashMap::new();
        for c in &ff.chords {
            let [a, b] = c.ends;
            let [u, v] = g.ends(c.edge);
            if pair(walk[a], walk[b]) != pair(u, v) {
                problems.push(format!("chord {} endpoints disagree with face {}", c.edge, ff.face));
            }
            if owner[c.edge] != usize::MAX {
                problems.push(format!("chord {} is listed twice", c.edge));
            }
            owner[c.edge] = ff.face;
            got.insert(pair(a, b));
            local.insert(c.edge, (a, b));
        }
        if got != expected || ff.chords.len() != 8 {
            problems.push(format!("face {} does not carry the eight chords", ff.face));
            continue;
        }
        let mut total = 0;
        for (&e, &(a, b)) in &local {
            let mut want: Vec<usize> = local
                .iter()
                .filter(|(_, &(c, d))| separates(a, b, c, d, 6))
                .map(|(&x, _)| x)
                .collect();
            let mut have = view.crossings[e].clone();
            want.sort_unstable();
            have.sort_unstable();
            if have != want || have.len() > 3 {
                problems.push(format!("chord {e} crosses {have:?}, expected {want:?}"));
            }
            total += have.len();
        }
        if total != 22 {
            problems.push(format!("face {} has {} crossings, expected 11", ff.face, total / 2));
        }
    }
    if let Some(f) = filled.iter().position(|&c| c != 1) {
        problems.push(format!("face {f} is filled {} times", filled[f]));
    }
    if let Some(e) = (0..m).find(|&e| !view.crossings[e].is_empty() && owner[e] == usize::MAX) {
        problems.push(format!("crossing edge {e} lies in no filled face"));
    }
    report.push(
        "filled hexagons",
        problems.is_empty(),
        problems.first().cloned().unwrap_or_else(|| format!("{} filled hexagons", view.faces.len())),
    );
    // a chord splits its face into two arcs that both carry vertices, so the
    // closed curve it forms with any parallel edge outside that face has
    // vertices on both sides; two skeleton edges would need a 2-face
    let mut homotopic = None;
    let mut groups: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (e, &[u, v]) in g.edges().iter().enumerate() {
        groups.entry(pair(u, v)).or_default().push(e);
    }
    let mut pairs_checked = 0;
    for es in groups.values().filter(|es| es.len() > 1) {
        for (i, &a) in es.iter().enumerate() {
            for &b in &es[i + 1..] {
                pairs_checked += 1;
                let ok = match (owner[a], owner[b]) {
                    (usize::MAX, usize::MAX) => view.faces.iter().all(|w| w.len() > 2),
                    (fa, fb) if fa == fb => false,
                    (fa, fb) => [(a, fa), (b, fb)].iter().filter(|(_, f)| *f != usize::MAX).all(|&(e, f)| {
                        let walk = &view.faces[f];
                        let [u, v] = g.ends(e);
                        let (Some(x), Some(y)) = (
                            walk.iter().position(|&w| w == u),
                            walk.iter().position(|&w| w == v),
                        ) else {
                            return false;
                        };
                        let d = (x + 6 - y) % 6;
                        (2..=4).contains(&d)
                    }),
                };
                if !ok && homotopic.is_none() {
                    homotopic = Some((a, b));
                }
            }
        }
    }
    report.push(
        "non-homotopic parallels",
        homotopic.is_none(),
        match homotopic {
            None => format!("{pairs_checked} parallel pairs, none homotopic"),
            Some((a, b)) => format!("edges {a} and {b} bound an empty region"),
        },
    );
    report
}

/// Connected components of the crossing graph that contain a crossing.
fn crossing_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let m = adj.len();
    let mut comp = vec![usize::MAX; m];
    let mut out = Vec::new();
    for e in 0..m {
        if adj[e].is_empty() || comp[e] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![e];
        comp[e] = id;
        let mut i = 0;
        while i < members.len() {
            for &f in &adj[members[i]] {
                if comp[f] == usize::MAX {
                    comp[f] = id;
                    members.push(f);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Minimum edges whose removal from `edges` (indices into a local crossing
/// relation) leaves every remaining edge with at most `k` crossings.
fn min_removal(edges: &[usize], crossing: &[(usize, usize)], k: usize) -> (usize, u64) {
    let c = edges.len();
    let mut best = (usize::MAX, 0u64);
    for mask in 0u64..1 << c {
        let size = mask.count_ones() as usize;
        if size >= best.0 {
            continue;
        }
        let mut count = vec![0; c];
        for &(a, b) in crossing {
            if mask >> a & 1 == 0 && mask >> b & 1 == 0 {
                count[a] += 1;
                count[b] += 1;
            }
        }
        if count.iter().all(|&x| x <= k) {
            best = (size, mask);
        }
    }
    best
}

/// Crossing partners of every edge.
fn partners(g: &TopoGraph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.edge_count()];
    for x in g.crossings() {
        adj[x.edges[0]].push(x.edges[1]);
        adj[x.edges[1]].push(x.edges[0]);
    }
    adj
}

/// Crossings among `members`, as pairs of positions in `members`.
fn local_crossings(adj: &[Vec<usize>], members: &[usize]) -> Vec<(usize, usize)> {
    let index: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut out = Vec::new();
    for (i, &e) in members.iter().enumerate() {
        for f in &adj[e] {
            match index.get(f) {
                Some(&j) if i < j => out.push((i, j)),
                _ => {}
            }
        }
    }
    out
}

/// Largest crossing-graph component [`min_removal_for_1plane`] will enumerate.
pub const COMPONENT_BUDGET: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinRemoval {
    pub size: usize,
    /// One optimal removal set.
    pub witness: Vec<usize>,
    /// Per crossing-graph component: its edges and its own minimum.
    pub components: Vec<(Vec<usize>, usize)>,
}

/// Exact minimum number of edges whose removal leaves a 1-plane graph,
/// by enumeration inside every crossing-graph component.
pub fn min_removal_for_1plane(g: &TopoGraph, exec: Exec) -> Result<MinRemoval, VerifyError> {
    let adj = partners(g);
    let comps = crossing_components(&adj);
    if let Some(c) = comps.iter().find(|c| c.len() > COMPONENT_BUDGET) {
        return Err(VerifyError::Budget {
            edges: c.len(),
            budget: COMPONENT_BUDGET,
        });
    }
    let results = exec.map(&comps, |members| {
        let (size, mask) = min_removal(members, &local_crossings(&adj, members), 1);
        let chosen: Vec<usize> = (0..members.len()).filter(|&i| mask >> i & 1 == 1).map(|i| members[i]).collect();
        (size, chosen)
    });
    let mut witness: Vec<usize> = results.iter().flat_map(|(_, w)| w.iter().copied()).collect();
    witness.sort_unstable();
    Ok(MinRemoval {
        size: results.iter().map(|r| r.0).sum(),
        witness,
        components: comps.into_iter().zip(results).map(|(c, (s, _))| (c, s)).collect(),
    })
}

/// Which of the host-edge endpoints every 1-plane-leaving removal set (and
/// every crossing-free remainder) must touch, for a glued family instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HostForcing {
    pub host_vertices: usize,
    pub host_edges: usize,
    /// Pentagons that contain a host edge.
    pub host_pentagons: usize,
    /// Those where every removal set leaving the face 1-plane has a chord at
    /// a host-edge endpoint.
    pub removal_forced: usize,
    /// Those where every crossing-free chord set leaves at least two chords
    /// at host-edge endpoints behind.
    pub remainder_forced: usize,
    /// Faces holding more than one host edge.
    pub shared_pentagons: usize,
}

impl HostForcing {
    /// Lower bound on the largest host-vertex degree of any removal class.
    pub fn removal_degree_bound(&self) -> usize {
        self.removal_forced.div_ceil(self.host_vertices.max(1))
    }

    /// Lower bound on the largest host-vertex degree of any 1-plane remainder
    /// whose removed class is crossing-free.
    pub fn remainder_degree_bound(&self) -> usize {
        (2 * self.remainder_forced).div_ceil(self.host_vertices.max(1))
    }
}

/// Counting premise of the glued lower-bound family: every pentagon on a host
/// edge forces chord ends onto the host, checked by enumerating all chord
/// subsets of that pentagon. `host` lists the host vertex ids.
pub fn host_forcing(g: &TopoGraph, host: &[usize]) -> Result<HostForcing, VerifyError> {
    let filling = g.filling().ok_or(VerifyError::NoSkeleton)?;
    let faces = filling.skeleton.faces().map_err(|_| VerifyError::NoSkeleton)?;
    let mut is_host = vec![false; g.vertex_count()];
    for &v in host {
        is_host[v] = true;
    }
    let mut by_pair: HashMap<(usize, usize), usize> = HashMap::new();
    for (e, &[u, v]) in g.edges().iter().enumerate() {
        by_pair.insert(pair(u, v), e);
    }
    let host_edges = filling
        .skeleton
        .edges()
        .iter()
        .filter(|&&[u, v]| is_host[u] && is_host[v])
        .count();
    let adj = partners(g);
    let mut out = HostForcing {
        host_vertices: host.len(),
        host_edges,
        host_pentagons: 0,
        removal_forced: 0,
        remainder_forced: 0,
        shared_pentagons: 0,
    };
    for f in faces.iter().filter(|f| f.len() == 5) {
        let w = &f.vertices;
        let sides: Vec<usize> = (0..5).filter(|&i| is_host[w[i]] && is_host[w[(i + 1) % 5]]).collect();
        let Some(&i) = sides.first() else { continue };
        out.host_pentagons += 1;
        if sides.len() > 1 {
            out.shared_pentagons += 1;
        }
        let (x, y) = (w[i], w[(i + 1) % 5]);
        let chords: Option<Vec<usize>> = (0..5).map(|j| by_pair.get(&pair(w[j], w[(j + 2) % 5])).copied()).collect();
        let Some(chords) = chords else { continue };
        let crossing = local_crossings(&adj, &chords);
        let touches = |j: usize| {
            let [u, v] = g.ends(chords[j]);
            u == x || u == y || v == x || v == y
        };
        let mut removal_ok = true;
        let mut remainder_ok = true;
        for mask in 0u32..32 {
            let kept = |a: usize| mask >> a & 1 == 0;
            let mut count = [0; 5];
            let mut removed_cross = false;
            for &(a, b) in &crossing {
                if kept(a) && kept(b) {
                    count[a] += 1;
                    count[b] += 1;
                }
                if !kept(a) && !kept(b) {
                    removed_cross = true;
                }
            }
            if count.iter().all(|&c| c <= 1) && !(0..5).any(|j| !kept(j) && touches(j)) {
                removal_ok = false;
            }
            if !removed_cross && (0..5).filter(|&j| kept(j) && touches(j)).count() < 2 {
                remainder_ok = false;
            }
        }
        out.removal_forced += usize::from(removal_ok);
        out.remainder_forced += usize::from(remainder_ok);
    }
    Ok(out)
}

/// Default vertex cap for [`brute_arboricity`].
pub const ARBORICITY_CAP: usize = 20;

/// Arboricity as the maximum of `ceil(m_S / (n_S - 1))` over all vertex
/// subsets with at least two vertices.
pub fn brute_arboricity(n: usize, edges: &[[usize; 2]], cap: usize, exec: Exec) -> Result<usize, VerifyError> {
    if n > cap || n > 30 {
        return Err(VerifyError::OverCap { n, cap: cap.min(30) });
    }
    let masks: Vec<u32> = edges.iter().map(|&[u, v]| 1 << u | 1 << v).collect();
    let best = exec.max_range(1, 1u64 << n, |s| {
        let s = s as u32;
        let ns = s.count_ones() as u64;
        if ns < 2 {
            return None;
        }
        let ms = masks.iter().filter(|&&m| s & m == m).count() as u64;
        Some(ms.div_ceil(ns - 1))
    });
    Ok(best.unwrap_or(0) as usize)
}

/// Dinic max-flow on a small dense-ish network.
struct Flow {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
}

impl Flow {
    fn new(nodes: usize) -> Self {
        Flow {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add(&mut self, a: usize, b: usize, c: i64) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let n = self.head.len();
        let mut total = 0;
        loop {
            let mut level = vec![usize::MAX; n];
            level[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &a in &self.head[x] {
                    if self.cap[a] > 0 && level[self.to[a]] == usize::MAX {
                        level[self.to[a]] = level[x] + 1;
                        queue.push_back(self.to[a]);
                    }
                }
            }
            if level[t] == usize::MAX {
                return total;
            }
            let mut it = vec![0; n];
            loop {
                let pushed = self.augment(s, t, i64::MAX, &level, &mut it);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn augment(&mut self, x: usize, t: usize, limit: i64, level: &[usize], it: &mut [usize]) -> i64 {
        if x == t {
            return limit;
        }
        while it[x] < self.head[x].len() {
            let a = self.head[x][it[x]];
            let y = self.to[a];
            if self.cap[a] > 0 && level[y] == level[x] + 1 {
                let got = self.augment(y, t, limit.min(self.cap[a]), level, it);
                if got > 0 {
                    self.cap[a] -= got;
                    self.cap[a ^ 1] += got;
                    return got;
                }
            }
            it[x] += 1;
        }
        0
    }
}

/// `max over S of (m_S - k |S|)`, optionally forcing vertex `v` into S.
fn densest_excess(n: usize, edges: &[[usize; 2]], k: usize, forced: Option<usize>) -> i64 {
    let m = edges.len();
    let (src, sink) = (m + n, m + n + 1);
    let mut f = Flow::new(m + n + 2);
    let inf = (m + 1) as i64;
    for (e, &[u, v]) in edges.iter().enumerate() {
        f.add(src, e, 1);
        f.add(e, m + u, inf);
        f.add(e, m + v, inf);
    }
    for x in 0..n {
        f.add(m + x, sink, k as i64);
    }
    if let Some(v) = forced {
        f.add(src, m + v, inf * (n as i64 + 1));
    }
    m as i64 - f.max_flow(src, sink)
}

/// Pseudoarboricity `max ceil(m_S / n_S)` through one minimum cut per
/// candidate value: the least `k` with `m_S <= k n_S` for every S.
pub fn pseudoarboricity_flow(n: usize, edges: &[[usize; 2]]) -> usize {
    let mut p = 0;
    while densest_excess(n, edges, p, None) > 0 {
        p += 1;
    }
    p
}

/// Arboricity through minimum cuts: first the pseudoarboricity
/// `p = max ceil(m_S / n_S)`, then for `k = p, p + 1, ...` one cut per vertex
/// decides whether some subgraph through it has `m_S > k (n_S - 1)`.
pub fn arboricity_flow(n: usize, edges: &[[usize; 2]], exec: Exec) -> usize {
    if edges.is_empty() {
        return 0;
    }
    let p = pseudoarboricity_flow(n, edges).max(1);
    let vertices: Vec<usize> = (0..n).collect();
    let mut k = p;
    while exec
        .map(&vertices, |&v| densest_excess(n, edges, k, Some(v)) > -(k as i64))
        .into_iter()
        .any(|x| x)
    {
        k += 1;
    }
    k
}

/// Objective for [`exhaustive_partition_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    /// Minimise |E2|.
    Size,
    /// Minimise the maximum degree of E2.
    MaxDegree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exhaustive {
    /// Optimum, or `None` when no split is feasible.
    pub best: Option<usize>,
    pub witness: Vec<usize>,
}

/// Default edge budget for [`exhaustive_partition_check`].
pub const EXHAUSTIVE_BUDGET: usize = 24;

/// Optimises over every split `<E1, E2>` where E1 is `k`-plane (and E2 is
/// crossing-free when `plane_e2`), enumerating subsets of crossed edges;
/// uncrossed edges always stay in E1.
pub fn exhaustive_partition_check(
    g: &TopoGraph,
    k: usize,
    plane_e2: bool,
    objective: Objective,
    budget: usize,
    exec: Exec,
) -> Result<Exhaustive, VerifyError> {
    let crossed: Vec<usize> = crossing_counts(g)
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(e, _)| e)
        .collect();
    let c = crossed.len();
    if c > budget.min(30) {
        return Err(VerifyError::Budget {
            edges: c,
            budget: budget.min(30),
        });
    }
    let crossing = local_crossings(&partners(g), &crossed);
    let ends: Vec<[usize; 2]> = crossed.iter().map(|&e| g.ends(e)).collect();
    let n = g.vertex_count();
    let score = |mask: u64| -> Option<usize> {
        let mut count = vec![0; c];
        for &(a, b) in &crossing {
            let (ra, rb) = (mask >> a & 1 == 1, mask >> b & 1 == 1);
            if ra && rb && plane_e2 {
                return None;
            }
            if !ra && !rb {
                count[a] += 1;
                count[b] += 1;
            }
        }
        if count.iter().any(|&x| x > k) {
            return None;
        }
        Some(match objective {
            Objective::Size => mask.count_ones() as usize,
            Objective::MaxDegree => {
                let mut deg = vec![0; n];
                for (i, &[u, v]) in ends.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        deg[u] += 1;
                        deg[v] += 1;
                    }
                }
                deg.into_iter().max().unwrap_or(0)
            }
        })
    };
    let packed = exec.min_range(0, 1u64 << c, |mask| score(mask).map(|s| (s as u64) << 32 | mask));
    let Some(packed) = packed else {
        return Ok(Exhaustive {
            best: None,
            witness: Vec::new(),
        });
    };
    let mask = packed & 0xffff_ffff;
    Ok(Exhaustive {
        best: Some((packed >> 32) as usize),
        witness: (0..c).filter(|&i| mask >> i & 1 == 1).map(|i| crossed[i]).collect(),
    })
}

/// Removal patterns of a filled hexagon, named by how they are built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum HexPattern {
    /// Both chords at a pole.
    Alpha(usize),
    /// A three-chord path between the poles.
    Beta(Vec<usize>),
    /// The three chords at a non-pole vertex.
    Gamma(usize),
}

/// The pattern list of a filled hexagon with `walk`, `poles` (walk positions)
/// and chords given as `(edge, [a, b])` walk positions, derived from the
/// chord graph alone: chords at each pole, chord paths of length three
/// between the poles, chords at each other vertex.
pub fn hexagon_patterns(poles: [usize; 2], chords: &[(usize, [usize; 2])]) -> Vec<(HexPattern, Vec<usize>)> {
    let at = |x: usize| -> Vec<usize> {
        let mut v: Vec<usize> = chords.iter().filter(|(_, e)| e.contains(&x)).map(|&(id, _)| id).collect();
        v.sort_unstable();
        v
    };
    let mut out = Vec::new();
    for &p in &poles {
        out.push((HexPattern::Alpha(p), at(p)));
    }
    let [p, q] = poles;
    let other = |e: &[usize; 2], x: usize| if e[0] == x { e[1] } else { e[0] };
    for &(c1, e1) in chords.iter().filter(|(_, e)| e.contains(&p)) {
        let x = other(&e1, p);
        for &(c2, e2) in chords.iter().filter(|(id, e)| *id != c1 && e.contains(&x)) {
            let y = other(&e2, x);
            if y == p || y == q {
                continue;
            }
            for &(c3, e3) in chords.iter().filter(|(id, e)| *id != c2 && e.contains(&y)) {
                if other(&e3, y) == q {
                    let mut path = vec![c1, c2, c3];
                    let ids = path.clone();
                    path.sort_unstable();
                    out.push((HexPattern::Beta(ids), path));
                }
            }
        }
    }
    for v in 0..6 {
        if v != p && v != q {
            out.push((HexPattern::Gamma(v), at(v)));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternAudit {
    /// Every inclusion-minimal chord set whose removal leaves each chord with
    /// at most two crossings.
    pub minimal_sets: Vec<Vec<usize>>,
    /// Each pattern, whether its removal works, and whether it is minimal.
    pub patterns: Vec<(HexPattern, bool, bool)>,
    /// Largest crossing count left by any pattern removal.
    pub worst_remaining: usize,
}

impl PatternAudit {
    pub fn passed(&self) -> bool {
        self.patterns.iter().all(|(_, works, _)| *works) && self.worst_remaining <= 2
    }
}

/// Enumerates every chord subset of the single filled hexagon face of `g`.
pub fn hexagon_pattern_audit(g: &TopoGraph) -> Result<PatternAudit, VerifyError> {
    let filling = g.filling().ok_or(VerifyError::NoSkeleton)?;
    let face = filling.faces.iter().find(|f| f.len() == 6).ok_or(VerifyError::NoSkeleton)?;
    let poles = face.poles.ok_or(VerifyError::NoSkeleton)?;
    let chords: Vec<(usize, [usize; 2])> = face.chords.iter().map(|c| (c.edge, c.ends)).collect();
    let ids: Vec<usize> = chords.iter().map(|c| c.0).collect();
    let crossing = local_crossings(&partners(g), &ids);
    let remaining_max = |mask: u32| -> usize {
        let mut count = vec![0; ids.len()];
        for &(a, b) in &crossing {
            if mask >> a & 1 == 0 && mask >> b & 1 == 0 {
                count[a] += 1;
                count[b] += 1;
            }
        }
        count.into_iter().max().unwrap_or(0)
    };
    let works: Vec<bool> = (0..1u32 << ids.len()).map(|m| remaining_max(m) <= 2).collect();
    let minimal = |m: u32| works[m as usize] && (0..ids.len()).all(|i| m >> i & 1 == 0 || !works[(m & !(1 << i)) as usize]);
    let to_set = |m: u32| -> Vec<usize> {
        let mut v: Vec<usize> = (0..ids.len()).filter(|&i| m >> i & 1 == 1).map(|i| ids[i]).collect();
        v.sort_unstable();
        v
    };
    let minimal_sets = (0..1u32 << ids.len()).filter(|&m| minimal(m)).map(to_set).collect();
    let mut worst_remaining = 0;
    let patterns = hexagon_patterns(poles, &chords)
        .into_iter()
        .map(|(name, set)| {
            let mask = set
                .iter()
                .map(|e| 1u32 << ids.iter().position(|x| x == e).unwrap())
                .fold(0, |a, b| a | b);
            worst_remaining = worst_remaining.max(remaining_max(mask));
            (name, works[mask as usize], minimal(mask))
        })
        .collect();
    Ok(PatternAudit {
        minimal_sets,
        patterns,
        worst_remaining,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::fixtures::k4;
    use crate::generate::{dodecahedron, hex_base, hex_family};
    use crate::topo::{filled_hexagon, filled_pentagon, realize_optimal_2plane, realize_optimal_3plane, PoleChoice};

    fn chords_of_pentagon(g: &TopoGraph) -> Vec<usize> {
        g.filling().unwrap().faces[0].chords.iter().map(|c| c.edge).collect()
    }

    #[test]
    fn pentagon_minus_chord_pairs() {
        let g = filled_pentagon();
        let c = chords_of_pentagon(&g);
        let all: Vec<usize> = (0..g.edge_count()).collect();
        let without = |drop: [usize; 2]| -> Vec<usize> { all.iter().copied().filter(|e| !drop.contains(e)).collect() };
        // c0 = (0,2) and c2 = (2,4) share a vertex
        assert!(is_k_plane_class(&g, &without([c[0], c[2]]), 1).unwrap());
        // c0 and c1 cross
        assert!(!is_k_plane_class(&g, &without([c[0], c[1]]), 1).unwrap());
        assert!(!is_plane_class(&g, &all).unwrap());
    }

    #[test]
    fn empty_class() {
        let g = filled_pentagon();
        assert!(is_plane_class(&g, &[]).unwrap());
        assert!(is_forest(&g, &[]).unwrap());
        assert_eq!(max_degree(&g, &[]).unwrap(), 0);
        assert_eq!(is_forest(&g, &[99]), Err(VerifyError::UnknownEdge(99)));
    }

    #[test]
    fn hexagon_minus_patterns_is_two_plane() {
        for pole in 0..3 {
            let audit = hexagon_pattern_audit(&filled_hexagon(pole)).unwrap();
            assert!(audit.passed(), "pole {pole}: {audit:?}");
            let betas = audit.patterns.iter().filter(|p| matches!(p.0, HexPattern::Beta(_))).count();
            assert_eq!(betas, 2);
            assert_eq!(audit.patterns.len(), 2 + 2 + 4);
        }
    }

    #[test]
    fn optimal2_dodecahedron() {
        let g = realize_optimal_2plane(&dodecahedron()).unwrap();
        let r = check_optimal2(&g);
        assert!(r.passed(), "{r:?}");
        let dropped = g.restrict(&(0..89).collect::<Vec<_>>()).unwrap().graph;
        assert!(!check_optimal2(&dropped).passed());
    }

    #[test]
    fn optimal3_instances() {
        let g = realize_optimal_3plane(&hex_base(), &PoleChoice::LowestId).unwrap();
        assert_eq!(g.edge_count(), 22);
        let r = check_optimal3(&g);
        assert!(r.passed(), "{r:?}");
        let g = realize_optimal_3plane(&hex_family(5).unwrap(), &PoleChoice::LowestId).unwrap();
        assert!(check_optimal3(&g).passed());
        assert!(!check_optimal2(&g).passed());
    }

    #[test]
    fn min_removal() {
        let g = realize_optimal_2plane(&dodecahedron()).unwrap();
        let r = min_removal_for_1plane(&g, Exec::Sequential).unwrap();
        assert_eq!(r.size, 24);
        assert_eq!(r.components.len(), 12);
        let keep: Vec<usize> = (0..g.edge_count()).filter(|e| !r.witness.contains(e)).collect();
        assert!(is_k_plane_class(&g, &keep, 1).unwrap());
        assert_eq!(min_removal_for_1plane(&filled_pentagon(), Exec::Sequential).unwrap().size, 2);
    }

    #[test]
    fn arboricity_routes_agree() {
        let tree = [[0, 1], [1, 2], [1, 3]];
        assert_eq!(brute_arboricity(4, &tree, 20, Exec::Sequential).unwrap(), 1);
        assert_eq!(arboricity_flow(4, &tree, Exec::Sequential), 1);
        let k = k4();
        assert_eq!(brute_arboricity(4, k.edges(), 20, Exec::Sequential).unwrap(), 2);
        assert_eq!(arboricity_flow(4, k.edges(), Exec::Sequential), 2);
        let d = dodecahedron();
        assert_eq!(arboricity_flow(20, d.edges(), Exec::Parallel), 2);
        assert!(matches!(brute_arboricity(21, &[], 20, Exec::Sequential), Err(VerifyError::OverCap { .. })));
    }

    #[test]
    fn exhaustive_small_cases() {
        let p = filled_pentagon();
        let r = exhaustive_partition_check(&p, 1, false, Objective::Size, 24, Exec::Sequential).unwrap();
        assert_eq!(r.best, Some(2));
        let h = filled_hexagon(0);
        let r = exhaustive_partition_check(&h, 2, false, Objective::Size, 24, Exec::Parallel).unwrap();
        assert!(matches!(r.best, Some(2 | 3)));
        let plane = TopoGraph::plane(3, vec![[0, 1], [1, 2]]).unwrap();
        let r = exhaustive_partition_check(&plane, 1, true, Objective::MaxDegree, 24, Exec::Sequential).unwrap();
        assert_eq!(r.best, Some(0));
    }

    #[test]
    fn cover_check() {
        assert!(check_cover(3, &[&[0, 2], &[1]]).pass);
        assert!(!check_cover(3, &[&[0, 2], &[1, 2]]).pass);
        assert!(!check_cover(3, &[&[0], &[1]]).pass);
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn arboricity_oracles_agree(
            n in 2usize..9,
            raw in prop::collection::vec((0usize..9, 0usize..9), 0..22),
        ) {
            let edges: Vec<[usize; 2]> = raw
                .into_iter()
                .map(|(a, b)| [a % n, b % n])
                .filter(|[a, b]| a != b)
                .collect();
            prop_assert_eq!(
                brute_arboricity(n, &edges, 20, Exec::Sequential).unwrap(),
                arboricity_flow(n, &edges, Exec::Sequential)
            );
        }
    }
}
