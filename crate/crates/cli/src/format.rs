//! JSON file formats for plane graphs, topological graphs and partitions.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use kplane::topo::{Chord, CrossingRecord, FilledFace, Filling};
use kplane::verify::Claim;
use kplane::{Dart, PlaneGraph, TopoGraph};

/// A plane graph: edge endpoints, clockwise rotations of `[edge, side]`
/// darts, and one dart with the outer face on its left.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub rotations: Vec<Vec<[usize; 2]>>,
    pub outer_face: [usize; 2],
}

impl PlaneFile {
    pub fn from_graph(g: &PlaneGraph) -> Self {
        let dart = |d: Dart| [d.edge(), d.side()];
        PlaneFile {
            n: g.vertex_count(),
            edges: g.edges().to_vec(),
            rotations: (0..g.vertex_count()).map(|v| g.rotation(v).iter().map(|&d| dart(d)).collect()).collect(),
            outer_face: dart(g.outer_dart()),
        }
    }

    pub fn to_graph(&self) -> Result<PlaneGraph> {
        let check = |[e, s]: [usize; 2]| -> Result<Dart> {
            if e >= self.edges.len() || s > 1 {
                bail!("dart [{e}, {s}] does not exist");
            }
            Ok(Dart::new(e, s))
        };
        let rotation = self
            .rotations
            .iter()
            .map(|r| r.iter().map(|&d| check(d)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(PlaneGraph::new(self.n, self.edges.clone(), rotation, check(self.outer_face)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeEntry {
    pub id: usize,
    pub u: usize,
    pub v: usize,
}

/// A crossing with its position along each edge, counted from `u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingEntry {
    pub id: usize,
    pub e1: usize,
    pub pos1: usize,
    pub e2: usize,
    pub pos2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceEntry {
    pub face: usize,
    pub walk: Vec<usize>,
    /// `[edge, a, b]` with `a, b` positions on the walk.
    pub chords: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poles: Option<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillingFile {
    pub skeleton: PlaneFile,
    pub skeleton_edges: Vec<usize>,
    pub faces: Vec<FaceEntry>,
}

/// A topological graph; the filling is optional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopoFile {
    pub n: usize,
    pub edges: Vec<EdgeEntry>,
    pub crossings: Vec<CrossingEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filling: Option<FillingFile>,
}

impl TopoFile {
    pub fn from_graph(g: &TopoGraph) -> Self {
        TopoFile {
            n: g.vertex_count(),
            edges: g.edges().iter().enumerate().map(|(id, &[u, v])| EdgeEntry { id, u, v }).collect(),
            crossings: g
                .records()
                .into_iter()
                .enumerate()
                .map(|(id, r)| CrossingEntry {
                    id,
                    e1: r.e1,
                    pos1: r.pos1,
                    e2: r.e2,
                    pos2: r.pos2,
                })
                .collect(),
            filling: g.filling().map(|f| FillingFile {
                skeleton: PlaneFile::from_graph(&f.skeleton),
                skeleton_edges: f.skeleton_edges.clone(),
                faces: f
                    .faces
                    .iter()
                    .map(|ff| FaceEntry {
                        face: ff.face,
                        walk: ff.walk.clone(),
                        chords: ff.chords.iter().map(|c| [c.edge, c.ends[0], c.ends[1]]).collect(),
                        poles: ff.poles,
                    })
                    .collect(),
            }),
        }
    }

    pub fn to_graph(&self) -> Result<TopoGraph> {
        let m = self.edges.len();
        let mut edges = vec![None; m];
        for e in &self.edges {
            let slot = edges.get_mut(e.id).with_context(|| format!("edge id {} is out of range 0..{m}", e.id))?;
            if slot.replace([e.u, e.v]).is_some() {
                bail!("edge id {} appears twice", e.id);
            }
        }
        let edges: Vec<[usize; 2]> = edges.into_iter().map(Option::unwrap).collect();
        let mut crossings: Vec<&CrossingEntry> = self.crossings.iter().collect();
        crossings.sort_by_key(|c| c.id);
        for c in &crossings {
            for e in [c.e1, c.e2] {
                if e >= m {
                    bail!("crossing id {} references unknown edge {e}", c.id);
                }
            }
        }
        let records: Vec<CrossingRecord> = crossings
            .iter()
            .map(|c| CrossingRecord {
                e1: c.e1,
                pos1: c.pos1,
                e2: c.e2,
                pos2: c.pos2,
            })
            .collect();
        let g = TopoGraph::new(self.n, edges, &records)?;
        let Some(f) = &self.filling else { return Ok(g) };
        let filling = Filling {
            skeleton: f.skeleton.to_graph().context("skeleton")?,
            skeleton_edges: f.skeleton_edges.clone(),
            faces: f
                .faces
                .iter()
                .map(|fe| FilledFace {
                    face: fe.face,
                    walk: fe.walk.clone(),
                    chords: fe.chords.iter().map(|&[edge, a, b]| Chord { edge, ends: [a, b] }).collect(),
                    poles: fe.poles,
                })
                .collect(),
        };
        Ok(g.with_filling(filling)?)
    }
}

/// The parts of a partition file that other commands read back.
#[derive(Clone, Debug, Deserialize)]
pub struct PartitionFile {
    pub classes: Vec<ClassEntry>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ClassEntry {
    pub label: String,
    pub edges: Vec<usize>,
    #[serde(default)]
    pub claims: Vec<Claim>,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn read_topo(path: &Path) -> Result<TopoGraph> {
    let file: TopoFile = read_json(path)?;
    file.to_graph().with_context(|| format!("invalid graph in {}", path.display()))
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}
