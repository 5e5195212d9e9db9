//! Command implementations behind the `kplane` binary.

pub mod format;
pub mod render;

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Serialize;

use kplane::generate::{dodecahedron, gadget_search, glue_family, glue_with, hex_family};
use kplane::partition::{
    one_plane_bounded_degree, one_plane_two_forests, peel_layers, peel_plane_layer, two_plane_two_forests,
    DegreeMode, EdgePartition,
};
use kplane::topo::{realize_optimal_2plane, realize_optimal_3plane, PoleChoice};
use kplane::verify::{
    arboricity_flow, brute_arboricity, check_cover, check_optimal2, check_optimal3, exhaustive_partition_check,
    hexagon_pattern_audit, host_forcing, min_removal_for_1plane, pseudoarboricity_flow, verify_claim, Check,
    Objective, Report, ARBORICITY_CAP,
};
use kplane::{Exec, PlaneGraph, TopoGraph};

use format::{read_json, read_topo, to_json, PartitionFile, PlaneFile, TopoFile};

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Dodecahedron,
    Glue,
    Hex,
}

pub struct GenOptions {
    pub n: usize,
    pub expand: usize,
    pub max_gadget_vertices: Option<usize>,
    pub out: Option<PathBuf>,
}

/// Writes `<out>.plane.json` and `<out>.topo.json`; returns both paths.
pub fn cmd_gen(family: Family, opts: &GenOptions) -> Result<[PathBuf; 2]> {
    let (plane, topo, default): (PlaneGraph, TopoGraph, &str) = match family {
        Family::Dodecahedron => {
            let p = dodecahedron();
            let g = realize_optimal_2plane(&p)?;
            (p, g, "dodecahedron")
        }
        Family::Glue => {
            let p = match opts.max_gadget_vertices {
                Some(bound) => glue_with(opts.n, &gadget_search(3, bound)?)?,
                None => glue_family(opts.n)?,
            };
            let g = realize_optimal_2plane(&p)?;
            (p, g, "glue")
        }
        Family::Hex => {
            let h = hex_family(opts.expand)?;
            let g = realize_optimal_3plane(&h, &PoleChoice::LowestId)?;
            (h, g, "hex")
        }
    };
    let base = opts.out.clone().unwrap_or_else(|| PathBuf::from(default));
    let with = |ext: &str| {
        let mut s = base.clone().into_os_string();
        s.push(ext);
        PathBuf::from(s)
    };
    let paths = [with(".plane.json"), with(".topo.json")];
    emit(&to_json(&PlaneFile::from_graph(&plane))?, Some(&paths[0]))?;
    emit(&to_json(&TopoFile::from_graph(&topo))?, Some(&paths[1]))?;
    Ok(paths)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgorithmChoice {
    Forests2,
    Deg12,
    Deg8,
    Forests3,
    Peel,
    PeelLayers,
}

pub fn run_partition(g: &TopoGraph, algorithm: AlgorithmChoice, k: Option<usize>) -> Result<EdgePartition> {
    let k = k.unwrap_or_else(|| g.max_crossings_per_edge());
    Ok(match algorithm {
        AlgorithmChoice::Forests2 => one_plane_two_forests(g)?,
        AlgorithmChoice::Deg12 => one_plane_bounded_degree(g, DegreeMode::Deg12)?,
        AlgorithmChoice::Deg8 => one_plane_bounded_degree(g, DegreeMode::Deg8)?,
        AlgorithmChoice::Forests3 => two_plane_two_forests(g)?,
        AlgorithmChoice::Peel => peel_plane_layer(g, k)?,
        AlgorithmChoice::PeelLayers => peel_layers(g, k)?,
    })
}

pub fn cmd_partition(input: &Path, algorithm: AlgorithmChoice, k: Option<usize>, out: Option<&Path>) -> Result<Status> {
    let g = read_topo(input)?;
    let p = run_partition(&g, algorithm, k)?;
    for c in &p.classes {
        let verdicts: Vec<String> = c
            .verdicts
            .iter()
            .map(|v| format!("{} {}", v.claim, if v.pass { "ok" } else { "FAILED" }))
            .collect();
        eprintln!("{}: {} edges [{}]", c.label, c.edges.len(), verdicts.join(", "));
    }
    emit(&to_json(&p)?, out)?;
    Ok(Status::from_pass(p.passed()))
}

#[derive(Serialize)]
struct VerifyOutput {
    vertices: usize,
    edges: usize,
    crossings: usize,
    max_crossings_per_edge: usize,
    checks: Vec<Check>,
}

/// Structural checks chosen by the skeleton's face length, an optional
/// k-planarity check, and re-verification of a partition file's claims.
pub fn cmd_verify(input: &Path, k: Option<usize>, partition: Option<&Path>, out: Option<&Path>) -> Result<Status> {
    let g = read_topo(input)?;
    let mut report = Report::default();
    let face_len = g
        .filling()
        .and_then(|f| f.skeleton.faces().ok())
        .and_then(|faces| faces.faces.first().map(|f| f.len()));
    match face_len {
        Some(5) => report.checks.extend(check_optimal2(&g).checks),
        Some(6) => report.checks.extend(check_optimal3(&g).checks),
        _ => {}
    }
    let worst = g.max_crossings_per_edge();
    if let Some(k) = k {
        report.checks.push(Check {
            name: format!("{k}-plane"),
            pass: worst <= k,
            detail: format!("max {worst} crossings per edge"),
        });
    }
    if let Some(path) = partition {
        let file: PartitionFile = read_json(path)?;
        let slices: Vec<&[usize]> = file.classes.iter().map(|c| c.edges.as_slice()).collect();
        report.checks.push(check_cover(g.edge_count(), &slices));
        for c in &file.classes {
            for &claim in &c.claims {
                let v = verify_claim(&g, &c.edges, claim)?;
                report.checks.push(Check {
                    name: format!("{} {}", c.label, claim),
                    pass: v.pass,
                    detail: v.witness.unwrap_or_else(|| format!("measured {}", v.value)),
                });
            }
        }
    }
    let pass = report.passed();
    let output = VerifyOutput {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        crossings: g.crossings().len(),
        max_crossings_per_edge: worst,
        checks: report.checks,
    };
    emit(&to_json(&output)?, out)?;
    Ok(Status::from_pass(pass))
}

/// Renders the graph, styled by partition classes when given. Returns the
/// layout warnings.
pub fn cmd_render(input: &Path, partition: Option<&Path>, out: Option<&Path>) -> Result<Vec<String>> {
    let g = read_topo(input)?;
    let classes: Option<Vec<(String, Vec<usize>)>> = match partition {
        Some(path) => {
            let file: PartitionFile = read_json(path)?;
            Some(file.classes.into_iter().map(|c| (c.label, c.edges)).collect())
        }
        None => None,
    };
    let r = render::render(&g, classes.as_deref());
    emit(&r.svg, out)?;
    Ok(r.warnings)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleCheck {
    MinRemoval,
    Arboricity,
    Exhaustive,
    Patterns,
    Forcing,
}

pub struct OracleOptions {
    pub k: usize,
    pub host: Option<usize>,
    pub budget: usize,
    pub exec: Exec,
}

#[derive(Serialize)]
struct ArboricityOutput {
    vertices: usize,
    edges: usize,
    brute_force: Option<usize>,
    min_cut: usize,
    pseudoarboricity: usize,
    agree: bool,
}

/// Brute-force checks. Arboricity runs on the skeleton when there is one.
pub fn cmd_oracle(input: &Path, check: OracleCheck, opts: &OracleOptions, out: Option<&Path>) -> Result<Status> {
    let g = read_topo(input)?;
    let (text, pass) = match check {
        OracleCheck::MinRemoval => {
            let r = min_removal_for_1plane(&g, opts.exec)?;
            (to_json(&r)?, true)
        }
        OracleCheck::Arboricity => {
            let (n, edges) = match g.filling() {
                Some(f) => (f.skeleton.vertex_count(), f.skeleton.edges().to_vec()),
                None => (g.vertex_count(), g.edges().to_vec()),
            };
            let brute = (n <= ARBORICITY_CAP)
                .then(|| brute_arboricity(n, &edges, ARBORICITY_CAP, opts.exec))
                .transpose()?;
            let flow = arboricity_flow(n, &edges, opts.exec);
            let agree = brute.is_none_or(|b| b == flow);
            let output = ArboricityOutput {
                vertices: n,
                edges: edges.len(),
                brute_force: brute,
                min_cut: flow,
                pseudoarboricity: pseudoarboricity_flow(n, &edges),
                agree,
            };
            (to_json(&output)?, agree)
        }
        OracleCheck::Exhaustive => {
            let size = exhaustive_partition_check(&g, opts.k, false, Objective::Size, opts.budget, opts.exec)?;
            let degree = exhaustive_partition_check(&g, opts.k, true, Objective::MaxDegree, opts.budget, opts.exec)?;
            let text = format!(
                "{{\n  \"min_size\": {},\n  \"min_max_degree_plane\": {}\n}}",
                to_json(&size)?,
                to_json(&degree)?
            );
            (text, true)
        }
        OracleCheck::Patterns => {
            let audit = hexagon_pattern_audit(&g)?;
            let pass = audit.passed();
            (to_json(&audit)?, pass)
        }
        OracleCheck::Forcing => {
            let Some(n) = opts.host else {
                bail!("forcing needs --host N (host vertices are 0..N)");
            };
            let hf = host_forcing(&g, &(0..n).collect::<Vec<_>>())?;
            let pass = hf.shared_pentagons == 0
                && hf.removal_forced == hf.host_pentagons
                && hf.remainder_forced == hf.host_pentagons;
            (to_json(&hf)?, pass)
        }
    };
    emit(&text, out)?;
    Ok(Status::from_pass(pass))
}
