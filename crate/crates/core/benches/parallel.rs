use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use kplane::generate::{dodecahedron, glue_family, hex_family, stacked_triangulation};
use kplane::partition::{one_plane_two_forests, two_plane_two_forests};
use kplane::topo::{realize_optimal_2plane, realize_optimal_3plane, PoleChoice};
use kplane::verify::{brute_arboricity, exhaustive_partition_check, min_removal_for_1plane, Objective};
use kplane::{Exec, TopoGraph};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn corpus() -> (Vec<TopoGraph>, Vec<TopoGraph>) {
    let mut two = vec![realize_optimal_2plane(&dodecahedron()).unwrap()];
    two.extend((4..20).map(|n| realize_optimal_2plane(&glue_family(n).unwrap()).unwrap()));
    let three = (0..30)
        .map(|k| realize_optimal_3plane(&hex_family(k).unwrap(), &PoleChoice::LowestId).unwrap())
        .collect();
    (two, three)
}

fn corpus_partition(c: &mut Criterion) {
    let (two, three) = corpus();
    let mut group = c.benchmark_group("corpus_partition");
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                let a = exec.map(&two, |g| one_plane_two_forests(g).unwrap().passed());
                let b = exec.map(&three, |g| two_plane_two_forests(g).unwrap().passed());
                black_box((a, b))
            })
        });
    }
    group.finish();
}

fn min_removal(c: &mut Criterion) {
    let g = realize_optimal_2plane(&glue_family(40).unwrap()).unwrap();
    let mut group = c.benchmark_group("min_removal");
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| black_box(min_removal_for_1plane(&g, exec).unwrap().size)));
    }
    group.finish();
}

fn arboricity(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_arboricity");
    group.sample_size(10);
    for n in [14, 18] {
        let t = stacked_triangulation(n).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &t, |b, t| {
                b.iter(|| black_box(brute_arboricity(n, t.edges(), 20, exec).unwrap()))
            });
        }
    }
    group.finish();
}

fn exhaustive(c: &mut Criterion) {
    let g = realize_optimal_3plane(&hex_family(0).unwrap(), &PoleChoice::LowestId).unwrap();
    let mut group = c.benchmark_group("exhaustive_partition");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| black_box(exhaustive_partition_check(&g, 2, false, Objective::Size, 24, exec).unwrap().best))
        });
    }
    group.finish();
}

criterion_group!(benches, corpus_partition, min_removal, arboricity, exhaustive);
criterion_main!(benches);
