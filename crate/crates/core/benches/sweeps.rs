use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use vknot::arithmetic::verify_tables_with;
use vknot::diagram::enumerate;
use vknot::exec::{self, Execution};
use vknot::invariants::{covering, writhe_polynomial};
use vknot::moves::{all_moves, apply_move, equivalent_bounded_with, Move};
use vknot::{GaussDiagram, Kind};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_tables");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, 1000), &1000, |b, &n| {
            b.iter(|| verify_tables_with(black_box(n), exec).unwrap())
        });
    }
    group.finish();
}

/// Covering compatibility of every single move on the three-chord enumeration.
fn move_sweep(c: &mut Criterion) {
    let diagrams = enumerate(Kind::Linear, 3);
    let mut group = c.benchmark_group("move_sweep");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                exec::map(exec, &diagrams, |g| {
                    let before: Vec<_> = (0..=6).map(|r| writhe_polynomial(&covering(g, r).unwrap())).collect();
                    all_moves(g)
                        .iter()
                        .filter(|mv| {
                            let h = apply_move(g, mv).unwrap();
                            (0..=6).any(|r| writhe_polynomial(&covering(&h, r).unwrap()) != before[r as usize])
                        })
                        .count()
                })
            })
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let g: GaussDiagram = "kind linear\nseq T1 T2 H1 T3 H2 H3\nsign 1 +\nsign 2 +\nsign 3 +\n"
        .parse()
        .unwrap();
    let h = apply_move(&g, &Move::R3 { blocks: [0, 2, 4] }).unwrap();
    let mut group = c.benchmark_group("equivalence_search");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| equivalent_bounded_with(black_box(&g), black_box(&h), 2, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, tables, move_sweep, search);
criterion_main!(benches);
