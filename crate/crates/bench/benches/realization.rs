use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use gt_bench::{algebra, context, module_context};
use gt_core::eigenspace::check_phi;
use gt_core::gt_module::{generator_images, gt_pattern, monomials_up_to, submodule_closure};
use gt_core::realization::Realize;
use gt_core::verify::{check_homomorphism, random_filtered_pair, rng};
use gt_core::weyl::{quotient_act, ModuleVector};

const TYPES: [(char, usize); 4] = [('A', 2), ('B', 2), ('G', 2), ('A', 3)];

fn images(c: &mut Criterion) {
    let mut g = c.benchmark_group("pi_images");
    for (k, r) in TYPES {
        let l = algebra(k, r);
        g.bench_function(BenchmarkId::from_parameter(format!("{k}{r}")), |b| {
            b.iter(|| {
                let ctx = context(&l);
                for i in 0..l.dim {
                    black_box(ctx.image(Realize::Pi, i));
                }
            })
        });
    }
    g.finish();
}

fn homomorphism(c: &mut Criterion) {
    let mut g = c.benchmark_group("homomorphism");
    g.sample_size(10);
    for (k, r) in TYPES {
        let l = algebra(k, r);
        let ctx = context(&l);
        g.bench_function(BenchmarkId::from_parameter(format!("{k}{r}")), |b| b.iter(|| check_homomorphism(black_box(&ctx))));
    }
    g.finish();
}

fn quotient(c: &mut Criterion) {
    let l = algebra('A', 2);
    let ctx = module_context(&l);
    let pat = gt_pattern(&l.rs);
    let ops = generator_images(&ctx);
    let vs: Vec<ModuleVector> = monomials_up_to(ctx.nvars(), 4).into_iter().map(ModuleVector::basis).collect();
    c.bench_function("quotient_act/A2/deg4", |b| {
        b.iter(|| {
            for op in &ops {
                for v in &vs {
                    black_box(quotient_act(op, v, &pat));
                }
            }
        })
    });
    let start = [ModuleVector::vacuum(ctx.nvars())];
    c.bench_function("closure/A2/bound6", |b| b.iter(|| submodule_closure(&ops, &pat, black_box(&start), 6)));
}

fn eigenspaces(c: &mut Criterion) {
    let mut r = rng(1);
    let pairs: Vec<_> = (0..8).map(|_| random_filtered_pair(&mut r, 12)).collect();
    c.bench_function("check_phi/8 pairs", |b| {
        b.iter(|| {
            for (s, n) in &pairs {
                black_box(check_phi(s, n).expect("rational spectrum"));
            }
        })
    });
}

criterion_group!(benches, images, homomorphism, quotient, eigenspaces);
criterion_main!(benches);
