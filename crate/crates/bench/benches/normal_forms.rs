use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use garside::catalog;
use garside::conjugacy::{are_conjugate, sliding_circuit_set};
use garside::garside::normalize;
use garside::reversing::word_equal_via_reversing;

/// A fixed pseudo-random signed word: `len` letters over `n` generators.
fn sample(n: usize, len: usize, seed: u64) -> Vec<(usize, bool)> {
    let mut x = seed;
    (0..len)
        .map(|_| {
            x = x
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (((x >> 33) as usize) % n, (x >> 32) & 1 == 0)
        })
        .collect()
}

fn normal_forms(c: &mut Criterion) {
    let mut group = c.benchmark_group("delta_normalize");
    for n in [3, 4, 5] {
        let e = catalog::braid_classical(n).unwrap();
        let map = e.map.as_ref().unwrap();
        let p = e.context.presentation();
        let letters: Vec<_> = sample(n - 1, 40, 7)
            .into_iter()
            .map(|(g, pos)| {
                (
                    g,
                    if pos {
                        garside::Sign::Pos
                    } else {
                        garside::Sign::Neg
                    },
                )
            })
            .collect();
        let w = p.signed_word(&letters).unwrap();
        group.bench_with_input(BenchmarkId::new("braid", n), &w, |b, w| {
            b.iter(|| map.delta_normalize(w).unwrap())
        });
    }
    group.finish();

    let e = catalog::braid_classical(4).unwrap();
    let family = e.family.as_ref().unwrap();
    let letters: Vec<usize> = sample(3, 12, 11).into_iter().map(|(g, _)| g).collect();
    let w = e.context.presentation().word(&letters).unwrap();
    c.bench_function("greedy_normalize/braid4_len12", |b| {
        b.iter(|| normalize(&e.context, family, &w).unwrap())
    });
}

fn word_problem(c: &mut Criterion) {
    let e = catalog::braid_classical(4).unwrap();
    let p = e.context.presentation();
    let u = p.parse_word("a b a c b a c b").unwrap();
    let v = p.parse_word("b a b c b c a b").unwrap();
    c.bench_function("reversing_equal/braid4_len8", |b| {
        b.iter(|| word_equal_via_reversing(&e.context, &u, &v).unwrap())
    });
}

fn conjugacy(c: &mut Criterion) {
    let e = catalog::braid_classical(4).unwrap();
    let map = e.map.as_ref().unwrap();
    let p = e.context.presentation();
    let g = map
        .delta_normalize(&p.parse_signed_word("a b^-1 c a c^-1 b").unwrap())
        .unwrap();
    let h = map
        .delta_normalize(&p.parse_signed_word("b^-1 c a c^-1 b a").unwrap())
        .unwrap();
    c.bench_function("sliding_circuit_set/braid4", |b| {
        b.iter(|| sliding_circuit_set(map, &g, 100_000).unwrap())
    });
    c.bench_function("are_conjugate/braid4", |b| {
        b.iter(|| are_conjugate(map, &g, &h, 100_000).unwrap())
    });
}

criterion_group!(benches, normal_forms, word_problem, conjugacy);
criterion_main!(benches);
