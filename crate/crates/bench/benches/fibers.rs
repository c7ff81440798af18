use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;
use twistfam_core::algebra::{Poly, PrimeField, ZechField};
use twistfam_core::families::{family_lfunctions, verify_profile, FamilyId, FamilySpec, VerifyOptions};
use twistfam_core::fibers::FiberCounter;
use twistfam_core::lfunction::{lfunction, ExpansionMode, LFunctionOptions};
use twistfam_core::orthogonal::OrthogonalSpace;
use twistfam_core::reduction::discriminant_places;

fn fiber_traces(c: &mut Criterion) {
    let mut g = c.benchmark_group("fiber_trace");
    for (p, d) in [(5u64, 6usize), (11, 4), (13, 5)] {
        let k = ZechField::new(PrimeField::new(p).unwrap(), d).unwrap();
        let counter = FiberCounter::new(&k);
        let (a, b, cc) = (k.from_base(1), k.from_base(3), k.from_base(2));
        g.bench_with_input(BenchmarkId::new("charsum", k.order()), &k, |bn, _| {
            bn.iter(|| counter.trace_charsum(black_box(a), black_box(b), black_box(cc)))
        });
        g.bench_with_input(BenchmarkId::new("bsgs", k.order()), &k, |bn, _| {
            bn.iter(|| counter.trace_bsgs(black_box(a), black_box(b), black_box(cc), 7))
        });
    }
    g.finish();
}

fn tate(c: &mut Criterion) {
    let spec = FamilySpec::build(FamilyId::Odd1Mod8, 2).unwrap();
    let inst = spec.instantiate(29, 20).unwrap();
    c.bench_function("bad_places_odd_1mod8_n2_p29", |b| b.iter(|| discriminant_places(black_box(&inst.curve)).unwrap()));
}

fn lfunctions(c: &mut Criterion) {
    let mut g = c.benchmark_group("lfunction");
    g.sample_size(10);
    let field = PrimeField::new(11).unwrap();
    let spec = FamilySpec::build(FamilyId::IntroN5, 0).unwrap();
    let curve = spec.base_curve(field).unwrap().twist_by(&Poly::linear(field, 2)).unwrap();
    for mode in [ExpansionMode::Full, ExpansionMode::Half] {
        let opts = LFunctionOptions { mode: Some(mode), ..Default::default() };
        g.bench_function(format!("intro_p11_{mode:?}"), |b| b.iter(|| lfunction(black_box(&curve), &opts).unwrap()));
    }
    let odd7 = FamilySpec::build(FamilyId::Odd7Mod8, 0).unwrap();
    g.bench_function("odd_7mod8_all_members_p13", |b| {
        b.iter(|| family_lfunctions(&odd7, 13, &[1, 2], &LFunctionOptions::default()).unwrap())
    });
    g.finish();
}

fn profiles(c: &mut Criterion) {
    let spec = FamilySpec::build(FamilyId::Even4Mod8, 1).unwrap();
    let primes: Vec<u64> = vec![17, 19, 23, 29, 31];
    c.bench_function("verify_profile_even_4mod8_n1", |b| b.iter(|| verify_profile(&spec, &primes, &VerifyOptions::default())));
}

fn spinor(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let space = OrthogonalSpace::random(PrimeField::new(13).unwrap(), 6, &mut rng);
    let elems: Vec<_> = (0..64).map(|_| space.random_orthogonal(&mut rng)).collect();
    c.bench_function("spinor_norm_dim6_ell13", |b| {
        b.iter(|| elems.iter().map(|a| space.spinor_norm(a).unwrap()).collect::<Vec<_>>())
    });
}

criterion_group!(benches, fiber_traces, tate, lfunctions, profiles, spinor);
criterion_main!(benches);
