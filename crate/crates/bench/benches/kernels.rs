use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use anosovlab::chords::{count_chords, Sign};
use anosovlab::exact::{smith_normal_form, IntMatrix};
use anosovlab::lagrangian::build_exact_beta;
use anosovlab::lagrangian::quadrature::integrate_pieces;
use anosovlab::surface::{double_cosets, FuchsianRep, SurfacePresentation, Word};
use anosovlab::toral::{eigen_data, fixed_points, TorusPoint};

fn exact(c: &mut Criterion) {
    let m = IntMatrix::parse_square("4 -6 2 8 1 3 -5 7 0 2 9 -1 3 3 3 6").unwrap();
    c.bench_function("smith_normal_form 4x4", |b| b.iter(|| smith_normal_form(black_box(&m))));
}

fn toral(c: &mut Criterion) {
    let a = IntMatrix::parse_square("2 1 1 1").unwrap();
    c.bench_function("fixed_points A^6", |b| b.iter(|| fixed_points(black_box(&a), 6).unwrap()));
    let e = eigen_data(&IntMatrix::parse_square("3 2 1 1").unwrap()).unwrap();
    let (p, q) = (TorusPoint::parse("0/1 0/1").unwrap(), TorusPoint::parse("1/2 1/3").unwrap());
    c.bench_function("count_chords k<=200", |b| b.iter(|| count_chords(&e, &p, &q, Sign::Plus, black_box(200))));
}

fn surface(c: &mut Criterion) {
    let p = SurfacePresentation::new(2).unwrap();
    let w = Word::parse("a1b1A1B1a2b2A2B2a1b1A1B1a2b2A2B2a1b2a2b1", 2).unwrap();
    c.bench_function("cyclic_dehn_reduce genus 2", |b| b.iter(|| p.cyclic_dehn_reduce(black_box(&w))));
    let rep = FuchsianRep::<f64>::regular(2).unwrap();
    let (g, h) = (Word::parse("a1", 2).unwrap(), Word::parse("b1", 2).unwrap());
    let mut group = c.benchmark_group("double_cosets");
    group.sample_size(10);
    group.bench_function("L=6", |b| b.iter(|| double_cosets(&g, &h, &rep, black_box(6)).unwrap()));
    group.finish();
}

fn lagrangian(c: &mut Criterion) {
    let breaks: Vec<f64> = (0..=8).map(|i| f64::from(i) * std::f64::consts::FRAC_PI_4).collect();
    c.bench_function("integrate_pieces 1e-12", |b| b.iter(|| integrate_pieces(|t| (3.0 * t).sin().abs().sqrt(), black_box(&breaks), 1e-12)));
    let mut group = c.benchmark_group("beta");
    group.sample_size(10);
    group.bench_function("build_exact_beta", |b| b.iter(|| build_exact_beta(black_box(0.4), 0.9, 1e-12).unwrap()));
    group.finish();
}

criterion_group!(benches, exact, toral, surface, lagrangian);
criterion_main!(benches);
