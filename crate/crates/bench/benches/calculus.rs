//! Timings for the expensive kernels (Smith normal form and Ω
//! enumeration) and for the full verification sweep.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use degmap_core::abgroup::smith_normal_form;
use degmap_core::rootdata::cartan_matrix;
use degmap_core::{omega, verify_all, x_phi, Cocharacter, Kind, Scenario};

fn snf(c: &mut Criterion) {
    for (kind, rank, label) in [(Kind::E, 7, "E7"), (Kind::D, 10, "D10"), (Kind::A, 20, "A20")] {
        let m = cartan_matrix(kind, rank).unwrap();
        c.bench_function(&format!("snf/{label}"), |b| b.iter(|| smith_normal_form(black_box(&m)).unwrap()));
    }
}

fn omega_enumeration(c: &mut Criterion) {
    let cases = [("spin_D8", Scenario::spin(8).unwrap()), ("e7", Scenario::e7().unwrap())];
    for (label, s) in cases {
        let x = x_phi(&s, true, Cocharacter(1)).unwrap().result;
        let action = s.galois_selector(true);
        c.bench_function(&format!("omega/{label}"), |b| {
            b.iter(|| omega(s.rootsystem(), action, black_box(&x)).unwrap())
        });
    }
}

fn verification(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("all", |b| b.iter(|| verify_all().unwrap()));
    group.finish();
}

criterion_group!(benches, snf, omega_enumeration, verification);
criterion_main!(benches);
