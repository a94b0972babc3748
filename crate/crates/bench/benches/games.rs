use std::f64::consts::LN_2;

use bertrand_core::equilibria::GridGame;
use bertrand_core::reply::grid_best_reply_oracle;
use bertrand_core::{GameParams, Player, ProfileGrid};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn payoffs(c: &mut Criterion) {
    let p = GameParams::ldm(10.0, 2.0, LN_2).unwrap();
    c.bench_function("ldm_payoffs", |b| b.iter(|| p.payoffs(black_box(1.3), black_box(2.7)).unwrap()));
}

fn oracle(c: &mut Criterion) {
    let p = GameParams::ldm(10.0, 2.0, LN_2).unwrap();
    let grid = ProfileGrid::default_for(&p);
    c.bench_function("grid_best_reply_oracle", |b| {
        b.iter(|| grid_best_reply_oracle(Player::One, black_box(3.0), &p, &grid).unwrap())
    });
}

fn search(c: &mut Criterion) {
    let p = GameParams::ldm(10.0, 2.0, LN_2).unwrap();
    let grid = ProfileGrid::new(16.0, 400).unwrap();
    let mut group = c.benchmark_group("epsilon_search");
    group.sample_size(10);
    group.bench_function("ldm_400", |b| b.iter(|| GridGame::new(&p, &grid).epsilon_equilibria(0.16).len()));
    group.finish();
}

criterion_group!(benches, payoffs, oracle, search);
criterion_main!(benches);
