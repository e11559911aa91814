use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use perdiv::growth::check_conditions;
use perdiv::lattice::PeriodLattice;
use perdiv::parallel::Exec;
use perdiv::resolvent::{GridKind, GridProfile};
use perdiv::solver::{solve_division, Forcing, TimeProfile};
use perdiv::spectrum::RootSolverConfig;
use perdiv::symbolic::parse_operator;

fn executors() -> [(&'static str, Exec); 2] {
    [("sequential", Exec::sequential()), ("rayon", Exec::with_jobs(0))]
}

fn bench_check(c: &mut Criterion) {
    let lat = PeriodLattice::integer(2);
    let cfg = RootSolverConfig::default();
    let mut group = c.benchmark_group("check_conditions");
    group.sample_size(10);
    for (name, op) in [("heat", "Dt - Dx1^2 - Dx2^2"), ("wave", "Dt^2 - Dx1^2 - Dx2^2 + 2*Dt*Dx1")] {
        let p = parse_operator(op, 2).unwrap();
        for (label, exec) in executors() {
            group.bench_with_input(BenchmarkId::new(label, name), &p, |b, p| {
                b.iter(|| check_conditions(p, &lat, 32, &cfg, &[], exec).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_grid_solve(c: &mut Criterion) {
    let lat = PeriodLattice::integer(2);
    let p = parse_operator("Dt - Dx1^2 - Dx2^2", 2).unwrap();
    let u = GridProfile::generate(GridKind::Gaussian, 20.0, 1e-3).unwrap();
    let mut forcing = Forcing::default();
    for xi in perdiv::lattice::iter_ball(2, 4) {
        forcing.modes.insert(xi, TimeProfile::Grid(u.clone()));
    }
    let mut group = c.benchmark_group("grid_solve");
    group.sample_size(10);
    for (label, exec) in executors() {
        group.bench_function(label, |b| {
            b.iter(|| solve_division(&p, &lat, &forcing, &RootSolverConfig::default(), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_check, bench_grid_solve);
criterion_main!(benches);
