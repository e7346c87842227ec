use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use dolbeault::cp1::full_report;
use dolbeault::exact::int;
use dolbeault::flagspec::{p_spectrum_with, SpectrumOptions};
use dolbeault::par::Exec;
use dolbeault::reps::clear_memo;
use dolbeault::rootsys::{build_root_system, Family, Weight};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn spectrum(c: &mut Criterion) {
    let mut group = c.benchmark_group("p_spectrum_cold");
    group.sample_size(10);
    for (family, rank, cutoff) in [(Family::B, 4, 3), (Family::C, 4, 3), (Family::A, 3, 6)] {
        let rs = build_root_system(family, rank).unwrap();
        let mu = Weight(vec![0; rank]);
        let cutoff = int(cutoff);
        for (name, exec) in MODES {
            let opts = SpectrumOptions {
                exec,
                ..Default::default()
            };
            group.bench_function(format!("{family}{rank}/{name}"), |b| {
                b.iter_batched(
                    clear_memo,
                    |_| p_spectrum_with(&rs, &mu, &cutoff, &opts).unwrap(),
                    BatchSize::PerIteration,
                )
            });
        }
    }
    group.finish();
}

fn cp1(c: &mut Criterion) {
    let mut group = c.benchmark_group("cp1_full_report");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| full_report(3, 21, false, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, spectrum, cp1);
criterion_main!(benches);
