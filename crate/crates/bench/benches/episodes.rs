use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use skillcraft_bench::{fresh_env, h1_task};
use skillcraft_core::policy::{run_episode, EpisodeConfig, Mode};

fn episodes(c: &mut Criterion) {
    let task = h1_task();
    let mut group = c.benchmark_group("h1_episode");
    for mode in [Mode::Base, Mode::Skill, Mode::Hier, Mode::Direct] {
        group.bench_function(mode.as_str(), |b| {
            b.iter_batched(
                || {
                    let dir = tempfile::tempdir().unwrap();
                    let env = fresh_env(&task, dir.path());
                    (dir, env)
                },
                |(_dir, mut env)| run_episode(&task, mode, &mut env, EpisodeConfig::default()).unwrap(),
                BatchSize::SmallInput,
            )
        });
    }
    group.finish();
}

criterion_group!(benches, episodes);
criterion_main!(benches);
