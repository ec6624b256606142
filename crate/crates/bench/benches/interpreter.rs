use criterion::{black_box, criterion_group, criterion_main, Criterion};
use skillcraft_bench::{entity_skill, fresh_env, h1_task};
use skillcraft_core::policy::RegistryTools;
use skillcraft_core::script::{evaluate, parse, render_canonical, DEFAULT_STEP_BUDGET};
use skillcraft_core::{Record, Value};

fn interpreter(c: &mut Criterion) {
    let task = h1_task();
    let skill = entity_skill(&task);
    let source = skill.script.as_str().to_string();

    c.bench_function("parse_entity_skill", |b| b.iter(|| parse(black_box(&source)).unwrap()));

    let ast = parse(&source).unwrap();
    c.bench_function("render_entity_skill", |b| b.iter(|| render_canonical(black_box(&ast))));

    let dir = tempfile::tempdir().unwrap();
    let mut env = fresh_env(&task, dir.path());
    let tools = Value::List(task.required_tools.iter().map(|t| Value::from(t.as_str())).collect());
    let bindings: Record = [
        (skill.parameters[0].clone(), Value::from(task.entities[0].as_str())),
        (skill.parameters[1].clone(), tools),
    ]
    .into_iter()
    .collect();
    c.bench_function("evaluate_entity_skill", |b| {
        b.iter(|| {
            let mut dispatch = RegistryTools { registry: &env.registry, workspace: &mut env.workspace };
            evaluate(&ast, black_box(&bindings), &mut dispatch, DEFAULT_STEP_BUDGET).unwrap()
        })
    });

    let loop_src = "total = 0\nfor i in xs {\n  total = total + i * 2\n}\nresult = total";
    let loop_ast = parse(loop_src).unwrap();
    let xs: Record = [("xs".to_string(), Value::List((0..1000i64).map(Value::from).collect()))].into_iter().collect();
    c.bench_function("evaluate_loop_1000", |b| {
        b.iter(|| evaluate(&loop_ast, black_box(&xs), &mut skillcraft_core::script::NoTools, DEFAULT_STEP_BUDGET).unwrap())
    });
}

criterion_group!(benches, interpreter);
criterion_main!(benches);
