use super::Task;
use crate::fabric::{self, catalog::Term, WRITE_FILE};
use crate::library::SkillLibrary;
use crate::value::format_number;

pub const CROSS_SUMMARY_HEADER: &str = "## cross_task_skills_summary";

fn formula(field: &str, constant: f64, terms: &[Term]) -> String {
    let mut parts = Vec::new();
    if constant != 0.0 {
        parts.push(format_number(constant));
    }
    for t in terms {
        parts.push(format!("{} x {}.{}", format_number(t.weight), t.tool, t.field));
    }
    format!("{field} = {}", parts.join(" + "))
}

/// The task prompt: objective, entities, endpoints, derived metrics, output
/// schema and available tools. Skill primitives are never mentioned.
pub fn render_prompt(task: &Task) -> String {
    let fam = task.family_def();
    let n = task.entity_count();
    let m = task.complexity();
    let mut out = String::new();

    let steps: Vec<String> = task
        .required_tools
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let tool = fam.tool(name).expect("required tools belong to the family");
            format!("({}) {} - {}", i + 1, tool.label, tool.description.to_lowercase())
        })
        .collect();
    out.push_str(&format!(
        "{} {n} {} ({}) using {m} API endpoints per {}. For each {}, collect: {}.",
        fam.objective,
        fam.entity_plural,
        task.entities.join(", "),
        fam.entity_singular,
        fam.entity_singular,
        steps.join("; "),
    ));

    let terms = fam.active_terms(&task.required_tools);
    let d = &fam.derived;
    if !terms.is_empty() {
        let all_terms = terms.len() == d.terms.len();
        match d.prose {
            Some(prose) if all_terms => out.push_str(&format!(" {prose}.")),
            _ => out.push_str(&format!(" Calculate {}.", d.field.replace('_', " "))),
        }
        out.push_str(&format!(" Formula: {}, rounded to 2 decimals", formula(d.field, d.constant, &terms)));
        if let Some(label) = d.label_field {
            let bands: Vec<String> = d
                .bands
                .iter()
                .map(|b| format!("{} (>= {})", b.label, format_number(b.min)))
                .chain(std::iter::once(format!("{} (otherwise)", d.fallback_label)))
                .collect();
            out.push_str(&format!("; determine {label}: {}", bands.join(", ")));
        }
        out.push('.');
    }
    out.push_str(&format!(" Save results to {}.\n", task.output_file));

    out.push_str(&format!(
        "\nOutput format: a JSON object keyed by {} name. Each value holds one object per endpoint, named after the tool:\n",
        fam.entity_singular
    ));
    for name in &task.required_tools {
        let tool = fam.tool(name).expect("required tool");
        let fields: Vec<&str> = tool.fields.iter().map(|f| f.name).collect();
        out.push_str(&format!("  \"{name}\": {{{}}}\n", fields.join(", ")));
    }
    if !terms.is_empty() {
        let mut derived = vec![d.field];
        derived.extend(d.label_field);
        out.push_str(&format!("  plus top-level fields: {}\n", derived.join(", ")));
    }

    out.push_str("\nAvailable tools:\n");
    let registry_params = |name: &str| -> String {
        match name {
            WRITE_FILE => "path, content".to_string(),
            fabric::CLAIM_DONE => "status".to_string(),
            _ => fam.entity_param.to_string(),
        }
    };
    for name in &task.required_tools {
        let tool = fam.tool(name).expect("required tool");
        out.push_str(&format!("- {name}({}): {}\n", registry_params(name), tool.description));
    }
    out.push_str(&format!("- {WRITE_FILE}({}): Save JSON output\n", registry_params(WRITE_FILE)));
    out.push_str(&format!("- {}({}): Signal task completion\n", fabric::CLAIM_DONE, registry_params(fabric::CLAIM_DONE)));
    out.push_str(&format!("\nScale: {n} subtasks x {m} API calls = {} total calls\n", n * m));
    out
}

/// Appends the summary of inherited skills: signature, description and
/// execution history per skill, in library order.
pub fn inject_cross_summary(prompt: &str, lib: &SkillLibrary) -> String {
    let mut out = String::from(prompt);
    if !out.ends_with('\n') {
        out.push('\n');
    }
    out.push('\n');
    out.push_str(CROSS_SUMMARY_HEADER);
    out.push('\n');
    if lib.is_empty() {
        out.push_str("No skills available from previous tasks.\n");
        return out;
    }
    out.push_str("Skills available from previous tasks (the library is read-only; execute them, do not create new ones):\n");
    for e in lib.entries() {
        let s = e.execution_stats;
        out.push_str(&format!(
            "- {}({}): {} History: {} successes, {} failures.\n",
            e.name,
            e.parameters.join(", "),
            e.description,
            s.success_count,
            s.failure_count
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite::{generate_suite, Level};

    #[test]
    fn gitlab_h1_prompt_lists_weights_and_file() {
        let task = Task::new(
            "gitlab-deep-analysis",
            Level::H1,
            ["gitlab-runner", "gitaly", "gitlab-pages", "gitlab-shell", "cli"].map(String::from).to_vec(),
        )
        .unwrap();
        let p = render_prompt(&task);
        assert!(p.starts_with("Perform a comprehensive analysis of 5 GitLab repositories (gitlab-runner, gitaly, gitlab-pages, gitlab-shell, cli)"));
        for needle in ["commits (40%)", "contributors (30%)", "issues (20%)", "branches (10%)", "healthy (>= 70)", "moderate (>= 40)", "inactive (otherwise)", "gitlab_analysis_results.json", "get_project_info(project_path)", "5 subtasks x 5 API calls = 25 total calls"] {
            assert!(p.contains(needle), "missing {needle:?} in\n{p}");
        }
        assert!(!p.contains("get_merge_requests"));
        assert_eq!(p, render_prompt(&task));
    }

    #[test]
    fn cat_e1_prompt() {
        let task = Task::new("cat-facts-collector", Level::E1, ["Persian", "Siamese", "Maine Coon"].map(String::from).to_vec()).unwrap();
        let p = render_prompt(&task);
        for needle in ["3 cat breeds (Persian, Siamese, Maine Coon)", "breed_profile(breed_name)", "breed_relatives", "breed_coat_family", "cat_encyclopedia.json", "9 total calls"] {
            assert!(p.contains(needle), "{needle}");
        }
        assert!(!p.contains("breed_facts("));
    }

    #[test]
    fn prompts_never_mention_skill_primitives() {
        for task in generate_suite(&fabric::family_names(), 5).unwrap() {
            let p = render_prompt(&task);
            assert!(!p.contains("save_skill") && !p.contains("execute_skill"), "{}", task.id);
        }
    }

    #[test]
    fn cross_summary_blocks() {
        let mut lib = SkillLibrary::new();
        let base = "Do the task.";
        let empty = inject_cross_summary(base, &lib);
        assert!(empty.starts_with(base));
        assert!(empty.ends_with("No skills available from previous tasks.\n"));
        lib.save_skill("one", "result = {a: x}", &["x".to_string()], "first skill").unwrap();
        for _ in 0..5 {
            let out = lib.execute_skill("one", &[("x".to_string(), 1i64.into())].into_iter().collect(), &mut crate::script::NoTools, 0).unwrap();
            assert!(out.is_success());
        }
        lib.save_skill("two", "result = {b: 2}", &[], "second skill").unwrap();
        let text = inject_cross_summary(base, &lib);
        assert!(text.contains("- one(x): first skill History: 5 successes, 0 failures."));
        let one = text.find("- one(").unwrap();
        let two = text.find("- two(").unwrap();
        assert!(one < two);
    }
}
