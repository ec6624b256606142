//! Shared fixtures for the criterion benches.

use std::collections::BTreeSet;
use std::path::Path;

use skillcraft_core::fabric::{build_registry, Workspace};
use skillcraft_core::library::SkillLibrary;
use skillcraft_core::policy::{compose_family_skill, ComposedSkill, Env};
use skillcraft_core::suite::{Level, Task};

pub const SEED: u64 = 1;

pub fn h1_task() -> Task {
    let entities = ["Mojito", "Margarita", "Old Fashioned", "Cosmopolitan", "Negroni"];
    Task::new("cocktail-menu-generator", Level::H1, entities.iter().map(|s| s.to_string()).collect()).expect("valid task")
}

/// The per-entity skill a policy would save for `task`.
pub fn entity_skill(task: &Task) -> ComposedSkill {
    let def = task.family_def();
    compose_family_skill(def, def.entity_param)
}

/// A fresh environment rooted at `dir`, with no cache file.
pub fn fresh_env(task: &Task, dir: &Path) -> Env {
    Env {
        registry: build_registry(&task.family, SEED, &BTreeSet::new()).expect("known family"),
        workspace: Workspace::open(dir.join("workspace")).expect("workspace"),
        library: SkillLibrary::new(),
    }
}
