use std::collections::BTreeSet;

use indexmap::IndexSet;

use super::ast::*;

/// Names read before being assigned, i.e. the script's required parameters,
/// in order of first read.
///
/// Assignments inside a branch only count after the `if` when both branches
/// make them; loop bodies may run zero times, so their assignments do not
/// count after the loop.
pub fn free_variables(script: &Script) -> IndexSet<String> {
    let mut free = IndexSet::new();
    let mut assigned = BTreeSet::new();
    walk_block(&script.statements, &mut assigned, &mut free);
    free
}

fn walk_block(stmts: &[Stmt], assigned: &mut BTreeSet<String>, free: &mut IndexSet<String>) {
    for stmt in stmts {
        walk_stmt(stmt, assigned, free);
    }
}

fn walk_stmt(stmt: &Stmt, assigned: &mut BTreeSet<String>, free: &mut IndexSet<String>) {
    match &stmt.kind {
        StmtKind::Assign { target, value } => {
            reads(value, assigned, free);
            for accessor in &target.path {
                if let Accessor::Index(index) = accessor {
                    reads(index, assigned, free);
                }
            }
            if target.path.is_empty() {
                assigned.insert(target.name.clone());
            } else if !assigned.contains(&target.name) {
                // updating a field reads the container first
                free.insert(target.name.clone());
            }
        }
        StmtKind::For { var, iterable, body } => {
            reads(iterable, assigned, free);
            let mut inner = assigned.clone();
            inner.insert(var.clone());
            walk_block(body, &mut inner, free);
        }
        StmtKind::If { condition, then_body, else_body } => {
            reads(condition, assigned, free);
            let mut then_set = assigned.clone();
            walk_block(then_body, &mut then_set, free);
            if let Some(body) = else_body {
                let mut else_set = assigned.clone();
                walk_block(body, &mut else_set, free);
                let both: BTreeSet<String> = then_set.intersection(&else_set).cloned().collect();
                assigned.extend(both);
            }
        }
        StmtKind::Expr(expr) => reads(expr, assigned, free),
    }
}

fn reads(expr: &Expr, assigned: &BTreeSet<String>, free: &mut IndexSet<String>) {
    match expr {
        Expr::Null | Expr::Bool(_) | Expr::Number(_) | Expr::Str(_) => {}
        Expr::Var(name) => {
            if !assigned.contains(name) {
                free.insert(name.clone());
            }
        }
        Expr::List(items) | Expr::Builtin(_, items) => {
            for item in items {
                reads(item, assigned, free);
            }
        }
        Expr::Record(entries) => {
            for (_, v) in entries {
                reads(v, assigned, free);
            }
        }
        Expr::Field(base, _) | Expr::Unary(_, base) => reads(base, assigned, free),
        Expr::Index(a, b) | Expr::Binary(_, a, b) => {
            reads(a, assigned, free);
            reads(b, assigned, free);
        }
        Expr::CallTool { tool, args } => {
            reads(tool, assigned, free);
            for (_, v) in args {
                reads(v, assigned, free);
            }
        }
    }
}
