use super::ast::*;
use crate::value::{format_number, write_json_string};

const INDENT: &str = "    ";
const ATOM_PRECEDENCE: u8 = 8;

/// Deterministic pretty-printing; `parse(render_canonical(ast)) == ast`.
pub fn render_canonical(script: &Script) -> String {
    let mut out = String::new();
    render_block(&script.statements, 0, &mut out);
    out
}

/// One-line description of a statement, used in runtime traces.
pub fn statement_summary(stmt: &Stmt) -> String {
    let text = match &stmt.kind {
        StmtKind::Assign { target, value } => format!("{} = {}", render_target(target), render_expr(value)),
        StmtKind::For { var, iterable, .. } => format!("for {var} in {} {{", render_expr(iterable)),
        StmtKind::If { condition, .. } => format!("if {} {{", render_expr(condition)),
        StmtKind::Expr(expr) => render_expr(expr),
    };
    const LIMIT: usize = 96;
    if text.chars().count() > LIMIT {
        let cut: String = text.chars().take(LIMIT - 3).collect();
        format!("{cut}...")
    } else {
        text
    }
}

fn render_block(stmts: &[Stmt], depth: usize, out: &mut String) {
    for stmt in stmts {
        render_stmt(stmt, depth, out);
    }
}

fn indent(depth: usize, out: &mut String) {
    for _ in 0..depth {
        out.push_str(INDENT);
    }
}

fn render_stmt(stmt: &Stmt, depth: usize, out: &mut String) {
    indent(depth, out);
    match &stmt.kind {
        StmtKind::Assign { target, value } => {
            out.push_str(&render_target(target));
            out.push_str(" = ");
            out.push_str(&render_expr(value));
            out.push('\n');
        }
        StmtKind::For { var, iterable, body } => {
            out.push_str(&format!("for {var} in {} {{\n", render_expr(iterable)));
            render_block(body, depth + 1, out);
            indent(depth, out);
            out.push_str("}\n");
        }
        StmtKind::If { .. } => {
            render_if(stmt, depth, out);
            out.push('\n');
        }
        StmtKind::Expr(expr) => {
            out.push_str(&render_expr(expr));
            out.push('\n');
        }
    }
}

/// Renders an if-chain without the trailing newline so `else if` can chain.
fn render_if(stmt: &Stmt, depth: usize, out: &mut String) {
    let StmtKind::If { condition, then_body, else_body } = &stmt.kind else {
        unreachable!("render_if called on a non-if statement");
    };
    out.push_str(&format!("if {} {{\n", render_expr(condition)));
    render_block(then_body, depth + 1, out);
    indent(depth, out);
    out.push('}');
    match else_body.as_deref() {
        None => {}
        Some([nested]) if matches!(nested.kind, StmtKind::If { .. }) => {
            out.push_str(" else ");
            render_if(nested, depth, out);
        }
        Some(body) => {
            out.push_str(" else {\n");
            render_block(body, depth + 1, out);
            indent(depth, out);
            out.push('}');
        }
    }
}

fn render_target(target: &Target) -> String {
    let mut s = target.name.clone();
    for accessor in &target.path {
        match accessor {
            Accessor::Field(name) => {
                s.push('.');
                s.push_str(name);
            }
            Accessor::Index(index) => {
                s.push('[');
                s.push_str(&render_expr(index));
                s.push(']');
            }
        }
    }
    s
}

fn precedence(expr: &Expr) -> u8 {
    match expr {
        Expr::Binary(op, _, _) => op.precedence(),
        Expr::Unary(UnaryOp::Not, _) => NOT_PRECEDENCE,
        Expr::Unary(UnaryOp::Neg, _) => NEG_PRECEDENCE,
        _ => ATOM_PRECEDENCE,
    }
}

fn wrapped(expr: &Expr, parenthesize: bool) -> String {
    let inner = render_expr(expr);
    if parenthesize {
        format!("({inner})")
    } else {
        inner
    }
}

fn record_key(key: &str) -> String {
    if is_identifier(key) {
        key.to_string()
    } else {
        let mut s = String::new();
        write_json_string(key, &mut s);
        s
    }
}

pub fn render_expr(expr: &Expr) -> String {
    match expr {
        Expr::Null => "null".to_string(),
        Expr::Bool(b) => b.to_string(),
        Expr::Number(n) => format_number(*n),
        Expr::Str(s) => {
            let mut out = String::new();
            write_json_string(s, &mut out);
            out
        }
        Expr::List(items) => {
            let parts: Vec<String> = items.iter().map(render_expr).collect();
            format!("[{}]", parts.join(", "))
        }
        Expr::Record(entries) => {
            let parts: Vec<String> = entries
                .iter()
                .map(|(k, v)| format!("{}: {}", record_key(k), render_expr(v)))
                .collect();
            format!("{{{}}}", parts.join(", "))
        }
        Expr::Var(name) => name.clone(),
        Expr::Field(base, name) => {
            format!("{}.{}", wrapped(base, precedence(base) < ATOM_PRECEDENCE), name)
        }
        Expr::Index(base, index) => format!(
            "{}[{}]",
            wrapped(base, precedence(base) < ATOM_PRECEDENCE),
            render_expr(index)
        ),
        Expr::Unary(UnaryOp::Not, operand) => {
            format!("not {}", wrapped(operand, precedence(operand) < NOT_PRECEDENCE))
        }
        Expr::Unary(UnaryOp::Neg, operand) => {
            format!("-{}", wrapped(operand, precedence(operand) < NEG_PRECEDENCE))
        }
        Expr::Binary(op, lhs, rhs) => {
            let prec = op.precedence();
            format!(
                "{} {} {}",
                wrapped(lhs, precedence(lhs) < prec),
                op.symbol(),
                wrapped(rhs, precedence(rhs) <= prec)
            )
        }
        Expr::Builtin(builtin, args) => {
            let parts: Vec<String> = args.iter().map(render_expr).collect();
            format!("{}({})", builtin.name(), parts.join(", "))
        }
        Expr::CallTool { tool, args } => {
            let mut parts = vec![render_expr(tool)];
            parts.extend(args.iter().map(|(k, v)| format!("{k}={}", render_expr(v))));
            format!("{CALL_TOOL}({})", parts.join(", "))
        }
    }
}
