//! Budgeted tree-walking evaluation.

use std::collections::HashMap;

use super::ast::*;
use super::builtins;
use super::error::{RuntimeIssue, RuntimeIssueKind, TraceFrame};
use super::render::statement_summary;
use crate::value::{Record, Value};

/// Default number of evaluation steps a single run may take.
pub const DEFAULT_STEP_BUDGET: u64 = 100_000;

/// Name of the variable that carries a script's return value.
pub const RESULT_VAR: &str = "result";

/// Failure reported by a tool dispatcher.
#[derive(Debug, Clone, PartialEq)]
pub enum DispatchError {
    UnknownTool(String),
    /// The tool ran and reported an error.
    Failed(String),
    /// A nested skill exceeded the nesting limit.
    DepthExceeded(String),
    /// A nested skill evaluation failed; its trace continues the caller's.
    Nested(RuntimeIssue),
}

/// Routes `call_tool(...)` invocations made by a script.
pub trait ToolDispatcher {
    fn dispatch(&mut self, tool: &str, args: Record) -> Result<Value, DispatchError>;
}

impl<F> ToolDispatcher for F
where
    F: FnMut(&str, Record) -> Result<Value, DispatchError>,
{
    fn dispatch(&mut self, tool: &str, args: Record) -> Result<Value, DispatchError> {
        self(tool, args)
    }
}

/// A dispatcher that knows no tools.
pub struct NoTools;

impl ToolDispatcher for NoTools {
    fn dispatch(&mut self, tool: &str, _args: Record) -> Result<Value, DispatchError> {
        Err(DispatchError::UnknownTool(tool.to_string()))
    }
}

/// Internal failure before it is annotated with frames and inputs.
#[derive(Debug)]
pub(crate) struct Fault {
    kind: RuntimeIssueKind,
    message: String,
    frames: Vec<TraceFrame>,
}

impl Fault {
    pub(crate) fn new(kind: RuntimeIssueKind, message: impl Into<String>) -> Self {
        Fault { kind, message: message.into(), frames: Vec::new() }
    }

    pub(crate) fn type_error(message: impl Into<String>) -> Self {
        Fault::new(RuntimeIssueKind::TypeError, message)
    }
}

/// Evaluates `script` and returns the final value of `result`.
///
/// At most `budget` steps run; a step is one statement or one expression
/// node.
pub fn evaluate(
    script: &Script,
    bindings: &Record,
    dispatcher: &mut dyn ToolDispatcher,
    budget: u64,
) -> Result<Value, RuntimeIssue> {
    let mut machine = Machine {
        env: bindings.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
        steps: 0,
        budget,
        dispatcher,
    };
    let outcome = machine.block(&script.statements).and_then(|()| {
        machine.env.remove(RESULT_VAR).ok_or_else(|| {
            let last = script.statements.last().expect("parsed scripts are non-empty");
            let mut fault = Fault::new(
                RuntimeIssueKind::UnknownName,
                "script finished without assigning `result`",
            );
            fault.frames.push(frame(last));
            fault
        })
    });
    outcome.map_err(|fault| RuntimeIssue {
        kind: fault.kind,
        message: fault.message,
        trace: fault.frames,
        inputs: bindings.clone(),
    })
}

fn frame(stmt: &Stmt) -> TraceFrame {
    TraceFrame { line: stmt.line, summary: statement_summary(stmt), skill: None }
}

struct Machine<'d> {
    env: HashMap<String, Value>,
    steps: u64,
    budget: u64,
    dispatcher: &'d mut dyn ToolDispatcher,
}

impl Machine<'_> {
    fn tick(&mut self) -> Result<(), Fault> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Fault::new(
                RuntimeIssueKind::BudgetExceeded,
                format!("step budget of {} exhausted", self.budget),
            ));
        }
        Ok(())
    }

    fn block(&mut self, stmts: &[Stmt]) -> Result<(), Fault> {
        for stmt in stmts {
            self.statement(stmt).map_err(|mut fault| {
                fault.frames.insert(0, frame(stmt));
                fault
            })?;
        }
        Ok(())
    }

    fn statement(&mut self, stmt: &Stmt) -> Result<(), Fault> {
        self.tick()?;
        match &stmt.kind {
            StmtKind::Assign { target, value } => {
                let value = self.expr(value)?;
                self.assign(target, value)
            }
            StmtKind::For { var, iterable, body } => {
                let items = match self.expr(iterable)? {
                    Value::List(items) => items,
                    Value::Record(map) => map.into_keys().map(Value::Str).collect(),
                    other => {
                        return Err(Fault::type_error(format!(
                            "cannot iterate over {}",
                            other.type_name()
                        )))
                    }
                };
                for item in items {
                    self.tick()?;
                    self.env.insert(var.clone(), item);
                    self.block(body)?;
                }
                Ok(())
            }
            StmtKind::If { condition, then_body, else_body } => {
                if self.expr(condition)?.truthy() {
                    self.block(then_body)
                } else if let Some(body) = else_body {
                    self.block(body)
                } else {
                    Ok(())
                }
            }
            StmtKind::Expr(expr) => self.expr(expr).map(|_| ()),
        }
    }

    fn assign(&mut self, target: &Target, value: Value) -> Result<(), Fault> {
        if target.path.is_empty() {
            self.env.insert(target.name.clone(), value);
            return Ok(());
        }
        let mut keys = Vec::with_capacity(target.path.len());
        for accessor in &target.path {
            keys.push(match accessor {
                Accessor::Field(name) => Value::Str(name.clone()),
                Accessor::Index(expr) => self.expr(expr)?,
            });
        }
        let root = self.env.get_mut(&target.name).ok_or_else(|| {
            Fault::new(RuntimeIssueKind::UnknownName, format!("name '{}' is not defined", target.name))
        })?;
        let (last, prefix) = keys.split_last().expect("non-empty path");
        let mut slot = root;
        for key in prefix {
            slot = child_mut(slot, key)?;
        }
        match (slot, last) {
            (Value::Record(map), Value::Str(k)) => {
                map.insert(k.clone(), value);
                Ok(())
            }
            (Value::List(items), idx @ Value::Number(_)) => {
                let len = items.len();
                let i = builtins::list_index(idx, len)?
                    .ok_or_else(|| Fault::type_error(format!("list index {} out of range", idx.to_json())))?;
                items[i] = value;
                Ok(())
            }
            (container, key) => Err(Fault::type_error(format!(
                "cannot assign a {} key into {}",
                key.type_name(),
                container.type_name()
            ))),
        }
    }

    fn expr(&mut self, expr: &Expr) -> Result<Value, Fault> {
        self.tick()?;
        Ok(match expr {
            Expr::Null => Value::Null,
            Expr::Bool(b) => Value::Bool(*b),
            Expr::Number(n) => Value::Number(*n),
            Expr::Str(s) => Value::Str(s.clone()),
            Expr::List(items) => {
                let mut out = Vec::with_capacity(items.len());
                for item in items {
                    out.push(self.expr(item)?);
                }
                Value::List(out)
            }
            Expr::Record(entries) => {
                let mut map = Record::with_capacity(entries.len());
                for (k, v) in entries {
                    let v = self.expr(v)?;
                    map.insert(k.clone(), v);
                }
                Value::Record(map)
            }
            Expr::Var(name) => self.env.get(name).cloned().ok_or_else(|| {
                Fault::new(RuntimeIssueKind::UnknownName, format!("name '{name}' is not defined"))
            })?,
            Expr::Field(base, name) => {
                let base = self.expr(base)?;
                field(&base, name)?
            }
            Expr::Index(base, index) => {
                let base = self.expr(base)?;
                let index = self.expr(index)?;
                index_value(&base, &index)?
            }
            Expr::Unary(UnaryOp::Not, operand) => Value::Bool(!self.expr(operand)?.truthy()),
            Expr::Unary(UnaryOp::Neg, operand) => match self.expr(operand)? {
                Value::Number(n) => Value::Number(-n),
                other => {
                    return Err(Fault::type_error(format!(
                        "bad operand type for unary -: '{}'",
                        other.type_name()
                    )))
                }
            },
            Expr::Binary(BinaryOp::And, lhs, rhs) => {
                Value::Bool(self.expr(lhs)?.truthy() && self.expr(rhs)?.truthy())
            }
            Expr::Binary(BinaryOp::Or, lhs, rhs) => {
                Value::Bool(self.expr(lhs)?.truthy() || self.expr(rhs)?.truthy())
            }
            Expr::Binary(op, lhs, rhs) => {
                let lhs = self.expr(lhs)?;
                let rhs = self.expr(rhs)?;
                binary(*op, lhs, rhs)?
            }
            Expr::Builtin(builtin, args) => {
                let mut values = Vec::with_capacity(args.len());
                for arg in args {
                    values.push(self.expr(arg)?);
                }
                builtins::call(*builtin, values)?
            }
            Expr::CallTool { tool, args } => {
                let tool = match self.expr(tool)? {
                    Value::Str(name) => name,
                    other => {
                        return Err(Fault::type_error(format!(
                            "call_tool() tool name must be a string, got {}",
                            other.type_name()
                        )))
                    }
                };
                let mut record = Record::with_capacity(args.len());
                for (k, v) in args {
                    let v = self.expr(v)?;
                    record.insert(k.clone(), v);
                }
                self.dispatcher.dispatch(&tool, record).map_err(|err| match err {
                    DispatchError::UnknownTool(name) => {
                        Fault::new(RuntimeIssueKind::UnknownTool, format!("unknown tool '{name}'"))
                    }
                    DispatchError::Failed(message) => Fault::new(
                        RuntimeIssueKind::ToolFailure,
                        format!("tool '{tool}' failed: {message}"),
                    ),
                    DispatchError::DepthExceeded(message) => {
                        Fault::new(RuntimeIssueKind::DepthExceeded, message)
                    }
                    DispatchError::Nested(issue) => Fault {
                        kind: issue.kind,
                        message: issue.message,
                        frames: issue.trace,
                    },
                })?
            }
        })
    }
}

fn child_mut<'v>(slot: &'v mut Value, key: &Value) -> Result<&'v mut Value, Fault> {
    let type_name = slot.type_name();
    match (slot, key) {
        (Value::Record(map), Value::Str(k)) => map
            .get_mut(k)
            .ok_or_else(|| Fault::type_error(format!("record has no field '{k}'"))),
        (Value::List(items), idx @ Value::Number(_)) => {
            let len = items.len();
            let i = builtins::list_index(idx, len)?
                .ok_or_else(|| Fault::type_error(format!("list index {} out of range", idx.to_json())))?;
            Ok(&mut items[i])
        }
        (_, key) => Err(Fault::type_error(format!(
            "cannot index {type_name} with {}",
            key.type_name()
        ))),
    }
}

fn field(base: &Value, name: &str) -> Result<Value, Fault> {
    match base {
        Value::Record(map) => map
            .get(name)
            .cloned()
            .ok_or_else(|| Fault::type_error(format!("record has no field '{name}'"))),
        other => Err(Fault::type_error(format!(
            "cannot read field '{name}' of {}",
            other.type_name()
        ))),
    }
}

fn index_value(base: &Value, index: &Value) -> Result<Value, Fault> {
    match (base, index) {
        (Value::Record(map), Value::Str(k)) => map
            .get(k)
            .cloned()
            .ok_or_else(|| Fault::type_error(format!("record has no field '{k}'"))),
        (Value::List(items), Value::Number(_)) => builtins::list_index(index, items.len())?
            .map(|i| items[i].clone())
            .ok_or_else(|| Fault::type_error(format!("list index {} out of range", index.to_json()))),
        (Value::Str(s), Value::Number(_)) => {
            let chars: Vec<char> = s.chars().collect();
            builtins::list_index(index, chars.len())?
                .map(|i| Value::Str(chars[i].to_string()))
                .ok_or_else(|| Fault::type_error(format!("string index {} out of range", index.to_json())))
        }
        _ => Err(Fault::type_error(format!(
            "cannot index {} with {}",
            base.type_name(),
            index.type_name()
        ))),
    }
}

fn binary(op: BinaryOp, lhs: Value, rhs: Value) -> Result<Value, Fault> {
    use BinaryOp::*;
    let mismatch = |lhs: &Value, rhs: &Value| {
        Fault::type_error(format!(
            "unsupported operand types for {}: '{}' and '{}'",
            op.symbol(),
            lhs.type_name(),
            rhs.type_name()
        ))
    };
    Ok(match op {
        Eq => Value::Bool(lhs == rhs),
        Ne => Value::Bool(lhs != rhs),
        Lt | Le | Gt | Ge => {
            let ordering = match (&lhs, &rhs) {
                (Value::Number(a), Value::Number(b)) => a.partial_cmp(b),
                (Value::Str(a), Value::Str(b)) => Some(a.cmp(b)),
                _ => return Err(mismatch(&lhs, &rhs)),
            };
            let Some(ordering) = ordering else {
                return Ok(Value::Bool(false));
            };
            Value::Bool(match op {
                Lt => ordering.is_lt(),
                Le => ordering.is_le(),
                Gt => ordering.is_gt(),
                _ => ordering.is_ge(),
            })
        }
        Add => match (lhs, rhs) {
            (Value::Number(a), Value::Number(b)) => Value::Number(a + b),
            (Value::Str(a), Value::Str(b)) => Value::Str(a + &b),
            (Value::List(mut a), Value::List(b)) => {
                a.extend(b);
                Value::List(a)
            }
            (a, b) => return Err(mismatch(&a, &b)),
        },
        Sub | Mul | Div | Rem => {
            let (Value::Number(a), Value::Number(b)) = (&lhs, &rhs) else {
                return Err(mismatch(&lhs, &rhs));
            };
            let (a, b) = (*a, *b);
            if matches!(op, Div | Rem) && b == 0.0 {
                return Err(Fault::type_error("division by zero"));
            }
            Value::Number(match op {
                Sub => a - b,
                Mul => a * b,
                Div => a / b,
                // result takes the sign of the divisor
                _ => ((a % b) + b) % b,
            })
        }
        And | Or => unreachable!("short-circuit operators are evaluated lazily"),
    })
}
