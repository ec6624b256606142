use super::ast::Builtin;
use super::error::RuntimeIssueKind;
use super::eval::Fault;
use crate::value::{format_number, Value};

pub(crate) fn call(builtin: Builtin, args: Vec<Value>) -> Result<Value, Fault> {
    let (min, max) = builtin.arity();
    if args.len() < min || args.len() > max {
        let expected = if min == max { min.to_string() } else { format!("{min} to {max}") };
        return Err(Fault::new(
            RuntimeIssueKind::ArityError,
            format!("{}() takes {expected} argument(s), got {}", builtin.name(), args.len()),
        ));
    }
    let name = builtin.name();
    // optional trailing arguments become nulls
    let mut args = args;
    args.resize(max, Value::Null);
    let mut args = args.into_iter();
    let mut next = || args.next().expect("arity checked");
    match builtin {
        Builtin::Len => {
            let v = next();
            let n = match &v {
                Value::Str(s) => s.chars().count(),
                Value::List(items) => items.len(),
                Value::Record(map) => map.len(),
                other => return Err(type_arg(name, "a string, list or record", other)),
            };
            Ok(Value::from(n))
        }
        Builtin::Str => Ok(Value::Str(to_display_string(&next()))),
        Builtin::Num => match next() {
            Value::Number(n) => Ok(Value::Number(n)),
            Value::Bool(b) => Ok(Value::Number(if b { 1.0 } else { 0.0 })),
            Value::Str(s) => match s.trim().parse::<f64>() {
                Ok(n) if n.is_finite() => Ok(Value::Number(n)),
                _ => Err(Fault::type_error(format!("num(): cannot convert {s:?} to a number"))),
            },
            other => Err(type_arg(name, "a number, string or boolean", &other)),
        },
        Builtin::Lower | Builtin::Upper => match next() {
            Value::Str(s) => Ok(Value::Str(if builtin == Builtin::Lower {
                s.to_lowercase()
            } else {
                s.to_uppercase()
            })),
            other => Err(type_arg(name, "a string", &other)),
        },
        Builtin::Contains => {
            let container = next();
            let item = next();
            match (&container, &item) {
                (Value::Str(s), Value::Str(sub)) => Ok(Value::Bool(s.contains(sub.as_str()))),
                (Value::List(items), _) => Ok(Value::Bool(items.contains(&item))),
                (Value::Record(map), Value::Str(key)) => Ok(Value::Bool(map.contains_key(key))),
                _ => Err(Fault::type_error(format!(
                    "contains() cannot search a {} for a {}",
                    container.type_name(),
                    item.type_name()
                ))),
            }
        }
        Builtin::Split => match (next(), next()) {
            (Value::Str(s), Value::Str(sep)) if !sep.is_empty() => {
                Ok(Value::List(s.split(sep.as_str()).map(Value::from).collect()))
            }
            (Value::Str(_), Value::Str(_)) => Err(Fault::type_error("split(): empty separator")),
            (a, b) => Err(Fault::type_error(format!(
                "split() expects two strings, got {} and {}",
                a.type_name(),
                b.type_name()
            ))),
        },
        Builtin::Join => match (next(), next()) {
            (Value::List(items), Value::Str(sep)) => Ok(Value::Str(
                items.iter().map(to_display_string).collect::<Vec<_>>().join(&sep),
            )),
            (a, b) => Err(Fault::type_error(format!(
                "join() expects a list and a string, got {} and {}",
                a.type_name(),
                b.type_name()
            ))),
        },
        Builtin::Keys | Builtin::Values => match next() {
            Value::Record(map) => Ok(Value::List(if builtin == Builtin::Keys {
                map.keys().map(|k| Value::Str(k.clone())).collect()
            } else {
                map.into_values().collect()
            })),
            other => Err(type_arg(name, "a record", &other)),
        },
        Builtin::Get => {
            let container = next();
            let key = next();
            let default = next();
            match (&container, &key) {
                (Value::Null, _) => Ok(default),
                (Value::Record(map), Value::Str(k)) => Ok(map.get(k).cloned().unwrap_or(default)),
                (Value::List(items), Value::Number(_)) => {
                    let idx = list_index(&key, items.len())?;
                    Ok(idx.map(|i| items[i].clone()).unwrap_or(default))
                }
                _ => Err(Fault::type_error(format!(
                    "get() cannot look up a {} key in a {}",
                    key.type_name(),
                    container.type_name()
                ))),
            }
        }
        Builtin::Append => match next() {
            Value::List(mut items) => {
                items.push(next());
                Ok(Value::List(items))
            }
            other => Err(type_arg(name, "a list", &other)),
        },
        Builtin::Slice => {
            let target = next();
            let start = next();
            let end = next();
            slice(target, start, end)
        }
        Builtin::Round => {
            let x = next();
            let digits = next();
            round(x, digits)
        }
        Builtin::JsonEncode => Ok(Value::Str(next().to_json())),
        Builtin::JsonDecode => match next() {
            Value::Str(s) => Value::from_json_str(&s)
                .map_err(|e| Fault::type_error(format!("json_decode(): invalid JSON: {e}"))),
            other => Err(type_arg(name, "a string", &other)),
        },
        Builtin::RegexMatch => match (next(), next()) {
            (Value::Str(pattern), Value::Str(text)) => {
                let re = regex::Regex::new(&pattern)
                    .map_err(|e| Fault::type_error(format!("regex_match(): invalid pattern: {e}")))?;
                Ok(match re.captures(&text) {
                    None => Value::Null,
                    Some(caps) if caps.len() == 1 => Value::from(&caps[0]),
                    Some(caps) => Value::List(
                        caps.iter()
                            .skip(1)
                            .map(|m| m.map(|m| Value::from(m.as_str())).unwrap_or(Value::Null))
                            .collect(),
                    ),
                })
            }
            (a, b) => Err(Fault::type_error(format!(
                "regex_match() expects two strings, got {} and {}",
                a.type_name(),
                b.type_name()
            ))),
        },
    }
}

pub(crate) fn to_display_string(v: &Value) -> String {
    match v {
        Value::Str(s) => s.clone(),
        Value::Number(n) => format_number(*n),
        Value::Bool(b) => b.to_string(),
        Value::Null => "null".to_string(),
        other => other.to_json(),
    }
}

fn type_arg(name: &str, expected: &str, got: &Value) -> Fault {
    Fault::type_error(format!("{name}() expects {expected}, got {}", got.type_name()))
}

fn integer(v: &Value, what: &str) -> Result<i64, Fault> {
    match v {
        Value::Number(n) if n.fract() == 0.0 && n.is_finite() => Ok(*n as i64),
        other => Err(Fault::type_error(format!("{what} must be an integer, got {}", other.to_json()))),
    }
}

/// Resolves a possibly negative index; `None` when out of range.
pub(crate) fn list_index(index: &Value, len: usize) -> Result<Option<usize>, Fault> {
    let i = integer(index, "list index")?;
    let resolved = if i < 0 { i + len as i64 } else { i };
    Ok((0..len as i64).contains(&resolved).then_some(resolved as usize))
}

fn clamp_bound(v: &Value, len: usize, default: usize) -> Result<usize, Fault> {
    if v.is_null() {
        return Ok(default);
    }
    let i = integer(v, "slice bound")?;
    let len_i = len as i64;
    let resolved = if i < 0 { (i + len_i).max(0) } else { i.min(len_i) };
    Ok(resolved as usize)
}

fn slice(target: Value, start: Value, end: Value) -> Result<Value, Fault> {
    match target {
        Value::List(items) => {
            let s = clamp_bound(&start, items.len(), 0)?;
            let e = clamp_bound(&end, items.len(), items.len())?;
            Ok(Value::List(if s < e { items[s..e].to_vec() } else { Vec::new() }))
        }
        Value::Str(text) => {
            let chars: Vec<char> = text.chars().collect();
            let s = clamp_bound(&start, chars.len(), 0)?;
            let e = clamp_bound(&end, chars.len(), chars.len())?;
            Ok(Value::Str(if s < e { chars[s..e].iter().collect() } else { String::new() }))
        }
        other => Err(type_arg("slice", "a list or string", &other)),
    }
}

fn round(x: Value, digits: Value) -> Result<Value, Fault> {
    let n = match x {
        Value::Number(n) => n,
        other => return Err(type_arg("round", "a number", &other)),
    };
    let d = match digits {
        Value::Null => 0,
        v => integer(&v, "round() digits")?,
    };
    if !(0..=15).contains(&d) {
        return Err(Fault::type_error("round() digits must be between 0 and 15"));
    }
    let factor = 10f64.powi(d as i32);
    // half away from zero
    Ok(Value::Number((n * factor).round() / factor))
}
