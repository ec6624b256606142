//! Syntax tree for skill scripts.
//!
//! Equality on [`Stmt`] ignores source lines: two trees are equal when they
//! describe the same program, which is what the canonical-rendering round
//! trip guarantees.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct Script {
    pub statements: Vec<Stmt>,
}

#[derive(Debug, Clone)]
pub struct Stmt {
    /// 1-based source line of the statement's first token.
    pub line: usize,
    pub kind: StmtKind,
}

impl PartialEq for Stmt {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StmtKind {
    Assign {
        target: Target,
        value: Expr,
    },
    For {
        var: String,
        iterable: Expr,
        body: Vec<Stmt>,
    },
    If {
        condition: Expr,
        then_body: Vec<Stmt>,
        else_body: Option<Vec<Stmt>>,
    },
    Expr(Expr),
}

/// Left-hand side of an assignment: a variable plus an optional access path.
#[derive(Debug, Clone, PartialEq)]
pub struct Target {
    pub name: String,
    pub path: Vec<Accessor>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Accessor {
    Field(String),
    Index(Expr),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Null,
    Bool(bool),
    Number(f64),
    Str(String),
    List(Vec<Expr>),
    Record(Vec<(String, Expr)>),
    Var(String),
    Field(Box<Expr>, String),
    Index(Box<Expr>, Box<Expr>),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
    Builtin(Builtin, Vec<Expr>),
    CallTool {
        tool: Box<Expr>,
        args: Vec<(String, Expr)>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Not,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Or,
    And,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Add,
    Sub,
    Mul,
    Div,
    Rem,
}

impl BinaryOp {
    /// Binding strength; higher binds tighter. All levels are left-associative.
    pub fn precedence(self) -> u8 {
        match self {
            BinaryOp::Or => 1,
            BinaryOp::And => 2,
            BinaryOp::Eq
            | BinaryOp::Ne
            | BinaryOp::Lt
            | BinaryOp::Le
            | BinaryOp::Gt
            | BinaryOp::Ge => 4,
            BinaryOp::Add | BinaryOp::Sub => 5,
            BinaryOp::Mul | BinaryOp::Div | BinaryOp::Rem => 6,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Or => "or",
            BinaryOp::And => "and",
            BinaryOp::Eq => "==",
            BinaryOp::Ne => "!=",
            BinaryOp::Lt => "<",
            BinaryOp::Le => "<=",
            BinaryOp::Gt => ">",
            BinaryOp::Ge => ">=",
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Rem => "%",
        }
    }
}

/// Precedence of `not`; sits between `and` and comparisons.
pub const NOT_PRECEDENCE: u8 = 3;
/// Precedence of unary minus.
pub const NEG_PRECEDENCE: u8 = 7;

macro_rules! builtins {
    ($($variant:ident => $name:literal, $min:literal..=$max:literal;)*) => {
        /// The fixed builtin function set.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum Builtin {
            $($variant,)*
        }

        impl Builtin {
            pub const ALL: &'static [Builtin] = &[$(Builtin::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(Builtin::$variant => $name,)*
                }
            }

            pub fn from_name(name: &str) -> Option<Builtin> {
                match name {
                    $($name => Some(Builtin::$variant),)*
                    _ => None,
                }
            }

            /// Inclusive (min, max) positional argument count.
            pub fn arity(self) -> (usize, usize) {
                match self {
                    $(Builtin::$variant => ($min, $max),)*
                }
            }
        }
    };
}

builtins! {
    Len => "len", 1..=1;
    Str => "str", 1..=1;
    Num => "num", 1..=1;
    Lower => "lower", 1..=1;
    Upper => "upper", 1..=1;
    Contains => "contains", 2..=2;
    Split => "split", 2..=2;
    Join => "join", 2..=2;
    Keys => "keys", 1..=1;
    Values => "values", 1..=1;
    Get => "get", 3..=3;
    Append => "append", 2..=2;
    Slice => "slice", 2..=3;
    Round => "round", 1..=2;
    JsonEncode => "json_encode", 1..=1;
    JsonDecode => "json_decode", 1..=1;
    RegexMatch => "regex_match", 2..=2;
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Name of the tool-dispatch pseudo-function.
pub const CALL_TOOL: &str = "call_tool";

/// Words reserved by the language.
pub const KEYWORDS: &[&str] = &["null", "true", "false", "and", "or", "not", "for", "in", "if", "else"];

/// Keywords from general-purpose languages that have no meaning here and are
/// rejected with a dedicated message.
pub const FOREIGN_KEYWORDS: &[&str] = &[
    "return", "def", "fn", "function", "while", "import", "from", "class", "lambda", "let", "var",
    "const", "break", "continue", "try", "except", "raise", "elif",
];

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c == '_' || c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c == '_' || c.is_ascii_alphanumeric())
        && !KEYWORDS.contains(&s)
        && !FOREIGN_KEYWORDS.contains(&s)
}
