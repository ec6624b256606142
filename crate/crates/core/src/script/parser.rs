use super::ast::*;
use super::error::SyntaxIssue;
use super::lexer::{tokenize, Tok, Token};

/// Parses a skill script, reporting the first syntax error.
pub fn parse(source: &str) -> Result<Script, SyntaxIssue> {
    if source.trim().is_empty() {
        return Err(SyntaxIssue::new(source, 1, "empty script"));
    }
    let tokens = tokenize(source)?;
    let mut parser = Parser { source, tokens, pos: 0, nesting: 0 };
    let statements = parser.statements(None)?;
    if statements.is_empty() {
        return Err(SyntaxIssue::new(source, 1, "script contains no statements"));
    }
    Ok(Script { statements })
}

struct Parser<'a> {
    source: &'a str,
    tokens: Vec<Token>,
    pos: usize,
    /// Depth of open brackets inside an expression; newlines are insignificant
    /// while it is non-zero.
    nesting: usize,
}

type PResult<T> = Result<T, SyntaxIssue>;

impl<'a> Parser<'a> {
    fn skip_insignificant(&mut self) {
        if self.nesting > 0 {
            while self.tokens[self.pos].tok == Tok::Newline {
                self.pos += 1;
            }
        }
    }

    fn peek(&mut self) -> &Tok {
        self.skip_insignificant();
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let idx = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[idx].tok
    }

    fn line(&mut self) -> usize {
        self.skip_insignificant();
        self.tokens[self.pos].line
    }

    fn advance(&mut self) -> Token {
        self.skip_insignificant();
        let tok = self.tokens[self.pos].clone();
        if tok.tok != Tok::Eof {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, line: usize, message: impl Into<String>) -> SyntaxIssue {
        SyntaxIssue::new(self.source, line, message)
    }

    fn unexpected(&mut self) -> SyntaxIssue {
        let line = self.line();
        let tok = self.peek().clone();
        match tok {
            Tok::Ident(ref word) if FOREIGN_KEYWORDS.contains(&word.as_str()) => {
                self.foreign_keyword(line, word)
            }
            _ => self.error(line, format!("unexpected token {}", tok.describe())),
        }
    }

    fn foreign_keyword(&self, line: usize, word: &str) -> SyntaxIssue {
        let hint = match word {
            "return" => "'return' is invalid outside function; assign the output to `result`",
            "def" | "fn" | "function" | "lambda" => "scripts cannot define functions",
            "while" => "only `for x in <collection>` loops are allowed",
            "import" | "from" => "imports are not available; use builtins and call_tool",
            "elif" => "use `else if`",
            _ => "not part of the skill-script language",
        };
        self.error(line, format!("invalid keyword '{word}': {hint}"))
    }

    fn expect(&mut self, want: Tok) -> PResult<Token> {
        if *self.peek() == want {
            Ok(self.advance())
        } else {
            Err(self.unexpected())
        }
    }

    fn skip_newlines(&mut self) {
        while self.tokens[self.pos].tok == Tok::Newline {
            self.pos += 1;
        }
    }

    /// Parses statements until end of input, or until `}` when inside a
    /// block opened on line `open`.
    fn statements(&mut self, open: Option<usize>) -> PResult<Vec<Stmt>> {
        let in_block = open.is_some();
        let mut out = Vec::new();
        loop {
            self.skip_newlines();
            match self.peek() {
                Tok::Eof if in_block => {
                    let line = open.unwrap_or(1);
                    return Err(self.error(line, "unmatched '{': block opened here is never closed"));
                }
                Tok::Eof => return Ok(out),
                Tok::RBrace if in_block => return Ok(out),
                _ => {}
            }
            out.push(self.statement()?);
            match self.peek() {
                Tok::Newline => {}
                Tok::Eof => {}
                Tok::RBrace if in_block => {}
                _ => return Err(self.unexpected()),
            }
        }
    }

    fn block(&mut self) -> PResult<Vec<Stmt>> {
        let open = self.expect(Tok::LBrace)?.line;
        let body = self.statements(Some(open))?;
        self.expect(Tok::RBrace)?;
        Ok(body)
    }

    fn statement(&mut self) -> PResult<Stmt> {
        let line = self.line();
        if let Tok::Ident(word) = self.peek().clone() {
            if FOREIGN_KEYWORDS.contains(&word.as_str()) {
                return Err(self.foreign_keyword(line, &word));
            }
            match word.as_str() {
                "for" => return self.for_statement(line),
                "if" => return self.if_statement(line),
                "else" | "in" => return Err(self.unexpected()),
                _ => {}
            }
        }
        let expr = self.expression()?;
        if *self.peek() == Tok::Assign {
            let target = self.target_from(expr, line)?;
            self.advance();
            let value = self.expression()?;
            return Ok(Stmt { line, kind: StmtKind::Assign { target, value } });
        }
        Ok(Stmt { line, kind: StmtKind::Expr(expr) })
    }

    fn target_from(&self, expr: Expr, line: usize) -> PResult<Target> {
        let mut path = Vec::new();
        let mut cur = expr;
        loop {
            match cur {
                Expr::Var(name) => {
                    path.reverse();
                    return Ok(Target { name, path });
                }
                Expr::Field(inner, field) => {
                    path.push(Accessor::Field(field));
                    cur = *inner;
                }
                Expr::Index(inner, index) => {
                    path.push(Accessor::Index(*index));
                    cur = *inner;
                }
                _ => return Err(self.error(line, "invalid assignment target")),
            }
        }
    }

    fn identifier(&mut self, what: &str) -> PResult<String> {
        let line = self.line();
        match self.peek().clone() {
            Tok::Ident(name) if is_identifier(&name) => {
                self.advance();
                Ok(name)
            }
            Tok::Ident(name) if FOREIGN_KEYWORDS.contains(&name.as_str()) => {
                Err(self.foreign_keyword(line, &name))
            }
            other => Err(self.error(line, format!("expected {what}, found {}", other.describe()))),
        }
    }

    fn keyword(&mut self, word: &str) -> PResult<()> {
        match self.peek() {
            Tok::Ident(w) if w == word => {
                self.advance();
                Ok(())
            }
            _ => Err(self.unexpected()),
        }
    }

    fn for_statement(&mut self, line: usize) -> PResult<Stmt> {
        self.keyword("for")?;
        let var = self.identifier("loop variable")?;
        self.keyword("in")?;
        let iterable = self.expression()?;
        let body = self.block()?;
        Ok(Stmt { line, kind: StmtKind::For { var, iterable, body } })
    }

    fn if_statement(&mut self, line: usize) -> PResult<Stmt> {
        self.keyword("if")?;
        let condition = self.expression()?;
        let then_body = self.block()?;
        let else_body = if matches!(self.peek(), Tok::Ident(w) if w == "else") {
            self.advance();
            if matches!(self.peek(), Tok::Ident(w) if w == "if") {
                let nested_line = self.line();
                Some(vec![self.if_statement(nested_line)?])
            } else {
                Some(self.block()?)
            }
        } else {
            None
        };
        Ok(Stmt { line, kind: StmtKind::If { condition, then_body, else_body } })
    }

    pub(crate) fn expression(&mut self) -> PResult<Expr> {
        self.binary(BinaryOp::Or.precedence())
    }

    fn binary_op(&mut self) -> Option<BinaryOp> {
        Some(match self.peek() {
            Tok::Ident(w) if w == "or" => BinaryOp::Or,
            Tok::Ident(w) if w == "and" => BinaryOp::And,
            Tok::EqEq => BinaryOp::Eq,
            Tok::NotEq => BinaryOp::Ne,
            Tok::Lt => BinaryOp::Lt,
            Tok::Le => BinaryOp::Le,
            Tok::Gt => BinaryOp::Gt,
            Tok::Ge => BinaryOp::Ge,
            Tok::Plus => BinaryOp::Add,
            Tok::Minus => BinaryOp::Sub,
            Tok::Star => BinaryOp::Mul,
            Tok::Slash => BinaryOp::Div,
            Tok::Percent => BinaryOp::Rem,
            _ => return None,
        })
    }

    /// Precedence climbing over left-associative binary operators.
    fn binary(&mut self, min_prec: u8) -> PResult<Expr> {
        let mut lhs = self.unary(min_prec)?;
        while let Some(op) = self.binary_op() {
            let prec = op.precedence();
            if prec < min_prec {
                break;
            }
            self.advance();
            let rhs = self.binary(prec + 1)?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self, min_prec: u8) -> PResult<Expr> {
        match self.peek() {
            Tok::Ident(w) if w == "not" => {
                if min_prec > NOT_PRECEDENCE {
                    // `not` cannot appear as an operand of a tighter operator
                    return Err(self.unexpected());
                }
                self.advance();
                let operand = self.binary(NOT_PRECEDENCE)?;
                Ok(Expr::Unary(UnaryOp::Not, Box::new(operand)))
            }
            Tok::Minus => {
                self.advance();
                let operand = self.unary(NEG_PRECEDENCE)?;
                Ok(Expr::Unary(UnaryOp::Neg, Box::new(operand)))
            }
            _ => self.postfix(),
        }
    }

    fn postfix(&mut self) -> PResult<Expr> {
        let mut expr = self.primary()?;
        loop {
            // postfix operators must start on the same logical line
            match self.peek() {
                Tok::Dot => {
                    self.advance();
                    let line = self.line();
                    match self.advance().tok {
                        Tok::Ident(name) => expr = Expr::Field(Box::new(expr), name),
                        other => {
                            return Err(self.error(
                                line,
                                format!("expected field name after '.', found {}", other.describe()),
                            ))
                        }
                    }
                }
                Tok::LBracket => {
                    self.advance();
                    self.nesting += 1;
                    let index = self.expression()?;
                    self.expect(Tok::RBracket)?;
                    self.nesting -= 1;
                    expr = Expr::Index(Box::new(expr), Box::new(index));
                }
                Tok::LParen => {
                    let line = self.line();
                    return Err(self.error(line, "only builtins and call_tool can be called"));
                }
                _ => return Ok(expr),
            }
        }
    }

    fn primary(&mut self) -> PResult<Expr> {
        let line = self.line();
        let tok = self.peek().clone();
        match tok {
            Tok::Number(n) => {
                self.advance();
                Ok(Expr::Number(n))
            }
            Tok::Str(s) => {
                self.advance();
                Ok(Expr::Str(s))
            }
            Tok::LParen => {
                self.advance();
                self.nesting += 1;
                let inner = self.expression()?;
                self.expect(Tok::RParen)?;
                self.nesting -= 1;
                Ok(inner)
            }
            Tok::LBracket => self.list(),
            Tok::LBrace => self.record(),
            Tok::Ident(word) => match word.as_str() {
                "null" => {
                    self.advance();
                    Ok(Expr::Null)
                }
                "true" | "false" => {
                    self.advance();
                    Ok(Expr::Bool(word == "true"))
                }
                w if FOREIGN_KEYWORDS.contains(&w) => Err(self.foreign_keyword(line, w)),
                w if KEYWORDS.contains(&w) => Err(self.unexpected()),
                _ => {
                    self.advance();
                    if *self.peek_at(0) == Tok::LParen {
                        self.call(word, line)
                    } else {
                        Ok(Expr::Var(word))
                    }
                }
            },
            _ => Err(self.unexpected()),
        }
    }

    fn list(&mut self) -> PResult<Expr> {
        self.expect(Tok::LBracket)?;
        self.nesting += 1;
        let mut items = Vec::new();
        while *self.peek() != Tok::RBracket {
            items.push(self.expression()?);
            if *self.peek() == Tok::Comma {
                self.advance();
            } else {
                break;
            }
        }
        self.expect(Tok::RBracket)?;
        self.nesting -= 1;
        Ok(Expr::List(items))
    }

    fn record(&mut self) -> PResult<Expr> {
        self.expect(Tok::LBrace)?;
        self.nesting += 1;
        let mut entries: Vec<(String, Expr)> = Vec::new();
        while *self.peek() != Tok::RBrace {
            let line = self.line();
            let key = match self.advance().tok {
                Tok::Ident(name) => name,
                Tok::Str(s) => s,
                other => {
                    return Err(self.error(line, format!("expected record key, found {}", other.describe())))
                }
            };
            if entries.iter().any(|(k, _)| *k == key) {
                return Err(self.error(line, format!("duplicate record key '{key}'")));
            }
            self.expect(Tok::Colon)?;
            let value = self.expression()?;
            entries.push((key, value));
            if *self.peek() == Tok::Comma {
                self.advance();
            } else {
                break;
            }
        }
        self.expect(Tok::RBrace)?;
        self.nesting -= 1;
        Ok(Expr::Record(entries))
    }

    fn call(&mut self, name: String, line: usize) -> PResult<Expr> {
        self.expect(Tok::LParen)?;
        self.nesting += 1;
        let expr = if name == CALL_TOOL {
            if *self.peek() == Tok::RParen {
                return Err(self.error(line, "call_tool requires a tool name"));
            }
            let tool = self.expression()?;
            let mut args: Vec<(String, Expr)> = Vec::new();
            while *self.peek() == Tok::Comma {
                self.advance();
                if *self.peek() == Tok::RParen {
                    break;
                }
                let arg_line = self.line();
                let key = self.identifier("keyword argument name")?;
                if *self.peek() != Tok::Assign {
                    return Err(self.error(arg_line, "call_tool arguments after the tool name must be keyword arguments (name=value)"));
                }
                self.advance();
                if args.iter().any(|(k, _)| *k == key) {
                    return Err(self.error(arg_line, format!("duplicate keyword argument '{key}'")));
                }
                let value = self.expression()?;
                args.push((key, value));
            }
            Expr::CallTool { tool: Box::new(tool), args }
        } else if let Some(builtin) = Builtin::from_name(&name) {
            let mut args = Vec::new();
            while *self.peek() != Tok::RParen {
                if matches!(self.peek(), Tok::Ident(_)) && *self.peek_at(1) == Tok::Assign {
                    let arg_line = self.line();
                    return Err(self.error(arg_line, format!("{name}() takes no keyword arguments")));
                }
                args.push(self.expression()?);
                if *self.peek() == Tok::Comma {
                    self.advance();
                } else {
                    break;
                }
            }
            Expr::Builtin(builtin, args)
        } else {
            return Err(self.error(line, format!("unknown function '{name}'")));
        };
        self.expect(Tok::RParen)?;
        self.nesting -= 1;
        Ok(expr)
    }
}
