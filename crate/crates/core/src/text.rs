//! `.rmf` text format.
//!
//! ```text
//! circuit c {
//!   inputs x0 x1;
//!   g1 = or(x0,x1);
//!   output g1;
//! }
//! ```
//!
//! Definitions must precede their uses, which makes the grammar LL(1) and
//! rules out cycles syntactically. Identifiers match
//! `[A-Za-z_][A-Za-z0-9_]*`; the words `circuit inputs output and or not
//! const0 const1` are reserved. The printer emits one statement per line,
//! two-space indentation, single spaces, LF line endings, and gates in
//! canonical node order, so `parse(print(c)) == c`.

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::circuit::{is_identifier, Circuit, CircuitError, Gate, GateKind, NodeId};

/// Position in the source text; line and column are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub offset: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{span}: syntax error: {message}")]
    Syntax { span: SourceSpan, message: String },
    #[error("{span}: `{name}` is already defined")]
    DuplicateId { span: SourceSpan, name: String },
    #[error("{span}: `{name}` is used before its definition")]
    UseBeforeDef { span: SourceSpan, name: String },
    #[error("{span}: `{kind}` cannot take {arity} argument(s)")]
    Arity { span: SourceSpan, kind: &'static str, arity: usize },
    #[error("{span}: {source}")]
    Invalid { span: SourceSpan, source: CircuitError },
}

const KEYWORDS: [&str; 8] = ["circuit", "inputs", "output", "and", "or", "not", "const0", "const1"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Ident(&'a str),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Semi,
    Comma,
    Eq,
    Eof,
}

impl Tok<'_> {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0, line: 1, col: 1 }
    }

    fn span(&self) -> SourceSpan {
        SourceSpan { line: self.line, column: self.col, offset: self.pos }
    }

    fn bump(&mut self, len: usize) {
        for b in &self.src.as_bytes()[self.pos..self.pos + len] {
            if *b == b'\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
        self.pos += len;
    }

    fn next(&mut self) -> Result<(Tok<'a>, SourceSpan), ParseError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.bump(1);
        }
        let span = self.span();
        let Some(&b) = bytes.get(self.pos) else {
            return Ok((Tok::Eof, span));
        };
        let tok = match b {
            b'{' => Tok::LBrace,
            b'}' => Tok::RBrace,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b';' => Tok::Semi,
            b',' => Tok::Comma,
            b'=' => Tok::Eq,
            b if b.is_ascii_alphabetic() || b == b'_' => {
                let len = bytes[self.pos..]
                    .iter()
                    .take_while(|c| c.is_ascii_alphanumeric() || **c == b'_')
                    .count();
                let word = &self.src[self.pos..self.pos + len];
                self.bump(len);
                return Ok((Tok::Ident(word), span));
            }
            _ => {
                let ch = self.src[self.pos..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax { span, message: format!("unexpected character {ch:?}") });
            }
        };
        self.bump(1);
        Ok((tok, span))
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    tok: Tok<'a>,
    span: SourceSpan,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        let mut lex = Lexer::new(src);
        let (tok, span) = lex.next()?;
        Ok(Parser { lex, tok, span })
    }

    fn advance(&mut self) -> Result<(), ParseError> {
        let (tok, span) = self.lex.next()?;
        self.tok = tok;
        self.span = span;
        Ok(())
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError::Syntax { span: self.span, message: format!("expected {wanted}, found {}", self.tok.describe()) }
    }

    fn expect(&mut self, tok: Tok<'static>) -> Result<(), ParseError> {
        if self.tok == tok {
            self.advance()
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), ParseError> {
        match self.tok {
            Tok::Ident(w) if w == word => self.advance(),
            _ => Err(self.unexpected(&format!("`{word}`"))),
        }
    }

    /// A non-reserved identifier.
    fn name(&mut self) -> Result<(&'a str, SourceSpan), ParseError> {
        match self.tok {
            Tok::Ident(w) if !KEYWORDS.contains(&w) => {
                let span = self.span;
                self.advance()?;
                Ok((w, span))
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }
}

/// Parses `.rmf` text into a validated circuit.
pub fn parse(text: &str) -> Result<Circuit, ParseError> {
    let mut p = Parser::new(text)?;
    p.keyword("circuit")?;
    let (cname, _) = p.name()?;
    p.expect(Tok::LBrace)?;
    p.keyword("inputs")?;

    let mut inputs: Vec<String> = Vec::new();
    let mut ids: HashMap<&str, NodeId> = HashMap::new();
    let mut gates: Vec<Gate> = Vec::new();
    let mut spans: Vec<SourceSpan> = Vec::new();
    while p.tok != Tok::Semi {
        let (name, span) = p.name()?;
        if ids.contains_key(name) {
            return Err(ParseError::DuplicateId { span, name: name.into() });
        }
        ids.insert(name, NodeId(gates.len() as u32));
        gates.push(Gate::new(GateKind::Input(inputs.len()), Vec::new()));
        spans.push(span);
        inputs.push(name.into());
    }
    p.expect(Tok::Semi)?;

    let output = loop {
        if matches!(p.tok, Tok::Ident("output")) {
            p.advance()?;
            let (name, span) = p.name()?;
            let id = *ids.get(name).ok_or_else(|| ParseError::UseBeforeDef { span, name: name.into() })?;
            p.expect(Tok::Semi)?;
            break id;
        }
        let (name, def_span) = p.name()?;
        if ids.contains_key(name) {
            return Err(ParseError::DuplicateId { span: def_span, name: name.into() });
        }
        p.expect(Tok::Eq)?;
        let kind_span = p.span;
        let kind = match p.tok {
            Tok::Ident("and") => GateKind::And,
            Tok::Ident("or") => GateKind::Or,
            Tok::Ident("not") => GateKind::Not,
            Tok::Ident("const0") => GateKind::Const(false),
            Tok::Ident("const1") => GateKind::Const(true),
            _ => return Err(p.unexpected("a gate kind (and, or, not, const0, const1)")),
        };
        p.advance()?;
        p.expect(Tok::LParen)?;
        let mut children = Vec::new();
        if p.tok != Tok::RParen {
            loop {
                let (arg, span) = p.name()?;
                let id = *ids.get(arg).ok_or_else(|| ParseError::UseBeforeDef { span, name: arg.into() })?;
                children.push(id);
                if p.tok == Tok::Comma {
                    p.advance()?;
                } else {
                    break;
                }
            }
        }
        p.expect(Tok::RParen)?;
        p.expect(Tok::Semi)?;
        let arity_ok = match kind {
            GateKind::And | GateKind::Or => !children.is_empty(),
            GateKind::Not => children.len() == 1,
            _ => children.is_empty(),
        };
        if !arity_ok {
            return Err(ParseError::Arity { span: kind_span, kind: kind.keyword(), arity: children.len() });
        }
        ids.insert(name, NodeId(gates.len() as u32));
        gates.push(Gate::new(kind, children));
        spans.push(def_span);
    };
    p.expect(Tok::RBrace)?;
    if p.tok != Tok::Eof {
        return Err(p.unexpected("end of input"));
    }

    Circuit::new(cname, inputs, gates, output).map_err(|source| {
        let node = match &source {
            CircuitError::UnreachableNode { node } | CircuitError::CyclicGraph { node } => Some(*node),
            CircuitError::BadArity { node, .. } | CircuitError::DanglingReference { node, .. } => Some(*node),
            _ => None,
        };
        let span = node.and_then(|n| spans.get(n.index()).copied()).unwrap_or_default();
        ParseError::Invalid { span, source }
    })
}

/// Parses raw bytes; invalid UTF-8 is a syntax error.
pub fn parse_bytes(bytes: &[u8]) -> Result<Circuit, ParseError> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse(text),
        Err(e) => {
            let prefix = &bytes[..e.valid_up_to()];
            let line = 1 + prefix.iter().filter(|b| **b == b'\n').count();
            let column = 1 + prefix.iter().rev().take_while(|b| **b != b'\n').count();
            Err(ParseError::Syntax {
                span: SourceSpan { line, column, offset: e.valid_up_to() },
                message: "invalid UTF-8".into(),
            })
        }
    }
}

/// Prefix for generated gate names that cannot collide with input names.
fn gate_prefix(c: &Circuit) -> String {
    let mut prefix = String::from("g");
    let clashes = |p: &str| {
        c.inputs().iter().any(|v| {
            v.strip_prefix(p).is_some_and(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
        })
    };
    while clashes(&prefix) {
        prefix.push('_');
    }
    prefix
}

/// Canonical text of `c`.
pub fn print(c: &Circuit) -> String {
    let n = c.num_inputs();
    let prefix = gate_prefix(c);
    let name_of = |id: NodeId| -> String {
        if id.index() < n {
            c.inputs()[id.index()].clone()
        } else {
            format!("{prefix}{}", id.index() - n + 1)
        }
    };
    let mut out = String::new();
    let _ = writeln!(out, "circuit {} {{", c.name());
    out.push_str("  inputs");
    for v in c.inputs() {
        out.push(' ');
        out.push_str(v);
    }
    out.push_str(";\n");
    for id in c.internal_ids() {
        let g = c.gate(id);
        let args: Vec<String> = g.children.iter().map(|ch| name_of(*ch)).collect();
        let _ = writeln!(out, "  {} = {}({});", name_of(id), g.kind.keyword(), args.join(","));
    }
    let _ = writeln!(out, "  output {};", name_of(c.output()));
    out.push_str("}\n");
    out
}

/// True when `s` can be used as a circuit, input, or gate name.
pub fn is_valid_name(s: &str) -> bool {
    is_identifier(s) && !KEYWORDS.contains(&s)
}
