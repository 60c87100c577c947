//! Text syntax for elements, rays, addresses and words.
//!
//! A program is a sequence of bindings `name = expr;` followed by one
//! expression. Expressions combine literals with `*`, `inv(..)` and
//! `comm(a, b)` (which is `a * b * inv(a) * inv(b)`). Rendering produces the
//! same literal syntax, so canonical output parses back to equal values.
//!
//! A bare word is looked up as a binding first and read as an address
//! otherwise, so `e` and `01` are addresses unless bound.

use std::collections::BTreeMap;
use std::fmt;

use crate::boundary::Ray;
use crate::elements::{Factor, Generator, GroupWord, Portrait, TreePair};
use crate::error::Error;
use crate::higman_thompson::{Edge, ForestAddress, HtElement};
use crate::tree::{Address, Degree, Shape};

/// What went wrong, and where (byte offset into the input).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    Syntax { pos: usize, expected: Vec<String>, found: String },
    Semantic { pos: usize, literal: String, error: Error },
    Type { pos: usize, message: String },
    Unbound { pos: usize, name: String },
}

impl ParseError {
    pub fn pos(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::Semantic { pos, .. }
            | ParseError::Type { pos, .. }
            | ParseError::Unbound { pos, .. } => *pos,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { pos, expected, found } => {
                write!(f, "syntax error at column {}: expected {}, found {found}", pos + 1, expected.join(" or "))
            }
            ParseError::Semantic { pos, literal, error } => {
                write!(f, "invalid literal `{literal}` at column {}: {error}", pos + 1)
            }
            ParseError::Type { pos, message } => write!(f, "type error at column {}: {message}", pos + 1),
            ParseError::Unbound { pos, name } => write!(f, "unbound name or invalid address `{name}` at column {}", pos + 1),
        }
    }
}

impl std::error::Error for ParseError {}

pub type ParseResult<T> = std::result::Result<T, ParseError>;

/// Session parameters: the tree degree and the number of forest roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Context {
    pub q: Degree,
    pub r: u32,
}

impl Context {
    pub fn new(q: Degree, r: u32) -> Context {
        Context { q, r }
    }

    pub fn tree(&self) -> Shape {
        Shape::tree(self.q)
    }

    pub fn forest(&self) -> crate::error::Result<Shape> {
        Shape::forest(self.q, self.r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Pair(TreePair),
    Portrait(Portrait),
    Ht(HtElement),
    Ray(Ray),
    Address(Address),
    Forest(ForestAddress),
    Edge(Edge),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Pair(_) => "tree pair",
            Value::Portrait(_) => "portrait",
            Value::Ht(_) => "forest element",
            Value::Ray(_) => "ray",
            Value::Address(_) => "address",
            Value::Forest(_) => "forest address",
            Value::Edge(_) => "edge",
        }
    }

    /// Tree-pair view of a tree element (portraits are converted).
    pub fn as_pair(&self) -> Option<TreePair> {
        match self {
            Value::Pair(t) => Some(t.clone()),
            Value::Portrait(p) => Some(p.to_tree_pair()),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Pair(t) => write!(f, "{t}"),
            Value::Portrait(p) => write!(f, "{p}"),
            Value::Ht(e) => write!(f, "{e}"),
            Value::Ray(r) => write!(f, "{r}"),
            Value::Address(a) => write!(f, "{a}"),
            Value::Forest(a) => write!(f, "{a}"),
            Value::Edge(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Literal(Value),
    Name(String),
    Mul(Box<Expr>, Box<Expr>),
    Inv(Box<Expr>),
    Comm(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub pos: usize,
    pub kind: ExprKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    pub bindings: Vec<(String, Expr)>,
    pub body: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Sym(char),
    Arrow,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(src: &str) -> ParseResult<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_alphanumeric() || c == '_' {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    end = j + d.len_utf8();
                    chars.next();
                } else {
                    break;
                }
            }
            out.push((i, Tok::Word(src[i..end].to_string())));
        } else if c == '-' {
            chars.next();
            match chars.next() {
                Some((_, '>')) => out.push((i, Tok::Arrow)),
                _ => {
                    return Err(ParseError::Syntax { pos: i, expected: vec!["`->`".into()], found: "`-`".into() })
                }
            }
        } else if "{}[]()<>,;:.*=".contains(c) {
            chars.next();
            out.push((i, Tok::Sym(c)));
        } else {
            return Err(ParseError::Syntax { pos: i, expected: vec!["a token".into()], found: format!("`{c}`") });
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

const KEYWORDS: &[&str] = &["tp", "pt", "ht", "ray", "edge", "inv", "comm"];

fn is_name(w: &str) -> bool {
    w.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') && !KEYWORDS.contains(&w)
}

fn forest_tree_index(w: &str) -> Option<u8> {
    let digits = w.strip_prefix('t')?;
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(usize, Tok)>,
    i: usize,
    ctx: Context,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].1
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.i + k).min(self.toks.len() - 1)].1
    }

    fn pos(&self) -> usize {
        self.toks[self.i].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> ParseResult<T> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        })
    }

    fn sym(&mut self, c: char) -> ParseResult<()> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.fail(&[&format!("`{c}`")])
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn arrow(&mut self) -> ParseResult<()> {
        if *self.peek() == Tok::Arrow {
            self.bump();
            Ok(())
        } else {
            self.fail(&["`->`"])
        }
    }

    fn word(&mut self, what: &str) -> ParseResult<(usize, String)> {
        match self.peek().clone() {
            Tok::Word(w) => {
                let p = self.pos();
                self.bump();
                Ok((p, w))
            }
            _ => self.fail(&[what]),
        }
    }

    fn semantic(&self, start: usize, error: Error) -> ParseError {
        let end = self.toks[self.i.saturating_sub(1)].0 + 1;
        let literal = self.src.get(start..end.max(start)).unwrap_or("").to_string();
        ParseError::Semantic { pos: start, literal, error }
    }

    fn program(&mut self) -> ParseResult<Program> {
        let mut bindings = Vec::new();
        while let (Tok::Word(w), Tok::Sym('=')) = (self.peek().clone(), self.peek_at(1).clone()) {
            if !is_name(&w) {
                return self.fail(&["a name"]);
            }
            self.bump();
            self.bump();
            let e = self.expr()?;
            self.sym(';')?;
            bindings.push((w, e));
        }
        let body = self.expr()?;
        if *self.peek() != Tok::End {
            return self.fail(&["`*`", "end of input"]);
        }
        Ok(Program { bindings, body })
    }

    fn expr(&mut self) -> ParseResult<Expr> {
        let mut lhs = self.term()?;
        while self.eat_sym('*') {
            let rhs = self.term()?;
            lhs = Expr { pos: lhs.pos, kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)) };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> ParseResult<Expr> {
        let pos = self.pos();
        let w = match self.peek().clone() {
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.sym(')')?;
                return Ok(e);
            }
            Tok::Word(w) => w,
            _ => return self.fail(&["an expression"]),
        };
        let next = self.peek_at(1).clone();
        let kind = match (w.as_str(), next) {
            ("inv", Tok::Sym('(')) => {
                self.bump();
                self.bump();
                let e = self.expr()?;
                self.sym(')')?;
                ExprKind::Inv(Box::new(e))
            }
            ("comm", Tok::Sym('(')) => {
                self.bump();
                self.bump();
                let a = self.expr()?;
                self.sym(',')?;
                let b = self.expr()?;
                self.sym(')')?;
                ExprKind::Comm(Box::new(a), Box::new(b))
            }
            ("tp", Tok::Sym('{')) => ExprKind::Literal(self.tree_pair()?),
            ("pt", Tok::Sym('{')) => ExprKind::Literal(self.portrait()?),
            ("ht", Tok::Sym('[')) => ExprKind::Literal(self.ht()?),
            ("ray", Tok::Sym('{')) => ExprKind::Literal(self.ray()?),
            ("edge", Tok::Sym('(')) => ExprKind::Literal(self.edge()?),
            (_, Tok::Sym(':')) if forest_tree_index(&w).is_some() => {
                let shape = self.ctx.forest().map_err(|e| self.semantic(pos, e))?;
                ExprKind::Literal(Value::Forest(self.forest_address(&shape)?))
            }
            _ => {
                self.bump();
                ExprKind::Name(w)
            }
        };
        Ok(Expr { pos, kind })
    }

    fn address(&mut self, shape: &Shape) -> ParseResult<Address> {
        let (p, w) = self.word("an address")?;
        Address::parse(&w, shape).map_err(|e| ParseError::Semantic { pos: p, literal: w, error: e })
    }

    fn address_list(&mut self, shape: &Shape) -> ParseResult<Vec<Address>> {
        let mut out = vec![self.address(shape)?];
        while self.eat_sym(',') {
            out.push(self.address(shape)?);
        }
        Ok(out)
    }

    fn tree_pair(&mut self) -> ParseResult<Value> {
        let start = self.pos();
        self.bump();
        self.sym('{')?;
        let shape = self.ctx.tree();
        let dom = self.address_list(&shape)?;
        self.arrow()?;
        let img = self.address_list(&shape)?;
        self.sym('}')?;
        TreePair::new(shape, dom, img).map(|t| Value::Pair(t.reduce())).map_err(|e| self.semantic(start, e))
    }

    fn number(&mut self) -> ParseResult<u32> {
        let (p, w) = self.word("a number")?;
        w.parse().map_err(|_| ParseError::Syntax { pos: p, expected: vec!["a number".into()], found: format!("`{w}`") })
    }

    fn portrait(&mut self) -> ParseResult<Value> {
        let start = self.pos();
        self.bump();
        self.sym('{')?;
        let shape = self.ctx.tree();
        let mut entries = Vec::new();
        if !self.eat_sym('}') {
            loop {
                let u = self.address(&shape)?;
                self.sym(':')?;
                self.sym('(')?;
                let mut perm = Vec::new();
                if *self.peek() != Tok::Sym(')') {
                    loop {
                        let n = self.number()?;
                        perm.push(u8::try_from(n).unwrap_or(u8::MAX));
                        if !self.eat_sym(',') {
                            break;
                        }
                    }
                }
                self.sym(')')?;
                entries.push((u, perm));
                if !self.eat_sym(';') {
                    break;
                }
            }
            self.sym('}')?;
        }
        Portrait::new(shape, entries).map(Value::Portrait).map_err(|e| self.semantic(start, e))
    }

    fn forest_address(&mut self, shape: &Shape) -> ParseResult<ForestAddress> {
        let (p, head) = self.word("a forest address")?;
        let tree = forest_tree_index(&head)
            .ok_or_else(|| ParseError::Syntax { pos: p, expected: vec!["`t<k>:`".into()], found: format!("`{head}`") })?;
        self.sym(':')?;
        let letters = match self.peek().clone() {
            Tok::Word(w) => {
                self.bump();
                match Address::parse_unchecked(&w) {
                    Some(a) if w != "e" => a.into_letters(),
                    _ => {
                        return Err(ParseError::Semantic {
                            pos: p,
                            literal: format!("{head}:{w}"),
                            error: Error::InvalidAddress(w),
                        })
                    }
                }
            }
            _ => Vec::new(),
        };
        ForestAddress::new(shape, tree, letters.clone()).map_err(|e| ParseError::Semantic {
            pos: p,
            literal: format!("{head}:{}", Address::from_letters(letters)),
            error: e,
        })
    }

    fn forest_list(&mut self, shape: &Shape) -> ParseResult<Vec<ForestAddress>> {
        let mut out = vec![self.forest_address(shape)?];
        while self.eat_sym(',') {
            out.push(self.forest_address(shape)?);
        }
        Ok(out)
    }

    fn ht(&mut self) -> ParseResult<Value> {
        let start = self.pos();
        self.bump();
        self.sym('[')?;
        let q = self.number()?;
        self.sym(',')?;
        let r = self.number()?;
        self.sym(']')?;
        if q != self.ctx.q.get() as u32 || r != self.ctx.r {
            return Err(self.semantic(start, Error::ShapeMismatch));
        }
        let shape = self.ctx.forest().map_err(|e| self.semantic(start, e))?;
        self.sym('{')?;
        let dom = self.forest_list(&shape)?;
        self.arrow()?;
        let img = self.forest_list(&shape)?;
        self.sym('}')?;
        HtElement::new(shape, dom, img).map(|e| Value::Ht(e.reduce())).map_err(|e| self.semantic(start, e))
    }

    fn ray(&mut self) -> ParseResult<Value> {
        let start = self.pos();
        self.bump();
        self.sym('{')?;
        let word_letters = |p: &Parser, w: &str| -> ParseResult<Vec<u8>> {
            match Address::parse_unchecked(w) {
                Some(a) if w != "e" => Ok(a.into_letters()),
                _ => Err(p.semantic(start, Error::InvalidRay(format!("bad word `{w}`")))),
            }
        };
        let pre = match self.peek().clone() {
            Tok::Word(w) => {
                self.bump();
                word_letters(self, &w)?
            }
            _ => Vec::new(),
        };
        self.sym('.')?;
        self.sym('(')?;
        let per = match self.peek().clone() {
            Tok::Word(w) => {
                self.bump();
                word_letters(self, &w)?
            }
            _ => Vec::new(),
        };
        self.sym(')')?;
        self.sym('}')?;
        Ray::new(&self.ctx.tree(), pre, per).map(Value::Ray).map_err(|e| self.semantic(start, e))
    }

    fn edge(&mut self) -> ParseResult<Value> {
        let start = self.pos();
        self.bump();
        self.sym('(')?;
        let shape = self.ctx.tree();
        let u = self.address(&shape)?;
        self.sym(',')?;
        let w = self.address(&shape)?;
        self.sym(')')?;
        Edge::new(&shape, u, w).map(Value::Edge).map_err(|e| self.semantic(start, e))
    }
}

/// Parses a program against the session parameters.
pub fn parse(src: &str, ctx: Context) -> ParseResult<Program> {
    let toks = lex(src)?;
    Parser { src, toks, i: 0, ctx }.program()
}

/// Evaluates bindings in order, then the body.
pub struct Evaluator {
    ctx: Context,
    env: BTreeMap<String, (Expr, Value)>,
}

impl Evaluator {
    pub fn new(ctx: Context) -> Evaluator {
        Evaluator { ctx, env: BTreeMap::new() }
    }

    pub fn run(&mut self, program: &Program) -> ParseResult<Value> {
        for (name, e) in &program.bindings {
            let v = self.eval(e)?;
            self.env.insert(name.clone(), (e.clone(), v));
        }
        self.eval(&program.body)
    }

    fn mismatch(pos: usize, op: &str, a: &Value, b: &Value) -> ParseError {
        ParseError::Type { pos, message: format!("cannot apply {op} to {} and {}", a.kind(), b.kind()) }
    }

    fn mul(pos: usize, a: Value, b: Value) -> ParseResult<Value> {
        let sem = |e: Error| ParseError::Semantic { pos, literal: "*".into(), error: e };
        match (&a, &b) {
            (Value::Portrait(x), Value::Portrait(y)) => x.compose(y).map(Value::Portrait).map_err(sem),
            (Value::Ht(x), Value::Ht(y)) => x.compose(y).map(Value::Ht).map_err(sem),
            _ => match (a.as_pair(), b.as_pair()) {
                (Some(x), Some(y)) => x.compose(&y).map(Value::Pair).map_err(sem),
                _ => Err(Self::mismatch(pos, "`*`", &a, &b)),
            },
        }
    }

    fn inv(pos: usize, a: Value) -> ParseResult<Value> {
        match a {
            Value::Pair(t) => Ok(Value::Pair(t.inverse())),
            Value::Portrait(p) => Ok(Value::Portrait(p.inverse())),
            Value::Ht(e) => Ok(Value::Ht(e.inverse())),
            other => Err(ParseError::Type { pos, message: format!("cannot invert a {}", other.kind()) }),
        }
    }

    pub fn eval(&self, e: &Expr) -> ParseResult<Value> {
        match &e.kind {
            ExprKind::Literal(v) => Ok(v.clone()),
            ExprKind::Name(n) => self.lookup(e.pos, n),
            ExprKind::Mul(a, b) => Self::mul(e.pos, self.eval(a)?, self.eval(b)?),
            ExprKind::Inv(a) => Self::inv(e.pos, self.eval(a)?),
            ExprKind::Comm(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                let xy = Self::mul(e.pos, x.clone(), y.clone())?;
                let xyx = Self::mul(e.pos, xy, Self::inv(e.pos, x)?)?;
                Self::mul(e.pos, xyx, Self::inv(e.pos, y)?)
            }
        }
    }

    fn lookup(&self, pos: usize, name: &str) -> ParseResult<Value> {
        if let Some((_, v)) = self.env.get(name) {
            return Ok(v.clone());
        }
        Address::parse(name, &self.ctx.tree())
            .map(Value::Address)
            .map_err(|_| ParseError::Unbound { pos, name: name.to_string() })
    }

    /// The expression as a word over tree-pair and portrait generators.
    pub fn word(&self, e: &Expr) -> ParseResult<GroupWord> {
        let mut factors = Vec::new();
        self.flatten(e, false, &mut factors)?;
        GroupWord::new(self.ctx.tree(), factors)
            .map_err(|err| ParseError::Semantic { pos: e.pos, literal: String::new(), error: err })
    }

    fn flatten(&self, e: &Expr, inverse: bool, out: &mut Vec<Factor>) -> ParseResult<()> {
        match &e.kind {
            ExprKind::Literal(_) => {
                let g = match self.eval(e)? {
                    Value::Pair(t) => Generator::Pair(t),
                    Value::Portrait(p) => Generator::Portrait(p),
                    other => {
                        return Err(ParseError::Type { pos: e.pos, message: format!("a {} is not a generator", other.kind()) })
                    }
                };
                out.push(Factor::new(g, inverse));
            }
            ExprKind::Name(n) => match self.env.get(n) {
                Some((bound, _)) => self.flatten(bound, inverse, out)?,
                None => return Err(ParseError::Unbound { pos: e.pos, name: n.clone() }),
            },
            ExprKind::Mul(a, b) => {
                let (first, second) = if inverse { (b, a) } else { (a, b) };
                self.flatten(first, inverse, out)?;
                self.flatten(second, inverse, out)?;
            }
            ExprKind::Inv(a) => self.flatten(a, !inverse, out)?,
            ExprKind::Comm(a, b) => {
                // (a b a⁻¹ b⁻¹)⁻¹ = b a b⁻¹ a⁻¹
                let (x, y) = if inverse { (b, a) } else { (a, b) };
                self.flatten(x, false, out)?;
                self.flatten(y, false, out)?;
                self.flatten(x, true, out)?;
                self.flatten(y, true, out)?;
            }
        }
        Ok(())
    }
}

/// Parses and evaluates a program.
pub fn eval_str(src: &str, ctx: Context) -> ParseResult<Value> {
    let program = parse(src, ctx)?;
    Evaluator::new(ctx).run(&program)
}

/// Parses a program and returns its body as a word.
pub fn word_str(src: &str, ctx: Context) -> ParseResult<GroupWord> {
    let program = parse(src, ctx)?;
    let mut ev = Evaluator::new(ctx);
    ev.run(&program)?;
    ev.word(&program.body)
}

/// Canonical text of a value.
pub fn render(v: &Value) -> String {
    v.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elements::swap_balls;

    fn ctx(q: u32) -> Context {
        Context::new(Degree::new(q).unwrap(), 2)
    }

    fn a(s: &str) -> Address {
        Address::parse_unchecked(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        let v = eval_str("tp{0,1,2 -> 1,0,2}", ctx(2)).unwrap();
        assert_eq!(v, Value::Pair(swap_balls(ctx(2).tree(), &a("0"), &a("1")).unwrap()));
        let c = eval_str("a = tp{0,1,2->1,0,2}; b = tp{0,1,2->0,2,1}; comm(a,b)", ctx(2)).unwrap();
        let d = eval_str("a = tp{0,1,2->1,0,2}; b = tp{0,1,2->0,2,1}; a*b*inv(a)*inv(b)", ctx(2)).unwrap();
        assert_eq!(c, d);
        let err = eval_str("tp{0,1 -> 1,0}", ctx(2)).unwrap_err();
        assert!(matches!(err, ParseError::Semantic { pos: 0, error: Error::NotAntichain(_), .. }), "{err}");
    }

    #[test]
    fn render_examples() {
        let id = eval_str("tp{e -> e}", ctx(2)).unwrap();
        assert_eq!(render(&id), "tp{e -> e}");
        assert_eq!(crate::boundary::LogDistance::Exp(2).to_string(), "e^-2");
        assert_eq!(crate::boundary::LogDistance::Zero.to_string(), "0");
    }

    #[test]
    fn literals() {
        let c = ctx(2);
        assert_eq!(render(&eval_str("ray{01.(0)}", c).unwrap()), "ray{01.(0)}");
        assert_eq!(render(&eval_str("ray{.(0101)}", c).unwrap()), "ray{.(01)}");
        assert_eq!(render(&eval_str("pt{e:(1,0,2); 1:(1,0)}", c).unwrap()), "pt{e:(1,0,2); 1:(1,0)}");
        assert_eq!(render(&eval_str("pt{}", c).unwrap()), "pt{}");
        assert_eq!(render(&eval_str("edge(0,e)", c).unwrap()), "edge(e,0)");
        assert_eq!(render(&eval_str("t2:01", c).unwrap()), "t2:01");
        assert_eq!(render(&eval_str("t1:", c).unwrap()), "t1:");
        assert_eq!(render(&eval_str("ht[2,2]{t1:,t2: -> t2:,t1:}", c).unwrap()), "ht[2,2]{t1:,t2: -> t2:,t1:}");
        assert_eq!(render(&eval_str("201", c).unwrap()), "201");
    }

    #[test]
    fn errors() {
        let c = ctx(2);
        assert!(matches!(parse("tp{0,1,2 1,0,2}", c), Err(ParseError::Syntax { pos: 9, .. })));
        assert!(matches!(eval_str("ray{0.()}", c), Err(ParseError::Semantic { error: Error::InvalidRay(_), .. })));
        assert!(matches!(eval_str("tp{0,1,2->0,1,3}", c), Err(ParseError::Semantic { error: Error::InvalidAddress(_), .. })));
        assert!(matches!(eval_str("ht[3,2]{t1: -> t1:}", c), Err(ParseError::Semantic { error: Error::ShapeMismatch, .. })));
        assert!(matches!(eval_str("x * tp{e->e}", c), Err(ParseError::Unbound { .. })));
        assert!(matches!(eval_str("ray{.(0)} * tp{e->e}", c), Err(ParseError::Type { .. })));
        assert!(matches!(eval_str("edge(0,1)", c), Err(ParseError::Semantic { error: Error::NotAdjacent(_, _), .. })));
        assert!(parse("tp{e->e} junk", c).is_err());
    }

    #[test]
    fn words() {
        let c = ctx(2);
        let w = word_str("a = tp{0,1,2->1,0,2}; p = pt{0:(1,0)}; inv(a * p) * comm(a, p)", c).unwrap();
        assert_eq!(w.factors().len(), 6);
        let v = eval_str("a = tp{0,1,2->1,0,2}; p = pt{0:(1,0)}; inv(a * p) * comm(a, p)", c).unwrap();
        assert_eq!(Value::Pair(w.normal_form()), v);
    }
}
