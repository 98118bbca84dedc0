//! Text syntax for words, ring elements, trees and group presentations.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | atom ('^' ['-'] INT)?
//! atom  := INT | IDENT | '(' expr (',' expr)* ')'
//!        | 'E' '[' INT ',' INT ']' '(' expr ')'
//!        | 'Y' '[' INT ',' INT ',' INT ']' '(' expr ';' expr ';' expr ')'
//! ```
//!
//! `(g, h)` abbreviates `Y[1,1,1](1; g; h)` and `(a, b, c)` abbreviates
//! `Y[1,1,1](a; b; c)`. Tree decorations may be ring elements; they are
//! expanded multilinearly.

mod lexer;
mod parser;

use std::fmt;

use parser::{Expr, Parser};

use crate::error::{Error, Result};
use crate::group::{Group, GroupSpec, Word};
use crate::ring::RingElem;
use crate::tree::{T0Mode, T1Mode, Tree0Elem, Tree1Elem, TreeModule};

use lexer::Tok;

/// Where an expression is interpreted.
#[derive(Debug, Clone)]
pub struct ParseContext {
    pub group: Group,
    pub labels: usize,
    pub t0_mode: T0Mode,
    pub t1_mode: T1Mode,
}

impl ParseContext {
    pub fn new(group: &Group) -> ParseContext {
        ParseContext { group: group.clone(), labels: 1, t0_mode: T0Mode::Plain, t1_mode: T1Mode::Plain }
    }

    pub fn with_labels(mut self, labels: usize) -> ParseContext {
        self.labels = labels;
        self
    }

    pub fn with_t0_mode(mut self, mode: T0Mode) -> ParseContext {
        self.t0_mode = mode;
        self
    }

    pub fn with_t1_mode(mut self, mode: T1Mode) -> ParseContext {
        self.t1_mode = mode;
        self
    }
}

/// A parsed and canonicalized value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Word(Word),
    Ring(RingElem),
    Tree0(Tree0Elem),
    Tree1(Tree1Elem),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Word(_) => "word",
            Value::Ring(_) => "ring element",
            Value::Tree0(_) => "order-0 tree",
            Value::Tree1(_) => "order-1 tree",
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Word(w) => write!(f, "{}", w),
            Value::Ring(r) => write!(f, "{}", r),
            Value::Tree0(t) => write!(f, "{}", t),
            Value::Tree1(t) => write!(f, "{}", t),
        }
    }
}

enum V {
    Ring(RingElem),
    T0(Tree0Elem),
    T1(Tree1Elem),
}

impl V {
    fn kind(&self) -> &'static str {
        match self {
            V::Ring(_) => "ring element",
            V::T0(_) => "order-0 tree",
            V::T1(_) => "order-1 tree",
        }
    }
}

fn mismatch<T>(expected: &str, found: &str) -> Result<T> {
    Err(Error::TypeMismatch { expected: expected.into(), found: found.into() })
}

struct Eval<'a> {
    ctx: &'a ParseContext,
}

impl Eval<'_> {
    fn ring(&self, e: &Expr) -> Result<RingElem> {
        match self.eval(e)? {
            V::Ring(r) => Ok(r),
            v => mismatch("ring element", v.kind()),
        }
    }

    fn eval(&self, e: &Expr) -> Result<V> {
        let g = &self.ctx.group;
        Ok(match e {
            Expr::Int(n) => V::Ring(RingElem::constant(g, *n)),
            Expr::Gen(name, pos) => {
                let idx = g.gen_index(name).map_err(|_| Error::Syntax {
                    pos: *pos,
                    msg: format!("unknown generator `{}`", name),
                })?;
                V::Ring(RingElem::monomial(g.generator(idx), 1))
            }
            Expr::Neg(a) => match self.eval(a)? {
                V::Ring(r) => V::Ring(-&r),
                V::T0(t) => V::T0(t.negated()),
                V::T1(t) => V::T1(t.negated()),
            },
            Expr::Add(a, b) => self.add(self.eval(a)?, self.eval(b)?, 1)?,
            Expr::Sub(a, b) => self.add(self.eval(a)?, self.eval(b)?, -1)?,
            Expr::Mul(a, b) => match (self.eval(a)?, self.eval(b)?) {
                (V::Ring(x), V::Ring(y)) => V::Ring(&x * &y),
                (V::Ring(c), t) | (t, V::Ring(c)) => {
                    let Some(c) = c.as_constant() else { return mismatch("integer coefficient", "ring element") };
                    match t {
                        V::T0(t) => V::T0(t.scale(c)),
                        V::T1(t) => V::T1(t.scale(c)),
                        V::Ring(_) => unreachable!(),
                    }
                }
                (x, _) => return mismatch("integer coefficient", x.kind()),
            },
            Expr::Pow(a, n, pos) => {
                let r = self.ring(a)?;
                if let Some(w) = r.as_word() {
                    V::Ring(RingElem::monomial(w.pow(*n), 1))
                } else if *n >= 0 {
                    let mut acc = RingElem::constant(g, 1);
                    for _ in 0..*n {
                        acc = &acc * &r;
                    }
                    V::Ring(acc)
                } else {
                    return Err(Error::Syntax { pos: *pos, msg: "negative power of a non-monomial".into() });
                }
            }
            Expr::Tuple(items, pos) => {
                let mut decos: Vec<RingElem> = items.iter().map(|x| self.ring(x)).collect::<Result<_>>()?;
                match decos.len() {
                    2 => decos.insert(0, RingElem::constant(g, 1)),
                    3 => {}
                    _ => return Err(Error::Syntax { pos: *pos, msg: "tuples have two or three entries".into() }),
                }
                self.tree1([1, 1, 1], &decos)?
            }
            Expr::Y { labels, decos } => {
                let decos: Vec<RingElem> = decos.iter().map(|x| self.ring(x)).collect::<Result<_>>()?;
                self.tree1(*labels, &decos)?
            }
            Expr::Edge { i, j, deco } => {
                let r = self.ring(deco)?;
                let mut t = Tree0Elem::zero(g, self.ctx.labels, self.ctx.t0_mode.clone());
                for (w, c) in r.terms() {
                    t.add_edge(*i, *j, w, c)?;
                }
                V::T0(t)
            }
        })
    }

    fn tree1(&self, labels: [usize; 3], decos: &[RingElem]) -> Result<V> {
        let mut t = Tree1Elem::zero(&self.ctx.group, self.ctx.labels, self.ctx.t1_mode.clone());
        t.add_ring_tree(labels, [&decos[0], &decos[1], &decos[2]], 1)?;
        Ok(V::T1(t))
    }

    fn add(&self, a: V, b: V, sign: i64) -> Result<V> {
        Ok(match (a, b) {
            (V::Ring(x), V::Ring(y)) => V::Ring(&x + &y.scale(sign)),
            (V::T0(x), V::T0(y)) => V::T0(x.try_add(&y.scale(sign))?),
            (V::T1(x), V::T1(y)) => V::T1(x.try_add(&y.scale(sign))?),
            (V::Ring(z), t) if z.is_zero() => match t {
                V::T0(t) => V::T0(t.scale(sign)),
                V::T1(t) => V::T1(t.scale(sign)),
                V::Ring(_) => unreachable!(),
            },
            (t, V::Ring(z)) if z.is_zero() => t,
            (x, y) => return mismatch(x.kind(), y.kind()),
        })
    }
}

/// Parses and canonicalizes an expression in the given context.
pub fn parse_expression(ctx: &ParseContext, text: &str) -> Result<Value> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(match (Eval { ctx }).eval(&e)? {
        V::Ring(r) => match r.as_word() {
            Some(w) => Value::Word(w),
            None => Value::Ring(r),
        },
        V::T0(t) => Value::Tree0(t),
        V::T1(t) => Value::Tree1(t),
    })
}

pub fn parse_word(group: &Group, text: &str) -> Result<Word> {
    match parse_expression(&ParseContext::new(group), text)? {
        Value::Word(w) => Ok(w),
        v => mismatch("word", v.kind()),
    }
}

pub fn parse_ring(group: &Group, text: &str) -> Result<RingElem> {
    match parse_expression(&ParseContext::new(group), text)? {
        Value::Word(w) => Ok(RingElem::monomial(w, 1)),
        Value::Ring(r) => Ok(r),
        v => mismatch("ring element", v.kind()),
    }
}

pub fn parse_tree0(ctx: &ParseContext, text: &str) -> Result<Tree0Elem> {
    match parse_expression(ctx, text)? {
        Value::Tree0(t) => Ok(t),
        Value::Ring(r) if r.is_zero() => Ok(Tree0Elem::zero(&ctx.group, ctx.labels, ctx.t0_mode.clone())),
        v => mismatch("order-0 tree", v.kind()),
    }
}

pub fn parse_tree1(ctx: &ParseContext, text: &str) -> Result<Tree1Elem> {
    match parse_expression(ctx, text)? {
        Value::Tree1(t) => Ok(t),
        Value::Ring(r) if r.is_zero() => Ok(Tree1Elem::zero(&ctx.group, ctx.labels, ctx.t1_mode.clone())),
        v => mismatch("order-1 tree", v.kind()),
    }
}

/// Parses a presentation such as `klein(a, f)`,
/// `direct_z(free(x, y), f)` or `free_product(M1: free(g1, g2), X: cyclic(x))`.
pub fn parse_group(text: &str) -> Result<Group> {
    let mut p = Parser::new(text)?;
    let spec = group_spec(&mut p)?;
    p.finish()?;
    Group::new(spec)
}

fn names(p: &mut Parser) -> Result<Vec<String>> {
    let mut v = vec![p.ident("a generator name")?];
    while *p.peek() == Tok::Comma {
        p.bump();
        v.push(p.ident("a generator name")?);
    }
    Ok(v)
}

fn group_spec(p: &mut Parser) -> Result<GroupSpec> {
    let pos = p.pos();
    let kind = p.ident("a group kind")?;
    p.expect(Tok::LParen, "`(`")?;
    let spec = match kind.as_str() {
        "cyclic" => GroupSpec::cyclic(&p.ident("a generator name")?),
        "free_abelian" | "free" | "klein" => {
            let n = names(p)?;
            let refs: Vec<&str> = n.iter().map(|s| s.as_str()).collect();
            match kind.as_str() {
                "free_abelian" => GroupSpec::free_abelian(&refs),
                "free" => GroupSpec::free(&refs),
                _ if refs.len() == 2 => GroupSpec::klein(refs[0], refs[1]),
                _ => return Err(Error::Syntax { pos, msg: "klein takes two generator names".into() }),
            }
        }
        "direct_z" => {
            let base = group_spec(p)?;
            p.expect(Tok::Comma, "`,`")?;
            GroupSpec::direct_product_with_z(base, &p.ident("a fiber generator name")?)
        }
        "free_product" => {
            let mut factors = Vec::new();
            loop {
                factors.push(factor(p)?);
                if *p.peek() != Tok::Comma {
                    break;
                }
                p.bump();
            }
            GroupSpec::free_product(factors)
        }
        other => return Err(Error::Syntax { pos, msg: format!("unknown group kind `{}`", other) }),
    };
    p.expect(Tok::RParen, "`)`")?;
    Ok(spec)
}

// `[NAME ':'] group`
fn factor(p: &mut Parser) -> Result<GroupSpec> {
    if matches!(p.peek(), Tok::Ident(_)) && *p.peek2() == Tok::Colon {
        let name = p.ident("a factor name")?;
        p.bump();
        return Ok(group_spec(p)?.named(&name));
    }
    group_spec(p)
}
