use super::lexer::{lex, Tok, Token};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub(crate) enum Expr {
    Int(i64),
    Gen(String, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64, usize),
    Tuple(Vec<Expr>, usize),
    Edge { i: usize, j: usize, deco: Box<Expr> },
    Y { labels: [usize; 3], decos: Vec<Expr> },
}

pub(crate) struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    pub fn new(text: &str) -> Result<Parser> {
        Ok(Parser { toks: lex(text)?, at: 0 })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    pub fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].tok
    }

    pub fn pos(&self) -> usize {
        self.toks[self.at].pos
    }

    pub fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].tok.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    pub fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    pub fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {}", what))
        }
    }

    pub fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.err(format!("expected {}", what)),
        }
    }

    fn int(&mut self) -> Result<i64> {
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(if neg { -n } else { n })
            }
            _ => self.err("expected an integer"),
        }
    }

    fn label(&mut self) -> Result<usize> {
        match self.peek().clone() {
            Tok::Int(n) if n > 0 => {
                self.bump();
                Ok(n as usize)
            }
            _ => self.err("expected a positive label"),
        }
    }

    pub fn finish(&mut self) -> Result<()> {
        match self.peek() {
            Tok::Eof => Ok(()),
            _ => self.err("unexpected trailing input"),
        }
    }

    pub fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            let pos = self.pos();
            self.bump();
            let e = self.int()?;
            return Ok(Expr::Pow(Box::new(base), e, pos));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Ident(s) if s == "E" && *self.peek2() == Tok::LBrack => {
                self.bump();
                self.bump();
                let i = self.label()?;
                self.expect(Tok::Comma, "`,`")?;
                let j = self.label()?;
                self.expect(Tok::RBrack, "`]`")?;
                self.expect(Tok::LParen, "`(`")?;
                let deco = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Edge { i, j, deco: Box::new(deco) })
            }
            Tok::Ident(s) if s == "Y" && *self.peek2() == Tok::LBrack => {
                self.bump();
                self.bump();
                let i = self.label()?;
                self.expect(Tok::Comma, "`,`")?;
                let j = self.label()?;
                self.expect(Tok::Comma, "`,`")?;
                let k = self.label()?;
                self.expect(Tok::RBrack, "`]`")?;
                self.expect(Tok::LParen, "`(`")?;
                let a = self.expr()?;
                self.expect(Tok::Semi, "`;`")?;
                let b = self.expr()?;
                self.expect(Tok::Semi, "`;`")?;
                let c = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Y { labels: [i, j, k], decos: vec![a, b, c] })
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Expr::Gen(s, pos))
            }
            Tok::LParen => {
                self.bump();
                let mut items = vec![self.expr()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    items.push(self.expr()?);
                }
                self.expect(Tok::RParen, "`)`")?;
                if items.len() == 1 {
                    Ok(items.pop().unwrap())
                } else {
                    Ok(Expr::Tuple(items, pos))
                }
            }
            Tok::Eof => self.err("unexpected end of input"),
            t => self.err(format!("unexpected token {:?}", t)),
        }
    }
}
