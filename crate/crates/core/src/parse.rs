//! Recursive-descent parser for the term language.
//!
//! ```text
//! term    := nat | "w" | "w*" | "k" | "k*" | "Q" | "Qk" | "ac(" nat ")" | "ac(w)"
//!          | "ord(" cnf ")" | "fin(" nat ";" pairs ")" | "inv(" term ")"
//!          | "sum(" term "," term ")" | "lsum(" poset ";" term {"," term} ")"
//!          | "limsum(" term "," term ["," address] ")" | IDENT
//! poset   := nat | "ac(" nat ")" | "fin(" nat ";" pairs ")"
//! pairs   := [ nat "<" nat {"<" nat} {"," ...} ]
//! address := nat | ["-"] nat ["/" nat] | cnf | "(" address "," address ")"
//!          | "#" nat ":" address | "<" address ["|" address {"," address}] ">"
//! ```
//!
//! Identifiers name built-in terms (`L0`..`L3`, `L`, and the catalog names).

use crate::attrs;
use crate::catalog;
use crate::error::{Error, Result};
use crate::finposet::{FinPoset, MAX_ELEMENTS};
use crate::ordinal::{CnfOrdinal, OrdinalParser, DEFAULT_MAX_DEPTH};
use crate::sampler::{self, Address};
use crate::term::OrderTerm;

use num_rational::Rational64;

/// Parses and validates a term.
pub fn parse(src: &str) -> Result<OrderTerm> {
    let mut p = Parser::new(src);
    let t = p.term()?;
    p.expect_end()?;
    attrs::validate(&t)?;
    Ok(t)
}

/// Parses an address and conforms it to `t`.
pub fn parse_address(t: &OrderTerm, src: &str) -> Result<Address> {
    let mut p = Parser::new(src);
    let a = p.address()?;
    p.expect_end()?;
    sampler::conform(t, &a)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let before = &self.src[..pos.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before
            .rfind('\n')
            .map_or(before.chars().count(), |i| before[i + 1..].chars().count())
            + 1;
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self
                .peek()
                .map_or("end of input".to_string(), |f| format!("`{f}`"));
            Err(self.error(format!("expected `{c}`, found {found}")))
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected a number"));
        }
        let start = self.pos;
        self.pos += digits;
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.error_at(start, "number out of range"))
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let len = self
            .rest()
            .bytes()
            .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
            .count();
        let s = self.src[self.pos..self.pos + len].to_string();
        self.pos += len;
        s
    }

    fn ordinal(&mut self) -> Result<CnfOrdinal> {
        self.skip_ws();
        let start = self.pos;
        let mut op = OrdinalParser {
            src: self.src.as_bytes(),
            pos: self.pos,
        };
        let o = op.expr().map_err(|e| self.error_at(start, e.to_string()))?;
        o.check_depth(DEFAULT_MAX_DEPTH)
            .map_err(|e| self.error_at(start, e.to_string()))?;
        self.pos = op.pos;
        Ok(o)
    }

    fn term(&mut self) -> Result<OrderTerm> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(OrderTerm::finite_chain(self.nat()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let id = self.ident();
                match id.as_str() {
                    "w" => Ok(if self.eat('*') {
                        OrderTerm::OmegaStar
                    } else {
                        OrderTerm::Omega
                    }),
                    "k" => Ok(if self.eat('*') {
                        OrderTerm::KappaStar
                    } else {
                        OrderTerm::Kappa
                    }),
                    "Q" => Ok(OrderTerm::Rats),
                    "Qk" => Ok(OrderTerm::QKappa),
                    "ac" => {
                        self.expect('(')?;
                        let t = if self.peek() == Some('w') {
                            self.ident();
                            OrderTerm::AcOmega
                        } else {
                            let at = self.pos;
                            let n = self.nat()?;
                            if n == 0 {
                                return Err(self.error_at(at, "ac(n) needs n ≥ 1"));
                            }
                            OrderTerm::Ac(n)
                        };
                        self.expect(')')?;
                        Ok(t)
                    }
                    "ord" => {
                        self.expect('(')?;
                        let o = self.ordinal()?;
                        self.expect(')')?;
                        Ok(OrderTerm::ord(o))
                    }
                    "fin" => Ok(OrderTerm::Fin(self.fin_body()?)),
                    "inv" => {
                        self.expect('(')?;
                        let t = self.term()?;
                        self.expect(')')?;
                        Ok(OrderTerm::inv(t))
                    }
                    "sum" => {
                        self.expect('(')?;
                        let i = self.term()?;
                        self.expect(',')?;
                        let b = self.term()?;
                        self.expect(')')?;
                        Ok(OrderTerm::sum(i, b))
                    }
                    "lsum" => self.lsum(start),
                    "limsum" => self.limsum(start),
                    _ => catalog::builtin(&id)
                        .ok_or_else(|| self.error_at(start, format!("unknown identifier `{id}`"))),
                }
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    /// `(n; a<b, ...)` after the keyword `fin`.
    fn fin_body(&mut self) -> Result<FinPoset> {
        self.expect('(')?;
        let at = self.pos;
        let n = self.nat()? as usize;
        if n > MAX_ELEMENTS {
            return Err(self.error_at(at, format!("at most {MAX_ELEMENTS} elements")));
        }
        let mut pairs = Vec::new();
        if self.eat(';') {
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                let at = self.pos;
                let mut prev = self.nat()? as usize;
                let mut any = false;
                while self.eat('<') {
                    let next = self.nat()? as usize;
                    pairs.push((prev, next));
                    prev = next;
                    any = true;
                }
                if !any {
                    return Err(self.error_at(at, "expected a relation `a<b`"));
                }
                if !self.eat(',') {
                    break;
                }
            }
        }
        self.expect(')')?;
        FinPoset::from_relations(n, &pairs).map_err(|e| self.error_at(at, e.to_string()))
    }

    fn poset_literal(&mut self) -> Result<FinPoset> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let at = self.pos;
                let n = self.nat()? as usize;
                if n > MAX_ELEMENTS {
                    return Err(self.error_at(at, format!("at most {MAX_ELEMENTS} elements")));
                }
                Ok(FinPoset::chain(n))
            }
            _ => {
                let at = self.pos;
                match self.ident().as_str() {
                    "ac" => {
                        self.expect('(')?;
                        let n = self.nat()? as usize;
                        self.expect(')')?;
                        if n > MAX_ELEMENTS {
                            return Err(
                                self.error_at(at, format!("at most {MAX_ELEMENTS} elements"))
                            );
                        }
                        Ok(FinPoset::antichain(n))
                    }
                    "fin" => self.fin_body(),
                    _ => Err(self.error_at(at, "expected a finite index: nat, ac(n) or fin(...)")),
                }
            }
        }
    }

    fn lsum(&mut self, start: usize) -> Result<OrderTerm> {
        self.expect('(')?;
        let index = self.poset_literal()?;
        self.expect(';')?;
        let mut family = vec![self.term()?];
        while self.eat(',') {
            family.push(self.term()?);
        }
        self.expect(')')?;
        if family.len() != index.len() {
            return Err(self.error_at(
                start,
                format!(
                    "lsum index has {} points but {} summands",
                    index.len(),
                    family.len()
                ),
            ));
        }
        Ok(OrderTerm::lsum(index, family))
    }

    fn limsum(&mut self, start: usize) -> Result<OrderTerm> {
        self.expect('(')?;
        let base = self.term()?;
        self.expect(',')?;
        let step = self.term()?;
        let raw = if self.eat(',') {
            Some(self.address()?)
        } else {
            None
        };
        self.expect(')')?;
        let basepoint = match raw {
            Some(a) => {
                sampler::conform(&step, &a).map_err(|e| self.error_at(start, e.to_string()))?
            }
            None => sampler::some_address(&step)
                .ok_or_else(|| self.error_at(start, "limsum step must be nonempty"))?,
        };
        Ok(OrderTerm::limsum(base, step, basepoint))
    }

    fn address(&mut self) -> Result<Address> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let i = self.address()?;
                self.expect(',')?;
                let b = self.address()?;
                self.expect(')')?;
                Ok(Address::block(i, b))
            }
            Some('#') => {
                self.pos += 1;
                let k = self.nat()? as usize;
                self.expect(':')?;
                Ok(Address::item(k, self.address()?))
            }
            Some('<') => {
                self.pos += 1;
                let b = self.address()?;
                let mut path = Vec::new();
                if self.eat('|') {
                    path.push(self.address()?);
                    while self.eat(',') {
                        path.push(self.address()?);
                    }
                }
                self.expect('>')?;
                Ok(Address::lim(b, path))
            }
            Some('w') => Ok(Address::Ord(self.ordinal()?)),
            Some('-') => {
                self.pos += 1;
                let n = self.nat()? as i64;
                Ok(Address::Rat(self.maybe_fraction(-n)?))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.nat()?;
                if self.peek() == Some('/') {
                    Ok(Address::Rat(self.maybe_fraction(n as i64)?))
                } else {
                    Ok(Address::Point(n))
                }
            }
            Some(c) => Err(self.error(format!("unexpected `{c}` in address"))),
            None => Err(self.error("unexpected end of input in address")),
        }
    }

    fn maybe_fraction(&mut self, numer: i64) -> Result<Rational64> {
        if self.eat('/') {
            let at = self.pos;
            let d = self.nat()? as i64;
            if d == 0 {
                return Err(self.error_at(at, "zero denominator"));
            }
            Ok(Rational64::new(numer, d))
        } else {
            Ok(Rational64::from_integer(numer))
        }
    }
}
