//! Ordinals below ε₀ in Cantor normal form.
//!
//! An ordinal is stored as a strictly decreasing sequence of
//! `(exponent, coefficient)` terms, so `ω^2·3 + ω + 4` is
//! `[(2, 3), (1, 1), (0, 4)]`. Every constructor and operation returns the
//! canonical form, which makes structural equality coincide with ordinal
//! equality.

use std::cmp::Ordering;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Default cap on the nesting depth of exponents.
pub const DEFAULT_MAX_DEPTH: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CnfOrdinal {
    terms: Vec<(CnfOrdinal, u64)>,
}

impl CnfOrdinal {
    pub fn zero() -> Self {
        CnfOrdinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::finite(1)
    }

    pub fn finite(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            CnfOrdinal {
                terms: vec![(Self::zero(), n)],
            }
        }
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::one())
    }

    /// `ω^e`.
    pub fn omega_pow(e: CnfOrdinal) -> Self {
        CnfOrdinal {
            terms: vec![(e, 1)],
        }
    }

    /// `ω^e · c`.
    pub fn monomial(e: CnfOrdinal, c: u64) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            CnfOrdinal {
                terms: vec![(e, c)],
            }
        }
    }

    /// Builds an ordinal from raw terms, checking the canonical-form invariants.
    pub fn from_terms(terms: Vec<(CnfOrdinal, u64)>) -> Result<Self> {
        for (i, (e, c)) in terms.iter().enumerate() {
            if *c == 0 {
                return Err(Error::Ordinal("coefficient must be positive".into()));
            }
            if i > 0 && terms[i - 1].0 <= *e {
                return Err(Error::Ordinal(
                    "exponents must be strictly decreasing".into(),
                ));
            }
        }
        Ok(CnfOrdinal { terms })
    }

    pub fn terms(&self) -> &[(CnfOrdinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_zero())
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    /// Exponent of the leading term, `None` for zero.
    pub fn leading_exponent(&self) -> Option<&CnfOrdinal> {
        self.terms.first().map(|(e, _)| e)
    }

    /// Finite part `n` in `α = ω·β + n`.
    pub fn finite_part(&self) -> u64 {
        match self.terms.last() {
            Some((e, c)) if e.is_zero() => *c,
            _ => 0,
        }
    }

    pub fn is_successor(&self) -> bool {
        self.finite_part() > 0
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    /// Nesting depth of exponents; finite ordinals have depth 0 except zero.
    pub fn depth(&self) -> usize {
        self.terms
            .iter()
            .map(|(e, _)| if e.is_zero() { 1 } else { 1 + e.depth() })
            .max()
            .unwrap_or(0)
    }

    pub fn check_depth(&self, max_depth: usize) -> Result<()> {
        if self.depth() > max_depth {
            Err(Error::Ordinal(format!(
                "ordinal {self} nests exponents deeper than the cap {max_depth}"
            )))
        } else {
            Ok(())
        }
    }

    pub fn succ(&self) -> Self {
        self.std_add(&Self::one())
    }

    /// Standard ordinal addition: the terms of `self` below the leading
    /// exponent of `other` are absorbed.
    pub fn std_add(&self, other: &CnfOrdinal) -> CnfOrdinal {
        let Some((lead, lead_c)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(CnfOrdinal, u64)> = Vec::new();
        for (e, c) in &self.terms {
            match e.cmp(lead) {
                Ordering::Greater => terms.push((e.clone(), *c)),
                Ordering::Equal => {
                    terms.push((e.clone(), c + lead_c));
                    terms.extend(other.terms[1..].iter().cloned());
                    return CnfOrdinal { terms };
                }
                Ordering::Less => break,
            }
        }
        terms.extend(other.terms.iter().cloned());
        CnfOrdinal { terms }
    }

    /// Hessenberg natural sum: merge the term sequences, adding coefficients
    /// of equal exponents.
    pub fn nat_sum(&self, other: &CnfOrdinal) -> CnfOrdinal {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.0.cmp(&b.0) {
                Ordering::Greater => {
                    terms.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    terms.push((a.0.clone(), a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend(self.terms[i..].iter().cloned());
        terms.extend(other.terms[j..].iter().cloned());
        CnfOrdinal { terms }
    }

    /// Hessenberg natural product: distribute over the terms, combining
    /// exponents with the natural sum.
    pub fn nat_prod(&self, other: &CnfOrdinal) -> CnfOrdinal {
        let mut acc = CnfOrdinal::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                acc = acc.nat_sum(&CnfOrdinal::monomial(e1.nat_sum(e2), c1 * c2));
            }
        }
        acc
    }

    /// The unique `δ` with `other + δ = self`, if `other ≤ self`.
    pub fn left_sub(&self, other: &CnfOrdinal) -> Option<CnfOrdinal> {
        if other > self {
            return None;
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            match other.terms.get(i) {
                Some((oe, oc)) if oe == e && oc == c => continue,
                Some((oe, oc)) if oe == e => {
                    // oc < c since other ≤ self
                    let mut terms = vec![(e.clone(), c - oc)];
                    terms.extend(self.terms[i + 1..].iter().cloned());
                    return Some(CnfOrdinal { terms });
                }
                _ => {
                    return Some(CnfOrdinal {
                        terms: self.terms[i..].to_vec(),
                    })
                }
            }
        }
        Some(CnfOrdinal::zero())
    }

    /// `β` with `ω·β + n = self`, i.e. the order type of the ω-blocks.
    pub fn div_omega(&self) -> CnfOrdinal {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| !e.is_zero())
            .map(|(e, c)| (e.left_sub(&CnfOrdinal::one()).expect("e ≥ 1"), *c))
            .collect();
        CnfOrdinal { terms }
    }
}

impl PartialOrd for CnfOrdinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CnfOrdinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a.0.cmp(&b.0).then(a.1.cmp(&b.1));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl fmt::Display for CnfOrdinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            write!(f, "w")?;
            if *e != CnfOrdinal::one() {
                if e.terms.len() == 1
                    && (e.is_finite() || e.terms[0].1 == 1 && e.terms[0].0 == CnfOrdinal::one())
                {
                    write!(f, "^{e}")?;
                } else {
                    write!(f, "^({e})")?;
                }
            }
            if *c > 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CnfOrdinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for CnfOrdinal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            exponent: &'a CnfOrdinal,
            coefficient: u64,
        }
        let terms: Vec<Term<'_>> = self
            .terms
            .iter()
            .map(|(e, c)| Term {
                exponent: e,
                coefficient: *c,
            })
            .collect();
        let mut st = s.serialize_struct("CnfOrdinal", 2)?;
        st.serialize_field("cnf", &self.to_string())?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl std::str::FromStr for CnfOrdinal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = OrdinalParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let o = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::Ordinal(format!(
                "unexpected input at offset {} in ordinal `{s}`",
                p.pos
            )));
        }
        o.check_depth(DEFAULT_MAX_DEPTH)?;
        Ok(o)
    }
}

/// Parses `w^e*c + ...` ordinal text. Terms are added with standard
/// addition, so non-canonical input such as `1+w` is normalized.
pub(crate) struct OrdinalParser<'a> {
    pub(crate) src: &'a [u8],
    pub(crate) pos: usize,
}

impl OrdinalParser<'_> {
    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Ordinal(format!(
                "expected a number at offset {start}"
            )));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Ordinal("number out of range".into()))
    }

    pub(crate) fn expr(&mut self) -> Result<CnfOrdinal> {
        let mut acc = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            let t = self.term()?;
            acc = acc.std_add(&t);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<CnfOrdinal> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                let exp = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.atom()?
                } else {
                    CnfOrdinal::one()
                };
                let coef = if self.peek() == Some(b'*')
                    && self
                        .src
                        .get(self.pos + 1)
                        .is_some_and(|b| b.is_ascii_digit() || b.is_ascii_whitespace())
                {
                    self.pos += 1;
                    self.nat()?
                } else {
                    1
                };
                if coef == 0 {
                    Ok(CnfOrdinal::zero())
                } else {
                    Ok(CnfOrdinal::monomial(exp, coef))
                }
            }
            Some(b) if b.is_ascii_digit() => Ok(CnfOrdinal::finite(self.nat()?)),
            Some(b'(') => self.atom(),
            _ => Err(Error::Ordinal(format!(
                "expected an ordinal term at offset {}",
                self.pos
            ))),
        }
    }

    fn atom(&mut self) -> Result<CnfOrdinal> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::Ordinal(format!(
                        "expected `)` at offset {}",
                        self.pos
                    )));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'w') => {
                self.pos += 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    Ok(CnfOrdinal::omega_pow(self.atom()?))
                } else {
                    Ok(CnfOrdinal::omega())
                }
            }
            _ => Ok(CnfOrdinal::finite(self.nat()?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> CnfOrdinal {
        s.parse().unwrap()
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(o("w").cmp(&o("w")), Ordering::Equal);
        assert_eq!(o("w+1").cmp(&o("w*2")), Ordering::Less);
        assert_eq!(o("w^w").cmp(&o("w^3*5")), Ordering::Greater);
    }

    #[test]
    fn std_add_examples() {
        assert_eq!(o("1").std_add(&o("w")), o("w"));
        assert_eq!(o("w").std_add(&o("1")), o("w+1"));
        assert_eq!(o("w*2+3").std_add(&o("w")), o("w*3"));
    }

    #[test]
    fn nat_sum_examples() {
        assert_eq!(o("1").nat_sum(&o("w")), o("w+1"));
        assert_eq!(o("w*2+3").nat_sum(&o("w+5")), o("w*3+8"));
        assert_eq!(o("w^2+7").nat_sum(&CnfOrdinal::zero()), o("w^2+7"));
    }

    #[test]
    fn nat_prod_examples() {
        assert_eq!(o("w").nat_prod(&o("w")), o("w^2"));
        assert_eq!(o("w^3+w").nat_prod(&CnfOrdinal::zero()), CnfOrdinal::zero());
        assert_eq!(o("w+1").nat_prod(&o("2")), o("w*2+2"));
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "0",
            "7",
            "w",
            "w*3",
            "w^2*3+w+4",
            "w^w",
            "w^(w+1)*2+5",
            "w^(w^2)",
        ] {
            assert_eq!(o(s).to_string(), s);
        }
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(o("1+w"), o("w"));
        assert_eq!(o("w^0*3"), o("3"));
    }

    #[test]
    fn depth_cap() {
        let deep = "w^(w^(w^(w^(w^(w^(w^(w^(w^2))))))))";
        assert!(deep.parse::<CnfOrdinal>().is_err());
        assert!("w^(w^2)".parse::<CnfOrdinal>().is_ok());
    }

    #[test]
    fn left_sub_and_div() {
        assert_eq!(o("w^2*3+w").left_sub(&o("w^2*2+5")), Some(o("w^2+w")));
        assert_eq!(o("w+3").left_sub(&o("2")), Some(o("w+3")));
        assert_eq!(o("5").left_sub(&o("2")), Some(o("3")));
        assert_eq!(o("2").left_sub(&o("5")), None);
        assert_eq!(o("w^2*3+w+4").div_omega(), o("w*3+1"));
        assert_eq!(o("w^w").div_omega(), o("w^w"));
    }

    #[test]
    fn from_terms_rejects_bad_input() {
        assert!(CnfOrdinal::from_terms(vec![(CnfOrdinal::zero(), 0)]).is_err());
        assert!(
            CnfOrdinal::from_terms(vec![(CnfOrdinal::zero(), 1), (CnfOrdinal::one(), 1)]).is_err()
        );
    }
}
