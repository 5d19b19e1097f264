//! Condensations of linear terms.
//!
//! - Finite mode identifies `a ≡ b` when finitely many points lie between
//!   them. Classes have type `n`, `ω`, `ω*` or `ζ`.
//! - H mode identifies `a ≡ b` when the interval between them is scattered.
//!   The test is made at ℵ₀: κ leaves count as ordinals, `Qk` as dense.
//!
//! Both are computed constructor by constructor. In `Σ_I B` two points in
//! different blocks can only be identified when their blocks are adjacent
//! in `I`, the first point lies in the last class of its block and the
//! second in the first class of its own. So the quotient is `Σ_I c(B)`
//! unless those end classes exist, and then it is a glued sum built from the
//! runs of adjacent points of `I`.
//!
//! Hausdorff rank here is the least `r` with `c^r(t)` finite, so finite
//! orders have rank 0 and `ω` has rank 1.

use std::ops::{Add, Mul};

use serde::Serialize;

use crate::attrs::attrs;
use crate::card::CardClass;
use crate::error::{Error, Result};
use crate::finposet::FinPoset;
use crate::ordinal::CnfOrdinal;
use crate::sampler::{self, Address};
use crate::term::OrderTerm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Finite,
    H,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CondensationResult {
    pub mode: Mode,
    pub quotient: OrderTerm,
    /// What the classes are, one line per constructor visited.
    pub class_map: Vec<String>,
    pub steps: u32,
}

pub fn condense(t: &OrderTerm, mode: Mode) -> Result<CondensationResult> {
    let r = attrs(t)?;
    if !r.linear {
        return Err(Error::NotLinear { op: "condense" });
    }
    let quotient = match mode {
        Mode::Finite => simplify(&cf(t)?),
        Mode::H => simplify(&ch(t)?),
    };
    let mut class_map = Vec::new();
    describe(t, mode, "", &mut class_map)?;
    Ok(CondensationResult {
        mode,
        quotient,
        class_map,
        steps: 1,
    })
}

pub fn condense_finite(t: &OrderTerm) -> Result<CondensationResult> {
    condense(t, Mode::Finite)
}

#[allow(non_snake_case)]
pub fn condense_H(t: &OrderTerm) -> Result<CondensationResult> {
    condense(t, Mode::H)
}

fn point() -> OrderTerm {
    OrderTerm::point()
}

fn empty() -> OrderTerm {
    OrderTerm::finite_chain(0)
}

fn card(t: &OrderTerm) -> Result<CardClass> {
    Ok(attrs(t)?.card)
}

fn has_first(t: &OrderTerm) -> Result<bool> {
    Ok(attrs(t)?.has_first == Some(true))
}

fn has_last(t: &OrderTerm) -> Result<bool> {
    Ok(attrs(t)?.has_last == Some(true))
}

/// Summands of a chain-indexed `lsum` in order, skipping empty ones.
fn chain_summands(p: &FinPoset, family: &[OrderTerm]) -> Vec<OrderTerm> {
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&k| p.downset(k).count_ones());
    order
        .into_iter()
        .map(|k| family[k].clone())
        .filter(|f| !sampler::is_empty_term(f))
        .collect()
}

/// `t` without its least element.
pub fn drop_first(t: &OrderTerm) -> Result<OrderTerm> {
    let none = || Error::Unsupported(format!("cannot remove the first point of {t}"));
    Ok(match t {
        OrderTerm::Ord(a) => match a.as_finite() {
            Some(0) => return Err(none()),
            Some(n) => OrderTerm::finite_chain(n - 1),
            None => t.clone(),
        },
        OrderTerm::Omega | OrderTerm::Kappa => t.clone(),
        OrderTerm::Fin(p) if p.is_linear() && !p.is_empty() => {
            OrderTerm::finite_chain(p.len() as u64 - 1)
        }
        OrderTerm::Ac(1) => empty(),
        OrderTerm::Inv(x) => OrderTerm::inv(drop_last(x)?),
        OrderTerm::SumConst(i, b) => concat(vec![
            drop_first(b)?,
            OrderTerm::sum(drop_first(i)?, (**b).clone()),
        ]),
        OrderTerm::SumList(p, family) => {
            let mut parts = chain_summands(p, family);
            if parts.is_empty() {
                return Err(none());
            }
            parts[0] = drop_first(&parts[0])?;
            concat(parts)
        }
        OrderTerm::LimSum { base, step, .. } if card(step)? == CardClass::ONE => drop_first(base)?,
        _ => return Err(none()),
    })
}

/// `t` without its greatest element.
pub fn drop_last(t: &OrderTerm) -> Result<OrderTerm> {
    let none = || Error::Unsupported(format!("cannot remove the last point of {t}"));
    Ok(match t {
        OrderTerm::Ord(a) => OrderTerm::ord(predecessor(a).ok_or_else(none)?),
        OrderTerm::OmegaStar | OrderTerm::KappaStar => t.clone(),
        OrderTerm::Fin(p) if p.is_linear() && !p.is_empty() => {
            OrderTerm::finite_chain(p.len() as u64 - 1)
        }
        OrderTerm::Ac(1) => empty(),
        OrderTerm::Inv(x) => OrderTerm::inv(drop_first(x)?),
        OrderTerm::SumConst(i, b) => concat(vec![
            OrderTerm::sum(drop_last(i)?, (**b).clone()),
            drop_last(b)?,
        ]),
        OrderTerm::SumList(p, family) => {
            let mut parts = chain_summands(p, family);
            let last = parts.last_mut().ok_or_else(none)?;
            *last = drop_last(last)?;
            concat(parts)
        }
        OrderTerm::LimSum { base, step, .. } if card(step)? == CardClass::ONE => drop_last(base)?,
        _ => return Err(none()),
    })
}

fn predecessor(a: &CnfOrdinal) -> Option<CnfOrdinal> {
    if !a.is_successor() {
        return None;
    }
    let mut terms = a.terms().to_vec();
    let last = terms.last_mut().expect("successor is nonzero");
    last.1 -= 1;
    if last.1 == 0 {
        terms.pop();
    }
    CnfOrdinal::from_terms(terms).ok()
}

/// The ordered sum of `parts`.
pub fn concat(parts: Vec<OrderTerm>) -> OrderTerm {
    let n = parts.len();
    simplify(&OrderTerm::lsum(FinPoset::chain(n), parts))
}

fn as_ordinal(t: &OrderTerm) -> Option<CnfOrdinal> {
    match t {
        OrderTerm::Ord(a) => Some(a.clone()),
        OrderTerm::Omega => Some(CnfOrdinal::omega()),
        OrderTerm::Fin(p) if p.is_linear() => Some(CnfOrdinal::finite(p.len() as u64)),
        OrderTerm::Ac(1) => Some(CnfOrdinal::one()),
        _ => None,
    }
}

/// `b · n`, that is `n` copies of `b` in a row.
fn ordinal_times_finite(b: &CnfOrdinal, n: u64) -> CnfOrdinal {
    if n == 0 || b.is_zero() {
        return CnfOrdinal::zero();
    }
    let mut terms = b.terms().to_vec();
    terms[0].1 *= n;
    // b·n = ω^e·(c·n) + tail, since the copies absorb all but the last tail
    CnfOrdinal::from_terms(terms).expect("leading coefficient scaled")
}

/// `m · a`: copies of the finite chain `m` along `a`.
fn finite_times_ordinal(m: u64, a: &CnfOrdinal) -> CnfOrdinal {
    if m == 0 {
        return CnfOrdinal::zero();
    }
    let terms = a
        .terms()
        .iter()
        .map(|(e, c)| (e.clone(), if e.is_zero() { c * m } else { *c }))
        .collect();
    CnfOrdinal::from_terms(terms).expect("same exponents")
}

/// Shallow algebraic cleanup; preserves the order type.
pub fn simplify(t: &OrderTerm) -> OrderTerm {
    match t {
        OrderTerm::Fin(p) if p.is_linear() => OrderTerm::finite_chain(p.len() as u64),
        OrderTerm::Ac(1) => point(),
        OrderTerm::Inv(x) => match simplify(x) {
            OrderTerm::Inv(y) => *y,
            OrderTerm::Omega => OrderTerm::OmegaStar,
            OrderTerm::OmegaStar => OrderTerm::Omega,
            OrderTerm::Kappa => OrderTerm::KappaStar,
            OrderTerm::KappaStar => OrderTerm::Kappa,
            y @ (OrderTerm::Rats | OrderTerm::QKappa | OrderTerm::Ac(_) | OrderTerm::AcOmega) => y,
            y @ OrderTerm::Ord(_) if as_ordinal(&y).is_some_and(|a| a.is_finite()) => y,
            y => OrderTerm::inv(y),
        },
        OrderTerm::SumConst(i, b) => {
            let (i, b) = (simplify(i), simplify(b));
            if sampler::is_empty_term(&i) || sampler::is_empty_term(&b) {
                return empty();
            }
            if i == point() {
                return b;
            }
            if b == point() {
                return i;
            }
            match (as_ordinal(&i), as_ordinal(&b)) {
                (Some(x), Some(y)) if x.is_finite() && x.as_finite() <= Some(64) => {
                    OrderTerm::ord(ordinal_times_finite(&y, x.as_finite().unwrap()))
                }
                (Some(x), Some(y)) if y.is_finite() => {
                    OrderTerm::ord(finite_times_ordinal(y.as_finite().unwrap(), &x))
                }
                _ => OrderTerm::sum(i, b),
            }
        }
        OrderTerm::SumList(p, family) if p.is_linear() => {
            let mut parts: Vec<OrderTerm> = Vec::new();
            for f in chain_summands(p, family) {
                match simplify(&f) {
                    OrderTerm::SumList(q, inner) if q.is_linear() => {
                        parts.extend(chain_summands(&q, &inner))
                    }
                    s if sampler::is_empty_term(&s) => {}
                    s => parts.push(s),
                }
            }
            let mut merged: Vec<OrderTerm> = Vec::new();
            for part in parts {
                if let (Some(prev), Some(b)) =
                    (merged.last().and_then(as_ordinal), as_ordinal(&part))
                {
                    *merged.last_mut().unwrap() = OrderTerm::ord(prev.std_add(&b));
                } else {
                    merged.push(part);
                }
            }
            match merged.len() {
                0 => empty(),
                1 => merged.pop().unwrap(),
                n => OrderTerm::lsum(FinPoset::chain(n), merged),
            }
        }
        OrderTerm::SumList(p, family) => {
            OrderTerm::lsum(p.clone(), family.iter().map(simplify).collect())
        }
        OrderTerm::LimSum {
            base,
            step,
            basepoint,
        } => OrderTerm::limsum(simplify(base), (**step).clone(), basepoint.clone()),
        _ => t.clone(),
    }
}

/// Type of a run of adjacent points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Run {
    Finite(u64),
    Omega,
    OmegaStar,
    Zeta,
}

impl Run {
    fn inverse(self) -> Run {
        match self {
            Run::Omega => Run::OmegaStar,
            Run::OmegaStar => Run::Omega,
            r => r,
        }
    }

    fn times(self, m: u64) -> Run {
        match self {
            Run::Finite(n) => Run::Finite(n * m),
            r => r,
        }
    }

    /// A run ending in a last point followed by one starting at a first point.
    fn join(self, next: Run) -> Option<Run> {
        match (self, next) {
            (Run::Finite(a), Run::Finite(b)) => Some(Run::Finite(a + b)),
            (Run::OmegaStar, Run::Finite(_)) => Some(Run::OmegaStar),
            (Run::Finite(_), Run::Omega) => Some(Run::Omega),
            (Run::OmegaStar, Run::Omega) => Some(Run::Zeta),
            _ => None,
        }
    }
}

/// Writes `t` as the ordered sum of pieces `Σ_Q run`, where the runs are
/// the classes of the finite condensation and `Q` indexes them.
fn runs(t: &OrderTerm) -> Result<Vec<(OrderTerm, Run)>> {
    let unsupported = || Error::Unsupported(format!("adjacency runs of {t}"));
    if attrs(t)?.has_adjacent_pair != Some(true) {
        return Ok(if sampler::is_empty_term(t) {
            Vec::new()
        } else {
            vec![(t.clone(), Run::Finite(1))]
        });
    }
    Ok(match t {
        OrderTerm::Fin(p) => vec![(point(), Run::Finite(p.len() as u64))],
        OrderTerm::Ord(a) => {
            let mut v = Vec::new();
            let blocks = a.div_omega();
            if !blocks.is_zero() {
                v.push((OrderTerm::ord(blocks), Run::Omega));
            }
            if a.finite_part() > 0 {
                v.push((point(), Run::Finite(a.finite_part())));
            }
            v
        }
        OrderTerm::Omega => vec![(point(), Run::Omega)],
        OrderTerm::OmegaStar => vec![(point(), Run::OmegaStar)],
        OrderTerm::Kappa => vec![(OrderTerm::Kappa, Run::Omega)],
        OrderTerm::KappaStar => vec![(OrderTerm::KappaStar, Run::OmegaStar)],
        OrderTerm::Inv(x) => runs(x)?
            .into_iter()
            .rev()
            .map(|(q, r)| (simplify(&OrderTerm::inv(q)), r.inverse()))
            .collect(),
        OrderTerm::SumConst(i, b) => {
            let cb = card(b)?;
            if let CardClass::Fin(m) = cb {
                runs(i)?.into_iter().map(|(q, r)| (q, r.times(m))).collect()
            } else {
                let glued =
                    has_first(b)? && has_last(b)? && attrs(i)?.has_adjacent_pair == Some(true);
                match runs(b)?.as_slice() {
                    [(q, r)] if !glued => {
                        vec![(simplify(&OrderTerm::sum((**i).clone(), q.clone())), *r)]
                    }
                    _ => return Err(unsupported()),
                }
            }
        }
        OrderTerm::SumList(p, family) => {
            let parts = chain_summands(p, family);
            let mut out: Vec<(OrderTerm, Run)> = Vec::new();
            for (k, part) in parts.iter().enumerate() {
                let mut rs = runs(part)?;
                if k > 0 && has_last(&parts[k - 1])? && has_first(part)? {
                    let (q0, r0) = out.pop().ok_or_else(unsupported)?;
                    let (q1, r1) = rs.remove(0);
                    if q0 != point() || q1 != point() {
                        return Err(unsupported());
                    }
                    out.push((point(), r0.join(r1).ok_or_else(unsupported)?));
                }
                out.extend(rs);
            }
            out
        }
        OrderTerm::LimSum { base, step, .. } if card(step)? == CardClass::ONE => runs(base)?,
        _ => return Err(unsupported()),
    })
}

/// `Σ_I D` where the last point of each copy of `D` is identified with the
/// first point of the copy at the next point of `I`.
fn glued_sum(index: &OrderTerm, d: &OrderTerm) -> Result<OrderTerm> {
    let e = drop_first(d)?;
    let pieces = runs(index)?
        .into_iter()
        .map(|(q, r)| {
            let g = match r {
                Run::Finite(n) => concat(vec![
                    point(),
                    OrderTerm::sum(OrderTerm::finite_chain(n), e.clone()),
                ]),
                Run::Omega => concat(vec![point(), OrderTerm::sum(OrderTerm::Omega, e.clone())]),
                Run::OmegaStar => OrderTerm::sum(OrderTerm::OmegaStar, e.clone()),
                Run::Zeta => OrderTerm::sum(
                    OrderTerm::sum(OrderTerm::OmegaStar, OrderTerm::Omega),
                    e.clone(),
                ),
            };
            OrderTerm::sum(q, g)
        })
        .collect();
    Ok(concat(pieces))
}

fn cf(t: &OrderTerm) -> Result<OrderTerm> {
    Ok(match t {
        OrderTerm::Fin(p) if p.is_empty() => empty(),
        OrderTerm::Fin(_) | OrderTerm::Ac(_) | OrderTerm::Omega | OrderTerm::OmegaStar => point(),
        OrderTerm::Ord(a) if a.is_zero() => empty(),
        OrderTerm::Ord(a) => {
            let tail = if a.finite_part() > 0 {
                CnfOrdinal::one()
            } else {
                CnfOrdinal::zero()
            };
            OrderTerm::ord(a.div_omega().std_add(&tail))
        }
        OrderTerm::Kappa
        | OrderTerm::KappaStar
        | OrderTerm::Rats
        | OrderTerm::QKappa
        | OrderTerm::AcOmega => t.clone(),
        OrderTerm::Inv(x) => OrderTerm::inv(cf(x)?),
        OrderTerm::SumConst(i, b) => {
            if sampler::is_empty_term(t) {
                empty()
            } else if card(b)?.is_finite() {
                cf(i)?
            } else {
                let d = simplify(&cf(b)?);
                if has_first(b)? && has_last(b)? {
                    glued_sum(i, &d)?
                } else {
                    OrderTerm::sum((**i).clone(), d)
                }
            }
        }
        OrderTerm::SumList(p, family) => {
            let parts = chain_summands(p, family);
            let mut out = Vec::new();
            for (k, part) in parts.iter().enumerate() {
                let mut d = simplify(&cf(part)?);
                if k > 0 && has_last(&parts[k - 1])? && has_first(part)? {
                    d = drop_first(&d)?;
                }
                out.push(d);
            }
            concat(out)
        }
        OrderTerm::LimSum { base, step, .. } if card(step)? == CardClass::ONE => cf(base)?,
        OrderTerm::LimSum { .. } => t.clone(),
    })
}

fn ch(t: &OrderTerm) -> Result<OrderTerm> {
    let r = attrs(t)?;
    if r.card.is_zero() {
        return Ok(empty());
    }
    if r.scattered_omega {
        return Ok(point());
    }
    Ok(match t {
        OrderTerm::Inv(x) => OrderTerm::inv(ch(x)?),
        OrderTerm::SumConst(i, b) => {
            if attrs(b)?.scattered_omega {
                ch(i)?
            } else {
                let d = simplify(&ch(b)?);
                if has_first(&d)? && has_last(&d)? {
                    glued_sum(i, &d)?
                } else {
                    OrderTerm::sum((**i).clone(), d)
                }
            }
        }
        OrderTerm::SumList(p, family) => {
            let parts = chain_summands(p, family);
            let mut out: Vec<OrderTerm> = Vec::new();
            for part in &parts {
                let mut d = simplify(&ch(part)?);
                if let Some(prev) = out.iter().rev().find(|x| !sampler::is_empty_term(x)) {
                    if has_last(prev)? && has_first(&d)? {
                        d = drop_first(&d)?;
                    }
                }
                out.push(d);
            }
            concat(out)
        }
        OrderTerm::LimSum { base, step, .. } if card(step)? == CardClass::ONE => ch(base)?,
        // dense leaves and nontrivial limits: every nondegenerate interval
        // contains a dense suborder
        _ => t.clone(),
    })
}

fn describe(t: &OrderTerm, mode: Mode, at: &str, out: &mut Vec<String>) -> Result<()> {
    let here = if at.is_empty() {
        "t".to_string()
    } else {
        at.to_string()
    };
    let r = attrs(t)?;
    if mode == Mode::H && r.scattered_omega && !r.card.is_zero() {
        out.push(format!("{here}: one class"));
        return Ok(());
    }
    match t {
        OrderTerm::Ord(a) if mode == Mode::Finite && !a.is_finite() => {
            out.push(format!(
                "{here}: w*g + n -> g for each block g < {}",
                a.div_omega()
            ));
            if a.finite_part() > 0 {
                out.push(format!(
                    "{here}: the final {} points form one class",
                    a.finite_part()
                ));
            }
        }
        OrderTerm::Fin(_)
        | OrderTerm::Ac(_)
        | OrderTerm::Ord(_)
        | OrderTerm::Omega
        | OrderTerm::OmegaStar
            if mode == Mode::Finite =>
        {
            out.push(format!("{here}: one class"));
        }
        OrderTerm::Kappa | OrderTerm::KappaStar if mode == Mode::Finite => {
            out.push(format!(
                "{here}: w*g + n -> g, one class per block of w points"
            ));
        }
        OrderTerm::Rats | OrderTerm::QKappa | OrderTerm::LimSum { .. }
            if mode == Mode::Finite || !r.scattered_omega =>
        {
            out.push(format!("{here}: every point is its own class"));
        }
        OrderTerm::Inv(x) => describe(x, mode, &format!("{here}*"), out)?,
        OrderTerm::SumConst(i, b) => {
            let collapses = match mode {
                Mode::Finite => card(b)?.is_finite(),
                Mode::H => attrs(b)?.scattered_omega,
            };
            if collapses {
                out.push(format!(
                    "{here}: (i, b) -> class of i; blocks fall into their index class"
                ));
                describe(i, mode, &format!("{here}.index"), out)?;
            } else {
                out.push(format!(
                    "{here}: (i, b) -> (i, class of b), blocks kept apart unless glued"
                ));
                describe(b, mode, &format!("{here}.block"), out)?;
            }
        }
        OrderTerm::SumList(p, family) => {
            let order: Vec<usize> = {
                let mut o: Vec<usize> = (0..p.len()).collect();
                o.sort_by_key(|&k| p.downset(k).count_ones());
                o
            };
            for k in order {
                describe(&family[k], mode, &format!("{here}#{k}"), out)?;
            }
            out.push(format!(
                "{here}: end classes of neighbouring summands merge when they meet"
            ));
        }
        _ => out.push(format!("{here}: one class")),
    }
    Ok(())
}

fn contains_kappa(t: &OrderTerm) -> bool {
    matches!(t, OrderTerm::Kappa | OrderTerm::KappaStar)
        || t.children().into_iter().any(contains_kappa)
}

/// Least `r` with the `r`-fold finite condensation finite, by recursion.
pub fn hausdorff_rank(t: &OrderTerm) -> Result<CnfOrdinal> {
    let r = attrs(t)?;
    if !r.linear {
        return Err(Error::NotLinear {
            op: "hausdorff_rank",
        });
    }
    if !r.scattered_omega {
        return Err(Error::NotScattered);
    }
    if contains_kappa(t) && !r.card.is_finite() {
        return Err(Error::Unsupported(
            "rank of an order containing κ is not a countable ordinal".into(),
        ));
    }
    rank(t)
}

fn rank(t: &OrderTerm) -> Result<CnfOrdinal> {
    if card(t)?.is_finite() {
        return Ok(CnfOrdinal::zero());
    }
    Ok(match t {
        OrderTerm::Ord(a) => a
            .leading_exponent()
            .cloned()
            .unwrap_or_else(CnfOrdinal::zero),
        OrderTerm::Omega | OrderTerm::OmegaStar => CnfOrdinal::one(),
        OrderTerm::Inv(x) => rank(x)?,
        OrderTerm::SumConst(i, b) => {
            if card(b)?.is_finite() {
                rank(i)?
            } else {
                rank(b)?.std_add(&rank(i)?)
            }
        }
        OrderTerm::SumList(p, family) => chain_summands(p, family)
            .iter()
            .map(rank)
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
            .unwrap_or_else(CnfOrdinal::zero),
        OrderTerm::LimSum { base, .. } => rank(base)?,
        _ => return Err(Error::NotScattered),
    })
}

/// Applies the finite condensation until the term is finite; `None` if that
/// takes more than `cap` steps.
pub fn literal_rank(t: &OrderTerm, cap: usize) -> Result<Option<usize>> {
    let mut cur = t.clone();
    for steps in 0..=cap {
        if card(&cur)?.is_finite() {
            return Ok(Some(steps));
        }
        cur = condense_finite(&cur)?.quotient;
    }
    Ok(None)
}

/// Size class and scatteredness of a segment or interval, computed from
/// addresses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalSummary {
    pub card: CardClass,
    pub scattered: bool,
}

impl IntervalSummary {
    const EMPTY: IntervalSummary = IntervalSummary {
        card: CardClass::ZERO,
        scattered: true,
    };

    fn of(t: &OrderTerm) -> Result<Self> {
        let r = attrs(t)?;
        Ok(IntervalSummary {
            card: r.card,
            scattered: r.scattered_omega,
        })
    }

    fn then(self, other: IntervalSummary) -> IntervalSummary {
        IntervalSummary {
            card: self.card.add(other.card),
            scattered: self.scattered && other.scattered,
        }
    }

    /// `Σ_{self} B` where `self` summarizes the index part.
    fn times(self, b: IntervalSummary) -> IntervalSummary {
        if self.card.is_zero() || b.card.is_zero() {
            return Self::EMPTY;
        }
        IntervalSummary {
            card: self.card.mul(b.card),
            scattered: self.scattered && b.scattered,
        }
    }

    fn ordinal(a: &CnfOrdinal) -> IntervalSummary {
        IntervalSummary {
            card: a.as_finite().map_or(CardClass::Aleph0, CardClass::Fin),
            scattered: true,
        }
    }
}

fn ord_coord(a: &Address) -> Result<CnfOrdinal> {
    match a {
        Address::Ord(x) => Ok(x.clone()),
        _ => Err(Error::InvalidAddress(a.to_string())),
    }
}

/// The points strictly above (`up`) or below `a`.
pub fn segment_summary(t: &OrderTerm, a: &Address, up: bool) -> Result<IntervalSummary> {
    sampler::check_address(t, a)?;
    let dense = |t: &OrderTerm| -> Result<IntervalSummary> {
        Ok(IntervalSummary {
            card: card(t)?,
            scattered: false,
        })
    };
    Ok(match t {
        OrderTerm::Fin(p) => {
            let Address::Point(i) = a else {
                unreachable!("checked")
            };
            let m = if up {
                p.upset(*i as usize)
            } else {
                p.downset(*i as usize)
            };
            IntervalSummary {
                card: CardClass::Fin(m.count_ones() as u64),
                scattered: true,
            }
        }
        OrderTerm::Ac(_) => IntervalSummary::EMPTY,
        OrderTerm::Ord(alpha) => {
            let x = ord_coord(a)?;
            if up {
                IntervalSummary::ordinal(&alpha.left_sub(&x.succ()).expect("x < alpha"))
            } else {
                IntervalSummary::ordinal(&x)
            }
        }
        OrderTerm::Omega | OrderTerm::OmegaStar => {
            let x = ord_coord(a)?;
            if up == matches!(t, OrderTerm::Omega) {
                IntervalSummary {
                    card: CardClass::Aleph0,
                    scattered: true,
                }
            } else {
                IntervalSummary::ordinal(&x)
            }
        }
        OrderTerm::Kappa | OrderTerm::KappaStar => {
            let x = ord_coord(a)?;
            if up == matches!(t, OrderTerm::Kappa) {
                IntervalSummary {
                    card: CardClass::Kappa,
                    scattered: true,
                }
            } else {
                IntervalSummary::ordinal(&x)
            }
        }
        OrderTerm::Rats | OrderTerm::QKappa => dense(t)?,
        OrderTerm::Inv(x) => segment_summary(x, a, !up)?,
        OrderTerm::SumConst(i, b) => {
            let Address::Block(ia, ba) = a else {
                unreachable!("checked")
            };
            let inner = segment_summary(b, ba, up)?;
            let outer = segment_summary(i, ia, up)?.times(IntervalSummary::of(b)?);
            inner.then(outer)
        }
        OrderTerm::SumList(p, family) => {
            let Address::Item(k, x) = a else {
                unreachable!("checked")
            };
            let others = if up { p.upset(*k) } else { p.downset(*k) };
            let mut s = segment_summary(&family[*k], x, up)?;
            for (j, f) in family.iter().enumerate() {
                if others & (1 << j) != 0 {
                    s = s.then(IntervalSummary::of(f)?);
                }
            }
            s
        }
        OrderTerm::LimSum {
            base,
            step,
            basepoint,
        } => {
            let Address::Lim(b, path) = a else {
                unreachable!("checked")
            };
            let tree = OrderTerm::limsum(point(), (**step).clone(), basepoint.clone());
            let tree_sum = IntervalSummary::of(&tree)?;
            let inner = if card(step)? == CardClass::ONE {
                IntervalSummary::EMPTY
            } else if !path.is_empty()
                || (if up {
                    sampler::exists_above(step, basepoint)?
                } else {
                    sampler::exists_below(step, basepoint)?
                })
            {
                // a nonempty segment of the tree contains a copy of the tree
                IntervalSummary {
                    card: tree_sum.card,
                    scattered: false,
                }
            } else {
                IntervalSummary::EMPTY
            };
            inner.then(segment_summary(base, b, up)?.times(tree_sum))
        }
        OrderTerm::AcOmega => IntervalSummary::EMPTY,
    })
}

/// The open interval between `a < b`; `None` when they are not comparable
/// that way.
pub fn interval_summary(
    t: &OrderTerm,
    a: &Address,
    b: &Address,
) -> Result<Option<IntervalSummary>> {
    if sampler::compare(t, a, b)? != Some(std::cmp::Ordering::Less) {
        return Ok(None);
    }
    Ok(Some(match (t, a, b) {
        (OrderTerm::Fin(p), Address::Point(x), Address::Point(y)) => IntervalSummary {
            card: CardClass::Fin(p.interval(*x as usize, *y as usize).len() as u64),
            scattered: true,
        },
        (OrderTerm::Ord(_) | OrderTerm::Omega | OrderTerm::Kappa, _, _) => {
            IntervalSummary::ordinal(
                &ord_coord(b)?
                    .left_sub(&ord_coord(a)?.succ())
                    .expect("a < b"),
            )
        }
        (OrderTerm::OmegaStar | OrderTerm::KappaStar, _, _) => IntervalSummary::ordinal(
            &ord_coord(a)?
                .left_sub(&ord_coord(b)?.succ())
                .expect("b < a as ordinals"),
        ),
        (OrderTerm::Rats | OrderTerm::QKappa, _, _) => IntervalSummary {
            card: card(t)?,
            scattered: false,
        },
        (OrderTerm::Inv(x), _, _) => interval_summary(x, b, a)?.expect("reversed"),
        (OrderTerm::SumConst(i, s), Address::Block(ia, xa), Address::Block(ib, xb)) => {
            if ia == ib {
                interval_summary(s, xa, xb)?.expect("same block")
            } else {
                let between = interval_summary(i, ia, ib)?.expect("blocks ordered");
                segment_summary(s, xa, true)?
                    .then(between.times(IntervalSummary::of(s)?))
                    .then(segment_summary(s, xb, false)?)
            }
        }
        (OrderTerm::SumList(p, family), Address::Item(j, xa), Address::Item(k, xb)) => {
            if j == k {
                interval_summary(&family[*j], xa, xb)?.expect("same summand")
            } else {
                let mut s = segment_summary(&family[*j], xa, true)?;
                let mid = p.upset(*j) & p.downset(*k);
                for (m, f) in family.iter().enumerate() {
                    if mid & (1 << m) != 0 {
                        s = s.then(IntervalSummary::of(f)?);
                    }
                }
                s.then(segment_summary(&family[*k], xb, false)?)
            }
        }
        (
            OrderTerm::LimSum {
                base,
                step,
                basepoint,
            },
            Address::Lim(ba, pa),
            Address::Lim(bb, pb),
        ) => {
            let tree = OrderTerm::limsum(point(), (**step).clone(), basepoint.clone());
            if ba == bb {
                // distinct points of a nontrivial tree have a copy of the
                // tree between them
                IntervalSummary {
                    card: card(&tree)?,
                    scattered: false,
                }
            } else {
                let ta = Address::lim(Address::finite(0), pa.clone());
                let tb = Address::lim(Address::finite(0), pb.clone());
                let between = interval_summary(base, ba, bb)?.expect("blocks ordered");
                segment_summary(&tree, &ta, true)?
                    .then(between.times(IntervalSummary::of(&tree)?))
                    .then(segment_summary(&tree, &tb, false)?)
            }
        }
        _ => return Err(Error::InvalidAddress(format!("{a} / {b} in {t}"))),
    }))
}
