//! Attribute synthesis for order terms.
//!
//! One bottom-up pass computes, for every node, its cardinality class,
//! antichain bound, well-foundedness in both directions at ω and κ, the
//! smallest interval/upset/downset sizes, density and scatteredness flags,
//! and hierarchy information.
//!
//! Rule table (κ is uncountable regular, κ^{<κ} = κ):
//!
//! | node            | rule                                                           |
//! |-----------------|----------------------------------------------------------------|
//! | `Σ_I B`         | `|Σ| = |I|·|B|`, `ac = ac(I)·ac(B)`                              |
//! |                 | `wf_x = wf_x(I) ∧ wf_x(B)` (non-increasing block projection, κ regular) |
//! |                 | `gap = min(gap(B), up(B) + gap(I)·|B| + down(B))`               |
//! |                 | `up = up(B) + up(I)·|B|`, dually `down`                           |
//! |                 | scattered / κ-scattered iff index and summands are              |
//! |                 | embeds a κ-dense chain iff index or summand does                |
//! | `inv(t)`        | swaps `wf ↔ cowf`, `up ↔ down`, first ↔ last                      |
//! | `limsum(B,S,p)` | equal to `Σ_{x∈B} T` with `T = limsum(1,S,p)`, where `T` is dense |
//! |                 | with every interval of size `max(|S|, ℵ₀)`                       |
//!
//! `gap` is the least size of an open interval `(s,t)` with `s < t`; `up`
//! and `down` are the least sizes of a strict upset / downset. A linear order
//! has an adjacent pair iff `gap = 0`, a last element iff `up = 0`, and is
//! weakly κ-dense iff it has two points and `gap = κ`.

use std::collections::HashMap;
use std::ops::{Add, Mul};
use std::sync::RwLock;

use serde::Serialize;

use crate::card::CardClass;
use crate::error::{Error, Result};
use crate::finposet::FinPoset;
use crate::ordinal::{CnfOrdinal, DEFAULT_MAX_DEPTH};
use crate::sampler;
use crate::term::OrderTerm;

use CardClass::{Aleph0, Fin, Kappa};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    Member,
    NotMember,
    /// Neither membership nor its failure follows from the synthesis rules.
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HierInfo {
    pub in_h: bool,
    pub status: Membership,
    /// Upper bound on the least hierarchy level containing the term.
    pub alpha_bound: Option<CnfOrdinal>,
    /// Conjectured antichain-rank bound; only for FAC terms.
    pub rho_bound: Option<CnfOrdinal>,
}

impl HierInfo {
    fn member(alpha: CnfOrdinal) -> HierInfo {
        HierInfo {
            in_h: true,
            status: Membership::Member,
            alpha_bound: Some(alpha),
            rho_bound: None,
        }
    }

    fn not_member() -> HierInfo {
        HierInfo {
            in_h: false,
            status: Membership::NotMember,
            alpha_bound: None,
            rho_bound: None,
        }
    }

    fn indeterminate() -> HierInfo {
        HierInfo {
            in_h: false,
            status: Membership::Indeterminate,
            alpha_bound: None,
            rho_bound: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AttrReport {
    pub card: CardClass,
    pub linear: bool,
    pub fac: bool,
    pub kappa_ac: bool,
    /// Size class of the largest antichain (always attained).
    pub ac_card: CardClass,
    pub wf_omega: bool,
    pub wf_kappa: bool,
    pub cowf_omega: bool,
    pub cowf_kappa: bool,
    /// `None` on nonlinear terms.
    pub has_first: Option<bool>,
    pub has_last: Option<bool>,
    pub has_adjacent_pair: Option<bool>,
    pub weakly_kappa_dense: bool,
    pub embeds_weakly_kappa_dense: bool,
    pub weakly_kappa_scattered: bool,
    pub strongly_kappa_scattered: bool,
    pub scattered_omega: bool,
    pub min_gap: Option<CardClass>,
    pub min_upset: Option<CardClass>,
    pub min_downset: Option<CardClass>,
    pub hier: HierInfo,
}

impl AttrReport {
    fn empty() -> AttrReport {
        AttrReport {
            card: CardClass::ZERO,
            linear: true,
            fac: true,
            kappa_ac: true,
            ac_card: CardClass::ZERO,
            wf_omega: true,
            wf_kappa: true,
            cowf_omega: true,
            cowf_kappa: true,
            has_first: None,
            has_last: None,
            has_adjacent_pair: None,
            weakly_kappa_dense: false,
            embeds_weakly_kappa_dense: false,
            weakly_kappa_scattered: true,
            strongly_kappa_scattered: true,
            scattered_omega: true,
            min_gap: None,
            min_upset: None,
            min_downset: None,
            hier: HierInfo::member(CnfOrdinal::one()),
        }
        .finish()
    }

    /// Well-ordered countable chain (also the template for finite chains).
    fn countable_chain(card: CardClass, has_last: bool) -> AttrReport {
        let infinite = !card.is_finite();
        AttrReport {
            card,
            linear: true,
            ac_card: CardClass::ONE,
            cowf_omega: !infinite,
            min_gap: (card >= Fin(2)).then_some(CardClass::ZERO),
            min_upset: Some(if has_last { CardClass::ZERO } else { Aleph0 }),
            min_downset: Some(CardClass::ZERO),
            ..AttrReport::empty()
        }
    }

    fn inverse(&self) -> AttrReport {
        AttrReport {
            wf_omega: self.cowf_omega,
            cowf_omega: self.wf_omega,
            wf_kappa: self.cowf_kappa,
            cowf_kappa: self.wf_kappa,
            min_upset: self.min_downset,
            min_downset: self.min_upset,
            ..self.clone()
        }
        .finish()
    }

    /// Derives the dependent fields from the primary ones.
    fn finish(mut self) -> AttrReport {
        self.fac = self.ac_card.is_finite();
        self.kappa_ac = self.ac_card != Kappa;
        if self.linear && !self.card.is_zero() {
            self.has_first = Some(self.min_downset == Some(CardClass::ZERO));
            self.has_last = Some(self.min_upset == Some(CardClass::ZERO));
            self.has_adjacent_pair = Some(self.min_gap == Some(CardClass::ZERO));
        } else if self.linear {
            self.has_first = Some(false);
            self.has_last = Some(false);
            self.has_adjacent_pair = Some(false);
        } else {
            self.has_first = None;
            self.has_last = None;
            self.has_adjacent_pair = None;
        }
        self.weakly_kappa_dense = self.linear && self.card >= Fin(2) && self.min_gap == Some(Kappa);
        self.embeds_weakly_kappa_dense |= self.weakly_kappa_dense;
        self.strongly_kappa_scattered = !self.embeds_weakly_kappa_dense;
        self
    }

    /// Fills `hier` from the node-specific rule, after the base-level
    /// shortcut: an FAC term that is κ-well-founded or whose inverse is sits
    /// at level 1.
    fn with_hier(mut self, node_rule: impl FnOnce() -> HierInfo) -> AttrReport {
        self.hier = if !self.fac || !self.weakly_kappa_scattered {
            HierInfo::not_member()
        } else if self.wf_kappa || self.cowf_kappa {
            HierInfo::member(CnfOrdinal::one())
        } else {
            node_rule()
        };
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RhoFormula {
    /// Natural products along constant sums, natural sums across index antichains.
    #[default]
    Structural,
    /// The largest antichain size.
    Width,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KappaAcClass {
    Fac,
    KappaAcOnly,
    LargeAntichain,
}

/// Computes the attribute report, validating the term on the way.
pub fn attrs(t: &OrderTerm) -> Result<AttrReport> {
    attrs_with_depth(t, DEFAULT_MAX_DEPTH)
}

pub fn attrs_with_depth(t: &OrderTerm, max_depth: usize) -> Result<AttrReport> {
    let mut r = synth(t, max_depth)?;
    if r.fac && r.hier.in_h {
        r.hier.rho_bound = Some(rho_surrogate_with(t, RhoFormula::Structural)?);
    }
    Ok(r)
}

pub fn hierarchy_info(t: &OrderTerm) -> Result<HierInfo> {
    Ok(attrs(t)?.hier)
}

pub fn classify_kappa_ac(t: &OrderTerm) -> Result<KappaAcClass> {
    Ok(match attrs(t)?.ac_card {
        Fin(_) => KappaAcClass::Fac,
        Aleph0 => KappaAcClass::KappaAcOnly,
        Kappa => KappaAcClass::LargeAntichain,
    })
}

/// Checks that a term is well formed.
pub fn validate(t: &OrderTerm) -> Result<()> {
    synth(t, DEFAULT_MAX_DEPTH).map(|_| ())
}

fn synth(t: &OrderTerm, max_depth: usize) -> Result<AttrReport> {
    let r = match t {
        OrderTerm::Fin(p) => fin_report(p),
        OrderTerm::Ord(a) => {
            a.check_depth(max_depth)?;
            match a.as_finite() {
                Some(0) => AttrReport::empty(),
                Some(n) => AttrReport::countable_chain(Fin(n), true).finish(),
                None => AttrReport::countable_chain(Aleph0, a.is_successor()).finish(),
            }
        }
        OrderTerm::Omega => AttrReport::countable_chain(Aleph0, false).finish(),
        OrderTerm::OmegaStar => AttrReport::countable_chain(Aleph0, false)
            .finish()
            .inverse(),
        OrderTerm::Kappa => kappa_report(),
        OrderTerm::KappaStar => kappa_report().inverse(),
        OrderTerm::Rats => AttrReport {
            card: Aleph0,
            ac_card: CardClass::ONE,
            wf_omega: false,
            cowf_omega: false,
            scattered_omega: false,
            min_gap: Some(Aleph0),
            min_upset: Some(Aleph0),
            min_downset: Some(Aleph0),
            ..AttrReport::empty()
        }
        .finish(),
        OrderTerm::QKappa => AttrReport {
            card: Kappa,
            ac_card: CardClass::ONE,
            wf_omega: false,
            cowf_omega: false,
            wf_kappa: false,
            cowf_kappa: false,
            scattered_omega: false,
            weakly_kappa_scattered: false,
            embeds_weakly_kappa_dense: true,
            min_gap: Some(Kappa),
            min_upset: Some(Kappa),
            min_downset: Some(Kappa),
            ..AttrReport::empty()
        }
        .finish(),
        OrderTerm::Ac(0) => {
            return Err(Error::InvalidTerm("ac(n) needs n ≥ 1".into()));
        }
        OrderTerm::Ac(n) => AttrReport {
            card: Fin(*n),
            linear: *n == 1,
            ac_card: Fin(*n),
            min_upset: Some(CardClass::ZERO),
            min_downset: Some(CardClass::ZERO),
            ..AttrReport::empty()
        }
        .finish(),
        OrderTerm::AcOmega => AttrReport {
            card: Aleph0,
            linear: false,
            ac_card: Aleph0,
            min_upset: Some(CardClass::ZERO),
            min_downset: Some(CardClass::ZERO),
            ..AttrReport::empty()
        }
        .finish(),
        OrderTerm::Inv(inner) => {
            let r = synth(inner, max_depth)?;
            let hier = r.hier.clone();
            return Ok(r.inverse().with_hier(|| hier));
        }
        OrderTerm::SumConst(index, summand) => {
            let i = synth(index, max_depth)?;
            let b = synth(summand, max_depth)?;
            return Ok(sum_const(&i, &b));
        }
        OrderTerm::SumList(index, family) => {
            if family.len() != index.len() {
                return Err(Error::InvalidTerm(format!(
                    "lsum has {} summands for an index of size {}",
                    family.len(),
                    index.len()
                )));
            }
            let reports = family
                .iter()
                .map(|f| synth(f, max_depth))
                .collect::<Result<Vec<_>>>()?;
            return Ok(sum_list(index, &reports));
        }
        OrderTerm::LimSum {
            base,
            step,
            basepoint,
        } => {
            let b = synth(base, max_depth)?;
            let s = synth(step, max_depth)?;
            if s.card.is_zero() {
                return Err(Error::InvalidTerm("limsum step must be nonempty".into()));
            }
            if !b.linear || !s.linear {
                return Err(Error::InvalidTerm(
                    "limsum requires linear base and step".into(),
                ));
            }
            sampler::check_address(step, basepoint)?;
            let tree = limit_tree(step, &s, basepoint)?;
            return Ok(sum_const(&b, &tree));
        }
    };
    Ok(r.with_hier(HierInfo::indeterminate))
}

fn kappa_report() -> AttrReport {
    AttrReport {
        card: Kappa,
        ac_card: CardClass::ONE,
        cowf_omega: false,
        cowf_kappa: false,
        min_gap: Some(CardClass::ZERO),
        min_upset: Some(Kappa),
        min_downset: Some(CardClass::ZERO),
        ..AttrReport::empty()
    }
    .finish()
}

fn fin_report(p: &FinPoset) -> AttrReport {
    if p.is_empty() {
        return AttrReport::empty();
    }
    let n = p.len();
    let min_up = (0..n).map(|a| p.upset(a).count_ones()).min();
    let min_down = (0..n).map(|a| p.downset(a).count_ones()).min();
    let gap = p
        .pairs()
        .into_iter()
        .map(|(a, b)| p.interval(a, b).len())
        .min();
    AttrReport {
        card: Fin(n as u64),
        linear: p.is_linear(),
        ac_card: Fin(p.width() as u64),
        min_gap: gap.map(|g| Fin(g as u64)),
        min_upset: min_up.map(|u| Fin(u as u64)),
        min_downset: min_down.map(|d| Fin(d as u64)),
        ..AttrReport::empty()
    }
    .finish()
    .with_hier(HierInfo::indeterminate)
}

fn opt_min(a: Option<CardClass>, b: Option<CardClass>) -> Option<CardClass> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn sum_const(i: &AttrReport, b: &AttrReport) -> AttrReport {
    let card = i.card.mul(b.card);
    if card.is_zero() {
        return AttrReport::empty();
    }
    let b_up = b.min_upset.expect("nonempty");
    let b_down = b.min_downset.expect("nonempty");
    let across = i.min_gap.map(|g| b_up.add(g.mul(b.card)).add(b_down));
    AttrReport {
        card,
        linear: i.linear && b.linear,
        ac_card: i.ac_card.mul(b.ac_card),
        wf_omega: i.wf_omega && b.wf_omega,
        wf_kappa: i.wf_kappa && b.wf_kappa,
        cowf_omega: i.cowf_omega && b.cowf_omega,
        cowf_kappa: i.cowf_kappa && b.cowf_kappa,
        embeds_weakly_kappa_dense: i.embeds_weakly_kappa_dense || b.embeds_weakly_kappa_dense,
        weakly_kappa_scattered: i.weakly_kappa_scattered && b.weakly_kappa_scattered,
        scattered_omega: i.scattered_omega && b.scattered_omega,
        min_gap: opt_min(b.min_gap, across),
        min_upset: Some(b_up.add(i.min_upset.expect("nonempty").mul(b.card))),
        min_downset: Some(b_down.add(i.min_downset.expect("nonempty").mul(b.card))),
        ..AttrReport::empty()
    }
    .finish()
    .with_hier(|| match (&i.hier.alpha_bound, &b.hier.alpha_bound) {
        (Some(ai), Some(ab)) if i.hier.in_h && b.hier.in_h => HierInfo::member(ab.std_add(ai)),
        _ => HierInfo::indeterminate(),
    })
}

fn sum_list(index: &FinPoset, family: &[AttrReport]) -> AttrReport {
    let live: Vec<usize> = (0..family.len())
        .filter(|&k| !family[k].card.is_zero())
        .collect();
    if live.is_empty() {
        return AttrReport::empty();
    }
    let idx = index.restrict(&live).expect("live indices in range");
    let fam: Vec<&AttrReport> = live.iter().map(|&k| &family[k]).collect();
    let n = fam.len();
    let card_of = |mask: u64| {
        CardClass::sum(
            (0..n)
                .filter(|&k| mask & (1 << k) != 0)
                .map(|k| fam[k].card),
        )
    };

    let ac_card = idx
        .antichain_masks()
        .into_iter()
        .map(|m| {
            CardClass::sum(
                (0..n)
                    .filter(|&k| m & (1 << k) != 0)
                    .map(|k| fam[k].ac_card),
            )
        })
        .max()
        .unwrap_or(CardClass::ZERO);
    let min_upset = (0..n)
        .map(|k| {
            fam[k]
                .min_upset
                .expect("nonempty")
                .add(card_of(idx.upset(k)))
        })
        .min();
    let min_downset = (0..n)
        .map(|k| {
            fam[k]
                .min_downset
                .expect("nonempty")
                .add(card_of(idx.downset(k)))
        })
        .min();
    let within = fam.iter().filter_map(|r| r.min_gap).min();
    let across = idx
        .pairs()
        .into_iter()
        .map(|(a, b)| {
            let between = idx.upset(a) & idx.downset(b);
            fam[a]
                .min_upset
                .expect("nonempty")
                .add(card_of(between))
                .add(fam[b].min_downset.expect("nonempty"))
        })
        .min();
    let all = |f: fn(&AttrReport) -> bool| fam.iter().all(|r| f(r));
    AttrReport {
        card: CardClass::sum(fam.iter().map(|r| r.card)),
        linear: idx.is_linear() && all(|r| r.linear),
        ac_card,
        wf_omega: all(|r| r.wf_omega),
        wf_kappa: all(|r| r.wf_kappa),
        cowf_omega: all(|r| r.cowf_omega),
        cowf_kappa: all(|r| r.cowf_kappa),
        embeds_weakly_kappa_dense: fam.iter().any(|r| r.embeds_weakly_kappa_dense),
        weakly_kappa_scattered: all(|r| r.weakly_kappa_scattered),
        scattered_omega: all(|r| r.scattered_omega),
        min_gap: opt_min(within, across),
        min_upset,
        min_downset,
        ..AttrReport::empty()
    }
    .finish()
    .with_hier(|| {
        if fam.iter().all(|r| r.hier.in_h) {
            let top = fam
                .iter()
                .filter_map(|r| r.hier.alpha_bound.clone())
                .max()
                .unwrap_or_else(CnfOrdinal::one);
            HierInfo::member(top.succ())
        } else {
            HierInfo::indeterminate()
        }
    })
}

/// Report for `limsum(1, step, basepoint)`: finite sequences of step
/// elements, ordered lexicographically with missing coordinates read as the
/// basepoint.
fn limit_tree(
    step: &OrderTerm,
    s: &AttrReport,
    basepoint: &crate::sampler::Address,
) -> Result<AttrReport> {
    if s.card == CardClass::ONE {
        return Ok(AttrReport::countable_chain(CardClass::ONE, true)
            .finish()
            .with_hier(HierInfo::indeterminate));
    }
    let above = sampler::exists_above(step, basepoint)?;
    let below = sampler::exists_below(step, basepoint)?;
    let size = s.card.max(Aleph0);
    Ok(AttrReport {
        card: size,
        linear: true,
        ac_card: CardClass::ONE,
        wf_omega: !below && s.wf_omega,
        cowf_omega: !above && s.cowf_omega,
        wf_kappa: s.wf_kappa,
        cowf_kappa: s.cowf_kappa,
        embeds_weakly_kappa_dense: s.embeds_weakly_kappa_dense,
        weakly_kappa_scattered: s.weakly_kappa_scattered,
        scattered_omega: false,
        min_gap: Some(size),
        min_upset: Some(if above { size } else { CardClass::ZERO }),
        min_downset: Some(if below { size } else { CardClass::ZERO }),
        ..AttrReport::empty()
    }
    .finish()
    .with_hier(HierInfo::indeterminate))
}

/// Conjectured antichain-rank bound for an FAC term.
pub fn rho_surrogate(t: &OrderTerm) -> Result<CnfOrdinal> {
    rho_surrogate_with(t, RhoFormula::Structural)
}

pub fn rho_surrogate_with(t: &OrderTerm, formula: RhoFormula) -> Result<CnfOrdinal> {
    let r = synth(t, DEFAULT_MAX_DEPTH)?;
    if !r.fac {
        return Err(Error::NotFac {
            op: "rho_surrogate",
        });
    }
    match formula {
        RhoFormula::Width => match r.ac_card {
            Fin(m) => Ok(CnfOrdinal::finite(m)),
            _ => unreachable!("fac checked"),
        },
        RhoFormula::Structural => rho_structural(t, &r),
    }
}

fn rho_structural(t: &OrderTerm, r: &AttrReport) -> Result<CnfOrdinal> {
    if r.card.is_zero() {
        return Ok(CnfOrdinal::zero());
    }
    if r.linear {
        return Ok(CnfOrdinal::one());
    }
    let sub = |t: &OrderTerm| -> Result<CnfOrdinal> {
        let r = synth(t, DEFAULT_MAX_DEPTH)?;
        rho_structural(t, &r)
    };
    match t {
        OrderTerm::Fin(p) => Ok(p.antichain_rank_exact()),
        OrderTerm::Ac(n) => Ok(CnfOrdinal::finite(*n)),
        OrderTerm::Inv(inner) => sub(inner),
        OrderTerm::SumConst(i, b) => Ok(sub(i)?.nat_prod(&sub(b)?)),
        OrderTerm::SumList(index, family) => {
            let ranks = family.iter().map(sub).collect::<Result<Vec<_>>>()?;
            Ok(index
                .antichain_masks()
                .into_iter()
                .map(|m| {
                    (0..family.len())
                        .filter(|&k| m & (1 << k) != 0)
                        .fold(CnfOrdinal::zero(), |acc, k| acc.nat_sum(&ranks[k]))
                })
                .max()
                .unwrap_or_else(CnfOrdinal::zero))
        }
        // remaining nonlinear leaves are non-FAC; limsum is linear
        _ => Err(Error::NotFac {
            op: "rho_surrogate",
        }),
    }
}

/// Memo table keyed by term structure. Lookups take a read lock; inserts a
/// write lock.
#[derive(Default)]
pub struct AttrCache {
    table: RwLock<HashMap<OrderTerm, AttrReport>>,
}

impl AttrCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, t: &OrderTerm) -> Result<AttrReport> {
        if let Some(r) = self.table.read().expect("cache lock").get(t) {
            return Ok(r.clone());
        }
        let r = attrs(t)?;
        self.table
            .write()
            .expect("cache lock")
            .insert(t.clone(), r.clone());
        Ok(r)
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::parse::parse;

    fn a(s: &str) -> AttrReport {
        attrs(&parse(s).unwrap()).unwrap()
    }

    #[test]
    fn l_family() {
        let l0 = a("L0");
        assert!(!l0.weakly_kappa_dense);
        assert!(l0.wf_kappa);
        assert_eq!(l0.has_adjacent_pair, Some(true));
        for n in 0..4 {
            assert!(
                !attrs(&catalog::l_stage(n)).unwrap().weakly_kappa_dense,
                "L{n}"
            );
        }
        let l = a("L");
        assert!(l.weakly_kappa_dense && l.wf_kappa && l.weakly_kappa_scattered);
        assert!(l.hier.in_h);
        assert_eq!(l.hier.alpha_bound, Some(CnfOrdinal::one()));
        assert!(!l.wf_omega);
        assert!(!l.scattered_omega);
    }

    #[test]
    fn leaves() {
        let q = a("Q");
        assert!(!q.scattered_omega && q.weakly_kappa_scattered);
        let qk = a("Qk");
        assert!(!qk.weakly_kappa_scattered && qk.weakly_kappa_dense);
        assert_eq!(qk.hier.status, Membership::NotMember);
        let k = a("k");
        assert_eq!(k.hier.alpha_bound, Some(CnfOrdinal::one()));
        assert_eq!(a("ac(5)").card, Fin(5));
    }

    #[test]
    fn non_fac_witness() {
        let r = a("lsum(ac(2); k, ac(w))");
        assert!(!r.fac && r.kappa_ac && r.weakly_kappa_scattered);
        assert_eq!(
            classify_kappa_ac(&parse("lsum(ac(2); k, ac(w))").unwrap()).unwrap(),
            KappaAcClass::KappaAcOnly
        );
        assert_eq!(
            classify_kappa_ac(&OrderTerm::AcOmega).unwrap(),
            KappaAcClass::KappaAcOnly
        );
    }

    #[test]
    fn hierarchy_levels() {
        let h = hierarchy_info(&parse("sum(k, k*)").unwrap()).unwrap();
        assert!(h.in_h);
        assert_eq!(h.alpha_bound, Some(CnfOrdinal::finite(2)));
        let h2 = hierarchy_info(&parse("inv(sum(k, k*))").unwrap()).unwrap();
        assert_eq!(h.alpha_bound, h2.alpha_bound);
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho_surrogate(&OrderTerm::Omega).unwrap(), CnfOrdinal::one());
        assert_eq!(
            rho_surrogate(&OrderTerm::Fin(FinPoset::antichain(4))).unwrap(),
            CnfOrdinal::finite(4)
        );
        assert!(rho_surrogate(&OrderTerm::AcOmega).is_err());
        assert_eq!(
            rho_surrogate_with(&parse("sum(w, ac(2))").unwrap(), RhoFormula::Width).unwrap(),
            CnfOrdinal::finite(2)
        );
    }

    #[test]
    fn involution_on_catalog() {
        for (name, t) in catalog::catalog() {
            let r = attrs(&t).unwrap();
            let rr = attrs(&OrderTerm::inv(OrderTerm::inv(t.clone()))).unwrap();
            assert_eq!(r, rr, "{name}");
        }
    }

    #[test]
    fn cache_reuses_reports() {
        let c = AttrCache::new();
        let t = catalog::l_limit();
        assert_eq!(c.get(&t).unwrap(), attrs(&t).unwrap());
        c.get(&t).unwrap();
        assert_eq!(c.len(), 1);
    }
}
