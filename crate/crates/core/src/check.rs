//! Sample-based oracle checks and the named regression suites run by the
//! command line.

use std::cmp::Ordering;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::attrs::{attrs, rho_surrogate_with, AttrReport, RhoFormula};
use crate::card::CardClass;
use crate::catalog;
use crate::condense::{condense_H, hausdorff_rank, literal_rank};
use crate::densegen::{
    back_and_forth, check_star, saturate, stage_filtered_descending, StageOrder,
};
use crate::error::{Error, Result};
use crate::finposet::FinPoset;
use crate::ordinal::CnfOrdinal;
use crate::sampler::{self, Address};
use crate::term::OrderTerm;

/// A failed oracle check with its witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: String,
    pub term: String,
    pub detail: String,
    pub addresses: Vec<Address>,
}

fn violation(kind: &str, t: &OrderTerm, detail: String, addresses: Vec<Address>) -> Violation {
    Violation {
        kind: kind.into(),
        term: t.to_string(),
        detail,
        addresses,
    }
}

/// Sample sizes and seeds used by [`oracle_check`].
#[derive(Clone, Debug)]
pub struct OraclePlan {
    pub seeds: Vec<u64>,
    pub size: usize,
}

impl Default for OraclePlan {
    fn default() -> Self {
        OraclePlan {
            seeds: (0..4).collect(),
            size: 12,
        }
    }
}

/// Tests `report` against seeded finite restrictions of `t` and against
/// constructed monotone chains of length `budget`.
pub fn oracle_check(t: &OrderTerm, report: &AttrReport, budget: usize) -> Result<Vec<Violation>> {
    oracle_check_with(t, report, budget, &OraclePlan::default())
}

pub fn oracle_check_with(
    t: &OrderTerm,
    report: &AttrReport,
    budget: usize,
    plan: &OraclePlan,
) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    if report.card.is_zero() {
        return Ok(out);
    }
    let rho: Vec<CnfOrdinal> = if report.fac {
        [RhoFormula::Structural, RhoFormula::Width]
            .into_iter()
            .map(|f| rho_surrogate_with(t, f))
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    for &seed in &plan.seeds {
        let s = sampler::sample_restriction(t, plan.size, seed)?;
        out.extend(sample_violations(t, report, &rho, &s.addresses, &s.poset)?);
    }
    for descending in [true, false] {
        let claims_wf = if descending {
            report.wf_omega
        } else {
            report.cowf_omega
        };
        let kind = if descending {
            "descending_chain"
        } else {
            "ascending_chain"
        };
        match sampler::monotone_chain(t, budget, descending) {
            Some(chain) => {
                let want = if descending {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
                let mut valid = chain.len() == budget;
                for a in &chain {
                    valid &= sampler::check_address(t, a).is_ok();
                }
                for w in chain.windows(2) {
                    valid &= sampler::compare(t, &w[0], &w[1])? == Some(want);
                }
                if !valid {
                    out.push(violation(
                        kind,
                        t,
                        "constructed chain is not monotone".into(),
                        chain,
                    ));
                } else if claims_wf {
                    out.push(violation(
                        kind,
                        t,
                        format!(
                            "report claims no infinite {kind} but one of length {budget} exists"
                        ),
                        chain,
                    ));
                }
            }
            None if !claims_wf => out.push(violation(
                kind,
                t,
                format!(
                    "report denies well-foundedness but no {kind} of length {budget} was found"
                ),
                Vec::new(),
            )),
            None => {}
        }
    }
    Ok(out)
}

fn sample_violations(
    t: &OrderTerm,
    report: &AttrReport,
    rho: &[CnfOrdinal],
    addresses: &[Address],
    poset: &FinPoset,
) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    if let Some(w) = sampler::strict_order_violation(t, addresses)? {
        out.push(violation(
            "strict_order",
            t,
            "compare is not a strict order".into(),
            w,
        ));
    }
    if report.linear && !poset.is_linear() {
        out.push(violation(
            "linear",
            t,
            "sample of a linear term is not a chain".into(),
            addresses.to_vec(),
        ));
    }
    if let CardClass::Fin(m) = report.ac_card {
        let w = poset.width() as u64;
        if w > m {
            out.push(violation(
                "antichain",
                t,
                format!("sampled antichain of size {w} exceeds bound {m}"),
                addresses.to_vec(),
            ));
        }
    }
    if !rho.is_empty() {
        let exact = poset.antichain_rank_exact();
        for r in rho {
            if exact > *r {
                out.push(violation(
                    "rho",
                    t,
                    format!("sampled antichain rank {exact} exceeds surrogate {r}"),
                    addresses.to_vec(),
                ));
            }
        }
    }
    if report.hier.in_h && !attrs(&OrderTerm::Fin(poset.clone()))?.hier.in_h {
        out.push(violation(
            "hierarchy_restriction",
            t,
            "finite restriction of a hierarchy member is not a member".into(),
            addresses.to_vec(),
        ));
    }
    Ok(out)
}

/// One line of a suite.
#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub ok: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckLine>,
}

pub const SUITES: [&str; 6] = [
    "finite",
    "hierarchy",
    "examples",
    "condense",
    "dense",
    "sampler",
];

fn line(name: &str, ok: bool, detail: impl Into<String>, cx: Option<Value>) -> CheckLine {
    CheckLine {
        name: name.into(),
        ok,
        detail: detail.into(),
        counterexample: if ok { None } else { cx },
    }
}

/// Runs a suite by name; `all` runs every suite.
pub fn run_suite(name: &str) -> Result<Vec<SuiteReport>> {
    let names: Vec<&str> = if name == "all" {
        SUITES.to_vec()
    } else {
        vec![name]
    };
    names
        .into_iter()
        .map(|n| {
            let checks = match n {
                "finite" => suite_finite(5)?,
                "hierarchy" => suite_hierarchy()?,
                "examples" => suite_examples()?,
                "condense" => suite_condense()?,
                "dense" => suite_dense()?,
                "sampler" => suite_sampler(5)?,
                other => return Err(Error::Unsupported(format!("unknown suite `{other}`"))),
            };
            Ok(SuiteReport {
                suite: n.into(),
                passed: checks.iter().all(|c| c.ok),
                checks,
            })
        })
        .collect()
}

/// Rank calibration, inverse and restriction invariance, and validity of
/// every augmentation and weakening, over all posets on up to `max_n`
/// labelled points.
pub fn suite_finite(max_n: usize) -> Result<Vec<CheckLine>> {
    let start = Instant::now();
    let mut lines = Vec::new();
    let one = CnfOrdinal::one();
    let linear_ok = (1..=max_n).all(|n| FinPoset::chain(n).antichain_rank_exact() == one);
    lines.push(line(
        "rank_linear",
        linear_ok,
        "rank of every chain is 1",
        None,
    ));
    let ac_ok = (1..=max_n)
        .all(|n| FinPoset::antichain(n).antichain_rank_exact() == CnfOrdinal::finite(n as u64));
    lines.push(line(
        "rank_antichain",
        ac_ok,
        "rank of antichain(n) is n",
        None,
    ));

    let (mut inv_bad, mut restr_bad, mut aug_bad, mut weak_bad) = (None, None, None, None);
    let mut count = 0usize;
    for n in 0..=max_n {
        for p in FinPoset::all_on(n) {
            count += 1;
            let r = p.antichain_rank_exact();
            if inv_bad.is_none() && p.inverse().antichain_rank_exact() != r {
                inv_bad = Some(json!(p));
            }
            if restr_bad.is_none() {
                for mask in 0..(1u64 << n) {
                    if p.restrict_mask(mask).antichain_rank_exact() > r {
                        restr_bad = Some(json!({"poset": p, "subset": mask}));
                        break;
                    }
                }
            }
            if aug_bad.is_none() {
                if let Some(a) = p
                    .augmentations()
                    .find(|a| !a.is_valid() || !a.is_augmentation_of(&p))
                {
                    aug_bad = Some(json!({"poset": p, "augmentation": a}));
                }
            }
            if weak_bad.is_none() {
                if let Some(w) = p
                    .weakenings()
                    .find(|w| !w.is_valid() || !p.is_augmentation_of(w))
                {
                    weak_bad = Some(json!({"poset": p, "weakening": w}));
                }
            }
        }
    }
    lines.push(line(
        "rank_inverse",
        inv_bad.is_none(),
        format!("{count} posets"),
        inv_bad,
    ));
    lines.push(line(
        "rank_restriction",
        restr_bad.is_none(),
        "every induced subposet",
        restr_bad,
    ));
    lines.push(line(
        "augmentations",
        aug_bad.is_none(),
        "valid and containing",
        aug_bad,
    ));
    lines.push(line(
        "weakenings",
        weak_bad.is_none(),
        "valid and contained",
        weak_bad,
    ));
    lines.push(line(
        "runtime",
        start.elapsed().as_secs() <= 120,
        format!("{:.2}s", start.elapsed().as_secs_f64()),
        None,
    ));
    Ok(lines)
}

pub fn suite_hierarchy() -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    for (name, t) in catalog::catalog() {
        let h = attrs(&t)?.hier;
        let hi = attrs(&OrderTerm::inv(t.clone()))?.hier;
        lines.push(line(
            &format!("inverse_alpha/{name}"),
            h.alpha_bound == hi.alpha_bound,
            format!("{:?} vs {:?}", h.alpha_bound, hi.alpha_bound),
            Some(json!({"term": t})),
        ));
        if h.in_h {
            let mut bad = None;
            for seed in 0..3 {
                let s = sampler::sample_restriction(&t, 10, seed)?;
                if !attrs(&OrderTerm::Fin(s.poset.clone()))?.hier.in_h {
                    bad = Some(json!({"term": t, "seed": seed, "addresses": s.addresses}));
                    break;
                }
            }
            lines.push(line(
                &format!("restriction_in_h/{name}"),
                bad.is_none(),
                "3 samples",
                bad,
            ));
        }
    }
    for (s, want) in [("k", 1u64), ("L", 1), ("sum(k, k*)", 2)] {
        let got = attrs(&crate::parse::parse(s)?)?.hier.alpha_bound;
        lines.push(line(
            &format!("alpha/{s}"),
            got == Some(CnfOrdinal::finite(want)),
            format!("{got:?}"),
            None,
        ));
    }
    Ok(lines)
}

pub fn suite_examples() -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    for n in 0..4 {
        let r = attrs(&catalog::l_stage(n))?;
        lines.push(line(
            &format!("L{n}_not_dense"),
            !r.weakly_kappa_dense,
            "",
            None,
        ));
    }
    let l = attrs(&catalog::l_limit())?;
    lines.push(line("L_dense", l.weakly_kappa_dense, "", None));
    lines.push(line("L_wf_kappa", l.wf_kappa, "", None));
    lines.push(line("L_scattered", l.weakly_kappa_scattered, "", None));
    lines.push(line("L_in_h", l.hier.in_h, "", None));
    let w = attrs(&catalog::non_fac_witness())?;
    lines.push(line(
        "non_fac",
        !w.fac && w.kappa_ac && w.weakly_kappa_scattered,
        format!(
            "fac={} kappa_ac={} wks={}",
            w.fac, w.kappa_ac, w.weakly_kappa_scattered
        ),
        None,
    ));
    Ok(lines)
}

pub fn suite_condense() -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    for (name, t) in catalog::linear_catalog() {
        let r = attrs(&t)?;
        let q = condense_H(&t)?.quotient;
        let single = q == OrderTerm::point();
        lines.push(line(
            &format!("singleton_iff_scattered/{name}"),
            single == r.scattered_omega,
            format!("quotient {q}"),
            Some(json!({"term": t})),
        ));
        if let Ok(rank) = hausdorff_rank(&t) {
            if rank <= CnfOrdinal::finite(4) {
                let lit = literal_rank(&t, 16)?;
                lines.push(line(
                    &format!("rank/{name}"),
                    lit.map(|k| CnfOrdinal::finite(k as u64)) == Some(rank.clone()),
                    format!("recursion {rank}, iteration {lit:?}"),
                    Some(json!({"term": t})),
                ));
            }
        }
    }
    Ok(lines)
}

pub fn suite_dense() -> Result<Vec<CheckLine>> {
    let start = Instant::now();
    let mut lines = Vec::new();
    let s = saturate(&StageOrder::chain(2), 4, 3, 0)?;
    let unmet = check_star(&s, 3, Some(&s.born_by(3)));
    lines.push(line(
        "star_round3",
        unmet.is_empty(),
        format!("{} elements", s.len()),
        unmet.first().map(|g| json!(g)),
    ));
    let chain = stage_filtered_descending(&s);
    lines.push(line(
        "stage_descending",
        chain.len() >= 4,
        format!("length {}", chain.len()),
        None,
    ));
    let a = saturate(&StageOrder::chain(2), 3, 2, 1)?;
    let b = saturate(&StageOrder::chain(3), 3, 2, 7)?;
    let bf = back_and_forth(&a, &b, &[], 10)?;
    lines.push(line(
        "back_and_forth",
        bf.rounds_done() >= 10,
        format!("{} rounds", bf.rounds_done()),
        Some(json!(bf)),
    ));
    lines.push(line(
        "runtime",
        start.elapsed().as_secs() <= 60,
        format!("{:.2}s", start.elapsed().as_secs_f64()),
        None,
    ));
    Ok(lines)
}

/// `seeds` samples per catalog term.
pub fn suite_sampler(seeds: u64) -> Result<Vec<CheckLine>> {
    let plan = OraclePlan {
        seeds: (0..seeds).collect(),
        size: 14,
    };
    let mut lines = Vec::new();
    for (name, t) in catalog::catalog() {
        let r = attrs(&t)?;
        let v = oracle_check_with(&t, &r, 8, &plan)?;
        lines.push(line(
            &format!("oracle/{name}"),
            v.is_empty(),
            format!("{} violations", v.len()),
            v.first().map(|x| json!(x)),
        ));
    }
    Ok(lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    #[test]
    fn oracle_examples() {
        let t = parse("inv(w)").unwrap();
        let r = attrs(&t).unwrap();
        assert!(oracle_check(&t, &r, 10).unwrap().is_empty());
        // a deliberately wrong report is caught
        let mut bad = r.clone();
        bad.wf_omega = true;
        assert!(oracle_check(&t, &bad, 10)
            .unwrap()
            .iter()
            .any(|v| v.kind == "descending_chain"));
        let mut bad = attrs(&parse("ac(3)").unwrap()).unwrap();
        bad.ac_card = CardClass::Fin(1);
        assert!(!oracle_check(&parse("ac(3)").unwrap(), &bad, 4)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn quick_suites_pass() {
        for name in ["hierarchy", "examples", "condense", "dense"] {
            for s in run_suite(name).unwrap() {
                for c in &s.checks {
                    assert!(c.ok, "{}/{}: {}", s.suite, c.name, c.detail);
                }
            }
        }
        for c in suite_sampler(2).unwrap() {
            assert!(c.ok, "{}: {} {:?}", c.name, c.detail, c.counterexample);
        }
    }
}
