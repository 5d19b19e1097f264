//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any fails.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use ordcalc::attrs::{attrs, rho_surrogate_with, RhoFormula};
use ordcalc::catalog::{catalog, l_limit, l_stage, linear_catalog, non_fac_witness};
use ordcalc::condense::{condense_H, hausdorff_rank, literal_rank};
use ordcalc::densegen::{
    back_and_forth, check_star, saturate, stage_filtered_descending, StageOrder,
};
use ordcalc::sampler::{compare, sample_restriction};
use ordcalc::{parse, CardClass, CnfOrdinal, FinPoset, OrderTerm};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// Relation matrix oracles, independent of the bit-row representation.

type Rel = Vec<Vec<bool>>;

fn rel_of(p: &FinPoset) -> Rel {
    let n = p.len();
    (0..n)
        .map(|a| (0..n).map(|b| p.lt(a, b)).collect())
        .collect()
}

fn is_strict_order(r: &Rel) -> bool {
    let n = r.len();
    for a in 0..n {
        if r[a][a] {
            return false;
        }
        for b in 0..n {
            if r[a][b] && r[b][a] {
                return false;
            }
            for c in 0..n {
                if r[a][b] && r[b][c] && !r[a][c] {
                    return false;
                }
            }
        }
    }
    true
}

/// Every strict order on `n` labelled points, by filtering all relations.
fn brute_orders(n: usize) -> Vec<Rel> {
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for bits in 0u64..(1 << slots.len()) {
        let mut r = vec![vec![false; n]; n];
        for (i, &(a, b)) in slots.iter().enumerate() {
            r[a][b] = bits >> i & 1 == 1;
        }
        if is_strict_order(&r) {
            out.push(r);
        }
    }
    out
}

/// Well-founded rank of the nonempty antichains under reverse inclusion.
fn oracle_rank(r: &Rel) -> u64 {
    fn rank(r: &Rel, a: u64, memo: &mut HashMap<u64, u64>) -> u64 {
        if let Some(&v) = memo.get(&a) {
            return v;
        }
        let n = r.len();
        let mut best = 0;
        for x in 0..n {
            if a >> x & 1 == 1 {
                continue;
            }
            let free = (0..n).all(|y| a >> y & 1 == 0 || (!r[x][y] && !r[y][x]));
            if free {
                best = best.max(rank(r, a | 1 << x, memo) + 1);
            }
        }
        memo.insert(a, best);
        best
    }
    let mut memo = HashMap::new();
    (0..r.len())
        .map(|x| rank(r, 1 << x, &mut memo) + 1)
        .max()
        .unwrap_or(0)
}

fn oracle_width(r: &Rel) -> usize {
    let n = r.len();
    let mut best = 0;
    for mask in 0u64..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if members.len() > best && members.iter().all(|&a| members.iter().all(|&b| !r[a][b])) {
            best = members.len();
        }
    }
    best
}

fn restrict(r: &Rel, keep: &[usize]) -> Rel {
    keep.iter()
        .map(|&a| keep.iter().map(|&b| r[a][b]).collect())
        .collect()
}

fn inverse(r: &Rel) -> Rel {
    let n = r.len();
    (0..n).map(|a| (0..n).map(|b| r[b][a]).collect()).collect()
}

fn contains(big: &Rel, small: &Rel) -> bool {
    big.iter()
        .flatten()
        .zip(small.iter().flatten())
        .all(|(&b, &s)| b || !s)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let known = [1usize, 1, 3, 19, 219, 4231];
    for (n, &count) in known.iter().enumerate() {
        let brute: BTreeSet<Rel> = brute_orders(n).into_iter().collect();
        ensure(brute.len() == count, || {
            format!("{} orders on {n} points", brute.len())
        })?;
        let lib: BTreeSet<Rel> = FinPoset::all_on(n).map(|p| rel_of(&p)).collect();
        ensure(lib == brute, || {
            format!("enumeration mismatch on {n} points")
        })?;
        if n > 0 {
            ensure(oracle_rank(&rel_of(&FinPoset::chain(n))) == 1, || {
                format!("chain({n}) rank")
            })?;
            ensure(
                FinPoset::chain(n).antichain_rank_exact() == CnfOrdinal::one(),
                || format!("chain({n})"),
            )?;
            ensure(
                FinPoset::antichain(n).antichain_rank_exact() == CnfOrdinal::finite(n as u64),
                || format!("antichain({n})"),
            )?;
        }
        for p in FinPoset::all_on(n) {
            let r = rel_of(&p);
            let rk = oracle_rank(&r);
            ensure(p.antichain_rank_exact() == CnfOrdinal::finite(rk), || {
                format!("rank of {:?}", p.pairs())
            })?;
            ensure(oracle_rank(&inverse(&r)) == rk, || {
                format!("oracle inverse {:?}", p.pairs())
            })?;
            ensure(
                p.inverse().antichain_rank_exact() == CnfOrdinal::finite(rk),
                || format!("inverse rank of {:?}", p.pairs()),
            )?;
            for mask in 0u64..(1 << n) {
                let keep: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                let sub = oracle_rank(&restrict(&r, &keep));
                ensure(sub <= rk, || {
                    format!("restriction {keep:?} of {:?}", p.pairs())
                })?;
                ensure(
                    p.restrict_mask(mask).antichain_rank_exact() == CnfOrdinal::finite(sub),
                    || format!("library restriction {keep:?} of {:?}", p.pairs()),
                )?;
            }
            let augs: Vec<Rel> = p.augmentations().map(|a| rel_of(&a)).collect();
            for a in &augs {
                ensure(is_strict_order(a) && contains(a, &r), || {
                    format!("augmentation of {:?}", p.pairs())
                })?;
            }
            let want = brute.iter().filter(|q| contains(q, &r)).count();
            ensure(augs.len() == want, || {
                format!(
                    "{} augmentations of {:?}, want {want}",
                    augs.len(),
                    p.pairs()
                )
            })?;
            let weaks: Vec<Rel> = p.weakenings().map(|w| rel_of(&w)).collect();
            for w in &weaks {
                ensure(is_strict_order(w) && contains(&r, w), || {
                    format!("weakening of {:?}", p.pairs())
                })?;
            }
            let want = brute.iter().filter(|q| contains(&r, q)).count();
            ensure(weaks.len() == want, || {
                format!("{} weakenings of {:?}, want {want}", weaks.len(), p.pairs())
            })?;
        }
    }
    ensure(start.elapsed() <= Duration::from_secs(120), || {
        format!("took {:?}", start.elapsed())
    })
}

fn criterion_2() -> Outcome {
    for (name, t) in catalog() {
        let h = attrs(&t).map_err(|e| e.to_string())?.hier;
        let hi = attrs(&OrderTerm::inv(t.clone()))
            .map_err(|e| e.to_string())?
            .hier;
        ensure(h.alpha_bound == hi.alpha_bound, || {
            format!(
                "{name}: {:?} vs inverse {:?}",
                h.alpha_bound, hi.alpha_bound
            )
        })?;
        if h.in_h {
            for seed in 0..5 {
                let s = sample_restriction(&t, 12, seed).map_err(|e| e.to_string())?;
                let f = attrs(&OrderTerm::Fin(s.poset.clone())).map_err(|e| e.to_string())?;
                ensure(f.hier.in_h, || {
                    format!("{name} seed {seed}: restriction not in hierarchy")
                })?;
            }
        }
    }
    for (src, want) in [("k", 1u64), ("L", 1), ("sum(k, k*)", 2)] {
        let t = parse(src).map_err(|e| e.to_string())?;
        let got = attrs(&t).map_err(|e| e.to_string())?.hier.alpha_bound;
        ensure(got == Some(CnfOrdinal::finite(want)), || {
            format!("alpha({src}) = {got:?}")
        })?;
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    for n in 0..=3 {
        let r = attrs(&l_stage(n)).map_err(|e| e.to_string())?;
        ensure(!r.weakly_kappa_dense, || format!("L{n} reported dense"))?;
    }
    let l = attrs(&l_limit()).map_err(|e| e.to_string())?;
    ensure(l.weakly_kappa_dense, || "L not dense".into())?;
    ensure(l.wf_kappa, || "L not kappa well founded".into())?;
    ensure(l.weakly_kappa_scattered, || "L not weakly scattered".into())?;
    ensure(l.hier.in_h, || "L not in hierarchy".into())
}

fn criterion_4() -> Outcome {
    let t = non_fac_witness();
    ensure(
        t == parse("lsum(ac(2); k, ac(w))").map_err(|e| e.to_string())?,
        || format!("witness is {t}"),
    )?;
    let r = attrs(&t).map_err(|e| e.to_string())?;
    ensure(!r.fac && r.kappa_ac && r.weakly_kappa_scattered, || {
        format!(
            "fac={} kappa_ac={} wks={}",
            r.fac, r.kappa_ac, r.weakly_kappa_scattered
        )
    })
}

fn criterion_5() -> Outcome {
    // Hand-derived scatteredness of the linear catalog.
    let scattered = [
        ("omega", true),
        ("omega_star", true),
        ("kappa", true),
        ("kappa_star", true),
        ("rationals", false),
        ("q_kappa", false),
        ("q_of_kappa", false),
        ("q_of_pairs", false),
        ("omega_by_omega_star", true),
        ("kappa_kappa_star", true),
        ("omega_cubed_star", true),
    ];
    let lin = linear_catalog();
    ensure(lin.len() == 20, || format!("{} linear terms", lin.len()))?;
    for (name, want) in scattered {
        let r = lin
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| format!("missing {name}"))?;
        let got = attrs(&r.1).map_err(|e| e.to_string())?.scattered_omega;
        ensure(got == want, || format!("{name}: scattered {got}"))?;
    }
    let mut ranked = 0;
    for (name, t) in &lin {
        let r = attrs(t).map_err(|e| e.to_string())?;
        let q = condense_H(t).map_err(|e| e.to_string())?.quotient;
        ensure((q == OrderTerm::point()) == r.scattered_omega, || {
            format!("{name}: quotient {q}")
        })?;
        if !r.scattered_omega {
            continue;
        }
        match hausdorff_rank(t) {
            Ok(rank) if rank <= CnfOrdinal::finite(4) => {
                let lit = literal_rank(t, 16).map_err(|e| e.to_string())?;
                ensure(
                    lit.map(|k| CnfOrdinal::finite(k as u64)) == Some(rank.clone()),
                    || format!("{name}: recursion {rank}, iteration {lit:?}"),
                )?;
                ranked += 1;
            }
            _ => {}
        }
    }
    for (src, want) in [
        ("w", 1u64),
        ("ord(w^2)", 2),
        ("sum(w*, w)", 2),
        ("lsum(fin(2; 0<1); w*, w)", 1),
        ("inv(ord(w^3))", 3),
        ("5", 0),
    ] {
        let got =
            hausdorff_rank(&parse(src).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(got == CnfOrdinal::finite(want), || {
            format!("rank({src}) = {got}")
        })?;
    }
    ensure(ranked >= 8, || format!("only {ranked} ranked terms"))
}

fn subsets_up_to(ids: &[u32], k: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &x in ids {
        let grown: Vec<Vec<u32>> = out
            .iter()
            .filter(|s| s.len() < k)
            .map(|s| [s.clone(), vec![x]].concat())
            .collect();
        out.extend(grown);
    }
    out
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let p = saturate(&StageOrder::chain(2), 4, 3, 0).map_err(|e| e.to_string())?;
    let old = p.born_by(3);
    ensure(check_star(&p, 3, Some(&old)).is_empty(), || {
        "check_star reports unmet requests".into()
    })?;
    // Every pair of sides of size at most 3 over round-3 elements.
    let subsets = subsets_up_to(&old, 3);
    let all: Vec<u32> = p.elements().iter().map(|e| e.id).collect();
    for s in &subsets {
        for t in &subsets {
            if !s.iter().all(|&a| t.iter().all(|&b| p.lt(a, b))) {
                continue;
            }
            let met = all
                .iter()
                .any(|&x| s.iter().all(|&a| p.lt(a, x)) && t.iter().all(|&b| p.lt(x, b)));
            ensure(met, || format!("unmet gap {s:?} < x < {t:?}"))?;
        }
    }
    let chain = stage_filtered_descending(&p);
    ensure(chain.len() >= 4, || {
        format!("descending chain of length {}", chain.len())
    })?;
    for w in chain.windows(2) {
        let (a, b) = (p.element(w[0]).unwrap(), p.element(w[1]).unwrap());
        ensure(p.lt(b.id, a.id) && a.birth < b.birth, || {
            format!("chain step {} -> {}", a.id, b.id)
        })?;
    }
    let a = saturate(&StageOrder::chain(2), 3, 2, 1).map_err(|e| e.to_string())?;
    let b = saturate(&StageOrder::chain(3), 3, 2, 7).map_err(|e| e.to_string())?;
    let bf = back_and_forth(&a, &b, &[], 10).map_err(|e| e.to_string())?;
    ensure(bf.rounds_done() >= 10, || {
        format!("{} rounds", bf.rounds_done())
    })?;
    let map = match &bf {
        ordcalc::densegen::BackForth::Complete { map, .. } => map.clone(),
        other => return Err(format!("{other:?}")),
    };
    for &(x, y) in &map {
        for &(u, v) in &map {
            ensure(a.lt(x, u) == b.lt(y, v), || {
                format!("pairs ({x},{y}) and ({u},{v}) disagree")
            })?;
        }
    }
    ensure(start.elapsed() <= Duration::from_secs(60), || {
        format!("took {:?}", start.elapsed())
    })
}

fn criterion_7() -> Outcome {
    let mut samples = 0;
    for (name, t) in catalog() {
        let r = attrs(&t).map_err(|e| e.to_string())?;
        let rho: Vec<CnfOrdinal> = if r.fac {
            [RhoFormula::Structural, RhoFormula::Width]
                .into_iter()
                .map(|f| rho_surrogate_with(&t, f).map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?
        } else {
            Vec::new()
        };
        for seed in 0..5 {
            samples += 1;
            let s = sample_restriction(&t, 14, seed).map_err(|e| e.to_string())?;
            let n = s.addresses.len();
            let mut rel = vec![vec![false; n]; n];
            for (i, row) in rel.iter_mut().enumerate() {
                for (j, cell) in row.iter_mut().enumerate() {
                    let c =
                        compare(&t, &s.addresses[i], &s.addresses[j]).map_err(|e| e.to_string())?;
                    let c2 =
                        compare(&t, &s.addresses[j], &s.addresses[i]).map_err(|e| e.to_string())?;
                    ensure(c.map(Ordering::reverse) == c2, || {
                        format!("{name}/{seed}: asymmetric compare at {i},{j}")
                    })?;
                    *cell = c == Some(Ordering::Less);
                }
            }
            ensure(is_strict_order(&rel), || {
                format!("{name}/{seed}: not a strict order")
            })?;
            ensure(rel == rel_of(&s.poset), || {
                format!("{name}/{seed}: sample poset disagrees with compare")
            })?;
            if r.linear {
                let total = (0..n).all(|i| (0..n).all(|j| i == j || rel[i][j] || rel[j][i]));
                ensure(total, || {
                    format!("{name}/{seed}: linear term, partial sample")
                })?;
            }
            if let CardClass::Fin(m) = r.ac_card {
                let w = oracle_width(&rel);
                ensure(w as u64 <= m, || {
                    format!("{name}/{seed}: antichain {w} > {m}")
                })?;
            }
            if !rho.is_empty() {
                let rk = CnfOrdinal::finite(oracle_rank(&rel));
                for b in &rho {
                    ensure(rk <= *b, || {
                        format!("{name}/{seed}: rank {rk} exceeds surrogate {b}")
                    })?;
                }
            }
        }
    }
    ensure(samples == 100, || format!("{samples} samples"))
}

fn criterion_8() -> Outcome {
    let run = || -> Result<String, String> {
        let t = parse("lsum(fin(3; 0<1, 0<2); w, k*, Q)").map_err(|e| e.to_string())?;
        let s = sample_restriction(&t, 16, 42).map_err(|e| e.to_string())?;
        let d = saturate(&StageOrder::chain(2), 3, 2, 9).map_err(|e| e.to_string())?;
        let a = attrs(&l_limit()).map_err(|e| e.to_string())?;
        let v = serde_json::json!({"sample": s, "dense": d, "attrs": a});
        serde_json::to_string(&v).map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a == b, || "two runs differ".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 finite oracle suite", criterion_1),
        ("2 hierarchy closure", criterion_2),
        ("3 examples", criterion_3),
        ("4 non-FAC scattered witness", criterion_4),
        ("5 condensation and scatteredness", criterion_5),
        ("6 dense generation", criterion_6),
        ("7 sampler soundness", criterion_7),
        ("8 determinism", criterion_8),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        match f() {
            Ok(()) => println!(
                "PASS criterion {name} ({:.2}s)",
                start.elapsed().as_secs_f64()
            ),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {name}: {e}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
