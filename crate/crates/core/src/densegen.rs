//! Finite stages of the countable saturated dense order, built by filling
//! gap requests round by round, plus the gap-property checker and a
//! back-and-forth matcher between two stages.
//!
//! A gap request `(S, T)` with `S < T` pointwise asks for an `x` with
//! `S < x < T`. In a total order it is met exactly when something lies
//! strictly between `max S` and `min T` (reading a missing side as an
//! endpoint), so requests are grouped by that signature. The uncountable
//! version exists only when κ^{<κ} = κ and is not generated here.

use std::collections::{HashMap, HashSet};

use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest stage `saturate` will build.
pub const MAX_STAGE_ELEMENTS: usize = 1 << 16;

pub const DEFAULT_BOUND: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Element {
    pub id: u32,
    pub birth: u32,
    #[serde(serialize_with = "ser_rational")]
    pub label: Rational64,
}

fn ser_rational<S: Serializer>(q: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if *q.denom() == 1 {
        s.serialize_str(&q.numer().to_string())
    } else {
        s.serialize_str(&format!("{}/{}", q.numer(), q.denom()))
    }
}

/// Sides of a request, as sorted element ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GapRequest {
    pub s: Vec<u32>,
    pub t: Vec<u32>,
}

impl GapRequest {
    pub fn new(mut s: Vec<u32>, mut t: Vec<u32>) -> Self {
        s.sort_unstable();
        t.sort_unstable();
        GapRequest { s, t }
    }

    pub fn size(&self) -> usize {
        self.s.len() + self.t.len()
    }

    fn key(&self) -> (usize, &[u32], &[u32]) {
        (self.size(), &self.s, &self.t)
    }
}

/// A witness inserted by `saturate`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Insertion {
    pub round: u32,
    pub request: GapRequest,
    pub id: u32,
    #[serde(serialize_with = "ser_rational")]
    pub label: Rational64,
}

/// A finite total order whose elements carry ids, birth rounds and rational
/// labels; the label order is the element order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StageOrder {
    /// Sorted by label.
    elements: Vec<Element>,
    pub trace: Vec<Insertion>,
}

impl StageOrder {
    pub fn empty() -> Self {
        Self::default()
    }

    /// `0 < 1 < … < n-1`, labelled by their ids.
    pub fn chain(n: u32) -> Self {
        StageOrder {
            elements: (0..n)
                .map(|i| Element {
                    id: i,
                    birth: 0,
                    label: Rational64::from_integer(i as i64),
                })
                .collect(),
            trace: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements in increasing order.
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    fn positions(&self) -> HashMap<u32, usize> {
        self.elements
            .iter()
            .enumerate()
            .map(|(p, e)| (e.id, p))
            .collect()
    }

    pub fn element(&self, id: u32) -> Option<&Element> {
        self.elements.iter().find(|e| e.id == id)
    }

    pub fn lt(&self, a: u32, b: u32) -> bool {
        match (self.element(a), self.element(b)) {
            (Some(x), Some(y)) => x.label < y.label,
            _ => false,
        }
    }

    /// Ids born no later than `round`.
    pub fn born_by(&self, round: u32) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .elements
            .iter()
            .filter(|e| e.birth <= round)
            .map(|e| e.id)
            .collect();
        v.sort_unstable();
        v
    }

    fn next_id(&self) -> u32 {
        self.elements.iter().map(|e| e.id + 1).max().unwrap_or(0)
    }

    /// Whether a request over positions `lo`/`hi` (exclusive) is met.
    fn gap_met(&self, lo: Option<usize>, hi: Option<usize>) -> bool {
        let start = lo.map_or(0, |p| p + 1);
        let end = hi.unwrap_or(self.elements.len());
        start < end
    }

    fn insert_between(
        &mut self,
        lo: Option<usize>,
        hi: Option<usize>,
        round: u32,
    ) -> (u32, Rational64) {
        let label = match (lo, hi) {
            (None, None) => Rational64::from_integer(0),
            (Some(p), None) => self.elements[p].label + 1,
            (None, Some(q)) => self.elements[q].label - 1,
            (Some(p), Some(q)) => (self.elements[p].label + self.elements[q].label) / 2,
        };
        let id = self.next_id();
        let at = lo.map_or(0, |p| p + 1);
        self.elements.insert(
            at,
            Element {
                id,
                birth: round,
                label,
            },
        );
        (id, label)
    }

    fn current_round(&self) -> u32 {
        self.elements.iter().map(|e| e.birth).max().unwrap_or(0)
    }
}

/// Runs `rounds` rounds of gap filling with side bound `bound`.
///
/// Each round walks the requests over the elements present at its start in
/// canonical order (size, then ids), checking each against the growing order
/// and inserting a fresh witness for every unmet one. A request shares its
/// signature with the singleton request `({max S}, {min T})`, which is no
/// larger and so comes first; only those need visiting. A nonzero `seed`
/// shuffles the order within each size class.
pub fn saturate(start: &StageOrder, rounds: u32, bound: usize, seed: u64) -> Result<StageOrder> {
    if bound == 0 {
        return Err(Error::InvalidTerm("side bound must be at least 1".into()));
    }
    let mut p = start.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let first_round = p.current_round() + 1;
    for round in first_round..first_round + rounds {
        let labels: HashMap<u32, Rational64> = p.elements.iter().map(|e| (e.id, e.label)).collect();
        let mut ids: Vec<u32> = labels.keys().copied().collect();
        ids.sort_unstable();
        let mut classes: Vec<Vec<(Option<u32>, Option<u32>)>> =
            vec![vec![(None, None)], Vec::new(), Vec::new()];
        for &a in &ids {
            classes[1].push((None, Some(a)));
        }
        for &a in &ids {
            classes[1].push((Some(a), None));
        }
        for &s in &ids {
            for &t in &ids {
                if labels[&s] < labels[&t] {
                    classes[2].push((Some(s), Some(t)));
                }
            }
        }
        for class in &mut classes {
            if seed != 0 {
                class.shuffle(&mut rng);
            }
            for &(s, t) in class.iter() {
                let locate = |id: u32| {
                    p.elements
                        .binary_search_by(|e| e.label.cmp(&labels[&id]))
                        .expect("live id")
                };
                let lo = s.map(locate);
                let hi = t.map(locate);
                if p.gap_met(lo, hi) {
                    continue;
                }
                if p.len() >= MAX_STAGE_ELEMENTS {
                    return Err(Error::TooLarge {
                        n: p.len() + 1,
                        max: MAX_STAGE_ELEMENTS,
                    });
                }
                let (id, label) = p.insert_between(lo, hi, round);
                p.trace.push(Insertion {
                    round,
                    request: GapRequest::new(s.into_iter().collect(), t.into_iter().collect()),
                    id,
                    label,
                });
            }
        }
    }
    Ok(p)
}

/// Unmet requests with sides of size at most `bound`, drawn from `over`
/// (all elements when `None`). Witnesses may come from anywhere in `p`.
pub fn check_star(p: &StageOrder, bound: usize, over: Option<&[u32]>) -> Vec<GapRequest> {
    let pos = p.positions();
    let allowed: Vec<u32> = match over {
        Some(ids) => {
            let set: HashSet<u32> = ids
                .iter()
                .copied()
                .filter(|id| pos.contains_key(id))
                .collect();
            let mut v: Vec<u32> = set.into_iter().collect();
            v.sort_by_key(|id| pos[id]);
            v
        }
        None => p.elements.iter().map(|e| e.id).collect(),
    };
    let mut out = Vec::new();
    let mut sides: Vec<Option<u32>> = vec![None];
    sides.extend(allowed.iter().map(|&id| Some(id)));
    for &s in &sides {
        for &t in &sides {
            let (lo, hi) = (s.map(|id| pos[&id]), t.map(|id| pos[&id]));
            if let (Some(a), Some(b)) = (lo, hi) {
                if a >= b {
                    continue;
                }
            }
            let needs = s.is_some() as usize + t.is_some() as usize;
            if bound == 0 && needs > 0 {
                continue;
            }
            if p.gap_met(lo, hi) {
                continue;
            }
            // every request with this signature
            let below: Vec<u32> = lo.map_or(Vec::new(), |a| {
                allowed.iter().copied().filter(|id| pos[id] < a).collect()
            });
            let above: Vec<u32> = hi.map_or(Vec::new(), |b| {
                allowed.iter().copied().filter(|id| pos[id] > b).collect()
            });
            let s_sets = extend_subsets(s, &below, bound);
            let t_sets = extend_subsets(t, &above, bound);
            for ss in &s_sets {
                for ts in &t_sets {
                    out.push(GapRequest::new(ss.clone(), ts.clone()));
                }
            }
        }
    }
    out.sort_by(|a, b| a.key().cmp(&b.key()));
    out
}

/// `{anchor} ∪ A` for every `A ⊆ pool` keeping the total within `bound`;
/// just `{}` without an anchor.
fn extend_subsets(anchor: Option<u32>, pool: &[u32], bound: usize) -> Vec<Vec<u32>> {
    let Some(a) = anchor else {
        return vec![Vec::new()];
    };
    let mut out = vec![vec![a]];
    let mut frontier = vec![(vec![a], 0usize)];
    while let Some((set, from)) = frontier.pop() {
        if set.len() >= bound {
            continue;
        }
        for (k, &x) in pool.iter().enumerate().skip(from) {
            let mut next = set.clone();
            next.push(x);
            out.push(next.clone());
            frontier.push((next, k + 1));
        }
    }
    out
}

/// Every element, from the top down.
pub fn longest_descending(p: &StageOrder) -> Vec<u32> {
    p.elements.iter().rev().map(|e| e.id).collect()
}

/// Longest descending chain whose births strictly increase: each later
/// member appeared in a later round below everything before it in the chain.
pub fn stage_filtered_descending(p: &StageOrder) -> Vec<u32> {
    let desc: Vec<&Element> = p.elements.iter().rev().collect();
    let n = desc.len();
    let mut best = vec![1usize; n];
    let mut prev = vec![usize::MAX; n];
    for j in 0..n {
        for i in 0..j {
            if desc[i].birth < desc[j].birth && best[i] + 1 > best[j] {
                best[j] = best[i] + 1;
                prev[j] = i;
            }
        }
    }
    let Some(mut j) = (0..n).max_by_key(|&j| (best[j], std::cmp::Reverse(j))) else {
        return Vec::new();
    };
    let mut chain = vec![desc[j].id];
    while prev[j] != usize::MAX {
        j = prev[j];
        chain.push(desc[j].id);
    }
    chain.reverse();
    chain
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum BackForth {
    /// `rounds_done` extensions were made; fewer than requested only if both
    /// sides were exhausted.
    Complete {
        map: Vec<(u32, u32)>,
        rounds_done: usize,
    },
    /// No candidate lies in `gap`, a request over the ids of `side`.
    Failed {
        map: Vec<(u32, u32)>,
        rounds_done: usize,
        side: Side,
        element: u32,
        gap: GapRequest,
    },
}

impl BackForth {
    pub fn rounds_done(&self) -> usize {
        match self {
            BackForth::Complete { rounds_done, .. } | BackForth::Failed { rounds_done, .. } => {
                *rounds_done
            }
        }
    }
}

/// Extends a partial isomorphism `pairs` from `a` to `b`, alternating sides
/// and taking the least unmatched id each time. The image is the candidate
/// in the matching gap with the earliest birth, then the least id.
pub fn back_and_forth(
    a: &StageOrder,
    b: &StageOrder,
    pairs: &[(u32, u32)],
    rounds: usize,
) -> Result<BackForth> {
    for &(x, y) in pairs {
        if a.element(x).is_none() || b.element(y).is_none() {
            return Err(Error::NotOrderPreserving((x, y)));
        }
    }
    for &(x1, y1) in pairs {
        for &(x2, y2) in pairs {
            if (x1 == x2) != (y1 == y2) || a.lt(x1, x2) != b.lt(y1, y2) {
                return Err(Error::NotOrderPreserving((x2, y2)));
            }
        }
    }
    let mut map: Vec<(u32, u32)> = pairs.to_vec();
    map.sort_unstable();
    map.dedup();
    let mut done = 0;
    let mut side = Side::A;
    while done < rounds {
        let step = extend_once(a, b, &map, side).or_else(|| extend_once(a, b, &map, other(side)));
        match step {
            None => break,
            Some(Ok(pair)) => {
                map.push(pair);
                done += 1;
                side = other(side);
            }
            Some(Err((s, element, gap))) => {
                return Ok(BackForth::Failed {
                    map,
                    rounds_done: done,
                    side: s,
                    element,
                    gap,
                })
            }
        }
    }
    Ok(BackForth::Complete {
        map,
        rounds_done: done,
    })
}

fn other(s: Side) -> Side {
    match s {
        Side::A => Side::B,
        Side::B => Side::A,
    }
}

type Step = std::result::Result<(u32, u32), (Side, u32, GapRequest)>;

/// One extension from `side`; `None` when that side is fully matched.
fn extend_once(a: &StageOrder, b: &StageOrder, map: &[(u32, u32)], side: Side) -> Option<Step> {
    let (from, to, pairs): (&StageOrder, &StageOrder, Vec<(u32, u32)>) = match side {
        Side::A => (a, b, map.to_vec()),
        Side::B => (b, a, map.iter().map(|&(x, y)| (y, x)).collect()),
    };
    let matched: HashSet<u32> = pairs.iter().map(|p| p.0).collect();
    let x = from
        .elements
        .iter()
        .map(|e| e.id)
        .filter(|id| !matched.contains(id))
        .min()?;
    let below = pairs.iter().filter(|p| from.lt(p.0, x)).max_by(|p, q| {
        from.element(p.0)
            .unwrap()
            .label
            .cmp(&from.element(q.0).unwrap().label)
    });
    let above = pairs.iter().filter(|p| from.lt(x, p.0)).min_by(|p, q| {
        from.element(p.0)
            .unwrap()
            .label
            .cmp(&from.element(q.0).unwrap().label)
    });
    let lo = below.map(|p| to.element(p.1).unwrap().label);
    let hi = above.map(|p| to.element(p.1).unwrap().label);
    let image = to
        .elements
        .iter()
        .filter(|e| lo.is_none_or(|l| e.label > l) && hi.is_none_or(|h| e.label < h))
        .min_by_key(|e| (e.birth, e.id));
    Some(match image {
        Some(e) => match side {
            Side::A => Ok((x, e.id)),
            Side::B => Ok((e.id, x)),
        },
        None => Err((
            other(side),
            x,
            GapRequest::new(
                below.map(|p| p.1).into_iter().collect(),
                above.map(|p| p.1).into_iter().collect(),
            ),
        )),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn saturate_examples() {
        let s = saturate(&StageOrder::chain(2), 1, 1, 0).unwrap();
        assert_eq!(s.len(), 5);
        assert_eq!(s.trace.len(), 3);
        assert_eq!(saturate(&StageOrder::empty(), 1, 1, 0).unwrap().len(), 1);
    }

    #[test]
    fn check_star_examples() {
        assert_eq!(check_star(&StageOrder::chain(2), 1, None).len(), 3);
        let c1 = check_star(&StageOrder::chain(1), 1, None);
        assert_eq!(
            c1,
            vec![
                GapRequest::new(vec![], vec![0]),
                GapRequest::new(vec![0], vec![])
            ]
        );
        let s = saturate(&StageOrder::chain(2), 1, 1, 0).unwrap();
        assert!(check_star(&s, 1, Some(&[0, 1])).is_empty());
        assert!(!check_star(&s, 1, None).is_empty());
    }

    #[test]
    fn check_star_lists_every_request_of_a_gap() {
        // 0 < 1 < 2: gap between 1 and 2 seen with S ∈ {{1}, {0,1}}
        let c = check_star(&StageOrder::chain(3), 2, None);
        assert!(c.contains(&GapRequest::new(vec![0, 1], vec![2])));
        assert!(c.contains(&GapRequest::new(vec![1], vec![2])));
        assert!(c.iter().all(|r| r.s.len() <= 2 && r.t.len() <= 2));
    }

    #[test]
    fn descending_chains() {
        assert_eq!(longest_descending(&StageOrder::chain(5)).len(), 5);
        assert!(longest_descending(&StageOrder::empty()).is_empty());
        let s = saturate(&StageOrder::chain(2), 4, 2, 0).unwrap();
        assert!(stage_filtered_descending(&s).len() >= 4);
    }

    #[test]
    fn back_and_forth_examples() {
        let s = saturate(&StageOrder::chain(2), 2, 2, 0).unwrap();
        let id: Vec<(u32, u32)> = s.elements().iter().map(|e| (e.id, e.id)).collect();
        assert_eq!(back_and_forth(&s, &s, &id, 3).unwrap().rounds_done(), 0);

        let a = StageOrder::chain(2);
        let b = StageOrder::chain(3);
        match back_and_forth(&a, &b, &[(0, 0), (1, 2)], 1).unwrap() {
            BackForth::Failed { side, gap, .. } => {
                assert_eq!(side, Side::A);
                assert_eq!(gap, GapRequest::new(vec![0], vec![1]));
            }
            other => panic!("{other:?}"),
        }
        assert!(back_and_forth(&a, &b, &[(0, 2), (1, 0)], 1).is_err());
    }

    #[test]
    fn deterministic() {
        let x = saturate(&StageOrder::chain(2), 3, 2, 9).unwrap();
        let y = saturate(&StageOrder::chain(2), 3, 2, 9).unwrap();
        assert_eq!(x, y);
    }
}
