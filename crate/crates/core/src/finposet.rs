//! Explicit finite strict partial orders and the brute-force oracles that
//! run on them.
//!
//! Elements are the labels `0..n`. The relation is stored as one bit row per
//! element: bit `j` of `up[i]` is set iff `i < j`. Posets are capped at
//! [`MAX_ELEMENTS`] so rows fit in a `u64`.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordinal::CnfOrdinal;

pub const MAX_ELEMENTS: usize = 64;

/// Default number of items pulled from an enumeration stream.
pub const DEFAULT_STREAM_CAP: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinPoset {
    n: usize,
    up: Vec<u64>,
}

fn bit(i: usize) -> u64 {
    1u64 << i
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

impl FinPoset {
    pub fn empty() -> Self {
        FinPoset {
            n: 0,
            up: Vec::new(),
        }
    }

    pub fn antichain(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS);
        FinPoset { n, up: vec![0; n] }
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS);
        let up = (0..n)
            .map(|i| (if i + 1 >= 64 { 0 } else { !0u64 << (i + 1) }) & full_mask(n))
            .collect();
        FinPoset { n, up }
    }

    /// Transitive closure of `pairs`; rejected if the closure has a cycle.
    pub fn from_relations(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge {
                n,
                max: MAX_ELEMENTS,
            });
        }
        let mut up = vec![0u64; n];
        for &(a, b) in pairs {
            if a >= n {
                return Err(Error::OutOfRange(a, n));
            }
            if b >= n {
                return Err(Error::OutOfRange(b, n));
            }
            up[a] |= bit(b);
        }
        let direct = up.clone();
        // Warshall on bit rows.
        for k in 0..n {
            for i in 0..n {
                if up[i] & bit(k) != 0 {
                    up[i] |= up[k];
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| up[i] & bit(i) != 0) {
            return Err(Error::Cycle {
                cycle: find_cycle(&direct, i),
            });
        }
        Ok(FinPoset { n, up })
    }

    /// Builds a poset from rows that are already transitive and irreflexive.
    pub(crate) fn from_rows_unchecked(up: Vec<u64>) -> Self {
        debug_assert!(up.len() <= MAX_ELEMENTS);
        FinPoset { n: up.len(), up }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.up[a] & bit(b) != 0
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b) || self.lt(b, a)
    }

    pub fn incomparable(&self, a: usize, b: usize) -> bool {
        !self.comparable(a, b)
    }

    pub fn upset(&self, a: usize) -> u64 {
        self.up[a]
    }

    pub fn downset(&self, a: usize) -> u64 {
        (0..self.n)
            .filter(|&x| self.lt(x, a))
            .fold(0, |m, x| m | bit(x))
    }

    /// All pairs `(a, b)` with `a < b`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| bits(self.up[a]).map(move |b| (a, b)))
            .collect()
    }

    /// Checks irreflexivity and transitivity of the stored rows.
    pub fn is_valid(&self) -> bool {
        self.up.len() == self.n
            && (0..self.n).all(|i| {
                self.up[i] & bit(i) == 0
                    && self.up[i] & !full_mask(self.n) == 0
                    && bits(self.up[i]).all(|j| self.up[j] & !self.up[i] == 0)
            })
    }

    pub fn is_linear(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.comparable(a, b)))
    }

    pub fn inverse(&self) -> FinPoset {
        let up = (0..self.n).map(|a| self.downset(a)).collect();
        FinPoset { n: self.n, up }
    }

    /// Induced order on `subset`, relabelled in the order the elements are given.
    pub fn restrict(&self, subset: &[usize]) -> Result<FinPoset> {
        for &s in subset {
            if s >= self.n {
                return Err(Error::OutOfRange(s, self.n));
            }
        }
        let up = subset
            .iter()
            .map(|&a| {
                subset
                    .iter()
                    .enumerate()
                    .filter(|&(_, &b)| self.lt(a, b))
                    .fold(0, |m, (j, _)| m | bit(j))
            })
            .collect();
        Ok(FinPoset {
            n: subset.len(),
            up,
        })
    }

    pub fn restrict_mask(&self, mask: u64) -> FinPoset {
        let subset: Vec<usize> = bits(mask & full_mask(self.n)).collect();
        self.restrict(&subset).expect("mask in range")
    }

    /// Lexicographic sum of `family` along `index`. Elements are numbered
    /// block by block; empty summands contribute nothing.
    pub fn lex_sum(index: &FinPoset, family: &[FinPoset]) -> Result<FinPoset> {
        if family.len() != index.n {
            return Err(Error::InvalidTerm(format!(
                "family has {} summands for an index of size {}",
                family.len(),
                index.n
            )));
        }
        let total: usize = family.iter().map(|p| p.n).sum();
        if total > MAX_ELEMENTS {
            return Err(Error::TooLarge {
                n: total,
                max: MAX_ELEMENTS,
            });
        }
        let mut offsets = Vec::with_capacity(family.len());
        let mut off = 0;
        for p in family {
            offsets.push(off);
            off += p.n;
        }
        let block_mask = |i: usize| full_mask(family[i].n) << offsets[i];
        let mut up = vec![0u64; total];
        for (i, p) in family.iter().enumerate() {
            let above: u64 = bits(index.up[i]).fold(0, |m, j| m | block_mask(j));
            for a in 0..p.n {
                up[offsets[i] + a] = (p.up[a] << offsets[i]) | above;
            }
        }
        Ok(FinPoset { n: total, up })
    }

    /// Every non-empty antichain, as a sorted element list.
    pub fn antichains(&self) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = self
            .antichain_masks()
            .into_iter()
            .map(|m| bits(m).collect())
            .collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }

    pub fn antichain_masks(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let mut stack: Vec<(u64, usize)> = (0..self.n).map(|i| (bit(i), i)).rev().collect();
        while let Some((mask, last)) = stack.pop() {
            out.push(mask);
            for j in (last + 1..self.n).rev() {
                if bits(mask).all(|a| self.incomparable(a, j)) {
                    stack.push((mask | bit(j), j));
                }
            }
        }
        out.sort_unstable_by_key(|m| (m.count_ones(), *m));
        out
    }

    pub fn is_antichain(&self, mask: u64) -> bool {
        let v: Vec<usize> = bits(mask).collect();
        v.iter()
            .enumerate()
            .all(|(k, &a)| v[k + 1..].iter().all(|&b| self.incomparable(a, b)))
    }

    /// Well-founded rank of the non-empty antichains under reverse inclusion:
    /// an antichain's rank is the supremum of `rank(B) + 1` over strictly
    /// larger antichains `B`, and the poset's rank is the least ordinal above
    /// every antichain's rank. Linear orders get 1, the empty poset 0.
    pub fn antichain_rank_exact(&self) -> CnfOrdinal {
        let mut memo: HashMap<u64, u64> = HashMap::new();
        let best = (0..self.n)
            .map(|i| self.antichain_node_rank(bit(i), &mut memo) + 1)
            .max()
            .unwrap_or(0);
        CnfOrdinal::finite(best)
    }

    fn antichain_node_rank(&self, mask: u64, memo: &mut HashMap<u64, u64>) -> u64 {
        if let Some(&r) = memo.get(&mask) {
            return r;
        }
        let mut r = 0;
        for x in 0..self.n {
            if mask & bit(x) == 0 && bits(mask).all(|a| self.incomparable(a, x)) {
                r = r.max(self.antichain_node_rank(mask | bit(x), memo) + 1);
            }
        }
        memo.insert(mask, r);
        r
    }

    /// Size of the largest antichain, via Dilworth (n minus a maximum
    /// matching in the comparability bipartite graph).
    pub fn width(&self) -> usize {
        let mut match_right: Vec<Option<usize>> = vec![None; self.n];
        let mut matched = 0;
        for a in 0..self.n {
            let mut seen = 0u64;
            if self.augment(a, &mut seen, &mut match_right) {
                matched += 1;
            }
        }
        self.n - matched
    }

    fn augment(&self, a: usize, seen: &mut u64, match_right: &mut [Option<usize>]) -> bool {
        for b in bits(self.up[a]) {
            if *seen & bit(b) != 0 {
                continue;
            }
            *seen |= bit(b);
            let free = match match_right[b] {
                None => true,
                Some(a2) => self.augment(a2, seen, match_right),
            };
            if free {
                match_right[b] = Some(a);
                return true;
            }
        }
        false
    }

    /// Length of the longest chain (equivalently, longest descending chain).
    pub fn height(&self) -> usize {
        let order = self.topological_order();
        let mut best = vec![1usize; self.n];
        for &a in order.iter().rev() {
            for b in bits(self.up[a]) {
                best[a] = best[a].max(best[b] + 1);
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// A longest chain, listed in increasing order.
    pub fn longest_chain(&self) -> Vec<usize> {
        let order = self.topological_order();
        let mut best = vec![1usize; self.n];
        let mut next: Vec<Option<usize>> = vec![None; self.n];
        for &a in order.iter().rev() {
            for b in bits(self.up[a]) {
                if best[b] + 1 > best[a] {
                    best[a] = best[b] + 1;
                    next[a] = Some(b);
                }
            }
        }
        let Some(start) = (0..self.n).max_by_key(|&a| (best[a], std::cmp::Reverse(a))) else {
            return Vec::new();
        };
        let mut chain = vec![start];
        let mut cur = start;
        while let Some(b) = next[cur] {
            chain.push(b);
            cur = b;
        }
        chain
    }

    fn topological_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&a| self.downset(a).count_ones());
        order
    }

    /// `{x : a < x < b}`.
    pub fn interval(&self, a: usize, b: usize) -> Vec<usize> {
        bits(self.up[a] & self.downset(b)).collect()
    }

    /// Cover pairs (the Hasse diagram / transitive reduction).
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.pairs()
            .into_iter()
            .filter(|&(a, b)| self.up[a] & self.downset(b) == 0)
            .collect()
    }

    pub fn to_dot(&self, name: &str, labels: Option<&[String]>) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", name.replace('"', "'"));
        let _ = writeln!(s, "  rankdir=BT;");
        for i in 0..self.n {
            let label = labels
                .and_then(|l| l.get(i))
                .cloned()
                .unwrap_or_else(|| i.to_string());
            let _ = writeln!(s, "  n{i} [label=\"{}\"];", label.replace('"', "'"));
        }
        for (a, b) in self.covers() {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        s.push_str("}\n");
        s
    }

    /// Smallest relabelled encoding over all permutations; `n ≤ 7`.
    pub fn canonical_form(&self) -> Vec<u64> {
        assert!(self.n <= 7, "canonical form is exhaustive, n ≤ 7");
        let mut perm: Vec<usize> = (0..self.n).collect();
        let mut best: Option<Vec<u64>> = None;
        permute(&mut perm, 0, &mut |p| {
            // element p[i] gets label i
            let mut rows = vec![0u64; self.n];
            for (i, &a) in p.iter().enumerate() {
                for (j, &b) in p.iter().enumerate() {
                    if self.lt(a, b) {
                        rows[i] |= bit(j);
                    }
                }
            }
            if best.as_ref().is_none_or(|b| rows < *b) {
                best = Some(rows);
            }
        });
        best.unwrap_or_default()
    }

    pub fn is_isomorphic(&self, other: &FinPoset) -> bool {
        self.n == other.n
            && self.pairs().len() == other.pairs().len()
            && self.canonical_form() == other.canonical_form()
    }

    /// Injections `f: self → target` with `a < b ⇒ f(a) < f(b)`. With
    /// [`EmbedMode::Strict`] incomparable pairs must also stay incomparable.
    pub fn embeddings<'a>(&'a self, target: &'a FinPoset, mode: EmbedMode) -> Embeddings<'a> {
        Embeddings {
            src: self,
            dst: target,
            mode,
            stack: vec![(Vec::new(), 0)],
        }
    }

    pub fn embeds_into(&self, target: &FinPoset, mode: EmbedMode) -> Option<Vec<usize>> {
        self.embeddings(target, mode).next()
    }

    /// All partial orders on the same universe containing this one.
    pub fn augmentations(&self) -> Augmentations {
        let mut pairs = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                pairs.push((a, b));
            }
        }
        Augmentations {
            pairs,
            stack: vec![(self.up.clone(), Vec::new(), 0)],
        }
    }

    /// All transitive subrelations.
    pub fn weakenings(&self) -> Weakenings {
        let pairs = self.pairs();
        Weakenings {
            n: self.n,
            pairs,
            stack: vec![(Vec::new(), 0)],
        }
    }

    /// All linear augmentations.
    pub fn linear_extensions(&self) -> LinearExtensions<'_> {
        LinearExtensions {
            p: self,
            stack: vec![Vec::new()],
        }
    }

    /// Every labelled poset on `n` elements.
    pub fn all_on(n: usize) -> Augmentations {
        FinPoset::antichain(n).augmentations()
    }

    pub fn is_augmentation_of(&self, base: &FinPoset) -> bool {
        self.n == base.n && (0..self.n).all(|i| base.up[i] & !self.up[i] == 0)
    }
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

fn find_cycle(direct: &[u64], start: usize) -> Vec<usize> {
    // BFS from start back to start over direct edges.
    let n = direct.len();
    let mut prev: Vec<Option<usize>> = vec![None; n];
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(start);
    let mut visited = 0u64;
    while let Some(a) = queue.pop_front() {
        for b in bits(direct[a]) {
            if b == start {
                let mut path = vec![a];
                let mut cur = a;
                while cur != start {
                    cur = prev[cur].expect("bfs parent");
                    path.push(cur);
                }
                path.reverse();
                path.push(start);
                return path;
            }
            if visited & bit(b) == 0 {
                visited |= bit(b);
                prev[b] = Some(a);
                queue.push_back(b);
            }
        }
    }
    vec![start]
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Adds `a < b` to transitive rows where `a` and `b` are incomparable.
fn add_and_close(up: &mut [u64], a: usize, b: usize) {
    let above = up[b] | bit(b);
    for (x, row) in up.iter_mut().enumerate() {
        if x == a || *row & bit(a) != 0 {
            *row |= above;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbedMode {
    /// Order preserving, one-to-one.
    #[default]
    Preserving,
    /// Also preserves incomparability.
    Strict,
}

pub struct Embeddings<'a> {
    src: &'a FinPoset,
    dst: &'a FinPoset,
    mode: EmbedMode,
    stack: Vec<(Vec<usize>, usize)>,
}

impl Iterator for Embeddings<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        while let Some((partial, cand)) = self.stack.pop() {
            let k = partial.len();
            if k == self.src.n {
                return Some(partial);
            }
            if cand >= self.dst.n {
                continue;
            }
            // revisit this node with the next candidate later
            self.stack.push((partial.clone(), cand + 1));
            if partial.contains(&cand) {
                continue;
            }
            let ok = partial.iter().enumerate().all(|(i, &fi)| {
                let forward = !self.src.lt(i, k) || self.dst.lt(fi, cand);
                let backward = !self.src.lt(k, i) || self.dst.lt(cand, fi);
                let strict = self.mode == EmbedMode::Preserving
                    || !self.src.incomparable(i, k)
                    || self.dst.incomparable(fi, cand);
                forward && backward && strict
            });
            if ok {
                let mut next = partial;
                next.push(cand);
                self.stack.push((next, 0));
            }
        }
        None
    }
}

type AugState = (Vec<u64>, Vec<(usize, usize)>, usize);

pub struct Augmentations {
    pairs: Vec<(usize, usize)>,
    stack: Vec<AugState>,
}

impl Iterator for Augmentations {
    type Item = FinPoset;

    fn next(&mut self) -> Option<FinPoset> {
        while let Some((up, forbidden, k)) = self.stack.pop() {
            let cmp = |up: &[u64], a: usize, b: usize| up[a] & bit(b) != 0 || up[b] & bit(a) != 0;
            if forbidden.iter().any(|&(a, b)| cmp(&up, a, b)) {
                continue;
            }
            if k == self.pairs.len() {
                return Some(FinPoset::from_rows_unchecked(up));
            }
            let (a, b) = self.pairs[k];
            if cmp(&up, a, b) {
                self.stack.push((up, forbidden, k + 1));
                continue;
            }
            let mut ba = up.clone();
            add_and_close(&mut ba, b, a);
            self.stack.push((ba, forbidden.clone(), k + 1));
            let mut ab = up.clone();
            add_and_close(&mut ab, a, b);
            self.stack.push((ab, forbidden.clone(), k + 1));
            let mut keep = forbidden;
            keep.push((a, b));
            self.stack.push((up, keep, k + 1));
        }
        None
    }
}

pub struct Weakenings {
    n: usize,
    pairs: Vec<(usize, usize)>,
    stack: Vec<(Vec<bool>, usize)>,
}

impl Iterator for Weakenings {
    type Item = FinPoset;

    fn next(&mut self) -> Option<FinPoset> {
        while let Some((chosen, k)) = self.stack.pop() {
            if k == self.pairs.len() {
                let mut up = vec![0u64; self.n];
                for (&(a, b), &c) in self.pairs.iter().zip(&chosen) {
                    if c {
                        up[a] |= bit(b);
                    }
                }
                let p = FinPoset::from_rows_unchecked(up);
                if p.is_valid() {
                    return Some(p);
                }
                continue;
            }
            let mut without = chosen.clone();
            without.push(false);
            let mut with = chosen;
            with.push(true);
            self.stack.push((without, k + 1));
            self.stack.push((with, k + 1));
        }
        None
    }
}

pub struct LinearExtensions<'a> {
    p: &'a FinPoset,
    stack: Vec<Vec<usize>>,
}

impl Iterator for LinearExtensions<'_> {
    type Item = FinPoset;

    fn next(&mut self) -> Option<FinPoset> {
        let n = self.p.n;
        while let Some(seq) = self.stack.pop() {
            if seq.len() == n {
                let mut pos = vec![0; n];
                for (i, &a) in seq.iter().enumerate() {
                    pos[a] = i;
                }
                let up = (0..n)
                    .map(|a| {
                        (0..n)
                            .filter(|&b| pos[a] < pos[b])
                            .fold(0, |m, b| m | bit(b))
                    })
                    .collect();
                return Some(FinPoset::from_rows_unchecked(up));
            }
            let placed = seq.iter().fold(0u64, |m, &a| m | bit(a));
            for a in (0..n).rev() {
                if placed & bit(a) == 0 && self.p.downset(a) & !placed == 0 {
                    let mut next = seq.clone();
                    next.push(a);
                    self.stack.push(next);
                }
            }
        }
        None
    }
}

#[derive(Serialize, Deserialize)]
struct FinPosetJson {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl Serialize for FinPoset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FinPosetJson {
            n: self.n,
            pairs: self.pairs(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinPoset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = FinPosetJson::deserialize(d)?;
        FinPoset::from_relations(j.n, &j.pairs).map_err(serde::de::Error::custom)
    }
}

impl std::fmt::Debug for FinPoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FinPoset({}; {:?})", self.n, self.covers())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_linear_posets_by_relations(n: usize) -> usize {
        // brute force over all relations on n points
        let cells: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        let mut count = 0;
        for m in 0u32..(1 << cells.len()) {
            let rel: Vec<(usize, usize)> = cells
                .iter()
                .enumerate()
                .filter(|(i, _)| m & (1 << i) != 0)
                .map(|(_, &c)| c)
                .collect();
            let has = |a, b| rel.contains(&(a, b));
            let transitive = rel
                .iter()
                .all(|&(a, b)| (0..n).all(|c| !has(b, c) || has(a, c)));
            let asym = rel.iter().all(|&(a, b)| !has(b, a));
            if transitive && asym {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn from_relations_examples() {
        let p = FinPoset::from_relations(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.lt(0, 2));
        assert_eq!(p, FinPoset::chain(3));
        assert_eq!(
            FinPoset::from_relations(2, &[]).unwrap(),
            FinPoset::antichain(2)
        );
        match FinPoset::from_relations(2, &[(0, 1), (1, 0)]) {
            Err(Error::Cycle { cycle }) => assert_eq!(cycle, vec![0, 1, 0]),
            other => panic!("expected cycle, got {other:?}"),
        }
        assert!(matches!(
            FinPoset::from_relations(2, &[(0, 2)]),
            Err(Error::OutOfRange(2, 2))
        ));
    }

    #[test]
    fn inverse_examples() {
        let c = FinPoset::chain(3);
        let inv = c.inverse();
        assert!(inv.lt(2, 0) && inv.lt(1, 0) && !inv.lt(0, 1));
        assert_eq!(FinPoset::antichain(4).inverse(), FinPoset::antichain(4));
        for n in 0..=4 {
            for p in FinPoset::all_on(n) {
                assert_eq!(p.inverse().inverse(), p);
            }
        }
    }

    #[test]
    fn restrict_examples() {
        assert_eq!(
            FinPoset::chain(3).restrict(&[0, 2]).unwrap(),
            FinPoset::chain(2)
        );
        let p = FinPoset::from_relations(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(p.restrict(&[0, 1, 2, 3]).unwrap(), p);
        assert_eq!(
            FinPoset::antichain(3).restrict(&[1]).unwrap(),
            FinPoset::chain(1)
        );
    }

    #[test]
    fn lex_sum_examples() {
        let one = FinPoset::chain(1);
        assert_eq!(
            FinPoset::lex_sum(&FinPoset::chain(2), &[one.clone(), one]).unwrap(),
            FinPoset::chain(2)
        );
        let two_chains = FinPoset::lex_sum(
            &FinPoset::antichain(2),
            &[FinPoset::chain(2), FinPoset::chain(2)],
        )
        .unwrap();
        assert!(two_chains.is_isomorphic(&FinPoset::from_relations(4, &[(0, 1), (2, 3)]).unwrap()));
        let layers = FinPoset::lex_sum(
            &FinPoset::chain(2),
            &[FinPoset::antichain(2), FinPoset::antichain(2)],
        )
        .unwrap();
        assert_eq!(layers.len(), 4);
        let max_ac = layers.antichains().iter().map(Vec::len).max().unwrap();
        assert_eq!(max_ac, 2);
        assert!(FinPoset::lex_sum(&FinPoset::chain(2), &[FinPoset::chain(1)]).is_err());
        // empty summands are skipped
        let s = FinPoset::lex_sum(
            &FinPoset::chain(3),
            &[FinPoset::chain(1), FinPoset::empty(), FinPoset::chain(1)],
        )
        .unwrap();
        assert_eq!(s, FinPoset::chain(2));
    }

    #[test]
    fn antichain_examples() {
        assert_eq!(
            FinPoset::chain(3).antichains(),
            vec![vec![0], vec![1], vec![2]]
        );
        assert_eq!(
            FinPoset::antichain(2).antichains(),
            vec![vec![0], vec![1], vec![0, 1]]
        );
        for n in 0..=5 {
            assert_eq!(FinPoset::antichain(n).antichains().len(), (1 << n) - 1);
        }
    }

    #[test]
    fn antichain_rank_examples() {
        for k in 1..=5 {
            assert_eq!(FinPoset::chain(k).antichain_rank_exact(), CnfOrdinal::one());
        }
        assert_eq!(FinPoset::chain(1).antichain_rank_exact(), CnfOrdinal::one());
        assert_eq!(FinPoset::empty().antichain_rank_exact(), CnfOrdinal::zero());
    }

    #[test]
    fn width_matches_brute_force() {
        for n in 0..=5 {
            for p in FinPoset::all_on(n) {
                let brute = p.antichains().iter().map(Vec::len).max().unwrap_or(0);
                assert_eq!(p.width(), brute, "{p:?}");
            }
        }
    }

    #[test]
    fn embeds_examples() {
        let c2 = FinPoset::chain(2);
        let a2 = FinPoset::antichain(2);
        assert!(c2.embeds_into(&a2, EmbedMode::Preserving).is_none());
        assert!(a2.embeds_into(&c2, EmbedMode::Preserving).is_some());
        assert!(a2.embeds_into(&c2, EmbedMode::Strict).is_none());
        let n = FinPoset::chain(3)
            .embeddings(&FinPoset::chain(5), EmbedMode::Preserving)
            .count();
        assert_eq!(n, 10);
    }

    #[test]
    fn augmentation_examples() {
        assert_eq!(
            FinPoset::chain(2).augmentations().collect::<Vec<_>>(),
            vec![FinPoset::chain(2)]
        );
        assert_eq!(FinPoset::antichain(2).augmentations().count(), 3);
        assert_eq!(FinPoset::antichain(3).augmentations().count(), 19);
    }

    #[test]
    fn labelled_poset_counts_match_relation_brute_force() {
        for n in 0..=3 {
            assert_eq!(
                FinPoset::all_on(n).count(),
                count_linear_posets_by_relations(n)
            );
        }
        assert_eq!(FinPoset::all_on(4).count(), 219);
        assert_eq!(FinPoset::all_on(5).count(), 4231);
    }

    #[test]
    fn weakening_examples() {
        assert_eq!(
            FinPoset::antichain(2).weakenings().collect::<Vec<_>>(),
            vec![FinPoset::antichain(2)]
        );
        let w: Vec<_> = FinPoset::chain(2).weakenings().collect();
        assert_eq!(w.len(), 2);
        assert!(w.contains(&FinPoset::antichain(2)));
        assert_eq!(FinPoset::chain(3).weakenings().count(), 7);
    }

    #[test]
    fn linear_extension_examples() {
        assert_eq!(FinPoset::chain(3).linear_extensions().count(), 1);
        assert_eq!(FinPoset::antichain(3).linear_extensions().count(), 6);
        let v = FinPoset::from_relations(3, &[(0, 1), (0, 2)]).unwrap();
        for l in v.linear_extensions() {
            assert!(l.is_linear() && l.is_augmentation_of(&v));
        }
    }

    #[test]
    fn interval_examples() {
        assert_eq!(FinPoset::chain(3).interval(0, 2), vec![1]);
        assert!(FinPoset::chain(2).interval(0, 1).is_empty());
        assert!(FinPoset::antichain(2).interval(0, 1).is_empty());
    }

    #[test]
    fn dot_and_json() {
        let p = FinPoset::chain(3);
        let dot = p.to_dot("c3", None);
        assert!(dot.contains("n0 -> n1") && dot.contains("n1 -> n2") && !dot.contains("n0 -> n2"));
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"n":3,"pairs":[[0,1],[0,2],[1,2]]}"#);
        let back: FinPoset = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn longest_chain_is_a_chain() {
        let p = FinPoset::from_relations(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let c = p.longest_chain();
        assert_eq!(c.len(), 3);
        assert_eq!(p.height(), 3);
        assert!(c.windows(2).all(|w| p.lt(w[0], w[1])));
    }
}
