//! Concrete elements of terms, the comparator, and seeded finite
//! restrictions.
//!
//! Sampling needs concrete leaves, so κ is instantiated as a countable
//! ordinal (ω·ω unless configured) and `Qk` as `Q`. Samples carry that
//! instantiation and say they are unsound for κ-level claims.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::finposet::{FinPoset, MAX_ELEMENTS};
use crate::ordinal::CnfOrdinal;
use crate::term::OrderTerm;

/// A coordinate of an element of a term.
///
/// - Fin, Ac, ac(w): `Point(i)`
/// - ordinals, ω, ω*, κ, κ*: `Ord(β)` (ω* and κ* read the order backwards)
/// - Q, Qk: `Rat(q)`
/// - `sum(I, B)`: `Block(i, b)`
/// - `lsum(P; ...)`: `Item(k, b)`
/// - `limsum(B, S, p)`: `Lim(b, path)`; a path is a finite sequence of step
///   coordinates, with missing trailing coordinates read as `p` and therefore
///   trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Address {
    Point(u64),
    Ord(CnfOrdinal),
    Rat(Rational64),
    Block(Box<Address>, Box<Address>),
    Item(usize, Box<Address>),
    Lim(Box<Address>, Vec<Address>),
}

impl Address {
    pub fn block(i: Address, b: Address) -> Address {
        Address::Block(Box::new(i), Box::new(b))
    }

    pub fn item(k: usize, b: Address) -> Address {
        Address::Item(k, Box::new(b))
    }

    pub fn lim(base: Address, path: Vec<Address>) -> Address {
        Address::Lim(Box::new(base), path)
    }

    pub fn finite(n: u64) -> Address {
        Address::Ord(CnfOrdinal::finite(n))
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Address::Point(n) => write!(f, "{n}"),
            Address::Ord(a) => write!(f, "{a}"),
            Address::Rat(q) if *q.denom() == 1 => write!(f, "{}", q.numer()),
            Address::Rat(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Address::Block(i, b) => write!(f, "({i}, {b})"),
            Address::Item(k, b) => write!(f, "#{k}:{b}"),
            Address::Lim(b, path) if path.is_empty() => write!(f, "<{b}>"),
            Address::Lim(b, path) => {
                write!(f, "<{b} |")?;
                for (k, p) in path.iter().enumerate() {
                    write!(f, "{}{p}", if k == 0 { " " } else { ", " })?;
                }
                write!(f, ">")
            }
        }
    }
}

impl fmt::Debug for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Address {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn bad(t: &OrderTerm, a: &Address) -> Error {
    Error::InvalidAddress(format!("{a} is not an element of {t}"))
}

fn ordinal_coord(a: &Address) -> Option<CnfOrdinal> {
    match a {
        Address::Point(n) => Some(CnfOrdinal::finite(*n)),
        Address::Ord(b) => Some(b.clone()),
        _ => None,
    }
}

fn point_coord(a: &Address) -> Option<u64> {
    match a {
        Address::Point(n) => Some(*n),
        Address::Ord(b) => b.as_finite(),
        _ => None,
    }
}

/// Normalizes a raw (parsed) address against a term and checks bounds.
pub fn conform(t: &OrderTerm, a: &Address) -> Result<Address> {
    let err = || bad(t, a);
    match t {
        OrderTerm::Fin(p) => match point_coord(a) {
            Some(i) if (i as usize) < p.len() => Ok(Address::Point(i)),
            _ => Err(err()),
        },
        OrderTerm::Ac(n) => match point_coord(a) {
            Some(i) if i < *n => Ok(Address::Point(i)),
            _ => Err(err()),
        },
        OrderTerm::AcOmega => point_coord(a).map(Address::Point).ok_or_else(err),
        OrderTerm::Ord(alpha) => match ordinal_coord(a) {
            Some(b) if b < *alpha => Ok(Address::Ord(b)),
            _ => Err(err()),
        },
        OrderTerm::Omega | OrderTerm::OmegaStar => match ordinal_coord(a) {
            Some(b) if b.is_finite() => Ok(Address::Ord(b)),
            _ => Err(err()),
        },
        // symbolic κ lies above every ordinal we can write down
        OrderTerm::Kappa | OrderTerm::KappaStar => {
            ordinal_coord(a).map(Address::Ord).ok_or_else(err)
        }
        OrderTerm::Rats | OrderTerm::QKappa => match a {
            Address::Rat(q) => Ok(Address::Rat(*q)),
            Address::Point(n) => i64::try_from(*n)
                .map(|n| Address::Rat(Rational64::from_integer(n)))
                .map_err(|_| err()),
            Address::Ord(b) => b
                .as_finite()
                .and_then(|n| i64::try_from(n).ok())
                .map(|n| Address::Rat(Rational64::from_integer(n)))
                .ok_or_else(err),
            _ => Err(err()),
        },
        OrderTerm::Inv(inner) => conform(inner, a),
        OrderTerm::SumConst(index, summand) => match a {
            Address::Block(i, b) => Ok(Address::block(conform(index, i)?, conform(summand, b)?)),
            _ => Err(err()),
        },
        OrderTerm::SumList(_, family) => match a {
            Address::Item(k, b) if *k < family.len() => {
                Ok(Address::item(*k, conform(&family[*k], b)?))
            }
            _ => Err(err()),
        },
        OrderTerm::LimSum {
            base,
            step,
            basepoint,
        } => match a {
            Address::Lim(b, path) => {
                let b = conform(base, b)?;
                let mut path = path
                    .iter()
                    .map(|p| conform(step, p))
                    .collect::<Result<Vec<_>>>()?;
                while path.last() == Some(basepoint) {
                    path.pop();
                }
                Ok(Address::lim(b, path))
            }
            _ => Err(err()),
        },
    }
}

/// Requires `a` to be a canonical address of `t`.
pub fn check_address(t: &OrderTerm, a: &Address) -> Result<()> {
    if conform(t, a)? == *a {
        Ok(())
    } else {
        Err(Error::InvalidAddress(format!(
            "{a} is not in canonical form for {t}"
        )))
    }
}

/// Order between two canonical addresses; `None` means incomparable.
pub fn compare(t: &OrderTerm, a: &Address, b: &Address) -> Result<Option<Ordering>> {
    let err = || Error::InvalidAddress(format!("cannot compare {a} and {b} in {t}"));
    let ord = |x: &Address, y: &Address| -> Result<Ordering> {
        match (x, y) {
            (Address::Ord(x), Address::Ord(y)) => Ok(x.cmp(y)),
            _ => Err(err()),
        }
    };
    Ok(match t {
        OrderTerm::Fin(p) => match (a, b) {
            (Address::Point(x), Address::Point(y)) => {
                let (x, y) = (*x as usize, *y as usize);
                if x >= p.len() || y >= p.len() {
                    return Err(err());
                }
                if x == y {
                    Some(Ordering::Equal)
                } else if p.lt(x, y) {
                    Some(Ordering::Less)
                } else if p.lt(y, x) {
                    Some(Ordering::Greater)
                } else {
                    None
                }
            }
            _ => return Err(err()),
        },
        OrderTerm::Ac(_) | OrderTerm::AcOmega => match (a, b) {
            (Address::Point(x), Address::Point(y)) => (x == y).then_some(Ordering::Equal),
            _ => return Err(err()),
        },
        OrderTerm::Ord(_) | OrderTerm::Omega | OrderTerm::Kappa => Some(ord(a, b)?),
        OrderTerm::OmegaStar | OrderTerm::KappaStar => Some(ord(a, b)?.reverse()),
        OrderTerm::Rats | OrderTerm::QKappa => match (a, b) {
            (Address::Rat(x), Address::Rat(y)) => Some(x.cmp(y)),
            _ => return Err(err()),
        },
        OrderTerm::Inv(inner) => compare(inner, a, b)?.map(Ordering::reverse),
        OrderTerm::SumConst(index, summand) => match (a, b) {
            (Address::Block(i, x), Address::Block(j, y)) => match compare(index, i, j)? {
                Some(Ordering::Equal) => compare(summand, x, y)?,
                other => other,
            },
            _ => return Err(err()),
        },
        OrderTerm::SumList(index, family) => match (a, b) {
            (Address::Item(i, x), Address::Item(j, y)) => {
                if *i >= family.len() || *j >= family.len() {
                    return Err(err());
                }
                if i == j {
                    compare(&family[*i], x, y)?
                } else if index.lt(*i, *j) {
                    Some(Ordering::Less)
                } else if index.lt(*j, *i) {
                    Some(Ordering::Greater)
                } else {
                    None
                }
            }
            _ => return Err(err()),
        },
        OrderTerm::LimSum {
            base,
            step,
            basepoint,
        } => match (a, b) {
            (Address::Lim(x, p), Address::Lim(y, q)) => match compare(base, x, y)? {
                Some(Ordering::Equal) => {
                    let len = p.len().max(q.len());
                    let mut out = Some(Ordering::Equal);
                    for k in 0..len {
                        let c = compare(
                            step,
                            p.get(k).unwrap_or(basepoint),
                            q.get(k).unwrap_or(basepoint),
                        )?;
                        if c != Some(Ordering::Equal) {
                            out = c;
                            break;
                        }
                    }
                    out
                }
                other => other,
            },
            _ => return Err(err()),
        },
    })
}

/// Structural emptiness, without synthesizing attributes.
pub fn is_empty_term(t: &OrderTerm) -> bool {
    match t {
        OrderTerm::Fin(p) => p.is_empty(),
        OrderTerm::Ord(a) => a.is_zero(),
        OrderTerm::Inv(inner) => is_empty_term(inner),
        OrderTerm::SumConst(i, b) => is_empty_term(i) || is_empty_term(b),
        OrderTerm::SumList(_, family) => family.iter().all(is_empty_term),
        OrderTerm::LimSum { base, .. } => is_empty_term(base),
        _ => false,
    }
}

/// Whether some element lies strictly above `a`.
pub fn exists_above(t: &OrderTerm, a: &Address) -> Result<bool> {
    exists_beyond(t, a, true)
}

/// Whether some element lies strictly below `a`.
pub fn exists_below(t: &OrderTerm, a: &Address) -> Result<bool> {
    exists_beyond(t, a, false)
}

fn exists_beyond(t: &OrderTerm, a: &Address, up: bool) -> Result<bool> {
    check_address(t, a)?;
    let coord = || ordinal_coord(a).expect("checked");
    Ok(match t {
        OrderTerm::Fin(p) => {
            let i = point_coord(a).expect("checked") as usize;
            (if up { p.upset(i) } else { p.downset(i) }) != 0
        }
        OrderTerm::Ac(_) | OrderTerm::AcOmega => false,
        OrderTerm::Ord(alpha) => {
            if up {
                coord().succ() < *alpha
            } else {
                !coord().is_zero()
            }
        }
        OrderTerm::Omega | OrderTerm::Kappa => up || !coord().is_zero(),
        OrderTerm::OmegaStar | OrderTerm::KappaStar => !up || !coord().is_zero(),
        OrderTerm::Rats | OrderTerm::QKappa => true,
        OrderTerm::Inv(inner) => exists_beyond(inner, a, !up)?,
        OrderTerm::SumConst(index, summand) => match a {
            Address::Block(i, x) => exists_beyond(summand, x, up)? || exists_beyond(index, i, up)?,
            _ => unreachable!("checked"),
        },
        OrderTerm::SumList(index, family) => match a {
            Address::Item(k, x) => {
                let others = if up {
                    index.upset(*k)
                } else {
                    index.downset(*k)
                };
                exists_beyond(&family[*k], x, up)?
                    || (0..family.len())
                        .any(|j| others & (1 << j) != 0 && !is_empty_term(&family[j]))
            }
            _ => unreachable!("checked"),
        },
        OrderTerm::LimSum {
            base,
            step,
            basepoint,
        } => match a {
            // a nonempty path ends in a coordinate other than the basepoint,
            // and moving that coordinate to the basepoint, or extending past
            // it, leaves the element on either side
            Address::Lim(b, path) => {
                exists_beyond(base, b, up)?
                    || !path.is_empty()
                    || exists_beyond(step, basepoint, up)?
            }
            _ => unreachable!("checked"),
        },
    })
}

/// Some canonical element, if the term is nonempty.
pub fn some_address(t: &OrderTerm) -> Option<Address> {
    match t {
        OrderTerm::Fin(p) => (!p.is_empty()).then_some(Address::Point(0)),
        OrderTerm::Ac(_) | OrderTerm::AcOmega => Some(Address::Point(0)),
        OrderTerm::Ord(a) => (!a.is_zero()).then(|| Address::finite(0)),
        OrderTerm::Omega | OrderTerm::OmegaStar | OrderTerm::Kappa | OrderTerm::KappaStar => {
            Some(Address::finite(0))
        }
        OrderTerm::Rats | OrderTerm::QKappa => Some(Address::Rat(Rational64::from_integer(0))),
        OrderTerm::Inv(inner) => some_address(inner),
        OrderTerm::SumConst(i, b) => Some(Address::block(some_address(i)?, some_address(b)?)),
        OrderTerm::SumList(_, family) => family
            .iter()
            .enumerate()
            .find_map(|(k, f)| some_address(f).map(|a| Address::item(k, a))),
        OrderTerm::LimSum { base, .. } => Some(Address::lim(some_address(base)?, Vec::new())),
    }
}

/// Builds `len` elements forming a strictly descending (or, with
/// `descending = false`, ascending) chain by structural construction.
/// `None` when the term has no infinite chain in that direction.
pub fn monotone_chain(t: &OrderTerm, len: usize, descending: bool) -> Option<Vec<Address>> {
    let naturals = |len: usize| (0..len as u64).map(Address::finite).collect::<Vec<_>>();
    match t {
        OrderTerm::Fin(_) | OrderTerm::Ac(_) | OrderTerm::AcOmega => None,
        OrderTerm::Ord(a) => (!descending && !a.is_finite()).then(|| naturals(len)),
        OrderTerm::Omega | OrderTerm::Kappa => (!descending).then(|| naturals(len)),
        OrderTerm::OmegaStar | OrderTerm::KappaStar => descending.then(|| naturals(len)),
        OrderTerm::Rats | OrderTerm::QKappa => {
            let sign = if descending { -1 } else { 1 };
            Some(
                (0..len as i64)
                    .map(|k| Address::Rat(Rational64::from_integer(sign * k)))
                    .collect(),
            )
        }
        OrderTerm::Inv(inner) => monotone_chain(inner, len, !descending),
        OrderTerm::SumConst(i, b) => {
            if let (Some(i0), Some(chain)) = (some_address(i), monotone_chain(b, len, descending)) {
                return Some(
                    chain
                        .into_iter()
                        .map(|x| Address::block(i0.clone(), x))
                        .collect(),
                );
            }
            let b0 = some_address(b)?;
            Some(
                monotone_chain(i, len, descending)?
                    .into_iter()
                    .map(|x| Address::block(x, b0.clone()))
                    .collect(),
            )
        }
        OrderTerm::SumList(_, family) => family.iter().enumerate().find_map(|(k, f)| {
            monotone_chain(f, len, descending)
                .map(|c| c.into_iter().map(|x| Address::item(k, x)).collect())
        }),
        OrderTerm::LimSum {
            base,
            step,
            basepoint,
        } => {
            if let Some(c) = monotone_chain(base, len, descending) {
                return Some(c.into_iter().map(|x| Address::lim(x, Vec::new())).collect());
            }
            let b0 = some_address(base)?;
            if let Some(c) = monotone_chain(step, len, descending) {
                return Some(
                    c.into_iter()
                        .map(|x| Address::lim(b0.clone(), vec![x]))
                        .collect(),
                );
            }
            // repeating a coordinate y on the far side of the basepoint:
            // (y) vs (y, y) differs at the second slot, basepoint vs y
            let y = step_beyond(step, basepoint, descending)?;
            Some(
                (1..=len)
                    .map(|k| Address::lim(b0.clone(), vec![y.clone(); k]))
                    .collect(),
            )
        }
    }
}

/// A step element strictly below (or above) the basepoint, found by a scan
/// over the step's structural candidates.
fn step_beyond(step: &OrderTerm, bp: &Address, below: bool) -> Option<Address> {
    let want = if below {
        Ordering::Less
    } else {
        Ordering::Greater
    };
    candidates(step)
        .into_iter()
        .find(|c| compare(step, c, bp).ok().flatten() == Some(want))
}

/// A handful of elements spread over the term: extremes, chain members and
/// a few fixed seeds.
fn candidates(t: &OrderTerm) -> Vec<Address> {
    let mut out: Vec<Address> = Vec::new();
    for d in [true, false] {
        if let Some(c) = monotone_chain(t, 3, d) {
            out.extend(c);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let cfg = SamplerConfig::default();
    for _ in 0..32 {
        if let Ok(a) = random_address(t, &mut rng, &cfg) {
            out.push(a);
        }
    }
    if let OrderTerm::Fin(p) = t {
        out.extend((0..p.len() as u64).map(Address::Point));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplerConfig {
    /// Range for integer and rational leaf coordinates.
    pub width: u64,
    /// Longest limsum path drawn.
    pub max_path: usize,
    /// Countable ordinal standing in for κ.
    pub kappa: CnfOrdinal,
    /// Draw attempts per requested element before giving up.
    pub attempts_per_element: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            width: 64,
            max_path: 4,
            kappa: CnfOrdinal::omega_pow(CnfOrdinal::finite(2)),
            attempts_per_element: 64,
        }
    }
}

fn random_below(alpha: &CnfOrdinal, rng: &mut ChaCha8Rng, width: u64) -> CnfOrdinal {
    if let Some(n) = alpha.as_finite() {
        return CnfOrdinal::finite(rng.random_range(0..n.max(1)));
    }
    let terms = alpha.terms();
    let k = rng.random_range(0..terms.len());
    let (e, c) = &terms[k];
    let c2 = rng.random_range(0..*c);
    let mut prefix = terms[..k].to_vec();
    if c2 > 0 {
        prefix.push((e.clone(), c2));
    }
    let prefix = CnfOrdinal::from_terms(prefix).expect("prefix of a normal form");
    prefix.std_add(&random_below_power(e, rng, width))
}

/// A random ordinal below `ω^e`.
fn random_below_power(e: &CnfOrdinal, rng: &mut ChaCha8Rng, width: u64) -> CnfOrdinal {
    if e.is_zero() {
        return CnfOrdinal::zero();
    }
    let e2 = random_below(e, rng, width);
    let m = rng.random_range(0..width.max(1));
    if m == 0 {
        return random_below_power(&e2, rng, width);
    }
    CnfOrdinal::monomial(e2.clone(), m).std_add(&random_below_power(&e2, rng, width))
}

fn random_address(t: &OrderTerm, rng: &mut ChaCha8Rng, cfg: &SamplerConfig) -> Result<Address> {
    let w = cfg.width.max(1);
    Ok(match t {
        OrderTerm::Fin(p) if p.is_empty() => return Err(Error::Empty),
        OrderTerm::Fin(p) => Address::Point(rng.random_range(0..p.len() as u64)),
        OrderTerm::Ac(n) => Address::Point(rng.random_range(0..*n)),
        OrderTerm::AcOmega => Address::Point(rng.random_range(0..w)),
        OrderTerm::Ord(a) if a.is_zero() => return Err(Error::Empty),
        OrderTerm::Ord(a) => Address::Ord(random_below(a, rng, w)),
        OrderTerm::Omega | OrderTerm::OmegaStar => Address::finite(rng.random_range(0..w)),
        OrderTerm::Kappa | OrderTerm::KappaStar => Address::Ord(random_below(&cfg.kappa, rng, w)),
        OrderTerm::Rats | OrderTerm::QKappa => {
            let den = rng.random_range(1..=8i64);
            let span = w as i64 * den;
            Address::Rat(Rational64::new(rng.random_range(-span..=span), den))
        }
        OrderTerm::Inv(inner) => random_address(inner, rng, cfg)?,
        OrderTerm::SumConst(i, b) => {
            let i = random_address(i, rng, cfg)?;
            Address::block(i, random_address(b, rng, cfg)?)
        }
        OrderTerm::SumList(_, family) => {
            let live: Vec<usize> = (0..family.len())
                .filter(|&k| !is_empty_term(&family[k]))
                .collect();
            if live.is_empty() {
                return Err(Error::Empty);
            }
            let k = live[rng.random_range(0..live.len())];
            Address::item(k, random_address(&family[k], rng, cfg)?)
        }
        OrderTerm::LimSum {
            base,
            step,
            basepoint,
        } => {
            let b = random_address(base, rng, cfg)?;
            let len = rng.random_range(0..=cfg.max_path);
            let mut path = (0..len)
                .map(|_| random_address(step, rng, cfg))
                .collect::<Result<Vec<_>>>()?;
            while path.last() == Some(basepoint) {
                path.pop();
            }
            Address::lim(b, path)
        }
    })
}

/// Leaf substitutions used when sampling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Instantiation {
    pub kappa: String,
    pub qkappa: String,
    /// Always false: samples never justify claims about κ itself.
    pub sound_for_kappa: bool,
}

/// A finite restriction of a term with its element labels.
#[derive(Clone, Debug, Serialize)]
pub struct Sample {
    pub term: OrderTerm,
    pub seed: u64,
    pub requested: usize,
    /// False when the term ran out of distinct elements first.
    pub complete: bool,
    pub instantiation: Instantiation,
    pub addresses: Vec<Address>,
    #[serde(skip)]
    pub poset: FinPoset,
    /// `(i, j)` for every `addresses[i] < addresses[j]`.
    pub pairs: Vec<(usize, usize)>,
}

impl Sample {
    pub fn to_dot(&self) -> String {
        let labels: Vec<String> = self.addresses.iter().map(|a| a.to_string()).collect();
        self.poset.to_dot(&self.term.to_string(), Some(&labels))
    }
}

pub fn sample_restriction(t: &OrderTerm, n: usize, seed: u64) -> Result<Sample> {
    sample_with(t, n, seed, &SamplerConfig::default())
}

pub fn sample_with(t: &OrderTerm, n: usize, seed: u64, cfg: &SamplerConfig) -> Result<Sample> {
    if n > MAX_ELEMENTS {
        return Err(Error::TooLarge {
            n,
            max: MAX_ELEMENTS,
        });
    }
    crate::attrs::validate(t)?;
    if is_empty_term(t) {
        return Err(Error::Empty);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut addresses = Vec::with_capacity(n);
    let mut attempts = 0;
    while addresses.len() < n && attempts < n * cfg.attempts_per_element {
        attempts += 1;
        let a = random_address(t, &mut rng, cfg)?;
        if seen.insert(a.clone()) {
            addresses.push(a);
        }
    }
    let poset = order_on(t, &addresses)?;
    let pairs = poset.pairs();
    Ok(Sample {
        term: t.clone(),
        seed,
        requested: n,
        complete: addresses.len() == n,
        instantiation: Instantiation {
            kappa: cfg.kappa.to_string(),
            qkappa: "Q".into(),
            sound_for_kappa: false,
        },
        addresses,
        poset,
        pairs,
    })
}

/// The restriction of `t` to the given addresses, as a finite poset.
pub fn order_on(t: &OrderTerm, addresses: &[Address]) -> Result<FinPoset> {
    let mut pairs = Vec::new();
    for (i, a) in addresses.iter().enumerate() {
        for (j, b) in addresses.iter().enumerate() {
            if i != j && compare(t, a, b)? == Some(Ordering::Less) {
                pairs.push((i, j));
            }
        }
    }
    FinPoset::from_relations(addresses.len(), &pairs)
}

/// Exhaustive strict-order check of `compare` over an address set. Returns
/// the first offending triple or pair.
pub fn strict_order_violation(
    t: &OrderTerm,
    addresses: &[Address],
) -> Result<Option<Vec<Address>>> {
    let n = addresses.len();
    let mut rel = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            rel[i][j] = compare(t, &addresses[i], &addresses[j])?;
        }
    }
    for i in 0..n {
        if rel[i][i] != Some(Ordering::Equal) {
            return Ok(Some(vec![addresses[i].clone()]));
        }
        for j in 0..n {
            let flipped = rel[j][i].map(Ordering::reverse);
            if rel[i][j] != flipped || (i != j && rel[i][j] == Some(Ordering::Equal)) {
                return Ok(Some(vec![addresses[i].clone(), addresses[j].clone()]));
            }
            for k in 0..n {
                if rel[i][j] == Some(Ordering::Less)
                    && rel[j][k] == Some(Ordering::Less)
                    && rel[i][k] != Some(Ordering::Less)
                {
                    return Ok(Some(vec![
                        addresses[i].clone(),
                        addresses[j].clone(),
                        addresses[k].clone(),
                    ]));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Address {
        Address::Rat(Rational64::from_integer(n))
    }

    #[test]
    fn compare_examples() {
        let t = OrderTerm::sum(OrderTerm::Omega, OrderTerm::Omega);
        let a = Address::block(Address::finite(0), Address::finite(3));
        let b = Address::block(Address::finite(1), Address::finite(0));
        assert_eq!(compare(&t, &a, &b).unwrap(), Some(Ordering::Less));

        let t = OrderTerm::inv(OrderTerm::Omega);
        assert_eq!(
            compare(&t, &Address::finite(2), &Address::finite(5)).unwrap(),
            Some(Ordering::Greater)
        );

        let t = OrderTerm::lsum(
            FinPoset::antichain(2),
            vec![OrderTerm::Omega, OrderTerm::Omega],
        );
        let a = Address::item(0, Address::finite(1));
        let b = Address::item(1, Address::finite(1));
        assert_eq!(compare(&t, &a, &b).unwrap(), None);
    }

    #[test]
    fn samples_of_chains_and_antichains() {
        for seed in 0..5 {
            let s = sample_restriction(&OrderTerm::Omega, 5, seed).unwrap();
            assert!(s.complete);
            assert!(s.poset.is_isomorphic(&FinPoset::chain(5)));
            let s = sample_restriction(&OrderTerm::Ac(3), 3, seed).unwrap();
            assert_eq!(s.poset, FinPoset::antichain(3));
        }
    }

    #[test]
    fn short_terms_flag_incomplete() {
        let s = sample_restriction(&OrderTerm::Ac(2), 5, 1).unwrap();
        assert!(!s.complete);
        assert_eq!(s.addresses.len(), 2);
    }

    #[test]
    fn limsum_lexicographic() {
        // limsum(1, 2, 0): sequences over {0 < 1}, trailing zeros dropped
        let t = OrderTerm::limsum(
            OrderTerm::point(),
            OrderTerm::finite_chain(2),
            Address::finite(0),
        );
        let root = Address::lim(Address::finite(0), vec![]);
        let one = Address::lim(Address::finite(0), vec![Address::finite(1)]);
        let zero_one = Address::lim(
            Address::finite(0),
            vec![Address::finite(0), Address::finite(1)],
        );
        assert_eq!(compare(&t, &root, &zero_one).unwrap(), Some(Ordering::Less));
        assert_eq!(compare(&t, &zero_one, &one).unwrap(), Some(Ordering::Less));
        let raw = Address::lim(
            Address::finite(0),
            vec![Address::Point(1), Address::Point(0)],
        );
        assert_eq!(conform(&t, &raw).unwrap(), one);
        assert!(exists_above(&t, &root).unwrap());
        assert!(!exists_below(&t, &root).unwrap());
    }

    #[test]
    fn rationals_conform() {
        assert_eq!(conform(&OrderTerm::Rats, &Address::Point(3)).unwrap(), q(3));
        assert!(conform(&OrderTerm::Omega, &q(1)).is_err());
        assert!(conform(&OrderTerm::Ac(2), &Address::Point(2)).is_err());
    }

    #[test]
    fn chains_are_monotone() {
        let t = OrderTerm::sum(OrderTerm::Omega, OrderTerm::inv(OrderTerm::Omega));
        let c = monotone_chain(&t, 6, true).unwrap();
        for w in c.windows(2) {
            assert_eq!(compare(&t, &w[0], &w[1]).unwrap(), Some(Ordering::Greater));
        }
        assert!(monotone_chain(&OrderTerm::Omega, 4, true).is_none());
    }
}
