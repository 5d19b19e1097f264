//! The order-term AST.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::finposet::FinPoset;
use crate::ordinal::CnfOrdinal;
use crate::sampler::Address;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum OrderTerm {
    /// An explicit finite poset.
    Fin(FinPoset),
    /// An ordinal below ε₀ other than ω (which is [`OrderTerm::Omega`]).
    Ord(CnfOrdinal),
    Omega,
    OmegaStar,
    /// The symbolic uncountable regular cardinal κ, as a well-order.
    Kappa,
    KappaStar,
    /// The rationals.
    Rats,
    /// The saturated dense order of size κ.
    QKappa,
    /// Antichain of `n ≥ 1` points.
    Ac(u64),
    /// Countably infinite antichain.
    AcOmega,
    Inv(Box<OrderTerm>),
    /// Copies of `summand` along `index`.
    SumConst(Box<OrderTerm>, Box<OrderTerm>),
    /// A finite family along a finite index poset.
    SumList(FinPoset, Vec<OrderTerm>),
    /// Union of stages `L₀ = base`, `Lₙ₊₁ = Σ_{x∈Lₙ} step`, where each `x`
    /// is identified with the copy of `basepoint` in its own block.
    LimSum {
        base: Box<OrderTerm>,
        step: Box<OrderTerm>,
        basepoint: Address,
    },
}

impl OrderTerm {
    /// Ordinal leaf; `ω` normalizes to [`OrderTerm::Omega`].
    pub fn ord(alpha: CnfOrdinal) -> OrderTerm {
        if alpha == CnfOrdinal::omega() {
            OrderTerm::Omega
        } else {
            OrderTerm::Ord(alpha)
        }
    }

    pub fn finite_chain(n: u64) -> OrderTerm {
        OrderTerm::Ord(CnfOrdinal::finite(n))
    }

    pub fn point() -> OrderTerm {
        Self::finite_chain(1)
    }

    pub fn inv(t: OrderTerm) -> OrderTerm {
        OrderTerm::Inv(Box::new(t))
    }

    pub fn sum(index: OrderTerm, summand: OrderTerm) -> OrderTerm {
        OrderTerm::SumConst(Box::new(index), Box::new(summand))
    }

    pub fn lsum(index: FinPoset, family: Vec<OrderTerm>) -> OrderTerm {
        OrderTerm::SumList(index, family)
    }

    pub fn limsum(base: OrderTerm, step: OrderTerm, basepoint: Address) -> OrderTerm {
        OrderTerm::LimSum {
            base: Box::new(base),
            step: Box::new(step),
            basepoint,
        }
    }

    /// Immediate subterms.
    pub fn children(&self) -> Vec<&OrderTerm> {
        match self {
            OrderTerm::Inv(t) => vec![t],
            OrderTerm::SumConst(i, b) => vec![i, b],
            OrderTerm::SumList(_, f) => f.iter().collect(),
            OrderTerm::LimSum { base, step, .. } => vec![base, step],
            _ => Vec::new(),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }
}

fn write_finposet_literal(f: &mut fmt::Formatter<'_>, p: &FinPoset) -> fmt::Result {
    if p.len() == 1 || (p.is_linear() && *p == FinPoset::chain(p.len())) {
        write!(f, "{}", p.len())
    } else if p.pairs().is_empty() {
        write!(f, "ac({})", p.len())
    } else {
        write!(f, "fin({};", p.len())?;
        for (k, (a, b)) in p.covers().into_iter().enumerate() {
            write!(f, "{}{a}<{b}", if k == 0 { " " } else { ", " })?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for OrderTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderTerm::Fin(p) => {
                write!(f, "fin({};", p.len())?;
                for (k, (a, b)) in p.covers().into_iter().enumerate() {
                    write!(f, "{}{a}<{b}", if k == 0 { " " } else { ", " })?;
                }
                write!(f, ")")
            }
            OrderTerm::Ord(a) => match a.as_finite() {
                Some(n) => write!(f, "{n}"),
                None => write!(f, "ord({a})"),
            },
            OrderTerm::Omega => write!(f, "w"),
            OrderTerm::OmegaStar => write!(f, "w*"),
            OrderTerm::Kappa => write!(f, "k"),
            OrderTerm::KappaStar => write!(f, "k*"),
            OrderTerm::Rats => write!(f, "Q"),
            OrderTerm::QKappa => write!(f, "Qk"),
            OrderTerm::Ac(n) => write!(f, "ac({n})"),
            OrderTerm::AcOmega => write!(f, "ac(w)"),
            OrderTerm::Inv(t) => write!(f, "inv({t})"),
            OrderTerm::SumConst(i, b) => write!(f, "sum({i}, {b})"),
            OrderTerm::SumList(i, fam) => {
                write!(f, "lsum(")?;
                write_finposet_literal(f, i)?;
                write!(f, ";")?;
                for (k, t) in fam.iter().enumerate() {
                    write!(f, "{}{t}", if k == 0 { " " } else { ", " })?;
                }
                write!(f, ")")
            }
            OrderTerm::LimSum {
                base,
                step,
                basepoint,
            } => {
                write!(f, "limsum({base}, {step}, {basepoint})")
            }
        }
    }
}

impl fmt::Debug for OrderTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for OrderTerm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
