//! Coarse cardinality classes: finite `n`, `ℵ₀`, or the symbolic `κ`.
//!
//! κ is an uncountable regular cardinal with κ^{<κ} = κ, so the class is
//! closed under finite sums, products and suprema.

use std::fmt;
use std::ops::{Add, Mul};

use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CardClass {
    Fin(u64),
    Aleph0,
    Kappa,
}

impl CardClass {
    pub const ZERO: CardClass = CardClass::Fin(0);
    pub const ONE: CardClass = CardClass::Fin(1);

    pub fn is_finite(self) -> bool {
        matches!(self, CardClass::Fin(_))
    }

    pub fn is_zero(self) -> bool {
        self == CardClass::ZERO
    }

    pub fn sum<I: IntoIterator<Item = CardClass>>(it: I) -> CardClass {
        it.into_iter().fold(CardClass::ZERO, CardClass::add)
    }
}

impl Add for CardClass {
    type Output = CardClass;

    fn add(self, other: CardClass) -> CardClass {
        match (self, other) {
            (CardClass::Fin(a), CardClass::Fin(b)) => CardClass::Fin(a.saturating_add(b)),
            (a, b) => a.max(b),
        }
    }
}

impl Mul for CardClass {
    type Output = CardClass;

    fn mul(self, other: CardClass) -> CardClass {
        match (self, other) {
            (CardClass::Fin(0), _) | (_, CardClass::Fin(0)) => CardClass::ZERO,
            (CardClass::Fin(a), CardClass::Fin(b)) => CardClass::Fin(a.saturating_mul(b)),
            (a, b) => a.max(b),
        }
    }
}

impl fmt::Display for CardClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardClass::Fin(n) => write!(f, "fin({n})"),
            CardClass::Aleph0 => write!(f, "aleph0"),
            CardClass::Kappa => write!(f, "kappa"),
        }
    }
}

impl Serialize for CardClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::CardClass::*;
    use std::ops::{Add, Mul};

    #[test]
    fn tables() {
        assert_eq!(Kappa.mul(Aleph0), Kappa);
        assert_eq!(Aleph0.mul(Kappa), Kappa);
        assert_eq!(Kappa.mul(Kappa), Kappa);
        assert_eq!(Aleph0.mul(Aleph0), Aleph0);
        assert_eq!(Fin(3).mul(Fin(4)), Fin(12));
        assert_eq!(Fin(0).mul(Kappa), Fin(0));
        assert_eq!(Fin(2).add(Aleph0), Aleph0);
        assert_eq!(Fin(2).add(Fin(5)), Fin(7));
        assert!(Fin(1000) < Aleph0 && Aleph0 < Kappa);
    }
}
