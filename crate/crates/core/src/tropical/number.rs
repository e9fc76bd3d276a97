//! The max-plus semiring `(Q ∪ {-∞}, max, +)`.

use std::fmt;

use crate::exact::{format_rational, Rational};

/// Tropical number: a rational or the bottom element `-∞`.
///
/// The derived order puts `NegInfinity` below every finite value, so `⊕` is
/// just `max`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TropicalNumber {
    NegInfinity,
    Finite(Rational),
}

impl TropicalNumber {
    pub fn finite(r: Rational) -> Self {
        TropicalNumber::Finite(r)
    }

    /// The ⊙-identity, `0`.
    pub fn one() -> Self {
        TropicalNumber::Finite(crate::exact::zero())
    }

    /// The ⊕-identity, `-∞`.
    pub fn zero() -> Self {
        TropicalNumber::NegInfinity
    }

    /// `x ⊕ y = max(x, y)`.
    pub fn oplus(&self, other: &Self) -> Self {
        self.max(other).clone()
    }

    /// `x ⊙ y = x + y`, absorbing at `-∞`.
    pub fn odot(&self, other: &Self) -> Self {
        match (self, other) {
            (TropicalNumber::Finite(a), TropicalNumber::Finite(b)) => TropicalNumber::Finite(a + b),
            _ => TropicalNumber::NegInfinity,
        }
    }

    /// Tropical power `x^⊙k = k x`.
    pub fn pow(&self, k: u32) -> Self {
        match self {
            _ if k == 0 => TropicalNumber::one(),
            TropicalNumber::Finite(a) => TropicalNumber::Finite(a * crate::exact::int(k as i64)),
            TropicalNumber::NegInfinity => TropicalNumber::NegInfinity,
        }
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            TropicalNumber::Finite(a) => Some(a),
            TropicalNumber::NegInfinity => None,
        }
    }
}

impl From<Rational> for TropicalNumber {
    fn from(r: Rational) -> Self {
        TropicalNumber::Finite(r)
    }
}

impl fmt::Display for TropicalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropicalNumber::NegInfinity => write!(f, "-inf"),
            TropicalNumber::Finite(a) => write!(f, "{}", format_rational(a)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn tn() -> impl Strategy<Value = TropicalNumber> {
        prop_oneof![
            1 => Just(TropicalNumber::NegInfinity),
            6 => (-50i64..50, 1i64..7).prop_map(|(n, d)| TropicalNumber::Finite(rat(n, d))),
        ]
    }

    #[test]
    fn identities() {
        let x = TropicalNumber::Finite(rat(3, 2));
        assert_eq!(TropicalNumber::NegInfinity.oplus(&x), x);
        assert_eq!(TropicalNumber::NegInfinity.odot(&x), TropicalNumber::NegInfinity);
        assert_eq!(TropicalNumber::one().odot(&x), x);
        assert_eq!(x.pow(3), TropicalNumber::Finite(rat(9, 2)));
    }

    proptest! {
        #[test]
        fn semiring_laws(a in tn(), b in tn(), c in tn()) {
            prop_assert_eq!(a.oplus(&b).oplus(&c), a.oplus(&b.oplus(&c)));
            prop_assert_eq!(a.odot(&b).odot(&c), a.odot(&b.odot(&c)));
            prop_assert_eq!(a.oplus(&b), b.oplus(&a));
            prop_assert_eq!(a.odot(&b), b.odot(&a));
            prop_assert_eq!(a.odot(&b.oplus(&c)), a.odot(&b).oplus(&a.odot(&c)));
            prop_assert_eq!(a.odot(&TropicalNumber::one()), a.clone());
            prop_assert_eq!(a.oplus(&TropicalNumber::zero()), a.clone());
        }

        #[test]
        fn no_additive_inverses(n in -50i64..50, d in 1i64..7, y in tn()) {
            // max(x, y) >= x > -inf for finite x: nothing cancels x.
            let x = TropicalNumber::Finite(rat(n, d));
            prop_assert_ne!(x.oplus(&y), TropicalNumber::NegInfinity);
            prop_assert!(x.oplus(&y) >= x);
        }
    }
}
