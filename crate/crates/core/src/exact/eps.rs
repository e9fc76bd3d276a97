//! Rational functions in a formal positive infinitesimal `ε`, ordered by
//! their behaviour as `ε -> 0⁺`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};

/// Dense polynomial in `ε`, coefficients from low to high degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct EpsPoly(Vec<Rational>);

impl EpsPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        EpsPoly(coeffs)
    }

    pub fn constant(c: Rational) -> Self {
        EpsPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Index and value of the lowest-degree nonzero coefficient.
    pub fn lowest(&self) -> Option<(usize, &Rational)> {
        self.0.iter().enumerate().find(|(_, c)| !c.is_zero())
    }

    fn coeff(&self, i: usize) -> Rational {
        self.0.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, o: &EpsPoly) -> EpsPoly {
        let n = self.0.len().max(o.0.len());
        EpsPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn neg(&self) -> EpsPoly {
        EpsPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &EpsPoly) -> EpsPoly {
        if self.is_zero() || o.is_zero() {
            return EpsPoly::default();
        }
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        EpsPoly::new(out)
    }

    pub fn scale(&self, k: &Rational) -> EpsPoly {
        EpsPoly::new(self.0.iter().map(|c| c * k).collect())
    }

    /// Polynomial division with remainder; `d` must be nonzero.
    fn div_rem(&self, d: &EpsPoly) -> (EpsPoly, EpsPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.0[dd].clone();
        let mut rem = self.0.clone();
        let mut quot = vec![Rational::zero(); self.0.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            for (i, dc) in d.0.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (EpsPoly::new(quot), EpsPoly::new(rem))
    }

    fn gcd(&self, o: &EpsPoly) -> EpsPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a
    }

    pub fn eval(&self, e: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * e + c)
    }
}

/// Element of the field `Q(ε)` with `ε` a positive infinitesimal.
///
/// Canonical form: numerator and denominator coprime, and the lowest-degree
/// nonzero coefficient of the denominator equal to one (so the denominator is
/// positive for all sufficiently small `ε > 0`). Equal values therefore
/// have equal fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EpsScalar {
    num: EpsPoly,
    den: EpsPoly,
}

impl EpsScalar {
    pub fn new(num: EpsPoly, den: EpsPoly) -> Self {
        assert!(!den.is_zero(), "EpsScalar with zero denominator");
        if num.is_zero() {
            return EpsScalar { num, den: EpsPoly::constant(Rational::one()) };
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let norm = den.lowest().unwrap().1.clone();
        let inv = Rational::one() / norm;
        EpsScalar { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn from_rational(r: Rational) -> Self {
        EpsScalar { num: EpsPoly::constant(r), den: EpsPoly::constant(Rational::one()) }
    }

    /// `a + b ε`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        EpsScalar { num: EpsPoly::new(vec![a, b]), den: EpsPoly::constant(Rational::one()) }
    }

    /// The infinitesimal itself.
    pub fn eps() -> Self {
        EpsScalar::linear(Rational::zero(), Rational::one())
    }

    pub fn numerator(&self) -> &EpsPoly {
        &self.num
    }

    pub fn denominator(&self) -> &EpsPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Sign of the value for every sufficiently small `ε > 0`.
    pub fn sign(&self) -> i8 {
        match self.num.lowest() {
            None => 0,
            Some((_, c)) => {
                let d = self.den.lowest().unwrap().1;
                if c.is_positive() == d.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// Limit as `ε -> 0⁺`, or `None` when the value is unbounded.
    pub fn limit(&self) -> Option<Rational> {
        let (dk, dc) = self.den.lowest().unwrap();
        match self.num.lowest() {
            None => Some(Rational::zero()),
            Some((nk, _)) if nk < dk => None,
            Some((nk, _)) if nk > dk => Some(Rational::zero()),
            Some((_, nc)) => Some(nc / dc),
        }
    }

    /// Value at a concrete `ε`; `None` when the denominator vanishes there.
    pub fn eval_at(&self, e: &Rational) -> Option<Rational> {
        let d = self.den.eval(e);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(e) / d)
        }
    }

    pub fn add(&self, o: &EpsScalar) -> EpsScalar {
        if self.den == o.den {
            return EpsScalar::new(self.num.add(&o.num), self.den.clone());
        }
        EpsScalar::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn neg(&self) -> EpsScalar {
        EpsScalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &EpsScalar) -> EpsScalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &EpsScalar) -> EpsScalar {
        EpsScalar::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &EpsScalar) -> EpsScalar {
        assert!(!o.is_zero(), "EpsScalar division by zero");
        EpsScalar::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }
}

/// Sign of `q` as `ε -> 0⁺`.
pub fn eps_sign(q: &EpsScalar) -> i8 {
    q.sign()
}

impl PartialOrd for EpsScalar {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for EpsScalar {
    fn cmp(&self, o: &Self) -> Ordering {
        self.sub(o).sign().cmp(&0)
    }
}

impl fmt::Display for EpsScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &EpsPoly| {
            if p.is_zero() {
                return "0".to_string();
            }
            p.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| match i {
                    0 => format_rational(c),
                    1 => format!("{}ε", format_rational(c)),
                    _ => format!("{}ε^{}", format_rational(c), i),
                })
                .collect::<Vec<_>>()
                .join(" + ")
        };
        if self.den.coeffs() == [Rational::one()] {
            write!(f, "{}", show(&self.num))
        } else {
            write!(f, "({}) / ({})", show(&self.num), show(&self.den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use proptest::prelude::*;

    fn poly(c: &[i64]) -> EpsPoly {
        EpsPoly::new(c.iter().map(|&k| int(k)).collect())
    }

    #[test]
    fn sign_examples() {
        assert_eq!(eps_sign(&EpsScalar::eps()), 1);
        assert_eq!(eps_sign(&EpsScalar::linear(int(1), int(-1))), 1);
        let q = EpsScalar::new(poly(&[0, -1, 1]), poly(&[1]));
        assert_eq!(eps_sign(&q), -1);
        assert_eq!(eps_sign(&EpsScalar::from_rational(int(0))), 0);
    }

    #[test]
    fn canonical_form_reduces() {
        // (ε² - ε) / (2ε) = (ε - 1) / 2
        let q = EpsScalar::new(poly(&[0, -1, 1]), poly(&[0, 2]));
        assert_eq!(q.denominator().coeffs(), &[int(1)]);
        assert_eq!(q.numerator().coeffs(), &[rat(-1, 2), rat(1, 2)]);
        assert_eq!(q.limit(), Some(rat(-1, 2)));
    }

    #[test]
    fn limits() {
        let blowup = EpsScalar::new(poly(&[1]), poly(&[0, 1]));
        assert_eq!(blowup.limit(), None);
        let vanish = EpsScalar::new(poly(&[0, 0, 3]), poly(&[0, 1]));
        assert_eq!(vanish.limit(), Some(int(0)));
    }

    #[test]
    fn ordering_is_infinitesimal() {
        let e = EpsScalar::eps();
        let zero = EpsScalar::from_rational(int(0));
        let tiny = EpsScalar::from_rational(rat(1, 1_000_000));
        assert!(zero < e);
        assert!(e < tiny);
    }

    fn small_poly() -> impl Strategy<Value = EpsPoly> {
        proptest::collection::vec(-5i64..6, 1..4).prop_map(|c| poly(&c))
    }

    proptest! {
        #[test]
        fn sign_matches_small_concrete_eps(n in small_poly(), d in small_poly()) {
            prop_assume!(!d.is_zero());
            let q = EpsScalar::new(n.clone(), d.clone());
            // Every root of num and den is bounded below in modulus by
            // 1/(1 + max|coeff|/|lowest coeff|) <= 1/6 on the relevant side;
            // 1/1000 is past all of them.
            let e = rat(1, 1000);
            let value = q.eval_at(&e).unwrap();
            let s = if value.is_zero() { 0 } else if value.is_positive() { 1 } else { -1 };
            prop_assert_eq!(eps_sign(&q), s);
        }

        #[test]
        fn field_ops_agree_with_evaluation(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assume!(!c.is_zero() && !b.is_zero());
            let x = EpsScalar::new(a.clone(), c.clone());
            let y = EpsScalar::new(b.clone(), c.clone());
            let e = rat(1, 997);
            let (vx, vy) = (x.eval_at(&e).unwrap(), y.eval_at(&e).unwrap());
            prop_assert_eq!(x.add(&y).eval_at(&e).unwrap(), &vx + &vy);
            prop_assert_eq!(x.mul(&y).eval_at(&e).unwrap(), &vx * &vy);
            if !vy.is_zero() {
                prop_assert_eq!(x.div(&y).eval_at(&e).unwrap(), &vx / &vy);
            }
        }
    }
}
