use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::PuiseuxError;
use crate::exact::{format_rational, int, Rational};

/// Truncation order used when none is given.
pub const DEFAULT_TRUNCATION: i64 = 20;

/// A Puiseux series `Σ c_q t^q` known exactly for all exponents below
/// `trunc`. Terms are sorted by exponent, all coefficients nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PuiseuxSeries {
    terms: Vec<(Rational, Rational)>,
    trunc: Rational,
}

impl PuiseuxSeries {
    /// Normalises: merges equal exponents, drops zero coefficients and
    /// anything at or beyond the truncation order.
    pub fn new(terms: Vec<(Rational, Rational)>, trunc: Rational) -> Self {
        let mut terms = terms;
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(terms.len());
        for (q, c) in terms {
            if q >= trunc {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.0 == q => last.1 += c,
                _ => out.push((q, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        PuiseuxSeries { terms: out, trunc }
    }

    pub fn zero(trunc: Rational) -> Self {
        PuiseuxSeries { terms: Vec::new(), trunc }
    }

    /// `c t^q`, known up to `trunc`.
    pub fn monomial(c: Rational, q: Rational, trunc: Rational) -> Self {
        Self::new(vec![(q, c)], trunc)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, Rational::zero(), int(DEFAULT_TRUNCATION))
    }

    /// `t^q` with the default truncation.
    pub fn t_pow(q: Rational) -> Self {
        Self::monomial(Rational::one(), q, int(DEFAULT_TRUNCATION))
    }

    pub fn terms(&self) -> &[(Rational, Rational)] {
        &self.terms
    }

    pub fn truncation(&self) -> &Rational {
        &self.trunc
    }

    /// No known nonzero term.
    pub fn is_zero_to_truncation(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn val(&self) -> Result<Rational, PuiseuxError> {
        self.terms.first().map(|t| t.0.clone()).ok_or(PuiseuxError::ValuationUndefined)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.1)
    }

    /// Lower bound on the valuation: the valuation, or the truncation order
    /// when nothing is known.
    fn low(&self) -> &Rational {
        self.terms.first().map(|t| &t.0).unwrap_or(&self.trunc)
    }

    pub fn truncate(&self, trunc: &Rational) -> Self {
        let t = (&self.trunc).min(trunc).clone();
        Self::new(self.terms.clone(), t)
    }

    pub fn add(&self, o: &Self) -> Self {
        let trunc = (&self.trunc).min(&o.trunc).clone();
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        Self::new(terms, trunc)
    }

    pub fn neg(&self) -> Self {
        PuiseuxSeries { terms: self.terms.iter().map(|(q, c)| (q.clone(), -c)).collect(), trunc: self.trunc.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.terms.iter().map(|(q, c)| (q.clone(), c * k)).collect(), self.trunc.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let trunc = (&self.trunc + o.low()).min(&o.trunc + self.low());
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (q1, c1) in &self.terms {
            for (q2, c2) in &o.terms {
                let q = q1 + q2;
                if q < trunc {
                    terms.push((q, c1 * c2));
                }
            }
        }
        Self::new(terms, trunc)
    }

    pub fn pow(&self, k: u32) -> Self {
        if k == 0 {
            let trunc = (&self.trunc - self.low()).max(int(DEFAULT_TRUNCATION));
            return PuiseuxSeries::monomial(Rational::one(), Rational::zero(), trunc);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse, known to relative precision `trunc - val`.
    pub fn inv(&self) -> Result<Self, PuiseuxError> {
        let (v, c) = self.terms.first().cloned().ok_or(PuiseuxError::InverseOfZero)?;
        let rel = &self.trunc - &v;
        // self = c t^v (1 + u) with u of positive valuation, known below rel.
        let cinv = c.recip();
        let u = PuiseuxSeries::new(
            self.terms[1..].iter().map(|(q, d)| (q - &v, d * &cinv)).collect(),
            rel.clone(),
        );
        let minus_u = u.neg();
        let mut sum = PuiseuxSeries::monomial(Rational::one(), Rational::zero(), rel.clone());
        let mut power = sum.clone();
        loop {
            power = power.mul(&minus_u).truncate(&rel);
            if power.is_zero_to_truncation() {
                break;
            }
            sum = sum.add(&power);
        }
        let shifted = sum.terms.iter().map(|(q, d)| (q - &v, d * &cinv)).collect();
        Ok(PuiseuxSeries::new(shifted, &sum.trunc - &v))
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (q, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*t^({})", format_rational(c), format_rational(q))?;
        }
        if !self.terms.is_empty() {
            write!(f, " + ")?;
        }
        write!(f, "O(t^({}))", format_rational(&self.trunc))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    #[serde(with = "crate::exact::rational::serde_str")]
    q: Rational,
    #[serde(with = "crate::exact::rational::serde_str")]
    c: Rational,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    terms: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rational")]
    trunc: Option<Rational>,
}

mod opt_rational {
    use super::Rational;
    use crate::exact::{format_rational, parse_rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&format_rational(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|s| parse_rational(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}"))))
            .transpose()
    }
}

impl Serialize for PuiseuxSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SeriesJson {
            terms: self.terms.iter().map(|(q, c)| TermJson { q: q.clone(), c: c.clone() }).collect(),
            trunc: Some(self.trunc.clone()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PuiseuxSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = SeriesJson::deserialize(d)?;
        let trunc = raw.trunc.unwrap_or_else(|| int(DEFAULT_TRUNCATION));
        Ok(PuiseuxSeries::new(raw.terms.into_iter().map(|t| (t.q, t.c)).collect(), trunc))
    }
}
