use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::series::PuiseuxSeries;
use super::PuiseuxError;
use crate::exact::{int, PointQ2, Rational};
use crate::tropical::{Exponent, TropicalPolynomial};

/// `Σ a_ij z1^i z2^j` with Puiseux series coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxPolynomial {
    terms: BTreeMap<Exponent, PuiseuxSeries>,
}

impl PuiseuxPolynomial {
    /// Terms that are zero up to truncation are dropped.
    pub fn new(terms: BTreeMap<Exponent, PuiseuxSeries>) -> Result<Self, PuiseuxError> {
        let terms: BTreeMap<_, _> = terms.into_iter().filter(|(_, a)| !a.is_zero_to_truncation()).collect();
        if terms.is_empty() {
            return Err(PuiseuxError::EmptyPolynomial);
        }
        Ok(PuiseuxPolynomial { terms })
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, PuiseuxSeries> {
        &self.terms
    }

    /// The value `f(z1, z2)` together with every summand `a_ij z1^i z2^j`.
    pub fn evaluate_summands(&self, p: &PuiseuxPoint) -> Vec<(Exponent, PuiseuxSeries)> {
        self.terms
            .iter()
            .map(|(&(i, j), a)| ((i, j), a.mul(&p.z1.pow(i)).mul(&p.z2.pow(j))))
            .collect()
    }

    pub fn evaluate(&self, p: &PuiseuxPoint) -> PuiseuxSeries {
        let summands = self.evaluate_summands(p);
        let mut it = summands.into_iter().map(|s| s.1);
        let first = it.next().expect("nonempty");
        it.fold(first, |acc, s| acc.add(&s))
    }

    pub fn mul(&self, o: &PuiseuxPolynomial) -> Result<PuiseuxPolynomial, PuiseuxError> {
        let mut out: BTreeMap<Exponent, PuiseuxSeries> = BTreeMap::new();
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &o.terms {
                let e = (i1 + i2, j1 + j2);
                let prod = a.mul(b);
                let next = match out.remove(&e) {
                    Some(acc) => acc.add(&prod),
                    None => prod,
                };
                out.insert(e, next);
            }
        }
        PuiseuxPolynomial::new(out)
    }

    /// `(i, j) -> -val a_ij`.
    pub fn tropicalize(&self) -> Result<TropicalPolynomial, PuiseuxError> {
        let terms = self
            .terms
            .iter()
            .map(|(e, a)| a.val().map(|v| (*e, -v)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TropicalPolynomial::from_terms(terms).expect("nonempty"))
    }
}

/// A point of the torus `(K*)^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuiseuxPoint {
    pub z1: PuiseuxSeries,
    pub z2: PuiseuxSeries,
}

impl PuiseuxPoint {
    pub fn new(z1: PuiseuxSeries, z2: PuiseuxSeries) -> Result<Self, PuiseuxError> {
        if z1.is_zero_to_truncation() || z2.is_zero_to_truncation() {
            return Err(PuiseuxError::ZeroCoordinate);
        }
        Ok(PuiseuxPoint { z1, z2 })
    }
}

/// `(-val z1, -val z2)`.
pub fn val_map(p: &PuiseuxPoint) -> Result<PointQ2, PuiseuxError> {
    Ok(PointQ2::new(-p.z1.val()?, -p.z2.val()?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootStatus {
    NonZero,
    ZeroUpToTruncation,
    /// The truncation does not reach the smallest summand valuation, so the
    /// value carries no information.
    Undecidable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KapranovReport {
    pub status: RootStatus,
    pub is_root: bool,
    pub min_attained_twice: bool,
    pub image_on_corner_locus: bool,
    pub image: PointQ2,
    #[serde(with = "crate::exact::rational::serde_str")]
    pub min_summand_valuation: Rational,
}

/// Classifies a computed value `f(p)` given the smallest summand valuation.
pub fn root_status(value: &PuiseuxSeries, min_summand_valuation: &Rational) -> RootStatus {
    if !value.is_zero_to_truncation() {
        RootStatus::NonZero
    } else if value.truncation() <= min_summand_valuation {
        RootStatus::Undecidable
    } else {
        RootStatus::ZeroUpToTruncation
    }
}

pub fn kapranov_check(f: &PuiseuxPolynomial, p: &PuiseuxPoint) -> Result<KapranovReport, PuiseuxError> {
    let (v1, v2) = (p.z1.val()?, p.z2.val()?);
    let mut vals = Vec::with_capacity(f.terms.len());
    for (&(i, j), a) in &f.terms {
        vals.push(a.val()? + &v1 * int(i as i64) + &v2 * int(j as i64));
    }
    let min = vals.iter().min().expect("nonempty").clone();
    let min_attained_twice = vals.iter().filter(|v| **v == min).count() >= 2;

    let status = root_status(&f.evaluate(p), &min);

    let image = val_map(p)?;
    let g = f.tropicalize()?;
    let image_on_corner_locus = g.active_terms(&image).len() >= 2;
    Ok(KapranovReport {
        status,
        is_root: status == RootStatus::ZeroUpToTruncation,
        min_attained_twice,
        image_on_corner_locus,
        image,
        min_summand_valuation: min,
    })
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    i: u32,
    j: u32,
    a: PuiseuxSeries,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    terms: Vec<TermJson>,
}

impl Serialize for PuiseuxPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson { terms: self.terms.iter().map(|(&(i, j), a)| TermJson { i, j, a: a.clone() }).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PuiseuxPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        let mut terms = BTreeMap::new();
        for t in raw.terms {
            if terms.insert((t.i, t.j), t.a).is_some() {
                return Err(serde::de::Error::custom(format!("duplicate exponent ({}, {})", t.i, t.j)));
            }
        }
        PuiseuxPolynomial::new(terms).map_err(serde::de::Error::custom)
    }
}
