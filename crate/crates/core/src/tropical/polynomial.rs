use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::parser::{parse, ParseError};
use super::TropicalError;
use crate::exact::lattice::{convex_hull, lattice_points_in};
use crate::exact::{format_rational, hull_height, int, upper_hull_lift, IntVec2, PointQ2, Rational, UpperFace};

/// Exponent `(i, j)` of the monomial `x^i y^j`.
pub type Exponent = (u32, u32);

/// A tropical polynomial `max_{(i,j)} (i x + j y + c_ij)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropicalPolynomial {
    terms: BTreeMap<Exponent, Rational>,
}

/// Upper faces of the lifted support.
pub type LiftedHull = Vec<UpperFace>;

pub fn exponent_vec(e: Exponent) -> IntVec2 {
    IntVec2::new(e.0 as i64, e.1 as i64)
}

impl TropicalPolynomial {
    pub fn from_map(terms: BTreeMap<Exponent, Rational>) -> Result<Self, TropicalError> {
        if terms.is_empty() {
            return Err(TropicalError::Empty);
        }
        Ok(TropicalPolynomial { terms })
    }

    /// Builds from a term list; repeated exponents keep the larger coefficient.
    pub fn from_terms<I: IntoIterator<Item = (Exponent, Rational)>>(terms: I) -> Result<Self, TropicalError> {
        let mut map: BTreeMap<Exponent, Rational> = BTreeMap::new();
        for (e, c) in terms {
            match map.get_mut(&e) {
                Some(old) if *old >= c => {}
                Some(old) => *old = c,
                None => {
                    map.insert(e, c);
                }
            }
        }
        Self::from_map(map)
    }

    pub fn constant(c: Rational) -> Self {
        TropicalPolynomial { terms: BTreeMap::from([((0, 0), c)]) }
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, e: Exponent) -> Option<&Rational> {
        self.terms.get(&e)
    }

    /// Total degree `max(i + j)`.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn eval(&self, p: &PointQ2) -> Rational {
        self.terms
            .iter()
            .map(|(&(i, j), c)| &p.x * int(i as i64) + &p.y * int(j as i64) + c)
            .max()
            .expect("nonempty")
    }

    /// Exponents attaining the maximum at `p`.
    pub fn active_terms(&self, p: &PointQ2) -> Vec<Exponent> {
        let best = self.eval(p);
        self.terms
            .iter()
            .filter(|(&(i, j), c)| &p.x * int(i as i64) + &p.y * int(j as i64) + *c == best)
            .map(|(e, _)| *e)
            .collect()
    }

    /// Max-plus convolution `g1 ⊙ g2`.
    pub fn trop_mul(&self, other: &TropicalPolynomial) -> TropicalPolynomial {
        let mut out: BTreeMap<Exponent, Rational> = BTreeMap::new();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                let c = c1 + c2;
                let e = (i1 + i2, j1 + j2);
                match out.get_mut(&e) {
                    Some(old) if *old >= c => {}
                    Some(old) => *old = c,
                    None => {
                        out.insert(e, c);
                    }
                }
            }
        }
        TropicalPolynomial { terms: out }
    }

    pub fn trop_pow(&self, k: u32) -> TropicalPolynomial {
        let mut acc = TropicalPolynomial::constant(int(0));
        for _ in 0..k {
            acc = acc.trop_mul(self);
        }
        acc
    }

    pub fn lifted_points(&self) -> Vec<(IntVec2, Rational)> {
        self.terms.iter().map(|(e, c)| (exponent_vec(*e), c.clone())).collect()
    }

    pub fn lifted_hull(&self) -> LiftedHull {
        upper_hull_lift(&self.lifted_points())
    }

    /// Newton polygon, counter-clockwise (a point or segment when degenerate).
    pub fn newton_polygon(&self) -> Vec<IntVec2> {
        let pts: Vec<IntVec2> = self.terms.keys().map(|e| exponent_vec(*e)).collect();
        convex_hull(&pts)
    }

    /// Equality as functions on the plane.
    pub fn func_equal(&self, other: &TropicalPolynomial) -> bool {
        let poly = self.newton_polygon();
        if sorted(&poly) != sorted(&other.newton_polygon()) {
            return false;
        }
        let (h1, h2) = (self.lifted_hull(), other.lifted_hull());
        lattice_points_in(&poly)
            .into_iter()
            .all(|q| hull_height(&h1, q) == hull_height(&h2, q))
    }

    /// Keeps only the terms whose lift is a vertex of the upper hull, i.e. the
    /// terms that are strictly maximal somewhere. Terms below the hull and
    /// terms in the middle of a hull face are dropped.
    pub fn relevant_support(&self) -> TropicalPolynomial {
        let hull = self.lifted_hull();
        let corners: BTreeSet<IntVec2> = hull.iter().flat_map(|f| f.cell.iter().copied()).collect();
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| corners.contains(&exponent_vec(**e)))
            .map(|(e, c)| (*e, c.clone()))
            .collect();
        TropicalPolynomial { terms }
    }
}

fn sorted(v: &[IntVec2]) -> Vec<IntVec2> {
    let mut v = v.to_vec();
    v.sort();
    v
}

fn monomial(f: &mut fmt::Formatter<'_>, i: u32, j: u32) -> fmt::Result {
    let mut first = true;
    for (var, k) in [("x", i), ("y", j)] {
        if k == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if k == 1 {
            write!(f, "{var}")?;
        } else {
            write!(f, "{var}^{k}")?;
        }
    }
    Ok(())
}

impl fmt::Display for TropicalPolynomial {
    /// Highest degree first; a zero coefficient on a non-constant monomial is omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<&Exponent> = self.terms.keys().collect();
        keys.sort_by_key(|e| std::cmp::Reverse((e.0 + e.1, e.0)));
        for (n, &&(i, j)) in keys.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let c = &self.terms[&(i, j)];
            if i + j == 0 {
                write!(f, "{}", format_rational(c))?;
            } else if *c == int(0) {
                monomial(f, i, j)?;
            } else {
                write!(f, "{}*", format_rational(c))?;
                monomial(f, i, j)?;
            }
        }
        Ok(())
    }
}

impl FromStr for TropicalPolynomial {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse(s)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    i: u32,
    j: u32,
    #[serde(with = "crate::exact::rational::serde_str")]
    c: Rational,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    terms: Vec<TermJson>,
}

impl Serialize for TropicalPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self.terms.iter().map(|(&(i, j), c)| TermJson { i, j, c: c.clone() }).collect();
        PolyJson { terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TropicalPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        TropicalPolynomial::from_terms(raw.terms.into_iter().map(|t| ((t.i, t.j), t.c)))
            .map_err(serde::de::Error::custom)
    }
}
