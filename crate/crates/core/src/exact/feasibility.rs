//! Exact linear feasibility by Fourier–Motzkin elimination.
//!
//! Strict inequalities are carried through elimination as a flag, so systems
//! such as `l1 < l2 < l3 < l4 < l1` are correctly reported infeasible. A
//! witness is recovered by back-substitution when the system is feasible.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::rational::{int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Eq,
    Le,
    Lt,
}

/// `row . x  (=|<=|<)  constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub row: Vec<Rational>,
    pub constant: Rational,
    pub relation: Relation,
}

impl Constraint {
    pub fn new(row: Vec<Rational>, relation: Relation, constant: Rational) -> Self {
        Constraint { row, constant, relation }
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        let lhs: Rational = self.row.iter().zip(x).map(|(a, b)| a * b).sum();
        match self.relation {
            Relation::Eq => lhs == self.constant,
            Relation::Le => lhs <= self.constant,
            Relation::Lt => lhs < self.constant,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearSystem {
    pub num_vars: usize,
    pub constraints: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(num_vars: usize) -> Self {
        LinearSystem { num_vars, constraints: Vec::new() }
    }

    /// Adds `row . x rel constant`; rows shorter than `num_vars` are zero padded.
    pub fn push(&mut self, mut row: Vec<Rational>, relation: Relation, constant: Rational) {
        assert!(row.len() <= self.num_vars, "constraint row longer than the variable count");
        row.resize(self.num_vars, Rational::zero());
        self.constraints.push(Constraint::new(row, relation, constant));
    }

    /// Sparse helper: `sum coeff * x[var] rel constant`.
    pub fn push_sparse(&mut self, terms: &[(usize, Rational)], relation: Relation, constant: Rational) {
        let mut row = vec![Rational::zero(); self.num_vars];
        for (var, c) in terms {
            row[*var] += c;
        }
        self.constraints.push(Constraint::new(row, relation, constant));
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars && self.constraints.iter().all(|c| c.holds(x))
    }
}

/// Outcome of [`feasible`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Feasibility {
    pub feasible: bool,
    pub witness: Option<Vec<Rational>>,
}

/// Inequality `row . x <= constant` (strict when `strict`).
#[derive(Clone, Debug)]
struct Ineq {
    row: Vec<Rational>,
    constant: Rational,
    strict: bool,
}

/// Substitution `x[var] = (constant - sum row[j] x[j]) / 1` recorded from an equality.
struct Substitution {
    var: usize,
    row: Vec<Rational>,
    constant: Rational,
}

/// Decides whether `sys` has a rational solution and returns one if so.
pub fn feasible(sys: &LinearSystem) -> Feasibility {
    let n = sys.num_vars;
    let mut equalities: Vec<(Vec<Rational>, Rational)> = Vec::new();
    let mut ineqs: Vec<Ineq> = Vec::new();
    for c in &sys.constraints {
        match c.relation {
            Relation::Eq => equalities.push((c.row.clone(), c.constant.clone())),
            Relation::Le | Relation::Lt => ineqs.push(Ineq {
                row: c.row.clone(),
                constant: c.constant.clone(),
                strict: c.relation == Relation::Lt,
            }),
        }
    }

    let infeasible = Feasibility { feasible: false, witness: None };

    // Gaussian elimination of equalities.
    let mut subs: Vec<Substitution> = Vec::new();
    while let Some((row, constant)) = equalities.pop() {
        let Some(var) = row.iter().position(|a| !a.is_zero()) else {
            if constant.is_zero() {
                continue;
            }
            return infeasible;
        };
        let pivot = row[var].clone();
        let row: Vec<Rational> = row.iter().map(|a| a / &pivot).collect();
        let constant = constant / &pivot;
        let apply = |r: &mut Vec<Rational>, c: &mut Rational| {
            let k = r[var].clone();
            if k.is_zero() {
                return;
            }
            for (dst, src) in r.iter_mut().zip(&row) {
                *dst -= &k * src;
            }
            *c -= &k * &constant;
        };
        for (r, c) in equalities.iter_mut() {
            apply(r, c);
        }
        for q in ineqs.iter_mut() {
            apply(&mut q.row, &mut q.constant);
        }
        subs.push(Substitution { var, row, constant });
    }

    let mut ineqs = dedupe(ineqs);
    let mut remaining: Vec<usize> = (0..n)
        .filter(|v| !subs.iter().any(|s| s.var == *v))
        .collect();
    let mut stages: Vec<(usize, Vec<Ineq>)> = Vec::new();

    while !remaining.is_empty() {
        // Eliminate the variable producing the fewest new rows.
        let (pick, _) = remaining
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let pos = ineqs.iter().filter(|q| q.row[v].is_positive()).count();
                let neg = ineqs.iter().filter(|q| q.row[v].is_negative()).count();
                (i, pos * neg)
            })
            .min_by_key(|&(_, cost)| cost)
            .unwrap();
        let var = remaining.remove(pick);
        let (involved, mut rest): (Vec<Ineq>, Vec<Ineq>) =
            ineqs.into_iter().partition(|q| !q.row[var].is_zero());
        let uppers: Vec<&Ineq> = involved.iter().filter(|q| q.row[var].is_positive()).collect();
        let lowers: Vec<&Ineq> = involved.iter().filter(|q| q.row[var].is_negative()).collect();
        for up in &uppers {
            let a = up.row[var].clone();
            for lo in &lowers {
                let b = -lo.row[var].clone();
                let row: Vec<Rational> =
                    up.row.iter().zip(&lo.row).map(|(p, q)| p / &a + q / &b).collect();
                let constant = &up.constant / &a + &lo.constant / &b;
                rest.push(Ineq { row, constant, strict: up.strict || lo.strict });
            }
        }
        stages.push((var, involved));
        ineqs = dedupe(rest);
        if ineqs.iter().any(is_contradiction) {
            return infeasible;
        }
    }
    if ineqs.iter().any(is_contradiction) {
        return infeasible;
    }

    let mut x = vec![Rational::zero(); n];
    for (var, bounds) in stages.iter().rev() {
        x[*var] = pick_value(*var, bounds, &x);
    }
    for s in subs.iter().rev() {
        let rest: Rational = s
            .row
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != s.var)
            .map(|(j, a)| a * &x[j])
            .sum();
        x[s.var] = &s.constant - rest;
    }
    debug_assert!(sys.satisfied_by(&x), "Fourier-Motzkin witness violates the system");
    Feasibility { feasible: true, witness: Some(x) }
}

fn is_contradiction(q: &Ineq) -> bool {
    q.row.iter().all(|a| a.is_zero())
        && (q.constant.is_negative() || (q.strict && q.constant.is_zero()))
}

/// Normalizes rows (first nonzero coefficient of magnitude one), drops
/// trivially satisfied rows and keeps only the tightest of parallel rows.
fn dedupe(ineqs: Vec<Ineq>) -> Vec<Ineq> {
    let mut tightest: BTreeMap<Vec<Rational>, (Rational, bool)> = BTreeMap::new();
    let mut trivial_violations = Vec::new();
    for q in ineqs {
        let Some(lead) = q.row.iter().find(|a| !a.is_zero()).map(|a| a.abs()) else {
            if is_contradiction(&q) {
                trivial_violations.push(q);
            }
            continue;
        };
        let row: Vec<Rational> = q.row.iter().map(|a| a / &lead).collect();
        let constant = &q.constant / &lead;
        tightest
            .entry(row)
            .and_modify(|(c, s)| {
                if constant < *c {
                    *c = constant.clone();
                    *s = q.strict;
                } else if constant == *c {
                    *s = *s || q.strict;
                }
            })
            .or_insert((constant.clone(), q.strict));
    }
    let mut out: Vec<Ineq> = trivial_violations;
    out.extend(
        tightest
            .into_iter()
            .map(|(row, (constant, strict))| Ineq { row, constant, strict }),
    );
    out
}

/// Chooses a value for `var` inside the interval cut out by `bounds`, given
/// the already assigned later variables in `x`.
fn pick_value(var: usize, bounds: &[Ineq], x: &[Rational]) -> Rational {
    let mut lo: Option<(Rational, bool)> = None;
    let mut hi: Option<(Rational, bool)> = None;
    for q in bounds {
        let a = &q.row[var];
        let rest: Rational = q
            .row
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != var)
            .map(|(j, c)| c * &x[j])
            .sum();
        let bound = (&q.constant - rest) / a;
        if a.is_positive() {
            hi = Some(match hi {
                Some((h, s)) if h < bound || (h == bound && s) => (h, s),
                Some((h, s)) if h == bound => (h, s || q.strict),
                _ => (bound, q.strict),
            });
        } else {
            lo = Some(match lo {
                Some((l, s)) if l > bound || (l == bound && s) => (l, s),
                Some((l, s)) if l == bound => (l, s || q.strict),
                _ => (bound, q.strict),
            });
        }
    }
    match (lo, hi) {
        (None, None) => Rational::zero(),
        (Some((l, strict)), None) => if strict { l + Rational::one() } else { l },
        (None, Some((h, strict))) => if strict { h - Rational::one() } else { h },
        (Some((l, _)), Some((h, _))) if l == h => l,
        (Some((l, _)), Some((h, _))) => (l + h) / int(2),
    }
}
