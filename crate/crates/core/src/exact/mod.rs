//! Exact arithmetic and geometric kernels: rationals, lattice vectors, lifted
//! upper hulls, Fourier–Motzkin feasibility and the infinitesimal field used
//! for perturbation limits.

pub mod eps;
pub mod feasibility;
pub mod hull;
pub mod lattice;
pub mod rational;

use std::fmt::Debug;

use num_traits::Zero;
use thiserror::Error;

pub use eps::{eps_sign, EpsPoly, EpsScalar};
pub use feasibility::{feasible, Constraint, Feasibility, LinearSystem, Relation};
pub use hull::{hull_height, upper_hull_lift, Affine, UpperFace};
pub use lattice::{det2, primitive_decompose, rational_direction, IntVec2, PointQ2};
pub use rational::{format_rational, int, parse_rational, rat, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("zero direction")]
    ZeroDirection,
    #[error("integer overflow")]
    Overflow,
}

/// Ordered field interface shared by [`Rational`] and [`EpsScalar`], so the
/// intersection kernels run unchanged on perturbed inputs.
pub trait OrderedField: Clone + Ord + Debug {
    fn from_rational(r: &Rational) -> Self;
    fn from_int(n: i64) -> Self {
        Self::from_rational(&int(n))
    }
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn over(&self, o: &Self) -> Self;
    fn signum(&self) -> i8;
    fn is_zero_value(&self) -> bool {
        self.signum() == 0
    }
}

impl OrderedField for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn over(&self, o: &Self) -> Self {
        self / o
    }
    fn signum(&self) -> i8 {
        rational::sign(self)
    }
}

impl OrderedField for EpsScalar {
    fn from_rational(r: &Rational) -> Self {
        EpsScalar::from_rational(r.clone())
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn over(&self, o: &Self) -> Self {
        self.div(o)
    }
    fn signum(&self) -> i8 {
        self.sign()
    }
}

pub(crate) fn zero() -> Rational {
    Rational::zero()
}
