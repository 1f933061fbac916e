//! p-adic valuation, absolute value and metric on the rationals.
//!
//! Everything here is exact; no floating point is involved.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::rational::Rational;

/// A fixed prime `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PAdicContext {
    p: u64,
    #[serde(skip)]
    p_big: BigInt,
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `v_p(x)`: an integer, or infinity for `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinity) => Ordering::Less,
            (Valuation::Infinity, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

/// Result of testing `d_p(x, z) ≤ max(d_p(x, y), d_p(y, z))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UltrametricCheck {
    pub lhs: Rational,
    pub strong_rhs: Rational,
    pub holds: bool,
}

impl PAdicContext {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Parameter(format!("{p} is not a prime")));
        }
        Ok(PAdicContext {
            p,
            p_big: BigInt::from(p),
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Number of times `p` divides the nonzero integer `n`.
    fn integer_valuation(&self, n: &BigInt) -> i64 {
        debug_assert!(!n.is_zero());
        let mut count = 0;
        let mut m = n.clone();
        loop {
            let (q, r) = m.div_rem(&self.p_big);
            if !r.is_zero() {
                return count;
            }
            m = q;
            count += 1;
        }
    }

    pub fn valuation(&self, x: &Rational) -> Valuation {
        if x.is_zero() {
            return Valuation::Infinity;
        }
        Valuation::Finite(self.integer_valuation(x.numer()) - self.integer_valuation(x.denom()))
    }

    /// `p^(-j)` as an exact rational.
    pub fn power(&self, j: i64) -> Rational {
        let e = u32::try_from(j.unsigned_abs()).expect("valuation exponent fits in u32");
        let pj = num_traits::pow::Pow::pow(&self.p_big, e);
        if j >= 0 {
            Rational::new(BigInt::one(), pj).expect("p^j is nonzero")
        } else {
            Rational::from_integer(pj)
        }
    }

    /// `|x|_p`: `p^(-v_p(x))`, or 0 for `x = 0`.
    pub fn abs(&self, x: &Rational) -> Rational {
        match self.valuation(x) {
            Valuation::Infinity => Rational::zero(),
            Valuation::Finite(j) => self.power(j),
        }
    }

    pub fn distance(&self, x: &Rational, y: &Rational) -> Rational {
        self.abs(&(x - y))
    }

    pub fn ultrametric_defect(&self, x: &Rational, y: &Rational, z: &Rational) -> UltrametricCheck {
        let lhs = self.distance(x, z);
        let strong_rhs = self.distance(x, y).max(self.distance(y, z));
        let holds = lhs <= strong_rhs;
        UltrametricCheck {
            lhs,
            strong_rhs,
            holds,
        }
    }

    /// Whether `|xy|_p = |x|_p·|y|_p` holds exactly.
    pub fn abs_multiplicativity_check(&self, x: &Rational, y: &Rational) -> bool {
        self.abs(&(x * y)) == self.abs(x) * self.abs(y)
    }
}

pub fn p_adic_valuation(x: &Rational, ctx: &PAdicContext) -> Valuation {
    ctx.valuation(x)
}

pub fn p_adic_abs(x: &Rational, ctx: &PAdicContext) -> Rational {
    ctx.abs(x)
}

pub fn p_adic_distance(x: &Rational, y: &Rational, ctx: &PAdicContext) -> Rational {
    ctx.distance(x, y)
}

pub fn ultrametric_defect(
    x: &Rational,
    y: &Rational,
    z: &Rational,
    ctx: &PAdicContext,
) -> UltrametricCheck {
    ctx.ultrametric_defect(x, y, z)
}

pub fn abs_multiplicativity_check(x: &Rational, y: &Rational, ctx: &PAdicContext) -> bool {
    ctx.abs_multiplicativity_check(x, y)
}

impl Metric for PAdicContext {
    type Point = Rational;
    type Value = Rational;

    fn name(&self) -> String {
        format!("padic({})", self.p)
    }

    fn distance(&self, x: &Rational, y: &Rational) -> Result<Rational> {
        Ok(PAdicContext::distance(self, x, y))
    }
}
