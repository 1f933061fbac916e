//! Geometric series and partial-sum convergence, in the standard and p-adic
//! metrics on the rationals. All arithmetic is exact.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::PAdicContext;
use crate::rational::Rational;

/// Which metric on Q measures convergence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SeriesMetric {
    Standard,
    PAdic(PAdicContext),
}

impl SeriesMetric {
    pub fn abs(&self, x: &Rational) -> Rational {
        match self {
            SeriesMetric::Standard => x.abs(),
            SeriesMetric::PAdic(ctx) => ctx.abs(x),
        }
    }

    pub fn distance(&self, x: &Rational, y: &Rational) -> Rational {
        self.abs(&(x - y))
    }

    pub fn label(&self) -> String {
        match self {
            SeriesMetric::Standard => "standard".into(),
            SeriesMetric::PAdic(ctx) => format!("padic({})", ctx.prime()),
        }
    }
}

/// `Σ_{j=0}^{n} x^j`, summed term by term with `x^0 = 1` (also for `x = 0`).
pub fn geometric_partial_sum(x: &Rational, n: u32) -> Rational {
    let mut sum = Rational::zero();
    let mut term = Rational::one();
    for _ in 0..=n {
        sum = sum + &term;
        term = term * x;
    }
    sum
}

/// `(1 − x)·S_n − (1 − x^(n+1))`, always exactly zero.
pub fn geometric_identity_residual(x: &Rational, n: u32) -> Rational {
    let one = Rational::one();
    let sum = geometric_partial_sum(x, n);
    (&one - x) * sum - (&one - &x.pow(exponent(n)))
}

fn exponent(n: u32) -> i32 {
    i32::try_from(n).expect("series length fits in i32") + 1
}

fn check_convergent(x: &Rational, metric: &SeriesMetric) -> Result<()> {
    if metric.abs(x) >= Rational::one() {
        let what = match metric {
            SeriesMetric::Standard => format!("|{x}| >= 1"),
            SeriesMetric::PAdic(ctx) => format!("|{x}|_{} >= 1", ctx.prime()),
        };
        return Err(Error::Divergence(what));
    }
    Ok(())
}

/// `1/(1 − x)`, the limit of the geometric series when it converges.
pub fn geometric_limit(x: &Rational, metric: &SeriesMetric) -> Result<Rational> {
    check_convergent(x, metric)?;
    (Rational::one() - x).recip()
}

/// `d(S_n, 1/(1 − x))` via the closed form `|x^(n+1) / (1 − x)|`.
pub fn limit_error(x: &Rational, n: u32, metric: &SeriesMetric) -> Result<Rational> {
    check_convergent(x, metric)?;
    let tail = x.pow(exponent(n)) / (Rational::one() - x);
    Ok(metric.abs(&tail))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartialSumTrace {
    pub x: Rational,
    pub terms: u32,
    pub metric: SeriesMetric,
    pub limit: Rational,
    /// `S_0, …, S_n`
    pub partial_sums: Vec<Rational>,
    /// `d(S_k, limit)` for each `k`, measured directly.
    pub distance_to_limit: Vec<Rational>,
}

pub fn partial_sum_trace(x: &Rational, n: u32, metric: &SeriesMetric) -> Result<PartialSumTrace> {
    let limit = geometric_limit(x, metric)?;
    let mut partial_sums = Vec::with_capacity(n as usize + 1);
    let mut sum = Rational::zero();
    let mut term = Rational::one();
    for _ in 0..=n {
        sum = sum + &term;
        term = term * x;
        partial_sums.push(sum.clone());
    }
    let distance_to_limit = partial_sums
        .iter()
        .map(|s| metric.distance(s, &limit))
        .collect();
    Ok(PartialSumTrace {
        x: x.clone(),
        terms: n,
        metric: metric.clone(),
        limit,
        partial_sums,
        distance_to_limit,
    })
}

/// Outcome of [`cauchy_window_check`]. `first_violation` holds the first
/// pair `(i, j)`, `i < j`, in lexicographic order with `d(S_i, S_j) ≥ ε`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CauchyWindow {
    pub holds: bool,
    pub window_start: usize,
    pub first_violation: Option<(usize, usize, Rational)>,
}

/// Finite-window stand-in for the Cauchy criterion.
///
/// Forms the partial sums `S_k = a_0 + … + a_k` of the given terms and checks
/// `d(S_i, S_j) < ε` for all `i, j` in the upper half `⌈len/2⌉ ≤ i, j < len`.
/// A finite prefix can never decide convergence; this only says whether the
/// tail of the prefix looks Cauchy at scale `ε`.
pub fn cauchy_window_check(
    terms: &[Rational],
    metric: &SeriesMetric,
    epsilon: &Rational,
) -> Result<CauchyWindow> {
    if terms.is_empty() {
        return Err(Error::Input("the term list is empty".into()));
    }
    if *epsilon <= Rational::zero() {
        return Err(Error::Parameter(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let mut sums = Vec::with_capacity(terms.len());
    let mut acc = Rational::zero();
    for a in terms {
        acc = acc + a;
        sums.push(acc.clone());
    }
    let start = terms.len().div_ceil(2);
    let window = &sums[start..];

    let first = match metric {
        SeriesMetric::Standard => first_standard_violation(window, epsilon),
        SeriesMetric::PAdic(_) => first_pairwise_violation(window, metric, epsilon),
    };
    let first_violation = first.map(|(i, j)| {
        let d = metric.distance(&window[i], &window[j]);
        (i + start, j + start, d)
    });
    Ok(CauchyWindow {
        holds: first_violation.is_none(),
        window_start: start,
        first_violation,
    })
}

fn first_pairwise_violation(
    window: &[Rational],
    metric: &SeriesMetric,
    epsilon: &Rational,
) -> Option<(usize, usize)> {
    for i in 0..window.len() {
        for j in i + 1..window.len() {
            if metric.distance(&window[i], &window[j]) >= *epsilon {
                return Some((i, j));
            }
        }
    }
    None
}

/// Same answer as the pairwise scan, using suffix extrema so that only the
/// offending row is scanned in full.
fn first_standard_violation(window: &[Rational], epsilon: &Rational) -> Option<(usize, usize)> {
    let n = window.len();
    if n < 2 {
        return None;
    }
    // suffix_max[k], suffix_min[k]: extreme values among window[k..]
    let mut suffix_max = vec![0usize; n];
    let mut suffix_min = vec![0usize; n];
    suffix_max[n - 1] = n - 1;
    suffix_min[n - 1] = n - 1;
    for k in (0..n - 1).rev() {
        suffix_max[k] = if window[k] > window[suffix_max[k + 1]] {
            k
        } else {
            suffix_max[k + 1]
        };
        suffix_min[k] = if window[k] < window[suffix_min[k + 1]] {
            k
        } else {
            suffix_min[k + 1]
        };
    }
    for i in 0..n - 1 {
        let hi = &window[suffix_max[i + 1]];
        let lo = &window[suffix_min[i + 1]];
        if hi - &window[i] >= *epsilon || &window[i] - lo >= *epsilon {
            let j = (i + 1..n).find(|&j| (&window[j] - &window[i]).abs() >= *epsilon)?;
            return Some((i, j));
        }
    }
    None
}
