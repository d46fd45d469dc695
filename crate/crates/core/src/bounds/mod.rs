//! Closed forms, bound formulas and explicit solvable distributions.
//!
//! Every value is an exact rational. Upper bounds carry a solvable
//! distribution as witness where one is constructed; collapsing lower bounds
//! carry the partition used.

mod construct;
mod report;

pub use construct::{
    biggirth_distribution, collapsing_lower_bound, distance_dominating_set, grs_distribution, hrs_distribution,
    ladder_distribution, mindeg_lower_family, mindeg_upper_distribution, prime_segment_check, sierpinski_base_distribution,
    sierpinski_distribution, sierpinski_saving_distribution, tree_two_thirds_distribution, two_thirds_distribution,
    LadderVariant, SierpinskiDistribution, SierpinskiVariant,
};
pub use report::{BoundKind, BoundReport, Param, Quantity, Witness};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use thiserror::Error;

use crate::graph::{FamilySpec, GraphError};
use crate::rational::{integer, ratio};
use crate::solver::SolverError;
use crate::tree::TreeError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("no closed form known for {0}")]
    NoClosedForm(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

fn pre(msg: impl Into<String>) -> BoundsError {
    BoundsError::Precondition(msg.into())
}

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// Exact `π` of paths, cycles and hypercubes, and exact `π_OPT` of paths and
/// cycles.
pub fn closed_form(spec: &FamilySpec, quantity: Quantity) -> Result<BoundReport, BoundsError> {
    let exact = |v: BigInt, formula: &str| BoundReport::new(quantity, BoundKind::Exact, integer(v), formula);
    let none = || BoundsError::NoClosedForm(format!("{spec} ({quantity:?})"));
    match (quantity, spec) {
        (Quantity::Pebbling, &FamilySpec::Path { n }) if n >= 1 => Ok(exact(pow2(n - 1), "2^(n-1)").param("n", n)),
        (Quantity::Pebbling, &FamilySpec::Cycle { n }) if n >= 3 => {
            let k = n / 2;
            Ok(if n % 2 == 0 {
                exact(pow2(k), "2^k, n=2k").param("n", n)
            } else {
                exact(BigInt::from(2) * (pow2(k + 1) / 3) + 1, "2*floor(2^(k+1)/3)+1, n=2k+1").param("n", n)
            })
        }
        (Quantity::Pebbling, &FamilySpec::Hypercube { k }) => Ok(exact(pow2(k), "2^k").param("k", k)),
        (Quantity::OptimalPebbling, &FamilySpec::Path { n }) if n >= 1 => {
            Ok(exact(ceil_div(2 * n, 3).into(), "ceil(2n/3)").param("n", n))
        }
        (Quantity::OptimalPebbling, &FamilySpec::Cycle { n }) if n >= 3 => {
            Ok(exact(ceil_div(2 * n, 3).into(), "ceil(2n/3)").param("n", n))
        }
        _ => Err(none()),
    }
}

/// `c_k(t) = 1 + k Σ_{i=1..t} (k−1)^{i−1}`: the least size of a distance-`t`
/// ball when the minimum degree is `k` and the girth is at least `2t + 1`.
pub fn c_k(k: u64, t: u32) -> BigInt {
    let mut sum = BigInt::from(0);
    let mut p = BigInt::one();
    for _ in 0..t {
        sum += &p;
        p *= k.saturating_sub(1);
    }
    BigInt::one() + BigInt::from(k) * sum
}

/// `c′(t) = (4^t − 2^{t+1}) t/(t−1)` for `t ≥ 2`.
pub fn c_prime(t: u32) -> Result<BigRational, BoundsError> {
    if t < 2 {
        return Err(pre("c'(t) needs t >= 2"));
    }
    let t_us = t as usize;
    let base = pow2(2 * t_us) - pow2(t_us + 1);
    Ok(BigRational::new(base * BigInt::from(t), BigInt::from(t - 1)))
}

/// `π_OPT(G) ≤ 4^t n / c_k(t)` for minimum degree `k` and girth `≥ 2t+1`.
pub fn girth_simple_bound(n: u64, k: u64, t: u32) -> Result<BoundReport, BoundsError> {
    if t < 1 || k < 1 {
        return Err(pre("simple girth bound needs k >= 1 and t >= 1"));
    }
    let c = c_k(k, t);
    let value = BigRational::new(pow2(2 * t as usize) * BigInt::from(n), c.clone());
    Ok(BoundReport::new(Quantity::OptimalPebbling, BoundKind::Upper, value, "4^t n/c_k(t)")
        .param("n", n as i64)
        .param("k", k as i64)
        .param("t", i64::from(t))
        .param("c_k", integer(c)))
}

/// `π_OPT(G) ≤ 4^t n / (c_k(t) + c′(t))` for `k ≥ 3`, `t ≥ 2`, `(k,t) ≠ (3,2)`.
pub fn girth_refined_bound(n: u64, k: u64, t: u32) -> Result<BoundReport, BoundsError> {
    if k < 3 || t < 2 || (k, t) == (3, 2) {
        return Err(pre("refined girth bound needs k >= 3, t >= 2 and (k,t) != (3,2)"));
    }
    let c = c_k(k, t);
    let cp = c_prime(t)?;
    let value = integer(pow2(2 * t as usize) * BigInt::from(n)) / (integer(c.clone()) + &cp);
    Ok(BoundReport::new(Quantity::OptimalPebbling, BoundKind::Upper, value, "4^t n/(c_k(t)+c'(t))")
        .param("n", n as i64)
        .param("k", k as i64)
        .param("t", i64::from(t))
        .param("c_k", integer(c))
        .param("c_prime", cp))
}

/// Both girth bounds; the refined one is `None` where its guard fails.
pub fn girth_bounds(n: u64, k: u64, t: u32) -> Result<(BoundReport, Option<BoundReport>), BoundsError> {
    Ok((girth_simple_bound(n, k, t)?, girth_refined_bound(n, k, t).ok()))
}

/// `π_OPT(Q_k) ≥ (4/3)^k`.
pub fn hypercube_lower_bound(k: u32) -> BoundReport {
    BoundReport::new(Quantity::OptimalPebbling, BoundKind::Lower, Pow::pow(ratio(4, 3), k), "(4/3)^k").param("k", i64::from(k))
}

/// `4r/5 ≤ π_OPT` of the clique chains `G_{r,s}` / `H_{r,s}` (any `s ≥ 2`).
pub fn clique_chain_lower_bound(r: usize) -> BoundReport {
    BoundReport::new(Quantity::OptimalPebbling, BoundKind::Lower, ratio(4 * r as i64, 5), "4r/5").param("r", r)
}

/// `π_OPT ≤ ⌈2n/3⌉` for every connected graph on `n` vertices.
pub fn two_thirds_bound(n: usize) -> BoundReport {
    BoundReport::new(Quantity::OptimalPebbling, BoundKind::Upper, ratio(2 * n as i64, 3).ceil(), "ceil(2n/3)").param("n", n)
}
