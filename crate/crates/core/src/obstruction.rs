//! Hilbert-series obstructions to the Backelin-Roos property.
//!
//! For a Koszul algebra `R` of codimension `c` with the Backelin-Roos
//! property, the series `1 - h_R(-z)/(1-z)^c` has non-negative coefficients.
//! Writing `h_R(z) = g(z)(1+z)^a` with `g(-1) != 0`, the coefficients are
//! eventually a polynomial in the index of degree `c-a-1` whose leading
//! coefficient is `-g(-1)/(c-a-1)!`, so the sign of `g(-1)` decides the tail.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{expand_rational_series, factor_out_neg_one, IntPolynomial, TruncatedSeries};
use crate::error::{Error, Result};
use crate::hilbert::{bigint_string, segre_numerics, veronese_numerics, AlgebraNumerics};

/// Outcome of the finite coefficient scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum ScanVerdict {
    /// Every coefficient up to `order` is non-negative.
    PassUpTo { order: usize },
    /// First strictly negative coefficient.
    FailAt {
        index: usize,
        #[serde(with = "bigint_string")]
        coefficient: BigInt,
    },
}

/// Sign of the obstruction series far out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Asymptotic {
    EventuallyNegative,
    EventuallyNonnegative,
    /// `a >= c`: the series is a polynomial, so the scan alone is decisive.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ObstructionReport {
    pub label: String,
    pub codim_used: u64,
    pub scan_order: usize,
    pub verdict: ScanVerdict,
    pub vanish_order: u32,
    #[serde(with = "bigint_string")]
    pub g_at_minus_one: BigInt,
    pub asymptotic_verdict: Asymptotic,
    pub multiplicity_bound_ok: bool,
    /// The whole infinite series is proven non-negative: every scanned
    /// coefficient is, and an explicit bound covers all larger indices.
    pub tail_verified: bool,
    /// Index from which the tail bound guarantees non-negativity, if found.
    pub tail_bound: Option<usize>,
}

impl ObstructionReport {
    pub fn first_negative_index(&self) -> Option<usize> {
        match self.verdict {
            ScanVerdict::FailAt { index, .. } => Some(index),
            ScanVerdict::PassUpTo { .. } => None,
        }
    }
}

/// Default scan order: `max(200, 2 * codim)`.
pub fn default_scan_order(codim: u64) -> usize {
    200usize.max(2 * codim as usize)
}

/// The prefix of `1 - h(-z)/(1-z)^c` up to `z^order`.
pub fn obstruction_series(a: &AlgebraNumerics, order: usize) -> TruncatedSeries {
    expand_rational_series(&a.h_poly.reflect(), a.codim(), order).one_minus()
}

/// Runs the coefficient scan and the `g(-1)` sign test.
pub fn br_obstruction(a: &AlgebraNumerics, order: usize) -> Result<ObstructionReport> {
    let c = a.codim();
    if c == 0 {
        return Err(Error::CodimZero);
    }
    if order < 2 {
        return Err(Error::InvalidRange(format!(
            "scan order must be at least 2, got {order}"
        )));
    }
    let series = obstruction_series(a, order);
    let verdict = match series.first_negative() {
        Some((index, v)) => ScanVerdict::FailAt {
            index,
            coefficient: v.clone(),
        },
        None => ScanVerdict::PassUpTo { order },
    };
    let (vanish, g) = factor_out_neg_one(&a.h_poly)?;
    let g_at_minus_one = g.eval_i64(-1);

    let (asymptotic, tail_bound) = if u64::from(vanish) < c {
        if g_at_minus_one.is_positive() {
            (Asymptotic::EventuallyNegative, None)
        } else {
            let d = c - u64::from(vanish);
            (Asymptotic::EventuallyNonnegative, Some(tail_start(&g, d)))
        }
    } else {
        // 1 - g(-z)(1-z)^(a-c) is a polynomial of degree <= deg h.
        (Asymptotic::Inconclusive, Some(a.h_poly.degree().unwrap_or(0) + 1))
    };
    let passed = matches!(verdict, ScanVerdict::PassUpTo { .. });
    let tail_verified = passed && tail_bound.is_some_and(|k| k <= order + 1);

    Ok(ObstructionReport {
        label: a.label.clone(),
        codim_used: c,
        scan_order: order,
        verdict,
        vanish_order: vanish,
        g_at_minus_one,
        asymptotic_verdict: asymptotic,
        multiplicity_bound_ok: ci_multiplicity_check(a),
        tail_verified,
        tail_bound,
    })
}

/// Smallest `K` from which the coefficients of `1 - g(-z)/(1-z)^d` are
/// provably non-negative, assuming `g(-1) < 0` and `d >= 1`.
///
/// For `k >= deg g` the coefficient equals
/// `binom(d-1+k, d-1) * sum_j c_j r_j(k)` with `c_j = -(-1)^j g_j` and
/// `r_j(k) = prod_{i<j} (k-i)/(k+d-1-i)`. Each `r_j` lies in `[0,1]` and is
/// nondecreasing in `k`, so `B(K) = sum_{c_j>0} c_j r_j(K) + sum_{c_j<0} c_j`
/// is a lower bound for the bracket at every `k >= K`, and `B` increases to
/// `sum_j c_j = -g(-1) > 0`.
fn tail_start(g: &IntPolynomial, d: u64) -> usize {
    let weights: Vec<BigInt> = g
        .coefficients()
        .iter()
        .enumerate()
        .map(|(j, gj)| if j % 2 == 0 { -gj } else { gj.clone() })
        .collect();
    let lower = |k: u64| -> BigRational {
        let mut total = BigRational::zero();
        let mut ratio = BigRational::one();
        for (j, w) in weights.iter().enumerate() {
            if j > 0 {
                let i = (j - 1) as u64;
                ratio *= BigRational::new(BigInt::from(k - i), BigInt::from(k + d - 1 - i));
            }
            if w.is_positive() {
                total += &ratio * BigRational::from_integer(w.clone());
            } else {
                total += BigRational::from_integer(w.clone());
            }
        }
        total
    };
    let start = (g.degree().unwrap_or(0) as u64).max(1);
    if !lower(start).is_negative() {
        return start as usize;
    }
    let mut hi = start.max(2);
    while lower(hi).is_negative() {
        hi *= 2;
    }
    let mut lo = (hi / 2).max(start); // lower(lo) < 0
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if lower(mid).is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi as usize
}

/// `e(R) <= 2^c`, strict when `R` is known not to be a complete intersection.
pub fn ci_multiplicity_check(a: &AlgebraNumerics) -> bool {
    let bound = BigInt::from(2).pow(a.codim() as u32);
    match a.is_complete_intersection {
        Some(false) => a.multiplicity < bound,
        _ => a.multiplicity <= bound,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Family {
    Veronese,
    Segre,
}

/// Obstruction reports for every parameter pair, in lexicographic order.
///
/// Segre pairs with `m > n` are skipped since `S_{m,n} = S_{n,m}`.
/// `order = None` uses [`default_scan_order`] per algebra.
pub fn family_scan(
    family: Family,
    first: RangeInclusive<u64>,
    second: RangeInclusive<u64>,
    order: Option<usize>,
) -> Result<Vec<ObstructionReport>> {
    let params: Vec<(u64, u64)> = first
        .flat_map(|p| second.clone().map(move |q| (p, q)))
        .filter(|&(p, q)| family == Family::Veronese || p <= q)
        .collect();
    params
        .into_par_iter()
        .map(|(p, q)| {
            let numerics = match family {
                Family::Veronese => veronese_numerics(p, q)?,
                Family::Segre => segre_numerics(p, q)?,
            };
            let n = order.unwrap_or_else(|| default_scan_order(numerics.codim()));
            br_obstruction(&numerics, n)
        })
        .collect()
}
