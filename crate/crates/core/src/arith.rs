//! Exact univariate integer polynomials and truncated power series.
//!
//! Everything here works over arbitrary-precision integers. The obstruction
//! series of a Veronese ring with codimension in the hundreds has coefficients
//! with well over a hundred decimal digits, so fixed-width arithmetic is not an
//! option.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `binom(n, k)` as a big integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Dense polynomial in `z` with big-integer coefficients.
///
/// The coefficient vector is trimmed so that the last entry is nonzero; the
/// zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `1 + z`
    pub fn one_plus_z() -> Self {
        Self::from_i64s(&[1, 1])
    }

    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    /// The substitution `z -> -z`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact division by `1 + z`; `None` when `-1` is not a root.
    pub fn div_one_plus_z(&self) -> Option<Self> {
        let deg = self.degree()?;
        if deg == 0 {
            return None;
        }
        // p = (1+z) q; synthetic division from the top coefficient down.
        let mut q = vec![BigInt::zero(); deg];
        q[deg - 1] = self.coeffs[deg].clone();
        for k in (1..deg).rev() {
            q[k - 1] = &self.coeffs[k] - &q[k];
        }
        if q[0] != self.coeffs[0] {
            return None;
        }
        Some(Self::new(q))
    }
}

/// Splits `p = (1+z)^a * g` with `g(-1) != 0`.
pub fn factor_out_neg_one(p: &IntPolynomial) -> Result<(u32, IntPolynomial)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut order = 0;
    let mut g = p.clone();
    while let Some(q) = g.div_one_plus_z() {
        g = q;
        order += 1;
    }
    Ok((order, g))
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl From<IntPolynomial> for Vec<String> {
    fn from(p: IntPolynomial) -> Self {
        p.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl TryFrom<Vec<String>> for IntPolynomial {
    type Error = String;

    fn try_from(v: Vec<String>) -> std::result::Result<Self, String> {
        v.iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| e.to_string()))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(IntPolynomial::new)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

/// Prefix `z^0 .. z^N` of a formal power series with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// Pads or truncates `coeffs` to exactly `order + 1` entries.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>, order: usize) -> Self {
        coeffs.resize(order + 1, BigInt::zero());
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    /// Cauchy product truncated at the smaller of the two orders.
    pub fn mul_truncated(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|k| (0..=k).map(|j| &self.coeffs[j] * &other.coeffs[k - j]).sum())
            .collect();
        TruncatedSeries { coeffs }
    }

    /// `1 - self`
    pub fn one_minus(&self) -> TruncatedSeries {
        let mut coeffs: Vec<BigInt> = self.coeffs.iter().map(|c| -c).collect();
        coeffs[0] += 1;
        TruncatedSeries { coeffs }
    }

    pub fn first_negative(&self) -> Option<(usize, &BigInt)> {
        self.coeffs.iter().enumerate().find(|(_, c)| c.is_negative())
    }
}

/// Expands `numerator / (1-z)^c` to order `order`.
///
/// The coefficient of `z^k` is `sum_j numerator_j * binom(c-1+k-j, c-1)`.
/// With `c = 0` this is just the numerator's prefix.
pub fn expand_rational_series(
    numerator: &IntPolynomial,
    denominator_exponent: u64,
    order: usize,
) -> TruncatedSeries {
    let c = denominator_exponent;
    if c == 0 {
        return TruncatedSeries::from_coeffs(numerator.coeffs.clone(), order);
    }
    // binom(c-1+k, c-1) for k = 0..=order, built by the ratio (c-1+k)/k.
    let mut kernel = Vec::with_capacity(order + 1);
    let mut b = BigInt::one();
    kernel.push(b.clone());
    for k in 1..=order as u64 {
        b = b * (c - 1 + k);
        let (q, r) = b.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        b = q;
        kernel.push(b.clone());
    }
    let num = numerator.coefficients();
    let coeffs = (0..=order)
        .map(|k| {
            num.iter()
                .enumerate()
                .take(k + 1)
                .map(|(j, a)| a * &kernel[k - j])
                .sum()
        })
        .collect();
    TruncatedSeries { coeffs }
}
