//! h-polynomials and numerical invariants of graded algebras.

use num_bigint::BigInt;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, expand_rational_series, IntPolynomial};
use crate::error::{Error, Result};

/// Hilbert-series data of a standard graded algebra `R` with
/// `H_R(z) = h(z) / (1-z)^dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AlgebraNumerics {
    pub label: String,
    pub h_poly: IntPolynomial,
    pub dim: u64,
    pub embdim: u64,
    #[serde(with = "bigint_string")]
    pub multiplicity: BigInt,
    pub is_complete_intersection: Option<bool>,
}

pub(crate) mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl AlgebraNumerics {
    /// A user-supplied algebra. The multiplicity is derived as `h(1)`.
    pub fn from_parts(
        label: impl Into<String>,
        h_poly: IntPolynomial,
        dim: u64,
        embdim: u64,
        is_complete_intersection: Option<bool>,
    ) -> Result<Self> {
        if h_poly.coeff(0) != BigInt::one() {
            return Err(Error::InvalidInput(format!(
                "h-polynomial must have constant term 1, got {h_poly}"
            )));
        }
        if embdim < dim {
            return Err(Error::InvalidInput(format!(
                "embedding dimension {embdim} is smaller than the dimension {dim}"
            )));
        }
        let multiplicity = h_poly.eval_i64(1);
        Ok(AlgebraNumerics {
            label: label.into(),
            h_poly,
            dim,
            embdim,
            multiplicity,
            is_complete_intersection,
        })
    }

    pub fn codim(&self) -> u64 {
        self.embdim - self.dim
    }

    /// `HF(R, i)`: coefficient of `z^i` in `h(z)/(1-z)^dim`.
    pub fn hilbert_function_value(&self, i: usize) -> BigInt {
        expand_rational_series(&self.h_poly, self.dim, i)
            .coeff(i)
            .clone()
    }
}

/// Numerics of the `c`-th Veronese subring of `k[x_1..x_n]`.
///
/// The h-vector is computed by the alternating sum
/// `h_i = sum_j (-1)^(i-j) binom(n-1+jc, n-1) binom(n, i-j)` and then checked
/// against the Hilbert function `binom(n-1+ic, n-1)` by series expansion.
pub fn veronese_numerics(n: u64, c: u64) -> Result<AlgebraNumerics> {
    if n == 0 || c < 2 {
        return Err(Error::InvalidRange(format!(
            "Veronese parameters need n >= 1 and c >= 2, got ({n}, {c})"
        )));
    }
    let hf = |i: u64| binomial(n - 1 + i * c, n - 1);
    let coeffs: Vec<BigInt> = (0..n)
        .map(|i| {
            (0..=i)
                .map(|j| {
                    let term = hf(j) * binomial(n, i - j);
                    if (i - j) % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect();
    let h_poly = IntPolynomial::new(coeffs);

    let check_to = (n + 5) as usize;
    let series = expand_rational_series(&h_poly, n, check_to);
    for i in 0..=check_to {
        if series.coeff(i) != &hf(i as u64) {
            return Err(Error::CrossCheck(format!(
                "Veronese ({n},{c}): h-polynomial disagrees with HF at degree {i}"
            )));
        }
    }

    let embdim = binomial(n + c - 1, c);
    let embdim = u64::try_from(&embdim).map_err(|_| {
        Error::InvalidRange(format!("embedding dimension of ({n},{c}) overflows u64"))
    })?;
    let multiplicity = BigInt::from(c).pow(n as u32 - 1);
    if h_poly.eval_i64(1) != multiplicity {
        return Err(Error::CrossCheck(format!(
            "Veronese ({n},{c}): h(1) differs from c^(n-1)"
        )));
    }
    Ok(AlgebraNumerics {
        label: format!("veronese({n},{c})"),
        h_poly,
        dim: n,
        embdim,
        multiplicity,
        // k[x]^(c) is a polynomial ring and (2,2) is the quadric cone; every
        // other Veronese ring has codimension >= 2 and is not a complete
        // intersection.
        is_complete_intersection: Some(embdim - n <= 1),
    })
}

/// Numerics of the Segre product of `k[x_1..x_m]` and `k[y_1..y_n]`, `m <= n`.
pub fn segre_numerics(m: u64, n: u64) -> Result<AlgebraNumerics> {
    if m == 0 || m > n {
        return Err(Error::InvalidRange(format!(
            "Segre parameters need 1 <= m <= n, got ({m}, {n})"
        )));
    }
    let h_poly = IntPolynomial::new(
        (0..m)
            .map(|i| binomial(m - 1, i) * binomial(n - 1, i))
            .collect(),
    );
    let dim = m + n - 1;
    let check_to = (dim + 5) as usize;
    let series = expand_rational_series(&h_poly, dim, check_to);
    for i in 0..=check_to as u64 {
        let expected = binomial(m - 1 + i, m - 1) * binomial(n - 1 + i, n - 1);
        if series.coeff(i as usize) != &expected {
            return Err(Error::CrossCheck(format!(
                "Segre ({m},{n}): h-polynomial disagrees with HF at degree {i}"
            )));
        }
    }
    let embdim = m * n;
    Ok(AlgebraNumerics {
        label: format!("segre({m},{n})"),
        multiplicity: binomial(m + n - 2, m - 1),
        h_poly,
        dim,
        embdim,
        is_complete_intersection: Some(embdim - dim <= 1),
    })
}

/// Numerics of `A (x)_k B`.
pub fn tensor_numerics(a: &AlgebraNumerics, b: &AlgebraNumerics) -> AlgebraNumerics {
    let is_complete_intersection = match (a.is_complete_intersection, b.is_complete_intersection)
    {
        (Some(x), Some(y)) => Some(x && y),
        _ => None,
    };
    AlgebraNumerics {
        label: format!("{} (x) {}", a.label, b.label),
        h_poly: &a.h_poly * &b.h_poly,
        dim: a.dim + b.dim,
        embdim: a.embdim + b.embdim,
        multiplicity: &a.multiplicity * &b.multiplicity,
        is_complete_intersection,
    }
}
