//! Monomial ideals: minimal generators, colon ideals, polarization, fibre
//! products, Froberg chordality, linear quotients, complete-intersection plus
//! 2-linear certificates and the universally-Koszul recognizer.

mod certificate;
mod graph;
mod uk;

pub use certificate::{
    ci_plus_two_linear, ci_plus_two_linear_with_cap, has_two_linear_resolution,
    linear_quotients_order, BrCertificate, LinearityWitness, DEFAULT_SEARCH_CAP,
};
pub use graph::{is_chordal, nonedge_graph, Chordality, VarGraph};
pub use uk::{uk_recognize, UkDerivation};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector over an ambient list of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    /// `x_i * x_j` (a square when `i == j`).
    pub fn product_of(nvars: usize, i: usize, j: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] += 1;
        e[j] += 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other
            .divides(self)
            .then(|| Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// Extends the exponent vector with zeros to `nvars` variables.
    pub fn padded(&self, nvars: usize) -> Monomial {
        let mut e = self.0.clone();
        e.resize(nvars, 0);
        Monomial(e)
    }

    /// Renders as `x1^2*x3`, with `1` for the unit monomial.
    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// All monomials of degree `d` in `nvars` variables, in descending
    /// lexicographic order of exponent vectors.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(0, d, &mut vec![0; nvars], &mut out);
        out
    }
}

/// A monomial ideal given by its minimal generators.
///
/// Generators keep their input order after non-minimal and duplicate entries
/// are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialIdeal {
    variables: Vec<String>,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(variables: Vec<String>, gens: impl IntoIterator<Item = Monomial>) -> Self {
        let gens: Vec<Monomial> = gens.into_iter().collect();
        for g in &gens {
            assert_eq!(g.nvars(), variables.len(), "monomial arity mismatch");
        }
        let mut kept: Vec<Monomial> = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            let dominated = gens.iter().enumerate().any(|(j, h)| {
                // strictly smaller divisor, or an equal copy seen earlier
                h.divides(g) && (h != g || j < i)
            });
            if !dominated {
                kept.push(g.clone());
            }
        }
        MonomialIdeal {
            variables,
            generators: kept,
        }
    }

    pub fn zero(variables: Vec<String>) -> Self {
        MonomialIdeal {
            variables,
            generators: Vec::new(),
        }
    }

    /// Builds an ideal from generator strings like `"x1^2*x3"`.
    pub fn parse(variables: &[&str], gens: &[&str]) -> Result<Self> {
        let names: Vec<String> = variables.iter().map(|s| s.to_string()).collect();
        let monomials = gens
            .iter()
            .map(|g| parse_monomial(&names, g))
            .collect::<Result<Vec<_>>>()?;
        Ok(MonomialIdeal::new(names, monomials))
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_quadratic(&self) -> bool {
        self.generators.iter().all(|g| g.degree() == 2)
    }

    pub fn is_squarefree(&self) -> bool {
        self.generators.iter().all(Monomial::is_squarefree)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn render_generator(&self, g: &Monomial) -> String {
        g.render(&self.variables)
    }

    pub fn rendered_generators(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.render(&self.variables)).collect()
    }

    /// Same ideal up to generator order.
    pub fn same_ideal(&self, other: &MonomialIdeal) -> bool {
        if self.variables != other.variables {
            return false;
        }
        let mut a = self.generators.clone();
        let mut b = other.generators.clone();
        a.sort();
        b.sort();
        a == b
    }

    pub(crate) fn require_quadratic(&self) -> Result<()> {
        match self.generators.iter().find(|g| g.degree() != 2) {
            Some(g) => Err(Error::NotQuadratic(self.render_generator(g))),
            None => Ok(()),
        }
    }

    /// Restriction to the generators supported on `vars` (indices into the
    /// current variable list), re-indexed onto those variables.
    pub(crate) fn restrict(&self, vars: &[usize]) -> MonomialIdeal {
        let names = vars.iter().map(|&i| self.variables[i].clone()).collect();
        let gens = self
            .generators
            .iter()
            .filter(|g| g.support().all(|i| vars.contains(&i)))
            .map(|g| Monomial(vars.iter().map(|&i| g.0[i]).collect()))
            .collect::<Vec<_>>();
        MonomialIdeal::new(names, gens)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.rendered_generators().join(", "))
    }
}

pub(crate) fn parse_monomial(names: &[String], text: &str) -> Result<Monomial> {
    let mut exps = vec![0u32; names.len()];
    let text = text.trim();
    if text == "1" {
        return Ok(Monomial(exps));
    }
    for factor in text.split('*') {
        let factor = factor.trim();
        let (name, e) = match factor.split_once('^') {
            Some((n, e)) => (
                n.trim(),
                e.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidInput(format!("bad exponent in `{factor}`")))?,
            ),
            None => (factor, 1),
        };
        let i = names
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown variable `{name}`")))?;
        exps[i] += e;
    }
    Ok(Monomial(exps))
}

/// Drops every monomial divisible by another one in the set.
pub fn minimal_generators(variables: Vec<String>, gens: Vec<Monomial>) -> MonomialIdeal {
    MonomialIdeal::new(variables, gens)
}

/// `(a_1..a_t) : m = (a_i / gcd(a_i, m))`.
pub fn monomial_colon(ideal: &MonomialIdeal, m: &Monomial) -> MonomialIdeal {
    let gens = ideal
        .generators
        .iter()
        .map(|a| a.div(&a.gcd(m)).expect("gcd divides"))
        .collect::<Vec<_>>();
    MonomialIdeal::new(ideal.variables.clone(), gens)
}

/// Monomials form a regular sequence iff they are pairwise coprime.
pub fn is_monomial_regular_sequence(gens: &[Monomial]) -> bool {
    gens.iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)))
}

/// Replaces each square `x^2` by `x * x_bar` with a fresh variable `x_bar`.
pub fn polarize(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    ideal.require_quadratic()?;
    let n = ideal.nvars();
    let squared: Vec<usize> = (0..n)
        .filter(|&i| ideal.generators.iter().any(|g| g.0[i] == 2))
        .collect();
    let mut names = ideal.variables.clone();
    for &i in &squared {
        let mut fresh = format!("{}_bar", ideal.variables[i]);
        while names.contains(&fresh) {
            fresh.push('_');
        }
        names.push(fresh);
    }
    let total = names.len();
    let gens = ideal
        .generators
        .iter()
        .map(|g| {
            let mut m = g.padded(total);
            if let Some(i) = g.0.iter().position(|&e| e == 2) {
                let k = squared.iter().position(|&s| s == i).expect("squared variable");
                m.0[i] = 1;
                m.0[n + k] = 1;
            }
            m
        })
        .collect::<Vec<_>>();
    Ok(MonomialIdeal::new(names, gens))
}

/// Presentation ideal of the fibre product `k[X]/I x_k k[Y]/J`.
pub fn fibre_product(left: &MonomialIdeal, right: &MonomialIdeal) -> Result<MonomialIdeal> {
    if let Some(v) = left.variables.iter().find(|v| right.variables.contains(v)) {
        return Err(Error::OverlappingVariables(v.clone()));
    }
    let (m, n) = (left.nvars(), right.nvars());
    let mut names = left.variables.clone();
    names.extend(right.variables.iter().cloned());
    let mut gens: Vec<Monomial> = left.generators.iter().map(|g| g.padded(m + n)).collect();
    gens.extend(right.generators.iter().map(|g| {
        let mut e = vec![0; m];
        e.extend_from_slice(&g.0);
        Monomial(e)
    }));
    for i in 0..m {
        for j in 0..n {
            gens.push(Monomial::product_of(m + n, i, m + j));
        }
    }
    Ok(MonomialIdeal::new(names, gens))
}
