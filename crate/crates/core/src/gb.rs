//! Multivariate polynomials, degree reverse lexicographic orders and a
//! degree-capped Buchberger algorithm.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{render_signed, Field};
use crate::monomial::{Monomial, MonomialIdeal};

/// Degree reverse lexicographic order given by a ranking of the variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MonomialOrder {
    /// Variable indices from smallest to largest.
    priority: Vec<usize>,
}

impl MonomialOrder {
    /// `priority` lists every variable index once, smallest variable first.
    pub fn degrevlex(priority: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; priority.len()];
        for &v in &priority {
            if v >= priority.len() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidInput(format!(
                    "variable priority {priority:?} is not a permutation"
                )));
            }
        }
        Ok(MonomialOrder { priority })
    }

    /// The usual convention: the first declared variable is the largest.
    pub fn standard(nvars: usize) -> Self {
        MonomialOrder {
            priority: (0..nvars).rev().collect(),
        }
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        a.degree().cmp(&b.degree()).then_with(|| {
            for &v in &self.priority {
                let (x, y) = (a.exponents()[v], b.exponents()[v]);
                if x != y {
                    // more of the smallest differing variable makes it smaller
                    return y.cmp(&x);
                }
            }
            Ordering::Equal
        })
    }

    /// `"x11 < x22 < x12"`
    pub fn render(&self, names: &[String]) -> String {
        self.priority
            .iter()
            .map(|&v| names[v].as_str())
            .collect::<Vec<_>>()
            .join(" < ")
    }
}

/// Polynomial with coefficients in `F`; zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct MultiPolynomial<F: Field> {
    field: F,
    nvars: usize,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> PartialEq for MultiPolynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl<F: Field> MultiPolynomial<F> {
    pub fn zero(field: &F, nvars: usize) -> Self {
        MultiPolynomial {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(field: &F, m: Monomial, c: F::Elem) -> Self {
        let nvars = m.nvars();
        Self::from_terms(field, nvars, [(m, c)])
    }

    pub fn monomial(field: &F, m: Monomial) -> Self {
        Self::term(field, m, field.one())
    }

    /// Sums the given terms.
    pub fn from_terms(
        field: &F,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, F::Elem)>,
    ) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    /// `a - b`
    pub fn binomial(field: &F, a: Monomial, b: Monomial) -> Self {
        let nvars = a.nvars();
        Self::from_terms(field, nvars, [(a, field.one()), (b, field.neg(&field.one()))])
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, F::Elem> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Largest total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            Some(d) => degrees.all(|e| e == d),
            None => true,
        }
    }

    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Monomial, &F::Elem)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<&Monomial> {
        self.leading(order).map(|(m, _)| m)
    }

    pub fn add_term(&mut self, m: Monomial, c: &F::Elem) {
        if self.field.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = self.field.add(old, c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    /// `self += c * m * other`
    pub fn add_scaled(&mut self, c: &F::Elem, m: &Monomial, other: &Self) {
        for (n, d) in &other.terms {
            let prod = self.field.mul(c, d);
            self.add_term(m.mul(n), &prod);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&self.field.one(), &Monomial::one(self.nvars), other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&self.field.neg(&self.field.one()), &Monomial::one(self.nvars), other);
        out
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Self::from_terms(
            &self.field,
            self.nvars,
            self.terms.iter().map(|(m, d)| (m.clone(), self.field.mul(c, d))),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            out.add_scaled(c, m, other);
        }
        out
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self, order: &MonomialOrder) -> Self {
        match self.leading(order) {
            Some((_, c)) => self.scale(&self.field.inv(c)),
            None => self.clone(),
        }
    }

    /// Image under the ring map sending variable `v` to the monomial `images[v]`.
    pub fn map_monomials(&self, images: &[Monomial]) -> Self {
        let target = images.first().map_or(0, Monomial::nvars);
        let mut out = Self::zero(&self.field, target);
        for (m, c) in &self.terms {
            let mut img = Monomial::one(target);
            for (v, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    img = img.mul(&images[v]);
                }
            }
            out.add_term(img, c);
        }
        out
    }

    /// Terms in decreasing order, e.g. `x12^2 - x11*x22`.
    pub fn render(&self, names: &[String], order: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| order.cmp(b.0, a.0));
        let mut out = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let (negative, magnitude) = render_signed(&self.field, c);
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if m.is_one() {
                out.push_str(&magnitude);
            } else {
                if magnitude != "1" {
                    out.push_str(&magnitude);
                    out.push('*');
                }
                out.push_str(&m.render(names));
            }
        }
        out
    }
}

/// Remainder of `f` under full division by `divisors`: no term of the result
/// is divisible by a leading monomial of a divisor.
pub fn normal_form<F: Field>(
    f: &MultiPolynomial<F>,
    divisors: &[MultiPolynomial<F>],
    order: &MonomialOrder,
) -> MultiPolynomial<F> {
    let field = f.field.clone();
    let leads: Vec<(Monomial, F::Elem)> = divisors
        .iter()
        .filter_map(|g| g.leading(order).map(|(m, c)| (m.clone(), c.clone())))
        .collect();
    let nonzero: Vec<&MultiPolynomial<F>> = divisors.iter().filter(|g| !g.is_zero()).collect();
    let mut rest = f.clone();
    let mut out = MultiPolynomial::zero(&field, f.nvars);
    while let Some((m, c)) = rest.leading(order).map(|(m, c)| (m.clone(), c.clone())) {
        let hit = leads
            .iter()
            .zip(&nonzero)
            .find_map(|((lm, lc), g)| m.div(lm).map(|q| (q, lc, *g)));
        match hit {
            Some((q, lc, g)) => {
                let factor = field.neg(&field.div(&c, lc));
                rest.add_scaled(&factor, &q, g);
            }
            None => {
                rest.terms.remove(&m);
                out.terms.insert(m, c);
            }
        }
    }
    out
}

fn s_polynomial<F: Field>(
    f: &MultiPolynomial<F>,
    g: &MultiPolynomial<F>,
    order: &MonomialOrder,
) -> MultiPolynomial<F> {
    let field = &f.field;
    let (mf, cf) = f.leading(order).expect("nonzero");
    let (mg, cg) = g.leading(order).expect("nonzero");
    let l = mf.lcm(mg);
    let mut s = MultiPolynomial::zero(field, f.nvars);
    s.add_scaled(&field.inv(cf), &l.div(mf).expect("lcm"), f);
    s.add_scaled(&field.neg(&field.inv(cg)), &l.div(mg).expect("lcm"), g);
    s
}

/// Result of a degree-capped Buchberger run.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    elements: Vec<MultiPolynomial<F>>,
    order: MonomialOrder,
    degree_cap: u32,
    complete: bool,
    homogeneous: bool,
}

impl<F: Field> GroebnerBasis<F> {
    /// Monic, inter-reduced, sorted by increasing leading monomial.
    pub fn elements(&self) -> &[MultiPolynomial<F>] {
        &self.elements
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    /// No S-pair was deferred by the cap.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| g.leading_monomial(&self.order).expect("nonzero").clone())
            .collect()
    }

    /// The monomial ideal of leading monomials.
    pub fn initial_ideal(&self, names: &[String]) -> MonomialIdeal {
        MonomialIdeal::new(names.to_vec(), self.leading_monomials())
    }

    pub fn reduce(&self, f: &MultiPolynomial<F>) -> MultiPolynomial<F> {
        normal_form(f, &self.elements, &self.order)
    }

    /// Whether the leading monomials are known to generate the initial ideal
    /// in degree `d`. Deferred homogeneous S-pairs only produce elements of
    /// degree above the cap.
    pub fn certified_through(&self, d: u32) -> bool {
        self.complete || (self.homogeneous && d <= self.degree_cap)
    }

    /// Degree-`d` monomials outside the initial ideal, in increasing order.
    pub fn standard_monomials(&self, d: u32) -> Result<Vec<Monomial>> {
        if !self.certified_through(d) {
            return Err(Error::IncompleteBasis {
                cap: self.degree_cap,
                requested: d,
            });
        }
        let leads = self.leading_monomials();
        let mut out: Vec<Monomial> = Monomial::all_of_degree(self.order.nvars(), d)
            .into_iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .collect();
        out.sort_by(|a, b| self.order.cmp(a, b));
        Ok(out)
    }
}

/// Default cap: twice the largest generator degree.
pub fn default_degree_cap<F: Field>(gens: &[MultiPolynomial<F>]) -> u32 {
    2 * gens.iter().filter_map(MultiPolynomial::degree).max().unwrap_or(1).max(1)
}

/// Buchberger's algorithm with the normal selection strategy (smallest lcm
/// degree, then smallest index pair) and the coprime leading monomial
/// criterion. S-pairs whose lcm has degree above `degree_cap` are deferred
/// and mark the result incomplete.
pub fn buchberger<F: Field>(
    gens: &[MultiPolynomial<F>],
    order: &MonomialOrder,
    degree_cap: u32,
) -> Result<GroebnerBasis<F>> {
    if let Some(d) = gens.iter().filter_map(MultiPolynomial::degree).find(|&d| d > degree_cap) {
        return Err(Error::CapTooLow { degree: d, cap: degree_cap });
    }
    let homogeneous = gens.iter().all(MultiPolynomial::is_homogeneous);
    let mut basis: Vec<MultiPolynomial<F>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic(order))
        .collect();
    let lead = |g: &MultiPolynomial<F>| g.leading_monomial(order).expect("nonzero").clone();
    let mut leads: Vec<Monomial> = basis.iter().map(lead).collect();
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((leads[i].lcm(&leads[j]).degree(), i, j));
        }
    }
    let mut complete = true;
    while let Some((deg, i, j)) = pairs.pop_first() {
        if leads[i].is_coprime(&leads[j]) {
            continue;
        }
        if deg > degree_cap {
            complete = false;
            continue;
        }
        let r = normal_form(&s_polynomial(&basis[i], &basis[j], order), &basis, order);
        if r.is_zero() {
            continue;
        }
        let r = r.monic(order);
        let lr = lead(&r);
        let k = basis.len();
        for (a, la) in leads.iter().enumerate() {
            pairs.insert((la.lcm(&lr).degree(), a, k));
        }
        basis.push(r);
        leads.push(lr);
    }
    let elements = inter_reduce(basis, order);
    Ok(GroebnerBasis {
        elements,
        order: order.clone(),
        degree_cap,
        complete,
        homogeneous,
    })
}

fn inter_reduce<F: Field>(
    basis: Vec<MultiPolynomial<F>>,
    order: &MonomialOrder,
) -> Vec<MultiPolynomial<F>> {
    let leads: Vec<Monomial> = basis
        .iter()
        .map(|g| g.leading_monomial(order).expect("nonzero").clone())
        .collect();
    // keep one element per minimal leading monomial
    let mut keep: Vec<usize> = Vec::new();
    for (i, li) in leads.iter().enumerate() {
        let redundant = leads
            .iter()
            .enumerate()
            .any(|(j, lj)| j != i && lj.divides(li) && (lj != li || j < i));
        if !redundant {
            keep.push(i);
        }
    }
    let kept: Vec<MultiPolynomial<F>> = keep.iter().map(|&i| basis[i].clone()).collect();
    let mut out: Vec<MultiPolynomial<F>> = (0..kept.len())
        .map(|a| {
            let others: Vec<MultiPolynomial<F>> = kept
                .iter()
                .enumerate()
                .filter(|&(b, _)| b != a)
                .map(|(_, g)| g.clone())
                .collect();
            let g = &kept[a];
            let (lm, lc) = g.leading(order).expect("nonzero");
            let mut tail = g.clone();
            tail.terms.remove(lm);
            let mut r = normal_form(&tail, &others, order);
            r.add_term(lm.clone(), lc);
            r.monic(order)
        })
        .collect();
    out.sort_by(|a, b| {
        order.cmp(
            a.leading_monomial(order).expect("nonzero"),
            b.leading_monomial(order).expect("nonzero"),
        )
    });
    out
}

/// An S-pair whose S-polynomial does not reduce to zero.
#[derive(Clone, Debug)]
pub struct SPairWitness<F: Field> {
    pub i: usize,
    pub j: usize,
    pub lcm_degree: u32,
    pub remainder: MultiPolynomial<F>,
}

#[derive(Clone, Debug)]
pub struct GroebnerCheck<F: Field> {
    pub pairs_checked: usize,
    /// Pairs above the cap, not examined.
    pub pairs_skipped: usize,
    pub witness: Option<SPairWitness<F>>,
}

impl<F: Field> GroebnerCheck<F> {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks that every S-polynomial of degree at most `degree_cap` reduces to
/// zero modulo `gens`. The reported witness is the first failing pair in
/// `(j, i)` order.
pub fn is_groebner<F: Field>(
    gens: &[MultiPolynomial<F>],
    order: &MonomialOrder,
    degree_cap: u32,
) -> GroebnerCheck<F> {
    let gens: Vec<MultiPolynomial<F>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let leads: Vec<&Monomial> = gens
        .iter()
        .map(|g| g.leading_monomial(order).expect("nonzero"))
        .collect();
    let pairs: Vec<(usize, usize, u32)> = (0..gens.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|&(i, j)| !leads[i].is_coprime(leads[j]))
        .map(|(i, j)| (i, j, leads[i].lcm(leads[j]).degree()))
        .collect();
    let (within, above): (Vec<_>, Vec<_>) =
        pairs.into_iter().partition(|&(_, _, d)| d <= degree_cap);
    let witness = within.par_iter().find_map_first(|&(i, j, d)| {
        let r = normal_form(&s_polynomial(&gens[i], &gens[j], order), &gens, order);
        (!r.is_zero()).then(|| SPairWitness {
            i,
            j,
            lcm_degree: d,
            remainder: r,
        })
    });
    GroebnerCheck {
        pairs_checked: within.len(),
        pairs_skipped: above.len(),
        witness,
    }
}

/// Index of `x_{ij}` (`i <= j`, zero-based) among the variables of `Sym(S_2)`.
pub fn veronese2_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    // rows 0..i contribute n, n-1, ..., n-i+1 variables
    i * n - i * (i.saturating_sub(1)) / 2 + (j - i)
}

/// Variables `x_{ij}`, `1 <= i <= j <= n`, named `x12` (or `x1_12` once
/// `n >= 10`), row by row.
pub fn veronese2_variables(n: usize) -> Vec<String> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            out.push(if n >= 10 {
                format!("x{i}_{j}")
            } else {
                format!("x{i}{j}")
            });
        }
    }
    out
}

/// `x_11 < ... < x_nn < x_12 < x_34 < x_56 < ...`, then the remaining
/// variables by index pair.
pub fn veronese2_order(n: usize) -> Result<MonomialOrder> {
    if n < 2 {
        return Err(Error::InvalidRange(format!("veronese2 needs n >= 2, got {n}")));
    }
    let mut priority: Vec<usize> = (0..n).map(|i| veronese2_index(n, i, i)).collect();
    let pairs: Vec<usize> = (0..n / 2).map(|k| veronese2_index(n, 2 * k, 2 * k + 1)).collect();
    priority.extend(&pairs);
    for i in 0..n {
        for j in i + 1..n {
            let v = veronese2_index(n, i, j);
            if !pairs.contains(&v) {
                priority.push(v);
            }
        }
    }
    MonomialOrder::degrevlex(priority)
}

/// Quadratic binomials `m - m0` generating the kernel of `x_ij -> x_i x_j`,
/// where `m0` is the smallest monomial of its multidegree under `order`.
pub fn veronese2_kernel_gens_for<F: Field>(
    field: &F,
    n: usize,
    order: &MonomialOrder,
) -> Result<Vec<MultiPolynomial<F>>> {
    if n < 2 {
        return Err(Error::InvalidRange(format!("veronese2 needs n >= 2, got {n}")));
    }
    let nv = n * (n + 1) / 2;
    if order.nvars() != nv {
        return Err(Error::InvalidInput(format!(
            "order has {} variables, expected {nv}",
            order.nvars()
        )));
    }
    let images = veronese2_images(n);
    let mut groups: BTreeMap<Monomial, Vec<Monomial>> = BTreeMap::new();
    for m in Monomial::all_of_degree(nv, 2) {
        let mut image = Monomial::one(n);
        for v in m.support() {
            for _ in 0..m.exponents()[v] {
                image = image.mul(&images[v]);
            }
        }
        groups.entry(image).or_default().push(m);
    }
    let mut out = Vec::new();
    for members in groups.values() {
        let smallest = members
            .iter()
            .min_by(|a, b| order.cmp(a, b))
            .expect("nonempty group");
        let mut rest: Vec<&Monomial> = members.iter().filter(|m| *m != smallest).collect();
        rest.sort_by(|a, b| order.cmp(a, b));
        for m in rest {
            out.push(MultiPolynomial::binomial(field, m.clone(), smallest.clone()));
        }
    }
    out.sort_by(|a, b| {
        order.cmp(
            a.leading_monomial(order).expect("nonzero"),
            b.leading_monomial(order).expect("nonzero"),
        )
    });
    Ok(out)
}

/// Kernel generators under [`veronese2_order`].
pub fn veronese2_kernel_gens<F: Field>(field: &F, n: usize) -> Result<Vec<MultiPolynomial<F>>> {
    veronese2_kernel_gens_for(field, n, &veronese2_order(n)?)
}

/// Images `x_i x_j` of the variables `x_ij` in `k[x_1..x_n]`.
pub fn veronese2_images(n: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            out.push(Monomial::product_of(n, i, j));
        }
    }
    out
}

/// Splitting of a Veronese-2 initial ideal into the squares `x_ij^2`
/// (`i < j`) and the remaining generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Veronese2Split {
    /// Generators `x_ij^2` with `i < j`.
    pub squares: Vec<Monomial>,
    /// Remaining generators, restricted to the off-diagonal variables when
    /// they only involve those.
    pub rest: MonomialIdeal,
    /// Generators involving a diagonal variable, other than the squares.
    pub outside: Vec<Monomial>,
}

impl Veronese2Split {
    /// Every `x_ij^2` with `i < j` occurs and nothing involves a diagonal variable.
    pub fn is_squares_plus_offdiagonal(&self, n: usize) -> bool {
        self.squares.len() == n * (n - 1) / 2 && self.outside.is_empty()
    }
}

pub fn veronese2_initial_split(initial: &MonomialIdeal, n: usize) -> Veronese2Split {
    let off: Vec<usize> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| veronese2_index(n, i, j)))
        .collect();
    let mut squares = Vec::new();
    let mut rest = Vec::new();
    let mut outside = Vec::new();
    for g in initial.generators() {
        let support: Vec<usize> = g.support().collect();
        if support.len() == 1 && g.degree() == 2 && off.contains(&support[0]) {
            squares.push(g.clone());
        } else if support.iter().all(|v| off.contains(v)) {
            rest.push(Monomial::new(off.iter().map(|&v| g.exponents()[v]).collect()));
        } else {
            outside.push(g.clone());
        }
    }
    let names = off.iter().map(|&v| initial.variables()[v].clone()).collect();
    Veronese2Split {
        squares,
        rest: MonomialIdeal::new(names, rest),
        outside,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::monomial::{is_chordal, nonedge_graph};

    fn poly(n: usize, terms: &[(i64, &[u32])]) -> MultiPolynomial<Rationals> {
        MultiPolynomial::from_terms(
            &Rationals,
            n,
            terms
                .iter()
                .map(|(c, e)| (Monomial::new(e.to_vec()), Rationals.from_i64(*c))),
        )
    }

    #[test]
    fn degrevlex_compares_like_the_textbook() {
        // x > y > z
        let o = MonomialOrder::standard(3);
        let m = |e: &[u32]| Monomial::new(e.to_vec());
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[1, 0, 0])), Ordering::Greater);
        assert!(MonomialOrder::degrevlex(vec![0, 0]).is_err());
    }

    #[test]
    fn normal_form_of_square() {
        let n = 3;
        let order = veronese2_order(2).unwrap();
        let x12 = veronese2_index(2, 0, 1);
        let f = MultiPolynomial::monomial(&Rationals, Monomial::product_of(n, x12, x12));
        let gens = veronese2_kernel_gens(&Rationals, 2).unwrap();
        let names = veronese2_variables(2);
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].render(&names, &order), "x12^2 - x11*x22");
        assert_eq!(normal_form(&f, &gens, &order).render(&names, &order), "x11*x22");
        assert!(normal_form(&gens[0], &gens, &order).is_zero());
    }

    #[test]
    fn normal_form_is_idempotent() {
        let order = MonomialOrder::standard(3);
        let g = vec![poly(3, &[(1, &[2, 0, 0]), (-1, &[0, 1, 1])])];
        let f = poly(3, &[(3, &[3, 0, 0]), (1, &[0, 0, 3]), (2, &[1, 1, 0])]);
        let r = normal_form(&f, &g, &order);
        assert_eq!(normal_form(&r, &g, &order), r);
    }

    #[test]
    fn coprime_leading_terms_are_already_a_basis() {
        let order = MonomialOrder::standard(3);
        let gens = vec![
            poly(3, &[(1, &[2, 0, 0]), (-1, &[0, 1, 1])]),
            poly(3, &[(1, &[0, 2, 0]), (-1, &[1, 0, 1])]),
        ];
        let check = is_groebner(&gens, &order, 4);
        // x^2 and y^2 are coprime, so no pair needs reducing
        assert!(check.holds());
        assert_eq!(check.pairs_checked, 0);
    }

    #[test]
    fn twisted_cubic_missing_generator() {
        // ker(k[a,b,c,d] -> k[s,t]) : ac - b^2, bd - c^2, ad - bc
        let order = MonomialOrder::standard(4);
        let full = vec![
            poly(4, &[(1, &[1, 0, 1, 0]), (-1, &[0, 2, 0, 0])]),
            poly(4, &[(1, &[0, 1, 0, 1]), (-1, &[0, 0, 2, 0])]),
            poly(4, &[(1, &[1, 0, 0, 1]), (-1, &[0, 1, 1, 0])]),
        ];
        let gb = buchberger(&full, &order, 6).unwrap();
        assert!(gb.is_complete());
        // b^2 and c^2 are coprime, so dropping bd - c^2 breaks the basis
        let partial = [full[0].clone(), full[2].clone()];
        let check = is_groebner(&partial, &order, 6);
        let w = check.witness.expect("a missing element");
        // the remainder lies in the ideal but not in the span of the leads
        assert!(gb.reduce(&w.remainder).is_zero());
    }

    #[test]
    fn single_polynomial_is_a_basis() {
        let order = MonomialOrder::standard(2);
        let f = poly(2, &[(2, &[1, 1]), (4, &[0, 2])]);
        let gb = buchberger(&[f.clone()], &order, 4).unwrap();
        assert_eq!(gb.elements(), &[f.monic(&order)]);
        assert!(gb.is_complete());
        assert!(is_groebner(&[f], &order, 4).holds());
    }

    #[test]
    fn cap_too_low() {
        let order = MonomialOrder::standard(1);
        let f = poly(1, &[(1, &[3])]);
        assert!(matches!(
            buchberger(&[f], &order, 2),
            Err(Error::CapTooLow { degree: 3, cap: 2 })
        ));
    }

    #[test]
    fn veronese_order_small_cases() {
        let names = veronese2_variables(3);
        assert_eq!(
            veronese2_order(3).unwrap().render(&names),
            "x11 < x22 < x33 < x12 < x13 < x23"
        );
        let names = veronese2_variables(2);
        assert_eq!(veronese2_order(2).unwrap().render(&names), "x11 < x22 < x12");
        let names = veronese2_variables(6);
        let r = veronese2_order(6).unwrap().render(&names);
        assert!(r.starts_with("x11 < x22 < x33 < x44 < x55 < x66 < x12 < x34 < x56 < x13 < x14"));
    }

    #[test]
    fn veronese3_kernel_is_its_own_basis() {
        let gens = veronese2_kernel_gens(&Rationals, 3).unwrap();
        assert_eq!(gens.len(), 6);
        let order = veronese2_order(3).unwrap();
        let gb = buchberger(&gens, &order, 4).unwrap();
        assert!(gb.is_complete());
        assert_eq!(gb.elements().len(), 6);
        let images = veronese2_images(3);
        for g in &gens {
            assert!(g.map_monomials(&images).is_zero());
        }
    }

    #[test]
    fn hilbert_function_of_initial_ideal_is_order_independent() {
        let gens = veronese2_kernel_gens(&Rationals, 3).unwrap();
        let a = veronese2_order(3).unwrap();
        let b = MonomialOrder::standard(6);
        let ga = buchberger(&gens, &a, 6).unwrap();
        let gb = buchberger(&gens, &b, 6).unwrap();
        for d in 0..=6 {
            let (sa, sb) = (ga.standard_monomials(d).unwrap(), gb.standard_monomials(d).unwrap());
            // dim of the degree-d part of the Veronese ring: binom(2d+2, 2)
            let expected = (2 * d as usize + 2) * (2 * d as usize + 1) / 2;
            assert_eq!(sa.len(), expected);
            assert_eq!(sb.len(), expected);
        }
    }

    #[test]
    fn standard_monomials_examples() {
        let order = MonomialOrder::standard(2);
        let gens = vec![poly(2, &[(1, &[2, 0])]), poly(2, &[(1, &[1, 1])])];
        let gb = buchberger(&gens, &order, 4).unwrap();
        assert_eq!(gb.standard_monomials(2).unwrap(), [Monomial::new(vec![0, 2])]);

        let gens = vec![poly(2, &[(1, &[2, 0])])];
        let gb = buchberger(&gens, &order, 4).unwrap();
        let mut got = gb.standard_monomials(3).unwrap();
        got.sort();
        assert_eq!(got, [Monomial::new(vec![0, 3]), Monomial::new(vec![1, 2])]);
    }

    #[test]
    fn incomplete_basis_is_not_certified_beyond_cap() {
        // twisted cubic with a cap that defers the degree-3 pairs
        let order = MonomialOrder::standard(4);
        let gens = vec![
            poly(4, &[(1, &[1, 0, 1, 0]), (-1, &[0, 2, 0, 0])]),
            poly(4, &[(1, &[0, 1, 0, 1]), (-1, &[0, 0, 2, 0])]),
            poly(4, &[(1, &[1, 0, 0, 1]), (-1, &[0, 1, 1, 0])]),
        ];
        let gb = buchberger(&gens, &order, 2).unwrap();
        assert!(!gb.is_complete());
        assert!(gb.standard_monomials(2).is_ok());
        assert!(matches!(
            gb.standard_monomials(3),
            Err(Error::IncompleteBasis { cap: 2, requested: 3 })
        ));
    }

    #[test]
    fn veronese4_split_in_characteristic_two() {
        let f = PrimeField::new(2).unwrap();
        let n = 4;
        let gens = veronese2_kernel_gens(&f, n).unwrap();
        let order = veronese2_order(n).unwrap();
        assert!(is_groebner(&gens, &order, 6).holds());
        let names = veronese2_variables(n);
        let init = MonomialIdeal::new(
            names,
            gens.iter().map(|g| g.leading_monomial(&order).unwrap().clone()),
        );
        let split = veronese2_initial_split(&init, n);
        assert!(split.is_squares_plus_offdiagonal(n));
        assert!(split.rest.is_squarefree());
        assert!(is_chordal(&nonedge_graph(&split.rest).unwrap()).is_chordal());
    }

    #[test]
    fn index_layout() {
        let names = veronese2_variables(4);
        for i in 0..4 {
            for j in i..4 {
                assert_eq!(names[veronese2_index(4, i, j)], format!("x{}{}", i + 1, j + 1));
            }
        }
        assert_eq!(veronese2_variables(10)[1], "x1_2");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn random_poly(n: usize) -> impl Strategy<Value = MultiPolynomial<Rationals>> {
            prop::collection::vec((-3i64..=3, prop::collection::vec(0u32..3, n)), 1..5).prop_map(
                move |terms| {
                    MultiPolynomial::from_terms(
                        &Rationals,
                        n,
                        terms.into_iter().map(|(c, e)| (Monomial::new(e), Rationals.from_i64(c))),
                    )
                },
            )
        }

        fn random_order(n: usize) -> impl Strategy<Value = MonomialOrder> {
            Just((0..n).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|p| MonomialOrder::degrevlex(p).unwrap())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn normal_form_is_idempotent_and_reduced(
                f in random_poly(3),
                divisors in prop::collection::vec(random_poly(3), 1..4),
                order in random_order(3),
            ) {
                let r = normal_form(&f, &divisors, &order);
                let again = normal_form(&r, &divisors, &order);
                prop_assert_eq!(again.terms(), r.terms());
                let leads: Vec<&Monomial> =
                    divisors.iter().filter_map(|g| g.leading_monomial(&order)).collect();
                for m in r.terms().keys() {
                    prop_assert!(leads.iter().all(|l| !l.divides(m)));
                }
            }

            #[test]
            fn buchberger_output_passes_the_s_pair_check(
                gens in prop::collection::vec(random_poly(3), 1..4),
                order in random_order(3),
            ) {
                let gb = buchberger(&gens, &order, 6).unwrap();
                prop_assume!(gb.is_complete());
                prop_assert!(is_groebner(gb.elements(), &order, 12).holds());
                for g in &gens {
                    prop_assert!(gb.reduce(g).is_zero());
                }
            }
        }
    }
}
