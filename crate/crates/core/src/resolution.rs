//! Truncated minimal graded free resolutions over `S/I`, computed one
//! internal degree at a time by exact linear algebra on standard-monomial
//! bases.
//!
//! All Betti numbers `β_{i,j}` with `i <= h` and `j <= D` are exact: the
//! degree-`j` part of each syzygy module only depends on ring slices of
//! degree at most `j`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gb::{buchberger, GroebnerBasis, MonomialOrder, MultiPolynomial};
use crate::linalg::{axpy, kernel, rank, to_sparse, Echelon, Inserted, SparseVec};
use crate::monomial::Monomial;

/// Default homological bound.
pub const DEFAULT_HOMOLOGICAL_BOUND: usize = 5;

/// `D = h + (largest generator degree) + 2`.
pub fn default_degree_bound(h: usize, max_generator_degree: u32) -> u32 {
    h as u32 + max_generator_degree + 2
}

struct Slice<F: Field> {
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// `times_var[v][b]`: `x_v * basis[b]` in the next slice.
    times_var: Vec<Vec<SparseVec<F::Elem>>>,
}

/// `S/I` for a homogeneous ideal `I`, with standard-monomial bases of its
/// graded pieces up to a fixed degree.
pub struct QuotientRing<F: Field> {
    field: F,
    variables: Vec<String>,
    generators: Vec<MultiPolynomial<F>>,
    gb: GroebnerBasis<F>,
    degree_bound: u32,
    slices: Vec<Slice<F>>,
}

impl<F: Field> QuotientRing<F> {
    /// Slices are prepared through `degree_bound`; the Gröbner basis is
    /// computed with the same cap, which certifies them.
    pub fn new(
        field: &F,
        variables: Vec<String>,
        generators: Vec<MultiPolynomial<F>>,
        order: MonomialOrder,
        degree_bound: u32,
    ) -> Result<Self> {
        let n = variables.len();
        if order.nvars() != n {
            return Err(Error::InvalidInput(format!(
                "order has {} variables, ring has {n}",
                order.nvars()
            )));
        }
        let generators: Vec<_> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &generators {
            if g.nvars() != n {
                return Err(Error::InvalidInput("generator over the wrong ring".into()));
            }
            if !g.is_homogeneous() {
                return Err(Error::InvalidInput(format!(
                    "defining ideal must be homogeneous: {}",
                    g.render(&variables, &order)
                )));
            }
        }
        let max_deg = generators.iter().filter_map(MultiPolynomial::degree).max().unwrap_or(0);
        let gb = buchberger(&generators, &order, degree_bound.max(max_deg))?;
        let mut slices: Vec<Slice<F>> = Vec::with_capacity(degree_bound as usize + 1);
        for d in 0..=degree_bound {
            let basis = gb.standard_monomials(d)?;
            let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            slices.push(Slice {
                basis,
                index,
                times_var: Vec::new(),
            });
        }
        for d in 0..degree_bound as usize {
            let table: Vec<Vec<SparseVec<F::Elem>>> = (0..n)
                .map(|v| {
                    slices[d]
                        .basis
                        .iter()
                        .map(|m| {
                            let prod = m.mul(&Monomial::var(n, v));
                            match slices[d + 1].index.get(&prod) {
                                Some(&i) => vec![(i, field.one())],
                                None => {
                                    let nf = gb.reduce(&MultiPolynomial::monomial(field, prod));
                                    nf.terms()
                                        .iter()
                                        .map(|(t, c)| (slices[d + 1].index[t], c.clone()))
                                        .collect::<BTreeMap<_, _>>()
                                        .into_iter()
                                        .collect()
                                }
                            }
                        })
                        .collect()
                })
                .collect();
            slices[d].times_var = table;
        }
        Ok(QuotientRing {
            field: field.clone(),
            variables,
            generators,
            gb,
            degree_bound,
            slices,
        })
    }

    /// The polynomial ring itself.
    pub fn polynomial(field: &F, variables: Vec<String>, degree_bound: u32) -> Result<Self> {
        let n = variables.len();
        Self::new(field, variables, Vec::new(), MonomialOrder::standard(n), degree_bound)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn generators(&self) -> &[MultiPolynomial<F>] {
        &self.generators
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis<F> {
        &self.gb
    }

    pub fn order(&self) -> &MonomialOrder {
        self.gb.order()
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    /// `dim_k R_d`, for `d` within the bound.
    pub fn dim(&self, d: u32) -> usize {
        self.slices[d as usize].basis.len()
    }

    pub fn basis(&self, d: u32) -> &[Monomial] {
        &self.slices[d as usize].basis
    }

    pub fn hilbert_function(&self) -> Vec<usize> {
        self.slices.iter().map(|s| s.basis.len()).collect()
    }

    pub fn reduce(&self, p: &MultiPolynomial<F>) -> MultiPolynomial<F> {
        self.gb.reduce(p)
    }

    /// Coordinates of a homogeneous element of degree `d` (zero allowed).
    fn coordinates(&self, p: &MultiPolynomial<F>, d: u32) -> SparseVec<F::Elem> {
        let nf = self.reduce(p);
        let slice = &self.slices[d as usize];
        let map: BTreeMap<usize, F::Elem> =
            nf.terms().iter().map(|(m, c)| (slice.index[m], c.clone())).collect();
        map.into_iter().collect()
    }

    fn element(&self, d: u32, coords: &[(usize, F::Elem)]) -> MultiPolynomial<F> {
        let basis = &self.slices[d as usize].basis;
        MultiPolynomial::from_terms(
            &self.field,
            self.nvars(),
            coords.iter().map(|(i, c)| (basis[*i].clone(), c.clone())),
        )
    }
}

/// A graded module given by generators and relation columns.
pub struct GradedModulePresentation<'r, F: Field> {
    ring: &'r QuotientRing<F>,
    generator_degrees: Vec<u32>,
    /// `relations[r][k]`: coefficient of generator `k` in relation `r`.
    relations: Vec<Vec<MultiPolynomial<F>>>,
    relation_degrees: Vec<u32>,
}

impl<'r, F: Field> GradedModulePresentation<'r, F> {
    /// Entries are reduced to normal form; every column must be homogeneous
    /// of a single degree. Zero columns are dropped.
    pub fn new(
        ring: &'r QuotientRing<F>,
        generator_degrees: Vec<u32>,
        relations: Vec<Vec<MultiPolynomial<F>>>,
    ) -> Result<Self> {
        let mut kept = Vec::new();
        let mut degrees = Vec::new();
        for (r, column) in relations.into_iter().enumerate() {
            if column.len() != generator_degrees.len() {
                return Err(Error::InvalidInput(format!(
                    "relation {} has {} entries for {} generators",
                    r + 1,
                    column.len(),
                    generator_degrees.len()
                )));
            }
            let column: Vec<_> = column.iter().map(|p| ring.reduce(p)).collect();
            let mut degree = None;
            for (k, p) in column.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                if !p.is_homogeneous() {
                    return Err(Error::InvalidInput(format!(
                        "relation {} is not homogeneous",
                        r + 1
                    )));
                }
                let d = p.degree().expect("nonzero") + generator_degrees[k];
                if *degree.get_or_insert(d) != d {
                    return Err(Error::InvalidInput(format!(
                        "relation {} mixes degrees",
                        r + 1
                    )));
                }
            }
            if let Some(d) = degree {
                kept.push(column);
                degrees.push(d);
            }
        }
        Ok(GradedModulePresentation {
            ring,
            generator_degrees,
            relations: kept,
            relation_degrees: degrees,
        })
    }

    /// `R/J` for the ideal `J` generated by `gens`.
    pub fn cyclic(ring: &'r QuotientRing<F>, gens: &[MultiPolynomial<F>]) -> Result<Self> {
        Self::new(ring, vec![0], gens.iter().map(|g| vec![g.clone()]).collect())
    }

    /// The residue field `k = R/(x_1..x_n)`.
    pub fn residue_field(ring: &'r QuotientRing<F>) -> Self {
        let n = ring.nvars();
        let vars: Vec<_> = (0..n)
            .map(|v| MultiPolynomial::monomial(ring.field(), Monomial::var(n, v)))
            .collect();
        Self::cyclic(ring, &vars).expect("variables are homogeneous")
    }

    /// `R` as a module over itself.
    pub fn free_cyclic(ring: &'r QuotientRing<F>) -> Self {
        GradedModulePresentation {
            ring,
            generator_degrees: vec![0],
            relations: Vec::new(),
            relation_degrees: Vec::new(),
        }
    }

    pub fn ring(&self) -> &'r QuotientRing<F> {
        self.ring
    }

    pub fn generator_degrees(&self) -> &[u32] {
        &self.generator_degrees
    }

    pub fn relations(&self) -> &[Vec<MultiPolynomial<F>>] {
        &self.relations
    }

    pub fn relation_degrees(&self) -> &[u32] {
        &self.relation_degrees
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.generator_degrees
            .iter()
            .chain(&self.relation_degrees)
            .copied()
            .max()
            .unwrap_or(0)
    }

    /// Removes generators that some relation expresses through the others
    /// (a relation with a nonzero constant entry).
    fn pruned(&self) -> (Vec<u32>, Vec<Vec<MultiPolynomial<F>>>, Vec<u32>) {
        let field = self.ring.field();
        let mut degrees = self.generator_degrees.clone();
        let mut rels = self.relations.clone();
        let mut rel_degrees = self.relation_degrees.clone();
        loop {
            let unit = rels.iter().enumerate().find_map(|(r, col)| {
                col.iter()
                    .position(|p| !p.is_zero() && p.degree() == Some(0))
                    .map(|k| (r, k))
            });
            let Some((r, k)) = unit else { break };
            let pivot = rels.remove(r);
            rel_degrees.remove(r);
            let c = pivot[k].coeff(&Monomial::one(self.ring.nvars()));
            let inv = field.inv(&c);
            for col in rels.iter_mut() {
                if col[k].is_zero() {
                    continue;
                }
                // col -= (col_k / c) * pivot
                let factor = col[k].scale(&inv);
                for (l, entry) in col.iter_mut().enumerate() {
                    if !pivot[l].is_zero() {
                        *entry = self.ring.reduce(&entry.sub(&factor.mul(&pivot[l])));
                    }
                }
                debug_assert!(col[k].is_zero());
            }
            for col in rels.iter_mut() {
                col.remove(k);
            }
            degrees.remove(k);
            let keep: Vec<bool> = rels.iter().map(|col| col.iter().any(|p| !p.is_zero())).collect();
            let mut it = keep.iter();
            rels.retain(|_| *it.next().expect("same length"));
            let mut it = keep.iter();
            rel_degrees.retain(|_| *it.next().expect("same length"));
        }
        // the degreewise algorithm wants generators sorted by degree
        let mut perm: Vec<usize> = (0..degrees.len()).collect();
        perm.sort_by_key(|&k| (degrees[k], k));
        let degrees_sorted = perm.iter().map(|&k| degrees[k]).collect();
        let rels_sorted = rels
            .into_iter()
            .map(|col| perm.iter().map(|&k| col[k].clone()).collect())
            .collect();
        (degrees_sorted, rels_sorted, rel_degrees)
    }
}

/// Block structure of the degree-`j` part of a free module.
struct Layout {
    /// `(generator, start, slice degree)`
    blocks: Vec<(usize, usize, u32)>,
    total: usize,
}

impl Layout {
    fn locate(&self, flat: usize) -> usize {
        self.blocks.partition_point(|&(_, start, _)| start <= flat) - 1
    }
}

struct Level<F: Field> {
    degrees: Vec<u32>,
    /// `images[k]`: `d(e_k)` in the degree-`a_k` part of the previous level.
    images: Vec<SparseVec<F::Elem>>,
    /// `cols[j]`: images of the standard basis of the degree-`j` part.
    cols: Vec<Vec<SparseVec<F::Elem>>>,
    /// `sub[j]`: basis of the degree-`j` part of the submodule resolved by
    /// the next level (relations for level 0, the kernel of `d` otherwise).
    sub: Vec<Vec<SparseVec<F::Elem>>>,
}

impl<F: Field> Level<F> {
    fn new(degrees: Vec<u32>) -> Self {
        Level {
            degrees,
            images: Vec::new(),
            cols: Vec::new(),
            sub: Vec::new(),
        }
    }
}

/// Betti numbers with explicit truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    /// Every computed cell, zero or not.
    computed: BTreeMap<(usize, u32), u64>,
    homological_bound: usize,
    degree_bound: u32,
    min_generator_degree: u32,
    stopped_at: Option<(usize, u32)>,
}

/// `t_i = max{j : β_{i,j} ≠ 0}` as far as the table reaches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TBound {
    pub i: usize,
    /// Largest `j <= D` with `β_{i,j} ≠ 0`.
    pub lower_bound: Option<u32>,
    /// Cells above `D` are never certified, so this is only a lower bound.
    pub certified: bool,
}

impl BettiTable {
    /// `None` when the cell lies outside the certified range.
    pub fn get(&self, i: usize, j: u32) -> Option<u64> {
        if let Some(&b) = self.computed.get(&(i, j)) {
            return Some(b);
        }
        // generators of F_i sit in degrees >= i + (least generator degree)
        (j < i as u32 + self.min_generator_degree).then_some(0)
    }

    pub fn is_certified(&self, i: usize, j: u32) -> bool {
        self.get(i, j).is_some()
    }

    pub fn homological_bound(&self) -> usize {
        self.homological_bound
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn stopped_at(&self) -> Option<(usize, u32)> {
        self.stopped_at
    }

    /// Nonzero cells sorted by `(i, j)`.
    pub fn nonzero_cells(&self) -> Vec<(usize, u32, u64)> {
        self.computed
            .iter()
            .filter(|(_, &b)| b != 0)
            .map(|(&(i, j), &b)| (i, j, b))
            .collect()
    }

    pub fn total(&self, i: usize) -> u64 {
        self.computed.iter().filter(|((a, _), _)| *a == i).map(|(_, b)| b).sum()
    }

    pub fn t(&self, i: usize) -> TBound {
        TBound {
            i,
            lower_bound: self
                .computed
                .iter()
                .filter(|(&(a, _), &b)| a == i && b != 0)
                .map(|(&(_, j), _)| j)
                .max(),
            certified: false,
        }
    }

    /// Macaulay2-style table: row `r` holds `β_{i,i+r}`.
    pub fn render(&self) -> String {
        let cells = self.nonzero_cells();
        let h = self.homological_bound;
        let rows: Vec<u32> = {
            let mut r: Vec<u32> = cells.iter().map(|&(i, j, _)| j - i as u32).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        let width = cells
            .iter()
            .map(|c| c.2.to_string().len())
            .chain((0..=h).map(|i| self.total(i).to_string().len()))
            .max()
            .unwrap_or(1);
        let label = rows.iter().map(|r| r.to_string().len() + 1).max().unwrap_or(2).max(6);
        let mut out = String::new();
        let _ = write!(out, "{:>label$}", "");
        for i in 0..=h {
            let _ = write!(out, " {i:>width$}");
        }
        out.push('\n');
        let _ = write!(out, "{:>label$}", "total:");
        for i in 0..=h {
            let _ = write!(out, " {:>width$}", self.total(i));
        }
        out.push('\n');
        for r in rows {
            let _ = write!(out, "{:>label$}", format!("{r}:"));
            for i in 0..=h {
                let v = self.computed.get(&(i, i as u32 + r)).copied().unwrap_or(0);
                let s = if v == 0 { ".".to_string() } else { v.to_string() };
                let _ = write!(out, " {s:>width$}");
            }
            out.push('\n');
        }
        out
    }
}

impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BettiTable", 4)?;
        st.serialize_field("cells", &self.nonzero_cells())?;
        st.serialize_field("homologicalBound", &self.homological_bound)?;
        st.serialize_field("internalDegreeBound", &self.degree_bound)?;
        st.serialize_field("stoppedAt", &self.stopped_at)?;
        st.end()
    }
}

/// Differential `d_i: F_i -> F_{i-1}` as a matrix of ring elements.
#[derive(Clone, Debug)]
pub struct DifferentialMatrix<F: Field> {
    pub source_degrees: Vec<u32>,
    pub target_degrees: Vec<u32>,
    /// `entries[row][col]`, rows indexed by target generators.
    pub entries: Vec<Vec<MultiPolynomial<F>>>,
}

impl<F: Field> DifferentialMatrix<F> {
    pub fn render(&self, names: &[String], order: &MonomialOrder) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|p| p.render(names, order)).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(MultiPolynomial::is_zero)
    }
}

/// `a * b` reduced in the ring is zero (`a: F_{i-1} -> F_{i-2}`, `b: F_i -> F_{i-1}`).
pub fn composition_vanishes<F: Field>(
    ring: &QuotientRing<F>,
    a: &DifferentialMatrix<F>,
    b: &DifferentialMatrix<F>,
) -> bool {
    let field = ring.field();
    let n = ring.nvars();
    (0..a.entries.len()).all(|r| {
        (0..b.source_degrees.len()).all(|c| {
            let mut sum = MultiPolynomial::zero(field, n);
            for (m, row) in b.entries.iter().enumerate() {
                sum = sum.add(&a.entries[r][m].mul(&row[c]));
            }
            ring.reduce(&sum).is_zero()
        })
    })
}

/// Consistency of one internal degree with the Hilbert function of the module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EulerColumn {
    pub degree: u32,
    /// `Σ_i (-1)^i dim (F_i)_j`
    pub alternating_sum: i64,
    pub module_dimension: i64,
}

impl EulerColumn {
    pub fn holds(&self) -> bool {
        self.alternating_sum == self.module_dimension
    }
}

/// A minimal free resolution truncated at homological degree `h` and
/// internal degree `D`.
pub struct Resolution<'r, F: Field> {
    ring: &'r QuotientRing<F>,
    h: usize,
    bound: u32,
    levels: Vec<Level<F>>,
    betti: BettiTable,
    /// Last internal degree processed at every homological degree.
    finished_through: Option<u32>,
}

/// Minimal resolution of `module` through homological degree `h` and
/// internal degree `d`.
pub fn minimal_resolution<'r, F: Field>(
    module: &GradedModulePresentation<'r, F>,
    h: usize,
    d: u32,
) -> Result<Resolution<'r, F>> {
    resolve_until(module, h, d, |_, _, _| false)
}

/// Like [`minimal_resolution`], but stops right after the first cell for
/// which `stop(i, j, β_{i,j})` returns true. Cells are produced with `j`
/// increasing and, within one `j`, `i` increasing.
pub fn resolve_until<'r, F: Field>(
    module: &GradedModulePresentation<'r, F>,
    h: usize,
    d: u32,
    stop: impl FnMut(usize, u32, u64) -> bool,
) -> Result<Resolution<'r, F>> {
    let ring = module.ring;
    if d > ring.degree_bound {
        return Err(Error::DegreeBoundExceeded(format!(
            "internal degree {d} requested, ring slices prepared through {}",
            ring.degree_bound
        )));
    }
    let (degrees, rels, rel_degrees) = module.pruned();
    let min_deg = degrees.iter().copied().min().unwrap_or(0);
    let mut res = Resolution {
        ring,
        h,
        bound: d,
        levels: Vec::new(),
        betti: BettiTable {
            computed: BTreeMap::new(),
            homological_bound: h,
            degree_bound: d,
            min_generator_degree: min_deg,
            stopped_at: None,
        },
        finished_through: None,
    };
    res.levels.push(Level::new(degrees));
    for _ in 1..=h {
        res.levels.push(Level::new(Vec::new()));
    }
    let rel_vectors: Vec<(u32, SparseVec<F::Elem>)> = rel_degrees
        .iter()
        .zip(&rels)
        .filter(|(&rd, _)| rd <= d)
        .map(|(&rd, col)| (rd, res.column_to_vector(0, rd, col)))
        .collect();
    res.run(&rel_vectors, stop);
    Ok(res)
}

impl<'r, F: Field> Resolution<'r, F> {
    fn field(&self) -> &F {
        self.ring.field()
    }

    fn layout(&self, level: usize, j: u32) -> Layout {
        let mut blocks = Vec::new();
        let mut total = 0;
        for (k, &a) in self.levels[level].degrees.iter().enumerate() {
            if a > j {
                break;
            }
            blocks.push((k, total, j - a));
            total += self.ring.dim(j - a);
        }
        Layout { blocks, total }
    }

    fn column_to_vector(&self, level: usize, j: u32, col: &[MultiPolynomial<F>]) -> SparseVec<F::Elem> {
        let layout = self.layout(level, j);
        let mut out = Vec::new();
        for &(k, start, sd) in &layout.blocks {
            if !col[k].is_zero() {
                out.extend(
                    self.ring
                        .coordinates(&col[k], sd)
                        .into_iter()
                        .map(|(i, c)| (start + i, c)),
                );
            }
        }
        out
    }

    /// `x_v * vec` for `vec` in the degree-`j` part of `level`.
    fn times_var(&self, level: usize, j: u32, v: usize, vec: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let src = self.layout(level, j);
        let dst = self.layout(level, j + 1);
        let mut acc = BTreeMap::new();
        for (flat, c) in vec {
            let b = src.locate(*flat);
            let (_, start, sd) = src.blocks[b];
            let image = &self.ring.slices[sd as usize].times_var[v][flat - start];
            let shift = dst.blocks[b].1;
            let shifted: Vec<(usize, F::Elem)> =
                image.iter().map(|(i, x)| (shift + i, x.clone())).collect();
            axpy(self.field(), &mut acc, c, &shifted);
        }
        to_sparse(self.field(), acc)
    }

    /// Images of the degree-`j` basis of `level` under the map given by
    /// `images`, reusing the degree `j - 1` columns `prev`.
    fn column_slice(
        &self,
        level: usize,
        j: u32,
        images: &[SparseVec<F::Elem>],
        prev: Option<&Vec<SparseVec<F::Elem>>>,
    ) -> Vec<SparseVec<F::Elem>> {
        let layout = self.layout(level, j);
        let prev_layout = (j > 0).then(|| self.layout(level, j - 1));
        let mut out = Vec::with_capacity(layout.total);
        for (b, &(k, _, sd)) in layout.blocks.iter().enumerate() {
            if sd == 0 {
                out.push(images[k].clone());
                continue;
            }
            let prev = prev.expect("previous degree computed");
            let prev_start = prev_layout.as_ref().expect("j > 0").blocks[b].1;
            for m in &self.ring.slices[sd as usize].basis {
                let v = m.support().next().expect("positive degree");
                let quotient = m.div(&Monomial::var(m.nvars(), v)).expect("v divides m");
                let idx = self.ring.slices[sd as usize - 1].index[&quotient];
                out.push(self.times_var(level - 1, j - 1, v, &prev[prev_start + idx]));
            }
        }
        out
    }

    fn run(
        &mut self,
        rel_vectors: &[(u32, SparseVec<F::Elem>)],
        mut stop: impl FnMut(usize, u32, u64) -> bool,
    ) {
        let nvars = self.ring.nvars();
        for j in 0..=self.bound {
            for i in 0..=self.h {
                let beta = if i == 0 {
                    self.levels[0].degrees.iter().filter(|&&a| a == j).count()
                } else {
                    // products of the previous degree's submodule with variables
                    let mut echelon = Echelon::new(self.field(), false);
                    if j > 0 {
                        for b in &self.levels[i - 1].sub[j as usize - 1] {
                            for v in 0..nvars {
                                let p = self.times_var(i - 1, j - 1, v, b);
                                echelon.insert(&p, 0);
                            }
                        }
                    }
                    let candidates: Vec<SparseVec<F::Elem>> = if i == 1 {
                        rel_vectors
                            .iter()
                            .filter(|(rd, _)| *rd == j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    } else {
                        let cols = self.column_slice(
                            i - 1,
                            j,
                            &self.levels[i - 1].images,
                            self.levels[i - 1].cols.last(),
                        );
                        let ker = kernel(self.field(), &cols);
                        self.levels[i - 1].cols.push(cols);
                        ker
                    };
                    let mut fresh = Vec::new();
                    for z in &candidates {
                        if let Inserted::Independent = echelon.insert(z, 0) {
                            fresh.push(z.clone());
                        }
                    }
                    let basis = if i == 1 { echelon.basis() } else { candidates };
                    self.levels[i - 1].sub.push(basis);
                    let count = fresh.len();
                    for z in fresh {
                        self.levels[i].degrees.push(j);
                        self.levels[i].images.push(z);
                    }
                    count
                };
                self.betti.computed.insert((i, j), beta as u64);
                if stop(i, j, beta as u64) {
                    self.betti.stopped_at = Some((i, j));
                    return;
                }
            }
            self.finished_through = Some(j);
        }
    }

    pub fn ring(&self) -> &'r QuotientRing<F> {
        self.ring
    }

    pub fn betti(&self) -> &BettiTable {
        &self.betti
    }

    pub fn homological_bound(&self) -> usize {
        self.h
    }

    pub fn degree_bound(&self) -> u32 {
        self.bound
    }

    /// Generator degrees of `F_i`.
    pub fn generator_degrees(&self, i: usize) -> &[u32] {
        &self.levels[i].degrees
    }

    fn vector_to_column(&self, level: usize, j: u32, vec: &[(usize, F::Elem)]) -> Vec<MultiPolynomial<F>> {
        let layout = self.layout(level, j);
        let n = self.ring.nvars();
        let mut col: Vec<MultiPolynomial<F>> = (0..self.levels[level].degrees.len())
            .map(|_| MultiPolynomial::zero(self.field(), n))
            .collect();
        for (b, &(k, start, sd)) in layout.blocks.iter().enumerate() {
            let end = layout.blocks.get(b + 1).map_or(layout.total, |x| x.1);
            let coords: Vec<(usize, F::Elem)> = vec
                .iter()
                .filter(|(f, _)| *f >= start && *f < end)
                .map(|(f, c)| (f - start, c.clone()))
                .collect();
            col[k] = self.ring.element(sd, &coords);
        }
        col
    }

    fn matrix_from_images(&self, i: usize, images: &[SparseVec<F::Elem>]) -> DifferentialMatrix<F> {
        let source = self.levels[i].degrees.clone();
        let target = self.levels[i - 1].degrees.clone();
        let n = self.ring.nvars();
        let mut entries: Vec<Vec<MultiPolynomial<F>>> = target
            .iter()
            .map(|_| source.iter().map(|_| MultiPolynomial::zero(self.field(), n)).collect())
            .collect();
        for (k, img) in images.iter().enumerate() {
            for (row, p) in self.vector_to_column(i - 1, source[k], img).into_iter().enumerate() {
                entries[row][k] = p;
            }
        }
        DifferentialMatrix {
            source_degrees: source,
            target_degrees: target,
            entries,
        }
    }

    /// `d_i` for `1 <= i <= h`.
    pub fn differential(&self, i: usize) -> DifferentialMatrix<F> {
        self.matrix_from_images(i, &self.levels[i].images)
    }

    /// Entries of degree one of `d_i`; everything else is zeroed.
    fn linear_images(&self, i: usize) -> Vec<SparseVec<F::Elem>> {
        let level = &self.levels[i];
        level
            .images
            .iter()
            .zip(&level.degrees)
            .map(|(img, &a)| {
                let layout = self.layout(i - 1, a);
                img.iter()
                    .filter(|(f, _)| {
                        let (_, _, sd) = layout.blocks[layout.locate(*f)];
                        sd == 1
                    })
                    .cloned()
                    .collect()
            })
            .collect()
    }

    /// The linear part: `d_1 .. d_h` with every entry of degree other than
    /// one replaced by zero.
    pub fn linear_part(&self) -> Vec<DifferentialMatrix<F>> {
        (1..=self.h)
            .map(|i| self.matrix_from_images(i, &self.linear_images(i)))
            .collect()
    }

    /// `d_{i-1} d_i = 0`, checked with polynomial arithmetic on the matrices.
    pub fn check_d_squared(&self) -> bool {
        (2..=self.h).all(|i| {
            composition_vanishes(self.ring, &self.differential(i - 1), &self.differential(i))
        })
    }

    /// The linear part squares to zero.
    pub fn check_linear_part_squared(&self) -> bool {
        let lin = self.linear_part();
        lin.windows(2).all(|w| composition_vanishes(self.ring, &w[0], &w[1]))
    }

    /// No differential entry has a nonzero constant term.
    pub fn check_minimal(&self) -> bool {
        (1..=self.h).all(|i| {
            let level = &self.levels[i];
            level.images.iter().zip(&level.degrees).all(|(img, &a)| {
                let layout = self.layout(i - 1, a);
                img.iter().all(|(f, _)| layout.blocks[layout.locate(*f)].2 > 0)
            })
        })
    }

    /// Degrees `j` where all nonzero `(F_i)_j` lie within the truncation,
    /// compared with the Hilbert function of the module.
    pub fn euler_characteristic(&self) -> Vec<EulerColumn> {
        let Some(done) = self.finished_through else { return Vec::new() };
        if self.h == 0 {
            return Vec::new();
        }
        let min_deg = self.betti.min_generator_degree;
        (0..=done)
            .filter(|&j| j <= self.h as u32 + min_deg)
            .map(|j| {
                let alternating_sum = (0..=self.h)
                    .map(|i| {
                        let dim = self.layout(i, j).total as i64;
                        if i % 2 == 0 { dim } else { -dim }
                    })
                    .sum();
                let module_dimension =
                    self.layout(0, j).total as i64 - self.levels[0].sub[j as usize].len() as i64;
                EulerColumn {
                    degree: j,
                    alternating_sum,
                    module_dimension,
                }
            })
            .collect()
    }

    /// `dim_k M_j` for `j <= D`.
    pub fn module_hilbert_function(&self) -> Vec<usize> {
        let done = self.finished_through.map_or(0, |d| d as usize + 1);
        (0..done.min(self.levels[0].sub.len()))
            .map(|j| self.layout(0, j as u32).total - self.levels[0].sub[j].len())
            .collect()
    }

    /// `dim H_i(lin F)_j` for `i <= h - 1`, `j <= D`, nonzero entries only.
    pub fn linear_homology(&self) -> BTreeMap<(usize, u32), usize> {
        let Some(done) = self.finished_through else { return BTreeMap::new() };
        // ranks[i][j] of the linear part of d_i in degree j
        let mut ranks: Vec<Vec<usize>> = vec![vec![0; done as usize + 1]; self.h + 1];
        for i in 1..=self.h {
            let images = self.linear_images(i);
            let mut prev: Option<Vec<SparseVec<F::Elem>>> = None;
            for j in 0..=done {
                let cols = self.column_slice(i, j, &images, prev.as_ref());
                ranks[i][j as usize] = rank(self.field(), &cols);
                prev = Some(cols);
            }
        }
        let mut out = BTreeMap::new();
        for i in 0..self.h {
            for j in 0..=done {
                let dim = self.layout(i, j).total;
                let cycles = dim - ranks[i][j as usize];
                let homology = cycles - ranks[i + 1][j as usize];
                if homology > 0 {
                    out.insert((i, j), homology);
                }
            }
        }
        out
    }
}

/// Outcome of [`koszul_check`].
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KoszulReport {
    /// `β_{i,j}(k) = 0` for all certified `i ≠ j`.
    pub koszul_within_bounds: bool,
    pub offending_cell: Option<(usize, u32)>,
    pub betti: BettiTable,
}

/// Resolves the residue field and looks for a nonzero `β_{i,j}` with
/// `i ≠ j`, stopping at the first one.
pub fn koszul_check<F: Field>(ring: &QuotientRing<F>, h: usize, d: u32) -> Result<KoszulReport> {
    if (d as usize) < h {
        return Err(Error::DegreeBoundExceeded(format!(
            "koszul check needs D >= h, got D = {d}, h = {h}"
        )));
    }
    let k = GradedModulePresentation::residue_field(ring);
    let res = resolve_until(&k, h, d, |i, j, b| b != 0 && i as u32 != j)?;
    let offending = res.betti().stopped_at();
    Ok(KoszulReport {
        koszul_within_bounds: offending.is_none(),
        offending_cell: offending,
        betti: res.betti().clone(),
    })
}

/// Outcome of [`golod_map_check`].
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GolodReport {
    pub source_koszul: KoszulReport,
    /// `t_i` of the target over the source.
    pub t: Vec<TBound>,
    /// First cell with `β_{i,j} ≠ 0` and `j > i + 1`.
    pub violation: Option<(usize, u32)>,
    pub golod_within_bounds: bool,
    pub betti: BettiTable,
}

/// Tests `Q -> Q/(extra)` for being Golod with Koszul source: `Q` Koszul
/// and `t_i ≤ i + 1` in every certified row `i ≤ h`.
pub fn golod_map_check<F: Field>(
    q: &QuotientRing<F>,
    extra: &[MultiPolynomial<F>],
    h: usize,
    d: u32,
) -> Result<GolodReport> {
    for g in extra {
        let nf = q.reduce(g);
        if !nf.is_homogeneous() || nf.degree().is_some_and(|e| e < 2) {
            return Err(Error::InvalidInput(
                "extra generators must be homogeneous of degree at least 2".into(),
            ));
        }
    }
    let source_koszul = koszul_check(q, h, d)?;
    let r = GradedModulePresentation::cyclic(q, extra)?;
    let res = minimal_resolution(&r, h, d)?;
    let betti = res.betti().clone();
    let violation = betti
        .nonzero_cells()
        .into_iter()
        .find(|&(i, j, _)| j > i as u32 + 1)
        .map(|(i, j, _)| (i, j));
    Ok(GolodReport {
        golod_within_bounds: source_koszul.koszul_within_bounds && violation.is_none(),
        t: (0..=h).map(|i| betti.t(i)).collect(),
        source_koszul,
        violation,
        betti,
    })
}

/// Bivariate series `Σ c_{i,j} s^j z^i` truncated to internal degree `j ≤ bound`.
type Series2 = BTreeMap<(usize, u32), BigInt>;

fn poincare_series(table: &BettiTable, bound: u32) -> Result<Series2> {
    let mut out = Series2::new();
    for j in 0..=bound {
        for i in 0..=j as usize {
            let b = table.get(i, j).ok_or(Error::IncompleteTable { i, j: j as i64 })?;
            if b != 0 {
                out.insert((i, j), BigInt::from(b));
            }
        }
    }
    Ok(out)
}

fn series_mul(a: &Series2, b: &Series2, bound: u32) -> Series2 {
    let mut out = Series2::new();
    for (&(i1, j1), c1) in a {
        for (&(i2, j2), c2) in b {
            let (i, j) = (i1 + i2, j1 + j2);
            if j <= bound {
                *out.entry((i, j)).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Comparison of `P^R_k` with `P^Q_k / (1 - z (P^Q_R - 1))`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SerreReport {
    pub total_degree_bound: u32,
    pub inequality_holds: bool,
    pub equality_holds: bool,
    /// First `(i, j)` where the two sides differ.
    pub first_difference: Option<(usize, u32)>,
}

/// Coefficientwise comparison in every `s^j z^i` with `j ≤ bound`.
///
/// The bound is on the internal degree `j`. All three modules are cyclic in
/// degree 0, so only `i ≤ j` occurs and each table must be complete for
/// `i ≤ j ≤ bound`.
pub fn serre_check(
    k_over_q: &BettiTable,
    r_over_q: &BettiTable,
    k_over_r: &BettiTable,
    bound: u32,
) -> Result<SerreReport> {
    let pkq = poincare_series(k_over_q, bound)?;
    let mut prq = poincare_series(r_over_q, bound)?;
    let pkr = poincare_series(k_over_r, bound)?;
    // z (P^Q_R - 1)
    *prq.entry((0, 0)).or_insert_with(BigInt::zero) -= BigInt::one();
    prq.retain(|_, c| !c.is_zero());
    let step: Series2 = prq
        .into_iter()
        .filter(|&((_, j), _)| j <= bound)
        .map(|((i, j), c)| ((i + 1, j), c))
        .collect();
    // 1 / (1 - step) as a geometric series; step has internal degree >= 2
    let mut inverse = Series2::from([((0, 0), BigInt::one())]);
    let mut power = inverse.clone();
    for _ in 0..bound {
        power = series_mul(&power, &step, bound);
        if power.is_empty() {
            break;
        }
        for (k, c) in &power {
            *inverse.entry(*k).or_insert_with(BigInt::zero) += c;
        }
    }
    let rhs = series_mul(&pkq, &inverse, bound);
    let zero = BigInt::zero();
    let mut inequality = true;
    let mut first = None;
    for j in 0..=bound {
        for i in 0..=j as usize {
            let l = pkr.get(&(i, j)).unwrap_or(&zero);
            let r = rhs.get(&(i, j)).unwrap_or(&zero);
            if l != r {
                first = first.or(Some((i, j)));
                inequality &= l < r;
            }
        }
    }
    Ok(SerreReport {
        total_degree_bound: bound,
        inequality_holds: inequality,
        equality_holds: first.is_none(),
        first_difference: first,
    })
}

/// Lower bound for `lind_R M = sup{i : H_i(lin F) ≠ 0}` from a truncation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LinearityReport {
    pub lind_lower_bound: usize,
    /// Homology vanishes in every row above the bound up to `h - 1`, in all
    /// internal degrees up to `D`.
    pub stable_up_to_bounds: bool,
    /// `(i, j)` with `H_i(lin F)_j ≠ 0` and `i` the bound.
    pub homology_witness: Option<(usize, u32)>,
    /// Nonzero `dim H_i(lin F)_j`, as `(i, j, dim)`.
    pub homology: Vec<(usize, u32, usize)>,
}

/// Linearity defect of `module` as far as `(h, D)` reaches.
pub fn linearity_defect<F: Field>(
    module: &GradedModulePresentation<'_, F>,
    h: usize,
    d: u32,
) -> Result<LinearityReport> {
    if h == 0 {
        return Err(Error::DegreeBoundExceeded("linearity defect needs h >= 1".into()));
    }
    let res = minimal_resolution(module, h, d)?;
    Ok(linearity_report(&res))
}

pub fn linearity_report<F: Field>(res: &Resolution<'_, F>) -> LinearityReport {
    let homology = res.linear_homology();
    let witness = homology.keys().max_by_key(|&&(i, j)| (i, std::cmp::Reverse(j))).copied();
    let lind = witness.map_or(0, |(i, _)| i);
    LinearityReport {
        lind_lower_bound: lind,
        stable_up_to_bounds: lind + 1 < res.homological_bound(),
        homology_witness: witness,
        homology: homology.into_iter().map(|((i, j), d)| (i, j, d)).collect(),
    }
}
