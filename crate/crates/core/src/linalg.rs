//! Sparse exact linear algebra: incremental row echelon forms with optional
//! tracking of the combinations that produced each row.

use std::collections::BTreeMap;

use crate::field::Field;

/// Sorted by index, no zero entries.
pub(crate) type SparseVec<E> = Vec<(usize, E)>;

pub(crate) fn to_sparse<F: Field>(field: &F, map: BTreeMap<usize, F::Elem>) -> SparseVec<F::Elem> {
    map.into_iter().filter(|(_, c)| !field.is_zero(c)).collect()
}

/// `acc += c * v`, dropping cancelled entries.
pub(crate) fn axpy<F: Field>(
    field: &F,
    acc: &mut BTreeMap<usize, F::Elem>,
    c: &F::Elem,
    v: &[(usize, F::Elem)],
) {
    for (k, x) in v {
        let prod = field.mul(c, x);
        match acc.get_mut(k) {
            Some(old) => {
                let s = field.add(old, &prod);
                if field.is_zero(&s) {
                    acc.remove(k);
                } else {
                    *old = s;
                }
            }
            None => {
                if !field.is_zero(&prod) {
                    acc.insert(*k, prod);
                }
            }
        }
    }
}

struct Row<E> {
    /// Entry at the pivot is one; all entries lie at or after the pivot.
    vector: SparseVec<E>,
    combination: SparseVec<E>,
}

/// Row echelon form built one vector at a time.
pub(crate) struct Echelon<F: Field> {
    field: F,
    rows: BTreeMap<usize, Row<F::Elem>>,
    track: bool,
}

pub(crate) enum Inserted<E> {
    Independent,
    /// The inserted vector minus this combination of earlier tags is zero.
    Dependent(SparseVec<E>),
}

impl<F: Field> Echelon<F> {
    pub(crate) fn new(field: &F, track: bool) -> Self {
        Echelon {
            field: field.clone(),
            rows: BTreeMap::new(),
            track,
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts `v` tagged with `tag`; a dependent vector yields the tag
    /// combination that reduces it to zero (including `tag` itself).
    pub(crate) fn insert(&mut self, v: &[(usize, F::Elem)], tag: usize) -> Inserted<F::Elem> {
        let field = &self.field;
        let mut work: BTreeMap<usize, F::Elem> = v.iter().cloned().collect();
        let mut combination: BTreeMap<usize, F::Elem> = BTreeMap::new();
        if self.track {
            combination.insert(tag, field.one());
        }
        let mut cursor = 0;
        loop {
            let next = work
                .range(cursor..)
                .find(|(k, _)| self.rows.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((pivot, c)) = next else { break };
            let row = &self.rows[&pivot];
            let minus_c = field.neg(&c);
            axpy(field, &mut work, &minus_c, &row.vector);
            if self.track {
                axpy(field, &mut combination, &minus_c, &row.combination);
            }
            cursor = pivot + 1;
        }
        match work.iter().next().map(|(k, c)| (*k, c.clone())) {
            None => Inserted::Dependent(to_sparse(field, combination)),
            Some((pivot, lead)) => {
                let inv = field.inv(&lead);
                let scale = |m: BTreeMap<usize, F::Elem>| -> SparseVec<F::Elem> {
                    m.into_iter().map(|(k, x)| (k, field.mul(&inv, &x))).collect()
                };
                let row = Row {
                    vector: scale(work),
                    combination: if self.track { scale(combination) } else { Vec::new() },
                };
                self.rows.insert(pivot, row);
                Inserted::Independent
            }
        }
    }

    /// Whether `v` lies in the span, without modifying it.
    #[cfg(test)]
    pub(crate) fn contains(&self, v: &[(usize, F::Elem)]) -> bool {
        let field = &self.field;
        let mut work: BTreeMap<usize, F::Elem> = v.iter().cloned().collect();
        let mut cursor = 0;
        loop {
            let next = work
                .range(cursor..)
                .find(|(k, _)| self.rows.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((pivot, c)) = next else { break };
            axpy(field, &mut work, &field.neg(&c), &self.rows[&pivot].vector);
            cursor = pivot + 1;
        }
        work.is_empty()
    }

    /// Basis of the span, in pivot order.
    pub(crate) fn basis(&self) -> Vec<SparseVec<F::Elem>> {
        self.rows.values().map(|r| r.vector.clone()).collect()
    }
}

/// Basis of the kernel of the map sending tag `c` to `columns[c]`.
pub(crate) fn kernel<F: Field>(field: &F, columns: &[SparseVec<F::Elem>]) -> Vec<SparseVec<F::Elem>> {
    let mut e = Echelon::new(field, true);
    columns
        .iter()
        .enumerate()
        .filter_map(|(c, v)| match e.insert(v, c) {
            Inserted::Dependent(comb) => Some(comb),
            Inserted::Independent => None,
        })
        .collect()
}

pub(crate) fn rank<F: Field>(field: &F, columns: &[SparseVec<F::Elem>]) -> usize {
    let mut e = Echelon::new(field, false);
    for (c, v) in columns.iter().enumerate() {
        e.insert(v, c);
    }
    e.rank()
}
