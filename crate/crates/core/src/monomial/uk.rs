use serde::{Deserialize, Serialize};

use super::graph::VarGraph;
use super::{fibre_product, Monomial, MonomialIdeal};

/// Construction of a monomial algebra from the rings
/// `H(m) = k[x_1..x_m]/((x_1..x_{m-1})^2 + (x_m^2))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum UkDerivation {
    /// `H(m)` on the listed variables; the last one is `x_m`.
    BaseH { variables: Vec<String> },
    /// `A[x]`
    PolyExt {
        variable: String,
        child: Box<UkDerivation>,
    },
    /// `A[x]/(x^2)`; needed for the classification only in characteristic 2.
    SquareZeroExt {
        variable: String,
        child: Box<UkDerivation>,
    },
    /// Fibre product over `k` of the children.
    FibreProduct { children: Vec<UkDerivation> },
}

impl UkDerivation {
    /// `m` for a `BaseH` node.
    pub fn base_size(&self) -> Option<usize> {
        match self {
            UkDerivation::BaseH { variables } => Some(variables.len()),
            _ => None,
        }
    }

    /// The defining ideal produced by the construction, with variables in
    /// construction order.
    pub fn replay(&self) -> MonomialIdeal {
        match self {
            UkDerivation::BaseH { variables } => {
                let m = variables.len();
                let mut gens = Vec::new();
                for i in 0..m.saturating_sub(1) {
                    for j in i..m - 1 {
                        gens.push(Monomial::product_of(m, i, j));
                    }
                }
                if m > 0 {
                    gens.push(Monomial::product_of(m, m - 1, m - 1));
                }
                MonomialIdeal::new(variables.clone(), gens)
            }
            UkDerivation::PolyExt { variable, child } => extend(child.replay(), variable, false),
            UkDerivation::SquareZeroExt { variable, child } => {
                extend(child.replay(), variable, true)
            }
            UkDerivation::FibreProduct { children } => {
                let mut parts = children.iter().map(UkDerivation::replay);
                let first = parts.next().unwrap_or_else(|| MonomialIdeal::zero(Vec::new()));
                parts.fold(first, |acc, p| {
                    fibre_product(&acc, &p).expect("components use disjoint variables")
                })
            }
        }
    }

    pub fn render(&self) -> String {
        match self {
            UkDerivation::BaseH { variables } => {
                format!("H({})[{}]", variables.len(), variables.join(","))
            }
            UkDerivation::PolyExt { variable, child } => {
                format!("PolyExt({variable}, {})", child.render())
            }
            UkDerivation::SquareZeroExt { variable, child } => {
                format!("SquareZeroExt({variable}, {})", child.render())
            }
            UkDerivation::FibreProduct { children } => format!(
                "FibreProduct({})",
                children.iter().map(UkDerivation::render).collect::<Vec<_>>().join(", ")
            ),
        }
    }
}

fn extend(ideal: MonomialIdeal, variable: &str, square: bool) -> MonomialIdeal {
    let n = ideal.nvars() + 1;
    let mut names = ideal.variables().to_vec();
    names.push(variable.to_string());
    let mut gens: Vec<Monomial> = ideal.generators().iter().map(|g| g.padded(n)).collect();
    if square {
        gens.push(Monomial::product_of(n, n - 1, n - 1));
    }
    MonomialIdeal::new(names, gens)
}

/// Reorders `ideal` onto the variable order `names` (a permutation).
fn permuted(ideal: &MonomialIdeal, names: &[String]) -> Option<MonomialIdeal> {
    let map: Option<Vec<usize>> = names.iter().map(|n| ideal.var_index(n)).collect();
    let map = map?;
    let gens = ideal
        .generators()
        .iter()
        .map(|g| Monomial::new(map.iter().map(|&i| g.exponents()[i]).collect()))
        .collect::<Vec<_>>();
    Some(MonomialIdeal::new(names.to_vec(), gens))
}

/// Recognizes quadratic monomial algebras built from the `H(m)` by
/// polynomial extensions, square-zero extensions and fibre products.
///
/// Rules, first match wins: (i) a variable absent from every generator is a
/// polynomial extension; (iv) the ideal is `H(m)` up to relabelling; (ii) a
/// variable `x` with `x^2` in the ideal and in no other generator is a
/// square-zero extension; (iii) a disconnected graph `u ~ v iff uv` not in
/// the ideal splits into a fibre product of its components. Returns `None`
/// when nothing applies or the ideal is not quadratic. The derivation is
/// replayed against the input before it is returned.
pub fn uk_recognize(ideal: &MonomialIdeal) -> Option<UkDerivation> {
    if !ideal.is_quadratic() {
        return None;
    }
    let derivation = recognize(ideal)?;
    let replayed = derivation.replay();
    let aligned = permuted(ideal, replayed.variables())?;
    aligned.same_ideal(&replayed).then_some(derivation)
}

fn recognize(ideal: &MonomialIdeal) -> Option<UkDerivation> {
    let n = ideal.nvars();
    let gens = ideal.generators();
    let names = ideal.variables();

    // (i) polynomial extension: peel off the last absent variable
    if let Some(v) = (0..n).rev().find(|&v| gens.iter().all(|g| g.exponents()[v] == 0)) {
        let rest: Vec<usize> = (0..n).filter(|&i| i != v).collect();
        let child = recognize(&ideal.restrict(&rest))?;
        return Some(UkDerivation::PolyExt {
            variable: names[v].clone(),
            child: Box::new(child),
        });
    }

    // (iv) H(m)
    if let Some(order) = match_h(ideal) {
        return Some(UkDerivation::BaseH {
            variables: order.iter().map(|&i| names[i].clone()).collect(),
        });
    }

    // (ii) square-zero extension
    let square_only = (0..n).rev().find(|&v| {
        let sq = Monomial::product_of(n, v, v);
        gens.contains(&sq) && gens.iter().all(|g| *g == sq || g.exponents()[v] == 0)
    });
    if let Some(v) = square_only {
        let rest: Vec<usize> = (0..n).filter(|&i| i != v).collect();
        let child = recognize(&ideal.restrict(&rest))?;
        return Some(UkDerivation::SquareZeroExt {
            variable: names[v].clone(),
            child: Box::new(child),
        });
    }

    // (iii) fibre product
    let mut graph = VarGraph::new(names.to_vec());
    for u in 0..n {
        for v in u + 1..n {
            if !ideal.contains(&Monomial::product_of(n, u, v)) {
                graph.add_edge(u, v);
            }
        }
    }
    let components = graph.components();
    if components.len() > 1 {
        let children = components
            .iter()
            .map(|c| recognize(&ideal.restrict(c)))
            .collect::<Option<Vec<_>>>()?;
        return Some(UkDerivation::FibreProduct { children });
    }
    None
}

/// A labelling showing `ideal = (x_1..x_{m-1})^2 + (x_m^2)`, with every
/// variable occurring in some generator. Returns variable indices with
/// `x_m` last.
fn match_h(ideal: &MonomialIdeal) -> Option<Vec<usize>> {
    let n = ideal.nvars();
    if n == 0 {
        return ideal.is_zero().then(Vec::new);
    }
    let expected = n * (n - 1) / 2 + 1;
    if ideal.generators().len() != expected {
        return None;
    }
    // x_m: its square is a generator and it appears in nothing else.
    let last = (0..n).rev().find(|&v| {
        let sq = Monomial::product_of(n, v, v);
        ideal.generators().contains(&sq)
            && (0..n)
                .filter(|&u| u != v)
                .all(|u| !ideal.contains(&Monomial::product_of(n, u, v)))
    })?;
    let others: Vec<usize> = (0..n).filter(|&u| u != last).collect();
    let all_present = others.iter().all(|&u| {
        others
            .iter()
            .all(|&w| ideal.generators().contains(&Monomial::product_of(n, u, w)))
    });
    if !all_present {
        return None;
    }
    let mut order = others;
    order.push(last);
    Some(order)
}
