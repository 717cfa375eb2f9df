use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::graph::{is_chordal, nonedge_graph, Chordality};
use super::{is_monomial_regular_sequence, monomial_colon, polarize, Monomial, MonomialIdeal};
use crate::error::{Error, Result};

/// Largest generator count `ci_plus_two_linear` will search by default.
pub const DEFAULT_SEARCH_CAP: usize = 24;

/// Froberg evidence for (non-)linearity of a quadratic monomial ideal: the
/// chordality outcome for the non-edge graph of its polarization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LinearityWitness {
    pub polarized_variables: Vec<String>,
    pub polarized_generators: Vec<String>,
    pub chordality: Chordality,
}

impl LinearityWitness {
    pub fn holds(&self) -> bool {
        self.chordality.is_chordal()
    }

    /// Recomputes the polarization of `ideal` and checks that the stored
    /// ordering is a perfect elimination ordering of its non-edge graph.
    pub fn replays_for(&self, ideal: &MonomialIdeal) -> bool {
        let Ok(polarized) = polarize(ideal) else {
            return false;
        };
        let Ok(graph) = nonedge_graph(&polarized) else {
            return false;
        };
        if polarized.variables() != self.polarized_variables.as_slice() {
            return false;
        }
        match &self.chordality {
            Chordality::PerfectEliminationOrdering(names) => {
                let order: Option<Vec<usize>> = names
                    .iter()
                    .map(|n| graph.vertices().iter().position(|v| v == n))
                    .collect();
                match order {
                    Some(order) if order.len() == graph.len() => {
                        let mut sorted = order.clone();
                        sorted.sort_unstable();
                        sorted.dedup();
                        sorted.len() == graph.len() && graph.is_perfect_elimination_order(&order)
                    }
                    _ => false,
                }
            }
            Chordality::ChordlessCycle(_) => !is_chordal(&graph).is_chordal(),
        }
    }
}

/// Decides whether a quadratic monomial ideal has a 2-linear resolution:
/// polarize, take the non-edge graph, test chordality.
pub fn has_two_linear_resolution(ideal: &MonomialIdeal) -> Result<LinearityWitness> {
    let polarized = polarize(ideal)?;
    let graph = nonedge_graph(&polarized)?;
    Ok(LinearityWitness {
        polarized_variables: polarized.variables().to_vec(),
        polarized_generators: polarized.rendered_generators(),
        chordality: is_chordal(&graph),
    })
}

fn colon_is_linear(ideal: &MonomialIdeal, previous: &[Monomial], m: &Monomial) -> bool {
    let prefix = MonomialIdeal::new(ideal.variables().to_vec(), previous.iter().cloned());
    monomial_colon(&prefix, m)
        .generators()
        .iter()
        .all(|g| g.degree() == 1)
}

/// A labelling `m_1..m_d` of the generators with every colon
/// `(m_1..m_{i-1}) : m_i` generated by variables, or `None`.
///
/// Depth-first search in generator order; dead prefixes are memoized by the
/// set of generators used, since the colon condition only sees that set.
pub fn linear_quotients_order(ideal: &MonomialIdeal) -> Option<Vec<Monomial>> {
    let gens = ideal.generators();
    let d = gens.len();
    assert!(d <= 64, "linear quotients search supports at most 64 generators");
    let full = if d == 64 { u64::MAX } else { (1u64 << d) - 1 };

    fn search(
        ideal: &MonomialIdeal,
        used: u64,
        full: u64,
        order: &mut Vec<Monomial>,
        dead: &mut HashSet<u64>,
    ) -> bool {
        if used == full {
            return true;
        }
        if dead.contains(&used) {
            return false;
        }
        for (i, m) in ideal.generators().iter().enumerate() {
            if used & (1 << i) != 0 {
                continue;
            }
            if order.is_empty() || colon_is_linear(ideal, order, m) {
                order.push(m.clone());
                if search(ideal, used | (1 << i), full, order, dead) {
                    return true;
                }
                order.pop();
            }
        }
        dead.insert(used);
        false
    }

    let mut order = Vec::with_capacity(d);
    search(ideal, 0, full, &mut order, &mut HashSet::new()).then_some(order)
}

/// Evidence that `S/(U+V)` has the Backelin-Roos property: `U` is generated
/// by pairwise coprime quadrics and `V` has a 2-linear resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BrCertificate {
    pub ci_part: MonomialIdeal,
    pub linear_part: MonomialIdeal,
    pub linear_witness: LinearityWitness,
    /// Linear-quotients labelling of the linear part's generators.
    pub linear_quotients: Option<Vec<String>>,
    pub note: String,
}

impl BrCertificate {
    /// Re-checks every claim against the original ideal.
    pub fn validate(&self, ideal: &MonomialIdeal) -> bool {
        let mut union = self.ci_part.generators().to_vec();
        union.extend(self.linear_part.generators().iter().cloned());
        let regenerated = MonomialIdeal::new(ideal.variables().to_vec(), union);
        is_monomial_regular_sequence(self.ci_part.generators())
            && regenerated.same_ideal(ideal)
            && self.linear_witness.holds()
            && self.linear_witness.replays_for(&self.linear_part)
    }
}

/// Searches splits of the minimal generators into a complete-intersection
/// part `U` and a 2-linear part `V`.
///
/// Search order: first the split where `U` holds exactly the generators
/// coprime to every other generator (a tensor factor of complete
/// intersections); then every pairwise coprime `U`, largest first, ties
/// broken lexicographically by generator position.
pub fn ci_plus_two_linear(ideal: &MonomialIdeal) -> Result<Option<BrCertificate>> {
    ci_plus_two_linear_with_cap(ideal, DEFAULT_SEARCH_CAP)
}

pub fn ci_plus_two_linear_with_cap(
    ideal: &MonomialIdeal,
    cap: usize,
) -> Result<Option<BrCertificate>> {
    ideal.require_quadratic()?;
    let gens = ideal.generators();
    if gens.len() > cap {
        return Err(Error::TooManyGenerators {
            count: gens.len(),
            cap,
        });
    }
    let n = gens.len();
    let coprime = |i: usize, j: usize| gens[i].is_coprime(&gens[j]);

    let try_split = |u: &[usize]| -> Result<Option<BrCertificate>> {
        let ci = MonomialIdeal::new(
            ideal.variables().to_vec(),
            u.iter().map(|&i| gens[i].clone()),
        );
        let lin = MonomialIdeal::new(
            ideal.variables().to_vec(),
            (0..n).filter(|i| !u.contains(i)).map(|i| gens[i].clone()),
        );
        let witness = has_two_linear_resolution(&lin)?;
        if !witness.holds() {
            return Ok(None);
        }
        let linear_quotients =
            linear_quotients_order(&lin).map(|o| o.iter().map(|m| lin.render_generator(m)).collect());
        Ok(Some(BrCertificate {
            ci_part: ci,
            linear_part: lin,
            linear_witness: witness,
            linear_quotients,
            note: "certificate search over minimal generators".to_string(),
        }))
    };

    let isolated: Vec<usize> = (0..n)
        .filter(|&i| (0..n).all(|j| j == i || coprime(i, j)))
        .collect();
    if let Some(cert) = try_split(&isolated)? {
        return Ok(Some(cert));
    }

    for size in (0..=n).rev() {
        let mut found = None;
        let mut current = Vec::with_capacity(size);
        cliques_of_size(n, size, 0, &mut current, &coprime, &mut |u| {
            if u == isolated.as_slice() {
                return Ok(false);
            }
            match try_split(u)? {
                Some(cert) => {
                    found = Some(cert);
                    Ok(true)
                }
                None => Ok(false),
            }
        })?;
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Visits pairwise-compatible index sets of the given size in lexicographic
/// order until `visit` returns `true`.
fn cliques_of_size(
    n: usize,
    size: usize,
    start: usize,
    current: &mut Vec<usize>,
    compatible: &dyn Fn(usize, usize) -> bool,
    visit: &mut dyn FnMut(&[usize]) -> Result<bool>,
) -> Result<bool> {
    if current.len() == size {
        return visit(current);
    }
    for i in start..n {
        if n - i < size - current.len() {
            break;
        }
        if current.iter().all(|&j| compatible(i, j)) {
            current.push(i);
            if cliques_of_size(n, size, i + 1, current, compatible, visit)? {
                return Ok(true);
            }
            current.pop();
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(vars: &[&str], gens: &[&str]) -> MonomialIdeal {
        MonomialIdeal::parse(vars, gens).unwrap()
    }

    fn maximal_square(q: usize) -> MonomialIdeal {
        let names: Vec<String> = (1..=q).map(|i| format!("x{i}")).collect();
        let gens = (0..q).flat_map(|i| (i..q).map(move |j| Monomial::product_of(q, i, j)));
        MonomialIdeal::new(names, gens.collect::<Vec<_>>())
    }

    #[test]
    fn two_linear_examples() {
        let i = ideal(&["a", "b", "c", "d"], &["a*d", "a*c", "b*d"]);
        let w = has_two_linear_resolution(&i).unwrap();
        assert!(w.holds());
        assert!(w.replays_for(&i));

        let ci = ideal(&["x1", "x2", "x3", "x4"], &["x1*x3", "x2*x4"]);
        assert!(!has_two_linear_resolution(&ci).unwrap().holds());

        for q in 1..=4 {
            assert!(has_two_linear_resolution(&maximal_square(q)).unwrap().holds());
        }

        let cubic = ideal(&["x"], &["x^3"]);
        assert!(matches!(
            has_two_linear_resolution(&cubic),
            Err(Error::NotQuadratic(_))
        ));
    }

    #[test]
    fn linear_quotients_examples() {
        let i = ideal(&["a", "b", "c", "d"], &["a*d", "a*c", "b*d"]);
        let order = linear_quotients_order(&i).unwrap();
        let rendered: Vec<_> = order.iter().map(|m| i.render_generator(m)).collect();
        assert_eq!(rendered, ["a*d", "a*c", "b*d"]);

        let ci = ideal(&["x1", "x2", "x3", "x4"], &["x1*x3", "x2*x4"]);
        assert!(linear_quotients_order(&ci).is_none());

        let single = ideal(&["x", "y"], &["x*y"]);
        assert_eq!(linear_quotients_order(&single).unwrap().len(), 1);

        assert!(linear_quotients_order(&maximal_square(3)).is_some());
    }

    #[test]
    fn certificate_for_running_example() {
        let i = ideal(&["a", "b", "c", "d"], &["a^2", "b^2", "a*d", "a*c", "b*d"]);
        let cert = ci_plus_two_linear(&i).unwrap().unwrap();
        assert_eq!(cert.ci_part.rendered_generators(), ["a^2", "b^2"]);
        assert_eq!(cert.linear_part.rendered_generators(), ["a*d", "a*c", "b*d"]);
        assert!(cert.validate(&i));
    }

    #[test]
    fn certificate_for_complete_intersection() {
        let ci = ideal(&["x1", "x2", "x3", "x4"], &["x1*x3", "x2*x4"]);
        let cert = ci_plus_two_linear(&ci).unwrap().unwrap();
        assert_eq!(cert.ci_part.generators().len(), 2);
        assert!(cert.linear_part.is_zero());
        assert!(cert.validate(&ci));
    }

    #[test]
    fn certificate_for_h4() {
        let i = ideal(
            &["x1", "x2", "x3", "x4"],
            &["x1^2", "x1*x2", "x1*x3", "x2^2", "x2*x3", "x3^2", "x4^2"],
        );
        let cert = ci_plus_two_linear(&i).unwrap().unwrap();
        assert_eq!(cert.ci_part.rendered_generators(), ["x4^2"]);
        assert!(cert.linear_part.same_ideal(&maximal_square(3).restrict_padded(4)));
        assert!(cert.validate(&i));
    }

    #[test]
    fn certificate_search_cap() {
        let i = ideal(&["a", "b", "c", "d"], &["a^2", "b^2", "a*d", "a*c", "b*d"]);
        assert!(matches!(
            ci_plus_two_linear_with_cap(&i, 4),
            Err(Error::TooManyGenerators { count: 5, cap: 4 })
        ));
    }

    #[test]
    fn tampered_certificate_fails_validation() {
        let i = ideal(&["a", "b", "c", "d"], &["a^2", "b^2", "a*d", "a*c", "b*d"]);
        let mut cert = ci_plus_two_linear(&i).unwrap().unwrap();
        cert.ci_part = ideal(&["a", "b", "c", "d"], &["a^2", "a*d"]);
        assert!(!cert.validate(&i));
    }

    impl MonomialIdeal {
        fn restrict_padded(&self, n: usize) -> MonomialIdeal {
            let mut names = self.variables().to_vec();
            for k in names.len()..n {
                names.push(format!("x{}", k + 1));
            }
            MonomialIdeal::new(names, self.generators().iter().map(|g| g.padded(n)).collect::<Vec<_>>())
        }
    }
}
