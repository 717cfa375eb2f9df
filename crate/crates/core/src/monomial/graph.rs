use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Monomial, MonomialIdeal};
use crate::error::{Error, Result};

/// Simple undirected graph on named vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarGraph {
    vertices: Vec<String>,
    adjacency: Vec<BTreeSet<usize>>,
}

impl VarGraph {
    pub fn new(vertices: Vec<String>) -> Self {
        let n = vertices.len();
        VarGraph {
            vertices,
            adjacency: vec![BTreeSet::new(); n],
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loops are not allowed");
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|u| {
                self.adjacency[u]
                    .iter()
                    .filter(move |&&v| u < v)
                    .map(move |&v| (u, v))
            })
            .collect()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Whether `order` (an elimination order listing every vertex once) is a
    /// perfect elimination ordering.
    pub fn is_perfect_elimination_order(&self, order: &[usize]) -> bool {
        self.peo_violations(order).next().is_none()
    }

    /// Triples `(v, u, w)`: `u`, `w` are later non-adjacent neighbours of `v`.
    fn peo_violations<'a>(
        &'a self,
        order: &'a [usize],
    ) -> impl Iterator<Item = (usize, usize, usize)> + 'a {
        let mut position = vec![usize::MAX; self.len()];
        for (p, &v) in order.iter().enumerate() {
            position[v] = p;
        }
        assert!(
            order.len() == self.len() && position.iter().all(|&p| p != usize::MAX),
            "ordering must list every vertex once"
        );
        order.iter().flat_map(move |&v| {
            let later: Vec<usize> = self.adjacency[v]
                .iter()
                .copied()
                .filter(|&u| position[u] > position[v])
                .collect();
            let mut bad = Vec::new();
            for (a, &u) in later.iter().enumerate() {
                for &w in &later[a + 1..] {
                    if !self.has_edge(u, w) {
                        bad.push((v, u, w));
                    }
                }
            }
            bad
        })
    }

    /// Elimination order from maximum cardinality search: the reverse of the
    /// visiting order, ties broken by the smallest vertex index.
    pub fn mcs_elimination_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut weight = vec![0usize; n];
        let mut visited = vec![false; n];
        let mut visit = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !visited[v])
                .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
                .expect("unvisited vertex");
            visited[v] = true;
            visit.push(v);
            for &u in &self.adjacency[v] {
                if !visited[u] {
                    weight[u] += 1;
                }
            }
        }
        visit.reverse();
        visit
    }

    fn names(&self, vs: &[usize]) -> Vec<String> {
        vs.iter().map(|&v| self.vertices[v].clone()).collect()
    }
}

/// Either a perfect elimination ordering or a chordless cycle of length >= 4.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Chordality {
    PerfectEliminationOrdering(Vec<String>),
    ChordlessCycle(Vec<String>),
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::PerfectEliminationOrdering(_))
    }
}

/// Graph on the ambient variables with an edge `{u, v}` iff `uv` is not in
/// the ideal.
pub fn nonedge_graph(ideal: &MonomialIdeal) -> Result<VarGraph> {
    ideal.require_quadratic()?;
    if let Some(g) = ideal.generators().iter().find(|g| !g.is_squarefree()) {
        return Err(Error::NotSquarefree(ideal.render_generator(g)));
    }
    let n = ideal.nvars();
    let mut graph = VarGraph::new(ideal.variables().to_vec());
    for u in 0..n {
        for v in u + 1..n {
            if !ideal.contains(&Monomial::product_of(n, u, v)) {
                graph.add_edge(u, v);
            }
        }
    }
    Ok(graph)
}

/// Chordality test by maximum cardinality search; a failure comes with an
/// explicit chordless cycle.
pub fn is_chordal(graph: &VarGraph) -> Chordality {
    let order = graph.mcs_elimination_order();
    let violations: Vec<_> = graph.peo_violations(&order).collect();
    if violations.is_empty() {
        return Chordality::PerfectEliminationOrdering(graph.names(&order));
    }
    // The first-eliminated vertex of any chordless cycle yields a violation
    // whose two neighbours are joined by a path avoiding the rest of N[v];
    // a shortest such path closes a chordless cycle through v.
    for (v, u, w) in violations {
        let mut blocked = vec![false; graph.len()];
        blocked[v] = true;
        for &x in graph.neighbors(v) {
            blocked[x] = true;
        }
        blocked[u] = false;
        blocked[w] = false;
        if let Some(path) = shortest_path(graph, u, w, &blocked) {
            let mut cycle = vec![v];
            cycle.extend(path);
            return Chordality::ChordlessCycle(graph.names(&cycle));
        }
    }
    unreachable!("a non-perfect MCS ordering always exposes a chordless cycle")
}

fn shortest_path(graph: &VarGraph, from: usize, to: usize, blocked: &[bool]) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; graph.len()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &y in graph.neighbors(x) {
            // u and w are non-adjacent, so the direct edge never exists
            if !blocked[y] && parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}
