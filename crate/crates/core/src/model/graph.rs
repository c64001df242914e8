//! Multi-operator conflict graph.
//!
//! Vertices are base stations, identified by `(operator, bs)` pairs. Edges
//! join base stations that cannot hold the same channel simultaneously.
//! Intra-operator edges are rejected: an operator reuses a channel across
//! its own base stations, so interference is only inter-operator.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A base station, addressed by owning operator and per-operator index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Vertex {
    pub operator: usize,
    pub bs: usize,
}

impl Vertex {
    pub fn new(operator: usize, bs: usize) -> Self {
        Vertex { operator, bs }
    }
}

impl std::fmt::Display for Vertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "op{}/bs{}", self.operator, self.bs)
    }
}

/// Conflict graph over the base stations of several operators, with a
/// per-vertex active mask tracking the working graph as mechanisms remove
/// vertices round by round.
///
/// A freshly built graph has every vertex active. Mechanisms clone the
/// graph (or just the mask) and deactivate; the original stays intact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConflictGraph {
    bs_counts: Vec<usize>,
    offsets: Vec<usize>,
    adjacency: Vec<Vec<u32>>,
    edges: Vec<(Vertex, Vertex)>,
    active: Vec<bool>,
}

impl ConflictGraph {
    /// Builds a graph from per-operator base-station counts and an edge
    /// list. Rejects intra-operator edges, self-loops, and out-of-range
    /// endpoints; duplicate edges collapse to one.
    pub fn new(bs_counts: Vec<usize>, edge_list: &[(Vertex, Vertex)]) -> Result<Self> {
        if bs_counts.is_empty() {
            return Err(Error::InvalidTopology("no operators".into()));
        }
        let mut offsets = Vec::with_capacity(bs_counts.len() + 1);
        let mut total = 0usize;
        for &count in &bs_counts {
            offsets.push(total);
            total += count;
        }
        offsets.push(total);

        let mut graph = ConflictGraph {
            bs_counts,
            offsets,
            adjacency: vec![Vec::new(); total],
            edges: Vec::new(),
            active: vec![true; total],
        };

        let mut seen = BTreeSet::new();
        for &(a, b) in edge_list {
            graph.check_vertex(a)?;
            graph.check_vertex(b)?;
            if a.operator == b.operator {
                return Err(Error::InvalidTopology(format!(
                    "edge {a}-{b} joins two base stations of the same operator"
                )));
            }
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            if !seen.insert((lo, hi)) {
                continue;
            }
            let ia = graph.flat_index(lo);
            let ib = graph.flat_index(hi);
            graph.adjacency[ia].push(ib as u32);
            graph.adjacency[ib].push(ia as u32);
            graph.edges.push((lo, hi));
        }
        for adj in &mut graph.adjacency {
            adj.sort_unstable();
        }
        Ok(graph)
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v.operator >= self.bs_counts.len() || v.bs >= self.bs_counts[v.operator] {
            return Err(Error::InvalidTopology(format!(
                "vertex {v} is out of range"
            )));
        }
        Ok(())
    }

    pub fn num_operators(&self) -> usize {
        self.bs_counts.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.active.len()
    }

    pub fn bs_counts(&self) -> &[usize] {
        &self.bs_counts
    }

    pub fn bs_count(&self, operator: usize) -> Result<usize> {
        self.bs_counts
            .get(operator)
            .copied()
            .ok_or(Error::UnknownOperator(operator))
    }

    /// Edges as canonical ordered pairs (lower vertex first), sorted.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn flat_index(&self, v: Vertex) -> usize {
        self.offsets[v.operator] + v.bs
    }

    pub fn vertex_of(&self, flat: usize) -> Vertex {
        let operator = match self.offsets.binary_search(&flat) {
            Ok(mut op) => {
                // Offsets repeat when an operator has zero base stations;
                // take the last operator starting at this offset.
                while op + 1 < self.bs_counts.len() && self.offsets[op + 1] == flat {
                    op += 1;
                }
                op
            }
            Err(ins) => ins - 1,
        };
        Vertex::new(operator, flat - self.offsets[operator])
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.bs_counts.len())
            .flat_map(move |op| (0..self.bs_counts[op]).map(move |bs| Vertex::new(op, bs)))
    }

    pub fn adjacent_flat(&self, flat: usize) -> &[u32] {
        &self.adjacency[flat]
    }

    pub fn is_edge(&self, a: Vertex, b: Vertex) -> bool {
        let ia = self.flat_index(a) as u32;
        let ib = self.flat_index(b);
        self.adjacency[ib].binary_search(&ia).is_ok()
    }

    pub fn is_active(&self, v: Vertex) -> bool {
        self.active[self.flat_index(v)]
    }

    pub fn is_active_flat(&self, flat: usize) -> bool {
        self.active[flat]
    }

    pub fn deactivate_flat(&mut self, flat: usize) {
        self.active[flat] = false;
    }

    pub fn deactivate(&mut self, v: Vertex) {
        let i = self.flat_index(v);
        self.active[i] = false;
    }

    pub fn activate_all(&mut self) {
        self.active.fill(true);
    }

    /// Replaces the whole active mask (flat vertex order).
    pub fn set_active_mask(&mut self, mask: &[bool]) {
        debug_assert_eq!(mask.len(), self.active.len());
        self.active.copy_from_slice(mask);
    }

    pub fn active_mask(&self) -> &[bool] {
        &self.active
    }

    pub fn any_active(&self) -> bool {
        self.active.iter().any(|&a| a)
    }

    /// Active vertices of one operator.
    pub fn active_vertices_of(&self, operator: usize) -> Vec<Vertex> {
        let start = self.offsets[operator];
        (0..self.bs_counts[operator])
            .filter(|bs| self.active[start + bs])
            .map(|bs| Vertex::new(operator, bs))
            .collect()
    }

    pub fn operator_has_active(&self, operator: usize) -> bool {
        let start = self.offsets[operator];
        self.active[start..start + self.bs_counts[operator]]
            .iter()
            .any(|&a| a)
    }

    /// Active vertices adjacent to any active vertex of `operator`, i.e.
    /// the working-graph neighborhood of the operator. Never contains the
    /// operator's own vertices.
    pub fn neighbors_of_operator(&self, operator: usize) -> Result<BTreeSet<Vertex>> {
        if operator >= self.bs_counts.len() {
            return Err(Error::UnknownOperator(operator));
        }
        let start = self.offsets[operator];
        let mut out = BTreeSet::new();
        for bs in 0..self.bs_counts[operator] {
            let flat = start + bs;
            if !self.active[flat] {
                continue;
            }
            for &nb in &self.adjacency[flat] {
                if self.active[nb as usize] {
                    out.insert(self.vertex_of(nb as usize));
                }
            }
        }
        Ok(out)
    }

    /// Neighborhood of all of an operator's vertices in the full graph,
    /// ignoring the active mask. Used by final-graph pricing, which anchors
    /// neighborhoods in the original topology.
    pub fn full_neighbors_of_operator(&self, operator: usize) -> Result<BTreeSet<Vertex>> {
        if operator >= self.bs_counts.len() {
            return Err(Error::UnknownOperator(operator));
        }
        let start = self.offsets[operator];
        let mut out = BTreeSet::new();
        for bs in 0..self.bs_counts[operator] {
            for &nb in &self.adjacency[start + bs] {
                out.insert(self.vertex_of(nb as usize));
            }
        }
        Ok(out)
    }

    /// Checks that a set of vertices is pairwise non-adjacent.
    pub fn is_independent(&self, set: &[Vertex]) -> bool {
        for (i, &a) in set.iter().enumerate() {
            for &b in &set[i + 1..] {
                if self.is_edge(a, b) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> ConflictGraph {
        // op0: 2 stations, op1: 2, op2: 1; edges 0/0-1/0, 0/1-2/0
        ConflictGraph::new(
            vec![2, 2, 1],
            &[
                (Vertex::new(0, 0), Vertex::new(1, 0)),
                (Vertex::new(0, 1), Vertex::new(2, 0)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn rejects_intra_operator_edges() {
        let err = ConflictGraph::new(vec![2], &[(Vertex::new(0, 0), Vertex::new(0, 1))]);
        assert!(matches!(err, Err(Error::InvalidTopology(_))));
    }

    #[test]
    fn rejects_out_of_range_vertices() {
        let err = ConflictGraph::new(vec![1, 1], &[(Vertex::new(0, 0), Vertex::new(1, 3))]);
        assert!(matches!(err, Err(Error::InvalidTopology(_))));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = ConflictGraph::new(
            vec![1, 1],
            &[
                (Vertex::new(0, 0), Vertex::new(1, 0)),
                (Vertex::new(1, 0), Vertex::new(0, 0)),
            ],
        )
        .unwrap();
        assert_eq!(g.edges().len(), 1);
    }

    #[test]
    fn neighbors_respect_active_mask() {
        let mut g = tiny();
        let n0: Vec<_> = g.neighbors_of_operator(0).unwrap().into_iter().collect();
        assert_eq!(n0, vec![Vertex::new(1, 0), Vertex::new(2, 0)]);

        g.deactivate(Vertex::new(0, 1));
        let n0: Vec<_> = g.neighbors_of_operator(0).unwrap().into_iter().collect();
        assert_eq!(n0, vec![Vertex::new(1, 0)]);

        assert!(g.neighbors_of_operator(9).is_err());
    }

    #[test]
    fn isolated_operator_has_empty_neighborhood() {
        let g = ConflictGraph::new(vec![1, 1], &[]).unwrap();
        assert!(g.neighbors_of_operator(0).unwrap().is_empty());
    }

    #[test]
    fn flat_round_trip_with_empty_operator() {
        let g = ConflictGraph::new(vec![2, 0, 3], &[]).unwrap();
        for v in g.vertices() {
            assert_eq!(g.vertex_of(g.flat_index(v)), v);
        }
        assert_eq!(g.num_vertices(), 5);
    }

    #[test]
    fn independence_check() {
        let g = tiny();
        assert!(g.is_independent(&[Vertex::new(0, 0), Vertex::new(2, 0)]));
        assert!(!g.is_independent(&[Vertex::new(0, 0), Vertex::new(1, 0)]));
    }
}
