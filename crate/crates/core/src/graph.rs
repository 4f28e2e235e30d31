//! Loop-free undirected multigraphs with stable edge identifiers.
//!
//! Vertices are the dense range `0..n`. Edges carry an [`EdgeId`] assigned in
//! insertion order; deleting edges never renumbers the survivors, so an edge
//! keeps its identity through deletion, contraction and vertex
//! identification. Insertion order is the canonical edge order wherever a
//! "smallest edge label" rule is needed.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{argument, domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

pub type EdgeSet = BTreeSet<EdgeId>;
pub type VertexSet = BTreeSet<VertexId>;

/// Old vertex id -> new vertex id, indexed by the old id.
pub type VertexMap = Vec<VertexId>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn ends(&self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }

    /// The end of this edge that is not `w`; `None` if `w` is not an end.
    pub fn other(&self, w: VertexId) -> Option<VertexId> {
        if self.u == w {
            Some(self.v)
        } else if self.v == w {
            Some(self.u)
        } else {
            None
        }
    }

    pub fn touches(&self, w: VertexId) -> bool {
        self.u == w || self.v == w
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiGraph {
    n: usize,
    /// Sorted by id; ids are unique.
    edges: Vec<Edge>,
}

/// Result of [`MultiGraph::induced_subgraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: MultiGraph,
    /// Old vertex id -> new vertex id for the retained vertices.
    pub vertex_map: BTreeMap<VertexId, VertexId>,
}

impl MultiGraph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        MultiGraph {
            n,
            edges: Vec::new(),
        }
    }

    pub fn from_edges(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut g = MultiGraph::new(n);
        for &(u, v) in pairs {
            g.add_edge(VertexId(u), VertexId(v))?;
        }
        Ok(g)
    }

    /// Builds a graph from explicit edges, keeping their ids.
    pub fn from_parts(n: usize, mut edges: Vec<Edge>) -> Result<Self> {
        edges.sort_by_key(|e| e.id);
        for w in edges.windows(2) {
            if w[0].id == w[1].id {
                return Err(argument(format!("duplicate edge id {}", w[0].id)));
            }
        }
        for e in &edges {
            check_endpoints(n, e.u, e.v)?;
        }
        Ok(MultiGraph { n, edges })
    }

    /// Appends an edge with the next free id.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        check_endpoints(self.n, u, v)?;
        let id = EdgeId(self.edges.last().map_or(0, |e| e.id.0 + 1));
        self.edges.push(Edge { id, u, v });
        Ok(id)
    }

    /// Appends an isolated vertex.
    pub fn add_vertex(&mut self) -> VertexId {
        self.n += 1;
        VertexId(self.n - 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n).map(VertexId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().map(|e| e.id)
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edge_ids().collect()
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges
            .binary_search_by_key(&id, |e| e.id)
            .ok()
            .map(|i| &self.edges[i])
    }

    pub fn try_edge(&self, id: EdgeId) -> Result<&Edge> {
        self.edge(id)
            .ok_or_else(|| argument(format!("unknown edge id {}", id.0)))
    }

    pub fn contains_edge(&self, id: EdgeId) -> bool {
        self.edge(id).is_some()
    }

    /// Smallest id an appended edge would receive.
    pub fn next_edge_id(&self) -> EdgeId {
        EdgeId(self.edges.last().map_or(0, |e| e.id.0 + 1))
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.0 < self.n {
            Ok(())
        } else {
            Err(argument(format!(
                "vertex {} out of range (n = {})",
                v.0, self.n
            )))
        }
    }

    fn check_edges<'a>(&self, ids: impl IntoIterator<Item = &'a EdgeId>) -> Result<()> {
        for &id in ids {
            self.try_edge(id)?;
        }
        Ok(())
    }

    fn check_vertices<'a>(&self, vs: impl IntoIterator<Item = &'a VertexId>) -> Result<()> {
        for &v in vs {
            self.check_vertex(v)?;
        }
        Ok(())
    }

    /// Number of incident edge slots, counting parallel edges separately.
    pub fn degree(&self, v: VertexId) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.edges.iter().filter(|e| e.touches(v)).count())
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            deg[e.u.0] += 1;
            deg[e.v.0] += 1;
        }
        deg
    }

    /// Incident `(edge, neighbour)` slots per vertex, ascending by edge id.
    pub fn incidence(&self) -> Vec<Vec<(EdgeId, VertexId)>> {
        let mut inc = vec![Vec::new(); self.n];
        for e in &self.edges {
            inc[e.u.0].push((e.id, e.v));
            inc[e.v.0].push((e.id, e.u));
        }
        inc
    }

    /// Neighbours of `v` (with repetition for parallel edges).
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        self.edges.iter().filter_map(|e| e.other(v)).collect()
    }

    /// `G - E'`: same vertices, surviving edges keep their ids.
    pub fn delete_edges(&self, removed: &EdgeSet) -> Result<MultiGraph> {
        self.check_edges(removed)?;
        Ok(MultiGraph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .filter(|e| !removed.contains(&e.id))
                .copied()
                .collect(),
        })
    }

    /// `G[E']`: all vertices, exactly the listed edges.
    pub fn spanning_subgraph(&self, kept: &EdgeSet) -> Result<MultiGraph> {
        self.check_edges(kept)?;
        Ok(self.spanning_subgraph_unchecked(kept))
    }

    pub(crate) fn spanning_subgraph_unchecked(&self, kept: &EdgeSet) -> MultiGraph {
        MultiGraph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .filter(|e| kept.contains(&e.id))
                .copied()
                .collect(),
        }
    }

    /// `G / E'`. Loops produced by the contraction are discarded; parallel
    /// edges survive with their ids. Returns the old -> new vertex map.
    pub fn contract_edges(&self, contracted: &EdgeSet) -> Result<(MultiGraph, VertexMap)> {
        self.check_edges(contracted)?;
        let mut dsu = DisjointSets::new(self.n);
        for e in &self.edges {
            if contracted.contains(&e.id) {
                dsu.union(e.u.0, e.v.0);
            }
        }
        Ok(self.quotient(&mut dsu))
    }

    /// Identifies each listed vertex class into a single vertex. Edges inside a
    /// class become loops and are discarded.
    pub fn identify(&self, classes: &[Vec<VertexId>]) -> Result<(MultiGraph, VertexMap)> {
        let mut dsu = DisjointSets::new(self.n);
        for class in classes {
            self.check_vertices(class)?;
            for w in class.windows(2) {
                dsu.union(w[0].0, w[1].0);
            }
        }
        Ok(self.quotient(&mut dsu))
    }

    /// New vertices are numbered in order of the smallest old member.
    fn quotient(&self, dsu: &mut DisjointSets) -> (MultiGraph, VertexMap) {
        let mut new_of_root = vec![usize::MAX; self.n];
        let mut map = Vec::with_capacity(self.n);
        let mut next = 0;
        for v in 0..self.n {
            let r = dsu.find(v);
            if new_of_root[r] == usize::MAX {
                new_of_root[r] = next;
                next += 1;
            }
            map.push(VertexId(new_of_root[r]));
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|e| {
                let (u, v) = (map[e.u.0], map[e.v.0]);
                (u != v).then_some(Edge { id: e.id, u, v })
            })
            .collect();
        (MultiGraph { n: next, edges }, map)
    }

    /// `G[U]` with vertices re-indexed densely in ascending order. Edge ids
    /// are preserved.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<InducedSubgraph> {
        self.check_vertices(keep)?;
        let vertex_map: BTreeMap<VertexId, VertexId> = keep
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, VertexId(i)))
            .collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|e| match (vertex_map.get(&e.u), vertex_map.get(&e.v)) {
                (Some(&u), Some(&v)) => Some(Edge { id: e.id, u, v }),
                _ => None,
            })
            .collect();
        Ok(InducedSubgraph {
            graph: MultiGraph {
                n: keep.len(),
                edges,
            },
            vertex_map,
        })
    }

    /// Connected components. Components containing edges come first, ordered
    /// by their smallest edge id; isolated vertices follow in vertex order.
    /// Each component lists its vertices in ascending order.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut dsu = DisjointSets::new(self.n);
        for e in &self.edges {
            dsu.union(e.u.0, e.v.0);
        }
        let mut slot_of_root: Vec<Option<usize>> = vec![None; self.n];
        let mut comps: Vec<Vec<VertexId>> = Vec::new();
        // Edge order fixes the order of non-trivial components.
        for e in &self.edges {
            let r = dsu.find(e.u.0);
            if slot_of_root[r].is_none() {
                slot_of_root[r] = Some(comps.len());
                comps.push(Vec::new());
            }
        }
        for v in 0..self.n {
            let r = dsu.find(v);
            if slot_of_root[r].is_none() {
                slot_of_root[r] = Some(comps.len());
                comps.push(Vec::new());
            }
        }
        for v in 0..self.n {
            let r = dsu.find(v);
            comps[slot_of_root[r].unwrap()].push(VertexId(v));
        }
        comps
    }

    pub fn component_count(&self) -> usize {
        let mut dsu = DisjointSets::new(self.n);
        let mut count = self.n;
        for e in &self.edges {
            if dsu.union(e.u.0, e.v.0) {
                count -= 1;
            }
        }
        count
    }

    /// True for connected graphs with at least one vertex.
    pub fn is_connected(&self) -> bool {
        self.n >= 1 && self.component_count() == 1
    }

    /// `E_G(V1, V2)`; with `v2 = None` this is `E_G(V1) = E_G(V1, V - V1)`.
    pub fn boundary_edges(&self, v1: &VertexSet, v2: Option<&VertexSet>) -> Result<EdgeSet> {
        self.check_vertices(v1)?;
        if let Some(v2) = v2 {
            self.check_vertices(v2)?;
            if let Some(x) = v1.intersection(v2).next() {
                return Err(argument(format!("vertex sets overlap at {}", x.0)));
            }
        }
        let in_second = |w: &VertexId| match v2 {
            Some(s) => s.contains(w),
            None => !v1.contains(w),
        };
        Ok(self
            .edges
            .iter()
            .filter(|e| {
                (v1.contains(&e.u) && in_second(&e.v)) || (v1.contains(&e.v) && in_second(&e.u))
            })
            .map(|e| e.id)
            .collect())
    }

    /// True if the listed edges contain no cycle (parallel pairs count as cycles).
    pub fn is_acyclic(&self, ids: &EdgeSet) -> Result<bool> {
        let mut dsu = DisjointSets::new(self.n);
        for &id in ids {
            let e = self.try_edge(id)?;
            if !dsu.union(e.u.0, e.v.0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True if the listed edges form a spanning tree.
    pub fn is_spanning_tree(&self, ids: &EdgeSet) -> Result<bool> {
        Ok(self.n >= 1 && ids.len() == self.n - 1 && self.is_acyclic(ids)?)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges
            .iter()
            .all(|e| seen.insert((e.u.min(e.v), e.u.max(e.v))))
    }

    /// True if `e` is the only connection between the two sides it separates.
    pub fn is_bridge(&self, id: EdgeId) -> Result<bool> {
        let e = *self.try_edge(id)?;
        let mut dsu = DisjointSets::new(self.n);
        for other in &self.edges {
            if other.id != id {
                dsu.union(other.u.0, other.v.0);
            }
        }
        Ok(!dsu.same(e.u.0, e.v.0))
    }

    /// Two-colouring of a connected graph, `None` if not bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let inc = self.incidence();
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                let sx = side[x].unwrap();
                for &(_, y) in &inc[x] {
                    match side[y.0] {
                        None => {
                            side[y.0] = Some(!sx);
                            queue.push_back(y.0);
                        }
                        Some(sy) if sy == sx => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap_or(false)).collect())
    }
}

fn check_endpoints(n: usize, u: VertexId, v: VertexId) -> Result<()> {
    if u.0 >= n || v.0 >= n {
        return Err(argument(format!(
            "edge ({}, {}) has an endpoint out of range (n = {n})",
            u.0, v.0
        )));
    }
    if u == v {
        return Err(argument(format!("self-loop at vertex {}", u.0)));
    }
    Ok(())
}

/// What an edge subset stands for relative to its host.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubsetRole {
    Tree,
    Forest,
    Matching,
    DeletionSet,
}

/// An edge subset of a host graph, validated against its role when built.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpanningSubset {
    edges: EdgeSet,
    role: SubsetRole,
}

impl SpanningSubset {
    pub fn new(host: &MultiGraph, role: SubsetRole, edges: EdgeSet) -> Result<Self> {
        host.check_edges(&edges)?;
        match role {
            SubsetRole::Tree => {
                if !host.is_spanning_tree(&edges)? {
                    return Err(domain("edge set is not a spanning tree of the host"));
                }
            }
            SubsetRole::Forest => {
                if !host.is_acyclic(&edges)? {
                    return Err(domain("edge set contains a cycle"));
                }
            }
            SubsetRole::Matching => {
                let mut used = VertexSet::new();
                for id in &edges {
                    let e = host.try_edge(*id)?;
                    if !used.insert(e.u) || !used.insert(e.v) {
                        return Err(domain(format!(
                            "edges of the matching share a vertex at edge {}",
                            id.0
                        )));
                    }
                }
            }
            SubsetRole::DeletionSet => {}
        }
        Ok(SpanningSubset { edges, role })
    }

    pub fn tree(host: &MultiGraph, edges: EdgeSet) -> Result<Self> {
        Self::new(host, SubsetRole::Tree, edges)
    }

    /// Wraps an edge set already known to satisfy `role`.
    pub(crate) fn trusted(role: SubsetRole, edges: EdgeSet) -> Self {
        SpanningSubset { edges, role }
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn into_edges(self) -> EdgeSet {
        self.edges
    }

    pub fn role(&self) -> SubsetRole {
        self.role
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.edges.contains(&id)
    }
}

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub(crate) fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }
}

/// Convenience for building edge sets from raw indices.
pub fn edge_set(ids: impl IntoIterator<Item = usize>) -> EdgeSet {
    ids.into_iter().map(EdgeId).collect()
}

/// Convenience for building vertex sets from raw indices.
pub fn vertex_set(ids: impl IntoIterator<Item = usize>) -> VertexSet {
    ids.into_iter().map(VertexId).collect()
}

/// Standard small graphs used by tests, examples and the CLI fixtures.
pub mod named {
    use super::MultiGraph;

    pub fn complete(k: usize) -> MultiGraph {
        let mut pairs = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                pairs.push((i, j));
            }
        }
        MultiGraph::from_edges(k, &pairs).expect("complete graph")
    }

    pub fn cycle(k: usize) -> MultiGraph {
        assert!(k >= 2, "cycle needs at least two vertices");
        let pairs: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        MultiGraph::from_edges(k, &pairs).expect("cycle")
    }

    pub fn path(vertices: usize) -> MultiGraph {
        let pairs: Vec<_> = (1..vertices).map(|i| (i - 1, i)).collect();
        MultiGraph::from_edges(vertices, &pairs).expect("path")
    }

    pub fn star(leaves: usize) -> MultiGraph {
        let pairs: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        MultiGraph::from_edges(leaves + 1, &pairs).expect("star")
    }

    /// `K_{a,b}` with the `a` side numbered first.
    pub fn complete_bipartite(a: usize, b: usize) -> MultiGraph {
        let mut pairs = Vec::new();
        for i in 0..a {
            for j in 0..b {
                pairs.push((i, a + j));
            }
        }
        MultiGraph::from_edges(a + b, &pairs).expect("complete bipartite")
    }

    pub fn petersen() -> MultiGraph {
        let mut pairs = Vec::new();
        for i in 0..5 {
            pairs.push((i, (i + 1) % 5));
            pairs.push((i, i + 5));
            pairs.push((5 + i, 5 + (i + 2) % 5));
        }
        MultiGraph::from_edges(10, &pairs).expect("petersen")
    }

    /// Two vertices joined by `k` parallel edges.
    pub fn bond(k: usize) -> MultiGraph {
        MultiGraph::from_edges(2, &vec![(0, 1); k]).expect("bond")
    }
}
