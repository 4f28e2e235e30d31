//! Boundary-edge selection, neighbour exchange inside a clique, and the
//! labelling of spanning trees of a clique-structured graph by pairs
//! `(T0, f)`, together with exhaustive checks of the resulting partitions.
//!
//! Trees are edge sets over a host graph. Every quotient used here keeps edge
//! ids, so the same id names the same edge at every stage.

use std::collections::{BTreeMap, VecDeque};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Pow};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::formulas::{enumerate_gamma, gen_result_sum, EndpointMap, DEFAULT_TREE_LIMIT};
use crate::graph::{
    DisjointSets, Edge, EdgeId, EdgeSet, MultiGraph, SpanningSubset, SubsetRole, VertexId,
    VertexMap, VertexSet,
};
use crate::par::Exec;
use crate::treecount::{count_trees_containing, enumerate_spanning_trees, ConstrainedFamily};
use crate::ExactRational;

/// Output of [`phi_select`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiSelection {
    pub tree: SpanningSubset,
    pub v0: VertexSet,
    pub anchor: VertexId,
    /// One boundary edge per component of `T - V0`.
    pub selected: EdgeSet,
    /// Components of `T - V0`, ordered by their smallest boundary edge id.
    pub components: Vec<Vec<VertexId>>,
}

/// Tree edges classified relative to `V0`.
struct TreeSplit {
    /// Index into `components` for vertices outside `V0`.
    component_of: Vec<Option<usize>>,
    components: Vec<Vec<VertexId>>,
    /// `E_T(V0, V(F_j))`, parallel to `components`.
    boundary: Vec<EdgeSet>,
    /// `E(T[V0])`.
    inner: Vec<Edge>,
    edges: Vec<Edge>,
}

fn split_tree(host: &MultiGraph, tree: &EdgeSet, v0: &VertexSet) -> TreeSplit {
    let n = host.vertex_count();
    let edges: Vec<Edge> = tree
        .iter()
        .map(|&id| *host.edge(id).expect("tree edges belong to the host"))
        .collect();
    let mut dsu = DisjointSets::new(n);
    for e in &edges {
        if !v0.contains(&e.u) && !v0.contains(&e.v) {
            dsu.union(e.u.0, e.v.0);
        }
    }
    let mut by_root: BTreeMap<usize, EdgeSet> = BTreeMap::new();
    let mut inner = Vec::new();
    for e in &edges {
        match (v0.contains(&e.u), v0.contains(&e.v)) {
            (true, true) => inner.push(*e),
            (true, false) => {
                by_root.entry(dsu.find(e.v.0)).or_default().insert(e.id);
            }
            (false, true) => {
                by_root.entry(dsu.find(e.u.0)).or_default().insert(e.id);
            }
            (false, false) => {}
        }
    }
    let mut roots: Vec<(usize, EdgeSet)> = by_root.into_iter().collect();
    roots.sort_by_key(|(_, b)| *b.first().expect("non-empty boundary"));
    let index_of_root: BTreeMap<usize, usize> = roots
        .iter()
        .enumerate()
        .map(|(i, (r, _))| (*r, i))
        .collect();
    let mut components = vec![Vec::new(); roots.len()];
    let mut component_of = vec![None; n];
    for v in (0..n).filter(|v| !v0.contains(&VertexId(*v))) {
        let i = index_of_root[&dsu.find(v)];
        component_of[v] = Some(i);
        components[i].push(VertexId(v));
    }
    TreeSplit {
        component_of,
        components,
        boundary: roots.into_iter().map(|(_, b)| b).collect(),
        inner,
        edges,
    }
}

/// Selection on a spanning tree with the anchor condition already settled.
fn phi_core(
    host: &MultiGraph,
    tree: &EdgeSet,
    v0: &VertexSet,
    anchor: VertexId,
) -> (EdgeSet, Vec<Vec<VertexId>>) {
    let split = split_tree(host, tree, v0);
    let t = split.components.len();
    if t == 0 {
        return (EdgeSet::new(), split.components);
    }
    if t == 1 {
        let mut dsu = DisjointSets::new(host.vertex_count());
        for e in &split.inner {
            dsu.union(e.u.0, e.v.0);
        }
        let chosen: Vec<EdgeId> = split.boundary[0]
            .iter()
            .copied()
            .filter(|&id| {
                let e = host.edge(id).expect("tree edge");
                let inside = if v0.contains(&e.u) { e.u } else { e.v };
                dsu.same(inside.0, anchor.0)
            })
            .collect();
        debug_assert_eq!(chosen.len(), 1);
        return (chosen.into_iter().collect(), split.components);
    }

    // Parent pointers of T rooted inside F_1; the walk from any vertex of F_j
    // up to the root is the path from F_j to F_1 extended inside both ends.
    let n = host.vertex_count();
    let mut adjacency = vec![Vec::new(); n];
    for e in &split.edges {
        adjacency[e.u.0].push((e.id, e.v));
        adjacency[e.v.0].push((e.id, e.u));
    }
    let root = split.components[0][0];
    let mut parent: Vec<Option<(EdgeId, VertexId)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[root.0] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &(id, y) in &adjacency[x.0] {
            if !seen[y.0] {
                seen[y.0] = true;
                parent[y.0] = Some((id, x));
                queue.push_back(y);
            }
        }
    }
    let comp = |w: VertexId| split.component_of[w.0];
    let mut selected = EdgeSet::new();
    for j in 1..t {
        let mut cur = split.components[j][0];
        let mut left_fj = false;
        loop {
            let (id, next) = parent[cur.0].expect("walk reaches the root in F_1");
            if !left_fj && comp(cur) == Some(j) && comp(next) != Some(j) {
                selected.insert(id);
                left_fj = true;
            }
            if comp(next) == Some(0) {
                if j == 1 {
                    selected.insert(id);
                }
                break;
            }
            cur = next;
        }
    }
    (selected, split.components)
}

/// Removing the unselected boundary edges and identifying `V0` leaves a tree.
fn identifies_to_tree(
    host: &MultiGraph,
    tree: &EdgeSet,
    v0: &VertexSet,
    selected: &EdgeSet,
) -> bool {
    let split = split_tree(host, tree, v0);
    let unselected: EdgeSet = split
        .boundary
        .iter()
        .flatten()
        .filter(|id| !selected.contains(id))
        .copied()
        .collect();
    let kept: EdgeSet = tree.difference(&unselected).copied().collect();
    let class: Vec<VertexId> = v0.iter().copied().collect();
    let (g, _) = host
        .spanning_subgraph_unchecked(&kept)
        .identify(&[class])
        .expect("V0 lies in the host");
    g.is_spanning_tree(&g.edge_set()).expect("own edges")
}

fn check_v0(host: &MultiGraph, v0: &VertexSet, anchor: VertexId) -> Result<()> {
    if v0.is_empty() || v0.len() >= host.vertex_count() {
        return Err(domain(
            "V0 must be a non-empty proper subset of the vertices",
        ));
    }
    if let Some(w) = v0.iter().find(|w| w.0 >= host.vertex_count()) {
        return Err(domain(format!("vertex {} of V0 is out of range", w.0)));
    }
    if !v0.contains(&anchor) {
        return Err(domain(format!("anchor {} is not in V0", anchor.0)));
    }
    Ok(())
}

fn check_tree(host: &MultiGraph, tree: &SpanningSubset) -> Result<()> {
    if !host.is_spanning_tree(tree.edges())? {
        return Err(domain("edge set is not a spanning tree of the host"));
    }
    Ok(())
}

/// `Φ(T, V0, v)`: one boundary edge of `V0` per component of `T - V0`.
///
/// With one component the edge is the one whose `V0`-end lies in the
/// anchor's component of `T[V0]`; this case requires `N_T(v) ⊆ V0`. With
/// `t >= 2` components, ordered by smallest boundary edge id, the edges are
/// those used by the tree paths from `F_1` to each `F_j` (only the path to
/// `F_2` contributes the edge at `F_1`).
pub fn phi_select(
    host: &MultiGraph,
    tree: &SpanningSubset,
    v0: &VertexSet,
    anchor: VertexId,
) -> Result<PhiSelection> {
    check_tree(host, tree)?;
    check_v0(host, v0, anchor)?;
    let (selected, components) = phi_core(host, tree.edges(), v0, anchor);
    if components.len() == 1 {
        let escapes = tree.edges().iter().any(|&id| {
            let e = host.edge(id).expect("tree edge");
            e.other(anchor).is_some_and(|w| !v0.contains(&w))
        });
        if escapes {
            return Err(domain(format!(
                "anchor {} has a tree neighbour outside V0 while T - V0 is connected",
                anchor.0
            )));
        }
    }
    if !identifies_to_tree(host, tree.edges(), v0, &selected) {
        return Err(Error::Domain(
            "selection does not identify to a tree".into(),
        ));
    }
    Ok(PhiSelection {
        tree: tree.clone(),
        v0: v0.clone(),
        anchor,
        selected,
        components,
    })
}

/// `T(e ↔ e')`. With `u`, `u'` the `V0`-ends of `e`, `e'`: every edge
/// `(u, w)` of `T[V0]` with `w != u'` becomes `(u', w)`, every `(u', w')` with
/// `w' != u` becomes `(u, w')`, and `e`, `e'` trade places. Replacement edges
/// are looked up in the host, whose restriction to `V0` must be simple.
pub fn exchange(
    host: &MultiGraph,
    tree: &SpanningSubset,
    v0: &VertexSet,
    e: EdgeId,
    e_prime: EdgeId,
) -> Result<SpanningSubset> {
    check_tree(host, tree)?;
    if e == e_prime {
        return Err(domain("exchange needs two distinct edges"));
    }
    let end_in_v0 = |id: EdgeId| -> Result<(VertexId, VertexId)> {
        let edge = host.try_edge(id)?;
        match (v0.contains(&edge.u), v0.contains(&edge.v)) {
            (true, false) => Ok((edge.u, edge.v)),
            (false, true) => Ok((edge.v, edge.u)),
            _ => Err(domain(format!(
                "edge {} is not a boundary edge of V0",
                id.0
            ))),
        }
    };
    let (u, x) = end_in_v0(e)?;
    let (u_prime, x_prime) = end_in_v0(e_prime)?;
    if !tree.contains(e) {
        return Err(domain(format!("edge {} is not in the tree", e.0)));
    }
    let split = split_tree(host, tree.edges(), v0);
    if split.component_of[x.0] != split.component_of[x_prime.0] {
        return Err(domain(format!(
            "edges {} and {} reach different components of T - V0",
            e.0, e_prime.0
        )));
    }

    let mut inner_edge: BTreeMap<(VertexId, VertexId), EdgeId> = BTreeMap::new();
    for edge in host.edges() {
        if v0.contains(&edge.u) && v0.contains(&edge.v) {
            let key = (edge.u.min(edge.v), edge.u.max(edge.v));
            if inner_edge.insert(key, edge.id).is_some() {
                return Err(domain("host restricted to V0 has parallel edges"));
            }
        }
    }
    let swap = |w: VertexId| {
        if w == u {
            u_prime
        } else if w == u_prime {
            u
        } else {
            w
        }
    };
    let mut image = EdgeSet::new();
    for &id in tree.edges() {
        let mapped = if id == e {
            e_prime
        } else if id == e_prime {
            e
        } else if split.inner.iter().any(|edge| edge.id == id) {
            let edge = host.edge(id).expect("tree edge");
            let (a, b) = (swap(edge.u), swap(edge.v));
            let key = (a.min(b), a.max(b));
            *inner_edge.get(&key).ok_or_else(|| {
                domain(format!(
                    "host has no edge between {} and {} inside V0",
                    a.0, b.0
                ))
            })?
        } else {
            id
        };
        image.insert(mapped);
    }
    if !host.is_spanning_tree(&image)? {
        return Err(domain("exchange does not produce a spanning tree"));
    }
    Ok(SpanningSubset::trusted(SubsetRole::Tree, image))
}

/// A simple connected graph `Q` with a matching `M` such that every
/// component of `Q - M` is complete.
///
/// Cliques are indexed in the order given (by default the order of the
/// components of `Q - M`). Within a clique, vertices touched by `M` come
/// first, so the last vertex is `M`-free whenever the clique has one; it is
/// the anchor used by [`algorithm_b`]. The quotient `Q*` has vertex `i` for
/// clique `i` and keeps the ids of the matching edges.
#[derive(Debug, Clone)]
pub struct CliqueStructure {
    q: MultiGraph,
    matching: EdgeSet,
    cliques: Vec<Vec<VertexId>>,
    clique_of: Vec<usize>,
    matched: Vec<usize>,
    quotient: MultiGraph,
    /// `stages[l]`: `Q` with cliques `l..` each identified into one vertex.
    stages: Vec<(MultiGraph, VertexMap)>,
}

impl CliqueStructure {
    pub fn new(q: &MultiGraph, matching: &EdgeSet) -> Result<Self> {
        let rest = q.delete_edges(matching)?;
        let cliques: Vec<VertexSet> = rest
            .components()
            .into_iter()
            .map(|c| c.into_iter().collect())
            .collect();
        Self::with_cliques(q, matching, &cliques)
    }

    /// Uses the given clique order, which must list the components of `Q - M`.
    pub fn with_cliques(q: &MultiGraph, matching: &EdgeSet, cliques: &[VertexSet]) -> Result<Self> {
        SpanningSubset::new(q, SubsetRole::Matching, matching.clone())?;
        if !q.is_simple() {
            return Err(domain("Q must be simple"));
        }
        if !q.is_connected() {
            return Err(domain("Q must be connected"));
        }
        let rest = q.delete_edges(matching)?;
        let mut clique_of = vec![usize::MAX; q.vertex_count()];
        for (i, c) in cliques.iter().enumerate() {
            for &w in c {
                if w.0 >= q.vertex_count() || clique_of[w.0] != usize::MAX {
                    return Err(domain(format!(
                        "clique {i} repeats or misnames vertex {}",
                        w.0
                    )));
                }
                clique_of[w.0] = i;
            }
        }
        if clique_of.contains(&usize::MAX) {
            return Err(domain("cliques do not cover every vertex"));
        }
        for (i, c) in cliques.iter().enumerate() {
            let sub = rest.induced_subgraph(c)?;
            let k = c.len();
            let members = c.iter().map(|w| w.0).join(", ");
            if sub.graph.edge_count() != k * (k - 1) / 2 || !sub.graph.is_connected() {
                return Err(domain(format!(
                    "component {i} {{{members}}} of Q - M is not complete \
                     ({} of {} edges)",
                    sub.graph.edge_count(),
                    k * (k - 1) / 2
                )));
            }
        }
        for e in rest.edges() {
            if clique_of[e.u.0] != clique_of[e.v.0] {
                return Err(domain(format!(
                    "cliques {} and {} are joined outside M by edge {}",
                    clique_of[e.u.0], clique_of[e.v.0], e.id.0
                )));
            }
        }
        let mut touched = vec![false; q.vertex_count()];
        let mut quotient_edges = Vec::with_capacity(matching.len());
        for &id in matching {
            let e = q.edge(id).expect("validated");
            touched[e.u.0] = true;
            touched[e.v.0] = true;
            if clique_of[e.u.0] == clique_of[e.v.0] {
                return Err(domain(format!(
                    "matching edge {} lies inside a clique",
                    id.0
                )));
            }
            quotient_edges.push(Edge {
                id,
                u: VertexId(clique_of[e.u.0]),
                v: VertexId(clique_of[e.v.0]),
            });
        }
        let ordered: Vec<Vec<VertexId>> = cliques
            .iter()
            .map(|c| {
                let (m_incident, free): (Vec<VertexId>, Vec<VertexId>) =
                    c.iter().partition(|w| touched[w.0]);
                m_incident.into_iter().chain(free).collect()
            })
            .collect();
        let matched = ordered
            .iter()
            .map(|c| c.iter().filter(|w| touched[w.0]).count())
            .collect();
        let quotient = MultiGraph::from_parts(cliques.len(), quotient_edges)?;
        let stages = (0..=ordered.len())
            .map(|l| q.identify(&ordered[l..]).expect("vertices validated"))
            .collect();
        Ok(CliqueStructure {
            q: q.clone(),
            matching: matching.clone(),
            cliques: ordered,
            clique_of,
            matched,
            quotient,
            stages,
        })
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.q
    }

    pub fn matching(&self) -> &EdgeSet {
        &self.matching
    }

    /// Clique vertices, `M`-incident first.
    pub fn cliques(&self) -> &[Vec<VertexId>] {
        &self.cliques
    }

    pub fn clique_count(&self) -> usize {
        self.cliques.len()
    }

    pub fn clique_of(&self, v: VertexId) -> usize {
        self.clique_of[v.0]
    }

    /// `k_i`.
    pub fn order(&self, i: usize) -> usize {
        self.cliques[i].len()
    }

    /// `m_i`: vertices of clique `i` touched by `M`.
    pub fn matched_count(&self, i: usize) -> usize {
        self.matched[i]
    }

    /// True when every clique has an `M`-free vertex (`k_i > m_i`).
    pub fn every_clique_has_free_vertex(&self) -> bool {
        (0..self.cliques.len()).all(|i| self.order(i) > self.matched[i])
    }

    pub fn anchor(&self, i: usize) -> VertexId {
        *self.cliques[i].last().expect("cliques are non-empty")
    }

    /// `Q*`.
    pub fn quotient(&self) -> &MultiGraph {
        &self.quotient
    }

    /// `∏_i k_i^{k_i - 2 - |f^{-1}(v_i)|}`.
    pub fn predicted_fiber_size(&self, f: &EndpointMap) -> ExactRational {
        let profile = f.preimage_profile(self.cliques.len());
        (0..self.cliques.len())
            .map(|i| {
                let k = BigInt::from(self.order(i));
                let exp = self.order(i) as i64 - 2 - profile.counts()[i] as i64;
                if exp >= 0 {
                    ExactRational::from_integer(Pow::pow(&k, exp as u32))
                } else {
                    ExactRational::new(BigInt::one(), Pow::pow(&k, exp.unsigned_abs() as u32))
                }
            })
            .product()
    }

    /// `Q` with cliques `expanded..` identified, and the vertex map into it.
    fn stage(&self, expanded: usize) -> (&MultiGraph, &VertexMap) {
        let (g, map) = &self.stages[expanded];
        (g, map)
    }

    fn mapped_clique(&self, i: usize, expanded: usize) -> (VertexSet, VertexId) {
        let (_, map) = self.stage(expanded);
        (
            self.cliques[i].iter().map(|w| map[w.0]).collect(),
            map[self.anchor(i).0],
        )
    }

    fn clique_edges(&self, i: usize) -> EdgeSet {
        self.q
            .edges()
            .iter()
            .filter(|e| self.clique_of[e.u.0] == i && self.clique_of[e.v.0] == i)
            .map(|e| e.id)
            .collect()
    }
}

/// The pair `(T0, f)` attached to a spanning tree of `Q` containing `M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionLabel {
    /// Spanning tree of `Q*`.
    pub base_tree: SpanningSubset,
    /// Defined on `E(Q*) - E(base_tree)`, with images in `V(Q*)`.
    pub endpoint_map: EndpointMap,
}

/// Output of [`algorithm_b`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTrace {
    pub label: PartitionLabel,
    /// `D_i` for each clique `i`.
    pub removed: Vec<EdgeSet>,
}

/// Labels a tree `T ⊇ M` of `Q`. For `i = n-1, ..., 0` the boundary edges of
/// clique `i` outside `Φ(T_i, V_i, anchor_i)` form `D_i`; they and the edges
/// inside the clique are deleted and the clique is identified. The final
/// tree is `T0` and `f` sends each edge of `D_i` to vertex `i` of `Q*`.
pub fn algorithm_b(structure: &CliqueStructure, tree: &SpanningSubset) -> Result<PartitionTrace> {
    let q = structure.graph();
    check_tree(q, tree)?;
    if !structure.matching.is_subset(tree.edges()) {
        return Err(domain("tree does not contain the matching"));
    }
    let n = structure.clique_count();
    let mut current = tree.edges().clone();
    let mut removed = vec![EdgeSet::new(); n];
    for i in (0..n).rev() {
        let (g, _) = structure.stage(i + 1);
        let (v0, anchor) = structure.mapped_clique(i, i + 1);
        let split = split_tree(g, &current, &v0);
        // With no M-free vertex the anchor may have a boundary edge; the
        // selection is still well defined.
        let (selected, _) = phi_core(g, &current, &v0, anchor);
        let d: EdgeSet = split
            .boundary
            .iter()
            .flatten()
            .filter(|id| !selected.contains(id))
            .copied()
            .collect();
        for e in d.iter().chain(split.inner.iter().map(|e| &e.id)) {
            current.remove(e);
        }
        removed[i] = d;
        let (next, _) = structure.stage(i);
        if !next.is_spanning_tree(&current)? {
            return Err(domain(format!("stage {i} is not a tree")));
        }
    }
    let assignment = removed
        .iter()
        .enumerate()
        .flat_map(|(i, d)| d.iter().map(move |&e| (e, VertexId(i))))
        .collect();
    Ok(PartitionTrace {
        label: PartitionLabel {
            base_tree: SpanningSubset::trusted(SubsetRole::Tree, current),
            endpoint_map: EndpointMap::trusted(assignment),
        },
        removed,
    })
}

/// All trees of `Q` containing `M` whose label is `label`, rebuilt clique by
/// clique: at step `i` clique `i` is expanded, `f^{-1}(v_i)` is added back,
/// and a forest inside the clique is chosen so that the result is a tree
/// whose selection at the clique equals the edges that met `v_i` in the
/// previous stage.
pub fn fiber(structure: &CliqueStructure, label: &PartitionLabel) -> Result<Vec<EdgeSet>> {
    let quotient = structure.quotient();
    check_tree(quotient, &label.base_tree)?;
    let outside: EdgeSet = quotient
        .edge_set()
        .difference(label.base_tree.edges())
        .copied()
        .collect();
    if label.endpoint_map.domain() != outside {
        return Err(domain(
            "endpoint map is not defined exactly on the non-tree edges",
        ));
    }
    EndpointMap::new(quotient, label.endpoint_map.iter().collect())?;

    let mut level = vec![label.base_tree.edges().clone()];
    for i in 0..structure.clique_count() {
        let (prev_graph, prev_map) = structure.stage(i);
        let v_i = prev_map[structure.cliques[i][0].0];
        let (g, _) = structure.stage(i + 1);
        let (v0, anchor) = structure.mapped_clique(i, i + 1);
        let d_i = label.endpoint_map.preimage(VertexId(i));
        // T_i[V_i] is a forest; its size is forced by the edge count of a tree.
        let inner_size = (structure.order(i) - 1).checked_sub(d_i.len());
        let inner_forests: Vec<EdgeSet> = match inner_size {
            Some(size) => structure
                .clique_edges(i)
                .into_iter()
                .combinations(size)
                .map(|c| c.into_iter().collect::<EdgeSet>())
                .filter(|c| g.is_acyclic(c).expect("clique edges"))
                .collect(),
            None => Vec::new(),
        };
        let mut next = Vec::new();
        for prev in &level {
            let at_vi: EdgeSet = prev
                .iter()
                .copied()
                .filter(|&id| prev_graph.edge(id).expect("stage edge").touches(v_i))
                .collect();
            for inner in &inner_forests {
                let mut cand = prev.clone();
                cand.extend(d_i.iter().copied());
                cand.extend(inner.iter().copied());
                if g.is_spanning_tree(&cand)? && phi_core(g, &cand, &v0, anchor).0 == at_vi {
                    next.push(cand);
                }
            }
        }
        level = next;
    }
    level.sort();
    Ok(level)
}

/// One `(T0, f)` row of a [`PartitionReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelRecord {
    pub base_tree: Vec<usize>,
    /// `(edge, image vertex of Q*)` pairs.
    pub endpoint_map: Vec<(usize, usize)>,
    pub observed: usize,
    /// Exact rational, as text.
    pub predicted: String,
    /// `None` when some clique has no `M`-free vertex.
    pub size_matches: Option<bool>,
    pub fiber_matches: bool,
}

/// Exhaustive check of the partition of `T_Q(M)` by labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub clique_orders: Vec<usize>,
    pub matched_counts: Vec<usize>,
    /// Per-label sizes are compared only when every `k_i > m_i`.
    pub per_label_sizes_checked: bool,
    pub tree_count: usize,
    pub oracle_count: String,
    pub formula_total: String,
    pub label_count: usize,
    pub realized_label_count: usize,
    pub labels: Vec<LabelRecord>,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// Enumerates `T_Q(M)`, labels every tree, and compares each class with the
/// predicted size and with its reconstruction. Mismatches are reported, not
/// raised.
pub fn verify_partition(structure: &CliqueStructure, exec: Exec) -> Result<PartitionReport> {
    let q = structure.graph();
    let family = ConstrainedFamily::new(q, structure.matching.clone())?;
    let trees = family.enumerate(DEFAULT_TREE_LIMIT)?;
    let oracle = count_trees_containing(&family);
    let formula_total = gen_result_sum(structure, exec)?;
    let sizes_checked = structure.every_clique_has_free_vertex();
    let mut failures = Vec::new();

    let labelled = exec.map_collect(&trees, |t| algorithm_b(structure, t));
    let mut classes: BTreeMap<PartitionLabel, Vec<EdgeSet>> = BTreeMap::new();
    for (t, result) in trees.iter().zip(labelled) {
        match result {
            Ok(trace) => classes
                .entry(trace.label)
                .or_default()
                .push(t.edges().clone()),
            Err(err) => failures.push(format!(
                "tree {:?} could not be labelled: {err}",
                ids(t.edges())
            )),
        }
    }

    let quotient = structure.quotient();
    let all = quotient.edge_set();
    let mut labels = Vec::new();
    for base in enumerate_spanning_trees(quotient, DEFAULT_TREE_LIMIT)? {
        let outside: EdgeSet = all.difference(base.edges()).copied().collect();
        for f in enumerate_gamma(quotient, &outside)? {
            labels.push(PartitionLabel {
                base_tree: base.clone(),
                endpoint_map: f,
            });
        }
    }
    let rebuilt = exec.map_collect(&labels, |label| fiber(structure, label));
    let mut records = Vec::with_capacity(labels.len());
    let mut realized = 0;
    for (label, rebuilt) in labels.iter().zip(rebuilt) {
        let mut class = classes.remove(label).unwrap_or_default();
        class.sort();
        if !class.is_empty() {
            realized += 1;
        }
        let predicted = structure.predicted_fiber_size(&label.endpoint_map);
        let observed = ExactRational::from_integer(BigInt::from(class.len()));
        let size_matches = sizes_checked.then(|| observed == predicted);
        let fiber_matches = match rebuilt {
            Ok(r) => r == class,
            Err(err) => {
                failures.push(format!("{}: reconstruction failed: {err}", describe(label)));
                false
            }
        };
        if size_matches == Some(false) {
            failures.push(format!(
                "{}: observed {} trees, predicted {predicted}",
                describe(label),
                class.len()
            ));
        }
        if !fiber_matches {
            failures.push(format!(
                "{}: reconstruction differs from its class",
                describe(label)
            ));
        }
        records.push(LabelRecord {
            base_tree: ids(label.base_tree.edges()),
            endpoint_map: label.endpoint_map.iter().map(|(e, v)| (e.0, v.0)).collect(),
            observed: class.len(),
            predicted: predicted.to_string(),
            size_matches,
            fiber_matches,
        });
    }
    for label in classes.keys() {
        failures.push(format!(
            "{}: produced a label outside the label set",
            describe(label)
        ));
    }
    let count = ExactRational::from_integer(BigInt::from(trees.len()));
    if count != formula_total {
        failures.push(format!(
            "{} trees contain the matching, the clique formula gives {formula_total}",
            trees.len()
        ));
    }
    if oracle != trees.len().into() {
        failures.push(format!(
            "enumeration found {} trees, contraction count is {oracle}",
            trees.len()
        ));
    }
    Ok(PartitionReport {
        clique_orders: (0..structure.clique_count())
            .map(|i| structure.order(i))
            .collect(),
        matched_counts: structure.matched.clone(),
        per_label_sizes_checked: sizes_checked,
        tree_count: trees.len(),
        oracle_count: oracle.to_string(),
        formula_total: formula_total.to_string(),
        label_count: labels.len(),
        realized_label_count: realized,
        labels: records,
        pass: failures.is_empty(),
        failures,
    })
}

fn ids(set: &EdgeSet) -> Vec<usize> {
    set.iter().map(|e| e.0).collect()
}

fn describe(label: &PartitionLabel) -> String {
    let f = label
        .endpoint_map
        .iter()
        .map(|(e, v)| format!("{e}->{}", v.0))
        .join(",");
    format!("label T0={:?} f={{{f}}}", ids(label.base_tree.edges()))
}

/// Census of `T_G(F)` by selection, for a connected host `G` with a clique
/// `V0` such that `F = G - E(G[V0])` is a forest meeting each vertex of `V0`
/// at most once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueForestCensus {
    /// `|V0|`.
    pub k: usize,
    /// `|E_G(V0)|`.
    pub d: usize,
    /// Components of `G - V0`.
    pub t: usize,
    /// `|E_G(V0, V(F_j))|`, components ordered by smallest boundary edge id.
    pub boundary_sizes: Vec<usize>,
    /// `|T_G(F, S, v)|` for every transversal `S`, including empty classes.
    pub fibers: BTreeMap<EdgeSet, usize>,
    pub total: usize,
}

pub fn clique_forest_census(
    host: &MultiGraph,
    v0: &VertexSet,
    anchor: VertexId,
) -> Result<CliqueForestCensus> {
    check_v0(host, v0, anchor)?;
    if !host.is_connected() {
        return Err(domain("host must be connected"));
    }
    let k = v0.len();
    let inner = host.induced_subgraph(v0)?;
    if !inner.graph.is_simple() || inner.graph.edge_count() != k * (k - 1) / 2 {
        return Err(domain("V0 does not span a simple clique"));
    }
    let forest: EdgeSet = host
        .edges()
        .iter()
        .filter(|e| !(v0.contains(&e.u) && v0.contains(&e.v)))
        .map(|e| e.id)
        .collect();
    if !host.is_acyclic(&forest)? {
        return Err(domain("edges outside the clique contain a cycle"));
    }
    let mut met = vec![0usize; host.vertex_count()];
    for &id in &forest {
        let e = host.edge(id).expect("own edge");
        for w in [e.u, e.v] {
            if v0.contains(&w) {
                met[w.0] += 1;
            }
        }
    }
    if let Some(w) = v0.iter().find(|w| met[w.0] > 1) {
        return Err(domain(format!(
            "clique vertex {} meets the forest twice",
            w.0
        )));
    }

    // The boundary structure of G − V0 is that of the forest itself.
    let split = split_tree(host, &forest, v0);
    let t = split.components.len();
    if t == 1 && met[anchor.0] > 0 {
        return Err(domain(format!(
            "anchor {} has a neighbour outside V0 while G - V0 is connected",
            anchor.0
        )));
    }
    let mut fibers: BTreeMap<EdgeSet, usize> = split
        .boundary
        .iter()
        .map(|b| b.iter().copied())
        .multi_cartesian_product()
        .map(|s| (s.into_iter().collect(), 0))
        .collect();
    let trees = ConstrainedFamily::new(host, forest)?.enumerate(DEFAULT_TREE_LIMIT)?;
    for tree in &trees {
        let selection = phi_select(host, tree, v0, anchor)?;
        *fibers
            .get_mut(&selection.selected)
            .ok_or_else(|| domain("selection is not a transversal of the boundary"))? += 1;
    }
    Ok(CliqueForestCensus {
        k,
        d: split.boundary.iter().map(|b| b.len()).sum(),
        t,
        boundary_sizes: split.boundary.iter().map(|b| b.len()).collect(),
        fibers,
        total: trees.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{edge_set, named::*, vertex_set};
    use crate::transforms::clique_insert;
    use crate::treecount::enumerate_trees_containing;

    /// `K_k` on `0..k` plus, for each outside part, a path of `len` fresh
    /// vertices joined to the listed clique vertices at its first vertex.
    fn clique_with_parts(k: usize, parts: &[(usize, Vec<usize>)]) -> MultiGraph {
        let mut g = complete(k);
        for (len, attach) in parts {
            let first = g.add_vertex();
            let mut prev = first;
            for _ in 1..*len {
                let x = g.add_vertex();
                g.add_edge(prev, x).unwrap();
                prev = x;
            }
            for &a in attach {
                g.add_edge(VertexId(a), first).unwrap();
            }
        }
        g
    }

    #[test]
    fn single_component_uses_anchor_component() {
        // a=0, b=1, c=2, x=3; T = {a-b, b-c, a-x}.
        let host = MultiGraph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap();
        let tree = SpanningSubset::tree(&host, edge_set([0, 1, 3])).unwrap();
        let sel = phi_select(&host, &tree, &vertex_set([0, 1, 2]), VertexId(2)).unwrap();
        assert_eq!(sel.selected, edge_set([3]));
        assert_eq!(sel.components, vec![vec![VertexId(3)]]);
        assert!(phi_select(&host, &tree, &vertex_set([0, 1, 2]), VertexId(0)).is_err());
        assert!(phi_select(&host, &tree, &vertex_set([0, 1, 2, 3]), VertexId(2)).is_err());
        assert!(phi_select(&host, &tree, &vertex_set([0, 1]), VertexId(3)).is_err());
    }

    #[test]
    fn forced_selection_with_singleton_parts() {
        let host = clique_with_parts(3, &[(1, vec![0]), (1, vec![1])]);
        let tree = SpanningSubset::tree(&host, edge_set([0, 1, 3, 4])).unwrap();
        let sel = phi_select(&host, &tree, &vertex_set([0, 1, 2]), VertexId(2)).unwrap();
        assert_eq!(sel.selected, edge_set([3, 4]));
    }

    /// Three singleton parts; the path from the first part to the second
    /// fixes the first part's edge.
    #[test]
    fn multi_part_selection() {
        // K_5 uses ids 0..9. Part {5}: 10 = (0,5), 11 = (1,5). Part {6}:
        // 12 = (2,6). Part {7}: 13 = (3,7), 14 = (4,7).
        let host = clique_with_parts(5, &[(1, vec![0, 1]), (1, vec![2]), (1, vec![3, 4])]);
        assert_eq!(host.edge_count(), 15);
        // T[V0] = {1-4, 1-2, 0-3}; paths 6-2-1-5 and 7-3-0-5.
        let tree = SpanningSubset::tree(&host, edge_set([6, 4, 2, 10, 11, 12, 13])).unwrap();
        let sel = phi_select(&host, &tree, &vertex_set(0..5), VertexId(4)).unwrap();
        assert_eq!(
            sel.components,
            vec![vec![VertexId(5)], vec![VertexId(6)], vec![VertexId(7)]]
        );
        assert_eq!(sel.selected, edge_set([11, 12, 13]));
    }

    #[test]
    fn selection_is_a_transversal_that_identifies_to_a_tree() {
        let host = clique_with_parts(4, &[(2, vec![0, 1]), (1, vec![2, 3])]);
        let v0 = vertex_set(0..4);
        for tree in enumerate_spanning_trees(&host, 10_000).unwrap() {
            let split = split_tree(&host, tree.edges(), &v0);
            let t = split.components.len();
            let anchor_ok = |a: VertexId| {
                t >= 2
                    || !tree.edges().iter().any(|&id| {
                        host.edge(id)
                            .unwrap()
                            .other(a)
                            .is_some_and(|w| !v0.contains(&w))
                    })
            };
            for a in (0..4).map(VertexId).filter(|&a| anchor_ok(a)) {
                let sel = phi_select(&host, &tree, &v0, a).unwrap();
                assert_eq!(sel.selected.len(), t);
                for b in &split.boundary {
                    assert_eq!(b.intersection(&sel.selected).count(), 1);
                }
            }
        }
    }

    #[test]
    fn selection_survives_contraction_outside_v0() {
        let host = clique_with_parts(4, &[(3, vec![0, 1]), (2, vec![2])]);
        let v0 = vertex_set(0..4);
        for tree in enumerate_spanning_trees(&host, 10_000).unwrap() {
            let split = split_tree(&host, tree.edges(), &v0);
            if split.components.len() < 2 {
                continue;
            }
            let base = phi_core(&host, tree.edges(), &v0, VertexId(3)).0;
            let outside: Vec<EdgeId> = tree
                .edges()
                .iter()
                .copied()
                .filter(|&id| {
                    let e = host.edge(id).unwrap();
                    !v0.contains(&e.u) && !v0.contains(&e.v)
                })
                .collect();
            for id in outside {
                let (small, map) = host.contract_edges(&edge_set([id.0])).unwrap();
                let mut t2 = tree.edges().clone();
                t2.remove(&id);
                let v0_small: VertexSet = v0.iter().map(|w| map[w.0]).collect();
                let sel = phi_core(&small, &t2, &v0_small, map[3]).0;
                assert_eq!(sel, base);
            }
        }
    }

    #[test]
    fn exchange_small_case() {
        // a=0, b=1, x=2: e=(a,x) id 1 in T, e'=(b,x) id 2 not in T.
        let host = MultiGraph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let tree = SpanningSubset::tree(&host, edge_set([0, 1])).unwrap();
        let v0 = vertex_set([0, 1]);
        let out = exchange(&host, &tree, &v0, EdgeId(1), EdgeId(2)).unwrap();
        assert_eq!(out.edges(), &edge_set([0, 2]));
        let back = exchange(&host, &out, &v0, EdgeId(2), EdgeId(1)).unwrap();
        assert_eq!(back, tree);
        assert!(exchange(&host, &tree, &v0, EdgeId(2), EdgeId(1)).is_err());
        assert!(exchange(&host, &tree, &v0, EdgeId(0), EdgeId(1)).is_err());
    }

    /// Every `T ⊇ F` of a clique-plus-forest host and every pair of boundary
    /// edges into the same part: the exchange is an involution and moves
    /// the selection from `e` to `e'`.
    #[test]
    fn exchange_moves_the_selection() {
        let hosts = [
            (4, clique_with_parts(4, &[(1, vec![0, 1])])),
            (4, clique_with_parts(4, &[(1, vec![0, 1, 2])])),
            (5, clique_with_parts(5, &[(2, vec![0, 1]), (1, vec![2, 3])])),
            (
                5,
                clique_with_parts(5, &[(1, vec![0]), (1, vec![1, 2]), (1, vec![3])]),
            ),
        ];
        for (k, host) in &hosts {
            let v0 = vertex_set(0..*k);
            let anchor = *v0.iter().last().unwrap();
            let forest: EdgeSet = host
                .edges()
                .iter()
                .filter(|e| !(v0.contains(&e.u) && v0.contains(&e.v)))
                .map(|e| e.id)
                .collect();
            let trees = enumerate_trees_containing(host, &forest, 100_000).unwrap();
            let split = split_tree(host, &forest, &v0);
            let mut checked = 0;
            for tree in &trees {
                let sel = phi_select(host, tree, &v0, anchor).unwrap();
                for part in &split.boundary {
                    for (&e, &e2) in part.iter().cartesian_product(part.iter()) {
                        if e == e2 || !sel.selected.contains(&e) {
                            continue;
                        }
                        let moved = exchange(host, tree, &v0, e, e2).unwrap();
                        let moved_sel = phi_select(host, &moved, &v0, anchor).unwrap();
                        let mut expect = sel.selected.clone();
                        expect.remove(&e);
                        expect.insert(e2);
                        assert_eq!(moved_sel.selected, expect);
                        assert_eq!(&exchange(host, &moved, &v0, e2, e).unwrap(), tree);
                        checked += 1;
                    }
                }
            }
            assert!(checked > 0);
        }
    }

    #[test]
    fn census_matches_counts() {
        let host = clique_with_parts(4, &[(1, vec![0, 1]), (1, vec![2])]);
        let c = clique_forest_census(&host, &vertex_set(0..4), VertexId(3)).unwrap();
        assert_eq!((c.k, c.d, c.t), (4, 3, 2));
        assert_eq!(c.boundary_sizes, vec![2, 1]);
        assert_eq!(c.total, 4usize.pow(1) * 2);
        assert_eq!(c.fibers.len(), 2);
        assert!(c.fibers.values().all(|&s| s == 4));
    }

    fn structure_of(g: &MultiGraph) -> CliqueStructure {
        let c = clique_insert(g);
        CliqueStructure::new(&c.graph, &c.matching).unwrap()
    }

    #[test]
    fn structure_of_inserted_cliques() {
        let s = structure_of(&complete(4));
        assert_eq!(s.clique_count(), 4);
        assert!((0..4).all(|i| s.order(i) == 3 && s.matched_count(i) == 3));
        assert!(!s.every_clique_has_free_vertex());
        assert_eq!(
            enumerate_spanning_trees(s.quotient(), 100).unwrap().len(),
            16
        );

        let bad = cycle(4);
        let err = CliqueStructure::new(&bad, &edge_set([0])).unwrap_err();
        assert!(
            matches!(&err, Error::Domain(m) if m.contains("component 0")),
            "{err}"
        );
    }

    #[test]
    fn labels_of_inserted_triangle() {
        let s = structure_of(&cycle(3));
        let trees = enumerate_trees_containing(s.graph(), s.matching(), 100).unwrap();
        assert_eq!(trees.len(), 3);
        let labels: Vec<_> = trees
            .iter()
            .map(|t| algorithm_b(&s, t).unwrap().label)
            .collect();
        assert_eq!(labels.iter().unique().count(), 3);
        for l in &labels {
            assert_eq!(l.base_tree.len(), 2);
            assert_eq!(l.endpoint_map.len(), 1);
        }
        let report = verify_partition(&s, Exec::Sequential).unwrap();
        assert!(report.pass, "{:?}", report.failures);
        assert_eq!(report.tree_count, 3);
        assert!(!report.per_label_sizes_checked);
    }

    #[test]
    fn bridge_matching_gives_empty_maps() {
        // Two triangles joined by one matching edge.
        let q =
            MultiGraph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
                .unwrap();
        let s = CliqueStructure::new(&q, &edge_set([6])).unwrap();
        assert!(s.every_clique_has_free_vertex());
        let report = verify_partition(&s, Exec::Sequential).unwrap();
        assert!(report.pass, "{:?}", report.failures);
        assert_eq!(report.tree_count, 9);
        assert_eq!(report.label_count, 1);
        assert!(report.labels[0].endpoint_map.is_empty());
        assert_eq!(report.labels[0].observed, 9);
    }

    /// Four cliques, each with an M-free vertex, joined by a cycle of
    /// matching edges plus a chord; labels are checked class by class.
    #[test]
    fn per_label_sizes_with_free_vertices() {
        let mut q = MultiGraph::new(0);
        let mut cliques = Vec::new();
        for k in [4usize, 3, 4, 3] {
            let base = q.vertex_count();
            let vs: Vec<VertexId> = (0..k).map(|_| q.add_vertex()).collect();
            for (a, b) in vs.iter().tuple_combinations() {
                q.add_edge(*a, *b).unwrap();
            }
            cliques.push(base);
        }
        let m: Vec<EdgeId> = [(0, 4), (5, 7), (8, 11), (12, 1), (9, 2)]
            .iter()
            .map(|&(a, b)| q.add_edge(VertexId(a), VertexId(b)).unwrap())
            .collect();
        let m: EdgeSet = m.into_iter().collect();
        let s = CliqueStructure::new(&q, &m).unwrap();
        assert!(s.every_clique_has_free_vertex());
        let report = verify_partition(&s, Exec::default()).unwrap();
        assert!(report.pass, "{:?}", report.failures);
        assert!(report.per_label_sizes_checked);
        assert_eq!(report.label_count, report.labels.len());
        let sum: usize = report.labels.iter().map(|r| r.observed).sum();
        assert_eq!(sum, report.tree_count);
    }
}
