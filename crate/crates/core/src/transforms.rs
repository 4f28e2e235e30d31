//! Graph constructions: line graph, subdivision, clique insertion, vertex
//! insertion on an edge, and pendant splitting.
//!
//! Fresh vertices are always appended after the existing ids, in edge-id
//! order for subdivisions and in vertex-then-slot order for clique
//! insertion, so outputs are deterministic.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::graph::{EdgeId, EdgeSet, MultiGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineGraphResult {
    pub graph: MultiGraph,
    pub vertex_of_edge: BTreeMap<EdgeId, VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionResult {
    pub graph: MultiGraph,
    /// Original edge -> edges of its replacing path, from `u_e` to `v_e`.
    pub path_of_edge: BTreeMap<EdgeId, Vec<EdgeId>>,
    pub r: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueInsertResult {
    pub graph: MultiGraph,
    /// Images of the original edges; a perfect matching of the inserted graph.
    pub matching: EdgeSet,
    /// Original vertex -> the clique that replaced it.
    pub clique_of_vertex: Vec<Vec<VertexId>>,
}

/// `L(G)`: one vertex per edge, one edge per pair of edge slots sharing a
/// vertex. A parallel pair therefore gets two edges, one per shared end.
pub fn line_graph(g: &MultiGraph) -> LineGraphResult {
    let vertex_of_edge: BTreeMap<EdgeId, VertexId> = g
        .edge_ids()
        .enumerate()
        .map(|(i, id)| (id, VertexId(i)))
        .collect();
    let mut lg = MultiGraph::new(g.edge_count());
    for slots in g.incidence() {
        for (i, &(a, _)) in slots.iter().enumerate() {
            for &(b, _) in &slots[i + 1..] {
                lg.add_edge(vertex_of_edge[&a], vertex_of_edge[&b])
                    .expect("distinct edges give distinct line-graph vertices");
            }
        }
    }
    LineGraphResult {
        graph: lg,
        vertex_of_edge,
    }
}

/// `S_r(G)`: every edge replaced by a path of length `r + 1`.
pub fn subdivide(g: &MultiGraph, r: usize) -> SubdivisionResult {
    subdivide_subset(g, &g.edge_set(), r).expect("own edge set is valid")
}

/// `G_{r•F}`: only the edges of `F` are replaced by paths of length `r + 1`.
/// Edges of the result are numbered densely in the order they are produced.
pub fn subdivide_subset(g: &MultiGraph, subset: &EdgeSet, r: usize) -> Result<SubdivisionResult> {
    for &id in subset {
        g.try_edge(id)?;
    }
    let mut out = MultiGraph::new(g.vertex_count());
    let mut path_of_edge = BTreeMap::new();
    for e in g.edges() {
        let steps = if subset.contains(&e.id) { r } else { 0 };
        let mut path = Vec::with_capacity(steps + 1);
        let mut prev = e.u;
        for _ in 0..steps {
            let x = out.add_vertex();
            path.push(out.add_edge(prev, x)?);
            prev = x;
        }
        path.push(out.add_edge(prev, e.v)?);
        path_of_edge.insert(e.id, path);
    }
    Ok(SubdivisionResult {
        graph: out,
        path_of_edge,
        r,
    })
}

/// `G_{•e}`: a fresh vertex inserted on `e`.
pub fn insert_vertex_on_edge(g: &MultiGraph, e: EdgeId) -> Result<MultiGraph> {
    Ok(subdivide_subset(g, &EdgeSet::from([e]), 1)?.graph)
}

/// `G_{-E'}`: each edge `(u, v)` of `E'` is removed and replaced by two
/// pendant edges `(u, x)` and `(v, y)` on fresh vertices. Surviving edges keep
/// their ids; new edges follow.
pub fn pendant_split(g: &MultiGraph, split: &EdgeSet) -> Result<MultiGraph> {
    let mut out = g.delete_edges(split)?;
    for &id in split {
        let e = *g.try_edge(id)?;
        let x = out.add_vertex();
        let y = out.add_vertex();
        out.add_edge(e.u, x)?;
        out.add_edge(e.v, y)?;
    }
    Ok(out)
}

/// `C(G)`: each vertex of degree `s` is replaced by `K_s`, whose `i`-th vertex
/// takes over the `i`-th incident edge slot (slots in ascending edge id).
/// The edge images come first and keep the original order; clique edges
/// follow, vertex by vertex.
pub fn clique_insert(g: &MultiGraph) -> CliqueInsertResult {
    let incidence = g.incidence();
    let mut clique_of_vertex = Vec::with_capacity(g.vertex_count());
    let mut slot_vertex: BTreeMap<(EdgeId, VertexId), VertexId> = BTreeMap::new();
    let mut next = 0;
    for (v, slots) in incidence.iter().enumerate() {
        let mut clique = Vec::with_capacity(slots.len());
        for &(id, _) in slots {
            let w = VertexId(next);
            next += 1;
            slot_vertex.insert((id, VertexId(v)), w);
            clique.push(w);
        }
        clique_of_vertex.push(clique);
    }
    let mut out = MultiGraph::new(next);
    let mut matching = EdgeSet::new();
    for e in g.edges() {
        let a = slot_vertex[&(e.id, e.u)];
        let b = slot_vertex[&(e.id, e.v)];
        matching.insert(out.add_edge(a, b).expect("fresh endpoints"));
    }
    for clique in &clique_of_vertex {
        for (i, &a) in clique.iter().enumerate() {
            for &b in &clique[i + 1..] {
                out.add_edge(a, b).expect("distinct clique vertices");
            }
        }
    }
    CliqueInsertResult {
        graph: out,
        matching,
        clique_of_vertex,
    }
}
