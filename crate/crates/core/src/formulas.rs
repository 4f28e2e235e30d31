//! Exact evaluators for the closed forms counting spanning trees of line
//! graphs, subdivided line graphs and clique-contractions.
//!
//! Sums over edge subsets `E' ⊆ E(G)` and over endpoint maps `g ∈ Γ(E')`
//! are enumerated explicitly. All arithmetic is over big rationals; the
//! evaluators that return [`BigCount`] assert that the final value is an
//! integer and report [`Error::NonIntegral`] otherwise.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{argument, domain, Error, Result};
use crate::graph::{EdgeId, EdgeSet, MultiGraph, SpanningSubset, VertexId};
use crate::par::Exec;
use crate::partition::CliqueStructure;
use crate::transforms::{line_graph, pendant_split};
use crate::treecount::{count_matrix_tree, enumerate_spanning_trees};
use crate::{BigCount, ExactRational};

/// Largest edge set whose endpoint maps may be enumerated.
pub const MAX_GAMMA_EDGES: usize = 30;

/// Largest edge count for the full `2^m` subset loops.
pub const MAX_SUBSET_EDGES: usize = 20;

/// Cap on explicit tree enumerations performed by the evaluators.
pub const DEFAULT_TREE_LIMIT: usize = 1 << 22;

/// Assigns each edge of its domain one of the edge's two ends.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EndpointMap {
    assignment: BTreeMap<EdgeId, VertexId>,
}

impl EndpointMap {
    /// Validates that each image is an end of its edge.
    pub fn new(g: &MultiGraph, assignment: BTreeMap<EdgeId, VertexId>) -> Result<Self> {
        for (&id, &w) in &assignment {
            let e = g.try_edge(id)?;
            if !e.touches(w) {
                return Err(argument(format!(
                    "vertex {} is not an end of edge {}",
                    w.0, id.0
                )));
            }
        }
        Ok(EndpointMap { assignment })
    }

    pub fn empty() -> Self {
        EndpointMap {
            assignment: BTreeMap::new(),
        }
    }

    pub(crate) fn trusted(assignment: BTreeMap<EdgeId, VertexId>) -> Self {
        EndpointMap { assignment }
    }

    pub fn get(&self, e: EdgeId) -> Option<VertexId> {
        self.assignment.get(&e).copied()
    }

    pub fn domain(&self) -> EdgeSet {
        self.assignment.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, VertexId)> + '_ {
        self.assignment.iter().map(|(&e, &v)| (e, v))
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// Edges sent to `v`.
    pub fn preimage(&self, v: VertexId) -> EdgeSet {
        self.iter()
            .filter(|&(_, w)| w == v)
            .map(|(e, _)| e)
            .collect()
    }

    /// `|g^{-1}(v)|` for every vertex of a graph of order `n`.
    pub fn preimage_profile(&self, n: usize) -> PreimageProfile {
        let mut counts = vec![0; n];
        for &w in self.assignment.values() {
            counts[w.0] += 1;
        }
        PreimageProfile { counts }
    }
}

/// Preimage sizes of an [`EndpointMap`]; sums to the size of its domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreimageProfile {
    counts: Vec<usize>,
}

impl PreimageProfile {
    pub fn get(&self, v: VertexId) -> usize {
        self.counts[v.0]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

/// Iterator over `Γ(E')` in binary-counter order: bit `i` of the counter
/// selects the end of the `i`-th edge (ascending id), 0 for `u_e`.
#[derive(Debug, Clone)]
pub struct GammaIter {
    edges: Vec<(EdgeId, VertexId, VertexId)>,
    next: u64,
    end: u64,
}

impl Iterator for GammaIter {
    type Item = EndpointMap;

    fn next(&mut self) -> Option<EndpointMap> {
        if self.next == self.end {
            return None;
        }
        let code = self.next;
        self.next += 1;
        let assignment = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, &(id, u, v))| (id, if code >> i & 1 == 0 { u } else { v }))
            .collect();
        Some(EndpointMap { assignment })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for GammaIter {}

/// `Γ(E')`: exactly `2^{|E'|}` maps.
pub fn enumerate_gamma(g: &MultiGraph, subset: &EdgeSet) -> Result<GammaIter> {
    if subset.len() > MAX_GAMMA_EDGES {
        return Err(Error::Resource(format!(
            "Γ over {} edges exceeds the {MAX_GAMMA_EDGES}-edge limit",
            subset.len()
        )));
    }
    let edges = subset
        .iter()
        .map(|&id| g.try_edge(id).map(|e| (e.id, e.u, e.v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(GammaIter {
        end: 1u64 << edges.len(),
        edges,
        next: 0,
    })
}

/// `base^exp` over the rationals; `0^0 = 1`, `0^{-k}` is a domain error.
pub fn rational_pow(base: &BigInt, exp: i64) -> Result<ExactRational> {
    let magnitude = u32::try_from(exp.unsigned_abs())
        .map_err(|_| argument(format!("exponent {exp} too large")))?;
    if exp >= 0 {
        return Ok(ExactRational::from_integer(Pow::pow(base, magnitude)));
    }
    if base.is_zero() {
        return Err(domain("zero raised to a negative power"));
    }
    Ok(ExactRational::new(BigInt::one(), Pow::pow(base, magnitude)))
}

fn int_pow(base: u64, exp: i64) -> ExactRational {
    rational_pow(&BigInt::from(base), exp).expect("positive base")
}

/// Converts an exact rational that must be a non-negative integer.
pub fn to_count(value: &ExactRational, what: &str) -> Result<BigCount> {
    if !value.is_integer() {
        return Err(Error::NonIntegral(format!("{what} evaluated to {value}")));
    }
    value
        .to_integer()
        .to_biguint()
        .ok_or_else(|| Error::NonIntegral(format!("{what} evaluated to negative {value}")))
}

fn count_as_rational(c: &BigCount) -> ExactRational {
    ExactRational::from_integer(BigInt::from(c.clone()))
}

fn check_connected_with_edges(g: &MultiGraph) -> Result<()> {
    if !g.is_connected() {
        return Err(domain("graph must be connected"));
    }
    if g.edge_count() == 0 {
        return Err(domain("graph must have at least one edge"));
    }
    Ok(())
}

fn check_subset_size(m: usize) -> Result<()> {
    if m > MAX_SUBSET_EDGES {
        return Err(Error::Resource(format!(
            "{m} edges exceed the {MAX_SUBSET_EDGES}-edge subset-sum limit"
        )));
    }
    Ok(())
}

/// Edge subset encoded by `mask` over the edges in id order.
fn subset_of_mask(edges: &[EdgeId], mask: u64) -> EdgeSet {
    edges
        .iter()
        .enumerate()
        .filter(|&(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e)
        .collect()
}

/// `t(G[E'])` and the power of `r` attached to it, or `None` when the term
/// vanishes. A non-zero `t(G[E'])` forces `|E'| >= n - 1`, so the exponent
/// of `r` is never negative on surviving terms.
fn subset_weight(g: &MultiGraph, kept: &EdgeSet, r: usize) -> Option<(BigCount, BigUint)> {
    let n = g.vertex_count();
    if kept.len() + 1 < n {
        return None;
    }
    let exp = kept.len() + 1 - n;
    if r == 0 && exp > 0 {
        return None;
    }
    let t = count_matrix_tree(&g.spanning_subgraph_unchecked(kept));
    if t.is_zero() {
        return None;
    }
    Some((t, BigUint::from(r).pow(exp as u32)))
}

/// Main closed form:
/// `t(L(S_r(G))) = ∏_v d(v)^{d(v)-2} Σ_{E'} t(G[E']) r^{|E'|-n+1} ∏_{e∉E'} (1/d(u_e) + 1/d(v_e))`.
pub fn eval_theorem_main(g: &MultiGraph, r: usize) -> Result<ExactRational> {
    eval_theorem_main_with(g, r, Exec::default())
}

pub fn eval_theorem_main_with(g: &MultiGraph, r: usize, exec: Exec) -> Result<ExactRational> {
    check_connected_with_edges(g)?;
    check_subset_size(g.edge_count())?;
    let deg = g.degrees();
    let ids: Vec<EdgeId> = g.edge_ids().collect();
    let weight: Vec<ExactRational> = g
        .edges()
        .iter()
        .map(|e| {
            ExactRational::new(BigInt::one(), BigInt::from(deg[e.u.0]))
                + ExactRational::new(BigInt::one(), BigInt::from(deg[e.v.0]))
        })
        .collect();
    let prefactor: ExactRational = deg
        .iter()
        .map(|&d| int_pow(d as u64, d as i64 - 2))
        .product();
    let sum = exec.map_reduce(
        0..1u64 << ids.len(),
        ExactRational::zero,
        |mask| {
            let kept = subset_of_mask(&ids, mask);
            let Some((t, rpow)) = subset_weight(g, &kept, r) else {
                return ExactRational::zero();
            };
            let missing: ExactRational = (0..ids.len())
                .filter(|&i| mask >> i & 1 == 0)
                .map(|i| weight[i].clone())
                .product();
            count_as_rational(&(t * rpow)) * missing
        },
        |a, b| a + b,
    );
    Ok(prefactor * sum)
}

/// The same count with the edge-weight product expanded over endpoint maps:
/// `Σ_{E'} t(G[E']) r^{|E'|-n+1} Σ_{g∈Γ(E-E')} ∏_v d(v)^{d(v)-2-|g^{-1}(v)|}`.
pub fn eval_theorem_main_gamma_form(g: &MultiGraph, r: usize) -> Result<ExactRational> {
    eval_theorem_main_gamma_form_with(g, r, Exec::default())
}

pub fn eval_theorem_main_gamma_form_with(
    g: &MultiGraph,
    r: usize,
    exec: Exec,
) -> Result<ExactRational> {
    check_connected_with_edges(g)?;
    check_subset_size(g.edge_count())?;
    let deg = g.degrees();
    let n = g.vertex_count();
    let ids: Vec<EdgeId> = g.edge_ids().collect();
    let all = g.edge_set();
    exec.map_reduce(
        0..1u64 << ids.len(),
        || Ok(ExactRational::zero()),
        |mask| {
            let kept = subset_of_mask(&ids, mask);
            let Some((t, rpow)) = subset_weight(g, &kept, r) else {
                return Ok(ExactRational::zero());
            };
            let missing: EdgeSet = all.difference(&kept).copied().collect();
            let spare = missing.len() as i64;
            // Every factor d^{d-2-c} is scaled by d^{2+|missing|} so the inner
            // sum stays in the integers.
            let mut scaled = BigUint::zero();
            for map in enumerate_gamma(g, &missing)? {
                let profile = map.preimage_profile(n);
                let mut term = BigUint::one();
                for (v, &d) in deg.iter().enumerate() {
                    let e = d as i64 + spare - profile.counts()[v] as i64;
                    term *= BigUint::from(d).pow(e as u32);
                }
                scaled += term;
            }
            let scale: BigUint = deg
                .iter()
                .map(|&d| BigUint::from(d).pow((2 + spare) as u32))
                .product();
            let inner = ExactRational::new(BigInt::from(scaled), BigInt::from(scale));
            Ok(count_as_rational(&(t * rpow)) * inner)
        },
        |a: Result<ExactRational>, b| Ok(a? + b?),
    )
}

/// Integer value of the main closed form.
pub fn theorem_main_count(g: &MultiGraph, r: usize) -> Result<BigCount> {
    to_count(&eval_theorem_main(g, r)?, "main closed form")
}

fn regular_degree(g: &MultiGraph) -> Result<usize> {
    if !g.is_connected() {
        return Err(domain("graph must be connected"));
    }
    let deg = g.degrees();
    let k = deg[0];
    if k == 0 || deg.iter().any(|&d| d != k) {
        return Err(domain(format!("graph is not regular (degrees {deg:?})")));
    }
    Ok(k)
}

fn cyclomatic(g: &MultiGraph) -> i64 {
    g.edge_count() as i64 - g.vertex_count() as i64 + 1
}

/// `t(L(G)) = k^{m-n-1} 2^{m-n+1} t(G)` for connected `k`-regular `G`.
pub fn eval_regular_line(g: &MultiGraph) -> Result<BigCount> {
    let k = regular_degree(g)? as u64;
    let c = cyclomatic(g);
    let value = int_pow(k, c - 2) * int_pow(2, c) * count_as_rational(&count_matrix_tree(g));
    to_count(&value, "regular line-graph formula")
}

/// `t(L(S(G))) = k^{m-n-1} (k+2)^{m-n+1} t(G)` for connected `k`-regular `G`.
pub fn eval_regular_subdiv_line(g: &MultiGraph) -> Result<BigCount> {
    let k = regular_degree(g)? as u64;
    let c = cyclomatic(g);
    let value = int_pow(k, c - 2) * int_pow(k + 2, c) * count_as_rational(&count_matrix_tree(g));
    to_count(&value, "regular subdivided line-graph formula")
}

/// Degree pattern of a pendant-regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PendantPattern {
    pub k: usize,
    /// Vertices of degree `k`.
    pub core: usize,
    /// Vertices of degree 1.
    pub pendants: usize,
}

/// Recognises a connected graph whose degrees are all 1 or a single `k >= 2`.
pub fn pendant_pattern(g: &MultiGraph) -> Result<PendantPattern> {
    if !g.is_connected() {
        return Err(domain("graph must be connected"));
    }
    let deg = g.degrees();
    let big: Vec<usize> = deg.iter().copied().filter(|&d| d != 1).unique().collect();
    match big.as_slice() {
        [k] if *k >= 2 => Ok(PendantPattern {
            k: *k,
            core: deg.iter().filter(|&&d| d == *k).count(),
            pendants: deg.iter().filter(|&&d| d == 1).count(),
        }),
        _ => Err(domain(format!(
            "degrees must all be 1 or one common k >= 2 (found {:?})",
            deg.iter().copied().unique().sorted().collect::<Vec<_>>()
        ))),
    }
}

/// `t(L(S_r(G))) = k^{m+s-n-1} (rk+2)^{m-n+1} t(G)` for a connected graph of
/// order `n+s` and size `m+s` whose `s` pendant vertices have degree 1 and
/// whose other vertices have degree `k`.
pub fn eval_pendant_regular(g: &MultiGraph, r: usize) -> Result<BigCount> {
    let p = pendant_pattern(g)?;
    let total_edges = g.edge_count() as i64;
    let core_edges = total_edges - p.pendants as i64;
    let k = p.k as u64;
    let value = int_pow(k, total_edges - p.core as i64 - 1)
        * int_pow(r as u64 * k + 2, core_edges - p.core as i64 + 1)
        * count_as_rational(&count_matrix_tree(g));
    to_count(&value, "pendant-regular formula")
}

/// `t(L(G)) = a^{(a-2)n1} b^{(b-2)n2} (1/a + 1/b)^{m-n+1} t(G)` for a
/// connected bipartite `G = (A, B)` with degrees in `{1, a}` on `A` and in
/// `{1, b}` on `B`.
pub fn eval_semiregular_bipartite(g: &MultiGraph, a: usize, b: usize) -> Result<BigCount> {
    if a < 2 || b < 2 {
        return Err(argument("a and b must be at least 2"));
    }
    if !g.is_connected() {
        return Err(domain("graph must be connected"));
    }
    let side = g
        .bipartition()
        .ok_or_else(|| domain("graph is not bipartite"))?;
    let deg = g.degrees();
    let fits = |a_side: bool| {
        (0..g.vertex_count()).all(|v| {
            let want = if side[v] == a_side { a } else { b };
            deg[v] == 1 || deg[v] == want
        })
    };
    let a_side = [false, true]
        .into_iter()
        .find(|&s| fits(s))
        .ok_or_else(|| {
            domain(format!(
                "degree pattern does not fit ({{1,{a}}}, {{1,{b}}})"
            ))
        })?;
    let n1 = (0..g.vertex_count())
        .filter(|&v| side[v] == a_side && deg[v] == a && a != 1)
        .count() as i64;
    let n2 = (0..g.vertex_count())
        .filter(|&v| side[v] != a_side && deg[v] == b)
        .count() as i64;
    let (a, b) = (a as u64, b as u64);
    let c = cyclomatic(g);
    let mixed = ExactRational::new(BigInt::from(a + b), BigInt::from(a * b));
    let value = int_pow(a, (a as i64 - 2) * n1)
        * int_pow(b, (b as i64 - 2) * n2)
        * Pow::pow(mixed, c as u64)
        * count_as_rational(&count_matrix_tree(g));
    to_count(&value, "semiregular bipartite formula")
}

/// Spanning trees of `K_k` containing a spanning forest with the given
/// component orders: `k^{c-2} ∏ k_i`.
pub fn eval_lovasz_forest(k: usize, component_orders: &[usize]) -> Result<BigCount> {
    if component_orders.is_empty() || component_orders.contains(&0) {
        return Err(argument(
            "component orders must be a non-empty list of positive integers",
        ));
    }
    if component_orders.iter().sum::<usize>() != k {
        return Err(argument(format!("component orders do not sum to k = {k}")));
    }
    let c = component_orders.len() as i64;
    let value = int_pow(k as u64, c - 2)
        * component_orders
            .iter()
            .map(|&o| int_pow(o as u64, 1))
            .product::<ExactRational>();
    to_count(&value, "forest extension count")
}

/// Spanning trees of a `k`-clique with `d` pendant forest edges reaching `t`
/// outside components: `k^{k-2+t-d} ∏ |E(V0, V(F_j))|`.
pub fn eval_clique_boundary_count(
    k: usize,
    d: usize,
    t: usize,
    boundary_sizes: &[usize],
) -> Result<BigCount> {
    if boundary_sizes.len() != t {
        return Err(argument(format!(
            "{} boundary sizes given for t = {t} components",
            boundary_sizes.len()
        )));
    }
    if boundary_sizes.contains(&0) {
        return Err(argument("every component needs at least one boundary edge"));
    }
    if boundary_sizes.iter().sum::<usize>() != d {
        return Err(argument(format!("boundary sizes do not sum to d = {d}")));
    }
    if !(k >= d && d >= t && t >= 1) {
        return Err(argument(format!(
            "need k >= d >= t >= 1 (k={k}, d={d}, t={t})"
        )));
    }
    let value = int_pow(k as u64, k as i64 - 2 + t as i64 - d as i64)
        * boundary_sizes
            .iter()
            .map(|&s| int_pow(s as u64, 1))
            .product::<ExactRational>();
    to_count(&value, "clique boundary count")
}

/// Spanning trees of `Q` containing the matching `M`, where the components
/// of `Q - M` are cliques `V_i` of order `k_i`:
/// `Σ_{T∈T(Q*)} Σ_{f∈Γ(E(Q*)-E(T))} ∏_i k_i^{k_i-2-|f^{-1}(v_i)|}`.
pub fn eval_gen_result(q: &MultiGraph, matching: &SpanningSubset) -> Result<BigCount> {
    let structure = CliqueStructure::new(q, matching.edges())?;
    eval_gen_result_for(&structure, Exec::default())
}

pub fn eval_gen_result_for(structure: &CliqueStructure, exec: Exec) -> Result<BigCount> {
    to_count(
        &gen_result_sum(structure, exec)?,
        "clique-contraction formula",
    )
}

pub(crate) fn gen_result_sum(structure: &CliqueStructure, exec: Exec) -> Result<ExactRational> {
    let quotient = structure.quotient();
    let trees = enumerate_spanning_trees(quotient, DEFAULT_TREE_LIMIT)?;
    let all = quotient.edge_set();
    let sums = exec.map_collect(&trees, |tree| -> Result<ExactRational> {
        let outside: EdgeSet = all.difference(tree.edges()).copied().collect();
        let mut sum = ExactRational::zero();
        for f in enumerate_gamma(quotient, &outside)? {
            sum += structure.predicted_fiber_size(&f);
        }
        Ok(sum)
    });
    sums.into_iter().sum()
}

/// Both sides of `C(m-n+1, i) t(H) = Σ_{|E'|=i} t(H - E')`.
pub fn eval_binomial_deletion_identity(h: &MultiGraph, i: usize) -> Result<(BigCount, BigCount)> {
    if !h.is_connected() {
        return Err(domain("graph must be connected"));
    }
    let c = cyclomatic(h) as usize;
    if i > c {
        return Err(argument(format!("i = {i} exceeds m - n + 1 = {c}")));
    }
    let t = count_matrix_tree(h);
    let left = binomial(BigUint::from(c), BigUint::from(i)) * &t;
    let ids: Vec<EdgeId> = h.edge_ids().collect();
    let right = ids
        .iter()
        .copied()
        .combinations(i)
        .map(|del| {
            let removed: EdgeSet = del.into_iter().collect();
            count_matrix_tree(&h.delete_edges(&removed).expect("own edges"))
        })
        .sum();
    Ok((left, right))
}

/// `Σ_{E'⊆F} r^{|E'|} t(L(G_{-E'}))`, which equals `t(L(G_{r•F}))`.
pub fn eval_subdivision_expansion(g: &MultiGraph, subset: &EdgeSet, r: usize) -> Result<BigCount> {
    eval_subdivision_expansion_with(g, subset, r, Exec::default())
}

pub fn eval_subdivision_expansion_with(
    g: &MultiGraph,
    subset: &EdgeSet,
    r: usize,
    exec: Exec,
) -> Result<BigCount> {
    for &id in subset {
        g.try_edge(id)?;
    }
    check_subset_size(subset.len())?;
    let ids: Vec<EdgeId> = subset.iter().copied().collect();
    let total = exec.map_reduce(
        0..1u64 << ids.len(),
        BigCount::zero,
        |mask| {
            let split = subset_of_mask(&ids, mask);
            // 0^0 = 1: with r = 0 only the empty split survives.
            let rpow = BigUint::from(r).pow(split.len() as u32);
            if rpow.is_zero() {
                return BigCount::zero();
            }
            let h = pendant_split(g, &split).expect("validated split");
            rpow * count_matrix_tree(&line_graph(&h).graph)
        },
        |a, b| a + b,
    );
    Ok(total)
}

/// Largest `|E'|` a `u64` subset mask can index; used by callers that
/// pre-check sizes.
pub fn subset_count(m: usize) -> Option<u64> {
    1u64.checked_shl(m.to_u32()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{edge_set, named::*};
    use crate::transforms::{clique_insert, subdivide};

    fn big(x: u64) -> BigCount {
        BigCount::from(x)
    }

    fn oracle(g: &MultiGraph, r: usize) -> BigCount {
        count_matrix_tree(&line_graph(&subdivide(g, r).graph).graph)
    }

    #[test]
    fn gamma_enumeration() {
        let g = complete(4);
        let maps: Vec<_> = enumerate_gamma(&g, &EdgeSet::new()).unwrap().collect();
        assert_eq!(maps, vec![EndpointMap::empty()]);

        let maps: Vec<_> = enumerate_gamma(&g, &edge_set([2])).unwrap().collect();
        assert_eq!(maps.len(), 2);
        assert_eq!(maps[0].get(EdgeId(2)), Some(VertexId(0)));
        assert_eq!(maps[1].get(EdgeId(2)), Some(VertexId(3)));

        let maps: Vec<_> = enumerate_gamma(&g, &edge_set([0, 3, 5])).unwrap().collect();
        assert_eq!(maps.len(), 8);
        assert_eq!(maps.iter().unique().count(), 8);
        for m in &maps {
            assert_eq!(m.preimage_profile(4).total(), 3);
        }

        let wide = MultiGraph::from_edges(2, &vec![(0, 1); 31]).unwrap();
        assert!(matches!(
            enumerate_gamma(&wide, &wide.edge_set()),
            Err(Error::Resource(_))
        ));
        // Parallel edges still have two distinct ends.
        let b = bond(3);
        assert_eq!(enumerate_gamma(&b, &b.edge_set()).unwrap().count(), 8);
    }

    #[test]
    fn main_formula_examples() {
        assert_eq!(theorem_main_count(&path(2), 0).unwrap(), big(1));
        assert_eq!(theorem_main_count(&cycle(4), 0).unwrap(), big(4));
        assert_eq!(theorem_main_count(&complete(4), 1).unwrap(), big(6000));
        assert_eq!(big(3 * 125 * 16), big(6000));
        assert_eq!(oracle(&complete(4), 1), big(6000));
        assert!(matches!(
            eval_theorem_main(&MultiGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap(), 0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn gamma_form_matches() {
        for g in [path(2), cycle(4), complete(4), path(3), bond(2)] {
            for r in 0..3 {
                let a = eval_theorem_main(&g, r).unwrap();
                let b = eval_theorem_main_gamma_form(&g, r).unwrap();
                assert_eq!(a, b);
            }
        }
        assert_eq!(
            to_count(&eval_theorem_main_gamma_form(&cycle(4), 2).unwrap(), "x").unwrap(),
            oracle(&cycle(4), 2)
        );
        assert_eq!(theorem_main_count(&path(3), 0).unwrap(), big(1));
    }

    #[test]
    fn exec_modes_agree() {
        let g = complete(4);
        for r in 0..3 {
            assert_eq!(
                eval_theorem_main_with(&g, r, Exec::Sequential).unwrap(),
                eval_theorem_main_with(&g, r, Exec::Parallel).unwrap()
            );
        }
    }

    #[test]
    fn regular_formulas() {
        assert_eq!(eval_regular_line(&cycle(4)).unwrap(), big(4));
        assert_eq!(eval_regular_line(&complete(4)).unwrap(), big(384));
        assert_eq!(count_matrix_tree(&line_graph(&complete(4)).graph), big(384));
        assert_eq!(eval_regular_line(&petersen()).unwrap(), big(81 * 64 * 2000));
        assert_eq!(eval_regular_line(&petersen()).unwrap(), big(10_368_000));
        assert!(eval_regular_line(&path(3)).is_err());

        assert_eq!(eval_regular_subdiv_line(&cycle(4)).unwrap(), big(8));
        assert_eq!(eval_regular_subdiv_line(&complete(4)).unwrap(), big(6000));
        let k33 = complete_bipartite(3, 3);
        assert_eq!(eval_regular_subdiv_line(&k33).unwrap(), big(9 * 625 * 81));
        assert_eq!(eval_regular_subdiv_line(&k33).unwrap(), oracle(&k33, 1));
    }

    #[test]
    fn pendant_regular_formula() {
        let mut k4_tail = complete(4);
        let x = k4_tail.add_vertex();
        k4_tail.add_edge(VertexId(0), x).unwrap();
        assert!(matches!(
            eval_pendant_regular(&k4_tail, 1),
            Err(Error::Domain(_))
        ));

        assert_eq!(eval_pendant_regular(&cycle(4), 0).unwrap(), big(4));

        let mut g = complete(4);
        for v in 0..4 {
            let x = g.add_vertex();
            g.add_edge(VertexId(v), x).unwrap();
        }
        assert_eq!(eval_pendant_regular(&g, 1).unwrap(), big(3_538_944));
        assert_eq!(oracle(&g, 1), big(3_538_944));
        assert_eq!(eval_pendant_regular(&star(3), 0).unwrap(), big(3));
    }

    #[test]
    fn bipartite_formula() {
        assert_eq!(eval_semiregular_bipartite(&cycle(4), 2, 2).unwrap(), big(4));
        let k23 = complete_bipartite(2, 3);
        assert_eq!(eval_semiregular_bipartite(&k23, 3, 2).unwrap(), big(75));
        assert_eq!(count_matrix_tree(&line_graph(&k23).graph), big(75));
        assert_eq!(eval_semiregular_bipartite(&star(3), 3, 2).unwrap(), big(3));
        assert_eq!(eval_semiregular_bipartite(&star(3), 3, 5).unwrap(), big(3));
        assert!(eval_semiregular_bipartite(&cycle(5), 2, 2).is_err());
        assert!(eval_semiregular_bipartite(&k23, 2, 2).is_err());
    }

    #[test]
    fn lovasz_and_clique_boundary() {
        assert_eq!(eval_lovasz_forest(4, &[2, 1, 1]).unwrap(), big(8));
        assert_eq!(eval_lovasz_forest(4, &[4]).unwrap(), big(1));
        assert_eq!(eval_lovasz_forest(3, &[1, 1, 1]).unwrap(), big(3));
        assert!(eval_lovasz_forest(4, &[2, 1]).is_err());

        assert_eq!(eval_clique_boundary_count(3, 1, 1, &[1]).unwrap(), big(3));
        assert_eq!(
            eval_clique_boundary_count(4, 2, 2, &[1, 1]).unwrap(),
            big(16)
        );
        assert_eq!(eval_clique_boundary_count(4, 3, 1, &[3]).unwrap(), big(3));
        assert!(eval_clique_boundary_count(4, 3, 2, &[3]).is_err());
        assert!(eval_clique_boundary_count(2, 3, 1, &[3]).is_err());
    }

    #[test]
    fn gen_result_examples() {
        let c = clique_insert(&cycle(3));
        let m =
            SpanningSubset::new(&c.graph, crate::SubsetRole::Matching, c.matching.clone()).unwrap();
        assert_eq!(eval_gen_result(&c.graph, &m).unwrap(), big(3));

        let single = path(2);
        let m = SpanningSubset::new(&single, crate::SubsetRole::Matching, edge_set([0])).unwrap();
        assert_eq!(eval_gen_result(&single, &m).unwrap(), big(1));

        let c = clique_insert(&complete(4));
        let m =
            SpanningSubset::new(&c.graph, crate::SubsetRole::Matching, c.matching.clone()).unwrap();
        assert_eq!(eval_gen_result(&c.graph, &m).unwrap(), big(384));
    }

    #[test]
    fn binomial_identity_examples() {
        assert_eq!(
            eval_binomial_deletion_identity(&cycle(4), 1).unwrap(),
            (big(4), big(4))
        );
        let k4 = complete(4);
        assert_eq!(
            eval_binomial_deletion_identity(&k4, 0).unwrap(),
            (big(16), big(16))
        );
        assert_eq!(
            eval_binomial_deletion_identity(&k4, 2).unwrap(),
            (big(48), big(48))
        );
        assert!(eval_binomial_deletion_identity(&k4, 4).is_err());
    }

    #[test]
    fn subdivision_expansion_examples() {
        let c3 = cycle(3);
        let base = count_matrix_tree(&line_graph(&c3).graph);
        assert_eq!(
            eval_subdivision_expansion(&c3, &EdgeSet::new(), 3).unwrap(),
            base
        );
        assert_eq!(
            eval_subdivision_expansion(&c3, &c3.edge_set(), 0).unwrap(),
            base
        );
        let c6 = count_matrix_tree(&line_graph(&cycle(6)).graph);
        assert_eq!(
            eval_subdivision_expansion(&c3, &c3.edge_set(), 1).unwrap(),
            c6
        );
    }
}
