//! Exact spanning-tree counters.
//!
//! Three independent routes: the Matrix-Tree theorem evaluated with
//! fraction-free (Bareiss) elimination over big integers, explicit
//! enumeration by include/exclude branching, and the deletion-contraction
//! recurrence. No floating point is used anywhere.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{DisjointSets, EdgeId, EdgeSet, MultiGraph, SpanningSubset, SubsetRole};
use crate::BigCount;

/// `t(G)` via the Matrix-Tree theorem. The minor deletes vertex 0.
///
/// Returns 0 for disconnected graphs (and for the empty graph), 1 for a
/// single vertex.
pub fn count_matrix_tree(g: &MultiGraph) -> BigCount {
    count_matrix_tree_minor(g, 0)
}

/// Same as [`count_matrix_tree`] with an explicit deleted row/column.
pub fn count_matrix_tree_minor(g: &MultiGraph, removed: usize) -> BigCount {
    let n = g.vertex_count();
    if n == 0 || !g.is_connected() {
        return BigCount::zero();
    }
    if n == 1 {
        return BigCount::one();
    }
    assert!(removed < n, "deleted vertex out of range");
    let index = |v: usize| -> Option<usize> {
        match v.cmp(&removed) {
            std::cmp::Ordering::Less => Some(v),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(v - 1),
        }
    };
    let mut lap = vec![vec![0i64; n - 1]; n - 1];
    for e in g.edges() {
        let (a, b) = (index(e.u.0), index(e.v.0));
        if let Some(a) = a {
            lap[a][a] += 1;
        }
        if let Some(b) = b {
            lap[b][b] += 1;
        }
        if let (Some(a), Some(b)) = (a, b) {
            lap[a][b] -= 1;
            lap[b][a] -= 1;
        }
    }
    let matrix = lap
        .into_iter()
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect();
    let det = bareiss_determinant(matrix);
    debug_assert!(!det.is_negative(), "Laplacian minors are non-negative");
    det.to_biguint().expect("non-negative determinant")
}

/// Determinant by fraction-free elimination. Every division is exact.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in rest.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..n {
                let updated = &row[j] * pivot - &factor * &pivot_row[j];
                row[j] = updated / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = pivot.clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// All spanning trees, in lexicographic order of their sorted edge ids.
/// More than `limit` trees is an error rather than a silent truncation.
pub fn enumerate_spanning_trees(g: &MultiGraph, limit: usize) -> Result<Vec<SpanningSubset>> {
    enumerate_trees_containing(g, &EdgeSet::new(), limit)
}

/// Spanning trees of `g` containing every edge of `required`, in
/// lexicographic order. Empty if `required` has a cycle.
pub fn enumerate_trees_containing(
    g: &MultiGraph,
    required: &EdgeSet,
    limit: usize,
) -> Result<Vec<SpanningSubset>> {
    let mut dsu = DisjointSets::new(g.vertex_count());
    let mut components = g.vertex_count();
    for &id in required {
        let e = g.try_edge(id)?;
        if !dsu.union(e.u.0, e.v.0) {
            return Ok(Vec::new());
        }
        components -= 1;
    }
    let mut out = Vec::new();
    if g.vertex_count() == 0 {
        return Ok(out);
    }
    let optional: Vec<_> = g
        .edges()
        .iter()
        .filter(|e| !required.contains(&e.id))
        .map(|e| (e.id, e.u.0, e.v.0))
        .collect();
    let mut search = TreeSearch {
        optional: &optional,
        required,
        limit,
        out: &mut out,
        chosen: Vec::new(),
    };
    search.branch(0, dsu, components)?;
    debug_assert!(out.windows(2).all(|w| w[0].edges() < w[1].edges()));
    Ok(out)
}

struct TreeSearch<'a> {
    optional: &'a [(EdgeId, usize, usize)],
    required: &'a EdgeSet,
    limit: usize,
    out: &'a mut Vec<SpanningSubset>,
    chosen: Vec<EdgeId>,
}

impl TreeSearch<'_> {
    fn branch(&mut self, idx: usize, dsu: DisjointSets, components: usize) -> Result<()> {
        if components == 1 {
            if self.out.len() == self.limit {
                return Err(Error::Resource(format!(
                    "more than {} spanning trees",
                    self.limit
                )));
            }
            let mut edges = self.required.clone();
            edges.extend(self.chosen.iter().copied());
            self.out
                .push(SpanningSubset::trusted(SubsetRole::Tree, edges));
            return Ok(());
        }
        if idx == self.optional.len() || !self.completable(idx, &dsu, components) {
            return Ok(());
        }
        let (id, u, v) = self.optional[idx];
        let mut with = dsu.clone();
        if with.union(u, v) {
            self.chosen.push(id);
            self.branch(idx + 1, with, components - 1)?;
            self.chosen.pop();
        }
        self.branch(idx + 1, dsu, components)
    }

    /// Can the remaining optional edges still connect everything?
    fn completable(&self, idx: usize, dsu: &DisjointSets, mut components: usize) -> bool {
        let mut probe = dsu.clone();
        for &(_, u, v) in &self.optional[idx..] {
            if probe.union(u, v) {
                components -= 1;
                if components == 1 {
                    return true;
                }
            }
        }
        components == 1
    }
}

/// Spanning trees of a host that contain a fixed edge set.
#[derive(Debug, Clone)]
pub struct ConstrainedFamily<'a> {
    pub host: &'a MultiGraph,
    pub required: EdgeSet,
}

impl<'a> ConstrainedFamily<'a> {
    pub fn new(host: &'a MultiGraph, required: EdgeSet) -> Result<Self> {
        for &id in &required {
            host.try_edge(id)?;
        }
        Ok(ConstrainedFamily { host, required })
    }

    pub fn from_subset(host: &'a MultiGraph, required: &SpanningSubset) -> Result<Self> {
        Self::new(host, required.edges().clone())
    }

    pub fn count(&self) -> BigCount {
        count_trees_containing(self)
    }

    pub fn enumerate(&self, limit: usize) -> Result<Vec<SpanningSubset>> {
        enumerate_trees_containing(self.host, &self.required, limit)
    }
}

/// `|T_H(F)|`: contract `F` and count the contraction; 0 if `F` has a cycle.
pub fn count_trees_containing(fam: &ConstrainedFamily<'_>) -> BigCount {
    if !fam.host.is_acyclic(&fam.required).expect("ids validated") {
        return BigCount::zero();
    }
    let (contracted, _) = fam
        .host
        .contract_edges(&fam.required)
        .expect("ids validated");
    count_matrix_tree(&contracted)
}

/// `t(G) = t(G - e) + t(G / e)`, with bridges contracted directly.
/// Exponential; intended for small graphs.
pub fn count_via_deletion_contraction(g: &MultiGraph) -> BigCount {
    if g.vertex_count() == 0 || !g.is_connected() {
        return BigCount::zero();
    }
    dc(g.clone())
}

fn dc(g: MultiGraph) -> BigCount {
    let Some(first) = g.edges().first().copied() else {
        // Connected and edgeless: a single vertex.
        return BigCount::one();
    };
    let single = EdgeSet::from([first.id]);
    let (contracted, _) = g.contract_edges(&single).expect("edge exists");
    let deleted = g.delete_edges(&single).expect("edge exists");
    if !deleted.is_connected() {
        return dc(contracted);
    }
    dc(contracted) + dc(deleted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{edge_set, named::*};

    fn count(g: &MultiGraph) -> u64 {
        count_matrix_tree(g).try_into().unwrap()
    }

    #[test]
    fn matrix_tree_examples() {
        assert_eq!(count(&complete(3)), 3);
        assert_eq!(count(&path(5)), 1);
        assert_eq!(count(&star(4)), 1);
        assert_eq!(count(&bond(2)), 2);
        assert_eq!(count(&MultiGraph::new(1)), 1);
        assert_eq!(count(&MultiGraph::new(2)), 0);
        assert_eq!(count(&complete(6)), 6u64.pow(4));
        assert_eq!(count(&petersen()), 2000);
        assert_eq!(count(&complete_bipartite(3, 3)), 81);
    }

    #[test]
    fn minor_choice_is_irrelevant() {
        let g =
            MultiGraph::from_edges(5, &[(0, 1), (0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 2)])
                .unwrap();
        let reference = count_matrix_tree(&g);
        for v in 0..5 {
            assert_eq!(count_matrix_tree_minor(&g, v), reference);
        }
    }

    #[test]
    fn bareiss_handles_pivot_swaps() {
        let m = vec![
            vec![BigInt::from(0), BigInt::from(2), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(3)],
            vec![BigInt::from(4), BigInt::from(5), BigInt::from(0)],
        ];
        // 0*(0-15) - 2*(0-12) + 1*(5-0) = 29
        assert_eq!(bareiss_determinant(m), BigInt::from(29));
        let singular = vec![
            vec![BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(2), BigInt::from(4)],
        ];
        assert!(bareiss_determinant(singular).is_zero());
    }

    #[test]
    fn enumeration_examples() {
        let trees = enumerate_spanning_trees(&cycle(4), 100).unwrap();
        assert_eq!(trees.len(), 4);
        for t in &trees {
            assert_eq!(t.len(), 3);
        }
        assert_eq!(trees[0].edges(), &edge_set([0, 1, 2]));
        assert_eq!(trees[3].edges(), &edge_set([1, 2, 3]));

        let disconnected = MultiGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(enumerate_spanning_trees(&disconnected, 100)
            .unwrap()
            .is_empty());
        assert_eq!(
            enumerate_spanning_trees(&complete(4), 100).unwrap().len(),
            16
        );
        assert!(matches!(
            enumerate_spanning_trees(&complete(4), 15),
            Err(Error::Resource(_))
        ));
        assert_eq!(
            enumerate_spanning_trees(&MultiGraph::new(1), 1)
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn constrained_counts() {
        let k3 = complete(3);
        let fam = ConstrainedFamily::new(&k3, edge_set([0])).unwrap();
        let brute = enumerate_spanning_trees(&k3, 10)
            .unwrap()
            .into_iter()
            .filter(|t| t.contains(EdgeId(0)))
            .count();
        assert_eq!(brute, 2);
        assert_eq!(fam.count(), 2u32.into());

        let k4 = complete(4);
        let none = ConstrainedFamily::new(&k4, EdgeSet::new()).unwrap();
        assert_eq!(none.count(), 16u32.into());

        let matching = edge_set([0, 5]);
        let brute = enumerate_spanning_trees(&k4, 100)
            .unwrap()
            .into_iter()
            .filter(|t| matching.is_subset(t.edges()))
            .count();
        assert_eq!(brute, 4);
        let fam = ConstrainedFamily::new(&k4, matching).unwrap();
        assert_eq!(fam.count(), 4u32.into());
        assert_eq!(fam.enumerate(100).unwrap().len(), 4);

        let cyclic = ConstrainedFamily::new(&k4, edge_set([0, 1, 3])).unwrap();
        assert!(cyclic.count().is_zero());
        assert!(cyclic.enumerate(100).unwrap().is_empty());
    }

    #[test]
    fn deletion_contraction_examples() {
        assert_eq!(count_via_deletion_contraction(&cycle(4)), 4u32.into());
        assert_eq!(count_via_deletion_contraction(&complete(4)), 16u32.into());
        assert_eq!(count_via_deletion_contraction(&path(6)), 1u32.into());
        assert_eq!(count_via_deletion_contraction(&bond(3)), 3u32.into());
        assert!(count_via_deletion_contraction(&MultiGraph::new(2)).is_zero());
    }
}
