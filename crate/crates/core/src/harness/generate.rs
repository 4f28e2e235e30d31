//! Seeded random instances for each graph class. Every generator audits its
//! own output before returning it and gives up after [`MAX_ATTEMPTS`]
//! rejected samples.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{argument, Error, Result};
use crate::graph::{EdgeSet, MultiGraph, VertexId};
use crate::partition::CliqueStructure;

pub const MAX_ATTEMPTS: usize = 1000;

pub type InstanceRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn exhausted(what: &str) -> Error {
    Error::Resource(format!("no valid {what} after {MAX_ATTEMPTS} attempts"))
}

/// Pairs shuffled stubs; `None` if the pairing has a loop or a repeated pair.
fn simple_pairing(stubs: &mut [usize], rng: &mut InstanceRng) -> Option<Vec<(usize, usize)>> {
    stubs.shuffle(rng);
    let mut seen = BTreeSet::new();
    let mut pairs = Vec::with_capacity(stubs.len() / 2);
    for pair in stubs.chunks(2) {
        let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
        if a == b || !seen.insert((a, b)) {
            return None;
        }
        pairs.push((a, b));
    }
    Some(pairs)
}

/// Random connected simple graph with the given degree sequence, by the
/// configuration model with rejection.
fn configuration(degrees: &[usize], rng: &mut InstanceRng, what: &str) -> Result<MultiGraph> {
    let mut stubs: Vec<usize> = degrees
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| std::iter::repeat_n(v, d))
        .collect();
    if stubs.len() % 2 == 1 {
        return Err(argument(format!("degree sum of the {what} is odd")));
    }
    for _ in 0..MAX_ATTEMPTS {
        let Some(pairs) = simple_pairing(&mut stubs, rng) else {
            continue;
        };
        let g = MultiGraph::from_edges(degrees.len(), &pairs).expect("ends in range");
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(exhausted(what))
}

fn audit(g: &MultiGraph, mut want: Vec<usize>, what: &str) -> Result<()> {
    let mut got = g.degrees();
    got.sort_unstable();
    want.sort_unstable();
    if got != want || !g.is_connected() {
        return Err(Error::Domain(format!(
            "generated {what} failed its degree audit"
        )));
    }
    Ok(())
}

/// Connected simple `k`-regular graph on `n` vertices.
pub fn gen_regular(k: usize, n: usize, seed: u64) -> Result<MultiGraph> {
    if k == 0 || k >= n || (k * n) % 2 == 1 || (k == 1 && n != 2) {
        return Err(argument(format!(
            "no connected {k}-regular simple graph on {n} vertices"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let g = configuration(&vec![k; n], &mut rng, "regular graph")?;
    audit(&g, vec![k; n], "regular graph")?;
    Ok(g)
}

/// Connected simple graph with `core_n` vertices of degree `k` and `s`
/// vertices of degree 1. Pendant ends are the last `s` vertices.
pub fn gen_pendant_regular(k: usize, core_n: usize, s: usize, seed: u64) -> Result<MultiGraph> {
    if k < 2 || core_n == 0 {
        return Err(argument("need k >= 2 and at least one degree-k vertex"));
    }
    if (k * core_n + s) % 2 == 1 {
        return Err(argument(format!(
            "handshake fails: k * core_n + s = {} is odd",
            k * core_n + s
        )));
    }
    let want: Vec<usize> = std::iter::repeat_n(k, core_n)
        .chain(std::iter::repeat_n(1, s))
        .collect();
    let mut rng = rng_from_seed(seed);
    let g = configuration(&want, &mut rng, "pendant-regular graph")?;
    audit(&g, want, "pendant-regular graph")?;
    Ok(g)
}

/// Connected simple bipartite graph with `n1` vertices of degree `a` on one
/// side and `n2` of degree `b` on the other; the side with fewer edge ends is
/// padded with degree-1 vertices. Side `A` comes first.
pub fn gen_semiregular_bipartite(
    a: usize,
    b: usize,
    n1: usize,
    n2: usize,
    seed: u64,
) -> Result<MultiGraph> {
    if a < 2 || b < 2 || n1 == 0 || n2 == 0 {
        return Err(argument("need a, b >= 2 and n1, n2 >= 1"));
    }
    let (ends_a, ends_b) = (a * n1, b * n2);
    let pad_a = ends_b.saturating_sub(ends_a);
    let pad_b = ends_a.saturating_sub(ends_b);
    let (size_a, size_b) = (n1 + pad_a, n2 + pad_b);
    if a > size_b || b > size_a {
        return Err(argument(format!(
            "degrees ({a}, {b}) exceed the opposite side sizes ({size_b}, {size_a})"
        )));
    }
    let degrees: Vec<usize> = std::iter::repeat_n(a, n1)
        .chain(std::iter::repeat_n(1, pad_a))
        .chain(std::iter::repeat_n(b, n2))
        .chain(std::iter::repeat_n(1, pad_b))
        .collect();
    let side_a: Vec<usize> = (0..size_a)
        .flat_map(|v| std::iter::repeat_n(v, degrees[v]))
        .collect();
    let mut side_b: Vec<usize> = (size_a..size_a + size_b)
        .flat_map(|v| std::iter::repeat_n(v, degrees[v]))
        .collect();
    let mut rng = rng_from_seed(seed);
    for _ in 0..MAX_ATTEMPTS {
        side_b.shuffle(&mut rng);
        let pairs: Vec<(usize, usize)> =
            side_a.iter().copied().zip(side_b.iter().copied()).collect();
        if pairs.iter().collect::<BTreeSet<_>>().len() != pairs.len() {
            continue;
        }
        let g = MultiGraph::from_edges(size_a + size_b, &pairs).expect("ends in range");
        if g.is_connected() {
            audit(&g, degrees.clone(), "semiregular bipartite graph")?;
            return Ok(g);
        }
    }
    Err(exhausted("semiregular bipartite graph"))
}

/// Connected multigraph with `n` vertices and `m >= n - 1` edges: a random
/// recursive tree plus uniformly random extra edges (parallels allowed),
/// with vertex labels shuffled.
pub fn gen_random_multigraph(n: usize, m: usize, seed: u64) -> Result<MultiGraph> {
    if n == 0 || m + 1 < n {
        return Err(argument(format!(
            "cannot connect {n} vertices with {m} edges"
        )));
    }
    if n == 1 && m > 0 {
        return Err(argument("a single vertex carries no loop-free edges"));
    }
    let mut rng = rng_from_seed(seed);
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(&mut rng);
    let mut pairs = Vec::with_capacity(m);
    for v in 1..n {
        pairs.push((label[rng.gen_range(0..v)], label[v]));
    }
    while pairs.len() < m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            pairs.push((u, v));
        }
    }
    pairs.shuffle(&mut rng);
    let g = MultiGraph::from_edges(n, &pairs)?;
    debug_assert!(g.is_connected());
    Ok(g)
}

/// Parameters for [`gen_clique_instance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CliqueInstanceSpec {
    pub max_vertices: usize,
    pub max_order: usize,
    pub max_cliques: usize,
    /// Keep at least one vertex of every clique off the matching.
    pub free_vertex: bool,
}

/// Random simple connected `Q` with a matching `M` whose removal leaves
/// disjoint cliques: clique orders are drawn first, a random tree of matching
/// edges connects the cliques, then further matching edges are added while
/// endpoints remain.
pub fn gen_clique_instance(spec: CliqueInstanceSpec, seed: u64) -> Result<(MultiGraph, EdgeSet)> {
    if spec.max_order == 0 || spec.max_cliques == 0 || spec.max_vertices == 0 {
        return Err(argument("clique instance bounds must be positive"));
    }
    let mut rng = rng_from_seed(seed);
    let reserve = usize::from(spec.free_vertex);
    for _ in 0..MAX_ATTEMPTS {
        let count = rng.gen_range(1..=spec.max_cliques);
        let orders: Vec<usize> = (0..count)
            .map(|_| rng.gen_range(1 + reserve..=spec.max_order.max(1 + reserve)))
            .collect();
        if orders.iter().sum::<usize>() > spec.max_vertices {
            continue;
        }
        let mut q = MultiGraph::new(0);
        let mut free: Vec<Vec<VertexId>> = Vec::new();
        for &k in &orders {
            let vs: Vec<VertexId> = (0..k).map(|_| q.add_vertex()).collect();
            for i in 0..k {
                for j in i + 1..k {
                    q.add_edge(vs[i], vs[j]).expect("distinct");
                }
            }
            free.push(vs);
        }
        for f in &mut free {
            f.shuffle(&mut rng);
        }
        let spare = |f: &Vec<VertexId>| f.len() > reserve;
        let mut ok = true;
        for c in 1..count {
            let open: Vec<usize> = (0..c).filter(|&j| spare(&free[j])).collect();
            if open.is_empty() || !spare(&free[c]) {
                ok = false;
                break;
            }
            let j = open[rng.gen_range(0..open.len())];
            let (a, b) = (free[j].pop().unwrap(), free[c].pop().unwrap());
            q.add_edge(a, b).expect("distinct");
        }
        if !ok {
            continue;
        }
        let extra = rng.gen_range(0..=count + 1);
        for _ in 0..extra {
            let open: Vec<usize> = (0..count).filter(|&j| spare(&free[j])).collect();
            if open.len() < 2 {
                break;
            }
            let x = open[rng.gen_range(0..open.len())];
            let y = open[rng.gen_range(0..open.len())];
            if x != y {
                let (a, b) = (free[x].pop().unwrap(), free[y].pop().unwrap());
                q.add_edge(a, b).expect("distinct");
            }
        }
        let clique_edges: usize = orders.iter().map(|k| k * (k - 1) / 2).sum();
        let matching: EdgeSet = q.edge_ids().skip(clique_edges).collect();
        let structure = CliqueStructure::new(&q, &matching)?;
        debug_assert_eq!(structure.clique_count(), count);
        return Ok((q, matching));
    }
    Err(exhausted("clique instance"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::treecount::count_matrix_tree;

    fn sorted_degrees(g: &MultiGraph) -> Vec<usize> {
        let mut d = g.degrees();
        d.sort_unstable();
        d
    }

    #[test]
    fn regular_examples() {
        let g = gen_regular(2, 4, 1).unwrap();
        assert_eq!(count_matrix_tree(&g), count_matrix_tree(&cycle(4)));
        assert_eq!(
            count_matrix_tree(&gen_regular(3, 4, 9).unwrap()),
            16u32.into()
        );
        assert!(gen_regular(3, 5, 0).is_err());
        for seed in 0..5 {
            let g = gen_regular(4, 9, seed).unwrap();
            assert!(g.is_simple() && g.degrees().iter().all(|&d| d == 4));
        }
    }

    #[test]
    fn pendant_examples() {
        let g = gen_pendant_regular(2, 4, 0, 3).unwrap();
        assert_eq!(sorted_degrees(&g), vec![2; 4]);
        assert_eq!(
            count_matrix_tree(&gen_pendant_regular(3, 4, 0, 5).unwrap()),
            16u32.into()
        );
        let g = gen_pendant_regular(3, 4, 2, 7).unwrap();
        assert_eq!(sorted_degrees(&g), vec![1, 1, 3, 3, 3, 3]);
        assert_eq!(g.edge_count(), 7);
        assert!(matches!(
            gen_pendant_regular(3, 4, 1, 0),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn bipartite_examples() {
        let g = gen_semiregular_bipartite(2, 2, 2, 2, 0).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
        let g = gen_semiregular_bipartite(3, 2, 2, 3, 0).unwrap();
        assert_eq!(
            count_matrix_tree(&g),
            count_matrix_tree(&complete_bipartite(2, 3))
        );
        let g = gen_semiregular_bipartite(2, 2, 3, 3, 4).unwrap();
        assert_eq!(sorted_degrees(&g), vec![2; 6]);
        assert!(g.is_connected());
        let g = gen_semiregular_bipartite(3, 2, 3, 2, 4).unwrap();
        assert_eq!(sorted_degrees(&g), vec![1, 1, 1, 1, 1, 2, 2, 3, 3, 3]);
        assert!(gen_semiregular_bipartite(4, 2, 1, 1, 0).is_err());
    }

    #[test]
    fn multigraphs_and_cliques() {
        for seed in 0..20 {
            let g = gen_random_multigraph(6, 9, seed).unwrap();
            assert!(g.is_connected());
            assert_eq!(g.edge_count(), 9);
        }
        assert_eq!(
            gen_random_multigraph(3, 5, 1).unwrap(),
            gen_random_multigraph(3, 5, 1).unwrap()
        );
        let spec = CliqueInstanceSpec {
            max_vertices: 14,
            max_order: 4,
            max_cliques: 4,
            free_vertex: true,
        };
        for seed in 0..20 {
            let (q, m) = gen_clique_instance(spec, seed).unwrap();
            let s = CliqueStructure::new(&q, &m).unwrap();
            assert!(s.every_clique_has_free_vertex());
            assert!(q.vertex_count() <= 14);
        }
    }
}
