//! Formula-versus-oracle checks behind each `verify` subcommand, and the
//! seeded batch runner.

use rand::Rng;

use crate::error::{argument, Result};
use crate::formulas::{
    eval_binomial_deletion_identity, eval_gen_result_for, eval_pendant_regular, eval_regular_line,
    eval_regular_subdiv_line, eval_semiregular_bipartite, eval_subdivision_expansion,
    eval_theorem_main, eval_theorem_main_gamma_form, to_count,
};
use crate::graph::{EdgeSet, MultiGraph};
use crate::harness::generate::{
    gen_pendant_regular, gen_random_multigraph, gen_regular, gen_semiregular_bipartite,
    rng_from_seed,
};
use crate::harness::report::{
    timed_check, CheckRecord, FuzzReport, InstanceDescriptor, VerificationReport, SCHEMA_VERSION,
};
use crate::par::Exec;
use crate::partition::{verify_partition, CliqueStructure};
use crate::transforms::{clique_insert, line_graph, subdivide, subdivide_subset};
use crate::treecount::{count_matrix_tree, count_trees_containing, ConstrainedFamily};
use crate::BigCount;

/// `t(L(S_r(G)))` counted directly.
pub fn subdivided_line_oracle(g: &MultiGraph, r: usize) -> BigCount {
    count_matrix_tree(&line_graph(&subdivide(g, r).graph).graph)
}

pub fn file_instance(g: &MultiGraph, class: &str) -> InstanceDescriptor {
    InstanceDescriptor {
        generator: "file".into(),
        seed: None,
        n: g.vertex_count(),
        m: g.edge_count(),
        class: class.into(),
    }
}

pub fn verify_main(
    g: &MultiGraph,
    r: usize,
    instance: InstanceDescriptor,
) -> Result<VerificationReport> {
    let oracle = subdivided_line_oracle(g, r);
    let checks = vec![
        timed_check("main-formula", || {
            Ok((
                to_count(&eval_theorem_main(g, r)?, "main formula")?,
                oracle.clone(),
            ))
        })?,
        timed_check("main-formula-endpoint-form", || {
            Ok((
                to_count(&eval_theorem_main_gamma_form(g, r)?, "endpoint form")?,
                oracle.clone(),
            ))
        })?,
    ];
    Ok(VerificationReport::new(instance, checks))
}

pub fn verify_regular(g: &MultiGraph, instance: InstanceDescriptor) -> Result<VerificationReport> {
    let checks = vec![
        timed_check("regular-line", || {
            Ok((
                eval_regular_line(g)?,
                count_matrix_tree(&line_graph(g).graph),
            ))
        })?,
        timed_check("regular-subdivided-line", || {
            Ok((eval_regular_subdiv_line(g)?, subdivided_line_oracle(g, 1)))
        })?,
    ];
    Ok(VerificationReport::new(instance, checks))
}

pub fn verify_pendant(
    g: &MultiGraph,
    r: usize,
    instance: InstanceDescriptor,
) -> Result<VerificationReport> {
    let checks = vec![timed_check("pendant-regular", || {
        Ok((eval_pendant_regular(g, r)?, subdivided_line_oracle(g, r)))
    })?];
    Ok(VerificationReport::new(instance, checks))
}

pub fn verify_bipartite(
    g: &MultiGraph,
    a: usize,
    b: usize,
    instance: InstanceDescriptor,
) -> Result<VerificationReport> {
    let checks = vec![timed_check("semiregular-bipartite", || {
        Ok((
            eval_semiregular_bipartite(g, a, b)?,
            count_matrix_tree(&line_graph(g).graph),
        ))
    })?];
    Ok(VerificationReport::new(instance, checks))
}

/// `(Q, M)` from a file graph: with an explicit matching the file is `Q`,
/// otherwise the file is `G` and the instance is `C(G)` with its matching.
pub fn clique_instance(g: &MultiGraph, matching: Option<EdgeSet>) -> (MultiGraph, EdgeSet) {
    match matching {
        Some(m) => (g.clone(), m),
        None => {
            let c = clique_insert(g);
            (c.graph, c.matching)
        }
    }
}

pub fn verify_gen_result(
    q: &MultiGraph,
    matching: &EdgeSet,
    instance: InstanceDescriptor,
) -> Result<VerificationReport> {
    let structure = CliqueStructure::new(q, matching)?;
    let family = ConstrainedFamily::new(q, matching.clone())?;
    let checks = vec![timed_check("clique-contraction", || {
        Ok((
            eval_gen_result_for(&structure, Exec::default())?,
            count_trees_containing(&family),
        ))
    })?];
    Ok(VerificationReport::new(instance, checks))
}

pub fn verify_partition_instance(
    q: &MultiGraph,
    matching: &EdgeSet,
    instance: InstanceDescriptor,
    exec: Exec,
) -> Result<VerificationReport> {
    let structure = CliqueStructure::new(q, matching)?;
    let start = std::time::Instant::now();
    let report = verify_partition(&structure, exec)?;
    let elapsed = Some(start.elapsed().as_secs_f64() * 1e3);
    let size_failures = report
        .labels
        .iter()
        .filter(|l| l.size_matches == Some(false))
        .count();
    let fiber_failures = report.labels.iter().filter(|l| !l.fiber_matches).count();
    let checks = vec![
        CheckRecord {
            check: "partition-total".into(),
            formula: report.formula_total.clone(),
            oracle: report.tree_count.to_string(),
            agree: report.formula_total == report.tree_count.to_string()
                && report.oracle_count == report.tree_count.to_string(),
            elapsed_ms: elapsed,
        },
        CheckRecord {
            check: "partition-class-sizes".into(),
            formula: if report.per_label_sizes_checked {
                format!("{} labels", report.label_count)
            } else {
                "not applicable".into()
            },
            oracle: format!("{size_failures} mismatches"),
            agree: size_failures == 0,
            elapsed_ms: None,
        },
        CheckRecord {
            check: "partition-reconstruction".into(),
            formula: format!("{} labels", report.label_count),
            oracle: format!("{fiber_failures} mismatches"),
            agree: fiber_failures == 0,
            elapsed_ms: None,
        },
    ];
    Ok(VerificationReport::new(instance, checks).with_partition(report))
}

/// Both sides of the binomial deletion identity, for one `i` or all valid `i`.
pub fn verify_binomial(
    h: &MultiGraph,
    i: Option<usize>,
    instance: InstanceDescriptor,
) -> Result<VerificationReport> {
    if !h.is_connected() {
        return Err(crate::error::domain("graph must be connected"));
    }
    let c = h.edge_count() + 1 - h.vertex_count();
    let range = match i {
        Some(i) => i..=i,
        None => 0..=c,
    };
    let checks = range
        .map(|i| {
            timed_check(&format!("binomial-deletion-i{i}"), || {
                eval_binomial_deletion_identity(h, i)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new(instance, checks))
}

/// Subset expansion for `F` (all edges when `None`) against the subdivided
/// line graph counted directly.
pub fn verify_subdivision_expansion(
    g: &MultiGraph,
    r: usize,
    subset: Option<EdgeSet>,
    instance: InstanceDescriptor,
) -> Result<VerificationReport> {
    let subset = subset.unwrap_or_else(|| g.edge_set());
    let checks = vec![timed_check("subdivision-expansion", || {
        let oracle = count_matrix_tree(&line_graph(&subdivide_subset(g, &subset, r)?.graph).graph);
        Ok((eval_subdivision_expansion(g, &subset, r)?, oracle))
    })?];
    Ok(VerificationReport::new(instance, checks))
}

/// Graph classes exercised by [`fuzz`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FuzzClass {
    Random,
    Regular,
    PendantRegular,
    Semiregular,
}

impl FuzzClass {
    pub fn name(self) -> &'static str {
        match self {
            FuzzClass::Random => "random",
            FuzzClass::Regular => "regular",
            FuzzClass::PendantRegular => "pendant-regular",
            FuzzClass::Semiregular => "semiregular",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "random" => FuzzClass::Random,
            "regular" => FuzzClass::Regular,
            "pendant-regular" => FuzzClass::PendantRegular,
            "semiregular" => FuzzClass::Semiregular,
            other => return Err(argument(format!("unknown class {other:?}"))),
        })
    }
}

/// Largest edge count the fuzzer feeds to the subset-sum evaluators.
const FUZZ_MAX_EDGES: usize = 12;

fn described(generator: &str, seed: u64, g: &MultiGraph, class: &str) -> InstanceDescriptor {
    InstanceDescriptor {
        generator: generator.into(),
        seed: Some(seed),
        n: g.vertex_count(),
        m: g.edge_count(),
        class: class.into(),
    }
}

/// One instance of `class` drawn from `seed`; parameters that turn out to be
/// infeasible are redrawn from the same stream.
pub fn fuzz_instance(class: FuzzClass, seed: u64, max_n: usize) -> Result<VerificationReport> {
    if max_n < 2 {
        return Err(argument("max-n must be at least 2"));
    }
    let mut rng = rng_from_seed(seed);
    let mut last_err = None;
    for _ in 0..64 {
        let gen_seed: u64 = rng.gen();
        let attempt = match class {
            FuzzClass::Random => {
                let n = rng.gen_range(2..=max_n.min(7));
                let m = rng.gen_range(n - 1..=(n + 3).min(FUZZ_MAX_EDGES));
                let r = rng.gen_range(0..=2);
                gen_random_multigraph(n, m, gen_seed).and_then(|g| {
                    let desc = described("random-multigraph", seed, &g, &format!("random r={r}"));
                    verify_main(&g, r, desc)
                })
            }
            FuzzClass::Regular => {
                let k = rng.gen_range(2..=4);
                let n = rng.gen_range(k + 1..=max_n.max(k + 1));
                gen_regular(k, n, gen_seed).and_then(|g| {
                    let desc = described("regular", seed, &g, &format!("{k}-regular"));
                    verify_regular(&g, desc)
                })
            }
            FuzzClass::PendantRegular => {
                let k = rng.gen_range(3..=4);
                let s = [0, 1, 2, 4][rng.gen_range(0..4)];
                let core_n = rng.gen_range(2..=max_n.saturating_sub(s).max(2));
                let r = rng.gen_range(0..=2);
                gen_pendant_regular(k, core_n, s, gen_seed).and_then(|g| {
                    let desc =
                        described("pendant-regular", seed, &g, &format!("k={k} s={s} r={r}"));
                    verify_pendant(&g, r, desc)
                })
            }
            FuzzClass::Semiregular => {
                let a = rng.gen_range(2..=3);
                let b = rng.gen_range(2..=3);
                let n1 = rng.gen_range(1..=(max_n / 2).max(1));
                let n2 = rng.gen_range(1..=(max_n / 2).max(1));
                gen_semiregular_bipartite(a, b, n1, n2, gen_seed).and_then(|g| {
                    let desc =
                        described("semiregular-bipartite", seed, &g, &format!("a={a} b={b}"));
                    verify_bipartite(&g, a, b, desc)
                })
            }
        };
        match attempt {
            Ok(report) => return Ok(report.without_timings()),
            Err(err @ (crate::Error::Argument(_) | crate::Error::Resource(_))) => {
                last_err = Some(err)
            }
            Err(err) => return Err(err),
        }
    }
    Err(last_err.expect("at least one attempt"))
}

/// `count` instances with seeds `seed, seed + 1, ...`, checked in parallel
/// and reported in seed order.
pub fn fuzz(
    class: FuzzClass,
    count: usize,
    seed: u64,
    max_n: usize,
    exec: Exec,
) -> Result<FuzzReport> {
    let seeds: Vec<u64> = (0..count as u64).map(|i| seed.wrapping_add(i)).collect();
    let instances = exec
        .map_collect(&seeds, |&s| fuzz_instance(class, s, max_n))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let failures = instances.iter().filter(|r| !r.pass).count();
    Ok(FuzzReport {
        schema: SCHEMA_VERSION,
        class: class.name().into(),
        seed,
        count,
        max_n,
        instances,
        failures,
        pass: failures == 0,
    })
}
