//! Approximate minimum-density sub-collection.
//!
//! Pipeline: solve the cover-set relaxation, split elements into dyadic
//! buckets by their fractional value, pick the heaviest bucket among the
//! leading levels, then fully cover that bucket with a multi-cover
//! subroutine. Covering a bucket element `req(e)` times is exactly what
//! a family of `req(e)` distinct sets containing it provides, so no
//! auxiliary graph is ever materialized.

use crate::error::{Error, Result};
use crate::greedy::MdscSolver;
use crate::instance::{Instance, SubCollection};
use crate::lp::{solve_lp1, FractionalSolution};
use crate::oracles::{exact_multicover, OracleLimits};
use crate::ratio::Ratio;

/// Dyadic partition of elements by fractional value.
///
/// Bucket `i < levels` holds elements with value in
/// `(2^-(i+1), 2^-i]`; the final bucket holds everything at or below
/// `2^-levels`, including zeros. `selected` is the heaviest bucket among
/// the leading `levels` (ties to the smaller index). For `n >= 32` the
/// tail bucket can hold less than `1/(levels + 1)` of the total mass, so
/// the selected bucket always carries at least that much and therefore
/// at least `2^selected / (levels + 1)` elements.
#[derive(Clone, Debug)]
pub struct BucketPartition {
    pub levels: usize,
    pub buckets: Vec<Vec<usize>>,
    pub masses: Vec<f64>,
    pub selected: usize,
}

/// Partitions a nonnegative vector summing to one. Requires at least two
/// entries.
pub fn bucketize(y: &[f64]) -> Result<BucketPartition> {
    let n = y.len();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "bucket partition needs at least two elements".into(),
        ));
    }
    let total: f64 = y.iter().sum();
    if (total - 1.0).abs() > 1e-6 {
        return Err(Error::InvalidParameter(format!(
            "fractional values sum to {total}, expected 1"
        )));
    }
    let levels = 2 * (n.ilog2() as usize) - 1;
    let mut buckets = vec![Vec::new(); levels + 1];
    let mut masses = vec![0.0; levels + 1];
    for (e, &raw) in y.iter().enumerate() {
        let v = raw.clamp(0.0, 1.0);
        let mut bucket = levels;
        for i in 0..levels {
            if v > 0.5f64.powi(i as i32 + 1) {
                bucket = i;
                break;
            }
        }
        buckets[bucket].push(e);
        masses[bucket] += v;
    }
    let selected = (0..levels)
        .max_by(|&a, &b| {
            masses[a]
                .partial_cmp(&masses[b])
                .expect("masses are finite")
                .then(b.cmp(&a)) // ties to the smaller index
        })
        .expect("levels >= 1 for n >= 2");
    if n >= 32 && masses[selected] + 1e-9 < 1.0 / (levels as f64 + 1.0) {
        return Err(Error::DegenerateY(format!(
            "all leading buckets are lighter than 1/{}; the fractional \
             solution cannot sum to one",
            levels + 1
        )));
    }
    Ok(BucketPartition { levels, buckets, masses, selected })
}

/// Greedy multi-cover: repeatedly takes the unchosen set fully covering
/// the most still-needy targets per unit cost (exact rational
/// comparison, zero cost beats everything, ties to the smaller index)
/// until every target is fully covered.
pub fn multicover_greedy(inst: &Instance, targets: &[usize]) -> Result<SubCollection> {
    let mut targets = targets.to_vec();
    targets.sort_unstable();
    targets.dedup();
    for &e in &targets {
        assert!(e < inst.num_elements(), "target element {e} out of range");
        if !inst.is_coverable(e) {
            return Err(Error::Infeasible(format!(
                "target element {e} sits in {} sets but requires {}",
                inst.degree(e),
                inst.requirement(e)
            )));
        }
    }
    let mut residual = vec![0u32; inst.num_elements()];
    let mut needy = 0usize;
    for &e in &targets {
        residual[e] = inst.requirement(e);
        needy += 1;
    }
    let mut chosen_flags = vec![false; inst.num_sets()];
    let mut chosen = Vec::new();
    while needy > 0 {
        let mut best: Option<(u64, u64, usize)> = None; // (gain, cost, set)
        for (s, &taken) in chosen_flags.iter().enumerate() {
            if taken {
                continue;
            }
            let gain = inst
                .set_elements(s)
                .iter()
                .filter(|&&e| residual[e] > 0)
                .count() as u64;
            if gain == 0 {
                continue;
            }
            let cost = inst.cost(s);
            let better = match best {
                None => true,
                Some((bg, bc, _)) => gain as u128 * bc as u128 > bg as u128 * cost as u128,
            };
            if better {
                best = Some((gain, cost, s));
            }
        }
        let Some((_, _, s)) = best else {
            return Err(Error::Infeasible(
                "targets remain but no unchosen set reaches them".into(),
            ));
        };
        chosen_flags[s] = true;
        chosen.push(s);
        for &e in inst.set_elements(s) {
            if residual[e] > 0 {
                residual[e] -= 1;
                if residual[e] == 0 {
                    needy -= 1;
                }
            }
        }
    }
    Ok(inst.coverage(&chosen))
}

/// Which multi-cover subroutine finishes the pipeline.
#[derive(Clone, Copy, Debug)]
pub enum MulticoverBackend {
    Greedy,
    Exact(OracleLimits),
}

impl MulticoverBackend {
    fn name(&self) -> &'static str {
        match self {
            MulticoverBackend::Greedy => "greedy",
            MulticoverBackend::Exact(_) => "exact",
        }
    }
}

/// Per-stage record of one pipeline run.
#[derive(Clone, Debug)]
pub struct StageReport {
    pub lp_objective: f64,
    pub cg_rounds: usize,
    pub pool_size: usize,
    pub levels: usize,
    pub bucket_sizes: Vec<usize>,
    pub bucket_masses: Vec<f64>,
    pub selected_bucket: usize,
    /// Set when the selected bucket was empty (possible only below 32
    /// elements) and the heaviest single element was covered instead.
    pub fallback_target: Option<usize>,
    pub targets: Vec<usize>,
    pub subroutine: &'static str,
    pub subroutine_cost: u64,
    pub output_density: Option<Ratio>,
}

/// Runs the full approximation pipeline and reports every stage.
///
/// The output always fully covers the selected targets; its density is
/// measured on everything it happens to cover.
pub fn mdsc_approx_solve(
    inst: &Instance,
    backend: MulticoverBackend,
) -> Result<(SubCollection, StageReport)> {
    let lp1 = solve_lp1(inst)?;
    let frac = &lp1.fractional;
    let n = inst.num_elements();

    let (partition, mut targets, mut fallback) = if n >= 2 {
        let partition = bucketize(&frac.y)?;
        let targets = partition.buckets[partition.selected].clone();
        (Some(partition), targets, None)
    } else {
        (None, Vec::new(), None)
    };
    if targets.is_empty() {
        // Tiny instances can leave every leading bucket empty. Covering
        // the heaviest fractional element keeps the pipeline productive;
        // at 32 elements and up the partition itself rules this out.
        let heaviest = heaviest_element(&frac.y);
        fallback = Some(heaviest);
        targets = vec![heaviest];
    }

    let picked = match backend {
        MulticoverBackend::Greedy => multicover_greedy(inst, &targets)?,
        MulticoverBackend::Exact(limits) => exact_multicover(inst, &targets, &limits)?,
    };

    let report = StageReport {
        lp_objective: frac.objective,
        cg_rounds: lp1.rounds.len(),
        pool_size: frac.columns.len(),
        levels: partition.as_ref().map_or(0, |p| p.levels),
        bucket_sizes: partition
            .as_ref()
            .map_or_else(Vec::new, |p| p.buckets.iter().map(Vec::len).collect()),
        bucket_masses: partition.as_ref().map_or_else(Vec::new, |p| p.masses.clone()),
        selected_bucket: partition.as_ref().map_or(0, |p| p.selected),
        fallback_target: fallback,
        targets,
        subroutine: backend.name(),
        subroutine_cost: picked.cost,
        output_density: picked.density,
    };
    Ok((picked, report))
}

fn heaviest_element(y: &[f64]) -> usize {
    let mut best = 0;
    for (e, &v) in y.iter().enumerate() {
        if v > y[best] {
            best = e;
        }
    }
    best
}

/// Checks that scaling the fractional solution by `2^(selected + 1)`
/// yields a fractional multi-cover of the selected bucket: every bucket
/// element's scaled witness mass reaches one, and every scaled set value
/// still dominates the scaled witness mass through it. Returns the list
/// of violations (empty on success).
pub fn scaled_cover_violations(
    frac: &FractionalSolution,
    partition: &BucketPartition,
    tol: f64,
) -> Vec<String> {
    let scale = (1u64 << (partition.selected + 1)) as f64;
    let mut violations = Vec::new();
    for &e in &partition.buckets[partition.selected] {
        let mass: f64 = frac
            .columns
            .iter()
            .zip(&frac.column_values)
            .filter(|(c, _)| c.element == e)
            .map(|(_, &v)| v)
            .sum();
        if scale * mass < 1.0 - tol {
            violations.push(format!(
                "element {e}: scaled witness mass {} below 1",
                scale * mass
            ));
        }
        let mut per_set: Vec<(usize, f64)> = Vec::new();
        for (c, &v) in frac.columns.iter().zip(&frac.column_values) {
            if c.element != e {
                continue;
            }
            for &s in &c.sets {
                match per_set.iter_mut().find(|(set, _)| *set == s) {
                    Some((_, acc)) => *acc += v,
                    None => per_set.push((s, v)),
                }
            }
        }
        for (s, used) in per_set {
            if scale * frac.x[s] < scale * used - tol {
                violations.push(format!(
                    "element {e}, set {s}: scaled set value {} below witness mass {}",
                    scale * frac.x[s],
                    scale * used
                ));
            }
        }
    }
    violations
}

/// The pipeline as a greedy-compatible density subroutine.
#[derive(Clone, Copy, Debug)]
pub struct ApproxMdsc {
    pub backend: MulticoverBackend,
}

impl Default for ApproxMdsc {
    fn default() -> ApproxMdsc {
        ApproxMdsc { backend: MulticoverBackend::Greedy }
    }
}

impl MdscSolver for ApproxMdsc {
    fn solve_mdsc(&self, inst: &Instance) -> Result<SubCollection> {
        mdsc_approx_solve(inst, self.backend).map(|(sub, _)| sub)
    }

    fn name(&self) -> &'static str {
        "approx-mdsc"
    }
}
