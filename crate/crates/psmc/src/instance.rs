//! Problem instances, coverage semantics and residual updates.
//!
//! An element `e` is *fully covered* by a chosen sub-collection when at
//! least `req(e)` distinct chosen sets contain it. A set contributes to an
//! element at most once, so duplicate indices in a selection are ignored.

use crate::error::{Error, Result};
use crate::ratio::Ratio;

/// An immutable partial set multi-cover instance.
///
/// Holds `n` elements, `m` subsets with nonnegative integer costs,
/// per-element covering requirements, and the covering ratio `q` as an
/// exact rational. Instances are validated on construction and safe to
/// share across threads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    sets: Vec<Vec<usize>>,
    costs: Vec<u64>,
    reqs: Vec<u32>,
    q: Ratio,
    containing: Vec<Vec<usize>>,
}

impl Instance {
    pub fn new(
        n: usize,
        sets: Vec<Vec<usize>>,
        costs: Vec<u64>,
        reqs: Vec<u32>,
        q: Ratio,
    ) -> Result<Instance> {
        if n == 0 {
            return Err(Error::InvalidInstance("element count must be positive".into()));
        }
        if costs.len() != sets.len() {
            return Err(Error::InvalidInstance(format!(
                "{} sets but {} costs",
                sets.len(),
                costs.len()
            )));
        }
        if reqs.len() != n {
            return Err(Error::InvalidInstance(format!(
                "{} elements but {} requirements",
                n,
                reqs.len()
            )));
        }
        if q.is_zero() || q > Ratio::ONE {
            return Err(Error::InvalidInstance(format!(
                "covering ratio {q} outside (0, 1]"
            )));
        }
        for (e, &r) in reqs.iter().enumerate() {
            if r == 0 {
                return Err(Error::InvalidInstance(format!(
                    "element {e} has covering requirement 0"
                )));
            }
        }
        // Total cost must stay summable in u64 so densities never overflow.
        costs
            .iter()
            .try_fold(0u64, |acc, &c| acc.checked_add(c))
            .ok_or_else(|| Error::InvalidInstance("total cost overflows 64 bits".into()))?;

        let mut sets = sets;
        for (i, set) in sets.iter_mut().enumerate() {
            set.sort_unstable();
            if set.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidInstance(format!(
                    "set {i} lists an element twice"
                )));
            }
            if let Some(&e) = set.last() {
                if e >= n {
                    return Err(Error::InvalidInstance(format!(
                        "set {i} contains element {e} but n = {n}"
                    )));
                }
            }
        }

        let mut containing = vec![Vec::new(); n];
        for (i, set) in sets.iter().enumerate() {
            for &e in set {
                containing[e].push(i);
            }
        }

        Ok(Instance { n, sets, costs, reqs, q, containing })
    }

    /// Same instance with a different covering ratio.
    pub fn with_covering_ratio(&self, q: Ratio) -> Result<Instance> {
        Instance::new(
            self.n,
            self.sets.clone(),
            self.costs.clone(),
            self.reqs.clone(),
            q,
        )
    }

    pub fn num_elements(&self) -> usize {
        self.n
    }

    pub fn num_sets(&self) -> usize {
        self.sets.len()
    }

    pub fn set_elements(&self, s: usize) -> &[usize] {
        &self.sets[s]
    }

    pub fn cost(&self, s: usize) -> u64 {
        self.costs[s]
    }

    pub fn costs(&self) -> &[u64] {
        &self.costs
    }

    pub fn requirement(&self, e: usize) -> u32 {
        self.reqs[e]
    }

    pub fn covering_ratio(&self) -> Ratio {
        self.q
    }

    pub fn max_requirement(&self) -> u32 {
        self.reqs.iter().copied().max().unwrap_or(1)
    }

    /// Sets containing element `e`, in increasing index order.
    pub fn sets_containing(&self, e: usize) -> &[usize] {
        &self.containing[e]
    }

    pub fn degree(&self, e: usize) -> usize {
        self.containing[e].len()
    }

    /// Number of elements that must be fully covered: `ceil(q * n)`.
    pub fn coverage_target(&self) -> usize {
        self.q.ceil_mul(self.n as u64) as usize
    }

    /// Whether `e` can ever be fully covered (its set degree reaches the
    /// requirement).
    pub fn is_coverable(&self, e: usize) -> bool {
        self.degree(e) >= self.reqs[e] as usize
    }

    /// How many elements can be fully covered by taking every set. The
    /// instance is feasible exactly when this reaches `coverage_target()`.
    pub fn num_coverable(&self) -> usize {
        (0..self.n).filter(|&e| self.is_coverable(e)).count()
    }

    pub fn coverable_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&e| self.is_coverable(e)).collect()
    }

    /// Evaluates a selection of set indices: which elements it fully
    /// covers, its cost, and its exact density.
    ///
    /// Duplicate indices are collapsed; the empty selection covers nothing
    /// and has no density.
    pub fn coverage(&self, chosen: &[usize]) -> SubCollection {
        let mut picked = chosen.to_vec();
        picked.sort_unstable();
        picked.dedup();
        if let Some(&s) = picked.last() {
            assert!(s < self.sets.len(), "set index {s} out of range");
        }

        let mut counts = vec![0u32; self.n];
        let mut cost = 0u64;
        for &s in &picked {
            cost += self.costs[s];
            for &e in &self.sets[s] {
                counts[e] += 1;
            }
        }
        let covered: Vec<usize> = (0..self.n).filter(|&e| counts[e] >= self.reqs[e]).collect();
        let density = if covered.is_empty() {
            None
        } else {
            Some(Ratio::new(cost, covered.len() as u64))
        };
        SubCollection { chosen: picked, covered, cost, density }
    }
}

/// A chosen sub-collection together with what it fully covers.
///
/// `density` is `cost / |covered|` as an exact rational, absent when the
/// selection fully covers nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubCollection {
    pub chosen: Vec<usize>,
    pub covered: Vec<usize>,
    pub cost: u64,
    pub density: Option<Ratio>,
}

impl SubCollection {
    pub fn empty() -> SubCollection {
        SubCollection { chosen: Vec::new(), covered: Vec::new(), cost: 0, density: None }
    }

    pub fn num_covered(&self) -> usize {
        self.covered.len()
    }
}

/// The reduced instance left after some sets have been taken.
///
/// Tracks per-element residual requirements, which elements are already
/// fully covered, and the remaining covering ratio
/// `(coverage_target - covered) / n` clamped at zero. Fully covered
/// elements stop contributing to anything, and taken sets leave the pool
/// of candidates.
#[derive(Clone, Debug)]
pub struct ResidualState<'a> {
    base: &'a Instance,
    residual_reqs: Vec<u32>,
    covered: Vec<bool>,
    used_sets: Vec<bool>,
    covered_count: usize,
}

impl<'a> ResidualState<'a> {
    pub fn new(base: &'a Instance) -> ResidualState<'a> {
        ResidualState {
            residual_reqs: base.reqs.clone(),
            covered: vec![false; base.n],
            used_sets: vec![false; base.num_sets()],
            covered_count: 0,
            base,
        }
    }

    pub fn base(&self) -> &Instance {
        self.base
    }

    pub fn residual_requirement(&self, e: usize) -> u32 {
        self.residual_reqs[e]
    }

    pub fn is_covered(&self, e: usize) -> bool {
        self.covered[e]
    }

    pub fn is_used(&self, s: usize) -> bool {
        self.used_sets[s]
    }

    pub fn covered_count(&self) -> usize {
        self.covered_count
    }

    /// Elements still owed toward the coverage target.
    pub fn remaining_target(&self) -> usize {
        self.base.coverage_target().saturating_sub(self.covered_count)
    }

    /// The remaining covering ratio, zero once the target is met.
    pub fn remaining_ratio(&self) -> Ratio {
        Ratio::new(self.remaining_target() as u64, self.base.n as u64)
    }

    /// State after additionally taking `picked`. Sets already taken are
    /// skipped, so applying the same pick twice is a no-op.
    pub fn after_pick(&self, picked: &SubCollection) -> ResidualState<'a> {
        self.after_pick_sets(&picked.chosen)
    }

    pub fn after_pick_sets(&self, sets: &[usize]) -> ResidualState<'a> {
        let mut next = self.clone();
        for &s in sets {
            if next.used_sets[s] {
                continue;
            }
            next.used_sets[s] = true;
            for &e in self.base.set_elements(s) {
                if next.covered[e] || next.residual_reqs[e] == 0 {
                    continue;
                }
                next.residual_reqs[e] -= 1;
                if next.residual_reqs[e] == 0 {
                    next.covered[e] = true;
                    next.covered_count += 1;
                }
            }
        }
        next
    }

    /// Materializes the reduced instance for a density subroutine.
    ///
    /// Keeps elements that are not yet fully covered and can still reach
    /// their residual requirement from the unused sets; keeps unused sets
    /// that still touch such an element. Returns `None` when nothing
    /// coverable remains.
    pub fn reduced_instance(&self) -> Option<ReducedInstance> {
        let base = self.base;
        let mut keep_elem = Vec::new();
        for e in 0..base.n {
            if self.covered[e] {
                continue;
            }
            let live_degree = base.containing[e]
                .iter()
                .filter(|&&s| !self.used_sets[s])
                .count();
            if live_degree >= self.residual_reqs[e] as usize {
                keep_elem.push(e);
            }
        }
        if keep_elem.is_empty() {
            return None;
        }
        let elem_pos: Vec<Option<usize>> = {
            let mut pos = vec![None; base.n];
            for (i, &e) in keep_elem.iter().enumerate() {
                pos[e] = Some(i);
            }
            pos
        };
        let mut set_ids = Vec::new();
        let mut sets = Vec::new();
        let mut costs = Vec::new();
        for s in 0..base.num_sets() {
            if self.used_sets[s] {
                continue;
            }
            let members: Vec<usize> = base.sets[s]
                .iter()
                .filter_map(|&e| elem_pos[e])
                .collect();
            if members.is_empty() {
                continue;
            }
            set_ids.push(s);
            sets.push(members);
            costs.push(base.costs[s]);
        }
        let reqs: Vec<u32> = keep_elem.iter().map(|&e| self.residual_reqs[e]).collect();
        // The covering ratio is irrelevant to density subroutines; use 1.
        let instance = Instance::new(keep_elem.len(), sets, costs, reqs, Ratio::ONE)
            .expect("reduced instance is valid by construction");
        Some(ReducedInstance { instance, element_ids: keep_elem, set_ids })
    }
}

/// A residual instance re-indexed to its live elements and sets, with
/// maps back to the original indices.
#[derive(Clone, Debug)]
pub struct ReducedInstance {
    pub instance: Instance,
    pub element_ids: Vec<usize>,
    pub set_ids: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn instances_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Instance>();
        assert_send_sync::<SubCollection>();
    }

    #[test]
    fn rejects_bad_instances() {
        let q = Ratio::ONE;
        assert!(Instance::new(0, vec![], vec![], vec![], q).is_err());
        assert!(Instance::new(1, vec![vec![1]], vec![1], vec![1], q).is_err());
        assert!(Instance::new(1, vec![vec![0, 0]], vec![1], vec![1], q).is_err());
        assert!(Instance::new(1, vec![vec![0]], vec![1], vec![0], q).is_err());
        assert!(Instance::new(1, vec![vec![0]], vec![1, 2], vec![1], q).is_err());
        assert!(Instance::new(1, vec![vec![0]], vec![1], vec![1], Ratio::ZERO).is_err());
        assert!(Instance::new(1, vec![vec![0]], vec![1], vec![1], Ratio::new(3, 2)).is_err());
        assert!(Instance::new(2, vec![vec![0], vec![1]], vec![u64::MAX, 1], vec![1, 1], q).is_err());
    }

    #[test]
    fn coverage_on_the_gap_family() {
        let inst = generators::gen_example1(100);
        let pair = inst.coverage(&[0, 2]);
        assert_eq!(pair.covered, vec![0]);
        assert_eq!(pair.cost, 101);
        assert_eq!(pair.density, Some(Ratio::new(101, 1)));

        let all = inst.coverage(&[0, 1, 2]);
        assert_eq!(all.covered, vec![0, 1]);
        assert_eq!(all.density, Some(Ratio::new(51, 1)));

        let empty = inst.coverage(&[]);
        assert_eq!(empty.covered, Vec::<usize>::new());
        assert_eq!(empty.cost, 0);
        assert_eq!(empty.density, None);
    }

    #[test]
    fn coverage_counts_distinct_sets_only() {
        let inst = generators::gen_example42();
        // Two of the three sets contain e1 (req 2); e2 and e3 need one.
        let sub = inst.coverage(&[0, 2]);
        assert_eq!(sub.covered, vec![0, 1, 2]);
        // Duplicates in the selection collapse.
        let dup = inst.coverage(&[0, 2, 0, 2, 2]);
        assert_eq!(dup, sub);
    }

    #[test]
    fn coverability_census() {
        let inst = generators::gen_example1(100);
        assert_eq!(inst.num_coverable(), 2);

        let appendix = generators::gen_appendix();
        assert_eq!(appendix.num_coverable(), 3);

        // An element in req-1 sets is never coverable.
        let inst = Instance::new(
            2,
            vec![vec![0, 1]],
            vec![1],
            vec![1, 2],
            Ratio::new(1, 2),
        )
        .unwrap();
        assert!(inst.is_coverable(0));
        assert!(!inst.is_coverable(1));
        assert_eq!(inst.num_coverable(), 1);
    }

    #[test]
    fn residual_ratio_follows_the_target() {
        // n = 10, q = 1/2: after covering 3 elements the remaining ratio
        // is (5 - 3) / 10.
        let sets: Vec<Vec<usize>> = (0..10).map(|e| vec![e]).collect();
        let inst = Instance::new(10, sets, vec![1; 10], vec![1; 10], Ratio::new(1, 2)).unwrap();
        let state = ResidualState::new(&inst);
        assert_eq!(state.remaining_ratio(), Ratio::new(5, 10));
        let picked = inst.coverage(&[0, 1, 2]);
        let next = state.after_pick(&picked);
        assert_eq!(next.covered_count(), 3);
        assert_eq!(next.remaining_ratio(), Ratio::new(2, 10));
    }

    #[test]
    fn residual_requirement_decrements_without_covering() {
        let inst = generators::gen_example1(100);
        let state = ResidualState::new(&inst);
        // S3 contains e1 which needs two sets: one pick leaves residual 1.
        let next = state.after_pick_sets(&[2]);
        assert_eq!(next.residual_requirement(0), 1);
        assert!(!next.is_covered(0));
        assert_eq!(next.covered_count(), 0);
    }

    #[test]
    fn residual_drains_on_the_triangle() {
        let inst = generators::gen_appendix();
        let state = ResidualState::new(&inst);
        let next = state.after_pick_sets(&[0, 1, 2]);
        for e in 0..3 {
            assert_eq!(next.residual_requirement(e), 0);
            assert!(next.is_covered(e));
        }
        assert_eq!(next.remaining_ratio(), Ratio::ZERO);
        assert!(next.reduced_instance().is_none());
    }

    #[test]
    fn reduced_instance_masks_used_sets_and_covered_elements() {
        let inst = generators::gen_appendix();
        let state = ResidualState::new(&inst).after_pick_sets(&[0, 1]);
        // e1 is covered; e2 and e3 each still need one set, and only S3
        // remains.
        let red = state.reduced_instance().unwrap();
        assert_eq!(red.element_ids, vec![1, 2]);
        assert_eq!(red.set_ids, vec![2]);
        assert_eq!(red.instance.num_elements(), 2);
        assert_eq!(red.instance.requirement(0), 1);
        assert_eq!(red.instance.requirement(1), 1);
    }
}
