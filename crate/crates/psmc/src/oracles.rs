//! Exhaustive solvers for small instances.
//!
//! These enumerate every sub-collection and are the ground truth that the
//! approximation algorithms and property tests are checked against. Ties
//! break to the lexicographically smallest chosen index list so results
//! are stable.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::instance::{Instance, SubCollection};
use crate::ratio::Ratio;

/// Caps for the exhaustive solvers.
#[derive(Clone, Copy, Debug)]
pub struct OracleLimits {
    /// Largest set count for full-subset enumeration.
    pub max_sets: usize,
    /// Wall-clock cap.
    pub time_budget: Duration,
}

impl Default for OracleLimits {
    fn default() -> OracleLimits {
        OracleLimits { max_sets: 20, time_budget: Duration::from_secs(30) }
    }
}

struct Enumerator {
    elem_masks: Vec<u64>,
    reqs: Vec<u32>,
    costs: Vec<u64>,
    num_sets: usize,
    deadline: Instant,
}

impl Enumerator {
    fn new(inst: &Instance, limits: &OracleLimits) -> Result<Enumerator> {
        let m = inst.num_sets();
        if m > limits.max_sets || m > 63 {
            return Err(Error::BudgetExceeded(format!(
                "{m} sets exceeds the enumeration cap of {}",
                limits.max_sets.min(63)
            )));
        }
        let elem_masks = (0..inst.num_elements())
            .map(|e| {
                inst.sets_containing(e)
                    .iter()
                    .fold(0u64, |mask, &s| mask | (1 << s))
            })
            .collect();
        Ok(Enumerator {
            elem_masks,
            reqs: (0..inst.num_elements()).map(|e| inst.requirement(e)).collect(),
            costs: inst.costs().to_vec(),
            num_sets: m,
            deadline: Instant::now() + limits.time_budget,
        })
    }

    fn cost(&self, mask: u64) -> u64 {
        let mut rest = mask;
        let mut total = 0u64;
        while rest != 0 {
            let s = rest.trailing_zeros() as usize;
            total += self.costs[s];
            rest &= rest - 1;
        }
        total
    }

    fn covered_count(&self, mask: u64) -> usize {
        self.elem_masks
            .iter()
            .zip(&self.reqs)
            .filter(|&(&em, &r)| (mask & em).count_ones() >= r)
            .count()
    }

    fn covers_all(&self, mask: u64, targets: &[usize]) -> bool {
        targets
            .iter()
            .all(|&e| (mask & self.elem_masks[e]).count_ones() >= self.reqs[e])
    }

    fn check_deadline(&self, mask: u64) -> Result<()> {
        if mask & 0x1FFF == 0 && Instant::now() > self.deadline {
            return Err(Error::BudgetExceeded("oracle time budget spent".into()));
        }
        Ok(())
    }
}

/// True when the sorted index list of `a` precedes that of `b`.
///
/// Both agree below the lowest differing index `d`. If `a` holds `d`, its
/// next entry after the common prefix is `d` while `b`'s is larger or
/// missing, so `a` wins exactly when `b` still has entries at or past `d`
/// (otherwise `b` is a proper prefix and wins). Symmetrically when `b`
/// holds `d`.
fn mask_lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let d = diff.trailing_zeros();
    if a >> d & 1 == 1 {
        b >> d != 0
    } else {
        a >> d == 0
    }
}

fn mask_to_vec(mask: u64) -> Vec<usize> {
    let mut v = Vec::new();
    let mut rest = mask;
    while rest != 0 {
        v.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    v
}

/// Minimum-density sub-collection by full enumeration.
///
/// Scans all nonempty subsets; a subset whose cost alone already rules
/// out beating the incumbent (even if it covered every element) is
/// skipped without counting coverage, which cannot change the optimum.
pub fn exact_mdsc(inst: &Instance, limits: &OracleLimits) -> Result<SubCollection> {
    let en = Enumerator::new(inst, limits)?;
    if inst.num_coverable() == 0 {
        return Err(Error::Infeasible("no element can be fully covered".into()));
    }
    let n = inst.num_elements() as u64;
    let mut best: Option<(Ratio, u64)> = None;
    for mask in 1..(1u64 << en.num_sets) {
        en.check_deadline(mask)?;
        let cost = en.cost(mask);
        if let Some((bd, _)) = best {
            // cost / n is the best density this mask could reach.
            if cost as u128 * bd.den() as u128 > bd.num() as u128 * n as u128 {
                continue;
            }
        }
        let covered = en.covered_count(mask) as u64;
        if covered == 0 {
            continue;
        }
        let density = Ratio::new(cost, covered);
        let better = match best {
            None => true,
            Some((bd, bm)) => density < bd || (density == bd && mask_lex_less(mask, bm)),
        };
        if better {
            best = Some((density, mask));
        }
    }
    let (_, mask) = best.expect("a coverable element guarantees a candidate");
    Ok(inst.coverage(&mask_to_vec(mask)))
}

/// Minimum-cost sub-collection fully covering at least `ceil(q * n)`
/// elements, by full enumeration.
pub fn exact_psmc(inst: &Instance, limits: &OracleLimits) -> Result<SubCollection> {
    let target = inst.coverage_target();
    if target == 0 {
        return Ok(inst.coverage(&[]));
    }
    if inst.num_coverable() < target {
        return Err(Error::Infeasible(format!(
            "only {} of the required {target} elements are coverable",
            inst.num_coverable()
        )));
    }
    let en = Enumerator::new(inst, limits)?;
    let mut best: Option<(u64, u64)> = None;
    for mask in 1..(1u64 << en.num_sets) {
        en.check_deadline(mask)?;
        let cost = en.cost(mask);
        if let Some((bc, _)) = best {
            if cost > bc {
                continue;
            }
        }
        if en.covered_count(mask) < target {
            continue;
        }
        let better = match best {
            None => true,
            Some((bc, bm)) => cost < bc || (cost == bc && mask_lex_less(mask, bm)),
        };
        if better {
            best = Some((cost, mask));
        }
    }
    let (_, mask) = best.expect("feasibility was checked up front");
    Ok(inst.coverage(&mask_to_vec(mask)))
}

/// Minimum-cost sub-collection fully covering every listed target, by
/// full enumeration. With `targets` equal to all elements this is exact
/// set multi-cover.
pub fn exact_multicover(
    inst: &Instance,
    targets: &[usize],
    limits: &OracleLimits,
) -> Result<SubCollection> {
    let mut targets = targets.to_vec();
    targets.sort_unstable();
    targets.dedup();
    if targets.is_empty() {
        return Ok(inst.coverage(&[]));
    }
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
    let en = Enumerator::new(inst, limits)?;
    let mut best: Option<(u64, u64)> = None;
    for mask in 1..(1u64 << en.num_sets) {
        en.check_deadline(mask)?;
        let cost = en.cost(mask);
        if let Some((bc, _)) = best {
            if cost > bc {
                continue;
            }
        }
        if !en.covers_all(mask, &targets) {
            continue;
        }
        let better = match best {
            None => true,
            Some((bc, bm)) => cost < bc || (cost == bc && mask_lex_less(mask, bm)),
        };
        if better {
            best = Some((cost, mask));
        }
    }
    let (_, mask) = best.expect("every target is coverable");
    Ok(inst.coverage(&mask_to_vec(mask)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{
        gen_appendix, gen_example1, gen_example42, gen_threedm, planted_matching_triples,
    };

    fn limits() -> OracleLimits {
        OracleLimits::default()
    }

    #[test]
    fn mask_order_matches_sorted_list_order() {
        let cases: [(&[usize], &[usize]); 5] = [
            (&[2], &[2, 3]),
            (&[0, 2], &[1]),
            (&[0], &[0, 1]),
            (&[0, 1, 2], &[3]),
            (&[1, 2], &[2]),
        ];
        let to_mask = |v: &[usize]| v.iter().fold(0u64, |m, &s| m | (1 << s));
        for (small, large) in cases {
            assert!(
                mask_lex_less(to_mask(small), to_mask(large)),
                "{small:?} should precede {large:?}"
            );
            assert!(!mask_lex_less(to_mask(large), to_mask(small)));
        }
        assert!(!mask_lex_less(0b101, 0b101));
    }

    #[test]
    fn mdsc_on_the_gap_family() {
        let inst = gen_example1(100);
        let best = exact_mdsc(&inst, &limits()).unwrap();
        assert_eq!(best.chosen, vec![0, 1, 2]);
        assert_eq!(best.density, Some(Ratio::new(51, 1)));
    }

    #[test]
    fn mdsc_on_the_triangle_takes_everything() {
        let inst = gen_appendix();
        let best = exact_mdsc(&inst, &limits()).unwrap();
        assert_eq!(best.chosen, vec![0, 1, 2]);
        assert_eq!(best.density, Some(Ratio::ONE));
    }

    #[test]
    fn mdsc_on_the_matching_gadget() {
        let mut triples = planted_matching_triples(2);
        triples.push((0, 1, 0)); // decoy sharing coordinates with both
        let inst = gen_threedm(2, &triples).unwrap();
        let best = exact_mdsc(&inst, &limits()).unwrap();
        assert_eq!(best.density, Some(Ratio::new(2, 7)));
        assert_eq!(best.chosen, vec![0, 1]);
    }

    #[test]
    fn mdsc_rejects_uncoverable_instances() {
        let inst = Instance::new(1, vec![vec![0]], vec![1], vec![2], Ratio::ONE).unwrap();
        assert!(matches!(exact_mdsc(&inst, &limits()), Err(Error::Infeasible(_))));
    }

    #[test]
    fn oracle_set_cap() {
        let sets: Vec<Vec<usize>> = (0..25).map(|_| vec![0]).collect();
        let inst = Instance::new(1, sets, vec![1; 25], vec![1], Ratio::ONE).unwrap();
        assert!(matches!(
            exact_mdsc(&inst, &limits()),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn psmc_on_the_triangle_needs_all_three_sets() {
        let inst = gen_appendix();
        let best = exact_psmc(&inst, &limits()).unwrap();
        assert_eq!(best.cost, 3);
        assert_eq!(best.chosen, vec![0, 1, 2]);
        assert_eq!(best.num_covered(), 3);
    }

    #[test]
    fn psmc_at_full_ratio_equals_multicover() {
        // q = 1 makes the partial problem plain multi-cover.
        let inst = gen_appendix().with_covering_ratio(Ratio::ONE).unwrap();
        let psmc = exact_psmc(&inst, &limits()).unwrap();
        let all: Vec<usize> = (0..inst.num_elements()).collect();
        let mc = exact_multicover(&inst, &all, &limits()).unwrap();
        assert_eq!(psmc.cost, mc.cost);
        assert_eq!(psmc.chosen, mc.chosen);
    }

    #[test]
    fn psmc_on_the_gap_family_with_half_target() {
        // Covering one element of the pair family means paying for both
        // of its containing sets.
        let inst = gen_example1(100).with_covering_ratio(Ratio::new(1, 2)).unwrap();
        let best = exact_psmc(&inst, &limits()).unwrap();
        assert_eq!(best.cost, 101);
        assert_eq!(best.chosen, vec![0, 2]);
        assert_eq!(best.num_covered(), 1);
    }

    #[test]
    fn multicover_on_the_triangle() {
        let inst = gen_appendix();
        let best = exact_multicover(&inst, &[0, 1, 2], &limits()).unwrap();
        assert_eq!(best.cost, 3);
        assert_eq!(best.chosen, vec![0, 1, 2]);
    }

    #[test]
    fn multicover_picks_the_cheap_set() {
        let inst = Instance::new(
            1,
            vec![vec![0], vec![0]],
            vec![2, 5],
            vec![1],
            Ratio::ONE,
        )
        .unwrap();
        let best = exact_multicover(&inst, &[0], &limits()).unwrap();
        assert_eq!(best.cost, 2);
        assert_eq!(best.chosen, vec![0]);
    }

    #[test]
    fn multicover_on_partial_targets() {
        let inst = gen_example42();
        let best = exact_multicover(&inst, &[1, 2], &limits()).unwrap();
        assert_eq!(best.cost, 1);
        assert_eq!(best.chosen, vec![0]);
    }
}
