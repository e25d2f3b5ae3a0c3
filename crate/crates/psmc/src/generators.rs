//! Reproducible instance builders: the built-in example families, the
//! 3-dimensional-matching gadget, and seeded random instances.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::ratio::Ratio;

/// Seed for the deterministic generator. Equal seeds produce identical
/// instances on every platform.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Seed(pub u64);

/// SplitMix64, the fixed PRNG for all randomized fixtures.
///
/// The algorithm is pinned so committed fixtures stay reproducible across
/// implementations: state advances by `0x9E37_79B9_7F4A_7C15` and the
/// output is finalized with the usual xor-shift-multiply chain.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: Seed) -> SplitMix64 {
        SplitMix64 { state: seed.0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[0, bound)` by modulo reduction (bias is irrelevant at
    /// the bounds used here and keeps the stream layout simple).
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        self.next_u64() % bound
    }
}

/// Two elements, two unit singletons and one expensive double set, all
/// requirements 2. The cheapest sub-collection fully covering both
/// elements has density `(2 + m) / 2`, while the scalarized relaxation of
/// the natural program is stuck at 2 — the gap grows linearly in `m`.
pub fn gen_example1(m: u64) -> Instance {
    assert!(m >= 1, "the double-set cost must be at least 1");
    Instance::new(
        2,
        vec![vec![0], vec![1], vec![0, 1]],
        vec![1, 1, m],
        vec![2, 2],
        Ratio::ONE,
    )
    .expect("valid by construction")
}

/// Three elements with mixed requirements; element 0 needs two of its
/// three containing sets, so it has three distinct cover-set witnesses.
pub fn gen_example42() -> Instance {
    Instance::new(
        3,
        vec![vec![0, 1, 2], vec![0], vec![0, 2]],
        vec![1, 1, 1],
        vec![2, 1, 1],
        Ratio::ONE,
    )
    .expect("valid by construction")
}

/// The triangle instance: three unit-cost sets pairwise overlapping in
/// three elements, every requirement 2, covering ratio 2/3. Any pair of
/// sets fully covers one element at density 2, yet the leftover set then
/// covers the other two at density 1/2 — densities of successive pruning
/// picks can decrease.
pub fn gen_appendix() -> Instance {
    Instance::new(
        3,
        vec![vec![0, 1], vec![0, 2], vec![1, 2]],
        vec![1, 1, 1],
        vec![2, 2, 2],
        Ratio::new(2, 3),
    )
    .expect("valid by construction")
}

/// The matching gadget: elements are three coordinate groups of size `k`
/// plus a hub element required `k` times; each triple becomes a unit-cost
/// set of its three coordinates plus the hub.
///
/// If the triples contain a perfect matching, the minimum density is
/// exactly `k / (3k + 1)`; otherwise it is strictly larger.
pub fn gen_threedm(k: usize, triples: &[(usize, usize, usize)]) -> Result<Instance> {
    if k == 0 {
        return Err(Error::InvalidParameter("matching size must be positive".into()));
    }
    if triples.is_empty() {
        return Err(Error::InvalidParameter("at least one triple is required".into()));
    }
    for &(x, y, z) in triples {
        if x >= k || y >= k || z >= k {
            return Err(Error::InvalidParameter(format!(
                "triple ({x}, {y}, {z}) has a coordinate outside [0, {k})"
            )));
        }
    }
    let n = 3 * k + 1;
    let hub = 3 * k;
    let sets: Vec<Vec<usize>> = triples
        .iter()
        .map(|&(x, y, z)| vec![x, k + y, 2 * k + z, hub])
        .collect();
    let mut reqs = vec![1u32; n];
    reqs[hub] = u32::try_from(k)
        .map_err(|_| Error::InvalidParameter("matching size too large".into()))?;
    let costs = vec![1u64; sets.len()];
    Instance::new(n, sets, costs, reqs, Ratio::ONE)
}

/// The identity matching `(i, i, i)`.
pub fn planted_matching_triples(k: usize) -> Vec<(usize, usize, usize)> {
    (0..k).map(|i| (i, i, i)).collect()
}

/// Triples that all share x-coordinate 0, so no two are disjoint and no
/// perfect matching exists for `k >= 2`.
pub fn overlapping_triples(k: usize) -> Vec<(usize, usize, usize)> {
    (0..k).map(|i| (0, i, i)).collect()
}

/// Planted matching plus decoy triples that share x-coordinate 0 among
/// themselves, so the planted matching stays the only perfect one.
pub fn gen_threedm_planted(k: usize) -> Result<Instance> {
    let mut triples = planted_matching_triples(k);
    if k >= 2 {
        for i in 0..k {
            triples.push((0, (i + 1) % k, (i + 2) % k));
        }
    }
    gen_threedm(k, &triples)
}

/// Parameters for [`gen_random`].
#[derive(Clone, Copy, Debug)]
pub struct RandomParams {
    pub n: usize,
    pub m: usize,
    pub r_max: u32,
    pub q: Ratio,
    pub cost_max: u64,
}

/// Seeded random instance.
///
/// Draw order is pinned for reproducibility: each set is drawn as one
/// membership bit per element (rejecting empty sets), redrawing the whole
/// family until every element lands in at least one set; then one
/// requirement per element, uniform in `[1, min(r_max, degree))]`; then
/// one cost per set, uniform in `[1, cost_max]`. Capping requirements at
/// the degree keeps every element coverable, so any covering ratio is
/// feasible.
pub fn gen_random(seed: Seed, params: &RandomParams) -> Result<Instance> {
    if params.n == 0 || params.m == 0 || params.r_max == 0 || params.cost_max == 0 {
        return Err(Error::InvalidParameter("all size parameters must be positive".into()));
    }
    if params.q.is_zero() || params.q > Ratio::ONE {
        return Err(Error::InvalidParameter(format!(
            "covering ratio {} outside (0, 1]",
            params.q
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut sets: Option<Vec<Vec<usize>>> = None;
    for _ in 0..100 {
        let mut candidate = Vec::with_capacity(params.m);
        for _ in 0..params.m {
            loop {
                let members: Vec<usize> =
                    (0..params.n).filter(|_| rng.next_u64() & 1 == 1).collect();
                if !members.is_empty() {
                    candidate.push(members);
                    break;
                }
            }
        }
        let mut degree = vec![0usize; params.n];
        for set in &candidate {
            for &e in set {
                degree[e] += 1;
            }
        }
        if degree.iter().all(|&d| d >= 1) {
            sets = Some(candidate);
            break;
        }
    }
    let sets = sets.ok_or_else(|| {
        Error::RetryExhausted(format!(
            "no fully coverable family with n = {}, m = {} after 100 draws",
            params.n, params.m
        ))
    })?;

    let mut degree = vec![0u64; params.n];
    for set in &sets {
        for &e in set {
            degree[e] += 1;
        }
    }
    let reqs: Vec<u32> = (0..params.n)
        .map(|e| {
            let cap = (params.r_max as u64).min(degree[e]);
            1 + rng.next_below(cap) as u32
        })
        .collect();
    let costs: Vec<u64> = (0..params.m).map(|_| 1 + rng.next_below(params.cost_max)).collect();
    Instance::new(params.n, sets, costs, reqs, params.q)
}
