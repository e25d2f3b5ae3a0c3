//! Report JSON schemas. Field order is fixed by declaration, so reports
//! are byte-stable for golden tests.

use serde::Serialize;

use psmc::greedy::{BicriteriaReport, GreedyTrace};
use psmc::mdsc_approx::StageReport;
use psmc::{Ratio, SubCollection};

fn ratio_pair(r: Ratio) -> [u64; 2] {
    [r.num(), r.den()]
}

#[derive(Serialize)]
pub struct SolveReport {
    pub version: u32,
    pub algo: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<[u64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chosen: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cost: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub covered: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density: Option<[u64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub objective: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stages: Option<StagesJson>,
}

impl SolveReport {
    pub fn new(algo: &str) -> SolveReport {
        SolveReport {
            version: 1,
            algo: algo.to_string(),
            epsilon: None,
            chosen: None,
            cost: None,
            covered: None,
            density: None,
            density_value: None,
            objective: None,
            trace: None,
            stages: None,
        }
    }

    pub fn with_solution(mut self, sub: &SubCollection) -> SolveReport {
        self.chosen = Some(sub.chosen.clone());
        self.cost = Some(sub.cost);
        self.covered = Some(sub.num_covered());
        self
    }

    pub fn with_density(mut self, sub: &SubCollection) -> SolveReport {
        self.density = sub.density.map(ratio_pair);
        self.density_value = sub.density.map(|d| d.to_f64());
        self
    }
}

#[derive(Serialize)]
pub struct TraceJson {
    pub target: usize,
    pub relaxed_target: usize,
    pub final_coverage: usize,
    pub total_cost: u64,
    pub iterations: Vec<TraceIterationJson>,
}

#[derive(Serialize)]
pub struct TraceIterationJson {
    pub sets: Vec<usize>,
    pub cost: u64,
    pub newly_covered: usize,
    pub n_before: usize,
    pub n_after: usize,
    pub density: [u64; 2],
}

impl TraceJson {
    pub fn from_trace(trace: &GreedyTrace) -> TraceJson {
        TraceJson {
            target: trace.target,
            relaxed_target: trace.relaxed_target,
            final_coverage: trace.final_coverage,
            total_cost: trace.total_cost,
            iterations: trace
                .iterations
                .iter()
                .map(|it| TraceIterationJson {
                    sets: it.picked.chosen.clone(),
                    cost: it.picked.cost,
                    newly_covered: it.newly_covered,
                    n_before: it.n_before,
                    n_after: it.n_after,
                    density: ratio_pair(it.density),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct StagesJson {
    pub lp_objective: f64,
    pub cg_rounds: usize,
    pub pool_size: usize,
    pub levels: usize,
    pub bucket_sizes: Vec<usize>,
    pub bucket_masses: Vec<f64>,
    pub selected_bucket: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fallback_target: Option<usize>,
    pub targets: Vec<usize>,
    pub subroutine: String,
    pub subroutine_cost: u64,
}

impl StagesJson {
    pub fn from_report(report: &StageReport) -> StagesJson {
        StagesJson {
            lp_objective: report.lp_objective,
            cg_rounds: report.cg_rounds,
            pool_size: report.pool_size,
            levels: report.levels,
            bucket_sizes: report.bucket_sizes.clone(),
            bucket_masses: report.bucket_masses.clone(),
            selected_bucket: report.selected_bucket,
            fallback_target: report.fallback_target,
            targets: report.targets.clone(),
            subroutine: report.subroutine.to_string(),
            subroutine_cost: report.subroutine_cost,
        }
    }
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub version: u32,
    pub epsilon: [u64; 2],
    pub opt_cost: u64,
    pub greedy_cost: u64,
    pub coverage: usize,
    pub target: usize,
    pub relaxed_target: usize,
    pub iteration_checks: Vec<IterationCheckJson>,
    pub prefix_cost: u64,
    pub prefix_bound: f64,
    pub prefix_ok: bool,
    pub last_cost: u64,
    pub last_bound: [u64; 2],
    pub last_ok: bool,
    pub total_cost: u64,
    pub total_bound: f64,
    pub total_ok: bool,
    pub coverage_ok: bool,
    pub lp_bound: LpBoundJson,
    pub pass: bool,
    pub trials: usize,
}

#[derive(Serialize)]
pub struct IterationCheckJson {
    pub index: usize,
    pub cost: u64,
    pub n_before: usize,
    pub n_after: usize,
    pub lhs: [u64; 2],
    pub rhs: [u64; 2],
    pub ok: bool,
}

/// Relaxation sanity: the cover-set relaxation must not exceed the exact
/// minimum density.
#[derive(Serialize)]
pub struct LpBoundJson {
    pub lp1_objective: f64,
    pub exact_density: [u64; 2],
    pub ok: bool,
}

impl VerifyReport {
    pub fn build(
        trace: &GreedyTrace,
        report: &BicriteriaReport,
        lp1_objective: f64,
        exact_density: Ratio,
        trials: usize,
    ) -> VerifyReport {
        let lp_ok = lp1_objective <= exact_density.to_f64() + 1e-6;
        VerifyReport {
            version: 1,
            epsilon: ratio_pair(trace.epsilon),
            opt_cost: report.opt_cost,
            greedy_cost: trace.total_cost,
            coverage: trace.final_coverage,
            target: trace.target,
            relaxed_target: trace.relaxed_target,
            iteration_checks: report
                .per_iteration
                .iter()
                .map(|c| IterationCheckJson {
                    index: c.index,
                    cost: c.cost,
                    n_before: c.n_before,
                    n_after: c.n_after,
                    lhs: ratio_pair(c.lhs),
                    rhs: ratio_pair(c.rhs),
                    ok: c.ok,
                })
                .collect(),
            prefix_cost: report.prefix_cost,
            prefix_bound: report.prefix_bound,
            prefix_ok: report.prefix_ok,
            last_cost: report.last_cost,
            last_bound: ratio_pair(report.last_bound),
            last_ok: report.last_ok,
            total_cost: report.total_cost,
            total_bound: report.total_bound,
            total_ok: report.total_ok,
            coverage_ok: report.coverage_ok,
            lp_bound: LpBoundJson {
                lp1_objective,
                exact_density: ratio_pair(exact_density),
                ok: lp_ok,
            },
            pass: report.all_ok() && lp_ok,
            trials,
        }
    }
}

pub fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text
}
