//! Built-in benchmark suites written as CSV.
//!
//! Columns are fixed: `seed,n,m,r_max,q,epsilon,algo,cost,covered,opt,
//! ratio,wall_ms`. For LP rows the cost column carries the objective and
//! the ratio column the integrality gap (exact density over objective);
//! for solver rows the ratio is cost over optimal cost. Failed rows keep
//! their identifying columns and leave the results blank.

use std::time::Instant;

use psmc::generators::{gen_example1, gen_random, RandomParams, Seed};
use psmc::greedy::{greedy_solve, verify_bicriteria, ExactMdsc};
use psmc::lp::{solve_lp1, solve_natural_lp};
use psmc::oracles::{exact_mdsc, exact_psmc, OracleLimits};
use psmc::Ratio;

pub const HEADER: &str = "seed,n,m,r_max,q,epsilon,algo,cost,covered,opt,ratio,wall_ms";

struct Row {
    seed: u64,
    algo: &'static str,
    cells: Vec<String>,
    failed: bool,
}

pub struct SuiteOutcome {
    pub csv: String,
    pub rows: usize,
    pub failed: usize,
}

pub fn known_suites() -> &'static [&'static str] {
    &["default", "example1-gap", "empty"]
}

pub fn run_suite(name: &str) -> Result<SuiteOutcome, String> {
    let rows = match name {
        "default" => default_suite(),
        "example1-gap" => gap_suite(),
        "empty" => Vec::new(),
        _ => {
            return Err(format!(
                "unknown suite `{name}`; known suites: {}",
                known_suites().join(", ")
            ))
        }
    };
    let mut rows = rows;
    rows.sort_by(|a, b| a.seed.cmp(&b.seed).then(a.algo.cmp(b.algo)));
    let mut csv = String::from(HEADER);
    csv.push('\n');
    let mut failed = 0;
    for row in &rows {
        csv.push_str(&row.cells.join(","));
        csv.push('\n');
        if row.failed {
            failed += 1;
        }
    }
    Ok(SuiteOutcome { csv, rows: rows.len(), failed })
}

/// 200 seeded random instances, greedy with the exact density
/// subroutine, verified against the exhaustive optimum.
fn default_suite() -> Vec<Row> {
    let limits = OracleLimits::default();
    let solver = ExactMdsc::default();
    let epsilons = [Ratio::new(1, 10), Ratio::new(1, 4), Ratio::new(1, 2)];
    let algo = "greedy+exact-mdsc";
    let mut rows = Vec::new();
    for seed in 0..200u64 {
        let params = RandomParams {
            n: 6 + (seed as usize % 5),
            m: 4 + (seed as usize % 4),
            r_max: 1 + (seed as u32 % 3),
            q: if seed % 2 == 0 { Ratio::new(1, 2) } else { Ratio::new(3, 4) },
            cost_max: 10,
        };
        let epsilon = epsilons[seed as usize % 3];
        let mut cells = vec![
            seed.to_string(),
            params.n.to_string(),
            params.m.to_string(),
            params.r_max.to_string(),
            params.q.to_string(),
            epsilon.to_string(),
            algo.to_string(),
        ];
        let started = Instant::now();
        let outcome = gen_random(Seed(seed), &params)
            .map_err(|e| e.to_string())
            .and_then(|inst| {
                let (result, trace) =
                    greedy_solve(&inst, epsilon, &solver).map_err(|e| e.to_string())?;
                let opt = exact_psmc(&inst, &limits).map_err(|e| e.to_string())?.cost;
                let report = verify_bicriteria(&trace, opt, Ratio::ONE);
                report.ensure().map_err(|e| e.to_string())?;
                Ok((result.cost, result.num_covered(), opt))
            });
        let wall_ms = started.elapsed().as_millis();
        match outcome {
            Ok((cost, covered, opt)) => {
                cells.push(cost.to_string());
                cells.push(covered.to_string());
                cells.push(opt.to_string());
                cells.push(format!("{}", cost as f64 / opt as f64));
                cells.push(wall_ms.to_string());
                rows.push(Row { seed, algo, cells, failed: false });
            }
            Err(msg) => {
                eprintln!("seed {seed}: {msg}");
                cells.extend(["", "", "", ""].map(String::from));
                cells.push(wall_ms.to_string());
                rows.push(Row { seed, algo, cells, failed: true });
            }
        }
    }
    rows
}

/// The pair-gap family swept over the double-set cost, solved by both
/// relaxations; the ratio column is the integrality gap.
fn gap_suite() -> Vec<Row> {
    let limits = OracleLimits::default();
    let mut rows = Vec::new();
    for m_cost in [10u64, 100, 1000] {
        let inst = gen_example1(m_cost);
        let density = exact_mdsc(&inst, &limits)
            .expect("gap family is coverable")
            .density
            .expect("nonempty cover")
            .to_f64();
        for algo in ["lp-natural", "lp1"] {
            let mut cells = vec![
                m_cost.to_string(),
                inst.num_elements().to_string(),
                inst.num_sets().to_string(),
                inst.max_requirement().to_string(),
                inst.covering_ratio().to_string(),
                String::new(),
                algo.to_string(),
            ];
            let started = Instant::now();
            let objective = match algo {
                "lp-natural" => solve_natural_lp(&inst).map(|s| s.objective),
                _ => solve_lp1(&inst).map(|s| s.fractional.objective),
            };
            let wall_ms = started.elapsed().as_millis();
            match objective {
                Ok(obj) => {
                    cells.push(format!("{obj}"));
                    cells.push(String::new());
                    cells.push(format!("{density}"));
                    cells.push(format!("{}", density / obj));
                    cells.push(wall_ms.to_string());
                    rows.push(Row { seed: m_cost, algo, cells, failed: false });
                }
                Err(e) => {
                    eprintln!("M = {m_cost}, {algo}: {e}");
                    cells.extend(["", "", "", ""].map(String::from));
                    cells.push(wall_ms.to_string());
                    rows.push(Row { seed: m_cost, algo, cells, failed: true });
                }
            }
        }
    }
    rows
}
