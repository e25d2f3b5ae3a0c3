//! Command-line front end: generate instances, solve them with any of
//! the implemented algorithms, verify the greedy guarantees against the
//! exhaustive optima, and run benchmark suites.
//!
//! Exit codes: 0 success, 1 usage or parse failure, 2 infeasible,
//! 3 assertion or bound failure, 4 enumeration or iteration budget
//! exceeded.

mod bench;
mod files;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::exit;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use files::InstanceFile;
use psmc::generators::{
    gen_appendix, gen_example1, gen_example42, gen_random, gen_threedm_planted, RandomParams, Seed,
};
use psmc::greedy::{greedy_solve, verify_bicriteria, ExactMdsc, MdscSolver};
use psmc::lp::{solve_lp1, solve_natural_lp};
use psmc::mdsc_approx::{mdsc_approx_solve, ApproxMdsc, MulticoverBackend};
use psmc::oracles::{exact_mdsc, exact_psmc, OracleLimits};
use psmc::{Error, Instance, Ratio};
use report::{to_json_line, SolveReport, StagesJson, TraceJson, VerifyReport};

#[derive(Parser)]
#[command(name = "psmc", version, about = "Partial set multi-cover toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write an instance file for one of the built-in families.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        /// Cost of the double set in the `example1` family.
        #[arg(long = "M", default_value_t = 100)]
        big_m: u64,
        /// Matching size for the `threedm` gadget.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Seed for the `random` family.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Element count for the `random` family.
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Set count for the `random` family.
        #[arg(long, default_value_t = 6)]
        m: usize,
        /// Requirement cap for the `random` family.
        #[arg(long = "r-max", default_value_t = 2)]
        r_max: u32,
        /// Covering ratio for the `random` family; converted to an exact
        /// rational with denominator at most 10^6 and echoed back.
        #[arg(long, default_value_t = 0.75)]
        q: f64,
        /// Cost cap for the `random` family.
        #[arg(long = "cost-max", default_value_t = 10)]
        cost_max: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve an instance file and print a JSON report.
    Solve {
        input: PathBuf,
        #[arg(long, value_enum)]
        algo: Algo,
        /// Required for the greedy algorithms; converted to an exact
        /// rational with denominator at most 10^6.
        #[arg(long)]
        epsilon: Option<f64>,
        /// Dump column-generation progress (round, objective, pool size)
        /// as CSV; only meaningful with `--algo lp1`.
        #[arg(long = "lp-trace")]
        lp_trace: Option<PathBuf>,
    },
    /// Run greedy with the exact density subroutine and check every cost
    /// bound against the exhaustive optimum.
    Verify {
        input: PathBuf,
        #[arg(long)]
        epsilon: f64,
        /// Repeat the whole verification and require identical reports.
        #[arg(long, default_value_t = 1)]
        trials: usize,
    },
    /// Run a named benchmark suite and write it as CSV.
    Bench {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Example1,
    Example42,
    Threedm,
    Appendix,
    Random,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    #[value(name = "greedy+exact-mdsc")]
    GreedyExact,
    #[value(name = "greedy+approx-mdsc")]
    GreedyApprox,
    #[value(name = "exact")]
    Exact,
    #[value(name = "mdsc-exact")]
    MdscExact,
    #[value(name = "mdsc-approx")]
    MdscApprox,
    #[value(name = "lp-natural")]
    LpNatural,
    #[value(name = "lp1")]
    Lp1,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::GreedyExact => "greedy+exact-mdsc",
            Algo::GreedyApprox => "greedy+approx-mdsc",
            Algo::Exact => "exact",
            Algo::MdscExact => "mdsc-exact",
            Algo::MdscApprox => "mdsc-approx",
            Algo::LpNatural => "lp-natural",
            Algo::Lp1 => "lp1",
        }
    }
}

type CmdResult = Result<(), (i32, String)>;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                exit(0);
            }
            eprint!("{e}");
            exit(1);
        }
    };
    if let Err((code, message)) = run(cli) {
        eprintln!("error: {message}");
        exit(code);
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Gen { kind, big_m, k, seed, n, m, r_max, q, cost_max, out } => {
            cmd_gen(kind, big_m, k, seed, n, m, r_max, q, cost_max, &out)
        }
        Command::Solve { input, algo, epsilon, lp_trace } => {
            cmd_solve(&input, algo, epsilon, lp_trace.as_deref())
        }
        Command::Verify { input, epsilon, trials } => cmd_verify(&input, epsilon, trials),
        Command::Bench { suite, out } => cmd_bench(&suite, &out),
    }
}

fn solver_exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInstance(_) | Error::InvalidParameter(_) => 1,
        Error::Infeasible(_) => 2,
        Error::BoundViolation(_)
        | Error::SolverStalled
        | Error::Numerical(_)
        | Error::DegenerateY(_) => 3,
        Error::BudgetExceeded(_) | Error::IterationLimit(_) | Error::RetryExhausted(_) => 4,
    }
}

fn fail(e: Error) -> (i32, String) {
    (solver_exit_code(&e), e.to_string())
}

/// Best rational with denominator at most 10^6 for a CLI float.
fn ratio_from_float(x: f64, what: &str) -> Result<Ratio, (i32, String)> {
    const DEN: u64 = 1_000_000;
    if !x.is_finite() || x <= 0.0 || x > 1.0 {
        return Err((1, format!("{what} must lie in (0, 1], got {x}")));
    }
    let num = (x * DEN as f64).round() as u64;
    if num == 0 {
        return Err((1, format!("{what} is too small to represent, got {x}")));
    }
    Ok(Ratio::new(num.min(DEN), DEN))
}

fn epsilon_from_float(x: f64) -> Result<Ratio, (i32, String)> {
    let eps = ratio_from_float(x, "epsilon")?;
    if eps >= Ratio::ONE {
        return Err((1, format!("epsilon must lie strictly below 1, got {x}")));
    }
    Ok(eps)
}

fn load_instance(path: &Path) -> Result<Instance, (i32, String)> {
    let text = fs::read_to_string(path)
        .map_err(|e| (1, format!("cannot read {}: {e}", path.display())))?;
    let file = InstanceFile::parse(&text)
        .map_err(|e| (1, format!("cannot parse {}: {e}", path.display())))?;
    file.to_instance()
        .map_err(|e| (1, format!("invalid instance in {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> CmdResult {
    fs::write(path, contents).map_err(|e| (1, format!("cannot write {}: {e}", path.display())))
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    kind: GenKind,
    big_m: u64,
    k: usize,
    seed: u64,
    n: usize,
    m: usize,
    r_max: u32,
    q: f64,
    cost_max: u64,
    out: &Path,
) -> CmdResult {
    let inst = match kind {
        GenKind::Example1 => {
            if big_m < 1 {
                return Err((1, "--M must be at least 1".into()));
            }
            gen_example1(big_m)
        }
        GenKind::Example42 => gen_example42(),
        GenKind::Appendix => gen_appendix(),
        GenKind::Threedm => gen_threedm_planted(k).map_err(fail)?,
        GenKind::Random => {
            let q = ratio_from_float(q, "q")?;
            let params = RandomParams { n, m, r_max, q, cost_max };
            gen_random(Seed(seed), &params).map_err(fail)?
        }
    };
    write_file(out, &InstanceFile::from_instance(&inst).to_json())?;
    println!(
        "n={} m={} r_max={} q={}",
        inst.num_elements(),
        inst.num_sets(),
        inst.max_requirement(),
        inst.covering_ratio()
    );
    Ok(())
}

fn cmd_solve(
    input: &Path,
    algo: Algo,
    epsilon: Option<f64>,
    lp_trace: Option<&Path>,
) -> CmdResult {
    let inst = load_instance(input)?;
    let limits = OracleLimits::default();
    let report = match algo {
        Algo::GreedyExact | Algo::GreedyApprox => {
            let Some(eps) = epsilon else {
                return Err((1, format!("--epsilon is required for --algo {}", algo.name())));
            };
            let eps = epsilon_from_float(eps)?;
            let exact = ExactMdsc::default();
            let approx = ApproxMdsc::default();
            let solver: &dyn MdscSolver =
                if algo == Algo::GreedyExact { &exact } else { &approx };
            let (result, trace) = greedy_solve(&inst, eps, solver).map_err(fail)?;
            let mut r = SolveReport::new(algo.name()).with_solution(&result);
            r.epsilon = Some([eps.num(), eps.den()]);
            r.trace = Some(TraceJson::from_trace(&trace));
            r
        }
        Algo::Exact => {
            let result = exact_psmc(&inst, &limits).map_err(fail)?;
            SolveReport::new(algo.name()).with_solution(&result)
        }
        Algo::MdscExact => {
            let result = exact_mdsc(&inst, &limits).map_err(fail)?;
            SolveReport::new(algo.name()).with_solution(&result).with_density(&result)
        }
        Algo::MdscApprox => {
            let (result, stages) =
                mdsc_approx_solve(&inst, MulticoverBackend::Greedy).map_err(fail)?;
            let mut r = SolveReport::new(algo.name()).with_solution(&result).with_density(&result);
            r.stages = Some(StagesJson::from_report(&stages));
            r
        }
        Algo::LpNatural => {
            let sol = solve_natural_lp(&inst).map_err(fail)?;
            let mut r = SolveReport::new(algo.name());
            r.objective = Some(sol.objective);
            r
        }
        Algo::Lp1 => {
            let sol = solve_lp1(&inst).map_err(fail)?;
            if let Some(path) = lp_trace {
                let mut csv = String::from("round,objective,pool_size\n");
                for round in &sol.rounds {
                    csv.push_str(&format!(
                        "{},{},{}\n",
                        round.round, round.objective, round.pool_size
                    ));
                }
                write_file(path, &csv)?;
            }
            let mut r = SolveReport::new(algo.name());
            r.objective = Some(sol.fractional.objective);
            r
        }
    };
    print!("{}", to_json_line(&report));
    Ok(())
}

fn cmd_verify(input: &Path, epsilon: f64, trials: usize) -> CmdResult {
    let inst = load_instance(input)?;
    let eps = epsilon_from_float(epsilon)?;
    if trials == 0 {
        return Err((1, "--trials must be at least 1".into()));
    }
    let limits = OracleLimits::default();
    let one_pass = || -> Result<(String, bool), (i32, String)> {
        let solver = ExactMdsc::default();
        let (_, trace) = greedy_solve(&inst, eps, &solver).map_err(fail)?;
        let opt = exact_psmc(&inst, &limits).map_err(fail)?;
        let check = verify_bicriteria(&trace, opt.cost, Ratio::ONE);
        let lp1 = solve_lp1(&inst).map_err(fail)?;
        let exact_density = exact_mdsc(&inst, &limits)
            .map_err(fail)?
            .density
            .expect("coverable instance");
        let verify = VerifyReport::build(
            &trace,
            &check,
            lp1.fractional.objective,
            exact_density,
            trials,
        );
        Ok((to_json_line(&verify), verify.pass))
    };
    let (first, passed) = one_pass()?;
    for _ in 1..trials {
        let (again, _) = one_pass()?;
        if again != first {
            return Err((3, "verification is not deterministic across trials".into()));
        }
    }
    print!("{first}");
    if passed {
        Ok(())
    } else {
        Err((3, "one or more verification checks failed".into()))
    }
}

fn cmd_bench(suite: &str, out: &Path) -> CmdResult {
    let outcome = bench::run_suite(suite).map_err(|e| (1, e))?;
    write_file(out, &outcome.csv)?;
    println!(
        "suite={suite} rows={} failed={} out={}",
        outcome.rows,
        outcome.failed,
        out.display()
    );
    if outcome.rows > 0 && outcome.failed == outcome.rows {
        return Err((3, "every row in the suite failed".into()));
    }
    Ok(())
}
