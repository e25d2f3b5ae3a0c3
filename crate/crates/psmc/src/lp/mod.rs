//! Linear programming relaxations of the density problem.
//!
//! Two formulations are solved here. The *natural* relaxation keeps one
//! variable per set and one per element. The *cover-set* relaxation adds
//! one variable per `(element, witness)` pair, where a witness for `e` is
//! a family of exactly `req(e)` distinct sets containing `e`; the witness
//! pool is grown on demand by a pricing pass that, for each element,
//! sums the `req(e)` cheapest link prices and compares them against the
//! element's price. Both produce primal values and row duals.

mod simplex;

use crate::error::{Error, Result};
use crate::instance::Instance;
use simplex::{LpError, LpProblem, LpRow, RowOp};

/// Feasibility and reduced-cost tolerance.
pub const FEAS_TOL: f64 = 1e-7;
/// Tolerance for objective comparisons.
pub const OBJ_TOL: f64 = 1e-6;

/// A witness that element `element` can be fully covered: exactly
/// `req(element)` distinct sets, all containing it. The same set family
/// under a different element is a different column.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoverSetColumn {
    pub element: usize,
    pub sets: Vec<usize>,
}

/// Primal values of a relaxation.
///
/// `x` is per set, `y` per element (zero where the element was fixed
/// out), and `column_values` runs parallel to `columns` for the
/// generated cover-set variables. Natural-relaxation solutions carry an
/// empty pool.
#[derive(Clone, Debug)]
pub struct FractionalSolution {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub columns: Vec<CoverSetColumn>,
    pub column_values: Vec<f64>,
    pub objective: f64,
}

/// Row duals of the cover-set relaxation.
#[derive(Clone, Debug)]
pub struct DualValues {
    /// Dual of the normalization row (sum of y equals one).
    pub normalization: f64,
    /// Per-element price; zero for elements without a y variable.
    pub element_price: Vec<f64>,
    /// Per-element link prices as `(set, price)` pairs, sorted by set,
    /// one entry for every set containing the element.
    pub link: Vec<Vec<(usize, f64)>>,
}

impl DualValues {
    /// Price of the `(element, set)` link, zero when absent.
    pub fn link_price(&self, e: usize, s: usize) -> f64 {
        self.link[e]
            .binary_search_by_key(&s, |&(set, _)| set)
            .map(|i| self.link[e][i].1)
            .unwrap_or(0.0)
    }
}

fn map_lp_error(e: LpError, what: &str) -> Error {
    match e {
        LpError::Infeasible => Error::Infeasible(format!("{what} is infeasible")),
        LpError::Unbounded => Error::Numerical(format!("{what} reported unbounded")),
        LpError::Numerical(msg) => Error::Numerical(format!("{what}: {msg}")),
    }
}

/// Solves the natural relaxation: minimize total set cost subject to the
/// element values summing to one and every element's incident set mass
/// reaching `req(e) * y_e`, with all variables in `[0, 1]`.
pub fn solve_natural_lp(inst: &Instance) -> Result<FractionalSolution> {
    let n = inst.num_elements();
    let m = inst.num_sets();
    let supported: Vec<usize> = (0..n).filter(|&e| inst.degree(e) >= 1).collect();
    if supported.is_empty() {
        return Err(Error::Infeasible("no element belongs to any set".into()));
    }
    // Variables: x_0..x_{m-1}, then one y per supported element.
    let y_var: Vec<usize> = (0..supported.len()).map(|i| m + i).collect();
    let mut objective: Vec<f64> = inst.costs().iter().map(|&c| c as f64).collect();
    objective.resize(m + supported.len(), 0.0);

    let mut rows = Vec::new();
    rows.push(LpRow {
        coeffs: y_var.iter().map(|&j| (j, 1.0)).collect(),
        op: RowOp::Eq,
        rhs: 1.0,
    });
    for (i, &e) in supported.iter().enumerate() {
        let mut coeffs: Vec<(usize, f64)> =
            inst.sets_containing(e).iter().map(|&s| (s, 1.0)).collect();
        coeffs.push((y_var[i], -(inst.requirement(e) as f64)));
        rows.push(LpRow { coeffs, op: RowOp::Ge, rhs: 0.0 });
    }
    for s in 0..m {
        rows.push(LpRow { coeffs: vec![(s, 1.0)], op: RowOp::Le, rhs: 1.0 });
    }

    let problem = LpProblem { num_vars: m + supported.len(), objective, rows };
    let solution = simplex::solve(&problem).map_err(|e| map_lp_error(e, "natural relaxation"))?;

    let mut y = vec![0.0; n];
    for (i, &e) in supported.iter().enumerate() {
        y[e] = solution.values[y_var[i]];
    }
    Ok(FractionalSolution {
        x: solution.values[..m].to_vec(),
        y,
        columns: Vec::new(),
        column_values: Vec::new(),
        objective: solution.objective,
    })
}

/// One master solve during column generation.
#[derive(Clone, Copy, Debug)]
pub struct CgRound {
    pub round: usize,
    pub objective: f64,
    pub pool_size: usize,
}

/// Outcome of the cover-set relaxation.
#[derive(Clone, Debug)]
pub struct Lp1Solution {
    pub fractional: FractionalSolution,
    pub duals: DualValues,
    pub rounds: Vec<CgRound>,
}

/// The `req(e)` cheapest sets containing `e` under `price`, ties to the
/// smaller set index.
fn cheapest_witness(inst: &Instance, e: usize, price: impl Fn(usize) -> f64) -> Vec<usize> {
    let mut sets: Vec<usize> = inst.sets_containing(e).to_vec();
    sets.sort_by(|&a, &b| {
        price(a)
            .partial_cmp(&price(b))
            .expect("prices are finite")
            .then(a.cmp(&b))
    });
    sets.truncate(inst.requirement(e) as usize);
    sets.sort_unstable();
    sets
}

/// Pricing pass: for every coverable element, assemble the witness from
/// its `req(e)` cheapest links and return it when the witness undercuts
/// the element's price. An empty result certifies dual feasibility.
pub fn price_columns(inst: &Instance, duals: &DualValues) -> Vec<CoverSetColumn> {
    let mut violated = Vec::new();
    for e in 0..inst.num_elements() {
        if !inst.is_coverable(e) {
            continue;
        }
        let witness = cheapest_witness(inst, e, |s| duals.link_price(e, s));
        let total: f64 = witness.iter().map(|&s| duals.link_price(e, s)).sum();
        if total < duals.element_price[e] - FEAS_TOL {
            violated.push(CoverSetColumn { element: e, sets: witness });
        }
    }
    violated
}

/// Solves the cover-set relaxation by column generation on the
/// restricted master.
///
/// The pool is seeded with each coverable element's cheapest-by-cost
/// witness (which makes the master feasible), then grown by
/// [`price_columns`] until no witness undercuts its element's price.
/// Elements whose degree is below their requirement have no witness and
/// are fixed out; if every element is such, the relaxation is infeasible.
pub fn solve_lp1(inst: &Instance) -> Result<Lp1Solution> {
    let n = inst.num_elements();
    let m = inst.num_sets();
    let coverable = inst.coverable_elements();
    if coverable.is_empty() {
        return Err(Error::Infeasible("no element can be fully covered".into()));
    }

    let mut pool: Vec<CoverSetColumn> = coverable
        .iter()
        .map(|&e| CoverSetColumn {
            element: e,
            sets: cheapest_witness(inst, e, |s| inst.cost(s) as f64),
        })
        .collect();

    let round_cap = 10 * m.max(1) * n.max(1);
    let mut rounds = Vec::new();
    for round in 0..=round_cap {
        if round == round_cap {
            return Err(Error::IterationLimit(round_cap));
        }
        let (solution, duals) = solve_master(inst, &coverable, &pool)?;
        rounds.push(CgRound {
            round,
            objective: solution.objective,
            pool_size: pool.len(),
        });
        let mut fresh: Vec<CoverSetColumn> = price_columns(inst, &duals)
            .into_iter()
            .filter(|c| !pool.contains(c))
            .collect();
        if fresh.is_empty() {
            return Ok(Lp1Solution { fractional: solution, duals, rounds });
        }
        pool.append(&mut fresh);
    }
    unreachable!("loop returns or errors")
}

/// Builds and solves the restricted master over the current pool.
fn solve_master(
    inst: &Instance,
    coverable: &[usize],
    pool: &[CoverSetColumn],
) -> Result<(FractionalSolution, DualValues)> {
    let n = inst.num_elements();
    let m = inst.num_sets();
    // Variables: x per set, y per coverable element, l per pool column.
    let y_var: Vec<usize> = (0..coverable.len()).map(|i| m + i).collect();
    let l_var: Vec<usize> = (0..pool.len()).map(|i| m + coverable.len() + i).collect();
    let num_vars = m + coverable.len() + pool.len();

    let mut objective: Vec<f64> = inst.costs().iter().map(|&c| c as f64).collect();
    objective.resize(num_vars, 0.0);

    let mut rows = Vec::new();
    rows.push(LpRow {
        coeffs: y_var.iter().map(|&j| (j, 1.0)).collect(),
        op: RowOp::Eq,
        rhs: 1.0,
    });

    // Witness availability per element: sum of its columns covers y_e.
    let mut cover_row = vec![usize::MAX; n];
    for (i, &e) in coverable.iter().enumerate() {
        let mut coeffs: Vec<(usize, f64)> = pool
            .iter()
            .enumerate()
            .filter(|(_, c)| c.element == e)
            .map(|(k, _)| (l_var[k], 1.0))
            .collect();
        coeffs.push((y_var[i], -1.0));
        cover_row[e] = rows.len();
        rows.push(LpRow { coeffs, op: RowOp::Ge, rhs: 0.0 });
    }

    // Link rows: a set's variable dominates the witness mass using it,
    // separately per element.
    let mut link_row: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &e in coverable {
        for &s in inst.sets_containing(e) {
            let mut coeffs: Vec<(usize, f64)> = vec![(s, 1.0)];
            for (k, c) in pool.iter().enumerate() {
                if c.element == e && c.sets.binary_search(&s).is_ok() {
                    coeffs.push((l_var[k], -1.0));
                }
            }
            link_row[e].push((s, rows.len()));
            rows.push(LpRow { coeffs, op: RowOp::Ge, rhs: 0.0 });
        }
    }

    let problem = LpProblem { num_vars, objective, rows };
    let solution =
        simplex::solve(&problem).map_err(|e| map_lp_error(e, "cover-set relaxation"))?;

    let mut y = vec![0.0; n];
    for (i, &e) in coverable.iter().enumerate() {
        y[e] = solution.values[y_var[i]];
    }
    let column_values: Vec<f64> = l_var.iter().map(|&j| solution.values[j]).collect();

    let clamp = |v: f64| if v.abs() < FEAS_TOL { 0.0 } else { v };
    let mut element_price = vec![0.0; n];
    for &e in coverable {
        element_price[e] = clamp(solution.duals[cover_row[e]]).max(0.0);
    }
    let link: Vec<Vec<(usize, f64)>> = (0..n)
        .map(|e| {
            link_row[e]
                .iter()
                .map(|&(s, r)| (s, clamp(solution.duals[r]).max(0.0)))
                .collect()
        })
        .collect();

    Ok((
        FractionalSolution {
            x: solution.values[..m].to_vec(),
            y,
            columns: pool.to_vec(),
            column_values,
            objective: solution.objective,
        },
        DualValues {
            normalization: solution.duals[0],
            element_price,
            link,
        },
    ))
}
