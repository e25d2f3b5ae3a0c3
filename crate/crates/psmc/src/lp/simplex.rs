//! Dense two-phase revised simplex with Bland's rule.
//!
//! Sized for the small restricted masters produced by column generation:
//! determinism and dual extraction matter more than speed. The basis
//! inverse is kept explicitly and updated on every pivot.

// Dense linear algebra reads better with explicit row indices.
#![allow(clippy::needless_range_loop)]

use std::fmt;

const ENTER_TOL: f64 = 1e-9;
const PIVOT_TOL: f64 = 1e-9;
const FEAS_TOL: f64 = 1e-7;
const MAX_PIVOTS: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowOp {
    Eq,
    Ge,
    Le,
}

#[derive(Clone, Debug)]
pub struct LpRow {
    pub coeffs: Vec<(usize, f64)>,
    pub op: RowOp,
    pub rhs: f64,
}

#[derive(Clone, Debug)]
pub struct LpProblem {
    pub num_vars: usize,
    pub objective: Vec<f64>,
    pub rows: Vec<LpRow>,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub objective: f64,
    /// Values of the structural variables.
    pub values: Vec<f64>,
    /// One dual per input row, in input orientation.
    pub duals: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpError {
    Infeasible,
    Unbounded,
    Numerical(String),
}

impl fmt::Display for LpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LpError::Infeasible => write!(f, "linear program is infeasible"),
            LpError::Unbounded => write!(f, "linear program is unbounded"),
            LpError::Numerical(msg) => write!(f, "simplex failure: {msg}"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ColKind {
    Structural,
    Slack,
    Surplus,
    Artificial,
}

struct Tableau {
    cols: Vec<Vec<(usize, f64)>>,
    kinds: Vec<ColKind>,
    basis: Vec<usize>,
    in_basis: Vec<bool>,
    barred: Vec<bool>,
    b_inv: Vec<Vec<f64>>,
    x_b: Vec<f64>,
    num_rows: usize,
}

impl Tableau {
    fn column_in_basis_frame(&self, j: usize) -> Vec<f64> {
        let mut d = vec![0.0; self.num_rows];
        for &(i, v) in &self.cols[j] {
            for r in 0..self.num_rows {
                d[r] += self.b_inv[r][i] * v;
            }
        }
        d
    }

    fn duals(&self, costs: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.num_rows];
        for r in 0..self.num_rows {
            let c = costs[self.basis[r]];
            if c != 0.0 {
                for i in 0..self.num_rows {
                    y[i] += c * self.b_inv[r][i];
                }
            }
        }
        y
    }

    fn reduced_cost(&self, j: usize, y: &[f64], costs: &[f64]) -> f64 {
        let mut rc = costs[j];
        for &(i, v) in &self.cols[j] {
            rc -= y[i] * v;
        }
        rc
    }

    fn pivot(&mut self, leave_row: usize, enter: usize, d: &[f64]) {
        let pivot = d[leave_row];
        let theta = self.x_b[leave_row] / pivot;
        for r in 0..self.num_rows {
            if r != leave_row {
                self.x_b[r] -= theta * d[r];
            }
        }
        self.x_b[leave_row] = theta;

        let inv_pivot = 1.0 / pivot;
        for i in 0..self.num_rows {
            self.b_inv[leave_row][i] *= inv_pivot;
        }
        for r in 0..self.num_rows {
            if r == leave_row || d[r] == 0.0 {
                continue;
            }
            let factor = d[r];
            for i in 0..self.num_rows {
                self.b_inv[r][i] -= factor * self.b_inv[leave_row][i];
            }
        }

        self.in_basis[self.basis[leave_row]] = false;
        self.basis[leave_row] = enter;
        self.in_basis[enter] = true;
    }

    /// Bland iterations until optimal for `costs`. Returns `Unbounded` if
    /// a ray is found.
    fn optimize(&mut self, costs: &[f64], pivots_left: &mut usize) -> Result<(), LpError> {
        loop {
            if *pivots_left == 0 {
                return Err(LpError::Numerical("pivot cap reached".into()));
            }
            let y = self.duals(costs);
            let mut entering = None;
            for j in 0..self.cols.len() {
                if self.in_basis[j] || self.barred[j] {
                    continue;
                }
                if self.reduced_cost(j, &y, costs) < -ENTER_TOL {
                    entering = Some(j);
                    break;
                }
            }
            let Some(enter) = entering else {
                return Ok(());
            };
            let d = self.column_in_basis_frame(enter);
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.num_rows {
                if d[r] <= PIVOT_TOL {
                    continue;
                }
                let ratio = self.x_b[r] / d[r];
                let replace = match leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < lratio - PIVOT_TOL
                            || (ratio <= lratio + PIVOT_TOL && self.basis[r] < self.basis[lr])
                    }
                };
                if replace {
                    leave = Some((r, ratio));
                }
            }
            let Some((leave_row, _)) = leave else {
                return Err(LpError::Unbounded);
            };
            self.pivot(leave_row, enter, &d);
            *pivots_left -= 1;
        }
    }
}

/// Solves `min objective . x` subject to the rows, all variables
/// nonnegative.
pub fn solve(problem: &LpProblem) -> Result<LpSolution, LpError> {
    let num_rows = problem.rows.len();
    let num_structural = problem.num_vars;

    // Normalize every row to a nonnegative right-hand side.
    let mut signs = vec![1.0; num_rows];
    let mut rows: Vec<LpRow> = problem.rows.clone();
    for (r, row) in rows.iter_mut().enumerate() {
        for &(j, _) in &row.coeffs {
            assert!(j < num_structural, "row references variable {j} out of range");
        }
        if row.rhs < 0.0 {
            signs[r] = -1.0;
            row.rhs = -row.rhs;
            for c in &mut row.coeffs {
                c.1 = -c.1;
            }
            row.op = match row.op {
                RowOp::Ge => RowOp::Le,
                RowOp::Le => RowOp::Ge,
                RowOp::Eq => RowOp::Eq,
            };
        }
    }

    let mut cols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); num_structural];
    let mut kinds = vec![ColKind::Structural; num_structural];
    for (r, row) in rows.iter().enumerate() {
        for &(j, v) in &row.coeffs {
            if v != 0.0 {
                cols[j].push((r, v));
            }
        }
    }

    let mut basis = vec![usize::MAX; num_rows];
    let mut b_inv_diag = vec![1.0; num_rows];
    let mut has_artificial = false;
    for (r, row) in rows.iter().enumerate() {
        match row.op {
            RowOp::Le => {
                cols.push(vec![(r, 1.0)]);
                kinds.push(ColKind::Slack);
                basis[r] = cols.len() - 1;
            }
            RowOp::Ge => {
                cols.push(vec![(r, -1.0)]);
                kinds.push(ColKind::Surplus);
                if row.rhs <= FEAS_TOL {
                    // Surplus starts basic at zero; its basis column is
                    // -e_r, so the inverse carries a -1 on the diagonal.
                    basis[r] = cols.len() - 1;
                    b_inv_diag[r] = -1.0;
                }
            }
            RowOp::Eq => {}
        }
    }
    for (r, row) in rows.iter().enumerate() {
        if basis[r] == usize::MAX {
            debug_assert!(matches!(row.op, RowOp::Eq | RowOp::Ge));
            cols.push(vec![(r, 1.0)]);
            kinds.push(ColKind::Artificial);
            basis[r] = cols.len() - 1;
            has_artificial = true;
        }
    }

    let num_cols = cols.len();
    let mut in_basis = vec![false; num_cols];
    for &j in &basis {
        in_basis[j] = true;
    }
    let mut b_inv = vec![vec![0.0; num_rows]; num_rows];
    let mut x_b = vec![0.0; num_rows];
    for r in 0..num_rows {
        b_inv[r][r] = b_inv_diag[r];
        x_b[r] = b_inv_diag[r] * rows[r].rhs;
        debug_assert!(x_b[r] >= -FEAS_TOL);
    }

    let mut tab = Tableau {
        cols,
        kinds,
        basis,
        in_basis,
        barred: vec![false; num_cols],
        b_inv,
        x_b,
        num_rows,
    };
    let mut pivots_left = MAX_PIVOTS;

    if has_artificial {
        let phase1: Vec<f64> = (0..num_cols)
            .map(|j| if tab.kinds[j] == ColKind::Artificial { 1.0 } else { 0.0 })
            .collect();
        match tab.optimize(&phase1, &mut pivots_left) {
            Ok(()) => {}
            Err(LpError::Unbounded) => {
                return Err(LpError::Numerical("phase one reported unbounded".into()));
            }
            Err(e) => return Err(e),
        }
        let infeasibility: f64 = (0..num_rows)
            .filter(|&r| tab.kinds[tab.basis[r]] == ColKind::Artificial)
            .map(|r| tab.x_b[r])
            .sum();
        let scale = 1.0 + rows.iter().map(|r| r.rhs.abs()).fold(0.0, f64::max);
        if infeasibility > FEAS_TOL * scale {
            return Err(LpError::Infeasible);
        }
        // Swap any artificial still in the basis (at value zero) for a
        // real column so phase two cannot disturb it.
        for r in 0..num_rows {
            if tab.kinds[tab.basis[r]] != ColKind::Artificial {
                continue;
            }
            let mut replaced = false;
            for j in 0..num_cols {
                if tab.in_basis[j] || tab.kinds[j] == ColKind::Artificial {
                    continue;
                }
                let d = tab.column_in_basis_frame(j);
                if d[r].abs() > PIVOT_TOL {
                    tab.x_b[r] = 0.0;
                    tab.pivot(r, j, &d);
                    replaced = true;
                    break;
                }
            }
            if !replaced {
                return Err(LpError::Numerical(
                    "artificial variable stuck in the basis".into(),
                ));
            }
        }
        for j in 0..num_cols {
            if tab.kinds[j] == ColKind::Artificial {
                tab.barred[j] = true;
            }
        }
    }

    let mut costs = vec![0.0; num_cols];
    costs[..num_structural].copy_from_slice(&problem.objective);
    tab.optimize(&costs, &mut pivots_left)?;

    let mut values = vec![0.0; num_structural];
    for r in 0..num_rows {
        let j = tab.basis[r];
        if j < num_structural {
            values[j] = tab.x_b[r].max(0.0);
        }
    }
    let y = tab.duals(&costs);
    let duals: Vec<f64> = (0..num_rows).map(|r| signs[r] * y[r]).collect();
    let objective = values
        .iter()
        .zip(&problem.objective)
        .map(|(v, c)| v * c)
        .sum();
    Ok(LpSolution { objective, values, duals })
}
