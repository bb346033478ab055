//! Equal-rate bandwidth allocation.
//!
//! UEs sit on circles of equal load. The allocation maximizes the common rate
//! `R` such that every circle receives `R` bit/s/Hz, each level stays within
//! its bandwidth cap and the caps together cover the whole band:
//!
//! ```text
//! max R  s.t.  Σ_n η[n][i]·x[n][i] = R   for every circle i
//!              Σ_i x[n][i] <= cap_n      for every level n
//!              x >= 0
//! ```
//!
//! The equality is relaxed to `R <= Σ_n η·x` for the simplex (so the origin
//! is a feasible start) and restored afterwards by scaling down any circle
//! that received surplus rate; scaling down never breaks a cap.

use std::collections::BTreeMap;

use super::simplex;
use super::{AllocationResult, EfficiencyMatrix};
use crate::error::{Error, Result};
use crate::schemes::{CoverageRule, Scheme};

const BINDING_TOLERANCE: f64 = 1e-9;

/// One way of solving the equal-rate problem.
pub trait EqualRateSolver: Send + Sync {
    fn name(&self) -> &'static str;

    fn solve(&self, scheme: &Scheme, eff: &EfficiencyMatrix) -> Result<AllocationResult>;
}

/// Every level may serve every circle; banding emerges from optimality.
#[derive(Debug, Clone, Copy, Default)]
pub struct DenseSimplex;

impl EqualRateSolver for DenseSimplex {
    fn name(&self) -> &'static str {
        "simplex"
    }

    fn solve(&self, scheme: &Scheme, eff: &EfficiencyMatrix) -> Result<AllocationResult> {
        solve_masked(&scheme.caps(), eff, |_, _| true)
    }
}

/// Like [`DenseSimplex`], but a level only serves circles inside its
/// coverage radius.
#[derive(Debug, Clone, Copy, Default)]
pub struct CoverageConstrainedSimplex {
    pub rule: CoverageRule,
}

impl EqualRateSolver for CoverageConstrainedSimplex {
    fn name(&self) -> &'static str {
        "simplex-coverage"
    }

    fn solve(&self, scheme: &Scheme, eff: &EfficiencyMatrix) -> Result<AllocationResult> {
        let reach: Vec<f64> = scheme
            .levels()
            .iter()
            .map(|l| self.rule.beta_max(l.gain_db))
            .collect();
        solve_masked(&scheme.caps(), eff, |n, i| {
            eff.circles[i] <= reach[n] + 1e-12
        })
    }
}

/// Solvers by name.
pub struct SolverRegistry {
    solvers: BTreeMap<&'static str, Box<dyn EqualRateSolver>>,
}

impl SolverRegistry {
    /// `simplex` and `simplex-coverage` (using `rule`).
    pub fn with_builtins(rule: CoverageRule) -> Self {
        let mut r = Self {
            solvers: BTreeMap::new(),
        };
        r.register(Box::new(DenseSimplex));
        r.register(Box::new(CoverageConstrainedSimplex { rule }));
        r
    }

    pub fn register(&mut self, solver: Box<dyn EqualRateSolver>) {
        self.solvers.insert(solver.name(), solver);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.solvers.keys().copied().collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn EqualRateSolver> {
        self.solvers
            .get(name)
            .map(|s| s.as_ref())
            .ok_or_else(|| Error::UnknownSolver(name.to_string()))
    }
}

/// Equal-rate allocation with the default solver.
pub fn solve_equal_rate(scheme: &Scheme, eff: &EfficiencyMatrix) -> Result<AllocationResult> {
    DenseSimplex.solve(scheme, eff)
}

fn solve_masked(
    caps: &[f64],
    eff: &EfficiencyMatrix,
    allowed: impl Fn(usize, usize) -> bool,
) -> Result<AllocationResult> {
    let levels = caps.len();
    let circles = eff.circle_count();
    if eff.levels() != levels {
        return Err(Error::ShapeMismatch {
            rows: eff.levels(),
            cols: circles,
            levels,
        });
    }

    // column 0 is R; the rest are the usable (level, circle) cells
    let cells: Vec<(usize, usize)> = (0..levels)
        .flat_map(|n| (0..circles).map(move |i| (n, i)))
        .filter(|&(n, i)| allowed(n, i) && eff.eta[n][i] > 0.0)
        .collect();
    if let Some(i) = (0..circles).find(|&i| !cells.iter().any(|&(_, c)| c == i)) {
        return Err(Error::Infeasible(i));
    }

    let width = cells.len() + 1;
    let mut objective = vec![0.0; width];
    objective[0] = 1.0;
    let mut rows = Vec::with_capacity(circles + levels);
    let mut rhs = Vec::with_capacity(circles + levels);
    for i in 0..circles {
        let mut row = vec![0.0; width];
        row[0] = 1.0;
        for (k, &(n, c)) in cells.iter().enumerate() {
            if c == i {
                row[k + 1] = -eff.eta[n][c];
            }
        }
        rows.push(row);
        rhs.push(0.0);
    }
    for (n, &cap) in caps.iter().enumerate() {
        let mut row = vec![0.0; width];
        for (k, &(l, _)) in cells.iter().enumerate() {
            if l == n {
                row[k + 1] = 1.0;
            }
        }
        rows.push(row);
        rhs.push(cap);
    }

    let sol = simplex::maximize(&objective, &rows, &rhs)?;
    let mut x = vec![vec![0.0; circles]; levels];
    for (k, &(n, i)) in cells.iter().enumerate() {
        x[n][i] = sol.x[k + 1];
    }

    let rates: Vec<f64> = (0..circles)
        .map(|i| (0..levels).map(|n| x[n][i] * eff.eta[n][i]).sum())
        .collect();
    let common_rate = rates.iter().copied().fold(f64::INFINITY, f64::min);
    for (i, &rate) in rates.iter().enumerate() {
        if rate > common_rate {
            let scale = common_rate / rate;
            for row in x.iter_mut() {
                row[i] *= scale;
            }
        }
    }

    let binding = x
        .iter()
        .zip(caps)
        .map(|(row, cap)| cap - row.iter().sum::<f64>() <= BINDING_TOLERANCE)
        .collect();
    Ok(AllocationResult {
        x,
        common_rate,
        overall_efficiency: circles as f64 * common_rate,
        binding,
    })
}
