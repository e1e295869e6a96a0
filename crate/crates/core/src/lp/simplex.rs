//! Dense two-phase simplex over exact rationals with Bland's pivoting rule.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    /// `max cᵀx  s.t.  Ax ≤ b, x ≥ 0`
    Maximize,
    /// `min cᵀx  s.t.  Ax ≥ b, x ≥ 0`
    Minimize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram {
    pub objective: Vec<BigRational>,
    pub matrix: Vec<Vec<BigRational>>,
    pub rhs: Vec<BigRational>,
    pub sense: Sense,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub optimum: BigRational,
    pub point: Vec<BigRational>,
    /// Optimal point of the dual program; `bᵀy` equals `optimum`.
    pub dual: Vec<BigRational>,
    /// Final basis as column indices (structural columns first, then one slack per row).
    pub basis: Vec<usize>,
    pub pivots: usize,
}

fn small(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl LinearProgram {
    /// Convenience constructor from 0/1 or small integer data.
    pub fn from_integers(objective: &[i64], matrix: &[Vec<i64>], rhs: &[i64], sense: Sense) -> Self {
        LinearProgram {
            objective: objective.iter().map(|&v| small(v)).collect(),
            matrix: matrix
                .iter()
                .map(|row| row.iter().map(|&v| small(v)).collect())
                .collect(),
            rhs: rhs.iter().map(|&v| small(v)).collect(),
            sense,
        }
    }

    pub fn n_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn n_rows(&self) -> usize {
        self.matrix.len()
    }

    fn check_shape(&self) -> Result<()> {
        if self.rhs.len() != self.matrix.len() {
            return Err(Error::input(format!(
                "{} constraint rows but {} right-hand sides",
                self.matrix.len(),
                self.rhs.len()
            )));
        }
        if let Some(r) = self.matrix.iter().position(|row| row.len() != self.n_vars()) {
            return Err(Error::input(format!(
                "constraint row {r} has {} entries, expected {}",
                self.matrix[r].len(),
                self.n_vars()
            )));
        }
        Ok(())
    }

    /// The dual program, built explicitly: `max cᵀx, Ax ≤ b` becomes `min bᵀy, Aᵀy ≥ c`
    /// and vice versa.
    pub fn dual(&self) -> LinearProgram {
        let transposed = (0..self.n_vars())
            .map(|j| self.matrix.iter().map(|row| row[j].clone()).collect())
            .collect();
        LinearProgram {
            objective: self.rhs.clone(),
            matrix: transposed,
            rhs: self.objective.clone(),
            sense: match self.sense {
                Sense::Maximize => Sense::Minimize,
                Sense::Minimize => Sense::Maximize,
            },
        }
    }

    pub fn objective_value(&self, x: &[BigRational]) -> BigRational {
        dot(&self.objective, x)
    }

    pub fn is_feasible(&self, x: &[BigRational]) -> bool {
        x.len() == self.n_vars()
            && x.iter().all(|v| !v.is_negative())
            && self.matrix.iter().zip(&self.rhs).all(|(row, b)| {
                let lhs = dot(row, x);
                match self.sense {
                    Sense::Maximize => lhs <= *b,
                    Sense::Minimize => lhs >= *b,
                }
            })
    }
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

impl fmt::Display for LinearProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (head, rel) = match self.sense {
            Sense::Maximize => ("max", "<="),
            Sense::Minimize => ("min", ">="),
        };
        let join = |v: &[BigRational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        writeln!(f, "{head} | {}", join(&self.objective))?;
        for (row, b) in self.matrix.iter().zip(&self.rhs) {
            writeln!(f, "     | {} {rel} {b}", join(row))?;
        }
        write!(f, "x >= 0")
    }
}

impl LpSolution {
    /// Re-checks primal feasibility, dual feasibility and equal objectives.
    pub fn verify(&self, lp: &LinearProgram) -> Result<()> {
        if !lp.is_feasible(&self.point) {
            return Err(Error::consistency("LP point is not primal feasible"));
        }
        let dual = lp.dual();
        if !dual.is_feasible(&self.dual) {
            return Err(Error::consistency("LP certificate is not dual feasible"));
        }
        let primal_value = lp.objective_value(&self.point);
        let dual_value = dual.objective_value(&self.dual);
        if primal_value != self.optimum || dual_value != self.optimum {
            return Err(Error::consistency(format!(
                "LP objectives disagree: primal {primal_value}, dual {dual_value}, reported {}",
                self.optimum
            )));
        }
        Ok(())
    }
}

const PIVOT_LIMIT: usize = 1_000_000;

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    reduced: Vec<BigRational>,
    width: usize,
    pivots: usize,
}

impl Tableau {
    fn rhs_col(&self) -> usize {
        self.width
    }

    fn set_costs(&mut self, costs: &[BigRational]) {
        let w = self.width;
        let mut reduced: Vec<BigRational> = costs.to_vec();
        reduced.push(BigRational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for j in 0..=w {
                reduced[j] -= cb * &row[j];
            }
        }
        self.reduced = reduced;
    }

    fn pivot(&mut self, p: usize, q: usize) {
        let piv = self.rows[p][q].clone();
        for v in self.rows[p].iter_mut() {
            *v /= &piv;
        }
        let prow = self.rows[p].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == p || row[q].is_zero() {
                continue;
            }
            let factor = row[q].clone();
            for (r, x) in row.iter_mut().zip(&prow) {
                if !x.is_zero() {
                    *r -= &factor * x;
                }
            }
        }
        let factor = self.reduced[q].clone();
        if !factor.is_zero() {
            for (r, x) in self.reduced.iter_mut().zip(&prow) {
                if !x.is_zero() {
                    *r -= &factor * x;
                }
            }
        }
        self.basis[p] = q;
        self.pivots += 1;
    }

    /// Maximizes the current cost row over columns allowed by `allowed`.
    fn optimize(&mut self, allowed: &dyn Fn(usize) -> bool) -> Result<()> {
        loop {
            if self.pivots > PIVOT_LIMIT {
                return Err(Error::consistency("simplex exceeded its pivot limit"));
            }
            let entering = (0..self.width).find(|&j| allowed(j) && self.reduced[j].is_positive());
            let Some(q) = entering else {
                return Ok(());
            };
            let rhs = self.rhs_col();
            let mut best: Option<(usize, BigRational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[q].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[q];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((p, _)) => self.pivot(p, q),
                None => return Err(Error::Unbounded),
            }
        }
    }
}

/// Solves `lp` exactly. Deterministic: the same program always yields the same
/// vertex and certificate.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution> {
    lp.check_shape()?;
    let n = lp.n_vars();
    let m = lp.n_rows();
    let slack_sign = match lp.sense {
        Sense::Maximize => BigRational::one(),
        Sense::Minimize => -BigRational::one(),
    };

    // Columns: structural 0..n, slack n..n+m, artificials after that.
    let mut row_scale = Vec::with_capacity(m);
    let mut needs_artificial = Vec::with_capacity(m);
    for b in &lp.rhs {
        let scale = if b.is_negative() { -BigRational::one() } else { BigRational::one() };
        needs_artificial.push((&slack_sign * &scale).is_negative());
        row_scale.push(scale);
    }
    let artificial_count = needs_artificial.iter().filter(|&&a| a).count();
    let width = n + m + artificial_count;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut initial_basic = Vec::with_capacity(m);
    let mut next_artificial = n + m;
    for i in 0..m {
        let scale = &row_scale[i];
        let mut row = vec![BigRational::zero(); width + 1];
        for (r, a) in row.iter_mut().zip(&lp.matrix[i]) {
            *r = a * scale;
        }
        row[n + i] = &slack_sign * scale;
        row[width] = &lp.rhs[i] * scale;
        if needs_artificial[i] {
            row[next_artificial] = BigRational::one();
            basis.push(next_artificial);
            next_artificial += 1;
        } else {
            basis.push(n + i);
        }
        initial_basic.push(*basis.last().unwrap());
        rows.push(row);
    }

    let mut tab = Tableau {
        rows,
        basis,
        reduced: Vec::new(),
        width,
        pivots: 0,
    };

    if artificial_count > 0 {
        let mut phase1 = vec![BigRational::zero(); width];
        for c in phase1.iter_mut().skip(n + m) {
            *c = -BigRational::one();
        }
        tab.set_costs(&phase1);
        tab.optimize(&|_| true)?;
        if !tab.reduced[width].is_zero() {
            return Err(Error::Infeasible);
        }
        // Drive zero-level artificials out of the basis where possible; rows
        // left with an artificial are redundant and never pivot again.
        for p in 0..m {
            if tab.basis[p] < n + m {
                continue;
            }
            if let Some(q) = (0..n + m).find(|&j| !tab.rows[p][j].is_zero()) {
                tab.pivot(p, q);
            }
        }
    }

    let mut costs = vec![BigRational::zero(); width];
    for (j, c) in lp.objective.iter().enumerate() {
        costs[j] = match lp.sense {
            Sense::Maximize => c.clone(),
            Sense::Minimize => -c.clone(),
        };
    }
    tab.set_costs(&costs);
    tab.optimize(&|j| j < n + m)?;

    let mut point = vec![BigRational::zero(); n];
    for (row, &b) in tab.rows.iter().zip(&tab.basis) {
        if b < n {
            point[b] = row[width].clone();
        }
    }
    let optimum = lp.objective_value(&point);

    // Multipliers of the scaled rows are minus the reduced costs of the
    // initially basic columns; undo the row scaling and the min→max flip.
    let dual = (0..m)
        .map(|i| {
            let y = -&tab.reduced[initial_basic[i]] * &row_scale[i];
            match lp.sense {
                Sense::Maximize => y,
                Sense::Minimize => -y,
            }
        })
        .collect();

    let solution = LpSolution {
        optimum,
        point,
        dual,
        basis: tab.basis.clone(),
        pivots: tab.pivots,
    };
    solution.verify(lp)?;
    Ok(solution)
}
