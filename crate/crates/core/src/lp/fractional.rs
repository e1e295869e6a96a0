use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{all_cliques, maximal_cliques, InfoGraph, CLIQUE_ROW_LIMIT};
use crate::rational::{self, Rational};

use super::{solve_lp, LinearProgram, Sense};

/// Largest number of maximal cliques accepted as LP rows.
pub const LP_CLIQUE_LIMIT: usize = 4096;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FractionalNumbers {
    #[serde(with = "rational::as_string")]
    pub alpha_star: Rational,
    #[serde(with = "rational::as_string")]
    pub k_star: Rational,
    /// Optimal vertex `z` of the packing LP, one entry per agent.
    #[serde(with = "rational::vec_as_string")]
    pub independence_point: Vec<Rational>,
    /// Optimal `y` of the covering LP, one entry per maximal clique.
    #[serde(with = "rational::vec_as_string")]
    pub cover_weights: Vec<Rational>,
    pub cliques: Vec<Vec<usize>>,
}

fn one() -> BigRational {
    BigRational::one()
}

/// `max 1ᵀz  s.t.  Σ_{v ∈ row} z_v ≤ 1` for each row, `z ≥ 0`.
pub fn packing_lp(n: usize, rows: &[Vec<usize>]) -> LinearProgram {
    let matrix = rows
        .iter()
        .map(|row| {
            let mut r = vec![BigRational::zero(); n];
            for &v in row {
                r[v] = one();
            }
            r
        })
        .collect();
    LinearProgram {
        objective: vec![one(); n],
        matrix,
        rhs: vec![one(); rows.len()],
        sense: Sense::Maximize,
    }
}

/// `min 1ᵀy  s.t.  Σ_{row ∋ v} y_row ≥ 1` for each vertex, `y ≥ 0`.
pub fn covering_lp(n: usize, rows: &[Vec<usize>]) -> LinearProgram {
    let matrix = (0..n)
        .map(|v| {
            rows.iter()
                .map(|row| if row.contains(&v) { one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    LinearProgram {
        objective: vec![one(); rows.len()],
        matrix,
        rhs: vec![one(); n],
        sense: Sense::Minimize,
    }
}

fn lp_cliques(g: &InfoGraph) -> Result<Vec<Vec<usize>>> {
    let cliques = maximal_cliques(g);
    if cliques.len() > LP_CLIQUE_LIMIT {
        return Err(Error::guard(
            "fractional LP over maximal cliques",
            LP_CLIQUE_LIMIT as u64,
            cliques.len() as u64,
        ));
    }
    Ok(cliques)
}

pub fn independence_lp(g: &InfoGraph) -> Result<LinearProgram> {
    Ok(packing_lp(g.n(), &lp_cliques(g)?))
}

fn small_vec(values: &[BigRational]) -> Result<Vec<Rational>> {
    values.iter().map(rational::from_big).collect()
}

/// Solves the packing LP and, separately, its explicitly built covering dual,
/// and insists the two optima agree.
pub fn fractional_numbers(g: &InfoGraph) -> Result<FractionalNumbers> {
    let cliques = lp_cliques(g)?;
    let packing = solve_lp(&packing_lp(g.n(), &cliques))?;
    let covering = solve_lp(&covering_lp(g.n(), &cliques))?;
    if packing.optimum != covering.optimum {
        return Err(Error::consistency(format!(
            "fractional independence {} differs from fractional clique cover {}",
            packing.optimum, covering.optimum
        )));
    }
    Ok(FractionalNumbers {
        alpha_star: rational::from_big(&packing.optimum)?,
        k_star: rational::from_big(&covering.optimum)?,
        independence_point: small_vec(&packing.point)?,
        cover_weights: small_vec(&covering.point)?,
        cliques,
    })
}

/// Fractional independence number α*(G).
pub fn alpha_star(g: &InfoGraph) -> Result<Rational> {
    let sol = solve_lp(&independence_lp(g)?)?;
    rational::from_big(&sol.optimum)
}

/// Fractional clique cover number k*(G), from the covering LP.
pub fn k_star(g: &InfoGraph) -> Result<Rational> {
    let cliques = lp_cliques(g)?;
    let sol = solve_lp(&covering_lp(g.n(), &cliques))?;
    let k = rational::from_big(&sol.optimum)?;
    let a = alpha_star(g)?;
    if a != k {
        return Err(Error::consistency(format!(
            "fractional independence {} differs from fractional clique cover {}",
            rational::format(&a),
            rational::format(&k)
        )));
    }
    Ok(k)
}

/// α* computed with one row per clique (the full matrix `W`), for small graphs.
pub fn alpha_star_all_cliques(g: &InfoGraph) -> Result<Rational> {
    let rows = all_cliques(g, CLIQUE_ROW_LIMIT)?;
    let sol = solve_lp(&packing_lp(g.n(), &rows))?;
    rational::from_big(&sol.optimum)
}

/// An optimal packing point that additionally keeps every closed
/// in-neighbourhood `N_i ∪ {i}` at total weight at most one, if such a point
/// still reaches α*. `None` when the extra rows lower the optimum.
pub fn closed_neighborhood_point(g: &InfoGraph) -> Result<Option<Vec<Rational>>> {
    let mut rows = lp_cliques(g)?;
    for i in 0..g.n() {
        let mut row = g.in_neighbors(i);
        row.push(i);
        rows.push(row);
    }
    let target = rational::to_big(&alpha_star(g)?);
    let sol = solve_lp(&packing_lp(g.n(), &rows))?;
    if sol.optimum == target {
        Ok(Some(small_vec(&sol.point)?))
    } else {
        Ok(None)
    }
}
