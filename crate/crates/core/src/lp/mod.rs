//! Exact linear programming and the fractional graph numbers built on it.

mod fractional;
mod simplex;

pub use fractional::{
    alpha_star, alpha_star_all_cliques, closed_neighborhood_point, covering_lp, fractional_numbers,
    independence_lp, k_star, packing_lp, FractionalNumbers, LP_CLIQUE_LIMIT,
};
pub use simplex::{solve_lp, LinearProgram, LpSolution, Sense};
