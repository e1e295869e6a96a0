//! Edge-budget-optimal information graphs.

mod optimal;
mod turan;

pub use optimal::{
    curve_to_csv, efficiency_curve, optimal_structure, parse_curve_csv, CurvePoint, DesignCase,
    DesignResult, CURVE_HEADER,
};
pub use turan::{
    complement_turan, edge_count_m, min_edges_no_sibling, t_hat, NoSiblingWitness, TuranDesign,
};
