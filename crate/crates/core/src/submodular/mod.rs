//! Set-function oracles, marginal contributions and exhaustive property audits.

mod audit;
mod capped;
mod coverage;
mod instance;
mod oracle;
mod set;

pub use audit::{
    audit_properties, audit_properties_with_limit, AuditReport, AuditWitness, AUDIT_GROUND_LIMIT,
};
pub use capped::CappedSum;
pub use coverage::{TargetAssignment, TargetAssignmentSpec, WeightedCoverage, WeightedSetCoverSpec};
pub use instance::{parse_instance, ActionSets, Instance, InstanceFile, InstanceKind, Oracle};
pub use oracle::{evaluate, marginal, Tabulated, Valuation};
pub use set::ElementSet;
