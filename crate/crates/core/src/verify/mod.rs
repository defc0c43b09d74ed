//! Mechanical checks of the algebra relations, the bracket identities, the
//! highest-weight property, reachability and singular vectors.

mod highest;
mod identity;
mod relations;
mod report;
mod scan;

pub use highest::{highest_weight, reachability};
pub use identity::{operator_agreement, sample_instances, IdentityInstance, IdentityOutcome, Which};
pub use relations::{
    cartan_relations, check_numeric, check_relation, check_relations, commuting_relations, residual,
    serre_relations, zero_pattern, Coef, Relation,
};
pub use report::{Failure, RelationReport, Status, MAX_WITNESSES};
pub use scan::{scan_singular, ScanReport, WeightSpaceScan};
