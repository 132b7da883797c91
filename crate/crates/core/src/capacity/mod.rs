//! Capacity-region machinery: pentagons from product ensembles, named and
//! time-sharing regions, convex hulls, the unassisted upper-bound
//! expression, and the multistart rate-sum optimizer.

mod optimize;
mod region;
mod scenario;

pub use optimize::{optimize_rate_sum, OptimizeOutcome};
pub use region::{
    convex_hull_union, named_region, time_sharing_region, NamedRegion, RateRegion,
    TimeSharingParams,
};
pub use scenario::{
    euler_unitary, pentagon, scenario_ensemble, scenario_signal, unassisted_upper_expr,
    BlochEnsembleParams, EncodingLabel, EncodingMode, Scenario, ScenarioKind, WeightedActions,
};
