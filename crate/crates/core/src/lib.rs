//! Availability models for virtualized, disaggregated RAN deployments.
//!
//! The crate models a deployment as three layers and composes them:
//!
//! * [`app`] — CU/DU application instances with independent failure and
//!   repair (closed-form binomial availability),
//! * [`platform`] — servers plus their OS/CaaS stack, replicated
//!   active-active or active-passive, solved as finite CTMCs,
//! * [`cluster`] — the product composition of the two layers,
//! * [`network`] — centralized versus distributed CU placement across
//!   many cell sites.
//!
//! [`ctmc`] holds the chain representation and two independent
//! stationary solvers; [`sim`] is a replica-level Monte Carlo
//! cross-check that shares no solver code with the analytic path.

pub mod app;
pub mod cluster;
pub mod ctmc;
pub mod error;
pub mod network;
pub mod params;
pub mod platform;
pub mod sim;
pub mod units;

pub use app::{app_availability, app_model_as_ctmc, app_single_availability, AppAvailability};
pub use cluster::{cluster_availability, ClusterReport};
pub use ctmc::{
    build_generator, solve_direct, solve_embedded_dtmc, CtmcModel, StationaryDistribution,
    Transition,
};
pub use error::Error;
pub use network::{
    cell_outage, expected_unavailable, pmf_centralized, pmf_distributed, NetworkScenario,
    OutagePmf, Placement,
};
pub use params::{Mode, RateParams, ReplicationSpec};
pub use platform::{
    build_active_active, build_active_passive, platform_availability, ModelVariant, PlatformResult,
    PlatformState, StateKind,
};
pub use sim::{simulate_cluster, simulate_platform, SimConfig, SimResult};
pub use units::{afr_to_mttf, mttf_to_afr, nines, Duration, TimeUnit};
