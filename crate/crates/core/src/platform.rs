//! Platform (server + OS/CaaS) availability under active-active and
//! active-passive replication.
//!
//! States are labeled `a^b` where `a` counts functional replicas and `b`
//! counts replicas in a temporary (OS/CaaS) failure; the remaining
//! `c = n_h - a - b` replicas are in a permanent (hardware) failure.
//! Active-passive adds failover states `a_o^b` / `a_h^b` entered when the
//! serving replica fails while a functional standby exists; they are pure
//! delay states whose only exit is the failover completion.
//!
//! Transition structure, per state `a^b`:
//!
//! * temporary failure of a functional replica: `a^b -> (a-1)^(b+1)`,
//!   rate `a * lambda_o` active-active; active-passive splits this into
//!   `max(a-1, 1) * lambda_o` for standbys (or the last serving replica,
//!   which drops straight to outage) plus a `lambda_o` failover edge when
//!   a standby is available,
//! * permanent failure of a functional replica: `a^b -> (a-1)^b`, rate
//!   `a * lambda_h` active-active, with the same split in active-passive,
//! * temporary repair: `a^b -> (a+1)^(b-1)`, rate `b * mu_o`,
//! * permanent failure of a temporarily failed replica:
//!   `a^b -> a^(b-1)`, rate `b * lambda_h`,
//! * hardware repair, one site visit fixing every dead server at once:
//!   `a^b -> (n_h - b)^b`, rate `mu_h`, whenever `a + b < n_h`.
//!
//! An OS failover completes into the temporarily-failed pool
//! (`a_o^b -> (a-1)^(b+1)`), a hardware failover into the permanently
//! failed pool (`a_h^b -> (a-1)^b`); either way the platform is in outage
//! for the duration of the failover.

use std::fmt;

use crate::ctmc::{build_generator, solve_direct, CtmcModel, StationaryDistribution, Transition};
use crate::error::Error;
use crate::params::{Mode, RateParams};

/// Which replica pool a state's pending failover came from, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateKind {
    Normal,
    /// Serving replica hit a temporary failure; failover in progress.
    FailoverTemp,
    /// Serving replica hit a permanent failure; failover in progress.
    FailoverPerm,
}

/// One platform state `a^b`, `a_o^b`, or `a_h^b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PlatformState {
    pub functional: u32,
    pub temp_failed: u32,
    pub kind: StateKind,
}

impl PlatformState {
    fn normal(functional: u32, temp_failed: u32) -> PlatformState {
        PlatformState {
            functional,
            temp_failed,
            kind: StateKind::Normal,
        }
    }

    /// Replicas waiting on a hardware repair.
    pub fn permanently_failed(&self, platform_replicas: u32) -> u32 {
        platform_replicas - self.functional - self.temp_failed
    }

    pub fn label(&self) -> String {
        match self.kind {
            StateKind::Normal => format!("{}^{}", self.functional, self.temp_failed),
            StateKind::FailoverTemp => format!("{}_o^{}", self.functional, self.temp_failed),
            StateKind::FailoverPerm => format!("{}_h^{}", self.functional, self.temp_failed),
        }
    }
}

impl fmt::Display for PlatformState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Sensitivity variants of the active-passive chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModelVariant {
    /// Temporarily failed replicas remain exposed to hardware failures.
    #[default]
    Full,
    /// Drops that exposure: replicas in OS repair cannot die permanently.
    /// Differs from [`ModelVariant::Full`] only in third-order terms over
    /// realistic parameter ranges.
    DropTempHwFailure,
}

impl ModelVariant {
    /// CLI token for the non-default variant.
    pub const DROP_TEMP_HW_TOKEN: &'static str = "drop-eq5";
}

/// All normal states for `n_h` replicas: `a + b <= n_h`, ordered by
/// descending functional count.
pub fn active_active_states(platform_replicas: u32) -> Vec<PlatformState> {
    let mut states = Vec::new();
    for functional in (0..=platform_replicas).rev() {
        for temp_failed in 0..=(platform_replicas - functional) {
            states.push(PlatformState::normal(functional, temp_failed));
        }
    }
    states
}

/// Normal states plus both failover kinds for every state with a standby
/// (`a >= 2`).
pub fn active_passive_states(platform_replicas: u32) -> Vec<PlatformState> {
    let mut states = active_active_states(platform_replicas);
    for functional in (2..=platform_replicas).rev() {
        for temp_failed in 0..=(platform_replicas - functional) {
            states.push(PlatformState {
                functional,
                temp_failed,
                kind: StateKind::FailoverTemp,
            });
            states.push(PlatformState {
                functional,
                temp_failed,
                kind: StateKind::FailoverPerm,
            });
        }
    }
    states
}

fn shared_transitions(
    out: &mut Vec<Transition>,
    state: PlatformState,
    params: &RateParams,
    platform_replicas: u32,
    variant: ModelVariant,
) {
    let (a, b) = (state.functional, state.temp_failed);
    let from = state.label();
    if b >= 1 {
        // temporary repair of one replica
        out.push(Transition::new(
            from.clone(),
            PlatformState::normal(a + 1, b - 1).label(),
            f64::from(b) * params.os_repair_rate(),
        ));
        if variant == ModelVariant::Full {
            // hardware failure of a temporarily failed replica
            out.push(Transition::new(
                from.clone(),
                PlatformState::normal(a, b - 1).label(),
                f64::from(b) * params.hw_failure_rate(),
            ));
        }
    }
    if a + b < platform_replicas {
        // one dispatched crew repairs every dead server
        out.push(Transition::new(
            from,
            PlatformState::normal(platform_replicas - b, b).label(),
            params.hw_repair_rate(),
        ));
    }
}

/// Active-active platform chain over `active_active_states`.
pub fn build_active_active(
    params: &RateParams,
    platform_replicas: u32,
) -> Result<CtmcModel, Error> {
    params.validate()?;
    if platform_replicas == 0 {
        return Err(Error::validation(
            "n_h",
            "replication factor must be at least 1",
        ));
    }
    let states = active_active_states(platform_replicas);
    let mut transitions = Vec::new();
    for &state in &states {
        let (a, b) = (state.functional, state.temp_failed);
        let from = state.label();
        if a >= 1 {
            transitions.push(Transition::new(
                from.clone(),
                PlatformState::normal(a - 1, b + 1).label(),
                f64::from(a) * params.os_failure_rate(),
            ));
            transitions.push(Transition::new(
                from.clone(),
                PlatformState::normal(a - 1, b).label(),
                f64::from(a) * params.hw_failure_rate(),
            ));
        }
        shared_transitions(
            &mut transitions,
            state,
            params,
            platform_replicas,
            ModelVariant::Full,
        );
    }
    build_generator(
        states.iter().map(PlatformState::label).collect(),
        &transitions,
    )
}

/// Active-passive platform chain over `active_passive_states`.
pub fn build_active_passive(
    params: &RateParams,
    platform_replicas: u32,
    variant: ModelVariant,
) -> Result<CtmcModel, Error> {
    params.validate()?;
    if platform_replicas == 0 {
        return Err(Error::validation(
            "n_h",
            "replication factor must be at least 1",
        ));
    }
    let states = active_passive_states(platform_replicas);
    let mut transitions = Vec::new();
    for &state in &states {
        let (a, b) = (state.functional, state.temp_failed);
        let from = state.label();
        match state.kind {
            StateKind::Normal => {
                if a >= 1 {
                    // standby failures; when only the serving replica is
                    // left there is nothing to fail over to, so its
                    // failure drops the platform straight to outage
                    let standby_scale = f64::from((a - 1).max(1));
                    transitions.push(Transition::new(
                        from.clone(),
                        PlatformState::normal(a - 1, b + 1).label(),
                        standby_scale * params.os_failure_rate(),
                    ));
                    transitions.push(Transition::new(
                        from.clone(),
                        PlatformState::normal(a - 1, b).label(),
                        standby_scale * params.hw_failure_rate(),
                    ));
                }
                if a >= 2 {
                    // serving-replica failures start a failover
                    transitions.push(Transition::new(
                        from.clone(),
                        PlatformState {
                            kind: StateKind::FailoverTemp,
                            ..state
                        }
                        .label(),
                        params.os_failure_rate(),
                    ));
                    transitions.push(Transition::new(
                        from.clone(),
                        PlatformState {
                            kind: StateKind::FailoverPerm,
                            ..state
                        }
                        .label(),
                        params.hw_failure_rate(),
                    ));
                }
                shared_transitions(&mut transitions, state, params, platform_replicas, variant);
            }
            StateKind::FailoverTemp => {
                // completion parks the failed replica in OS repair
                transitions.push(Transition::new(
                    from,
                    PlatformState::normal(a - 1, b + 1).label(),
                    params.os_failover_rate(),
                ));
            }
            StateKind::FailoverPerm => {
                // completion parks the failed replica in hardware repair
                transitions.push(Transition::new(
                    from,
                    PlatformState::normal(a - 1, b).label(),
                    params.hw_failover_rate(),
                ));
            }
        }
    }
    build_generator(
        states.iter().map(PlatformState::label).collect(),
        &transitions,
    )
}

/// Platform availability together with the solved chain.
#[derive(Debug, Clone)]
pub struct PlatformResult {
    pub mode: Mode,
    pub platform_replicas: u32,
    pub availability: f64,
    pub outage_probability: f64,
    pub state_count: usize,
    pub stationary: StationaryDistribution,
}

/// Builds, solves, and aggregates outage states: every state with no
/// functional replica, plus (active-passive) every failover state.
pub fn platform_availability(
    params: &RateParams,
    platform_replicas: u32,
    mode: Mode,
    variant: ModelVariant,
) -> Result<PlatformResult, Error> {
    let (model, states) = match mode {
        Mode::ActiveActive => (
            build_active_active(params, platform_replicas)?,
            active_active_states(platform_replicas),
        ),
        Mode::ActivePassive => (
            build_active_passive(params, platform_replicas, variant)?,
            active_passive_states(platform_replicas),
        ),
    };
    let stationary = solve_direct(&model)?;
    let mut outage = 0.0;
    for (i, state) in states.iter().enumerate() {
        debug_assert_eq!(model.states()[i], state.label());
        if state.functional == 0 || state.kind != StateKind::Normal {
            outage += stationary.probability(i);
        }
    }
    Ok(PlatformResult {
        mode,
        platform_replicas,
        availability: 1.0 - outage,
        outage_probability: outage,
        state_count: model.len(),
        stationary,
    })
}
