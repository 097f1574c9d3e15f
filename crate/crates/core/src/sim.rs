//! Replica-level Monte Carlo simulation, used to cross-validate the
//! analytic chains without touching any generator-matrix code.
//!
//! The simulator draws exponential clocks for physical events on
//! individual replicas: OS failures and repairs, hardware failures, one
//! site-wide hardware repair that restores every dead server, and (in
//! active-passive mode) a failover timer during which the platform is
//! counted as down and all other platform activity is suspended. All
//! competing clocks are resampled after every event, which the memoryless
//! property makes equivalent to keeping them running.
//!
//! Randomness comes from ChaCha12 (a counter-based stream cipher RNG)
//! seeded with `seed` via `seed_from_u64`, so a run is reproducible from
//! its config alone.

use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::Error;
use crate::params::{Mode, RateParams, ReplicationSpec};
use crate::units::Duration;

/// Expected-event threshold below which results carry the short-horizon
/// warning flag.
pub const MIN_EXPECTED_EVENTS: f64 = 100.0;

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub params: RateParams,
    pub replication: ReplicationSpec,
    pub horizon: Duration,
    pub seed: u64,
    pub batches: u32,
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), Error> {
        self.params.validate()?;
        if self.horizon.as_seconds() <= 0.0 {
            return Err(Error::validation("horizon", "must be strictly positive"));
        }
        if self.batches < 10 {
            return Err(Error::validation("batches", "need at least 10 batches"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    /// Fraction of simulated time the target (platform or cluster) was up.
    pub availability_estimate: f64,
    /// Batch-means standard error of the estimate.
    pub std_error: f64,
    /// Per-batch uptime fractions, one per time slice.
    pub batch_means: Vec<f64>,
    /// Events applied over the whole run.
    pub event_count: u64,
    /// OS failures observed (serving and standby replicas alike).
    pub os_failure_events: u64,
    /// Set when the horizon is expected to contain fewer than
    /// [`MIN_EXPECTED_EVENTS`] platform-layer events.
    pub short_horizon: bool,
}

/// Uptime fraction of the platform alone.
pub fn simulate_platform(cfg: &SimConfig) -> Result<SimResult, Error> {
    run(cfg, false)
}

/// Uptime fraction of the cluster: platform up and at least one
/// application replica up. Application replicas evolve independently of
/// the platform, mirroring the analytic composition.
pub fn simulate_cluster(cfg: &SimConfig) -> Result<SimResult, Error> {
    run(cfg, true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Replica {
    Functional,
    TempFailed,
    PermFailed,
}

#[derive(Debug, Clone, Copy)]
enum FailoverKind {
    Temp,
    Perm,
}

#[derive(Debug, Clone, Copy)]
enum Event {
    OsFail(usize),
    HwFail(usize),
    /// Hardware death of a replica already in OS repair.
    HwFailWhileTemp(usize),
    OsRepair(usize),
    SiteRepair,
    FailoverDone,
    AppFlip(usize),
}

struct Rng(ChaCha12Rng);

impl Rng {
    fn uniform(&mut self) -> f64 {
        // 53 random bits into [0, 1)
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn exponential(&mut self, rate: f64) -> f64 {
        -(1.0 - self.uniform()).ln() / rate
    }
}

fn run(cfg: &SimConfig, with_apps: bool) -> Result<SimResult, Error> {
    cfg.validate()?;
    let params = &cfg.params;
    let n_plat = cfg.replication.platform_replicas as usize;
    let n_apps = if with_apps {
        cfg.replication.effective_app_replicas() as usize
    } else {
        0
    };
    let active_passive = cfg.replication.mode == Mode::ActivePassive;
    let horizon = cfg.horizon.as_seconds();
    let batches = cfg.batches as usize;
    let slice = horizon / batches as f64;

    let lambda_o = params.os_failure_rate();
    let mu_o = params.os_repair_rate();
    let lambda_h = params.hw_failure_rate();
    let mu_h = params.hw_repair_rate();
    let lambda_s = params.app_failure_rate();
    let mu_s = params.app_repair_rate();

    let expected_events =
        horizon * (n_plat as f64 * (lambda_o + lambda_h) + n_apps as f64 * lambda_s);
    let short_horizon = expected_events < MIN_EXPECTED_EVENTS;

    let mut rng = Rng(ChaCha12Rng::seed_from_u64(cfg.seed));
    let mut plat = vec![Replica::Functional; n_plat];
    let mut active: Option<usize> = if active_passive { Some(0) } else { None };
    let mut failover: Option<(FailoverKind, usize)> = None;
    let mut apps = vec![true; n_apps];

    let mut uptime = vec![0.0f64; batches];
    let mut t = 0.0f64;
    let mut event_count = 0u64;
    let mut os_failure_events = 0u64;
    let mut choices: Vec<(f64, Event)> = Vec::new();

    while t < horizon {
        choices.clear();
        if let Some((kind, _)) = failover {
            let rate = match kind {
                FailoverKind::Temp => params.os_failover_rate(),
                FailoverKind::Perm => params.hw_failover_rate(),
            };
            choices.push((rate, Event::FailoverDone));
        } else {
            for (i, r) in plat.iter().enumerate() {
                match r {
                    Replica::Functional => {
                        choices.push((lambda_o, Event::OsFail(i)));
                        choices.push((lambda_h, Event::HwFail(i)));
                    }
                    Replica::TempFailed => {
                        choices.push((mu_o, Event::OsRepair(i)));
                        choices.push((lambda_h, Event::HwFailWhileTemp(i)));
                    }
                    Replica::PermFailed => {}
                }
            }
            if plat.contains(&Replica::PermFailed) {
                choices.push((mu_h, Event::SiteRepair));
            }
        }
        for (i, up) in apps.iter().enumerate() {
            choices.push((if *up { lambda_s } else { mu_s }, Event::AppFlip(i)));
        }

        let total: f64 = choices.iter().map(|(r, _)| r).sum();
        let t_next = if total > 0.0 {
            t + rng.exponential(total)
        } else {
            horizon
        };

        let platform_up = if active_passive {
            failover.is_none() && active.is_some()
        } else {
            plat.contains(&Replica::Functional)
        };
        let up = platform_up && (!with_apps || apps.iter().any(|a| *a));
        if up {
            credit_uptime(&mut uptime, slice, t, t_next.min(horizon));
        }

        t = t_next;
        if t >= horizon {
            break;
        }
        event_count += 1;

        // pick the event proportionally to its rate
        let mut pick = rng.uniform() * total;
        let mut chosen = choices[choices.len() - 1].1;
        for &(rate, event) in &choices {
            if pick < rate {
                chosen = event;
                break;
            }
            pick -= rate;
        }

        match chosen {
            Event::OsFail(i) => {
                os_failure_events += 1;
                if active_passive && active == Some(i) {
                    if plat
                        .iter()
                        .enumerate()
                        .any(|(j, r)| j != i && *r == Replica::Functional)
                    {
                        failover = Some((FailoverKind::Temp, i));
                    } else {
                        plat[i] = Replica::TempFailed;
                        active = None;
                    }
                } else {
                    plat[i] = Replica::TempFailed;
                }
            }
            Event::HwFail(i) => {
                if active_passive && active == Some(i) {
                    if plat
                        .iter()
                        .enumerate()
                        .any(|(j, r)| j != i && *r == Replica::Functional)
                    {
                        failover = Some((FailoverKind::Perm, i));
                    } else {
                        plat[i] = Replica::PermFailed;
                        active = None;
                    }
                } else {
                    plat[i] = Replica::PermFailed;
                }
            }
            Event::HwFailWhileTemp(i) => plat[i] = Replica::PermFailed,
            Event::OsRepair(i) => {
                plat[i] = Replica::Functional;
                if active_passive && active.is_none() {
                    // service resumes on the repaired replica at once
                    active = Some(i);
                }
            }
            Event::SiteRepair => {
                for r in plat.iter_mut() {
                    if *r == Replica::PermFailed {
                        *r = Replica::Functional;
                    }
                }
                if active_passive && active.is_none() {
                    active = plat.iter().position(|r| *r == Replica::Functional);
                }
            }
            Event::FailoverDone => {
                let (kind, i) = failover.take().expect("failover event without failover");
                plat[i] = match kind {
                    FailoverKind::Temp => Replica::TempFailed,
                    FailoverKind::Perm => Replica::PermFailed,
                };
                active = plat.iter().position(|r| *r == Replica::Functional);
                debug_assert!(active.is_some());
            }
            Event::AppFlip(i) => apps[i] = !apps[i],
        }
    }

    // the last slice absorbs the rounding of horizon/batches, so divide by
    // its true length to keep an all-up run at exactly 1.0
    let batch_means: Vec<f64> = uptime
        .iter()
        .enumerate()
        .map(|(b, u)| {
            let len = if b + 1 == batches {
                horizon - b as f64 * slice
            } else {
                slice
            };
            u / len
        })
        .collect();
    let estimate = batch_means.iter().sum::<f64>() / batches as f64;
    let var = batch_means
        .iter()
        .map(|m| (m - estimate) * (m - estimate))
        .sum::<f64>()
        / (batches as f64 - 1.0);
    let std_error = (var / batches as f64).sqrt();

    Ok(SimResult {
        availability_estimate: estimate,
        std_error,
        batch_means,
        event_count,
        os_failure_events,
        short_horizon,
    })
}

/// Spreads `[from, to)` uptime over the slice accumulators.
fn credit_uptime(uptime: &mut [f64], slice: f64, from: f64, to: f64) {
    if to <= from {
        return;
    }
    let last = uptime.len() - 1;
    let b0 = ((from / slice) as usize).min(last);
    let b1 = ((to / slice) as usize).min(last);
    if b0 == b1 {
        uptime[b0] += to - from;
        return;
    }
    uptime[b0] += (b0 + 1) as f64 * slice - from;
    for u in uptime[b0 + 1..b1].iter_mut() {
        *u += slice;
    }
    uptime[b1] += to - b1 as f64 * slice;
}
