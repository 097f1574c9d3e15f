use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Result};

use vran_avail::{
    cluster_availability, platform_availability, simulate_cluster, simulate_platform, ModelVariant,
    SimConfig,
};

use crate::config::{parse_duration, SimulateConfig};

/// Runs the simulator and compares against the analytic value; exits 0
/// when the estimate is within three standard errors, 1 otherwise.
pub fn run(config: &Path, seed: Option<u64>, horizon: Option<&str>) -> Result<ExitCode> {
    let mut cfg: SimulateConfig = crate::config::load(config)?;
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    if let Some(h) = horizon {
        cfg.horizon = h.to_string();
    }
    let resolved = cfg.cluster.resolve()?;
    let sim_config = SimConfig {
        params: resolved.params,
        replication: resolved.spec,
        horizon: parse_duration("horizon", &cfg.horizon)?,
        seed: cfg.seed,
        batches: cfg.batches,
    };

    let (result, analytic) = match cfg.target.as_str() {
        "platform" => (
            simulate_platform(&sim_config)?,
            platform_availability(
                &resolved.params,
                resolved.spec.platform_replicas,
                resolved.spec.mode,
                ModelVariant::Full,
            )?
            .availability,
        ),
        "cluster" => (
            simulate_cluster(&sim_config)?,
            cluster_availability(&resolved.params, &resolved.spec, ModelVariant::Full)?.f_cluster,
        ),
        other => bail!("target: expected platform or cluster, got `{other}`"),
    };

    let diff = result.availability_estimate - analytic;
    let z = if result.std_error > 0.0 {
        diff / result.std_error
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };

    println!(
        "target    = {} ({}, n_h={}, n_s={})",
        cfg.target, resolved.spec.mode, resolved.spec.platform_replicas, resolved.spec.app_replicas
    );
    println!(
        "horizon   = {} s in {} batches, seed {}",
        sim_config.horizon.as_seconds(),
        cfg.batches,
        cfg.seed
    );
    println!(
        "estimate  = {:.12} +- {:.6e} (std error)",
        result.availability_estimate, result.std_error
    );
    println!("analytic  = {analytic:.12}");
    println!("z         = {z:.3}");
    println!("events    = {}", result.event_count);
    if result.short_horizon {
        println!("warning: horizon is expected to hold fewer than 100 events; the estimate is unreliable");
    }

    Ok(if z.abs() <= 3.0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
