pub mod network;
pub mod simulate;
pub mod solve;
pub mod sweep;
pub mod table;

use anyhow::{bail, Result};

use vran_avail::{cluster_availability, ModelVariant};

use crate::config::GridPoint;
use crate::output::PointResult;

pub fn parse_variant(arg: Option<&str>) -> Result<ModelVariant> {
    match arg {
        None => Ok(ModelVariant::Full),
        Some(token) if token == ModelVariant::DROP_TEMP_HW_TOKEN => {
            Ok(ModelVariant::DropTempHwFailure)
        }
        Some(other) => bail!(
            "model-variant: unknown variant `{other}` (supported: {})",
            ModelVariant::DROP_TEMP_HW_TOKEN
        ),
    }
}

pub fn evaluate(point: GridPoint, variant: ModelVariant) -> Result<PointResult> {
    let resolved = point.to_solve_config().resolve()?;
    let report = cluster_availability(&resolved.params, &resolved.spec, variant)?;
    Ok(PointResult {
        point,
        resolved,
        report,
    })
}

/// Thread pool for grid evaluation; `VRAN_AVAIL_THREADS` caps the width.
pub fn sweep_pool() -> Result<rayon::ThreadPool> {
    let threads = match std::env::var("VRAN_AVAIL_THREADS") {
        Ok(text) => match text.trim().parse::<usize>() {
            Ok(n) => n,
            Err(_) => bail!("VRAN_AVAIL_THREADS: `{text}` is not a thread count"),
        },
        Err(_) => 0, // rayon default
    };
    Ok(rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()?)
}
