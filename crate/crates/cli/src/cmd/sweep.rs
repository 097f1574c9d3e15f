use std::path::Path;

use anyhow::Result;
use rayon::prelude::*;

use vran_avail::ModelVariant;

use crate::config::SweepConfig;
use crate::output::{aligned_document, csv_document, emit, PointResult};
use crate::Format;

pub fn run(config: &Path, out: Option<&Path>, format: Format, variant: ModelVariant) -> Result<()> {
    let cfg: SweepConfig = crate::config::load(config)?;
    let rows = evaluate_grid(&cfg, variant)?;
    let text = match format {
        Format::Csv => csv_document(&rows),
        Format::Table => aligned_document(&rows),
    };
    emit(out, &text)
}

/// Expands and evaluates the grid concurrently; row order stays the
/// declared expansion order regardless of scheduling.
pub fn evaluate_grid(cfg: &SweepConfig, variant: ModelVariant) -> Result<Vec<PointResult>> {
    let grid = cfg.expand()?;
    let pool = super::sweep_pool()?;
    pool.install(|| {
        grid.into_par_iter()
            .map(|point| super::evaluate(point, variant))
            .collect()
    })
}
