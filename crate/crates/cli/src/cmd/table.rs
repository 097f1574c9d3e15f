use std::collections::BTreeMap;
use std::path::Path;

use anyhow::Result;

use vran_avail::ModelVariant;

use crate::config::SweepConfig;
use crate::output::{csv_document, emit, render_aligned, PointResult};

/// Groups grid points by their (cluster, platform, application) nines and
/// renders one row per group, listing the distinct parameter values that
/// land there; optionally writes the ungrouped per-point CSV too.
pub fn run(
    config: &Path,
    out: Option<&Path>,
    raw_out: Option<&Path>,
    variant: ModelVariant,
) -> Result<()> {
    let cfg: SweepConfig = crate::config::load(config)?;
    let rows = super::sweep::evaluate_grid(&cfg, variant)?;

    let mut groups: BTreeMap<(u32, u32, u32), Vec<&PointResult>> = BTreeMap::new();
    for row in &rows {
        let key = (
            row.report.nines_cluster,
            row.report.nines_platform,
            row.report.nines_app,
        );
        groups.entry(key).or_default().push(row);
    }

    let mut table = vec![vec![
        "nines".to_string(),
        "nines_p".to_string(),
        "nines_s".to_string(),
        "n_h".to_string(),
        "mttf_h".to_string(),
        "mttr_h".to_string(),
        "mttf_o".to_string(),
        "mttr_o".to_string(),
        "mtfo".to_string(),
        "n_s".to_string(),
        "mttf_s".to_string(),
        "mttr_s".to_string(),
        "points".to_string(),
    ]];
    for ((nines, nines_p, nines_s), members) in &groups {
        let distinct = |f: &dyn Fn(&PointResult) -> String| -> String {
            let mut seen = Vec::new();
            for m in members {
                let v = f(m);
                if !seen.contains(&v) {
                    seen.push(v);
                }
            }
            seen.join(", ")
        };
        table.push(vec![
            nines.to_string(),
            nines_p.to_string(),
            nines_s.to_string(),
            distinct(&|r| r.point.n_h.to_string()),
            distinct(&|r| r.point.mttf_h.clone()),
            distinct(&|r| r.point.mttr_h.clone()),
            distinct(&|r| r.point.mttf_o.clone()),
            distinct(&|r| r.point.mttr_o.clone()),
            distinct(&|r| r.point.mtfo.clone().unwrap_or_else(|| "-".into())),
            distinct(&|r| r.point.n_s.to_string()),
            distinct(&|r| r.point.mttf_s.clone()),
            distinct(&|r| r.point.mttr_s.clone()),
            members.len().to_string(),
        ]);
    }

    emit(out, &render_aligned(&table))?;
    if let Some(path) = raw_out {
        emit(Some(path), &csv_document(&rows))?;
    }
    Ok(())
}
