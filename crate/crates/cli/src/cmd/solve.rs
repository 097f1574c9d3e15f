use std::path::Path;

use anyhow::Result;

use vran_avail::{build_active_active, build_active_passive, Mode, ModelVariant};

use crate::config::{canonical_json, GridPoint, SolveConfig};
use crate::output::{csv_document, emit, probability, PointResult};
use crate::Format;

pub fn run(
    config: &Path,
    out: Option<&Path>,
    format: Format,
    dump_chain: bool,
    variant: ModelVariant,
) -> Result<()> {
    let cfg: SolveConfig = crate::config::load(config)?;
    let point = GridPoint {
        mode: cfg.mode.clone(),
        n_h: cfg.n_h,
        n_s: cfg.n_s,
        mttf_h: cfg.mttf_h.clone(),
        mttr_h: cfg.mttr_h.clone(),
        mttf_o: cfg.mttf_o.clone(),
        mttr_o: cfg.mttr_o.clone(),
        mtfo: cfg.mtfo.clone().or(cfg.mtfo_o.clone()),
        mttf_s: cfg.mttf_s.clone(),
        mttr_s: cfg.mttr_s.clone(),
    };
    let resolved = cfg.resolve()?;
    let report = vran_avail::cluster_availability(&resolved.params, &resolved.spec, variant)?;
    let result = PointResult {
        point,
        resolved,
        report,
    };

    let mut text = String::new();
    if dump_chain {
        let model = match resolved.spec.mode {
            Mode::ActiveActive => {
                build_active_active(&resolved.params, resolved.spec.platform_replicas)?
            }
            Mode::ActivePassive => {
                build_active_passive(&resolved.params, resolved.spec.platform_replicas, variant)?
            }
        };
        text.push_str("platform chain (state label, generator row):\n");
        text.push_str(&model.dump());
        text.push('\n');
    }

    match format {
        Format::Csv => text.push_str(&csv_document(std::slice::from_ref(&result))),
        Format::Table => {
            let r = &result.report;
            text.push_str("resolved config:\n");
            text.push_str(&canonical_json(&resolved));
            text.push_str("\n\n");
            text.push_str(&format!(
                "f_platform = {} (outage {})\n",
                probability(r.f_platform),
                probability(1.0 - r.f_platform)
            ));
            text.push_str(&format!(
                "f_app      = {} (outage {})\n",
                probability(r.f_app),
                probability(1.0 - r.f_app)
            ));
            text.push_str(&format!(
                "f_cluster  = {} (outage {})\n",
                probability(r.f_cluster),
                probability(1.0 - r.f_cluster)
            ));
            text.push_str(&format!(
                "nines (cluster platform app): {} {} {}\n",
                r.nines_cluster, r.nines_platform, r.nines_app
            ));
            text.push_str(&format!("platform states: {}\n", r.platform_states));
        }
    }
    emit(out, &text)
}
