use std::path::Path;

use anyhow::Result;

use vran_avail::{
    cell_outage, cluster_availability, pmf_centralized, pmf_distributed, ModelVariant,
    NetworkScenario, OutagePmf,
};

use crate::config::{NetworkConfig, ScenarioConfig};
use crate::output::{csv_header_comment, emit, probability, render_aligned};
use crate::Format;

struct ScenarioResult {
    scenario: NetworkScenario,
    centralized: OutagePmf,
    distributed: OutagePmf,
}

pub fn run(
    config: &Path,
    out: Option<&Path>,
    format: Format,
    pmf_out: Option<&Path>,
    variant: ModelVariant,
) -> Result<()> {
    let cfg: NetworkConfig = crate::config::load(config)?;
    let mut results = Vec::new();
    for spec in &cfg.scenarios {
        let scenario = match spec {
            ScenarioConfig::Direct {
                du_outage,
                cu_outage,
            } => NetworkScenario::new(cfg.n_c, 1.0 - du_outage, 1.0 - cu_outage)?,
            ScenarioConfig::Clusters { du, cu } => {
                let du = du.resolve()?;
                let cu = cu.resolve()?;
                let f_du = cluster_availability(&du.params, &du.spec, variant)?.f_cluster;
                let f_cu = cluster_availability(&cu.params, &cu.spec, variant)?.f_cluster;
                NetworkScenario::new(cfg.n_c, f_du, f_cu)?
            }
        };
        results.push(ScenarioResult {
            scenario,
            centralized: pmf_centralized(&scenario),
            distributed: pmf_distributed(&scenario),
        });
    }

    let text = match format {
        Format::Csv => {
            let mut s = String::new();
            s.push_str(&csv_header_comment());
            s.push('\n');
            s.push_str(
                "du_outage,cu_outage,cell_outage,all_cells_unavailable,expected_unavailable_centralized,expected_unavailable_distributed\n",
            );
            for r in &results {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    probability(1.0 - r.scenario.du_availability),
                    probability(1.0 - r.scenario.cu_availability),
                    probability(cell_outage(&r.scenario)),
                    probability(r.centralized.p_all_down),
                    r.centralized.mean,
                    r.distributed.mean,
                ));
            }
            s
        }
        Format::Table => {
            let mut table = vec![vec![
                "du_outage".to_string(),
                "cu_outage".to_string(),
                "cell_outage".to_string(),
                "all_cells_unavailable".to_string(),
                "E[unavailable] centralized".to_string(),
                "E[unavailable] distributed".to_string(),
            ]];
            for r in &results {
                table.push(vec![
                    format!("{:.3e}", 1.0 - r.scenario.du_availability),
                    format!("{:.3e}", 1.0 - r.scenario.cu_availability),
                    format!("{:.6e}", cell_outage(&r.scenario)),
                    format!("{:.6e}", r.centralized.p_all_down),
                    format!("{:.6e}", r.centralized.mean),
                    format!("{:.6e}", r.distributed.mean),
                ]);
            }
            format!("{} cell sites\n{}", cfg.n_c, render_aligned(&table))
        }
    };
    emit(out, &text)?;

    if let Some(path) = pmf_out {
        let mut s = String::new();
        s.push_str(&csv_header_comment());
        s.push('\n');
        s.push_str("scenario,placement,k,probability\n");
        for (i, r) in results.iter().enumerate() {
            for (placement, pmf) in [
                ("centralized", &r.centralized),
                ("distributed", &r.distributed),
            ] {
                for (k, p) in pmf.pmf.iter().enumerate() {
                    s.push_str(&format!("{i},{placement},{k},{}\n", probability(*p)));
                }
            }
        }
        emit(Some(path), &s)?;
    }
    Ok(())
}
