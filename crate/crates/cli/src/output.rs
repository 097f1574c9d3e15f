//! Row formatting shared by the solve, sweep, and table commands.

use anyhow::Result;
use std::path::Path;

use vran_avail::ClusterReport;

use crate::config::{GridPoint, Resolved};

/// Version-and-conventions comment emitted at the top of every CSV file.
pub fn csv_header_comment() -> String {
    format!(
        "# vran-avail {}; durations in seconds; 1 min = 60 s, 1 h = 3600 s, 1 d = 86400 s, 1 month = 30 d, 1 year = 365 d",
        env!("CARGO_PKG_VERSION")
    )
}

pub const CSV_COLUMNS: &str = "mode,n_h,n_s,mttf_h,mttr_h,mttf_o,mttr_o,mtfo_o,mtfo_h,mttf_s,mttr_s,f_platform,f_app,f_cluster,outage_platform,outage_app,outage_cluster,nines_cluster,nines_platform,nines_app,platform_states";

/// One evaluated parameter point.
#[derive(Debug, Clone)]
pub struct PointResult {
    pub point: GridPoint,
    pub resolved: Resolved,
    pub report: ClusterReport,
}

pub fn probability(x: f64) -> String {
    format!("{x:.15e}")
}

pub fn csv_row(r: &PointResult) -> String {
    let p = &r.resolved.params;
    let rep = &r.report;
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        rep.mode,
        rep.platform_replicas,
        rep.app_replicas,
        p.mttf_hw.as_seconds(),
        p.mttr_hw.as_seconds(),
        p.mttf_os.as_seconds(),
        p.mttr_os.as_seconds(),
        p.mtfo_os.as_seconds(),
        p.mtfo_hw.as_seconds(),
        p.mttf_app.as_seconds(),
        p.mttr_app.as_seconds(),
        probability(rep.f_platform),
        probability(rep.f_app),
        probability(rep.f_cluster),
        probability(1.0 - rep.f_platform),
        probability(1.0 - rep.f_app),
        probability(1.0 - rep.f_cluster),
        rep.nines_cluster,
        rep.nines_platform,
        rep.nines_app,
        rep.platform_states,
    )
}

pub fn csv_document(rows: &[PointResult]) -> String {
    let mut out = String::new();
    out.push_str(&csv_header_comment());
    out.push('\n');
    out.push_str(CSV_COLUMNS);
    out.push('\n');
    for r in rows {
        out.push_str(&csv_row(r));
        out.push('\n');
    }
    out
}

/// Fixed-width rendering of the same rows for terminals.
pub fn aligned_document(rows: &[PointResult]) -> String {
    let headers = [
        "mode",
        "n_h",
        "n_s",
        "mttf_h",
        "mttr_h",
        "mttf_o",
        "mttr_o",
        "mtfo",
        "mttf_s",
        "mttr_s",
        "f_cluster",
        "nines",
        "nines_p",
        "nines_s",
    ];
    let mut table: Vec<Vec<String>> = vec![headers.iter().map(|s| s.to_string()).collect()];
    for r in rows {
        let g = &r.point;
        table.push(vec![
            g.mode.clone(),
            g.n_h.to_string(),
            g.n_s.to_string(),
            g.mttf_h.clone(),
            g.mttr_h.clone(),
            g.mttf_o.clone(),
            g.mttr_o.clone(),
            g.mtfo.clone().unwrap_or_else(|| "-".into()),
            g.mttf_s.clone(),
            g.mttr_s.clone(),
            format!("{:.12}", r.report.f_cluster),
            r.report.nines_cluster.to_string(),
            r.report.nines_platform.to_string(),
            r.report.nines_app.to_string(),
        ]);
    }
    render_aligned(&table)
}

pub fn render_aligned(table: &[Vec<String>]) -> String {
    if table.is_empty() {
        return String::new();
    }
    let cols = table[0].len();
    let mut widths = vec![0usize; cols];
    for row in table {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in table {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(&format!("{:<width$}", cell, width = widths[i]));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Writes to the file when a path is given, stdout otherwise.
pub fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}
