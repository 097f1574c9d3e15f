//! JSON config schemas and their resolution into model parameters.
//!
//! Durations are strings in the `<number><unit>` grammar (`s`, `min`,
//! `h`/`hours`, `d`/`days`, `months`, `years`); the hardware MTTF also
//! accepts an annualized failure rate written as `<number>%`. Resolved
//! configs are echoed back with every duration in canonical seconds, and
//! that echo re-parses to the same parameters.

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;

use vran_avail::{afr_to_mttf, Duration, Mode, RateParams, ReplicationSpec};

/// Failover value used when an active-active config omits `mtfo`; the
/// active-active chain never reads it.
const UNUSED_MTFO: &str = "10s";

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveConfig {
    pub mode: String,
    pub n_h: u32,
    pub n_s: u32,
    pub mttf_s: String,
    pub mttr_s: String,
    pub mttf_o: String,
    pub mttr_o: String,
    pub mttf_h: String,
    pub mttr_h: String,
    #[serde(default)]
    pub mtfo: Option<String>,
    #[serde(default)]
    pub mtfo_o: Option<String>,
    #[serde(default)]
    pub mtfo_h: Option<String>,
}

/// A fully validated parameter point.
#[derive(Debug, Clone, Copy)]
pub struct Resolved {
    pub params: RateParams,
    pub spec: ReplicationSpec,
}

pub fn parse_duration(field: &str, text: &str) -> Result<Duration> {
    text.parse::<Duration>()
        .map_err(|e| anyhow!("{field}: {e}"))
}

/// Hardware MTTF: a duration, or an annualized failure rate like `5%`.
pub fn parse_hw_mttf(field: &str, text: &str) -> Result<Duration> {
    let trimmed = text.trim();
    if let Some(pct) = trimmed.strip_suffix('%') {
        let value: f64 = pct
            .trim()
            .parse()
            .map_err(|_| anyhow!("{field}: `{pct}` is not a number"))?;
        return afr_to_mttf(value / 100.0).map_err(|e| anyhow!("{field}: {e}"));
    }
    parse_duration(field, text)
}

impl SolveConfig {
    pub fn resolve(&self) -> Result<Resolved> {
        let mode: Mode = self.mode.parse().map_err(|e| anyhow!("{e}"))?;
        let (mtfo_os, mtfo_hw) = self.failover_durations(mode)?;
        let params = RateParams::new(
            parse_duration("mttf_s", &self.mttf_s)?,
            parse_duration("mttr_s", &self.mttr_s)?,
            parse_duration("mttf_o", &self.mttf_o)?,
            parse_duration("mttr_o", &self.mttr_o)?,
            parse_hw_mttf("mttf_h", &self.mttf_h)?,
            parse_duration("mttr_h", &self.mttr_h)?,
            Duration::seconds(1.0).expect("valid placeholder"),
        )
        .map_err(|e| anyhow!("{e}"))?
        .with_failover_times(mtfo_os, mtfo_hw)
        .map_err(|e| anyhow!("{e}"))?;
        let spec = ReplicationSpec::new(self.n_h, self.n_s, mode).map_err(|e| anyhow!("{e}"))?;
        Ok(Resolved { params, spec })
    }

    fn failover_durations(&self, mode: Mode) -> Result<(Duration, Duration)> {
        match (&self.mtfo, &self.mtfo_o, &self.mtfo_h) {
            (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
                bail!("mtfo: give either mtfo or the mtfo_o/mtfo_h pair, not both")
            }
            (Some(single), None, None) => {
                let d = parse_duration("mtfo", single)?;
                Ok((d, d))
            }
            (None, Some(os), Some(hw)) => {
                Ok((parse_duration("mtfo_o", os)?, parse_duration("mtfo_h", hw)?))
            }
            (None, Some(_), None) | (None, None, Some(_)) => {
                bail!("mtfo_o and mtfo_h must be given together")
            }
            (None, None, None) => {
                if mode == Mode::ActivePassive {
                    bail!("mtfo: required when mode is active_passive");
                }
                let d = parse_duration("mtfo", UNUSED_MTFO)?;
                Ok((d, d))
            }
        }
    }
}

fn seconds_string(d: Duration) -> String {
    format!("{}s", d.as_seconds())
}

/// Canonical echo of a resolved config: same schema, durations in
/// seconds. Feeding it back through [`SolveConfig::resolve`] reproduces
/// the identical parameters.
pub fn canonical_json(r: &Resolved) -> String {
    let p = &r.params;
    serde_json::to_string_pretty(&serde_json::json!({
        "mode": r.spec.mode.to_string(),
        "n_h": r.spec.platform_replicas,
        "n_s": r.spec.app_replicas,
        "mttf_s": seconds_string(p.mttf_app),
        "mttr_s": seconds_string(p.mttr_app),
        "mttf_o": seconds_string(p.mttf_os),
        "mttr_o": seconds_string(p.mttr_os),
        "mttf_h": seconds_string(p.mttf_hw),
        "mttr_h": seconds_string(p.mttr_hw),
        "mtfo_o": seconds_string(p.mtfo_os),
        "mtfo_h": seconds_string(p.mtfo_hw),
    }))
    .expect("config serializes")
}

/// Grid of parameter values, expanded as a cartesian product in the
/// field order of this struct (mode outermost, mttr_s innermost).
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub mode: Vec<String>,
    pub n_h: Vec<u32>,
    pub n_s: Vec<u32>,
    pub mttf_h: Vec<String>,
    pub mttr_h: Vec<String>,
    pub mttf_o: Vec<String>,
    pub mttr_o: Vec<String>,
    #[serde(default)]
    pub mtfo: Vec<String>,
    pub mttf_s: Vec<String>,
    pub mttr_s: Vec<String>,
}

/// One expanded grid point, keeping the input spellings for display.
#[derive(Debug, Clone)]
pub struct GridPoint {
    pub mode: String,
    pub n_h: u32,
    pub n_s: u32,
    pub mttf_h: String,
    pub mttr_h: String,
    pub mttf_o: String,
    pub mttr_o: String,
    pub mtfo: Option<String>,
    pub mttf_s: String,
    pub mttr_s: String,
}

impl GridPoint {
    pub fn to_solve_config(&self) -> SolveConfig {
        SolveConfig {
            mode: self.mode.clone(),
            n_h: self.n_h,
            n_s: self.n_s,
            mttf_s: self.mttf_s.clone(),
            mttr_s: self.mttr_s.clone(),
            mttf_o: self.mttf_o.clone(),
            mttr_o: self.mttr_o.clone(),
            mttf_h: self.mttf_h.clone(),
            mttr_h: self.mttr_h.clone(),
            mtfo: self.mtfo.clone(),
            mtfo_o: None,
            mtfo_h: None,
        }
    }
}

/// Largest grid the sweep commands will expand.
pub const MAX_GRID_POINTS: u128 = 1_000_000;

impl SweepConfig {
    pub fn expand(&self) -> Result<Vec<GridPoint>> {
        for (name, len) in [
            ("mode", self.mode.len()),
            ("n_h", self.n_h.len()),
            ("n_s", self.n_s.len()),
            ("mttf_h", self.mttf_h.len()),
            ("mttr_h", self.mttr_h.len()),
            ("mttf_o", self.mttf_o.len()),
            ("mttr_o", self.mttr_o.len()),
            ("mttf_s", self.mttf_s.len()),
            ("mttr_s", self.mttr_s.len()),
        ] {
            if len == 0 {
                bail!("{name}: value list is empty");
            }
        }
        let needs_failover = self.mode.iter().any(|m| m == "active_passive");
        if needs_failover && self.mtfo.is_empty() {
            bail!("mtfo: value list is empty but the grid includes active_passive");
        }
        let mtfo_values: Vec<Option<String>> = if self.mtfo.is_empty() {
            vec![None]
        } else {
            self.mtfo.iter().cloned().map(Some).collect()
        };

        let size: u128 = [
            self.mode.len(),
            self.n_h.len(),
            self.n_s.len(),
            self.mttf_h.len(),
            self.mttr_h.len(),
            self.mttf_o.len(),
            self.mttr_o.len(),
            mtfo_values.len(),
            self.mttf_s.len(),
            self.mttr_s.len(),
        ]
        .iter()
        .map(|&l| l as u128)
        .product();
        if size > MAX_GRID_POINTS {
            bail!("grid has {size} points, more than the {MAX_GRID_POINTS} supported");
        }

        let mut grid = Vec::with_capacity(size as usize);
        for mode in &self.mode {
            for &n_h in &self.n_h {
                for &n_s in &self.n_s {
                    for mttf_h in &self.mttf_h {
                        for mttr_h in &self.mttr_h {
                            for mttf_o in &self.mttf_o {
                                for mttr_o in &self.mttr_o {
                                    for mtfo in &mtfo_values {
                                        for mttf_s in &self.mttf_s {
                                            for mttr_s in &self.mttr_s {
                                                grid.push(GridPoint {
                                                    mode: mode.clone(),
                                                    n_h,
                                                    n_s,
                                                    mttf_h: mttf_h.clone(),
                                                    mttr_h: mttr_h.clone(),
                                                    mttf_o: mttf_o.clone(),
                                                    mttr_o: mttr_o.clone(),
                                                    mtfo: mtfo.clone(),
                                                    mttf_s: mttf_s.clone(),
                                                    mttr_s: mttr_s.clone(),
                                                });
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(grid)
    }
}

/// Network analysis: a site count and a list of DU/CU scenarios, each
/// given as outage probabilities or as nested cluster configs.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkConfig {
    pub n_c: u32,
    pub scenarios: Vec<ScenarioConfig>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ScenarioConfig {
    Direct {
        du_outage: f64,
        cu_outage: f64,
    },
    Clusters {
        du: Box<SolveConfig>,
        cu: Box<SolveConfig>,
    },
}

/// Simulation run: the cluster parameters plus target, horizon, and seed.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateConfig {
    pub cluster: SolveConfig,
    pub target: String,
    pub horizon: String,
    pub seed: u64,
    #[serde(default = "default_batches")]
    pub batches: u32,
}

fn default_batches() -> u32 {
    30
}

pub fn load<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}
