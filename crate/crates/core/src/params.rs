//! Failure, recovery, and failover parameters for the three layers of a
//! deployment: CU/DU applications, the OS/CaaS software stack, and the
//! server hardware.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::units::Duration;

/// Mean times to fail, recover, and fail over for every modeled layer.
///
/// Rates are derived as reciprocals of the durations in seconds: the
/// application fails at `1/mttf_app` and recovers at `1/mttr_app`, the
/// OS/CaaS layer at `1/mttf_os` / `1/mttr_os` (temporary failures), the
/// hardware at `1/mttf_hw` / `1/mttr_hw` (permanent failures), and
/// active-passive failovers complete at `1/mtfo_os` / `1/mtfo_hw`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateParams {
    pub mttf_app: Duration,
    pub mttr_app: Duration,
    pub mttf_os: Duration,
    pub mttr_os: Duration,
    pub mttf_hw: Duration,
    pub mttr_hw: Duration,
    pub mtfo_os: Duration,
    pub mtfo_hw: Duration,
}

impl RateParams {
    /// Builds a parameter set with a single failover time applied to both
    /// OS and hardware failovers.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        mttf_app: Duration,
        mttr_app: Duration,
        mttf_os: Duration,
        mttr_os: Duration,
        mttf_hw: Duration,
        mttr_hw: Duration,
        mtfo: Duration,
    ) -> Result<RateParams, Error> {
        let params = RateParams {
            mttf_app,
            mttr_app,
            mttf_os,
            mttr_os,
            mttf_hw,
            mttr_hw,
            mtfo_os: mtfo,
            mtfo_hw: mtfo,
        };
        params.validate()?;
        Ok(params)
    }

    /// Replaces the failover times with distinct OS and hardware values.
    pub fn with_failover_times(
        mut self,
        mtfo_os: Duration,
        mtfo_hw: Duration,
    ) -> Result<RateParams, Error> {
        self.mtfo_os = mtfo_os;
        self.mtfo_hw = mtfo_hw;
        self.validate()?;
        Ok(self)
    }

    /// All durations must be strictly positive so every rate is finite.
    pub fn validate(&self) -> Result<(), Error> {
        for (field, d) in [
            ("mttf_s", &self.mttf_app),
            ("mttr_s", &self.mttr_app),
            ("mttf_o", &self.mttf_os),
            ("mttr_o", &self.mttr_os),
            ("mttf_h", &self.mttf_hw),
            ("mttr_h", &self.mttr_hw),
            ("mtfo_o", &self.mtfo_os),
            ("mtfo_h", &self.mtfo_hw),
        ] {
            if d.as_seconds() <= 0.0 {
                return Err(Error::Validation {
                    field,
                    reason: "must be strictly positive".into(),
                });
            }
        }
        Ok(())
    }

    pub fn app_failure_rate(&self) -> f64 {
        1.0 / self.mttf_app.as_seconds()
    }

    pub fn app_repair_rate(&self) -> f64 {
        1.0 / self.mttr_app.as_seconds()
    }

    pub fn os_failure_rate(&self) -> f64 {
        1.0 / self.mttf_os.as_seconds()
    }

    pub fn os_repair_rate(&self) -> f64 {
        1.0 / self.mttr_os.as_seconds()
    }

    pub fn hw_failure_rate(&self) -> f64 {
        1.0 / self.mttf_hw.as_seconds()
    }

    pub fn hw_repair_rate(&self) -> f64 {
        1.0 / self.mttr_hw.as_seconds()
    }

    pub fn os_failover_rate(&self) -> f64 {
        1.0 / self.mtfo_os.as_seconds()
    }

    pub fn hw_failover_rate(&self) -> f64 {
        1.0 / self.mtfo_hw.as_seconds()
    }
}

/// Platform replication discipline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Every replica serves; outage only when all are down.
    ActiveActive,
    /// One replica serves; failures of the serving replica trigger a
    /// failover outage.
    ActivePassive,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::ActiveActive => "active_active",
            Mode::ActivePassive => "active_passive",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode, Error> {
        match s {
            "active_active" => Ok(Mode::ActiveActive),
            "active_passive" => Ok(Mode::ActivePassive),
            other => Err(Error::Validation {
                field: "mode",
                reason: format!("expected active_active or active_passive, got `{other}`"),
            }),
        }
    }
}

/// Replication factors: `platform_replicas` servers, each hosting
/// `app_replicas` application instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReplicationSpec {
    pub platform_replicas: u32,
    pub app_replicas: u32,
    pub mode: Mode,
}

impl ReplicationSpec {
    pub fn new(platform_replicas: u32, app_replicas: u32, mode: Mode) -> Result<Self, Error> {
        if platform_replicas == 0 {
            return Err(Error::Validation {
                field: "n_h",
                reason: "platform replication factor must be at least 1".into(),
            });
        }
        if app_replicas == 0 {
            return Err(Error::Validation {
                field: "n_s",
                reason: "application replication factor must be at least 1".into(),
            });
        }
        Ok(ReplicationSpec {
            platform_replicas,
            app_replicas,
            mode,
        })
    }

    /// Application replicas that serve traffic: active-active platforms
    /// pool the instances of every replica, active-passive only the
    /// serving platform's.
    pub fn effective_app_replicas(&self) -> u32 {
        match self.mode {
            Mode::ActiveActive => self.app_replicas * self.platform_replicas,
            Mode::ActivePassive => self.app_replicas,
        }
    }
}
