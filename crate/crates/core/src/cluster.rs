//! Cluster availability: platform and application layers composed as
//! independent factors.
//!
//! Active-active pools application instances across platform replicas, so
//! the software factor runs at `n_s * n_h` effective replicas; an
//! active-passive cluster only serves from the active platform and keeps
//! `n_s`.

use crate::app::app_availability;
use crate::error::Error;
use crate::params::{Mode, RateParams, ReplicationSpec};
use crate::platform::{platform_availability, ModelVariant};
use crate::units::nines;

/// Per-layer availabilities and their nines, as reported by the nines
/// tables: cluster, platform, application.
#[derive(Debug, Clone)]
pub struct ClusterReport {
    pub mode: Mode,
    pub platform_replicas: u32,
    pub app_replicas: u32,
    pub f_platform: f64,
    pub f_app: f64,
    pub f_cluster: f64,
    pub nines_platform: u32,
    pub nines_app: u32,
    pub nines_cluster: u32,
    pub platform_states: usize,
}

pub fn cluster_availability(
    params: &RateParams,
    spec: &ReplicationSpec,
    variant: ModelVariant,
) -> Result<ClusterReport, Error> {
    let platform = platform_availability(params, spec.platform_replicas, spec.mode, variant)?;
    let app = app_availability(params, spec.effective_app_replicas())?;
    let f_cluster = platform.availability * app.availability;
    Ok(ClusterReport {
        mode: spec.mode,
        platform_replicas: spec.platform_replicas,
        app_replicas: spec.app_replicas,
        f_platform: platform.availability,
        f_app: app.availability,
        f_cluster,
        nines_platform: nines(platform.availability)?,
        nines_app: nines(app.availability)?,
        nines_cluster: nines(f_cluster)?,
        platform_states: platform.state_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::app::app_availability;
    use crate::units::Duration;

    fn params(mttf_o: &str, mttr_o: &str, mttf_h: &str, mttr_s: &str, mtfo: &str) -> RateParams {
        RateParams::new(
            Duration::months(2.0).unwrap(),
            mttr_s.parse().unwrap(),
            mttf_o.parse().unwrap(),
            mttr_o.parse().unwrap(),
            mttf_h.parse().unwrap(),
            Duration::hours(10.0).unwrap(),
            mtfo.parse().unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn table_iii_row_1_nines() {
        let p = params("10months", "90min", "10years", "30min", "10s");
        let spec = ReplicationSpec::new(2, 1, Mode::ActiveActive).unwrap();
        let r = cluster_availability(&p, &spec, ModelVariant::Full).unwrap();
        assert_eq!((r.nines_cluster, r.nines_platform, r.nines_app), (6, 6, 6));
    }

    #[test]
    fn table_iii_row_5_nines() {
        let p = params("10months", "15min", "10years", "5min", "10s");
        let spec = ReplicationSpec::new(2, 1, Mode::ActiveActive).unwrap();
        let r = cluster_availability(&p, &spec, ModelVariant::Full).unwrap();
        assert_eq!((r.nines_cluster, r.nines_platform, r.nines_app), (7, 7, 8));
    }

    #[test]
    fn table_iv_row_3_nines() {
        let p = params("10months", "15min", "10years", "5min", "10s");
        let spec = ReplicationSpec::new(2, 2, Mode::ActivePassive).unwrap();
        let r = cluster_availability(&p, &spec, ModelVariant::Full).unwrap();
        assert_eq!(r.nines_cluster, 6);
        assert_eq!(r.nines_platform, 6);
    }

    #[test]
    fn perfect_software_leaves_platform_factor() {
        let mut p = params("10months", "90min", "10years", "30min", "10s");
        p.mttr_app = Duration::seconds(1e-9).unwrap();
        let spec = ReplicationSpec::new(2, 2, Mode::ActiveActive).unwrap();
        let r = cluster_availability(&p, &spec, ModelVariant::Full).unwrap();
        assert!((r.f_cluster - r.f_platform).abs() < 1e-12);
    }

    #[test]
    fn composition_is_the_exact_product() {
        let p = params("17d", "45min", "20years", "10min", "60s");
        for (mode, n_h, n_s) in [
            (Mode::ActiveActive, 2, 3),
            (Mode::ActivePassive, 3, 2),
            (Mode::ActiveActive, 1, 1),
        ] {
            let spec = ReplicationSpec::new(n_h, n_s, mode).unwrap();
            let r = cluster_availability(&p, &spec, ModelVariant::Full).unwrap();
            assert_eq!(r.f_cluster, r.f_platform * r.f_app);
            assert!(r.f_cluster <= r.f_platform.min(r.f_app));
        }
    }

    #[test]
    fn active_active_pools_app_replicas() {
        let p = params("10months", "90min", "10years", "30min", "10s");
        let spec = ReplicationSpec::new(3, 2, Mode::ActiveActive).unwrap();
        let r = cluster_availability(&p, &spec, ModelVariant::Full).unwrap();
        assert_eq!(r.f_app, app_availability(&p, 6).unwrap().availability);
        let spec = ReplicationSpec::new(3, 2, Mode::ActivePassive).unwrap();
        let r = cluster_availability(&p, &spec, ModelVariant::Full).unwrap();
        assert_eq!(r.f_app, app_availability(&p, 2).unwrap().availability);
    }

    #[test]
    fn active_active_cluster_dominates_active_passive() {
        for (mttf_o, mttr_o, mttf_h, mttr_s, mtfo) in [
            ("17d", "90min", "12years", "30min", "0.5s"),
            ("70d", "0.5min", "33years", "1s", "600s"),
            ("10months", "15min", "10years", "5min", "10s"),
        ] {
            let p = params(mttf_o, mttr_o, mttf_h, mttr_s, mtfo);
            for n_h in 2..=3 {
                let aa = cluster_availability(
                    &p,
                    &ReplicationSpec::new(n_h, 2, Mode::ActiveActive).unwrap(),
                    ModelVariant::Full,
                )
                .unwrap();
                let ap = cluster_availability(
                    &p,
                    &ReplicationSpec::new(n_h, 2, Mode::ActivePassive).unwrap(),
                    ModelVariant::Full,
                )
                .unwrap();
                assert!(aa.f_cluster >= ap.f_cluster, "n_h={n_h}");
            }
        }
    }
}
