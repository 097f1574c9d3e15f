//! Network-wide view: how many of `n_c` cell sites are unavailable under a
//! centralized CU (one CU shared by every site) versus a distributed CU
//! (one CU per site).
//!
//! With a centralized CU, a CU outage takes down every site at once, so
//! the count of unavailable sites mixes a binomial over DU failures with a
//! point mass at `n_c`. Distributed sites fail independently with
//! probability `1 - f_du * f_cu`. Both distributions share the same mean,
//! `n_c * (1 - f_du * f_cu)`, and the same per-cell outage probability.

use crate::error::Error;

/// A deployment of `cell_sites` sites with the given DU and CU
/// availabilities (each produced by the cluster composition or supplied
/// directly).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkScenario {
    pub cell_sites: u32,
    pub du_availability: f64,
    pub cu_availability: f64,
}

impl NetworkScenario {
    pub fn new(cell_sites: u32, du_availability: f64, cu_availability: f64) -> Result<Self, Error> {
        if cell_sites == 0 {
            return Err(Error::validation(
                "n_c",
                "cell-site count must be at least 1",
            ));
        }
        for (field, p) in [("f_du", du_availability), ("f_cu", cu_availability)] {
            if !p.is_finite() || !(0.0..=1.0).contains(&p) {
                return Err(Error::Validation {
                    field,
                    reason: format!("must be a probability in [0, 1], got {p}"),
                });
            }
        }
        Ok(NetworkScenario {
            cell_sites,
            du_availability,
            cu_availability,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    Centralized,
    Distributed,
}

/// Distribution of the number of unavailable cell sites.
#[derive(Debug, Clone)]
pub struct OutagePmf {
    pub placement: Placement,
    /// `pmf[k]` is the probability that exactly `k` of the sites are down.
    pub pmf: Vec<f64>,
    pub mean: f64,
    /// Probability that every site is down (`pmf[n_c]`).
    pub p_all_down: f64,
    /// Per-cell outage probability, `1 - f_du * f_cu`; identical for both
    /// placements.
    pub p_cell_outage: f64,
}

/// Binomial pmf evaluated in log space so site counts in the thousands
/// cannot overflow the coefficient.
fn binomial_pmf(n: usize, p: f64) -> Vec<f64> {
    if p <= 0.0 {
        let mut pmf = vec![0.0; n + 1];
        pmf[0] = 1.0;
        return pmf;
    }
    if p >= 1.0 {
        let mut pmf = vec![0.0; n + 1];
        pmf[n] = 1.0;
        return pmf;
    }
    // ln k! running sums
    let mut ln_fact = Vec::with_capacity(n + 1);
    ln_fact.push(0.0f64);
    for k in 1..=n {
        ln_fact.push(ln_fact[k - 1] + (k as f64).ln());
    }
    let (ln_p, ln_q) = (p.ln(), (1.0 - p).ln());
    (0..=n)
        .map(|k| {
            let ln_choose = ln_fact[n] - ln_fact[k] - ln_fact[n - k];
            (ln_choose + k as f64 * ln_p + (n - k) as f64 * ln_q).exp()
        })
        .collect()
}

fn assemble(placement: Placement, pmf: Vec<f64>, p_cell_outage: f64) -> OutagePmf {
    let mean = pmf.iter().enumerate().map(|(k, p)| k as f64 * p).sum();
    let p_all_down = *pmf.last().expect("pmf has n_c + 1 entries");
    OutagePmf {
        placement,
        pmf,
        mean,
        p_all_down,
        p_cell_outage,
    }
}

/// Centralized CU: DU failures are binomial while the CU is up; a CU
/// outage lands on the all-sites-down bucket.
pub fn pmf_centralized(s: &NetworkScenario) -> OutagePmf {
    let n = s.cell_sites as usize;
    let f_cu = s.cu_availability;
    let du_down = 1.0 - s.du_availability;
    let mut pmf: Vec<f64> = binomial_pmf(n, du_down)
        .into_iter()
        .map(|p| f_cu * p)
        .collect();
    pmf[n] += 1.0 - f_cu;
    assemble(Placement::Centralized, pmf, cell_outage(s))
}

/// Distributed CUs: each site is down independently with probability
/// `1 - f_du * f_cu`.
pub fn pmf_distributed(s: &NetworkScenario) -> OutagePmf {
    let n = s.cell_sites as usize;
    let pmf = binomial_pmf(n, cell_outage(s));
    assemble(Placement::Distributed, pmf, cell_outage(s))
}

/// Expected number of unavailable sites; the same for both placements.
pub fn expected_unavailable(s: &NetworkScenario) -> f64 {
    f64::from(s.cell_sites) * cell_outage(s)
}

/// Outage probability of any single cell, `1 - f_du * f_cu`.
pub fn cell_outage(s: &NetworkScenario) -> f64 {
    1.0 - s.du_availability * s.cu_availability
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scenario(n_c: u32, du_out: f64, cu_out: f64) -> NetworkScenario {
        NetworkScenario::new(n_c, 1.0 - du_out, 1.0 - cu_out).unwrap()
    }

    #[test]
    fn validation() {
        assert!(NetworkScenario::new(0, 1.0, 1.0).is_err());
        assert!(NetworkScenario::new(5, 1.5, 1.0).is_err());
        assert!(NetworkScenario::new(5, 1.0, -0.1).is_err());
    }

    #[test]
    fn perfect_availability_is_a_point_mass_at_zero() {
        let s = scenario(10, 0.0, 0.0);
        for pmf in [pmf_centralized(&s), pmf_distributed(&s)] {
            assert_eq!(pmf.pmf[0], 1.0);
            assert_eq!(pmf.pmf[1..].iter().sum::<f64>(), 0.0);
            assert_eq!(pmf.mean, 0.0);
        }
        assert_eq!(expected_unavailable(&s), 0.0);
    }

    #[test]
    fn dead_cu_takes_every_site_down() {
        let s = NetworkScenario::new(7, 0.999, 0.0).unwrap();
        let pmf = pmf_centralized(&s);
        assert_eq!(pmf.p_all_down, 1.0);
        assert_eq!(pmf.pmf[..7].iter().sum::<f64>(), 0.0);
    }

    #[test]
    fn table_v_values() {
        // (du outage, cu outage, expected cell outage, expected all-down)
        let rows = [
            (1e-5, 1e-5, 1.99e-5, 1e-5),
            (1e-5, 1e-6, 1.10e-5, 1e-6),
            (1e-5, 1e-7, 1.01e-5, 1e-7),
        ];
        for (du, cu, cell, all_down) in rows {
            let s = scenario(10, du, cu);
            let got_cell = cell_outage(&s);
            assert!((got_cell - cell).abs() / cell < 0.01, "cell {du}/{cu}");
            let got_all = pmf_centralized(&s).p_all_down;
            assert!(
                (got_all - all_down).abs() / all_down < 0.01,
                "all-down {du}/{cu}"
            );
        }
    }

    #[test]
    fn distributed_all_down_is_negligible_next_to_centralized() {
        let s = scenario(10, 1e-5, 1e-5);
        let c = pmf_centralized(&s).p_all_down;
        let d = pmf_distributed(&s).p_all_down;
        assert!(d < 1e-40);
        assert!(c > 1e-6);
    }

    #[test]
    fn symmetric_distributed_pmf() {
        // joint availability 0.5 over two sites
        let s = NetworkScenario::new(2, 0.5, 1.0).unwrap();
        let pmf = pmf_distributed(&s);
        for (got, want) in pmf.pmf.iter().zip([0.25, 0.5, 0.25]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn expected_unavailable_scales_with_sites() {
        let s = scenario(100, 1e-5, 1e-6);
        let e = expected_unavailable(&s);
        assert!((e - 1.10e-3).abs() / 1.10e-3 < 0.01);
    }

    #[test]
    fn means_agree_with_the_closed_form() {
        for (n_c, f_du, f_cu) in [
            (1u32, 0.9, 0.8),
            (10, 0.99999, 0.99999),
            (37, 0.42, 0.7),
            (50, 1.0, 0.5),
        ] {
            let s = NetworkScenario::new(n_c, f_du, f_cu).unwrap();
            let expect = expected_unavailable(&s);
            for pmf in [pmf_centralized(&s), pmf_distributed(&s)] {
                assert!(
                    (pmf.mean - expect).abs() < 1e-12,
                    "{n_c}/{f_du}/{f_cu}: {} vs {expect}",
                    pmf.mean
                );
                let total: f64 = pmf.pmf.iter().sum();
                assert!((total - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn centralized_extremes_dominate() {
        for (n_c, f_du, f_cu) in [(2u32, 0.95, 0.9), (10, 0.99, 0.999), (25, 0.6, 0.5)] {
            let s = NetworkScenario::new(n_c, f_du, f_cu).unwrap();
            let c = pmf_centralized(&s);
            let d = pmf_distributed(&s);
            // no-outage is more likely centralized, and so is total outage
            assert!(c.pmf[0] > d.pmf[0]);
            assert!(c.p_all_down >= d.p_all_down);
        }
    }

    #[test]
    fn single_site_placements_coincide() {
        let s = NetworkScenario::new(1, 0.93, 0.87).unwrap();
        let c = pmf_centralized(&s);
        let d = pmf_distributed(&s);
        for (a, b) in c.pmf.iter().zip(&d.pmf) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn large_site_counts_stay_finite() {
        let s = scenario(10_000, 1e-5, 1e-6);
        let pmf = pmf_distributed(&s);
        assert!(pmf.pmf.iter().all(|p| p.is_finite()));
        let total: f64 = pmf.pmf.iter().sum();
        assert!((total - 1.0).abs() < 1e-9);
        assert!((pmf.mean - expected_unavailable(&s)).abs() < 1e-9);
    }
}
