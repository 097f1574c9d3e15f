//! CU/DU application availability.
//!
//! A single application instance alternates between up and down with
//! exponential times, so its availability has the two-state closed form
//! `mu / (lambda + mu)`. Replicas fail and recover independently, which
//! makes the number of up replicas binomial; the replicated service is up
//! while at least one replica is.

use crate::ctmc::{build_generator, CtmcModel, Transition};
use crate::error::Error;
use crate::params::RateParams;

/// Distribution of up replicas and the resulting service availability.
#[derive(Debug, Clone)]
pub struct AppAvailability {
    pub replicas: u32,
    /// `pmf[i]` is the probability that exactly `i` replicas are up;
    /// Binomial(replicas, mu/(lambda+mu)).
    pub pmf: Vec<f64>,
    /// 1 - pmf[0].
    pub availability: f64,
}

/// Closed-form availability of one application instance.
pub fn app_single_availability(params: &RateParams) -> f64 {
    let lambda = params.app_failure_rate();
    let mu = params.app_repair_rate();
    mu / (lambda + mu)
}

/// Availability of `replicas` independent instances.
pub fn app_availability(params: &RateParams, replicas: u32) -> Result<AppAvailability, Error> {
    if replicas == 0 {
        return Err(Error::validation("n_s", "replica count must be at least 1"));
    }
    let up = app_single_availability(params);
    let down = 1.0 - up;
    let n = replicas as usize;
    let mut pmf = Vec::with_capacity(n + 1);
    for i in 0..=n {
        pmf.push(binomial_coefficient(n, i) * up.powi(i as i32) * down.powi((n - i) as i32));
    }
    Ok(AppAvailability {
        replicas,
        availability: 1.0 - down.powi(replicas as i32),
        pmf,
    })
}

/// Exact for the small replica counts used here (n below ~50).
fn binomial_coefficient(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    let mut c = 1.0;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c
}

/// Birth-death chain on the number of up replicas, kept for
/// cross-validating the closed form. State `i` fails toward `i-1` at
/// `i * lambda` and repairs toward `i+1` at `(n - i) * mu`.
pub fn app_model_as_ctmc(params: &RateParams, replicas: u32) -> Result<CtmcModel, Error> {
    if replicas == 0 {
        return Err(Error::validation("n_s", "replica count must be at least 1"));
    }
    let lambda = params.app_failure_rate();
    let mu = params.app_repair_rate();
    let states: Vec<String> = (0..=replicas).map(|i| i.to_string()).collect();
    let mut transitions = Vec::new();
    for i in 0..=replicas {
        if i > 0 {
            transitions.push(Transition::new(
                i.to_string(),
                (i - 1).to_string(),
                f64::from(i) * lambda,
            ));
        }
        if i < replicas {
            transitions.push(Transition::new(
                i.to_string(),
                (i + 1).to_string(),
                f64::from(replicas - i) * mu,
            ));
        }
    }
    build_generator(states, &transitions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ctmc::solve_direct;
    use crate::units::Duration;

    fn params(mttf_s: &str, mttr_s: &str) -> RateParams {
        RateParams::new(
            mttf_s.parse().unwrap(),
            mttr_s.parse().unwrap(),
            Duration::months(10.0).unwrap(),
            Duration::minutes(90.0).unwrap(),
            Duration::years(10.0).unwrap(),
            Duration::hours(10.0).unwrap(),
            Duration::seconds(10.0).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn single_availability_examples() {
        assert_eq!(app_single_availability(&params("1h", "1h")), 0.5);
        // 2 months of uptime against 30 minutes of repair
        let a = app_single_availability(&params("2months", "30min"));
        assert!((a - 86_400.0 / 86_430.0).abs() < 1e-15);
        // near-instantaneous repair
        let a = app_single_availability(&params("2months", "0.001s"));
        assert!(a > 1.0 - 1e-9);
    }

    #[test]
    fn replicated_availability_examples() {
        // per-replica down-probability 0.1 -> two replicas give 0.99
        let p = params("9h", "1h");
        let app = app_availability(&p, 2).unwrap();
        assert!((app.availability - 0.99).abs() < 1e-12);

        // two replicas at 30 min repair: six nines
        let app = app_availability(&params("2months", "30min"), 2).unwrap();
        let outage = 1.0 - app.availability;
        assert!((outage - 1.2049e-7).abs() / 1.2049e-7 < 1e-3);
        assert_eq!(crate::units::nines(app.availability).unwrap(), 6);

        // two replicas at 5 min repair: eight nines
        let app = app_availability(&params("2months", "5min"), 2).unwrap();
        let outage = 1.0 - app.availability;
        assert!((outage - 3.349e-9).abs() / 3.349e-9 < 1e-3);
        assert_eq!(crate::units::nines(app.availability).unwrap(), 8);

        assert!(app_availability(&params("1h", "1h"), 0).is_err());
    }

    #[test]
    fn pmf_sums_to_one_and_single_matches() {
        let p = params("17d", "25min");
        for n in 1..=8 {
            let app = app_availability(&p, n).unwrap();
            let sum: f64 = app.pmf.iter().sum();
            assert!((sum - 1.0).abs() < 1e-12, "n={n}");
        }
        let app = app_availability(&p, 1).unwrap();
        assert_eq!(app.availability, app_single_availability(&p));
    }

    #[test]
    fn symmetric_two_replica_pmf() {
        let app = app_availability(&params("1h", "1h"), 2).unwrap();
        assert_eq!(app.pmf, vec![0.25, 0.5, 0.25]);
    }

    #[test]
    fn availability_strictly_increases_with_replicas() {
        let p = params("7d", "30min");
        let mut last_outage = 1.0;
        let mut last_avail = 0.0;
        for n in 1..=8 {
            let app = app_availability(&p, n).unwrap();
            // the all-down probability keeps shrinking even after the
            // availability saturates to 1.0 in f64
            assert!(app.pmf[0] < last_outage);
            assert!(app.availability >= last_avail);
            last_outage = app.pmf[0];
            last_avail = app.availability;
        }
    }

    #[test]
    fn ctmc_degenerates_to_two_state_chain() {
        let p = params("2months", "30min");
        let m = app_model_as_ctmc(&p, 1).unwrap();
        assert_eq!(m.len(), 2);
        let pi = solve_direct(&m).unwrap();
        let up_state = m.state_index("1").unwrap();
        assert!((pi.probability(up_state) - app_single_availability(&p)).abs() < 1e-14);
    }

    #[test]
    fn ctmc_stationary_law_is_binomial() {
        let p = params("11d", "40min");
        let n = 3u32;
        let m = app_model_as_ctmc(&p, n).unwrap();
        let pi = solve_direct(&m).unwrap();
        let app = app_availability(&p, n).unwrap();
        for i in 0..=n as usize {
            let idx = m.state_index(&i.to_string()).unwrap();
            assert!(
                (pi.probability(idx) - app.pmf[i]).abs() < 1e-12,
                "i={i}: {} vs {}",
                pi.probability(idx),
                app.pmf[i]
            );
        }
    }
}
