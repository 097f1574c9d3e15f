//! Finite continuous-time Markov chains and their stationary distributions.
//!
//! A chain is a list of opaque state labels plus a dense generator matrix
//! `Q` (off-diagonal entries are transition rates, each diagonal entry is
//! minus its row sum). Two independent solvers are provided:
//!
//! * [`solve_direct`] solves the balance equations `pi Q = 0` with the
//!   normalization `sum(pi) = 1` substituted for one equation, by Gaussian
//!   elimination with partial pivoting.
//! * [`solve_embedded_dtmc`] forms the jump chain `P` with
//!   `p_ij = q_ij / |q_ii|`, finds its stationary vector, then rescales by
//!   the mean holding times `1 / |q_ii|` and renormalizes. The jump-chain
//!   stationary system is solved directly rather than by power iteration:
//!   chains mixing metastable cycles at very different rates can leave the
//!   jump chain with a vanishing spectral gap, where no iteration-residual
//!   target bounds the error.
//!
//! The state spaces in this crate stay tiny (tens of states), so dense
//! storage and O(n^3) elimination are the right tools.

use std::collections::HashMap;

use crate::error::Error;

/// Stationary solves must leave a balance residual no larger than this
/// times the largest generator entry.
pub const RESIDUAL_BOUND: f64 = 1e-10;

/// Probabilities this far below zero are treated as solver failure rather
/// than float noise.
pub const NEGATIVE_PROBABILITY_TOLERANCE: f64 = 1e-14;

/// One directed transition for [`build_generator`].
#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    pub from: String,
    pub to: String,
    pub rate: f64,
}

impl Transition {
    pub fn new(from: impl Into<String>, to: impl Into<String>, rate: f64) -> Transition {
        Transition {
            from: from.into(),
            to: to.into(),
            rate,
        }
    }
}

/// A finite CTMC: ordered state labels and the dense generator.
#[derive(Debug, Clone)]
pub struct CtmcModel {
    states: Vec<String>,
    // row-major n x n
    generator: Vec<f64>,
}

impl CtmcModel {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_index(&self, label: &str) -> Option<usize> {
        self.states.iter().position(|s| s == label)
    }

    pub fn rate(&self, from: usize, to: usize) -> f64 {
        self.generator[from * self.len() + to]
    }

    fn row(&self, i: usize) -> &[f64] {
        let n = self.len();
        &self.generator[i * n..(i + 1) * n]
    }

    /// Total exit rate of state `i` (the negated diagonal entry).
    pub fn exit_rate(&self, i: usize) -> f64 {
        -self.rate(i, i)
    }

    /// Largest absolute entry of the generator.
    pub fn max_abs_rate(&self) -> f64 {
        self.generator.iter().fold(0.0, |m, q| m.max(q.abs()))
    }

    /// Plain-text dump: one line per state, label then the generator row,
    /// tab-separated.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, label) in self.states.iter().enumerate() {
            out.push_str(label);
            for q in self.row(i) {
                out.push('\t');
                out.push_str(&format!("{q:e}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Assembles a generator from labeled transitions.
///
/// Rates must be positive and finite, endpoints must name listed states,
/// self-loops are rejected, and parallel transitions between the same pair
/// of states are summed. The positive-rate digraph must form a single
/// strongly connected component.
pub fn build_generator(
    states: Vec<String>,
    transitions: &[Transition],
) -> Result<CtmcModel, Error> {
    let n = states.len();
    if n == 0 {
        return Err(Error::validation("states", "state list is empty"));
    }
    let mut index = HashMap::with_capacity(n);
    for (i, label) in states.iter().enumerate() {
        if index.insert(label.clone(), i).is_some() {
            return Err(Error::DuplicateState {
                state: label.clone(),
            });
        }
    }

    let mut generator = vec![0.0; n * n];
    for t in transitions {
        let from = *index.get(&t.from).ok_or_else(|| Error::UnknownState {
            from: t.from.clone(),
            to: t.to.clone(),
            state: t.from.clone(),
        })?;
        let to = *index.get(&t.to).ok_or_else(|| Error::UnknownState {
            from: t.from.clone(),
            to: t.to.clone(),
            state: t.to.clone(),
        })?;
        if from == to {
            return Err(Error::SelfLoop {
                state: t.from.clone(),
            });
        }
        if !t.rate.is_finite() || t.rate <= 0.0 {
            return Err(Error::NonPositiveRate {
                from: t.from.clone(),
                to: t.to.clone(),
                rate: t.rate,
            });
        }
        generator[from * n + to] += t.rate;
    }
    for i in 0..n {
        let row_sum: f64 = (0..n)
            .filter(|&j| j != i)
            .map(|j| generator[i * n + j])
            .sum();
        generator[i * n + i] = -row_sum;
    }

    let model = CtmcModel { states, generator };
    check_irreducible(&model)?;
    Ok(model)
}

/// Kosaraju-style double DFS; errors name a state outside the component
/// of state 0.
fn check_irreducible(model: &CtmcModel) -> Result<(), Error> {
    let n = model.len();
    if n == 1 {
        return Ok(());
    }
    let reach = |transpose: bool| -> Vec<bool> {
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for (j, j_seen) in seen.iter_mut().enumerate() {
                let connected = if transpose {
                    j != i && model.rate(j, i) > 0.0
                } else {
                    j != i && model.rate(i, j) > 0.0
                };
                if connected && !*j_seen {
                    *j_seen = true;
                    stack.push(j);
                }
            }
        }
        seen
    };
    let from_zero = reach(false);
    let to_zero = reach(true);
    for i in 0..n {
        if !from_zero[i] || !to_zero[i] {
            return Err(Error::Reducible {
                state: model.states[i].clone(),
                other: model.states[0].clone(),
            });
        }
    }
    Ok(())
}

/// Stationary probabilities aligned with [`CtmcModel::states`], plus the
/// max-norm balance residual `||pi Q||_inf` achieved by the solve.
#[derive(Debug, Clone)]
pub struct StationaryDistribution {
    probabilities: Vec<f64>,
    residual: f64,
}

impl StationaryDistribution {
    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn probability(&self, i: usize) -> f64 {
        self.probabilities[i]
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }
}

/// Solves `pi Q = 0`, `sum(pi) = 1` by replacing the last balance equation
/// of the transposed system with the normalization row.
pub fn solve_direct(model: &CtmcModel) -> Result<StationaryDistribution, Error> {
    let n = model.len();
    // A = Q^T with its last row replaced by ones; b = e_n.
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = model.rate(j, i);
        }
    }
    for j in 0..n {
        a[(n - 1) * n + j] = 1.0;
    }
    let mut b = vec![0.0; n];
    b[n - 1] = 1.0;

    let pi = lu_solve(&mut a, &mut b, n)?;
    finalize(model, pi)
}

/// The jump-chain route: stationary vector of `P`, rescaled by mean
/// holding times.
pub fn solve_embedded_dtmc(model: &CtmcModel) -> Result<StationaryDistribution, Error> {
    let n = model.len();
    let exit: Vec<f64> = (0..n).map(|i| model.exit_rate(i)).collect();
    if let Some(i) = exit.iter().position(|e| *e <= 0.0) {
        return Err(Error::Absorbing {
            state: model.states[i].clone(),
        });
    }

    // v (P - I) = 0 with sum(v) = 1, via the same replace-one-equation
    // technique on the transposed system: a[i][j] = p_ji - delta_ij.
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = if i == j {
                -1.0
            } else {
                model.rate(j, i) / exit[j]
            };
        }
    }
    for j in 0..n {
        a[(n - 1) * n + j] = 1.0;
    }
    let mut b = vec![0.0; n];
    b[n - 1] = 1.0;
    let v = lu_solve(&mut a, &mut b, n)?;

    // Time spent in a state is its jump-chain weight times its mean
    // holding time.
    let pi: Vec<f64> = v.iter().zip(&exit).map(|(w, e)| w / e).collect();
    finalize(model, pi)
}

/// Gaussian elimination with partial pivoting; `a` is row-major n x n.
fn lu_solve(a: &mut [f64], b: &mut [f64], n: usize) -> Result<Vec<f64>, Error> {
    let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot = a[col * n + col].abs();
        for r in col + 1..n {
            let candidate = a[r * n + col].abs();
            if candidate > pivot {
                pivot = candidate;
                pivot_row = r;
            }
        }
        if pivot <= scale * 1e-300 || pivot == 0.0 {
            return Err(Error::Numeric {
                reason: format!(
                    "singular system: pivot {pivot:e} at column {col} (matrix scale {scale:e})"
                ),
            });
        }
        if pivot_row != col {
            for j in 0..n {
                a.swap(col * n + j, pivot_row * n + j);
            }
            b.swap(col, pivot_row);
        }
        let d = a[col * n + col];
        for r in col + 1..n {
            let factor = a[r * n + col] / d;
            if factor == 0.0 {
                continue;
            }
            a[r * n + col] = 0.0;
            for j in col + 1..n {
                a[r * n + j] -= factor * a[col * n + j];
            }
            b[r] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut acc = b[i];
        for j in i + 1..n {
            acc -= a[i * n + j] * x[j];
        }
        x[i] = acc / a[i * n + i];
    }
    Ok(x)
}

/// Clamps float-noise negatives, renormalizes, and enforces the residual
/// bound shared by both solvers.
fn finalize(model: &CtmcModel, mut pi: Vec<f64>) -> Result<StationaryDistribution, Error> {
    let n = model.len();
    for (i, p) in pi.iter_mut().enumerate() {
        if *p < 0.0 {
            if *p < -NEGATIVE_PROBABILITY_TOLERANCE {
                return Err(Error::Numeric {
                    reason: format!("probability of state `{}` solved to {p:e}", model.states[i]),
                });
            }
            *p = 0.0;
        }
    }
    let sum: f64 = pi.iter().sum();
    if !(sum.is_finite() && sum > 0.0) {
        return Err(Error::Numeric {
            reason: format!("probabilities sum to {sum}"),
        });
    }
    for p in pi.iter_mut() {
        *p /= sum;
    }

    let mut residual = 0.0f64;
    for j in 0..n {
        let mut balance = 0.0;
        for (i, p) in pi.iter().enumerate() {
            balance += p * model.rate(i, j);
        }
        residual = residual.max(balance.abs());
    }
    let bound = RESIDUAL_BOUND * model.max_abs_rate();
    if residual > bound {
        return Err(Error::Numeric {
            reason: format!("balance residual {residual:e} exceeds bound {bound:e}"),
        });
    }
    Ok(StationaryDistribution {
        probabilities: pi,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_state(lambda: f64, mu: f64) -> CtmcModel {
        build_generator(
            vec!["up".into(), "down".into()],
            &[
                Transition::new("up", "down", lambda),
                Transition::new("down", "up", mu),
            ],
        )
        .unwrap()
    }

    #[test]
    fn two_state_generator_layout() {
        let m = two_state(2.0, 3.0);
        assert_eq!(m.rate(0, 0), -2.0);
        assert_eq!(m.rate(0, 1), 2.0);
        assert_eq!(m.rate(1, 0), 3.0);
        assert_eq!(m.rate(1, 1), -3.0);
    }

    #[test]
    fn duplicate_edges_sum() {
        let m = build_generator(
            vec!["a".into(), "b".into()],
            &[
                Transition::new("a", "b", 1.0),
                Transition::new("a", "b", 1.0),
                Transition::new("b", "a", 5.0),
            ],
        )
        .unwrap();
        assert_eq!(m.rate(0, 1), 2.0);
    }

    #[test]
    fn construction_errors() {
        let err = build_generator(
            vec!["a".into(), "b".into()],
            &[
                Transition::new("a", "nowhere", 1.0),
                Transition::new("b", "a", 1.0),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::UnknownState { ref state, .. } if state == "nowhere"));

        let err = build_generator(
            vec!["a".into(), "b".into()],
            &[
                Transition::new("a", "b", 0.0),
                Transition::new("b", "a", 1.0),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonPositiveRate { .. }));

        let err = build_generator(
            vec!["a".into(), "b".into()],
            &[
                Transition::new("a", "a", 1.0),
                Transition::new("a", "b", 1.0),
                Transition::new("b", "a", 1.0),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::SelfLoop { .. }));

        // b and c unreachable from a's component
        let err = build_generator(
            vec!["a".into(), "b".into(), "c".into()],
            &[
                Transition::new("b", "c", 1.0),
                Transition::new("c", "b", 1.0),
                Transition::new("b", "a", 1.0),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Reducible { .. }));
    }

    #[test]
    fn symmetric_two_state_is_half_half() {
        let m = two_state(0.25, 0.25);
        for solve in [solve_direct, solve_embedded_dtmc] {
            let pi = solve(&m).unwrap();
            assert!((pi.probability(0) - 0.5).abs() < 1e-14);
            assert!((pi.probability(1) - 0.5).abs() < 1e-14);
        }
    }

    #[test]
    fn two_state_closed_form() {
        let (lambda, mu) = (1.0 / 5_184_000.0, 1.0 / 1_800.0);
        let m = two_state(lambda, mu);
        let pi = solve_direct(&m).unwrap();
        assert!((pi.probability(0) - mu / (lambda + mu)).abs() < 1e-15);
        assert!((pi.probability(1) - lambda / (lambda + mu)).abs() < 1e-15);
    }

    // Three-state repair chain solved by hand from the balance equations
    // with lambda_o=1e-3, mu_o=1e-1, lambda_h=1e-4, mu_h=1e-2; the exact
    // fractions are 100100/102111, 1000/102111, and 1/101.
    #[test]
    fn three_state_matches_hand_solution() {
        let m = build_generator(
            vec!["up".into(), "os_down".into(), "hw_down".into()],
            &[
                Transition::new("up", "os_down", 1e-3),
                Transition::new("os_down", "up", 1e-1),
                Transition::new("up", "hw_down", 1e-4),
                Transition::new("os_down", "hw_down", 1e-4),
                Transition::new("hw_down", "up", 1e-2),
            ],
        )
        .unwrap();
        let expected = [100_100.0 / 102_111.0, 1_000.0 / 102_111.0, 1.0 / 101.0];
        for solve in [solve_direct, solve_embedded_dtmc] {
            let pi = solve(&m).unwrap();
            for (i, e) in expected.iter().enumerate() {
                assert!((pi.probability(i) - e).abs() < 1e-13, "state {i}");
            }
        }
    }

    #[test]
    fn uniform_three_cycle() {
        let m = build_generator(
            vec!["a".into(), "b".into(), "c".into()],
            &[
                Transition::new("a", "b", 2.0),
                Transition::new("b", "c", 2.0),
                Transition::new("c", "a", 2.0),
            ],
        )
        .unwrap();
        let pi = solve_embedded_dtmc(&m).unwrap();
        for i in 0..3 {
            assert!((pi.probability(i) - 1.0 / 3.0).abs() < 1e-13);
        }
    }

    #[test]
    fn absorbing_state_rejected_by_embedded_solver() {
        // single state: trivially irreducible, but exit rate is zero
        let m = build_generator(vec!["only".into()], &[]).unwrap();
        let pi = solve_direct(&m).unwrap();
        assert_eq!(pi.probability(0), 1.0);
        assert!(matches!(
            solve_embedded_dtmc(&m).unwrap_err(),
            Error::Absorbing { .. }
        ));
    }

    #[test]
    fn residual_and_sum_invariants() {
        let m = two_state(1e-8, 1e-2);
        for solve in [solve_direct, solve_embedded_dtmc] {
            let pi = solve(&m).unwrap();
            let total: f64 = pi.probabilities().iter().sum();
            assert!((total - 1.0).abs() < 1e-12);
            assert!(pi.residual() <= RESIDUAL_BOUND * m.max_abs_rate());
        }
    }

    #[test]
    fn dump_lists_every_state() {
        let m = two_state(1.0, 2.0);
        let dump = m.dump();
        let lines: Vec<&str> = dump.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("up\t"));
        assert_eq!(lines[1].split('\t').count(), 3);
    }
}
