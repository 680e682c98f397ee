//! Unary Grover search: repeated passes of `𝓘𝓑†𝓞𝓑` on a single particle.
//!
//! Starting from `|1⟩`, each pass sends the particle through the balanced
//! splitter, the box, the inverse splitter and the inverter
//! `𝓘 = −e^{−iπ|1⟩⟨1|} = 2|1⟩⟨1| − 1`. After `k` passes one more splitter
//! (no box transit) brings the amplitude out at the target slot, where the
//! detectors sit.

use std::f64::consts::PI;
use std::str::FromStr;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::mode::ModeState;
use crate::oracle::OracleBox;
use crate::splitter::{Direction, SplitterNetwork};
use crate::{Error, Result};

/// Iteration count and the closed-form success probability it predicts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroverSchedule {
    pub n: usize,
    pub k: usize,
    /// `asin(1/√n)`.
    pub theta: f64,
    /// `sin²((2k+1)θ)`.
    pub predicted_success: f64,
}

impl GroverSchedule {
    pub fn with_iterations(n: usize, k: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("search needs n >= 1".into()));
        }
        let theta = (1.0 / (n as f64).sqrt()).asin();
        Ok(Self {
            n,
            k,
            theta,
            predicted_success: closed_form_success(theta, k),
        })
    }
}

fn closed_form_success(theta: f64, k: usize) -> f64 {
    ((2 * k + 1) as f64 * theta).sin().powi(2)
}

// Two candidates closer than this are treated as tied; n = 2 ties exactly
// in exact arithmetic but not in floating point.
const TIE_TOL: f64 = 1e-12;

/// Best iteration count by direct scan of `k ∈ [0, ⌈π√n/4⌉ + 2]`, ties
/// going to the smaller (cheaper) `k`.
pub fn optimal_iterations(n: usize) -> Result<GroverSchedule> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "optimal iterations need n >= 2 (got {n}); one slot needs no search"
        )));
    }
    let k_max = (PI * (n as f64).sqrt() / 4.0).ceil() as usize + 2;
    let mut best = GroverSchedule::with_iterations(n, 0)?;
    for k in 1..=k_max {
        let candidate = GroverSchedule::with_iterations(n, k)?;
        if candidate.predicted_success > best.predicted_success + TIE_TOL {
            best = candidate;
        }
    }
    Ok(best)
}

/// `𝓘 = 2|1⟩⟨1| − 1`: every mode except the first picks up a phase of −1.
pub fn apply_inverter(state: &ModeState) -> ModeState {
    let mut amplitudes = state.amplitudes().to_vec();
    invert_slice(&mut amplitudes);
    ModeState::from_raw(amplitudes)
}

pub(crate) fn invert_slice(amplitudes: &mut [Complex64]) {
    for a in amplitudes.iter_mut().skip(1) {
        *a = -*a;
    }
}

fn check_balanced(net: &SplitterNetwork, n: usize) -> Result<()> {
    Error::check_dim(n, net.n())?;
    if net.direction() != Direction::Forward || net.len() + 1 != n {
        return Err(Error::Contract(
            "grover pass needs the forward balanced network for n".into(),
        ));
    }
    Ok(())
}

/// One pass `𝓘·𝓑†·𝓞·𝓑`; bills exactly one transit on `oracle`.
pub fn grover_pass(
    state: &ModeState,
    oracle: &OracleBox,
    net: &SplitterNetwork,
) -> Result<ModeState> {
    Error::check_dim(oracle.n(), state.n())?;
    check_balanced(net, state.n())?;
    let mut amplitudes = state.amplitudes().to_vec();
    pass_slice(&mut amplitudes, oracle, net)?;
    Ok(ModeState::from_raw(amplitudes))
}

/// The same pass on an unnormalized field, shared with the wave device.
pub(crate) fn pass_slice(
    amplitudes: &mut [Complex64],
    oracle: &OracleBox,
    net: &SplitterNetwork,
) -> Result<()> {
    net.apply_to_slice(amplitudes)?;
    oracle.transit_slice(amplitudes)?;
    net.apply_adjoint_to_slice(amplitudes)?;
    invert_slice(amplitudes);
    Ok(())
}

/// Either a fixed iteration count or the scan optimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Iterations {
    #[default]
    Auto,
    Fixed(usize),
}

impl FromStr for Iterations {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Iterations::Auto);
        }
        s.parse()
            .map(Iterations::Fixed)
            .map_err(|_| Error::Domain(format!("iterations must be 'auto' or a count, got {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchConfig {
    pub iterations: Iterations,
    pub seed: u64,
    /// Place detectors behind the box, billing one extra transit.
    pub bill_final_transit: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracePoint {
    pub iteration: usize,
    pub target_probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchOutcome {
    pub n: usize,
    pub iterations: usize,
    pub measured_slot: usize,
    pub success: bool,
    pub transits: u64,
    /// Target detection probability of the final state.
    pub success_probability: f64,
    /// Target probability of `𝓑·state` at iteration 0 and after each pass.
    pub trace: Vec<TracePoint>,
}

/// A search run up to (not including) detection.
#[derive(Debug, Clone)]
pub struct PreparedSearch {
    pub iterations: usize,
    pub transits: u64,
    /// The state at the detector plane.
    pub final_state: ModeState,
    pub trace: Vec<TracePoint>,
}

impl PreparedSearch {
    pub fn run(n: usize, target: usize, config: &SearchConfig) -> Result<Self> {
        let oracle = OracleBox::new(n, target)?;
        let k = match config.iterations {
            Iterations::Fixed(k) => k,
            Iterations::Auto if n == 1 => 0,
            Iterations::Auto => optimal_iterations(n)?.k,
        };
        let net = SplitterNetwork::synthesize_balanced(n)?;

        let mut state = ModeState::basis(n, 1)?;
        let mut trace = Vec::with_capacity(k + 1);
        let mut record = |iteration: usize, state: &ModeState| -> Result<()> {
            let localized = net.apply(state)?;
            trace.push(TracePoint {
                iteration,
                target_probability: localized.probability(target)?,
            });
            Ok(())
        };
        record(0, &state)?;
        for iteration in 1..=k {
            state = grover_pass(&state, &oracle, &net)?;
            record(iteration, &state)?;
        }
        let mut final_state = net.apply(&state)?;
        if config.bill_final_transit {
            final_state = oracle.quantum_query(&final_state)?;
        }
        Ok(Self {
            iterations: k,
            transits: oracle.transits(),
            final_state,
            trace,
        })
    }

    pub fn measure(&self, target: usize, seed: u64) -> Result<SearchOutcome> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let measured_slot = self.final_state.measure_with(&mut rng)?;
        Ok(SearchOutcome {
            n: self.final_state.n(),
            iterations: self.iterations,
            measured_slot,
            success: measured_slot == target,
            transits: self.transits,
            success_probability: self.final_state.probability(target)?,
            trace: self.trace.clone(),
        })
    }
}

/// Full search: `k` passes from `|1⟩`, localization, then detection.
pub fn run_search(n: usize, target: usize, config: &SearchConfig) -> Result<SearchOutcome> {
    PreparedSearch::run(n, target, config)?.measure(target, config.seed)
}

/// Simulated target probability after `0..=k_max` passes.
pub fn success_trace(n: usize, target: usize, k_max: usize) -> Result<Vec<f64>> {
    let config = SearchConfig {
        iterations: Iterations::Fixed(k_max),
        ..SearchConfig::default()
    };
    let prepared = PreparedSearch::run(n, target, &config)?;
    Ok(prepared
        .trace
        .into_iter()
        .map(|p| p.target_probability)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_examples() {
        let s = optimal_iterations(4).unwrap();
        assert_eq!(s.k, 1);
        assert!((s.theta - PI / 6.0).abs() < 1e-15);
        assert!((s.predicted_success - 1.0).abs() < 1e-15);

        let s = optimal_iterations(100).unwrap();
        assert_eq!(s.k, 7);
        // sin²(15·asin(0.1)), from an independent scan
        assert!((s.predicted_success - 0.995_344_400_357_599_2).abs() < 1e-12);

        let s = optimal_iterations(2).unwrap();
        assert_eq!(s.k, 0);
        assert!((s.predicted_success - 0.5).abs() < 1e-15);
    }

    #[test]
    fn schedule_rejects_single_slot() {
        assert!(matches!(optimal_iterations(1), Err(Error::Domain(_))));
        assert!(matches!(optimal_iterations(0), Err(Error::Domain(_))));
    }

    #[test]
    fn larger_schedules() {
        assert_eq!(optimal_iterations(256).unwrap().k, 12);
        assert_eq!(optimal_iterations(1024).unwrap().k, 25);
    }

    #[test]
    fn inverter_on_basis_states() {
        let one = ModeState::basis(3, 1).unwrap();
        assert_eq!(apply_inverter(&one), one);
        let two = ModeState::basis(3, 2).unwrap();
        assert_eq!(
            apply_inverter(&two).amplitude(2).unwrap(),
            Complex64::new(-1.0, 0.0)
        );
    }

    #[test]
    fn single_pass_is_exact_at_four_slots() {
        let oracle = OracleBox::new(4, 3).unwrap();
        let net = SplitterNetwork::synthesize_balanced(4).unwrap();
        let state = grover_pass(&ModeState::basis(4, 1).unwrap(), &oracle, &net).unwrap();
        let out = net.apply(&state).unwrap();
        assert!((out.probability(3).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(oracle.transits(), 1);
    }

    #[test]
    fn pass_rejects_wrong_network() {
        let oracle = OracleBox::new(4, 3).unwrap();
        let net = SplitterNetwork::synthesize_balanced(4).unwrap().adjoint();
        let s = ModeState::basis(4, 1).unwrap();
        assert!(matches!(
            grover_pass(&s, &oracle, &net),
            Err(Error::Contract(_))
        ));
        let small = SplitterNetwork::synthesize_balanced(3).unwrap();
        assert!(matches!(
            grover_pass(&s, &oracle, &small),
            Err(Error::Dimension { .. })
        ));
        assert_eq!(oracle.transits(), 0);
    }

    #[test]
    fn hundred_slots_after_seven_passes() {
        let trace = success_trace(100, 42, 7).unwrap();
        let want = optimal_iterations(100).unwrap().predicted_success;
        assert!((trace[7] - want).abs() < 1e-9);
    }

    #[test]
    fn exact_search_at_four_slots() {
        for seed in 0..20 {
            let out = run_search(
                4,
                2,
                &SearchConfig {
                    seed,
                    ..SearchConfig::default()
                },
            )
            .unwrap();
            assert_eq!(out.measured_slot, 2);
            assert!(out.success);
            assert_eq!(out.transits, 1);
        }
    }

    #[test]
    fn zero_iterations_is_a_uniform_guess() {
        let config = SearchConfig {
            iterations: Iterations::Fixed(0),
            ..SearchConfig::default()
        };
        let prepared = PreparedSearch::run(100, 55, &config).unwrap();
        assert_eq!(prepared.transits, 0);
        let hits = (0..10_000)
            .filter(|&seed| prepared.measure(55, seed).unwrap().success)
            .count();
        // binomial(10^4, 0.01): mean 100, sd about 10
        assert!((50..=150).contains(&hits), "hits = {hits}");
    }

    #[test]
    fn final_transit_flag_bills_one_more() {
        let config = SearchConfig {
            bill_final_transit: true,
            ..SearchConfig::default()
        };
        let out = run_search(100, 9, &config).unwrap();
        assert_eq!(out.iterations, 7);
        assert_eq!(out.transits, 8);
    }

    #[test]
    fn invalid_target() {
        assert!(matches!(
            run_search(4, 5, &SearchConfig::default()),
            Err(Error::Index { index: 5, n: 4 })
        ));
    }

    #[test]
    fn small_traces() {
        let t = success_trace(4, 1, 2).unwrap();
        for (got, want) in t.iter().zip([0.25, 1.0, 0.25]) {
            assert!((got - want).abs() < 1e-12);
        }
        for p in success_trace(2, 2, 5).unwrap() {
            assert!((p - 0.5).abs() < 1e-12);
        }
        let t = success_trace(37, 5, 0).unwrap();
        assert!((t[0] - 1.0 / 37.0).abs() < 1e-12);
    }

    #[test]
    fn iterations_parse() {
        assert_eq!("auto".parse::<Iterations>().unwrap(), Iterations::Auto);
        assert_eq!("12".parse::<Iterations>().unwrap(), Iterations::Fixed(12));
        assert!("x".parse::<Iterations>().is_err());
    }
}
