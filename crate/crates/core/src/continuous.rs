//! Continuous-time search under `H = E(|u⟩⟨u| + |ψ⟩⟨ψ|)`.
//!
//! `H` has rank two, so `e^{−iHt}` acts nontrivially only on
//! `span{|u⟩, |ψ⟩}`. In the orthonormal basis `(|u⟩, |w⟩)` with
//! `|ψ⟩ = c|u⟩ + s|w⟩`, `H = E(1 + K)` where `K² = x²·1` and `x = |c|`, so
//!
//! ```text
//! e^{−iHt} = e^{−iEt} (cos(Ext)·1 − i sin(Ext)/x · K)
//! ```
//!
//! on the span and the identity on its complement. For the uniform start
//! the target probability is `sin²(Ext) + x²cos²(Ext)`, peaking at
//! `t* = π/(2Ex)`.
//!
//! [`ContinuousProblem::evolve_oracle`] integrates the Schrödinger equation
//! by fixed-step RK4 in the full `n`-dimensional space and exists only to
//! validate the analytic route.

use num_complex::Complex64;
use serde::Serialize;

use crate::mode::ModeState;
use crate::{Error, Result, API_NORM_TOL};

/// Largest step the RK4 oracle accepts regardless of `t`.
pub const ORACLE_STEP_CAP: f64 = 1e-2;

/// Norm drift beyond which the oracle refuses its own answer.
pub const ORACLE_DRIFT_LIMIT: f64 = 1e-6;

// Below this the start state has no measurable overlap with the target.
const ORTHOGONAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ContinuousProblem {
    target: usize,
    psi: ModeState,
    energy: f64,
    /// `⟨u|ψ⟩`
    overlap: Complex64,
    /// `|ψ⟩ − ⟨u|ψ⟩|u⟩`, normalized; `None` when `ψ ∝ |u⟩`.
    complement: Option<Vec<Complex64>>,
    complement_weight: f64,
}

/// Output of the step integrator.
#[derive(Debug, Clone)]
pub struct Propagated {
    /// Not renormalized.
    pub state: ModeState,
    pub norm_drift: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesPoint {
    pub t: f64,
    pub target_probability: f64,
}

impl ContinuousProblem {
    pub fn new(psi: ModeState, target: usize, energy: f64) -> Result<Self> {
        Error::check_index(target, psi.n())?;
        if !(energy > 0.0 && energy.is_finite()) {
            return Err(Error::Domain(format!(
                "energy scale must be positive, got {energy}"
            )));
        }
        if (psi.norm_sqr() - 1.0).abs() > API_NORM_TOL {
            return Err(Error::Contract("start state must be normalized".into()));
        }
        let overlap = psi.amplitudes()[target - 1];
        let mut w: Vec<Complex64> = psi.amplitudes().to_vec();
        w[target - 1] = Complex64::new(0.0, 0.0);
        let weight = w.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let complement = (weight > ORTHOGONAL_TOL).then(|| w.iter().map(|a| a / weight).collect());
        Ok(Self {
            target,
            psi,
            energy,
            overlap,
            complement,
            complement_weight: if weight > ORTHOGONAL_TOL { weight } else { 0.0 },
        })
    }

    /// The canonical setup: start in the uniform superposition.
    pub fn uniform(n: usize, target: usize, energy: f64) -> Result<Self> {
        Self::new(ModeState::uniform(n)?, target, energy)
    }

    pub fn n(&self) -> usize {
        self.psi.n()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn psi(&self) -> &ModeState {
        &self.psi
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// `x = |⟨ψ|u⟩|`.
    pub fn x(&self) -> f64 {
        self.overlap.norm()
    }

    /// Set when the start state is orthogonal to the target, in which case
    /// the target probability stays zero forever.
    pub fn warning(&self) -> Option<&'static str> {
        (self.x() < ORTHOGONAL_TOL)
            .then_some("start state is orthogonal to the target; target probability stays 0")
    }

    /// `H|φ⟩ = E(|u⟩⟨u|φ⟩ + |ψ⟩⟨ψ|φ⟩)`, for any vector.
    pub fn apply_hamiltonian(&self, phi: &[Complex64]) -> Result<Vec<Complex64>> {
        Error::check_dim(self.n(), phi.len())?;
        let psi = self.psi.amplitudes();
        let proj: Complex64 = psi.iter().zip(phi).map(|(p, f)| p.conj() * f).sum();
        let mut out: Vec<Complex64> = psi.iter().map(|p| p * proj * self.energy).collect();
        out[self.target - 1] += phi[self.target - 1] * self.energy;
        Ok(out)
    }

    /// Dense `n × n` Hamiltonian, row-major.
    pub fn hamiltonian_matrix(&self) -> Vec<Vec<Complex64>> {
        let psi = self.psi.amplitudes();
        (0..self.n())
            .map(|r| {
                (0..self.n())
                    .map(|c| {
                        let mut h = psi[r] * psi[c].conj();
                        if r == c && r == self.target - 1 {
                            h += 1.0;
                        }
                        h * self.energy
                    })
                    .collect()
            })
            .collect()
    }

    /// `⟨φ|H|φ⟩`.
    pub fn energy_expectation(&self, phi: &ModeState) -> Result<f64> {
        let h_phi = self.apply_hamiltonian(phi.amplitudes())?;
        Ok(phi
            .amplitudes()
            .iter()
            .zip(&h_phi)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .re)
    }

    /// `e^{−iHt}|ψ⟩`.
    pub fn evolve(&self, t: f64) -> Result<ModeState> {
        self.evolve_state(&self.psi, t)
    }

    /// `e^{−iHt}` applied to an arbitrary normalized state.
    pub fn evolve_state(&self, initial: &ModeState, t: f64) -> Result<ModeState> {
        Error::check_dim(self.n(), initial.n())?;
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::Domain(format!(
                "time must be finite and >= 0, got {t}"
            )));
        }
        let u = self.target - 1;
        let phi = initial.amplitudes();

        // coordinates in (|u⟩, |w⟩) plus the inert remainder
        let a = phi[u];
        let b: Complex64 = match &self.complement {
            Some(w) => w.iter().zip(phi).map(|(w, p)| w.conj() * p).sum(),
            None => Complex64::new(0.0, 0.0),
        };

        let c = self.overlap;
        let s = self.complement_weight;
        let x = c.norm();
        let x2 = x * x;
        // K = [[x², c·s], [c̄·s, −x²]]
        let ka = a * x2 + b * (c * s);
        let kb = a * (c.conj() * s) - b * x2;

        let angle = self.energy * x * t;
        let sin_over_x = if x == 0.0 {
            self.energy * t
        } else {
            angle.sin() / x
        };
        let global = Complex64::from_polar(1.0, -self.energy * t);
        let minus_i = Complex64::new(0.0, -1.0);
        let a_t = global * (a * angle.cos() + minus_i * sin_over_x * ka);
        let b_t = global * (b * angle.cos() + minus_i * sin_over_x * kb);

        let mut out = phi.to_vec();
        if let Some(w) = &self.complement {
            for (o, wk) in out.iter_mut().zip(w) {
                *o += (b_t - b) * wk;
            }
        }
        out[u] += a_t - a;
        Ok(ModeState::from_raw(out))
    }

    /// Target detection probability at time `t`.
    pub fn target_probability(&self, t: f64) -> Result<f64> {
        self.evolve(t)?.probability(self.target)
    }

    /// `t* = π/(2Ex)`.
    pub fn time_to_peak(&self) -> Result<f64> {
        let x = self.x();
        if x < ORTHOGONAL_TOL {
            return Err(Error::NoPeak);
        }
        Ok(std::f64::consts::PI / (2.0 * self.energy * x))
    }

    /// Analytic `(t, target probability)` samples on `samples + 1` evenly
    /// spaced times in `[0, t_end]`.
    pub fn series(&self, t_end: f64, samples: usize) -> Result<Vec<SeriesPoint>> {
        let samples = samples.max(1);
        (0..=samples)
            .map(|i| {
                let t = t_end * i as f64 / samples as f64;
                Ok(SeriesPoint {
                    t,
                    target_probability: self.target_probability(t)?,
                })
            })
            .collect()
    }

    fn check_step(t: f64, dt: f64) -> Result<()> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::Domain(format!("step must be positive, got {dt}")));
        }
        if dt > 1e-3 * t && dt > ORACLE_STEP_CAP {
            return Err(Error::Accuracy(format!(
                "step {dt} exceeds both 1e-3·t and the cap {ORACLE_STEP_CAP}"
            )));
        }
        Ok(())
    }

    fn rk4_step(&self, phi: &mut [Complex64], h: f64) -> Result<()> {
        // dφ/dt = −iHφ
        let minus_i = Complex64::new(0.0, -1.0);
        let deriv = |v: &[Complex64]| -> Result<Vec<Complex64>> {
            Ok(self
                .apply_hamiltonian(v)?
                .into_iter()
                .map(|z| minus_i * z)
                .collect())
        };
        let shifted = |base: &[Complex64], k: &[Complex64], scale: f64| -> Vec<Complex64> {
            base.iter().zip(k).map(|(b, k)| b + k * scale).collect()
        };
        let k1 = deriv(phi)?;
        let k2 = deriv(&shifted(phi, &k1, h / 2.0))?;
        let k3 = deriv(&shifted(phi, &k2, h / 2.0))?;
        let k4 = deriv(&shifted(phi, &k3, h))?;
        for (i, p) in phi.iter_mut().enumerate() {
            *p += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0);
        }
        Ok(())
    }

    fn drift_checked(phi: Vec<Complex64>) -> Result<Propagated> {
        let norm_drift = (phi.iter().map(|a| a.norm_sqr()).sum::<f64>() - 1.0).abs();
        if norm_drift > ORACLE_DRIFT_LIMIT {
            return Err(Error::Accuracy(format!(
                "norm drifted by {norm_drift:e}; reduce the step"
            )));
        }
        Ok(Propagated {
            state: ModeState::from_raw(phi),
            norm_drift,
        })
    }

    /// Fixed-step RK4 propagation of `|ψ⟩` to time `t` in the full space.
    pub fn evolve_oracle(&self, t: f64, dt: f64) -> Result<Propagated> {
        self.evolve_oracle_from(&self.psi, t, dt)
    }

    pub fn evolve_oracle_from(&self, initial: &ModeState, t: f64, dt: f64) -> Result<Propagated> {
        Error::check_dim(self.n(), initial.n())?;
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::Domain(format!(
                "time must be finite and >= 0, got {t}"
            )));
        }
        let mut phi = initial.amplitudes().to_vec();
        if t == 0.0 {
            return Self::drift_checked(phi);
        }
        Self::check_step(t, dt)?;
        let steps = (t / dt).ceil() as usize;
        let h = t / steps as f64;
        for _ in 0..steps {
            self.rk4_step(&mut phi, h)?;
        }
        Self::drift_checked(phi)
    }

    /// RK4 target-probability series, one sample every `dt`, up to `t_end`.
    pub fn oracle_series(&self, t_end: f64, dt: f64) -> Result<Vec<SeriesPoint>> {
        Self::check_step(t_end, dt)?;
        let steps = (t_end / dt).ceil() as usize;
        let h = t_end / steps as f64;
        let mut phi = self.psi.amplitudes().to_vec();
        let u = self.target - 1;
        let mut out = Vec::with_capacity(steps + 1);
        out.push(SeriesPoint {
            t: 0.0,
            target_probability: phi[u].norm_sqr(),
        });
        for i in 1..=steps {
            self.rk4_step(&mut phi, h)?;
            out.push(SeriesPoint {
                t: h * i as f64,
                target_probability: phi[u].norm_sqr(),
            });
        }
        Self::drift_checked(phi)?;
        Ok(out)
    }
}
