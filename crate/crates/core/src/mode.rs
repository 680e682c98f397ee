//! Dense state vectors over the `n` modes of a single quantum variable.
//!
//! Mode labels are 1-based: `|1⟩` is the injection mode and `|n⟩` the last
//! slot. States are immutable values; every operation returns a new state.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{Error, Result, API_NORM_TOL, NORM_TOL};

/// Normalized amplitude vector of one `n`-mode variable.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeState {
    amplitudes: Vec<Complex64>,
}

impl ModeState {
    /// `|ℓ⟩`: amplitude 1 on mode `ell`, zero elsewhere.
    pub fn basis(n: usize, ell: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("a mode state needs n >= 1".into()));
        }
        Error::check_index(ell, n)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); n];
        amplitudes[ell - 1] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    /// Equal real positive amplitude `1/√n` on every mode.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("a mode state needs n >= 1".into()));
        }
        let a = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
        Ok(Self {
            amplitudes: vec![a; n],
        })
    }

    /// Wraps an amplitude vector that must already be normalized within
    /// [`API_NORM_TOL`].
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::Domain("a mode state needs n >= 1".into()));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > API_NORM_TOL {
            return Err(Error::Contract(format!(
                "amplitudes have squared norm {norm_sqr}, expected 1"
            )));
        }
        Ok(Self { amplitudes })
    }

    /// Rescales an arbitrary nonzero vector to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if amplitudes.is_empty() || norm == 0.0 || !norm.is_finite() {
            return Err(Error::Contract("cannot normalize a zero vector".into()));
        }
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|a| a / norm).collect(),
        })
    }

    pub(crate) fn from_raw(amplitudes: Vec<Complex64>) -> Self {
        Self { amplitudes }
    }

    pub fn n(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    /// Amplitude of mode `ell` (1-based).
    pub fn amplitude(&self, ell: usize) -> Result<Complex64> {
        Error::check_index(ell, self.n())?;
        Ok(self.amplitudes[ell - 1])
    }

    /// Detection probability `|amplitude|²` of mode `ell` (1-based).
    pub fn probability(&self, ell: usize) -> Result<f64> {
        self.amplitude(ell).map(|a| a.norm_sqr())
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Multiplies mode `ell` by a unit-modulus `phase`.
    pub fn apply_phase_flip(&self, ell: usize, phase: Complex64) -> Result<Self> {
        Error::check_index(ell, self.n())?;
        if (phase.norm() - 1.0).abs() > NORM_TOL {
            return Err(Error::Contract(format!(
                "phase {phase} is not of unit modulus"
            )));
        }
        let mut amplitudes = self.amplitudes.clone();
        amplitudes[ell - 1] *= phase;
        Ok(Self { amplitudes })
    }

    /// Applies the 2×2 block of `splitter` to its mode pair.
    pub fn apply_two_mode_splitter(&self, splitter: &TwoModeSplitter) -> Result<Self> {
        let mut amplitudes = self.amplitudes.clone();
        splitter.apply_in_place(&mut amplitudes)?;
        Ok(Self { amplitudes })
    }

    /// `⟨self|other⟩ = Σ conj(self[ℓ])·other[ℓ]`.
    pub fn overlap(&self, other: &ModeState) -> Result<Complex64> {
        Error::check_dim(self.n(), other.n())?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Samples a mode with probability `|amplitude|²`, deterministically for
    /// a fixed seed.
    pub fn measure_sample(&self, seed: u64) -> Result<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.measure_with(&mut rng)
    }

    /// Samples a mode using a caller-supplied generator.
    pub fn measure_with<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<usize> {
        let norm_sqr = self.norm_sqr();
        if (norm_sqr - 1.0).abs() > API_NORM_TOL {
            return Err(Error::Contract(format!(
                "cannot measure a state with squared norm {norm_sqr}"
            )));
        }
        let r: f64 = rng.random::<f64>() * norm_sqr;
        let mut cumulative = 0.0;
        let mut last_occupied = 1;
        for (idx, a) in self.amplitudes.iter().enumerate() {
            let p = a.norm_sqr();
            if p == 0.0 {
                continue;
            }
            cumulative += p;
            last_occupied = idx + 1;
            if r < cumulative {
                return Ok(idx + 1);
            }
        }
        // rounding left r at or past the final cumulative sum
        Ok(last_occupied)
    }
}

/// A lossless two-mode splitter acting on modes `(i, j)` with block
/// `[[cos θ, −e^{iφ} sin θ], [e^{−iφ} sin θ, cos θ]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoModeSplitter {
    i: usize,
    j: usize,
    theta: f64,
    phi: f64,
}

impl TwoModeSplitter {
    pub fn new(i: usize, j: usize, theta: f64, phi: f64) -> Result<Self> {
        if i == 0 || j == 0 {
            return Err(Error::Index {
                index: 0,
                n: i.max(j),
            });
        }
        if i == j {
            return Err(Error::Contract(format!(
                "a two-mode splitter needs distinct modes, got ({i}, {j})"
            )));
        }
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::Contract("splitter angles must be finite".into()));
        }
        Ok(Self { i, j, theta, phi })
    }

    pub fn modes(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// The adjoint block, which is the same splitter with `θ → −θ`.
    pub fn inverse(&self) -> Self {
        Self {
            theta: -self.theta,
            ..*self
        }
    }

    /// The 2×2 block as `[[a, b], [c, d]]`.
    pub fn block(&self) -> [[Complex64; 2]; 2] {
        let (s, c) = self.theta.sin_cos();
        let e = Complex64::from_polar(1.0, self.phi);
        [
            [Complex64::new(c, 0.0), -e * s],
            [e.conj() * s, Complex64::new(c, 0.0)],
        ]
    }

    pub(crate) fn apply_in_place(&self, amplitudes: &mut [Complex64]) -> Result<()> {
        let n = amplitudes.len();
        Error::check_index(self.i, n)?;
        Error::check_index(self.j, n)?;
        let [[a, b], [c, d]] = self.block();
        let x = amplitudes[self.i - 1];
        let y = amplitudes[self.j - 1];
        amplitudes[self.i - 1] = a * x + b * y;
        amplitudes[self.j - 1] = c * x + d * y;
        Ok(())
    }
}
