//! Classical wave search billed by integrated intensity.
//!
//! Each mode carries a two-component Jones field in the `(←, →)` basis,
//! where `→` is the axis the box flips about: the flipping slot negates the
//! `→` component, which sends `↑ = (← + →)/√2` to `↓ = (← − →)/√2` and gives
//! `→`-polarized light a phase of −1. Splitters and the inverter act on both
//! components alike; with `→` input the `←` component stays empty.
//!
//! Detection uses a threshold model: a mode's signal is seen when its
//! intensity reaches `κσ²`. This instantiation of a finite signal-to-noise
//! detector is a modelling choice and every [`WaveOutcome`] says so.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::Serialize;

use crate::grover::{invert_slice, optimal_iterations};
use crate::splitter::SplitterNetwork;
use crate::{Error, Result};

/// Jones vector in the `(←, →)` basis.
pub type Jones = [Complex64; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const HALF_SQRT2: f64 = std::f64::consts::FRAC_1_SQRT_2;

pub const RIGHT: Jones = [ZERO, ONE];
pub const LEFT: Jones = [ONE, ZERO];
pub const UP: Jones = [
    Complex64::new(HALF_SQRT2, 0.0),
    Complex64::new(HALF_SQRT2, 0.0),
];
pub const DOWN: Jones = [
    Complex64::new(HALF_SQRT2, 0.0),
    Complex64::new(-HALF_SQRT2, 0.0),
];

/// Relative slack on the detection threshold, so a signal computed to
/// equal `κσ²` is not lost to rounding.
const THRESHOLD_SLACK: f64 = 1e-9;

/// Classical field over `n` modes. Intensities are not normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveField {
    components: Vec<Jones>,
}

impl WaveField {
    pub fn dark(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("a wave field needs n >= 1".into()));
        }
        Ok(Self {
            components: vec![[ZERO, ZERO]; n],
        })
    }

    /// Intensity `intensity` in mode `ell` with polarization `jones`.
    pub fn single_mode(n: usize, ell: usize, intensity: f64, jones: Jones) -> Result<Self> {
        let mut field = Self::dark(n)?;
        Error::check_index(ell, n)?;
        field.components[ell - 1] = scaled(jones, intensity)?;
        Ok(field)
    }

    /// The same intensity and polarization in every mode.
    pub fn uniform(n: usize, intensity_per_mode: f64, jones: Jones) -> Result<Self> {
        let mut field = Self::dark(n)?;
        let c = scaled(jones, intensity_per_mode)?;
        field.components.fill(c);
        Ok(field)
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Jones] {
        &self.components
    }

    /// Field amplitude `√intensity` of mode `ell`.
    pub fn amplitude(&self, ell: usize) -> Result<f64> {
        self.intensity(ell).map(f64::sqrt)
    }

    /// Unit Jones vector of mode `ell`, carrying the mode's phase. A dark
    /// mode reports `→`.
    pub fn polarization(&self, ell: usize) -> Result<Jones> {
        let a = self.amplitude(ell)?;
        if a == 0.0 {
            return Ok(RIGHT);
        }
        let [x, y] = self.components[ell - 1];
        Ok([x / a, y / a])
    }

    pub fn intensity(&self, ell: usize) -> Result<f64> {
        Error::check_index(ell, self.n())?;
        let [x, y] = self.components[ell - 1];
        Ok(x.norm_sqr() + y.norm_sqr())
    }

    pub fn intensities(&self) -> Vec<f64> {
        self.components
            .iter()
            .map(|[x, y]| x.norm_sqr() + y.norm_sqr())
            .collect()
    }

    pub fn total_intensity(&self) -> f64 {
        self.intensities().iter().sum()
    }

    /// Intensity passed by an analyzer set to `jones`.
    pub fn analyzed_intensity(&self, ell: usize, jones: Jones) -> Result<f64> {
        Error::check_index(ell, self.n())?;
        let [x, y] = self.components[ell - 1];
        Ok((jones[0].conj() * x + jones[1].conj() * y).norm_sqr())
    }

    fn map_components(&self, mut f: impl FnMut(&mut [Complex64]) -> Result<()>) -> Result<Self> {
        let mut out = self.clone();
        for axis in 0..2 {
            let mut column: Vec<Complex64> = out.components.iter().map(|c| c[axis]).collect();
            f(&mut column)?;
            for (c, v) in out.components.iter_mut().zip(column) {
                c[axis] = v;
            }
        }
        Ok(out)
    }

    pub fn apply_network(&self, net: &SplitterNetwork) -> Result<Self> {
        self.map_components(|col| net.apply_to_slice(col))
    }

    pub fn apply_network_adjoint(&self, net: &SplitterNetwork) -> Result<Self> {
        self.map_components(|col| net.apply_adjoint_to_slice(col))
    }

    /// Phase −1 on every mode except the first.
    pub fn apply_inverter(&self) -> Self {
        self.map_components(|col| {
            invert_slice(col);
            Ok(())
        })
        .expect("inverter cannot fail")
    }
}

fn scaled(jones: Jones, intensity: f64) -> Result<Jones> {
    if !(intensity >= 0.0 && intensity.is_finite()) {
        return Err(Error::Domain(format!(
            "intensity must be finite and >= 0, got {intensity}"
        )));
    }
    let norm = (jones[0].norm_sqr() + jones[1].norm_sqr()).sqrt();
    if (norm - 1.0).abs() > crate::API_NORM_TOL {
        return Err(Error::Contract("Jones vector must have unit norm".into()));
    }
    let a = intensity.sqrt();
    Ok([jones[0] * a, jones[1] * a])
}

/// Integrated intensity billed at the box's input plane.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct IntensityMeter {
    integrated_intensity: f64,
}

impl IntensityMeter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn integrated_intensity(&self) -> f64 {
        self.integrated_intensity
    }
}

/// Sends `field` through the box once: slot `target` flips polarization
/// about `→`, and the meter is charged the total incoming intensity.
pub fn wave_box_transit(
    field: &WaveField,
    target: usize,
    meter: &mut IntensityMeter,
) -> Result<WaveField> {
    Error::check_index(target, field.n())?;
    meter.integrated_intensity += field.total_intensity();
    let mut out = field.clone();
    let c = &mut out.components[target - 1];
    c[1] = -c[1];
    Ok(out)
}

/// Detector noise `σ²` and required power ratio `κ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectorModel {
    noise_variance: f64,
    detection_factor: f64,
}

impl Default for DetectorModel {
    fn default() -> Self {
        Self {
            noise_variance: 1.0,
            detection_factor: 25.0,
        }
    }
}

impl DetectorModel {
    pub fn new(noise_variance: f64, detection_factor: f64) -> Result<Self> {
        if !(noise_variance > 0.0 && noise_variance.is_finite()) {
            return Err(Error::Domain(format!(
                "noise variance must be positive, got {noise_variance}"
            )));
        }
        if !(detection_factor >= 1.0 && detection_factor.is_finite()) {
            return Err(Error::Domain(format!(
                "detection factor must be >= 1, got {detection_factor}"
            )));
        }
        Ok(Self {
            noise_variance,
            detection_factor,
        })
    }

    pub fn noise_variance(&self) -> f64 {
        self.noise_variance
    }

    pub fn detection_factor(&self) -> f64 {
        self.detection_factor
    }

    /// `κσ²`, the least intensity a detector can certify.
    pub fn threshold(&self) -> f64 {
        self.noise_variance * self.detection_factor
    }

    pub fn detects(&self, intensity: f64) -> bool {
        intensity >= self.threshold() * (1.0 - THRESHOLD_SLACK)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DetectionMode {
    /// Signal seen iff intensity ≥ κσ².
    #[default]
    Threshold,
    /// Complex Gaussian noise of variance σ² added to the analyzed field
    /// amplitude; the brightest reading wins. With κ = 25 the signal sits
    /// five noise standard deviations above zero.
    SampledNoise { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct WaveConfig {
    pub detection: DetectionMode,
    /// Energy of one quantum of the wave; below it the classical model
    /// no longer describes the readout.
    pub photon_energy: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WaveStrategy {
    Direct,
    Interferometric,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WaveOutcome {
    pub strategy: WaveStrategy,
    pub n: usize,
    pub found_slot: Option<usize>,
    pub integrated_cost: f64,
    pub passes: usize,
    /// Intensity injected per illuminated input mode.
    pub input_intensity: f64,
    /// Intensity reaching the target's detector in the analyzed channel.
    pub target_output_intensity: f64,
    /// `κσ²`.
    pub threshold: f64,
    /// Integrated cost in units of `κσ²`, i.e. dollars at $1 per `κσ²`.
    pub dollar_cost: f64,
    pub classical_model_valid: bool,
    pub detector_model: &'static str,
}

const THRESHOLD_LABEL: &str = "threshold kappa*sigma^2 (model instantiation)";
const SAMPLED_LABEL: &str =
    "sampled complex Gaussian noise, variance sigma^2 (model instantiation)";

fn read_out(
    readings: Vec<Complex64>,
    detector: &DetectorModel,
    mode: DetectionMode,
) -> (Option<usize>, &'static str) {
    let intensities: Vec<f64> = match mode {
        DetectionMode::Threshold => readings.iter().map(|a| a.norm_sqr()).collect(),
        DetectionMode::SampledNoise { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let sd = (detector.noise_variance() / 2.0).sqrt();
            let normal = Normal::new(0.0, sd).expect("positive standard deviation");
            readings
                .iter()
                .map(|a| {
                    let noise = Complex64::new(normal.sample(&mut rng), normal.sample(&mut rng));
                    (a + noise).norm_sqr()
                })
                .collect()
        }
    };
    let (best, &peak) =
        intensities
            .iter()
            .enumerate()
            .fold((0, &f64::NEG_INFINITY), |acc, (i, v)| {
                if *v > *acc.1 {
                    (i, v)
                } else {
                    acc
                }
            });
    let found = match mode {
        DetectionMode::Threshold => detector.detects(peak).then_some(best + 1),
        // half the signal amplitude, i.e. a quarter of the threshold power
        DetectionMode::SampledNoise { .. } => {
            (peak >= detector.threshold() / 4.0).then_some(best + 1)
        }
    };
    let label = match mode {
        DetectionMode::Threshold => THRESHOLD_LABEL,
        DetectionMode::SampledNoise { .. } => SAMPLED_LABEL,
    };
    (found, label)
}

/// Shines `↑` light of intensity `κσ²` through every slot at once and looks
/// for `↓` light behind the box.
pub fn direct_search(
    n: usize,
    target: usize,
    detector: &DetectorModel,
    config: &WaveConfig,
) -> Result<WaveOutcome> {
    let input_intensity = detector.threshold();
    let field = WaveField::uniform(n, input_intensity, UP)?;
    let mut meter = IntensityMeter::new();
    let out = wave_box_transit(&field, target, &mut meter)?;

    let readings = (1..=n)
        .map(|ell| {
            let [x, y] = out.components[ell - 1];
            Ok(DOWN[0].conj() * x + DOWN[1].conj() * y)
        })
        .collect::<Result<Vec<_>>>()?;
    let (found_slot, label) = read_out(readings, detector, config.detection);
    let integrated_cost = meter.integrated_intensity();
    Ok(WaveOutcome {
        strategy: WaveStrategy::Direct,
        n,
        found_slot,
        integrated_cost,
        passes: 1,
        input_intensity,
        target_output_intensity: out.analyzed_intensity(target, DOWN)?,
        threshold: detector.threshold(),
        dollar_cost: integrated_cost / detector.threshold(),
        classical_model_valid: config.photon_energy.is_none_or(|e| input_intensity >= e),
        detector_model: label,
    })
}

/// Per-mode intensities after `passes` recycling passes and the final
/// splitter, for `→` input of intensity `input_intensity` in mode 1.
pub fn recycle(
    n: usize,
    target: usize,
    passes: usize,
    input_intensity: f64,
    meter: &mut IntensityMeter,
) -> Result<WaveField> {
    let net = SplitterNetwork::synthesize_balanced(n)?;
    let mut field = WaveField::single_mode(n, 1, input_intensity, RIGHT)?;
    for _ in 0..passes {
        let spread = field.apply_network(&net)?;
        let flipped = wave_box_transit(&spread, target, meter)?;
        field = flipped.apply_network_adjoint(&net)?.apply_inverter();
    }
    field.apply_network(&net)
}

/// Recycles `→` light through the same interferometer as the particle
/// search, with the input raised to `κσ²/P_k` so the target output just
/// clears the detector.
pub fn interferometric_search(
    n: usize,
    target: usize,
    detector: &DetectorModel,
    config: &WaveConfig,
) -> Result<WaveOutcome> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "interferometric search needs n >= 2, got {n}"
        )));
    }
    Error::check_index(target, n)?;
    let schedule = optimal_iterations(n)?;
    let input_intensity = detector.threshold() / schedule.predicted_success;
    let mut meter = IntensityMeter::new();
    let out = recycle(n, target, schedule.k, input_intensity, &mut meter)?;

    let readings = out.components.iter().map(|c| c[1]).collect();
    let (found_slot, label) = read_out(readings, detector, config.detection);
    let integrated_cost = meter.integrated_intensity();
    Ok(WaveOutcome {
        strategy: WaveStrategy::Interferometric,
        n,
        found_slot,
        integrated_cost,
        passes: schedule.k,
        input_intensity,
        target_output_intensity: out.analyzed_intensity(target, RIGHT)?,
        threshold: detector.threshold(),
        dollar_cost: integrated_cost / detector.threshold(),
        classical_model_valid: config.photon_energy.is_none_or(|e| input_intensity >= e),
        detector_model: label,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingRow {
    pub n: usize,
    pub direct_cost: f64,
    pub interferometric_cost: f64,
    pub passes: usize,
    /// `direct / interferometric`; absent when no pass is made.
    pub ratio: Option<f64>,
    /// Set when the best schedule cannot beat a coin flip (`n = 2`).
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingTable {
    pub rows: Vec<ScalingRow>,
    /// Least-squares `c` in `ratio ≈ c·√n` over the non-degenerate rows.
    pub sqrt_coefficient: Option<f64>,
}

/// Runs both strategies at each `n` (target slot `n`) and fits the cost
/// ratio to `c·√n`.
pub fn cost_scaling_table(n_list: &[usize], detector: &DetectorModel) -> Result<ScalingTable> {
    let config = WaveConfig::default();
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        if n < 2 {
            return Err(Error::Domain(format!(
                "scaling table needs n >= 2, got {n}"
            )));
        }
        let direct = direct_search(n, n, detector, &config)?;
        let interf = interferometric_search(n, n, detector, &config)?;
        let schedule = optimal_iterations(n)?;
        rows.push(ScalingRow {
            n,
            direct_cost: direct.integrated_cost,
            interferometric_cost: interf.integrated_cost,
            passes: interf.passes,
            ratio: (interf.integrated_cost > 0.0)
                .then(|| direct.integrated_cost / interf.integrated_cost),
            degenerate: schedule.predicted_success <= 0.5 + 1e-12,
        });
    }
    let (num, den) = rows
        .iter()
        .filter(|r| !r.degenerate)
        .filter_map(|r| r.ratio.map(|ratio| (ratio, (r.n as f64).sqrt())))
        .fold((0.0, 0.0), |(num, den), (ratio, s)| {
            (num + ratio * s, den + s * s)
        });
    Ok(ScalingTable {
        rows,
        sqrt_coefficient: (den > 0.0).then(|| num / den),
    })
}
