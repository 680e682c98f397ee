//! Side-by-side comparison of the five search devices and byte-stable
//! JSON/CSV emission.
//!
//! Pricing is $1 per box transit for particles and $1 per `κσ²` of
//! integrated intensity for waves, so every row shares one dollar column.
//! The two digital rows are symbolic: their query counts come from the
//! simulated classical baseline and the Grover schedule, and no gate-level
//! circuit is simulated.

use std::collections::HashMap;
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::grover::{optimal_iterations, Iterations, PreparedSearch, SearchConfig};
use crate::oracle::{expected_classical_transits, run_classical_search, ClassicalStrategy};
use crate::wave::{interferometric_search, DetectorModel, WaveConfig};
use crate::{Error, Result};

pub const PRICING_NOTE: &str =
    "$1 per box transit for particles; $1 per kappa*sigma^2 of integrated intensity for waves";

/// Significant digits kept by every emitted float.
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeviceKind {
    ClassicalDigital,
    QuantumDigital,
    ClassicalCoin,
    QuantumParticle,
    ClassicalWave,
}

impl DeviceKind {
    pub const ALL: [DeviceKind; 5] = [
        DeviceKind::ClassicalDigital,
        DeviceKind::QuantumDigital,
        DeviceKind::ClassicalCoin,
        DeviceKind::QuantumParticle,
        DeviceKind::ClassicalWave,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DeviceKind::ClassicalDigital => "classical-digital",
            DeviceKind::QuantumDigital => "quantum-digital",
            DeviceKind::ClassicalCoin => "classical-coin",
            DeviceKind::QuantumParticle => "quantum-particle",
            DeviceKind::ClassicalWave => "classical-wave",
        }
    }
}

impl fmt::Display for DeviceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DeviceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DeviceKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Domain(format!("unknown device kind {s:?}")))
    }
}

/// `⌈log₂ n⌉`, the qubits needed to label `n` slots.
pub fn qubit_count(n: usize) -> usize {
    n.next_power_of_two().trailing_zeros() as usize
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResourceProfile {
    pub device_kind: DeviceKind,
    pub n: usize,
    pub resources_order: &'static str,
    pub resources_count: usize,
    pub resources_detail: String,
    pub consultations_order: &'static str,
    pub consultations_count: f64,
    /// `round(√n)`, shown next to the scan-optimal count.
    pub sqrt_n_rounded: usize,
}

/// Symbolic orders per device class plus concrete counts at `n`.
pub fn resource_profile(device_kind: DeviceKind, n: usize) -> Result<ResourceProfile> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "resource profile needs n >= 2, got {n}"
        )));
    }
    let k = optimal_iterations(n)?.k as f64;
    let classical = expected_classical_transits(n);
    let qubits = qubit_count(n);
    let (
        resources_order,
        resources_count,
        resources_detail,
        consultations_order,
        consultations_count,
    ) = match device_kind {
        DeviceKind::ClassicalDigital => (
            "O(log2 n)",
            qubits,
            format!("{qubits} bits"),
            "O(n)",
            classical,
        ),
        DeviceKind::QuantumDigital => (
            "O(log2 n)",
            qubits,
            format!("{qubits} qubits"),
            "O(sqrt n)",
            k,
        ),
        DeviceKind::ClassicalCoin => (
            "O(n)",
            n,
            format!("{n} slots probed one coin at a time"),
            "O(n)",
            classical,
        ),
        DeviceKind::QuantumParticle => (
            "O(n)",
            2 * n - 1,
            format!("{} two-mode splitters + {n} detectors", n - 1),
            "O(sqrt n)",
            k,
        ),
        DeviceKind::ClassicalWave => (
            "O(n)",
            2 * n - 1,
            format!("{} two-mode splitters + {n} detectors", n - 1),
            "O(sqrt n)",
            k,
        ),
    };
    Ok(ResourceProfile {
        device_kind,
        n,
        resources_order,
        resources_count,
        resources_detail,
        consultations_order,
        consultations_count,
        sqrt_n_rounded: (n as f64).sqrt().round() as usize,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub n: usize,
    pub device_kind: DeviceKind,
    /// Box consultations; a mean for sampled rows.
    pub transits: f64,
    pub integrated_intensity: Option<f64>,
    pub dollar_cost: f64,
    pub success_probability: f64,
    pub splitter_count: Option<usize>,
    pub detector_count: Option<usize>,
    pub qubit_count: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareConfig {
    pub seed: u64,
    pub trials: usize,
    pub detector: DetectorModel,
}

impl Default for CompareConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 10_000,
            detector: DetectorModel::default(),
        }
    }
}

fn stream_rng(seed: u64, n: usize, device: DeviceKind) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lane = DeviceKind::ALL.iter().position(|&d| d == device).unwrap() as u64;
    rng.set_stream((n as u64) << 3 | lane);
    rng
}

fn coin_row(n: usize, config: &CompareConfig) -> Result<ComparisonRow> {
    let mut rng = stream_rng(config.seed, n, DeviceKind::ClassicalCoin);
    let mut total = 0u64;
    let mut found = 0usize;
    for _ in 0..config.trials {
        let target = rng.random_range(1..=n);
        let (slot, report) = run_classical_search(
            n,
            target,
            ClassicalStrategy::RandomWithoutReplacement,
            rng.random(),
        )?;
        total += report.transits;
        found += usize::from(slot == target);
    }
    let trials = config.trials.max(1) as f64;
    let mean = total as f64 / trials;
    Ok(ComparisonRow {
        n,
        device_kind: DeviceKind::ClassicalCoin,
        transits: mean,
        integrated_intensity: None,
        dollar_cost: mean,
        success_probability: found as f64 / trials,
        splitter_count: None,
        detector_count: None,
        qubit_count: None,
    })
}

fn particle_row(n: usize, config: &CompareConfig) -> Result<ComparisonRow> {
    let mut rng = stream_rng(config.seed, n, DeviceKind::QuantumParticle);
    let search = SearchConfig {
        iterations: Iterations::Auto,
        ..SearchConfig::default()
    };
    let mut prepared: HashMap<usize, PreparedSearch> = HashMap::new();
    let mut transits = 0u64;
    let mut hits = 0usize;
    for _ in 0..config.trials {
        let target = rng.random_range(1..=n);
        let seed = rng.random();
        let run = match prepared.entry(target) {
            std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(PreparedSearch::run(n, target, &search)?)
            }
        };
        let outcome = run.measure(target, seed)?;
        transits = outcome.transits;
        hits += usize::from(outcome.success);
    }
    if config.trials == 0 {
        transits = optimal_iterations(n)?.k as u64;
    }
    Ok(ComparisonRow {
        n,
        device_kind: DeviceKind::QuantumParticle,
        transits: transits as f64,
        integrated_intensity: None,
        dollar_cost: transits as f64,
        success_probability: hits as f64 / config.trials.max(1) as f64,
        splitter_count: Some(n - 1),
        detector_count: Some(n),
        qubit_count: None,
    })
}

fn wave_row(n: usize, config: &CompareConfig) -> Result<ComparisonRow> {
    let mut rng = stream_rng(config.seed, n, DeviceKind::ClassicalWave);
    let target = rng.random_range(1..=n);
    let outcome = interferometric_search(n, target, &config.detector, &WaveConfig::default())?;
    Ok(ComparisonRow {
        n,
        device_kind: DeviceKind::ClassicalWave,
        transits: outcome.passes as f64,
        integrated_intensity: Some(outcome.integrated_cost),
        dollar_cost: outcome.dollar_cost,
        success_probability: if outcome.found_slot == Some(target) {
            1.0
        } else {
            0.0
        },
        splitter_count: Some(n - 1),
        detector_count: Some(n),
        qubit_count: None,
    })
}

/// Five rows per `n`: both digital rows, the coin, the particle and the
/// wave device.
pub fn compare(n_list: &[usize], config: &CompareConfig) -> Result<Vec<ComparisonRow>> {
    let mut rows = Vec::with_capacity(5 * n_list.len());
    for &n in n_list {
        if n < 2 {
            return Err(Error::Domain(format!(
                "compare needs every n >= 2, got {n}"
            )));
        }
        let schedule = optimal_iterations(n)?;
        let coin = coin_row(n, config)?;
        let qubits = Some(qubit_count(n));
        rows.push(ComparisonRow {
            device_kind: DeviceKind::ClassicalDigital,
            qubit_count: qubits,
            ..coin.clone()
        });
        rows.push(ComparisonRow {
            n,
            device_kind: DeviceKind::QuantumDigital,
            transits: schedule.k as f64,
            integrated_intensity: None,
            dollar_cost: schedule.k as f64,
            success_probability: schedule.predicted_success,
            splitter_count: None,
            detector_count: None,
            qubit_count: qubits,
        });
        rows.push(coin);
        rows.push(particle_row(n, config)?);
        rows.push(wave_row(n, config)?);
    }
    Ok(rows)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let m = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / m;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = logs.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// `%.12g`-style rendering: fixed notation for moderate exponents,
/// scientific otherwise, trailing zeros removed.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        format!("{mantissa}e{exp}")
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn round_significant(x: f64) -> f64 {
    format_significant(x, SIGNIFICANT_DIGITS)
        .parse()
        .unwrap_or(x)
}

fn round_floats(value: &mut Value) {
    match value {
        Value::Number(num) if num.is_f64() => {
            let x = num.as_f64().expect("f64 number");
            if let Some(rounded) = serde_json::Number::from_f64(round_significant(x)) {
                *num = rounded;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Pretty JSON with floats cut to [`SIGNIFICANT_DIGITS`] and a trailing LF.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value)
        .map_err(|e| Error::Contract(format!("unserializable value: {e}")))?;
    round_floats(&mut v);
    let mut out = serde_json::to_string_pretty(&v)
        .map_err(|e| Error::Contract(format!("unserializable value: {e}")))?;
    out.push('\n');
    Ok(out)
}

/// Something that renders as one CSV line under a fixed header.
pub trait CsvRecord {
    fn header() -> &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

pub(crate) fn csv_float(x: f64) -> String {
    format_significant(x, SIGNIFICANT_DIGITS)
}

fn csv_opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn to_csv<T: CsvRecord>(records: &[T]) -> String {
    let mut out = T::header().join(",");
    out.push('\n');
    for r in records {
        out.push_str(&r.fields().join(","));
        out.push('\n');
    }
    out
}

impl CsvRecord for ComparisonRow {
    fn header() -> &'static [&'static str] {
        &[
            "n",
            "device_kind",
            "transits",
            "integrated_intensity",
            "dollar_cost",
            "success_probability",
            "splitter_count",
            "detector_count",
            "qubit_count",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.device_kind.to_string(),
            csv_float(self.transits),
            csv_opt(self.integrated_intensity.map(csv_float)),
            csv_float(self.dollar_cost),
            csv_float(self.success_probability),
            csv_opt(self.splitter_count),
            csv_opt(self.detector_count),
            csv_opt(self.qubit_count),
        ]
    }
}

impl CsvRecord for crate::grover::TracePoint {
    fn header() -> &'static [&'static str] {
        &["iteration", "target_probability"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.iteration.to_string(),
            csv_float(self.target_probability),
        ]
    }
}

impl CsvRecord for crate::continuous::SeriesPoint {
    fn header() -> &'static [&'static str] {
        &["t", "target_probability"]
    }

    fn fields(&self) -> Vec<String> {
        vec![csv_float(self.t), csv_float(self.target_probability)]
    }
}

impl CsvRecord for crate::wave::WaveOutcome {
    fn header() -> &'static [&'static str] {
        &[
            "strategy",
            "n",
            "found_slot",
            "integrated_cost",
            "passes",
            "input_intensity",
            "target_output_intensity",
            "threshold",
            "dollar_cost",
            "classical_model_valid",
        ]
    }

    fn fields(&self) -> Vec<String> {
        let strategy = match self.strategy {
            crate::wave::WaveStrategy::Direct => "direct",
            crate::wave::WaveStrategy::Interferometric => "interferometric",
        };
        vec![
            strategy.to_string(),
            self.n.to_string(),
            csv_opt(self.found_slot),
            csv_float(self.integrated_cost),
            self.passes.to_string(),
            csv_float(self.input_intensity),
            csv_float(self.target_output_intensity),
            csv_float(self.threshold),
            csv_float(self.dollar_cost),
            self.classical_model_valid.to_string(),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Domain(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Serialize)]
struct ComparisonDocument<'a> {
    pricing: &'static str,
    rows: &'a [ComparisonRow],
}

/// Renders a comparison table. JSON carries the pricing note; CSV is the
/// bare header plus one line per row.
pub fn render_table(rows: &[ComparisonRow], format: Format) -> Result<String> {
    match format {
        Format::Csv => Ok(to_csv(rows)),
        Format::Json => to_json(&ComparisonDocument {
            pricing: PRICING_NOTE,
            rows,
        }),
    }
}

/// Writes `text` to `path`, or to stdout when `path` is `None`.
pub fn write_output(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| Error::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

/// `render_table` followed by `write_output`.
pub fn emit(rows: &[ComparisonRow], format: Format, destination: Option<&Path>) -> Result<()> {
    write_output(&render_table(rows, format)?, destination)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> CompareConfig {
        CompareConfig {
            trials: 500,
            ..CompareConfig::default()
        }
    }

    #[test]
    fn significant_formatting() {
        assert_eq!(format_significant(50.49, 12), "50.49");
        assert_eq!(format_significant(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(format_significant(2500.0, 12), "2500");
        assert_eq!(
            format_significant(175.818_540_735_375_05, 12),
            "175.818540735"
        );
        assert_eq!(format_significant(1.5e-9, 12), "1.5e-9");
        assert_eq!(format_significant(-2.0e15, 12), "-2e15");
        assert_eq!(format_significant(0.0, 12), "0");
        assert_eq!(format_significant(9.999_999_999_999_9, 12), "10");
    }

    #[test]
    fn device_kinds_parse() {
        for kind in DeviceKind::ALL {
            assert_eq!(kind.as_str().parse::<DeviceKind>().unwrap(), kind);
        }
        assert!(matches!(
            "abacus".parse::<DeviceKind>(),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn profiles() {
        let p = resource_profile(DeviceKind::ClassicalDigital, 1024).unwrap();
        assert_eq!(p.resources_order, "O(log2 n)");
        assert_eq!(p.resources_count, 10);
        assert_eq!(p.consultations_order, "O(n)");
        assert!((p.consultations_count - 512.0).abs() < 1.0);

        let p = resource_profile(DeviceKind::QuantumParticle, 1024).unwrap();
        assert_eq!(p.resources_order, "O(n)");
        assert_eq!(p.resources_count, 1023 + 1024);
        assert_eq!(p.consultations_count, 25.0);
        assert_eq!(p.sqrt_n_rounded, 32);

        let p = resource_profile(DeviceKind::ClassicalWave, 256).unwrap();
        assert_eq!(p.consultations_order, "O(sqrt n)");
        assert_eq!(p.consultations_count, 12.0);

        let p = resource_profile(DeviceKind::QuantumDigital, 64).unwrap();
        assert_eq!((p.resources_count, p.consultations_count), (6, 6.0));
        let p = resource_profile(DeviceKind::ClassicalCoin, 64).unwrap();
        assert_eq!(p.consultations_order, "O(n)");
    }

    #[test]
    fn qubit_counts() {
        assert_eq!(qubit_count(2), 1);
        assert_eq!(qubit_count(100), 7);
        assert_eq!(qubit_count(1024), 10);
    }

    #[test]
    fn compare_small_case() {
        let rows = compare(&[4], &quick()).unwrap();
        assert_eq!(rows.len(), 5);
        let particle = rows
            .iter()
            .find(|r| r.device_kind == DeviceKind::QuantumParticle)
            .unwrap();
        assert_eq!(particle.transits, 1.0);
        assert_eq!(particle.success_probability, 1.0);
        assert_eq!(particle.splitter_count, Some(3));
        assert_eq!(particle.detector_count, Some(4));
        let digital = &rows[0];
        assert_eq!(digital.device_kind, DeviceKind::ClassicalDigital);
        assert_eq!(digital.qubit_count, Some(2));
    }

    #[test]
    fn compare_rejects_tiny_n() {
        assert!(compare(&[4, 1], &quick()).is_err());
    }

    #[test]
    fn csv_shapes() {
        let empty: Vec<ComparisonRow> = Vec::new();
        let text = render_table(&empty, Format::Csv).unwrap();
        assert_eq!(text.lines().count(), 1);
        assert!(text.starts_with("n,device_kind,transits,"));

        let rows = compare(&[4], &quick()).unwrap();
        let text = render_table(&rows[3..4], Format::Csv).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1], "4,quantum-particle,1,,1,1,3,4,");
        assert!(!text.contains('\r'));
    }

    #[test]
    fn json_field_order_is_declared_order() {
        let rows = compare(&[4], &quick()).unwrap();
        let text = render_table(&rows, Format::Json).unwrap();
        let n_at = text.find("\"n\"").unwrap();
        let kind_at = text.find("\"device_kind\"").unwrap();
        let transits_at = text.find("\"transits\"").unwrap();
        assert!(n_at < kind_at && kind_at < transits_at);
        assert!(text.ends_with("}\n"));
    }

    #[test]
    fn same_seed_same_bytes() {
        let a = render_table(&compare(&[4, 16], &quick()).unwrap(), Format::Csv).unwrap();
        let b = render_table(&compare(&[4, 16], &quick()).unwrap(), Format::Csv).unwrap();
        assert_eq!(a, b);
        let other = CompareConfig {
            seed: 99,
            ..quick()
        };
        let c = render_table(&compare(&[4, 16], &other).unwrap(), Format::Csv).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn emit_reports_the_failing_path() {
        let dir = tempfile::tempdir().unwrap();
        let missing = dir.path().join("no/such/dir/out.csv");
        let err = emit(&[], Format::Csv, Some(&missing)).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
        assert!(err.to_string().contains("out.csv"));
    }

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = [4.0, 16.0, 64.0]
            .iter()
            .map(|&x: &f64| (x, 3.0 * x.powf(0.5)))
            .collect();
        assert!((loglog_slope(&pts) - 0.5).abs() < 1e-12);
    }
}
