//! Entanglement of one amplitude vector under a declared decomposition.
//!
//! The same `n` amplitudes can be read three ways:
//!
//! * unary: one `n`-level variable, a single subsystem, never entangled;
//! * qubit: `n = 2^r`, mode `ℓ` labelled by `ℓ − 1` in binary with the most
//!   significant bit on qubit 1;
//! * second-quantized: `n` two-level occupation registers, mode `ℓ` mapped
//!   to the basis vector with register `ℓ` occupied.
//!
//! Schmidt values come from the singular values of the amplitude vector
//! reshaped into a (bipartition × complement) matrix.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::grover::grover_pass;
use crate::mode::ModeState;
use crate::oracle::OracleBox;
use crate::splitter::SplitterNetwork;
use crate::{Error, Result};

/// Entropy below which a state counts as a product.
pub const PRODUCT_TOL: f64 = 1e-9;

/// Largest `n` embedded into occupation space (`2^n` amplitudes).
pub const MAX_OCCUPATION_MODES: usize = 12;

/// Largest register count searched exhaustively.
pub const MAX_EXHAUSTIVE_SUBSYSTEMS: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViewKind {
    Unary,
    Qubit,
    SecondQuantized,
}

impl std::str::FromStr for ViewKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unary" => Ok(ViewKind::Unary),
            "qubit" => Ok(ViewKind::Qubit),
            "second-quantized" => Ok(ViewKind::SecondQuantized),
            other => Err(Error::Domain(format!("unknown view {other:?}"))),
        }
    }
}

/// A view bound to a mode count: how many two-level subsystems it has.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DecompositionView {
    pub kind: ViewKind,
    /// Qubits or registers; 1 for the unary view.
    pub subsystems: usize,
}

impl DecompositionView {
    pub fn new(kind: ViewKind, n: usize) -> Result<Self> {
        let subsystems = match kind {
            ViewKind::Unary => 1,
            ViewKind::Qubit => {
                if n == 0 || !n.is_power_of_two() {
                    return Err(Error::Decomposition(format!(
                        "qubit view needs n = 2^r, got n = {n}"
                    )));
                }
                n.trailing_zeros() as usize
            }
            ViewKind::SecondQuantized => {
                if n > MAX_OCCUPATION_MODES {
                    return Err(Error::Resource(format!(
                        "occupation space for n = {n} exceeds 2^{MAX_OCCUPATION_MODES} amplitudes"
                    )));
                }
                n
            }
        };
        Ok(Self { kind, subsystems })
    }

    pub fn unary() -> Self {
        Self {
            kind: ViewKind::Unary,
            subsystems: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntanglementReport {
    /// 1-based subsystem labels on one side of the cut.
    pub bipartition: Vec<usize>,
    /// Non-increasing.
    pub schmidt_values: Vec<f64>,
    /// Entanglement entropy in bits.
    pub entropy: f64,
    pub is_product: bool,
}

impl EntanglementReport {
    fn trivial() -> Self {
        Self {
            bipartition: Vec::new(),
            schmidt_values: vec![1.0],
            entropy: 0.0,
            is_product: true,
        }
    }

    pub fn schmidt_rank(&self, tol: f64) -> usize {
        self.schmidt_values.iter().filter(|&&v| v > tol).count()
    }
}

/// A single excitation spread over `n` two-level registers.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupationState {
    registers: usize,
    amplitudes: Vec<Complex64>,
}

impl OccupationState {
    pub fn registers(&self) -> usize {
        self.registers
    }

    /// Amplitudes over the `2^n` occupation patterns, register 1 as the most
    /// significant bit.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn schmidt_spectrum(&self, bipartition: &[usize]) -> Result<EntanglementReport> {
        schmidt_of(&self.amplitudes, self.registers, bipartition)
    }

    pub fn max_entanglement(&self) -> Result<EntanglementReport> {
        max_over_bipartitions(&self.amplitudes, self.registers)
    }
}

/// Maps `Σ c_ℓ|ℓ⟩` to `Σ c_ℓ |0…1_ℓ…0⟩`.
pub fn second_quantized_embedding(state: &ModeState) -> Result<OccupationState> {
    let n = state.n();
    if n > MAX_OCCUPATION_MODES {
        return Err(Error::Resource(format!(
            "occupation space for n = {n} exceeds 2^{MAX_OCCUPATION_MODES} amplitudes"
        )));
    }
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
    for (idx, a) in state.amplitudes().iter().enumerate() {
        amplitudes[1 << (n - 1 - idx)] = *a;
    }
    Ok(OccupationState {
        registers: n,
        amplitudes,
    })
}

fn check_bipartition(bipartition: &[usize], subsystems: usize) -> Result<u64> {
    let mut mask = 0u64;
    for &q in bipartition {
        Error::check_index(q, subsystems)
            .map_err(|_| Error::Decomposition(format!("subsystem {q} not in 1..={subsystems}")))?;
        mask |= 1 << (subsystems - q);
    }
    let full = (1u64 << subsystems) - 1;
    if mask == 0 || mask == full {
        return Err(Error::Decomposition(
            "bipartition must be a nonempty proper subset".into(),
        ));
    }
    Ok(mask)
}

/// Gathers the bits of `index` selected by `mask` into a compact integer.
fn gather(index: usize, mask: u64, width: usize) -> usize {
    let mut out = 0;
    for bit in (0..width).rev() {
        if mask & (1 << bit) != 0 {
            out = (out << 1) | ((index >> bit) & 1);
        }
    }
    out
}

fn schmidt_from_mask(amplitudes: &[Complex64], subsystems: usize, mask: u64) -> EntanglementReport {
    let side = mask.count_ones() as usize;
    let complement = !mask & ((1u64 << subsystems) - 1);
    let mut m = DMatrix::<Complex64>::zeros(1 << side, 1 << (subsystems - side));
    for (idx, a) in amplitudes.iter().enumerate() {
        m[(
            gather(idx, mask, subsystems),
            gather(idx, complement, subsystems),
        )] = *a;
    }
    let mut schmidt_values: Vec<f64> = m
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    schmidt_values.sort_by(|a, b| b.total_cmp(a));
    let entropy = entropy_bits(&schmidt_values);
    let bipartition = (1..=subsystems)
        .filter(|q| mask & (1 << (subsystems - q)) != 0)
        .collect();
    EntanglementReport {
        bipartition,
        schmidt_values,
        entropy,
        is_product: entropy < PRODUCT_TOL,
    }
}

fn entropy_bits(schmidt_values: &[f64]) -> f64 {
    schmidt_values
        .iter()
        .map(|v| v * v)
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum::<f64>()
        .max(0.0)
}

fn schmidt_of(
    amplitudes: &[Complex64],
    subsystems: usize,
    bipartition: &[usize],
) -> Result<EntanglementReport> {
    let mask = check_bipartition(bipartition, subsystems)?;
    Ok(schmidt_from_mask(amplitudes, subsystems, mask))
}

fn max_over_bipartitions(
    amplitudes: &[Complex64],
    subsystems: usize,
) -> Result<EntanglementReport> {
    if subsystems < 2 {
        return Ok(EntanglementReport::trivial());
    }
    if subsystems > MAX_EXHAUSTIVE_SUBSYSTEMS {
        return Err(Error::Resource(format!(
            "{subsystems} subsystems exceed the exhaustive limit {MAX_EXHAUSTIVE_SUBSYSTEMS}"
        )));
    }
    // subsystem 1 always on the listed side: each cut is visited once
    let top = 1u64 << (subsystems - 1);
    let full = (1u64 << subsystems) - 1;
    let mut best: Option<EntanglementReport> = None;
    for rest in 0..top {
        let mask = top | rest;
        if mask == full {
            continue;
        }
        let report = schmidt_from_mask(amplitudes, subsystems, mask);
        if best.as_ref().is_none_or(|b| report.entropy > b.entropy) {
            best = Some(report);
        }
    }
    Ok(best.expect("at least one bipartition for two or more subsystems"))
}

fn bind(view: &DecompositionView, n: usize) -> Result<DecompositionView> {
    let bound = DecompositionView::new(view.kind, n)?;
    if bound.subsystems != view.subsystems {
        return Err(Error::Decomposition(format!(
            "view declares {} subsystems but n = {n} gives {}",
            view.subsystems, bound.subsystems
        )));
    }
    Ok(bound)
}

/// Schmidt spectrum of `state` across `bipartition` in `view`. The unary
/// view has a single subsystem and always reports a product.
pub fn schmidt_spectrum(
    state: &ModeState,
    view: &DecompositionView,
    bipartition: &[usize],
) -> Result<EntanglementReport> {
    match view.kind {
        ViewKind::Unary => Ok(EntanglementReport::trivial()),
        ViewKind::Qubit => {
            let bound = bind(view, state.n())?;
            schmidt_of(state.amplitudes(), bound.subsystems, bipartition)
        }
        ViewKind::SecondQuantized => {
            second_quantized_embedding(state)?.schmidt_spectrum(bipartition)
        }
    }
}

/// The most entangled cut of `state` in `view`, searched exhaustively.
pub fn max_entanglement(state: &ModeState, view: &DecompositionView) -> Result<EntanglementReport> {
    match view.kind {
        ViewKind::Unary => Ok(EntanglementReport::trivial()),
        ViewKind::Qubit => {
            let bound = bind(view, state.n())?;
            max_over_bipartitions(state.amplitudes(), bound.subsystems)
        }
        ViewKind::SecondQuantized => second_quantized_embedding(state)?.max_entanglement(),
    }
}

/// Qubit-view entropies along a Grover run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntanglementTrace {
    pub n: usize,
    /// Max entropy of `𝓑·state` at iteration 0 and after each pass.
    pub boundary: Vec<f64>,
    /// Max entropy right after the box in pass `k` (entry `k − 1`).
    pub mid_pass: Vec<f64>,
}

/// Runs `k_max` passes and records qubit-view entropies in the uniform
/// frame, both at pass boundaries and just after each box transit.
pub fn grover_entanglement_trace(
    n: usize,
    target: usize,
    k_max: usize,
) -> Result<EntanglementTrace> {
    let view = DecompositionView::new(ViewKind::Qubit, n)?;
    let oracle = OracleBox::new(n, target)?;
    let net = SplitterNetwork::synthesize_balanced(n)?;

    let mut state = ModeState::basis(n, 1)?;
    let mut boundary = Vec::with_capacity(k_max + 1);
    let mut mid_pass = Vec::with_capacity(k_max);
    let frame = net.apply(&state)?;
    boundary.push(max_entanglement(&frame, &view)?.entropy);
    for _ in 0..k_max {
        let spread = net.apply(&state)?;
        let probe = OracleBox::new(n, target)?;
        mid_pass.push(max_entanglement(&probe.quantum_query(&spread)?, &view)?.entropy);
        state = grover_pass(&state, &oracle, &net)?;
        boundary.push(max_entanglement(&net.apply(&state)?, &view)?.entropy);
    }
    Ok(EntanglementTrace {
        n,
        boundary,
        mid_pass,
    })
}
