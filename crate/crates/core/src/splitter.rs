//! The balanced `n`-way beam splitter built from two-mode splitters.
//!
//! The construction is a left-leaning chain: splitter `k` acts on modes
//! `(k, k+1)` with `cos θ_k = √(1/(n−k+1))`. Fed with `|1⟩`, each splitter
//! leaves `1/√n` behind in mode `k` and passes the rest onward, so exactly
//! `n − 1` splitters are used for any `n`. Only the column `𝓑|1⟩` is pinned;
//! the other columns are whatever the chain produces.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::mode::{ModeState, TwoModeSplitter};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Adjoint,
}

impl Direction {
    fn flipped(self) -> Self {
        match self {
            Direction::Forward => Direction::Adjoint,
            Direction::Adjoint => Direction::Forward,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Direction::Forward => "forward",
            Direction::Adjoint => "adjoint",
        }
    }
}

/// An ordered list of two-mode splitters applied first to last.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplitterNetwork {
    n: usize,
    layers: Vec<TwoModeSplitter>,
    direction: Direction,
}

impl SplitterNetwork {
    /// Builds `𝓑`, mapping `|1⟩` to the uniform superposition.
    pub fn synthesize_balanced(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("balanced splitter needs n >= 1".into()));
        }
        let layers = (1..n)
            .map(|k| {
                let theta = (1.0 / (n - k + 1) as f64).sqrt().acos();
                TwoModeSplitter::new(k, k + 1, theta, 0.0)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            n,
            layers,
            direction: Direction::Forward,
        })
    }

    /// Wraps an explicit layer list, validating every splitter against `n`.
    pub fn from_layers(
        n: usize,
        layers: Vec<TwoModeSplitter>,
        direction: Direction,
    ) -> Result<Self> {
        for layer in &layers {
            let (i, j) = layer.modes();
            Error::check_index(i, n)?;
            Error::check_index(j, n)?;
        }
        Ok(Self {
            n,
            layers,
            direction,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn layers(&self) -> &[TwoModeSplitter] {
        &self.layers
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Reversed order with every block inverted.
    pub fn adjoint(&self) -> Self {
        Self {
            n: self.n,
            layers: self.layers.iter().rev().map(|s| s.inverse()).collect(),
            direction: self.direction.flipped(),
        }
    }

    pub fn apply(&self, state: &ModeState) -> Result<ModeState> {
        Error::check_dim(self.n, state.n())?;
        let mut amplitudes = state.amplitudes().to_vec();
        self.apply_to_slice(&mut amplitudes)?;
        Ok(ModeState::from_raw(amplitudes))
    }

    /// Applies the adjoint without materializing it.
    pub fn apply_adjoint(&self, state: &ModeState) -> Result<ModeState> {
        Error::check_dim(self.n, state.n())?;
        let mut amplitudes = state.amplitudes().to_vec();
        self.apply_adjoint_to_slice(&mut amplitudes)?;
        Ok(ModeState::from_raw(amplitudes))
    }

    /// In-place action on a raw amplitude slice; the slice need not be
    /// normalized (classical fields use this too).
    pub fn apply_to_slice(&self, amplitudes: &mut [num_complex::Complex64]) -> Result<()> {
        Error::check_dim(self.n, amplitudes.len())?;
        for layer in &self.layers {
            layer.apply_in_place(amplitudes)?;
        }
        Ok(())
    }

    pub fn apply_adjoint_to_slice(&self, amplitudes: &mut [num_complex::Complex64]) -> Result<()> {
        Error::check_dim(self.n, amplitudes.len())?;
        for layer in self.layers.iter().rev() {
            layer.inverse().apply_in_place(amplitudes)?;
        }
        Ok(())
    }

    /// Plain-text netlist: a header comment, then one `i j theta phi` line
    /// per splitter in application order.
    pub fn to_netlist(&self) -> String {
        let mut out = format!(
            "# splitter-network n={} direction={} splitters={}\n",
            self.n,
            self.direction.as_str(),
            self.layers.len()
        );
        for s in &self.layers {
            let (i, j) = s.modes();
            let _ = writeln!(out, "{i} {j} {:?} {:?}", s.theta(), s.phi());
        }
        out
    }
}

impl FromStr for SplitterNetwork {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |msg: String| Error::Contract(format!("netlist: {msg}"));
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad("empty input".into()))?;
        let mut n = None;
        let mut direction = None;
        for field in header.trim_start_matches('#').split_whitespace() {
            if let Some(v) = field.strip_prefix("n=") {
                n = Some(v.parse::<usize>().map_err(|e| bad(e.to_string()))?);
            } else if let Some(v) = field.strip_prefix("direction=") {
                direction = Some(match v {
                    "forward" => Direction::Forward,
                    "adjoint" => Direction::Adjoint,
                    other => return Err(bad(format!("unknown direction {other}"))),
                });
            }
        }
        let n = n.ok_or_else(|| bad("header lacks n=".into()))?;
        let direction = direction.unwrap_or(Direction::Forward);

        let mut layers = Vec::new();
        for line in lines
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(bad(format!("expected 4 fields in {line:?}")));
            }
            let i = fields[0]
                .parse()
                .map_err(|_| bad(format!("bad mode in {line:?}")))?;
            let j = fields[1]
                .parse()
                .map_err(|_| bad(format!("bad mode in {line:?}")))?;
            let theta = fields[2]
                .parse()
                .map_err(|_| bad(format!("bad angle in {line:?}")))?;
            let phi = fields[3]
                .parse()
                .map_err(|_| bad(format!("bad angle in {line:?}")))?;
            layers.push(TwoModeSplitter::new(i, j, theta, phi)?);
        }
        Self::from_layers(n, layers, direction)
    }
}
