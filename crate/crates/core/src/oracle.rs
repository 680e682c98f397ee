//! The box with a hidden flipping slot and its transit meter.
//!
//! The target slot is fixed at construction and has no accessor. Every
//! transit, classical or quantum, advances the meter by one; a particle in
//! superposition over all slots is still a single transit.
//!
//! The slot cannot be read back:
//!
//! ```compile_fail
//! let b = unary_search::OracleBox::new(4, 2).unwrap();
//! let _ = b.target;
//! ```
//!
//! ```compile_fail
//! let b = unary_search::OracleBox::new(4, 2).unwrap();
//! let _ = b.target();
//! ```

use std::sync::atomic::{AtomicU64, Ordering};

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::mode::ModeState;
use crate::{Error, Result};

/// Which kind of probe went through the box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbeKind {
    Coin,
    Neutron,
    Wave,
}

/// Snapshot of a box meter.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BillingReport {
    pub device_kind: ProbeKind,
    pub transits: u64,
    pub cost: f64,
    pub n: usize,
}

impl BillingReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("billing report is always serializable")
    }
}

#[derive(Debug)]
pub struct OracleBox {
    n: usize,
    target: usize,
    meter: AtomicU64,
    price_per_transit: f64,
}

impl OracleBox {
    /// A box of `n` slots flipping slot `target`, billed at $1 per transit.
    pub fn new(n: usize, target: usize) -> Result<Self> {
        Self::with_price(n, target, 1.0)
    }

    pub fn with_price(n: usize, target: usize, price_per_transit: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("a box needs at least one slot".into()));
        }
        Error::check_index(target, n)?;
        if !(price_per_transit >= 0.0 && price_per_transit.is_finite()) {
            return Err(Error::Contract(
                "price must be finite and non-negative".into(),
            ));
        }
        Ok(Self {
            n,
            target,
            meter: AtomicU64::new(0),
            price_per_transit,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn transits(&self) -> u64 {
        self.meter.load(Ordering::SeqCst)
    }

    pub fn price_per_transit(&self) -> f64 {
        self.price_per_transit
    }

    fn bill(&self) {
        self.meter.fetch_add(1, Ordering::SeqCst);
    }

    /// `𝓞 = e^{−iπ|u⟩⟨u|}`: negates the target amplitude. One transit.
    pub fn quantum_query(&self, state: &ModeState) -> Result<ModeState> {
        Error::check_dim(self.n, state.n())?;
        let mut amplitudes = state.amplitudes().to_vec();
        self.flip_slice(&mut amplitudes);
        self.bill();
        Ok(ModeState::from_raw(amplitudes))
    }

    /// Sends an unnormalized field through the box. One transit.
    pub(crate) fn transit_slice(&self, amplitudes: &mut [Complex64]) -> Result<()> {
        Error::check_dim(self.n, amplitudes.len())?;
        self.flip_slice(amplitudes);
        self.bill();
        Ok(())
    }

    fn flip_slice(&self, amplitudes: &mut [Complex64]) {
        amplitudes[self.target - 1] = -amplitudes[self.target - 1];
    }

    /// "Is the item in slot `slot`?" Out-of-range slots are rejected unbilled.
    pub fn classical_query(&self, slot: usize) -> Result<bool> {
        Error::check_index(slot, self.n)?;
        self.bill();
        Ok(slot == self.target)
    }

    /// Does not reset the meter.
    pub fn billing_report(&self, device_kind: ProbeKind) -> BillingReport {
        let transits = self.transits();
        BillingReport {
            device_kind,
            transits,
            cost: transits as f64 * self.price_per_transit,
            n: self.n,
        }
    }
}

/// Order in which a classical searcher drops coins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassicalStrategy {
    Sequential,
    RandomWithoutReplacement,
}

/// Drops coins one slot at a time until a flip is seen. After `n − 1`
/// misses the last slot is inferred without a query.
pub fn run_classical_search(
    n: usize,
    target: usize,
    strategy: ClassicalStrategy,
    seed: u64,
) -> Result<(usize, BillingReport)> {
    let oracle = OracleBox::new(n, target)?;
    let mut order: Vec<usize> = (1..=n).collect();
    if strategy == ClassicalStrategy::RandomWithoutReplacement {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        order.shuffle(&mut rng);
    }
    let (last, probes) = order.split_last().expect("n >= 1");
    let mut found = *last;
    for &slot in probes {
        if oracle.classical_query(slot)? {
            found = slot;
            break;
        }
    }
    Ok((found, oracle.billing_report(ProbeKind::Coin)))
}

/// Exact mean number of transits of the classical search with the target
/// uniform over `1..=n`: `(n−1)(n+2)/(2n)`.
pub fn expected_classical_transits(n: usize) -> f64 {
    let n = n as f64;
    (n - 1.0) * (n + 2.0) / (2.0 * n)
}
