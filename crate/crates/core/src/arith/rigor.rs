//! Precision policy, three-valued comparison results and the global
//! comparison audit.
//!
//! Every inequality in the verifier is decided through [`Certified`]. A
//! comparison only answers `True` or `False` when the two intervals are
//! separated; overlapping intervals answer `Undecided`, and callers react
//! by escalating precision. The audit counters record every decision
//! together with an independent re-check that the operands really were
//! separated, so test suites can assert that nothing was ever decided on a
//! straddling pair.

use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_START_BITS: u32 = 192;
pub const DEFAULT_CEILING_BITS: u32 = 16384;

/// Working precision ladder: start, double on ambiguity, stop at the ceiling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    pub start_bits: u32,
    pub ceiling_bits: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            start_bits: DEFAULT_START_BITS,
            ceiling_bits: DEFAULT_CEILING_BITS,
        }
    }
}

impl PrecisionPolicy {
    pub fn new(start_bits: u32, ceiling_bits: u32) -> Result<Self> {
        if start_bits < 16 {
            return Err(Error::Config(format!(
                "start precision {start_bits} is below the 16-bit minimum"
            )));
        }
        if ceiling_bits < start_bits {
            return Err(Error::Config(format!(
                "precision ceiling {ceiling_bits} is below the start precision {start_bits}"
            )));
        }
        Ok(PrecisionPolicy {
            start_bits,
            ceiling_bits,
        })
    }

    /// The doubling ladder `start, 2·start, …` capped at the ceiling.
    pub fn ladder(&self) -> impl Iterator<Item = u32> {
        let ceiling = self.ceiling_bits;
        let mut next = Some(self.start_bits);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur >= ceiling {
                None
            } else {
                Some(cur.saturating_mul(2).min(ceiling))
            };
            Some(cur)
        })
    }

    /// Runs `attempt` at increasing precision until it returns `Some`.
    ///
    /// `attempt` returns `Ok(None)` when some comparison stayed undecided.
    /// Errors other than [`Error::QuotientAmbiguous`] abort immediately; an
    /// ambiguous partial quotient is treated like an undecided comparison.
    pub fn escalate<T>(
        &self,
        what: &str,
        mut attempt: impl FnMut(u32) -> Result<Option<T>>,
    ) -> Result<(T, u32)> {
        for bits in self.ladder() {
            match attempt(bits) {
                Ok(Some(v)) => return Ok((v, bits)),
                Ok(None) | Err(Error::QuotientAmbiguous { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::PrecisionExhausted {
            what: what.to_string(),
            ceiling_bits: self.ceiling_bits,
        })
    }
}

/// Outcome of a certified comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Certified {
    True,
    False,
    Undecided,
}

impl Certified {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Certified::True
        } else {
            Certified::False
        }
    }

    pub fn is_true(self) -> bool {
        self == Certified::True
    }

    pub fn is_false(self) -> bool {
        self == Certified::False
    }

    pub fn decided(self) -> Option<bool> {
        match self {
            Certified::True => Some(true),
            Certified::False => Some(false),
            Certified::Undecided => None,
        }
    }

    pub fn and(self, other: Certified) -> Certified {
        match (self, other) {
            (Certified::False, _) | (_, Certified::False) => Certified::False,
            (Certified::True, Certified::True) => Certified::True,
            _ => Certified::Undecided,
        }
    }

    pub fn not(self) -> Certified {
        match self {
            Certified::True => Certified::False,
            Certified::False => Certified::True,
            Certified::Undecided => Certified::Undecided,
        }
    }
}

static DECIDED: AtomicU64 = AtomicU64::new(0);
static UNDECIDED: AtomicU64 = AtomicU64::new(0);
static STRADDLE_DECISIONS: AtomicU64 = AtomicU64::new(0);

/// Snapshot of the process-wide comparison audit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AuditSnapshot {
    pub decided: u64,
    pub undecided: u64,
    pub straddle_decisions: u64,
}

pub fn audit() -> AuditSnapshot {
    AuditSnapshot {
        decided: DECIDED.load(Ordering::Relaxed),
        undecided: UNDECIDED.load(Ordering::Relaxed),
        straddle_decisions: STRADDLE_DECISIONS.load(Ordering::Relaxed),
    }
}

/// Records one comparison. `separated` is the independently recomputed
/// fact that the operand intervals do not overlap in their interiors.
pub(crate) fn record(outcome: Certified, separated: bool) {
    match outcome {
        Certified::Undecided => {
            UNDECIDED.fetch_add(1, Ordering::Relaxed);
        }
        _ => {
            DECIDED.fetch_add(1, Ordering::Relaxed);
            if !separated {
                STRADDLE_DECISIONS.fetch_add(1, Ordering::Relaxed);
            }
        }
    }
}
