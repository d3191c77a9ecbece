//! Drivers that run the page-vanishing induction on cohomology rings and
//! report what it forces.
//!
//! For a Lagrangian whose cohomology ring is generated in degree 1, `δ_r` is
//! a derivation of shift `1 - r·NL` on `V_r`. Shifts at most -2 kill every
//! derivation of such a ring, so as long as `V_r` is still the ring the page
//! does not change. The drivers record one step per page and stop at the
//! first page where a nonzero derivation is possible.

mod audin;
mod projective;
mod two_disc;

pub use audin::{audin_general, audin_grid, audin_torus, AudinVerdict, Verdict};
pub use projective::{rpn_driver, ProjectiveReport};
pub use two_disc::{maslov_two_disc_argument, Branch, DeltaOneArgument, ExhaustiveSummary, TopClassCase, TwoDiscReport};

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::floercomplex::{perfect_ring_complex, FloerError};
use crate::gradedalg::{
    derivation_from_generator_values, enumerate_derivations, vanishing_lemma, Derivation, GradedError, GradedRing,
    VanishingCertificate,
};
use crate::spectral::{check_convergence, run_to_collapse, SpectralError, SpectralOptions};

/// Rings with at most this many degree-1 generators get exhaustive
/// derivation enumeration.
pub const EXHAUSTIVE_GENERATORS: usize = 4;

/// Rings up to this dimension are also pushed through the spectral engine.
pub const ENGINE_CHECK_DIM: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoremError {
    #[error("hypothesis fails: {0}")]
    HypothesisFailure(String),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Floer(#[from] FloerError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Why page `r` equals page `r + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum PageStep {
    /// Every derivation of this shift vanishes on a degree-1-generated ring.
    Vanishing {
        r: usize,
        shift: i32,
        certificate: VanishingCertificate,
    },
    /// Exhaustive enumeration found only the zero derivation.
    Enumerated { r: usize, shift: i32, derivations: usize },
}

impl PageStep {
    pub fn r(&self) -> usize {
        match self {
            PageStep::Vanishing { r, .. } | PageStep::Enumerated { r, .. } => *r,
        }
    }

    pub fn shift(&self) -> i32 {
        match self {
            PageStep::Vanishing { shift, .. } | PageStep::Enumerated { shift, .. } => *shift,
        }
    }

    /// Recomputes the step on `ring`.
    pub fn replay(&self, ring: &Arc<GradedRing>) -> bool {
        match self {
            PageStep::Vanishing { shift, certificate, .. } => {
                certificate.shift == *shift && certificate.replay(ring)
            }
            PageStep::Enumerated { shift, derivations, .. } => {
                matches!(enumerate_derivations(ring, *shift), Ok(all) if all.len() == *derivations
                    && all.iter().all(Derivation::is_zero))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorValue {
    pub generator: String,
    pub value: String,
}

pub(crate) fn generator_values(d: &Derivation) -> Vec<GeneratorValue> {
    let ring = d.ring();
    ring.generators()
        .into_iter()
        .zip(d.generator_values())
        .map(|(g, v)| GeneratorValue {
            generator: ring.name(g).to_string(),
            value: d.format_element(&v),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessSource {
    /// First nonzero derivation in enumeration order.
    Enumerated { derivations: usize, nonzero: usize },
    /// One generator sent to the unit, the rest to zero.
    Constructed,
}

/// E_∞ and folded homology of the perfect ring complex built from a
/// derivation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineCheck {
    pub e_inf: Vec<usize>,
    pub folded: Vec<usize>,
    pub converges: bool,
}

/// A nonzero derivation that `δ_r` could be, so the page is not forced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaWitness {
    pub r: usize,
    pub shift: i32,
    pub source: WitnessSource,
    pub values: Vec<GeneratorValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub engine: Option<EngineCheck>,
}

pub(crate) fn engine_check(
    ring: &GradedRing,
    nl: usize,
    d1: Option<&Derivation>,
) -> Result<EngineCheck, TheoremError> {
    let fc = perfect_ring_complex(ring, nl, d1)?;
    let run = run_to_collapse(&fc, &SpectralOptions::default())?;
    let conv = check_convergence(&fc, &run)?;
    Ok(EngineCheck {
        e_inf: run.e_inf.clone(),
        folded: fc.folded_homology()?,
        converges: conv.converges() && run.checks_passed(),
    })
}

/// Finds a nonzero shift -1 derivation, or shows there is none.
fn shift_minus_one_search(ring: &Arc<GradedRing>) -> Result<Result<(Derivation, WitnessSource), usize>, GradedError> {
    let gens = ring.generators();
    if gens.len() > EXHAUSTIVE_GENERATORS {
        for i in 0..gens.len() {
            let mut values = vec![ring.zero_element(); gens.len()];
            values[i] = ring.unit_element();
            if let Ok(d) = derivation_from_generator_values(ring, -1, &values) {
                return Ok(Ok((d, WitnessSource::Constructed)));
            }
        }
    }
    let all = enumerate_derivations(ring, -1)?;
    let total = all.len();
    let nonzero = all.iter().filter(|d| !d.is_zero()).count();
    Ok(match all.into_iter().find(|d| !d.is_zero()) {
        Some(d) => Ok((
            d,
            WitnessSource::Enumerated {
                derivations: total,
                nonzero,
            },
        )),
        None => Err(total),
    })
}

/// Result of running the induction over pages `1..=ν`.
pub(crate) struct Induction {
    pub steps: Vec<PageStep>,
    pub witness: Option<(usize, Derivation, WitnessSource)>,
}

impl Induction {
    pub fn forced(&self) -> bool {
        self.witness.is_none()
    }
}

/// Shift of `δ_r` for Maslov number `nl`.
pub fn page_shift(r: usize, nl: usize) -> i32 {
    1 - (r * nl) as i32
}

pub(crate) fn induction(ring: &Arc<GradedRing>, nl: usize, nu: usize) -> Result<Induction, GradedError> {
    ring.generation()?;
    let mut steps = Vec::with_capacity(nu);
    for r in 1..=nu {
        let shift = page_shift(r, nl);
        if shift <= -2 {
            steps.push(PageStep::Vanishing {
                r,
                shift,
                certificate: vanishing_lemma(ring, shift)?,
            });
            continue;
        }
        match shift_minus_one_search(ring)? {
            Ok((d, source)) => {
                return Ok(Induction {
                    steps,
                    witness: Some((r, d, source)),
                })
            }
            Err(derivations) => steps.push(PageStep::Enumerated { r, shift, derivations }),
        }
    }
    Ok(Induction { steps, witness: None })
}

/// Ring dimensions in degrees `0..=top`.
pub(crate) fn ring_dims(ring: &GradedRing) -> Vec<usize> {
    (0..=ring.top_degree().max(0)).map(|d| ring.dim_in_degree(d)).collect()
}
