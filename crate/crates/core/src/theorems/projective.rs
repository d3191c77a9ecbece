use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{engine_check, induction, ring_dims, EngineCheck, PageStep, TheoremError};
use crate::floercomplex::nu;
use crate::gradedalg::GradedRing;

/// Floer homology of a monotone Lagrangian with the mod 2 cohomology of
/// `RP^n` and `NL >= 3`.
///
/// `hf_by_residue[ρ]` is the rank of HF in degrees congruent to `ρ` mod NL;
/// `hf_rank` is their sum and bounds the number of transverse intersection
/// points of `L` with any Hamiltonian image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectiveReport {
    pub n: usize,
    #[serde(rename = "NL")]
    pub nl: usize,
    pub nu: usize,
    pub certificate: Vec<PageStep>,
    #[serde(rename = "Einf_dims")]
    pub einf_dims: Vec<usize>,
    pub hf_by_residue: Vec<usize>,
    pub hf_rank: usize,
    pub nondisplaceable: bool,
    pub intersection_bound: usize,
    pub engine: EngineCheck,
}

impl ProjectiveReport {
    pub fn holds(&self) -> bool {
        self.engine.converges
            && self.engine.folded == self.hf_by_residue
            && self.engine.e_inf == self.einf_dims
            && self.hf_rank == self.n + 1
    }

    pub fn replay(&self, ring: &Arc<GradedRing>) -> bool {
        self.certificate.iter().enumerate().all(|(i, s)| s.r() == i + 1 && s.replay(ring))
    }
}

pub fn rpn_driver(n: usize, nl: usize) -> Result<ProjectiveReport, TheoremError> {
    if nl < 3 {
        return Err(TheoremError::HypothesisFailure(format!("NL = {nl}, need NL >= 3")));
    }
    let ring = Arc::new(GradedRing::truncated_poly(n)?);
    let nu = nu(n, nl);
    let ind = induction(&ring, nl, nu)?;
    debug_assert!(ind.forced(), "shifts are at most -2");
    let einf_dims = ring_dims(&ring);
    let mut hf_by_residue = vec![0; nl];
    for (m, d) in einf_dims.iter().enumerate() {
        hf_by_residue[m % nl] += d;
    }
    let hf_rank = hf_by_residue.iter().sum();
    Ok(ProjectiveReport {
        n,
        nl,
        nu,
        certificate: ind.steps,
        engine: engine_check(&ring, nl, None)?,
        einf_dims,
        hf_by_residue,
        hf_rank,
        nondisplaceable: hf_rank > 0,
        intersection_bound: hf_rank,
    })
}
