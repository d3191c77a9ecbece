use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{engine_check, generator_values, induction, ring_dims, DeltaWitness, PageStep, TheoremError, ENGINE_CHECK_DIM};
use crate::floercomplex::nu;
use crate::gradedalg::{GradedError, GradedRing};
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Contradiction,
    Consistent,
}

/// Outcome of the page induction for one `(ring, NL)` cell.
///
/// `hf_assumption` is the displaceability input: when set, the Floer
/// homology is assumed to vanish. `Einf_dims` is filled in only when every
/// page is forced, in which case it equals the ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AudinVerdict {
    pub n: usize,
    #[serde(rename = "NL")]
    pub nl: usize,
    pub nu: usize,
    pub pages_forced_equal: bool,
    #[serde(rename = "Einf_dims")]
    pub einf_dims: Option<Vec<usize>>,
    pub hf_assumption: bool,
    pub verdict: Verdict,
    pub certificate: Vec<PageStep>,
    pub witness: Option<DeltaWitness>,
    pub warnings: Vec<String>,
}

impl AudinVerdict {
    /// Replays every step of the certificate on `ring`.
    pub fn replay(&self, ring: &Arc<GradedRing>) -> bool {
        self.certificate.iter().enumerate().all(|(i, s)| s.r() == i + 1 && s.replay(ring))
    }
}

fn verdict_for(ring: &Arc<GradedRing>, nl: usize, displaceable: bool) -> Result<AudinVerdict, TheoremError> {
    if nl < 2 {
        return Err(TheoremError::HypothesisFailure(format!("NL = {nl}, need NL >= 2")));
    }
    let dim_l = ring.top_degree().max(0) as usize;
    let nu = nu(dim_l, nl);
    let ind = induction(ring, nl, nu)?;
    let forced = ind.forced();
    let einf_dims = forced.then(|| ring_dims(ring));
    let nonzero = einf_dims.as_ref().is_some_and(|d| d.iter().any(|&x| x > 0));
    let witness = match &ind.witness {
        None => None,
        Some((r, d, source)) => Some(DeltaWitness {
            r: *r,
            shift: d.shift(),
            source: source.clone(),
            values: generator_values(d),
            engine: if *r == 1 && ring.dim() <= ENGINE_CHECK_DIM {
                Some(engine_check(ring, nl, Some(d))?)
            } else {
                None
            },
        }),
    };
    Ok(AudinVerdict {
        n: dim_l,
        nl,
        nu,
        pages_forced_equal: forced,
        einf_dims,
        hf_assumption: displaceable,
        verdict: if forced && nonzero && displaceable {
            Verdict::Contradiction
        } else {
            Verdict::Consistent
        },
        certificate: ind.steps,
        witness,
        warnings: Vec::new(),
    })
}

/// Runs the induction on the cohomology ring of `T^n`.
pub fn audin_torus(n: usize, nl: usize, displaceable: bool) -> Result<AudinVerdict, TheoremError> {
    let ring = Arc::new(GradedRing::exterior(n)?);
    torus_cell(&ring, nl, displaceable)
}

fn torus_cell(ring: &Arc<GradedRing>, nl: usize, displaceable: bool) -> Result<AudinVerdict, TheoremError> {
    let mut v = verdict_for(ring, nl, displaceable)?;
    if nl % 2 == 1 {
        v.warnings
            .push(format!("NL = {nl} is odd; an orientable Lagrangian has even minimal Maslov number"));
    }
    Ok(v)
}

/// Runs the induction on an arbitrary ring, which must be generated in
/// degree 1.
pub fn audin_general(ring: &Arc<GradedRing>, nl: usize, displaceable: bool) -> Result<AudinVerdict, TheoremError> {
    if let Err(e @ GradedError::NotDegreeOneGenerated { .. }) = ring.generation() {
        return Err(e.clone().into());
    }
    verdict_for(ring, nl, displaceable)
}

/// Torus verdicts for every `(n, NL)` pair, ordered by `n` then `NL`. Cells
/// run in parallel and share one ring per `n`.
pub fn audin_grid(
    ns: &[usize],
    nls: impl Fn(usize) -> Vec<usize>,
    displaceable: bool,
) -> Result<Vec<AudinVerdict>, TheoremError> {
    let mut cells = Vec::new();
    for &n in ns {
        let ring = Arc::new(GradedRing::exterior(n)?);
        for nl in nls(n) {
            cells.push((ring.clone(), nl));
        }
    }
    par::map(&cells, |(ring, nl)| torus_cell(ring, *nl, displaceable))
        .into_iter()
        .collect()
}
