use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{generator_values, page_shift, ring_dims, GeneratorValue, PageStep, TheoremError, EXHAUSTIVE_GENERATORS};
use crate::floercomplex::nu;
use crate::gradedalg::{
    derivation_from_generator_values, enumerate_derivations, top_class_nonvanishing, vanishing_lemma, Derivation,
    GradedRing, TopClassWitness,
};

const NL: usize = 2;

/// Why `δ₁` cannot vanish on a displaceable torus with `NL = 2`: if it did,
/// every later page would be forced and `E_∞` would be the whole ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaOneArgument {
    pub later_steps: Vec<PageStep>,
    pub einf_dims_if_zero: Vec<usize>,
    pub contradicts_hf_zero: bool,
}

/// One nonzero shift -1 derivation and the two reasons it does not kill the
/// top class. `evaluated_d_top` is the direct evaluation, present in the
/// exhaustive branch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopClassCase {
    pub values: Vec<GeneratorValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evaluated_d_top: Option<String>,
    pub witness: TopClassWitness,
    pub agree: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Exhaustive,
    Constructive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustiveSummary {
    pub derivations: usize,
    pub nonzero: usize,
    pub top_nonvanishing: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoDiscReport {
    pub n: usize,
    #[serde(rename = "NL")]
    pub nl: usize,
    pub delta1_nonzero: DeltaOneArgument,
    pub branch: Branch,
    pub cases: Vec<TopClassCase>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exhaustive: Option<ExhaustiveSummary>,
    /// Whether every case holds in both branches. Only set when both ran.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branches_agree: Option<bool>,
}

impl TwoDiscReport {
    pub fn holds(&self) -> bool {
        self.delta1_nonzero.contradicts_hf_zero
            && !self.cases.is_empty()
            && self.cases.iter().all(|c| c.witness.identity_holds && c.agree)
            && self.branches_agree != Some(false)
    }
}

fn constructive_case(d: &Derivation, evaluate: bool) -> Result<TopClassCase, TheoremError> {
    let witness = top_class_nonvanishing(d)?;
    let ring = d.ring();
    let evaluated = evaluate.then(|| d.apply(&ring.basis_element(ring.dim() - 1)));
    let agree = witness.identity_holds
        && witness.d_top != "0"
        && evaluated
            .as_ref()
            .is_none_or(|e| !e.is_zero() && d.format_element(e) == witness.d_top);
    Ok(TopClassCase {
        values: generator_values(d),
        evaluated_d_top: evaluated.map(|e| d.format_element(&e)),
        witness,
        agree,
    })
}

/// Shows that `δ₁` is nonzero and that no nonzero `δ₁` kills the top class
/// of `T^n`. Up to [`EXHAUSTIVE_GENERATORS`] every derivation is checked
/// both by evaluation and by the basis-completion witness; above that only
/// the witness for `x1 -> 1` is produced.
pub fn maslov_two_disc_argument(n: usize) -> Result<TwoDiscReport, TheoremError> {
    if n < 2 {
        return Err(TheoremError::HypothesisFailure(format!("n = {n}, need n >= 2")));
    }
    let ring = Arc::new(GradedRing::exterior(n)?);
    let later_steps = (2..=nu(n, NL))
        .map(|r| {
            let shift = page_shift(r, NL);
            Ok(PageStep::Vanishing {
                r,
                shift,
                certificate: vanishing_lemma(&ring, shift)?,
            })
        })
        .collect::<Result<Vec<_>, TheoremError>>()?;
    let einf = ring_dims(&ring);
    let delta1_nonzero = DeltaOneArgument {
        later_steps,
        contradicts_hf_zero: einf.iter().any(|&d| d > 0),
        einf_dims_if_zero: einf,
    };

    if n <= EXHAUSTIVE_GENERATORS {
        let all = enumerate_derivations(&ring, -1)?;
        let nonzero: Vec<&Derivation> = all.iter().filter(|d| !d.is_zero()).collect();
        let cases = nonzero
            .iter()
            .map(|d| constructive_case(d, true))
            .collect::<Result<Vec<_>, _>>()?;
        let top_nonvanishing = cases
            .iter()
            .filter(|c| c.evaluated_d_top.as_deref().is_some_and(|e| e != "0"))
            .count();
        let witnessed = cases.iter().filter(|c| c.witness.identity_holds).count();
        Ok(TwoDiscReport {
            n,
            nl: NL,
            delta1_nonzero,
            branch: Branch::Exhaustive,
            branches_agree: Some(top_nonvanishing == witnessed && cases.iter().all(|c| c.agree)),
            exhaustive: Some(ExhaustiveSummary {
                derivations: all.len(),
                nonzero: nonzero.len(),
                top_nonvanishing,
            }),
            cases,
        })
    } else {
        let mut values = vec![ring.zero_element(); n];
        values[0] = ring.unit_element();
        let d = derivation_from_generator_values(&ring, -1, &values)?;
        Ok(TwoDiscReport {
            n,
            nl: NL,
            delta1_nonzero,
            branch: Branch::Constructive,
            cases: vec![constructive_case(&d, false)?],
            exhaustive: None,
            branches_agree: None,
        })
    }
}
