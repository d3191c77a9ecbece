use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::index::check_frame;
use super::{CMat, MaslovError, LAGRANGIAN_TOLERANCE};

/// Closed loop of Lagrangian subspaces sampled at `t = 0, 1/K, .., (K-1)/K`.
/// The last sample connects back to the first.
#[derive(Clone, Debug, PartialEq)]
pub struct LagrangianLoop {
    n: usize,
    samples: Vec<CMat>,
}

/// Serialized loop: each sample is an `n x n` frame given row-major as
/// `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopJson {
    pub n: usize,
    pub samples: Vec<Vec<[f64; 2]>>,
}

impl LagrangianLoop {
    pub fn new(n: usize, samples: Vec<CMat>) -> Result<Self, MaslovError> {
        if samples.is_empty() || n == 0 {
            return Err(MaslovError::Empty);
        }
        for (i, s) in samples.iter().enumerate() {
            if s.n() != n {
                return Err(MaslovError::Shape { sample: i, n });
            }
            check_frame(s, i)?;
        }
        Ok(Self { n, samples })
    }

    /// Samples `f` at `t = s / k` for `s = 0..k`.
    pub fn from_fn(n: usize, k: usize, f: impl Fn(f64) -> CMat) -> Result<Self, MaslovError> {
        Self::new(n, (0..k).map(|s| f(s as f64 / k as f64)).collect())
    }

    /// `t -> diag(e^{iπ k_j t})`. Each factor turns its real line by `k_j`
    /// half-turns, so the index is `Σ k_j`.
    pub fn rotating(ks: &[i64], samples: usize) -> Result<Self, MaslovError> {
        Self::from_fn(ks.len(), samples, |t| {
            CMat::diagonal(&ks.iter().map(|&k| Complex64::from_polar(1.0, PI * k as f64 * t)).collect::<Vec<_>>())
        })
    }

    pub fn constant(frame: CMat, samples: usize) -> Result<Self, MaslovError> {
        let n = frame.n();
        Self::new(n, vec![frame; samples])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn samples(&self) -> &[CMat] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Same loop traversed backwards from the same basepoint.
    pub fn reverse(&self) -> Self {
        let mut samples = vec![self.samples[0].clone()];
        samples.extend(self.samples[1..].iter().rev().cloned());
        Self { n: self.n, samples }
    }

    /// Replaces sample `t` by `Z_t G_t`. Each `G_t` must be real and
    /// invertible for the subspaces to stay the same.
    pub fn reframe(&self, changes: &[CMat]) -> Result<Self, MaslovError> {
        assert_eq!(changes.len(), self.len());
        Self::new(self.n, self.samples.iter().zip(changes).map(|(z, g)| z * g).collect())
    }

    /// Whether two frames span the same real subspace: `A^{-1} B` is real.
    pub fn same_subspace(a: &CMat, b: &CMat) -> bool {
        match a.inverse() {
            None => false,
            Some(inv) => {
                let m = &inv * b;
                m.max_imag() <= LAGRANGIAN_TOLERANCE * m.norm().max(1.0)
            }
        }
    }

    pub fn to_json(&self) -> LoopJson {
        LoopJson {
            n: self.n,
            samples: self
                .samples
                .iter()
                .map(|s| s.entries().iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }

    pub fn from_json(json: &LoopJson) -> Result<Self, MaslovError> {
        let n = json.n;
        let samples = json
            .samples
            .iter()
            .enumerate()
            .map(|(i, s)| {
                if s.len() != n * n {
                    return Err(MaslovError::Shape { sample: i, n });
                }
                Ok(CMat::from_rows(n, s.iter().map(|&[re, im]| Complex64::new(re, im)).collect()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, samples)
    }

    pub fn from_json_str(s: &str) -> Result<Self, MaslovError> {
        let json: LoopJson = serde_json::from_str(s).map_err(|e| MaslovError::Json(e.to_string()))?;
        Self::from_json(&json)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("loop serializes")
    }
}

/// `a` followed by `b`. Both must start at the same subspace.
pub fn concatenate(a: &LagrangianLoop, b: &LagrangianLoop) -> Result<LagrangianLoop, MaslovError> {
    if a.n != b.n || !LagrangianLoop::same_subspace(&a.samples[0], &b.samples[0]) {
        return Err(MaslovError::BasepointMismatch);
    }
    let mut samples = a.samples.clone();
    samples.extend(b.samples.iter().cloned());
    Ok(LagrangianLoop { n: a.n, samples })
}
