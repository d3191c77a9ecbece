use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{CMat, LagrangianLoop, MaslovError, LAGRANGIAN_TOLERANCE};
use crate::par;

/// A step whose `det²` argument change reaches this is rejected.
pub const STEP_GUARD: f64 = PI / 2.0;

/// Steps within this of the guard count as reaching it, so an exact quarter
/// turn is rejected regardless of rounding.
const GUARD_SLACK: f64 = 1e-9;

/// Allowed distance of the accumulated winding from an integer.
pub const WINDING_TOLERANCE: f64 = 1e-6;

const POLAR_MAX_ITERATIONS: usize = 100;
const POLAR_TOLERANCE: f64 = 1e-14;
const DEGENERACY_RATIO: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaslovIndex {
    pub value: i64,
    /// Accumulated winding in turns before rounding.
    pub winding: f64,
    /// Largest per-step `det²` argument change, in radians.
    pub min_gap: f64,
    pub steps: usize,
}

/// Relative size of `Im(Z* Z)`, which vanishes exactly when the columns span
/// a Lagrangian subspace.
pub(crate) fn lagrangian_defect(frame: &CMat) -> f64 {
    let gram = &frame.adjoint() * frame;
    let scale = frame.norm().powi(2).max(f64::MIN_POSITIVE);
    gram.max_imag() / scale
}

/// `|det Z|` over the product of column norms: 1 for orthogonal columns, 0
/// for dependent ones.
fn hadamard_ratio(frame: &CMat) -> f64 {
    let n = frame.n();
    let cols: f64 = (0..n)
        .map(|j| (0..n).map(|i| frame[(i, j)].norm_sqr()).sum::<f64>().sqrt())
        .product();
    if cols == 0.0 {
        0.0
    } else {
        frame.det().norm() / cols
    }
}

pub(crate) fn check_frame(frame: &CMat, sample: usize) -> Result<(), MaslovError> {
    if hadamard_ratio(frame) < DEGENERACY_RATIO {
        return Err(MaslovError::DegenerateFrame { sample });
    }
    let defect = lagrangian_defect(frame);
    if defect > LAGRANGIAN_TOLERANCE {
        return Err(MaslovError::NotLagrangian { sample, defect });
    }
    Ok(())
}

pub(crate) fn unitary_at(frame: &CMat, sample: usize) -> Result<CMat, MaslovError> {
    check_frame(frame, sample)?;
    let degenerate = MaslovError::DegenerateFrame { sample };
    // Scaled Newton iteration X <- (g X + X^{-*} / g) / 2. For a Lagrangian
    // frame X^{-*} = X (X* X)^{-1} with X* X real, so every iterate is the
    // frame times a real matrix and spans the same real subspace.
    let mut x = frame.clone();
    for _ in 0..POLAR_MAX_ITERATIONS {
        let y = x.inverse().ok_or_else(|| degenerate.clone())?.adjoint();
        let g = (y.norm() / x.norm()).sqrt();
        let next = (&x.scale(g) + &y.scale(1.0 / g)).scale(0.5);
        let moved = (&next - &x).norm();
        x = next;
        if moved <= POLAR_TOLERANCE * (x.n() as f64).sqrt() {
            break;
        }
    }
    let unitary_defect = (&(&x.adjoint() * &x) - &CMat::identity(x.n())).norm();
    if unitary_defect > 1e-10 {
        return Err(degenerate);
    }
    Ok(x)
}

/// Unitary matrix whose columns span the same real subspace as `frame`.
pub fn unitary_representative(frame: &CMat) -> Result<CMat, MaslovError> {
    unitary_at(frame, 0)
}

/// `det²` of the unitary representative, a point on the unit circle that
/// depends only on the subspace.
pub fn det_squared(frame: &CMat) -> Result<Complex64, MaslovError> {
    let d = unitary_representative(frame)?.det();
    Ok(d * d)
}

pub fn maslov_index(lp: &LagrangianLoop) -> Result<MaslovIndex, MaslovError> {
    let samples = lp.samples();
    let points = par::map_range(0..samples.len(), |t| {
        let d = unitary_at(&samples[t], t)?.det();
        Ok(d * d)
    })
    .into_iter()
    .collect::<Result<Vec<Complex64>, MaslovError>>()?;

    let k = points.len();
    let mut total = 0.0;
    let mut worst: f64 = 0.0;
    for t in 0..k {
        let change = (points[(t + 1) % k] * points[t].conj()).arg();
        if change.abs() >= STEP_GUARD - GUARD_SLACK {
            return Err(MaslovError::InsufficientSampling { step: t, change });
        }
        worst = worst.max(change.abs());
        total += change;
    }
    let winding = total / (2.0 * PI);
    let value = winding.round();
    if (winding - value).abs() > WINDING_TOLERANCE {
        return Err(MaslovError::NonInteger { winding });
    }
    Ok(MaslovIndex {
        value: value as i64,
        winding,
        min_gap: worst,
        steps: k,
    })
}
