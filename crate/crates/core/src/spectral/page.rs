use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{SpectralError, SpectralOptions};
use crate::f2linalg::{quotient_map, BitVec, F2Matrix, Quotient, Subspace};
use crate::floercomplex::FloerComplex;
use crate::par;

/// Page data in one Morse degree: `V_r(m) = Z_r(m) / B_r(m)` inside `C^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSlot {
    pub m: i64,
    pub z: Subspace,
    pub b: Subspace,
    quotient: Quotient,
    /// For each canonical representative `x`: `[x, y_1, ..., y_{r-1}]` with
    /// `Σ_{t<=s} ∂_{s-t} y_t = 0` for `s < r`.
    lifts: Vec<Vec<BitVec>>,
    /// `Σ_k ∂_k y_{r-k}` for each representative, in degree `m + 1 - r·NL`.
    raw: Vec<BitVec>,
}

impl DegreeSlot {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    pub fn representatives(&self) -> &[BitVec] {
        self.quotient.representatives()
    }

    pub fn lifts(&self) -> &[Vec<BitVec>] {
        &self.lifts
    }
}

/// Consistency checks recorded while building a page.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PageChecks {
    /// `δ_r ∘ δ_r = 0` in every degree.
    pub delta_squared_zero: bool,
    /// `dim V_r(m)` from the quotient equals `dim ker − dim im` of
    /// `δ_{r-1}` in every degree. Trivially true on page 0.
    pub dims_identity: bool,
    /// `Z_r` from the kernel of the full lift system matches the engine's.
    /// `None` outside paranoid mode.
    pub cycles_direct: Option<bool>,
    /// Second-lift disagreements of `δ_r`. `None` outside paranoid mode.
    pub lift_mismatches: Option<usize>,
}

impl PageChecks {
    pub fn passed(&self) -> bool {
        self.delta_squared_zero
            && self.dims_identity
            && self.cycles_direct != Some(false)
            && self.lift_mismatches.unwrap_or(0) == 0
    }
}

/// Page `r` of the spectral sequence of the T-power filtration, reduced by
/// T-periodicity to one space per Morse degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPage {
    pub r: usize,
    slots: Vec<DegreeSlot>,
    /// `delta[m]`: `V_r(m) -> V_r(m + 1 - r·NL)` in quotient coordinates.
    delta: Vec<F2Matrix>,
    pub checks: PageChecks,
}

impl SpectralPage {
    pub fn slots(&self) -> &[DegreeSlot] {
        &self.slots
    }

    /// Slot of Morse degree `m`, or `None` outside `[0, dimL]`.
    pub fn slot(&self, m: i64) -> Option<&DegreeSlot> {
        usize::try_from(m).ok().and_then(|i| self.slots.get(i))
    }

    pub fn dim(&self, m: i64) -> usize {
        self.slot(m).map_or(0, DegreeSlot::dim)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.slots.iter().map(DegreeSlot::dim).collect()
    }

    pub fn delta(&self, m: i64) -> Option<&F2Matrix> {
        usize::try_from(m).ok().and_then(|i| self.delta.get(i))
    }

    pub fn delta_ranks(&self) -> Vec<usize> {
        self.delta.iter().map(F2Matrix::rank).collect()
    }

    pub fn delta_is_zero(&self) -> bool {
        self.delta.iter().all(F2Matrix::is_zero)
    }
}

fn target_degree(fc: &FloerComplex, m: i64, r: usize) -> i64 {
    m + 1 - (r * fc.nl()) as i64
}

/// The lift system in degree `m` for a page `q`: unknowns `y_1..y_{q-1}`
/// (`y_t` in degree `m - t·NL`) and equations `Σ_{t=1}^{s} ∂_{s-t} y_t =
/// ∂_s y_0` for `s = 1..q-1`. With `with_y0` the unknowns start at `y_0` and
/// the equations at `s = 0`, all homogeneous.
struct LiftSystem {
    matrix: F2Matrix,
    col_offsets: Vec<usize>,
    col_dims: Vec<usize>,
}

fn lift_system(fc: &FloerComplex, m: i64, q: usize, with_y0: bool) -> LiftSystem {
    let nl = fc.nl() as i64;
    let morse = fc.morse();
    let t0 = usize::from(!with_y0);
    let ts: Vec<usize> = (t0..q).collect();
    let col_dims: Vec<usize> = ts.iter().map(|&t| morse.dim_in_degree(m - t as i64 * nl)).collect();
    let row_dims: Vec<usize> = ts.iter().map(|&s| morse.dim_in_degree(m + 1 - s as i64 * nl)).collect();
    let offsets = |dims: &[usize]| {
        dims.iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect::<Vec<_>>()
    };
    let col_offsets = offsets(&col_dims);
    let row_offsets = offsets(&row_dims);
    let mut matrix = F2Matrix::zeros(row_dims.iter().sum(), col_dims.iter().sum());
    for (si, &s) in ts.iter().enumerate() {
        for (ti, &t) in ts.iter().enumerate() {
            if t > s || row_dims[si] == 0 || col_dims[ti] == 0 {
                continue;
            }
            let block = fc.op_block(s - t, m - t as i64 * nl);
            matrix.xor_block(row_offsets[si], col_offsets[ti], &block);
        }
    }
    LiftSystem {
        matrix,
        col_offsets,
        col_dims,
    }
}

/// `[x, y_1, ..., y_{q-1}]` solving the lift equations, the solution chosen
/// by `F2Matrix::solve` plus `perturb` (a kernel element of the system).
fn solve_lift(
    fc: &FloerComplex,
    m: i64,
    q: usize,
    x: &BitVec,
    perturb: Option<&mut ChaCha8Rng>,
) -> Option<Vec<BitVec>> {
    if q <= 1 {
        return Some(vec![x.clone()]);
    }
    let nl = fc.nl() as i64;
    let sys = lift_system(fc, m, q, false);
    let rhs = BitVec::concat(
        &(1..q)
            .map(|s| fc.op_block(s, m).mul_vec(x))
            .collect::<Vec<_>>(),
    );
    let mut y = sys.matrix.solve(&rhs)?;
    if let Some(rng) = perturb {
        for k in sys.matrix.kernel().basis() {
            if rng.gen() {
                y.xor_assign(k);
            }
        }
    }
    let mut out = vec![x.clone()];
    for (ti, t) in (1..q).enumerate() {
        debug_assert_eq!(sys.col_dims[ti], fc.morse().dim_in_degree(m - t as i64 * nl));
        out.push(y.slice(sys.col_offsets[ti], sys.col_dims[ti]));
    }
    Some(out)
}

/// `Σ_{k=1}^{q} ∂_k y_{q-k}`, or `∂₀ y_0` on page 0.
fn raw_delta(fc: &FloerComplex, m: i64, q: usize, lift: &[BitVec]) -> BitVec {
    let nl = fc.nl() as i64;
    let target = target_degree(fc, m, q);
    let mut w = BitVec::zeros(fc.morse().dim_in_degree(target));
    if q == 0 {
        return fc.op_block(0, m).mul_vec(&lift[0]);
    }
    for k in 1..=q {
        let t = q - k;
        let block = fc.op_block(k, m - t as i64 * nl);
        w.xor_assign(&block.mul_vec(&lift[t]));
    }
    w
}

fn random_element(space: &Subspace, rng: &mut ChaCha8Rng) -> BitVec {
    let mut v = BitVec::zeros(space.ambient_dim());
    for b in space.basis() {
        if rng.gen() {
            v.xor_assign(b);
        }
    }
    v
}

fn page_rng(r: usize, m: i64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(((r as u64) << 40) ^ ((m as u64) << 8) ^ salt)
}

/// Builds page `r` from its cycle and boundary spaces per degree.
fn build_page(
    fc: &FloerComplex,
    r: usize,
    spaces: Vec<(Subspace, Subspace)>,
    opts: &SpectralOptions,
) -> Result<SpectralPage, SpectralError> {
    let dims_l = fc.dim_l() as i64;
    let slot_results = par::map_range(0..spaces.len(), |i| {
        let m = i as i64;
        let (z, b) = &spaces[i];
        let quotient = quotient_map(b, z).map_err(|_| SpectralError::NotNested { r, m })?;
        let mut lifts = Vec::with_capacity(quotient.dim());
        for x in quotient.representatives() {
            lifts.push(solve_lift(fc, m, r, x, None).ok_or(SpectralError::LiftFailure { r, m })?);
        }
        let raw = lifts.iter().map(|l| raw_delta(fc, m, r, l)).collect();
        Ok::<_, SpectralError>(DegreeSlot {
            m,
            z: z.clone(),
            b: b.clone(),
            quotient,
            lifts,
            raw,
        })
    });
    let slots: Vec<DegreeSlot> = slot_results.into_iter().collect::<Result<_, _>>()?;

    let mut delta = Vec::with_capacity(slots.len());
    for s in &slots {
        let t = target_degree(fc, s.m, r);
        let cols = s
            .raw
            .iter()
            .map(|w| match usize::try_from(t).ok().and_then(|i| slots.get(i)) {
                Some(target) => target
                    .quotient
                    .project(w)
                    .ok_or(SpectralError::NotACycle { r, m: s.m }),
                None => Ok(BitVec::zeros(0)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let rows = if (0..=dims_l).contains(&t) { slots[t as usize].dim() } else { 0 };
        delta.push(F2Matrix::from_columns(rows, &cols));
    }

    let delta_squared_zero = slots.iter().all(|s| {
        let t = target_degree(fc, s.m, r);
        match usize::try_from(t).ok().filter(|&i| i < delta.len()) {
            Some(ti) => delta[ti].mul(&delta[s.m as usize]).is_zero(),
            None => true,
        }
    });

    let mut checks = PageChecks {
        delta_squared_zero,
        dims_identity: true,
        cycles_direct: None,
        lift_mismatches: None,
    };
    if opts.paranoid {
        checks.cycles_direct = Some(slots.iter().all(|s| cycles_direct(fc, s.m, r) == s.z));
        let mismatches: usize = par::map(&slots, |s| second_lift_mismatches(fc, r, s, &slots, &delta[s.m as usize]))
            .into_iter()
            .sum();
        checks.lift_mismatches = Some(mismatches);
    }
    Ok(SpectralPage {
        r,
        slots,
        delta,
        checks,
    })
}

/// `Z_r(m)` as the projection to `y_0` of the kernel of the homogeneous lift
/// system.
fn cycles_direct(fc: &FloerComplex, m: i64, r: usize) -> Subspace {
    let dim = fc.morse().dim_in_degree(m);
    if r == 0 {
        return Subspace::full(dim);
    }
    let sys = lift_system(fc, m, r, true);
    Subspace::span(dim, sys.matrix.kernel().basis().iter().map(|v| v.slice(0, dim)))
}

/// Recomputes `δ_r` on each representative with a different representative
/// of the class and a different lift, and counts disagreements.
fn second_lift_mismatches(fc: &FloerComplex, r: usize, s: &DegreeSlot, slots: &[DegreeSlot], delta: &F2Matrix) -> usize {
    let t = target_degree(fc, s.m, r);
    let Some(target) = usize::try_from(t).ok().and_then(|i| slots.get(i)) else {
        return 0;
    };
    let mut rng = page_rng(r, s.m, 0x5eed);
    let mut bad = 0;
    for (i, x) in s.representatives().iter().enumerate() {
        let x2 = x.xor(&random_element(&s.b, &mut rng));
        let Some(lift) = solve_lift(fc, s.m, r, &x2, Some(&mut rng)) else {
            bad += 1;
            continue;
        };
        let w = raw_delta(fc, s.m, r, &lift);
        if target.quotient.project(&w).as_ref() != Some(&delta.column(i)) {
            bad += 1;
        }
    }
    bad
}

/// Page 0: `V_0(m) = C^m` and `δ_0 = ∂₀`.
pub fn page0(fc: &FloerComplex, opts: &SpectralOptions) -> Result<SpectralPage, SpectralError> {
    let spaces = (0..=fc.dim_l() as i64)
        .map(|m| {
            let d = fc.morse().dim_in_degree(m);
            (Subspace::full(d), Subspace::zero(d))
        })
        .collect();
    build_page(fc, 0, spaces, opts)
}

/// Page `r + 1` from page `r`: cycles grow by lifts of `ker δ_r`, boundaries
/// by the raw images of `δ_r`.
pub fn turn_page(fc: &FloerComplex, page: &SpectralPage, opts: &SpectralOptions) -> Result<SpectralPage, SpectralError> {
    let r = page.r;
    let nl = fc.nl() as i64;
    let spaces = page
        .slots
        .iter()
        .map(|s| {
            let mut z = s.b.clone();
            for k in page.delta[s.m as usize].kernel().basis() {
                z.insert(s.quotient.lift(k));
            }
            let mut b = s.b.clone();
            if let Some(src) = page.slot(s.m - 1 + r as i64 * nl) {
                for w in &src.raw {
                    b.insert(w.clone());
                }
            }
            (z, b)
        })
        .collect();
    let mut next = build_page(fc, r + 1, spaces, opts)?;
    let ranks = page.delta_ranks();
    next.checks.dims_identity = page.slots.iter().all(|s| {
        let out_rank = ranks[s.m as usize];
        let in_rank = page.delta(s.m - 1 + r as i64 * nl).map_or(0, F2Matrix::rank);
        next.dim(s.m) == s.dim() - out_rank - in_rank
    });
    Ok(next)
}
