use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{nu, FloerComplex, FloerError, Generator, MorseComplex};
use crate::f2linalg::F2Matrix;

/// Upper limit on the total number of generators of a random complex.
pub const MAX_RANDOM_GENERATORS: usize = 64;

/// Probability that a generator is offered a partner while pairing.
const PAIRING_RATE: f64 = 0.75;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomComplex {
    pub complex: FloerComplex,
    /// Folded homology predicted from the unpaired generators.
    pub predicted_folded: Vec<usize>,
    /// Elementary pairs `(source, target, k)` before the change of basis.
    pub pairs: Vec<(String, String, usize)>,
}

/// A power series `Σ a_j T^j` of generator-indexed matrices.
type Series = Vec<F2Matrix>;

fn compose(a: &[F2Matrix], b: &[F2Matrix]) -> Series {
    let n = a[0].rows();
    let mut out = vec![F2Matrix::zeros(n, n); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j].add_assign(&x.mul(y));
        }
    }
    trim(out)
}

fn add_into(acc: &mut Series, s: &[F2Matrix]) {
    let n = s[0].rows();
    if acc.len() < s.len() {
        acc.resize(s.len(), F2Matrix::zeros(n, n));
    }
    for (a, b) in acc.iter_mut().zip(s) {
        a.add_assign(b);
    }
}

fn trim(mut s: Series) -> Series {
    while s.len() > 1 && s.last().is_some_and(F2Matrix::is_zero) {
        s.pop();
    }
    s
}

pub fn random_valid_complex(seed: u64, dims: &[usize], nl: usize) -> Result<FloerComplex, FloerError> {
    random_complex_with_prediction(seed, dims, nl).map(|r| r.complex)
}

/// A seeded complex with `d_F² = 0` and known folded homology.
///
/// Generators are first split into elementary pairs `a -> b` under a single
/// `∂_k` plus unpaired survivors, then the whole differential is conjugated
/// by a random invertible filtration-preserving series `Φ = φ₀(I + ψ)`, where
/// `φ₀` mixes generators of equal degree and `ψ` only raises the T-power.
pub fn random_complex_with_prediction(seed: u64, dims: &[usize], nl: usize) -> Result<RandomComplex, FloerError> {
    if dims.is_empty() {
        return Err(FloerError::Json("dims must list at least one degree".into()));
    }
    let total: usize = dims.iter().sum();
    if total > MAX_RANDOM_GENERATORS {
        return Err(FloerError::TooLarge {
            total,
            max: MAX_RANDOM_GENERATORS,
        });
    }
    if nl < 2 {
        return Err(FloerError::MaslovTooSmall(nl));
    }
    let dim_l = dims.len() - 1;
    let nu = nu(dim_l, nl);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let generators: Vec<Generator> = dims
        .iter()
        .enumerate()
        .flat_map(|(m, &d)| (0..d).map(move |j| Generator::new(format!("c{m}_{j:02}"), m as i64)))
        .collect();
    let morse0 = MorseComplex::perfect(dim_l, generators.clone())?;
    let n = total;

    let mut paired = vec![false; n];
    let mut base = vec![F2Matrix::zeros(n, n); nu + 1];
    let mut pairs = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    for a in order {
        if paired[a] || !rng.gen_bool(PAIRING_RATE) {
            continue;
        }
        let mut ks: Vec<usize> = (0..=nu).collect();
        ks.shuffle(&mut rng);
        for k in ks {
            let t = generators[a].index + 1 - (k * nl) as i64;
            let free: Vec<usize> = morse0.degree_range(t).filter(|&b| !paired[b]).collect();
            if let Some(&b) = free.choose(&mut rng) {
                paired[a] = true;
                paired[b] = true;
                base[k].set(b, a, true);
                pairs.push((generators[a].name.clone(), generators[b].name.clone(), k));
                break;
            }
        }
    }
    let mut predicted_folded = vec![0; nl];
    for (g, &p) in generators.iter().zip(&paired) {
        if !p {
            predicted_folded[g.index.rem_euclid(nl as i64) as usize] += 1;
        }
    }

    // φ₀: random transvections inside each degree.
    let mut phi0 = F2Matrix::identity(n);
    for m in 0..=dim_l as i64 {
        let r = morse0.degree_range(m);
        if r.len() < 2 {
            continue;
        }
        for _ in 0..3 * r.len() {
            let a = rng.gen_range(r.clone());
            let b = rng.gen_range(r.clone());
            if a != b {
                let mut t = F2Matrix::identity(n);
                t.set(a, b, true);
                phi0 = t.mul(&phi0);
            }
        }
    }
    let phi0_inv = phi0.inverse().expect("transvections are invertible");

    // ψ_j lowers the Morse degree by j·NL.
    let depth = dim_l / nl;
    let mut psi: Series = vec![F2Matrix::zeros(n, n)];
    for j in 1..=depth {
        let mut m = F2Matrix::zeros(n, n);
        for (c, g) in generators.iter().enumerate() {
            for r in morse0.degree_range(g.index - (j * nl) as i64) {
                if rng.gen_bool(0.5) {
                    m.set(r, c, true);
                }
            }
        }
        psi.push(m);
    }
    let psi = trim(psi);

    let mut one_plus_psi = psi.clone();
    one_plus_psi[0] = F2Matrix::identity(n);
    let phi = compose(&[phi0.clone()], &one_plus_psi);

    // (I + ψ)⁻¹ = Σ ψ^s; ψ is nilpotent since it lowers the Morse degree.
    let mut inv: Series = vec![F2Matrix::identity(n)];
    let mut power: Series = vec![F2Matrix::identity(n)];
    loop {
        power = compose(&power, &psi);
        if power.iter().all(F2Matrix::is_zero) {
            break;
        }
        add_into(&mut inv, &power);
    }
    let phi_inv = compose(&inv, &[phi0_inv]);
    debug_assert_eq!(trim(compose(&phi, &phi_inv)), vec![F2Matrix::identity(n)]);

    let mut d = compose(&compose(&phi, &base), &phi_inv);
    assert!(
        d.iter().skip(nu + 1).all(F2Matrix::is_zero),
        "conjugation produced an operator beyond ν"
    );
    d.resize(nu + 1, F2Matrix::zeros(n, n));
    let boundary = d.remove(0);
    let morse = MorseComplex::new(dim_l, generators, boundary)?;
    let complex = FloerComplex::assemble(morse, nl, d)?;
    Ok(RandomComplex {
        complex,
        predicted_folded,
        pairs,
    })
}
