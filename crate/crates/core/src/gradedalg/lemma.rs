use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::derivation::format_element;
use super::{derivation_from_generator_values, Derivation, GenerationWitness, GradedError, GradedRing};
use crate::f2linalg::BitVec;
use crate::par;

/// Enumeration refuses more than `2^MAX_ENUMERATION_BITS` generator
/// assignments.
pub const MAX_ENUMERATION_BITS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorBound {
    pub generator: String,
    pub image_degree: i32,
    pub target_dim: usize,
}

/// Why every Leibniz derivation of `shift` vanishes on a ring generated in
/// degree 1: each generator lands in an empty degree, the unit is always
/// killed, the kernel of a derivation is a subring, and the closure record
/// shows the unit and generators reach every degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingCertificate {
    pub shift: i32,
    pub generators: Vec<GeneratorBound>,
    pub kernel_contains: Vec<String>,
    pub generation: GenerationWitness,
}

impl VanishingCertificate {
    /// Recomputes the certificate on `ring` and compares.
    pub fn replay(&self, ring: &GradedRing) -> bool {
        self.generators.iter().all(|g| g.image_degree < 0 || g.target_dim == 0)
            && vanishing_lemma(ring, self.shift).as_ref() == Ok(self)
    }
}

pub fn vanishing_lemma(ring: &GradedRing, shift: i32) -> Result<VanishingCertificate, GradedError> {
    if shift > -2 {
        return Err(GradedError::NotApplicable { shift });
    }
    let generation = ring.generation()?.clone();
    let generators: Vec<GeneratorBound> = ring
        .generators()
        .into_iter()
        .map(|g| GeneratorBound {
            generator: ring.name(g).to_string(),
            image_degree: 1 + shift,
            target_dim: ring.dim_in_degree(1 + shift),
        })
        .collect();
    // Generation rules out negative degrees, so the targets are empty.
    debug_assert!(generators.iter().all(|g| g.target_dim == 0));
    let mut kernel_contains = vec![ring.name(ring.unit()).to_string()];
    kernel_contains.extend(generators.iter().map(|g| g.generator.clone()));
    Ok(VanishingCertificate {
        shift,
        generators,
        kernel_contains,
        generation,
    })
}

/// Every Leibniz derivation of the given shift, found by trying all
/// generator values and keeping the consistent extensions. Ordered by the
/// assignment index, so the zero derivation comes first.
pub fn enumerate_derivations(ring: &Arc<GradedRing>, shift: i32) -> Result<Vec<Derivation>, GradedError> {
    ring.generation()?;
    let gens = ring.generators().len();
    let target = ring.degree_range(1 + shift);
    let t = target.len();
    let bits = gens * t;
    if bits > MAX_ENUMERATION_BITS {
        return Err(GradedError::SizeLimit {
            requested: bits,
            max: MAX_ENUMERATION_BITS,
        });
    }
    let found = par::map_range(0..1usize << bits, |idx| {
        let values: Vec<BitVec> = (0..gens)
            .map(|g| {
                BitVec::from_indices(
                    ring.dim(),
                    (0..t).filter(|&i| idx >> (g * t + i) & 1 == 1).map(|i| target.start + i),
                )
            })
            .collect();
        derivation_from_generator_values(ring, shift, &values).ok()
    });
    Ok(found.into_iter().flatten().collect())
}

/// Evidence that a nonzero shift -1 derivation of an exterior algebra does
/// not kill the top class.
///
/// `basis` is a new set of degree-1 generators whose first entry maps to 1
/// and whose others map to 0. With `y` the product of the others, the top
/// class is `basis[0] * y`, so `d(top) = y` and `basis[0] * d(top) = top`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopClassWitness {
    pub basis: Vec<String>,
    pub y: String,
    pub top: String,
    pub d_top: String,
    pub identity_holds: bool,
}

pub fn top_class_nonvanishing(d: &Derivation) -> Result<TopClassWitness, GradedError> {
    if d.shift() != -1 {
        return Err(GradedError::NotShiftMinusOne { shift: d.shift() });
    }
    let ring = d.ring();
    let n = ring.generators().len();
    if n == 0 || n > super::MAX_EXTERIOR_GENERATORS || **ring != GradedRing::exterior(n)? {
        return Err(GradedError::NotExterior);
    }
    if let Some((a, b)) = d.leibniz_violation() {
        return Err(GradedError::NotLeibniz {
            a: ring.name(a).to_string(),
            b: ring.name(b).to_string(),
        });
    }
    if d.is_zero() {
        return Err(GradedError::ZeroDerivation);
    }
    let gens: Vec<BitVec> = ring.generators().into_iter().map(|g| ring.basis_element(g)).collect();
    let hits: Vec<bool> = d.generator_values().iter().map(|v| !v.is_zero()).collect();
    // A nonzero derivation is nonzero on some generator.
    let pivot = hits.iter().position(|&h| h).expect("nonzero derivation");
    let mut basis = vec![gens[pivot].clone()];
    for (i, g) in gens.iter().enumerate() {
        if i != pivot {
            basis.push(if hits[i] { g.xor(&gens[pivot]) } else { g.clone() });
        }
    }
    debug_assert!(basis[1..].iter().all(|b| d.apply(b).is_zero()));
    debug_assert_eq!(d.apply(&basis[0]), ring.unit_element());

    let y = basis[1..].iter().fold(ring.unit_element(), |acc, b| ring.cup(&acc, b));
    let top = ring.basis_element(ring.dim() - 1);
    let d_top = d.apply(&top);
    let identity_holds = ring.cup(&basis[0], &y) == top && d_top == y && ring.cup(&basis[0], &d_top) == top;
    Ok(TopClassWitness {
        basis: basis.iter().map(|b| format_element(ring, b)).collect(),
        y: format_element(ring, &y),
        top: format_element(ring, &top),
        d_top: format_element(ring, &d_top),
        identity_holds,
    })
}
