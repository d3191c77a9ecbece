//! Graded F2 algebras, graded derivations and the vanishing lemma.
//!
//! Rings are explicit multiplication tables on a degree-ordered basis.
//! Derivations keep one matrix per source degree so that arbitrary linear
//! maps can be represented and then tested for the Leibniz rule.

mod derivation;
mod lemma;
mod ring;

pub use derivation::{derivation_from_generator_values, Derivation};
pub use lemma::{
    enumerate_derivations, top_class_nonvanishing, vanishing_lemma, GeneratorBound, TopClassWitness,
    VanishingCertificate, MAX_ENUMERATION_BITS,
};
pub use ring::{
    BasisElement, DegreeClosure, GenerationWitness, GradedRing, RingJson, MAX_EXTERIOR_GENERATORS,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedError {
    #[error("size limit exceeded: requested {requested}, maximum {max}")]
    SizeLimit { requested: usize, max: usize },
    #[error("a ring needs at least one generator")]
    EmptyGenerators,
    #[error("basis index {index} out of range for dimension {dim}")]
    BadIndex { index: usize, dim: usize },
    #[error("basis must be listed in nondecreasing degree")]
    BasisOrder,
    #[error("duplicate basis name {0:?}")]
    DuplicateName(String),
    #[error("product {a}*{b} is not degree-additive")]
    NotDegreeAdditive { a: String, b: String },
    #[error("unit does not act as identity on {0}")]
    UnitNotIdentity(String),
    #[error("products {a}*{b} and {b}*{a} disagree")]
    NotCommutative { a: String, b: String },
    #[error("({a}*{b})*{c} differs from {a}*({b}*{c})")]
    NotAssociative { a: String, b: String, c: String },
    #[error("ring is not generated in degree 1: degree {degree} reaches {spanned} of {full} dimensions")]
    NotDegreeOneGenerated { degree: i32, spanned: usize, full: usize },
    #[error("expected {expected} generator values, found {found}")]
    WrongValueCount { expected: usize, found: usize },
    #[error("value for generator {generator} is not in degree {degree}")]
    ValueNotInDegree { generator: String, degree: i32 },
    #[error("Leibniz extension contradicts a ring relation in degree {degree}")]
    InconsistentExtension { degree: i32 },
    #[error("block for source degree {degree} has the wrong shape")]
    BlockShape { degree: i32 },
    #[error("the vanishing lemma needs shift <= -2, got {shift}")]
    NotApplicable { shift: i32 },
    #[error("derivation is zero")]
    ZeroDerivation,
    #[error("derivation has shift {shift}, expected -1")]
    NotShiftMinusOne { shift: i32 },
    #[error("map fails the Leibniz rule on ({a}, {b})")]
    NotLeibniz { a: String, b: String },
    #[error("ring is not an exterior algebra")]
    NotExterior,
}
