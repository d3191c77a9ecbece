use super::morse::canonical_order;
use super::{FloerComplex, FloerError, Generator, MorseComplex, ProductTable};
use crate::f2linalg::F2Matrix;
use crate::gradedalg::{Derivation, GradedRing};

/// The complex of a perfect Morse function whose cohomology ring is `ring`:
/// generators are the ring basis (Morse index = degree), `∂₀ = 0`, `∂₁` is
/// `d1` (a derivation of shift `1 - NL`, or zero), `m₀` is the ring
/// multiplication, and all other operators and products vanish.
pub fn perfect_ring_complex(ring: &GradedRing, nl: usize, d1: Option<&Derivation>) -> Result<FloerComplex, FloerError> {
    let degrees = ring.degrees();
    if degrees[0] < 0 {
        return Err(FloerError::IndexOutOfRange {
            name: ring.name(0).to_string(),
            index: degrees[0] as i64,
            dim_l: ring.top_degree().max(0) as usize,
        });
    }
    let dim_l = ring.top_degree() as usize;
    let ring_gens: Vec<Generator> = ring
        .basis()
        .iter()
        .map(|b| Generator::new(b.name.clone(), b.degree as i64))
        .collect();
    let order = canonical_order(&ring_gens);
    let mut to_gen = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        to_gen[old] = new;
    }
    let n = ring.dim();
    let generators = order.iter().map(|&i| ring_gens[i].clone()).collect();
    let morse = MorseComplex::perfect(dim_l, generators)?;

    let mut higher = Vec::new();
    if let Some(d) = d1 {
        let want = 1 - nl as i32;
        if d.shift() != want || **d.ring() != *ring {
            return Err(FloerError::DerivationMismatch {
                expected_shift: want,
                found_shift: d.shift(),
            });
        }
        let m = d.to_matrix();
        higher.push(F2Matrix::from_entries(n, n, m.entries().into_iter().map(|(r, c)| (to_gen[r], to_gen[c]))));
    }
    let fc = FloerComplex::assemble(morse, nl, higher)?;

    let mut triples = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for &k in ring.mul_basis(i, j) {
                triples.push((to_gen[i], to_gen[j], to_gen[k as usize]));
            }
        }
    }
    fc.with_products(vec![ProductTable::from_triples(n, triples)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::floercomplex::check_product_leibniz;
    use crate::gradedalg::{derivation_from_generator_values, enumerate_derivations};
    use std::sync::Arc;

    #[test]
    fn exterior_complexes_satisfy_product_leibniz() {
        for n in 1..=3 {
            let ring = Arc::new(GradedRing::exterior(n).unwrap());
            for d in enumerate_derivations(&ring, -1).unwrap() {
                let fc = perfect_ring_complex(&ring, 2, Some(&d)).unwrap();
                assert!(check_product_leibniz(&fc).unwrap().holds());
                let expect = if d.is_zero() { vec![1 << (n - 1); 2] } else { vec![0, 0] };
                assert_eq!(fc.folded_homology().unwrap(), expect);
            }
        }
    }

    #[test]
    fn canonical_reordering_past_nine_generators() {
        let ring = Arc::new(GradedRing::exterior(10).unwrap());
        let mut vals = vec![ring.zero_element(); 10];
        vals[9] = ring.unit_element();
        let d = derivation_from_generator_values(&ring, -1, &vals).unwrap();
        let fc = perfect_ring_complex(&ring, 2, Some(&d)).unwrap();
        let g = fc.morse().index_of("x10").unwrap();
        let u = fc.morse().index_of("1").unwrap();
        assert!(fc.op(1).get(u, g));
        assert_eq!(fc.folded_homology().unwrap(), vec![0, 0]);
    }

    #[test]
    fn wrong_shift_rejected() {
        let ring = Arc::new(GradedRing::exterior(2).unwrap());
        let d = Derivation::zero(ring.clone(), -1);
        assert!(matches!(
            perfect_ring_complex(&ring, 3, Some(&d)),
            Err(FloerError::DerivationMismatch { .. })
        ));
    }
}
