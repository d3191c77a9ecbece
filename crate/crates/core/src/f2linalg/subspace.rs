use super::bitvec::BitVec;
use super::matrix::F2Matrix;
use super::LinAlgError;

/// A linear subspace of `F2^ambient_dim`, stored as its reduced row echelon
/// basis.
///
/// Each basis vector's pivot is its lowest set index; basis vectors are sorted
/// by pivot and every pivot column is zero in all other basis vectors. Two
/// subspaces are equal iff their stored bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<BitVec>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: (0..ambient_dim)
                .map(|i| BitVec::unit(ambient_dim, i))
                .collect(),
        }
    }

    pub fn span<I: IntoIterator<Item = BitVec>>(ambient_dim: usize, vectors: I) -> Self {
        let mut s = Self::zero(ambient_dim);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.basis.iter().map(|b| b.first_one().expect("basis vectors are nonzero"))
    }

    /// Clears every pivot position of `v` using the basis. The result is zero
    /// iff `v` lies in the subspace.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.ambient_dim, "vector has wrong length");
        let mut out = v.clone();
        for b in &self.basis {
            let p = b.first_one().expect("basis vectors are nonzero");
            if out.get(p) {
                out.xor_assign(b);
            }
        }
        out
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the spanning set. Returns whether the dimension grew.
    pub fn insert(&mut self, v: BitVec) -> bool {
        let r = self.reduce(&v);
        let Some(p) = r.first_one() else {
            return false;
        };
        for b in &mut self.basis {
            if b.get(p) {
                b.xor_assign(&r);
            }
        }
        let at = self
            .basis
            .partition_point(|b| b.first_one().expect("nonzero") < p);
        self.basis.insert(at, r);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut s = self.clone();
        for b in &other.basis {
            s.insert(b.clone());
        }
        s
    }

    /// Basis vectors as the rows of a matrix.
    pub fn to_matrix(&self) -> F2Matrix {
        F2Matrix::from_rows(self.ambient_dim, &self.basis)
    }
}

/// The quotient `sup / sub` with canonical coset representatives.
///
/// The representatives are the reduced echelon basis of `sup` after clearing
/// the pivots of `sub`, so they vanish on every pivot column of `sub` and have
/// pivots of their own. Coordinates of a vector are read off those pivots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    sub: Subspace,
    reps: Subspace,
}

/// Quotient of nested subspaces. Fails with [`LinAlgError::NotASubspace`]
/// unless `sub ⊆ sup`.
pub fn quotient_map(sub: &Subspace, sup: &Subspace) -> Result<Quotient, LinAlgError> {
    if sub.ambient_dim != sup.ambient_dim {
        return Err(LinAlgError::DimensionMismatch {
            expected: sup.ambient_dim,
            found: sub.ambient_dim,
        });
    }
    if !sub.is_subspace_of(sup) {
        return Err(LinAlgError::NotASubspace);
    }
    let reps = Subspace::span(sup.ambient_dim, sup.basis.iter().map(|b| sub.reduce(b)));
    debug_assert_eq!(reps.dim() + sub.dim(), sup.dim());
    Ok(Quotient {
        sub: sub.clone(),
        reps,
    })
}

impl Quotient {
    #[inline]
    pub fn dim(&self) -> usize {
        self.reps.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.sub.ambient_dim
    }

    pub fn sub(&self) -> &Subspace {
        &self.sub
    }

    /// Coset representatives, one per quotient basis vector.
    pub fn representatives(&self) -> &[BitVec] {
        self.reps.basis()
    }

    /// Linear coordinates of `v` in the quotient basis. Agrees with
    /// [`Quotient::project`] on `sup`; defined on the whole ambient space.
    pub fn coordinates(&self, v: &BitVec) -> BitVec {
        let r = self.sub.reduce(v);
        BitVec::from_indices(
            self.dim(),
            self.reps
                .pivots()
                .enumerate()
                .filter(|(_, p)| r.get(*p))
                .map(|(i, _)| i),
        )
    }

    /// Class of `v`, or `None` when `v` is not in `sup`.
    pub fn project(&self, v: &BitVec) -> Option<BitVec> {
        let r = self.sub.reduce(v);
        if self.reps.contains(&r) {
            Some(self.coordinates(v))
        } else {
            None
        }
    }

    /// The canonical representative of the class with these coordinates.
    pub fn lift(&self, coords: &BitVec) -> BitVec {
        assert_eq!(coords.len(), self.dim());
        let mut v = BitVec::zeros(self.ambient_dim());
        for i in coords.ones() {
            v.xor_assign(&self.reps.basis()[i]);
        }
        v
    }

    /// The coordinate map as a `dim x ambient_dim` matrix.
    pub fn projector(&self) -> F2Matrix {
        let n = self.ambient_dim();
        let cols: Vec<BitVec> = (0..n)
            .map(|j| self.coordinates(&BitVec::unit(n, j)))
            .collect();
        F2Matrix::from_columns(self.dim(), &cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_vec(rng: &mut impl Rng, n: usize) -> BitVec {
        BitVec::from_bools(&(0..n).map(|_| rng.gen()).collect::<Vec<_>>())
    }

    fn all_vectors(n: usize) -> impl Iterator<Item = BitVec> {
        (0u32..1 << n).map(move |m| BitVec::from_indices(n, (0..n).filter(|i| m >> i & 1 == 1)))
    }

    #[test]
    fn echelon_form_is_canonical() {
        let a = Subspace::span(4, [BitVec::from_indices(4, [0, 1]), BitVec::from_indices(4, [1, 2])]);
        let b = Subspace::span(4, [BitVec::from_indices(4, [0, 2]), BitVec::from_indices(4, [0, 1])]);
        assert_eq!(a, b);
        let pivots: Vec<_> = a.pivots().collect();
        assert_eq!(pivots, vec![0, 1]);
    }

    #[test]
    fn quotient_edge_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let sup = Subspace::span(8, (0..4).map(|_| random_vec(&mut rng, 8)));
        assert_eq!(quotient_map(&sup, &sup).unwrap().dim(), 0);
        let q = quotient_map(&Subspace::zero(8), &sup).unwrap();
        assert_eq!(q.dim(), sup.dim());
        let mut images = std::collections::HashSet::new();
        for v in all_vectors(8).filter(|v| sup.contains(v)) {
            assert!(images.insert(q.project(&v).unwrap()));
        }
    }

    #[test]
    fn not_a_subspace_is_rejected() {
        let sub = Subspace::span(3, [BitVec::unit(3, 0)]);
        let sup = Subspace::span(3, [BitVec::unit(3, 1)]);
        assert_eq!(quotient_map(&sub, &sup), Err(LinAlgError::NotASubspace));
    }

    #[test]
    fn projector_kills_exactly_sub_exhaustive() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in [4usize, 7, 10] {
            for _ in 0..5 {
                let sup = Subspace::span(n, (0..rng.gen_range(1..=n)).map(|_| random_vec(&mut rng, n)));
                let sub = Subspace::span(
                    n,
                    (0..rng.gen_range(0..=sup.dim()))
                        .map(|_| {
                            let mut v = BitVec::zeros(n);
                            for b in sup.basis() {
                                if rng.gen() {
                                    v.xor_assign(b);
                                }
                            }
                            v
                        }),
                );
                let q = quotient_map(&sub, &sup).unwrap();
                assert_eq!(q.dim(), sup.dim() - sub.dim());
                let proj = q.projector();
                for v in all_vectors(n) {
                    if sup.contains(&v) {
                        let c = q.project(&v).unwrap();
                        assert_eq!(c.is_zero(), sub.contains(&v));
                        assert_eq!(proj.mul_vec(&v), c);
                        // lift of the class differs from v by an element of sub
                        assert!(sub.contains(&q.lift(&c).xor(&v)));
                    } else {
                        assert!(q.project(&v).is_none());
                    }
                }
            }
        }
    }

    #[test]
    fn nested_quotient_dims_are_additive() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let n = 12;
            let c = Subspace::span(n, (0..9).map(|_| random_vec(&mut rng, n)));
            let pick = |rng: &mut ChaCha8Rng, s: &Subspace, k: usize| {
                Subspace::span(
                    n,
                    (0..k).map(|_| {
                        let mut v = BitVec::zeros(n);
                        for b in s.basis() {
                            if rng.gen() {
                                v.xor_assign(b);
                            }
                        }
                        v
                    }),
                )
            };
            let b = pick(&mut rng, &c, 5);
            let a = pick(&mut rng, &b, 2);
            let cb = quotient_map(&b, &c).unwrap().dim();
            let ba = quotient_map(&a, &b).unwrap().dim();
            let ca = quotient_map(&a, &c).unwrap().dim();
            assert_eq!(ca, cb + ba);
        }
    }
}
