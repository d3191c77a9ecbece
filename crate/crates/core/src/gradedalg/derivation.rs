use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{GradedError, GradedRing};
use crate::f2linalg::{BitVec, F2Matrix};

/// A degree-shifting F2-linear endomorphism of a graded ring.
///
/// `blocks[d]` maps degree `d` to degree `d + shift` in local coordinates; it
/// has zero rows when the target degree is unoccupied. Nothing here forces
/// the Leibniz rule; see [`Derivation::check_leibniz`].
#[derive(Clone)]
pub struct Derivation {
    ring: Arc<GradedRing>,
    shift: i32,
    blocks: BTreeMap<i32, F2Matrix>,
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let values: Vec<String> = self
            .ring
            .generators()
            .into_iter()
            .map(|g| format!("{}->{}", self.ring.name(g), self.format_element(&self.apply_basis(g))))
            .collect();
        f.debug_struct("Derivation")
            .field("shift", &self.shift)
            .field("generators", &values)
            .finish()
    }
}

impl PartialEq for Derivation {
    fn eq(&self, other: &Self) -> bool {
        self.shift == other.shift && self.blocks == other.blocks && self.ring == other.ring
    }
}

impl Derivation {
    pub fn zero(ring: Arc<GradedRing>, shift: i32) -> Self {
        let blocks = ring
            .degrees()
            .into_iter()
            .map(|d| (d, F2Matrix::zeros(ring.dim_in_degree(d + shift), ring.dim_in_degree(d))))
            .collect();
        Self { ring, shift, blocks }
    }

    /// Builds a map from per-degree blocks. Missing degrees are zero.
    pub fn from_blocks(
        ring: Arc<GradedRing>,
        shift: i32,
        blocks: BTreeMap<i32, F2Matrix>,
    ) -> Result<Self, GradedError> {
        let mut out = Self::zero(ring, shift);
        for (d, m) in blocks {
            match out.blocks.get_mut(&d) {
                Some(slot) if slot.rows() == m.rows() && slot.cols() == m.cols() => *slot = m,
                _ => return Err(GradedError::BlockShape { degree: d }),
            }
        }
        Ok(out)
    }

    /// Builds a map from its full `dim x dim` matrix. Entries that do not
    /// respect the shift are rejected.
    pub fn from_matrix(ring: Arc<GradedRing>, shift: i32, m: &F2Matrix) -> Result<Self, GradedError> {
        let n = ring.dim();
        if m.rows() != n || m.cols() != n {
            return Err(GradedError::BlockShape { degree: shift });
        }
        let mut out = Self::zero(ring, shift);
        for (r, c) in m.entries() {
            let d = out.ring.degree(c);
            if out.ring.degree(r) != d + shift {
                return Err(GradedError::BlockShape { degree: d });
            }
            let t0 = out.ring.degree_range(d + shift).start;
            let s0 = out.ring.degree_range(d).start;
            out.blocks.get_mut(&d).expect("occupied").flip(r - t0, c - s0);
        }
        Ok(out)
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn block(&self, d: i32) -> Option<&F2Matrix> {
        self.blocks.get(&d)
    }

    pub fn blocks(&self) -> &BTreeMap<i32, F2Matrix> {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(F2Matrix::is_zero)
    }

    pub fn apply_basis(&self, i: usize) -> BitVec {
        let d = self.ring.degree(i);
        let block = &self.blocks[&d];
        if block.rows() == 0 {
            return self.ring.zero_element();
        }
        let local = block.column(i - self.ring.degree_range(d).start);
        self.ring.global(&local, d + self.shift)
    }

    pub fn apply(&self, v: &BitVec) -> BitVec {
        let mut out = self.ring.zero_element();
        for i in v.ones() {
            out.xor_assign(&self.apply_basis(i));
        }
        out
    }

    /// Images of the degree-1 generators, in basis order.
    pub fn generator_values(&self) -> Vec<BitVec> {
        self.ring.generators().into_iter().map(|g| self.apply_basis(g)).collect()
    }

    /// The map as a `dim x dim` matrix on the full basis.
    pub fn to_matrix(&self) -> F2Matrix {
        let n = self.ring.dim();
        let cols: Vec<BitVec> = (0..n).map(|i| self.apply_basis(i)).collect();
        F2Matrix::from_columns(n, &cols)
    }

    /// First basis pair `(a, b)` with `d(ab) != d(a)b + a d(b)`.
    pub fn leibniz_violation(&self) -> Option<(usize, usize)> {
        let r = &self.ring;
        let images: Vec<BitVec> = (0..r.dim()).map(|i| self.apply_basis(i)).collect();
        for a in 0..r.dim() {
            for b in a..r.dim() {
                let mut lhs = r.zero_element();
                for &k in r.mul_basis(a, b) {
                    lhs.xor_assign(&images[k as usize]);
                }
                let rhs = r
                    .cup(&images[a], &r.basis_element(b))
                    .xor(&r.cup(&r.basis_element(a), &images[b]));
                if lhs != rhs {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Whether the Leibniz rule holds on every basis pair. The ring is
    /// commutative, so unordered pairs suffice.
    pub fn check_leibniz(&self) -> bool {
        self.leibniz_violation().is_none()
    }

    /// Renders an element as a sum of basis names.
    pub fn format_element(&self, v: &BitVec) -> String {
        format_element(&self.ring, v)
    }
}

pub(crate) fn format_element(ring: &GradedRing, v: &BitVec) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    v.ones().map(|i| ring.name(i)).collect::<Vec<_>>().join("+")
}

/// The unique Leibniz extension of prescribed values on the degree-1
/// generators.
///
/// Degree by degree, every product `g*b` with `g` a generator and `b` of the
/// previous degree gives one equation `D(g*b) = D(g)b + g D(b)`. Row reducing
/// the stacked equations solves for the block of the new degree, and any
/// leftover equation with zero left side and nonzero right side is a relation
/// the extension violates.
pub fn derivation_from_generator_values(
    ring: &Arc<GradedRing>,
    shift: i32,
    values: &[BitVec],
) -> Result<Derivation, GradedError> {
    ring.generation()?;
    let gens = ring.generators();
    if values.len() != gens.len() {
        return Err(GradedError::WrongValueCount {
            expected: gens.len(),
            found: values.len(),
        });
    }
    let target1 = ring.degree_range(1 + shift);
    for (&g, v) in gens.iter().zip(values) {
        let outside = v.ones().any(|i| !target1.contains(&i));
        if v.len() != ring.dim() || outside {
            return Err(GradedError::ValueNotInDegree {
                generator: ring.name(g).to_string(),
                degree: 1 + shift,
            });
        }
    }

    let mut d = Derivation::zero(ring.clone(), shift);
    if let Some(b1) = d.blocks.get_mut(&1) {
        for (c, v) in values.iter().enumerate() {
            for i in ring.local(v, 1 + shift).ones() {
                b1.flip(i, c);
            }
        }
    }

    let top = ring.top_degree();
    for deg in 2..=top + 1 {
        let src = ring.degree_range(deg - 1);
        let dim_s = ring.dim_in_degree(deg);
        let dim_t = ring.dim_in_degree(deg + shift);
        if src.is_empty() {
            continue;
        }
        let mut rows = Vec::with_capacity(gens.len() * src.len());
        for &g in &gens {
            let dg = d.apply_basis(g);
            for b in src.clone() {
                let prod = BitVec::from_indices(ring.dim(), ring.mul_basis(g, b).iter().map(|&k| k as usize));
                let rhs = ring
                    .cup(&dg, &ring.basis_element(b))
                    .xor(&ring.cup(&ring.basis_element(g), &d.apply_basis(b)));
                rows.push(BitVec::concat(&[ring.local(&prod, deg), ring.local(&rhs, deg + shift)]));
            }
        }
        let mut system = F2Matrix::from_rows(dim_s + dim_t, &rows);
        let pivots = system.rref_in_place(dim_s);
        if pivots.len() != dim_s {
            return Err(GradedError::NotDegreeOneGenerated {
                degree: deg,
                spanned: pivots.len(),
                full: dim_s,
            });
        }
        for r in dim_s..system.rows() {
            if !system.row(r).slice(dim_s, dim_t).is_zero() {
                return Err(GradedError::InconsistentExtension { degree: deg });
            }
        }
        if dim_s > 0 {
            // Row c now reads e_c | D(e_c).
            let cols: Vec<BitVec> = (0..dim_s).map(|c| system.row(c).slice(dim_s, dim_t)).collect();
            d.blocks.insert(deg, F2Matrix::from_columns(dim_t, &cols));
        }
    }
    debug_assert!(ring.dim() > 64 || d.check_leibniz());
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(n: usize) -> Arc<GradedRing> {
        Arc::new(GradedRing::exterior(n).unwrap())
    }

    fn values(ring: &GradedRing, names: &[&str]) -> Vec<BitVec> {
        names
            .iter()
            .map(|n| if *n == "0" { ring.zero_element() } else { ring.element(&[n]).unwrap() })
            .collect()
    }

    #[test]
    fn zero_values_give_zero_map() {
        let r = ext(3);
        let d = derivation_from_generator_values(&r, -1, &values(&r, &["0", "0", "0"])).unwrap();
        assert!(d.is_zero());
        assert_eq!(d, Derivation::zero(r, -1));
    }

    #[test]
    fn lambda_two_extension() {
        let r = ext(2);
        let d = derivation_from_generator_values(&r, -1, &values(&r, &["1", "0"])).unwrap();
        let top = r.element(&["x1x2"]).unwrap();
        assert_eq!(d.apply(&top), r.element(&["x2"]).unwrap());
        assert!(d.check_leibniz());
        assert!(d.apply(&r.unit_element()).is_zero());
    }

    #[test]
    fn non_leibniz_map_is_rejected() {
        let r = ext(2);
        let m = F2Matrix::from_entries(4, 4, [(r.index_of("x2").unwrap(), r.index_of("x1x2").unwrap())]);
        let d = Derivation::from_matrix(r.clone(), -1, &m).unwrap();
        let (a, b) = d.leibniz_violation().unwrap();
        assert_eq!((r.name(a), r.name(b)), ("x1", "x2"));
        assert!(Derivation::zero(r, -1).check_leibniz());
    }

    #[test]
    fn very_negative_shift_has_no_targets() {
        let r = ext(2);
        let d = derivation_from_generator_values(&r, -2, &values(&r, &["0", "0"])).unwrap();
        assert!(d.is_zero());
        let bad = derivation_from_generator_values(&r, -2, &values(&r, &["1", "0"]));
        assert!(matches!(bad, Err(GradedError::ValueNotInDegree { .. })));
    }

    #[test]
    fn truncated_relation_blocks_odd_extension() {
        // d(a) = 1 forces d(a^(n+1)) = (n+1) a^n, which must vanish.
        for n in 1..8usize {
            let r = Arc::new(GradedRing::truncated_poly(n).unwrap());
            let res = derivation_from_generator_values(&r, -1, &[r.unit_element()]);
            if n % 2 == 1 {
                let d = res.unwrap();
                assert!(d.check_leibniz());
            } else {
                assert_eq!(res.unwrap_err(), GradedError::InconsistentExtension { degree: n as i32 + 1 });
            }
        }
    }

    #[test]
    fn extension_matches_leibniz_expansion_on_monomials() {
        // Independent oracle: on a monomial x_{i1}...x_{ik}, a shift -1
        // derivation sends it to the sum over j with d(x_j) = 1 of the
        // monomial with x_j removed.
        let n = 5;
        let r = ext(n);
        for mask in 0u32..1 << n {
            let vals: Vec<BitVec> = (0..n)
                .map(|j| if mask >> j & 1 == 1 { r.unit_element() } else { r.zero_element() })
                .collect();
            let d = derivation_from_generator_values(&r, -1, &vals).unwrap();
            for b in 0..r.dim() {
                let name = r.name(b).strip_prefix('x').unwrap_or("");
                let vars: Vec<usize> = name.split('x').filter(|s| !s.is_empty()).map(|s| s.parse::<usize>().unwrap() - 1).collect();
                let mut want = r.zero_element();
                for &j in &vars {
                    if mask >> j & 1 == 1 {
                        let rest: String = vars.iter().filter(|&&v| v != j).map(|v| format!("x{}", v + 1)).collect();
                        let name = if rest.is_empty() { "1".to_string() } else { rest };
                        want.flip(r.index_of(&name).unwrap());
                    }
                }
                assert_eq!(d.apply_basis(b), want, "mask {mask:b} on {}", r.name(b));
            }
        }
    }

    #[test]
    fn degree_zero_shift_on_exterior() {
        // Shift 0 derivations of an exterior algebra are the linear maps on
        // degree 1, extended; all 2^(n^2) are consistent.
        let r = ext(2);
        let x1 = r.element(&["x1"]).unwrap();
        let x2 = r.element(&["x2"]).unwrap();
        let d = derivation_from_generator_values(&r, 0, &[x2.clone(), x1.clone()]).unwrap();
        assert!(d.check_leibniz());
        // d(x1x2) = x2x2 + x1x1 = 0
        assert!(d.apply(&r.element(&["x1x2"]).unwrap()).is_zero());
    }
}
