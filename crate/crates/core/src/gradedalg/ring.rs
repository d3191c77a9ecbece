use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Range;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::GradedError;
use crate::f2linalg::{BitVec, Subspace};

/// Largest exterior algebra the table representation accepts.
pub const MAX_EXTERIOR_GENERATORS: usize = 12;

/// Rings up to this dimension get the full associativity scan on
/// construction.
const ASSOCIATIVITY_SCAN_DIM: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    pub degree: i32,
}

/// Degree-by-degree record that the unit and the degree-1 part generate the
/// ring: `spanned` is the dimension reached by multiplying degree-1 elements
/// into the previous degree, `full` the dimension of the degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeClosure {
    pub degree: i32,
    pub spanned: usize,
    pub full: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationWitness {
    /// Names of the degree-1 basis elements.
    pub generators: Vec<String>,
    pub closure: Vec<DegreeClosure>,
}

/// Serialized form of a [`GradedRing`]. `mult` lists nonzero products
/// `[i, j, [k...]]`; absent pairs multiply to zero, and a pair may be given
/// once for both orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub basis: Vec<BasisElement>,
    pub unit: usize,
    pub mult: Vec<(usize, usize, Vec<usize>)>,
}

/// A finite-dimensional commutative graded algebra over F2 given by its
/// multiplication table on a named basis.
///
/// The basis is ordered by degree, so each degree occupies a contiguous index
/// range. Elements are [`BitVec`]s of length [`GradedRing::dim`].
#[derive(Clone)]
pub struct GradedRing {
    basis: Vec<BasisElement>,
    unit: usize,
    table: BTreeMap<(u32, u32), Vec<u32>>,
    ranges: BTreeMap<i32, Range<usize>>,
    generation: OnceLock<Result<GenerationWitness, GradedError>>,
}

impl fmt::Debug for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedRing")
            .field("dims", &self.dims_by_degree())
            .field("unit", &self.basis[self.unit].name)
            .finish()
    }
}

impl PartialEq for GradedRing {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.unit == other.unit && self.table == other.table
    }
}

impl GradedRing {
    /// Validates and builds a ring. Each `(i, j, ks)` sets `b_i * b_j` (and
    /// `b_j * b_i`) to the sum of the `b_k`.
    pub fn new(
        basis: Vec<BasisElement>,
        unit: usize,
        products: impl IntoIterator<Item = (usize, usize, Vec<usize>)>,
    ) -> Result<Self, GradedError> {
        let n = basis.len();
        if unit >= n {
            return Err(GradedError::BadIndex { index: unit, dim: n });
        }
        if basis.windows(2).any(|w| w[0].degree > w[1].degree) {
            return Err(GradedError::BasisOrder);
        }
        let mut names = BTreeSet::new();
        for b in &basis {
            if !names.insert(b.name.as_str()) {
                return Err(GradedError::DuplicateName(b.name.clone()));
            }
        }
        let mut table: BTreeMap<(u32, u32), Vec<u32>> = BTreeMap::new();
        for (i, j, ks) in products {
            for &idx in [i, j].iter().chain(&ks) {
                if idx >= n {
                    return Err(GradedError::BadIndex { index: idx, dim: n });
                }
            }
            let mut v = BitVec::zeros(n);
            for k in ks {
                v.flip(k);
            }
            let ks: Vec<u32> = v.ones().map(|k| k as u32).collect();
            for key in [(i as u32, j as u32), (j as u32, i as u32)] {
                match table.get(&key) {
                    Some(prev) if *prev != ks => {
                        return Err(GradedError::NotCommutative {
                            a: basis[i].name.clone(),
                            b: basis[j].name.clone(),
                        })
                    }
                    _ => {}
                }
            }
            if !ks.is_empty() {
                table.insert((i as u32, j as u32), ks.clone());
                table.insert((j as u32, i as u32), ks);
            }
        }
        let ring = Self::from_parts(basis, unit, table);
        ring.validate()?;
        if ring.dim() <= ASSOCIATIVITY_SCAN_DIM {
            ring.check_associativity()?;
        }
        Ok(ring)
    }

    fn from_parts(basis: Vec<BasisElement>, unit: usize, table: BTreeMap<(u32, u32), Vec<u32>>) -> Self {
        let mut ranges: BTreeMap<i32, Range<usize>> = BTreeMap::new();
        for (i, b) in basis.iter().enumerate() {
            ranges.entry(b.degree).or_insert(i..i).end = i + 1;
        }
        Self {
            basis,
            unit,
            table,
            ranges,
            generation: OnceLock::new(),
        }
    }

    fn validate(&self) -> Result<(), GradedError> {
        if self.basis[self.unit].degree != 0 {
            return Err(GradedError::UnitNotIdentity(self.basis[self.unit].name.clone()));
        }
        for (&(i, j), ks) in &self.table {
            let want = self.basis[i as usize].degree + self.basis[j as usize].degree;
            if ks.iter().any(|&k| self.basis[k as usize].degree != want) {
                return Err(GradedError::NotDegreeAdditive {
                    a: self.basis[i as usize].name.clone(),
                    b: self.basis[j as usize].name.clone(),
                });
            }
        }
        for b in 0..self.dim() {
            if self.mul_basis(self.unit, b) != [b as u32] {
                return Err(GradedError::UnitNotIdentity(self.basis[b].name.clone()));
            }
        }
        Ok(())
    }

    /// Scans all basis triples for `(ab)c = a(bc)`.
    pub fn check_associativity(&self) -> Result<(), GradedError> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                let ab = self.cup(&self.basis_element(a), &self.basis_element(b));
                for c in 0..n {
                    let bc = self.cup(&self.basis_element(b), &self.basis_element(c));
                    if self.cup(&ab, &self.basis_element(c)) != self.cup(&self.basis_element(a), &bc) {
                        return Err(GradedError::NotAssociative {
                            a: self.basis[a].name.clone(),
                            b: self.basis[b].name.clone(),
                            c: self.basis[c].name.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The exterior algebra on `n` degree-1 generators over F2, the
    /// cohomology ring of the `n`-torus. Basis: square-free monomials ordered
    /// by length, then lexicographically.
    pub fn exterior(n: usize) -> Result<Self, GradedError> {
        if n == 0 {
            return Err(GradedError::EmptyGenerators);
        }
        if n > MAX_EXTERIOR_GENERATORS {
            return Err(GradedError::SizeLimit {
                requested: n,
                max: MAX_EXTERIOR_GENERATORS,
            });
        }
        let mut masks: Vec<u32> = (0u32..1 << n).collect();
        masks.sort_by_key(|&m| {
            let idx: Vec<u32> = (0..n as u32).filter(|i| m >> i & 1 == 1).collect();
            (m.count_ones(), idx)
        });
        let mut index_of = vec![0u32; 1 << n];
        for (i, &m) in masks.iter().enumerate() {
            index_of[m as usize] = i as u32;
        }
        let basis = masks
            .iter()
            .map(|&m| BasisElement {
                name: if m == 0 {
                    "1".to_string()
                } else {
                    (0..n)
                        .filter(|i| m >> i & 1 == 1)
                        .map(|i| format!("x{}", i + 1))
                        .collect()
                },
                degree: m.count_ones() as i32,
            })
            .collect();
        let mut table = BTreeMap::new();
        for &a in &masks {
            for &b in &masks {
                if a & b == 0 {
                    table.insert(
                        (index_of[a as usize], index_of[b as usize]),
                        vec![index_of[(a | b) as usize]],
                    );
                }
            }
        }
        Ok(Self::from_parts(basis, 0, table))
    }

    /// `F2[a] / (a^(n+1))` with `deg a = 1`, the cohomology ring of real
    /// projective `n`-space.
    pub fn truncated_poly(n: usize) -> Result<Self, GradedError> {
        if n == 0 {
            return Err(GradedError::EmptyGenerators);
        }
        let basis = (0..=n)
            .map(|k| BasisElement {
                name: match k {
                    0 => "1".to_string(),
                    1 => "a".to_string(),
                    _ => format!("a^{k}"),
                },
                degree: k as i32,
            })
            .collect();
        let mut table = BTreeMap::new();
        for i in 0..=n {
            for j in 0..=n - i {
                table.insert((i as u32, j as u32), vec![(i + j) as u32]);
            }
        }
        Ok(Self::from_parts(basis, 0, table))
    }

    pub fn from_json(json: RingJson) -> Result<Self, GradedError> {
        Self::new(json.basis, json.unit, json.mult)
    }

    /// Canonical serialized form: pairs `i <= j` with nonzero product.
    pub fn to_json(&self) -> RingJson {
        RingJson {
            basis: self.basis.clone(),
            unit: self.unit,
            mult: self
                .table
                .iter()
                .filter(|((i, j), _)| i <= j)
                .map(|(&(i, j), ks)| (i as usize, j as usize, ks.iter().map(|&k| k as usize).collect()))
                .collect(),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.basis[i].degree
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    /// Occupied degrees in increasing order.
    pub fn degrees(&self) -> Vec<i32> {
        self.ranges.keys().copied().collect()
    }

    pub fn top_degree(&self) -> i32 {
        *self.ranges.keys().last().expect("nonempty basis")
    }

    /// Index range of degree `d`; empty when unoccupied.
    pub fn degree_range(&self, d: i32) -> Range<usize> {
        self.ranges.get(&d).cloned().unwrap_or(0..0)
    }

    pub fn dim_in_degree(&self, d: i32) -> usize {
        self.degree_range(d).len()
    }

    pub fn dims_by_degree(&self) -> BTreeMap<i32, usize> {
        self.ranges.iter().map(|(&d, r)| (d, r.len())).collect()
    }

    /// Basis indices of degree 1.
    pub fn generators(&self) -> Vec<usize> {
        self.degree_range(1).collect()
    }

    pub fn zero_element(&self) -> BitVec {
        BitVec::zeros(self.dim())
    }

    pub fn unit_element(&self) -> BitVec {
        self.basis_element(self.unit)
    }

    pub fn basis_element(&self, i: usize) -> BitVec {
        BitVec::unit(self.dim(), i)
    }

    /// Sum of the named basis elements.
    pub fn element(&self, names: &[&str]) -> Option<BitVec> {
        let mut v = self.zero_element();
        for n in names {
            v.flip(self.index_of(n)?);
        }
        Some(v)
    }

    /// Degree of a nonzero homogeneous element.
    pub fn homogeneous_degree(&self, v: &BitVec) -> Option<i32> {
        let mut degs = v.ones().map(|i| self.basis[i].degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Product of two basis elements as a list of basis indices.
    pub fn mul_basis(&self, i: usize, j: usize) -> &[u32] {
        self.table
            .get(&(i as u32, j as u32))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Bilinear extension of the multiplication table.
    pub fn cup(&self, a: &BitVec, b: &BitVec) -> BitVec {
        assert_eq!(a.len(), self.dim());
        assert_eq!(b.len(), self.dim());
        let mut out = self.zero_element();
        for i in a.ones() {
            for j in b.ones() {
                for &k in self.mul_basis(i, j) {
                    out.flip(k as usize);
                }
            }
        }
        out
    }

    /// Restriction of a homogeneous element to local coordinates of degree
    /// `d`.
    pub fn local(&self, v: &BitVec, d: i32) -> BitVec {
        let r = self.degree_range(d);
        v.slice(r.start, r.len())
    }

    /// Embeds local coordinates of degree `d` into the full basis.
    pub fn global(&self, local: &BitVec, d: i32) -> BitVec {
        let r = self.degree_range(d);
        assert_eq!(local.len(), r.len());
        let mut v = self.zero_element();
        v.xor_at(r.start, local);
        v
    }

    /// Verifies that the unit and the degree-1 part generate the ring as an
    /// algebra, by closing the degree-1 span under multiplication and
    /// comparing dimensions degree by degree. The result is cached.
    pub fn generation(&self) -> Result<&GenerationWitness, GradedError> {
        self.generation
            .get_or_init(|| self.compute_generation())
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn is_degree_one_generated(&self) -> bool {
        self.generation().is_ok()
    }

    fn compute_generation(&self) -> Result<GenerationWitness, GradedError> {
        let fail = |degree: i32, spanned: usize, full: usize| GradedError::NotDegreeOneGenerated {
            degree,
            spanned,
            full,
        };
        let mut closure = Vec::new();
        for (&d, r) in &self.ranges {
            let full = r.len();
            let spanned = match d {
                d if d < 0 => 0,
                0 => 1,
                1 => full,
                _ => {
                    let mut span = Subspace::zero(full);
                    'outer: for g in self.generators() {
                        for b in self.degree_range(d - 1) {
                            let p = self.local(&BitVec::from_indices(self.dim(), self.mul_basis(g, b).iter().map(|&k| k as usize)), d);
                            span.insert(p);
                            if span.dim() == full {
                                break 'outer;
                            }
                        }
                    }
                    span.dim()
                }
            };
            if spanned != full {
                return Err(fail(d, spanned, full));
            }
            closure.push(DegreeClosure { degree: d, spanned, full });
        }
        Ok(GenerationWitness {
            generators: self.generators().iter().map(|&g| self.basis[g].name.clone()).collect(),
            closure,
        })
    }
}
