use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{FloerError, MorseComplex};
use crate::f2linalg::{BitVec, F2Matrix};
use crate::par;

/// `ν = floor((dimL + 1) / NL)`, the largest `k` for which `∂_k` can be
/// nonzero.
pub fn nu(dim_l: usize, nl: usize) -> usize {
    (dim_l + 1) / nl
}

/// Largest product index `l` for which `m_l` can be nonzero.
pub fn product_bound(dim_l: usize, nl: usize) -> usize {
    2 * dim_l / nl
}

/// One product operator `m_l`, as the image of each ordered generator pair.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProductTable {
    entries: BTreeMap<(usize, usize), BitVec>,
}

impl ProductTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Table with a 1 in component `k` of `m(i, j)` for each triple; repeated
    /// triples cancel.
    pub fn from_triples(n: usize, triples: impl IntoIterator<Item = (usize, usize, usize)>) -> Self {
        let mut t = Self::new();
        for (i, j, k) in triples {
            t.entries.entry((i, j)).or_insert_with(|| BitVec::zeros(n)).flip(k);
        }
        t.entries.retain(|_, v| !v.is_zero());
        t
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&BitVec> {
        self.entries.get(&(i, j))
    }

    pub fn set(&mut self, i: usize, j: usize, value: BitVec) {
        if value.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), value);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero triples `(i, j, k)` in lexicographic order.
    pub fn triples(&self) -> Vec<(usize, usize, usize)> {
        self.entries
            .iter()
            .flat_map(|(&(i, j), v)| v.ones().map(move |k| (i, j, k)))
            .collect()
    }

    /// Bilinear extension to chains of length `n`.
    pub fn apply(&self, n: usize, x: &BitVec, y: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(n);
        for i in x.ones() {
            for j in y.ones() {
                if let Some(v) = self.entries.get(&(i, j)) {
                    out.xor_assign(v);
                }
            }
        }
        out
    }
}

/// The Floer complex in T-periodic form: a Morse complex, the minimal Maslov
/// number `NL`, operators `∂₀..∂_ν` on generators, and optionally product
/// operators `m₀..m_B`.
///
/// `∂_k` sends Morse degree `m` to `m + 1 - k·NL` and `m_l` sends a degree
/// pair `(i, j)` to `i + j - l·NL`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloerComplex {
    morse: MorseComplex,
    nl: usize,
    nu: usize,
    ops: Vec<F2Matrix>,
    products: Option<Vec<ProductTable>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvolutionCheck {
    pub l: usize,
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub morse_degree: i64,
    pub t_power: i64,
    pub dim: usize,
}

impl FloerComplex {
    /// Validates operator shapes and `d_F² = 0`. `higher[k - 1]` is `∂_k`;
    /// missing operators are zero.
    pub fn assemble(morse: MorseComplex, nl: usize, higher: Vec<F2Matrix>) -> Result<Self, FloerError> {
        let fc = Self::assemble_unchecked(morse, nl, higher)?;
        if let Some(bad) = fc.check_d_squared().into_iter().find(|c| !c.holds) {
            return Err(FloerError::NotADifferential {
                l: bad.l,
                generator: bad.witness.unwrap_or_default(),
            });
        }
        Ok(fc)
    }

    /// Like [`FloerComplex::assemble`] but skips the `d_F² = 0` check.
    pub fn assemble_unchecked(morse: MorseComplex, nl: usize, higher: Vec<F2Matrix>) -> Result<Self, FloerError> {
        if nl < 2 {
            return Err(FloerError::MaslovTooSmall(nl));
        }
        let n = morse.len();
        let nu = nu(morse.dim_l(), nl);
        let mut ops = vec![morse.boundary().clone()];
        for (i, m) in higher.into_iter().enumerate() {
            let k = i + 1;
            if m.rows() != n || m.cols() != n {
                return Err(FloerError::ShapeMismatch {
                    k,
                    row: m.rows(),
                    col: m.cols(),
                });
            }
            if k > nu {
                if !m.is_zero() {
                    return Err(FloerError::OperatorBeyondNu { k, nu });
                }
                continue;
            }
            morse.check_shift(&m, 1 - (k * nl) as i64, k)?;
            ops.push(m);
        }
        ops.resize(nu + 1, F2Matrix::zeros(n, n));
        Ok(Self {
            morse,
            nl,
            nu,
            ops,
            products: None,
        })
    }

    /// Attaches product tables `m₀..`; `tables.len()` may not exceed
    /// `B + 1` unless the extra tables are zero.
    pub fn with_products(mut self, mut tables: Vec<ProductTable>) -> Result<Self, FloerError> {
        let bound = product_bound(self.morse.dim_l(), self.nl);
        while tables.len() > bound + 1 {
            let l = tables.len() - 1;
            if !tables[l].is_zero() {
                return Err(FloerError::ProductBeyondBound { l, bound });
            }
            tables.pop();
        }
        let g = self.morse.generators();
        for (l, t) in tables.iter().enumerate() {
            for (i, j, k) in t.triples() {
                let n = g.len();
                if i >= n || j >= n || k >= n || g[k].index != g[i].index + g[j].index - (l * self.nl) as i64 {
                    return Err(FloerError::ProductShape { l, i, j, k });
                }
            }
        }
        tables.resize(bound + 1, ProductTable::new());
        self.products = Some(tables);
        Ok(self)
    }

    pub fn morse(&self) -> &MorseComplex {
        &self.morse
    }

    pub fn nl(&self) -> usize {
        self.nl
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn dim_l(&self) -> usize {
        self.morse.dim_l()
    }

    pub fn len(&self) -> usize {
        self.morse.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morse.is_empty()
    }

    /// `∂_k` on all generators; zero for `k > ν`.
    pub fn op(&self, k: usize) -> F2Matrix {
        self.ops
            .get(k)
            .cloned()
            .unwrap_or_else(|| F2Matrix::zeros(self.len(), self.len()))
    }

    pub fn ops(&self) -> &[F2Matrix] {
        &self.ops
    }

    /// Block of `∂_k` from Morse degree `m` to `m + 1 - k·NL`.
    pub fn op_block(&self, k: usize, m: i64) -> F2Matrix {
        let dst = m + 1 - (k * self.nl) as i64;
        match self.ops.get(k) {
            Some(op) => self.morse.block(op, dst, m),
            None => F2Matrix::zeros(self.morse.dim_in_degree(dst), self.morse.dim_in_degree(m)),
        }
    }

    pub fn products(&self) -> Option<&[ProductTable]> {
        self.products.as_deref()
    }

    /// `m_l(x, y)` on generator chains.
    pub fn product(&self, l: usize, x: &BitVec, y: &BitVec) -> Result<BitVec, FloerError> {
        let tables = self.products.as_ref().ok_or(FloerError::ProductsAbsent)?;
        Ok(match tables.get(l) {
            Some(t) => t.apply(self.len(), x, y),
            None => BitVec::zeros(self.len()),
        })
    }

    /// The identities `Σ_{i+j=l} ∂_i ∂_j = 0` for `l = 0..=2ν`, each with the
    /// first generator on which it fails.
    pub fn check_d_squared(&self) -> Vec<ConvolutionCheck> {
        par::map_range(0..2 * self.nu + 1, |l| {
            let mut sum = F2Matrix::zeros(self.len(), self.len());
            for i in 0..=l.min(self.nu) {
                let j = l - i;
                if j <= self.nu {
                    sum.add_assign(&self.ops[i].mul(&self.ops[j]));
                }
            }
            let witness = sum
                .entries()
                .into_iter()
                .map(|(_, c)| c)
                .min()
                .map(|c| self.morse.generators()[c].name.clone());
            ConvolutionCheck {
                l,
                holds: witness.is_none(),
                witness,
            }
        })
    }

    /// Summands `C^m ⊗ T^k` of `CF^l` with `m = l - k·NL`, `|k| <= window`
    /// and `C^m` nonzero, in increasing Morse degree.
    pub fn grading_decomposition(&self, l: i64, window: usize) -> Vec<Summand> {
        let nl = self.nl as i64;
        let w = window as i64;
        let mut out: Vec<Summand> = (-w..=w)
            .filter_map(|k| {
                let m = l - k * nl;
                let dim = self.morse.dim_in_degree(m);
                (dim > 0).then_some(Summand {
                    morse_degree: m,
                    t_power: k,
                    dim,
                })
            })
            .collect();
        out.sort_by_key(|s| s.morse_degree);
        out
    }

    /// Residue of Morse degree `m` modulo `NL`.
    pub fn residue(&self, m: i64) -> usize {
        m.rem_euclid(self.nl as i64) as usize
    }

    /// Homology of the complex folded modulo `NL`, one dimension per residue.
    ///
    /// The folded complex sums `C^m` over `m` in a residue class with total
    /// differential `D = Σ ∂_k`; it is `CF^l` for any `l` in the class.
    pub fn folded_homology(&self) -> Result<Vec<usize>, FloerError> {
        if let Some(bad) = self.check_d_squared().into_iter().find(|c| !c.holds) {
            return Err(FloerError::NotADifferential {
                l: bad.l,
                generator: bad.witness.unwrap_or_default(),
            });
        }
        let mut total = F2Matrix::zeros(self.len(), self.len());
        for op in &self.ops {
            total.add_assign(op);
        }
        let residue_of: Vec<usize> = self.morse.generators().iter().map(|g| self.residue(g.index)).collect();
        let ranks: Vec<usize> = (0..self.nl)
            .map(|r| {
                let cols: Vec<usize> = (0..self.len()).filter(|&c| residue_of[c] == r).collect();
                let rows: Vec<usize> = (0..self.len()).collect();
                total.select(&rows, &cols).rank()
            })
            .collect();
        Ok((0..self.nl)
            .map(|r| {
                let dim = residue_of.iter().filter(|&&x| x == r).count();
                dim - ranks[r] - ranks[(r + self.nl - 1) % self.nl]
            })
            .collect())
    }

    /// Chain dimensions of the folded complex per residue.
    pub fn folded_dims(&self) -> Vec<usize> {
        let mut dims = vec![0; self.nl];
        for g in self.morse.generators() {
            dims[self.residue(g.index)] += 1;
        }
        dims
    }
}
