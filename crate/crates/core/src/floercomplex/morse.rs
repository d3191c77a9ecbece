use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::FloerError;
use crate::f2linalg::F2Matrix;

/// A critical point: its name and Morse index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub index: i64,
}

impl Generator {
    pub fn new(name: impl Into<String>, index: i64) -> Self {
        Self {
            name: name.into(),
            index,
        }
    }
}

/// Canonical generator order: by Morse index, then name.
pub fn canonical_order(generators: &[Generator]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..generators.len()).collect();
    order.sort_by(|&a, &b| {
        (generators[a].index, &generators[a].name).cmp(&(generators[b].index, &generators[b].name))
    });
    order
}

/// Morse cochain complex over F2 with generators in canonical order.
///
/// The boundary `∂₀` is stored as one square matrix on all generators; it
/// raises the Morse index by one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseComplex {
    dim_l: usize,
    generators: Vec<Generator>,
    ranges: Vec<Range<usize>>,
    boundary: F2Matrix,
}

impl MorseComplex {
    /// Validates a complex whose generators are already in canonical order.
    pub fn new(dim_l: usize, generators: Vec<Generator>, boundary: F2Matrix) -> Result<Self, FloerError> {
        for g in &generators {
            if g.index < 0 || g.index > dim_l as i64 {
                return Err(FloerError::IndexOutOfRange {
                    name: g.name.clone(),
                    index: g.index,
                    dim_l,
                });
            }
        }
        if canonical_order(&generators).iter().enumerate().any(|(i, &j)| i != j) {
            return Err(FloerError::GeneratorOrder);
        }
        let mut names: Vec<&str> = generators.iter().map(|g| g.name.as_str()).collect();
        names.sort_unstable();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(FloerError::DuplicateName(w[0].to_string()));
        }
        let n = generators.len();
        if boundary.rows() != n || boundary.cols() != n {
            return Err(FloerError::ShapeMismatch {
                k: 0,
                row: boundary.rows(),
                col: boundary.cols(),
            });
        }
        let mut ranges = vec![0..0; dim_l + 1];
        for (i, g) in generators.iter().enumerate() {
            let r = &mut ranges[g.index as usize];
            if r.start == r.end {
                *r = i..i;
            }
            r.end = i + 1;
        }
        let complex = Self {
            dim_l,
            generators,
            ranges,
            boundary,
        };
        complex.check_shift(&complex.boundary, 1, 0)?;
        let sq = complex.boundary.mul(&complex.boundary);
        if let Some(c) = sq.entries().into_iter().map(|(_, c)| c).min() {
            return Err(FloerError::NotADifferential {
                l: 0,
                generator: complex.generators[c].name.clone(),
            });
        }
        Ok(complex)
    }

    /// Morse complex with zero boundary.
    pub fn perfect(dim_l: usize, generators: Vec<Generator>) -> Result<Self, FloerError> {
        let n = generators.len();
        Self::new(dim_l, generators, F2Matrix::zeros(n, n))
    }

    /// Rejects entries of `m` that do not raise the Morse index by `shift`.
    pub(crate) fn check_shift(&self, m: &F2Matrix, shift: i64, k: usize) -> Result<(), FloerError> {
        for (r, c) in m.entries() {
            if self.generators[r].index != self.generators[c].index + shift {
                return Err(FloerError::ShapeMismatch { k, row: r, col: c });
            }
        }
        Ok(())
    }

    pub fn dim_l(&self) -> usize {
        self.dim_l
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn boundary(&self) -> &F2Matrix {
        &self.boundary
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Generator indices of Morse degree `m`; empty outside `[0, dimL]`.
    pub fn degree_range(&self, m: i64) -> Range<usize> {
        if m < 0 || m > self.dim_l as i64 {
            0..0
        } else {
            self.ranges[m as usize].clone()
        }
    }

    pub fn dim_in_degree(&self, m: i64) -> usize {
        self.degree_range(m).len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.ranges.iter().map(Range::len).collect()
    }

    /// Block of a generator-indexed matrix from degree `src` to degree `dst`.
    pub fn block(&self, m: &F2Matrix, dst: i64, src: i64) -> F2Matrix {
        let r = self.degree_range(dst);
        let c = self.degree_range(src);
        if r.is_empty() || c.is_empty() {
            return F2Matrix::zeros(r.len(), c.len());
        }
        m.block(r.start, r.len(), c.start, c.len())
    }

    /// Cohomology dimensions of `(C, ∂₀)` per Morse degree.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        (0..=self.dim_l as i64)
            .map(|m| {
                let out = self.block(&self.boundary, m + 1, m);
                let inc = self.block(&self.boundary, m, m - 1);
                self.dim_in_degree(m) - out.rank() - inc.rank()
            })
            .collect()
    }
}
