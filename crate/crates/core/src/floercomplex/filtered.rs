use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{FloerComplex, FloerError};
use crate::f2linalg::BitVec;
use crate::par;

/// A finite Laurent sum `Σ x_p ⊗ T^p` with chains `x_p` on the generators.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FilteredElement {
    terms: BTreeMap<i64, BitVec>,
}

impl FilteredElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(chain: BitVec, power: i64) -> Self {
        let mut e = Self::zero();
        e.add_term(chain, power);
        e
    }

    pub fn add_term(&mut self, chain: BitVec, power: i64) {
        match self.terms.get_mut(&power) {
            Some(c) => {
                c.xor_assign(&chain);
                if c.is_zero() {
                    self.terms.remove(&power);
                }
            }
            None if !chain.is_zero() => {
                self.terms.insert(power, chain);
            }
            None => {}
        }
    }

    pub fn add(&self, other: &FilteredElement) -> FilteredElement {
        let mut out = self.clone();
        for (&p, c) in &other.terms {
            out.add_term(c.clone(), p);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<i64, BitVec> {
        &self.terms
    }

    pub fn coefficient(&self, power: i64) -> Option<&BitVec> {
        self.terms.get(&power)
    }

    /// Largest `p` with the element in `F^p`; `None` for zero.
    pub fn filtration_level(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Common total degree `m + p·NL` of all terms, if homogeneous.
    pub fn total_degree(&self, fc: &FloerComplex) -> Option<i64> {
        let g = fc.morse().generators();
        let mut degs = self
            .terms
            .iter()
            .flat_map(|(&p, c)| c.ones().map(move |i| g[i].index + p * fc.nl() as i64));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }
}

/// `d_F(a) = Σ_k ∂_k a ⊗ T^k`.
pub fn differential(fc: &FloerComplex, a: &FilteredElement) -> FilteredElement {
    let mut out = FilteredElement::zero();
    for (&p, c) in a.terms() {
        for (k, op) in fc.ops().iter().enumerate() {
            out.add_term(op.mul_vec(c), p + k as i64);
        }
    }
    out
}

/// `a ⋆ b = Σ_l m_l(a, b) ⊗ T^l`, extended bilinearly over T-powers.
pub fn star_product(fc: &FloerComplex, a: &FilteredElement, b: &FilteredElement) -> Result<FilteredElement, FloerError> {
    let tables = fc.products().ok_or(FloerError::ProductsAbsent)?;
    let mut out = FilteredElement::zero();
    for (&p, x) in a.terms() {
        for (&q, y) in b.terms() {
            for (l, t) in tables.iter().enumerate() {
                out.add_term(t.apply(fc.len(), x, y), p + q + l as i64);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductLeibnizFailure {
    pub l: usize,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductLeibnizReport {
    pub max_l: usize,
    pub pairs_checked: usize,
    pub failure: Option<ProductLeibnizFailure>,
}

impl ProductLeibnizReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `Σ_{i+j=l} ∂_j m_i(x, y) = Σ_{i+j=l} m_i(∂_j x, y) + m_i(x, ∂_j y)`
/// on every ordered generator pair and every `l` up to `ν + B`. Reports the
/// smallest failing `l` and, within it, the first pair.
pub fn check_product_leibniz(fc: &FloerComplex) -> Result<ProductLeibnizReport, FloerError> {
    let tables = fc.products().ok_or(FloerError::ProductsAbsent)?;
    let n = fc.len();
    let max_l = fc.nu() + tables.len() - 1;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let units: Vec<BitVec> = (0..n).map(|i| BitVec::unit(n, i)).collect();
    let images: Vec<Vec<BitVec>> = fc
        .ops()
        .iter()
        .map(|op| units.iter().map(|u| op.mul_vec(u)).collect())
        .collect();
    let failures = par::map(&pairs, |&(x, y)| {
        (0..=max_l).find(|&l| {
            let mut lhs = BitVec::zeros(n);
            let mut rhs = BitVec::zeros(n);
            for (i, t) in tables.iter().enumerate().take(l + 1) {
                let j = l - i;
                let Some(op) = fc.ops().get(j) else { continue };
                lhs.xor_assign(&op.mul_vec(&t.apply(n, &units[x], &units[y])));
                rhs.xor_assign(&t.apply(n, &images[j][x], &units[y]));
                rhs.xor_assign(&t.apply(n, &units[x], &images[j][y]));
            }
            lhs != rhs
        })
    });
    let g = fc.morse().generators();
    let failure = pairs
        .iter()
        .zip(failures)
        .filter_map(|(&(x, y), f)| f.map(|l| (l, x, y)))
        .min()
        .map(|(l, x, y)| ProductLeibnizFailure {
            l,
            left: g[x].name.clone(),
            right: g[y].name.clone(),
        });
    Ok(ProductLeibnizReport {
        max_l,
        pairs_checked: pairs.len(),
        failure,
    })
}
