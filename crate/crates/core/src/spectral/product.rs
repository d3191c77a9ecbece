use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{SpectralError, SpectralOptions, SpectralPage};
use crate::f2linalg::{BitVec, F2Matrix};
use crate::floercomplex::{check_product_leibniz, FloerComplex};

/// The product induced on one page. `table[(m, m')][i][j]` is the class of
/// `a_i · b_j` in `V_r(m + m')` for basis classes `a_i` of `V_r(m)` and
/// `b_j` of `V_r(m')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageProduct {
    pub r: usize,
    table: BTreeMap<(i64, i64), Vec<Vec<BitVec>>>,
    pub checks: ProductChecks,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductChecks {
    pub pairs: usize,
    /// Products recomputed from other representatives that landed in a
    /// different class. `None` outside paranoid mode.
    pub representative_mismatches: Option<usize>,
    /// Basis pairs violating `δ(ab) = δ(a)b + aδ(b)`.
    pub leibniz_failures: usize,
}

impl ProductChecks {
    pub fn passed(&self) -> bool {
        self.representative_mismatches.unwrap_or(0) == 0 && self.leibniz_failures == 0
    }
}

impl PageProduct {
    /// Product of classes given in quotient coordinates of `V_r(m)` and
    /// `V_r(m2)`; zero when `m + m2` leaves `[0, dimL]`.
    pub fn multiply(&self, m: i64, a: &BitVec, m2: i64, b: &BitVec, target_dim: usize) -> BitVec {
        let mut out = BitVec::zeros(target_dim);
        if let Some(t) = self.table.get(&(m, m2)) {
            for i in a.ones() {
                for j in b.ones() {
                    out.xor_assign(&t[i][j]);
                }
            }
        }
        out
    }

    pub fn entry(&self, m: i64, i: usize, m2: i64, j: usize) -> Option<&BitVec> {
        self.table.get(&(m, m2)).map(|t| &t[i][j])
    }
}

fn embed(fc: &FloerComplex, m: i64, local: &BitVec) -> BitVec {
    let mut v = BitVec::zeros(fc.len());
    v.xor_at(fc.morse().degree_range(m).start, local);
    v
}

fn restrict(fc: &FloerComplex, m: i64, global: &BitVec) -> BitVec {
    let r = fc.morse().degree_range(m);
    global.slice(r.start, r.len())
}

/// Leading T-power coefficient of `x ⋆ y`, which is `m₀(x, y)`, in local
/// coordinates of degree `m + m2`.
fn leading_product(fc: &FloerComplex, m: i64, x: &BitVec, m2: i64, y: &BitVec) -> BitVec {
    let p = fc.product(0, &embed(fc, m, x), &embed(fc, m2, y)).expect("products present");
    restrict(fc, m + m2, &p)
}

/// Multiplies page classes through representatives and projects to the page.
/// Requires products on the complex and a passing product Leibniz check.
pub fn induced_page_product(
    fc: &FloerComplex,
    page: &SpectralPage,
    opts: &SpectralOptions,
) -> Result<PageProduct, SpectralError> {
    if fc.products().is_none() {
        return Err(SpectralError::ProductsAbsent);
    }
    if let Some(f) = check_product_leibniz(fc)?.failure {
        return Err(SpectralError::LeibnizFailure {
            r: page.r,
            detail: format!("l = {} on ({}, {})", f.l, f.left, f.right),
        });
    }
    let r = page.r;
    let top = fc.dim_l() as i64;
    let mut table = BTreeMap::new();
    let mut pairs = 0;
    let mut mismatches = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(0x9a9e ^ r as u64);
    for m in 0..=top {
        for m2 in 0..=top - m {
            let (a, b, t) = (page.slot(m).unwrap(), page.slot(m2).unwrap(), page.slot(m + m2).unwrap());
            let mut rows = Vec::with_capacity(a.dim());
            for x in a.representatives() {
                let mut row = Vec::with_capacity(b.dim());
                for y in b.representatives() {
                    pairs += 1;
                    let p = leading_product(fc, m, x, m2, y);
                    let class = t.quotient().project(&p).ok_or_else(|| SpectralError::LeibnizFailure {
                        r,
                        detail: format!("product in degree {} is not a page cycle", m + m2),
                    })?;
                    if opts.paranoid {
                        let pick = |s: &crate::f2linalg::Subspace, rng: &mut ChaCha8Rng| {
                            let mut v = BitVec::zeros(s.ambient_dim());
                            for e in s.basis() {
                                if rng.gen() {
                                    v.xor_assign(e);
                                }
                            }
                            v
                        };
                        let x2 = x.xor(&pick(&a.b, &mut rng));
                        let y2 = y.xor(&pick(&b.b, &mut rng));
                        let p2 = leading_product(fc, m, &x2, m2, &y2);
                        if t.quotient().project(&p2).as_ref() != Some(&class) {
                            mismatches += 1;
                        }
                    }
                    row.push(class);
                }
                rows.push(row);
            }
            table.insert((m, m2), rows);
        }
    }
    let mut product = PageProduct {
        r,
        table,
        checks: ProductChecks {
            pairs,
            representative_mismatches: opts.paranoid.then_some(mismatches),
            leibniz_failures: 0,
        },
    };
    product.checks.leibniz_failures = page_leibniz_failures(fc, page, &product);
    Ok(product)
}

fn apply_delta(page: &SpectralPage, m: i64, v: &BitVec) -> Option<BitVec> {
    let d: &F2Matrix = page.delta(m)?;
    (d.rows() > 0).then(|| d.mul_vec(v))
}

/// Counts basis pairs where `δ_r` fails to be a derivation of the page
/// product.
fn page_leibniz_failures(fc: &FloerComplex, page: &SpectralPage, product: &PageProduct) -> usize {
    let top = fc.dim_l() as i64;
    let shift = 1 - (page.r * fc.nl()) as i64;
    let mut failures = 0;
    for m in 0..=top {
        for m2 in 0..=top - m {
            let t = m + m2 + shift;
            let target_dim = page.dim(t);
            if target_dim == 0 {
                continue;
            }
            for i in 0..page.dim(m) {
                for j in 0..page.dim(m2) {
                    let a = BitVec::unit(page.dim(m), i);
                    let b = BitVec::unit(page.dim(m2), j);
                    let ab = product.multiply(m, &a, m2, &b, page.dim(m + m2));
                    let lhs = apply_delta(page, m + m2, &ab).unwrap_or_else(|| BitVec::zeros(target_dim));
                    let mut rhs = BitVec::zeros(target_dim);
                    if let Some(da) = apply_delta(page, m, &a) {
                        rhs.xor_assign(&product.multiply(m + shift, &da, m2, &b, target_dim));
                    }
                    if let Some(db) = apply_delta(page, m2, &b) {
                        rhs.xor_assign(&product.multiply(m, &a, m2 + shift, &db, target_dim));
                    }
                    if lhs != rhs {
                        failures += 1;
                    }
                }
            }
        }
    }
    failures
}
