use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::SpectralPage;
use crate::f2linalg::{quotient_map, BitVec, F2Matrix, Quotient};
use crate::floercomplex::FloerComplex;

/// Homology of the honest bigraded complex `⊕ C^m ⊗ T^k`, `|k| <= window`,
/// with terms pushed past `T^window` dropped, in total degrees `0..NL`.
///
/// For `window > ν` the complex agrees with the untruncated one in total
/// degrees `-1..=NL`, so these numbers are exactly `dim HF^l`.
pub fn window_homology(fc: &FloerComplex, window: usize) -> Vec<usize> {
    let nl = fc.nl() as i64;
    let w = window as i64;
    let gens = fc.morse().generators();
    let mut by_degree: HashMap<i64, Vec<(usize, i64)>> = HashMap::new();
    for k in -w..=w {
        for (g, gen) in gens.iter().enumerate() {
            by_degree.entry(gen.index + k * nl).or_default().push((g, k));
        }
    }
    let columns: Vec<Vec<BitVec>> = fc
        .ops()
        .iter()
        .map(|op| (0..gens.len()).map(|c| op.column(c)).collect())
        .collect();
    let empty = Vec::new();
    let differential = |l: i64| -> F2Matrix {
        let src = by_degree.get(&l).unwrap_or(&empty);
        let dst = by_degree.get(&(l + 1)).unwrap_or(&empty);
        let row_of: HashMap<(usize, i64), usize> = dst.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut m = F2Matrix::zeros(dst.len(), src.len());
        for (c, &(g, k)) in src.iter().enumerate() {
            for (j, col) in columns.iter().enumerate() {
                let kk = k + j as i64;
                if kk > w {
                    continue;
                }
                for h in col[g].ones() {
                    let row = row_of[&(h, kk)];
                    m.flip(row, c);
                }
            }
        }
        m
    };
    (0..nl)
        .map(|l| {
            let dim = by_degree.get(&l).map_or(0, Vec::len);
            dim - differential(l).rank() - differential(l - 1).rank()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E1Report {
    pub morse_cohomology: Vec<usize>,
    pub page_dims: Vec<usize>,
    pub dims_match: bool,
    pub delta_match: bool,
}

impl E1Report {
    pub fn holds(&self) -> bool {
        self.dims_match && self.delta_match
    }
}

/// Compares page 1 with Morse cohomology `H(C, ∂₀)` and the map `[∂₁]`
/// it induces, computed directly from kernels and images of `∂₀`.
pub fn e1_identification(fc: &FloerComplex, page1: &SpectralPage) -> E1Report {
    assert_eq!(page1.r, 1, "expected page 1");
    let top = fc.dim_l() as i64;
    let cohomology: Vec<Quotient> = (0..=top)
        .map(|m| {
            let cycles = fc.op_block(0, m).kernel();
            let boundaries = fc.op_block(0, m - 1).image();
            quotient_map(&boundaries, &cycles).expect("∂₀² = 0")
        })
        .collect();
    let morse_cohomology = fc.morse().cohomology_dims();
    let page_dims = page1.dims();
    let dims_match = morse_cohomology == page_dims && cohomology.iter().map(Quotient::dim).eq(page_dims.iter().copied());
    let delta_match = dims_match
        && (0..=top).all(|m| {
            let t = m + 1 - fc.nl() as i64;
            let induced = match usize::try_from(t).ok().and_then(|i| cohomology.get(i)) {
                None => F2Matrix::zeros(0, cohomology[m as usize].dim()),
                Some(target) => {
                    let d1 = fc.op_block(1, m);
                    let cols: Vec<BitVec> = cohomology[m as usize]
                        .representatives()
                        .iter()
                        .map(|x| target.project(&d1.mul_vec(x)).expect("∂₁ maps cycles to cycles"))
                        .collect();
                    F2Matrix::from_columns(target.dim(), &cols)
                }
            };
            page1.delta(m) == Some(&induced)
        });
    E1Report {
        morse_cohomology,
        page_dims,
        dims_match,
        delta_match,
    }
}
