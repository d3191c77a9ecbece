use serde::{Deserialize, Serialize};

use super::page::{page0, turn_page, SpectralPage};
use super::{window_homology, SpectralError, SpectralOptions};
use crate::floercomplex::FloerComplex;

/// Pages `E_0..E_{ν+1}` of a complex. From `ν + 1` on every `δ_r` leaves
/// `[0, dimL]`, so `E_{ν+1} = E_∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralRun {
    pub pages: Vec<SpectralPage>,
    /// `E_∞` dimensions per Morse degree.
    pub e_inf: Vec<usize>,
    /// First page equal to `E_∞`.
    pub collapsed_at: usize,
}

impl SpectralRun {
    /// Whether page `r` already equals `E_∞`.
    pub fn collapsed(&self, r: usize) -> bool {
        r >= self.collapsed_at
    }

    pub fn checks_passed(&self) -> bool {
        self.pages.iter().all(|p| p.checks.passed())
    }

    /// Page dimensions never grow with `r`.
    pub fn dims_non_increasing(&self) -> bool {
        self.pages
            .windows(2)
            .all(|w| w[0].dims().iter().zip(w[1].dims()).all(|(a, b)| *a >= b))
    }

    pub fn e_inf_by_residue(&self, nl: usize) -> Vec<usize> {
        let mut out = vec![0; nl];
        for (m, d) in self.e_inf.iter().enumerate() {
            out[m % nl] += d;
        }
        out
    }
}

pub fn run_to_collapse(fc: &FloerComplex, opts: &SpectralOptions) -> Result<SpectralRun, SpectralError> {
    let last = fc.nu() + 1;
    let mut pages = vec![page0(fc, opts)?];
    for _ in 0..last {
        let next = turn_page(fc, pages.last().expect("nonempty"), opts)?;
        pages.push(next);
    }
    let final_page = pages.last().expect("nonempty");
    if !final_page.delta_is_zero() {
        return Err(SpectralError::NoCollapse { r: last });
    }
    let e_inf = final_page.dims();
    let collapsed_at = pages.iter().position(|p| p.dims() == e_inf).expect("last page matches");
    Ok(SpectralRun {
        pages,
        e_inf,
        collapsed_at,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueComparison {
    pub residue: usize,
    pub e_inf: usize,
    pub folded: usize,
    pub window: usize,
}

impl ResidueComparison {
    pub fn agrees(&self) -> bool {
        self.e_inf == self.folded && self.folded == self.window
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub window: usize,
    pub residues: Vec<ResidueComparison>,
}

impl ConvergenceReport {
    pub fn converges(&self) -> bool {
        self.residues.iter().all(ResidueComparison::agrees)
    }
}

/// Half-width of the truncated window oracle, `2ν + 2`.
pub fn default_window(fc: &FloerComplex) -> usize {
    2 * fc.nu() + 2
}

/// Compares, per residue mod `NL`, the total `E_∞` dimension with folded
/// homology and with the truncated-window homology.
pub fn check_convergence(fc: &FloerComplex, run: &SpectralRun) -> Result<ConvergenceReport, SpectralError> {
    let folded = fc.folded_homology()?;
    let window = default_window(fc);
    let honest = window_homology(fc, window);
    let e_inf = run.e_inf_by_residue(fc.nl());
    Ok(ConvergenceReport {
        window,
        residues: (0..fc.nl())
            .map(|r| ResidueComparison {
                residue: r,
                e_inf: e_inf[r],
                folded: folded[r],
                window: honest[r],
            })
            .collect(),
    })
}
