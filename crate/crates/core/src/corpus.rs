//! Seeded corpora of valid complexes and the invariant suite run on them.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::floercomplex::{perfect_ring_complex, random_complex_with_prediction, FloerComplex, FloerError};
use crate::gradedalg::{enumerate_derivations, GradedRing};
use crate::par;
use crate::spectral::{
    check_convergence, e1_identification, induced_page_product, run_to_collapse, SpectralError, SpectralOptions,
};

/// Largest total Morse dimension in a corpus complex.
pub const MAX_CORPUS_DIM: usize = 12;

pub const CORPUS_NLS: [usize; 3] = [2, 3, 4];

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub seed: u64,
    pub dims: Vec<usize>,
    pub nl: usize,
    pub complex: FloerComplex,
    pub predicted_folded: Vec<usize>,
}

fn entry_seeds(seed: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.gen()).collect()
}

/// Morse dimensions and Maslov number drawn from `seed`.
pub fn corpus_shape(seed: u64) -> (Vec<usize>, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim_l = rng.gen_range(1..=5);
    let mut dims = Vec::with_capacity(dim_l + 1);
    let mut left = MAX_CORPUS_DIM;
    for m in 0..=dim_l {
        let reserve = dim_l - m;
        let d = rng.gen_range(1..=3.min(left - reserve));
        dims.push(d);
        left -= d;
    }
    (dims, CORPUS_NLS[rng.gen_range(0..CORPUS_NLS.len())])
}

pub fn corpus_entry(seed: u64) -> Result<CorpusEntry, FloerError> {
    let (dims, nl) = corpus_shape(seed);
    let r = random_complex_with_prediction(seed, &dims, nl)?;
    Ok(CorpusEntry {
        seed,
        dims,
        nl,
        complex: r.complex,
        predicted_folded: r.predicted_folded,
    })
}

/// `count` entries whose seeds are drawn from a stream keyed by `seed`.
pub fn generate_corpus(seed: u64, count: usize) -> Result<Vec<CorpusEntry>, FloerError> {
    par::map(&entry_seeds(seed, count), |&s| corpus_entry(s))
        .into_iter()
        .collect()
}

/// Outcome of the invariant suite on one complex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfTest {
    pub seed: u64,
    #[serde(rename = "NL")]
    pub nl: usize,
    pub dims: Vec<usize>,
    pub d_squared: bool,
    pub pages: usize,
    pub page_checks: bool,
    pub delta_squared_zero: bool,
    pub dims_non_increasing: bool,
    pub converges: bool,
    pub matches_prediction: bool,
    pub e1_identified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl SelfTest {
    pub fn passed(&self) -> bool {
        self.error.is_none()
            && self.d_squared
            && self.page_checks
            && self.delta_squared_zero
            && self.dims_non_increasing
            && self.converges
            && self.matches_prediction
            && self.e1_identified
    }
}

pub fn self_test(entry: &CorpusEntry, opts: &SpectralOptions) -> SelfTest {
    let mut t = SelfTest {
        seed: entry.seed,
        nl: entry.nl,
        dims: entry.dims.clone(),
        ..SelfTest::default()
    };
    let fc = &entry.complex;
    t.d_squared = fc.check_d_squared().iter().all(|c| c.holds);
    let result = (|| -> Result<(), SpectralError> {
        let run = run_to_collapse(fc, opts)?;
        t.pages = run.pages.len();
        t.page_checks = run.checks_passed();
        t.delta_squared_zero = run.pages.iter().all(|p| p.checks.delta_squared_zero);
        t.dims_non_increasing = run.dims_non_increasing();
        t.converges = check_convergence(fc, &run)?.converges();
        t.matches_prediction = run.e_inf_by_residue(entry.nl) == entry.predicted_folded;
        t.e1_identified = e1_identification(fc, &run.pages[1]).holds();
        Ok(())
    })();
    t.error = result.err().map(|e| e.to_string());
    t
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub seed: u64,
    pub count: usize,
    pub passed: usize,
    pub failed_seeds: Vec<u64>,
    pub results: Vec<SelfTest>,
}

impl CorpusSummary {
    pub fn all_passed(&self) -> bool {
        self.passed == self.count
    }
}

pub fn run_self_tests(seed: u64, entries: &[CorpusEntry], opts: &SpectralOptions) -> CorpusSummary {
    let results = par::map(entries, |e| self_test(e, opts));
    let failed_seeds: Vec<u64> = results.iter().filter(|t| !t.passed()).map(|t| t.seed).collect();
    CorpusSummary {
        seed,
        count: results.len(),
        passed: results.len() - failed_seeds.len(),
        failed_seeds,
        results,
    }
}

/// Rings the product corpus draws from, all of dimension at most
/// [`MAX_CORPUS_DIM`].
pub fn product_corpus_rings() -> Vec<(String, Arc<GradedRing>)> {
    let mut rings = Vec::new();
    for n in 1..=3 {
        rings.push((format!("exterior {n}"), Arc::new(GradedRing::exterior(n).expect("small"))));
    }
    for n in 1..=5 {
        rings.push((format!("truncated {n}"), Arc::new(GradedRing::truncated_poly(n).expect("small"))));
    }
    rings
}

/// A perfect ring complex: `∂₀ = 0`, `∂₁` a Leibniz derivation of the ring,
/// and `m₀` the ring product.
#[derive(Clone, Debug)]
pub struct ProductEntry {
    pub seed: u64,
    pub ring: String,
    pub nl: usize,
    pub derivation: usize,
    pub complex: FloerComplex,
    pub ring_data: Arc<GradedRing>,
}

pub fn product_corpus(seed: u64, count: usize) -> Result<Vec<ProductEntry>, SpectralError> {
    let rings = product_corpus_rings();
    entry_seeds(seed, count)
        .into_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let (name, ring) = &rings[rng.gen_range(0..rings.len())];
            let nl = CORPUS_NLS[rng.gen_range(0..CORPUS_NLS.len())];
            let all = enumerate_derivations(ring, 1 - nl as i32).expect("small ring");
            let k = rng.gen_range(0..all.len());
            Ok(ProductEntry {
                seed: s,
                ring: name.clone(),
                nl,
                derivation: k,
                complex: perfect_ring_complex(ring, nl, Some(&all[k]))?,
                ring_data: ring.clone(),
            })
        })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSelfTest {
    pub seed: u64,
    pub ring: String,
    #[serde(rename = "NL")]
    pub nl: usize,
    pub product_leibniz: bool,
    pub e1_pairs: usize,
    pub e1_cup_mismatches: usize,
    pub representative_mismatches: usize,
    pub page_leibniz_failures: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ProductSelfTest {
    pub fn passed(&self) -> bool {
        self.error.is_none()
            && self.product_leibniz
            && self.e1_cup_mismatches == 0
            && self.representative_mismatches == 0
            && self.page_leibniz_failures == 0
    }
}

/// Checks the product Leibniz rule, compares the `E₁` product with the cup
/// product of the ring basis, and checks every page product in paranoid
/// mode.
pub fn product_self_test(entry: &ProductEntry) -> ProductSelfTest {
    let opts = SpectralOptions { paranoid: true };
    let fc = &entry.complex;
    let ring = &entry.ring_data;
    let mut t = ProductSelfTest {
        seed: entry.seed,
        ring: entry.ring.clone(),
        nl: entry.nl,
        ..ProductSelfTest::default()
    };
    let result = (|| -> Result<(), SpectralError> {
        t.product_leibniz = crate::floercomplex::check_product_leibniz(fc)?.failure.is_none();
        let run = run_to_collapse(fc, &opts)?;
        for page in &run.pages {
            let p = induced_page_product(fc, page, &opts)?;
            t.representative_mismatches += p.checks.representative_mismatches.unwrap_or(0);
            t.page_leibniz_failures += p.checks.leibniz_failures;
            if page.r != 1 {
                continue;
            }
            // With ∂₀ = 0, V₁(m) is the whole Morse degree m and the
            // representatives are unit vectors in generator order.
            let morse = fc.morse();
            let local = |i: usize| {
                let d = ring.degree(i) as i64;
                let g = morse.index_of(ring.name(i)).expect("ring generator");
                (d, g - morse.degree_range(d).start)
            };
            for a in 0..ring.dim() {
                for b in 0..ring.dim() {
                    t.e1_pairs += 1;
                    let ((da, ia), (db, ib)) = (local(a), local(b));
                    let cup = ring.cup(&ring.basis_element(a), &ring.basis_element(b));
                    let mut want: Vec<usize> = cup.ones().map(|k| morse.index_of(ring.name(k)).unwrap()).collect();
                    want.sort_unstable();
                    let got: Vec<usize> = match p.entry(da, ia, db, ib) {
                        None => Vec::new(),
                        Some(class) => {
                            let start = morse.degree_range(da + db).start;
                            class.ones().map(|k| start + k).collect()
                        }
                    };
                    if got != want {
                        t.e1_cup_mismatches += 1;
                    }
                }
            }
        }
        Ok(())
    })();
    t.error = result.err().map(|e| e.to_string());
    t
}
