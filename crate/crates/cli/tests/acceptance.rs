//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Golden files live in `tests/golden`; set `UPDATE_GOLDEN=1` to rewrite
//! them.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use floer_core::corpus::{generate_corpus, product_corpus, product_self_test};
use floer_core::floercomplex::FloerComplex;
use floer_core::gradedalg::{
    derivation_from_generator_values, enumerate_derivations, vanishing_lemma, GradedRing,
};
use floer_core::maslov::{concatenate, maslov_index, CMat, LagrangianLoop, WINDING_TOLERANCE};
use floer_core::spectral::{
    check_convergence, e1_identification, run_to_collapse, window_homology, SpectralOptions,
};
use floer_core::theorems::{
    audin_grid, maslov_two_disc_argument, rpn_driver, AudinVerdict, PageStep, TheoremError, Verdict,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

struct Run {
    code: i32,
    stdout: Vec<u8>,
    stderr: String,
}

fn floer(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_floer"))
        .args(args)
        .output()
        .expect("spawn floer");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: out.stdout,
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

fn floer_json(args: &[&str]) -> (i32, serde_json::Value) {
    let r = floer(args);
    let v = serde_json::from_slice(&r.stdout).unwrap_or(serde_json::Value::Null);
    (r.code, v)
}

// Exterior algebra on bitmasks: basis element x_S is the set S, x_S x_T is
// x_{S ∪ T} when disjoint and 0 otherwise.

fn mask_of(name: &str) -> u32 {
    if name == "1" {
        return 0;
    }
    name.split('x')
        .filter(|s| !s.is_empty())
        .map(|s| 1u32 << (s.parse::<u32>().unwrap() - 1))
        .fold(0, |a, b| a | b)
}

/// Leibniz extension of `x_i -> v_i` (v_i in F2 times the unit), as the set
/// of (target, source) basis masks.
fn oracle_minus_one(n: usize, values: u32) -> BTreeSet<(u32, u32)> {
    let mut out = BTreeSet::new();
    for s in 0u32..1 << n {
        for i in 0..n {
            if s >> i & 1 == 1 && values >> i & 1 == 1 {
                out.insert((s & !(1 << i), s));
            }
        }
    }
    out
}

fn derivation_masks(ring: &GradedRing, m: &floer_core::f2linalg::F2Matrix) -> BTreeSet<(u32, u32)> {
    m.entries()
        .into_iter()
        .map(|(r, c)| (mask_of(ring.name(r)), mask_of(ring.name(c))))
        .collect()
}

/// Rank over F2 of columns packed into `u128`s.
fn rank(mut cols: Vec<u128>) -> usize {
    let mut r = 0;
    while let Some(pos) = cols.iter().position(|&c| c != 0) {
        let c = cols.swap_remove(pos);
        let low = c & c.wrapping_neg();
        for x in cols.iter_mut() {
            if *x & low != 0 {
                *x ^= c;
            }
        }
        r += 1;
    }
    r
}

fn morse_betti(fc: &FloerComplex) -> Vec<usize> {
    let m = fc.morse();
    let bd = m.boundary();
    let block_rank = |src: i64| {
        let (s, t) = (m.degree_range(src), m.degree_range(src + 1));
        rank(
            s.map(|c| {
                t.clone()
                    .enumerate()
                    .filter(|&(_, r)| bd.get(r, c))
                    .fold(0u128, |acc, (i, _)| acc | 1 << i)
            })
            .collect(),
        )
    };
    (0..=fc.dim_l() as i64)
        .map(|d| m.dim_in_degree(d) - block_rank(d) - if d > 0 { block_rank(d - 1) } else { 0 })
        .collect()
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let ns = [2, 3, 4, 5, 6];
    let cells = audin_grid(&ns, |n| (2..=2 * n).collect(), true).map_err(|e| e.to_string())?;
    let mut contradictions = 0;
    for v in &cells {
        let ring = Arc::new(GradedRing::exterior(v.n).unwrap());
        if v.nl >= 3 {
            ensure(v.verdict == Verdict::Contradiction, || format!("n={} NL={} not a contradiction", v.n, v.nl))?;
            let rs: Vec<usize> = v.certificate.iter().map(PageStep::r).collect();
            ensure(rs == (1..=v.nu).collect::<Vec<_>>(), || format!("n={} NL={} steps {rs:?}", v.n, v.nl))?;
            ensure(
                v.certificate.iter().all(|s| matches!(s, PageStep::Vanishing { .. })) && v.replay(&ring),
                || format!("n={} NL={} certificate does not replay", v.n, v.nl),
            )?;
            contradictions += 1;
        } else {
            let w = v.witness.as_ref().ok_or(format!("n={} NL=2 has no witness", v.n))?;
            ensure(v.verdict == Verdict::Consistent, || format!("n={} NL=2 verdict", v.n))?;
            ensure(w.values.iter().any(|g| g.value != "0"), || format!("n={} witness is zero", v.n))?;
            // Rebuild the witness and confirm it is a nonzero derivation.
            let vals: Vec<_> = w
                .values
                .iter()
                .map(|g| ring.element(&[g.value.as_str()]).unwrap_or_else(|| ring.zero_element()))
                .collect();
            let d = derivation_from_generator_values(&ring, -1, &vals).map_err(|e| e.to_string())?;
            ensure(!d.is_zero() && d.check_leibniz(), || format!("n={} witness invalid", v.n))?;
        }
        // The CLI must give the same verdict.
        let (code, json) = floer_json(&[
            "audin",
            "torus",
            "--n",
            &v.n.to_string(),
            "--maslov",
            &v.nl.to_string(),
            "--displaceable",
        ]);
        let parsed: AudinVerdict = serde_json::from_value(json).map_err(|e| e.to_string())?;
        let want = if v.verdict == Verdict::Contradiction { 0 } else { 1 };
        ensure(parsed == *v && code == want, || format!("CLI disagrees at n={} NL={}", v.n, v.nl))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("{} cells, {contradictions} contradictions, {:.2?}", cells.len(), elapsed))
}

fn criterion_2() -> Check {
    let mut checked = 0;
    for n in 2..=4 {
        let ring = Arc::new(GradedRing::exterior(n).unwrap());
        for shift in (-(n as i32) - 3..=-2).rev() {
            let all = enumerate_derivations(&ring, shift).map_err(|e| e.to_string())?;
            ensure(all.len() == 1 && all[0].is_zero(), || format!("n={n} shift={shift}: {} derivations", all.len()))?;
            let cert = vanishing_lemma(&ring, shift).map_err(|e| e.to_string())?;
            ensure(cert.replay(&ring), || format!("n={n} shift={shift}: certificate"))?;
            checked += 1;
        }
        let all = enumerate_derivations(&ring, -1).map_err(|e| e.to_string())?;
        ensure(all.len() == 1 << n, || format!("n={n}: {} shift -1 derivations", all.len()))?;
        let got: BTreeSet<BTreeSet<(u32, u32)>> = all.iter().map(|d| derivation_masks(&ring, &d.to_matrix())).collect();
        let want: BTreeSet<BTreeSet<(u32, u32)>> = (0..1u32 << n).map(|v| oracle_minus_one(n, v)).collect();
        ensure(got == want, || format!("n={n}: shift -1 derivations differ from the bitmask oracle"))?;
    }
    Ok(format!("{checked} steep shifts vanish; 4, 8, 16 derivations at shift -1"))
}

fn criterion_3() -> Check {
    let mut cases = 0;
    for (n, count) in [(2usize, 3usize), (3, 7)] {
        let r = maslov_two_disc_argument(n).map_err(|e| e.to_string())?;
        ensure(r.cases.len() == count, || format!("n={n}: {} cases", r.cases.len()))?;
        ensure(r.branches_agree == Some(true) && r.holds(), || format!("n={n}: branches disagree"))?;
        let top = (1u32 << n) - 1;
        for c in &r.cases {
            let values = c
                .values
                .iter()
                .enumerate()
                .filter(|(_, g)| g.value == "1")
                .fold(0u32, |a, (i, _)| a | 1 << i);
            // d(top) from the oracle: sum of x_{top - i} over i with d(x_i) = 1.
            let oracle: BTreeSet<u32> = oracle_minus_one(n, values)
                .into_iter()
                .filter(|&(_, s)| s == top)
                .map(|(t, _)| t)
                .collect();
            let evaluated: BTreeSet<u32> = c
                .evaluated_d_top
                .as_deref()
                .unwrap_or("0")
                .split('+')
                .filter(|s| *s != "0")
                .map(mask_of)
                .collect();
            ensure(!oracle.is_empty() && oracle == evaluated, || format!("n={n}: d(top) mismatch {c:?}"))?;
            ensure(c.witness.identity_holds && c.witness.d_top != "0" && c.agree, || format!("n={n}: witness {c:?}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} derivations, exhaustive and constructive agree"))
}

fn criterion_4() -> Check {
    let start = Instant::now();
    let entries = generate_corpus(42, 100).map_err(|e| e.to_string())?;
    let opts = SpectralOptions { paranoid: true };
    let mut max_dim = 0;
    for e in &entries {
        let fc = &e.complex;
        max_dim = max_dim.max(fc.len());
        ensure(fc.len() <= 12 && [2, 3, 4].contains(&fc.nl()), || format!("seed {} out of range", e.seed))?;
        let run = run_to_collapse(fc, &opts).map_err(|err| format!("seed {}: {err}", e.seed))?;
        let einf = run.e_inf_by_residue(fc.nl());
        let folded = fc.folded_homology().map_err(|err| err.to_string())?;
        let window = window_homology(fc, fc.nu() + 1);
        ensure(einf == folded && folded == window, || {
            format!("seed {}: E_inf {einf:?} folded {folded:?} window {window:?}", e.seed)
        })?;
        ensure(check_convergence(fc, &run).map_err(|e| e.to_string())?.converges(), || format!("seed {}", e.seed))?;
        ensure(run.dims_non_increasing(), || format!("seed {}: dims grow", e.seed))?;
        ensure(run.pages.iter().all(|p| p.checks.delta_squared_zero), || format!("seed {}: δ² ≠ 0", e.seed))?;
        ensure(run.checks_passed(), || format!("seed {}: page checks", e.seed))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("100 complexes, max dim {max_dim}, {elapsed:.2?}"))
}

fn criterion_5() -> Check {
    let entries = generate_corpus(42, 100).map_err(|e| e.to_string())?;
    for e in &entries {
        let fc = &e.complex;
        let run = run_to_collapse(fc, &SpectralOptions { paranoid: true }).map_err(|err| err.to_string())?;
        let betti = morse_betti(fc);
        ensure(run.pages[1].dims() == betti, || {
            format!("seed {}: V1 {:?} vs H(∂₀) {betti:?}", e.seed, run.pages[1].dims())
        })?;
        let rep = e1_identification(fc, &run.pages[1]);
        ensure(rep.holds(), || format!("seed {}: {rep:?}", e.seed))?;
    }
    Ok("dims and δ₁ match on 100 complexes".into())
}

fn criterion_6() -> Check {
    let ring = Arc::new(GradedRing::exterior(2).unwrap());
    let d = derivation_from_generator_values(&ring, -1, &[ring.unit_element(), ring.zero_element()])
        .map_err(|e| e.to_string())?;
    let fc = floer_core::floercomplex::perfect_ring_complex(&ring, 2, Some(&d)).map_err(|e| e.to_string())?;
    let run = run_to_collapse(&fc, &SpectralOptions { paranoid: true }).map_err(|e| e.to_string())?;
    ensure(run.pages[1].dims() == vec![1, 2, 1], || format!("V1 {:?}", run.pages[1].dims()))?;
    ensure(run.pages[2].dims() == vec![0, 0, 0], || format!("V2 {:?}", run.pages[2].dims()))?;
    ensure(fc.folded_homology().map_err(|e| e.to_string())? == vec![0, 0], || "folded HF".into())?;

    // Same complex from the fixture file through the CLI.
    let (code, json) = floer_json(&["ss", "run", data("torus_displaceable.json").to_str().unwrap()]);
    ensure(code == 0, || format!("ss run exit {code}"))?;
    let v1: Vec<u64> = (0..3).map(|m| json["pages"][1]["V"][m.to_string()].as_u64().unwrap_or(9)).collect();
    let v2: Vec<u64> = (0..3).map(|m| json["pages"][2]["V"][m.to_string()].as_u64().unwrap_or(9)).collect();
    ensure(v1 == [1, 2, 1] && v2 == [0, 0, 0], || format!("CLI pages {v1:?} {v2:?}"))?;
    ensure(json["e_inf"] == serde_json::json!([0, 0, 0]), || "CLI E_inf".into())?;
    Ok("V1 = (1,2,1), V2 = 0, HF = 0".into())
}

fn criterion_7() -> Check {
    let entries = product_corpus(7, 60).map_err(|e| e.to_string())?;
    let mut pairs = 0;
    let mut nonzero_d1 = 0;
    for e in &entries {
        let t = product_self_test(e);
        ensure(t.passed(), || format!("{t:?}"))?;
        ensure(t.e1_pairs == e.ring_data.dim().pow(2), || format!("seed {}: pairs", e.seed))?;
        pairs += t.e1_pairs;
        if !e.complex.op(1).entries().is_empty() {
            nonzero_d1 += 1;
        }
    }
    ensure(nonzero_d1 > 0, || "no complex with nonzero ∂₁".into())?;
    Ok(format!("{} complexes ({nonzero_d1} with ∂₁ ≠ 0), {pairs} E1 pairs", entries.len()))
}

fn criterion_8() -> Check {
    let mut cells = 0;
    for n in 2..=8 {
        for nl in 3..=n + 1 {
            let r = rpn_driver(n, nl).map_err(|e| e.to_string())?;
            ensure(r.hf_rank == n + 1 && r.intersection_bound == n + 1, || format!("n={n} NL={nl}: {r:?}"))?;
            ensure(r.holds() && r.nondisplaceable, || format!("n={n} NL={nl}: engine check"))?;
            cells += 1;
        }
        ensure(matches!(rpn_driver(n, 2), Err(TheoremError::HypothesisFailure(_))), || format!("n={n} NL=2"))?;
    }
    let r = floer(&["rp", "--n", "4", "--maslov", "2"]);
    ensure(r.code == 2 && r.stderr.contains("hypothesis"), || format!("CLI rp NL=2 exit {}", r.code))?;
    Ok(format!("{cells} cells with rank n+1; NL = 2 rejected"))
}

fn orthogonal(n: usize, rng: &mut ChaCha8Rng) -> CMat {
    let mut cols: Vec<Vec<f64>> = Vec::new();
    while cols.len() < n {
        let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        for c in &cols {
            let dot: f64 = v.iter().zip(c).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(c).for_each(|(a, b)| *a -= dot * b);
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-3 {
            cols.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    CMat::from_real(n, &(0..n * n).map(|i| cols[i % n][i / n]).collect::<Vec<_>>())
}

/// `t -> V diag(e^{iπ k_j t}) V^T`, index `Σ k_j`.
fn generator(ks: &[i64], samples: usize, v: &CMat) -> LagrangianLoop {
    let vt = v.adjoint();
    LagrangianLoop::from_fn(ks.len(), samples, |t| {
        let d = CMat::diagonal(&ks.iter().map(|&k| Complex64::from_polar(1.0, PI * k as f64 * t)).collect::<Vec<_>>());
        &(v * &d) * &vt
    })
    .unwrap()
}

fn criterion_9() -> Check {
    let idx = |lp: &LagrangianLoop| maslov_index(lp).map_err(|e| e.to_string());
    for samples in [64, 128, 256, 1000] {
        let m = idx(&LagrangianLoop::rotating(&[1], samples).unwrap())?;
        ensure(m.value == 1, || format!("rotating line at {samples} samples gives {}", m.value))?;
    }
    let (code, json) = floer_json(&["maslov", "index", data("rotating_256.json").to_str().unwrap()]);
    ensure(code == 0 && json["value"] == 1, || format!("CLI rotating line: exit {code}"))?;
    let (code, json) = floer_json(&["maslov", "index", data("constant_16.json").to_str().unwrap()]);
    ensure(code == 0 && json["value"] == 0, || "CLI constant loop".into())?;
    ensure(floer(&["maslov", "index", data("coarse_4.json").to_str().unwrap()]).code == 3, || "coarse loop".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..50 {
        let n = rng.gen_range(1..=4);
        let ka: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let kb: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let (va, vb) = (orthogonal(n, &mut rng), orthogonal(n, &mut rng));
        let a = generator(&ka, 128, &va);
        let b = generator(&kb, 128, &vb);
        let (ia, ib) = (idx(&a)?, idx(&b)?);
        ensure(ia.value == ka.iter().sum::<i64>(), || format!("case {case}: μ(a) = {}", ia.value))?;
        let ab = idx(&concatenate(&a, &b).map_err(|e| e.to_string())?)?;
        let ba = idx(&concatenate(&b, &a).map_err(|e| e.to_string())?)?;
        ensure(ab.value == ia.value + ib.value && ba.value == ab.value, || format!("case {case}: additivity"))?;
        ensure((ab.winding - ia.winding - ib.winding).abs() < WINDING_TOLERANCE, || format!("case {case}: winding"))?;
        let rev = idx(&a.reverse())?;
        ensure(rev.value == -ia.value && (rev.winding + ia.winding).abs() < WINDING_TOLERANCE, || {
            format!("case {case}: reversal")
        })?;
        let fine = idx(&generator(&ka, 256, &va))?;
        ensure(fine.value == ia.value && (fine.winding - ia.winding).abs() < WINDING_TOLERANCE, || {
            format!("case {case}: doubling")
        })?;
        let changes: Vec<CMat> = (0..a.len())
            .map(|_| loop {
                let g = CMat::from_real(n, &(0..n * n).map(|_| rng.gen_range(-2.0..2.0)).collect::<Vec<_>>());
                if g.det().norm() > 0.1 {
                    break g;
                }
            })
            .collect();
        let moved = idx(&a.reframe(&changes).map_err(|e| e.to_string())?)?;
        ensure(moved.value == ia.value && (moved.winding - ia.winding).abs() < WINDING_TOLERANCE, || {
            format!("case {case}: frame change")
        })?;
    }
    Ok("rotating line 1, constant 0, 50 random pairs".into())
}

fn golden_cases() -> Vec<(&'static str, Vec<String>, i32)> {
    let d = |n: &str| data(n).to_string_lossy().into_owned();
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let mut cases = vec![
        ("ring_torus_2", s(&["ring", "torus", "--n", "2"]), 0),
        ("ring_rp_3", s(&["ring", "rp", "--n", "3"]), 0),
        ("ring_torus_3_table", s(&["ring", "torus", "--n", "3", "--format", "table"]), 0),
        ("audin_torus_3_4", s(&["audin", "torus", "--n", "3", "--maslov", "4", "--displaceable"]), 0),
        ("audin_torus_2_2", s(&["audin", "torus", "--n", "2", "--maslov", "2", "--displaceable"]), 1),
        ("audin_torus_3_3", s(&["audin", "torus", "--n", "3", "--maslov", "3", "--displaceable"]), 0),
        ("audin_torus_5_6_table", s(&["audin", "torus", "--n", "5", "--maslov", "6", "--displaceable", "--format", "table"]), 0),
        ("audin_two_disc_3", s(&["audin", "two-disc", "--n", "3"]), 0),
        ("audin_two_disc_6_table", s(&["audin", "two-disc", "--n", "6", "--format", "table"]), 0),
        ("rp_5_3", s(&["rp", "--n", "5", "--maslov", "3"]), 0),
        ("rp_2_3_table", s(&["rp", "--n", "2", "--maslov", "3", "--format", "table"]), 0),
        ("derivations_torus_3", s(&["derivations", "enumerate", "torus", "--n", "3", "--shift", "-1"]), 0),
        ("derivations_torus_3_steep", s(&["derivations", "enumerate", "torus", "--n", "3", "--shift", "-3"]), 0),
        ("maslov_loop_2", s(&["maslov", "loop", "--k", "1,-1", "--samples", "8"]), 0),
        ("corpus_42", s(&["corpus", "--seed", "42", "--count", "100"]), 0),
        ("corpus_42_table", s(&["corpus", "--seed", "42", "--count", "100", "--format", "table"]), 0),
        ("corpus_empty", s(&["corpus", "--seed", "1", "--count", "0"]), 0),
        ("corpus_products", s(&["corpus", "--seed", "3", "--count", "20", "--products"]), 0),
    ];
    cases.push(("ss_torus", vec!["ss".into(), "run".into(), d("torus_displaceable.json")], 0));
    cases.push((
        "ss_torus_verbose",
        vec!["ss".into(), "run".into(), d("torus_displaceable.json"), "--verbose".into(), "--paranoid".into()],
        0,
    ));
    cases.push((
        "ss_circle_table",
        vec!["ss".into(), "run".into(), d("circle_morse.json"), "--format".into(), "table".into()],
        0,
    ));
    cases.push((
        "audin_ring_rp3",
        vec!["audin".into(), "ring".into(), d("rp3_ring.json"), "--maslov".into(), "3".into(), "--displaceable".into()],
        0,
    ));
    cases.push(("maslov_rotating", vec!["maslov".into(), "index".into(), d("rotating_256.json")], 0));
    cases.push(("maslov_constant", vec!["maslov".into(), "index".into(), d("constant_16.json")], 0));
    cases
}

fn criterion_10() -> Check {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let cases = golden_cases();
    for (name, args, code) in &cases {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let (a, b) = (floer(&argv), floer(&argv));
        ensure(a.code == *code && b.code == *code, || format!("{name}: exit {} (want {code}) {}", a.code, a.stderr))?;
        ensure(a.stdout == b.stdout, || format!("{name}: reruns differ"))?;
        let path = golden.join(format!("{name}.out"));
        if update {
            std::fs::create_dir_all(&golden).map_err(|e| e.to_string())?;
            std::fs::write(&path, &a.stdout).map_err(|e| e.to_string())?;
        }
        let want = std::fs::read(&path).map_err(|e| format!("{name}: {e}"))?;
        ensure(want == a.stdout, || format!("{name}: differs from {}", path.display()))?;
    }

    // Corpus files on disk are byte-identical across runs.
    let (x, y) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for dir in [&x, &y] {
        let r = floer(&["corpus", "--seed", "42", "--count", "25", "--out", dir.path().to_str().unwrap()]);
        ensure(r.code == 0, || format!("corpus --out exit {}", r.code))?;
    }
    for i in 0..25 {
        let f = format!("complex_{i:04}.json");
        let (p, q) = (std::fs::read(x.path().join(&f)), std::fs::read(y.path().join(&f)));
        ensure(matches!((&p, &q), (Ok(p), Ok(q)) if p == q), || format!("{f} differs"))?;
    }
    Ok(format!("{} commands match golden output", cases.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("audin grid", criterion_1),
        ("derivation oracle equivalence", criterion_2),
        ("top-class nonvanishing", criterion_3),
        ("spectral engine soundness", criterion_4),
        ("E1 identification", criterion_5),
        ("worked torus example", criterion_6),
        ("multiplicativity", criterion_7),
        ("projective space driver", criterion_8),
        ("Maslov index", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS  {:>2}  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}  {name}: {why}", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
