use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use floer_core::corpus::{generate_corpus, product_corpus, product_self_test, run_self_tests};
use floer_core::floercomplex::FloerComplex;
use floer_core::gradedalg::{enumerate_derivations, vanishing_lemma, GradedRing, RingJson};
use floer_core::maslov::{maslov_index, LagrangianLoop, MaslovError};
use floer_core::spectral::{
    check_convergence, dump_run, e1_identification, run_to_collapse, SpectralOptions,
};
use floer_core::theorems::{
    audin_general, audin_torus, maslov_two_disc_argument, rpn_driver, AudinVerdict, TheoremError, Verdict,
};

use crate::args::{AudinCommand, Cli, Command, DerivationsCommand, MaslovCommand, RingKind, SsCommand};
use crate::table::{list, Table};
use crate::{Failure, Report};

type Outcome = Result<Report, Failure>;

fn value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn build_ring(kind: RingKind, n: usize) -> Result<GradedRing, Failure> {
    match kind {
        RingKind::Torus => GradedRing::exterior(n),
        RingKind::Rp => GradedRing::truncated_poly(n),
    }
    .map_err(Failure::input)
}

fn theorem_failure(e: TheoremError) -> Failure {
    Failure::input(e)
}

pub fn run(cli: &Cli) -> Outcome {
    let opts = SpectralOptions {
        paranoid: cli.common.paranoid,
    };
    match &cli.command {
        Command::Ring { kind, n } => ring(*kind, *n),
        Command::Ss {
            command: SsCommand::Run { file, verbose },
        } => ss_run(file, *verbose, &opts),
        Command::Audin { command } => match command {
            AudinCommand::Torus { n, nl, displaceable } => {
                audin(audin_torus(*n, *nl, *displaceable).map_err(theorem_failure)?)
            }
            AudinCommand::Ring { file, nl, displaceable } => {
                let json: RingJson = serde_json::from_str(&read(file)?).map_err(Failure::input)?;
                let ring = Arc::new(GradedRing::from_json(json).map_err(Failure::input)?);
                audin(audin_general(&ring, *nl, *displaceable).map_err(theorem_failure)?)
            }
            AudinCommand::TwoDisc { n } => two_disc(*n),
        },
        Command::Rp { n, nl } => rp(*n, *nl),
        Command::Derivations {
            command: DerivationsCommand::Enumerate { kind, n, shift },
        } => derivations(*kind, *n, *shift),
        Command::Maslov { command } => match command {
            MaslovCommand::Index { file } => maslov(file),
            MaslovCommand::Loop { k, samples, out } => maslov_loop(k, *samples, out.as_deref()),
        },
        Command::Corpus {
            seed,
            count,
            out,
            products,
        } => corpus(*seed, *count, out.as_deref(), *products, &opts),
    }
}

fn ring(kind: RingKind, n: usize) -> Outcome {
    let ring = build_ring(kind, n)?;
    let mut t = Table::new(["index", "name", "degree"]);
    for (i, b) in ring.basis().iter().enumerate() {
        t.row([i.to_string(), b.name.clone(), b.degree.to_string()]);
    }
    Ok(Report {
        json: value(&ring.to_json()),
        table: t.render(),
        notes: Vec::new(),
        code: 0,
    })
}

fn ss_run(file: &Path, verbose: bool, opts: &SpectralOptions) -> Outcome {
    let fc = FloerComplex::from_json_str(&read(file)?).map_err(Failure::input)?;
    let run = run_to_collapse(&fc, opts).map_err(Failure::input)?;
    let conv = check_convergence(&fc, &run).map_err(Failure::input)?;
    let e1 = e1_identification(&fc, &run.pages[1]);
    let ok = conv.converges() && run.checks_passed() && e1.holds();
    let pages = dump_run(&fc, &run, verbose);

    let mut t = Table::new(["r", "V", "delta rank", "collapsed"]);
    for (p, d) in run.pages.iter().zip(&pages) {
        t.row([p.r.to_string(), list(&p.dims()), list(&p.delta_ranks()), d.collapsed.to_string()]);
    }
    let mut table = t.render();
    let mut c = Table::new(["residue", "E_inf", "folded", "window"]);
    for r in &conv.residues {
        c.row([r.residue, r.e_inf, r.folded, r.window]);
    }
    table += "\n";
    table += &c.render();
    table += &format!("\nE_inf {}  collapsed at {}  converges {}\n", list(&run.e_inf), run.collapsed_at, ok);

    Ok(Report {
        json: json!({
            "NL": fc.nl(),
            "nu": fc.nu(),
            "pages": value(&pages),
            "e_inf": run.e_inf,
            "collapsed_at": run.collapsed_at,
            "checks_passed": run.checks_passed(),
            "convergence": value(&conv),
            "e1_identification": value(&e1),
            "converges": ok,
        }),
        table,
        notes: Vec::new(),
        code: if ok { 0 } else { 1 },
    })
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Contradiction => "contradiction",
        Verdict::Consistent => "consistent",
    }
}

fn audin(v: AudinVerdict) -> Outcome {
    let mut t = Table::new(["n", "NL", "nu", "forced", "E_inf", "displaceable", "verdict", "steps", "witness"]);
    let witness = v.witness.as_ref().map_or("-".to_string(), |w| {
        let vals: Vec<String> = w.values.iter().map(|g| format!("{}->{}", g.generator, g.value)).collect();
        vals.join(" ")
    });
    t.row([
        v.n.to_string(),
        v.nl.to_string(),
        v.nu.to_string(),
        v.pages_forced_equal.to_string(),
        v.einf_dims.as_deref().map_or("-".to_string(), list),
        v.hf_assumption.to_string(),
        verdict_name(v.verdict).to_string(),
        v.certificate.len().to_string(),
        witness,
    ]);
    Ok(Report {
        json: value(&v),
        table: t.render(),
        notes: v.warnings.clone(),
        code: match v.verdict {
            Verdict::Contradiction => 0,
            Verdict::Consistent => 1,
        },
    })
}

fn two_disc(n: usize) -> Outcome {
    let r = maslov_two_disc_argument(n).map_err(theorem_failure)?;
    let mut t = Table::new(["derivation", "d(top)", "witness basis", "identity", "agree"]);
    for c in &r.cases {
        let vals: Vec<String> = c.values.iter().map(|g| format!("{}->{}", g.generator, g.value)).collect();
        t.row([
            vals.join(" "),
            c.evaluated_d_top.clone().unwrap_or_else(|| c.witness.d_top.clone()),
            c.witness.basis.join(","),
            c.witness.identity_holds.to_string(),
            c.agree.to_string(),
        ]);
    }
    Ok(Report {
        json: value(&r),
        table: t.render(),
        notes: Vec::new(),
        code: if r.holds() { 0 } else { 1 },
    })
}

fn rp(n: usize, nl: usize) -> Outcome {
    let r = rpn_driver(n, nl).map_err(theorem_failure)?;
    let mut t = Table::new(["n", "NL", "nu", "HF by residue", "HF rank", "bound", "nondisplaceable"]);
    t.row([
        r.n.to_string(),
        r.nl.to_string(),
        r.nu.to_string(),
        list(&r.hf_by_residue),
        r.hf_rank.to_string(),
        r.intersection_bound.to_string(),
        r.nondisplaceable.to_string(),
    ]);
    Ok(Report {
        json: value(&r),
        table: t.render(),
        notes: Vec::new(),
        code: if r.holds() { 0 } else { 1 },
    })
}

fn derivations(kind: RingKind, n: usize, shift: i32) -> Outcome {
    let ring = Arc::new(build_ring(kind, n)?);
    let all = enumerate_derivations(&ring, shift).map_err(Failure::input)?;
    let gens: Vec<&str> = ring.generators().into_iter().map(|g| ring.name(g)).collect();
    let rows: Vec<Vec<String>> = all
        .iter()
        .map(|d| d.generator_values().iter().map(|v| d.format_element(v)).collect())
        .collect();
    let certificate = vanishing_lemma(&ring, shift).ok();
    let mut t = Table::new(gens.iter().copied());
    for r in &rows {
        t.row(r.iter());
    }
    let nonzero = all.iter().filter(|d| !d.is_zero()).count();
    Ok(Report {
        json: json!({
            "shift": shift,
            "generators": gens,
            "count": all.len(),
            "nonzero": nonzero,
            "derivations": rows,
            "vanishing_certificate": certificate.as_ref().map(value),
        }),
        table: t.render() + &format!("\n{} derivations, {} nonzero\n", all.len(), nonzero),
        notes: Vec::new(),
        code: 0,
    })
}

fn maslov(file: &Path) -> Outcome {
    let lp = LagrangianLoop::from_json_str(&read(file)?).map_err(Failure::input)?;
    let m = maslov_index(&lp).map_err(|e| match e {
        MaslovError::InsufficientSampling { .. } | MaslovError::NonInteger { .. } => Failure {
            message: e.to_string(),
            code: 3,
        },
        other => Failure::input(other),
    })?;
    Ok(Report {
        json: value(&m),
        table: format!("{}\nworst step {:.6} rad over {} steps\n", m.value, m.min_gap, m.steps),
        notes: Vec::new(),
        code: 0,
    })
}

fn maslov_loop(k: &[i64], samples: usize, out: Option<&Path>) -> Outcome {
    let lp = LagrangianLoop::rotating(k, samples).map_err(Failure::input)?;
    let json = value(&lp.to_json());
    if let Some(path) = out {
        write(path, &(serde_json::to_string(&json).expect("json") + "\n"))?;
        return Ok(Report {
            json: json!({ "path": path.display().to_string(), "n": k.len(), "samples": samples }),
            table: format!("wrote {}\n", path.display()),
            notes: Vec::new(),
            code: 0,
        });
    }
    Ok(Report {
        table: serde_json::to_string(&json).expect("json") + "\n",
        json,
        notes: Vec::new(),
        code: 0,
    })
}

fn corpus(seed: u64, count: usize, out: Option<&Path>, products: bool, opts: &SpectralOptions) -> Outcome {
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
    }
    let file = |i: usize| out.map(|d| d.join(format!("complex_{i:04}.json")));
    let (json, table, failed) = if products {
        let entries = product_corpus(seed, count).map_err(Failure::input)?;
        let results: Vec<_> = entries.iter().map(product_self_test).collect();
        for (i, e) in entries.iter().enumerate() {
            if let Some(p) = file(i) {
                write(&p, &(e.complex.to_json_string() + "\n"))?;
            }
        }
        let failed: Vec<u64> = results.iter().filter(|t| !t.passed()).map(|t| t.seed).collect();
        let mut t = Table::new(["seed", "ring", "NL", "leibniz", "E1 cup mismatches", "passed"]);
        for r in &results {
            t.row([
                r.seed.to_string(),
                r.ring.clone(),
                r.nl.to_string(),
                r.product_leibniz.to_string(),
                r.e1_cup_mismatches.to_string(),
                r.passed().to_string(),
            ]);
        }
        let json = json!({
            "seed": seed,
            "count": results.len(),
            "passed": results.len() - failed.len(),
            "failed_seeds": failed,
            "results": value(&results),
        });
        (json, t.render(), failed)
    } else {
        let entries = generate_corpus(seed, count).map_err(Failure::input)?;
        for (i, e) in entries.iter().enumerate() {
            if let Some(p) = file(i) {
                write(&p, &(e.complex.to_json_string() + "\n"))?;
            }
        }
        let summary = run_self_tests(seed, &entries, opts);
        let mut t = Table::new(["seed", "NL", "dims", "pages", "converges", "E1", "passed"]);
        for r in &summary.results {
            t.row([
                r.seed.to_string(),
                r.nl.to_string(),
                list(&r.dims),
                r.pages.to_string(),
                r.converges.to_string(),
                r.e1_identified.to_string(),
                r.passed().to_string(),
            ]);
        }
        (value(&summary), t.render(), summary.failed_seeds.clone())
    };
    let table = table + &format!("\n{}/{} passed\n", count - failed.len(), count);
    Ok(Report {
        json,
        table,
        notes: failed.iter().map(|s| format!("self-test failed for seed {s}")).collect(),
        code: if failed.is_empty() { 0 } else { 1 },
    })
}
