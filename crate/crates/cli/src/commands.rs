use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use rayleigh_kit::catalog::{enumerate_simple_rank3, geometry_file};
use rayleigh_kit::certificate::{certify, CertificateKind, CertificateReport};
use rayleigh_kit::matroid::io::to_json;
use rayleigh_kit::matroid::{Elem, Matroid};
use rayleigh_kit::poly::format_rational;
use rayleigh_kit::rayleigh::{rayleigh_difference, PairContext};
use rayleigh_kit::sampling::{correlation_sweep, search_negative_delta};
use rayleigh_kit::tables::{render, reproduce};
use rayleigh_kit::SCHEMA;

use crate::input::{pair_text, resolve, resolve_all, select_pairs, set_text, Input};
use crate::{write_file, Cli, Failure, Format, Outcome};

fn lib_error(context: &str, e: rayleigh_kit::Error) -> Failure {
    Failure::usage(format!("{context}: {e}"))
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

/// Writes `<command>.<ext>` into `--out` when given.
fn finish(cli: &Cli, command: &str, outcome: Outcome) -> Result<Outcome, Failure> {
    if let Some(dir) = &cli.out {
        write_file(dir, &format!("{command}.{}", cli.format.extension()), &outcome.report)?;
    }
    Ok(outcome)
}

fn kind_name(kind: CertificateKind) -> &'static str {
    match kind {
        CertificateKind::RankAtMostTwo => "rank-at-most-two",
        CertificateKind::LoopInPair => "loop-in-pair",
        CertificateKind::ParallelProduct => "parallel-product",
        CertificateKind::Ansatz => "ansatz",
    }
}

fn merged_text(m: &Matroid, r: &CertificateReport) -> String {
    if r.parallel_classes.is_empty() {
        return "-".to_string();
    }
    r.parallel_classes
        .iter()
        .map(|&(a, rest)| format!("{}:{}", m.label(a), set_text(m, rest)))
        .collect::<Vec<_>>()
        .join(";")
}

#[derive(Serialize)]
struct PairVerdict {
    matroid: String,
    pair: [String; 2],
    status: &'static str,
    kind: Option<&'static str>,
    deleted: Vec<String>,
    merged: String,
    residual_terms: Option<usize>,
    samples: Option<usize>,
    point: Option<String>,
    #[serde(skip)]
    line: String,
    #[serde(skip)]
    ok: bool,
}

fn verify_pair(cli: &Cli, input: &Input, e: Elem, f: Elem, seed: u64) -> Result<PairVerdict, Failure> {
    let m = &input.matroid;
    let head = format!("{} {}", input.name, pair_text(m, e, f));
    let mut v = PairVerdict {
        matroid: input.name.clone(),
        pair: [m.label(e).to_string(), m.label(f).to_string()],
        status: "verified",
        kind: None,
        deleted: Vec::new(),
        merged: "-".to_string(),
        residual_terms: None,
        samples: None,
        point: None,
        line: String::new(),
        ok: true,
    };
    if m.rank() > 3 {
        v.samples = Some(cli.samples);
        match search_negative_delta(m, e, f, cli.samples, seed).map_err(|err| lib_error(&head, err))? {
            None => {
                v.status = "unverified (rank > 3)";
                v.line = format!("{head}: unverified (rank > 3): no negative point found in {} samples", cli.samples);
            }
            Some(point) => {
                let text = point.to_text(m.labels());
                v.status = "VIOLATION";
                v.line = format!("{head}: VIOLATION at y = {text}");
                v.point = Some(text);
                v.ok = false;
            }
        }
        return Ok(v);
    }
    let r = certify(m, e, f).map_err(|err| lib_error(&head, err))?;
    v.kind = Some(kind_name(r.kind));
    v.ok = r.verdict;
    v.status = if r.verdict { "verified" } else { "FAILED" };
    v.deleted = r.reduction_chain.iter().map(|&x| m.label(x).to_string()).collect();
    v.merged = merged_text(m, &r);
    v.line = format!("{head}: {} [{}]", v.status, kind_name(r.kind));
    if r.kind == CertificateKind::Ansatz {
        v.residual_terms = Some(r.residual.len());
        let deleted = if v.deleted.is_empty() { "-".to_string() } else { v.deleted.join(",") };
        write!(v.line, " deleted={deleted} merged={} residual_terms={}", v.merged, r.residual.len()).unwrap();
    }
    Ok(v)
}

pub fn verify(cli: &Cli, args: &[String]) -> Result<Outcome, Failure> {
    let inputs = resolve_all(args)?;
    let mut jobs = Vec::new();
    for (i, input) in inputs.iter().enumerate() {
        for pair in select_pairs(&input.matroid, &input.name, &cli.pairs)? {
            jobs.push((i, pair));
        }
    }
    let results: Vec<PairVerdict> = jobs
        .par_iter()
        .enumerate()
        .map(|(k, &(i, (e, f)))| verify_pair(cli, &inputs[i], e, f, cli.seed.wrapping_add(k as u64)))
        .collect::<Result<_, _>>()?;

    let verified = results.iter().filter(|r| r.status == "verified").count();
    let failed = results.iter().filter(|r| !r.ok).count();
    let unverified = results.len() - verified - failed;
    let ok = failed == 0;
    let report = match cli.format {
        Format::Text => {
            let mut s = String::new();
            for r in &results {
                writeln!(s, "{}", r.line).unwrap();
            }
            writeln!(s, "{} pairs: {verified} verified, {failed} failed, {unverified} unverified", results.len())
                .unwrap();
            s
        }
        Format::Json => pretty(&json!({
            "schema": SCHEMA,
            "results": results,
            "verified": verified,
            "failed": failed,
            "unverified": unverified,
        })),
    };
    finish(cli, "verify", Outcome { report, ok })
}

pub fn delta(cli: &Cli, arg: &str, positional: &[String]) -> Result<Outcome, Failure> {
    let mut pairs = cli.pairs.clone();
    if !positional.is_empty() {
        if !pairs.is_empty() {
            return Err(Failure::usage("give the pair positionally or with --pairs, not both"));
        }
        pairs.push(positional.join(","));
    }
    let mut rows = Vec::new();
    for input in resolve(arg)? {
        let m = &input.matroid;
        for (e, f) in select_pairs(m, &input.name, &pairs)? {
            let ctx = PairContext::new(m, e, f).map_err(|err| lib_error(&input.name, err))?;
            rows.push((input.name.clone(), m.label(e).to_string(), m.label(f).to_string(), rayleigh_difference(&ctx).to_text(m.labels())));
        }
    }
    let report = match cli.format {
        Format::Text if rows.len() == 1 => format!("{}\n", rows[0].3),
        Format::Text => rows.iter().map(|r| format!("{} {{{},{}}}: {}\n", r.0, r.1, r.2, r.3)).collect(),
        Format::Json => pretty(&json!({
            "schema": SCHEMA,
            "deltas": rows
                .iter()
                .map(|r| json!({"matroid": r.0, "pair": [r.1, r.2], "delta": r.3}))
                .collect::<Vec<_>>(),
        })),
    };
    finish(cli, "delta", Outcome { report, ok: true })
}

fn certificate_text(name: &str, m: &Matroid, r: &CertificateReport) -> String {
    let labels = m.labels();
    let mut s = String::new();
    writeln!(s, "{name} {}", pair_text(m, r.e, r.f)).unwrap();
    writeln!(s, "  kind: {}", kind_name(r.kind)).unwrap();
    writeln!(s, "  loops removed: {}", set_text(m, r.loops_removed)).unwrap();
    writeln!(s, "  merged parallel classes: {}", merged_text(m, r)).unwrap();
    let chain: Vec<&str> = r.reduction_chain.iter().map(|&x| m.label(x)).collect();
    writeln!(s, "  deleted: {}", if chain.is_empty() { "-".to_string() } else { chain.join(",") }).unwrap();
    writeln!(s, "  delta: {}", r.delta.to_text(labels)).unwrap();
    writeln!(s, "  P: {}", r.ansatz.to_text(labels)).unwrap();
    if !r.square_terms.is_empty() {
        writeln!(s, "  P = 1/4 * sum of squares of:").unwrap();
        for (a, g) in &r.square_terms {
            writeln!(s, "    a={}: {}", m.label(*a), g.to_text(labels)).unwrap();
        }
    }
    writeln!(s, "  residual ({} terms): {}", r.residual.len(), r.residual.to_text(labels)).unwrap();
    if let Some(d) = r.unreduced_dominance {
        writeln!(s, "  dominance before reduction: {d}").unwrap();
    }
    writeln!(s, "  verdict: {}", r.verdict).unwrap();
    s
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '_' || c == '-' { c } else { '_' })
        .collect()
}

pub fn certificate(cli: &Cli, arg: &str) -> Result<Outcome, Failure> {
    let inputs = resolve(arg)?;
    let mut jobs = Vec::new();
    for (i, input) in inputs.iter().enumerate() {
        for pair in select_pairs(&input.matroid, &input.name, &cli.pairs)? {
            jobs.push((i, pair));
        }
    }
    let reports: Vec<CertificateReport> = jobs
        .par_iter()
        .map(|&(i, (e, f))| certify(&inputs[i].matroid, e, f).map_err(|err| lib_error(&inputs[i].name, err)))
        .collect::<Result<_, _>>()?;
    let ok = reports.iter().all(|r| r.verdict);

    let mut texts = Vec::new();
    let mut docs = Vec::new();
    for (&(i, _), r) in jobs.iter().zip(&reports) {
        let input = &inputs[i];
        texts.push(certificate_text(&input.name, &input.matroid, r));
        let mut doc = serde_json::to_value(r.to_json(&input.matroid)).expect("certificate serializes");
        doc["matroid"] = json!(input.name);
        docs.push(doc);
    }
    let report = match cli.format {
        Format::Text => texts.join("\n"),
        Format::Json => pretty(&json!({ "schema": SCHEMA, "certificates": docs })),
    };
    if let Some(dir) = &cli.out {
        for (k, (&(i, (e, f)), text)) in jobs.iter().zip(&texts).enumerate() {
            let m = &inputs[i].matroid;
            let stem = file_stem(&format!("{}_{}_{}", inputs[i].name, m.label(e), m.label(f)));
            match cli.format {
                Format::Text => write_file(dir, &format!("{stem}.txt"), text)?,
                Format::Json => write_file(dir, &format!("{stem}.json"), &pretty(&docs[k]))?,
            }
        }
    }
    Ok(Outcome { report, ok })
}

pub fn tables(cli: &Cli, max_ambient: usize) -> Result<Outcome, Failure> {
    if !(4..=8).contains(&max_ambient) {
        return Err(Failure::usage("--max-ambient must be between 4 and 8"));
    }
    let results = reproduce(max_ambient).map_err(|e| lib_error("tables", e))?;
    let mismatches = results.iter().flat_map(|t| &t.rows).filter(|r| !r.matches()).count();
    let report = match cli.format {
        Format::Text => {
            let mut s = format!("P observed over simple rank-3 matroids on at most {max_ambient} points\n\n");
            s.push_str(&render(&results));
            if mismatches == 0 {
                s.push_str("all rows MATCH\n");
            } else {
                writeln!(s, "{mismatches} rows MISMATCH").unwrap();
            }
            s
        }
        Format::Json => {
            let tables: Vec<_> = results
                .iter()
                .map(|t| {
                    let rows: Vec<_> = t
                        .rows
                        .iter()
                        .map(|r| {
                            json!({
                                "row": r.row.label(),
                                "delta": [format_rational(&r.positive), format_rational(&r.negative)],
                                "expected_delta": [r.row.positive, r.row.negative],
                                "ansatz_observed": r.observed.iter().map(format_rational).collect::<Vec<_>>(),
                                "ansatz_permitted": r.row.permitted().iter().map(format_rational).collect::<Vec<_>>(),
                                "embeddings": r.embeddings,
                                "note": r.row.note.map(String::from),
                                "status": if r.matches() { "MATCH" } else { "MISMATCH" },
                            })
                        })
                        .collect();
                    json!({ "shape": t.kind.name(), "rows": rows })
                })
                .collect();
            pretty(&json!({ "schema": SCHEMA, "max_ambient": max_ambient, "tables": tables }))
        }
    };
    finish(cli, "tables", Outcome { report, ok: mismatches == 0 })
}

pub fn enumerate(cli: &Cli, n: usize) -> Result<Outcome, Failure> {
    let result = enumerate_simple_rank3(n).map_err(|e| lib_error("enumerate", e))?;
    let files = result
        .classes
        .iter()
        .enumerate()
        .map(|(i, m)| geometry_file(m, &format!("rank3:{n}#{}", i + 1)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| lib_error("enumerate", e))?;
    if let Some(dir) = &cli.out {
        for (i, f) in files.iter().enumerate() {
            write_file(dir, &format!("rank3_n{n}_{:03}.json", i + 1), &to_json(f))?;
        }
    }
    let report = match cli.format {
        Format::Text => {
            let mut s = format!("n={n}: {} classes\n", result.count());
            for (i, (m, f)) in result.classes.iter().zip(&files).enumerate() {
                let lines: Vec<String> = f.lines.as_ref().map_or(Vec::new(), |ls| ls.iter().map(|l| format!("{{{}}}", l.join(","))).collect());
                let lines = if lines.is_empty() { "-".to_string() } else { lines.join(" ") };
                writeln!(s, "rank3:{n}#{:<3} bases={:<3} lines={lines}", i + 1, m.bases().len()).unwrap();
            }
            s
        }
        Format::Json => pretty(&json!({ "schema": SCHEMA, "n": n, "count": result.count(), "classes": files })),
    };
    Ok(Outcome { report, ok: true })
}

pub fn sample(cli: &Cli, args: &[String]) -> Result<Outcome, Failure> {
    let inputs = resolve_all(args)?;
    let selected = inputs
        .iter()
        .map(|i| select_pairs(&i.matroid, &i.name, &cli.pairs))
        .collect::<Result<Vec<_>, _>>()?;
    let sweeps = inputs
        .par_iter()
        .zip(&selected)
        .map(|(input, pairs)| {
            correlation_sweep(&input.matroid, pairs, cli.samples, cli.seed).map_err(|e| lib_error(&input.name, e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let ok = sweeps.iter().all(|s| s.all_passed());
    let report = match cli.format {
        Format::Text => {
            let mut s = String::new();
            for (input, r) in inputs.iter().zip(&sweeps) {
                writeln!(
                    s,
                    "{}: {}/{} checks passed ({:.2}%) over {} samples, seed {}, {} exact cross-checks, {} mismatches",
                    input.name,
                    r.passed,
                    r.checks,
                    100.0 * r.pass_rate(),
                    r.samples,
                    cli.seed,
                    r.cross_checks,
                    r.cross_check_mismatches
                )
                .unwrap();
                for fail in &r.failures {
                    let m = &input.matroid;
                    writeln!(s, "  violation {} at y = {}", pair_text(m, fail.e, fail.f), fail.point.to_text(m.labels()))
                        .unwrap();
                }
            }
            s
        }
        Format::Json => {
            let docs: Vec<_> = inputs
                .iter()
                .zip(&sweeps)
                .map(|(input, r)| {
                    let m = &input.matroid;
                    json!({
                        "matroid": input.name,
                        "samples": r.samples,
                        "checks": r.checks,
                        "passed": r.passed,
                        "cross_checks": r.cross_checks,
                        "cross_check_mismatches": r.cross_check_mismatches,
                        "failures": r.failures.iter().map(|f| json!({
                            "pair": [m.label(f.e), m.label(f.f)],
                            "point": f.point.to_text(m.labels()),
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            pretty(&json!({ "schema": SCHEMA, "seed": cli.seed, "results": docs }))
        }
    };
    finish(cli, "sample", Outcome { report, ok })
}
