use std::fmt;
use std::io::{Read, Write};

use dunkl_core::acceptance::{run_criteria, Options};
use dunkl_core::algebra::make_algebra_str;
use dunkl_core::document::{parse_document, parse_poly, InputDocument};
use dunkl_core::index_set::IndexSet;
use dunkl_core::operators::{apply_named, Multiplicities, OperatorName};
use dunkl_core::partition::{census, enumerate_partitions, Partition};
use dunkl_core::pointcheck::{
    block_point, check_difference_at, dbar_j, rational_sphere_point, reconstruct_p_slice_at,
    restrict_to_slice,
};
use dunkl_core::samples::Sampler;
use dunkl_core::spaces::{
    default_multiplicities, is_admissible, is_slice_poly, is_slice_regular_poly, membership_a,
    membership_p, set_multiplicities, slice_regular_coefficients, PartitionSpec, Verdict,
};
use dunkl_core::spectral::{build_reflection_matrix, verify_perron};
use serde_json::{json, Value};

use crate::{
    ApplyArgs, ClassifyArgs, EnumerateArgs, Input, PerronArgs, PointcheckArgs, SelftestArgs,
};

const SCHEMA_VERSION: u32 = 1;

/// Exit status of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success = 0,
    /// Some verdict was negative (not slice, not a member, a check failed on user input).
    Negative = 1,
    /// A check that must hold by construction failed.
    Violation = 3,
}

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) | CliError::Internal(m) => f.write_str(m),
        }
    }
}

fn parse_err(e: impl fmt::Display) -> CliError {
    CliError::Parse(e.to_string())
}

fn internal(e: impl fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

/// JSON to stdout with the summary on stderr, or just the summary on stdout.
/// Write errors (a closed pipe, typically) are ignored.
fn emit(json_mode: bool, report: Value, summary: &str) {
    let text = if json_mode {
        let _ = std::io::stderr().write_all(summary.as_bytes());
        serde_json::to_string_pretty(&report).expect("JSON values serialize") + "\n"
    } else {
        summary.to_string()
    };
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn load(input: &Input) -> Result<InputDocument, CliError> {
    let mut doc = match &input.file {
        Some(path) => {
            let text = if path.as_os_str() == "-" {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map_err(parse_err)?;
                s
            } else {
                std::fs::read_to_string(path)
                    .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?
            };
            parse_document(&text)
                .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?
        }
        None => {
            let spec = input.algebra.as_deref().ok_or_else(|| {
                CliError::Parse("give an input document, or --algebra with --poly".into())
            })?;
            let (_, frame) = make_algebra_str(spec).map_err(parse_err)?;
            InputDocument {
                algebra: spec.parse().map_err(parse_err)?,
                frame,
                k: None,
                partition: None,
                polys: Vec::new(),
            }
        }
    };
    for (i, text) in input.polys.iter().enumerate() {
        let f = parse_poly(&doc.frame, text)
            .map_err(|e| CliError::Parse(format!("--poly {}: {e}", i + 1)))?;
        doc.polys.push((format!("p{}", i + 1), f));
    }
    if doc.polys.is_empty() {
        return Err(CliError::Parse("no polynomials given".into()));
    }
    if let Some(k) = &input.k {
        doc.k = Some(parse_k(k, doc.frame.n())?);
    }
    Ok(doc)
}

fn parse_k(text: &str, n: usize) -> Result<Multiplicities, CliError> {
    let k: Multiplicities = text.parse().map_err(parse_err)?;
    if k.n() != n {
        return Err(CliError::Parse(format!(
            "expected {n} multiplicities, got {}",
            k.n()
        )));
    }
    Ok(k)
}

fn parse_partition(text: &str, n: usize) -> Result<Partition, CliError> {
    let p: Partition = text.parse().map_err(parse_err)?;
    if p.n() != n {
        return Err(CliError::Parse(format!(
            "partition {p} is not a partition of [{n}]"
        )));
    }
    Ok(p)
}

fn parse_set(text: &str, n: usize) -> Result<IndexSet, CliError> {
    let a: IndexSet = text
        .trim()
        .trim_start_matches(['{', '['])
        .trim_end_matches(['}', ']'])
        .parse()
        .map_err(|_| CliError::Parse(format!("invalid index set `{text}`")))?;
    if a.is_empty() || !a.within(n) {
        return Err(CliError::Parse(format!(
            "index set `{text}` must be a nonempty subset of [{n}]"
        )));
    }
    Ok(a)
}

fn verdict_json(v: &Verdict) -> Value {
    json!({
        "space": v.space,
        "member": v.member,
        "witnesses": v.witnesses.iter().map(|w| json!({
            "operator": w.operator,
            "output": w.output.to_string(),
        })).collect::<Vec<_>>(),
    })
}

fn verdict_line(v: &Verdict) -> String {
    if v.member {
        format!("  {}: member\n", v.space)
    } else {
        let w = v.witnesses.first().map_or(String::new(), |w| {
            format!(" ({} = {})", w.operator, w.output)
        });
        format!("  {}: not a member{w}\n", v.space)
    }
}

/// `{A}` plus singletons, used to check a user override against one index set.
fn set_partition(n: usize, a: IndexSet) -> Partition {
    let mut blocks = vec![a];
    blocks.extend(
        IndexSet::full(n)
            .difference(a)
            .iter()
            .map(IndexSet::singleton),
    );
    Partition::new(n, blocks).expect("A and the singletons of its complement partition [n]")
}

pub fn classify(args: ClassifyArgs) -> Result<Outcome, CliError> {
    let doc = load(&args.input)?;
    let n = doc.frame.n();
    let mut partitions: Vec<Partition> = args
        .partitions
        .iter()
        .map(|p| parse_partition(p, n))
        .collect::<Result<_, _>>()?;
    let sets: Vec<IndexSet> = args
        .sets
        .iter()
        .map(|a| parse_set(a, n))
        .collect::<Result<_, _>>()?;
    if args.all_partitions {
        partitions = enumerate_partitions(n).collect();
    } else if partitions.is_empty() && sets.is_empty() {
        partitions.extend(doc.partition.clone());
    }
    let mut specs = Vec::new();
    for p in &partitions {
        let spec = match &doc.k {
            Some(k) => {
                let spec = PartitionSpec::new(p.clone(), k.clone()).map_err(parse_err)?;
                spec.require_admissible().map_err(parse_err)?;
                spec
            }
            None => PartitionSpec::with_default(p.clone()),
        };
        specs.push(spec);
    }
    let mut set_ks = Vec::new();
    for &a in &sets {
        let k = match &doc.k {
            Some(k) => {
                // only the entries on A enter S_A, so only those are checked
                let masked = Multiplicities::new(
                    (1..=n)
                        .map(|i| {
                            if a.contains(i) {
                                k.get(i).clone()
                            } else {
                                Default::default()
                            }
                        })
                        .collect(),
                );
                if !is_admissible(&set_partition(n, a), &masked) {
                    return Err(CliError::Parse(format!(
                        "multiplicities {k} are not admissible on {a}"
                    )));
                }
                k.clone()
            }
            None => set_multiplicities(n, a),
        };
        set_ks.push((a, k));
    }

    let mut negative = false;
    let mut results = Vec::new();
    let mut summary = String::new();
    for (name, f) in &doc.polys {
        let slice = is_slice_poly(f).map_err(internal)?;
        let regular = is_slice_regular_poly(f);
        let coefficients = if regular.member {
            let cs = slice_regular_coefficients(f).map_err(internal)?;
            Some(
                cs.iter()
                    .map(|c| doc.frame.algebra().format_element(c))
                    .collect::<Vec<_>>(),
            )
        } else {
            None
        };
        negative |= !slice.member || !regular.member;
        summary.push_str(&format!(
            "{name}: slice {}, slice-regular {}\n",
            yes_no(slice.member),
            yes_no(regular.member)
        ));
        let mut memberships = Vec::new();
        for spec in &specs {
            let v = membership_p(spec, f).map_err(internal)?;
            negative |= !v.member;
            summary.push_str(&verdict_line(&v));
            let mut entry = verdict_json(&v);
            entry["partition"] = json!(spec.partition.to_string());
            entry["k"] = json!(spec.k.to_string());
            entry["profile"] = json!(spec.partition.profile());
            memberships.push(entry);
        }
        for (a, k) in &set_ks {
            let v = membership_a(k, *a, f).map_err(internal)?;
            negative |= !v.member;
            summary.push_str(&verdict_line(&v));
            let mut entry = verdict_json(&v);
            entry["set"] = json!(a.to_vec());
            entry["k"] = json!(k.to_string());
            memberships.push(entry);
        }
        results.push(json!({
            "name": name,
            "poly": f.to_string(),
            "slice": verdict_json(&slice),
            "slice_regular": verdict_json(&regular),
            "slice_regular_coefficients": coefficients,
            "memberships": memberships,
        }));
    }
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "classify",
        "algebra": doc.algebra.to_string(),
        "n": n,
        "partitions_tested": specs.len(),
        "results": results,
    });
    emit(args.json, report, &summary);
    Ok(if negative {
        Outcome::Negative
    } else {
        Outcome::Success
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn apply(args: ApplyArgs) -> Result<Outcome, CliError> {
    let doc = load(&args.input)?;
    let n = doc.frame.n();
    let op: OperatorName = args.op.parse().map_err(parse_err)?;
    let partition = match &args.partition {
        Some(p) => Some(parse_partition(p, n)?),
        None => doc.partition.clone(),
    };
    let k = doc.k.clone().unwrap_or_else(|| {
        default_multiplicities(partition.as_ref().unwrap_or(&Partition::whole(n)))
    });
    let mut results = Vec::new();
    let mut summary = String::new();
    for (name, f) in &doc.polys {
        let r = apply_named(&op, &k, partition.as_ref(), f).map_err(parse_err)?;
        summary.push_str(&format!("{op} {name} = {}\n", r.output));
        results.push(json!({
            "name": name,
            "input_digest": r.input_digest,
            "output": r.output.to_string(),
            "is_zero": r.is_zero,
        }));
    }
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "apply",
        "algebra": doc.algebra.to_string(),
        "operator": op.to_string(),
        "k": k.to_string(),
        "results": results,
    });
    emit(args.json, report, &summary);
    Ok(Outcome::Success)
}

const MAX_ENUMERATE: usize = 10;

pub fn enumerate(args: EnumerateArgs) -> Result<Outcome, CliError> {
    let n = match (args.n, &args.algebra) {
        (Some(n), _) => n,
        (None, Some(spec)) => make_algebra_str(spec).map_err(parse_err)?.1.n(),
        (None, None) => return Err(CliError::Parse("give --n or --algebra".into())),
    };
    if n == 0 || n > MAX_ENUMERATE {
        return Err(CliError::Parse(format!(
            "n must be between 1 and {MAX_ENUMERATE}"
        )));
    }
    let c = census(n);
    let mut summary = format!(
        "n = {n}: {} partition spaces, {} up to relabeling, {} subset spaces\n",
        c.bell, c.integer_partitions, c.subset_spaces
    );
    let partitions: Vec<Value> = enumerate_partitions(n)
        .map(|p| {
            let k = default_multiplicities(&p);
            summary.push_str(&format!("  {p}  profile {:?}  k = {k}\n", p.profile()));
            json!({"partition": p.to_string(), "profile": p.profile(), "default_k": k.to_string()})
        })
        .collect();
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "enumerate",
        "census": {
            "n": n,
            "bell": c.bell as u64,
            "integer_partitions": c.integer_partitions as u64,
            "subset_spaces": c.subset_spaces as u64,
        },
        "partitions": partitions,
    });
    emit(args.json, report, &summary);
    Ok(Outcome::Success)
}

pub fn perron(args: PerronArgs) -> Result<Outcome, CliError> {
    let k = match (&args.k, args.n) {
        (Some(k), Some(n)) => parse_k(k, n)?,
        (Some(k), None) => k.parse::<Multiplicities>().map_err(parse_err)?,
        (None, Some(n)) => default_multiplicities(&Partition::whole(n)),
        (None, None) => return Err(CliError::Parse("give --n or --k".into())),
    };
    let m = build_reflection_matrix(&k, args.i0).map_err(parse_err)?;
    let r = verify_perron(&m);
    let mut summary = format!(
        "n = {}, i0 = {}, order {}: symmetric {}, doubly stochastic {}, irreducible {}, rank(I - A) = {}\n",
        m.n,
        m.i0,
        r.order,
        yes_no(r.symmetric),
        yes_no(r.doubly_stochastic),
        yes_no(r.irreducible),
        r.rank_i_minus_a
    );
    for f in &r.failures {
        summary.push_str(&format!("  failed: {f}\n"));
    }
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "perron",
        "n": m.n,
        "i0": m.i0,
        "k": k.to_string(),
        "alpha": m.alpha.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        "report": r,
        "matrix": m.entries.iter()
            .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    });
    emit(args.json, report, &summary);
    Ok(if r.passed() {
        Outcome::Success
    } else {
        Outcome::Negative
    })
}

pub fn pointcheck(args: PointcheckArgs) -> Result<Outcome, CliError> {
    let (_, frame) = make_algebra_str(&args.algebra).map_err(parse_err)?;
    let n = frame.n();
    let mut s = Sampler::new(args.seed);
    let mut failures = Vec::new();
    let subject = match args.theorem.as_str() {
        "difference" => {
            for idx in 0..args.samples {
                let f = s.poly(&frame, 3, 4);
                let point = off_axis_point(&mut s, n);
                if !check_difference_at(&f, &point).map_err(internal)? {
                    failures.push(format!("sample {idx}: {f}"));
                }
            }
            Value::Null
        }
        "kerSP" => {
            let p = match &args.partition {
                Some(p) => parse_partition(p, n)?,
                None => Partition::whole(n),
            };
            for idx in 0..args.samples {
                let f = s.p_slice_poly(&frame, &p, 3);
                let point = block_point(&frame, &p, &mut s);
                let r = reconstruct_p_slice_at(&p, &f, &point).map_err(internal)?;
                if !r.passed() {
                    failures.push(format!("sample {idx}: {f}"));
                }
            }
            json!(p.to_string())
        }
        "slice-restriction" => {
            let a = match &args.set {
                Some(a) => parse_set(a, n)?,
                None if n >= 2 => IndexSet::full(n).difference(IndexSet::singleton(1)),
                None => IndexSet::full(n),
            };
            let k = set_multiplicities(n, a);
            for idx in 0..args.samples {
                let f = s.fa_member(&frame, a, 3);
                if !membership_a(&k, a, &f).map_err(internal)?.member {
                    return Err(CliError::Internal(format!(
                        "sample {idx} is not in F_{a}: {f}"
                    )));
                }
                let j = rational_sphere_point(a.len(), &mut s);
                let restricted = restrict_to_slice(&f, a, &j).map_err(internal)?;
                if !dbar_j(&restricted).is_zero() {
                    failures.push(format!("sample {idx}: {f}"));
                }
            }
            json!(a.to_vec())
        }
        other => {
            return Err(CliError::Parse(format!(
                "unknown theorem `{other}` (expected difference, kerSP or slice-restriction)"
            )))
        }
    };
    let passed = failures.is_empty();
    let mut summary = format!(
        "{} on {}: {}/{} samples passed\n",
        args.theorem,
        args.algebra,
        args.samples - failures.len(),
        args.samples
    );
    for f in &failures {
        summary.push_str(&format!("  failed {f}\n"));
    }
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "pointcheck",
        "theorem": args.theorem,
        "algebra": args.algebra,
        "subject": subject,
        "seed": args.seed,
        "samples": args.samples,
        "passed": passed,
        "failures": failures,
    });
    emit(args.json, report, &summary);
    Ok(if passed {
        Outcome::Success
    } else {
        Outcome::Violation
    })
}

fn off_axis_point(s: &mut Sampler, n: usize) -> Vec<dunkl_core::Rational> {
    let mut p: Vec<_> = (0..=n).map(|_| s.rational()).collect();
    let i = 1 + s.below(n);
    p[i] = s.nonzero_rational();
    p
}

pub fn selftest(args: SelftestArgs) -> Result<Outcome, CliError> {
    let mut opts = Options {
        sabotage: args.sabotage,
        ..Options::default()
    };
    if let Some(seed) = args.seed {
        opts.seed = seed;
    }
    let results = run_criteria(args.filter.as_deref(), &opts);
    if results.is_empty() {
        return Err(CliError::Parse(format!(
            "no criterion matches `{}`",
            args.filter.unwrap_or_default()
        )));
    }
    let passed = results.iter().filter(|r| r.passed).count();
    let mut summary: String = results.iter().map(|r| r.line() + "\n").collect();
    summary.push_str(&format!("{passed}/{} criteria passed\n", results.len()));
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "selftest",
        "seed": opts.seed,
        "passed": passed == results.len(),
        "criteria": results.iter().map(|r| json!({
            "id": r.id,
            "slug": r.slug,
            "title": r.title,
            "passed": r.passed,
            "detail": r.detail,
        })).collect::<Vec<_>>(),
    });
    emit(args.json, report, &summary);
    Ok(if passed == results.len() {
        Outcome::Success
    } else {
        Outcome::Negative
    })
}
