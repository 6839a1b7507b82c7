use std::fmt::Write as _;

use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use classprod_core::alt_group::{
    class_size, delta, delta_bound_report, enumerate_alt_classes, inverse_class, AltClass, NormalSet,
};
use classprod_core::brute_force::{alt_conjugacy_classes, GroupTable, ORACLE_MAX_N};
use classprod_core::characters::{alt_degree, alt_value, degree, mn_value, AltChar};
use classprod_core::partitions::{enumerate_partitions, Partition};
use classprod_core::product_engine::{
    check_dvir_rodgers, covering_number, lemma_excon_checks, product_set, verify_four_class_theorem, ENGINE_MAX_N,
};
use classprod_core::{ClassAlgebra, ClassProducts, Error};

use crate::{Command, Failure, Group, Mode};

/// Largest `n` for commands that enumerate all partitions or classes.
const ENUMERATION_MAX_N: usize = 60;
/// Largest `n` for single character values and degrees.
const VALUE_MAX_N: usize = 200;

pub struct Report {
    pub json: Value,
    pub text: String,
}

type Outcome<T = Report> = Result<T, Failure>;

fn check_n(n: usize, max: usize, what: &'static str) -> Outcome<()> {
    if n == 0 {
        return Err(Failure::usage("n must be positive"));
    }
    if n > max {
        return Err(Error::Capability { n, max, what }.into());
    }
    Ok(())
}

fn parse_class(n: usize, s: &str) -> Outcome<AltClass> {
    let c: AltClass = s.trim().parse()?;
    if c.n() != n {
        return Err(Error::SizeMismatch { expected: n, found: c.n() }.into());
    }
    Ok(c)
}

/// Class names separated by `;`; a bare exceptional name means both halves.
fn parse_set(n: usize, s: &str) -> Outcome<NormalSet> {
    let mut set = NormalSet::empty(n);
    for name in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        for c in NormalSet::parse_named(n, name)?.iter() {
            set.insert(c.clone())?;
        }
    }
    if set.is_empty() {
        return Err(Error::EmptySet.into());
    }
    Ok(set)
}

fn parse_partition(n: usize, s: &str) -> Outcome<Partition> {
    let p: Partition = s.trim().parse()?;
    if p.n() != n {
        return Err(Error::SizeMismatch { expected: n, found: p.n() }.into());
    }
    Ok(p)
}

fn parse_rational(s: &str, what: &str) -> Outcome<BigRational> {
    s.trim().parse().map_err(|_| Failure::usage(format!("{what} must be an exact rational such as 1/10, got {s:?}")))
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

enum Backend {
    Engine(ClassAlgebra),
    Oracle(GroupTable),
}

impl Backend {
    fn products(&self) -> &dyn ClassProducts {
        match self {
            Backend::Engine(e) => e,
            Backend::Oracle(o) => o,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Backend::Engine(_) => "engine",
            Backend::Oracle(_) => "oracle",
        }
    }
}

fn backends(n: usize, mode: Mode) -> Outcome<Vec<Backend>> {
    let max = if mode == Mode::Engine { ENGINE_MAX_N } else { ORACLE_MAX_N };
    check_n(n, max, if mode == Mode::Engine { "character engine" } else { "brute-force oracle" })?;
    let mut out = Vec::new();
    if mode != Mode::Oracle {
        out.push(Backend::Engine(ClassAlgebra::new(n)?));
    }
    if mode != Mode::Engine {
        out.push(Backend::Oracle(alt_conjugacy_classes(n)?));
    }
    Ok(out)
}

/// Runs `f` on every backend of the mode; with both, the serialized results must agree.
fn on_backends<T: Serialize>(n: usize, mode: Mode, f: impl Fn(&Backend) -> Outcome<T>) -> Outcome<T> {
    let mut results = Vec::new();
    for b in backends(n, mode)? {
        results.push((b.name(), f(&b)?));
    }
    if let [(_, first), (other, second)] = results.as_slice() {
        let (x, y) = (to_json(first), to_json(second));
        if x != y {
            return Err(Failure::inconsistent(format!("engine and {other} disagree:\nengine: {x}\n{other}: {y}")));
        }
    }
    Ok(results.into_iter().next().expect("at least one backend").1)
}

pub fn run(command: &Command) -> Outcome {
    match command {
        Command::Partitions { n, count } => partitions(*n, *count),
        Command::CharValue { n, character, class, group } => char_value(*n, character, class, *group),
        Command::Degree { n, partition, group } => degree_cmd(*n, partition, *group),
        Command::Classes { n } => classes(*n),
        Command::Delta { n, class } => delta_cmd(*n, class),
        Command::Product { n, a, b, mode } => product(*n, a, b, mode.mode),
        Command::Contains { n, a, b, g, mode } => contains(*n, a, b, g, mode.mode),
        Command::Covering { n, class, max_k, mode } => covering(*n, class, *max_k, mode.mode),
        Command::Dvir { n, mode } => dvir(*n, mode.mode),
        Command::VerifyTheorem { n, epsilon, limit, mode } => verify_theorem(*n, epsilon, *limit, mode.mode),
        Command::Excon { n, mode } => excon(*n, mode.mode),
        Command::DeltaReport { n, gamma } => delta_report(*n, gamma),
    }
}

fn partitions(n: usize, count: bool) -> Outcome {
    check_n(n, ENUMERATION_MAX_N, "partition enumeration")?;
    let all = enumerate_partitions(n);
    if count {
        return Ok(Report { json: json!({ "n": n, "count": all.len() }), text: format!("{}\n", all.len()) });
    }
    let text = all.iter().map(|p| format!("{p}\n")).collect();
    Ok(Report { json: json!({ "n": n, "count": all.len(), "partitions": all }), text })
}

fn char_value(n: usize, character: &str, class: &str, group: Group) -> Outcome {
    check_n(n, VALUE_MAX_N, "character values")?;
    match group {
        Group::Sym => {
            let lambda = parse_partition(n, character)?;
            let rho = parse_partition(n, class)?;
            let v = mn_value(&lambda, &rho)?;
            Ok(Report {
                json: json!({ "group": "sym", "partition": lambda, "cycle_type": rho, "value": v.to_string() }),
                text: format!("{v}\n"),
            })
        }
        Group::Alt => {
            let psi: AltChar = character.trim().parse()?;
            if psi.n() != n {
                return Err(Error::SizeMismatch { expected: n, found: psi.n() }.into());
            }
            let c = parse_class(n, class)?;
            let v = alt_value(&psi, &c)?;
            Ok(Report {
                json: json!({ "group": "alt", "character": psi, "class": c, "value": v.to_string() }),
                text: format!("{v}\n"),
            })
        }
    }
}

fn degree_cmd(n: usize, partition: &str, group: Group) -> Outcome {
    check_n(n, VALUE_MAX_N, "degrees")?;
    let (label, d) = match group {
        Group::Sym => {
            let lambda = parse_partition(n, partition)?;
            (lambda.to_string(), degree(&lambda))
        }
        Group::Alt => {
            let psi: AltChar = partition.trim().parse()?;
            if psi.n() != n {
                return Err(Error::SizeMismatch { expected: n, found: psi.n() }.into());
            }
            (psi.to_string(), alt_degree(&psi))
        }
    };
    let group = if group == Group::Sym { "sym" } else { "alt" };
    Ok(Report { json: json!({ "group": group, "character": label, "degree": d.to_string() }), text: format!("{d}\n") })
}

#[derive(Serialize)]
struct ClassRow {
    class: AltClass,
    size: String,
    delta: usize,
    inverse: AltClass,
    exceptional: bool,
    long_cycle: bool,
}

fn classes(n: usize) -> Outcome {
    check_n(n, ENUMERATION_MAX_N, "class enumeration")?;
    let rows: Vec<ClassRow> = enumerate_alt_classes(n)
        .into_iter()
        .map(|c| ClassRow {
            size: class_size(&c).to_string(),
            delta: delta(&c),
            inverse: inverse_class(&c),
            exceptional: c.is_exceptional(),
            long_cycle: c.is_long_cycle(),
            class: c,
        })
        .collect();
    let mut text = String::new();
    let width = rows.iter().map(|r| r.class.to_string().len()).max().unwrap_or(5).max(5);
    let _ = writeln!(text, "{:<width$}  {:>20}  {:>5}  inverse", "class", "size", "delta");
    for r in &rows {
        let _ = writeln!(text, "{:<width$}  {:>20}  {:>5}  {}", r.class.to_string(), r.size, r.delta, r.inverse);
    }
    Ok(Report { json: json!({ "n": n, "classes": rows }), text })
}

fn delta_cmd(n: usize, class: &str) -> Outcome {
    check_n(n, VALUE_MAX_N, "classes")?;
    let c = parse_class(n, class)?;
    let d = delta(&c);
    Ok(Report { json: json!({ "class": c, "delta": d }), text: format!("{d}\n") })
}

fn product(n: usize, a: &str, b: &str, mode: Mode) -> Outcome {
    let (s, t) = (parse_set(n, a)?, parse_set(n, b)?);
    let prod = on_backends(n, mode, |be| Ok(product_set(be.products(), &s, &t)?))?;
    let covers = prod.len() == enumerate_alt_classes(n).len();
    Ok(Report {
        json: json!({ "n": n, "a": s, "b": t, "product": prod, "is_whole_group": covers }),
        text: format!("{prod}\n"),
    })
}

#[derive(Serialize, PartialEq)]
struct Containment {
    contains: bool,
    pair_count: String,
}

fn contains(n: usize, a: &str, b: &str, g: &str, mode: Mode) -> Outcome {
    let (ca, cb, cg) = (parse_class(n, a)?, parse_class(n, b)?, parse_class(n, g)?);
    let result = on_backends(n, mode, |be| {
        let count = match be {
            Backend::Engine(e) => e.frobenius_sum(&ca, &cb, &cg)?.pair_count.to_string(),
            Backend::Oracle(o) => o.oracle_pair_count(&ca, &cb, o.representative(&cg)?)?.to_string(),
        };
        Ok(Containment { contains: count != "0", pair_count: count })
    })?;
    Ok(Report {
        json: json!({ "a": ca, "b": cb, "g": cg, "contains": result.contains, "pair_count": result.pair_count }),
        text: format!("{}\n", result.contains),
    })
}

fn covering(n: usize, class: &str, max_k: usize, mode: Mode) -> Outcome {
    if max_k == 0 {
        return Err(Failure::usage("--max-k must be positive"));
    }
    let set = parse_set(n, class)?;
    let k = on_backends(n, mode, |be| Ok(covering_number(be.products(), &set, max_k)?))?;
    let text = match k {
        Some(k) => format!("{k}\n"),
        None => format!("none (C^k is not Alt({n}) for k <= {max_k})\n"),
    };
    Ok(Report { json: json!({ "n": n, "class": set, "max_k": max_k, "covering_number": k }), text })
}

fn dvir(n: usize, mode: Mode) -> Outcome {
    let report = on_backends(n, mode, |be| Ok(check_dvir_rodgers(be.products())?))?;
    let mut text = format!(
        "n={} l={}: {} pairs of even cycle types, {} qualifying, {} violations\n",
        report.n,
        report.l,
        report.pairs_checked,
        report.applicable,
        report.violations.len()
    );
    for v in &report.violations {
        let missing: Vec<String> = v.missing.iter().map(ToString::to_string).collect();
        let _ = writeln!(text, "  {} * {} (delta sum {}) misses {}", v.a, v.b, v.delta_sum, missing.join("; "));
    }
    Ok(Report { json: to_json(&report), text })
}

fn verify_theorem(n: usize, epsilon: &str, limit: usize, mode: Mode) -> Outcome {
    let eps = parse_rational(epsilon, "epsilon")?;
    if eps <= BigRational::from_integer(0.into()) {
        return Err(Failure::usage("epsilon must be positive"));
    }
    let report = on_backends(n, mode, |be| Ok(verify_four_class_theorem(be.products(), &eps)?))?;
    let mut text = format!(
        "n={} epsilon={} |G|={}: {} qualifying quadruples, {} covered, {} not covered\n",
        report.n, report.epsilon, report.group_order, report.qualifying, report.covered, report.uncovered
    );
    let uncovered = report.quadruples.iter().filter(|q| !q.covered);
    let covered = report.quadruples.iter().filter(|q| q.covered);
    for q in uncovered.chain(covered).take(limit) {
        let names: Vec<String> = q.classes.iter().map(ToString::to_string).collect();
        let status = if q.covered { "covered".to_string() } else { format!("misses {} classes", q.missing.len()) };
        let _ = writeln!(text, "  {}  min pair size product {}  {status}", names.join(" | "), q.min_pair_product);
    }
    if report.quadruples.len() > limit {
        let _ = writeln!(text, "  ({} more; use --format json for all)", report.quadruples.len() - limit);
    }
    Ok(Report { json: to_json(&report), text })
}

fn excon(n: usize, mode: Mode) -> Outcome {
    let report = on_backends(n, mode, |be| Ok(lemma_excon_checks(be.products())?))?;
    let mut text = format!("n={} l={}\n", report.n, report.l);
    for p in &report.parts {
        let verdict = if p.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(text, "  part {}: {verdict} ({} cases) {}", p.part, p.cases, p.statement);
        for f in &p.failures {
            let _ = writeln!(text, "    {f}");
        }
    }
    Ok(Report { json: json!({ "report": report, "all_passed": report.all_passed() }), text })
}

fn delta_report(n: usize, gamma: &str) -> Outcome {
    check_n(n, ENUMERATION_MAX_N, "delta report")?;
    let g = parse_rational(gamma, "gamma")?;
    let report = delta_bound_report(n, &g).map_err(|e| match e {
        Error::InvalidClass(msg) => Failure::usage(msg),
        other => other.into(),
    })?;
    let mut text = format!("n={} gamma={}: {} classes of size >= |G|^gamma\n", report.n, report.gamma, report.rows.len());
    for r in &report.rows {
        let mark = if r.is_minimum { "  <- min" } else { "" };
        let _ = writeln!(text, "  {:<24} size {:>16}  delta {:>3}  delta/n {}{mark}", r.class.to_string(), r.size, r.delta, r.ratio);
    }
    Ok(Report { json: to_json(&report), text })
}
