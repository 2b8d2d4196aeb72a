use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use belyi_core::combinatorics::{count_closed_form, count_nonpolynomial, count_polynomial, MAX_DEGREE};
use belyi_core::construction::{build, build_normalized, build_polynomial, mobius_description, Certificate};
use belyi_core::dynamics::{
    allowed_periods, cycle_data, fiber_sign_analysis, functional_graph, preperiodic_set, FiberAnalysis,
    MultiplierOrder, PreperOptions, PreperReport,
};
use belyi_core::exact::{PrimeModulus, QPoint};
use belyi_core::reduction::{
    census, census_jobs, frobenius_decompose, generalized_ramification, in_s_cp, degree_15_table_jobs,
    predict_monomial, reduce_belyi, write_census_csv, BaseDivisor, CensusRecord, CensusRow,
    GeneralizedRamification, PrimeSelection,
};
use belyi_core::render::{render_fp_map, render_q_map, render_z_poly, TermOrder};
use belyi_core::serial::ExactRational;
use belyi_core::{classify, enumerate_types, CombinatorialType, TypeClass};

use crate::args::{Command, Format, OutputArgs, TypeArgs};
use crate::envelope::Envelope;
use crate::{CliError, Settings};

type Result<T> = std::result::Result<T, CliError>;

pub(crate) struct Output {
    pub stdout: String,
    pub warnings: Vec<String>,
}

pub(crate) fn execute(cmd: &Command, arguments: &[String], settings: Settings) -> Result<Output> {
    match cmd {
        Command::Enumerate { d, format } => enumerate(*d, *format, arguments),
        Command::Build {
            ty,
            verify,
            conjugate,
            out,
        } => build_cmd(ty, *verify, *conjugate, out, arguments),
        Command::Reduce { ty, p, out } => reduce(ty, *p, out, arguments),
        Command::Census {
            d_range,
            primes,
            all_orderings,
            paper_table_15,
            format,
            order,
        } => census_cmd(
            d_range.as_deref(),
            primes,
            *all_orderings,
            *paper_table_15,
            *format,
            (*order).into(),
            arguments,
        ),
        Command::Preper {
            ty,
            override_hypothesis,
            level_cap,
            format,
        } => {
            let opts = PreperOptions {
                override_hypothesis: *override_hypothesis,
                level_cap: *level_cap,
                factor: settings.factor,
            };
            preper(ty, opts, *format, arguments)
        }
        Command::Graph { ty, p, out } => graph(ty, *p, out, arguments),
        Command::Fibers { d, k, format } => fibers(*d, *k, *format, settings, arguments),
    }
}

fn json<T: Serialize>(command: &str, arguments: &[String], payload: T, warnings: Vec<String>) -> Result<Output> {
    let env = Envelope::new(command, arguments, payload, warnings.clone());
    let mut stdout = serde_json::to_string_pretty(&env)?;
    stdout.push('\n');
    Ok(Output { stdout, warnings })
}

fn no_csv(command: &str) -> CliError {
    CliError::Usage(format!("{command} has no CSV output; use --format json or plain"))
}

fn ctype(t: &TypeArgs) -> Result<CombinatorialType> {
    Ok(CombinatorialType::new(t.d, t.e1, t.e2, t.e3)?)
}

fn prime(p: u64) -> Result<PrimeModulus> {
    Ok(PrimeModulus::new(p)?)
}

fn family(class: TypeClass) -> (&'static str, Option<u64>) {
    match class {
        TypeClass::Polynomial { k } => ("polynomial", Some(k)),
        TypeClass::Symmetric { k } => ("symmetric", Some(k)),
        TypeClass::GeneralUnsupported => ("unsupported", None),
    }
}

fn set_string(points: &[QPoint]) -> String {
    let items: Vec<String> = points.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateRow {
    pub d: u64,
    pub e1: u64,
    pub e2: u64,
    pub e3: u64,
    /// `polynomial`, `symmetric` or `unsupported`.
    pub family: String,
    pub k: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratePayload {
    pub d: u64,
    pub count: u64,
    pub closed_form: u64,
    pub polynomial: u64,
    pub nonpolynomial: u64,
    pub types: Vec<EnumerateRow>,
}

fn enumerate(d: u64, format: Format, arguments: &[String]) -> Result<Output> {
    let types = enumerate_types(d)?;
    let rows: Vec<EnumerateRow> = types
        .iter()
        .map(|t| {
            let (family, k) = family(classify(t).class);
            EnumerateRow {
                d: t.d,
                e1: t.e1,
                e2: t.e2,
                e3: t.e3,
                family: family.into(),
                k,
            }
        })
        .collect();
    let payload = EnumeratePayload {
        d,
        count: rows.len() as u64,
        closed_form: count_closed_form(d)?,
        polynomial: count_polynomial(d)?,
        nonpolynomial: if d == 3 { 0 } else { count_nonpolynomial(d)? },
        types: rows,
    };
    match format {
        Format::Json => json("enumerate", arguments, payload, vec![]),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &payload.types {
                w.serialize(r)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(Output {
                stdout: String::from_utf8(bytes).expect("csv output is utf-8"),
                warnings: vec![],
            })
        }
        Format::Plain => {
            let mut s = String::new();
            for r in &payload.types {
                let t = CombinatorialType::new(r.d, r.e1, r.e2, r.e3)?;
                match r.k {
                    Some(k) => writeln!(s, "{t}  {} k={k}", r.family).unwrap(),
                    None => writeln!(s, "{t}  {}", r.family).unwrap(),
                }
            }
            writeln!(
                s,
                "N({d}) = {}: {} polynomial, {} nonpolynomial",
                payload.count, payload.polynomial, payload.nonpolynomial
            )
            .unwrap();
            Ok(Output { stdout: s, warnings: vec![] })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckView {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateView {
    pub passed: bool,
    pub checks: Vec<CheckView>,
}

impl From<&Certificate> for CertificateView {
    fn from(c: &Certificate) -> Self {
        Self {
            passed: c.passed(),
            checks: c
                .checks
                .iter()
                .map(|k| CheckView {
                    name: k.name.into(),
                    passed: k.passed,
                    detail: k.detail.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildPayload {
    pub requested: CombinatorialType,
    pub family: String,
    pub k: u64,
    /// The family pattern the type was matched against.
    pub pattern: CombinatorialType,
    /// `e_i = pattern_{sigma(i)}`.
    pub sigma: [usize; 3],
    /// Möbius change of coordinates taking the pattern map to the requested type.
    pub relabeling: String,
    /// Type of the map below: the requested type when conjugated, else the pattern.
    pub map_type: CombinatorialType,
    pub conjugated: bool,
    pub map: String,
    /// Integer numerator coefficients, constant term first.
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
    /// `f = scale * numerator / denominator`.
    pub scale: ExactRational,
    pub certificate: Option<CertificateView>,
}

fn build_cmd(ty: &TypeArgs, verify: bool, conjugate: bool, out: &OutputArgs, arguments: &[String]) -> Result<Output> {
    if out.format == Format::Csv {
        return Err(no_csv("build"));
    }
    let order: TermOrder = out.order.into();
    let t = ctype(ty)?;
    let c = build(&t)?;
    let class = c.classification;
    let pattern = class.pattern.expect("supported types have a pattern");
    let direct = class.is_direct();
    let mut warnings = Vec::new();
    let map = if conjugate {
        c.into_normalized()?
    } else {
        if !direct {
            warnings.push(format!(
                "{t} is the family type {pattern} after relabeling by x -> {}; this is the map of {pattern} (pass --conjugate for {t})",
                mobius_description(class.sigma)
            ));
        }
        c.map
    };
    let certificate = if verify {
        let cert = map.verify();
        if !cert.passed() {
            let failed: Vec<String> = cert.failures().map(|k| format!("{}: {}", k.name, k.detail)).collect();
            return Err(CliError::Verification(failed.join("; ")));
        }
        Some(CertificateView::from(&cert))
    } else {
        None
    };
    let (fam, k) = family(class.class);
    let model = map.model();
    let payload = BuildPayload {
        requested: t,
        family: fam.into(),
        k: k.expect("supported"),
        pattern,
        sigma: class.sigma,
        relabeling: mobius_description(class.sigma).into(),
        map_type: *map.ctype(),
        conjugated: conjugate && !direct,
        map: render_q_map(map.map(), order),
        numerator: model.num.coeffs().iter().map(|c| c.to_string()).collect(),
        denominator: model.den.coeffs().iter().map(|c| c.to_string()).collect(),
        scale: ExactRational(model.scale.clone()),
        certificate,
    };
    match out.format {
        Format::Json => json("build", arguments, payload, warnings),
        _ => {
            let mut s = String::new();
            writeln!(s, "{}", payload.map).unwrap();
            writeln!(s, "type: {}", payload.map_type).unwrap();
            writeln!(s, "family: {} k={}", payload.family, payload.k).unwrap();
            if !direct {
                writeln!(s, "relabeling: x -> {} takes {pattern} to {t}", payload.relabeling).unwrap();
            }
            writeln!(s, "integer model: numerator {}", render_z_poly(&model.num, order)).unwrap();
            writeln!(s, "integer model: denominator {}", render_z_poly(&model.den, order)).unwrap();
            writeln!(s, "integer model: scale {}", model.scale).unwrap();
            if let Some(cert) = &payload.certificate {
                for k in &cert.checks {
                    let mark = if k.passed { "PASS" } else { "FAIL" };
                    writeln!(s, "{mark} {}: {}", k.name, k.detail).unwrap();
                }
                writeln!(s, "certificate: {}", if cert.passed { "pass" } else { "fail" }).unwrap();
            }
            Ok(Output { stdout: s, warnings })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducePayload {
    pub record: CensusRecord,
    pub separable: bool,
    /// `fbar = psi(x^{p^n})` with `psi` separable.
    pub frobenius_n: u32,
    pub separable_part: String,
    pub generalized_ramification: Option<GeneralizedRamification>,
    /// Base divisor witnessing membership in S_{C,p}, if it is a member.
    pub s_cp_witness: Option<BaseDivisor>,
}

fn reduce(ty: &TypeArgs, p: u64, out: &OutputArgs, arguments: &[String]) -> Result<Output> {
    if out.format == Format::Csv {
        return Err(no_csv("reduce"));
    }
    let order: TermOrder = out.order.into();
    let t = ctype(ty)?;
    let p = prime(p)?;
    let f = build_normalized(&t)?;
    let r = reduce_belyi(&f, p)?;
    let frob = frobenius_decompose(&r.fbar);
    let gen = generalized_ramification(&r.fbar).ok();
    let witness = in_s_cp(&r.fbar, &t);
    let row = CensusRow {
        ctype: t,
        p,
        predicted_monomial: predict_monomial(&t, p.get()),
        outcome: Ok(r),
    };
    let payload = ReducePayload {
        record: row.record(order),
        separable: row.outcome.as_ref().map(|r| r.separable).unwrap_or(false),
        frobenius_n: frob.n,
        separable_part: render_fp_map(&frob.separable_part, order),
        generalized_ramification: gen,
        s_cp_witness: witness,
    };
    match out.format {
        Format::Json => json("reduce", arguments, payload, vec![]),
        _ => {
            let rec = &payload.record;
            let yes = |b: bool| if b { "yes" } else { "no" };
            let mut s = String::new();
            writeln!(s, "{}", rec.fbar).unwrap();
            writeln!(s, "classification: {}", rec.classification).unwrap();
            writeln!(s, "degree: {} of {}", rec.deg_bar.unwrap_or(0), rec.d).unwrap();
            writeln!(
                s,
                "base divisor: eps1 = {}, eps2 = {}, delta = {}",
                rec.eps1.unwrap_or(0),
                rec.eps2.unwrap_or(0),
                rec.delta.unwrap_or(0)
            )
            .unwrap();
            writeln!(
                s,
                "monomial: {} (predicted {})",
                yes(rec.actual_monomial.unwrap_or(false)),
                yes(rec.predicted_monomial)
            )
            .unwrap();
            writeln!(s, "frobenius: n = {}, separable part {}", payload.frobenius_n, payload.separable_part).unwrap();
            match &payload.generalized_ramification {
                Some(g) => writeln!(
                    s,
                    "generalized ramification: ({}, {}, {})",
                    g.indices[0], g.indices[1], g.indices[2]
                )
                .unwrap(),
                None => writeln!(s, "generalized ramification: undefined").unwrap(),
            }
            match &payload.s_cp_witness {
                Some(b) => writeln!(
                    s,
                    "in S_(C,p): yes (eps1 = {}, eps2 = {}, delta = {})",
                    b.eps1, b.eps2, b.delta
                )
                .unwrap(),
                None => writeln!(s, "in S_(C,p): no").unwrap(),
            }
            Ok(Output { stdout: s, warnings: vec![] })
        }
    }
}

/// `a..b`, `a..=b` (both inclusive) or a single degree.
fn parse_range(s: &str) -> Result<(u64, u64)> {
    let bad = || CliError::Usage(format!("invalid degree range {s:?}; expected A..B"));
    let num = |x: &str| x.trim().parse::<u64>().map_err(|_| bad());
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let a = num(s)?;
            (a, a)
        }
    };
    if a > b {
        return Err(CliError::Usage(format!("empty degree range {s:?}")));
    }
    if b > MAX_DEGREE {
        return Err(CliError::Usage(format!("degree range {s:?} exceeds the bound {MAX_DEGREE}")));
    }
    Ok((a, b))
}

fn parse_primes(s: &str) -> Result<PrimeSelection> {
    if s.trim() == "dividing" {
        return Ok(PrimeSelection::Dividing);
    }
    let mut out = Vec::new();
    for part in s.split(',') {
        let p: u64 = part
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("invalid prime {part:?} in --primes")))?;
        out.push(prime(p)?);
    }
    Ok(PrimeSelection::List(out))
}

fn census_cmd(
    d_range: Option<&str>,
    primes: &str,
    all_orderings: bool,
    table: bool,
    format: Format,
    order: TermOrder,
    arguments: &[String],
) -> Result<Output> {
    let jobs = if table {
        degree_15_table_jobs()
    } else {
        let (a, b) = parse_range(d_range.expect("clap requires a range"))?;
        let primes = parse_primes(primes)?;
        let mut types = Vec::new();
        for d in a..=b {
            for t in enumerate_types(d)? {
                if all_orderings {
                    types.extend(t.orderings());
                } else {
                    types.push(t);
                }
            }
        }
        census_jobs(&types, &primes)
    };
    let rows = census(&jobs)?;
    let skipped = rows.iter().filter(|r| r.outcome.is_err()).count();
    let warnings = if skipped > 0 {
        vec![format!("{skipped} of {} rows skipped: no closed form in scope", rows.len())]
    } else {
        vec![]
    };
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_census_csv(&rows, order, &mut buf)?;
            Ok(Output {
                stdout: String::from_utf8(buf).expect("csv output is utf-8"),
                warnings,
            })
        }
        Format::Json => {
            let records: Vec<CensusRecord> = rows.iter().map(|r| r.record(order)).collect();
            json("census", arguments, records, warnings)
        }
        Format::Plain => {
            let mut s = String::new();
            for r in &rows {
                let rec = r.record(order);
                match &r.outcome {
                    Ok(_) => writeln!(s, "{} mod {}: {}  [{}]", r.ctype, rec.p, rec.fbar, rec.classification).unwrap(),
                    Err(reason) => writeln!(s, "{} mod {}: {reason}", r.ctype, rec.p).unwrap(),
                }
            }
            Ok(Output { stdout: s, warnings })
        }
    }
}

fn preper(ty: &TypeArgs, opts: PreperOptions, format: Format, arguments: &[String]) -> Result<Output> {
    if format == Format::Csv {
        return Err(no_csv("preper"));
    }
    let t = ctype(ty)?;
    let f = build_normalized(&t)?;
    let report: PreperReport = preperiodic_set(&f, opts)?;
    let mut warnings = Vec::new();
    if !report.rigorous {
        warnings.push(format!(
            "no periodicity hypothesis holds for {t}; the set is the backward closure of the fixed points and may miss points of higher period"
        ));
    }
    match format {
        Format::Json => json("preper", arguments, report, warnings),
        _ => {
            let mut s = String::new();
            writeln!(s, "{}", set_string(&report.preperiodic)).unwrap();
            writeln!(s, "fixed points: {}", set_string(&report.fixed_points)).unwrap();
            for &(i, j) in &report.edges {
                writeln!(s, "{} -> {}", report.preperiodic[i], report.preperiodic[j]).unwrap();
            }
            match report.hypothesis_used {
                Some(h) => writeln!(s, "hypothesis case {}", h.number()).unwrap(),
                None => writeln!(s, "hypothesis overridden").unwrap(),
            }
            Ok(Output { stdout: s, warnings })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleView {
    /// Vertex labels in cycle order: residues `0..p-1` or `inf`.
    pub vertices: Vec<String>,
    pub length: usize,
    pub multiplier: u64,
    /// Multiplicative order of the multiplier; `None` when it is 0.
    pub multiplier_order: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphPayload {
    pub ctype: CombinatorialType,
    pub p: u64,
    pub fbar: String,
    pub classification: String,
    pub vertices: Vec<String>,
    /// `successor[i]` is the index of the image of `vertices[i]`.
    pub successor: Vec<usize>,
    pub tail_depth: Vec<usize>,
    pub cycles: Vec<CycleView>,
    /// Exact periods of rational periodic points allowed by each cycle;
    /// absent for bad reduction.
    pub allowed_periods: Option<Vec<String>>,
}

fn graph(ty: &TypeArgs, p: u64, out: &OutputArgs, arguments: &[String]) -> Result<Output> {
    if out.format == Format::Csv {
        return Err(no_csv("graph"));
    }
    let order: TermOrder = out.order.into();
    let t = ctype(ty)?;
    let p = prime(p)?;
    let f = build_normalized(&t)?;
    let r = reduce_belyi(&f, p)?;
    let g = functional_graph(&r.fbar);
    let mut warnings = Vec::new();
    let allowed = if r.classification.is_good() {
        Some(allowed_periods(&f, p)?.sets.iter().map(|s| s.describe()).collect())
    } else {
        warnings.push(format!(
            "bad reduction at p = {}: graph of the reduced map of degree {}; period constraints do not apply",
            p.get(),
            r.deg_bar
        ));
        None
    };
    let cycles = cycle_data(&r.fbar, &g)
        .into_iter()
        .map(|c| CycleView {
            vertices: c.vertices.iter().map(|&v| g.label(v)).collect(),
            length: c.length,
            multiplier: c.multiplier.value(),
            multiplier_order: match c.multiplier_order {
                MultiplierOrder::Finite(r) => Some(r),
                MultiplierOrder::Infinite => None,
            },
        })
        .collect();
    let payload = GraphPayload {
        ctype: t,
        p: p.get(),
        fbar: render_fp_map(&r.fbar, order),
        classification: r.classification.to_string(),
        vertices: (0..g.len()).map(|i| g.label(i)).collect(),
        successor: g.successors().to_vec(),
        tail_depth: (0..g.len()).map(|i| g.tail_depth(i)).collect(),
        cycles,
        allowed_periods: allowed,
    };
    match out.format {
        Format::Json => json("graph", arguments, payload, warnings),
        _ => {
            let mut s = String::new();
            writeln!(s, "{} over F_{} ({})", payload.fbar, payload.p, payload.classification).unwrap();
            for (i, v) in payload.vertices.iter().enumerate() {
                writeln!(s, "{v} -> {}", payload.vertices[payload.successor[i]]).unwrap();
            }
            writeln!(s, "cycles:").unwrap();
            for c in &payload.cycles {
                let order = c.multiplier_order.map_or("inf".to_string(), |r| r.to_string());
                writeln!(
                    s,
                    "  ({}) length {} multiplier {} order {order}",
                    c.vertices.join(" "),
                    c.length,
                    c.multiplier
                )
                .unwrap();
            }
            if let Some(sets) = &payload.allowed_periods {
                writeln!(s, "allowed periods: {}", sets.join("; ")).unwrap();
            }
            Ok(Output { stdout: s, warnings })
        }
    }
}

pub type FibersPayload = FiberAnalysis;

fn fibers(d: u64, k: u64, format: Format, settings: Settings, arguments: &[String]) -> Result<Output> {
    if format == Format::Csv {
        return Err(no_csv("fibers"));
    }
    let f = build_polynomial(d, k)?;
    let a = fiber_sign_analysis(&f, settings.factor)?;
    match format {
        Format::Json => json("fibers", arguments, a, vec![]),
        _ => {
            let show = |x: Option<String>| x.unwrap_or_else(|| "irrational or absent".into());
            let ok = |x: Option<bool>| x.map_or("n/a".to_string(), |b| b.to_string());
            let mut s = String::new();
            writeln!(s, "type: {}", f.ctype()).unwrap();
            writeln!(s, "case: {}", a.case).unwrap();
            writeln!(s, "zero fiber (rational): {}", set_string(&a.zero_fiber)).unwrap();
            writeln!(s, "one fiber (rational): {}", set_string(&a.one_fiber)).unwrap();
            writeln!(s, "real gamma > 1: {}", a.real_gamma).unwrap();
            writeln!(s, "gamma: {}", show(a.gamma.as_ref().map(|g| g.to_string()))).unwrap();
            writeln!(s, "gamma divisor check: {}", ok(a.gamma_divisor_ok)).unwrap();
            writeln!(s, "real beta < 0: {}", a.real_beta).unwrap();
            writeln!(s, "beta: {}", show(a.beta.as_ref().map(|b| b.to_string()))).unwrap();
            writeln!(s, "beta divisor check: {}", ok(a.beta_divisor_ok)).unwrap();
            Ok(Output { stdout: s, warnings: vec![] })
        }
    }
}
