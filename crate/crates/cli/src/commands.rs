//! The subcommands. Each returns the text to print on success, or a
//! [`Failure`] carrying its exit code and any partial output.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use commeq::characters::{decompose, Provider};
use commeq::counts::{brute_f_n, ore_set, ore_triple_symmetric, verify_triple};
use commeq::distributions::{bounds_report, convolution_trace, p_n, q3, Verdict};
use commeq::group::SymmetricOn;
use commeq::harness::{self, EvalOptions, Evaluation, FnSpec, Method};
use commeq::io::{save_report, ClassRow, CoeffRow, CountReport};
use commeq::verify::{run_suite, Suite};
use commeq::{build_table, make_group, CharacterTable, Error, GroupTable, Perm};

use crate::render::{pretty, Format, Rows};
use crate::{BenchArgs, CoeffsArgs, CountArgs, DistArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    Verification,
    Usage,
    Budget,
}

impl FailureKind {
    pub fn code(self) -> u8 {
        match self {
            FailureKind::Verification => 1,
            FailureKind::Usage => 2,
            FailureKind::Budget => 3,
        }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub kind: FailureKind,
    pub message: String,
    /// Printed to stdout before the error message.
    pub output: String,
}

impl Failure {
    fn verification(message: impl Into<String>, output: String) -> Self {
        Failure {
            kind: FailureKind::Verification,
            message: message.into(),
            output,
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Failure {
            kind: FailureKind::Usage,
            message: message.into(),
            output: String::new(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::BudgetExceeded { .. } => FailureKind::Budget,
            Error::Disagreement(_) | Error::TableRejected(_) => FailureKind::Verification,
            _ => FailureKind::Usage,
        };
        Failure {
            kind,
            message: e.to_string(),
            output: String::new(),
        }
    }
}

type CmdResult = Result<String, Failure>;

fn provider(text: &str) -> Result<Provider, Failure> {
    Ok(text.parse::<Provider>()?)
}

fn names(g: &GroupTable, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| g.name(x)).collect()
}

pub fn info(spec: &str, format: Format) -> CmdResult {
    let g = make_group(spec)?;
    let cls = g.classes();
    let center = g.center();
    let derived = g.derived_subgroup();
    let mut rows = Rows::new(&["class", "rep", "order", "size", "centralizer"]);
    for (c, &rep) in cls.reps.iter().enumerate() {
        rows.push(vec![
            c.to_string(),
            g.name(rep),
            g.element_order(rep)?.to_string(),
            cls.sizes[c].to_string(),
            g.centralizer_order(rep).to_string(),
        ]);
    }
    let family = g.family().map(|f| f.to_string());
    Ok(match format {
        Format::Json => pretty(&json!({
            "group": spec,
            "family": family,
            "order": g.order(),
            "abelian": g.is_abelian(),
            "exponent": g.exponent(),
            "class_count": cls.len(),
            "center": names(&g, &center.members),
            "derived_subgroup": names(&g, &derived.members),
            "centralizers_abelian": g.is_tc(),
            "classes": rows.to_json_value(),
        })),
        Format::Csv => rows.to_csv(),
        Format::Table => {
            let mut s = format!("group: {spec}\n");
            s += &format!("order: {}\n", g.order());
            s += &format!("abelian: {}\n", g.is_abelian());
            s += &format!("exponent: {}\n", g.exponent());
            s += &format!("classes: {}\n", cls.len());
            s += &format!(
                "center: order {} {{{}}}\n",
                center.order(),
                names(&g, &center.members).join(", ")
            );
            s += &format!("derived subgroup: order {}\n", derived.order());
            s += &format!("all non-central centralizers abelian: {}\n\n", g.is_tc());
            s + &rows.to_table()
        }
    })
}

/// Splits on `;` and on commas outside brackets.
fn split_top_level(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' | '<' => depth += 1,
            ')' | ']' | '>' => depth -= 1,
            ',' | ';' if depth == 0 => {
                out.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(text[start..].trim());
    out.into_iter().filter(|s| !s.is_empty()).collect()
}

/// Resolves an element by name, then as a permutation in cycle notation,
/// then as an index.
fn resolve_element(g: &GroupTable, token: &str) -> Result<usize, Failure> {
    if let Some(x) = g.names().and_then(|ns| ns.iter().position(|n| n == token)) {
        return Ok(x);
    }
    if let Some(perms) = g.perms() {
        if let Ok(p) = Perm::parse_cycles(token, perms[0].degree()) {
            if let Some(x) = g.index_of_perm(&p) {
                return Ok(x);
            }
        }
    }
    if let Some(x) = token.strip_prefix('#').unwrap_or(token).parse::<usize>().ok().filter(|&x| x < g.order()) {
        return Ok(x);
    }
    Err(Failure::usage(format!("`{token}` is not an element of the group")))
}

fn value_rows(g: &GroupTable, e: &Evaluation) -> Result<Vec<ClassRow>, Failure> {
    let row = |x: usize, size: usize, value: String| -> Result<ClassRow, Failure> {
        Ok(ClassRow {
            rep: g.name(x),
            rep_order: g.element_order(x)?,
            size,
            value,
        })
    };
    match &e.count {
        None => Ok(vec![row(0, 1, e.identity.to_string())?]),
        Some(c) => match c.class_values() {
            Ok(values) => {
                let cls = g.classes();
                cls.reps
                    .iter()
                    .zip(&cls.sizes)
                    .zip(values)
                    .map(|((&r, &s), v)| row(r, s, v.to_string()))
                    .collect()
            }
            // restricted counts need not be class functions of G
            Err(_) => {
                let members: Vec<usize> = match &c.restriction {
                    Some(m) => m.clone(),
                    None => (0..g.order()).collect(),
                };
                members.into_iter().map(|x| row(x, 1, c.at(x).to_string())).collect()
            }
        },
    }
}

fn coefficient_rows(table: &CharacterTable, coeffs: &[String]) -> Vec<CoeffRow> {
    table
        .labels()
        .iter()
        .zip(table.degrees())
        .zip(coeffs)
        .map(|((l, &d), c)| CoeffRow {
            character: l.clone(),
            degree: d,
            coefficient: c.clone(),
        })
        .collect()
}

/// Coefficients of an evaluation: those computed by the method itself, or
/// else the decomposition of its values when a table is available.
fn coefficients_of(
    group: &Arc<GroupTable>,
    e: &Evaluation,
    provider: &Provider,
) -> Result<Vec<CoeffRow>, Failure> {
    if let (Some(t), Some(c)) = (&e.table, &e.coeffs) {
        let text: Vec<String> = c.iter().map(BigRational::to_string).collect();
        return Ok(coefficient_rows(t, &text));
    }
    let Some(count) = &e.count else {
        return Ok(Vec::new());
    };
    let Ok(cf) = count.to_class_function() else {
        return Ok(Vec::new());
    };
    let table = match e.table.clone() {
        Some(t) => t,
        None => match build_table(group, provider) {
            Ok(t) => t,
            Err(Error::ProviderMismatch { .. }) => return Ok(Vec::new()),
            Err(err) => return Err(err.into()),
        },
    };
    let text: Vec<String> = decompose(&cf, &table)?.iter().map(ToString::to_string).collect();
    Ok(coefficient_rows(&table, &text))
}

fn report_rows(r: &CountReport) -> (Rows, Rows) {
    let mut classes = Rows::new(&["rep", "rep_order", "size", "value"]);
    for c in &r.classes {
        classes.push(vec![c.rep.clone(), c.rep_order.to_string(), c.size.to_string(), c.value.clone()]);
    }
    let mut coeffs = Rows::new(&["character", "degree", "coefficient"]);
    for c in &r.coefficients {
        coeffs.push(vec![c.character.clone(), c.degree.to_string(), c.coefficient.clone()]);
    }
    (classes, coeffs)
}

pub fn count(a: &CountArgs) -> CmdResult {
    let group = make_group(&a.group)?;
    let function: FnSpec = a.function.parse()?;
    let method: Method = a.method.parse()?;
    let provider = provider(&a.table)?;
    let gens = match &a.subgroup {
        Some(text) => Some(
            split_top_level(text)
                .into_iter()
                .map(|t| resolve_element(&group, t))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        None => None,
    };
    let subgroup = gens.map(|gs| group.subgroup_generated(&gs)).transpose()?;
    let opts = EvalOptions {
        provider: &provider,
        table: None,
        subgroup: subgroup.as_ref(),
        budget: a.budget,
    };
    let e = harness::evaluate(&group, function, method, opts)?;
    let report = CountReport {
        group: a.group.clone(),
        function: function.kind.to_string(),
        n: function.n,
        method: method.to_string(),
        classes: value_rows(&group, &e)?,
        coefficients: if subgroup.is_some() {
            Vec::new()
        } else {
            coefficients_of(&group, &e, &provider)?
        },
        timing_ms: if a.no_timing { 0 } else { e.elapsed.as_millis() as u64 },
    };
    if let Some(path) = &a.output {
        save_report(&report, path)?;
    }
    let (classes, coeffs) = report_rows(&report);
    Ok(match a.format {
        Format::Json => report.to_json(),
        Format::Csv => classes.to_csv(),
        Format::Table => {
            let mut s = format!("group: {}\nfunction: {function}\nmethod: {method}\n", a.group);
            if let Some(h) = &subgroup {
                s += &format!("restricted to a subgroup of order {}\n", h.order());
            }
            s += "\n";
            s += &classes.to_table();
            if !coeffs.rows.is_empty() {
                s += "\n";
                s += &coeffs.to_table();
            }
            s
        }
    })
}

pub fn coeffs(a: &CoeffsArgs) -> CmdResult {
    let group = make_group(&a.group)?;
    let function: FnSpec = a.function.parse()?;
    let method: Method = a.method.parse()?;
    if !matches!(method, Method::Character | Method::ClosedForm | Method::Brute) {
        return Err(Failure::usage(format!(
            "coefficients come from the character, closed or brute methods, not {method}"
        )));
    }
    let provider = provider(&a.table)?;
    let opts = EvalOptions {
        provider: &provider,
        budget: a.budget,
        ..EvalOptions::default()
    };
    let mut e = harness::evaluate(&group, function, method, opts)?;
    if e.table.is_none() {
        e.table = Some(build_table(&group, &provider)?);
    }
    let rows = coefficients_of(&group, &e, &provider)?;
    let mut out = Rows::new(&["character", "degree", "coefficient"]);
    for r in &rows {
        out.push(vec![r.character.clone(), r.degree.to_string(), r.coefficient.clone()]);
    }
    let vector: Vec<&str> = rows.iter().map(|r| r.coefficient.as_str()).collect();
    Ok(match a.format {
        Format::Json => pretty(&json!({
            "group": a.group,
            "function": function.to_string(),
            "method": method.to_string(),
            "table": e.table.as_ref().map(|t| t.provenance().to_string()),
            "coefficients": out.to_json_value(),
        })),
        Format::Csv => out.to_csv(),
        Format::Table => format!("{}\n{}\n", out.to_table(), vector.join(",")),
    })
}

fn percent(q: &BigRational) -> String {
    // annotated decimal column; the exact value is printed alongside
    let scaled = q * BigRational::from_integer(BigInt::from(10_000));
    let hundredths = scaled.round().to_integer();
    let (whole, frac) = (&hundredths / 100, (&hundredths % 100 + 100) % 100);
    format!("{whole}.{frac:0>2}%")
}

pub fn dist(a: &DistArgs) -> CmdResult {
    let group = make_group(&a.group)?;
    if a.convolve == 0 {
        return Err(Failure::usage("--convolve must be at least 1"));
    }
    let f2 = brute_f_n(&group, 2, None, a.budget)?;
    let f3 = brute_f_n(&group, 3, None, a.budget)?;
    let d = q3(&f3)?;
    let cls = group.classes();
    let mut masses = Rows::new(&["rep", "size", "q3"]);
    for (&r, &s) in cls.reps.iter().zip(&cls.sizes) {
        masses.push(vec![group.name(r), s.to_string(), d.mass(r).to_string()]);
    }
    let trace = convolution_trace(&d, a.convolve)?;
    let header: &[&str] = if a.l1 {
        &["k", "support", "l1", "l1_percent"]
    } else {
        &["k", "support"]
    };
    let mut powers = Rows::new(header);
    for (i, (&s, l1)) in trace.support_sizes.iter().zip(&trace.l1).enumerate() {
        let mut row = vec![(i + 1).to_string(), s.to_string()];
        if a.l1 {
            row.push(l1.to_string());
            row.push(percent(l1));
        }
        powers.push(row);
    }
    let p2 = p_n(&f2, 0)?;
    let p3 = p_n(&f3, 0)?;
    let saturation = trace.first_saturation.map_or("not reached".to_string(), |k| k.to_string());
    Ok(match a.format {
        Format::Json => pretty(&json!({
            "group": a.group,
            "p2_identity": p2.to_string(),
            "p3_identity": p3.to_string(),
            "q3": masses.to_json_value(),
            "target_size": trace.target_size,
            "first_saturation": trace.first_saturation,
            "powers": powers.to_json_value(),
        })),
        Format::Csv => powers.to_csv(),
        Format::Table => format!(
            "group: {}\nP2(1) = {p2}\nP3(1) = {p3}\n\n{}\nsubgroup generated by the support: order {}\nfirst saturation: {saturation}\n\n{}",
            a.group,
            masses.to_table(),
            trace.target_size,
            powers.to_table()
        ),
    })
}

pub fn bounds(spec: &str, table: &str, budget: u128, format: Format) -> CmdResult {
    let group = make_group(spec)?;
    let t = build_table(&group, &provider(table)?)?;
    let f2 = brute_f_n(&group, 2, None, budget)?;
    let f3 = brute_f_n(&group, 3, None, budget)?;
    let r = bounds_report(spec, &f2, &f3, &t)?;
    let mut rows = Rows::new(&["bound", "at", "lhs", "rhs", "verdict"]);
    for rec in &r.records {
        rows.push(vec![
            rec.name.clone(),
            rec.at.clone().unwrap_or_else(|| "-".into()),
            rec.lhs.clone(),
            rec.rhs.clone(),
            rec.verdict.to_string(),
        ]);
    }
    let text = match format {
        Format::Json => pretty(&json!({
            "group": spec,
            "alpha": r.alpha.to_string(),
            "p2_identity": r.p2_1.to_string(),
            "p3_identity": r.p3_1.to_string(),
            "abelian": r.abelian,
            "records": rows.to_json_value(),
        })),
        Format::Csv => rows.to_csv(),
        Format::Table => {
            let mut s = format!(
                "group: {spec}\nalpha = 1/|G:Z(G)| = {}\nP2(1) = {}\nP3(1) = {}\n",
                r.alpha, r.p2_1, r.p3_1
            );
            if r.abelian {
                s += "abelian group: every P_n(1) is 1, nothing to bound\n";
            } else {
                s += "\n";
                s += &rows.to_table();
            }
            s
        }
    };
    let failed = r.records.iter().filter(|x| x.verdict == Verdict::Fails).count();
    if failed > 0 {
        return Err(Failure::verification(format!("{failed} bounds fail"), text));
    }
    Ok(text)
}

pub fn ore(spec: &str, k: usize, budget: u128, format: Format) -> CmdResult {
    let group = make_group(spec)?;
    let set = ore_set(&group, k, budget)?;
    let cls = group.classes();
    let mut rows = Rows::new(&["rep", "order", "size"]);
    for (c, &r) in cls.reps.iter().enumerate() {
        if set.binary_search(&r).is_ok() {
            rows.push(vec![group.name(r), group.element_order(r)?.to_string(), cls.sizes[c].to_string()]);
        }
    }
    let derived = group.derived_subgroup().members;
    let equals = if set.len() == group.order() {
        "the whole group"
    } else if set == derived {
        "the derived subgroup"
    } else if set == [0] {
        "the trivial subgroup"
    } else {
        "a proper union of classes"
    };
    Ok(match format {
        Format::Json => pretty(&json!({
            "group": spec,
            "k": k,
            "size": set.len(),
            "order": group.order(),
            "equals": equals,
            "classes": rows.to_json_value(),
        })),
        Format::Csv => rows.to_csv(),
        Format::Table => format!(
            "group: {spec}\nO_{k}: {} of {} elements, {} of {} classes ({equals})\n\n{}",
            set.len(),
            group.order(),
            rows.rows.len(),
            cls.len(),
            rows.to_table()
        ),
    })
}

pub fn triple(n: usize, g: &str) -> CmdResult {
    let target = Perm::parse_cycles(g, n)?;
    let t = ore_triple_symmetric(n, &target)?;
    let mut s = format!("g  = {}\n", t.target);
    for (i, x) in t.triple.iter().enumerate() {
        s += &format!("x{} = {x}\n", i + 1);
    }
    s += "\nblocks:\n";
    for b in &t.blocks {
        let cycles: Vec<String> = b
            .cycles
            .iter()
            .map(|c| format!("({})", c.iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        s += &format!("  {}  {}\n", cycles.join(""), b.method);
    }
    s += "\n";
    let sym = SymmetricOn(n);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let c = t.triple[i].commutator(&t.triple[j]);
        s += &format!("[x{},x{}] = {c}  {}\n", i + 1, j + 1, if c == t.target { "ok" } else { "MISMATCH" });
    }
    if !verify_triple(&sym, &t.triple, &t.target) {
        return Err(Failure::verification("the triple does not verify", s));
    }
    Ok(s)
}

pub fn verify(suite: &str, format: Format) -> CmdResult {
    let suite: Suite = suite.parse()?;
    let outcomes = run_suite(suite);
    let failed = outcomes.iter().filter(|o| o.is_failure()).count();
    let text = match format {
        Format::Table => {
            let mut s: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
            s += &format!("{suite}: {} criteria, {failed} failed\n", outcomes.len());
            s
        }
        _ => {
            let mut rows = Rows::new(&["id", "status", "criterion", "detail"]);
            for o in &outcomes {
                rows.push(vec![o.id.to_string(), o.status().into(), o.name.into(), o.detail.clone()]);
            }
            if format == Format::Csv {
                rows.to_csv()
            } else {
                pretty(&Value::Array(
                    outcomes
                        .iter()
                        .map(|o| {
                            json!({
                                "id": o.id,
                                "status": o.status(),
                                "criterion": o.name,
                                "detail": o.detail,
                            })
                        })
                        .collect(),
                ))
            }
        }
    };
    if failed > 0 {
        return Err(Failure::verification(format!("{failed} criteria failed"), text));
    }
    Ok(text)
}

fn millis(d: std::time::Duration) -> String {
    format!("{:.3}", d.as_secs_f64() * 1e3)
}

pub fn bench(a: &BenchArgs) -> CmdResult {
    let group = make_group(&a.group)?;
    let function: FnSpec = a.function.parse()?;
    let methods: Vec<Method> = split_top_level(&a.methods)
        .into_iter()
        .map(str::parse)
        .collect::<Result<_, _>>()?;
    let provider = provider(&a.table)?;
    let opts = EvalOptions {
        provider: &provider,
        budget: a.budget,
        ..EvalOptions::default()
    };
    let r = harness::bench(&a.group, &group, function, &methods, a.repeat, opts)?;
    let baseline = methods[0];
    let mut rows = Rows::new(&["method", "runs", "mean_ms", "min_ms", "speedup"]);
    for row in &r.rows {
        let speed = r
            .speedup(row.method, baseline)
            .map_or("-".to_string(), |x| format!("{x:.2}x"));
        rows.push(vec![row.method.to_string(), row.runs.to_string(), millis(row.mean), millis(row.min), speed]);
    }
    let mut s = format!(
        "group: {}\nfunction: {function}\nall {} methods agree at every element; {function}(1) = {}\n",
        a.group,
        methods.len(),
        r.identity
    );
    if let Some(d) = r.table_build {
        s += &format!("character table build (excluded below): {} ms\n", millis(d));
    }
    s += &format!("timings after one untimed warm-up run; speedup relative to {baseline}\n\n");
    Ok(s + &rows.to_table())
}
