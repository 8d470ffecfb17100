//! One entry point for every way of computing `f_n` and `t_n`, and the
//! correctness-gated timing harness built on it.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;

use crate::characters::{build_table, CharacterTable, Provider};
use crate::counts::{
    brute_f3_naive, brute_f_n, brute_f_n_naive, brute_t_n, count_from_coeffs, f2_frobenius,
    f3_coeffs, recursive_fn1, t_coeffs, CountFunction, CountKind, DEFAULT_BUDGET,
};
use crate::dihedral::{f3_coeffs_closed, t3_coeffs_closed};
use crate::error::{Error, Result};
use crate::group::{GroupSpec, GroupTable, Subgroup};

/// Which counting function: `f_n` (all pairs) or `t_n` (star system).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FnSpec {
    pub kind: CountKind,
    pub n: usize,
}

impl FnSpec {
    pub fn f(n: usize) -> Self {
        FnSpec { kind: CountKind::F, n }
    }

    pub fn t(n: usize) -> Self {
        FnSpec { kind: CountKind::T, n }
    }
}

impl FromStr for FnSpec {
    type Err = Error;

    /// Accepts `f2`, `f3`, `t3`, `fn:<n>`, `tn:<n>` (and `f<n>`, `t<n>`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::spec(s, "expected f2, f3, t3, fn:<n> or tn:<n>");
        let t = s.trim();
        let (kind, rest) = if let Some(r) = t.strip_prefix("fn:") {
            (CountKind::F, r)
        } else if let Some(r) = t.strip_prefix("tn:") {
            (CountKind::T, r)
        } else if let Some(r) = t.strip_prefix('f') {
            (CountKind::F, r)
        } else if let Some(r) = t.strip_prefix('t') {
            (CountKind::T, r)
        } else {
            return Err(bad());
        };
        let n: usize = rest.parse().map_err(|_| bad())?;
        if n < 2 {
            return Err(Error::spec(s, "n must be at least 2"));
        }
        Ok(FnSpec { kind, n })
    }
}

impl fmt::Display for FnSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// The optimized enumeration oracle.
    Brute,
    /// Plain enumeration of all tuples (`|G|³` loop for `f_3`).
    BruteNaive,
    /// Character formulas: Frobenius for `f_2`, the θ-weights for `f_3`,
    /// the conjugation character for `t_n`.
    Character,
    /// Dihedral closed forms.
    ClosedForm,
    /// The centralizer recursion for `f_n(1)`; identity value only.
    Recursive,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Brute,
        Method::BruteNaive,
        Method::Character,
        Method::ClosedForm,
        Method::Recursive,
    ];
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "brute" => Ok(Method::Brute),
            "brute-naive" | "naive" => Ok(Method::BruteNaive),
            "character" => Ok(Method::Character),
            "closed" | "closed-form" => Ok(Method::ClosedForm),
            "recursive" => Ok(Method::Recursive),
            _ => Err(Error::spec(
                s,
                "expected brute, brute-naive, character, closed or recursive",
            )),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Brute => "brute",
            Method::BruteNaive => "brute-naive",
            Method::Character => "character",
            Method::ClosedForm => "closed-form",
            Method::Recursive => "recursive",
        })
    }
}

/// Inputs shared by all methods.
#[derive(Clone, Copy)]
pub struct EvalOptions<'a> {
    pub provider: &'a Provider,
    /// A prebuilt table for the character and closed-form paths; when absent
    /// one is built from `provider` (or the dihedral closed form).
    pub table: Option<&'a CharacterTable>,
    /// Restrict every unknown to this subgroup (enumeration methods only).
    pub subgroup: Option<&'a Subgroup<'a>>,
    pub budget: u128,
}

impl Default for EvalOptions<'_> {
    fn default() -> Self {
        EvalOptions {
            provider: &Provider::Auto,
            table: None,
            subgroup: None,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Evaluation {
    pub function: FnSpec,
    pub method: Method,
    /// Per-element values; absent for the recursive method.
    pub count: Option<CountFunction>,
    /// The value at the identity.
    pub identity: BigUint,
    /// The table and coefficients used by the character and closed-form
    /// paths.
    pub table: Option<CharacterTable>,
    pub coeffs: Option<Vec<BigRational>>,
    pub elapsed: Duration,
}

fn unsupported(method: Method, function: FnSpec, why: &str) -> Error {
    Error::Precondition(format!("method {method} does not support {function}: {why}"))
}

fn dihedral_parameter(group: &GroupTable) -> Option<usize> {
    match group.family() {
        Some(GroupSpec::Dihedral(n)) => Some(*n),
        _ => None,
    }
}

/// Computes `function` on `group` by `method`.
pub fn evaluate(
    group: &Arc<GroupTable>,
    function: FnSpec,
    method: Method,
    opts: EvalOptions<'_>,
) -> Result<Evaluation> {
    let start = Instant::now();
    let FnSpec { kind, n } = function;
    if opts.subgroup.is_some() && !matches!(method, Method::Brute | Method::BruteNaive) {
        return Err(unsupported(method, function, "subgroup restriction needs an enumeration method"));
    }
    if opts.subgroup.is_some() && kind == CountKind::T {
        return Err(unsupported(method, function, "subgroup restriction applies to f_n only"));
    }
    let table_for = |fallback: &Provider| -> Result<CharacterTable> {
        match opts.table {
            Some(t) if Arc::ptr_eq(t.group(), group) || **t.group() == **group => Ok(t.clone()),
            Some(_) => Err(Error::GroupMismatch),
            None => build_table(group, fallback),
        }
    };
    let mut table = None;
    let mut coeffs = None;
    let count = match (method, kind) {
        (Method::Brute, CountKind::F) => Some(brute_f_n(group, n, opts.subgroup, opts.budget)?),
        (Method::Brute, CountKind::T) => Some(brute_t_n(group, n, opts.budget)?),
        (Method::BruteNaive, CountKind::F) => Some(if n == 3 && opts.subgroup.is_none() {
            brute_f3_naive(group, opts.budget)?
        } else {
            brute_f_n_naive(group, n, opts.subgroup, opts.budget)?
        }),
        (Method::BruteNaive, CountKind::T) => {
            return Err(unsupported(method, function, "use brute for t_n"))
        }
        (Method::Character, CountKind::F) => {
            let t = table_for(opts.provider)?;
            let c = match n {
                2 => f2_frobenius(&t)?,
                3 => {
                    let a = f3_coeffs(&t)?;
                    let c = count_from_coeffs(&t, &a, CountKind::F, 3)?;
                    coeffs = Some(a);
                    c
                }
                _ => return Err(unsupported(method, function, "no character formula for n >= 4")),
            };
            table = Some(t);
            Some(c)
        }
        (Method::Character, CountKind::T) => {
            let t = table_for(opts.provider)?;
            let a = t_coeffs(&t, n)?;
            let c = count_from_coeffs(&t, &a, CountKind::T, n)?;
            coeffs = Some(a);
            table = Some(t);
            Some(c)
        }
        (Method::ClosedForm, _) => {
            let d = dihedral_parameter(group).ok_or_else(|| {
                unsupported(method, function, "closed forms require a dihedral:n group")
            })?;
            let closed = match (kind, n) {
                (CountKind::F, 3) => f3_coeffs_closed(d)?,
                (CountKind::T, 3) => t3_coeffs_closed(d)?,
                _ => return Err(unsupported(method, function, "closed forms exist for f3 and t3")),
            };
            let t = table_for(&Provider::DihedralClosedForm)?;
            if t.provenance() != crate::characters::Provenance::ClosedFormDihedral {
                return Err(unsupported(method, function, "closed forms need the dihedral closed-form table"));
            }
            let a = closed.to_vec();
            let c = count_from_coeffs(&t, &a, kind, n)?;
            coeffs = Some(a);
            table = Some(t);
            Some(c)
        }
        (Method::Recursive, CountKind::F) => None,
        (Method::Recursive, CountKind::T) => {
            return Err(unsupported(method, function, "the recursion computes f_n(1)"))
        }
    };
    let identity = match &count {
        Some(c) => BigUint::from(c.at(0)),
        None => recursive_fn1(group, n, opts.budget)?,
    };
    Ok(Evaluation {
        function,
        method,
        count,
        identity,
        table,
        coeffs,
        elapsed: start.elapsed(),
    })
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub method: Method,
    pub runs: usize,
    pub mean: Duration,
    pub min: Duration,
}

/// Timings of methods that were first checked to agree on every value.
#[derive(Debug, Clone)]
pub struct BenchReport {
    pub group: String,
    pub function: FnSpec,
    pub identity: BigUint,
    /// Time to build and validate the character table, which the character
    /// and closed-form timings exclude.
    pub table_build: Option<Duration>,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    /// How many times faster `method` is than `baseline` (mean wall-clock).
    pub fn speedup(&self, method: Method, baseline: Method) -> Option<f64> {
        let mean = |m| self.rows.iter().find(|r| r.method == m).map(|r| r.mean.as_secs_f64());
        let (a, b) = (mean(method)?, mean(baseline)?);
        (a > 0.0).then(|| b / a)
    }
}

/// Runs every method once, refuses to continue unless all agree exactly
/// (per element, or at the identity for the recursive method), then times
/// `repeat` further runs of each. The agreement run is the warm-up and is
/// not timed.
pub fn bench(
    spec: &str,
    group: &Arc<GroupTable>,
    function: FnSpec,
    methods: &[Method],
    repeat: usize,
    opts: EvalOptions<'_>,
) -> Result<BenchReport> {
    if methods.is_empty() {
        return Err(Error::Precondition("no methods to compare".into()));
    }
    if repeat == 0 {
        return Err(Error::Precondition("repeat must be at least 1".into()));
    }
    let needs_table = methods
        .iter()
        .any(|m| matches!(m, Method::Character | Method::ClosedForm));
    let (table, table_build) = match (opts.table, needs_table) {
        (None, true) => {
            let start = Instant::now();
            let provider = if methods.contains(&Method::ClosedForm) && *opts.provider == Provider::Auto {
                Provider::DihedralClosedForm
            } else {
                opts.provider.clone()
            };
            let t = build_table(group, &provider)?;
            (Some(t), Some(start.elapsed()))
        }
        (t, _) => (t.cloned(), None),
    };
    let opts = EvalOptions {
        table: table.as_ref(),
        ..opts
    };
    let warm: Vec<Evaluation> = methods
        .iter()
        .map(|&m| evaluate(group, function, m, opts))
        .collect::<Result<_>>()?;
    let reference = &warm[0];
    for e in &warm[1..] {
        if e.identity != reference.identity {
            return Err(Error::Disagreement(format!(
                "{function}(1): {} gives {}, {} gives {}",
                reference.method, reference.identity, e.method, e.identity
            )));
        }
        if let (Some(a), Some(b)) = (&reference.count, &e.count) {
            if let Some(x) = (0..group.order()).find(|&x| a.at(x) != b.at(x)) {
                return Err(Error::Disagreement(format!(
                    "{function}({}): {} gives {}, {} gives {}",
                    group.name(x),
                    reference.method,
                    a.at(x),
                    e.method,
                    b.at(x)
                )));
            }
        }
    }
    let mut rows = Vec::with_capacity(methods.len());
    for &m in methods {
        let mut total = Duration::ZERO;
        let mut min = Duration::MAX;
        for _ in 0..repeat {
            let d = evaluate(group, function, m, opts)?.elapsed;
            total += d;
            min = min.min(d);
        }
        rows.push(BenchRow {
            method: m,
            runs: repeat,
            mean: total / repeat as u32,
            min,
        });
    }
    Ok(BenchReport {
        group: spec.to_string(),
        function,
        identity: reference.identity.clone(),
        table_build,
        rows,
    })
}
