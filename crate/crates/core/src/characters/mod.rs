//! Class functions, character tables and their validation.

mod providers;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclotomic::{Cyclo, DotAccumulator};
use crate::error::{Error, Result};
use crate::group::GroupTable;

pub use providers::{auto_provider, build_table, hook_degree, mn_character, partitions, Provider};

/// A function on conjugacy classes, indexed like [`GroupTable::classes`].
#[derive(Clone)]
pub struct ClassFunction {
    group: Arc<GroupTable>,
    values: Vec<Cyclo>,
}

impl ClassFunction {
    pub fn new(group: Arc<GroupTable>, values: Vec<Cyclo>) -> Result<Self> {
        let k = group.class_count();
        if values.len() != k {
            return Err(Error::Precondition(format!(
                "class function has {} values, group has {k} classes",
                values.len()
            )));
        }
        Ok(ClassFunction { group, values })
    }

    /// Evaluates `f` at every class representative.
    pub fn from_reps(group: Arc<GroupTable>, f: impl Fn(usize) -> Cyclo) -> Self {
        let values = group.classes().reps.iter().map(|&r| f(r)).collect();
        ClassFunction { group, values }
    }

    pub fn constant(group: Arc<GroupTable>, v: Cyclo) -> Self {
        let values = vec![v; group.class_count()];
        ClassFunction { group, values }
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn values(&self) -> &[Cyclo] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Cyclo> {
        self.values
    }

    /// Value at an element.
    pub fn at(&self, g: usize) -> &Cyclo {
        &self.values[self.group.class_of(g)]
    }

    pub fn same_group(&self, other: &ClassFunction) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group
    }

    fn zip(&self, other: &ClassFunction, f: impl Fn(&Cyclo, &Cyclo) -> Cyclo) -> Result<Self> {
        if !self.same_group(other) {
            return Err(Error::GroupMismatch);
        }
        Ok(ClassFunction {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &ClassFunction) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &ClassFunction) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, c: &Cyclo) -> Self {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(Cyclo::conj).collect(),
        }
    }

    /// Values as exact rationals, when all of them are rational.
    pub fn rational_values(&self) -> Result<Vec<BigRational>> {
        self.values.iter().map(Cyclo::to_rational).collect()
    }

    /// Values as integers, when all of them are integers.
    pub fn integer_values(&self) -> Result<Vec<BigInt>> {
        self.values.iter().map(Cyclo::to_integer).collect()
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.same_group(other) && self.values == other.values
    }
}

impl fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.values.iter().map(|v| v.to_string())).finish()
    }
}

/// `Σ w_i · a_i · b_i` (or `w_i · a_i` when `b_i` is `None`), exact.
/// Goes through integer coordinates when possible.
pub(crate) fn weighted_products(terms: &[(BigInt, &Cyclo, Option<&Cyclo>)]) -> Cyclo {
    let m = terms.iter().fold(1usize, |m, (_, a, b)| {
        let m = m.lcm(&a.conductor());
        b.map_or(m, |b| m.lcm(&b.conductor()))
    });
    if let Some(v) = fast_weighted_products(m, terms) {
        return v;
    }
    terms
        .iter()
        .map(|(w, a, b)| {
            let p = match b {
                Some(b) => *a * *b,
                None => (*a).clone(),
            };
            p.scale(&BigRational::from_integer(w.clone()))
        })
        .sum()
}

fn fast_weighted_products(m: usize, terms: &[(BigInt, &Cyclo, Option<&Cyclo>)]) -> Option<Cyclo> {
    let mut acc = DotAccumulator::new(m);
    let mut unit = vec![0i64; crate::cyclotomic::euler_phi(m)];
    unit[0] = 1;
    for (w, a, b) in terms {
        let w = w.to_i64()?;
        let ac = a.integral_coords(m)?;
        match b {
            Some(b) => acc.add_product(w, &ac, &b.integral_coords(m)?),
            None => acc.add_product(w, &ac, &unit),
        }
    }
    acc.finish()
}

fn common_denominator(values: &[Cyclo]) -> BigInt {
    values
        .iter()
        .flat_map(|v| v.coeffs().iter().map(|c| c.denom().clone()))
        .fold(BigInt::one(), |a, d| a.lcm(&d))
}

/// `⟨f, h⟩ = (1/|G|) Σ_g f(g)·conj(h(g))`, computed classwise.
pub fn inner_product(f: &ClassFunction, h: &ClassFunction) -> Result<Cyclo> {
    if !f.same_group(h) {
        return Err(Error::GroupMismatch);
    }
    let g = &f.group;
    let sizes = &g.classes().sizes;
    // Clear denominators so the integer path applies to rational-valued data.
    let df = common_denominator(&f.values);
    let hc: Vec<Cyclo> = h.values.iter().map(Cyclo::conj).collect();
    let dh = common_denominator(&hc);
    let fs: Vec<Cyclo> = f.values.iter().map(|v| v.scale(&BigRational::from_integer(df.clone()))).collect();
    let hs: Vec<Cyclo> = hc.iter().map(|v| v.scale(&BigRational::from_integer(dh.clone()))).collect();
    let terms: Vec<(BigInt, &Cyclo, Option<&Cyclo>)> = sizes
        .iter()
        .zip(fs.iter().zip(&hs))
        .map(|(&s, (a, b))| (BigInt::from(s), a, Some(b)))
        .collect();
    let total = weighted_products(&terms);
    let scale = BigRational::new(BigInt::one(), df * dh * BigInt::from(g.order()));
    Ok(total.scale(&scale))
}

/// ϑ(x) = |C_G(x)|, the character of the conjugation action.
pub fn conjugation_character(group: &Arc<GroupTable>) -> ClassFunction {
    let g = group.clone();
    ClassFunction::from_reps(group.clone(), move |r| {
        Cyclo::from_integer(g.centralizer_order(r) as i64)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ClosedFormDihedral,
    ClosedFormCyclic,
    MurnaghanNakayama,
    Abelian,
    Product,
    FileImport,
    Bundled,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Provenance::ClosedFormDihedral => "closed-form-dihedral",
            Provenance::ClosedFormCyclic => "closed-form-cyclic",
            Provenance::MurnaghanNakayama => "murnaghan-nakayama",
            Provenance::Abelian => "abelian",
            Provenance::Product => "product",
            Provenance::FileImport => "file-import",
            Provenance::Bundled => "bundled",
        };
        f.write_str(s)
    }
}

/// The irreducible characters of a group.
#[derive(Clone)]
pub struct CharacterTable {
    group: Arc<GroupTable>,
    irreducibles: Vec<ClassFunction>,
    degrees: Vec<u64>,
    labels: Vec<String>,
    provenance: Provenance,
    validated: bool,
}

impl fmt::Debug for CharacterTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CharacterTable")
            .field("group", &self.group)
            .field("provenance", &self.provenance)
            .field("degrees", &self.degrees)
            .field("validated", &self.validated)
            .finish()
    }
}

impl CharacterTable {
    /// An unvalidated table. Degrees are read off the identity class and must
    /// be positive integers.
    pub fn from_parts(
        group: Arc<GroupTable>,
        irreducibles: Vec<ClassFunction>,
        labels: Vec<String>,
        provenance: Provenance,
    ) -> Result<Self> {
        let mut degrees = Vec::with_capacity(irreducibles.len());
        for (i, chi) in irreducibles.iter().enumerate() {
            if !Arc::ptr_eq(chi.group(), &group) && **chi.group() != *group {
                return Err(Error::GroupMismatch);
            }
            let d = chi.values()[0]
                .to_integer()
                .ok()
                .filter(|d| d.is_positive())
                .and_then(|d| d.to_u64())
                .ok_or_else(|| {
                    Error::TableRejected(format!(
                        "character {} has degree {} which is not a positive integer",
                        i + 1,
                        chi.values()[0]
                    ))
                })?;
            degrees.push(d);
        }
        let labels = if labels.len() == irreducibles.len() {
            labels
        } else {
            (1..=irreducibles.len()).map(|i| format!("chi{i}")).collect()
        };
        Ok(CharacterTable {
            group,
            irreducibles,
            degrees,
            labels,
            provenance,
            validated: false,
        })
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    /// Runs [`validate_table`] and marks the table validated when every check
    /// passes.
    pub fn validate(&mut self) -> ValidationReport {
        let report = validate_table(self);
        self.validated = report.passed();
        report
    }

    /// Validates and returns the table, or rejects it.
    pub fn validated(mut self) -> Result<Self> {
        let report = self.validate();
        if report.passed() {
            Ok(self)
        } else {
            Err(Error::TableRejected(report.failures().join("; ")))
        }
    }

    /// Replaces one value; used to exercise validation.
    pub fn with_value(&self, chi: usize, class: usize, v: Cyclo) -> Self {
        let mut t = self.clone();
        t.irreducibles[chi].values[class] = v;
        t.validated = false;
        t
    }

    pub(crate) fn require_validated(&self) -> Result<()> {
        if self.validated {
            Ok(())
        } else {
            Err(Error::Precondition("character table has not been validated".into()))
        }
    }
}

/// `α_χ = ⟨f, χ⟩` for every irreducible of the table.
pub fn decompose(f: &ClassFunction, table: &CharacterTable) -> Result<Vec<Cyclo>> {
    table.require_validated()?;
    if !f.same_group(&table.irreducibles[0]) {
        return Err(Error::GroupMismatch);
    }
    table
        .irreducibles
        .iter()
        .map(|chi| inner_product(f, chi))
        .collect()
}

/// `Σ α_χ χ`.
pub fn reconstruct(coeffs: &[Cyclo], table: &CharacterTable) -> Result<ClassFunction> {
    if coeffs.len() != table.len() {
        return Err(Error::Precondition(format!(
            "{} coefficients for {} characters",
            coeffs.len(),
            table.len()
        )));
    }
    let k = table.group.class_count();
    let values = (0..k)
        .map(|c| {
            let scaled: Vec<Cyclo> = coeffs
                .iter()
                .zip(&table.irreducibles)
                .map(|(a, chi)| a * &chi.values[c])
                .collect();
            scaled.into_iter().sum()
        })
        .collect();
    ClassFunction::new(table.group.clone(), values)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<CheckRecord>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect()
    }

    fn push(&mut self, name: &str, failures: Vec<String>, ok_detail: String) {
        let passed = failures.is_empty();
        let detail = if passed {
            ok_detail
        } else {
            let shown: Vec<_> = failures.iter().take(4).cloned().collect();
            let more = failures.len().saturating_sub(4);
            if more > 0 {
                format!("{} (+{more} more)", shown.join(", "))
            } else {
                shown.join(", ")
            }
        };
        self.checks.push(CheckRecord {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

/// Precomputed integer coordinates of every table value and its conjugate at
/// one common conductor.
struct Coords {
    m: usize,
    val: Vec<Vec<Vec<i64>>>,
    conj: Vec<Vec<Vec<i64>>>,
    unit: Vec<i64>,
}

impl Coords {
    fn new(rows: &[ClassFunction]) -> Option<Coords> {
        let m = rows
            .iter()
            .flat_map(|r| r.values.iter().map(Cyclo::conductor))
            .fold(1usize, |a, b| a.lcm(&b));
        let val = rows
            .iter()
            .map(|r| r.values.iter().map(|v| v.integral_coords(m)).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        let conj = rows
            .iter()
            .map(|r| {
                r.values
                    .iter()
                    .map(|v| v.conj().integral_coords(m))
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        let mut unit = vec![0; crate::cyclotomic::euler_phi(m)];
        unit[0] = 1;
        Some(Coords { m, val, conj, unit })
    }
}

/// Term of a sum of products: weight, `χ_a(class)`, and an optional second
/// factor `conj(χ_b(class))`.
type Term = (i64, (usize, usize), Option<(usize, usize)>);

fn sum_terms(rows: &[ClassFunction], coords: Option<&Coords>, terms: &[Term]) -> Cyclo {
    if let Some(c) = coords {
        let mut acc = DotAccumulator::new(c.m);
        for &(w, (a, ca), b) in terms {
            match b {
                Some((b, cb)) => acc.add_product(w, &c.val[a][ca], &c.conj[b][cb]),
                None => acc.add_product(w, &c.val[a][ca], &c.unit),
            }
        }
        if let Some(v) = acc.finish() {
            return v;
        }
    }
    terms
        .iter()
        .map(|&(w, (a, ca), b)| {
            let x = &rows[a].values[ca];
            let p = match b {
                Some((b, cb)) => x * &rows[b].values[cb].conj(),
                None => x.clone(),
            };
            p.scale_int(w)
        })
        .sum()
}

const PRODUCT_FORMULA_SAMPLES: usize = 50;
const PRODUCT_FORMULA_FULL_CAP: usize = 24;
const PRODUCT_FORMULA_SEED: u64 = 21;

/// Exact checks of a character table: class count, degrees, Σχ(1)² = |G|,
/// row and column orthogonality, integrality, conductors dividing the group
/// exponent, and `χ(g)χ(h) = (χ(1)/|G|) Σ_z χ(g h^z)` on sampled pairs.
pub fn validate_table(table: &CharacterTable) -> ValidationReport {
    let g = &table.group;
    let cls = g.classes();
    let k = cls.len();
    let order = g.order();
    let rows = &table.irreducibles;
    let mut report = ValidationReport::default();

    report.push(
        "class count",
        if rows.len() == k {
            vec![]
        } else {
            vec![format!("{} characters for {k} classes", rows.len())]
        },
        format!("{k} characters"),
    );
    if rows.len() != k {
        return report;
    }

    let degree_sq: u128 = table.degrees.iter().map(|&d| (d as u128) * (d as u128)).sum();
    report.push(
        "degree squares",
        if degree_sq == order as u128 {
            vec![]
        } else {
            vec![format!("sum of squared degrees is {degree_sq}, |G| = {order}")]
        },
        format!("sum = {order}"),
    );

    let exponent = g.exponent();
    let mut bad_cond = Vec::new();
    for (i, chi) in rows.iter().enumerate() {
        for (c, v) in chi.values.iter().enumerate() {
            if !exponent.is_multiple_of(v.conductor()) {
                bad_cond.push(format!("{}[{c}] has conductor {}", table.labels[i], v.conductor()));
            }
        }
    }
    report.push("conductor divides exponent", bad_cond, format!("exponent {exponent}"));

    let coords = Coords::new(rows);
    report.push(
        "algebraic integer coordinates",
        if coords.is_some() {
            vec![]
        } else {
            vec!["some value has non-integral coordinates".into()]
        },
        "all integral".into(),
    );
    let coords = coords.as_ref();

    let mut row_fail = Vec::new();
    for i in 0..k {
        for j in i..k {
            let terms: Vec<Term> = (0..k)
                .map(|c| (cls.sizes[c] as i64, (i, c), Some((j, c))))
                .collect();
            let s = sum_terms(rows, coords, &terms);
            let expect = if i == j { order as i64 } else { 0 };
            if s != Cyclo::from_integer(expect) {
                let v = s.scale(&BigRational::new(BigInt::one(), BigInt::from(order)));
                row_fail.push(format!(
                    "<{},{}> = {v}",
                    table.labels[i], table.labels[j]
                ));
            }
        }
    }
    report.push("row orthogonality", row_fail, "orthonormal".into());

    let mut col_fail = Vec::new();
    for c in 0..k {
        for d in c..k {
            let terms: Vec<Term> = (0..k).map(|i| (1, (i, c), Some((i, d)))).collect();
            let s = sum_terms(rows, coords, &terms);
            let expect = if c == d { (order / cls.sizes[c]) as i64 } else { 0 };
            if s != Cyclo::from_integer(expect) {
                col_fail.push(format!("classes ({c},{d}) sum to {s}, expected {expect}"));
            }
        }
    }
    report.push("column orthogonality", col_fail, "sum |chi(g)|^2 = |C(g)|".into());

    let pairs: Vec<(usize, usize)> = if order <= PRODUCT_FORMULA_FULL_CAP {
        (0..order).flat_map(|x| (0..order).map(move |y| (x, y))).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(PRODUCT_FORMULA_SEED);
        (0..PRODUCT_FORMULA_SAMPLES)
            .map(|_| (rng.gen_range(0..order), rng.gen_range(0..order)))
            .collect()
    };
    let mut prod_fail = Vec::new();
    for &(x, y) in &pairs {
        let mut counts = vec![0i64; k];
        for z in 0..order {
            counts[cls.class_of[g.mul(x, g.conjugate(y, z))]] += 1;
        }
        let (cx, cyi) = (cls.class_of[x], cls.class_of[g.inv(y)]);
        for i in 0..k {
            // |G| χ(x) χ(y), with χ(y) = conj(χ(y⁻¹))
            let lhs = sum_terms(rows, coords, &[(order as i64, (i, cx), Some((i, cyi)))]);
            let terms: Vec<Term> = (0..k)
                .filter(|&c| counts[c] != 0)
                .map(|c| (counts[c] * table.degrees[i] as i64, (i, c), None))
                .collect();
            let rhs = sum_terms(rows, coords, &terms);
            if lhs != rhs {
                prod_fail.push(format!("{} at ({x},{y})", table.labels[i]));
            }
        }
    }
    report.push(
        "product formula",
        prod_fail,
        format!("{} pairs", pairs.len()),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    fn table(spec: &str) -> CharacterTable {
        build_table(&make_group(spec).unwrap(), &Provider::Auto).unwrap()
    }

    #[test]
    fn orthonormal_rows() {
        let t = table("dihedral:7");
        for (i, a) in t.irreducibles().iter().enumerate() {
            for (j, b) in t.irreducibles().iter().enumerate() {
                let ip = inner_product(a, b).unwrap();
                assert_eq!(ip, Cyclo::from_integer((i == j) as i64));
            }
        }
    }

    #[test]
    fn decompose_trivial_character() {
        let t = table("symmetric:4");
        let one = ClassFunction::constant(t.group().clone(), Cyclo::one());
        let c = decompose(&one, &t).unwrap();
        assert_eq!(c[0], Cyclo::one());
        assert!(c[1..].iter().all(Cyclo::is_zero));
    }

    #[test]
    fn reconstruct_inverts_decompose() {
        let t = table("dihedral:8");
        let g = t.group().clone();
        let f = ClassFunction::from_reps(g.clone(), |r| {
            Cyclo::root(8, r as i64).unwrap() + Cyclo::from_integer(r as i64 * 3)
        });
        let c = decompose(&f, &t).unwrap();
        assert_eq!(reconstruct(&c, &t).unwrap(), f);
    }

    #[test]
    fn conjugation_character_values() {
        let g = make_group("alternating:5").unwrap();
        let th = conjugation_character(&g);
        let v: Vec<i64> = th
            .integer_values()
            .unwrap()
            .iter()
            .map(|x| x.to_i64().unwrap())
            .collect();
        assert_eq!(v, vec![60, 4, 3, 5, 5]);
        let c = make_group("cyclic:5").unwrap();
        assert!(conjugation_character(&c)
            .values()
            .iter()
            .all(|v| *v == Cyclo::from_integer(5)));
    }

    #[test]
    fn perturbed_table_is_rejected_with_row_pair() {
        let t = table("dihedral:5");
        let bad = t.with_value(1, 1, &t.irreducibles()[1].values()[1] + &Cyclo::one());
        let report = validate_table(&bad);
        assert!(!report.passed());
        let row = report
            .checks
            .iter()
            .find(|c| c.name == "row orthogonality")
            .unwrap();
        assert!(!row.passed);
        assert!(row.detail.contains("<chi1,chi2>"), "{}", row.detail);
        assert!(bad.validated().is_err());
    }

    #[test]
    fn group_mismatch() {
        let a = ClassFunction::constant(make_group("cyclic:3").unwrap(), Cyclo::one());
        let b = ClassFunction::constant(make_group("symmetric:3").unwrap(), Cyclo::one());
        assert_eq!(inner_product(&a, &b), Err(Error::GroupMismatch));
    }

    #[test]
    fn inner_product_with_rational_values() {
        let g = make_group("symmetric:3").unwrap();
        let half = Cyclo::from_rational(BigRational::new(1.into(), 2.into()));
        let f = ClassFunction::constant(g.clone(), half.clone());
        let one = ClassFunction::constant(g, Cyclo::one());
        assert_eq!(inner_product(&f, &one).unwrap(), half);
    }

    #[test]
    fn unvalidated_tables_are_refused() {
        let t = table("cyclic:4");
        let raw = t.with_value(0, 0, Cyclo::one());
        let f = ClassFunction::constant(t.group().clone(), Cyclo::one());
        assert!(decompose(&f, &raw).is_err());
    }
}
