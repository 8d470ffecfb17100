//! Exact probability distributions on a group: `P_n`, the normalised `f_3`
//! distribution `Q_3`, convolution powers, `L¹` distance to uniform, and the
//! upper/lower bounds on `P_2` and `P_3`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::characters::{CharacterTable, ClassFunction};
use crate::counts::{CountFunction, CountKind};
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::group::GroupTable;

fn q(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// A probability distribution on the elements of a group, with exact
/// rational masses summing to one.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupDistribution {
    group: Arc<GroupTable>,
    mass: Vec<BigRational>,
}

impl fmt::Debug for GroupDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.mass.iter().map(|m| m.to_string()))
            .finish()
    }
}

impl GroupDistribution {
    /// Checks non-negativity and total mass one.
    pub fn new(group: Arc<GroupTable>, mass: Vec<BigRational>) -> Result<Self> {
        if mass.len() != group.order() {
            return Err(Error::Precondition(format!(
                "{} masses for a group of order {}",
                mass.len(),
                group.order()
            )));
        }
        if mass.iter().any(Signed::is_negative) {
            return Err(Error::Precondition("negative mass".into()));
        }
        let total: BigRational = mass.iter().sum();
        if !total.is_one() {
            return Err(Error::Precondition(format!("masses sum to {total}, not 1")));
        }
        Ok(GroupDistribution { group, mass })
    }

    pub fn uniform(group: Arc<GroupTable>) -> Self {
        let m = q(1, group.order());
        let mass = vec![m; group.order()];
        GroupDistribution { group, mass }
    }

    pub fn point_mass(group: Arc<GroupTable>, g: usize) -> Result<Self> {
        group.check(g)?;
        let mut mass = vec![BigRational::zero(); group.order()];
        mass[g] = BigRational::one();
        Ok(GroupDistribution { group, mass })
    }

    /// `count(g) / Σ_x count(x)`.
    pub fn normalize(count: &CountFunction) -> Result<Self> {
        let total = BigInt::from(count.total());
        if total.is_zero() {
            return Err(Error::Precondition("counts sum to zero".into()));
        }
        let mass = count
            .values()
            .iter()
            .map(|&v| BigRational::new(BigInt::from(v), total.clone()))
            .collect();
        Ok(GroupDistribution {
            group: count.group().clone(),
            mass,
        })
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn mass(&self, g: usize) -> &BigRational {
        &self.mass[g]
    }

    pub fn masses(&self) -> &[BigRational] {
        &self.mass
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.mass.len()).filter(|&g| !self.mass[g].is_zero()).collect()
    }

    pub fn is_class_constant(&self) -> bool {
        let cls = self.group.classes();
        cls.classes
            .iter()
            .all(|c| c.iter().all(|&x| self.mass[x] == self.mass[c[0]]))
    }

    /// The masses as a class function, when they are constant on classes.
    pub fn to_class_function(&self) -> Result<ClassFunction> {
        if !self.is_class_constant() {
            return Err(Error::Precondition("distribution is not class-constant".into()));
        }
        let vals = self
            .group
            .classes()
            .reps
            .iter()
            .map(|&r| Cyclo::from_rational(self.mass[r].clone()))
            .collect();
        ClassFunction::new(self.group.clone(), vals)
    }

    fn integer_form(&self) -> (Vec<BigInt>, BigInt) {
        let den = self
            .mass
            .iter()
            .fold(BigInt::one(), |a, m| a.lcm(m.denom()));
        let nums = self
            .mass
            .iter()
            .map(|m| (m * int(den.clone())).to_integer())
            .collect();
        (nums, den)
    }

    /// `(self * other)(g) = Σ_h self(h) · other(h⁻¹ g)`.
    pub fn convolve(&self, other: &GroupDistribution) -> Result<Self> {
        if !Arc::ptr_eq(&self.group, &other.group) && *self.group != *other.group {
            return Err(Error::GroupMismatch);
        }
        let g = &self.group;
        let (a, da) = self.integer_form();
        let (b, db) = other.integer_form();
        let support: Vec<usize> = self.support();
        let den = da * db;
        let mass = (0..g.order())
            .into_par_iter()
            .map(|x| {
                let s: BigInt = support
                    .iter()
                    .map(|&h| &a[h] * &b[g.mul(g.inv(h), x)])
                    .sum();
                BigRational::new(s, den.clone())
            })
            .collect();
        Ok(GroupDistribution {
            group: g.clone(),
            mass,
        })
    }

    /// `self^{*k}` for `k ≥ 1`.
    pub fn power(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return GroupDistribution::point_mass(self.group.clone(), 0);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.convolve(self)?;
        }
        Ok(acc)
    }

    /// `Σ_g |d(g) − 1/|G||`.
    pub fn l1_to_uniform(&self) -> BigRational {
        let u = q(1, self.group.order());
        self.mass.iter().map(|m| (m - &u).abs()).sum()
    }
}

/// `P_n(g) = f_n(g) / |G|^n`.
pub fn p_n(count: &CountFunction, g: usize) -> Result<BigRational> {
    if count.kind != CountKind::F || count.restriction.is_some() {
        return Err(Error::Precondition("P_n needs unrestricted f_n counts".into()));
    }
    count.group().check(g)?;
    let order = BigInt::from(count.group().order());
    Ok(BigRational::new(
        BigInt::from(count.at(g)),
        order.pow(count.n as u32),
    ))
}

/// `Q_3 = f_3 / Σ f_3`.
pub fn q3(count: &CountFunction) -> Result<GroupDistribution> {
    if count.kind != CountKind::F || count.n != 3 || count.restriction.is_some() {
        return Err(Error::Precondition("Q_3 needs unrestricted f_3 counts".into()));
    }
    GroupDistribution::normalize(count)
}

/// Support sizes and `L¹` distances of `d^{*k}` for `k = 1..=max_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvolutionTrace {
    pub support_sizes: Vec<usize>,
    pub l1: Vec<BigRational>,
    /// Order of the subgroup generated by the support of `d`, which the
    /// supports grow towards.
    pub target_size: usize,
    /// First `k` at which the support fills that subgroup.
    pub first_saturation: Option<usize>,
}

pub fn convolution_trace(d: &GroupDistribution, max_k: usize) -> Result<ConvolutionTrace> {
    let target_size = d.group().subgroup_generated(&d.support())?.order();
    let mut support_sizes = Vec::with_capacity(max_k);
    let mut l1 = Vec::with_capacity(max_k);
    let mut first_saturation = None;
    let mut cur = d.clone();
    for k in 1..=max_k {
        if k > 1 {
            cur = cur.convolve(d)?;
        }
        let s = cur.support().len();
        if s == target_size && first_saturation.is_none() {
            first_saturation = Some(k);
        }
        support_sizes.push(s);
        l1.push(cur.l1_to_uniform());
    }
    Ok(ConvolutionTrace {
        support_sizes,
        l1,
        target_size,
        first_saturation,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// Only rational bounds on an irrational side were available and they
    /// did not separate the two sides.
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "FAILS",
            Verdict::Undecided => "undecided",
        })
    }
}

/// One inequality `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRecord {
    pub name: String,
    /// Class representative the bound was evaluated at, if any.
    pub at: Option<String>,
    pub lhs: String,
    pub rhs: String,
    pub verdict: Verdict,
}

impl BoundRecord {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub group: String,
    /// `1 / |G : Z(G)|`.
    pub alpha: BigRational,
    pub p2_1: BigRational,
    pub p3_1: BigRational,
    pub abelian: bool,
    pub records: Vec<BoundRecord>,
}

impl BoundsReport {
    pub fn all_hold(&self) -> bool {
        self.records.iter().all(BoundRecord::holds)
    }
}

fn record(name: &str, at: Option<String>, lhs: &BigRational, rhs: &BigRational) -> BoundRecord {
    BoundRecord {
        name: name.to_string(),
        at,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        verdict: if lhs <= rhs { Verdict::Holds } else { Verdict::Fails },
    }
}

/// `Σ_χ χ(1)|χ(g)|` exactly when every `|χ(g)|²` is the square of a
/// rational. Otherwise `|χ(g)|² ≤ χ(1)|χ(g)| ≤ (χ(1)² + |χ(g)|²)/2` summed
/// over `χ` gives the rational bounds `|C(g)|` and `(|G| + |C(g)|)/2`.
fn degree_weighted_abs(table: &CharacterTable, class: usize) -> (BigRational, BigRational, bool) {
    let exact: Option<BigRational> = table
        .irreducibles()
        .iter()
        .zip(table.degrees())
        .map(|(chi, &d)| {
            let r = chi.values()[class].abs2().to_rational().ok()?;
            Some(int(d) * rational_sqrt(&r)?)
        })
        .sum();
    if let Some(s) = exact {
        return (s.clone(), s, true);
    }
    let g = table.group();
    let c = int(g.centralizer_order(g.classes().reps[class]));
    let upper = (int(g.order()) + &c) / int(2);
    (c, upper, false)
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

/// Evaluates the upper and lower bounds for `P_2(1)` and `P_3(g)`. Abelian
/// groups get a report without records.
pub fn bounds_report(
    spec: &str,
    f2: &CountFunction,
    f3: &CountFunction,
    table: &CharacterTable,
) -> Result<BoundsReport> {
    let g = table.group();
    if f2.group().order() != g.order() || f3.group().order() != g.order() {
        return Err(Error::GroupMismatch);
    }
    if (f2.kind, f2.n, f3.kind, f3.n) != (CountKind::F, 2, CountKind::F, 3) {
        return Err(Error::Precondition("bounds need f_2 and f_3 counts".into()));
    }
    let order = g.order();
    let alpha = q(g.center().order(), order);
    let p2_1 = p_n(f2, 0)?;
    let p3_1 = p_n(f3, 0)?;
    let abelian = g.is_abelian();
    let mut records = Vec::new();
    if abelian {
        return Ok(BoundsReport {
            group: spec.to_string(),
            alpha,
            p2_1,
            p3_1,
            abelian,
            records,
        });
    }
    // (i)
    let mid = (&p2_1 - &alpha) / int(2) + &alpha * &p2_1;
    records.push(record("P3(1) <= (P2(1)-alpha)/2 + alpha*P2(1)", None, &p3_1, &mid));
    records.push(record("(P2(1)-alpha)/2 + alpha*P2(1) <= 11/32", None, &mid, &q(11, 32)));
    // (ii), (iii) at every class representative
    let cls = g.classes();
    let g_order = int(order);
    for (c, &rep) in cls.reps.iter().enumerate() {
        let at = Some(g.name(rep));
        let p3 = p_n(f3, rep)?;
        let (lo, hi, exact) = degree_weighted_abs(table, c);
        let scale = &p2_1 / &g_order;
        let (rhs_lo, rhs_hi) = (&scale * &lo, &scale * &hi);
        let verdict = if p3 <= rhs_lo {
            Verdict::Holds
        } else if p3 > rhs_hi {
            Verdict::Fails
        } else {
            Verdict::Undecided
        };
        let rhs = if exact {
            rhs_lo.to_string()
        } else {
            format!("in [{rhs_lo}, {rhs_hi}]")
        };
        records.push(BoundRecord {
            name: "P3(g) <= P2(1)/|G| * sum chi(1)|chi(g)|".into(),
            at: at.clone(),
            lhs: p3.to_string(),
            rhs: rhs.clone(),
            verdict,
        });
        let verdict = if rhs_hi <= p2_1 {
            Verdict::Holds
        } else if rhs_lo > p2_1 {
            Verdict::Fails
        } else {
            Verdict::Undecided
        };
        records.push(BoundRecord {
            name: "P2(1)/|G| * sum chi(1)|chi(g)| <= P2(1)".into(),
            at: at.clone(),
            lhs: rhs,
            rhs: p2_1.to_string(),
            verdict,
        });
        // (iii) by squaring: P3(g)² ≤ P2(1)² |C(g)| / |G|
        let c_order = int(g.centralizer_order(rep));
        let lhs = &p3 * &p3;
        let rhs = &p2_1 * &p2_1 * c_order / &g_order;
        records.push(record("P3(g)^2 <= P2(1)^2 |C(g)|/|G|", at, &lhs, &rhs));
    }
    let derived = g.derived_subgroup().order();
    records.push(record(
        "1/(|G||G'|) <= P3(1)",
        None,
        &q(1, order * derived),
        &p3_1,
    ));
    records.push(record("P2(1) <= 5/8", None, &p2_1, &q(5, 8)));
    for (n, p) in [(2u32, &p2_1), (3, &p3_1)] {
        let bound = q(3 * BigInt::from(2).pow(n - 1) - 1, BigInt::from(2).pow(2 * n - 1));
        records.push(record(&format!("P{n}(1) <= (3*2^{}-1)/2^{}", n - 1, 2 * n - 1), None, p, &bound));
    }
    Ok(BoundsReport {
        group: spec.to_string(),
        alpha,
        p2_1,
        p3_1,
        abelian,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{build_table, decompose, Provider};
    use crate::counts::{brute_f_n, DEFAULT_BUDGET};
    use crate::group::make_group;

    fn f(spec: &str, n: usize) -> CountFunction {
        brute_f_n(&make_group(spec).unwrap(), n, None, DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn a5_probabilities() {
        let f2 = f("alternating:5", 2);
        let f3 = f("alternating:5", 3);
        assert_eq!(p_n(&f2, 0).unwrap(), q(1, 12));
        assert_eq!(p_n(&f3, 0).unwrap(), q(11, 1800));
        let g = f2.group().clone();
        let inv = g.classes().reps[1];
        assert_eq!(p_n(&f2, inv).unwrap(), q(32, 3600));
        let d = q3(&f3).unwrap();
        assert_eq!(*d.mass(0), q(11, 20));
        assert!(d.is_class_constant());
        let t = build_table(&g, &Provider::Auto).unwrap();
        let c = decompose(&d.to_class_function().unwrap(), &t).unwrap();
        let expect = [q(1, 60), q(8, 300), q(8, 300), q(21, 600), q(14, 300)];
        for (a, b) in c.iter().zip(expect) {
            assert_eq!(*a, Cyclo::from_rational(b));
        }
        // the P_3 values do not sum to one
        let s: BigRational = (0..60).map(|x| p_n(&f3, x).unwrap()).sum();
        assert_ne!(s, BigRational::one());
    }

    #[test]
    fn abelian_cases() {
        let f3 = f("cyclic:6", 3);
        assert_eq!(p_n(&f3, 0).unwrap(), BigRational::one());
        let d = q3(&f3).unwrap();
        assert_eq!(d, GroupDistribution::point_mass(f3.group().clone(), 0).unwrap());
    }

    #[test]
    fn convolution_identities() {
        let f3 = f("symmetric:4", 3);
        let d = q3(&f3).unwrap();
        let g = d.group().clone();
        let delta = GroupDistribution::point_mass(g.clone(), 0).unwrap();
        assert_eq!(d.convolve(&delta).unwrap(), d);
        let u = GroupDistribution::uniform(g.clone());
        assert_eq!(u.convolve(&d).unwrap(), u);
        assert_eq!(u.l1_to_uniform(), BigRational::zero());
        let a5 = make_group("alternating:5").unwrap();
        let pm = GroupDistribution::point_mass(a5, 0).unwrap();
        assert_eq!(pm.l1_to_uniform(), q(2 * 59, 60));
        let sq = d.power(2).unwrap();
        assert_eq!(sq.masses().iter().sum::<BigRational>(), BigRational::one());
    }

    #[test]
    fn a5_saturation() {
        let d = q3(&f("alternating:5", 3)).unwrap();
        let tr = convolution_trace(&d, 10).unwrap();
        assert_eq!(tr.target_size, 60);
        let k = tr.first_saturation.unwrap();
        assert!(k <= 15);
        assert!(tr.support_sizes.windows(2).all(|w| w[0] <= w[1]));
        assert!(tr.l1.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn bounds() {
        for spec in ["alternating:5", "dihedral:4", "symmetric:3", "quaternion", "cyclic:4"] {
            let f2 = f(spec, 2);
            let f3 = f(spec, 3);
            let t = build_table(f2.group(), &Provider::Auto).unwrap();
            let r = bounds_report(spec, &f2, &f3, &t).unwrap();
            assert!(r.all_hold(), "{spec}: {:?}", r.records.iter().filter(|x| !x.holds()).collect::<Vec<_>>());
            match spec {
                "dihedral:4" => assert_eq!(r.p2_1, q(5, 8)),
                "symmetric:3" => assert_eq!(r.p2_1, q(1, 2)),
                "alternating:5" => assert!(r.p3_1 <= q(11, 32)),
                "cyclic:4" => assert!(r.abelian && r.records.is_empty()),
                _ => {}
            }
        }
    }
}
