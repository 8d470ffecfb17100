//! Character-theoretic formulas for the counts and the identity-value
//! recursions.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::brute::coset_meet;
use super::{check_budget, check_n, CountFunction, CountKind};
use crate::characters::{weighted_products, CharacterTable, ClassFunction};
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::group::GroupTable;

fn corrupt(msg: impl Into<String>) -> Error {
    Error::CorruptTable(msg.into())
}

/// `Σ_c w_c · χ(c)` for integer class weights.
fn pair_with(weights: &[BigInt], chi: &ClassFunction) -> Cyclo {
    let terms: Vec<(BigInt, &Cyclo, Option<&Cyclo>)> = weights
        .iter()
        .zip(chi.values())
        .filter(|(w, _)| !w.is_zero())
        .map(|(w, v)| (w.clone(), v, None))
        .collect();
    weighted_products(&terms)
}

fn non_negative_integer(v: &Cyclo, what: &str) -> Result<u128> {
    let q = v.to_integer().map_err(|_| corrupt(format!("{what} = {v} is not an integer")))?;
    if q.is_negative() {
        return Err(corrupt(format!("{what} = {q} is negative")));
    }
    q.to_u128().ok_or_else(|| corrupt(format!("{what} = {q} overflows")))
}

/// `f_2(g) = Σ_χ (|G|/χ(1)) χ(g)`.
pub fn f2_frobenius(table: &CharacterTable) -> Result<CountFunction> {
    table.require_validated()?;
    let g = table.group();
    let order = g.order() as u64;
    let k = g.class_count();
    let mut out = Vec::with_capacity(k);
    for c in 0..k {
        let terms: Vec<(BigInt, &Cyclo, Option<&Cyclo>)> = table
            .irreducibles()
            .iter()
            .zip(table.degrees())
            .map(|(chi, &d)| (BigInt::from(order / d), &chi.values()[c], None))
            .collect();
        let v = weighted_products(&terms);
        out.push(non_negative_integer(&v, &format!("f2 at class {c}"))?);
    }
    Ok(CountFunction::from_classes(g.clone(), CountKind::F, 2, &out))
}

/// Integer weights `w` with `θ_χ(a) = Σ_c w_c χ(c)`: `w_c` sums
/// `|C(ab)b ∩ C(a)|` over the `b` with `[a,b]` in class `c`.
pub fn theta_weights(g: &GroupTable, a: usize) -> Vec<u64> {
    let cls = g.classes();
    let mut w = vec![0u64; cls.len()];
    for b in 0..g.order() {
        w[cls.class_of[g.comm(a, b)]] += coset_meet(g, a, b);
    }
    w
}

/// As [`theta_weights`] with the summation over the first argument:
/// `τ_χ(b) = Σ_a |C(ab)b ∩ C(a)| χ([a,b])`.
pub fn tau_weights(g: &GroupTable, b: usize) -> Vec<u64> {
    let cls = g.classes();
    let mut w = vec![0u64; cls.len()];
    for a in 0..g.order() {
        w[cls.class_of[g.comm(a, b)]] += coset_meet(g, a, b);
    }
    w
}

fn to_big(w: &[u64]) -> Vec<BigInt> {
    w.iter().map(|&x| BigInt::from(x)).collect()
}

/// `θ_χ(a) = Σ_b |C(ab)b ∩ C(a)| χ([a,b])`.
pub fn theta_chi(chi: &ClassFunction, a: usize) -> Result<Cyclo> {
    chi.group().check(a)?;
    Ok(pair_with(&to_big(&theta_weights(chi.group(), a)), chi))
}

/// `τ_χ(b) = Σ_a |C(ab)b ∩ C(a)| χ([a,b])`.
pub fn tau_chi(chi: &ClassFunction, b: usize) -> Result<Cyclo> {
    chi.group().check(b)?;
    Ok(pair_with(&to_big(&tau_weights(chi.group(), b)), chi))
}

/// Class weights `M` with `m_χ = Σ_c M_c χ(c)`, aggregated from `θ` at the
/// class representatives: `M = Σ_reps |class| · θ-weights(rep)`.
pub fn f3_class_weights(g: &GroupTable) -> Vec<BigInt> {
    let cls = g.classes();
    let parts: Vec<Vec<u64>> = cls.reps.par_iter().map(|&a| theta_weights(g, a)).collect();
    let mut m = vec![BigInt::zero(); cls.len()];
    for (c, w) in parts.iter().enumerate() {
        for (mc, &wc) in m.iter_mut().zip(w) {
            *mc += BigInt::from(wc) * BigInt::from(cls.sizes[c]);
        }
    }
    m
}

/// `m_χ = Σ_a θ_χ(a)` for every irreducible, each certified real.
pub fn m_chi_values(table: &CharacterTable) -> Result<Vec<Cyclo>> {
    table.require_validated()?;
    let weights = f3_class_weights(table.group());
    table
        .irreducibles()
        .iter()
        .zip(table.labels())
        .map(|(chi, label)| {
            let m = pair_with(&weights, chi);
            if m.is_real() {
                Ok(m)
            } else {
                Err(corrupt(format!("m for {label} is not real: {m}")))
            }
        })
        .collect()
}

/// `m_χ = Σ_b τ_χ(b)`, the second path.
pub fn m_chi_via_tau(table: &CharacterTable) -> Result<Vec<Cyclo>> {
    table.require_validated()?;
    let g = table.group();
    let cls = g.classes();
    let parts: Vec<Vec<u64>> = cls.reps.par_iter().map(|&b| tau_weights(g, b)).collect();
    let mut weights = vec![BigInt::zero(); cls.len()];
    for (c, w) in parts.iter().enumerate() {
        for (mc, &wc) in weights.iter_mut().zip(w) {
            *mc += BigInt::from(wc) * BigInt::from(cls.sizes[c]);
        }
    }
    Ok(table
        .irreducibles()
        .iter()
        .map(|chi| pair_with(&weights, chi))
        .collect())
}

/// `⟨f_3, χ⟩ = m_χ / |G|` for every irreducible.
pub fn f3_coeffs(table: &CharacterTable) -> Result<Vec<BigRational>> {
    let order = BigInt::from(table.group().order());
    m_chi_values(table)?
        .into_iter()
        .zip(table.labels())
        .map(|(m, label)| {
            let q = m.to_rational().map_err(|_| {
                Error::NotRational(format!("m for {label} is {m}"))
            })?;
            Ok(q / BigRational::from_integer(order.clone()))
        })
        .collect()
}

/// `⟨t_n, χ⟩ = (|G|/χ(1)) ⟨ϑ^{n-2} χ, χ⟩` with `ϑ(x) = |C_G(x)|`. For `n = 3`
/// the value is cross-checked against `Σ_reps (|G|/χ(1)) |χ(x)|²`.
pub fn t_coeffs(table: &CharacterTable, n: usize) -> Result<Vec<BigRational>> {
    check_n(n)?;
    table.require_validated()?;
    let g = table.group();
    let cls = g.classes();
    let order = BigInt::from(g.order());
    let weights: Vec<BigInt> = cls
        .reps
        .iter()
        .zip(&cls.sizes)
        .map(|(&r, &s)| BigInt::from(s) * BigInt::from(g.centralizer_order(r)).pow((n - 2) as u32))
        .collect();
    let mut out = Vec::with_capacity(table.len());
    for ((chi, &d), label) in table.irreducibles().iter().zip(table.degrees()).zip(table.labels()) {
        let conj = chi.conj();
        let terms: Vec<(BigInt, &Cyclo, Option<&Cyclo>)> = weights
            .iter()
            .zip(chi.values().iter().zip(conj.values()))
            .map(|(w, (a, b))| (w.clone(), a, Some(b)))
            .collect();
        let s = weighted_products(&terms);
        let s = s
            .to_rational()
            .map_err(|_| corrupt(format!("<theta^{} {label}, {label}> is not rational", n - 2)))?;
        let coeff = s / BigRational::from_integer(BigInt::from(d));
        if n == 3 {
            let terms: Vec<(BigInt, &Cyclo, Option<&Cyclo>)> = chi
                .values()
                .iter()
                .zip(conj.values())
                .map(|(a, b)| (order.clone(), a, Some(b)))
                .collect();
            let other = weighted_products(&terms)
                .scale(&BigRational::new(BigInt::one(), BigInt::from(d)));
            if Cyclo::from_rational(coeff.clone()) != other {
                return Err(corrupt(format!("t3 coefficient paths disagree for {label}")));
            }
        }
        // χ(1)/|G| · coefficient is the multiplicity ⟨ϑ^{n-2} χ, χ⟩
        let mult = &coeff * BigRational::new(BigInt::from(d), order.clone());
        if !mult.is_integer() || mult.is_negative() {
            return Err(corrupt(format!(
                "multiplicity {mult} of {label} in theta^{} {label} is not a non-negative integer",
                n - 2
            )));
        }
        out.push(coeff);
    }
    Ok(out)
}

/// `Σ_χ α_χ χ` certified to be a non-negative integer on every class.
pub fn count_from_coeffs(
    table: &CharacterTable,
    coeffs: &[BigRational],
    kind: CountKind,
    n: usize,
) -> Result<CountFunction> {
    let den = coeffs.iter().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
    let scaled: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let g = table.group();
    let k = g.class_count();
    let mut out = Vec::with_capacity(k);
    for c in 0..k {
        let terms: Vec<(BigInt, &Cyclo, Option<&Cyclo>)> = scaled
            .iter()
            .zip(table.irreducibles())
            .map(|(w, chi)| (w.clone(), &chi.values()[c], None))
            .collect();
        let v = weighted_products(&terms).scale(&BigRational::new(BigInt::one(), den.clone()));
        out.push(non_negative_integer(&v, &format!("{kind}{n} at class {c}"))?);
    }
    Ok(CountFunction::from_classes(g.clone(), kind, n, &out))
}

struct Recursion<'a> {
    g: &'a GroupTable,
    memo: HashMap<(Vec<usize>, usize), BigUint>,
    ops: u128,
    budget: u128,
}

impl Recursion<'_> {
    /// `F(H, m)`: pairwise-commuting `m`-tuples in `H`.
    fn eval(&mut self, h: &[usize], m: usize) -> Result<BigUint> {
        let size = BigUint::from(h.len());
        if m == 1 {
            return Ok(size);
        }
        let abelian = h.iter().all(|&x| h.iter().all(|&y| self.g.commutes(x, y)));
        if abelian {
            return Ok(size.pow(m as u32));
        }
        let key = (h.to_vec(), m);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        self.ops += (h.len() as u128) * (h.len() as u128);
        check_budget(self.ops, self.budget)?;
        let mut total = BigUint::zero();
        for &x in h {
            let c: Vec<usize> = h.iter().copied().filter(|&y| self.g.commutes(x, y)).collect();
            total += self.eval(&c, m - 1)?;
        }
        self.memo.insert(key, total.clone());
        Ok(total)
    }
}

/// `f_n(1) = Σ_{g∈G} f_{n-1, C_G(g)}(1)`, memoised on centralizer member
/// sets; abelian subgroups contribute `|H|^m` directly.
pub fn recursive_fn1(g: &GroupTable, n: usize, budget: u128) -> Result<BigUint> {
    check_n(n)?;
    let mut r = Recursion {
        g,
        memo: HashMap::new(),
        ops: 0,
        budget,
    };
    let all: Vec<usize> = (0..g.order()).collect();
    r.eval(&all, n)
}

/// Whether every non-central element has an abelian centralizer and, if so,
/// `f_n(1) = |G| Σ_{non-central reps} |C(x)|^{n-2} + |Z| f_{n-1}(1)`
/// with `f_1(1) = |G|`.
pub fn tc_check_and_formula(group: &Arc<GroupTable>, n: usize) -> Result<(bool, Option<BigUint>)> {
    check_n(n)?;
    let g = &**group;
    let is_tc = g.is_tc();
    if !is_tc {
        return Ok((false, None));
    }
    let cls = g.classes();
    let order = BigUint::from(g.order());
    let z = BigUint::from(g.center().order());
    let non_central: Vec<usize> = cls
        .reps
        .iter()
        .copied()
        .filter(|&r| g.centralizer_order(r) != g.order())
        .collect();
    let mut f = order.clone();
    for m in 2..=n {
        let s: BigUint = non_central
            .iter()
            .map(|&r| BigUint::from(g.centralizer_order(r)).pow((m - 2) as u32))
            .sum();
        f = &order * s + &z * f;
    }
    Ok((true, Some(f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{build_table, decompose, Provider};
    use crate::counts::{brute_f_n, brute_t_n, DEFAULT_BUDGET};
    use crate::group::make_group;

    fn table(spec: &str) -> CharacterTable {
        build_table(&make_group(spec).unwrap(), &Provider::Auto).unwrap()
    }

    fn ints(v: &[BigRational]) -> Vec<i64> {
        v.iter().map(|q| q.to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn a5_coefficients() {
        let t = table("alternating:5");
        assert_eq!(ints(&f3_coeffs(&t).unwrap()), vec![40, 64, 64, 84, 112]);
        assert_eq!(ints(&t_coeffs(&t, 3).unwrap()), vec![300, 260, 260, 285, 324]);
        assert_eq!(ints(&t_coeffs(&t, 2).unwrap()), vec![60, 20, 20, 15, 12]);
        let f2 = f2_frobenius(&t).unwrap();
        assert_eq!(f2.class_values().unwrap(), vec![300, 32, 63, 65, 65]);
        let brute = brute_f_n(t.group(), 2, None, DEFAULT_BUDGET).unwrap();
        let c = decompose(&brute.to_class_function().unwrap(), &t).unwrap();
        assert_eq!(c[3], Cyclo::from_integer(15));
    }

    #[test]
    fn dihedral_five_coefficients() {
        let t = table("dihedral:5");
        assert_eq!(ints(&f3_coeffs(&t).unwrap()), vec![20, 20, 30, 30]);
        assert_eq!(ints(&t_coeffs(&t, 3).unwrap()), vec![40, 40, 35, 35]);
    }

    #[test]
    fn cyclic_two_coefficients() {
        let t = table("cyclic:2");
        assert_eq!(ints(&f3_coeffs(&t).unwrap()), vec![4, 4]);
        let f2 = f2_frobenius(&table("cyclic:3")).unwrap();
        assert_eq!(f2.class_values().unwrap(), vec![9, 0, 0]);
    }

    #[test]
    fn theta_values() {
        let t = table("dihedral:5");
        let one = &t.irreducibles()[0];
        assert_eq!(theta_chi(one, 0).unwrap(), Cyclo::from_integer(40));
        assert_eq!(theta_chi(one, 1).unwrap(), Cyclo::from_integer(30));
        let g = t.group();
        for chi in t.irreducibles() {
            for a in 0..g.order() {
                let th = theta_chi(chi, a).unwrap();
                for w in 0..g.order() {
                    assert_eq!(theta_chi(chi, g.conjugate(a, w)).unwrap(), th);
                }
                assert_eq!(tau_chi(chi, g.inv(a)).unwrap(), tau_chi(chi, a).unwrap().conj());
            }
        }
    }

    #[test]
    fn tau_cyclic_two() {
        let t = table("cyclic:2");
        let one = &t.irreducibles()[0];
        assert_eq!(tau_chi(one, 0).unwrap(), Cyclo::from_integer(4));
        assert_eq!(tau_chi(one, 1).unwrap(), Cyclo::from_integer(4));
    }

    #[test]
    fn theta_and_tau_paths_agree() {
        for spec in ["dihedral:5", "alternating:4", "quaternion", "symmetric:4"] {
            let t = table(spec);
            assert_eq!(m_chi_values(&t).unwrap(), m_chi_via_tau(&t).unwrap(), "{spec}");
        }
    }

    #[test]
    fn character_counts_match_brute() {
        for spec in ["symmetric:4", "dihedral:7", "alternating:5", "product:cyclic:2,quaternion"] {
            let t = table(spec);
            let g = t.group();
            let f3 = count_from_coeffs(&t, &f3_coeffs(&t).unwrap(), CountKind::F, 3).unwrap();
            assert_eq!(f3, brute_f_n(g, 3, None, DEFAULT_BUDGET).unwrap(), "{spec}");
            for n in [2, 3, 4] {
                let tn = count_from_coeffs(&t, &t_coeffs(&t, n).unwrap(), CountKind::T, n).unwrap();
                assert_eq!(tn, brute_t_n(g, n, DEFAULT_BUDGET).unwrap(), "{spec} n={n}");
            }
            assert_eq!(
                f2_frobenius(&t).unwrap(),
                brute_f_n(g, 2, None, DEFAULT_BUDGET).unwrap()
            );
        }
    }

    #[test]
    fn identity_recursions() {
        let a5 = make_group("alternating:5").unwrap();
        assert_eq!(recursive_fn1(&a5, 3, DEFAULT_BUDGET).unwrap(), BigUint::from(1320u32));
        assert_eq!(recursive_fn1(&a5, 4, DEFAULT_BUDGET).unwrap(), BigUint::from(5820u32));
        let (tc, v) = tc_check_and_formula(&a5, 3).unwrap();
        assert!(tc);
        assert_eq!(v, Some(BigUint::from(1320u32)));
        let c6 = make_group("cyclic:6").unwrap();
        assert_eq!(recursive_fn1(&c6, 5, DEFAULT_BUDGET).unwrap(), BigUint::from(7776u32));
        let s4 = make_group("symmetric:4").unwrap();
        assert_eq!(tc_check_and_formula(&s4, 3).unwrap(), (false, None));
        assert!(tc_check_and_formula(&make_group("dihedral:5").unwrap(), 3).unwrap().0);
        for n in 2..=5 {
            let brute = brute_f_n(&s4, n, None, DEFAULT_BUDGET).unwrap().at(0);
            assert_eq!(recursive_fn1(&s4, n, DEFAULT_BUDGET).unwrap(), BigUint::from(brute));
        }
    }
}
