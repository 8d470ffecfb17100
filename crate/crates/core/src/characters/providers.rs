//! Sources of character tables. Every provider's output is validated before
//! it is returned.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::ToPrimitive;

use super::{CharacterTable, ClassFunction, Provenance};
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::group::{GroupSpec, GroupTable};
use crate::io::CharTableDoc;

const BUNDLED_A5: &str = include_str!("../../data/a5.json");
const BUNDLED_A4: &str = include_str!("../../data/a4.json");
const BUNDLED_Q8: &str = include_str!("../../data/q8.json");

/// Where a character table comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provider {
    /// Chosen from the group's family tag.
    Auto,
    DihedralClosedForm,
    CyclicClosedForm,
    SymmetricMn,
    /// Enumerates the homomorphisms of an abelian group into the roots of unity.
    Abelian,
    /// Tensor products of the factors' tables.
    Product,
    /// `a5`, `a4` or `q8`.
    Bundled(String),
    File(String),
}

impl FromStr for Provider {
    type Err = Error;

    fn from_str(s: &str) -> Result<Provider> {
        let s = s.trim();
        let p = match s {
            "auto" => Provider::Auto,
            "dihedral-closed-form" | "dihedral" => Provider::DihedralClosedForm,
            "cyclic-closed-form" | "cyclic" => Provider::CyclicClosedForm,
            "symmetric-mn" | "symmetric" => Provider::SymmetricMn,
            "abelian" => Provider::Abelian,
            "product" => Provider::Product,
            _ => {
                if let Some(name) = s.strip_prefix("bundled:") {
                    match name {
                        "a5" | "a4" | "q8" => Provider::Bundled(name.to_string()),
                        _ => return Err(Error::parse(s, "bundled tables: a5, a4, q8")),
                    }
                } else if let Some(path) = s.strip_prefix("file:") {
                    Provider::File(path.to_string())
                } else {
                    return Err(Error::parse(s, "unknown character table provider"));
                }
            }
        };
        Ok(p)
    }
}

impl fmt::Display for Provider {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provider::Auto => f.write_str("auto"),
            Provider::DihedralClosedForm => f.write_str("dihedral-closed-form"),
            Provider::CyclicClosedForm => f.write_str("cyclic-closed-form"),
            Provider::SymmetricMn => f.write_str("symmetric-mn"),
            Provider::Abelian => f.write_str("abelian"),
            Provider::Product => f.write_str("product"),
            Provider::Bundled(n) => write!(f, "bundled:{n}"),
            Provider::File(p) => write!(f, "file:{p}"),
        }
    }
}

fn mismatch(p: &Provider, reason: impl Into<String>) -> Error {
    Error::ProviderMismatch {
        provider: p.to_string(),
        reason: reason.into(),
    }
}

/// Builds and validates the character table of `group`.
///
/// Character orders: dihedral `chi1..chi4` (two for odd n) then `psi1..`;
/// cyclic `chi_j(g^r) = E(n)^(jr)` for j = 0..n-1; symmetric by degree,
/// ties broken by partitions in decreasing lexicographic order (so the
/// trivial character comes first); abelian and product tables start with the
/// trivial character; bundled and file tables keep the document order.
pub fn build_table(group: &Arc<GroupTable>, provider: &Provider) -> Result<CharacterTable> {
    let table = match provider {
        Provider::Auto => return build_table(group, &auto_provider(group)?),
        Provider::DihedralClosedForm => match group.family() {
            Some(GroupSpec::Dihedral(n)) => dihedral(group, *n),
            _ => Err(mismatch(provider, "group is not tagged dihedral:n")),
        },
        Provider::CyclicClosedForm => match group.family() {
            Some(GroupSpec::Cyclic(n)) => cyclic(group, *n),
            _ => Err(mismatch(provider, "group is not tagged cyclic:n")),
        },
        Provider::SymmetricMn => match group.family() {
            Some(GroupSpec::Symmetric(n)) => symmetric(group, *n),
            _ => Err(mismatch(provider, "group is not tagged symmetric:n")),
        },
        Provider::Abelian => {
            if group.is_abelian() {
                abelian(group)
            } else {
                Err(mismatch(provider, "group is not abelian"))
            }
        }
        Provider::Product => match group.family() {
            Some(GroupSpec::Product(a, b)) => product(group, a, b),
            _ => Err(mismatch(provider, "group is not tagged as a direct product")),
        },
        Provider::Bundled(name) => {
            let text = match name.as_str() {
                "a5" => BUNDLED_A5,
                "a4" => BUNDLED_A4,
                "q8" => BUNDLED_Q8,
                _ => return Err(mismatch(provider, "no such bundled table")),
            };
            let doc = CharTableDoc::from_json(text)
                .map_err(|e| Error::CorruptTable(format!("bundled:{name}: {e}")))?;
            doc.into_table(group, Provenance::Bundled)
        }
        Provider::File(path) => {
            let doc = crate::io::load_chartable(path)?;
            doc.into_table(group, Provenance::FileImport)
        }
    }?;
    table.validated()
}

/// The provider `Auto` resolves to for this group.
pub fn auto_provider(group: &GroupTable) -> Result<Provider> {
    let p = match group.family() {
        Some(GroupSpec::Dihedral(_)) => Provider::DihedralClosedForm,
        Some(GroupSpec::Cyclic(_)) => Provider::CyclicClosedForm,
        Some(GroupSpec::Symmetric(_)) => Provider::SymmetricMn,
        Some(GroupSpec::Alternating(5)) => Provider::Bundled("a5".into()),
        Some(GroupSpec::Alternating(4)) => Provider::Bundled("a4".into()),
        Some(GroupSpec::Quaternion) => Provider::Bundled("q8".into()),
        Some(GroupSpec::Product(..)) => Provider::Product,
        _ if group.is_abelian() => Provider::Abelian,
        _ => {
            return Err(mismatch(
                &Provider::Auto,
                "no built-in table for this group; import one with file:<path>",
            ))
        }
    };
    Ok(p)
}

fn root(n: usize, k: i64) -> Cyclo {
    Cyclo::root(n, k).expect("positive conductor")
}

/// A character given by its value at `a^i` (`false`) or `a^i b` (`true`).
type DihedralChar = (String, Box<dyn Fn(usize, bool) -> Cyclo>);

fn dihedral(group: &Arc<GroupTable>, n: usize) -> Result<CharacterTable> {
    // element index: i for a^i, n + i for a^i b
    let sign = |k: usize| if k.is_multiple_of(2) { 1 } else { -1 };
    let mut chars: Vec<DihedralChar> = Vec::new();
    chars.push(("chi1".into(), Box::new(|_, _| Cyclo::one())));
    chars.push((
        "chi2".into(),
        Box::new(|_, refl| Cyclo::from_integer(if refl { -1 } else { 1 })),
    ));
    let psi_count = if n % 2 == 1 {
        (n - 1) / 2
    } else {
        chars.push((
            "chi3".into(),
            Box::new(move |r, _| Cyclo::from_integer(sign(r))),
        ));
        chars.push((
            "chi4".into(),
            Box::new(move |r, refl| Cyclo::from_integer(if refl { -sign(r) } else { sign(r) })),
        ));
        (n - 2) / 2
    };
    for j in 1..=psi_count {
        chars.push((
            format!("psi{j}"),
            Box::new(move |r, refl| {
                if refl {
                    Cyclo::zero()
                } else {
                    let e = (j * r) as i64;
                    root(n, e) + root(n, -e)
                }
            }),
        ));
    }
    let (labels, irr): (Vec<_>, Vec<_>) = chars
        .into_iter()
        .map(|(l, f)| {
            let cf = ClassFunction::from_reps(group.clone(), |x| f(x % n, x >= n));
            (l, cf)
        })
        .unzip();
    CharacterTable::from_parts(group.clone(), irr, labels, Provenance::ClosedFormDihedral)
}

fn cyclic(group: &Arc<GroupTable>, n: usize) -> Result<CharacterTable> {
    // element index r is g^r
    let irr = (0..n)
        .map(|j| ClassFunction::from_reps(group.clone(), |r| root(n, (j * r) as i64)))
        .collect();
    let labels = (0..n).map(|j| format!("chi{j}")).collect();
    CharacterTable::from_parts(group.clone(), irr, labels, Provenance::ClosedFormCyclic)
}

/// Partitions of `n` in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// `χ^λ(μ)` by removing rim hooks of lengths `μ_1, μ_2, …` from `λ`.
pub fn mn_character(lambda: &[usize], mu: &[usize]) -> i64 {
    let mut memo = HashMap::new();
    mn(lambda, mu, &mut memo)
}

fn mn(lambda: &[usize], mu: &[usize], memo: &mut HashMap<(Vec<usize>, usize), i64>) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return i64::from(lambda.is_empty());
    };
    let key = (lambda.to_vec(), mu.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let len = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &l)| l + len - 1 - i).collect();
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut nb = beta.clone();
        nb[i] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let shape: Vec<usize> = nb
            .iter()
            .enumerate()
            .map(|(k, &x)| x - (len - 1 - k))
            .filter(|&p| p > 0)
            .collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&shape, rest, memo);
    }
    memo.insert(key, total);
    total
}

fn symmetric(group: &Arc<GroupTable>, n: usize) -> Result<CharacterTable> {
    let perms = group
        .perms()
        .ok_or_else(|| mismatch(&Provider::SymmetricMn, "group has no permutation elements"))?;
    let cycle_types: Vec<Vec<usize>> = group
        .classes()
        .reps
        .iter()
        .map(|&r| perms[r].extend(n.max(perms[r].degree())).cycle_type())
        .collect();
    let mut rows: Vec<(Vec<usize>, Vec<i64>)> = partitions(n)
        .into_iter()
        .map(|lambda| {
            let vals = cycle_types.iter().map(|mu| mn_character(&lambda, mu)).collect();
            (lambda, vals)
        })
        .collect();
    // by degree; stable sort keeps decreasing lexicographic order among ties
    rows.sort_by_key(|(_, v)| v[0]);
    let labels = rows
        .iter()
        .map(|(l, _)| {
            let parts: Vec<String> = l.iter().map(usize::to_string).collect();
            format!("[{}]", parts.join(","))
        })
        .collect();
    let irr = rows
        .into_iter()
        .map(|(_, v)| {
            ClassFunction::new(group.clone(), v.into_iter().map(Cyclo::from_integer).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    CharacterTable::from_parts(group.clone(), irr, labels, Provenance::MurnaghanNakayama)
}

fn abelian(group: &Arc<GroupTable>) -> Result<CharacterTable> {
    let order = group.order();
    let e = group.exponent();
    // generators chosen greedily by element order
    let mut by_order: Vec<usize> = (0..order).collect();
    by_order.sort_by_key(|&x| std::cmp::Reverse(group.order_of(x)));
    let mut gens = Vec::new();
    let mut span = vec![0usize];
    for &x in &by_order {
        if span.len() == order {
            break;
        }
        if span.contains(&x) {
            continue;
        }
        gens.push(x);
        span = group.subgroup_generated(&gens)?.members;
    }
    // each element as a word: expo[x] = exponent vector over gens
    let mut word: Vec<Option<Vec<usize>>> = vec![None; order];
    word[0] = Some(vec![0; gens.len()]);
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (i, &g) in gens.iter().enumerate() {
            let y = group.mul(x, g);
            if word[y].is_none() {
                let mut w = word[x].clone().unwrap();
                w[i] += 1;
                word[y] = Some(w);
                queue.push_back(y);
            }
        }
    }
    let word: Vec<Vec<usize>> = word.into_iter().map(Option::unwrap).collect();
    let gen_orders: Vec<usize> = gens.iter().map(|&g| group.order_of(g)).collect();
    // a character sends gen i to E(e)^(k_i) with k_i a multiple of e/ord(g_i)
    let mut exps: Vec<Vec<usize>> = Vec::new();
    let mut k = vec![0usize; gens.len()];
    loop {
        let values: Vec<usize> = (0..order)
            .map(|x| word[x].iter().zip(&k).map(|(w, k)| w * k).sum::<usize>() % e)
            .collect();
        let hom = (0..order).all(|x| {
            gens.iter()
                .zip(&k)
                .all(|(&g, &kg)| values[group.mul(x, g)] == (values[x] + kg) % e)
        });
        if hom {
            exps.push(values);
        }
        let mut i = 0;
        loop {
            if i == k.len() {
                break;
            }
            k[i] += e / gen_orders[i];
            if k[i] < e {
                break;
            }
            k[i] = 0;
            i += 1;
        }
        if i == k.len() {
            break;
        }
    }
    exps.sort();
    exps.dedup();
    let labels = (1..=exps.len()).map(|j| format!("chi{j}")).collect();
    // classes of an abelian group are singletons in index order
    let irr = exps
        .into_iter()
        .map(|v| ClassFunction::from_reps(group.clone(), |x| root(e, v[x] as i64)))
        .collect();
    CharacterTable::from_parts(group.clone(), irr, labels, Provenance::Abelian)
}

fn product(group: &Arc<GroupTable>, a: &GroupSpec, b: &GroupSpec) -> Result<CharacterTable> {
    let ga = Arc::new(a.build()?);
    let gb = Arc::new(b.build()?);
    let ta = build_table(&ga, &Provider::Auto)?;
    let tb = build_table(&gb, &Provider::Auto)?;
    let nb = gb.order();
    let mut irr = Vec::new();
    let mut labels = Vec::new();
    for (ca, la) in ta.irreducibles().iter().zip(ta.labels()) {
        for (cb, lb) in tb.irreducibles().iter().zip(tb.labels()) {
            irr.push(ClassFunction::from_reps(group.clone(), |x| {
                ca.at(x / nb) * cb.at(x % nb)
            }));
            labels.push(format!("{la}x{lb}"));
        }
    }
    CharacterTable::from_parts(group.clone(), irr, labels, Provenance::Product)
}

impl CharTableDoc {
    /// Aligns the document with the canonical classes of `group` and builds
    /// an unvalidated table.
    pub fn into_table(self, group: &Arc<GroupTable>, provenance: Provenance) -> Result<CharacterTable> {
        let cls = group.classes();
        if self.group_order != group.order() {
            return Err(Error::CorruptTable(format!(
                "group_order is {}, group has order {}",
                self.group_order,
                group.order()
            )));
        }
        if self.class_sizes.len() != cls.len() {
            return Err(Error::CorruptTable(format!(
                "{} class sizes for {} classes",
                self.class_sizes.len(),
                cls.len()
            )));
        }
        for (c, (&want, &have)) in self.class_sizes.iter().zip(&cls.sizes).enumerate() {
            if want != have {
                return Err(Error::CorruptTable(format!(
                    "class {c} (rep {}) has size {have}, document says {want}",
                    group.name(cls.reps[c])
                )));
            }
        }
        if let Some(orders) = &self.class_rep_orders {
            if orders.len() != cls.len() {
                return Err(Error::CorruptTable("class_rep_orders has the wrong length".into()));
            }
            for (c, &want) in orders.iter().enumerate() {
                let have = group.order_of(cls.reps[c]);
                if want != have {
                    return Err(Error::CorruptTable(format!(
                        "class {c} (rep {}) has representative order {have}, document says {want}",
                        group.name(cls.reps[c])
                    )));
                }
            }
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.irreducibles.len() {
                return Err(Error::CorruptTable(format!(
                    "{} labels for {} characters",
                    labels.len(),
                    self.irreducibles.len()
                )));
            }
        }
        let mut irr = Vec::with_capacity(self.irreducibles.len());
        for (i, row) in self.irreducibles.iter().enumerate() {
            if row.len() != cls.len() {
                return Err(Error::CorruptTable(format!(
                    "row {} has {} values for {} classes",
                    i + 1,
                    row.len(),
                    cls.len()
                )));
            }
            let vals = row
                .iter()
                .enumerate()
                .map(|(c, s)| {
                    Cyclo::parse(s).map_err(|e| {
                        Error::CorruptTable(format!("row {}, class {c}: {e}", i + 1))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            irr.push(ClassFunction::new(group.clone(), vals)?);
        }
        let labels = self.labels.unwrap_or_default();
        CharacterTable::from_parts(group.clone(), irr, labels, provenance)
    }
}

/// Degree of `χ^λ` by the hook length formula, for cross-checks.
pub fn hook_degree(lambda: &[usize]) -> u64 {
    let n: usize = lambda.iter().sum();
    let mut num: u128 = (1..=n as u128).product();
    for (i, &row) in lambda.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = lambda[i + 1..].iter().filter(|&&l| l > j).count();
            num /= (arm + leg + 1) as u128;
        }
    }
    num.to_u64().unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::inner_product;
    use crate::group::make_group;

    fn table(spec: &str) -> CharacterTable {
        build_table(&make_group(spec).unwrap(), &Provider::Auto).unwrap()
    }

    #[test]
    fn dihedral_odd() {
        let t = table("dihedral:5");
        assert_eq!(t.degrees(), &[1, 1, 2, 2]);
        assert_eq!(t.provenance(), Provenance::ClosedFormDihedral);
        let a = 1; // index of the rotation a
        assert_eq!(*t.irreducibles()[2].at(a), Cyclo::parse("E(5)+E(5)^4").unwrap());
    }

    #[test]
    fn dihedral_even() {
        let t = table("dihedral:4");
        assert_eq!(t.degrees(), &[1, 1, 1, 1, 2]);
        assert_eq!(*t.irreducibles()[4].at(2), Cyclo::from_integer(-2));
        assert_eq!(t.labels()[4], "psi1");
    }

    #[test]
    fn symmetric_three() {
        let t = table("symmetric:3");
        assert_eq!(t.degrees(), &[1, 1, 2]);
        let g = t.group().clone();
        let transposition = (0..g.order()).find(|&x| g.order_of(x) == 2).unwrap();
        assert!(t.irreducibles()[2].at(transposition).is_zero());
        for chi in t.irreducibles() {
            assert_eq!(inner_product(chi, chi).unwrap(), Cyclo::one());
        }
    }

    #[test]
    fn symmetric_tables_are_integral_and_match_hooks() {
        for n in 1..=7 {
            let t = table(&format!("symmetric:{n}"));
            assert!(t.is_validated());
            for chi in t.irreducibles() {
                assert!(chi.integer_values().is_ok());
            }
            let mut hooks: Vec<u64> = partitions(n).iter().map(|l| hook_degree(l)).collect();
            hooks.sort_unstable();
            assert_eq!(t.degrees(), hooks.as_slice());
        }
    }

    #[test]
    fn mn_known_values() {
        // S4: χ^[2,1,1] at a 4-cycle is 1, χ^[2,2] at a transposition is 0
        assert_eq!(mn_character(&[2, 1, 1], &[4]), 1);
        assert_eq!(mn_character(&[2, 2], &[2, 1, 1]), 0);
        assert_eq!(mn_character(&[3, 1], &[2, 1, 1]), 1);
        assert_eq!(mn_character(&[1, 1, 1, 1], &[2, 2]), 1);
    }

    #[test]
    fn bundled_a5() {
        let t = table("alternating:5");
        assert_eq!(t.degrees(), &[1, 3, 3, 4, 5]);
        assert_eq!(t.degrees().iter().map(|d| d * d).sum::<u64>(), 60);
        assert_eq!(t.provenance(), Provenance::Bundled);
    }

    #[test]
    fn other_builtin_tables_validate() {
        for spec in [
            "cyclic:1",
            "cyclic:12",
            "quaternion",
            "alternating:4",
            "alternating:3",
            "product:cyclic:2,cyclic:2",
            "product:cyclic:2,[product:cyclic:2,cyclic:2]",
            "product:cyclic:3,symmetric:3",
            "product:cyclic:2,quaternion",
            "perm:(1,2,3,4)",
        ] {
            let t = table(spec);
            assert!(t.is_validated(), "{spec}");
            assert_eq!(t.len(), t.group().class_count(), "{spec}");
        }
    }

    #[test]
    fn provider_mismatch() {
        let g = make_group("symmetric:4").unwrap();
        assert!(matches!(
            build_table(&g, &Provider::DihedralClosedForm),
            Err(Error::ProviderMismatch { .. })
        ));
        let a5 = make_group("perm:(1,2,3,4,5),(1,2,3)").unwrap();
        assert!(build_table(&a5, &Provider::Auto).is_err());
        assert!(build_table(&a5, &Provider::Bundled("a5".into())).is_ok());
    }

    #[test]
    fn provider_parsing() {
        for s in ["auto", "dihedral-closed-form", "bundled:a5", "file:x.json", "symmetric-mn"] {
            assert_eq!(s.parse::<Provider>().unwrap().to_string(), s);
        }
        assert!("bundled:m11".parse::<Provider>().is_err());
    }
}
