//! Enumeration oracles.

use std::sync::Arc;

use rayon::prelude::*;

use super::{check_budget, check_n, CountFunction, CountKind};
use crate::error::{Error, Result};
use crate::group::{GroupTable, Subgroup};

/// `|C(ab)b ∩ C(a)|`, by testing each `x ∈ C(a)` for `x b⁻¹ ∈ C(ab)`.
pub fn coset_meet(g: &GroupTable, a: usize, b: usize) -> u64 {
    let ab = g.mul(a, b);
    let bi = g.inv(b);
    g.centralizer_table()[a]
        .iter()
        .filter(|&&x| g.commutes(g.mul(x as usize, bi), ab))
        .count() as u64
}

fn members_of(g: &GroupTable, h: Option<&Subgroup<'_>>) -> Result<Vec<usize>> {
    match h {
        None => Ok((0..g.order()).collect()),
        Some(s) => {
            if !std::ptr::eq(s.parent, g) && *s.parent != *g {
                return Err(Error::GroupMismatch);
            }
            Ok(s.members.clone())
        }
    }
}

fn restriction(g: &GroupTable, members: &[usize]) -> Option<Vec<usize>> {
    (members.len() != g.order()).then(|| members.to_vec())
}

/// Sums per-element counts over `outer`, in parallel; integer sums make the
/// result independent of the schedule.
fn tally<F>(order: usize, outer: &[usize], body: F) -> Vec<u128>
where
    F: Fn(usize, &mut Vec<u64>) + Sync,
{
    outer
        .par_iter()
        .fold(
            || vec![0u64; order],
            |mut acc, &x| {
                body(x, &mut acc);
                acc
            },
        )
        .map(|v| v.into_iter().map(u128::from).collect::<Vec<u128>>())
        .reduce(
            || vec![0u128; order],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

/// `f_{n,H≤G}` by enumeration. For `n = 3` triples are parametrised as
/// `y = cz`, `x ∈ C(cz)z ∩ C(c)`; for other `n`, after `x_1, x_2` every
/// further unknown is drawn from `C(x_1)x_2 ∩ H`.
pub fn brute_f_n(
    group: &Arc<GroupTable>,
    n: usize,
    h: Option<&Subgroup<'_>>,
    budget: u128,
) -> Result<CountFunction> {
    check_n(n)?;
    let g = &**group;
    let members = members_of(g, h)?;
    let mut in_h = vec![false; g.order()];
    for &x in &members {
        in_h[x] = true;
    }
    let hn = members.len() as u128;
    let cent = g.centralizer_table();
    let values = if n == 3 {
        let projected: u128 = members.iter().map(|&c| hn * cent[c].len() as u128).sum();
        check_budget(projected, budget)?;
        tally(g.order(), &members, |c, acc| {
            for &z in &members {
                let y = g.mul(c, z);
                if !in_h[y] {
                    continue;
                }
                let zi = g.inv(z);
                let count = cent[c]
                    .iter()
                    .filter(|&&x| in_h[x as usize] && g.commutes(g.mul(x as usize, zi), y))
                    .count();
                acc[g.comm(z, y)] += count as u64;
            }
        })
    } else {
        let projected = members.iter().try_fold(0u128, |s, &x| {
            (cent[x].len() as u128)
                .checked_pow((n - 2) as u32)
                .and_then(|p| p.checked_mul(hn))
                .and_then(|p| s.checked_add(p))
        });
        check_budget(projected.unwrap_or(u128::MAX), budget)?;
        tally(g.order(), &members, |x1, acc| {
            let mut tuple = vec![x1, 0];
            for &x2 in &members {
                let target = g.comm(x1, x2);
                if n == 2 {
                    acc[target] += 1;
                    continue;
                }
                let cands: Vec<usize> = cent[x1]
                    .iter()
                    .map(|&c| g.mul(c as usize, x2))
                    .filter(|&x| in_h[x])
                    .collect();
                tuple.truncate(1);
                tuple.push(x2);
                acc[target] += extend(g, &cands, target, n, &mut tuple);
            }
        })
    };
    Ok(CountFunction::from_elements(
        group.clone(),
        CountKind::F,
        n,
        restriction(g, &members),
        values,
    ))
}

/// Number of ways to extend `tuple` to length `n` from `cands` keeping every
/// pairwise commutator (beyond `x_1`) equal to `target`.
fn extend(g: &GroupTable, cands: &[usize], target: usize, n: usize, tuple: &mut Vec<usize>) -> u64 {
    if tuple.len() == n {
        return 1;
    }
    let mut total = 0;
    for &x in cands {
        if tuple[1..].iter().all(|&y| g.comm(y, x) == target) {
            tuple.push(x);
            total += extend(g, cands, target, n, tuple);
            tuple.pop();
        }
    }
    total
}

/// `f_{n,H≤G}` by plain depth-first enumeration of `H^n`, checking each new
/// unknown against all earlier ones. The reference oracle.
pub fn brute_f_n_naive(
    group: &Arc<GroupTable>,
    n: usize,
    h: Option<&Subgroup<'_>>,
    budget: u128,
) -> Result<CountFunction> {
    check_n(n)?;
    let g = &**group;
    let members = members_of(g, h)?;
    let hn = members.len() as u128;
    check_budget(hn.checked_pow(n as u32).unwrap_or(u128::MAX), budget)?;
    let values = tally(g.order(), &members, |x1, acc| {
        for &x2 in &members {
            let target = g.comm(x1, x2);
            let mut tuple = vec![x1, x2];
            acc[target] += naive_extend(g, &members, target, n, &mut tuple);
        }
    });
    Ok(CountFunction::from_elements(
        group.clone(),
        CountKind::F,
        n,
        restriction(g, &members),
        values,
    ))
}

fn naive_extend(
    g: &GroupTable,
    members: &[usize],
    target: usize,
    n: usize,
    tuple: &mut Vec<usize>,
) -> u64 {
    if tuple.len() == n {
        return 1;
    }
    let mut total = 0;
    for &x in members {
        if tuple.iter().all(|&y| g.comm(y, x) == target) {
            tuple.push(x);
            total += naive_extend(g, members, target, n, tuple);
            tuple.pop();
        }
    }
    total
}

/// `f_3` by the literal triple loop over `G³`.
pub fn brute_f3_naive(group: &Arc<GroupTable>, budget: u128) -> Result<CountFunction> {
    let g = &**group;
    let order = g.order();
    check_budget((order as u128).pow(3), budget)?;
    let all: Vec<usize> = (0..order).collect();
    let values = tally(order, &all, |x, acc| {
        for y in 0..order {
            let c = g.comm(x, y);
            for z in 0..order {
                if g.comm(x, z) == c && g.comm(y, z) == c {
                    acc[c] += 1;
                }
            }
        }
    });
    Ok(CountFunction::from_elements(group.clone(), CountKind::F, 3, None, values))
}

/// `t_n(g) = Σ_{[x,y]=g} |C(x)|^{n-2}`: once `x_1, x_2` are fixed, each
/// further `x_i` ranges over `C(x_1)x_2`.
pub fn brute_t_n(group: &Arc<GroupTable>, n: usize, budget: u128) -> Result<CountFunction> {
    check_n(n)?;
    let g = &**group;
    let order = g.order();
    check_budget((order as u128) * (order as u128), budget)?;
    let cent = g.centralizer_table();
    let mut values = vec![0u128; order];
    for (x, cx) in cent.iter().enumerate() {
        let w = (cx.len() as u128)
            .checked_pow((n - 2) as u32)
            .ok_or_else(|| Error::Precondition("t_n values overflow 128 bits".into()))?;
        for y in 0..order {
            let c = g.comm(x, y);
            values[c] = values[c]
                .checked_add(w)
                .ok_or_else(|| Error::Precondition("t_n values overflow 128 bits".into()))?;
        }
    }
    Ok(CountFunction::from_elements(group.clone(), CountKind::T, n, None, values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counts::DEFAULT_BUDGET;
    use crate::group::make_group;

    fn class_vals(spec: &str, n: usize) -> Vec<u128> {
        let g = make_group(spec).unwrap();
        brute_f_n(&g, n, None, DEFAULT_BUDGET).unwrap().class_values().unwrap()
    }

    #[test]
    fn symmetric_three_identity() {
        assert_eq!(class_vals("symmetric:3", 3)[0], 48);
    }

    #[test]
    fn symmetric_four_three_cycle() {
        let g = make_group("symmetric:4").unwrap();
        let f = brute_f_n(&g, 3, None, DEFAULT_BUDGET).unwrap();
        let p = crate::perm::Perm::parse_cycles("(1,2,3)", 4).unwrap();
        assert_eq!(f.at(g.index_of_perm(&p).unwrap()), 12);
        let q = crate::perm::Perm::parse_cycles("(1,2)(3,4)", 4).unwrap();
        assert_eq!(f.at(g.index_of_perm(&q).unwrap()), 72);
    }

    #[test]
    fn a5_chart() {
        assert_eq!(class_vals("alternating:5", 3), vec![1320, 24, 12, 20, 20]);
        assert_eq!(class_vals("alternating:5", 2), vec![300, 32, 63, 65, 65]);
    }

    #[test]
    fn abelian_groups() {
        for n in 2..=4 {
            let v = class_vals("product:cyclic:2,cyclic:3", n);
            assert_eq!(v[0], 6u128.pow(n as u32));
            assert!(v[1..].iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn optimized_matches_naive() {
        for spec in ["symmetric:3", "dihedral:4", "quaternion", "alternating:4", "dihedral:6"] {
            let g = make_group(spec).unwrap();
            let naive = brute_f3_naive(&g, DEFAULT_BUDGET).unwrap();
            assert_eq!(brute_f_n(&g, 3, None, DEFAULT_BUDGET).unwrap(), naive, "{spec}");
            assert_eq!(brute_f_n_naive(&g, 3, None, DEFAULT_BUDGET).unwrap(), naive, "{spec}");
            for n in [2, 4] {
                assert_eq!(
                    brute_f_n(&g, n, None, DEFAULT_BUDGET).unwrap(),
                    brute_f_n_naive(&g, n, None, DEFAULT_BUDGET).unwrap(),
                    "{spec} n={n}"
                );
            }
        }
    }

    #[test]
    fn restricted_counts() {
        let g = make_group("symmetric:4").unwrap();
        let a4: Vec<usize> = (0..24)
            .filter(|&x| g.perms().unwrap()[x].is_even())
            .collect();
        let h = Subgroup::from_members(&g, a4).unwrap();
        for n in 2..=4 {
            let fast = brute_f_n(&g, n, Some(&h), DEFAULT_BUDGET).unwrap();
            let slow = brute_f_n_naive(&g, n, Some(&h), DEFAULT_BUDGET).unwrap();
            assert_eq!(fast, slow);
            let full = brute_f_n(&g, n, None, DEFAULT_BUDGET).unwrap();
            assert!((0..24).all(|x| fast.at(x) <= full.at(x)));
        }
    }

    #[test]
    fn star_counts() {
        let g = make_group("dihedral:5").unwrap();
        let t3 = brute_t_n(&g, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(t3.at(0), 220);
        for spec in ["symmetric:4", "quaternion"] {
            let g = make_group(spec).unwrap();
            let t2 = brute_t_n(&g, 2, DEFAULT_BUDGET).unwrap();
            let f2 = brute_f_n(&g, 2, None, DEFAULT_BUDGET).unwrap();
            assert_eq!(t2.values(), f2.values());
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = make_group("symmetric:5").unwrap();
        let err = brute_f3_naive(&g, 1000).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                projected: 120u128.pow(3),
                budget: 1000
            }
        );
        assert!(brute_f_n(&g, 1, None, DEFAULT_BUDGET).is_err());
    }
}
