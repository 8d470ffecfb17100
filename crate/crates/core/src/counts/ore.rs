//! Ore sets and explicit solutions of `[x,y] = [x,z] = [y,z] = g` in
//! symmetric groups.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::brute::brute_f_n;
use crate::error::{Error, Result};
use crate::group::{GroupLike, GroupTable, SymmetricOn};
use crate::perm::Perm;

/// `{ g : f_k(g) > 0 }`, a union of conjugacy classes, as sorted elements.
pub fn ore_set(group: &Arc<GroupTable>, k: usize, budget: u128) -> Result<Vec<usize>> {
    Ok(brute_f_n(group, k, None, budget)?.support())
}

/// Whether all three pairwise commutators of `t` (in order `i < j`) equal
/// `target`.
pub fn verify_triple<G: GroupLike>(g: &G, t: &[G::Elem; 3], target: &G::Elem) -> bool {
    g.commutator_of(&t[0], &t[1]) == *target
        && g.commutator_of(&t[0], &t[2]) == *target
        && g.commutator_of(&t[1], &t[2]) == *target
}

/// `(x_1 y_1, x_2 y_2, x_3 y_3)`, which solves the system for `gh` when the
/// `x` solve it for `g`, the `y` for `h`, and every `x_i` commutes with
/// every `y_j`. All three conditions are checked.
pub fn combine_disjoint_triples<G: GroupLike>(
    g: &G,
    x: &[G::Elem; 3],
    y: &[G::Elem; 3],
) -> Result<[G::Elem; 3]> {
    let e = g.identity();
    for xi in x {
        for yj in y {
            if g.commutator_of(xi, yj) != e {
                return Err(Error::Precondition(format!(
                    "{xi:?} and {yj:?} do not commute"
                )));
            }
        }
    }
    let gx = g.commutator_of(&x[0], &x[1]);
    let gy = g.commutator_of(&y[0], &y[1]);
    if !verify_triple(g, x, &gx) || !verify_triple(g, y, &gy) {
        return Err(Error::Precondition(
            "inputs do not have equal pairwise commutators".into(),
        ));
    }
    let out = [
        g.op(&x[0], &y[0]),
        g.op(&x[1], &y[1]),
        g.op(&x[2], &y[2]),
    ];
    let target = g.op(&gx, &gy);
    if !verify_triple(g, &out, &target) {
        return Err(Error::SearchFailed("combined triple does not verify".into()));
    }
    Ok(out)
}

/// How one block of cycles was solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockMethod {
    /// Exhaustive search in the symmetric group on at most four points.
    SmallSearch,
    /// Search in the dihedral group generated by an odd cycle and a
    /// reflection of it.
    DihedralOdd,
    /// Two cycles of equal even length are the square of an interleaving
    /// cycle; search in that cycle's dihedral group.
    DihedralSquare,
    /// Exhaustive search over conjugators in the symmetric group on the
    /// block's support.
    ConjugatorSearch,
}

impl fmt::Display for BlockMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockMethod::SmallSearch => "small-search",
            BlockMethod::DihedralOdd => "dihedral-odd",
            BlockMethod::DihedralSquare => "dihedral-square",
            BlockMethod::ConjugatorSearch => "conjugator-search",
        })
    }
}

/// A block of cycles of the target solved on its own support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// The block's cycles, 0-based points.
    pub cycles: Vec<Vec<usize>>,
    pub method: BlockMethod,
}

/// A verified solution of `[x_i, x_j] = g` for `i < j` in `Σ_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OreTriple {
    pub n: usize,
    pub target: Perm,
    pub triple: [Perm; 3],
    pub blocks: Vec<Block>,
}

const MAX_DEGREE: usize = 9;
const SEARCH_CAP: u64 = 200_000_000;

/// Solves `[x_1,x_2] = [x_1,x_3] = [x_2,x_3] = g` for an even permutation
/// `g` of `n ≤ 9` points. Each odd cycle forms a block, even cycles are paired
/// (equal lengths first); blocks have disjoint supports, are solved
/// separately and multiplied together. The result is verified.
pub fn ore_triple_symmetric(n: usize, g: &Perm) -> Result<OreTriple> {
    if !(3..=MAX_DEGREE).contains(&n) {
        return Err(Error::Precondition(format!("degree must lie in 3..={MAX_DEGREE}, got {n}")));
    }
    if g.max_moved() > n {
        return Err(Error::Precondition(format!("{g} moves points beyond {n}")));
    }
    let target = if g.degree() < n {
        g.extend(n)
    } else {
        Perm::from_images(g.images()[..n].to_vec())?
    };
    if !target.is_even() {
        return Err(Error::Precondition(format!("{g} is an odd permutation")));
    }
    let cycles: Vec<Vec<usize>> = target.cycles().into_iter().filter(|c| c.len() > 1).collect();
    let mut blocks: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut even: Vec<Vec<usize>> = Vec::new();
    for c in cycles {
        if c.len() % 2 == 1 {
            blocks.push(vec![c]);
        } else {
            even.push(c);
        }
    }
    even.sort_by_key(|c| (c.len(), c[0]));
    for pair in even.chunks(2) {
        blocks.push(pair.to_vec());
    }
    let sym = SymmetricOn(n);
    let id = Perm::identity(n);
    let mut triple = [id.clone(), id.clone(), id];
    let mut solved = Vec::new();
    for block in blocks {
        let (method, local) = solve_block(&block)?;
        let points: Vec<usize> = block.iter().flatten().copied().collect();
        let lifted = local.map(|p| {
            let mut images: Vec<u8> = (0..n as u8).collect();
            for (i, &pt) in points.iter().enumerate() {
                images[pt] = points[p.apply(i)] as u8;
            }
            Perm::from_images(images).expect("lifted bijection")
        });
        triple = combine_disjoint_triples(&sym, &triple, &lifted)?;
        solved.push(Block {
            cycles: block,
            method,
        });
    }
    if !verify_triple(&sym, &triple, &target) {
        return Err(Error::SearchFailed(format!("triple for {g} does not verify")));
    }
    Ok(OreTriple {
        n,
        target,
        triple,
        blocks: solved,
    })
}

type Solution = (BlockMethod, [Perm; 3]);

fn cache() -> &'static Mutex<HashMap<Vec<usize>, Solution>> {
    static CACHE: OnceLock<Mutex<HashMap<Vec<usize>, Solution>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Solves a block in canonical position: its cycles laid out consecutively
/// on `0..s`. Solutions depend only on the cycle lengths and are cached.
fn solve_block(block: &[Vec<usize>]) -> Result<Solution> {
    let lengths: Vec<usize> = block.iter().map(Vec::len).collect();
    if let Some(s) = cache().lock().expect("cache lock").get(&lengths) {
        return Ok(s.clone());
    }
    let s: usize = lengths.iter().sum();
    let mut images: Vec<u8> = (0..s as u8).collect();
    let mut start = 0;
    for &l in &lengths {
        for i in 0..l {
            images[start + i] = (start + (i + 1) % l) as u8;
        }
        start += l;
    }
    let g0 = Perm::from_images(images)?;
    let sym = SymmetricOn(s);
    let solution = if s <= 4 {
        let all = all_perms(s);
        (BlockMethod::SmallSearch, search_in(&sym, &all, &g0))
    } else if lengths.len() == 1 {
        let seq: Vec<usize> = (0..s).collect();
        (BlockMethod::DihedralOdd, search_in(&sym, &dihedral(&seq, s), &g0))
    } else if lengths[0] == lengths[1] {
        let m = lengths[0];
        let seq: Vec<usize> = (0..m).flat_map(|i| [i, m + i]).collect();
        (BlockMethod::DihedralSquare, search_in(&sym, &dihedral(&seq, s), &g0))
    } else {
        (BlockMethod::ConjugatorSearch, conjugator_search(&g0)?)
    };
    let (method, triple) = solution;
    let triple = triple.ok_or_else(|| {
        Error::SearchFailed(format!("no triple found for cycle lengths {lengths:?} by {method}"))
    })?;
    let sol = (method, triple);
    cache().lock().expect("cache lock").insert(lengths, sol.clone());
    Ok(sol)
}

fn search_in(sym: &SymmetricOn, elems: &[Perm], g: &Perm) -> Option<[Perm; 3]> {
    for x in elems {
        for y in elems {
            if sym.commutator_of(x, y) != *g {
                continue;
            }
            for z in elems {
                let t = [x.clone(), y.clone(), z.clone()];
                if verify_triple(sym, &t, g) {
                    return Some(t);
                }
            }
        }
    }
    None
}

/// The dihedral group of the cycle `seq` (rotations and reflections) on
/// `s` points.
fn dihedral(seq: &[usize], s: usize) -> Vec<Perm> {
    let m = seq.len();
    let mut out = Vec::with_capacity(2 * m);
    for r in 0..m {
        for refl in [false, true] {
            let mut images: Vec<u8> = (0..s as u8).collect();
            for i in 0..m {
                let j = if refl { (m + r - i) % m } else { (i + r) % m };
                images[seq[i]] = seq[j] as u8;
            }
            out.push(Perm::from_images(images).expect("dihedral bijection"));
        }
    }
    out
}

fn all_perms(s: usize) -> Vec<Perm> {
    let mut cur: Vec<u8> = (0..s as u8).collect();
    let mut out = vec![Perm::from_images(cur.clone()).expect("identity")];
    loop {
        let Some(i) = (1..s).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..s).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Perm::from_images(cur.clone()).expect("permutation"));
    }
}

fn centralizer_order(cycle_type: &[usize]) -> u64 {
    let mut counts: HashMap<usize, u64> = HashMap::new();
    for &l in cycle_type {
        *counts.entry(l).or_default() += 1;
    }
    counts
        .iter()
        .map(|(&l, &m)| (l as u64).pow(m as u32) * (1..=m).product::<u64>())
        .product()
}

/// All `y` with `y⁻¹ x y = x'`: bijections carrying each cycle of `x` onto a
/// cycle of `x'` of the same length, at every rotation.
fn conjugators(x: &Perm, xp: &Perm) -> Vec<Perm> {
    let s = x.degree();
    let cx = x.cycles();
    let cp = xp.cycles();
    let mut out = Vec::new();
    let mut images = vec![0u8; s];
    let mut used = vec![false; cp.len()];
    fn go(
        k: usize,
        cx: &[Vec<usize>],
        cp: &[Vec<usize>],
        used: &mut [bool],
        images: &mut [u8],
        out: &mut Vec<Perm>,
    ) {
        if k == cx.len() {
            out.push(Perm::from_images(images.to_vec()).expect("conjugator"));
            return;
        }
        let src = &cx[k];
        for t in 0..cp.len() {
            if used[t] || cp[t].len() != src.len() {
                continue;
            }
            used[t] = true;
            let l = src.len();
            for rot in 0..l {
                for i in 0..l {
                    images[src[i]] = cp[t][(i + rot) % l] as u8;
                }
                go(k + 1, cx, cp, used, images, out);
            }
            used[t] = false;
        }
    }
    go(0, &cx, &cp, &mut used, &mut images, &mut out);
    out
}

/// Every solution `(x, y, z)` has `y, z` among the conjugators from `x` to
/// `x g`; tries `x` in order of increasing centralizer size.
fn conjugator_search(g: &Perm) -> Result<Option<[Perm; 3]>> {
    let s = g.degree();
    let sym = SymmetricOn(s);
    let mut xs: Vec<(u64, Perm)> = all_perms(s)
        .into_iter()
        .filter(|x| x.then(g).cycle_type() == x.cycle_type())
        .map(|x| (centralizer_order(&x.cycle_type()), x))
        .collect();
    xs.sort();
    let mut work = 0u64;
    for (c, x) in xs {
        work += c * c;
        if work > SEARCH_CAP {
            return Err(Error::SearchFailed(format!("work cap reached for {g}")));
        }
        let ys = conjugators(&x, &x.then(g));
        for y in &ys {
            for z in &ys {
                if sym.commutator_of(y, z) == *g {
                    return Ok(Some([x.clone(), y.clone(), z.clone()]));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counts::DEFAULT_BUDGET;
    use crate::group::make_group;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn small_targets() {
        let t = ore_triple_symmetric(3, &p("(1,2,3)", 3)).unwrap();
        assert!(verify_triple(&SymmetricOn(3), &t.triple, &t.target));
        let t = ore_triple_symmetric(4, &p("(1,2)(3,4)", 4)).unwrap();
        assert!(verify_triple(&SymmetricOn(4), &t.triple, &t.target));
        let t = ore_triple_symmetric(5, &p("(1,2,3,4,5)", 5)).unwrap();
        assert_eq!(t.blocks[0].method, BlockMethod::DihedralOdd);
        let w = p("(2,5)(3,4)", 5);
        let gen = p("(1,2,3,4,5)", 5);
        let d10: Vec<Perm> = dihedral(&[0, 1, 2, 3, 4], 5);
        assert!(d10.contains(&w) && d10.contains(&gen));
        assert!(t.triple.iter().all(|x| d10.contains(x)));
    }

    #[test]
    fn every_even_class_up_to_nine() {
        for n in 3..=9 {
            for ty in crate::characters::partitions(n) {
                let mut images: Vec<u8> = Vec::new();
                let mut start = 0u8;
                for &l in &ty {
                    for i in 0..l as u8 {
                        images.push(start + (i + 1) % l as u8);
                    }
                    start += l as u8;
                }
                let g = Perm::from_images(images).unwrap();
                if !g.is_even() {
                    assert!(ore_triple_symmetric(n, &g).is_err());
                    continue;
                }
                let t = ore_triple_symmetric(n, &g).unwrap();
                assert!(verify_triple(&SymmetricOn(n), &t.triple, &g), "{g}");
            }
        }
    }

    #[test]
    fn combine_examples() {
        let s6 = SymmetricOn(6);
        let x = ore_triple_symmetric(6, &p("(1,2,3)", 6)).unwrap().triple;
        let id = Perm::identity(6);
        let ones = [id.clone(), id.clone(), id];
        assert_eq!(combine_disjoint_triples(&s6, &x, &ones).unwrap(), x);
        let y = ore_triple_symmetric(6, &p("(4,5,6)", 6)).unwrap().triple;
        let z = combine_disjoint_triples(&s6, &x, &y).unwrap();
        assert!(verify_triple(&s6, &z, &p("(1,2,3)(4,5,6)", 6)));
        let bad = [p("(1,4)", 6), p("(1,4)", 6), p("(1,4)", 6)];
        assert!(combine_disjoint_triples(&s6, &x, &bad).is_err());
    }

    #[test]
    fn ore_sets() {
        let s4 = make_group("symmetric:4").unwrap();
        let o = ore_set(&s4, 3, DEFAULT_BUDGET).unwrap();
        let evens: Vec<usize> = (0..24).filter(|&x| s4.perms().unwrap()[x].is_even()).collect();
        assert_eq!(o, evens);
        let s3 = make_group("symmetric:3").unwrap();
        assert_eq!(ore_set(&s3, 4, DEFAULT_BUDGET).unwrap(), vec![0]);
        let c5 = make_group("cyclic:5").unwrap();
        assert_eq!(ore_set(&c5, 3, DEFAULT_BUDGET).unwrap(), vec![0]);
    }
}
