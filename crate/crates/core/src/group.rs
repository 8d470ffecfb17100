//! Finite groups as dense multiplication tables.
//!
//! Elements are indices `0..order` with the identity at index 0. Every
//! ordering exposed here (class order, class representatives, element order of
//! the built-in constructors) is canonical, so repeated runs produce identical
//! output.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Largest group order accepted anywhere (the order of A₈).
pub const MAX_ORDER: usize = 20160;

/// Orders up to this size get a full associativity check at construction.
pub const DEFAULT_ASSOCIATIVITY_CAP: usize = 256;

const SPOT_CHECKS: usize = 1000;
const SPOT_SEED: u64 = 0x5eed_c0de;

/// Constructor description of a group, also used as its family tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion,
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Perm(Vec<Perm>),
    File(String),
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let t = text.trim();
        let t = strip_brackets(t);
        let (head, arg) = match t.split_once(':') {
            Some((h, a)) => (h.trim(), a.trim()),
            None => (t, ""),
        };
        let number = |min: usize, max: usize| -> Result<usize> {
            let n: usize = arg
                .parse()
                .map_err(|_| Error::spec(text, format!("expected an integer after `{head}:`")))?;
            if n < min || n > max {
                return Err(Error::spec(text, format!("parameter must lie in {min}..={max}")));
            }
            Ok(n)
        };
        match head {
            "cyclic" => Ok(GroupSpec::Cyclic(number(1, MAX_ORDER)?)),
            "dihedral" => Ok(GroupSpec::Dihedral(number(3, MAX_ORDER / 2)?)),
            "symmetric" => Ok(GroupSpec::Symmetric(number(1, 8)?)),
            "alternating" => Ok(GroupSpec::Alternating(number(1, 8)?)),
            "quaternion" if arg.is_empty() => Ok(GroupSpec::Quaternion),
            "product" => {
                for (i, c) in arg.char_indices() {
                    if c != ',' || depth_at(arg, i) != 0 {
                        continue;
                    }
                    if let (Ok(a), Ok(b)) =
                        (GroupSpec::parse(&arg[..i]), GroupSpec::parse(&arg[i + 1..]))
                    {
                        return Ok(GroupSpec::Product(Box::new(a), Box::new(b)));
                    }
                }
                Err(Error::spec(text, "expected product:<spec>,<spec>"))
            }
            "perm" => {
                let mut gens = Vec::new();
                let mut start = 0;
                for (i, c) in arg.char_indices().chain(std::iter::once((arg.len(), ','))) {
                    if (c == ',' || c == ';') && depth_at(arg, i) == 0 {
                        let piece = arg[start..i].trim();
                        if !piece.is_empty() {
                            gens.push(Perm::parse_cycles(piece, 0)?);
                        }
                        start = i + 1;
                    }
                }
                if gens.is_empty() {
                    gens.push(Perm::identity(1));
                }
                Ok(GroupSpec::Perm(gens))
            }
            "file" if !arg.is_empty() => Ok(GroupSpec::File(arg.to_string())),
            _ => Err(Error::spec(text, "unknown group family")),
        }
    }

    pub fn build(&self) -> Result<GroupTable> {
        let mut g = match self {
            GroupSpec::Cyclic(n) => cyclic(*n),
            GroupSpec::Dihedral(n) => dihedral(*n),
            GroupSpec::Quaternion => quaternion(),
            GroupSpec::Symmetric(n) => {
                let elems = all_perms(*n, false)?;
                from_perms(elems)?
            }
            GroupSpec::Alternating(n) => {
                let elems = all_perms(*n, true)?;
                from_perms(elems)?
            }
            GroupSpec::Perm(gens) => from_perms(perm_closure(gens)?)?,
            GroupSpec::Product(a, b) => direct_product(&a.build()?, &b.build()?)?,
            GroupSpec::File(path) => crate::io::load_group(path)?,
        };
        g.family = Some(self.clone());
        Ok(g)
    }
}

fn strip_brackets(t: &str) -> &str {
    let mut t = t;
    while t.starts_with('[') && t.ends_with(']') && matching_close(t) == Some(t.len() - 1) {
        t = t[1..t.len() - 1].trim();
    }
    t
}

fn matching_close(t: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in t.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn depth_at(t: &str, pos: usize) -> i32 {
    t[..pos].chars().fold(0, |d, c| match c {
        '[' | '(' => d + 1,
        ']' | ')' => d - 1,
        _ => d,
    })
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupSpec::Alternating(n) => write!(f, "alternating:{n}"),
            GroupSpec::Quaternion => write!(f, "quaternion"),
            GroupSpec::Product(a, b) => {
                let wrap = |s: &GroupSpec| match s {
                    GroupSpec::Product(..) | GroupSpec::Perm(_) => format!("[{s}]"),
                    _ => s.to_string(),
                };
                write!(f, "product:{},{}", wrap(a), wrap(b))
            }
            GroupSpec::Perm(gens) => {
                write!(f, "perm:")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
            GroupSpec::File(p) => write!(f, "file:{p}"),
        }
    }
}

/// Parses and builds a group from its spec string.
pub fn make_group(spec: &str) -> Result<Arc<GroupTable>> {
    Ok(Arc::new(GroupSpec::parse(spec)?.build()?))
}

/// Conjugacy classes in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPartition {
    pub classes: Vec<Vec<usize>>,
    pub reps: Vec<usize>,
    pub class_of: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl ClassPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// A subgroup, stored as the sorted list of its member indices.
#[derive(Clone)]
pub struct Subgroup<'g> {
    pub parent: &'g GroupTable,
    pub members: Vec<usize>,
}

impl<'g> Subgroup<'g> {
    /// Wraps a member set, rejecting it unless it is a subgroup.
    pub fn from_members(parent: &'g GroupTable, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            parent.check(m)?;
        }
        let s = Subgroup { parent, members };
        if !s.is_closed() {
            return Err(Error::Precondition("member set is not a subgroup".into()));
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_closed(&self) -> bool {
        if !self.contains(0) {
            return false;
        }
        self.members.iter().all(|&x| {
            self.contains(self.parent.inv(x))
                && self.members.iter().all(|&y| self.contains(self.parent.mul(x, y)))
        })
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.parent;
        self.members
            .iter()
            .all(|&x| self.members.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup<'_>) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }
}

impl fmt::Debug for Subgroup<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order())
            .field("members", &self.members)
            .finish()
    }
}

/// A finite group with full multiplication table.
pub struct GroupTable {
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    names: Option<Vec<String>>,
    family: Option<GroupSpec>,
    perms: Option<Vec<Perm>>,
    classes: OnceLock<ClassPartition>,
    centralizers: OnceLock<Vec<Vec<u32>>>,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("order", &self.order)
            .field("family", &self.family.as_ref().map(|s| s.to_string()))
            .finish()
    }
}

impl PartialEq for GroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}

impl Eq for GroupTable {}

impl GroupTable {
    /// Builds a group from a row-major table, validating every group axiom
    /// (associativity exhaustively up to [`DEFAULT_ASSOCIATIVITY_CAP`]).
    pub fn from_table(rows: &[Vec<usize>], names: Option<Vec<String>>) -> Result<Self> {
        Self::from_table_with_cap(rows, names, DEFAULT_ASSOCIATIVITY_CAP)
    }

    pub fn from_table_with_cap(
        rows: &[Vec<usize>],
        names: Option<Vec<String>>,
        associativity_cap: usize,
    ) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::ClosureTooLarge { cap: MAX_ORDER });
        }
        let mut mul = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidGroup(format!("row {i} has entry {v} >= {n}")));
                }
                mul.push(v as u16);
            }
        }
        if let Some(names) = &names {
            if names.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "{} names for {n} elements",
                    names.len()
                )));
            }
        }
        let g = Self::raw(n, mul, names, None)?;
        g.check_axioms(associativity_cap)?;
        Ok(g)
    }

    /// Builds from a flat table, deriving inverses; checks the identity law,
    /// Latin-square property and inverses but not associativity.
    fn raw(
        n: usize,
        mul: Vec<u16>,
        names: Option<Vec<String>>,
        perms: Option<Vec<Perm>>,
    ) -> Result<Self> {
        for x in 0..n {
            if mul[x] as usize != x || mul[x * n] as usize != x {
                return Err(Error::InvalidGroup(format!(
                    "index 0 is not an identity (fails at element {x})"
                )));
            }
        }
        let mut seen = vec![0u32; n];
        for x in 0..n {
            for y in 0..n {
                let v = mul[x * n + y] as usize;
                if seen[v] == (x as u32) + 1 {
                    return Err(Error::InvalidGroup(format!("row {x} repeats {v}")));
                }
                seen[v] = x as u32 + 1;
            }
        }
        seen.iter_mut().for_each(|s| *s = 0);
        for y in 0..n {
            for x in 0..n {
                let v = mul[x * n + y] as usize;
                if seen[v] == (y as u32) + 1 {
                    return Err(Error::InvalidGroup(format!("column {y} repeats {v}")));
                }
                seen[v] = y as u32 + 1;
            }
        }
        let mut inv = vec![0u16; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| mul[x * n + y] == 0)
                .expect("Latin square row contains the identity");
            if mul[y * n + x] != 0 {
                return Err(Error::InvalidGroup(format!("element {x} has no two-sided inverse")));
            }
            inv[x] = y as u16;
        }
        Ok(GroupTable {
            order: n,
            mul,
            inv,
            names,
            family: None,
            perms,
            classes: OnceLock::new(),
            centralizers: OnceLock::new(),
        })
    }

    fn check_axioms(&self, associativity_cap: usize) -> Result<()> {
        let n = self.order;
        let bad = |x: usize, y: usize, z: usize| {
            Error::InvalidGroup(format!("associativity fails on ({x}, {y}, {z})"))
        };
        if n <= associativity_cap {
            for x in 0..n {
                for y in 0..n {
                    let xy = self.mul(x, y);
                    for z in 0..n {
                        if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                            return Err(bad(x, y, z));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(SPOT_SEED);
            for _ in 0..SPOT_CHECKS {
                let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                    return Err(bad(x, y, z));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    /// `[x, y] = x⁻¹y⁻¹xy` without bounds checks beyond the table's own.
    #[inline]
    pub fn comm(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    /// Checked commutator.
    pub fn commutator(&self, x: usize, y: usize) -> Result<usize> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.comm(x, y))
    }

    /// `w⁻¹ x w`.
    #[inline]
    pub fn conjugate(&self, x: usize, w: usize) -> usize {
        self.mul(self.mul(self.inv(w), x), w)
    }

    #[inline]
    pub fn commutes(&self, x: usize, y: usize) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn check(&self, x: usize) -> Result<()> {
        if x < self.order {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: x,
                order: self.order,
            })
        }
    }

    pub fn family(&self) -> Option<&GroupSpec> {
        self.family.as_ref()
    }

    pub fn set_family(&mut self, family: Option<GroupSpec>) {
        self.family = family;
    }

    /// Permutation representation, when the group was built from permutations.
    pub fn perms(&self) -> Option<&[Perm]> {
        self.perms.as_deref()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, x: usize) -> String {
        match &self.names {
            Some(n) => n[x].clone(),
            None => format!("#{x}"),
        }
    }

    /// The multiplication table as rows of indices.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|x| (0..self.order).map(|y| self.mul(x, y)).collect())
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (x + 1..self.order).all(|y| self.commutes(x, y)))
    }

    pub fn element_order(&self, g: usize) -> Result<usize> {
        self.check(g)?;
        Ok(self.order_of(g))
    }

    pub(crate) fn order_of(&self, g: usize) -> usize {
        let mut m = 1;
        let mut p = g;
        while p != 0 {
            p = self.mul(p, g);
            m += 1;
        }
        m
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        let cls = self.classes();
        cls.reps
            .iter()
            .map(|&r| self.order_of(r))
            .fold(1, num_integer::lcm)
    }

    /// Conjugacy classes: representatives are minimal indices and classes are
    /// sorted by representative, so class 0 is `{0}`.
    pub fn classes(&self) -> &ClassPartition {
        self.classes.get_or_init(|| {
            let n = self.order;
            let mut class_of = vec![usize::MAX; n];
            let mut classes = Vec::new();
            for x in 0..n {
                if class_of[x] != usize::MAX {
                    continue;
                }
                let id = classes.len();
                let mut members = Vec::new();
                for w in 0..n {
                    let c = self.conjugate(x, w);
                    if class_of[c] == usize::MAX {
                        class_of[c] = id;
                        members.push(c);
                    }
                }
                members.sort_unstable();
                classes.push(members);
            }
            let reps = classes.iter().map(|c| c[0]).collect();
            let sizes = classes.iter().map(Vec::len).collect();
            ClassPartition {
                classes,
                reps,
                class_of,
                sizes,
            }
        })
    }

    pub fn conjugacy_classes(&self) -> ClassPartition {
        self.classes().clone()
    }

    pub fn class_count(&self) -> usize {
        self.classes().len()
    }

    #[inline]
    pub fn class_of(&self, g: usize) -> usize {
        self.classes().class_of[g]
    }

    /// Sorted centralizer members of every element (cached).
    pub fn centralizer_table(&self) -> &[Vec<u32>] {
        self.centralizers.get_or_init(|| {
            (0..self.order)
                .map(|g| {
                    (0..self.order)
                        .filter(|&x| self.commutes(x, g))
                        .map(|x| x as u32)
                        .collect()
                })
                .collect()
        })
    }

    #[inline]
    pub fn centralizer_order(&self, g: usize) -> usize {
        self.order / self.classes().sizes[self.class_of(g)]
    }

    pub fn centralizer(&self, g: usize) -> Result<Subgroup<'_>> {
        self.check(g)?;
        Ok(Subgroup {
            parent: self,
            members: self.centralizer_table()[g]
                .iter()
                .map(|&x| x as usize)
                .collect(),
        })
    }

    pub fn whole(&self) -> Subgroup<'_> {
        Subgroup {
            parent: self,
            members: (0..self.order).collect(),
        }
    }

    pub fn trivial(&self) -> Subgroup<'_> {
        Subgroup {
            parent: self,
            members: vec![0],
        }
    }

    pub fn center(&self) -> Subgroup<'_> {
        let cls = self.classes();
        Subgroup {
            parent: self,
            members: (0..self.order)
                .filter(|&g| cls.sizes[cls.class_of[g]] == 1)
                .collect(),
        }
    }

    pub fn derived_subgroup(&self) -> Subgroup<'_> {
        let mut is_comm = vec![false; self.order];
        for x in 0..self.order {
            for y in 0..self.order {
                is_comm[self.comm(x, y)] = true;
            }
        }
        let gens: Vec<usize> = (0..self.order).filter(|&g| is_comm[g]).collect();
        self.generated(&gens)
    }

    pub fn center_and_derived(&self) -> (Subgroup<'_>, Subgroup<'_>) {
        (self.center(), self.derived_subgroup())
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Result<Subgroup<'_>> {
        for &g in gens {
            self.check(g)?;
        }
        Ok(self.generated(gens))
    }

    fn generated(&self, gens: &[usize]) -> Subgroup<'_> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup {
            parent: self,
            members: (0..self.order).filter(|&x| inside[x]).collect(),
        }
    }

    /// Transitively commutative: every non-central element has an abelian
    /// centralizer.
    pub fn is_tc(&self) -> bool {
        let cls = self.classes();
        cls.reps.iter().enumerate().all(|(i, &r)| {
            cls.sizes[i] == 1 || self.centralizer(r).expect("valid rep").is_abelian()
        })
    }

    /// Index of a permutation element, for groups built from permutations.
    pub fn index_of_perm(&self, p: &Perm) -> Option<usize> {
        let perms = self.perms.as_ref()?;
        let deg = perms[0].degree();
        if p.degree() > deg {
            return None;
        }
        let p = p.extend(deg);
        perms.iter().position(|q| *q == p)
    }
}

/// Group operations needed by algorithms that also run outside a table
/// (permutations of degree too large to tabulate).
pub trait GroupLike {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;
    fn identity(&self) -> Self::Elem;

    fn commutator_of(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let ai = self.inverse(a);
        let bi = self.inverse(b);
        self.op(&self.op(&ai, &bi), &self.op(a, b))
    }
}

impl GroupLike for GroupTable {
    type Elem = usize;

    fn op(&self, a: &usize, b: &usize) -> usize {
        self.mul(*a, *b)
    }

    fn inverse(&self, a: &usize) -> usize {
        self.inv(*a)
    }

    fn identity(&self) -> usize {
        0
    }
}

/// The full symmetric group on `degree` points, without a table.
#[derive(Debug, Clone, Copy)]
pub struct SymmetricOn(pub usize);

impl GroupLike for SymmetricOn {
    type Elem = Perm;

    fn op(&self, a: &Perm, b: &Perm) -> Perm {
        a.then(b)
    }

    fn inverse(&self, a: &Perm) -> Perm {
        a.inverse()
    }

    fn identity(&self) -> Perm {
        Perm::identity(self.0)
    }
}

// ---------------------------------------------------------------------------
// constructors

fn flat(n: usize, f: impl Fn(usize, usize) -> usize) -> Vec<u16> {
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            mul.push(f(x, y) as u16);
        }
    }
    mul
}

fn power_name(base: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

fn cyclic(n: usize) -> GroupTable {
    let names = (0..n)
        .map(|k| if k == 0 { "1".into() } else { power_name("g", k) })
        .collect();
    GroupTable::raw(n, flat(n, |x, y| (x + y) % n), Some(names), None)
        .expect("cyclic table is a group")
}

/// Indices `0..n` are `a^i`, indices `n..2n` are `a^i b`.
fn dihedral(n: usize) -> GroupTable {
    let order = 2 * n;
    let mul = flat(order, |x, y| {
        let (i, e) = (x % n, x / n);
        let (j, f) = (y % n, y / n);
        let rot = if e == 0 { (i + j) % n } else { (i + n - j) % n };
        rot + n * ((e + f) % 2)
    });
    let names = (0..order)
        .map(|x| {
            let (i, e) = (x % n, x / n);
            match (i, e) {
                (0, 0) => "1".to_string(),
                (_, 0) => power_name("a", i),
                (_, _) => format!("{}b", power_name("a", i)),
            }
        })
        .collect();
    GroupTable::raw(order, mul, Some(names), None).expect("dihedral table is a group")
}

/// Q₈ as `x^k y^e` (index `k + 4e`) with `x⁴ = 1`, `y² = x²`, `y⁻¹xy = x⁻¹`.
fn quaternion() -> GroupTable {
    let mul = flat(8, |a, b| {
        let (i, e) = (a % 4, a / 4);
        let (j, f) = (b % 4, b / 4);
        if e == 0 {
            (i + j) % 4 + 4 * f
        } else {
            let k = (i + 4 - j) % 4;
            if f == 0 {
                k + 4
            } else {
                (k + 2) % 4
            }
        }
    });
    let names = ["1", "x", "x^2", "x^3", "y", "xy", "x^2y", "x^3y"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    GroupTable::raw(8, mul, Some(names), None).expect("quaternion table is a group")
}

fn direct_product(a: &GroupTable, b: &GroupTable) -> Result<GroupTable> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    if n > MAX_ORDER {
        return Err(Error::ClosureTooLarge { cap: MAX_ORDER });
    }
    let mul = flat(n, |x, y| {
        let (xa, xb) = (x / nb, x % nb);
        let (ya, yb) = (y / nb, y % nb);
        a.mul(xa, ya) * nb + b.mul(xb, yb)
    });
    let names = (0..n)
        .map(|x| format!("<{}|{}>", a.name(x / nb), b.name(x % nb)))
        .collect();
    GroupTable::raw(n, mul, Some(names), None)
}

fn all_perms(n: usize, even_only: bool) -> Result<Vec<Perm>> {
    let count: usize = (1..=n).product();
    let count = if even_only && n > 1 { count / 2 } else { count };
    if count > MAX_ORDER {
        return Err(Error::ClosureTooLarge { cap: MAX_ORDER });
    }
    let mut out = Vec::with_capacity(count);
    let mut cur: Vec<u8> = (0..n as u8).collect();
    loop {
        let p = Perm::from_images(cur.clone())?;
        if !even_only || p.is_even() {
            out.push(p);
        }
        if !next_permutation(&mut cur) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Closure of permutation generators, capped at [`MAX_ORDER`] elements.
pub fn perm_closure(gens: &[Perm]) -> Result<Vec<Perm>> {
    let degree = gens.iter().map(Perm::degree).max().unwrap_or(1).max(1);
    let gens: Vec<Perm> = gens.iter().map(|g| g.extend(degree)).collect();
    let id = Perm::identity(degree);
    let mut seen: HashMap<Perm, ()> = HashMap::from([(id.clone(), ())]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = x.then(g);
            if !seen.contains_key(&y) {
                if out.len() >= MAX_ORDER {
                    return Err(Error::ClosureTooLarge { cap: MAX_ORDER });
                }
                seen.insert(y.clone(), ());
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

/// Canonical element order for permutation groups: by element order, then by
/// largest moved point, then lexicographically by images.
fn perm_key(p: &Perm) -> (usize, usize, Vec<u8>) {
    (p.order(), p.max_moved(), p.images().to_vec())
}

fn lehmer_rank(p: &[u8]) -> usize {
    let n = p.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&q| q < p[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

fn from_perms(mut elems: Vec<Perm>) -> Result<GroupTable> {
    if elems.len() > MAX_ORDER {
        return Err(Error::ClosureTooLarge { cap: MAX_ORDER });
    }
    elems.sort_by_cached_key(perm_key);
    let n = elems.len();
    let degree = elems[0].degree();
    let index: Box<dyn Fn(&Perm) -> usize> = if degree <= 9 {
        let size: usize = (1..=degree).product();
        let mut table = vec![u32::MAX; size];
        for (i, p) in elems.iter().enumerate() {
            table[lehmer_rank(p.images())] = i as u32;
        }
        Box::new(move |p: &Perm| table[lehmer_rank(p.images())] as usize)
    } else {
        let map: HashMap<Perm, usize> =
            elems.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Box::new(move |p: &Perm| map[p])
    };
    let mul = flat(n, |x, y| index(&elems[x].then(&elems[y])));
    let names = elems.iter().map(|p| p.to_string()).collect();
    GroupTable::raw(n, mul, Some(names), Some(elems))
}
