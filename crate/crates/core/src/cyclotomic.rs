//! Exact arithmetic in cyclotomic fields ℚ(ζ_N).
//!
//! A [`Cyclo`] stores its coordinates in the power basis `1, ζ, …, ζ^{φ(N)-1}`,
//! i.e. the canonical residue modulo the cyclotomic polynomial Φ_N. Values
//! with different conductors are lifted to the lcm before any operation.
//!
//! Text form follows the GAP-compatible literal grammar
//! `expr := term (("+"|"-") term)*`, `term := rat | [rat "*"] "E(" int ")" ["^" int]`,
//! where `E(n)` is ζ_n. A leading sign on any term is accepted.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

struct Field {
    n: usize,
    phi: usize,
    /// Φ_n, low degree first, length φ + 1 (monic).
    poly: Arc<Vec<BigInt>>,
    /// Φ_n as machine integers, when every coefficient fits.
    poly_small: Option<Vec<i64>>,
}

type Cache<T> = OnceLock<RwLock<HashMap<usize, Arc<T>>>>;

static POLYS: Cache<Vec<BigInt>> = OnceLock::new();
static FIELDS: Cache<Field> = OnceLock::new();

fn cached<T>(cache: &Cache<T>, n: usize, make: impl FnOnce() -> T) -> Arc<T> {
    let lock = cache.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(v) = lock.read().expect("cache lock").get(&n) {
        return v.clone();
    }
    let v = Arc::new(make());
    lock.write()
        .expect("cache lock")
        .entry(n)
        .or_insert(v)
        .clone()
}

/// Φ_N with integer coefficients (lowest degree first), computed by dividing
/// `x^N - 1` by every Φ_d with `d | N`, `d < N`. Memoized.
pub fn cyclotomic_polynomial(n: usize) -> Result<Arc<Vec<BigInt>>> {
    if n == 0 {
        return Err(Error::Precondition("cyclotomic polynomial of order 0".into()));
    }
    Ok(phi_poly(n))
}

fn phi_poly(n: usize) -> Arc<Vec<BigInt>> {
    cached(&POLYS, n, || {
        let mut num = vec![BigInt::zero(); n + 1];
        num[0] = -BigInt::one();
        num[n] = BigInt::one();
        for d in 1..n {
            if n.is_multiple_of(d) {
                num = div_monic(&num, &phi_poly(d));
            }
        }
        num
    })
}

/// Exact quotient of `num` by a monic divisor.
fn div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut q = vec![BigInt::zero(); num.len() - dd];
    for k in (dd..num.len()).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        q[k - dd] = c.clone();
        for (i, di) in den.iter().enumerate() {
            rem[k - dd + i] -= &c * di;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    q
}

fn field(n: usize) -> Arc<Field> {
    cached(&FIELDS, n, || {
        let poly = phi_poly(n);
        let poly_small = poly.iter().map(ToPrimitive::to_i64).collect();
        Field {
            n,
            phi: poly.len() - 1,
            poly,
            poly_small,
        }
    })
}

pub fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|&k| k.gcd(&n) == 1).count()
}

/// Reduces a raw exponent-indexed vector (any length) at conductor `n`.
fn reduce(f: &Field, mut raw: Vec<BigRational>) -> Vec<BigRational> {
    if raw.len() > f.n {
        let mut folded = vec![BigRational::zero(); f.n];
        for (k, c) in raw.into_iter().enumerate() {
            if !c.is_zero() {
                folded[k % f.n] += c;
            }
        }
        raw = folded;
    }
    let phi = f.phi;
    for k in (phi..raw.len()).rev() {
        if raw[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut raw[k], BigRational::zero());
        for i in 0..phi {
            let p = &f.poly[i];
            if !p.is_zero() {
                raw[k - phi + i] -= &c * BigRational::from_integer(p.clone());
            }
        }
    }
    raw.resize(phi, BigRational::zero());
    raw
}

/// An element of ℚ(ζ_N) in canonical power-basis form.
#[derive(Clone)]
pub struct Cyclo {
    conductor: usize,
    coeffs: Vec<BigRational>,
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Cyclo::from_integer(1)
    }

    pub fn from_integer(v: i64) -> Self {
        Cyclo::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Cyclo::from_rational(BigRational::from_integer(v))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Cyclo {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    /// ζ_N^k, with `k` reduced mod N first.
    pub fn root(n: usize, k: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("root of unity of order 0".into()));
        }
        let f = field(n);
        let e = k.rem_euclid(n as i64) as usize;
        let mut raw = vec![BigRational::zero(); e + 1];
        raw[e] = BigRational::one();
        Ok(Cyclo {
            conductor: n,
            coeffs: reduce(&f, raw),
        })
    }

    /// Builds from canonical coordinates; `coeffs` must have length φ(N).
    pub fn from_coeffs(n: usize, coeffs: Vec<BigRational>) -> Result<Self> {
        if n == 0 || coeffs.len() != euler_phi(n) {
            return Err(Error::Precondition(format!(
                "expected {} coordinates at conductor {n}",
                euler_phi(n)
            )));
        }
        Ok(Cyclo {
            conductor: n,
            coeffs,
        })
    }

    /// Sum of `c·ζ_n^e` terms.
    pub fn from_terms(n: usize, terms: &[(BigRational, i64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("conductor 0".into()));
        }
        let f = field(n);
        let mut raw = vec![BigRational::zero(); n];
        for (c, e) in terms {
            raw[e.rem_euclid(n as i64) as usize] += c;
        }
        Ok(Cyclo {
            conductor: n,
            coeffs: reduce(&f, raw),
        })
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, or [`Error::NotRational`]; never rounds.
    pub fn to_rational(&self) -> Result<BigRational> {
        if self.is_rational() {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NotRational(self.to_string()))
        }
    }

    /// The value as an integer, or an error when it is not one.
    pub fn to_integer(&self) -> Result<BigInt> {
        let q = self.to_rational()?;
        if q.is_integer() {
            Ok(q.to_integer())
        } else {
            Err(Error::NotRational(format!("{q} is not an integer")))
        }
    }

    /// Re-expresses the value at conductor `m`, a multiple of the current one.
    pub fn lift(&self, m: usize) -> Cyclo {
        assert!(m.is_multiple_of(self.conductor), "conductor {m} does not lift {}", self.conductor);
        if m == self.conductor {
            return self.clone();
        }
        let f = field(m);
        let step = m / self.conductor;
        let mut raw = vec![BigRational::zero(); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[i * step] = c.clone();
            }
        }
        Cyclo {
            conductor: m,
            coeffs: reduce(&f, raw),
        }
    }

    fn pair(a: &Cyclo, b: &Cyclo) -> (Cyclo, Cyclo) {
        let m = a.conductor.lcm(&b.conductor);
        (a.lift(m), b.lift(m))
    }

    /// Complex conjugate: ζ ↦ ζ^{N-1}.
    pub fn conj(&self) -> Cyclo {
        let n = self.conductor;
        if self.is_rational() {
            return self.clone();
        }
        let f = field(n);
        let mut raw = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[(n - i) % n] += c;
        }
        Cyclo {
            conductor: n,
            coeffs: reduce(&f, raw),
        }
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    pub fn scale(&self, q: &BigRational) -> Cyclo {
        Cyclo {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Cyclo {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    /// |a|² = a·conj(a).
    pub fn abs2(&self) -> Cyclo {
        self * &self.conj()
    }

    /// Integer coordinates at conductor `m` when every coordinate is an
    /// integer fitting in `i64` (algebraic integers always have integer
    /// coordinates in the power basis).
    pub(crate) fn integral_coords(&self, m: usize) -> Option<Vec<i64>> {
        let lifted = self.lift(m);
        lifted
            .coeffs
            .iter()
            .map(|c| {
                if c.is_integer() {
                    c.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }

    /// Floating-point approximation `(re, im)`, for display only.
    pub fn approx(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (i, c)| {
                let v = c.to_f64().unwrap_or(f64::NAN);
                let t = std::f64::consts::TAU * i as f64 / n;
                (re + v * t.cos(), im + v * t.sin())
            })
    }

    fn mul_impl(&self, other: &Cyclo) -> Cyclo {
        if self.conductor == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.conductor == 1 {
            return self.scale(&other.coeffs[0]);
        }
        let (a, b) = Cyclo::pair(self, other);
        let f = field(a.conductor);
        let mut raw = vec![BigRational::zero(); 2 * f.phi - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        Cyclo {
            conductor: a.conductor,
            coeffs: reduce(&f, raw),
        }
    }

    fn add_impl(&self, other: &Cyclo, sign: bool) -> Cyclo {
        let (a, b) = Cyclo::pair(self, other);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| if sign { x + y } else { x - y })
            .collect();
        Cyclo {
            conductor: a.conductor,
            coeffs,
        }
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Cyclo::pair(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclo {}

impl From<i64> for Cyclo {
    fn from(v: i64) -> Self {
        Cyclo::from_integer(v)
    }
}

impl From<BigRational> for Cyclo {
    fn from(q: BigRational) -> Self {
        Cyclo::from_rational(q)
    }
}

impl From<BigInt> for Cyclo {
    fn from(v: BigInt) -> Self {
        Cyclo::from_bigint(v)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Cyclo> for &Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: &Cyclo) -> Cyclo {
                let f: fn(&Cyclo, &Cyclo) -> Cyclo = $body;
                f(self, rhs)
            }
        }
        impl $tr<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: Cyclo) -> Cyclo {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: &Cyclo) -> Cyclo {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_impl(b, true));
binop!(Sub, sub, |a, b| a.add_impl(b, false));
binop!(Mul, mul, |a, b| a.mul_impl(b));

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

impl std::iter::Sum for Cyclo {
    fn sum<I: Iterator<Item = Cyclo>>(iter: I) -> Cyclo {
        iter.fold(Cyclo::zero(), |a, b| a + b)
    }
}

/// Accumulates `Σ w·a·b` over integer coordinate vectors at one conductor,
/// reducing once at the end. Returns `None` on `i128` overflow so callers
/// can fall back to the rational path.
pub(crate) struct DotAccumulator {
    field: Arc<Field>,
    raw: Vec<i128>,
    overflow: bool,
}

impl DotAccumulator {
    pub(crate) fn new(m: usize) -> Self {
        let field = field(m);
        let len = 2 * field.phi - 1;
        DotAccumulator {
            field,
            raw: vec![0; len],
            overflow: false,
        }
    }

    pub(crate) fn add_product(&mut self, w: i64, a: &[i64], b: &[i64]) {
        if self.overflow || w == 0 {
            return;
        }
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let wx = w as i128 * x as i128;
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                match wx
                    .checked_mul(y as i128)
                    .and_then(|p| self.raw[i + j].checked_add(p))
                {
                    Some(v) => self.raw[i + j] = v,
                    None => {
                        self.overflow = true;
                        return;
                    }
                }
            }
        }
    }

    pub(crate) fn finish(mut self) -> Option<Cyclo> {
        if self.overflow {
            return None;
        }
        let f = &self.field;
        let poly = f.poly_small.as_ref()?;
        let phi = f.phi;
        for k in (phi..self.raw.len()).rev() {
            let c = self.raw[k];
            if c == 0 {
                continue;
            }
            self.raw[k] = 0;
            for (i, &p) in poly.iter().enumerate().take(phi) {
                let d = c.checked_mul(p as i128)?;
                self.raw[k - phi + i] = self.raw[k - phi + i].checked_sub(d)?;
            }
        }
        let coeffs = self.raw[..phi]
            .iter()
            .map(|&v| BigRational::from_integer(BigInt::from(v)))
            .collect();
        Some(Cyclo {
            conductor: f.n,
            coeffs,
        })
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i == 0 {
                terms.push(fmt_rational(c));
                continue;
            }
            let root = if i == 1 {
                format!("E({})", self.conductor)
            } else {
                format!("E({})^{}", self.conductor, i)
            };
            let t = if c.is_one() {
                root
            } else if (-c).is_one() {
                format!("-{root}")
            } else {
                format!("{}*{root}", fmt_rational(c))
            };
            terms.push(t);
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in terms.iter().enumerate() {
            if k > 0 && !t.starts_with('-') {
                write!(f, "+")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.approx();
        write!(f, "{self} (~{re:.6}{im:+.6}i)")
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::parse(format!("`{}` offset {}", self.src, self.pos), msg)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let neg = self.eat('-');
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let v: BigInt = self.src[start..self.pos].parse().expect("digits");
        Ok(if neg { -v } else { v })
    }

    fn rat(&mut self) -> Result<BigRational> {
        let num = self.int()?;
        if self.eat('/') {
            let den = self.int()?;
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn root(&mut self) -> Result<(usize, i64)> {
        self.expect('E')?;
        self.expect('(')?;
        let n = self
            .int()?
            .to_usize()
            .filter(|&n| n > 0)
            .ok_or_else(|| self.err("E(n) needs a positive n"))?;
        self.expect(')')?;
        let e = if self.eat('^') {
            self.int()?
                .to_i64()
                .ok_or_else(|| self.err("exponent too large"))?
        } else {
            1
        };
        Ok((n, e))
    }

    /// One signed term: coefficient, optional root.
    fn term(&mut self, sign: bool) -> Result<(BigRational, Option<(usize, i64)>)> {
        let neg = self.eat('-');
        let sign = sign != neg;
        let (c, root) = if self.peek() == Some('E') {
            (BigRational::one(), Some(self.root()?))
        } else {
            let c = self.rat()?;
            if self.eat('*') {
                (c, Some(self.root()?))
            } else {
                (c, None)
            }
        };
        Ok((if sign { c } else { -c }, root))
    }
}

impl FromStr for Cyclo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Cyclo> {
        let mut lx = Lexer { src: s, pos: 0 };
        let mut terms = vec![lx.term(true)?];
        loop {
            match lx.peek() {
                None => break,
                Some('+') => {
                    lx.pos += 1;
                    terms.push(lx.term(true)?);
                }
                Some('-') => {
                    lx.pos += 1;
                    terms.push(lx.term(false)?);
                }
                Some(_) => return Err(lx.err("unexpected character")),
            }
        }
        let n = terms
            .iter()
            .filter_map(|(_, r)| r.map(|(n, _)| n))
            .fold(1, |acc, n| acc.lcm(&n));
        let raw: Vec<(BigRational, i64)> = terms
            .into_iter()
            .map(|(c, r)| match r {
                None => (c, 0),
                Some((m, e)) => (c, e * (n / m) as i64),
            })
            .collect();
        Cyclo::from_terms(n, &raw)
    }
}

impl Cyclo {
    pub fn parse(s: &str) -> Result<Cyclo> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(s: &str) -> Cyclo {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1).unwrap(), ints(&[-1, 1]));
        assert_eq!(*cyclotomic_polynomial(4).unwrap(), ints(&[1, 0, 1]));
        assert_eq!(*cyclotomic_polynomial(6).unwrap(), ints(&[1, -1, 1]));
        assert_eq!(*cyclotomic_polynomial(5).unwrap(), ints(&[1, 1, 1, 1, 1]));
        assert!(cyclotomic_polynomial(0).is_err());
        // Φ_105 is the first with a coefficient of absolute value 2
        let p = cyclotomic_polynomial(105).unwrap();
        assert_eq!(p.len(), 49);
        assert!(p.iter().any(|x| *x == BigInt::from(-2)));
        for n in 1..60 {
            assert_eq!(cyclotomic_polynomial(n).unwrap().len() - 1, euler_phi(n));
        }
    }

    #[test]
    fn roots() {
        let i = Cyclo::root(4, 1).unwrap();
        assert_eq!(i.coeffs(), &[BigRational::zero(), BigRational::one()]);
        assert_eq!(Cyclo::root(7, 0).unwrap(), Cyclo::one());
        assert_eq!(Cyclo::root(7, 7).unwrap(), Cyclo::one());
        let s = Cyclo::root(3, 1).unwrap() + Cyclo::root(3, 2).unwrap();
        assert_eq!(s, Cyclo::from_integer(-1));
        assert!(Cyclo::root(0, 1).is_err());
        assert_eq!(&i * &i, Cyclo::from_integer(-1));
    }

    #[test]
    fn arithmetic_examples() {
        let a = c("E(5)+E(5)^4");
        assert_eq!(&a + &Cyclo::zero(), a);
        let b = c("E(5)^2+E(5)^3");
        assert_eq!(&a * &b, Cyclo::from_integer(-1));
        let z2 = Cyclo::root(2, 1).unwrap();
        let z3 = Cyclo::root(3, 1).unwrap();
        let p = &z2 * &z3;
        assert_eq!(p.conductor(), 6);
        assert_eq!(p, Cyclo::root(6, 5).unwrap());
    }

    #[test]
    fn conjugation() {
        let q = Cyclo::from_rational(BigRational::new(3.into(), 7.into()));
        assert_eq!(q.conj(), q);
        assert_eq!(Cyclo::root(5, 1).unwrap().conj(), Cyclo::root(5, 4).unwrap());
        let r = c("E(5)+E(5)^4");
        assert_eq!(r.conj(), r);
        assert!(r.is_real());
        assert!(!Cyclo::root(5, 1).unwrap().is_real());
    }

    #[test]
    fn rational_extraction() {
        assert_eq!(
            c("7/2").to_rational().unwrap(),
            BigRational::new(7.into(), 2.into())
        );
        assert_eq!(
            c("E(5)+E(5)^2+E(5)^3+E(5)^4").to_rational().unwrap(),
            BigRational::from_integer((-1).into())
        );
        let err = Cyclo::root(5, 1).unwrap().to_rational().unwrap_err();
        assert!(matches!(err, Error::NotRational(ref s) if s.contains("E(5)")));
    }

    #[test]
    fn lemma_sums_of_roots() {
        for n in 2..=30usize {
            let s: Cyclo = (1..n as i64).map(|k| Cyclo::root(n, k).unwrap()).sum();
            assert_eq!(s, Cyclo::from_integer(-1), "n = {n}");
            if n % 2 == 1 && n >= 3 {
                let t: Cyclo = (1..=((n as i64 - 1) / 2))
                    .map(|k| Cyclo::root(n, 2 * k).unwrap() + Cyclo::root(n, -2 * k).unwrap())
                    .sum();
                assert_eq!(t, Cyclo::from_integer(-1), "n = {n}");
            }
        }
    }

    #[test]
    fn parse_and_print() {
        for s in ["2", "-1/2", "E(5)+E(5)^4", "3*E(4)", "-E(5)", "1 - E(3)", "-3/2*E(8)^3"] {
            let v = c(s);
            assert_eq!(c(&v.to_string()), v, "{s}");
        }
        assert_eq!(c("3*E(4)").to_string(), "3*E(4)");
        assert_eq!(c("0").to_string(), "0");
        assert_eq!(c("E(4)^2").to_string(), "-1");
        assert!("E(0)".parse::<Cyclo>().is_err());
        assert!("1/0".parse::<Cyclo>().is_err());
        assert!("E(3".parse::<Cyclo>().is_err());
        assert!("x".parse::<Cyclo>().is_err());
    }

    #[test]
    fn mixed_conductor_equality() {
        // -1 = E(2), and E(3) = E(6)^2
        assert_eq!(c("E(2)"), Cyclo::from_integer(-1));
        assert_eq!(c("E(3)"), c("E(6)^2"));
        assert_eq!(c("E(5)").lift(10), c("E(5)"));
    }

    #[test]
    fn accumulator_matches_rational_path() {
        let a = c("E(5)+E(5)^4");
        let b = c("2-E(5)^2");
        let mut acc = DotAccumulator::new(5);
        acc.add_product(3, &a.integral_coords(5).unwrap(), &b.integral_coords(5).unwrap());
        acc.add_product(-2, &b.integral_coords(5).unwrap(), &b.integral_coords(5).unwrap());
        let expect = (&a * &b).scale_int(3) - (&b * &b).scale_int(2);
        assert_eq!(acc.finish().unwrap(), expect);
    }

    fn arb_cyclo() -> impl Strategy<Value = Cyclo> {
        (
            prop::sample::select(vec![1usize, 3, 4, 5, 6, 8, 12]),
            prop::collection::vec((-5i64..=5, 1i64..=3, 0i64..24), 1..5),
        )
            .prop_map(|(n, terms)| {
                let terms: Vec<(BigRational, i64)> = terms
                    .into_iter()
                    .map(|(p, q, e)| (BigRational::new(p.into(), q.into()), e))
                    .collect();
                Cyclo::from_terms(n, &terms).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_laws(a in arb_cyclo(), b in arb_cyclo(), d in arb_cyclo()) {
            prop_assert_eq!((&a * &b) * &d, &a * &(&b * &d));
            prop_assert_eq!(&a * &(&b + &d), &(&a * &b) + &(&a * &d));
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn text_round_trip(a in arb_cyclo()) {
            let back: Cyclo = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn rational_extraction_is_faithful(a in arb_cyclo()) {
            if let Ok(q) = a.to_rational() {
                prop_assert_eq!(Cyclo::from_rational(q), a);
            }
        }
    }
}
