//! Permutations on points `0..n` with cycle-notation parsing and printing.
//!
//! Products act on the right, as in GAP: `x * y` applies `x` first, then `y`.
//! Cycle notation is 1-based on input and output.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u8).collect())
    }

    /// Builds a permutation from its image list, checking it is a bijection.
    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &p in &images {
            let p = p as usize;
            if p >= images.len() || seen[p] {
                return Err(Error::parse("permutation", "image list is not a bijection"));
            }
            seen[p] = true;
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    /// `self * other`: apply `self`, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(self.0.iter().map(|&p| other.0[p as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// Extends (or keeps) the permutation to act on `degree` points.
    pub fn extend(&self, degree: usize) -> Perm {
        assert!(degree >= self.degree());
        let mut v = self.0.clone();
        v.extend(self.degree() as u8..degree as u8);
        Perm(v)
    }

    /// Disjoint cycles including fixed points, each starting at its least point,
    /// ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle type as a partition (weakly decreasing), fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .map(Vec::len)
            .fold(1, num_integer::lcm)
    }

    /// Largest moved point plus one (0 for the identity).
    pub fn max_moved(&self) -> usize {
        (0..self.degree())
            .rev()
            .find(|&i| self.apply(i) != i)
            .map_or(0, |i| i + 1)
    }

    pub fn commutator(&self, other: &Perm) -> Perm {
        self.inverse()
            .then(&other.inverse())
            .then(self)
            .then(other)
    }

    /// Parses disjoint-cycle notation such as `(1,2,3)(4,5)`, `(1 2)(3 4)` or
    /// `(123)`. Inside a cycle, points are separated by commas or whitespace;
    /// a cycle written without separators is read one digit per point.
    /// `()` is the identity. The degree is the larger of `min_degree` and the
    /// largest point mentioned.
    pub fn parse_cycles(text: &str, min_degree: usize) -> Result<Perm> {
        let cycles = parse_cycle_list(text)?;
        let degree = cycles
            .iter()
            .flatten()
            .copied()
            .max()
            .unwrap_or(0)
            .max(min_degree);
        if degree > u8::MAX as usize {
            return Err(Error::parse(text, "points above 255 are not supported"));
        }
        let mut images: Vec<u8> = (0..degree as u8).collect();
        let mut touched = vec![false; degree];
        for cycle in &cycles {
            for (i, &p) in cycle.iter().enumerate() {
                let p0 = p - 1;
                if touched[p0] {
                    return Err(Error::parse(text, format!("point {p} appears twice")));
                }
                touched[p0] = true;
                images[p0] = (cycle[(i + 1) % cycle.len()] - 1) as u8;
            }
        }
        Ok(Perm(images))
    }
}

fn parse_cycle_list(text: &str) -> Result<Vec<Vec<usize>>> {
    let text = text.trim();
    let mut cycles = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        rest = rest.trim_start();
        if rest.is_empty() {
            break;
        }
        if !rest.starts_with('(') {
            return Err(Error::parse(text, "expected `(`"));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| Error::parse(text, "unclosed cycle"))?;
        let body = &rest[1..close];
        rest = &rest[close + 1..];
        let points = parse_cycle_body(body).map_err(|m| Error::parse(text, m))?;
        if points.is_empty() {
            continue;
        }
        if points.contains(&0) {
            return Err(Error::parse(text, "points are numbered from 1"));
        }
        cycles.push(points);
    }
    Ok(cycles)
}

fn parse_cycle_body(body: &str) -> std::result::Result<Vec<usize>, String> {
    let body = body.trim();
    if body.is_empty() {
        return Ok(Vec::new());
    }
    let has_sep = body.contains(',') || body.contains(char::is_whitespace);
    if has_sep {
        body.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| format!("bad point `{t}`")))
            .collect()
    } else {
        body.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| format!("bad point `{c}`"))
            })
            .collect()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles() {
            if cycle.len() < 2 {
                continue;
            }
            any = true;
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms_agree() {
        let a = Perm::parse_cycles("(1,2,3)(4,5)", 0).unwrap();
        let b = Perm::parse_cycles("(1 2 3) (4 5)", 0).unwrap();
        let c = Perm::parse_cycles("(123)(45)", 0).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.to_string(), "(1,2,3)(4,5)");
        assert_eq!(a.cycle_type(), vec![3, 2]);
        assert!(!a.is_even());
        assert_eq!(a.order(), 6);
    }

    #[test]
    fn identity_and_degree() {
        let e = Perm::parse_cycles("()", 4).unwrap();
        assert!(e.is_identity());
        assert_eq!(e.degree(), 4);
        assert_eq!(e.to_string(), "()");
    }

    #[test]
    fn rejects_repeated_points() {
        assert!(Perm::parse_cycles("(1,2)(2,3)", 0).is_err());
        assert!(Perm::parse_cycles("(0,1)", 0).is_err());
        assert!(Perm::parse_cycles("(1,2", 0).is_err());
    }

    #[test]
    fn right_action_product() {
        let x = Perm::parse_cycles("(1,2)", 3).unwrap();
        let y = Perm::parse_cycles("(2,3)", 3).unwrap();
        // 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
        assert_eq!(x.then(&y), Perm::parse_cycles("(1,3,2)", 3).unwrap());
        assert!(x.then(&x.inverse()).is_identity());
    }
}
