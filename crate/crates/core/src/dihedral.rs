//! Closed forms for the dihedral group `D_2n = ⟨a, b | a^n = b^2 = 1, bab = a⁻¹⟩`,
//! independent of the generic character-theoretic path.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Coefficients of a class function in the dihedral character basis: one
/// value shared by all linear characters, then one per `ψ_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DihedralCoeffs {
    pub n: usize,
    pub linear_coeff: BigRational,
    pub psi_coeffs: Vec<BigRational>,
    /// `n mod 4`.
    pub congruence_case: usize,
}

impl DihedralCoeffs {
    pub fn linear_count(&self) -> usize {
        if self.n % 2 == 1 {
            2
        } else {
            4
        }
    }

    /// Coefficients in the order of the closed-form character table:
    /// the linear characters, then `ψ_1, ψ_2, …`.
    pub fn to_vec(&self) -> Vec<BigRational> {
        std::iter::repeat_n(self.linear_coeff.clone(), self.linear_count())
            .chain(self.psi_coeffs.iter().cloned())
            .collect()
    }
}

fn check(n: usize) -> Result<()> {
    if n < 3 {
        Err(Error::Precondition(format!("dihedral parameter must be at least 3, got {n}")))
    } else {
        Ok(())
    }
}

fn int(v: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn half(v: u128) -> BigRational {
    BigRational::new(BigInt::from(v), BigInt::from(2))
}

fn psi_count(n: usize) -> usize {
    if n % 2 == 1 {
        (n - 1) / 2
    } else {
        (n - 2) / 2
    }
}

/// `⟨f_3, χ⟩` on `D_2n`:
/// - `n ≡ 1, 3 (mod 4)`: linear `½(n²+2n+5)`, every `ψ_j` gets `n²+5`;
/// - `n ≡ 0 (mod 4)`: linear `½(n²+4n+24)`, `ψ_j` gets `n²+16` (j odd) or
///   `n²+24` (j even);
/// - `n ≡ 2 (mod 4)`: linear `½(n²+4n+20)`, every `ψ_j` gets `n²+20`.
pub fn f3_coeffs_closed(n: usize) -> Result<DihedralCoeffs> {
    check(n)?;
    let m = n as u128;
    let sq = m * m;
    let case = n % 4;
    let (linear_coeff, psi): (BigRational, Box<dyn Fn(usize) -> u128>) = match case {
        1 | 3 => (half(sq + 2 * m + 5), Box::new(move |_| sq + 5)),
        0 => (
            half(sq + 4 * m + 24),
            Box::new(move |j| if j % 2 == 1 { sq + 16 } else { sq + 24 }),
        ),
        _ => (half(sq + 4 * m + 20), Box::new(move |_| sq + 20)),
    };
    Ok(DihedralCoeffs {
        n,
        linear_coeff,
        psi_coeffs: (1..=psi_count(n)).map(|j| int(psi(j))).collect(),
        congruence_case: case,
    })
}

/// An element of the derived subgroup `⟨a²⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DihedralTarget {
    Identity,
    /// `a^{2s}` with `0 < s < n/2`.
    Rotation { s: usize },
}

impl DihedralTarget {
    /// Index in the table built by `dihedral:n` (rotation `a^i` has index `i`).
    pub fn element(&self, n: usize) -> usize {
        match self {
            DihedralTarget::Identity => 0,
            DihedralTarget::Rotation { s } => (2 * s) % n,
        }
    }
}

/// `f_3` on `⟨a²⟩`: `f_3(1) = n³+7n` (n odd) or `n³+28n` (n even);
/// `f_3(a^{2s})` is `2n` (n odd), `12n` (n even, `s = n/4`) or `8n`
/// (n even otherwise).
pub fn f3_value_closed(n: usize, target: DihedralTarget) -> Result<u128> {
    check(n)?;
    let m = n as u128;
    match target {
        DihedralTarget::Identity => Ok(if n % 2 == 1 {
            m * m * m + 7 * m
        } else {
            m * m * m + 28 * m
        }),
        DihedralTarget::Rotation { s } => {
            if s == 0 || 2 * s >= n {
                return Err(Error::Precondition(format!(
                    "rotation parameter s = {s} must satisfy 0 < s < n/2 for n = {n}"
                )));
            }
            Ok(if n % 2 == 1 {
                2 * m
            } else if 4 * s == n {
                12 * m
            } else {
                8 * m
            })
        }
    }
}

/// `⟨t_3, χ⟩` on `D_2n`: odd n gives `n²+3n` (linear) and `n²+2n` (ψ);
/// even n gives `n²+6n` and `n²+4n`.
pub fn t3_coeffs_closed(n: usize) -> Result<DihedralCoeffs> {
    check(n)?;
    let m = n as u128;
    let (lin, psi) = if n % 2 == 1 {
        (m * m + 3 * m, m * m + 2 * m)
    } else {
        (m * m + 6 * m, m * m + 4 * m)
    };
    Ok(DihedralCoeffs {
        n,
        linear_coeff: int(lin),
        psi_coeffs: vec![int(psi); psi_count(n)],
        congruence_case: n % 4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{build_table, decompose, Provider};
    use crate::counts::{brute_f_n, f3_coeffs, t_coeffs, DEFAULT_BUDGET};
    use crate::cyclotomic::Cyclo;
    use crate::group::make_group;
    use num_traits::ToPrimitive;

    fn ints(v: &[BigRational]) -> Vec<i64> {
        v.iter().map(|q| {
            assert!(q.is_integer());
            q.to_integer().to_i64().unwrap()
        }).collect()
    }

    #[test]
    fn f3_examples() {
        let c = f3_coeffs_closed(5).unwrap();
        assert_eq!(ints(&c.to_vec()), vec![20, 20, 30, 30]);
        let c = f3_coeffs_closed(8).unwrap();
        assert_eq!(ints(&c.to_vec()), vec![60, 60, 60, 60, 80, 88, 80]);
        let c = f3_coeffs_closed(6).unwrap();
        assert_eq!(ints(&c.to_vec()), vec![40, 40, 40, 40, 56, 56]);
        assert!(f3_coeffs_closed(2).is_err());
    }

    #[test]
    fn value_examples() {
        assert_eq!(f3_value_closed(5, DihedralTarget::Identity).unwrap(), 160);
        assert_eq!(f3_value_closed(8, DihedralTarget::Rotation { s: 2 }).unwrap(), 96);
        assert_eq!(f3_value_closed(6, DihedralTarget::Rotation { s: 1 }).unwrap(), 48);
        assert!(f3_value_closed(6, DihedralTarget::Rotation { s: 3 }).is_err());
    }

    #[test]
    fn t3_examples() {
        assert_eq!(ints(&t3_coeffs_closed(5).unwrap().to_vec()), vec![40, 40, 35, 35]);
        let c = t3_coeffs_closed(6).unwrap();
        assert_eq!((ints(std::slice::from_ref(&c.linear_coeff))[0], ints(&c.psi_coeffs)[0]), (72, 60));
        let c = t3_coeffs_closed(3).unwrap();
        assert_eq!(ints(&c.to_vec()), vec![18, 18, 15]);
        // t3(1) = Σ_χ coeff·χ(1) = Σ_x |C(x)|²
        assert_eq!(18 * 2 + 15 * 2, 36 + 2 * 9 + 3 * 4);
    }

    #[test]
    fn three_way_agreement() {
        for n in 3..=12 {
            let g = make_group(&format!("dihedral:{n}")).unwrap();
            let t = build_table(&g, &Provider::DihedralClosedForm).unwrap();
            let closed = f3_coeffs_closed(n).unwrap().to_vec();
            assert_eq!(f3_coeffs(&t).unwrap(), closed, "n={n}");
            let brute = brute_f_n(&g, 3, None, DEFAULT_BUDGET).unwrap();
            let dec = decompose(&brute.to_class_function().unwrap(), &t).unwrap();
            let closed_c: Vec<Cyclo> = closed.into_iter().map(Cyclo::from_rational).collect();
            assert_eq!(dec, closed_c, "n={n}");
            assert_eq!(t_coeffs(&t, 3).unwrap(), t3_coeffs_closed(n).unwrap().to_vec());
            // values on ⟨a²⟩ and vanishing elsewhere
            assert_eq!(brute.at(0), f3_value_closed(n, DihedralTarget::Identity).unwrap());
            for s in 1..n.div_ceil(2) {
                let tgt = DihedralTarget::Rotation { s };
                assert_eq!(brute.at(tgt.element(n)), f3_value_closed(n, tgt).unwrap(), "n={n} s={s}");
            }
            let derived: Vec<usize> = (0..n).map(|i| (2 * i) % n).collect();
            for x in 0..2 * n {
                if !derived.contains(&x) {
                    assert_eq!(brute.at(x), 0);
                }
            }
        }
    }
}
