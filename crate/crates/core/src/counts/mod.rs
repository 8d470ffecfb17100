//! Solution counts of commutator systems: brute-force oracles, character
//! formulas, recursions for the identity, Ore sets and explicit triples in
//! symmetric groups.

mod brute;
mod formulas;
mod ore;

use std::fmt;
use std::sync::Arc;

use crate::characters::ClassFunction;
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::group::GroupTable;

pub use brute::{brute_f3_naive, brute_f_n, brute_f_n_naive, brute_t_n, coset_meet};
pub use formulas::{
    count_from_coeffs, f2_frobenius, f3_coeffs, f3_class_weights, m_chi_values, m_chi_via_tau,
    recursive_fn1, t_coeffs, tau_chi, tau_weights, tc_check_and_formula, theta_chi,
    theta_weights,
};
pub use ore::{
    combine_disjoint_triples, ore_set, ore_triple_symmetric, verify_triple, BlockMethod,
    OreTriple,
};

/// Default work budget, in predicted element operations.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountKind {
    /// All pairs: `[x_i, x_j] = g` for `i < j`.
    F,
    /// Star system: `[x_1, x_i] = g` for `i > 1`.
    T,
}

impl fmt::Display for CountKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountKind::F => "f",
            CountKind::T => "t",
        })
    }
}

/// Per-element solution counts of `f_n` or `t_n`, optionally with all
/// unknowns restricted to a subgroup.
#[derive(Clone, PartialEq, Eq)]
pub struct CountFunction {
    pub kind: CountKind,
    pub n: usize,
    /// Sorted members of the restricting subgroup, if any.
    pub restriction: Option<Vec<usize>>,
    group: Arc<GroupTable>,
    values: Vec<u128>,
}

impl fmt::Debug for CountFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.n)?;
        f.debug_list().entries(&self.values).finish()
    }
}

impl CountFunction {
    pub(crate) fn from_elements(
        group: Arc<GroupTable>,
        kind: CountKind,
        n: usize,
        restriction: Option<Vec<usize>>,
        values: Vec<u128>,
    ) -> Self {
        debug_assert_eq!(values.len(), group.order());
        CountFunction {
            kind,
            n,
            restriction,
            group,
            values,
        }
    }

    pub(crate) fn from_classes(
        group: Arc<GroupTable>,
        kind: CountKind,
        n: usize,
        class_values: &[u128],
    ) -> Self {
        let cls = group.classes();
        let values = (0..group.order()).map(|g| class_values[cls.class_of[g]]).collect();
        CountFunction::from_elements(group, kind, n, None, values)
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    /// Value at element `g`.
    pub fn at(&self, g: usize) -> u128 {
        self.values[g]
    }

    /// Values indexed by element.
    pub fn values(&self) -> &[u128] {
        &self.values
    }

    /// Values at the class representatives, provided the function is
    /// constant on classes (always true without a restriction).
    pub fn class_values(&self) -> Result<Vec<u128>> {
        let cls = self.group.classes();
        for (c, members) in cls.classes.iter().enumerate() {
            let v = self.values[cls.reps[c]];
            if members.iter().any(|&x| self.values[x] != v) {
                return Err(Error::Precondition(format!(
                    "counts are not constant on the class of {}",
                    self.group.name(cls.reps[c])
                )));
            }
        }
        Ok(cls.reps.iter().map(|&r| self.values[r]).collect())
    }

    pub fn to_class_function(&self) -> Result<ClassFunction> {
        let vals = self
            .class_values()?
            .into_iter()
            .map(|v| Cyclo::from_bigint(v.into()))
            .collect();
        ClassFunction::new(self.group.clone(), vals)
    }

    /// Elements with a nonzero count.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&g| self.values[g] > 0).collect()
    }

    /// Sum over all elements.
    pub fn total(&self) -> num_bigint::BigUint {
        self.values.iter().map(|&v| num_bigint::BigUint::from(v)).sum()
    }
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::Precondition(format!("tuple length must be at least 2, got {n}")))
    } else {
        Ok(())
    }
}

pub(crate) fn check_budget(projected: u128, budget: u128) -> Result<()> {
    if projected > budget {
        Err(Error::BudgetExceeded { projected, budget })
    } else {
        Ok(())
    }
}
