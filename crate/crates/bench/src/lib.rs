//! Shared fixtures for the benchmarks in `benches/`.

use std::sync::Arc;

use commeq::{build_table, make_group, CharacterTable, GroupTable, Provider};

/// Groups benchmarked on every path, smallest first.
pub const F3_GROUPS: [&str; 5] = [
    "alternating:5",
    "dihedral:30",
    "symmetric:5",
    "dihedral:60",
    "dihedral:100",
];

/// A group with its validated character table, built outside the timed
/// region.
pub fn prepared(spec: &str) -> (Arc<GroupTable>, CharacterTable) {
    let g = make_group(spec).expect("benchmark group spec is valid");
    let t = build_table(&g, &Provider::Auto).expect("benchmark group has a table");
    (g, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use commeq::harness::{evaluate, EvalOptions, FnSpec, Method};

    #[test]
    fn benchmarked_paths_agree() {
        for spec in F3_GROUPS {
            let (g, t) = prepared(spec);
            let opts = EvalOptions {
                table: Some(&t),
                ..EvalOptions::default()
            };
            let base = evaluate(&g, FnSpec::f(3), Method::Brute, opts).unwrap().count;
            let chr = evaluate(&g, FnSpec::f(3), Method::Character, opts).unwrap().count;
            assert_eq!(base, chr, "{spec}");
        }
    }
}
