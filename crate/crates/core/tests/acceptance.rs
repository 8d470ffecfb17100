//! Acceptance suite: runs all thirteen criteria, prints one PASS/FAIL line
//! per criterion and exits non-zero if any non-report-only criterion fails.
//!
//! Before the criteria run, a handful of their reference values are
//! re-derived here by a self-contained triple loop over the Cayley table,
//! so the suite does not rely only on the library's own oracles.

use std::process::ExitCode;
use std::time::Instant;

use commeq::verify::{criteria, Outcome};
use commeq::{make_group, GroupTable, Perm};

/// `f_3` at every element by the definition: all `(x, y, z)` with
/// `[x,y] = [x,z] = [y,z]`, commutators spelled out as `x⁻¹y⁻¹xy`.
fn independent_f3(g: &GroupTable) -> Vec<u64> {
    let n = g.order();
    let comm = |x: usize, y: usize| g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y));
    let table: Vec<usize> = (0..n * n).map(|i| comm(i / n, i % n)).collect();
    let mut out = vec![0u64; n];
    for x in 0..n {
        for y in 0..n {
            let c = table[x * n + y];
            for z in 0..n {
                if table[x * n + z] == c && table[y * n + z] == c {
                    out[c] += 1;
                }
            }
        }
    }
    out
}

fn independent_f2(g: &GroupTable) -> Vec<u64> {
    let n = g.order();
    let mut out = vec![0u64; n];
    for x in 0..n {
        for y in 0..n {
            out[g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y))] += 1;
        }
    }
    out
}

fn independent_oracles() -> Result<(), String> {
    let a5 = make_group("alternating:5").map_err(|e| e.to_string())?;
    let reps = a5.classes().reps.clone();
    let f2 = independent_f2(&a5);
    let f3 = independent_f3(&a5);
    let f2_reps: Vec<u64> = reps.iter().map(|&r| f2[r]).collect();
    let f3_reps: Vec<u64> = reps.iter().map(|&r| f3[r]).collect();
    if f2_reps != [300, 32, 63, 65, 65] {
        return Err(format!("A5 f2 chart {f2_reps:?}"));
    }
    if f3_reps != [1320, 24, 12, 20, 20] {
        return Err(format!("A5 f3 chart {f3_reps:?}"));
    }
    for (n, cycles, want) in [(3, "()", 48), (3, "(1,2,3)", 6), (4, "(1,2)(3,4)", 72), (4, "(1,2,3)", 12)] {
        let g = make_group(&format!("symmetric:{n}")).map_err(|e| e.to_string())?;
        let p = Perm::parse_cycles(cycles, n).map_err(|e| e.to_string())?;
        let x = g.index_of_perm(&p).ok_or("permutation not found")?;
        let got = independent_f3(&g)[x];
        if got != want {
            return Err(format!("S{n} f3 at {cycles} = {got}, expected {want}"));
        }
    }
    for n in 3..=12 {
        let g = make_group(&format!("dihedral:{n}")).map_err(|e| e.to_string())?;
        let m = n as u64;
        let want = m * m * m + if n % 2 == 1 { 7 * m } else { 28 * m };
        let got = independent_f3(&g)[0];
        if got != want {
            return Err(format!("dihedral:{n} f3(1) = {got}, expected {want}"));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut failed = 0;
    match independent_oracles() {
        Ok(()) => println!("PASS [ 0] independent triple-loop oracle reproduces reference values"),
        Err(e) => {
            failed += 1;
            println!("FAIL [ 0] independent triple-loop oracle reproduces reference values -- {e}");
        }
    }
    for c in criteria() {
        let t = Instant::now();
        let outcome: Outcome = c.run();
        println!("{outcome} ({:.1}s)", t.elapsed().as_secs_f64());
        if outcome.is_failure() {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} criteria, {failed} failed, {:.1}s",
        criteria().len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
