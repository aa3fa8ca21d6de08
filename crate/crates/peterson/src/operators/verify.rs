//! Batch verification suites over whole root systems, shared by the CLI
//! `verify` command and the test suite. Each suite runs a family of exact
//! comparisons and collects human-readable counterexamples instead of
//! stopping at the first failure.

use super::{
    closed_form_entry, generator_row, is_nonzero, neumann_entry, numeric_convergence_check,
    oracle_multiply, structure_constants_c, structure_constants_d,
};
use crate::error::{Error, Result};
use crate::rootsys::RootSystem;

/// Outcome of one verification suite.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &'static str) -> Self {
        SuiteReport { suite, cases: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn check_suite_rank(rs: &RootSystem, cap: usize) -> Result<()> {
    if rs.rank() > cap {
        return Err(Error::RankCap { rank: rs.rank(), cap });
    }
    Ok(())
}

/// Every row of every generator matrix, in both variants, against the ring
/// oracle; plus the closed form against the exact series for every entry.
pub fn verify_oracle(rs: &RootSystem) -> Result<SuiteReport> {
    check_suite_rank(rs, 10)?;
    let mut report = SuiteReport::new("oracle");
    let subsets = rs.full_set().subsets();
    for i in rs.full_set().iter() {
        for &j_set in &subsets {
            let row = generator_row(rs, i, j_set, true)?;
            let oracle = oracle_multiply(rs, i, j_set)?;
            report.check(row == oracle, || {
                format!("generator row differs from oracle at node {i}, row {j_set}")
            });
        }
    }
    for &k_set in &subsets {
        for i in k_set.iter() {
            for s in k_set.iter() {
                if i == s {
                    continue;
                }
                let closed = closed_form_entry(rs, k_set, i, s)?;
                let series = neumann_entry(rs, k_set, i, s)?;
                report.check(closed == series, || {
                    format!("closed form {closed} != series value {series} at K={k_set}, i={i}, s={s}")
                });
            }
        }
    }
    Ok(report)
}

/// Truncated-series agreement and spectral estimate for every `(K, s)`.
pub fn verify_convergence(rs: &RootSystem, truncation: usize, tolerance: f64) -> Result<SuiteReport> {
    check_suite_rank(rs, 10)?;
    let mut report = SuiteReport::new("convergence");
    for k_set in rs.full_set().subsets() {
        for s in k_set.iter() {
            let r = numeric_convergence_check(rs, k_set, s, truncation, tolerance)?;
            report.check(r.passed(), || {
                format!(
                    "K={k_set}, s={s}: max error {:.3e} (tol {:.1e}), spectral estimate {:.6}",
                    r.max_abs_error, r.tolerance, r.spectral_estimate
                )
            });
        }
    }
    Ok(report)
}

/// `c(I,J) = c(J,I)` for every subset pair, both variants.
pub fn verify_commutativity(rs: &RootSystem) -> Result<SuiteReport> {
    check_suite_rank(rs, 7)?;
    let mut report = SuiteReport::new("commutativity");
    let subsets = rs.full_set().subsets();
    for &i_set in &subsets {
        for &j_set in &subsets {
            if j_set < i_set {
                continue;
            }
            for equivariant in [true, false] {
                let ij = structure_constants_c(rs, i_set, j_set, equivariant)?;
                let ji = structure_constants_c(rs, j_set, i_set, equivariant)?;
                report.check(ij.terms == ji.terms, || {
                    format!("c({i_set},{j_set}) != c({j_set},{i_set}) (equivariant={equivariant})")
                });
            }
        }
    }
    Ok(report)
}

/// The full exhaustive property battery for one root system: commutativity,
/// coefficient positivity, single-monomial grading, the support criterion in
/// both variants, closed form vs series, generator rows vs oracle rows, and
/// consistency of setting t = 0.
pub fn verify_exhaustive(rs: &RootSystem) -> Result<SuiteReport> {
    check_suite_rank(rs, 6)?;
    let mut report = SuiteReport::new("exhaustive");
    let subsets = rs.full_set().subsets();

    for i in rs.full_set().iter() {
        for &j_set in &subsets {
            let row = generator_row(rs, i, j_set, true)?;
            let oracle = oracle_multiply(rs, i, j_set)?;
            report.check(row == oracle, || {
                format!("generator row differs from oracle at node {i}, row {j_set}")
            });
        }
    }
    for &k_set in &subsets {
        for i in k_set.iter() {
            for s in k_set.iter() {
                if i != s {
                    let closed = closed_form_entry(rs, k_set, i, s)?;
                    let series = neumann_entry(rs, k_set, i, s)?;
                    report.check(closed == series, || {
                        format!("closed form != series at K={k_set}, i={i}, s={s}")
                    });
                }
            }
        }
    }

    for &i_set in &subsets {
        for &j_set in &subsets {
            let equi = structure_constants_c(rs, i_set, j_set, true)?;
            let flat = structure_constants_c(rs, i_set, j_set, false)?;

            if j_set >= i_set {
                let swapped = structure_constants_c(rs, j_set, i_set, true)?;
                report.check(equi.terms == swapped.terms, || {
                    format!("c({i_set},{j_set}) != c({j_set},{i_set})")
                });
            }

            for (k_set, poly) in &equi.terms {
                report.check(poly.coeffs_nonnegative(), || {
                    format!("negative coefficient in c({i_set},{j_set}) at {k_set}")
                });
                let graded = poly.single_monomial().is_some_and(|(power, _)| {
                    power as i64 == (i_set.len() + j_set.len()) as i64 - k_set.len() as i64
                });
                report.check(graded, || {
                    format!("term at {k_set} of c({i_set},{j_set}) is not a graded monomial")
                });
            }

            for &k_set in &subsets {
                let criterion = is_nonzero(rs, i_set, j_set, k_set, true)?;
                report.check(criterion == equi.terms.contains_key(&k_set), || {
                    format!(
                        "support criterion mismatch (equivariant) at I={i_set}, J={j_set}, K={k_set}"
                    )
                });
                let criterion0 = is_nonzero(rs, i_set, j_set, k_set, false)?;
                report.check(criterion0 == flat.terms.contains_key(&k_set), || {
                    format!(
                        "support criterion mismatch (t=0) at I={i_set}, J={j_set}, K={k_set}"
                    )
                });
            }

            let d_equi = structure_constants_d(rs, i_set, j_set, true)?;
            let d_flat = structure_constants_d(rs, i_set, j_set, false)?;
            report.check(d_equi.at_zero().terms == d_flat.terms, || {
                format!("t=0 of the equivariant result differs at I={i_set}, J={j_set}")
            });
            report.check(equi.at_zero().terms == flat.terms, || {
                format!("t=0 mismatch in the class basis at I={i_set}, J={j_set}")
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_small_types() {
        for t in ["A2", "B2", "G2", "A2,A1"] {
            let rs = RootSystem::from_type(t).unwrap();
            let oracle = verify_oracle(&rs).unwrap();
            assert!(oracle.passed(), "{t} oracle: {:?}", oracle.failures);
            let conv = verify_convergence(&rs, 100, 1e-9).unwrap();
            assert!(conv.passed(), "{t} convergence: {:?}", conv.failures);
            let comm = verify_commutativity(&rs).unwrap();
            assert!(comm.passed(), "{t} commutativity: {:?}", comm.failures);
        }
    }

    #[test]
    fn exhaustive_battery_b3() {
        let rs = RootSystem::from_type("B3").unwrap();
        let report = verify_exhaustive(&rs).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert!(report.cases > 1000);
    }

    #[test]
    fn rank_caps_refuse_large_systems() {
        let rs = RootSystem::from_type("A11").unwrap();
        assert!(matches!(verify_oracle(&rs), Err(Error::RankCap { .. })));
        let rs8 = RootSystem::from_type("A8").unwrap();
        assert!(matches!(verify_commutativity(&rs8), Err(Error::RankCap { .. })));
    }
}
