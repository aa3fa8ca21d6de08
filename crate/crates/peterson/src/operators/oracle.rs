//! Independent checks on the generator matrices: a ring oracle that expands
//! products directly from the presentation relations, a floating-point
//! truncation check of the defining series, and the path-complement
//! determinant identity for inverse Cartan entries.

use super::SparseRow;
use crate::error::{Error, Result};
use crate::exact::Matrix;
use crate::rootsys::{NodeSet, RootSystem};
use crate::{Rat, TPoly};
use num_traits::{One, Zero};

/// Expands the product of the degree-2 class of `i` with the square-free
/// monomial of `J`, using only the presentation relations
/// `sum_j c_aj x_a x_j = 2t x_a`.
///
/// For `a` in `J` the unknown products `y_a = x_a * x_J` satisfy the linear
/// system `y_a = t e_J + sum_{s not in J} b_as e_{J+s} + sum_{a' in J, a' != a}
/// b_aa' y_a'` with `b_uv = -c_uv / 2`; the system matrix is inverted exactly
/// and row `i` is returned. Everything the production path computes from
/// rank-one updates of larger subsets is recomputed here from a `|J|`-sized
/// solve, so agreement is meaningful.
pub fn oracle_multiply(rs: &RootSystem, i: usize, j_set: NodeSet) -> Result<SparseRow> {
    let full = rs.full_set();
    rs.cartan().check_subset(j_set)?;
    if !full.contains(i) {
        return Err(Error::NodeOutOfRange { node: i, rank: rs.rank() });
    }
    let mut out = SparseRow::new();
    if !j_set.contains(i) {
        out.insert(j_set.with(i), TPoly::one());
        return Ok(out);
    }
    let labels: Vec<usize> = j_set.iter().collect();
    let r = labels.len();
    // system matrix E - (b_aa') over the members of J
    let system = Matrix::from_fn(r, r, |a, b| {
        if a == b {
            Rat::one()
        } else {
            Rat::new(rs.cartan().entry(labels[a], labels[b]).into(), 2.into())
        }
    });
    let inverse = system
        .bareiss_inverse()
        .map_err(|_| Error::Internal("oracle coupling system is singular".into()))?;
    let i_idx = j_set.index_of(i).expect("i is a member");
    // row i of inverse * R, with R_a = t e_J + sum_s b_as e_{J+s}
    let mut push = |col: NodeSet, value: TPoly| {
        if value.is_zero() {
            return;
        }
        let slot = out.entry(col).or_insert_with(TPoly::zero);
        *slot = std::mem::take(slot) + value;
    };
    for a in 0..r {
        let weight = inverse[(i_idx, a)].clone();
        if weight.is_zero() {
            continue;
        }
        push(j_set, TPoly::monomial(1, weight.clone()));
        for s in full.difference(j_set).iter() {
            let coupling = Rat::new((-rs.cartan().entry(labels[a], s)).into(), 2.into());
            push(j_set.with(s), TPoly::constant(weight.clone() * coupling));
        }
    }
    out.retain(|_, poly| !poly.is_zero());
    Ok(out)
}

/// Result of comparing the truncated series `sum_{p=1..m} (B_K^s)^p` in
/// floating point against the exact resolvent entries.
#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub k_set: NodeSet,
    pub s: usize,
    pub truncation: usize,
    pub tolerance: f64,
    /// Largest entrywise deviation of the partial sum from the exact value.
    pub max_abs_error: f64,
    /// Upper estimate of the spectral radius, `||(B_K^s)^m||_inf^(1/m)`.
    pub spectral_estimate: f64,
}

impl ConvergenceReport {
    pub fn passed(&self) -> bool {
        self.max_abs_error <= self.tolerance && self.spectral_estimate < 1.0
    }
}

/// Sums the series to `m` terms in f64 and reports the deviation from the
/// exact `B_K^s (E - B_K^s)^{-1}`, plus a spectral-radius upper estimate.
pub fn numeric_convergence_check(
    rs: &RootSystem,
    k_set: NodeSet,
    s: usize,
    truncation: usize,
    tolerance: f64,
) -> Result<ConvergenceReport> {
    let bhat = super::b_hat(rs, k_set, s)?;
    let n = bhat.dim();
    let exact = bhat
        .mul(&Matrix::identity(n).sub(&bhat).bareiss_inverse()?)
        .to_f64();
    let bf = bhat.to_f64();
    let mut partial = Matrix::<f64>::zeros(n, n);
    let mut power = Matrix::<f64>::identity(n);
    // The running power is kept twice: as-is for the partial sums, and
    // rescaled to unit norm with the log of the accumulated scale tracked
    // separately, so ||B^m||^(1/m) is available without underflow.
    let mut scaled = Matrix::<f64>::identity(n);
    let mut log_norm = 0.0_f64;
    let mut nilpotent = false;
    for _ in 0..truncation {
        power = power.mul(&bf);
        partial = partial.add(&power);
        scaled = scaled.mul(&bf);
        let norm = scaled.inf_norm();
        if norm == 0.0 {
            // the true power hit exact zero at this step as well, so the
            // partial sum is already complete
            nilpotent = true;
            break;
        }
        log_norm += norm.ln();
        scaled = scaled.scale(&norm.recip());
    }
    let spectral_estimate = if nilpotent {
        0.0
    } else {
        (log_norm / truncation as f64).exp()
    };
    let mut max_abs_error = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            max_abs_error = max_abs_error.max((partial[(i, j)] - exact[(i, j)]).abs());
        }
    }
    Ok(ConvergenceReport {
        k_set,
        s,
        truncation,
        tolerance,
        max_abs_error,
        spectral_estimate,
    })
}

/// Inverse Cartan entries of a connected simply-laced subdiagram as a ratio
/// of determinants: `det` of the complement of the tree path from `i` to `j`
/// over `det(C_K)`. Cross-checked against `inverse_cartan` in tests.
pub fn lusztig_tits_entry(rs: &RootSystem, k_set: NodeSet, i: usize, j: usize) -> Result<Rat> {
    rs.cartan().check_subset(k_set)?;
    for node in [i, j] {
        if !k_set.contains(node) {
            return Err(Error::NodeNotInSubset { node, subset: k_set });
        }
    }
    if !rs.cartan().is_connected(k_set) {
        return Err(Error::NotConnected(k_set));
    }
    let simply_laced = k_set.iter().all(|a| {
        k_set
            .iter()
            .all(|b| a == b || matches!(rs.cartan().entry(a, b), 0 | -1))
    });
    if !simply_laced {
        return Err(Error::NotSimplyLaced(k_set));
    }
    let path = tree_path(rs, k_set, i, j)?;
    let complement = k_set.difference(path);
    Ok(Rat::new(rs.det(complement)?, rs.det(k_set)?))
}

/// Nodes of the unique path from `i` to `j` in the tree on `k_set`
/// (inclusive of both endpoints).
fn tree_path(rs: &RootSystem, k_set: NodeSet, i: usize, j: usize) -> Result<NodeSet> {
    let mut parent: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    let mut queue = std::collections::VecDeque::from([i]);
    let mut seen = NodeSet::singleton(i);
    while let Some(v) = queue.pop_front() {
        if v == j {
            break;
        }
        for w in k_set.iter() {
            if !seen.contains(w) && rs.cartan().adjacent(v, w) {
                seen = seen.with(w);
                parent.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    if !seen.contains(j) {
        return Err(Error::NotConnected(k_set));
    }
    let mut path = NodeSet::singleton(j);
    let mut cur = j;
    while cur != i {
        cur = parent[&cur];
        path = path.with(cur);
    }
    Ok(path)
}
