//! Subset-indexed generator matrices and the structure constants obtained by
//! chaining them.
//!
//! For each node `i` there is a sparse matrix indexed by subsets of the
//! diagram; multiplying the row vector `e_J` through the generators of the
//! nodes of `I` expands a product of degree-2 classes in the square-free
//! monomial basis, and a rational prefactor converts that expansion to the
//! Peterson class basis. Everything is exact; an independent ring oracle and
//! a floating-point series check live in the submodules.

mod oracle;
mod verify;

pub use oracle::{lusztig_tits_entry, numeric_convergence_check, oracle_multiply, ConvergenceReport};
pub use verify::{
    verify_commutativity, verify_convergence, verify_exhaustive, verify_oracle, SuiteReport,
};

use crate::error::{Error, Result};
use crate::exact::{Matrix, Poly};
use crate::rootsys::{NodeSet, RootSystem};
use crate::{Rat, RatMatrix, TPoly};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Which basis a structure-constant expansion refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Basis {
    /// Square-free monomials in the degree-2 classes.
    Monomial,
    /// Peterson classes.
    Peterson,
}

/// One row of a subset-indexed matrix: column subset to coefficient.
pub type SparseRow = BTreeMap<NodeSet, TPoly>;

/// Largest rank for which a full 2^n-row matrix may be materialized.
pub const TABULATION_CAP: usize = 14;

/// The expansion of a product of two classes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructureConstants {
    pub i_set: NodeSet,
    pub j_set: NodeSet,
    pub basis: Basis,
    pub equivariant: bool,
    pub terms: BTreeMap<NodeSet, TPoly>,
}

impl StructureConstants {
    pub fn term(&self, k_set: NodeSet) -> TPoly {
        self.terms.get(&k_set).cloned().unwrap_or_else(TPoly::zero)
    }

    /// Sets t = 0, dropping terms that vanish.
    pub fn at_zero(&self) -> StructureConstants {
        let terms = self
            .terms
            .iter()
            .filter_map(|(&k, poly)| {
                let c = poly.at_zero();
                if c.is_zero() {
                    None
                } else {
                    Some((k, TPoly::constant(c)))
                }
            })
            .collect();
        StructureConstants {
            i_set: self.i_set,
            j_set: self.j_set,
            basis: self.basis,
            equivariant: false,
            terms,
        }
    }
}

/// `B_K` with the row of `s` zeroed, where `B_K = (2E - C_K)/2`; indexed by
/// the ascending labels of `K`.
pub fn b_hat(rs: &RootSystem, k_set: NodeSet, s: usize) -> Result<RatMatrix> {
    rs.cartan().check_subset(k_set)?;
    if !k_set.contains(s) {
        return Err(Error::NodeNotInSubset { node: s, subset: k_set });
    }
    let labels: Vec<usize> = k_set.iter().collect();
    let s_idx = k_set.index_of(s).expect("s is a member");
    Ok(Matrix::from_fn(labels.len(), labels.len(), |a, b| {
        if a == s_idx || a == b {
            Rat::zero()
        } else {
            Rat::new((-rs.cartan().entry(labels[a], labels[b])).into(), 2.into())
        }
    }))
}

/// Entry `(i, s)` of `B_K^s (E - B_K^s)^{-1}`, summing the series exactly.
pub fn neumann_entry(rs: &RootSystem, k_set: NodeSet, i: usize, s: usize) -> Result<Rat> {
    check_two_members(k_set, i, s)?;
    let bhat = b_hat(rs, k_set, s)?;
    let n = bhat.dim();
    let resolvent = Matrix::identity(n).sub(&bhat).bareiss_inverse()?;
    let product = bhat.mul(&resolvent);
    Ok(product[(k_set.index_of(i).unwrap(), k_set.index_of(s).unwrap())].clone())
}

/// The same entry in closed form: `[C_K^{-1}]_{i,s} / [C_K^{-1}]_{s,s}`.
/// This is the production path; `neumann_entry` is its oracle.
pub fn closed_form_entry(rs: &RootSystem, k_set: NodeSet, i: usize, s: usize) -> Result<Rat> {
    check_two_members(k_set, i, s)?;
    let inv = rs.inverse(k_set)?;
    let i_idx = k_set.index_of(i).unwrap();
    let s_idx = k_set.index_of(s).unwrap();
    Ok(&inv[(i_idx, s_idx)] / &inv[(s_idx, s_idx)])
}

fn check_two_members(k_set: NodeSet, i: usize, s: usize) -> Result<()> {
    for node in [i, s] {
        if !k_set.contains(node) {
            return Err(Error::NodeNotInSubset { node, subset: k_set });
        }
    }
    if i == s {
        return Err(Error::NodesNotDistinct { i, s });
    }
    Ok(())
}

/// The diagonal term `2t * sum_k [C_K^{-1}]_{i,k}`.
pub fn diagonal_entry(rs: &RootSystem, k_set: NodeSet, i: usize) -> Result<TPoly> {
    if !k_set.contains(i) {
        return Err(Error::NodeNotInSubset { node: i, subset: k_set });
    }
    let sums = rs.inverse_row_sums(k_set)?;
    let row_sum = sums[k_set.index_of(i).unwrap()].clone();
    Ok(Poly::monomial(1, Rat::from_integer(2.into()) * row_sum))
}

/// Row `J` of the generator matrix of node `i`.
///
/// For `i` outside `J` the row is the single entry 1 at `J + i`. For `i` in
/// `J` there is one entry per node `s` outside `J` at column `K = J + s`
/// (omitted when `i` and `s` fall in different components of `K`), plus the
/// degree-1 diagonal term at `J` itself in the equivariant case.
pub fn generator_row(
    rs: &RootSystem,
    i: usize,
    j_set: NodeSet,
    equivariant: bool,
) -> Result<SparseRow> {
    let full = rs.full_set();
    rs.cartan().check_subset(j_set)?;
    if !full.contains(i) {
        return Err(Error::NodeOutOfRange { node: i, rank: rs.rank() });
    }
    let mut row = SparseRow::new();
    if !j_set.contains(i) {
        row.insert(j_set.with(i), TPoly::one());
        return Ok(row);
    }
    for s in full.difference(j_set).iter() {
        let k_set = j_set.with(s);
        let value = closed_form_entry(rs, k_set, i, s)?;
        if !value.is_zero() {
            row.insert(k_set, TPoly::constant(value));
        }
    }
    if equivariant {
        let diag = diagonal_entry(rs, j_set, i)?;
        if !diag.is_zero() {
            row.insert(j_set, diag);
        }
    }
    Ok(row)
}

/// A fully materialized generator matrix, rows in graded-lex subset order.
pub struct SubsetMatrix {
    pub node: usize,
    pub equivariant: bool,
    pub rows: Vec<(NodeSet, SparseRow)>,
}

impl SubsetMatrix {
    pub fn build(rs: &RootSystem, i: usize, equivariant: bool) -> Result<Self> {
        let n = rs.rank();
        if n > TABULATION_CAP {
            return Err(Error::RankCap { rank: n, cap: TABULATION_CAP });
        }
        let rows = rs
            .full_set()
            .subsets()
            .into_iter()
            .map(|j_set| Ok((j_set, generator_row(rs, i, j_set, equivariant)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SubsetMatrix { node: i, equivariant, rows })
    }

    pub fn entry(&self, j_set: NodeSet, k_set: NodeSet) -> TPoly {
        self.rows
            .iter()
            .find(|(j, _)| *j == j_set)
            .and_then(|(_, row)| row.get(&k_set).cloned())
            .unwrap_or_else(TPoly::zero)
    }
}

/// Applies the generators of the nodes of `I` (in the given order) to `e_J`
/// by sparse row propagation, yielding the expansion of the product over the
/// square-free monomial basis.
pub fn chain_apply(
    rs: &RootSystem,
    order: &[usize],
    j_set: NodeSet,
    equivariant: bool,
) -> Result<StructureConstants> {
    let mut state = BTreeMap::from([(j_set, TPoly::one())]);
    for &i in order {
        let mut next: BTreeMap<NodeSet, TPoly> = BTreeMap::new();
        for (k_set, coeff) in &state {
            for (col, value) in generator_row(rs, i, *k_set, equivariant)? {
                let contribution = coeff.clone() * value;
                if contribution.is_zero() {
                    continue;
                }
                let slot = next.entry(col).or_insert_with(TPoly::zero);
                *slot = std::mem::take(slot) + contribution;
            }
        }
        next.retain(|_, poly| !poly.is_zero());
        state = next;
    }
    Ok(StructureConstants {
        i_set: NodeSet::from_labels(order.iter().copied()),
        j_set,
        basis: Basis::Monomial,
        equivariant,
        terms: state,
    })
}

/// Monomial-basis structure constants with the default (ascending) order.
pub fn structure_constants_d(
    rs: &RootSystem,
    i_set: NodeSet,
    j_set: NodeSet,
    equivariant: bool,
) -> Result<StructureConstants> {
    rs.cartan().check_subset(i_set)?;
    let order: Vec<usize> = i_set.iter().collect();
    chain_apply(rs, &order, j_set, equivariant)
}

/// `det(C_I) det(C_J) |W_K| / (|W_I| |W_J| det(C_K))`.
pub fn prefactor(rs: &RootSystem, i_set: NodeSet, j_set: NodeSet, k_set: NodeSet) -> Result<Rat> {
    let num = Rat::from_integer(rs.det(i_set)? * rs.det(j_set)? * rs.weyl_order(k_set)?);
    let den = Rat::from_integer(rs.weyl_order(i_set)? * rs.weyl_order(j_set)? * rs.det(k_set)?);
    Ok(num / den)
}

/// Peterson-basis structure constants. Each term is checked to be a single
/// monomial `a * t^(|I|+|J|-|K|)` with `a` a nonnegative integer; a failure
/// is an internal error, never a data error.
pub fn structure_constants_c(
    rs: &RootSystem,
    i_set: NodeSet,
    j_set: NodeSet,
    equivariant: bool,
) -> Result<StructureConstants> {
    let d = structure_constants_d(rs, i_set, j_set, equivariant)?;
    let mut terms = BTreeMap::new();
    for (k_set, poly) in &d.terms {
        let scaled = poly.scale(&prefactor(rs, i_set, j_set, *k_set)?);
        let (power, coeff) = scaled.single_monomial().ok_or_else(|| {
            Error::Internal(format!("c-basis term at {k_set} is not a single monomial: {scaled}"))
        })?;
        let expected = (i_set.len() + j_set.len()) as i64 - k_set.len() as i64;
        if power as i64 != expected {
            return Err(Error::Internal(format!(
                "c-basis term at {k_set} has t-degree {power}, expected {expected}"
            )));
        }
        if !coeff.is_integer() || coeff < &Rat::zero() {
            return Err(Error::Internal(format!(
                "c-basis coefficient at {k_set} is not a nonnegative integer: {coeff}"
            )));
        }
        terms.insert(*k_set, scaled);
    }
    Ok(StructureConstants { basis: Basis::Peterson, terms, ..d })
}

/// Support criterion: `K` contains `I` and `J`, and every connected
/// component `K_k` of `K` satisfies `|K_k| <= |K_k∩I| + |K_k∩J|`, with
/// equality required in the non-equivariant case.
pub fn is_nonzero(
    rs: &RootSystem,
    i_set: NodeSet,
    j_set: NodeSet,
    k_set: NodeSet,
    equivariant: bool,
) -> Result<bool> {
    for set in [i_set, j_set, k_set] {
        rs.cartan().check_subset(set)?;
    }
    if !i_set.union(j_set).is_subset_of(k_set) {
        return Ok(false);
    }
    for comp in rs.components(k_set)?.iter() {
        let bound = comp.intersection(i_set).len() + comp.intersection(j_set).len();
        let ok = if equivariant { comp.len() <= bound } else { comp.len() == bound };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}
