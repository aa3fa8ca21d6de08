//! Mixed Eulerian numbers of an irreducible root system, computed from the
//! non-equivariant generator matrices: apply the generator of node `i`
//! exactly `c_i` times to the basis vector of the empty set, read off the
//! coefficient of the full set, and scale by `|W| / det(C)`.
//!
//! Every generator application grows the subset by exactly one node in the
//! non-equivariant case, so a full table shares prefixes of compositions and
//! keeps at most one coefficient per subset.

use crate::error::{Error, Result};
use crate::operators::generator_row;
use crate::rootsys::{NodeSet, RootSystem};
use crate::{Int, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Largest rank for which the full table of compositions is enumerated.
pub const VOLUME_RANK_CAP: usize = 9;

/// Exponents `c_1..c_n` with `sum c_i = n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>, rank: usize) -> Result<Self> {
        if parts.len() != rank || parts.iter().sum::<usize>() != rank {
            return Err(Error::InvalidComposition {
                rank,
                got: format!(
                    "{:?} (length {}, sum {})",
                    parts,
                    parts.len(),
                    parts.iter().sum::<usize>()
                ),
            });
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// The node sequence `1^c_1 2^c_2 ...` the composition abbreviates.
    fn node_order(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(idx, &count)| std::iter::repeat_n(idx + 1, count))
    }

    pub fn reversed(&self) -> Composition {
        Composition(self.0.iter().rev().copied().collect())
    }

    /// Relabels parts by a node permutation: part `i` of the result is part
    /// `sigma(i)` of `self`.
    pub fn permuted(&self, sigma: &[usize]) -> Composition {
        Composition(sigma.iter().map(|&s| self.0[s - 1]).collect())
    }
}

fn require_irreducible(rs: &RootSystem) -> Result<()> {
    if !rs.cartan().is_connected(rs.full_set()) {
        return Err(Error::ReducibleUnsupported);
    }
    Ok(())
}

/// `|W| / det(C)` for the whole system; an integer for irreducible types.
pub fn w_over_det(rs: &RootSystem) -> Result<Int> {
    let w = rs.weyl_order(rs.full_set())?;
    let det = rs.det(rs.full_set())?;
    let ratio = Rat::new(w, det);
    if !ratio.is_integer() {
        return Err(Error::Internal(format!("|W|/det = {ratio} is not an integer")));
    }
    Ok(ratio.to_integer())
}

/// The result of one mixed Eulerian number computation, with the raw matrix
/// entry kept for reporting.
#[derive(Clone, Debug)]
pub struct MixedEulerian {
    pub composition: Composition,
    /// The `(empty, full)` entry of the generator product.
    pub raw_entry: Rat,
    /// `|W| / det(C)`.
    pub prefactor: Int,
    pub value: Int,
}

/// `A^Phi_c` for one composition.
pub fn mixed_eulerian(rs: &RootSystem, composition: &Composition) -> Result<MixedEulerian> {
    require_irreducible(rs)?;
    let c = Composition::new(composition.parts().to_vec(), rs.rank())?;
    let mut state: BTreeMap<NodeSet, Rat> = BTreeMap::from([(NodeSet::empty(), Rat::one())]);
    for i in c.node_order() {
        state = apply_generator(rs, i, &state)?;
    }
    let raw_entry = state.remove(&rs.full_set()).unwrap_or_else(Rat::zero);
    finish(rs, c, raw_entry)
}

fn finish(rs: &RootSystem, composition: Composition, raw_entry: Rat) -> Result<MixedEulerian> {
    let prefactor = w_over_det(rs)?;
    let value = raw_entry.clone() * Rat::from_integer(prefactor.clone());
    if !value.is_integer() || value.is_negative() {
        return Err(Error::Internal(format!(
            "mixed Eulerian number {value} for {:?} is not a nonnegative integer",
            composition.parts()
        )));
    }
    Ok(MixedEulerian { composition, raw_entry, prefactor, value: value.to_integer() })
}

/// One non-equivariant generator application to a scalar state vector.
fn apply_generator(
    rs: &RootSystem,
    i: usize,
    state: &BTreeMap<NodeSet, Rat>,
) -> Result<BTreeMap<NodeSet, Rat>> {
    let mut next: BTreeMap<NodeSet, Rat> = BTreeMap::new();
    for (j_set, coeff) in state {
        for (k_set, value) in generator_row(rs, i, *j_set, false)? {
            let (_, scalar) = value.single_monomial().expect("non-equivariant entries are constants");
            debug_assert_eq!(k_set.len(), j_set.len() + 1);
            let slot = next.entry(k_set).or_insert_with(Rat::zero);
            *slot += coeff * scalar;
        }
    }
    next.retain(|_, v| !v.is_zero());
    Ok(next)
}

/// The full coefficient table of the volume polynomial.
#[derive(Clone, Debug)]
pub struct VolumePolynomial {
    pub rank: usize,
    pub coefficients: BTreeMap<Composition, Int>,
}

impl VolumePolynomial {
    /// Evaluates `V(u) = sum_c A_c prod_i u_i^{c_i} / c_i!`.
    pub fn evaluate(&self, u: &[Rat]) -> Result<Rat> {
        if u.len() != self.rank {
            return Err(Error::InvalidComposition {
                rank: self.rank,
                got: format!("{} evaluation points", u.len()),
            });
        }
        let mut acc = Rat::zero();
        for (comp, a) in &self.coefficients {
            let mut term = Rat::from_integer(a.clone());
            for (i, &c) in comp.parts().iter().enumerate() {
                for k in 1..=c {
                    term *= &u[i] / Rat::from_integer(Int::from(k as u64));
                }
            }
            acc += term;
        }
        Ok(acc)
    }
}

/// All mixed Eulerian numbers of an irreducible system of rank at most
/// [`VOLUME_RANK_CAP`], by depth-first enumeration of compositions with
/// shared prefixes: one generator application per tree edge.
pub fn volume_polynomial(rs: &RootSystem) -> Result<VolumePolynomial> {
    require_irreducible(rs)?;
    let n = rs.rank();
    if n > VOLUME_RANK_CAP {
        return Err(Error::RankCap { rank: n, cap: VOLUME_RANK_CAP });
    }
    let mut coefficients = BTreeMap::new();
    let initial = BTreeMap::from([(NodeSet::empty(), Rat::one())]);
    descend(rs, 1, n, &mut Vec::new(), &initial, &mut coefficients)?;
    Ok(VolumePolynomial { rank: n, coefficients })
}

fn descend(
    rs: &RootSystem,
    node: usize,
    remaining: usize,
    prefix: &mut Vec<usize>,
    state: &BTreeMap<NodeSet, Rat>,
    out: &mut BTreeMap<Composition, Int>,
) -> Result<()> {
    let n = rs.rank();
    if node > n {
        debug_assert_eq!(remaining, 0);
        let raw = state.get(&rs.full_set()).cloned().unwrap_or_else(Rat::zero);
        let comp = Composition::new(prefix.clone(), n)?;
        let result = finish(rs, comp.clone(), raw)?;
        out.insert(comp, result.value);
        return Ok(());
    }
    // try c_node = 0, 1, ..., applying the generator once per increment so
    // sibling branches reuse the shared prefix state; the last part must
    // absorb the remainder exactly
    let mut current = state.clone();
    for count in 0..=remaining {
        if node < n || count == remaining {
            prefix.push(count);
            descend(rs, node + 1, remaining - count, prefix, &current, out)?;
            prefix.pop();
        }
        if count < remaining {
            current = apply_generator(rs, node, &current)?;
        }
    }
    Ok(())
}

/// All node permutations preserving the Cartan matrix, found by backtracking.
pub fn diagram_automorphisms(rs: &RootSystem) -> Result<Vec<Vec<usize>>> {
    let n = rs.rank();
    if n > crate::operators::TABULATION_CAP {
        return Err(Error::RankCap { rank: n, cap: crate::operators::TABULATION_CAP });
    }
    let mut found = Vec::new();
    let mut sigma = vec![0usize; n];
    let mut used = vec![false; n + 1];
    backtrack(rs, 0, &mut sigma, &mut used, &mut found);
    Ok(found)
}

fn backtrack(
    rs: &RootSystem,
    pos: usize,
    sigma: &mut Vec<usize>,
    used: &mut Vec<bool>,
    found: &mut Vec<Vec<usize>>,
) {
    let n = rs.rank();
    if pos == n {
        found.push(sigma.clone());
        return;
    }
    'candidate: for img in 1..=n {
        if used[img] {
            continue;
        }
        for (prev, &prev_img) in sigma.iter().enumerate().take(pos) {
            let (a, b) = (prev + 1, pos + 1);
            if rs.cartan().entry(a, b) != rs.cartan().entry(prev_img, img)
                || rs.cartan().entry(b, a) != rs.cartan().entry(img, prev_img)
            {
                continue 'candidate;
            }
        }
        sigma[pos] = img;
        used[img] = true;
        backtrack(rs, pos + 1, sigma, used, found);
        used[img] = false;
    }
}
