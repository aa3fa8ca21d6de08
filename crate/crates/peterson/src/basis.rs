//! Conversion between the square-free monomial basis and the Peterson class
//! basis. A class indexed by `I` is represented by `det(C_I)/|W_I|` times
//! the monomial of `I`, so the two bases differ term by term by that ratio.
//!
//! All internal computation stays in the monomial basis; these conversions
//! exist at the boundary, and every expansion carries its basis tag so the
//! two cannot be mixed silently.

use crate::error::{Error, Result};
use crate::operators::{structure_constants_c, Basis, StructureConstants};
use crate::rootsys::{NodeSet, RootSystem};
use crate::{Rat, TPoly};
use num_traits::Zero;
use std::collections::BTreeMap;

/// A subset-indexed expansion together with the basis it refers to.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasisTaggedExpansion {
    pub basis: Basis,
    pub terms: BTreeMap<NodeSet, TPoly>,
}

impl Basis {
    fn name(self) -> &'static str {
        match self {
            Basis::Monomial => "monomial",
            Basis::Peterson => "peterson",
        }
    }
}

/// `det(C_I) / |W_I|`: the scalar by which the class of `I` is represented
/// by the monomial of `I`.
pub fn class_coefficient(rs: &RootSystem, i_set: NodeSet) -> Result<Rat> {
    Ok(Rat::new(rs.det(i_set)?, rs.weyl_order(i_set)?))
}

fn convert(
    rs: &RootSystem,
    expansion: &BasisTaggedExpansion,
    from: Basis,
    to: Basis,
) -> Result<BasisTaggedExpansion> {
    if expansion.basis != from {
        return Err(Error::BasisMismatch { expected: from.name(), got: expansion.basis.name() });
    }
    let mut terms = BTreeMap::new();
    for (&k_set, poly) in &expansion.terms {
        let ratio = class_coefficient(rs, k_set)?;
        let factor = match to {
            // a*pi_K = a * (|W_K|/det C_K) p_K
            Basis::Peterson => ratio.recip(),
            Basis::Monomial => ratio,
        };
        let scaled = poly.scale(&factor);
        if !scaled.is_zero() {
            terms.insert(k_set, scaled);
        }
    }
    Ok(BasisTaggedExpansion { basis: to, terms })
}

pub fn monomial_to_peterson(
    rs: &RootSystem,
    expansion: &BasisTaggedExpansion,
) -> Result<BasisTaggedExpansion> {
    convert(rs, expansion, Basis::Monomial, Basis::Peterson)
}

pub fn peterson_to_monomial(
    rs: &RootSystem,
    expansion: &BasisTaggedExpansion,
) -> Result<BasisTaggedExpansion> {
    convert(rs, expansion, Basis::Peterson, Basis::Monomial)
}

/// The product of two Peterson classes, expanded over Peterson classes.
pub fn peterson_product(
    rs: &RootSystem,
    i_set: NodeSet,
    j_set: NodeSet,
    equivariant: bool,
) -> Result<BasisTaggedExpansion> {
    let c = structure_constants_c(rs, i_set, j_set, equivariant)?;
    Ok(expansion_of(&c))
}

/// Repackages structure constants as a tagged expansion.
pub fn expansion_of(sc: &StructureConstants) -> BasisTaggedExpansion {
    BasisTaggedExpansion { basis: sc.basis, terms: sc.terms.clone() }
}
