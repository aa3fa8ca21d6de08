use super::{CartanMatrix, NodeSet};
use crate::error::{Error, Result};
use crate::Int;
use num_traits::One;
use std::collections::{BTreeMap, BTreeSet};

/// Positive roots of the connected subdiagram `k`, as integer coordinate
/// vectors in the simple-root basis (indexed by the ascending labels of `k`).
///
/// Computed by closing the simple roots under all simple reflections
/// `s_a(beta) = beta - (sum_j c_aj beta_j) alpha_a` and keeping the vectors
/// with non-negative coordinates; finite type guarantees termination.
pub fn positive_roots(c: &CartanMatrix, k: NodeSet) -> Result<Vec<Vec<i64>>> {
    c.check_subset(k)?;
    if !c.is_connected(k) {
        return Err(Error::NotConnected(k));
    }
    let labels: Vec<usize> = k.iter().collect();
    let r = labels.len();
    let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: Vec<Vec<i64>> = Vec::new();
    for a in 0..r {
        let mut e = vec![0i64; r];
        e[a] = 1;
        found.insert(e.clone());
        queue.push(e);
    }
    while let Some(beta) = queue.pop() {
        for a in 0..r {
            let pairing: i64 =
                (0..r).map(|j| c.entry(labels[a], labels[j]) * beta[j]).sum();
            let mut image = beta.clone();
            image[a] -= pairing;
            if image.iter().all(|&x| x >= 0)
                && image.iter().any(|&x| x > 0)
                && found.insert(image.clone())
            {
                queue.push(image);
            }
        }
        if found.len() > 10_000 {
            return Err(Error::Internal("positive-root closure did not stabilize".into()));
        }
    }
    Ok(found.into_iter().collect())
}

/// Exponents `m_1 <= ... <= m_r` of the connected subdiagram `k`, computed
/// as the conjugate partition of the height distribution of positive roots.
pub fn exponents(c: &CartanMatrix, k: NodeSet) -> Result<Vec<usize>> {
    let roots = positive_roots(c, k)?;
    let r = k.len();
    let mut count_by_height: BTreeMap<usize, usize> = BTreeMap::new();
    for root in &roots {
        let h: i64 = root.iter().sum();
        *count_by_height.entry(h as usize).or_insert(0) += 1;
    }
    let counts: Vec<usize> = count_by_height.values().copied().collect();
    debug_assert!(counts.windows(2).all(|w| w[0] >= w[1]), "height counts must be non-increasing");
    debug_assert_eq!(counts.first().copied().unwrap_or(0), r);
    let mut exps: Vec<usize> =
        (1..=r).map(|threshold| counts.iter().filter(|&&c| c >= threshold).count()).collect();
    exps.reverse();
    Ok(exps)
}

/// `|W_I|`: product over connected components of `prod_j (m_j + 1)`.
pub fn weyl_order(c: &CartanMatrix, set: NodeSet) -> Result<Int> {
    let mut order = Int::one();
    for comp in c.components(set) {
        for m in exponents(c, comp)? {
            order *= Int::from(m as u64 + 1);
        }
    }
    Ok(order)
}

/// Coxeter number of a nonempty connected subdiagram, `h = 2|Phi^+| / |K|`;
/// cross-checked against `1 + max height`.
pub fn coxeter_number(c: &CartanMatrix, k: NodeSet) -> Result<usize> {
    if k.is_empty() {
        return Err(Error::EmptySubset);
    }
    let roots = positive_roots(c, k)?;
    let doubled = 2 * roots.len();
    if doubled % k.len() != 0 {
        return Err(Error::Internal("2|Phi+| not divisible by rank".into()));
    }
    let by_count = doubled / k.len();
    let max_height = roots
        .iter()
        .map(|root| root.iter().sum::<i64>() as usize)
        .max()
        .unwrap_or(0);
    if by_count != max_height + 1 {
        return Err(Error::Internal(format!(
            "Coxeter number mismatch: 2|Phi+|/|K| = {by_count}, 1 + max height = {}",
            max_height + 1
        )));
    }
    Ok(by_count)
}
