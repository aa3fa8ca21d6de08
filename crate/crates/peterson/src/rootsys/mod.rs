//! Root-system data computed type-uniformly from a Cartan matrix: connected
//! components, subset determinants and inverses, positive roots, exponents,
//! Weyl-group orders and Coxeter numbers.
//!
//! Nothing here classifies subdiagrams by type; every quantity comes from
//! exact linear algebra and root enumeration, so custom matrices are on the
//! same footing as the built-in families.

mod cartan;
mod data;
mod subset;

pub use cartan::{parse_type_spec, CartanMatrix, RANK_CAP};
pub use data::{coxeter_number, exponents, positive_roots, weyl_order};
pub use subset::NodeSet;

use crate::error::Result;
use crate::{Int, Rat, RatMatrix};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// A Cartan matrix plus per-subset memoization of everything derived from it.
///
/// All data is a pure function of `(cartan, subset)`; the caches only avoid
/// recomputation, so concurrent use observes exactly the cache-free results.
pub struct RootSystem {
    cartan: CartanMatrix,
    components: Cache<Arc<Vec<NodeSet>>>,
    det: Cache<Int>,
    inverse: Cache<Arc<RatMatrix>>,
    row_sums: Cache<Arc<Vec<Rat>>>,
    roots: Cache<Arc<Vec<Vec<i64>>>>,
    exponents: Cache<Arc<Vec<usize>>>,
    weyl: Cache<Int>,
    coxeter: Cache<usize>,
}

struct Cache<V>(Mutex<HashMap<u32, V>>);

impl<V: Clone> Cache<V> {
    fn new() -> Self {
        Cache(Mutex::new(HashMap::new()))
    }

    /// Returns the cached value or computes it outside the lock. A race can
    /// duplicate work but both results are identical, so either insert wins.
    fn get_or_try(&self, key: NodeSet, compute: impl FnOnce() -> Result<V>) -> Result<V> {
        if let Some(v) = self.0.lock().unwrap().get(&key.bits()) {
            return Ok(v.clone());
        }
        let v = compute()?;
        self.0.lock().unwrap().entry(key.bits()).or_insert_with(|| v.clone());
        Ok(v)
    }

    fn seed(&self, key: NodeSet, value: V) {
        self.0.lock().unwrap().entry(key.bits()).or_insert(value);
    }

    fn entries(&self) -> Vec<(NodeSet, V)> {
        self.0
            .lock()
            .unwrap()
            .iter()
            .map(|(&bits, v)| (NodeSet::from_bits(bits), v.clone()))
            .collect()
    }
}

impl RootSystem {
    pub fn new(cartan: CartanMatrix) -> Self {
        RootSystem {
            cartan,
            components: Cache::new(),
            det: Cache::new(),
            inverse: Cache::new(),
            row_sums: Cache::new(),
            roots: Cache::new(),
            exponents: Cache::new(),
            weyl: Cache::new(),
            coxeter: Cache::new(),
        }
    }

    pub fn from_families(spec: &[(char, usize)]) -> Result<Self> {
        Ok(Self::new(CartanMatrix::from_families(spec)?))
    }

    /// Convenience for type strings such as `"B3"` or `"A2,A1"`.
    pub fn from_type(s: &str) -> Result<Self> {
        Self::from_families(&parse_type_spec(s)?)
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn full_set(&self) -> NodeSet {
        self.cartan.full_set()
    }

    pub fn components(&self, set: NodeSet) -> Result<Arc<Vec<NodeSet>>> {
        self.cartan.check_subset(set)?;
        self.components.get_or_try(set, || Ok(Arc::new(self.cartan.components(set))))
    }

    pub fn det(&self, set: NodeSet) -> Result<Int> {
        self.det.get_or_try(set, || self.cartan.det(set))
    }

    pub fn inverse(&self, set: NodeSet) -> Result<Arc<RatMatrix>> {
        self.inverse.get_or_try(set, || self.cartan.inverse(set).map(Arc::new))
    }

    /// Row sums of `inverse(set)`, in ascending label order of `set`.
    pub fn inverse_row_sums(&self, set: NodeSet) -> Result<Arc<Vec<Rat>>> {
        self.row_sums.get_or_try(set, || {
            let inv = self.inverse(set)?;
            let sums = (0..inv.dim())
                .map(|i| inv.row(i).iter().cloned().sum())
                .collect();
            Ok(Arc::new(sums))
        })
    }

    pub fn positive_roots(&self, set: NodeSet) -> Result<Arc<Vec<Vec<i64>>>> {
        self.roots.get_or_try(set, || positive_roots(&self.cartan, set).map(Arc::new))
    }

    pub fn exponents(&self, set: NodeSet) -> Result<Arc<Vec<usize>>> {
        self.exponents.get_or_try(set, || exponents(&self.cartan, set).map(Arc::new))
    }

    pub fn weyl_order(&self, set: NodeSet) -> Result<Int> {
        self.weyl.get_or_try(set, || weyl_order(&self.cartan, set))
    }

    pub fn coxeter_number(&self, set: NodeSet) -> Result<usize> {
        self.coxeter.get_or_try(set, || coxeter_number(&self.cartan, set))
    }

    /// Exports every memoized scalar quantity for persistence. Bulky values
    /// (inverses, positive roots) are cheap to recompute and are not included.
    pub fn snapshot(&self) -> DataSnapshot {
        let mut snap = DataSnapshot::default();
        for (set, v) in self.det.entries() {
            snap.det.insert(set.to_string(), v.to_string());
        }
        for (set, v) in self.weyl.entries() {
            snap.weyl_order.insert(set.to_string(), v.to_string());
        }
        for (set, v) in self.exponents.entries() {
            snap.exponents.insert(set.to_string(), v.as_ref().clone());
        }
        for (set, v) in self.coxeter.entries() {
            snap.coxeter_numbers.insert(set.to_string(), v);
        }
        snap
    }

    /// Seeds the caches from a previously exported snapshot. Entries that do
    /// not parse or reference nodes outside this system are skipped, so a
    /// damaged snapshot degrades to recomputation rather than an error.
    pub fn absorb(&self, snap: &DataSnapshot) {
        let ok = |key: &str| -> Option<NodeSet> {
            let set = NodeSet::parse(key).ok()?;
            self.cartan.check_subset(set).ok()?;
            Some(set)
        };
        for (key, v) in &snap.det {
            if let (Some(set), Ok(v)) = (ok(key), v.parse::<Int>()) {
                self.det.seed(set, v);
            }
        }
        for (key, v) in &snap.weyl_order {
            if let (Some(set), Ok(v)) = (ok(key), v.parse::<Int>()) {
                self.weyl.seed(set, v);
            }
        }
        for (key, v) in &snap.exponents {
            if let Some(set) = ok(key) {
                self.exponents.seed(set, Arc::new(v.clone()));
            }
        }
        for (key, &v) in &snap.coxeter_numbers {
            if let Some(set) = ok(key) {
                self.coxeter.seed(set, v);
            }
        }
    }
}

/// Serializable dump of the scalar per-subset quantities a [`RootSystem`] has
/// memoized, keyed by subset notation such as `"{1,3}"`. Big integers are
/// stored as decimal strings.
#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct DataSnapshot {
    #[serde(default)]
    pub det: std::collections::BTreeMap<String, String>,
    #[serde(default)]
    pub weyl_order: std::collections::BTreeMap<String, String>,
    #[serde(default)]
    pub exponents: std::collections::BTreeMap<String, Vec<usize>>,
    #[serde(default)]
    pub coxeter_numbers: std::collections::BTreeMap<String, usize>,
}

impl DataSnapshot {
    pub fn is_empty(&self) -> bool {
        self.det.is_empty()
            && self.weyl_order.is_empty()
            && self.exponents.is_empty()
            && self.coxeter_numbers.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cached_results_match_direct_computation() {
        let rs = RootSystem::from_type("B3").unwrap();
        for set in rs.full_set().subsets() {
            // twice each: once cold, once from cache
            for _ in 0..2 {
                assert_eq!(rs.det(set).unwrap(), rs.cartan().det(set).unwrap());
                assert_eq!(
                    *rs.components(set).unwrap(),
                    rs.cartan().components(set)
                );
                assert_eq!(rs.weyl_order(set).unwrap(), weyl_order(rs.cartan(), set).unwrap());
                if !set.is_empty() {
                    assert_eq!(
                        *rs.inverse(set).unwrap(),
                        rs.cartan().inverse(set).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn concurrent_queries_agree_with_fresh_recomputation() {
        let rs = std::sync::Arc::new(RootSystem::from_type("F4").unwrap());
        let subsets = rs.full_set().subsets();
        let handles: Vec<_> = (0..8)
            .map(|t| {
                let rs = rs.clone();
                let subsets = subsets.clone();
                std::thread::spawn(move || {
                    let mut acc = Vec::new();
                    for (k, &set) in subsets.iter().enumerate() {
                        if (k + t) % 2 == 0 {
                            acc.push((set, rs.weyl_order(set).unwrap(), rs.det(set).unwrap()));
                        }
                    }
                    acc
                })
            })
            .collect();
        let fresh = RootSystem::from_type("F4").unwrap();
        for h in handles {
            for (set, w, d) in h.join().unwrap() {
                assert_eq!(w, fresh.weyl_order(set).unwrap());
                assert_eq!(d, fresh.det(set).unwrap());
            }
        }
    }

    #[test]
    fn snapshot_round_trip_is_transparent() {
        let warm = RootSystem::from_type("F4").unwrap();
        let connected =
            |set: NodeSet| !set.is_empty() && warm.cartan().is_connected(set);
        for set in warm.full_set().subsets() {
            warm.det(set).unwrap();
            warm.weyl_order(set).unwrap();
            if connected(set) {
                warm.exponents(set).unwrap();
                warm.coxeter_number(set).unwrap();
            }
        }
        let snap = warm.snapshot();
        assert_eq!(snap.det.len(), 16);
        // the F4 diagram is a chain, so its connected subsets are the ten
        // nonempty intervals
        assert_eq!(snap.coxeter_numbers.len(), 10);

        // JSON round trip, then absorb into a cold system: every query must
        // agree with a cache-free computation.
        let json = serde_json::to_string(&snap).unwrap();
        let back: DataSnapshot = serde_json::from_str(&json).unwrap();
        assert_eq!(back, snap);
        let cold = RootSystem::from_type("F4").unwrap();
        cold.absorb(&back);
        for set in cold.full_set().subsets() {
            assert_eq!(cold.det(set).unwrap(), cold.cartan().det(set).unwrap());
            assert_eq!(
                cold.weyl_order(set).unwrap(),
                weyl_order(cold.cartan(), set).unwrap()
            );
            if connected(set) {
                assert_eq!(
                    *cold.exponents(set).unwrap(),
                    exponents(cold.cartan(), set).unwrap()
                );
                assert_eq!(
                    cold.coxeter_number(set).unwrap(),
                    coxeter_number(cold.cartan(), set).unwrap()
                );
            }
        }
    }

    #[test]
    fn absorb_skips_entries_that_do_not_fit_the_system() {
        let mut snap = DataSnapshot::default();
        snap.det.insert("{9}".into(), "7".into()); // node outside rank 2
        snap.det.insert("not a subset".into(), "7".into());
        snap.det.insert("{1}".into(), "not a number".into());
        let rs = RootSystem::from_type("A2").unwrap();
        rs.absorb(&snap);
        // the poisoned keys were ignored, so {1} still computes correctly
        assert_eq!(rs.det(NodeSet::from_labels([1])).unwrap(), 2.into());
        assert!(rs.snapshot().det.len() <= 1);
    }
}
