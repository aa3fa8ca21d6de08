use std::cmp::Ordering;
use std::fmt;

/// A subset of the node labels {1..n} of a Dynkin diagram, stored as a
/// bitmask (bit i holds label i + 1).
///
/// The `Ord` instance is graded lexicographic: first by size, then by the
/// sorted member lists. This is the canonical row/column order for every
/// subset-indexed matrix in the crate:
/// `{} < {1} < {2} < ... < {1,2} < {1,3} < ...`
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct NodeSet(u32);

impl NodeSet {
    pub const MAX_LABEL: usize = 32;

    pub const fn empty() -> Self {
        NodeSet(0)
    }

    /// The full set {1..n}.
    pub fn full(n: usize) -> Self {
        assert!(n <= Self::MAX_LABEL);
        if n == 32 {
            NodeSet(u32::MAX)
        } else {
            NodeSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(label: usize) -> Self {
        Self::empty().with(label)
    }

    pub fn from_labels(labels: impl IntoIterator<Item = usize>) -> Self {
        labels.into_iter().fold(Self::empty(), NodeSet::with)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn from_bits(bits: u32) -> Self {
        NodeSet(bits)
    }

    #[must_use]
    pub fn with(self, label: usize) -> Self {
        assert!((1..=Self::MAX_LABEL).contains(&label), "label {label} out of range");
        NodeSet(self.0 | 1 << (label - 1))
    }

    #[must_use]
    pub fn without(self, label: usize) -> Self {
        assert!((1..=Self::MAX_LABEL).contains(&label), "label {label} out of range");
        NodeSet(self.0 & !(1 << (label - 1)))
    }

    pub fn contains(self, label: usize) -> bool {
        (1..=Self::MAX_LABEL).contains(&label) && self.0 & 1 << (label - 1) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        NodeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        NodeSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        NodeSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Member labels in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros();
                bits &= bits - 1;
                Some(i as usize + 1)
            }
        })
    }

    /// Position of `label` within the ascending member list, if present.
    pub fn index_of(self, label: usize) -> Option<usize> {
        if self.contains(label) {
            Some((self.0 & ((1 << (label - 1)) - 1)).count_ones() as usize)
        } else {
            None
        }
    }

    /// All subsets of `self`, in graded lexicographic order.
    pub fn subsets(self) -> Vec<NodeSet> {
        let mut out = Vec::with_capacity(1 << self.len());
        // enumerate submasks, then sort into the canonical order
        let mut sub = self.0;
        loop {
            out.push(NodeSet(sub));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & self.0;
        }
        out.sort();
        out
    }

    /// Parses `1,3,5`, `{1,3,5}`, `{}` or the empty string.
    pub fn parse(s: &str) -> Result<Self, String> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
        let mut out = Self::empty();
        if inner.is_empty() {
            return Ok(out);
        }
        for part in inner.split(',') {
            let label: usize =
                part.trim().parse().map_err(|_| format!("invalid node label '{}'", part.trim()))?;
            if !(1..=Self::MAX_LABEL).contains(&label) {
                return Err(format!("node label {label} out of range 1..={}", Self::MAX_LABEL));
            }
            out = out.with(label);
        }
        Ok(out)
    }
}

impl Ord for NodeSet {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.len().cmp(&other.len()) {
            Ordering::Equal => {
                let diff = self.0 ^ other.0;
                if diff == 0 {
                    Ordering::Equal
                } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                    // `self` holds the smallest differing label
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            o => o,
        }
    }
}

impl PartialOrd for NodeSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, label) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{label}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
