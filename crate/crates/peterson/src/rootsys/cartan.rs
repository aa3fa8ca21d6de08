use super::NodeSet;
use crate::error::{Error, Result, Violation};
use crate::exact::Matrix;
use crate::{Int, Rat};
use serde::Deserialize;
use std::fmt;

/// Largest rank accepted anywhere.
pub const RANK_CAP: usize = 20;

/// A validated finite-type generalized Cartan matrix with nodes labeled 1..n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CartanMatrix {
    n: usize,
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    /// Builds the matrix for a list of `(family, rank)` pairs, block-diagonal
    /// in the given order, with Bourbaki node numbering inside each block.
    pub fn from_families(spec: &[(char, usize)]) -> Result<Self> {
        if spec.is_empty() {
            return Err(Error::UnknownFamily(String::new()));
        }
        let total: usize = spec.iter().map(|&(_, r)| r).sum();
        if total > RANK_CAP {
            return Err(Error::RankCap { rank: total, cap: RANK_CAP });
        }
        let mut entries = vec![vec![0i64; total]; total];
        let mut offset = 0usize;
        for &(family, rank) in spec {
            let block = family_block(family, rank)?;
            for i in 0..rank {
                for j in 0..rank {
                    entries[offset + i][offset + j] = block[i][j];
                }
            }
            offset += rank;
        }
        Self::from_entries(entries)
    }

    /// Validates an explicit integer matrix.
    pub fn from_entries(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|row| row.len() != n) {
            return Err(Error::NotSquare);
        }
        if n == 0 || n > RANK_CAP {
            return Err(Error::RankCap { rank: n, cap: RANK_CAP });
        }
        let candidate = CartanMatrix { n, entries };
        let violations = candidate.validate();
        if violations.is_empty() {
            Ok(candidate)
        } else {
            Err(Error::InvalidCartan(violations))
        }
    }

    /// All failed invariants of this matrix (shape assumed square already).
    fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for i in 0..self.n {
            if self.entries[i][i] != 2 {
                out.push(Violation::Diagonal { index: i + 1, value: self.entries[i][i] });
            }
            for j in 0..self.n {
                if i == j {
                    continue;
                }
                let c = self.entries[i][j];
                if c > 0 {
                    out.push(Violation::OffDiagonalSign { row: i + 1, col: j + 1, value: c });
                } else if (c == 0) != (self.entries[j][i] == 0) && i < j {
                    out.push(Violation::ZeroSymmetry { row: i + 1, col: j + 1 });
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        // Finite-type check per connected component. For a matrix with
        // non-positive off-diagonal entries, all principal minors are
        // positive exactly when the matrix is invertible with entrywise
        // non-negative inverse (nonsingular M-matrix); that is an O(n^3)
        // test instead of 2^n minors.
        for comp in self.components(self.full_set()) {
            let sub = Matrix::from_int(&self.submatrix(comp));
            let det = sub.determinant();
            let finite = match sub.bareiss_inverse() {
                Ok(inv) => inv.is_entrywise_nonnegative(),
                Err(_) => false,
            };
            if !finite {
                out.push(Violation::NotFiniteType {
                    subset: comp,
                    det: det.to_integer().to_string(),
                });
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn full_set(&self) -> NodeSet {
        NodeSet::full(self.n)
    }

    /// Entry `c_ij` for 1-based labels.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i - 1][j - 1]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn check_subset(&self, set: NodeSet) -> Result<()> {
        match set.iter().find(|&l| l > self.n) {
            Some(node) => Err(Error::NodeOutOfRange { node, rank: self.n }),
            None => Ok(()),
        }
    }

    /// Whether nodes `i` and `j` are joined by an edge of the diagram.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.entry(i, j) != 0
    }

    /// Connected components of the subdiagram induced by `set`, ordered by
    /// least member.
    pub fn components(&self, set: NodeSet) -> Vec<NodeSet> {
        let mut out = Vec::new();
        let mut seen = NodeSet::empty();
        for start in set.iter() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = NodeSet::singleton(start);
            let mut queue = vec![start];
            while let Some(v) = queue.pop() {
                for w in set.iter() {
                    if !comp.contains(w) && self.adjacent(v, w) {
                        comp = comp.with(w);
                        queue.push(w);
                    }
                }
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self, set: NodeSet) -> bool {
        self.components(set).len() <= 1
    }

    /// The induced submatrix `C_K`, rows and columns in ascending label order.
    pub fn submatrix(&self, set: NodeSet) -> Matrix<Int> {
        let labels: Vec<usize> = set.iter().collect();
        Matrix::from_fn(labels.len(), labels.len(), |i, j| {
            Int::from(self.entry(labels[i], labels[j]))
        })
    }

    /// Exact determinant of `C_K`; the empty set gives 1.
    pub fn det(&self, set: NodeSet) -> Result<Int> {
        self.check_subset(set)?;
        Ok(self.submatrix(set).bareiss_det())
    }

    /// Exact inverse of `C_K`, indexed by the ascending labels of `K`.
    pub fn inverse(&self, set: NodeSet) -> Result<Matrix<Rat>> {
        self.check_subset(set)?;
        if set.is_empty() {
            return Err(Error::EmptySubset);
        }
        Matrix::from_int(&self.submatrix(set)).bareiss_inverse()
    }
}

impl fmt::Display for CartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .entries
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for row in &self.entries {
            write!(f, "[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v:>width$}")?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// One Bourbaki-numbered irreducible block.
fn family_block(family: char, rank: usize) -> Result<Vec<Vec<i64>>> {
    let ok = match family {
        'A' => rank >= 1,
        'B' | 'C' => rank >= 2,
        'D' => rank >= 3,
        'E' => (6..=8).contains(&rank),
        'F' => rank == 4,
        'G' => rank == 2,
        _ => return Err(Error::UnknownFamily(family.to_string())),
    };
    if !ok || rank > RANK_CAP {
        return Err(Error::InvalidRank { family, rank });
    }
    let mut m = vec![vec![0i64; rank]; rank];
    let mut bond = |i: usize, j: usize, cij: i64, cji: i64| {
        m[i - 1][j - 1] = cij;
        m[j - 1][i - 1] = cji;
    };
    let mut chain = |upto: usize| {
        for i in 1..upto {
            bond(i, i + 1, -1, -1);
        }
    };
    match family {
        'A' => chain(rank),
        'B' => {
            chain(rank - 1);
            bond(rank - 1, rank, -2, -1);
        }
        'C' => {
            chain(rank - 1);
            bond(rank - 1, rank, -1, -2);
        }
        'D' => {
            chain(rank - 1);
            bond(rank - 2, rank, -1, -1);
        }
        'E' => {
            // chain 1-3-4-...-n with node 2 hanging off node 4
            bond(1, 3, -1, -1);
            for i in 3..rank {
                bond(i, i + 1, -1, -1);
            }
            bond(2, 4, -1, -1);
        }
        'F' => {
            bond(1, 2, -1, -1);
            bond(2, 3, -2, -1);
            bond(3, 4, -1, -1);
        }
        'G' => bond(1, 2, -1, -3),
        _ => unreachable!(),
    }
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    Ok(m)
}

/// Parses a type string such as `B3`, `A2,A1` or `D4 , G2`.
pub fn parse_type_spec(s: &str) -> Result<Vec<(char, usize)>> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        let mut chars = part.chars();
        let family = chars
            .next()
            .map(|c| c.to_ascii_uppercase())
            .ok_or_else(|| Error::UnknownFamily(String::new()))?;
        if !('A'..='G').contains(&family) {
            return Err(Error::UnknownFamily(family.to_string()));
        }
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnknownFamily(part.to_string()))?;
        out.push((family, rank));
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    #[serde(default)]
    components: Option<Vec<(char, usize)>>,
    #[serde(default)]
    cartan: Option<Vec<Vec<i64>>>,
}

impl CartanMatrix {
    /// Reads the JSON file format: either `{"components": [["A",4],["G",2]]}`
    /// or `{"cartan": [[...]]}`.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: SpecFile = serde_json::from_str(s)
            .map_err(|e| Error::InvalidCartan(vec![Violation::Malformed(e.to_string())]))?;
        match (file.components, file.cartan) {
            (Some(spec), None) => Self::from_families(&spec),
            (None, Some(entries)) => Self::from_entries(entries),
            _ => Err(Error::InvalidCartan(vec![Violation::Malformed(
                "expected exactly one of \"components\" or \"cartan\"".into(),
            )])),
        }
    }
}
