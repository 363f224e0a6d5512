//! Integer partitions, per-vertex tuples of partitions and the pairing
//! `<λ, μ> = Σ_{i,j} min(i, j) m_i(λ) m_j(μ)`.

use std::fmt;

/// A partition stored as its weakly decreasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// The partition of zero.
    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// Builds a partition from parts in any order. Zero parts are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    /// `1^n`, the partition with `n` parts equal to one.
    pub fn ones(n: u32) -> Self {
        Self {
            parts: vec![1; n as usize],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts, `ℓ(λ)`.
    pub fn length(&self) -> u32 {
        self.parts.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `m_k(λ)`: how many parts equal `k`.
    pub fn multiplicity(&self, k: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == k).count() as u32
    }

    /// `(part size, multiplicity)` pairs in decreasing part size, only for
    /// sizes that occur.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((k, m)) if *k == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// The conjugate partition (transpose of the Young diagram).
    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|c| self.parts.iter().filter(|&&p| p >= c).count() as u32)
            .collect();
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// `m_k(λ)`.
pub fn multiplicity(lambda: &Partition, k: u32) -> u32 {
    lambda.multiplicity(k)
}

/// The pairing `<λ, μ>`, summed over part sizes that actually occur.
pub fn pairing(lambda: &Partition, mu: &Partition) -> u64 {
    let ml = lambda.multiplicities();
    let mm = mu.multiplicities();
    let mut total = 0u64;
    for &(i, a) in &ml {
        for &(j, b) in &mm {
            total += u64::from(i.min(j)) * u64::from(a) * u64::from(b);
        }
    }
    total
}

/// All partitions of `n` in reverse-lexicographic order on the parts list,
/// e.g. `(3), (2,1), (1,1,1)`.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_partitions(n, n, &mut current, &mut out);
    out
}

fn fill_partitions(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        fill_partitions(remaining - part, part, current, out);
        current.pop();
    }
}

/// One partition per quiver vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PartitionTuple {
    entries: Vec<Partition>,
}

impl PartitionTuple {
    pub fn new(entries: Vec<Partition>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[Partition] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The size vector `(|λ_i|)_i`.
    pub fn sizes(&self) -> Vec<u32> {
        self.entries.iter().map(Partition::size).collect()
    }

    pub fn total_size(&self) -> u32 {
        self.entries.iter().map(Partition::size).sum()
    }
}

impl std::ops::Index<usize> for PartitionTuple {
    type Output = Partition;

    fn index(&self, i: usize) -> &Partition {
        &self.entries[i]
    }
}

impl fmt::Display for PartitionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Iterator over every tuple `(λ_i)` with `|λ_i| = sizes[i]`.
///
/// The first vertex varies slowest; each coordinate follows the order of
/// [`partitions_of`]. Yields `Π_i p(sizes[i])` tuples.
#[derive(Debug, Clone)]
pub struct TuplesWithSizes {
    choices: Vec<Vec<Partition>>,
    cursor: Option<Vec<usize>>,
}

impl Iterator for TuplesWithSizes {
    type Item = PartitionTuple;

    fn next(&mut self) -> Option<PartitionTuple> {
        let cursor = self.cursor.as_mut()?;
        let item = PartitionTuple::new(
            cursor
                .iter()
                .zip(&self.choices)
                .map(|(&c, opts)| opts[c].clone())
                .collect(),
        );
        // odometer, last coordinate fastest
        let mut pos = cursor.len();
        loop {
            if pos == 0 {
                self.cursor = None;
                break;
            }
            pos -= 1;
            cursor[pos] += 1;
            if cursor[pos] < self.choices[pos].len() {
                break;
            }
            cursor[pos] = 0;
        }
        Some(item)
    }
}

pub fn tuples_with_sizes(sizes: &[u32]) -> TuplesWithSizes {
    let choices: Vec<Vec<Partition>> = sizes.iter().map(|&n| partitions_of(n)).collect();
    TuplesWithSizes {
        cursor: Some(vec![0; choices.len()]),
        choices,
    }
}
