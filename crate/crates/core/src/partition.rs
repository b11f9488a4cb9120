//! Partitions, nodes, residues and dominance.
//!
//! A partition is stored without trailing zeros. Nodes use 1-based
//! `(row, col)` coordinates; the residue of `(i, j)` is `(j - i) mod p`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite nonincreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

/// A cell of `Z x Z`; diagram nodes have both coordinates positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node {
    pub row: i64,
    pub col: i64,
}

impl Node {
    pub fn new(row: i64, col: i64) -> Self {
        Node { row, col }
    }

    /// Residue `(col - row) mod p`.
    pub fn residue(self, p: u32) -> Residue {
        Residue::new(self.col - self.row, p)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// An element of `Z/pZ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: u32,
    modulus: u32,
}

impl Residue {
    pub fn new(n: i64, p: u32) -> Self {
        Residue { value: n.rem_euclid(p as i64) as u32, modulus: p }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn neg(self) -> Self {
        Residue::new(-(self.value as i64), self.modulus)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Number of diagram nodes of each residue.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueContent {
    counts: Vec<usize>,
}

impl ResidueContent {
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn count(&self, r: Residue) -> usize {
        self.counts[r.value() as usize]
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

impl Partition {
    /// Builds a partition, dropping trailing zeros.
    pub fn new(raw: &[i64]) -> Result<Self> {
        if let Some(&neg) = raw.iter().find(|&&v| v < 0) {
            return Err(Error::NegativePart(neg));
        }
        if raw.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotNonincreasing);
        }
        let parts = raw.iter().filter(|&&v| v > 0).map(|&v| v as usize).collect();
        Ok(Partition { parts })
    }

    /// Builds a partition from parts already known to be nonincreasing.
    ///
    /// Zeros are dropped. Panics in debug builds on unsorted input.
    pub fn from_parts(mut parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]), "unsorted parts {parts:?}");
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    /// Sorts arbitrary nonnegative parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_parts(parts)
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Height `h(λ)`: the number of nonzero parts.
    pub fn height(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `λ_i` with 1-based `i`; zero beyond the height.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn contains(&self, node: Node) -> bool {
        node.row >= 1 && node.col >= 1 && node.col as usize <= self.part(node.row as usize)
    }

    pub fn transpose(&self) -> Partition {
        let first = self.part(1);
        let parts = (1..=first).map(|j| self.parts.iter().filter(|&&v| v >= j).count()).collect();
        Partition { parts }
    }

    /// `h_{i,j} = λ_i + λ^t_j - i - j + 1`.
    pub fn hook_length(&self, i: i64, j: i64) -> Result<usize> {
        let node = Node::new(i, j);
        if !self.contains(node) {
            return Err(Error::NodeOutsideDiagram(i, j));
        }
        let leg = self.parts.iter().filter(|&&v| v as i64 >= j).count() as i64;
        Ok((self.part(i as usize) as i64 + leg - i - j + 1) as usize)
    }

    pub fn is_p_regular(&self, p: u32) -> bool {
        let p = p as usize;
        if p < 2 {
            return self.parts.is_empty();
        }
        let mut run = 1;
        for w in self.parts.windows(2) {
            if w[0] == w[1] {
                run += 1;
                if run >= p {
                    return false;
                }
            } else {
                run = 1;
            }
        }
        true
    }

    /// Removable nodes, sorted by row.
    pub fn removable_nodes(&self) -> Vec<Node> {
        (1..=self.height())
            .filter(|&i| self.part(i) > self.part(i + 1))
            .map(|i| Node::new(i as i64, self.part(i) as i64))
            .collect()
    }

    /// Addable nodes, sorted by row.
    pub fn addable_nodes(&self) -> Vec<Node> {
        (1..=self.height() + 1)
            .filter(|&i| i == 1 || self.part(i - 1) > self.part(i))
            .map(|i| Node::new(i as i64, self.part(i) as i64 + 1))
            .collect()
    }

    /// `λ_A`: the diagram with the removable node `A` deleted.
    pub fn remove_node(&self, a: Node) -> Result<Partition> {
        let i = a.row;
        if i < 1 || a.col < 1 || a.col as usize != self.part(i as usize) || self.part(i as usize + 1) == self.part(i as usize) {
            return Err(Error::NotRemovable(a.row, a.col));
        }
        let mut parts = self.parts.clone();
        parts[i as usize - 1] -= 1;
        Ok(Partition::from_parts(parts))
    }

    /// `λ^B`: the diagram with the addable node `B` adjoined.
    pub fn add_node(&self, b: Node) -> Result<Partition> {
        let i = b.row;
        if i < 1 || b.col < 1 || b.col as usize != self.part(i as usize) + 1 {
            return Err(Error::NotAddable(b.row, b.col));
        }
        if i > 1 && self.part(i as usize - 1) <= self.part(i as usize) {
            return Err(Error::NotAddable(b.row, b.col));
        }
        let mut parts = self.parts.clone();
        if i as usize > parts.len() {
            parts.push(1);
        } else {
            parts[i as usize - 1] += 1;
        }
        Ok(Partition::from_parts(parts))
    }

    pub fn residue_content(&self, p: u32) -> ResidueContent {
        let mut counts = vec![0usize; p as usize];
        for (idx, &len) in self.parts.iter().enumerate() {
            let i = idx as i64 + 1;
            for j in 1..=len as i64 {
                counts[(j - i).rem_euclid(p as i64) as usize] += 1;
            }
        }
        ResidueContent { counts }
    }

    /// `λ ∼ μ`: same number of nodes of each residue.
    pub fn same_content(&self, other: &Partition, p: u32) -> bool {
        self.residue_content(p) == other.residue_content(p)
    }

    /// `χ(λ) = λ_1 - λ_h + h`, zero for the empty partition.
    pub fn chi(&self) -> usize {
        match (self.parts.first(), self.parts.last()) {
            (Some(&a), Some(&b)) => a - b + self.height(),
            _ => 0,
        }
    }

    /// Prefix sums `σ_1, ..., σ_h`.
    fn prefix_sums(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(0, |acc, &v| {
                *acc += v;
                Some(*acc)
            })
            .collect()
    }

    /// `λ ⊵ μ`: every prefix sum of `λ` is at least that of `μ`.
    pub fn dominates(&self, other: &Partition) -> bool {
        let a = self.prefix_sums();
        let b = other.prefix_sums();
        let len = a.len().max(b.len());
        let at = |v: &Vec<usize>, i: usize| if i < v.len() { v[i] } else { v.last().copied().unwrap_or(0) };
        (0..len).all(|i| at(&a, i) >= at(&b, i))
    }

    /// `λ ⊳ μ`.
    pub fn strictly_dominates(&self, other: &Partition) -> bool {
        self != other && self.dominates(other)
    }

    /// Adds the vector `other` part by part.
    pub fn plus(&self, other: &Partition) -> Partition {
        let len = self.height().max(other.height());
        Partition::from_parts((1..=len).map(|i| self.part(i) + other.part(i)).collect())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.parts.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", text.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let raw = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad part {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(&raw)
    }
}

/// `ε_n = ((k+1)^d, k^{p-1-d})` where `n = k(p-1) + d`, `0 ≤ d < p-1`.
pub fn epsilon_n(n: usize, p: u32) -> Partition {
    let m = p as usize - 1;
    if m == 0 {
        return Partition::from_parts(vec![n]);
    }
    let (k, d) = (n / m, n % m);
    let mut parts = vec![k + 1; d];
    parts.extend(std::iter::repeat(k).take(m - d));
    Partition::from_parts(parts)
}

/// All partitions of `n` in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(rest: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: current.clone() });
            return;
        }
        for v in (1..=rest.min(max)).rev() {
            current.push(v);
            rec(rest - v, v, current, out);
            current.pop();
        }
    }
    rec(n, n, &mut current, &mut out);
    out
}

/// All partitions of sizes `0..=max_n`.
pub fn partitions_up_to(max_n: usize) -> Vec<Partition> {
    (0..=max_n).flat_map(partitions_of).collect()
}

/// All `p`-regular partitions of `n`.
pub fn p_regular_partitions_of(n: usize, p: u32) -> Vec<Partition> {
    partitions_of(n).into_iter().filter(|l| l.is_p_regular(p)).collect()
}

/// Trial-division primality test for the characteristic parameter.
pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}
