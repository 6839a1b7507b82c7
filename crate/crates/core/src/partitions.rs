//! Integer partitions viewed as Young diagrams and as cycle types.
//!
//! Diagrams use zero-based `(row, col)` coordinates with row 0 at the top.
//! Border strips are removed through beta-numbers (first-column hook
//! lengths): removing a strip of length `r` moves one bead of the beta-set
//! down by `r` positions, and the strip height is the number of beads jumped.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a non-positive part")));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// The one-column partition `(1^n)`, which is also the identity cycle type.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts (rows of the diagram, cycles of the cycle type).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Row length, zero past the last row.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Multiplicity of each part size; index `i` holds the number of parts equal to `i`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.parts.first().map_or(1, |&p| p + 1)];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    pub fn conjugate(&self) -> Partition {
        conjugate(self)
    }

    pub fn is_self_adjoint(&self) -> bool {
        is_self_adjoint(self)
    }

    /// Size of the Durfee square, i.e. the number of diagonal cells.
    pub fn diagonal_len(&self) -> usize {
        self.parts.iter().enumerate().take_while(|&(i, &p)| p > i).count()
    }

    fn beta_set(&self) -> Vec<usize> {
        let t = self.parts.len();
        self.parts.iter().enumerate().map(|(i, &p)| p + t - 1 - i).collect()
    }

    fn from_beta_set(mut beta: Vec<usize>) -> Partition {
        beta.sort_unstable_by(|a, b| b.cmp(a));
        let t = beta.len();
        let parts = beta
            .iter()
            .enumerate()
            .map(|(i, &b)| b - (t - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"5,3,1"`. The empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {tok:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A hook of a Young diagram, identified by its head cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct HookInfo {
    pub row: usize,
    pub col: usize,
    pub arm: usize,
    pub leg: usize,
    pub length: usize,
}

/// Result of removing one border strip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripRemoval {
    pub remainder: Partition,
    /// Number of rows the strip spans, minus one.
    pub height: usize,
}

/// Reflects the diagram through the main diagonal.
pub fn conjugate(lambda: &Partition) -> Partition {
    let width = lambda.part(0);
    let parts = (0..width)
        .map(|j| lambda.parts.iter().take_while(|&&p| p > j).count())
        .collect();
    Partition { parts }
}

pub fn is_self_adjoint(lambda: &Partition) -> bool {
    *lambda == conjugate(lambda)
}

/// Hook data for every cell, row by row.
pub fn hook_lengths(lambda: &Partition) -> Vec<Vec<HookInfo>> {
    let conj = conjugate(lambda);
    lambda
        .parts
        .iter()
        .enumerate()
        .map(|(row, &len)| {
            (0..len)
                .map(|col| {
                    let arm = len - col - 1;
                    let leg = conj.part(col) - row - 1;
                    HookInfo { row, col, arm, leg, length: arm + leg + 1 }
                })
                .collect()
        })
        .collect()
}

/// Lengths of the hooks headed on the main diagonal, as a partition.
///
/// For a self-adjoint diagram the result has distinct odd parts.
pub fn diagonal_hook_partition(lambda: &Partition) -> Result<Partition> {
    if !is_self_adjoint(lambda) {
        return Err(Error::NotSelfAdjoint(lambda.to_string()));
    }
    Ok(Partition { parts: diagonal_hook_lengths(lambda) })
}

/// Diagonal hook lengths `h_ii`, top to bottom (already decreasing).
pub fn diagonal_hook_lengths(lambda: &Partition) -> Vec<usize> {
    let conj = conjugate(lambda);
    (0..lambda.diagonal_len())
        .map(|i| (lambda.part(i) - i - 1) + (conj.part(i) - i - 1) + 1)
        .collect()
}

/// The hook of length `l`, if any.
///
/// When `2l > n` a diagram holds at most one hook of length `l`; that
/// uniqueness is asserted. For shorter lengths the first hook in row-major
/// order is returned.
pub fn find_l_hook(lambda: &Partition, l: usize) -> Option<HookInfo> {
    let mut found = hook_lengths(lambda).into_iter().flatten().filter(|h| h.length == l);
    let first = found.next();
    if 2 * l > lambda.n() {
        assert!(found.next().is_none(), "{lambda:?} has two hooks of length {l}");
    }
    first
}

/// All ways to remove a connected border strip of `length` cells.
///
/// Removals come out ordered by the row of the strip's top cell, topmost first.
pub fn remove_border_strips(lambda: &Partition, length: usize) -> Vec<StripRemoval> {
    if length == 0 {
        return Vec::new();
    }
    let beta = lambda.beta_set();
    let mut out = Vec::new();
    for (idx, &b) in beta.iter().enumerate() {
        if b < length {
            continue;
        }
        let target = b - length;
        if beta.contains(&target) {
            continue;
        }
        let height = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beta.clone();
        moved[idx] = target;
        out.push(StripRemoval { remainder: Partition::from_beta_set(moved), height });
    }
    out
}

/// All partitions of `n` in reverse lexicographic order: `(n)`, `(n-1,1)`, ... `(1^n)`.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    ReverseLex::new(n).collect()
}

/// Iterator behind [`enumerate_partitions`].
pub struct ReverseLex {
    next: Option<Vec<usize>>,
}

impl ReverseLex {
    pub fn new(n: usize) -> Self {
        let first = if n == 0 { Vec::new() } else { vec![n] };
        ReverseLex { next: Some(first) }
    }
}

impl Iterator for ReverseLex {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        // Find the last part greater than one, lower it, and refill the tail
        // greedily with parts no larger than the lowered value.
        if let Some(pos) = current.iter().rposition(|&p| p > 1) {
            let mut succ = current[..pos].to_vec();
            let v = current[pos] - 1;
            let mut rest = current[pos..].iter().sum::<usize>() - v;
            succ.push(v);
            while rest > 0 {
                let p = rest.min(v);
                succ.push(p);
                rest -= p;
            }
            self.next = Some(succ);
        }
        Some(Partition { parts: current })
    }
}
