//! Integer partitions, stored with nonincreasing parts.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse partition `{0}`: expected comma-separated nonnegative integers")]
pub struct ParsePartitionError(pub String);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The parts that are nonzero.
    pub fn positive(&self) -> Partition {
        Partition(self.0.iter().copied().filter(|p| *p > 0).collect())
    }

    pub fn zero_count(&self) -> usize {
        self.0.iter().filter(|p| **p == 0).count()
    }

    /// Part value to multiplicity.
    pub fn multiplicities(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for p in &self.0 {
            *m.entry(*p).or_default() += 1;
        }
        m
    }

    /// Union of the parts of both partitions.
    pub fn join(&self, other: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Partition::new(v)
    }

    /// All partitions of `n` into positive parts, lexicographically descending.
    pub fn all_of(n: u32) -> Vec<Partition> {
        fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Whether `self` refines `mu`: the parts of `mu` are sums of disjoint blocks of `self`.
    pub fn refines(&self, mu: &Partition) -> bool {
        !refinements(self.parts(), mu).is_empty()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Partition {
    type Err = ParsePartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        s.split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map(Partition::new)
            .map_err(|_| ParsePartitionError(s.to_string()))
    }
}

/// Ways of grouping the parts of `lambda` (in the given order) into labelled
/// blocks whose sums are the parts of `mu`. Block contents keep the order of
/// `lambda`; assignments with identical contents are merged with a multiplicity.
pub fn refinements(lambda: &[u32], mu: &Partition) -> Vec<(Vec<Vec<u32>>, u64)> {
    let r = mu.len();
    if lambda.iter().sum::<u32>() != mu.weight() || mu.parts().contains(&0) || lambda.contains(&0) {
        return Vec::new();
    }
    let mut counts: BTreeMap<Vec<Vec<u32>>, u64> = BTreeMap::new();
    let mut blocks: Vec<Vec<u32>> = vec![Vec::new(); r];
    let mut room: Vec<u32> = mu.parts().to_vec();
    fn go(
        lambda: &[u32],
        i: usize,
        blocks: &mut Vec<Vec<u32>>,
        room: &mut Vec<u32>,
        counts: &mut BTreeMap<Vec<Vec<u32>>, u64>,
    ) {
        if i == lambda.len() {
            if room.iter().all(|x| *x == 0) {
                *counts.entry(blocks.clone()).or_default() += 1;
            }
            return;
        }
        for b in 0..blocks.len() {
            if room[b] >= lambda[i] {
                room[b] -= lambda[i];
                blocks[b].push(lambda[i]);
                go(lambda, i + 1, blocks, room, counts);
                blocks[b].pop();
                room[b] += lambda[i];
            }
        }
    }
    go(lambda, 0, &mut blocks, &mut room, &mut counts);
    counts.into_iter().collect()
}
