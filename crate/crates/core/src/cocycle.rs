//! The cyclic set cocycle and its cup products on simplices of ribbon graphs.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::rational::{double_factorial_odd, pow_neg2, q, Q};
use crate::ribbon::{corner_chain, GraphMorphism, RibbonError};
use crate::sign::Sign;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CocycleError {
    #[error("element {0} repeats in the tuple")]
    RepeatedElement(usize),
    #[error("tuple has even length {0}")]
    EvenLength(usize),
    #[error("element {0} lies outside the ambient set")]
    OutOfRange(usize),
    #[error("expected a chain of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("stage {0} exceeds the chain length")]
    BadStage(usize),
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
}

/// Sign of an odd tuple of distinct positions `0..ambient` relative to the cyclic order.
pub fn cyclic_sign(tuple: &[usize], ambient: usize) -> Result<Sign, CocycleError> {
    if tuple.len().is_multiple_of(2) {
        return Err(CocycleError::EvenLength(tuple.len()));
    }
    let mut seen = vec![false; ambient];
    for &a in tuple {
        if a >= ambient {
            return Err(CocycleError::OutOfRange(a));
        }
        if std::mem::replace(&mut seen[a], true) {
            return Err(CocycleError::RepeatedElement(a));
        }
    }
    Ok(crate::sign::inversion_parity(tuple))
}

/// A chain `C_0 ⊂ C_1 ⊂ … ⊂ C_len` of cyclically ordered sets.
///
/// Stored as the cyclic order of `C_len` with, for each element, the first
/// stage containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSetChain {
    stages: Vec<usize>,
    len: usize,
}

impl CyclicSetChain {
    pub fn new(stages: Vec<usize>, len: usize) -> Result<Self, CocycleError> {
        if let Some(s) = stages.iter().find(|s| **s > len) {
            return Err(CocycleError::BadStage(*s));
        }
        Ok(CyclicSetChain { stages, len })
    }

    /// Builds the chain from nested region masks `C_0 ⊂ … ⊂ C_len`; the ambient
    /// order is increasing bit position.
    pub fn from_masks(masks: &[u32]) -> Self {
        let last = *masks.last().expect("at least one set");
        let stages = (0..32)
            .filter(|b| last >> b & 1 == 1)
            .map(|b| masks.iter().position(|m| m >> b & 1 == 1).unwrap())
            .collect();
        CyclicSetChain { stages, len: masks.len() - 1 }
    }

    /// Number of monomorphisms in the chain.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    pub fn ambient_size(&self) -> usize {
        self.stages.len()
    }

    pub fn stages(&self) -> &[usize] {
        &self.stages
    }

    /// `|C_0|, …, |C_len|`.
    pub fn stage_sizes(&self) -> Vec<usize> {
        (0..=self.len).map(|i| self.stages.iter().filter(|s| **s <= i).count()).collect()
    }

    /// Positions of `C_i ∖ C_{i-1}`.
    fn groups(&self) -> Vec<Vec<usize>> {
        let mut g = vec![Vec::new(); self.len + 1];
        for (p, s) in self.stages.iter().enumerate() {
            g[*s].push(p);
        }
        g
    }

    /// `Σ sgn(a_0, …, a_len)` over `a_0 ∈ C_0`, `a_i ∈ C_i ∖ C_{i-1}`.
    pub fn sign_sum(&self) -> i64 {
        let groups = self.groups();
        if groups.iter().any(|g| g.is_empty()) {
            return 0;
        }
        fn go(groups: &[Vec<usize>], picked: &mut Vec<usize>, odd: bool) -> i64 {
            let Some((first, rest)) = groups.split_first() else {
                return if odd { -1 } else { 1 };
            };
            let mut total = 0;
            for &a in first {
                let inv = picked.iter().filter(|x| **x > a).count() % 2 == 1;
                picked.push(a);
                total += go(rest, picked, odd ^ inv);
                picked.pop();
            }
            total
        }
        go(&groups, &mut Vec::new(), false)
    }
}

/// `c_Z^k = Σ sgn(a_0..a_2k) / ((-2)^k (2k-1)!! |C_0|⋯|C_2k|)`.
pub fn cz(k: usize, chain: &CyclicSetChain) -> Result<Q, CocycleError> {
    if chain.len() != 2 * k {
        return Err(CocycleError::LengthMismatch { expected: 2 * k, got: chain.len() });
    }
    let s = chain.sign_sum();
    if s == 0 {
        return Ok(q(0));
    }
    let sizes: BigInt = chain.stage_sizes().iter().map(|x| BigInt::from(*x)).product();
    let denom = pow_neg2(k as u32) * double_factorial_odd(k as u32) * sizes;
    Ok(Q::new(BigInt::from(s), denom))
}

/// `c̃_Z^k = c_Z^k / (-2)`.
pub fn adjusted_cz(k: usize, chain: &CyclicSetChain) -> Result<Q, CocycleError> {
    Ok(cz(k, chain)? / q(-2))
}

/// `Σ_v μ(v) c̃_Z^k(corners of v)` over vertices of the first graph.
pub fn c_fat(k: usize, simplex: &[GraphMorphism]) -> Result<Q, CocycleError> {
    if simplex.len() != 2 * k || k == 0 {
        return Err(CocycleError::LengthMismatch { expected: 2 * k.max(1), got: simplex.len() });
    }
    let g0 = &simplex[0].source;
    let mut total = q(0);
    for v in 0..g0.num_vertices() {
        let chain = corner_chain(simplex, v)?;
        let c = adjusted_cz(k, &chain)?;
        if !c.is_zero() {
            total += c * q(g0.multiplicity(v) as i64);
        }
    }
    Ok(total)
}

/// Product of `c̃_Fat^{λ_j}` over consecutive segments, in the given order of parts.
pub fn cup_product(parts: &[u32], simplex: &[GraphMorphism]) -> Result<Q, CocycleError> {
    let total: usize = parts.iter().map(|p| 2 * *p as usize).sum();
    if total != simplex.len() {
        return Err(CocycleError::LengthMismatch { expected: total, got: simplex.len() });
    }
    let mut acc = q(1);
    let mut start = 0;
    for &p in parts {
        let len = 2 * p as usize;
        let v = c_fat(p as usize, &simplex[start..start + len])?;
        if v.is_zero() {
            return Ok(v);
        }
        acc *= v;
        start += len;
    }
    Ok(acc)
}
