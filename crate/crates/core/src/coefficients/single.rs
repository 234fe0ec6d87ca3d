//! `b_λ^{(m)}` by summing the cup product over the signed maximal chains of `K^{2m}`.
//!
//! The walk is depth first over the face lattice. A segment of the cup product
//! only sees vertices whose region set grows at every step of the segment, so
//! the walk drops any branch where no vertex of the current segment is still
//! growing; the dropped chains contribute exactly zero.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cocycle::{adjusted_cz, CyclicSetChain};
use crate::rational::{double_factorial_odd, factorial, pow_neg2, q, ExactSum, Q};
use crate::sign::Sign;
use crate::trees::{bits, FaceLattice};

#[derive(Clone)]
struct Tracked {
    cell: u8,
    mu: i64,
    masks: Vec<u32>,
}

/// Running product of segment numerators.
#[derive(Clone)]
enum Acc {
    Small(i128),
    Big(BigInt),
}

impl Acc {
    fn mul(&self, x: i128) -> Acc {
        match self {
            Acc::Small(a) => match a.checked_mul(x) {
                Some(p) => Acc::Small(p),
                None => Acc::Big(BigInt::from(*a) * x),
            },
            Acc::Big(a) => Acc::Big(a * x),
        }
    }
}

/// Statistics of one enumeration.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChainStats {
    /// Chains that reached the corolla with every segment nonzero.
    pub contributing: u64,
    /// Face-lattice steps taken.
    pub steps: u64,
}

/// `Σ sgn(a_0..a_len)` for nested region masks, ambient order by region index.
pub fn mask_sign_sum(masks: &[u32]) -> i64 {
    fn go(masks: &[u32], prev: u32, picked: &mut Vec<usize>, odd: bool) -> i64 {
        let Some((first, rest)) = masks.split_first() else {
            return if odd { -1 } else { 1 };
        };
        let mut total = 0;
        for a in bits((first & !prev) as u64) {
            let inv = picked.iter().filter(|x| **x > a).count() % 2 == 1;
            picked.push(a);
            total += go(rest, *first, picked, odd ^ inv);
            picked.pop();
        }
        total
    }
    go(masks, 0, &mut Vec::with_capacity(masks.len()), false)
}

struct Walker<'a> {
    lattice: &'a FaceLattice,
    parts: &'a [u32],
    /// `N!/2`, divisible by every product of distinct sizes in `3..=N`.
    scale: i128,
    sum: ExactSum,
    big: BigInt,
    stats: ChainStats,
}

impl Walker<'_> {
    fn segment_start(&mut self, face: u32, seg: usize, sign: Sign, acc: Acc) {
        if seg == self.parts.len() {
            self.stats.contributing += 1;
            match acc {
                Acc::Small(a) => self.sum.add_i128(if sign.is_plus() { a } else { -a }),
                Acc::Big(a) => {
                    if sign.is_plus() {
                        self.big += a
                    } else {
                        self.big -= a
                    }
                }
            }
            return;
        }
        let cells = &self.lattice.face(face).cells;
        let tracked: Vec<Tracked> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| Tracked { cell: i as u8, mu: c.count_ones() as i64 - 2, masks: vec![*c] })
            .collect();
        self.segment_step(face, seg, 0, &tracked, sign, &acc);
    }

    fn segment_step(&mut self, face: u32, seg: usize, pos: usize, tracked: &[Tracked], sign: Sign, acc: &Acc) {
        let len = 2 * self.parts[seg] as usize;
        let lattice = self.lattice;
        for step in &lattice.face(face).steps {
            self.stats.steps += 1;
            let target = lattice.face(step.target);
            let grown: Vec<Tracked> = tracked
                .iter()
                .filter_map(|t| {
                    let cell = step.cell_map[t.cell as usize];
                    let img = target.cells[cell as usize];
                    (img != *t.masks.last().unwrap()).then(|| {
                        let mut masks = t.masks.clone();
                        masks.push(img);
                        Tracked { cell, mu: t.mu, masks }
                    })
                })
                .collect();
            if grown.is_empty() {
                continue;
            }
            let sign = sign * step.sign;
            if pos + 1 < len {
                self.segment_step(step.target, seg, pos + 1, &grown, sign, acc);
                continue;
            }
            let mut num: i128 = 0;
            for t in &grown {
                let s = mask_sign_sum(&t.masks) as i128;
                if s != 0 {
                    let sizes: i128 = t.masks.iter().map(|m| m.count_ones() as i128).product();
                    num += t.mu as i128 * s * (self.scale / sizes);
                }
            }
            if num != 0 {
                self.segment_start(step.target, seg + 1, sign, acc.mul(num));
            }
        }
    }
}

/// `(-1)^m Σ_{T_*} o(T_*) c̃^λ(T_*)` over the maximal chains of `K^{2m}`, `m = |λ|`,
/// with the parts of `λ` taken in the given order.
pub fn b_single_on(lattice: &FaceLattice, parts: &[u32]) -> (Q, ChainStats) {
    let m: u32 = parts.iter().sum();
    assert_eq!(lattice.dimension(), 2 * m as usize, "lattice must be K^(2m)");
    assert!(parts.iter().all(|p| *p > 0), "parts must be positive");
    let n = lattice.polygon().size() as u32;
    let scale_big: BigInt = factorial(n) / BigInt::from(2);
    let scale: i128 = scale_big.to_string().parse().expect("fits");
    let mut w =
        Walker { lattice, parts, scale, sum: ExactSum::new(), big: BigInt::zero(), stats: ChainStats::default() };
    for t in lattice.faces_of_dimension(0) {
        w.segment_start(t, 0, Sign::Plus, Acc::Small(1));
    }
    let total = w.sum.value() + &w.big;
    let mut denom = BigInt::one();
    for &k in parts {
        denom *= pow_neg2(k + 1) * double_factorial_odd(k) * &scale_big;
    }
    let sign = if m.is_multiple_of(2) { 1 } else { -1 };
    (Q::new(total * sign, denom), w.stats)
}

/// Cup product of adjusted cyclic set cocycles on one tree chain, region model,
/// without any shortcuts.
pub fn tree_cup_product(lattice: &FaceLattice, faces: &[u32], parts: &[u32]) -> Q {
    let mut acc = q(1);
    let mut start = 0;
    for &k in parts {
        let len = 2 * k as usize;
        let seg = &faces[start..=start + len];
        let first = lattice.face(seg[0]);
        let mut total = q(0);
        for (ci, c) in first.cells.iter().enumerate() {
            let mut masks = vec![*c];
            let mut cell = ci;
            for w in seg.windows(2) {
                let step = lattice.face(w[0]).steps.iter().find(|s| s.target == w[1]).unwrap();
                cell = step.cell_map[cell] as usize;
                masks.push(lattice.face(w[1]).cells[cell]);
            }
            let chain = CyclicSetChain::from_masks(&masks);
            let v = adjusted_cz(k as usize, &chain).expect("length matches");
            total += v * q(c.count_ones() as i64 - 2);
        }
        acc *= total;
        start += len;
    }
    acc
}

/// Unpruned reference for [`b_single_on`].
pub fn b_single_reference(lattice: &FaceLattice, parts: &[u32]) -> Q {
    let m: u32 = parts.iter().sum();
    let mut total = q(0);
    lattice.for_each_chain(|faces, sign| {
        let v = tree_cup_product(lattice, faces, parts);
        if !v.is_zero() {
            total += v * q(sign.to_i64());
        }
    });
    if m % 2 == 1 {
        total = -total;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_frac;

    #[test]
    fn b_one_one() {
        let lat = FaceLattice::new(2).unwrap();
        assert_eq!(b_single_on(&lat, &[1]).0, q_frac(1, 12));
        assert_eq!(b_single_reference(&lat, &[1]), q_frac(1, 12));
    }

    #[test]
    fn weight_two() {
        let lat = FaceLattice::new(4).unwrap();
        assert_eq!(b_single_on(&lat, &[2]).0, q_frac(-1, 120));
        assert_eq!(b_single_on(&lat, &[1, 1]).0, q_frac(29, 720));
        assert_eq!(b_single_reference(&lat, &[2]), q_frac(-1, 120));
        assert_eq!(b_single_reference(&lat, &[1, 1]), q_frac(29, 720));
    }

    #[test]
    fn mask_sign_sum_matches_chain() {
        let masks = [0b0011111u32, 0b0111111, 0b1111111];
        assert_eq!(mask_sign_sum(&masks), CyclicSetChain::from_masks(&masks).sign_sum());
        assert_eq!(mask_sign_sum(&masks), 5);
    }
}
