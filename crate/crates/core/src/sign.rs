//! Signs and permutation parities.

use std::collections::HashMap;
use std::hash::Hash;
use std::ops::{Mul, MulAssign, Neg};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    /// `(-1)^n`.
    pub fn pow_minus_one(n: usize) -> Self {
        Self::from_parity(n % 2 == 1)
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self != rhs)
    }
}

impl MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        *self = *self * rhs;
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// Parity of the number of inversions of a sequence of distinct comparable keys.
pub fn inversion_parity<T: Ord>(xs: &[T]) -> Sign {
    let mut odd = false;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[i] > xs[j] {
                odd = !odd;
            }
        }
    }
    Sign::from_parity(odd)
}

/// Sign of the permutation carrying `from` onto `to`.
///
/// Both slices must list the same distinct items.
pub fn relative_sign<T: Eq + Hash>(from: &[T], to: &[T]) -> Sign {
    debug_assert_eq!(from.len(), to.len());
    let pos: HashMap<&T, usize> = from.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let image: Vec<usize> = to.iter().map(|t| *pos.get(t).expect("sequences must hold the same items")).collect();
    inversion_parity(&image)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_algebra() {
        assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
        assert_eq!(-Sign::Plus, Sign::Minus);
        assert_eq!(Sign::pow_minus_one(3), Sign::Minus);
    }

    #[test]
    fn relative_sign_of_transposition() {
        assert_eq!(relative_sign(&[1, 2, 3], &[2, 1, 3]), Sign::Minus);
        assert_eq!(relative_sign(&[1, 2, 3], &[2, 3, 1]), Sign::Plus);
        assert_eq!(relative_sign(&["a", "b"], &["a", "b"]), Sign::Plus);
    }
}
