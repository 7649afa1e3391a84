//! The `t^{-m} a^N t^n` normal form of the solvable groups `BS(1,q)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::letter::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolvableError {
    #[error("BS(1,q) normal form needs q > 1, got q={0}")]
    InvalidQ(u32),
}

/// `t^{-m} a^N t^n` with `m, n >= 0`. When both `m` and `n` are positive,
/// `N` is nonzero and not a multiple of `q`; under that condition the
/// expression is unique.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SolvableNormalForm {
    pub m: u64,
    pub big_n: BigInt,
    pub n: u64,
}

impl SolvableNormalForm {
    pub fn identity() -> SolvableNormalForm {
        SolvableNormalForm {
            m: 0,
            big_n: BigInt::zero(),
            n: 0,
        }
    }

    /// Checks the uniqueness condition for the given `q`.
    pub fn is_reduced(&self, q: u32) -> bool {
        if self.m > 0 && self.n > 0 {
            !self.big_n.is_zero() && !self.big_n.is_multiple_of(&BigInt::from(q))
        } else {
            true
        }
    }

    /// Right multiplication by one letter in `BS(1,q)`.
    ///
    /// `t^n a = a^{q^n} t^n`, `a t^{-1} = t^{-1} a^q`; afterwards a factor `q`
    /// of `N` is pushed through `t^{-1} a^{qk} t = a^k` while `m, n > 0`.
    pub fn mul_letter(&mut self, letter: Letter, q: u32) {
        match letter {
            Letter::A | Letter::AInv => {
                let step = BigInt::from(q).pow(self.n);
                if letter == Letter::A {
                    self.big_n += step;
                } else {
                    self.big_n -= step;
                }
                self.reduce(q);
            }
            Letter::T => {
                self.n += 1;
                self.reduce(q);
            }
            Letter::TInv => {
                if self.n > 0 {
                    self.n -= 1;
                } else {
                    self.m += 1;
                    self.big_n *= q;
                }
            }
        }
    }

    /// Right multiplication by `a^k`: `N += k·q^n`.
    pub fn mul_a_power(&mut self, k: &BigInt, q: u32) {
        self.big_n += k * BigInt::from(q).pow(self.n);
        self.reduce(q);
    }

    fn reduce(&mut self, q: u32) {
        let q = BigInt::from(q);
        while self.m > 0 && self.n > 0 {
            let (d, r) = self.big_n.div_rem(&q);
            if !r.is_zero() {
                break;
            }
            self.big_n = d;
            self.m -= 1;
            self.n -= 1;
        }
    }

    /// `t^{-m} a^N t^n` spelled out. Panics if `|N|` is not a usize.
    pub fn to_word(&self) -> Word {
        let mut w = Word::new();
        w.push_power(Letter::TInv, self.m as usize);
        let count = self
            .big_n
            .abs()
            .to_usize()
            .expect("exponent too large to spell");
        let a = if self.big_n.is_negative() {
            Letter::AInv
        } else {
            Letter::A
        };
        w.push_power(a, count);
        w.push_power(Letter::T, self.n as usize);
        w
    }
}

impl fmt::Display for SolvableNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={}, N={}, n={}", self.m, self.big_n, self.n)
    }
}

/// The unique `t^{-m} a^N t^n` form of `word` in `BS(1,q)`.
pub fn solvable_normal_form(word: &Word, q: u32) -> Result<SolvableNormalForm, SolvableError> {
    if q < 2 {
        return Err(SolvableError::InvalidQ(q));
    }
    let mut nf = SolvableNormalForm::identity();
    for &l in word.letters() {
        nf.mul_letter(l, q);
    }
    Ok(nf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf(word: &str, q: u32) -> SolvableNormalForm {
        solvable_normal_form(&word.parse().unwrap(), q).unwrap()
    }

    fn form(m: u64, n_big: i64, n: u64) -> SolvableNormalForm {
        SolvableNormalForm {
            m,
            big_n: BigInt::from(n_big),
            n,
        }
    }

    #[test]
    fn examples() {
        assert_eq!(snf("t a", 2), form(0, 2, 1));
        assert_eq!(snf("", 2), form(0, 0, 0));
        assert_eq!(snf("a T", 3), form(1, 3, 0));
    }

    #[test]
    fn defining_relation_and_cancellation() {
        // t a t^-1 = a^q
        assert_eq!(snf("t a T", 2), form(0, 2, 0));
        assert_eq!(snf("t a T", 5), form(0, 5, 0));
        // t^-1 a^q t = a
        assert_eq!(snf("T a a t", 2), form(0, 1, 0));
        assert_eq!(snf("T t", 3), SolvableNormalForm::identity());
        assert_eq!(snf("T a A t", 3), SolvableNormalForm::identity());
        assert_eq!(snf("T T t", 3), form(1, 0, 0));
    }

    #[test]
    fn rejects_small_q() {
        assert_eq!(
            solvable_normal_form(&Word::new(), 1),
            Err(SolvableError::InvalidQ(1))
        );
    }

    #[test]
    fn spelled_word_normalizes_back() {
        for w in ["T a t", "T T a a a t", "t t A", "T a a t t"] {
            let x = snf(w, 3);
            assert!(x.is_reduced(3));
            assert_eq!(solvable_normal_form(&x.to_word(), 3).unwrap(), x);
        }
    }
}
