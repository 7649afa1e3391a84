//! Affine representation `a ↦ (x ↦ x + 1)`, `t ↦ (x ↦ (q/p)·x)`.
//!
//! It is a homomorphism for every `BS(p,q)` and faithful for `p = 1`, which
//! makes it an oracle for normal-form arithmetic that shares no code with it.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::letter::{Letter, Word};
use crate::params::GroupParams;

/// `x ↦ scale·x + offset` over the rationals, `scale != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub scale: BigRational,
    pub offset: BigRational,
}

impl AffineMap {
    pub fn identity() -> AffineMap {
        AffineMap {
            scale: BigRational::one(),
            offset: BigRational::zero(),
        }
    }

    pub fn of_letter(letter: Letter, params: GroupParams) -> AffineMap {
        let p = BigInt::from(params.p());
        let q = BigInt::from(params.q());
        match letter {
            Letter::A => AffineMap {
                scale: BigRational::one(),
                offset: BigRational::one(),
            },
            Letter::AInv => AffineMap {
                scale: BigRational::one(),
                offset: -BigRational::one(),
            },
            Letter::T => AffineMap {
                scale: BigRational::new(q, p),
                offset: BigRational::zero(),
            },
            Letter::TInv => AffineMap {
                scale: BigRational::new(p, q),
                offset: BigRational::zero(),
            },
        }
    }

    /// Image of `a^n`: `x ↦ x + n`.
    pub fn translation(n: &BigInt) -> AffineMap {
        AffineMap {
            scale: BigRational::one(),
            offset: BigRational::from_integer(n.clone()),
        }
    }

    /// Image of `t^k`: `x ↦ (q/p)^k·x`.
    pub fn t_power(k: i64, params: GroupParams) -> AffineMap {
        let ratio = BigRational::new(params.q().into(), params.p().into());
        let e = i32::try_from(k).expect("t exponent fits in i32");
        AffineMap {
            scale: num_traits::Pow::pow(ratio, e),
            offset: BigRational::zero(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            scale: &self.scale * &other.scale,
            offset: &self.scale * &other.offset + &self.offset,
        }
    }

    pub fn apply(&self, x: &BigRational) -> BigRational {
        &self.scale * x + &self.offset
    }
}

impl Mul for &AffineMap {
    type Output = AffineMap;

    fn mul(self, rhs: &AffineMap) -> AffineMap {
        self.compose(rhs)
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x ↦ {}·x + {}", self.scale, self.offset)
    }
}

/// Image of `word` under the affine representation, composed left to right
/// so that `image(uv) = image(u) ∘ image(v)`.
pub fn affine_image(word: &Word, params: GroupParams) -> AffineMap {
    word.letters()
        .iter()
        .fold(AffineMap::identity(), |acc, &l| {
            acc.compose(&AffineMap::of_letter(l, params))
        })
}
