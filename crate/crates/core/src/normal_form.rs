//! Britton normal forms `w(a,t) · a^N` for `BS(p,q)` and exact right
//! multiplication by generators.
//!
//! An element is stored as a sequence of syllables `a^r t^{±1}` followed by
//! an unbounded tail power `a^N`. Each syllable exponent lies in a window
//! that depends on its `t`-sign and on the [`Variant`]:
//!
//! | variant  | before `t`    | before `t^-1` |
//! |----------|---------------|---------------|
//! | standard | `[0, q-1]`    | `[0, p-1]`    |
//! | balanced | `[-β, α]`     | `[-δ, γ]`     |
//!
//! with `α = ⌊q/2⌋`, `β = ⌊(q-1)/2⌋`, `γ = ⌊p/2⌋`, `δ = ⌊(p-1)/2⌋`. Both
//! windows have exactly `q` (resp. `p`) integers, so every tail splits
//! uniquely as `N = d·q + r` (resp. `d·p + r`) with `r` in the window.

use std::fmt;

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::letter::{Base, Letter, Sign, Word};
use crate::params::GroupParams;

/// Which syllable alphabet a normal form uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Standard,
    Balanced,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::Standard, Variant::Balanced];

    fn tag(self) -> u8 {
        match self {
            Variant::Standard => 0,
            Variant::Balanced => 1,
        }
    }

    fn from_tag(tag: u8) -> Option<Variant> {
        match tag {
            0 => Some(Variant::Standard),
            1 => Some(Variant::Balanced),
            _ => None,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Standard => "standard",
            Variant::Balanced => "balanced",
        })
    }
}

/// Exponent windows of the syllable alphabet.
///
/// For the balanced variant `alpha..delta` are the usual `α, β, γ, δ`. The
/// standard variant is expressed in the same terms with `alpha = q-1`,
/// `gamma = p-1` and `beta = delta = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlphabetSpec {
    pub variant: Variant,
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub delta: i64,
}

impl AlphabetSpec {
    pub fn new(params: GroupParams, variant: Variant) -> AlphabetSpec {
        let p = i64::from(params.p());
        let q = i64::from(params.q());
        match variant {
            Variant::Standard => AlphabetSpec {
                variant,
                alpha: q - 1,
                beta: 0,
                gamma: p - 1,
                delta: 0,
            },
            Variant::Balanced => AlphabetSpec {
                variant,
                alpha: q / 2,
                beta: (q - 1) / 2,
                gamma: p / 2,
                delta: (p - 1) / 2,
            },
        }
    }

    /// Inclusive exponent window for a syllable ending in `t^sign`.
    pub fn window(&self, sign: Sign) -> (i64, i64) {
        match sign {
            Sign::Pos => (-self.beta, self.alpha),
            Sign::Neg => (-self.delta, self.gamma),
        }
    }

    pub fn admits(&self, syllable: Syllable) -> bool {
        let (lo, hi) = self.window(syllable.t_sign);
        lo <= syllable.a_exponent && syllable.a_exponent <= hi
    }
}

/// `a^{a_exponent} t^{t_sign}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub a_exponent: i64,
    pub t_sign: Sign,
}

impl Syllable {
    pub fn new(a_exponent: i64, t_sign: Sign) -> Syllable {
        Syllable { a_exponent, t_sign }
    }

    /// Generator length `|a_exponent| + 1`.
    pub fn word_len(&self) -> u64 {
        self.a_exponent.unsigned_abs() + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalFormError {
    #[error("syllable {index} exponent {exponent} outside window [{lo}, {hi}]")]
    ExponentOutOfRange {
        index: usize,
        exponent: i64,
        lo: i64,
        hi: i64,
    },
    #[error("syllables {index} and {} form a pinch t^e t^-e", index + 1)]
    Pinch { index: usize },
    #[error("malformed key: {0}")]
    MalformedKey(&'static str),
}

/// Britton normal form `w(a,t) · a^N` of an element of `BS(p,q)`.
///
/// Values are immutable from the outside; every constructor returns a valid
/// form, so two forms of the same variant are equal exactly when they name
/// the same group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    params: GroupParams,
    variant: Variant,
    syllables: Vec<Syllable>,
    tail: BigInt,
}

impl NormalForm {
    pub fn identity(params: GroupParams, variant: Variant) -> NormalForm {
        NormalForm {
            params,
            variant,
            syllables: Vec::new(),
            tail: BigInt::zero(),
        }
    }

    /// Builds a form from raw parts, checking every invariant.
    pub fn from_parts(
        params: GroupParams,
        variant: Variant,
        syllables: Vec<Syllable>,
        tail: BigInt,
    ) -> Result<NormalForm, NormalFormError> {
        let spec = AlphabetSpec::new(params, variant);
        for (index, s) in syllables.iter().enumerate() {
            if !spec.admits(*s) {
                let (lo, hi) = spec.window(s.t_sign);
                return Err(NormalFormError::ExponentOutOfRange {
                    index,
                    exponent: s.a_exponent,
                    lo,
                    hi,
                });
            }
        }
        for (index, pair) in syllables.windows(2).enumerate() {
            if pair[1].a_exponent == 0 && pair[0].t_sign != pair[1].t_sign {
                return Err(NormalFormError::Pinch { index });
            }
        }
        Ok(NormalForm {
            params,
            variant,
            syllables,
            tail,
        })
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn tail(&self) -> &BigInt {
        &self.tail
    }

    pub fn alphabet(&self) -> AlphabetSpec {
        AlphabetSpec::new(self.params, self.variant)
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty() && self.tail.is_zero()
    }

    /// Generator length `|w|` of the syllable part.
    pub fn prefix_len(&self) -> u64 {
        self.syllables.iter().map(Syllable::word_len).sum()
    }

    /// Length of [`NormalForm::to_word`]: `|w| + |N|`.
    pub fn word_len(&self) -> BigInt {
        BigInt::from(self.prefix_len()) + self.tail.abs()
    }

    /// The normal form of `self · letter`.
    pub fn multiply(&self, letter: Letter) -> NormalForm {
        let mut out = self.clone();
        out.mul_letter(letter);
        out
    }

    /// In-place right multiplication by one generator letter.
    pub fn mul_letter(&mut self, letter: Letter) {
        match letter {
            Letter::A => self.tail += 1,
            Letter::AInv => self.tail -= 1,
            Letter::T => self.mul_t(Sign::Pos),
            Letter::TInv => self.mul_t(Sign::Neg),
        }
    }

    /// In-place right multiplication by `a^k`.
    pub fn mul_a_power(&mut self, k: &BigInt) {
        self.tail += k;
    }

    /// Right multiplication by `t^sign`.
    ///
    /// Splits the tail as `N = d·m + r` with `r` in the window of the new
    /// syllable (`m = q` for `t`, `m = p` for `t^-1`). If `r = 0` and the last
    /// syllable ends in the opposite `t`, the pair pinches:
    /// `a^c t^-1 a^{dq} t = a^{c+dp}` and `a^c t a^{dp} t^-1 = a^{c+dq}`.
    /// Otherwise `a^r t^sign` is appended and the tail becomes `d·p` (after
    /// `t`) or `d·q` (after `t^-1`).
    fn mul_t(&mut self, sign: Sign) {
        let p = BigInt::from(self.params.p());
        let q = BigInt::from(self.params.q());
        let (modulus, factor) = match sign {
            Sign::Pos => (q, p),
            Sign::Neg => (p, q),
        };
        let (lo, _) = self.alphabet().window(sign);
        let lo = BigInt::from(lo);
        // r = lo + ((N - lo) mod m), d = (N - r) / m
        let (d, shifted) = (&self.tail - &lo).div_mod_floor(&modulus);
        let r = shifted + lo;
        let pinch = r.is_zero()
            && self
                .syllables
                .last()
                .is_some_and(|last| last.t_sign == sign.flip());
        if pinch {
            let last = self.syllables.pop().expect("pinch needs a syllable");
            self.tail = d * factor + last.a_exponent;
        } else {
            let r = r.to_i64().expect("residue lies in a small window");
            self.syllables.push(Syllable::new(r, sign));
            self.tail = d * factor;
        }
    }

    /// Spells the form as a word: each syllable as an `a`-run then `t^{±1}`,
    /// then the tail as an `a`-run.
    ///
    /// Panics if `|N|` does not fit in memory as a letter count.
    pub fn to_word(&self) -> Word {
        let mut word = Word::new();
        for s in &self.syllables {
            let a = if s.a_exponent >= 0 {
                Letter::A
            } else {
                Letter::AInv
            };
            word.push_power(a, s.a_exponent.unsigned_abs() as usize);
            word.push(Letter::new(Base::T, s.t_sign));
        }
        let a = if self.tail.is_negative() {
            Letter::AInv
        } else {
            Letter::A
        };
        let n = self
            .tail
            .abs()
            .to_usize()
            .expect("tail too large to spell as a word");
        word.push_power(a, n);
        word
    }

    /// Inverse element, obtained by renormalizing the reversed, sign-flipped
    /// spelling. Runs of `a` are applied in one step, so huge tails are fine.
    pub fn inverse(&self) -> NormalForm {
        let mut out = NormalForm::identity(self.params, self.variant);
        out.mul_a_power(&-&self.tail);
        for s in self.syllables.iter().rev() {
            out.mul_t(s.t_sign.flip());
            out.mul_a_power(&BigInt::from(-s.a_exponent));
        }
        out
    }

    /// Product of two elements (same group and variant).
    pub fn product(&self, other: &NormalForm) -> NormalForm {
        assert_eq!(self.params, other.params, "product across different groups");
        let mut out = self.clone();
        for s in &other.syllables {
            out.mul_a_power(&BigInt::from(s.a_exponent));
            out.mul_t(s.t_sign);
        }
        out.mul_a_power(&other.tail);
        out
    }

    /// The same element written in another variant.
    pub fn to_variant(&self, variant: Variant) -> NormalForm {
        if variant == self.variant {
            return self.clone();
        }
        let mut out = NormalForm::identity(self.params, variant);
        for s in &self.syllables {
            out.mul_a_power(&BigInt::from(s.a_exponent));
            out.mul_t(s.t_sign);
        }
        out.mul_a_power(&self.tail);
        out
    }

    /// Canonical byte encoding.
    ///
    /// Layout: variant tag byte; syllable count as LEB128; one LEB128 per
    /// syllable holding `zigzag(exponent) << 1 | (t_sign == -1)`; a tail sign
    /// byte (`0` for `N >= 0`, `1` for `N < 0`); then `|N|` as minimal
    /// little-endian bytes (none for zero). The encoding is injective and
    /// decodes back through [`NormalForm::from_key`].
    pub fn to_key(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(4 + self.syllables.len());
        self.write_key(&mut out);
        out
    }

    pub fn write_key(&self, out: &mut Vec<u8>) {
        out.push(self.variant.tag());
        write_varint(out, self.syllables.len() as u64);
        for s in &self.syllables {
            let neg = u64::from(s.t_sign == Sign::Neg);
            write_varint(out, (zigzag(s.a_exponent) << 1) | neg);
        }
        let (sign, mag) = self.tail.to_bytes_le();
        out.push(u8::from(sign == BigSign::Minus));
        if sign != BigSign::NoSign {
            out.extend_from_slice(&mag);
        }
    }

    pub fn from_key(params: GroupParams, key: &[u8]) -> Result<NormalForm, NormalFormError> {
        let (&tag, mut rest) = key
            .split_first()
            .ok_or(NormalFormError::MalformedKey("empty key"))?;
        let variant =
            Variant::from_tag(tag).ok_or(NormalFormError::MalformedKey("unknown variant tag"))?;
        let count = read_varint(&mut rest)?;
        let mut syllables = Vec::with_capacity(count.min(1 << 16) as usize);
        for _ in 0..count {
            let v = read_varint(&mut rest)?;
            let t_sign = if v & 1 == 1 { Sign::Neg } else { Sign::Pos };
            syllables.push(Syllable::new(unzigzag(v >> 1), t_sign));
        }
        let (&neg, mag) = rest
            .split_first()
            .ok_or(NormalFormError::MalformedKey("missing tail sign"))?;
        if mag.last() == Some(&0) {
            return Err(NormalFormError::MalformedKey("non-minimal tail magnitude"));
        }
        let tail = match (neg, mag.is_empty()) {
            (0, true) => BigInt::zero(),
            (0, false) => BigInt::from_bytes_le(BigSign::Plus, mag),
            (1, false) => BigInt::from_bytes_le(BigSign::Minus, mag),
            _ => return Err(NormalFormError::MalformedKey("bad tail sign")),
        };
        NormalForm::from_parts(params, variant, syllables, tail)
    }
}

impl fmt::Display for NormalForm {
    /// `w = t·(a t⁻¹), N = 3` style.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            f.write_str("w = ε")?;
        } else {
            f.write_str("w = ")?;
            for (i, s) in self.syllables.iter().enumerate() {
                if i > 0 {
                    f.write_str("·")?;
                }
                let t = if s.t_sign == Sign::Pos { "t" } else { "t⁻¹" };
                match s.a_exponent {
                    0 => f.write_str(t)?,
                    1 => write!(f, "(a {t})")?,
                    e => write!(f, "(a^{e} {t})")?,
                }
            }
        }
        write!(f, ", N = {}", self.tail)
    }
}

/// Folds [`NormalForm::mul_letter`] over `word`, starting at the identity.
pub fn normalize(word: &Word, params: GroupParams, variant: Variant) -> NormalForm {
    let mut nf = NormalForm::identity(params, variant);
    for &l in word.letters() {
        nf.mul_letter(l);
    }
    nf
}

/// `a^n` as a normal form.
pub fn a_power(params: GroupParams, variant: Variant, n: impl Into<BigInt>) -> NormalForm {
    let mut nf = NormalForm::identity(params, variant);
    nf.mul_a_power(&n.into());
    nf
}

fn zigzag(v: i64) -> u64 {
    ((v << 1) ^ (v >> 63)) as u64
}

fn unzigzag(v: u64) -> i64 {
    ((v >> 1) as i64) ^ -((v & 1) as i64)
}

fn write_varint(out: &mut Vec<u8>, mut v: u64) {
    while v >= 0x80 {
        out.push((v as u8) | 0x80);
        v >>= 7;
    }
    out.push(v as u8);
}

fn read_varint(buf: &mut &[u8]) -> Result<u64, NormalFormError> {
    let mut v = 0u64;
    for shift in (0..64).step_by(7) {
        let (&b, rest) = buf
            .split_first()
            .ok_or(NormalFormError::MalformedKey("truncated varint"))?;
        *buf = rest;
        v |= u64::from(b & 0x7f) << shift;
        if b & 0x80 == 0 {
            if b == 0 && shift > 0 {
                return Err(NormalFormError::MalformedKey("non-minimal varint"));
            }
            return Ok(v);
        }
    }
    Err(NormalFormError::MalformedKey("varint overflow"))
}
