//! Shared helpers for the integration tests: a naive rewriting normalizer
//! and random word generation.

#![allow(dead_code)]

use bsgroup::{
    AffineMap, GroupParams, Letter, NormalForm, Sign, SolvableNormalForm, Variant, Word,
};
use num_traits::ToPrimitive;
use rand::Rng;

pub const PAIRS: [(u32, u32); 7] = [(1, 2), (1, 3), (2, 2), (2, 3), (3, 3), (3, 5), (4, 7)];

pub fn params(p: u32, q: u32) -> GroupParams {
    GroupParams::new(p, q).unwrap()
}

pub fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| Letter::ALL[rng.gen_range(0..4)]).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    A(i128),
    T(i8),
}

/// Allowed `a`-exponents in front of `t` and `t⁻¹`, written out from the
/// floor formulas rather than taken from the library.
pub fn windows(p: i128, q: i128, variant: Variant) -> [(i128, i128); 2] {
    match variant {
        Variant::Standard => [(0, q - 1), (0, p - 1)],
        Variant::Balanced => [(-((q - 1) / 2), q / 2), (-((p - 1) / 2), p / 2)],
    }
}

/// Normal form of `word` as `(syllables, tail)` by rewriting to a
/// fixpoint. Rules: drop
/// `a^0`, merge adjacent `a`-runs, cancel `t t⁻¹` / `t⁻¹ t`, collapse pinches
/// `t a^{kp} t⁻¹ → a^{kq}` and `t⁻¹ a^{kq} t → a^{kp}`, and move excess
/// `a`-powers through a `t^{±1}` (`a^{dq} t = t a^{dp}`,
/// `a^{dp} t⁻¹ = t⁻¹ a^{dq}`).
pub fn naive_normal_form(word: &Word, p: u32, q: u32, variant: Variant) -> (Vec<(i128, i8)>, i128) {
    let (p, q) = (i128::from(p), i128::from(q));
    let win = windows(p, q, variant);
    let mut toks: Vec<Tok> = word
        .letters()
        .iter()
        .map(|l| match l {
            Letter::A => Tok::A(1),
            Letter::AInv => Tok::A(-1),
            Letter::T => Tok::T(1),
            Letter::TInv => Tok::T(-1),
        })
        .collect();
    // rules span at most three tokens, so after a rewrite at `i` only
    // positions from `i - 2` on need another look
    let mut i = 0;
    while i < toks.len() {
        if rewrite_at(&mut toks, i, p, q, &win) {
            i = i.saturating_sub(2);
        } else {
            i += 1;
        }
    }
    let mut syllables = Vec::new();
    let mut pending = 0;
    for t in toks {
        match t {
            Tok::A(x) => pending += x,
            Tok::T(s) => {
                syllables.push((pending, s));
                pending = 0;
            }
        }
    }
    (syllables, pending)
}

/// Applies the first rule that matches at position `i`.
fn rewrite_at(toks: &mut Vec<Tok>, i: usize, p: i128, q: i128, win: &[(i128, i128); 2]) -> bool {
    match toks[i] {
        Tok::A(0) => {
            toks.remove(i);
            true
        }
        Tok::A(x) => match toks.get(i + 1) {
            Some(&Tok::A(y)) => {
                toks[i] = Tok::A(x + y);
                toks.remove(i + 1);
                true
            }
            Some(&Tok::T(s)) => {
                let (lo, hi) = if s == 1 { win[0] } else { win[1] };
                if lo <= x && x <= hi {
                    return false;
                }
                let (m, factor) = if s == 1 { (q, p) } else { (p, q) };
                let r = lo + (x - lo).rem_euclid(m);
                let d = (x - r) / m;
                toks[i] = Tok::A(r);
                toks.insert(i + 2, Tok::A(d * factor));
                true
            }
            None => false,
        },
        Tok::T(s) => match (toks.get(i + 1), toks.get(i + 2)) {
            (Some(&Tok::T(s2)), _) if s2 == -s => {
                toks.drain(i..i + 2);
                true
            }
            (Some(&Tok::A(e)), Some(&Tok::T(s2))) if s2 == -s => {
                let (div, mul) = if s == 1 { (p, q) } else { (q, p) };
                if e % div != 0 {
                    return false;
                }
                toks.splice(i..i + 3, [Tok::A(e / div * mul)]);
                true
            }
            _ => false,
        },
    }
}

/// The same `(syllables, tail)` shape read off a library normal form.
pub fn shape(nf: &NormalForm) -> (Vec<(i128, i8)>, i128) {
    let syllables = nf
        .syllables()
        .iter()
        .map(|s| {
            let sign = if s.t_sign == Sign::Pos { 1 } else { -1 };
            (i128::from(s.a_exponent), sign)
        })
        .collect();
    (syllables, nf.tail().to_i128().expect("tail fits in i128"))
}

/// Affine image of a normal form built from its syllables, without
/// spelling out long `a`-runs letter by letter.
pub fn normal_form_image(nf: &NormalForm) -> AffineMap {
    let g = nf.params();
    let mut out = AffineMap::identity();
    for s in nf.syllables() {
        out = out.compose(&AffineMap::translation(&s.a_exponent.into()));
        out = out.compose(&AffineMap::t_power(s.t_sign.as_i64(), g));
    }
    out.compose(&AffineMap::translation(nf.tail()))
}

/// Affine image of `t^{-m} a^N t^n`.
pub fn solvable_image(s: &SolvableNormalForm, g: GroupParams) -> AffineMap {
    let m = i64::try_from(s.m).unwrap();
    let n = i64::try_from(s.n).unwrap();
    AffineMap::t_power(-m, g)
        .compose(&AffineMap::translation(&s.big_n))
        .compose(&AffineMap::t_power(n, g))
}

/// `PASS`/`FAIL` line for one check.
pub fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}
