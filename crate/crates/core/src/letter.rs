//! Generators of `BS(p,q) = <a, t | t a^p t^-1 = a^q>` and words over them.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// One of the four generator letters `a`, `a^-1`, `t`, `t^-1`.
///
/// The compact text encoding used on the command line is `a`, `A`, `t`, `T`
/// (upper case = inverse).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    AInv,
    T,
    TInv,
}

/// The underlying generator of a [`Letter`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    A,
    T,
}

/// Exponent sign of a letter, or the `t`-sign of a syllable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::AInv, Letter::T, Letter::TInv];

    pub fn new(base: Base, sign: Sign) -> Letter {
        match (base, sign) {
            (Base::A, Sign::Pos) => Letter::A,
            (Base::A, Sign::Neg) => Letter::AInv,
            (Base::T, Sign::Pos) => Letter::T,
            (Base::T, Sign::Neg) => Letter::TInv,
        }
    }

    pub fn base(self) -> Base {
        match self {
            Letter::A | Letter::AInv => Base::A,
            Letter::T | Letter::TInv => Base::T,
        }
    }

    pub fn sign(self) -> Sign {
        match self {
            Letter::A | Letter::T => Sign::Pos,
            Letter::AInv | Letter::TInv => Sign::Neg,
        }
    }

    pub fn inverse(self) -> Letter {
        Letter::new(self.base(), self.sign().flip())
    }

    /// The ASCII code `a`, `A`, `t` or `T`.
    pub fn code(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::T => 't',
            Letter::TInv => 'T',
        }
    }

    pub fn from_code(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'A' => Some(Letter::AInv),
            't' => Some(Letter::T),
            'T' => Some(Letter::TInv),
            _ => None,
        }
    }

    /// Index in [`Letter::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::A => "a",
            Letter::AInv => "a⁻¹",
            Letter::T => "t",
            Letter::TInv => "t⁻¹",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid letter token {token:?} (expected one of a, A, t, T)")]
pub struct ParseWordError {
    pub token: String,
}

/// A word in the generators, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new() -> Word {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    /// Appends `letter` `count` times.
    pub fn push_power(&mut self, letter: Letter, count: usize) {
        self.0.extend(std::iter::repeat_n(letter, count));
    }

    /// Formal inverse: reversed, every letter inverted.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Compact form, e.g. `taaT`.
    pub fn to_code_string(&self) -> String {
        self.0.iter().map(|l| l.code()).collect()
    }

    /// Space separated compact form, e.g. `t a a T`.
    pub fn to_spaced_string(&self) -> String {
        let mut s = String::with_capacity(self.0.len() * 2);
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push(l.code());
        }
        s
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Word {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Word {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Parses whitespace separated tokens. A token may hold several letter codes
/// (`"taaT"` and `"t a a T"` are the same word).
impl FromStr for Word {
    type Err = ParseWordError;

    fn from_str(s: &str) -> Result<Word, ParseWordError> {
        let mut letters = Vec::new();
        for token in s.split_whitespace() {
            for c in token.chars() {
                match Letter::from_code(c) {
                    Some(l) => letters.push(l),
                    None => {
                        return Err(ParseWordError {
                            token: token.to_string(),
                        })
                    }
                }
            }
        }
        Ok(Word(letters))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_both_spellings() {
        let w: Word = "t a a T".parse().unwrap();
        let v: Word = "taaT".parse().unwrap();
        assert_eq!(w, v);
        assert_eq!(w.to_code_string(), "taaT");
        assert_eq!(w.to_spaced_string(), "t a a T");
        assert_eq!("".parse::<Word>().unwrap(), Word::new());
    }

    #[test]
    fn parse_rejects_other_tokens() {
        let err = "t b".parse::<Word>().unwrap_err();
        assert_eq!(err.token, "b");
        assert!("a1".parse::<Word>().is_err());
    }

    #[test]
    fn inverse_reverses_and_flips() {
        let w: Word = "t a".parse().unwrap();
        assert_eq!(w.inverse().to_code_string(), "AT");
        for l in Letter::ALL {
            assert_eq!(l.inverse().inverse(), l);
            assert_eq!(Letter::ALL[l.index()], l);
        }
    }
}
