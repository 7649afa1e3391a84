//! Letter-level automata for the normal-form prefixes `w(a,t)`.
//!
//! A word is accepted when it spells a (possibly empty) sequence of
//! syllables `a^r t^{±1}` with exponents in the alphabet windows and no
//! `t t^-1` / `t^-1 t` cancellation. Since distinct prefixes are distinct
//! group elements of length at most their spelling, the number of accepted
//! words grows no faster than the group, and the spectral radius of the
//! adjacency matrix is a lower bound for the growth rate.

use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::letter::{Letter, Word};
use crate::normal_form::{AlphabetSpec, Variant};
use crate::params::{GroupParams, ParamsError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error("enumeration would exceed the cap of {cap} words")]
    CapExceeded { cap: usize },
}

/// What the automaton remembers about the word read so far.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum State {
    /// Empty word.
    Start,
    /// Last letter was `t`.
    AfterT,
    /// Last letter was `t^-1`.
    AfterTInv,
    /// Inside an `a`-run of this signed length (never 0).
    Run(i64),
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            State::Start => f.write_str("S"),
            State::AfterT => f.write_str("P"),
            State::AfterTInv => f.write_str("M"),
            State::Run(i) => write!(f, "A{i}"),
        }
    }
}

/// Deterministic automaton over the four generator letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthAutomaton {
    states: Vec<State>,
    /// `transitions[s][letter.index()]`
    transitions: Vec<[Option<usize>; 4]>,
    accept: Vec<bool>,
}

impl GrowthAutomaton {
    pub const START: usize = 0;

    /// Builds the automaton for an alphabet. States are `S, P, M`, then the
    /// positive run states `A1..Aα`, then `A-1..A-β`.
    pub fn from_alphabet(spec: &AlphabetSpec) -> GrowthAutomaton {
        let mut states = vec![State::Start, State::AfterT, State::AfterTInv];
        states.extend((1..=spec.alpha).map(State::Run));
        states.extend((1..=spec.beta).map(|i| State::Run(-i)));
        let index_of = |s: State| match s {
            State::Start => 0,
            State::AfterT => 1,
            State::AfterTInv => 2,
            State::Run(i) if i > 0 => 2 + i as usize,
            State::Run(i) => 2 + spec.alpha as usize + (-i) as usize,
        };
        let run = |i: i64| {
            let in_window = if i > 0 {
                i <= spec.alpha
            } else {
                -i <= spec.beta
            };
            in_window.then(|| index_of(State::Run(i)))
        };
        // exponent r may precede t^-1 iff -delta <= r <= gamma
        let allows_t_inv = |r: i64| -spec.delta <= r && r <= spec.gamma;

        let transitions = states
            .iter()
            .map(|&s| {
                let mut row = [None; 4];
                let (after_a, after_a_inv) = match s {
                    State::Run(i) if i > 0 => (run(i + 1), None),
                    State::Run(i) => (None, run(i - 1)),
                    _ => (run(1), run(-1)),
                };
                row[Letter::A.index()] = after_a;
                row[Letter::AInv.index()] = after_a_inv;
                row[Letter::T.index()] = match s {
                    State::AfterTInv => None,
                    _ => Some(index_of(State::AfterT)),
                };
                row[Letter::TInv.index()] = match s {
                    State::AfterT => None,
                    State::Run(i) if !allows_t_inv(i) => None,
                    _ => Some(index_of(State::AfterTInv)),
                };
                row
            })
            .collect();
        let accept = states.iter().map(|s| !matches!(s, State::Run(_))).collect();
        GrowthAutomaton {
            states,
            transitions,
            accept,
        }
    }

    /// Degenerate automaton with one accepting state and no transitions.
    pub fn trivial() -> GrowthAutomaton {
        GrowthAutomaton {
            states: vec![State::Start],
            transitions: vec![[None; 4]],
            accept: vec![true],
        }
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accept[state]
    }

    pub fn step(&self, state: usize, letter: Letter) -> Option<usize> {
        self.transitions[state][letter.index()]
    }

    /// All edges `(from, letter, to)`.
    pub fn edges(&self) -> Vec<(usize, Letter, usize)> {
        let mut out = Vec::new();
        for (s, row) in self.transitions.iter().enumerate() {
            for l in Letter::ALL {
                if let Some(t) = row[l.index()] {
                    out.push((s, l, t));
                }
            }
        }
        out
    }

    pub fn accepts(&self, word: &Word) -> bool {
        let mut s = Self::START;
        for &l in word.letters() {
            match self.step(s, l) {
                Some(next) => s = next,
                None => return false,
            }
        }
        self.accept[s]
    }

    /// Number of edges from `i` to `j`.
    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let n = self.num_states();
        let mut m = vec![vec![0u32; n]; n];
        for (s, _, t) in self.edges() {
            m[s][t] += 1;
        }
        m
    }

    /// Plain-text edge list, one `state letter state` line per edge.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for (s, l, t) in self.edges() {
            writeln!(out, "{} {} {}", self.states[s], l.code(), self.states[t]).unwrap();
        }
        out
    }

    /// Largest eigenvalue of the adjacency matrix.
    ///
    /// Power iteration on `A + I` from the all-ones vector: the shift makes
    /// the Perron root strictly dominant even for periodic components. The
    /// Rayleigh-type estimate `Σ(A+I)x / Σx - 1` is iterated until it moves
    /// by less than `1e-14` relative (at most `10^6` rounds).
    pub fn spectral_radius(&self) -> f64 {
        let n = self.num_states();
        let adjacency = self.adjacency();
        if adjacency.iter().flatten().all(|&c| c == 0) {
            return 0.0;
        }
        let mut x = vec![1.0 / n as f64; n];
        let mut y = vec![0.0; n];
        let mut estimate = f64::NAN;
        for _ in 0..1_000_000 {
            for (i, yi) in y.iter_mut().enumerate() {
                *yi = x[i]
                    + adjacency[i]
                        .iter()
                        .zip(&x)
                        .map(|(&c, &xj)| f64::from(c) * xj)
                        .sum::<f64>();
            }
            let total: f64 = y.iter().sum();
            let next = total - 1.0;
            for (xi, yi) in x.iter_mut().zip(&y) {
                *xi = yi / total;
            }
            if (next - estimate).abs() <= 1e-14 * next.max(1.0) {
                return next;
            }
            estimate = next;
        }
        estimate
    }

    /// `counts[k]` = number of accepted words of length exactly `k`, for
    /// `k = 0..=n`, by exact transfer-matrix iteration.
    pub fn count_accepted(&self, n: usize) -> Vec<BigUint> {
        let edges = self.edges();
        let mut paths = vec![BigUint::zero(); self.num_states()];
        paths[Self::START] = BigUint::one();
        let mut counts = Vec::with_capacity(n + 1);
        for k in 0..=n {
            counts.push(self.accepted_total(&paths));
            if k == n {
                break;
            }
            let mut next = vec![BigUint::zero(); self.num_states()];
            for &(s, _, t) in &edges {
                if !paths[s].is_zero() {
                    next[t] += &paths[s];
                }
            }
            paths = next;
        }
        counts
    }

    fn accepted_total(&self, paths: &[BigUint]) -> BigUint {
        paths
            .iter()
            .zip(&self.accept)
            .filter(|(_, &a)| a)
            .map(|(c, _)| c)
            .sum()
    }

    /// Every accepted word of length at most `n`, shortest first and in
    /// letter order (`a, A, t, T`) within a length.
    pub fn enumerate_accepted(&self, n: usize, cap: usize) -> Result<Vec<Word>, AutomatonError> {
        let mut out = Vec::new();
        // words of the current length with their end state
        let mut level: Vec<(Vec<Letter>, usize)> = vec![(Vec::new(), Self::START)];
        for len in 0..=n {
            for (w, s) in &level {
                if self.accept[*s] {
                    if out.len() == cap {
                        return Err(AutomatonError::CapExceeded { cap });
                    }
                    out.push(Word(w.clone()));
                }
            }
            if len == n {
                break;
            }
            let mut next = Vec::new();
            for (w, s) in &level {
                for l in Letter::ALL {
                    if let Some(t) = self.step(*s, l) {
                        let mut v = w.clone();
                        v.push(l);
                        next.push((v, t));
                    }
                }
                if next.len() > cap.saturating_mul(64).max(1 << 20) {
                    return Err(AutomatonError::CapExceeded { cap });
                }
            }
            level = next;
        }
        Ok(out)
    }

    /// Every state except `S` has an incoming path from `S`.
    pub fn all_reachable(&self) -> bool {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![Self::START];
        seen[Self::START] = true;
        while let Some(s) = stack.pop() {
            for t in self.transitions[s].iter().flatten() {
                if !seen[*t] {
                    seen[*t] = true;
                    stack.push(*t);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }
}

/// Automaton for the standard alphabet `a^r t` (`0 <= r < q`) and
/// `a^s t^-1` (`0 <= s < p`).
pub fn build_standard_automaton(params: GroupParams) -> GrowthAutomaton {
    GrowthAutomaton::from_alphabet(&AlphabetSpec::new(params, Variant::Standard))
}

/// Automaton for the balanced alphabet `a^r t` (`-β <= r <= α`) and
/// `a^s t^-1` (`-δ <= s <= γ`).
pub fn build_balanced_automaton(params: GroupParams) -> GrowthAutomaton {
    GrowthAutomaton::from_alphabet(&AlphabetSpec::new(params, Variant::Balanced))
}

pub fn build_automaton(params: GroupParams, variant: Variant) -> GrowthAutomaton {
    GrowthAutomaton::from_alphabet(&AlphabetSpec::new(params, variant))
}

/// Growth-rate lower bound from the normal-form automaton.
pub fn growth_lower_bound(params: GroupParams, variant: Variant) -> f64 {
    build_automaton(params, variant).spectral_radius()
}
