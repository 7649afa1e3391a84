//! Word-metric estimates with explicit constants, and the short words that
//! realize the upper bounds.
//!
//! Every estimate has the shape `C1·f(x) - D1 <= ||x|| <= C2·f(x) + D2` for
//! an explicit estimate value `f`. Logarithm bases are fixed: natural log in
//! the `BS(1,q)` estimate value, base `q` for its digit count, and base `q/p`
//! for the `p < q` estimate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::letter::{Letter, Word};
use crate::normal_form::{NormalForm, Variant};
use crate::params::GroupParams;
use crate::solvable::SolvableNormalForm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("estimate needs q > 1, got q={0}")]
    InvalidQ(u32),
    #[error("estimate_pq needs p < q, got {0} (use estimate_pp when p = q)")]
    NeedsStrictInequality(GroupParams),
    #[error("estimate_pp needs p = q, got {0}")]
    NeedsEqualParams(GroupParams),
    #[error("estimate needs the standard normal form")]
    NeedsStandardVariant,
    #[error("{0} is not a solvable group (p must be 1)")]
    NotSolvable(GroupParams),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub c1: f64,
    pub d1: f64,
    pub c2: f64,
    pub d2: f64,
}

/// Lower and upper bounds on `||x||` for one element.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricBounds {
    /// The estimate value `f(x)`.
    pub f: f64,
    pub lower: f64,
    pub upper: f64,
    pub constants: Constants,
}

impl MetricBounds {
    pub fn contains(&self, length: f64) -> bool {
        self.lower <= length && length <= self.upper
    }
}

/// Natural log of `|n|`, accurate for integers of any size.
pub fn ln_abs(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_f64().expect("finite below 2^1000").ln();
    }
    let shift = bits - 64;
    let top = (n.abs() >> shift).to_f64().expect("64-bit mantissa");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `⌊log_q |n|⌋` for `n != 0`, exactly.
pub fn floor_log(n: &BigInt, q: u32) -> u64 {
    let q = BigInt::from(q);
    let mut rest = n.abs();
    let mut r = 0;
    while rest >= q {
        rest /= &q;
        r += 1;
    }
    r
}

/// Estimate for `x = t^{-m} a^N t^n` in `BS(1,q)`.
///
/// For `N != 0`: `f = m + n + ln|N|`, the upper bound is the length
/// `m + n + 2q(⌊log_q|N|⌋ + 1)` of the base-`q` witness and the lower bound
/// is `f / (2(ln q + 1))`. For `N = 0` the word `t^{n-m}` is geodesic and
/// both bounds equal `m + n`.
pub fn estimate_1q(nf: &SolvableNormalForm, q: u32) -> Result<MetricBounds, MetricsError> {
    if q < 2 {
        return Err(MetricsError::InvalidQ(q));
    }
    let qf = f64::from(q);
    let constants = Constants {
        c1: 1.0 / (2.0 * (qf.ln() + 1.0)),
        d1: 0.0,
        c2: 2.0 * qf / qf.ln(),
        d2: 2.0 * qf,
    };
    let t_part = (nf.m + nf.n) as f64;
    if nf.big_n.is_zero() {
        return Ok(MetricBounds {
            f: t_part,
            lower: t_part,
            upper: t_part,
            constants,
        });
    }
    let f = t_part + ln_abs(&nf.big_n);
    let r = floor_log(&nf.big_n, q) as f64;
    Ok(MetricBounds {
        f,
        lower: (constants.c1 * f - constants.d1).max(0.0),
        upper: t_part + 2.0 * qf * (r + 1.0),
        constants,
    })
}

/// Estimate `f = |w| + log_{q/p}(|N| + 1)` for `BS(p,q)` with `p < q`.
///
/// `C2 = q + 1`, `D2 = q`, `C1 = 1/(q + 1)`, `D1 = log_{q/p}(2C)` with
/// `C = qp/(q - p)`.
pub fn estimate_pq(nf: &NormalForm) -> Result<MetricBounds, MetricsError> {
    let params = nf.params();
    if params.p() >= params.q() {
        return Err(MetricsError::NeedsStrictInequality(params));
    }
    if nf.variant() != Variant::Standard {
        return Err(MetricsError::NeedsStandardVariant);
    }
    let p = f64::from(params.p());
    let q = f64::from(params.q());
    let ln_ratio = (q / p).ln();
    let big_c = q * p / (q - p);
    let constants = Constants {
        c1: 1.0 / (q + 1.0),
        d1: (2.0 * big_c).ln() / ln_ratio,
        c2: q + 1.0,
        d2: q,
    };
    let tail_plus_one = nf.tail().abs() + 1u32;
    let f = nf.prefix_len() as f64 + ln_abs(&tail_plus_one) / ln_ratio;
    Ok(MetricBounds {
        f,
        lower: (constants.c1 * f - constants.d1).max(0.0),
        upper: constants.c2 * f + constants.d2,
        constants,
    })
}

/// Estimate `f = |w| + |N|` for `BS(p,p)`: `f/(2p) <= ||x|| <= f`.
pub fn estimate_pp(nf: &NormalForm) -> Result<MetricBounds, MetricsError> {
    let params = nf.params();
    if params.p() != params.q() {
        return Err(MetricsError::NeedsEqualParams(params));
    }
    if nf.variant() != Variant::Standard {
        return Err(MetricsError::NeedsStandardVariant);
    }
    let p = f64::from(params.p());
    let constants = Constants {
        c1: 1.0 / (2.0 * p),
        d1: 0.0,
        c2: 1.0,
        d2: 0.0,
    };
    let f = nf.word_len().to_f64().unwrap_or(f64::INFINITY);
    Ok(MetricBounds {
        f,
        lower: constants.c1 * f,
        upper: f,
        constants,
    })
}

/// Picks the estimate matching the group: `BS(1,q)` uses the solvable form,
/// `p = q` uses [`estimate_pp`], otherwise [`estimate_pq`].
pub fn estimate(nf: &NormalForm) -> Result<MetricBounds, MetricsError> {
    let params = nf.params();
    if params.p() == params.q() {
        estimate_pp(nf)
    } else if params.is_solvable() {
        estimate_1q(&SolvableNormalForm::from_normal_form(nf)?, params.q())
    } else {
        estimate_pq(nf)
    }
}

/// Word `t^{-m} (a^{k_0} t a^{k_1} t … t a^{k_r} t^{-r}) t^n` where
/// `|N| = Σ k_i q^i` in base `q`; `a` is replaced by `a^-1` when `N < 0`.
///
/// Its length is at most `m + n + 2q(r + 1)` with `r = ⌊log_q |N|⌋`.
pub fn base_q_witness(nf: &SolvableNormalForm, q: u32) -> Result<Word, MetricsError> {
    if q < 2 {
        return Err(MetricsError::InvalidQ(q));
    }
    let mut w = Word::new();
    w.push_power(Letter::TInv, nf.m as usize);
    let a = if nf.big_n.is_negative() {
        Letter::AInv
    } else {
        Letter::A
    };
    let mut rest = nf.big_n.abs();
    let radix = BigInt::from(q);
    let mut r = 0usize;
    while !rest.is_zero() {
        let (next, digit) = rest.div_rem(&radix);
        if r > 0 {
            w.push(Letter::T);
        }
        w.push_power(a, digit.to_usize().expect("digit below q"));
        rest = next;
        r += 1;
    }
    if r > 1 {
        w.push_power(Letter::TInv, r - 1);
    }
    w.push_power(Letter::T, nf.n as usize);
    Ok(w)
}

/// Length bound `m + n + 2q(⌊log_q|N|⌋ + 1)` for [`base_q_witness`]
/// (`m + n` when `N = 0`).
pub fn base_q_witness_bound(nf: &SolvableNormalForm, q: u32) -> u64 {
    let t_part = nf.m + nf.n;
    if nf.big_n.is_zero() {
        t_part
    } else {
        t_part + 2 * u64::from(q) * (floor_log(&nf.big_n, q) + 1)
    }
}

/// Word `a^{r_1} t a^{r_2} t … a^{r_k} t a^{d_k p} t^{-k}` equal to `a^N` in
/// `BS(p,q)`, `p < q`, from `N = d_1 q + r_1`, `d_1 p = d_2 q + r_2`, …
/// stopping once `d_k p < q`. Negative `N` uses `a^-1` throughout.
pub fn horocyclic_witness(n: &BigInt, params: GroupParams) -> Result<Word, MetricsError> {
    if params.p() >= params.q() {
        return Err(MetricsError::NeedsStrictInequality(params));
    }
    let a = if n.is_negative() {
        Letter::AInv
    } else {
        Letter::A
    };
    let p = BigInt::from(params.p());
    let q = BigInt::from(params.q());
    let mut w = Word::new();
    let mut current = n.abs();
    let mut k = 0usize;
    while current >= q {
        let (d, r) = current.div_rem(&q);
        w.push_power(a, r.to_usize().expect("residue below q"));
        w.push(Letter::T);
        current = d * &p;
        k += 1;
    }
    w.push_power(a, current.to_usize().expect("final power below q"));
    w.push_power(Letter::TInv, k);
    Ok(w)
}

/// Length bound `(q + 1)·log_{q/p}|N| + q` for [`horocyclic_witness`].
pub fn horocyclic_witness_bound(n: &BigInt, params: GroupParams) -> f64 {
    if n.is_zero() {
        return 0.0;
    }
    let p = f64::from(params.p());
    let q = f64::from(params.q());
    (q + 1.0) * ln_abs(n) / (q / p).ln() + q
}

impl SolvableNormalForm {
    /// Converts a Britton form of a `BS(1,q)` element.
    pub fn from_normal_form(nf: &NormalForm) -> Result<SolvableNormalForm, MetricsError> {
        let params = nf.params();
        if !params.is_solvable() || params.q() < 2 {
            return Err(MetricsError::NotSolvable(params));
        }
        let q = params.q();
        let mut out = SolvableNormalForm::identity();
        for s in nf.syllables() {
            out.mul_a_power(&BigInt::from(s.a_exponent), q);
            let t = if s.t_sign == crate::letter::Sign::Pos {
                Letter::T
            } else {
                Letter::TInv
            };
            out.mul_letter(t, q);
        }
        out.mul_a_power(nf.tail(), q);
        Ok(out)
    }
}
