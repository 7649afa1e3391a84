//! Real root isolation by Sturm sequences with exact dyadic evaluation, and
//! a floating-point Aberth iteration for complex roots.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::poly::{rat_rem, trim, IntPolynomial};

/// Default absolute tolerance for refined real roots.
pub const ROOT_TOLERANCE: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("polynomial {0} has no real root (no sign change found)")]
    NoSignChange(String),
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
}

/// A dyadic rational `m / 2^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Dyadic {
    m: BigInt,
    k: u32,
}

impl Dyadic {
    fn int(v: BigInt) -> Dyadic {
        Dyadic { m: v, k: 0 }
    }

    fn midpoint(a: &Dyadic, b: &Dyadic) -> Dyadic {
        let k = a.k.max(b.k);
        let m = (&a.m << (k - a.k)) + (&b.m << (k - b.k));
        Dyadic { m, k: k + 1 }.reduced()
    }

    fn reduced(mut self) -> Dyadic {
        while self.k > 0 && !self.m.bit(0) {
            self.m >>= 1;
            self.k -= 1;
        }
        self
    }

    fn to_f64(&self) -> f64 {
        let r = BigRational::new(self.m.clone(), BigInt::one() << self.k);
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn width(a: &Dyadic, b: &Dyadic) -> f64 {
        let k = a.k.max(b.k);
        let diff = (&b.m << (k - b.k)) - (&a.m << (k - a.k));
        BigRational::new(diff, BigInt::one() << k)
            .to_f64()
            .unwrap_or(f64::INFINITY)
    }
}

/// Exact sign of `P(m / 2^k)`.
fn sign_at(coeffs: &[BigInt], x: &Dyadic) -> i32 {
    let Some(d) = coeffs.len().checked_sub(1) else {
        return 0;
    };
    // P(m/2^k)·2^{kd} by Horner: acc_i = acc_{i+1}·m + a_i·2^{k(d-i)}
    let mut acc = coeffs[d].clone();
    for i in (0..d).rev() {
        acc = acc * &x.m + (&coeffs[i] << (x.k as usize * (d - i)));
    }
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Scales rational coefficients to integers by a positive factor.
fn positive_integer_multiple(coeffs: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|c| c / &g).collect()
    }
}

/// Sturm sequence of a squarefree polynomial.
struct Sturm {
    chain: Vec<Vec<BigInt>>,
}

impl Sturm {
    fn new(p: &IntPolynomial) -> Sturm {
        let mut chain = vec![
            p.coefficients().to_vec(),
            p.derivative().coefficients().to_vec(),
        ];
        let mut a = p.to_rational();
        let mut b = p.derivative().to_rational();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let mut r: Vec<BigRational> = rat_rem(&a, &b).into_iter().map(|c| -c).collect();
            trim(&mut r);
            if r.is_empty() {
                break;
            }
            chain.push(positive_integer_multiple(&r));
            a = b;
            b = r;
        }
        Sturm { chain }
    }

    fn variations(&self, x: &Dyadic) -> usize {
        let mut count = 0;
        let mut last = 0;
        for s in self.chain.iter().map(|c| sign_at(c, x)) {
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Distinct roots in `(a, b]`.
    fn count(&self, a: &Dyadic, b: &Dyadic) -> usize {
        self.variations(a) - self.variations(b)
    }
}

/// Power of two at least the Cauchy bound `1 + max|a_i / a_n|`.
fn root_bound(p: &IntPolynomial) -> Dyadic {
    let lead = p.leading().expect("nonzero").abs();
    let max = p.max_abs_coefficient();
    let ratio = (&max + &lead - BigInt::one()) / &lead + BigInt::one();
    let bits = ratio.bits();
    Dyadic::int(BigInt::one() << bits)
}

/// Shrinks `(a, b]`, holding exactly one simple root, below `tol`.
fn refine(coeffs: &[BigInt], mut a: Dyadic, mut b: Dyadic, tol: f64) -> f64 {
    let sb = sign_at(coeffs, &b);
    if sb == 0 {
        return b.to_f64();
    }
    while Dyadic::width(&a, &b) > tol {
        let mid = Dyadic::midpoint(&a, &b);
        match sign_at(coeffs, &mid) {
            0 => return mid.to_f64(),
            s if s == sb => b = mid,
            _ => a = mid,
        }
    }
    Dyadic::midpoint(&a, &b).to_f64()
}

/// All distinct real roots in increasing order, each to absolute `tol`.
pub fn real_roots(p: &IntPolynomial, tol: f64) -> Result<Vec<f64>, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let sf = p.squarefree();
    let sturm = Sturm::new(&sf);
    let bound = root_bound(&sf);
    let lo = Dyadic::int(-bound.m.clone());
    let mut stack = vec![(lo, bound)];
    let mut isolated = Vec::new();
    while let Some((a, b)) = stack.pop() {
        match sturm.count(&a, &b) {
            0 => {}
            1 => isolated.push((a, b)),
            _ => {
                let mid = Dyadic::midpoint(&a, &b);
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }
    let mut roots: Vec<f64> = isolated
        .into_iter()
        .map(|(a, b)| refine(sf.coefficients(), a, b, tol))
        .collect();
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

/// Largest real root to absolute `tol`.
///
/// The search interval is `(-B, B]` with `B` a power of two above the
/// Cauchy bound; Sturm counts keep the upper half whenever it still holds a
/// root, then the isolating interval is refined by exact sign bisection.
pub fn largest_real_root_tol(p: &IntPolynomial, tol: f64) -> Result<f64, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let sf = p.squarefree();
    if sf.degree() == Some(0) {
        return Err(RootError::NoSignChange(p.to_string()));
    }
    let sturm = Sturm::new(&sf);
    let mut hi = root_bound(&sf);
    let mut lo = Dyadic::int(-hi.m.clone());
    if sturm.count(&lo, &hi) == 0 {
        return Err(RootError::NoSignChange(p.to_string()));
    }
    while sturm.count(&lo, &hi) > 1 {
        let mid = Dyadic::midpoint(&lo, &hi);
        if sturm.count(&mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(refine(sf.coefficients(), lo, hi, tol))
}

pub fn largest_real_root(p: &IntPolynomial) -> Result<f64, RootError> {
    largest_real_root_tol(p, ROOT_TOLERANCE)
}

/// All complex roots (with multiplicity) by Aberth–Ehrlich iteration in
/// double precision.
pub fn complex_roots(p: &IntPolynomial) -> Vec<Complex64> {
    let Some(n) = p.degree() else {
        return Vec::new();
    };
    if n == 0 {
        return Vec::new();
    }
    let lead = p.leading().unwrap().to_f64().unwrap();
    let c: Vec<f64> = p
        .coefficients()
        .iter()
        .map(|x| x.to_f64().unwrap() / lead)
        .collect();
    // Fujiwara-type radius for the starting circle
    let radius = (0..n)
        .map(|i| c[i].abs().powf(1.0 / (n - i) as f64))
        .fold(0.0, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    let eval = |x: Complex64| {
        let mut v = Complex64::new(c[n], 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for i in (0..n).rev() {
            d = d * x + v;
            v = v * x + c[i];
        }
        (v, d)
    };
    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (v, d) = eval(z[k]);
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = v / d;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}
