//! Rational generating functions: exact power-series expansion and the
//! dominant singularity that fixes the exponential growth rate.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use super::poly::IntPolynomial;
use super::roots::{complex_roots, real_roots, RootError, ROOT_TOLERANCE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("no closed-form growth series is available for BS({0},{0}) (only p = 2, 3)")]
    Unsupported(u32),
    #[error("denominator vanishes at 0, so there is no power series")]
    ZeroConstantTerm,
    #[error("coefficient {index} is not an integer")]
    NonIntegral { index: usize },
    #[error("the function has no pole (denominator is constant after cancellation)")]
    NoPole,
    #[error(transparent)]
    Root(#[from] RootError),
}

/// `numerator(z) / denominator(z)` with integer polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    pub numerator: IntPolynomial,
    pub denominator: IntPolynomial,
}

impl RationalSeries {
    pub fn new(numerator: IntPolynomial, denominator: IntPolynomial) -> RationalSeries {
        RationalSeries {
            numerator,
            denominator,
        }
    }

    /// Divides out `gcd(numerator, denominator)`.
    pub fn reduced(&self) -> RationalSeries {
        let g = self.numerator.gcd(&self.denominator);
        if g.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let num = self.numerator.div_exact(&g).expect("gcd divides");
        let den = self.denominator.div_exact(&g).expect("gcd divides");
        // scale both by the same positive factor so they stay integral
        let lcm = num
            .iter()
            .chain(den.iter())
            .fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let scale = |v: &[num_rational::BigRational]| {
            IntPolynomial::new(
                v.iter()
                    .map(|c| {
                        (c * num_rational::BigRational::from_integer(lcm.clone())).to_integer()
                    })
                    .collect(),
            )
        };
        RationalSeries::new(scale(&num), scale(&den))
    }
}

/// Spherical growth series of `BS(p,p)` for `p = 2, 3`:
///
/// * `p = 2`: `(1 - z - 2z³) / ((1 - z)(1 - 2z)²)`
/// * `p = 3`: `(1 + z)²(1 - 2z)(1 + z + 2z³) / ((1 - z)(1 - z - 4z²)(1 - z - 2z² - 2z³))`
///
/// Both are stored expanded.
pub fn edjvet_johnson_series(p: u32) -> Result<RationalSeries, SeriesError> {
    let poly = IntPolynomial::from_i64;
    match p {
        2 => {
            let one_minus_2z = poly(&[1, -2]);
            let den = &(&poly(&[1, -1]) * &one_minus_2z) * &one_minus_2z;
            Ok(RationalSeries::new(poly(&[1, -1, 0, -2]), den))
        }
        3 => {
            let one_plus_z = poly(&[1, 1]);
            let num = &(&(&one_plus_z * &one_plus_z) * &poly(&[1, -2])) * &poly(&[1, 1, 0, 2]);
            let den = &(&poly(&[1, -1]) * &poly(&[1, -1, -4])) * &poly(&[1, -1, -2, -2]);
            Ok(RationalSeries::new(num, den))
        }
        _ => Err(SeriesError::Unsupported(p)),
    }
}

/// Coefficients `c_0..=c_n` of the expansion at 0, from
/// `Σ_j d_j c_{k-j} = a_k`. Exact; fails if a coefficient is not an integer.
pub fn series_coefficients(rs: &RationalSeries, n: usize) -> Result<Vec<BigInt>, SeriesError> {
    let den = rs.denominator.coefficients();
    let d0 = match den.first() {
        Some(d) if !d.is_zero() => d.clone(),
        _ => return Err(SeriesError::ZeroConstantTerm),
    };
    let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = rs.numerator.coefficient(k);
        for (j, dj) in den.iter().enumerate().skip(1).take(k) {
            acc -= dj * &out[k - j];
        }
        let (q, r) = acc.div_rem(&d0);
        if !r.is_zero() {
            return Err(SeriesError::NonIntegral { index: k });
        }
        out.push(q);
    }
    Ok(out)
}

/// Smallest-modulus pole of a rational function.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DominantSingularity {
    /// The pole itself (real part and imaginary part).
    pub re: f64,
    pub im: f64,
    /// Its modulus, the radius of convergence.
    pub radius: f64,
    /// `1 / radius`, the exponential growth rate of the coefficients.
    pub rate: f64,
}

/// Dominant singularity after cancelling common factors.
///
/// Real roots of the denominator are isolated exactly (Sturm) and refined
/// to `1e-13`; all roots are also located in double precision (Aberth) to
/// screen complex poles of smaller modulus.
pub fn dominant_singularity(rs: &RationalSeries) -> Result<DominantSingularity, SeriesError> {
    let reduced = rs.reduced();
    let den = reduced.denominator.squarefree();
    if den.degree().unwrap_or(0) == 0 {
        return Err(SeriesError::NoPole);
    }
    let real = real_roots(&den, ROOT_TOLERANCE)?;
    let best_real = real
        .iter()
        .copied()
        .min_by(|a, b| a.abs().total_cmp(&b.abs()));
    let best_complex = complex_roots(&den)
        .into_iter()
        .filter(|z| z.im.abs() > 1e-9 * z.norm().max(1.0))
        .min_by(|a, b| a.norm().total_cmp(&b.norm()));
    let pole = match (best_real, best_complex) {
        (Some(r), Some(z)) if z.norm() < r.abs() * (1.0 - 1e-9) => z,
        (Some(r), _) => Complex64::new(r, 0.0),
        (None, Some(z)) => z,
        (None, None) => return Err(SeriesError::NoPole),
    };
    let radius = pole.norm();
    Ok(DominantSingularity {
        re: pole.re,
        im: pole.im,
        radius,
        rate: 1.0 / radius,
    })
}

/// Ball series `B(z) = S(z) / (1 - z)` from a spherical series.
pub fn ball_series(spherical: &RationalSeries) -> RationalSeries {
    RationalSeries::new(
        spherical.numerator.clone(),
        &spherical.denominator * &IntPolynomial::from_i64(&[1, -1]),
    )
}

impl RationalSeries {
    pub fn is_proper_series(&self) -> bool {
        self.denominator
            .coefficients()
            .first()
            .is_some_and(|d| !d.is_zero() && d.abs() == BigInt::from(1))
    }
}
