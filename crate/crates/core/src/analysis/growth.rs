//! Closed-form growth polynomials whose largest root equals the spectral
//! radius of the balanced normal-form automaton.

use num_bigint::BigInt;
use thiserror::Error;

use super::poly::IntPolynomial;
use crate::params::GroupParams;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrowthPolynomialError {
    #[error("growth polynomial needs 2 <= p <= q, got {0}")]
    Unsupported(GroupParams),
}

/// `P_pq` for `2 <= p <= q`, with `k = ⌊p/2⌋` and `ℓ = ⌊q/2⌋`.
///
/// For `p >= 4`:
/// `x^{ℓ+1} - x^ℓ - 2(x^{ℓ-1} + … + x^{ℓ-k+1}) - C_k x^{ℓ-k}
///  - 2(x^{ℓ-1} + … + x) - C_ℓ`,
/// where `C_k` is 1 for even `p` and 2 for odd `p` (likewise `C_ℓ` for
/// `q`). Overlapping powers from the two sums add up. Small `p` use the
/// special forms `P_22 = x²-x-2`, `P_23 = x²-x-3`, `P_33 = x²-x-4`, and
/// for `q >= 4`:
/// `P_2q = x^{ℓ+1} - x^ℓ - x^{ℓ-1} - 2(x^{ℓ-1} + … + x) - C_ℓ`,
/// `P_3q = x^{ℓ+1} - x^ℓ - 2x^{ℓ-1} - 2(x^{ℓ-1} + … + x) - C_ℓ`.
pub fn growth_polynomial(params: GroupParams) -> Result<IntPolynomial, GrowthPolynomialError> {
    let (p, q) = (params.p() as usize, params.q() as usize);
    if p < 2 {
        return Err(GrowthPolynomialError::Unsupported(params));
    }
    let special = |c: i64| IntPolynomial::from_i64(&[c, -1, 1]);
    match (p, q) {
        (2, 2) => return Ok(special(-2)),
        (2, 3) => return Ok(special(-3)),
        (3, 3) => return Ok(special(-4)),
        _ => {}
    }
    let l = q / 2;
    let k = p / 2;
    let c_l: i64 = if q % 2 == 0 { 1 } else { 2 };
    let c_k: i64 = if p % 2 == 0 { 1 } else { 2 };

    let mut c = vec![0i64; l + 2];
    c[l + 1] += 1;
    c[l] -= 1;
    // -2(x^{l-1} + ... + x)
    for coeff in &mut c[1..l] {
        *coeff -= 2;
    }
    c[0] -= c_l;
    match p {
        2 => c[l - 1] -= 1,
        3 => c[l - 1] -= 2,
        _ => {
            // -2(x^{l-1} + ... + x^{l-k+1}) - C_k x^{l-k}
            for coeff in &mut c[(l + 1 - k)..l] {
                *coeff -= 2;
            }
            c[l - k] -= c_k;
        }
    }
    Ok(IntPolynomial::new(
        c.into_iter().map(BigInt::from).collect(),
    ))
}
