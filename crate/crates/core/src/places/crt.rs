use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Solves `x ≡ r_i (mod m_i)` for pairwise coprime moduli `m_i >= 1`.
///
/// Returns `(x, M)` with `M = ∏ m_i` and `0 <= x < M`. No congruences gives
/// `(0, 1)`.
pub fn crt(congruences: &[(BigInt, BigInt)]) -> Result<(BigInt, BigInt)> {
    let mut x = BigInt::zero();
    let mut modulus = BigInt::one();
    for (residue, m) in congruences {
        if m <= &BigInt::zero() {
            return Err(Error::InvalidInput(format!("modulus {m} must be positive")));
        }
        let ext = modulus.extended_gcd(m);
        if !ext.gcd.is_one() {
            return Err(Error::InvalidInput(format!(
                "moduli {modulus} and {m} are not coprime"
            )));
        }
        // x + modulus * t ≡ residue (mod m), t = (residue - x) * modulus^-1
        let t = ((residue - &x) * ext.x).mod_floor(m);
        x += &modulus * t;
        modulus *= m;
        x = x.mod_floor(&modulus);
    }
    Ok((x, modulus))
}
