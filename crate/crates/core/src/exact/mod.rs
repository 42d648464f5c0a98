//! Exact arithmetic kernel: arbitrary-precision rationals, integer
//! polynomials, real-root counting, and polynomial factorization mod p and
//! over Z.
//!
//! Every other module is built on top of this one. All arithmetic is exact;
//! nothing in this module (or the crate) rounds.

pub mod factor;
pub mod hensel;
pub mod modp;
pub mod padic;
pub mod poly;
pub mod sturm;

pub use factor::{factor_over_z, IntFactorization, DEGREE_CAP};
pub use hensel::hensel_lift;
pub use modp::{factor_mod_p, ModPFactorization, ModPoly};
pub use poly::IntPoly;
pub use sturm::{count_real_roots, RealRootCount, SturmChain};

use thiserror::Error;

/// Exact rational number, always in lowest terms with positive denominator.
///
/// Backed by `num_rational::BigRational`, which maintains exactly those
/// invariants and normalizes eagerly after every operation.
pub type BigRat = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("leading coefficient vanishes mod {0}")]
    LeadingCoeffVanishes(u64),
    #[error("factors are not coprime mod {0}")]
    FactorsNotCoprime(u64),
    #[error("given factors do not multiply to the input mod {0}")]
    NotAFactorizationModP(u64),
    #[error("degree {degree} exceeds the factorization cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
}

/// Deterministic primality test for u64 (Miller-Rabin on a fixed base set
/// that is exact for the full 64-bit range).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let pow = |mut b: u64, mut e: u64| -> u64 {
        let mut acc = 1u128;
        let m = n as u128;
        let mut bb = b as u128 % m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * bb % m;
            }
            bb = bb * bb % m;
            e >>= 1;
        }
        b = acc as u64;
        b
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = pow(x, 2);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small_values() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime_u64(2_147_483_647)); // 2^31 - 1
        assert!(!is_prime_u64(2_147_483_649));
    }
}
