//! Hensel lifting of mod-p factorizations to mod p^N.

use super::modp::ModPoly;
use super::poly::IntPoly;
use super::{is_prime_u64, ExactError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Coefficientwise reduction into [0, m).
fn reduce_mod(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::from_coeffs(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Symmetric representative in (-m/2, m/2].
pub fn symmetric_mod(f: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m / 2;
    IntPoly::from_coeffs(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Lift a two-factor congruence f = g0*h0 (mod p) to f = g*h (mod p^N) with
/// g = g0, h = h0 (mod p).
///
/// Factors are returned monic with coefficients in [0, p^N); the leading
/// coefficient of f stays in front as a unit. Requires lc(f) invertible mod p
/// and g0, h0 coprime mod p.
pub fn hensel_lift(
    f: &IntPoly,
    p: u64,
    g0: &IntPoly,
    h0: &IntPoly,
    precision: u32,
) -> Result<(IntPoly, IntPoly), ExactError> {
    if !is_prime_u64(p) {
        return Err(ExactError::NotPrime(p));
    }
    let lifted = lift_factorization(f, p, &[g0.clone(), h0.clone()], precision)?;
    let mut it = lifted.into_iter();
    Ok((it.next().unwrap(), it.next().unwrap()))
}

/// Simultaneous lift of a multi-factor congruence
/// f = lc(f) * prod g_i (mod p), all g_i monic and pairwise coprime mod p,
/// to the same shape mod p^precision. Returned factors are monic; the unit
/// lc(f) stays in front.
pub fn lift_factorization(
    f: &IntPoly,
    p: u64,
    factors_mod_p: &[IntPoly],
    precision: u32,
) -> Result<Vec<IntPoly>, ExactError> {
    let pb = BigInt::from(p);
    let fp = ModPoly::from_int_poly(f, p);
    if fp.degree() != f.degree() {
        return Err(ExactError::LeadingCoeffVanishes(p));
    }
    let lc = f.leading();
    let lc_inv_mod_p = {
        // Invert lc mod p via the extended gcd on integers.
        let a = lc.mod_floor(&pb);
        let e = a.extended_gcd(&pb);
        if !e.gcd.is_one() {
            return Err(ExactError::LeadingCoeffVanishes(p));
        }
        e.x.mod_floor(&pb)
    };
    let lc_inv_u64 = lc_inv_mod_p.to_u64().expect("residue fits u64");

    // Normalize the given factors to monic residues and check the congruence
    // and pairwise coprimality.
    let monic_factors: Vec<ModPoly> = factors_mod_p
        .iter()
        .map(|g| ModPoly::from_int_poly(g, p).monic())
        .collect();
    let mut prod = ModPoly::from_int_poly(&IntPoly::constant(lc.clone()), p);
    for g in &monic_factors {
        prod = prod.mul(g);
    }
    if prod != fp {
        return Err(ExactError::NotAFactorizationModP(p));
    }
    for i in 0..monic_factors.len() {
        for j in (i + 1)..monic_factors.len() {
            let g = monic_factors[i].gcd(&monic_factors[j]);
            if g.degree() != Some(0) {
                return Err(ExactError::FactorsNotCoprime(p));
            }
        }
    }

    // CRT idempotents mod p: delta_i * prod_{j != i} g_j = 1 (mod g_i, p).
    let k = monic_factors.len();
    let mut cofactors = Vec::with_capacity(k);
    let mut deltas = Vec::with_capacity(k);
    for i in 0..k {
        let mut co = ModPoly::one(p);
        for (j, g) in monic_factors.iter().enumerate() {
            if j != i {
                co = co.mul(g);
            }
        }
        let (gcd, _, v) = monic_factors[i].gcd_ext(&co);
        if gcd.degree() != Some(0) {
            return Err(ExactError::FactorsNotCoprime(p));
        }
        // gcd_ext returns monic gcd = 1, so v * co = 1 mod g_i.
        deltas.push(v.rem(&monic_factors[i]));
        cofactors.push(co);
    }

    // Linear lifting, one power of p at a time.
    let mut lifted: Vec<IntPoly> = monic_factors.iter().map(|g| g.to_int_poly()).collect();
    let mut modulus = pb.clone();
    for _ in 1..precision {
        let next_modulus = &modulus * &pb;
        // error = (f - lc * prod lifted) / modulus, reduced mod p
        let mut prod_lifted = IntPoly::constant(lc.clone());
        for g in &lifted {
            prod_lifted = &prod_lifted * g;
        }
        let diff = f - &prod_lifted;
        let err_coeffs: Vec<BigInt> = diff
            .coeffs()
            .iter()
            .map(|c| {
                let (q, r) = c.div_rem(&modulus);
                debug_assert!(r.is_zero(), "lift invariant broken");
                q
            })
            .collect();
        let err = ModPoly::from_int_poly(
            &IntPoly::from_coeffs(err_coeffs),
            p,
        );
        // err is lc * sum_i c_i * cofactor_i with c_i = delta_i*err*lc^-1 mod g_i.
        let err_unit = err.scale(lc_inv_u64);
        for i in 0..k {
            let gi = ModPoly::from_int_poly(&lifted[i], p);
            let ci = deltas[i].mul(&err_unit).rem(&gi);
            let correction = ci.to_int_poly().scale(&modulus);
            lifted[i] = reduce_mod(&(&lifted[i] + &correction), &next_modulus);
        }
        modulus = next_modulus;
    }
    Ok(lifted)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn lift_t2_minus_t_plus_2_mod_16() {
        // The monic lift of t*(t+1) is unique mod 16; brute-force it as an
        // oracle and compare.
        let f = ip(&[2, -1, 1]);
        let mut expected = None;
        for a in 0..16i64 {
            for b in 0..16i64 {
                if (a + b) % 16 == 15 && (a * b) % 16 == 2 && a % 2 == 0 && b % 2 == 1 {
                    expected = Some((a, b));
                }
            }
        }
        let (a, b) = expected.expect("oracle finds the lift");
        assert_eq!((a, b), (10, 5));

        let (g, h) = hensel_lift(&f, 2, &ip(&[0, 1]), &ip(&[1, 1]), 4).unwrap();
        assert_eq!(g, ip(&[a, 1]));
        assert_eq!(h, ip(&[b, 1]));
        let m = BigInt::from(16);
        assert_eq!(reduce_mod(&(&g * &h), &m), reduce_mod(&f, &m));
    }

    #[test]
    fn exact_factorization_is_fixed() {
        // t^2 - 1 = (t-1)(t+1) exactly, so the lift mod 9 is the reduction
        // of the true factors.
        let f = ip(&[-1, 0, 1]);
        let (g, h) = hensel_lift(&f, 3, &ip(&[-1, 1]), &ip(&[1, 1]), 2).unwrap();
        assert_eq!(symmetric_mod(&g, &BigInt::from(9)), ip(&[-1, 1]));
        assert_eq!(symmetric_mod(&h, &BigInt::from(9)), ip(&[1, 1]));
    }

    #[test]
    fn shared_root_rejected() {
        // f = (t-1)(t+2), but the factors collide mod 3.
        let f = ip(&[-2, 1, 1]);
        let err = hensel_lift(&f, 3, &ip(&[-1, 1]), &ip(&[2, 1]), 3).unwrap_err();
        assert_eq!(err, ExactError::FactorsNotCoprime(3));
    }

    #[test]
    fn multifactor_congruence_holds() {
        let f = ip(&[6, 11, 6, 1]); // (t+1)(t+2)(t+3)
        let lifted = lift_factorization(
            &f,
            5,
            &[ip(&[1, 1]), ip(&[2, 1]), ip(&[3, 1])],
            6,
        )
        .unwrap();
        let m = BigInt::from(5u64.pow(6));
        let mut prod = IntPoly::one();
        for g in &lifted {
            prod = &prod * g;
        }
        assert_eq!(reduce_mod(&prod, &m), reduce_mod(&f, &m));
    }
}
