//! Small p-adic integer utilities: exact valuations, square roots and
//! simple-root lifting mod p^N. Everything works on plain `BigInt`
//! residues, no extension arithmetic.

use super::poly::IntPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// v_p(n) for nonzero n; None for n = 0 (valuation infinity).
pub fn val(n: &BigInt, p: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0u64;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

/// v_p of a rational num/den as i64 (den > 0).
pub fn val_rat(num: &BigInt, den: &BigInt, p: u64) -> Option<i64> {
    let vn = val(num, p)? as i64;
    let vd = val(den, p).expect("nonzero denominator") as i64;
    Some(vn - vd)
}

pub fn pow_p(p: u64, n: u32) -> BigInt {
    BigInt::from(p).pow(n)
}

fn inv_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "non-invertible residue");
    e.x.mod_floor(m)
}

/// Square root of a unit mod p^n, when it exists.
///
/// p odd: needs a to be a quadratic residue mod p. p = 2: needs a = 1 mod 8
/// (for n >= 3). Returns a root r with r^2 = a mod p^n.
pub fn sqrt_unit(a: &BigInt, p: u64, n: u32) -> Option<BigInt> {
    let modulus = pow_p(p, n);
    let a = a.mod_floor(&modulus);
    assert!(!(&a).mod_floor(&BigInt::from(p)).is_zero(), "unit expected");
    if p == 2 {
        if n == 1 {
            return Some(BigInt::one());
        }
        if n == 2 {
            return if (&a).mod_floor(&BigInt::from(4)) == BigInt::one() {
                Some(BigInt::one())
            } else {
                None
            };
        }
        if (&a).mod_floor(&BigInt::from(8)) != BigInt::one() {
            return None;
        }
        // Lift one bit at a time: with r^2 = a mod 2^k, adding 2^(k-1)
        // flips the 2^k bit of r^2 (k >= 3), fixing r^2 = a mod 2^(k+1).
        let mut r = BigInt::one();
        for k in 3..n {
            let m = pow_p(2, k + 1);
            if !(&r * &r - &a).mod_floor(&m).is_zero() {
                r += pow_p(2, k - 1);
            }
        }
        return Some(r.mod_floor(&modulus));
    }
    // Odd p: find a root mod p (deterministic scan is fine at the prime
    // sizes this crate meets), then Newton-lift.
    let pb = BigInt::from(p);
    let a0 = (&a).mod_floor(&pb);
    let mut r0: Option<BigInt> = None;
    let mut x = BigInt::zero();
    while x < pb {
        if (&x * &x - &a0).mod_floor(&pb).is_zero() {
            r0 = Some(x.clone());
            break;
        }
        x += 1;
    }
    let mut r = r0?;
    if r.is_zero() {
        return None; // a = 0 mod p contradicts unit
    }
    let mut prec = 1u32;
    while prec < n {
        prec = (prec * 2).min(n);
        let m = pow_p(p, prec);
        // Newton: r <- (r + a/r)/2
        let inv_r = inv_mod(&r, &m);
        let two_inv = inv_mod(&BigInt::from(2), &m);
        r = ((&r + &a * inv_r) * two_inv).mod_floor(&m);
    }
    Some(r)
}

/// Square root of an arbitrary nonzero a in Z_p to precision p^n, when a is
/// a square: a = p^(2w) * unit square. Returns (root, valuation w).
pub fn sqrt(a: &BigInt, p: u64, n: u32) -> Option<(BigInt, u64)> {
    let v = val(a, p)?;
    if v % 2 != 0 {
        return None;
    }
    let w = v / 2;
    let unit = a / pow_p(p, v as u32);
    let r = sqrt_unit(&unit, p, n)?;
    Some((r * pow_p(p, w as u32), w))
}

/// Lift a simple root r0 of f mod p to a root of f mod p^n (Newton).
/// Requires f'(r0) nonzero mod p.
pub fn lift_simple_root(f: &IntPoly, r0: &BigInt, p: u64, n: u32) -> BigInt {
    let pb = BigInt::from(p);
    debug_assert!(f.eval(r0).mod_floor(&pb).is_zero(), "not a root mod p");
    let df = f.derivative();
    debug_assert!(
        !df.eval(r0).mod_floor(&pb).is_zero(),
        "root is not simple mod p"
    );
    let mut r = r0.mod_floor(&pb);
    let mut prec = 1u32;
    while prec < n {
        prec = (prec * 2).min(n);
        let m = pow_p(p, prec);
        let fr = f.eval(&r).mod_floor(&m);
        let dfr = df.eval(&r).mod_floor(&m);
        let inv = inv_mod(&dfr, &m);
        r = (&r - fr * inv).mod_floor(&m);
    }
    r
}

/// Is the nonzero p-adic number a (given exactly as an integer) a square in
/// Q_p?
pub fn is_square(a: &BigInt, p: u64) -> bool {
    let v = match val(a, p) {
        None => return true, // zero
        Some(v) => v,
    };
    if v % 2 == 1 {
        return false;
    }
    let unit = a / pow_p(p, v as u32);
    if p == 2 {
        unit.mod_floor(&BigInt::from(8)) == BigInt::one()
    } else {
        // Euler criterion mod p.
        let pb = BigInt::from(p);
        let e = (&pb - 1) / 2;
        unit.modpow(&e, &pb) == BigInt::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(val(&BigInt::from(48), 2), Some(4));
        assert_eq!(val(&BigInt::from(-45), 3), Some(2));
        assert_eq!(val(&BigInt::from(7), 5), Some(0));
        assert_eq!(val(&BigInt::zero(), 3), None);
    }

    #[test]
    fn sqrt_mod_powers() {
        // 2 is a QR mod 7: 3^2 = 2 mod 7; check lifting.
        let r = sqrt_unit(&BigInt::from(2), 7, 6).unwrap();
        let m = pow_p(7, 6);
        assert_eq!((&r * &r).mod_floor(&m), BigInt::from(2));
        // 17 = 1 mod 8 is a 2-adic square.
        let r = sqrt_unit(&BigInt::from(17), 2, 10).unwrap();
        let m = pow_p(2, 10);
        assert_eq!((&r * &r).mod_floor(&m), BigInt::from(17));
        assert!(sqrt_unit(&BigInt::from(3), 2, 5).is_none());
        assert!(sqrt_unit(&BigInt::from(3), 7, 5).is_none());
    }

    #[test]
    fn square_detection() {
        assert!(is_square(&BigInt::from(4), 2)); // 4 = 2^2
        assert!(!is_square(&BigInt::from(8), 2)); // odd valuation
        assert!(is_square(&BigInt::from(-4), 5)); // -4 = 1 mod 5, QR
        assert!(!is_square(&BigInt::from(-4), 3)); // -1 not a QR mod 3
    }

    #[test]
    fn newton_root_lift() {
        // f = t^2 - t + 2 has a root = 0 mod 2.
        let f = IntPoly::from_i64(&[2, -1, 1]);
        let r = lift_simple_root(&f, &BigInt::zero(), 2, 12);
        let m = pow_p(2, 12);
        assert_eq!(f.eval(&r).mod_floor(&m), BigInt::zero());
        assert_eq!(val(&r, 2), Some(1)); // the valuation-1 root
    }
}
