//! Univariate polynomial arithmetic and factorization over the prime field
//! F_p.
//!
//! Factorization runs squarefree decomposition, then distinct-degree
//! splitting, then equal-degree splitting. The equal-degree stage draws its
//! splitting elements from a fixed enumeration of F_p[t] instead of an RNG,
//! so the output (and everything downstream of it) is bit-reproducible.

use super::poly::IntPoly;
use super::{is_prime_u64, ExactError};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use std::cmp::Ordering;

/// Dense polynomial over F_p, coefficients reduced to [0, p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPoly {
    pub p: u64,
    coeffs: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    // p prime, a nonzero mod p
    powmod_u64(a, p - 2, p)
}

impl ModPoly {
    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn zero(p: u64) -> Self {
        ModPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        ModPoly {
            p,
            coeffs: vec![1],
        }
    }

    pub fn from_coeffs(p: u64, coeffs: Vec<u64>) -> Self {
        let mut poly = ModPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        poly.normalize();
        poly
    }

    /// Reduce an integer polynomial mod p.
    pub fn from_int_poly(f: &IntPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| {
                let mut r = c % &pb;
                if r.is_negative() {
                    r += &pb;
                }
                r.to_u64().expect("reduced residue fits u64")
            })
            .collect();
        ModPoly::from_coeffs(p, coeffs)
    }

    /// Lift to Z[t] with coefficients in [0, p).
    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, rhs: &ModPoly) -> ModPoly {
        let p = self.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) + rhs.coeff(i)) % p)
            .collect();
        ModPoly::from_coeffs(p, coeffs)
    }

    pub fn sub(&self, rhs: &ModPoly) -> ModPoly {
        let p = self.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) + p - rhs.coeff(i) % p) % p)
            .collect();
        ModPoly::from_coeffs(p, coeffs)
    }

    pub fn mul(&self, rhs: &ModPoly) -> ModPoly {
        if self.is_zero() || rhs.is_zero() {
            return ModPoly::zero(self.p);
        }
        let p = self.p;
        let mut coeffs = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + mulmod(a, b, p)) % p;
            }
        }
        ModPoly::from_coeffs(p, coeffs)
    }

    pub fn scale(&self, c: u64) -> ModPoly {
        let p = self.p;
        ModPoly::from_coeffs(p, self.coeffs.iter().map(|&a| mulmod(a, c, p)).collect())
    }

    pub fn monic(&self) -> ModPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(invmod(self.leading(), self.p))
    }

    pub fn divrem(&self, b: &ModPoly) -> (ModPoly, ModPoly) {
        assert!(!b.is_zero(), "division by zero polynomial");
        let p = self.p;
        let db = b.deg();
        let inv_lb = invmod(b.leading(), p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; self.coeffs.len().saturating_sub(db)];
        while r.len() > db {
            let dr = r.len() - 1;
            let c = mulmod(*r.last().unwrap(), inv_lb, p);
            if c != 0 {
                q[dr - db] = c;
                for (i, &bc) in b.coeffs.iter().enumerate() {
                    let idx = dr - db + i;
                    r[idx] = (r[idx] + p - mulmod(c, bc, p)) % p;
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
            if r.len() <= db {
                break;
            }
        }
        (ModPoly::from_coeffs(p, q), ModPoly::from_coeffs(p, r))
    }

    pub fn rem(&self, b: &ModPoly) -> ModPoly {
        self.divrem(b).1
    }

    pub fn gcd(&self, other: &ModPoly) -> ModPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (g, u, v) monic with u*self + v*other = g.
    pub fn gcd_ext(&self, other: &ModPoly) -> (ModPoly, ModPoly, ModPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (ModPoly::one(p), ModPoly::zero(p));
        let (mut t0, mut t1) = (ModPoly::zero(p), ModPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let c = invmod(r0.leading(), p);
        (r0.scale(c), s0.scale(c), t0.scale(c))
    }

    pub fn derivative(&self) -> ModPoly {
        let p = self.p;
        if self.coeffs.len() <= 1 {
            return ModPoly::zero(p);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, (i as u64) % p, p))
            .collect();
        ModPoly::from_coeffs(p, coeffs)
    }

    /// self^e mod m.
    pub fn powmod(&self, e: &BigInt, m: &ModPoly) -> ModPoly {
        let p = self.p;
        let mut base = self.rem(m);
        let mut acc = ModPoly::one(p);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
            if i + 1 < bits {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    fn canonical_cmp(&self, other: &ModPoly) -> Ordering {
        match self.coeffs.len().cmp(&other.coeffs.len()) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..self.coeffs.len()).rev() {
            match self.coeffs[i].cmp(&other.coeffs[i]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

/// Complete factorization over F_p: `unit * prod factors[i]^mult[i]` equals
/// the input mod p, with monic irreducible factors sorted canonically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPFactorization {
    pub p: u64,
    /// Leading unit in [1, p).
    pub unit: u64,
    /// Monic irreducible factors with multiplicities.
    pub factors: Vec<(ModPoly, u32)>,
}

impl ModPFactorization {
    /// Multiply the factorization back together (for tests and invariants).
    pub fn product(&self) -> ModPoly {
        let mut acc = ModPoly::from_coeffs(self.p, vec![self.unit]);
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }
}

/// Factor f mod p into monic irreducibles.
///
/// Requires p prime and lc(f) nonzero mod p.
pub fn factor_mod_p(f: &IntPoly, p: u64) -> Result<ModPFactorization, ExactError> {
    if !is_prime_u64(p) {
        return Err(ExactError::NotPrime(p));
    }
    if f.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let fp = ModPoly::from_int_poly(f, p);
    if fp.degree() != f.degree() {
        return Err(ExactError::LeadingCoeffVanishes(p));
    }
    Ok(factor_modpoly(&fp))
}

pub fn factor_modpoly(fp: &ModPoly) -> ModPFactorization {
    let p = fp.p;
    let unit = fp.leading();
    let mut factors: Vec<(ModPoly, u32)> = Vec::new();
    let monic = fp.monic();
    if monic.degree() == Some(0) || monic.is_zero() {
        return ModPFactorization {
            p,
            unit: if fp.is_zero() { 0 } else { unit },
            factors,
        };
    }
    for (g, mult) in squarefree_decomposition(&monic) {
        for h in factor_squarefree(&g) {
            factors.push((h, mult));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    ModPFactorization { p, unit, factors }
}

/// Squarefree decomposition over F_p (handles the p-th power degeneracy).
fn squarefree_decomposition(f: &ModPoly) -> Vec<(ModPoly, u32)> {
    let p = f.p;
    let mut out: Vec<(ModPoly, u32)> = Vec::new();
    let df = f.derivative();
    if df.is_zero() {
        // f = g(t^p); over F_p the p-th root just contracts exponents.
        let root = pth_root(f);
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p as u32));
        }
        return out;
    }
    let mut w = f.gcd(&df);
    let mut v = f.divrem(&w).0.monic();
    let mut i = 1u32;
    while v.degree().map_or(false, |d| d > 0) {
        let next_v = v.gcd(&w);
        let piece = v.divrem(&next_v).0.monic();
        if piece.degree().map_or(false, |d| d > 0) {
            out.push((piece, i));
        }
        w = w.divrem(&next_v).0;
        v = next_v;
        i += 1;
    }
    if w.degree().map_or(false, |d| d > 0) {
        // Remaining p-th power part.
        let root = pth_root(&w);
        for (g, m) in squarefree_decomposition(&root) {
            merge(&mut out, g, m * p as u32);
        }
    }
    out
}

fn merge(out: &mut Vec<(ModPoly, u32)>, g: ModPoly, m: u32) {
    for (h, k) in out.iter_mut() {
        if *h == g {
            *k += m;
            return;
        }
    }
    out.push((g, m));
}

fn pth_root(f: &ModPoly) -> ModPoly {
    // Coefficients of t^(p*i); Frobenius is the identity on F_p.
    let p = f.p as usize;
    let d = f.deg();
    let coeffs = (0..=d / p).map(|i| f.coeff(i * p)).collect();
    ModPoly::from_coeffs(f.p, coeffs)
}

/// Factor a monic squarefree polynomial: distinct-degree then equal-degree.
fn factor_squarefree(f: &ModPoly) -> Vec<ModPoly> {
    let p = f.p;
    let mut out = Vec::new();
    let x = ModPoly::from_coeffs(p, vec![0, 1]);
    let mut h = x.clone();
    let mut rest = f.clone();
    let mut d = 0usize;
    while rest.degree().map_or(false, |deg| deg > 0) {
        d += 1;
        if 2 * d > rest.deg() {
            out.push(rest.monic());
            break;
        }
        h = h.powmod(&BigInt::from(p), &rest);
        let g = rest.gcd(&h.sub(&x));
        if g.degree().map_or(false, |deg| deg > 0) {
            for piece in split_equal_degree(&g, d) {
                out.push(piece);
            }
            rest = rest.divrem(&g).0.monic();
            h = h.rem(&rest);
        }
    }
    out
}

/// Deterministic enumeration of nonconstant polynomials of degree < bound,
/// used as splitting candidates.
struct CandidateSeq {
    p: u64,
    deg: usize,
    counter: u64,
}

impl CandidateSeq {
    fn new(p: u64) -> Self {
        CandidateSeq {
            p,
            deg: 1,
            counter: 0,
        }
    }

    fn next_candidate(&mut self, cap_deg: usize) -> ModPoly {
        // Counter encodes the non-leading coefficients in base p.
        let p = self.p;
        let mut coeffs = vec![0u64; self.deg + 1];
        let mut c = self.counter;
        for slot in coeffs.iter_mut().take(self.deg) {
            *slot = c % p;
            c /= p;
        }
        coeffs[self.deg] = 1;
        self.counter += 1;
        if c > 0 {
            self.counter = 0;
            self.deg = if self.deg + 1 > cap_deg { 1 } else { self.deg + 1 };
        }
        ModPoly::from_coeffs(p, coeffs)
    }
}

/// Split a product of irreducibles all of degree d (Cantor-Zassenhaus with a
/// deterministic candidate sequence; trace map for p = 2).
fn split_equal_degree(f: &ModPoly, d: usize) -> Vec<ModPoly> {
    let p = f.p;
    if f.deg() == d {
        return vec![f.monic()];
    }
    let mut seq = CandidateSeq::new(p);
    loop {
        let a = seq.next_candidate(2 * d);
        let g = if p == 2 {
            // Trace map over F_{2^d}.
            let mut tr = a.clone().rem(f);
            let mut power = a.clone().rem(f);
            for _ in 1..d {
                power = power.mul(&power).rem(f);
                tr = tr.add(&power);
            }
            f.gcd(&tr)
        } else {
            let e: BigInt = (BigInt::from(p).pow(d as u32) - 1) / 2;
            let pe = a.powmod(&e, f);
            f.gcd(&pe.sub(&ModPoly::one(p)))
        };
        if let Some(dg) = g.degree() {
            if dg > 0 && dg < f.deg() {
                let rest = f.divrem(&g).0.monic();
                let mut out = split_equal_degree(&g, d);
                out.extend(split_equal_degree(&rest, d));
                return out;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn ip(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn splits_into_linears_mod_2() {
        // t^2 - t + 2 = t^2 + t = t(t+1) mod 2
        let f = factor_mod_p(&ip(&[2, -1, 1]), 2).unwrap();
        assert_eq!(f.unit, 1);
        assert_eq!(
            f.factors,
            vec![
                (ModPoly::from_coeffs(2, vec![0, 1]), 1),
                (ModPoly::from_coeffs(2, vec![1, 1]), 1),
            ]
        );
    }

    #[test]
    fn reduction_kills_constant_term() {
        // t^2 - p = t^2 mod p, so t with multiplicity 2
        for p in [2u64, 5, 13] {
            let f = factor_mod_p(&ip(&[-(p as i64), 0, 1]), p).unwrap();
            assert_eq!(f.factors, vec![(ModPoly::from_coeffs(p, vec![0, 1]), 2)]);
        }
    }

    #[test]
    fn irreducible_mod_2() {
        let f = factor_mod_p(&ip(&[1, 1, 1]), 2).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].1, 1);
        assert_eq!(f.factors[0].0, ModPoly::from_coeffs(2, vec![1, 1, 1]));
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(
            factor_mod_p(&ip(&[1, 1]), 6),
            Err(ExactError::NotPrime(6))
        );
    }

    #[test]
    fn rejects_vanishing_leading_coefficient() {
        assert_eq!(
            factor_mod_p(&ip(&[1, 1, 5]), 5),
            Err(ExactError::LeadingCoeffVanishes(5))
        );
    }

    #[test]
    fn product_reconstructs_input() {
        let cases: [&[i64]; 5] = [
            &[6, 11, 6, 1],
            &[1, 0, 0, 0, 1],
            &[2, 4, 2],
            &[0, 0, 3, 1],
            &[1, 2, 3, 4, 5],
        ];
        for p in [2u64, 3, 5, 7, 11] {
            for coeffs in cases {
                let f = ip(coeffs);
                if f.leading().clone() % BigInt::from(p) == BigInt::zero() {
                    continue;
                }
                let fac = factor_mod_p(&f, p).unwrap();
                assert_eq!(fac.product(), ModPoly::from_int_poly(&f, p), "p={p} f={f}");
            }
        }
    }

    #[test]
    fn equal_degree_split_is_deterministic() {
        // Product of the three monic irreducible quadratics mod 3.
        let f = ip(&[1, 0, 1]);
        let g = ip(&[2, 1, 1]);
        let h = ip(&[2, 2, 1]);
        let prod = &(&f * &g) * &h;
        let f1 = factor_mod_p(&prod, 3).unwrap();
        let f2 = factor_mod_p(&prod, 3).unwrap();
        assert_eq!(f1, f2);
        assert_eq!(f1.factors.len(), 3);
        for (fac, m) in &f1.factors {
            assert_eq!(*m, 1);
            assert_eq!(fac.deg(), 2);
        }
    }
}
