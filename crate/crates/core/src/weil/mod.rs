//! q-Weil polynomials: validation, classification of irreducible factors,
//! and enumeration of isogeny classes for g = 1, 2.
//!
//! A monic integer polynomial is a q-Weil polynomial when every complex root
//! has absolute value sqrt(q). Validation is exact: factor over Z, then
//! certify each irreducible factor either as one of the degenerate real
//! shapes (t +- sqrt(q) for even s, t^2 - q) or through the functional
//! equation t^d m(q/t) = q^(d/2) m(t) together with a Sturm-certified check
//! that the trace polynomial is totally real with roots in
//! [-2 sqrt(q), 2 sqrt(q)]. No floating point anywhere.

use crate::exact::{factor_over_z, ExactError, IntPoly};
use crate::exact::{is_prime_u64, sturm::SturmChain};
use crate::slopes;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

/// A prime power q = p^s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePower {
    p: u64,
    s: u32,
    q: u64,
}

impl PrimePower {
    pub fn new(p: u64, s: u32) -> Result<Self, WeilError> {
        if !is_prime_u64(p) {
            return Err(WeilError::NotPrime(p));
        }
        if s == 0 {
            return Err(WeilError::ZeroExponent);
        }
        let q = (0..s).try_fold(1u64, |acc, _| acc.checked_mul(p));
        match q {
            Some(q) => Ok(PrimePower { p, s, q }),
            None => Err(WeilError::Overflow),
        }
    }

    /// Recognize q as a prime power.
    pub fn from_q(q: u64) -> Result<Self, WeilError> {
        if q < 2 {
            return Err(WeilError::NotPrimePower(q));
        }
        let mut p = q;
        // Smallest prime factor (q is small in practice).
        let mut d = 2u64;
        while d * d <= q {
            if q % d == 0 {
                p = d;
                break;
            }
            d += 1;
        }
        let mut s = 0u32;
        let mut rest = q;
        while rest % p == 0 {
            rest /= p;
            s += 1;
        }
        if rest != 1 {
            return Err(WeilError::NotPrimePower(q));
        }
        PrimePower::new(p, s)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// sqrt(q) when s is even.
    pub fn sqrt_q(&self) -> Option<u64> {
        if self.s % 2 == 0 {
            Some(self.p.pow(self.s / 2))
        } else {
            None
        }
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q)
    }
}

/// Shape of an irreducible Weil factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeilKind {
    /// t - c with c = +-p^(s/2) (only for even s). The corresponding simple
    /// class is the one excluded from polarized settings: its endomorphism
    /// algebra is the quaternion algebra ramified at p and infinity.
    Rational,
    /// t^2 - q with q a nonsquare (odd s); both roots real.
    Real,
    /// Even degree, no real roots, satisfies t^d m(q/t) = q^(d/2) m(t).
    ConjugatePair,
}

/// An irreducible factor of a validated Weil polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilFactor {
    pub poly: IntPoly,
    pub kind: WeilKind,
}

/// A validated q-Weil polynomial together with its factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilPolynomial {
    q: PrimePower,
    poly: IntPoly,
    g: u32,
    factors: Vec<(WeilFactor, u32)>,
}

impl WeilPolynomial {
    pub fn q(&self) -> PrimePower {
        self.q
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    /// Half the degree.
    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn irreducible_factors(&self) -> &[(WeilFactor, u32)] {
        &self.factors
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Multiply the factors back (round-trip invariant).
    pub fn product_of_factors(&self) -> IntPoly {
        let mut acc = IntPoly::one();
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = &acc * &f.poly;
            }
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeilError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("exponent must be positive")]
    ZeroExponent,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("prime power overflows u64")]
    Overflow,
    #[error("enumeration supports g in {{1, 2}}, got {0}")]
    UnsupportedGenus(u32),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Why a polynomial fails Weil validation. `reason_code` gives the stable
/// machine-readable tag used by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeilRejection {
    #[error("polynomial is zero")]
    Zero,
    #[error("degree {0} is odd")]
    OddDegree(usize),
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("factor {0} fails the functional equation")]
    FunctionalEquation(IntPoly),
    #[error("factor {0} has a root off the circle |z| = sqrt(q)")]
    RootModulus(IntPoly),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

impl WeilRejection {
    pub fn reason_code(&self) -> &'static str {
        match self {
            WeilRejection::Zero => "zero",
            WeilRejection::OddDegree(_) => "odd-degree",
            WeilRejection::NonMonic => "non-monic",
            WeilRejection::FunctionalEquation(_) => "functional-equation",
            WeilRejection::RootModulus(_) => "root-modulus",
            WeilRejection::Exact(_) => "internal",
        }
    }
}

/// Check the functional equation t^d m(q/t) = q^(d/2) m(t) for even-degree m.
fn satisfies_functional_equation(m: &IntPoly, q: u64) -> bool {
    let d = m.deg();
    debug_assert!(d % 2 == 0);
    let qb = BigInt::from(q);
    // t^d m(q/t) has coefficient a_i q^i at t^(d-i).
    let lhs = IntPoly::from_coeffs(
        (0..=d)
            .rev()
            .map(|i| m.coeff(i) * qb.pow(i as u32))
            .collect(),
    );
    let rhs = m.scale(&qb.pow((d / 2) as u32));
    lhs == rhs
}

/// The trace polynomial h of a conjugate-pair factor: the unique h with
/// m(t) = t^(d/2) h(t + q/t), verified as an exact identity on return.
pub fn trace_polynomial(m: &IntPoly, q: PrimePower) -> Result<IntPoly, WeilRejection> {
    let d = m.deg();
    if d % 2 != 0 || !satisfies_functional_equation(m, q.q()) {
        return Err(WeilRejection::FunctionalEquation(m.clone()));
    }
    let k = d / 2;
    let qb = BigInt::from(q.q());
    // Basis polynomials t^k (t + q/t)^j expanded: sum_i C(j,i) q^i t^(k+j-2i).
    // Solve for h's coefficients from the top down.
    let mut h = vec![BigInt::zero(); k + 1];
    let mut residue = m.clone();
    for j in (0..=k).rev() {
        let c = residue.coeff(k + j);
        h[j] = c.clone();
        if c.is_zero() {
            continue;
        }
        // Subtract c * t^k (t + q/t)^j.
        let mut basis = vec![BigInt::zero(); k + j + 1];
        let mut binom = BigInt::one();
        for i in 0..=j {
            // C(j, i) q^i at degree k + j - 2i; degrees below 0 cannot occur
            // since k >= j is not guaranteed, but k + j - 2i >= k - j >= ...
            let deg = (k + j) as i64 - 2 * i as i64;
            if deg >= 0 {
                basis[deg as usize] += &binom * qb.pow(i as u32);
            }
            binom = binom * BigInt::from((j - i) as u64)
                / BigInt::from((i + 1) as u64);
        }
        let basis = IntPoly::from_coeffs(basis).scale(&c);
        residue = &residue - &basis;
    }
    if !residue.is_zero() {
        return Err(WeilRejection::FunctionalEquation(m.clone()));
    }
    Ok(IntPoly::from_coeffs(h))
}

/// Classify an irreducible monic polynomial as a Weil factor for q, or
/// reject it.
pub fn classify_factor(m: &IntPoly, q: PrimePower) -> Result<WeilFactor, WeilRejection> {
    let d = m.deg();
    let qb = BigInt::from(q.q());
    if d == 1 {
        // t - c with c^2 = q.
        let c = -m.constant_term();
        return if &c * &c == qb {
            Ok(WeilFactor {
                poly: m.clone(),
                kind: WeilKind::Rational,
            })
        } else {
            Err(WeilRejection::RootModulus(m.clone()))
        };
    }
    if d % 2 != 0 {
        // No irreducible Weil factor has odd degree > 1: real roots force
        // degree <= 2 and complex roots pair up.
        return Err(WeilRejection::RootModulus(m.clone()));
    }
    if d == 2 && m.coeff(1).is_zero() && m.constant_term() == -&qb {
        // t^2 - q (irreducible exactly when s is odd).
        return Ok(WeilFactor {
            poly: m.clone(),
            kind: WeilKind::Real,
        });
    }
    if !satisfies_functional_equation(m, q.q()) {
        return Err(WeilRejection::FunctionalEquation(m.clone()));
    }
    let h = trace_polynomial(m, q)?;
    // All roots of h real, inside [-2 sqrt(q), 2 sqrt(q)]. Totally real is a
    // Sturm count; the window condition becomes "H(x) = hs(rx) hs(-rx) as a
    // polynomial in x^2 has no root above 4q", which has rational bounds.
    let hs = h.squarefree_part();
    let chain = SturmChain::new(&hs);
    if chain.count_all() != hs.deg() {
        return Err(WeilRejection::RootModulus(m.clone()));
    }
    // H(y) with roots beta^2 for each root beta of hs: split hs into even and
    // odd parts, hs(t) = E(t^2) + t O(t^2), then H = E^2 - y O^2.
    let (even, odd) = split_even_odd(&hs);
    let y = IntPoly::from_coeffs(vec![BigInt::zero(), BigInt::one()]);
    let h2 = &(&even * &even) - &(&y * &(&odd * &odd));
    let h2 = h2.squarefree_part();
    // Roots of h2 are nonnegative; check none exceed 4q. Cauchy bound keeps
    // the Sturm window rational and finite.
    let four_q = BigInt::from(4 * q.q());
    let bound = h2.height() + BigInt::one() + &four_q;
    let lo = crate::exact::BigRat::from_integer(four_q);
    let hi = crate::exact::BigRat::from_integer(bound);
    if SturmChain::new(&h2).count_in(&lo, &hi) != 0 {
        return Err(WeilRejection::RootModulus(m.clone()));
    }
    Ok(WeilFactor {
        poly: m.clone(),
        kind: WeilKind::ConjugatePair,
    })
}

fn split_even_odd(f: &IntPoly) -> (IntPoly, IntPoly) {
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        if i % 2 == 0 {
            even.push(c.clone());
        } else {
            odd.push(c.clone());
        }
    }
    (IntPoly::from_coeffs(even), IntPoly::from_coeffs(odd))
}

/// Validate f as a q-Weil polynomial.
pub fn validate_weil(f: &IntPoly, q: PrimePower) -> Result<WeilPolynomial, WeilRejection> {
    if f.is_zero() {
        return Err(WeilRejection::Zero);
    }
    let d = f.deg();
    if d == 0 || d % 2 != 0 {
        return Err(WeilRejection::OddDegree(d));
    }
    if !f.is_monic() {
        return Err(WeilRejection::NonMonic);
    }
    let factorization = factor_over_z(f).map_err(WeilRejection::Exact)?;
    let mut factors = Vec::new();
    for (m, mult) in factorization.factors {
        let wf = classify_factor(&m, q)?;
        factors.push((wf, mult));
    }
    Ok(WeilPolynomial {
        q,
        poly: f.clone(),
        g: (d / 2) as u32,
        factors,
    })
}

/// All irreducible Weil factors for q of degree d (d in {1, 2, 4}), found by
/// scanning the coefficient box |a_i| <= C(d, i) q^(i/2) and validating each
/// candidate exactly. For even-degree candidates only the half of the box
/// satisfying the (necessary) functional equation is materialized.
pub fn irreducible_factors_of_degree(q: PrimePower, d: usize) -> Vec<WeilFactor> {
    let mut out = Vec::new();
    let qv = q.q() as i64;
    match d {
        1 => {
            if let Some(r) = q.sqrt_q() {
                let r = r as i64;
                for c in [r, -r] {
                    let m = IntPoly::from_descending_i64(&[1, -c]);
                    if let Ok(f) = classify_factor(&m, q) {
                        out.push(f);
                    }
                }
            }
        }
        2 => {
            // t^2 + a t + q with |a| <= 2 sqrt(q), plus t^2 - q.
            let amax = isqrt_i64(4 * qv);
            for a in -amax..=amax {
                let m = IntPoly::from_descending_i64(&[1, a, qv]);
                if is_irreducible(&m) {
                    if let Ok(f) = classify_factor(&m, q) {
                        out.push(f);
                    }
                }
            }
            let m = IntPoly::from_descending_i64(&[1, 0, -qv]);
            if is_irreducible(&m) {
                if let Ok(f) = classify_factor(&m, q) {
                    out.push(f);
                }
            }
        }
        4 => {
            // t^4 + a t^3 + b t^2 + qa t + q^2; the sign -1 branch of the
            // functional equation forces a factor t^2 - q, never irreducible.
            let amax = isqrt_i64(16 * qv);
            let bmax = 6 * qv;
            for a in -amax..=amax {
                for b in -bmax..=bmax {
                    let m = IntPoly::from_descending_i64(&[1, a, b, qv * a, qv * qv]);
                    if let Ok(f) = classify_factor_if_irreducible(&m, q) {
                        out.push(f);
                    }
                }
            }
        }
        _ => {}
    }
    out.sort_by(|x, y| x.poly.canonical_cmp(&y.poly));
    out
}

fn classify_factor_if_irreducible(
    m: &IntPoly,
    q: PrimePower,
) -> Result<WeilFactor, WeilRejection> {
    if !is_irreducible(m) {
        return Err(WeilRejection::RootModulus(m.clone()));
    }
    classify_factor(m, q)
}

fn is_irreducible(m: &IntPoly) -> bool {
    match factor_over_z(m) {
        Ok(f) => f.factors.len() == 1 && f.factors[0].1 == 1,
        Err(_) => false,
    }
}

fn isqrt_i64(n: i64) -> i64 {
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Enumerate the characteristic polynomials of the g-dimensional isogeny
/// classes over F_q, assembled from simple classes whose dimensions sum
/// to g. Entries are sorted by their coefficient tuple (a_1, ..., a_2g).
///
/// The box scan finds every irreducible Weil factor; each factor m carries
/// its Honda-Tate index e and dimension, and a class contributes m^(e k)
/// when used with multiplicity k. Only g in {1, 2} is supported.
pub fn enumerate_weil(q: PrimePower, g: u32) -> Result<Vec<WeilPolynomial>, WeilError> {
    if g != 1 && g != 2 {
        return Err(WeilError::UnsupportedGenus(g));
    }
    // Simple building blocks: (factor, e, dim) with dim <= g.
    let mut blocks: Vec<(WeilFactor, u32, u32)> = Vec::new();
    for d in [1usize, 2, 4] {
        if d > 2 * g as usize {
            continue;
        }
        for f in irreducible_factors_of_degree(q, d) {
            let cls = slopes::honda_tate(&f, q).expect("sweep factors decompose");
            if cls.dim <= g {
                blocks.push((f, cls.e, cls.dim));
            }
        }
    }

    let mut polys: Vec<IntPoly> = Vec::new();
    let push_power = |f: &WeilFactor, n: u32| -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..n {
            acc = &acc * &f.poly;
        }
        acc
    };
    match g {
        1 => {
            for (f, e, dim) in &blocks {
                if *dim == 1 {
                    polys.push(push_power(f, *e));
                }
            }
        }
        2 => {
            for (f, e, dim) in &blocks {
                if *dim == 2 {
                    polys.push(push_power(f, *e));
                }
            }
            let ones: Vec<_> = blocks.iter().filter(|(_, _, dim)| *dim == 1).collect();
            for (i, (f, e, _)) in ones.iter().enumerate() {
                // k = 2 copies of one simple class
                polys.push(push_power(f, 2 * e));
                for (g2, e2, _) in ones.iter().skip(i + 1) {
                    polys.push(&push_power(f, *e) * &push_power(g2, *e2));
                }
            }
        }
        _ => unreachable!(),
    }
    polys.sort_by(|a, b| {
        let da = a.descending_coeffs();
        let db = b.descending_coeffs();
        da.cmp(&db)
    });
    let mut out = Vec::with_capacity(polys.len());
    for p in polys {
        let w = validate_weil(&p, q).expect("assembled polynomials are Weil");
        debug_assert_eq!(w.product_of_factors(), p);
        out.push(w);
    }
    Ok(out)
}
