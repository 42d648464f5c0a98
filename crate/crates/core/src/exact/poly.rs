//! Dense univariate polynomials over the integers.
//!
//! `IntPoly` stores coefficients in ascending degree order as a
//! `Vec<BigInt>`. Invariant: the vector is either empty (zero polynomial) or
//! the last element is nonzero.

use super::{BigRat, ExactError};
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = IntPoly { coeffs: vec![c] };
        p.normalize();
        p
    }

    /// The monomial c * t^deg.
    pub fn monomial(c: BigInt, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c;
        IntPoly { coeffs }
    }

    /// Construct from coefficients in ascending degree order.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.normalize();
        p
    }

    /// Convenience constructor, ascending degree order.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Construct from coefficients listed leading-first (the CLI convention:
    /// `[1, -1, 2]` is t^2 - t + 2).
    pub fn from_descending_i64(coeffs: &[i64]) -> Self {
        let mut v: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        v.reverse();
        Self::from_coeffs(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the convention that the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree of a nonzero polynomial; panics on zero.
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        IntPoly::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRat::from_integer(c.clone());
        }
        acc
    }

    /// Sign of f(num/den) computed without leaving the integers, via the
    /// homogeneous evaluation sum a_i num^i den^(n-i). Requires den > 0.
    pub fn sign_at_rat(&self, x: &BigRat) -> Ordering {
        debug_assert!(x.denom().is_positive());
        let n = match self.degree() {
            None => return Ordering::Equal,
            Some(n) => n,
        };
        let num = x.numer();
        let den = x.denom();
        let mut num_pow = vec![BigInt::one()];
        let mut den_pow = vec![BigInt::one()];
        for i in 1..=n {
            num_pow.push(&num_pow[i - 1] * num);
            den_pow.push(&den_pow[i - 1] * den);
        }
        let mut acc = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += c * &num_pow[i] * &den_pow[n - i];
        }
        acc.cmp(&BigInt::zero())
    }

    /// Content: gcd of the coefficients, carrying the sign of the leading
    /// coefficient (so the primitive part has positive leading coefficient).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if self.leading().is_negative() {
            -g
        } else {
            g
        }
    }

    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let c = self.content();
        IntPoly::from_coeffs(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Pseudo-division: returns (q, r, k) with lc(b)^k * a = q*b + r and
    /// deg r < deg b. Errors on zero divisor.
    pub fn pseudo_divrem(&self, b: &IntPoly) -> Result<(IntPoly, IntPoly, usize), ExactError> {
        if b.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let db = b.deg();
        let lb = b.leading();
        let mut r = self.clone();
        let mut q = IntPoly::zero();
        let mut k = 0usize;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let t = IntPoly::monomial(r.leading(), dr - db);
            q = &q.scale(&lb) + &t;
            r = &r.scale(&lb) - &(&t * b);
            k += 1;
        }
        Ok((q, r, k))
    }

    /// Euclidean division when it is exact over the integers at every step
    /// (always the case for monic divisors). Returns None if some coefficient
    /// division fails.
    pub fn divrem_exact(&self, b: &IntPoly) -> Result<Option<(IntPoly, IntPoly)>, ExactError> {
        if b.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let db = b.deg();
        let lb = b.leading();
        let mut r = self.clone();
        let mut q = IntPoly::zero();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let (c, rem) = r.leading().div_rem(&lb);
            if !rem.is_zero() {
                return Ok(None);
            }
            let t = IntPoly::monomial(c, dr - db);
            q = &q + &t;
            r = &r - &(&t * b);
        }
        Ok(Some((q, r)))
    }

    /// Exact divisibility test; returns the quotient when `b` divides `self`
    /// over Z.
    pub fn div_exact(&self, b: &IntPoly) -> Result<Option<IntPoly>, ExactError> {
        match self.divrem_exact(b)? {
            Some((q, r)) if r.is_zero() => Ok(Some(q)),
            _ => Ok(None),
        }
    }

    /// Primitive gcd with positive leading coefficient, by the subresultant
    /// remainder sequence.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r, _) = a.pseudo_divrem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part()
    }

    /// Resultant of self and other, exact, via the subresultant PRS.
    pub fn resultant(&self, other: &IntPoly) -> BigInt {
        // Ducos-style bookkeeping is overkill at these degrees; the classic
        // pseudo-remainder recursion with explicit correction factors is exact.
        fn res(a: &IntPoly, b: &IntPoly) -> BigInt {
            if b.is_zero() {
                return if a.degree() == Some(0) {
                    BigInt::one()
                } else {
                    BigInt::zero()
                };
            }
            if a.is_zero() {
                return BigInt::zero();
            }
            let da = a.deg();
            let db = b.deg();
            if da < db {
                let sign = if (da * db) % 2 == 1 {
                    -BigInt::one()
                } else {
                    BigInt::one()
                };
                return sign * res(b, a);
            }
            if db == 0 {
                return b.leading().pow(da as u32);
            }
            let (_, r, k) = a.pseudo_divrem(b).expect("nonzero divisor");
            let lb = b.leading();
            // res(a, b) = (-1)^(da*db) lb^(da - deg r) res(b, r) / lb^(k*db)
            let dr = r.degree().map_or(0, |d| d);
            let sign = if (da * db) % 2 == 1 {
                -BigInt::one()
            } else {
                BigInt::one()
            };
            if r.is_zero() {
                return BigInt::zero();
            }
            let sub = res(b, &r);
            let num = sign * lb.pow((da - dr) as u32) * sub;
            let den = lb.pow((k * db) as u32);
            let (qq, rr) = num.div_rem(&den);
            debug_assert!(rr.is_zero());
            qq
        }
        res(self, other)
    }

    /// Discriminant up to the standard normalization:
    /// disc(f) = (-1)^(n(n-1)/2) res(f, f') / lc(f).
    pub fn discriminant(&self) -> BigInt {
        let n = match self.degree() {
            None | Some(0) => return BigInt::zero(),
            Some(n) => n,
        };
        let r = self.resultant(&self.derivative());
        let (q, rem) = r.div_rem(&self.leading());
        debug_assert!(rem.is_zero());
        if (n * (n - 1) / 2) % 2 == 1 {
            -q
        } else {
            q
        }
    }

    /// Squarefree part: f / gcd(f, f'), primitive with positive leading
    /// coefficient.
    pub fn squarefree_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        let q = self
            .primitive_part()
            .div_exact(&g)
            .expect("nonzero gcd")
            .expect("gcd divides");
        q.primitive_part()
    }

    /// Yun squarefree decomposition of the primitive part: returns pairs
    /// (g_i, i) with product g_i^i equal to the primitive part of f, each g_i
    /// squarefree and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, u32)> {
        let f = self.primitive_part();
        if f.degree().map_or(true, |d| d == 0) {
            return Vec::new();
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).unwrap().unwrap();
        let mut c = df.div_exact(&a0).unwrap().unwrap();
        let mut out = Vec::new();
        let mut i = 1u32;
        loop {
            let d = &c - &b.derivative();
            if d.is_zero() {
                if b.degree().map_or(false, |d| d > 0) {
                    out.push((b, i));
                }
                break;
            }
            let g = b.gcd(&d);
            if g.degree().map_or(false, |d| d > 0) {
                out.push((g.clone(), i));
            }
            b = b.div_exact(&g).unwrap().unwrap();
            c = d.div_exact(&g).unwrap().unwrap();
            i += 1;
            if b.degree().map_or(true, |d| d == 0) {
                break;
            }
        }
        out
    }

    /// f(c * t), useful for monicization and valuation shifts.
    pub fn compose_scale(&self, c: &BigInt) -> IntPoly {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        let mut pow = BigInt::one();
        for a in &self.coeffs {
            coeffs.push(a * &pow);
            pow *= c;
        }
        IntPoly::from_coeffs(coeffs)
    }

    /// f(t + c).
    pub fn compose_shift(&self, c: &BigInt) -> IntPoly {
        // Horner with polynomial coefficients.
        let mut acc = IntPoly::zero();
        let shift = IntPoly::from_coeffs(vec![c.clone(), BigInt::one()]);
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &shift) + &IntPoly::constant(a.clone());
        }
        acc
    }

    /// Coefficient reversal t^n f(1/t) (n = deg f).
    pub fn reverse(&self) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        IntPoly::from_coeffs(coeffs)
    }

    /// Squared l2 norm of the coefficient vector.
    pub fn norm2_squared(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Max-norm of the coefficient vector.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Canonical comparison: by degree, then coefficients from the top down.
    pub fn canonical_cmp(&self, other: &IntPoly) -> Ordering {
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

    /// Coefficients listed leading-first (serialization convention).
    pub fn descending_coeffs(&self) -> Vec<BigInt> {
        let mut v = self.coeffs.clone();
        v.reverse();
        v
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = c.sign();
            let mag = c.abs();
            if first {
                if sign == Sign::Minus {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign == Sign::Minus {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                if i == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn gcd_common_root() {
        // gcd(t^2 - 1, t^2 - 2t + 1) = t - 1
        let g = p(&[-1, 0, 1]).gcd(&p(&[1, -2, 1]));
        assert_eq!(g, p(&[-1, 1]));
    }

    #[test]
    fn resultant_of_linears() {
        // res(t - 2, t - 3) = 2 - 3 = -1
        let r = p(&[-2, 1]).resultant(&p(&[-3, 1]));
        assert_eq!(r, BigInt::from(-1));
    }

    #[test]
    fn squarefree_removes_multiplicity() {
        // (t-1)^2 (t+1) -> (t-1)(t+1) = t^2 - 1
        let f = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[1, 1]);
        assert_eq!(f.squarefree_part(), p(&[-1, 0, 1]));
    }

    #[test]
    fn pseudo_division_identity() {
        let a = p(&[7, -3, 0, 2, 5]);
        let b = p(&[2, 0, 3]);
        let (q, r, k) = a.pseudo_divrem(&b).unwrap();
        let lhs = a.scale(&b.leading().pow(k as u32));
        assert_eq!(lhs, &(&q * &b) + &r);
        assert!(r.degree().map_or(true, |d| d < b.deg()));
    }

    #[test]
    fn divide_by_zero_rejected() {
        assert_eq!(
            p(&[1, 1]).pseudo_divrem(&IntPoly::zero()),
            Err(ExactError::DivisionByZero)
        );
    }

    #[test]
    fn yun_decomposition_roundtrip() {
        // f = (t-1)^2 (t+2)^3 t
        let f = [(&[-1i64, 1], 2u32), (&[2, 1], 3), (&[0, 1], 1)]
            .iter()
            .fold(IntPoly::one(), |acc, (fac, m)| {
                let mut r = acc;
                for _ in 0..*m {
                    r = &r * &IntPoly::from_i64(*fac);
                }
                r
            });
        let dec = f.squarefree_decomposition();
        let mut back = IntPoly::one();
        for (g, m) in &dec {
            for _ in 0..*m {
                back = &back * g;
            }
        }
        assert_eq!(back, f.primitive_part());
        for (g, _) in &dec {
            assert_eq!(g.gcd(&g.derivative()).deg(), 0);
        }
    }

    #[test]
    fn shift_and_scale() {
        let f = p(&[1, 2, 1]); // (t+1)^2
        assert_eq!(f.compose_shift(&BigInt::from(-1)), p(&[0, 0, 1]));
        assert_eq!(f.compose_scale(&BigInt::from(2)), p(&[1, 4, 4]));
    }

    #[test]
    fn discriminant_quadratic() {
        // disc(t^2 + bt + c) = b^2 - 4c
        let f = p(&[2, -1, 1]); // t^2 - t + 2
        assert_eq!(f.discriminant(), BigInt::from(1 - 8));
    }
}
