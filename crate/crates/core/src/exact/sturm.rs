//! Sturm chains and exact real-root counting over rational intervals.

use super::poly::IntPoly;
use super::BigRat;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

/// Signed remainder sequence of f, with each remainder scaled by a positive
/// integer so the chain stays in Z[t] without disturbing signs.
#[derive(Debug, Clone)]
pub struct SturmChain {
    polys: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(f: &IntPoly) -> Self {
        let mut polys = Vec::new();
        if f.is_zero() {
            return SturmChain { polys };
        }
        polys.push(f.clone());
        let df = f.derivative();
        if df.is_zero() {
            return SturmChain { polys };
        }
        polys.push(df);
        loop {
            let n = polys.len();
            let a = &polys[n - 2];
            let b = &polys[n - 1];
            if b.degree().is_none() {
                break;
            }
            if b.deg() == 0 {
                break;
            }
            // pseudo_divrem returns r = lc(b)^k * rem_Q(a, b); divide out the
            // sign of lc(b)^k so the chain keeps the true remainder signs.
            let (_, r, k) = a.pseudo_divrem(b).expect("nonzero divisor");
            if r.is_zero() {
                break;
            }
            let flip = b.leading().is_negative() && k % 2 == 1;
            let neg = if flip { r } else { -&r };
            let c = neg.content().abs();
            polys.push(IntPoly::from_coeffs(
                neg.coeffs().iter().map(|x| x / &c).collect(),
            ));
        }
        SturmChain { polys }
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.polys
    }

    fn variations<F: Fn(&IntPoly) -> Ordering>(&self, sign: F) -> usize {
        let mut count = 0;
        let mut last: Option<Ordering> = None;
        for p in &self.polys {
            let s = sign(p);
            if s == Ordering::Equal {
                continue;
            }
            if let Some(prev) = last {
                if prev != s {
                    count += 1;
                }
            }
            last = Some(s);
        }
        count
    }

    fn variations_at(&self, x: &BigRat) -> usize {
        self.variations(|p| p.sign_at_rat(x))
    }

    fn sign_at_infinity(p: &IntPoly, positive: bool) -> Ordering {
        match p.degree() {
            None => Ordering::Equal,
            Some(d) => {
                let lead = p.leading();
                let mut s = lead.cmp(&BigInt::zero());
                if !positive && d % 2 == 1 {
                    s = s.reverse();
                }
                s
            }
        }
    }

    /// Number of distinct real roots in the half-open interval (lo, hi].
    pub fn count_in(&self, lo: &BigRat, hi: &BigRat) -> usize {
        assert!(lo < hi, "count_in requires lo < hi");
        self.variations_at(lo) - self.variations_at(hi)
    }

    /// Number of distinct real roots on the whole line.
    pub fn count_all(&self) -> usize {
        self.variations(|p| Self::sign_at_infinity(p, false))
            - self.variations(|p| Self::sign_at_infinity(p, true))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealRootCount {
    /// Distinct real roots in (lo, hi].
    pub count: usize,
    /// True iff every complex root of f is real, i.e. the total distinct real
    /// root count equals the degree (meaningful for squarefree input).
    pub all_real: bool,
}

/// Exact count of distinct real roots of f in (lo, hi], plus a flag telling
/// whether all roots of f are real.
///
/// The caller is expected to pass a squarefree f (apply
/// [`IntPoly::squarefree_part`] first); the interval count is correct for any
/// nonzero f, but `all_real` compares against the degree.
pub fn count_real_roots(f: &IntPoly, lo: &BigRat, hi: &BigRat) -> RealRootCount {
    assert!(!f.is_zero(), "count_real_roots requires a nonzero polynomial");
    assert!(lo < hi, "count_real_roots requires lo < hi");
    let chain = SturmChain::new(f);
    let count = chain.count_in(lo, hi);
    let all_real = chain.count_all() == f.deg();
    RealRootCount { count, all_real }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRat {
        BigRat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sqrt_two_in_unit_window() {
        // t^2 - 2 has one root in (0, 2)
        let f = IntPoly::from_i64(&[-2, 0, 1]);
        let r = count_real_roots(&f, &rat(0, 1), &rat(2, 1));
        assert_eq!(r.count, 1);
        assert!(r.all_real);
    }

    #[test]
    fn no_real_roots() {
        let f = IntPoly::from_i64(&[1, 0, 1]); // t^2 + 1
        let r = count_real_roots(&f, &rat(-10, 1), &rat(10, 1));
        assert_eq!(r.count, 0);
        assert!(!r.all_real);
    }

    #[test]
    fn two_roots_in_window() {
        let f = IntPoly::from_i64(&[6, -5, 1]); // (t-2)(t-3)
        let r = count_real_roots(&f, &rat(0, 1), &rat(10, 1));
        assert_eq!(r.count, 2);
        assert!(r.all_real);
    }

    #[test]
    fn half_open_endpoints() {
        // (t-2)(t-3) over (2, 3]: root 2 excluded, root 3 included.
        let f = IntPoly::from_i64(&[6, -5, 1]);
        let c = SturmChain::new(&f);
        assert_eq!(c.count_in(&rat(2, 1), &rat(3, 1)), 1);
        assert_eq!(c.count_in(&rat(1, 1), &rat(2, 1)), 1);
        assert_eq!(c.count_in(&rat(3, 1), &rat(4, 1)), 0);
    }

    #[test]
    fn total_count_cubic() {
        let f = IntPoly::from_i64(&[0, -1, 0, 1]); // t(t-1)(t+1)
        assert_eq!(SturmChain::new(&f).count_all(), 3);
    }
}
