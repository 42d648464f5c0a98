//! Factorization over Z: squarefree split, factorization mod a good prime,
//! Hensel lifting to a Landau-Mignotte height bound, and exhaustive subset
//! recombination.
//!
//! The degree cap keeps worst-case recombination trivial; the objects this
//! crate cares about have degree at most 4 * dimension with dimension <= 4.

use super::hensel::{lift_factorization, symmetric_mod};
use super::modp::factor_mod_p;
use super::poly::IntPoly;
use super::{is_prime_u64, ExactError};
use num_bigint::BigInt;
use num_traits::{One, Signed};

/// Hard cap on input degree for `factor_over_z`.
pub const DEGREE_CAP: usize = 16;

/// Factorization of an integer polynomial: `content * prod factors[i]^mult[i]`
/// reconstructs the input exactly. Factors are primitive, irreducible over Q,
/// with positive leading coefficient, sorted by degree then coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntFactorization {
    pub content: BigInt,
    pub factors: Vec<(IntPoly, u32)>,
}

impl IntFactorization {
    pub fn product(&self) -> IntPoly {
        let mut acc = IntPoly::constant(self.content.clone());
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = &acc * f;
            }
        }
        acc
    }
}

/// Factor a nonzero integer polynomial of degree <= 16 into irreducibles
/// over Q.
pub fn factor_over_z(f: &IntPoly) -> Result<IntFactorization, ExactError> {
    if f.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let degree = f.degree().unwrap();
    if degree > DEGREE_CAP {
        return Err(ExactError::DegreeCapExceeded {
            degree,
            cap: DEGREE_CAP,
        });
    }
    let content = f.content();
    if degree == 0 {
        return Ok(IntFactorization {
            content,
            factors: Vec::new(),
        });
    }
    let mut factors: Vec<(IntPoly, u32)> = Vec::new();
    for (g, mult) in f.squarefree_decomposition() {
        for h in factor_squarefree(&g) {
            factors.push((h, mult));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(IntFactorization { content, factors })
}

/// Factor a primitive squarefree polynomial with positive leading
/// coefficient.
fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.deg();
    if n == 1 {
        return vec![f.clone()];
    }
    // Monicize: g(t) = lc^(n-1) f(t/lc) is monic; factors map back by
    // t -> lc*t followed by taking primitive parts.
    let lc = f.leading();
    if lc.is_one() {
        return factor_monic_squarefree(f);
    }
    factor_monic_squarefree(&monicize(f))
        .into_iter()
        .map(|g| g.compose_scale(&lc).primitive_part())
        .collect()
}

/// lc(f)^(deg f - 1) * f(t / lc(f)), which is monic with integer
/// coefficients: the t^i coefficient becomes a_i * lc^(n-1-i).
fn monicize(f: &IntPoly) -> IntPoly {
    let n = f.deg();
    let lc = f.leading();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        out.push(f.coeff(i) * lc.pow((n - 1 - i) as u32));
    }
    out.push(BigInt::one());
    IntPoly::from_coeffs(out)
}

fn factor_monic_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.deg();
    if n == 1 {
        return vec![f.clone()];
    }

    // Good prime: f stays squarefree mod p.
    let mut p = 2u64;
    let (p, modp_factors) = loop {
        if is_prime_u64(p) {
            if let Ok(fac) = factor_mod_p(f, p) {
                let squarefree = fac.factors.iter().all(|(_, m)| *m == 1);
                if squarefree {
                    break (p, fac);
                }
            }
        }
        p += 1;
    };

    if modp_factors.factors.len() == 1 {
        return vec![f.clone()];
    }

    // Landau-Mignotte style height bound for any monic factor of f, padded
    // by the factor 2 needed for symmetric representatives.
    let norm2 = f.norm2_squared().sqrt() + 1;
    let bound: BigInt = (BigInt::one() << n) * norm2 * 2;
    let mut precision = 1u32;
    let mut modulus = BigInt::from(p);
    while modulus <= bound {
        modulus *= BigInt::from(p);
        precision += 1;
    }

    let mod_p_polys: Vec<IntPoly> = modp_factors
        .factors
        .iter()
        .map(|(g, _)| g.to_int_poly())
        .collect();
    let lifted = lift_factorization(f, p, &mod_p_polys, precision)
        .expect("good prime guarantees liftable factorization");

    // Subset recombination over the lifted factors.
    let mut remaining: Vec<IntPoly> = lifted;
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut size = 1usize;
    'outer: while 2 * size <= remaining.len() {
        let idxs: Vec<usize> = (0..remaining.len()).collect();
        for subset in subsets_of_size(&idxs, size) {
            let mut candidate = IntPoly::one();
            for &i in &subset {
                candidate = &candidate * &remaining[i];
            }
            let candidate = symmetric_mod(&candidate, &modulus);
            if candidate.height() * rest.leading().abs() > bound {
                continue;
            }
            if let Ok(Some(q)) = rest.div_exact(&candidate) {
                out.push(candidate);
                rest = q;
                let mut keep = Vec::new();
                for (i, g) in remaining.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(g);
                    }
                }
                remaining = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if rest.degree().map_or(false, |d| d > 0) {
        out.push(rest);
    }
    out
}

fn subsets_of_size(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(
        items: &[usize],
        size: usize,
        start: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..items.len() {
            current.push(items[i]);
            rec(items, size, i + 1, current, out);
            current.pop();
        }
    }
    rec(items, size, 0, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn cyclotomic_split() {
        // t^4 - 1 = (t-1)(t+1)(t^2+1)
        let f = factor_over_z(&ip(&[-1, 0, 0, 0, 1])).unwrap();
        assert_eq!(f.content, BigInt::one());
        assert_eq!(
            f.factors,
            vec![
                (ip(&[-1, 1]), 1),
                (ip(&[1, 1]), 1),
                (ip(&[1, 0, 1]), 1),
            ]
        );
    }

    #[test]
    fn perfect_square_of_irreducible() {
        let base = ip(&[2, -1, 1]); // t^2 - t + 2
        let f = factor_over_z(&(&base * &base)).unwrap();
        assert_eq!(f.factors, vec![(base, 2)]);
    }

    #[test]
    fn sophie_germain_split() {
        // t^4 + 4 = (t^2 - 2t + 2)(t^2 + 2t + 2); verify by direct expansion.
        let a = ip(&[2, -2, 1]);
        let b = ip(&[2, 2, 1]);
        assert_eq!(&a * &b, ip(&[4, 0, 0, 0, 1]));
        let f = factor_over_z(&ip(&[4, 0, 0, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(a, 1), (b, 1)]);
    }

    #[test]
    fn content_and_sign() {
        // -2t^2 + 2 = -2 (t-1)(t+1)
        let f = factor_over_z(&ip(&[2, 0, -2])).unwrap();
        assert_eq!(f.content, BigInt::from(-2));
        assert_eq!(f.factors, vec![(ip(&[-1, 1]), 1), (ip(&[1, 1]), 1)]);
        assert_eq!(f.product(), ip(&[2, 0, -2]));
    }

    #[test]
    fn degree_cap_enforced() {
        let mut coeffs = vec![0i64; 18];
        coeffs[0] = 1;
        coeffs[17] = 1;
        assert_eq!(
            factor_over_z(&ip(&coeffs)),
            Err(ExactError::DegreeCapExceeded {
                degree: 17,
                cap: 16
            })
        );
    }

    #[test]
    fn non_monic_with_rational_roots() {
        // 6t^2 + 5t + 1 = (2t+1)(3t+1)
        let f = factor_over_z(&ip(&[1, 5, 6])).unwrap();
        assert_eq!(f.factors, vec![(ip(&[1, 2]), 1), (ip(&[1, 3]), 1)]);
    }

    #[test]
    fn irreducible_quartic_stays_whole() {
        // t^4 + t^3 + t^2 + t + 1 (5th cyclotomic)
        let f = factor_over_z(&ip(&[1, 1, 1, 1, 1])).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].1, 1);
    }
}
