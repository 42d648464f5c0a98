//! Exact local decomposition of Q(pi) above p for the factor degrees this
//! crate meets (1, 2, and CM quartics).
//!
//! Everything reduces to integer arithmetic: Kronecker symbols, p-adic
//! square roots of plain integers, and an exact squareness test in quadratic
//! local fields Q_p(sqrt(m0)) carried out on coordinate pairs. No floating
//! point, no approximation beyond explicitly bounded p-adic precision, and
//! every precision bound is derived from resultants computed exactly.

use super::SlopeError;
use crate::exact::padic;
use crate::exact::{BigRat, IntPoly};
use crate::quadratic::kronecker_bigint;
use crate::weil::{trace_polynomial, PrimePower, WeilFactor, WeilKind};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// One prime of F = Q[t]/(m) over p, with the valuation of pi normalized by
/// ord(p) = 1 and the index of the conjugate prime under pi -> q/pi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalPrime {
    pub local_degree: u32,
    pub ord: BigRat,
    pub conjugate: usize,
}

fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

/// n = d * c^2 with d squarefree (sign carried by d).
pub fn squarefree_kernel(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_zero());
    let mut d = n.clone();
    let mut c = BigInt::one();
    let mut f = BigInt::from(2);
    loop {
        let f2 = &f * &f;
        if &f2 > &d.abs() {
            break;
        }
        while (&d % &f2).is_zero() {
            d /= &f2;
            c *= &f;
        }
        f += 1;
    }
    (d, c)
}

/// Fundamental discriminant of Q(sqrt(d)), d squarefree.
pub fn fundamental_discriminant(d: &BigInt) -> BigInt {
    if d.mod_floor(&BigInt::from(4)) == BigInt::one() {
        d.clone()
    } else {
        d * 4
    }
}

/// Decompose a validated irreducible Weil factor above p, with pairing.
pub fn decompose_weil_factor(
    f: &WeilFactor,
    q: PrimePower,
) -> Result<Vec<LocalPrime>, SlopeError> {
    let m = &f.poly;
    let p = q.p();
    match m.deg() {
        1 => {
            // F = Q, pi = -m(0) = +-sqrt(q); the involution is trivial.
            let c = -m.constant_term();
            let v = padic::val(&c, p).expect("Weil root is nonzero") as i64;
            Ok(vec![LocalPrime {
                local_degree: 1,
                ord: rat(v, 1),
                conjugate: 0,
            }])
        }
        2 => quadratic_factor(m, f.kind, q),
        4 => quartic_cm_tower(m, q),
        d => Err(SlopeError::NonRegularCase {
            detail: format!("no exact decomposition for Weil factors of degree {d}"),
        }),
    }
}

/// Quadratic factor: closed-form splitting from the field discriminant, with
/// valuations read off the Newton polygon (split case) or from the norm.
fn quadratic_factor(
    m: &IntPoly,
    kind: WeilKind,
    q: PrimePower,
) -> Result<Vec<LocalPrime>, SlopeError> {
    let p = q.p();
    let disc = m.discriminant();
    debug_assert!(!disc.is_zero(), "irreducible quadratic");
    let (d, _) = squarefree_kernel(&disc);
    let big_d = fundamental_discriminant(&d);
    let chi = kronecker_bigint(&big_d, &BigInt::from(p));
    let v0 = padic::val(&m.constant_term(), p).expect("nonzero constant term") as i64;
    if chi == 1 {
        // Two degree-1 primes; their ord values are the two Newton slopes.
        let polygon = super::newton_polygon(m, p)?;
        let mut ords: Vec<BigRat> = Vec::new();
        for seg in &polygon.segments {
            for _ in 0..seg.length {
                ords.push(seg.slope.clone());
            }
        }
        debug_assert_eq!(ords.len(), 2);
        // For the real kind the involution is trivial, but a split prime
        // cannot occur there (p always ramifies in Q(sqrt(q)) for odd s).
        debug_assert_eq!(kind, WeilKind::ConjugatePair);
        Ok(vec![
            LocalPrime {
                local_degree: 1,
                ord: ords[0].clone(),
                conjugate: 1,
            },
            LocalPrime {
                local_degree: 1,
                ord: ords[1].clone(),
                conjugate: 0,
            },
        ])
    } else {
        // Inert or ramified: a single prime of local degree 2, Galois-stable,
        // so both roots share the valuation v_p(m(0))/2.
        Ok(vec![LocalPrime {
            local_degree: 2,
            ord: BigRat::new(BigInt::from(v0), BigInt::from(2)),
            conjugate: 0,
        }])
    }
}

/// Quartic CM factor: decompose through the real quadratic subfield
/// K+ = Q(beta), beta = pi + q/pi, then analyze the relative quadratic
/// pi^2 - beta pi + q = 0 above each prime of K+.
fn quartic_cm_tower(m: &IntPoly, q: PrimePower) -> Result<Vec<LocalPrime>, SlopeError> {
    let p = q.p();
    let s = q.s() as i64;
    let h = trace_polynomial(m, q).map_err(|_| SlopeError::NonRegularCase {
        detail: format!("quartic {m} is not a conjugate-pair Weil factor"),
    })?;
    debug_assert_eq!(h.deg(), 2);
    let b1 = h.coeff(1);
    let b0 = h.coeff(0);
    let disc_h = &b1 * &b1 - BigInt::from(4) * &b0;
    let (d_plus, c) = squarefree_kernel(&disc_h);
    debug_assert!(d_plus.is_positive(), "trace field is real quadratic");
    let big_d = fundamental_discriminant(&d_plus);
    let chi = kronecker_bigint(&big_d, &BigInt::from(p));

    let mut out: Vec<LocalPrime> = Vec::new();
    if chi == 1 {
        // p splits in K+: two embeddings beta -> Z_p, one per prime of K+.
        // Precision must exceed every valuation we read: v(beta) is bounded
        // by v(N(beta)) = v(b0) and v(delta) by v(Res(h, x^2 - 4q)).
        let res4q = h.resultant(&IntPoly::from_coeffs(vec![
            BigInt::from(-4 * q.q() as i64),
            BigInt::zero(),
            BigInt::one(),
        ]));
        debug_assert!(!res4q.is_zero());
        let prec = (2 * s + 6) as u32
            + padic::val(&b0, p).unwrap_or(0) as u32
            + padic::val(&res4q, p).unwrap_or(0) as u32;
        let modulus = padic::pow_p(p, prec);
        let x0 = padic::sqrt_unit(&d_plus.mod_floor(&modulus), p, prec)
            .expect("split prime makes d+ a p-adic unit square");
        for sign in [1i64, -1] {
            let num = (-&b1 + BigInt::from(sign) * &c * &x0).mod_floor(&modulus);
            let beta = halve_residue(&num, p, prec);
            let vb = padic::val(&beta, p).map(|v| v as i64).unwrap_or(i64::MAX);
            append_fiber_over_qp(&mut out, &beta, vb, q, prec)?;
        }
    } else {
        // One prime q0 of K+ with completion L = Q_p(sqrt(d+)); the
        // normalized valuation of beta there is v_p(N(beta))/2 = v_p(b0)/2.
        let vb2 = padic::val(&b0, p).expect("h(0) nonzero") as i64; // 2 * v(beta)
        if vb2 < s {
            // Distinct root valuations force the relative quadratic to split.
            let ord1 = BigRat::new(BigInt::from(vb2), BigInt::from(2));
            let ord2 = BigRat::from_integer(BigInt::from(s)) - &ord1;
            let base = out.len();
            out.push(LocalPrime {
                local_degree: 2,
                ord: ord1,
                conjugate: base + 1,
            });
            out.push(LocalPrime {
                local_degree: 2,
                ord: ord2,
                conjugate: base,
            });
        } else {
            // Both roots sit at s/2; split iff delta = beta^2 - 4q is a
            // square in L. Work with xi = 4*delta = A + B sqrt(d+), exact.
            let a = &b1 * &b1 + &c * &c * &d_plus - BigInt::from(16 * q.q() as i64);
            let b = BigInt::from(-2) * &b1 * &c;
            let split = is_square_in_quadratic(&a, &b, &d_plus, p);
            let base = out.len();
            if split {
                out.push(LocalPrime {
                    local_degree: 2,
                    ord: rat(s, 2),
                    conjugate: base + 1,
                });
                out.push(LocalPrime {
                    local_degree: 2,
                    ord: rat(s, 2),
                    conjugate: base,
                });
            } else {
                out.push(LocalPrime {
                    local_degree: 4,
                    ord: rat(s, 2),
                    conjugate: base,
                });
            }
        }
    }
    Ok(out)
}

/// Fiber of the relative quadratic t^2 - beta t + q over one embedding
/// K+ -> Q_p: the prime structure follows from the local Newton polygon of
/// that quadratic, with a plain Q_p squareness test in the balanced case.
fn append_fiber_over_qp(
    out: &mut Vec<LocalPrime>,
    beta: &BigInt,
    vb: i64,
    q: PrimePower,
    prec: u32,
) -> Result<(), SlopeError> {
    let p = q.p();
    let s = q.s() as i64;
    let base = out.len();
    if 2 * vb < s {
        // Slopes vb and s - vb differ, so the quadratic splits over Q_p.
        out.push(LocalPrime {
            local_degree: 1,
            ord: rat(vb, 1),
            conjugate: base + 1,
        });
        out.push(LocalPrime {
            local_degree: 1,
            ord: rat(s - vb, 1),
            conjugate: base,
        });
        return Ok(());
    }
    // Balanced case: both roots at s/2; split iff delta is a square in Q_p.
    let modulus = padic::pow_p(p, prec);
    let delta = (beta * beta - BigInt::from(4) * BigInt::from(q.q())).mod_floor(&modulus);
    if delta.is_zero() {
        return Err(SlopeError::NonRegularCase {
            detail: "insufficient precision for the balanced fiber test".into(),
        });
    }
    // The true delta is nonzero with v_p below the precision guard, so the
    // residue determines squareness exactly.
    if padic::is_square(&delta, p) {
        out.push(LocalPrime {
            local_degree: 1,
            ord: rat_halves(s),
            conjugate: base + 1,
        });
        out.push(LocalPrime {
            local_degree: 1,
            ord: rat_halves(s),
            conjugate: base,
        });
    } else {
        out.push(LocalPrime {
            local_degree: 2,
            ord: rat_halves(s),
            conjugate: base,
        });
    }
    Ok(())
}

fn rat_halves(s: i64) -> BigRat {
    BigRat::new(BigInt::from(s), BigInt::from(2))
}

/// Divide a residue mod p^prec by 2 (exactly for p = 2, by a unit inverse
/// otherwise), returning a residue mod p^(prec-1).
fn halve_residue(num: &BigInt, p: u64, prec: u32) -> BigInt {
    if p == 2 {
        assert!(num.is_even(), "algebraic integer image must be 2-integral");
        (num / BigInt::from(2)).mod_floor(&padic::pow_p(2, prec - 1))
    } else {
        let m = padic::pow_p(p, prec);
        let inv2 = BigInt::from(2).extended_gcd(&m).x.mod_floor(&m);
        (num * inv2).mod_floor(&m)
    }
}

/// Exact squareness of xi = a + b sqrt(m0) in L = Q_p(sqrt(m0)), for m0
/// squarefree, positive or negative, and not a square in Q_p. Integer-only.
///
/// The element is given in the {1, sqrt(m0)} basis; valuations come from the
/// norm a^2 - m0 b^2, so the index of Z[sqrt(m0)] in the maximal order never
/// matters for the valuation. Unit extraction switches to a local integral
/// basis where needed (the 2-adic unramified case).
fn is_square_in_quadratic(a: &BigInt, b: &BigInt, m0: &BigInt, p: u64) -> bool {
    debug_assert!(!(a.is_zero() && b.is_zero()));
    let norm = a * a - m0 * b * b;
    debug_assert!(!norm.is_zero(), "xi = 0 or m0 a rational square");
    let vn = padic::val(&norm, p).unwrap() as i64;
    let ramified = is_ramified(m0, p);
    // v_L has v_L(uniformizer) = 1; v_p(N(xi)) = (2/e) v_L(xi).
    let v_l = if ramified { vn } else { vn / 2 };
    if !ramified {
        debug_assert!(vn % 2 == 0, "unramified norms have even valuation");
    }
    if v_l % 2 != 0 {
        return false;
    }
    let w = (v_l / 2) as u32;
    if p == 2 {
        return two_adic_square(a, b, m0, v_l);
    }
    let pb = BigInt::from(p);
    let legendre = |u: &BigInt| -> bool {
        let e = (&pb - 1) / 2;
        u.mod_floor(&pb).modpow(&e, &pb) == BigInt::one()
    };
    if !ramified {
        // Inert, p odd: uniformizer is p, so the unit part is the exact
        // coordinate quotient by p^v_l; squares of units are detected in the
        // residue field F_{p^2}.
        let pw = padic::pow_p(p, v_l as u32);
        let (a1, b1) = (a / &pw, b / &pw);
        residue_square_fp2(&a1, &b1, m0, p)
    } else {
        // Ramified, p odd, pi = sqrt(m0), pi^2 = p * m2 with m2 = m0/p a
        // unit. v_L(a-side) is even and v_L(b-side) odd, so for even v_L the
        // unit residue comes from the a coordinate:
        //   xi = p^w (a1 + b1 sqrt(m0)) = pi^(2w) m2^(-w) (a1 + ...),
        // and xi is a square iff a1 * m2^w is a square mod p.
        let pw = padic::pow_p(p, w);
        let a1 = a / &pw;
        debug_assert!(!a1.mod_floor(&pb).is_zero());
        let m2 = m0 / BigInt::from(p as i64);
        let twist = if w % 2 == 1 { legendre(&m2) } else { true };
        legendre(&a1) == twist
    }
}

fn is_ramified(m0: &BigInt, p: u64) -> bool {
    let pb = BigInt::from(p);
    if m0.mod_floor(&pb).is_zero() {
        return true;
    }
    if p == 2 {
        // Odd nonsquare m0: unramified iff m0 = 5 mod 8 (1 mod 8 would be a
        // 2-adic square, excluded by the caller).
        m0.mod_floor(&BigInt::from(8)) != BigInt::from(5)
    } else {
        false
    }
}

/// Square test for a unit residue in F_{p^2} = F_p[w]/(w^2 - m0), p odd.
fn residue_square_fp2(a: &BigInt, b: &BigInt, m0: &BigInt, p: u64) -> bool {
    let pb = BigInt::from(p);
    let (a, b, m) = (a.mod_floor(&pb), b.mod_floor(&pb), m0.mod_floor(&pb));
    let mut e = (&pb * &pb - BigInt::one()) / BigInt::from(2);
    let mut base = (a, b);
    let mut acc = (BigInt::one(), BigInt::zero());
    let mul = |x: &(BigInt, BigInt), y: &(BigInt, BigInt)| -> (BigInt, BigInt) {
        (
            (&x.0 * &y.0 + &x.1 * &y.1 * &m).mod_floor(&pb),
            (&x.0 * &y.1 + &x.1 * &y.0).mod_floor(&pb),
        )
    };
    while e.is_positive() {
        if e.is_odd() {
            acc = mul(&acc, &base);
        }
        base = mul(&base, &base);
        e /= 2;
    }
    debug_assert!(acc.1.is_zero(), "unit to the (p^2-1)/2 power lands in F_p");
    acc.0 == BigInt::one()
}

/// 2-adic squareness with the Hensel-representative scan: a unit u of O_L is
/// a square iff some x in O_L/4 has v_L(x^2 - u) > 2 e_L.
fn two_adic_square(a: &BigInt, b: &BigInt, m0: &BigInt, v_l: i64) -> bool {
    let ramified = is_ramified(m0, 2);
    if ramified {
        // O_L = Z_2[w], w = sqrt(m0); uniformizer w (m0 even) or 1 + w
        // (m0 = 3 mod 4). Conjugate division by pi brings in the inverse of
        // the odd part of N(pi), a 2-adic unit, so the extraction runs on
        // residues mod 2^prec with one bit consumed per division.
        let (pi_a, pi_b) = if m0.is_even() {
            (BigInt::zero(), BigInt::one())
        } else {
            (BigInt::one(), BigInt::one())
        };
        let n_pi = &pi_a * &pi_a - m0 * &pi_b * &pi_b;
        debug_assert_eq!(padic::val(&n_pi, 2), Some(1));
        let eta = &n_pi / BigInt::from(2); // odd unit
        let mut prec = 8u32 + v_l as u32;
        let modulus = padic::pow_p(2, prec);
        let mut ua = a.mod_floor(&modulus);
        let mut ub = b.mod_floor(&modulus);
        for _ in 0..v_l {
            let m = padic::pow_p(2, prec);
            let inv_eta = eta.extended_gcd(&m).x.mod_floor(&m);
            let ca = ((&ua * &pi_a - &ub * &pi_b * m0) * &inv_eta).mod_floor(&m);
            let cb = ((&ub * &pi_a - &ua * &pi_b) * &inv_eta).mod_floor(&m);
            debug_assert!(ca.is_even() && cb.is_even(), "residues of 2 O_L");
            ua = ca / 2;
            ub = cb / 2;
            prec -= 1;
        }
        // u is now a unit known mod 2^8. Scan x = xa + xb w over O_L/4;
        // threshold 2 e_L = 4, and the residue precision separates
        // valuations up to 4 from 5 and above.
        for xa in 0..4i64 {
            for xb in 0..4i64 {
                let xa = BigInt::from(xa);
                let xb = BigInt::from(xb);
                let da = &xa * &xa + &xb * &xb * m0 - &ua;
                let db = BigInt::from(2) * &xa * &xb - &ub;
                match norm_val_2(&da, &db, m0) {
                    None => return true,
                    Some(v) if v > 4 => return true,
                    _ => {}
                }
            }
        }
        false
    } else {
        // Unramified: the maximal order is Z_2[omega], omega = (1+w)/2,
        // omega^2 = omega + k with k = (m0-1)/4. Convert coordinates, where
        // the valuation is the minimum coordinate valuation.
        let k = (m0 - 1) / 4;
        let (mut ua, mut ub) = (a - b, b * 2); // over {1, omega}
        let pw = padic::pow_p(2, v_l as u32);
        ua /= &pw;
        ub /= &pw;
        // norm(d0 + d1 omega) = d0^2 + d0 d1 - k d1^2; v_L = v_2(norm)/2.
        let norm_omega = |d0: &BigInt, d1: &BigInt| -> Option<u64> {
            padic::val(&(d0 * d0 + d0 * d1 - &k * d1 * d1), 2)
        };
        for xa in 0..4i64 {
            for xb in 0..4i64 {
                let xa = BigInt::from(xa);
                let xb = BigInt::from(xb);
                // (xa + xb omega)^2 = xa^2 + k xb^2 + (2 xa xb + xb^2) omega
                let da = &xa * &xa + &k * &xb * &xb - &ua;
                let db = BigInt::from(2) * &xa * &xb + &xb * &xb - &ub;
                match norm_omega(&da, &db) {
                    None => return true,
                    Some(v) if (v / 2) as i64 > 2 => return true,
                    _ => {}
                }
            }
        }
        false
    }
}

fn norm_val_2(d0: &BigInt, d1: &BigInt, m0: &BigInt) -> Option<u64> {
    padic::val(&(d0 * d0 - m0 * d1 * d1), 2)
}
