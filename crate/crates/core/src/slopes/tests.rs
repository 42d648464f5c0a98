use super::*;
use crate::weil::{classify_factor, enumerate_weil, validate_weil};

fn pp(p: u64, s: u32) -> PrimePower {
    PrimePower::new(p, s).unwrap()
}

fn poly(coeffs: &[i64]) -> IntPoly {
    IntPoly::from_descending_i64(coeffs)
}

fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

fn factor(coeffs: &[i64], q: PrimePower) -> WeilFactor {
    classify_factor(&poly(coeffs), q).unwrap()
}

#[test]
fn polygon_of_ramified_quadratic() {
    // t^2 - p: hull from (0,1) to (2,0), one segment of slope 1/2.
    for p in [2u64, 3, 5, 13] {
        let np = newton_polygon(&poly(&[1, 0, -(p as i64)]), p).unwrap();
        assert_eq!(np.vertices, vec![(0, 1), (2, 0)]);
        assert_eq!(
            np.segments,
            vec![PolygonSegment {
                slope: rat(1, 2),
                length: 2
            }]
        );
    }
}

#[test]
fn polygon_of_supersingular_square_field() {
    // t^2 - pt + p^2: root valuations both 1.
    let np = newton_polygon(&poly(&[1, -7, 49]), 7).unwrap();
    assert_eq!(
        np.segments,
        vec![PolygonSegment {
            slope: rat(1, 1),
            length: 2
        }]
    );
}

#[test]
fn polygon_of_ordinary_quadratic() {
    // t^2 - t + 2 at p = 2: slopes 0 and 1.
    let np = newton_polygon(&poly(&[1, -1, 2]), 2).unwrap();
    assert_eq!(np.vertices, vec![(0, 1), (1, 0), (2, 0)]);
    assert_eq!(
        np.segments,
        vec![
            PolygonSegment {
                slope: rat(0, 1),
                length: 1
            },
            PolygonSegment {
                slope: rat(1, 1),
                length: 1
            },
        ]
    );
}

#[test]
fn polygon_rejects_zero_constant_term() {
    assert_eq!(
        newton_polygon(&poly(&[1, 1, 0]), 2),
        Err(SlopeError::ZeroConstantTerm)
    );
}

#[test]
fn decomposition_ramified() {
    // t^2 - p: one prime, ramified, ord = 1/2.
    for p in [2u64, 5] {
        let primes = prime_decomposition(&poly(&[1, 0, -(p as i64)]), p).unwrap();
        assert_eq!(primes, vec![(2, rat(1, 2))]);
    }
}

#[test]
fn decomposition_split_supersingular() {
    // t^2 - 7t + 49: 7 = 1 mod 3 splits in Q(sqrt(-3)); both ords 1.
    let primes = prime_decomposition(&poly(&[1, -7, 49]), 7).unwrap();
    assert_eq!(primes, vec![(1, rat(1, 1)), (1, rat(1, 1))]);
}

#[test]
fn decomposition_ordinary() {
    // t^2 - t + 2 at 2: Hensel path, ords 0 and 1.
    let mut primes = prime_decomposition(&poly(&[1, -1, 2]), 2).unwrap();
    primes.sort_by(|a, b| a.1.cmp(&b.1));
    assert_eq!(primes, vec![(1, rat(0, 1)), (1, rat(1, 1))]);
}

#[test]
fn decomposition_inert() {
    // t^2 - 2t + 4 at 2: 2 is inert in Q(sqrt(-3)); single prime, ord 1.
    let primes = prime_decomposition(&poly(&[1, -2, 4]), 2).unwrap();
    assert_eq!(primes, vec![(2, rat(1, 1))]);
}

#[test]
fn one_step_method_reports_nonregular_input() {
    // t^2 + 4 at p = 2 (pi = 2i in Q(i)): the residual polynomial on the
    // slope-1 segment is (y+1)^2, beyond the one-step analysis.
    let err = prime_decomposition(&poly(&[1, 0, 4]), 2).unwrap_err();
    assert!(matches!(err, SlopeError::NonRegularCase { .. }));
}

#[test]
fn weil_route_handles_the_nonregular_quadratic() {
    // The same polynomial routed through the Weil-factor decomposition
    // succeeds: Q(i) has one (ramified) prime over 2, ord(2i) = 1, slope 1/2.
    let w = validate_weil(&poly(&[1, 0, 4]), pp(2, 2)).unwrap();
    let d = slope_datum(&w).unwrap();
    assert_eq!(d.slots.len(), 1);
    assert_eq!(d.slots[0].slope, rat(1, 2));
    assert_eq!(d.slots[0].local_degree, 2);
    assert!(d.slots[0].is_self_paired());
}

#[test]
fn weil_route_handles_nonregular_quartics() {
    // t^4 + 16 over q = 4: pi = 2 zeta_8, one totally ramified prime of
    // local degree 4 in Q(zeta_8).
    let w = validate_weil(&poly(&[1, 0, 0, 0, 16]), pp(2, 2)).unwrap();
    let d = slope_datum(&w).unwrap();
    assert_eq!(d.slots.len(), 1);
    assert_eq!(d.slots[0].local_degree, 4);
    assert_eq!(d.slots[0].slope, rat(1, 2));
    assert!(d.slots[0].is_self_paired());

    // t^4 - 4t^2 + 16 over q = 4: pi = 2 zeta_12, one prime with e = f = 2
    // in Q(zeta_12).
    let w = validate_weil(&poly(&[1, 0, -4, 0, 16]), pp(2, 2)).unwrap();
    let d = slope_datum(&w).unwrap();
    assert_eq!(d.slots.len(), 1);
    assert_eq!(d.slots[0].local_degree, 4);
    assert_eq!(d.slots[0].slope, rat(1, 2));

    // t^4 + 3t^2 + 9 over q = 3: pi = sqrt(3) zeta_6 generates Q(zeta_12),
    // where 3 has e = f = 2.
    let w = validate_weil(&poly(&[1, 0, 3, 0, 9]), pp(3, 1)).unwrap();
    let d = slope_datum(&w).unwrap();
    assert_eq!(d.slots.len(), 1);
    assert_eq!(d.slots[0].local_degree, 4);
    assert_eq!(d.slots[0].slope, rat(1, 2));
}

#[test]
fn slope_datum_examples() {
    // t^2 - p: single self-paired slot at 1/2 with rank 2.
    let w = validate_weil(&poly(&[1, 0, -5]), pp(5, 1)).unwrap();
    let d = slope_datum(&w).unwrap();
    assert_eq!(d.slots.len(), 1);
    assert_eq!(d.slots[0].slope, rat(1, 2));
    assert_eq!(d.slots[0].rank, 2);
    assert!(d.slots[0].is_self_paired());
    assert!(is_supersingular(&d));

    // t^2 - t + 2: ordinary, slots at 0 and 1, conjugate to each other.
    let w = validate_weil(&poly(&[1, -1, 2]), pp(2, 1)).unwrap();
    let d = slope_datum(&w).unwrap();
    assert_eq!(d.slots.len(), 2);
    assert_eq!(d.slots[0].slope, rat(0, 1));
    assert_eq!(d.slots[1].slope, rat(1, 1));
    assert_eq!(d.slots[0].conjugate, d.slots[1].id);
    assert_eq!(d.slots[1].conjugate, d.slots[0].id);
    assert!(!is_supersingular(&d));
    assert!(is_ordinary(&d));

    // The square (t^2 - t + 2)^2 keeps the slopes and doubles the ranks.
    let sq = &poly(&[1, -1, 2]) * &poly(&[1, -1, 2]);
    let w2 = validate_weil(&sq, pp(2, 1)).unwrap();
    let d2 = slope_datum(&w2).unwrap();
    assert_eq!(d2.slots.len(), 2);
    assert_eq!(d2.slots[0].rank, 2);
    assert_eq!(d2.slots[1].rank, 2);
}

#[test]
fn basicness_of_frobenius_data_and_a_forged_counterexample() {
    let w = validate_weil(&(&poly(&[1, -1, 2]) * &poly(&[1, 0, 2])), pp(2, 1)).unwrap();
    let d = slope_datum(&w).unwrap();
    // Components Q(sqrt(-7)) x Q(sqrt(-2)): three primes, each one slope.
    assert_eq!(d.slots.len(), 3);
    assert!(is_basic(&d).basic);

    // Forge a datum with two slopes on one prime: not basic.
    let mut forged = d.clone();
    let mut extra = forged.slots[0].clone();
    extra.slope = rat(1, 1);
    forged.slots.push(extra);
    let report = is_basic(&forged);
    assert!(!report.basic);
}

#[test]
fn supersingular_examples() {
    let w = validate_weil(&poly(&[1, -7, 49]), pp(7, 2)).unwrap();
    assert!(is_supersingular(&slope_datum(&w).unwrap()));
    let w = validate_weil(&poly(&[1, -1, 2]), pp(2, 1)).unwrap();
    assert!(!is_supersingular(&slope_datum(&w).unwrap()));
}

#[test]
fn equivalence_examples() {
    let base = validate_weil(&poly(&[1, 0, -5]), pp(5, 1)).unwrap();
    let d1 = slope_datum(&base).unwrap();
    let d2 = slope_datum(&base).unwrap();
    assert!(isogeny_equivalent(&d1, &d2).unwrap());

    // (t^2-t+2)^2 vs t^2-t+2: same field, different ranks.
    let m = poly(&[1, -1, 2]);
    let w1 = validate_weil(&m, pp(2, 1)).unwrap();
    let w2 = validate_weil(&(&m * &m), pp(2, 1)).unwrap();
    let e1 = slope_datum(&w1).unwrap();
    let e2 = slope_datum(&w2).unwrap();
    assert!(!isogeny_equivalent(&e1, &e2).unwrap());

    // Different fields: mismatch error.
    let other = validate_weil(&poly(&[1, 0, 2]), pp(2, 1)).unwrap();
    let e3 = slope_datum(&other).unwrap();
    assert_eq!(
        isogeny_equivalent(&e1, &e3).unwrap_err(),
        SlopeError::FieldMismatch
    );
}

#[test]
fn honda_tate_examples() {
    // t^2 - p: totally real field, e = 2, a simple abelian surface.
    let cls = honda_tate(&factor(&[1, 0, -2], pp(2, 1)), pp(2, 1)).unwrap();
    assert_eq!(cls.field_degree, 2);
    assert_eq!(cls.e, 2);
    assert_eq!(cls.dim, 2);
    assert!(!cls.excluded_polarized_case);
    let real_halves = cls
        .local_invariants
        .iter()
        .filter(|(p, v)| matches!(p, Place::Real(_)) && *v == rat(1, 2))
        .count();
    assert_eq!(real_halves, 2);

    // t^2 - t + 2: ordinary elliptic class, e = 1, dim 1.
    let cls = honda_tate(&factor(&[1, -1, 2], pp(2, 1)), pp(2, 1)).unwrap();
    assert_eq!(cls.e, 1);
    assert_eq!(cls.dim, 1);

    // t - 2 over q = 4: the excluded supersingular elliptic class.
    let cls = honda_tate(&factor(&[1, -2], pp(2, 2)), pp(2, 2)).unwrap();
    assert_eq!(cls.field_degree, 1);
    assert_eq!(cls.e, 2);
    assert_eq!(cls.dim, 1);
    assert!(cls.excluded_polarized_case);

    // t^2 - 7t + 49 over q = 49: invariants 1/2 at the two split primes,
    // e = 2, a simple supersingular surface.
    let cls = honda_tate(&factor(&[1, -7, 49], pp(7, 2)), pp(7, 2)).unwrap();
    assert_eq!(cls.e, 2);
    assert_eq!(cls.dim, 2);
    let finite_halves = cls
        .local_invariants
        .iter()
        .filter(|(p, v)| matches!(p, Place::Finite(_)) && *v == rat(1, 2))
        .count();
    assert_eq!(finite_halves, 2);
}

#[test]
fn frobenius_bound_values() {
    // phi(m) <= 4 exactly for m in {1,...,6, 8, 10, 12}; lcm = 120. The
    // oracle recomputes the set by scan.
    let mut expect = BigInt::one();
    for m in 1u64..=34 {
        let phi = super::euler_phi(m);
        if phi <= 4 {
            expect = expect.lcm(&BigInt::from(m));
        }
    }
    assert_eq!(expect, BigInt::from(120));
    assert_eq!(frobenius_power_bound(1), BigInt::from(120));

    // Monotonicity: bound(2) is a multiple of bound(1).
    let b1 = frobenius_power_bound(1);
    let b2 = frobenius_power_bound(2);
    assert!((&b2 % &b1).is_zero());
}

#[test]
fn sweep_slopes_pair_and_stay_basic() {
    // Narrow in-module sweep (the full one lives in the integration suite):
    // q in {2, 3, 4}, g in {1, 2}.
    for (q, g) in [
        (pp(2, 1), 1u32),
        (pp(3, 1), 1),
        (pp(2, 2), 1),
        (pp(2, 1), 2),
        (pp(2, 2), 2),
    ] {
        for w in enumerate_weil(q, g).unwrap() {
            let d = slope_datum(&w).expect("sweep decomposes");
            assert!(is_basic(&d).basic, "{}", w.poly());
            for slot in &d.slots {
                let partner = &d.slots[slot.conjugate];
                assert_eq!(
                    &slot.slope + &partner.slope,
                    BigRat::one(),
                    "pairing fails for {} slot {:?}",
                    w.poly(),
                    slot
                );
                assert_eq!(partner.conjugate, slot.id, "pairing is an involution");
                assert_eq!(partner.rank, slot.rank);
                if slot.is_self_paired() {
                    assert_eq!(slot.slope, rat(1, 2));
                }
            }
            // Newton-polygon consistency: rank-weighted s*slope multiset
            // equals the polygon segment multiset of the full polynomial.
            let np = newton_polygon(w.poly(), q.p()).unwrap();
            let mut from_slots: Vec<BigRat> = Vec::new();
            for slot in &d.slots {
                let v = &slot.slope * BigRat::from_integer(BigInt::from(q.s()));
                for _ in 0..slot.rank {
                    from_slots.push(v.clone());
                }
            }
            from_slots.sort();
            let mut from_polygon: Vec<BigRat> = Vec::new();
            for seg in &np.segments {
                for _ in 0..seg.length {
                    from_polygon.push(seg.slope.clone());
                }
            }
            from_polygon.sort();
            assert_eq!(from_slots, from_polygon, "{}", w.poly());
        }
    }
}
