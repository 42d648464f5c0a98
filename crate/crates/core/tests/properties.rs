//! Property and oracle tests across the crate: factorization round-trips,
//! Sturm counts against an interval-bisection oracle, slope symmetry over
//! the full enumeration sweep, and the equivalence-relation laws of the
//! slope-data isogeny criterion.

use basicav_core::exact::{
    count_real_roots, factor_mod_p, factor_over_z, BigRat, IntPoly, ModPoly,
};
use basicav_core::slopes::{
    is_basic, isogeny_equivalent, newton_polygon, slope_datum, SlopeDatum,
};
use basicav_core::weil::{enumerate_weil, PrimePower};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn poly_strategy(max_deg: usize, max_coeff: i64) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-max_coeff..=max_coeff, 1..=max_deg + 1)
        .prop_map(|coeffs| IntPoly::from_i64(&coeffs))
        .prop_filter("nonzero", |f| !f.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn factor_over_z_roundtrips(f in poly_strategy(8, 50)) {
        let fac = factor_over_z(&f).unwrap();
        prop_assert_eq!(fac.product(), f.clone());
        // Factors are primitive with positive leading coefficient.
        for (g, _) in &fac.factors {
            prop_assert!(g.leading().is_positive());
            prop_assert_eq!(g.content(), BigInt::one());
        }
    }

    #[test]
    fn factor_mod_p_roundtrips(f in poly_strategy(8, 50), p_idx in 0usize..4) {
        let p = [2u64, 3, 5, 7][p_idx];
        if (f.leading() % BigInt::from(p)).is_zero() {
            return Ok(());
        }
        let fac = factor_mod_p(&f, p).unwrap();
        prop_assert_eq!(fac.product(), ModPoly::from_int_poly(&f, p));
    }

    #[test]
    fn gcd_divides_both(a in poly_strategy(6, 20), b in poly_strategy(6, 20)) {
        let g = a.gcd(&b);
        if !g.is_zero() {
            prop_assert!(a.div_exact(&g).unwrap().is_some());
            prop_assert!(b.div_exact(&g).unwrap().is_some());
        }
    }
}

/// Deterministic miniature RNG for the bisection-oracle comparison.
struct Lcg(u64);

impl Lcg {
    fn next_range(&mut self, lo: i64, hi: i64) -> i64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let span = (hi - lo + 1) as u64;
        lo + ((self.0 >> 33) % span) as i64
    }
}

/// Bisection oracle: exact count of distinct real roots of a squarefree f
/// in (lo, hi], splitting intervals until each is narrower than the minimal
/// root separation, which is bounded through the discriminant.
fn bisection_count(f: &IntPoly, lo: &BigRat, hi: &BigRat) -> usize {
    // Mignotte-style separation bound: sep > sqrt(3/(n^(n+2))) / norm^(n-1).
    // Any positive rational below the true separation works; overshooting
    // the denominator only makes the oracle slower.
    let n = f.deg() as u32;
    let norm2 = f.norm2_squared();
    let denom_sq = BigInt::from(n).pow(n + 2) * norm2.pow(n.saturating_sub(1)) + 1;
    // sep_lower = 1 / (denom_sq) is comfortably below sqrt of anything above.
    let sep = BigRat::new(BigInt::one(), denom_sq);

    fn sign_at(f: &IntPoly, x: &BigRat) -> i32 {
        match f.sign_at_rat(x) {
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 1,
        }
    }

    // Lipschitz bound for f on [lo, hi]: sum |a_i| i M^(i-1) with
    // M = max(|lo|, |hi|, 1); clamping at 1 keeps the powers an upper bound.
    fn lipschitz(f: &IntPoly, lo: &BigRat, hi: &BigRat) -> BigRat {
        let mut m = if lo.abs() > hi.abs() { lo.abs() } else { hi.abs() };
        if m < BigRat::one() {
            m = BigRat::one();
        }
        let mut bound = BigRat::zero();
        let mut pow = BigRat::one(); // M^(i-1) when the loop reads index i
        for (i, c) in f.coeffs().iter().enumerate().skip(1) {
            bound += BigRat::from_integer(c.abs() * BigInt::from(i)) * &pow;
            pow *= &m;
        }
        bound
    }

    fn rec(f: &IntPoly, lo: &BigRat, hi: &BigRat, sep: &BigRat) -> usize {
        let sl = sign_at(f, lo);
        let sh = sign_at(f, hi);
        let width = hi - lo;
        if &width < sep {
            // At most one root inside; count it by sign change or an exact
            // hit at the right endpoint.
            if sh == 0 {
                return 1;
            }
            return usize::from(sl != 0 && sl != sh);
        }
        let mid = (lo + hi) / BigRat::from_integer(BigInt::from(2));
        // Mean-value prune: |f(mid)| > L * width / 2 keeps f away from zero
        // on the whole interval, so only the right endpoint could count.
        let fmid = f.eval_rat(&mid).abs();
        let margin = lipschitz(f, lo, hi) * &width / BigRat::from_integer(BigInt::from(2));
        if fmid > margin {
            return usize::from(sh == 0);
        }
        rec(f, lo, &mid, sep) + rec(f, &mid, hi, sep)
    }
    rec(f, lo, hi, &sep)
}

#[test]
fn sturm_agrees_with_bisection_oracle() {
    // 200 random cubics and quartics with coefficients in [-50, 50].
    let mut rng = Lcg(0x5eed);
    let mut done = 0usize;
    while done < 200 {
        let deg = if done % 2 == 0 { 3 } else { 4 };
        let mut coeffs: Vec<i64> = (0..=deg).map(|_| rng.next_range(-50, 50)).collect();
        if coeffs[deg] == 0 {
            coeffs[deg] = 1;
        }
        let f = IntPoly::from_i64(&coeffs).squarefree_part();
        if f.degree().map_or(true, |d| d < 2) {
            continue;
        }
        let lo = BigRat::from_integer(BigInt::from(rng.next_range(-60, -1)));
        let hi = BigRat::from_integer(BigInt::from(rng.next_range(0, 60)));
        let got = count_real_roots(&f, &lo, &hi);
        let expect = bisection_count(&f, &lo, &hi);
        assert_eq!(got.count, expect, "f = {f}, window ({lo}, {hi}]");
        // The all-real flag agrees with a full-line bisection count.
        let bound = BigRat::from_integer(f.height() + BigInt::one());
        let all = bisection_count(&f, &(-&bound), &bound);
        assert_eq!(got.all_real, all == f.deg(), "f = {f}");
        done += 1;
    }
}

fn pp(q: u64) -> PrimePower {
    PrimePower::from_q(q).unwrap()
}

#[test]
fn slope_symmetry_across_the_enumeration_sweep() {
    // Slope multisets (weighted by rank) are symmetric under x -> 1 - x,
    // paired slots sum to 1, self-paired slots sit at 1/2, and the basic
    // criterion holds for every enumerated class.
    let half = BigRat::new(BigInt::one(), BigInt::from(2));
    for q in [2u64, 3, 4, 5, 8, 9] {
        for g in [1u32, 2] {
            for w in enumerate_weil(pp(q), g).unwrap() {
                let d = slope_datum(&w).expect("sweep decomposes");
                assert!(is_basic(&d).basic);
                let mut weighted: Vec<BigRat> = Vec::new();
                for slot in &d.slots {
                    let partner = &d.slots[slot.conjugate];
                    assert_eq!(&slot.slope + &partner.slope, BigRat::one());
                    if slot.is_self_paired() {
                        assert_eq!(slot.slope, half);
                    }
                    for _ in 0..slot.rank {
                        weighted.push(slot.slope.clone());
                    }
                }
                let mut reflected: Vec<BigRat> =
                    weighted.iter().map(|x| BigRat::one() - x).collect();
                weighted.sort();
                reflected.sort();
                assert_eq!(weighted, reflected, "{}", w.poly());
                assert_eq!(weighted.len() as u32, 2 * g, "{}", w.poly());
            }
        }
    }
}

#[test]
fn newton_polygon_matches_slope_data_across_sweep() {
    for q in [2u64, 3, 4, 5, 8, 9] {
        for g in [1u32, 2] {
            for w in enumerate_weil(pp(q), g).unwrap() {
                let d = slope_datum(&w).unwrap();
                let np = newton_polygon(w.poly(), pp(q).p()).unwrap();
                let s = BigRat::from_integer(BigInt::from(pp(q).s()));
                let mut from_slots: Vec<BigRat> = Vec::new();
                for slot in &d.slots {
                    for _ in 0..slot.rank {
                        from_slots.push(&slot.slope * &s);
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
}

#[test]
fn honda_tate_dimensions_assemble() {
    // For every enumerated class the simple dimensions weighted by
    // multiplicity/e sum to g, equivalently sum n_i e_i [F_i:Q] = 2g.
    for q in [2u64, 3, 4, 5] {
        for g in [1u32, 2] {
            for w in enumerate_weil(pp(q), g).unwrap() {
                let mut total = 0u32;
                for (f, mult) in w.irreducible_factors() {
                    let cls = basicav_core::slopes::honda_tate(f, pp(q)).unwrap();
                    assert_eq!(mult % cls.e, 0, "{}", w.poly());
                    total += (mult / cls.e) * cls.dim;
                }
                assert_eq!(total, g, "{}", w.poly());
            }
        }
    }
}

#[test]
fn isogeny_equivalence_is_an_equivalence_relation() {
    // Group the q = 4, g <= 2 family by field; within each group the
    // criterion must be reflexive, symmetric, and transitive.
    let mut data: Vec<SlopeDatum> = Vec::new();
    for g in [1u32, 2] {
        for w in enumerate_weil(pp(4), g).unwrap() {
            data.push(slope_datum(&w).unwrap());
        }
    }
    let key = |d: &SlopeDatum| -> Vec<Vec<BigInt>> {
        d.components
            .iter()
            .map(|(m, _)| m.descending_coeffs())
            .collect()
    };
    for a in &data {
        assert!(isogeny_equivalent(a, a).unwrap(), "reflexive");
    }
    for a in &data {
        for b in &data {
            if key(a) != key(b) {
                assert!(isogeny_equivalent(a, b).is_err());
                continue;
            }
            let ab = isogeny_equivalent(a, b).unwrap();
            let ba = isogeny_equivalent(b, a).unwrap();
            assert_eq!(ab, ba, "symmetric");
            for c in &data {
                if key(b) == key(c) {
                    let bc = isogeny_equivalent(b, c).unwrap();
                    let ac = isogeny_equivalent(a, c).unwrap();
                    if ab && bc {
                        assert!(ac, "transitive");
                    }
                }
            }
        }
    }
}
