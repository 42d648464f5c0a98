//! Per-prime slope data of the Frobenius isocrystal, basicness and
//! supersingularity tests, isogeny equivalence on slope data, Honda-Tate
//! invariants of simple classes, and Newton polygons.
//!
//! For a Weil polynomial f over F_q with q = p^s and an irreducible factor m
//! of f, each prime of Q[t]/(m) above p carries the slope
//! ord(pi)/s in [0, 1], where ord is the p-adic valuation normalized by
//! ord(p) = 1. Slopes pair under the involution pi -> q/pi: paired primes
//! satisfy slope + conjugate slope = 1, and self-paired primes sit at 1/2.

mod local;

use crate::exact::{factor_mod_p, padic, BigRat, IntPoly};
use crate::exact::hensel::lift_factorization;
use crate::weil::{PrimePower, WeilFactor, WeilKind, WeilPolynomial};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub use local::LocalPrime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlopeError {
    #[error("non-regular case: {detail}")]
    NonRegularCase { detail: String },
    #[error("slope data live over different fields")]
    FieldMismatch,
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("conjugate pairing failed: {0}")]
    PairingFailed(String),
    #[error("slope {0} outside [0, 1]")]
    SlopeOutOfRange(BigRat),
}

/// Newton polygon of f at p: the lower convex hull of (i, v_p(a_i)).
///
/// `segments` lists (slope, horizontal length) with slope the p-adic
/// valuation of the corresponding roots, in strictly increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Hull vertices (i, v_p(a_i)) in ascending abscissa order.
    pub vertices: Vec<(usize, u64)>,
    /// (root valuation, number of roots), ascending in valuation.
    pub segments: Vec<PolygonSegment>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonSegment {
    pub slope: BigRat,
    pub length: u32,
}

/// Compute the Newton polygon of f at p. Requires f(0) != 0.
pub fn newton_polygon(f: &IntPoly, p: u64) -> Result<NewtonPolygon, SlopeError> {
    if f.is_zero() || f.constant_term().is_zero() {
        return Err(SlopeError::ZeroConstantTerm);
    }
    let points: Vec<(usize, u64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, padic::val(c, p).unwrap()))
        .collect();
    // Monotone-chain lower hull: keep right turns only.
    let mut hull: Vec<(usize, u64)> = Vec::new();
    for &(x, y) in &points {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // Pop (x2, y2) unless it turns strictly left of (x1,y1)->(x,y).
            let lhs = (y2 as i128 - y1 as i128) * (x as i128 - x1 as i128);
            let rhs = (y as i128 - y1 as i128) * (x2 as i128 - x1 as i128);
            if lhs < rhs {
                break;
            }
            hull.pop();
        }
        hull.push((x, y));
    }
    let mut segments: Vec<PolygonSegment> = hull
        .windows(2)
        .map(|w| {
            let (x1, y1) = w[0];
            let (x2, y2) = w[1];
            PolygonSegment {
                slope: BigRat::new(
                    BigInt::from(y1 as i64 - y2 as i64),
                    BigInt::from((x2 - x1) as i64),
                ),
                length: (x2 - x1) as u32,
            }
        })
        .collect();
    segments.reverse(); // ascending root valuation
    Ok(NewtonPolygon {
        vertices: hull,
        segments,
    })
}

/// One prime of F = Q[t]/(m) above p: the degree of the local field over Q_p
/// and ord(pi) normalized by ord(p) = 1.
pub type PrimeOrd = (u32, BigRat);

/// Decompose the primes of Q[t]/(m) above p and the valuations of the image
/// of t, for monic irreducible m.
///
/// Two methods are attempted: Hensel lifting of the mod-p factorization when
/// m is squarefree mod p, otherwise a one-step Newton-polygon/residual
/// analysis. Inputs whose residual polynomials are inseparable need a deeper
/// ramification analysis and are reported as `NonRegularCase`.
pub fn prime_decomposition(m: &IntPoly, p: u64) -> Result<Vec<PrimeOrd>, SlopeError> {
    assert!(m.is_monic(), "prime_decomposition expects a monic polynomial");
    if m.deg() == 1 {
        let c = -m.constant_term();
        if c.is_zero() {
            return Err(SlopeError::ZeroConstantTerm);
        }
        let v = padic::val(&c, p).unwrap();
        return Ok(vec![(1, BigRat::from_integer(BigInt::from(v)))]);
    }
    if let Some(lifted) = unramified_decomposition(m, p) {
        return Ok(lifted.into_iter().map(|(d, ord, _)| (d, ord)).collect());
    }
    ore_decomposition(m, p)
}

/// Path (a): m squarefree mod p. Returns (local degree, ord, lifted factor).
fn unramified_decomposition(m: &IntPoly, p: u64) -> Option<Vec<(u32, BigRat, IntPoly)>> {
    let fac = factor_mod_p(m, p).ok()?;
    if fac.factors.iter().any(|(_, mult)| *mult > 1) {
        return None;
    }
    let disc = m.discriminant();
    let v_disc = padic::val(&disc, p).expect("squarefree mod p has nonzero disc") as u32;
    debug_assert_eq!(v_disc, 0);
    let v0 = padic::val(&m.constant_term(), p).unwrap_or(0) as u32;
    let precision = 2 * v_disc + v0 + 2;
    if fac.factors.len() == 1 {
        let d = m.deg() as u32;
        return Some(vec![(
            d,
            BigRat::new(BigInt::from(v0), BigInt::from(d)),
            m.clone(),
        )]);
    }
    let factors: Vec<IntPoly> = fac.factors.iter().map(|(g, _)| g.to_int_poly()).collect();
    let lifted = lift_factorization(m, p, &factors, precision).ok()?;
    Some(
        lifted
            .into_iter()
            .map(|g| {
                let d = g.deg() as u32;
                let v = padic::val(&g.constant_term(), p).expect("bounded valuation");
                (d, BigRat::new(BigInt::from(v), BigInt::from(d)), g)
            })
            .collect(),
    )
}

/// Path (b): one-step Newton polygon and residual polynomials.
fn ore_decomposition(m: &IntPoly, p: u64) -> Result<Vec<PrimeOrd>, SlopeError> {
    let polygon = newton_polygon(m, p)?;
    let pb = BigInt::from(p);
    let mut out = Vec::new();
    // Walk hull segments left to right; vertices carry the data.
    for w in polygon.vertices.windows(2) {
        let (i0, u0) = w[0];
        let (i1, u1) = w[1];
        let len = i1 - i0;
        let drop = u0 - u1; // valuation decreases along the hull
        let g = (len as u64).gcd(&drop);
        let (b, a) = if drop == 0 {
            (1u64, 0u64)
        } else {
            (len as u64 / g, drop / g)
        };
        let k = len as u64 / b;
        // Residual polynomial on the segment lattice points.
        let mut coeffs = Vec::with_capacity(k as usize + 1);
        for j in 0..=k {
            let idx = i0 + (j * b) as usize;
            let expected = u0 as i64 - (j * a) as i64;
            debug_assert!(expected >= 0);
            let c = m.coeff(idx);
            let r = if c.is_zero() {
                BigInt::zero()
            } else {
                let v = padic::val(&c, p).unwrap() as i64;
                debug_assert!(v >= expected, "hull lies below all points");
                if v > expected {
                    BigInt::zero()
                } else {
                    (c / pb.pow(expected as u32)).mod_floor(&pb)
                }
            };
            coeffs.push(r);
        }
        let residual = IntPoly::from_coeffs(coeffs);
        let rfac = factor_mod_p(&residual, p).map_err(|e| SlopeError::NonRegularCase {
            detail: format!("residual factorization failed: {e}"),
        })?;
        for (s_poly, mult) in &rfac.factors {
            if *mult > 1 {
                return Err(SlopeError::NonRegularCase {
                    detail: format!(
                        "inseparable residual factor {} (multiplicity {}) on the slope {}/{} segment",
                        s_poly.to_int_poly(),
                        mult,
                        a,
                        b
                    ),
                });
            }
            out.push((
                (b as u32) * s_poly.deg() as u32,
                BigRat::new(BigInt::from(a), BigInt::from(b)),
            ));
        }
    }
    Ok(out)
}

/// One slot of a slope datum: a prime of a field component with its slope,
/// isocrystal rank, and conjugate partner under pi -> q/pi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSlot {
    /// Stable index within the datum (doubling as the prime's identity; two
    /// slots sharing an id would describe a non-isotypic prime).
    pub id: usize,
    /// Index into the component list.
    pub component: usize,
    /// Degree of the local field over Q_p.
    pub local_degree: u32,
    /// ord(pi) / s, in [0, 1].
    pub slope: BigRat,
    /// Isocrystal rank of the component at this prime: local degree times
    /// the multiplicity of the field component in the Weil polynomial.
    pub rank: u32,
    /// id of the conjugate prime (possibly this slot's own id).
    pub conjugate: usize,
}

impl PrimeSlot {
    pub fn is_self_paired(&self) -> bool {
        self.conjugate == self.id
    }
}

/// Slope decomposition of the Frobenius isocrystal of a validated Weil
/// polynomial, one slot per prime of F = prod Q[t]/(m_i) above p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeDatum {
    pub weil: WeilPolynomial,
    /// Distinct irreducible components with multiplicities, canonical order.
    pub components: Vec<(IntPoly, u32)>,
    pub slots: Vec<PrimeSlot>,
}

/// Compute the slope datum of a validated Weil polynomial.
pub fn slope_datum(w: &WeilPolynomial) -> Result<SlopeDatum, SlopeError> {
    let q = w.q();
    let s = BigInt::from(q.s());
    let components: Vec<(IntPoly, u32)> = w
        .irreducible_factors()
        .iter()
        .map(|(f, mult)| (f.poly.clone(), *mult))
        .collect();
    let mut slots: Vec<PrimeSlot> = Vec::new();
    for (ci, (factor, mult)) in w.irreducible_factors().iter().enumerate() {
        let primes = decompose_factor(factor, q)?;
        let base = slots.len();
        // Canonical per-component order: by slope, then local degree; ties
        // keep construction order. Conjugate indices are remapped.
        let mut order: Vec<usize> = (0..primes.len()).collect();
        order.sort_by(|&x, &y| {
            (&primes[x].ord, primes[x].local_degree)
                .cmp(&(&primes[y].ord, primes[y].local_degree))
        });
        let mut position = vec![0usize; primes.len()];
        for (new_pos, &old) in order.iter().enumerate() {
            position[old] = new_pos;
        }
        for &old in &order {
            let pr = &primes[old];
            let slope = &pr.ord / BigRat::from_integer(s.clone());
            if slope < BigRat::zero() || slope > BigRat::one() {
                return Err(SlopeError::SlopeOutOfRange(slope));
            }
            slots.push(PrimeSlot {
                id: base + position[old],
                component: ci,
                local_degree: pr.local_degree,
                slope,
                rank: pr.local_degree * mult,
                conjugate: base + position[pr.conjugate],
            });
        }
        let tail = &mut slots[base..];
        tail.sort_by_key(|slot| slot.id);
    }
    Ok(SlopeDatum {
        weil: w.clone(),
        components,
        slots,
    })
}

/// Route an irreducible Weil factor to the exact decomposition that covers
/// it: degrees 1, 2, 4 always succeed; higher degrees succeed when p is
/// unramified in the order Z[t]/(m).
fn decompose_factor(f: &WeilFactor, q: PrimePower) -> Result<Vec<LocalPrime>, SlopeError> {
    let d = f.poly.deg();
    if matches!(d, 1 | 2 | 4) {
        return local::decompose_weil_factor(f, q);
    }
    if let Some(lifted) = unramified_decomposition(&f.poly, q.p()) {
        return pair_by_reciprocal(lifted, q);
    }
    Err(SlopeError::NonRegularCase {
        detail: format!("degree-{d} factor is ramified beyond the supported analysis"),
    })
}

/// Conjugate pairing for the unramified path: the factor carrying q/pi is
/// the one matching the reciprocal transform t^deg g(q/t) / g(0), detected
/// at the precision that separates the lifted factors.
fn pair_by_reciprocal(
    lifted: Vec<(u32, BigRat, IntPoly)>,
    q: PrimePower,
) -> Result<Vec<LocalPrime>, SlopeError> {
    let p = q.p();
    let qb = BigInt::from(q.q());
    let n = lifted.len();
    let mut conj = vec![usize::MAX; n];
    for j in 0..n {
        let (dj, _, ref gj) = lifted[j];
        // R_j = t^d g_j(q/t) = sum_i g_i q^i t^(d-i); equals g_j(0) * partner.
        let rj = IntPoly::from_coeffs(
            (0..=dj as usize)
                .rev()
                .map(|i| gj.coeff(i) * qb.pow(i as u32))
                .collect(),
        );
        let g0 = gj.constant_term();
        let v0 = padic::val(&g0, p).unwrap_or(0) as u32;
        let test_mod = padic::pow_p(p, v0 + 1);
        let mut partner = None;
        for (k, (dk, _, gk)) in lifted.iter().enumerate() {
            if *dk != dj {
                continue;
            }
            let diff = &rj - &gk.scale(&g0);
            if diff
                .coeffs()
                .iter()
                .all(|c| c.mod_floor(&test_mod).is_zero())
            {
                partner = Some(k);
                break;
            }
        }
        conj[j] =
            partner.ok_or_else(|| SlopeError::PairingFailed(format!("factor {gj}")))?;
    }
    Ok(lifted
        .into_iter()
        .enumerate()
        .map(|(j, (d, ord, _))| LocalPrime {
            local_degree: d,
            ord,
            conjugate: conj[j],
        })
        .collect())
}

/// Isotypicity witnesses per prime: the multiset of slopes seen on each
/// prime id. Frobenius-generated data always carries one slope per prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicnessReport {
    pub basic: bool,
    pub witnesses: Vec<IsotypicityWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotypicityWitness {
    pub component: usize,
    pub prime_id: usize,
    pub slopes: Vec<BigRat>,
}

/// Check that every prime carries a single slope. True for every slope datum
/// computed from a Weil polynomial; the operation exists to make the
/// criterion executable and to vet hand-assembled data.
pub fn is_basic(d: &SlopeDatum) -> BasicnessReport {
    let mut witnesses: Vec<IsotypicityWitness> = Vec::new();
    for slot in &d.slots {
        match witnesses
            .iter_mut()
            .find(|w| w.component == slot.component && w.prime_id == slot.id)
        {
            Some(w) => {
                if !w.slopes.contains(&slot.slope) {
                    w.slopes.push(slot.slope.clone());
                }
            }
            None => witnesses.push(IsotypicityWitness {
                component: slot.component,
                prime_id: slot.id,
                slopes: vec![slot.slope.clone()],
            }),
        }
    }
    let basic = witnesses.iter().all(|w| w.slopes.len() == 1);
    BasicnessReport { basic, witnesses }
}

/// True iff every slope equals 1/2.
pub fn is_supersingular(d: &SlopeDatum) -> bool {
    let half = BigRat::new(BigInt::one(), BigInt::from(2));
    d.slots.iter().all(|slot| slot.slope == half)
}

/// True iff every slope is 0 or 1.
pub fn is_ordinary(d: &SlopeDatum) -> bool {
    d.slots
        .iter()
        .all(|slot| slot.slope.is_zero() || slot.slope.is_one())
}

/// Slope-data isogeny criterion: equal slopes and equal ranks at every
/// prime, compared under the canonical prime labeling. Requires both data to
/// live over the same field (identical ordered component polynomials).
pub fn isogeny_equivalent(d1: &SlopeDatum, d2: &SlopeDatum) -> Result<bool, SlopeError> {
    let polys1: Vec<&IntPoly> = d1.components.iter().map(|(m, _)| m).collect();
    let polys2: Vec<&IntPoly> = d2.components.iter().map(|(m, _)| m).collect();
    if polys1 != polys2 || d1.weil.q().p() != d2.weil.q().p() {
        return Err(SlopeError::FieldMismatch);
    }
    if d1.slots.len() != d2.slots.len() {
        return Ok(false);
    }
    Ok(d1
        .slots
        .iter()
        .zip(&d2.slots)
        .all(|(a, b)| a.component == b.component && a.slope == b.slope && a.rank == b.rank))
}

/// Tag of a place of F in a Honda-Tate record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Place {
    /// Finite place above p, indexed like the slots.
    Finite(usize),
    /// Real archimedean place.
    Real(usize),
}

/// Honda-Tate record of the simple isogeny class attached to an irreducible
/// Weil factor: local invariants, the index e, and the dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleIsogenyClass {
    pub factor: WeilFactor,
    pub field_degree: u32,
    /// Invariants in [0, 1): fractional parts of slope * local degree at the
    /// finite places over p, and 1/2 at each real place.
    pub local_invariants: Vec<(Place, BigRat)>,
    /// lcm of the denominators of the invariants.
    pub e: u32,
    /// e * [F:Q] / 2.
    pub dim: u32,
    /// (slope, rank in the simple class) per prime over p.
    pub slopes: Vec<(BigRat, u32)>,
    /// Marks pi = +-sqrt(q) rational: the class whose endomorphism algebra
    /// is the quaternion algebra ramified at p and infinity, excluded from
    /// polarized settings.
    pub excluded_polarized_case: bool,
}

/// Compute the Honda-Tate invariants of the simple class of an irreducible
/// Weil factor.
pub fn honda_tate(f: &WeilFactor, q: PrimePower) -> Result<SimpleIsogenyClass, SlopeError> {
    let primes = decompose_factor(f, q)?;
    let s = BigInt::from(q.s());
    let field_degree = f.poly.deg() as u32;
    let mut invariants: Vec<(Place, BigRat)> = Vec::new();
    let mut slopes: Vec<(BigRat, u32)> = Vec::new();
    for (idx, pr) in primes.iter().enumerate() {
        let slope = &pr.ord / BigRat::from_integer(s.clone());
        let inv = &slope * BigRat::from_integer(BigInt::from(pr.local_degree));
        let frac = &inv - BigRat::from_integer(inv.floor().to_integer());
        invariants.push((Place::Finite(idx), frac));
        slopes.push((slope, pr.local_degree));
    }
    let real_places = match f.kind {
        WeilKind::Rational => 1,
        WeilKind::Real => 2,
        WeilKind::ConjugatePair => 0,
    };
    for r in 0..real_places {
        invariants.push((
            Place::Real(r),
            BigRat::new(BigInt::one(), BigInt::from(2)),
        ));
    }
    let mut e = BigInt::one();
    for (_, inv) in &invariants {
        e = e.lcm(inv.denom());
    }
    let e = e.to_u32().expect("index fits u32");
    let dim2 = e * field_degree;
    debug_assert!(dim2 % 2 == 0, "e [F:Q] is even");
    for entry in slopes.iter_mut() {
        entry.1 *= e;
    }
    Ok(SimpleIsogenyClass {
        factor: f.clone(),
        field_degree,
        local_invariants: invariants,
        e,
        dim: dim2 / 2,
        slopes,
        excluded_polarized_case: f.kind == WeilKind::Rational,
    })
}

/// Euler phi by trial factorization.
fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// A uniform exponent n such that the n-th power of Frobenius of any basic
/// g-dimensional polarized abelian variety with the given slope data lies in
/// the Frobenius field: the lcm of all m with phi(m) <= 4g^2 (orders of
/// roots of unity in an algebra of dimension at most 4g^2).
pub fn frobenius_power_bound(g: u32) -> BigInt {
    assert!(g >= 1);
    let budget = 4 * (g as u64) * (g as u64);
    // phi(m) >= sqrt(m/2), so m <= 2 phi(m)^2 bounds the scan.
    let cap = 2 * budget * budget + 2;
    let mut acc = BigInt::one();
    for m in 1..=cap {
        if euler_phi(m) <= budget {
            acc = acc.lcm(&BigInt::from(m));
        }
    }
    acc
}

#[cfg(test)]
mod tests;
