//! Exact-arithmetic toolkit for isogeny classes of abelian varieties over
//! finite fields.
//!
//! Everything here is computed over arbitrary-precision integers and
//! rationals; no operation accepts or returns a floating-point value. The
//! crate is organized around the pipeline
//!
//!   q-Weil polynomial  →  per-prime Frobenius slopes  →  invariants
//!
//! with a quadratic-field toolkit and mass-formula module on the side:
//!
//! - [`exact`]: big-integer polynomials, Sturm chains, factorization over
//!   `F_p` and over `Z` (squarefree split, Hensel lifting, subset
//!   recombination).
//! - [`weil`]: validation, classification and enumeration of q-Weil
//!   polynomials, certified by exact root-location arguments.
//! - [`slopes`]: Newton polygons, prime decomposition of `Q(pi)` above p,
//!   slope data of the Frobenius isocrystal, basicness and supersingularity
//!   tests, isogeny equivalence, Honda-Tate invariants of simple classes.
//! - [`quadratic`]: fundamental units by continued fractions, splitting of
//!   rational primes, imaginary class numbers, `zeta_F(-1)` for real
//!   quadratic fields by two independent formulas, and a constructive
//!   existence lemma for elements of prescribed valuation.
//! - [`mass`]: exact mass accounting `sum 1/|Aut|`, the closed-form mass
//!   `zeta_{Q(sqrt p)}(-1)/4`, polarization-fiber bounds, and a Lie-type
//!   check for the superspecial surface case.
//!
//! All values are immutable after construction and every public operation is
//! a pure function, so the whole API is safe to use from multiple threads.

pub mod exact;
pub mod mass;
pub mod quadratic;
pub mod slopes;
pub mod weil;

pub use exact::{BigRat, IntPoly};
pub use weil::{PrimePower, WeilPolynomial};
