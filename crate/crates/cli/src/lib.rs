//! Library side of the `basicav` command-line tool: atlas records, the
//! atlas writer, and the JSON shapes shared with the binary.
//!
//! Rationals serialize as "num/den" strings in lowest terms (plain "n" when
//! the denominator is 1); exactness is the product, so nothing is ever
//! rendered through floating point.

pub mod atlas;
pub mod record;

use basicav_core::exact::BigRat;
use num_traits::One;

/// Lowest-terms string form of a rational, omitting the unit denominator.
pub fn format_rat(r: &BigRat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse "a/b" or "a" into an exact rational.
pub fn parse_rat(s: &str) -> Result<BigRat, String> {
    let parse_int = |t: &str| {
        t.trim()
            .parse::<num_bigint::BigInt>()
            .map_err(|e| format!("bad rational {t:?}: {e}"))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d == num_bigint::BigInt::from(0) {
                return Err("zero denominator".into());
            }
            Ok(BigRat::new(n, d))
        }
        None => Ok(BigRat::from_integer(parse_int(s)?)),
    }
}
