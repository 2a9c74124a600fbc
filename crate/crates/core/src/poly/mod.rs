//! Exact rational arithmetic and polynomial rings over `ℚ`.

mod bipoly;
mod mpoly;
mod parse;
mod upoly;

pub use bipoly::{bipoly_div_exact, bipoly_gcd};
pub use mpoly::{MPoly, Monomial, Subst, Var};
pub use parse::{parse_mpoly, parse_mpoly_in, parse_upoly};
pub use upoly::{upoly_gcd, UPoly};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `n` or `n/d`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `n` or `n/d` (optional leading sign, `d > 0`).
pub fn parse_rat(text: &str) -> Option<Rat> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den <= BigInt::zero() {
        return None;
    }
    Some(Rat::new(num, den))
}
