//! Scalar abstraction for prices and costs.
//!
//! Costs must compare exactly, so only primitive integers qualify: the
//! enumerator's tie-breaking and the accounting identities are equalities.
//! Amounts are minor currency units, two decimals below the major unit.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{FromPrimitive, PrimInt, ToPrimitive};

use crate::error::{Error, Result};

/// Number of minor units per major unit (two decimal places).
pub const MINOR_PER_MAJOR: u32 = 100;

/// An exact cost type: any primitive integer wide enough for the instance.
pub trait CostScalar:
    PrimInt + FromPrimitive + ToPrimitive + Hash + Debug + Display + Default + Send + Sync + 'static
{
    /// Widen to `i128` for signed deltas. All amounts of a validated
    /// instance fit, because validation bounds the grand total.
    fn to_wide(self) -> i128 {
        self.to_i128().expect("validated amount fits in i128")
    }
}

impl<T> CostScalar for T where
    T: PrimInt + FromPrimitive + ToPrimitive + Hash + Debug + Display + Default + Send + Sync + 'static
{
}

/// Parse a decimal amount in major units (`"19"`, `"19.5"`, `"3600.00"`) into
/// minor units. `.` is the only decimal separator; at most two decimals; no
/// sign, exponent or thousands separators.
pub fn parse_amount<T: CostScalar>(text: &str) -> Result<T> {
    let bad = |reason: &str| Error::BadNumber { text: text.to_string(), reason: reason.to_string() };
    let s = text.trim();
    if s.is_empty() {
        return Err(bad("empty"));
    }
    if s.starts_with('-') {
        return Err(bad("negative amounts are not allowed"));
    }
    let (whole, frac) = match s.split_once('.') {
        Some((w, f)) => (w, f),
        None => (s, ""),
    };
    if whole.is_empty() || !whole.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad("not a decimal number"));
    }
    if !frac.bytes().all(|b| b.is_ascii_digit()) || (s.contains('.') && frac.is_empty()) {
        return Err(bad("not a decimal number"));
    }
    if frac.len() > 2 {
        return Err(bad("more than two decimals"));
    }
    let whole: u128 = whole.parse().map_err(|_| bad("too large"))?;
    let mut cents: u128 = frac.parse::<u128>().unwrap_or(0);
    if frac.len() == 1 {
        cents *= 10;
    }
    let minor = whole
        .checked_mul(MINOR_PER_MAJOR as u128)
        .and_then(|v| v.checked_add(cents))
        .ok_or_else(|| bad("too large"))?;
    T::from_u128(minor).ok_or_else(|| bad("does not fit the cost type"))
}

/// Render minor units as major units with exactly two decimals.
pub fn format_amount<T: CostScalar>(amount: T) -> String {
    format_wide(amount.to_wide())
}

/// Signed variant of [`format_amount`], used for deltas.
pub fn format_wide(amount: i128) -> String {
    let sign = if amount < 0 { "-" } else { "" };
    let abs = amount.unsigned_abs();
    let per = MINOR_PER_MAJOR as u128;
    format!("{sign}{}.{:02}", abs / per, abs % per)
}

/// Same as [`format_wide`] but with an explicit `+` on non-negative values.
pub fn format_signed(amount: i128) -> String {
    if amount >= 0 {
        format!("+{}", format_wide(amount))
    } else {
        format_wide(amount)
    }
}

/// Convert a whole number of major units to minor units.
pub fn major<T: CostScalar>(units: u64) -> T {
    T::from_u64(units).unwrap() * T::from_u32(MINOR_PER_MAJOR).unwrap()
}
