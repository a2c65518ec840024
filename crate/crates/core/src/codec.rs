//! Solution ids and vendor subsets.
//!
//! Solution id `r` in `[1, 2^n - 1]` names the subset of vendors whose bits
//! are set in `r`. The least-significant bit is the first vendor, so vendors
//! 5, 9 and 10 of a ten-vendor instance have id `2^4 + 2^8 + 2^9 = 784`.

use crate::error::{Error, Result};
use crate::model::VendorSubset;

/// Widest instance whose solution ids fit the integer width used here.
pub const MAX_VENDORS: usize = 62;

/// Largest solution id for `n` vendors.
pub fn max_id(n: usize) -> u64 {
    (1_u64 << n) - 1
}

/// Decode solution id `id` for an instance with `n` vendors.
pub fn decode_subset(id: u64, n: usize) -> Result<VendorSubset> {
    if n > MAX_VENDORS {
        return Err(Error::UnsupportedWidth { n });
    }
    if n == 0 || id < 1 || id > max_id(n) {
        return Err(Error::OutOfRange { id, n });
    }
    Ok(VendorSubset::from_mask(id, n))
}

/// Encode 0-based vendor indices as a solution id.
pub fn encode_subset(members: impl IntoIterator<Item = usize>, n: usize) -> Result<u64> {
    VendorSubset::from_indices(members, n).map(|s| s.id())
}

/// Iterate all subsets of `n` vendors in ascending id order.
pub fn all_subsets(n: usize) -> Result<impl Iterator<Item = VendorSubset>> {
    if n > MAX_VENDORS {
        return Err(Error::UnsupportedWidth { n });
    }
    Ok((1..=max_id(n)).map(move |id| VendorSubset::from_mask(id, n)))
}
