use crate::error::{Error, Result};
use crate::qplaces::weil_height_exact;
use crate::Rat;

/// `h(x, y, 1) = 0`, which over Q holds exactly for `x, y ∈ {0, 1, -1}`.
pub fn unity_height_zero_test(x: &Rat, y: &Rat) -> bool {
    weil_height_exact(&[x.clone(), y.clone(), Rat::from_integer(1.into())]).unwrap().is_zero()
}

/// The least integer `m₀ ≥ exp(H/a)`.
pub fn fermat_m0(h: f64, a: f64) -> Result<u64> {
    if !(a > 0.0) {
        return Err(Error::NonpositiveGap);
    }
    if !(h >= 0.0) || !h.is_finite() {
        return Err(Error::InvalidArgument(format!("H must be a finite nonnegative real, got {h}")));
    }
    let bound = (h / a).exp();
    if bound >= u64::MAX as f64 {
        return Err(Error::InvalidArgument(format!("exp(H/a) = {bound} exceeds the integer range")));
    }
    Ok((bound.ceil() as u64).max(1))
}
