//! Method of characteristics for the radial field `v'` of the free
//! Ginibre evolution: `v' = v0(r' + τ'v')`.

use crate::error::{contract, Error, Result};
use crate::types::C64;

const SCAN_POINTS: usize = 2048;

/// Initial radial profile `v0(r) = r/(|z|² + r²)` for `X0 = 0`.
pub fn zero_start_profile(z: C64) -> impl Fn(f64) -> f64 {
    let m = z.norm_sqr();
    move |r| r / (m + r * r)
}

/// Smallest non-negative root of `F(v) = v - v0(r' + τ'v)`.
///
/// `F(0) = -v0(r') ≤ 0`. The upper end of the bracket is doubled until
/// `F > 0`, the bracket is scanned for its first sign change and that cell
/// is bisected. A second sign change means crossing characteristics (the
/// post-shock regime) and is reported as an error.
pub fn burgers_characteristics(
    _z_prime: C64,
    r_prime: f64,
    tau_prime: f64,
    v0: impl Fn(f64) -> f64,
) -> Result<f64> {
    if !(r_prime >= 0.0) || !(tau_prime > 0.0) {
        return Err(contract("need r' >= 0 and tau' > 0"));
    }
    let f = |v: f64| v - v0(r_prime + tau_prime * v);
    let f0 = f(0.0);
    if f0 == 0.0 {
        return Ok(0.0);
    }
    // v0 may be singular at r' = 0; its limit there is +∞, i.e. F(0) < 0
    if f0 > 0.0 {
        return Err(Error::NoRoot(format!("F(0) = {f0} > 0: profile is negative")));
    }
    let mut hi = v0(r_prime).abs().max(1.0);
    if !hi.is_finite() {
        hi = 1.0;
    }
    let mut doublings = 0;
    while !(f(hi) > 0.0) {
        hi *= 2.0;
        doublings += 1;
        if doublings > 200 {
            return Err(Error::NoRoot("F stays non-positive; v0 unbounded".into()));
        }
    }

    let step = hi / SCAN_POINTS as f64;
    let mut first: Option<(f64, f64)> = None;
    let mut sign_changes = 0;
    let mut prev_v = 0.0;
    let mut prev_pos = false;
    for k in 1..=SCAN_POINTS {
        let v = step * k as f64;
        let pos = f(v) > 0.0;
        if pos != prev_pos {
            sign_changes += 1;
            if first.is_none() {
                first = Some((prev_v, v));
            }
        }
        prev_v = v;
        prev_pos = pos;
    }
    if sign_changes > 1 {
        return Err(Error::NoRoot(format!("{sign_changes} sign changes: characteristics cross")));
    }
    let (mut lo, mut up) = first.ok_or_else(|| Error::NoRoot("no sign change in bracket".into()))?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + up);
        if mid <= lo || mid >= up {
            break;
        }
        if f(mid) > 0.0 {
            up = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + up))
}
