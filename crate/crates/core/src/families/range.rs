//! Critical tuples whose multiplier-degree ratio is a prescribed rational.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::polyfam::CritTuple;
use crate::{Error, RationalFunction, Result, Q};

/// A tuple `c` with `deg lambda_{f_c}(0) / h_crit(f_c) = x`.
///
/// `m`, `q`, `r` satisfy `m x = q m + r` with `0 <= r < m`; the product of
/// the entries is `t^{m x}` and `h(c) = m` whenever `x > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeFamilySpec {
    pub d: usize,
    pub x: Q,
    pub m: u64,
    pub q: u64,
    pub r: u64,
    pub tuple: CritTuple,
}

fn t_pow(k: i64) -> RationalFunction {
    RationalFunction::monomial(Q::from_integer(BigInt::from(1)), k)
}

/// For `x >= 1`: `m` is the denominator of `x`, the first `q` entries are
/// `t^m`, the next is `t^r` when `r > 0`, and the rest are 1.
///
/// For `0 < x < 1` the entries `t^a, t^{-b}` with `a - b = m x` and
/// `a + b = m` are used instead (poles at infinity and at `t = 0`); here `m`
/// is the denominator of `x`, doubled when `m x` and `m` have different
/// parity. This needs `d >= 3`.
///
/// `x = 0` uses `(t, ..., t, t^{-(d-2)})`, whose multiplier is constant.
pub fn range_family(d: usize, x: &Q) -> Result<RangeFamilySpec> {
    let top = Q::from_integer(BigInt::from(d as i64 - 1));
    if d < 2 || x.is_negative() || *x > top {
        return Err(Error::OutOfRange { value: x.to_string(), low: "0".into(), high: top.to_string() });
    }
    let ones = |n: usize| std::iter::repeat_with(RationalFunction::one).take(n);
    if x.is_zero() {
        if d == 2 {
            return Err(Error::NoZeroRatioFamily);
        }
        let mut entries: Vec<_> = std::iter::repeat_with(RationalFunction::t).take(d - 2).collect();
        entries.push(t_pow(-(d as i64 - 2)));
        return Ok(RangeFamilySpec { d, x: x.clone(), m: 1, q: 0, r: 0, tuple: CritTuple::new(d, entries)? });
    }
    let den = x.denom().to_u64().expect("small denominator");
    let num = x.numer().to_u64().expect("small numerator");
    if num < den {
        if d == 2 {
            return Err(Error::RatioUnrealizable { x: x.to_string() });
        }
        let m = if (num + den).is_even() { den } else { 2 * den };
        let mx = num * (m / den);
        let (a, b) = ((m + mx) / 2, (m - mx) / 2);
        let mut entries = vec![t_pow(a as i64), t_pow(-(b as i64))];
        entries.extend(ones(d - 3));
        return Ok(RangeFamilySpec { d, x: x.clone(), m, q: 0, r: mx, tuple: CritTuple::new(d, entries)? });
    }
    let m = den;
    let (q, r) = num.div_rem(&den);
    let mut entries: Vec<_> = std::iter::repeat_with(|| t_pow(m as i64)).take(q as usize).collect();
    if r > 0 {
        entries.push(t_pow(r as i64));
    }
    let filled = entries.len();
    entries.extend(ones(d - 1 - filled));
    Ok(RangeFamilySpec { d, x: x.clone(), m, q, r, tuple: CritTuple::new(d, entries)? })
}
