//! Seeded random critical tuples.
//!
//! Entries are `+-t^k`, `+-t^{-k}`, nonzero constants, and binomials
//! `t^k + b` or `1/(t^k + b)` with `1 <= k <= 6`; about one entry in twenty
//! is zero.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::polyfam::CritTuple;
use crate::{Poly, RationalFunction, Q};

pub const MAX_EXPONENT: i64 = 6;
pub const DEGREES: std::ops::RangeInclusive<usize> = 2..=5;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn entry(rng: &mut ChaCha8Rng) -> RationalFunction {
    if rng.gen_bool(0.05) {
        return RationalFunction::zero();
    }
    let k = rng.gen_range(1..=MAX_EXPONENT);
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    match rng.gen_range(0..4) {
        0 => RationalFunction::monomial(q(sign), k),
        1 => RationalFunction::monomial(q(sign), -k),
        2 => RationalFunction::from_int(sign * rng.gen_range(1..=3)),
        _ => {
            let b = sign * rng.gen_range(1..=2);
            let mut coeffs = vec![q(0); k as usize + 1];
            coeffs[0] = q(b);
            coeffs[k as usize] = q(1);
            let binomial = RationalFunction::from_poly(Poly::new(coeffs));
            if rng.gen_bool(0.5) {
                binomial
            } else {
                binomial.recip().expect("nonzero")
            }
        }
    }
}

/// `count` tuples with degree `d` uniform in `2..=5`, reproducible from `seed`.
pub fn generate(count: usize, seed: u64) -> Vec<CritTuple> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let d = rng.gen_range(DEGREES);
            let entries = (0..d - 1).map(|_| entry(&mut rng)).collect();
            CritTuple::new(d, entries).expect("d - 1 entries")
        })
        .collect()
}
