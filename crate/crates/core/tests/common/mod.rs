#![allow(dead_code)]

use critgap::{CritTuple, Place, Poly, RationalFunction, Q};
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn poly_from(coeffs: &[i64]) -> Poly {
    Poly::from_ints(coeffs)
}

/// Small integer polynomials of degree at most `max_deg`.
pub fn small_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-3i64..=3, 1..=max_deg + 1).prop_map(|c| Poly::from_ints(&c))
}

pub fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    small_poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn rational_function(max_deg: usize) -> impl Strategy<Value = RationalFunction> {
    (small_poly(max_deg), nonzero_poly(max_deg)).prop_map(|(n, d)| RationalFunction::new(n, d).expect("nonzero denominator"))
}

pub fn nonzero_rational_function(max_deg: usize) -> impl Strategy<Value = RationalFunction> {
    (nonzero_poly(max_deg), nonzero_poly(max_deg)).prop_map(|(n, d)| RationalFunction::new(n, d).expect("nonzero denominator"))
}

/// Nonconstant `pi` of degree at most `max_deg`.
pub fn cover(max_deg: usize) -> impl Strategy<Value = RationalFunction> {
    rational_function(max_deg).prop_filter("nonconstant", |p| !p.is_constant())
}

pub fn place() -> impl Strategy<Value = Place> {
    prop_oneof![
        Just(Place::Infinity),
        Just(Place::at(q(0))),
        Just(Place::at(q(1))),
        Just(Place::at(q(-2))),
        Just(Place::finite(poly_from(&[1, 0, 1])).unwrap()),
    ]
}

/// Corpus-style entries: signed monomials, constants and binomials, rarely zero.
pub fn entry(max_exp: i64) -> impl Strategy<Value = RationalFunction> {
    (0u8..20, 1..=max_exp, prop::bool::ANY, 1i64..=3).prop_map(|(kind, k, neg, b)| {
        let sign = if neg { -1 } else { 1 };
        match kind {
            0 => RationalFunction::zero(),
            1..=5 => RationalFunction::monomial(q(sign), k),
            6..=9 => RationalFunction::monomial(q(sign), -k),
            10..=12 => RationalFunction::from_int(sign * b),
            _ => {
                let mut c = vec![0i64; k as usize + 1];
                c[0] = sign * b.min(2);
                c[k as usize] = 1;
                let binomial = RationalFunction::from_poly(Poly::from_ints(&c));
                if kind % 2 == 0 {
                    binomial
                } else {
                    binomial.recip().unwrap()
                }
            }
        }
    })
}

pub fn crit_tuple(max_d: usize, max_exp: i64) -> impl Strategy<Value = CritTuple> {
    (2..=max_d)
        .prop_flat_map(move |d| prop::collection::vec(entry(max_exp), d - 1))
        .prop_map(|e| CritTuple::from_entries(e).unwrap())
}

pub fn nonzero_crit_tuple(max_d: usize, max_exp: i64) -> impl Strategy<Value = CritTuple> {
    crit_tuple(max_d, max_exp).prop_filter("all entries nonzero", |c| c.entries().iter().all(|e| !e.is_zero()))
}
