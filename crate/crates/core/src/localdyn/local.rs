//! Truncated expansions of elements of `Q(t)` in the completion at a place.
//!
//! With uniformizer `pi` (the place's polynomial, or `x = 1/t` at infinity) a
//! nonzero element is `pi^v * u` with `u` a unit. The unit is kept modulo
//! `pi^N`, which is the ring of `N`-digit expansions whose digits live in the
//! residue field `Q[x]/(pi)`. Precision is relative: `N` counts known digits.

use std::sync::Arc;

use num_traits::Zero;

use crate::funcfield::ord;
use crate::{Error, Place, Poly, RationalFunction, Result};

/// What is known about the valuation of a truncated element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalValuation {
    /// The element is exactly zero.
    Infinite,
    Exact(i64),
    /// All known digits vanished: the element is `0 mod pi^k`.
    AtLeast(i64),
}

/// Shared data for expansions at one place: the uniformizer and its powers.
#[derive(Debug)]
pub struct Completion {
    place: Place,
    uniformizer: Poly,
    powers: Vec<Poly>,
}

impl Completion {
    /// Precomputes `pi^k` for `k <= max_precision`.
    pub fn new(place: &Place, max_precision: usize) -> Arc<Self> {
        let uniformizer = match place {
            Place::Infinity => Poly::x(),
            Place::Finite(p) => p.clone(),
        };
        let mut powers = vec![Poly::one()];
        for k in 0..max_precision {
            let next = &powers[k] * &uniformizer;
            powers.push(next);
        }
        Arc::new(Completion { place: place.clone(), uniformizer, powers })
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn max_precision(&self) -> usize {
        self.powers.len() - 1
    }

    fn reduce(&self, u: &Poly, n: usize) -> Poly {
        match self.place {
            Place::Infinity => u.truncate(n),
            Place::Finite(_) => {
                if u.deg() < self.powers[n].deg() {
                    u.clone()
                } else {
                    u.rem(&self.powers[n])
                }
            }
        }
    }

    /// `(k, u / pi^k mod pi^n)` where `k` is the `pi`-adic order of `u`
    /// below `n`; `None` if `u = 0 mod pi^n`.
    fn split_order(&self, u: &Poly, n: usize) -> Option<(usize, Poly)> {
        if u.is_zero() {
            return None;
        }
        match self.place {
            Place::Infinity => {
                let k = u.low_order().expect("nonzero");
                (k < n).then(|| (k, Poly::new(u.coeffs()[k..].to_vec())))
            }
            Place::Finite(_) => {
                let mut k = 0;
                let mut rest = u.clone();
                while k < n {
                    let (q, r) = rest.div_rem(&self.uniformizer);
                    if !r.is_zero() {
                        return Some((k, rest));
                    }
                    rest = q;
                    k += 1;
                }
                None
            }
        }
    }

    /// Inverse of a unit modulo `pi^n`.
    fn unit_inverse(&self, u: &Poly, n: usize) -> Poly {
        match self.place {
            Place::Infinity => {
                let a0 = u.coeff(0).recip();
                let mut b = vec![a0.clone()];
                for k in 1..n {
                    let mut s = crate::Q::zero();
                    for j in 1..=k.min(u.deg()) {
                        s += u.coeff(j) * &b[k - j];
                    }
                    b.push(-s * &a0);
                }
                Poly::new(b)
            }
            Place::Finite(_) => {
                let (g, s, _) = Poly::ext_gcd(u, &self.powers[n]);
                debug_assert!(g.is_one());
                self.reduce(&s, n)
            }
        }
    }
}

/// A truncated element of the completion of `Q(t)` at a place.
#[derive(Clone, Debug)]
pub struct LocalElement {
    ctx: Arc<Completion>,
    valuation: LocalValuation,
    unit: Poly,
    precision: usize,
}

impl LocalElement {
    pub fn zero(ctx: &Arc<Completion>) -> Self {
        LocalElement { ctx: ctx.clone(), valuation: LocalValuation::Infinite, unit: Poly::zero(), precision: 0 }
    }

    /// Expansion of `a` with `precision` known digits.
    pub fn from_rf(ctx: &Arc<Completion>, a: &RationalFunction, precision: usize) -> Result<Self> {
        if a.is_zero() {
            return Ok(Self::zero(ctx));
        }
        let n = precision.clamp(1, ctx.max_precision());
        let v = ord(a, &ctx.place)?;
        let (num, den) = match &ctx.place {
            Place::Infinity => {
                // a(1/x) = x^{deg den - deg num} * rev(num) / rev(den)
                let (nd, dd) = (a.numer().deg(), a.denom().deg());
                (a.numer().reverse(nd), a.denom().reverse(dd))
            }
            Place::Finite(p) => (a.numer().split_power(p).1, a.denom().split_power(p).1),
        };
        let num = ctx.reduce(&num, n);
        let unit = ctx.reduce(&(&num * &ctx.unit_inverse(&ctx.reduce(&den, n), n)), n);
        Ok(LocalElement { ctx: ctx.clone(), valuation: LocalValuation::Exact(v), unit, precision: n })
    }

    pub fn place(&self) -> &Place {
        &self.ctx.place
    }

    pub fn valuation(&self) -> LocalValuation {
        self.valuation
    }

    /// Number of known digits of the unit part (0 unless the valuation is exact).
    pub fn precision(&self) -> usize {
        self.precision
    }

    /// The unit part as a representative modulo `pi^precision`.
    pub fn unit(&self) -> &Poly {
        &self.unit
    }

    /// Known `pi`-adic digits of the unit part, each of degree `< deg pi`.
    pub fn digits(&self) -> Vec<Poly> {
        let mut out = Vec::with_capacity(self.precision);
        let mut rest = self.unit.clone();
        for _ in 0..self.precision {
            let (q, r) = rest.div_rem(&self.ctx.uniformizer);
            out.push(r);
            rest = q;
        }
        out
    }

    /// Total bit length of the numerators and denominators of the digits.
    pub fn size_bits(&self) -> u64 {
        self.unit.coeffs().iter().map(|c| c.numer().bits() + c.denom().bits()).sum()
    }

    /// `log|x|_v = -valuation`, if determinate.
    pub fn log_abs(&self) -> Option<i64> {
        match self.valuation {
            LocalValuation::Exact(v) => Some(-v),
            _ => None,
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.valuation == LocalValuation::Infinite
    }

    pub fn mul(&self, rhs: &LocalElement) -> LocalElement {
        use LocalValuation::*;
        let ctx = self.ctx.clone();
        match (self.valuation, rhs.valuation) {
            (Infinite, _) | (_, Infinite) => Self::zero(&ctx),
            (Exact(a), Exact(b)) => {
                let n = self.precision.min(rhs.precision);
                let unit = ctx.reduce(&(&ctx.reduce(&self.unit, n) * &ctx.reduce(&rhs.unit, n)), n);
                LocalElement { ctx, valuation: Exact(a + b), unit, precision: n }
            }
            (Exact(a), AtLeast(b)) | (AtLeast(b), Exact(a)) | (AtLeast(a), AtLeast(b)) => {
                Self::indeterminate(&ctx, a + b)
            }
        }
    }

    pub fn add(&self, rhs: &LocalElement) -> LocalElement {
        use LocalValuation::*;
        let ctx = self.ctx.clone();
        match (self.valuation, rhs.valuation) {
            (Infinite, _) => rhs.clone(),
            (_, Infinite) => self.clone(),
            (AtLeast(a), AtLeast(b)) => Self::indeterminate(&ctx, a.min(b)),
            (Exact(v), AtLeast(k)) | (AtLeast(k), Exact(v)) => {
                let exact = if self.valuation == Exact(v) { self } else { rhs };
                if v < k {
                    let n = exact.precision.min((k - v) as usize);
                    let unit = ctx.reduce(&exact.unit, n);
                    LocalElement { ctx, valuation: Exact(v), unit, precision: n }
                } else {
                    Self::indeterminate(&ctx, k)
                }
            }
            (Exact(a), Exact(b)) => {
                let low = a.min(b);
                let abs = (a + self.precision as i64).min(b + rhs.precision as i64);
                let n = (abs - low) as usize;
                let lift = |x: &LocalElement, v: i64| -> Poly {
                    let k = (v - low) as usize;
                    if k >= n {
                        Poly::zero()
                    } else {
                        ctx.reduce(&(&ctx.powers[k] * &x.unit), n)
                    }
                };
                let sum = &lift(self, a) + &lift(rhs, b);
                match ctx.split_order(&sum, n) {
                    None => Self::indeterminate(&ctx, abs),
                    Some((k, u)) => {
                        let m = n - k;
                        let unit = ctx.reduce(&u, m);
                        LocalElement { ctx, valuation: Exact(low + k as i64), unit, precision: m }
                    }
                }
            }
        }
    }

    pub fn neg(&self) -> LocalElement {
        LocalElement { unit: -&self.unit, ..self.clone() }
    }

    fn indeterminate(ctx: &Arc<Completion>, k: i64) -> LocalElement {
        LocalElement { ctx: ctx.clone(), valuation: LocalValuation::AtLeast(k), unit: Poly::zero(), precision: 0 }
    }
}

/// Expansion of `a` at `v` with `precision` digits.
pub fn localize(a: &RationalFunction, v: &Place, precision: usize) -> Result<LocalElement> {
    if a.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let ctx = Completion::new(v, precision.max(1));
    LocalElement::from_rf(&ctx, a, precision.max(1))
}
