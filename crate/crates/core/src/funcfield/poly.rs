//! Dense univariate polynomials over `Q`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use algebraics::polynomial::Polynomial as IntPolynomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Q;

mod modular {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::ToPrimitive;

    const PRIMES: [u64; 4] = [2_305_843_009_213_693_951, 4_294_967_291, 1_000_000_007, 998_244_353];

    fn reduce(c: &[BigInt], p: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        c.iter().map(|x| x.mod_floor(&pb).to_u64().expect("reduced")).collect()
    }

    fn mul(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    fn inv(a: u64, p: u64) -> u64 {
        let (mut base, mut e, mut acc) = (a, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base, p);
            }
            base = mul(base, base, p);
            e >>= 1;
        }
        acc
    }

    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn rem(a: &mut Vec<u64>, b: &[u64], p: u64) {
        let lb = inv(*b.last().expect("nonzero"), p);
        trim(a);
        while a.len() >= b.len() {
            let q = mul(*a.last().expect("nonzero"), lb, p);
            let shift = a.len() - b.len();
            for (i, &bi) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - mul(q, bi, p)) % p;
            }
            trim(a);
        }
    }

    /// True only when the integer polynomials are certainly coprime over `Q`:
    /// reduction modulo a prime not dividing either leading coefficient can
    /// only raise the degree of the gcd.
    pub fn coprime(a: &[BigInt], b: &[BigInt]) -> bool {
        for p in PRIMES {
            let (mut x, mut y) = (reduce(a, p), reduce(b, p));
            if x.last() == Some(&0) || y.last() == Some(&0) {
                continue;
            }
            while !y.is_empty() {
                rem(&mut x, &y, p);
                std::mem::swap(&mut x, &mut y);
            }
            return x.len() == 1;
        }
        false
    }
}

/// Polynomial with rational coefficients stored in ascending degree.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and `degree` is the index of the last entry.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Q>,
}

/// Factorization `unit * prod(factor^power)` into monic irreducibles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Q,
    pub factors: Vec<(Poly, u32)>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Q::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn x() -> Self {
        Self::monomial(Q::one(), 1)
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Q, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Q::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Q> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Q::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Keep the terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> Poly {
        Poly::new(self.coeffs.iter().take(n).cloned().collect())
    }

    /// `x^n * p(1/x)`; requires `n >= degree`.
    pub fn reverse(&self, n: usize) -> Poly {
        debug_assert!(self.degree().map_or(true, |d| d <= n));
        let mut coeffs = vec![Q::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c.clone();
        }
        Poly::new(coeffs)
    }

    /// Number of leading zero coefficients, i.e. the order of vanishing at 0.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * other) + &Poly::constant(c.clone()))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division. Panics when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let Some(nd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if nd < dd {
            return (Poly::zero(), self.clone());
        }
        let inv_lc = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Q::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &inv_lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    ///
    /// Coprime inputs are recognized modulo a prime not dividing either
    /// leading coefficient; otherwise the subresultant gcd of the primitive
    /// integer parts is taken.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return if a.is_zero() { b.monic() } else { a.monic() };
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        let (_, ai) = a.primitive_integer();
        let (_, bi) = b.primitive_integer();
        if modular::coprime(&ai, &bi) {
            return Poly::one();
        }
        let ap: IntPolynomial<BigInt> = ai.into_iter().collect();
        let bp: IntPolynomial<BigInt> = bi.into_iter().collect();
        let g = ap.subresultant_gcd(bp);
        Poly::new(g.iter().map(Q::from_integer).collect()).monic()
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g` and `g` monic.
    pub fn ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Multiplicity of `factor` in `self` together with the cofactor.
    /// `factor` must be nonconstant and `self` nonzero.
    pub fn split_power(&self, factor: &Poly) -> (u32, Poly) {
        debug_assert!(!factor.is_constant() && !self.is_zero());
        let mut count = 0;
        let mut rest = self.clone();
        while let Some(q) = rest.exact_div(factor) {
            rest = q;
            count += 1;
        }
        (count, rest)
    }

    /// Yun's algorithm: entry `i` is the monic product of the irreducible
    /// factors of multiplicity exactly `i + 1`.
    pub fn squarefree_decomposition(&self) -> Vec<Poly> {
        if self.is_constant() {
            return Vec::new();
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = Poly::gcd(&f, &df);
        let mut b = f.exact_div(&a0).expect("gcd divides");
        let mut c = df.exact_div(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        loop {
            let a = Poly::gcd(&b, &d);
            out.push(a.clone());
            b = b.exact_div(&a).expect("gcd divides");
            if b.is_constant() {
                break;
            }
            c = d.exact_div(&a).expect("gcd divides");
            d = &c - &b.derivative();
        }
        while out.last().is_some_and(|p| p.is_one()) {
            out.pop();
        }
        out
    }

    /// Monic product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Poly {
        if self.is_constant() {
            return Poly::one();
        }
        let f = self.monic();
        f.exact_div(&Poly::gcd(&f, &f.derivative())).expect("gcd divides")
    }

    /// `(scale, ints)` with `self = scale * ints`, the integer polynomial
    /// primitive with positive leading coefficient.
    pub fn primitive_integer(&self) -> (Q, Vec<BigInt>) {
        if self.is_zero() {
            return (Q::zero(), Vec::new());
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Q::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut content = scaled.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if scaled.last().is_some_and(|c| c.is_negative()) {
            content = -content;
        }
        let ints = scaled.into_iter().map(|c| c / &content).collect();
        (Q::new(content, lcm), ints)
    }

    /// Complete factorization into monic irreducibles over `Q`, sorted.
    pub fn factor(&self) -> Factorization {
        assert!(!self.is_zero(), "factoring the zero polynomial");
        let unit = self.leading().cloned().expect("nonzero");
        if self.is_constant() {
            return Factorization { unit, factors: Vec::new() };
        }
        let (_, ints) = self.primitive_integer();
        let int_poly: IntPolynomial<BigInt> = ints.into_iter().collect();
        let mut factors: Vec<(Poly, u32)> = int_poly
            .factor()
            .polynomial_factors
            .into_iter()
            .map(|pf| {
                let coeffs = pf.polynomial.iter().map(Q::from_integer).collect();
                (Poly::new(coeffs).monic(), pf.power as u32)
            })
            .filter(|(p, _)| !p.is_constant())
            .collect();
        factors.sort();
        Factorization { unit, factors }
    }

    /// Whether the polynomial is nonconstant and irreducible over `Q`.
    pub fn is_irreducible(&self) -> bool {
        if self.is_constant() {
            return false;
        }
        let f = self.factor();
        f.factors.len() == 1 && f.factors[0].1 == 1
    }

    /// Rational roots, each listed once.
    pub fn rational_roots(&self) -> Vec<Q> {
        if self.is_zero() {
            return Vec::new();
        }
        self.factor()
            .factors
            .into_iter()
            .filter(|(p, _)| p.degree() == Some(1))
            .map(|(p, _)| -p.coeff(0))
            .collect()
    }

    /// Formats the polynomial in the expression grammar with variable `var`.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let var_part = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if var_part.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&var_part);
            } else {
                out.push_str(&format!("{abs}*{var_part}"));
            }
        }
        out
    }

    /// Number of terms with nonzero coefficient.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(short.coeffs.iter()) {
            *a += b;
        }
        Poly::new(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, Q::zero());
        for (a, b) in coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a -= b;
        }
        Poly::new(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Poly::new(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn trims_and_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert!(p(&[]).is_zero());
    }

    #[test]
    fn division_identity() {
        let a = p(&[3, -1, 4, 1, -5, 9]);
        let b = p(&[2, 0, 7]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_of_products() {
        let g = p(&[1, 1]);
        let a = &g * &p(&[-2, 0, 1]);
        let b = &g * &p(&[5, 3]);
        assert_eq!(Poly::gcd(&a, &b), g);
        let (h, s, t) = Poly::ext_gcd(&a, &b);
        assert_eq!(h, g);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn yun_decomposition() {
        let a = p(&[1, 1]);
        let b = p(&[-2, 0, 1]);
        let f = &(&a * &b.pow(2)) * &p(&[0, 1]).pow(3);
        let sq = f.squarefree_decomposition();
        assert_eq!(sq, vec![a, b, p(&[0, 1])]);
        assert_eq!(f.squarefree_part().degree(), Some(4));
    }

    #[test]
    fn factor_over_q() {
        // 4s^4 - 1 = (2s^2 - 1)(2s^2 + 1)
        let f = p(&[-1, 0, 0, 0, 4]).factor();
        assert_eq!(f.unit, Q::from_integer(4.into()));
        let half = Q::new(1.into(), 2.into());
        assert_eq!(
            f.factors,
            vec![
                (Poly::new(vec![-half.clone(), Q::zero(), Q::one()]), 1),
                (Poly::new(vec![half, Q::zero(), Q::one()]), 1)
            ]
        );
        assert!(p(&[1, 0, 1]).is_irreducible());
        assert!(!p(&[-1, 0, 1]).is_irreducible());
    }

    #[test]
    fn rational_roots_found() {
        let f = &p(&[-1, 2]) * &p(&[3, 1]);
        let mut r = f.rational_roots();
        r.sort();
        assert_eq!(r, vec![Q::from_integer((-3).into()), Q::new(1.into(), 2.into())]);
    }

    #[test]
    fn display_grammar() {
        assert_eq!(p(&[1, 0, 1]).to_string(), "t^2 + 1");
        assert_eq!(p(&[0, -3, 0, -2]).to_string(), "-2*t^3 - 3*t");
        assert_eq!(Poly::constant(Q::new((-1).into(), 2.into())).to_string(), "-1/2");
    }

    #[test]
    fn compose_and_reverse() {
        let f = p(&[1, 0, 1]);
        assert_eq!(f.compose(&p(&[1, 1])), p(&[2, 2, 1]));
        assert_eq!(p(&[1, 2]).reverse(3), p(&[0, 0, 2, 1]));
    }
}
