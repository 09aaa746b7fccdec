//! Roots in `Q(t)` of polynomials over `Q(t)`.
//!
//! The polynomial is cleared to coefficients in `Q[t]` and specialized at an
//! integer `t0` where its number of distinct roots is generic. A rational root
//! of multiplicity `m` of the specialization is a simple root of the
//! `(m-1)`-th `z`-derivative; it is lifted by Newton iteration to a power
//! series in `u = t - t0`, and a rational function is read off by Padé
//! reconstruction. Every candidate is checked exactly, so spurious roots never
//! survive. A root in `Q(t)` has height at most the maximal coefficient degree
//! (Gauss's lemma), which fixes the number of series terms needed.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::FieldPoly;
use crate::{Poly, RationalFunction, Q};

/// Specializations sampled to estimate the generic number of distinct roots.
const SAMPLE_POINTS: usize = 8;
/// Specializations with the generic root count that are tried in turn.
const ATTEMPTS: usize = 3;

/// Distinct roots in `Q(t)` with their multiplicities, in a deterministic order.
pub fn roots_with_multiplicity(g: &FieldPoly) -> Vec<(RationalFunction, usize)> {
    let Some(deg) = g.degree() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let candidates = if deg == 1 {
        vec![-&(&g.coeff(0) * &g.coeff(1).recip().expect("nonzero"))]
    } else {
        lifted_roots(g, deg)
    };
    let mut out: Vec<(RationalFunction, usize)> = Vec::new();
    for r in candidates {
        if out.iter().any(|(s, _)| *s == r) {
            continue;
        }
        let m = multiplicity(g, &r);
        if m > 0 {
            out.push((r, m));
        }
    }
    out.sort_by(|a, b| {
        (a.0.degree().unwrap_or(0), a.0.to_string()).cmp(&(b.0.degree().unwrap_or(0), b.0.to_string()))
    });
    out
}

fn multiplicity(g: &FieldPoly, r: &RationalFunction) -> usize {
    let lin = FieldPoly::linear(RationalFunction::one(), -r);
    let mut rest = g.clone();
    let mut m = 0;
    while let Ok(Some(q)) = rest.exact_div(&lin) {
        rest = q;
        m += 1;
    }
    m
}

/// `z`-derivative of a polynomial given by its coefficient list.
fn z_derivative(coeffs: &[Poly]) -> Vec<Poly> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(&Q::from_integer(BigInt::from(i))))
        .collect()
}

fn specialize(coeffs: &[Poly], t0: &Q) -> Poly {
    Poly::new(coeffs.iter().map(|c| c.eval(t0)).collect())
}

fn lifted_roots(g: &FieldPoly, deg: usize) -> Vec<RationalFunction> {
    let lcm = g.coeffs().iter().fold(Poly::one(), |acc, c| {
        let gg = Poly::gcd(&acc, c.denom());
        (&acc * c.denom()).exact_div(&gg).expect("gcd divides")
    });
    let cleared: Vec<Poly> = g
        .coeffs()
        .iter()
        .map(|c| (c.numer() * &lcm).exact_div(c.denom()).expect("lcm is a multiple"))
        .collect();
    let height = cleared.iter().map(Poly::deg).max().unwrap_or(0);

    // derivatives[k] is the k-th z-derivative of the cleared polynomial.
    let mut derivatives = vec![cleared];
    for _ in 0..deg {
        let next = z_derivative(derivatives.last().expect("nonempty"));
        derivatives.push(next);
    }

    let mut samples: Vec<(usize, Q, Poly)> = (0i64..)
        .map(|k| if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 })
        .map(|k| Q::from_integer(BigInt::from(k)))
        .filter(|t0| !derivatives[0][deg].eval(t0).is_zero())
        .take(SAMPLE_POINTS)
        .map(|t0| {
            let sp = specialize(&derivatives[0], &t0);
            (sp.squarefree_part().deg(), t0, sp)
        })
        .collect();
    let generic = samples.iter().map(|s| s.0).max().unwrap_or(0);
    samples.retain(|s| s.0 == generic);

    let mut best: Vec<RationalFunction> = Vec::new();
    for (_, t0, special) in samples.into_iter().take(ATTEMPTS) {
        let found = roots_at(g, &derivatives, height, &t0, &special);
        let total: usize = found.iter().map(|r| multiplicity(g, r)).sum();
        if total == deg {
            return found;
        }
        if found.len() > best.len() {
            best = found;
        }
    }
    best
}

fn roots_at(
    g: &FieldPoly,
    derivatives: &[Vec<Poly>],
    height: usize,
    t0: &Q,
    special: &Poly,
) -> Vec<RationalFunction> {
    let shift = Poly::new(vec![t0.clone(), Q::one()]);
    let back = Poly::new(vec![-t0.clone(), Q::one()]);
    let terms = 2 * height + 2;
    special
        .factor()
        .factors
        .into_iter()
        .filter(|(p, _)| p.degree() == Some(1))
        .filter_map(|(p, m)| {
            let r0 = -p.coeff(0);
            let m = m as usize;
            let base = &derivatives[m - 1];
            if specialize(&derivatives[m], t0).eval(&r0).is_zero() {
                return None;
            }
            let shifted: Vec<Poly> = base.iter().map(|c| c.compose(&shift)).collect();
            let dshifted = z_derivative(&shifted);
            let series = newton_lift(&shifted, &dshifted, r0, terms);
            let (num, den) = pade(&series, terms, height)?;
            let root = RationalFunction::new(num.compose(&back), den.compose(&back)).ok()?;
            g.eval(&root).is_zero().then_some(root)
        })
        .collect()
}

fn mul_trunc(a: &Poly, b: &Poly, n: usize) -> Poly {
    (&a.truncate(n) * &b.truncate(n)).truncate(n)
}

fn eval_trunc(coeffs: &[Poly], z: &Poly, n: usize) -> Poly {
    coeffs
        .iter()
        .rev()
        .fold(Poly::zero(), |acc, c| &mul_trunc(&acc, z, n) + &c.truncate(n))
}

/// Power-series inverse modulo `u^n`; the constant term must be nonzero.
fn inv_trunc(a: &Poly, n: usize) -> Poly {
    let a0_inv = a.coeff(0).recip();
    let mut b: Vec<Q> = Vec::with_capacity(n);
    b.push(a0_inv.clone());
    for k in 1..n {
        let mut s = Q::zero();
        for j in 1..=k.min(a.deg()) {
            s += a.coeff(j) * &b[k - j];
        }
        b.push(-s * &a0_inv);
    }
    Poly::new(b)
}

fn newton_lift(coeffs: &[Poly], dcoeffs: &[Poly], r0: Q, n: usize) -> Poly {
    let mut z = Poly::constant(r0);
    let mut prec = 1;
    while prec < n {
        prec = (2 * prec).min(n);
        let val = eval_trunc(coeffs, &z, prec);
        let der = eval_trunc(dcoeffs, &z, prec);
        z = &z - &mul_trunc(&val, &inv_trunc(&der, prec), prec);
    }
    z
}

/// Rational reconstruction of a series known modulo `u^n` as `p/q` with both
/// degrees at most `bound` and `q(0) != 0`.
fn pade(series: &Poly, n: usize, bound: usize) -> Option<(Poly, Poly)> {
    let (mut r0, mut r1) = (Poly::monomial(Q::one(), n), series.clone());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() && r1.deg() > bound {
        let (q, r) = r0.div_rem(&r1);
        let t = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1.deg() > bound || t1.coeff(0).is_zero() {
        return None;
    }
    Some((r1, t1))
}
