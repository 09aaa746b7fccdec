//! Post-critically finite specializations of `f_t(z) = (d-1) z^d - d t z^{d-1}`.
//!
//! The critical point `z = t` of `f_t` lands on the fixed critical point 0
//! after `n` steps exactly when `t` is a root of `p_n(t) = f_t^n(t)`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::aberth::{aberth, relative_residual};
use crate::polyfam::PolynomialMap;
use crate::{Error, Poly, RationalFunction, Result, Q};

pub const DEFAULT_PCF_CAP: u64 = 10_000;
pub const DEFAULT_NUMERIC_CAP: u64 = 1_000;
pub const DEFAULT_NUMERIC_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_ORBIT_TOLERANCE: f64 = 1e-6;

const ABERTH_ITERATIONS: usize = 2_000;

fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn check_size(d: usize, n: usize, cap: u64) -> Result<()> {
    if d < 3 {
        return Err(Error::DegreeTooSmall { min: 3, got: d });
    }
    if n == 0 {
        return Err(Error::OutOfRange { value: "0".into(), low: "1".into(), high: "inf".into() });
    }
    let size = (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > u128::from(cap) {
        return Err(Error::SizeCap { size, cap: u128::from(cap) });
    }
    Ok(())
}

/// `f_t(p) = (d-1) p^d - d t p^{d-1} = p^{d-1} ((d-1) p - d t)`.
fn step(d: usize, p: &Poly) -> Poly {
    let dt = Poly::monomial(int(d as i64), 1);
    &p.pow(d as u32 - 1) * &(&p.scale(&int(d as i64 - 1)) - &dt)
}

/// `p_1, ..., p_n`.
pub fn pcf_levels(d: usize, n: usize, cap: u64) -> Result<Vec<Poly>> {
    check_size(d, n, cap)?;
    let mut levels = vec![step(d, &Poly::x())];
    while levels.len() < n {
        let next = step(d, levels.last().expect("nonempty"));
        levels.push(next);
    }
    Ok(levels)
}

/// `p_n(t) = f_t^n(t)`.
pub fn pcf_polynomial(d: usize, n: usize, cap: u64) -> Result<Poly> {
    Ok(pcf_levels(d, n, cap)?.pop().expect("n >= 1"))
}

/// The family as a map over `Q(t)`.
pub fn pcf_map(d: usize) -> PolynomialMap {
    let mut coeffs = vec![RationalFunction::zero(); d + 1];
    coeffs[d] = RationalFunction::from_int(d as i64 - 1);
    coeffs[d - 1] = RationalFunction::monomial(int(-(d as i64)), 1);
    PolynomialMap::new(coeffs).expect("degree d")
}

/// Compares `f_t^{n+1}(t)`, obtained by iterating the map over `Q(t)`, with
/// `p_n^{d-1} ((d-1) p_n - d t)`.
pub fn pcf_recursion_check(d: usize, n: usize, cap: u64) -> Result<bool> {
    let p_n = pcf_polynomial(d, n, cap)?;
    let f = pcf_map(d);
    let mut z = RationalFunction::t();
    for _ in 0..=n {
        z = f.eval(&z);
    }
    let dt = Poly::monomial(int(d as i64), 1);
    let rhs = &p_n.pow(d as u32 - 1) * &(&p_n.scale(&int(d as i64 - 1)) - &dt);
    Ok(z.is_polynomial() && *z.numer() == rhs)
}

/// Leading coefficients from `a_1 = -1`, `a_{k+1} = (d-1) a_k^d`.
pub fn leading_law(d: usize, n: usize) -> Q {
    let mut a = int(-1);
    for _ in 1..n {
        a = int(d as i64 - 1) * num_traits::pow(a, d);
    }
    a
}

/// `(-1)^d (d-1)^{(d^n-1)/(d-1)}`, the stated closed form for the leading
/// coefficient.
pub fn stated_leading(d: usize, n: usize) -> Q {
    let e = (d.pow(n as u32) - 1) / (d - 1);
    let sign = if d % 2 == 0 { 1 } else { -1 };
    int(sign) * num_traits::pow(int(d as i64 - 1), e)
}

/// The part of `p` coprime to `t` and to every polynomial in `lower`.
fn strip_shared(p: &Poly, lower: &[Poly]) -> Poly {
    let mut rest = p.split_power(&Poly::x()).1;
    for q in lower {
        loop {
            let g = Poly::gcd(&rest, q);
            if g.is_constant() {
                break;
            }
            rest = rest.exact_div(&g).expect("gcd divides");
        }
    }
    rest
}

fn primitive(p: &Poly) -> Poly {
    let (_, ints) = p.primitive_integer();
    Poly::new(ints.into_iter().map(Q::from_integer).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericRoot {
    pub value: Complex64,
    pub multiplicity: usize,
    pub residual: f64,
    pub converged: bool,
    /// First `k <= n` with `|f^k(t*)| <= orbit tolerance`.
    pub landing_step: Option<usize>,
    /// Landed within `n` steps and stayed small for two more.
    pub pcf: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PcfLevelReport {
    pub d: usize,
    pub n: usize,
    pub poly: Poly,
    pub degree: usize,
    pub leading: Q,
    pub divisible_by_t2: bool,
    /// Multiplicity of the root `t = 0`, which is reported apart from the rest.
    pub zero_multiplicity: usize,
    /// Primitive integer polynomial whose roots are the nonzero roots of
    /// `p_n` that are not roots of any lower level.
    pub new_factor: Poly,
    pub new_root_count: usize,
    pub leading_matches_law: bool,
    pub leading_matches_stated: bool,
    pub numeric_roots: Option<Vec<NumericRoot>>,
}

pub fn pcf_new_roots(d: usize, n: usize, cap: u64) -> Result<PcfLevelReport> {
    let levels = pcf_levels(d, n, cap)?;
    let poly = levels[n - 1].clone();
    let lower: Vec<Poly> = levels[..n - 1].iter().map(|p| p.split_power(&Poly::x()).1).collect();
    let new_factor = primitive(&strip_shared(&poly, &lower));
    let leading = poly.leading().cloned().unwrap_or_else(Q::zero);
    Ok(PcfLevelReport {
        d,
        n,
        degree: poly.deg(),
        divisible_by_t2: poly.low_order().is_some_and(|k| k >= 2),
        zero_multiplicity: poly.low_order().unwrap_or(0),
        new_root_count: new_factor.squarefree_part().deg(),
        leading_matches_law: leading == leading_law(d, n),
        leading_matches_stated: leading == stated_leading(d, n),
        leading,
        new_factor,
        poly,
        numeric_roots: None,
    })
}

fn to_complex(p: &Poly) -> Vec<Complex64> {
    p.coeffs().iter().map(|c| Complex64::new(c.to_f64().expect("finite"), 0.0)).collect()
}

/// Numeric nonzero roots of `p_n` with multiplicities, residuals relative to
/// `p_n`, and a check that the critical orbit lands on 0.
pub fn pcf_find_numeric(d: usize, n: usize, tolerance: f64, orbit_tolerance: f64) -> Result<Vec<NumericRoot>> {
    check_size(d, n, DEFAULT_NUMERIC_CAP)?;
    let poly = pcf_polynomial(d, n, DEFAULT_NUMERIC_CAP)?;
    let full = to_complex(&poly);
    let nonzero = poly.split_power(&Poly::x()).1;
    let mut out = Vec::new();
    for (i, part) in nonzero.squarefree_decomposition().iter().enumerate() {
        if part.is_constant() {
            continue;
        }
        let found = aberth(&to_complex(&primitive(part)), ABERTH_ITERATIONS, tolerance * 1e-4);
        for (z, converged) in found.roots.into_iter().zip(found.converged) {
            let landing_step = landing(d, n, z, orbit_tolerance);
            let stays = landing_step.is_some() && stays_small(d, n, z, orbit_tolerance);
            out.push(NumericRoot {
                value: z,
                multiplicity: i + 1,
                residual: relative_residual(&full, z),
                converged,
                landing_step,
                pcf: stays,
            });
        }
    }
    out.sort_by(|a, b| (a.value.re, a.value.im).partial_cmp(&(b.value.re, b.value.im)).expect("finite roots"));
    Ok(out)
}

fn f_numeric(d: usize, t: Complex64, z: Complex64) -> Complex64 {
    z.powu(d as u32 - 1) * (z * (d as f64 - 1.0) - t * d as f64)
}

fn landing(d: usize, n: usize, t: Complex64, tol: f64) -> Option<usize> {
    let mut z = t;
    for k in 1..=n {
        z = f_numeric(d, t, z);
        if z.norm() <= tol {
            return Some(k);
        }
    }
    None
}

fn stays_small(d: usize, n: usize, t: Complex64, tol: f64) -> bool {
    let mut z = t;
    for k in 1..=n + 2 {
        z = f_numeric(d, t, z);
        if k >= n && z.norm() > tol {
            return false;
        }
    }
    true
}

/// Sum of root multiplicities including `t = 0`; equals `d^n`.
pub fn counted_roots(zero_multiplicity: usize, roots: &[NumericRoot]) -> usize {
    zero_multiplicity + roots.iter().map(|r| r.multiplicity).sum::<usize>()
}

impl PcfLevelReport {
    pub fn with_numeric(mut self, tolerance: f64, orbit_tolerance: f64) -> Result<Self> {
        self.numeric_roots = Some(pcf_find_numeric(self.d, self.n, tolerance, orbit_tolerance)?);
        Ok(self)
    }
}
