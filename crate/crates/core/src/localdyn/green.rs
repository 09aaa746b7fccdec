//! Escape thresholds and exact local Green's functions.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::local::{Completion, LocalElement, LocalValuation};
use crate::funcfield::{log_abs, log_plus_norm, ord};
use crate::polyfam::{CritTuple, PolynomialMap};
use crate::{Error, Place, RationalFunction, Result, Q};

/// Iteration budget and precision schedule for Green's function evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GreenOptions {
    pub budget: usize,
    pub precision_start: usize,
    pub precision_cap: usize,
}

impl Default for GreenOptions {
    fn default() -> Self {
        GreenOptions { budget: 64, precision_start: 16, precision_cap: 1024 }
    }
}

impl GreenOptions {
    pub fn with_budget(budget: usize) -> Self {
        GreenOptions { budget, ..Self::default() }
    }
}

/// How a Green's function value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GreenStatus {
    /// `log|f^step(P)|_v` exceeded the escape threshold.
    Escaped { step: usize },
    /// All data is integral at the place, possibly after an affine change of
    /// coordinates.
    GoodReduction,
    /// The orbit repeats exactly: `f^(preperiod + period)(P) = f^preperiod(P)`.
    Preperiodic { preperiod: usize, period: usize },
    /// The first `iterations` iterates stayed below the threshold. This is
    /// the whole budget unless the exact expansions grew too large first.
    BoundedUpTo { iterations: usize },
    /// `f^step(P)` lies in a closed disk that `f` maps into itself.
    Trapped { step: usize },
}

/// A local Green's function value. `value` is exact unless the status is
/// `BoundedUpTo`, in which case it is 0 and the true value lies in
/// `[0, upper]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenResult {
    pub value: Q,
    pub upper: Q,
    pub status: GreenStatus,
}

impl GreenResult {
    pub fn is_certified(&self) -> bool {
        !matches!(self.status, GreenStatus::BoundedUpTo { .. })
    }

    fn exact(value: Q, status: GreenStatus) -> Self {
        GreenResult { upper: value.clone(), value, status }
    }
}

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `theta_v(f)`: any `z` with `log|z|_v > theta` escapes, with
/// `log|f(z)|_v = log|a_d|_v + d log|z|_v`.
pub fn escape_threshold(f: &PolynomialMap, v: &Place) -> Q {
    let d = f.degree();
    let ld = log_abs(f.leading(), v).expect("nonzero leading coefficient");
    let mut theta = Q::zero().max(Q::new(BigInt::from(-ld), BigInt::from(d - 1)));
    for (i, a) in f.coeffs().iter().enumerate().take(d) {
        if let Some(la) = log_abs(a, v) {
            theta = theta.max(Q::new(BigInt::from(la - ld), BigInt::from(d - i)));
        }
    }
    theta
}

/// `log|a_d|_v / (d - 1)`, the constant in `G(z) = log|z|_v + L` on the escape region.
fn leading_shift(f: &PolynomialMap, v: &Place) -> Q {
    let ld = log_abs(f.leading(), v).expect("nonzero leading coefficient");
    Q::new(BigInt::from(ld), BigInt::from(f.degree() - 1))
}

fn has_good_reduction(f: &PolynomialMap, p: &RationalFunction, v: &Place, theta: &Q) -> bool {
    theta.is_zero() && log_plus_norm(f.coeffs(), v) == 0 && log_plus_norm(std::slice::from_ref(p), v) == 0
}

/// Whether `f` has good reduction at `v` after a conjugation `z -> pi^k z + w`
/// that also makes `P` integral. The center `w = -a_{d-1} / (d a_d)` is
/// canonical (residue characteristic 0), so every affine conjugate with good
/// reduction is found this way.
fn has_potential_good_reduction(f: &PolynomialMap, p: &RationalFunction, v: &Place) -> Result<bool> {
    let d = f.degree();
    let scale = f.leading().scale(&q(d as i64));
    let w = -&f.coeffs()[d - 1].checked_div(&scale)?;
    let centered = f.conjugate(&RationalFunction::one(), &w)?;
    let e = ord(centered.leading(), v)?;
    if e % (d as i64 - 1) != 0 {
        return Ok(false);
    }
    let k = -e / (d as i64 - 1);
    for (i, b) in centered.coeffs().iter().enumerate() {
        if !b.is_zero() && ord(b, v)? + k * (i as i64 - 1) < 0 {
            return Ok(false);
        }
    }
    let shifted = p - &w;
    Ok(shifted.is_zero() || ord(&shifted, v)? >= k)
}

/// Centers tried by [`trapped`] besides the fixed point 0: orbit points of
/// total degree at most this, since conjugating by a large center is costly.
const TRAP_CENTER_DEGREE: usize = 12;
const TRAP_CENTERS: usize = 8;

/// First index of an orbit point lying in a closed disk `D(a, R)` with
/// `f(D) ⊆ D`. Writing `f(a + u) - a = sum b_i u^i`, the disk is invariant
/// when `|b_0| <= R`, `|b_1| <= 1` and `|b_i| R^(i-1) <= 1` for `i >= 2`; the
/// largest such `R` is used. Centers are 0 when it is fixed, and orbit points.
fn trapped(f: &PolynomialMap, orbit: &[RationalFunction], v: &Place) -> Result<Option<usize>> {
    let mut centers: Vec<RationalFunction> = Vec::new();
    if f.coeffs()[0].is_zero() {
        centers.push(RationalFunction::zero());
    }
    centers.extend(
        orbit
            .iter()
            .filter(|a| a.numer().deg() + a.denom().deg() <= TRAP_CENTER_DEGREE)
            .take(TRAP_CENTERS)
            .cloned(),
    );
    let mut best: Option<usize> = None;
    for a in &centers {
        let g = f.conjugate(&RationalFunction::one(), a)?;
        let b = g.coeffs();
        if log_abs(&b[1], v).is_some_and(|l| l > 0) {
            continue;
        }
        let radius = b
            .iter()
            .enumerate()
            .skip(2)
            .filter_map(|(i, bi)| log_abs(bi, v).map(|l| Q::new(BigInt::from(-l), BigInt::from(i - 1))))
            .min()
            .expect("leading coefficient is nonzero");
        if log_abs(&b[0], v).is_some_and(|l| q(l) > radius) {
            continue;
        }
        let inside = orbit.iter().position(|w| log_abs(&(w - a), v).map_or(true, |l| q(l) <= radius));
        if let Some(i) = inside {
            best = Some(best.map_or(i, |j| j.min(i)));
            if i == 0 {
                break;
            }
        }
    }
    Ok(best)
}

/// Iterates are kept exactly while their total degree stays below this.
const GLOBAL_DEGREE_LIMIT: usize = 48;

/// `G_{f,v}(P)`.
///
/// The orbit is first followed exactly in `Q(t)`, which detects exact
/// preperiodicity, and then in the completion at `v` where degrees no longer
/// grow. Escape is detected by comparing `log|f^n(P)|_v` with the escape
/// threshold.
pub fn green_function(f: &PolynomialMap, p: &RationalFunction, v: &Place, opts: &GreenOptions) -> Result<GreenResult> {
    if opts.budget == 0 {
        return Err(Error::Config("green budget must be at least 1".into()));
    }
    let theta = escape_threshold(f, v);
    if has_good_reduction(f, p, v, &theta) || has_potential_good_reduction(f, p, v)? {
        return Ok(GreenResult::exact(Q::zero(), GreenStatus::GoodReduction));
    }
    let d = f.degree();
    let shift = leading_shift(f, v);
    let escaped = |log_z: i64, step: usize| {
        let scale = BigInt::from(d).pow(step as u32);
        GreenResult::exact((q(log_z) + &shift) / Q::from_integer(scale), GreenStatus::Escaped { step })
    };
    let escapes = |log_z: Option<i64>| log_z.is_some_and(|l| q(l) > theta);

    // Exact phase.
    let mut orbit = vec![p.clone()];
    loop {
        let n = orbit.len() - 1;
        let z = &orbit[n];
        let lz = log_abs(z, v);
        if escapes(lz) {
            return Ok(escaped(lz.expect("escaping points are nonzero"), n));
        }
        if let Some(m) = orbit[..n].iter().position(|w| w == z) {
            return Ok(GreenResult::exact(Q::zero(), GreenStatus::Preperiodic { preperiod: m, period: n - m }));
        }
        if n >= opts.budget || z.numer().deg() + z.denom().deg() > GLOBAL_DEGREE_LIMIT {
            break;
        }
        let next = f.eval(z);
        orbit.push(next);
    }
    if let Some(step) = trapped(f, &orbit, v)? {
        return Ok(GreenResult::exact(Q::zero(), GreenStatus::Trapped { step }));
    }
    let start = orbit.len() - 1;
    if start >= opts.budget {
        return Ok(bounded(&theta, &shift, d, opts.budget));
    }

    // Local phase, restarted from the last exact iterate with more digits
    // whenever a valuation becomes indeterminate.
    let z0 = orbit.pop().expect("nonempty");
    let mut precision = opts.precision_start.max(1);
    loop {
        match local_orbit(f, &z0, start, v, precision, opts.budget, &theta)? {
            Some(LocalOutcome::Escaped { log_z, step }) => return Ok(escaped(log_z, step)),
            Some(LocalOutcome::Bounded { iterations }) => return Ok(bounded(&theta, &shift, d, iterations)),
            None if precision >= opts.precision_cap => {
                return Err(Error::PrecisionExhausted { place: v.to_string(), cap: opts.precision_cap })
            }
            None => precision = (2 * precision).min(opts.precision_cap),
        }
    }
}

/// After `n` iterates with `log|z| <= theta`, `G(P) <= (theta + L) / d^n`.
fn bounded(theta: &Q, shift: &Q, d: usize, n: usize) -> GreenResult {
    let upper = (theta + shift) / Q::from_integer(BigInt::from(d).pow(n as u32));
    GreenResult { value: Q::zero(), upper, status: GreenStatus::BoundedUpTo { iterations: n } }
}

enum LocalOutcome {
    Escaped { log_z: i64, step: usize },
    Bounded { iterations: usize },
}

/// Digits of a bounded orbit are rationals whose size grows geometrically
/// with each iterate; the local phase stops once an iterate is this large.
const LOCAL_SIZE_LIMIT_BITS: u64 = 1 << 15;

/// `None` when a valuation became indeterminate at this precision.
fn local_orbit(
    f: &PolynomialMap,
    z0: &RationalFunction,
    start: usize,
    v: &Place,
    precision: usize,
    budget: usize,
    theta: &Q,
) -> Result<Option<LocalOutcome>> {
    let ctx: Arc<Completion> = Completion::new(v, precision);
    let coeffs: Vec<LocalElement> =
        f.coeffs().iter().map(|a| LocalElement::from_rf(&ctx, a, precision)).collect::<Result<_>>()?;
    let mut z = LocalElement::from_rf(&ctx, z0, precision)?;
    for step in start + 1..=budget {
        z = coeffs
            .iter()
            .rev()
            .fold(LocalElement::zero(&ctx), |acc, a| acc.mul(&z).add(a));
        match z.valuation() {
            LocalValuation::AtLeast(_) => return Ok(None),
            LocalValuation::Infinite => {}
            LocalValuation::Exact(val) => {
                if q(-val) > *theta {
                    return Ok(Some(LocalOutcome::Escaped { log_z: -val, step }));
                }
            }
        }
        if z.size_bits() > LOCAL_SIZE_LIMIT_BITS {
            return Ok(Some(LocalOutcome::Bounded { iterations: step }));
        }
    }
    Ok(Some(LocalOutcome::Bounded { iterations: budget }))
}

/// `g_crit,v(f_c) = log+ ||c||_v`.
pub fn g_crit_v_normal(c: &CritTuple, v: &Place) -> Q {
    q(log_plus_norm(c.entries(), v))
}

/// Maximum of `G_{f,v}` over the critical points of `f`.
pub fn g_crit_v_general(f: &PolynomialMap, v: &Place, opts: &GreenOptions) -> Result<GreenResult> {
    let crit = f.critical_points()?;
    let values = crit.iter().map(|c| green_function(f, c, v, opts)).collect::<Result<Vec<_>>>()?;
    Ok(max_of(values))
}

/// The maximum is certified when every value is certified, or when the
/// largest certified value dominates the upper bound of every other value.
pub fn max_of(values: Vec<GreenResult>) -> GreenResult {
    let upper = values.iter().map(|g| g.upper.clone()).max().unwrap_or_else(Q::zero);
    let best = values
        .iter()
        .filter(|g| g.is_certified())
        .max_by(|a, b| a.value.cmp(&b.value))
        .cloned();
    match best {
        Some(b) if b.value >= upper => b,
        _ => {
            let value = values.iter().map(|g| g.value.clone()).max().unwrap_or_else(Q::zero);
            let iterations = values
                .iter()
                .filter_map(|g| match g.status {
                    GreenStatus::BoundedUpTo { iterations } => Some(iterations),
                    _ => None,
                })
                .min()
                .unwrap_or(0);
            GreenResult { value, upper, status: GreenStatus::BoundedUpTo { iterations } }
        }
    }
}

impl GreenResult {
    /// The certified value, if any.
    pub fn certified_value(&self) -> Option<&Q> {
        self.is_certified().then_some(&self.value)
    }

    /// Whether the true value is certainly strictly smaller than `other`'s.
    pub fn certainly_below(&self, other: &GreenResult) -> bool {
        other.is_certified() && self.upper < other.value
    }
}
