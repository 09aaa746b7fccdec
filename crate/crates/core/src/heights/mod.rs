//! Critical heights, the S-set, the gap inequality and the multiplier-degree ratio.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::funcfield::{height_tuple, log_abs, log_plus, log_plus_norm, support_places};
use crate::localdyn::{green_function, max_of, GreenOptions, GreenResult};
use crate::polyfam::{CritTuple, MarkedPeriodicPoint, PolynomialMap};
use crate::{Divisor, Error, Place, RationalFunction, Result, Q};

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn weight(v: &Place) -> Q {
    q(v.degree() as i64)
}

/// One place's contribution to a global sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceTerm {
    pub place: Place,
    pub value: Q,
    pub upper: Q,
    pub certified: bool,
}

/// A sum over places of local terms weighted by `deg v`. When some term is
/// not certified, `value` is a lower bound and `upper` an upper bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedHeight {
    pub value: Q,
    pub upper: Q,
    pub certified: bool,
    pub terms: Vec<PlaceTerm>,
}

impl CertifiedHeight {
    fn from_terms(terms: Vec<PlaceTerm>) -> Self {
        let mut value = Q::zero();
        let mut upper = Q::zero();
        for t in &terms {
            value += &t.value * weight(&t.place);
            upper += &t.upper * weight(&t.place);
        }
        let certified = terms.iter().all(|t| t.certified);
        CertifiedHeight { value, upper, certified, terms }
    }
}

/// `h_crit(f_c) = h(c)`.
pub fn h_crit_normal(c: &CritTuple) -> Q {
    height_tuple(c.entries())
}

/// Places where some Green's function of a critical point can be nonzero.
fn dynamical_support(f: &PolynomialMap, crit: &[RationalFunction]) -> BTreeSet<Place> {
    support_places(f.coeffs().iter().chain(crit))
}

/// `sum_v deg(v) * max_c G_{f,v}(c)` with `G` computed by local iteration.
pub fn h_crit_general(f: &PolynomialMap, opts: &GreenOptions) -> Result<CertifiedHeight> {
    let crit = f.critical_points()?;
    let mut terms = Vec::new();
    for v in dynamical_support(f, &crit) {
        let values = crit.iter().map(|c| green_function(f, c, &v, opts)).collect::<Result<Vec<_>>>()?;
        let g = max_of(values);
        terms.push(PlaceTerm { certified: g.is_certified(), value: g.value, upper: g.upper, place: v });
    }
    Ok(CertifiedHeight::from_terms(terms))
}

/// `sum_c sum_v deg(v) * G_{f,v}(c)` over critical points with multiplicity.
pub fn hhat_crit(f: &PolynomialMap, opts: &GreenOptions) -> Result<CertifiedHeight> {
    let crit = f.critical_points()?;
    let mut terms = Vec::new();
    for v in dynamical_support(f, &crit) {
        let mut term = PlaceTerm { place: v.clone(), value: Q::zero(), upper: Q::zero(), certified: true };
        for c in &crit {
            let g = green_function(f, c, &v, opts)?;
            term.value += &g.value;
            term.upper += &g.upper;
            term.certified &= g.is_certified();
        }
        terms.push(term);
    }
    Ok(CertifiedHeight::from_terms(terms))
}

/// `D(f, c) = sum_v G_{f,v}(c) [v]` with uncertified entries left out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CritDivisor {
    pub divisor: Divisor,
    pub warnings: Vec<String>,
}

pub fn crit_divisor(f: &PolynomialMap, c: &RationalFunction, opts: &GreenOptions) -> Result<CritDivisor> {
    if !f.derivative().eval(c).is_zero() {
        return Err(Error::NotCritical(c.to_string()));
    }
    let mut divisor = Divisor::new();
    let mut warnings = Vec::new();
    for v in support_places(f.coeffs().iter().chain([c])) {
        let g = green_function(f, c, &v, opts)?;
        if g.is_certified() {
            divisor.add_term(v, g.value);
        } else {
            warnings.push(format!("G at {v} not certified: value in [0, {}]", g.upper));
        }
    }
    Ok(CritDivisor { divisor, warnings })
}

/// Places where `log|c_1|_v < log ||c||_v`.
pub fn s_set(c: &CritTuple) -> Result<BTreeSet<Place>> {
    let entries = c.entries();
    if entries[0].is_zero() {
        return Err(Error::ZeroFirstCritical);
    }
    Ok(support_places(entries)
        .into_iter()
        .filter(|v| {
            let l1 = log_abs(&entries[0], v).expect("nonzero");
            entries[1..].iter().filter_map(|a| log_abs(a, v)).any(|l| l > l1)
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    pub s_set: BTreeSet<Place>,
    pub lhs: Q,
    pub h_crit: Q,
    pub deg_lambda: usize,
    pub holds: bool,
}

/// `(d - 1) sum_{v in S} log+ ||c||_v deg v >= h_crit - deg lambda`.
pub fn gap_check(c: &CritTuple) -> Result<GapReport> {
    if c.entries().iter().any(RationalFunction::is_zero) {
        return Err(Error::Superattracting);
    }
    let s = s_set(c)?;
    let d = c.d() as i64;
    let lhs: Q = s.iter().map(|v| q((d - 1) * log_plus_norm(c.entries(), v)) * weight(v)).sum();
    let h_crit = h_crit_normal(c);
    let deg_lambda = c.multiplier_at_zero().degree()?;
    let holds = lhs >= &h_crit - q(deg_lambda as i64);
    Ok(GapReport { s_set: s, lhs, h_crit, deg_lambda, holds })
}

/// `log+|lambda|_v <= (d - 1) g_crit,v` at one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceBound {
    pub place: Place,
    pub log_plus_lambda: Q,
    pub bound: Q,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioReport {
    pub d: usize,
    pub deg_lambda: usize,
    pub h_crit: Q,
    /// `deg lambda / h_crit`; `None` for isotrivial tuples.
    pub ratio: Option<Q>,
    pub isotrivial: bool,
    /// `lambda = 0`; the degree is reported as 0.
    pub superattracting: bool,
    pub per_place: Vec<PlaceBound>,
    /// `0 <= ratio <= d - 1` and every per-place bound holds.
    pub bounds_hold: bool,
}

/// `deg lambda_{f_c}(0) / h_crit(f_c)` with the per-place bound checked.
pub fn ratio(c: &CritTuple) -> Result<RatioReport> {
    let lambda = c.multiplier_at_zero();
    let superattracting = lambda.is_zero();
    let deg_lambda = if superattracting { 0 } else { lambda.degree()? };
    let h_crit = h_crit_normal(c);
    let d = c.d() as i64;
    let per_place: Vec<PlaceBound> = support_places(c.entries())
        .into_iter()
        .map(|v| {
            let log_plus_lambda = q(log_plus(&lambda, &v));
            let bound = q((d - 1) * log_plus_norm(c.entries(), &v));
            PlaceBound { holds: log_plus_lambda <= bound, place: v, log_plus_lambda, bound }
        })
        .collect();
    Ok(finish_ratio(c.d(), deg_lambda, h_crit, superattracting, per_place))
}

fn finish_ratio(d: usize, deg_lambda: usize, h_crit: Q, superattracting: bool, per_place: Vec<PlaceBound>) -> RatioReport {
    let isotrivial = h_crit.is_zero();
    let ratio = (!isotrivial).then(|| q(deg_lambda as i64) / &h_crit);
    let in_range = ratio.as_ref().map_or(true, |r| !r.is_negative() && *r <= q(d as i64 - 1));
    let bounds_hold = in_range && per_place.iter().all(|b| b.holds);
    RatioReport { d, deg_lambda, h_crit, ratio, isotrivial, superattracting, per_place, bounds_hold }
}

/// The ratio for a general map and a marked periodic point, with `h_crit`
/// computed from local Green's functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralRatioReport {
    pub multiplier: RationalFunction,
    pub h_crit: CertifiedHeight,
    pub report: RatioReport,
}

pub fn ratio_general(f: &PolynomialMap, p: &MarkedPeriodicPoint, opts: &GreenOptions) -> Result<GeneralRatioReport> {
    let lambda = f.multiplier(p)?;
    let superattracting = lambda.is_zero();
    let deg_lambda = if superattracting { 0 } else { lambda.degree()? };
    let h = h_crit_general(f, opts)?;
    let d = f.degree() as i64;
    let per_place = h
        .terms
        .iter()
        .map(|t| {
            let log_plus_lambda = q(log_plus(&lambda, &t.place));
            let bound = q(d - 1) * &t.upper;
            PlaceBound { holds: log_plus_lambda <= bound, place: t.place.clone(), log_plus_lambda, bound }
        })
        .collect();
    let report = finish_ratio(f.degree(), deg_lambda, h.value.clone(), superattracting, per_place);
    Ok(GeneralRatioReport { multiplier: lambda, h_crit: h, report })
}

/// The separation statement at one place of the S-set with `log ||c||_v > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationReport {
    pub place: Place,
    pub norm: Q,
    pub epsilon: Q,
    pub bound: Q,
    pub first: GreenResult,
    /// Index (0-based) of a critical point certainly escaping faster than `c_1`.
    pub witness: Option<usize>,
    /// `G_v(c_1) <= (1 - 2 eps / d) log+ ||c||_v`, using the certified upper bound.
    pub bound_holds: bool,
}

impl SeparationReport {
    pub fn holds(&self) -> bool {
        self.witness.is_some() && self.bound_holds
    }
}

/// Checks the separation of `c_1` from the other critical points at every
/// place of the S-set where `log+ ||c||_v > 0`. Here
/// `eps = min(1, 1 - log|c_1|_v / log ||c||_v)`.
pub fn separation(c: &CritTuple, opts: &GreenOptions) -> Result<Vec<SeparationReport>> {
    let f = crate::polyfam::build_normal_form(c);
    let entries = c.entries();
    let d = c.d() as i64;
    let mut out = Vec::new();
    for v in s_set(c)? {
        let norm = log_plus_norm(entries, &v);
        if norm == 0 {
            continue;
        }
        let l1 = log_abs(&entries[0], &v).expect("c_1 nonzero");
        let epsilon = (q(1) - Q::new(BigInt::from(l1), BigInt::from(norm))).min(q(1));
        let bound = (q(1) - q(2) * &epsilon / q(d)) * q(norm);
        let values = entries.iter().map(|ci| green_function(&f, ci, &v, opts)).collect::<Result<Vec<_>>>()?;
        let first = values[0].clone();
        let witness = (1..values.len()).find(|&i| first.certainly_below(&values[i]));
        let bound_holds = first.upper <= bound;
        out.push(SeparationReport { place: v, norm: q(norm), epsilon, bound, first, witness, bound_holds });
    }
    Ok(out)
}

/// `g_crit,v` of the normal form from local iteration next to the closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementRow {
    pub place: Place,
    pub closed_form: Q,
    pub computed: GreenResult,
}

impl AgreementRow {
    pub fn agrees(&self) -> bool {
        self.computed.is_certified() && self.computed.value == self.closed_form
    }
}

/// Compares `g_crit_v_general(f_c, v)` with `log+ ||c||_v` at every support place.
pub fn crit_agreement(c: &CritTuple, opts: &GreenOptions) -> Result<Vec<AgreementRow>> {
    let f = crate::polyfam::build_normal_form(c);
    let crit = f.critical_points()?;
    dynamical_support(&f, &crit)
        .into_iter()
        .map(|v| {
            let values = crit.iter().map(|x| green_function(&f, x, &v, opts)).collect::<Result<Vec<_>>>()?;
            Ok(AgreementRow { closed_form: crate::localdyn::g_crit_v_normal(c, &v), computed: max_of(values), place: v })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::parse_rational_function as p;
    use crate::polyfam::build_normal_form;

    fn tuple(d: usize, items: &[&str]) -> CritTuple {
        CritTuple::new(d, items.iter().map(|s| p(s).unwrap()).collect()).unwrap()
    }

    fn frac(a: i64, b: i64) -> Q {
        Q::new(a.into(), b.into())
    }

    #[test]
    fn closed_form_heights() {
        assert_eq!(h_crit_normal(&tuple(4, &["t", "t", "1/t^2"])), q(3));
        assert_eq!(h_crit_normal(&tuple(3, &["2", "-5"])), q(0));
        assert_eq!(h_crit_normal(&tuple(4, &["t^2", "t^2", "t"])), q(2));
    }

    #[test]
    fn fixture_heights() {
        let f = build_normal_form(&tuple(3, &["t", "1"]));
        let opts = GreenOptions::default();
        let h = h_crit_general(&f, &opts).unwrap();
        assert!(h.certified);
        assert_eq!(h.value, q(1));
        let hh = hhat_crit(&f, &opts).unwrap();
        assert!(hh.certified);
        assert_eq!(hh.value, frac(4, 3));
    }

    #[test]
    fn divisors_of_fixture() {
        let f = build_normal_form(&tuple(3, &["t", "1"]));
        let opts = GreenOptions::default();
        let d1 = crit_divisor(&f, &p("t").unwrap(), &opts).unwrap();
        let d2 = crit_divisor(&f, &p("1").unwrap(), &opts).unwrap();
        assert!(d1.warnings.is_empty() && d2.warnings.is_empty());
        assert_eq!(d1.divisor.coeff(&Place::Infinity), q(1));
        assert_eq!(d2.divisor.coeff(&Place::Infinity), frac(1, 3));
        assert_eq!(d2.divisor.proportional_to(&d1.divisor), Some(frac(1, 3)));
        assert!(crit_divisor(&f, &p("2").unwrap(), &opts).is_err());
    }

    #[test]
    fn fixed_critical_point_has_empty_divisor() {
        // Sharp family d = 3 over Q(t): 0 is a fixed critical point.
        let f = PolynomialMap::new(vec![p("0").unwrap(), p("0").unwrap(), p("-3*t").unwrap(), p("2").unwrap()])
            .unwrap();
        let d0 = crit_divisor(&f, &RationalFunction::zero(), &GreenOptions::default()).unwrap();
        assert!(d0.divisor.is_empty());
    }

    #[test]
    fn s_set_examples() {
        assert_eq!(s_set(&tuple(3, &["1", "t"])).unwrap(), BTreeSet::from([Place::Infinity]));
        assert_eq!(s_set(&tuple(3, &["t", "1"])).unwrap(), BTreeSet::from([Place::at(Q::zero())]));
        assert!(s_set(&tuple(3, &["t", "t"])).unwrap().is_empty());
        assert_eq!(s_set(&tuple(3, &["0", "t"])), Err(Error::ZeroFirstCritical));
    }

    #[test]
    fn gap_examples() {
        let r = gap_check(&tuple(3, &["1", "t"])).unwrap();
        assert_eq!((r.lhs.clone(), r.h_crit.clone(), r.deg_lambda, r.holds), (q(2), q(1), 1, true));
        let r = gap_check(&tuple(3, &["2", "3"])).unwrap();
        assert_eq!((r.lhs.clone(), r.h_crit.clone(), r.deg_lambda, r.holds), (q(0), q(0), 0, true));
        let r = gap_check(&tuple(4, &["t^2", "t^2", "t"])).unwrap();
        assert_eq!(r.s_set, BTreeSet::from([Place::at(Q::zero())]));
        assert_eq!((r.lhs.clone(), r.h_crit.clone(), r.deg_lambda, r.holds), (q(0), q(2), 5, true));
        assert_eq!(gap_check(&tuple(3, &["0", "t"])), Err(Error::Superattracting));
    }

    #[test]
    fn ratio_examples() {
        let r = ratio(&tuple(4, &["t^2", "t^2", "t"])).unwrap();
        assert_eq!(r.ratio, Some(frac(5, 2)));
        assert!(r.bounds_hold);
        let r = ratio(&tuple(4, &["t", "t", "1/t^2"])).unwrap();
        assert_eq!((r.deg_lambda, r.h_crit.clone(), r.ratio.clone()), (0, q(3), Some(q(0))));
        let r = ratio(&tuple(3, &["t", "t"])).unwrap();
        assert_eq!(r.ratio, Some(q(2)));
        let r = ratio(&tuple(3, &["1", "2"])).unwrap();
        assert!(r.isotrivial && r.ratio.is_none());
        let r = ratio(&tuple(3, &["0", "t"])).unwrap();
        assert!(r.superattracting && r.deg_lambda == 0);
    }

    #[test]
    fn separation_on_examples() {
        let opts = GreenOptions::default();
        for c in [tuple(3, &["1", "t"]), tuple(4, &["t", "t^3", "1/t"]), tuple(3, &["1/t", "1/t^3"])] {
            let reports = separation(&c, &opts).unwrap();
            assert!(!reports.is_empty());
            for r in reports {
                assert!(r.holds(), "{c:?} {r:?}");
            }
        }
    }

    #[test]
    fn agreement_and_conjugation() {
        let opts = GreenOptions::default();
        let c = tuple(4, &["t", "t+1", "1/(t^2+1)"]);
        for row in crit_agreement(&c, &opts).unwrap() {
            assert!(row.agrees(), "{row:?}");
        }
        let f = build_normal_form(&c);
        let g = f.conjugate(&p("t - 2").unwrap(), &p("1/t").unwrap()).unwrap();
        let h = h_crit_general(&g, &opts).unwrap();
        assert!(h.certified);
        assert_eq!(h.value, h_crit_normal(&c));
    }

    #[test]
    fn general_ratio_of_fixed_point() {
        let c = tuple(3, &["t", "t"]);
        let f = build_normal_form(&c);
        let p0 = MarkedPeriodicPoint::new(&f, RationalFunction::zero(), 1).unwrap();
        let r = ratio_general(&f, &p0, &GreenOptions::default()).unwrap();
        assert_eq!(r.report.ratio, Some(q(2)));
        assert!(r.report.bounds_hold);
    }
}
