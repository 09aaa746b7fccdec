//! The family `f(z) = (d-1) z^d - d t z^{d-1}` over the curve
//! `(d-1) P^{d-1} = d t P^{d-2} + 1`, parametrized by `P = s`.

use num_bigint::BigInt;

use crate::heights::{h_crit_general, CertifiedHeight};
use crate::localdyn::GreenOptions;
use crate::polyfam::{MarkedPeriodicPoint, PolynomialMap};
use crate::{Error, Poly, RationalFunction, Result, Q};

/// Rational functions in this module are in the parameter `s`.
pub const PARAMETER: &str = "s";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpFamilySpec {
    pub d: usize,
    /// `t(s) = ((d-1) s^{d-1} - 1) / (d s^{d-2})`.
    pub t_of_s: RationalFunction,
    /// `P(s) = s`.
    pub p_of_s: RationalFunction,
    /// `f` with coefficients in `Q(s)`.
    pub f: PolynomialMap,
}

fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn rf_int(n: i64) -> RationalFunction {
    RationalFunction::constant(int(n))
}

pub fn sharp_family(d: usize) -> Result<SharpFamilySpec> {
    if d < 3 {
        return Err(Error::DegreeTooSmall { min: 3, got: d });
    }
    let di = d as i64;
    let s = RationalFunction::t();
    let num = Poly::monomial(int(di - 1), d - 1) - Poly::one();
    let den = Poly::monomial(int(di), d - 2);
    let t_of_s = RationalFunction::new(num, den)?;
    let mut coeffs = vec![RationalFunction::zero(); d + 1];
    coeffs[d] = rf_int(di - 1);
    coeffs[d - 1] = -&t_of_s.scale(&int(di));
    let f = PolynomialMap::new(coeffs)?;
    let spec = SharpFamilySpec { d, t_of_s, p_of_s: s, f };
    assert!(spec.curve_residual().is_zero() && spec.fixed_point_residual().is_zero());
    Ok(spec)
}

impl SharpFamilySpec {
    /// `(d-1) P^{d-1} - d t P^{d-2} - 1`, identically zero.
    pub fn curve_residual(&self) -> RationalFunction {
        let di = self.d as i64;
        let p = &self.p_of_s;
        let pk = |k: usize| p.pow(k as i64).expect("nonzero");
        &(&pk(self.d - 1).scale(&int(di - 1)) - &(&self.t_of_s * &pk(self.d - 2)).scale(&int(di))) - &rf_int(1)
    }

    /// `f(P) - P`, identically zero.
    pub fn fixed_point_residual(&self) -> RationalFunction {
        &self.f.eval(&self.p_of_s) - &self.p_of_s
    }

    /// `lambda = d (d-1) P^{d-2} (P - t)` by direct substitution, without
    /// going through the map.
    pub fn multiplier_oracle(&self) -> RationalFunction {
        let di = self.d as i64;
        let p = &self.p_of_s;
        (&p.pow(self.d as i64 - 2).expect("nonzero") * &(p - &self.t_of_s)).scale(&int(di * (di - 1)))
    }
}

/// Computed invariants of the family next to the stated values `h_crit = d - 1`
/// and `deg lambda = 2d - 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpReport {
    pub d: usize,
    pub h_crit: CertifiedHeight,
    pub multiplier: RationalFunction,
    pub oracle_multiplier: RationalFunction,
    pub deg_lambda: usize,
    pub oracle_deg_lambda: usize,
    pub ratio: Q,
    pub stated_h_crit: usize,
    pub stated_deg_lambda: usize,
    pub agrees_stated_h_crit: bool,
    pub agrees_stated_deg_lambda: bool,
    pub agrees_d_minus_1: bool,
    pub agrees_oracle: bool,
}

pub fn sharp_report(d: usize, opts: &GreenOptions) -> Result<SharpReport> {
    let spec = sharp_family(d)?;
    let h_crit = h_crit_general(&spec.f, opts)?;
    let point = MarkedPeriodicPoint::new(&spec.f, spec.p_of_s.clone(), 1)?;
    let multiplier = spec.f.multiplier(&point)?;
    let oracle_multiplier = spec.multiplier_oracle();
    let deg_lambda = multiplier.degree()?;
    let oracle_deg_lambda = oracle_multiplier.degree()?;
    let ratio = Q::from_integer(BigInt::from(deg_lambda)) / &h_crit.value;
    let (stated_h_crit, stated_deg_lambda) = (d - 1, 2 * d - 3);
    Ok(SharpReport {
        d,
        agrees_stated_h_crit: h_crit.certified && h_crit.value == int(stated_h_crit as i64),
        agrees_stated_deg_lambda: deg_lambda == stated_deg_lambda,
        agrees_d_minus_1: deg_lambda == d - 1,
        agrees_oracle: multiplier == oracle_multiplier && deg_lambda == oracle_deg_lambda,
        h_crit,
        multiplier,
        oracle_multiplier,
        deg_lambda,
        oracle_deg_lambda,
        ratio,
        stated_h_crit,
        stated_deg_lambda,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::parse_rational_function_in;

    fn s(e: &str) -> RationalFunction {
        parse_rational_function_in(e, PARAMETER).unwrap()
    }

    #[test]
    fn cubic_member() {
        let spec = sharp_family(3).unwrap();
        assert_eq!(spec.t_of_s, s("(2*s^2 - 1)/(3*s)"));
        assert_eq!(spec.f.coeffs()[3], s("2"));
        assert_eq!(spec.f.coeffs()[2], s("-(2*s^2 - 1)/s"));
        assert_eq!(spec.multiplier_oracle(), s("2*(s^2 + 1)"));
    }

    #[test]
    fn identities() {
        for d in 3..=6 {
            let spec = sharp_family(d).unwrap();
            assert!(spec.curve_residual().is_zero());
            assert!(spec.fixed_point_residual().is_zero());
        }
        assert_eq!(sharp_family(2), Err(Error::DegreeTooSmall { min: 3, got: 2 }));
    }

    #[test]
    fn report_cubic() {
        let r = sharp_report(3, &GreenOptions::default()).unwrap();
        assert!(r.h_crit.certified);
        assert_eq!(r.h_crit.value, int(2));
        assert!(r.agrees_stated_h_crit && r.agrees_oracle && r.agrees_d_minus_1);
        assert_eq!(r.deg_lambda, 2);
        assert!(!r.agrees_stated_deg_lambda);
        assert_eq!(r.ratio, int(1));
    }
}
