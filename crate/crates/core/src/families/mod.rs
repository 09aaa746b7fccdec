//! Explicit families: ratio-realizing tuples, the sharp family and its
//! post-critically finite specializations.

mod aberth;
mod pcf;
mod range;
mod sharp;

pub use aberth::{aberth, relative_residual, AberthOutcome};
pub use pcf::{
    counted_roots, leading_law, pcf_find_numeric, pcf_levels, pcf_map, pcf_new_roots, pcf_polynomial,
    pcf_recursion_check, stated_leading, NumericRoot, PcfLevelReport, DEFAULT_NUMERIC_CAP, DEFAULT_NUMERIC_TOLERANCE,
    DEFAULT_ORBIT_TOLERANCE, DEFAULT_PCF_CAP,
};
pub use range::{range_family, RangeFamilySpec};
pub use sharp::{sharp_family, sharp_report, SharpFamilySpec, SharpReport, PARAMETER};
