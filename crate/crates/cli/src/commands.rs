use std::fmt;

use critgap::families::{
    pcf_new_roots, pcf_recursion_check, range_family, sharp_family, sharp_report, DEFAULT_ORBIT_TOLERANCE,
    DEFAULT_PCF_CAP, PARAMETER,
};
use critgap::funcfield::{log_abs, log_plus_norm, parse_poly, parse_q, parse_rational_function, support_places};
use critgap::heights::{
    crit_agreement, gap_check, h_crit_general, h_crit_normal, hhat_crit, ratio, s_set, separation, CertifiedHeight,
};
use critgap::localdyn::{escape_threshold, g_crit_v_normal, green_function, GreenOptions};
use critgap::polyfam::build_normal_form;
use critgap::{CritTuple, Error, MarkedPeriodicPoint, Place, PolynomialMap, RationalFunction, Q};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{Check, Command, Config, MapInput};
use crate::output::{self, green, place, q, rf, Outcome};

const T: &str = "t";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Compute(e) => write!(f, "computation error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. } | Error::Config(_) => CliError::Usage(e.to_string()),
            other => CliError::Compute(other),
        }
    }
}

type Res<T> = std::result::Result<T, CliError>;

fn expr(text: &str) -> Res<RationalFunction> {
    parse_rational_function(text).map_err(|e| CliError::Usage(format!("`{text}`: {e}")))
}

fn exprs(texts: &[String]) -> Res<Vec<RationalFunction>> {
    texts.iter().map(|s| expr(s)).collect()
}

fn tuple(texts: &[String]) -> Res<CritTuple> {
    CritTuple::from_entries(exprs(texts)?).map_err(|e| CliError::Usage(e.to_string()))
}

fn poly_map(texts: &[String]) -> Res<PolynomialMap> {
    PolynomialMap::new(exprs(texts)?).map_err(|e| CliError::Usage(e.to_string()))
}

fn parse_place(text: &str) -> Res<Place> {
    if text.trim().eq_ignore_ascii_case("inf") {
        return Ok(Place::Infinity);
    }
    let p = parse_poly(text, T).map_err(|e| CliError::Usage(format!("`{text}`: {e}")))?;
    Place::from_irreducible(&p).map_err(|e| CliError::Usage(e.to_string()))
}

fn entries_json(c: &CritTuple, var: &str) -> Value {
    Value::Array(c.entries().iter().map(|e| rf(e, var)).collect())
}

fn coeffs_json(f: &PolynomialMap, var: &str) -> Value {
    Value::Array(f.coeffs().iter().map(|e| rf(e, var)).collect())
}

fn options(cfg: &Config) -> GreenOptions {
    GreenOptions { budget: cfg.green_budget, precision_start: cfg.precision_start, precision_cap: cfg.precision_cap }
}

fn int(n: usize) -> Q {
    Q::from_integer(n.into())
}

fn height_json(h: &CertifiedHeight) -> Value {
    json!({ "value": q(&h.value), "upper": q(&h.upper), "certified": h.certified })
}

/// `h <= hhat <= (d - 1) h`; `None` when either side is uncertified.
fn sandwich(d: usize, h: &Q, hhat: &CertifiedHeight) -> Option<bool> {
    hhat.certified.then(|| *h <= hhat.value && hhat.value <= int(d - 1) * h)
}

pub fn run(command: &Command, cfg: &Config) -> Res<Outcome> {
    let opts = options(cfg);
    match command {
        Command::Height { exprs: texts } => height(texts),
        Command::Hcrit(input) => hcrit(input, &opts),
        Command::Green { poly, point, place } => green_cmd(poly, point, place, &opts),
        Command::Multiplier(t) => multiplier(&t.tuple),
        Command::Sset(t) => sset(&t.tuple),
        Command::Gapcheck(t) => gapcheck(&t.tuple),
        Command::Ratio(t) => ratio_cmd(&t.tuple),
        Command::RangeFamily { d, x } => range(*d, x),
        Command::Sharp { d } => sharp(*d, &opts),
        Command::Pcf { d, n, numeric } => pcf(*d, *n, *numeric, cfg),
        Command::Corpus { count, check } => corpus(*count, check, cfg, &opts),
    }
}

fn height(texts: &[String]) -> Res<Outcome> {
    let items = exprs(texts)?;
    let places: Vec<Value> = support_places(&items)
        .iter()
        .map(|v| json!({ "place": place(v, T), "degree": v.degree(), "log_plus_norm": log_plus_norm(&items, v) }))
        .collect();
    Ok(Outcome::single(json!({
        "entries": items.iter().map(|e| rf(e, T)).collect::<Vec<_>>(),
        "height": q(&critgap::funcfield::height_tuple(&items)),
        "places": places,
    })))
}

fn hcrit(input: &MapInput, opts: &GreenOptions) -> Res<Outcome> {
    let (f, c) = match (&input.tuple, &input.poly) {
        (Some(t), _) => {
            let c = tuple(t)?;
            (build_normal_form(&c), Some(c))
        }
        (None, Some(p)) => (poly_map(p)?, None),
        (None, None) => return Err(CliError::Usage("one of --tuple or --poly is required".into())),
    };
    let d = f.degree();
    let general = h_crit_general(&f, opts)?;
    let hhat = hhat_crit(&f, opts)?;
    let mut outcome = Outcome::default();
    let mut result = json!({
        "d": d,
        "map": coeffs_json(&f, T),
        "h_crit_escape": height_json(&general),
        "hhat_crit": height_json(&hhat),
    });
    let places: Vec<Value> = general
        .terms
        .iter()
        .map(|term| {
            let mut row = json!({
                "place": place(&term.place, T),
                "g_crit": q(&term.value),
                "g_crit_upper": q(&term.upper),
                "certified": term.certified,
            });
            if let Some(c) = &c {
                row["closed_form"] = q(&g_crit_v_normal(c, &term.place));
            }
            row
        })
        .collect();
    let reference = match &c {
        Some(c) => {
            let closed = h_crit_normal(c);
            result["tuple"] = entries_json(c, T);
            result["h_crit"] = q(&closed);
            let agrees = general.certified && general.value == closed;
            result["agreement"] = json!(agrees);
            if !agrees {
                outcome.fail("agreement", format!("escape value {} vs closed form {closed}", general.value));
            }
            closed
        }
        None => {
            result["h_crit"] = q(&general.value);
            general.value.clone()
        }
    };
    let sw = if general.certified { sandwich(d, &reference, &hhat) } else { None };
    result["sandwich"] = json!(sw);
    if sw == Some(false) {
        outcome.fail("sandwich", format!("h_crit {reference}, hhat_crit {}", hhat.value));
    }
    result["places"] = Value::Array(places);
    outcome.results.push(result);
    Ok(outcome)
}

fn green_cmd(poly: &[String], point: &str, place_text: &str, opts: &GreenOptions) -> Res<Outcome> {
    let f = poly_map(poly)?;
    let p = expr(point)?;
    let v = parse_place(place_text)?;
    let g = green_function(&f, &p, &v, opts)?;
    let mut result = green(&g);
    result["place"] = place(&v, T);
    result["point"] = rf(&p, T);
    result["threshold"] = q(&escape_threshold(&f, &v));
    Ok(Outcome::single(result))
}

fn multiplier(texts: &[String]) -> Res<Outcome> {
    let c = tuple(texts)?;
    let f = build_normal_form(&c);
    let lambda = c.multiplier_at_zero();
    let direct = f.multiplier(&MarkedPeriodicPoint::new(&f, RationalFunction::zero(), 1)?)?;
    let mut outcome = Outcome::single(json!({
        "d": c.d(),
        "tuple": entries_json(&c, T),
        "multiplier": rf(&lambda, T),
        "deg_lambda": if lambda.is_zero() { Value::Null } else { json!(lambda.degree()?) },
        "superattracting": lambda.is_zero(),
    }));
    if direct != lambda {
        outcome.fail("multiplier", format!("derivative product {direct} vs {lambda}"));
    }
    Ok(outcome)
}

fn sset(texts: &[String]) -> Res<Outcome> {
    let c = tuple(texts)?;
    let s = s_set(&c)?;
    let places: Vec<Value> = s
        .iter()
        .map(|v| {
            json!({
                "place": place(v, T),
                "log_abs_c1": log_abs(&c.entries()[0], v),
                "log_plus_norm": log_plus_norm(c.entries(), v),
            })
        })
        .collect();
    Ok(Outcome::single(json!({
        "tuple": entries_json(&c, T),
        "s_set": s.iter().map(|v| place(v, T)).collect::<Vec<_>>(),
        "places": places,
    })))
}

fn gapcheck(texts: &[String]) -> Res<Outcome> {
    let c = tuple(texts)?;
    let r = gap_check(&c)?;
    let mut outcome = Outcome::single(json!({
        "tuple": entries_json(&c, T),
        "s_set": r.s_set.iter().map(|v| place(v, T)).collect::<Vec<_>>(),
        "lhs": q(&r.lhs),
        "h_crit": q(&r.h_crit),
        "deg_lambda": r.deg_lambda,
        "holds": r.holds,
    }));
    if !r.holds {
        outcome.fail("gap", format!("lhs {} < h_crit {} - deg_lambda {}", r.lhs, r.h_crit, r.deg_lambda));
    }
    Ok(outcome)
}

fn ratio_json(c: &CritTuple, var: &str) -> Res<(Value, bool)> {
    let r = ratio(c)?;
    let places: Vec<Value> = r
        .per_place
        .iter()
        .map(|b| {
            json!({
                "place": place(&b.place, var),
                "log_plus_lambda": q(&b.log_plus_lambda),
                "bound": q(&b.bound),
                "holds": b.holds,
            })
        })
        .collect();
    let value = json!({
        "d": r.d,
        "tuple": entries_json(c, var),
        "deg_lambda": r.deg_lambda,
        "h_crit": q(&r.h_crit),
        "ratio": r.ratio.as_ref().map(q),
        "isotrivial": r.isotrivial,
        "superattracting": r.superattracting,
        "bounds_hold": r.bounds_hold,
        "places": places,
    });
    Ok((value, r.bounds_hold))
}

fn ratio_cmd(texts: &[String]) -> Res<Outcome> {
    let c = tuple(texts)?;
    let (value, holds) = ratio_json(&c, T)?;
    let mut outcome = Outcome::single(value);
    if !holds {
        outcome.fail("multiplier_bound", "ratio outside [0, d - 1] or a per-place bound fails");
    }
    Ok(outcome)
}

fn range(d: usize, x_text: &str) -> Res<Outcome> {
    let x = parse_q(x_text).ok_or_else(|| CliError::Usage(format!("`{x_text}` is not a rational number")))?;
    let spec = range_family(d, &x)?;
    let (mut value, holds) = ratio_json(&spec.tuple, T)?;
    let realized = value["ratio"] == q(&x);
    value["x"] = q(&x);
    value["m"] = json!(spec.m);
    value["q"] = json!(spec.q);
    value["r"] = json!(spec.r);
    value["realized"] = json!(realized);
    let mut outcome = Outcome::single(value);
    if !realized {
        outcome.fail("range", format!("family does not realize {x}"));
    }
    if !holds {
        outcome.fail("multiplier_bound", "ratio outside [0, d - 1] or a per-place bound fails");
    }
    Ok(outcome)
}

fn sharp(d: usize, opts: &GreenOptions) -> Res<Outcome> {
    let spec = sharp_family(d)?;
    let r = sharp_report(d, opts)?;
    let s = PARAMETER;
    let places: Vec<Value> = r
        .h_crit
        .terms
        .iter()
        .map(|t| json!({ "place": place(&t.place, s), "g_crit": q(&t.value), "certified": t.certified }))
        .collect();
    let mut outcome = Outcome::single(json!({
        "parameter": s,
        "note": format!("all expressions are in the parameter {s}; t = t({s})"),
        "d": d,
        "t_of_s": rf(&spec.t_of_s, s),
        "point": rf(&spec.p_of_s, s),
        "map": coeffs_json(&spec.f, s),
        "multiplier": rf(&r.multiplier, s),
        "oracle_multiplier": rf(&r.oracle_multiplier, s),
        "deg_lambda": r.deg_lambda,
        "oracle_deg_lambda": r.oracle_deg_lambda,
        "h_crit": q(&r.h_crit.value),
        "h_crit_certified": r.h_crit.certified,
        "ratio": q(&r.ratio),
        "stated_h_crit": r.stated_h_crit,
        "stated_deg_lambda": r.stated_deg_lambda,
        "agrees_stated_h_crit": r.agrees_stated_h_crit,
        "agrees_stated_deg_lambda": r.agrees_stated_deg_lambda,
        "agrees_d_minus_1": r.agrees_d_minus_1,
        "agrees_oracle": r.agrees_oracle,
        "places": places,
    }));
    if !r.agrees_oracle {
        outcome.fail("sharp_oracle", format!("multiplier {} vs oracle {}", r.multiplier, r.oracle_multiplier));
    }
    if !r.agrees_stated_h_crit {
        outcome.fail("sharp_h_crit", format!("h_crit {} (certified: {})", r.h_crit.value, r.h_crit.certified));
    }
    Ok(outcome)
}

fn pcf(d: usize, n: usize, numeric: bool, cfg: &Config) -> Res<Outcome> {
    if n > cfg.iterate_cap {
        return Err(CliError::Compute(Error::IterationCap { n, cap: cfg.iterate_cap }));
    }
    let mut outcome = Outcome::default();
    for k in 1..=n {
        let mut level = pcf_new_roots(d, k, DEFAULT_PCF_CAP)?;
        if numeric {
            level = level.with_numeric(cfg.numeric_tolerance, DEFAULT_ORBIT_TOLERANCE)?;
        }
        let recursion = pcf_recursion_check(d, k, DEFAULT_PCF_CAP)?;
        let expected_degree = d.pow(k as u32);
        let mut value = json!({
            "d": d,
            "n": k,
            "degree": level.degree,
            "leading": q(&level.leading),
            "leading_matches_law": level.leading_matches_law,
            "leading_matches_stated": level.leading_matches_stated,
            "divisible_by_t2": level.divisible_by_t2,
            "zero_multiplicity": level.zero_multiplicity,
            "new_factor": level.new_factor.display_with(T),
            "new_root_count": level.new_root_count,
            "recursion_holds": recursion,
        });
        if let Some(roots) = &level.numeric_roots {
            value["numeric_roots"] = roots
                .iter()
                .map(|r| {
                    json!({
                        "re": format!("{:.16e}", r.value.re),
                        "im": format!("{:.16e}", r.value.im),
                        "multiplicity": r.multiplicity,
                        "residual": r.residual,
                        "converged": r.converged,
                        "landing_step": r.landing_step,
                        "pcf": r.pcf,
                    })
                })
                .collect();
            value["numeric_precision"] = json!({ "significant_digits": 17, "tolerance": cfg.numeric_tolerance });
            for r in roots.iter().filter(|r| !r.converged || !r.pcf) {
                outcome.fail("pcf_numeric", format!("level {k}: root {} residual {:e}", r.value, r.residual));
            }
        }
        let checks = [
            ("pcf_recursion", recursion),
            ("pcf_degree", level.degree == expected_degree),
            ("pcf_t2", level.divisible_by_t2),
            ("pcf_leading", level.leading_matches_law),
            ("pcf_new_roots", k < 2 || level.new_root_count >= 1),
        ];
        for (name, ok) in checks {
            if !ok {
                outcome.fail(name, format!("level {k}"));
            }
        }
        outcome.results.push(value);
    }
    Ok(outcome)
}

fn wants(checks: &[Check], c: Check) -> bool {
    checks.contains(&Check::All) || checks.contains(&c)
}

/// Checks of one corpus tuple: `(name, Some(pass) | None if not applicable)`.
fn corpus_entry(c: &CritTuple, checks: &[Check], opts: &GreenOptions) -> critgap::Result<Vec<(&'static str, Option<bool>)>> {
    let mut out = Vec::new();
    let has_zero = c.entries().iter().any(RationalFunction::is_zero);
    if wants(checks, Check::Agreement) {
        let rows = crit_agreement(c, opts)?;
        out.push(("agreement", Some(rows.iter().all(|r| r.agrees()))));
    }
    if wants(checks, Check::Gap) {
        out.push(("gap", if has_zero { None } else { Some(gap_check(c)?.holds) }));
    }
    if wants(checks, Check::Separation) {
        let ok = if c.entries()[0].is_zero() { None } else { Some(separation(c, opts)?.iter().all(|r| r.holds())) };
        out.push(("separation", ok));
    }
    if wants(checks, Check::Multiplier) {
        out.push(("multiplier_bound", Some(ratio(c)?.bounds_hold)));
    }
    if wants(checks, Check::Sandwich) {
        let hhat = hhat_crit(&build_normal_form(c), opts)?;
        out.push(("sandwich", sandwich(c.d(), &h_crit_normal(c), &hhat)));
    }
    Ok(out)
}

fn corpus(count: usize, checks: &[Check], cfg: &Config, opts: &GreenOptions) -> Res<Outcome> {
    let tuples = critgap::corpus::generate(count, cfg.seed);
    let evaluated: Vec<_> = tuples.par_iter().map(|c| corpus_entry(c, checks, opts)).collect();
    let mut outcome = Outcome::default();
    for (i, (c, res)) in tuples.iter().zip(evaluated).enumerate() {
        let mut value = json!({ "index": i, "d": c.d(), "tuple": entries_json(c, T), "h_crit": q(&h_crit_normal(c)) });
        match res {
            Ok(rows) => {
                for (name, ok) in rows {
                    value[name] = json!(ok);
                    if ok == Some(false) {
                        outcome.fail(name, format!("tuple {i}"));
                    }
                }
            }
            Err(e) => {
                value["error"] = json!(e.to_string());
                outcome.errors += 1;
                outcome.fail("error", format!("tuple {i}: {e}"));
            }
        }
        outcome.results.push(value);
    }
    Ok(outcome)
}

pub fn render(command: &Command, cfg: &Config, outcome: &Outcome, tsv: bool) -> String {
    if tsv {
        output::tsv(outcome)
    } else {
        let doc = output::document(command.name(), cfg, outcome);
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    }
}
