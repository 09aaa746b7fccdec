//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::time::{Duration, Instant};

use critgap::families::{
    counted_roots, pcf_find_numeric, pcf_new_roots, pcf_recursion_check, range_family, sharp_report,
    DEFAULT_ORBIT_TOLERANCE, DEFAULT_PCF_CAP,
};
use critgap::funcfield::{
    degree_by_places, height_tuple, log_plus, parse_rational_function, product_formula_sum, pullback, support_places,
};
use critgap::heights::{
    crit_agreement, gap_check, h_crit_general, h_crit_normal, hhat_crit, ratio, separation, AgreementRow,
};
use critgap::localdyn::{green_function, GreenOptions, GreenStatus};
use critgap::polyfam::build_normal_form;
use critgap::{CritTuple, Place, Poly, RationalFunction, Q};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CORPUS_SIZE: usize = 120;
const CORPUS_SEED: u64 = 2024;
const AGREEMENT_BUDGET: Duration = Duration::from_secs(60);
const PCF_BUDGET: Duration = Duration::from_secs(30);
const RESIDUAL_LIMIT: f64 = 1e-8;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn frac(a: i64, b: i64) -> Q {
    Q::new(BigInt::from(a), BigInt::from(b))
}

fn rf(s: &str) -> RationalFunction {
    parse_rational_function(s).unwrap()
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn lemma1_agreement(corpus: &[CritTuple], rows: &mut Vec<Vec<AgreementRow>>) -> Outcome {
    let opts = GreenOptions::default();
    let start = Instant::now();
    let mut places = 0;
    let mut bad = Vec::new();
    for (i, c) in corpus.iter().enumerate() {
        match crit_agreement(c, &opts) {
            Ok(r) => {
                places += r.len();
                if !r.iter().all(AgreementRow::agrees) {
                    bad.push(i);
                }
                rows.push(r);
            }
            Err(e) => {
                bad.push(i);
                rows.push(Vec::new());
                eprintln!("tuple {i}: {e}");
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && elapsed < AGREEMENT_BUDGET,
        format!("{} tuples, {places} places, disagreeing {bad:?}, {:.1}s (limit 60s)", corpus.len(), elapsed.as_secs_f64()),
    )
}

fn gap_inequality(corpus: &[CritTuple]) -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (i, c) in corpus.iter().enumerate() {
        if c.entries().iter().any(RationalFunction::is_zero) {
            continue;
        }
        checked += 1;
        if !gap_check(c).map(|r| r.holds).unwrap_or(false) {
            bad.push(i);
        }
    }
    outcome(bad.is_empty() && checked > 0, format!("{checked} tuples with nonzero entries, failing {bad:?}"))
}

fn lemma2_separation(corpus: &[CritTuple]) -> Outcome {
    let opts = GreenOptions::default();
    let (mut places, mut skipped) = (0, 0);
    let mut bad = Vec::new();
    for (i, c) in corpus.iter().enumerate() {
        if c.entries()[0].is_zero() {
            skipped += 1;
            continue;
        }
        match separation(c, &opts) {
            Ok(reports) => {
                places += reports.len();
                if !reports.iter().all(|r| r.holds()) {
                    bad.push(i);
                }
            }
            Err(_) => bad.push(i),
        }
    }
    outcome(bad.is_empty(), format!("{places} places checked, {skipped} tuples with c_1 = 0 skipped, failing {bad:?}"))
}

/// The per-place side uses the escape-computed `g_crit,v` from criterion 1.
fn multiplier_bound(corpus: &[CritTuple], rows: &[Vec<AgreementRow>]) -> Outcome {
    let mut bad = Vec::new();
    for (i, (c, rows)) in corpus.iter().zip(rows).enumerate() {
        let d1 = q(c.d() as i64 - 1);
        let lambda = c.multiplier_at_zero();
        let deg = if lambda.is_zero() { 0 } else { lambda.degree().unwrap() };
        let global = q(deg as i64) <= &d1 * h_crit_normal(c);
        let local = rows
            .iter()
            .all(|r| r.computed.is_certified() && q(log_plus(&lambda, &r.place)) <= &d1 * &r.computed.value);
        let report = ratio(c).map(|r| r.bounds_hold).unwrap_or(false);
        if !(global && local && report && !rows.is_empty()) {
            bad.push(i);
        }
    }
    outcome(bad.is_empty(), format!("{} tuples, failing {bad:?}", corpus.len()))
}

fn range_realization() -> Outcome {
    let mut cases = 0;
    let mut bad = Vec::new();
    for d in 3..=6usize {
        let top = q(d as i64 - 1);
        for x in [q(0), frac(1, 3), q(1), frac(5, 2), top.clone()] {
            if x > top {
                continue;
            }
            cases += 1;
            let ok = range_family(d, &x)
                .and_then(|spec| ratio(&spec.tuple))
                .is_ok_and(|r| r.ratio.as_ref() == Some(&x));
            if !ok {
                bad.push(format!("d={d} x={x}"));
            }
        }
        let zero = range_family(d, &q(0)).map(|s| h_crit_normal(&s.tuple));
        if zero.as_ref().ok() != Some(&top) {
            bad.push(format!("d={d} x=0 h_crit {zero:?}"));
        }
    }
    outcome(bad.is_empty(), format!("{cases} (d, x) pairs, failing {bad:?}"))
}

fn sharp_family_check() -> Outcome {
    let opts = GreenOptions::default();
    let mut notes = Vec::new();
    let mut ok = true;
    for d in 3..=5usize {
        match sharp_report(d, &opts) {
            Ok(r) => {
                let h_ok = r.h_crit.certified && r.h_crit.value == q(d as i64 - 1);
                ok &= h_ok && r.agrees_oracle;
                notes.push(format!(
                    "d={d}: h_crit {} certified {}, deg lambda {} (oracle {}, stated 2d-3 = {} {}, d-1 {})",
                    r.h_crit.value,
                    r.h_crit.certified,
                    r.deg_lambda,
                    r.oracle_deg_lambda,
                    r.stated_deg_lambda,
                    if r.agrees_stated_deg_lambda { "agrees" } else { "differs" },
                    if r.agrees_d_minus_1 { "agrees" } else { "differs" },
                ));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("d={d}: {e}"));
            }
        }
    }
    outcome(ok, notes.join("; "))
}

fn pcf_machinery() -> Outcome {
    let start = Instant::now();
    let d = 3;
    let mut bad = Vec::new();
    let mut worst = 0.0f64;
    for n in 1..=4usize {
        if !pcf_recursion_check(d, n, DEFAULT_PCF_CAP).unwrap_or(false) {
            bad.push(format!("n={n} recursion"));
        }
        let level = match pcf_new_roots(d, n, DEFAULT_PCF_CAP) {
            Ok(l) => l,
            Err(e) => {
                bad.push(format!("n={n}: {e}"));
                continue;
            }
        };
        if level.degree != d.pow(n as u32) {
            bad.push(format!("n={n} degree {}", level.degree));
        }
        if !level.divisible_by_t2 {
            bad.push(format!("n={n} not divisible by t^2"));
        }
        if n >= 2 && level.new_root_count == 0 {
            bad.push(format!("n={n} no new root"));
        }
        match pcf_find_numeric(d, n, 1e-10, DEFAULT_ORBIT_TOLERANCE) {
            Ok(roots) => {
                for r in &roots {
                    worst = worst.max(r.residual);
                    if !(r.residual < RESIDUAL_LIMIT && r.landing_step.is_some_and(|k| k <= n) && r.pcf) {
                        bad.push(format!("n={n} root {} residual {:e}", r.value, r.residual));
                    }
                }
                if counted_roots(level.zero_multiplicity, &roots) != d.pow(n as u32) {
                    bad.push(format!("n={n} root count"));
                }
            }
            Err(e) => bad.push(format!("n={n} numeric: {e}")),
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && elapsed < PCF_BUDGET,
        format!("d=3, n=1..4, worst residual {worst:.1e}, failing {bad:?}, {:.1}s (limit 30s)", elapsed.as_secs_f64()),
    )
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-3..=3)).collect();
    if c[deg] == 0 {
        c[deg] = 1;
    }
    Poly::from_ints(&c)
}

fn random_cover(rng: &mut ChaCha8Rng) -> RationalFunction {
    loop {
        let pi = RationalFunction::new(random_poly(rng, 4), random_poly(rng, 4)).unwrap();
        if !pi.is_constant() {
            return pi;
        }
    }
}

fn global_identities(corpus: &[CritTuple]) -> Outcome {
    let opts = GreenOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let mut bad: Vec<String> = Vec::new();

    let mut samples: Vec<RationalFunction> = corpus.iter().flat_map(|c| c.entries().to_vec()).collect();
    for _ in 0..50 {
        let num = random_poly(&mut rng, 5);
        samples.push(RationalFunction::new(num, random_poly(&mut rng, 5)).unwrap());
    }
    samples.retain(|a| !a.is_zero());
    for a in &samples {
        if product_formula_sum(a).ok() != Some(q(0)) {
            bad.push(format!("product formula for {a}"));
        }
        let by_places: i64 = support_places([a]).iter().map(|v| log_plus(a, v) * v.degree() as i64).sum();
        if degree_by_places(a).ok() != Some(a.degree().unwrap()) || by_places != a.degree().unwrap() as i64 {
            bad.push(format!("degree of {a}"));
        }
    }

    let mut pullbacks = 0;
    for c in corpus.iter().take(40) {
        let pi = random_cover(&mut rng);
        let deg_pi = q(pi.degree().unwrap() as i64);
        for a in c.entries() {
            let pulled = pullback(a, &pi).unwrap();
            if height_tuple(&[pulled]) != &deg_pi * height_tuple(std::slice::from_ref(a)) {
                bad.push(format!("h(pi*a) for {a}, pi = {pi}"));
            }
        }
        let pulled = c.pullback(&pi).unwrap();
        if h_crit_normal(&pulled) != &deg_pi * h_crit_normal(c) {
            bad.push(format!("pulled h_crit, pi = {pi}"));
        }
        pullbacks += 1;
    }
    // Escape-computed h_crit of a few pulled-back maps.
    for c in corpus.iter().filter(|c| c.d() <= 3).take(6) {
        let pi = RationalFunction::new(random_poly(&mut rng, 2), Poly::one()).unwrap();
        if pi.is_constant() {
            continue;
        }
        let f = build_normal_form(c).pullback(&pi).unwrap();
        let h = h_crit_general(&f, &opts).unwrap();
        if !(h.certified && h.value == q(pi.degree().unwrap() as i64) * h_crit_normal(c)) {
            bad.push(format!("escape h_crit of pullback by {pi}"));
        }
    }

    let mut sandwiched = 0;
    for (i, c) in corpus.iter().enumerate() {
        let h = h_crit_normal(c);
        match hhat_crit(&build_normal_form(c), &opts) {
            Ok(hh) if hh.certified => {
                sandwiched += 1;
                if !(h <= hh.value && hh.value <= q(c.d() as i64 - 1) * &h) {
                    bad.push(format!("sandwich for tuple {i}"));
                }
            }
            Ok(_) => {}
            Err(e) => bad.push(format!("hhat for tuple {i}: {e}")),
        }
    }

    let mut conjugated = 0;
    for c in corpus.iter().filter(|c| c.d() <= 4).take(20) {
        let a = RationalFunction::new(random_poly(&mut rng, 1), Poly::one()).unwrap();
        if a.is_zero() {
            continue;
        }
        let b = RationalFunction::new(random_poly(&mut rng, 1), random_poly(&mut rng, 1)).unwrap();
        let g = build_normal_form(c).conjugate(&a, &b).unwrap();
        match h_crit_general(&g, &opts) {
            Ok(h) if h.certified && h.value == h_crit_normal(c) => conjugated += 1,
            other => bad.push(format!("conjugation by ({a}, {b}): {other:?}")),
        }
    }

    let mut iterated = 0;
    for c in corpus.iter().filter(|c| c.d() <= 3).take(15) {
        let f = build_normal_form(c);
        let f2 = f.power(2);
        let mut places = support_places(c.entries());
        places.insert(Place::Infinity);
        for v in &places {
            for x in c.entries() {
                let (g1, g2) = (green_function(&f, x, v, &opts), green_function(&f2, x, v, &opts));
                if let (Ok(g1), Ok(g2)) = (g1, g2) {
                    if g1.is_certified() && g2.is_certified() {
                        iterated += 1;
                        if g1.value != g2.value {
                            bad.push(format!("G(f^2) at {v} for {x}"));
                        }
                    }
                }
            }
        }
    }

    outcome(
        bad.is_empty() && sandwiched > 0 && conjugated > 0 && iterated > 0,
        format!(
            "{} functions, {pullbacks} pullbacks, {sandwiched} certified sandwiches, {conjugated} conjugates, \
             {iterated} iterate comparisons, failing {bad:?}",
            samples.len()
        ),
    )
}

/// `f(z) = z^3/3 - (t+1) z^2/2 + t z` at infinity, where `log|t| = 1`.
///
/// Threshold: `a_3 = 1/3` has `log 0`, `a_2` and `a_1` have `log 1`, so
/// `theta = max(0, 1/1, 1/2) = 1` and `L = 0`.
///
/// `c_1 = t`: `log|t| = 1` is not above 1; `f(t) = -t^3/6 + t^2/2` has
/// `log 3 > 1`, so `G(t) = 3/3 = 1`.
///
/// `c_2 = 1`: `f(1) = t/2 - 1/6` has `log 1`; `f(f(1))` has leading term
/// `t^3/24 - t^3/8 = -t^3/12`, `log 3 > 1`, so `G(1) = 3/9 = 1/3`.
///
/// All coefficients and both critical points are integral at finite places,
/// so only infinity contributes: `hhat = 1 + 1/3 = 4/3`, `h_crit = max = 1`.
fn worked_fixture() -> Outcome {
    let opts = GreenOptions::default();
    let c = CritTuple::from_entries(vec![rf("t"), rf("1")]).unwrap();
    let f = build_normal_form(&c);
    let g1 = green_function(&f, &rf("t"), &Place::Infinity, &opts).unwrap();
    let g2 = green_function(&f, &rf("1"), &Place::Infinity, &opts).unwrap();
    let hhat = hhat_crit(&f, &opts).unwrap();
    let h = h_crit_general(&f, &opts).unwrap();
    let ok = g1.value == q(1)
        && g1.status == GreenStatus::Escaped { step: 1 }
        && g2.value == frac(1, 3)
        && g2.is_certified()
        && hhat.certified
        && hhat.value == frac(4, 3)
        && h.certified
        && h.value == q(1)
        && h_crit_normal(&c) == q(1);
    outcome(
        ok,
        format!("G(c_1) = {}, G(c_2) = {} ({:?}), hhat_crit = {}, h_crit = {}", g1.value, g2.value, g2.status, hhat.value, h.value),
    )
}

fn main() {
    let corpus = critgap::corpus::generate(CORPUS_SIZE, CORPUS_SEED);
    let mut rows = Vec::new();
    let results = [
        ("escape-computed g_crit equals log+ of the critical norm", lemma1_agreement(&corpus, &mut rows)),
        ("gap inequality", gap_inequality(&corpus)),
        ("separation of the first critical point", lemma2_separation(&corpus)),
        ("multiplier bound", multiplier_bound(&corpus, &rows)),
        ("range realization", range_realization()),
        ("sharp family", sharp_family_check()),
        ("PCF machinery", pcf_machinery()),
        ("global identities", global_identities(&corpus)),
        ("worked fixture d=3, c=(t,1)", worked_fixture()),
    ];
    let mut failed = 0;
    for (n, (name, o)) in results.iter().enumerate() {
        println!("criterion {} [{}] {name}: {}", n + 1, if o.ok { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.ok);
    }
    println!("acceptance: {} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
