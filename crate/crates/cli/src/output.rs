use critgap::localdyn::{GreenResult, GreenStatus};
use critgap::{Place, RationalFunction, Q};
use serde_json::{json, Map, Value};

use crate::args::Config;

/// Results and theorem-check failures of one invocation.
#[derive(Debug, Default)]
pub struct Outcome {
    pub results: Vec<Value>,
    pub failures: Vec<Value>,
    /// Computation errors met while processing a batch.
    pub errors: usize,
}

impl Outcome {
    pub fn single(result: Value) -> Self {
        Outcome { results: vec![result], ..Default::default() }
    }

    pub fn fail(&mut self, check: &str, detail: impl Into<String>) {
        self.failures.push(json!({ "check": check, "detail": detail.into() }));
    }

    pub fn exit_code(&self) -> i32 {
        if self.failures.iter().any(|f| f["check"] != "error") {
            3
        } else if self.errors > 0 {
            1
        } else {
            0
        }
    }
}

pub fn q(x: &Q) -> Value {
    Value::String(x.to_string())
}

pub fn rf(x: &RationalFunction, var: &str) -> Value {
    Value::String(x.display_with(var))
}

pub fn place(v: &Place, var: &str) -> Value {
    Value::String(v.display_with(var))
}

pub fn green(g: &GreenResult) -> Value {
    let status = match g.status {
        GreenStatus::Escaped { step } => json!({ "kind": "escaped", "step": step }),
        GreenStatus::GoodReduction => json!({ "kind": "good_reduction" }),
        GreenStatus::Preperiodic { preperiod, period } => {
            json!({ "kind": "preperiodic", "preperiod": preperiod, "period": period })
        }
        GreenStatus::BoundedUpTo { iterations } => json!({ "kind": "bounded", "iterations": iterations }),
        GreenStatus::Trapped { step } => json!({ "kind": "trapped", "step": step }),
    };
    json!({ "value": q(&g.value), "upper": q(&g.upper), "certified": g.is_certified(), "status": status })
}

pub fn config(c: &Config) -> Value {
    json!({
        "green_budget": c.green_budget,
        "precision_start": c.precision_start,
        "precision_cap": c.precision_cap,
        "iterate_cap": c.iterate_cap,
        "numeric_tolerance": c.numeric_tolerance,
        "seed": c.seed,
    })
}

pub fn document(command: &str, cfg: &Config, outcome: &Outcome) -> Value {
    json!({
        "command": command,
        "config": config(cfg),
        "results": outcome.results,
        "failures": outcome.failures,
    })
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(xs) if xs.iter().all(|x| !x.is_object()) => {
            out.push((prefix.to_string(), xs.iter().map(cell).collect::<Vec<_>>().join(",")));
        }
        Value::Array(_) => {}
        other => out.push((prefix.to_string(), cell(other))),
    }
}

/// One row per result, or one row per place when a result carries a
/// `places` table; nested arrays of records other than `places` are dropped.
pub fn tsv(outcome: &Outcome) -> String {
    let mut rows: Vec<Vec<(String, String)>> = Vec::new();
    for (i, r) in outcome.results.iter().enumerate() {
        let mut base = vec![("result".to_string(), i.to_string())];
        let scalars: Map<String, Value> = r
            .as_object()
            .map(|m| m.iter().filter(|(k, _)| k.as_str() != "places").map(|(k, v)| (k.clone(), v.clone())).collect())
            .unwrap_or_default();
        flatten("", &Value::Object(scalars), &mut base);
        match r.get("places").and_then(Value::as_array) {
            Some(places) if !places.is_empty() => {
                for p in places {
                    let mut row = base.clone();
                    flatten("place", p, &mut row);
                    rows.push(row);
                }
            }
            _ => rows.push(base),
        }
    }
    let mut header: Vec<String> = Vec::new();
    for row in &rows {
        for (k, _) in row {
            if !header.contains(k) {
                header.push(k.clone());
            }
        }
    }
    let mut text = header.join("\t");
    text.push('\n');
    for row in rows {
        let line: Vec<String> = header
            .iter()
            .map(|h| row.iter().find(|(k, _)| k == h).map(|(_, v)| v.clone()).unwrap_or_default())
            .collect();
        text.push_str(&line.join("\t"));
        text.push('\n');
    }
    for f in &outcome.failures {
        text.push_str(&format!("# failure\t{}\t{}\n", cell(&f["check"]), cell(&f["detail"])));
    }
    text
}
