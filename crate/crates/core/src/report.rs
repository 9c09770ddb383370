//! JSON renderings of reports. Numbers carry 17 significant digits so that
//! a report read back reproduces the exact binary values.

use serde_json::{json, Map, Number, Value};

use crate::agglomerate::StrategyComparison;
use crate::conditions::{Audit, ConditionVerdict, CounterexampleCertificate, Status};
use crate::dendrogram::InversionReport;
use crate::witness::{RepresentabilityWitness, WitnessConfiguration};
use crate::Scalar;

/// Formats `x` with 17 significant digits, positional when the decimal
/// exponent lies in `-5..=16`.
pub fn sig17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0.0" } else { "0.0" }.to_string();
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..=16).contains(&exp) {
        return sci;
    }
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let body = if exp < 0 {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    } else {
        let point = exp as usize + 1;
        if point >= digits.len() {
            format!("{}{}.0", digits, "0".repeat(point - digits.len()))
        } else {
            format!("{}.{}", &digits[..point], &digits[point..])
        }
    };
    format!("{sign}{body}")
}

/// A JSON number with 17 significant digits, or `null` when not finite.
pub fn number<T: Scalar>(x: T) -> Value {
    let x = x.as_f64();
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(sig17(x).parse::<Number>().expect("valid JSON number"))
}

fn numbers<T: Scalar>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(|&x| number(x)).collect())
}

pub fn inversion_report_json<T: Scalar>(report: &InversionReport<T>) -> Value {
    let inversions: Vec<Value> = report
        .inversions
        .iter()
        .map(|inv| {
            json!({
                "step": inv.step,
                "prev_height": number(inv.prev_height),
                "height": number(inv.height),
            })
        })
        .collect();
    json!({ "epsilon": number(report.epsilon), "inversions": inversions })
}

fn verdict_json<T: Scalar>(v: &ConditionVerdict<T>) -> Value {
    let mut obj = Map::new();
    obj.insert("holds".into(), Value::Bool(v.holds()));
    obj.insert(
        "applicable".into(),
        Value::Bool(v.status != Status::Inapplicable),
    );
    obj.insert("bounded".into(), Value::Bool(v.bounded));
    obj.insert("checked_bound".into(), json!(v.checked_bound));
    obj.insert("boundary_cases".into(), json!(v.boundary_cases));
    if let Some(viol) = &v.violation {
        let indices: Map<String, Value> = viol
            .indices
            .iter()
            .map(|&(k, i)| (k.to_string(), json!(i)))
            .collect();
        let mut vo = Map::new();
        vo.insert("indices".into(), Value::Object(indices));
        vo.insert("lhs".into(), number(viol.lhs));
        vo.insert("rhs".into(), number(viol.rhs));
        if !viol.ratios.is_empty() {
            vo.insert("ratios".into(), numbers(&viol.ratios));
        }
        obj.insert("violation".into(), Value::Object(vo));
    }
    Value::Object(obj)
}

fn counterexample_json<T: Scalar>(c: &CounterexampleCertificate<T>) -> Value {
    json!({
        "k": c.k,
        "n": c.n,
        "l": c.l,
        "m": c.m,
        "u": numbers(&c.u),
        "v": numbers(&c.v),
        "owa_u": number(c.owa_u),
        "owa_v": number(c.owa_v),
        "owa_uv": number(c.owa_uv),
        "margin": number(c.margin),
    })
}

pub fn audit_json<T: Scalar>(audit: &Audit<T>) -> Value {
    let verdicts: Map<String, Value> = audit
        .verdicts
        .iter()
        .map(|v| (v.condition.key().to_string(), verdict_json(v)))
        .collect();
    let checks: Vec<Value> = audit
        .cross_checks
        .iter()
        .map(|c| json!({ "name": c.name, "applicable": c.applicable, "passed": c.passed }))
        .collect();
    let skipped: Vec<Value> = audit
        .search
        .skipped
        .iter()
        .map(|&(k, n)| json!({ "k": k, "n": n }))
        .collect();
    let mut obj = Map::new();
    obj.insert("sequence".into(), numbers(audit.sequence.prefix()));
    obj.insert("tail".into(), json!(audit.sequence.tail().as_str()));
    obj.insert("M".into(), json!(audit.bound_m));
    obj.insert("N".into(), json!(audit.bound_n));
    obj.insert("verdicts".into(), Value::Object(verdicts));
    if let Some(c) = &audit.search.certificate {
        obj.insert("counterexample".into(), counterexample_json(c));
    }
    obj.insert("skipped_configurations".into(), Value::Array(skipped));
    obj.insert("cross_checks".into(), Value::Array(checks));
    Value::Object(obj)
}

fn configuration_json<T: Scalar>(c: &WitnessConfiguration<T>) -> Value {
    let matrix: Vec<Value> = c.distances.to_square().iter().map(|r| numbers(r)).collect();
    json!({
        "z": c.z,
        "u": c.u,
        "v": c.v,
        "d_zu": number(c.d_zu),
        "d_zv": number(c.d_zv),
        "d_uv": number(c.d_uv),
        "merged": number(c.merged),
        "matrix": matrix,
    })
}

/// `None` renders as a `"none within budget"` result.
pub fn witness_json<T: Scalar>(spec: &str, witness: Option<&RepresentabilityWitness<T>>) -> Value {
    match witness {
        None => json!({ "spec": spec, "witness": Value::Null, "result": "none within budget" }),
        Some(w) => json!({
            "spec": spec,
            "result": "witness",
            "witness": {
                "n_u": w.n_u,
                "n_v": w.n_v,
                "n_z": w.n_z,
                "separation": number(w.separation()),
                "first": configuration_json(&w.first),
                "second": configuration_json(&w.second),
            },
        }),
    }
}

pub fn comparison_json<T: Scalar>(method: &str, c: &StrategyComparison<T>) -> Value {
    json!({
        "method": method,
        "steps": c.steps,
        "max_height_difference": number(c.max_height_difference),
        "first_divergence": c.first_divergence,
    })
}
