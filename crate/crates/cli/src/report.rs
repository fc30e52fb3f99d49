//! Text and JSON renderings of library results.

use crate::args::Method;
use cyclotome::codes::AssumptionReport;
use cyclotome::cyclotomy::closed::Rational;
use cyclotome::cyclotomy::{ClosedFormParams, CyclotomicInteger};
use cyclotome::weights::{CaseClassification, MethodOutcome, VerificationReport};
use cyclotome::{Code, CodeSpec, WeightDistribution};
use serde_json::{json, Value};

pub fn method_name(method: Method) -> &'static str {
    match method {
        Method::Auto => "auto",
        Method::Naive => "naive",
        Method::Tsum => "tsum",
        Method::Closed => "closed",
    }
}

/// Integers as JSON numbers, anything else as its exact text form.
pub fn cyclotomic_json(v: &CyclotomicInteger) -> Value {
    v.as_integer().map_or_else(|| Value::String(v.to_string()), Value::from)
}

fn rational_json(v: &Rational) -> Value {
    if v.is_integer() {
        json!(*v.numer() as i64)
    } else {
        json!(v.to_string())
    }
}

pub fn closed_params_json(params: &ClosedFormParams) -> Value {
    match params {
        ClosedFormParams::Quadratic { sqrt_r } => json!({ "sqrt_r": sqrt_r }),
        ClosedFormParams::Cubic { c1, d1, cube_root_r } => json!({ "c1": c1, "d1": d1, "cube_root_r": cube_root_r }),
        ClosedFormParams::Semiprimitive { j, v, exceptional } => json!({ "j": j, "v": v, "exceptional": exceptional }),
        ClosedFormParams::Index2 { class_number, a, b, k, p_k, a_k, b_k, swapped } => json!({
            "class_number": class_number,
            "a": a,
            "b": b,
            "k": k,
            "P": rational_json(p_k),
            "A": rational_json(a_k),
            "B": rational_json(b_k),
            "swapped": swapped,
        }),
    }
}

pub fn closed_params_text(params: &ClosedFormParams) -> String {
    match params {
        ClosedFormParams::Quadratic { sqrt_r } => format!("sqrt(r) = {sqrt_r}"),
        ClosedFormParams::Cubic { c1, d1, cube_root_r } => format!("c1 = {c1}, d1 = {d1}, r^(1/3) = {cube_root_r}"),
        ClosedFormParams::Semiprimitive { j, v, exceptional } => format!("j = {j}, v = {v}, exceptional = {exceptional}"),
        ClosedFormParams::Index2 { class_number, a, b, k, p_k, a_k, b_k, swapped } => format!(
            "h = {class_number}, (a, b) = ({a}, {b}), k = {k}, P = {p_k}, A = {a_k}, B = {b_k}, swapped = {swapped}"
        ),
    }
}

pub fn assumptions_text(report: &AssumptionReport) -> String {
    let mark = |ok: bool| if ok { "holds" } else { "fails" };
    let mut text = format!(
        "condition i: {}\ncondition ii: {}\ncondition iii: {}",
        mark(report.condition_i),
        mark(report.condition_ii),
        mark(report.condition_iii)
    );
    if let Some(fast) = report.fast_criterion {
        text += &format!(" (also implied by {fast:?})");
    }
    text.push('\n');
    for failure in &report.failures {
        text += &format!("  {failure}\n");
    }
    text
}

/// The spec with the modulus actually used, so the output is reproducible.
pub fn resolved_spec(code: &Code) -> Value {
    let spec = CodeSpec { modulus: Some(code.tower().modulus().to_vec()), ..code.spec().clone() };
    serde_json::to_value(spec).expect("spec serializes")
}

pub fn weights_json(code: &Code, classification: &CaseClassification, wd: &WeightDistribution, agreed: bool) -> Value {
    json!({
        "spec": resolved_spec(code),
        "classification": classification.case.tag(),
        "n": wd.n(),
        "k": wd.dimension(),
        "d": wd.min_distance(),
        "weights": wd.entries().iter().map(|(w, c)| json!({ "w": w, "count": c.to_string() })).collect::<Vec<_>>(),
        "methods_agreed": agreed,
    })
}

fn outcome_json(outcome: &MethodOutcome) -> Value {
    match outcome {
        MethodOutcome::Computed(wd) => json!({ "status": "computed", "enumerator": wd.enumerator() }),
        MethodOutcome::Skipped(why) => json!({ "status": "skipped", "reason": why }),
        MethodOutcome::Failed(why) => json!({ "status": "failed", "reason": why }),
    }
}

fn outcome_text(outcome: &MethodOutcome) -> String {
    match outcome {
        MethodOutcome::Computed(wd) => wd.enumerator(),
        MethodOutcome::Skipped(why) => format!("skipped ({why})"),
        MethodOutcome::Failed(why) => format!("FAILED ({why})"),
    }
}

pub fn verification_json(report: &VerificationReport) -> Value {
    json!({
        "passed": report.passed(),
        "classification_trace": report.classification.trace,
        "naive": outcome_json(&report.naive),
        "tsum": outcome_json(&report.tsum),
        "closed": outcome_json(&report.closed),
        "first_difference": report.first_difference,
        "invariants": report.invariants.iter().map(|c| json!({
            "name": c.name,
            "passed": c.passed,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
        "sampling": report.sampling.as_ref().map(|s| json!({
            "samples": s.samples,
            "seed": s.seed,
            "outside_support": s.outside_support,
            "max_deviation_sigma": s.max_deviation_sigma,
            "passed": s.passed(),
            "error": s.error,
        })),
    })
}

pub fn verification_text(report: &VerificationReport) -> String {
    let mut text = format!("classification: {}\n", report.classification.case.tag());
    for step in &report.classification.trace {
        text += &format!("  {step}\n");
    }
    text += &format!("closed: {}\n", outcome_text(&report.closed));
    text += &format!("tsum:   {}\n", outcome_text(&report.tsum));
    text += &format!("naive:  {}\n", outcome_text(&report.naive));
    match &report.first_difference {
        Some(diff) => text += &format!("methods disagree: {diff}\n"),
        None if report.agreed => text += "methods agree\n",
        None => text += "no method produced a distribution\n",
    }
    for check in &report.invariants {
        text += &format!("{} {}: {}\n", if check.passed { "ok  " } else { "FAIL" }, check.name, check.detail);
    }
    if let Some(s) = &report.sampling {
        match &s.error {
            Some(e) => text += &format!("sampling failed: {e}\n"),
            None => {
                text += &format!(
                    "sampling: {} words (seed {}), max deviation {:.2} sigma, {} weights outside support\n",
                    s.samples,
                    s.seed,
                    s.max_deviation_sigma,
                    s.outside_support.len()
                )
            }
        }
    }
    text += if report.passed() { "PASS\n" } else { "FAIL\n" };
    text
}
