//! JSON and text rendering of core reports. Field names here are a stable
//! interface for scripts.

use nekrasov_lcp::{BoundReport, ClassificationReport, ErrorCertificate, OracleEstimate, Sweep};
use serde_json::{json, Map, Value};

pub fn bound_json(r: &BoundReport) -> Value {
    let mut obj = Map::new();
    obj.insert("theorem".into(), json!(r.theorem.name()));
    obj.insert("applicable".into(), json!(r.applicable()));
    if let Some(reason) = r.reason() {
        obj.insert("reason".into(), json!(reason.to_string()));
    }
    if let Some(eps) = r.epsilon {
        obj.insert("epsilon".into(), json!(eps));
    }
    if let Some(v) = r.value() {
        obj.insert("value".into(), json!(v));
    }
    if !r.intermediates.is_empty() {
        let inter: Map<String, Value> = r
            .intermediates
            .iter()
            .map(|(k, v)| ((*k).to_string(), json!(v)))
            .collect();
        obj.insert("intermediates".into(), Value::Object(inter));
    }
    Value::Object(obj)
}

pub fn classification_json(c: &ClassificationReport) -> Value {
    json!({
        "is_sdd": c.is_sdd,
        "is_z_matrix": c.is_z_matrix,
        "is_nekrasov": c.is_nekrasov,
        "is_b_matrix": c.is_b_matrix,
        "is_b_nekrasov": c.is_b_nekrasov,
        "is_h_matrix": c.is_h_matrix,
        "is_p_matrix": c.is_p_matrix,
        "notes": c.notes,
    })
}

pub fn oracle_json(o: &OracleEstimate) -> Value {
    json!({
        "max_observed": o.max_observed,
        "argmax_d": o.argmax_d,
        "vertex_count": o.vertex_count,
        "samples": o.interior_samples,
        "seed": o.seed,
    })
}

pub fn certificate_json(c: &ErrorCertificate) -> Value {
    json!({
        "trial_x": c.trial_x,
        "residual_norm": c.residual_norm,
        "true_error": c.true_error,
        "bound_value": c.bound_value,
        "holds": c.holds,
    })
}

fn gp_cell(v: Option<f64>) -> String {
    match v {
        Some(v) if v.is_infinite() => "inf".to_string(),
        Some(v) => v.to_string(),
        None => "n/a".to_string(),
    }
}

/// `epsilon,gp_bound,new_bound` with one row per grid point.
pub fn sweep_csv(s: &Sweep) -> String {
    let mut out = String::from("epsilon,gp_bound,new_bound\n");
    for r in &s.rows {
        out.push_str(&format!("{},{},{}\n", r.epsilon, gp_cell(r.gp_bound), r.new_bound));
    }
    out
}

pub fn sweep_json(path: &str, s: &Sweep) -> Value {
    let rows: Vec<Value> = s
        .rows
        .iter()
        .map(|r| json!({"epsilon": r.epsilon, "gp_bound": r.gp_bound, "new_bound": r.new_bound}))
        .collect();
    json!({
        "matrix": path,
        "theorem": s.theorem.name(),
        "reference": s.reference.name(),
        "interval": [0.0, s.upper],
        "rows": rows,
    })
}

pub fn sweep_text(s: &Sweep) -> String {
    let mut out = format!(
        "{} over (0, {}) against {}\n{:>14} {:>18} {:>18}\n",
        s.theorem, s.upper, s.reference, "epsilon", "gp_bound", "new_bound"
    );
    for r in &s.rows {
        out.push_str(&format!(
            "{:>14.8} {:>18} {:>18.6}\n",
            r.epsilon,
            gp_cell(r.gp_bound),
            r.new_bound
        ));
    }
    out
}

pub fn bound_line(r: &BoundReport) -> String {
    let eps = r.epsilon.map(|e| format!(" (epsilon = {e})")).unwrap_or_default();
    match r.outcome {
        Ok(v) => format!("{:<14} {v:.6}{eps}", r.theorem.name()),
        Err(why) => format!("{:<14} not applicable: {why}{eps}", r.theorem.name()),
    }
}

pub fn classification_text(c: &ClassificationReport) -> String {
    let p = match c.is_p_matrix {
        Some(b) => b.to_string(),
        None => "skipped".to_string(),
    };
    let mut out = format!(
        "SDD: {}\nZ-matrix: {}\nNekrasov: {}\nB-matrix: {}\nB-Nekrasov: {}\nH-matrix: {}\nP-matrix: {p}\n",
        c.is_sdd, c.is_z_matrix, c.is_nekrasov, c.is_b_matrix, c.is_b_nekrasov, c.is_h_matrix
    );
    if !c.notes.is_empty() {
        out.push_str(&format!("notes: {}\n", c.notes));
    }
    out
}
