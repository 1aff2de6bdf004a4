//! Result rendering for both output formats.
//!
//! Machine output is one pretty-printed JSON document:
//!
//! ```text
//! { "command": ..., "params": {...}, "results": {...}, "engine_version": ... }
//! ```

use std::fmt::Write;

use serde::Serialize;
use serde_json::{json, Value};

use mayss_core::{BidegreeBasis, HitReport, PAdicProfile, PageQueryResult, SurvivalVerdict, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

/// Machine-format envelope.
#[derive(Debug, Serialize)]
pub struct Document<'a> {
    pub command: &'a str,
    pub params: Value,
    pub results: Value,
    pub engine_version: &'a str,
}

pub fn document(command: &str, params: Value, results: Value) -> String {
    let doc = Document {
        command,
        params,
        results,
        engine_version: mayss_core::ENGINE_VERSION,
    };
    serde_json::to_string_pretty(&doc).expect("serializable document")
}

pub fn profile_text(p: &PAdicProfile) -> String {
    p.to_string()
}

pub fn profile_json(p: &PAdicProfile) -> Value {
    json!({
        "c_minus1": p.c_minus1(),
        "digits": p.digits(),
        "rendered": p.to_string(),
    })
}

pub fn basis_text(b: &BidegreeBasis) -> String {
    let mut out = String::new();
    for m in &b.monomials {
        writeln!(out, "{m}\t{}", m.tridegree()).unwrap();
    }
    out.pop();
    out
}

pub fn basis_json(b: &BidegreeBasis) -> Value {
    let mut v = serde_json::to_value(b).expect("serializable basis");
    v["count"] = json!(b.len());
    v["weights"] = json!(b.monomials.iter().map(|m| m.weight()).collect::<Vec<_>>());
    v
}

pub fn e2_text(r: &PageQueryResult) -> String {
    let mut out = String::new();
    writeln!(out, "p={}", r.p).unwrap();
    writeln!(out, "s={}", r.s).unwrap();
    writeln!(out, "t={}", r.t).unwrap();
    writeln!(out, "u={}", r.u.map_or_else(|| "all".to_string(), |u| u.to_string())).unwrap();
    writeln!(out, "e1_dim={}", r.e1_dim).unwrap();
    writeln!(out, "cycle_dim={}", r.cycle_dim).unwrap();
    writeln!(out, "boundary_dim={}", r.boundary_dim).unwrap();
    write!(out, "e2_dim={}", r.e2_dim).unwrap();
    for b in &r.blocks {
        write!(
            out,
            "\nblock u={} e1_dim={} cycle_dim={} boundary_dim={} e2_dim={}",
            b.u, b.e1_dim, b.cycle_dim, b.boundary_dim, b.e2_dim
        )
        .unwrap();
    }
    out
}

pub fn survives_text(v: &SurvivalVerdict, hit: Option<&HitReport>) -> String {
    let mut out = String::new();
    match &v.tridegree {
        Some(d) => writeln!(out, "tridegree={d}").unwrap(),
        None => writeln!(out, "tridegree=none (zero element)").unwrap(),
    }
    writeln!(out, "is_cycle={}", v.is_cycle).unwrap();
    writeln!(out, "is_boundary={}", v.is_boundary).unwrap();
    write!(out, "e2_nonzero={}", v.e2_nonzero).unwrap();
    if let Some(h) = hit {
        let weights: Vec<String> = h.source_weights.iter().map(|(w, c)| format!("{w}x{c}")).collect();
        write!(out, "\nsource_weights={}", if weights.is_empty() { "none".into() } else { weights.join(",") }).unwrap();
        write!(out, "\nd1_source_count={}", h.d1_source_count).unwrap();
        for c in &h.higher {
            write!(out, "\nsource r={} u={} e1_dim={} e2_dim={}", c.r, c.source_u, c.e1_dim, c.e2_dim).unwrap();
        }
        write!(out, "\nnot_hit_at_higher_pages={}", h.not_hit_at_higher_pages).unwrap();
        for n in &h.notes {
            write!(out, "\nnote: {n}").unwrap();
        }
    }
    out
}

pub fn survives_json(v: &SurvivalVerdict, hit: Option<&HitReport>) -> Value {
    json!({
        "verdict": v,
        "hit_analysis": hit,
    })
}

pub fn report_text(r: &VerificationReport) -> String {
    r.to_string()
}

pub fn report_json(r: &VerificationReport) -> Value {
    serde_json::to_value(r).expect("serializable report")
}
