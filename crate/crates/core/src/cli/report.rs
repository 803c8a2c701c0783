use std::fmt::Write;

use serde_json::{json, Value};

use crate::fit::{Comparison, FitReport};
use crate::models::{Asymptote, ScalingParams};

/// Six significant digits, fixed notation where it stays readable.
pub(crate) fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exponent = x.abs().log10().floor() as i32;
    if (-4..6).contains(&exponent) {
        let decimals = (5 - exponent).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.5e}")
    }
}

/// Shortest round-trip form, switching to exponent notation at the extremes.
pub(crate) fn num(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && a.is_finite() && !(1e-4..1e15).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn params_text(params: &ScalingParams) -> String {
    match *params {
        ScalingParams::Amdahl { sigma } => format!("sigma = {}", sig6(sigma)),
        ScalingParams::Geometric { phi } => format!("phi = {}", sig6(phi)),
        ScalingParams::Usl { alpha, beta } => {
            format!("alpha = {}, beta = {}", sig6(alpha), sig6(beta))
        }
    }
}

fn params_json(params: &ScalingParams) -> Value {
    serde_json::to_value(params).expect("plain numbers")
}

fn asymptote_text(a: &Asymptote) -> String {
    match a {
        Asymptote::Finite(c) => sig6(*c),
        Asymptote::Unbounded => "unbounded".into(),
        Asymptote::Retrograde { peak } => {
            format!(
                "0 (retrograde; peak C = {} at p = {})",
                sig6(peak.capacity),
                peak.p
            )
        }
    }
}

fn asymptote_json(a: &Asymptote) -> Value {
    match a {
        Asymptote::Finite(c) => json!(c),
        Asymptote::Unbounded => json!("unbounded"),
        Asymptote::Retrograde { peak } => {
            json!({ "limit": 0.0, "peak_p": peak.p, "peak_capacity": peak.capacity })
        }
    }
}

fn asymptote_csv(a: &Asymptote) -> String {
    match a {
        Asymptote::Finite(c) => num(*c),
        Asymptote::Unbounded => "unbounded".into(),
        Asymptote::Retrograde { .. } => "0".into(),
    }
}

pub(crate) fn fit_json(report: &FitReport) -> Value {
    let x1 = report.baseline_x1;
    json!({
        "model": report.model(),
        "params": params_json(&report.params),
        "sse": report.sse,
        "r2": report.r2,
        "asymptote": asymptote_json(&report.asymptote),
        "points": report.residuals.iter().map(|r| json!({
            "p": r.p, "measured": r.measured, "fitted": r.fitted,
        })).collect::<Vec<_>>(),
        "baseline_x1": x1,
        "clamped": report.clamps,
        "predictions": report.predictions.iter().map(|pt| json!({
            "p": pt.p, "capacity": pt.c, "throughput": x1.map(|x1| x1 * pt.c),
        })).collect::<Vec<_>>(),
    })
}

pub(crate) fn comparison_json(cmp: &Comparison) -> Value {
    json!({
        "model": "all",
        "fits": cmp.ranked.iter().map(fit_json).collect::<Vec<_>>(),
        "skipped": cmp.skipped.iter().map(|(kind, err)| json!({
            "model": kind.name(), "reason": err.to_string(),
        })).collect::<Vec<_>>(),
        "divergence": cmp.divergence,
    })
}

const CSV_HEADER: &str = "rank,model,sigma,phi,alpha,beta,sse,r2,asymptote,clamped\n";

fn csv_row(out: &mut String, rank: usize, report: &FitReport) {
    let (sigma, phi, alpha, beta) = match report.params {
        ScalingParams::Amdahl { sigma } => {
            (num(sigma), String::new(), String::new(), String::new())
        }
        ScalingParams::Geometric { phi } => (String::new(), num(phi), String::new(), String::new()),
        ScalingParams::Usl { alpha, beta } => (String::new(), String::new(), num(alpha), num(beta)),
    };
    let _ = writeln!(
        out,
        "{rank},{},{sigma},{phi},{alpha},{beta},{},{},{},{}",
        report.model(),
        num(report.sse),
        num(report.r2),
        asymptote_csv(&report.asymptote),
        report.clamped()
    );
}

pub(crate) fn fit_csv(report: &FitReport) -> String {
    let mut out = CSV_HEADER.to_owned();
    csv_row(&mut out, 1, report);
    out
}

pub(crate) fn comparison_csv(cmp: &Comparison) -> String {
    let mut out = CSV_HEADER.to_owned();
    for (i, report) in cmp.ranked.iter().enumerate() {
        csv_row(&mut out, i + 1, report);
    }
    out
}

pub(crate) fn fit_human(report: &FitReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "model: {}", report.model());
    let _ = writeln!(out, "{}", params_text(&report.params));
    let _ = writeln!(out, "sse = {}", sig6(report.sse));
    let _ = writeln!(out, "r2 = {}", sig6(report.r2));
    let _ = writeln!(out, "asymptote = {}", asymptote_text(&report.asymptote));
    if let Some(x1) = report.baseline_x1 {
        let _ = writeln!(out, "baseline X(1) = {}", sig6(x1));
    }
    if report.clamped() {
        let names: Vec<String> = report
            .clamps
            .iter()
            .map(|c| {
                serde_json::to_value(c)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_owned))
                    .unwrap_or_default()
            })
            .collect();
        let _ = writeln!(out, "clamped: {}", names.join(", "));
    }
    let _ = writeln!(
        out,
        "\n{:>6}  {:>12}  {:>12}",
        "p", "measured C", "fitted C"
    );
    for r in &report.residuals {
        let _ = writeln!(
            out,
            "{:>6}  {:>12}  {:>12}",
            r.p,
            sig6(r.measured),
            sig6(r.fitted)
        );
    }
    if !report.predictions.is_empty() {
        let _ = writeln!(
            out,
            "\n{:>6}  {:>12}  {:>12}",
            "p", "predicted C", "throughput"
        );
        for pt in &report.predictions {
            let x = report
                .baseline_x1
                .map_or_else(|| "-".into(), |x1| sig6(x1 * pt.c));
            let _ = writeln!(out, "{:>6}  {:>12}  {:>12}", pt.p, sig6(pt.c), x);
        }
    }
    out
}

pub(crate) fn comparison_human(cmp: &Comparison) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<4}  {:<6}  {:<34}  {:>12}  {:>9}  asymptote",
        "rank", "model", "parameters", "sse", "r2"
    );
    for (i, r) in cmp.ranked.iter().enumerate() {
        let _ = writeln!(
            out,
            "{:<4}  {:<6}  {:<34}  {:>12}  {:>9}  {}{}",
            i + 1,
            r.model(),
            params_text(&r.params),
            sig6(r.sse),
            sig6(r.r2),
            asymptote_text(&r.asymptote),
            if r.clamped() { "  [clamped]" } else { "" }
        );
    }
    for (kind, err) in &cmp.skipped {
        let _ = writeln!(out, "{}: skipped: {err}", kind.name());
    }
    if !cmp.divergence.is_empty() {
        let _ = writeln!(out, "\nAmdahl vs MPF extrapolation:");
        let _ = writeln!(
            out,
            "{:>6}  {:>12}  {:>12}  {:>9}",
            "p", "amdahl C", "mpf C", "ratio"
        );
        for d in &cmp.divergence {
            let _ = writeln!(
                out,
                "{:>6}  {:>12}  {:>12}  {:>9}",
                d.p,
                sig6(d.amdahl),
                sig6(d.geometric),
                sig6(d.ratio)
            );
        }
    }
    for r in cmp.ranked.iter().filter(|r| !r.predictions.is_empty()) {
        let _ = writeln!(out, "\n{} predictions:", r.model());
        for pt in &r.predictions {
            let x = r
                .baseline_x1
                .map_or_else(|| "-".into(), |x1| sig6(x1 * pt.c));
            let _ = writeln!(out, "{:>6}  C = {:>12}  X = {:>12}", pt.p, sig6(pt.c), x);
        }
    }
    out
}
