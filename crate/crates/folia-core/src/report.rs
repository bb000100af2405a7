//! The report pipeline behind the `folia` binary: validate, compute
//! geometry, run diagnostics, and render the result as text or JSON.
//!
//! Exit codes: 0 all identities pass; 1 input validation failure;
//! 2 identity residual beyond tolerance or inconsistent criteria;
//! 3 parse or I/O failure (assigned by the caller for file-level errors).

use serde_json::json;

use crate::diagnostics::{tautness_report, DiagnosticsError, TautnessReport, TautnessVerdict};
use crate::document::{BuildError, InputDocument};
use crate::foliation::FoliatedAlgebra;
use crate::geometry::TransverseGeometry;
use crate::tensor::FrameTensor;
use crate::DEFAULT_TOLERANCE;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

/// Rendered report plus the process exit code it implies.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub text: String,
    pub exit_code: i32,
}

/// Run the full pipeline on a parsed document.
///
/// `tol_override` takes precedence over the document's own tolerance;
/// absent both, [`DEFAULT_TOLERANCE`] applies.
pub fn run_report(
    doc: &InputDocument,
    format: ReportFormat,
    tol_override: Option<f64>,
) -> RunOutcome {
    let tol = tol_override
        .or(doc.tolerance)
        .unwrap_or(DEFAULT_TOLERANCE);

    let fol = match doc.to_foliated_with_tolerance(tol) {
        Ok(fol) => fol,
        Err(err) => {
            return render_error(format, build_error_kind(&err), &err.to_string(), 1);
        }
    };

    let geom = TransverseGeometry::compute(&fol);
    let report = match tautness_report(&geom, tol) {
        Ok(report) => report,
        Err(err) => {
            return render_error(format, diagnostics_error_kind(&err), &err.to_string(), 2);
        }
    };

    let all_pass = report.identity_residuals.values().all(|&r| r <= tol);
    let exit_code = if all_pass { 0 } else { 2 };

    let text = match format {
        ReportFormat::Text => render_text(doc, &geom, &report, exit_code),
        ReportFormat::Json => render_json(doc, &geom, &report, exit_code),
    };
    RunOutcome { text, exit_code }
}

/// Validation-only pipeline behind the `check` verb.
pub fn run_check(doc: &InputDocument) -> RunOutcome {
    match doc.to_foliated() {
        Ok(fol) => RunOutcome {
            text: format!(
                "ok: dimension {}, leaf {{{}}}, normal {{{}}}, codimension {}\n",
                fol.algebra().dim(),
                join_indices(fol.leaf()),
                join_indices(fol.normal()),
                fol.codim()
            ),
            exit_code: 0,
        },
        Err(err) => RunOutcome {
            text: format!("validation failed: {err}\n"),
            exit_code: 1,
        },
    }
}

/// Structured error in the requested format, with the exit code embedded in
/// the JSON body so scripted callers never need to parse prose.
pub fn render_error(format: ReportFormat, kind: &str, message: &str, exit_code: i32) -> RunOutcome {
    let text = match format {
        ReportFormat::Text => format!("error ({kind}): {message}\n"),
        ReportFormat::Json => {
            let value = json!({
                "error": { "kind": kind, "message": message },
                "exit_code": exit_code,
            });
            format!("{}\n", serde_json::to_string_pretty(&value).unwrap())
        }
    };
    RunOutcome { text, exit_code }
}

pub fn build_error_kind(err: &BuildError) -> &'static str {
    use crate::algebra::AlgebraError::*;
    use crate::foliation::FoliationError::*;
    match err {
        BuildError::Algebra(e) => match e {
            ZeroDimension | ShapeMismatch { .. } => "ShapeError",
            AntisymmetryViolation { .. } => "AntisymmetryViolation",
            JacobiViolation { .. } => "JacobiViolation",
        },
        BuildError::Foliation(e) => match e {
            NotIntegrable { .. } => "NotIntegrable",
            NotRiemannian { .. } => "NotRiemannian",
            InvalidFactor(_) => "InvalidFactor",
            _ => "InvalidLeafSet",
        },
    }
}

fn diagnostics_error_kind(err: &DiagnosticsError) -> &'static str {
    match err {
        DiagnosticsError::MeanCurvatureNotCoclosed { .. } => "MeanCurvatureNotCoclosed",
        DiagnosticsError::InconsistentCriteria { .. } => "InconsistentCriteria",
        DiagnosticsError::ShapeMismatch(_) => "ShapeMismatch",
    }
}

/// All scalars print with 12 significant digits, locale independent.
fn fmt(x: f64) -> String {
    format!("{:.11e}", x)
}

fn join_indices(indices: &[usize]) -> String {
    indices
        .iter()
        .map(|&i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn frame_label(fol: &FoliatedAlgebra, idx: usize) -> String {
    fol.algebra().name_of(idx)
}

fn render_rank1(fol: &FoliatedAlgebra, t: &FrameTensor, indent: &str) -> String {
    let mut out = String::new();
    for (pos, &idx) in t.indices().iter().enumerate() {
        out.push_str(&format!(
            "{indent}{:<4} {}\n",
            frame_label(fol, idx),
            fmt(t.get(&[pos]))
        ));
    }
    out
}

fn render_rank2(fol: &FoliatedAlgebra, t: &FrameTensor, indent: &str) -> String {
    let mut out = String::new();
    for (xpos, &x) in t.indices().iter().enumerate() {
        let row: Vec<String> = t
            .indices()
            .iter()
            .enumerate()
            .map(|(ypos, _)| fmt(t.get(&[xpos, ypos])))
            .collect();
        out.push_str(&format!(
            "{indent}{:<4} {}\n",
            frame_label(fol, x),
            row.join("  ")
        ));
    }
    out
}

fn verdict_label(verdict: TautnessVerdict) -> &'static str {
    match verdict {
        TautnessVerdict::Taut => "taut",
        TautnessVerdict::Nontaut => "nontaut",
        TautnessVerdict::Indeterminate => "indeterminate",
    }
}

fn render_text(
    doc: &InputDocument,
    geom: &TransverseGeometry,
    report: &TautnessReport,
    exit_code: i32,
) -> String {
    let fol = geom.foliated();
    let mut out = String::new();
    out.push_str(&format!(
        "input: dimension {}, leaf {{{}}}, normal {{{}}}, codimension {}\n",
        doc.dimension,
        join_indices(fol.leaf()),
        join_indices(fol.normal()),
        fol.codim()
    ));
    out.push_str(&format!("tolerance: {}\n\n", fmt(report.tolerance)));

    out.push_str("mean curvature form kappa_b:\n");
    out.push_str(&render_rank1(fol, geom.kappa_b(), "  "));
    out.push_str(&format!("  |kappa_b| = {}\n\n", fmt(report.kappa_norm)));

    out.push_str("transverse Ricci curvature Ric_Q:\n");
    out.push_str(&render_rank2(fol, geom.ricci_q(), "  "));
    out.push_str(&format!(
        "transverse scalar curvature S_Q: {}\n\n",
        fmt(geom.scalar_q())
    ));

    out.push_str("tautness tensor T_kappa:\n");
    out.push_str(&render_rank2(fol, geom.t_kappa(), "  "));
    out.push_str(&format!("  |T_kappa| = {}\n\n", fmt(report.t_kappa_norm)));

    out.push_str("basic divergence of T_kappa:\n");
    out.push_str(&render_rank1(fol, &geom.div_b_rank2(geom.t_kappa()), "  "));
    out.push('\n');

    out.push_str("Jacobi operator on kappa_b:\n");
    out.push_str(&render_rank1(fol, &geom.jacobi_operator(geom.kappa_b()), "  "));
    match report.jacobi_eigenvalue {
        Some(mu) => out.push_str(&format!("  eigenvalue: {}\n\n", fmt(mu))),
        None => out.push_str("  eigenvalue: none\n\n"),
    }

    out.push_str(&format!("verdict: {}\n", verdict_label(report.verdict)));
    out.push_str(&format!(
        "  criteria: |kappa_b| = {} | |T_kappa| = {} | Ric_Q(tau,tau) = {} | |J_Q(kappa_b)| = {}\n",
        fmt(report.kappa_norm),
        fmt(report.t_kappa_norm),
        fmt(report.ric_tau_tau),
        fmt(report.jacobi_kappa_residual)
    ));
    match report.lambda_q {
        Some(lambda) => out.push_str(&format!(
            "  transverse Einstein: yes, lambda_Q = {}\n",
            fmt(lambda)
        )),
        None => out.push_str("  transverse Einstein: no\n"),
    }
    out.push_str(&format!(
        "  critical metric residual: {} -> {}\n\n",
        fmt(report.critical_residual_norm),
        if report.critical {
            "critical"
        } else {
            "not critical"
        }
    ));

    out.push_str("identity residuals:\n");
    for (name, value) in &report.identity_residuals {
        let status = if *value <= report.tolerance {
            "PASS"
        } else {
            "FAIL"
        };
        out.push_str(&format!("  {status} {name:<34} {}\n", fmt(*value)));
    }
    out.push_str(&format!("\nexit code: {exit_code}\n"));
    out
}

fn indices_1based(t: &FrameTensor) -> Vec<u32> {
    t.indices().iter().map(|&i| i as u32 + 1).collect()
}

fn tensor_json(t: &FrameTensor) -> serde_json::Value {
    json!({
        "indices": indices_1based(t),
        "rank": t.rank(),
        "entries": t.nested_json(),
    })
}

fn render_json(
    doc: &InputDocument,
    geom: &TransverseGeometry,
    report: &TautnessReport,
    exit_code: i32,
) -> String {
    let fol = geom.foliated();
    let n = fol.algebra().dim();
    let q = fol.codim();

    let ambient: Vec<Vec<Vec<f64>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| geom.ambient_connection().coefficient(i, j, k))
                        .collect()
                })
                .collect()
        })
        .collect();
    let transverse: Vec<Vec<Vec<f64>>> = (0..n)
        .map(|i| {
            (0..q)
                .map(|y| {
                    (0..q)
                        .map(|z| geom.transverse_connection().coefficient(i, y, z))
                        .collect()
                })
                .collect()
        })
        .collect();

    let leaf_1based: Vec<u32> = fol.leaf().iter().map(|&a| a as u32 + 1).collect();
    let normal_1based: Vec<u32> = fol.normal().iter().map(|&x| x as u32 + 1).collect();

    let value = json!({
        "input": doc,
        "tolerance": report.tolerance,
        "leaf": leaf_1based,
        "normal": normal_1based,
        "geometry": {
            "ambient_connection": { "indices": (1..=n as u32).collect::<Vec<u32>>(), "entries": ambient },
            "transverse_connection": {
                "rows": (1..=n as u32).collect::<Vec<u32>>(),
                "columns": normal_1based,
                "entries": transverse,
            },
            "riemann_q": tensor_json(geom.riemann_q()),
            "ricci_q": tensor_json(geom.ricci_q()),
            "scalar_q": geom.scalar_q(),
            "kappa_b": tensor_json(geom.kappa_b()),
            "nabla_kappa": tensor_json(geom.nabla_kappa()),
            "t_kappa": tensor_json(geom.t_kappa()),
            "div_b_t_kappa": tensor_json(&geom.div_b_rank2(geom.t_kappa())),
            "jacobi_kappa": tensor_json(&geom.jacobi_operator(geom.kappa_b())),
        },
        "report": report,
        "exit_code": exit_code,
    });
    format!("{}\n", serde_json::to_string_pretty(&value).unwrap())
}
