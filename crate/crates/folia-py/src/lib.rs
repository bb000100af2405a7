//! Python bindings for the transverse-geometry engine.
//!
//! The module mirrors the CLI surface (document generation, validation,
//! reports, rescaling) and exposes one class, `Geometry`, that bundles the
//! computed tensors and diagnostics of a single input document.
//!
//! ```python
//! import folia
//! doc = folia.example_document("carriere", trace=3)
//! geom = folia.Geometry(doc)
//! assert not geom.taut
//! print(geom.jacobi_eigenvalue, geom.t_kappa)
//! ```

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use folia_core::diagnostics::{
    first_variation_integrand, tautness_report, TautnessReport, TautnessVerdict,
};
use folia_core::document::{
    generate_example, parse_input, ExampleName, ExampleParams, InputDocument,
};
use folia_core::report::{run_report, ReportFormat};
use folia_core::tensor::FrameTensor;
use folia_core::{FoliatedAlgebra, TransverseGeometry};

fn value_error(err: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn parse_and_validate(text: &str) -> PyResult<(InputDocument, FoliatedAlgebra, f64)> {
    let doc = parse_input(text).map_err(value_error)?;
    let tol = doc.tolerance_or_default();
    let fol = doc.to_foliated().map_err(value_error)?;
    Ok((doc, fol, tol))
}

fn rank1(t: &FrameTensor) -> Vec<f64> {
    t.entries().to_vec()
}

fn rank2(t: &FrameTensor) -> Vec<Vec<f64>> {
    let q = t.dim();
    (0..q)
        .map(|x| (0..q).map(|y| t.get(&[x, y])).collect())
        .collect()
}

fn rank4(t: &FrameTensor) -> Vec<Vec<Vec<Vec<f64>>>> {
    let q = t.dim();
    (0..q)
        .map(|x| {
            (0..q)
                .map(|y| {
                    (0..q)
                        .map(|z| (0..q).map(|v| t.get(&[x, y, z, v])).collect())
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Transverse geometry and tautness diagnostics of one input document.
#[pyclass]
struct Geometry {
    doc: InputDocument,
    geom: TransverseGeometry,
    report: TautnessReport,
    tol: f64,
}

impl Geometry {
    fn from_parts(doc: InputDocument, fol: FoliatedAlgebra, tol: f64) -> PyResult<Self> {
        let geom = TransverseGeometry::compute(&fol);
        let report = tautness_report(&geom, tol).map_err(value_error)?;
        Ok(Geometry {
            doc,
            geom,
            report,
            tol,
        })
    }

    fn one_form(&self, eta: Vec<f64>) -> PyResult<FrameTensor> {
        let q = self.geom.codim();
        if eta.len() != q {
            return Err(PyValueError::new_err(format!(
                "expected {q} components over the normal frame, got {}",
                eta.len()
            )));
        }
        Ok(FrameTensor::from_entries(
            self.geom.foliated().normal(),
            1,
            eta,
        ))
    }
}

#[pymethods]
impl Geometry {
    #[new]
    #[pyo3(signature = (document, tolerance=None))]
    fn new(document: &str, tolerance: Option<f64>) -> PyResult<Self> {
        let (mut doc, _, _) = parse_and_validate(document)?;
        if let Some(tol) = tolerance {
            if !(tol > 0.0) || !tol.is_finite() {
                return Err(PyValueError::new_err("tolerance must be positive"));
            }
            doc.tolerance = Some(tol);
        }
        let tol = doc.tolerance_or_default();
        let fol = doc.to_foliated().map_err(value_error)?;
        Self::from_parts(doc, fol, tol)
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.geom.foliated().algebra().dim()
    }

    /// Leaf frame indices, 1-based.
    #[getter]
    fn leaf(&self) -> Vec<usize> {
        self.geom.foliated().leaf().iter().map(|&a| a + 1).collect()
    }

    /// Normal (transverse) frame indices, 1-based.
    #[getter]
    fn normal(&self) -> Vec<usize> {
        self.geom
            .foliated()
            .normal()
            .iter()
            .map(|&x| x + 1)
            .collect()
    }

    #[getter]
    fn codimension(&self) -> usize {
        self.geom.codim()
    }

    #[getter]
    fn tolerance(&self) -> f64 {
        self.tol
    }

    /// Components of the mean curvature form over the normal frame.
    #[getter]
    fn kappa_b(&self) -> Vec<f64> {
        rank1(self.geom.kappa_b())
    }

    #[getter]
    fn ricci_q(&self) -> Vec<Vec<f64>> {
        rank2(self.geom.ricci_q())
    }

    #[getter]
    fn riemann_q(&self) -> Vec<Vec<Vec<Vec<f64>>>> {
        rank4(self.geom.riemann_q())
    }

    #[getter]
    fn nabla_kappa(&self) -> Vec<Vec<f64>> {
        rank2(self.geom.nabla_kappa())
    }

    #[getter]
    fn t_kappa(&self) -> Vec<Vec<f64>> {
        rank2(self.geom.t_kappa())
    }

    #[getter]
    fn scalar_q(&self) -> f64 {
        self.geom.scalar_q()
    }

    #[getter]
    fn taut(&self) -> bool {
        self.report.taut
    }

    #[getter]
    fn verdict(&self) -> &'static str {
        match self.report.verdict {
            TautnessVerdict::Taut => "taut",
            TautnessVerdict::Nontaut => "nontaut",
            TautnessVerdict::Indeterminate => "indeterminate",
        }
    }

    #[getter]
    fn einstein(&self) -> bool {
        self.report.einstein
    }

    #[getter]
    fn lambda_q(&self) -> Option<f64> {
        self.report.lambda_q
    }

    #[getter]
    fn jacobi_eigenvalue(&self) -> Option<f64> {
        self.report.jacobi_eigenvalue
    }

    #[getter]
    fn kappa_norm(&self) -> f64 {
        self.report.kappa_norm
    }

    #[getter]
    fn t_kappa_norm(&self) -> f64 {
        self.report.t_kappa_norm
    }

    #[getter]
    fn ric_tau_tau(&self) -> f64 {
        self.report.ric_tau_tau
    }

    #[getter]
    fn critical(&self) -> bool {
        self.report.critical
    }

    #[getter]
    fn critical_residual_norm(&self) -> f64 {
        self.report.critical_residual_norm
    }

    /// Named identity residual magnitudes.
    #[getter]
    fn identity_residuals(&self) -> std::collections::BTreeMap<String, f64> {
        self.report.identity_residuals.clone()
    }

    /// Basic divergence of the tautness tensor over the normal frame.
    fn div_b_t_kappa(&self) -> Vec<f64> {
        rank1(&self.geom.div_b_rank2(self.geom.t_kappa()))
    }

    /// Apply the transverse Jacobi operator to an invariant 1-form given
    /// by its components over the normal frame.
    fn jacobi(&self, eta: Vec<f64>) -> PyResult<Vec<f64>> {
        Ok(rank1(&self.geom.jacobi_operator(&self.one_form(eta)?)))
    }

    /// Pointwise first-variation integrand of the normalized total
    /// transverse scalar curvature along a symmetric variation h, given as
    /// a nested q x q list.
    fn first_variation(&self, h: Vec<Vec<f64>>) -> PyResult<f64> {
        let q = self.geom.codim();
        if h.len() != q || h.iter().any(|row| row.len() != q) {
            return Err(PyValueError::new_err(format!(
                "variation must be a {q} x {q} nested list"
            )));
        }
        let tensor = FrameTensor::from_entries(
            self.geom.foliated().normal(),
            2,
            h.into_iter().flatten().collect(),
        );
        first_variation_integrand(&self.geom, &tensor).map_err(value_error)
    }

    /// Geometry of the same foliation with the transverse metric scaled by
    /// a positive factor.
    fn rescaled(&self, factor: f64) -> PyResult<Geometry> {
        let doc = self.doc.rescaled(factor).map_err(value_error)?;
        let fol = doc.to_foliated().map_err(value_error)?;
        let tol = doc.tolerance_or_default();
        Geometry::from_parts(doc, fol, tol)
    }

    /// Full machine-readable report, identical to `folia report --format json`.
    fn report_json(&self) -> String {
        run_report(&self.doc, ReportFormat::Json, Some(self.tol)).text
    }

    fn report_text(&self) -> String {
        run_report(&self.doc, ReportFormat::Text, Some(self.tol)).text
    }

    fn __repr__(&self) -> String {
        format!(
            "Geometry(dimension={}, codimension={}, verdict={:?})",
            self.dimension(),
            self.geom.codim(),
            self.verdict()
        )
    }
}

/// Generate a built-in example document as JSON text.
#[pyfunction]
#[pyo3(signature = (name, trace=None, coshk=None, n1=None, n2=None))]
fn example_document(
    name: &str,
    trace: Option<u32>,
    coshk: Option<f64>,
    n1: Option<f64>,
    n2: Option<f64>,
) -> PyResult<String> {
    let name: ExampleName = name.parse().map_err(value_error)?;
    let doc = generate_example(
        name,
        ExampleParams {
            trace,
            coshk,
            n1,
            n2,
        },
    )
    .map_err(value_error)?;
    Ok(doc.to_json())
}

/// Parse and validate a document; raises ValueError with the diagnostic on
/// failure.
#[pyfunction]
fn check_document(document: &str) -> PyResult<()> {
    parse_and_validate(document)?;
    Ok(())
}

/// Run the full pipeline and return the JSON report text.
#[pyfunction]
#[pyo3(signature = (document, tolerance=None))]
fn report_json(document: &str, tolerance: Option<f64>) -> PyResult<String> {
    let doc = parse_input(document).map_err(value_error)?;
    Ok(run_report(&doc, ReportFormat::Json, tolerance).text)
}

/// Run the full pipeline and return the human-readable report text.
#[pyfunction]
#[pyo3(signature = (document, tolerance=None))]
fn report_text(document: &str, tolerance: Option<f64>) -> PyResult<String> {
    let doc = parse_input(document).map_err(value_error)?;
    Ok(run_report(&doc, ReportFormat::Text, tolerance).text)
}

/// Rescale the transverse metric of a document, returning the new document
/// as JSON text.
#[pyfunction]
fn rescale_document(document: &str, factor: f64) -> PyResult<String> {
    let doc = parse_input(document).map_err(value_error)?;
    Ok(doc.rescaled(factor).map_err(value_error)?.to_json())
}

#[pymodule]
fn folia(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(example_document, m)?)?;
    m.add_function(wrap_pyfunction!(check_document, m)?)?;
    m.add_function(wrap_pyfunction!(report_json, m)?)?;
    m.add_function(wrap_pyfunction!(report_text, m)?)?;
    m.add_function(wrap_pyfunction!(rescale_document, m)?)?;
    m.add_class::<Geometry>()?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
