//! Ground-truth fixtures: validated foliated algebras for the built-in
//! examples, shared by the library tests and the acceptance suite.

use crate::document::{generate_example, DocumentError, ExampleName, ExampleParams};
use crate::foliation::FoliatedAlgebra;

/// Hyperbolic-torus flow with integer trace `t >= 3`; the canonical
/// nontaut transverse-Einstein fixture of codimension 2.
pub fn carriere(trace: u32) -> Result<FoliatedAlgebra, DocumentError> {
    let doc = generate_example(
        ExampleName::Carriere,
        ExampleParams {
            trace: Some(trace),
            ..Default::default()
        },
    )?;
    Ok(doc.to_foliated().expect("fixture is valid by construction"))
}

/// Seven-dimensional solvable example with leaf {1,3,4,6}; nontaut
/// transverse Einstein of codimension 3.
pub fn hrw7(coshk: f64, n1: f64, n2: f64) -> Result<FoliatedAlgebra, DocumentError> {
    let doc = generate_example(
        ExampleName::Hrw7,
        ExampleParams {
            coshk: Some(coshk),
            n1: Some(n1),
            n2: Some(n2),
            ..Default::default()
        },
    )?;
    Ok(doc.to_foliated().expect("fixture is valid by construction"))
}

/// Heisenberg control case: taut, flat transverse geometry.
pub fn heisenberg() -> Result<FoliatedAlgebra, DocumentError> {
    let doc = generate_example(ExampleName::Heisenberg, ExampleParams::default())?;
    Ok(doc.to_foliated().expect("fixture is valid by construction"))
}
