//! Leaf/normal frame splits and their validation.
//!
//! A foliation of an algebra's frame is admissible when the leaf
//! distribution is closed under brackets (integrability) and leaf
//! directions act skew-symmetrically on the normal directions, which is the
//! invariant form of `L_U g_Q = 0` (the Riemannian foliation condition).

use crate::algebra::LieAlgebra;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FoliationError {
    #[error("leaf index {0} outside the frame range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("duplicate leaf index {0}")]
    DuplicateIndex(usize),
    #[error("leaf set must be nonempty")]
    EmptyLeaf,
    #[error("leaf set must be a proper subset of the frame")]
    EmptyNormal,
    #[error(
        "not integrable: [e{a},e{b}] has component {magnitude:.3e} on normal direction e{x}"
    )]
    NotIntegrable {
        a: usize,
        b: usize,
        x: usize,
        magnitude: f64,
    },
    #[error(
        "not Riemannian: leaf direction e{a} fails L_U g_Q = 0 on (e{x},e{y}) with defect {magnitude:.3e}"
    )]
    NotRiemannian {
        a: usize,
        x: usize,
        y: usize,
        magnitude: f64,
    },
    #[error("rescale factor must be positive and finite, got {0}")]
    InvalidFactor(f64),
}

/// Partition of the frame indices into leaf and normal (transverse) sets.
/// Both sets are stored 0-based and ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Foliation {
    n: usize,
    leaf: Vec<usize>,
    normal: Vec<usize>,
}

impl Foliation {
    /// Build from 0-based leaf indices; the normal set is the complement.
    pub fn new(n: usize, leaf_indices: &[usize]) -> Result<Self, FoliationError> {
        let mut is_leaf = vec![false; n];
        for &a in leaf_indices {
            if a >= n {
                return Err(FoliationError::IndexOutOfRange(a + 1, n));
            }
            if is_leaf[a] {
                return Err(FoliationError::DuplicateIndex(a + 1));
            }
            is_leaf[a] = true;
        }
        let leaf: Vec<usize> = (0..n).filter(|&i| is_leaf[i]).collect();
        let normal: Vec<usize> = (0..n).filter(|&i| !is_leaf[i]).collect();
        if leaf.is_empty() {
            return Err(FoliationError::EmptyLeaf);
        }
        if normal.is_empty() {
            return Err(FoliationError::EmptyNormal);
        }
        Ok(Foliation { n, leaf, normal })
    }

    pub fn frame_dim(&self) -> usize {
        self.n
    }

    /// Leaf dimension p.
    pub fn leaf_dim(&self) -> usize {
        self.leaf.len()
    }

    /// Codimension q.
    pub fn codim(&self) -> usize {
        self.normal.len()
    }

    pub fn leaf(&self) -> &[usize] {
        &self.leaf
    }

    pub fn normal(&self) -> &[usize] {
        &self.normal
    }
}

/// A validated pair of algebra and foliation, the input to the whole
/// transverse-geometry pipeline. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct FoliatedAlgebra {
    algebra: LieAlgebra,
    foliation: Foliation,
    tol: f64,
}

impl FoliatedAlgebra {
    /// Validate the foliation against the algebra's brackets.
    ///
    /// Checks, within `tol`:
    /// - integrability: `c[a][b][x] = 0` for leaf a,b and normal x;
    /// - the Riemannian condition: `c[a][x][y] + c[a][y][x] = 0` for leaf a
    ///   and normal x,y.
    pub fn new(
        algebra: LieAlgebra,
        foliation: Foliation,
        tol: f64,
    ) -> Result<Self, FoliationError> {
        assert_eq!(algebra.dim(), foliation.frame_dim());

        let mut worst_int = (0.0f64, 0, 0, 0);
        for &a in foliation.leaf() {
            for &b in foliation.leaf() {
                for &x in foliation.normal() {
                    let mag = algebra.c(a, b, x).abs();
                    if mag > worst_int.0 {
                        worst_int = (mag, a, b, x);
                    }
                }
            }
        }
        if worst_int.0 > tol {
            return Err(FoliationError::NotIntegrable {
                a: worst_int.1 + 1,
                b: worst_int.2 + 1,
                x: worst_int.3 + 1,
                magnitude: worst_int.0,
            });
        }

        let mut worst_riem = (0.0f64, 0, 0, 0);
        for &a in foliation.leaf() {
            for &x in foliation.normal() {
                for &y in foliation.normal() {
                    let mag = (algebra.c(a, x, y) + algebra.c(a, y, x)).abs();
                    if mag > worst_riem.0 {
                        worst_riem = (mag, a, x, y);
                    }
                }
            }
        }
        if worst_riem.0 > tol {
            return Err(FoliationError::NotRiemannian {
                a: worst_riem.1 + 1,
                x: worst_riem.2 + 1,
                y: worst_riem.3 + 1,
                magnitude: worst_riem.0,
            });
        }

        Ok(FoliatedAlgebra {
            algebra,
            foliation,
            tol,
        })
    }

    pub fn from_leaf_indices(
        algebra: LieAlgebra,
        leaf_indices: &[usize],
        tol: f64,
    ) -> Result<Self, FoliationError> {
        let foliation = Foliation::new(algebra.dim(), leaf_indices)?;
        FoliatedAlgebra::new(algebra, foliation, tol)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn foliation(&self) -> &Foliation {
        &self.foliation
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    pub fn leaf(&self) -> &[usize] {
        self.foliation.leaf()
    }

    pub fn normal(&self) -> &[usize] {
        self.foliation.normal()
    }

    pub fn codim(&self) -> usize {
        self.foliation.codim()
    }

    /// Uniform rescale `g_Q -> factor * g_Q` of the transverse metric,
    /// realised by re-expressing the brackets in the rescaled orthonormal
    /// frame `e_x / sqrt(factor)` for normal x (leaf frame unchanged).
    ///
    /// Bracket components transform by their leaf/normal signature:
    /// normal-normal-into-normal and leaf-normal-into-leaf divide by
    /// sqrt(factor), normal-normal-into-leaf divides by factor,
    /// leaf-normal-into-normal and leaf-leaf components are unchanged.
    pub fn rescale_transverse(&self, factor: f64) -> Result<FoliatedAlgebra, FoliationError> {
        if !(factor > 0.0) || !factor.is_finite() {
            return Err(FoliationError::InvalidFactor(factor));
        }
        let n = self.algebra.dim();
        let sqrt = factor.sqrt();
        let is_leaf: Vec<bool> = {
            let mut v = vec![false; n];
            for &a in self.leaf() {
                v[a] = true;
            }
            v
        };
        let mut constants = vec![0.0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = self.algebra.c(i, j, k);
                    let scale = match (is_leaf[i], is_leaf[j], is_leaf[k]) {
                        (true, true, _) => 1.0,
                        (false, false, false) => 1.0 / sqrt,
                        (false, false, true) => 1.0 / factor,
                        // mixed leaf-normal rows
                        (_, _, false) => 1.0,
                        (_, _, true) => 1.0 / sqrt,
                    };
                    constants[(i * n + j) * n + k] = c * scale;
                }
            }
        }
        let mut algebra = LieAlgebra::new(n, constants, self.tol)?;
        if let Some(names) = self.algebra.names() {
            algebra = algebra.with_names(names.to_vec());
        }
        FoliatedAlgebra::new(algebra, self.foliation.clone(), self.tol)
    }
}

impl From<crate::algebra::AlgebraError> for FoliationError {
    fn from(err: crate::algebra::AlgebraError) -> Self {
        // Rescaling preserves antisymmetry exactly and Jacobi within
        // round-off, so a validation failure here means the factor degraded
        // the constants beyond tolerance.
        FoliationError::InvalidFactor(match err {
            crate::algebra::AlgebraError::JacobiViolation { magnitude, .. } => magnitude,
            _ => f64::NAN,
        })
    }
}
