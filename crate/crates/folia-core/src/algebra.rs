//! Lie algebras with an orthonormal invariant frame.
//!
//! Structure constants are stored dense: `c[i][j][k]` is the coefficient of
//! `e_k` in `[e_i, e_j]`. Every constructor validates antisymmetry and the
//! Jacobi identity, so a [`LieAlgebra`] in circulation is always valid and
//! exactly antisymmetric. Indices are 0-based internally; error messages
//! and external formats are 1-based.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("structure constant array has {got} entries, expected {expected}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("antisymmetry violated at c[{i}][{j}][{k}]: |c_ijk + c_jik| = {magnitude:.3e}")]
    AntisymmetryViolation {
        i: usize,
        j: usize,
        k: usize,
        magnitude: f64,
    },
    #[error("Jacobi identity violated at (i,j,l,k) = ({i},{j},{l},{k}): |sum| = {magnitude:.3e}")]
    JacobiViolation {
        i: usize,
        j: usize,
        l: usize,
        k: usize,
        magnitude: f64,
    },
}

/// A finite-dimensional real Lie algebra presented by structure constants
/// over an orthonormal frame.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    constants: Vec<f64>,
    names: Option<Vec<String>>,
}

impl LieAlgebra {
    /// Validate raw structure constants and build the algebra.
    ///
    /// Antisymmetry and Jacobi must hold within `tol`; on success the stored
    /// constants are exactly antisymmetrized.
    pub fn new(dim: usize, constants: Vec<f64>, tol: f64) -> Result<Self, AlgebraError> {
        if dim == 0 {
            return Err(AlgebraError::ZeroDimension);
        }
        let expected = dim * dim * dim;
        if constants.len() != expected {
            return Err(AlgebraError::ShapeMismatch {
                expected,
                got: constants.len(),
            });
        }

        let at = |i: usize, j: usize, k: usize| constants[(i * dim + j) * dim + k];

        // Worst antisymmetry defect, reported with 1-based indices.
        let mut worst = (0.0f64, 0, 0, 0);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let defect = (at(i, j, k) + at(j, i, k)).abs();
                    if defect > worst.0 {
                        worst = (defect, i, j, k);
                    }
                }
            }
        }
        if worst.0 > tol {
            return Err(AlgebraError::AntisymmetryViolation {
                i: worst.1 + 1,
                j: worst.2 + 1,
                k: worst.3 + 1,
                magnitude: worst.0,
            });
        }

        let mut antisym = vec![0.0; expected];
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    antisym[(i * dim + j) * dim + k] = 0.5 * (at(i, j, k) - at(j, i, k));
                }
            }
        }

        let algebra = LieAlgebra {
            dim,
            constants: antisym,
            names: None,
        };
        let (residual, i, j, l, k) = algebra.worst_jacobi_defect();
        if residual > tol {
            return Err(AlgebraError::JacobiViolation {
                i: i + 1,
                j: j + 1,
                l: l + 1,
                k: k + 1,
                magnitude: residual,
            });
        }
        Ok(algebra)
    }

    /// Build from a sparse list of bracket components `(i, j, k, c)` meaning
    /// `[e_i, e_j]` has coefficient `c` on `e_k`, with `i < j` (0-based);
    /// the antisymmetric mirror is filled in.
    pub fn from_brackets(
        dim: usize,
        brackets: &[(usize, usize, usize, f64)],
        tol: f64,
    ) -> Result<Self, AlgebraError> {
        let mut constants = vec![0.0; dim * dim * dim];
        for &(i, j, k, c) in brackets {
            assert!(i < j && j < dim && k < dim, "bracket indices out of range");
            constants[(i * dim + j) * dim + k] = c;
            constants[(j * dim + i) * dim + k] = -c;
        }
        LieAlgebra::new(dim, constants, tol)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra::new(dim, vec![0.0; dim * dim * dim], 0.0).expect("abelian algebra is valid")
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.dim);
        self.names = Some(names);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Structure constant `c[i][j][k]`, 0-based.
    pub fn c(&self, i: usize, j: usize, k: usize) -> f64 {
        self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub fn constants(&self) -> &[f64] {
        &self.constants
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display label of a frame vector, 0-based input, 1-based default label.
    pub fn name_of(&self, idx: usize) -> String {
        match &self.names {
            Some(names) => names[idx].clone(),
            None => format!("e{}", idx + 1),
        }
    }

    fn worst_jacobi_defect(&self) -> (f64, usize, usize, usize, usize) {
        let n = self.dim;
        let mut worst = (0.0f64, 0, 0, 0, 0);
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    for k in 0..n {
                        let mut sum = 0.0;
                        for m in 0..n {
                            sum += self.c(i, j, m) * self.c(m, l, k)
                                + self.c(j, l, m) * self.c(m, i, k)
                                + self.c(l, i, m) * self.c(m, j, k);
                        }
                        if sum.abs() > worst.0 {
                            worst = (sum.abs(), i, j, l, k);
                        }
                    }
                }
            }
        }
        worst
    }

    /// Largest Jacobi identity defect over all index quadruples.
    pub fn jacobi_residual(&self) -> f64 {
        self.worst_jacobi_defect().0
    }

    /// Largest antisymmetry defect; zero for every validated algebra.
    pub fn antisymmetry_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    worst = worst.max((self.c(i, j, k) + self.c(j, i, k)).abs());
                }
            }
        }
        worst
    }

    /// Ambient Levi-Civita connection of the left-invariant metric making
    /// the frame orthonormal, via the Koszul formula
    /// `gamma[i][j][k] = (c[i][j][k] - c[j][k][i] + c[k][i][j]) / 2`.
    pub fn levi_civita(&self) -> Connection {
        let n = self.dim;
        let mut gamma = vec![0.0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    gamma[(i * n + j) * n + k] =
                        0.5 * (self.c(i, j, k) - self.c(j, k, i) + self.c(k, i, j));
                }
            }
        }
        Connection { dim: n, gamma }
    }
}

/// Connection coefficients `gamma[i][j][k]` meaning
/// `D_{e_i} e_j = sum_k gamma[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Connection {
    dim: usize,
    gamma: Vec<f64>,
}

impl Connection {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> f64 {
        self.gamma[(i * self.dim + j) * self.dim + k]
    }

    /// Largest defect of metric compatibility `gamma[i][j][k] = -gamma[i][k][j]`.
    pub fn metric_compatibility_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    worst =
                        worst.max((self.coefficient(i, j, k) + self.coefficient(i, k, j)).abs());
                }
            }
        }
        worst
    }

    /// Largest defect of `gamma[i][j][k] - gamma[j][i][k] = c[i][j][k]`.
    pub fn torsion_residual(&self, algebra: &LieAlgebra) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let defect = self.coefficient(i, j, k)
                        - self.coefficient(j, i, k)
                        - algebra.c(i, j, k);
                    worst = worst.max(defect.abs());
                }
            }
        }
        worst
    }
}
