//! Dense frame-indexed tensors.
//!
//! A [`FrameTensor`] stores one scalar per multi-index over a fixed set of
//! frame indices (in practice the normal directions of a foliation). Rank 1
//! holds 1-forms, rank 2 holds bilinear forms, rank 4 holds curvature.

/// Symmetry class a tensor is declared to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryClass {
    /// No symmetry constraint.
    None,
    /// Symmetric rank-2 tensor.
    Symmetric2,
    /// Rank-4 tensor with curvature symmetries: antisymmetric in slots
    /// (1,2) and (3,4), symmetric under pair exchange.
    Curvature4,
}

/// Dense multi-index array of scalars over a fixed set of frame indices.
///
/// `indices` are 0-based frame indices in ascending order; entries are laid
/// out row-major with one slot per rank. All accessors below take
/// *positions* into `indices`, not frame indices themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameTensor {
    rank: usize,
    indices: Vec<usize>,
    entries: Vec<f64>,
    symmetry: SymmetryClass,
}

impl FrameTensor {
    pub fn zeros(indices: &[usize], rank: usize) -> Self {
        let dim = indices.len();
        FrameTensor {
            rank,
            indices: indices.to_vec(),
            entries: vec![0.0; dim.pow(rank as u32)],
            symmetry: SymmetryClass::None,
        }
    }

    /// Build a tensor entry by entry from a function of the multi-index.
    pub fn from_fn(indices: &[usize], rank: usize, mut f: impl FnMut(&[usize]) -> f64) -> Self {
        let mut t = Self::zeros(indices, rank);
        let dim = indices.len();
        let mut idx = vec![0usize; rank];
        for flat in 0..t.entries.len() {
            let mut rem = flat;
            for slot in (0..rank).rev() {
                idx[slot] = rem % dim;
                rem /= dim;
            }
            t.entries[flat] = f(&idx);
        }
        t
    }

    pub fn from_entries(indices: &[usize], rank: usize, entries: Vec<f64>) -> Self {
        assert_eq!(
            entries.len(),
            indices.len().pow(rank as u32),
            "entry count must equal |index_range|^rank"
        );
        FrameTensor {
            rank,
            indices: indices.to_vec(),
            entries,
            symmetry: SymmetryClass::None,
        }
    }

    /// Identity rank-2 tensor (the transverse metric in an orthonormal frame).
    pub fn identity(indices: &[usize]) -> Self {
        Self::from_fn(indices, 2, |ij| if ij[0] == ij[1] { 1.0 } else { 0.0 })
            .with_symmetry(SymmetryClass::Symmetric2)
    }

    pub fn with_symmetry(mut self, symmetry: SymmetryClass) -> Self {
        self.symmetry = symmetry;
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    /// The 0-based frame indices this tensor ranges over.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn symmetry(&self) -> SymmetryClass {
        self.symmetry
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank);
        let dim = self.dim();
        idx.iter().fold(0, |acc, &i| {
            debug_assert!(i < dim);
            acc * dim + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.entries[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: f64) {
        let o = self.offset(idx);
        self.entries[o] = value;
    }

    /// Entry addressed by 0-based frame indices rather than positions.
    /// Panics if a frame index is not part of this tensor's range.
    pub fn frame_component(&self, frame_idx: &[usize]) -> f64 {
        let pos: Vec<usize> = frame_idx
            .iter()
            .map(|f| {
                self.indices
                    .iter()
                    .position(|i| i == f)
                    .expect("frame index outside tensor range")
            })
            .collect();
        self.get(&pos)
    }

    pub fn scale(&self, factor: f64) -> Self {
        FrameTensor {
            rank: self.rank,
            indices: self.indices.clone(),
            entries: self.entries.iter().map(|e| e * factor).collect(),
            symmetry: self.symmetry,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank);
        assert_eq!(self.indices, other.indices);
        FrameTensor {
            rank: self.rank,
            indices: self.indices.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
            symmetry: SymmetryClass::None,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    /// Frobenius inner product: sum of entrywise products in the
    /// orthonormal frame.
    pub fn inner(&self, other: &Self) -> f64 {
        assert_eq!(self.rank, other.rank);
        assert_eq!(self.indices, other.indices);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner(self).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, e| m.max(e.abs()))
    }

    /// Trace of a rank-2 tensor against the orthonormal transverse metric.
    pub fn trace(&self) -> f64 {
        assert_eq!(self.rank, 2, "trace is defined for rank-2 tensors");
        (0..self.dim()).map(|x| self.get(&[x, x])).sum()
    }

    /// Largest violation of the declared symmetry class.
    pub fn symmetry_residual(&self) -> f64 {
        match self.symmetry {
            SymmetryClass::None => 0.0,
            SymmetryClass::Symmetric2 => self.sym2_residual(),
            SymmetryClass::Curvature4 => {
                let (a12, a34, pair) = self.curvature_symmetry_residuals();
                a12.max(a34).max(pair)
            }
        }
    }

    pub fn sym2_residual(&self) -> f64 {
        assert_eq!(self.rank, 2);
        let mut worst = 0.0f64;
        for x in 0..self.dim() {
            for y in 0..self.dim() {
                worst = worst.max((self.get(&[x, y]) - self.get(&[y, x])).abs());
            }
        }
        worst
    }

    /// Residuals of the three curvature symmetries of a rank-4 tensor:
    /// antisymmetry in slots (1,2), antisymmetry in slots (3,4), and
    /// symmetry under exchange of the two pairs.
    pub fn curvature_symmetry_residuals(&self) -> (f64, f64, f64) {
        assert_eq!(self.rank, 4);
        let q = self.dim();
        let (mut a12, mut a34, mut pair) = (0.0f64, 0.0f64, 0.0f64);
        for x in 0..q {
            for y in 0..q {
                for z in 0..q {
                    for v in 0..q {
                        let r = self.get(&[x, y, z, v]);
                        a12 = a12.max((r + self.get(&[y, x, z, v])).abs());
                        a34 = a34.max((r + self.get(&[x, y, v, z])).abs());
                        pair = pair.max((r - self.get(&[z, v, x, y])).abs());
                    }
                }
            }
        }
        (a12, a34, pair)
    }

    /// Largest violation of the first Bianchi identity
    /// `R(x,y,z,w) + R(y,z,x,w) + R(z,x,y,w) = 0` of a rank-4 tensor.
    pub fn first_bianchi_residual(&self) -> f64 {
        assert_eq!(self.rank, 4);
        let q = self.dim();
        let mut worst = 0.0f64;
        for x in 0..q {
            for y in 0..q {
                for z in 0..q {
                    for w in 0..q {
                        let s = self.get(&[x, y, z, w])
                            + self.get(&[y, z, x, w])
                            + self.get(&[z, x, y, w]);
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    /// Nested JSON arrays of the entries, outermost slot first.
    pub fn nested_json(&self) -> serde_json::Value {
        fn build(dim: usize, rank: usize, entries: &[f64]) -> serde_json::Value {
            if rank == 0 {
                return serde_json::json!(entries[0]);
            }
            let stride = entries.len() / dim;
            serde_json::Value::Array(
                (0..dim)
                    .map(|i| build(dim, rank - 1, &entries[i * stride..(i + 1) * stride]))
                    .collect(),
            )
        }
        build(self.dim(), self.rank, &self.entries)
    }
}
