//! Shared test support: random valid foliated algebras built by
//! construction (so the Jacobi identity holds exactly in floating point)
//! and independent oracles for the connection, curvature and divergence.
//
// Each integration test target compiles its own copy; not every target
// uses every helper.
#![allow(dead_code)]

use folia_core::{FoliatedAlgebra, LieAlgebra, TransverseGeometry};
use folia_core::tensor::FrameTensor;
use folia_core::DEFAULT_TOLERANCE;
use rand::rngs::StdRng;
use rand::Rng;

/// Draw one random valid foliated algebra with frame dimension <= 7.
///
/// Families, mixed by weight:
/// - two-step nilpotent algebras with central leaves or bracket-closed
///   generator leaves (taut);
/// - almost-abelian solvable algebras: an abelian ideal acted on by a
///   trace-free matrix preserving the leaf span (generically nontaut);
/// - rotation algebras padded by abelian directions (taut, positive
///   transverse curvature);
/// - the built-in fixtures with randomized parameters, sometimes rescaled.
pub fn random_foliated(rng: &mut StdRng) -> FoliatedAlgebra {
    match rng.random_range(0..100u32) {
        0..35 => two_step_nilpotent(rng),
        35..70 => almost_abelian(rng),
        70..82 => rotation_with_padding(rng),
        _ => randomized_fixture(rng),
    }
}

fn coeff(rng: &mut StdRng) -> f64 {
    rng.random_range(-1.5..1.5)
}

/// Generators bracket into a center; leaf = chosen central directions plus
/// generators whose brackets stay inside the leaf part of the center.
fn two_step_nilpotent(rng: &mut StdRng) -> FoliatedAlgebra {
    loop {
        let n = rng.random_range(3..=7usize);
        let gens = rng.random_range(2..n); // center size n - gens >= 1
        let center: Vec<usize> = (gens..n).collect();

        let leaf_gens = rng.random_range(0..=gens.min(2));
        let center_leaf = rng.random_range(0..=center.len());
        let leaf: Vec<usize> = (0..leaf_gens)
            .chain(center[0..center_leaf].iter().copied())
            .collect();
        if leaf.is_empty() || leaf.len() == n {
            continue;
        }

        let leaf_center: Vec<usize> = center[0..center_leaf].to_vec();
        let mut brackets = Vec::new();
        for i in 0..gens {
            for j in (i + 1)..gens {
                // Brackets touching a leaf generator must land inside the
                // leaf part of the center (integrability + Riemannian
                // condition); normal generator pairs may hit any of it.
                let targets: &[usize] = if i < leaf_gens || j < leaf_gens {
                    &leaf_center
                } else {
                    &center
                };
                for &k in targets {
                    if rng.random_bool(0.55) {
                        brackets.push((i, j, k, coeff(rng)));
                    }
                }
            }
        }
        let algebra = LieAlgebra::from_brackets(n, &brackets, DEFAULT_TOLERANCE)
            .expect("two-step nilpotent construction always satisfies Jacobi");
        return FoliatedAlgebra::from_leaf_indices(algebra, &leaf, DEFAULT_TOLERANCE)
            .expect("nilpotent foliation is valid by construction");
    }
}

/// Abelian ideal spanned by the first n-1 directions, acted on by a
/// trace-free matrix that preserves the leaf span.
fn almost_abelian(rng: &mut StdRng) -> FoliatedAlgebra {
    let n = rng.random_range(3..=7usize);
    let m = n - 1;
    let p = rng.random_range(1..=m - 1);

    // Random leaf subset of the ideal, as a boolean mask.
    let mut in_leaf = vec![false; m];
    let mut chosen = 0;
    while chosen < p {
        let i = rng.random_range(0..m);
        if !in_leaf[i] {
            in_leaf[i] = true;
            chosen += 1;
        }
    }

    // phi[row][col]; leaf columns may only feed leaf rows.
    let mut phi = vec![vec![0.0f64; m]; m];
    for col in 0..m {
        for row in 0..m {
            if in_leaf[col] && !in_leaf[row] {
                continue;
            }
            if rng.random_bool(0.7) {
                phi[row][col] = coeff(rng);
            }
        }
    }
    let trace: f64 = (0..m).map(|i| phi[i][i]).sum();
    for i in 0..m {
        phi[i][i] -= trace / m as f64;
    }

    // |kappa_b| equals |trace of phi restricted to the leaf block|. Keep it
    // either essentially zero (taut) or well clear of the tolerance dead
    // band where the higher-degree criteria lose resolution in f64.
    let leaf_trace: f64 = (0..m).filter(|&i| in_leaf[i]).map(|i| phi[i][i]).sum();
    let normal_diag = (0..m).find(|&i| !in_leaf[i]).expect("leaf is proper");
    if rng.random_bool(0.35) {
        let shift = leaf_trace / p as f64;
        for i in (0..m).filter(|&i| in_leaf[i]) {
            phi[i][i] -= shift;
        }
        phi[normal_diag][normal_diag] += leaf_trace;
    } else if leaf_trace.abs() < 0.3 {
        let leaf_diag = (0..m).find(|&i| in_leaf[i]).expect("leaf is nonempty");
        let bump = 0.3f64.copysign(if leaf_trace == 0.0 { 1.0 } else { leaf_trace });
        phi[leaf_diag][leaf_diag] += bump;
        phi[normal_diag][normal_diag] -= bump;
    }

    // [e_n, e_i] = sum_j phi[j][i] e_j, encoded as i < j brackets (i, n-1).
    let mut brackets = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if phi[j][i] != 0.0 {
                brackets.push((i, n - 1, j, -phi[j][i]));
            }
        }
    }
    let leaf: Vec<usize> = (0..m).filter(|&i| in_leaf[i]).collect();
    let algebra = LieAlgebra::from_brackets(n, &brackets, DEFAULT_TOLERANCE)
        .expect("almost-abelian construction always satisfies Jacobi");
    FoliatedAlgebra::from_leaf_indices(algebra, &leaf, DEFAULT_TOLERANCE)
        .expect("almost-abelian foliation is valid by construction")
}

/// Scaled rotation algebra [e1,e2]=a e3 (cyclic) plus abelian padding;
/// leaf is the first rotation direction plus a random share of the padding.
fn rotation_with_padding(rng: &mut StdRng) -> FoliatedAlgebra {
    let extra = rng.random_range(0..=3usize);
    let n = 3 + extra;
    let a = rng.random_range(0.3..2.0);
    let brackets = vec![(0, 1, 2, a), (1, 2, 0, a), (0, 2, 1, -a)];
    let mut leaf = vec![0usize];
    for pad in 3..n {
        if rng.random_bool(0.5) {
            leaf.push(pad);
        }
    }
    let algebra = LieAlgebra::from_brackets(n, &brackets, DEFAULT_TOLERANCE)
        .expect("rotation algebra satisfies Jacobi");
    FoliatedAlgebra::from_leaf_indices(algebra, &leaf, DEFAULT_TOLERANCE)
        .expect("rotation foliation is valid by construction")
}

fn randomized_fixture(rng: &mut StdRng) -> FoliatedAlgebra {
    let fol = match rng.random_range(0..3u32) {
        0 => folia_core::fixtures::carriere(rng.random_range(3..=12)).unwrap(),
        1 => {
            let coshk = [1.5, 2.0, 2.5, 3.0][rng.random_range(0..4usize)];
            let sign = |r: &mut StdRng| if r.random_bool(0.5) { 1.0 } else { -1.0 };
            let n1 = sign(rng) * rng.random_range(0.25..2.0);
            let n2 = sign(rng) * rng.random_range(0.25..2.0);
            folia_core::fixtures::hrw7(coshk, n1, n2).unwrap()
        }
        _ => folia_core::fixtures::heisenberg().unwrap(),
    };
    if rng.random_bool(0.4) {
        let factor = rng.random_range(0.25..4.0);
        fol.rescale_transverse(factor).unwrap()
    } else {
        fol
    }
}

/// Random invariant symmetric rank-2 tensor over the normal frame.
pub fn random_sym2(rng: &mut StdRng, fol: &FoliatedAlgebra) -> FrameTensor {
    let q = fol.codim();
    let mut entries = vec![0.0; q * q];
    for x in 0..q {
        for y in x..q {
            let v = coeff(rng);
            entries[x * q + y] = v;
            entries[y * q + x] = v;
        }
    }
    FrameTensor::from_entries(fol.normal(), 2, entries)
}

/// Random invariant 1-form over the normal frame.
pub fn random_one_form(rng: &mut StdRng, fol: &FoliatedAlgebra) -> FrameTensor {
    let q = fol.codim();
    FrameTensor::from_entries(fol.normal(), 1, (0..q).map(|_| coeff(rng)).collect())
}

/// Project an invariant 1-form onto the basic subspace: the kernel of the
/// leaf action `(L_{e_a} eta)(e_y) = -sum_k eta_k c[a][y][k]`. The
/// Weitzenbock-type identities only hold for basic forms.
pub fn basic_projection(fol: &FoliatedAlgebra, eta: &FrameTensor) -> FrameTensor {
    let q = fol.codim();
    let normal = fol.normal();

    // Constraint rows, one per (leaf direction, normal direction) pair.
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for &a in fol.leaf() {
        for &y in normal {
            let row: Vec<f64> = normal.iter().map(|&k| fol.algebra().c(a, y, k)).collect();
            if row.iter().any(|v| v.abs() > 1e-14) {
                rows.push(row);
            }
        }
    }

    // Orthonormal basis of the row space (modified Gram-Schmidt, run
    // twice for numerical crispness).
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for mut row in rows {
        for _ in 0..2 {
            for b in &basis {
                let dot: f64 = row.iter().zip(b).map(|(r, b)| r * b).sum();
                for (r, bv) in row.iter_mut().zip(b) {
                    *r -= dot * bv;
                }
            }
        }
        let norm = row.iter().map(|r| r * r).sum::<f64>().sqrt();
        if norm > 1e-10 {
            basis.push(row.iter().map(|r| r / norm).collect());
        }
    }

    // Remove the row-space component; what is left annihilates every
    // constraint, i.e. is basic.
    let mut out: Vec<f64> = (0..q).map(|k| eta.get(&[k])).collect();
    for _ in 0..2 {
        for b in &basis {
            let dot: f64 = out.iter().zip(b).map(|(o, bv)| o * bv).sum();
            for (o, bv) in out.iter_mut().zip(b) {
                *o -= dot * bv;
            }
        }
    }
    FrameTensor::from_entries(normal, 1, out)
}

// ---------------------------------------------------------------------
// Independent oracles. These recompute objects from their definitions
// through different code paths (operator application on coefficient
// vectors, generic covariant derivatives) rather than the fused index
// contractions the library uses.
// ---------------------------------------------------------------------

/// Koszul oracle: 2<D_X Y, Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y> with
/// brackets applied as coefficient vectors.
pub fn koszul_oracle(alg: &LieAlgebra, i: usize, j: usize, k: usize) -> f64 {
    let n = alg.dim();
    let bracket = |a: usize, b: usize| -> Vec<f64> { (0..n).map(|c| alg.c(a, b, c)).collect() };
    0.5 * (bracket(i, j)[k] - bracket(j, k)[i] + bracket(k, i)[j])
}

/// Curvature oracle: apply the transverse connection as matrices on
/// normal coefficient vectors, following
/// `R(X,Y)Z = nabla_Y nabla_X Z - nabla_X nabla_Y Z + nabla_[X,Y] Z`.
pub fn curvature_oracle(geom: &TransverseGeometry, x: usize, y: usize, z: usize, v: usize) -> f64 {
    let fol = geom.foliated();
    let normal = fol.normal();
    let q = normal.len();
    let n = fol.algebra().dim();
    let conn = geom.transverse_connection();

    // nabla_{e_row} applied to a coefficient vector over the normal frame.
    let apply = |row: usize, w: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; q];
        for zpos in 0..q {
            for vpos in 0..q {
                out[vpos] += w[zpos] * conn.coefficient(row, zpos, vpos);
            }
        }
        out
    };

    let mut e_z = vec![0.0; q];
    e_z[z] = 1.0;

    let term1 = apply(normal[y], &apply(normal[x], &e_z));
    let term2 = apply(normal[x], &apply(normal[y], &e_z));
    let mut result: Vec<f64> = term1.iter().zip(&term2).map(|(a, b)| a - b).collect();
    for k in 0..n {
        let c = fol.algebra().c(normal[x], normal[y], k);
        if c != 0.0 {
            for (r, d) in result.iter_mut().zip(apply(k, &e_z)) {
                *r += c * d;
            }
        }
    }
    result[v]
}

/// Divergence oracle: contract a generic covariant derivative,
/// `(div_Q v)(y) = sum_x (nabla_{e_x} v)(e_x, e_y)`.
pub fn div_q_rank2_oracle(geom: &TransverseGeometry, v: &FrameTensor) -> Vec<f64> {
    let fol = geom.foliated();
    let normal = fol.normal();
    let q = normal.len();
    let conn = geom.transverse_connection();

    // (nabla_{e_row} v)(a, b) for an invariant rank-2 tensor.
    let nabla = |row: usize, a: usize, b: usize| -> f64 {
        let mut sum = 0.0;
        for k in 0..q {
            sum -= v.get(&[k, b]) * conn.coefficient(row, a, k)
                + v.get(&[a, k]) * conn.coefficient(row, b, k);
        }
        sum
    };

    (0..q)
        .map(|y| (0..q).map(|x| nabla(normal[x], x, y)).sum())
        .collect()
}
