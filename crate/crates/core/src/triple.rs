//! Products of two-leg matrices embedded in `V⊗V⊗V`.
//!
//! Embedded factors are sparse, so products are accumulated right to left as
//! sparse-times-dense updates instead of dense `d³×d³` multiplications.

use crate::models::Algebra;
use crate::tensor::{CMatrix, Pair, Residual, SparseMatrix};

/// Ordered product `X₁ X₂ … Xₖ` of embedded factors.
pub fn product(alg: &Algebra, factors: &[(&CMatrix, Pair)]) -> CMatrix {
    let (last, rest) = factors.split_last().expect("empty product");
    let mut acc = alg.embed(last.0, last.1);
    for (x, pair) in rest.iter().rev() {
        acc = SparseMatrix::from_dense(&alg.embed(x, *pair)).mul_dense(&acc);
    }
    acc
}

/// Residual of `X₁…Xₖ = Y₁…Yₖ` in triple space.
pub fn relation(alg: &Algebra, lhs: &[(&CMatrix, Pair)], rhs: &[(&CMatrix, Pair)]) -> Residual {
    Residual::between(&product(alg, lhs), &product(alg, rhs))
}

/// `[x₁₂, y₁₃] + [x₁₂, z₂₃] + [y₁₃, z₂₃]`, normalized by the sizes of the three commutator terms.
pub fn cybe(alg: &Algebra, x12: &CMatrix, y13: &CMatrix, z23: &CMatrix) -> Residual {
    let comm = |a: (&CMatrix, Pair), b: (&CMatrix, Pair)| product(alg, &[a, b]) - product(alg, &[b, a]);
    let (x, y, z) = ((x12, Pair::P12), (y13, Pair::P13), (z23, Pair::P23));
    let sum = comm(x, y) + comm(x, z) + comm(y, z);
    // embedding multiplies the Frobenius norm by sqrt(d)
    let d = alg.dim as f64;
    let (nx, ny, nz) = (x12.norm() * d.sqrt(), y13.norm() * d.sqrt(), z23.norm() * d.sqrt());
    Residual::from_parts(sum.norm(), nx * ny + nx * nz + ny * nz)
}
