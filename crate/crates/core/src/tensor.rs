//! Dense complex matrices and the leg calculus on `V ⊗ V` and `V ⊗ V ⊗ V`.
//!
//! Composite indices follow `i = i1 * d + i2` throughout, so `kron(X, Y)`
//! acts as `X` on the first leg and `Y` on the second.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Denominator floor for relative residuals.
pub const RESIDUAL_FLOOR: f64 = 1e-300;

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows.min(16) {
            for c in 0..self.cols.min(16) {
                let z = self[(r, c)];
                write!(f, " {:+.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row-major entries.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {}x{} matrix", data.len(), rows, cols)));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        Self::from_fn(n, m, |r, c| C64::new(rows[r][c], 0.0))
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &z) in diag.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        Self::from_diag(&diag.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>())
    }

    /// Matrix unit `E_{ij}` of size `d` (zero-based indices).
    pub fn unit(d: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(d, d);
        m[(i, j)] = C64::new(1.0, 0.0);
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn scale(&self, z: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| x * z).collect() }
    }

    pub fn scale_re(&self, x: f64) -> Self {
        self.scale(C64::new(x, 0.0))
    }

    pub fn trace(&self) -> C64 {
        self.diagonal().into_iter().sum()
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> f64 {
        (0..self.cols).map(|c| (0..self.rows).map(|r| self[(r, c)].norm()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self[(r, c)] == C64::new(0.0, 0.0)))
    }

    pub fn matmul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        let n = rhs.cols;
        for i in 0..self.rows {
            let orow = &mut out.data[i * n..(i + 1) * n];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let brow = &rhs.data[k * n..(k + 1) * n];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `[self, rhs] = self·rhs − rhs·self`.
    pub fn commutator(&self, rhs: &CMatrix) -> CMatrix {
        &self.matmul(rhs) - &rhs.matmul(self)
    }

    fn to_nalgebra(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    fn from_nalgebra(m: &DMatrix<C64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)])
    }

    /// LU inverse. Fails on singular input or a non-finite result.
    pub fn inverse(&self) -> Result<CMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("inverse of {}x{}", self.rows, self.cols)));
        }
        let inv = self.to_nalgebra().lu().try_inverse().ok_or(Error::Singular(f64::INFINITY))?;
        let out = Self::from_nalgebra(&inv);
        if !out.is_finite() {
            return Err(Error::Singular(f64::INFINITY));
        }
        Ok(out)
    }

    /// Inverse together with the 1-norm condition estimate `‖A‖₁‖A⁻¹‖₁`.
    pub fn inverse_with_condition(&self) -> Result<(CMatrix, f64)> {
        let inv = self.inverse()?;
        let cond = self.norm1() * inv.norm1();
        Ok((inv, cond))
    }

    /// Entrywise map.
    pub fn map(&self, f: impl Fn(C64) -> C64) -> CMatrix {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| f(z)).collect() }
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.cols + c]
    }
}

macro_rules! elementwise {
    ($tr:ident, $f:ident, $op:tt) => {
        impl $tr<&CMatrix> for &CMatrix {
            type Output = CMatrix;
            fn $f(self, rhs: &CMatrix) -> CMatrix {
                assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
                CMatrix {
                    rows: self.rows,
                    cols: self.cols,
                    data: self.data.iter().zip(&rhs.data).map(|(a, b)| a $op b).collect(),
                }
            }
        }
        impl $tr<CMatrix> for CMatrix {
            type Output = CMatrix;
            fn $f(self, rhs: CMatrix) -> CMatrix {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&CMatrix> for CMatrix {
            type Output = CMatrix;
            fn $f(self, rhs: &CMatrix) -> CMatrix {
                (&self).$f(rhs)
            }
        }
        impl $tr<CMatrix> for &CMatrix {
            type Output = CMatrix;
            fn $f(self, rhs: CMatrix) -> CMatrix {
                self.$f(&rhs)
            }
        }
    };
}

elementwise!(Add, add, +);
elementwise!(Sub, sub, -);

impl Mul<&CMatrix> for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

impl Mul<CMatrix> for CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: CMatrix) -> CMatrix {
        self.matmul(&rhs)
    }
}

impl Mul<&CMatrix> for CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

impl Mul<CMatrix> for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: CMatrix) -> CMatrix {
        self.matmul(&rhs)
    }
}

impl Mul<C64> for &CMatrix {
    type Output = CMatrix;
    fn mul(self, z: C64) -> CMatrix {
        self.scale(z)
    }
}

impl Mul<C64> for CMatrix {
    type Output = CMatrix;
    fn mul(self, z: C64) -> CMatrix {
        self.scale(z)
    }
}

impl Mul<f64> for &CMatrix {
    type Output = CMatrix;
    fn mul(self, x: f64) -> CMatrix {
        self.scale_re(x)
    }
}

impl Mul<f64> for CMatrix {
    type Output = CMatrix;
    fn mul(self, x: f64) -> CMatrix {
        self.scale_re(x)
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale_re(-1.0)
    }
}

impl Neg for CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale_re(-1.0)
    }
}

impl AddAssign<&CMatrix> for CMatrix {
    fn add_assign(&mut self, rhs: &CMatrix) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl AddAssign<CMatrix> for CMatrix {
    fn add_assign(&mut self, rhs: CMatrix) {
        *self += &rhs;
    }
}

impl SubAssign<&CMatrix> for CMatrix {
    fn sub_assign(&mut self, rhs: &CMatrix) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
    }
}

/// Sparse view used to apply embedded operators to dense matrices.
#[derive(Clone, Debug)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, C64)>,
}

impl SparseMatrix {
    pub fn from_dense(m: &CMatrix) -> Self {
        let mut entries = Vec::new();
        for r in 0..m.rows {
            for c in 0..m.cols {
                let z = m[(r, c)];
                if z.re != 0.0 || z.im != 0.0 {
                    entries.push((r, c, z));
                }
            }
        }
        Self { rows: m.rows, cols: m.cols, entries }
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// `self · rhs`.
    pub fn mul_dense(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "sparse matmul shape mismatch");
        let n = rhs.cols;
        let mut out = CMatrix::zeros(self.rows, n);
        for &(r, c, z) in &self.entries {
            let src = &rhs.data[c * n..(c + 1) * n];
            let dst = &mut out.data[r * n..(r + 1) * n];
            for (o, &b) in dst.iter_mut().zip(src) {
                *o += z * b;
            }
        }
        out
    }
}

/// Z₂ parities of the basis vectors of `V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParityVector(Vec<u8>);

impl ParityVector {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::Dimension("parity bits must be 0 or 1".into()));
        }
        Ok(Self(bits))
    }

    pub fn even(d: usize) -> Self {
        Self(vec![0; d])
    }

    /// `m` even basis vectors followed by `n` odd ones.
    pub fn superspace(m: usize, n: usize) -> Self {
        let mut v = vec![0; m];
        v.extend(std::iter::repeat_n(1, n));
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn bit(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn is_even(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    /// `(−1)^{p_a p_b}` style helper: sign for an exponent given as a bit sum.
    fn sign(exp: u32) -> f64 {
        if exp.is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }
}

/// Leg pair of the triple tensor space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pair {
    P12,
    P13,
    P23,
}

impl FromStr for Pair {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "12" => Ok(Pair::P12),
            "13" => Ok(Pair::P13),
            "23" => Ok(Pair::P23),
            other => Err(Error::InvalidLeg(format!("pair {other:?}"))),
        }
    }
}

/// Tensor leg of `V ⊗ V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Leg {
    First,
    Second,
}

impl TryFrom<u8> for Leg {
    type Error = Error;
    fn try_from(v: u8) -> Result<Self> {
        match v {
            1 => Ok(Leg::First),
            2 => Ok(Leg::Second),
            other => Err(Error::InvalidLeg(format!("leg {other}"))),
        }
    }
}

fn square_dim(x: &CMatrix) -> Result<usize> {
    if !x.is_square() {
        return Err(Error::Dimension(format!("expected square, got {}x{}", x.rows, x.cols)));
    }
    Ok(x.rows)
}

fn leg_dim(x: &CMatrix) -> Result<usize> {
    let n = square_dim(x)?;
    let d = (n as f64).sqrt().round() as usize;
    if d * d != n {
        return Err(Error::Dimension(format!("{n} is not a square leg dimension")));
    }
    Ok(d)
}

/// Kronecker product with `(X⊗Y)(u⊗v) = Xu ⊗ Yv`.
pub fn kron(x: &CMatrix, y: &CMatrix) -> CMatrix {
    let (yr, yc) = (y.rows, y.cols);
    CMatrix::from_fn(x.rows * yr, x.cols * yc, |r, c| x[(r / yr, c / yc)] * y[(r % yr, c % yc)])
}

/// Graded Kronecker product: `(X⊗̂Y)_{(i1 i2),(j1 j2)} = (−1)^{p(i2)(p(i1)+p(j1))} X_{i1j1} Y_{i2j2}`.
pub fn graded_kron(x: &CMatrix, y: &CMatrix, par: &ParityVector) -> Result<CMatrix> {
    let d = par.dim();
    for m in [x, y] {
        if m.rows != d || m.cols != d {
            return Err(Error::Dimension(format!("graded_kron needs {d}x{d} factors")));
        }
    }
    let mut out = kron(x, y);
    if par.is_even() {
        return Ok(out);
    }
    for i1 in 0..d {
        for j1 in 0..d {
            for i2 in 0..d {
                let e = par.bit(i2) as u32 * (par.bit(i1) as u32 + par.bit(j1) as u32);
                if e % 2 == 1 {
                    for j2 in 0..d {
                        out[(i1 * d + i2, j1 * d + j2)] = -out[(i1 * d + i2, j1 * d + j2)];
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Graded flip `P = Σ (−1)^{p(a)p(b)} E_{ba} ⊗ E_{ab}`; the plain flip for even parity.
pub fn flip(par: &ParityVector) -> CMatrix {
    let d = par.dim();
    let mut p = CMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            p[(b * d + a, a * d + b)] = C64::new(ParityVector::sign(par.bit(a) as u32 * par.bit(b) as u32), 0.0);
        }
    }
    p
}

/// `X₂₁ = P X P` with the plain flip.
pub fn swap_legs(x: &CMatrix, d: usize) -> Result<CMatrix> {
    swap_legs_graded(x, &ParityVector::even(d))
}

/// `X₂₁ = P X P` with the graded flip.
pub fn swap_legs_graded(x: &CMatrix, par: &ParityVector) -> Result<CMatrix> {
    let d = par.dim();
    if leg_dim(x)? != d {
        return Err(Error::Dimension(format!("swap_legs expects {0}x{0}", d * d)));
    }
    let mut out = CMatrix::zeros(d * d, d * d);
    let sgn = |a: usize, b: usize| ParityVector::sign(par.bit(a) as u32 * par.bit(b) as u32);
    for i1 in 0..d {
        for i2 in 0..d {
            for j1 in 0..d {
                for j2 in 0..d {
                    let s = sgn(i1, i2) * sgn(j1, j2);
                    out[(i1 * d + i2, j1 * d + j2)] = x[(i2 * d + i1, j2 * d + j1)] * s;
                }
            }
        }
    }
    Ok(out)
}

/// `X` acting on the named pair of legs of `V⊗V⊗V`, identity on the third.
pub fn embed_pair(x: &CMatrix, pair: Pair, d: usize) -> Result<CMatrix> {
    embed_pair_graded(x, pair, &ParityVector::even(d))
}

/// Graded embedding: `X ⊗ 1` with Koszul signs, and `P₂₃ (X⊗1) P₂₃` in the 13 slot.
pub fn embed_pair_graded(x: &CMatrix, pair: Pair, par: &ParityVector) -> Result<CMatrix> {
    let d = par.dim();
    if leg_dim(x)? != d {
        return Err(Error::Dimension(format!("embed_pair expects {0}x{0}", d * d)));
    }
    let id = CMatrix::identity(d);
    if par.is_even() {
        if let Pair::P12 = pair {
            return Ok(kron(x, &id));
        }
    }
    Ok(match pair {
        Pair::P23 => kron(&id, x),
        Pair::P12 | Pair::P13 => {
            let mut out = CMatrix::zeros(d * d * d, d * d * d);
            let b = |i: usize| par.bit(i) as u32;
            for i1 in 0..d {
                for i3 in 0..d {
                    for j1 in 0..d {
                        for j3 in 0..d {
                            let v = x[(i1 * d + i3, j1 * d + j3)];
                            if v.re == 0.0 && v.im == 0.0 {
                                continue;
                            }
                            // parity of the matrix unit carrying this entry
                            let deg = b(i1) + b(i3) + b(j1) + b(j3);
                            for m in 0..d {
                                let (r, c, e) = match pair {
                                    Pair::P12 => ((i1 * d + i3) * d + m, (j1 * d + j3) * d + m, b(m) * deg),
                                    _ => ((i1 * d + m) * d + i3, (j1 * d + m) * d + j3, b(m) * (b(i3) + b(j3) + deg)),
                                };
                                out[(r, c)] = v * ParityVector::sign(e);
                            }
                        }
                    }
                }
            }
            out
        }
    })
}

/// Supertranspose `(x^{st})_{ij} = (−1)^{p_i(p_i+p_j)} x_{ji}`.
pub fn supertranspose(x: &CMatrix, par: &ParityVector) -> Result<CMatrix> {
    let d = par.dim();
    if x.rows != d || x.cols != d {
        return Err(Error::Dimension(format!("supertranspose expects {d}x{d}")));
    }
    Ok(CMatrix::from_fn(d, d, |i, j| {
        x[(j, i)] * ParityVector::sign(par.bit(i) as u32 * (par.bit(i) as u32 + par.bit(j) as u32))
    }))
}

/// Transpose of one leg of `V⊗V`; with a parity vector the supertranspose sign rule is used.
pub fn partial_transpose(x: &CMatrix, leg: Leg, par: Option<&ParityVector>) -> Result<CMatrix> {
    let d = leg_dim(x)?;
    if let Some(p) = par {
        if p.dim() != d {
            return Err(Error::Dimension("parity length differs from leg dimension".into()));
        }
    }
    let bit = |i: usize| par.map_or(0, |p| p.bit(i) as u32);
    let mut out = CMatrix::zeros(d * d, d * d);
    for i1 in 0..d {
        for i2 in 0..d {
            for j1 in 0..d {
                for j2 in 0..d {
                    let (v, e) = match leg {
                        Leg::First => (x[(j1 * d + i2, i1 * d + j2)], bit(i1) * (bit(i1) + bit(j1))),
                        Leg::Second => (x[(i1 * d + j2, j1 * d + i2)], bit(i2) * (bit(i2) + bit(j2))),
                    };
                    out[(i1 * d + i2, j1 * d + j2)] = v * ParityVector::sign(e);
                }
            }
        }
    }
    Ok(out)
}

/// Residual of an identity `lhs = rhs`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residual {
    pub absolute: f64,
    pub relative: f64,
    pub reference_norm: f64,
}

impl Residual {
    pub fn from_parts(absolute: f64, reference_norm: f64) -> Self {
        Self { absolute, relative: absolute / reference_norm.max(RESIDUAL_FLOOR), reference_norm }
    }

    /// Frobenius residual relative to the larger of the two sides.
    pub fn between(lhs: &CMatrix, rhs: &CMatrix) -> Self {
        Self::from_parts((lhs - rhs).norm(), lhs.norm().max(rhs.norm()))
    }

    pub fn worst(self, other: Residual) -> Residual {
        if other.relative > self.relative || other.relative.is_nan() {
            other
        } else {
            self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn kron_index_convention() {
        let x = CMatrix::unit(2, 0, 1);
        let y = CMatrix::unit(2, 1, 0);
        let k = kron(&x, &y);
        assert_eq!(k[(1, 2)], c(1.0));
        assert_eq!(k.norm(), 1.0);
    }

    #[test]
    fn graded_kron_sign_on_odd_odd() {
        let par = ParityVector::new(vec![0, 1]).unwrap();
        let e22 = CMatrix::unit(2, 1, 1);
        let g = graded_kron(&e22, &e22, &par).unwrap();
        assert_eq!(g[(3, 3)], c(1.0));
        let e12 = CMatrix::unit(2, 0, 1);
        let g = graded_kron(&e12, &e22, &par).unwrap();
        assert_eq!(g[(1, 3)], c(-1.0));
    }

    #[test]
    fn flip_squares_to_identity() {
        let par = ParityVector::superspace(2, 2);
        let p = flip(&par);
        assert_eq!(&p * &p, CMatrix::identity(16));
    }

    #[test]
    fn embed_rejects_bad_size() {
        assert!(embed_pair(&CMatrix::identity(5), Pair::P12, 2).is_err());
        assert!("14".parse::<Pair>().is_err());
    }

    #[test]
    fn inverse_of_singular_fails() {
        assert!(CMatrix::zeros(3, 3).inverse().is_err());
    }
}
