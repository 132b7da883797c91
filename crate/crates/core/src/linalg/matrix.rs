//! Dense complex matrices in row-major order.
//!
//! Everything in this crate lives in Hilbert spaces of dimension at most 256
//! (eight qubits), so a plain `Vec<Complex64>` with explicit indexing is both
//! fast enough and easy to audit.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hard cap on entry counts accepted by [`kron`]: 2^16 entries, i.e. 256x256.
pub const MAX_KRON_ENTRIES: usize = 1 << 16;

/// A dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build from row-major entries. Rejects shape mismatches and non-finite
    /// entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidParameter("non-finite matrix entry".into()));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Complex64::ONE;
        }
        m
    }

    /// Diagonal matrix from real entries.
    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m.entries[i * n + i] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.entries[i * self.cols + j] = value;
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j).conj();
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == Complex64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += aik * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest absolute deviation from Hermiticity, max |a_ij - conj(a_ji)|.
    pub fn hermiticity_deviation(&self) -> f64 {
        debug_assert_eq!(self.rows, self.cols);
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                dev = dev.max(d);
            }
        }
        dev
    }

    /// Entry-wise maximum absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Tr(A B), both square and of equal dimension.
    pub fn trace_product(&self, other: &Self) -> Result<Complex64> {
        if self.rows != self.cols || other.rows != other.cols || self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "trace product needs equal square matrices, got {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let n = self.rows;
        let mut acc = Complex64::ZERO;
        for i in 0..n {
            for j in 0..n {
                acc += self.get(i, j) * other.get(j, i);
            }
        }
        Ok(acc)
    }

    /// A B A†, the sandwich product used for channel and basis changes.
    pub fn conjugate_with(&self, middle: &Self) -> Result<Self> {
        self.mul(middle)?.mul(&self.adjoint())
    }

    /// Average with the own adjoint, forcing exact Hermiticity.
    pub fn hermitized(&self) -> Self {
        let adj = self.adjoint();
        let mut out = self.clone();
        for (o, a) in out.entries.iter_mut().zip(adj.entries) {
            *o = (*o + a) * 0.5;
        }
        out
    }
}

/// Kronecker product a ⊗ b, with `a` the leading (most significant) factor.
///
/// Entry ((i·rb + k), (j·cb + l)) equals a(i,j)·b(k,l). Operands and result
/// are capped at 2^16 entries each.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.entries.len() > MAX_KRON_ENTRIES || b.entries.len() > MAX_KRON_ENTRIES {
        return Err(Error::TooLarge(format!(
            "kron operand exceeds {} entries",
            MAX_KRON_ENTRIES
        )));
    }
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    if rows * cols > MAX_KRON_ENTRIES {
        return Err(Error::TooLarge(format!(
            "kron result {}x{} exceeds {} entries",
            rows, cols, MAX_KRON_ENTRIES
        )));
    }
    let mut out = ComplexMatrix::zeros(rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a.get(i, j);
            if aij == Complex64::ZERO {
                continue;
            }
            for k in 0..b.rows {
                let row = i * b.rows + k;
                for l in 0..b.cols {
                    out.entries[row * cols + j * b.cols + l] = aij * b.get(k, l);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = ComplexMatrix::identity(2);
        let k = kron(&i2, &i2).unwrap();
        assert_eq!(k, ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_of_basis_projectors() {
        // |0><0| ⊗ |1><1| = |01><01|, basis index 1 of 4
        let p0 = ComplexMatrix::diag(&[1.0, 0.0]);
        let p1 = ComplexMatrix::diag(&[0.0, 1.0]);
        let k = kron(&p0, &p1).unwrap();
        assert_eq!(k, ComplexMatrix::diag(&[0.0, 1.0, 0.0, 0.0]));
    }

    #[test]
    fn kron_matches_index_formula() {
        // random-ish 2x2 pair, checked entry by entry against the index formula
        let a = ComplexMatrix::new(
            2,
            2,
            vec![c(0.3, -0.1), c(1.2, 0.4), c(-0.7, 0.9), c(0.0, 2.0)],
        )
        .unwrap();
        let b = ComplexMatrix::new(
            2,
            2,
            vec![c(-1.0, 0.2), c(0.5, 0.5), c(2.0, -0.3), c(0.8, 0.0)],
        )
        .unwrap();
        let k = kron(&a, &b).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                for l in 0..2 {
                    for m in 0..2 {
                        let expected = a.get(i, j) * b.get(l, m);
                        assert_eq!(k.get(2 * i + l, 2 * j + m), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn kron_rejects_oversized_result() {
        let big = ComplexMatrix::identity(256);
        let i2 = ComplexMatrix::identity(2);
        assert!(matches!(kron(&big, &i2), Err(Error::TooLarge(_))));
    }

    #[test]
    fn adjoint_and_trace() {
        let a = ComplexMatrix::new(
            2,
            2,
            vec![c(1.0, 0.0), c(0.0, 1.0), c(2.0, 0.0), c(3.0, -1.0)],
        )
        .unwrap();
        let adj = a.adjoint();
        assert_eq!(adj.get(0, 1), c(2.0, 0.0));
        assert_eq!(adj.get(1, 0), c(0.0, -1.0));
        assert_eq!(a.trace(), c(4.0, -1.0));
    }

    #[test]
    fn rejects_non_finite_entries() {
        let bad = ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]);
        assert!(bad.is_err());
    }
}
