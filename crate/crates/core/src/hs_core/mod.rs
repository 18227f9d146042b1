//! Dense complex linear algebra with explicit two-party index conventions.
//!
//! A two-party operator on `C^d ⊗ C^d` is a `d²×d²` matrix whose composite row
//! index `(j, k)` sits at flat position `j·d + k`, and likewise for columns.
//! Entry `B_{jk,lm}` is therefore `M[(j·d + k, l·d + m)]`.

mod matrix;

use num_complex::Complex64;

pub use matrix::ComplexMatrix;
pub(crate) use matrix::{ONE, ZERO};

use crate::{Error, Result};

/// Absolute Frobenius-norm tolerance for matrix comparisons in dimension `d`.
pub fn tau(d: usize) -> f64 {
    1e-10 * (d * d) as f64
}

/// Absolute tolerance for scalar identities that aggregate `d⁴` terms.
pub fn scalar_tolerance(d: usize) -> f64 {
    1e-9 * (d * d) as f64
}

/// Which tensor factor of a two-party operator an operation acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Party {
    First,
    Second,
}

impl Party {
    /// Parses the 1-based party label used on the command line.
    pub fn from_label(label: u8) -> Result<Self> {
        match label {
            1 => Ok(Party::First),
            2 => Ok(Party::Second),
            other => Err(Error::Domain(format!("party must be 1 or 2, got {other}"))),
        }
    }
}

/// Composite index `(j, k) ↦ j·d + k` on `C^d ⊗ C^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BipartiteIndex {
    d: usize,
}

impl BipartiteIndex {
    pub fn new(d: usize) -> Self {
        Self { d }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn flat(&self, j: usize, k: usize) -> usize {
        j * self.d + k
    }

    #[inline]
    pub fn pair(&self, flat: usize) -> (usize, usize) {
        (flat / self.d, flat % self.d)
    }
}

/// Kronecker product `A ⊗ B`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (br, bc) = b.shape();
    ComplexMatrix::from_fn(a.rows() * br, a.cols() * bc, |r, c| {
        a[(r / br, c / bc)] * b[(r % br, c % bc)]
    })
}

/// Hilbert-Schmidt inner product `Tr(A† B)`.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Complex64> {
    if a.shape() != b.shape() {
        return Err(Error::Dimension(format!(
            "inner product of {}×{} and {}×{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| x.conj() * y)
        .sum())
}

fn check_two_party(m: &ComplexMatrix, d: usize) -> Result<()> {
    if d == 0 || m.shape() != (d * d, d * d) {
        return Err(Error::Dimension(format!(
            "expected a {0}×{0} two-party operator for d = {1}, got {2}×{3}",
            d * d,
            d,
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// Recovers the local dimension of a `d²×d²` matrix.
pub fn local_dim(m: &ComplexMatrix) -> Result<usize> {
    let n = m.rows();
    let d = (n as f64).sqrt().round() as usize;
    if !m.is_square() || d * d != n || d == 0 {
        return Err(Error::Dimension(format!(
            "{}×{} is not a two-party operator on C^d ⊗ C^d",
            m.rows(),
            m.cols()
        )));
    }
    Ok(d)
}

/// Traces out one party of a `d²×d²` operator.
///
/// `Party::First` sums `M_{jk,jm}` over `j`, leaving the right factor.
pub fn partial_trace(m: &ComplexMatrix, party: Party, d: usize) -> Result<ComplexMatrix> {
    check_two_party(m, d)?;
    let idx = BipartiteIndex::new(d);
    let out = match party {
        Party::First => ComplexMatrix::from_fn(d, d, |k, l| {
            (0..d).map(|j| m[(idx.flat(j, k), idx.flat(j, l))]).sum()
        }),
        Party::Second => ComplexMatrix::from_fn(d, d, |j, l| {
            (0..d).map(|k| m[(idx.flat(j, k), idx.flat(l, k))]).sum()
        }),
    };
    Ok(out)
}

/// Index-level partial transpose: `B_{jk,lm} → B_{jm,lk}` on party two,
/// `B_{jk,lm} → B_{lk,jm}` on party one.
pub fn partial_transpose_raw(m: &ComplexMatrix, party: Party, d: usize) -> Result<ComplexMatrix> {
    check_two_party(m, d)?;
    let idx = BipartiteIndex::new(d);
    let n = d * d;
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        let (j, k) = idx.pair(r);
        let (l, mm) = idx.pair(c);
        match party {
            Party::Second => m[(idx.flat(j, mm), idx.flat(l, k))],
            Party::First => m[(idx.flat(l, k), idx.flat(j, mm))],
        }
    }))
}

/// Reshuffling (realignment): `B_{jk,lm} → B_{jl,km}`.
pub fn reshuffle_raw(m: &ComplexMatrix, d: usize) -> Result<ComplexMatrix> {
    check_two_party(m, d)?;
    let idx = BipartiteIndex::new(d);
    let n = d * d;
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        let (j, k) = idx.pair(r);
        let (l, mm) = idx.pair(c);
        m[(idx.flat(j, l), idx.flat(k, mm))]
    }))
}

/// Row-major stacking of a square matrix into a `d²×1` column.
pub fn vectorize(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "vectorize expects a square matrix, got {}×{}",
            a.rows(),
            a.cols()
        )));
    }
    Ok(ComplexMatrix::column(a.as_slice()))
}

/// Inverse of [`vectorize`]; the input length must be a perfect square.
pub fn devectorize(v: &ComplexMatrix) -> Result<ComplexMatrix> {
    if v.cols() != 1 {
        return Err(Error::Dimension(format!(
            "devectorize expects a column vector, got {}×{}",
            v.rows(),
            v.cols()
        )));
    }
    let n = v.rows();
    let d = (n as f64).sqrt().round() as usize;
    if d * d != n {
        return Err(Error::Dimension(format!(
            "vector of length {n} is not a vectorized square matrix"
        )));
    }
    ComplexMatrix::from_vec(d, d, v.as_slice().to_vec())
}

/// Computational basis ket `|j⟩` in dimension `d`.
pub fn ket(d: usize, j: usize) -> Vec<Complex64> {
    let mut v = vec![ZERO; d];
    v[j] = ONE;
    v
}

/// Kronecker product of two kets.
pub fn tensor_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| x * y))
        .collect()
}

/// Matrix-vector product.
pub fn apply(m: &ComplexMatrix, v: &[Complex64]) -> Result<Vec<Complex64>> {
    if m.cols() != v.len() {
        return Err(Error::Dimension(format!(
            "cannot apply {}×{} to a vector of length {}",
            m.rows(),
            m.cols(),
            v.len()
        )));
    }
    Ok((0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m[(r, c)] * v[c]).sum())
        .collect())
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
