//! SWAP, the Bell projector and the fully coherent state, built directly
//! and as expansions in an orthogonal basis.

use num_complex::Complex64;

use crate::bases::{split_diag_offdiag, validate_basis, MatrixBasis};
use crate::hs_core::{local_dim, tensor, BipartiteIndex, ComplexMatrix, ONE};
use crate::transforms::to_standard;
use crate::{Error, Result};

/// A `d²×d²` operator on `C^d ⊗ C^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoPartyOperator {
    d: usize,
    matrix: ComplexMatrix,
}

impl TwoPartyOperator {
    pub fn new(d: usize, matrix: ComplexMatrix) -> Result<Self> {
        if d == 0 || matrix.shape() != (d * d, d * d) {
            return Err(Error::Dimension(format!(
                "two-party operator for d = {d} must be {0}×{0}, got {1}×{2}",
                d * d,
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self { d, matrix })
    }

    /// Infers `d` from a `d²×d²` matrix.
    pub fn from_matrix(matrix: ComplexMatrix) -> Result<Self> {
        let d = local_dim(&matrix)?;
        Ok(Self { d, matrix })
    }

    pub fn product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Self> {
        if a.shape() != b.shape() || !a.is_square() {
            return Err(Error::Dimension(
                "product operator needs two square factors of equal size".into(),
            ));
        }
        Self::new(a.rows(), tensor(a, b))
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::Domain(format!(
            "local dimension must be at least 2, got {d}"
        )));
    }
    Ok(())
}

fn require_valid(b: &MatrixBasis) -> Result<()> {
    let v = validate_basis(b);
    if !v.passed() {
        return Err(Error::Precondition(format!(
            "basis is not orthogonal with norm d (Gram deviation {:.3e})",
            v.max_deviation
        )));
    }
    Ok(())
}

/// Where the adjoint or conjugate goes in a two-factor expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Placement {
    First,
    #[default]
    Second,
}

/// `SWAP = Σ_jk |jk⟩⟨kj|`.
pub fn swap_operator(d: usize) -> Result<TwoPartyOperator> {
    check_dim(d)?;
    let idx = BipartiteIndex::new(d);
    let mut m = ComplexMatrix::zeros(d * d, d * d);
    for j in 0..d {
        for k in 0..d {
            m[(idx.flat(j, k), idx.flat(k, j))] = ONE;
        }
    }
    TwoPartyOperator::new(d, m)
}

fn sum_of_products(
    d: usize,
    terms: impl Iterator<Item = (ComplexMatrix, ComplexMatrix)>,
    weight: f64,
) -> ComplexMatrix {
    let mut acc = ComplexMatrix::zeros(d * d, d * d);
    for (a, b) in terms {
        acc.add_scaled(Complex64::new(weight, 0.0), &tensor(&a, &b));
    }
    acc
}

/// `(1/d) Σ_lm g_lm ⊗ g†_lm`.
pub fn swap_expansion(b: &MatrixBasis) -> Result<TwoPartyOperator> {
    swap_expansion_with(b, Placement::Second)
}

/// SWAP expansion with the adjoint on the chosen factor.
pub fn swap_expansion_with(b: &MatrixBasis, placement: Placement) -> Result<TwoPartyOperator> {
    require_valid(b)?;
    Ok(swap_expansion_unchecked(b, placement))
}

pub(crate) fn swap_expansion_unchecked(b: &MatrixBasis, placement: Placement) -> TwoPartyOperator {
    let d = b.dim();
    let terms = b.iter().map(|g| match placement {
        Placement::Second => (g.clone(), g.dagger()),
        Placement::First => (g.dagger(), g.clone()),
    });
    TwoPartyOperator {
        d,
        matrix: sum_of_products(d, terms, 1.0 / d as f64),
    }
}

/// Diagonal and off-diagonal parts of the SWAP expansion,
/// `(1/d) Σ_{k ∈ part} g_k ⊗ g†_k`, for a basis that splits.
pub fn swap_split_expansion(b: &MatrixBasis) -> Result<(TwoPartyOperator, TwoPartyOperator)> {
    require_valid(b)?;
    let split = split_diag_offdiag(b).ok_or_else(|| {
        Error::Precondition("basis does not split into diagonal and off-diagonal elements".into())
    })?;
    let d = b.dim();
    let part = |idx: &[usize]| {
        let terms = idx
            .iter()
            .map(|&i| (b.elements()[i].clone(), b.elements()[i].dagger()));
        TwoPartyOperator {
            d,
            matrix: sum_of_products(d, terms, 1.0 / d as f64),
        }
    };
    Ok((part(&split.diagonal), part(&split.offdiagonal)))
}

/// `(1/d) Σ_{diagonal k} g_kk ⊗ g†_kk`, which equals `Σ_j |jj⟩⟨jj|`.
pub fn swap_diag_expansion(b: &MatrixBasis) -> Result<TwoPartyOperator> {
    Ok(swap_split_expansion(b)?.0)
}

/// `SWAP_diag = Σ_j |jj⟩⟨jj|`.
pub fn swap_diag_operator(d: usize) -> Result<TwoPartyOperator> {
    check_dim(d)?;
    let idx = BipartiteIndex::new(d);
    let mut m = ComplexMatrix::zeros(d * d, d * d);
    for j in 0..d {
        m[(idx.flat(j, j), idx.flat(j, j))] = ONE;
    }
    TwoPartyOperator::new(d, m)
}

/// `|Φ⁺_d⟩ = (1/√d) Σ_j |jj⟩`.
pub fn bell_state(d: usize) -> Result<Vec<Complex64>> {
    check_dim(d)?;
    let mut v = vec![Complex64::new(0.0, 0.0); d * d];
    let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    for j in 0..d {
        v[j * d + j] = amp;
    }
    Ok(v)
}

pub fn bell_projector(d: usize) -> Result<TwoPartyOperator> {
    let v = bell_state(d)?;
    TwoPartyOperator::new(d, ComplexMatrix::outer(&v, &v))
}

/// `(1/d²) Σ_jk g_jk ⊗ g*_jk`.
pub fn bell_expansion(b: &MatrixBasis) -> Result<TwoPartyOperator> {
    bell_expansion_with(b, Placement::Second)
}

/// Bell expansion with the complex conjugate on the chosen factor.
pub fn bell_expansion_with(b: &MatrixBasis, placement: Placement) -> Result<TwoPartyOperator> {
    require_valid(b)?;
    Ok(bell_expansion_unchecked(b, placement))
}

pub(crate) fn bell_expansion_unchecked(b: &MatrixBasis, placement: Placement) -> TwoPartyOperator {
    let d = b.dim();
    let terms = b.iter().map(|g| match placement {
        Placement::Second => (g.clone(), g.conj()),
        Placement::First => (g.conj(), g.clone()),
    });
    TwoPartyOperator {
        d,
        matrix: sum_of_products(d, terms, 1.0 / (d * d) as f64),
    }
}

/// `|+⟩_d = (1/√d) Σ_j |j⟩`.
pub fn coherent_state(d: usize) -> Result<Vec<Complex64>> {
    check_dim(d)?;
    Ok(vec![Complex64::new(1.0 / (d as f64).sqrt(), 0.0); d])
}

/// `d^{3/2} |+⟩⟨+|` assembled as `Σ_lm c_lm g_lm` with `c_lm = Σ_jk U*_{lm,jk}`
/// read from [`to_standard`].
pub fn coherent_expansion(b: &MatrixBasis) -> Result<ComplexMatrix> {
    let u = to_standard(b)?;
    let d = b.dim();
    let n = d * d;
    let mut acc = ComplexMatrix::zeros(d, d);
    for (lm, g) in b.iter().enumerate() {
        let c: Complex64 = (0..n).map(|jk| u.coeffs()[(lm, jk)].conj()).sum();
        acc.add_scaled(c, g);
    }
    Ok(acc)
}
