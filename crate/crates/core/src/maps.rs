//! Basis expansions of linear maps on `d×d` matrices.
//!
//! Every map here comes in an expanded form, a sum over basis elements, and
//! the tests hold each one against a direct index-level oracle from
//! [`crate::hs_core`].

use num_complex::Complex64;

use crate::bases::{gellmann_basis, BasisKind, MatrixBasis};
use crate::hs_core::{
    devectorize, hs_inner, local_dim, partial_trace, tau, tensor, vec_norm, vectorize,
    ComplexMatrix, Party, ZERO,
};
use crate::operators::TwoPartyOperator;
use crate::{Error, Result};

fn check_operand(a: &ComplexMatrix, b: &MatrixBasis) -> Result<()> {
    let d = b.dim();
    if a.shape() != (d, d) {
        return Err(Error::Dimension(format!(
            "expected a {d}×{d} operand, got {}×{}",
            a.rows(),
            a.cols()
        )));
    }
    Ok(())
}

fn check_two_party(op: &TwoPartyOperator, b: &MatrixBasis) -> Result<()> {
    if op.dim() != b.dim() {
        return Err(Error::Dimension(format!(
            "two-party operator with local dimension {} used with a basis in d = {}",
            op.dim(),
            b.dim()
        )));
    }
    Ok(())
}

/// Coefficients `b_jk = Tr(g†_jk A)` of an operator in a basis.
#[derive(Clone, Debug, PartialEq)]
pub struct BlochVector {
    pub d: usize,
    pub kind: BasisKind,
    /// Flat order `j·d + k`.
    pub coeffs: Vec<Complex64>,
}

impl BlochVector {
    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.coeffs[j * self.d + k]
    }

    /// `(1/d) Σ |b_jk|²`, which equals `Tr(A† A)`.
    pub fn length_squared(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>() / self.d as f64
    }

    /// Coefficients laid out as a `d×d` matrix with `b_jk` at `(j, k)`.
    pub fn to_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_vec(self.d, self.d, self.coeffs.clone()).expect("d² coefficients")
    }
}

pub fn bloch_decompose(a: &ComplexMatrix, b: &MatrixBasis) -> Result<BlochVector> {
    check_operand(a, b)?;
    let coeffs = b
        .iter()
        .map(|g| hs_inner(g, a))
        .collect::<Result<Vec<_>>>()?;
    Ok(BlochVector {
        d: b.dim(),
        kind: b.kind(),
        coeffs,
    })
}

/// `(1/d) Σ b_jk g_jk`.
pub fn bloch_reconstruct(v: &BlochVector, b: &MatrixBasis) -> Result<ComplexMatrix> {
    if v.d != b.dim() || v.coeffs.len() != b.len() {
        return Err(Error::Dimension(format!(
            "Bloch vector for d = {} used with a basis in d = {}",
            v.d,
            b.dim()
        )));
    }
    let d = b.dim();
    let mut acc = ComplexMatrix::zeros(d, d);
    for (c, g) in v.coeffs.iter().zip(b.iter()) {
        acc.add_scaled(c / d as f64, g);
    }
    Ok(acc)
}

/// `(1/d) Σ g A g†`, equal to `Tr(A) 1`.
pub fn trace_map_apply(a: &ComplexMatrix, b: &MatrixBasis) -> Result<ComplexMatrix> {
    check_operand(a, b)?;
    let d = b.dim();
    let mut acc = ComplexMatrix::zeros(d, d);
    for g in b.iter() {
        acc += &(&(g * a) * &g.dagger());
    }
    Ok(acc.scale_real(1.0 / d as f64))
}

/// `(1/d²) Σ_{jk,lm} g_jk g†_lm A g†_jk g_lm`, equal to `A`.
pub fn identity_map_apply(a: &ComplexMatrix, b: &MatrixBasis) -> Result<ComplexMatrix> {
    check_operand(a, b)?;
    let d = b.dim();
    let daggers: Vec<ComplexMatrix> = b.iter().map(ComplexMatrix::dagger).collect();
    let mut acc = ComplexMatrix::zeros(d, d);
    for (g, gd) in b.iter().zip(&daggers) {
        for (h, hd) in b.iter().zip(&daggers) {
            acc += &(&(&(&(g * hd) * a) * gd) * h);
        }
    }
    Ok(acc.scale_real(1.0 / (d * d) as f64))
}

/// The identity map with the `(j,k)` sum carried out as a trace map first:
/// `(1/d²) Σ_lm [Σ_jk g_jk (g†_lm A) g†_jk] g_lm`.
pub fn identity_map_via_trace(a: &ComplexMatrix, b: &MatrixBasis) -> Result<ComplexMatrix> {
    check_operand(a, b)?;
    let d = b.dim();
    let mut acc = ComplexMatrix::zeros(d, d);
    for h in b.iter() {
        let inner = trace_map_apply(&(&h.dagger() * a), b)?.scale_real(d as f64);
        acc += &(&inner * h);
    }
    Ok(acc.scale_real(1.0 / (d * d) as f64))
}

/// `(1/d) Σ g A g*`, equal to `Aᵀ`.
pub fn transpose_map_apply(a: &ComplexMatrix, b: &MatrixBasis) -> Result<ComplexMatrix> {
    check_operand(a, b)?;
    let d = b.dim();
    let mut acc = ComplexMatrix::zeros(d, d);
    for g in b.iter() {
        acc += &(&(g * a) * &g.conj());
    }
    Ok(acc.scale_real(1.0 / d as f64))
}

/// Partial transpose as `(1/d) Σ (1⊗g) B (1⊗g*)` on party two, or with the
/// factors swapped on party one.
pub fn partial_transpose_map(
    op: &TwoPartyOperator,
    party: Party,
    b: &MatrixBasis,
) -> Result<TwoPartyOperator> {
    check_two_party(op, b)?;
    let d = b.dim();
    let id = ComplexMatrix::identity(d);
    let mut acc = ComplexMatrix::zeros(d * d, d * d);
    for g in b.iter() {
        let (left, right) = match party {
            Party::Second => (tensor(&id, g), tensor(&id, &g.conj())),
            Party::First => (tensor(g, &id), tensor(&g.conj(), &id)),
        };
        acc += &(&(&left * op.matrix()) * &right);
    }
    TwoPartyOperator::new(d, acc.scale_real(1.0 / d as f64))
}

/// Reshuffling as `(1/d) Σ (1⊗g) B (g*⊗1)`.
pub fn reshuffle_map(op: &TwoPartyOperator, b: &MatrixBasis) -> Result<TwoPartyOperator> {
    check_two_party(op, b)?;
    let d = b.dim();
    let id = ComplexMatrix::identity(d);
    let mut acc = ComplexMatrix::zeros(d * d, d * d);
    for g in b.iter() {
        acc += &(&(&tensor(&id, g) * op.matrix()) * &tensor(&g.conj(), &id));
    }
    TwoPartyOperator::new(d, acc.scale_real(1.0 / d as f64))
}

/// A linear map on `d×d` matrices, stored as the `d²×d²` matrix acting on
/// row-major vectorizations: column `r` is `vec(L(devec(e_r)))`.
#[derive(Clone, Debug, PartialEq)]
pub struct Superoperator {
    d: usize,
    matrix: ComplexMatrix,
}

impl Superoperator {
    pub fn new(d: usize, matrix: ComplexMatrix) -> Result<Self> {
        if d == 0 || matrix.shape() != (d * d, d * d) {
            return Err(Error::Dimension(format!(
                "superoperator for d = {d} must be {0}×{0}, got {1}×{2}",
                d * d,
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self { d, matrix })
    }

    pub fn from_matrix(matrix: ComplexMatrix) -> Result<Self> {
        let d = local_dim(&matrix)?;
        Self::new(d, matrix)
    }

    pub fn identity(d: usize) -> Self {
        Self {
            d,
            matrix: ComplexMatrix::identity(d * d),
        }
    }

    /// Tabulates `f` on the matrix units `|j⟩⟨k|`.
    pub fn from_fn(d: usize, f: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> Result<Self> {
        let n = d * d;
        let mut matrix = ComplexMatrix::zeros(n, n);
        for col in 0..n {
            let out = f(&ComplexMatrix::unit(d, col / d, col % d));
            if out.shape() != (d, d) {
                return Err(Error::Dimension(format!(
                    "map produced a {}×{} image, expected {d}×{d}",
                    out.rows(),
                    out.cols()
                )));
            }
            for (row, &z) in out.as_slice().iter().enumerate() {
                matrix[(row, col)] = z;
            }
        }
        Self::new(d, matrix)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn apply(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        if a.shape() != (self.d, self.d) {
            return Err(Error::Dimension(format!(
                "expected a {0}×{0} operand, got {1}×{2}",
                self.d,
                a.rows(),
                a.cols()
            )));
        }
        devectorize(&(&self.matrix * &vectorize(a)?))
    }
}

/// Builds `L` from its action on basis elements:
/// `L(A) = (1/d) Σ Tr(g†_jk A) L(g_jk)`.
pub fn superop_from_action(
    action: impl Fn(&ComplexMatrix) -> ComplexMatrix,
    b: &MatrixBasis,
) -> Result<Superoperator> {
    let d = b.dim();
    let n = d * d;
    let mut matrix = ComplexMatrix::zeros(n, n);
    let w = 1.0 / d as f64;
    for g in b.iter() {
        let image = action(g);
        if image.shape() != (d, d) {
            return Err(Error::Dimension(format!(
                "action produced a {}×{} image, expected {d}×{d}",
                image.rows(),
                image.cols()
            )));
        }
        // outer product vec(L(g)) vec(g)†
        for (r, &lg) in image.as_slice().iter().enumerate() {
            for (c, &gc) in g.as_slice().iter().enumerate() {
                matrix[(r, c)] += lg * gc.conj() * w;
            }
        }
    }
    Superoperator::new(d, matrix)
}

/// `C_L = (L ⊗ Id)|Φ⁺⟩⟨Φ⁺|`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChoiState {
    d: usize,
    matrix: ComplexMatrix,
}

impl ChoiState {
    pub fn new(d: usize, matrix: ComplexMatrix) -> Result<Self> {
        let op = TwoPartyOperator::new(d, matrix)?;
        Ok(Self {
            d,
            matrix: op.into_matrix(),
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// `C_L = (1/d²) Σ L(g_jk) ⊗ g*_jk`.
pub fn choi_state(l: &Superoperator, b: &MatrixBasis) -> Result<ChoiState> {
    let d = b.dim();
    if l.dim() != d {
        return Err(Error::Dimension(format!(
            "superoperator for d = {} used with a basis in d = {d}",
            l.dim()
        )));
    }
    let mut acc = ComplexMatrix::zeros(d * d, d * d);
    for g in b.iter() {
        acc += &tensor(&l.apply(g)?, &g.conj());
    }
    ChoiState::new(d, acc.scale_real(1.0 / (d * d) as f64))
}

/// `L(A) = d Tr₂[C_L (1 ⊗ Aᵀ)]`.
pub fn apply_via_choi(c: &ChoiState, a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let d = c.dim();
    if a.shape() != (d, d) {
        return Err(Error::Dimension(format!(
            "expected a {d}×{d} operand, got {}×{}",
            a.rows(),
            a.cols()
        )));
    }
    let prod = c.matrix() * &tensor(&ComplexMatrix::identity(d), &a.transpose());
    Ok(partial_trace(&prod, Party::Second, d)?.scale_real(d as f64))
}

fn require_hermitian(a: &ComplexMatrix, d: usize) -> Result<()> {
    let defect = a.hermiticity_defect();
    if defect > tau(d) {
        return Err(Error::Precondition(format!(
            "operand is not Hermitian (‖A − A†‖ = {defect:.3e})"
        )));
    }
    Ok(())
}

/// Universal state inversion `(1/d) Σ g A* (g† − g*)`, equal to `Tr(A) 1 − A`.
pub fn state_inversion(a: &ComplexMatrix, b: &MatrixBasis) -> Result<ComplexMatrix> {
    check_operand(a, b)?;
    let d = b.dim();
    require_hermitian(a, d)?;
    let a_conj = a.conj();
    let mut acc = ComplexMatrix::zeros(d, d);
    for g in b.iter() {
        let diff = &g.dagger() - &g.conj();
        acc += &(&(g * &a_conj) * &diff);
    }
    Ok(acc.scale_real(1.0 / d as f64))
}

/// `Tr(A) 1 − A`.
pub fn state_inversion_analytic(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "expected a square operand, got {}×{}",
            a.rows(),
            a.cols()
        )));
    }
    Ok(&ComplexMatrix::identity(a.rows()).scale(a.trace()) - a)
}

/// Antisymmetric Gell-Mann matrices `y_kl`, `k < l`.
pub fn gellmann_antisymmetric(d: usize) -> Result<Vec<ComplexMatrix>> {
    let g = gellmann_basis(d)?;
    let mut ys = Vec::with_capacity(d * (d - 1) / 2);
    for k in 0..d {
        for l in k + 1..d {
            ys.push(g.get(l, k).clone());
        }
    }
    Ok(ys)
}

/// Single-party inversion through the imaginary Gell-Mann matrices only:
/// `(2/d) Σ_{k<l} y_kl A* y_kl`.
pub fn state_inversion_gellmann_y(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "expected a square operand, got {}×{}",
            a.rows(),
            a.cols()
        )));
    }
    let d = a.rows();
    require_hermitian(a, d)?;
    let a_conj = a.conj();
    let mut acc = ComplexMatrix::zeros(d, d);
    for y in gellmann_antisymmetric(d)? {
        acc += &(&(&y * &a_conj) * &y);
    }
    Ok(acc.scale_real(2.0 / d as f64))
}

/// Two-party inversion `(4/d²) Σ (y_jk⊗y_lm) B* (y_jk⊗y_lm)`.
pub fn state_inversion_two(op: &TwoPartyOperator) -> Result<TwoPartyOperator> {
    let d = op.dim();
    require_hermitian(op.matrix(), d)?;
    let ys = gellmann_antisymmetric(d)?;
    let b_conj = op.matrix().conj();
    let mut acc = ComplexMatrix::zeros(d * d, d * d);
    for y1 in &ys {
        for y2 in &ys {
            let yy = tensor(y1, y2);
            acc += &(&(&yy * &b_conj) * &yy);
        }
    }
    TwoPartyOperator::new(d, acc.scale_real(4.0 / (d * d) as f64))
}

/// Two-party inversion in an arbitrary basis, the product of two
/// single-party expansions:
/// `(1/d²) Σ (g⊗h) B* ((g† − g*) ⊗ (h† − h*))`.
pub fn state_inversion_two_expansion(
    op: &TwoPartyOperator,
    b: &MatrixBasis,
) -> Result<TwoPartyOperator> {
    check_two_party(op, b)?;
    let d = b.dim();
    require_hermitian(op.matrix(), d)?;
    let b_conj = op.matrix().conj();
    let diffs: Vec<ComplexMatrix> = b.iter().map(|g| &g.dagger() - &g.conj()).collect();
    let mut acc = ComplexMatrix::zeros(d * d, d * d);
    for (g, dg) in b.iter().zip(&diffs) {
        if dg.max_abs() == 0.0 {
            continue;
        }
        for (h, dh) in b.iter().zip(&diffs) {
            if dh.max_abs() == 0.0 {
                continue;
            }
            acc += &(&(&tensor(g, h) * &b_conj) * &tensor(dg, dh));
        }
    }
    TwoPartyOperator::new(d, acc.scale_real(1.0 / (d * d) as f64))
}

/// `Tr(B) 1 − Tr₂(B) ⊗ 1 − 1 ⊗ Tr₁(B) + B`.
pub fn state_inversion_two_analytic(op: &TwoPartyOperator) -> Result<TwoPartyOperator> {
    let d = op.dim();
    let b = op.matrix();
    let id = ComplexMatrix::identity(d);
    let mut out = ComplexMatrix::identity(d * d).scale(b.trace());
    out -= &tensor(&partial_trace(b, Party::Second, d)?, &id);
    out -= &tensor(&id, &partial_trace(b, Party::First, d)?);
    out += b;
    TwoPartyOperator::new(d, out)
}

/// Squared concurrence `(4/d²) Σ_{j<k, l<m} |⟨ψ| y_jk ⊗ y_lm |ψ*⟩|²` of a
/// pure state on `C^d ⊗ C^d`; conjugation is entrywise in the computational basis.
pub fn concurrence_squared(psi: &[Complex64]) -> Result<f64> {
    let n = psi.len();
    let d = (n as f64).sqrt().round() as usize;
    if d < 2 || d * d != n {
        return Err(Error::Dimension(format!(
            "state of length {n} is not on C^d ⊗ C^d with d ≥ 2"
        )));
    }
    let norm = vec_norm(psi);
    if (norm - 1.0).abs() > tau(d) {
        return Err(Error::Precondition(format!(
            "state is not normalized (‖ψ‖ = {norm})"
        )));
    }
    let ys = gellmann_antisymmetric(d)?;
    let psi_conj: Vec<Complex64> = psi.iter().map(|z| z.conj()).collect();
    let mut total = 0.0;
    for y1 in &ys {
        for y2 in &ys {
            // ⟨ψ| (y1⊗y2) |ψ*⟩ without forming the d²×d² product
            let mut amp = ZERO;
            for (r, &pr) in psi.iter().enumerate() {
                let (r1, r2) = (r / d, r % d);
                for (c, &qc) in psi_conj.iter().enumerate() {
                    let (c1, c2) = (c / d, c % d);
                    let e = y1[(r1, c1)] * y2[(r2, c2)];
                    if e != ZERO {
                        amp += pr.conj() * e * qc;
                    }
                }
            }
            total += amp.norm_sqr();
        }
    }
    Ok(4.0 / (d * d) as f64 * total)
}

/// `Tr[|ψ⟩⟨ψ| S(|ψ⟩⟨ψ|)]` with `S` the analytic two-party inversion.
pub fn concurrence_squared_via_inversion(psi: &[Complex64]) -> Result<f64> {
    let rho = TwoPartyOperator::from_matrix(ComplexMatrix::outer(psi, psi))?;
    let s = state_inversion_two_analytic(&rho)?;
    Ok((rho.matrix() * s.matrix()).trace().re)
}
