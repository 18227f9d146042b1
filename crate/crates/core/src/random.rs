//! Seeded random matrices, states and bases for tests and catalogue runs.
//!
//! Everything is driven by [`ChaCha8Rng`] so a `u64` seed reproduces the
//! same draws on every platform.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bases::{gellmann_basis, rotated_basis, MatrixBasis};
use crate::hs_core::{vec_norm, ComplexMatrix};
use crate::transforms::BasisChange;
use crate::Result;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian: real and imaginary parts each `N(0, 1/2)`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// `n×n` matrix of i.i.d. complex Gaussian entries.
pub fn random_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| complex_gaussian(rng))
}

pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = random_matrix(n, rng);
    (&g + &g.dagger()).scale_real(0.5)
}

/// Random density matrix `G G† / Tr(G G†)`.
pub fn random_density<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = random_matrix(n, rng);
    let rho = &g * &g.dagger();
    let t = rho.trace().re;
    rho.scale_real(1.0 / t)
}

/// Unit vector with complex Gaussian components.
pub fn random_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..n).map(|_| complex_gaussian(rng)).collect();
    let norm = vec_norm(&v);
    v.into_iter().map(|z| z / norm).collect()
}

/// Haar-distributed unitary from the QR decomposition of a complex Gaussian
/// matrix, with the phases of `diag(R)` moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let z = random_matrix(n, rng).to_nalgebra();
    let qr = z.qr();
    let mut q: DMatrix<Complex64> = qr.q();
    let r = qr.r();
    for c in 0..n {
        let rc = r[(c, c)];
        let phase = if rc.norm() > 0.0 {
            rc / rc.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for row in 0..n {
            q[(row, c)] *= phase;
        }
    }
    ComplexMatrix::from_nalgebra(&q)
}

/// Haar-random coefficient matrix between two bases in dimension `d`.
pub fn random_basis_change<R: Rng + ?Sized>(d: usize, rng: &mut R) -> BasisChange {
    BasisChange::new(d, haar_unitary(d * d, rng)).expect("d²×d² by construction")
}

/// Gell-Mann basis rotated by a Haar-random `d²×d²` unitary.
pub fn random_basis<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<MatrixBasis> {
    let u = random_basis_change(d, rng);
    rotated_basis(&gellmann_basis(d)?, &u)
}
