//! Orthogonal operator bases normalized to `Tr(g†_jk g_lm) = d δ_jl δ_km`.
//!
//! Elements are addressed by a pair `(j, k)` stored at flat position
//! `j·d + k`. The Gell-Mann and Weyl bases keep their identity element at
//! `(0, 0)`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::hs_core::{hs_inner, tau, ComplexMatrix, ONE, ZERO};
use crate::transforms::BasisChange;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisKind {
    Standard,
    GellMann,
    Weyl,
    Custom,
}

impl BasisKind {
    pub fn name(self) -> &'static str {
        match self {
            BasisKind::Standard => "standard",
            BasisKind::GellMann => "gellmann",
            BasisKind::Weyl => "weyl",
            BasisKind::Custom => "custom",
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BasisKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(BasisKind::Standard),
            "gellmann" => Ok(BasisKind::GellMann),
            "weyl" => Ok(BasisKind::Weyl),
            "custom" => Ok(BasisKind::Custom),
            other => Err(Error::Domain(format!("unknown basis kind `{other}`"))),
        }
    }
}

/// `d²` matrices of size `d×d`, indexed by `(j, k)`.
///
/// Construction only checks the shape; orthonormality is checked by
/// [`validate_basis`] so that deliberately broken bases can still be
/// inspected.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixBasis {
    d: usize,
    kind: BasisKind,
    elements: Vec<ComplexMatrix>,
}

impl MatrixBasis {
    pub fn new(d: usize, kind: BasisKind, elements: Vec<ComplexMatrix>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Domain("basis dimension must be positive".into()));
        }
        if elements.len() != d * d {
            return Err(Error::Dimension(format!(
                "a basis in d = {d} needs {} elements, got {}",
                d * d,
                elements.len()
            )));
        }
        if let Some((i, g)) = elements
            .iter()
            .enumerate()
            .find(|(_, g)| g.shape() != (d, d))
        {
            return Err(Error::Dimension(format!(
                "element {i} is {}×{}, expected {d}×{d}",
                g.rows(),
                g.cols()
            )));
        }
        Ok(Self { d, kind, elements })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Element `g_jk`.
    pub fn get(&self, j: usize, k: usize) -> &ComplexMatrix {
        &self.elements[j * self.d + k]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ComplexMatrix> {
        self.elements.iter()
    }

    /// Same elements, with `g_jk` replaced by `f(g_jk)`.
    pub fn map_elements(&self, f: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> Self {
        Self {
            d: self.d,
            kind: BasisKind::Custom,
            elements: self.elements.iter().map(f).collect(),
        }
    }

    pub fn into_elements(self) -> Vec<ComplexMatrix> {
        self.elements
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::Domain(format!(
            "basis dimension must be at least 2, got {d}"
        )));
    }
    Ok(())
}

/// `e_jk = √d |j⟩⟨k|`.
pub fn standard_basis(d: usize) -> Result<MatrixBasis> {
    check_dim(d)?;
    let s = Complex64::new((d as f64).sqrt(), 0.0);
    let elements = (0..d * d)
        .map(|i| ComplexMatrix::unit(d, i / d, i % d).scale(s))
        .collect();
    MatrixBasis::new(d, BasisKind::Standard, elements)
}

/// Generalized Gell-Mann basis.
///
/// Layout: `(0,0)` is the identity, `(k,l)` with `k < l` the symmetric
/// `x_kl`, `(l,k)` the antisymmetric `y_kl`, and `(l,l)` for `l ≥ 1` the
/// diagonal `z_ll`.
pub fn gellmann_basis(d: usize) -> Result<MatrixBasis> {
    check_dim(d)?;
    let df = d as f64;
    let mut elements = vec![ComplexMatrix::zeros(d, d); d * d];
    elements[0] = ComplexMatrix::identity(d);
    let off = (df / 2.0).sqrt();
    for k in 0..d {
        for l in k + 1..d {
            let x = &mut elements[k * d + l];
            x[(k, l)] = Complex64::new(off, 0.0);
            x[(l, k)] = Complex64::new(off, 0.0);
            let y = &mut elements[l * d + k];
            y[(k, l)] = Complex64::new(0.0, -off);
            y[(l, k)] = Complex64::new(0.0, off);
        }
    }
    for l in 1..d {
        let lf = l as f64;
        let s = (df / (lf * (lf + 1.0))).sqrt();
        let z = &mut elements[l * d + l];
        for j in 0..l {
            z[(j, j)] = Complex64::new(s, 0.0);
        }
        z[(l, l)] = Complex64::new(-lf * s, 0.0);
    }
    MatrixBasis::new(d, BasisKind::GellMann, elements)
}

/// Clock operator `Z|j⟩ = ω^j |j⟩`, `ω = e^{2πi/d}`.
pub fn clock(d: usize) -> ComplexMatrix {
    let diag: Vec<Complex64> = (0..d)
        .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / d as f64))
        .collect();
    ComplexMatrix::diagonal(&diag)
}

/// Shift operator `X|j⟩ = |j+1 mod d⟩`.
pub fn shift(d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |r, c| if r == (c + 1) % d { ONE } else { ZERO })
}

/// Weyl operators `D_jk = Z^j X^k ω^{-jk/2}` with `ω^{1/2} = e^{πi/d}`.
///
/// Entries are written directly: `(D_jk)_{r,c} = ω^{jr} e^{-πi jk/d}` when
/// `r = c + k mod d`.
pub fn weyl_basis(d: usize) -> Result<MatrixBasis> {
    check_dim(d)?;
    let df = d as f64;
    let mut elements = Vec::with_capacity(d * d);
    for j in 0..d {
        for k in 0..d {
            let m = ComplexMatrix::from_fn(d, d, |r, c| {
                if r != (c + k) % d {
                    return ZERO;
                }
                // reduce the exponent mod 2d before converting to an angle
                let half_turns = (2 * ((j * r) % d) + 2 * d - (j * k) % (2 * d)) % (2 * d);
                Complex64::from_polar(1.0, PI * half_turns as f64 / df)
            });
            elements.push(m);
        }
    }
    MatrixBasis::new(d, BasisKind::Weyl, elements)
}

/// Outcome of the Gram-matrix orthonormality check.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisValidation {
    pub d: usize,
    /// Largest `|Tr(g†_a g_b) - d δ_ab|` over the Gram matrix.
    pub max_deviation: f64,
    /// Flat indices `(a, b)` of the Gram entry attaining `max_deviation`.
    pub worst_entry: (usize, usize),
    pub tolerance: f64,
}

impl BasisValidation {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

/// Gram matrix `G_ab = Tr(g†_a g_b)`.
pub fn gram_matrix(b: &MatrixBasis) -> ComplexMatrix {
    let n = b.len();
    ComplexMatrix::from_fn(n, n, |r, c| {
        hs_inner(&b.elements[r], &b.elements[c]).expect("uniform shapes")
    })
}

pub fn validate_basis(b: &MatrixBasis) -> BasisValidation {
    let d = b.dim();
    let gram = gram_matrix(b);
    let target = d as f64;
    let mut max_deviation = 0.0;
    let mut worst_entry = (0, 0);
    for r in 0..gram.rows() {
        for c in 0..gram.cols() {
            let want = if r == c { target } else { 0.0 };
            let dev = (gram[(r, c)] - want).norm();
            if dev > max_deviation || dev.is_nan() {
                max_deviation = dev;
                worst_entry = (r, c);
            }
        }
    }
    BasisValidation {
        d,
        max_deviation,
        worst_entry,
        tolerance: tau(d),
    }
}

/// `h_jk = Σ_lm U_{jk,lm} g_lm` for a unitary coefficient matrix `U`.
pub fn rotated_basis(b: &MatrixBasis, u: &BasisChange) -> Result<MatrixBasis> {
    let d = b.dim();
    if u.dim() != d {
        return Err(Error::Dimension(format!(
            "basis change for d = {} applied to a basis with d = {d}",
            u.dim()
        )));
    }
    let defect = u.unitarity_defect();
    if defect > tau(d) {
        return Err(Error::Precondition(format!(
            "coefficient matrix is not unitary (defect {defect:.3e})"
        )));
    }
    let coeffs = u.coeffs();
    let n = d * d;
    let elements = (0..n)
        .map(|row| {
            let mut h = ComplexMatrix::zeros(d, d);
            for (col, g) in b.elements.iter().enumerate() {
                h.add_scaled(coeffs[(row, col)], g);
            }
            h
        })
        .collect();
    let kind = if u.coeffs() == &ComplexMatrix::identity(n) {
        b.kind
    } else {
        BasisKind::Custom
    };
    MatrixBasis::new(d, kind, elements)
}

/// Partition of a basis into `d` diagonal and `d(d-1)` hollow elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisSplit {
    /// Flat indices of the diagonal elements, ascending.
    pub diagonal: Vec<usize>,
    /// Flat indices of the elements with vanishing main diagonal, ascending.
    pub offdiagonal: Vec<usize>,
}

pub fn split_diag_offdiag(b: &MatrixBasis) -> Option<BasisSplit> {
    let d = b.dim();
    let tol = tau(d);
    let mut diagonal = Vec::new();
    let mut offdiagonal = Vec::new();
    for (i, g) in b.elements.iter().enumerate() {
        let mut off_mass = 0.0;
        let mut diag_mass = 0.0;
        for r in 0..d {
            for c in 0..d {
                let v = g[(r, c)].norm_sqr();
                if r == c {
                    diag_mass += v;
                } else {
                    off_mass += v;
                }
            }
        }
        if off_mass.sqrt() <= tol {
            diagonal.push(i);
        } else if diag_mass.sqrt() <= tol {
            offdiagonal.push(i);
        } else {
            return None;
        }
    }
    (diagonal.len() == d && offdiagonal.len() == d * (d - 1)).then_some(BasisSplit {
        diagonal,
        offdiagonal,
    })
}

/// Largest entrywise deviation of `(1/d) Σ_jk (g_jk)_{lm} (g†_jk)_{pq}` from `δ_lq δ_mp`.
pub fn completeness_defect(b: &MatrixBasis) -> f64 {
    let d = b.dim();
    let mut worst: f64 = 0.0;
    let daggers: Vec<ComplexMatrix> = b.elements.iter().map(ComplexMatrix::dagger).collect();
    for l in 0..d {
        for m in 0..d {
            for p in 0..d {
                for q in 0..d {
                    let s: Complex64 = b
                        .elements
                        .iter()
                        .zip(&daggers)
                        .map(|(g, gd)| g[(l, m)] * gd[(p, q)])
                        .sum::<Complex64>()
                        / d as f64;
                    let want = if l == q && m == p { 1.0 } else { 0.0 };
                    worst = worst.max((s - want).norm());
                }
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_basis_change, seeded};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn paulis() -> [ComplexMatrix; 4] {
        [
            ComplexMatrix::identity(2),
            ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap(),
            ComplexMatrix::from_vec(2, 2, vec![ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO]).unwrap(),
            ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap(),
        ]
    }

    #[test]
    fn rejects_small_dimension() {
        for d in [0, 1] {
            assert!(matches!(standard_basis(d), Err(Error::Domain(_))));
            assert!(matches!(gellmann_basis(d), Err(Error::Domain(_))));
            assert!(matches!(weyl_basis(d), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn standard_elements() {
        let b = standard_basis(2).unwrap();
        assert_eq!(
            b.get(0, 1),
            &ComplexMatrix::unit(2, 0, 1).scale_real(2f64.sqrt())
        );
        let d = 5;
        let b = standard_basis(d).unwrap();
        for j in 0..d {
            for k in 0..d {
                let want = if j == k { (d as f64).sqrt() } else { 0.0 };
                assert_eq!(b.get(j, k).trace(), c(want, 0.0));
            }
        }
        assert!(validate_basis(&b).passed());
    }

    #[test]
    fn gellmann_two_is_pauli() {
        let b = gellmann_basis(2).unwrap();
        assert_eq!(b.elements(), &paulis());
        for d in 2..=6 {
            let b = gellmann_basis(d).unwrap();
            for l in 1..d {
                let z = b.get(l, l);
                assert!(((z * z).trace().re - d as f64).abs() < 1e-12);
            }
            for (i, g) in b.iter().enumerate() {
                assert_eq!(g, &g.dagger(), "element {i} not Hermitian");
                if i > 0 {
                    assert!(g.trace().norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn weyl_two_is_pauli_with_phase() {
        let b = weyl_basis(2).unwrap();
        let p = paulis();
        // (0,0)=σ0, (0,1)=X=σ1, (1,0)=Z=σ3, (1,1)=-iZX=σ2
        for (g, want) in b.iter().zip([&p[0], &p[1], &p[3], &p[2]]) {
            assert!(g.distance(want) < 1e-15);
        }
    }

    #[test]
    fn weyl_matches_clock_shift_powers() {
        for d in 2..=5 {
            let (z, x) = (clock(d), shift(d));
            let b = weyl_basis(d).unwrap();
            let mut zj = ComplexMatrix::identity(d);
            for j in 0..d {
                let mut xk = ComplexMatrix::identity(d);
                for k in 0..d {
                    let phase = Complex64::from_polar(1.0, -PI * (j * k) as f64 / d as f64);
                    let want = (&zj * &xk).scale(phase);
                    assert!(b.get(j, k).distance(&want) < 1e-12, "d={d} ({j},{k})");
                    xk = &xk * &x;
                }
                zj = &zj * &z;
            }
        }
    }

    #[test]
    fn weyl_elements_unitary_and_traceless() {
        for d in 2..=6 {
            let b = weyl_basis(d).unwrap();
            for (i, g) in b.iter().enumerate() {
                assert!(g.unitarity_defect() < 1e-12);
                if i > 0 {
                    assert!(g.trace().norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn builtin_bases_validate() {
        for d in 2..=6 {
            for b in [standard_basis(d), gellmann_basis(d), weyl_basis(d)] {
                let b = b.unwrap();
                let v = validate_basis(&b);
                assert!(v.passed(), "{} d={d}: {v:?}", b.kind());
            }
        }
    }

    #[test]
    fn scaled_element_fails_validation() {
        let d = 3;
        let mut elements = gellmann_basis(d).unwrap().into_elements();
        elements[4] = elements[4].scale_real(2.0);
        let b = MatrixBasis::new(d, BasisKind::Custom, elements).unwrap();
        let v = validate_basis(&b);
        assert!(!v.passed());
        assert!((v.max_deviation - 3.0 * d as f64).abs() < 1e-12);
        assert_eq!(v.worst_entry, (4, 4));
    }

    #[test]
    fn structural_errors() {
        assert!(
            MatrixBasis::new(2, BasisKind::Custom, vec![ComplexMatrix::identity(2); 3]).is_err()
        );
        assert!(
            MatrixBasis::new(2, BasisKind::Custom, vec![ComplexMatrix::identity(3); 4]).is_err()
        );
    }

    #[test]
    fn rotation_by_identity_is_noop() {
        let b = weyl_basis(3).unwrap();
        let id = BasisChange::new(3, ComplexMatrix::identity(9)).unwrap();
        assert_eq!(rotated_basis(&b, &id).unwrap(), b);
    }

    #[test]
    fn haar_rotation_preserves_orthogonality() {
        let mut rng = seeded(11);
        for d in 2..=5 {
            let u = random_basis_change(d, &mut rng);
            let b = rotated_basis(&standard_basis(d).unwrap(), &u).unwrap();
            assert!(validate_basis(&b).passed());
            assert!(split_diag_offdiag(&b).is_none());
        }
    }

    #[test]
    fn rotation_rejects_non_unitary() {
        let u = BasisChange::new(2, ComplexMatrix::identity(4).scale_real(2.0)).unwrap();
        assert!(matches!(
            rotated_basis(&standard_basis(2).unwrap(), &u),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn pauli_to_standard_rotation() {
        // e_00 = (σ0+σ3)/√2, e_01 = (σ1+iσ2)/√2, e_10 = (σ1-iσ2)/√2, e_11 = (σ0-σ3)/√2
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let coeffs = ComplexMatrix::from_vec(
            4,
            4,
            vec![
                c(s, 0.0),
                ZERO,
                ZERO,
                c(s, 0.0),
                ZERO,
                c(s, 0.0),
                c(0.0, s),
                ZERO,
                ZERO,
                c(s, 0.0),
                c(0.0, -s),
                ZERO,
                c(s, 0.0),
                ZERO,
                ZERO,
                c(-s, 0.0),
            ],
        )
        .unwrap();
        let u = BasisChange::new(2, coeffs).unwrap();
        let rotated = rotated_basis(&gellmann_basis(2).unwrap(), &u).unwrap();
        let std2 = standard_basis(2).unwrap();
        for (a, b) in rotated.iter().zip(std2.iter()) {
            assert!(a.distance(b) < 1e-15);
        }
    }

    #[test]
    fn splits_of_builtin_bases() {
        for d in 2..=6 {
            let w = split_diag_offdiag(&weyl_basis(d).unwrap()).unwrap();
            assert_eq!(w.diagonal, (0..d).map(|j| j * d).collect::<Vec<_>>());
            let g = split_diag_offdiag(&gellmann_basis(d).unwrap()).unwrap();
            assert_eq!(g.diagonal, (0..d).map(|l| l * d + l).collect::<Vec<_>>());
            let s = split_diag_offdiag(&standard_basis(d).unwrap()).unwrap();
            assert_eq!(s.diagonal, g.diagonal);
            assert_eq!(s.offdiagonal.len(), d * (d - 1));
        }
    }

    #[test]
    fn completeness_relation() {
        for d in 2..=6 {
            for b in [standard_basis(d), gellmann_basis(d), weyl_basis(d)] {
                assert!(completeness_defect(&b.unwrap()) <= tau(d));
            }
        }
    }

    #[test]
    fn weyl_group_property() {
        for d in 2..=5 {
            let b = weyl_basis(d).unwrap();
            for j1 in 0..d {
                for k1 in 0..d {
                    for j2 in 0..d {
                        for k2 in 0..d {
                            let prod = b.get(j1, k1) * b.get(j2, k2);
                            let target = b.get((j1 + j2) % d, (k1 + k2) % d);
                            let overlap = hs_inner(target, &prod).unwrap().norm();
                            assert!((overlap - d as f64).abs() <= tau(d));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn trace_bearing_element_counts() {
        for d in 2..=6 {
            let count = |b: MatrixBasis| b.iter().filter(|g| g.trace().norm() > tau(d)).count();
            assert_eq!(count(gellmann_basis(d).unwrap()), 1);
            assert_eq!(count(weyl_basis(d).unwrap()), 1);
            assert_eq!(count(standard_basis(d).unwrap()), d);
        }
    }
}
