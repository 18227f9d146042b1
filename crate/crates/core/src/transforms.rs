//! Coefficient matrices between orthogonal bases.
//!
//! A [`BasisChange`] `S` relates a source basis `{g}` to a target basis `{h}`
//! through `h_jk = Σ_lm S_{jk,lm} g_lm`. Rows are indexed by the target pair
//! `(j,k)`, columns by the source pair `(l,m)`, both in flat order `j·d + k`.

use crate::bases::{validate_basis, BasisSplit, MatrixBasis};
use crate::hs_core::{hs_inner, tau, ComplexMatrix};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct BasisChange {
    d: usize,
    coeffs: ComplexMatrix,
}

impl BasisChange {
    /// Wraps a `d²×d²` coefficient matrix. Unitarity is not enforced here.
    pub fn new(d: usize, coeffs: ComplexMatrix) -> Result<Self> {
        let n = d * d;
        if d == 0 || coeffs.shape() != (n, n) {
            return Err(Error::Dimension(format!(
                "basis change for d = {d} must be {n}×{n}, got {}×{}",
                coeffs.rows(),
                coeffs.cols()
            )));
        }
        Ok(Self { d, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn coeffs(&self) -> &ComplexMatrix {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> ComplexMatrix {
        self.coeffs
    }

    pub fn unitarity_defect(&self) -> f64 {
        self.coeffs.unitarity_defect()
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_defect() <= tau(self.d)
    }

    /// The inverse change, `S†`.
    pub fn inverse(&self) -> Self {
        Self {
            d: self.d,
            coeffs: self.coeffs.dagger(),
        }
    }

    /// `self · other`: if `other` maps `c → b` and `self` maps `b → a`, the
    /// product maps `c → a`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::Dimension(format!(
                "composing basis changes for d = {} and d = {}",
                self.d, other.d
            )));
        }
        Ok(Self {
            d: self.d,
            coeffs: &self.coeffs * &other.coeffs,
        })
    }
}

fn require_valid(b: &MatrixBasis, role: &str) -> Result<()> {
    let v = validate_basis(b);
    if !v.passed() {
        return Err(Error::Precondition(format!(
            "{role} basis is not orthogonal with norm d (Gram deviation {:.3e} at {:?})",
            v.max_deviation, v.worst_entry
        )));
    }
    Ok(())
}

/// `S_{jk,lm} = (1/d) Tr(g†_lm h_jk)` with `h = target`, `g = source`.
pub fn change_of_basis(target: &MatrixBasis, source: &MatrixBasis) -> Result<BasisChange> {
    if target.dim() != source.dim() {
        return Err(Error::Dimension(format!(
            "bases of dimension {} and {} cannot be related",
            target.dim(),
            source.dim()
        )));
    }
    require_valid(target, "target")?;
    require_valid(source, "source")?;
    let d = target.dim();
    let n = d * d;
    let inv_d = 1.0 / d as f64;
    let coeffs = ComplexMatrix::from_fn(n, n, |r, c| {
        hs_inner(&source.elements()[c], &target.elements()[r]).expect("same shape") * inv_d
    });
    BasisChange::new(d, coeffs)
}

/// `U` with `g_jk = √d Σ_lm U_{jk,lm} |l⟩⟨m|`, i.e. `U_{jk,lm} = (g_jk)_{lm} / √d`.
pub fn to_standard(b: &MatrixBasis) -> Result<BasisChange> {
    require_valid(b, "input")?;
    let d = b.dim();
    let n = d * d;
    let s = 1.0 / (d as f64).sqrt();
    let coeffs = ComplexMatrix::from_fn(n, n, |r, c| b.elements()[r].as_slice()[c] * s);
    BasisChange::new(d, coeffs)
}

/// `U†`, giving `√d |j⟩⟨k| = Σ_lm U*_{lm,jk} g_lm`.
pub fn from_standard(b: &MatrixBasis) -> Result<BasisChange> {
    Ok(to_standard(b)?.inverse())
}

/// Diagonal and off-diagonal blocks of a transformation to the standard basis.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockStructure {
    /// `d×d` block: rows follow `split.diagonal`, columns the units `|l⟩⟨l|`.
    pub diagonal: ComplexMatrix,
    /// `d(d-1)×d(d-1)` block: rows follow `split.offdiagonal`, columns the
    /// units `|l⟩⟨m|`, `l ≠ m`, in ascending flat order.
    pub offdiagonal: ComplexMatrix,
    /// Largest entry linking the two blocks.
    pub leakage: f64,
}

pub fn block_structure(u: &BasisChange, split: &BasisSplit) -> Result<BlockStructure> {
    let d = u.dim();
    if split.diagonal.len() != d || split.offdiagonal.len() != d * (d - 1) {
        return Err(Error::Dimension(format!(
            "split sizes {} + {} do not fit d = {d}",
            split.diagonal.len(),
            split.offdiagonal.len()
        )));
    }
    let diag_cols: Vec<usize> = (0..d).map(|l| l * d + l).collect();
    let off_cols: Vec<usize> = (0..d * d).filter(|c| c / d != c % d).collect();
    let m = u.coeffs();

    let mut leakage: f64 = 0.0;
    for &r in &split.diagonal {
        for &c in &off_cols {
            leakage = leakage.max(m[(r, c)].norm());
        }
    }
    for &r in &split.offdiagonal {
        for &c in &diag_cols {
            leakage = leakage.max(m[(r, c)].norm());
        }
    }
    if leakage > tau(d) {
        return Err(Error::Precondition(format!(
            "no block structure: cross-block entry of size {leakage:.3e}"
        )));
    }

    let pick = |rows: &[usize], cols: &[usize]| {
        ComplexMatrix::from_fn(rows.len(), cols.len(), |i, j| m[(rows[i], cols[j])])
    };
    Ok(BlockStructure {
        diagonal: pick(&split.diagonal, &diag_cols),
        offdiagonal: pick(&split.offdiagonal, &off_cols),
        leakage,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{
        gellmann_basis, rotated_basis, split_diag_offdiag, standard_basis, weyl_basis, BasisKind,
    };
    use crate::random::{random_basis, random_basis_change, seeded};
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn builtin(d: usize) -> Vec<MatrixBasis> {
        vec![
            standard_basis(d).unwrap(),
            gellmann_basis(d).unwrap(),
            weyl_basis(d).unwrap(),
        ]
    }

    #[test]
    fn self_change_is_identity() {
        for d in 2..=4 {
            for b in builtin(d) {
                let s = change_of_basis(&b, &b).unwrap();
                assert!(s.coeffs().distance(&ComplexMatrix::identity(d * d)) <= tau(d));
            }
        }
    }

    #[test]
    fn pauli_rows_over_standard() {
        // σ1 = (e01 + e10)/√2 and σ3 = (e00 - e11)/√2
        let s = change_of_basis(&gellmann_basis(2).unwrap(), &standard_basis(2).unwrap()).unwrap();
        let row = |r: usize| (0..4).map(|c| s.coeffs()[(r, c)]).collect::<Vec<_>>();
        let h = FRAC_1_SQRT_2;
        let want_x = [0.0, h, h, 0.0];
        let want_z = [h, 0.0, 0.0, -h];
        for c in 0..4 {
            assert!((row(1)[c] - want_x[c]).norm() < 1e-15);
            assert!((row(3)[c] - want_z[c]).norm() < 1e-15);
        }
        let u = to_standard(&gellmann_basis(2).unwrap()).unwrap();
        assert!(s.coeffs().distance(u.coeffs()) < 1e-15);
    }

    #[test]
    fn pairwise_changes_are_unitary_and_compose() {
        let mut rng = seeded(21);
        for d in 2..=6 {
            let mut bases = builtin(d);
            bases.push(random_basis(d, &mut rng).unwrap());
            for a in &bases {
                for b in &bases {
                    let ab = change_of_basis(a, b).unwrap();
                    assert!(ab.unitarity_defect() <= tau(d));
                    for c in &bases {
                        let bc = change_of_basis(b, c).unwrap();
                        let ac = change_of_basis(a, c).unwrap();
                        assert!(ab.compose(&bc).unwrap().coeffs().distance(ac.coeffs()) <= tau(d));
                    }
                }
            }
        }
    }

    #[test]
    fn change_reproduces_target() {
        let mut rng = seeded(2);
        let d = 3;
        let target = random_basis(d, &mut rng).unwrap();
        let source = weyl_basis(d).unwrap();
        let s = change_of_basis(&target, &source).unwrap();
        let rebuilt = rotated_basis(&source, &s).unwrap();
        for (a, b) in rebuilt.iter().zip(target.iter()) {
            assert!(a.distance(b) <= tau(d));
        }
    }

    #[test]
    fn weyl_gellmann_three_unitary() {
        let s = change_of_basis(&weyl_basis(3).unwrap(), &gellmann_basis(3).unwrap()).unwrap();
        assert!(s.is_unitary());
    }

    #[test]
    fn to_and_from_standard_round_trip() {
        for d in 2..=5 {
            let d_sqrt = (d as f64).sqrt();
            for b in builtin(d) {
                let u = to_standard(&b).unwrap();
                let ui = from_standard(&b).unwrap();
                assert_eq!(ui.coeffs(), &u.coeffs().dagger());
                let e = standard_basis(d).unwrap();
                // g_jk = √d Σ U_{jk,lm} |l⟩⟨m|
                let g_back = rotated_basis(&e, &u).unwrap();
                // √d |j⟩⟨k| = Σ U*_{lm,jk} g_lm
                let e_back = rotated_basis(&b, &ui).unwrap();
                for i in 0..d * d {
                    assert!(g_back.elements()[i].distance(&b.elements()[i]) <= tau(d));
                    assert!(e_back.elements()[i].distance(&e.elements()[i]) <= tau(d));
                    let unit = ComplexMatrix::unit(d, i / d, i % d).scale_real(d_sqrt);
                    assert!(e_back.elements()[i].distance(&unit) <= tau(d));
                }
            }
            assert_eq!(
                to_standard(&standard_basis(d).unwrap()).unwrap().coeffs(),
                &ComplexMatrix::identity(d * d)
            );
        }
    }

    #[test]
    fn rejects_invalid_input() {
        let g = gellmann_basis(2).unwrap();
        let bad = g.map_elements(|m| m.scale_real(1.5));
        assert!(matches!(
            change_of_basis(&bad, &g),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            change_of_basis(&g, &gellmann_basis(3).unwrap()),
            Err(Error::Dimension(_))
        ));
        assert_eq!(bad.kind(), BasisKind::Custom);
    }

    #[test]
    fn weyl_diagonal_block_is_fourier_kernel() {
        for d in 2..=6 {
            let b = weyl_basis(d).unwrap();
            let split = split_diag_offdiag(&b).unwrap();
            let blocks = block_structure(&to_standard(&b).unwrap(), &split).unwrap();
            let norm = 1.0 / (d as f64).sqrt();
            for j in 0..d {
                for l in 0..d {
                    let want = Complex64::from_polar(norm, 2.0 * PI * (j * l) as f64 / d as f64);
                    assert!((blocks.diagonal[(j, l)] - want).norm() < 1e-12);
                }
            }
            assert!(blocks.diagonal.unitarity_defect() <= tau(d));
            assert!(blocks.offdiagonal.unitarity_defect() <= tau(d));
        }
    }

    #[test]
    fn gellmann_three_diagonal_block() {
        let b = gellmann_basis(3).unwrap();
        let blocks =
            block_structure(&to_standard(&b).unwrap(), &split_diag_offdiag(&b).unwrap()).unwrap();
        let (s3, s2, s6) = (1.0 / 3f64.sqrt(), 1.0 / 2f64.sqrt(), 1.0 / 6f64.sqrt());
        let want =
            ComplexMatrix::from_real(3, 3, &[s3, s3, s3, s2, -s2, 0.0, s6, s6, -2.0 * s6]).unwrap();
        assert!(blocks.diagonal.distance(&want) < 1e-15);
        assert!(blocks.offdiagonal.unitarity_defect() <= tau(3));
    }

    #[test]
    fn random_rotation_has_no_blocks() {
        let d = 3;
        let mut rng = seeded(8);
        let g = gellmann_basis(d).unwrap();
        let split = split_diag_offdiag(&g).unwrap();
        let rotated = rotated_basis(&g, &random_basis_change(d, &mut rng)).unwrap();
        assert!(block_structure(&to_standard(&rotated).unwrap(), &split).is_err());
    }
}
