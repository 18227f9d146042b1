//! Executable catalogue of the sum rules satisfied by every orthogonal basis
//! with `Tr(g†_jk g_lm) = d δ_jl δ_km`.
//!
//! Each checker evaluates both sides of its identity and records the
//! residual: the Frobenius norm of the difference for operator identities, the
//! absolute difference for scalar ones. Checkers never reject a basis; a
//! malformed basis simply produces large residuals.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::bases::{BasisKind, MatrixBasis};
use crate::exec::Execution;
use crate::hs_core::{partial_trace, scalar_tolerance, tau, tensor, ComplexMatrix, Party};
use crate::operators::{
    bell_expansion_unchecked, bell_projector, swap_expansion_unchecked, swap_operator, Placement,
};
use crate::random::{random_matrix, seeded};
use crate::{Error, Result};

macro_rules! catalogue {
    ($($variant:ident => $name:literal),+ $(,)?) => {
        /// One tag per catalogue identity.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum IdentityId {
            $($variant),+
        }

        impl IdentityId {
            /// Every identity, in catalogue order.
            pub const ALL: &'static [IdentityId] = &[$(IdentityId::$variant),+];

            pub fn name(self) -> &'static str {
                match self {
                    $(IdentityId::$variant => $name),+
                }
            }
        }
    };
}

catalogue! {
    SwapExpansion => "SWAP_EXPANSION",
    GgDaggerSum => "GG_DAGGER_SUM",
    TraceWeightedSum => "TRACE_WEIGHTED_SUM",
    TraceNormSum => "TRACE_NORM_SUM",
    BellExpansion => "BELL_EXPANSION",
    GgConjSum => "GG_CONJ_SUM",
    TraceWeightedConj => "TRACE_WEIGHTED_CONJ",
    Identity4OpTensor => "IDENTITY_4OP_TENSOR",
    FourOps1 => "FOUROPS_1",
    FourOps2 => "FOUROPS_2",
    FourOps3 => "FOUROPS_3",
    BellBellTensor => "BELLBELL_TENSOR",
    SwapBellTensor => "SWAPBELL_TENSOR",
    Tr1BellBell => "TR1_BELLBELL",
    Tr12BellBell => "TR12_BELLBELL",
    TrSwapChoi => "TRSWAP_CHOI",
    PurityLink => "PURITY_LINK",
}

impl IdentityId {
    /// The identity written out, left-hand side first.
    pub fn description(self) -> &'static str {
        use IdentityId::*;
        match self {
            SwapExpansion => "(1/d) Σ g ⊗ g† = SWAP",
            GgDaggerSum => "Σ g g† = d² 1",
            TraceWeightedSum => "Σ Tr(g) g† = d 1",
            TraceNormSum => "Σ |Tr g|² = d²",
            BellExpansion => "(1/d²) Σ g ⊗ g* = |Φ⁺⟩⟨Φ⁺|",
            GgConjSum => "Σ g g* = d 1",
            TraceWeightedConj => "Σ Tr(g) g* = d 1",
            Identity4OpTensor => "(1/d²) Σ g†_ab g_jk ⊗ g_ab g†_jk = 1 ⊗ 1",
            FourOps1 => "Σ g†_ab g_jk g_ab g†_jk = d² 1",
            FourOps2 => "Σ g_ab g_jk g*_ab g*_jk = d³ 1",
            FourOps3 => "Σ g_ab g*_jk g†_ab g_jk = d² 1",
            BellBellTensor => "(1/d⁴) Σ (g_ab g_jk) ⊗ (g_ab g_jk)* = |Φ⁺⟩⟨Φ⁺|",
            SwapBellTensor => "(1/d³) Σ g_ab g*_jk ⊗ g†_ab g_jk = |Φ⁺⟩⟨Φ⁺|",
            Tr1BellBell => "Σ Tr(g_ab g_jk) (g_ab g_jk)* = d³ 1",
            Tr12BellBell => "Σ |Tr(g_ab g_jk)|² = d⁴",
            TrSwapChoi => "Tr₂[(A ⊗ B) SWAP] = A B",
            PurityLink => "Tr[(B† ⊗ B) SWAP] = (1/d) Σ |b_jk|² = Tr(B† B)",
        }
    }

    /// Whether the two sides are scalars rather than operators.
    pub fn is_scalar(self) -> bool {
        matches!(
            self,
            IdentityId::TraceNormSum | IdentityId::Tr12BellBell | IdentityId::PurityLink
        )
    }

    /// Whether the identity sums over pairs of basis elements.
    pub fn is_four_factor(self) -> bool {
        use IdentityId::*;
        matches!(
            self,
            Identity4OpTensor
                | FourOps1
                | FourOps2
                | FourOps3
                | BellBellTensor
                | SwapBellTensor
                | Tr1BellBell
                | Tr12BellBell
        )
    }

    /// Acceptance threshold in dimension `d`.
    ///
    /// Operator identities use `tau(d)`, scalar ones `scalar_tolerance(d)`.
    /// Unnormalized four-factor operator sums have right-hand sides of size
    /// up to `d³` built from `d⁴` terms, so they get `tau(d) · d²`.
    pub fn tolerance(self, d: usize) -> f64 {
        use IdentityId::*;
        if self.is_scalar() {
            scalar_tolerance(d)
        } else if matches!(self, FourOps1 | FourOps2 | FourOps3 | Tr1BellBell) {
            tau(d) * (d * d) as f64
        } else {
            tau(d)
        }
    }

    fn seed_offset(self) -> u64 {
        self as u64 + 1
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim();
        IdentityId::ALL
            .iter()
            .copied()
            .find(|id| id.name().eq_ignore_ascii_case(wanted))
            .ok_or_else(|| Error::Domain(format!("unknown identity `{wanted}`")))
    }
}

/// Parses a comma-separated list of identity names.
pub fn parse_ids(list: &str) -> Result<Vec<IdentityId>> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// Outcome of one catalogue check.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityEntry {
    pub id: IdentityId,
    pub description: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl IdentityEntry {
    fn new(id: IdentityId, d: usize, residual: f64) -> Self {
        let tolerance = id.tolerance(d);
        IdentityEntry {
            id,
            description: id.description(),
            residual,
            tolerance,
            passed: residual <= tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub d: usize,
    pub kind: BasisKind,
    pub seed: u64,
    pub entries: Vec<IdentityEntry>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    pub fn entry(&self, id: IdentityId) -> Option<&IdentityEntry> {
        self.entries.iter().find(|e| e.id == id)
    }
}

/// Evaluates a single identity on `b`. `seed` drives the random operators
/// used by the identities that need them.
pub fn check_identity(id: IdentityId, b: &MatrixBasis, seed: u64) -> IdentityEntry {
    check_identity_with(id, b, seed, Execution::default())
}

pub fn check_identity_with(
    id: IdentityId,
    b: &MatrixBasis,
    seed: u64,
    exec: Execution,
) -> IdentityEntry {
    let residual = Checker { b, exec }.residual(id, seed);
    IdentityEntry::new(id, b.dim(), residual)
}

/// Runs the whole catalogue, or the listed subset in the given order.
pub fn run_catalogue(b: &MatrixBasis, ids: Option<&[IdentityId]>, seed: u64) -> IdentityReport {
    run_catalogue_with(b, ids, seed, Execution::default())
}

pub fn run_catalogue_with(
    b: &MatrixBasis,
    ids: Option<&[IdentityId]>,
    seed: u64,
    exec: Execution,
) -> IdentityReport {
    let ids = ids.unwrap_or(IdentityId::ALL);
    let entries = exec.map_slice(ids, |&id| check_identity_with(id, b, seed, exec));
    IdentityReport {
        d: b.dim(),
        kind: b.kind(),
        seed,
        entries,
    }
}

struct Checker<'a> {
    b: &'a MatrixBasis,
    exec: Execution,
}

impl Checker<'_> {
    fn d(&self) -> usize {
        self.b.dim()
    }

    fn identity_times(&self, n: usize, s: f64) -> ComplexMatrix {
        ComplexMatrix::identity(n).scale_real(s)
    }

    fn residual(&self, id: IdentityId, seed: u64) -> f64 {
        use IdentityId::*;
        let d = self.d();
        let df = d as f64;
        let b = self.b;
        match id {
            SwapExpansion => {
                let lhs = swap_expansion_unchecked(b, Placement::Second);
                lhs.matrix()
                    .distance(swap_operator(d).expect("d ≥ 1").matrix())
            }
            GgDaggerSum => self
                .single_sum(|g| g * &g.dagger())
                .distance(&self.identity_times(d, df * df)),
            TraceWeightedSum => self
                .single_sum(|g| g.dagger().scale(g.trace()))
                .distance(&self.identity_times(d, df)),
            TraceNormSum => {
                let total: f64 = b.iter().map(|g| g.trace().norm_sqr()).sum();
                (total - df * df).abs()
            }
            BellExpansion => {
                let lhs = bell_expansion_unchecked(b, Placement::Second);
                lhs.matrix()
                    .distance(bell_projector(d).expect("d ≥ 1").matrix())
            }
            GgConjSum => self
                .single_sum(|g| g * &g.conj())
                .distance(&self.identity_times(d, df)),
            TraceWeightedConj => self
                .single_sum(|g| g.conj().scale(g.trace()))
                .distance(&self.identity_times(d, df)),
            Identity4OpTensor => {
                let lhs =
                    self.pair_sum(d * d, |g, h| tensor(&(&g.dagger() * h), &(g * &h.dagger())));
                lhs.scale_real(1.0 / (df * df))
                    .distance(&ComplexMatrix::identity(d * d))
            }
            FourOps1 => {
                let lhs = self.pair_sum(d, |g, h| &(&(&g.dagger() * h) * g) * &h.dagger());
                lhs.distance(&self.identity_times(d, df * df))
            }
            FourOps2 => {
                let lhs = self.pair_sum(d, |g, h| &(&(g * h) * &g.conj()) * &h.conj());
                lhs.distance(&self.identity_times(d, df * df * df))
            }
            FourOps3 => {
                let lhs = self.pair_sum(d, |g, h| &(&(g * &h.conj()) * &g.dagger()) * h);
                lhs.distance(&self.identity_times(d, df * df))
            }
            BellBellTensor => {
                let lhs = self.pair_sum(d * d, |g, h| {
                    let gh = g * h;
                    tensor(&gh, &gh.conj())
                });
                lhs.scale_real(1.0 / df.powi(4))
                    .distance(bell_projector(d).expect("d ≥ 1").matrix())
            }
            SwapBellTensor => {
                let lhs = self.pair_sum(d * d, |g, h| tensor(&(g * &h.conj()), &(&g.dagger() * h)));
                lhs.scale_real(1.0 / df.powi(3))
                    .distance(bell_projector(d).expect("d ≥ 1").matrix())
            }
            Tr1BellBell => {
                let lhs = self.pair_sum(d, |g, h| {
                    let gh = g * h;
                    gh.conj().scale(gh.trace())
                });
                lhs.distance(&self.identity_times(d, df.powi(3)))
            }
            Tr12BellBell => {
                let per_row = self.exec.map_slice(b.elements(), |g| {
                    b.iter().map(|h| (g * h).trace().norm_sqr()).sum::<f64>()
                });
                (per_row.iter().sum::<f64>() - df.powi(4)).abs()
            }
            TrSwapChoi => {
                let mut rng = seeded(seed.wrapping_add(id.seed_offset()));
                let a = random_matrix(d, &mut rng);
                let bm = random_matrix(d, &mut rng);
                let swap = swap_expansion_unchecked(b, Placement::Second);
                let lhs = partial_trace(&(&tensor(&a, &bm) * swap.matrix()), Party::Second, d)
                    .expect("square two-party operator");
                lhs.distance(&(&a * &bm))
            }
            PurityLink => {
                let mut rng = seeded(seed.wrapping_add(id.seed_offset()));
                let bm = random_matrix(d, &mut rng);
                let swap = swap_expansion_unchecked(b, Placement::Second);
                let via_swap = (&tensor(&bm.dagger(), &bm) * swap.matrix()).trace();
                let bloch: f64 = b
                    .iter()
                    .map(|g| (&g.dagger() * &bm).trace().norm_sqr())
                    .sum::<f64>()
                    / df;
                let direct = (&bm.dagger() * &bm).trace();
                let bloch = Complex64::new(bloch, 0.0);
                (via_swap - direct).norm().max((bloch - direct).norm())
            }
        }
    }

    fn single_sum(&self, f: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> ComplexMatrix {
        let d = self.d();
        let mut acc = ComplexMatrix::zeros(d, d);
        for g in self.b.iter() {
            acc += &f(g);
        }
        acc
    }

    /// `Σ_ab Σ_jk f(g_ab, g_jk)`. The outer index is spread over the
    /// execution mode; partial sums are added in index order.
    fn pair_sum<F>(&self, n: usize, f: F) -> ComplexMatrix
    where
        F: Fn(&ComplexMatrix, &ComplexMatrix) -> ComplexMatrix + Sync + Send,
    {
        let b = self.b;
        let partials = self.exec.map_slice(b.elements(), |g| {
            let mut acc = ComplexMatrix::zeros(n, n);
            for h in b.iter() {
                acc += &f(g, h);
            }
            acc
        });
        let mut total = ComplexMatrix::zeros(n, n);
        for p in &partials {
            total += p;
        }
        total
    }
}
