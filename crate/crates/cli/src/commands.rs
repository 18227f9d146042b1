use std::fs;
use std::path::Path;

use hsbasis::bases::{gellmann_basis, standard_basis, weyl_basis, MatrixBasis};
use hsbasis::identities::{parse_ids, run_catalogue};
use hsbasis::io::{self, matrix_to_string};
use hsbasis::maps::{
    bloch_decompose, choi_state, concurrence_squared, partial_transpose_map, reshuffle_map,
    state_inversion, state_inversion_two_expansion, trace_map_apply, transpose_map_apply,
    Superoperator,
};
use hsbasis::operators::{bell_expansion, coherent_expansion, swap_expansion, TwoPartyOperator};
use hsbasis::random::{random_basis, seeded};
use hsbasis::transforms::change_of_basis;
use hsbasis::{BasisKind, ComplexMatrix, Error, Party, Result};

use crate::args::*;
use crate::report::{machine_report, text_report, RunConfig};

/// How a successful command ended.
#[derive(Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    IdentityFailures,
}

pub fn run(command: Command) -> Result<Status> {
    match command {
        Command::Build(a) => build(a),
        Command::Verify(a) => verify(a),
        Command::Transform(a) => transform(a),
        Command::Map(a) => map(a),
        Command::Choi(a) => choi(a),
        Command::Concurrence(a) => concurrence(a),
        Command::Decompose(a) => decompose(a),
    }
}

pub fn load_basis(spec: &BasisSpec, dim: Option<usize>, seed: u64) -> Result<MatrixBasis> {
    let need_dim = || dim.ok_or_else(|| Error::Domain(format!("basis `{spec}` needs --dim")));
    match spec {
        BasisSpec::Builtin(kind) => {
            let d = need_dim()?;
            match kind {
                BasisKind::Standard => standard_basis(d),
                BasisKind::GellMann => gellmann_basis(d),
                BasisKind::Weyl => weyl_basis(d),
                BasisKind::Custom => {
                    Err(Error::Domain("custom bases must come from a file".into()))
                }
            }
        }
        BasisSpec::Random => {
            let d = need_dim()?;
            if d < 2 {
                return Err(Error::Domain(format!(
                    "dimension must be at least 2, got {d}"
                )));
            }
            random_basis(d, &mut seeded(seed))
        }
        BasisSpec::File(path) => {
            let b = io::read_basis(path)?;
            match dim {
                Some(d) if d != b.dim() => Err(Error::Dimension(format!(
                    "--dim {d} does not match the basis file, which has d = {}",
                    b.dim()
                ))),
                _ => Ok(b),
            }
        }
    }
}

fn basis_from(args: &BasisArgs) -> Result<MatrixBasis> {
    load_basis(&args.basis, args.dim, args.seed)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => Ok(fs::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_matrix(out: Option<&Path>, m: &ComplexMatrix) -> Result<Status> {
    emit(out, &matrix_to_string(m))?;
    Ok(Status::Success)
}

fn build(a: BuildArgs) -> Result<Status> {
    let b = basis_from(&a.basis)?;
    let m = match a.target {
        BuildTarget::Swap => swap_expansion(&b)?.into_matrix(),
        BuildTarget::Bell => bell_expansion(&b)?.into_matrix(),
        BuildTarget::Coherent => coherent_expansion(&b)?,
    };
    emit_matrix(a.out.as_deref(), &m)
}

fn verify(a: VerifyArgs) -> Result<Status> {
    let ids = a.ids.as_deref().map(parse_ids).transpose()?;
    let b = basis_from(&a.basis)?;
    let config = RunConfig {
        dim: b.dim(),
        basis: a.basis.basis.clone(),
        ids,
        seed: a.basis.seed,
        report: a.report,
        out: a.out,
    };
    let report = run_catalogue(&b, config.ids.as_deref(), config.seed);
    let text = match config.report {
        ReportFormat::Text => text_report(&config, &report),
        ReportFormat::Machine => machine_report(&config, &report),
    };
    emit(config.out.as_deref(), &text)?;
    if report.all_passed() {
        Ok(Status::Success)
    } else {
        for e in report.failures() {
            eprintln!(
                "identity {} failed: residual {:.3e} > {:.3e}",
                e.id, e.residual, e.tolerance
            );
        }
        Ok(Status::IdentityFailures)
    }
}

fn transform(a: TransformArgs) -> Result<Status> {
    let from = load_basis(&a.from, a.dim, a.seed)?;
    let to = load_basis(&a.to, a.dim, a.seed.wrapping_add(1))?;
    let s = change_of_basis(&to, &from)?;
    emit_matrix(a.out.as_deref(), s.coeffs())
}

fn map(a: MapArgs) -> Result<Status> {
    let b = basis_from(&a.basis)?;
    let d = b.dim();
    let input = io::read_matrix(&a.input)?;
    let two_party = || TwoPartyOperator::new(d, input.clone());
    let out = match a.map {
        MapKind::Trace => trace_map_apply(&input, &b)?,
        MapKind::Transpose => transpose_map_apply(&input, &b)?,
        MapKind::Pt => {
            partial_transpose_map(&two_party()?, Party::from_label(a.party)?, &b)?.into_matrix()
        }
        MapKind::Reshuffle => reshuffle_map(&two_party()?, &b)?.into_matrix(),
        MapKind::Inversion if input.shape() == (d, d) => state_inversion(&input, &b)?,
        MapKind::Inversion => state_inversion_two_expansion(&two_party()?, &b)?.into_matrix(),
    };
    emit_matrix(a.out.as_deref(), &out)
}

fn choi(a: ChoiArgs) -> Result<Status> {
    let b = basis_from(&a.basis)?;
    let d = b.dim();
    let l = match &a.map {
        MapSpec::Identity => Superoperator::identity(d),
        MapSpec::Trace => {
            Superoperator::from_fn(d, |m| ComplexMatrix::identity(d).scale(m.trace()))?
        }
        MapSpec::Transpose => Superoperator::from_fn(d, ComplexMatrix::transpose)?,
        MapSpec::File(path) => Superoperator::new(d, io::read_matrix(path)?)?,
    };
    emit_matrix(a.out.as_deref(), choi_state(&l, &b)?.matrix())
}

fn concurrence(a: ConcurrenceArgs) -> Result<Status> {
    let psi = io::read_vector(&a.state)?;
    let c2 = concurrence_squared(&psi)?;
    let value = if a.root { c2.max(0.0).sqrt() } else { c2 };
    println!("{value:.10}");
    Ok(Status::Success)
}

fn decompose(a: DecomposeArgs) -> Result<Status> {
    let b = basis_from(&a.basis)?;
    let input = io::read_matrix(&a.input)?;
    emit_matrix(a.out.as_deref(), &bloch_decompose(&input, &b)?.to_matrix())
}
