use std::fs;
use std::path::Path;

use csl_core::clifford::{
    dimension_accounting, verify_relations, volume_element, volume_is_scalar, CliffordRealization,
    ComponentTag, QuaternionSide,
};
use csl_core::gilbert::{check_gilbert, dim_obstruction, spinning_evidence, standard_witness_for};
use csl_core::hardy::{
    suite_crb, suite_dirac, suite_idempotency, suite_involution, suite_kernels, suite_rbc,
    suite_schwartz, NumericReport, SuiteConfig,
};
use csl_core::linalg::format_rational;
use serde_json::{json, Value};

use crate::report::{CliError, Output};
use crate::{Cli, Command, ComponentChoice, Suite};

/// Largest grid the direct convolution of the kernels suite accepts.
const MAX_KERNEL_POINTS: usize = 4096;

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Build { n, quaternion_side } => {
            let items = n
                .values(cli.k)
                .into_iter()
                .map(|n| {
                    let r = CliffordRealization::build_with(n, (*quaternion_side).into())?;
                    Ok((true, to_value(&r)?))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(Output::collect(items))
        }
        Command::Verify { n, input, quaternion_side } => {
            let realizations = match input {
                Some(path) => vec![read_realization(path)?],
                None => n
                    .expect("clap requires --n without --input")
                    .values(cli.k)
                    .into_iter()
                    .map(|n| CliffordRealization::build_with(n, QuaternionSide::from(*quaternion_side)))
                    .collect::<Result<Vec<_>, _>>()?,
            };
            let items = realizations.iter().map(verify).collect::<Result<Vec<_>, _>>()?;
            Ok(Output::collect(items))
        }
        Command::Gilbert { n, trials, component } => {
            let items = n
                .values(cli.k)
                .into_iter()
                .map(|n| gilbert(n, *trials, cli.seed, *component))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Output::collect(items))
        }
        Command::Hardy { n, d, points, length, trials, suite } => {
            hardy(cli, *n, *d, *points, *length, *trials, *suite)
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Internal(e.to_string()))
}

fn read_realization(path: &Path) -> Result<CliffordRealization, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Unsupported(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Unsupported(format!("{}: {e}", path.display())))
}

fn verify(r: &CliffordRealization) -> Result<(bool, Value), CliError> {
    let relations = verify_relations(r)?;
    for c in &relations.components {
        for (i, j) in &c.violations {
            eprintln!("n = {}: component {} violates the relation for pair ({i}, {j})", r.n, c.tag.as_str());
        }
    }
    let volume = volume_element(r)?;
    let scalars: Vec<Value> = volume
        .iter()
        .map(|(tag, m)| {
            json!({
                "tag": tag.as_str(),
                "scalar": m.scalar_value().map(|s| format_rational(&s)),
            })
        })
        .collect();
    // a split spinor space must carry a central volume element acting as opposite scalars
    let split = r.semisimple_pair();
    let opposite = volume.len() == 2
        && matches!(
            (volume[0].1.scalar_value(), volume[1].1.scalar_value()),
            (Some(a), Some(b)) if a == -b.clone() && a != b
        );
    let dichotomy_ok = split == (r.n % 4 == 3) && if split { opposite } else { !volume_is_scalar(&volume) };
    let accounting = dimension_accounting(r);
    let pass = relations.pass && accounting.ok && dichotomy_ok;
    Ok((
        pass,
        json!({
            "n": r.n,
            "spinor_dim": r.spinor_dim,
            "semisimple_pair": split,
            "conventions": to_value(&r.conventions)?,
            "relations": to_value(&relations)?,
            "volume_element": scalars,
            "dichotomy_ok": dichotomy_ok,
            "dimension_accounting": to_value(&accounting)?,
        }),
    ))
}

fn gilbert(n: usize, trials: usize, seed: u64, choice: ComponentChoice) -> Result<(bool, Value), CliError> {
    if matches!(n % 8, 6 | 7) && n >= 3 {
        let obstruction = dim_obstruction(n)?;
        let evidence = spinning_evidence(n, trials, seed)?;
        let pass = obstruction.obstructed && evidence.consistent_with_obstruction;
        return Ok((
            pass,
            json!({
                "n": n,
                "verdict": false,
                "obstruction": to_value(&obstruction)?,
                "evidence": to_value(&evidence)?,
            }),
        ));
    }
    let r = CliffordRealization::build(n)?;
    let witnesses = standard_witness_for(&r)?;
    let selected: Vec<_> = witnesses
        .iter()
        .filter(|w| match choice {
            ComponentChoice::All => true,
            ComponentChoice::Plus => matches!(w.component_tag, ComponentTag::Single | ComponentTag::Plus),
            ComponentChoice::Minus => matches!(w.component_tag, ComponentTag::Single | ComponentTag::Minus),
        })
        .collect();
    let reports = selected
        .iter()
        .map(|w| check_gilbert(&r, w))
        .collect::<Result<Vec<_>, _>>()?;
    let pass = reports.iter().all(|c| c.verdict);
    let body = if reports.len() == 1 {
        to_value(&reports[0])?
    } else {
        json!({ "n": n, "verdict": pass, "components": to_value(&reports)? })
    };
    Ok((pass, body))
}

fn hardy(
    cli: &Cli,
    n: Option<usize>,
    d: Option<usize>,
    points: usize,
    length: f64,
    trials: usize,
    suite: Option<Suite>,
) -> Result<Output, CliError> {
    let n = n.or(d.map(|d| d + 1)).unwrap_or(2);
    let n = cli.k.map_or(n, |k| 8 * k + n % 8);
    if let Some(d) = d {
        if d + 1 != n {
            return Err(CliError::Unsupported(format!("--d {d} must equal n - 1 = {}", n.saturating_sub(1))));
        }
    }
    let suites = match suite {
        Some(s) => vec![s],
        None => vec![Suite::Idempotency, Suite::Involution, Suite::Rbc, Suite::Crb],
    };
    let mut reports: Vec<NumericReport> = Vec::new();
    let mut details = serde_json::Map::new();
    for s in suites {
        if s == Suite::Schwartz {
            let (detail, report) = suite_schwartz(n)?;
            details.insert("schwartz".into(), to_value(&detail)?);
            reports.push(report);
            continue;
        }
        let cfg = SuiteConfig::new(n, points, length, trials, cli.seed)?;
        match s {
            Suite::Idempotency => reports.push(suite_idempotency(&cfg)?),
            Suite::Involution => reports.push(suite_involution(&cfg)?),
            Suite::Rbc => reports.push(suite_rbc(&cfg)?),
            Suite::Crb => reports.push(suite_crb(&cfg)?),
            Suite::Dirac => {
                let (detail, checks) = suite_dirac(&cfg)?;
                details.insert("dirac".into(), to_value(&detail)?);
                reports.extend(checks);
            }
            Suite::Kernels => {
                if cfg.grid.size() > MAX_KERNEL_POINTS {
                    return Err(CliError::Unsupported(format!(
                        "kernels suite sums directly over the grid; N^d = {} exceeds {MAX_KERNEL_POINTS}",
                        cfg.grid.size()
                    )));
                }
                reports.push(suite_kernels(&cfg)?);
            }
            Suite::Schwartz => unreachable!("handled above"),
        }
    }
    let pass = reports.iter().all(|r| r.pass);
    let mut body = serde_json::Map::new();
    body.insert("n".into(), n.into());
    body.insert("trials".into(), trials.into());
    body.insert("reports".into(), to_value(&reports)?);
    body.extend(details);
    Ok(Output {
        pass,
        body: Value::Object(body),
        rows: Some(reports),
    })
}
