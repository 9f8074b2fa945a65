//! `blanchfield` — exact Blanchfield pairings from Seifert data.
//!
//! Verbs: validate | delta | form | pair | transform | boundary.
//! Exit codes: 0 success, 1 validation error, 2 mathematical domain error
//! (non-torsion vector, singular matrix where an inverse is required,
//! symmetrization failure).

mod schema;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use blanchfield::laurent::LaurentPoly;
use blanchfield::moves;
use blanchfield::pairing::{torsion_order, TorsionData};
use blanchfield::ratfunc::QmodLs;
use blanchfield::seifert::CMatrix;
use blanchfield::text;
use blanchfield::Error as CoreError;

use schema::{FileError, LinkFile, TransformMeta};

#[derive(Parser)]
#[command(
    name = "blanchfield",
    about = "Exact Blanchfield pairings of colored links from generalized Seifert matrices",
    version
)]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SignArg {
    /// The pairing λ_H
    Lambda,
    /// The Blanchfield convention -λ_H
    Bl,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OpArg {
    Mirror,
    Reverse,
    Stab0,
    Stab2,
    Sum,
    ConnectedSum,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a link file: schema, sign-key set, sizes, hermitian assembly
    Validate { path: PathBuf },
    /// Rank over Q, free rank, and the symmetrized torsion order delta
    Delta { path: PathBuf },
    /// The full matrix of pairing values (requires det H != 0)
    Form {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = SignArg::Bl)]
        sign: SignArg,
    },
    /// Pairing value on two Lambda_S vectors (comma-separated polynomials)
    Pair {
        path: PathBuf,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
        #[arg(long, value_enum, default_value_t = SignArg::Lambda)]
        sign: SignArg,
    },
    /// Apply a transform and write the result as a raw-H link file
    Transform {
        path: PathBuf,
        #[arg(long, value_enum)]
        op: OpArg,
        /// Second input file (sum, connected-sum)
        #[arg(long)]
        with: Option<PathBuf>,
        /// Column vector xi for stab2 (comma-separated polynomials)
        #[arg(long)]
        xi: Option<String>,
        /// Hermitian scalar lambda for stab2
        #[arg(long)]
        lam: Option<String>,
        /// Lambda_S unit alpha for stab2
        #[arg(long)]
        alpha: Option<String>,
        /// Output path (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Boundary-link computation: H, delta, and the closed-form cross-check
    Boundary {
        path: PathBuf,
        #[arg(long)]
        v: Option<String>,
        #[arg(long)]
        w: Option<String>,
    },
}

enum CliError {
    Validation(String),
    Domain(String),
}

impl From<FileError> for CliError {
    fn from(e: FileError) -> Self {
        match e {
            FileError::Math(ref core) => match core {
                CoreError::NonTorsion { .. }
                | CoreError::SingularMatrix { .. }
                | CoreError::SymmetrizationFailed { .. } => CliError::Domain(e.to_string()),
                _ => CliError::Validation(e.to_string()),
            },
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::from(FileError::Math(e))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(1)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.cmd {
        Cmd::Validate { path } => cmd_validate(path, cli.json),
        Cmd::Delta { path } => cmd_delta(path, cli.json),
        Cmd::Form { path, sign } => cmd_form(path, *sign, cli.json),
        Cmd::Pair { path, v, w, sign } => cmd_pair(path, v, w, *sign, cli.json),
        Cmd::Transform {
            path,
            op,
            with,
            xi,
            lam,
            alpha,
            out,
        } => cmd_transform(path, *op, with.as_deref(), xi, lam, alpha, out.as_deref()),
        Cmd::Boundary { path, v, w } => cmd_boundary(path, v.as_deref(), w.as_deref(), cli.json),
    }
}

/// Unit-factored rendering `unit*(core)` of a nonzero Laurent polynomial.
fn factored(p: &LaurentPoly) -> String {
    match p.strip_units() {
        Ok((core, unit)) => {
            if unit.is_one() {
                core.to_string()
            } else if core.is_one() {
                unit.to_string()
            } else {
                format!("{}*({})", unit, core)
            }
        }
        Err(_) => "0".to_string(),
    }
}

fn load(path: &std::path::Path) -> Result<LinkFile, CliError> {
    Ok(LinkFile::load(path)?)
}

fn label_of(file: &LinkFile) -> String {
    file.label.clone().unwrap_or_else(|| "(unlabeled)".to_string())
}

fn cmd_validate(path: &std::path::Path, json: bool) -> Result<(), CliError> {
    let file = load(path)?;
    let h = file.to_c_matrix()?;
    if json {
        println!(
            "{}",
            json!({
                "valid": true,
                "label": file.label,
                "mode": file.mode_name(),
                "mu": h.mu(),
                "n": h.n(),
            })
        );
    } else {
        println!(
            "OK: {} ({} mode, mu = {}, n = {}) assembles to a hermitian H over Lambda_S",
            label_of(&file),
            file.mode_name(),
            h.mu(),
            h.n()
        );
    }
    Ok(())
}

fn torsion_of(file: &LinkFile) -> Result<(CMatrix, TorsionData), CliError> {
    let h = file.to_c_matrix()?;
    let td = torsion_order(&h)?;
    Ok((h, td))
}

fn cmd_delta(path: &std::path::Path, json: bool) -> Result<(), CliError> {
    let file = load(path)?;
    let (h, td) = torsion_of(&file)?;
    if json {
        let (core, unit) = td
            .delta()
            .strip_units()
            .map(|(c, u)| (c.to_string(), u.to_string()))
            .unwrap_or_else(|_| ("0".into(), "1".into()));
        println!(
            "{}",
            json!({
                "label": file.label,
                "mode": file.mode_name(),
                "mu": h.mu(),
                "n": h.n(),
                "rho": td.rho(),
                "free_rank": td.free_rank(),
                "delta": td.delta().to_string(),
                "delta_unit": unit,
                "delta_core": core,
            })
        );
    } else {
        println!("label: {}", label_of(&file));
        println!("mode: {}, mu = {}, n = {}", file.mode_name(), h.mu(), h.n());
        println!("rho = {}", td.rho());
        println!("free rank = {}", td.free_rank());
        println!("delta = {}", factored(td.delta()));
    }
    Ok(())
}

fn sign_name(sign: SignArg) -> &'static str {
    match sign {
        SignArg::Lambda => "lambda",
        SignArg::Bl => "bl",
    }
}

fn cmd_form(path: &std::path::Path, sign: SignArg, json: bool) -> Result<(), CliError> {
    let file = load(path)?;
    let (h, td) = torsion_of(&file)?;
    let form = td.blanchfield_matrix().map_err(|e| match e {
        CoreError::SingularMatrix { rank, size } => CliError::Domain(format!(
            "H is singular (rank {} of {}): the module has a free part; use `blanchfield pair` with explicit torsion vectors",
            rank, size
        )),
        other => CliError::from(other),
    })?;
    let values = form.full_values().expect("full matrix mode");
    let n = h.n();
    let render = |q: &QmodLs| -> QmodLs {
        match sign {
            SignArg::Bl => q.clone(),
            SignArg::Lambda => q.neg(),
        }
    };
    if json {
        let entries: Vec<Vec<String>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| render(&values[i][j]).canonical().to_string())
                    .collect()
            })
            .collect();
        println!(
            "{}",
            json!({
                "label": file.label,
                "sign": sign_name(sign),
                "mu": h.mu(),
                "n": n,
                "delta": td.delta().to_string(),
                "entries": entries,
            })
        );
    } else {
        let convention = match sign {
            SignArg::Bl => "Bl = -lambda_H",
            SignArg::Lambda => "lambda_H",
        };
        println!(
            "Blanchfield matrix of {} ({}), entries are classes mod Lambda_S",
            label_of(&file),
            convention
        );
        println!("mu = {}, n = {}, delta = {}", h.mu(), n, factored(td.delta()));
        for i in 0..n {
            for j in 0..n {
                println!("({},{}) = [{}]", i + 1, j + 1, render(&values[i][j]).canonical());
            }
        }
    }
    Ok(())
}

fn cmd_pair(path: &std::path::Path, v: &str, w: &str, sign: SignArg, json: bool) -> Result<(), CliError> {
    let file = load(path)?;
    let (h, td) = torsion_of(&file)?;
    let v = schema::parse_lambda_vector(v, h.mu(), h.n())?;
    let w = schema::parse_lambda_vector(w, h.mu(), h.n())?;
    let value = match sign {
        SignArg::Lambda => td.pair(&v, &w)?,
        SignArg::Bl => td.pair_bl(&v, &w)?,
    };
    if json {
        println!(
            "{}",
            json!({
                "label": file.label,
                "sign": sign_name(sign),
                "value": value.canonical().to_string(),
                "zero_class": value.is_zero_class(),
            })
        );
    } else {
        let name = match sign {
            SignArg::Lambda => "lambda_H(v, w)",
            SignArg::Bl => "Bl(v, w) = -lambda_H(v, w)",
        };
        println!("{} = [{}] mod Lambda_S", name, value.canonical());
    }
    Ok(())
}

fn cmd_transform(
    path: &std::path::Path,
    op: OpArg,
    with: Option<&std::path::Path>,
    xi: &Option<String>,
    lam: &Option<String>,
    alpha: &Option<String>,
    out: Option<&std::path::Path>,
) -> Result<(), CliError> {
    let file = load(path)?;
    let h = file.to_c_matrix()?;
    let base_label = file.label.clone().unwrap_or_else(|| "input".to_string());

    let second = |with: Option<&std::path::Path>| -> Result<CMatrix, CliError> {
        let p = with.ok_or_else(|| {
            CliError::Validation("this operation needs a second input (--with <file>)".into())
        })?;
        Ok(LinkFile::load(p)?.to_c_matrix()?)
    };

    let (result, meta) = match op {
        OpArg::Mirror => (
            moves::mirror(&h),
            TransformMeta {
                op: "mirror".into(),
                isometry_map: None,
                isometry_direction: Some("x -> -x negates pairing values".into()),
            },
        ),
        OpArg::Reverse => (
            moves::reverse(&h),
            TransformMeta {
                op: "reverse".into(),
                isometry_map: None,
                isometry_direction: Some("values transport through conjugation".into()),
            },
        ),
        OpArg::Stab0 => {
            let (target, iso) = moves::stabilize0(&h);
            (
                target,
                TransformMeta {
                    op: "stab0".into(),
                    isometry_map: Some(schema::matrix_to_strings(&iso.map)),
                    isometry_direction: Some("columns act on input classes; image lives here".into()),
                },
            )
        }
        OpArg::Stab2 => {
            let mu = h.mu();
            let n = h.n();
            let xi_vec = match xi {
                Some(s) => schema::parse_lambda_vector(s, mu, n)?,
                None => (0..n).map(|_| blanchfield::RatFunc::zero(mu)).collect(),
            };
            let lam_val = match lam {
                Some(s) => text::parse_ratfunc(s, mu)?,
                None => blanchfield::RatFunc::zero(mu),
            };
            let alpha_unit = match alpha {
                Some(s) => text::parse_ratfunc(s, mu)?
                    .as_ls_unit()
                    .ok_or_else(|| CliError::Validation(format!("alpha {:?} is not a unit of Lambda_S", s)))?,
                None => blanchfield::LsUnit::one(mu),
            };
            let (target, iso) = moves::stabilize2(&h, &xi_vec, &lam_val, &alpha_unit)?;
            (
                target,
                TransformMeta {
                    op: "stab2".into(),
                    isometry_map: Some(schema::matrix_to_strings(&iso.map)),
                    isometry_direction: Some("columns act on input classes; image lives here".into()),
                },
            )
        }
        OpArg::Sum => {
            let h2 = second(with)?;
            (
                moves::block_sum(&[&h, &h2])?,
                TransformMeta {
                    op: "sum".into(),
                    isometry_map: None,
                    isometry_direction: None,
                },
            )
        }
        OpArg::ConnectedSum => {
            let h2 = second(with)?;
            (
                moves::connected_sum(&h, &h2, 1)?,
                TransformMeta {
                    op: "connected-sum".into(),
                    isometry_map: None,
                    isometry_direction: None,
                },
            )
        }
    };

    let label = format!("{}:{}", base_label, meta.op);
    let out_file = LinkFile::from_c_matrix(&result, Some(label), Some(meta));
    match out {
        Some(p) => {
            out_file.save(p)?;
            eprintln!("wrote {}", p.display());
        }
        None => print!("{}", out_file.to_json_string()?),
    }
    Ok(())
}

fn cmd_boundary(
    path: &std::path::Path,
    v: Option<&str>,
    w: Option<&str>,
    json: bool,
) -> Result<(), CliError> {
    let file = load(path)?;
    let b = file.to_boundary()?;
    let h = b.boundary_matrix()?;
    let td = torsion_order(&h)?;
    let mu = h.mu();
    let n = h.n();
    let closed_form_available = b.torsion_presentation().rank_q() == n;

    let mut pair_report = None;
    if let (Some(vs), Some(ws)) = (v, w) {
        let v = schema::parse_lambda_vector(vs, mu, n)?;
        let w = schema::parse_lambda_vector(ws, mu, n)?;
        let general = td.pair_bl(&v, &w)?;
        let closed = if closed_form_available {
            let u_inv = b.u_unit().inv().expect("u is a unit");
            let scale =
                |x: &[blanchfield::RatFunc]| -> Vec<blanchfield::RatFunc> { x.iter().map(|e| e * &u_inv).collect() };
            Some(b.pairing_value(&scale(&v), &scale(&w))?)
        } else {
            None
        };
        pair_report = Some((general, closed));
    }

    if json {
        let (value, closed, verdict) = match &pair_report {
            Some((general, Some(closed))) => (
                Some(general.canonical().to_string()),
                Some(closed.canonical().to_string()),
                Some(if general == closed { "MATCH" } else { "MISMATCH" }),
            ),
            Some((general, None)) => (Some(general.canonical().to_string()), None, None),
            None => (None, None, None),
        };
        println!(
            "{}",
            json!({
                "label": file.label,
                "mu": mu,
                "n": n,
                "h": schema::matrix_to_strings(h.entries()),
                "rho": td.rho(),
                "free_rank": td.free_rank(),
                "delta": td.delta().to_string(),
                "closed_form_available": closed_form_available,
                "general_value": value,
                "closed_value": closed,
                "verdict": verdict,
            })
        );
    } else {
        println!("label: {}", label_of(&file));
        println!("boundary link with {} components, 2g = {}", b.n_components(), n);
        println!("H = u*conj(u)*(I - tau)^-1*(A - tau*A^T):");
        for i in 0..n {
            for j in 0..n {
                println!("  ({},{}) = {}", i + 1, j + 1, h.get(i, j));
            }
        }
        println!("rho = {}, free rank = {}", td.rho(), td.free_rank());
        println!("delta = {}", factored(td.delta()));
        if !closed_form_available {
            println!("note: A - tau*A^T is singular; closed form unavailable, general path only");
        }
        if let Some((general, closed)) = pair_report {
            println!("general path  Bl(v, w) = [{}]", general.canonical());
            match closed {
                Some(c) => {
                    println!("closed form   (u^-1 v, u^-1 w) -> [{}]", c.canonical());
                    println!(
                        "verdict: {}",
                        if general == c { "MATCH" } else { "MISMATCH" }
                    );
                }
                None => println!("closed form   unavailable (singular A - tau*A^T)"),
            }
        }
    }
    Ok(())
}
