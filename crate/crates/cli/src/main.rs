use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use oti_core::models::{costandard_model, model_phi, support_table, unique_small_block_check};
use oti_core::nilmod::{graded_decompose, jordan_type, phi, stable_form, ModuleFile};
use oti_core::stable::{is_singular, phi_tilting_complex, to_graded_super, StableObject, TiltingComplex};
use oti_core::ver::{fuse, VerObject, VerParams};
use oti_core::verify::{run_suite, Suite, SuiteOptions};
use oti_core::weyl::{
    alcove_position, ext_block_witness, fundamental_representative, is_p_regular, length,
    sign_epsilon, AlcovePosition, RootDatum, Weight,
};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] oti_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser)]
#[command(name = "oti", version, about = "Exact OTI functor computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Print tables as CSV
    #[arg(long, global = true)]
    csv: bool,
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Fusion product L_a ⊗ L_b in Ver_p
    Fuse {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// Jordan type of the operator in a module file
    Jordan {
        file: PathBuf,
    },
    /// Φ of a module file: a Ver_p object, or the stable form with --graded
    Phi {
        file: PathBuf,
        /// Print the stable form of a graded module
        #[arg(long)]
        graded: bool,
        /// Print the graded super vector space of a graded module
        #[arg(long = "super")]
        graded_super: bool,
    },
    /// Alcove data for a weight: position, reduction to A_0, length, block
    Alcove {
        #[arg(long = "type", default_value = "A1")]
        cartan: String,
        #[arg(long)]
        p: u64,
        /// Fundamental-weight coordinates, e.g. 4 or 2,1
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Φ of the explicit costandard model ∇_λ
    NablaPhi {
        #[arg(long = "type", default_value = "A1")]
        cartan: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        weight: String,
        /// Also write the model as a module file
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Supports of Φ^st(∇_n) for SL_2 over the extended principal block
    Figure1 {
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 16)]
        max: usize,
    },
    /// Φ^st of a module given by a minimal tilting complex
    TiltingComplexPhi {
        file: PathBuf,
        #[arg(long = "type", default_value = "A1")]
        cartan: String,
        /// JSON map from weight to stable object; defaults to the costandard models of A_0
        #[arg(long)]
        seeds: Option<PathBuf>,
    },
    /// Whether Φ vanishes on a module file or on ∇_λ
    Singular {
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long = "type", default_value = "A1")]
        cartan: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        weight: Option<String>,
    },
    /// Run a named verification suite
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long = "type")]
        cartan: Option<String>,
        /// Largest coordinate sum of highest weights
        #[arg(long)]
        max: Option<i64>,
        /// Largest model dimension (rank two and up)
        #[arg(long)]
        max_dim: Option<u128>,
    },
}

struct Output {
    text: String,
    success: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, success: true }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let raw = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    serde_json::from_str(&raw).map_err(|source| CliError::Json { path: path.into(), source })
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serialisable")
}

fn parse_weight(rd: &RootDatum, s: &str) -> CliResult<Weight> {
    let w: Weight = s.parse()?;
    if w.coords().len() != rd.rank() {
        return Err(oti_core::Error::Input(format!(
            "weight {s:?} needs {} coordinates for {}",
            rd.rank(),
            rd.cartan_type()
        ))
        .into());
    }
    Ok(w)
}

fn root_datum(cartan: &str, p: u64) -> CliResult<RootDatum> {
    let rd = RootDatum::parse(cartan)?;
    rd.check_p_above_coxeter(p)?;
    Ok(rd)
}

fn run(cli: &Cli) -> CliResult<Output> {
    let json = cli.json;
    match &cli.command {
        Command::Fuse { p, a, b } => {
            let params = VerParams::new(*p)?;
            let x = fuse(&VerObject::simple(params, *a)?, &VerObject::simple(params, *b)?)?;
            Ok(Output::ok(if json { pretty(&x) } else { x.to_string() }))
        }
        Command::Jordan { file } => {
            let m = read_json::<ModuleFile>(file)?.to_nil_matrix()?;
            let jt = jordan_type(&m);
            Ok(Output::ok(if json { pretty(&json!({ "partition": jt.partition })) } else { jt.to_string() }))
        }
        Command::Phi { file, graded, graded_super } => {
            let mf: ModuleFile = read_json(file)?;
            if !graded && !graded_super {
                let v = phi(&mf.to_nil_matrix()?);
                return Ok(Output::ok(if json { pretty(&v) } else { v.to_string() }));
            }
            let st = stable_form(&graded_decompose(&mf.to_graded()?));
            if *graded_super {
                let g = to_graded_super(&st)?;
                return Ok(Output::ok(if json { pretty(&g) } else { g.to_string() }));
            }
            Ok(Output::ok(if json { pretty(&st) } else { st.to_string() }))
        }
        Command::Alcove { cartan, p, weight } => alcove(cartan, *p, weight, json),
        Command::NablaPhi { cartan, p, weight, export } => {
            let rd = root_datum(cartan, *p)?;
            let lambda = parse_weight(&rd, weight)?;
            let m = costandard_model(&rd, &lambda, *p)?;
            if let Some(path) = export {
                write_file(path, &pretty(&ModuleFile::from_graded(&m)))?;
            }
            let r = model_phi(&m);
            let decomp = graded_decompose(&m);
            let jt = jordan_type(&m.ungraded());
            if json {
                return Ok(Output::ok(pretty(&json!({
                    "weight": lambda.to_string(),
                    "dim": m.dim(),
                    "jordan_type": jt.partition,
                    "blocks": decomp.blocks(),
                    "phi": r.ver,
                    "stable": r.stable,
                    "graded_super": r.graded_super,
                    "unique_small_block": unique_small_block_check(&m),
                }))));
            }
            let sup = r.graded_super.map_or("n/a".to_string(), |g| g.to_string());
            Ok(Output::ok(format!(
                "weight: {lambda}\ndim: {}\njordan type: {jt}\ndecomposition: {decomp}\nphi: {}\nstable: {}\ngraded super: {sup}",
                m.dim(),
                r.ver,
                r.stable
            )))
        }
        Command::Figure1 { p, max } => figure1(*p, *max, json, cli.csv),
        Command::TiltingComplexPhi { file, cartan, seeds } => {
            let complex: TiltingComplex = read_json(file)?;
            let rd = root_datum(cartan, complex.p)?;
            let seeds = match seeds {
                Some(path) => read_json::<BTreeMap<String, StableObject>>(path)?
                    .into_iter()
                    .map(|(k, v)| Ok((parse_weight(&rd, &k)?, v)))
                    .collect::<CliResult<BTreeMap<_, _>>>()?,
                None => default_seeds(&rd, &complex)?,
            };
            let st = phi_tilting_complex(&rd, &seeds, &complex)?;
            Ok(Output::ok(if json { pretty(&st) } else { st.to_string() }))
        }
        Command::Singular { module, cartan, p, weight } => {
            let ver = match (module, p, weight) {
                (Some(file), None, None) => phi(&read_json::<ModuleFile>(file)?.to_nil_matrix()?),
                (None, Some(p), Some(w)) => {
                    let rd = root_datum(cartan, *p)?;
                    phi(&costandard_model(&rd, &parse_weight(&rd, w)?, *p)?.ungraded())
                }
                _ => {
                    return Err(oti_core::Error::Input(
                        "give either --module <file> or --p and --weight".into(),
                    )
                    .into())
                }
            };
            let s = is_singular(&ver);
            Ok(Output::ok(if json {
                pretty(&json!({ "singular": s, "phi": ver }))
            } else if s {
                "singular".into()
            } else {
                format!("not singular (phi = {ver})")
            }))
        }
        Command::Verify { suite, p, cartan, max, max_dim } => {
            let suite: Suite = suite.parse()?;
            let opts = SuiteOptions { p: *p, cartan: cartan.clone(), max: *max, max_dim: *max_dim };
            let report = run_suite(suite, &opts)?;
            let text = if json { pretty(&report) } else { report.to_string() };
            Ok(Output { text, success: report.all_passed() })
        }
    }
}

/// `Φ^st(T_λ)` for `λ ∈ A_0`, where `T_λ = ∇_λ`.
fn default_seeds(rd: &RootDatum, complex: &TiltingComplex) -> CliResult<BTreeMap<Weight, StableObject>> {
    let mut seeds = BTreeMap::new();
    for term in &complex.terms {
        for lambda in term.mults.keys() {
            if alcove_position(rd, lambda, complex.p)? != AlcovePosition::Interior {
                continue;
            }
            let m = costandard_model(rd, lambda, complex.p)?;
            seeds.insert(lambda.clone(), stable_form(&graded_decompose(&m)));
        }
    }
    Ok(seeds)
}

fn alcove(cartan: &str, p: u64, weight: &str, json: bool) -> CliResult<Output> {
    let rd = root_datum(cartan, p)?;
    let lambda = parse_weight(&rd, weight)?;
    let position = alcove_position(&rd, &lambda, p)?;
    let rep = fundamental_representative(&rd, &lambda, p)?;
    let x = rep.element(&rd);
    let path: Vec<String> = rep
        .path
        .iter()
        .map(|r| {
            let coeffs = &rd.positive_roots()[r.root].simple_coeffs;
            let c: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
            format!("s[({}),{}]", c.join(","), r.level)
        })
        .collect();
    let regular = is_p_regular(&rd, &lambda, p)?;
    let eps = ext_block_witness(&rd, &lambda, p)?.map(|y| sign_epsilon(&y));
    if json {
        return Ok(Output::ok(pretty(&json!({
            "weight": lambda.to_string(),
            "position": position.to_string(),
            "representative": rep.representative.to_string(),
            "path": path,
            "length": length(&rd, &x),
            "p_regular": regular,
            "extended_principal_block": eps.is_some(),
            "epsilon": eps,
        }))));
    }
    let block = match eps {
        Some(e) => format!("yes (eps = {e})"),
        None => "no".into(),
    };
    Ok(Output::ok(format!(
        "weight: {lambda}\nposition: {position}\nrepresentative: {}\npath: {}\nlength: {}\np-regular: {regular}\nextended principal block: {block}",
        rep.representative,
        if path.is_empty() { "-".to_string() } else { path.join(" ") },
        length(&rd, &x),
    )))
}

fn figure1(p: u64, max: usize, json: bool, csv: bool) -> CliResult<Output> {
    let rows = support_table(p, max)?;
    if json {
        return Ok(Output::ok(pretty(&json!({ "p": p, "rows": rows }))));
    }
    let lo = rows.iter().flat_map(|r| r.support.first()).copied().min().unwrap_or(0);
    let hi = rows.iter().flat_map(|r| r.support.last()).copied().max().unwrap_or(0);
    let mut lines = Vec::new();
    if csv {
        lines.push(std::iter::once("n".to_string()).chain((lo..=hi).map(|k| k.to_string())).collect::<Vec<_>>().join(","));
        for r in &rows {
            let cells = (lo..=hi).map(|k| if r.support.contains(&k) { "1" } else { "0" });
            lines.push(std::iter::once(r.n.to_string()).chain(cells.map(String::from)).collect::<Vec<_>>().join(","));
        }
    } else {
        let width = hi.to_string().len().max(lo.to_string().len()) + 1;
        let label = rows.iter().map(|r| format!("∇_{}", r.n).chars().count()).max().unwrap_or(3);
        let header: String = (lo..=hi).map(|k| format!("{k:>width$}")).collect();
        lines.push(format!("{:label$}{header}", ""));
        for r in rows.iter().rev() {
            let cells: String = (lo..=hi)
                .map(|k| format!("{:>width$}", if r.support.contains(&k) { "•" } else { "." }))
                .collect();
            let name = format!("∇_{}", r.n);
            let pad = label - name.chars().count();
            lines.push(format!("{name}{}{cells}", " ".repeat(pad)));
        }
    }
    Ok(Output::ok(lines.join("\n")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => write_file(path, &format!("{}\n", out.text)),
                None => {
                    println!("{}", out.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
