use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use lca_core::derivspaces::{inner_quotient_dimension, solve_space, EquationKind};
use lca_core::dsl::{parse, SourceFile};
use lca_core::triplehom::{is_kind, split_decompose, MapKind};
use lca_core::ConformalAlgebra;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::json;
use crate::ledger::{self, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_FLAGS: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_BOUNDS: (usize, usize) = (3, 3);
pub const DEG_ENV: &str = "LCA_DEG_DEFAULT";

#[derive(Parser, Debug)]
#[command(
    name = "lca",
    version,
    about = "Exact computations with Lie conformal algebras"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Space {
    Cder,
    Ctder,
    Gctder,
    Tc,
    Tqc,
    Ztder,
}

impl Space {
    pub fn kind(self) -> EquationKind {
        match self {
            Space::Cder => EquationKind::CDer,
            Space::Ctder => EquationKind::CTDer,
            Space::Gctder => EquationKind::GCTDer,
            Space::Tc => EquationKind::TC,
            Space::Tqc => EquationKind::TQC,
            Space::Ztder => EquationKind::ZTDer,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check skew-symmetry and the Jacobi identity.
    CheckAxioms {
        file: PathBuf,
        /// Algebra to check; all conformal algebras in the file by default.
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Solve for a bounded space of derivations or centroid-type maps.
    Solve {
        file: PathBuf,
        #[arg(long)]
        algebra: String,
        #[arg(long, value_enum)]
        space: Space,
        /// Bound on the degree in D (default from LCA_DEG_DEFAULT or 3).
        #[arg(long)]
        deg_d: Option<usize>,
        /// Bound on the degree in x (default from LCA_DEG_DEFAULT or 3).
        #[arg(long)]
        deg_x: Option<usize>,
    },
    /// Classify a module map and optionally split it.
    TripleHom {
        file: PathBuf,
        #[arg(long)]
        map: String,
        #[arg(long)]
        decompose: bool,
    },
    /// Run the verification ledger on every algebra and map in the file.
    Report { file: PathBuf },
}

/// Exit code, machine output for stdout and human messages for stderr.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub value: Value,
    pub messages: Vec<String>,
}

impl Outcome {
    fn new(code: i32, value: Value) -> Self {
        Outcome {
            code,
            value,
            messages: Vec::new(),
        }
    }

    fn flag_error(msg: impl Into<String>) -> Self {
        let msg = msg.into();
        Outcome {
            code: EXIT_FLAGS,
            value: json::error("FLAG_ERROR", &msg),
            messages: vec![msg],
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.value).expect("serializable") + "\n",
            Format::Text => json::to_text(&self.value),
        }
    }
}

/// `N` or `N,M` from the environment, otherwise `(3, 3)`.
pub fn default_bounds(env: Option<&str>) -> Result<(usize, usize), String> {
    let Some(s) = env else {
        return Ok(DEFAULT_BOUNDS);
    };
    let parts: Vec<_> = s.split(',').map(str::trim).collect();
    let num = |t: &str| {
        t.parse::<usize>()
            .map_err(|_| format!("{DEG_ENV}: `{s}` is not `N` or `N,M`"))
    };
    match parts.as_slice() {
        [n] => Ok((num(n)?, num(n)?)),
        [d, x] => Ok((num(d)?, num(x)?)),
        _ => Err(format!("{DEG_ENV}: `{s}` is not `N` or `N,M`")),
    }
}

struct Loaded {
    file: SourceFile,
    digest: String,
}

fn load(path: &Path) -> Result<Loaded, Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::flag_error(format!("cannot read {}: {e}", path.display())))?;
    let digest = format!("{:x}", Sha256::digest(text.as_bytes()));
    match parse(&text) {
        Ok(file) => Ok(Loaded { file, digest }),
        Err(diags) => Err(Outcome {
            code: EXIT_PARSE,
            value: json!({
                "error": {
                    "code": "PARSE_ERROR",
                    "diagnostics": diags.iter().map(json::diagnostic).collect::<Vec<_>>(),
                }
            }),
            messages: diags
                .iter()
                .map(|d| format!("{}:{d}", path.display()))
                .collect(),
        }),
    }
}

fn algebra<'f>(file: &'f SourceFile, name: &str) -> Result<&'f ConformalAlgebra, Outcome> {
    file.conf_algebra(name)
        .ok_or_else(|| Outcome::flag_error(format!("no conformal algebra named `{name}`")))
}

pub fn run(cli: &Cli) -> Outcome {
    let env = std::env::var(DEG_ENV).ok();
    run_with_env(cli, env.as_deref())
}

pub fn run_with_env(cli: &Cli, deg_env: Option<&str>) -> Outcome {
    let result = match &cli.command {
        Command::CheckAxioms { file, algebra } => check_axioms(file, algebra.as_deref()),
        Command::Solve {
            file,
            algebra,
            space,
            deg_d,
            deg_x,
        } => default_bounds(deg_env)
            .map_err(Outcome::flag_error)
            .and_then(|b| {
                solve(
                    file,
                    algebra,
                    space.kind(),
                    deg_d.unwrap_or(b.0),
                    deg_x.unwrap_or(b.1),
                )
            }),
        Command::TripleHom {
            file,
            map,
            decompose,
        } => triple_hom(file, map, *decompose),
        Command::Report { file } => report(file),
    };
    result.unwrap_or_else(|o| o)
}

fn check_axioms(path: &Path, only: Option<&str>) -> Result<Outcome, Outcome> {
    let loaded = load(path)?;
    let names: Vec<&str> = match only {
        Some(n) => {
            algebra(&loaded.file, n)?;
            vec![n]
        }
        None => loaded.file.conf_algebras().map(|(n, _)| n).collect(),
    };
    let mut all_ok = true;
    let mut results = serde_json::Map::new();
    for n in names {
        let alg = loaded.file.conf_algebra(n).expect("checked");
        let skew = alg.check_skew();
        let jacobi = alg.check_jacobi();
        all_ok &= skew.is_ok() && jacobi.is_ok();
        results.insert(
            n.to_string(),
            json!({
                "rank": alg.rank(),
                "skew_symmetry": json::check(&skew, alg.names()),
                "jacobi": json::check(&jacobi, alg.names()),
            }),
        );
    }
    let code = if all_ok { EXIT_OK } else { EXIT_VERIFICATION };
    Ok(Outcome::new(
        code,
        json!({ "algebras": results, "ok": all_ok }),
    ))
}

fn solve(
    path: &Path,
    name: &str,
    kind: EquationKind,
    deg_d: usize,
    deg_x: usize,
) -> Result<Outcome, Outcome> {
    let loaded = load(path)?;
    let alg = algebra(&loaded.file, name)?;
    let space = solve_space(alg, kind, deg_d, deg_x);
    let mut v = json!({
        "algebra": name,
        "kind": kind.name(),
        "deg_d": deg_d,
        "deg_x": deg_x,
        "dimension": space.dimension(),
        "basis": space.basis.iter().map(json::conformal_map).collect::<Vec<_>>(),
        "inner_quotient_dimension": inner_quotient_dimension(alg, &space),
    });
    if kind == EquationKind::GCTDer {
        v["tau"] = json!(space
            .tau
            .iter()
            .map(json::conformal_map)
            .collect::<Vec<_>>());
    }
    Ok(Outcome::new(EXIT_OK, v))
}

fn triple_hom(path: &Path, name: &str, decompose: bool) -> Result<Outcome, Outcome> {
    let loaded = load(path)?;
    let file = &loaded.file;
    let (s, t, f) = file
        .modmap(name)
        .ok_or_else(|| Outcome::flag_error(format!("no modmap named `{name}`")))?;
    let (a, b) = (algebra(file, s)?, algebra(file, t)?);
    let kinds: serde_json::Map<String, Value> = MapKind::ALL
        .iter()
        .map(|&k| (k.name().to_string(), json!(is_kind(a, b, f, k))))
        .collect();
    let mut v = json!({ "map": name, "source": s, "target": t, "kinds": kinds });
    if !decompose {
        return Ok(Outcome::new(EXIT_OK, v));
    }
    match split_decompose(a, b, f) {
        Ok(d) => {
            v["decomposition"] = json!({
                "label": d.label.name(),
                "delta": json::module_map(&d.delta),
                "f_I": json::module_map(&d.f_i),
                "f_J": json::module_map(&d.f_j),
                "E_plus": json::submodule(&d.e_plus, b.names()),
                "E_minus": json::submodule(&d.e_minus, b.names()),
                "checks": d.checks.iter().map(|(n, ok)| json!({ "check": n, "ok": ok })).collect::<Vec<_>>(),
            });
            v["label"] = json!(d.label.name());
            Ok(Outcome::new(EXIT_OK, v))
        }
        Err(e) => {
            let code = match e {
                lca_core::Error::SplitVerificationFailed(_) => EXIT_VERIFICATION,
                _ => EXIT_PRECONDITION,
            };
            v["error"] = json::core_error(&e)["error"].clone();
            let mut o = Outcome::new(code, v);
            o.messages.push(format!("{}: {e}", e.code()));
            Ok(o)
        }
    }
}

fn report(path: &Path) -> Result<Outcome, Outcome> {
    let loaded = load(path)?;
    let entries = ledger::run(&loaded.file);
    let count = |s: Status| entries.iter().filter(|e| e.status == s).count();
    let failed = count(Status::Fail);
    let algebras: serde_json::Map<String, Value> = loaded
        .file
        .conf_algebras()
        .map(|(n, alg)| {
            let kind = if ledger::is_virasoro(alg) {
                "virasoro"
            } else if ledger::is_small_simple_current(alg) {
                "current (center zero and perfect; simplicity assumed)"
            } else {
                "other"
            };
            (n.to_string(), json!({ "rank": alg.rank(), "class": kind }))
        })
        .collect();
    let v = json!({
        "schema_version": SCHEMA_VERSION,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "input": { "sha256": loaded.digest },
        "results": { "algebras": algebras },
        "ledger": entries.iter().map(ledger::Entry::to_json).collect::<Vec<_>>(),
        "summary": {
            "pass": count(Status::Pass),
            "fail": failed,
            "skip": count(Status::Skip),
        },
    });
    let code = if failed == 0 {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    };
    Ok(Outcome::new(code, v))
}
