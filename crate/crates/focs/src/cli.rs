//! Subcommands of the `focs` binary. Every command produces exactly one JSON
//! document and an exit code: 0 on success, 1 when a verification fails, 2 on
//! bad input or a mathematical error.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use focs_core::canonical::{fo_canonical, focs_basis, real_canonical, sign_characteristic};
use focs_core::generator::{generate_pair, random_recipe, GeneratorRecipe, DEFAULT_ENTRY_BOUND};
use focs_core::layout::BlockLayout;
use focs_core::spectral::{char_poly, eigenvalues, jordan_structure};
use focs_core::verify::{self, Check};
use focs_core::{corpus, BasisCertificate, Error, ExactMatrix, Scalar};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::json::{
    signs_json, AnalysisJson, CanonicalJson, CertificateJson, EigenvalueJson, ErrorJson, GeneratedJson, MatrixJson,
    PairJson, RecipeJson, SpecJson, WitnessJson,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "focs", version)]
/// Exact canonical Jordan bases for real H-selfadjoint matrices.
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the JSON document to this file instead of standard output
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Characteristic polynomial, eigenvalues, Jordan structure and sign characteristic
    Analyze {
        /// Pair file `{"A": <matrix>, "H": <matrix>}`
        pair: PathBuf,
    },
    /// Flipped orthogonal, i-conjugate symmetric basis N with its pair (J, P)
    Focs { pair: PathBuf },
    /// Real canonical basis R with its pair (J_R, P)
    Realform { pair: PathBuf },
    /// Flipped orthogonal basis T with its pair (J, P)
    Fo { pair: PathBuf },
    /// Check a basis against a pair
    Verify {
        pair: PathBuf,
        /// Basis file: a bare matrix object
        basis: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Pairing constant for conjugate symmetry (default 1, or i in focs mode)
        #[arg(long)]
        gamma: Option<String>,
    },
    /// Generate an H-selfadjoint pair with known canonical data
    Generate {
        /// Jordan structure file; a random structure is drawn when absent
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Entries of the transformation lie in -bound..=bound
        #[arg(long, default_value_t = DEFAULT_ENTRY_BOUND)]
        bound: u32,
        /// Largest dimension of a randomly drawn structure
        #[arg(long, default_value_t = 8)]
        max_dim: usize,
    },
    /// Check the built-in worked example
    Selftest,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Fo,
    Cs,
    Focs,
    Affiliation,
}

/// Errors surfaced to the user.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}:{column}: {message}")]
    Json { path: PathBuf, line: usize, column: usize, message: String },
    #[error(transparent)]
    Math(#[from] Error),
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "Io",
            CliError::Json { .. } => "MalformedJson",
            CliError::Math(e) => e.name(),
        }
    }

    pub fn to_json(&self) -> ErrorJson {
        let witness = match self {
            CliError::Math(Error::NotHermitian(w) | Error::NotSelfadjoint(w)) => Some(WitnessJson::from(w.as_ref())),
            _ => None,
        };
        ErrorJson { error: self.name(), message: self.to_string(), witness }
    }
}

pub struct Outcome {
    pub document: Value,
    pub exit: i32,
}

fn success<T: Serialize>(doc: &T) -> Outcome {
    Outcome { document: serde_json::to_value(doc).expect("documents serialize"), exit: EXIT_OK }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|e| CliError::Json {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn read_pair(path: &Path) -> Result<(ExactMatrix, ExactMatrix), CliError> {
    let pair: PairJson = read_json(path)?;
    Ok((pair.a.to_matrix()?, pair.h.to_matrix()?))
}

fn analyze(path: &Path) -> Result<Outcome, CliError> {
    let (a, h) = read_pair(path)?;
    let poly = char_poly(&a)?;
    let spectrum = eigenvalues(&poly)?;
    let spec = jordan_structure(&a)?;
    let signs = sign_characteristic(&a, &h)?;
    Ok(success(&AnalysisJson {
        char_poly: poly.to_string(),
        eigenvalues: spectrum.iter().map(EigenvalueJson::from).collect(),
        spec: (&spec).into(),
        signs: signs_json(&signs),
    }))
}

fn canonical(
    path: &Path,
    build: fn(&ExactMatrix, &ExactMatrix) -> focs_core::Result<focs_core::CanonicalPair>,
) -> Result<Outcome, CliError> {
    let (a, h) = read_pair(path)?;
    Ok(success(&CanonicalJson::from(&build(&a, &h)?)))
}

fn certificate_outcome(cert: &BasisCertificate) -> Outcome {
    Outcome {
        document: serde_json::to_value(CertificateJson::from(cert)).expect("documents serialize"),
        exit: if cert.all_passed() { EXIT_OK } else { EXIT_FAILED },
    }
}

/// Layout and signs of the canonical form of `(a, h)`.
fn reference(a: &ExactMatrix, h: &ExactMatrix) -> Result<(BlockLayout, Vec<i8>), CliError> {
    let spec = jordan_structure(a)?;
    let signs = sign_characteristic(a, h)?;
    Ok((BlockLayout::from_spec(&spec), signs.signs()))
}

fn fo_checks(
    cert: &mut BasisCertificate,
    a: &ExactMatrix,
    h: &ExactMatrix,
    t: &ExactMatrix,
    layout: &BlockLayout,
    signs: &[i8],
) -> Result<(), CliError> {
    let jordan = verify::is_jordan_basis(a, t, &layout.complex_jordan(), Check::Fo)?;
    if jordan.passed() {
        cert.record(verify::is_flipped_orthogonal(t, h, layout, signs)?);
    } else {
        cert.record(jordan);
    }
    cert.record(verify::is_sip_shaped(t, h, layout)?);
    Ok(())
}

fn cs_checks(
    cert: &mut BasisCertificate,
    a: &ExactMatrix,
    n: &ExactMatrix,
    layout: &BlockLayout,
    gamma: &Scalar,
) -> Result<(), CliError> {
    let jordan = verify::is_jordan_basis(a, n, &layout.complex_jordan(), Check::Cs)?;
    if jordan.passed() {
        cert.record(verify::is_gamma_cs(n, layout, gamma)?);
    } else {
        cert.record(jordan);
    }
    Ok(())
}

fn verify_basis(pair: &Path, basis: &Path, mode: Mode, gamma: Option<&str>) -> Result<Outcome, CliError> {
    let (a, h) = read_pair(pair)?;
    let basis: MatrixJson = read_json(basis)?;
    let t = basis.to_matrix()?;
    let gamma = match gamma {
        Some(text) => text.parse::<Scalar>()?,
        None if mode == Mode::Focs => Scalar::i(),
        None => Scalar::from_int(1),
    };

    let mut cert = BasisCertificate::default();
    let hermitian = verify::is_hermitian(&h)?;
    let hermitian_ok = hermitian.passed();
    cert.record(hermitian);
    if !hermitian_ok {
        return Ok(certificate_outcome(&cert));
    }
    let selfadjoint = verify::is_h_selfadjoint(&a, &h)?;
    let selfadjoint_ok = selfadjoint.passed();
    cert.record(selfadjoint);
    if !selfadjoint_ok {
        return Ok(certificate_outcome(&cert));
    }

    let (layout, signs) = reference(&a, &h)?;
    match mode {
        Mode::Fo => fo_checks(&mut cert, &a, &h, &t, &layout, &signs)?,
        Mode::Cs => cs_checks(&mut cert, &a, &t, &layout, &gamma)?,
        Mode::Focs => {
            fo_checks(&mut cert, &a, &h, &t, &layout, &signs)?;
            cs_checks(&mut cert, &a, &t, &layout, &gamma)?;
            cert.record_focs();
        }
        Mode::Affiliation => {
            let canonical = fo_canonical(&a, &h)?;
            cert.record(verify::check_affiliation(&a, &h, &canonical.j, &canonical.p, &t)?);
        }
    }
    Ok(certificate_outcome(&cert))
}

fn generate(spec: Option<&Path>, seed: u64, bound: u32, max_dim: usize) -> Result<Outcome, CliError> {
    let recipe = match spec {
        Some(path) => {
            let parsed: SpecJson = read_json(path)?;
            let spec = parsed.to_spec()?;
            let signs = parsed.sign_characteristic(&spec)?;
            GeneratorRecipe { spec, signs, seed, entry_bound: bound }
        }
        None => GeneratorRecipe { entry_bound: bound, ..random_recipe(seed, max_dim)? },
    };
    let pair = generate_pair(&recipe)?;
    let mut spec_json = SpecJson::from(&recipe.spec);
    spec_json.signs = Some(signs_json(&recipe.signs));
    Ok(success(&GeneratedJson {
        recipe: RecipeJson { spec: spec_json, seed, bound },
        a: (&pair.a).into(),
        h: (&pair.h).into(),
        truth: (&pair.truth).into(),
    }))
}

/// Named checks on the worked example.
pub fn selftest_checks() -> Result<Vec<(&'static str, bool)>, Error> {
    let ex = corpus::worked_example();
    let (a, h) = (&ex.a, &ex.h);
    let layout = BlockLayout::from_spec(&jordan_structure(a)?);
    let one = Scalar::from_int(1);
    let mut checks = vec![
        ("selfadjoint", verify::is_h_selfadjoint(a, h)?.passed()),
        ("T affiliates (A, H) to (J, P)", verify::check_affiliation(a, h, &ex.j, &ex.p, &ex.t)?.passed()),
        ("T is flipped orthogonal", verify::is_flipped_orthogonal(&ex.t, h, &layout, &[])?.passed()),
        ("T is not conjugate symmetric", !verify::is_gamma_cs(&ex.t, &layout, &one)?.passed()),
        ("R affiliates (A, H) to (J, G)", verify::check_affiliation(a, h, &ex.j, &ex.g, &ex.r)?.passed()),
        ("R is conjugate symmetric", verify::is_gamma_cs(&ex.r, &layout, &one)?.passed()),
        ("R is not flipped orthogonal", !verify::is_flipped_orthogonal(&ex.r, h, &layout, &[])?.passed()),
        ("M affiliates (A, H) to (J, P)", verify::check_affiliation(a, h, &ex.j, &ex.p, &ex.m)?.passed()),
        ("M is conjugate symmetric", verify::is_gamma_cs(&ex.m, &layout, &one)?.passed()),
    ];
    let n = focs_basis(a, h)?.basis;
    checks.push(("N affiliates (A, H) to (J, P)", verify::check_affiliation(a, h, &ex.j, &ex.p, &n)?.passed()));
    checks.push(("N is i-conjugate symmetric", verify::is_gamma_cs(&n, &layout, &Scalar::i())?.passed()));
    Ok(checks)
}

fn selftest() -> Result<Outcome, CliError> {
    let checks = selftest_checks()?;
    let passed = checks.iter().all(|&(_, ok)| ok);
    let document = serde_json::json!({
        "checks": checks.iter().map(|&(name, ok)| (name.to_string(), Value::Bool(ok))).collect::<serde_json::Map<_, _>>(),
        "passed": passed,
    });
    Ok(Outcome { document, exit: if passed { EXIT_OK } else { EXIT_FAILED } })
}

/// Runs a parsed command line. Errors become an error document with exit code 2.
pub fn execute(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Analyze { pair } => analyze(pair),
        Command::Focs { pair } => canonical(pair, focs_basis),
        Command::Realform { pair } => canonical(pair, real_canonical),
        Command::Fo { pair } => canonical(pair, fo_canonical),
        Command::Verify { pair, basis, mode, gamma } => verify_basis(pair, basis, *mode, gamma.as_deref()),
        Command::Generate { spec, seed, bound, max_dim } => generate(spec.as_deref(), *seed, *bound, *max_dim),
        Command::Selftest => selftest(),
    };
    result.unwrap_or_else(|e| Outcome {
        document: serde_json::to_value(e.to_json()).expect("documents serialize"),
        exit: EXIT_INPUT,
    })
}
