use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use matder::algcore::{validate_algebra, validate_bimodule, Algebra, Bimodule, Element};
use matder::dercalc::{
    derivation_space, inner_space, jordan_derivation_space, summarize, Derivation, LinearMap,
};
use matder::matext::{decompose, verify_lemma22, MatrixPair};
use matder::sampling::sample_elements;
use matder::twolocal::{perturbed_oracle, reconstruct, verify_agreement, wrap_derivation, Perturbation};
use matder::Error;

mod files;

#[derive(Parser, Debug)]
#[command(name = "matder", version, about = "Exact derivations of algebras and matrix algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Bimodule file; the regular bimodule is used when absent.
    #[arg(long, global = true, value_name = "PATH")]
    module: Option<PathBuf>,

    /// Use the regular bimodule (the default).
    #[arg(long, global = true, conflicts_with = "module")]
    regular: bool,

    /// Work over the n x n matrix algebra of the input.
    #[arg(short = 'n', long = "size", global = true, value_name = "SIZE")]
    n: Option<usize>,

    /// Also compute Jordan derivations.
    #[arg(long, global = true)]
    jordan: bool,

    /// Map file holding a derivation of the matrix pair.
    #[arg(long, global = true, value_name = "PATH")]
    derivation: Option<PathBuf>,

    /// A derivation map file, or perturb:<kind>:<map file>.
    #[arg(long, global = true, value_name = "SPEC")]
    oracle: Option<String>,

    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,

    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// lemma22 only: skip the Leibniz check on the input map.
    #[arg(long, global = true)]
    unchecked: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check associativity, unit and bimodule laws.
    Validate { algebra: String },
    /// Derivation, inner derivation and H1 dimensions with a basis.
    Derspace { algebra: String },
    /// Split a derivation of M_n(A) into inner part plus lift.
    Decompose { algebra: String },
    /// Check the block-component identities of a derivation.
    Lemma22 { algebra: String },
    /// Reconstruct an oracle from its values at S and T, then sample.
    Twolocal { algebra: String },
}

/// A finished command: its report and whether a violation was found.
struct Outcome {
    report: String,
    violation: bool,
}

impl Outcome {
    fn ok(report: String) -> Self {
        Self {
            report,
            violation: false,
        }
    }

    fn violation(report: String) -> Self {
        Self {
            report,
            violation: true,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.report);
            if outcome.violation {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let Format::Text = cli.format;
    match &cli.command {
        Command::Validate { algebra } => cmd_validate(cli, algebra),
        Command::Derspace { algebra } => cmd_derspace(cli, algebra),
        Command::Decompose { algebra } => cmd_decompose(cli, algebra),
        Command::Lemma22 { algebra } => cmd_lemma22(cli, algebra),
        Command::Twolocal { algebra } => cmd_twolocal(cli, algebra),
    }
}

/// Loads the base pair; an invalid one ends the command with its report.
fn load_pair(cli: &Cli, algebra: &str) -> Result<std::result::Result<(Algebra, Bimodule), Outcome>> {
    let a = files::load_algebra(algebra)?;
    let m = files::load_module(&a, cli.module.as_deref())?;
    let ra = validate_algebra(&a);
    let rm = validate_bimodule(&a, &m)?;
    if ra.is_valid() && rm.is_valid() {
        return Ok(Ok((a, m)));
    }
    let mut out = String::new();
    writeln!(out, "algebra {}: {}", a.name(), ra.to_string().trim_end())?;
    writeln!(out, "module {}: {}", m.name(), rm.to_string().trim_end())?;
    Ok(Err(Outcome::violation(out)))
}

fn required_size(cli: &Cli) -> Result<usize> {
    cli.n.context("this command needs -n SIZE")
}

fn matrix_pair(a: &Algebra, m: &Bimodule, n: usize) -> Result<MatrixPair> {
    Ok(MatrixPair::new(a, m, n)?)
}

fn load_map(path: &Path, pair: &MatrixPair) -> Result<LinearMap> {
    let file = files::load_map_file(path)?;
    let (a, m) = (pair.full_algebra(), pair.full_module());
    if file.algebra != a.name() {
        bail!("{} refers to algebra {:?} but the pair uses {:?}", path.display(), file.algebra, a.name());
    }
    if file.module != m.name() {
        bail!("{} refers to module {:?} but the pair uses {:?}", path.display(), file.module, m.name());
    }
    file.into_map(a.dim(), m.dim())
        .with_context(|| format!("in {}", path.display()))
}

/// Certifies a map, turning a Leibniz failure into a reported violation.
fn certify(pair: &MatrixPair, map: LinearMap) -> Result<std::result::Result<Derivation, Outcome>> {
    match Derivation::certify(pair.full_algebra(), pair.full_module(), map) {
        Ok(d) => Ok(Ok(d)),
        Err(Error::NotDerivation { i, j }) => {
            let labels = pair.full_algebra().labels();
            Ok(Err(Outcome::violation(format!(
                "not a derivation: Leibniz rule fails on basis pair ({i}, {j}) = ({}, {})\n",
                labels[i], labels[j]
            ))))
        }
        Err(e) => Err(e.into()),
    }
}

fn block_matrix(pair: &MatrixPair, b: &Element) -> Result<String> {
    let n = pair.n();
    let mut out = String::new();
    for i in 0..n {
        let row = (0..n)
            .map(|j| pair.module.entry(b, i, j).map(|e| e.to_string()))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        writeln!(out, "[{}]", row.join(", "))?;
    }
    Ok(out)
}

fn cmd_validate(cli: &Cli, algebra: &str) -> Result<Outcome> {
    let a = files::load_algebra(algebra)?;
    let ra = validate_algebra(&a);
    let mut out = String::new();
    writeln!(out, "algebra {} (dim {}): {}", a.name(), a.dim(), ra.to_string().trim_end())?;
    let mut violation = !ra.is_valid();
    if cli.module.is_some() || cli.regular {
        let m = files::load_module(&a, cli.module.as_deref())?;
        let rm = validate_bimodule(&a, &m)?;
        writeln!(out, "module {} (dim {}): {}", m.name(), m.dim(), rm.to_string().trim_end())?;
        violation |= !rm.is_valid();
    }
    Ok(Outcome { report: out, violation })
}

fn cmd_derspace(cli: &Cli, algebra: &str) -> Result<Outcome> {
    let (a, m) = match load_pair(cli, algebra)? {
        Ok(p) => p,
        Err(o) => return Ok(o),
    };
    let pair;
    let (a, m) = match cli.n {
        Some(n) => {
            pair = matrix_pair(&a, &m, n)?;
            (pair.full_algebra(), pair.full_module())
        }
        None => (&a, &m),
    };
    let der = derivation_space(a, m)?;
    let inner = inner_space(a, m)?;
    let summary = summarize(&der, &inner)?;
    let mut out = String::new();
    writeln!(out, "algebra: {} (dim {})", a.name(), a.dim())?;
    writeln!(out, "module: {} (dim {})", m.name(), m.dim())?;
    writeln!(out, "{summary}")?;
    if cli.jordan {
        let jordan = jordan_derivation_space(a, m)?;
        let equal = jordan.subspace() == der.subspace();
        writeln!(out, "Jordan={}", jordan.dim())?;
        writeln!(out, "Jordan derivations are derivations: {}", if equal { "yes" } else { "no" })?;
    }
    for (t, d) in der.basis().iter().enumerate() {
        writeln!(out, "D{}:", t + 1)?;
        write!(out, "{}", d.map())?;
    }
    Ok(Outcome::ok(out))
}

fn derivation_input(cli: &Cli, algebra: &str) -> Result<std::result::Result<(MatrixPair, LinearMap), Outcome>> {
    let n = required_size(cli)?;
    let path = cli.derivation.as_deref().context("this command needs --derivation PATH")?;
    let (a, m) = match load_pair(cli, algebra)? {
        Ok(p) => p,
        Err(o) => return Ok(Err(o)),
    };
    let pair = matrix_pair(&a, &m, n)?;
    let map = load_map(path, &pair)?;
    Ok(Ok((pair, map)))
}

fn cmd_decompose(cli: &Cli, algebra: &str) -> Result<Outcome> {
    let (pair, map) = match derivation_input(cli, algebra)? {
        Ok(x) => x,
        Err(o) => return Ok(o),
    };
    let der = match certify(&pair, map)? {
        Ok(d) => d,
        Err(o) => return Ok(o),
    };
    let dec = match decompose(&pair, &der) {
        Ok(dec) => dec,
        Err(Error::RecompositionFailed { basis_index }) => {
            return Ok(Outcome::violation(format!(
                "recomposition exact: no (residual at basis element {basis_index})\n"
            )))
        }
        Err(e) => return Err(e.into()),
    };
    let mut out = String::new();
    writeln!(out, "algebra: {}", pair.full_algebra().name())?;
    writeln!(out, "B:")?;
    out.push_str(&block_matrix(&pair, &dec.b)?);
    writeln!(out, "delta:")?;
    write!(out, "{}", dec.delta.map())?;
    writeln!(out, "recomposition exact: yes")?;
    Ok(Outcome::ok(out))
}

fn cmd_lemma22(cli: &Cli, algebra: &str) -> Result<Outcome> {
    let (pair, map) = match derivation_input(cli, algebra)? {
        Ok(x) => x,
        Err(o) => return Ok(o),
    };
    let der = if cli.unchecked {
        Derivation::forged(map)
    } else {
        match certify(&pair, map)? {
            Ok(d) => d,
            Err(o) => return Ok(o),
        }
    };
    let report = verify_lemma22(&pair, &der)?;
    let mut out = String::new();
    writeln!(out, "algebra: {}", pair.full_algebra().name())?;
    if cli.unchecked {
        writeln!(out, "input map not checked for the Leibniz rule")?;
    }
    write!(out, "{report}")?;
    Ok(Outcome {
        violation: !report.all_passed(),
        report: out,
    })
}

fn cmd_twolocal(cli: &Cli, algebra: &str) -> Result<Outcome> {
    let n = required_size(cli)?;
    let spec = cli.oracle.as_deref().context("this command needs --oracle SPEC")?;
    let (kind, path) = match spec.strip_prefix("perturb:") {
        Some(rest) => {
            let (kind, path) = rest
                .split_once(':')
                .context("perturbed oracles are written perturb:<kind>:<map file>")?;
            (Some(kind.parse::<Perturbation>()?), Path::new(path))
        }
        None => (None, Path::new(spec)),
    };
    let (a, m) = match load_pair(cli, algebra)? {
        Ok(p) => p,
        Err(o) => return Ok(o),
    };
    let pair = matrix_pair(&a, &m, n)?;
    let map = load_map(path, &pair)?;
    let der = match certify(&pair, map)? {
        Ok(d) => d,
        Err(o) => return Ok(o),
    };
    let mut oracle = match kind {
        None => wrap_derivation(&der)?,
        Some(k) => perturbed_oracle(&pair, &der, k)?,
    };
    let space = derivation_space(pair.full_algebra(), pair.full_module())?;

    let mut out = String::new();
    writeln!(out, "algebra: {}", pair.full_algebra().name())?;
    writeln!(out, "oracle: {}", oracle.description())?;
    let rebuilt = match reconstruct(&mut oracle, &space, &pair.algebra) {
        Ok(d) => d,
        Err(Error::NotTwoLocal { x, y }) => {
            writeln!(out, "queries before verification: {}", oracle.query_count())?;
            writeln!(out, "no derivation matches the oracle at the pair")?;
            writeln!(out, "  S = {x}")?;
            writeln!(out, "  T = {y}")?;
            writeln!(out, "verdict: not 2-local")?;
            return Ok(Outcome::violation(out));
        }
        Err(e) => return Err(e.into()),
    };
    writeln!(out, "queries before verification: {}", oracle.query_count())?;
    writeln!(out, "reconstructed derivation:")?;
    write!(out, "{}", rebuilt.map())?;
    let points = sample_elements(pair.full_algebra().dim(), cli.samples, cli.seed);
    let report = verify_agreement(&mut oracle, &rebuilt, &points)?;
    writeln!(out, "samples: {} (seed {})", cli.samples, cli.seed)?;
    writeln!(out, "agreeing: {}/{}", report.agreeing(), report.checked)?;
    if let Some(bad) = report.disagreements.first() {
        writeln!(out, "first disagreement at {}", bad.point)?;
        writeln!(out, "  oracle:        {}", bad.oracle)?;
        writeln!(out, "  reconstructed: {}", bad.derivation)?;
        writeln!(out, "verdict: disagreement")?;
        return Ok(Outcome::violation(out));
    }
    if cli.samples == 0 {
        writeln!(out, "verdict: reconstructed, unverified")?;
    } else {
        writeln!(out, "verdict: agrees on all samples")?;
    }
    Ok(Outcome::ok(out))
}
