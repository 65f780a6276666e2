mod bench;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use invsemi::families::{predicted_size, DEFAULT_ELEMENT_CAP};
use invsemi::fourier::{convolve_fft, convolve_naive};
use invsemi::io::{FunctionFile, SpectrumFile};
use invsemi::structure::SubgroupKind;
use invsemi::{build_with_cap, fft, ifft, Error, FamilySpec, FamilyTag, InducedRepSet, SemigroupStructure};

#[derive(Parser)]
#[command(name = "invsemi", version, about = "Fourier transforms on finite inverse semigroups")]
struct Cli {
    /// Worker threads for the block transforms (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate a family and print its D-class structure as JSON.
    Build {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Forward transform of a function file to a spectrum file.
    Fft {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Inverse transform of a spectrum file to a function file.
    Ifft {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convolution `f * g` of two function files.
    Convolve {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "g-in")]
        g_input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Method::Fft)]
        method: Method,
    },
    /// Randomized checks against the naive oracles.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = verify::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        /// Path for the JSON report; the text report goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Operation counts and wall time of the fast transforms as CSV.
    Bench {
        #[command(flatten)]
        family: FamilyArgs,
        /// Last `n` of the sweep (default: `--n`).
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the built-in families with their element-count formulas.
    Families {
        /// Also print the sizes for this `n`.
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Args)]
struct FamilyArgs {
    /// rook, planar_rook, cyclic_shift, rotation, wreath_rook or chain.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Z1, Z2, Z3, Z4 or S3 (wreath_rook only).
    #[arg(long)]
    label_group: Option<String>,
    /// Refuse families with more elements than this.
    #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
    cap: u128,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Fft,
    Naive,
}

/// Why a command stopped early.
enum Failure {
    Core(Error),
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) | Error::Json(_) | Error::Parse(_) => 3,
        Error::Contract(_) => 4,
        Error::Capability(_) => 5,
        Error::SizeCap { .. } => 6,
        Error::Structural(_) | Error::Domain(_) => 7,
    }
}

impl FamilyArgs {
    /// The family from the flags, or from `fallback` (an input file) when
    /// no flags are given. Flags and file must then agree.
    fn resolve(&self, fallback: Option<FamilySpec>) -> Result<FamilySpec, Failure> {
        let from_flags = match (&self.family, self.n) {
            (Some(name), Some(n)) => Some(FamilySpec {
                family: FamilyTag::parse(name)?,
                n,
                label_group: self.label_group.clone(),
            }),
            (None, None) if self.label_group.is_none() => None,
            _ => return Err(Failure::Usage("--family and --n go together".into())),
        };
        match (from_flags, fallback) {
            (Some(flags), Some(file)) if flags != file => {
                Err(Error::Contract(format!("flags name {flags} but the input file is for {file}")).into())
            }
            (Some(spec), _) | (None, Some(spec)) => Ok(spec),
            (None, None) => Err(Failure::Usage("--family and --n are required".into())),
        }
    }

    fn build(&self, fallback: Option<FamilySpec>) -> Result<SemigroupStructure, Failure> {
        Ok(build_with_cap(&self.resolve(fallback)?, self.cap)?)
    }
}

fn emit(out: &Option<PathBuf>, value: &impl Serialize) -> Outcome {
    let text = serde_json::to_string_pretty(value).map_err(Error::from)? + "\n";
    match out {
        Some(path) => std::fs::write(path, text).map_err(Error::from)?,
        None => print!("{text}"),
    }
    Ok(())
}

#[derive(Serialize)]
struct StructureSummary {
    family: FamilySpec,
    size: usize,
    idempotents: usize,
    classes: Vec<ClassSummary>,
    /// Dimensions of the built-in induced representations, when available.
    induced_dims: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct ClassSummary {
    rank: usize,
    elements: usize,
    idempotents: usize,
    subgroup_order: usize,
    subgroup_kind: &'static str,
}

fn kind_name(kind: SubgroupKind) -> &'static str {
    match kind {
        SubgroupKind::Trivial => "trivial",
        SubgroupKind::Cyclic { .. } => "cyclic",
        SubgroupKind::Symmetric => "symmetric",
        SubgroupKind::Wreath => "wreath",
        SubgroupKind::Unknown => "unknown",
    }
}

fn summarize(s: &SemigroupStructure) -> StructureSummary {
    StructureSummary {
        family: s.family().cloned().expect("built-in family"),
        size: s.size(),
        idempotents: s.idempotents().len(),
        classes: s
            .classes()
            .iter()
            .map(|c| ClassSummary {
                rank: s.rank(c.representative()),
                elements: c.elements().len(),
                idempotents: c.idempotent_count(),
                subgroup_order: c.subgroup().order(),
                subgroup_kind: kind_name(c.subgroup_kind()),
            })
            .collect(),
        induced_dims: InducedRepSet::builtin(s)
            .ok()
            .map(|y| y.reps().iter().map(|r| r.dim()).collect()),
    }
}

fn write_function(out: &Option<PathBuf>, file: &FunctionFile) -> Outcome {
    match out {
        Some(path) => Ok(file.write(path)?),
        None => emit(out, file),
    }
}

fn read_function(path: &Path) -> Result<FunctionFile, Failure> {
    Ok(FunctionFile::read(path)?)
}

const CATALOG: [(FamilyTag, &str, &str); 6] = [
    (FamilyTag::Rook, "all partial injections of {1..n}", "sum_k C(n,k)^2 k!"),
    (
        FamilyTag::PlanarRook,
        "order-preserving partial injections",
        "sum_k C(n,k)^2",
    ),
    (
        FamilyTag::CyclicShift,
        "partial injections that cyclically shift the sorted domain",
        "1 + sum_k C(n,k)^2 k",
    ),
    (FamilyTag::Rotation, "restrictions of rotations of Z_n", "n 2^n - n + 1"),
    (
        FamilyTag::WreathRook,
        "G-labeled partial injections",
        "sum_k C(n,k)^2 k! |G|^k",
    ),
    (FamilyTag::Chain, "the chain of partial identities on {1..i}", "n"),
];

fn families(n: Option<usize>) {
    for (tag, what, formula) in CATALOG {
        match n {
            Some(n) if tag == FamilyTag::WreathRook => {
                let sizes: Vec<String> = [1u128, 2, 3]
                    .iter()
                    .map(|&h| format!("|G|={h}: {}", predicted_size(tag, n, h)))
                    .collect();
                println!("{:<13} {:<26} {} ({})", tag.name(), formula, what, sizes.join(", "));
            }
            Some(n) => println!(
                "{:<13} {:<26} {} (n={n}: {})",
                tag.name(),
                formula,
                what,
                predicted_size(tag, n, 1)
            ),
            None => println!("{:<13} {:<26} {}", tag.name(), formula, what),
        }
    }
}

fn run(cli: Cli) -> Outcome {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure::Usage(format!("cannot start {threads} threads: {e}")))?;
    }
    match cli.command {
        Command::Build { family, out } => emit(&out, &summarize(&family.build(None)?)),
        Command::Fft { family, input, out } => {
            let file = read_function(&input)?;
            let s = family.build(Some(file.spec()))?;
            let y = InducedRepSet::builtin(&s)?;
            let c = fft(&s, &file.to_function(&s)?, &y)?;
            let spectrum = SpectrumFile::from_coefficients(&s, &y, &c)?;
            match &out {
                Some(path) => Ok(spectrum.write(path)?),
                None => emit(&out, &spectrum),
            }
        }
        Command::Ifft { family, input, out } => {
            let file = SpectrumFile::read(&input)?;
            let s = family.build(Some(file.spec()))?;
            let y = InducedRepSet::builtin(&s)?;
            let f = ifft(&s, &file.to_coefficients(&s, &y)?, &y)?;
            write_function(&out, &FunctionFile::from_function(&s, &f)?)
        }
        Command::Convolve {
            family,
            input,
            g_input,
            out,
            method,
        } => {
            let f_file = read_function(&input)?;
            let g_file = read_function(&g_input)?;
            let s = family.build(Some(f_file.spec()))?;
            let f = f_file.to_function(&s)?;
            let g = g_file.to_function(&s)?;
            let h = match method {
                Method::Fft => convolve_fft(&s, &InducedRepSet::builtin(&s)?, &f, &g)?,
                Method::Naive => convolve_naive(&s, &f, &g)?,
            };
            write_function(&out, &FunctionFile::from_function(&s, &h)?)
        }
        Command::Verify {
            family,
            seed,
            tol,
            trials,
            out,
        } => {
            let s = family.build(None)?;
            let report = verify::run(&s, seed, tol, trials)?;
            print!("{}", report.text());
            if out.is_some() {
                emit(&out, &report)?;
            }
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Bench {
            family,
            n_max,
            seed,
            out,
        } => {
            let first = family.resolve(None)?;
            let last = n_max.unwrap_or(first.n);
            let mut csv = String::from(bench::HEADER);
            for n in first.n..=last {
                let s = build_with_cap(&FamilySpec { n, ..first.clone() }, family.cap)?;
                csv.push_str(&bench::rows(&s, seed)?);
            }
            match out {
                Some(path) => std::fs::write(path, csv).map_err(Error::from)?,
                None => print!("{csv}"),
            }
            Ok(())
        }
        Command::Families { n } => {
            families(n);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
