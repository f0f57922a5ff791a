use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use quandle_core::canon::{self, MAX_BRUTE_FORCE_ORDER};
use quandle_core::catalog_io::{self, CatalogEntry};
use quandle_core::enumerate::{self, EnumOptions, Progress};
use quandle_core::verify::{self, Claim, Status};
use quandle_core::{Error, Profile, Quandle};

const NEGATIVE: u8 = 1;
const INVALID: u8 = 2;
const INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "quandle", version, about = "Finite connected quandle toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a table and report connectivity, latinity and profile.
    Check { file: PathBuf },
    /// Print the canonical matrix of a connected quandle.
    Canon { file: PathBuf },
    /// List automorphisms in cycle notation, then their count.
    Aut { file: PathBuf },
    /// Exit 0 iff the two quandles are isomorphic.
    Iso { first: PathBuf, second: PathBuf },
    /// Enumerate connected quandles of order n up to isomorphism.
    Enum {
        n: usize,
        /// Keep only this profile, e.g. {1,2,2}.
        #[arg(long)]
        profile: Option<Profile>,
        /// Write a catalog directory instead of printing matrices.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Raise the order limit.
        #[arg(long, env = "QUANDLE_MAX_ORDER")]
        max_order_override: Option<usize>,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        /// Report progress on standard error.
        #[arg(long)]
        progress: bool,
    },
    /// Check every claim on a catalog directory or a single table.
    Verify {
        path: PathBuf,
        /// Comma-separated claim ids.
        #[arg(long, value_delimiter = ',')]
        claims: Option<Vec<Claim>>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print the dual table `a ∗̄ b = r_b⁻¹(a)`.
    Dual { file: PathBuf },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    fn invalid(message: impl ToString) -> Self {
        Self::new(INVALID, message.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotConnected => Failure::new(NEGATIVE, e.to_string()),
            _ => Failure::invalid(e),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn read_quandle(path: &Path) -> Result<Quandle, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    catalog_io::parse_quandle(&text)
        .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn set_jobs(jobs: Option<usize>) -> Result<(), Failure> {
    if let Some(n) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::new(INTERNAL, e.to_string()))?;
    }
    Ok(())
}

fn check(file: &Path) -> Outcome {
    let q = read_quandle(file)?;
    println!("quandle of order {}", q.order());
    let latin = if q.is_latin() { "latin" } else { "not latin" };
    if q.is_connected() {
        println!("connected, {latin}, profile {}", q.profile()?);
        Ok(0)
    } else {
        println!("not connected, {latin}");
        Ok(NEGATIVE)
    }
}

fn canon_cmd(file: &Path) -> Outcome {
    let q = read_quandle(file)?;
    print!(
        "{}",
        catalog_io::serialize_matrix(&canon::canonical_form(&q)?)
    );
    Ok(0)
}

fn aut(file: &Path) -> Outcome {
    let q = read_quandle(file)?;
    let group = if q.is_connected() {
        canon::automorphism_group(&q)?
    } else {
        canon::brute_force_automorphisms(&q)?
    };
    for sigma in &group {
        println!("{sigma}");
    }
    println!("{} automorphisms", group.len());
    Ok(0)
}

fn iso(first: &Path, second: &Path) -> Outcome {
    let (a, b) = (read_quandle(first)?, read_quandle(second)?);
    let same = if a.is_connected() && b.is_connected() {
        canon::are_isomorphic(&a, &b)?
    } else if a.order() != b.order() {
        false
    } else if a.order() <= MAX_BRUTE_FORCE_ORDER {
        canon::brute_force_isomorphism(&a, &b)?.is_some()
    } else {
        return Err(Failure::invalid(Error::OrderTooLarge {
            n: a.order(),
            max: MAX_BRUTE_FORCE_ORDER,
        }));
    };
    if same {
        println!("isomorphic");
        Ok(0)
    } else {
        println!("not isomorphic");
        Ok(NEGATIVE)
    }
}

fn enum_cmd(
    n: usize,
    profile: Option<Profile>,
    out: Option<&Path>,
    max_order: Option<usize>,
    progress: bool,
) -> Outcome {
    if let Some(p) = &profile {
        if p.order() != n {
            return Err(Failure::invalid(format!(
                "profile {p} does not have order {n}"
            )));
        }
    }
    let options = EnumOptions {
        max_order: max_order.unwrap_or(enumerate::DEFAULT_MAX_ORDER),
    };
    let report = |p: &Progress| eprintln!("order {}: {}/{}", p.order, p.done, p.total);
    let callback: Option<&(dyn Fn(&Progress) + Sync)> = if progress { Some(&report) } else { None };
    let mut list = enumerate::enumerate_connected_with(n, &options, callback)?;
    if let Some(p) = &profile {
        list = enumerate::filter_by_profile(&list, p);
    }
    match out {
        Some(dir) => {
            let entries: Vec<CatalogEntry> = enumerate::to_catalog(&list)
                .into_iter()
                .map(CatalogEntry::with_metadata)
                .collect();
            catalog_io::save_catalog(dir, &entries).map_err(Failure::invalid)?;
        }
        None => {
            let text: Vec<String> = list.iter().map(catalog_io::serialize_matrix).collect();
            print!("{}", text.join("\n"));
        }
    }
    eprintln!("{} classes", list.len());
    Ok(0)
}

fn load_any(path: &Path) -> Result<Vec<CatalogEntry>, Failure> {
    if path.is_dir() {
        catalog_io::load_catalog(path).map_err(Failure::invalid)
    } else {
        Ok(vec![catalog_io::load_entry(path).map_err(Failure::invalid)?])
    }
}

fn verify_cmd(path: &Path, claims: Option<&[Claim]>) -> Outcome {
    let catalog = load_any(path)?;
    let reports = verify::verify_all_with(&catalog, claims);
    let mut failures = 0;
    let mut unreplayable = 0;
    for r in &reports {
        println!("{r}");
        if r.is_theorem_failure() {
            failures += 1;
        }
        if r.witness.is_some() && verify::replay(r, &catalog) != Some(true) {
            eprintln!("witness does not replay: {r}");
            unreplayable += 1;
        }
    }
    let reported = reports
        .iter()
        .filter(|r| r.status == Status::Report)
        .count();
    eprintln!(
        "{} reports over {} quandles: {failures} theorem failures, {reported} report-only",
        reports.len(),
        catalog.len()
    );
    Ok(if failures + unreplayable > 0 {
        INTERNAL
    } else {
        0
    })
}

fn dual(file: &Path) -> Outcome {
    let q = read_quandle(file)?;
    print!("{}", catalog_io::serialize_matrix(&q.dual()));
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Check { file } => check(&file),
        Command::Canon { file } => canon_cmd(&file),
        Command::Aut { file } => aut(&file),
        Command::Iso { first, second } => iso(&first, &second),
        Command::Enum {
            n,
            profile,
            out,
            max_order_override,
            jobs,
            progress,
        } => {
            set_jobs(jobs)?;
            enum_cmd(n, profile, out.as_deref(), max_order_override, progress)
        }
        Command::Verify { path, claims, jobs } => {
            set_jobs(jobs)?;
            verify_cmd(&path, claims.as_deref())
        }
        Command::Dual { file } => dual(&file),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
