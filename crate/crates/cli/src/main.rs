use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use skewfiss::constructions::{cyclotomic_scheme, wreath};
use skewfiss::exactnum::surd_sign;
use skewfiss::exec::Strategy;
use skewfiss::feasibility::{
    classify_scheme, conference_scan_with, imprimitive_scan, johnson_scan, srg_scan, write_records, Annotations,
    Classification, Family, Format, DEFAULT_CONFERENCE_MAX, DEFAULT_SRG_MAX,
};
use skewfiss::scheme::{is_skew_symmetric, parse_ascm, verify_axioms_with, write_ascm, AssociationScheme};
use skewfiss::spectra::{
    character_table, conference_q_numeric, conference_table, q_from_table, srg_derive, FissionCandidate,
    CONFERENCE_TOLERANCE,
};

#[derive(Parser)]
#[command(
    name = "skewfiss",
    version,
    about = "Construct, verify and classify 4-class skew-symmetric association schemes"
)]
struct Cli {
    /// Run scans and verification on a single thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of a scheme file and summarize its intersection numbers.
    Verify { file: PathBuf },
    /// Build a scheme and write it as .ascm.
    #[command(subcommand)]
    Construct(Construct),
    /// Identify the family, table type and parameters of a 4-class skew-symmetric scheme.
    Classify { file: PathBuf },
    /// Enumerate feasible parameter sets.
    Scan(ScanArgs),
    /// Print all Krein parameters of a classified scheme with their signs.
    Krein { file: PathBuf },
}

#[derive(Subcommand)]
enum Construct {
    /// Cyclotomic scheme Cyc(q, d).
    Cyc {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Wreath product with `inner` placed on each point of `outer`.
    Wreath {
        #[arg(long)]
        inner: PathBuf,
        #[arg(long)]
        outer: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanKind {
    Conference,
    Srg,
    Imprimitive,
    Johnson,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Tsv,
    Json,
    Md,
}

#[derive(clap::Args)]
struct ScanArgs {
    kind: ScanKind,
    /// Largest number of points.
    #[arg(long)]
    max_n: Option<i64>,
    /// Largest v for the Johnson scan.
    #[arg(long, default_value_t = 200)]
    max_v: i64,
    #[arg(long, value_enum, default_value_t = OutFormat::Tsv)]
    format: OutFormat,
    /// JSON file of existence annotations.
    #[arg(long)]
    annotations: Option<PathBuf>,
    /// Include character tables in JSON output.
    #[arg(long)]
    tables: bool,
}

enum Failure {
    Input(String),
    Consistency(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    let strategy = if cli.sequential { Strategy::Sequential } else { Strategy::default() };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, strategy, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            let _ = out.flush();
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Consistency(m)) => {
            let _ = out.flush();
            eprintln!("consistency failure: {m}");
            ExitCode::from(2)
        }
    }
}

#[cfg(feature = "parallel")]
fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("SKEWFISS_THREADS") else { return Ok(()) };
    let n: usize = v.parse().map_err(|_| format!("SKEWFISS_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global().map_err(|e| e.to_string())
}

#[cfg(not(feature = "parallel"))]
fn configure_threads() -> Result<(), String> {
    Ok(())
}

fn read_scheme(path: &Path) -> Result<AssociationScheme, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_ascm(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_scheme(path: &Path, s: &AssociationScheme) -> Result<(), Failure> {
    fs::write(path, write_ascm(s)).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn run(command: Command, strategy: Strategy, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Verify { file } => verify(&read_scheme(&file)?, strategy, out),
        Command::Construct(Construct::Cyc { q, d, output }) => {
            let s = cyclotomic_scheme(q, d)?;
            write_scheme(&output, &s)?;
            writeln!(out, "wrote Cyc({q},{d}): n = {}, d = {} to {}", s.n(), s.d(), output.display())?;
            Ok(())
        }
        Command::Construct(Construct::Wreath { inner, outer, output }) => {
            let s = wreath(&read_scheme(&inner)?, &read_scheme(&outer)?)?;
            write_scheme(&output, &s)?;
            writeln!(out, "wrote wreath product: n = {}, d = {} to {}", s.n(), s.d(), output.display())?;
            Ok(())
        }
        Command::Classify { file } => {
            let c = classify_scheme(&read_scheme(&file)?)?;
            writeln!(out, "{c}")?;
            print_table(&c, out)
        }
        Command::Krein { file } => krein(&classify_scheme(&read_scheme(&file)?)?, out),
        Command::Scan(args) => scan(args, strategy, out),
    }
}

fn verify(s: &AssociationScheme, strategy: Strategy, out: &mut dyn Write) -> Result<(), Failure> {
    let report = verify_axioms_with(s, strategy);
    write!(out, "{report}")?;
    let Some(t) = &report.tensor else {
        return Err(Failure::Input(report.first_failure().unwrap_or_else(|| "verification failed".into())));
    };
    writeln!(out, "result: pass")?;
    writeln!(out, "skew-symmetric: {}", if is_skew_symmetric(s) { "yes" } else { "no" })?;
    writeln!(out, "commutative: {}", if t.is_commutative() { "yes" } else { "no" })?;
    writeln!(out, "valencies: {:?}", t.valencies())?;
    for i in 1..=t.d() {
        writeln!(out, "B{i}:")?;
        for row in t.matrix(i) {
            writeln!(out, "  {}", row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))?;
        }
    }
    Ok(())
}

fn print_table(c: &Classification, out: &mut dyn Write) -> Result<(), Failure> {
    writeln!(out, "character table:")?;
    if c.family == Family::Conference {
        let t = conference_table(c.n, c.g.unwrap_or(0))?;
        for row in &t.entries {
            writeln!(out, "  {}", row.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" | "))?;
        }
    } else {
        let t = exact_table(c)?;
        for row in &t.entries {
            writeln!(out, "  {}", row.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" | "))?;
        }
    }
    Ok(())
}

fn exact_table(
    c: &Classification,
) -> Result<skewfiss::spectra::CharacterTable<skewfiss::exactnum::ComplexSurd>, Failure> {
    let p = srg_derive(c.n, c.k, c.lambda, c.mu)?;
    let t = c.table_type.ok_or_else(|| Failure::Consistency("classification without a table type".into()))?;
    let f = FissionCandidate { table_type: t, z: c.z.map(skewfiss::exactnum::int) };
    Ok(character_table(&p, &f)?)
}

fn krein(c: &Classification, out: &mut dyn Write) -> Result<(), Failure> {
    writeln!(out, "{c}")?;
    let mut negatives = 0;
    if c.family == Family::Conference {
        let q = conference_q_numeric(&conference_table(c.n, c.g.unwrap_or(0))?);
        writeln!(out, "floating point evaluation (tolerance {CONFERENCE_TOLERANCE:e})")?;
        for (idx, v) in q.iter().enumerate() {
            let x = v.re.hi();
            let sign = if x.abs() <= CONFERENCE_TOLERANCE {
                "0"
            } else if x > 0.0 {
                "+"
            } else {
                "-"
            };
            negatives += usize::from(sign == "-");
            writeln!(out, "q^{}_{}{} = {x:.12} [{sign}]", idx % 5, idx / 25, idx / 5 % 5)?;
        }
    } else {
        let q = q_from_table(&exact_table(c)?);
        for i in 0..5 {
            for j in 0..5 {
                for l in 0..5 {
                    let v = q.get(i, j, l);
                    let sign = match surd_sign(v) {
                        0 => "0",
                        1 => "+",
                        _ => "-",
                    };
                    negatives += usize::from(sign == "-");
                    writeln!(out, "q^{l}_{i}{j} = {v} [{sign}]")?;
                }
            }
        }
    }
    writeln!(out, "negative: {negatives}")?;
    Ok(())
}

fn scan(args: ScanArgs, strategy: Strategy, out: &mut dyn Write) -> Result<(), Failure> {
    let consistency = |e: skewfiss::feasibility::ConsistencyError| Failure::Consistency(e.to_string());
    let mut records = match args.kind {
        ScanKind::Conference => conference_scan_with(args.max_n.unwrap_or(DEFAULT_CONFERENCE_MAX), strategy),
        ScanKind::Srg => srg_scan(args.max_n.unwrap_or(DEFAULT_SRG_MAX), strategy).map_err(consistency)?,
        ScanKind::Imprimitive => {
            imprimitive_scan(args.max_n.unwrap_or(DEFAULT_SRG_MAX), strategy).map_err(consistency)?
        }
        ScanKind::Johnson => johnson_scan(args.max_v, strategy).map_err(consistency)?,
    };
    if let Some(path) = &args.annotations {
        let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        Annotations::from_json(&text)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
            .apply(&mut records);
    }
    let format = match args.format {
        OutFormat::Tsv => Format::Tsv,
        OutFormat::Json => Format::Json,
        OutFormat::Md => Format::Markdown,
    };
    write_records(out, &records, format, args.tables)?;
    Ok(())
}
