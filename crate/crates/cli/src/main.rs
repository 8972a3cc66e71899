//! `twistcube`: twisted cubes, string polytopes and condition (P) from the
//! command line.
//!
//! Exit status: 0 success, 1 a reported check failed, 2 bad input,
//! 3 an enumeration hit its resource cap.

mod commands;
mod spec;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use twistcube_core::Error;

use commands::Outcome;
use spec::{parse_list, Format, ProblemSpec, SpecFile};

#[derive(Parser)]
#[command(
    name = "twistcube",
    version,
    about = "Twisted cubes, string polytopes and condition (P)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SpecArgs {
    /// JSON problem specification; flags override its fields.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Root-system family, A to G. Nodes are labelled as in Bourbaki.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
    /// Letters of the word, e.g. `1,2,1`.
    #[arg(long)]
    word: Option<String>,
    /// Multiplicity list, e.g. `2,1,1`.
    #[arg(long, allow_hyphen_values = true)]
    mult: Option<String>,
    /// Dominant weight in fundamental-weight coordinates, e.g. `1,1`.
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,
    /// Lattice checks run at dilates 1..=N (default 3).
    #[arg(long)]
    dilates: Option<i64>,
    /// Grid denominator for the direct condition-(P) scan (default 2).
    #[arg(long)]
    denominator: Option<i64>,
    /// json, text or off.
    #[arg(long)]
    format: Option<String>,
    /// Budget of enumerated lattice points or scanned grid nodes.
    #[arg(long)]
    max_points: Option<u128>,
}

#[derive(Subcommand)]
enum Command {
    /// Inequalities, vertices and lattice/simple/smooth verdicts of P.
    TwistedCube(SpecArgs),
    /// Membership queries and lattice-point counts of Delta.
    StringPolytope {
        #[command(flatten)]
        spec: SpecArgs,
        /// Point to test, e.g. `(0,0,1/2)`; repeatable.
        #[arg(long = "point", allow_hyphen_values = true)]
        points: Vec<String>,
        /// Also list the lattice points at each dilate.
        #[arg(long)]
        list: bool,
    },
    /// Decide condition (P); exits 1 with a witness when it fails.
    CheckP {
        #[command(flatten)]
        spec: SpecArgs,
        /// Also run the direct grid scan on `(1/denominator) Z^n`.
        #[arg(long)]
        scan: bool,
    },
    /// The full table of Cartier data r_sigma.
    Cartier(SpecArgs),
    /// The multiplicity list m(lambda).
    MOfLambda(SpecArgs),
    /// Construct m for a weight and run every check on it.
    Resolve(SpecArgs),
    /// Lattice-level containment of Delta(small) in Delta(big).
    Compare {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, allow_hyphen_values = true)]
        small: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        big: Option<String>,
    },
    /// Vertices of P: OFF for 3-dimensional solids, JSON otherwise.
    Export(SpecArgs),
}

impl SpecArgs {
    fn resolve(&self) -> Result<ProblemSpec, Error> {
        let file = match &self.spec {
            Some(path) => SpecFile::load(path)?,
            None => SpecFile::default(),
        };
        let flags = SpecFile {
            family: self.family.clone(),
            rank: self.rank,
            word: list(&self.word)?,
            mult: list(&self.mult)?,
            weight: list(&self.weight)?,
            dilates: self.dilates,
            denominator: self.denominator,
            format: self.format.clone(),
        };
        let mut spec = ProblemSpec::from_fields(file.overridden_by(flags))?;
        if let Some(cap) = self.max_points {
            spec.cap = cap;
        }
        Ok(spec)
    }
}

fn list<T: std::str::FromStr>(raw: &Option<String>) -> Result<Option<Vec<T>>, Error> {
    raw.as_deref()
        .map(parse_list)
        .transpose()
        .map_err(Error::Parse)
}

fn fail(kind: &str, code: u8, message: &str) -> ExitCode {
    let line = message.replace('\n', " ");
    eprintln!("error[{kind}]: {}", line.trim());
    ExitCode::from(code)
}

fn run(command: Command) -> Result<(Outcome, Option<Format>), Error> {
    let with_spec = |args: &SpecArgs, f: &dyn Fn(&ProblemSpec) -> Result<Outcome, Error>| {
        let spec = args.resolve()?;
        if spec.format == Some(Format::Off) && !matches!(command, Command::Export(_)) {
            return Err(Error::Parse(
                "format off is only available for export".into(),
            ));
        }
        f(&spec).map(|o| (o, spec.format))
    };
    match &command {
        Command::TwistedCube(a) => with_spec(a, &commands::twisted_cube_cmd),
        Command::StringPolytope { spec, points, list } => {
            with_spec(spec, &|s| commands::string_polytope_cmd(s, points, *list))
        }
        Command::CheckP { spec, scan } => with_spec(spec, &|s| {
            let mut out = commands::check_p_cmd(s)?;
            if *scan {
                let wm = s.word_mult()?;
                let grid = twistcube_core::direct_p_oracle_capped(&wm, s.denominator, s.cap)?;
                out.json["grid_scan"] = serde_json::json!({
                    "denominator": s.denominator,
                    "holds": grid,
                });
                out.text.push_str(&format!(
                    "grid scan (denominator {}): {grid}\n",
                    s.denominator
                ));
            }
            Ok(out)
        }),
        Command::Cartier(a) => with_spec(a, &commands::cartier_cmd),
        Command::MOfLambda(a) => with_spec(a, &commands::m_of_lambda_cmd),
        Command::Resolve(a) => with_spec(a, &commands::resolve_cmd),
        Command::Compare { spec, small, big } => {
            let (small, big) = (list(small)?, list(big)?);
            with_spec(spec, &|s| {
                commands::compare_cmd(s, small.clone(), big.clone())
            })
        }
        Command::Export(a) => with_spec(a, &commands::export_cmd),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            return fail("input", 2, first.trim_start_matches("error: "));
        }
    };
    match run(cli.command) {
        Ok((out, format)) => {
            let body = match (out.raw, format) {
                (Some(raw), _) => raw,
                (None, Some(Format::Json)) => {
                    serde_json::to_string_pretty(&out.json).expect("plain JSON") + "\n"
                }
                (None, _) => out.text,
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e @ Error::Resource { .. }) => fail("resource", 3, &e.to_string()),
        Err(e) => fail("input", 2, &e.to_string()),
    }
}
