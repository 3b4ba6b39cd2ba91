//! Command-line front end.
//!
//! Every subcommand reads diagrams in the text format of [`crate::diagram`]
//! (from a file, or stdin when no file is given), calls one library function
//! and prints its result. Input diagrams are canonicalized first, except by
//! `replay`, whose move positions refer to the diagram as written.
//!
//! Commands run single-threaded.
//!
//! Exit codes: 0 on success, 1 when a precondition fails, 2 on usage or parse
//! errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::arithmetic::{f_table, g_table, mobius, verify_tables_with};
use crate::construct::{
    adjust_writhe, realize_single_covering, realize_spectrum, realize_spectrum_closed, realize_zero_covering, snail,
    Opening, Spectrum,
};
use crate::diagram::{GaussDiagram, Sign};
use crate::error::Error;
use crate::exec::Execution;
use crate::invariants::LaurentPolynomial;
use crate::invariants::{covering, indices, odd_writhe, require_realizable, writhe_polynomial, writhe_vector};
use crate::moves::{
    equivalent_bounded_with, format_moves, parse_moves, random_move_walk, replay, simplify, EquivalenceVerdict,
};

#[derive(Debug, Parser)]
#[command(name = "vknot", version, about = "Gauss diagrams of virtual knots")]
struct Cli {
    /// Write output to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate and canonicalize a diagram.
    Parse { file: Option<PathBuf> },
    /// Per-chord indices, one `id index` line per chord.
    Index { file: Option<PathBuf> },
    /// Writhe vector, writhe polynomial and odd writhe.
    Writhe { file: Option<PathBuf> },
    /// The r-covering.
    Cover {
        #[arg(short)]
        r: i64,
        file: Option<PathBuf>,
    },
    /// Greedy R1/R2 simplification.
    Simplify { file: Option<PathBuf> },
    /// Seeded random walk of Reidemeister moves.
    Walk {
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        seed: u64,
        file: Option<PathBuf>,
    },
    /// Apply a list of moves (one per line) to a diagram as written.
    Replay {
        /// File holding the moves.
        moves: PathBuf,
        file: Option<PathBuf>,
    },
    /// Coefficient tables and their verification.
    Tables(TablesArgs),
    /// The (n, sign) snail.
    Snail {
        #[arg(short, allow_negative_numbers = true)]
        n: i64,
        #[arg(short, value_parser = parse_sign, allow_hyphen_values = true)]
        s: Sign,
    },
    /// Diagrams with prescribed coverings or writhe polynomial.
    Realize(RealizeArgs),
    /// Check that a polynomial satisfies f(1) = f'(1) = 0.
    CheckPoly {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Bounded equivalence search between two diagrams.
    Equiv {
        #[arg(long, default_value_t = 4)]
        depth: usize,
        a: PathBuf,
        b: PathBuf,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct TablesArgs {
    #[arg(long = "fn", value_name = "N")]
    f: Option<i64>,
    #[arg(long = "gn", value_name = "N")]
    g: Option<i64>,
    #[arg(long, value_name = "N")]
    mobius: Option<i64>,
    #[arg(long, value_name = "NMAX")]
    verify: Option<i64>,
}

#[derive(Debug, Args)]
struct RealizeArgs {
    #[command(flatten)]
    mode: RealizeMode,
    /// Target writhe polynomial for `--spectrum` and `--closed`.
    #[arg(long, allow_hyphen_values = true)]
    poly: Option<String>,
    /// Input diagram; for `--spectrum`/`--closed`, the targets J_0, J_2, ..., J_m.
    files: Vec<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct RealizeMode {
    #[arg(long, value_name = "N")]
    zero: Option<i64>,
    #[arg(long, value_name = "N")]
    single: Option<i64>,
    #[arg(long, value_name = "POLY", allow_hyphen_values = true)]
    writhe: Option<String>,
    #[arg(long)]
    spectrum: bool,
    #[arg(long)]
    closed: bool,
}

fn parse_sign(s: &str) -> std::result::Result<Sign, String> {
    s.parse().map_err(|e: crate::error::ParseError| e.to_string())
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Outcome {
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

enum Failure {
    Lib(Error),
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

type Run<T> = std::result::Result<T, Failure>;

struct Input<'a> {
    stdin: &'a mut dyn Read,
}

impl Input<'_> {
    fn text(&mut self, file: Option<&PathBuf>) -> Run<String> {
        match file {
            Some(p) if p.as_os_str() != "-" => {
                std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))
            }
            _ => {
                let mut s = String::new();
                self.stdin
                    .read_to_string(&mut s)
                    .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
                Ok(s)
            }
        }
    }

    fn raw(&mut self, file: Option<&PathBuf>) -> Run<GaussDiagram> {
        Ok(self.text(file)?.parse::<GaussDiagram>()?)
    }

    fn diagram(&mut self, file: Option<&PathBuf>) -> Run<GaussDiagram> {
        Ok(self.raw(file)?.canonical())
    }
}

fn poly(text: &str) -> Run<LaurentPolynomial> {
    Ok(text.parse::<LaurentPolynomial>().map_err(Error::from)?)
}

/// Runs one command line (`args[0]` is the program name).
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome::fail(2, text),
            };
        }
    };
    let mut input = Input { stdin };
    match execute(cli.command, &mut input) {
        Ok(text) => match cli.output {
            Some(path) => match std::fs::write(&path, text) {
                Ok(()) => Outcome::ok(String::new()),
                Err(e) => Outcome::fail(1, format!("cannot write {}: {e}\n", path.display())),
            },
            None => Outcome::ok(text),
        },
        Err(Failure::Usage(msg)) => Outcome::fail(2, format!("error: {msg}\n")),
        Err(Failure::Domain(msg)) => Outcome::fail(1, format!("error: {msg}\n")),
        Err(Failure::Lib(e)) => Outcome::fail(if e.is_parse() { 2 } else { 1 }, format!("error: {e}\n")),
    }
}

fn execute(command: Command, input: &mut Input<'_>) -> Run<String> {
    let mut out = String::new();
    match command {
        Command::Parse { file } => out = input.diagram(file.as_ref())?.serialize(),
        Command::Index { file } => {
            let g = input.diagram(file.as_ref())?;
            for (id, ind) in indices(&g) {
                writeln!(out, "{id} {ind}").unwrap();
            }
        }
        Command::Writhe { file } => {
            let g = input.diagram(file.as_ref())?;
            for (n, w) in writhe_vector(&g).iter() {
                writeln!(out, "w {n} {w}").unwrap();
            }
            let p = writhe_polynomial(&g);
            writeln!(out, "poly {p}").unwrap();
            writeln!(out, "pretty {}", p.pretty()).unwrap();
            writeln!(out, "odd {}", odd_writhe(&g)).unwrap();
        }
        Command::Cover { r, file } => out = covering(&input.diagram(file.as_ref())?, r)?.serialize(),
        Command::Simplify { file } => out = simplify(&input.diagram(file.as_ref())?).serialize(),
        Command::Walk { steps, seed, file } => {
            out = random_move_walk(&input.diagram(file.as_ref())?, steps, seed).serialize()
        }
        Command::Replay { moves, file } => {
            let text = std::fs::read_to_string(&moves)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", moves.display())))?;
            let moves = parse_moves(&text).map_err(Error::from)?;
            out = replay(&input.raw(file.as_ref())?, &moves)?.serialize();
        }
        Command::Tables(t) => out = tables(t)?,
        Command::Snail { n, s } => out = snail(n, s)?.serialize(),
        Command::Realize(args) => out = realize(args, input)?,
        Command::CheckPoly { poly: p } => {
            require_realizable(&poly(&p)?)?;
            out.push_str("realizable\n");
        }
        Command::Equiv { depth, a, b } => {
            let g = input.diagram(Some(&a))?;
            let h = input.diagram(Some(&b))?;
            match equivalent_bounded_with(&g, &h, depth, Execution::Sequential)? {
                EquivalenceVerdict::Equivalent { left, right } => {
                    out.push_str("equivalent\n# left\n");
                    out.push_str(&format_moves(&left));
                    out.push_str("# right\n");
                    out.push_str(&format_moves(&right));
                }
                EquivalenceVerdict::Distinct(sep) => {
                    writeln!(out, "distinct\n# {}: {} vs {}", sep.invariant, sep.left, sep.right).unwrap();
                }
                EquivalenceVerdict::Unknown => out.push_str("unknown\n"),
            }
        }
    }
    Ok(out)
}

fn tables(t: TablesArgs) -> Run<String> {
    if let Some(n) = t.f {
        return Ok(f_table(n)?.to_string());
    }
    if let Some(n) = t.g {
        return Ok(g_table(n)?.to_string());
    }
    if let Some(n) = t.mobius {
        if n < 1 {
            return Err(Failure::Domain(format!("mobius: n must be >= 1, got {n}")));
        }
        let mut out = String::new();
        for i in 1..=n {
            writeln!(out, "{i} {}", mobius(i)?).unwrap();
        }
        return Ok(out);
    }
    let n_max = t.verify.expect("clap enforces one table flag");
    let report = verify_tables_with(n_max, Execution::Sequential)?;
    match report.violation {
        None => Ok(format!("ok {}\n", report.n_max)),
        Some(v) => Err(Failure::Domain(v.to_string())),
    }
}

fn realize(args: RealizeArgs, input: &mut Input<'_>) -> Run<String> {
    let RealizeArgs {
        mode,
        poly: target,
        files,
    } = args;
    let single_file = |files: &[PathBuf]| -> Run<Option<PathBuf>> {
        match files {
            [] => Ok(None),
            [f] => Ok(Some(f.clone())),
            _ => Err(Failure::Usage("expected at most one input diagram".into())),
        }
    };
    if mode.spectrum || mode.closed {
        if files.is_empty() {
            return Err(Failure::Usage("expected the target diagrams J_0 J_2 ... J_m".into()));
        }
        let f = match &target {
            Some(p) => poly(p)?,
            None => LaurentPolynomial::zero(),
        };
        let mut targets = Vec::with_capacity(files.len());
        for file in &files {
            targets.push(input.diagram(Some(file))?);
        }
        let zero = targets.remove(0);
        let spectrum = Spectrum::new(zero, targets);
        let g = if mode.closed {
            realize_spectrum_closed(&spectrum, &f, Opening::Canonical)?
        } else {
            realize_spectrum(&spectrum, &f)?
        };
        return Ok(g.serialize());
    }
    if target.is_some() {
        return Err(Failure::Usage("--poly only applies to --spectrum and --closed".into()));
    }
    let h = input.diagram(single_file(&files)?.as_ref())?;
    let g = if let Some(n) = mode.zero {
        realize_zero_covering(&h, n)?
    } else if let Some(n) = mode.single {
        realize_single_covering(&h, n)?
    } else {
        let p = mode.writhe.expect("clap enforces one mode");
        adjust_writhe(&h, &poly(&p)?)?
    };
    Ok(g.serialize())
}
