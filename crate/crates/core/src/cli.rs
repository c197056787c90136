//! The `tmdfa` command line.
//!
//! Exit codes: 0 success, 1 negative result (disagreement, mismatch or no
//! match), 2 bad parameters or malformed input, 3 I/O failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::classes::{build_minimal, complement_minimal, state_complexity};
use crate::construction::{build_a_mrb, build_a_t, build_pi_a_mrb, build_product, build_projected};
use crate::decision::decide;
use crate::dfa::Dfa;
use crate::error::Result;
use crate::numeration::derive_params;
use crate::oracle::sweep;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "tmdfa", version, about = "Automata for the sets mT + r in base 2^p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build one stage of the construction and write it as JSON or DOT.
    Build {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum, default_value_t = Stage::Minimal)]
        stage: Stage,
        /// Accept m·T̄ + r instead (minimal stage only).
        #[arg(long)]
        complement: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the closed-form state complexity with Hopcroft minimization.
    Complexity {
        #[arg(long, default_value_t = 64)]
        m_max: u64,
        #[arg(long, default_value_t = 3)]
        p_max: u32,
    },
    /// Decide whether a JSON automaton accepts some mT + r.
    Decide {
        /// JSON automaton, or `-` for stdin.
        #[arg(long)]
        input: String,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        allow_complement: bool,
    },
    /// Check the minimal automaton against arithmetic on all short words.
    Verify {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        complement: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Stage {
    /// Pair automaton for the evil numbers.
    #[value(name = "a_t")]
    AT,
    /// Pair automaton for x = m·y + r.
    #[value(name = "a_mrb")]
    AMrb,
    /// Its projection onto the second component.
    #[value(name = "pi_a_mrb")]
    PiAMrb,
    Product,
    Projected,
    Minimal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(e) => {
            let _ = e.print();
            e.exit_code()
        }
    }
}

pub fn execute(command: Command) -> i32 {
    match command {
        Command::Build { m, r, p, stage, complement, format, out } => {
            let dfa = match build_stage(stage, m, r, p, complement) {
                Ok(d) => d,
                Err(e) => return fail(EXIT_BAD_INPUT, e),
            };
            let text = match format {
                Format::Json => dfa.to_json(),
                Format::Dot => {
                    let pairs = matches!(stage, Stage::AT | Stage::AMrb | Stage::Product);
                    dfa.to_dot(pairs.then_some(1u64 << p))
                }
            };
            emit(&text, out.as_ref())
        }
        Command::Complexity { m_max, p_max } => match complexity_table(m_max, p_max) {
            Ok((table, agree)) => {
                let code = emit(&table, None);
                if code != EXIT_OK {
                    code
                } else if agree {
                    EXIT_OK
                } else {
                    EXIT_NEGATIVE
                }
            }
            Err(e) => fail(EXIT_BAD_INPUT, e),
        },
        Command::Decide { input, p, allow_complement } => {
            let text = match read_input(&input) {
                Ok(t) => t,
                Err(e) => return fail(EXIT_IO, e),
            };
            let verdict = Dfa::from_json(&text).and_then(|d| decide(&d, p, allow_complement));
            match verdict {
                Ok(v) => {
                    let code = emit(&v.to_json(), None);
                    if code != EXIT_OK {
                        code
                    } else if v.is_match() {
                        EXIT_OK
                    } else {
                        EXIT_NEGATIVE
                    }
                }
                Err(e) => fail(EXIT_BAD_INPUT, e),
            }
        }
        Command::Verify { m, r, p, max_len, complement } => {
            match sweep(m, r, p, max_len, complement) {
                Ok(report) => {
                    let code = emit(&report.to_json(), None);
                    if code != EXIT_OK {
                        code
                    } else if report.passed() {
                        EXIT_OK
                    } else {
                        EXIT_NEGATIVE
                    }
                }
                Err(e) => fail(EXIT_BAD_INPUT, e),
            }
        }
    }
}

pub fn build_stage(stage: Stage, m: u64, r: u64, p: u32, complement: bool) -> Result<Dfa> {
    let params = derive_params(m, r, p)?;
    if complement && stage != Stage::Minimal {
        return Err(crate::error::Error::InvalidParams(
            "--complement applies to the minimal stage only".into(),
        ));
    }
    match stage {
        Stage::AT => build_a_t(p),
        Stage::AMrb => build_a_mrb(m, r, params.base),
        Stage::PiAMrb => build_pi_a_mrb(m, r, params.base),
        Stage::Product => build_product(m, r, p),
        Stage::Projected => build_projected(m, r, p),
        Stage::Minimal if complement => complement_minimal(m, r, p),
        Stage::Minimal => build_minimal(m, r, p),
    }
}

/// TSV rows `m p formula hopcroft agree`. The Hopcroft count is taken at
/// `r = 0`; `agree` also requires the same count at `r = ⌊m/2⌋` and `r = m - 1`.
pub fn complexity_table(m_max: u64, p_max: u32) -> Result<(String, bool)> {
    if m_max == 0 || p_max == 0 {
        return Err(crate::error::Error::InvalidParams("bounds must be at least 1".into()));
    }
    let mut out = String::from("m\tp\tformula\thopcroft\tagree\n");
    let mut all = true;
    for m in 1..=m_max {
        for p in 1..=p_max {
            let formula = state_complexity(m, p)?;
            let mut counts = Vec::with_capacity(3);
            for r in [0, m / 2, m - 1] {
                counts.push(build_projected(m, r, p)?.minimize().state_count() as u64);
            }
            let agree = counts.iter().all(|&c| c == formula);
            all &= agree;
            let _ = writeln!(out, "{m}\t{p}\t{formula}\t{}\t{agree}", counts[0]);
        }
    }
    Ok((out, all))
}

fn read_input(input: &str) -> io::Result<String> {
    if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(input)
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> i32 {
    let mut text = text.to_owned();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    let res = match out {
        Some(path) => std::fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    match res {
        Ok(()) => EXIT_OK,
        Err(e) => fail(EXIT_IO, e),
    }
}

fn fail(code: i32, e: impl std::fmt::Display) -> i32 {
    eprintln!("error: {e}");
    code
}
