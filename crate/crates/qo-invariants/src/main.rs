//! Command-line front end.
//!
//! Reads an input document (file argument or standard input), runs the
//! pipeline, and prints the report. Exit status: 0 on success, 1 on
//! invalid input, 2 on an internal theorem violation (including failed
//! checks in any mode).

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use qo_invariants::report::{AxisSelection, Format, Mode, RunOptions};
use qo_invariants::{run, InputDocument};

#[derive(Parser)]
#[command(
    name = "qo-invariants",
    about = "Exact invariants of irreducible quasi-ordinary surface prototypes",
    after_help = "The input document is a JSON object: {\"branch\": [[\"2/7\",\"4/5\"], ...], \"strict\": false}.\n\
                  Each branch term is a pair of fraction strings. With no FILE, input is read from stdin."
)]
struct Cli {
    /// What to compute and print.
    #[arg(long, value_enum, default_value_t = ModeArg::Report)]
    mode: ModeArg,

    /// Which coordinate axis to slice along.
    #[arg(long, value_enum, default_value_t = AxisArg::Both)]
    axis: AxisArg,

    /// Enforce essentiality of every term during validation.
    #[arg(long)]
    strict: bool,

    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    /// Input file; standard input when omitted.
    file: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Report,
    Verify,
    Zeta,
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Structured,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's own help/version output is not an error
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };

    let text = match read_input(cli.file.as_deref()) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };

    let options = RunOptions {
        mode: match cli.mode {
            ModeArg::Report => Mode::Report,
            ModeArg::Verify => Mode::Verify,
            ModeArg::Zeta => Mode::Zeta,
        },
        axis: match cli.axis {
            AxisArg::One => AxisSelection::One,
            AxisArg::Two => AxisSelection::Two,
            AxisArg::Both => AxisSelection::Both,
        },
        strict: cli.strict,
    };
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Structured => Format::Structured,
    };

    let outcome = InputDocument::parse(&text).and_then(|input| run(&input, &options));
    match outcome {
        Ok(outcome) => {
            print!("{}", outcome.document.render(format));
            if outcome.checks_pass {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: theorem checks failed");
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(u8::try_from(e.exit_code()).unwrap_or(1))
        }
    }
}

fn read_input(file: Option<&str>) -> std::io::Result<String> {
    match file {
        Some(path) => fs::read_to_string(path),
        None => {
            let mut buffer = String::new();
            std::io::stdin().read_to_string(&mut buffer)?;
            Ok(buffer)
        }
    }
}
