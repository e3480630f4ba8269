use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mfree_cli::report::{render_convergence, render_rows, render_verify};
use mfree_cli::{
    cmd_converge, cmd_eval, cmd_verify, Bounds, Family, Format, Model, Result, Session, SessionSpec, Suite,
};

#[derive(Parser)]
#[command(name = "mfree", version, about = "Exact moments of Boolean, free, c-free and m-free products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a word under one or more models.
    Eval {
        #[arg(long)]
        spec: PathBuf,
        /// Letters `sym[*][@k]` separated by spaces, or `1`.
        #[arg(long)]
        word: String,
        /// boolean, free, cfree, mfree:M or convolve:M; repeat or separate with commas.
        #[arg(long, value_delimiter = ',')]
        model: Vec<String>,
        /// Level for `mfree` and `convolve` given without `:M`.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Tabulate levels m = 1..=M against their limit.
    Converge {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long)]
        m_max: usize,
        #[arg(long, value_enum, default_value_t = Sequence::Mfree)]
        model: Sequence,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run seeded self-checks.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        m_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Sequence {
    Mfree,
    Convolve,
}

fn load(path: &std::path::Path) -> Result<Session> {
    Session::new(SessionSpec::load(path)?)
}

fn run(cli: Cli) -> Result<(String, bool)> {
    match cli.command {
        Command::Eval { spec, word, model, m, format } => {
            let session = load(&spec)?;
            let mut models = model.iter().map(|s| Model::parse(s.trim(), m)).collect::<Result<Vec<_>>>()?;
            if models.is_empty() {
                models = vec![Model::Boolean, Model::Free, Model::Cfree];
                models.extend(m.map(Model::Mfree));
            }
            Ok((render_rows(&cmd_eval(&session, &word, &models)?, format), true))
        }
        Command::Converge { spec, word, m_max, model, format } => {
            let session = load(&spec)?;
            let family = match model {
                Sequence::Mfree => Family::Mfree,
                Sequence::Convolve => Family::Convolve,
            };
            Ok((render_convergence(&cmd_converge(&session, &word, family, m_max)?, format), true))
        }
        Command::Verify { suite, seed, n_max, m_max, format } => {
            let report = cmd_verify(suite, seed, Bounds { n_max, m_max })?;
            Ok((render_verify(&report, format), report.passed()))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok((out, passed)) => {
            print!("{out}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
