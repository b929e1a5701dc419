use std::collections::HashSet;
use std::io::{self, BufRead, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sgk_cli::interp::DEFAULT_GENERATORS;
use sgk_cli::verify::{self, DEFAULT_SEED};
use sgk_cli::{parse_in_scope, Event, Interpreter, Report, Status};

#[derive(Parser)]
#[command(name = "sgk", version, about = "Exact computations on the super projective line")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Number of Grassmann generators for literals.
    #[arg(long, global = true, default_value_t = DEFAULT_GENERATORS)]
    generators: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Run a script file, or standard input when no file is given.
    Run { file: Option<PathBuf> },
    /// Interactive session.
    Repl,
    /// Run the built-in verification suite.
    VerifyPaper {
        /// Check ids to run, comma separated; all when omitted.
        #[arg(long, value_delimiter = ',')]
        select: Vec<String>,
        /// List the available checks and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn emit(report: &Report, format: Format) -> ExitCode {
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    ExitCode::from(report.exit_code() as u8)
}

fn run(file: Option<PathBuf>, n: usize, format: Format) -> ExitCode {
    let src = match &file {
        Some(path) => std::fs::read_to_string(path),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map(|_| s)
        }
    };
    let src = match src {
        Ok(s) => s,
        Err(e) => {
            eprintln!("sgk: cannot read input: {e}");
            return ExitCode::from(2);
        }
    };
    match sgk_cli::run_source(&src, n) {
        Ok(report) => emit(&report, format),
        Err(e) => {
            let name = file.as_ref().map_or("<stdin>".into(), |p| p.display().to_string());
            eprintln!("{name}:{e}");
            ExitCode::from(1)
        }
    }
}

/// Brackets still open in `s`, ignoring comments.
fn open_brackets(s: &str) -> i32 {
    s.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::chars)
        .map(|c| match c {
            '(' | '[' => 1,
            ')' | ']' => -1,
            _ => 0,
        })
        .sum()
}

fn repl(n: usize) -> ExitCode {
    let mut interp = Interpreter::new(n);
    let mut scope = HashSet::new();
    let mut buffer = String::new();
    let stdin = io::stdin();
    let prompt = |cont: bool| {
        print!("{}", if cont { "... " } else { "sgk> " });
        io::stdout().flush().ok();
    };
    prompt(false);
    for line in stdin.lock().lines() {
        let Ok(line) = line else { break };
        buffer.push_str(&line);
        buffer.push('\n');
        if open_brackets(&buffer) > 0 {
            prompt(true);
            continue;
        }
        match parse_in_scope(&buffer, &mut scope) {
            Err(e) => println!("error: {e}"),
            Ok(script) => {
                for st in &script {
                    match interp.statement(st) {
                        Some(Event::Output(v)) => println!("{v}"),
                        Some(Event::Check(r)) => match r.status {
                            Status::Pass => println!("ok"),
                            _ => println!("{}", r.message.unwrap_or_else(|| "failed".into())),
                        },
                        None => {}
                    }
                }
            }
        }
        buffer.clear();
        prompt(false);
    }
    println!();
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.generators > 8 {
        eprintln!("sgk: at most 8 generators are supported");
        return ExitCode::from(2);
    }
    // Core panics are caught per statement and reported; keep stderr quiet.
    std::panic::set_hook(Box::new(|_| {}));
    match cli.command {
        Command::Run { file } => run(file, cli.generators, cli.format),
        Command::Repl => repl(cli.generators),
        Command::VerifyPaper { select, list } => {
            if list {
                for c in verify::CHECKS {
                    println!("{:24} {}", c.id, c.anchor);
                }
                return ExitCode::SUCCESS;
            }
            emit(&verify::verify(&select, cli.seed), cli.format)
        }
    }
}
