mod args;
mod commands;
mod report;

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Format};
use commands::{CliError, Ctx};
use report::ReportBundle;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cli = match &cli.global.from_json {
        Some(path) => replay(path, &cli)?,
        None => cli,
    };
    let Some(command) = &cli.command else {
        return Err(CliError::Usage(
            "no subcommand given (try --help)".to_string(),
        ));
    };
    let format = cli.global.format;
    let output = cli.global.output.clone();
    let ctx = Ctx { global: cli.global };

    if let Command::Figures(args) = command {
        let fig = commands::figures::run(&ctx, args)?;
        return match &output {
            Some(path) => {
                let body = match format {
                    Format::Json => fig.report.to_json(),
                    _ => fig.csv,
                };
                write_file(path, &body)?;
                write_file(&path.with_extension("json"), &fig.report.to_json())?;
                print_stdout(&fig.report.to_table())
            }
            None => print_stdout(&match format {
                Format::Table => fig.report.to_table(),
                Format::Json => fig.report.to_json(),
                Format::Csv => fig.csv,
            }),
        };
    }

    let report = match command {
        Command::Bh(args) => commands::bh::run(&ctx, args)?,
        Command::Pcc(args) => commands::pcc::run(&ctx, args)?,
        Command::Sdc(args) => commands::sdc::run(&ctx, args)?,
        Command::Figures(_) => unreachable!("handled above"),
    };
    let body = match format {
        Format::Table => report.to_table(),
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    match &output {
        Some(path) => write_file(path, &body),
        None => print_stdout(&body),
    }
}

/// Rebuilds the command line recorded in a JSON report. Output flags of the
/// current invocation are kept.
fn replay(path: &Path, current: &Cli) -> Result<Cli, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let bundle: ReportBundle = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{} is not a qclone report: {e}", path.display())))?;
    let mut argv = vec!["qclone".to_string()];
    argv.extend(bundle.command.iter().cloned());
    for (k, v) in &bundle.params {
        if v == "true" {
            argv.push(format!("--{k}"));
        } else {
            argv.push(format!("--{k}={v}"));
        }
    }
    let mut cli = Cli::try_parse_from(&argv)
        .map_err(|e| CliError::Usage(format!("cannot replay {}: {e}", path.display())))?;
    cli.global.format = current.global.format;
    cli.global.output = current.global.output.clone();
    cli.global.parallel = current.global.parallel;
    cli.global.from_json = None;
    Ok(cli)
}

fn write_file(path: &Path, body: &str) -> Result<(), CliError> {
    fs::write(path, body).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn print_stdout(body: &str) -> Result<(), CliError> {
    std::io::stdout()
        .write_all(body.as_bytes())
        .map_err(|e| CliError::Io(format!("stdout: {e}")))
}
