//! Text front end for the ordered-algebra laboratory: a block-grammar
//! parser/printer for workspaces and a command dispatcher over the library
//! operations.

pub mod commands;
pub mod parse;
pub mod print;
pub mod report;
pub mod workspace;

use clap::Parser;

use crate::report::EXIT_USAGE;

/// Parses arguments, loads the workspace files, runs the command, and
/// returns the rendered report with its exit code.
pub fn run(args: &[String]) -> (i32, String) {
    let cli = match commands::Cli::try_parse_from(
        std::iter::once("oal".to_string()).chain(args.iter().cloned()),
    ) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version render as ordinary output with exit 0.
            let rendered = e.render().to_string();
            let code = if e.exit_code() == 0 { 0 } else { EXIT_USAGE };
            return (code, rendered);
        }
    };
    let mut ws = workspace::Workspace::default();
    for file in &cli.files {
        let source = match std::fs::read_to_string(file) {
            Ok(s) => s,
            Err(e) => return (EXIT_USAGE, format!("error: cannot read `{file}`: {e}\n")),
        };
        ws = match parse::parse_more(ws, &source) {
            Ok(ws) => ws,
            Err(e) => return (EXIT_USAGE, format!("error: {file}: {e}\n")),
        };
    }
    let report = commands::run_command(&ws, &cli);
    let rendered = if cli.json {
        report.render_json()
    } else {
        report.render_text()
    };
    (report.exit, rendered)
}
