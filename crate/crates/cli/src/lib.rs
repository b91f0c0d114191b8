//! Command line front end: the arrangement file grammar and the command
//! dispatcher, exposed as a library so integration tests can drive the exact
//! same code paths as the binary.

pub mod commands;
pub mod grammar;

pub use commands::{run, EXIT_MISMATCH, EXIT_OK, EXIT_PARSE, EXIT_THEOREM, EXIT_USAGE};
pub use grammar::{parse, render_arrangement, render_representatives, ParseError, ParsedFile};

/// Run a command against a fixed stdin string, capturing the streams.
pub fn run_captured(args: &[&str], stdin_text: &str) -> (i32, String, String) {
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let stdin = stdin_text.to_string();
    let provider = move || Ok(stdin.clone());
    let mut out = String::new();
    let mut err = String::new();
    let code = run(&args, &provider, &mut out, &mut err);
    (code, out, err)
}
