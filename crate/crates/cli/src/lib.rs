//! Library side of the `soldyn` command-line tool: the input document
//! schema, report DTOs, and the error-to-exit-code mapping. The binary in
//! `main.rs` is a thin clap dispatcher over these.

use std::fmt;

pub mod input;
pub mod report;

/// Errors mapped to the tool's stable exit codes: 2 parse/usage, 3
/// non-invertible generator, 4 not nilpotent, 5 not ergodic, 6 caps
/// exhausted.
#[derive(Debug)]
pub enum CliError {
    Parse(String),
    NotInvertible(String),
    NotNilpotent(String),
    NotErgodic(String),
    CapsExhausted(Vec<String>),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 2,
            CliError::NotInvertible(_) => 3,
            CliError::NotNilpotent(_) => 4,
            CliError::NotErgodic(_) => 5,
            CliError::CapsExhausted(_) => 6,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) | CliError::NotInvertible(m) | CliError::Io(m) => write!(f, "{m}"),
            CliError::NotNilpotent(m) => write!(f, "group is not nilpotent: {m}"),
            CliError::NotErgodic(m) => write!(f, "group action is not ergodic: {m}"),
            CliError::CapsExhausted(diags) => {
                writeln!(f, "search caps exhausted")?;
                for d in diags {
                    writeln!(f, "  {d}")?;
                }
                Ok(())
            }
        }
    }
}
