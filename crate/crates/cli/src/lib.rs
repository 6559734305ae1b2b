//! The `mdcat` command line: validation, conversion, vocabulary building,
//! profile checks, harvesting, serialization and the portal service.
//!
//! Exit codes: 0 success, 1 findings at Violation level (or any warning with
//! `--strict`), 2 usage or operational errors.

mod commands;

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FINDINGS: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "mdcat", version, about = "mobilityDCAT-AP metadata toolkit")]
pub struct Cli {
    /// Print a JSON report on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// Treat warnings as findings.
    #[arg(long, global = true)]
    pub strict: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate an RDF document; `-` reads stdin.
    Validate {
        file: PathBuf,
        /// A profile document extending DCAT-AP, or builtin:dcat-ap / builtin:mobilitydcat-ap.
        #[arg(long)]
        profile: Option<String>,
        /// turtle, ntriples, jsonld or a media type. Defaults to the file extension.
        #[arg(long)]
        format: Option<String>,
    },
    /// Convert legacy CSV or JSON records with a mapping table.
    Convert {
        legacy: PathBuf,
        #[arg(long)]
        mapping: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// The CSV column holding record ids.
        #[arg(long, default_value = "id")]
        id_column: String,
        #[arg(long, default_value = "turtle")]
        to: String,
    },
    /// Controlled vocabulary tools.
    Vocab {
        #[command(subcommand)]
        command: VocabCommand,
    },
    /// Application profile tools.
    Profile {
        #[command(subcommand)]
        command: ProfileCommand,
    },
    /// Harvest every source of a registry once.
    Harvest {
        #[arg(long)]
        sources: PathBuf,
        /// Writes one Turtle file per source and the updated registry.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 30)]
        timeout_secs: u64,
    },
    /// Run the portal service.
    Serve {
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Re-serialize an RDF document; `-` reads stdin.
    Serialize {
        file: PathBuf,
        #[arg(long)]
        to: String,
        #[arg(long)]
        format: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum VocabCommand {
    /// Build a SKOS scheme from a vocabulary table.
    Build {
        csv: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "turtle")]
        to: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum ProfileCommand {
    /// Check that a profile only raises the requirements of its base.
    CheckExtension { base: String, extension: String },
}

/// What a command printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn error(message: impl std::fmt::Display) -> Self {
        CommandOutcome {
            exit_code: EXIT_ERROR,
            stdout: String::new(),
            stderr: format!("mdcat: {message}\n"),
        }
    }
}

/// Runs `argv` (program name first) without colour.
pub fn dispatch<I, T>(argv: I, stdin: &mut dyn Read) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    dispatch_with(argv, stdin, false)
}

pub fn dispatch_with<I, T>(argv: I, stdin: &mut dyn Read, color: bool) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => commands::run(&cli, stdin, color),
        Err(e) => {
            let text = e.render().to_string();
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => CommandOutcome {
                    exit_code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => CommandOutcome {
                    exit_code: EXIT_ERROR,
                    stdout: String::new(),
                    stderr: text,
                },
            }
        }
    }
}
