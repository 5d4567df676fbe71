//! `stpa`: command-line front end over the analysis library. One subcommand
//! per engine operation; the process reads a `.stpa` file, runs the
//! operation, and writes the payload to stdout (or `--out` files) with every
//! diagnostic on stderr.
//!
//! Exit codes are a contract:
//! 0 success, 1 validation errors (warnings too under `--strict`, and
//! requests naming entities the model does not have), 2 unreadable input or
//! parse failure, 3 usage error.

use std::fmt::Write as _;
use std::fs;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use stpa_core::engine::{step2_prompts, trace, TraceNode};
use stpa_core::model::{Rating, SafetyModel, UCA_CLASS_ORDER};
use stpa_core::{
    compute_asil, emit_csv_matrix, emit_json, emit_markdown, enumerate_candidates, parse_named,
    validate, CandidateStatus, Finding, ParseDiagnostic, ReportBundle, Severity,
};

#[derive(Parser)]
#[command(
    name = "stpa",
    version,
    about = "STPA/STAMP safety analysis over .stpa models",
    disable_help_subcommand = true
)]
struct Cli {
    /// Disable colored diagnostics (also: STPA_NO_COLOR=1)
    #[arg(long, global = true)]
    no_color: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a model, printing all findings
    Check {
        file: PathBuf,
        /// Treat warnings like errors for the exit code
        #[arg(long)]
        strict: bool,
    },
    /// Print the Step 1 matrix: every action crossed with the four categories
    Candidates {
        file: PathBuf,
        /// Emit the matrix as CSV instead of an aligned table
        #[arg(long)]
        csv: bool,
    },
    /// Determine an ASIL, for one rating or for every rated UCA in a file
    Asil {
        /// Rate one hazard directly, e.g. --rate S3 E4 C3
        #[arg(long, num_args = 3, value_names = ["S", "E", "C"])]
        rate: Option<Vec<String>>,
        /// Model whose UCA ratings should be determined
        file: Option<PathBuf>,
    },
    /// Trace an entity down to accidents and up to its dependents
    Trace {
        file: PathBuf,
        /// Id of the entity to trace
        #[arg(long)]
        id: String,
    },
    /// Print the eight causal-factor prompts for a UCA
    Step2 {
        file: PathBuf,
        /// Id of the UCA to examine
        #[arg(long)]
        uca: String,
    },
    /// Emit a report for a model
    Report {
        file: PathBuf,
        /// Output format
        #[arg(long, value_enum)]
        format: Format,
        /// Write into this directory instead of stdout
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Md,
    Json,
    Csv,
}

/// ANSI styling for stderr diagnostics. Payload output is never styled.
#[derive(Clone, Copy)]
struct Style {
    enabled: bool,
}

impl Style {
    fn detect(no_color: bool) -> Self {
        let env_off = std::env::var("STPA_NO_COLOR").is_ok_and(|v| v == "1");
        Style {
            enabled: !no_color && !env_off && std::io::stderr().is_terminal(),
        }
    }

    fn paint(self, code: &'static str) -> &'static str {
        if self.enabled {
            code
        } else {
            ""
        }
    }

    fn error(self) -> &'static str {
        self.paint("\x1b[1;31m")
    }

    fn warning(self) -> &'static str {
        self.paint("\x1b[1;33m")
    }

    fn reset(self) -> &'static str {
        self.paint("\x1b[0m")
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version are successful outcomes, not usage errors.
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let style = Style::detect(cli.no_color);
    ExitCode::from(run(cli.command, style))
}

fn run(command: Command, style: Style) -> u8 {
    match command {
        Command::Check { file, strict } => check(&file, strict, style),
        Command::Candidates { file, csv } => candidates(&file, csv, style),
        Command::Asil { rate, file } => asil(rate, file, style),
        Command::Trace { file, id } => trace_cmd(&file, &id, style),
        Command::Step2 { file, uca } => step2(&file, &uca, style),
        Command::Report { file, format, out } => report(&file, format, out, style),
    }
}

/// Read and parse the model, or print why not and yield the exit code.
fn load_model(path: &Path, style: Style) -> Result<SafetyModel, u8> {
    let source = match fs::read_to_string(path) {
        Ok(source) => source,
        Err(err) => {
            eprintln!(
                "{}error{}: cannot read {}: {err}",
                style.error(),
                style.reset(),
                path.display()
            );
            return Err(2);
        }
    };
    match parse_named(&source, &path.display().to_string()) {
        Ok(model) => Ok(model),
        Err(diagnostics) => {
            for diagnostic in &diagnostics {
                eprintln!("{}", render_diagnostic(diagnostic, style));
            }
            eprintln!(
                "{}error{}: {} could not be parsed ({} diagnostic{})",
                style.error(),
                style.reset(),
                path.display(),
                diagnostics.len(),
                if diagnostics.len() == 1 { "" } else { "s" }
            );
            Err(2)
        }
    }
}

fn render_diagnostic(diagnostic: &ParseDiagnostic, style: Style) -> String {
    let mut line = format!(
        "{}: {}error{}: {}",
        diagnostic.span,
        style.error(),
        style.reset(),
        diagnostic.message
    );
    if let Some(expected) = &diagnostic.expected {
        let _ = write!(line, " (expected {expected})");
    }
    line
}

fn render_finding(finding: &Finding, style: Style) -> String {
    let location = finding
        .span
        .as_ref()
        .map(|span| span.to_string())
        .unwrap_or_else(|| finding.subject.clone());
    let color = match finding.severity {
        Severity::Error => style.error(),
        Severity::Warning => style.warning(),
    };
    format!(
        "{location}: {color}{}{}[{}]: {}",
        finding.severity,
        style.reset(),
        finding.code,
        finding.message
    )
}

fn check(file: &Path, strict: bool, style: Style) -> u8 {
    let model = match load_model(file, style) {
        Ok(model) => model,
        Err(code) => return code,
    };
    let findings = validate(&model);
    for finding in &findings {
        eprintln!("{}", render_finding(finding, style));
    }
    let errors = findings
        .iter()
        .filter(|f| f.severity == Severity::Error)
        .count();
    let warnings = findings.len() - errors;
    eprintln!("{errors} errors, {warnings} warnings");
    if errors > 0 || (strict && warnings > 0) {
        1
    } else {
        0
    }
}

fn status_text(status: &CandidateStatus) -> String {
    match status {
        CandidateStatus::Unassessed => "unassessed".to_string(),
        CandidateStatus::Safe => "safe".to_string(),
        CandidateStatus::Unsafe(ids) => format!("unsafe({})", ids.join(";")),
    }
}

fn candidates(file: &Path, csv: bool, style: Style) -> u8 {
    let model = match load_model(file, style) {
        Ok(model) => model,
        Err(code) => return code,
    };
    if csv {
        let bundle = ReportBundle::from_model(model);
        print!("{}", emit_csv_matrix(&bundle));
        return 0;
    }
    let cells = enumerate_candidates(&model);
    let mut rows: Vec<[String; 5]> = vec![[
        "action".to_string(),
        UCA_CLASS_ORDER[0].to_string(),
        UCA_CLASS_ORDER[1].to_string(),
        UCA_CLASS_ORDER[2].to_string(),
        UCA_CLASS_ORDER[3].to_string(),
    ]];
    for chunk in cells.chunks(4) {
        rows.push([
            chunk[0].action.clone(),
            status_text(&chunk[0].status),
            status_text(&chunk[1].status),
            status_text(&chunk[2].status),
            status_text(&chunk[3].status),
        ]);
    }
    let mut widths = [0usize; 5];
    for row in &rows {
        for (width, cell) in widths.iter_mut().zip(row) {
            *width = (*width).max(cell.chars().count());
        }
    }
    for row in &rows {
        let mut line = String::new();
        for (i, (cell, width)) in row.iter().zip(widths).enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            let _ = write!(line, "{cell:<width$}");
        }
        println!("{}", line.trim_end());
    }
    0
}

/// Parse one `--rate` token of the shape S3 / E4 / C3.
fn rate_token(token: &str, letter: char) -> Option<u8> {
    let mut chars = token.chars();
    if chars.next() != Some(letter) {
        return None;
    }
    match (chars.next(), chars.next()) {
        (Some(digit), None) => digit.to_digit(10).map(|d| d as u8),
        _ => None,
    }
}

fn asil(rate: Option<Vec<String>>, file: Option<PathBuf>, style: Style) -> u8 {
    match (rate, file) {
        (Some(tokens), None) => {
            let parsed = (
                rate_token(&tokens[0], 'S'),
                rate_token(&tokens[1], 'E'),
                rate_token(&tokens[2], 'C'),
            );
            let (Some(s), Some(e), Some(c)) = parsed else {
                eprintln!(
                    "{}error{}: --rate expects S<digit> E<digit> C<digit>, got `{}`",
                    style.error(),
                    style.reset(),
                    tokens.join(" ")
                );
                return 3;
            };
            match compute_asil(&Rating::new(s, e, c)) {
                Ok(level) => {
                    println!("{level}");
                    0
                }
                Err(err) => {
                    eprintln!("{}error{}: {err}", style.error(), style.reset());
                    3
                }
            }
        }
        (None, Some(file)) => {
            let model = match load_model(&file, style) {
                Ok(model) => model,
                Err(code) => return code,
            };
            let mut out_of_range = false;
            for uca in &model.ucas {
                match uca.rating {
                    None => println!("{}: unrated", uca.id),
                    Some(rating) => match compute_asil(&rating) {
                        Ok(level) => println!("{}: {rating} -> {level}", uca.id),
                        Err(_) => {
                            out_of_range = true;
                            println!("{}: {rating} -> out of range", uca.id);
                        }
                    },
                }
            }
            if out_of_range {
                1
            } else {
                0
            }
        }
        _ => {
            eprintln!(
                "{}error{}: provide exactly one of --rate S<d> E<d> C<d> or a model file",
                style.error(),
                style.reset()
            );
            3
        }
    }
}

fn push_nodes(out: &mut String, nodes: &[TraceNode], depth: usize) {
    for node in nodes {
        let indent = "  ".repeat(depth);
        if node.label.is_empty() {
            let _ = writeln!(out, "{indent}{} ({})", node.id, node.kind);
        } else {
            let _ = writeln!(out, "{indent}{} ({}): {}", node.id, node.kind, node.label);
        }
        push_nodes(out, &node.children, depth + 1);
    }
}

fn trace_cmd(file: &Path, id: &str, style: Style) -> u8 {
    let model = match load_model(file, style) {
        Ok(model) => model,
        Err(code) => return code,
    };
    let tree = match trace(&model, id) {
        Ok(tree) => tree,
        Err(err) => {
            eprintln!("{}error{}: {err}", style.error(), style.reset());
            return 1;
        }
    };
    let mut out = String::new();
    if tree.label.is_empty() {
        let _ = writeln!(out, "{} ({})", tree.id, tree.kind);
    } else {
        let _ = writeln!(out, "{} ({}): {}", tree.id, tree.kind, tree.label);
    }
    let _ = writeln!(out, "down:");
    if tree.down.is_empty() {
        let _ = writeln!(out, "  (none)");
    } else {
        push_nodes(&mut out, &tree.down, 1);
    }
    let _ = writeln!(out, "up:");
    if tree.up.is_empty() {
        let _ = writeln!(out, "  (none)");
    } else {
        push_nodes(&mut out, &tree.up, 1);
    }
    print!("{out}");
    0
}

fn step2(file: &Path, uca_id: &str, style: Style) -> u8 {
    let model = match load_model(file, style) {
        Ok(model) => model,
        Err(code) => return code,
    };
    let prompts = match step2_prompts(&model, uca_id) {
        Ok(prompts) => prompts,
        Err(err) => {
            eprintln!("{}error{}: {err}", style.error(), style.reset());
            return 1;
        }
    };
    // The UCA resolved, so its pieces are present.
    let uca = model.uca(uca_id).expect("prompts imply the uca exists");
    let action_label = model
        .action(&uca.action)
        .map(|a| a.label.clone())
        .unwrap_or_default();
    println!(
        "{} ({}) on {}: {}",
        uca.id, uca.category, uca.action, action_label
    );
    for (i, prompt) in prompts.iter().enumerate() {
        println!("{}. {}", i + 1, prompt.element);
        println!("   {}", prompt.question);
        if prompt.answered_by.is_empty() {
            println!("   recorded: none");
        } else {
            println!("   recorded: {}", prompt.answered_by.join(", "));
        }
    }
    0
}

fn report(file: &Path, format: Format, out: Option<PathBuf>, style: Style) -> u8 {
    let model = match load_model(file, style) {
        Ok(model) => model,
        Err(code) => return code,
    };
    let bundle = ReportBundle::from_model(model);
    let (text, name) = match format {
        Format::Md => (emit_markdown(&bundle), "report.md"),
        Format::Json => (emit_json(&bundle), "report.json"),
        Format::Csv => (emit_csv_matrix(&bundle), "matrix.csv"),
    };
    match out {
        None => {
            print!("{text}");
            0
        }
        Some(dir) => {
            let write = fs::create_dir_all(&dir).and_then(|()| {
                let path = dir.join(name);
                fs::write(&path, &text).map(|()| path)
            });
            match write {
                Ok(path) => {
                    eprintln!("wrote {}", path.display());
                    0
                }
                Err(err) => {
                    eprintln!(
                        "{}error{}: cannot write into {}: {err}",
                        style.error(),
                        style.reset(),
                        dir.display()
                    );
                    2
                }
            }
        }
    }
}
