use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use trackline::report::{render, render_cubing_only};
use trackline::{analyze, cubing, Analysis, default_jobname, from_json, parse_list, read_input, to_json, write_file, CliError};

/// Tracks, splittings and dual cubings of finitely presented groups.
///
/// Presentations are read either as one line `a b c d : ab-a-b-b ...` with
/// single-character generators (a leading `-` inverts a letter; write a
/// relation such as c^3 = d^2 as the relator `ccc-d-d`), or in the
/// structured format with lines `gens x y t` and `rel t x -t -y`.
#[derive(Parser)]
#[command(name = "trackline", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the track basis, classify each track and print its splitting.
    Analyze {
        file: PathBuf,
        /// Also write the structured document here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Test each basis element for being a vertex solution up to this multiple.
        #[arg(long)]
        max_vertex_bound: Option<u32>,
        #[arg(long)]
        jobname: Option<String>,
    },
    /// Build the dual square complex of some basis tracks.
    Cubing {
        file: PathBuf,
        /// Comma-separated basis indices.
        #[arg(long)]
        tracks: Option<String>,
        /// An explicit track as comma-separated corner coordinates; repeatable.
        #[arg(long = "vector")]
        vectors: Vec<String>,
        /// Comma-separated coefficients, one per listed track.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
        /// File of lines `edge: i j k ...` giving point orders per edge.
        #[arg(long)]
        ordering: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        jobname: Option<String>,
    },
    /// Write the structured document without printing a report.
    Export {
        file: PathBuf,
        #[arg(long)]
        json: PathBuf,
        #[arg(long)]
        tracks: Option<String>,
        #[arg(long = "vector")]
        vectors: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
        #[arg(long)]
        ordering: Option<PathBuf>,
        #[arg(long)]
        max_vertex_bound: Option<u32>,
        #[arg(long)]
        jobname: Option<String>,
    },
    /// Print the report stored in a structured document.
    Report { json: PathBuf },
}

fn read_text(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Read(format!("{}: {e}", path.display())))
}

fn select_cubing(
    a: &mut Analysis,
    tracks: Option<String>,
    vectors: &[String],
    coeffs: Option<String>,
    ordering: Option<PathBuf>,
) -> Result<(), CliError> {
    let indices = tracks.map(|t| parse_list::<usize>(&t)).transpose()?.unwrap_or_default();
    let vectors = vectors.iter().map(|v| parse_list::<i64>(v)).collect::<Result<Vec<_>, _>>()?;
    let coeffs = coeffs.map(|c| parse_list::<i64>(&c)).transpose()?;
    let ordering = ordering.map(|o| read_text(&o)).transpose()?;
    cubing(a, &indices, &vectors, coeffs, ordering.as_deref())
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Analyze { file, json, max_vertex_bound, jobname } => {
            let p = read_input(&file)?;
            let name = jobname.unwrap_or_else(|| default_jobname(&file));
            let a = analyze(&p, &name, max_vertex_bound)?;
            if let Some(path) = json {
                write_file(&path, &to_json(&a.document))?;
            }
            Ok(render(&a.document))
        }
        Command::Cubing { file, tracks, vectors, coeffs, ordering, json, jobname } => {
            let p = read_input(&file)?;
            let name = jobname.unwrap_or_else(|| default_jobname(&file));
            let mut a = analyze(&p, &name, None)?;
            select_cubing(&mut a, tracks, &vectors, coeffs, ordering)?;
            if let Some(path) = json {
                write_file(&path, &to_json(&a.document))?;
            }
            Ok(render_cubing_only(&a.document))
        }
        Command::Export { file, json, tracks, vectors, coeffs, ordering, max_vertex_bound, jobname } => {
            let p = read_input(&file)?;
            let name = jobname.unwrap_or_else(|| default_jobname(&file));
            let mut a = analyze(&p, &name, max_vertex_bound)?;
            if tracks.is_some() || !vectors.is_empty() {
                select_cubing(&mut a, tracks, &vectors, coeffs, ordering)?;
            }
            write_file(&json, &to_json(&a.document))?;
            Ok(String::new())
        }
        Command::Report { json } => Ok(render(&from_json(&read_text(&json)?)?)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(6);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("trackline: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
