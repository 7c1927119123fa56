use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use frobtower::hopf;
use frobtower::io::{parse_input, to_canonical_json, ExtensionSpec, InputFile, PairingSpec};
use frobtower::models::{generate_example, sidecar, CATALOG};
use frobtower::report::{depth_two_summary, reconstruct, run_input, run_pairing, tower_for, Options};
use frobtower::tower;

#[derive(Parser)]
#[command(name = "frobtower", version, about = "Exact Jones towers, depth-two checks and Hopf reconstruction for Frobenius extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// Input file (extension or pairing JSON).
    path: PathBuf,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every stage and report each check.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Tower levels to build.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        levels: u8,
        /// Keep only checks whose id contains this string.
        #[arg(long)]
        check: Option<String>,
        /// Record per-check wall-clock time (output is then not reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Dump the tower N ⊆ M ⊆ M₁ ⊆ M₂.
    Tower {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        levels: u8,
    },
    /// Centralizers and the orthogonal dual-bases verdicts at both levels.
    Depth2 {
        #[command(flatten)]
        common: Common,
    },
    /// Write Hopf dumps of A and B (`hopf-a.json`, `hopf-b.json` under --out).
    Hopf {
        /// Input file (extension or pairing JSON).
        path: PathBuf,
        /// Output directory; without it both dumps go to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a catalog example and, with --out, its sidecar of expected outcomes.
    Examples {
        /// Catalog name; omit to list the catalog.
        name: Option<String>,
        /// Positional parameters, e.g. `S3 A3` for group-pair.
        params: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an abstract pairing file.
    PairCheck {
        #[command(flatten)]
        common: Common,
    },
}

/// Invalid input: exit code 2.
struct InvalidInput(String);

fn read_input(path: &Path) -> Result<std::result::Result<InputFile, InvalidInput>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(parse_input(&text).map_err(|e| InvalidInput(format!("{}: {e}", path.display()))))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn sidecar_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map_or_else(|| "example".into(), |s| s.to_string_lossy().into_owned());
    out.with_file_name(format!("{stem}.expected.json"))
}

macro_rules! input_or_exit {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(InvalidInput(msg)) => {
                eprintln!("invalid input: {msg}");
                return Ok(2);
            }
        }
    };
}

fn extension_of(input: InputFile) -> std::result::Result<ExtensionSpec, InvalidInput> {
    match input {
        InputFile::Extension(f) => ExtensionSpec::from_file(&f).map_err(|e| InvalidInput(e.to_string())),
        InputFile::Pairing(_) => Err(InvalidInput("expected an extension file".into())),
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Verify { common, levels, check, timing } => {
            let input = input_or_exit!(read_input(&common.path)?);
            let opts = Options { levels, check, timing };
            let report = input_or_exit!(run_input(&input, &opts).map_err(|e| InvalidInput(e.to_string())));
            let text = if common.json { report.to_json() } else { report.to_text() };
            emit(common.out.as_deref(), &text)?;
            Ok(report.exit_code() as u8)
        }
        Command::PairCheck { common } => {
            let input = input_or_exit!(read_input(&common.path)?);
            let spec = input_or_exit!(match input {
                InputFile::Pairing(f) => PairingSpec::from_file(&f).map_err(|e| InvalidInput(e.to_string())),
                InputFile::Extension(_) => Err(InvalidInput("expected a pairing file".into())),
            });
            let report = input_or_exit!(run_pairing(&spec, &Options::default()).map_err(|e| InvalidInput(e.to_string())));
            let text = if common.json { report.to_json() } else { report.to_text() };
            emit(common.out.as_deref(), &text)?;
            Ok(report.exit_code() as u8)
        }
        Command::Tower { common, levels } => {
            let spec = input_or_exit!(extension_of(input_or_exit!(read_input(&common.path)?)));
            let t = match input_or_exit!(tower_for(&spec).map_err(|e| InvalidInput(e.to_string()))) {
                Ok(t) => t,
                Err(reason) => {
                    eprintln!("tower not built: {reason}");
                    return Ok(1);
                }
            };
            let mut d = tower::dump(&t);
            d.levels.truncate(usize::from(levels));
            d.dims.truncate(usize::from(levels) + 2);
            let text = if common.json {
                to_canonical_json(&d)
            } else {
                let mut s = format!("dims: {}\n", d.dims.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ⊆ "));
                for l in &d.levels {
                    s.push_str(&format!("level {}: dim {}, index {}, jones {:?}\n", l.level, l.dim, l.lambda_inverse, l.jones));
                }
                s
            };
            emit(common.out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Depth2 { common } => {
            let spec = input_or_exit!(extension_of(input_or_exit!(read_input(&common.path)?)));
            let t = match input_or_exit!(tower_for(&spec).map_err(|e| InvalidInput(e.to_string()))) {
                Ok(t) => t,
                Err(reason) => {
                    eprintln!("tower not built: {reason}");
                    return Ok(1);
                }
            };
            let s = depth_two_summary(&t);
            let text = if common.json {
                to_canonical_json(&s)
            } else {
                let mut out = format!(
                    "dim A = {}, dim B = {}, dim C = {}\nirreducible: {}\ndepth two: {}\n",
                    s.dim_a, s.dim_b, s.dim_c, s.base_irreducible, s.depth_two
                );
                for (n, l) in [(1, &s.level1), (2, &s.level2)] {
                    out.push_str(&format!("level {n}: found {} via {}, brute force agrees: {}", l.found, l.method, l.brute_force_agrees));
                    if let Some(f) = &l.failure {
                        out.push_str(&format!(", {f}"));
                    }
                    out.push('\n');
                }
                out
            };
            emit(common.out.as_deref(), &text)?;
            Ok(u8::from(!(s.level1.brute_force_agrees && s.level2.brute_force_agrees)))
        }
        Command::Hopf { path, out } => {
            let input = input_or_exit!(read_input(&path)?);
            let rec = match input_or_exit!(reconstruct(&input).map_err(|e| InvalidInput(e.to_string()))) {
                Ok(r) => r,
                Err(reason) => {
                    eprintln!("reconstruction not reached: {reason}");
                    return Ok(1);
                }
            };
            let a = hopf::dump(&rec.a, &rec.pairing);
            let b = hopf::dump(&rec.b, &rec.pairing);
            match out {
                Some(dir) => {
                    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                    emit(Some(&dir.join("hopf-a.json")), &to_canonical_json(&a))?;
                    emit(Some(&dir.join("hopf-b.json")), &to_canonical_json(&b))?;
                }
                None => emit(None, &to_canonical_json(&serde_json::json!({"a": a, "b": b})))?,
            }
            Ok(0)
        }
        Command::Examples { name, params, out } => {
            let Some(name) = name else {
                println!("{}", CATALOG.join("\n"));
                return Ok(0);
            };
            let spec = match generate_example(&name, &params) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("{e}");
                    return Ok(2);
                }
            };
            let text = to_canonical_json(&InputFile::Extension(spec.to_file()));
            match out {
                Some(p) => {
                    emit(Some(&p), &text)?;
                    let sc = sidecar(&name, &params).expect("example was generated");
                    emit(Some(&sidecar_path(&p)), &to_canonical_json(&sc))?;
                }
                None => emit(None, &text)?,
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
