use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use tied_core::aj_closed::{aj_closed, count_2tied, count_3tied_families};
use tied_core::aj_recursive::{aj_bracket_recursive, export_dot, Gamma, ResolutionStrategy, TreeStats};
use tied_core::verify::{verify_suite, VerifyConfig};
use tied_core::{parse_diagram, TiedDiagram};

/// AJ-bracket of tied link diagrams.
#[derive(Parser)]
#[command(name = "tiedbracket", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the bracket polynomial.
    Bracket {
        /// Diagram file, or `-` for standard input.
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Recursive)]
        method: Method,
        #[arg(long, default_value = "canonical")]
        strategy: ResolutionStrategy,
    },
    /// Compare predicted leaf and state counts with the resolution tree.
    Count {
        file: PathBuf,
        #[arg(long, default_value = "canonical")]
        strategy: ResolutionStrategy,
    },
    /// Print the resolution tree in DOT format.
    Tree {
        file: PathBuf,
        #[arg(long, default_value = "canonical")]
        strategy: ResolutionStrategy,
        #[arg(long, default_value_t = 12)]
        max_depth: usize,
    },
    /// Run the cross-check suite on random tied braid closures.
    Verify {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u8).range(0..=12))]
        max_m: u8,
        /// One JSON record per check instead of text.
        #[arg(long)]
        json: bool,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Recursive,
    Closed,
    Both,
}

fn read_diagram(file: &PathBuf) -> Result<TiedDiagram> {
    let text = if file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        s
    } else {
        std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?
    };
    let (_, diagram) = parse_diagram(&text)?;
    Ok(diagram)
}

fn bracket(file: &PathBuf, method: Method, strategy: ResolutionStrategy) -> Result<(String, bool)> {
    let d = read_diagram(file)?;
    let closed = match method {
        Method::Recursive => None,
        _ => Some(aj_closed(&d)?),
    };
    let recursive = match method {
        Method::Closed => None,
        _ => Some(aj_bracket_recursive(&d, strategy).0),
    };
    Ok(match (recursive, closed) {
        (Some(r), Some(c)) => {
            let verdict = if r == c { "EQUAL" } else { "UNEQUAL" };
            (format!("recursive: {r}\nclosed: {c}\n{verdict}\n"), r == c)
        }
        (Some(v), None) | (None, Some(v)) => (format!("{v}\n"), true),
        (None, None) => unreachable!(),
    })
}

fn row(out: &mut String, name: &str, predicted: u128, measured: u128) -> bool {
    let ok = predicted == measured;
    let verdict = if ok { "MATCH" } else { "MISMATCH" };
    writeln!(out, "{name:<22} predicted {predicted:>8}  measured {measured:>8}  {verdict}").unwrap();
    ok
}

fn count(file: &PathBuf, strategy: ResolutionStrategy) -> Result<(String, bool)> {
    let d = read_diagram(file)?;
    let census = d.classify();
    let colors = d.color_count();
    let mut out = String::new();
    writeln!(out, "colors {colors}").unwrap();
    for i in 1..=colors {
        for j in i + 1..=colors {
            writeln!(out, "x_{i},{j} = {}  y_{i},{j} = {}", census.x_ij(i, j), census.y_ij(i, j)).unwrap();
        }
    }
    for i in 1..=colors {
        writeln!(out, "z_{i} = {}", census.z_i(i)).unwrap();
    }
    let cx = d.complexity();
    writeln!(out, "complexity ({}, {})", cx.total, cx.illegal).unwrap();

    let (_, stats, _) = aj_bracket_recursive(&d, strategy);
    let mut ok = true;
    match colors {
        0 | 1 => ok &= row(&mut out, "leaves", 1 << census.m(), stats.leaf_count),
        2 => {
            let p = count_2tied(&census);
            ok &= row(&mut out, "leaves", p.leaves, stats.leaf_count);
            ok &= row(&mut out, "dichromatic states", p.dichromatic_states, stats.states_with_colors(2));
            ok &= row(&mut out, "monochromatic states", p.monochromatic_states, stats.states_with_colors(1));
        }
        3 if strategy == ResolutionStrategy::Canonical => ok &= three_tied_rows(&mut out, &census, &stats),
        _ => writeln!(out, "leaves {} (no prediction for this strategy and color count)", stats.leaf_count).unwrap(),
    }
    Ok((out, ok))
}

fn three_tied_rows(out: &mut String, census: &tied_core::CrossingCensus, stats: &TreeStats) -> bool {
    let p = count_3tied_families(census);
    let mut ok = row(out, "leaves", p.leaves(), stats.leaf_count);
    for g in Gamma::ALL {
        let (leaves, states) = p.families[&g];
        ok &= row(out, &format!("{g} leaves"), leaves, stats.gamma_leaves(g));
        if leaves > 0 {
            ok &= row(out, &format!("{g} states"), states, stats.gamma_state_count(g));
        }
    }
    ok &= row(out, "trichromatic states", p.trichromatic_states, stats.states_with_colors(3));
    ok &= row(out, "dichromatic states", p.dichromatic_states, stats.states_with_colors(2));
    ok &= row(out, "monochromatic states", p.monochromatic_states, stats.states_with_colors(1));
    ok
}

fn verify(config: VerifyConfig, json: bool) -> Result<(String, bool)> {
    let report = verify_suite(&config);
    let out = if json {
        let mut out = String::new();
        for r in &report.records {
            out.push_str(&serde_json::to_string(r)?);
            out.push('\n');
        }
        out
    } else {
        report.to_text()
    };
    Ok((out, report.passed()))
}

fn run(cli: Cli) -> Result<(String, bool)> {
    match cli.command {
        Command::Bracket { file, method, strategy } => bracket(&file, method, strategy),
        Command::Count { file, strategy } => count(&file, strategy),
        Command::Tree {
            file,
            strategy,
            max_depth,
        } => Ok((export_dot(&read_diagram(&file)?, strategy, max_depth), true)),
        Command::Verify {
            count,
            seed,
            max_m,
            json,
            inject_fault,
        } => {
            if count == 0 {
                bail!("--count must be positive");
            }
            let config = VerifyConfig {
                count,
                seed,
                max_m: max_m.into(),
                inject_fault,
            };
            verify(config, json)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
