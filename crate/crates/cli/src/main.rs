use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use circramsey::extend::{extend_by_one, local_search};
use circramsey::feasibility::{feasibility_verdict, FeasibilityTables};
use circramsey::io::{
    almost_complete_pair, emit_blockcirc, emit_circulant, parse_records, parse_tables, Record,
};
use circramsey::search::{enumerate_block_circulant, enumerate_circulant, SearchJob};
use circramsey::verify::{dedupe_indices, enumerate_all_small, verify_ramsey, Verification};
use circramsey::{encode_graph6, parse_pattern_list, ColoredCompleteGraph, PatternSpec};

#[derive(Parser)]
#[command(
    name = "circramsey",
    version,
    about = "Circulant and block-circulant Ramsey colorings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Debug)]
struct Patterns(Vec<PatternSpec>);

fn patterns(s: &str) -> Result<Patterns, String> {
    parse_pattern_list(s)
        .map(Patterns)
        .map_err(|e| e.to_string())
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Circ,
    Block,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Native circulant / block-circulant text.
    Bc,
    /// graph6 of the color-1 graph (two colors only).
    G6,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate circulant or block-circulant Ramsey colorings.
    Gen {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        n: usize,
        /// Number of blocks (block mode).
        #[arg(long)]
        blocks: Option<usize>,
        /// Number of colors; must match the number of patterns.
        #[arg(long)]
        colors: Option<usize>,
        /// Forbidden pattern per color, e.g. `K3,K5` or `J4,K3,5`.
        #[arg(long, value_parser = patterns)]
        avoid: Patterns,
        /// Split the search into this many parts.
        #[arg(long, default_value_t = 1)]
        split: u64,
        /// Part to run, in `0..split`.
        #[arg(long, default_value_t = 0)]
        part: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "bc")]
        format: Format,
    },
    /// Check every coloring in a file; exit 1 if any contains a forbidden pattern.
    Verify {
        #[arg(long, value_parser = patterns)]
        avoid: Patterns,
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Replace every circulant or block-circulant record by its canonical form.
    Canon {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Keep one record per isomorphism class, in input order.
    Dedupe {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One-vertex extensions, or local search with --remove/--add.
    Extend {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long, value_parser = patterns)]
        avoid: Patterns,
        #[arg(long, requires = "add")]
        remove: Option<usize>,
        #[arg(long, requires = "remove")]
        add: Option<usize>,
        /// Drop isomorphic duplicates from the output.
        #[arg(long)]
        dedupe: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Degree-sum feasibility test for a (Jk, Jl) problem.
    Feas {
        #[arg(long, value_parser = patterns)]
        avoid: Patterns,
        #[arg(long)]
        n: usize,
        /// Table file; built-in tables are used when omitted.
        #[arg(long)]
        tables: Option<PathBuf>,
    },
    /// Count all Ramsey colorings of small complete graphs by color-1 edges.
    CountSmall {
        #[arg(long, value_parser = patterns)]
        avoid: Patterns,
        #[arg(long)]
        max_n: usize,
    },
}

fn read_input(path: &Option<PathBuf>) -> Result<String> {
    match path {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .context("reading standard input")?;
            Ok(s)
        }
    }
}

fn read_records(path: &Option<PathBuf>) -> Result<Vec<Record>> {
    let text = read_input(path)?;
    let name = path
        .as_deref()
        .map_or("<stdin>".into(), |p: &Path| p.display().to_string());
    parse_records(&text).with_context(|| format!("parsing {name}"))
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => io::stdout()
            .write_all(text.as_bytes())
            .context("writing standard output"),
    }
}

fn graph_line(g: &ColoredCompleteGraph) -> Result<String> {
    if g.colors() != 2 {
        bail!("graph6 output needs two colors, have {}", g.colors());
    }
    Ok(encode_graph6(g) + "\n")
}

#[allow(clippy::too_many_arguments)]
fn gen(
    mode: Mode,
    n: usize,
    blocks: Option<usize>,
    colors: Option<usize>,
    avoid: Vec<PatternSpec>,
    split: u64,
    part: u64,
    out: Option<PathBuf>,
    format: Format,
) -> Result<ExitCode> {
    if let Some(c) = colors {
        if c != avoid.len() {
            bail!("--colors {c} but {} patterns given", avoid.len());
        }
    }
    if format == Format::G6 && avoid.len() != 2 {
        bail!("graph6 output needs two colors");
    }
    let k = match (mode, blocks) {
        (Mode::Circ, None | Some(1)) => 1,
        (Mode::Circ, Some(b)) => bail!("circulant mode has one block, got --blocks {b}"),
        (Mode::Block, Some(b)) => b,
        (Mode::Block, None) => bail!("block mode needs --blocks"),
    };
    let job = SearchJob::new(n, k, avoid)?.with_split(split, part)?;
    let start = Instant::now();
    let mut text = String::new();
    let mut failure = None;
    let stats = match mode {
        Mode::Circ => enumerate_circulant(&job, &mut |c| match format {
            Format::Bc => text.push_str(&emit_circulant(c)),
            Format::G6 => match c.realize() {
                Ok(g) => {
                    text.push_str(&encode_graph6(&g));
                    text.push('\n');
                }
                Err(e) => failure = Some(e),
            },
        })?,
        Mode::Block => enumerate_block_circulant(&job, &mut |b| match format {
            Format::Bc => text.push_str(&emit_blockcirc(b)),
            Format::G6 => match b.realize() {
                Ok(g) => {
                    text.push_str(&encode_graph6(&g));
                    text.push('\n');
                }
                Err(e) => failure = Some(e),
            },
        })?,
    };
    if let Some(e) = failure {
        return Err(e.into());
    }
    write_output(&out, &text)?;
    eprintln!("{stats} time={:.3}s", start.elapsed().as_secs_f64());
    Ok(ExitCode::SUCCESS)
}

fn verify(avoid: Vec<PatternSpec>, input: Option<PathBuf>) -> Result<ExitCode> {
    let records = read_records(&input)?;
    let mut invalid = 0;
    for (i, r) in records.iter().enumerate() {
        match verify_ramsey(&r.to_graph()?, &avoid)? {
            Verification::Valid => println!("{} VALID", i + 1),
            Verification::Invalid(w) => {
                invalid += 1;
                println!("{} INVALID {w}", i + 1);
            }
        }
    }
    eprintln!("{} records, {invalid} invalid", records.len());
    Ok(if invalid == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn canon(input: Option<PathBuf>, out: Option<PathBuf>) -> Result<ExitCode> {
    let mut text = String::new();
    for (i, r) in read_records(&input)?.into_iter().enumerate() {
        let c = match r {
            Record::Circulant(c) => Record::Circulant(c.unit_canonical_form()),
            Record::Block(b) => Record::Block(b.canonicalize()?),
            Record::Graph(_) => bail!(
                "record {} is a plain graph; only circulant records have a canonical form",
                i + 1
            ),
        };
        text.push_str(&c.emit());
    }
    write_output(&out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn dedupe(input: Option<PathBuf>, out: Option<PathBuf>) -> Result<ExitCode> {
    let records = read_records(&input)?;
    let graphs = records
        .iter()
        .map(Record::to_graph)
        .collect::<circramsey::Result<Vec<_>>>()?;
    let keep = dedupe_indices(&graphs)?;
    let text: String = keep.iter().map(|&i| records[i].emit()).collect();
    write_output(&out, &text)?;
    eprintln!("{} records, {} classes", records.len(), keep.len());
    Ok(ExitCode::SUCCESS)
}

fn extend(
    input: Option<PathBuf>,
    avoid: Vec<PatternSpec>,
    remove: Option<usize>,
    add: Option<usize>,
    dedupe: bool,
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    let mut found = Vec::new();
    for r in read_records(&input)? {
        let g = r.to_graph()?;
        match (remove, add) {
            (Some(t), Some(s)) => local_search(&g, &avoid, t, s, &mut |h| found.push(h.clone()))?,
            _ => extend_by_one(&g, &avoid, &mut |h| found.push(h.clone()))?,
        };
    }
    let total = found.len();
    if dedupe {
        found = dedupe_indices(&found)?
            .into_iter()
            .map(|i| found[i].clone())
            .collect();
    }
    let text = found.iter().map(graph_line).collect::<Result<String>>()?;
    write_output(&out, &text)?;
    eprintln!("{total} colorings, {} written", found.len());
    Ok(ExitCode::SUCCESS)
}

fn feas(avoid: Vec<PatternSpec>, n: usize, tables: Option<PathBuf>) -> Result<ExitCode> {
    let (k, l) = almost_complete_pair(&avoid)?;
    let t = match tables {
        Some(p) => parse_tables(&read_input(&Some(p.clone()))?, k, l)
            .with_context(|| format!("parsing {}", p.display()))?,
        None => FeasibilityTables::builtin(k, l)
            .with_context(|| format!("no built-in tables for (J{k}, J{l}); pass --tables"))?,
    };
    let report = feasibility_verdict(n, &t)?;
    print!("{report}");
    Ok(if report.verdict.is_infeasible() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn count_small(avoid: Vec<PatternSpec>, max_n: usize) -> Result<ExitCode> {
    let census = enumerate_all_small(&avoid, max_n)?;
    let mut text = String::new();
    for (n, e, count) in census.rows() {
        text.push_str(&format!("{n} {e} {count}\n"));
    }
    for n in 1..=max_n {
        text.push_str(&format!("# total {n} {}\n", census.total(n)));
    }
    write_output(&None, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen {
            mode,
            n,
            blocks,
            colors,
            avoid,
            split,
            part,
            out,
            format,
        } => gen(mode, n, blocks, colors, avoid.0, split, part, out, format),
        Command::Verify { avoid, input } => verify(avoid.0, input),
        Command::Canon { input, out } => canon(input, out),
        Command::Dedupe { input, out } => dedupe(input, out),
        Command::Extend {
            input,
            avoid,
            remove,
            add,
            dedupe,
            out,
        } => extend(input, avoid.0, remove, add, dedupe, out),
        Command::Feas { avoid, n, tables } => feas(avoid.0, n, tables),
        Command::CountSmall { avoid, max_n } => count_small(avoid.0, max_n),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
