use std::collections::BTreeSet;
use std::io::{self, Read, Write};
use std::path::Path;

use graphprod::arcshift::SetColoring;
use graphprod::graph::complete_digraph;
use graphprod::{catalog, format, Coloring, Digraph, Graph};
use thiserror::Error;

use crate::args::Format;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] graphprod::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0} claim(s) failed")]
    ClaimFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_cap() => 2,
            CliError::ClaimFailed(_) => 3,
            _ => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn read_source(src: &str) -> CliResult<Option<String>> {
    let io_err = |source| CliError::Io {
        path: src.to_string(),
        source,
    };
    if src == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(io_err)?;
        return Ok(Some(text));
    }
    if Path::new(src).is_file() {
        return std::fs::read_to_string(src).map(Some).map_err(io_err);
    }
    if src.contains(['/', '\\', '.']) {
        return Err(io_err(io::Error::new(
            io::ErrorKind::NotFound,
            "no such file",
        )));
    }
    Ok(None)
}

/// File path, `-` for stdin, catalog id or family shorthand.
pub fn load_graph(src: &str) -> CliResult<Graph> {
    match read_source(src)? {
        Some(text) => Ok(format::parse_graph(&text)?),
        None => Ok(catalog::resolve(src)?),
    }
}

/// File path, `-` for stdin, or `K<n>` for the complete digraph.
pub fn load_digraph(src: &str) -> CliResult<Digraph> {
    if let Some(text) = read_source(src)? {
        return Ok(format::parse_digraph(&text)?);
    }
    match src.strip_prefix('K').map(str::parse::<usize>) {
        Some(Ok(n)) => Ok(complete_digraph(n)?),
        _ => Err(usage(format!(
            "unknown digraph '{src}' (give a file, '-' for stdin, or K<n>)"
        ))),
    }
}

/// Inline text when `arg` is not a readable file.
fn arg_text(arg: &str) -> CliResult<String> {
    Ok(match arg {
        "-" => read_source(arg)?.unwrap_or_default(),
        _ if Path::new(arg).is_file() => read_source(arg)?.unwrap_or_default(),
        _ => arg.to_string(),
    })
}

fn is_json(text: &str) -> bool {
    matches!(text.trim_start().chars().next(), Some('{' | '['))
}

fn parse_value(tok: &str, line: usize, base: usize) -> CliResult<usize> {
    let v: usize = tok
        .parse()
        .map_err(|_| usage(format!("line {line}: expected a number, found '{tok}'")))?;
    v.checked_sub(base)
        .ok_or_else(|| usage(format!("line {line}: {v} is below the first index {base}")))
}

/// Rows of numbers, each either bare or prefixed by `<index>:`. Bare rows are
/// placed in order; `#` lines are skipped.
fn parse_rows(text: &str, base: usize) -> CliResult<Vec<Vec<usize>>> {
    let mut rows: Vec<Option<Vec<usize>>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (slot, body) = match line.split_once(':') {
            Some((idx, body)) => (parse_value(idx.trim(), i + 1, base)?, body),
            None => (rows.len(), line),
        };
        let values = body
            .split_whitespace()
            .map(|t| parse_value(t, i + 1, base))
            .collect::<CliResult<Vec<_>>>()?;
        if rows.len() <= slot {
            rows.resize(slot + 1, None);
        }
        if rows[slot].replace(values).is_some() {
            return Err(usage(format!(
                "line {}: row {} given twice",
                i + 1,
                slot + base
            )));
        }
    }
    rows.into_iter()
        .enumerate()
        .map(|(i, r)| r.ok_or_else(|| usage(format!("row {} is missing", i + base))))
        .collect()
}

/// JSON `{"colors": [..], "k": k}` or a bare array, else text: one colour per
/// token, or `<index>: <colour>` rows.
pub fn parse_coloring(arg: &str, base: usize) -> CliResult<Coloring> {
    let text = arg_text(arg)?;
    if is_json(&text) {
        if text.trim_start().starts_with('[') {
            return Ok(Coloring::from_colors(format::from_json(&text)?));
        }
        return Ok(format::from_json(&text)?);
    }
    let colors = if text.contains(':') {
        let rows = parse_rows(&text, base)?;
        if let Some(i) = rows.iter().position(|r| r.len() != 1) {
            return Err(usage(format!(
                "row {} must hold exactly one colour",
                i + base
            )));
        }
        rows.into_iter().map(|r| r[0]).collect()
    } else {
        parse_rows(&text, base)?.into_iter().flatten().collect()
    };
    Ok(Coloring::from_colors(colors))
}

/// JSON set colouring (or array of arrays), else one row of colours per vertex.
pub fn parse_sets(arg: &str, base: usize, k: Option<usize>) -> CliResult<SetColoring> {
    let text = arg_text(arg)?;
    let mut sets = if is_json(&text) && text.trim_start().starts_with('{') {
        format::from_json::<SetColoring>(&text)?
    } else {
        let rows: Vec<Vec<usize>> = if is_json(&text) {
            format::from_json(&text)?
        } else {
            parse_rows(&text, base)?
        };
        let sets: Vec<BTreeSet<usize>> =
            rows.into_iter().map(|r| r.into_iter().collect()).collect();
        let max = sets.iter().flatten().map(|&c| c + 1).max().unwrap_or(0);
        let size = sets.first().map(BTreeSet::len);
        SetColoring { sets, k: max, size }
    };
    if let Some(k) = k {
        sets.k = k;
    }
    Ok(sets)
}

/// Everything a subcommand prints, already rendered for the chosen format.
pub struct Output {
    pub text: String,
}

pub fn graph_output(g: &Graph, fmt: Format) -> Output {
    Output {
        text: match fmt {
            Format::Text => format::serialize_graph_text(g),
            Format::Json => format::to_json(g) + "\n",
            Format::Dot => format::graph_to_dot(g),
        },
    }
}

pub fn digraph_output(d: &Digraph, fmt: Format) -> Output {
    Output {
        text: match fmt {
            Format::Text => format::serialize_digraph_text(d),
            Format::Json => format::to_json(d) + "\n",
            Format::Dot => format::digraph_to_dot(d),
        },
    }
}

/// Text or JSON payload for non-graph results.
pub fn report_output(fmt: Format, text: String, json: impl serde::Serialize) -> CliResult<Output> {
    match fmt {
        Format::Text => Ok(Output { text }),
        Format::Json => Ok(Output {
            text: format::to_json(&json) + "\n",
        }),
        Format::Dot => Err(usage(
            "--format dot applies only to graph and digraph output",
        )),
    }
}

/// Writes to stdout; a closed pipe is not an error.
pub fn emit(out: &Output) -> CliResult<()> {
    let mut stdout = io::stdout().lock();
    match stdout
        .write_all(out.text.as_bytes())
        .and_then(|_| stdout.flush())
    {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(CliError::Io {
            path: "stdout".into(),
            source: e,
        }),
        _ => Ok(()),
    }
}
