//! Text and structured serialisations.
//!
//! Edge-list text: a header line `<n> <count>` optionally followed by
//! `loops: v1 v2 ...`, then one `u v` line per edge (`u -> v` per arc for
//! digraphs). Blank lines and lines starting with `#` are ignored.
//!
//! Structured objects are JSON documents mirroring the record types
//! ([`GraphRecord`](crate::graph::GraphRecord),
//! [`DigraphRecord`](crate::graph::DigraphRecord)).

use std::fmt::Write;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Digraph, Graph};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_num(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        message: format!("expected {what}, found '{tok}'"),
    })
}

struct Header {
    n: usize,
    count: usize,
    loops: Vec<usize>,
}

fn parse_header(line: usize, text: &str, allow_loops: bool) -> Result<Header> {
    let (head, loops_part) = match text.split_once("loops:") {
        Some((h, l)) => (h, Some(l)),
        None => (text, None),
    };
    let toks: Vec<&str> = head.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(Error::Parse {
            line,
            message: format!("header must be '<n> <count>', found '{text}'"),
        });
    }
    let n = parse_num(toks[0], line, "vertex count")?;
    let count = parse_num(toks[1], line, "edge count")?;
    let mut loops = Vec::new();
    if let Some(rest) = loops_part {
        if !allow_loops {
            return Err(Error::Parse {
                line,
                message: "digraphs cannot carry loops".into(),
            });
        }
        for tok in rest.split_whitespace() {
            let v = parse_num(tok, line, "loop vertex")?;
            if v >= n {
                return Err(Error::Parse {
                    line,
                    message: format!("loop vertex {v} out of range for n={n}"),
                });
            }
            loops.push(v);
        }
    }
    Ok(Header { n, count, loops })
}

fn check_pair(line: usize, u: usize, v: usize, n: usize) -> Result<()> {
    if let Some(bad) = [u, v].into_iter().find(|&x| x >= n) {
        return Err(Error::Parse {
            line,
            message: format!("endpoint {bad} out of range for n={n}"),
        });
    }
    if u == v {
        return Err(Error::Parse {
            line,
            message: format!("self-edge {u}-{u} (declare loops in the header)"),
        });
    }
    Ok(())
}

fn check_count(last_line: usize, declared: usize, found: usize) -> Result<()> {
    if declared != found {
        return Err(Error::Parse {
            line: last_line,
            message: format!("header declares {declared} edges but {found} were listed"),
        });
    }
    Ok(())
}

pub fn parse_graph_text(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty input".into(),
    })?;
    let header = parse_header(hl, header, true)?;
    let mut edges = Vec::with_capacity(header.count);
    let mut seen = std::collections::HashSet::new();
    let mut last = hl;
    for (ln, l) in lines {
        last = ln;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::Parse {
                line: ln,
                message: format!("expected 'u v', found '{l}'"),
            });
        }
        let u = parse_num(toks[0], ln, "vertex")?;
        let v = parse_num(toks[1], ln, "vertex")?;
        check_pair(ln, u, v, header.n)?;
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::Parse {
                line: ln,
                message: format!("duplicate edge {u} {v}"),
            });
        }
        edges.push((u, v));
    }
    check_count(last, header.count, edges.len())?;
    Graph::with_loops(header.n, edges, header.loops)
}

pub fn serialize_graph_text(g: &Graph) -> String {
    let mut out = format!("{} {}", g.n(), g.edge_count());
    if g.has_loops() {
        out.push_str(" loops:");
        for v in g.loop_vertices() {
            let _ = write!(out, " {v}");
        }
    }
    out.push('\n');
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_digraph_text(text: &str) -> Result<Digraph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty input".into(),
    })?;
    let header = parse_header(hl, header, false)?;
    let mut arcs = Vec::with_capacity(header.count);
    let mut seen = std::collections::HashSet::new();
    let mut last = hl;
    for (ln, l) in lines {
        last = ln;
        let Some((a, b)) = l.split_once("->") else {
            return Err(Error::Parse {
                line: ln,
                message: format!("expected 'u -> v', found '{l}'"),
            });
        };
        let u = parse_num(a.trim(), ln, "tail vertex")?;
        let v = parse_num(b.trim(), ln, "head vertex")?;
        check_pair(ln, u, v, header.n)?;
        if !seen.insert((u, v)) {
            return Err(Error::Parse {
                line: ln,
                message: format!("duplicate arc {u} -> {v}"),
            });
        }
        arcs.push((u, v));
    }
    check_count(last, header.count, arcs.len())?;
    Digraph::from_arcs(header.n, arcs)
}

pub fn serialize_digraph_text(d: &Digraph) -> String {
    let mut out = format!("{} {}\n", d.n(), d.arc_count());
    for (x, y) in d.arcs() {
        let _ = writeln!(out, "{x} -> {y}");
    }
    out
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("record types always serialise")
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Structured(e.to_string()))
}

fn looks_structured(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

/// Accepts either the edge-list text or the structured form.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if looks_structured(text) {
        from_json(text)
    } else {
        parse_graph_text(text)
    }
}

pub fn parse_digraph(text: &str) -> Result<Digraph> {
    if looks_structured(text) {
        from_json(text)
    } else {
        parse_digraph_text(text)
    }
}

pub fn graph_to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        let _ = writeln!(out, "  {v};");
    }
    for v in g.loop_vertices() {
        let _ = writeln!(out, "  {v} -- {v};");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

pub fn digraph_to_dot(d: &Digraph) -> String {
    let mut out = String::from("digraph D {\n");
    for v in 0..d.n() {
        let _ = writeln!(out, "  {v};");
    }
    for (x, y) in d.arcs() {
        let _ = writeln!(out, "  {x} -> {y};");
    }
    out.push_str("}\n");
    out
}
