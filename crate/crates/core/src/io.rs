//! Text formats: graph6, pattern names, circulant and block-circulant
//! listings, and feasibility table files.
//!
//! A record file holds any mix of records separated by their headers:
//!
//! ```text
//! # Paley graph on 13 vertices
//! circ n=13 c=2
//! 1 : 1 5
//! 2 : 2 3 4 6
//! blockcirc n=4 k=2 c=2
//! 1 1 1 :
//! 1 1 2 : 1
//! ...
//! Dhc
//! ```
//!
//! Lines starting with `#` and blank lines are ignored. Any other line that
//! is not part of a `circ`/`blockcirc` record is read as graph6.

use std::fmt::Write as _;

use crate::block::BlockCirculantColoring;
use crate::circulant::CirculantColoring;
use crate::error::{param, parse_err, Error, Result};
use crate::feasibility::{EdgeMaxTable, FeasibilityTables};
use crate::graph::{Color, ColoredCompleteGraph, UNCOLORED};
use crate::pattern::PatternSpec;

/// graph6 text of the color-1 graph.
pub fn encode_graph6(g: &ColoredCompleteGraph) -> String {
    let n = g.n();
    let mut out = String::new();
    if n < 63 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.color(i, j) == 1);
            bits += 1;
            if bits == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push(((acc << (6 - bits)) + 63) as char);
    }
    out
}

/// Reads one graph6 line as a two-coloring (non-edges get color 2).
pub fn decode_graph6(line: &str) -> Result<ColoredCompleteGraph> {
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.trim_end().as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_err(
                i,
                format!("byte {b:#04x} is not a graph6 character"),
            ));
        }
    }
    let (n, start) = match bytes {
        [] => return Err(parse_err(0, "empty graph6 line")),
        [126, 126, ..] => return Err(parse_err(0, "graph6 orders above 258047 are not supported")),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(parse_err(bytes.len(), "truncated graph6 order"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |a, &b| (a << 6) | (b - 63) as usize);
            (n, 4)
        }
        [b, ..] => ((b - 63) as usize, 1),
    };
    let need = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if bytes.len() != start + need {
        return Err(parse_err(
            bytes.len().min(start + need),
            format!(
                "graph6 body has {} bytes, expected {need} for n = {n}",
                bytes.len() - start
            ),
        ));
    }
    let mut g = ColoredCompleteGraph::new(n, 2).map_err(|e| parse_err(0, e.to_string()))?;
    let mut pos = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = bytes[start + pos / 6] - 63;
            let bit = (byte >> (5 - pos % 6)) & 1;
            g.set_color(i, j, if bit == 1 { 1 } else { 2 });
            pos += 1;
        }
    }
    Ok(g)
}

/// `K5`, `J6`, `C4`, `W7` or `K3,5`.
pub fn parse_pattern(text: &str) -> Result<PatternSpec> {
    let s = text.trim();
    let bad = || parse_err(0, format!("unrecognized pattern {s:?}"));
    let mut chars = s.chars();
    let kind = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
    let rest = chars.as_str();
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
    let p = match kind {
        'K' => match rest.split_once(',') {
            Some((a, b)) => PatternSpec::bipartite(num(a)?, num(b)?),
            None => PatternSpec::complete(num(rest)?),
        },
        'J' => PatternSpec::almost_complete(num(rest)?),
        'C' => PatternSpec::cycle(num(rest)?),
        'W' => PatternSpec::wheel(num(rest)?),
        _ => return Err(bad()),
    };
    p.map_err(|e| parse_err(0, e.to_string()))
}

/// Comma-separated pattern list; a purely numeric item completes the
/// preceding `K` item as the second part of a bipartite graph, so
/// `K3,5,J4` is `[K_{3,5}, J_4]`.
pub fn parse_pattern_list(text: &str) -> Result<Vec<PatternSpec>> {
    let mut items: Vec<String> = Vec::new();
    for tok in text.split(',').map(str::trim) {
        if tok.is_empty() {
            return Err(parse_err(0, format!("empty item in pattern list {text:?}")));
        }
        let numeric = tok.chars().all(|c| c.is_ascii_digit());
        match items.last_mut() {
            Some(prev) if numeric && prev.starts_with(['K', 'k']) && !prev.contains(',') => {
                prev.push(',');
                prev.push_str(tok);
            }
            _ => items.push(tok.to_string()),
        }
    }
    items.iter().map(|s| parse_pattern(s)).collect()
}

pub fn format_pattern_list(patterns: &[PatternSpec]) -> String {
    patterns
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn emit_circulant(c: &CirculantColoring) -> String {
    let mut out = format!("circ n={} c={}\n", c.n(), c.colors());
    for t in 1..=c.colors() as Color {
        let _ = write!(out, "{t} :");
        for d in c.class_reps(t) {
            let _ = write!(out, " {d}");
        }
        out.push('\n');
    }
    out
}

pub fn emit_blockcirc(b: &BlockCirculantColoring) -> String {
    let mut out = format!("blockcirc n={} k={} c={}\n", b.n(), b.k(), b.colors());
    for i in 0..b.k() {
        for j in i..b.k() {
            for t in 1..=b.colors() as Color {
                let _ = write!(out, "{} {} {t} :", i + 1, j + 1);
                for d in b.generating_set(i, j, t) {
                    let _ = write!(out, " {d}");
                }
                out.push('\n');
            }
        }
    }
    out
}

/// One record of a record file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Record {
    Circulant(CirculantColoring),
    Block(BlockCirculantColoring),
    Graph(ColoredCompleteGraph),
}

impl Record {
    pub fn to_graph(&self) -> Result<ColoredCompleteGraph> {
        match self {
            Record::Circulant(c) => c.realize(),
            Record::Block(b) => b.realize(),
            Record::Graph(g) => Ok(g.clone()),
        }
    }

    /// Text form; plain graphs are written as graph6.
    pub fn emit(&self) -> String {
        match self {
            Record::Circulant(c) => emit_circulant(c),
            Record::Block(b) => emit_blockcirc(b),
            Record::Graph(g) => encode_graph6(g) + "\n",
        }
    }
}

struct Line<'a> {
    offset: usize,
    text: &'a str,
}

fn content_lines(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let t = raw.trim();
        if !t.is_empty() && !t.starts_with('#') {
            let lead = raw.len() - raw.trim_start().len();
            out.push(Line {
                offset: offset + lead,
                text: t,
            });
        }
        offset += raw.len();
    }
    out
}

fn header_fields(line: &Line, keys: &[&str]) -> Result<Vec<usize>> {
    let mut vals = vec![None; keys.len()];
    let mut col = 0;
    for word in line.text.split_whitespace().skip(1) {
        col = line.text[col..].find(word).map_or(col, |p| col + p);
        let at = line.offset + col;
        let (key, val) = word
            .split_once('=')
            .ok_or_else(|| parse_err(at, format!("expected key=value, found {word:?}")))?;
        let idx = keys
            .iter()
            .position(|k| *k == key)
            .ok_or_else(|| parse_err(at, format!("unknown header field {key:?}")))?;
        let v = val
            .parse()
            .map_err(|_| parse_err(at, format!("bad value {val:?} for {key}")))?;
        vals[idx] = Some(v);
    }
    keys.iter()
        .zip(vals)
        .map(|(k, v)| v.ok_or_else(|| parse_err(line.offset, format!("header lacks {k}="))))
        .collect()
}

fn numbers(line: &Line, text: &str, what: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|w| {
            w.parse()
                .map_err(|_| parse_err(line.offset, format!("bad {what} {w:?} in {:?}", line.text)))
        })
        .collect()
}

fn is_header(text: &str) -> bool {
    let first = text.split_whitespace().next().unwrap_or("");
    first == "circ" || first == "blockcirc"
}

/// Parses a whole record file.
pub fn parse_records(text: &str) -> Result<Vec<Record>> {
    let lines = content_lines(text);
    let mut out = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let line = &lines[i];
        let first = line.text.split_whitespace().next().unwrap_or("");
        if first == "circ" || first == "blockcirc" {
            let mut end = i + 1;
            while end < lines.len() && !is_header(lines[end].text) && lines[end].text.contains(':')
            {
                end += 1;
            }
            let body = &lines[i + 1..end];
            out.push(if first == "circ" {
                Record::Circulant(parse_circ_body(line, body)?)
            } else {
                Record::Block(parse_block_body(line, body)?)
            });
            i = end;
        } else {
            let g = decode_graph6(line.text).map_err(|e| match e {
                Error::Parse { offset, msg } => parse_err(line.offset + offset, msg),
                other => other,
            })?;
            out.push(Record::Graph(g));
            i += 1;
        }
    }
    Ok(out)
}

pub fn parse_circulant(text: &str) -> Result<CirculantColoring> {
    match single(parse_records(text)?)? {
        Record::Circulant(c) => Ok(c),
        _ => Err(parse_err(0, "expected a circ record")),
    }
}

pub fn parse_blockcirc(text: &str) -> Result<BlockCirculantColoring> {
    match single(parse_records(text)?)? {
        Record::Block(b) => Ok(b),
        _ => Err(parse_err(0, "expected a blockcirc record")),
    }
}

fn single(mut records: Vec<Record>) -> Result<Record> {
    if records.len() != 1 {
        return Err(parse_err(
            0,
            format!("expected one record, found {}", records.len()),
        ));
    }
    Ok(records.pop().expect("one record"))
}

fn parse_circ_body(header: &Line, body: &[Line]) -> Result<CirculantColoring> {
    let v = header_fields(header, &["n", "c"])?;
    let (n, c) = (v[0], v[1]);
    let mut col =
        CirculantColoring::new(n, c).map_err(|e| parse_err(header.offset, e.to_string()))?;
    for line in body {
        let (lhs, rhs) = line.text.split_once(':').expect("body lines contain ':'");
        let t = numbers(line, lhs, "color")?;
        let [t] = t[..] else {
            return Err(parse_err(line.offset, "expected `color : classes`"));
        };
        if t == 0 || t > c {
            return Err(parse_err(line.offset, format!("color {t} outside 1..={c}")));
        }
        for x in numbers(line, rhs, "difference")? {
            let d = crate::circulant::class_of(x, n);
            if d == 0 {
                return Err(parse_err(
                    line.offset,
                    format!("difference {x} is 0 mod {n}"),
                ));
            }
            let old = col.get(d);
            if old != UNCOLORED && old != t as Color {
                return Err(parse_err(
                    line.offset,
                    format!("class {d} assigned colors {old} and {t}"),
                ));
            }
            col.set(d, t as Color);
        }
    }
    if let Some(d) = (1..=col.class_count()).find(|&d| col.get(d) == UNCOLORED) {
        return Err(parse_err(header.offset, format!("class {d} has no color")));
    }
    Ok(col)
}

fn parse_block_body(header: &Line, body: &[Line]) -> Result<BlockCirculantColoring> {
    let v = header_fields(header, &["n", "k", "c"])?;
    let (n, k, c) = (v[0], v[1], v[2]);
    let mut b = BlockCirculantColoring::new(n, k, c)
        .map_err(|e| parse_err(header.offset, e.to_string()))?;
    let m = b.m();
    for line in body {
        let (lhs, rhs) = line.text.split_once(':').expect("body lines contain ':'");
        let idx = numbers(line, lhs, "index")?;
        let [i, j, t] = idx[..] else {
            return Err(parse_err(line.offset, "expected `i j color : differences`"));
        };
        if i == 0 || j == 0 || i > j || j > k {
            return Err(parse_err(
                line.offset,
                format!("block ({i},{j}) is not an upper block of {k}"),
            ));
        }
        if t == 0 || t > c {
            return Err(parse_err(line.offset, format!("color {t} outside 1..={c}")));
        }
        for d in numbers(line, rhs, "difference")? {
            if d >= m || (i == j && d == 0) {
                return Err(parse_err(
                    line.offset,
                    format!("difference {d} invalid in block ({i},{j}) with m = {m}"),
                ));
            }
            let old = b.get(i - 1, j - 1, d);
            if old != UNCOLORED && old != t as Color {
                return Err(parse_err(
                    line.offset,
                    format!("block ({i},{j}) difference {d} assigned colors {old} and {t}"),
                ));
            }
            b.set(i - 1, j - 1, d, t as Color);
        }
    }
    if let Some(s) = b
        .slots()
        .into_iter()
        .find(|s| b.get(s.i, s.j, s.d) == UNCOLORED)
    {
        return Err(parse_err(
            header.offset,
            format!(
                "block ({},{}) difference {} has no color",
                s.i + 1,
                s.j + 1,
                s.d
            ),
        ));
    }
    Ok(b)
}

/// Reads `E1 n value`, `E2 n value`, `bound1 v` and `bound2 v` lines for
/// the `(J_k, J_l)` problem.
pub fn parse_tables(text: &str, k: usize, l: usize) -> Result<FeasibilityTables> {
    let mut e1 = EdgeMaxTable::new(k - 1, l);
    let mut e2 = EdgeMaxTable::new(k, l - 1);
    let (mut bound1, mut bound2) = (None, None);
    for line in content_lines(text) {
        let words: Vec<&str> = line.text.split_whitespace().collect();
        let num = |w: &str| -> Result<u64> {
            w.parse()
                .map_err(|_| parse_err(line.offset, format!("bad number {w:?}")))
        };
        let wrap = |e: Error| parse_err(line.offset, e.to_string());
        match words[..] {
            ["E1", n, v] => e1.insert(num(n)? as usize, num(v)?).map_err(wrap)?,
            ["E2", n, v] => e2.insert(num(n)? as usize, num(v)?).map_err(wrap)?,
            ["bound1", v] => bound1 = Some(num(v)? as usize),
            ["bound2", v] => bound2 = Some(num(v)? as usize),
            _ => {
                return Err(parse_err(
                    line.offset,
                    format!("unrecognized table line {:?}", line.text),
                ))
            }
        }
    }
    Ok(FeasibilityTables {
        k,
        l,
        e1,
        e2,
        bound1: bound1.ok_or_else(|| parse_err(0, "table file lacks bound1"))?,
        bound2: bound2.ok_or_else(|| parse_err(0, "table file lacks bound2"))?,
    })
}

pub fn emit_tables(t: &FeasibilityTables) -> String {
    let mut out = String::new();
    for (n, e) in t.e1.entries() {
        let _ = writeln!(out, "E1 {n} {e}");
    }
    for (n, e) in t.e2.entries() {
        let _ = writeln!(out, "E2 {n} {e}");
    }
    let _ = writeln!(out, "bound1 {}", t.bound1);
    let _ = writeln!(out, "bound2 {}", t.bound2);
    out
}

/// The `(k, l)` of a `J_k, J_l` pattern pair, as the feasibility tools need.
pub fn almost_complete_pair(patterns: &[PatternSpec]) -> Result<(usize, usize)> {
    match patterns {
        [PatternSpec::AlmostComplete(k), PatternSpec::AlmostComplete(l)] => Ok((*k, *l)),
        _ => Err(param(format!(
            "feasibility needs two J patterns, got {}",
            format_pattern_list(patterns)
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_small_cases() {
        let one = ColoredCompleteGraph::new(1, 2).unwrap();
        assert_eq!(encode_graph6(&one), "@");
        let k3 = ColoredCompleteGraph::monochromatic(3, 2, 1).unwrap();
        let s = encode_graph6(&k3);
        assert_eq!(s, "Bw");
        assert_eq!(decode_graph6(&s).unwrap(), k3);
        // the 5-cycle 0-1-2-3-4
        let c5 =
            ColoredCompleteGraph::from_color1_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
                .unwrap();
        assert_eq!(encode_graph6(&c5), "Dhc");
    }

    #[test]
    fn graph6_large_header() {
        let mut g = ColoredCompleteGraph::new(70, 2).unwrap();
        g.set_color(3, 69, 1);
        g.fill_uncolored(2);
        let s = encode_graph6(&g);
        assert!(s.starts_with("~?@E"));
        assert_eq!(decode_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_errors_carry_offsets() {
        assert!(matches!(
            decode_graph6("D h"),
            Err(Error::Parse { offset: 1, .. })
        ));
        assert!(matches!(decode_graph6("Dhcc"), Err(Error::Parse { .. })));
        assert!(matches!(decode_graph6(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn patterns() {
        assert_eq!(parse_pattern("J4").unwrap(), PatternSpec::AlmostComplete(4));
        assert_eq!(parse_pattern("K3,5").unwrap(), PatternSpec::Bipartite(3, 5));
        assert_eq!(parse_pattern("W7").unwrap(), PatternSpec::Wheel(7));
        assert!(parse_pattern("J2").is_err());
        assert!(parse_pattern("X4").is_err());
        assert!(parse_pattern("K").is_err());
        assert_eq!(
            parse_pattern_list("K3,5,J4").unwrap(),
            vec![PatternSpec::Bipartite(3, 5), PatternSpec::AlmostComplete(4)]
        );
        assert_eq!(
            parse_pattern_list("K3,K5").unwrap(),
            vec![PatternSpec::Complete(3), PatternSpec::Complete(5)]
        );
        assert!(parse_pattern_list("J4,,J5").is_err());
    }

    #[test]
    fn circ_round_trip() {
        let text = "circ n=13 c=2\n1 : 1 5\n2 : 2 3 4 6\n";
        let c = parse_circulant(text).unwrap();
        assert_eq!(c.color_set(1), vec![1, 5, 8, 12]);
        assert_eq!(emit_circulant(&c), text);
    }

    #[test]
    fn blockcirc_round_trip_and_conflicts() {
        let b = BlockCirculantColoring::from_color1_sets(4, 2, &[((0, 1), vec![0])]).unwrap();
        let text = emit_blockcirc(&b);
        assert_eq!(parse_blockcirc(&text).unwrap(), b);
        let bad = text.replace("1 2 2 : 1", "1 2 2 : 0 1");
        let err = parse_blockcirc(&bad).unwrap_err().to_string();
        assert!(err.contains("block (1,2) difference 0"), "{err}");
        let missing = text.replace("1 2 2 : 1\n", "");
        assert!(parse_blockcirc(&missing).is_err());
    }

    #[test]
    fn mixed_records() {
        let text = "# comment\n\ncirc n=5 c=2\n1 : 1\n2 : 2\nDhc\n";
        let recs = parse_records(text).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].to_graph().unwrap(), recs[1].to_graph().unwrap());
        let err = parse_records("circ n=5 c=2\n1 : 1\n2 : 2\nD!c\n").unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 26, .. }), "{err:?}");
    }

    #[test]
    fn tables_round_trip() {
        let t = FeasibilityTables::builtin(5, 6).unwrap();
        let parsed = parse_tables(&emit_tables(&t), 5, 6).unwrap();
        assert_eq!(parsed, t);
        assert!(parse_tables("E1 3 3\n", 5, 6).is_err());
        assert!(parse_tables("E3 3 3\nbound1 1\nbound2 1\n", 5, 6).is_err());
    }
}
