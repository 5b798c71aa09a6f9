//! Text formats: edge lists, graph6, build scripts and colouring sidecars.

use std::fmt::Write as _;

use critset_core::unicyclic::{BuildScript, ColoredUnicyclic, Step};
use critset_core::{Graph, VertexSet};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error("graph6 byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },
    #[error("script line {line}: {message}")]
    Script { line: usize, message: String },
    #[error("coloring: {0}")]
    Coloring(String),
    #[error("empty input")]
    Empty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

impl GraphFormat {
    pub fn name(self) -> &'static str {
        match self {
            GraphFormat::EdgeList => "edge-list",
            GraphFormat::Graph6 => "graph6",
        }
    }
}

fn is_skippable(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('#')
}

/// Edge list when the first meaningful line has two fields, graph6 otherwise.
pub fn detect_format(text: &str) -> GraphFormat {
    match text.lines().find(|l| !is_skippable(l)) {
        Some(l) if l.split_whitespace().count() >= 2 => GraphFormat::EdgeList,
        _ => GraphFormat::Graph6,
    }
}

pub fn parse_graph(text: &str, format: Option<GraphFormat>) -> Result<(Graph, GraphFormat), FormatError> {
    let format = format.unwrap_or_else(|| detect_format(text));
    let g = match format {
        GraphFormat::EdgeList => parse_edge_list(text)?,
        GraphFormat::Graph6 => {
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .ok_or(FormatError::Empty)?;
            parse_graph6(line.trim())?
        }
    };
    Ok((g, format))
}

/// Parses `n m` followed by `m` lines `u v` with `0 <= u < v < n`. Lines
/// starting with `#` and blank lines are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !is_skippable(l));
    let err = |line, message: String| FormatError::EdgeList { line, message };
    let (hline, header) = lines.next().ok_or(FormatError::Empty)?;
    let [n, m] = two_numbers(header).map_err(|e| err(hline, format!("header: {e}")))?;
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        let [u, v] = two_numbers(text).map_err(|e| err(line, e))?;
        if u == v {
            return Err(err(line, format!("self-loop at vertex {u}")));
        }
        if u > v {
            return Err(err(line, format!("expected u < v, got {u} {v}")));
        }
        if v >= n {
            return Err(err(line, format!("vertex {v} out of range for n = {n}")));
        }
        if !seen.insert((u, v)) {
            return Err(err(line, format!("duplicate edge {u} {v}")));
        }
        if edges.len() == m {
            return Err(err(line, format!("more than the declared {m} edges")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(err(hline, format!("declared {m} edges, found {}", edges.len())));
    }
    Ok(Graph::new(n, edges).expect("edges validated"))
}

fn two_numbers(line: &str) -> Result<[usize; 2], String> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(format!("expected two integers, found {} fields", fields.len()));
    }
    let parse = |s: &str| s.parse::<usize>().map_err(|_| format!("not a non-negative integer: {s:?}"));
    Ok([parse(fields[0])?, parse(fields[1])?])
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

const GRAPH6_HEADER: &str = ">>graph6<<";
const GRAPH6_MAX: usize = 68_719_476_735;

pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        assert!(n <= GRAPH6_MAX, "graph too large for graph6");
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Parses one graph6 string; an optional `>>graph6<<` prefix is stripped.
/// Error offsets count bytes of the given string.
pub fn parse_graph6(s: &str) -> Result<Graph, FormatError> {
    let (skip, body) = match s.strip_prefix(GRAPH6_HEADER) {
        Some(rest) => (GRAPH6_HEADER.len(), rest.as_bytes()),
        None => (0, s.as_bytes()),
    };
    let err = |offset: usize, message: String| FormatError::Graph6 {
        offset: skip + offset,
        message,
    };
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(i, format!("byte {b:#04x} outside 63..=126")));
        }
    }
    let value = |range: std::ops::Range<usize>| -> Result<usize, FormatError> {
        if body.len() < range.end {
            return Err(err(body.len(), "truncated size header".into()));
        }
        Ok(body[range].iter().fold(0, |acc, &b| acc << 6 | (b - 63) as usize))
    };
    let (n, start) = match body.first() {
        None => return Err(err(0, "empty graph6 string".into())),
        Some(&126) if body.get(1) == Some(&126) => (value(2..8)?, 8),
        Some(&126) => (value(1..4)?, 4),
        Some(&b) => ((b - 63) as usize, 1),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = start + bits.div_ceil(6);
    if body.len() != expected {
        return Err(err(
            body.len().min(expected),
            format!("expected {expected} bytes for n = {n}, found {}", body.len()),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[start + k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = body[expected - 1] - 63;
        if last & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(err(expected - 1, "nonzero padding bits".into()));
        }
    }
    Ok(Graph::new(n, edges).expect("graph6 edges are simple"))
}

/// A build script: `cycle k` first, then `p2 v` or `leaf v` steps.
pub fn parse_script(text: &str) -> Result<ParsedScript, FormatError> {
    let err = |line, message: String| FormatError::Script { line, message };
    let mut cycle = None;
    let mut steps = Vec::new();
    let mut lines = Vec::new();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        if is_skippable(raw) {
            continue;
        }
        let fields: Vec<&str> = raw.split_whitespace().collect();
        let [word, arg] = fields[..] else {
            return Err(err(line, format!("expected `<directive> <integer>`, got {:?}", raw.trim())));
        };
        let arg: usize = arg
            .parse()
            .map_err(|_| err(line, format!("not a non-negative integer: {arg:?}")))?;
        match (word, cycle) {
            ("cycle", None) => cycle = Some(arg),
            ("cycle", Some(_)) => return Err(err(line, "second `cycle` directive".into())),
            (_, None) => return Err(err(line, "script must start with `cycle k`".into())),
            ("p2", Some(_)) => {
                steps.push(Step::AttachPath2(arg));
                lines.push(line);
            }
            ("leaf", Some(_)) => {
                steps.push(Step::AttachLeaf(arg));
                lines.push(line);
            }
            (other, _) => return Err(err(line, format!("unknown directive {other:?}"))),
        }
    }
    let cycle_length = cycle.ok_or_else(|| err(last.max(1), "missing `cycle k`".into()))?;
    Ok(ParsedScript {
        script: BuildScript {
            cycle_length,
            steps,
        },
        step_lines: lines,
    })
}

/// A script plus the source line of each step, for error messages.
#[derive(Clone, Debug)]
pub struct ParsedScript {
    pub script: BuildScript,
    pub step_lines: Vec<usize>,
}

pub fn write_script(script: &BuildScript) -> String {
    let mut out = format!("cycle {}\n", script.cycle_length);
    for step in &script.steps {
        match step {
            Step::AttachPath2(v) => writeln!(out, "p2 {v}").unwrap(),
            Step::AttachLeaf(v) => writeln!(out, "leaf {v}").unwrap(),
        }
    }
    out
}

/// The colouring sidecar written next to generated graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub n: usize,
    pub cycle: Vec<usize>,
    pub blue: Vec<usize>,
    pub red: Vec<usize>,
    pub black: Vec<usize>,
}

impl From<&ColoredUnicyclic> for Coloring {
    fn from(c: &ColoredUnicyclic) -> Self {
        Coloring {
            n: c.graph.order(),
            cycle: c.cycle.clone(),
            blue: c.blue.to_vec(),
            red: c.red.to_vec(),
            black: c.black.to_vec(),
        }
    }
}

impl Coloring {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        let c: Coloring = serde_json::from_str(text).map_err(|e| FormatError::Coloring(e.to_string()))?;
        let mut all: Vec<usize> = c.blue.iter().chain(&c.red).chain(&c.black).copied().collect();
        all.sort_unstable();
        if all != (0..c.n).collect::<Vec<_>>() {
            return Err(FormatError::Coloring("colour classes do not partition 0..n".into()));
        }
        Ok(c)
    }

    pub fn class(&self, members: &[usize]) -> VertexSet {
        VertexSet::from_members(self.n, members.iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_known_vector() {
        let g = Graph::new(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(write_graph6(&g), "DQc");
        assert_eq!(parse_graph6("DQc").unwrap(), g);
        assert_eq!(parse_graph6(">>graph6<<DQc").unwrap(), g);
    }

    #[test]
    fn graph6_small_orders() {
        assert_eq!(write_graph6(&Graph::empty(0)), "?");
        assert_eq!(write_graph6(&Graph::empty(1)), "@");
        assert_eq!(write_graph6(&Graph::complete(2)), "A_");
        assert_eq!(parse_graph6("?").unwrap(), Graph::empty(0));
    }

    #[test]
    fn graph6_large_header() {
        let g = Graph::path(70);
        let s = write_graph6(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 69]);
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_errors() {
        match parse_graph6("DQ") {
            Err(FormatError::Graph6 { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        match parse_graph6(">>graph6<<D Qc") {
            Err(FormatError::Graph6 { offset, .. }) => assert_eq!(offset, 11),
            other => panic!("{other:?}"),
        }
        assert!(parse_graph6("DQd").is_err(), "padding bit set");
        assert!(parse_graph6("").is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let text = "# pentagon\n5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g, Graph::cycle(5));
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_errors() {
        let line_of = |text: &str| match parse_edge_list(text) {
            Err(FormatError::EdgeList { line, message }) => (line, message),
            other => panic!("{other:?}"),
        };
        let (line, message) = line_of("3 2\n0 1\n2 2\n");
        assert_eq!(line, 3);
        assert!(message.contains("self-loop"));
        assert_eq!(line_of("3 2\n0 1\n0 1\n").0, 3);
        assert_eq!(line_of("3 1\n1 0\n").0, 2);
        assert_eq!(line_of("3 1\n0 3\n").0, 2);
        assert_eq!(line_of("3 2\n0 1\n").0, 1);
        assert_eq!(line_of("3\n").0, 1);
        assert_eq!(line_of("# c\n\n2 1\n0 x\n").0, 4);
    }

    #[test]
    fn detection() {
        assert_eq!(detect_format("# x\n3 0\n"), GraphFormat::EdgeList);
        assert_eq!(detect_format("DQc\n"), GraphFormat::Graph6);
        assert_eq!(detect_format(">>graph6<<DQc"), GraphFormat::Graph6);
    }

    #[test]
    fn scripts() {
        let p = parse_script("# fig\ncycle 5\np2 2\n\nleaf 5\n").unwrap();
        assert_eq!(p.script.cycle_length, 5);
        assert_eq!(p.script.steps, [Step::AttachPath2(2), Step::AttachLeaf(5)]);
        assert_eq!(p.step_lines, [3, 5]);
        assert_eq!(parse_script(&write_script(&p.script)).unwrap().script, p.script);
        for (text, line) in [("p2 0\n", 1), ("cycle 3\nhop 1\n", 2), ("cycle 3\ncycle 5\n", 2), ("cycle x\n", 1), ("", 1)] {
            match parse_script(text) {
                Err(FormatError::Script { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn coloring_round_trip() {
        let c = critset_core::unicyclic::generate(&BuildScript {
            cycle_length: 3,
            steps: vec![Step::AttachPath2(0), Step::AttachLeaf(3)],
        })
        .unwrap();
        let side = Coloring::from(&c);
        assert_eq!(side.red, [3]);
        assert_eq!(side.black, [4, 5]);
        assert_eq!(Coloring::from_json(&side.to_json()).unwrap(), side);
        assert!(Coloring::from_json(r#"{"n":2,"cycle":[],"blue":[0],"red":[],"black":[]}"#).is_err());
    }
}
