//! Line-oriented text formats: graphs (`stcgraph`), spanning trees
//! (`stctree`), SAT instances (`m2p1n`), assignments and label sidecars.
//!
//! Every format allows blank lines and `#` comments. Serializers emit a
//! canonical form that parses back to an equal value.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::graph::{DoubleWeight, DoubleWeightedGraph, GraphError, SpanningTree};
use crate::reduction::{validate_sat, Clause, SatInstance, SatViolation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingHeader(&'static str),
    BadHeader(&'static str),
    DuplicateHeader,
    UnexpectedToken(String),
    MissingToken(&'static str),
    BadNumber(String),
    VertexOutOfRange { id: usize, n: usize },
    EdgeOutOfRange { id: usize, m: usize },
    WeightOrder { light: u64, heavy: u64 },
    ZeroWeight,
    Count { what: &'static str, want: usize, got: usize },
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::MissingHeader(h) => write!(f, "missing `{h}` header"),
            ParseErrorKind::BadHeader(h) => write!(f, "malformed header, expected `{h}`"),
            ParseErrorKind::DuplicateHeader => write!(f, "duplicate header"),
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected token `{t}`"),
            ParseErrorKind::MissingToken(what) => write!(f, "missing {what}"),
            ParseErrorKind::BadNumber(t) => write!(f, "`{t}` is not a nonnegative integer"),
            ParseErrorKind::VertexOutOfRange { id, n } => write!(f, "vertex {id} out of range (n = {n})"),
            ParseErrorKind::EdgeOutOfRange { id, m } => write!(f, "edge {id} out of range (m = {m})"),
            ParseErrorKind::WeightOrder { light, heavy } => {
                write!(f, "weight order violation: heavy {heavy} is below light {light}")
            }
            ParseErrorKind::ZeroWeight => write!(f, "weights must be positive"),
            ParseErrorKind::Count { what, want, got } => write!(f, "expected {want} {what}, found {got}"),
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("tree file: {0}")]
    Tree(GraphError),
    #[error("invalid instance: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Sat(Vec<SatViolation>),
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl<'a> Token<'a> {
    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.line, column: self.column, kind }
    }

    fn number<T: std::str::FromStr>(&self) -> Result<T, ParseError> {
        if !self.text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(self.error(ParseErrorKind::BadNumber(self.text.to_string())));
        }
        self.text.parse().map_err(|_| self.error(ParseErrorKind::BadNumber(self.text.to_string())))
    }
}

/// One non-blank, non-comment line split into tokens.
struct Line<'a> {
    number: usize,
    raw: &'a str,
    tokens: Vec<Token<'a>>,
}

impl<'a> Line<'a> {
    fn end(&self) -> ParseError {
        ParseError { line: self.number, column: self.raw.len() + 1, kind: ParseErrorKind::MissingToken("token") }
    }

    fn get(&self, i: usize, what: &'static str) -> Result<Token<'a>, ParseError> {
        self.tokens.get(i).copied().ok_or_else(|| {
            let mut e = self.end();
            e.kind = ParseErrorKind::MissingToken(what);
            e
        })
    }

    fn no_more(&self, from: usize) -> Result<(), ParseError> {
        match self.tokens.get(from) {
            Some(t) => Err(t.error(ParseErrorKind::UnexpectedToken(t.text.to_string()))),
            None => Ok(()),
        }
    }

    /// Everything after token `i`, trimmed.
    fn rest_after(&self, i: usize) -> Option<&'a str> {
        let t = self.tokens.get(i)?;
        let start = t.column - 1 + t.text.len();
        let rest = self.raw[start..].trim();
        (!rest.is_empty()).then_some(rest)
    }
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push(Token { text: &body[s..pos], line: i + 1, column: s + 1 });
                    start = None;
                }
                _ => {}
            }
        }
        (!tokens.is_empty()).then_some(Line { number: i + 1, raw: body, tokens })
    })
}

/// Reads the header `<keyword> <count>` and returns the count plus the
/// remaining lines. A second header anywhere is an error.
fn header<'a>(
    text: &'a str,
    keyword: &'static str,
    shape: &'static str,
    extra: usize,
) -> Result<(Vec<usize>, Vec<Line<'a>>), ParseError> {
    let mut it = lines(text);
    let first = it.next().ok_or(ParseError { line: 1, column: 1, kind: ParseErrorKind::MissingHeader(keyword) })?;
    let kw = first.get(0, "header")?;
    if kw.text != keyword {
        return Err(kw.error(ParseErrorKind::MissingHeader(keyword)));
    }
    let mut values = Vec::new();
    for i in 1..=1 + extra {
        let t = first.tokens.get(i).ok_or_else(|| {
            let mut e = first.end();
            e.kind = ParseErrorKind::BadHeader(shape);
            e
        })?;
        values.push(t.number()?);
    }
    first.no_more(2 + extra)?;
    let rest: Vec<Line> = it.collect();
    if let Some(dup) = rest.iter().find(|l| l.tokens[0].text == keyword) {
        return Err(dup.tokens[0].error(ParseErrorKind::DuplicateHeader));
    }
    Ok((values, rest))
}

fn vertex(t: Token, n: usize) -> Result<usize, ParseError> {
    let id: usize = t.number()?;
    if id >= n {
        return Err(t.error(ParseErrorKind::VertexOutOfRange { id, n }));
    }
    Ok(id)
}

/// Parses `stcgraph n m`, then `m` edge lines `u v w1 [w2]` and any number
/// of `label <id> <string>` lines.
pub fn parse_graph(text: &str) -> Result<DoubleWeightedGraph, ParseError> {
    let (head, body) = header(text, "stcgraph", "stcgraph <n> <m>", 1)?;
    let (n, m) = (head[0], head[1]);
    let mut g = DoubleWeightedGraph::new(n);
    let mut labels = Vec::new();
    for line in &body {
        if line.tokens[0].text == "label" {
            let v = vertex(line.get(1, "vertex id")?, n)?;
            let label = line.rest_after(1).ok_or_else(|| {
                let mut e = line.end();
                e.kind = ParseErrorKind::MissingToken("label text");
                e
            })?;
            labels.push((v, label.to_string()));
            continue;
        }
        let u = vertex(line.get(0, "endpoint")?, n)?;
        let v = vertex(line.get(1, "endpoint")?, n)?;
        let w1_tok = line.get(2, "weight")?;
        let light: u64 = w1_tok.number()?;
        let (heavy, used) = match line.tokens.get(3) {
            Some(t) => (t.number()?, 4),
            None => (light, 3),
        };
        line.no_more(used)?;
        if light == 0 {
            return Err(w1_tok.error(ParseErrorKind::ZeroWeight));
        }
        if heavy < light {
            return Err(line.tokens[3].error(ParseErrorKind::WeightOrder { light, heavy }));
        }
        let w = DoubleWeight::new(light, heavy).expect("checked above");
        g.add_edge(u, v, w).map_err(|_| line.tokens[0].error(ParseErrorKind::UnexpectedToken("self-loop".into())))?;
    }
    if g.edge_count() != m {
        let last = body.last().map_or(1, |l| l.number);
        return Err(ParseError { line: last, column: 1, kind: ParseErrorKind::Count { what: "edges", want: m, got: g.edge_count() } });
    }
    for (v, label) in labels {
        g.set_vertex_label(v, label).expect("vertex checked");
    }
    Ok(g)
}

pub fn write_graph(g: &DoubleWeightedGraph) -> String {
    write_graph_with(g, true)
}

/// Graph text, optionally without the label lines.
pub fn write_graph_with(g: &DoubleWeightedGraph, labels: bool) -> String {
    let mut s = format!("stcgraph {} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        let (a, b) = (e.weight.light(), e.weight.heavy());
        if a == b {
            writeln!(s, "{} {} {a}", e.u, e.v).unwrap();
        } else {
            writeln!(s, "{} {} {a} {b}", e.u, e.v).unwrap();
        }
    }
    if labels {
        for v in 0..g.vertex_count() {
            if let Some(l) = g.vertex_label(v) {
                writeln!(s, "label {v} {l}").unwrap();
            }
        }
    }
    s
}

/// Parses `stctree n` followed by `n - 1` edge indices of `g`.
pub fn parse_tree(text: &str, g: &DoubleWeightedGraph) -> Result<SpanningTree, FormatError> {
    let (head, body) = header(text, "stctree", "stctree <n>", 0)?;
    let n = head[0];
    if n != g.vertex_count() {
        return Err(ParseError {
            line: 1,
            column: 9,
            kind: ParseErrorKind::Count { what: "vertices", want: g.vertex_count(), got: n },
        }
        .into());
    }
    let mut edges = Vec::new();
    for t in body.iter().flat_map(|l| l.tokens.iter()) {
        let e: usize = t.number()?;
        if e >= g.edge_count() {
            return Err(t.error(ParseErrorKind::EdgeOutOfRange { id: e, m: g.edge_count() }).into());
        }
        edges.push(e);
    }
    let want = n.saturating_sub(1);
    if edges.len() != want {
        let last = body.last().map_or(1, |l| l.number);
        return Err(ParseError { line: last, column: 1, kind: ParseErrorKind::Count { what: "tree edges", want, got: edges.len() } }.into());
    }
    SpanningTree::new(g, edges).map_err(FormatError::Tree)
}

pub fn write_tree(g: &DoubleWeightedGraph, t: &SpanningTree) -> String {
    let mut s = format!("stctree {}\n", g.vertex_count());
    for e in t.edges() {
        writeln!(s, "{e}").unwrap();
    }
    s
}

/// Parses `m2p1n n` and clause lines `3p a b c`, `2p a b`, `2n a b`, then
/// validates the instance.
pub fn parse_sat(text: &str) -> Result<SatInstance, FormatError> {
    let (head, body) = header(text, "m2p1n", "m2p1n <n>", 0)?;
    let mut clauses = Vec::new();
    for line in &body {
        let tag = line.tokens[0];
        let arity = match tag.text {
            "3p" => 3,
            "2p" | "2n" => 2,
            other => return Err(tag.error(ParseErrorKind::UnexpectedToken(other.to_string())).into()),
        };
        let vars = (1..=arity).map(|i| line.get(i, "variable")?.number()).collect::<Result<Vec<usize>, _>>()?;
        line.no_more(arity + 1)?;
        clauses.push(match tag.text {
            "3p" => Clause::ThreeP([vars[0], vars[1], vars[2]]),
            "2p" => Clause::TwoP([vars[0], vars[1]]),
            _ => Clause::TwoN([vars[0], vars[1]]),
        });
    }
    let inst = SatInstance::new(head[0], clauses);
    validate_sat(&inst).map_err(FormatError::Sat)?;
    Ok(inst)
}

pub fn write_sat(inst: &SatInstance) -> String {
    let mut s = format!("m2p1n {}\n", inst.n);
    for c in &inst.clauses {
        let vars: Vec<String> = c.vars().iter().map(|v| v.to_string()).collect();
        writeln!(s, "{} {}", c.kind().tag(), vars.join(" ")).unwrap();
    }
    s
}

/// Parses `assignment n` then `n` values `0` or `1` in any layout.
pub fn parse_assignment(text: &str) -> Result<Vec<bool>, ParseError> {
    let (head, body) = header(text, "assignment", "assignment <n>", 0)?;
    let mut values = Vec::new();
    for t in body.iter().flat_map(|l| l.tokens.iter()) {
        values.push(match t.text {
            "0" => false,
            "1" => true,
            other => return Err(t.error(ParseErrorKind::UnexpectedToken(other.to_string()))),
        });
    }
    if values.len() != head[0] {
        let last = body.last().map_or(1, |l| l.number);
        return Err(ParseError { line: last, column: 1, kind: ParseErrorKind::Count { what: "values", want: head[0], got: values.len() } });
    }
    Ok(values)
}

pub fn write_assignment(values: &[bool]) -> String {
    let bits: Vec<&str> = values.iter().map(|&b| if b { "1" } else { "0" }).collect();
    format!("assignment {}\n{}\n", values.len(), bits.join(" "))
}

/// Sidecar lines `vertex <id> role <string>` for a graph on `n` vertices.
pub fn parse_labels(text: &str, n: usize) -> Result<Vec<(usize, String)>, ParseError> {
    let mut out = Vec::new();
    for line in lines(text) {
        let kw = line.tokens[0];
        if kw.text != "vertex" {
            return Err(kw.error(ParseErrorKind::UnexpectedToken(kw.text.to_string())));
        }
        let v = vertex(line.get(1, "vertex id")?, n)?;
        let role = line.get(2, "`role`")?;
        if role.text != "role" {
            return Err(role.error(ParseErrorKind::UnexpectedToken(role.text.to_string())));
        }
        let label = line.get(3, "role name")?;
        line.no_more(4)?;
        out.push((v, label.text.to_string()));
    }
    Ok(out)
}

pub fn write_labels(g: &DoubleWeightedGraph) -> String {
    let mut s = String::new();
    for v in 0..g.vertex_count() {
        if let Some(l) = g.vertex_label(v) {
            writeln!(s, "vertex {v} role {l}").unwrap();
        }
    }
    s
}

pub fn apply_labels(g: &mut DoubleWeightedGraph, labels: Vec<(usize, String)>) {
    for (v, l) in labels {
        g.set_vertex_label(v, l).expect("parse_labels checks ids");
    }
}
