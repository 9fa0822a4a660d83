//! The `.graph` format.
//!
//! ```text
//! doc  := stmt*
//! stmt := "vertex" ID ";" | "edge" ID ":" ID "->" ID ";"
//! ID   := [A-Za-z_][A-Za-z0-9_']*
//! ```
//!
//! `#` starts a comment running to the end of the line.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use gradcan::Graph;

use crate::error::{CliError, CliResult, Location};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Colon,
    Semi,
    Arrow,
}

pub(crate) fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Colon => "`:`".into(),
        Tok::Semi => "`;`".into(),
        Tok::Arrow => "`->`".into(),
    }
}

pub(crate) fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> CliResult<(Vec<(Tok, Location)>, Location)> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let at = Location { line, col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
            continue;
        }
        if is_ident_start(c) {
            let mut s = String::new();
            while let Some(&c) = chars.peek().filter(|&&c| is_ident_char(c)) {
                s.push(c);
                chars.next();
                col += 1;
            }
            out.push((Tok::Ident(s), at));
            continue;
        }
        chars.next();
        col += 1;
        let tok = match c {
            ':' => Tok::Colon,
            ';' => Tok::Semi,
            '-' if chars.peek() == Some(&'>') => {
                chars.next();
                col += 1;
                Tok::Arrow
            }
            _ => return Err(CliError::parse(at, format!("unexpected character `{c}`"))),
        };
        out.push((tok, at));
    }
    Ok((out, Location { line, col }))
}

/// A parsed graph with the location of every declaration.
#[derive(Debug, Clone)]
pub struct GraphDoc {
    pub graph: Graph,
    pub vertices: BTreeMap<String, Location>,
    pub edges: BTreeMap<String, Location>,
}

struct Parser {
    toks: Vec<(Tok, Location)>,
    pos: usize,
    end: Location,
}

impl Parser {
    fn peek(&self) -> Option<&(Tok, Location)> {
        self.toks.get(self.pos)
    }

    fn expect(&mut self, want: Tok) -> CliResult<()> {
        match self.toks.get(self.pos) {
            Some((t, _)) if *t == want => {
                self.pos += 1;
                Ok(())
            }
            Some((t, at)) => Err(CliError::parse(
                *at,
                format!("expected {}, found {}", describe(&want), describe(t)),
            )),
            None => Err(CliError::parse(
                self.end,
                format!("expected {}, found end of input", describe(&want)),
            )),
        }
    }

    fn ident(&mut self) -> CliResult<(String, Location)> {
        match self.toks.get(self.pos) {
            Some((Tok::Ident(s), at)) => {
                self.pos += 1;
                Ok((s.clone(), *at))
            }
            Some((t, at)) => Err(CliError::parse(
                *at,
                format!("expected an identifier, found {}", describe(t)),
            )),
            None => Err(CliError::parse(self.end, "expected an identifier, found end of input")),
        }
    }
}

/// An edge name with its source and range as written.
type Arc3 = (String, (String, Location), (String, Location));

pub fn parse_graph(text: &str) -> CliResult<GraphDoc> {
    let (toks, end) = lex(text)?;
    let mut p = Parser { toks, pos: 0, end };
    let mut vertices: BTreeMap<String, Location> = BTreeMap::new();
    let mut edges: BTreeMap<String, Location> = BTreeMap::new();
    let mut arcs: Vec<Arc3> = Vec::new();
    while p.peek().is_some() {
        let (kw, at) = p.ident()?;
        match kw.as_str() {
            "vertex" => {
                let (name, at) = p.ident()?;
                if let Some(prev) = vertices.get(&name).or_else(|| edges.get(&name)) {
                    return Err(CliError::parse(
                        at,
                        format!("duplicate id `{name}` (first declared at {prev})"),
                    ));
                }
                vertices.insert(name, at);
                p.expect(Tok::Semi)?;
            }
            "edge" => {
                let (name, at) = p.ident()?;
                if let Some(prev) = vertices.get(&name).or_else(|| edges.get(&name)) {
                    return Err(CliError::parse(
                        at,
                        format!("duplicate id `{name}` (first declared at {prev})"),
                    ));
                }
                p.expect(Tok::Colon)?;
                let src = p.ident()?;
                p.expect(Tok::Arrow)?;
                let dst = p.ident()?;
                p.expect(Tok::Semi)?;
                edges.insert(name.clone(), at);
                arcs.push((name, src, dst));
            }
            _ => {
                return Err(CliError::parse(
                    at,
                    format!("expected `vertex` or `edge`, found `{kw}`"),
                ))
            }
        }
    }
    // vertices may be declared after the edges that use them
    for (name, (s, sat), (r, rat)) in &arcs {
        for (v, at) in [(s, sat), (r, rat)] {
            if !vertices.contains_key(v) {
                let what = if edges.contains_key(v) { "is an edge, not a vertex" } else { "is not declared" };
                return Err(CliError::parse(
                    *at,
                    format!("unknown vertex `{v}` in edge `{name}`: `{v}` {what}"),
                ));
            }
        }
    }
    let vs: Vec<&str> = vertices.keys().map(String::as_str).collect();
    let es: Vec<(&str, &str, &str)> = arcs
        .iter()
        .map(|(n, (s, _), (r, _))| (n.as_str(), s.as_str(), r.as_str()))
        .collect();
    let graph = Graph::new(&vs, &es)?;
    Ok(GraphDoc {
        graph,
        vertices,
        edges,
    })
}

/// Canonical text: vertices, then edges, each in name order.
pub fn render(g: &Graph) -> String {
    let mut s = String::new();
    for v in g.vertices() {
        writeln!(s, "vertex {};", g.vertex_name(v)).unwrap();
    }
    for e in g.edges() {
        writeln!(
            s,
            "edge {}: {} -> {};",
            g.edge_name(e),
            g.vertex_name(g.source(e)),
            g.vertex_name(g.range(e))
        )
        .unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(text: &str) -> (Location, String) {
        match parse_graph(text) {
            Err(CliError::Parse { at, message }) => (at, message),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn spec_examples() {
        let g = parse_graph("vertex v; edge e: v -> v;").unwrap().graph;
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 1));
        let (at, msg) = err("vertex v; edge e: v -> w;");
        assert_eq!(at, Location { line: 1, col: 24 });
        assert!(msg.contains("unknown vertex `w`"), "{msg}");
        let g = parse_graph("vertex v; vertex w; edge e: v -> w; edge f: w -> v;")
            .unwrap()
            .graph;
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn duplicates_and_syntax() {
        let (at, msg) = err("vertex v;\nvertex v;");
        assert_eq!(at, Location { line: 2, col: 8 });
        assert!(msg.contains("duplicate id `v`") && msg.contains("1:8"));
        let (_, msg) = err("vertex v; edge v: v -> v;");
        assert!(msg.contains("duplicate id"));
        let (at, msg) = err("vertex v\nedge e: v -> v;");
        assert_eq!(at, Location { line: 2, col: 1 });
        assert!(msg.contains("expected `;`"));
        let (at, _) = err("vertex v; edge e: v => v;");
        assert_eq!(at.col, 21);
        let (_, msg) = err("vertex v; edge e: v -> v");
        assert!(msg.contains("end of input"));
        let (_, msg) = err("node v;");
        assert!(msg.contains("expected `vertex` or `edge`"));
    }

    #[test]
    fn comments_and_forward_use() {
        let text = "# two petals\nedge e: v -> v; # first\nedge f: v -> v;\nvertex v;\n";
        let doc = parse_graph(text).unwrap();
        assert_eq!(doc.graph.edge_count(), 2);
        assert_eq!(doc.edges["f"], Location { line: 3, col: 6 });
    }

    #[test]
    fn render_round_trip() {
        let text = "vertex w; vertex v; edge b: w -> v; edge a: v -> w; edge c: v -> v;";
        let g = parse_graph(text).unwrap().graph;
        let r = render(&g);
        assert_eq!(
            r,
            "vertex v;\nvertex w;\nedge a: v -> w;\nedge b: w -> v;\nedge c: v -> v;\n"
        );
        assert_eq!(parse_graph(&r).unwrap().graph, g);
    }
}
