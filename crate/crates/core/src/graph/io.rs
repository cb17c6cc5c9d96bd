//! Text and JSON formats.
//!
//! Edge lists hold one `u v [w]` per line with `#` comments and an optional
//! `n <count>` header. Measure and vector files hold `i value` lines.

use std::fmt::Write as _;

use serde_json::{json, Value};

use super::Graph;
use crate::error::{Error, Result};
use crate::rational::Rational;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_index(line: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| parse_err(line, format!("bad vertex id `{tok}`")))
}

fn parse_value(line: usize, tok: &str) -> Result<Rational> {
    tok.parse().map_err(|_| parse_err(line, format!("bad number `{tok}`")))
}

/// Parses an edge list, or a JSON graph when the text starts with `{`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
        return graph_from_json(&v);
    }
    let mut declared: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (line, toks) in content_lines(text) {
        if toks[0] == "n" {
            if toks.len() != 2 || declared.is_some() {
                return Err(parse_err(line, "malformed `n` header"));
            }
            declared = Some((parse_index(line, toks[1])?, line));
            continue;
        }
        if toks.len() < 2 || toks.len() > 3 {
            return Err(parse_err(line, "expected `u v [w]`"));
        }
        let u = parse_index(line, toks[0])?;
        let v = parse_index(line, toks[1])?;
        let w = match toks.get(2) {
            Some(t) => parse_value(line, t)?,
            None => Rational::one(),
        };
        if u == v {
            return Err(Error::SelfLoop { line, vertex: u });
        }
        if !w.is_positive() {
            return Err(Error::NonPositiveWeight { line });
        }
        edges.push((line, u, v, w));
    }
    let needed = edges.iter().map(|(_, u, v, _)| u.max(v) + 1).max().unwrap_or(0);
    let n = match declared {
        Some((n, _)) => {
            if let Some((line, ..)) = edges.iter().find(|(_, u, v, _)| *u.max(v) >= n) {
                return Err(parse_err(*line, format!("vertex id exceeds declared n = {n}")));
            }
            n
        }
        None => needed,
    };
    Graph::new(n, edges.into_iter().map(|(_, u, v, w)| (u, v, w)))
}

/// Edge list with an `n` header; `parse_graph(emit_graph(g))` reproduces the
/// edges exactly.
pub fn emit_graph(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {}", e.u, e.v, e.w);
    }
    out
}

/// Overrides the measure of the listed vertices; others keep their degree.
pub fn parse_measure(text: &str, g: Graph) -> Result<Graph> {
    let mut mu = g.degrees().to_vec();
    for (line, toks) in content_lines(text) {
        if toks.len() != 2 {
            return Err(parse_err(line, "expected `i mu_i`"));
        }
        let i = parse_index(line, toks[0])?;
        if i >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: i, n: g.n() });
        }
        let value = parse_value(line, toks[1])?;
        if value.is_negative() {
            return Err(Error::NegativeMeasure { line });
        }
        mu[i] = value;
    }
    g.with_measure(mu)
}

pub fn emit_measure(g: &Graph) -> String {
    emit_vector(g.mu())
}

/// Parses `i value` lines into a length-`n` vector; missing entries are 0.
pub fn parse_vector(text: &str, n: usize) -> Result<Vec<Rational>> {
    let mut x = vec![Rational::zero(); n];
    let mut seen = vec![false; n];
    for (line, toks) in content_lines(text) {
        if toks.len() != 2 {
            return Err(parse_err(line, "expected `i value`"));
        }
        let i = parse_index(line, toks[0])?;
        if i >= n {
            return Err(Error::VertexOutOfRange { vertex: i, n });
        }
        if seen[i] {
            return Err(parse_err(line, format!("duplicate entry for vertex {i}")));
        }
        seen[i] = true;
        x[i] = parse_value(line, toks[1])?;
    }
    Ok(x)
}

pub fn emit_vector(x: &[Rational]) -> String {
    let mut out = String::new();
    for (i, v) in x.iter().enumerate() {
        let _ = writeln!(out, "{i} {v}");
    }
    out
}

pub fn graph_to_json(g: &Graph) -> Value {
    let edges: Vec<Value> = g.edges().iter().map(|e| json!([e.u, e.v, e.w.to_string()])).collect();
    let mu: Vec<String> = g.mu().iter().map(Rational::to_string).collect();
    json!({ "n": g.n(), "edges": edges, "mu": mu })
}

pub fn graph_from_json(v: &Value) -> Result<Graph> {
    let bad = |msg: &str| parse_err(0, msg.to_string());
    let n = v["n"].as_u64().ok_or_else(|| bad("missing `n`"))? as usize;
    let mut edges = Vec::new();
    for e in v["edges"].as_array().ok_or_else(|| bad("missing `edges`"))? {
        let arr = e.as_array().ok_or_else(|| bad("edge must be an array"))?;
        let idx = |k: usize| arr.get(k).and_then(Value::as_u64).map(|x| x as usize);
        let (u, w) = (idx(0), idx(1));
        let (u, v) = u.zip(w).ok_or_else(|| bad("edge endpoints must be integers"))?;
        let weight = match arr.get(2) {
            None => Rational::one(),
            Some(Value::String(s)) => s.parse().map_err(|_| bad("bad weight"))?,
            Some(Value::Number(num)) => num.to_string().parse().map_err(|_| bad("bad weight"))?,
            Some(_) => return Err(bad("bad weight")),
        };
        edges.push((u, v, weight));
    }
    let g = Graph::new(n, edges)?;
    match v.get("mu").and_then(Value::as_array) {
        Some(mu) => {
            let mu: Result<Vec<Rational>> = mu
                .iter()
                .map(|m| {
                    m.as_str()
                        .map(str::to_string)
                        .or_else(|| m.as_number().map(|n| n.to_string()))
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad("bad measure"))
                })
                .collect();
            g.with_measure(mu?)
        }
        None => Ok(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{path, petersen};

    #[test]
    fn parses_edge_lists() {
        assert_eq!(parse_graph("0 1 1\n1 2 1\n").unwrap(), path(3));
        let g = parse_graph("# weighted\n0 1 1/3\n").unwrap();
        assert_eq!(g.edges()[0].w, Rational::new(1, 3));
        let g = parse_graph("n 4\n0 1 0.5 # trailing\n\n").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edges()[0].w, Rational::new(1, 2));
    }

    #[test]
    fn reports_errors_with_lines() {
        assert_eq!(parse_graph("0 0 1"), Err(Error::SelfLoop { line: 1, vertex: 0 }));
        assert_eq!(parse_graph("0 1\n1 2 -2"), Err(Error::NonPositiveWeight { line: 2 }));
        assert!(matches!(parse_graph("0 1\nx 2"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("n 2\n0 5"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn round_trips() {
        let g = parse_graph("0 1 2/7\n1 2 3\n0 2 1\n0 2 1\nn 5\n").unwrap();
        assert_eq!(parse_graph(&emit_graph(&g)).unwrap(), g);
        let pet = petersen();
        assert_eq!(graph_from_json(&graph_to_json(&pet)).unwrap(), pet);
        assert_eq!(parse_graph(&graph_to_json(&pet).to_string()).unwrap(), pet);
    }

    #[test]
    fn measures_and_vectors() {
        let g = parse_measure("0 5\n2 1/2\n", path(3)).unwrap();
        assert_eq!(g.mu(), &[Rational::from_integer(5), Rational::from_integer(2), Rational::new(1, 2)]);
        let x = parse_vector("2 -1\n0 1/2\n", 4).unwrap();
        assert_eq!(
            x,
            vec![Rational::new(1, 2), Rational::zero(), Rational::from_integer(-1), Rational::zero()]
        );
        assert_eq!(parse_vector(&emit_vector(&x), 4).unwrap(), x);
        assert!(parse_vector("0 1\n0 2\n", 2).is_err());
    }
}
