//! Edge-list, partition and GML readers/writers.
//!
//! Edge list: one edge per line, `u v` or `u v w`, whitespace separated, `#`
//! starts a comment. Vertex tokens are arbitrary strings numbered by first
//! appearance; a line holding a single token declares a vertex (this is how
//! isolated vertices survive a round trip). Partition files hold
//! `vertex_token part_token` lines.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use num_traits::One;

use crate::error::{domain, Error, Result};
use crate::graph::{Graph, GraphBuilder};
use crate::partition::Partition;
use crate::scalar::{format_weight, parse_weight, Weight};

pub const DOLPHIN_VERTICES: usize = 62;
pub const DOLPHIN_EDGES: usize = 159;

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn at_line(line: usize, e: Error) -> Error {
    match e {
        Error::Data(msg) => Error::Data(format!("line {line}: {msg}")),
        Error::Domain(msg) => Error::Domain(format!("line {line}: {msg}")),
        other => other,
    }
}

pub fn read_edge_list<R: Read>(reader: R) -> Result<Graph> {
    let mut b = GraphBuilder::labelled();
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let tokens: Vec<&str> = strip_comment(&line).split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            [v] => {
                b.vertex(v);
            }
            [u, v] => b
                .add_labelled_edge(u, v, Weight::one())
                .map_err(|e| at_line(line_no, e))?,
            [u, v, w] => {
                let w = parse_weight(w).map_err(|e| at_line(line_no, e))?;
                b.add_labelled_edge(u, v, w).map_err(|e| at_line(line_no, e))?
            }
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected `u v [w]`, found {} tokens", tokens.len()),
                })
            }
        }
    }
    Ok(b.build())
}

fn token_ok(t: &str) -> bool {
    !t.is_empty() && !t.contains(char::is_whitespace) && !t.contains('#')
}

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    for v in 0..g.n() {
        let l = g.label(v);
        if !token_ok(&l) {
            return Err(Error::Data(format!("vertex label `{l}` cannot be written as a token")));
        }
    }
    // Vertex declarations are only needed when the edge order alone would
    // number vertices differently (or miss isolated ones).
    let mut seen = vec![false; g.n()];
    let mut order = Vec::with_capacity(g.n());
    for e in g.edges() {
        for x in [e.u, e.v] {
            if !seen[x] {
                seen[x] = true;
                order.push(x);
            }
        }
    }
    let identity = order.len() == g.n() && order.iter().enumerate().all(|(i, &v)| i == v);
    writeln!(out, "# {} vertices, {} edges", g.n(), g.m())?;
    if !identity {
        for v in 0..g.n() {
            writeln!(out, "{}", g.label(v))?;
        }
    }
    for e in g.edges() {
        if e.w.is_one() {
            writeln!(out, "{} {}", g.label(e.u), g.label(e.v))?;
        } else {
            writeln!(out, "{} {} {}", g.label(e.u), g.label(e.v), format_weight(&e.w))?;
        }
    }
    Ok(())
}

fn vertex_lookup(g: &Graph) -> HashMap<String, usize> {
    (0..g.n()).map(|v| (g.label(v).into_owned(), v)).collect()
}

/// Reads `vertex_token part_token` lines. Every vertex of `g` must be
/// assigned exactly once.
pub fn read_partition<R: Read>(reader: R, g: &Graph) -> Result<Partition> {
    let lookup = vertex_lookup(g);
    let mut part_ids: HashMap<String, usize> = HashMap::new();
    let mut labels = vec![usize::MAX; g.n()];
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let tokens: Vec<&str> = strip_comment(&line).split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            [v, p] => {
                let Some(&id) = lookup.get(*v) else {
                    return domain(format!("line {line_no}: unknown vertex `{v}`"));
                };
                if labels[id] != usize::MAX {
                    return domain(format!("line {line_no}: vertex `{v}` assigned twice"));
                }
                let next = part_ids.len();
                labels[id] = *part_ids.entry((*p).to_owned()).or_insert(next);
            }
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: "expected `vertex part`".into(),
                })
            }
        }
    }
    if let Some(v) = labels.iter().position(|&l| l == usize::MAX) {
        return domain(format!("vertex `{}` has no part", g.label(v)));
    }
    Ok(Partition::from_assignment(&labels))
}

pub fn write_partition<W: Write>(g: &Graph, p: &Partition, mut out: W) -> Result<()> {
    if p.n() != g.n() {
        return domain("partition and graph sizes differ");
    }
    for v in 0..g.n() {
        writeln!(out, "{} {}", g.label(v), p.part_of(v))?;
    }
    Ok(())
}

/// Minimal GML reader: `node [ id .. label .. ]` and
/// `edge [ source .. target .. (value|weight) .. ]` records.
pub fn read_gml<R: Read>(mut reader: R) -> Result<Graph> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    let tokens = gml_tokens(&text)?;

    let mut b = GraphBuilder::labelled();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut pending_edges = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let t = tokens[i].as_str();
        if (t == "node" || t == "edge") && tokens.get(i + 1).map(String::as_str) == Some("[") {
            let mut fields: HashMap<String, String> = HashMap::new();
            let mut j = i + 2;
            let mut depth = 1;
            while j < tokens.len() && depth > 0 {
                match tokens[j].as_str() {
                    "[" => depth += 1,
                    "]" => depth -= 1,
                    key if depth == 1 && j + 1 < tokens.len() && tokens[j + 1] != "[" => {
                        fields.insert(key.to_owned(), tokens[j + 1].clone());
                        j += 1;
                    }
                    _ => {}
                }
                j += 1;
            }
            if t == "node" {
                let id = fields
                    .get("id")
                    .ok_or_else(|| Error::Data("GML node without id".into()))?
                    .clone();
                let label = fields.get("label").cloned().unwrap_or_else(|| id.clone());
                let label = label.replace(char::is_whitespace, "_");
                let v = b.vertex(&label);
                ids.insert(id, v);
            } else {
                let get = |k: &str| {
                    fields
                        .get(k)
                        .cloned()
                        .ok_or_else(|| Error::Data(format!("GML edge without {k}")))
                };
                let w = match fields.get("value").or_else(|| fields.get("weight")) {
                    Some(w) => parse_weight(w)?,
                    None => Weight::one(),
                };
                pending_edges.push((get("source")?, get("target")?, w));
            }
            i = j;
        } else {
            i += 1;
        }
    }
    for (s, t, w) in pending_edges {
        let (Some(&u), Some(&v)) = (ids.get(&s), ids.get(&t)) else {
            return Err(Error::Data(format!("GML edge {s} -- {t} references an unknown node")));
        };
        b.add_edge(u, v, w)?;
    }
    Ok(b.build())
}

fn gml_tokens(text: &str) -> Result<Vec<String>> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '[' || c == ']' {
            tokens.push(c.to_string());
            chars.next();
        } else if c == '"' {
            chars.next();
            let mut s = String::new();
            loop {
                match chars.next() {
                    Some('"') => break,
                    Some(ch) => s.push(ch),
                    None => return Err(Error::Data("unterminated string in GML".into())),
                }
            }
            tokens.push(s);
        } else {
            let mut s = String::new();
            while let Some(&ch) = chars.peek() {
                if ch.is_whitespace() || ch == '[' || ch == ']' {
                    break;
                }
                s.push(ch);
                chars.next();
            }
            tokens.push(s);
        }
    }
    Ok(tokens)
}

/// Reads a graph from disk; `.gml` files use the GML reader, everything else
/// is treated as an edge list.
pub fn read_graph_file(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let file = File::open(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("gml") => read_gml(file),
        _ => read_edge_list(file),
    }
}

pub fn read_partition_file(path: impl AsRef<Path>, g: &Graph) -> Result<Partition> {
    read_partition(File::open(path)?, g)
}

/// Loads the dolphin social network and checks it has the expected size.
pub fn load_dolphins(path: impl AsRef<Path>) -> Result<Graph> {
    let g = read_graph_file(path)?;
    check_dolphins(&g)?;
    Ok(g)
}

pub fn check_dolphins(g: &Graph) -> Result<()> {
    if g.n() != DOLPHIN_VERTICES || g.m() != DOLPHIN_EDGES || !g.is_unweighted() {
        return Err(Error::Data(format!(
            "the dolphin network should have {DOLPHIN_VERTICES} vertices and {DOLPHIN_EDGES} \
             unweighted edges; this file has {} vertices and {} edges",
            g.n(),
            g.m()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_tokens_comments_and_weights() {
        let text = "# header\nalice bob\nbob carol 2.5 # trailing\n\ncarol alice\ndave\n";
        let g = read_edge_list(text.as_bytes()).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 3);
        assert_eq!(g.labels().unwrap(), ["alice", "bob", "carol", "dave"]);
        assert_eq!(g.weight(1, 2), Weight::new(5, 2));
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(matches!(read_edge_list("a b c d".as_bytes()), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(read_edge_list("a a".as_bytes()), Err(Error::Data(_))));
        assert!(matches!(read_edge_list("a b -1".as_bytes()), Err(Error::Data(_))));
        assert!(matches!(read_edge_list("a b x".as_bytes()), Err(Error::Data(_))));
    }

    #[test]
    fn edge_list_round_trip_with_isolated_and_permuted_ids() {
        let g = read_edge_list("x z\ny z 0.5\nw\n".as_bytes()).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let back = read_edge_list(buf.as_slice()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn partition_round_trip_and_errors() {
        let g = read_edge_list("a b\nb c\nc d\n".as_bytes()).unwrap();
        let p = read_partition("a left\nb left\nc right\nd right\n".as_bytes(), &g).unwrap();
        assert_eq!(p.assignment(), &[0, 0, 1, 1]);
        let mut buf = Vec::new();
        write_partition(&g, &p, &mut buf).unwrap();
        assert_eq!(read_partition(buf.as_slice(), &g).unwrap(), p);

        assert!(matches!(read_partition("a 0\nb 0\nc 0\nq 1\n".as_bytes(), &g), Err(Error::Domain(_))));
        assert!(read_partition("a 0\nb 0\nc 0\n".as_bytes(), &g).is_err());
        assert!(read_partition("a 0\na 1\nb 0\nc 0\nd 0\n".as_bytes(), &g).is_err());
    }

    #[test]
    fn gml_nodes_and_edges() {
        let text = r#"graph [
            directed 0
            node [ id 10 label "Beak" ]
            node [ id 11 label "Bumper" ]
            node [ id 12 ]
            edge [ source 11 target 10 ]
            edge [ source 12 target 10 value 2 ]
        ]"#;
        let g = read_gml(text.as_bytes()).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert_eq!(g.labels().unwrap(), ["Beak", "Bumper", "12"]);
        assert_eq!(g.weight(0, 2), Weight::from_integer(2));
    }

    #[test]
    fn dolphin_check_cites_counts() {
        let err = check_dolphins(&Graph::empty(3)).unwrap_err().to_string();
        assert!(err.contains("62") && err.contains("159"), "{err}");
    }
}
