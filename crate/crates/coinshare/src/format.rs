//! Text formats for networks and strategies.
//!
//! Network files:
//!
//! ```text
//! # optional comments anywhere
//! 5 3
//! 1 2 3
//! 1 2 4
//! ...
//! components          # only in cluster files
//! 1 2 3
//! 1 4 5 6
//! ```
//!
//! Strategy files, as emitted by synthesis:
//!
//! ```text
//! coin 1-2-3 0
//! say 2: 1-2-3/0 ^ 1-2-5/0 ^ 2-3-5/0
//! ```
//!
//! Writers are deterministic down to the byte; parsers accept surplus
//! whitespace and comments but nothing else.

use thiserror::Error;

use crate::hypergraph::{Edge, Hypergraph};
use crate::strategy::{Broadcast, CoinSymbol, Strategy};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based line in the input; 0 for whole-file problems.
    pub line: usize,
    pub message: String,
}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// A parsed network file: the hypergraph, plus the component list when the
/// file has a `components` section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkFile {
    pub graph: Hypergraph,
    pub components: Option<Vec<Edge>>,
}

/// Content lines with their 1-based numbers: comments stripped at `#`,
/// blanks dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

fn parse_vertex_list(line_no: usize, line: &str) -> Result<Edge, ParseError> {
    let mut vertices = Vec::new();
    for tok in line.split_whitespace() {
        match tok.parse::<usize>() {
            Ok(v) => vertices.push(v),
            Err(_) => return fail(line_no, format!("expected a vertex number, got \"{tok}\"")),
        }
    }
    Edge::new(vertices).or_else(|e| fail(line_no, e.to_string()))
}

pub fn parse_network(text: &str) -> Result<NetworkFile, ParseError> {
    let mut lines = content_lines(text);
    let (header_no, header) = match lines.next() {
        Some(l) => l,
        None => return fail(0, "empty network file; expected an \"n k\" header"),
    };
    let mut tokens = header.split_whitespace();
    let (n, k) = match (tokens.next(), tokens.next(), tokens.next()) {
        (Some(a), Some(b), None) => {
            let n = a
                .parse::<usize>()
                .or_else(|_| fail(header_no, format!("bad vertex count \"{a}\"")))?;
            let k = b
                .parse::<usize>()
                .or_else(|_| fail(header_no, format!("bad uniformity \"{b}\"")))?;
            (n, k)
        }
        _ => return fail(header_no, "header must be two numbers: \"n k\""),
    };
    if n == 0 || k == 0 || k > n {
        return fail(header_no, format!("need 1 <= k <= n, got n = {n}, k = {k}"));
    }

    let mut edges: Vec<Edge> = Vec::new();
    let mut components: Option<Vec<Edge>> = None;
    for (no, line) in lines {
        if line == "components" {
            if components.is_some() {
                return fail(no, "second \"components\" section");
            }
            components = Some(Vec::new());
            continue;
        }
        let set = parse_vertex_list(no, line)?;
        if set.max_vertex() > n {
            return fail(
                no,
                format!("vertex {} is out of range 1..={n}", set.max_vertex()),
            );
        }
        match &mut components {
            Some(c) => c.push(set),
            None => {
                if set.len() != k {
                    return fail(no, format!("edge {set} is not {k}-uniform"));
                }
                if edges.contains(&set) {
                    return fail(no, format!("duplicate edge {set}"));
                }
                edges.push(set);
            }
        }
    }
    if matches!(&components, Some(c) if c.is_empty()) {
        return fail(0, "\"components\" section lists no components");
    }
    let graph = Hypergraph::new(n, k, edges).or_else(|e| fail(0, e.to_string()))?;
    Ok(NetworkFile { graph, components })
}

pub fn write_network(graph: &Hypergraph, components: Option<&[Edge]>) -> String {
    let mut out = format!("{} {}\n", graph.n(), graph.k());
    let vertex_line = |e: &Edge| {
        let words: Vec<String> = e.vertices().iter().map(|v| v.to_string()).collect();
        words.join(" ")
    };
    for e in graph.edges() {
        out.push_str(&vertex_line(e));
        out.push('\n');
    }
    if let Some(comps) = components {
        out.push_str("components\n");
        for c in comps {
            out.push_str(&vertex_line(c));
            out.push('\n');
        }
    }
    out
}

fn parse_edge_token(line_no: usize, tok: &str) -> Result<Edge, ParseError> {
    let mut vertices = Vec::new();
    for part in tok.split('-') {
        match part.parse::<usize>() {
            Ok(v) => vertices.push(v),
            Err(_) => {
                return fail(
                    line_no,
                    format!("expected an edge like \"1-2-3\", got \"{tok}\""),
                )
            }
        }
    }
    Edge::new(vertices).or_else(|e| fail(line_no, e.to_string()))
}

fn parse_symbol_token(line_no: usize, tok: &str) -> Result<CoinSymbol, ParseError> {
    let (edge_part, rep_part) = match tok.rsplit_once('/') {
        Some(parts) => parts,
        None => {
            return fail(
                line_no,
                format!("expected a symbol like \"1-2-3/0\", got \"{tok}\""),
            )
        }
    };
    let edge = parse_edge_token(line_no, edge_part)?;
    let rep = rep_part
        .parse::<usize>()
        .or_else(|_| fail(line_no, format!("bad repetition index \"{rep_part}\"")))?;
    Ok(CoinSymbol::new(edge, rep))
}

/// Parses a strategy file. The network is reconstructed from the coins:
/// n is the largest mentioned vertex, k the coin edge size. The result is
/// fully validated, so simulation can rely on it.
pub fn parse_strategy(text: &str) -> Result<Strategy, ParseError> {
    let mut coins: Vec<CoinSymbol> = Vec::new();
    let mut says: Vec<(usize, usize, Vec<CoinSymbol>)> = Vec::new();
    for (no, line) in content_lines(text) {
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("coin") => {
                let edge_tok = match tokens.next() {
                    Some(t) => t,
                    None => return fail(no, "coin line needs an edge"),
                };
                let rep_tok = match tokens.next() {
                    Some(t) => t,
                    None => return fail(no, "coin line needs a repetition index"),
                };
                if tokens.next().is_some() {
                    return fail(no, "trailing tokens after coin declaration");
                }
                let edge = parse_edge_token(no, edge_tok)?;
                let rep = rep_tok
                    .parse::<usize>()
                    .or_else(|_| fail(no, format!("bad repetition index \"{rep_tok}\"")))?;
                let sym = CoinSymbol::new(edge, rep);
                if coins.contains(&sym) {
                    return fail(no, format!("duplicate coin {sym}"));
                }
                coins.push(sym);
            }
            Some("say") => {
                let speaker_tok = match tokens.next() {
                    Some(t) => t,
                    None => return fail(no, "say line needs a speaker"),
                };
                let speaker_num = match speaker_tok.strip_suffix(':') {
                    Some(s) => s,
                    None => return fail(no, "speaker must end with \":\""),
                };
                let speaker = speaker_num
                    .parse::<usize>()
                    .or_else(|_| fail(no, format!("bad speaker \"{speaker_tok}\"")))?;
                let rest: Vec<&str> = tokens.collect();
                let joined = rest.join(" ");
                let mut parity = Vec::new();
                for sym_tok in joined.split('^') {
                    let sym_tok = sym_tok.trim();
                    if sym_tok.is_empty() {
                        return fail(no, "empty symbol in parity list");
                    }
                    parity.push(parse_symbol_token(no, sym_tok)?);
                }
                if parity.is_empty() {
                    return fail(no, "say line has no symbols");
                }
                says.push((no, speaker, parity));
            }
            Some(other) => {
                return fail(no, format!("expected \"coin\" or \"say\", got \"{other}\""))
            }
            None => unreachable!("content lines are non-empty"),
        }
    }
    if coins.is_empty() {
        return fail(0, "strategy declares no coins");
    }

    let k = coins[0].edge.len();
    let n = coins.iter().map(|c| c.edge.max_vertex()).max().unwrap();
    if n < 2 {
        return fail(0, "a strategy needs at least two users");
    }
    let mut edges: Vec<Edge> = Vec::new();
    for c in &coins {
        if c.edge.len() != k {
            return fail(0, format!("coin {c} is not {k}-uniform like the first coin"));
        }
        if !edges.contains(&c.edge) {
            edges.push(c.edge.clone());
        }
    }
    let graph = Hypergraph::new(n, k, edges).or_else(|e| fail(0, e.to_string()))?;

    let mut broadcasts = Vec::new();
    for (no, speaker, parity) in says {
        for sym in &parity {
            if !coins.contains(sym) {
                return fail(no, format!("symbol {sym} is not a declared coin"));
            }
            if !sym.edge.contains(speaker) {
                return fail(no, format!("speaker {speaker} cannot see coin {sym}"));
            }
        }
        let b = Broadcast::new(speaker, parity.clone());
        if b.parity.len() != parity.len() {
            return fail(no, "repeated symbol in parity list");
        }
        broadcasts.push(b);
    }

    let strategy = Strategy {
        graph,
        cluster: None,
        coins,
        broadcasts,
        chosen_subgraphs: Default::default(),
    };
    debug_assert!(strategy.validate().is_ok());
    Ok(strategy)
}

pub fn write_strategy(strategy: &Strategy) -> String {
    let mut out = String::new();
    for c in &strategy.coins {
        out.push_str(&format!("coin {} {}\n", c.edge, c.repetition));
    }
    for b in &strategy.broadcasts {
        let parts: Vec<String> = b.parity.iter().map(|s| s.to_string()).collect();
        out.push_str(&format!("say {}: {}\n", b.speaker, parts.join(" ^ ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::strategy::{
        synthesize_cluster_from_parts, synthesize_forehead, synthesize_topological,
        synthesize_tree,
    };

    #[test]
    fn network_roundtrip_plain() {
        let g = fixtures::fig3();
        let text = write_network(&g, None);
        assert!(text.starts_with("5 3\n1 2 3\n"));
        let parsed = parse_network(&text).unwrap();
        assert_eq!(parsed.graph, g);
        assert_eq!(parsed.components, None);
    }

    #[test]
    fn network_roundtrip_cluster() {
        let (base, comps) = fixtures::fig9_cluster();
        let text = write_network(&base, Some(&comps));
        let parsed = parse_network(&text).unwrap();
        assert_eq!(parsed.graph, base);
        assert_eq!(parsed.components.as_deref(), Some(comps.as_slice()));
    }

    #[test]
    fn network_parser_handles_comments_and_blanks() {
        let text = "# the minimal network\n\n5 3   # n k\n1 2 3\n1 2 4 # third edge next\n1 3 4\n1 2 5\n2 3 5\n2 4 5\n";
        let parsed = parse_network(text).unwrap();
        assert_eq!(parsed.graph, fixtures::fig3());
    }

    #[test]
    fn network_parser_reports_line_numbers() {
        let bad_edge = "5 3\n1 2 3\n1 2\n";
        let err = parse_network(bad_edge).unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("not 3-uniform"));

        let out_of_range = "4 2\n1 2\n3 9\n";
        let err = parse_network(out_of_range).unwrap_err();
        assert_eq!(err.line, 3);

        let dup = "4 2\n1 2\n2 1\n";
        let err = parse_network(dup).unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("duplicate"));

        let bad_header = "four 2\n1 2\n";
        assert_eq!(parse_network(bad_header).unwrap_err().line, 1);

        assert_eq!(parse_network("").unwrap_err().line, 0);
    }

    #[test]
    fn network_parser_rejects_bad_shapes() {
        assert!(parse_network("0 0\n").is_err());
        assert!(parse_network("3 4\n").is_err(), "k > n");
        let twice = "4 2\n1 2\ncomponents\n1 2\ncomponents\n";
        assert!(parse_network(twice).is_err());
        let empty_section = "4 2\n1 2\ncomponents\n";
        assert!(parse_network(empty_section).is_err());
    }

    #[test]
    fn strategy_roundtrip_preserves_coins_and_broadcasts() {
        let (base, comps) = fixtures::fig9_cluster();
        let strategies = vec![
            synthesize_topological(&fixtures::fig3()).unwrap(),
            synthesize_cluster_from_parts(&base, &comps).unwrap(),
            synthesize_tree(&fixtures::fig2_tree()).unwrap(),
            synthesize_forehead(4).unwrap(),
        ];
        for s in strategies {
            let text = write_strategy(&s);
            let parsed = parse_strategy(&text).unwrap();
            assert_eq!(parsed.coins, s.coins);
            assert_eq!(parsed.broadcasts, s.broadcasts);
            assert_eq!(write_strategy(&parsed), text, "writing is stable");
        }
    }

    #[test]
    fn strategy_writer_emits_the_documented_lines() {
        let s = synthesize_topological(&fixtures::fig3()).unwrap();
        let text = write_strategy(&s);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "coin 1-2-3 0");
        assert_eq!(lines[6], "say 1: 1-2-3/0 ^ 1-2-4/0 ^ 1-3-4/0");
        assert_eq!(lines[7], "say 2: 1-2-3/0 ^ 1-2-5/0 ^ 2-3-5/0");
        assert_eq!(lines[8], "say 2: 1-2-4/0 ^ 1-2-5/0 ^ 2-4-5/0");
    }

    #[test]
    fn strategy_parser_reconstructs_the_graph() {
        let text = "coin 1-2 0\ncoin 2-3 0\nsay 2: 1-2/0 ^ 2-3/0\n";
        let s = parse_strategy(text).unwrap();
        assert_eq!(s.graph.n(), 3);
        assert_eq!(s.graph.k(), 2);
        assert_eq!(s.graph.edges().len(), 2);
        assert_eq!(s.broadcasts.len(), 1);
        s.validate().unwrap();
    }

    #[test]
    fn strategy_parser_reports_line_numbers() {
        let unknown_coin = "coin 1-2 0\nsay 1: 1-3/0\n";
        let err = parse_strategy(unknown_coin).unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("not a declared coin"));

        let blind_speaker = "coin 1-2 0\ncoin 2-3 0\nsay 1: 2-3/0\n";
        let err = parse_strategy(blind_speaker).unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("cannot see"));

        let dup_coin = "coin 1-2 0\ncoin 1-2 0\n";
        assert_eq!(parse_strategy(dup_coin).unwrap_err().line, 2);

        let junk = "coin 1-2 0\nshout 1: 1-2/0\n";
        assert_eq!(parse_strategy(junk).unwrap_err().line, 2);

        assert_eq!(parse_strategy("").unwrap_err().line, 0);

        let lonely = "coin 1 0\n";
        let err = parse_strategy(lonely).unwrap_err();
        assert!(err.message.contains("two users"));
    }

    #[test]
    fn strategy_parser_rejects_mixed_uniformity() {
        let text = "coin 1-2 0\ncoin 1-2-3 0\n";
        let err = parse_strategy(text).unwrap_err();
        assert!(err.message.contains("uniform"));
    }
}
