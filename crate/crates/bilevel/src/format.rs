//! Line-oriented instance files.
//!
//! ```text
//! gctsp 1
//! <n> <m> <scale> <known_optimum | ?>
//! clusters <c_0> <c_1> ... <c_{n-1}>
//! e <u> <v> <w>      # symmetric edge, u < v
//! a <u> <v> <w>      # directed arc u -> v
//! ```
//!
//! Unlisted pairs are infinite. Lines starting with `#` and blank lines are
//! ignored. The writer emits the canonical form: no comments, pairs in
//! `(min, max)` order, an `e` line when both directions agree and `a` lines
//! otherwise.

use bilevel_core::{ClusteredGraph, Cost};
use thiserror::Error;

pub const MAGIC: &str = "gctsp 1";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("expected format header `{MAGIC}`")]
    BadMagic,
    #[error("malformed size line, expected `n m scale known_optimum|?`")]
    MalformedHeader,
    #[error("malformed clusters line")]
    MalformedClusters,
    #[error("node {0} has no cluster")]
    NodeWithoutCluster(usize),
    #[error("cluster id {0} out of range")]
    ClusterOutOfRange(usize),
    #[error("malformed edge line, expected `e u v w` or `a u v w`")]
    MalformedEdge,
    #[error("node {0} out of range")]
    NodeOutOfRange(usize),
    #[error("asymmetric cost line: symmetric edges are written `e u v w` with u < v and must not mix with `a` lines")]
    AsymmetricEdge,
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("unexpected end of file")]
    Truncated,
    #[error("invalid instance: {0}")]
    Invalid(bilevel_core::Error),
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn err<T>(line: usize, kind: ParseErrorKind) -> Result<T, ParseError> {
    Err(ParseError { line, kind })
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>) -> Option<T> {
    tok?.parse().ok()
}

#[derive(Clone, Copy, PartialEq)]
enum Origin {
    Unset,
    Edge,
    Arc,
}

pub fn parse_instance(text: &str) -> Result<ClusteredGraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let last_line = text.lines().count().max(1);

    let (ln, magic) = lines.next().ok_or(ParseError { line: last_line, kind: ParseErrorKind::Truncated })?;
    if magic.split_whitespace().collect::<Vec<_>>() != ["gctsp", "1"] {
        return err(ln, ParseErrorKind::BadMagic);
    }

    let (ln, header) = lines.next().ok_or(ParseError { line: last_line, kind: ParseErrorKind::Truncated })?;
    let mut toks = header.split_whitespace();
    let n: usize = parse_num(toks.next()).ok_or(ParseError { line: ln, kind: ParseErrorKind::MalformedHeader })?;
    let m: usize = parse_num(toks.next()).ok_or(ParseError { line: ln, kind: ParseErrorKind::MalformedHeader })?;
    let scale: u64 = parse_num(toks.next()).ok_or(ParseError { line: ln, kind: ParseErrorKind::MalformedHeader })?;
    let optimum = match toks.next() {
        Some("?") => None,
        Some(t) => match t.parse::<u64>() {
            Ok(v) if v <= Cost::MAX_FINITE => Some(Cost::new(v)),
            _ => return err(ln, ParseErrorKind::MalformedHeader),
        },
        None => return err(ln, ParseErrorKind::MalformedHeader),
    };
    if toks.next().is_some() {
        return err(ln, ParseErrorKind::MalformedHeader);
    }

    let (ln, clusters_line) =
        lines.next().ok_or(ParseError { line: last_line, kind: ParseErrorKind::Truncated })?;
    let mut toks = clusters_line.split_whitespace();
    if toks.next() != Some("clusters") {
        return err(ln, ParseErrorKind::MalformedClusters);
    }
    let mut cluster_of = Vec::with_capacity(n);
    for tok in toks {
        let c: usize = tok.parse().map_err(|_| ParseError { line: ln, kind: ParseErrorKind::MalformedClusters })?;
        if c >= m {
            return err(ln, ParseErrorKind::ClusterOutOfRange(c));
        }
        cluster_of.push(c);
    }
    if cluster_of.len() < n {
        return err(ln, ParseErrorKind::NodeWithoutCluster(cluster_of.len()));
    }
    if cluster_of.len() > n {
        return err(ln, ParseErrorKind::MalformedClusters);
    }

    let mut costs = vec![Cost::INFINITE; n * n];
    let mut origin = vec![Origin::Unset; n * n];
    for (ln, line) in lines {
        let mut toks = line.split_whitespace();
        let kind = toks.next();
        let u: Option<usize> = parse_num(toks.next());
        let v: Option<usize> = parse_num(toks.next());
        let w: Option<u64> = parse_num(toks.next());
        let (Some(u), Some(v), Some(w), None) = (u, v, w, toks.next()) else {
            return err(ln, ParseErrorKind::MalformedEdge);
        };
        if w > Cost::MAX_FINITE {
            return err(ln, ParseErrorKind::MalformedEdge);
        }
        for x in [u, v] {
            if x >= n {
                return err(ln, ParseErrorKind::NodeOutOfRange(x));
            }
        }
        match kind {
            Some("e") => {
                if u >= v {
                    return err(ln, ParseErrorKind::AsymmetricEdge);
                }
                for (a, b) in [(u, v), (v, u)] {
                    match origin[a * n + b] {
                        Origin::Unset => {}
                        Origin::Edge => return err(ln, ParseErrorKind::DuplicateEdge(u, v)),
                        Origin::Arc => return err(ln, ParseErrorKind::AsymmetricEdge),
                    }
                    origin[a * n + b] = Origin::Edge;
                    costs[a * n + b] = Cost::new(w);
                }
            }
            Some("a") => {
                match origin[u * n + v] {
                    Origin::Unset => {}
                    Origin::Arc => return err(ln, ParseErrorKind::DuplicateEdge(u, v)),
                    Origin::Edge => return err(ln, ParseErrorKind::AsymmetricEdge),
                }
                if u == v {
                    return err(ln, ParseErrorKind::MalformedEdge);
                }
                origin[u * n + v] = Origin::Arc;
                costs[u * n + v] = Cost::new(w);
            }
            _ => return err(ln, ParseErrorKind::MalformedEdge),
        }
    }

    let g = ClusteredGraph::new(cluster_of, costs, scale, optimum)
        .map_err(|e| ParseError { line: 2, kind: ParseErrorKind::Invalid(e) })?;
    if g.m() != m {
        return err(2, ParseErrorKind::MalformedHeader);
    }
    Ok(g)
}

pub fn write_instance(g: &ClusteredGraph) -> String {
    use std::fmt::Write;
    let n = g.n();
    let mut out = String::new();
    let opt = g.known_optimum().map_or_else(|| "?".to_string(), |c| c.to_string());
    writeln!(out, "{MAGIC}").unwrap();
    writeln!(out, "{} {} {} {}", n, g.m(), g.scale(), opt).unwrap();
    out.push_str("clusters");
    for &c in g.clusters() {
        write!(out, " {c}").unwrap();
    }
    out.push('\n');
    for u in 0..n {
        for v in u + 1..n {
            let (fwd, back) = (g.cost(u, v), g.cost(v, u));
            if fwd == back {
                if let Some(w) = fwd.finite() {
                    writeln!(out, "e {u} {v} {w}").unwrap();
                }
                continue;
            }
            if let Some(w) = fwd.finite() {
                writeln!(out, "a {u} {v} {w}").unwrap();
            }
            if let Some(w) = back.finite() {
                writeln!(out, "a {v} {u} {w}").unwrap();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use bilevel_core::{generate_gg_mst, generate_gg_tsp, generate_gs, generate_random};

    const SMALL: &str = "gctsp 1\n3 2 1 ?\nclusters 0 0 1\ne 0 2 5\ne 1 2 7\n";

    #[test]
    fn canonical_text_round_trips() {
        let g = parse_instance(SMALL).unwrap();
        assert_eq!(write_instance(&g), SMALL);
        assert!(g.cost(0, 1).is_infinite());
        assert_eq!(g.cost(2, 0), Cost::new(5));
    }

    #[test]
    fn generators_round_trip() {
        for g in [
            generate_gs(4).unwrap(),
            generate_gg_mst(5).unwrap(),
            generate_gg_tsp(4).unwrap(),
            generate_random(&[2, 3, 1], 9, 4).unwrap(),
        ] {
            let text = write_instance(&g);
            let back = parse_instance(&text).unwrap();
            assert_eq!(back, g);
            assert_eq!(write_instance(&back), text);
        }
    }

    #[test]
    fn comments_and_order_are_tolerated() {
        let text = "# header\ngctsp 1\n\n3 2 1 5\n# clusters next\nclusters 0 0 1\ne 1 2 7\ne 0 2 5\n";
        let g = parse_instance(text).unwrap();
        assert_eq!(g.known_optimum(), Some(Cost::new(5)));
        assert_eq!(write_instance(&g), SMALL.replace(" ?", " 5"));
    }

    fn kind_at(text: &str) -> (usize, ParseErrorKind) {
        let e = parse_instance(text).unwrap_err();
        (e.line, e.kind)
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(kind_at("gctsp 2\n"), (1, ParseErrorKind::BadMagic));
        assert_eq!(kind_at("gctsp 1\n3 x 1 ?\n"), (2, ParseErrorKind::MalformedHeader));
        assert_eq!(kind_at("gctsp 1\n3 2 1\n"), (2, ParseErrorKind::MalformedHeader));
        assert_eq!(
            kind_at("gctsp 1\n3 2 1 ?\nclusters 0 1\n"),
            (3, ParseErrorKind::NodeWithoutCluster(2))
        );
        assert_eq!(
            kind_at("gctsp 1\n3 2 1 ?\nclusters 0 0 1\ne 2 0 5\n"),
            (4, ParseErrorKind::AsymmetricEdge)
        );
        assert_eq!(
            kind_at("gctsp 1\n3 2 1 ?\nclusters 0 0 1\ne 0 2 5\na 2 0 5\n"),
            (5, ParseErrorKind::AsymmetricEdge)
        );
        assert_eq!(
            kind_at("gctsp 1\n3 2 1 ?\nclusters 0 0 1\ne 0 2 5\n# dup\ne 0 2 6\n"),
            (6, ParseErrorKind::DuplicateEdge(0, 2))
        );
        assert_eq!(
            kind_at("gctsp 1\n3 2 1 ?\nclusters 0 0 1\na 0 2 5\na 0 2 5\n"),
            (5, ParseErrorKind::DuplicateEdge(0, 2))
        );
        assert_eq!(
            kind_at("gctsp 1\n3 2 1 ?\nclusters 0 0 1\ne 0 9 5\n"),
            (4, ParseErrorKind::NodeOutOfRange(9))
        );
        assert_eq!(
            kind_at("gctsp 1\n3 2 1 ?\nclusters 0 0 1\nx 0 1 5\n"),
            (4, ParseErrorKind::MalformedEdge)
        );
        assert_eq!(kind_at("gctsp 1\n3 2 1 ?\n").1, ParseErrorKind::Truncated);
    }

    #[test]
    fn directed_arcs() {
        let text = "gctsp 1\n2 2 1 ?\nclusters 0 1\na 0 1 3\na 1 0 4\n";
        let g = parse_instance(text).unwrap();
        assert!(!g.is_symmetric());
        assert_eq!(write_instance(&g), text);
    }
}
