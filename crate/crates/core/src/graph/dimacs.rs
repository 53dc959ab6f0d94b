use std::fmt::Write as _;

use super::Graph;
use crate::error::GraphError;

/// Parses the DIMACS `p edge n m` / `e u v` format (1-based endpoints).
///
/// Comment lines (`c ...`) and blank lines are skipped. The edge count in the
/// header is informational; duplicate and reversed edge lines collapse.
pub fn parse_dimacs(text: &str) -> Result<Graph, GraphError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |msg: &str| GraphError::Parse {
            line: line_no,
            msg: msg.to_string(),
        };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("p") => {
                if n.is_some() {
                    return Err(err("duplicate header"));
                }
                match parts.next() {
                    Some("edge") | Some("col") => {}
                    _ => return Err(err("expected `p edge <n> <m>`")),
                }
                let nv = parts
                    .next()
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| err("bad vertex count"))?;
                parts
                    .next()
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| err("bad edge count"))?;
                if parts.next().is_some() {
                    return Err(err("trailing tokens in header"));
                }
                n = Some(nv);
            }
            Some("e") => {
                let nv = n.ok_or_else(|| err("edge before header"))?;
                let mut end = || {
                    parts
                        .next()
                        .and_then(|s| s.parse::<usize>().ok())
                        .ok_or_else(|| err("bad edge endpoint"))
                };
                let u = end()?;
                let v = end()?;
                if u == 0 || v == 0 || u > nv || v > nv {
                    return Err(err(&format!("endpoint out of range 1..={nv}")));
                }
                if u == v {
                    return Err(err("self-loop"));
                }
                edges.push((u - 1, v - 1));
            }
            _ => return Err(err("unrecognised line")),
        }
    }
    let n = n.ok_or(GraphError::Parse {
        line: 0,
        msg: "missing `p edge` header".into(),
    })?;
    Graph::from_edges(n, &edges)
}

/// Writes `g` in DIMACS edge format with 1-based endpoints.
pub fn write_dimacs(g: &Graph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "p edge {} {}", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "e {} {}", u + 1, v + 1);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let g = parse_dimacs("p edge 2 1\ne 1 2\n").unwrap();
        assert_eq!((g.n(), g.edge_count()), (2, 1));
        assert!(g.has_edge(0, 1));
    }

    #[test]
    fn empty_graph() {
        let g = parse_dimacs("c nothing here\np edge 3 0\n").unwrap();
        assert_eq!((g.n(), g.edge_count()), (3, 0));
    }

    #[test]
    fn path_and_duplicates() {
        let g = parse_dimacs("p edge 3 2\ne 1 2\ne 2 3\ne 2 1\n").unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(1, 2) && !g.has_edge(0, 2));
    }

    #[test]
    fn errors_name_the_line() {
        let e = parse_dimacs("p edge 2 1\ne 1 3\n").unwrap_err();
        assert!(matches!(e, GraphError::Parse { line: 2, .. }));
        let e = parse_dimacs("p edge 2 1\n\ne 2 2\n").unwrap_err();
        assert!(matches!(e, GraphError::Parse { line: 3, .. }));
        let e = parse_dimacs("p graph 2\n").unwrap_err();
        assert!(matches!(e, GraphError::Parse { line: 1, .. }));
        assert!(parse_dimacs("e 1 2\n").is_err());
    }

    #[test]
    fn write_then_parse() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3), (1, 3)]).unwrap();
        assert_eq!(parse_dimacs(&write_dimacs(&g)).unwrap(), g);
    }
}
