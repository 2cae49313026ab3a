use std::collections::BTreeSet;
use std::io::BufRead;

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// A graph over dense vertex ids `0..n`, stored as deduplicated arcs with a
/// CSR out-adjacency. Undirected input is expanded to both arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n_vertices: usize,
    directed: bool,
    arcs: Vec<(u32, u32)>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Graph {
    /// Builds a graph from `(source, target)` pairs over `0..n_vertices`.
    /// Duplicates and self-loops are dropped; for undirected graphs every
    /// edge also contributes its reverse arc.
    pub fn new(n_vertices: usize, edges: &[(usize, usize)], directed: bool) -> Self {
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            assert!(
                u < n_vertices && v < n_vertices,
                "edge ({u}, {v}) out of range"
            );
            if u == v {
                continue;
            }
            set.insert((u as u32, v as u32));
            if !directed {
                set.insert((v as u32, u as u32));
            }
        }
        let arcs: Vec<(u32, u32)> = set.into_iter().collect();
        let mut offsets = vec![0usize; n_vertices + 1];
        for &(u, _) in &arcs {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n_vertices {
            offsets[i + 1] += offsets[i];
        }
        // arcs are sorted by source, so targets line up with offsets
        let targets = arcs.iter().map(|&(_, v)| v).collect();
        Graph {
            n_vertices,
            directed,
            arcs,
            offsets,
            targets,
        }
    }

    /// Random digraph where each ordered pair `(u, v)`, `u != v`, is an arc
    /// with probability `arc_probability`.
    pub fn random(n_vertices: usize, arc_probability: f64, rng: &mut RngStream) -> Self {
        let mut edges = Vec::new();
        for u in 0..n_vertices {
            for v in 0..n_vertices {
                if u != v && rng.random_bool(arc_probability) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n_vertices, &edges, true)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Deduplicated arcs, sorted by `(source, target)`.
    pub fn arcs(&self) -> &[(u32, u32)] {
        &self.arcs
    }

    pub fn n_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn out_neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }
}

/// Parses a whitespace-separated edge list, one `u v` pair per line.
///
/// Lines starting with `#` or `%` and blank lines are skipped, tokens after
/// the second are ignored. Original ids are remapped to `0..n` in ascending
/// order.
pub fn load_edge_list<R: BufRead>(reader: R, directed: bool) -> Result<Graph> {
    let mut raw = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::MalformedLine {
            line: lineno,
            reason: e.to_string(),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let mut next_id = || -> Result<u64> {
            let tok = tokens.next().ok_or_else(|| Error::MalformedLine {
                line: lineno,
                reason: "expected two vertex ids".into(),
            })?;
            tok.parse::<u64>().map_err(|_| Error::MalformedLine {
                line: lineno,
                reason: format!("`{tok}` is not a nonnegative integer"),
            })
        };
        let u = next_id()?;
        let v = next_id()?;
        raw.push((u, v));
    }
    if raw.is_empty() {
        return Err(Error::EmptyGraph);
    }

    let ids: Vec<u64> = raw
        .iter()
        .flat_map(|&(u, v)| [u, v])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let dense = |x: u64| ids.binary_search(&x).expect("id collected above");
    let edges: Vec<(usize, usize)> = raw.iter().map(|&(u, v)| (dense(u), dense(v))).collect();
    Ok(Graph::new(ids.len(), &edges, directed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_loops_dropped_but_vertex_kept() {
        let g = load_edge_list("4 4\n4 7\n".as_bytes(), true).unwrap();
        assert_eq!(g.n_vertices(), 2);
        assert_eq!(g.arcs(), &[(0, 1)]);
    }

    #[test]
    fn parses_directed_list() {
        let g = load_edge_list("0 1\n1 2\n".as_bytes(), true).unwrap();
        assert_eq!(g.n_vertices(), 3);
        assert_eq!(g.arcs(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn skips_comments_dedups_and_remaps() {
        let g = load_edge_list("# c\n5 9\n5 9\n".as_bytes(), true).unwrap();
        assert_eq!(g.n_vertices(), 2);
        assert_eq!(g.arcs(), &[(0, 1)]);
        let g = load_edge_list("% header\n\n3 7 0.25\n".as_bytes(), true).unwrap();
        assert_eq!(g.arcs(), &[(0, 1)]);
    }

    #[test]
    fn rejects_bad_tokens() {
        let err = load_edge_list("a b\n".as_bytes(), true).unwrap_err();
        assert!(matches!(err, Error::MalformedLine { line: 1, .. }));
        let err = load_edge_list("1\n".as_bytes(), true).unwrap_err();
        assert!(matches!(err, Error::MalformedLine { line: 1, .. }));
        assert_eq!(
            load_edge_list("# only\n".as_bytes(), true).unwrap_err(),
            Error::EmptyGraph
        );
    }

    #[test]
    fn undirected_expands_both_arcs() {
        let g = load_edge_list("0 1\n1 0\n1 2\n".as_bytes(), false).unwrap();
        assert_eq!(g.arcs(), &[(0, 1), (1, 0), (1, 2), (2, 1)]);
        assert_eq!(g.out_degree(1), 2);
        assert_eq!(g.out_neighbors(1), &[0, 2]);
    }

    #[test]
    fn random_graph_is_seeded() {
        let a = Graph::random(20, 0.2, &mut RngStream::new(1));
        let b = Graph::random(20, 0.2, &mut RngStream::new(1));
        assert_eq!(a, b);
        assert!(a.arcs().iter().all(|&(u, v)| u != v));
    }
}
