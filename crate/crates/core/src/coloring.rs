//! Undirected graphs, degeneracy ordering and greedy coloring along it.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Simple undirected graph over labelled vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<u64>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(labels: Vec<u64>) -> Self {
        let adj = vec![Vec::new(); labels.len()];
        Graph { labels, adj }
    }

    /// Builds a graph from index pairs; self-loops are rejected, duplicates merged.
    pub fn from_edges(labels: Vec<u64>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = labels.len();
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidParameter(format!("edge ({a}, {b}) out of range")));
            }
            if a == b {
                return Err(Error::InvalidParameter(format!("self-loop on vertex {}", labels[a])));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { labels, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn label(&self, v: usize) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Each edge once, as `(a, b)` with `a < b`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(a, l)| l.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    /// Edge-list text: `vertices <ids...>` header, then one `id1 id2` line per edge.
    pub fn to_edge_list(&self, comment: Option<&str>) -> String {
        let mut out = String::new();
        if let Some(c) = comment {
            let _ = writeln!(out, "# {c}");
        }
        out.push_str("vertices");
        for l in &self.labels {
            let _ = write!(out, " {l}");
        }
        out.push('\n');
        for (a, b) in self.edges() {
            let _ = writeln!(out, "{} {}", self.labels[a], self.labels[b]);
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut labels: Option<Vec<u64>> = None;
        let mut index = HashMap::new();
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |what: &str| Error::Parse(format!("line {}: {what}", lineno + 1));
            let mut tokens = line.split_whitespace();
            match &labels {
                None => {
                    if tokens.next() != Some("vertices") {
                        return Err(bad("expected `vertices` header"));
                    }
                    let ids = tokens
                        .map(|t| t.parse::<u64>().map_err(|_| bad("bad vertex id")))
                        .collect::<Result<Vec<_>>>()?;
                    for (i, &id) in ids.iter().enumerate() {
                        if index.insert(id, i).is_some() {
                            return Err(bad("duplicate vertex id"));
                        }
                    }
                    labels = Some(ids);
                }
                Some(_) => {
                    let mut end = || -> Result<usize> {
                        let t = tokens.next().ok_or_else(|| bad("expected two vertex ids"))?;
                        let id: u64 = t.parse().map_err(|_| bad("bad vertex id"))?;
                        index.get(&id).copied().ok_or_else(|| bad("unknown vertex id"))
                    };
                    let (a, b) = (end()?, end()?);
                    if tokens.next().is_some() {
                        return Err(bad("trailing tokens"));
                    }
                    edges.push((a, b));
                }
            }
        }
        let labels = labels.ok_or_else(|| Error::Parse("missing `vertices` header".into()))?;
        Graph::from_edges(labels, edges)
    }
}

/// Color index per vertex, contiguous from 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub num_colors: usize,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        let num_colors = colors.iter().max().map_or(0, |&m| m + 1);
        Coloring { colors, num_colors }
    }

    /// Vertices grouped by color, each class in ascending vertex order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_colors];
        for (v, &c) in self.colors.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

/// Smallest-last ordering: repeatedly removes a minimum-degree vertex (lowest
/// label on ties). Returns the removal order and the degeneracy, the largest
/// degree seen at removal time.
pub fn degeneracy_order(g: &Graph) -> (Vec<usize>, usize) {
    let n = g.vertex_count();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, u64, usize)> = (0..n).map(|v| (degree[v], g.label(v), v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut delta = 0;
    while let Some((d, _, v)) = queue.pop_first() {
        delta = delta.max(d);
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                queue.remove(&(degree[w], g.label(w), w));
                degree[w] -= 1;
                queue.insert((degree[w], g.label(w), w));
            }
        }
    }
    (order, delta)
}

/// Greedy coloring in reverse degeneracy order; uses at most `delta + 1` colors.
pub fn hochbaum_color(g: &Graph) -> Coloring {
    let (order, _) = degeneracy_order(g);
    let n = g.vertex_count();
    let mut colors = vec![usize::MAX; n];
    let mut taken = Vec::new();
    for &v in order.iter().rev() {
        taken.clear();
        taken.resize(g.degree(v) + 1, false);
        for &w in g.neighbors(v) {
            let c = colors[w];
            if c < taken.len() {
                taken[c] = true;
            }
        }
        colors[v] = taken.iter().position(|&t| !t).expect("degree + 1 slots, at most degree taken");
    }
    Coloring::new(colors)
}

pub fn is_proper(g: &Graph, coloring: &Coloring) -> bool {
    coloring.colors.len() == g.vertex_count() && g.edges().all(|(a, b)| coloring.colors[a] != coloring.colors[b])
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cycle(n: usize) -> Graph {
        Graph::from_edges((0..n as u64).collect(), (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        Graph::from_edges((0..n as u64).collect(), edges).unwrap()
    }

    #[test]
    fn degeneracy_examples() {
        assert_eq!(degeneracy_order(&Graph::new(vec![1, 2, 3])).1, 0);
        assert_eq!(degeneracy_order(&complete(3)).1, 2);
        assert_eq!(degeneracy_order(&cycle(4)).1, 2);
        assert_eq!(degeneracy_order(&complete(10)).1, 9);
    }

    #[test]
    fn degeneracy_ties_break_on_label() {
        let g = Graph::from_edges(vec![30, 10, 20], [(0, 1)]).unwrap();
        let (order, _) = degeneracy_order(&g);
        assert_eq!(order.iter().map(|&v| g.label(v)).collect::<Vec<_>>(), vec![20, 10, 30]);
    }

    #[test]
    fn star_has_degeneracy_one() {
        let g = Graph::from_edges((0..6).collect(), (1..6).map(|i| (0, i))).unwrap();
        assert_eq!(degeneracy_order(&g).1, 1);
        assert_eq!(hochbaum_color(&g).num_colors, 2);
    }

    #[test]
    fn coloring_examples() {
        let empty = Graph::new(vec![4, 5, 6]);
        assert_eq!(hochbaum_color(&empty).num_colors, 1);
        let tri = complete(3);
        assert_eq!(hochbaum_color(&tri).num_colors, 3);
        let c4 = cycle(4);
        let col = hochbaum_color(&c4);
        assert!(col.num_colors <= 3);
        assert!(is_proper(&c4, &col));
    }

    #[test]
    fn is_proper_examples() {
        let empty = Graph::new(vec![1, 2, 3]);
        assert!(is_proper(&empty, &Coloring::new(vec![0, 0, 0])));
        assert!(!is_proper(&complete(3), &Coloring::new(vec![0, 0, 0])));
        assert!(!is_proper(&complete(3), &Coloring::new(vec![0, 1])));
        let g = cycle(5);
        assert!(is_proper(&g, &hochbaum_color(&g)));
    }

    #[test]
    fn self_loops_rejected() {
        assert!(Graph::from_edges(vec![1, 2], [(1, 1)]).is_err());
        assert!(Graph::from_edges(vec![1, 2], [(0, 2)]).is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::from_edges(vec![7, 3, 9], [(0, 1), (1, 2), (2, 1)]).unwrap();
        let text = g.to_edge_list(Some("q=2 model=bidirectional"));
        assert_eq!(text, "# q=2 model=bidirectional\nvertices 7 3 9\n7 3\n3 9\n");
        assert_eq!(Graph::parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_errors() {
        assert!(Graph::parse_edge_list("1 2\n").is_err());
        assert!(Graph::parse_edge_list("vertices 1 2\n1 5\n").is_err());
        assert!(Graph::parse_edge_list("vertices 1 2\n1\n").is_err());
        assert!(Graph::parse_edge_list("vertices 1 1\n").is_err());
        assert!(Graph::parse_edge_list("# nothing\n").is_err());
        let g = Graph::parse_edge_list("vertices\n").unwrap();
        assert_eq!(g.vertex_count(), 0);
    }
}
