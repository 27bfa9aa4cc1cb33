use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// Wire form of a graph: `{nodes:[id], edges:[{id,src,tgt}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphData {
    pub nodes: Vec<String>,
    pub edges: Vec<EdgeSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite directed multigraph. Nodes and edges are kept in lexicographic id order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinGraph {
    nodes: Vec<String>,
    edges: Vec<Edge>,
    node_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
}

/// A path in a [`FinGraph`]: a start node and composable edge steps.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub start: usize,
    pub steps: Vec<usize>,
}

impl FinGraph {
    pub fn new(data: &GraphData) -> Result<FinGraph> {
        let mut nodes = data.nodes.clone();
        nodes.sort();
        if nodes.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedInput("duplicate node id".into()));
        }
        let node_index: HashMap<String, usize> =
            nodes.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let mut specs: Vec<&EdgeSpec> = data.edges.iter().collect();
        specs.sort_by(|a, b| a.id.cmp(&b.id));
        let mut edges = Vec::new();
        for e in specs {
            let end = |n: &String| {
                node_index
                    .get(n)
                    .copied()
                    .ok_or_else(|| Error::MalformedInput(format!("edge `{}` has dangling endpoint `{n}`", e.id)))
            };
            edges.push(Edge {
                id: e.id.clone(),
                src: end(&e.src)?,
                tgt: end(&e.tgt)?,
            });
        }
        if edges.windows(2).any(|w| w[0].id == w[1].id) {
            return Err(Error::MalformedInput("duplicate edge id".into()));
        }
        let edge_index = edges.iter().enumerate().map(|(i, e)| (e.id.clone(), i)).collect();
        Ok(FinGraph {
            nodes,
            edges,
            node_index,
            edge_index,
        })
    }

    pub fn from_parts<N: AsRef<str>, E: AsRef<str>>(nodes: &[N], edges: &[(E, N, N)]) -> Result<FinGraph> {
        FinGraph::new(&GraphData {
            nodes: nodes.iter().map(|n| n.as_ref().to_string()).collect(),
            edges: edges
                .iter()
                .map(|(e, s, t)| EdgeSpec {
                    id: e.as_ref().into(),
                    src: s.as_ref().into(),
                    tgt: t.as_ref().into(),
                })
                .collect(),
        })
    }

    pub fn to_data(&self) -> GraphData {
        GraphData {
            nodes: self.nodes.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    id: e.id.clone(),
                    src: self.nodes[e.src].clone(),
                    tgt: self.nodes[e.tgt].clone(),
                })
                .collect(),
        }
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node(&self, id: &str) -> Result<usize> {
        self.node_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownNode(id.to_string()))
    }

    pub fn edge(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    pub fn path_end(&self, p: &Path) -> usize {
        p.steps.last().map_or(p.start, |&e| self.edges[e].tgt)
    }

    pub fn is_path(&self, p: &Path) -> bool {
        let mut at = p.start;
        for &e in &p.steps {
            if self.edges[e].src != at {
                return false;
            }
            at = self.edges[e].tgt;
        }
        true
    }

    /// Concatenation `p` then `q`; `None` if `q` does not start where `p` ends.
    pub fn concat(&self, p: &Path, q: &Path) -> Option<Path> {
        if self.path_end(p) != q.start {
            return None;
        }
        let mut steps = p.steps.clone();
        steps.extend(&q.steps);
        Some(Path { start: p.start, steps })
    }

    pub fn render(&self, p: &Path) -> String {
        if p.steps.is_empty() {
            return format!("id_{}", self.nodes[p.start]);
        }
        p.steps.iter().map(|&e| self.edges[e].id.as_str()).collect::<Vec<_>>().join(".")
    }

    /// All paths `a → b` with at most `maxlen` steps, shortest first and
    /// lexicographic by edge id within a length.
    pub fn enumerate_paths(&self, a: &str, b: &str, maxlen: usize) -> Result<Vec<Path>> {
        let (a, b) = (self.node(a)?, self.node(b)?);
        let mut out = Vec::new();
        let mut layer = vec![Path {
            start: a,
            steps: Vec::new(),
        }];
        // nodes that can still reach `b` within the remaining budget
        let dist = self.distances_to(b);
        for len in 0..=maxlen {
            out.extend(layer.iter().filter(|p| self.path_end(p) == b).cloned());
            if len == maxlen {
                break;
            }
            let mut next = Vec::new();
            for p in &layer {
                let end = self.path_end(p);
                for (i, e) in self.edges.iter().enumerate() {
                    if e.src == end && dist[e.tgt].is_some_and(|d| d < maxlen - len) {
                        let mut steps = p.steps.clone();
                        steps.push(i);
                        next.push(Path { start: a, steps });
                    }
                }
            }
            layer = next;
        }
        Ok(out)
    }

    fn distances_to(&self, b: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.nodes.len()];
        dist[b] = Some(0);
        let mut queue = VecDeque::from([b]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap_or(0);
            for e in &self.edges {
                if e.tgt == v && dist[e.src].is_none() {
                    dist[e.src] = Some(d + 1);
                    queue.push_back(e.src);
                }
            }
        }
        dist
    }

    /// Connected components of the underlying undirected graph, each sorted,
    /// listed by least node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let k = out.len();
            let mut members = BTreeSet::new();
            let mut queue = VecDeque::from([s]);
            comp[s] = k;
            while let Some(v) = queue.pop_front() {
                members.insert(v);
                for e in &self.edges {
                    for (x, y) in [(e.src, e.tgt), (e.tgt, e.src)] {
                        if x == v && comp[y] == usize::MAX {
                            comp[y] = k;
                            queue.push_back(y);
                        }
                    }
                }
            }
            out.push(members.into_iter().collect());
        }
        out
    }

    /// Spanning forest by BFS from the least node of each component; edges
    /// scanned in id order.
    pub fn spanning_forest(&self) -> BTreeSet<usize> {
        let n = self.nodes.len();
        let mut seen = vec![false; n];
        let mut tree = BTreeSet::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for (i, e) in self.edges.iter().enumerate() {
                    let other = if e.src == v {
                        e.tgt
                    } else if e.tgt == v {
                        e.src
                    } else {
                        continue;
                    };
                    if !seen[other] {
                        seen[other] = true;
                        tree.insert(i);
                        queue.push_back(other);
                    }
                }
            }
        }
        tree
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(g: &FinGraph, ps: &[Path]) -> Vec<String> {
        ps.iter().map(|p| g.render(p)).collect()
    }

    #[test]
    fn loop_has_one_path_per_length() {
        let g = FinGraph::from_parts(&["n"], &[("x", "n", "n")]).unwrap();
        let ps = g.enumerate_paths("n", "n", 3).unwrap();
        assert_eq!(names(&g, &ps), ["id_n", "x", "x.x", "x.x.x"]);
    }

    #[test]
    fn empty_hom_between_distinct_nodes() {
        let g = FinGraph::from_parts::<&str, &str>(&["a", "b"], &[]).unwrap();
        assert!(g.enumerate_paths("a", "b", 5).unwrap().is_empty());
    }

    #[test]
    fn parallel_edges() {
        let g = FinGraph::from_parts(&["n1", "n2"], &[("u", "n1", "n2"), ("v", "n1", "n2")]).unwrap();
        assert_eq!(names(&g, &g.enumerate_paths("n1", "n2", 1).unwrap()), ["u", "v"]);
    }

    #[test]
    fn unknown_node() {
        let g = FinGraph::from_parts::<&str, &str>(&["a"], &[]).unwrap();
        assert!(matches!(g.enumerate_paths("a", "z", 1), Err(Error::UnknownNode(_))));
    }

    #[test]
    fn dangling_edge_rejected() {
        assert!(FinGraph::from_parts(&["a"], &[("e", "a", "q")]).is_err());
    }
}
