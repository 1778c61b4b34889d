//! Graph and rooted-tree representations with exact Szeged-type indices.

use crate::error::{Error, Result};
use crate::num::{self, Int};

/// Largest vertex count accepted when materializing complete k-ary trees.
pub const MAX_KARY_VERTICES: u64 = 2_000_000;

/// Vertex counts on the two sides of an edge: vertices strictly closer to
/// one endpoint than to the other. Equidistant vertices belong to neither.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeSplit {
    pub n_u: usize,
    pub n_v: usize,
}

/// A connected simple graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
}

impl Graph {
    /// Builds and validates a graph: no self-loops, no duplicate edges,
    /// connected, all labels in range.
    pub fn new(n: usize, edges: Vec<(u32, u32)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation("graph must have at least one vertex".into()));
        }
        let mut seen = std::collections::HashSet::new();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::Validation(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::Validation(format!("self-loop at vertex {u}")));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::Validation(format!("duplicate edge ({}, {})", key.0, key.1)));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        let g = Graph { n, edges, adj };
        if !g.is_connected() {
            return Err(Error::Validation("graph is disconnected".into()));
        }
        Ok(g)
    }

    /// Parses the line-oriented edge-list format: two integers per line,
    /// `#` starts a comment, an optional `n <count>` header fixes the vertex
    /// count (otherwise it is 1 + the largest label).
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut header_n: Option<usize> = None;
        let mut max_label: u32 = 0;
        let mut saw_vertex = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens[0] == "n" {
                if tokens.len() != 2 {
                    return Err(Error::Parse(format!("line {}: malformed header", lineno + 1)));
                }
                header_n = Some(tokens[1].parse::<usize>().map_err(|_| {
                    Error::Parse(format!("line {}: bad vertex count '{}'", lineno + 1, tokens[1]))
                })?);
                continue;
            }
            if tokens.len() != 2 {
                return Err(Error::Parse(format!(
                    "line {}: expected two vertex labels, got '{line}'",
                    lineno + 1
                )));
            }
            let parse = |t: &str| {
                t.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("line {}: bad vertex label '{t}'", lineno + 1)))
            };
            let (u, v) = (parse(tokens[0])?, parse(tokens[1])?);
            max_label = max_label.max(u).max(v);
            saw_vertex = true;
            edges.push((u, v));
        }
        let n = match header_n {
            Some(n) => n,
            None if saw_vertex => max_label as usize + 1,
            None => return Err(Error::Parse("empty edge list".into())),
        };
        Graph::new(n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() == self.n - 1
    }

    fn is_connected(&self) -> bool {
        let dist = self.bfs_distances(0);
        dist.iter().all(|&d| d != u32::MAX)
    }

    fn bfs_distances(&self, src: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n];
        let mut queue = std::collections::VecDeque::new();
        dist[src as usize] = 0;
        queue.push_back(src);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v as usize] {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[v as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].contains(&v)
    }

    /// Per-edge vertex split via two breadth-first sweeps.
    pub fn edge_split(&self, u: u32, v: u32) -> Result<EdgeSplit> {
        if u as usize >= self.n || v as usize >= self.n || !self.has_edge(u, v) {
            return Err(Error::Domain(format!("edge ({u}, {v}) is not in the graph")));
        }
        let du = self.bfs_distances(u);
        let dv = self.bfs_distances(v);
        let mut n_u = 0;
        let mut n_v = 0;
        for w in 0..self.n {
            if du[w] < dv[w] {
                n_u += 1;
            } else if dv[w] < du[w] {
                n_v += 1;
            }
        }
        Ok(EdgeSplit { n_u, n_v })
    }

    /// Szeged index: sum over edges of the split product.
    pub fn szeged_index<T: Int>(&self) -> Result<T> {
        let mut total = T::zero();
        for &(u, v) in &self.edges {
            let s = self.edge_split(u, v)?;
            let prod = num::mul(T::from_count(s.n_u)?, T::from_count(s.n_v)?)?;
            total = num::add(total, prod)?;
        }
        Ok(total)
    }

    /// Weighted Szeged index: sum over edges of (deg(u)+deg(v)) times the
    /// split product.
    pub fn weighted_szeged_index<T: Int>(&self) -> Result<T> {
        let mut total = T::zero();
        for &(u, v) in &self.edges {
            let s = self.edge_split(u, v)?;
            let w = T::from_count(self.degree(u) + self.degree(v))?;
            let prod = num::mul(T::from_count(s.n_u)?, T::from_count(s.n_v)?)?;
            total = num::add(total, num::mul(w, prod)?)?;
        }
        Ok(total)
    }

    /// Centroid vertices of a tree (one or two).
    pub fn centroids(&self) -> Result<Vec<u32>> {
        if !self.is_tree() {
            return Err(Error::Domain("centroids are defined for trees only".into()));
        }
        let n = self.n;
        // iterative post-order from vertex 0
        let mut parent = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![0u32];
        parent[0] = 0;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &self.adj[v as usize] {
                if parent[w as usize] == u32::MAX {
                    parent[w as usize] = v;
                    stack.push(w);
                }
            }
        }
        let mut size = vec![1usize; n];
        for &v in order.iter().rev() {
            if v != 0 {
                size[parent[v as usize] as usize] += size[v as usize];
            }
        }
        let mut best = usize::MAX;
        let mut centroids = Vec::new();
        for v in 0..n as u32 {
            let mut heaviest = n - size[v as usize];
            for &w in &self.adj[v as usize] {
                if parent[w as usize] == v && w != 0 {
                    heaviest = heaviest.max(size[w as usize]);
                }
            }
            // children in the rooted sense are neighbors w with parent[w] == v
            match heaviest.cmp(&best) {
                std::cmp::Ordering::Less => {
                    best = heaviest;
                    centroids = vec![v];
                }
                std::cmp::Ordering::Equal => centroids.push(v),
                std::cmp::Ordering::Greater => {}
            }
        }
        Ok(centroids)
    }

    /// Canonical string for a free tree: AHU encoding rooted at the
    /// centroid, taking the lexicographically smaller encoding when the
    /// centroid is an edge.
    pub fn free_canonical(&self) -> Result<String> {
        let centroids = self.centroids()?;
        let mut encs: Vec<String> = centroids.iter().map(|&c| self.ahu_encode(c)).collect();
        encs.sort();
        Ok(encs.swap_remove(0))
    }

    fn ahu_encode(&self, root: u32) -> String {
        fn rec(g: &Graph, v: u32, from: u32) -> String {
            let mut parts: Vec<String> = g.adj[v as usize]
                .iter()
                .filter(|&&w| w != from)
                .map(|&w| rec(g, w, v))
                .collect();
            parts.sort();
            let mut s = String::with_capacity(2 + parts.iter().map(String::len).sum::<usize>());
            s.push('(');
            for p in parts {
                s.push_str(&p);
            }
            s.push(')');
            s
        }
        rec(self, root, u32::MAX)
    }
}

/// A rooted tree with parent links, child lists, and subtree sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    root: u32,
    parent: Vec<Option<u32>>,
    children: Vec<Vec<u32>>,
    subtree: Vec<usize>,
}

impl RootedTree {
    pub fn from_graph(graph: &Graph, root: u32) -> Result<Self> {
        if !graph.is_tree() {
            return Err(Error::Domain("not a tree".into()));
        }
        let n = graph.vertex_count();
        if root as usize >= n {
            return Err(Error::Domain(format!("root {root} out of range")));
        }
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut order = Vec::with_capacity(n);
        let mut visited = vec![false; n];
        let mut stack = vec![root];
        visited[root as usize] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in graph.neighbors(v) {
                if !visited[w as usize] {
                    visited[w as usize] = true;
                    parent[w as usize] = Some(v);
                    children[v as usize].push(w);
                    stack.push(w);
                }
            }
        }
        let mut subtree = vec![1usize; n];
        for &v in order.iter().rev() {
            if let Some(p) = parent[v as usize] {
                subtree[p as usize] += subtree[v as usize];
            }
        }
        Ok(RootedTree { root, parent, children, subtree })
    }

    /// Builds a rooted tree directly from parent links (parent[i] < i is not
    /// required; root is the unique vertex with no parent).
    pub fn from_parents(parent: Vec<Option<u32>>) -> Result<Self> {
        let n = parent.len();
        let mut edges = Vec::with_capacity(n.saturating_sub(1));
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = p {
                edges.push((*p, v as u32));
            }
        }
        let root = parent
            .iter()
            .position(|p| p.is_none())
            .ok_or_else(|| Error::Validation("no root vertex".into()))? as u32;
        let graph = Graph::new(n, edges)?;
        RootedTree::from_graph(&graph, root)
    }

    pub fn order(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn parent(&self, v: u32) -> Option<u32> {
        self.parent[v as usize]
    }

    pub fn children(&self, v: u32) -> &[u32] {
        &self.children[v as usize]
    }

    pub fn subtree_size(&self, v: u32) -> usize {
        self.subtree[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.children[v as usize].len() + usize::from(self.parent[v as usize].is_some())
    }

    pub fn to_graph(&self) -> Graph {
        let mut edges = Vec::with_capacity(self.order() - 1);
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                edges.push((*p, v as u32));
            }
        }
        Graph::new(self.order(), edges).expect("rooted tree is a valid graph")
    }

    /// Split of the tree edge between `child` and its parent, read off the
    /// subtree sizes (no equidistant vertices exist in a tree).
    pub fn edge_split(&self, child: u32) -> Result<EdgeSplit> {
        if self.parent[child as usize].is_none() {
            return Err(Error::Domain("root has no parent edge".into()));
        }
        let below = self.subtree[child as usize];
        Ok(EdgeSplit { n_u: self.order() - below, n_v: below })
    }

    /// Weighted Szeged index via the subtree-size shortcut. Independent of
    /// the BFS-based path in [`Graph::weighted_szeged_index`].
    pub fn weighted_szeged_subtree<T: Int>(&self) -> Result<T> {
        let n = T::from_count(self.order())?;
        let mut total = T::zero();
        for v in 0..self.order() as u32 {
            let Some(p) = self.parent[v as usize] else { continue };
            let below = T::from_count(self.subtree[v as usize])?;
            let w = T::from_count(self.degree(v) + self.degree(p))?;
            let prod = num::mul(below, num::sub(n, below)?)?;
            total = num::add(total, num::mul(w, prod)?)?;
        }
        Ok(total)
    }
}

/// Complete k-ary tree with all leaves at depth `levels`.
pub fn build_complete_kary_tree(k: u32, levels: u32) -> Result<RootedTree> {
    if k < 2 {
        return Err(Error::Domain("branching factor must be at least 2".into()));
    }
    if levels < 1 {
        return Err(Error::Domain("depth must be at least 1".into()));
    }
    let mut count: u64 = 1;
    let mut layer: u64 = 1;
    for _ in 0..levels {
        layer = layer.saturating_mul(k as u64);
        count = count.saturating_add(layer);
        if count > MAX_KARY_VERTICES {
            return Err(Error::Domain(format!(
                "complete {k}-ary tree of depth {levels} exceeds the {MAX_KARY_VERTICES}-vertex limit"
            )));
        }
    }
    let n = count as usize;
    let mut parent: Vec<Option<u32>> = vec![None; n];
    let mut next = 1usize;
    let mut frontier = vec![0u32];
    for _ in 0..levels {
        let mut new_frontier = Vec::with_capacity(frontier.len() * k as usize);
        for &v in &frontier {
            for _ in 0..k {
                parent[next] = Some(v);
                new_frontier.push(next as u32);
                next += 1;
            }
        }
        frontier = new_frontier;
    }
    RootedTree::from_parents(parent)
}

/// Rough weighted Szeged index of a complete k-ary tree on `n` vertices:
/// `n^2 (2k+2) ln(n)/ln(k)`. Natural-log ratio form pins the log base.
pub fn kary_estimate(n: u64, k: u32) -> f64 {
    let nf = n as f64;
    nf * nf * (2.0 * k as f64 + 2.0) * nf.ln() / (k as f64).ln()
}
