use std::collections::VecDeque;

use serde::Serialize;

use super::SftlabError;

/// A directed graph with labeled vertices and at most one edge per ordered
/// pair: the adjacency matrix `A` of a vertex shift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SftGraph {
    labels: Vec<String>,
    succ: Vec<Vec<usize>>,
}

impl SftGraph {
    /// Builds from successor lists; duplicate edges are merged.
    pub fn new(labels: Vec<String>, mut succ: Vec<Vec<usize>>) -> Self {
        assert_eq!(labels.len(), succ.len(), "one successor list per vertex");
        for s in succ.iter_mut() {
            s.sort_unstable();
            s.dedup();
        }
        SftGraph { labels, succ }
    }

    pub fn from_matrix(a: &[Vec<bool>]) -> Self {
        let labels = (0..a.len()).map(|i| i.to_string()).collect();
        let succ = a
            .iter()
            .map(|row| row.iter().enumerate().filter(|(_, &e)| e).map(|(j, _)| j).collect())
            .collect();
        SftGraph::new(labels, succ)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn successors(&self, i: usize) -> &[usize] {
        &self.succ[i]
    }

    pub fn successor_lists(&self) -> &[Vec<usize>] {
        &self.succ
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.succ[i].binary_search(&j).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(|s| s.len()).sum()
    }

    pub fn matrix(&self) -> Vec<Vec<bool>> {
        let n = self.n();
        self.succ
            .iter()
            .map(|s| {
                let mut row = vec![false; n];
                s.iter().for_each(|&j| row[j] = true);
                row
            })
            .collect()
    }

    fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.n()];
        for (i, s) in self.succ.iter().enumerate() {
            for &j in s {
                pred[j].push(i);
            }
        }
        pred
    }

    /// Induced subgraph on `keep` (in the given order).
    pub fn induced(&self, keep: &[usize]) -> SftGraph {
        let mut id = vec![usize::MAX; self.n()];
        for (new, &old) in keep.iter().enumerate() {
            id[old] = new;
        }
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let succ = keep
            .iter()
            .map(|&i| {
                self.succ[i]
                    .iter()
                    .filter(|&&j| id[j] != usize::MAX)
                    .map(|&j| id[j])
                    .collect()
            })
            .collect();
        SftGraph::new(labels, succ)
    }

    /// Repeatedly removes vertices without incoming or outgoing edges.
    pub fn essentialize(&self) -> Result<SftGraph, SftlabError> {
        let n = self.n();
        let pred = self.predecessors();
        let mut indeg: Vec<usize> = pred.iter().map(|p| p.len()).collect();
        let mut outdeg: Vec<usize> = self.succ.iter().map(|s| s.len()).collect();
        let mut alive = vec![true; n];
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0 || outdeg[i] == 0).collect();
        while let Some(v) = queue.pop_front() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for &j in &self.succ[v] {
                if alive[j] {
                    indeg[j] -= 1;
                    if indeg[j] == 0 {
                        queue.push_back(j);
                    }
                }
            }
            for &i in &pred[v] {
                if alive[i] {
                    outdeg[i] -= 1;
                    if outdeg[i] == 0 {
                        queue.push_back(i);
                    }
                }
            }
        }
        let keep: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
        if keep.is_empty() {
            return Err(SftlabError::EmptyShift);
        }
        Ok(self.induced(&keep))
    }

    pub fn is_essential(&self) -> bool {
        let pred = self.predecessors();
        (0..self.n()).all(|i| !self.succ[i].is_empty() && !pred[i].is_empty())
    }

    /// Strongly connected components (Kosaraju, iterative), each sorted.
    pub fn sccs(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut stack = vec![(root, 0usize)];
            while let Some((v, idx)) = stack.pop() {
                if idx < self.succ[v].len() {
                    stack.push((v, idx + 1));
                    let w = self.succ[v][idx];
                    if !seen[w] {
                        seen[w] = true;
                        stack.push((w, 0));
                    }
                } else {
                    order.push(v);
                }
            }
        }
        let pred = self.predecessors();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for &root in order.iter().rev() {
            if comp[root] != usize::MAX {
                continue;
            }
            let c = out.len();
            let mut members = vec![root];
            comp[root] = c;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &u in &pred[v] {
                    if comp[u] == usize::MAX {
                        comp[u] = c;
                        members.push(u);
                        stack.push(u);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Components that carry a cycle.
    pub fn nontrivial_sccs(&self) -> Vec<Vec<usize>> {
        self.sccs()
            .into_iter()
            .filter(|c| c.len() > 1 || self.has_edge(c[0], c[0]))
            .collect()
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.n() > 0 && self.sccs().len() == 1 && (self.n() > 1 || self.has_edge(0, 0))
    }

    /// BFS distances from `root`.
    pub fn distances_from(&self, root: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for &w in &self.succ[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest path from `a` to `b` as a vertex list including both ends,
    /// with at least one edge.
    pub fn path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let n = self.n();
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for &w in &self.succ[a] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = a;
                queue.push_back(w);
            }
        }
        while let Some(v) = queue.pop_front() {
            if v == b {
                let mut path = vec![b];
                let mut cur = b;
                loop {
                    let p = parent[cur];
                    path.push(p);
                    if p == a {
                        break;
                    }
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            for &w in &self.succ[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Period of a strongly connected graph: gcd of `level(u) + 1 − level(v)`
    /// over all edges `u → v`, with BFS levels from vertex 0.
    pub fn period(&self) -> Result<usize, SftlabError> {
        if !self.is_strongly_connected() {
            return Err(SftlabError::NotIrreducible);
        }
        let level = self.distances_from(0);
        let mut g = 0usize;
        for (u, s) in self.succ.iter().enumerate() {
            let lu = level[u].unwrap();
            for &v in s {
                let lv = level[v].unwrap();
                g = gcd(g, (lu + 1).abs_diff(lv));
            }
        }
        Ok(g)
    }

    /// Smallest `m` with `A^m` entrywise positive, searched up to `limit`.
    pub fn primitivity_exponent(&self, limit: usize) -> Option<usize> {
        let n = self.n();
        let words = n.div_ceil(64);
        let full = |row: &[u64]| (0..n).all(|j| row[j / 64] >> (j % 64) & 1 == 1);
        let mut reach: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut row = vec![0u64; words];
                row[i / 64] |= 1 << (i % 64);
                row
            })
            .collect();
        for m in 1..=limit {
            let mut next = vec![vec![0u64; words]; n];
            for i in 0..n {
                for (v, s) in self.succ.iter().enumerate() {
                    if reach[i][v / 64] >> (v % 64) & 1 == 1 {
                        for &w in s {
                            next[i][w / 64] |= 1 << (w % 64);
                        }
                    }
                }
            }
            reach = next;
            if reach.iter().all(|r| full(r)) {
                return Some(m);
            }
        }
        None
    }

    /// Closed walk through every vertex of a strongly connected graph,
    /// starting and ending at vertex 0 (the last vertex is not repeated).
    pub fn covering_cycle(&self) -> Option<Vec<usize>> {
        if !self.is_strongly_connected() {
            return None;
        }
        let mut walk = vec![0usize];
        let mut visited = vec![false; self.n()];
        visited[0] = true;
        let mut cur = 0;
        for target in (1..self.n()).chain(std::iter::once(0)) {
            if target != 0 && visited[target] {
                continue;
            }
            let p = self.path(cur, target)?;
            for &v in &p[1..] {
                visited[v] = true;
                walk.push(v);
            }
            cur = target;
        }
        walk.pop();
        Some(walk)
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
