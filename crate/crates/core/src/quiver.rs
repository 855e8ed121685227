//! Finite quivers, their paths, and the graph-level predicates used by the
//! lattice theorems (parallel-path counts, tree detection, components).

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A quiver with declaration order preserved for vertices and arrows.
///
/// Vertex identifiers and arrow names share one namespace; `0` is reserved
/// for the zero element of the path semigroup and `.` separates arrows in
/// path names, so neither may appear in an identifier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

/// A path, stored as arrow indices into its quiver. For a trivial path the
/// arrow list is empty and `source == target` is the base vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub arrows: Vec<usize>,
    pub source: usize,
    pub target: usize,
}

impl Path {
    pub fn trivial(vertex: usize) -> Self {
        Path {
            arrows: Vec::new(),
            source: vertex,
            target: vertex,
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_trivial()
    }

    /// Display name: the vertex id for a trivial path, otherwise the arrow
    /// names joined by `.`.
    pub fn name(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            q.vertices[self.source].clone()
        } else {
            self.arrows
                .iter()
                .map(|&a| q.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    /// Concatenation `self · other`, or `None` when the endpoints do not
    /// meet (the product is zero).
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            arrows,
            source: self.source,
            target: other.target,
        })
    }
}

fn check_identifier(id: &str, line: usize) -> Result<()> {
    if id.is_empty() || id.contains(':') || id.contains('.') || id.chars().any(char::is_whitespace) {
        return Err(Error::Syntax {
            line,
            message: format!("invalid identifier `{id}`"),
        });
    }
    if id == "0" {
        return Err(Error::Syntax {
            line,
            message: "identifier `0` is reserved for the zero element".into(),
        });
    }
    Ok(())
}

impl Quiver {
    /// Builds a quiver from vertex ids and `(name, source, target)` triples.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateName(v.clone()));
            }
        }
        let mut names = std::collections::HashSet::new();
        let mut out = Vec::new();
        for (name, src, tgt) in arrows {
            if index.contains_key(&name) || !names.insert(name.clone()) {
                return Err(Error::DuplicateName(name));
            }
            let lookup = |v: &String| {
                index.get(v).copied().ok_or_else(|| Error::UndeclaredVertex {
                    arrow: name.clone(),
                    vertex: v.clone(),
                })
            };
            let source = lookup(&src)?;
            let target = lookup(&tgt)?;
            out.push(Arrow { name, source, target });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Returns a vertex lying on a directed cycle, if any.
    pub fn find_cycle_vertex(&self) -> Option<usize> {
        let n = self.vertices.len();
        let mut indegree = vec![0usize; n];
        for a in &self.arrows {
            indegree[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut removed = vec![false; n];
        while let Some(v) = stack.pop() {
            removed[v] = true;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indegree[a.target] -= 1;
                if indegree[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        // Every surviving vertex has a surviving predecessor; walking
        // backwards must revisit some vertex, and that vertex is on a cycle.
        let start = (0..n).find(|&v| !removed[v])?;
        let mut seen = vec![false; n];
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            v = self
                .arrows
                .iter()
                .find(|a| a.target == v && !removed[a.source])
                .map(|a| a.source)
                .expect("surviving vertex has a surviving predecessor");
        }
        Some(v)
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle_vertex().is_none()
    }

    pub(crate) fn require_acyclic(&self) -> Result<()> {
        match self.find_cycle_vertex() {
            Some(v) => Err(Error::Cyclic(self.vertices[v].clone())),
            None => Ok(()),
        }
    }

    /// Vertices in a topological order (sources first). Only meaningful for
    /// acyclic quivers.
    fn topological_order(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut indegree = vec![0usize; n];
        for a in &self.arrows {
            indegree[a.target] += 1;
        }
        let mut queue: std::collections::VecDeque<usize> =
            (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indegree[a.target] -= 1;
                if indegree[a.target] == 0 {
                    queue.push_back(a.target);
                }
            }
        }
        order
    }

    /// All paths, trivial ones first in vertex order, then by length and
    /// lexicographically by arrow names.
    pub fn enumerate_paths(&self) -> Result<Vec<Path>> {
        self.require_acyclic()?;
        let mut paths: Vec<Path> = (0..self.vertices.len()).map(Path::trivial).collect();
        let mut frontier: Vec<Path> = self
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| Path {
                arrows: vec![i],
                source: a.source,
                target: a.target,
            })
            .collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for (i, a) in self.arrows.iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(i);
                        next.push(Path {
                            arrows,
                            source: p.source,
                            target: a.target,
                        });
                    }
                }
            }
            let mut layer = std::mem::replace(&mut frontier, next);
            layer.sort_by(|x, y| self.arrow_names(x).cmp(&self.arrow_names(y)));
            paths.extend(layer);
        }
        Ok(paths)
    }

    fn arrow_names<'a>(&'a self, p: &Path) -> Vec<&'a str> {
        p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect()
    }

    /// `counts[u][v]` is the number of paths from `u` to `v`, trivial paths
    /// included. Saturates instead of overflowing.
    pub fn path_counts(&self) -> Result<Vec<Vec<u64>>> {
        self.require_acyclic()?;
        let n = self.vertices.len();
        let order = self.topological_order();
        let mut counts = vec![vec![0u64; n]; n];
        for (u, row) in counts.iter_mut().enumerate() {
            row[u] = 1;
            for &v in &order {
                let c = row[v];
                if c == 0 {
                    continue;
                }
                for a in self.arrows.iter().filter(|a| a.source == v) {
                    row[a.target] = row[a.target].saturating_add(c);
                }
            }
        }
        Ok(counts)
    }

    /// Maximum number of distinct paths between an ordered vertex pair.
    pub fn max_parallel_paths(&self) -> Result<u64> {
        Ok(self
            .path_counts()?
            .iter()
            .flatten()
            .copied()
            .max()
            .unwrap_or(0))
    }

    /// Union-find roots of the underlying undirected multigraph.
    fn component_roots(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for a in &self.arrows {
            let (x, y) = (find(&mut parent, a.source), find(&mut parent, a.target));
            if x != y {
                parent[x.max(y)] = x.min(y);
            }
        }
        (0..self.vertices.len()).map(|v| find(&mut parent, v)).collect()
    }

    /// True iff the underlying undirected multigraph is connected and has no
    /// cycles. Parallel arrows and loops count as edges.
    pub fn underlying_graph_is_tree(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 || self.arrows.len() != n - 1 {
            return false;
        }
        let roots = self.component_roots();
        roots.iter().all(|&r| r == roots[0])
    }

    /// Maximal weakly connected subquivers, ordered by their first vertex.
    pub fn connected_components(&self) -> Vec<Quiver> {
        let roots = self.component_roots();
        let mut order: Vec<usize> = Vec::new();
        for &r in &roots {
            if !order.contains(&r) {
                order.push(r);
            }
        }
        order
            .into_iter()
            .map(|root| {
                let members: Vec<usize> = (0..self.vertices.len()).filter(|&v| roots[v] == root).collect();
                let local = |v: usize| members.iter().position(|&m| m == v).unwrap();
                Quiver {
                    vertices: members.iter().map(|&v| self.vertices[v].clone()).collect(),
                    arrows: self
                        .arrows
                        .iter()
                        .filter(|a| roots[a.source] == root)
                        .map(|a| Arrow {
                            name: a.name.clone(),
                            source: local(a.source),
                            target: local(a.target),
                        })
                        .collect(),
                }
            })
            .collect()
    }

    /// Serializes to the quiver file format accepted by [`parse_quiver`].
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices: {}", self.vertices.join(" "))?;
        for a in &self.arrows {
            writeln!(
                f,
                "arrow {}: {} -> {}",
                a.name, self.vertices[a.source], self.vertices[a.target]
            )?;
        }
        Ok(())
    }
}

/// Parses the line-oriented quiver format:
///
/// ```text
/// # comment
/// vertices: 1 2
/// arrow alpha: 1 -> 2
/// ```
pub fn parse_quiver(text: &str) -> Result<Quiver> {
    let mut vertices: Option<Vec<String>> = None;
    let mut arrows = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let syntax = |message: &str| Error::Syntax {
            line: line_no,
            message: message.to_string(),
        };
        if let Some(rest) = line.strip_prefix("vertices:") {
            if vertices.is_some() {
                return Err(syntax("second `vertices:` declaration"));
            }
            let ids: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if ids.is_empty() {
                return Err(syntax("`vertices:` declares no vertices"));
            }
            for id in &ids {
                check_identifier(id, line_no)?;
            }
            vertices = Some(ids);
        } else if let Some(rest) = line.strip_prefix("arrow ") {
            let (name, ends) = rest
                .split_once(':')
                .ok_or_else(|| syntax("expected `arrow <name>: <src> -> <tgt>`"))?;
            let name = name.trim();
            check_identifier(name, line_no)?;
            let (src, tgt) = ends
                .split_once("->")
                .ok_or_else(|| syntax("expected `->` between source and target"))?;
            let (src, tgt) = (src.trim(), tgt.trim());
            for end in [src, tgt] {
                if end.is_empty() || end.chars().any(char::is_whitespace) {
                    return Err(syntax("arrow endpoints must be single vertex ids"));
                }
            }
            arrows.push((name.to_string(), src.to_string(), tgt.to_string()));
        } else {
            return Err(syntax("expected `vertices:` or `arrow` declaration"));
        }
    }
    let vertices = vertices.ok_or(Error::Syntax {
        line: last_line.max(1),
        message: "missing `vertices:` declaration".into(),
    })?;
    Quiver::new(vertices, arrows)
}
