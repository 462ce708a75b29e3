//! Undirected simple graphs with an optional vertex coloring.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::combinatorics::{binomial, first_combination};
use crate::exec::SolveOptions;
use crate::text::{parse_number, tokenize};
use crate::{Error, ParseError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ColoredGraph {
    n: usize,
    /// Sorted neighbor lists.
    neighbors: Vec<Vec<usize>>,
    coloring: Option<Coloring>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub classes: usize,
    pub class_of: Vec<usize>,
}

impl ColoredGraph {
    pub fn new(n: usize) -> Self {
        ColoredGraph { n, neighbors: vec![Vec::new(); n], coloring: None }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = ColoredGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = ColoredGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).expect("fresh edge");
            }
        }
        g
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Rejects self-loops, out-of-range endpoints and repeated edges.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidGraph(format!("edge {u}-{v} leaves the vertex range 0..{}", self.n)));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at {u}")));
        }
        match self.neighbors[u].binary_search(&v) {
            Ok(_) => Err(Error::InvalidGraph(format!("duplicate edge {u}-{v}"))),
            Err(pos) => {
                self.neighbors[u].insert(pos, v);
                let pos = self.neighbors[v].binary_search(&u).unwrap_err();
                self.neighbors[v].insert(pos, u);
                if let Some(c) = &self.coloring {
                    if c.class_of[u] == c.class_of[v] {
                        self.remove_edge(u, v);
                        return Err(Error::InvalidGraph(format!("edge {u}-{v} joins two vertices of one color class")));
                    }
                }
                Ok(())
            }
        }
    }

    fn remove_edge(&mut self, u: usize, v: usize) {
        self.neighbors[u].retain(|&x| x != v);
        self.neighbors[v].retain(|&x| x != u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors.get(u).is_some_and(|ns| ns.binary_search(&v).is_ok())
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.num_edges());
        for (u, ns) in self.neighbors.iter().enumerate() {
            out.extend(ns.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn coloring(&self) -> Option<&Coloring> {
        self.coloring.as_ref()
    }

    /// Attaches a proper coloring with classes `0..classes`.
    pub fn with_coloring(mut self, classes: usize, class_of: Vec<usize>) -> Result<Self> {
        if class_of.len() != self.n {
            return Err(Error::InvalidGraph(format!("coloring has {} entries for {} vertices", class_of.len(), self.n)));
        }
        if let Some(&c) = class_of.iter().find(|&&c| c >= classes) {
            return Err(Error::InvalidGraph(format!("color {c} outside 0..{classes}")));
        }
        if let Some((u, v)) = self.edges().into_iter().find(|&(u, v)| class_of[u] == class_of[v]) {
            return Err(Error::InvalidGraph(format!("improper coloring: edge {u}-{v} inside class {}", class_of[u])));
        }
        self.coloring = Some(Coloring { classes, class_of });
        Ok(self)
    }

    /// The same graph with isolated vertices appended up to `total` vertices.
    pub fn with_isolated(&self, total: usize) -> Self {
        assert!(total >= self.n);
        let mut g = self.clone();
        g.neighbors.resize(total, Vec::new());
        g.n = total;
        g.coloring = None;
        g
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Lexicographically smallest `k`-clique, by exhaustive search over all `k`-subsets.
    pub fn find_k_clique(&self, k: usize, opts: &SolveOptions) -> Result<Option<Vec<usize>>> {
        if k > self.n {
            return Ok(None);
        }
        opts.check(binomial(self.n, k))?;
        Ok(first_combination(self.n, k, opts.parallelism, |c| self.is_clique(c)))
    }
}

impl fmt::Display for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices {}", self.n)?;
        if let Some(c) = &self.coloring {
            write!(f, "colors {}", c.classes)?;
            for x in &c.class_of {
                write!(f, " {x}")?;
            }
            writeln!(f)?;
        }
        for (u, v) in self.edges() {
            writeln!(f, "edge {u} {v}")?;
        }
        Ok(())
    }
}

impl FromStr for ColoredGraph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut graph: Option<ColoredGraph> = None;
        let mut colors: Option<(usize, Vec<usize>, usize)> = None;
        let mut seen = BTreeSet::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let tokens = tokenize(line);
            let Some(head) = tokens.first() else { continue };
            let err = |col: usize, msg: String| Error::from(ParseError::new(lineno, col, msg));
            match (head.text, graph.as_mut()) {
                ("vertices", None) => {
                    if tokens.len() != 2 {
                        return Err(err(head.column, "expected `vertices <n>`".into()));
                    }
                    graph = Some(ColoredGraph::new(parse_number(&tokens[1], lineno, "a vertex count")?));
                }
                ("vertices", Some(_)) => return Err(err(head.column, "duplicate `vertices` line".into())),
                (_, None) => return Err(err(head.column, "the first line must be `vertices <n>`".into())),
                ("colors", Some(g)) => {
                    if colors.is_some() {
                        return Err(err(head.column, "duplicate `colors` line".into()));
                    }
                    if tokens.len() != g.n + 2 {
                        return Err(err(head.column, format!("expected `colors <c>` followed by {} classes", g.n)));
                    }
                    let classes = parse_number(&tokens[1], lineno, "a class count")?;
                    let class_of = tokens[2..]
                        .iter()
                        .map(|t| parse_number(t, lineno, "a class index"))
                        .collect::<std::result::Result<Vec<_>, _>>()?;
                    colors = Some((classes, class_of, lineno));
                }
                ("edge", Some(g)) => {
                    if tokens.len() != 3 {
                        return Err(err(head.column, "expected `edge <u> <v>`".into()));
                    }
                    let u = parse_number(&tokens[1], lineno, "a vertex")?;
                    let v = parse_number(&tokens[2], lineno, "a vertex")?;
                    if !seen.insert((u.min(v), u.max(v))) && u != v {
                        return Err(err(head.column, format!("duplicate edge {u} {v}")));
                    }
                    g.add_edge(u, v).map_err(|e| err(head.column, e.to_string()))?;
                }
                (other, Some(_)) => return Err(err(head.column, format!("unknown directive `{other}`"))),
            }
        }
        let graph = graph.ok_or_else(|| ParseError::new(1, 1, "missing `vertices` line"))?;
        match colors {
            Some((classes, class_of, lineno)) => graph
                .with_coloring(classes, class_of)
                .map_err(|e| ParseError::new(lineno, 1, e.to_string()).into()),
            None => Ok(graph),
        }
    }
}
