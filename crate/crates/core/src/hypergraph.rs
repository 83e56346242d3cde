//! Edge-colored hypergraphs, colorings, and the objectives evaluated on them.
//!
//! Nodes, colors and edges are 0-based everywhere in the library. The text
//! format (see [`EdgeColoredHypergraph::parse`]) and the CLI reports use
//! 1-based node and color ids.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{EccError, Result};

/// A hyperedge: a nonempty duplicate-free node set carrying one color.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperedge {
    pub color: usize,
    pub weight: f64,
    pub nodes: Vec<usize>,
}

impl Hyperedge {
    pub fn new(color: usize, weight: f64, nodes: Vec<usize>) -> Self {
        Self {
            color,
            weight,
            nodes,
        }
    }

    /// Unit-weight edge.
    pub fn unit(color: usize, nodes: Vec<usize>) -> Self {
        Self::new(color, 1.0, nodes)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// An instance `(V, E, color)`: `node_count` nodes, `color_count` colors and
/// an ordered list of colored, weighted hyperedges.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeColoredHypergraph {
    node_count: usize,
    color_count: usize,
    edges: Vec<Hyperedge>,
    /// Incident edge ids per node, ascending.
    incidence: Vec<Vec<usize>>,
}

impl EdgeColoredHypergraph {
    pub fn new(node_count: usize, color_count: usize, edges: Vec<Hyperedge>) -> Result<Self> {
        if node_count == 0 {
            return Err(EccError::InvalidInstance(
                "node count must be positive".into(),
            ));
        }
        if color_count == 0 {
            return Err(EccError::InvalidInstance(
                "color count must be positive".into(),
            ));
        }
        let mut incidence = vec![Vec::new(); node_count];
        for (id, edge) in edges.iter().enumerate() {
            if edge.nodes.is_empty() {
                return Err(EccError::InvalidInstance(format!("edge {id} is empty")));
            }
            if edge.color >= color_count {
                return Err(EccError::InvalidInstance(format!(
                    "edge {id} has color {} outside [0, {color_count})",
                    edge.color
                )));
            }
            if !(edge.weight.is_finite() && edge.weight >= 0.0) {
                return Err(EccError::InvalidInstance(format!(
                    "edge {id} has invalid weight {}",
                    edge.weight
                )));
            }
            let mut seen = BTreeSet::new();
            for &v in &edge.nodes {
                if v >= node_count {
                    return Err(EccError::InvalidInstance(format!(
                        "edge {id} contains node {v} outside [0, {node_count})"
                    )));
                }
                if !seen.insert(v) {
                    return Err(EccError::InvalidInstance(format!(
                        "edge {id} contains node {v} twice"
                    )));
                }
                incidence[v].push(id);
            }
        }
        Ok(Self {
            node_count,
            color_count,
            edges,
            incidence,
        })
    }

    /// Parses the whitespace-separated text format:
    ///
    /// ```text
    /// # optional comments
    /// n m k
    /// c w s v1 ... vs     (m lines, 1-based color and node ids)
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r').trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or(EccError::Parse {
            line: 1,
            message: "missing header".into(),
        })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_err(
                header_line,
                "malformed header, expected \"n m k\"",
            ));
        }
        let n: usize = parse_token(fields[0], header_line, "node count")?;
        let m: usize = parse_token(fields[1], header_line, "edge count")?;
        let k: usize = parse_token(fields[2], header_line, "color count")?;
        if n == 0 || k == 0 {
            return Err(parse_err(
                header_line,
                "malformed header, n and k must be positive",
            ));
        }

        let mut edges = Vec::with_capacity(m);
        for (line_no, line) in lines.by_ref() {
            if edges.len() == m {
                return Err(parse_err(line_no, "more edge lines than declared"));
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() < 3 {
                return Err(parse_err(line_no, "edge line needs color, weight and size"));
            }
            let color: usize = parse_token(tokens[0], line_no, "color")?;
            if color == 0 || color > k {
                return Err(parse_err(line_no, "color out of range"));
            }
            let weight: f64 = parse_token(tokens[1], line_no, "weight")?;
            if !weight.is_finite() {
                return Err(parse_err(line_no, "non-finite weight"));
            }
            if weight < 0.0 {
                return Err(parse_err(line_no, "negative weight"));
            }
            let size: usize = parse_token(tokens[2], line_no, "edge size")?;
            if size == 0 {
                return Err(parse_err(line_no, "empty edge"));
            }
            if tokens.len() != 3 + size {
                return Err(parse_err(
                    line_no,
                    &format!("expected {size} node ids, found {}", tokens.len() - 3),
                ));
            }
            let mut nodes = Vec::with_capacity(size);
            for tok in &tokens[3..] {
                let v: usize = parse_token(tok, line_no, "node id")?;
                if v == 0 || v > n {
                    return Err(parse_err(line_no, "node out of range"));
                }
                if nodes.contains(&(v - 1)) {
                    return Err(parse_err(line_no, "duplicate node in edge"));
                }
                nodes.push(v - 1);
            }
            edges.push(Hyperedge::new(color - 1, weight, nodes));
        }
        if edges.len() != m {
            return Err(parse_err(
                text.lines().count().max(1),
                &format!("expected {m} edge lines, found {}", edges.len()),
            ));
        }
        Self::new(n, k, edges)
    }

    /// Renders the instance in the text format accepted by [`Self::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {} {}\n",
            self.node_count,
            self.edges.len(),
            self.color_count
        );
        for e in &self.edges {
            out.push_str(&format!("{} {} {}", e.color + 1, e.weight, e.nodes.len()));
            for v in &e.nodes {
                out.push_str(&format!(" {}", v + 1));
            }
            out.push('\n');
        }
        out
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn color_count(&self) -> usize {
        self.color_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Result<&Hyperedge> {
        self.edges.get(id).ok_or(EccError::UnknownEdge(id))
    }

    /// Edge ids incident to `node`, ascending.
    pub fn incident(&self, node: usize) -> &[usize] {
        &self.incidence[node]
    }

    /// Maximum edge size; 0 only for an instance without edges.
    pub fn rank(&self) -> usize {
        self.edges.iter().map(Hyperedge::len).max().unwrap_or(0)
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    /// Total weight of the edges of each color.
    pub fn color_weights(&self) -> Vec<f64> {
        let mut w = vec![0.0; self.color_count];
        for e in &self.edges {
            w[e.color] += e.weight;
        }
        w
    }

    /// Edge ids of color `c`.
    pub fn edges_of_color(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.color == c)
            .map(|(id, _)| id)
    }

    /// Nodes incident to at least one edge, ascending.
    pub fn incident_nodes(&self) -> Vec<usize> {
        (0..self.node_count)
            .filter(|&v| !self.incidence[v].is_empty())
            .collect()
    }

    /// Whether edges `e` and `f` overlap and carry distinct colors.
    pub fn conflicting(&self, e: usize, f: usize) -> bool {
        let (a, b) = (&self.edges[e], &self.edges[f]);
        a.color != b.color && a.nodes.iter().any(|v| b.nodes.contains(v))
    }

    pub fn is_satisfied(&self, coloring: &Coloring, edge: usize) -> Result<bool> {
        let e = self.edge(edge)?;
        Ok(e.nodes.iter().all(|&v| coloring.color(v) == e.color))
    }

    fn satisfied_unchecked(&self, coloring: &Coloring, e: &Hyperedge) -> bool {
        e.nodes.iter().all(|&v| coloring.color(v) == e.color)
    }

    /// Edge ids left unsatisfied by `coloring`.
    pub fn unsatisfied_edges(&self, coloring: &Coloring) -> EdgeSet {
        let mut set = EdgeSet::empty(self.edge_count());
        for (id, e) in self.edges.iter().enumerate() {
            if !self.satisfied_unchecked(coloring, e) {
                set.insert(id);
            }
        }
        set
    }

    pub fn color_error_vector(&self, coloring: &Coloring) -> ColorErrorVector {
        let mut m = vec![0.0; self.color_count];
        for e in &self.edges {
            if !self.satisfied_unchecked(coloring, e) {
                m[e.color] += e.weight;
            }
        }
        ColorErrorVector(m)
    }

    /// Checks that `coloring` is a total map onto `[0, k)` for this instance.
    pub fn validate_coloring(&self, coloring: &Coloring) -> Result<()> {
        if coloring.len() != self.node_count {
            return Err(EccError::InvalidColoring(format!(
                "coloring has {} entries for {} nodes",
                coloring.len(),
                self.node_count
            )));
        }
        if let Some((v, c)) = coloring
            .iter()
            .enumerate()
            .find(|(_, &c)| c >= self.color_count)
        {
            return Err(EccError::InvalidColoring(format!(
                "node {v} has color {c} outside [0, {})",
                self.color_count
            )));
        }
        Ok(())
    }

    pub fn objective(&self, coloring: &Coloring, problem: Problem) -> Result<ObjectiveValue> {
        problem.validate(self.color_count)?;
        self.validate_coloring(coloring)?;
        let errors = self.color_error_vector(coloring);
        Ok(errors.objective(problem, self.total_weight()))
    }
}

fn parse_err(line: usize, message: &str) -> EccError {
    EccError::Parse {
        line,
        message: message.to_string(),
    }
}

fn parse_token<T: FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| parse_err(line, &format!("non-numeric {what} token {tok:?}")))
}

impl FromStr for EdgeColoredHypergraph {
    type Err = EccError;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// The three-colored triangle: nodes {0,1,2}, edges {0,1}, {1,2}, {0,2} with
/// colors 0, 1, 2. Its color-fair relaxation has a gap of exactly 2.
pub fn triangle_gadget() -> EdgeColoredHypergraph {
    EdgeColoredHypergraph::new(
        3,
        3,
        vec![
            Hyperedge::unit(0, vec![0, 1]),
            Hyperedge::unit(1, vec![1, 2]),
            Hyperedge::unit(2, vec![0, 2]),
        ],
    )
    .expect("triangle gadget is valid")
}

/// Total assignment of a color to every node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring(Vec<usize>);

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        Self(colors)
    }

    pub fn uniform(node_count: usize, color: usize) -> Self {
        Self(vec![color; node_count])
    }

    /// Builds a coloring from 1-based color ids.
    pub fn from_one_based(colors: &[usize]) -> Result<Self> {
        colors
            .iter()
            .map(|&c| {
                c.checked_sub(1).ok_or_else(|| {
                    EccError::InvalidColoring("color id 0 in 1-based coloring".into())
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|c| c + 1).collect()
    }

    pub fn color(&self, node: usize) -> usize {
        self.0[node]
    }

    pub fn set(&mut self, node: usize, color: usize) {
        self.0[node] = color;
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Weighted count of unsatisfied edges per color.
#[derive(Debug, Clone, PartialEq)]
pub struct ColorErrorVector(pub Vec<f64>);

impl ColorErrorVector {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(0.0, f64::max)
    }

    /// `(sum_c m_c^p)^(1/p)`, or the maximum entry for `p = inf`.
    pub fn p_norm(&self, p: f64) -> f64 {
        if p.is_infinite() {
            self.max()
        } else if p == 1.0 {
            self.total()
        } else {
            self.0.iter().map(|m| m.powf(p)).sum::<f64>().powf(1.0 / p)
        }
    }

    /// Evaluates `problem` given the error vector and the instance's total edge weight.
    pub fn objective(&self, problem: Problem, total_weight: f64) -> ObjectiveValue {
        match problem {
            Problem::Max => ObjectiveValue::Scalar(total_weight - self.total()),
            Problem::Min => ObjectiveValue::Scalar(self.total()),
            Problem::PMean(p) => ObjectiveValue::Scalar(self.p_norm(p)),
            Problem::ColorFair => ObjectiveValue::Scalar(self.max()),
            Problem::Protected(c) => ObjectiveValue::Pair {
                total: self.total(),
                protected: self.0[c],
            },
        }
    }
}

/// Objective selector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Problem {
    /// Total satisfied weight.
    Max,
    /// Total unsatisfied weight.
    Min,
    /// p-norm of the color error vector; `f64::INFINITY` is the color-fair max.
    PMean(f64),
    /// Maximum per-color unsatisfied weight.
    ColorFair,
    /// Total unsatisfied weight together with the unsatisfied weight of the
    /// protected color.
    Protected(usize),
}

impl Problem {
    pub fn validate(&self, color_count: usize) -> Result<()> {
        match *self {
            Problem::PMean(p) if !(p > 0.0) || p.is_nan() => Err(EccError::InvalidParameter(
                format!("p must be positive or infinite, got {p}"),
            )),
            Problem::Protected(c) if c >= color_count => Err(EccError::InvalidParameter(format!(
                "protected color {c} outside [0, {color_count})"
            ))),
            _ => Ok(()),
        }
    }

    /// Whether larger objective values are better.
    pub fn is_maximization(&self) -> bool {
        matches!(self, Problem::Max)
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Problem::Max => write!(f, "max"),
            Problem::Min => write!(f, "min"),
            Problem::PMean(p) => write!(f, "pmean({p})"),
            Problem::ColorFair => write!(f, "colorfair"),
            Problem::Protected(c) => write!(f, "protected({})", c + 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ObjectiveValue {
    Scalar(f64),
    Pair { total: f64, protected: f64 },
}

impl ObjectiveValue {
    /// The scalar value, or the total for a protected pair.
    pub fn primary(&self) -> f64 {
        match *self {
            ObjectiveValue::Scalar(v) => v,
            ObjectiveValue::Pair { total, .. } => total,
        }
    }
}

/// A subset of edge ids of one instance, stored as a membership mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    mask: Vec<bool>,
    len: usize,
}

impl EdgeSet {
    pub fn empty(edge_count: usize) -> Self {
        Self {
            mask: vec![false; edge_count],
            len: 0,
        }
    }

    pub fn full(edge_count: usize) -> Self {
        Self {
            mask: vec![true; edge_count],
            len: edge_count,
        }
    }

    pub fn from_ids(edge_count: usize, ids: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = Self::empty(edge_count);
        for id in ids {
            if id >= edge_count {
                return Err(EccError::UnknownEdge(id));
            }
            set.insert(id);
        }
        Ok(set)
    }

    pub fn contains(&self, id: usize) -> bool {
        self.mask.get(id).copied().unwrap_or(false)
    }

    /// Returns whether the id was newly inserted.
    pub fn insert(&mut self, id: usize) -> bool {
        let was = std::mem::replace(&mut self.mask[id], true);
        if !was {
            self.len += 1;
        }
        !was
    }

    /// Returns whether the id was present.
    pub fn remove(&mut self, id: usize) -> bool {
        let was = std::mem::replace(&mut self.mask[id], false);
        if was {
            self.len -= 1;
        }
        was
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Size of the edge universe this set ranges over.
    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    pub fn complement(&self) -> Self {
        Self {
            mask: self.mask.iter().map(|b| !b).collect(),
            len: self.mask.len() - self.len,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
    }
}
