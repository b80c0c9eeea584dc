//! Graphs, quivers, doubled quivers and Ginzburg quivers.
//!
//! Vertices are 0-based internally and 1-based in every user-facing string.
//! Arrow ids of a doubled quiver with `m` base arrows are `0..m` for the base
//! arrows `αₖ` and `m..2m` for their reverses `αₖ*`; a Ginzburg quiver appends
//! one loop `tᵢ` per vertex with id `2m + i`.

mod catalog;
mod io;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use catalog::{catalog, parse_label, DynkinType};
pub use io::{parse_graph_document, parse_orientation_document};

/// A letter (arrow or loop) of a doubled or Ginzburg quiver.
pub type Letter = u16;

/// A finite connected simple graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    name: Option<String>,
}

impl Graph {
    /// Builds a graph from 0-based edges. Rejects loops, multiple edges and
    /// disconnected input.
    pub fn new(
        vertex_count: usize,
        edges: Vec<(usize, usize)>,
        name: Option<String>,
    ) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidGraph("no vertices".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &(a, b) in &edges {
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge {}-{} references a vertex outside 1..={vertex_count}",
                    a + 1,
                    b + 1
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {}", a + 1)));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!(
                    "multiple edge {}-{}",
                    a + 1,
                    b + 1
                )));
            }
        }
        let g = Graph {
            vertex_count,
            edges,
            name,
        };
        if !g.is_connected() {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| {
            format!(
                "graph({} vertices, {} edges)",
                self.vertex_count,
                self.edges.len()
            )
        })
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.vertex_count
    }

    /// Two-coloring by BFS from vertex 0, or the vertex where an odd cycle closes.
    pub fn two_coloring(&self) -> Result<Vec<u8>> {
        let mut color = vec![u8::MAX; self.vertex_count];
        color[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    return Err(Error::NotBipartite(w + 1));
                }
            }
        }
        Ok(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_ok()
    }

    /// Orientation in which every vertex is a sink or a source: edges point from
    /// color 0 to color 1 of the BFS two-coloring rooted at vertex 0.
    pub fn orient_bipartite(&self) -> Result<Quiver> {
        let color = self.two_coloring()?;
        let arrows = self
            .edges
            .iter()
            .map(|&(a, b)| if color[a] == 0 { (a, b) } else { (b, a) })
            .collect();
        Quiver::new(self.vertex_count, arrows)
    }

    /// Orientation with each edge `{i, j}` directed from the smaller to the larger index.
    pub fn orient_increasing(&self) -> Quiver {
        let arrows = self
            .edges
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        Quiver::new(self.vertex_count, arrows).expect("graph already validated")
    }

    /// Orientation given by flipping the chosen edges of `orient_increasing`.
    pub fn orient_with_flips(&self, flips: &[bool]) -> Quiver {
        let arrows = self
            .edges
            .iter()
            .zip(flips.iter().chain(std::iter::repeat(&false)))
            .map(|(&(a, b), &flip)| {
                let (lo, hi) = (a.min(b), a.max(b));
                if flip {
                    (hi, lo)
                } else {
                    (lo, hi)
                }
            })
            .collect();
        Quiver::new(self.vertex_count, arrows).expect("graph already validated")
    }

    /// Orientation from explicit 0-based directed arrows, which must cover the edges exactly.
    pub fn orient_by(&self, arrows: &[(usize, usize)]) -> Result<Quiver> {
        let mut wanted: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        let mut given: Vec<(usize, usize)> =
            arrows.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        wanted.sort_unstable();
        given.sort_unstable();
        if wanted != given {
            return Err(Error::InvalidGraph(
                "orientation does not match the graph's edges".into(),
            ));
        }
        let ordered = self
            .edges
            .iter()
            .map(|&(a, b)| {
                *arrows
                    .iter()
                    .find(|&&(s, t)| (s, t) == (a, b) || (s, t) == (b, a))
                    .unwrap()
            })
            .collect();
        Quiver::new(self.vertex_count, ordered)
    }

    pub fn dynkin_type(&self) -> Option<DynkinType> {
        catalog::classify(self)
    }
}

/// A finite quiver with connected underlying graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidGraph("no vertices".into()));
        }
        if arrows
            .iter()
            .any(|&(s, t)| s >= vertex_count || t >= vertex_count)
        {
            return Err(Error::InvalidGraph("arrow endpoint out of range".into()));
        }
        let q = Quiver {
            vertex_count,
            arrows,
        };
        let mut seen = vec![false; vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(s, t) in &q.arrows {
                for (a, b) in [(s, t), (t, s)] {
                    if a == v && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidGraph(
                "underlying graph is not connected".into(),
            ));
        }
        Ok(q)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// True when no vertex is both the source of one arrow and the target of another.
    pub fn is_sink_source(&self) -> bool {
        (0..self.vertex_count).all(|v| {
            let out = self.arrows.iter().any(|a| a.0 == v);
            let inc = self.arrows.iter().any(|a| a.1 == v);
            !(out && inc)
        })
    }

    pub fn double(&self) -> DoubledQuiver {
        DoubledQuiver::new(self.clone())
    }

    pub fn ginzburg(&self) -> GinzburgQuiver {
        self.double().ginzburg_extend()
    }
}

/// The double `Q̃` of a quiver: every arrow `α` plus a reverse `α*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubledQuiver {
    base: Quiver,
    /// (source, target) per arrow id
    ends: Vec<(usize, usize)>,
    /// arrow ids leaving each vertex, increasing
    out: Vec<Vec<Letter>>,
}

impl DoubledQuiver {
    fn new(base: Quiver) -> Self {
        let m = base.arrows.len();
        assert!(
            2 * m + base.vertex_count < Letter::MAX as usize,
            "quiver too large"
        );
        let mut ends = Vec::with_capacity(2 * m);
        ends.extend(base.arrows.iter().copied());
        ends.extend(base.arrows.iter().map(|&(s, t)| (t, s)));
        let mut out = vec![Vec::new(); base.vertex_count];
        for (id, &(s, _)) in ends.iter().enumerate() {
            out[s].push(id as Letter);
        }
        DoubledQuiver { base, ends, out }
    }

    pub fn base(&self) -> &Quiver {
        &self.base
    }

    pub fn vertex_count(&self) -> usize {
        self.base.vertex_count
    }

    pub fn base_arrow_count(&self) -> usize {
        self.base.arrows.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.ends.len()
    }

    pub fn source(&self, a: Letter) -> usize {
        self.ends[a as usize].0
    }

    pub fn target(&self, a: Letter) -> usize {
        self.ends[a as usize].1
    }

    pub fn is_base(&self, a: Letter) -> bool {
        (a as usize) < self.base_arrow_count()
    }

    /// The involution `α ↔ α*`.
    pub fn star(&self, a: Letter) -> Letter {
        let m = self.base_arrow_count() as Letter;
        if a < m {
            a + m
        } else {
            a - m
        }
    }

    pub fn out_arrows(&self, v: usize) -> &[Letter] {
        &self.out[v]
    }

    pub fn arrow_name(&self, a: Letter) -> String {
        let m = self.base_arrow_count() as Letter;
        if a < m {
            format!("a{}", a + 1)
        } else {
            format!("a{}*", a - m + 1)
        }
    }

    /// Parses `a3` or `a3*` into a letter.
    pub fn parse_arrow(&self, name: &str) -> Result<Letter> {
        let (body, starred) = match name.strip_suffix('*') {
            Some(b) => (b, true),
            None => (name, false),
        };
        let k: usize = body
            .strip_prefix('a')
            .and_then(|d| d.parse().ok())
            .filter(|&k| k >= 1 && k <= self.base_arrow_count())
            .ok_or_else(|| Error::Parse(format!("unknown arrow {name:?}")))?;
        let id = (k - 1) as Letter;
        Ok(if starred { self.star(id) } else { id })
    }

    pub fn ginzburg_extend(&self) -> GinzburgQuiver {
        GinzburgQuiver::new(self.clone())
    }
}

/// The graded quiver `Q̄`: the double plus one loop `tᵢ` per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GinzburgQuiver {
    doubled: DoubledQuiver,
    /// outgoing letters per vertex (arrows then the loop), increasing
    out: Vec<Vec<Letter>>,
}

impl GinzburgQuiver {
    fn new(doubled: DoubledQuiver) -> Self {
        let mut out: Vec<Vec<Letter>> = doubled.out.clone();
        let base = doubled.arrow_count() as Letter;
        for (v, o) in out.iter_mut().enumerate() {
            o.push(base + v as Letter);
        }
        GinzburgQuiver { doubled, out }
    }

    pub fn doubled(&self) -> &DoubledQuiver {
        &self.doubled
    }

    pub fn vertex_count(&self) -> usize {
        self.doubled.vertex_count()
    }

    pub fn letter_count(&self) -> usize {
        self.doubled.arrow_count() + self.vertex_count()
    }

    pub fn is_loop(&self, l: Letter) -> bool {
        (l as usize) >= self.doubled.arrow_count()
    }

    pub fn loop_at(&self, v: usize) -> Letter {
        (self.doubled.arrow_count() + v) as Letter
    }

    /// Vertex carrying the loop `l`.
    pub fn loop_vertex(&self, l: Letter) -> usize {
        l as usize - self.doubled.arrow_count()
    }

    pub fn source(&self, l: Letter) -> usize {
        if self.is_loop(l) {
            self.loop_vertex(l)
        } else {
            self.doubled.source(l)
        }
    }

    pub fn target(&self, l: Letter) -> usize {
        if self.is_loop(l) {
            self.loop_vertex(l)
        } else {
            self.doubled.target(l)
        }
    }

    /// `(0, 1)` for doubled arrows, `(-1, 2)` for loops.
    pub fn bidegree(&self, l: Letter) -> (i64, i64) {
        if self.is_loop(l) {
            (-1, 2)
        } else {
            (0, 1)
        }
    }

    pub fn out_letters(&self, v: usize) -> &[Letter] {
        &self.out[v]
    }

    pub fn letter_name(&self, l: Letter) -> String {
        if self.is_loop(l) {
            format!("t{}", self.loop_vertex(l) + 1)
        } else {
            self.doubled.arrow_name(l)
        }
    }

    pub fn parse_letter(&self, name: &str) -> Result<Letter> {
        if let Some(v) = name.strip_prefix('t') {
            let v: usize = v
                .parse()
                .ok()
                .filter(|&v| v >= 1 && v <= self.vertex_count())
                .ok_or_else(|| Error::Parse(format!("unknown loop {name:?}")))?;
            return Ok(self.loop_at(v - 1));
        }
        self.doubled.parse_arrow(name)
    }
}
