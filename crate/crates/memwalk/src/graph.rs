//! Regular digraphs and iterated line digraphs.
//!
//! All walks in this crate run on an m-regular digraph: every vertex has
//! exactly `m` out-arcs and `m` in-arcs, self-loops and parallel arcs are
//! rejected. Arcs carry dense indices `0..n*m` fixed by construction order,
//! and those indices double as the vertex labels of the line digraph: vertex
//! `k` of `L G` *is* arc `k` of `G`. Iterating the construction `d` times
//! yields the graph whose vertices are the length-`d` walks of `G`, which is
//! exactly the state space of a walker remembering its last `d` positions.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub type VertexId = usize;
pub type ArcId = usize;

/// Default ceiling on the vertex count a line-digraph iteration may produce.
/// `n * m^d` grows fast; anything above this is almost certainly a mistake.
pub const DEFAULT_VERTEX_CAP: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {vertex} has out-degree {got}, expected {expected}")]
    OutDegree {
        vertex: VertexId,
        got: usize,
        expected: usize,
    },
    #[error("vertex {vertex} has in-degree {got}, expected {expected}")]
    InDegree {
        vertex: VertexId,
        got: usize,
        expected: usize,
    },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("parallel arc ({0}, {1})")]
    ParallelArc(VertexId, VertexId),
    #[error("arc ({0}, {1}) references a vertex outside 0..{2}")]
    VertexOutOfRange(VertexId, VertexId, usize),
    #[error("arc list has {got} entries, expected n*m = {expected}")]
    ArcCount { got: usize, expected: usize },
    #[error("need at least {min} vertices, got {got}")]
    TooFewVertices { got: usize, min: usize },
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("memory depth must be at least 1")]
    ZeroDepth,
    #[error("depth-{depth} line digraph would have {required} vertices, cap is {cap}")]
    VertexCapExceeded {
        depth: usize,
        required: usize,
        cap: usize,
    },
}

/// An m-regular digraph with densely indexed, ordered arcs.
///
/// The arc order is part of the structure: it fixes the out-arc slots used
/// by transition amplitudes, the canonical vertex labeling of the line
/// digraph, and the on-disk formats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularDigraph {
    n_vertices: usize,
    degree: usize,
    arcs: Vec<(VertexId, VertexId)>,
    out: Vec<Vec<ArcId>>,
    inc: Vec<Vec<ArcId>>,
    index: HashMap<(VertexId, VertexId), ArcId>,
    labels: Vec<String>,
}

impl RegularDigraph {
    /// Build from an explicit arc list. The list order defines arc indices.
    pub fn from_arcs(
        n_vertices: usize,
        degree: usize,
        arcs: Vec<(VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let labels = (0..n_vertices).map(|v| v.to_string()).collect();
        Self::from_arcs_labeled(n_vertices, degree, arcs, labels)
    }

    /// Same as [`from_arcs`](Self::from_arcs) with caller-supplied display labels.
    pub fn from_arcs_labeled(
        n_vertices: usize,
        degree: usize,
        arcs: Vec<(VertexId, VertexId)>,
        labels: Vec<String>,
    ) -> Result<Self, GraphError> {
        if degree == 0 {
            return Err(GraphError::ZeroDegree);
        }
        if n_vertices == 0 {
            return Err(GraphError::TooFewVertices { got: 0, min: 1 });
        }
        if arcs.len() != n_vertices * degree {
            return Err(GraphError::ArcCount {
                got: arcs.len(),
                expected: n_vertices * degree,
            });
        }
        assert_eq!(labels.len(), n_vertices, "one label per vertex");

        let mut out = vec![Vec::with_capacity(degree); n_vertices];
        let mut inc = vec![Vec::with_capacity(degree); n_vertices];
        let mut index = HashMap::with_capacity(arcs.len());
        for (id, &(t, h)) in arcs.iter().enumerate() {
            if t >= n_vertices || h >= n_vertices {
                return Err(GraphError::VertexOutOfRange(t, h, n_vertices));
            }
            if t == h {
                return Err(GraphError::SelfLoop(t));
            }
            if index.insert((t, h), id).is_some() {
                return Err(GraphError::ParallelArc(t, h));
            }
            out[t].push(id);
            inc[h].push(id);
        }
        for v in 0..n_vertices {
            if out[v].len() != degree {
                return Err(GraphError::OutDegree {
                    vertex: v,
                    got: out[v].len(),
                    expected: degree,
                });
            }
            if inc[v].len() != degree {
                return Err(GraphError::InDegree {
                    vertex: v,
                    got: inc[v].len(),
                    expected: degree,
                });
            }
        }
        Ok(Self {
            n_vertices,
            degree,
            arcs,
            out,
            inc,
            index,
            labels,
        })
    }

    /// Build from per-vertex out-neighbor rows; row `v` lists the heads of
    /// the out-arcs of `v` in slot order. Arc `v*m + s` is slot `s` of `v`.
    pub fn from_out_neighbors(
        n_vertices: usize,
        degree: usize,
        rows: &[Vec<VertexId>],
    ) -> Result<Self, GraphError> {
        assert_eq!(rows.len(), n_vertices, "one out-neighbor row per vertex");
        let mut arcs = Vec::with_capacity(n_vertices * degree);
        for (v, row) in rows.iter().enumerate() {
            if row.len() != degree {
                return Err(GraphError::OutDegree {
                    vertex: v,
                    got: row.len(),
                    expected: degree,
                });
            }
            for &h in row {
                arcs.push((v, h));
            }
        }
        Self::from_arcs(n_vertices, degree, arcs)
    }

    /// The symmetric cycle on `n >= 3` vertices: each `x` has out-arcs to
    /// `x+1` and then `x-1` (mod `n`), so arc `2x` points right and arc
    /// `2x+1` points left.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::TooFewVertices { got: n, min: 3 });
        }
        let rows: Vec<Vec<VertexId>> = (0..n).map(|x| vec![(x + 1) % n, (x + n - 1) % n]).collect();
        Self::from_out_neighbors(n, 2, &rows)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn n_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn tail(&self, a: ArcId) -> VertexId {
        self.arcs[a].0
    }

    pub fn head(&self, a: ArcId) -> VertexId {
        self.arcs[a].1
    }

    pub fn arc(&self, a: ArcId) -> (VertexId, VertexId) {
        self.arcs[a]
    }

    pub fn arcs(&self) -> &[(VertexId, VertexId)] {
        &self.arcs
    }

    /// Arc index of `(tail, head)`, if that arc exists.
    pub fn arc_index(&self, tail: VertexId, head: VertexId) -> Option<ArcId> {
        self.index.get(&(tail, head)).copied()
    }

    /// Out-arcs of `v` in slot order.
    pub fn out_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.out[v]
    }

    /// In-arcs of `v`, ordered by arc index.
    pub fn in_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.inc[v]
    }

    /// Slot of arc `a` among the out-arcs of its tail.
    pub fn out_slot(&self, a: ArcId) -> usize {
        let t = self.tail(a);
        self.out[t]
            .iter()
            .position(|&b| b == a)
            .expect("arc listed among its tail's out-arcs")
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The line digraph `L G`: one vertex per arc of `G`, one arc per
    /// length-2 walk. Vertex `k` of the result is arc `k` of `G`, and the
    /// out-arcs of `(a, b)` follow the out-arc order of `b`.
    pub fn line_digraph(&self) -> RegularDigraph {
        let n = self.n_arcs();
        let m = self.degree;
        let mut arcs = Vec::with_capacity(n * m);
        let mut labels = Vec::with_capacity(n);
        for k in 0..n {
            let (t, h) = self.arcs[k];
            for &next in &self.out[h] {
                arcs.push((k, next));
            }
            labels.push(format!("({},{})", self.labels[t], self.labels[h]));
        }
        RegularDigraph::from_arcs_labeled(n, m, arcs, labels)
            .expect("line digraph of a regular digraph is regular and simple")
    }
}

/// A length-`d` walk `x_0, x_1, ..., x_d` in the base graph; the decoded
/// identity of a vertex of the `d`-fold line digraph. The walker sits at
/// `x_d` and remembers the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathVertex {
    steps: Vec<VertexId>,
}

impl PathVertex {
    pub fn new(steps: Vec<VertexId>) -> Self {
        assert!(steps.len() >= 2, "a path vertex records at least one arc");
        Self { steps }
    }

    /// The full walk `x_0..x_d`.
    pub fn steps(&self) -> &[VertexId] {
        &self.steps
    }

    /// Current position `x_d`.
    pub fn position(&self) -> VertexId {
        *self.steps.last().unwrap()
    }

    /// Remembered positions `x_0..x_{d-1}`, oldest first.
    pub fn memory(&self) -> &[VertexId] {
        &self.steps[..self.steps.len() - 1]
    }
}

impl fmt::Display for PathVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in &self.steps {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
            first = false;
        }
        Ok(())
    }
}

/// `L^d G`: the walked graph of a depth-`d` memory walk over base graph `G`,
/// bundled with the decoding of its vertices back to walks in `G`.
#[derive(Debug, Clone)]
pub struct LineGraph {
    base: Arc<RegularDigraph>,
    graph: Arc<RegularDigraph>,
    depth: usize,
    paths: Vec<PathVertex>,
}

impl LineGraph {
    /// Iterate the line-digraph construction `depth >= 1` times under the
    /// default vertex cap.
    pub fn with_depth(base: RegularDigraph, depth: usize) -> Result<Self, GraphError> {
        Self::with_depth_capped(base, depth, DEFAULT_VERTEX_CAP)
    }

    /// Iterate with an explicit cap on the vertex count of the result.
    pub fn with_depth_capped(
        base: RegularDigraph,
        depth: usize,
        cap: usize,
    ) -> Result<Self, GraphError> {
        let base = Arc::new(base);
        let (graph, paths) = iterated_line_digraph_capped(&base, depth, cap)?;
        Ok(Self {
            base,
            graph: Arc::new(graph),
            depth,
            paths,
        })
    }

    /// Treat a graph as its own walk space (no memory): every vertex decodes
    /// to itself. Useful when a walked graph is supplied directly, e.g. from
    /// a file, without unfolding it from a smaller base.
    pub fn identity(graph: Arc<RegularDigraph>) -> Self {
        let paths = (0..graph.n_vertices())
            .map(|v| PathVertex { steps: vec![v] })
            .collect();
        Self {
            base: Arc::clone(&graph),
            graph,
            depth: 0,
            paths,
        }
    }

    pub fn base(&self) -> &Arc<RegularDigraph> {
        &self.base
    }

    /// The walked graph `L^d G`.
    pub fn graph(&self) -> &Arc<RegularDigraph> {
        &self.graph
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Decode a walked-graph vertex to its walk in the base graph.
    pub fn path(&self, v: VertexId) -> &PathVertex {
        &self.paths[v]
    }

    pub fn paths(&self) -> &[PathVertex] {
        &self.paths
    }

    /// Current base-graph position of a walked-graph vertex.
    pub fn position(&self, v: VertexId) -> VertexId {
        self.paths[v].position()
    }
}

/// One application of the line-digraph construction.
pub fn line_digraph(g: &RegularDigraph) -> RegularDigraph {
    g.line_digraph()
}

/// `d`-fold line digraph of `g` plus the walk decoding of its vertices,
/// under the default vertex cap.
pub fn iterated_line_digraph(
    g: &RegularDigraph,
    depth: usize,
) -> Result<(RegularDigraph, Vec<PathVertex>), GraphError> {
    iterated_line_digraph_capped(g, depth, DEFAULT_VERTEX_CAP)
}

/// `d`-fold line digraph with an explicit vertex cap.
pub fn iterated_line_digraph_capped(
    g: &RegularDigraph,
    depth: usize,
    cap: usize,
) -> Result<(RegularDigraph, Vec<PathVertex>), GraphError> {
    if depth == 0 {
        return Err(GraphError::ZeroDepth);
    }
    // n * m^level vertices at each level; check before building.
    let mut required = g.n_vertices();
    for level in 1..=depth {
        required = required
            .checked_mul(g.degree())
            .ok_or(GraphError::VertexCapExceeded {
                depth: level,
                required: usize::MAX,
                cap,
            })?;
        if required > cap {
            return Err(GraphError::VertexCapExceeded {
                depth: level,
                required,
                cap,
            });
        }
    }

    let mut current = g.line_digraph();
    // decode[k] for level 1 is just arc k of g.
    let mut decode: Vec<Vec<VertexId>> = g.arcs().iter().map(|&(t, h)| vec![t, h]).collect();
    for _ in 1..depth {
        let next = current.line_digraph();
        // Vertex j of the next level is arc j = (u, v) of the current one;
        // decode[u] and decode[v] overlap in all but their endpoints.
        let next_decode: Vec<Vec<VertexId>> = current
            .arcs()
            .iter()
            .map(|&(u, v)| {
                let mut steps = decode[u].clone();
                steps.push(*decode[v].last().unwrap());
                steps
            })
            .collect();
        current = next;
        decode = next_decode;
    }

    let paths: Vec<PathVertex> = decode.into_iter().map(PathVertex::new).collect();
    let labels: Vec<String> = paths
        .iter()
        .map(|p| {
            p.steps()
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    let relabeled = RegularDigraph {
        labels,
        ..current
    };
    Ok((relabeled, paths))
}
