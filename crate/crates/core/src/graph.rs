//! Generalised Petersen graphs GP(n,k).
//!
//! Vertices are numbered `u_i = i` and `v_i = n + i`. Edges are numbered
//! role-major: outer edge `u_j u_{j+1}` is `j`, spoke `u_j v_j` is `n + j`,
//! inner edge `v_j v_{j+k}` is `2n + j`. Endpoints are stored as `(min, max)`.

use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeRole {
    Outer,
    Spoke,
    Inner,
}

impl EdgeRole {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeRole::Outer => "outer",
            EdgeRole::Spoke => "spoke",
            EdgeRole::Inner => "inner",
        }
    }
}

impl fmt::Display for EdgeRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub role: EdgeRole,
}

impl Edge {
    fn new(x: usize, y: usize, role: EdgeRole) -> Self {
        Edge {
            a: x.min(y),
            b: x.max(y),
            role,
        }
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn other(&self, v: usize) -> usize {
        if v == self.a {
            self.b
        } else {
            self.a
        }
    }
}

/// Cyclic order of the three incident edges at each vertex, used by the
/// vertex sign. At `u_i`: `(u_{i-1}u_i, u_i u_{i+1}, u_i v_i)`; at `v_i`:
/// `(v_{k+i}v_i, v_i v_{2k+i}, v_i u_i)`. Only defined for GP(3k,k).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    order: Vec<[usize; 3]>,
}

impl RotationSystem {
    fn for_gp3k(n: usize, k: usize) -> Self {
        debug_assert_eq!(n, 3 * k);
        let mut order = Vec::with_capacity(2 * n);
        for i in 0..n {
            order.push([(i + n - 1) % n, i, n + i]);
        }
        for i in 0..n {
            // v_{k+i} v_i is inner edge i; v_i v_{2k+i} = v_{i-k} v_i is inner edge i-k.
            order.push([2 * n + i, 2 * n + (i + n - k) % n, n + i]);
        }
        RotationSystem { order }
    }

    /// Ordered incident edge ids at vertex `v`.
    pub fn at(&self, v: usize) -> [usize; 3] {
        self.order[v]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GpGraph {
    n: usize,
    k: usize,
    edges: Vec<Edge>,
    incidence: Vec<[usize; 3]>,
    rotation: Option<RotationSystem>,
}

impl GpGraph {
    /// Builds GP(n,k). Requires `n >= 3` and `1 <= k < n/2`.
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 3 || k < 1 || 2 * k >= n {
            return Err(Error::InvalidParameters { n, k });
        }
        let mut edges = Vec::with_capacity(3 * n);
        for j in 0..n {
            edges.push(Edge::new(j, (j + 1) % n, EdgeRole::Outer));
        }
        for j in 0..n {
            edges.push(Edge::new(j, n + j, EdgeRole::Spoke));
        }
        for j in 0..n {
            edges.push(Edge::new(n + j, n + (j + k) % n, EdgeRole::Inner));
        }

        let mut incidence = Vec::with_capacity(2 * n);
        for i in 0..n {
            incidence.push([(i + n - 1) % n, i, n + i]);
        }
        for i in 0..n {
            incidence.push([2 * n + (i + n - k) % n, 2 * n + i, n + i]);
        }

        let rotation = (n == 3 * k).then(|| RotationSystem::for_gp3k(n, k));
        Ok(GpGraph {
            n,
            k,
            edges,
            incidence,
            rotation,
        })
    }

    /// GP(3k,k).
    pub fn gp3k(k: usize) -> Result<Self> {
        GpGraph::new(3 * k, k)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    pub fn u(&self, i: usize) -> usize {
        i % self.n
    }

    pub fn v(&self, i: usize) -> usize {
        self.n + i % self.n
    }

    pub fn outer_edge(&self, j: usize) -> usize {
        j % self.n
    }

    pub fn spoke(&self, j: usize) -> usize {
        self.n + j % self.n
    }

    pub fn inner_edge(&self, j: usize) -> usize {
        2 * self.n + j % self.n
    }

    /// Edge ids incident with `v`, in no particular rotational order.
    pub fn incident(&self, v: usize) -> [usize; 3] {
        self.incidence[v]
    }

    /// Edge ids sharing an endpoint with `e` (four in a cubic graph).
    pub fn adjacent_edges(&self, e: usize) -> impl Iterator<Item = usize> + '_ {
        let Edge { a, b, .. } = self.edges[e];
        self.incidence[a]
            .into_iter()
            .chain(self.incidence[b])
            .filter(move |&f| f != e)
    }

    pub fn is_gp3k(&self) -> bool {
        self.n == 3 * self.k
    }

    pub fn rotation(&self) -> Option<&RotationSystem> {
        self.rotation.as_ref()
    }

    pub(crate) fn require_gp3k(&self) -> Result<&RotationSystem> {
        self.rotation.as_ref().ok_or(Error::NotApplicable {
            n: self.n,
            k: self.k,
        })
    }

    pub fn vertex_name(&self, v: usize) -> String {
        if v < self.n {
            format!("u{v}")
        } else {
            format!("v{}", v - self.n)
        }
    }

    /// Image of edge `e` under the rotation `u_i -> u_{i+s}`, `v_i -> v_{i+s}`.
    pub fn rotate_edge(&self, e: usize, s: usize) -> usize {
        let n = self.n;
        (e / n) * n + (e % n + s) % n
    }

    pub fn export(&self, format: ExportFormat) -> Vec<u8> {
        match format {
            ExportFormat::Json => self.to_json().into_bytes(),
            ExportFormat::Dot => self.to_dot().into_bytes(),
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct JsonEdge {
            a: String,
            b: String,
            role: EdgeRole,
        }
        #[derive(Serialize)]
        struct JsonGraph {
            n: usize,
            k: usize,
            vertices: Vec<String>,
            edges: Vec<JsonEdge>,
        }
        let doc = JsonGraph {
            n: self.n,
            k: self.k,
            vertices: (0..self.vertex_count()).map(|v| self.vertex_name(v)).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| JsonEdge {
                    a: self.vertex_name(e.a),
                    b: self.vertex_name(e.b),
                    role: e.role,
                })
                .collect(),
        };
        let mut out = serde_json::to_string(&doc).expect("graph serialises");
        out.push('\n');
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "graph GP_{}_{} {{", self.n, self.k).unwrap();
        for v in 0..self.vertex_count() {
            writeln!(out, "  {};", self.vertex_name(v)).unwrap();
        }
        for e in &self.edges {
            writeln!(
                out,
                "  {} -- {} [role=\"{}\"];",
                self.vertex_name(e.a),
                self.vertex_name(e.b),
                e.role
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl std::str::FromStr for ExportFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            other => Err(format!("unknown format `{other}` (expected dot or json)")),
        }
    }
}
