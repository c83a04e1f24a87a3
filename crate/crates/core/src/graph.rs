//! Edge-colored complete graphs with per-color bit-vector adjacency.

use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::error::{param, Error, Result};

/// Edge colors are 1-based; `UNCOLORED` marks an undecided pair.
pub type Color = u8;
pub const UNCOLORED: Color = 0;
pub const MAX_COLORS: usize = 8;

/// A complete graph on `n` vertices whose edges carry one of `c` colors or
/// are still uncolored.
///
/// For every color `t` and vertex `v`, `neighbors(t, v)` is the set of `w`
/// with `color(v, w) == t`. The color sets of a vertex are pairwise disjoint
/// and never contain the vertex itself.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColoredCompleteGraph {
    n: usize,
    c: usize,
    colors: Vec<Color>,
    adj: Vec<VertexSet>,
}

impl ColoredCompleteGraph {
    /// An `n`-vertex graph with every pair uncolored.
    pub fn new(n: usize, c: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(param(format!("n = {n} exceeds {MAX_VERTICES}")));
        }
        if !(2..=MAX_COLORS).contains(&c) {
            return Err(param(format!("color count {c} outside 2..={MAX_COLORS}")));
        }
        Ok(Self {
            n,
            c,
            colors: vec![UNCOLORED; n * n],
            adj: vec![VertexSet::new(); c * n],
        })
    }

    /// Every pair receives color `t`.
    pub fn monochromatic(n: usize, c: usize, t: Color) -> Result<Self> {
        let mut g = Self::new(n, c)?;
        g.check_color(t)?;
        for u in 0..n {
            for v in u + 1..n {
                g.set_color(u, v, t);
            }
        }
        Ok(g)
    }

    /// Two-coloring whose color-1 graph has the given edges; every other pair
    /// is color 2.
    pub fn from_color1_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::new(n, 2)?;
        for (u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(param(format!("bad edge ({u}, {v}) for n = {n}")));
            }
            g.set_color(u, v, 1);
        }
        g.fill_uncolored(2);
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn colors(&self) -> usize {
        self.c
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Color {
        self.colors[u * self.n + v]
    }

    /// Assigns color `t` (or `UNCOLORED`) to the pair `{u, v}`.
    ///
    /// Panics if `u == v` or an index is out of range.
    #[inline]
    pub fn set_color(&mut self, u: usize, v: usize, t: Color) {
        assert!(u != v && u < self.n && v < self.n && (t as usize) <= self.c);
        let old = self.colors[u * self.n + v];
        if old == t {
            return;
        }
        if old != UNCOLORED {
            let base = (old as usize - 1) * self.n;
            self.adj[base + u].remove(v);
            self.adj[base + v].remove(u);
        }
        if t != UNCOLORED {
            let base = (t as usize - 1) * self.n;
            self.adj[base + u].insert(v);
            self.adj[base + v].insert(u);
        }
        self.colors[u * self.n + v] = t;
        self.colors[v * self.n + u] = t;
    }

    /// Colors every still-uncolored pair with `t`.
    pub fn fill_uncolored(&mut self, t: Color) {
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.color(u, v) == UNCOLORED {
                    self.set_color(u, v, t);
                }
            }
        }
    }

    /// Color-`t` neighborhood of `v` as a vertex set.
    #[inline]
    pub fn neighbors(&self, t: Color, v: usize) -> &VertexSet {
        &self.adj[(t as usize - 1) * self.n + v]
    }

    #[inline]
    pub fn degree(&self, t: Color, v: usize) -> usize {
        self.neighbors(t, v).len()
    }

    /// Number of color-`t` edges, `e_t(G)`.
    pub fn edge_count(&self, t: Color) -> usize {
        (0..self.n).map(|v| self.degree(t, v)).sum::<usize>() / 2
    }

    pub fn is_total(&self) -> bool {
        (0..self.n).all(|v| {
            (1..=self.c as Color)
                .map(|t| self.degree(t, v))
                .sum::<usize>()
                + 1
                == self.n
        })
    }

    pub(crate) fn check_color(&self, t: Color) -> Result<()> {
        if t == UNCOLORED || t as usize > self.c {
            return Err(param(format!("color {t} outside 1..={}", self.c)));
        }
        Ok(())
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(param(format!("vertex {v} outside 0..{}", self.n)));
        }
        Ok(())
    }

    /// The colored subgraph induced by `vertices`, relabeled `0..len` in the
    /// given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Self {
        let mut h = Self {
            n: vertices.len(),
            c: self.c,
            colors: vec![UNCOLORED; vertices.len() * vertices.len()],
            adj: vec![VertexSet::new(); self.c * vertices.len()],
        };
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                let t = self.color(u, v);
                if t != UNCOLORED {
                    h.set_color(a, b, t);
                }
            }
        }
        h
    }

    /// `N_G^t(v)`: the subgraph induced by the color-`t` neighbors of `v`,
    /// relabeled in increasing vertex order.
    pub fn neighborhood_subgraph(&self, v: usize, t: Color) -> Result<Self> {
        self.check_vertex(v)?;
        self.check_color(t)?;
        if (0..self.n).any(|w| w != v && self.color(v, w) == UNCOLORED) {
            return Err(Error::Partial);
        }
        let verts: Vec<usize> = self.neighbors(t, v).iter().collect();
        Ok(self.induced_subgraph(&verts))
    }

    /// Applies a vertex relabeling: vertex `v` of `self` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut h = Self {
            n: self.n,
            c: self.c,
            colors: vec![UNCOLORED; self.n * self.n],
            adj: vec![VertexSet::new(); self.c * self.n],
        };
        for u in 0..self.n {
            for v in u + 1..self.n {
                let t = self.color(u, v);
                if t != UNCOLORED {
                    h.set_color(perm[u], perm[v], t);
                }
            }
        }
        h
    }

    /// Removes the listed vertices; survivors keep their relative order.
    pub fn without_vertices(&self, removed: &[usize]) -> Self {
        let keep: Vec<usize> = (0..self.n).filter(|v| !removed.contains(v)).collect();
        self.induced_subgraph(&keep)
    }

    /// Copy with one extra, fully uncolored vertex `n`.
    pub fn with_new_vertex(&self) -> Result<Self> {
        let mut h = Self::new(self.n + 1, self.c)?;
        for u in 0..self.n {
            for v in u + 1..self.n {
                let t = self.color(u, v);
                if t != UNCOLORED {
                    h.set_color(u, v, t);
                }
            }
        }
        Ok(h)
    }

    pub fn degree_histogram(&self, t: Color) -> Result<DegreeHistogram> {
        self.check_color(t)?;
        if !self.is_total() {
            return Err(Error::Partial);
        }
        let mut counts = vec![0u64; self.n.max(1)];
        for v in 0..self.n {
            counts[self.degree(t, v)] += 1;
        }
        counts.truncate(self.n);
        Ok(DegreeHistogram { n: self.n, counts })
    }

    /// Number of triangles whose three edges share one color.
    pub fn mono_triangle_count(&self) -> Result<u64> {
        if !self.is_total() {
            return Err(Error::Partial);
        }
        let mut total = 0u64;
        for t in 1..=self.c as Color {
            for u in 0..self.n {
                let nu = self.neighbors(t, u).above(u);
                for v in nu.iter() {
                    total += nu.above(v).intersection_len(self.neighbors(t, v)) as u64;
                }
            }
        }
        Ok(total)
    }
}

impl std::fmt::Debug for ColoredCompleteGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ColoredCompleteGraph(n={}, c={})", self.n, self.c)?;
        for u in 0..self.n {
            let row: String = (0..self.n)
                .map(|v| {
                    if u == v {
                        '-'
                    } else {
                        match self.color(u, v) {
                            UNCOLORED => '.',
                            t => char::from(b'0' + t),
                        }
                    }
                })
                .collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

/// `counts[j]` is the number of vertices whose degree in the chosen color is `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHistogram {
    pub n: usize,
    pub counts: Vec<u64>,
}

impl DegreeHistogram {
    pub fn new(n: usize, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != n {
            return Err(param(format!(
                "histogram has {} entries for n = {n}",
                counts.len()
            )));
        }
        if counts.iter().sum::<u64>() != n as u64 {
            return Err(param("histogram entries do not sum to n"));
        }
        Ok(Self { n, counts })
    }

    /// Histogram of a `d`-regular graph on `n` vertices.
    pub fn regular(n: usize, d: usize) -> Result<Self> {
        if d >= n {
            return Err(param(format!("degree {d} impossible on {n} vertices")));
        }
        let mut counts = vec![0; n];
        counts[d] = n as u64;
        Ok(Self { n, counts })
    }
}
