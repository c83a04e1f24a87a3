//! Forbidden monochromatic patterns and their detection.
//!
//! All detectors work on a single color class of a (possibly partial)
//! colored graph; uncolored pairs never count as edges. Containment is
//! ordinary (non-induced) subgraph containment.

use std::fmt;

use crate::bitset::VertexSet;
use crate::error::{param, Error, Result};
use crate::graph::{Color, ColoredCompleteGraph};

/// Largest pattern order (vertex count) accepted.
pub const MAX_PATTERN_ORDER: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PatternSpec {
    /// `K_k`
    Complete(usize),
    /// `J_k = K_k - e`
    AlmostComplete(usize),
    /// `C_k`
    Cycle(usize),
    /// `W_k`: a hub joined to every vertex of a `C_{k-1}`.
    Wheel(usize),
    /// `K_{a,b}` with `a <= b`.
    Bipartite(usize, usize),
}

impl PatternSpec {
    pub fn complete(k: usize) -> Result<Self> {
        Self::Complete(k).validated()
    }

    pub fn almost_complete(k: usize) -> Result<Self> {
        Self::AlmostComplete(k).validated()
    }

    pub fn cycle(k: usize) -> Result<Self> {
        Self::Cycle(k).validated()
    }

    pub fn wheel(k: usize) -> Result<Self> {
        Self::Wheel(k).validated()
    }

    /// `K_{a,b}`; the parts are stored smaller first.
    pub fn bipartite(a: usize, b: usize) -> Result<Self> {
        Self::Bipartite(a.min(b), a.max(b)).validated()
    }

    pub fn validated(self) -> Result<Self> {
        let ok = match self {
            Self::Complete(k) => k >= 2,
            Self::AlmostComplete(k) => k >= 3,
            Self::Cycle(k) => k >= 3,
            Self::Wheel(k) => k >= 4,
            Self::Bipartite(a, b) => a >= 1 && a <= b,
        };
        if !ok {
            return Err(param(format!("pattern {self} has parameters out of range")));
        }
        if self.order() > MAX_PATTERN_ORDER {
            return Err(param(format!(
                "pattern {self} has more than {MAX_PATTERN_ORDER} vertices"
            )));
        }
        Ok(self)
    }

    /// Number of vertices of the pattern graph.
    pub fn order(&self) -> usize {
        match *self {
            Self::Complete(k) | Self::AlmostComplete(k) | Self::Cycle(k) | Self::Wheel(k) => k,
            Self::Bipartite(a, b) => a + b,
        }
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Complete(k) => write!(f, "K{k}"),
            Self::AlmostComplete(k) => write!(f, "J{k}"),
            Self::Cycle(k) => write!(f, "C{k}"),
            Self::Wheel(k) => write!(f, "W{k}"),
            Self::Bipartite(a, b) => write!(f, "K{a},{b}"),
        }
    }
}

/// Does the color-`t` subgraph of `g` contain `p`?
pub fn contains_pattern(g: &ColoredCompleteGraph, t: Color, p: &PatternSpec) -> bool {
    let all = VertexSet::full(g.n());
    match *p {
        PatternSpec::Complete(k) => clique_with_pool(g, t, all, all, k, 0),
        PatternSpec::AlmostComplete(k) => clique_with_pool(g, t, all, all, k - 2, 2),
        PatternSpec::Cycle(k) => has_cycle(g, t, k, &all),
        PatternSpec::Wheel(k) => (0..g.n()).any(|h| has_cycle(g, t, k - 1, g.neighbors(t, h))),
        PatternSpec::Bipartite(a, b) => biclique(g, t, all, all, a, b),
    }
}

/// Does some color-`t` copy of `p` use the edge `{u, v}`?
///
/// The edge must already carry color `t`.
pub fn contains_pattern_through_edge(
    g: &ColoredCompleteGraph,
    t: Color,
    p: &PatternSpec,
    (u, v): (usize, usize),
) -> Result<bool> {
    g.check_color(t)?;
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v || g.color(u, v) != t {
        return Err(param(format!("edge ({u}, {v}) does not have color {t}")));
    }
    Ok(through_edge(g, t, p, u, v))
}

/// Anchored detection without argument checks; `{u, v}` must have color `t`.
pub(crate) fn through_edge(
    g: &ColoredCompleteGraph,
    t: Color,
    p: &PatternSpec,
    u: usize,
    v: usize,
) -> bool {
    let nu = g.neighbors(t, u);
    let nv = g.neighbors(t, v);
    let common = nu.intersect(nv);
    match *p {
        PatternSpec::Complete(k) => clique_with_pool(g, t, common, common, k - 2, 0),
        PatternSpec::AlmostComplete(k) => {
            // J_k is a (k-2)-clique Q plus two vertices adjacent to all of Q.
            // Either uv lies inside Q, or it joins Q to one of the two extras.
            if k >= 4 && clique_with_pool(g, t, common, common, k - 4, 2) {
                return true;
            }
            let mut nu_minus_v = *nu;
            nu_minus_v.remove(v);
            let mut nv_minus_u = *nv;
            nv_minus_u.remove(u);
            clique_with_pool(g, t, common, nu_minus_v, k - 3, 1)
                || clique_with_pool(g, t, common, nv_minus_u, k - 3, 1)
        }
        PatternSpec::Cycle(k) => {
            let all = VertexSet::full(g.n());
            cycle_through_edge(g, t, u, v, k, &all)
        }
        PatternSpec::Wheel(k) => {
            let rim = k - 1;
            // spoke: one endpoint is the hub, the other lies on the rim
            if cycle_through_vertex(g, t, v, rim, nu) || cycle_through_vertex(g, t, u, rim, nv) {
                return true;
            }
            // rim edge: the hub is a common neighbor
            common
                .iter()
                .any(|h| cycle_through_edge(g, t, u, v, rim, g.neighbors(t, h)))
        }
        PatternSpec::Bipartite(a, b) => {
            let mut cand = *nv;
            cand.remove(u);
            if biclique(g, t, cand, *nu, a - 1, b) {
                return true;
            }
            let mut cand = *nu;
            cand.remove(v);
            biclique(g, t, cand, *nv, a - 1, b)
        }
    }
}

/// True iff, for every color `t`, the color-`t` graph avoids `patterns[t-1]`.
pub fn is_ramsey_graph(g: &ColoredCompleteGraph, patterns: &[PatternSpec]) -> Result<bool> {
    if patterns.len() != g.colors() {
        return Err(param(format!(
            "{} patterns given for {} colors",
            patterns.len(),
            g.colors()
        )));
    }
    if !g.is_total() {
        return Err(Error::Partial);
    }
    Ok(patterns
        .iter()
        .enumerate()
        .all(|(i, p)| !contains_pattern(g, (i + 1) as Color, p)))
}

/// Is there an `s`-clique `R` inside `cand` such that at least `need`
/// vertices of `pool` are adjacent to every vertex of `R`?
fn clique_with_pool(
    g: &ColoredCompleteGraph,
    t: Color,
    cand: VertexSet,
    pool: VertexSet,
    s: usize,
    need: usize,
) -> bool {
    if pool.len() < need {
        return false;
    }
    if s == 0 {
        return true;
    }
    if cand.len() < s {
        return false;
    }
    let mut rest = cand;
    for v in cand.iter() {
        rest.remove(v);
        if rest.len() + 1 < s {
            return false;
        }
        let nv = g.neighbors(t, v);
        let next = rest.intersect(nv);
        if next.len() + 1 < s {
            continue;
        }
        if clique_with_pool(g, t, next, pool.intersect(nv), s - 1, need) {
            return true;
        }
    }
    false
}

/// Is there an `s`-subset `A` of `cand` (no adjacency required inside `A`)
/// with at least `need` common neighbors in `pool`?
fn biclique(
    g: &ColoredCompleteGraph,
    t: Color,
    cand: VertexSet,
    pool: VertexSet,
    s: usize,
    need: usize,
) -> bool {
    if pool.len() < need {
        return false;
    }
    if s == 0 {
        return true;
    }
    let mut rest = cand;
    for v in cand.iter() {
        rest.remove(v);
        if rest.len() + 1 < s {
            return false;
        }
        let nv = g.neighbors(t, v);
        if nv.len() < need {
            continue;
        }
        if biclique(g, t, rest, pool.intersect(nv), s - 1, need) {
            return true;
        }
    }
    false
}

/// Does a `k`-cycle run through the edge `{u, v}` using only vertices of
/// `allowed` (besides `u` and `v`)?
fn cycle_through_edge(
    g: &ColoredCompleteGraph,
    t: Color,
    u: usize,
    v: usize,
    k: usize,
    allowed: &VertexSet,
) -> bool {
    let mut visited = VertexSet::new();
    visited.insert(u);
    visited.insert(v);
    let nu = g.neighbors(t, u).intersect(allowed);
    extend_path(g, t, &nu, v, k - 2, allowed, &mut visited)
}

fn extend_path(
    g: &ColoredCompleteGraph,
    t: Color,
    closers: &VertexSet,
    cur: usize,
    remaining: usize,
    allowed: &VertexSet,
    visited: &mut VertexSet,
) -> bool {
    let next = g.neighbors(t, cur).intersect(allowed).difference(visited);
    if remaining == 1 {
        return next.intersection_len(closers) > 0;
    }
    if closers.difference(visited).is_empty() {
        return false;
    }
    for w in next.iter() {
        visited.insert(w);
        let found = extend_path(g, t, closers, w, remaining - 1, allowed, visited);
        visited.remove(w);
        if found {
            return true;
        }
    }
    false
}

fn cycle_through_vertex(
    g: &ColoredCompleteGraph,
    t: Color,
    v: usize,
    k: usize,
    allowed: &VertexSet,
) -> bool {
    g.neighbors(t, v)
        .intersect(allowed)
        .iter()
        .any(|w| cycle_through_edge(g, t, v, w, k, allowed))
}

/// Any `k`-cycle inside `allowed`; each cycle is found from its least vertex.
fn has_cycle(g: &ColoredCompleteGraph, t: Color, k: usize, allowed: &VertexSet) -> bool {
    allowed.iter().any(|u| {
        let mut upper = allowed.above(u);
        upper.insert(u);
        g.neighbors(t, u)
            .intersect(&allowed.above(u))
            .iter()
            .any(|v| cycle_through_edge(g, t, u, v, k, &upper))
    })
}
