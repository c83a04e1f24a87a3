//! Independent checks: a deliberately naive Ramsey verifier with witnesses,
//! colored-graph isomorphism, dedup, and an exhaustive small-order census.
//!
//! Nothing here calls into the pattern detectors; the verifier only reads
//! edge colors pair by pair.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{param, Error, Result};
use crate::graph::{Color, ColoredCompleteGraph};
use crate::pattern::PatternSpec;

/// A monochromatic copy of a forbidden pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub color: Color,
    pub pattern: PatternSpec,
    /// Pattern vertices: the clique or near-clique; the cycle in order; the
    /// hub followed by the rim cycle; or part `A` followed by part `B`.
    pub vertices: Vec<usize>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(
            f,
            "color {} {} on vertices {}",
            self.color,
            self.pattern,
            vs.join(" ")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Valid,
    Invalid(Witness),
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verification::Valid)
    }
}

/// Checks every color class against its pattern by plain enumeration.
pub fn verify_ramsey(g: &ColoredCompleteGraph, patterns: &[PatternSpec]) -> Result<Verification> {
    if patterns.len() != g.colors() {
        return Err(param(format!(
            "{} patterns for {} colors",
            patterns.len(),
            g.colors()
        )));
    }
    if !g.is_total() {
        return Err(Error::Partial);
    }
    for (i, p) in patterns.iter().enumerate() {
        let t = (i + 1) as Color;
        if let Some(vertices) = find_copy(g, t, p) {
            return Ok(Verification::Invalid(Witness {
                color: t,
                pattern: *p,
                vertices,
            }));
        }
    }
    Ok(Verification::Valid)
}

/// Does `w` describe a genuine color-`t` copy of `p` in `g`?
pub fn check_witness(g: &ColoredCompleteGraph, w: &Witness) -> bool {
    let vs = &w.vertices;
    let t = w.color;
    let distinct = {
        let mut s = vs.clone();
        s.sort_unstable();
        s.dedup();
        s.len() == vs.len()
    };
    if !distinct || vs.len() != w.pattern.order() || vs.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let e = |a: usize, b: usize| g.color(vs[a], vs[b]) == t;
    let k = vs.len();
    match w.pattern {
        PatternSpec::Complete(_) | PatternSpec::AlmostComplete(_) => {
            let missing = (0..k)
                .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
                .filter(|&(a, b)| !e(a, b))
                .count();
            let allowed = usize::from(matches!(w.pattern, PatternSpec::AlmostComplete(_)));
            missing <= allowed
        }
        PatternSpec::Cycle(_) => (0..k).all(|a| e(a, (a + 1) % k)),
        PatternSpec::Wheel(_) => {
            let r = k - 1;
            (1..k).all(|a| e(0, a)) && (0..r).all(|a| e(1 + a, 1 + (a + 1) % r))
        }
        PatternSpec::Bipartite(a, _) => (0..a).all(|x| (a..k).all(|y| e(x, y))),
    }
}

fn find_copy(g: &ColoredCompleteGraph, t: Color, p: &PatternSpec) -> Option<Vec<usize>> {
    let all: Vec<usize> = (0..g.n()).collect();
    match *p {
        PatternSpec::Complete(k) => dense_subset(g, t, &all, k, 0),
        PatternSpec::AlmostComplete(k) => dense_subset(g, t, &all, k, 1),
        PatternSpec::Cycle(k) => naive_cycle(g, t, &all, k),
        PatternSpec::Wheel(k) => (0..g.n()).find_map(|h| {
            let nbrs: Vec<usize> = (0..g.n())
                .filter(|&w| w != h && g.color(h, w) == t)
                .collect();
            naive_cycle(g, t, &nbrs, k - 1).map(|mut rim| {
                rim.insert(0, h);
                rim
            })
        }),
        PatternSpec::Bipartite(a, b) => naive_biclique(g, t, a, b),
    }
}

/// A `k`-subset of `verts` missing at most `allowed` color-`t` pairs.
fn dense_subset(
    g: &ColoredCompleteGraph,
    t: Color,
    verts: &[usize],
    k: usize,
    allowed: usize,
) -> Option<Vec<usize>> {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        g: &ColoredCompleteGraph,
        t: Color,
        verts: &[usize],
        start: usize,
        k: usize,
        allowed: usize,
        missing: usize,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if chosen.len() == k {
            return true;
        }
        for idx in start..verts.len() {
            if verts.len() - idx < k - chosen.len() {
                break;
            }
            let v = verts[idx];
            let extra = chosen.iter().filter(|&&u| g.color(u, v) != t).count();
            if missing + extra > allowed {
                continue;
            }
            chosen.push(v);
            if rec(g, t, verts, idx + 1, k, allowed, missing + extra, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::with_capacity(k);
    rec(g, t, verts, 0, k, allowed, 0, &mut chosen).then_some(chosen)
}

/// A color-`t` cycle of length exactly `k` inside `verts`, listed in order.
fn naive_cycle(
    g: &ColoredCompleteGraph,
    t: Color,
    verts: &[usize],
    k: usize,
) -> Option<Vec<usize>> {
    fn walk(
        g: &ColoredCompleteGraph,
        t: Color,
        verts: &[usize],
        k: usize,
        path: &mut Vec<usize>,
    ) -> bool {
        let start = path[0];
        let last = *path.last().expect("non-empty");
        if path.len() == k {
            return g.color(last, start) == t;
        }
        for &w in verts {
            // the start is the smallest vertex of the cycle
            if w <= start || path.contains(&w) || g.color(last, w) != t {
                continue;
            }
            path.push(w);
            if walk(g, t, verts, k, path) {
                return true;
            }
            path.pop();
        }
        false
    }
    for &s in verts {
        let mut path = vec![s];
        if walk(g, t, verts, k, &mut path) {
            return Some(path);
        }
    }
    None
}

fn naive_biclique(g: &ColoredCompleteGraph, t: Color, a: usize, b: usize) -> Option<Vec<usize>> {
    let n = g.n();
    let mut part = Vec::with_capacity(a);
    fn rec(
        g: &ColoredCompleteGraph,
        t: Color,
        n: usize,
        a: usize,
        b: usize,
        start: usize,
        part: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        if part.len() == a {
            let common: Vec<usize> = (0..n)
                .filter(|w| !part.contains(w) && part.iter().all(|&u| g.color(u, *w) == t))
                .take(b)
                .collect();
            if common.len() == b {
                let mut out = part.clone();
                out.extend(common);
                return Some(out);
            }
            return None;
        }
        for v in start..n {
            part.push(v);
            if let Some(found) = rec(g, t, n, a, b, v + 1, part) {
                return Some(found);
            }
            part.pop();
        }
        None
    }
    rec(g, t, n, a, b, 0, &mut part)
}

/// Is there a color-preserving bijection between the vertex sets?
pub fn are_isomorphic(g: &ColoredCompleteGraph, h: &ColoredCompleteGraph) -> Result<bool> {
    if g.n() != h.n() || g.colors() != h.colors() {
        return Err(param("isomorphism test needs equal order and color count"));
    }
    if !g.is_total() || !h.is_total() {
        return Err(Error::Partial);
    }
    Ok(find_isomorphism(g, h).is_some())
}

/// A vertex map `f` with `h.color(f[u], f[v]) == g.color(u, v)`, if any.
pub fn find_isomorphism(g: &ColoredCompleteGraph, h: &ColoredCompleteGraph) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.colors() != h.colors() {
        return None;
    }
    let n = g.n();
    let cg = vec![0u32; n];
    let ch = vec![0u32; n];
    let (cg, ch) = refine(g, h, cg, ch)?;
    search_iso(g, h, cg, ch)
}

/// Joint color refinement of both vertex colorings; `None` once the two
/// diverge.
fn refine(
    g: &ColoredCompleteGraph,
    h: &ColoredCompleteGraph,
    mut cg: Vec<u32>,
    mut ch: Vec<u32>,
) -> Option<(Vec<u32>, Vec<u32>)> {
    let n = g.n();
    let signature = |x: &ColoredCompleteGraph, c: &[u32], v: usize| -> (u32, Vec<(Color, u32)>) {
        let mut nb: Vec<(Color, u32)> = (0..n)
            .filter(|&w| w != v)
            .map(|w| (x.color(v, w), c[w]))
            .collect();
        nb.sort_unstable();
        (c[v], nb)
    };
    let mut classes = count_classes(&cg);
    loop {
        let sg: Vec<_> = (0..n).map(|v| signature(g, &cg, v)).collect();
        let sh: Vec<_> = (0..n).map(|v| signature(h, &ch, v)).collect();
        let mut ids = BTreeMap::new();
        for s in sg.iter().chain(sh.iter()) {
            ids.entry(s.clone()).or_insert(0u32);
        }
        for (i, id) in ids.values_mut().enumerate() {
            *id = i as u32;
        }
        cg = sg.iter().map(|s| ids[s]).collect();
        ch = sh.iter().map(|s| ids[s]).collect();
        let mut a = cg.clone();
        let mut b = ch.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
        let now = count_classes(&cg);
        if now == classes {
            return Some((cg, ch));
        }
        classes = now;
    }
}

fn count_classes(c: &[u32]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn search_iso(
    g: &ColoredCompleteGraph,
    h: &ColoredCompleteGraph,
    cg: Vec<u32>,
    ch: Vec<u32>,
) -> Option<Vec<usize>> {
    let n = g.n();
    let mut sizes: HashMap<u32, usize> = HashMap::new();
    for &c in &cg {
        *sizes.entry(c).or_default() += 1;
    }
    // smallest non-singleton cell
    let target = sizes
        .iter()
        .filter(|&(_, &s)| s > 1)
        .min_by_key(|&(&c, &s)| (s, c))
        .map(|(&c, _)| c);
    let Some(cell) = target else {
        let mut f = vec![0; n];
        for u in 0..n {
            f[u] = (0..n).find(|&w| ch[w] == cg[u])?;
        }
        let ok = (0..n).all(|u| (u + 1..n).all(|v| g.color(u, v) == h.color(f[u], f[v])));
        return ok.then_some(f);
    };
    let fresh = cg.iter().max().copied().unwrap_or(0) + 1;
    let u = (0..n).find(|&v| cg[v] == cell).expect("cell is non-empty");
    let mut cg2 = cg.clone();
    cg2[u] = fresh;
    for w in (0..n).filter(|&w| ch[w] == cell) {
        let mut ch2 = ch.clone();
        ch2[w] = fresh;
        if let Some((a, b)) = refine(g, h, cg2.clone(), ch2) {
            if let Some(f) = search_iso(g, h, a, b) {
                return Some(f);
            }
        }
    }
    None
}

/// Cheap isomorphism invariant: `e_1`, and the sorted per-vertex vectors of
/// per-color degrees with the number of color-1 triangles at the vertex.
pub fn invariant_hash(g: &ColoredCompleteGraph) -> (usize, Vec<(Vec<usize>, usize)>) {
    let n = g.n();
    let mut per: Vec<(Vec<usize>, usize)> = (0..n)
        .map(|v| {
            let degs = (1..=g.colors() as Color).map(|t| g.degree(t, v)).collect();
            let nb = g.neighbors(1, v);
            let tri = nb
                .iter()
                .map(|w| nb.intersection_len(g.neighbors(1, w)))
                .sum::<usize>()
                / 2;
            (degs, tri)
        })
        .collect();
    per.sort_unstable();
    (g.edge_count(1), per)
}

/// One representative per isomorphism class, first occurrence kept.
pub fn dedupe_nonisomorphic(graphs: &[ColoredCompleteGraph]) -> Result<Vec<ColoredCompleteGraph>> {
    Ok(dedupe_indices(graphs)?
        .into_iter()
        .map(|i| graphs[i].clone())
        .collect())
}

/// Indices of the first member of each isomorphism class.
pub fn dedupe_indices(graphs: &[ColoredCompleteGraph]) -> Result<Vec<usize>> {
    if let Some(first) = graphs.first() {
        if graphs
            .iter()
            .any(|g| g.n() != first.n() || g.colors() != first.colors())
        {
            return Err(param("dedup needs graphs of one order and color count"));
        }
    }
    let mut buckets: HashMap<_, Vec<usize>> = HashMap::new();
    let mut keep = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        let bucket = buckets.entry(invariant_hash(g)).or_default();
        let mut seen = false;
        for &j in bucket.iter() {
            if are_isomorphic(&graphs[j], g)? {
                seen = true;
                break;
            }
        }
        if !seen {
            bucket.push(i);
            keep.push(i);
        }
    }
    Ok(keep)
}

/// All Ramsey colorings of orders `1..=max_n` up to isomorphism.
#[derive(Clone, Debug)]
pub struct SmallCensus {
    /// `levels[n]` lists one coloring per isomorphism class on `n` vertices.
    pub levels: Vec<Vec<ColoredCompleteGraph>>,
}

impl SmallCensus {
    pub fn total(&self, n: usize) -> usize {
        self.levels.get(n).map_or(0, Vec::len)
    }

    /// Number of classes on `n` vertices with `e` color-1 edges.
    pub fn count(&self, n: usize, e: usize) -> usize {
        self.levels
            .get(n)
            .map_or(0, |l| l.iter().filter(|g| g.edge_count(1) == e).count())
    }

    /// `(n, e, count)` rows with non-zero count, ordered by `n` then `e`.
    pub fn rows(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (n, level) in self.levels.iter().enumerate().skip(1) {
            let mut by_e: BTreeMap<usize, usize> = BTreeMap::new();
            for g in level {
                *by_e.entry(g.edge_count(1)).or_default() += 1;
            }
            out.extend(by_e.into_iter().map(|(e, c)| (n, e, c)));
        }
        out
    }
}

/// Builds the census by adding one vertex in every possible way to each
/// class of the previous order and deduplicating.
pub fn enumerate_all_small(patterns: &[PatternSpec], max_n: usize) -> Result<SmallCensus> {
    if max_n > 8 {
        return Err(param(format!("max_n = {max_n} exceeds 8")));
    }
    let c = patterns.len();
    let mut levels = vec![Vec::new(), vec![ColoredCompleteGraph::new(1, c)?]];
    for n in 2..=max_n {
        let mut found = Vec::new();
        for g in &levels[n - 1] {
            let base = g.with_new_vertex()?;
            let v = n - 1;
            let total = c.pow(v as u32);
            for code in 0..total {
                let mut h = base.clone();
                let mut x = code;
                for u in 0..v {
                    h.set_color(u, v, (x % c + 1) as Color);
                    x /= c;
                }
                if verify_ramsey(&h, patterns)?.is_valid() {
                    found.push(h);
                }
            }
        }
        levels.push(dedupe_nonisomorphic(&found)?);
        if levels[n].is_empty() {
            for _ in n + 1..=max_n {
                levels.push(Vec::new());
            }
            break;
        }
    }
    Ok(SmallCensus { levels })
}
