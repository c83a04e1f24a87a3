//! One-vertex extension and local search around a known Ramsey coloring.

use crate::error::{param, Error, Result};
use crate::graph::{Color, ColoredCompleteGraph, UNCOLORED};
use crate::pattern::{is_ramsey_graph, through_edge, PatternSpec};

fn check_ramsey(g: &ColoredCompleteGraph, patterns: &[PatternSpec]) -> Result<()> {
    if !is_ramsey_graph(g, patterns)? {
        return Err(Error::Precondition(
            "input is not a Ramsey coloring for these patterns".into(),
        ));
    }
    Ok(())
}

/// Streams every Ramsey coloring on `n + 1` vertices that restricts to `g`
/// on the first `n`. The new vertex's edges are colored in vertex order,
/// each checked for a forbidden copy through it.
pub fn extend_by_one(
    g: &ColoredCompleteGraph,
    patterns: &[PatternSpec],
    sink: &mut dyn FnMut(&ColoredCompleteGraph),
) -> Result<u64> {
    check_ramsey(g, patterns)?;
    let mut h = g.with_new_vertex()?;
    let mut count = 0;
    extend_rec(&mut h, patterns, 0, sink, &mut count);
    Ok(count)
}

fn extend_rec(
    h: &mut ColoredCompleteGraph,
    patterns: &[PatternSpec],
    u: usize,
    sink: &mut dyn FnMut(&ColoredCompleteGraph),
    count: &mut u64,
) {
    let v = h.n() - 1;
    if u == v {
        *count += 1;
        sink(h);
        return;
    }
    for (i, p) in patterns.iter().enumerate() {
        let t = (i + 1) as Color;
        h.set_color(u, v, t);
        if !through_edge(h, t, p, u, v) {
            extend_rec(h, patterns, u + 1, sink, count);
        }
    }
    h.set_color(u, v, UNCOLORED);
}

pub fn extensions(
    g: &ColoredCompleteGraph,
    patterns: &[PatternSpec],
) -> Result<Vec<ColoredCompleteGraph>> {
    let mut out = Vec::new();
    extend_by_one(g, patterns, &mut |h| out.push(h.clone()))?;
    Ok(out)
}

/// Removes every `remove`-subset of vertices in turn, then re-adds `add`
/// vertices in all possible ways. Results identical to `g` are dropped;
/// other duplicates are left to a later dedup pass.
pub fn local_search(
    g: &ColoredCompleteGraph,
    patterns: &[PatternSpec],
    remove: usize,
    add: usize,
    sink: &mut dyn FnMut(&ColoredCompleteGraph),
) -> Result<u64> {
    if !(1..=2).contains(&remove) || add < remove || add > remove + 2 {
        return Err(param(format!(
            "local search needs 1 <= remove <= 2 and remove <= add <= remove + 2, got {remove}, {add}"
        )));
    }
    if remove > g.n() {
        return Err(param(format!(
            "cannot remove {remove} of {} vertices",
            g.n()
        )));
    }
    check_ramsey(g, patterns)?;
    let mut count = 0;
    let mut subset: Vec<usize> = (0..remove).collect();
    loop {
        let mut level = vec![g.without_vertices(&subset)];
        for _ in 0..add {
            let mut next = Vec::new();
            for h in &level {
                extend_by_one(h, patterns, &mut |x| next.push(x.clone()))?;
            }
            level = next;
        }
        for h in &level {
            if h != g {
                count += 1;
                sink(h);
            }
        }
        if !next_combination(&mut subset, g.n()) {
            break;
        }
    }
    Ok(count)
}

/// Advances `s` to the next increasing `s.len()`-subset of `0..n`.
fn next_combination(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::CirculantColoring;
    use crate::verify::are_isomorphic;

    fn c5() -> ColoredCompleteGraph {
        CirculantColoring::from_color1_set(5, &[1, 4])
            .unwrap()
            .realize()
            .unwrap()
    }

    const K3K3: [PatternSpec; 2] = [PatternSpec::Complete(3), PatternSpec::Complete(3)];

    #[test]
    fn c5_does_not_extend() {
        assert!(extensions(&c5(), &K3K3).unwrap().is_empty());
    }

    #[test]
    fn path_extends_to_c5() {
        let g = c5().without_vertices(&[4]);
        let out = extensions(&g, &K3K3).unwrap();
        assert!(!out.is_empty());
        for h in &out {
            assert!(are_isomorphic(h, &c5()).unwrap());
        }
    }

    #[test]
    fn non_ramsey_input_rejected() {
        let k4 = ColoredCompleteGraph::monochromatic(4, 2, 1).unwrap();
        assert!(matches!(
            extensions(&k4, &K3K3),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn local_search_on_c5() {
        let mut out = Vec::new();
        local_search(&c5(), &K3K3, 1, 1, &mut |h| out.push(h.clone())).unwrap();
        assert!(!out.is_empty());
        for h in &out {
            assert!(are_isomorphic(h, &c5()).unwrap());
            assert_ne!(h, &c5());
        }
        assert_eq!(local_search(&c5(), &K3K3, 1, 2, &mut |_| {}).unwrap(), 0);
        assert!(local_search(&c5(), &K3K3, 1, 4, &mut |_| {}).is_err());
        assert!(local_search(&c5(), &K3K3, 3, 3, &mut |_| {}).is_err());
    }

    #[test]
    fn combinations() {
        let mut s = vec![0, 1];
        let mut seen = 1;
        while next_combination(&mut s, 5) {
            seen += 1;
        }
        assert_eq!(seen, 10);
        assert_eq!(s, vec![3, 4]);
    }
}
