//! Backtracking enumeration of circulant and block-circulant Ramsey colorings.
//!
//! Slots (one per difference of each upper block) are decided in fill order,
//! colors in increasing index. Every assignment colors a whole orbit of
//! edges under the simultaneous rotation of all blocks, so a forbidden copy
//! created by it must pass through the orbit's representative edge
//! `(i·m, j·m + d)`; only that edge is checked. Partial colorings that can no
//! longer extend to their own canonical form are cut, and a total coloring is
//! emitted only if it is canonical.

use std::fmt;

use crate::block::{BlockCirculantColoring, Slot};
use crate::circulant::CirculantColoring;
use crate::error::{param, Result};
use crate::graph::{Color, ColoredCompleteGraph, MAX_COLORS, UNCOLORED};
use crate::pattern::{through_edge, PatternSpec};

/// Depth of the decision prefixes that are dealt out to split parts.
pub const SPLIT_DEPTH: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchJob {
    pub n: usize,
    /// Number of blocks; 1 means circulant.
    pub k: usize,
    pub patterns: Vec<PatternSpec>,
    pub split_modulus: u64,
    pub split_residue: u64,
    /// Cut non-canonical prefixes and emit canonical colorings only.
    pub canonical_filter: bool,
}

impl SearchJob {
    pub fn new(n: usize, k: usize, patterns: Vec<PatternSpec>) -> Result<Self> {
        let job = Self {
            n,
            k,
            patterns,
            split_modulus: 1,
            split_residue: 0,
            canonical_filter: true,
        };
        job.validate()?;
        Ok(job)
    }

    pub fn circulant(n: usize, patterns: Vec<PatternSpec>) -> Result<Self> {
        Self::new(n, 1, patterns)
    }

    /// Restricts the job to part `residue` of `modulus`.
    pub fn with_split(mut self, modulus: u64, residue: u64) -> Result<Self> {
        self.split_modulus = modulus;
        self.split_residue = residue;
        self.validate()?;
        Ok(self)
    }

    pub fn without_canonical_filter(mut self) -> Self {
        self.canonical_filter = false;
        self
    }

    pub fn colors(&self) -> usize {
        self.patterns.len()
    }

    fn validate(&self) -> Result<()> {
        let c = self.patterns.len();
        if !(2..=MAX_COLORS).contains(&c) {
            return Err(param(format!("{c} patterns given; need 2..={MAX_COLORS}")));
        }
        if self.n < 3 {
            return Err(param(format!("n = {} < 3", self.n)));
        }
        if self.k == 0 || !self.n.is_multiple_of(self.k) {
            return Err(param(format!(
                "{} blocks do not divide n = {}",
                self.k, self.n
            )));
        }
        if self.split_modulus == 0 || self.split_residue >= self.split_modulus {
            return Err(param(format!(
                "split part {} of {} is out of range",
                self.split_residue, self.split_modulus
            )));
        }
        for p in &self.patterns {
            p.validated()?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Slot assignments tried.
    pub nodes: u64,
    pub pattern_cuts: u64,
    pub canonical_cuts: u64,
    /// Total colorings reached (before the leaf canonicity test).
    pub leaves: u64,
    pub emitted: u64,
    /// Split frontier prefixes seen, and those owned by this part.
    pub frontier: u64,
    pub frontier_owned: u64,
}

impl fmt::Display for SearchStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "nodes={} pattern_cuts={} canonical_cuts={} leaves={} emitted={} frontier={}/{}",
            self.nodes,
            self.pattern_cuts,
            self.canonical_cuts,
            self.leaves,
            self.emitted,
            self.frontier_owned,
            self.frontier
        )
    }
}

struct Engine<'a> {
    job: &'a SearchJob,
    b: BlockCirculantColoring,
    g: ColoredCompleteGraph,
    slots: Vec<Slot>,
    split_depth: usize,
    stats: SearchStats,
    sink: &'a mut dyn FnMut(&BlockCirculantColoring),
}

impl Engine<'_> {
    fn paint(&mut self, s: Slot, t: Color) {
        let m = self.b.m();
        let (ui, vj) = (s.i * m, s.j * m);
        for a in 0..m {
            let b = (a + s.d) % m;
            self.g.set_color(ui + a, vj + b, t);
        }
        self.b.set(s.i, s.j, s.d, t);
    }

    fn prefix_ok(&self, s: Slot) -> bool {
        if s.i == s.j {
            (s.j == 0 || self.b.diag_order_ok(s.j))
                && self.b.diag_min_ok(s.j)
                && (s.d != self.b.m() / 2 || self.b.diag_units_ok(s.j))
        } else {
            self.b.column_ok(s.j)
        }
    }

    fn dfs(&mut self, pos: usize) {
        if pos == self.split_depth {
            let idx = self.stats.frontier;
            self.stats.frontier += 1;
            if idx % self.job.split_modulus != self.job.split_residue {
                return;
            }
            self.stats.frontier_owned += 1;
        }
        if pos == self.slots.len() {
            self.stats.leaves += 1;
            if self.job.canonical_filter && !self.b.is_canonical() {
                self.stats.canonical_cuts += 1;
                return;
            }
            self.stats.emitted += 1;
            (self.sink)(&self.b);
            return;
        }
        let s = self.slots[pos];
        let m = self.b.m();
        for t in 1..=self.job.colors() as Color {
            self.stats.nodes += 1;
            self.paint(s, t);
            let p = &self.job.patterns[t as usize - 1];
            if through_edge(&self.g, t, p, s.i * m, s.j * m + s.d) {
                self.stats.pattern_cuts += 1;
            } else if self.job.canonical_filter && !self.prefix_ok(s) {
                self.stats.canonical_cuts += 1;
            } else {
                self.dfs(pos + 1);
            }
            self.paint(s, UNCOLORED);
        }
    }
}

/// Streams every block-circulant Ramsey coloring of the job (canonical
/// representatives only, unless the filter is off) to `sink`.
pub fn enumerate_block_circulant(
    job: &SearchJob,
    sink: &mut dyn FnMut(&BlockCirculantColoring),
) -> Result<SearchStats> {
    job.validate()?;
    let b = BlockCirculantColoring::new(job.n, job.k, job.colors())?;
    let slots = b.slots();
    let mut engine = Engine {
        job,
        g: ColoredCompleteGraph::new(job.n, job.colors())?,
        split_depth: SPLIT_DEPTH.min(slots.len()),
        slots,
        b,
        stats: SearchStats::default(),
        sink,
    };
    engine.dfs(0);
    Ok(engine.stats)
}

/// Circulant enumeration: unit-canonical colorings of the difference classes.
pub fn enumerate_circulant(
    job: &SearchJob,
    sink: &mut dyn FnMut(&CirculantColoring),
) -> Result<SearchStats> {
    if job.k != 1 {
        return Err(param(format!(
            "circulant search needs k = 1, got {}",
            job.k
        )));
    }
    let mut convert = |b: &BlockCirculantColoring| {
        let mut c = CirculantColoring::new(b.n(), b.colors()).expect("valid order");
        for d in 1..=c.class_count() {
            c.set(d, b.get(0, 0, d));
        }
        sink(&c);
    };
    enumerate_block_circulant(job, &mut convert)
}

pub fn collect_circulant(job: &SearchJob) -> Result<Vec<CirculantColoring>> {
    let mut out = Vec::new();
    enumerate_circulant(job, &mut |c| out.push(c.clone()))?;
    Ok(out)
}

pub fn collect_block_circulant(job: &SearchJob) -> Result<Vec<BlockCirculantColoring>> {
    let mut out = Vec::new();
    enumerate_block_circulant(job, &mut |b| out.push(b.clone()))?;
    Ok(out)
}
