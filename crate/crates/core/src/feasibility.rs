//! Triangle counting and the deficiency ledger for two-colorings.
//!
//! For a two-colored `K_n` whose color-`i` neighborhoods are themselves
//! Ramsey graphs of smaller parameters, the number of edges inside
//! `N^1(v)` and `N^2(v)` is bounded by tabulated maxima `E_1`, `E_2`.
//! Summing the shortfall ("deficiency") over all vertices and counting
//! monochromatic triangles two ways gives a linear form in the degree
//! histogram whose sign can rule out existence.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;

use crate::error::{param, Error, Result};
use crate::graph::{ColoredCompleteGraph, DegreeHistogram};

pub type Rational = Ratio<i64>;

fn choose2(n: usize) -> i64 {
    (n * n.saturating_sub(1) / 2) as i64
}

fn choose3(n: usize) -> i64 {
    if n < 3 {
        return 0;
    }
    (n * (n - 1) * (n - 2) / 6) as i64
}

/// Maximum color-1 edge counts `E(J_k, J_l; n)` indexed by `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeMaxTable {
    pub k: usize,
    pub l: usize,
    entries: BTreeMap<usize, u64>,
}

impl EdgeMaxTable {
    pub fn new(k: usize, l: usize) -> Self {
        Self {
            k,
            l,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries(k: usize, l: usize, entries: &[(usize, u64)]) -> Result<Self> {
        let mut t = Self::new(k, l);
        for &(n, e) in entries {
            t.insert(n, e)?;
        }
        Ok(t)
    }

    pub fn insert(&mut self, n: usize, e: u64) -> Result<()> {
        if e as i64 > choose2(n) {
            return Err(param(format!("E({n}) = {e} exceeds C({n},2)")));
        }
        self.entries.insert(n, e);
        Ok(())
    }

    pub fn get(&self, n: usize) -> Result<u64> {
        self.entries.get(&n).copied().ok_or_else(|| {
            Error::Range(format!(
                "no entry for n = {n} in E(J{}, J{}) table",
                self.k, self.l
            ))
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.entries.iter().map(|(&n, &e)| (n, e))
    }

    /// Adds `delta` to every entry (clamped to `C(n,2)`).
    pub fn inflated(&self, delta: u64) -> Self {
        let mut t = self.clone();
        for (n, e) in t.entries.iter_mut() {
            *e = (*e + delta).min(choose2(*n) as u64);
        }
        t
    }
}

/// Inputs for a `(J_k, J_l; n)` feasibility argument: `E_1` tabulates
/// `(J_{k-1}, J_l)`-graphs, `E_2` tabulates `(J_k, J_{l-1})`-graphs, and a
/// color-1 (color-2) degree is always below `bound1` (`bound2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityTables {
    pub k: usize,
    pub l: usize,
    pub e1: EdgeMaxTable,
    pub e2: EdgeMaxTable,
    pub bound1: usize,
    pub bound2: usize,
}

impl FeasibilityTables {
    /// Built-in tables; available for `(J5, J6)`.
    pub fn builtin(k: usize, l: usize) -> Option<Self> {
        if (k, l) != (5, 6) {
            return None;
        }
        let e1 = [
            (3, 3),
            (4, 4),
            (5, 6),
            (6, 9),
            (7, 12),
            (8, 16),
            (9, 20),
            (10, 25),
            (11, 27),
            (12, 30),
            (13, 34),
            (14, 39),
            (15, 45),
            (16, 50),
        ];
        let e2 = [(19, 93), (20, 100), (21, 105)];
        Some(Self {
            k,
            l,
            e1: EdgeMaxTable::from_entries(4, 6, &e1).expect("valid table"),
            e2: EdgeMaxTable::from_entries(5, 5, &e2).expect("valid table"),
            bound1: 17,
            bound2: 22,
        })
    }

    /// Admissible color-1 degrees for order `n` (may be empty).
    pub fn degree_window(&self, n: usize) -> std::ops::RangeInclusive<usize> {
        let lo = n.saturating_sub(self.bound2);
        let hi = self.bound1.saturating_sub(1).min(n.saturating_sub(1));
        lo..=hi
    }
}

/// Goodman's count of monochromatic triangles from the color-1 degree
/// histogram: `C(n,3) - 1/2 Σ_j h[j]·j·(n-1-j)`.
pub fn goodman_triangle_count(h: &DegreeHistogram) -> Rational {
    let n = h.n;
    let mut mixed = 0i64;
    for (j, &cnt) in h.counts.iter().enumerate() {
        mixed += cnt as i64 * (j * (n - 1 - j)) as i64;
    }
    Rational::from_integer(choose3(n)) - Rational::new(mixed, 2)
}

/// One third of `Σ_v e_1(N^1(v)) + e_2(N^2(v))`.
pub fn triangle_sum_via_neighborhoods(g: &ColoredCompleteGraph) -> Result<u64> {
    if g.colors() != 2 {
        return Err(param("triangle sum needs a two-coloring"));
    }
    if !g.is_total() {
        return Err(Error::Partial);
    }
    let mut sum = 0u64;
    for v in 0..g.n() {
        for t in 1..=2 {
            sum += g.neighborhood_subgraph(v, t)?.edge_count(t) as u64;
        }
    }
    if !sum.is_multiple_of(3) {
        return Err(Error::Internal(format!(
            "neighborhood edge sum {sum} not divisible by 3"
        )));
    }
    Ok(sum / 3)
}

/// `δ(v) = E_1(deg_1 v) - e_1(N^1 v) + E_2(deg_2 v) - e_2(N^2 v)`.
pub fn vertex_deficiency(
    g: &ColoredCompleteGraph,
    v: usize,
    e1: &EdgeMaxTable,
    e2: &EdgeMaxTable,
) -> Result<i64> {
    if g.colors() != 2 {
        return Err(param("deficiency needs a two-coloring"));
    }
    let n1 = g.neighborhood_subgraph(v, 1)?;
    let n2 = g.neighborhood_subgraph(v, 2)?;
    let a = e1.get(n1.n())? as i64 - n1.edge_count(1) as i64;
    let b = e2.get(n2.n())? as i64 - n2.edge_count(2) as i64;
    Ok(a + b)
}

/// `Σ_v δ(v) = constant + Σ_i n̄_i · coefficient(i)` over the admissible
/// degree window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeficiencyLedger {
    pub n: usize,
    /// `-3·C(n,3)`.
    pub constant: Rational,
    /// `(i, E_1(i) + E_2(n-1-i) + 3·i·(n-1-i)/2)` for each admissible `i`.
    pub coefficients: Vec<(usize, Rational)>,
}

impl DeficiencyLedger {
    pub fn coefficient(&self, i: usize) -> Option<Rational> {
        self.coefficients
            .iter()
            .find(|&&(d, _)| d == i)
            .map(|&(_, c)| c)
    }

    /// Coefficient with the constant spread evenly over the `n` vertices;
    /// the sum is negative for every histogram iff all of these are.
    pub fn normalized(&self, i: usize) -> Option<Rational> {
        self.coefficient(i)
            .map(|c| c + self.constant / self.n as i64)
    }

    /// Largest normalized coefficient and the degrees attaining it.
    pub fn maximum(&self) -> Option<(Rational, Vec<usize>)> {
        let mut best: Option<(Rational, Vec<usize>)> = None;
        for &(d, _) in &self.coefficients {
            let v = self.normalized(d).expect("listed degree");
            match &mut best {
                Some((b, ds)) if v == *b => ds.push(d),
                Some((b, _)) if v < *b => {}
                _ => best = Some((v, vec![d])),
            }
        }
        best
    }

    /// The deficiency sum for a histogram; degrees outside the window are
    /// a range error.
    pub fn evaluate(&self, h: &DegreeHistogram) -> Result<Rational> {
        if h.n != self.n {
            return Err(param(format!(
                "histogram for n = {} on ledger for n = {}",
                h.n, self.n
            )));
        }
        let mut sum = self.constant;
        for (d, &cnt) in h.counts.iter().enumerate() {
            if cnt == 0 {
                continue;
            }
            let c = self
                .coefficient(d)
                .ok_or_else(|| Error::Range(format!("degree {d} outside the admissible window")))?;
            sum += c * cnt as i64;
        }
        Ok(sum)
    }
}

impl fmt::Display for DeficiencyLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(self.constant))?;
        for &(d, c) in &self.coefficients {
            write!(f, " + n{d}*{}", format_rational(c))?;
        }
        Ok(())
    }
}

pub fn deficiency_sum_ledger(n: usize, tables: &FeasibilityTables) -> Result<DeficiencyLedger> {
    if n == 0 {
        return Err(param("n must be positive"));
    }
    let mut coefficients = Vec::new();
    for i in tables.degree_window(n) {
        let j = n - 1 - i;
        let e = tables.e1.get(i)? as i64 + tables.e2.get(j)? as i64;
        coefficients.push((
            i,
            Rational::from_integer(e) + Rational::new(3 * (i * j) as i64, 2),
        ));
    }
    Ok(DeficiencyLedger {
        n,
        constant: Rational::from_integer(-3 * choose3(n)),
        coefficients,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// No admissible color-1 degree exists.
    EmptyWindow,
    /// Every admissible histogram gives a negative deficiency sum.
    NegativeSum { max: Rational },
    /// The sum can only reach zero with every vertex of degree `degree`,
    /// which forces `n·E/3` triangles in `color`, and that is not an integer.
    Divisibility {
        degree: usize,
        color: u8,
        edges: u64,
        triangles: Rational,
    },
    /// Not ruled out.
    Open { max: Rational, argmax: Vec<usize> },
}

impl Verdict {
    pub fn is_infeasible(&self) -> bool {
        !matches!(self, Verdict::Open { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub k: usize,
    pub l: usize,
    pub n: usize,
    pub ledger: DeficiencyLedger,
    /// Degree at which the maximum is exactly zero, if unique.
    pub tight: Option<usize>,
    pub verdict: Verdict,
}

impl fmt::Display for FeasibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (k, l, n) = (self.k, self.l, self.n);
        writeln!(f, "problem (J{k}, J{l}; {n})")?;
        writeln!(f, "constant {}", format_rational(self.ledger.constant))?;
        for &(d, c) in &self.ledger.coefficients {
            writeln!(f, "coefficient {d} {}", format_rational(c))?;
        }
        writeln!(f, "sum {}", self.ledger)?;
        if let Some(d) = self.tight {
            writeln!(f, "TIGHT at degree {d}")?;
        }
        match &self.verdict {
            Verdict::EmptyWindow => writeln!(f, "INFEASIBLE: no admissible degree"),
            Verdict::NegativeSum { max } => writeln!(
                f,
                "INFEASIBLE: negative sum (max per-vertex slack {})",
                format_rational(*max)
            ),
            Verdict::Divisibility {
                color,
                edges,
                triangles,
                ..
            } => writeln!(
                f,
                "INFEASIBLE: divisibility, color {color} forces {n}*{edges}/3 = {triangles} triangles, not an integer"
            ),
            Verdict::Open { max, argmax } => {
                let ds: Vec<String> = argmax.iter().map(|d| d.to_string()).collect();
                writeln!(
                    f,
                    "OPEN: max per-vertex slack {} at degree {}",
                    format_rational(*max),
                    ds.join(",")
                )
            }
        }
    }
}

pub fn feasibility_verdict(n: usize, tables: &FeasibilityTables) -> Result<FeasibilityReport> {
    let ledger = deficiency_sum_ledger(n, tables)?;
    let mut tight = None;
    let verdict = match ledger.maximum() {
        None => Verdict::EmptyWindow,
        Some((max, _)) if max < Rational::from_integer(0) => Verdict::NegativeSum { max },
        Some((max, argmax)) if max == Rational::from_integer(0) && argmax.len() == 1 => {
            let d = argmax[0];
            tight = Some(d);
            let checks = [(1u8, tables.e1.get(d)?), (2u8, tables.e2.get(n - 1 - d)?)];
            match checks
                .iter()
                .find(|&&(_, e)| !(n as u64 * e).is_multiple_of(3))
            {
                Some(&(color, edges)) => Verdict::Divisibility {
                    degree: d,
                    color,
                    edges,
                    triangles: Rational::new((n as u64 * edges) as i64, 3),
                },
                None => Verdict::Open { max, argmax },
            }
        }
        Some((max, argmax)) => Verdict::Open { max, argmax },
    };
    Ok(FeasibilityReport {
        k: tables.k,
        l: tables.l,
        n,
        ledger,
        tight,
        verdict,
    })
}

/// Exact decimal when the denominator has only factors 2 and 5, else `p/q`.
pub fn format_rational(r: Rational) -> String {
    let (p, q) = (*r.numer(), *r.denom());
    if q == 1 {
        return p.to_string();
    }
    let mut rest = q;
    let mut digits = 0u32;
    while rest % 10 == 0 || rest % 2 == 0 || rest % 5 == 0 {
        if rest % 10 == 0 {
            rest /= 10;
        } else if rest % 2 == 0 {
            rest /= 2;
        } else {
            rest /= 5;
        }
        digits += 1;
    }
    if rest != 1 {
        return format!("{p}/{q}");
    }
    // q divides 10^digits
    let scale = 10i64.pow(digits);
    let scaled = p * (scale / q);
    let sign = if scaled < 0 { "-" } else { "" };
    let a = scaled.abs();
    let frac = format!("{:0width$}", a % scale, width = digits as usize);
    format!("{sign}{}.{}", a / scale, frac.trim_end_matches('0'))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn goodman_examples() {
        assert_eq!(
            goodman_triangle_count(&DegreeHistogram::regular(6, 5).unwrap()),
            20.into()
        );
        assert_eq!(
            goodman_triangle_count(&DegreeHistogram::regular(37, 16).unwrap()),
            1850.into()
        );
        assert_eq!(
            goodman_triangle_count(&DegreeHistogram::regular(17, 8).unwrap()),
            136.into()
        );
    }

    #[test]
    fn j5_j6_ledger_at_37() {
        let t = FeasibilityTables::builtin(5, 6).unwrap();
        let l = deficiency_sum_ledger(37, &t).unwrap();
        assert_eq!(l.constant, (-23310).into());
        assert_eq!(l.coefficient(15), Some(Rational::new(1245, 2)));
        assert_eq!(l.coefficient(16), Some(630.into()));
        assert_eq!(l.coefficients.len(), 2);
        assert_eq!(
            l.evaluate(&DegreeHistogram::regular(37, 16).unwrap())
                .unwrap(),
            0.into()
        );
        assert_eq!(
            l.evaluate(&DegreeHistogram::regular(37, 15).unwrap())
                .unwrap(),
            Rational::new(-555, 2)
        );
        assert_eq!(l.to_string(), "-23310 + n15*622.5 + n16*630");
    }

    #[test]
    fn verdicts() {
        let t = FeasibilityTables::builtin(5, 6).unwrap();
        let r = feasibility_verdict(37, &t).unwrap();
        assert_eq!(r.tight, Some(16));
        assert!(matches!(
            r.verdict,
            Verdict::Divisibility {
                degree: 16,
                color: 1,
                edges: 50,
                ..
            }
        ));
        assert!(!feasibility_verdict(36, &t).unwrap().verdict.is_infeasible());

        let mut inflated = t.clone();
        inflated.e1 = t.e1.inflated(10);
        inflated.e2 = t.e2.inflated(10);
        assert!(matches!(
            feasibility_verdict(37, &inflated).unwrap().verdict,
            Verdict::Open { .. }
        ));
    }

    #[test]
    fn missing_entries_are_range_errors() {
        let mut t = FeasibilityTables::builtin(5, 6).unwrap();
        t.e2 = EdgeMaxTable::new(5, 5);
        assert!(matches!(feasibility_verdict(37, &t), Err(Error::Range(_))));
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(format_rational(Rational::new(1245, 2)), "622.5");
        assert_eq!(format_rational(Rational::new(-555, 2)), "-277.5");
        assert_eq!(format_rational(Rational::new(1850, 3)), "1850/3");
        assert_eq!(format_rational(Rational::new(3, 40)), "0.075");
        assert_eq!(format_rational(Rational::from_integer(-7)), "-7");
    }

    #[test]
    fn deficiency_of_c5() {
        let g =
            ColoredCompleteGraph::from_color1_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
                .unwrap();
        let e1 = EdgeMaxTable::from_entries(3, 3, &[(2, 1)]).unwrap();
        let e2 = EdgeMaxTable::from_entries(3, 3, &[(2, 1)]).unwrap();
        // each neighborhood is an edge of the other color
        assert_eq!(vertex_deficiency(&g, 0, &e1, &e2).unwrap(), 2);
        let e0 = EdgeMaxTable::from_entries(3, 3, &[(2, 0)]).unwrap();
        assert_eq!(vertex_deficiency(&g, 0, &e0, &e0).unwrap(), 0);
        assert_eq!(triangle_sum_via_neighborhoods(&g).unwrap(), 0);
    }
}
