//! Circulant colorings of `K_n`, stored per difference class.

use std::cmp::Ordering;

use crate::error::{param, Result};
use crate::graph::{Color, ColoredCompleteGraph, MAX_COLORS, UNCOLORED};

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The multiplicative units of `Z_m`, ascending.
pub fn units(m: usize) -> Vec<usize> {
    if m == 1 {
        return vec![0];
    }
    (1..m).filter(|&q| gcd(q, m) == 1).collect()
}

/// Inverse of the unit `q` modulo `m`.
pub fn unit_inverse(q: usize, m: usize) -> usize {
    (1..m).find(|&x| x * q % m == 1).unwrap_or(0)
}

/// Difference class of `x` modulo `n`: the representative in `1..=n/2`
/// (0 for `x ≡ 0`).
#[inline]
pub fn class_of(x: usize, n: usize) -> usize {
    let x = x % n;
    x.min(n - x)
}

/// Color assignment to the difference classes `1..=n/2` of `Z_n`.
///
/// Class `d` stands for the symmetric pair `{d, n-d}`, so closure under
/// negation holds by construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CirculantColoring {
    n: usize,
    c: usize,
    assign: Vec<Color>,
}

impl CirculantColoring {
    pub fn new(n: usize, c: usize) -> Result<Self> {
        if n < 3 {
            return Err(param(format!("circulant order {n} < 3")));
        }
        if !(2..=MAX_COLORS).contains(&c) {
            return Err(param(format!("color count {c} outside 2..={MAX_COLORS}")));
        }
        Ok(Self {
            n,
            c,
            assign: vec![UNCOLORED; n / 2],
        })
    }

    /// Builds a coloring from `(color, class representatives)` lists.
    /// Representatives may be given as `d` or `n - d`.
    pub fn from_classes(n: usize, c: usize, lists: &[(Color, Vec<usize>)]) -> Result<Self> {
        let mut col = Self::new(n, c)?;
        for (t, ds) in lists {
            if *t == UNCOLORED || *t as usize > c {
                return Err(param(format!("color {t} outside 1..={c}")));
            }
            for &d in ds {
                let cls = class_of(d, n);
                if cls == 0 {
                    return Err(param(format!("difference {d} is 0 mod {n}")));
                }
                let old = col.get(cls);
                if old != UNCOLORED && old != *t {
                    return Err(param(format!("class {cls} assigned colors {old} and {t}")));
                }
                col.set(cls, *t);
            }
        }
        Ok(col)
    }

    /// Two-coloring whose color-1 generating set is `d1` (closed under
    /// negation); all other classes get color 2.
    pub fn from_color1_set(n: usize, d1: &[usize]) -> Result<Self> {
        let mut col = Self::from_classes(n, 2, &[(1, d1.to_vec())])?;
        for d in 1..=n / 2 {
            if col.get(d) == UNCOLORED {
                col.set(d, 2);
            }
        }
        Ok(col)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn colors(&self) -> usize {
        self.c
    }

    /// Number of difference classes, `⌊n/2⌋`.
    #[inline]
    pub fn class_count(&self) -> usize {
        self.assign.len()
    }

    /// Color of class `d` (`1 <= d <= n/2`).
    #[inline]
    pub fn get(&self, d: usize) -> Color {
        self.assign[d - 1]
    }

    #[inline]
    pub fn set(&mut self, d: usize, t: Color) {
        self.assign[d - 1] = t;
    }

    /// Colors of classes `1..=n/2` in order.
    pub fn assignment(&self) -> &[Color] {
        &self.assign
    }

    pub fn is_total(&self) -> bool {
        self.assign.iter().all(|&t| t != UNCOLORED)
    }

    /// The full generating set of color `t`, sorted, both `d` and `n-d`.
    pub fn color_set(&self, t: Color) -> Vec<usize> {
        (1..self.n)
            .filter(|&x| self.get(class_of(x, self.n)) == t)
            .collect()
    }

    /// Class representatives with color `t`, ascending.
    pub fn class_reps(&self, t: Color) -> Vec<usize> {
        (1..=self.class_count())
            .filter(|&d| self.get(d) == t)
            .collect()
    }

    pub fn realize(&self) -> Result<ColoredCompleteGraph> {
        let mut g = ColoredCompleteGraph::new(self.n, self.c)?;
        for u in 0..self.n {
            for v in u + 1..self.n {
                let t = self.get(class_of(v - u, self.n));
                if t != UNCOLORED {
                    g.set_color(u, v, t);
                }
            }
        }
        Ok(g)
    }

    /// The coloring in which difference `q·d` carries the color of `d`.
    pub fn multiply(&self, q: usize) -> Result<Self> {
        if gcd(q % self.n, self.n) != 1 {
            return Err(param(format!("{q} is not a unit modulo {}", self.n)));
        }
        let mut out = self.clone();
        for d in 1..=self.class_count() {
            out.set(class_of(q * d, self.n), self.get(d));
        }
        Ok(out)
    }

    /// Minimum over all unit multiples, comparing class color vectors
    /// lexicographically (color 1 < color 2 < …).
    pub fn unit_canonical_form(&self) -> Self {
        units(self.n)
            .into_iter()
            .map(|q| self.multiply(q).expect("unit"))
            .min_by(|a, b| a.assign.cmp(&b.assign))
            .expect("at least the identity")
    }

    pub fn is_unit_canonical(&self) -> bool {
        self.unit_canonical_form().assign == self.assign
    }
}

impl PartialOrd for CirculantColoring {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CirculantColoring {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.c, &self.assign).cmp(&(other.n, other.c, &other.assign))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c5_realization() {
        let col = CirculantColoring::from_classes(5, 2, &[(1, vec![1]), (2, vec![2])]).unwrap();
        let g = col.realize().unwrap();
        for v in 0..5 {
            assert_eq!(g.degree(1, v), 2);
            assert_eq!(g.color(v, (v + 1) % 5), 1);
        }
    }

    #[test]
    fn paley13_realization() {
        let col = CirculantColoring::from_classes(13, 2, &[(1, vec![1, 5]), (2, vec![2, 3, 4, 6])])
            .unwrap();
        assert_eq!(col.color_set(1), vec![1, 5, 8, 12]);
    }

    #[test]
    fn half_class_is_a_matching() {
        let mut col = CirculantColoring::new(4, 2).unwrap();
        col.set(2, 1);
        let g = col.realize().unwrap();
        assert_eq!(g.edge_count(1), 2);
        assert_eq!(g.color(0, 2), 1);
        assert_eq!(g.color(1, 3), 1);
        assert_eq!(g.color(0, 1), UNCOLORED);
    }

    #[test]
    fn small_order_rejected() {
        assert!(CirculantColoring::new(2, 2).is_err());
    }

    #[test]
    fn canonical_forms() {
        let col = CirculantColoring::from_color1_set(13, &[2, 3, 10, 11]).unwrap();
        assert_eq!(col.unit_canonical_form().color_set(1), vec![1, 5, 8, 12]);

        let c5 = CirculantColoring::from_color1_set(5, &[1, 4]).unwrap();
        assert_eq!(c5.unit_canonical_form(), c5);
        let paley = CirculantColoring::from_color1_set(13, &[1, 5, 8, 12]).unwrap();
        assert_eq!(paley.unit_canonical_form(), paley);
    }

    #[test]
    fn non_unit_rejected() {
        let col = CirculantColoring::from_color1_set(12, &[1, 11]).unwrap();
        assert!(col.multiply(4).is_err());
        assert!(col.multiply(5).is_ok());
    }
}
