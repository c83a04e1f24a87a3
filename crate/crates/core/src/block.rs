//! Block-circulant colorings: a `k × k` grid of `m × m` circulant blocks.
//!
//! Only the upper-triangle blocks `(i, j)`, `i <= j`, are stored, each as a
//! color per difference `0..m`. The lower blocks are implied by
//! `C_{j,i} = C_{i,j}^T`, i.e. `D_{j,i} = -D_{i,j}`. Diagonal blocks are
//! symmetric and never use difference 0.
//!
//! Blocks and whole colorings are ordered by comparing per-difference color
//! vectors lexicographically (color 1 < color 2 < …). The search fills slots
//! column by column: in column `j` the diagonal block first, then
//! `(0, j), (1, j), …, (j-1, j)`, each by increasing difference. The same
//! sequence is the comparison key of a whole coloring.

use std::cmp::Ordering;

use crate::circulant::{class_of, gcd, units, CirculantColoring};
use crate::error::{param, Error, Result};
use crate::graph::{Color, ColoredCompleteGraph, MAX_COLORS, UNCOLORED};

/// One free parameter: the color of difference `d` in block `(i, j)`.
/// For diagonal blocks `d` ranges over `1..=m/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slot {
    pub i: usize,
    pub j: usize,
    pub d: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockCirculantColoring {
    n: usize,
    k: usize,
    m: usize,
    c: usize,
    blocks: Vec<Vec<Color>>,
}

#[inline]
fn pair_index(i: usize, j: usize, k: usize) -> usize {
    debug_assert!(i <= j && j < k);
    // rows of the upper triangle have lengths k, k-1, ...
    i * k - i * i.saturating_sub(1) / 2 + j - i
}

impl BlockCirculantColoring {
    pub fn new(n: usize, k: usize, c: usize) -> Result<Self> {
        if k == 0 || n == 0 || !n.is_multiple_of(k) {
            return Err(param(format!("{k} blocks do not divide n = {n}")));
        }
        if !(2..=MAX_COLORS).contains(&c) {
            return Err(param(format!("color count {c} outside 2..={MAX_COLORS}")));
        }
        let m = n / k;
        Ok(Self {
            n,
            k,
            m,
            c,
            blocks: vec![vec![UNCOLORED; m]; k * (k + 1) / 2],
        })
    }

    /// A total two-coloring from color-1 generating sets `D_{i,j}` (0-based
    /// block indices, `i <= j`); every other difference gets color 2.
    pub fn from_color1_sets(
        n: usize,
        k: usize,
        sets: &[((usize, usize), Vec<usize>)],
    ) -> Result<Self> {
        let mut b = Self::new(n, k, 2)?;
        for ((i, j), ds) in sets {
            for &d in ds {
                b.try_set(*i, *j, d, 1)?;
            }
        }
        b.fill_uncolored(2);
        Ok(b)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }
    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }
    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }
    #[inline]
    pub fn colors(&self) -> usize {
        self.c
    }

    /// Color of difference `x` in block `(i, j)`; lower blocks resolve
    /// through the transpose.
    #[inline]
    pub fn get(&self, i: usize, j: usize, x: usize) -> Color {
        let x = x % self.m;
        if i <= j {
            self.blocks[pair_index(i, j, self.k)][x]
        } else {
            self.blocks[pair_index(j, i, self.k)][(self.m - x) % self.m]
        }
    }

    /// Sets difference `x` of block `(i, j)`; on the diagonal `m - x` is set too.
    ///
    /// Panics on a diagonal difference `0` or out-of-range indices.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: usize, t: Color) {
        assert!(i < self.k && j < self.k && (t as usize) <= self.c);
        let m = self.m;
        let x = x % m;
        if i == j {
            assert!(x != 0, "difference 0 on a diagonal block");
            let b = &mut self.blocks[pair_index(i, i, self.k)];
            b[x] = t;
            b[m - x] = t;
        } else if i < j {
            self.blocks[pair_index(i, j, self.k)][x] = t;
        } else {
            self.blocks[pair_index(j, i, self.k)][(m - x) % m] = t;
        }
    }

    /// Like [`set`](Self::set) but refuses to overwrite a different color.
    pub fn try_set(&mut self, i: usize, j: usize, x: usize, t: Color) -> Result<()> {
        if i >= self.k || j >= self.k {
            return Err(param(format!(
                "block ({}, {}) outside 1..={}",
                i + 1,
                j + 1,
                self.k
            )));
        }
        if t == UNCOLORED || t as usize > self.c {
            return Err(param(format!("color {t} outside 1..={}", self.c)));
        }
        if x >= self.m {
            return Err(param(format!("difference {x} outside 0..{}", self.m)));
        }
        if i == j && x == 0 {
            return Err(param(format!(
                "difference 0 in diagonal block ({}, {})",
                i + 1,
                i + 1
            )));
        }
        let old = self.get(i, j, x);
        if old != UNCOLORED && old != t {
            return Err(param(format!(
                "difference {x} of block ({}, {}) assigned colors {old} and {t}",
                i + 1,
                j + 1
            )));
        }
        self.set(i, j, x, t);
        Ok(())
    }

    pub fn fill_uncolored(&mut self, t: Color) {
        for s in self.slots() {
            if self.get(s.i, s.j, s.d) == UNCOLORED {
                self.set(s.i, s.j, s.d, t);
            }
        }
    }

    /// Sorted generating set `D_{i,j}^t`.
    pub fn generating_set(&self, i: usize, j: usize, t: Color) -> Vec<usize> {
        (0..self.m)
            .filter(|&x| !(i == j && x == 0) && self.get(i, j, x) == t)
            .collect()
    }

    /// All free parameters in fill order.
    pub fn slots(&self) -> Vec<Slot> {
        let mut out = Vec::new();
        for j in 0..self.k {
            for d in 1..=self.m / 2 {
                out.push(Slot { i: j, j, d });
            }
            for i in 0..j {
                for d in 0..self.m {
                    out.push(Slot { i, j, d });
                }
            }
        }
        out
    }

    /// Slot colors in fill order; the total order on colorings compares these.
    pub fn fill_key(&self) -> Vec<Color> {
        self.slots()
            .iter()
            .map(|s| self.get(s.i, s.j, s.d))
            .collect()
    }

    pub fn is_total(&self) -> bool {
        self.slots()
            .iter()
            .all(|s| self.get(s.i, s.j, s.d) != UNCOLORED)
    }

    /// Colors of the diagonal block `i` at differences `1..=m/2`.
    pub fn diag_vector(&self, i: usize) -> Vec<Color> {
        (1..=self.m / 2).map(|d| self.get(i, i, d)).collect()
    }

    pub fn realize(&self) -> Result<ColoredCompleteGraph> {
        let mut g = ColoredCompleteGraph::new(self.n, self.c)?;
        let m = self.m;
        for i in 0..self.k {
            for j in i..self.k {
                for a in 0..m {
                    for b in 0..m {
                        let (u, v) = (i * m + a, j * m + b);
                        if u >= v {
                            continue;
                        }
                        let t = self.get(i, j, (b + m - a) % m);
                        if t != UNCOLORED {
                            g.set_color(u, v, t);
                        }
                    }
                }
            }
        }
        Ok(g)
    }

    /// Blocks reindexed: new block `(i, j)` is old block `(perm[i], perm[j])`.
    pub fn permute_blocks(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.k];
        if perm.len() != self.k {
            return Err(param(format!(
                "permutation of length {} for {} blocks",
                perm.len(),
                self.k
            )));
        }
        for &p in perm {
            if p >= self.k || seen[p] {
                return Err(param("block map is not a bijection"));
            }
            seen[p] = true;
        }
        let mut out = self.clone();
        for i in 0..self.k {
            for j in i..self.k {
                let blk = &mut out.blocks[pair_index(i, j, self.k)];
                for (x, slot) in blk.iter_mut().enumerate() {
                    *slot = self.get(perm[i], perm[j], x);
                }
            }
        }
        Ok(out)
    }

    /// Rotates column `j` by `r[j]` for every `j`:
    /// `D_{i,j} ↦ D_{i,j} + r[j] - r[i]`.
    pub fn rotate_columns(&self, r: &[usize]) -> Self {
        assert_eq!(r.len(), self.k);
        let m = self.m;
        let mut out = self.clone();
        for i in 0..self.k {
            for j in i + 1..self.k {
                let shift = (r[j] % m + m - r[i] % m) % m;
                let blk = &mut out.blocks[pair_index(i, j, self.k)];
                for (x, slot) in blk.iter_mut().enumerate() {
                    *slot = self.get(i, j, (x + m - shift) % m);
                }
            }
        }
        out
    }

    /// Rotates every `C_{i,d}` right and every `C_{d,i}` left by `r`.
    pub fn rotate_column(&self, d: usize, r: usize) -> Result<Self> {
        if d >= self.k {
            return Err(param(format!(
                "block index {} outside 1..={}",
                d + 1,
                self.k
            )));
        }
        let mut rs = vec![0; self.k];
        rs[d] = r;
        Ok(self.rotate_columns(&rs))
    }

    /// `D ↦ q·D` on every block; `q` must be a unit modulo `m`.
    pub fn multiply(&self, q: usize) -> Result<Self> {
        if gcd(q % self.m, self.m) != 1 && self.m > 1 {
            return Err(param(format!("{q} is not a unit modulo {}", self.m)));
        }
        let m = self.m;
        let mut out = self.clone();
        for (dst, src) in out.blocks.iter_mut().zip(self.blocks.iter()) {
            for (x, &t) in src.iter().enumerate() {
                dst[q * x % m] = t;
            }
        }
        Ok(out)
    }

    /// Canonical representative under block permutations, column rotations
    /// and unit multiplications.
    ///
    /// Candidates are the colorings reachable by: a unit `q` minimizing the
    /// sorted multiset of diagonal blocks; a permutation sorting the
    /// diagonal; per-column rotations making `(C_{1,d}, C_{2,d}, …)` minimal
    /// column by column. Every tie is expanded and the least candidate in
    /// fill-key order is returned. Since `-1` fixes every diagonal block, it
    /// is always among the tied units, which settles the sign choice.
    pub fn canonicalize(&self) -> Result<Self> {
        if !self.is_total() {
            return Err(Error::Partial);
        }
        let mut best_diag: Option<Vec<Vec<Color>>> = None;
        let mut tied = Vec::new();
        for q in units(self.m) {
            let mult = self.multiply(q)?;
            let mut diag: Vec<Vec<Color>> = (0..self.k).map(|i| mult.diag_vector(i)).collect();
            diag.sort();
            match best_diag.as_ref().map(|b| diag.cmp(b)) {
                Some(Ordering::Greater) => {}
                Some(Ordering::Equal) => tied.push(mult),
                _ => {
                    best_diag = Some(diag);
                    tied.clear();
                    tied.push(mult);
                }
            }
        }
        let mut best: Option<(Vec<Color>, Self)> = None;
        for mult in &tied {
            for perm in sorting_permutations(mult) {
                let sorted = mult.permute_blocks(&perm)?;
                let mut r = vec![0; self.k];
                sorted.rotation_candidates(1, &mut r, &mut |cand| {
                    let key = cand.fill_key();
                    if best.as_ref().is_none_or(|(bk, _)| key < *bk) {
                        best = Some((key, cand));
                    }
                });
            }
        }
        Ok(best.expect("identity is always a candidate").1)
    }

    pub fn is_canonical(&self) -> bool {
        self.canonicalize().is_ok_and(|c| c == *self)
    }

    /// Expands all column rotations that minimize each column's upper
    /// blocks, given the rotations already fixed for earlier columns.
    fn rotation_candidates(&self, d: usize, r: &mut Vec<usize>, out: &mut dyn FnMut(Self)) {
        if d >= self.k {
            out(self.rotate_columns(r));
            return;
        }
        let m = self.m;
        // rotating column d by rd turns D_{0,d} into D_{0,d} + rd
        let first: Vec<Color> = (0..m).map(|x| self.get(0, d, x)).collect();
        let s = lyndon_rotation(&first);
        let p = period(&first);
        let base = (m - s) % m;
        let column_key = |rd: usize| -> Vec<Color> {
            let mut key = Vec::with_capacity(d * m);
            for (i, &ri) in r.iter().enumerate().take(d) {
                let shift = (rd + m - ri) % m;
                key.extend((0..m).map(|x| self.get(i, d, (x + m - shift) % m)));
            }
            key
        };
        let mut best: Option<Vec<Color>> = None;
        let mut ties = Vec::new();
        for step in 0..m / p {
            let rd = (base + step * p) % m;
            let key = column_key(rd);
            match best.as_ref().map(|b| key.cmp(b)) {
                Some(Ordering::Greater) => {}
                Some(Ordering::Equal) => ties.push(rd),
                _ => {
                    best = Some(key);
                    ties.clear();
                    ties.push(rd);
                }
            }
        }
        for rd in ties {
            r[d] = rd;
            self.rotation_candidates(d + 1, r, out);
        }
        r[d] = 0;
    }

    /// Number of leading slots (in fill order) that are colored.
    pub fn frontier(&self) -> usize {
        self.slots()
            .iter()
            .take_while(|s| self.get(s.i, s.j, s.d) != UNCOLORED)
            .count()
    }

    /// Can this partially filled coloring (filled in fill order) still be
    /// extended to a canonical one? Only decided comparisons reject.
    pub fn is_canonical_prefix(&self) -> bool {
        let m2 = self.m / 2;
        let mut complete_diag = None;
        for j in 0..self.k {
            let filled = (1..=m2).filter(|&d| self.get(j, j, d) != UNCOLORED).count();
            if filled == 0 && m2 > 0 {
                break;
            }
            if j > 0 && !self.diag_order_ok(j) {
                return false;
            }
            if !self.diag_min_ok(j) {
                return false;
            }
            if filled == m2 {
                complete_diag = Some(j);
            } else {
                break;
            }
        }
        if let Some(j) = complete_diag {
            if !self.diag_units_ok(j) {
                return false;
            }
        }
        (1..self.k).all(|d| self.column_ok(d))
    }

    /// Diagonal block `j` must not already compare below block `j - 1`.
    pub(crate) fn diag_order_ok(&self, j: usize) -> bool {
        let prev = self.diag_vector(j - 1);
        let cur = self.diag_vector(j);
        partial_cmp_known(&cur, &prev) != Some(Ordering::Less)
    }

    /// No unit multiple of diagonal block `j` may already compare below
    /// block 0, which is the least diagonal block over all units.
    pub(crate) fn diag_min_ok(&self, j: usize) -> bool {
        if self.m < 2 {
            return true;
        }
        let base = self.diag_vector(0);
        let cur = self.diag_vector(j);
        for q in units(self.m) {
            if q == 1 && j == 0 {
                continue;
            }
            let mut mult = vec![UNCOLORED; cur.len()];
            for (x, &t) in cur.iter().enumerate() {
                mult[class_of(q * (x + 1), self.m) - 1] = t;
            }
            if partial_cmp_known(&mult, &base) == Some(Ordering::Less) {
                return false;
            }
        }
        true
    }

    /// The complete diagonal prefix `0..=upto` must not be beaten by the
    /// sorted unit multiple of itself.
    pub(crate) fn diag_units_ok(&self, upto: usize) -> bool {
        let prefix: Vec<Vec<Color>> = (0..=upto).map(|i| self.diag_vector(i)).collect();
        for q in units(self.m).into_iter().skip(1) {
            let mut multiplied: Vec<Vec<Color>> = prefix
                .iter()
                .map(|v| {
                    let mut out = vec![UNCOLORED; v.len()];
                    for (x, &t) in v.iter().enumerate() {
                        out[class_of(q * (x + 1), self.m) - 1] = t;
                    }
                    out
                })
                .collect();
            multiplied.sort();
            if multiplied < prefix {
                return false;
            }
        }
        true
    }

    /// The filled part of column `d`'s upper blocks must not be beaten by a
    /// rotation of that column.
    pub(crate) fn column_ok(&self, d: usize) -> bool {
        let m = self.m;
        let mut key = Vec::with_capacity(d * m);
        for i in 0..d {
            key.extend((0..m).map(|x| self.get(i, d, x)));
        }
        let known = key.iter().take_while(|&&t| t != UNCOLORED).count();
        if known == 0 {
            return true;
        }
        for r in 1..m {
            for (p, &a) in key.iter().enumerate() {
                let (i, x) = (p / m, p % m);
                let src = i * m + (x + m - r) % m;
                if p >= known || src >= known {
                    break;
                }
                let b = key[src];
                match b.cmp(&a) {
                    Ordering::Less => return false,
                    Ordering::Greater => break,
                    Ordering::Equal => {}
                }
            }
        }
        true
    }
}

impl From<&CirculantColoring> for BlockCirculantColoring {
    fn from(c: &CirculantColoring) -> Self {
        let mut b = Self::new(c.n(), 1, c.colors()).expect("valid circulant");
        for d in 1..=c.class_count() {
            if c.get(d) != UNCOLORED {
                b.set(0, 0, d, c.get(d));
            }
        }
        b
    }
}

impl PartialOrd for BlockCirculantColoring {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BlockCirculantColoring {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.k, self.c)
            .cmp(&(other.n, other.k, other.c))
            .then_with(|| self.fill_key().cmp(&other.fill_key()))
    }
}

/// Compares two color sequences up to the first uncolored entry of either.
/// `None` means the comparison is not yet decided.
fn partial_cmp_known(a: &[Color], b: &[Color]) -> Option<Ordering> {
    for (&x, &y) in a.iter().zip(b.iter()) {
        if x == UNCOLORED || y == UNCOLORED {
            return None;
        }
        match x.cmp(&y) {
            Ordering::Equal => {}
            o => return Some(o),
        }
    }
    Some(a.len().cmp(&b.len()))
}

/// All permutations listing blocks in non-decreasing diagonal order; blocks
/// with equal diagonals are permuted among themselves in every way.
fn sorting_permutations(b: &BlockCirculantColoring) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..b.k).collect();
    let diags: Vec<Vec<Color>> = (0..b.k).map(|i| b.diag_vector(i)).collect();
    order.sort_by(|&x, &y| diags[x].cmp(&diags[y]));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match groups.last_mut() {
            Some(g) if diags[g[0]] == diags[i] => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    let mut out = vec![Vec::new()];
    for g in groups {
        let perms = permutations(&g);
        out = out
            .into_iter()
            .flat_map(|prefix| {
                perms.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.extend_from_slice(p);
                    v
                })
            })
            .collect();
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Smallest `r` such that `word[r..] ++ word[..r]` is the least rotation.
pub fn lyndon_rotation<T: Ord>(word: &[T]) -> usize {
    let n = word.len();
    if n == 0 {
        return 0;
    }
    // two-candidate scan for the least rotation
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = &word[(i + k) % n];
        let b = &word[(j + k) % n];
        match a.cmp(b) {
            Ordering::Equal => k += 1,
            Ordering::Greater => {
                i += k + 1;
                if i <= j {
                    i = j + 1;
                }
                k = 0;
            }
            Ordering::Less => {
                j += k + 1;
                if j <= i {
                    j = i + 1;
                }
                k = 0;
            }
        }
    }
    i.min(j)
}

/// Smallest `p > 0` with `word` invariant under rotation by `p`.
fn period<T: PartialEq>(word: &[T]) -> usize {
    let n = word.len();
    (1..=n)
        .filter(|p| n.is_multiple_of(*p))
        .find(|&p| (0..n).all(|x| word[x] == word[(x + p) % n]))
        .unwrap_or(n.max(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Vec<u8> {
        s.bytes().map(|b| b - b'0').collect()
    }

    fn rotate<T: Clone>(w: &[T], r: usize) -> Vec<T> {
        let mut v = w[r..].to_vec();
        v.extend_from_slice(&w[..r]);
        v
    }

    #[test]
    fn lyndon_examples() {
        let w = bits("0110");
        assert_eq!(rotate(&w, lyndon_rotation(&w)), bits("0011"));
        assert_eq!(lyndon_rotation(&bits("0000")), 0);
        let w = bits("101101");
        assert_eq!(rotate(&w, lyndon_rotation(&w)), bits("011011"));
        assert_eq!(lyndon_rotation(&bits("1")), 0);
    }

    #[test]
    fn pair_indices_are_dense() {
        for k in 1..7 {
            let mut seen = vec![false; k * (k + 1) / 2];
            for i in 0..k {
                for j in i..k {
                    let p = pair_index(i, j, k);
                    assert!(!seen[p]);
                    seen[p] = true;
                }
            }
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(BlockCirculantColoring::new(10, 3, 2).is_err());
        let b = BlockCirculantColoring::new(6, 2, 2).unwrap();
        assert!(b.permute_blocks(&[0, 0]).is_err());
        assert!(b.multiply(3).is_err());
        let mut b = b;
        assert!(b.try_set(0, 0, 0, 1).is_err());
        b.try_set(0, 1, 2, 1).unwrap();
        assert!(b.try_set(0, 1, 2, 2).is_err());
    }

    #[test]
    fn matching_on_two_blocks() {
        let b = BlockCirculantColoring::from_color1_sets(4, 2, &[((0, 1), vec![0])]).unwrap();
        let g = b.realize().unwrap();
        assert_eq!(g.edge_count(1), 2);
        assert_eq!(g.color(0, 2), 1);
        assert_eq!(g.color(1, 3), 1);
    }

    #[test]
    fn lower_blocks_are_transposes() {
        let b = BlockCirculantColoring::from_color1_sets(9, 3, &[((0, 2), vec![1])]).unwrap();
        assert_eq!(b.generating_set(2, 0, 1), vec![2]);
        let g = b.realize().unwrap();
        // (0,a)-(2,a+1) edges
        assert_eq!(g.color(0, 7), 1);
        assert_eq!(g.color(2, 6), 1);
    }

    #[test]
    fn prefix_rejects_unsorted_diagonal() {
        let mut b = BlockCirculantColoring::new(10, 2, 2).unwrap();
        assert!(b.is_canonical_prefix());
        // D_11 = {2,3} -> vector (2,1); D_22 starts with color 1 at d=1
        b.set(0, 0, 1, 2);
        b.set(0, 0, 2, 1);
        b.set(1, 1, 1, 1);
        assert!(!b.is_canonical_prefix());
    }
}
