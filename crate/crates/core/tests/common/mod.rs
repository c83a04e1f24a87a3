#![allow(dead_code)]

use circramsey::{BlockCirculantColoring, Color, ColoredCompleteGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_coloring(rng: &mut ChaCha8Rng, n: usize, c: usize) -> ColoredCompleteGraph {
    let mut g = ColoredCompleteGraph::new(n, c).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            g.set_color(u, v, rng.gen_range(1..=c) as Color);
        }
    }
    g
}

/// Two-coloring whose color-1 density is `p`.
pub fn biased_coloring(rng: &mut ChaCha8Rng, n: usize, p: f64) -> ColoredCompleteGraph {
    let mut g = ColoredCompleteGraph::new(n, 2).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            g.set_color(u, v, if rng.gen_bool(p) { 1 } else { 2 });
        }
    }
    g
}

pub fn random_block(rng: &mut ChaCha8Rng, n: usize, k: usize, c: usize) -> BlockCirculantColoring {
    let mut b = BlockCirculantColoring::new(n, k, c).unwrap();
    for s in b.slots() {
        b.set(s.i, s.j, s.d, rng.gen_range(1..=c) as Color);
    }
    b
}

pub fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
