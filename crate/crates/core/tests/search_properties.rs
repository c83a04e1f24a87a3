mod common;

use std::collections::BTreeSet;

use circramsey::circulant::units;
use circramsey::extend::extensions;
use circramsey::search::{
    collect_block_circulant, collect_circulant, enumerate_block_circulant, SearchJob,
};
use circramsey::verify::{are_isomorphic, dedupe_nonisomorphic, verify_ramsey};
use circramsey::{
    is_ramsey_graph, BlockCirculantColoring, CirculantColoring, Color, ColoredCompleteGraph,
    PatternSpec,
};
use common::*;
use rand::Rng;

use PatternSpec::{AlmostComplete as J, Complete as K};

/// A random composition of block permutation, column rotation and unit
/// multiplication.
fn scramble(b: &BlockCirculantColoring, r: &mut rand_chacha::ChaCha8Rng) -> BlockCirculantColoring {
    let k = b.k();
    let m = b.m();
    let us = units(m);
    let mut out = b.clone();
    for _ in 0..3 {
        out = match r.gen_range(0..3) {
            0 => out.permute_blocks(&random_perm(r, k)).unwrap(),
            1 => {
                let rs: Vec<usize> = (0..k).map(|_| r.gen_range(0..m)).collect();
                out.rotate_columns(&rs)
            }
            _ => out.multiply(us[r.gen_range(0..us.len())]).unwrap(),
        };
    }
    out
}

fn all_total(n: usize, k: usize, c: usize) -> Vec<BlockCirculantColoring> {
    let base = BlockCirculantColoring::new(n, k, c).unwrap();
    let slots = base.slots();
    let total = c.pow(slots.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut b = base.clone();
            for s in &slots {
                b.set(s.i, s.j, s.d, (code % c + 1) as Color);
                code /= c;
            }
            b
        })
        .collect()
}

fn brute_force_classes(
    n: usize,
    k: usize,
    patterns: &[PatternSpec],
) -> BTreeSet<BlockCirculantColoring> {
    all_total(n, k, patterns.len())
        .into_iter()
        .filter(|b| {
            verify_ramsey(&b.realize().unwrap(), patterns)
                .unwrap()
                .is_valid()
        })
        .map(|b| b.canonicalize().unwrap())
        .collect()
}

#[test]
fn canonical_form_is_an_isomorphism_invariant() {
    let mut r = rng(21);
    let mut samples = 0;
    while samples < 240 {
        let k = r.gen_range(1..=3);
        let m = r.gen_range(1..=24 / k);
        let c = r.gen_range(2..=3);
        let n = k * m;
        if n < 3 {
            continue;
        }
        samples += 1;
        let b = random_block(&mut r, n, k, c);
        let canon = b.canonicalize().unwrap();
        assert_eq!(canon.canonicalize().unwrap(), canon);
        assert!(canon.is_canonical());
        assert!(canon.fill_key() <= b.fill_key());
        for _ in 0..3 {
            assert_eq!(scramble(&b, &mut r).canonicalize().unwrap(), canon);
        }
        if samples % 4 == 0 {
            assert!(are_isomorphic(&canon.realize().unwrap(), &b.realize().unwrap()).unwrap());
        }
    }
}

#[test]
fn block_operations_preserve_isomorphism() {
    let mut r = rng(22);
    for _ in 0..80 {
        let k = r.gen_range(1..=4);
        let m = r.gen_range(2..=6);
        let b = random_block(&mut r, k * m, k, 2);
        let g = b.realize().unwrap();
        assert!(are_isomorphic(&g, &scramble(&b, &mut r).realize().unwrap()).unwrap());
    }
}

#[test]
fn one_block_canonical_form_is_the_unit_form() {
    let mut r = rng(23);
    for n in 3..=30 {
        for _ in 0..5 {
            let mut c = CirculantColoring::new(n, 2).unwrap();
            let mut b = BlockCirculantColoring::new(n, 1, 2).unwrap();
            for d in 1..=n / 2 {
                let t = r.gen_range(1..=2);
                c.set(d, t);
                b.set(0, 0, d, t);
            }
            let form = c.unit_canonical_form();
            let canon = b.canonicalize().unwrap();
            let diag: Vec<Color> = (1..=n / 2).map(|d| form.get(d)).collect();
            assert_eq!(canon.diag_vector(0), diag);
            assert_eq!(b.is_canonical(), c.is_unit_canonical());
        }
    }
}

#[test]
fn prefixes_of_canonical_colorings_are_accepted() {
    for (n, k, c) in [(8, 2, 2), (9, 3, 2), (6, 3, 2), (12, 2, 2), (6, 2, 3)] {
        let mut canonical = 0;
        for b in all_total(n, k, c) {
            if !b.is_canonical() {
                continue;
            }
            canonical += 1;
            let slots = b.slots();
            let mut p = BlockCirculantColoring::new(n, k, c).unwrap();
            assert!(p.is_canonical_prefix());
            for s in &slots {
                p.set(s.i, s.j, s.d, b.get(s.i, s.j, s.d));
                assert!(p.is_canonical_prefix(), "prefix of {b:?} rejected at {s:?}");
            }
        }
        assert!(canonical > 0);
    }
}

#[test]
fn search_matches_brute_force() {
    let cases: &[(usize, usize, &[PatternSpec])] = &[
        (8, 1, &[K(3), K(4)]),
        (13, 1, &[K(3), K(5)]),
        (16, 1, &[K(4), K(4)]),
        (17, 1, &[K(4), K(4)]),
        (14, 1, &[J(4), J(5)]),
        (8, 2, &[K(3), K(4)]),
        (6, 2, &[K(3), K(4)]),
        (10, 2, &[K(3), K(5)]),
        (12, 2, &[K(3), K(5)]),
        (12, 2, &[K(4), K(4)]),
        (9, 3, &[J(4), J(5)]),
        (9, 3, &[K(3), K(5)]),
        (12, 3, &[K(3), K(5)]),
        (8, 2, &[K(3), K(3), K(3)]),
        (10, 1, &[K(3), K(3), K(3)]),
    ];
    let mut nonempty = 0;
    for &(n, k, pats) in cases {
        let job = SearchJob::new(n, k, pats.to_vec()).unwrap();
        let found: BTreeSet<_> = collect_block_circulant(&job).unwrap().into_iter().collect();
        let expected = brute_force_classes(n, k, pats);
        assert_eq!(found, expected, "n={n} k={k}");
        if !found.is_empty() {
            nonempty += 1;
        }
    }
    assert!(nonempty >= 12);
}

#[test]
fn circulant_search_outputs_are_unit_canonical() {
    for (n, pats) in [
        (13, vec![K(3), K(5)]),
        (17, vec![K(4), K(4)]),
        (16, vec![J(4), J(5)]),
    ] {
        let out = collect_circulant(&SearchJob::circulant(n, pats.clone()).unwrap()).unwrap();
        let expected: BTreeSet<Vec<Color>> = brute_force_classes(n, 1, &pats)
            .into_iter()
            .map(|b| b.diag_vector(0))
            .collect();
        let got: BTreeSet<Vec<Color>> = out
            .iter()
            .map(|c| (1..=n / 2).map(|d| c.get(d)).collect())
            .collect();
        assert_eq!(got, expected);
        for c in &out {
            assert!(c.is_unit_canonical());
            assert!(is_ramsey_graph(&c.realize().unwrap(), &pats).unwrap());
        }
    }
}

#[test]
fn unfiltered_search_is_a_superset() {
    for (n, k, pats) in [
        (8, 2, vec![K(3), K(4)]),
        (12, 2, vec![K(3), K(5)]),
        (9, 3, vec![J(4), J(5)]),
    ] {
        let job = SearchJob::new(n, k, pats).unwrap();
        let canon = collect_block_circulant(&job).unwrap();
        let raw = collect_block_circulant(&job.clone().without_canonical_filter()).unwrap();
        let raw_set: BTreeSet<_> = raw.iter().cloned().collect();
        assert!(canon.iter().all(|b| raw_set.contains(b)));
        let forms: BTreeSet<_> = raw.iter().map(|b| b.canonicalize().unwrap()).collect();
        assert_eq!(forms, canon.iter().cloned().collect());
        let g_canon: Vec<_> = canon.iter().map(|b| b.realize().unwrap()).collect();
        let g_raw: Vec<_> = raw.iter().map(|b| b.realize().unwrap()).collect();
        assert_eq!(
            dedupe_nonisomorphic(&g_canon).unwrap().len(),
            dedupe_nonisomorphic(&g_raw).unwrap().len()
        );
    }
}

#[test]
fn split_parts_are_disjoint_and_cover() {
    for job in [
        SearchJob::circulant(13, vec![K(3), K(5)]).unwrap(),
        SearchJob::new(12, 2, vec![K(3), K(5)]).unwrap(),
        SearchJob::new(27, 3, vec![J(4), J(7)]).unwrap(),
    ] {
        let all = collect_block_circulant(&job).unwrap();
        for m in [2u64, 4] {
            let mut union = Vec::new();
            let mut owned = 0;
            for part in 0..m {
                let split = job.clone().with_split(m, part).unwrap();
                let stats =
                    enumerate_block_circulant(&split, &mut |b| union.push(b.clone())).unwrap();
                owned += stats.frontier_owned;
            }
            let full = enumerate_block_circulant(&job, &mut |_| {}).unwrap();
            assert_eq!(owned, full.frontier);
            assert_eq!(union.len(), all.len());
            union.sort();
            let mut sorted = all.clone();
            sorted.sort();
            assert_eq!(union, sorted);
        }
    }
}

#[test]
fn search_is_deterministic() {
    let job = SearchJob::new(12, 2, vec![K(3), K(5)]).unwrap();
    let mut a = Vec::new();
    let mut b = Vec::new();
    let sa = enumerate_block_circulant(&job, &mut |x| a.push(x.clone())).unwrap();
    let sb = enumerate_block_circulant(&job, &mut |x| b.push(x.clone())).unwrap();
    assert_eq!(a, b);
    assert_eq!(sa, sb);
}

fn random_ramsey(
    r: &mut rand_chacha::ChaCha8Rng,
    n: usize,
    pats: &[PatternSpec],
) -> Option<ColoredCompleteGraph> {
    (0..2000)
        .map(|_| random_coloring(r, n, pats.len()))
        .find(|g| is_ramsey_graph(g, pats).unwrap())
}

#[test]
fn extension_matches_unpruned_scan() {
    let mut r = rng(24);
    let families: [&[PatternSpec]; 4] = [
        &[K(3), K(4)],
        &[K(4), K(4)],
        &[J(4), J(5)],
        &[PatternSpec::Cycle(4), K(4)],
    ];
    let mut checked = 0;
    for _ in 0..40 {
        let pats = families[r.gen_range(0..families.len())];
        let n = r.gen_range(2..=9);
        let Some(g) = random_ramsey(&mut r, n, pats) else {
            continue;
        };
        let c = pats.len();
        let mut expected = BTreeSet::new();
        for mut code in 0..c.pow(n as u32) {
            let mut h = g.with_new_vertex().unwrap();
            for u in 0..n {
                h.set_color(u, n, (code % c + 1) as Color);
                code /= c;
            }
            if verify_ramsey(&h, pats).unwrap().is_valid() {
                expected.insert(encode(&h));
            }
        }
        let got: Vec<_> = extensions(&g, pats).unwrap().iter().map(encode).collect();
        assert_eq!(got.len(), expected.len());
        assert_eq!(got.into_iter().collect::<BTreeSet<_>>(), expected);
        checked += 1;
    }
    assert!(checked >= 30);
}

fn encode(g: &ColoredCompleteGraph) -> Vec<Color> {
    let n = g.n();
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .map(|(u, v)| g.color(u, v))
        .collect()
}

#[test]
fn extremal_colorings_do_not_extend() {
    let c5 = CirculantColoring::from_color1_set(5, &[1, 4])
        .unwrap()
        .realize()
        .unwrap();
    assert!(extensions(&c5, &[K(3), K(3)]).unwrap().is_empty());
    let out = collect_circulant(&SearchJob::circulant(8, vec![K(3), K(4)]).unwrap()).unwrap();
    assert!(!out.is_empty());
    for c in out {
        assert!(extensions(&c.realize().unwrap(), &[K(3), K(4)])
            .unwrap()
            .is_empty());
    }
}

#[test]
fn extension_rejects_non_ramsey_input() {
    let k3 = ColoredCompleteGraph::monochromatic(3, 2, 1).unwrap();
    assert!(extensions(&k3, &[K(3), K(3)]).is_err());
}
