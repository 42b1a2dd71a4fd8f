//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the extraction or tracing code it is used to check.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use dilcon::{BinaryImage, Contour, EdgeSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Pt = (i64, i64);
/// Directed unit segment in y-up corner coordinates.
pub type Seg = (Pt, Pt);

pub fn random_image(width: u32, height: u32, seed: u64, density: f64) -> BinaryImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    BinaryImage::from_fn(width, height, |_| rng.random_bool(density)).unwrap()
}

/// All 512 3×3 images, indexed by their bit pattern.
pub fn all_3x3() -> Vec<BinaryImage> {
    (0u32..512)
        .map(|bits| BinaryImage::from_fn(3, 3, |p| bits & (1 << (p.y * 3 + p.x)) != 0).unwrap())
        .collect()
}

/// The 3×3 images plus 1,000 random 16×16 images.
pub fn corpus() -> Vec<BinaryImage> {
    let mut images = all_3x3();
    images.extend((0..1000).map(|seed| random_image(16, 16, seed, 0.5)));
    images
}

/// White cells in the y-up frame.
pub fn white_cells(img: &BinaryImage) -> Vec<(i64, i64)> {
    let h = i64::from(img.height());
    let mut out = Vec::new();
    for (r, row) in img.rows().enumerate() {
        for (x, &w) in row.iter().enumerate() {
            if w {
                out.push((x as i64, h - 1 - r as i64));
            }
        }
    }
    out
}

pub fn is_white(img: &BinaryImage, x: i64, y: i64) -> bool {
    let (w, h) = (i64::from(img.width()), i64::from(img.height()));
    if x < 0 || y < 0 || x >= w || y >= h {
        return false;
    }
    img.pixels()[((h - 1 - y) * w + x) as usize]
}

pub fn white_count(img: &BinaryImage) -> usize {
    img.pixels().iter().filter(|&&p| p).count()
}

/// Number of 4-adjacent pairs of white pixels.
pub fn adjacent_white_pairs(img: &BinaryImage) -> usize {
    white_cells(img)
        .into_iter()
        .map(|(x, y)| usize::from(is_white(img, x + 1, y)) + usize::from(is_white(img, x, y + 1)))
        .sum()
}

/// The four sides of a cell, counterclockwise.
pub fn cell_sides(x: i64, y: i64) -> [Seg; 4] {
    let (a, b, c, d) = ((x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1));
    [(a, b), (b, c), (c, d), (d, a)]
}

pub fn undirected(s: Seg) -> Seg {
    if s.0 <= s.1 {
        s
    } else {
        (s.1, s.0)
    }
}

/// Generates all four sides of every white pixel, counts each undirected
/// segment, and keeps those seen exactly once.
pub fn multiplicity_one_segments(img: &BinaryImage) -> BTreeSet<Seg> {
    let mut counts: HashMap<Seg, usize> = HashMap::new();
    for (x, y) in white_cells(img) {
        for s in cell_sides(x, y) {
            *counts.entry(undirected(s)).or_default() += 1;
        }
    }
    counts.into_iter().filter(|&(_, n)| n == 1).map(|(s, _)| s).collect()
}

/// Multiplicity-one segments, directed counterclockwise around their white pixel.
pub fn oracle_directed_segments(img: &BinaryImage) -> BTreeSet<Seg> {
    let keep = multiplicity_one_segments(img);
    white_cells(img)
        .into_iter()
        .flat_map(|(x, y)| cell_sides(x, y))
        .filter(|s| keep.contains(&undirected(*s)))
        .collect()
}

pub fn edge_segment(es: &EdgeSet, i: usize) -> Seg {
    let e = &es.edges()[i];
    let (a, b) = (e.first(), e.second());
    ((i64::from(a.x), i64::from(a.y)), (i64::from(b.x), i64::from(b.y)))
}

pub fn directed_segments(es: &EdgeSet) -> Vec<Seg> {
    (0..es.count()).map(|i| edge_segment(es, i)).collect()
}

fn cross(a: Seg, b: Seg) -> i64 {
    let u = (a.1 .0 - a.0 .0, a.1 .1 - a.0 .1);
    let v = (b.1 .0 - b.0 .0, b.1 .1 - b.0 .1);
    u.0 * v.1 - u.1 * v.0
}

/// Decomposes the directed boundary into loops geometrically: at a corner
/// with two ways out, take the one turning left, which keeps the same pixel
/// on the left. Each loop is returned as its sorted set of segments.
pub fn oracle_loops(img: &BinaryImage) -> BTreeSet<Vec<Seg>> {
    let segs = oracle_directed_segments(img);
    let mut out_of: BTreeMap<Pt, Vec<Seg>> = BTreeMap::new();
    for &s in &segs {
        out_of.entry(s.0).or_default().push(s);
    }
    let mut unused: BTreeSet<Seg> = segs.clone();
    let mut loops = BTreeSet::new();
    while let Some(&start) = unused.iter().next() {
        let mut current = start;
        unused.remove(&start);
        let mut members = vec![start];
        loop {
            let choices = &out_of[&current.1];
            let next = if choices.len() == 1 {
                choices[0]
            } else {
                *choices.iter().find(|&&c| cross(current, c) > 0).expect("left turn")
            };
            if next == start {
                break;
            }
            assert!(unused.remove(&next), "oracle revisited {next:?}");
            members.push(next);
            current = next;
        }
        members.sort();
        loops.insert(members);
    }
    loops
}

/// The loops produced by the tracer, in the same canonical form.
pub fn traced_loops(es: &EdgeSet, contours: &[Contour]) -> BTreeSet<Vec<Seg>> {
    contours
        .iter()
        .map(|c| {
            let mut v: Vec<Seg> = c.edge_ids.iter().map(|id| edge_segment(es, id.index())).collect();
            v.sort();
            v
        })
        .collect()
}

/// Twice the shoelace area, computed directly.
pub fn shoelace2(points: &[Pt]) -> i64 {
    let n = points.len();
    (0..n)
        .map(|i| {
            let (p, q) = (points[i], points[(i + 1) % n]);
            p.0 * q.1 - q.0 * p.1
        })
        .sum()
}

/// 4-connected white components, each as a list of y-up cells.
pub fn components(img: &BinaryImage) -> Vec<Vec<(i64, i64)>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for start in white_cells(img) {
        if !seen.insert(start) {
            continue;
        }
        let mut stack = vec![start];
        let mut comp = Vec::new();
        while let Some((x, y)) = stack.pop() {
            comp.push((x, y));
            for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                let n = (x + dx, y + dy);
                if is_white(img, n.0, n.1) && seen.insert(n) {
                    stack.push(n);
                }
            }
        }
        out.push(comp);
    }
    out
}
