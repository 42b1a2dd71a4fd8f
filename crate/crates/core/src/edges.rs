//! Boundary edge extraction.
//!
//! A white pixel contributes its bottom, right, top or left edge exactly when
//! the 4-neighbour across that edge is black (or outside the image). Shared
//! edges between two white pixels therefore never appear, which leaves the
//! set of unit segments of multiplicity one. Each pixel decides on its own,
//! so the scan is split into horizontal bands that run independently and are
//! concatenated in band order.

use std::ops::Range;

use crate::image::{BinaryImage, GridCell};
use crate::parallel::Workers;

/// Which side of its parent pixel an edge lies on.
///
/// Edges run counterclockwise around the parent: `E1 = AB` (bottom),
/// `E2 = BC` (right), `E3 = CD` (top), `E4 = DA` (left).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum EdgeType {
    E1 = 0,
    E2 = 1,
    E3 = 2,
    E4 = 3,
}

impl EdgeType {
    pub const ALL: [EdgeType; 4] = [EdgeType::E1, EdgeType::E2, EdgeType::E3, EdgeType::E4];

    /// Offset of the first point from the parent's `A` corner.
    const fn first_offset(self) -> (u32, u32) {
        match self {
            EdgeType::E1 => (0, 0), // A
            EdgeType::E2 => (1, 0), // B
            EdgeType::E3 => (1, 1), // C
            EdgeType::E4 => (0, 1), // D
        }
    }

    /// Offset of the second point from the parent's `A` corner.
    const fn second_offset(self) -> (u32, u32) {
        match self {
            EdgeType::E1 => (1, 0),
            EdgeType::E2 => (1, 1),
            EdgeType::E3 => (0, 1),
            EdgeType::E4 => (0, 0),
        }
    }

    /// Step from the parent to the neighbour on the other side of the edge.
    pub const fn outward(self) -> (i64, i64) {
        match self {
            EdgeType::E1 => (0, -1),
            EdgeType::E2 => (1, 0),
            EdgeType::E3 => (0, 1),
            EdgeType::E4 => (-1, 0),
        }
    }
}

/// A lattice point on the pixel-corner grid, y-up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CornerPoint {
    pub x: u32,
    pub y: u32,
}

impl CornerPoint {
    pub const fn new(x: u32, y: u32) -> Self {
        Self { x, y }
    }
}

/// Dense position of an edge in the enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub u32);

impl EdgeId {
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundaryEdge {
    pub parent: GridCell,
    pub etype: EdgeType,
    pub id: EdgeId,
}

impl BoundaryEdge {
    pub fn first(&self) -> CornerPoint {
        let (dx, dy) = self.etype.first_offset();
        CornerPoint::new(self.parent.x + dx, self.parent.y + dy)
    }

    pub fn second(&self) -> CornerPoint {
        let (dx, dy) = self.etype.second_offset();
        CornerPoint::new(self.parent.x + dx, self.parent.y + dy)
    }
}

/// The endpoints of `e` in counterclockwise order around its parent.
pub fn edge_endpoints(e: &BoundaryEdge) -> (CornerPoint, CornerPoint) {
    (e.first(), e.second())
}

/// Boundary edges of an image, enumerated by y-up row (bottom first), then
/// column, then `E1..E4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSet {
    width: u32,
    height: u32,
    edges: Vec<BoundaryEdge>,
}

impl EdgeSet {
    /// Wraps `edges` without checking any invariant. Meant for feeding
    /// hand-made (possibly corrupted) sets to the later stages.
    pub fn from_parts_unchecked(width: u32, height: u32, edges: Vec<BoundaryEdge>) -> Self {
        Self { width, height, edges }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn edges(&self) -> &[BoundaryEdge] {
        &self.edges
    }

    pub fn count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn get(&self, id: EdgeId) -> &BoundaryEdge {
        &self.edges[id.index()]
    }
}

/// Extracts the boundary edges using the default worker pool.
pub fn extract_edges(img: &BinaryImage) -> EdgeSet {
    Workers::default().extract_edges(img)
}

/// Extracts the boundary edges of `img` with the rows split into `bands`
/// horizontal bands. The result does not depend on `bands` or on `workers`.
pub fn extract_edges_banded(img: &BinaryImage, bands: usize, workers: &Workers) -> EdgeSet {
    let height = img.height() as usize;
    let bands = bands.clamp(1, height);
    let ranges: Vec<Range<u32>> = (0..bands)
        .map(|b| (b * height / bands) as u32..((b + 1) * height / bands) as u32)
        .collect();

    let pieces = workers.map_ordered(&ranges, |rows| scan_band(img, rows.clone()));

    let total = pieces.iter().map(Vec::len).sum();
    assert!(total <= u32::MAX as usize, "edge count exceeds the id space");
    let mut edges = Vec::with_capacity(total);
    for piece in pieces {
        edges.extend(piece);
    }
    workers.for_each_indexed_mut(&mut edges, |i, e| e.id = EdgeId(i as u32));

    EdgeSet {
        width: img.width(),
        height: img.height(),
        edges,
    }
}

/// Emits the edges of the y-up rows in `rows`, with placeholder ids.
fn scan_band(img: &BinaryImage, rows: Range<u32>) -> Vec<BoundaryEdge> {
    let w = img.width() as usize;
    let h = img.height();
    let mut out = Vec::new();
    for y in rows {
        let r = h - 1 - y;
        let here = img.row(r);
        let below = (r + 1 < h).then(|| img.row(r + 1));
        let above = (r > 0).then(|| img.row(r - 1));
        for x in 0..w {
            if !here[x] {
                continue;
            }
            let open = [
                !below.is_some_and(|row| row[x]),
                !(x + 1 < w && here[x + 1]),
                !above.is_some_and(|row| row[x]),
                !(x > 0 && here[x - 1]),
            ];
            let parent = GridCell::new(x as u32, y);
            for (etype, _) in EdgeType::ALL.into_iter().zip(open).filter(|(_, o)| *o) {
                out.push(BoundaryEdge {
                    parent,
                    etype,
                    id: EdgeId(0),
                });
            }
        }
    }
    out
}
