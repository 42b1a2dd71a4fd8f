//! Exact integer geometry on traced contours.
//!
//! Dilated contours live in half-unit coordinates (every value doubled), so
//! edge midpoints stay integral and nothing here ever rounds.

use crate::edges::{CornerPoint, EdgeSet};
use crate::parallel::Workers;
use crate::trace::{ConsistencyError, Contour};

/// A point in half-pixel units: the geometric position is `(x2 / 2, y2 / 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfPoint {
    pub x2: i64,
    pub y2: i64,
}

impl HalfPoint {
    pub const fn new(x2: i64, y2: i64) -> Self {
        Self { x2, y2 }
    }
}

impl From<CornerPoint> for HalfPoint {
    fn from(p: CornerPoint) -> Self {
        Self::new(2 * i64::from(p.x), 2 * i64::from(p.y))
    }
}

/// Integer coordinates of a polygon vertex.
pub trait Vertex {
    fn xy(&self) -> (i64, i64);
}

impl Vertex for CornerPoint {
    fn xy(&self) -> (i64, i64) {
        (i64::from(self.x), i64::from(self.y))
    }
}

impl Vertex for HalfPoint {
    fn xy(&self) -> (i64, i64) {
        (self.x2, self.y2)
    }
}

impl Vertex for (i64, i64) {
    fn xy(&self) -> (i64, i64) {
        *self
    }
}

impl Vertex for [i64; 2] {
    fn xy(&self) -> (i64, i64) {
        (self[0], self[1])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("a polygon needs at least 3 points, got {0}")]
pub struct TooFewPoints(pub usize);

/// Twice the shoelace area of the closed chain `points`, positive when the
/// chain runs counterclockwise (y up).
pub fn signed_area2<P: Vertex>(points: &[P]) -> Result<i64, TooFewPoints> {
    if points.len() < 3 {
        return Err(TooFewPoints(points.len()));
    }
    let mut sum = 0i64;
    let mut prev = points[points.len() - 1].xy();
    for p in points {
        let cur = p.xy();
        sum += prev.0 * cur.1 - cur.0 * prev.1;
        prev = cur;
    }
    Ok(sum)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Orientation {
    /// Counterclockwise loop around white pixels.
    #[serde(rename = "object")]
    ObjectCcw,
    /// Clockwise loop around a hole.
    #[serde(rename = "hole")]
    HoleCw,
}

impl Orientation {
    pub fn from_area2(area2: i64) -> Option<Self> {
        match area2.signum() {
            1 => Some(Orientation::ObjectCcw),
            -1 => Some(Orientation::HoleCw),
            _ => None,
        }
    }
}

pub fn classify(c: &Contour) -> Result<Orientation, ConsistencyError> {
    let zero = ConsistencyError::ZeroArea { len: c.len() };
    let area2 = signed_area2(&c.points).map_err(|_| zero.clone())?;
    Orientation::from_area2(area2).ok_or(zero)
}

/// A contour with each corner replaced by the midpoint of the edge leaving it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DilatedContour<'a> {
    pub points: Vec<HalfPoint>,
    pub source: &'a Contour,
}

impl DilatedContour<'_> {
    pub fn signed_area2(&self) -> Result<i64, TooFewPoints> {
        signed_area2(&self.points)
    }
}

pub fn dilate<'a>(c: &'a Contour, es: &EdgeSet) -> DilatedContour<'a> {
    let points = c
        .edge_ids
        .iter()
        .map(|&id| {
            let e = es.get(id);
            let (a, b) = (HalfPoint::from(e.first()), HalfPoint::from(e.second()));
            HalfPoint::new((a.x2 + b.x2) / 2, (a.y2 + b.y2) / 2)
        })
        .collect();
    DilatedContour { points, source: c }
}

/// Dilates every contour, spreading the work over `workers`.
pub fn dilate_all<'a>(
    contours: &'a [Contour],
    es: &EdgeSet,
    workers: &Workers,
) -> Vec<DilatedContour<'a>> {
    workers.map_ordered(contours, |c| dilate(c, es))
}

/// How two closed segments meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Contact {
    Disjoint,
    /// The only common point is an endpoint of both segments.
    SharedEndpoint,
    /// An endpoint of one segment lies in the interior of the other.
    Touch,
    /// Interiors cross at a single point.
    Cross,
    /// Collinear with a common stretch of positive length.
    Overlap,
}

fn orient(p: (i64, i64), q: (i64, i64), r: (i64, i64)) -> i64 {
    let v = i128::from(q.0 - p.0) * i128::from(r.1 - p.1)
        - i128::from(q.1 - p.1) * i128::from(r.0 - p.0);
    v.signum() as i64
}

/// `r` is on segment `pq`, given it is collinear with it.
fn within(p: (i64, i64), q: (i64, i64), r: (i64, i64)) -> bool {
    p.0.min(q.0) <= r.0 && r.0 <= p.0.max(q.0) && p.1.min(q.1) <= r.1 && r.1 <= p.1.max(q.1)
}

pub fn segment_contact<P: Vertex>(a: (&P, &P), b: (&P, &P)) -> Contact {
    let (a0, a1, b0, b1) = (a.0.xy(), a.1.xy(), b.0.xy(), b.1.xy());
    let d1 = orient(a0, a1, b0);
    let d2 = orient(a0, a1, b1);
    let d3 = orient(b0, b1, a0);
    let d4 = orient(b0, b1, a1);

    if d1 * d2 < 0 && d3 * d4 < 0 {
        return Contact::Cross;
    }

    if d1 == 0 && d2 == 0 && d3 == 0 && d4 == 0 {
        // collinear: compare the projections on the dominant axis
        let axis = |p: (i64, i64)| {
            if a0.0 != a1.0 || b0.0 != b1.0 {
                p.0
            } else {
                p.1
            }
        };
        let (alo, ahi) = (axis(a0).min(axis(a1)), axis(a0).max(axis(a1)));
        let (blo, bhi) = (axis(b0).min(axis(b1)), axis(b0).max(axis(b1)));
        let lo = alo.max(blo);
        let hi = ahi.min(bhi);
        return match lo.cmp(&hi) {
            std::cmp::Ordering::Greater => Contact::Disjoint,
            std::cmp::Ordering::Less => Contact::Overlap,
            std::cmp::Ordering::Equal => {
                let point = [a0, a1, b0, b1].into_iter().find(|&p| axis(p) == lo).unwrap();
                endpoint_contact(point, (a0, a1), (b0, b1))
            }
        };
    }

    let candidates = [
        (d1 == 0 && within(a0, a1, b0)).then_some(b0),
        (d2 == 0 && within(a0, a1, b1)).then_some(b1),
        (d3 == 0 && within(b0, b1, a0)).then_some(a0),
        (d4 == 0 && within(b0, b1, a1)).then_some(a1),
    ];
    match candidates.into_iter().flatten().next() {
        Some(point) => endpoint_contact(point, (a0, a1), (b0, b1)),
        None => Contact::Disjoint,
    }
}

fn endpoint_contact(point: (i64, i64), a: ((i64, i64), (i64, i64)), b: ((i64, i64), (i64, i64))) -> Contact {
    let on_a = point == a.0 || point == a.1;
    let on_b = point == b.0 || point == b.1;
    if on_a && on_b {
        Contact::SharedEndpoint
    } else {
        Contact::Touch
    }
}

fn segments<P>(chain: &[P]) -> impl Iterator<Item = (&P, &P)> + '_ {
    let n = chain.len();
    (0..n).map(move |i| (&chain[i], &chain[(i + 1) % n]))
}

fn bbox<P: Vertex>(chain: &[P]) -> Option<((i64, i64), (i64, i64))> {
    let mut it = chain.iter().map(Vertex::xy);
    let first = it.next()?;
    Some(it.fold((first, first), |(lo, hi), p| {
        ((lo.0.min(p.0), lo.1.min(p.1)), (hi.0.max(p.0), hi.1.max(p.1)))
    }))
}

fn boxes_meet<P: Vertex>(a: &[P], b: &[P]) -> bool {
    match (bbox(a), bbox(b)) {
        (Some((alo, ahi)), Some((blo, bhi))) => {
            alo.0 <= bhi.0 && blo.0 <= ahi.0 && alo.1 <= bhi.1 && blo.1 <= ahi.1
        }
        _ => false,
    }
}

fn any_contact<P: Vertex>(a: &[P], b: &[P], hit: impl Fn(Contact) -> bool) -> bool {
    if !boxes_meet(a, b) {
        return false;
    }
    segments(a).any(|sa| segments(b).any(|sb| hit(segment_contact(sa, sb))))
}

/// True when the closed chains cross, overlap along a stretch, or one
/// touches the interior of a segment of the other. Meeting only at common
/// vertices is allowed.
pub fn chains_properly_intersect<P: Vertex>(a: &[P], b: &[P]) -> bool {
    any_contact(a, b, |c| {
        matches!(c, Contact::Touch | Contact::Cross | Contact::Overlap)
    })
}

/// True when the closed chains have any point in common.
pub fn chains_share_point<P: Vertex>(a: &[P], b: &[P]) -> bool {
    any_contact(a, b, |c| c != Contact::Disjoint)
}

/// True when the closed chain is a simple polygon: neighbouring segments
/// meet only at their common vertex and all other pairs are disjoint.
pub fn is_simple_chain<P: Vertex>(chain: &[P]) -> bool {
    let n = chain.len();
    if n < 3 {
        return false;
    }
    let segs: Vec<_> = segments(chain).collect();
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let contact = segment_contact(segs[i], segs[j]);
            let ok = if adjacent {
                contact == Contact::SharedEndpoint
            } else {
                contact == Contact::Disjoint
            };
            if !ok {
                return false;
            }
        }
    }
    true
}
