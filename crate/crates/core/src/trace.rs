//! Connecting boundary edges into closed, oriented loops.
//!
//! Every corner touched by the edge set has either two or four incident
//! edges, half of them leaving the corner. At a two-edge corner the loop just
//! continues; at a four-edge corner (two white pixels meeting diagonally) it
//! continues with the edge owned by the same pixel as the edge it arrived on,
//! so diagonally touching pixels never share a loop through that corner.
//!
//! Tracing is sequential and linear in the number of edges: a cursor sweeps
//! the enumeration once to find loop seeds, and every edge is visited once.

use thiserror::Error;

use crate::edges::{BoundaryEdge, CornerPoint, EdgeId, EdgeSet};
use crate::geometry::{self, Orientation};

const NONE: u32 = u32::MAX;

/// Edges meeting at one corner, ascending by id.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Incidence {
    outgoing: [u32; 2],
    incoming: [u32; 2],
}

impl Incidence {
    const EMPTY: Incidence = Incidence {
        outgoing: [NONE; 2],
        incoming: [NONE; 2],
    };

    /// Edges whose first point is this corner.
    pub fn outgoing(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.outgoing.iter().filter(|&&id| id != NONE).map(|&id| EdgeId(id))
    }

    /// Edges whose second point is this corner.
    pub fn incoming(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.incoming.iter().filter(|&&id| id != NONE).map(|&id| EdgeId(id))
    }

    pub fn outgoing_count(&self) -> usize {
        self.outgoing.iter().filter(|&&id| id != NONE).count()
    }

    pub fn incoming_count(&self) -> usize {
        self.incoming.iter().filter(|&&id| id != NONE).count()
    }

    pub fn valence(&self) -> usize {
        self.outgoing_count() + self.incoming_count()
    }

    fn is_empty(&self) -> bool {
        self.outgoing[0] == NONE && self.incoming[0] == NONE
    }
}

/// Corner point → incident edges, stored densely over the corner grid.
#[derive(Debug, Clone)]
pub struct EndpointIndex {
    stride: usize,
    slots: Vec<Incidence>,
    points: usize,
}

impl EndpointIndex {
    /// Number of distinct corner points with incident edges.
    pub fn len(&self) -> usize {
        self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points == 0
    }

    pub fn incidence(&self, p: CornerPoint) -> Option<&Incidence> {
        self.slot(p).filter(|inc| !inc.is_empty())
    }

    /// All listed points with their incidences, ordered by `(y, x)`.
    pub fn iter(&self) -> impl Iterator<Item = (CornerPoint, &Incidence)> + '_ {
        let stride = self.stride;
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, inc)| !inc.is_empty())
            .map(move |(i, inc)| (CornerPoint::new((i % stride) as u32, (i / stride) as u32), inc))
    }

    fn slot(&self, p: CornerPoint) -> Option<&Incidence> {
        if p.x as usize >= self.stride {
            return None;
        }
        self.slots.get(p.y as usize * self.stride + p.x as usize)
    }
}

/// Builds the corner index of `es`, checking that every listed corner has
/// one or two edges in each direction and as many leaving as arriving.
pub fn build_endpoint_index(es: &EdgeSet) -> Result<EndpointIndex, ConsistencyError> {
    if es.is_empty() {
        return Ok(EndpointIndex {
            stride: 0,
            slots: Vec::new(),
            points: 0,
        });
    }
    let stride = es.width() as usize + 1;
    let mut slots = vec![Incidence::EMPTY; stride * (es.height() as usize + 1)];
    let overflow = |p: CornerPoint, inc: &Incidence| ConsistencyError::Valence {
        point: p,
        incoming: inc.incoming_count() + 1,
        outgoing: inc.outgoing_count() + 1,
    };

    for e in es.edges() {
        let (first, second) = (e.first(), e.second());
        let inc = &mut slots[first.y as usize * stride + first.x as usize];
        push_id(&mut inc.outgoing, e.id).map_err(|_| overflow(first, inc))?;
        let inc = &mut slots[second.y as usize * stride + second.x as usize];
        push_id(&mut inc.incoming, e.id).map_err(|_| overflow(second, inc))?;
    }

    let mut points = 0;
    for (i, inc) in slots.iter().enumerate() {
        if inc.is_empty() {
            continue;
        }
        points += 1;
        let (incoming, outgoing) = (inc.incoming_count(), inc.outgoing_count());
        if incoming != outgoing {
            return Err(ConsistencyError::Valence {
                point: CornerPoint::new((i % stride) as u32, (i / stride) as u32),
                incoming,
                outgoing,
            });
        }
    }
    Ok(EndpointIndex {
        stride,
        slots,
        points,
    })
}

fn push_id(list: &mut [u32; 2], id: EdgeId) -> Result<(), ()> {
    match list.iter_mut().find(|slot| **slot == NONE) {
        Some(slot) => {
            *slot = id.0;
            Ok(())
        }
        None => Err(()),
    }
}

/// A closed chain of unit edges. `edge_ids[k]` starts at `points[k]` and ends
/// at `points[(k + 1) % len]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contour {
    pub points: Vec<CornerPoint>,
    pub edge_ids: Vec<EdgeId>,
}

impl Contour {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Object (counterclockwise) or hole (clockwise), from the signed area.
    pub fn orientation(&self) -> Result<Orientation, ConsistencyError> {
        geometry::classify(self)
    }
}

/// Internal invariants that hold for every edge set produced by
/// [`extract_edges`](crate::edges::extract_edges). Seeing one means the
/// input was corrupted or a stage is broken.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConsistencyError {
    #[error(
        "corner ({}, {}) has {incoming} incoming and {outgoing} outgoing edges",
        point.x,
        point.y
    )]
    Valence {
        point: CornerPoint,
        incoming: usize,
        outgoing: usize,
    },
    #[error("loop dead-ends at corner ({}, {}): the only continuation is already used", point.x, point.y)]
    DeadEnd { point: CornerPoint },
    #[error("no outgoing edge of the current pixel at four-edge corner ({}, {})", point.x, point.y)]
    NoSuccessor { point: CornerPoint },
    #[error("contour of {len} points encloses zero area")]
    ZeroArea { len: usize },
}

/// Step-by-step loop construction over an edge set.
pub struct Tracer<'a> {
    edges: &'a EdgeSet,
    index: &'a EndpointIndex,
    used: Vec<u64>,
    used_count: usize,
    cursor: usize,
}

impl<'a> Tracer<'a> {
    pub fn new(edges: &'a EdgeSet, index: &'a EndpointIndex) -> Self {
        Self {
            edges,
            index,
            used: vec![0; edges.count().div_ceil(64)],
            used_count: 0,
            cursor: 0,
        }
    }

    /// Edges consumed so far.
    pub fn used_edge_count(&self) -> usize {
        self.used_count
    }

    pub fn is_used(&self, id: EdgeId) -> bool {
        self.used[id.index() / 64] & (1 << (id.index() % 64)) != 0
    }

    fn mark_used(&mut self, id: EdgeId) {
        self.used[id.index() / 64] |= 1 << (id.index() % 64);
        self.used_count += 1;
    }

    /// Traces the loop seeded by the next unused edge in enumeration order.
    pub fn next_contour(&mut self) -> Option<Result<Contour, ConsistencyError>> {
        if self.used_count == self.edges.count() {
            return None;
        }
        while self.is_used(EdgeId(self.cursor as u32)) {
            self.cursor += 1;
        }
        let seed = EdgeId(self.cursor as u32);
        Some(self.trace_from(seed))
    }

    fn trace_from(&mut self, seed: EdgeId) -> Result<Contour, ConsistencyError> {
        let mut current = *self.edges.get(seed);
        let mut points = vec![current.first()];
        let mut edge_ids = vec![seed];
        self.mark_used(seed);

        loop {
            let next = self.successor(&current, seed)?;
            if self.is_used(next) {
                if next != seed {
                    return Err(ConsistencyError::DeadEnd {
                        point: current.second(),
                    });
                }
                break;
            }
            current = *self.edges.get(next);
            points.push(current.first());
            edge_ids.push(next);
            self.mark_used(next);
        }
        Ok(Contour { points, edge_ids })
    }

    fn successor(&self, current: &BoundaryEdge, seed: EdgeId) -> Result<EdgeId, ConsistencyError> {
        let point = current.second();
        let inc = self
            .index
            .incidence(point)
            .ok_or(ConsistencyError::DeadEnd { point })?;
        match inc.outgoing_count() {
            1 => Ok(EdgeId(inc.outgoing[0])),
            2 => {
                let mut same = inc
                    .outgoing()
                    .filter(|&id| self.edges.get(id).parent == current.parent);
                match (same.next(), same.next()) {
                    (Some(id), None) if !self.is_used(id) || id == seed => Ok(id),
                    _ => Err(ConsistencyError::NoSuccessor { point }),
                }
            }
            _ => Err(ConsistencyError::Valence {
                point,
                incoming: inc.incoming_count(),
                outgoing: inc.outgoing_count(),
            }),
        }
    }
}

/// Connects every edge of `es` into closed loops, in seed order.
pub fn trace_contours(es: &EdgeSet, idx: &EndpointIndex) -> Result<Vec<Contour>, ConsistencyError> {
    let mut tracer = Tracer::new(es, idx);
    std::iter::from_fn(|| tracer.next_contour()).collect()
}
