//! Oriented and dilated contours of bilevel images.
//!
//! The pipeline has two stages:
//!
//! 1. [`extract_edges`] collects every unit edge between a white pixel and a
//!    black (or out-of-image) one. Pixels are independent, so this stage runs
//!    over horizontal bands in parallel when the `parallel` feature is on.
//! 2. [`trace_contours`] links the edges into closed loops in linear time.
//!    Loops around objects run counterclockwise, loops around holes
//!    clockwise, and pixels touching at a single corner end up in separate
//!    loops.
//!
//! [`dilate`] moves each loop vertex to the midpoint of its edge, which fully
//! separates loops that only shared a corner.
//!
//! ```
//! use dilcon::{parse_grid_text, run_pipeline, Orientation};
//!
//! let img = parse_grid_text(b"111\n101\n111\n").unwrap();
//! let doc = run_pipeline(&img, true).unwrap();
//! assert_eq!(doc.contours.len(), 2);
//! assert_eq!(doc.contours[1].kind, Orientation::HoleCw);
//! ```

pub mod bench;
pub mod edges;
pub mod export;
pub mod geometry;
pub mod image;
pub mod parallel;
pub mod trace;

use std::fmt;

pub use crate::edges::{
    edge_endpoints, extract_edges, extract_edges_banded, BoundaryEdge, CornerPoint, EdgeId,
    EdgeSet, EdgeType,
};
pub use crate::export::{
    export_json, export_svg, run_pipeline, run_pipeline_with, trace_image, ContourDocument,
    ContourRecord, Traced,
};
pub use crate::geometry::{
    chains_properly_intersect, chains_share_point, classify, dilate, dilate_all, is_simple_chain,
    signed_area2, DilatedContour, HalfPoint, Orientation,
};
pub use crate::image::{
    load_image, parse_grid_text, parse_pbm, parse_pbm_ascii, parse_pbm_binary, BinaryImage,
    GridCell, ImageError, ImageFormat, PixelCoord,
};
pub use crate::parallel::{WorkerError, Workers};
pub use crate::trace::{
    build_endpoint_index, trace_contours, ConsistencyError, Contour, EndpointIndex, Tracer,
};

/// Pipeline stage that reported an internal-consistency failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Index,
    Tracing,
    Classification,
}

impl Stage {
    fn wrap(self) -> impl Fn(ConsistencyError) -> Error {
        move |source| Error::Consistency {
            stage: self,
            source,
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Index => "endpoint index",
            Stage::Tracing => "contour tracing",
            Stage::Classification => "orientation",
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("load: {0}")]
    Image(#[from] ImageError),
    #[error("{stage}: internal consistency failure: {source}")]
    Consistency {
        stage: Stage,
        #[source]
        source: ConsistencyError,
    },
    #[error("write: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Workers(#[from] WorkerError),
    #[error("bench: the {workers}-worker edge set differs from the single-worker run")]
    BenchMismatch { workers: usize },
}
