//! Running the whole pipeline and writing its result as JSON or SVG.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::edges::EdgeSet;
use crate::geometry::{dilate_all, signed_area2, HalfPoint, Orientation};
use crate::image::BinaryImage;
use crate::parallel::Workers;
use crate::trace::{build_endpoint_index, trace_contours, Contour};
use crate::{Error, Stage};

/// One traced contour. Points are in half-pixel units, y up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContourRecord {
    pub index: usize,
    pub kind: Orientation,
    pub dilated: bool,
    pub points: Vec<[i64; 2]>,
    /// Twice the signed area of `points`, in half-unit coordinates.
    pub signed_area2: i64,
    pub length: usize,
}

/// All contours of one image, in trace order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContourDocument {
    pub width: u32,
    pub height: u32,
    pub contours: Vec<ContourRecord>,
}

/// Intermediate products of one pipeline run.
#[derive(Debug, Clone)]
pub struct Traced {
    pub edges: EdgeSet,
    pub contours: Vec<Contour>,
    pub orientations: Vec<Orientation>,
}

/// Extracts, traces and classifies the contours of `img`.
pub fn trace_image(img: &BinaryImage, workers: &Workers) -> Result<Traced, Error> {
    let edges = workers.extract_edges(img);
    let index = build_endpoint_index(&edges).map_err(Stage::Index.wrap())?;
    let contours = trace_contours(&edges, &index).map_err(Stage::Tracing.wrap())?;
    let orientations = workers
        .map_ordered(&contours, Contour::orientation)
        .into_iter()
        .collect::<Result<Vec<_>, _>>()
        .map_err(Stage::Classification.wrap())?;
    Ok(Traced {
        edges,
        contours,
        orientations,
    })
}

pub fn run_pipeline(img: &BinaryImage, dilated: bool) -> Result<ContourDocument, Error> {
    run_pipeline_with(img, dilated, &Workers::default())
}

pub fn run_pipeline_with(
    img: &BinaryImage,
    dilated: bool,
    workers: &Workers,
) -> Result<ContourDocument, Error> {
    let traced = trace_image(img, workers)?;
    let chains: Vec<Vec<HalfPoint>> = if dilated {
        dilate_all(&traced.contours, &traced.edges, workers)
            .into_iter()
            .map(|d| d.points)
            .collect()
    } else {
        traced
            .contours
            .iter()
            .map(|c| c.points.iter().map(|&p| HalfPoint::from(p)).collect())
            .collect()
    };

    let contours = chains
        .into_iter()
        .zip(&traced.orientations)
        .enumerate()
        .map(|(index, (points, &kind))| {
            let area2 = signed_area2(&points).expect("contours have at least four points");
            ContourRecord {
                index,
                kind,
                dilated,
                signed_area2: area2,
                length: points.len(),
                points: points.iter().map(|p| [p.x2, p.y2]).collect(),
            }
        })
        .collect();

    Ok(ContourDocument {
        width: img.width(),
        height: img.height(),
        contours,
    })
}

impl ContourDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self, Error> {
        Ok(serde_json::from_str(s)?)
    }

    /// Renders one closed path per contour with the y axis pointing down.
    pub fn to_svg(&self) -> String {
        let mut out = String::new();
        let (w, h) = (self.width, self.height);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {h}" width="{w}" height="{h}">"#
        );
        out.push_str(concat!(
            "<style>",
            "path{fill:none;stroke-width:1;vector-effect:non-scaling-stroke}",
            ".object{stroke:#1f5fbf}",
            ".hole{stroke:#d03020;stroke-dasharray:2 1}",
            "</style>\n",
        ));
        let flip = 2 * i64::from(h);
        for c in &self.contours {
            let class = match c.kind {
                Orientation::ObjectCcw => "object",
                Orientation::HoleCw => "hole",
            };
            let mut d = String::new();
            for (k, [x2, y2]) in c.points.iter().enumerate() {
                let cmd = if k == 0 { "M" } else { " L" };
                let _ = write!(d, "{cmd} {} {}", half(*x2), half(flip - y2));
            }
            d.push_str(" Z");
            let _ = writeln!(out, r#"<path class="{class}" d="{d}"/>"#);
        }
        out.push_str("</svg>\n");
        out
    }
}

/// Formats a half-unit value as a decimal ending in `.0` or `.5`.
fn half(v2: i64) -> String {
    let sign = if v2 < 0 { "-" } else { "" };
    let v = v2.unsigned_abs();
    format!("{sign}{}.{}", v / 2, if v.is_multiple_of(2) { 0 } else { 5 })
}

pub fn export_json(doc: &ContourDocument, path: impl AsRef<Path>) -> Result<(), Error> {
    fs::write(path, doc.to_json())?;
    Ok(())
}

pub fn export_svg(doc: &ContourDocument, path: impl AsRef<Path>) -> Result<(), Error> {
    fs::write(path, doc.to_svg())?;
    Ok(())
}
