mod common;

use dilcon::{
    export_json, export_svg, parse_grid_text, run_pipeline, ContourDocument, Orientation,
};
use proptest::prelude::*;

fn svg_paths(svg: &str) -> Vec<(String, Vec<(f64, f64)>)> {
    svg.lines()
        .filter(|l| l.starts_with("<path"))
        .map(|l| {
            let class = l.split("class=\"").nth(1).unwrap().split('"').next().unwrap();
            let d = l.split("d=\"").nth(1).unwrap().split('"').next().unwrap();
            let nums: Vec<f64> = d
                .split_whitespace()
                .filter(|t| !matches!(*t, "M" | "L" | "Z"))
                .map(|t| t.parse().unwrap())
                .collect();
            (class.to_string(), nums.chunks(2).map(|c| (c[0], c[1])).collect())
        })
        .collect()
}

fn area2(points: &[(f64, f64)]) -> f64 {
    let n = points.len();
    (0..n)
        .map(|i| {
            let (p, q) = (points[i], points[(i + 1) % n]);
            p.0 * q.1 - q.0 * p.1
        })
        .sum()
}

#[test]
fn single_pixel_pipeline() {
    let img = parse_grid_text(b"1").unwrap();
    let raw = run_pipeline(&img, false).unwrap();
    assert_eq!(raw.contours.len(), 1);
    assert_eq!(raw.contours[0].kind, Orientation::ObjectCcw);
    assert_eq!(raw.contours[0].length, 4);
    assert_eq!(raw.contours[0].points, vec![[0, 0], [2, 0], [2, 2], [0, 2]]);

    let svg = run_pipeline(&img, true).unwrap().to_svg();
    let paths = svg_paths(&svg);
    assert_eq!(paths.len(), 1);
    assert_eq!(paths[0].1.len(), 4);
    assert!(svg.contains(r#"d="M 0.5 "#));
}

#[test]
fn black_image_has_no_contours() {
    let img = parse_grid_text(b"0000\n0000").unwrap();
    let doc = run_pipeline(&img, false).unwrap();
    assert!(doc.contours.is_empty());
    assert_eq!(doc.to_json(), r#"{"width":4,"height":2,"contours":[]}"#);
}

#[test]
fn ring_svg_has_opposite_windings() {
    let img = parse_grid_text(b"111\n101\n111").unwrap();
    let doc = run_pipeline(&img, true).unwrap();
    assert_eq!(doc.contours.len(), 2);
    let paths = svg_paths(&doc.to_svg());
    assert_eq!(paths.len(), 2);
    assert_eq!(paths[0].0, "object");
    assert_eq!(paths[1].0, "hole");
    let (a, b) = (area2(&paths[0].1), area2(&paths[1].1));
    assert!(a * b < 0.0);
    // every coordinate ends in .0 or .5
    for (_, pts) in &paths {
        for &(x, y) in pts {
            assert_eq!((x * 2.0).fract(), 0.0);
            assert_eq!((y * 2.0).fract(), 0.0);
        }
    }
}

#[test]
fn files_are_written_and_stable() {
    let dir = tempfile::tempdir().unwrap();
    let img = common::random_image(30, 20, 4, 0.5);
    let doc = run_pipeline(&img, true).unwrap();

    let json = dir.path().join("out.json");
    export_json(&doc, &json).unwrap();
    let reloaded = ContourDocument::from_json(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(reloaded, doc);

    let (svg1, svg2) = (dir.path().join("1.svg"), dir.path().join("2.svg"));
    export_svg(&doc, &svg1).unwrap();
    export_svg(&run_pipeline(&img, true).unwrap(), &svg2).unwrap();
    assert_eq!(std::fs::read(svg1).unwrap(), std::fs::read(svg2).unwrap());
}

#[test]
fn record_count_matches_trace() {
    let img = common::random_image(24, 24, 9, 0.4);
    for dilated in [false, true] {
        let doc = run_pipeline(&img, dilated).unwrap();
        for (i, c) in doc.contours.iter().enumerate() {
            assert_eq!(c.index, i);
            assert_eq!(c.dilated, dilated);
            assert_eq!(c.length, c.points.len());
            assert_eq!(c.signed_area2 > 0, c.kind == Orientation::ObjectCcw);
        }
    }
}

proptest! {
    #[test]
    fn json_roundtrip(seed in any::<u64>(), w in 1u32..20, h in 1u32..20, dilated in any::<bool>()) {
        let doc = run_pipeline(&common::random_image(w, h, seed, 0.5), dilated).unwrap();
        prop_assert_eq!(ContourDocument::from_json(&doc.to_json()).unwrap(), doc);
    }
}
