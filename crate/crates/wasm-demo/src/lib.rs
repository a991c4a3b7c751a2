//! JSON-in, JSON-out bindings for the static demo page in `www/`.
//!
//! Points arrive as CSV text ("x,y" per line) and the query as "x,y".
//! Every result carries float copies of the geometry for drawing next to
//! the exact rational strings.

use caradepth::caradepth::caradepth_partition_planar;
use caradepth::depth::{centerpoint as center, tukey_depth, DepthWitness};
use caradepth::geom::rational::{format_rational, to_f64};
use caradepth::geom::{Line, Point, PointSet};
use caradepth::io::{parse_points, Format};
use caradepth::Result;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn load(csv: &str) -> Result<PointSet> {
    let inst = parse_points(csv, Format::Csv)?;
    if inst.points.dim() != 2 {
        return Err(caradepth::Error::UnsupportedDimension(inst.points.dim()));
    }
    Ok(inst.points)
}

fn xy(p: &Point) -> [f64; 2] {
    [to_f64(&p[0]), to_f64(&p[1])]
}

fn line(l: &Line) -> Value {
    json!({ "point": xy(&l.point), "direction": [to_f64(&l.direction[0]), to_f64(&l.direction[1])] })
}

pub fn tukey_json(csv: &str, query: &str) -> Result<Value> {
    let set = load(csv)?;
    let q = Point::parse(query)?;
    let r = tukey_depth(&set, &q)?;
    let halfspace = match &r.witness {
        DepthWitness::Halfspace(h) => {
            let n = h.boundary.normal();
            Some(json!({
                "normal": [to_f64(&n[0]), to_f64(&n[1])],
                "offset": to_f64(h.boundary.offset()),
                "negative": h.side == caradepth::geom::Side::Negative,
            }))
        }
        _ => None,
    };
    Ok(json!({
        "raw": r.raw,
        "n": set.n(),
        "normalized": format_rational(&r.normalized),
        "halfspace": halfspace,
    }))
}

pub fn centerpoint_json(csv: &str) -> Result<Value> {
    let set = load(csv)?;
    let (c, r) = center(&set)?;
    Ok(json!({
        "point": xy(&c),
        "exact": c.to_strings(),
        "raw": r.raw,
        "guaranteed": set.n().div_ceil(3),
    }))
}

pub fn partition_json(csv: &str, query: &str) -> Result<Value> {
    let set = load(csv)?;
    let q = Point::parse(query)?;
    let p = caradepth_partition_planar(&set, &q)?;
    let mut classes: Vec<Option<usize>> = vec![None; set.len()];
    for (k, ix) in p.indices.iter().enumerate() {
        for &i in ix {
            classes[i] = Some(k);
        }
    }
    let mut lines: Vec<Value> = p.lines.iter().map(line).collect();
    if let Some(t) = &p.trace {
        lines.push(line(&t.bisector));
    }
    Ok(json!({
        "points": set.points().iter().map(xy).collect::<Vec<_>>(),
        "classes": classes,
        "sizes": p.sizes(),
        "product": p.guarantee.product.to_string(),
        "bound": to_f64(&p.guarantee.bound),
        "holds": p.certification.as_ref().map(|c| c.holds),
        "lines": lines,
    }))
}

fn finish(r: Result<Value>) -> std::result::Result<String, JsError> {
    r.map(|v| v.to_string())
        .map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn tukey(csv: &str, query: &str) -> std::result::Result<String, JsError> {
    finish(tukey_json(csv, query))
}

#[wasm_bindgen]
pub fn centerpoint(csv: &str) -> std::result::Result<String, JsError> {
    finish(centerpoint_json(csv))
}

#[wasm_bindgen]
pub fn partition(csv: &str, query: &str) -> std::result::Result<String, JsError> {
    finish(partition_json(csv, query))
}
