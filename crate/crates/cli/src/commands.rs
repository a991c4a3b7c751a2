use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use caradepth::caradepth::{
    caradepth_partition_general, caradepth_partition_planar, certify_partition, Certification,
    TransversalPartition,
};
use caradepth::depth::{centerpoint, simplicial_depth, tukey_depth, DepthReport, DepthWitness};
use caradepth::geom::rational::{format_rational, parse_rational};
use caradepth::geom::{Line, OrientedHyperplane, Point, PointSet, Rational};
use caradepth::helly::{depth_helly_witness, kirchberger_witness, HellyWitness};
use caradepth::io::{
    emit_points, gen_random, input_digest, read_family, read_points, render_svg, Distribution,
    Format, Instance, RunReport,
};
use caradepth::oracles::{oracle_transversal_containment, OracleBudget};
use caradepth::projection::{projection_depth, projection_depth_wrt};
use caradepth::{Error, Result};
use serde_json::{json, Value};

use crate::figures;
use crate::{Cli, Command, Input, PartitionMethod};

pub fn run(cli: &Cli) -> Result<String> {
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Tukey(input) => tukey(input)?,
        Command::Simplicial(input) => simplicial(input)?,
        Command::Centerpoint { points } => center(points)?,
        Command::Projdepth { input, pi } => projdepth(input, pi.as_deref())?,
        Command::Partition { input, method } => partition(input, *method)?,
        Command::Certify { report } => certify(report)?,
        Command::Helly { family, beta } => helly(family, beta)?,
        Command::Kirchberger { red, blue, beta } => kirchberger(red, blue, beta)?,
        Command::Gen {
            n,
            dim,
            dist,
            seed,
            out,
        } => gen(*n, *dim, dist, *seed, out.as_deref())?,
        Command::Plot { report } => {
            let text = std::fs::read_to_string(report)
                .map_err(|e| Error::Io(format!("{}: {e}", report.display())))?;
            RunReport::from_json(&text)?
        }
    };
    if !cli.no_timing {
        let ms = start.elapsed().as_secs_f64() * 1e3;
        report.timings_ms = Some(BTreeMap::from([("total".to_string(), ms)]));
    }
    if let Some(path) = &cli.svg {
        std::fs::write(path, render_svg(&report))
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(report.to_json())
}

fn rat(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn line_json(l: &Line) -> Value {
    json!({ "point": l.point, "direction": l.direction.iter().map(format_rational).collect::<Vec<_>>() })
}

fn parse_beta(text: &str) -> Result<Rational> {
    parse_rational(text).map_err(|e| Error::Parse(format!("--beta: {e}")))
}

/// Points, query and the digest of their canonical text.
fn load(input: &Input) -> Result<(Instance, Point, String)> {
    let inst = read_points(&input.points, None)?;
    let q = match (&input.query, &inst.query) {
        (Some(text), _) => Point::parse(text).map_err(|e| Error::Parse(format!("--query: {e}")))?,
        (None, Some(q)) => q.clone(),
        (None, None) => return Err(Error::Precondition("no query point given".into())),
    };
    inst.points.check_query(&q)?;
    let digest = input_digest(&[&emit_points(&inst.points, Some(&q), Format::Csv)]);
    Ok((inst, q, digest))
}

fn depth_outputs(r: &DepthReport, n: u64) -> Value {
    let mut v = json!({
        "raw": r.raw,
        "n": n,
        "normalized": rat(&r.normalized),
    });
    match &r.witness {
        DepthWitness::Halfspace(h) => v["witness_halfspace"] = json!(h),
        DepthWitness::Tuple(t) => v["witness_tuple"] = json!(t),
        DepthWitness::None => {}
    }
    v
}

fn tukey(input: &Input) -> Result<RunReport> {
    let (inst, q, digest) = load(input)?;
    let r = tukey_depth(&inst.points, &q)?;
    let mut report = RunReport::new("tukey", digest, depth_outputs(&r, inst.points.n()));
    report.outputs["query"] = json!(q);
    report.warnings = inst.warnings;
    if inst.points.dim() == 2 {
        report.figure = Some(figures::depth(&inst.points, &q, &r));
    }
    Ok(report)
}

fn simplicial(input: &Input) -> Result<RunReport> {
    let (inst, q, digest) = load(input)?;
    let r = simplicial_depth(&inst.points, &q)?;
    let mut out = depth_outputs(&r, inst.points.n());
    out["boundary_tuples"] = json!(r.boundary_tuples);
    out["query"] = json!(q);
    let mut report = RunReport::new("simplicial", digest, out);
    report.warnings = inst.warnings;
    if inst.points.dim() == 2 {
        report.figure = Some(figures::depth(&inst.points, &q, &r));
    }
    Ok(report)
}

fn center(points: &Path) -> Result<RunReport> {
    let inst = read_points(points, None)?;
    let digest = input_digest(&[&emit_points(&inst.points, None, Format::Csv)]);
    let (c, r) = centerpoint(&inst.points)?;
    let n = inst.points.n();
    let d = inst.points.dim() as u64;
    let mut out = depth_outputs(&r, n);
    out["point"] = json!(c);
    out["guaranteed"] = json!(n.div_ceil(d + 1));
    let mut report = RunReport::new("centerpoint", digest, out);
    report.warnings = inst.warnings;
    if inst.points.dim() == 2 {
        report.figure = Some(figures::depth(&inst.points, &c, &r));
    }
    Ok(report)
}

fn projdepth(input: &Input, pi: Option<&str>) -> Result<RunReport> {
    let (inst, q, digest) = load(input)?;
    let r = match pi {
        Some(text) => {
            let normal = Point::parse(text).map_err(|e| Error::Parse(format!("--pi: {e}")))?;
            let plane = OrientedHyperplane::through(&q, normal.into_coords())?;
            projection_depth_wrt(&inst.points, &q, &plane)?
        }
        None => projection_depth(&inst.points, &q)?,
    };
    let out = json!({
        "value": rat(&r.value),
        "query": q,
        "pi": r.witness_pi,
        "witness_line": r.witness_line.as_ref().map(line_json),
        "global": pi.is_none(),
    });
    let mut report = RunReport::new("projdepth", digest, out);
    report.warnings = inst.warnings;
    report.figure = Some(figures::projection(&inst.points, &q, &r));
    Ok(report)
}

fn certification_json(c: &Certification) -> Value {
    json!({
        "holds": c.holds,
        "exhaustive": c.exhaustive,
        "checked": c.checked.to_string(),
        "boundary": c.boundary.to_string(),
        "counterexample": c.counterexample,
    })
}

fn partition(input: &Input, method: PartitionMethod) -> Result<RunReport> {
    let (inst, q, digest) = load(input)?;
    let p: TransversalPartition = match method {
        PartitionMethod::Planar => caradepth_partition_planar(&inst.points, &q)?,
        PartitionMethod::Samestype => caradepth_partition_general(&inst.points, &q)?,
    };
    let parts: Vec<Value> = p
        .indices
        .iter()
        .zip(&p.parts)
        .map(|(ix, s)| json!({ "indices": ix, "points": s.points() }))
        .collect();
    let g = &p.guarantee;
    let mut out = json!({
        "method": g.method.name(),
        "query": q,
        "n": inst.points.n(),
        "sizes": p.sizes(),
        "parts": parts,
        "product": g.product.to_string(),
        "bound": rat(&g.bound),
        "bound_approx": caradepth::geom::rational::to_f64(&g.bound),
        "sigma_raw": g.sigma_raw,
        "lines": p.lines.iter().map(line_json).collect::<Vec<_>>(),
    });
    if let Some(t) = &p.trace {
        out["trace"] = json!({
            "bisector": line_json(&t.bisector),
            "t_count": t.t_count,
            "sigma": t.sigma,
            "m": t.m,
            "big_m": t.big_m,
            "i_star": t.i_star,
            "mirrored": t.mirrored,
            "down_majority": t.down_majority,
            "x3_quarter": t.x3_quarter,
        });
    }
    let mut report = RunReport::new("partition", digest, out);
    report.certification = p.certification.as_ref().map(certification_json);
    report.warnings = inst.warnings;
    report.figure = Some(figures::partition(&inst.points, &q, &p));
    Ok(report)
}

/// Rebuilds the parts from a partition report and checks them twice: with
/// the library predicate and with the brute-force oracle.
fn certify(path: &Path) -> Result<RunReport> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let src = RunReport::from_json(&text)?;
    let bad = |what: &str| Error::Parse(format!("report has no valid {what}"));
    let q: Point =
        serde_json::from_value(src.outputs["query"].clone()).map_err(|_| bad("query"))?;
    let raw_parts = src.outputs["parts"]
        .as_array()
        .ok_or_else(|| bad("parts"))?;
    let mut parts = Vec::with_capacity(raw_parts.len());
    for p in raw_parts {
        let pts: Vec<Point> =
            serde_json::from_value(p["points"].clone()).map_err(|_| bad("part points"))?;
        parts.push(PointSet::new(q.dim(), pts)?);
    }
    let c = certify_partition(&parts, &q)?;
    let raw: Vec<Vec<Vec<Rational>>> = parts
        .iter()
        .map(|s| s.points().iter().map(|p| p.coords().to_vec()).collect())
        .collect();
    let (oracle, sampled) =
        oracle_transversal_containment(&raw, q.coords(), OracleBudget::default());
    let out = json!({
        "source_operation": src.operation,
        "source_digest": src.inputs_digest,
        "holds": c.holds,
        "oracle_holds": oracle,
        "oracle_sampled": sampled,
        "agree": c.holds == oracle,
    });
    let mut report = RunReport::new("certify", input_digest(&[&text]), out);
    report.certification = Some(certification_json(&c));
    report.figure = src.figure;
    if c.holds != oracle {
        return Err(Error::Internal("certification and oracle disagree".into()));
    }
    Ok(report)
}

fn helly(dir: &Path, beta: &str) -> Result<RunReport> {
    let beta_r = parse_beta(beta)?;
    let (family, warnings) = read_family(dir)?;
    let texts: Vec<String> = family
        .bodies()
        .iter()
        .map(|b| format!("{}\n{}", b.id, emit_points(&b.vertices, None, Format::Csv)))
        .collect();
    let mut parts: Vec<&str> = texts.iter().map(String::as_str).collect();
    let beta_text = format_rational(&beta_r);
    parts.push(&beta_text);
    let w = depth_helly_witness(&family, &beta_r)?;
    let ids: Vec<&str> = family.bodies().iter().map(|b| b.id.as_str()).collect();
    let out = match &w {
        HellyWitness::Intersecting {
            subfamily,
            common_point,
        } => json!({
            "kind": "intersecting",
            "beta": beta_text,
            "n": family.len(),
            "subfamily": subfamily,
            "subfamily_ids": subfamily.iter().map(|&i| ids[i]).collect::<Vec<_>>(),
            "common_point": common_point,
        }),
        HellyWitness::Colorful {
            color_classes,
            verified_empty,
            exhaustive,
            checked,
            q_star,
            f_value,
            nearest,
        } => json!({
            "kind": "colorful",
            "beta": beta_text,
            "n": family.len(),
            "color_classes": color_classes,
            "sizes": color_classes.iter().map(Vec::len).collect::<Vec<_>>(),
            "verified_empty": verified_empty,
            "exhaustive": exhaustive,
            "checked": checked.to_string(),
            "q_star": q_star,
            "f_value_squared": rat(f_value),
            "nearest": nearest,
        }),
    };
    let mut report = RunReport::new("helly", input_digest(&parts), out);
    report.warnings = warnings;
    report.figure = Some(figures::helly(&family, &w));
    Ok(report)
}

fn kirchberger(red: &Path, blue: &Path, beta: &str) -> Result<RunReport> {
    let beta_r = parse_beta(beta)?;
    let r = read_points(red, None)?;
    let b = read_points(blue, None)?;
    let beta_text = format_rational(&beta_r);
    let digest = input_digest(&[
        &emit_points(&r.points, None, Format::Csv),
        &emit_points(&b.points, None, Format::Csv),
        &beta_text,
    ]);
    if !r.points.is_unit_weighted() || !b.points.is_unit_weighted() {
        return Err(Error::Precondition(
            "red and blue points must be distinct within each color".into(),
        ));
    }
    let w = kirchberger_witness(&r.points, &b.points, &beta_r)?;
    let n = r.points.len() + b.points.len();
    let out = match &w {
        Some(w) => json!({
            "found": true,
            "beta": beta_text,
            "n": n,
            "red": w.red,
            "blue": w.blue,
            "size": w.red.len() + w.blue.len(),
            "plane": w.plane,
            "origin_depth": rat(&w.origin_depth),
        }),
        None => json!({ "found": false, "beta": beta_text, "n": n }),
    };
    let mut report = RunReport::new("kirchberger", digest, out);
    report.warnings = r.warnings.into_iter().chain(b.warnings).collect();
    report.figure = Some(figures::kirchberger(&r.points, &b.points, w.as_ref()));
    Ok(report)
}

fn gen(n: usize, dim: usize, dist: &str, seed: u64, out: Option<&Path>) -> Result<RunReport> {
    let dist: Distribution = dist.parse()?;
    let g = gen_random(n, dim, dist, seed)?;
    if let Some(path) = out {
        let text = emit_points(&g.points, None, Format::from_path(path));
        std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    let params = format!("{n} {dim} {dist} {seed}");
    let mut report = RunReport::new(
        "gen",
        input_digest(&[&params]),
        json!({
            "n": n,
            "dim": dim,
            "distribution": dist.to_string(),
            "resamples": g.resamples,
            "points": g.points.points(),
        }),
    );
    report.seed = Some(seed);
    if dim == 2 {
        report.figure = Some(figures::points(&g.points));
    }
    Ok(report)
}
