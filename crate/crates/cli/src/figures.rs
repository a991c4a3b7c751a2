use caradepth::caradepth::TransversalPartition;
use caradepth::depth::{DepthReport, DepthWitness};
use caradepth::geom::rational::to_f64;
use caradepth::geom::{Line, OrientedHyperplane, Point, PointSet};
use caradepth::helly::{Family, HellyWitness, KirchbergerWitness};
use caradepth::io::{Figure, FigureImage, FigureLine};
use caradepth::projection::ProjectionDepthReport;

fn xy(p: &Point) -> [f64; 2] {
    [to_f64(&p[0]), to_f64(&p[1])]
}

fn line(label: &str, l: &Line) -> FigureLine {
    FigureLine {
        label: label.into(),
        point: xy(&l.point),
        direction: [to_f64(&l.direction[0]), to_f64(&l.direction[1])],
    }
}

fn boundary(label: &str, h: &OrientedHyperplane) -> Option<FigureLine> {
    let n = [to_f64(&h.normal()[0]), to_f64(&h.normal()[1])];
    let nn = n[0] * n[0] + n[1] * n[1];
    if nn == 0.0 {
        return None;
    }
    let c = to_f64(h.offset()) / nn;
    Some(FigureLine {
        label: label.into(),
        point: [n[0] * c, n[1] * c],
        direction: [-n[1], n[0]],
    })
}

pub fn points(set: &PointSet) -> Figure {
    Figure {
        points: set.points().iter().map(xy).collect(),
        classes: vec![None; set.len()],
        ..Figure::default()
    }
}

pub fn depth(set: &PointSet, q: &Point, r: &DepthReport) -> Figure {
    let mut f = points(set);
    f.query = Some(xy(q));
    match &r.witness {
        DepthWitness::Halfspace(h) => f.lines.extend(boundary("witness halfspace", &h.boundary)),
        DepthWitness::Tuple(t) => {
            for &i in t {
                f.classes[i] = Some(0);
            }
        }
        DepthWitness::None => {}
    }
    f
}

pub fn projection(set: &PointSet, q: &Point, r: &ProjectionDepthReport) -> Figure {
    let mut f = points(set);
    f.query = Some(xy(q));
    f.lines.extend(boundary("pi", &r.witness_pi));
    if let Some(l) = &r.witness_line {
        f.lines.push(line("witness line", l));
    }
    for (i, p) in set.points().iter().enumerate() {
        f.classes[i] = Some(if r.witness_pi.side_of(p) > 0 { 0 } else { 2 });
    }
    f
}

/// Parts, the bisecting line, and the central projection of every point
/// through `q` onto a line `h` parallel to the bisector on its lower side.
pub fn partition(set: &PointSet, q: &Point, p: &TransversalPartition) -> Figure {
    let mut f = points(set);
    f.query = Some(xy(q));
    for (k, ix) in p.indices.iter().enumerate() {
        for &i in ix {
            f.classes[i] = Some(k);
        }
    }
    let labels = ["bisecting line", "projection line"];
    for (l, label) in p.lines.iter().zip(labels) {
        f.lines.push(line(label, l));
    }
    let Some(t) = &p.trace else { return f };
    f.lines.push(line("bisecting line", &t.bisector));
    let q0 = xy(q);
    let e = [
        to_f64(&t.bisector.direction[0]),
        to_f64(&t.bisector.direction[1]),
    ];
    let len = e[0].hypot(e[1]);
    let nu = [-e[1] / len, e[0] / len];
    let extent = f
        .points
        .iter()
        .map(|p| (p[0] - q0[0]).hypot(p[1] - q0[1]))
        .fold(0.0, f64::max)
        .max(1e-9);
    let depth = 0.5 * extent;
    f.lines.push(FigureLine {
        label: "h".into(),
        point: [q0[0] - nu[0] * depth, q0[1] - nu[1] * depth],
        direction: e,
    });
    for (i, pt) in f.points.clone().iter().enumerate() {
        let v = [pt[0] - q0[0], pt[1] - q0[1]];
        let s = nu[0] * v[0] + nu[1] * v[1];
        if s.abs() < 1e-12 {
            continue;
        }
        let k = -depth / s;
        let at = [q0[0] + k * v[0], q0[1] + k * v[1]];
        if (at[0] - q0[0]).hypot(at[1] - q0[1]) > 3.0 * extent {
            continue;
        }
        f.images.push(FigureImage {
            at,
            class: f.classes[i],
            up: s > 0.0,
        });
    }
    f
}

pub fn helly(family: &Family, w: &HellyWitness) -> Figure {
    let mut f = Figure {
        bodies: family
            .bodies()
            .iter()
            .map(|b| {
                b.hull_2d()
                    .map(|h| h.iter().map(xy).collect())
                    .unwrap_or_default()
            })
            .collect(),
        body_classes: vec![None; family.len()],
        ..Figure::default()
    };
    match w {
        HellyWitness::Intersecting {
            subfamily,
            common_point,
        } => {
            for &i in subfamily {
                f.body_classes[i] = Some(0);
            }
            f.query = Some(xy(common_point));
        }
        HellyWitness::Colorful {
            color_classes,
            q_star,
            nearest,
            ..
        } => {
            for (k, class) in color_classes.iter().enumerate() {
                for &i in class {
                    f.body_classes[i] = Some(k);
                }
            }
            f.query = Some(xy(q_star));
            f.points = nearest.iter().map(xy).collect();
            f.classes = f.body_classes.clone();
        }
    }
    f
}

pub fn kirchberger(red: &PointSet, blue: &PointSet, w: Option<&KirchbergerWitness>) -> Figure {
    let mut f = Figure::default();
    for (set, class, chosen) in [(red, 0, w.map(|w| &w.red)), (blue, 2, w.map(|w| &w.blue))] {
        for (i, p) in set.points().iter().enumerate() {
            f.points.push(xy(p));
            let kept = chosen.is_none_or(|c| c.contains(&i));
            f.classes.push(kept.then_some(class));
        }
    }
    if let Some(w) = w {
        f.lines.extend(boundary("separating line", &w.plane));
    }
    f
}
