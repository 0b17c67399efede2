//! Surface input files and output artifacts (JSON, SVG, OBJ).
//!
//! Input surfaces are JSON objects:
//!
//! ```json
//! {
//!   "params": ["u", "s"],
//!   "coords": [
//!     {"numer": "1 - u^2 - 2*s*u", "denom": "1 + u^2"},
//!     {"numer": "2*u + s*(1 - u^2)", "denom": "1 + u^2"},
//!     {"numer": "s"}
//!   ]
//! }
//! ```
//!
//! A ruled surface may instead declare `"kind": "ruled"` together with a
//! `"ruled"` field holding the nine coefficient polynomials
//! `[[a0, a1, d1], [b0, b1, d2], [c0, c1, d3]]` of
//! `((a0 + a1 s)/d1, (b0 + b1 s)/d2, (c0 + c1 s)/d3)`, all in the first
//! parameter; such surfaces are reparametrized into projectable form before
//! implicitization.
//!
//! All JSON output renders rationals exactly as `"p/q"` strings; decimal
//! fields are 12 significant digits and exist only for human consumption.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::approx::{Polyline3D, SegProv};
use crate::error::{Error, Result};
use crate::geom::BBox;
use crate::plane_topology::{EdgeKind, PlaneGraph, VertexKind};
use crate::poly::parse_poly;
use crate::rat::{format_decimal, format_rat, rat_to_f64, Rat};
use crate::roots::triangular::IsolatingBox;
use crate::roots::RootInterval;
use crate::space_topology::{CoordVal, SpacePoint, SpaceTopology, VertexTag};
use crate::surface::{RationalFunction, RationalSurface, RuledSurface};

/// Significant digits for decimal rendering in OBJ/JSON artifacts.
pub const DECIMAL_DIGITS: usize = 12;

#[derive(Deserialize)]
struct CoordFile {
    numer: String,
    #[serde(default)]
    denom: Option<String>,
}

#[derive(Deserialize)]
struct SurfaceFile {
    params: [String; 2],
    #[serde(default)]
    coords: Vec<CoordFile>,
    #[serde(default)]
    kind: Option<String>,
    #[serde(default)]
    ruled: Option<[[String; 3]; 3]>,
}

/// A parsed input surface, either given directly or as a ruled surface
/// awaiting reparametrization.
#[derive(Clone, Debug)]
pub enum SurfaceInput {
    Plain(RationalSurface),
    Ruled(RuledSurface),
}

impl SurfaceInput {
    /// The surface as given, before any reparametrization.
    pub fn surface(&self) -> Result<RationalSurface> {
        match self {
            SurfaceInput::Plain(s) => Ok(s.clone()),
            SurfaceInput::Ruled(r) => r.to_surface(),
        }
    }
}

pub fn parse_surface_json(text: &str) -> Result<SurfaceInput> {
    let f: SurfaceFile =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("surface file: {e}")))?;
    let [p0, p1] = &f.params;
    if p0 == p1 {
        return Err(Error::InvalidInput("surface parameters must differ".into()));
    }
    for p in [p0, p1] {
        if p.is_empty() || !p.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::InvalidInput(format!("bad parameter name {p:?}")));
        }
    }
    let check_vars = |poly: &crate::poly::MultiPoly, what: &str| -> Result<()> {
        for v in poly.vars() {
            if poly.involves(v) && v != p0 && v != p1 {
                return Err(Error::InvalidInput(format!(
                    "{what} uses undeclared variable {v:?}"
                )));
            }
        }
        Ok(())
    };
    if f.kind.as_deref() == Some("ruled") {
        let rows = f
            .ruled
            .ok_or_else(|| Error::InvalidInput("ruled surface missing \"ruled\" field".into()))?;
        let mut coeffs = Vec::new();
        for row in &rows {
            let mut ps = Vec::new();
            for s in row {
                let p = parse_poly(s)?;
                check_vars(&p, "ruled coefficient")?;
                if p.involves(p1) {
                    return Err(Error::InvalidInput(format!(
                        "ruled coefficient {s:?} must not involve the ruling parameter {p1:?}"
                    )));
                }
                ps.push(p);
            }
            coeffs.push((ps[0].clone(), ps[1].clone(), ps[2].clone()));
        }
        return Ok(SurfaceInput::Ruled(RuledSurface {
            u: p0.clone(),
            s: p1.clone(),
            coeffs: [coeffs[0].clone(), coeffs[1].clone(), coeffs[2].clone()],
        }));
    }
    if f.coords.len() != 3 {
        return Err(Error::InvalidInput(format!(
            "expected 3 coordinates, got {}",
            f.coords.len()
        )));
    }
    let mut coords = Vec::new();
    for c in &f.coords {
        let n = parse_poly(&c.numer)?;
        check_vars(&n, "coordinate numerator")?;
        let d = match &c.denom {
            Some(s) => {
                let d = parse_poly(s)?;
                check_vars(&d, "coordinate denominator")?;
                d
            }
            None => crate::poly::MultiPoly::one(),
        };
        coords.push(RationalFunction::new(n, d)?);
    }
    Ok(SurfaceInput::Plain(RationalSurface::new(
        [p0.clone(), p1.clone()],
        [coords[0].clone(), coords[1].clone(), coords[2].clone()],
    )))
}

pub fn load_surface(path: &Path) -> Result<SurfaceInput> {
    let text = std::fs::read_to_string(path)?;
    parse_surface_json(&text)
}

fn dec_value(r: &Rat) -> Value {
    Value::String(format_decimal(r, DECIMAL_DIGITS))
}

fn interval_value(i: &RootInterval) -> Value {
    match i {
        RootInterval::Exact(r) => json!({ "exact": format_rat(r) }),
        RootInterval::Open(a, b) => json!({ "lo": format_rat(a), "hi": format_rat(b) }),
    }
}

fn box_value(b: &IsolatingBox) -> Value {
    json!({
        "v": interval_value(&b.v.interval),
        "t": interval_value(&b.t),
    })
}

fn coord_value(c: &CoordVal) -> Value {
    match c {
        CoordVal::Exact(r) => json!({
            "exact": format_rat(r),
            "approx": format_decimal(r, DECIMAL_DIGITS),
        }),
        CoordVal::Approx(i) => json!({
            "lo": format_rat(&i.lo),
            "hi": format_rat(&i.hi),
            "approx": format_decimal(&i.mid(), DECIMAL_DIGITS),
        }),
    }
}

fn point_value(p: &SpacePoint) -> Value {
    Value::Array(p.0.iter().map(coord_value).collect())
}

fn tag_name(t: &VertexTag) -> &'static str {
    match t {
        VertexTag::Singular => "singular",
        VertexTag::Cusp => "cusp",
        VertexTag::SelfIntersection => "self-intersection",
        VertexTag::Irregular => "irregular",
        VertexTag::Boundary => "boundary",
        VertexTag::Injected => "injected",
    }
}

fn bbox_value(b: &BBox) -> Value {
    json!({
        "va": format_rat(&b.va), "vb": format_rat(&b.vb),
        "ta": format_rat(&b.ta), "tb": format_rat(&b.tb),
    })
}

pub fn plane_graph_json(pg: &PlaneGraph) -> Value {
    let columns: Vec<Value> = pg
        .columns
        .iter()
        .zip(&pg.column_on_vertical)
        .map(|(c, on_v)| {
            let mut o = match &c.interval {
                RootInterval::Exact(r) => json!({ "exact": format_rat(r) }),
                RootInterval::Open(a, b) => json!({ "lo": format_rat(a), "hi": format_rat(b) }),
            };
            o["on_vertical"] = Value::Bool(*on_v);
            o["approx"] = dec_value(&c.approx());
            o
        })
        .collect();
    let slabs: Vec<Value> = pg
        .slab_samples
        .iter()
        .zip(&pg.slab_counts)
        .map(|(s, n)| json!({ "sample": format_rat(s), "branches": n }))
        .collect();
    let vertices: Vec<Value> = pg
        .vertices
        .iter()
        .map(|v| {
            json!({
                "column": v.column,
                "t": interval_value(&v.t),
                "kind": match v.kind {
                    VertexKind::Curve => "curve",
                    VertexKind::VerticalEnd => "vertical-end",
                },
            })
        })
        .collect();
    let edges: Vec<Value> = pg.edges.iter().map(|e| edge_kind_json(e.from, e.to, &e.kind)).collect();
    json!({
        "params": pg.params,
        "bbox": bbox_value(&pg.bbox),
        "main": pg.g_main.to_string(),
        "vertical": pg.vertical.to_string(),
        "columns": columns,
        "slabs": slabs,
        "vertices": vertices,
        "edges": edges,
        "components": pg.components(),
        "cycle_rank": pg.cycle_rank(),
    })
}

fn edge_kind_json(from: usize, to: usize, kind: &EdgeKind) -> Value {
    match kind {
        EdgeKind::Branch { slab, ordinal } => json!({
            "from": from, "to": to, "kind": "branch",
            "slab": slab, "ordinal": ordinal,
        }),
        EdgeKind::Vertical => json!({ "from": from, "to": to, "kind": "vertical" }),
    }
}

pub fn space_graph_json(st: &SpaceTopology) -> Value {
    let vertices: Vec<Value> = st
        .graph
        .vertices
        .iter()
        .map(|v| {
            json!({
                "point": point_value(&v.point),
                "tags": v.tags.iter().map(|t| tag_name(t)).collect::<Vec<_>>(),
                "preimages": v.preimages.iter().map(box_value).collect::<Vec<_>>(),
                "plane_vertices": v.plane_vertices,
            })
        })
        .collect();
    let edges: Vec<Value> = st
        .graph
        .edges
        .iter()
        .map(|e| {
            let mut o = edge_kind_json(e.from, e.to, &e.kind);
            o["plane_edge"] = match e.plane_edge {
                Some(i) => json!(i),
                None => Value::Null,
            };
            o
        })
        .collect();
    let sys = |s: &crate::space_topology::SystemSolutions| {
        json!({
            "common_locus": s.common_locus.as_ref().map(|p| p.to_string()),
            "points": s.points.iter().map(box_value).collect::<Vec<_>>(),
        })
    };
    let groups: Vec<Value> = st
        .chars
        .groups
        .iter()
        .map(|g| {
            json!({
                "space_point": point_value(&g.space_point),
                "preimages": g.points.iter().map(box_value).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "vertices": vertices,
        "edges": edges,
        "components": st.graph.components(),
        "cycle_rank": st.graph.cycle_rank(),
        "character_points": {
            "singular": sys(&st.chars.singular),
            "irregular": sys(&st.chars.irregular),
            "self_intersections": groups,
        },
    })
}

pub fn curve_json(lines: &[Polyline3D], epsilon: &Rat) -> Value {
    let polylines: Vec<Value> = lines
        .iter()
        .map(|l| {
            let points: Vec<Value> = l
                .points
                .iter()
                .map(|p| {
                    json!({
                        "x": dec_value(&p.pos[0]),
                        "y": dec_value(&p.pos[1]),
                        "z": dec_value(&p.pos[2]),
                        "v": format_rat(&p.v),
                        "t": format_rat(&p.t),
                        "vertex": p.vertex.map(|i| json!(i)).unwrap_or(Value::Null),
                    })
                })
                .collect();
            let segments: Vec<Value> = l
                .provs
                .iter()
                .map(|s| match s {
                    SegProv::Branch { ordinal } => json!({ "kind": "branch", "ordinal": ordinal }),
                    SegProv::Vertical { column } => json!({
                        "kind": "vertical",
                        "column": interval_value(&column.interval),
                    }),
                })
                .collect();
            json!({
                "closed": l.is_closed(),
                "points": points,
                "segments": segments,
            })
        })
        .collect();
    json!({
        "epsilon": format_rat(epsilon),
        "polyline_count": lines.len(),
        "polylines": polylines,
    })
}

/// Wavefront OBJ: shared vertex list, one `l` record per polyline.
pub fn curve_obj(lines: &[Polyline3D]) -> String {
    let mut out = String::from("# intersection curve polylines\n");
    let mut base = 1usize;
    for l in lines {
        for p in &l.points {
            let _ = writeln!(
                out,
                "v {} {} {}",
                format_decimal(&p.pos[0], DECIMAL_DIGITS),
                format_decimal(&p.pos[1], DECIMAL_DIGITS),
                format_decimal(&p.pos[2], DECIMAL_DIGITS)
            );
        }
        let _ = write!(out, "l");
        for i in 0..l.points.len() {
            let _ = write!(out, " {}", base + i);
        }
        out.push('\n');
        base += l.points.len();
    }
    out
}

/// SVG rendering of the plane topology graph: the box, column lines, and
/// straight edges between vertex representatives.
pub fn plane_graph_svg(pg: &PlaneGraph) -> String {
    const W: f64 = 640.0;
    const H: f64 = 640.0;
    const M: f64 = 40.0;
    let va = rat_to_f64(&pg.bbox.va);
    let vb = rat_to_f64(&pg.bbox.vb);
    let ta = rat_to_f64(&pg.bbox.ta);
    let tb = rat_to_f64(&pg.bbox.tb);
    let sx = |v: f64| M + (v - va) / (vb - va) * (W - 2.0 * M);
    let sy = |t: f64| H - M - (t - ta) / (tb - ta) * (H - 2.0 * M);
    let fmt = |x: f64| format!("{x:.2}");

    let vpos = |idx: usize| -> (f64, f64) {
        let v = &pg.vertices[idx];
        let c = rat_to_f64(&pg.columns[v.column].approx());
        let t = rat_to_f64(&(&(v.t.lo() + v.t.hi()) / &crate::rat::rat_i(2)));
        (sx(c), sy(t))
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">"
    );
    let _ = writeln!(
        s,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#999\"/>",
        fmt(M),
        fmt(M),
        fmt(W - 2.0 * M),
        fmt(H - 2.0 * M)
    );
    for (c, on_v) in pg.columns.iter().zip(&pg.column_on_vertical) {
        let x = sx(rat_to_f64(&c.approx()));
        let color = if *on_v { "#c33" } else { "#ddd" };
        let _ = writeln!(
            s,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-dasharray=\"3 3\"/>",
            fmt(x),
            fmt(M),
            fmt(x),
            fmt(H - M)
        );
    }
    for e in &pg.edges {
        let (x1, y1) = vpos(e.from);
        let (x2, y2) = vpos(e.to);
        let color = match e.kind {
            EdgeKind::Branch { .. } => "#06c",
            EdgeKind::Vertical => "#c33",
        };
        let _ = writeln!(
            s,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"1.5\"/>",
            fmt(x1),
            fmt(y1),
            fmt(x2),
            fmt(y2)
        );
    }
    for i in 0..pg.vertices.len() {
        let (x, y) = vpos(i);
        let _ = writeln!(
            s,
            "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#000\"/>",
            fmt(x),
            fmt(y)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Serialize a JSON value with a stable layout and a trailing newline.
pub fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable value");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i};
    use std::collections::BTreeMap;

    #[test]
    fn parses_plain_surface() {
        let text = r#"{
            "params": ["u", "s"],
            "coords": [
                {"numer": "1 - u^2 - 2*s*u", "denom": "1 + u^2"},
                {"numer": "2*u + s*(1 - u^2)", "denom": "1 + u^2"},
                {"numer": "s"}
            ]
        }"#;
        let s = parse_surface_json(text).unwrap().surface().unwrap();
        let p = s.eval(&rat_i(0), &rat(1, 2)).unwrap();
        assert_eq!(p, [rat_i(1), rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn parses_ruled_surface_and_converts() {
        let text = r#"{
            "params": ["u", "s"],
            "kind": "ruled",
            "ruled": [
                ["1 - u^2", "-2*u", "1 + u^2"],
                ["2*u", "1 - u^2", "1 + u^2"],
                ["0", "1", "1"]
            ]
        }"#;
        let s = match parse_surface_json(text).unwrap() {
            SurfaceInput::Ruled(r) => r,
            _ => panic!("expected ruled"),
        };
        let surf = s.to_surface().unwrap();
        let mut asn = BTreeMap::new();
        asn.insert("u".to_string(), rat_i(1));
        asn.insert("s".to_string(), rat_i(3));
        assert_eq!(surf.coords[0].eval(&asn).unwrap(), rat_i(-3));
        assert_eq!(surf.coords[2].eval(&asn).unwrap(), rat_i(3));
    }

    #[test]
    fn rejects_undeclared_variables() {
        let text = r#"{
            "params": ["u", "s"],
            "coords": [
                {"numer": "w"},
                {"numer": "u"},
                {"numer": "s"}
            ]
        }"#;
        assert!(parse_surface_json(text).is_err());
    }

    #[test]
    fn obj_indices_are_one_based_and_contiguous() {
        use crate::approx::{PolyPoint, Polyline3D, SegProv};
        let pt = |x: i64| PolyPoint {
            pos: [rat_i(x), rat_i(0), rat_i(0)],
            v: rat_i(x),
            t: rat_i(0),
            vertex: None,
        };
        let l1 = Polyline3D {
            points: vec![pt(0), pt(1)],
            provs: vec![SegProv::Branch { ordinal: 0 }],
        };
        let l2 = Polyline3D {
            points: vec![pt(2), pt(3), pt(4)],
            provs: vec![SegProv::Branch { ordinal: 0 }, SegProv::Branch { ordinal: 0 }],
        };
        let obj = curve_obj(&[l1, l2]);
        assert!(obj.contains("l 1 2\n"));
        assert!(obj.contains("l 3 4 5\n"));
        assert_eq!(obj.matches("\nv ").count() + 1, 6); // 5 v-lines, first after header
    }
}
