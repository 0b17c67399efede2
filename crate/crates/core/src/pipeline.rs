//! Stage-by-stage pipeline orchestration with serialized-artifact resume.
//!
//! Stages are cumulative prefixes of the full pipeline: `implicitize`
//! stops after the implicit polynomial `F`, `plane-topology` after the
//! plane graph of `G = 0`, `space-topology` after the lifted space graph,
//! and `approximate` (= `all`) after the ε-polylines.  A later stage can
//! resume from a previous run's artifacts: `F.txt` replaces the
//! implicitization, and the polynomials recorded in `plane_graph.json`
//! replace both the implicitization and the substitution.

use std::time::Instant;

use serde_json::{json, Value};

use crate::approx::{approximate, Polyline3D};
use crate::error::{Error, Result};
use crate::geom::BBox;
use crate::implicitize::{implicitize, plane_curve, verify_implicit, PlaneCurve};
use crate::io::{self, SurfaceInput};
use crate::plane_topology::{plane_graph, PlaneGraph};
use crate::poly::{parse_poly, MultiPoly};
use crate::rat::{format_rat, parse_rat, Rat};
use crate::space_topology::{space_topology, SpaceTopology};
use crate::surface::RationalSurface;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Implicitize,
    PlaneTopology,
    SpaceTopology,
    Approximate,
}

impl Stage {
    pub fn parse(s: &str) -> Result<Stage> {
        match s {
            "implicitize" => Ok(Stage::Implicitize),
            "plane-topology" => Ok(Stage::PlaneTopology),
            "space-topology" => Ok(Stage::SpaceTopology),
            "approximate" | "all" => Ok(Stage::Approximate),
            _ => Err(Error::InvalidInput(format!(
                "unknown stage {s:?} (expected implicitize | plane-topology | space-topology | approximate | all)"
            ))),
        }
    }
}

/// Precomputed results recovered from a previous run's artifacts.
#[derive(Clone, Debug, Default)]
pub struct ResumeState {
    pub f: Option<MultiPoly>,
    pub curve: Option<PlaneCurve>,
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub s1: SurfaceInput,
    pub s2: RationalSurface,
    pub bbox: BBox,
    pub epsilon: Rat,
    pub stage: Stage,
}

#[derive(Clone, Debug, Default)]
pub struct PipelineOutput {
    pub f: Option<MultiPoly>,
    pub curve: Option<PlaneCurve>,
    pub plane: Option<PlaneGraph>,
    pub space: Option<SpaceTopology>,
    pub lines: Option<Vec<Polyline3D>>,
    /// Wall-clock stage timings; excluded from the deterministic report.
    pub timings_ms: Vec<(&'static str, u128)>,
}

pub fn run_stages(cfg: &PipelineConfig, resume: &ResumeState) -> Result<PipelineOutput> {
    let mut out = PipelineOutput::default();

    let timed = |out: &mut PipelineOutput, name: &'static str, r: &Instant| {
        out.timings_ms.push((name, r.elapsed().as_millis()));
    };

    let curve = if let Some(c) = &resume.curve {
        if cfg.stage >= Stage::SpaceTopology {
            Some(c.clone())
        } else {
            None
        }
    } else {
        None
    };

    let curve = match curve {
        Some(c) => {
            out.curve = Some(c.clone());
            Some(c)
        }
        None => {
            let f = match &resume.f {
                Some(f) => f.clone(),
                None => {
                    let t0 = Instant::now();
                    let ps = match &cfg.s1 {
                        SurfaceInput::Plain(s) => s.projectable_form()?,
                        SurfaceInput::Ruled(r) => r.reparametrize()?.0,
                    };
                    let f = implicitize(&ps)?;
                    if !verify_implicit(&f, &ps.surface)? {
                        return Err(Error::Certification(
                            "implicit polynomial does not vanish on the surface".into(),
                        ));
                    }
                    timed(&mut out, "implicitize", &t0);
                    f
                }
            };
            out.f = Some(f.clone());
            if cfg.stage == Stage::Implicitize {
                return Ok(out);
            }
            let t0 = Instant::now();
            let c = plane_curve(&f, &cfg.s2)?;
            timed(&mut out, "plane-curve", &t0);
            out.curve = Some(c.clone());
            Some(c)
        }
    };
    let curve = curve.expect("curve available past implicitize stage");

    if cfg.stage == Stage::PlaneTopology {
        let t0 = Instant::now();
        out.plane = Some(plane_graph(&curve, &cfg.bbox)?);
        timed(&mut out, "plane-topology", &t0);
        return Ok(out);
    }

    let t0 = Instant::now();
    let st = space_topology(&cfg.s2, &curve, &cfg.bbox)?;
    timed(&mut out, "space-topology", &t0);
    out.plane = Some(st.plane.clone());
    out.space = Some(st.clone());
    if cfg.stage == Stage::SpaceTopology {
        return Ok(out);
    }

    let t0 = Instant::now();
    out.lines = Some(approximate(&st, &cfg.s2, &cfg.epsilon)?);
    timed(&mut out, "approximate", &t0);
    Ok(out)
}

/// Rebuild the resume state from artifacts already present in `out_dir`.
/// Missing or unreadable artifacts are simply not resumed from.
pub fn load_resume(out_dir: &std::path::Path) -> ResumeState {
    let mut r = ResumeState::default();
    if let Ok(text) = std::fs::read_to_string(out_dir.join("F.txt")) {
        if let Ok(p) = parse_poly(text.trim()) {
            r.f = Some(p);
        }
    }
    if let Ok(text) = std::fs::read_to_string(out_dir.join("plane_graph.json")) {
        if let Some(c) = parse_plane_graph_curve(&text) {
            r.curve = Some(c);
        }
    }
    r
}

fn parse_plane_graph_curve(text: &str) -> Option<PlaneCurve> {
    let v: Value = serde_json::from_str(text).ok()?;
    let main = parse_poly(v.get("main")?.as_str()?).ok()?;
    let vertical = parse_poly(v.get("vertical")?.as_str()?).ok()?;
    let params = v.get("params")?.as_array()?;
    let p0 = params.first()?.as_str()?.to_string();
    let p1 = params.get(1)?.as_str()?.to_string();
    let full = main.mul(&vertical);
    Some(PlaneCurve {
        main,
        vertical,
        full,
        params: [p0, p1],
    })
}

/// The deterministic run report: counts, character points, ε.  Wall-clock
/// timing goes to `timing.json` instead so reruns stay byte-identical.
pub fn report_json(cfg: &PipelineConfig, out: &PipelineOutput) -> Value {
    let mut rep = json!({
        "epsilon": format_rat(&cfg.epsilon),
        "box": {
            "va": format_rat(&cfg.bbox.va), "vb": format_rat(&cfg.bbox.vb),
            "ta": format_rat(&cfg.bbox.ta), "tb": format_rat(&cfg.bbox.tb),
        },
    });
    if let Some(f) = &out.f {
        rep["implicit"] = json!({
            "polynomial": f.to_string(),
            "total_degree": f.total_degree(),
            "terms": f.num_terms(),
        });
    }
    if let Some(c) = &out.curve {
        rep["plane_curve"] = json!({
            "main": c.main.to_string(),
            "vertical": c.vertical.to_string(),
            "params": c.params,
        });
    }
    if let Some(pg) = &out.plane {
        rep["plane_graph"] = json!({
            "vertices": pg.vertices.len(),
            "edges": pg.edges.len(),
            "columns": pg.columns.len(),
            "components": pg.components(),
            "cycle_rank": pg.cycle_rank(),
        });
    }
    if let Some(st) = &out.space {
        let sg = io::space_graph_json(st);
        rep["space_graph"] = json!({
            "vertices": st.graph.vertices.len(),
            "edges": st.graph.edges.len(),
            "components": st.graph.components(),
            "cycle_rank": st.graph.cycle_rank(),
        });
        rep["character_points"] = sg["character_points"].clone();
    }
    if let Some(lines) = &out.lines {
        rep["curve"] = json!({
            "polylines": lines.len(),
            "points": lines.iter().map(|l| l.points.len()).collect::<Vec<_>>(),
            "total_points": lines.iter().map(|l| l.points.len()).sum::<usize>(),
        });
    }
    rep
}

pub fn timing_json(out: &PipelineOutput) -> Value {
    json!({
        "note": "wall-clock milliseconds; not covered by the determinism guarantee",
        "stages": out
            .timings_ms
            .iter()
            .map(|(n, ms)| json!({ "stage": n, "ms": ms }))
            .collect::<Vec<_>>(),
    })
}

/// Write every artifact the computed stages support into `out_dir`.
/// `formats` filters the plane/space/curve serializations; `F.txt`, `G.txt`,
/// `report.json` and `timing.json` are always written when available.
pub fn write_artifacts(
    out_dir: &std::path::Path,
    formats: &[String],
    cfg: &PipelineConfig,
    out: &PipelineOutput,
) -> Result<Vec<String>> {
    std::fs::create_dir_all(out_dir)?;
    let want = |f: &str| formats.iter().any(|x| x == f);
    let mut written = Vec::new();
    let mut emit = |name: &str, text: String| -> Result<()> {
        std::fs::write(out_dir.join(name), text)?;
        written.push(name.to_string());
        Ok(())
    };
    if let Some(f) = &out.f {
        emit("F.txt", format!("{f}\n"))?;
    }
    if let Some(c) = &out.curve {
        emit("G.txt", format!("{}\n", c.full))?;
    }
    if want("json") {
        if let Some(pg) = &out.plane {
            emit("plane_graph.json", io::to_json_string(&io::plane_graph_json(pg)))?;
        }
        if let Some(st) = &out.space {
            emit("space_graph.json", io::to_json_string(&io::space_graph_json(st)))?;
        }
        if let Some(lines) = &out.lines {
            emit("curve.json", io::to_json_string(&io::curve_json(lines, &cfg.epsilon)))?;
        }
    }
    if want("svg") {
        if let Some(pg) = &out.plane {
            emit("plane_graph.svg", io::plane_graph_svg(pg))?;
        }
    }
    if want("obj") {
        if let Some(lines) = &out.lines {
            emit("curve.obj", io::curve_obj(lines))?;
        }
    }
    emit("report.json", io::to_json_string(&report_json(cfg, out)))?;
    emit("timing.json", io::to_json_string(&timing_json(out)))?;
    Ok(written)
}

/// Parse the four box corners, with validation.
pub fn parse_box(a: &str, b: &str, c: &str, d: &str) -> Result<BBox> {
    BBox::new(parse_rat(a)?, parse_rat(b)?, parse_rat(c)?, parse_rat(d)?)
}
