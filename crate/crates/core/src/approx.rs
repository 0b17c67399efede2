//! Polyline approximation of the lifted intersection curve.
//!
//! Every emitted point has a plane parameter exactly on the curve: branch
//! points sit on certified fiber roots of sample columns, vertical-line
//! points sample the line parameter directly.  Approximation error lives
//! only between consecutive points, and every segment passes a sampled
//! Hausdorff test against the curve before it is accepted.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geom::segments_cross_3d;
use crate::interval::{eval_interval, RatInterval};
use crate::plane_topology::{fiber_roots_at, EdgeKind, PlaneGraph};
use crate::poly::MultiPoly;
use crate::rat::{rat_i, rat_to_f64, Rat};
use crate::roots::algnum::AlgebraicNumber;
use crate::roots::{refine, IntPoly, RootInterval};
use crate::space_topology::SpaceTopology;
use crate::surface::RationalSurface;

/// One polyline point, with its plane parameter.  `pos` is exact whenever
/// the parameter is rational; otherwise it is the midpoint of a certified
/// enclosure.
#[derive(Clone, Debug)]
pub struct PolyPoint {
    pub pos: [Rat; 3],
    pub v: Rat,
    pub t: Rat,
    /// Space-graph vertex index, for points that are graph vertices.
    pub vertex: Option<usize>,
}

/// Provenance of the segments between consecutive points.
#[derive(Clone, Debug)]
pub enum SegProv {
    Branch { ordinal: usize },
    Vertical { column: AlgebraicNumber },
}

impl SegProv {
    fn same_class(&self, other: &SegProv) -> bool {
        matches!(
            (self, other),
            (SegProv::Branch { .. }, SegProv::Branch { .. })
                | (SegProv::Vertical { .. }, SegProv::Vertical { .. })
        )
    }

    fn mergeable(&self, other: &SegProv) -> bool {
        match (self, other) {
            (SegProv::Branch { ordinal: a }, SegProv::Branch { ordinal: b }) => a == b,
            (SegProv::Vertical { .. }, SegProv::Vertical { .. }) => true,
            _ => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Polyline3D {
    pub points: Vec<PolyPoint>,
    /// Per-segment provenance; `provs.len() == points.len() - 1`.
    pub provs: Vec<SegProv>,
}

impl Polyline3D {
    pub fn is_closed(&self) -> bool {
        self.points.len() > 2 && self.points.first().unwrap().pos == self.points.last().unwrap().pos
    }
}

const HAUSDORFF_M: usize = 16;
const HAUSDORFF_M_CAP: usize = 256;
const SUBDIV_DEPTH_CAP: usize = 24;
const LIFT_CAP: usize = 80;

fn dist2(a: &[Rat; 3], b: &[Rat; 3]) -> Rat {
    (0..3).map(|i| (&a[i] - &b[i]) * (&a[i] - &b[i])).sum()
}

/// Squared distance from `p` to the closed segment `[a, b]`.
pub fn point_segment_dist2(p: &[Rat; 3], a: &[Rat; 3], b: &[Rat; 3]) -> Rat {
    let d: Vec<Rat> = (0..3).map(|i| &b[i] - &a[i]).collect();
    let dd: Rat = d.iter().map(|x| x * x).sum();
    if dd == rat_i(0) {
        return dist2(p, a);
    }
    let mut s: Rat = (0..3).map(|i| (&p[i] - &a[i]) * &d[i]).sum::<Rat>() / &dd;
    if s < rat_i(0) {
        s = rat_i(0);
    }
    if s > rat_i(1) {
        s = rat_i(1);
    }
    let q: [Rat; 3] = [
        &a[0] + &s * &d[0],
        &a[1] + &s * &d[1],
        &a[2] + &s * &d[2],
    ];
    dist2(p, &q)
}

/// Rational upper bound on the square root.
pub fn sqrt_upper(x: &Rat) -> Rat {
    if *x <= rat_i(0) {
        return rat_i(0);
    }
    let f = rat_to_f64(x).sqrt();
    let mut g = Rat::from_float(f * 1.000001).unwrap_or_else(|| x.clone() + rat_i(1));
    if g <= rat_i(0) {
        g = x.clone() + rat_i(1);
    }
    while &g * &g < *x {
        g = g * (rat_i(1) + crate::rat::rat(1, 1000));
    }
    g
}

fn rat_ceil_usize(x: &Rat) -> usize {
    use num_traits::ToPrimitive;
    let c = x.ceil();
    c.to_integer().to_usize().unwrap_or(usize::MAX)
}

/// Max over `m` interior samples of the distance from the curve to the
/// chord `[p1, p2]`.  An estimate, not a certified bound.
pub fn hausdorff_estimate(
    p1: &[Rat; 3],
    p2: &[Rat; 3],
    sampler: &mut dyn FnMut(&Rat) -> Result<[Rat; 3]>,
    m: usize,
) -> Result<Rat> {
    let mut worst = rat_i(0);
    for k in 1..=m {
        let tau = crate::rat::rat(k as i64, (m + 1) as i64);
        let q = sampler(&tau)?;
        let d2 = point_segment_dist2(&q, p1, p2);
        if d2 > &worst * &worst {
            worst = sqrt_upper(&d2);
        }
    }
    Ok(worst)
}

/// Squarefree fiber polynomial of the curve at a rational column.
fn fiber_poly(g: &MultiPoly, vvar: &str, tvar: &str, v: &Rat) -> Result<IntPoly> {
    let fib = g.subst_rat(vvar, v);
    if fib.is_zero() {
        return Err(Error::Internal(format!("fiber at {} vanished", v)));
    }
    if fib.is_constant() {
        return Err(Error::Internal(format!("fiber at {} is constant", v)));
    }
    IntPoly::from_multipoly(&fib, tvar)?.squarefree()
}

/// Best rational representative of a vertex parameter.  Wide isolating
/// intervals from the graph are tightened against the fiber, and rational
/// fiber roots are recovered exactly when the column is rational.
fn box_param_rep(
    g: &MultiPoly,
    vvar: &str,
    tvar: &str,
    bx: &crate::roots::triangular::IsolatingBox,
) -> (Rat, Rat) {
    let tight = crate::rat::rat(1, 1i64 << 52);
    let mut v_alg = bx.v.clone();
    let v_rep = match v_alg.as_exact() {
        Some(v0) => v0,
        None => {
            v_alg.refine_to_width(&tight);
            v_alg.approx()
        }
    };
    if let RootInterval::Exact(t) = &bx.t {
        return (v_rep, t.clone());
    }
    if let Some(v0) = bx.v.as_exact() {
        let Ok(fib) = fiber_poly(g, vvar, tvar, &v0) else {
            return (v_rep, bx.t.mid());
        };
        let mut r = bx.t.clone();
        if fib.sign_at(&r.lo()) * fib.sign_at(&r.hi()) >= 0 {
            return (v_rep, r.mid());
        }
        for _ in 0..64 {
            if let RootInterval::Exact(t) = &r {
                return (v_rep, t.clone());
            }
            let c = crate::interval::simplest_in(&r.lo(), &r.hi());
            if r.contains(&c) && fib.eval(&c) == rat_i(0) {
                return (v_rep, c);
            }
            if r.width() < tight {
                break;
            }
            r = refine(&fib, &r);
        }
        return (v_rep, r.mid());
    }
    // algebraic column: tighten the fiber root with the parametric Sturm chain
    let t_rep = (|| -> Result<Rat> {
        let mut pp = crate::roots::algnum::ParamPoly::new(&mut v_alg, g, vvar, tvar)?;
        Ok(pp.refine_root_to_width(&bx.t, &tight)?.mid())
    })()
    .unwrap_or_else(|_| bx.t.mid());
    (v_rep, t_rep)
}

/// Lift a (rational column, fiber root) parameter through the surface.
/// The enclosure is tightened to `tol` per coordinate.
fn lift_branch_sample(
    s2: &RationalSurface,
    fib: &IntPoly,
    v: &Rat,
    mut t: RootInterval,
    tol: &Rat,
) -> Result<([Rat; 3], Rat)> {
    let (vvar, tvar) = (s2.params[0].as_str(), s2.params[1].as_str());
    // a rational fiber root gives an exact on-curve point; worth detecting
    // (found once the interval is narrower than 1/denom^2)
    for _ in 0..32 {
        if matches!(t, RootInterval::Exact(_)) {
            break;
        }
        let c = crate::interval::simplest_in(&t.lo(), &t.hi());
        if t.contains(&c) && fib.eval(&c) == rat_i(0) {
            t = RootInterval::Exact(c);
            break;
        }
        t = refine(fib, &t);
    }
    for _ in 0..LIFT_CAP {
        if let RootInterval::Exact(t0) = &t {
            let mut asn = BTreeMap::new();
            asn.insert(vvar.to_string(), v.clone());
            asn.insert(tvar.to_string(), t0.clone());
            let mut pos = [rat_i(0), rat_i(0), rat_i(0)];
            for (i, c) in s2.coords.iter().enumerate() {
                let d = c.denom().eval(&asn)?;
                if d == rat_i(0) {
                    return Err(Error::ParameterPole(format!("pole at ({}, {})", v, t0)));
                }
                pos[i] = c.numer().eval(&asn)? / d;
            }
            return Ok((pos, t0.clone()));
        }
        let mut asn = BTreeMap::new();
        asn.insert(vvar.to_string(), RatInterval::point(v.clone()));
        asn.insert(tvar.to_string(), RatInterval::new(t.lo(), t.hi()));
        let mut pos = [rat_i(0), rat_i(0), rat_i(0)];
        let mut ok = true;
        for (i, c) in s2.coords.iter().enumerate() {
            let d = eval_interval(c.denom(), &asn);
            if d.contains_zero() {
                ok = false;
                break;
            }
            let val = eval_interval(c.numer(), &asn).mul(&d.recip());
            if val.width() > *tol {
                ok = false;
                break;
            }
            pos[i] = val.mid();
        }
        if ok {
            return Ok((pos, t.mid()));
        }
        t = refine(fib, &t);
    }
    Err(Error::ParameterPole(format!(
        "coordinates not separated from a pole near column {}",
        v
    )))
}

/// Lift a vertical-line parameter (algebraic column, rational t).
fn lift_vertical_sample(
    s2: &RationalSurface,
    column: &AlgebraicNumber,
    t: &Rat,
    tol: &Rat,
) -> Result<[Rat; 3]> {
    let (vvar, tvar) = (s2.params[0].as_str(), s2.params[1].as_str());
    if let Some(v0) = column.as_exact() {
        let mut asn = BTreeMap::new();
        asn.insert(vvar.to_string(), v0.clone());
        asn.insert(tvar.to_string(), t.clone());
        let mut pos = [rat_i(0), rat_i(0), rat_i(0)];
        for (i, c) in s2.coords.iter().enumerate() {
            let d = c.denom().eval(&asn)?;
            if d == rat_i(0) {
                return Err(Error::ParameterPole(format!("pole at ({}, {})", v0, t)));
            }
            pos[i] = c.numer().eval(&asn)? / d;
        }
        return Ok(pos);
    }
    let mut col = column.clone();
    for _ in 0..LIFT_CAP {
        let mut asn = BTreeMap::new();
        asn.insert(vvar.to_string(), RatInterval::new(col.lo(), col.hi()));
        asn.insert(tvar.to_string(), RatInterval::point(t.clone()));
        let mut pos = [rat_i(0), rat_i(0), rat_i(0)];
        let mut ok = true;
        for (i, c) in s2.coords.iter().enumerate() {
            let d = eval_interval(c.denom(), &asn);
            if d.contains_zero() {
                ok = false;
                break;
            }
            let val = eval_interval(c.numer(), &asn).mul(&d.recip());
            if val.width() > *tol {
                ok = false;
                break;
            }
            pos[i] = val.mid();
        }
        if ok {
            return Ok(pos);
        }
        col.refine();
    }
    Err(Error::ParameterPole(
        "coordinates not separated from a pole on a vertical line".into(),
    ))
}

/// Point on the given branch at a rational column, retrying with slightly
/// perturbed columns when the sample accidentally hits a critical value.
fn branch_point(
    g: &MultiPoly,
    s2: &RationalSurface,
    vvar: &str,
    tvar: &str,
    v: &Rat,
    toward: &Rat,
    ordinal: usize,
    ta: &Rat,
    tb: &Rat,
    tol: &Rat,
) -> Result<PolyPoint> {
    let mut x = v.clone();
    for attempt in 0..4 {
        let roots = fiber_roots_at(g, vvar, tvar, &x, ta, tb);
        if let Ok(roots) = roots {
            if let Some(r) = roots.into_iter().nth(ordinal) {
                let fib = fiber_poly(g, vvar, tvar, &x)?;
                let (pos, t_rep) = lift_branch_sample(s2, &fib, &x, r, tol)?;
                return Ok(PolyPoint {
                    pos,
                    v: x,
                    t: t_rep,
                    vertex: None,
                });
            }
        }
        // nudge toward the interior of the slab
        let w = rat_i(3 + attempt as i64);
        x = (&x * &w + toward) / (w + rat_i(1));
    }
    Err(Error::Internal(format!(
        "no branch point of ordinal {} near column {}",
        ordinal, v
    )))
}

struct ChainRec {
    edge: usize,
    pts: Vec<PolyPoint>,
    prov: SegProv,
}

/// Sample one space edge into an on-curve point chain, including both
/// endpoint vertices, with every segment passing the Hausdorff test.
#[allow(clippy::too_many_arguments)]
fn sample_edge(
    st: &SpaceTopology,
    s2: &RationalSurface,
    ei: usize,
    eps: &Rat,
) -> Result<ChainRec> {
    let plane: &PlaneGraph = &st.plane;
    let g = &plane.g_main;
    let (vvar, tvar) = (plane.params[0].as_str(), plane.params[1].as_str());
    let (ta, tb) = (plane.bbox.ta.clone(), plane.bbox.tb.clone());
    let tol = eps / rat_i(8);
    let edge = &st.graph.edges[ei];
    let vfrom = &st.graph.vertices[edge.from];
    let vto = &st.graph.vertices[edge.to];
    let from_box = crate::space_topology::edge_end_box(&st.graph, plane, ei, true).clone();
    let to_box = crate::space_topology::edge_end_box(&st.graph, plane, ei, false).clone();
    let (from_v, from_t) = box_param_rep(g, vvar, tvar, &from_box);
    let (to_v, to_t) = box_param_rep(g, vvar, tvar, &to_box);
    let p_from = PolyPoint {
        pos: vfrom.point.rep(),
        v: from_v,
        t: from_t,
        vertex: Some(edge.from),
    };
    let p_to = PolyPoint {
        pos: vto.point.rep(),
        v: to_v,
        t: to_t,
        vertex: Some(edge.to),
    };

    match &edge.kind {
        EdgeKind::Vertical => {
            let column = from_box.v.clone();
            let t0 = p_from.t.clone();
            let t1 = p_to.t.clone();
            let len = if t1 >= t0 { &t1 - &t0 } else { &t0 - &t1 };
            if len == rat_i(0) {
                return Ok(ChainRec {
                    edge: ei,
                    pts: vec![p_from, p_to],
                    prov: SegProv::Vertical { column },
                });
            }
            let n = rat_ceil_usize(&(&len / eps)).max(2);
            let mut raw: Vec<PolyPoint> = vec![p_from];
            for k in 1..n {
                let t = &t0 + (&t1 - &t0) * crate::rat::rat(k as i64, n as i64);
                let pos = lift_vertical_sample(s2, &column, &t, &tol)?;
                raw.push(PolyPoint {
                    pos,
                    v: column.approx(),
                    t,
                    vertex: None,
                });
            }
            raw.push(p_to);
            // Hausdorff pass: the whole line lies on the curve, so sample
            // the line parameter between consecutive points
            let pts = hausdorff_chain(raw, eps, &mut |a: &PolyPoint, b: &PolyPoint, tau| {
                let t = &a.t + (&b.t - &a.t) * tau;
                lift_vertical_sample(s2, &column, &t, &tol)
            }, &mut |a: &PolyPoint, b: &PolyPoint| {
                let t = (&a.t + &b.t) / rat_i(2);
                let pos = lift_vertical_sample(s2, &column, &t, &tol)?;
                Ok(PolyPoint {
                    pos,
                    v: column.approx(),
                    t,
                    vertex: None,
                })
            })?;
            Ok(ChainRec {
                edge: ei,
                pts,
                prov: SegProv::Vertical { column },
            })
        }
        EdgeKind::Branch { ordinal, .. } => {
            let ordinal = *ordinal;
            let mut a = from_box.v.clone();
            let mut b = to_box.v.clone();
            // separate the column intervals to get rational bounds that are
            // strictly inside the open slab
            let swapped = {
                let mut a2 = a.clone();
                let mut b2 = b.clone();
                match a2.cmp_alg(&mut b2)? {
                    std::cmp::Ordering::Less => false,
                    std::cmp::Ordering::Greater => true,
                    std::cmp::Ordering::Equal => {
                        return Err(Error::Internal(
                            "branch edge between equal columns".into(),
                        ))
                    }
                }
            };
            if swapped {
                std::mem::swap(&mut a, &mut b);
            }
            for _ in 0..LIFT_CAP {
                if a.hi() < b.lo() {
                    break;
                }
                a.refine();
                b.refine();
            }
            if a.hi() >= b.lo() {
                return Err(Error::Internal("columns do not separate".into()));
            }
            let mut lo = a.hi();
            let mut hi = b.lo();
            let gap = &hi - &lo;
            if a.as_exact().is_some() {
                lo = &lo + &gap / rat_i(1000);
            }
            if b.as_exact().is_some() {
                hi = &hi - &gap / rat_i(1000);
            }
            let len = &b.approx() - &a.approx();
            let len = if len < rat_i(0) { -len } else { len };
            // base the chain on long chords and let the Hausdorff recursion
            // split where the curve actually bends
            let n = rat_ceil_usize(&(&len / &(eps * rat_i(8)))).max(2);
            // snap the sampling window to a coarse dyadic grid: tiny sample
            // denominators keep every exact fiber solve cheap
            let span = &hi - &lo;
            let mut step = rat_i(1);
            for _ in 0..200 {
                if &step * rat_i(4 * n as i64) <= span {
                    break;
                }
                step = step / rat_i(2);
            }
            let lo_d = (&lo / &step).ceil() * &step;
            let hi_d = (&hi / &step).floor() * &step;
            if lo_d < hi_d {
                lo = lo_d;
                hi = hi_d;
            }
            let mut raw: Vec<PolyPoint> = Vec::with_capacity(n + 3);
            for k in 0..=n {
                let x = &lo + (&hi - &lo) * crate::rat::rat(k as i64, n as i64);
                let toward = (&lo + &hi) / rat_i(2);
                raw.push(branch_point(
                    g, s2, vvar, tvar, &x, &toward, ordinal, &ta, &tb, &tol,
                )?);
            }
            let (first, last) = if swapped {
                raw.reverse();
                (p_from, p_to)
            } else {
                (p_from, p_to)
            };
            let mut chain = Vec::with_capacity(raw.len() + 2);
            chain.push(first);
            chain.extend(raw);
            chain.push(last);
            let clamp = |x: &Rat| -> Rat {
                if *x < lo {
                    lo.clone()
                } else if *x > hi {
                    hi.clone()
                } else {
                    x.clone()
                }
            };
            let pts = hausdorff_chain(chain, eps, &mut |pa: &PolyPoint, pb: &PolyPoint, tau| {
                let (x0, x1) = (clamp(&pa.v), clamp(&pb.v));
                let x = &x0 + (&x1 - &x0) * tau;
                let toward = (&x0 + &x1) / rat_i(2);
                Ok(branch_point(g, s2, vvar, tvar, &x, &toward, ordinal, &ta, &tb, &tol)?.pos)
            }, &mut |pa: &PolyPoint, pb: &PolyPoint| {
                let (x0, x1) = (clamp(&pa.v), clamp(&pb.v));
                let x = (&x0 + &x1) / rat_i(2);
                branch_point(g, s2, vvar, tvar, &x, &x, ordinal, &ta, &tb, &tol)
            })?;
            Ok(ChainRec {
                edge: ei,
                pts,
                prov: SegProv::Branch { ordinal },
            })
        }
    }
}

/// Enforce the Hausdorff bound on every consecutive pair, recursively
/// inserting curve midpoints where a chord strays too far.
fn hausdorff_chain(
    raw: Vec<PolyPoint>,
    eps: &Rat,
    sampler: &mut dyn FnMut(&PolyPoint, &PolyPoint, &Rat) -> Result<[Rat; 3]>,
    midpoint: &mut dyn FnMut(&PolyPoint, &PolyPoint) -> Result<PolyPoint>,
) -> Result<Vec<PolyPoint>> {
    fn rec(
        a: PolyPoint,
        b: PolyPoint,
        eps: &Rat,
        depth: usize,
        m: usize,
        sampler: &mut dyn FnMut(&PolyPoint, &PolyPoint, &Rat) -> Result<[Rat; 3]>,
        midpoint: &mut dyn FnMut(&PolyPoint, &PolyPoint) -> Result<PolyPoint>,
        out: &mut Vec<PolyPoint>,
    ) -> Result<()> {
        if a.pos == b.pos {
            out.push(b);
            return Ok(());
        }
        let mut s = |tau: &Rat| sampler(&a, &b, tau);
        let est = hausdorff_estimate(&a.pos, &b.pos, &mut s, m)?;
        if est < *eps {
            out.push(b);
            return Ok(());
        }
        if depth >= SUBDIV_DEPTH_CAP {
            return Err(Error::Certification(
                "segment subdivision did not reach the accuracy target".into(),
            ));
        }
        let mid = midpoint(&a, &b)?;
        let m2 = (m * 2).min(HAUSDORFF_M_CAP);
        rec(a, mid.clone(), eps, depth + 1, m2, sampler, midpoint, out)?;
        rec(mid, b, eps, depth + 1, m2, sampler, midpoint, out)
    }
    let mut out = Vec::with_capacity(raw.len());
    let mut it = raw.into_iter();
    let mut prev = match it.next() {
        Some(p) => p,
        None => return Ok(vec![]),
    };
    out.push(prev.clone());
    for next in it {
        if next.pos == prev.pos && next.vertex.is_none() {
            continue;
        }
        rec(
            prev.clone(),
            next.clone(),
            eps,
            0,
            HAUSDORFF_M,
            sampler,
            midpoint,
            &mut out,
        )?;
        prev = next;
    }
    Ok(out)
}

/// Which plane vertex a space-edge end attaches to (None for injected
/// vertices).
fn end_preimage(st: &SpaceTopology, ei: usize, sv: usize) -> Option<usize> {
    let pe = st.graph.edges[ei].plane_edge?;
    let cand = [st.plane.edges[pe].from, st.plane.edges[pe].to];
    st.graph.vertices[sv]
        .plane_vertices
        .iter()
        .copied()
        .find(|p| cand.contains(p))
}

/// Stitch per-edge chains into maximal polylines.  A walk continues through
/// a vertex when exactly one other unused edge end shares the same plane
/// preimage and edge class; this carries a branch through a fused
/// self-intersection without jumping onto the other sheet.
fn stitch(st: &SpaceTopology, chains: Vec<ChainRec>) -> Vec<Polyline3D> {
    let ne = chains.len();
    let mut used = vec![false; ne];
    let mut incident: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (ci, c) in chains.iter().enumerate() {
        let e = &st.graph.edges[c.edge];
        incident.entry(e.from).or_default().push(ci);
        incident.entry(e.to).or_default().push(ci);
    }
    let degree = |v: usize| incident.get(&v).map(|l| l.len()).unwrap_or(0);

    let continuation = |v: usize, arrived: usize, used: &[bool]| -> Option<usize> {
        let inc = incident.get(&v)?;
        let free: Vec<usize> = inc
            .iter()
            .copied()
            .filter(|&c| !used[c] && c != arrived)
            .collect();
        if degree(v) == 2 && free.len() == 1 {
            return Some(free[0]);
        }
        let p0 = end_preimage(st, chains[arrived].edge, v);
        let matches: Vec<usize> = free
            .into_iter()
            .filter(|&c| {
                chains[c].prov.same_class(&chains[arrived].prov)
                    && end_preimage(st, chains[c].edge, v) == p0
            })
            .collect();
        if matches.len() == 1 {
            Some(matches[0])
        } else {
            None
        }
    };

    let _ = degree;
    let mut out: Vec<Polyline3D> = Vec::new();
    // open walks start wherever a chain end cannot be continued: walking
    // away from such a vertex yields a maximal path
    let vert_ids: Vec<usize> = incident.keys().copied().collect();
    for &v in &vert_ids {
        loop {
            let free: Vec<usize> = incident[&v]
                .iter()
                .copied()
                .filter(|&c| !used[c])
                .collect();
            let Some(&c) = free
                .iter()
                .find(|&&c| continuation(v, c, &used).is_none())
            else {
                break;
            };
            let line = walk_from(st, &chains, c, v, &mut used, &continuation);
            if !line.points.is_empty() {
                out.push(line);
            }
        }
    }
    // leftover cycles
    for c in 0..ne {
        if !used[c] {
            let v = st.graph.edges[chains[c].edge].from;
            let line = walk_from(st, &chains, c, v, &mut used, &continuation);
            if !line.points.is_empty() {
                out.push(line);
            }
        }
    }
    out
}

fn walk_from(
    st: &SpaceTopology,
    chains: &[ChainRec],
    start: usize,
    start_vertex: usize,
    used: &mut [bool],
    continuation: &dyn Fn(usize, usize, &[bool]) -> Option<usize>,
) -> Polyline3D {
    let mut points: Vec<PolyPoint> = Vec::new();
    let mut provs: Vec<SegProv> = Vec::new();
    let mut cur = start;
    let mut at = start_vertex;
    loop {
        used[cur] = true;
        let e = &st.graph.edges[chains[cur].edge];
        let (pts, next_at) = if e.from == at {
            (chains[cur].pts.clone(), e.to)
        } else {
            let mut p = chains[cur].pts.clone();
            p.reverse();
            (p, e.from)
        };
        let added = if points.is_empty() {
            let n = pts.len();
            points.extend(pts);
            n.saturating_sub(1)
        } else {
            let n = pts.len().saturating_sub(1);
            points.extend(pts.into_iter().skip(1));
            n
        };
        for _ in 0..added {
            provs.push(chains[cur].prov.clone());
        }
        at = next_at;
        if at == start_vertex {
            break;
        }
        match continuation(at, cur, used) {
            Some(next) => cur = next,
            None => break,
        }
    }
    Polyline3D { points, provs }
}

/// Drop interior sample points that are exactly collinear with their
/// neighbors (graph vertices are never dropped).
fn simplify(lines: &mut Vec<Polyline3D>) {
    for line in lines.iter_mut() {
        let mut i = 1;
        while i + 1 < line.points.len() {
            let keep = line.points[i].vertex.is_some()
                || !line.provs[i - 1].mergeable(&line.provs[i])
                || !between_on_segment(
                    &line.points[i].pos,
                    &line.points[i - 1].pos,
                    &line.points[i + 1].pos,
                );
            if keep {
                i += 1;
            } else {
                line.points.remove(i);
                line.provs.remove(i);
            }
        }
    }
}

fn between_on_segment(p: &[Rat; 3], a: &[Rat; 3], b: &[Rat; 3]) -> bool {
    point_segment_dist2(p, a, b) == rat_i(0)
}

const CROSSING_PASS_CAP: usize = 40;

/// Subdivide polyline segments until no two cross except at shared
/// endpoints.
fn resolve_polyline_crossings(
    lines: &mut [Polyline3D],
    st: &SpaceTopology,
    s2: &RationalSurface,
    eps: &Rat,
) -> Result<()> {
    let g = &st.plane.g_main;
    let (vvar, tvar) = (st.plane.params[0].as_str(), st.plane.params[1].as_str());
    let (ta, tb) = (st.plane.bbox.ta.clone(), st.plane.bbox.tb.clone());
    let tol = eps / rat_i(8);
    for _ in 0..CROSSING_PASS_CAP {
        let mut hit: Option<(usize, usize, usize, usize)> = None;
        'outer: for li in 0..lines.len() {
            for si in 0..lines[li].points.len().saturating_sub(1) {
                for lj in li..lines.len() {
                    let s0 = if lj == li { si + 1 } else { 0 };
                    for sj in s0..lines[lj].points.len().saturating_sub(1) {
                        if li == lj && sj == si + 1 {
                            continue;
                        }
                        let (a, b) = (&lines[li].points[si].pos, &lines[li].points[si + 1].pos);
                        let (c, d) = (&lines[lj].points[sj].pos, &lines[lj].points[sj + 1].pos);
                        if segments_cross_3d(a, b, c, d) {
                            hit = Some((li, si, lj, sj));
                            break 'outer;
                        }
                    }
                }
            }
        }
        let Some((li, si, lj, sj)) = hit else {
            return Ok(());
        };
        // subdivide the second segment first so indices stay valid
        for &(l, s) in &[(lj, sj), (li, si)] {
            if l == lj && l == li && sj < si && s == si {
                // indices shifted by the first insertion
            }
            let line = &mut lines[l];
            let (pa, pb) = (line.points[s].clone(), line.points[s + 1].clone());
            let newp = match &line.provs[s] {
                SegProv::Branch { ordinal } => {
                    let x = (&pa.v + &pb.v) / rat_i(2);
                    let toward = if pa.vertex.is_some() { pb.v.clone() } else { pa.v.clone() };
                    branch_point(g, s2, vvar, tvar, &x, &toward, *ordinal, &ta, &tb, &tol)?
                }
                SegProv::Vertical { column } => {
                    let t = (&pa.t + &pb.t) / rat_i(2);
                    let pos = lift_vertical_sample(s2, column, &t, &tol)?;
                    PolyPoint {
                        pos,
                        v: column.approx(),
                        t,
                        vertex: None,
                    }
                }
            };
            let prov = line.provs[s].clone();
            line.points.insert(s + 1, newp);
            line.provs.insert(s + 1, prov);
        }
    }
    Err(Error::Certification(
        "polyline crossing resolution did not converge".into(),
    ))
}

/// Produce the ε-accurate polyline set for the lifted curve.
pub fn approximate(
    st: &SpaceTopology,
    s2: &RationalSurface,
    eps: &Rat,
) -> Result<Vec<Polyline3D>> {
    if *eps <= rat_i(0) {
        return Err(Error::InvalidInput("epsilon must be positive".into()));
    }
    let mut chains = Vec::with_capacity(st.graph.edges.len());
    for ei in 0..st.graph.edges.len() {
        chains.push(sample_edge(st, s2, ei, eps)?);
    }
    let mut lines = stitch(st, chains);
    simplify(&mut lines);
    resolve_polyline_crossings(&mut lines, st, s2, eps)?;
    lines.retain(|l| l.points.len() >= 2);
    Ok(lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::BBox;
    use crate::implicitize::PlaneCurve;
    use crate::poly::parse_poly;
    use crate::rat::rat;
    use crate::space_topology::space_topology;
    use crate::surface::{RationalFunction, RationalSurface};

    fn rf(n: &str, d: &str) -> RationalFunction {
        RationalFunction::new(parse_poly(n).unwrap(), parse_poly(d).unwrap()).unwrap()
    }

    fn curve(main: &str, vertical: &str) -> PlaneCurve {
        let main = parse_poly(main).unwrap();
        let vertical = parse_poly(vertical).unwrap();
        let full = main.mul(&vertical);
        PlaneCurve {
            main,
            vertical,
            full,
            params: ["v".into(), "t".into()],
        }
    }

    fn bx(a: i64, b: i64, c: i64, d: i64) -> BBox {
        BBox::new(rat_i(a), rat_i(b), rat_i(c), rat_i(d)).unwrap()
    }

    #[test]
    fn hausdorff_on_chord_of_line_is_zero() {
        let p1 = [rat_i(0), rat_i(0), rat_i(0)];
        let p2 = [rat_i(2), rat_i(2), rat_i(2)];
        let mut sampler = |tau: &Rat| {
            Ok([tau * rat_i(2), tau * rat_i(2), tau * rat_i(2)])
        };
        let d = hausdorff_estimate(&p1, &p2, &mut sampler, 33).unwrap();
        assert_eq!(d, rat_i(0));
    }

    #[test]
    fn hausdorff_quarter_circle_sagitta() {
        // quarter circle from (1,0) to (0,1) via the rational parametrization
        // ((1-u^2)/(1+u^2), 2u/(1+u^2)), u in [0,1]; the max distance to the
        // chord is the sagitta 1 - cos(pi/4)
        let p1 = [rat_i(1), rat_i(0), rat_i(0)];
        let p2 = [rat_i(0), rat_i(1), rat_i(0)];
        let mut sampler = |tau: &Rat| {
            let one = rat_i(1);
            let den = &one + tau * tau;
            Ok([
                (&one - tau * tau) / &den,
                rat_i(2) * tau / &den,
                rat_i(0),
            ])
        };
        let d = hausdorff_estimate(&p1, &p2, &mut sampler, 99).unwrap();
        let sag = 1.0 - (std::f64::consts::PI / 4.0).cos();
        let diff = (rat_to_f64(&d) - sag).abs();
        assert!(diff < 1e-3, "estimate {} vs sagitta {}", rat_to_f64(&d), sag);
    }

    #[test]
    fn hausdorff_monotone_in_samples() {
        let p1 = [rat_i(1), rat_i(0), rat_i(0)];
        let p2 = [rat_i(0), rat_i(1), rat_i(0)];
        let sampler = |tau: &Rat| {
            let one = rat_i(1);
            let den = &one + tau * tau;
            Ok([
                (&one - tau * tau) / &den,
                rat_i(2) * tau / &den,
                rat_i(0),
            ])
        };
        let mut s1 = sampler;
        let d16 = hausdorff_estimate(&p1, &p2, &mut s1, 16).unwrap();
        let mut s2 = sampler;
        let d32 = hausdorff_estimate(&p1, &p2, &mut s2, 32).unwrap();
        assert!(d32 >= d16 - rat(1, 1000));
    }

    #[test]
    fn straight_line_collapses_to_two_points() {
        // plane curve t = v lifted onto the plane z = x + y
        let s2 = RationalSurface::new(
            ["v".into(), "t".into()],
            [rf("v", "1"), rf("t", "1"), rf("v + t", "1")],
        );
        let pc = curve("t - v", "1");
        let st = space_topology(&s2, &pc, &bx(-2, 2, -2, 2)).unwrap();
        let lines = approximate(&st, &s2, &rat(1, 20)).unwrap();
        assert_eq!(lines.len(), 1);
        // a straight curve needs no interior samples after simplification
        assert_eq!(lines[0].points.len(), 2);
        let a = &lines[0].points.first().unwrap().pos;
        let b = &lines[0].points.last().unwrap().pos;
        assert_ne!(a, b);
    }

    #[test]
    fn circle_and_line_polylines() {
        let s2 = RationalSurface::new(
            ["v".into(), "t".into()],
            [
                rf("1 - v^2", "1 + v^2"),
                rf("2*v", "1 + v^2"),
                rf("t + 1", "1"),
            ],
        );
        let pc = curve("t", "(1 + v^2)*(v - 1)");
        let st = space_topology(&s2, &pc, &bx(-3, 3, -3, 3)).unwrap();
        let eps = rat(1, 20);
        let lines = approximate(&st, &s2, &eps).unwrap();
        // the circle arc (t = 0) and the vertical line through (0,1,1)
        assert_eq!(lines.len(), 2);
        let exact = [rat_i(0), rat_i(1), rat_i(1)];
        for line in &lines {
            assert!(line.points.iter().any(|p| p.pos == exact));
        }
        // the line component is straight: exactly its endpoints and the vertex
        let line_comp = lines
            .iter()
            .find(|l| matches!(l.provs[0], SegProv::Vertical { .. }))
            .unwrap();
        assert!(line_comp.points.len() <= 4);
        // circle points all on the unit circle at z = 1
        let circ = lines
            .iter()
            .find(|l| matches!(l.provs[0], SegProv::Branch { .. }))
            .unwrap();
        assert!(circ.points.len() > 10);
        for p in &circ.points {
            assert_eq!(p.pos[2], rat_i(1));
            let r2 = &p.pos[0] * &p.pos[0] + &p.pos[1] * &p.pos[1];
            assert!((rat_to_f64(&r2) - 1.0).abs() < 1e-6);
        }
    }
}
