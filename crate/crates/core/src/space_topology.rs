//! Character points of the intersection curve and the lifted space graph.
//!
//! Character points are the parameters that need to be graph vertices for
//! the lift to be a homeomorphism: singular points of the plane curve,
//! irregular parameters of the second surface, and parameter pairs mapping
//! to one space point (self-intersections).  The plane graph is rebuilt
//! with the extra columns, lifted through the surface, and straight-edge
//! crossings are subdivided away.
//!
//! Self-intersections are found by resultant elimination instead of a
//! characteristic-set computation: the trivial diagonal enters eliminants
//! only as a (v - u) factor, which is divided out before isolation; every
//! surviving candidate is verified by certified coincidence of space
//! points, so over-generation is harmless.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geom::{segments_cross_3d, BBox};
use crate::implicitize::PlaneCurve;
use crate::interval::{eval_interval, simplest_in, RatInterval};
use crate::plane_topology::{plane_graph_with_extra, EdgeKind, PlaneGraph, VertexKind};
use crate::poly::{gcd, gcd_many, resultant, squarefree_part, MultiPoly};
use crate::rat::{rat, rat_i, Rat};
use crate::roots::algnum::{qp_trim, AlgebraicNumber, ParamPoly, QPoly};
use crate::roots::triangular::{isolate_triangular, IsolatingBox};
use crate::roots::{IntPoly, RootInterval};
use crate::surface::RationalSurface;

/// One coordinate of a lifted point.
#[derive(Clone, Debug)]
pub enum CoordVal {
    Exact(Rat),
    Approx(RatInterval),
}

#[derive(Clone, Debug)]
pub struct SpacePoint(pub [CoordVal; 3]);

impl SpacePoint {
    pub fn rep(&self) -> [Rat; 3] {
        let f = |c: &CoordVal| match c {
            CoordVal::Exact(r) => r.clone(),
            CoordVal::Approx(i) => i.mid(),
        };
        [f(&self.0[0]), f(&self.0[1]), f(&self.0[2])]
    }

    pub fn exact(&self) -> Option<[Rat; 3]> {
        let f = |c: &CoordVal| match c {
            CoordVal::Exact(r) => Some(r.clone()),
            CoordVal::Approx(_) => None,
        };
        Some([f(&self.0[0])?, f(&self.0[1])?, f(&self.0[2])?])
    }
}

/// Parameter points mapping to one space point.
#[derive(Clone, Debug)]
pub struct SelfIntersectionGroup {
    pub points: Vec<IsolatingBox>,
    pub space_point: SpacePoint,
}

/// Finite solutions of a constraint system on the curve, plus an optional
/// one-dimensional common locus (a full curve component satisfying every
/// constraint).
#[derive(Clone, Debug)]
pub struct SystemSolutions {
    pub common_locus: Option<MultiPoly>,
    pub points: Vec<IsolatingBox>,
    /// Squarefree column polynomial of the finite solutions (None when no
    /// candidates exist).
    pub column_poly: Option<IntPoly>,
}

#[derive(Clone, Debug)]
pub struct CharacterPoints {
    pub singular: SystemSolutions,
    pub irregular: SystemSolutions,
    pub groups: Vec<SelfIntersectionGroup>,
    /// Column polynomials to merge into the refined plane graph.
    pub column_polys: Vec<IntPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexTag {
    Singular,
    Cusp,
    SelfIntersection,
    Irregular,
    Boundary,
    Injected,
}

#[derive(Clone, Debug)]
pub struct SpaceVertex {
    /// Plane parameter points lifting to this vertex (> 1 after fusing).
    pub preimages: Vec<IsolatingBox>,
    /// Indices into the refined plane graph (empty for injected vertices).
    pub plane_vertices: Vec<usize>,
    pub point: SpacePoint,
    pub tags: Vec<VertexTag>,
}

#[derive(Clone, Debug)]
pub struct SpaceEdge {
    pub from: usize,
    pub to: usize,
    pub kind: EdgeKind,
    /// Index of the plane edge this edge descends from.
    pub plane_edge: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct SpaceGraph {
    pub vertices: Vec<SpaceVertex>,
    pub edges: Vec<SpaceEdge>,
}

impl SpaceGraph {
    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.from, e.to);
        }
        uf.count()
    }

    pub fn cycle_rank(&self) -> usize {
        (self.edges.len() + self.components()) - self.vertices.len()
    }
}

/// Everything the approximation stage needs.
#[derive(Clone, Debug)]
pub struct SpaceTopology {
    pub chars: CharacterPoints,
    pub plane: PlaneGraph,
    pub graph: SpaceGraph,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let r = self.find(self.parent[i]);
            self.parent[i] = r;
        }
        self.parent[i]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a] = b;
        }
    }

    fn count(&mut self) -> usize {
        let n = self.parent.len();
        let mut roots: Vec<usize> = (0..n).map(|i| self.find(i)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }
}

const REFINE_CAP: usize = 80;

fn to_qpoly(p: &MultiPoly, vvar: &str) -> Result<QPoly> {
    for v in p.vars() {
        if v != vvar && p.involves(v) {
            return Err(Error::Internal(format!(
                "expected univariate in {vvar}, found {v}"
            )));
        }
    }
    let mut q: QPoly = p
        .as_univariate(vvar)
        .iter()
        .map(|c| c.as_constant().expect("univariate"))
        .collect();
    qp_trim(&mut q);
    Ok(q)
}

fn qp_eval_interval(q: &QPoly, iv: &RatInterval) -> RatInterval {
    let mut acc = RatInterval::point(rat_i(0));
    for c in q.iter().rev() {
        acc = acc.mul(iv).add(&RatInterval::point(c.clone()));
    }
    acc
}

fn alg_interval(a: &AlgebraicNumber) -> RatInterval {
    RatInterval::new(a.lo(), a.hi())
}

/// Upgrade a box to exact coordinates where the roots are in fact rational:
/// first the column value, then the fiber root (verified by an exact
/// zero test; never guessed).
pub fn normalize_box(bx: &mut IsolatingBox, g: &MultiPoly, vvar: &str, tvar: &str) -> Result<()> {
    bx.v.try_exact();
    if matches!(bx.t, RootInterval::Exact(_)) {
        return Ok(());
    }
    let mut pg = ParamPoly::new(&mut bx.v, g, vvar, tvar)?;
    for _ in 0..16 {
        let c = simplest_in(&bx.t.lo(), &bx.t.hi());
        if bx.t.contains(&c) && pg.is_zero_at(&c)? {
            bx.t = RootInterval::Exact(c);
            return Ok(());
        }
        bx.t = pg.refine_root(&bx.t)?;
    }
    Ok(())
}

/// Does the unique root of `g(alpha, .)` inside `t` also satisfy `q = 0`?
/// Decided by distinct-root counts: the product `g*q` gains a root in the
/// interval exactly when `q`'s root there is new.
pub fn fiber_point_satisfies(
    alpha: &mut AlgebraicNumber,
    g: &MultiPoly,
    q: &MultiPoly,
    t: &RootInterval,
    vvar: &str,
    tvar: &str,
) -> Result<bool> {
    {
        let mut pq = ParamPoly::new(alpha, q, vvar, tvar)?;
        if pq.is_identically_zero()? {
            return Ok(true);
        }
        if let RootInterval::Exact(t0) = t {
            return pq.is_zero_at(t0);
        }
    }
    let gq = g.mul(q);
    let mut t = t.clone();
    for _ in 0..REFINE_CAP {
        let (a, b) = (t.lo(), t.hi());
        let cq = {
            let mut pq = ParamPoly::new(alpha, q, vvar, tvar)?;
            pq.count_roots_open(&a, &b)
        };
        let cgq = {
            let mut pgq = ParamPoly::new(alpha, &gq, vvar, tvar)?;
            pgq.count_roots_open(&a, &b)
        };
        match (cq, cgq) {
            (Ok(nq), Ok(ngq)) => {
                if ngq == nq {
                    return Ok(true);
                }
                if ngq == nq + 1 {
                    return Ok(false);
                }
                return Err(Error::Internal(format!(
                    "inconsistent fiber counts: {nq} vs {ngq}"
                )));
            }
            (Err(Error::RootAtEndpoint), _) | (_, Err(Error::RootAtEndpoint)) => {
                let mut pg = ParamPoly::new(alpha, g, vvar, tvar)?;
                t = pg.refine_root(&t)?;
                if let RootInterval::Exact(t0) = &t {
                    let mut pq = ParamPoly::new(alpha, q, vvar, tvar)?;
                    return pq.is_zero_at(t0);
                }
            }
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    Err(Error::Certification(
        "fiber membership test did not stabilize".into(),
    ))
}

/// Do two root intervals of `g(alpha, .)` name the same root?
pub fn same_fiber_root(
    alpha: &mut AlgebraicNumber,
    g: &MultiPoly,
    a: &RootInterval,
    b: &RootInterval,
    vvar: &str,
    tvar: &str,
) -> Result<bool> {
    let mut a = a.clone();
    let mut b = b.clone();
    let mut pg = ParamPoly::new(alpha, g, vvar, tvar)?;
    for _ in 0..REFINE_CAP {
        match (&a, &b) {
            (RootInterval::Exact(x), RootInterval::Exact(y)) => return Ok(x == y),
            (RootInterval::Exact(x), RootInterval::Open(lo, hi))
            | (RootInterval::Open(lo, hi), RootInterval::Exact(x)) => {
                if x > lo && x < hi {
                    // x is a root inside an isolating interval: it is the root
                    return Ok(true);
                }
                if x <= lo || x >= hi {
                    if (x < lo) || (x > hi) {
                        return Ok(false);
                    }
                    // root exactly on the boundary: shrink the open side
                    if matches!(a, RootInterval::Open(_, _)) {
                        a = pg.refine_root(&a)?;
                    } else {
                        b = pg.refine_root(&b)?;
                    }
                }
            }
            (RootInterval::Open(al, ah), RootInterval::Open(bl, bh)) => {
                if ah < bl || bh < al {
                    return Ok(false);
                }
                let lo = al.min(bl).clone();
                let hi = ah.max(bh).clone();
                match pg.count_roots_open(&lo, &hi) {
                    Ok(1) => return Ok(true),
                    Ok(_) => {
                        a = pg.refine_root(&a)?;
                        b = pg.refine_root(&b)?;
                    }
                    Err(Error::RootAtEndpoint) => {
                        a = pg.refine_root(&a)?;
                        b = pg.refine_root(&b)?;
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Err(Error::Certification(
        "fiber root identification did not stabilize".into(),
    ))
}

/// Interval enclosure of `numer/denom` at the box, refining the box until
/// the denominator excludes zero.
fn coord_enclosure(
    bx: &mut IsolatingBox,
    g: &MultiPoly,
    numer: &MultiPoly,
    denom: &MultiPoly,
    vvar: &str,
    tvar: &str,
) -> Result<RatInterval> {
    for _ in 0..REFINE_CAP {
        let mut asn = BTreeMap::new();
        asn.insert(vvar.to_string(), alg_interval(&bx.v));
        asn.insert(
            tvar.to_string(),
            RatInterval::new(bx.t.lo(), bx.t.hi()),
        );
        let d = eval_interval(denom, &asn);
        if !d.contains_zero() {
            let n = eval_interval(numer, &asn);
            return Ok(n.mul(&d.recip()));
        }
        bx.v.refine();
        let mut pg = ParamPoly::new(&mut bx.v, g, vvar, tvar)?;
        bx.t = pg.refine_root(&bx.t)?;
    }
    Err(Error::ParameterPole(format!(
        "denominator {} not separated from zero near the parameter box",
        denom
    )))
}

/// Exact rational value of `numer/denom` at the box, when detectable:
/// immediately for rational parameters, through a verified small-rational
/// guess when only `t` is rational.
fn coord_exact(
    bx: &mut IsolatingBox,
    numer: &MultiPoly,
    denom: &MultiPoly,
    vvar: &str,
    tvar: &str,
) -> Result<Option<Rat>> {
    let t0 = match bx.t.clone() {
        RootInterval::Exact(t0) => t0,
        RootInterval::Open(_, _) => return Ok(None),
    };
    if let Some(v0) = bx.v.as_exact() {
        let mut asn = BTreeMap::new();
        asn.insert(vvar.to_string(), v0);
        asn.insert(tvar.to_string(), t0);
        let d = denom.eval(&asn)?;
        if d == rat_i(0) {
            return Err(Error::ParameterPole(format!("{} vanishes", denom)));
        }
        return Ok(Some(numer.eval(&asn)? / d));
    }
    let nq = to_qpoly(&numer.subst_rat(tvar, &t0), vvar)?;
    let dq = to_qpoly(&denom.subst_rat(tvar, &t0), vvar)?;
    if bx.v.sign_of_qpoly(&dq)? == 0 {
        return Err(Error::ParameterPole(format!("{} vanishes", denom)));
    }
    for _ in 0..8 {
        let iv = alg_interval(&bx.v);
        let d = qp_eval_interval(&dq, &iv);
        if d.contains_zero() {
            bx.v.refine();
            continue;
        }
        let val = qp_eval_interval(&nq, &iv).mul(&d.recip());
        let guess = simplest_in(&val.lo, &val.hi);
        // verify numer - guess * denom vanishes at alpha
        let mut test: QPoly = nq.clone();
        while test.len() < dq.len() {
            test.push(rat_i(0));
        }
        for (i, c) in dq.iter().enumerate() {
            test[i] -= &guess * c;
        }
        qp_trim(&mut test);
        if bx.v.sign_of_qpoly(&test)? == 0 {
            return Ok(Some(guess));
        }
        bx.v.refine();
        bx.v.refine();
    }
    Ok(None)
}

fn coord_fractions(s2: &RationalSurface) -> [(MultiPoly, MultiPoly); 3] {
    [
        (s2.coords[0].numer().clone(), s2.coords[0].denom().clone()),
        (s2.coords[1].numer().clone(), s2.coords[1].denom().clone()),
        (s2.coords[2].numer().clone(), s2.coords[2].denom().clone()),
    ]
}

/// Lift a parameter box through the surface, with exact coordinates where
/// they can be certified.
pub fn lift_point(
    bx: &mut IsolatingBox,
    s2: &RationalSurface,
    g: &MultiPoly,
    vvar: &str,
    tvar: &str,
) -> Result<SpacePoint> {
    let fr = coord_fractions(s2);
    let mut out = Vec::with_capacity(3);
    for (n, d) in &fr {
        match coord_exact(bx, n, d, vvar, tvar)? {
            Some(r) => out.push(CoordVal::Exact(r)),
            None => out.push(CoordVal::Approx(coord_enclosure(bx, g, n, d, vvar, tvar)?)),
        }
    }
    Ok(SpacePoint([out[0].clone(), out[1].clone(), out[2].clone()]))
}

/// Certified coincidence of the space images of two parameter boxes.
/// Separation is decided by interval enclosures; equality needs exact
/// coordinates on both sides (never merged silently).
fn coincide(
    a: &mut IsolatingBox,
    b: &mut IsolatingBox,
    s2: &RationalSurface,
    g: &MultiPoly,
    vvar: &str,
    tvar: &str,
) -> Result<bool> {
    let fr = coord_fractions(s2);
    for _ in 0..24 {
        let mut all_exact_equal = true;
        for (n, d) in &fr {
            let ia = coord_enclosure(a, g, n, d, vvar, tvar)?;
            let ib = coord_enclosure(b, g, n, d, vvar, tvar)?;
            if ia.disjoint(&ib) {
                return Ok(false);
            }
            let ea = coord_exact(a, n, d, vvar, tvar)?;
            let eb = coord_exact(b, n, d, vvar, tvar)?;
            match (ea, eb) {
                (Some(x), Some(y)) => {
                    if x != y {
                        return Ok(false);
                    }
                }
                _ => all_exact_equal = false,
            }
        }
        if all_exact_equal {
            return Ok(true);
        }
        a.v.refine();
        b.v.refine();
        let mut pg = ParamPoly::new(&mut a.v, g, vvar, tvar)?;
        a.t = pg.refine_root(&a.t)?;
        let mut pg = ParamPoly::new(&mut b.v, g, vvar, tvar)?;
        b.t = pg.refine_root(&b.t)?;
    }
    Err(Error::Certification(
        "cannot decide coincidence of two lifted points".into(),
    ))
}

/// Same parameter point: same column value and same fiber root.
fn same_parameter_point(
    a: &mut IsolatingBox,
    b: &mut IsolatingBox,
    g: &MultiPoly,
    vvar: &str,
    tvar: &str,
) -> Result<bool> {
    if a.v.cmp_alg(&mut b.v)? != std::cmp::Ordering::Equal {
        return Ok(false);
    }
    same_fiber_root(&mut a.v, g, &a.t, &b.t, vvar, tvar)
}

fn divide_out(mut p: MultiPoly, f: &MultiPoly) -> MultiPoly {
    loop {
        match p.exact_divide(f) {
            Ok(q) => {
                if q.is_zero() {
                    return q;
                }
                p = q;
            }
            Err(_) => return p,
        }
    }
}

/// Finite solutions of `{g = 0, q = 0 for all q in constraints}` inside
/// the box.  A nonconstant common factor of `g` and every constraint is a
/// one-dimensional solution component, split off as `common_locus`.
pub fn constrained_points(
    g: &MultiPoly,
    constraints: &[MultiPoly],
    vvar: &str,
    tvar: &str,
    bbox: &BBox,
) -> Result<SystemSolutions> {
    // a nonzero constant constraint kills the system
    if constraints
        .iter()
        .any(|q| q.as_constant().map(|c| c != rat_i(0)).unwrap_or(false))
    {
        return Ok(SystemSolutions {
            common_locus: None,
            points: vec![],
            column_poly: None,
        });
    }
    let all = gcd_many(constraints);
    let c = gcd(&all, g);
    let (common_locus, g_rem) = if !c.is_constant() {
        (Some(c.clone()), divide_out(g.clone(), &c))
    } else {
        (None, g.clone())
    };
    if g_rem.is_constant() {
        return Ok(SystemSolutions {
            common_locus,
            points: vec![],
            column_poly: None,
        });
    }
    let mut elims: Vec<MultiPoly> = Vec::new();
    for q in constraints {
        if q.is_zero() {
            continue;
        }
        let r = if q.involves(tvar) {
            resultant(q, &g_rem, tvar)?
        } else {
            q.clone()
        };
        if !r.is_zero() {
            elims.push(r);
        }
    }
    if elims.is_empty() {
        return Err(Error::NonZeroDimensional(
            "every eliminant of the constraint system vanished".into(),
        ));
    }
    let h = gcd_many(&elims);
    if h.is_constant() {
        return Ok(SystemSolutions {
            common_locus,
            points: vec![],
            column_poly: None,
        });
    }
    let h_int = IntPoly::from_multipoly(&squarefree_part(&h)?, vvar)?;
    let cands = isolate_triangular(
        &h_int, &g_rem, vvar, tvar, &bbox.va, &bbox.vb, &bbox.ta, &bbox.tb,
    )?;
    let mut points = Vec::new();
    for mut bx in cands {
        normalize_box(&mut bx, &g_rem, vvar, tvar)?;
        let mut ok = true;
        for q in constraints {
            if !fiber_point_satisfies(&mut bx.v, &g_rem, q, &bx.t, vvar, tvar)? {
                ok = false;
                break;
            }
        }
        if ok {
            points.push(bx);
        }
    }
    Ok(SystemSolutions {
        common_locus,
        points,
        column_poly: Some(h_int),
    })
}

/// Numerators of the surface normal direction `dS2/dv x dS2/dt`.
pub fn cross_numerators(s2: &RationalSurface) -> [MultiPoly; 3] {
    let vvar = s2.params[0].clone();
    let tvar = s2.params[1].clone();
    let sv: Vec<_> = s2.coords.iter().map(|c| c.derivative(&vvar)).collect();
    let st: Vec<_> = s2.coords.iter().map(|c| c.derivative(&tvar)).collect();
    let comp = |i: usize, j: usize| {
        let a = sv[i].mul(&st[j]);
        let b = sv[j].mul(&st[i]);
        a.sub(&b).numer().normalized()
    };
    [comp(1, 2), comp(2, 0), comp(0, 1)]
}

/// Parameters where the surface itself is not regular on the curve.
pub fn irregular_parameters(
    s2: &RationalSurface,
    pc: &PlaneCurve,
    bbox: &BBox,
) -> Result<SystemSolutions> {
    let n = cross_numerators(s2);
    constrained_points(&pc.main, &n, &pc.params[0], &pc.params[1], bbox)
}

/// Singular points of the full plane curve (including crossings with
/// vertical-line components).
pub fn singular_parameters(pc: &PlaneCurve, bbox: &BBox) -> Result<SystemSolutions> {
    let (vvar, tvar) = (pc.params[0].as_str(), pc.params[1].as_str());
    let ft = pc.full.derivative(tvar);
    let fv = pc.full.derivative(vvar);
    // solutions are sought on the main curve: singular points of `main`
    // itself, and crossings of `main` with vertical lines, where both
    // partials of the full product vanish as well
    constrained_points(&pc.main, &[ft, fv], vvar, tvar, bbox)
}

fn fresh_name(base: &str, taken: &[&str]) -> String {
    let mut n = format!("{base}_q");
    while taken.contains(&n.as_str()) {
        n.push('q');
    }
    n
}

/// Parameter pairs `(v,t) != (u,s)` with `S2(v,t) = S2(u,s)`, grouped by
/// common space point.  A common irregular locus (a full curve component of
/// irregular parameters) is removed first: every point pair on a collapsed
/// component is a trivial coincidence and poisons the elimination with
/// identically vanishing resultants.
pub fn self_intersections(
    s2: &RationalSurface,
    pc: &PlaneCurve,
    bbox: &BBox,
) -> Result<Vec<SelfIntersectionGroup>> {
    let irr = irregular_parameters(s2, pc, bbox)?;
    self_intersections_off_locus(s2, pc, bbox, irr.common_locus.as_ref())
}

/// Divide every factor of `locus` out of `main`.
pub fn remove_locus(main: &MultiPoly, locus: Option<&MultiPoly>) -> MultiPoly {
    let mut g = main.clone();
    if let Some(l) = locus {
        if !l.is_constant() {
            while let Ok(q) = g.exact_divide(l) {
                if q.is_zero() {
                    break;
                }
                g = q;
            }
        }
    }
    g
}

pub fn self_intersections_off_locus(
    s2: &RationalSurface,
    pc: &PlaneCurve,
    bbox: &BBox,
    locus: Option<&MultiPoly>,
) -> Result<Vec<SelfIntersectionGroup>> {
    let (vvar, tvar) = (pc.params[0].as_str(), pc.params[1].as_str());
    let reduced = remove_locus(&pc.main, locus);
    if reduced.is_constant() {
        return Ok(vec![]);
    }
    let g_vt = &reduced;
    let taken: Vec<&str> = vec![vvar, tvar];
    let uvar = fresh_name(vvar, &taken);
    let taken: Vec<&str> = vec![vvar, tvar, &uvar];
    let svar = fresh_name(tvar, &taken);

    let rename = |p: &MultiPoly| {
        p.substitute(vvar, &MultiPoly::var(&uvar))
            .substitute(tvar, &MultiPoly::var(&svar))
    };
    let g_us = rename(g_vt);

    // difference numerators X_i(v,t) - X_i(u,s)
    let mut diffs: Vec<MultiPoly> = Vec::new();
    for c in &s2.coords {
        let n = c.numer();
        let d = c.denom();
        let e = n.mul(&rename(d)).sub(&rename(n).mul(d)).normalized();
        if !e.is_zero() {
            diffs.push(e);
        }
    }
    if diffs.is_empty() {
        return Err(Error::NonZeroDimensional(
            "surface image is a single point".into(),
        ));
    }

    let mut column_factors: Vec<MultiPoly> = Vec::new();

    // process cheapest coordinates first, so an infeasible constraint (for
    // instance an injective coordinate forcing u = v) is discovered before
    // any expensive resultant is attempted
    let mut order: Vec<usize> = (0..diffs.len()).collect();
    order.sort_by_key(|&i| {
        let e = &diffs[i];
        (
            (e.degree(&svar) as u64 + 1) * (e.degree(tvar) as u64 + 1),
            i,
        )
    });

    // partners on the same column (u = v, s != t)
    {
        let mut elims: Vec<MultiPoly> = Vec::new();
        let mut infeasible = false;
        let s_minus_t = MultiPoly::var(&svar).sub(&MultiPoly::var(tvar));
        let g_vs = g_us.substitute(&uvar, &MultiPoly::var(vvar));
        for &i in &order {
            let evv = diffs[i].substitute(&uvar, &MultiPoly::var(vvar));
            if evv.is_zero() {
                continue;
            }
            let c = match evv.exact_divide(&s_minus_t) {
                Ok(c) => c,
                Err(_) => {
                    return Err(Error::Internal(
                        "coordinate difference not divisible by the diagonal".into(),
                    ))
                }
            };
            if c.is_zero() {
                continue;
            }
            let d = if c.involves(&svar) {
                resultant(&c, &g_vs, &svar)?
            } else {
                c
            };
            if d.is_zero() {
                continue;
            }
            let r = if d.involves(tvar) {
                resultant(&d, g_vt, tvar)?
            } else {
                d
            };
            if r.is_zero() {
                continue;
            }
            if r.is_constant() {
                // one coordinate equation has no solutions at all
                infeasible = true;
                break;
            }
            elims.push(r);
        }
        if !infeasible && !elims.is_empty() {
            let h1 = gcd_many(&elims);
            if !h1.is_constant() {
                column_factors.push(h1);
            }
        }
    }

    // partners on different columns (u != v)
    {
        let mut ps: Vec<MultiPoly> = Vec::new();
        let mut infeasible = false;
        let v_minus_u = MultiPoly::var(vvar).sub(&MultiPoly::var(&uvar));
        for &i in &order {
            let e = &diffs[i];
            let a = if e.involves(&svar) {
                resultant(e, &g_us, &svar)?
            } else {
                e.clone()
            };
            if a.is_zero() {
                continue;
            }
            let p = if a.involves(tvar) {
                resultant(&a, g_vt, tvar)?
            } else {
                a
            };
            if p.is_zero() {
                continue;
            }
            // the trivial diagonal contributes exactly a (v - u) factor here
            let p = divide_out(p, &v_minus_u);
            if p.is_constant() {
                // the eliminant reduced to a nonzero constant: the equation
                // admits no off-diagonal solutions, so the case is empty
                infeasible = true;
                break;
            }
            ps.push(p);
        }
        let mut elims: Vec<MultiPoly> = Vec::new();
        if !infeasible {
            for p in &ps {
                if !p.involves(&uvar) {
                    elims.push(p.clone());
                }
            }
            let with_u: Vec<&MultiPoly> = ps.iter().filter(|p| p.involves(&uvar)).collect();
            for i in 0..with_u.len() {
                // the solution set is symmetric in (v,t) <-> (u,s), so the
                // u <-> v swap of an eliminant is an eliminant too
                let tmp = format!("{uvar}_swap");
                let swapped = with_u[i]
                    .substitute(vvar, &MultiPoly::var(&tmp))
                    .substitute(&uvar, &MultiPoly::var(vvar))
                    .substitute(&tmp, &MultiPoly::var(&uvar));
                let q = resultant(with_u[i], &swapped, &uvar)?;
                if !q.is_zero() && !q.is_constant() {
                    elims.push(q);
                }
                for j in i + 1..with_u.len() {
                    let q = resultant(with_u[i], with_u[j], &uvar)?;
                    if !q.is_zero() && !q.is_constant() {
                        elims.push(q);
                    }
                }
            }
        }
        if !elims.is_empty() {
            let h2 = gcd_many(&elims);
            if !h2.is_constant() {
                column_factors.push(h2);
            }
        }
    }

    if column_factors.is_empty() {
        return Ok(vec![]);
    }
    let mut h = MultiPoly::one();
    for f in &column_factors {
        h = h.mul(f);
    }
    let h_int = IntPoly::from_multipoly(&squarefree_part(&h)?, vvar)?;
    let mut cands = isolate_triangular(
        &h_int, g_vt, vvar, tvar, &bbox.va, &bbox.vb, &bbox.ta, &bbox.tb,
    )?;
    for bx in cands.iter_mut() {
        normalize_box(bx, g_vt, vvar, tvar)?;
    }

    // group candidates by certified space-point coincidence
    let n = cands.len();
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = cands.split_at_mut(j);
            let (a, b) = (&mut a[i], &mut b[0]);
            if same_parameter_point(a, b, g_vt, vvar, tvar)? {
                continue;
            }
            if coincide(a, b, s2, g_vt, vvar, tvar)? {
                uf.union(i, j);
            }
        }
    }
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        by_root.entry(uf.find(i)).or_default().push(i);
    }
    let mut groups = Vec::new();
    for (_, members) in by_root {
        if members.len() < 2 {
            continue;
        }
        let mut points: Vec<IsolatingBox> =
            members.iter().map(|&i| cands[i].clone()).collect();
        let space_point = lift_point(&mut points[0], s2, g_vt, vvar, tvar)?;
        groups.push(SelfIntersectionGroup {
            points,
            space_point,
        });
    }
    Ok(groups)
}

/// All character points, plus the column polynomials the refined plane
/// graph needs.
pub fn character_points(
    s2: &RationalSurface,
    pc: &PlaneCurve,
    bbox: &BBox,
) -> Result<CharacterPoints> {
    let singular = singular_parameters(pc, bbox)?;
    let irregular = irregular_parameters(s2, pc, bbox)?;
    let groups =
        self_intersections_off_locus(s2, pc, bbox, irregular.common_locus.as_ref())?;
    let mut column_polys: Vec<IntPoly> = Vec::new();
    for s in [&singular, &irregular] {
        if let Some(h) = &s.column_poly {
            column_polys.push(h.clone());
        }
    }
    for g in &groups {
        for p in &g.points {
            column_polys.push(p.v.poly.clone());
        }
    }
    Ok(CharacterPoints {
        singular,
        irregular,
        groups,
        column_polys,
    })
}

/// Plane graph rebuilt with every character-point column present.
pub fn refine_graph(
    pc: &PlaneCurve,
    bbox: &BBox,
    chars: &CharacterPoints,
) -> Result<PlaneGraph> {
    plane_graph_with_extra(pc, bbox, &chars.column_polys)
}

/// Find the plane-graph vertex holding a character point.
fn locate_vertex(
    plane: &PlaneGraph,
    bx: &IsolatingBox,
    vvar: &str,
    tvar: &str,
) -> Result<usize> {
    let mut target = bx.clone();
    for (ci, col) in plane.columns.iter().enumerate() {
        let mut col = col.clone();
        if target.v.cmp_alg(&mut col)? != std::cmp::Ordering::Equal {
            continue;
        }
        for (vi, v) in plane.vertices.iter().enumerate() {
            if v.column != ci {
                continue;
            }
            let mut alpha = col.clone();
            if same_fiber_root(&mut alpha, &plane.g_main, &target.t, &v.t, vvar, tvar)?
                || (v.kind == VertexKind::VerticalEnd
                    && matches!((&target.t, &v.t),
                        (RootInterval::Exact(a), RootInterval::Exact(b)) if a == b))
            {
                return Ok(vi);
            }
        }
        // vertical columns: character point may sit on the line itself
        if plane.column_on_vertical[ci] {
            for (vi, v) in plane.vertices.iter().enumerate() {
                if v.column == ci {
                    if let (RootInterval::Exact(a), RootInterval::Exact(b)) = (&target.t, &v.t)
                    {
                        if a == b {
                            return Ok(vi);
                        }
                    }
                }
            }
        }
    }
    Err(Error::Certification(
        "character point is not a vertex of the refined graph".into(),
    ))
}

/// Map the refined plane graph through the surface, fusing
/// self-intersection preimages into single space vertices.
pub fn lift(
    plane: &PlaneGraph,
    s2: &RationalSurface,
    chars: &CharacterPoints,
) -> Result<SpaceGraph> {
    let vvar = plane.params[0].as_str();
    let tvar = plane.params[1].as_str();
    let npv = plane.vertices.len();
    let mut uf = UnionFind::new(npv);
    let mut selfint_ids: Vec<usize> = Vec::new();
    // a plane vertex fused into a group gets the group's (often exact) point
    let mut group_point: BTreeMap<usize, SpacePoint> = BTreeMap::new();
    for g in &chars.groups {
        let ids: Vec<usize> = g
            .points
            .iter()
            .map(|p| locate_vertex(plane, p, vvar, tvar))
            .collect::<Result<_>>()?;
        for w in ids.windows(2) {
            uf.union(w[0], w[1]);
        }
        for &id in &ids {
            group_point.insert(id, g.space_point.clone());
        }
        selfint_ids.extend(ids);
    }
    let mut singular_ids = Vec::new();
    for p in &chars.singular.points {
        singular_ids.push(locate_vertex(plane, p, vvar, tvar)?);
    }
    let mut irregular_ids = Vec::new();
    for p in &chars.irregular.points {
        irregular_ids.push(locate_vertex(plane, p, vvar, tvar)?);
    }

    // group plane vertices into space vertices
    let mut rep_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut vertices: Vec<SpaceVertex> = Vec::new();
    let mut space_of = vec![usize::MAX; npv];
    for i in 0..npv {
        let r = uf.find(i);
        let sv = *rep_of.entry(r).or_insert_with(|| {
            vertices.push(SpaceVertex {
                preimages: vec![],
                plane_vertices: vec![],
                point: SpacePoint([
                    CoordVal::Exact(rat_i(0)),
                    CoordVal::Exact(rat_i(0)),
                    CoordVal::Exact(rat_i(0)),
                ]),
                tags: vec![],
            });
            vertices.len() - 1
        });
        space_of[i] = sv;
        let pv = &plane.vertices[i];
        let mut bx = IsolatingBox {
            v: plane.columns[pv.column].clone(),
            t: pv.t.clone(),
        };
        let lifted = match group_point.get(&i) {
            Some(p) => p.clone(),
            None => lift_point(&mut bx, s2, &plane.g_main, vvar, tvar)?,
        };
        let w = &mut vertices[sv];
        if w.preimages.is_empty() || (w.point.exact().is_none() && lifted.exact().is_some()) {
            w.point = lifted;
        }
        w.preimages.push(bx);
        w.plane_vertices.push(i);
        let on_wall = pv.column == 0
            || pv.column + 1 == plane.columns.len()
            || matches!(&pv.t, RootInterval::Exact(x)
                if *x == plane.bbox.ta || *x == plane.bbox.tb);
        if on_wall && !w.tags.contains(&VertexTag::Boundary) {
            w.tags.push(VertexTag::Boundary);
        }
    }
    for &i in &selfint_ids {
        let w = &mut vertices[space_of[i]];
        if !w.tags.contains(&VertexTag::SelfIntersection) {
            w.tags.push(VertexTag::SelfIntersection);
        }
    }
    for &i in &singular_ids {
        let w = &mut vertices[space_of[i]];
        if !w.tags.contains(&VertexTag::Singular) {
            w.tags.push(VertexTag::Singular);
        }
    }
    for &i in &irregular_ids {
        let w = &mut vertices[space_of[i]];
        if !w.tags.contains(&VertexTag::Irregular) {
            w.tags.push(VertexTag::Irregular);
        }
    }
    // cusp: a character vertex where the lifted tangent vanishes
    let tangent = curve_tangent_numerators(s2, &plane.g_main, vvar, tvar);
    for sv in vertices.iter_mut() {
        let is_char = sv.tags.contains(&VertexTag::Singular)
            || sv.tags.contains(&VertexTag::Irregular);
        if !is_char {
            continue;
        }
        let bx = &mut sv.preimages[0];
        let mut vanish = true;
        for w in &tangent {
            if matches!(&bx.t, RootInterval::Exact(_)) || true {
                match fiber_point_satisfies(&mut bx.v, &plane.g_main, w, &bx.t, vvar, tvar) {
                    Ok(true) => {}
                    Ok(false) => {
                        vanish = false;
                        break;
                    }
                    Err(_) => {
                        vanish = false;
                        break;
                    }
                }
            }
        }
        if vanish {
            sv.tags.push(VertexTag::Cusp);
        }
    }

    let edges = plane
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| SpaceEdge {
            from: space_of[e.from],
            to: space_of[e.to],
            kind: e.kind.clone(),
            plane_edge: Some(i),
        })
        .collect();
    Ok(SpaceGraph { vertices, edges })
}

/// Numerators of `dS2/dv * dG/dt - dS2/dt * dG/dv`, the tangent direction
/// of the lifted curve up to a scalar.
pub fn curve_tangent_numerators(
    s2: &RationalSurface,
    g: &MultiPoly,
    vvar: &str,
    tvar: &str,
) -> [MultiPoly; 3] {
    let gt = g.derivative(tvar);
    let gv = g.derivative(vvar);
    let mut out = Vec::with_capacity(3);
    for c in &s2.coords {
        let cv = c.derivative(vvar);
        let ct = c.derivative(tvar);
        let w = cv
            .mul(&crate::surface::RationalFunction::from_poly(gt.clone()))
            .sub(&ct.mul(&crate::surface::RationalFunction::from_poly(gv.clone())));
        out.push(w.numer().normalized());
    }
    [out[0].clone(), out[1].clone(), out[2].clone()]
}

const CROSSING_PASS_CAP: usize = 40;

/// Representative rational coordinates, refining approximate vertices first.
fn rep_points(
    graph: &mut SpaceGraph,
    s2: &RationalSurface,
    g: &MultiPoly,
    vvar: &str,
    tvar: &str,
) -> Result<Vec<[Rat; 3]>> {
    let eps = rat(1, 1 << 16);
    let mut reps = Vec::with_capacity(graph.vertices.len());
    for sv in graph.vertices.iter_mut() {
        let needs = sv.point.exact().is_none();
        if needs {
            let bx = &mut sv.preimages[0];
            bx.v.refine_to_width(&eps);
            if bx.t.width() > eps {
                let mut pg = ParamPoly::new(&mut bx.v, g, vvar, tvar)?;
                bx.t = pg.refine_root_to_width(&bx.t, &eps)?;
            }
            sv.point = lift_point(bx, s2, g, vvar, tvar)?;
        }
        reps.push(sv.point.rep());
    }
    Ok(reps)
}

/// Subdivide straight edges until no two cross transversally.
pub fn resolve_crossings(
    graph: &mut SpaceGraph,
    plane: &PlaneGraph,
    s2: &RationalSurface,
) -> Result<()> {
    let g = &plane.g_main;
    let (vvar, tvar) = (plane.params[0].as_str(), plane.params[1].as_str());
    for _pass in 0..CROSSING_PASS_CAP {
        let reps = rep_points(graph, s2, g, vvar, tvar)?;
        let mut crossing: Option<(usize, usize)> = None;
        'search: for i in 0..graph.edges.len() {
            for j in i + 1..graph.edges.len() {
                let (a, b) = (&graph.edges[i], &graph.edges[j]);
                if a.from == b.from || a.from == b.to || a.to == b.from || a.to == b.to {
                    continue;
                }
                if reps[a.from] == reps[a.to] || reps[b.from] == reps[b.to] {
                    continue;
                }
                if segments_cross_3d(
                    &reps[a.from],
                    &reps[a.to],
                    &reps[b.from],
                    &reps[b.to],
                ) {
                    crossing = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((i, j)) = crossing else {
            return Ok(());
        };
        subdivide_edge(graph, plane, j, s2)?;
        subdivide_edge(graph, plane, i, s2)?;
    }
    Err(Error::Certification(
        "crossing resolution did not converge; coincident geometry suspected".into(),
    ))
}

/// Preimage box at one end of an edge.  Fused vertices carry several
/// preimages; the underlying plane edge decides which one this edge
/// actually touches.
pub fn edge_end_box<'a>(
    graph: &'a SpaceGraph,
    plane: &PlaneGraph,
    ei: usize,
    from_side: bool,
) -> &'a IsolatingBox {
    let e = &graph.edges[ei];
    let sv = &graph.vertices[if from_side { e.from } else { e.to }];
    if sv.preimages.len() > 1 {
        if let Some(pe) = e.plane_edge {
            let pv = if from_side {
                plane.edges[pe].from
            } else {
                plane.edges[pe].to
            };
            if let Some(pos) = sv.plane_vertices.iter().position(|&x| x == pv) {
                return &sv.preimages[pos];
            }
        }
    }
    &sv.preimages[0]
}

/// Replace an edge by two edges through a new on-curve vertex at an
/// interior parameter.
fn subdivide_edge(
    graph: &mut SpaceGraph,
    plane: &PlaneGraph,
    ei: usize,
    s2: &RationalSurface,
) -> Result<()> {
    let g = &plane.g_main;
    let (vvar, tvar) = (plane.params[0].as_str(), plane.params[1].as_str());
    let edge = graph.edges[ei].clone();
    let from_box = edge_end_box(graph, plane, ei, true).clone();
    let to_box = edge_end_box(graph, plane, ei, false).clone();
    let mut bx = match &edge.kind {
        EdgeKind::Branch { ordinal, .. } => {
            // rational v strictly between the endpoint columns
            let mut a = from_box.v.clone();
            let mut b = to_box.v.clone();
            while a.hi() >= b.lo() && b.hi() >= a.lo() {
                a.refine();
                b.refine();
            }
            let m = if a.hi() < b.lo() {
                (a.hi() + b.lo()) / rat_i(2)
            } else {
                (b.hi() + a.lo()) / rat_i(2)
            };
            let fib = g.subst_rat(vvar, &m);
            let fib_int = IntPoly::from_multipoly(&fib, tvar)?;
            let roots = crate::roots::isolate_all(&fib_int.squarefree()?)?;
            let t = roots
                .into_iter()
                .nth(*ordinal)
                .ok_or_else(|| Error::Internal("branch ordinal outside fiber".into()))?;
            IsolatingBox {
                v: AlgebraicNumber::exact(m),
                t,
            }
        }
        EdgeKind::Vertical => {
            let col = from_box.v.clone();
            let (mut ta, mut tb) = (from_box.t.clone(), to_box.t.clone());
            if ta.lo() > tb.lo() {
                std::mem::swap(&mut ta, &mut tb);
            }
            let m = (ta.hi() + tb.lo()) / rat_i(2);
            IsolatingBox {
                v: col,
                t: RootInterval::Exact(m),
            }
        }
    };
    let point = lift_point(&mut bx, s2, g, vvar, tvar)?;
    let nv = graph.vertices.len();
    graph.vertices.push(SpaceVertex {
        preimages: vec![bx],
        plane_vertices: vec![],
        point,
        tags: vec![VertexTag::Injected],
    });
    let to = edge.to;
    graph.edges[ei].to = nv;
    graph.edges.push(SpaceEdge {
        from: nv,
        to,
        kind: edge.kind,
        plane_edge: edge.plane_edge,
    });
    Ok(())
}

/// Full space-topology stage.
/// Collapse graph edges lying on a common irregular locus whose branches
/// map to single points (for instance a cone apex: the whole parameter line
/// maps to one space point).  Such edges carry no curve geometry; removing
/// them keeps the graph homeomorphic to the actual intersection curve.
/// Collapses only when the lifted tangent vanishes identically along the
/// locus, certified by polynomial divisibility.
pub fn collapse_constant_locus(
    graph: &mut SpaceGraph,
    plane: &PlaneGraph,
    s2: &RationalSurface,
    locus: &MultiPoly,
) -> Result<()> {
    if locus.is_constant() {
        return Ok(());
    }
    let vvar = plane.params[0].as_str();
    let tvar = plane.params[1].as_str();
    let tg = curve_tangent_numerators(s2, locus, vvar, tvar);
    for w in &tg {
        if !w.is_zero() && w.exact_divide(locus).is_err() {
            // the locus maps to a genuine curve; nothing to collapse
            return Ok(());
        }
    }

    let mut remove = vec![false; graph.edges.len()];
    let mut images: Vec<Option<SpacePoint>> = vec![None; graph.edges.len()];
    for (ei, e) in graph.edges.iter().enumerate() {
        let EdgeKind::Branch { slab, ordinal } = &e.kind else {
            continue;
        };
        let vm = plane.slab_samples[*slab].clone();
        let roots = crate::plane_topology::fiber_roots_at(
            &plane.g_main,
            vvar,
            tvar,
            &vm,
            &plane.bbox.ta,
            &plane.bbox.tb,
        )?;
        let Some(t0) = roots.get(*ordinal) else {
            continue;
        };
        let fib = IntPoly::from_multipoly(&plane.g_main.subst_rat(vvar, &vm), tvar)?
            .squarefree()?;
        let mut t = t0.clone();
        let mut on_locus = false;
        for _ in 0..24 {
            let mut av = AlgebraicNumber::exact(vm.clone());
            match fiber_point_satisfies(&mut av, &plane.g_main, locus, &t, vvar, tvar) {
                Ok(b) => {
                    on_locus = b;
                    break;
                }
                Err(Error::RootAtEndpoint) => t = crate::roots::refine(&fib, &t),
                Err(e) => return Err(e),
            }
        }
        if !on_locus {
            continue;
        }
        let mut bx = IsolatingBox {
            v: AlgebraicNumber::exact(vm),
            t,
        };
        let p = lift_point(&mut bx, s2, &plane.g_main, vvar, tvar)?;
        if p.exact().is_none() {
            continue;
        }
        remove[ei] = true;
        images[ei] = Some(p);
    }
    if !remove.iter().any(|&r| r) {
        return Ok(());
    }

    // endpoints of a collapsed edge sit on the locus branch, so their image
    // is the branch image regardless of what the interval lift produced
    let mut touched: std::collections::BTreeSet<usize> = std::collections::BTreeSet::new();
    for (ei, e) in graph.edges.iter().enumerate() {
        if !remove[ei] {
            continue;
        }
        let p = images[ei].clone().expect("image recorded with removal");
        for end in [e.from, e.to] {
            graph.vertices[end].point = p.clone();
            if !graph.vertices[end].tags.contains(&VertexTag::Irregular) {
                graph.vertices[end].tags.push(VertexTag::Irregular);
            }
            touched.insert(end);
        }
    }
    let edges: Vec<SpaceEdge> = graph
        .edges
        .iter()
        .enumerate()
        .filter(|(ei, _)| !remove[*ei])
        .map(|(_, e)| e.clone())
        .collect();
    graph.edges = edges;

    // drop isolated locus vertices whose point another vertex already
    // carries; keep one representative for a genuinely isolated point
    let n = graph.vertices.len();
    let mut degree = vec![0usize; n];
    for e in &graph.edges {
        degree[e.from] += 1;
        degree[e.to] += 1;
    }
    let mut keep = vec![true; n];
    for &vi in &touched {
        if degree[vi] > 0 {
            continue;
        }
        let p = graph.vertices[vi].point.exact().expect("touched points are exact");
        let dup = (0..n).any(|j| {
            j != vi
                && keep[j]
                && (degree[j] > 0 || j < vi)
                && graph.vertices[j].point.exact() == Some(p.clone())
        });
        if dup {
            keep[vi] = false;
        }
    }
    let mut newidx = vec![usize::MAX; n];
    let mut vertices = Vec::new();
    for i in 0..n {
        if keep[i] {
            newidx[i] = vertices.len();
            vertices.push(graph.vertices[i].clone());
        }
    }
    for e in graph.edges.iter_mut() {
        e.from = newidx[e.from];
        e.to = newidx[e.to];
    }
    graph.vertices = vertices;
    Ok(())
}

pub fn space_topology(
    s2: &RationalSurface,
    pc: &PlaneCurve,
    bbox: &BBox,
) -> Result<SpaceTopology> {
    let chars = character_points(s2, pc, bbox)?;
    let plane = refine_graph(pc, bbox, &chars)?;
    let mut graph = lift(&plane, s2, &chars)?;
    if let Some(l) = &chars.irregular.common_locus {
        collapse_constant_locus(&mut graph, &plane, s2, l)?;
    }
    resolve_crossings(&mut graph, &plane, s2)?;
    Ok(SpaceTopology {
        chars,
        plane,
        graph,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::surface::RationalFunction;

    fn rf(n: &str, d: &str) -> RationalFunction {
        RationalFunction::new(parse_poly(n).unwrap(), parse_poly(d).unwrap()).unwrap()
    }

    fn surf(x: (&str, &str), y: (&str, &str), z: (&str, &str)) -> RationalSurface {
        RationalSurface::new(
            ["v".into(), "t".into()],
            [rf(x.0, x.1), rf(y.0, y.1), rf(z.0, z.1)],
        )
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
    fn plane_surface_has_no_irregular_points() {
        let s2 = surf(("v", "1"), ("t", "1"), ("0", "1"));
        let pc = curve("v^2 + t^2 - 1", "1");
        let r = irregular_parameters(&s2, &pc, &bx(-2, 2, -2, 2)).unwrap();
        assert!(r.common_locus.is_none());
        assert!(r.points.is_empty());
    }

    #[test]
    fn injective_line_has_no_self_intersections() {
        let s2 = surf(("v", "1"), ("t", "1"), ("v + t", "1"));
        let pc = curve("t - v", "1");
        let g = self_intersections(&s2, &pc, &bx(-2, 2, -2, 2)).unwrap();
        assert!(g.is_empty());
    }

    #[test]
    fn quartic_sextic_self_intersections() {
        // the cubic-sweep surface whose plane curve is the sextic with
        // parameter pairs (0,0),(0,1) -> (0,0,0) and (32,0),(32,1) -> (32,-8,0)
        let s2 = surf(
            ("v", "1"),
            ("t^2 - t - 1/4*v", "1"),
            ("t^3 - t", "1"),
        );
        let pc = curve(
            "2*v + t^4 + t^3 + 1/2*t^2*v - 2*t^2 - 1/2*t*v - 1/16*v^2 - t^6 + t",
            "1",
        );
        let groups = self_intersections(&s2, &pc, &bx(-2, 34, -2, 2)).unwrap();
        assert_eq!(groups.len(), 2);
        let mut pts: Vec<[Rat; 3]> = groups
            .iter()
            .map(|g| g.space_point.exact().expect("rational point"))
            .collect();
        pts.sort();
        assert_eq!(pts[0], [rat_i(0), rat_i(0), rat_i(0)]);
        assert_eq!(pts[1], [rat_i(32), rat_i(-8), rat_i(0)]);
        for g in &groups {
            assert_eq!(g.points.len(), 2);
            for p in &g.points {
                let v = p.v.as_exact().expect("rational column");
                assert!(v == rat_i(0) || v == rat_i(32));
            }
        }
    }

    #[test]
    fn circle_and_line_singular_vertex() {
        // main curve t = 0 crossed by the vertical line v = 1
        let pc = curve("t", "(1 + v^2)*(v - 1)");
        let s = singular_parameters(&pc, &bx(-3, 3, -3, 3)).unwrap();
        assert_eq!(s.points.len(), 1);
        assert_eq!(s.points[0].v.as_exact(), Some(rat_i(1)));
        assert_eq!(s.points[0].t, RootInterval::Exact(rat_i(0)));
    }

    #[test]
    fn circle_and_line_space_graph() {
        // S2 maps t = 0 to the unit circle at height 1 and v = 1 to the
        // vertical line through (0,1,1)
        let s2 = surf(
            ("1 - v^2", "1 + v^2"),
            ("2*v", "1 + v^2"),
            ("t + 1", "1"),
        );
        let pc = curve("t", "(1 + v^2)*(v - 1)");
        let st = space_topology(&s2, &pc, &bx(-3, 3, -3, 3)).unwrap();
        // the crossing point lifts to (0,1,1)
        let fused: Vec<&SpaceVertex> = st
            .graph
            .vertices
            .iter()
            .filter(|v| v.tags.contains(&VertexTag::Singular))
            .collect();
        assert_eq!(fused.len(), 1);
        assert_eq!(
            fused[0].point.exact(),
            Some([rat_i(0), rat_i(1), rat_i(1)])
        );
        // one component; the circle arc inside the box plus the line
        assert_eq!(st.graph.components(), 1);
    }

    #[test]
    fn lift_fuses_self_intersections() {
        let s2 = surf(
            ("v", "1"),
            ("t^2 - t - 1/4*v", "1"),
            ("t^3 - t", "1"),
        );
        let pc = curve(
            "2*v + t^4 + t^3 + 1/2*t^2*v - 2*t^2 - 1/2*t*v - 1/16*v^2 - t^6 + t",
            "1",
        );
        let b = bx(-2, 34, -2, 2);
        let st = space_topology(&s2, &pc, &b).unwrap();
        let fused: Vec<usize> = st
            .graph
            .vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| v.tags.contains(&VertexTag::SelfIntersection))
            .map(|(i, _)| i)
            .collect();
        assert_eq!(fused.len(), 2);
        for &vi in &fused {
            assert_eq!(st.graph.vertices[vi].preimages.len(), 2);
            // fused vertices carry the edges of both preimages
            let deg: usize = st
                .graph
                .edges
                .iter()
                .map(|e| (e.from == vi) as usize + (e.to == vi) as usize)
                .sum();
            assert!(deg >= 2);
        }
        let mut pts: Vec<[Rat; 3]> = fused
            .iter()
            .map(|&vi| st.graph.vertices[vi].point.exact().expect("rational"))
            .collect();
        pts.sort();
        assert_eq!(pts[0], [rat_i(0), rat_i(0), rat_i(0)]);
        assert_eq!(pts[1], [rat_i(32), rat_i(-8), rat_i(0)]);
    }
}
