//! Topology graph of the plane curve inside a parameter box.
//!
//! Critical columns split the box into slabs on which the curve is a union
//! of disjoint function branches.  Vertices live on columns; edges match
//! branch ordinals across slabs.  Vertical-line components re-enter here as
//! extra columns carrying chains of vertical edges.
//!
//! Certification strategy: around each column a rational strip `[a,b]` is
//! shrunk until no branch crosses any vertex separator line inside it, which
//! makes the branch-to-vertex assignment at the strip edges exact.

use crate::error::{Error, Result};
use crate::geom::BBox;
use crate::implicitize::PlaneCurve;
use crate::poly::{resultant, squarefree_part, MultiPoly};
use crate::rat::{rat_i, Rat};
use crate::roots::algnum::{AlgebraicNumber, ParamPoly};
use crate::roots::{count_roots_in, isolate_closed, refine, IntPoly, RootInterval};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexKind {
    /// Root of the main curve polynomial on its column.
    Curve,
    /// Endpoint of a vertical line on the box boundary.
    VerticalEnd,
}

#[derive(Clone, Debug)]
pub struct PlaneVertex {
    pub column: usize,
    pub t: RootInterval,
    pub kind: VertexKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// Function branch crossing slab `slab`, the `ordinal`-th root from
    /// below at any interior sample.
    Branch { slab: usize, ordinal: usize },
    /// Segment of a vertical line between consecutive vertices on a column.
    Vertical,
}

#[derive(Clone, Debug)]
pub struct PlaneEdge {
    pub from: usize,
    pub to: usize,
    pub kind: EdgeKind,
}

#[derive(Clone, Debug)]
pub struct PlaneGraph {
    pub params: [String; 2],
    pub g_main: MultiPoly,
    pub vertical: MultiPoly,
    pub bbox: BBox,
    pub columns: Vec<AlgebraicNumber>,
    pub column_on_vertical: Vec<bool>,
    /// Interior rational sample per slab (length = columns - 1).
    pub slab_samples: Vec<Rat>,
    /// Branch count per slab.
    pub slab_counts: Vec<usize>,
    pub vertices: Vec<PlaneVertex>,
    pub edges: Vec<PlaneEdge>,
}

impl PlaneGraph {
    pub fn components(&self) -> usize {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, i: usize) -> usize {
            if p[i] != i {
                let r = find(p, p[i]);
                p[i] = r;
            }
            p[i]
        }
        for e in &self.edges {
            let a = find(&mut parent, e.from);
            let b = find(&mut parent, e.to);
            if a != b {
                parent[a] = b;
            }
        }
        let mut roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    /// Independent cycles: `E - V + C`.
    pub fn cycle_rank(&self) -> usize {
        (self.edges.len() + self.components()) - self.vertices.len()
    }
}

/// Product of the column-defining factors: box walls, discriminant in `t`,
/// leading-coefficient locus, crossings of the horizontal box edges, and the
/// vertical-line locus.  Squarefree.
pub fn critical_polynomial(
    g_main: &MultiPoly,
    vertical: &MultiPoly,
    bbox: &BBox,
    vvar: &str,
    tvar: &str,
) -> Result<IntPoly> {
    let v = MultiPoly::var(vvar);
    let mut n = v
        .sub(&MultiPoly::constant(bbox.va.clone()))
        .mul(&v.sub(&MultiPoly::constant(bbox.vb.clone())));
    let dt = g_main.degree(tvar);
    if dt >= 1 {
        for edge in [&bbox.ta, &bbox.tb] {
            let ge = g_main.subst_rat(tvar, edge);
            if !ge.is_zero() && !ge.is_constant() {
                n = n.mul(&ge);
            }
        }
        let lc = g_main.leading_coeff(tvar);
        if !lc.is_constant() {
            n = n.mul(&lc);
        }
    }
    if dt >= 2 {
        let disc = resultant(g_main, &g_main.derivative(tvar), tvar)?;
        if disc.is_zero() {
            return Err(Error::Internal(
                "discriminant of squarefree curve vanished".into(),
            ));
        }
        if !disc.is_constant() {
            n = n.mul(&disc);
        }
    }
    if !vertical.is_constant() {
        n = n.mul(vertical);
    }
    let n = squarefree_part(&n)?;
    IntPoly::from_multipoly(&n, vvar)
}

/// Build the topology graph of a plane curve inside `bbox`.
pub fn plane_graph(pc: &PlaneCurve, bbox: &BBox) -> Result<PlaneGraph> {
    plane_graph_with_extra(pc, bbox, &[])
}

/// Same, with extra column-defining polynomials merged in (used to refine
/// the graph at self-intersection parameters).  Passing factors already
/// present changes nothing, so refinement is idempotent.
pub fn plane_graph_with_extra(
    pc: &PlaneCurve,
    bbox: &BBox,
    extra: &[IntPoly],
) -> Result<PlaneGraph> {
    let vvar = pc.params[0].as_str();
    let tvar = pc.params[1].as_str();
    let g_main = pc.main.clone();
    let vertical = pc.vertical.clone();

    let mut n_poly = critical_polynomial(&g_main, &vertical, bbox, vvar, tvar)?.to_multipoly(vvar);
    for e in extra {
        if e.degree() >= 1 {
            n_poly = n_poly.mul(&e.to_multipoly(vvar));
        }
    }
    let n_int = IntPoly::from_multipoly(&squarefree_part(&n_poly)?, vvar)?;

    let mut columns: Vec<AlgebraicNumber> = Vec::new();
    for iv in isolate_closed(&n_int, &bbox.va, &bbox.vb)? {
        columns.push(AlgebraicNumber::new(n_int.clone(), iv)?);
    }
    separate(&mut columns);
    let ncols = columns.len();
    debug_assert!(ncols >= 2);

    let vertical_int = if vertical.is_constant() {
        None
    } else {
        Some(IntPoly::from_multipoly(&vertical, vvar)?)
    };
    let mut column_on_vertical = vec![false; ncols];
    if let Some(vi) = &vertical_int {
        for (i, c) in columns.iter_mut().enumerate() {
            column_on_vertical[i] = c.is_root_of(vi)?;
        }
    }

    // strip edges per column: rational points inside the adjacent slabs
    let mut left_edge: Vec<Option<Rat>> = vec![None; ncols];
    let mut right_edge: Vec<Option<Rat>> = vec![None; ncols];
    let mut slab_samples = Vec::with_capacity(ncols - 1);
    for i in 0..ncols - 1 {
        let m = (columns[i].hi() + columns[i + 1].lo()) / rat_i(2);
        right_edge[i] = Some(m.clone());
        left_edge[i + 1] = Some(m.clone());
        slab_samples.push(m);
    }

    let mut vertices: Vec<PlaneVertex> = Vec::new();
    let mut edges: Vec<PlaneEdge> = Vec::new();
    // per column: global ids of curve vertices, and branch->vertex maps
    let mut curve_ids: Vec<Vec<usize>> = Vec::with_capacity(ncols);
    let mut left_attach: Vec<Vec<usize>> = Vec::with_capacity(ncols);
    let mut right_attach: Vec<Vec<usize>> = Vec::with_capacity(ncols);

    for i in 0..ncols {
        let data = column_data(
            &mut columns[i],
            &g_main,
            vvar,
            tvar,
            bbox,
            left_edge[i].clone(),
            right_edge[i].clone(),
        )?;
        let mut ids = Vec::with_capacity(data.vertices.len());
        for t in &data.vertices {
            ids.push(vertices.len());
            vertices.push(PlaneVertex {
                column: i,
                t: t.clone(),
                kind: VertexKind::Curve,
            });
        }
        // vertical line through this column: chain all its vertices,
        // including box-edge endpoints
        if column_on_vertical[i] {
            let mut chain: Vec<usize> = ids.clone();
            for endpoint in [&bbox.ta, &bbox.tb] {
                let present = data
                    .vertices
                    .iter()
                    .any(|t| matches!(t, RootInterval::Exact(x) if x == endpoint));
                if !present {
                    chain.push(vertices.len());
                    vertices.push(PlaneVertex {
                        column: i,
                        t: RootInterval::Exact(endpoint.clone()),
                        kind: VertexKind::VerticalEnd,
                    });
                }
            }
            chain.sort_by(|&x, &y| {
                vertices[x]
                    .t
                    .lo()
                    .cmp(&vertices[y].t.lo())
                    .then(vertices[x].t.hi().cmp(&vertices[y].t.hi()))
            });
            for w in chain.windows(2) {
                edges.push(PlaneEdge {
                    from: w[0],
                    to: w[1],
                    kind: EdgeKind::Vertical,
                });
            }
        }
        curve_ids.push(ids);
        left_attach.push(data.left_attach);
        right_attach.push(data.right_attach);
    }

    // match branch ordinals across each slab
    let mut slab_counts = Vec::with_capacity(ncols - 1);
    for i in 0..ncols - 1 {
        let r = &right_attach[i];
        let l = &left_attach[i + 1];
        if r.len() != l.len() {
            return Err(Error::Certification(format!(
                "branch count mismatch across slab {i}: {} vs {}",
                r.len(),
                l.len()
            )));
        }
        slab_counts.push(r.len());
        for k in 0..r.len() {
            edges.push(PlaneEdge {
                from: curve_ids[i][r[k]],
                to: curve_ids[i + 1][l[k]],
                kind: EdgeKind::Branch {
                    slab: i,
                    ordinal: k,
                },
            });
        }
    }

    Ok(PlaneGraph {
        params: [vvar.to_string(), tvar.to_string()],
        g_main,
        vertical,
        bbox: bbox.clone(),
        columns,
        column_on_vertical,
        slab_samples,
        slab_counts,
        vertices,
        edges,
    })
}

fn separate(cols: &mut [AlgebraicNumber]) {
    for i in 1..cols.len() {
        let (a, b) = cols.split_at_mut(i);
        let a = &mut a[i - 1];
        let b = &mut b[0];
        while a.hi() >= b.lo() {
            a.refine();
            b.refine();
        }
    }
}

struct ColumnData {
    vertices: Vec<RootInterval>,
    left_attach: Vec<usize>,
    right_attach: Vec<usize>,
}

/// Isolated curve vertices on a column and the branch-to-vertex assignment
/// at the certified strip edges.
fn column_data(
    alpha: &mut AlgebraicNumber,
    g_main: &MultiPoly,
    vvar: &str,
    tvar: &str,
    bbox: &BBox,
    left: Option<Rat>,
    right: Option<Rat>,
) -> Result<ColumnData> {
    let mut pp = ParamPoly::new(alpha, g_main, vvar, tvar)?;
    let mut w = pp.isolate_roots_in(&bbox.ta, &bbox.tb)?;
    // pairwise disjoint vertex intervals
    loop {
        let mut ok = true;
        for j in 1..w.len() {
            if w[j - 1].hi() >= w[j].lo()
                && !(w[j - 1].hi() == w[j].lo()
                    && matches!(w[j - 1], RootInterval::Open(_, _))
                    && matches!(w[j], RootInterval::Open(_, _)))
            {
                w[j - 1] = pp.refine_root(&w[j - 1])?;
                w[j] = pp.refine_root(&w[j])?;
                ok = false;
            }
        }
        if ok {
            break;
        }
    }
    let m = w.len();
    // separators strictly between consecutive vertices
    let seps: Vec<Rat> = (1..m)
        .map(|j| (w[j - 1].hi() + w[j].lo()) / rat_i(2))
        .collect();

    // shrink the strip until no branch crosses a separator line inside it
    let mut left = left;
    let mut right = right;
    'certify: loop {
        for s in &seps {
            let fib = g_main.subst_rat(tvar, s);
            if fib.is_constant() {
                continue;
            }
            let fib = IntPoly::from_multipoly(&fib, vvar)?;
            let lo = left.clone().unwrap_or_else(|| pp.alpha.lo());
            let hi = right.clone().unwrap_or_else(|| pp.alpha.hi());
            if lo >= hi {
                // exact column with no strip on either side
                break;
            }
            match count_roots_in(&fib, &lo, &hi) {
                Ok(0) => {}
                Ok(_) | Err(Error::RootAtEndpoint) => {
                    pp.alpha.refine();
                    if let Some(a) = &left {
                        left = Some((a + pp.alpha.lo()) / rat_i(2));
                    }
                    if let Some(b) = &right {
                        right = Some((pp.alpha.hi() + b) / rat_i(2));
                    }
                    continue 'certify;
                }
                Err(e) => return Err(e),
            }
        }
        break;
    }

    let mut bounds = vec![bbox.ta.clone()];
    bounds.extend(seps);
    bounds.push(bbox.tb.clone());

    let assign = |edge: &Rat| -> Result<Vec<usize>> {
        let fib = g_main.subst_rat(vvar, edge);
        let fib = IntPoly::from_multipoly(&fib, tvar)?;
        if fib.is_zero() {
            return Err(Error::Internal(
                "fiber vanished identically at a non-column sample".into(),
            ));
        }
        let sf = fib.squarefree()?;
        let roots = isolate_closed(&sf, &bbox.ta, &bbox.tb)?;
        if m == 0 {
            if !roots.is_empty() {
                return Err(Error::Certification(
                    "branches present next to a column without vertices".into(),
                ));
            }
            return Ok(vec![]);
        }
        let mut out = Vec::with_capacity(roots.len());
        for r in roots {
            let mut r = r;
            let j = loop {
                let mut found = None;
                for j in 0..m {
                    if bounds[j] <= r.lo() && r.hi() <= bounds[j + 1] {
                        found = Some(j);
                        break;
                    }
                }
                match found {
                    Some(j) => break j,
                    None => r = refine(&sf, &r),
                }
            };
            out.push(j);
        }
        Ok(out)
    };

    let left_attach = match &left {
        Some(a) => assign(a)?,
        None => vec![],
    };
    let right_attach = match &right {
        Some(b) => assign(b)?,
        None => vec![],
    };
    Ok(ColumnData {
        vertices: w,
        left_attach,
        right_attach,
    })
}

/// Isolated roots of the curve fiber at a rational non-column `v`.
pub fn fiber_roots_at(
    g_main: &MultiPoly,
    vvar: &str,
    tvar: &str,
    v: &Rat,
    ta: &Rat,
    tb: &Rat,
) -> Result<Vec<RootInterval>> {
    let fib = g_main.subst_rat(vvar, v);
    if fib.is_zero() {
        return Err(Error::Internal("fiber vanished identically".into()));
    }
    if fib.is_constant() {
        return Ok(vec![]);
    }
    let fib = IntPoly::from_multipoly(&fib, tvar)?;
    isolate_closed(&fib, ta, tb)
}
