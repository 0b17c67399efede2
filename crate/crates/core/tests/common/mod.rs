//! Independent cross-checks used by the integration tests.  Everything in
//! here is deliberately implemented by a different method than the library
//! under test: determinant-based resultants, Sturm chains instead of
//! Descartes, and a sign-grid contour tracer instead of slab decomposition.

#![allow(dead_code)]

use std::collections::BTreeMap;

use intercurve::rat::{rat_i, rat_to_f64, Rat};
use intercurve::roots::IntPoly;
use intercurve::MultiPoly;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random polynomial in `vars` with total degree at most `deg` and integer
/// coefficients in `[-bound, bound]`.  Roughly half the monomials are kept.
pub fn random_poly(r: &mut ChaCha8Rng, vars: &[&str], deg: u32, bound: i64) -> MultiPoly {
    let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let mut terms: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
    let mut exps = vec![0u32; vars.len()];
    loop {
        let total: u32 = exps.iter().sum();
        if total <= deg && r.gen_bool(0.5) {
            let c = r.gen_range(-bound..=bound);
            if c != 0 {
                terms.insert(exps.clone(), rat_i(c));
            }
        }
        let mut k = 0;
        loop {
            if k == exps.len() {
                return MultiPoly::from_terms(names, terms);
            }
            exps[k] += 1;
            if exps[k] <= deg {
                break;
            }
            exps[k] = 0;
            k += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Sylvester matrix resultant via fraction-free Gaussian elimination

/// Resultant of `p` and `q` with respect to `var`, computed as the
/// determinant of the Sylvester matrix with Bareiss elimination.
pub fn sylvester_resultant(p: &MultiPoly, q: &MultiPoly, var: &str) -> MultiPoly {
    let pc = p.as_univariate(var);
    let qc = q.as_univariate(var);
    let m = pc.len() - 1;
    let n = qc.len() - 1;
    if m == 0 {
        return pc[0].pow(n as u32);
    }
    if n == 0 {
        return qc[0].pow(m as u32);
    }
    let size = m + n;
    let mut mat = vec![vec![MultiPoly::zero(); size]; size];
    for row in 0..n {
        for (k, c) in pc.iter().enumerate() {
            mat[row][row + (m - k)] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in qc.iter().enumerate() {
            mat[n + row][row + (n - k)] = c.clone();
        }
    }
    bareiss_det(mat)
}

fn bareiss_det(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    let mut sign = 1i64;
    let mut prev = MultiPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return MultiPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_divide(&prev).expect("bareiss division is exact");
            }
            m[i][k] = MultiPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

// ---------------------------------------------------------------------------
// Sturm chain root counting

fn rp_trim(c: &mut Vec<Rat>) {
    while c.last().map_or(false, |x| x.is_zero()) {
        c.pop();
    }
}

fn rp_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r: Vec<Rat> = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let f = &r[dr] / lb;
        for k in 0..=db {
            let v = &r[dr - db + k] - &(&f * &b[k]);
            r[dr - db + k] = v;
        }
        r.pop();
        rp_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn rp_eval_sign(c: &[Rat], x: &Rat) -> i8 {
    let mut acc = Rat::zero();
    for k in (0..c.len()).rev() {
        acc = &acc * x + &c[k];
    }
    if acc.is_zero() {
        0
    } else if acc.is_positive() {
        1
    } else {
        -1
    }
}

/// Number of distinct real roots of `p` in the open interval `(a, b)`,
/// counted with a Sturm chain.  Endpoints must not be roots.
pub fn sturm_count(p: &IntPoly, a: &Rat, b: &Rat) -> usize {
    let coeffs: Vec<Rat> = p.coeffs.iter().map(|c| Rat::from(c.clone())).collect();
    let mut chain: Vec<Vec<Rat>> = Vec::new();
    let mut c0 = coeffs;
    rp_trim(&mut c0);
    assert!(!c0.is_empty(), "sturm_count on zero polynomial");
    let mut c1: Vec<Rat> = c0
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * rat_i(k as i64))
        .collect();
    rp_trim(&mut c1);
    chain.push(c0);
    if !c1.is_empty() {
        chain.push(c1);
    }
    while chain.last().unwrap().len() > 1 {
        let k = chain.len();
        let mut r = rp_rem(&chain[k - 2], &chain[k - 1]);
        if r.is_empty() {
            break;
        }
        for c in r.iter_mut() {
            *c = -&*c;
        }
        chain.push(r);
    }
    let variations = |x: &Rat| {
        let mut last = 0i8;
        let mut var = 0usize;
        for c in &chain {
            let s = rp_eval_sign(c, x);
            if s != 0 {
                if last != 0 && s != last {
                    var += 1;
                }
                last = s;
            }
        }
        var
    };
    assert!(rp_eval_sign(&chain[0], a) != 0, "sturm endpoint is a root");
    assert!(rp_eval_sign(&chain[0], b) != 0, "sturm endpoint is a root");
    variations(a) - variations(b)
}

// ---------------------------------------------------------------------------
// Sign-grid contour topology

pub struct GridTopology {
    pub components: usize,
    pub cycle_rank: usize,
    pub crossing_edges: usize,
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

struct GridEval {
    /// coeffs[i][j] is the coefficient of v^i t^j as f64
    coeffs: Vec<Vec<f64>>,
    exact: MultiPoly,
    vvar: String,
    tvar: String,
    scale: f64,
}

impl GridEval {
    fn new(g: &MultiPoly, vvar: &str, tvar: &str) -> Self {
        let dv = g.degree(vvar) as usize;
        let dt = g.degree(tvar) as usize;
        let mut coeffs = vec![vec![0.0; dt + 1]; dv + 1];
        let vpos = g.vars().iter().position(|s| s == vvar);
        let tpos = g.vars().iter().position(|s| s == tvar);
        let mut scale = 0.0f64;
        for (exps, c) in g.terms() {
            let i = vpos.map_or(0, |p| exps[p] as usize);
            let j = tpos.map_or(0, |p| exps[p] as usize);
            let x = rat_to_f64(c);
            coeffs[i][j] += x;
            scale += x.abs();
        }
        GridEval {
            coeffs,
            exact: g.clone(),
            vvar: vvar.to_string(),
            tvar: tvar.to_string(),
            scale,
        }
    }

    /// Exact sign at a rational point, with a fast float path.
    fn sign(&self, v: &Rat, t: &Rat, vf: f64, tf: f64) -> i8 {
        let m = vf.abs().max(1.0).powi((self.coeffs.len() - 1) as i32)
            * tf.abs().max(1.0).powi((self.coeffs[0].len() - 1) as i32);
        let mut col = vec![0.0; self.coeffs[0].len()];
        for (j, c) in col.iter_mut().enumerate() {
            let mut acc = 0.0;
            for i in (0..self.coeffs.len()).rev() {
                acc = acc * vf + self.coeffs[i][j];
            }
            *c = acc;
        }
        let mut acc = 0.0;
        for j in (0..col.len()).rev() {
            acc = acc * tf + col[j];
        }
        if acc.abs() > self.scale * m * 1e-9 {
            return if acc > 0.0 { 1 } else { -1 };
        }
        let e = self.exact.subst_rat(&self.vvar, v).subst_rat(&self.tvar, t);
        let c = e.as_constant().expect("fully substituted");
        if c.is_zero() {
            0
        } else if c.is_positive() {
            1
        } else {
            -1
        }
    }
}

/// Contour topology of `g = 0` inside the box, traced on an `n` by `n`
/// sign grid with marching squares.  The grid is shifted by a tiny offset
/// so nodes avoid symmetric zeros; a node landing exactly on the curve
/// panics and means the test setup needs a different shift.
///
/// Marching squares resolves a self-intersection like a perturbed level
/// set, which breaks the component count there.  `singular` lists known
/// singular points as `(v, t, radius)`: cells inside such a disk are
/// skipped and every contour crossing on the rim is glued to one star
/// vertex, which restores the cone topology at that point.
pub fn grid_topology(
    g: &MultiPoly,
    vvar: &str,
    tvar: &str,
    bbox: (&Rat, &Rat, &Rat, &Rat),
    n: usize,
    singular: &[(f64, f64, f64)],
) -> GridTopology {
    let ev = GridEval::new(g, vvar, tvar);
    let (va, vb, ta, tb) = bbox;
    let vstep = (vb - va) / rat_i(n as i64);
    let tstep = (tb - ta) / rat_i(n as i64);
    let shift_v = &vstep / rat_i(9973);
    let shift_t = &tstep / rat_i(9967);
    let mut signs = vec![vec![0i8; n + 1]; n + 1];
    for i in 0..=n {
        let v = va + &(&vstep * rat_i(i as i64)) + &shift_v;
        let vf = rat_to_f64(&v);
        for j in 0..=n {
            let t = ta + &(&tstep * rat_i(j as i64)) + &shift_t;
            let s = ev.sign(&v, &t, vf, rat_to_f64(&t));
            assert!(s != 0, "grid node on curve at ({v}, {t})");
            signs[i][j] = s;
        }
    }

    // crossing edge ids: horizontal (i,j)-(i+1,j) then vertical (i,j)-(i,j+1)
    let hid = |i: usize, j: usize| i * (n + 1) + j;
    let vid = |i: usize, j: usize| n * (n + 1) + i * n + j;
    let total = 2 * n * (n + 1);
    let mut crossing = vec![false; total];
    for i in 0..n {
        for j in 0..=n {
            if signs[i][j] != signs[i + 1][j] {
                crossing[hid(i, j)] = true;
            }
        }
    }
    for i in 0..=n {
        for j in 0..n {
            if signs[i][j] != signs[i][j + 1] {
                crossing[vid(i, j)] = true;
            }
        }
    }

    let vaf = rat_to_f64(va);
    let taf = rat_to_f64(ta);
    let vsf = rat_to_f64(&vstep);
    let tsf = rat_to_f64(&tstep);
    // cell (i, j) is blocked when it meets a singular disk
    let blocked = |i: usize, j: usize| -> bool {
        let cv = vaf + (i as f64 + 0.5) * vsf;
        let ct = taf + (j as f64 + 0.5) * tsf;
        let half_diag = 0.5 * (vsf * vsf + tsf * tsf).sqrt();
        singular
            .iter()
            .any(|&(sv, st, r)| ((cv - sv).powi(2) + (ct - st).powi(2)).sqrt() < r + half_diag)
    };

    let mut dsu = Dsu::new(total + singular.len());
    let mut segments = 0usize;
    let mut link = |dsu: &mut Dsu, segments: &mut usize, a: usize, b: usize| {
        dsu.union(a, b);
        *segments += 1;
    };
    for i in 0..n {
        for j in 0..n {
            if blocked(i, j) {
                continue;
            }
            let b = hid(i, j);
            let t = hid(i, j + 1);
            let l = vid(i, j);
            let r = vid(i + 1, j);
            let hits = [crossing[b], crossing[t], crossing[l], crossing[r]];
            match hits.iter().filter(|&&x| x).count() {
                0 => {}
                2 => {
                    let ids: Vec<usize> = [b, t, l, r]
                        .iter()
                        .zip(hits.iter())
                        .filter(|(_, &h)| h)
                        .map(|(&id, _)| id)
                        .collect();
                    link(&mut dsu, &mut segments, ids[0], ids[1]);
                }
                4 => {
                    // ambiguous saddle: the center sample decides the pairing
                    let v = va + &(&vstep * (rat_i(i as i64) + rat(1, 2))) + &shift_v;
                    let t2 = ta + &(&tstep * (rat_i(j as i64) + rat(1, 2))) + &shift_t;
                    let cs = ev.sign(&v, &t2, rat_to_f64(&v), rat_to_f64(&t2));
                    assert!(cs != 0, "cell center on curve");
                    if cs == signs[i][j] {
                        link(&mut dsu, &mut segments, b, r);
                        link(&mut dsu, &mut segments, l, t);
                    } else {
                        link(&mut dsu, &mut segments, b, l);
                        link(&mut dsu, &mut segments, t, r);
                    }
                }
                k => panic!("impossible marching squares case with {k} crossings"),
            }
        }
    }

    // glue rim crossings of each singular disk to that disk's star vertex
    let mut star_used = vec![false; singular.len()];
    for id in 0..total {
        if !crossing[id] {
            continue;
        }
        let (mv, mt, c1, c2) = if id < n * (n + 1) {
            let i = id / (n + 1);
            let j = id % (n + 1);
            let adj1 = j > 0 && blocked(i, j - 1);
            let adj2 = j < n && blocked(i, j);
            (vaf + (i as f64 + 0.5) * vsf, taf + j as f64 * tsf, adj1, adj2)
        } else {
            let r = id - n * (n + 1);
            let i = r / n;
            let j = r % n;
            let adj1 = i > 0 && blocked(i - 1, j);
            let adj2 = i < n && blocked(i, j);
            (vaf + i as f64 * vsf, taf + (j as f64 + 0.5) * tsf, adj1, adj2)
        };
        if c1 || c2 {
            let (k, _) = singular
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| {
                    let da = (mv - a.0).powi(2) + (mt - a.1).powi(2);
                    let db = (mv - b.0).powi(2) + (mt - b.1).powi(2);
                    da.partial_cmp(&db).unwrap()
                })
                .expect("blocked cell implies nonempty singular list");
            link(&mut dsu, &mut segments, id, total + k);
            star_used[k] = true;
        }
    }

    let mut roots = std::collections::BTreeSet::new();
    let mut vcount = 0usize;
    for (id, &c) in crossing.iter().enumerate() {
        if c {
            vcount += 1;
            roots.insert(dsu.find(id));
        }
    }
    for (k, &used) in star_used.iter().enumerate() {
        if used {
            vcount += 1;
            roots.insert(dsu.find(total + k));
        }
    }
    let components = roots.len();
    GridTopology {
        components,
        cycle_rank: segments + components - vcount,
        crossing_edges: vcount,
    }
}

use intercurve::rat::rat;

/// Number of curve branches meeting a critical point, counted as sign
/// alternations of `g` around a small circle centered there.
pub fn branch_degree(
    g: &MultiPoly,
    vvar: &str,
    tvar: &str,
    center: (f64, f64),
    radius: f64,
    samples: usize,
) -> usize {
    let ev = GridEval::new(g, vvar, tvar);
    let mut signs = Vec::with_capacity(samples);
    for k in 0..samples {
        let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.31) / samples as f64;
        let vf = center.0 + radius * th.cos();
        let tf = center.1 + radius * th.sin();
        let v = f64_to_rat(vf);
        let t = f64_to_rat(tf);
        let s = ev.sign(&v, &t, vf, tf);
        assert!(s != 0, "circle sample on curve");
        signs.push(s);
    }
    let mut changes = 0usize;
    for k in 0..samples {
        if signs[k] != signs[(k + 1) % samples] {
            changes += 1;
        }
    }
    changes
}

fn f64_to_rat(x: f64) -> Rat {
    // exact dyadic value of the float
    let scaled = (x * (1u64 << 40) as f64).round() as i128;
    Rat::new(scaled.into(), (1u128 << 40).into())
}
