//! Real algebraic numbers as (squarefree integer polynomial, isolating
//! interval), with exact sign and zero tests, plus Sturm sequences for
//! polynomials whose coefficients are evaluated at such a number.
//!
//! All arithmetic that depends on the algebraic number reduces to two
//! primitives: "is alpha a root of d" (decided by refining the isolating
//! interval until it separates the roots of d from those of the cofactor)
//! and "sign of e(alpha)" for a rational-coefficient polynomial e.  The
//! parametric Sturm sequence uses pseudo-remainders with even leading
//! powers, so no ring division is ever needed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::rat::{rat_i, Rat};

use super::{count_roots_in, refine, IntPoly, RootInterval};

/// Dense univariate polynomial over ℚ, ascending coefficients.
pub type QPoly = Vec<Rat>;

pub fn qp_trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn qp_from_int(p: &IntPoly) -> QPoly {
    p.coeffs
        .iter()
        .map(|c| Rat::from_integer(c.clone()))
        .collect()
}

/// Clear denominators and content.
pub fn qp_to_int(p: &QPoly) -> IntPoly {
    let mut lcm = BigInt::one();
    for c in p {
        lcm = lcm.lcm(c.denom());
    }
    let mut q = IntPoly::new(p.iter().map(|c| c.numer() * (&lcm / c.denom())).collect());
    q.remove_content();
    q
}

pub fn qp_add(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = vec![rat_i(0); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        r[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        r[i] += c;
    }
    qp_trim(&mut r);
    r
}

pub fn qp_neg(a: &QPoly) -> QPoly {
    a.iter().map(|c| -c).collect()
}

pub fn qp_sub(a: &QPoly, b: &QPoly) -> QPoly {
    qp_add(a, &qp_neg(b))
}

pub fn qp_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![rat_i(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    qp_trim(&mut r);
    r
}

pub fn qp_scale(a: &QPoly, c: &Rat) -> QPoly {
    let mut r: QPoly = a.iter().map(|x| x * c).collect();
    qp_trim(&mut r);
    r
}

/// Remainder of `a` modulo `b` over ℚ (`b` nonzero).
pub fn qp_rem(a: &QPoly, b: &QPoly) -> QPoly {
    assert!(!b.is_empty());
    let mut r = a.clone();
    qp_trim(&mut r);
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let q = &lr / lb;
        let shift = r.len() - 1 - db;
        for (i, c) in b.iter().enumerate() {
            let t = c * &q;
            r[i + shift] -= t;
        }
        r.pop();
        qp_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Exact quotient `a / b` over ℚ (panics on inexact division).
pub fn qp_div_exact(a: &QPoly, b: &QPoly) -> QPoly {
    assert!(!b.is_empty());
    let mut r = a.clone();
    qp_trim(&mut r);
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut q = vec![rat_i(0); r.len().saturating_sub(db)];
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let f = &lr / lb;
        let shift = r.len() - 1 - db;
        q[shift] = f.clone();
        for (i, c) in b.iter().enumerate() {
            let t = c * &f;
            r[i + shift] -= t;
        }
        r.pop();
        qp_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    assert!(r.is_empty(), "inexact polynomial division");
    qp_trim(&mut q);
    q
}

/// Monic gcd over ℚ.
pub fn qp_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    qp_trim(&mut x);
    qp_trim(&mut y);
    while !y.is_empty() {
        let r = qp_rem(&x, &y);
        x = y;
        y = r;
    }
    if x.is_empty() {
        return x;
    }
    let lc = x.last().unwrap().clone();
    qp_scale(&x, &lc.recip())
}

pub fn qp_eval(p: &QPoly, x: &Rat) -> Rat {
    let mut acc = rat_i(0);
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn qp_derivative(p: &QPoly) -> QPoly {
    if p.len() <= 1 {
        return vec![];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * rat_i(i as i64))
        .collect()
}

/// A real algebraic number: the unique root of a squarefree integer
/// polynomial inside its isolating interval.  The interval refines in place
/// as decisions demand it.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    pub poly: IntPoly,
    pub interval: RootInterval,
}

impl AlgebraicNumber {
    pub fn new(poly: IntPoly, interval: RootInterval) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial("algebraic number defining polynomial"));
        }
        let poly = poly.squarefree()?;
        if let RootInterval::Open(a, b) = &interval {
            if poly.sign_at(a) == 0 || poly.sign_at(b) == 0 {
                return Err(Error::Certification(
                    "isolating interval endpoint is a root".into(),
                ));
            }
            if count_roots_in(&poly, a, b)? != 1 {
                return Err(Error::Certification(
                    "interval does not isolate exactly one root".into(),
                ));
            }
        } else if let RootInterval::Exact(r) = &interval {
            if poly.sign_at(r) != 0 {
                return Err(Error::Certification("claimed exact root is not a root".into()));
            }
        }
        Ok(AlgebraicNumber { poly, interval })
    }

    pub fn exact(r: Rat) -> Self {
        // minimal polynomial d*x - n
        let poly = IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]);
        AlgebraicNumber {
            poly,
            interval: RootInterval::Exact(r),
        }
    }

    pub fn as_exact(&self) -> Option<Rat> {
        match &self.interval {
            RootInterval::Exact(r) => Some(r.clone()),
            RootInterval::Open(_, _) => None,
        }
    }

    pub fn lo(&self) -> Rat {
        self.interval.lo()
    }

    pub fn hi(&self) -> Rat {
        self.interval.hi()
    }

    pub fn refine(&mut self) {
        self.interval = refine(&self.poly, &self.interval);
    }

    pub fn refine_to_width(&mut self, eps: &Rat) {
        while self.interval.width() > *eps {
            self.refine();
        }
    }

    /// Approximate value, within the current interval.
    pub fn approx(&self) -> Rat {
        self.interval.mid()
    }

    /// Best-effort rational-root detection: guess the simplest rational in
    /// the isolating interval and verify it by exact evaluation.  Once the
    /// interval is narrower than 1/d^2 a rational root p/d must be the
    /// simplest rational inside, so enough refinement always finds it.
    pub fn try_exact(&mut self) -> Option<Rat> {
        for _ in 0..48 {
            if let Some(r) = self.as_exact() {
                return Some(r);
            }
            let c = crate::interval::simplest_in(&self.lo(), &self.hi());
            if self.interval.contains(&c) && self.poly.eval(&c) == Rat::from_integer(0.into()) {
                self.interval = RootInterval::Exact(c.clone());
                return Some(c);
            }
            self.refine();
        }
        self.as_exact()
    }

    /// Decide whether this number is a root of `d`.  Refines the interval
    /// until the roots of `gcd(poly, d)` and of the cofactor are separated.
    pub fn is_root_of(&mut self, d: &IntPoly) -> Result<bool> {
        if d.is_zero() {
            return Ok(true);
        }
        if let Some(r) = self.as_exact() {
            return Ok(d.sign_at(&r) == 0);
        }
        let g = qp_to_int(&qp_gcd(&qp_from_int(&self.poly), &qp_from_int(d)));
        if g.degree() == 0 {
            return Ok(false);
        }
        // poly = g * h2 with g, h2 coprime; alpha is a root of exactly one
        let h2 = qp_to_int(&qp_div_exact(&qp_from_int(&self.poly), &qp_from_int(&g)));
        loop {
            let (lo, hi) = (self.lo(), self.hi());
            // interval endpoints are non-roots of poly, hence of g and h2
            let cg = count_roots_in(&g, &lo, &hi)?;
            let ch = count_roots_in(&h2, &lo, &hi)?;
            debug_assert!(cg + ch >= 1);
            if cg + ch == 1 {
                return Ok(cg == 1);
            }
            self.refine();
        }
    }

    /// Exact sign of `e(alpha)`.
    pub fn sign_of(&mut self, e: &IntPoly) -> Result<i8> {
        if e.is_zero() {
            return Ok(0);
        }
        if let Some(r) = self.as_exact() {
            return Ok(e.sign_at(&r));
        }
        if e.degree() == 0 {
            return Ok(if e.coeffs[0].is_positive() { 1 } else { -1 });
        }
        if self.is_root_of(e)? {
            return Ok(0);
        }
        // refine until e has no root in the interval, stepping around any
        // endpoint that happens to be a root of e
        loop {
            let (lo, hi) = (self.lo(), self.hi());
            match count_roots_in(e, &lo, &hi) {
                Ok(0) => return Ok(e.sign_at(&self.interval.mid())),
                Ok(_) => self.refine(),
                Err(Error::RootAtEndpoint) => self.refine_avoiding(e),
                Err(err) => return Err(err),
            }
            if self.as_exact().is_some() {
                return Ok(e.sign_at(&self.as_exact().unwrap()));
            }
        }
    }

    pub fn sign_of_qpoly(&mut self, e: &QPoly) -> Result<i8> {
        let mut e = e.clone();
        qp_trim(&mut e);
        if e.is_empty() {
            return Ok(0);
        }
        self.sign_of(&qp_to_int(&e))
    }

    /// Split at an interior point that is a root of neither `poly` nor `e`.
    fn refine_avoiding(&mut self, e: &IntPoly) {
        let (lo, hi) = (self.lo(), self.hi());
        let w = &hi - &lo;
        let mut denom = rat_i(2);
        loop {
            let mut num = rat_i(1);
            while num < denom {
                let m = &lo + &w * &num / &denom;
                if self.poly.sign_at(&m) == 0 {
                    self.interval = RootInterval::Exact(m);
                    return;
                }
                if e.sign_at(&m) != 0 {
                    // usable splitter
                    if self.poly.sign_at(&lo) == self.poly.sign_at(&m) {
                        self.interval = RootInterval::Open(m, hi);
                    } else {
                        self.interval = RootInterval::Open(lo, m);
                    }
                    return;
                }
                num += rat_i(2); // keep num/denom in lowest terms of this level
            }
            denom *= rat_i(2);
        }
    }

    /// Total order among algebraic numbers by interval separation.
    pub fn cmp_alg(&mut self, other: &mut AlgebraicNumber) -> Result<std::cmp::Ordering> {
        use std::cmp::Ordering;
        // equality test: both roots of gcd and intervals overlap forever
        loop {
            if self.hi() < other.lo() {
                return Ok(Ordering::Less);
            }
            if other.hi() < self.lo() {
                return Ok(Ordering::Greater);
            }
            if let (Some(a), Some(b)) = (self.as_exact(), other.as_exact()) {
                return Ok(a.cmp(&b));
            }
            // overlapping: equal iff both are roots of the gcd
            let g = qp_to_int(&qp_gcd(&qp_from_int(&self.poly), &qp_from_int(&other.poly)));
            if g.degree() >= 1 && self.is_root_of(&g)? && other.is_root_of(&g)? {
                // both roots of g inside overlapping isolating intervals:
                // shrink both below the separation of g's roots, then decide
                let mut a = AlgebraicNumber::new(g.clone(), pick_interval(&g, self)?)?;
                let b = AlgebraicNumber::new(g.clone(), pick_interval(&g, other)?)?;
                if a.interval == b.interval {
                    return Ok(Ordering::Equal);
                }
                let mut b = b;
                return a.cmp_alg(&mut b);
            }
            self.refine();
            other.refine();
        }
    }
}

/// The isolating interval (from `g`'s own isolation) containing the given
/// root of `g`.
fn pick_interval(g: &IntPoly, alpha: &mut AlgebraicNumber) -> Result<RootInterval> {
    let roots = super::isolate_all(g)?;
    let mut cands: Vec<RootInterval> = roots;
    loop {
        cands.retain(|r| !(r.hi() < alpha.lo() || r.lo() > alpha.hi()));
        if cands.len() == 1 {
            return Ok(cands.pop().unwrap());
        }
        if cands.is_empty() {
            return Err(Error::Internal("lost track of algebraic root".into()));
        }
        for r in cands.iter_mut() {
            *r = refine(g, r);
        }
        alpha.refine();
    }
}

/// Polynomial in `t` with coefficients in ℚ[v], evaluated at a fixed
/// algebraic `v = alpha`; supports exact root counting and isolation in `t`
/// through a generalized Sturm sequence built with even pseudo-remainders.
pub struct ParamPoly<'a> {
    pub alpha: &'a mut AlgebraicNumber,
    /// modulus = alpha.poly as a QPoly, for coefficient reduction
    modulus: QPoly,
    /// coefficients of g in t, each reduced mod the modulus
    coeffs: Vec<QPoly>,
    seq: Option<Vec<Vec<QPoly>>>,
}

impl<'a> ParamPoly<'a> {
    /// `g` as a bivariate polynomial in (`vvar`, `tvar`).
    pub fn new(
        alpha: &'a mut AlgebraicNumber,
        g: &MultiPoly,
        vvar: &str,
        tvar: &str,
    ) -> Result<Self> {
        for v in g.vars() {
            if v != vvar && v != tvar {
                return Err(Error::Internal(format!("unexpected variable {v}")));
            }
        }
        let modulus = qp_from_int(&alpha.poly);
        let mut coeffs = Vec::new();
        for c in g.as_univariate(tvar) {
            let mut q: QPoly = c
                .as_univariate(vvar)
                .iter()
                .map(|k| k.as_constant().expect("constant after double split"))
                .collect();
            qp_trim(&mut q);
            let q = if modulus.len() > 1 { qp_rem(&q, &modulus) } else { q };
            coeffs.push(q);
        }
        while coeffs.last().is_some_and(|c| c.is_empty()) {
            coeffs.pop();
        }
        Ok(ParamPoly {
            alpha,
            modulus,
            coeffs,
            seq: None,
        })
    }

    fn reduce(&self, q: &QPoly) -> QPoly {
        if self.modulus.len() > 1 {
            qp_rem(q, &self.modulus)
        } else {
            q.clone()
        }
    }

    /// Scale a sequence element by a positive rational so its coefficients
    /// are integers with content 1.  Positive scaling preserves every sign,
    /// and without it the pseudo-remainder coefficients grow without bound.
    fn normalize_element(p: &mut [QPoly]) {
        let mut lcm = BigInt::one();
        for c in p.iter() {
            for r in c {
                lcm = lcm.lcm(r.denom());
            }
        }
        let mut g = BigInt::zero();
        for c in p.iter() {
            for r in c {
                g = g.gcd(&(r.numer() * (&lcm / r.denom())));
            }
        }
        if g.is_zero() || (g.is_one() && lcm.is_one()) {
            return;
        }
        let scale = Rat::new(lcm, g);
        for c in p.iter_mut() {
            *c = qp_scale(c, &scale);
        }
    }

    /// Drop leading `t`-coefficients that vanish at alpha.
    fn strip(&mut self, mut p: Vec<QPoly>) -> Result<Vec<QPoly>> {
        loop {
            match p.last() {
                None => return Ok(p),
                Some(c) => {
                    if self.alpha.sign_of_qpoly(c)? == 0 {
                        p.pop();
                    } else {
                        return Ok(p);
                    }
                }
            }
        }
    }

    /// True iff `g(alpha, t)` is identically zero in `t`.
    pub fn is_identically_zero(&mut self) -> Result<bool> {
        let coeffs = self.coeffs.clone();
        Ok(self.strip(coeffs)?.is_empty())
    }

    /// Degree of `g(alpha, t)` in `t`.
    pub fn true_degree(&mut self) -> Result<usize> {
        let coeffs = self.coeffs.clone();
        Ok(self.strip(coeffs)?.len().saturating_sub(1))
    }

    /// `g(alpha, t0) == 0` for rational `t0`.
    pub fn is_zero_at(&mut self, t0: &Rat) -> Result<bool> {
        let mut acc: QPoly = vec![];
        for c in self.coeffs.iter().rev() {
            acc = qp_add(&qp_scale(&acc, t0), c);
        }
        let acc = self.reduce(&acc);
        Ok(self.alpha.sign_of_qpoly(&acc)? == 0)
    }

    /// Sign of `g(alpha, t0)`.
    pub fn sign_at(&mut self, t0: &Rat) -> Result<i8> {
        let mut acc: QPoly = vec![];
        for c in self.coeffs.iter().rev() {
            acc = qp_add(&qp_scale(&acc, t0), c);
        }
        let acc = self.reduce(&acc);
        self.alpha.sign_of_qpoly(&acc)
    }

    /// Generalized Sturm sequence of `(g, dg/dt)` at alpha, built once.
    fn sequence(&mut self) -> Result<&Vec<Vec<QPoly>>> {
        if self.seq.is_none() {
            let mut p0 = self.strip(self.coeffs.clone())?;
            Self::normalize_element(&mut p0);
            if p0.len() <= 1 {
                self.seq = Some(vec![p0]);
                return Ok(self.seq.as_ref().unwrap());
            }
            let mut d: Vec<QPoly> = p0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| qp_scale(c, &rat_i(i as i64)))
                .collect();
            d = self.strip(d)?;
            Self::normalize_element(&mut d);
            let mut seq = vec![p0, d];
            loop {
                let a = seq[seq.len() - 2].clone();
                let b = seq[seq.len() - 1].clone();
                if b.is_empty() {
                    seq.pop();
                    break;
                }
                if b.len() == 1 {
                    // nonzero constant at alpha: sequence complete
                    break;
                }
                let r = self.even_prem(&a, &b)?;
                let mut r = self.strip(r.iter().map(qp_neg).collect())?;
                if r.is_empty() {
                    break;
                }
                Self::normalize_element(&mut r);
                seq.push(r);
            }
            self.seq = Some(seq);
        }
        Ok(self.seq.as_ref().unwrap())
    }

    /// `lc(b)^(2k) * a mod b` in `t`, with an even leading power so the
    /// multiplier is positive at alpha.
    fn even_prem(&mut self, a: &[QPoly], b: &[QPoly]) -> Result<Vec<QPoly>> {
        let da = a.len() - 1;
        let db = b.len() - 1;
        debug_assert!(da >= db && db >= 1);
        let lcb = b.last().unwrap().clone();
        let mut r: Vec<QPoly> = a.to_vec();
        let mut e = (da - db + 1) as i64;
        loop {
            while r.last().is_some_and(|c| c.is_empty()) {
                r.pop();
            }
            // leading coefficient may vanish at alpha without being zero in
            // the ring; strip it so the division degree logic is sound
            loop {
                match r.last() {
                    None => break,
                    Some(c) => {
                        if self.alpha.sign_of_qpoly(c)? == 0 {
                            r.pop();
                        } else {
                            break;
                        }
                    }
                }
            }
            if r.is_empty() || r.len() - 1 < db {
                break;
            }
            let dr = r.len() - 1;
            let lr = r.last().unwrap().clone();
            for c in r.iter_mut() {
                *c = self.reduce(&qp_mul(c, &lcb));
            }
            let shift = dr - db;
            for (i, bc) in b.iter().enumerate() {
                let t = self.reduce(&qp_mul(bc, &lr));
                r[i + shift] = qp_sub(&r[i + shift], &t);
            }
            e -= 1;
        }
        // make the total multiplier power even (positive at alpha)
        if e < 0 {
            e = 0;
        }
        let total = (da - db + 1) as i64 - e;
        let extra = total % 2;
        if extra > 0 {
            let mut f: QPoly = vec![rat_i(1)];
            for _ in 0..extra {
                f = self.reduce(&qp_mul(&f, &lcb));
            }
            for c in r.iter_mut() {
                *c = self.reduce(&qp_mul(c, &f));
            }
        }
        while r.last().is_some_and(|c| c.is_empty()) {
            r.pop();
        }
        Ok(r)
    }

    fn variations_at(&mut self, t0: &Rat) -> Result<usize> {
        let seq = self.sequence()?.clone();
        let mut signs = Vec::new();
        for p in &seq {
            let mut acc: QPoly = vec![];
            for c in p.iter().rev() {
                acc = qp_add(&qp_scale(&acc, t0), c);
            }
            let acc = self.reduce(&acc);
            signs.push(self.alpha.sign_of_qpoly(&acc)?);
        }
        let mut last = 0i8;
        let mut n = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
        Ok(n)
    }

    /// Distinct roots of `g(alpha, .)` in the open interval `(a, b)`.
    /// Endpoints must not be roots.
    pub fn count_roots_open(&mut self, a: &Rat, b: &Rat) -> Result<usize> {
        debug_assert!(a < b);
        if self.is_zero_at(a)? || self.is_zero_at(b)? {
            return Err(Error::RootAtEndpoint);
        }
        let va = self.variations_at(a)?;
        let vb = self.variations_at(b)?;
        Ok(va.saturating_sub(vb))
    }

    /// Isolate the distinct roots of `g(alpha, .)` in the closed interval
    /// `[c, d]`; rational roots (including at the endpoints) come out exact.
    /// Errors with `NonZeroDimensional` if `g(alpha, .)` vanishes
    /// identically.
    pub fn isolate_roots_in(&mut self, c: &Rat, d: &Rat) -> Result<Vec<RootInterval>> {
        if self.is_identically_zero()? {
            return Err(Error::NonZeroDimensional(
                "fiber polynomial vanishes identically at column".into(),
            ));
        }
        let mut out = Vec::new();
        let mut lo = c.clone();
        let mut hi = d.clone();
        if self.is_zero_at(&lo)? {
            out.push(RootInterval::Exact(lo.clone()));
        }
        let end_hi = self.is_zero_at(&hi)?;
        // nudge endpoints off roots for the open count
        lo = self.nudge_in(&lo, &hi, true)?;
        hi = self.nudge_in(&lo, &hi, false)?;
        self.isolate_rec(&lo, &hi, &mut out, 0)?;
        if end_hi {
            out.push(RootInterval::Exact(d.clone()));
        }
        out.sort_by(|x, y| x.lo().cmp(&y.lo()).then(x.hi().cmp(&y.hi())));
        Ok(out)
    }

    /// Move an endpoint inward past any root lying exactly on it, without
    /// crossing the nearest interior root.
    fn nudge_in(&mut self, lo: &Rat, hi: &Rat, from_lo: bool) -> Result<Rat> {
        let p = if from_lo { lo.clone() } else { hi.clone() };
        if !self.is_zero_at(&p)? {
            return Ok(p);
        }
        let mut step = (hi - lo) / rat_i(4);
        loop {
            let q = if from_lo { lo + &step } else { hi - &step };
            if !self.is_zero_at(&q)? {
                // no other root between p and q?
                let (a, b) = if from_lo {
                    (lo.clone(), q.clone())
                } else {
                    (q.clone(), hi.clone())
                };
                // count in the open strip excluding the root at the endpoint
                let inner = self.count_between_excluding(&a, &b, &q, from_lo)?;
                if inner == 0 {
                    return Ok(q);
                }
            }
            step = step / rat_i(2);
        }
    }

    fn count_between_excluding(
        &mut self,
        a: &Rat,
        b: &Rat,
        q: &Rat,
        from_lo: bool,
    ) -> Result<usize> {
        // roots strictly between the old endpoint and the nudged one
        let _ = q;
        let (x, y) = if from_lo {
            // (a, b) open; a itself is the root being excluded
            (a.clone(), b.clone())
        } else {
            (a.clone(), b.clone())
        };
        // find non-root points just inside x and y by bisection toward center
        let mut xa = x.clone();
        let mut step = (&y - &x) / rat_i(8);
        while self.is_zero_at(&xa)? {
            xa = &x + &step;
            step = step / rat_i(2);
        }
        let mut yb = y.clone();
        let mut step = (&y - &x) / rat_i(8);
        while self.is_zero_at(&yb)? {
            yb = &y - &step;
            step = step / rat_i(2);
        }
        if xa >= yb {
            return Ok(0);
        }
        self.count_roots_open(&xa, &yb)
    }

    fn isolate_rec(
        &mut self,
        a: &Rat,
        b: &Rat,
        out: &mut Vec<RootInterval>,
        depth: usize,
    ) -> Result<()> {
        if depth > 256 {
            return Err(Error::Internal(format!(
                "fiber root isolation did not converge on ({}, {})",
                a, b
            )));
        }
        let n = self.count_roots_open(a, b)?;
        if n == 0 {
            return Ok(());
        }
        let mid = (a + b) / rat_i(2);
        if n == 1 {
            if self.is_zero_at(&mid)? {
                out.push(RootInterval::Exact(mid));
            } else {
                out.push(RootInterval::Open(a.clone(), b.clone()));
            }
            return Ok(());
        }
        let m = self.non_root_near(&mid, &(b - a))?;
        self.isolate_rec(a, &m, out, depth + 1)?;
        if self.is_zero_at(&m)? {
            unreachable!("splitter chosen off roots");
        }
        self.isolate_rec(&m, b, out, depth + 1)?;
        Ok(())
    }

    fn non_root_near(&mut self, m: &Rat, width: &Rat) -> Result<Rat> {
        if !self.is_zero_at(m)? {
            return Ok(m.clone());
        }
        let mut step = width / rat_i(8);
        loop {
            let cand = m + &step;
            if !self.is_zero_at(&cand)? {
                return Ok(cand);
            }
            let cand = m - &step;
            if !self.is_zero_at(&cand)? {
                return Ok(cand);
            }
            step = step / rat_i(2);
        }
    }

    /// Halve an isolating interval (Sturm-count based, so multiple roots of
    /// the unreduced fiber polynomial are fine).
    pub fn refine_root(&mut self, r: &RootInterval) -> Result<RootInterval> {
        match r {
            RootInterval::Exact(_) => Ok(r.clone()),
            RootInterval::Open(a, b) => {
                let mid = (a + b) / rat_i(2);
                if self.is_zero_at(&mid)? {
                    return Ok(RootInterval::Exact(mid));
                }
                if self.count_roots_open(a, &mid)? == 1 {
                    Ok(RootInterval::Open(a.clone(), mid))
                } else {
                    Ok(RootInterval::Open(mid, b.clone()))
                }
            }
        }
    }

    pub fn refine_root_to_width(&mut self, r: &RootInterval, eps: &Rat) -> Result<RootInterval> {
        let mut r = r.clone();
        while r.width() > *eps {
            r = self.refine_root(&r)?;
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::rat::rat;
    use crate::roots::isolate_all;

    fn ipv(s: &str) -> IntPoly {
        IntPoly::from_multipoly(&parse_poly(s).unwrap(), "v").unwrap()
    }

    fn sqrt2() -> AlgebraicNumber {
        let p = ipv("v^2 - 2");
        let roots = isolate_all(&p).unwrap();
        AlgebraicNumber::new(p, roots[1].clone()).unwrap()
    }

    #[test]
    fn sign_tests_at_sqrt2() {
        let mut a = sqrt2();
        // v - 1 > 0, v - 3/2 < 0 at sqrt2? sqrt2 ~ 1.414 < 3/2
        assert_eq!(a.sign_of(&ipv("v - 1")).unwrap(), 1);
        assert_eq!(a.sign_of(&ipv("v - 2")).unwrap(), -1);
        assert_eq!(a.sign_of(&ipv("2*v - 3")).unwrap(), -1);
        assert_eq!(a.sign_of(&ipv("v^2 - 2")).unwrap(), 0);
        assert_eq!(a.sign_of(&ipv("v^4 - 4")).unwrap(), 0);
        assert_eq!(a.sign_of(&ipv("(v^2 - 2)*(v - 1) + 1")).unwrap(), 1);
    }

    #[test]
    fn root_membership_with_reducible_poly() {
        // alpha = sqrt2 isolated by a reducible polynomial
        let p = ipv("(v^2 - 2)*(v - 1)");
        let roots = isolate_all(&p).unwrap();
        // roots: -sqrt2, 1, sqrt2
        let mut a = AlgebraicNumber::new(p, roots[2].clone()).unwrap();
        assert!(a.is_root_of(&ipv("v^2 - 2")).unwrap());
        assert!(!a.is_root_of(&ipv("v - 1")).unwrap());
        assert!(!a.is_root_of(&ipv("v + 1")).unwrap());
    }

    #[test]
    fn compare_algebraic() {
        use std::cmp::Ordering;
        let mut a = sqrt2();
        let mut b = sqrt2();
        assert_eq!(a.cmp_alg(&mut b).unwrap(), Ordering::Equal);
        let p = ipv("v^2 - 3");
        let roots = isolate_all(&p).unwrap();
        let mut c = AlgebraicNumber::new(p, roots[1].clone()).unwrap();
        assert_eq!(a.cmp_alg(&mut c).unwrap(), Ordering::Less);
        let mut d = AlgebraicNumber::exact(rat(3, 2));
        assert_eq!(a.cmp_alg(&mut d).unwrap(), Ordering::Less);
        let mut e = AlgebraicNumber::exact(rat(7, 5));
        assert_eq!(a.cmp_alg(&mut e).unwrap(), Ordering::Greater);
    }

    #[test]
    fn fiber_roots_at_sqrt2() {
        // g(v,t) = t^2 - v at v = sqrt2: roots t = ±2^(1/4) ~ ±1.189
        let g = parse_poly("t^2 - v").unwrap();
        let mut a = sqrt2();
        let mut pp = ParamPoly::new(&mut a, &g, "v", "t").unwrap();
        assert_eq!(pp.count_roots_open(&rat_i(0), &rat_i(2)).unwrap(), 1);
        assert_eq!(pp.count_roots_open(&rat_i(-2), &rat_i(2)).unwrap(), 2);
        let roots = pp.isolate_roots_in(&rat_i(-2), &rat_i(2)).unwrap();
        assert_eq!(roots.len(), 2);
        // 2^(1/4) = 1.18920711...
        let r1 = pp.refine_root_to_width(&roots[1], &rat(1, 1024)).unwrap();
        assert!(r1.lo() > rat(1188, 1000) && r1.hi() < rat(1191, 1000));
    }

    #[test]
    fn fiber_with_multiple_root() {
        // g = (t - v)^2 * (t + 1) at v = sqrt2: distinct roots sqrt2, -1
        let g = parse_poly("(t - v)^2 * (t + 1)").unwrap();
        let mut a = sqrt2();
        let mut pp = ParamPoly::new(&mut a, &g, "v", "t").unwrap();
        assert_eq!(pp.count_roots_open(&rat_i(-2), &rat_i(2)).unwrap(), 2);
        let roots = pp.isolate_roots_in(&rat_i(-2), &rat_i(2)).unwrap();
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn fiber_rational_roots_and_endpoints() {
        // g = t*(t - 1)*(t^2 - v) at alpha = sqrt2, box [0, 1]: roots 0, 1
        // lie exactly on the endpoints
        let g = parse_poly("t*(t - 1)*(t^2 - v)").unwrap();
        let mut a = sqrt2();
        let mut pp = ParamPoly::new(&mut a, &g, "v", "t").unwrap();
        let roots = pp.isolate_roots_in(&rat_i(0), &rat_i(1)).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0], RootInterval::Exact(rat_i(0)));
        assert_eq!(roots[1], RootInterval::Exact(rat_i(1)));
    }

    #[test]
    fn fiber_zero_test_at_points() {
        let g = parse_poly("t^2 - v").unwrap();
        let mut a = AlgebraicNumber::exact(rat_i(4));
        let mut pp = ParamPoly::new(&mut a, &g, "v", "t").unwrap();
        assert!(pp.is_zero_at(&rat_i(2)).unwrap());
        assert!(pp.is_zero_at(&rat_i(-2)).unwrap());
        assert!(!pp.is_zero_at(&rat_i(0)).unwrap());
        assert_eq!(pp.sign_at(&rat_i(3)).unwrap(), 1);
        assert_eq!(pp.sign_at(&rat_i(0)).unwrap(), -1);
    }

    #[test]
    fn identically_zero_fiber() {
        // g = (v^2 - 2)*t at alpha = sqrt2 vanishes for all t
        let g = parse_poly("(v^2 - 2)*t").unwrap();
        let mut a = sqrt2();
        let mut pp = ParamPoly::new(&mut a, &g, "v", "t").unwrap();
        assert!(pp.is_identically_zero().unwrap());
        assert!(matches!(
            pp.isolate_roots_in(&rat_i(-1), &rat_i(1)),
            Err(Error::NonZeroDimensional(_))
        ));
    }
}
