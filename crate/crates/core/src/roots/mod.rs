//! Exact real-root isolation for univariate polynomials over ℚ and for
//! triangular bivariate systems with algebraic first coordinate.

pub mod algnum;
pub mod triangular;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::rat::{rat_i, Rat};

/// Dense univariate polynomial over ℤ, coefficients ascending, trailing
/// zeros stripped (empty = zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    pub coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// From a univariate `MultiPoly`, clearing denominators and removing
    /// integer content.  Errors if `p` involves a variable other than `var`.
    pub fn from_multipoly(p: &MultiPoly, var: &str) -> Result<Self> {
        for v in p.vars() {
            if v != var {
                return Err(Error::Internal(format!(
                    "expected univariate polynomial in {var}, found variable {v}"
                )));
            }
        }
        let coeffs = p.as_univariate(var);
        let mut rats: Vec<Rat> = Vec::with_capacity(coeffs.len());
        for c in &coeffs {
            match c.as_constant() {
                Some(r) => rats.push(r),
                None => return Err(Error::Internal("non-constant coefficient".into())),
            }
        }
        let mut lcm = BigInt::one();
        for r in &rats {
            lcm = lcm.lcm(r.denom());
        }
        let ints: Vec<BigInt> = rats.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
        let mut p = IntPoly::new(ints);
        p.remove_content();
        Ok(p)
    }

    pub fn remove_content(&mut self) {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if g > BigInt::one() {
            for c in self.coeffs.iter_mut() {
                *c /= &g;
            }
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = rat_i(0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rat::from_integer(c.clone());
        }
        acc
    }

    /// Sign of `p(x)` for rational `x`, without building the full value when
    /// avoidable.
    pub fn sign_at(&self, x: &Rat) -> i8 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        IntPoly::new(c)
    }

    pub fn to_multipoly(&self, var: &str) -> MultiPoly {
        let coeffs: Vec<MultiPoly> = self
            .coeffs
            .iter()
            .map(|c| MultiPoly::constant(Rat::from_integer(c.clone())))
            .collect();
        MultiPoly::from_univariate(&coeffs, var)
    }

    /// Squarefree part via the multivariate gcd machinery.
    pub fn squarefree(&self) -> Result<IntPoly> {
        let m = self.to_multipoly("_x");
        let sf = crate::poly::squarefree_part(&m)?;
        IntPoly::from_multipoly(&sf, "_x")
    }

    /// Power-of-two upper bound on the absolute value of every real root.
    pub fn root_bound(&self) -> Rat {
        if self.coeffs.len() <= 1 {
            return rat_i(1);
        }
        let lc = self.coeffs.last().unwrap().abs();
        let mut max = BigInt::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let a = c.abs();
            if a > max {
                max = a;
            }
        }
        // Cauchy: 1 + max|a_i|/|a_n|, rounded up to a power of two
        let mut b = BigInt::one();
        while &b * &lc < &max + &lc {
            b *= 2;
        }
        Rat::from_integer(b)
    }
}

/// One isolated real root: an exact rational or an open interval with
/// nonzero endpoint signs containing exactly one (simple) root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootInterval {
    Exact(Rat),
    Open(Rat, Rat),
}

impl RootInterval {
    pub fn lo(&self) -> Rat {
        match self {
            RootInterval::Exact(r) => r.clone(),
            RootInterval::Open(a, _) => a.clone(),
        }
    }

    pub fn hi(&self) -> Rat {
        match self {
            RootInterval::Exact(r) => r.clone(),
            RootInterval::Open(_, b) => b.clone(),
        }
    }

    pub fn mid(&self) -> Rat {
        (self.lo() + self.hi()) / rat_i(2)
    }

    pub fn width(&self) -> Rat {
        self.hi() - self.lo()
    }

    pub fn contains(&self, x: &Rat) -> bool {
        match self {
            RootInterval::Exact(r) => r == x,
            RootInterval::Open(a, b) => a < x && x < b,
        }
    }
}

fn sign_variations(coeffs: &[BigInt]) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for c in coeffs {
        let s = if c.is_zero() {
            continue;
        } else if c.is_positive() {
            1
        } else {
            -1
        };
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// `q(x) = (x+1)^n p(1/(x+1))`: reverse then Taylor shift by 1.
fn mobius_variations(p: &[BigInt]) -> usize {
    let mut q: Vec<BigInt> = p.iter().rev().cloned().collect();
    // Taylor shift by 1 in place (synthetic Horner)
    let n = q.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = q[j + 1].clone();
            q[j] += t;
        }
    }
    sign_variations(&q)
}

/// `2^n p(x/2)` (keeps integrality).
fn half_scale(p: &[BigInt]) -> Vec<BigInt> {
    let n = p.len();
    p.iter()
        .enumerate()
        .map(|(i, c)| c << (n - 1 - i))
        .collect()
}

/// `p(x+1)`.
fn shift_one(p: &[BigInt]) -> Vec<BigInt> {
    let mut q = p.to_vec();
    let n = q.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = q[j + 1].clone();
            q[j] += t;
        }
    }
    q
}

/// Isolate the roots of a squarefree integer polynomial inside `(0,1)`,
/// reporting results through the affine frame `x -> lo + x*(hi-lo)`.
fn isolate_01(p: Vec<BigInt>, lo: Rat, hi: Rat, out: &mut Vec<RootInterval>) {
    let v = mobius_variations(&p);
    if v == 0 {
        return;
    }
    if v == 1 {
        out.push(RootInterval::Open(lo, hi));
        return;
    }
    let mid = (&lo + &hi) / rat_i(2);
    let left = half_scale(&p);
    let right = shift_one(&left);
    // p(1/2) = left constant term after shift = right[0]
    isolate_01(left, lo, mid.clone(), out);
    if right.first().is_some_and(|c| c.is_zero()) {
        out.push(RootInterval::Exact(mid.clone()));
    }
    isolate_01(right, mid, hi, out);
}

/// Isolate all real roots of `p` (taken squarefree internally).  Returned
/// intervals are sorted, pairwise disjoint, and each contains exactly one
/// root; rational roots found along the way are reported exactly.
pub fn isolate_all(p: &IntPoly) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("root isolation of zero polynomial"));
    }
    let sf = p.squarefree()?;
    if sf.degree() == 0 {
        return Ok(vec![]);
    }
    let b = sf.root_bound();
    let mut out = Vec::new();

    // negative roots: q(x) = sf(-b*x) on (0,1)
    let scaled = |sign_neg: bool| -> Vec<BigInt> {
        // sf(±b x) with b = bn (power of two integer); multiply coeff i by b^i
        let bn = b.numer().clone();
        let mut pw = BigInt::one();
        let mut q = Vec::with_capacity(sf.coeffs.len());
        for (i, c) in sf.coeffs.iter().enumerate() {
            let mut t = c * &pw;
            if sign_neg && i % 2 == 1 {
                t = -t;
            }
            q.push(t);
            pw *= &bn;
        }
        q
    };
    let mut neg = Vec::new();
    isolate_01(scaled(true), rat_i(0), rat_i(1), &mut neg);
    // frame maps (0,1) -> (0,-b): flip
    for r in neg.into_iter().rev() {
        out.push(match r {
            RootInterval::Exact(x) => RootInterval::Exact(-x * &b),
            RootInterval::Open(a, c) => RootInterval::Open(-c * &b, -a * &b),
        });
    }
    if sf.coeffs[0].is_zero() {
        out.push(RootInterval::Exact(rat_i(0)));
    }
    let mut pos = Vec::new();
    isolate_01(scaled(false), rat_i(0), rat_i(1), &mut pos);
    for r in pos {
        out.push(match r {
            RootInterval::Exact(x) => RootInterval::Exact(x * &b),
            RootInterval::Open(a, c) => RootInterval::Open(a * &b, c * &b),
        });
    }
    // tighten open intervals so neighbours never share endpoints with roots
    let mut res = Vec::with_capacity(out.len());
    for r in out {
        res.push(match r {
            RootInterval::Exact(x) => RootInterval::Exact(x),
            RootInterval::Open(a, c) => tighten(&sf, a, c),
        });
    }
    Ok(res)
}

/// Shrink an isolating interval so neither endpoint is a root, preserving
/// the single contained root (which it may discover exactly).  Endpoint
/// roots are rational, so they divide out exactly; the quotient changes
/// sign only at the interior root, which makes the inward steps checkable.
fn tighten(sf: &IntPoly, a: Rat, b: Rat) -> RootInterval {
    use algnum::{qp_div_exact, qp_eval, qp_from_int, QPoly};
    let root_a = sf.sign_at(&a) == 0;
    let root_b = sf.sign_at(&b) == 0;
    if !root_a && !root_b {
        return RootInterval::Open(a, b);
    }
    let mut q: QPoly = qp_from_int(sf);
    for e in [&a, &b] {
        while qp_eval(&q, e).is_zero() {
            q = qp_div_exact(&q, &vec![-e.clone(), rat_i(1)]);
        }
    }
    let sign = |x: &Rat| -> i8 {
        let v = qp_eval(&q, x);
        if v.is_zero() {
            0
        } else if v > rat_i(0) {
            1
        } else {
            -1
        }
    };
    let sa = sign(&a);
    let mut na = a.clone();
    if root_a {
        let mut step = (&b - &a) / rat_i(4);
        loop {
            let cand = &a + &step;
            match sign(&cand) {
                0 => return RootInterval::Exact(cand),
                s if s == sa => {
                    na = cand;
                    break;
                }
                _ => step = step / rat_i(4),
            }
        }
    }
    let sb = sign(&b);
    let mut nb = b.clone();
    if root_b {
        let mut step = (&b - &a) / rat_i(4);
        loop {
            let cand = &b - &step;
            match sign(&cand) {
                0 => return RootInterval::Exact(cand),
                s if s == sb => {
                    nb = cand;
                    break;
                }
                _ => step = step / rat_i(4),
            }
        }
    }
    RootInterval::Open(na, nb)
}

/// Halve the width of an isolating interval for squarefree `p` (exact
/// results pass through unchanged).
pub fn refine(p: &IntPoly, r: &RootInterval) -> RootInterval {
    match r {
        RootInterval::Exact(_) => r.clone(),
        RootInterval::Open(a, b) => {
            let m = (a + b) / rat_i(2);
            match p.sign_at(&m) {
                0 => RootInterval::Exact(m),
                s => {
                    if s == p.sign_at(a) {
                        RootInterval::Open(m, b.clone())
                    } else {
                        RootInterval::Open(a.clone(), m)
                    }
                }
            }
        }
    }
}

/// Refine until the interval width is at most `eps`.
pub fn refine_to_width(p: &IntPoly, r: &RootInterval, eps: &Rat) -> RootInterval {
    let mut r = r.clone();
    while r.width() > *eps {
        r = refine(p, &r);
    }
    r
}

/// Number of distinct real roots of `p` in the closed interval `[a,b]`.
/// Errors with `RootAtEndpoint` when an endpoint is a root, so callers must
/// perturb their window instead of silently miscounting.
pub fn count_roots_in(p: &IntPoly, a: &Rat, b: &Rat) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("root count of zero polynomial"));
    }
    let sf = p.squarefree()?;
    if sf.sign_at(a) == 0 || sf.sign_at(b) == 0 {
        return Err(Error::RootAtEndpoint);
    }
    let mut n = 0;
    for r in isolate_all(&sf)? {
        let mut r = r;
        loop {
            if r.hi() < *a || r.lo() > *b {
                break;
            }
            if r.lo() > *a && r.hi() < *b {
                n += 1;
                break;
            }
            if let RootInterval::Exact(x) = &r {
                if *a <= *x && *x <= *b {
                    n += 1;
                }
                break;
            }
            r = refine(&sf, &r);
        }
    }
    Ok(n)
}

/// Isolate the roots of `p` lying in `[a,b]`, endpoints excluded as roots
/// (`RootAtEndpoint` otherwise).  Output intervals are shrunk to lie inside
/// `(a,b)`.
pub fn isolate_in(p: &IntPoly, a: &Rat, b: &Rat) -> Result<Vec<RootInterval>> {
    let sf = p.squarefree()?;
    if sf.sign_at(a) == 0 || sf.sign_at(b) == 0 {
        return Err(Error::RootAtEndpoint);
    }
    let mut out = Vec::new();
    for r in isolate_all(&sf)? {
        let mut r = r;
        loop {
            if r.hi() < *a || r.lo() > *b {
                break;
            }
            if r.lo() > *a && r.hi() < *b {
                out.push(r);
                break;
            }
            if let RootInterval::Exact(x) = &r {
                if *a < *x && *x < *b {
                    out.push(r);
                }
                break;
            }
            r = refine(&sf, &r);
        }
    }
    Ok(out)
}

/// Isolate the roots of `p` in the closed interval `[a,b]`; endpoint roots
/// are allowed and reported exactly.
pub fn isolate_closed(p: &IntPoly, a: &Rat, b: &Rat) -> Result<Vec<RootInterval>> {
    let sf = p.squarefree()?;
    let root_a = sf.sign_at(a) == 0;
    let root_b = sf.sign_at(b) == 0;
    let mut out = Vec::new();
    for r in isolate_all(&sf)? {
        let mut r = r;
        loop {
            if let RootInterval::Exact(x) = &r {
                if *a <= *x && *x <= *b {
                    out.push(r);
                }
                break;
            }
            if root_a && r.contains(a) {
                out.push(RootInterval::Exact(a.clone()));
                break;
            }
            if root_b && r.contains(b) {
                out.push(RootInterval::Exact(b.clone()));
                break;
            }
            if r.hi() < *a || r.lo() > *b {
                break;
            }
            if r.lo() > *a && r.hi() < *b {
                out.push(r);
                break;
            }
            r = refine(&sf, &r);
        }
    }
    out.sort_by(|x, y| x.lo().cmp(&y.lo()).then(x.hi().cmp(&y.hi())));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::rat::rat;

    fn ip(s: &str) -> IntPoly {
        IntPoly::from_multipoly(&parse_poly(s).unwrap(), "t").unwrap()
    }

    #[test]
    fn isolate_quadratic() {
        let p = ip("t^2 - 2");
        let roots = isolate_all(&p).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].contains(&rat(-1414214, 1000000)) || roots[0].width() > rat(1, 10));
        let r0 = refine_to_width(&p, &roots[0], &rat(1, 1000000));
        let r1 = refine_to_width(&p, &roots[1], &rat(1, 1000000));
        assert!(r0.contains(&rat(-14142136, 10000000)));
        assert!(r1.contains(&rat(14142136, 10000000)));
    }

    #[test]
    fn isolate_rational_roots() {
        let p = ip("(t - 1)*(t + 3)*(2*t - 1)");
        let mut roots = isolate_all(&p).unwrap();
        assert_eq!(roots.len(), 3);
        for r in roots.iter_mut() {
            *r = refine_to_width(&p, r, &rat(1, 1 << 20));
        }
        assert!(roots[0].contains(&rat_i(-3)));
        assert!(roots[1].contains(&rat(1, 2)));
        assert!(roots[2].contains(&rat_i(1)));
    }

    #[test]
    fn isolate_with_multiplicity() {
        // squarefree part handles repeated roots
        let p = ip("(t - 2)^3 * (t + 1)");
        let roots = isolate_all(&p).unwrap();
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn no_real_roots() {
        assert!(isolate_all(&ip("t^2 + 1")).unwrap().is_empty());
        assert!(isolate_all(&ip("t^4 + t^2 + 5")).unwrap().is_empty());
    }

    #[test]
    fn count_in_window() {
        let p = ip("t^3 - t"); // roots -1, 0, 1
        assert_eq!(count_roots_in(&p, &rat(-1, 2), &rat(1, 2)).unwrap(), 1);
        assert_eq!(count_roots_in(&p, &rat_i(-2), &rat_i(2)).unwrap(), 3);
        assert_eq!(count_roots_in(&p, &rat(1, 2), &rat_i(2)).unwrap(), 1);
        assert!(matches!(
            count_roots_in(&p, &rat_i(0), &rat_i(2)),
            Err(Error::RootAtEndpoint)
        ));
    }

    #[test]
    fn isolate_dense_cluster() {
        // Wilkinson-style stress: roots at 1..=10
        let mut s = String::from("1");
        for k in 1..=10 {
            s = format!("({s})*(t - {k})");
        }
        let p = ip(&s);
        let roots = isolate_all(&p).unwrap();
        assert_eq!(roots.len(), 10);
        for (i, r) in roots.iter().enumerate() {
            let r = refine_to_width(&p, r, &rat(1, 1000));
            assert!(r.contains(&rat_i(i as i64 + 1)));
        }
    }

    #[test]
    fn isolate_in_window() {
        let p = ip("t^3 - t");
        let rs = isolate_in(&p, &rat(-1, 2), &rat(3, 2)).unwrap();
        assert_eq!(rs.len(), 2);
        assert!(rs[0].contains(&rat_i(0)));
        assert!(rs[1].contains(&rat_i(1)));
    }

    #[test]
    fn isolate_closed_with_endpoint_roots() {
        let p = ip("t^3 - t");
        let rs = isolate_closed(&p, &rat_i(0), &rat_i(1)).unwrap();
        assert_eq!(rs.len(), 2);
        assert_eq!(rs[0], RootInterval::Exact(rat_i(0)));
        assert_eq!(rs[1], RootInterval::Exact(rat_i(1)));

        let p = ip("t^2 - 2");
        let rs = isolate_closed(&p, &rat_i(0), &rat_i(2)).unwrap();
        assert_eq!(rs.len(), 1);
    }
}
