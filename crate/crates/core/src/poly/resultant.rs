//! Resultants by fraction-free subresultant polynomial remainder sequences.
//!
//! The Sylvester-determinant route exists only as an independent oracle in
//! the test suite; at desk scale the PRS avoids determinant blowup.

use num_traits::One;

use crate::error::{Error, Result};
use crate::rat::Rat;

use super::MultiPoly;

/// Dense view in the eliminated variable: ascending coefficient list with a
/// nonzero leading coefficient (empty = zero polynomial).
pub(crate) fn dense(p: &MultiPoly, var: &str) -> Vec<MultiPoly> {
    let mut c = p.as_univariate(var);
    while c.last().is_some_and(|t| t.is_zero()) {
        c.pop();
    }
    c
}

pub(crate) fn deg(c: &[MultiPoly]) -> usize {
    c.len().saturating_sub(1)
}

fn trim(c: &mut Vec<MultiPoly>) {
    while c.last().is_some_and(|t| t.is_zero()) {
        c.pop();
    }
}

/// Pseudo-remainder: returns `lc(b)^(deg a - deg b + 1) * a mod b`.
pub(crate) fn prem(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let da = deg(a);
    let db = deg(b);
    debug_assert!(!b.is_empty() && da >= db);
    let lcb = b.last().unwrap().clone();
    let mut r: Vec<MultiPoly> = a.to_vec();
    let mut e = (da - db + 1) as i64;
    loop {
        trim(&mut r);
        if r.is_empty() || deg(&r) < db {
            break;
        }
        let dr = deg(&r);
        let lr = r.last().unwrap().clone();
        // r = lcb*r - lr * x^(dr-db) * b
        for c in r.iter_mut() {
            *c = c.mul(&lcb);
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            let t = bc.mul(&lr);
            r[i + shift] = r[i + shift].sub(&t);
        }
        e -= 1;
    }
    if e > 0 {
        let f = power(&lcb, e as u32);
        for c in r.iter_mut() {
            *c = c.mul(&f);
        }
    }
    trim(&mut r);
    r
}

fn power(p: &MultiPoly, n: u32) -> MultiPoly {
    p.pow(n)
}

/// `Res_var(p, q)`: a polynomial in the remaining variables, identically zero
/// iff `p` and `q` share a factor of positive degree in `var`.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, var: &str) -> Result<MultiPoly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroPolynomial("zero polynomial resultant undefined"));
    }
    if p.is_zero() || q.is_zero() {
        return Ok(MultiPoly::zero());
    }
    let da = p.degree(var);
    let db = q.degree(var);
    if da == 0 && db == 0 {
        return Ok(MultiPoly::one());
    }
    if da == 0 {
        return Ok(p.pow(db));
    }
    if db == 0 {
        return Ok(q.pow(da));
    }

    let mut a = dense(p, var);
    let mut b = dense(q, var);
    let mut sign = Rat::one();
    if deg(&a) < deg(&b) {
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = MultiPoly::one();
    let mut h = MultiPoly::one();
    loop {
        let da = deg(&a);
        let db = deg(&b);
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = prem(&a, &b);
        a = b;
        if r.is_empty() {
            return Ok(MultiPoly::zero());
        }
        let divisor = g.mul(&h.pow(delta));
        let mut nb = Vec::with_capacity(r.len());
        for c in r {
            nb.push(c.exact_divide(&divisor)?);
        }
        b = nb;
        g = a.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).exact_divide(&h.pow(delta - 1))?,
        };
        if deg(&b) == 0 {
            break;
        }
    }
    // b is a nonzero "scalar" (free of var); a still has positive degree
    let da = deg(&a) as u32;
    let res = b[0]
        .pow(da)
        .exact_divide(&h.pow(da.saturating_sub(1)))?;
    Ok(res.scale(&sign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn degree_one_elimination() {
        // resultant(v-3, t, v) = t
        let r = resultant(&p("v - 3"), &p("t"), "v").unwrap();
        assert!(r.eq_up_to_constant(&p("t")));
    }

    #[test]
    fn shared_factor_vanishes() {
        let a = p("(v - t)*(v + 1)");
        let b = p("(v - t)*(v^2 + t)");
        assert!(resultant(&a, &b, "v").unwrap().is_zero());
    }

    #[test]
    fn zero_inputs() {
        assert!(resultant(&MultiPoly::zero(), &MultiPoly::zero(), "v").is_err());
        assert!(resultant(&MultiPoly::zero(), &p("v"), "v").unwrap().is_zero());
    }

    #[test]
    fn constant_convention() {
        // Res(c, q) = c^deg(q)
        let r = resultant(&p("3"), &p("v^2 - 1"), "v").unwrap();
        assert_eq!(r, p("9"));
        let r = resultant(&p("t"), &p("v^2 - 1"), "v").unwrap();
        assert_eq!(r, p("t^2"));
    }

    #[test]
    fn ruled_surface_first_resultant() {
        // Example: Res_u(q1 x - p1, q2 y - p2) for the hyperboloid ruled
        // surface, before content removal.
        let a = p("(1 + u^2)*x - (1 - u^2 - 2*s*u)");
        let b = p("(1 + u^2)*y - (2*u + s*(1 - u^2))");
        let r = resultant(&a, &b, "u").unwrap();
        let expected = p("4*y^2 + 4*s^2*x^2 + 4*s^2*y^2 - 8*s^2 - 4*s^4 + 4*x^2 - 4");
        assert!(r.eq_up_to_constant(&expected));
        // content is (4s^2+4), primitive is -s^2 + y^2 - 1 + x^2
        let (content, prim) = super::super::content_primitive(
            &r,
            &["x".to_string(), "y".to_string()],
        )
        .unwrap();
        assert!(content.eq_up_to_constant(&p("4*s^2 + 4")));
        assert!(prim.eq_up_to_constant(&p("-s^2 + y^2 - 1 + x^2")));
        assert_eq!(content.mul(&prim), r);
    }

    #[test]
    fn univariate_numeric() {
        // Res(x^2-1, x-2) = (2-1)(2+1)... = p(2) * lc stuff = 3
        let r = resultant(&p("x^2 - 1"), &p("x - 2"), "x").unwrap();
        assert_eq!(r, p("3"));
        // swap arguments: sign (-1)^(2*1) = +
        let r = resultant(&p("x - 2"), &p("x^2 - 1"), "x").unwrap();
        assert_eq!(r, p("3"));
    }
}
