//! Polynomial gcd (primitive PRS), content/primitive split, squarefree part.

use crate::error::{Error, Result};

use super::resultant::{deg, dense, prem};
use super::MultiPoly;

/// Gcd over ℚ, returned in canonical form (integer coefficients, content 1,
/// positive graded-lex leading coefficient).  The gcd of anything with a
/// nonzero constant is 1.
pub fn gcd(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    if p.is_zero() {
        return q.normalized();
    }
    if q.is_zero() {
        return p.normalized();
    }
    if p.is_constant() || q.is_constant() {
        return MultiPoly::one();
    }
    // main variable: first variable common to both, else gcd is constant
    let var = match p.vars().iter().find(|v| q.vars().contains(v)) {
        Some(v) => v.clone(),
        None => return MultiPoly::one(),
    };

    let pc = p.as_univariate(&var);
    let qc = q.as_univariate(&var);
    let p_cont = gcd_many(&pc);
    let q_cont = gcd_many(&qc);
    let cont = gcd(&p_cont, &q_cont);
    let pp = p.exact_divide(&p_cont).expect("content divides");
    let qp = q.exact_divide(&q_cont).expect("content divides");

    let mut a = dense(&pp, &var);
    let mut b = dense(&qp, &var);
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if deg(&b) == 0 {
            // primitive parts are coprime in var
            return cont;
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            let g = MultiPoly::from_univariate(&b, &var);
            let g = primitive_wrt(&g, &var);
            return cont.mul(&g).normalized();
        }
        let rp = primitive_wrt(&MultiPoly::from_univariate(&r, &var), &var);
        a = b;
        b = dense(&rp, &var);
    }
}

/// Gcd of a list (zero entries ignored).
pub fn gcd_many(polys: &[MultiPoly]) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for p in polys {
        if p.is_zero() {
            continue;
        }
        acc = gcd(&acc, p);
        if acc == MultiPoly::one() {
            return acc;
        }
    }
    acc
}

fn primitive_wrt(p: &MultiPoly, var: &str) -> MultiPoly {
    let c = gcd_many(&p.as_univariate(var));
    if c.is_zero() {
        return MultiPoly::zero();
    }
    // normalized() strips the numeric content too, which keeps the
    // pseudo-remainder sequence from blowing up in the univariate case
    p.exact_divide(&c).expect("content divides").normalized()
}

/// Split `p = content * primitive` where the content involves only variables
/// outside `main_vars` and the primitive part has constant coefficient gcd
/// (as polynomials in the non-main variables).
pub fn content_primitive(p: &MultiPoly, main_vars: &[String]) -> Result<(MultiPoly, MultiPoly)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("content of zero polynomial"));
    }
    // group coefficients by the main-variable monomial
    let mut q = p.clone();
    let mut coeffs: Vec<MultiPoly> = Vec::new();
    // strip main vars one at a time: view as univariate, collect leaves
    let present: Vec<String> = main_vars
        .iter()
        .filter(|v| p.involves(v))
        .cloned()
        .collect();
    collect_coeffs(&q, &present, &mut coeffs);
    let content = gcd_many(&coeffs);
    if content.is_zero() {
        return Err(Error::ZeroPolynomial("content of zero polynomial"));
    }
    q = p.exact_divide(&content)?;
    Ok((content, q))
}

fn collect_coeffs(p: &MultiPoly, main_vars: &[String], out: &mut Vec<MultiPoly>) {
    match main_vars.split_first() {
        None => out.push(p.clone()),
        Some((v, rest)) => {
            for c in p.as_univariate(v) {
                if !c.is_zero() {
                    collect_coeffs(&c, rest, out);
                }
            }
        }
    }
}

/// A multivariate polynomial is squarefree when its restriction to a line
/// keeps the total degree and is squarefree as a univariate polynomial: a
/// repeated factor would survive the restriction with its multiplicity.
/// Much cheaper than the gcd cascade, so try a few fixed lines first.
fn squarefree_on_line(p: &MultiPoly, slopes: &[i64]) -> bool {
    let vars = p.vars().to_vec();
    let s = "__line";
    if vars.iter().any(|v| v == s) {
        return false;
    }
    let mut q = p.clone();
    for (k, v) in vars.iter().enumerate() {
        if !p.involves(v) {
            continue;
        }
        let line = MultiPoly::var(s)
            .scale(&crate::rat::rat_i(slopes[k % slopes.len()]))
            .add(&MultiPoly::constant_i((k as i64 + 2) * (k as i64 - 5)));
        q = q.substitute(v, &line);
    }
    if q.degree(s) != p.total_degree() {
        return false;
    }
    // squarefree iff the discriminant resultant(q, q') does not vanish
    match crate::poly::resultant(&q, &q.derivative(s), s) {
        Ok(r) => !r.is_zero(),
        Err(_) => false,
    }
}

/// Product of the distinct irreducible factors of `p`, each to multiplicity
/// one: `p / gcd(p, ∂p/∂v₁, …)`.
pub fn squarefree_part(p: &MultiPoly) -> Result<MultiPoly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("squarefree part of zero polynomial"));
    }
    if p.is_constant() {
        return Ok(MultiPoly::one());
    }
    for slopes in [[1, 3, 2], [5, 1, 7], [2, 9, 11]] {
        if squarefree_on_line(p, &slopes) {
            return Ok(p.normalized());
        }
    }
    let mut g = p.clone();
    for v in p.vars().to_vec() {
        let d = p.derivative(&v);
        g = gcd(&g, &d);
        if g.is_constant() {
            return Ok(p.normalized());
        }
    }
    Ok(p.exact_divide(&g)?.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn gcd_with_common_factor() {
        let a = p("(x + y)*(x - 1)");
        let b = p("(x + y)*(y + 2)");
        assert!(gcd(&a, &b).eq_up_to_constant(&p("x + y")));
    }

    #[test]
    fn gcd_coprime() {
        assert_eq!(gcd(&p("x^2 + 1"), &p("x - 1")), MultiPoly::one());
        assert_eq!(gcd(&p("x"), &p("y")), MultiPoly::one());
    }

    #[test]
    fn gcd_three_way() {
        // gcd(p*q, p*r) with pairwise coprime p,q,r = c*p
        let f = p("(v^2 + t)*(v - 3)");
        let g = p("(v^2 + t)*(t + 1)");
        assert!(gcd(&f, &g).eq_up_to_constant(&p("v^2 + t")));
    }

    #[test]
    fn content_primitive_basics() {
        let (c, q) = content_primitive(&p("x*y"), &["x".to_string(), "y".to_string()]).unwrap();
        assert!(c.is_constant());
        assert!(q.eq_up_to_constant(&p("x*y")));
        assert_eq!(c.mul(&q), p("x*y"));

        let (c, q) =
            content_primitive(&p("(s^2 + 1)*(x + s)"), &["x".to_string()]).unwrap();
        assert!(c.eq_up_to_constant(&p("s^2 + 1")));
        assert!(q.eq_up_to_constant(&p("x + s")));
        assert_eq!(c.mul(&q), p("(s^2 + 1)*(x + s)"));

        assert!(content_primitive(&MultiPoly::zero(), &["x".to_string()]).is_err());
    }

    #[test]
    fn squarefree_constructed() {
        let f = p("(t - 1)^2 * (v + t)");
        let sf = squarefree_part(&f).unwrap();
        assert!(sf.eq_up_to_constant(&p("(t - 1)*(v + t)")));

        // already squarefree: Example-style G
        let g = p("t*(1 + v^2)*(v - 1)");
        assert!(squarefree_part(&g).unwrap().eq_up_to_constant(&g));

        assert!(squarefree_part(&MultiPoly::zero()).is_err());
    }
}
