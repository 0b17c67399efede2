//! Implicitization of projectable surfaces by two successive resultants, and
//! the plane intersection curve `G(v,t)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::{content_primitive, gcd, resultant, squarefree_part, MultiPoly};
use crate::rat::{rat_i, Rat};
use crate::surface::{ProjectableSurface, RationalSurface, COORD_NAMES};

/// Implicit equation `F(x,y,z)` of a projectable surface, canonicalized
/// (squarefree, primitive over ℤ, positive graded-lex leading coefficient).
///
/// First resultant eliminates the fiber parameter from the two coordinates
/// that involve it; the content in the remaining parameter is removed; if the
/// primitive part is free of that parameter the surface is cylindrical and we
/// are done, otherwise a second resultant eliminates the remaining parameter
/// through the special coordinate.
pub fn implicitize(ps: &ProjectableSurface) -> Result<MultiPoly> {
    let s = &ps.surface;
    let fiber = ps.fiber_param_name().to_string();
    let other = ps.other_param_name().to_string();
    let k = ps.special_coord;
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();

    // q_i * X_i - p_i for the two coordinates involving the fiber parameter
    let eq = |i: usize| {
        let x = MultiPoly::var(COORD_NAMES[i]);
        s.coords[i].denom().mul(&x).sub(s.coords[i].numer())
    };
    let a = eq(others[0]);
    let b = eq(others[1]);
    let res = resultant(&a, &b, &fiber)?;
    if res.is_zero() {
        return Err(Error::Certification(
            "first resultant vanished identically (improper or degenerate input)".into(),
        ));
    }
    let main_vars: Vec<String> = others
        .iter()
        .map(|&i| COORD_NAMES[i].to_string())
        .collect();
    let (_content, l) = content_primitive(&res, &main_vars)?;

    let f = if l.degree(&other) == 0 {
        // cylindrical over the coordinate plane of the two eliminated coords
        l
    } else {
        let xk = MultiPoly::var(COORD_NAMES[k]);
        let ck = s.coords[k].denom().mul(&xk).sub(s.coords[k].numer());
        let f = resultant(&ck, &l, &other)?;
        if f.is_zero() {
            return Err(Error::Certification(
                "second resultant vanished identically".into(),
            ));
        }
        f
    };
    let f = squarefree_part(&f)?;
    // drop any leftover content free of the coordinate variables
    let coord_vars: Vec<String> = COORD_NAMES.iter().map(|c| c.to_string()).collect();
    let (_c, f) = content_primitive(&f, &coord_vars)?;
    Ok(f.normalized())
}

/// Symbolic soundness check: the numerator of `F ∘ S` reduces to zero
/// exactly.
pub fn verify_implicit(f: &MultiPoly, s: &RationalSurface) -> Result<bool> {
    let subs: Vec<(String, MultiPoly, MultiPoly)> = (0..3)
        .map(|i| {
            (
                COORD_NAMES[i].to_string(),
                s.coords[i].numer().clone(),
                s.coords[i].denom().clone(),
            )
        })
        .collect();
    Ok(f.compose_rational(&subs)?.is_zero())
}

/// The plane intersection curve: squarefree numerator of `F ∘ S2`, split
/// into the main part and the univariate content in the first parameter
/// (vertical lines, re-attached later by the topology stage).
#[derive(Clone, Debug)]
pub struct PlaneCurve {
    /// Squarefree, free of univariate factors in the first parameter.
    pub main: MultiPoly,
    /// Univariate vertical-line content `V(v)` (1 when absent).
    pub vertical: MultiPoly,
    /// `main * vertical`, the full squarefree curve.
    pub full: MultiPoly,
    /// Parameter names of `S2`, in order (v, t).
    pub params: [String; 2],
}

pub fn plane_curve(f: &MultiPoly, s2: &RationalSurface) -> Result<PlaneCurve> {
    let subs: Vec<(String, MultiPoly, MultiPoly)> = (0..3)
        .map(|i| {
            (
                COORD_NAMES[i].to_string(),
                s2.coords[i].numer().clone(),
                s2.coords[i].denom().clone(),
            )
        })
        .collect();
    let numer = f.compose_rational(&subs)?;
    if numer.is_zero() {
        return Err(Error::SharedComponent);
    }
    let g = squarefree_part(&numer)?;
    let t = s2.params[1].clone();
    // content w.r.t. t = factors univariate in v
    let coeffs = g.as_univariate(&t);
    let vertical = crate::poly::gcd_many(&coeffs).normalized();
    let main = g.exact_divide(&vertical)?.normalized();
    let full = main.mul(&vertical).normalized();
    Ok(PlaneCurve {
        main,
        vertical,
        full,
        params: [s2.params[0].clone(), t],
    })
}

/// Report on the singular locus of `F` (geometric extraneous component
/// detection).  The paper only requires detection: we expose the defining
/// equations, look for isolated rational singular candidates at desk scale,
/// and flag candidates for which a parameter-grid search finds no preimage.
#[derive(Clone, Debug)]
pub struct SingularLocusReport {
    pub equations: Vec<MultiPoly>,
    pub rational_candidates: Vec<[Rat; 3]>,
    /// Candidates with no parametric preimage found within the search budget.
    pub suspected_extraneous: Vec<[Rat; 3]>,
}

pub fn singular_locus_report(
    f: &MultiPoly,
    surface: &RationalSurface,
    search_radius: i64,
) -> Result<SingularLocusReport> {
    let fx = f.derivative("x");
    let fy = f.derivative("y");
    let fz = f.derivative("z");
    let equations = vec![f.clone(), fx.clone(), fy.clone(), fz.clone()];

    // small-rational grid search for isolated singular points; adequate for
    // the desk-scale fixtures where such points have small coordinates
    let mut rational_candidates = Vec::new();
    let halves: Vec<Rat> = (-2 * search_radius..=2 * search_radius)
        .map(|n| Rat::new(n.into(), 2.into()))
        .collect();
    for x in &halves {
        for y in &halves {
            for z in &halves {
                let mut asn = BTreeMap::new();
                asn.insert("x".to_string(), x.clone());
                asn.insert("y".to_string(), y.clone());
                asn.insert("z".to_string(), z.clone());
                if equations
                    .iter()
                    .all(|e| e.eval(&asn).map(|v| v == rat_i(0)).unwrap_or(false))
                {
                    rational_candidates.push([x.clone(), y.clone(), z.clone()]);
                }
            }
        }
    }
    let mut suspected_extraneous = Vec::new();
    'cand: for c in &rational_candidates {
        for nu in -8 * search_radius..=8 * search_radius {
            for ns in -8 * search_radius..=8 * search_radius {
                let u = Rat::new(nu.into(), 4.into());
                let s = Rat::new(ns.into(), 4.into());
                if let Ok(p) = surface.eval(&u, &s) {
                    if p == *c {
                        continue 'cand;
                    }
                }
            }
        }
        suspected_extraneous.push(c.clone());
    }
    Ok(SingularLocusReport {
        equations,
        rational_candidates,
        suspected_extraneous,
    })
}

/// Shared-component detection helper: true when `F ∘ S2` vanishes
/// identically.
pub fn shares_component(f: &MultiPoly, s2: &RationalSurface) -> Result<bool> {
    match plane_curve(f, s2) {
        Ok(_) => Ok(false),
        Err(Error::SharedComponent) => Ok(true),
        Err(e) => Err(e),
    }
}

#[allow(dead_code)]
fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    gcd(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::surface::RationalFunction;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    fn rf(n: &str, d: &str) -> RationalFunction {
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    fn surf(params: [&str; 2], x: (&str, &str), y: (&str, &str), z: (&str, &str)) -> RationalSurface {
        RationalSurface::new(
            [params[0].into(), params[1].into()],
            [rf(x.0, x.1), rf(y.0, y.1), rf(z.0, z.1)],
        )
    }

    #[test]
    fn hyperboloid_implicit() {
        let s1 = surf(
            ["u", "s"],
            ("1 - u^2 - 2*s*u", "1 + u^2"),
            ("2*u + s*(1 - u^2)", "1 + u^2"),
            ("s", "1"),
        );
        let f = implicitize(&s1.projectable_form().unwrap()).unwrap();
        assert!(f.eq_up_to_constant(&p("-z^2 + y^2 - 1 + x^2")));
        assert!(verify_implicit(&f, &s1).unwrap());
    }

    #[test]
    fn paraboloid_implicit() {
        // elliptic paraboloid (s^2 u^2 + u^2 + u)/2, s*u, u
        let s1 = surf(
            ["u", "s"],
            ("s^2*u^2 + u^2 + u", "2"),
            ("s*u", "1"),
            ("u", "1"),
        );
        let f = implicitize(&s1.projectable_form().unwrap()).unwrap();
        assert!(f.eq_up_to_constant(&p("y^2 + z^2 - 2*x + z")));
        assert!(verify_implicit(&f, &s1).unwrap());
    }

    #[test]
    fn cylinder_branch() {
        // circle extruded along z: deg_s(L) = 0 path
        let s1 = surf(
            ["u", "s"],
            ("1 - u^2", "1 + u^2"),
            ("2*u", "1 + u^2"),
            ("s", "1"),
        );
        let f = implicitize(&s1.projectable_form().unwrap()).unwrap();
        assert!(f.eq_up_to_constant(&p("x^2 + y^2 - 1")));
        assert!(verify_implicit(&f, &s1).unwrap());
    }

    #[test]
    fn cone_implicit_and_plane_curve() {
        // cone + elliptic cylinder, the paper's first experiment
        let s1 = surf(
            ["u", "s"],
            ("(1 - u^2)*(1 + s)", "1 + u^2"),
            ("2*u + 2*s*u", "1 + u^2"),
            ("1 + s", "1"),
        );
        let f = implicitize(&s1.projectable_form().unwrap()).unwrap();
        assert!(f.eq_up_to_constant(&p("x^2 + y^2 - z^2")));

        let s2 = surf(
            ["v", "t"],
            ("1 - v^2", "1 + v^2"),
            ("2*v + t*(1 + v^2)", "1 + v^2"),
            ("1 + t", "1"),
        );
        let pc = plane_curve(&f, &s2).unwrap();
        assert!(pc.full.eq_up_to_constant(&p("t*(1 + v^2)*(v - 1)")));
        assert!(pc.vertical.eq_up_to_constant(&p("(1 + v^2)*(v - 1)")));
        assert!(pc.main.eq_up_to_constant(&p("t")));
    }

    #[test]
    fn shared_component_detected() {
        let s1 = surf(
            ["u", "s"],
            ("1 - u^2", "1 + u^2"),
            ("2*u", "1 + u^2"),
            ("s", "1"),
        );
        let f = implicitize(&s1.projectable_form().unwrap()).unwrap();
        // S2 = the same cylinder, reparametrized trivially
        let s2 = surf(
            ["v", "t"],
            ("1 - v^2", "1 + v^2"),
            ("2*v", "1 + v^2"),
            ("t + 1", "1"),
        );
        assert!(matches!(plane_curve(&f, &s2), Err(Error::SharedComponent)));
        assert!(shares_component(&f, &s2).unwrap());
    }

    #[test]
    fn example_plane_curve_sextic() {
        let f = p("y^2 + z^2 - 2*x + z");
        let s2 = surf(
            ["v", "t"],
            ("v", "1"),
            ("(t - 1)*t - 1/4*v", "1"),
            ("(t + 1)*(t - 1)*t", "1"),
        );
        let pc = plane_curve(&f, &s2).unwrap();
        let expected =
            p("2*v + t^4 + t^3 + 1/2*t^2*v - 2*t^2 - 1/2*t*v - 1/16*v^2 - t^6 + t");
        assert!(pc.full.eq_up_to_constant(&expected));
        assert_eq!(pc.vertical, MultiPoly::one());
    }
}
