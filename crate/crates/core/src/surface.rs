//! Rational parametric surfaces: projectability detection and the
//! ruled-surface reparametrization into projectable form.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::{gcd, MultiPoly};
use crate::rat::Rat;

/// A reduced quotient of two polynomials, `denom` not identically zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    numer: MultiPoly,
    denom: MultiPoly,
}

impl RationalFunction {
    pub fn new(numer: MultiPoly, denom: MultiPoly) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::ZeroPolynomial("rational function denominator"));
        }
        let g = gcd(&numer, &denom);
        let numer = numer.exact_divide(&g)?;
        let denom = denom.exact_divide(&g)?;
        // canonical constant scale: denominator in normalized form
        let d_norm = denom.normalized();
        let factor = denom.leading_coeff_grlex() / d_norm.leading_coeff_grlex();
        let numer = numer.scale(&factor.recip());
        Ok(RationalFunction {
            numer,
            denom: d_norm,
        })
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RationalFunction {
            numer: p,
            denom: MultiPoly::one(),
        }
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.numer
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.denom
    }

    pub fn involves(&self, var: &str) -> bool {
        self.numer.involves(var) || self.denom.involves(var)
    }

    pub fn eval(&self, assignment: &BTreeMap<String, Rat>) -> Result<Rat> {
        let d = self.denom.eval(assignment)?;
        if d == Rat::from_integer(0.into()) {
            return Err(Error::ParameterPole(format!(
                "denominator {} vanishes",
                self.denom
            )));
        }
        Ok(self.numer.eval(assignment)? / d)
    }

    pub fn add(&self, other: &Self) -> Self {
        let numer = self
            .numer
            .mul(&other.denom)
            .add(&other.numer.mul(&self.denom));
        RationalFunction::new(numer, self.denom.mul(&other.denom)).expect("nonzero denom")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&RationalFunction {
            numer: other.numer.neg(),
            denom: other.denom.clone(),
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalFunction::new(self.numer.mul(&other.numer), self.denom.mul(&other.denom))
            .expect("nonzero denom")
    }

    /// Substitute a rational function for one variable, returning the reduced
    /// quotient.
    pub fn substitute(&self, var: &str, value: &RationalFunction) -> Result<Self> {
        let dn = self.numer.degree(var);
        let dd = self.denom.degree(var);
        let num = self
            .numer
            .compose_rational(&[(var.to_string(), value.numer.clone(), value.denom.clone())])?;
        let den = self
            .denom
            .compose_rational(&[(var.to_string(), value.numer.clone(), value.denom.clone())])?;
        // the compose cleared value.denom^deg on each side; rebalance
        let (num, den) = if dn >= dd {
            (num, den.mul(&value.denom.pow(dn - dd)))
        } else {
            (num.mul(&value.denom.pow(dd - dn)), den)
        };
        RationalFunction::new(num, den)
    }

    /// Partial derivative as a rational function.
    pub fn derivative(&self, var: &str) -> Self {
        let num = self
            .numer
            .derivative(var)
            .mul(&self.denom)
            .sub(&self.numer.mul(&self.denom.derivative(var)));
        RationalFunction::new(num, self.denom.mul(&self.denom)).expect("nonzero denom")
    }
}

/// `(x,y,z) = S(u,s)` with rational-function coordinates in two parameters.
#[derive(Clone, Debug)]
pub struct RationalSurface {
    pub params: [String; 2],
    pub coords: [RationalFunction; 3],
}

pub const COORD_NAMES: [&str; 3] = ["x", "y", "z"];

impl RationalSurface {
    pub fn new(params: [String; 2], coords: [RationalFunction; 3]) -> Self {
        RationalSurface { params, coords }
    }

    pub fn eval(&self, p0: &Rat, p1: &Rat) -> Result<[Rat; 3]> {
        let mut asn = BTreeMap::new();
        asn.insert(self.params[0].clone(), p0.clone());
        asn.insert(self.params[1].clone(), p1.clone());
        Ok([
            self.coords[0].eval(&asn)?,
            self.coords[1].eval(&asn)?,
            self.coords[2].eval(&asn)?,
        ])
    }

    /// True iff the z-coordinate is free of the first parameter, i.e. the
    /// surface is already in projectable form for the declared ordering.
    pub fn is_projectable(&self) -> bool {
        !self.coords[2].involves(&self.params[0])
    }

    /// Search all coordinate/parameter role assignments for a projectable
    /// form: some coordinate must depend on one parameter only, while the
    /// other two coordinates involve the remaining (fiber) parameter.
    pub fn projectable_form(&self) -> Result<ProjectableSurface> {
        // prefer the declared convention (z free of the first parameter)
        let mut candidates: Vec<(usize, usize)> = Vec::new();
        for coord in [2usize, 0, 1] {
            for fiber in [0usize, 1] {
                candidates.push((coord, fiber));
            }
        }
        for (coord, fiber) in candidates {
            if self.coords[coord].involves(&self.params[fiber]) {
                continue;
            }
            let others: Vec<usize> = (0..3).filter(|&i| i != coord).collect();
            if others
                .iter()
                .any(|&i| self.coords[i].involves(&self.params[fiber]))
            {
                return Ok(ProjectableSurface {
                    surface: self.clone(),
                    special_coord: coord,
                    fiber_param: fiber,
                });
            }
        }
        Err(Error::NotProjectable)
    }
}

/// A rational surface together with the role assignment that makes it
/// projectable: `special_coord` depends only on the non-fiber parameter.
#[derive(Clone, Debug)]
pub struct ProjectableSurface {
    pub surface: RationalSurface,
    /// Index of the coordinate free of the fiber parameter.
    pub special_coord: usize,
    /// Index (0 or 1) of the parameter eliminated by the first resultant.
    pub fiber_param: usize,
}

impl ProjectableSurface {
    pub fn fiber_param_name(&self) -> &str {
        &self.surface.params[self.fiber_param]
    }

    pub fn other_param_name(&self) -> &str {
        &self.surface.params[1 - self.fiber_param]
    }
}

/// Ruled surface in the nine-coefficient form
/// `((a0+a1 s)/d1, (b0+b1 s)/d2, (c0+c1 s)/d3)` with all coefficients in `u`.
#[derive(Clone, Debug)]
pub struct RuledSurface {
    pub u: String,
    pub s: String,
    /// [(a0,a1,d1), (b0,b1,d2), (c0,c1,d3)]
    pub coeffs: [(MultiPoly, MultiPoly, MultiPoly); 3],
}

/// Invertible rational change of surface parameters, with its inverse.
#[derive(Clone, Debug)]
pub struct BirationalMap {
    pub old_params: [String; 2],
    pub new_params: [String; 2],
    /// (u,s) -> (u_new, s_new)
    pub forward: [RationalFunction; 2],
    /// (u_new, s_new) -> (u, s)
    pub inverse: [RationalFunction; 2],
}

impl RuledSurface {
    pub fn to_surface(&self) -> Result<RationalSurface> {
        let s = MultiPoly::var(&self.s);
        let mut coords = Vec::new();
        for (c0, c1, d) in &self.coeffs {
            coords.push(RationalFunction::new(c0.add(&c1.mul(&s)), d.clone())?);
        }
        Ok(RationalSurface::new(
            [self.u.clone(), self.s.clone()],
            [coords[0].clone(), coords[1].clone(), coords[2].clone()],
        ))
    }

    /// Birational reparametrization into projectable form: pick a coordinate
    /// whose ruling coefficient is not identically zero (z preferred), set
    /// the new second parameter to that coordinate and substitute back.
    pub fn reparametrize(&self) -> Result<(ProjectableSurface, BirationalMap)> {
        let k = [2usize, 0, 1]
            .into_iter()
            .find(|&k| !self.coeffs[k].1.is_zero())
            .ok_or(Error::DegenerateRuledSurface)?;
        let (c0, c1, d3) = &self.coeffs[k];

        let surface = self.to_surface()?;
        let u = self.u.clone();
        let s = self.s.clone();
        // fresh parameter names
        let ub = format!("{u}_n");
        let sb = format!("{s}_n");

        let s_poly = MultiPoly::var(&s);
        let sb_poly = MultiPoly::var(&sb);
        // forward: s_new = (c0 + c1 s)/d3, u_new = u
        let forward_s = RationalFunction::new(c0.add(&c1.mul(&s_poly)), d3.clone())?;
        let forward_u = RationalFunction::from_poly(MultiPoly::var(&u));
        // inverse: s = (d3 s_new - c0)/c1, u = u_new  (in new-parameter names)
        let subst = |p: &MultiPoly, from: &str, to: &str| p.substitute(from, &MultiPoly::var(to));
        let inv_num = subst(&d3.mul(&sb_poly).sub(c0), &u, &ub);
        let inv_den = subst(c1, &u, &ub);
        let inverse_s = RationalFunction::new(inv_num, inv_den)?;
        let inverse_u = RationalFunction::from_poly(MultiPoly::var(&ub));

        // substitute the inverse into each coordinate
        let mut new_coords = Vec::new();
        for c in &surface.coords {
            let renamed = RationalFunction::new(
                subst(c.numer(), &u, &ub),
                subst(c.denom(), &u, &ub),
            )?;
            new_coords.push(renamed.substitute(&s, &inverse_s)?);
        }
        let new_surface = RationalSurface::new(
            [ub.clone(), sb.clone()],
            [
                new_coords[0].clone(),
                new_coords[1].clone(),
                new_coords[2].clone(),
            ],
        );
        // the chosen coordinate is now exactly s_new
        debug_assert_eq!(
            new_surface.coords[k],
            RationalFunction::from_poly(MultiPoly::var(&sb))
        );
        let map = BirationalMap {
            old_params: [u, s],
            new_params: [ub, sb],
            forward: [forward_u, forward_s],
            inverse: [inverse_u, inverse_s],
        };
        Ok((
            ProjectableSurface {
                surface: new_surface,
                special_coord: k,
                fiber_param: 0,
            },
            map,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::rat::rat_i;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    fn rf(n: &str, d: &str) -> RationalFunction {
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    fn hyperboloid_ruled() -> RationalSurface {
        // Example ruled surface: ((1-u^2-2su)/(1+u^2), (2u+s(1-u^2))/(1+u^2), s)
        RationalSurface::new(
            ["u".into(), "s".into()],
            [
                rf("1 - u^2 - 2*s*u", "1 + u^2"),
                rf("2*u + s*(1 - u^2)", "1 + u^2"),
                rf("s", "1"),
            ],
        )
    }

    #[test]
    fn projectable_detection() {
        let s1 = hyperboloid_ruled();
        assert!(s1.is_projectable());
        let pf = s1.projectable_form().unwrap();
        assert_eq!(pf.special_coord, 2);
        assert_eq!(pf.fiber_param, 0);

        // generic sphere-like: z depends on both parameters -> not projectable
        let sph = RationalSurface::new(
            ["u".into(), "s".into()],
            [
                rf("2*u", "1 + u^2 + s^2"),
                rf("2*s", "1 + u^2 + s^2"),
                rf("u^2 + s^2 - 1", "1 + u^2 + s^2"),
            ],
        );
        assert!(!sph.is_projectable());
        assert!(sph.projectable_form().is_err());
    }

    #[test]
    fn projectable_via_swap() {
        // z depends only on the FIRST parameter: ordering must be swapped
        let s = RationalSurface::new(
            ["v".into(), "t".into()],
            [
                rf("v", "1"),
                rf("(t - 1)*t - 1/4*v", "1"),
                rf("(t + 1)*(t - 1)*t", "1"),
            ],
        );
        // z free of v, x,y involve... z depends only on t (second), fine as-is
        let pf = s.projectable_form().unwrap();
        assert_eq!(pf.special_coord, 2);
        assert_eq!(pf.fiber_param, 0);

        // now a surface whose x depends on the second parameter only (tube
        // surface pattern): coordinate permutation required
        let s = RationalSurface::new(
            ["u".into(), "s".into()],
            [
                rf("s^3 + s", "1"),
                rf("s^2 + s^2*u^2 + u", "1 + u^2"),
                rf("1 - u^2 + 2*s + 2*s*u^2", "2*(1 + u^2)"),
            ],
        );
        let pf = s.projectable_form().unwrap();
        assert_eq!(pf.special_coord, 0);
        assert_eq!(pf.fiber_param, 0);
    }

    #[test]
    fn ruled_reparametrization_identity_like() {
        // c1 = 1, d3 = 1, c0 = 0: map is s_new = s
        let r = RuledSurface {
            u: "u".into(),
            s: "s".into(),
            coeffs: [
                (p("u"), p("1"), p("1")),
                (p("u^2"), p("u"), p("1")),
                (p("0"), p("1"), p("1")),
            ],
        };
        let (pf, map) = r.reparametrize().unwrap();
        assert_eq!(pf.special_coord, 2);
        assert_eq!(
            map.forward[1],
            RationalFunction::from_poly(MultiPoly::var("s"))
        );
        // surfaces agree at parameter samples under the map
        let orig = r.to_surface().unwrap();
        for (u, s) in [(1i64, 2i64), (-2, 3), (5, -1)] {
            let (u, s) = (rat_i(u), rat_i(s));
            let mut asn = BTreeMap::new();
            asn.insert("u".to_string(), u.clone());
            asn.insert("s".to_string(), s.clone());
            let un = map.forward[0].eval(&asn).unwrap();
            let sn = map.forward[1].eval(&asn).unwrap();
            assert_eq!(
                orig.eval(&u, &s).unwrap(),
                pf.surface.eval(&un, &sn).unwrap()
            );
        }
    }

    #[test]
    fn ruled_reparametrization_nontrivial() {
        // ((u+s)/1, (1+u*s)/1, 2s/1): z_new = s_new with s_new = 2s
        let r = RuledSurface {
            u: "u".into(),
            s: "s".into(),
            coeffs: [
                (p("u"), p("1"), p("1")),
                (p("1"), p("u"), p("1")),
                (p("0"), p("2"), p("1")),
            ],
        };
        let (pf, map) = r.reparametrize().unwrap();
        let orig = r.to_surface().unwrap();
        for (u, s) in [(0i64, 1i64), (3, 2), (-1, 4), (7, -2)] {
            let (u, s) = (rat_i(u), rat_i(s));
            let mut asn = BTreeMap::new();
            asn.insert("u".to_string(), u.clone());
            asn.insert("s".to_string(), s.clone());
            let un = map.forward[0].eval(&asn).unwrap();
            let sn = map.forward[1].eval(&asn).unwrap();
            assert_eq!(sn, &s * rat_i(2));
            assert_eq!(
                orig.eval(&u, &s).unwrap(),
                pf.surface.eval(&un, &sn).unwrap()
            );
            // inverse undoes forward
            let mut back = BTreeMap::new();
            back.insert(map.new_params[0].clone(), un);
            back.insert(map.new_params[1].clone(), sn);
            assert_eq!(map.inverse[0].eval(&back).unwrap(), u);
            assert_eq!(map.inverse[1].eval(&back).unwrap(), s);
        }
    }

    #[test]
    fn degenerate_ruled_rejected() {
        let r = RuledSurface {
            u: "u".into(),
            s: "s".into(),
            coeffs: [
                (p("u"), p("0"), p("1")),
                (p("u^2"), p("0"), p("1")),
                (p("1"), p("0"), p("1")),
            ],
        };
        assert!(matches!(
            r.reparametrize(),
            Err(Error::DegenerateRuledSurface)
        ));
    }
}
