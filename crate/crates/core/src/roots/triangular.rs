//! Solutions of triangular systems `{h(v) = 0, g(v,t) = 0}` inside a
//! rectangle, as certified isolating boxes.

use crate::error::Result;
use crate::poly::MultiPoly;
use crate::rat::Rat;

use super::algnum::{AlgebraicNumber, ParamPoly};
use super::{isolate_closed, IntPoly, RootInterval};

/// One solution: `v` algebraic, `t` isolated relative to `g(v, .)`.
#[derive(Clone, Debug)]
pub struct IsolatingBox {
    pub v: AlgebraicNumber,
    pub t: RootInterval,
}

impl IsolatingBox {
    pub fn v_mid(&self) -> Rat {
        self.v.interval.mid()
    }

    pub fn t_mid(&self) -> Rat {
        self.t.mid()
    }
}

/// Isolate every real solution of `{h(v)=0, g(v,t)=0}` with
/// `v in [va,vb]`, `t in [ta,tb]` (endpoint solutions included, reported
/// exactly when rational).  Errors with `NonZeroDimensional` if `g(alpha,.)`
/// vanishes identically at some root `alpha` of `h`.
pub fn isolate_triangular(
    h: &IntPoly,
    g: &MultiPoly,
    vvar: &str,
    tvar: &str,
    va: &Rat,
    vb: &Rat,
    ta: &Rat,
    tb: &Rat,
) -> Result<Vec<IsolatingBox>> {
    let sf = h.squarefree()?;
    let mut out = Vec::new();
    for vi in isolate_closed(&sf, va, vb)? {
        let mut alpha = AlgebraicNumber::new(sf.clone(), vi)?;
        let t_roots = {
            let mut pp = ParamPoly::new(&mut alpha, g, vvar, tvar)?;
            pp.isolate_roots_in(ta, tb)?
        };
        for t in t_roots {
            out.push(IsolatingBox {
                v: alpha.clone(),
                t,
            });
        }
    }
    Ok(out)
}

/// Shrink both sides of a box below `eps`.
pub fn refine_box(
    b: &mut IsolatingBox,
    g: &MultiPoly,
    vvar: &str,
    tvar: &str,
    eps: &Rat,
) -> Result<()> {
    b.v.refine_to_width(eps);
    let mut pp = ParamPoly::new(&mut b.v, g, vvar, tvar)?;
    b.t = pp.refine_root_to_width(&b.t, eps)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::rat::{rat, rat_i};

    fn ipv(s: &str) -> IntPoly {
        IntPoly::from_multipoly(&parse_poly(s).unwrap(), "v").unwrap()
    }

    #[test]
    fn circle_vertical_tangents() {
        // h = v^2 - 1 (critical columns of the unit circle), g = v^2 + t^2 - 1
        let h = ipv("v^2 - 1");
        let g = parse_poly("v^2 + t^2 - 1").unwrap();
        let sols =
            isolate_triangular(&h, &g, "v", "t", &rat_i(-2), &rat_i(2), &rat_i(-2), &rat_i(2))
                .unwrap();
        assert_eq!(sols.len(), 2);
        assert_eq!(sols[0].t, RootInterval::Exact(rat_i(0)));
        assert_eq!(sols[1].t, RootInterval::Exact(rat_i(0)));
        assert_eq!(sols[0].v.as_exact(), Some(rat_i(-1)));
        assert_eq!(sols[1].v.as_exact(), Some(rat_i(1)));
    }

    #[test]
    fn irrational_column_roots() {
        // h = v^2 - 2, g = t^2 - v: solutions (sqrt2, ±2^(1/4)) only
        let h = ipv("v^2 - 2");
        let g = parse_poly("t^2 - v").unwrap();
        let mut sols =
            isolate_triangular(&h, &g, "v", "t", &rat_i(-2), &rat_i(2), &rat_i(-2), &rat_i(2))
                .unwrap();
        assert_eq!(sols.len(), 2);
        for b in sols.iter_mut() {
            refine_box(b, &g, "v", "t", &rat(1, 1 << 12)).unwrap();
            assert!(b.t.width() <= rat(1, 1 << 12));
            assert!(b.v.interval.width() <= rat(1, 1 << 12));
        }
        // t values straddle ±2^(1/4)
        assert!(sols[0].t_mid() < rat_i(0) && sols[1].t_mid() > rat_i(0));
    }
}
