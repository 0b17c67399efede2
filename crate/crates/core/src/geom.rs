//! Rational boxes and exact segment predicates.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{rat_i, Rat};

/// Axis-aligned parameter rectangle `[va,vb] x [ta,tb]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BBox {
    pub va: Rat,
    pub vb: Rat,
    pub ta: Rat,
    pub tb: Rat,
}

impl BBox {
    pub fn new(va: Rat, vb: Rat, ta: Rat, tb: Rat) -> Result<Self> {
        if va >= vb || ta >= tb {
            return Err(Error::InvalidInput(
                "box must satisfy va < vb and ta < tb".into(),
            ));
        }
        Ok(BBox { va, vb, ta, tb })
    }
}

/// Sign of the signed area of triangle `(a, b, c)`.
pub fn orient2d(a: &[Rat; 2], b: &[Rat; 2], c: &[Rat; 2]) -> i8 {
    let det = (&b[0] - &a[0]) * (&c[1] - &a[1]) - (&b[1] - &a[1]) * (&c[0] - &a[0]);
    if det.is_zero() {
        0
    } else if det > rat_i(0) {
        1
    } else {
        -1
    }
}

fn on_segment(a: &[Rat; 2], b: &[Rat; 2], p: &[Rat; 2]) -> bool {
    // collinearity assumed; box test
    let (x0, x1) = if a[0] <= b[0] {
        (&a[0], &b[0])
    } else {
        (&b[0], &a[0])
    };
    let (y0, y1) = if a[1] <= b[1] {
        (&a[1], &b[1])
    } else {
        (&b[1], &a[1])
    };
    *x0 <= p[0] && p[0] <= *x1 && *y0 <= p[1] && p[1] <= *y1
}

/// Exact closed-segment intersection test in the plane.
pub fn segments_intersect_2d(a: &[Rat; 2], b: &[Rat; 2], c: &[Rat; 2], d: &[Rat; 2]) -> bool {
    let o1 = orient2d(a, b, c);
    let o2 = orient2d(a, b, d);
    let o3 = orient2d(c, d, a);
    let o4 = orient2d(c, d, b);
    if o1 != o2 && o3 != o4 {
        return true;
    }
    (o1 == 0 && on_segment(a, b, c))
        || (o2 == 0 && on_segment(a, b, d))
        || (o3 == 0 && on_segment(c, d, a))
        || (o4 == 0 && on_segment(c, d, b))
}

/// Exact intersection of closed 3D segments `[p1,q1]` and `[p2,q2]`, with
/// shared endpoints ignored (adjacent polyline segments always touch).
pub fn segments_cross_3d(p1: &[Rat; 3], q1: &[Rat; 3], p2: &[Rat; 3], q2: &[Rat; 3]) -> bool {
    // s in [0,1], u in [0,1]: p1 + s(q1-p1) = p2 + u(q2-p2)
    let d1: Vec<Rat> = (0..3).map(|i| &q1[i] - &p1[i]).collect();
    let d2: Vec<Rat> = (0..3).map(|i| &q2[i] - &p2[i]).collect();
    let w: Vec<Rat> = (0..3).map(|i| &p2[i] - &p1[i]).collect();

    // solve the overdetermined 3x2 system exactly via two independent rows
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let det = &d1[i] * &d2[j] - &d1[j] * &d2[i];
        if det.is_zero() {
            continue;
        }
        let s = (&w[i] * &d2[j] - &w[j] * &d2[i]) / &det;
        let u = (&w[i] * &d1[j] - &w[j] * &d1[i]) / &det;
        if s < rat_i(0) || s > rat_i(1) || u < rat_i(0) || u > rat_i(1) {
            return false;
        }
        // consistency on the third coordinate
        let k = 3 - i - j;
        if &d1[k] * &s - &d2[k] * &u != w[k] {
            return false;
        }
        // touching only at shared endpoints does not count
        let endpoint1 = s == rat_i(0) || s == rat_i(1);
        let endpoint2 = u == rat_i(0) || u == rat_i(1);
        if endpoint1 && endpoint2 {
            let a = if s == rat_i(0) { p1 } else { q1 };
            let b = if u == rat_i(0) { p2 } else { q2 };
            return a != b;
        }
        return true;
    }
    // direction vectors parallel (all 2x2 minors zero): collinear overlap?
    let cross_zero = (0..3).all(|i| {
        let j = (i + 1) % 3;
        (&d1[i] * &w[j] - &d1[j] * &w[i]).is_zero()
    });
    if !cross_zero || d1.iter().all(|c| c.is_zero()) {
        return false;
    }
    // collinear: project on the dominant axis and compare ranges
    let axis = (0..3)
        .max_by(|&i, &j| d1[i].clone().abs().cmp(&d1[j].clone().abs()))
        .unwrap();
    let (mut a0, mut a1) = (p1[axis].clone(), q1[axis].clone());
    if a0 > a1 {
        std::mem::swap(&mut a0, &mut a1);
    }
    let (mut b0, mut b1) = (p2[axis].clone(), q2[axis].clone());
    if b0 > b1 {
        std::mem::swap(&mut b0, &mut b1);
    }
    let lo = a0.max(b0);
    let hi = a1.min(b1);
    lo < hi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn p2(x: i64, y: i64) -> [Rat; 2] {
        [rat_i(x), rat_i(y)]
    }

    fn p3(x: i64, y: i64, z: i64) -> [Rat; 3] {
        [rat_i(x), rat_i(y), rat_i(z)]
    }

    #[test]
    fn orientation() {
        assert_eq!(orient2d(&p2(0, 0), &p2(1, 0), &p2(0, 1)), 1);
        assert_eq!(orient2d(&p2(0, 0), &p2(1, 0), &p2(0, -1)), -1);
        assert_eq!(orient2d(&p2(0, 0), &p2(1, 1), &p2(2, 2)), 0);
    }

    #[test]
    fn segment_tests_2d() {
        assert!(segments_intersect_2d(
            &p2(0, 0),
            &p2(2, 2),
            &p2(0, 2),
            &p2(2, 0)
        ));
        assert!(!segments_intersect_2d(
            &p2(0, 0),
            &p2(1, 1),
            &p2(2, 2),
            &p2(3, 2)
        ));
        // touching at an endpoint counts as intersecting in 2d
        assert!(segments_intersect_2d(
            &p2(0, 0),
            &p2(1, 1),
            &p2(1, 1),
            &p2(2, 0)
        ));
    }

    #[test]
    fn segment_tests_3d() {
        // proper crossing in a plane embedded in space
        assert!(segments_cross_3d(
            &p3(0, 0, 0),
            &p3(2, 2, 2),
            &p3(0, 2, 0),
            &p3(2, 0, 2)
        ));
        // skew segments
        assert!(!segments_cross_3d(
            &p3(0, 0, 0),
            &p3(1, 0, 0),
            &p3(0, 1, 1),
            &p3(1, 1, 1)
        ));
        // shared endpoint does not count
        assert!(!segments_cross_3d(
            &p3(0, 0, 0),
            &p3(1, 1, 1),
            &p3(1, 1, 1),
            &p3(2, 0, 0)
        ));
        // collinear overlap does count
        assert!(segments_cross_3d(
            &p3(0, 0, 0),
            &p3(2, 2, 2),
            &p3(1, 1, 1),
            &p3(3, 3, 3)
        ));
        // crossing through an interior point of one segment
        assert!(segments_cross_3d(
            &p3(0, 0, 0),
            &p3(2, 0, 0),
            &p3(1, -1, 0),
            &p3(1, 1, 0)
        ));
    }

    #[test]
    fn bbox_validation() {
        assert!(BBox::new(rat_i(0), rat_i(1), rat_i(0), rat_i(1)).is_ok());
        assert!(BBox::new(rat_i(1), rat_i(0), rat_i(0), rat_i(1)).is_err());
        assert!(BBox::new(rat(1, 2), rat(1, 2), rat_i(0), rat_i(1)).is_err());
    }
}
