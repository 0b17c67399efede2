//! Rational interval arithmetic, used to evaluate coordinates of points
//! whose parameters are known only by isolating intervals, and to pick
//! small-denominator rationals out of tight intervals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::poly::MultiPoly;
use crate::rat::{rat_i, Rat};

/// Closed interval `[lo, hi]`, lo <= hi.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn point(r: Rat) -> Self {
        RatInterval {
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / rat_i(2)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn disjoint(&self, other: &RatInterval) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }

    pub fn add(&self, o: &RatInterval) -> Self {
        RatInterval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn neg(&self) -> Self {
        RatInterval::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn sub(&self, o: &RatInterval) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatInterval) -> Self {
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        RatInterval::new(lo, hi)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        self.mul(&RatInterval::point(c.clone()))
    }

    /// Reciprocal; caller must ensure the interval excludes zero.
    pub fn recip(&self) -> Self {
        debug_assert!(!self.contains_zero());
        RatInterval::new(self.hi.recip(), self.lo.recip())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = RatInterval::point(rat_i(1));
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }
}

/// Enclosure of `p` over a box of parameter intervals (term-wise; adequate
/// for the narrow boxes produced by root refinement).
pub fn eval_interval(p: &MultiPoly, asn: &BTreeMap<String, RatInterval>) -> RatInterval {
    let mut acc = RatInterval::point(rat_i(0));
    for (mono, coeff) in p.terms() {
        let mut term = RatInterval::point(coeff.clone());
        for (var, &e) in p.vars().iter().zip(mono.iter()) {
            if e == 0 {
                continue;
            }
            let iv = asn
                .get(var)
                .unwrap_or_else(|| panic!("missing interval for {var}"));
            term = term.mul(&iv.pow(e));
        }
        acc = acc.add(&term);
    }
    acc
}

/// The rational with the smallest denominator (smallest numerator on ties)
/// in the closed interval, by Stern-Brocot descent.
pub fn simplest_in(lo: &Rat, hi: &Rat) -> Rat {
    debug_assert!(lo <= hi);
    if lo == hi {
        return lo.clone();
    }
    if lo.is_negative() && !hi.is_negative() {
        return rat_i(0);
    }
    if hi.is_negative() {
        return -simplest_in(&-hi.clone(), &-lo.clone());
    }
    // 0 < lo < hi: walk the Stern-Brocot tree
    fn go(lo: &Rat, hi: &Rat) -> Rat {
        // integer part
        let fl = lo.floor();
        if &fl >= lo || fl.clone() + rat_i(1) <= *hi {
            // an integer lies in [lo, hi]
            return if &fl >= lo { fl } else { fl + rat_i(1) };
        }
        let frac = go(&(hi - &fl).recip(), &(lo - &fl).recip());
        fl + frac.recip()
    }
    go(lo, hi)
}

/// Render an interval's midpoint denominator-free when it is actually exact.
pub fn is_dyadic(r: &Rat) -> bool {
    let mut d: BigInt = r.denom().clone();
    while d.is_even() {
        d /= 2;
    }
    d.is_one()
}

use num_integer::Integer;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::rat::rat;

    #[test]
    fn arithmetic_and_eval() {
        let a = RatInterval::new(rat_i(1), rat_i(2));
        let b = RatInterval::new(rat_i(-1), rat_i(3));
        assert_eq!(a.mul(&b), RatInterval::new(rat_i(-2), rat_i(6)));
        assert!(b.contains_zero() && !a.contains_zero());

        let p = parse_poly("v^2 + t^2 - 1").unwrap();
        let mut asn = BTreeMap::new();
        asn.insert("v".to_string(), RatInterval::new(rat(1, 2), rat(3, 4)));
        asn.insert("t".to_string(), RatInterval::point(rat_i(0)));
        let e = eval_interval(&p, &asn);
        assert_eq!(e, RatInterval::new(rat(-3, 4), rat(-7, 16)));
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_in(&rat(2, 7), &rat(1, 3)), rat(1, 3));
        assert_eq!(simplest_in(&rat(-1, 10), &rat(1, 10)), rat_i(0));
        assert_eq!(simplest_in(&rat(5, 2), &rat(7, 2)), rat_i(3));
        assert_eq!(simplest_in(&rat(57, 100), &rat(58, 100)), rat(4, 7));
        assert_eq!(simplest_in(&rat(-58, 100), &rat(-57, 100)), rat(-4, 7));
        // tight interval around 1/3
        let e = rat(1, 1_000_000);
        assert_eq!(simplest_in(&(rat(1, 3) - &e), &(rat(1, 3) + &e)), rat(1, 3));
    }
}
