//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! `MultiPoly` is the universal carrier for every symbolic object in the
//! pipeline: surface coordinate numerators and denominators, the implicit
//! equation `F`, the plane curve `G`, discriminant products, eliminants.
//!
//! Invariants: no zero coefficient is ever stored, the variable list is
//! sorted and contains only variables that actually occur, and exponent
//! vectors all have the length of the variable list. Equality is structural.

mod gcd;
mod parse;
mod resultant;

pub use gcd::{content_primitive, gcd, gcd_many, squarefree_part};
pub use parse::parse_poly;
pub use resultant::resultant;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::Rat;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rat>,
}

/// Graded-lex: higher total degree first, ties broken lexicographically on
/// the exponent vector (first variable strongest).
pub fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn constant_i(c: i64) -> Self {
        Self::constant(Rat::from_integer(BigInt::from(c)))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], Rat::one());
        MultiPoly {
            vars: vec![name.to_string()],
            terms,
        }
    }

    /// Build from raw (variables, exponent-vector -> coefficient) data.
    pub fn from_terms(vars: Vec<String>, terms: BTreeMap<Vec<u32>, Rat>) -> Self {
        let mut p = MultiPoly { vars, terms };
        p.normalize();
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rat> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    fn normalize(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        // prune unused variables
        let n = self.vars.len();
        let mut used = vec![false; n];
        for m in self.terms.keys() {
            debug_assert_eq!(m.len(), n);
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        if used.iter().all(|&u| u) && self.vars.windows(2).all(|w| w[0] < w[1]) {
            return;
        }
        let keep: Vec<usize> = (0..n).filter(|&i| used[i]).collect();
        let new_vars: Vec<String> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        // also enforce sorted variable order
        let mut order: Vec<usize> = (0..new_vars.len()).collect();
        order.sort_by(|&a, &b| new_vars[a].cmp(&new_vars[b]));
        let sorted_vars: Vec<String> = order.iter().map(|&i| new_vars[i].clone()).collect();
        let mut new_terms = BTreeMap::new();
        for (m, c) in std::mem::take(&mut self.terms) {
            let picked: Vec<u32> = keep.iter().map(|&i| m[i]).collect();
            let reordered: Vec<u32> = order.iter().map(|&i| picked[i]).collect();
            new_terms.insert(reordered, c);
        }
        self.vars = sorted_vars;
        self.terms = new_terms;
    }

    /// Re-index onto a superset variable list (must be sorted, containing
    /// every current variable).
    pub fn with_vars(&self, vars: &[String]) -> Self {
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("superset vars"))
            .collect();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0u32; vars.len()];
            for (i, &ei) in m.iter().enumerate() {
                e[idx[i]] = ei;
            }
            terms.insert(e, c.clone());
        }
        MultiPoly {
            vars: vars.to_vec(),
            terms,
        }
    }

    pub fn unify(a: &MultiPoly, b: &MultiPoly) -> (Vec<String>, MultiPoly, MultiPoly) {
        let mut set: BTreeSet<String> = a.vars.iter().cloned().collect();
        set.extend(b.vars.iter().cloned());
        let vars: Vec<String> = set.into_iter().collect();
        (vars.clone(), a.with_vars(&vars), b.with_vars(&vars))
    }

    pub fn degree(&self, var: &str) -> u32 {
        match self.vars.iter().position(|v| v == var) {
            None => 0,
            Some(i) => self.terms.keys().map(|m| m[i]).max().unwrap_or(0),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn involves(&self, var: &str) -> bool {
        self.degree(var) > 0
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), -c.clone()))
            .collect();
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn add(&self, other: &MultiPoly) -> Self {
        let (vars, a, b) = Self::unify(self, other);
        let mut terms = a.terms;
        for (m, c) in b.terms {
            let entry = terms.entry(m).or_insert_with(Rat::zero);
            *entry += c;
        }
        MultiPoly::from_terms(vars, terms)
    }

    pub fn sub(&self, other: &MultiPoly) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> Self {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero();
        }
        let (vars, a, b) = Self::unify(self, other);
        let mut terms: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                let entry = terms.entry(m).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        MultiPoly::from_terms(vars, terms)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, k)| (m.clone(), k * c))
            .collect();
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = MultiPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                out = out.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    pub fn derivative(&self, var: &str) -> Self {
        let Some(i) = self.vars.iter().position(|v| v == var) else {
            return MultiPoly::zero();
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut e = m.clone();
            let k = e[i];
            e[i] -= 1;
            terms.insert(e, c * Rat::from_integer(BigInt::from(k)));
        }
        MultiPoly::from_terms(self.vars.clone(), terms)
    }

    /// Substitute an exact rational for one variable.
    pub fn subst_rat(&self, var: &str, value: &Rat) -> Self {
        let Some(i) = self.vars.iter().position(|v| v == var) else {
            return self.clone();
        };
        let max_e = self.terms.keys().map(|m| m[i]).max().unwrap_or(0);
        let mut powers = Vec::with_capacity(max_e as usize + 1);
        powers.push(Rat::one());
        for k in 1..=max_e {
            powers.push(&powers[k as usize - 1] * value);
        }
        let mut terms: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = m.clone();
            let k = e.remove(i);
            let entry = terms.entry(e).or_insert_with(Rat::zero);
            *entry += c * &powers[k as usize];
        }
        let mut vars = self.vars.clone();
        vars.remove(i);
        MultiPoly::from_terms(vars, terms)
    }

    /// Substitute a polynomial for one variable.
    pub fn substitute(&self, var: &str, value: &MultiPoly) -> Self {
        let Some(i) = self.vars.iter().position(|v| v == var) else {
            return self.clone();
        };
        let max_e = self.terms.keys().map(|m| m[i]).max().unwrap_or(0);
        let mut powers: Vec<MultiPoly> = Vec::with_capacity(max_e as usize + 1);
        powers.push(MultiPoly::one());
        for k in 1..=max_e as usize {
            powers.push(powers[k - 1].mul(value));
        }
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut e = m.clone();
            let k = e.remove(i);
            let mut vars = self.vars.clone();
            vars.remove(i);
            let base = MultiPoly::from_terms(vars, BTreeMap::from([(e, c.clone())]));
            out = out.add(&base.mul(&powers[k as usize]));
        }
        out
    }

    /// Evaluate at a full rational assignment (every variable must be given).
    pub fn eval(&self, assignment: &BTreeMap<String, Rat>) -> Result<Rat> {
        let mut p = self.clone();
        for v in self.vars.clone() {
            let val = assignment
                .get(&v)
                .ok_or_else(|| Error::InvalidInput(format!("missing assignment for {v}")))?;
            p = p.subst_rat(&v, val);
        }
        p.as_constant()
            .ok_or_else(|| Error::Internal("evaluation left free variables".into()))
    }

    /// Dense coefficient list in `var`, ascending powers; coefficients are
    /// polynomials in the remaining variables.
    pub fn as_univariate(&self, var: &str) -> Vec<MultiPoly> {
        let Some(i) = self.vars.iter().position(|v| v == var) else {
            return vec![self.clone()];
        };
        let deg = self.terms.keys().map(|m| m[i]).max().unwrap_or(0) as usize;
        let mut vars = self.vars.clone();
        vars.remove(i);
        let mut coeffs: Vec<BTreeMap<Vec<u32>, Rat>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let mut e = m.clone();
            let k = e.remove(i) as usize;
            coeffs[k].insert(e, c.clone());
        }
        coeffs
            .into_iter()
            .map(|t| MultiPoly::from_terms(vars.clone(), t))
            .collect()
    }

    /// Rebuild from a dense coefficient list in `var` (ascending powers).
    pub fn from_univariate(coeffs: &[MultiPoly], var: &str) -> Self {
        let x = MultiPoly::var(var);
        let mut out = MultiPoly::zero();
        let mut xp = MultiPoly::one();
        for (k, c) in coeffs.iter().enumerate() {
            if k > 0 {
                xp = xp.mul(&x);
            }
            out = out.add(&c.mul(&xp));
        }
        out
    }

    pub fn leading_coeff(&self, var: &str) -> MultiPoly {
        let coeffs = self.as_univariate(var);
        coeffs.last().cloned().unwrap_or_else(MultiPoly::zero)
    }

    /// Leading term under graded-lex.
    pub fn leading_term_grlex(&self) -> Option<(Vec<u32>, Rat)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| grlex_cmp(a, b))
            .map(|(m, c)| (m.clone(), c.clone()))
    }

    pub fn leading_coeff_grlex(&self) -> Rat {
        self.leading_term_grlex()
            .map(|(_, c)| c)
            .unwrap_or_else(Rat::zero)
    }

    /// Canonical representative up to a nonzero rational constant: integer
    /// coefficients with content 1 and a positive graded-lex leading
    /// coefficient.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return MultiPoly::zero();
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&scaled);
        }
        let mut factor = Rat::new(den_lcm, num_gcd);
        if self.leading_coeff_grlex().is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Equality up to a nonzero rational constant multiple.
    pub fn eq_up_to_constant(&self, other: &MultiPoly) -> bool {
        self.normalized() == other.normalized()
    }

    /// Quotient of an exact division; errors if the remainder is nonzero.
    pub fn exact_divide(&self, divisor: &MultiPoly) -> Result<MultiPoly> {
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial("division by zero polynomial"));
        }
        if self.is_zero() {
            return Ok(MultiPoly::zero());
        }
        if let Some(c) = divisor.as_constant() {
            return Ok(self.scale(&(Rat::one() / c)));
        }
        let (vars, mut rem, q) = Self::unify(self, divisor);
        let (qm, qc) = q.leading_term_grlex().unwrap();
        let mut quot: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        while !rem.is_zero() {
            if rem.vars != vars {
                rem = rem.with_vars(&vars);
            }
            let (rm, rc) = rem.leading_term_grlex().unwrap();
            let mut diff = Vec::with_capacity(rm.len());
            for (a, b) in rm.iter().zip(&qm) {
                if a < b {
                    return Err(Error::NotDivisible);
                }
                diff.push(a - b);
            }
            let c = &rc / &qc;
            let t = MultiPoly::from_terms(
                vars.clone(),
                BTreeMap::from([(diff.clone(), c.clone())]),
            );
            rem = rem.sub(&t.mul(&q));
            let entry = quot.entry(diff).or_insert_with(Rat::zero);
            *entry += c;
        }
        Ok(MultiPoly::from_terms(vars, quot))
    }

    /// Numerator of `self` composed with rational functions: each variable in
    /// `subs` is replaced by `numer/denom` and the common denominator is
    /// cleared.  Returns the resulting numerator polynomial.
    pub fn compose_rational(&self, subs: &[(String, MultiPoly, MultiPoly)]) -> Result<MultiPoly> {
        let mut out = self.clone();
        for (var, numer, denom) in subs {
            if denom.is_zero() {
                return Err(Error::ZeroPolynomial("zero denominator in substitution"));
            }
            if !out.involves(var) {
                continue;
            }
            let d = out.degree(var) as usize;
            let coeffs = out.as_univariate(var);
            // sum c_k * numer^k * denom^(d-k)
            let mut npow: Vec<MultiPoly> = Vec::with_capacity(d + 1);
            let mut dpow: Vec<MultiPoly> = Vec::with_capacity(d + 1);
            npow.push(MultiPoly::one());
            dpow.push(MultiPoly::one());
            for k in 1..=d {
                npow.push(npow[k - 1].mul(numer));
                dpow.push(dpow[k - 1].mul(denom));
            }
            let mut acc = MultiPoly::zero();
            for (k, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                acc = acc.add(&c.mul(&npow[k]).mul(&dpow[d - k]));
            }
            out = acc;
        }
        Ok(out)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i};

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn arithmetic_basics() {
        let a = p("x^2 + 2*x*y + y^2");
        let b = p("x + y");
        assert_eq!(b.mul(&b), a);
        assert_eq!(a.sub(&a), MultiPoly::zero());
        assert!(a.add(&a.neg()).is_zero());
    }

    #[test]
    fn derivative_example() {
        // derivative(t*v^4 + 3*v^4, v) = 4*t*v^3 + 12*v^3
        let g = p("t*v^4 + 3*v^4");
        assert_eq!(g.derivative("v"), p("4*t*v^3 + 12*v^3"));
    }

    #[test]
    fn exact_divide_roundtrip() {
        let a = p("x^2 - y^2");
        let b = p("x - y");
        assert_eq!(a.exact_divide(&b).unwrap(), p("x + y"));
        assert!(p("x^2 + 1").exact_divide(&b).is_err());
        assert!(a.exact_divide(&MultiPoly::zero()).is_err());
    }

    #[test]
    fn eval_and_subst() {
        let g = p("2*v + t^4 + t^3 + 1/2*t^2*v - 2*t^2 - 1/2*t*v - 1/16*v^2 - t^6 + t");
        let mut asn = BTreeMap::new();
        asn.insert("v".to_string(), rat_i(0));
        asn.insert("t".to_string(), rat_i(0));
        assert_eq!(g.eval(&asn).unwrap(), rat_i(0));
        asn.insert("t".to_string(), rat_i(1));
        assert_eq!(g.eval(&asn).unwrap(), rat_i(0));
        asn.insert("v".to_string(), rat_i(32));
        asn.insert("t".to_string(), rat_i(0));
        assert_eq!(g.eval(&asn).unwrap(), rat_i(0));
        asn.insert("t".to_string(), rat_i(1));
        assert_eq!(g.eval(&asn).unwrap(), rat_i(0));
    }

    #[test]
    fn compose_rational_circle() {
        // x^2 + y^2 - 1 with x = (1-u^2)/(1+u^2), y = 2u/(1+u^2) vanishes
        let f = p("x^2 + y^2 - 1");
        let num = f
            .compose_rational(&[
                ("x".into(), p("1 - u^2"), p("1 + u^2")),
                ("y".into(), p("2*u"), p("1 + u^2")),
            ])
            .unwrap();
        assert!(num.is_zero());
    }

    #[test]
    fn normalized_canonical() {
        let a = p("-z^2 + y^2 - 1 + x^2");
        let b = p("3*z^2 - 3*y^2 + 3 - 3*x^2");
        assert!(a.eq_up_to_constant(&b));
        let n = a.normalized();
        assert!(n.leading_coeff_grlex() > Rat::zero());
        assert_eq!(n, p("x^2 + y^2 - z^2 - 1"));
    }

    #[test]
    fn subst_rat_partial() {
        let g = p("t^2 - v");
        let h = g.subst_rat("v", &rat(1, 4));
        assert_eq!(h, p("t^2 - 1/4"));
    }
}
