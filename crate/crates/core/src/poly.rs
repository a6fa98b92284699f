//! Sparse multivariate polynomials with arbitrary-precision integer coefficients.
//!
//! A polynomial is a map from exponent vectors to nonzero coefficients over an
//! ordered list of named indeterminates. Terms are kept in a `BTreeMap` keyed by
//! [`Monomial`], whose ordering is graded lexicographic on the declared variable
//! order, so the canonical form is unique and printing is deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exponent vector, one entry per indeterminate of the owning ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// `self / other` when `other` divides `self` componentwise.
    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Box<[u32]>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    // graded lex: total degree first, then the first differing exponent
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of `Z[vars]`.
#[derive(Clone, Debug)]
pub struct Polynomial {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(vars: Arc<[String]>) -> Self {
        Polynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Arc<[String]>, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(vars.len()), c);
        }
        Polynomial { vars, terms }
    }

    /// The indeterminate at position `index` (0-based) of `vars`.
    pub fn variable(vars: Arc<[String]>, index: usize) -> Self {
        assert!(index < vars.len(), "variable index out of range");
        let mut exps = vec![0; vars.len()];
        exps[index] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::from_exponents(exps), BigInt::one());
        Polynomial { vars, terms }
    }

    /// Builds a canonical polynomial from arbitrary (monomial, coefficient)
    /// pairs; repeated monomials are summed and zero coefficients dropped.
    pub fn from_terms<I>(vars: Arc<[String]>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut map: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len(), "exponent vector length mismatch");
            *map.entry(m).or_default() += c;
        }
        map.retain(|_, c| !c.is_zero());
        Polynomial { vars, terms: map }
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// True when no stored coefficient is zero and every exponent vector has
    /// the ring's arity.
    pub fn is_canonical(&self) -> bool {
        self.terms
            .iter()
            .all(|(m, c)| !c.is_zero() && m.0.len() == self.vars.len())
    }

    pub fn same_ring(&self, other: &Polynomial) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), -c);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                add_term(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        Polynomial {
            vars: self.vars.clone(),
            terms,
        }
    }

    fn mul_term(&self, m: &Monomial, c: &BigInt) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` when the divisor does not
    /// divide `self` in `Z[vars]`. The divisor must be nonzero.
    ///
    /// Repeatedly cancels the leading term of the remainder. Over an integral
    /// domain `LT(q*b) = LT(q)*LT(b)`, so if any step fails no exact quotient
    /// exists.
    pub fn exact_divide(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm_b, lc_b) = divisor.leading_term()?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.vars.clone());
        while let Some((lm_r, lc_r)) = rem.leading_term() {
            let m = lm_r.checked_div(lm_b)?;
            let (c, r) = lc_r.div_rem(lc_b);
            if !r.is_zero() {
                return None;
            }
            rem = rem.sub(&divisor.mul_term(&m, &c));
            add_term(&mut quot.terms, m, c);
        }
        Some(quot)
    }
}

fn add_term(terms: &mut BTreeMap<Monomial, BigInt>, m: Monomial, c: BigInt) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut wrote = false;
            if !abs.is_one() || m.is_one() {
                write!(f, "{abs}")?;
                wrote = true;
            }
            for (var, &e) in self.vars.iter().zip(m.0.iter()) {
                if e == 0 {
                    continue;
                }
                if wrote {
                    f.write_str("*")?;
                }
                f.write_str(var)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(names: &[&str]) -> Arc<[String]> {
        names
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .into()
    }

    #[test]
    fn grlex_orders_by_degree_then_lex() {
        let a = Monomial::from_exponents(vec![0, 2]);
        let b = Monomial::from_exponents(vec![1, 0]);
        let c = Monomial::from_exponents(vec![1, 1]);
        let d = Monomial::from_exponents(vec![2, 0]);
        assert!(b < a);
        assert!(c < d);
        assert!(a < c);
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let v = ring(&["x", "y"]);
        let x = Polynomial::variable(v.clone(), 0);
        let y = Polynomial::variable(v.clone(), 1);
        let s = x.add(&y).add(&x.sub(&y));
        assert_eq!(s.num_terms(), 1);
        assert!(s.is_canonical());
        assert_eq!(s.to_string(), "2*x");
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn display_format() {
        let v = ring(&["x1_2", "x2_1", "x3_3"]);
        let p = Polynomial::from_terms(
            v.clone(),
            vec![
                (Monomial::from_exponents(vec![1, 2, 0]), BigInt::from(3)),
                (Monomial::from_exponents(vec![0, 0, 1]), BigInt::from(-1)),
            ],
        );
        assert_eq!(p.to_string(), "3*x1_2*x2_1^2 - x3_3");
        let q = Polynomial::from_terms(
            v.clone(),
            vec![
                (Monomial::from_exponents(vec![0, 0, 1]), BigInt::from(-1)),
                (Monomial::one(3), BigInt::from(-7)),
            ],
        );
        assert_eq!(q.to_string(), "-x3_3 - 7");
        assert_eq!(Polynomial::zero(v).to_string(), "0");
    }

    #[test]
    fn divides_difference_of_squares() {
        let v = ring(&["x"]);
        let x = Polynomial::variable(v.clone(), 0);
        let one = Polynomial::constant(v.clone(), BigInt::one());
        let num = x.mul(&x).sub(&one);
        let den = x.sub(&one);
        assert_eq!(num.exact_divide(&den), Some(x.add(&one)));
        assert_eq!(x.exact_divide(&x.add(&one)), None);
        let two = Polynomial::constant(v, BigInt::from(2));
        assert_eq!(x.exact_divide(&two), None);
    }

    #[test]
    fn zero_divisor_has_no_quotient() {
        let v = ring(&["x"]);
        let x = Polynomial::variable(v.clone(), 0);
        assert_eq!(x.exact_divide(&Polynomial::zero(v)), None);
    }

    #[test]
    fn equality_ignores_arc_identity() {
        let x1 = Polynomial::variable(ring(&["x", "y"]), 0);
        let x2 = Polynomial::variable(ring(&["x", "y"]), 0);
        assert_eq!(x1, x2);
        let x3 = Polynomial::variable(ring(&["x", "z"]), 0);
        assert_ne!(x1, x3);
    }
}
