//! Multivariate polynomials over the rationals.
//!
//! Coefficients are arbitrary-precision rationals kept in lowest terms with a
//! positive denominator (the representation `num_rational` maintains), so all
//! arithmetic is exact. Terms live in a `BTreeMap` keyed by exponent vector,
//! which makes iteration order deterministic independently of any term order.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;
use crate::monomial::{Monomial, VarSet};
use crate::order::TermOrder;

/// Exact rational scalar: arbitrary-precision numerator and positive
/// arbitrary-precision denominator, always reduced.
pub type Rational = num_rational::BigRational;

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A polynomial tagged with its variable set. Zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: VarSet,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(vars: VarSet) -> Self {
        Polynomial { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: VarSet) -> Self {
        Polynomial::constant(vars, Rational::one())
    }

    pub fn constant(vars: VarSet, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(vars.count), c);
        }
        Polynomial { vars, terms }
    }

    pub fn from_monomial(vars: VarSet, m: Monomial) -> Self {
        Polynomial::from_term(vars, m, Rational::one())
    }

    pub fn from_term(vars: VarSet, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), vars.count, "monomial length must match ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { vars, terms }
    }

    pub fn from_terms<I>(vars: VarSet, iter: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Polynomial::zero(vars);
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    /// The variable `x_i`/`t_i` (0-based) as a polynomial.
    pub fn variable(vars: VarSet, i: usize) -> Self {
        Polynomial::from_monomial(vars, Monomial::var(vars.count, i))
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.vars.count);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        Polynomial { vars: self.vars, terms }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.vars);
        }
        let terms = self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect();
        Polynomial { vars: self.vars, terms }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.vars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(mm, k)| (mm.mul(m), k * c))
            .collect();
        Polynomial { vars: self.vars, terms }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        self.mul_term(m, &Rational::one())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = Polynomial::zero(self.vars);
        for (m, c) in &self.terms {
            for (mm, cc) in &other.terms {
                out.add_term(m.mul(mm), c * cc);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(self.vars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Total degree when homogeneous; `None` for 0 or mixed-degree input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let first = it.next()?.degree();
        for m in it {
            if m.degree() != first {
                return None;
            }
        }
        Some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Maximum total degree of a term (0 for the zero polynomial).
    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// `Some(monomial)` when the polynomial is a single term with coefficient
    /// one after normalization, i.e. a monomial up to scaling.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        if self.terms.len() == 1 {
            self.terms.keys().next()
        } else {
            None
        }
    }

    /// Leading term under `order`.
    pub fn leading_term(&self, order: &TermOrder) -> Option<(&Monomial, &Rational)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp_unchecked(a, b))
    }

    pub fn leading_monomial(&self, order: &TermOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    /// Scales so the leading coefficient under `order` is one.
    pub fn monic(&self, order: &TermOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Clears denominators and content: the result has coprime integer
    /// coefficients and a positive leading coefficient under `order`.
    pub fn primitive_integer(&self, order: &TermOrder) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
        }
        let scaled: Vec<(Monomial, BigInt)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.numer() * (&denom_lcm / c.denom())))
            .collect();
        let mut content = BigInt::zero();
        for (_, c) in &scaled {
            content = num_integer::gcd(content, c.clone());
        }
        let mut out = Polynomial::zero(self.vars);
        for (m, c) in scaled {
            out.add_term(m, Rational::from_integer(c / &content));
        }
        if let Some((_, lc)) = out.leading_term(order) {
            if lc.is_negative() {
                return out.neg();
            }
        }
        out
    }

    /// Applies `var i -> images[i]`, mapping into the ring of the images.
    /// Images must all share one variable set.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.vars.count);
        let target = images
            .first()
            .map(|p| p.vars())
            .unwrap_or(self.vars);
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Reinterprets the exponent vectors through `map`: variable `i` of
    /// `self` becomes variable `map[i]` of the target set. Used to embed a
    /// ring into a joint ring and back.
    pub fn remap_vars(&self, target: VarSet, map: &[usize]) -> Polynomial {
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.count];
            for (i, &e) in m.exps().iter().enumerate() {
                exps[map[i]] += e;
            }
            out.add_term(Monomial::new(exps), c.clone());
        }
        out
    }

    pub fn check_ring(&self, vars: VarSet) -> Result<(), AlgebraError> {
        if self.vars != vars {
            return Err(AlgebraError::RingMismatch(format!(
                "expected {:?}, got {:?}",
                vars, self.vars
            )));
        }
        Ok(())
    }

    /// Canonical rendering: terms sorted degrevlex-descending.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let order = TermOrder::DegRevLex;
        let mut terms: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| order.cmp_unchecked(b, a));
        let mut out = String::new();
        for (i, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -(*c).clone() } else { (*c).clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_one = abs.is_one();
            if m.is_one() {
                out.push_str(&format!("{}", abs));
            } else if coeff_one {
                out.push_str(&m.render(&self.vars));
            } else {
                out.push_str(&format!("{}*{}", abs, m.render(&self.vars)));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::VarSet;

    fn xvars() -> VarSet {
        VarSet::x(2)
    }

    fn p(terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_terms(
            xvars(),
            terms
                .iter()
                .map(|(c, e)| (Monomial::new(e.to_vec()), rat_int(*c))),
        )
    }

    #[test]
    fn arithmetic_cancels_exactly() {
        let f = p(&[(1, &[2, 0]), (-1, &[0, 2])]);
        let g = p(&[(1, &[0, 2])]);
        let sum = f.add(&g);
        assert_eq!(sum, p(&[(1, &[2, 0])]));
        assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn multiplication_distributes() {
        let f = p(&[(1, &[1, 0]), (2, &[0, 1])]);
        let g = p(&[(3, &[1, 1]), (-1, &[0, 0])]);
        let h = p(&[(1, &[2, 0])]);
        let lhs = f.mul(&g.add(&h));
        let rhs = f.mul(&g).add(&f.mul(&h));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn homogeneity_detection() {
        assert_eq!(p(&[(1, &[2, 0]), (1, &[1, 1])]).homogeneous_degree(), Some(2));
        assert_eq!(p(&[(1, &[2, 0]), (1, &[1, 0])]).homogeneous_degree(), None);
        assert!(Polynomial::zero(xvars()).is_homogeneous());
    }

    #[test]
    fn leading_term_and_monic() {
        let order = TermOrder::DegRevLex;
        let f = p(&[(2, &[0, 2]), (3, &[1, 0])]); // 2 x2^2 + 3 x1
        let (lm, lc) = f.leading_term(&order).unwrap();
        assert_eq!(lm.exps(), &[0, 2]);
        assert_eq!(*lc, rat_int(2));
        let mf = f.monic(&order);
        assert_eq!(mf.coeff(&Monomial::new(vec![0, 2])), rat_int(1));
        assert_eq!(mf.coeff(&Monomial::new(vec![1, 0])), rat(3, 2));
    }

    #[test]
    fn substitution_is_ring_map() {
        // x1 -> t1 + t2, x2 -> t2 over a 2-variable t-ring.
        let t = VarSet::t(2);
        let images = vec![
            Polynomial::from_terms(
                t,
                [
                    (Monomial::var(2, 0), rat_int(1)),
                    (Monomial::var(2, 1), rat_int(1)),
                ],
            ),
            Polynomial::variable(t, 1),
        ];
        let f = p(&[(1, &[2, 0])]); // x1^2
        let g = f.substitute(&images);
        // (t1 + t2)^2 = t1^2 + 2 t1 t2 + t2^2
        assert_eq!(g.coeff(&Monomial::new(vec![2, 0])), rat_int(1));
        assert_eq!(g.coeff(&Monomial::new(vec![1, 1])), rat_int(2));
        assert_eq!(g.coeff(&Monomial::new(vec![0, 2])), rat_int(1));
    }

    #[test]
    fn render_roundtrip_shape() {
        let f = p(&[(3, &[2, 1]), (-1, &[0, 3])]).scale(&rat(1, 2));
        assert_eq!(f.render(), "3/2*x1^2*x2 - 1/2*x2^3");
    }
}
