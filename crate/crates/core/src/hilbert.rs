//! Hilbert functions over explicit degree windows.

use serde::Serialize;

use crate::error::AlgebraError;
use crate::poly::Polynomial;
use crate::ring::Quotient;

/// Exact dimensions of graded pieces over a finite degree window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertFunction {
    pub lo: u32,
    pub hi: u32,
    pub values: Vec<usize>,
}

impl HilbertFunction {
    pub fn value(&self, deg: u32) -> Option<usize> {
        if deg < self.lo || deg > self.hi {
            return None;
        }
        Some(self.values[(deg - self.lo) as usize])
    }
}

/// Hilbert function of `ring/(gens)` over `lo..=hi`, by standard-monomial
/// counting against the initial ideal (dimensions do not depend on the term
/// order).
pub fn hilbert_function(
    ring: &Quotient,
    gens: &[Polynomial],
    lo: u32,
    hi: u32,
) -> Result<HilbertFunction, AlgebraError> {
    for g in gens {
        if !g.is_homogeneous() {
            return Err(AlgebraError::NonHomogeneous(format!("{}", g)));
        }
    }
    let q = ring.extend(gens);
    let values = (lo..=hi).map(|j| q.dim(j)).collect();
    Ok(HilbertFunction { lo, hi, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::VarSet;
    use crate::parse::parse_polynomial;

    fn tp(text: &str, vars: VarSet) -> Polynomial {
        parse_polynomial(text, vars).unwrap()
    }

    #[test]
    fn veronese_square_zero_ideal() {
        // Degree-2j monomials in two variables: 2j + 1 of them.
        let t = VarSet::t(3);
        let a = Quotient::new(t, &[tp("t2^2 - t1*t3", t)]);
        let hf = hilbert_function(&a, &[], 0, 3).unwrap();
        assert_eq!(hf.values, vec![1, 3, 5, 7]);
    }

    #[test]
    fn hypersurface_in_two_vars() {
        let r = Quotient::free(VarSet::x(2));
        let hf = hilbert_function(&r, &[tp("x1", r.vars)], 0, 2).unwrap();
        assert_eq!(hf.values, vec![1, 1, 1]);
    }

    #[test]
    fn veronese_modulo_two_variables() {
        // R^(2)/(t1, t3): spanned by 1 and t2, and t2^2 = t1 t3 vanishes.
        let t = VarSet::t(3);
        let a = Quotient::new(t, &[tp("t2^2 - t1*t3", t)]);
        let hf = hilbert_function(&a, &[tp("t1", t), tp("t3", t)], 0, 2).unwrap();
        assert_eq!(hf.values, vec![1, 1, 0]);
    }

    #[test]
    fn order_independent_dimensions() {
        // Hilbert function of the ideal equals that of its initial ideal.
        let r = Quotient::free(VarSet::x(2));
        let gens = [tp("x1^2 - x2^2", r.vars), tp("x1*x2", r.vars)];
        let hf = hilbert_function(&r, &gens, 0, 5).unwrap();
        let lms: Vec<Polynomial> = crate::groebner::initial_ideal(
            &gens,
            &crate::order::TermOrder::DegRevLex,
            None,
        )
        .into_iter()
        .map(|m| Polynomial::from_monomial(r.vars, m))
        .collect();
        let hf2 = hilbert_function(&r, &lms, 0, 5).unwrap();
        assert_eq!(hf, hf2);
    }
}
