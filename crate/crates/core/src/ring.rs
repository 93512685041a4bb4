//! Graded quotient rings `P/(relations)` of a polynomial ring `P`, presented
//! by a reduced Groebner basis, with degreewise standard-monomial bases.
//!
//! One type covers every ring the engine touches: the ambient polynomial
//! rings (`relations` empty), the Veronese coordinate ring `S/Q`, and cyclic
//! quotients like `S/(Q + I)` used for Hilbert functions and homology.

use crate::error::AlgebraError;
use crate::groebner::{buchberger, GroebnerBasis};
use crate::matrix::{QMatrix, RowSpace};
use crate::monomial::{monomials_of_degree, Monomial, VarSet};
use crate::order::TermOrder;
use crate::poly::{Polynomial, Rational};

#[derive(Debug, Clone)]
pub struct Quotient {
    pub vars: VarSet,
    pub gb: GroebnerBasis,
}

impl Quotient {
    /// The free polynomial ring itself.
    pub fn free(vars: VarSet) -> Self {
        Quotient {
            vars,
            gb: GroebnerBasis { order: TermOrder::DegRevLex, gens: Vec::new(), quotient: None },
        }
    }

    /// Quotient by the ideal generated by `defining` (degrevlex basis).
    pub fn new(vars: VarSet, defining: &[Polynomial]) -> Self {
        let gb = buchberger(defining, &TermOrder::DegRevLex, None);
        Quotient { vars, gb }
    }

    /// Quotient by this ring's ideal plus `extra` generators.
    pub fn extend(&self, extra: &[Polynomial]) -> Self {
        if extra.iter().all(|g| g.is_zero()) {
            return self.clone();
        }
        let gb = buchberger(extra, &TermOrder::DegRevLex, Some(&self.gb.gens));
        Quotient { vars: self.vars, gb }
    }

    pub fn is_free(&self) -> bool {
        self.gb.gens.is_empty()
    }

    /// Canonical normal form of a residue class.
    pub fn nf(&self, f: &Polynomial) -> Polynomial {
        if self.gb.gens.is_empty() {
            f.clone()
        } else {
            self.gb.normal_form(f)
        }
    }

    pub fn is_zero(&self, f: &Polynomial) -> bool {
        self.nf(f).is_zero()
    }

    /// Standard monomials of total degree `deg`: those not divisible by any
    /// leading monomial of the defining basis. They form a K-basis of the
    /// degree-`deg` piece. Lex-descending, which fixes all coordinates.
    pub fn std_monomials(&self, deg: u32) -> Vec<Monomial> {
        let lms = self.gb.leading_monomials();
        monomials_of_degree(self.vars.count, deg)
            .into_iter()
            .filter(|m| !lms.iter().any(|lm| lm.divides(m)))
            .collect()
    }

    pub fn dim(&self, deg: u32) -> usize {
        self.std_monomials(deg).len()
    }

    /// Coordinates of (the normal form of) a homogeneous element in the
    /// standard-monomial basis of its degree.
    pub fn coords(&self, f: &Polynomial, deg: u32) -> Result<Vec<Rational>, AlgebraError> {
        let nf = self.nf(f);
        let basis = self.std_monomials(deg);
        let mut out = vec![Rational::from_integer(0.into()); basis.len()];
        for (m, c) in nf.terms() {
            if m.degree() != deg {
                return Err(AlgebraError::NonHomogeneous(format!(
                    "term of degree {} in a degree-{} coordinate computation",
                    m.degree(),
                    deg
                )));
            }
            let idx = basis
                .iter()
                .position(|b| b == m)
                .ok_or_else(|| AlgebraError::Internal("normal form not standard".into()))?;
            out[idx] = c.clone();
        }
        Ok(out)
    }

    pub fn from_coords(&self, deg: u32, coords: &[Rational]) -> Polynomial {
        let basis = self.std_monomials(deg);
        assert_eq!(basis.len(), coords.len());
        Polynomial::from_terms(
            self.vars,
            basis.into_iter().zip(coords.iter().cloned()),
        )
    }

    /// Matrix of multiplication by a homogeneous `f` from degree `from` to
    /// degree `from + deg(f)`, in standard-monomial coordinates (rows index
    /// the target basis, columns the source basis).
    pub fn mul_map(&self, f: &Polynomial, from: u32) -> Result<QMatrix, AlgebraError> {
        let fdeg = f.homogeneous_degree().ok_or_else(|| {
            AlgebraError::NonHomogeneous("multiplication map needs homogeneous input".into())
        })?;
        let source = self.std_monomials(from);
        let target_deg = from + fdeg;
        let target_dim = self.dim(target_deg);
        let mut m = QMatrix::zero(target_dim, source.len());
        for (col, u) in source.iter().enumerate() {
            let prod = self.nf(&f.mul_monomial(u));
            let coords = self.coords(&prod, target_deg)?;
            for (row, v) in coords.into_iter().enumerate() {
                m.set(row, col, v);
            }
        }
        Ok(m)
    }
}

/// Minimal homogeneous generators of the ideal `(gens)` in the quotient.
pub fn minimalize_ideal(
    ring: &Quotient,
    gens: &[Polynomial],
) -> Result<Vec<Polynomial>, AlgebraError> {
    let vectors: Vec<Vec<Polynomial>> = gens
        .iter()
        .map(|g| vec![ring.nf(g)])
        .filter(|v| !v[0].is_zero())
        .collect();
    let minimal = crate::syzygy::minimalize_generators(ring, &[0], vectors)?;
    Ok(minimal.into_iter().map(|mut v| v.pop().unwrap()).collect())
}

/// Generators of the ideal product `(a) * (b)` in the quotient, minimalized.
pub fn multiply_ideals(
    ring: &Quotient,
    a: &[Polynomial],
    b: &[Polynomial],
) -> Result<Vec<Polynomial>, AlgebraError> {
    let mut products = Vec::new();
    for f in a {
        for g in b {
            let p = ring.nf(&f.mul(g));
            if !p.is_zero() {
                products.push(p);
            }
        }
    }
    minimalize_ideal(ring, &products)
}

/// Ideal equality in the quotient, decided by comparing reduced Groebner
/// bases (canonical for a fixed order).
pub fn equal_ideals(ring: &Quotient, a: &[Polynomial], b: &[Polynomial]) -> bool {
    let ga = ring.extend(a);
    let gb = ring.extend(b);
    ga.gb.gens.len() == gb.gb.gens.len()
        && ga.gb.gens.iter().zip(&gb.gb.gens).all(|(x, y)| x == y)
}

/// Basis of the degree-`deg` piece of the ideal generated by `gens` inside
/// the quotient, computed by multiplying generators by all complementary-
/// degree standard monomials and row-reducing.
pub fn graded_piece(
    ring: &Quotient,
    gens: &[Polynomial],
    deg: u32,
) -> Result<Vec<Polynomial>, AlgebraError> {
    let dim = ring.dim(deg);
    let mut space = RowSpace::new(dim);
    let mut basis = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let gdeg = g.homogeneous_degree().ok_or_else(|| {
            AlgebraError::NonHomogeneous(format!("generator {} is not homogeneous", g))
        })?;
        if gdeg > deg {
            continue;
        }
        for u in ring.std_monomials(deg - gdeg) {
            let prod = ring.nf(&g.mul_monomial(&u));
            if prod.is_zero() {
                continue;
            }
            let coords = ring.coords(&prod, deg)?;
            if space.insert(coords.clone()) {
                basis.push(ring.from_coords(deg, &coords));
            }
        }
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn tp(text: &str, vars: VarSet) -> Polynomial {
        parse_polynomial(text, vars).unwrap()
    }

    #[test]
    fn free_ring_dimensions() {
        let r = Quotient::free(VarSet::x(2));
        assert_eq!(r.dim(0), 1);
        assert_eq!(r.dim(3), 4);
    }

    #[test]
    fn veronese_square_dimensions() {
        // S/(t2^2 - t1 t3) has dimensions 1, 3, 5, 7, ...
        let t = VarSet::t(3);
        let a = Quotient::new(t, &[tp("t2^2 - t1*t3", t)]);
        for j in 0..4u32 {
            assert_eq!(a.dim(j), 2 * j as usize + 1);
        }
    }

    #[test]
    fn graded_piece_of_principal_ideal() {
        // (x1) in 2 variables at degree 2: basis {x1^2, x1 x2}.
        let r = Quotient::free(VarSet::x(2));
        let basis = graded_piece(&r, &[tp("x1", r.vars)], 2).unwrap();
        assert_eq!(basis.len(), 2);
    }

    #[test]
    fn graded_piece_below_generator_degree_is_empty() {
        let r = Quotient::free(VarSet::x(2));
        let basis = graded_piece(&r, &[tp("x1^2", r.vars)], 1).unwrap();
        assert!(basis.is_empty());
    }

    #[test]
    fn graded_piece_row_reduces_products() {
        // (x1^2, x2^2) at degree 3: the four products are independent.
        let r = Quotient::free(VarSet::x(2));
        let basis = graded_piece(&r, &[tp("x1^2", r.vars), tp("x2^2", r.vars)], 3).unwrap();
        assert_eq!(basis.len(), 4);
    }

    #[test]
    fn graded_piece_rejects_inhomogeneous() {
        let r = Quotient::free(VarSet::x(2));
        let err = graded_piece(&r, &[tp("x1 + x2^2", r.vars)], 2);
        assert!(err.is_err());
    }

    #[test]
    fn graded_piece_monotone_under_more_generators() {
        let r = Quotient::free(VarSet::x(3));
        let g1 = [tp("x1*x2", r.vars)];
        let g2 = [tp("x1*x2", r.vars), tp("x3^2", r.vars)];
        for j in 2..5u32 {
            let a = graded_piece(&r, &g1, j).unwrap().len();
            let b = graded_piece(&r, &g2, j).unwrap().len();
            assert!(a <= b);
        }
    }

    #[test]
    fn mul_map_shape_and_rank() {
        let t = VarSet::t(3);
        let a = Quotient::new(t, &[tp("t2^2 - t1*t3", t)]);
        let m = a.mul_map(&tp("t1", t), 1).unwrap();
        assert_eq!(m.rows, a.dim(2));
        assert_eq!(m.cols, a.dim(1));
        // Multiplication by t1 is injective on the domain piece.
        assert_eq!(m.rank(), 3);
    }
}
