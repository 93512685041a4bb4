//! The Veronese presentation `phi: S -> R`, expansion and contraction of
//! ideals, Borel checks, component ideals, and generic linear forms.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::AlgebraError;
use crate::matrix::QMatrix;
use crate::monomial::{degree_monomials_lex_desc, Monomial, VarSet};
use crate::order::TermOrder;
use crate::parse::parse_polynomial;
use crate::poly::{rat_int, Polynomial};
use crate::ring::{graded_piece, minimalize_ideal, Quotient};
use crate::rng::SplitMix64;

/// The data of the `c`-th Veronese subring of `K[x1..xn]`: the variable map
/// `t_i -> x^(a_i)` with `a_1 > ... > a_d` lex-descending, and the toric
/// kernel `Q` with a cached reduced Groebner basis.
#[derive(Debug, Clone)]
pub struct VeronesePresentation {
    pub n: usize,
    pub c: u32,
    pub d: usize,
    images: Vec<Monomial>,
    ring: Quotient,
    /// Lookup from degree-c exponent vector to t-index.
    image_index: BTreeMap<Monomial, usize>,
}

impl VeronesePresentation {
    /// Builds the presentation, computing the kernel by elimination over the
    /// joint `(x, t)` ring.
    pub fn build(n: usize, c: u32) -> Self {
        assert!(n >= 1 && c >= 1);
        let images = degree_monomials_lex_desc(n, c);
        let d = images.len();
        let t = VarSet::t(d);
        let joint = VarSet::joint(n, d);
        let mut gens = Vec::with_capacity(d);
        for (i, img) in images.iter().enumerate() {
            // t_i - x^(a_i) inside the joint ring.
            let mut exps = vec![0u32; n + d];
            exps[n + i] = 1;
            let t_mon = Monomial::new(exps);
            let mut x_exps = vec![0u32; n + d];
            x_exps[..n].copy_from_slice(img.exps());
            let x_mon = Monomial::new(x_exps);
            let g = Polynomial::from_terms(
                joint,
                [(t_mon, rat_int(1)), (x_mon, rat_int(-1))],
            );
            gens.push(g);
        }
        let kernel = crate::groebner::eliminate(&gens, n, t);
        let ring = Quotient::new(t, &kernel);
        let image_index = images
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        VeronesePresentation { n, c, d, images, ring, image_index }
    }

    pub fn x_vars(&self) -> VarSet {
        VarSet::x(self.n)
    }

    pub fn t_vars(&self) -> VarSet {
        VarSet::t(self.d)
    }

    /// The coordinate ring `S/Q`.
    pub fn ring(&self) -> &Quotient {
        &self.ring
    }

    /// Reduced Groebner basis of the toric kernel.
    pub fn kernel(&self) -> &[Polynomial] {
        &self.ring.gb.gens
    }

    pub fn images(&self) -> &[Monomial] {
        &self.images
    }

    /// The ambient polynomial ring `R` as a quotient context.
    pub fn x_ring(&self) -> Quotient {
        Quotient::free(self.x_vars())
    }

    /// Term order on `S` compatible with degrevlex on `R`: t-monomials are
    /// compared by the degrevlex order of their x-images, ties by lex.
    pub fn compatible_order(&self) -> TermOrder {
        TermOrder::VeroneseCompatible { images: self.images.clone() }
    }

    /// Applies `phi` to a t-polynomial, producing an x-polynomial.
    /// Veronese degree `j` becomes x-degree `c*j`.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let x = self.x_vars();
        let image_polys: Vec<Polynomial> = self
            .images
            .iter()
            .map(|m| Polynomial::from_monomial(x, m.clone()))
            .collect();
        f.substitute(&image_polys)
    }

    /// Expansion `I -> IR`: images of the generators, zero images dropped.
    pub fn expand_ideal(&self, gens: &[Polynomial]) -> Vec<Polynomial> {
        gens.iter()
            .map(|g| self.apply(g))
            .filter(|g| !g.is_zero())
            .collect()
    }

    /// Canonical t-monomial mapping to a degree-`c*j` x-monomial: the sorted
    /// variable list is cut into consecutive degree-c chunks.
    pub fn rewrite_monomial(&self, m: &Monomial) -> Result<Monomial, AlgebraError> {
        let deg = m.degree();
        if deg % self.c != 0 {
            return Err(AlgebraError::Internal(format!(
                "x-monomial degree {} not divisible by c = {}",
                deg, self.c
            )));
        }
        let mut vars_sorted = Vec::with_capacity(deg as usize);
        for (i, &e) in m.exps().iter().enumerate() {
            for _ in 0..e {
                vars_sorted.push(i);
            }
        }
        let mut t_exps = vec![0u32; self.d];
        for chunk in vars_sorted.chunks(self.c as usize) {
            let mut x_exps = vec![0u32; self.n];
            for &v in chunk {
                x_exps[v] += 1;
            }
            let key = Monomial::new(x_exps);
            let idx = self
                .image_index
                .get(&key)
                .ok_or_else(|| AlgebraError::Internal("chunk is not a t-image".into()))?;
            t_exps[*idx] += 1;
        }
        Ok(Monomial::new(t_exps))
    }

    /// Rewrites a homogeneous x-polynomial of degree `c*j` as the canonical
    /// normal form of a t-polynomial mapping to it.
    pub fn rewrite_poly(&self, f: &Polynomial) -> Result<Polynomial, AlgebraError> {
        let mut out = Polynomial::zero(self.t_vars());
        for (m, coeff) in f.terms() {
            out.add_term(self.rewrite_monomial(m)?, coeff.clone());
        }
        Ok(self.ring.nf(&out))
    }

    /// Contraction `J -> J^(c)`: minimal t-generators of the direct sum of
    /// the pieces `J_(cj)`. For `J` generated in x-degrees `<= D` it
    /// suffices to scan Veronese degrees up to `ceil(D/c)`, because
    /// `J_(e+1) = R_1 J_e` once `e >= D`.
    pub fn contract_ideal(&self, gens: &[Polynomial]) -> Result<Vec<Polynomial>, AlgebraError> {
        let x_ring = self.x_ring();
        let mut max_deg = 0u32;
        for g in gens {
            if g.is_zero() {
                continue;
            }
            let d = g.homogeneous_degree().ok_or_else(|| {
                AlgebraError::NonHomogeneous(format!("contraction input {}", g))
            })?;
            max_deg = max_deg.max(d);
        }
        if max_deg == 0 {
            return Ok(Vec::new());
        }
        let j_top = max_deg.div_ceil(self.c);
        let mut collected: Vec<Polynomial> = Vec::new();
        for j in 1..=j_top {
            let basis = graded_piece(&x_ring, gens, self.c * j)?;
            if basis.is_empty() {
                continue;
            }
            let mut candidates = Vec::with_capacity(basis.len());
            for f in &basis {
                candidates.push(self.rewrite_poly(f)?);
            }
            let mut all: Vec<Polynomial> = collected.clone();
            all.extend(candidates);
            collected = minimalize_ideal(&self.ring, &all)?;
        }
        Ok(collected)
    }

    /// Generators `t_1..t_d` of the irrelevant ideal.
    pub fn irrelevant_ideal(&self) -> Vec<Polynomial> {
        (0..self.d)
            .map(|i| Polynomial::variable(self.t_vars(), i))
            .collect()
    }

    /// Component ideal: generated by a basis of the degree-`j` piece.
    pub fn component_ideal(
        &self,
        gens: &[Polynomial],
        j: u32,
    ) -> Result<Vec<Polynomial>, AlgebraError> {
        if j == 0 {
            // Proper ideals have zero degree-0 piece.
            return Ok(Vec::new());
        }
        graded_piece(&self.ring, gens, j)
    }

    /// Draws `p` generic degree-one forms with integer coefficients in
    /// `[-bound, bound]`, redrawing (up to 5 times) until the coefficient
    /// matrix has full rank `p`. Reproducible from `(seed, bound, p)`.
    pub fn generic_forms(
        &self,
        p: usize,
        seed: u64,
        bound: i64,
    ) -> Result<GenericForms, AlgebraError> {
        assert!(p <= self.d, "at most d forms");
        if p == 0 {
            return Ok(GenericForms { forms: Vec::new(), seed, bound, redraws: 0 });
        }
        let t = self.t_vars();
        for attempt in 0..5u32 {
            let mut rng = SplitMix64::derive(seed, 0xF0 + attempt as u64);
            let rows: Vec<Vec<i64>> = (0..p)
                .map(|_| (0..self.d).map(|_| rng.next_in(-bound, bound)).collect())
                .collect();
            let m = QMatrix::from_rows(
                rows.iter()
                    .map(|r| r.iter().map(|&v| rat_int(v)).collect())
                    .collect(),
            );
            if m.rank() == p {
                let forms = rows
                    .iter()
                    .map(|r| {
                        Polynomial::from_terms(
                            t,
                            r.iter()
                                .enumerate()
                                .map(|(i, &v)| (Monomial::var(self.d, i), rat_int(v))),
                        )
                    })
                    .collect();
                return Ok(GenericForms { forms, seed, bound, redraws: attempt });
            }
        }
        Err(AlgebraError::GenericityFailure(format!(
            "no rank-{} coefficient matrix after 5 draws (seed {}, bound {})",
            p, seed, bound
        )))
    }
}

/// Which ring an ideal's generators live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RingTag {
    /// The ambient polynomial ring `R` on x-variables.
    Ambient,
    /// The presentation ring `S` on t-variables.
    Presentation,
    /// The Veronese quotient `S/Q`, generators in canonical normal form.
    Veronese,
}

/// A homogeneous ideal tagged with its ring.
#[derive(Debug, Clone)]
pub struct GradedIdeal {
    pub tag: RingTag,
    pub gens: Vec<Polynomial>,
}

impl GradedIdeal {
    /// An ideal of the Veronese ring: generators are checked homogeneous,
    /// reduced modulo the kernel, and zero generators dropped.
    pub fn veronese(
        pres: &VeronesePresentation,
        gens: &[Polynomial],
    ) -> Result<Self, AlgebraError> {
        let mut out = Vec::new();
        for g in gens {
            g.check_ring(pres.t_vars())?;
            if !g.is_homogeneous() {
                return Err(AlgebraError::NonHomogeneous(format!("{}", g)));
            }
            let nf = pres.ring.nf(g);
            if !nf.is_zero() {
                out.push(nf);
            }
        }
        Ok(GradedIdeal { tag: RingTag::Veronese, gens: out })
    }

    /// An ideal of the ambient polynomial ring.
    pub fn ambient(n: usize, gens: &[Polynomial]) -> Result<Self, AlgebraError> {
        let mut out = Vec::new();
        for g in gens {
            g.check_ring(VarSet::x(n))?;
            if !g.is_homogeneous() {
                return Err(AlgebraError::NonHomogeneous(format!("{}", g)));
            }
            if !g.is_zero() {
                out.push(g.clone());
            }
        }
        Ok(GradedIdeal { tag: RingTag::Ambient, gens: out })
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn rendered(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.render()).collect()
    }
}

/// A generic sequence of degree-one forms in the Veronese ring.
#[derive(Debug, Clone, Serialize)]
pub struct GenericForms {
    #[serde(serialize_with = "serialize_forms")]
    pub forms: Vec<Polynomial>,
    pub seed: u64,
    pub bound: i64,
    pub redraws: u32,
}

fn serialize_forms<S: serde::Serializer>(
    forms: &[Polynomial],
    s: S,
) -> Result<S::Ok, S::Error> {
    let rendered: Vec<String> = forms.iter().map(|f| f.render()).collect();
    serde::Serialize::serialize(&rendered, s)
}

impl GenericForms {
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn prefix(&self, p: usize) -> &[Polynomial] {
        &self.forms[..p]
    }
}

/// Borel (strongly stable) check for a monomial ideal in `R`: for every
/// generator `m`, every variable `x_j` dividing `m`, and every `i < j`, the
/// exchange `m x_i / x_j` must stay in the ideal.
pub fn is_borel(n: usize, gens: &[Polynomial]) -> Result<bool, AlgebraError> {
    let mut monos: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let m = g
            .as_monomial()
            .ok_or_else(|| AlgebraError::NonMonomial(format!("{}", g)))?;
        m.check_nvars(n)?;
        monos.push(m.clone());
    }
    let in_ideal = |m: &Monomial| monos.iter().any(|g| g.divides(m));
    for m in &monos {
        for j in 0..n {
            if m.exp(j) == 0 {
                continue;
            }
            for i in 0..j {
                if !in_ideal(&m.exchange(j, i)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Borel check for a monomial ideal in the Veronese ring: expand to `R` and
/// test the exchange property there.
pub fn is_borel_veronese(
    pres: &VeronesePresentation,
    gens: &[Polynomial],
) -> Result<bool, AlgebraError> {
    for g in gens {
        if !g.is_zero() && g.as_monomial().is_none() {
            return Err(AlgebraError::NonMonomial(format!("{}", g)));
        }
    }
    let expanded = pres.expand_ideal(gens);
    is_borel(pres.n, &expanded)
}

/// Convenience: parse a t-polynomial in the presentation ring.
pub fn t_poly(pres: &VeronesePresentation, text: &str) -> Polynomial {
    parse_polynomial(text, pres.t_vars()).expect("valid t-polynomial literal")
}

/// Convenience: parse an x-polynomial in the ambient ring.
pub fn x_poly(pres: &VeronesePresentation, text: &str) -> Polynomial {
    parse_polynomial(text, pres.x_vars()).expect("valid x-polynomial literal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::hilbert_function;

    #[test]
    fn presentation_2_2() {
        let pres = VeronesePresentation::build(2, 2);
        assert_eq!(pres.d, 3);
        let rendered: Vec<String> = pres
            .images()
            .iter()
            .map(|m| m.render(&pres.x_vars()))
            .collect();
        assert_eq!(rendered, vec!["x1^2", "x1*x2", "x2^2"]);
        assert_eq!(pres.kernel().len(), 1);
        assert_eq!(pres.kernel()[0].render(), "t2^2 - t1*t3");
    }

    #[test]
    fn presentation_c1_is_identity_relabeling() {
        let pres = VeronesePresentation::build(3, 1);
        assert_eq!(pres.d, 3);
        assert!(pres.kernel().is_empty());
    }

    #[test]
    fn presentation_3_2_has_six_quadrics() {
        let pres = VeronesePresentation::build(3, 2);
        assert_eq!(pres.d, 6);
        assert_eq!(pres.kernel().len(), 6);
        assert!(pres
            .kernel()
            .iter()
            .all(|q| q.homogeneous_degree() == Some(2)));
        // Dimension cross-check: deg-2 piece of the kernel is 21 - 15 = 6.
        let s = Quotient::free(pres.t_vars());
        let piece = graded_piece(&s, pres.kernel(), 2).unwrap();
        assert_eq!(piece.len(), 6);
    }

    #[test]
    fn kernel_generators_map_to_zero() {
        for (n, c) in [(2, 2), (2, 3), (3, 2)] {
            let pres = VeronesePresentation::build(n, c);
            for q in pres.kernel() {
                assert!(pres.apply(q).is_zero());
            }
        }
    }

    #[test]
    fn expansion_examples() {
        let pres = VeronesePresentation::build(2, 2);
        let e = pres.expand_ideal(&[t_poly(&pres, "t1")]);
        assert_eq!(e[0].render(), "x1^2");
        // Kernel elements map to zero and are dropped.
        let e = pres.expand_ideal(&[t_poly(&pres, "t2^2 - t1*t3")]);
        assert!(e.is_empty());
        let e = pres.expand_ideal(&[t_poly(&pres, "t1"), t_poly(&pres, "t2")]);
        assert_eq!(e.len(), 2);
        assert_eq!(e[1].render(), "x1*x2");
    }

    #[test]
    fn contraction_of_x1_squared() {
        let pres = VeronesePresentation::build(2, 2);
        let ctr = pres.contract_ideal(&[x_poly(&pres, "x1^2")]).unwrap();
        assert_eq!(ctr.len(), 1);
        assert_eq!(ctr[0].render(), "t1");
    }

    #[test]
    fn contraction_of_x1() {
        // J = (x1): J_2 = span(x1^2, x1 x2) gives (t1, t2); degree 4 adds
        // nothing new.
        let pres = VeronesePresentation::build(2, 2);
        let ctr = pres.contract_ideal(&[x_poly(&pres, "x1")]).unwrap();
        let rendered: Vec<String> = ctr.iter().map(|g| g.render()).collect();
        assert_eq!(rendered, vec!["t1", "t2"]);
    }

    #[test]
    fn contraction_of_zero() {
        let pres = VeronesePresentation::build(2, 2);
        assert!(pres.contract_ideal(&[]).unwrap().is_empty());
    }

    #[test]
    fn contraction_generation_bound_is_sound() {
        // For J generated in degrees <= D the contraction regenerates J_(cj)
        // well past the scan bound ceil(D/c).
        let pres = VeronesePresentation::build(2, 2);
        let x_ring = pres.x_ring();
        for gens in [
            vec![x_poly(&pres, "x1")],
            vec![x_poly(&pres, "x1^2"), x_poly(&pres, "x2^4")],
            vec![x_poly(&pres, "x1^3*x2 - x2^4")],
        ] {
            let ctr = pres.contract_ideal(&gens).unwrap();
            let max_deg = gens.iter().map(|g| g.max_degree()).max().unwrap();
            let j_top = max_deg.div_ceil(pres.c) + 2;
            for j in 1..=j_top {
                let expect = graded_piece(&x_ring, &gens, pres.c * j).unwrap().len();
                let got = graded_piece(pres.ring(), &ctr, j).unwrap().len();
                assert_eq!(got, expect, "degree {} of {:?}", j, gens.len());
            }
        }
    }

    #[test]
    fn borel_examples() {
        let pres = VeronesePresentation::build(2, 2);
        let x = pres.x_vars();
        let p = |s: &str| parse_polynomial(s, x).unwrap();
        assert!(is_borel(2, &[p("x1")]).unwrap());
        assert!(!is_borel(2, &[p("x1*x2")]).unwrap());
        assert!(is_borel(2, &[p("x1^2"), p("x1*x2")]).unwrap());
        assert!(is_borel(2, &[]).unwrap());
        assert!(is_borel(2, &[p("x1 + x2")]).is_err());
    }

    #[test]
    fn borel_veronese_examples() {
        let pres = VeronesePresentation::build(2, 2);
        assert!(is_borel_veronese(&pres, &[t_poly(&pres, "t1")]).unwrap());
        assert!(!is_borel_veronese(&pres, &[t_poly(&pres, "t2")]).unwrap());
        let m2: Vec<Polynomial> = pres.irrelevant_ideal();
        assert!(is_borel_veronese(&pres, &m2).unwrap());
    }

    #[test]
    fn component_ideal_examples() {
        let pres = VeronesePresentation::build(2, 2);
        let gens = [t_poly(&pres, "t1"), t_poly(&pres, "t3^2")];
        let c1 = pres.component_ideal(&gens, 1).unwrap();
        assert_eq!(c1.len(), 1);
        assert_eq!(c1[0].render(), "t1");
        // Degree 2: t1*(t1,t2,t3) spans 3 dimensions, plus t3^2; note
        // t2^2 = t1 t3 is already included.
        let c2 = pres.component_ideal(&gens, 2).unwrap();
        assert_eq!(c2.len(), 4);
        let c0 = pres.component_ideal(&gens, 0).unwrap();
        assert!(c0.is_empty());
    }

    #[test]
    fn rewrite_canonical_chunks() {
        let pres = VeronesePresentation::build(2, 2);
        // x1^2 x2^2 -> t1 t3 (the normal form of t2^2).
        let m = Monomial::new(vec![2, 2]);
        let t = pres.rewrite_monomial(&m).unwrap();
        assert_eq!(t.render(&pres.t_vars()), "t1*t3");
    }

    #[test]
    fn generic_forms_contract() {
        let pres = VeronesePresentation::build(2, 2);
        let empty = pres.generic_forms(0, 7, 1000).unwrap();
        assert!(empty.is_empty());
        let full = pres.generic_forms(3, 7, 1000).unwrap();
        assert_eq!(full.len(), 3);
        // Determinism.
        let again = pres.generic_forms(3, 7, 1000).unwrap();
        for (a, b) in full.forms.iter().zip(&again.forms) {
            assert_eq!(a, b);
        }
        // Full-rank draws at small bounds still succeed.
        assert!(pres.generic_forms(3, 12345, 2).is_ok());
    }

    #[test]
    fn full_generic_forms_generate_irrelevant_ideal() {
        let pres = VeronesePresentation::build(2, 2);
        let forms = pres.generic_forms(3, 99, 1000).unwrap();
        let q = pres.ring().extend(&forms.forms);
        for i in 0..pres.d {
            let t_i = Polynomial::variable(pres.t_vars(), i);
            assert!(q.is_zero(&t_i));
        }
        // And the quotient by them matches the quotient by the variables.
        let hf_forms = hilbert_function(pres.ring(), &forms.forms, 0, 3).unwrap();
        let hf_vars = hilbert_function(pres.ring(), &pres.irrelevant_ideal(), 0, 3).unwrap();
        assert_eq!(hf_forms, hf_vars);
    }
}
