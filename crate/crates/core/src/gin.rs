//! Generic initial ideals via randomized coordinate changes, with stability
//! certificates, and the linear-section Hilbert-function comparison.

use serde::Serialize;

use crate::error::AlgebraError;
use crate::groebner::initial_ideal;
use crate::hilbert::{hilbert_function, HilbertFunction};
use crate::matrix::QMatrix;
use crate::monomial::{Monomial, VarSet};
use crate::order::TermOrder;
use crate::poly::{rat_int, Polynomial};
use crate::ring::Quotient;
use crate::rng::SplitMix64;
use crate::veronese::{is_borel, GenericForms, VeronesePresentation};

/// An invertible integer change of coordinates on `R`.
#[derive(Debug, Clone, Serialize)]
pub struct GenericChange {
    pub matrix: Vec<Vec<i64>>,
    pub seed: u64,
    pub bound: i64,
}

impl GenericChange {
    /// Draws an invertible matrix with entries in `[-bound, bound]`.
    pub fn draw(n: usize, seed: u64, bound: i64) -> Result<Self, AlgebraError> {
        for attempt in 0..5u64 {
            let mut rng = SplitMix64::derive(seed, 0xC0 + attempt);
            let matrix: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.next_in(-bound, bound)).collect())
            .collect();
            let q = QMatrix::from_rows(
                matrix
                    .iter()
                    .map(|r| r.iter().map(|&v| rat_int(v)).collect())
                    .collect(),
            );
            if q.rank() == n {
                return Ok(GenericChange { matrix, seed, bound });
            }
        }
        Err(AlgebraError::GenericityFailure(format!(
            "no invertible {}x{} draw after 5 attempts (seed {})",
            n, n, seed
        )))
    }

    /// Applies the substitution `x_i -> sum_j g_ij x_j` to a polynomial.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let n = self.matrix.len();
        let vars = VarSet::x(n);
        let images: Vec<Polynomial> = self
            .matrix
            .iter()
            .map(|row| {
                Polynomial::from_terms(
                    vars,
                    row.iter()
                        .enumerate()
                        .map(|(j, &v)| (Monomial::var(n, j), rat_int(v))),
                )
            })
            .collect();
        f.substitute(&images)
    }
}

/// Outcome record of a randomized generic-initial-ideal computation.
#[derive(Debug, Clone, Serialize)]
pub struct GinCertificate {
    pub draws: usize,
    pub seeds: Vec<u64>,
    pub bound: i64,
    pub agreement: bool,
    pub borel: bool,
}

/// Options for the randomized pipeline: `draws` independent coordinate
/// changes (escalated by one on a first disagreement), all derived from
/// `seed`, with entries bounded by `bound`.
#[derive(Debug, Clone, Copy)]
pub struct GinOptions {
    pub draws: usize,
    pub seed: u64,
    pub bound: i64,
}

impl Default for GinOptions {
    fn default() -> Self {
        GinOptions { draws: 2, seed: 1, bound: 1000 }
    }
}

impl GinOptions {
    pub fn seeded(seed: u64) -> Self {
        GinOptions { seed, ..Default::default() }
    }
}

fn monomial_set(mut v: Vec<Monomial>) -> Vec<Monomial> {
    v.sort();
    v
}

/// The generic initial ideal of a homogeneous ideal in `R = K[x1..xn]`:
/// substitutes `draws` independent invertible coordinate changes, takes
/// initial ideals, and requires all results to agree. The agreed result is
/// checked for the Borel exchange property, which certifies genericity.
pub fn gin(
    n: usize,
    gens: &[Polynomial],
    order: &TermOrder,
    opts: GinOptions,
) -> Result<(Vec<Monomial>, GinCertificate), AlgebraError> {
    assert!(opts.draws >= 2, "at least two draws");
    let live: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    if live.is_empty() {
        return Ok((
            Vec::new(),
            GinCertificate {
                draws: opts.draws,
                seeds: vec![],
                bound: opts.bound,
                agreement: true,
                borel: true,
            },
        ));
    }
    for g in &live {
        if !g.is_homogeneous() {
            return Err(AlgebraError::NonHomogeneous(format!("{}", g)));
        }
    }

    // One escalation round with fresh draws on a first disagreement.
    let mut round = 0u64;
    loop {
        let draws = opts.draws + round as usize;
        let mut seeds = Vec::with_capacity(draws);
        let mut results: Vec<Vec<Monomial>> = Vec::with_capacity(draws);
        for a in 0..draws {
            let draw_seed = opts
                .seed
                .wrapping_add((round * 97 + a as u64 + 1).wrapping_mul(0x9E3779B97F4A7C15));
            let g = GenericChange::draw(n, draw_seed, opts.bound)?;
            seeds.push(draw_seed);
            let moved: Vec<Polynomial> = live.iter().map(|f| g.apply(f)).collect();
            results.push(monomial_set(initial_ideal(&moved, order, None)));
        }
        let agreement = results.windows(2).all(|w| w[0] == w[1]);
        if agreement {
            let result = results.into_iter().next().unwrap();
            let as_polys: Vec<Polynomial> = result
                .iter()
                .map(|m| Polynomial::from_monomial(VarSet::x(n), m.clone()))
                .collect();
            let borel = is_borel(n, &as_polys)?;
            let cert = GinCertificate {
                draws,
                seeds,
                bound: opts.bound,
                agreement: true,
                borel,
            };
            return Ok((result, cert));
        }
        if round >= 1 {
            return Err(AlgebraError::GinUnstable(format!(
                "{} draws disagree at bound {}; raise the bound or the draw count",
                draws, opts.bound
            )));
        }
        round += 1;
    }
}

/// Re-checks the Borel exchange property of an agreed result. A `false`
/// invalidates the computation even though the draws agreed.
pub fn check_gin_certificate_borel(n: usize, result: &[Monomial]) -> Result<bool, AlgebraError> {
    let polys: Vec<Polynomial> = result
        .iter()
        .map(|m| Polynomial::from_monomial(VarSet::x(n), m.clone()))
        .collect();
    is_borel(n, &polys)
}

/// The composite pipeline on a Veronese ideal: expand to `R`, take the
/// generic initial ideal there (degrevlex), and contract back. Errors when
/// the certificate does not both agree and pass the Borel check.
pub fn gin_contraction(
    pres: &VeronesePresentation,
    gens: &[Polynomial],
    opts: GinOptions,
) -> Result<(Vec<Polynomial>, GinCertificate), AlgebraError> {
    let expanded = pres.expand_ideal(gens);
    let (mons, cert) = gin(pres.n, &expanded, &TermOrder::DegRevLex, opts)?;
    if !cert.borel {
        return Err(AlgebraError::GenericityFailure(
            "draws agreed on a non-Borel initial ideal".into(),
        ));
    }
    let x = VarSet::x(pres.n);
    let as_polys: Vec<Polynomial> = mons
        .into_iter()
        .map(|m| Polynomial::from_monomial(x, m))
        .collect();
    let ctr = pres.contract_ideal(&as_polys)?;
    Ok((ctr, cert))
}

/// Result of the linear-section Hilbert comparison.
#[derive(Debug, Clone, Serialize)]
pub struct LinearSectionReport {
    pub p: usize,
    pub equal: bool,
    pub lhs: HilbertFunction,
    pub rhs: HilbertFunction,
    pub certificate: GinCertificate,
}

/// Compares the Hilbert functions of `R^(c)/(I + (y_1..y_p))` and
/// `R^(c)/(ctr + (y_1..y_p))` over a window, where `ctr` is the contracted
/// generic initial ideal of `I`.
pub fn linear_section_hilbert_check(
    pres: &VeronesePresentation,
    gens: &[Polynomial],
    forms: &GenericForms,
    p: usize,
    lo: u32,
    hi: u32,
    opts: GinOptions,
) -> Result<LinearSectionReport, AlgebraError> {
    assert!(p <= forms.len());
    let (ctr, certificate) = gin_contraction(pres, gens, opts)?;
    let mut lhs_gens = gens.to_vec();
    lhs_gens.extend_from_slice(forms.prefix(p));
    let mut rhs_gens = ctr;
    rhs_gens.extend_from_slice(forms.prefix(p));
    let lhs = hilbert_function(pres.ring(), &lhs_gens, lo, hi)?;
    let rhs = hilbert_function(pres.ring(), &rhs_gens, lo, hi)?;
    Ok(LinearSectionReport { p, equal: lhs == rhs, lhs, rhs, certificate })
}

/// Hilbert function of `R/(gens)` for ideals of the ambient x-ring.
pub fn ambient_hilbert(
    n: usize,
    gens: &[Polynomial],
    lo: u32,
    hi: u32,
) -> Result<HilbertFunction, AlgebraError> {
    hilbert_function(&Quotient::free(VarSet::x(n)), gens, lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::veronese::{t_poly, x_poly};

    fn xp(text: &str, n: usize) -> Polynomial {
        parse_polynomial(text, VarSet::x(n)).unwrap()
    }

    #[test]
    fn gin_of_a_generic_quadric_is_x1_squared() {
        let (mons, cert) = gin(
            2,
            &[xp("x1*x2", 2)],
            &TermOrder::DegRevLex,
            GinOptions::seeded(7),
        )
        .unwrap();
        assert!(cert.agreement && cert.borel);
        assert_eq!(mons.len(), 1);
        assert_eq!(mons[0].exps(), &[2, 0]);
    }

    #[test]
    fn gin_fixes_borel_ideals() {
        let (mons, _) = gin(
            2,
            &[xp("x1", 2)],
            &TermOrder::DegRevLex,
            GinOptions::seeded(11),
        )
        .unwrap();
        assert_eq!(mons.len(), 1);
        assert_eq!(mons[0].exps(), &[1, 0]);

        // (x1^2, x1 x2) is Borel and is fixed as well.
        let (mons, _) = gin(
            2,
            &[xp("x1^2", 2), xp("x1*x2", 2)],
            &TermOrder::DegRevLex,
            GinOptions::seeded(11),
        )
        .unwrap();
        let got: Vec<&[u32]> = mons.iter().map(|m| m.exps()).collect();
        assert_eq!(got, vec![&[1, 1][..], &[2, 0][..]]);
    }

    #[test]
    fn gin_of_zero_is_zero() {
        let (mons, cert) = gin(
            2,
            &[],
            &TermOrder::DegRevLex,
            GinOptions::seeded(3),
        )
        .unwrap();
        assert!(mons.is_empty() && cert.agreement && cert.borel);
    }

    #[test]
    fn certificate_borel_checks() {
        // gin((x1 x2)) = (x1^2) passes.
        assert!(check_gin_certificate_borel(2, &[Monomial::new(vec![2, 0])]).unwrap());
        // An artificially injected (x2^2) fails: x1 x2 is missing.
        assert!(!check_gin_certificate_borel(2, &[Monomial::new(vec![0, 2])]).unwrap());
        // Zero ideal passes vacuously.
        assert!(check_gin_certificate_borel(2, &[]).unwrap());
    }

    #[test]
    fn gin_idempotent_on_its_output() {
        let gens = [xp("x1^2 - x2^2", 2), xp("x1*x2", 2)];
        let (first, _) = gin(2, &gens, &TermOrder::DegRevLex, GinOptions::seeded(5)).unwrap();
        let first_polys: Vec<Polynomial> = first
            .iter()
            .map(|m| Polynomial::from_monomial(VarSet::x(2), m.clone()))
            .collect();
        let (second, _) = gin(
            2,
            &first_polys,
            &TermOrder::DegRevLex,
            GinOptions::seeded(23),
        )
        .unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn gin_preserves_hilbert_function() {
        let gens = [xp("x1^3 - x2^3", 2), xp("x1*x2^2", 2)];
        let (mons, _) = gin(2, &gens, &TermOrder::DegRevLex, GinOptions::seeded(19)).unwrap();
        let gin_polys: Vec<Polynomial> = mons
            .iter()
            .map(|m| Polynomial::from_monomial(VarSet::x(2), m.clone()))
            .collect();
        let a = ambient_hilbert(2, &gens, 0, 8).unwrap();
        let b = ambient_hilbert(2, &gin_polys, 0, 8).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn linear_section_p0_reduces_to_plain_hilbert_equality() {
        let pres = VeronesePresentation::build(2, 2);
        let forms = pres.generic_forms(3, 41, 1000).unwrap();
        let gens = [t_poly(&pres, "t1^2"), t_poly(&pres, "t3^2")];
        let report = linear_section_hilbert_check(
            &pres,
            &gens,
            &forms,
            0,
            0,
            6,
            GinOptions::seeded(41),
        )
        .unwrap();
        assert!(report.equal);
    }

    #[test]
    fn linear_section_zero_ideal_any_p() {
        let pres = VeronesePresentation::build(2, 2);
        let forms = pres.generic_forms(3, 43, 1000).unwrap();
        for p in 0..=2 {
            let report = linear_section_hilbert_check(
                &pres,
                &[],
                &forms,
                p,
                0,
                5,
                GinOptions::seeded(43),
            )
            .unwrap();
            assert!(report.equal, "p = {}", p);
        }
    }

    #[test]
    fn linear_section_t1_with_one_form() {
        let pres = VeronesePresentation::build(2, 2);
        let forms = pres.generic_forms(3, 47, 1000).unwrap();
        let report = linear_section_hilbert_check(
            &pres,
            &[t_poly(&pres, "t1")],
            &forms,
            1,
            0,
            4,
            GinOptions::seeded(47),
        )
        .unwrap();
        assert!(report.equal);
    }

    #[test]
    fn expansion_pipeline_on_degree_one_ideal() {
        // contract(gin(expand((t1, t2)))) = (t1, t2): the expansion is Borel.
        let pres = VeronesePresentation::build(2, 2);
        let gens = [t_poly(&pres, "t1"), t_poly(&pres, "t2")];
        let (ctr, cert) = gin_contraction(&pres, &gens, GinOptions::seeded(13)).unwrap();
        assert!(cert.agreement && cert.borel);
        let rendered: Vec<String> = ctr.iter().map(|g| g.render()).collect();
        assert_eq!(rendered, vec!["t1", "t2"]);
        let _ = x_poly(&pres, "x1"); // keep the helper exercised
    }
}
