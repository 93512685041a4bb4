//! Componentwise-linearity decision procedures: the direct definition, the
//! Betti-table comparison against the contracted generic initial ideal, the
//! entrywise inequality, the component Betti identity, and the sufficiency
//! and necessity reports built on proper sequences and homology
//! annihilation.

use serde::Serialize;

use crate::error::AlgebraError;
use crate::gin::{gin_contraction, GinCertificate, GinOptions};
use crate::homology::{
    irrelevant_annihilates_level, proper_sequence_check, resolve_for_homology,
    ProperSequenceReport,
};
use crate::poly::Polynomial;
use crate::resolution::{
    ideal_betti_table, minimal_resolution, BettiRecord, BettiTable, ModulePresentation,
    Truncation,
};
use crate::ring::{minimalize_ideal, multiply_ideals, Quotient};
use crate::veronese::VeronesePresentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ComponentwiseLinear,
    NotComponentwiseLinear,
    InconclusiveAtBounds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Direct,
    GinCriterion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    /// An offending graded Betti entry (homological index, internal degree).
    BettiEntry { i: usize, j: u32 },
    /// The first component degree whose ideal fails linearity.
    Component { j: u32, i: usize, betti_degree: u32 },
    /// Tables differ at this entry.
    TableMismatch { i: usize, j: u32, lhs: usize, rhs: usize },
}

/// Self-contained outcome of a componentwise-linearity analysis.
#[derive(Debug, Clone, Serialize)]
pub struct CwlVerdict {
    pub verdict: Verdict,
    pub method: Method,
    pub imax: usize,
    pub jmax: u32,
    pub min_degree: Option<u32>,
    pub max_degree: Option<u32>,
    pub witness: Option<Witness>,
    pub table_self: Option<BettiRecord>,
    pub table_gin: Option<BettiRecord>,
    pub certificate: Option<GinCertificate>,
}

/// Outcome of a single-component linearity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearCheck {
    Linear,
    NotLinear { i: usize, j: u32 },
    Inconclusive,
}

/// Whether the ideal generated in the single degree `gen_degree` has a
/// linear resolution up to `imax`: `beta_(i, i+k) = 0` for `k != gen_degree`
/// over certified-complete columns. Incomplete columns yield `Inconclusive`,
/// never a silent `false`.
pub fn check_linear_resolution(
    ring: &Quotient,
    gens: &[Polynomial],
    imax: usize,
    jmax: Option<u32>,
) -> Result<LinearCheck, AlgebraError> {
    let minimal = minimalize_ideal(ring, gens)?;
    if minimal.is_empty() {
        return Ok(LinearCheck::Linear);
    }
    let mut degree = None;
    for g in &minimal {
        let d = g.homogeneous_degree().ok_or_else(|| {
            AlgebraError::NonHomogeneous(format!("{}", g))
        })?;
        match degree {
            None => degree = Some(d),
            Some(existing) if existing == d => {}
            Some(_) => {
                return Err(AlgebraError::Precondition(
                    "linear-resolution check needs a single generation degree".into(),
                ))
            }
        }
    }
    let gen_degree = degree.unwrap();
    let table = ideal_betti_table(ring, &minimal, Truncation { imax, jmax })?;
    for (&(i, j), &v) in &table.entries {
        if v > 0 && table.is_complete(i) && j != gen_degree + i as u32 {
            return Ok(LinearCheck::NotLinear { i, j });
        }
    }
    if (0..=imax).any(|i| !table.is_complete(i)) {
        return Ok(LinearCheck::Inconclusive);
    }
    Ok(LinearCheck::Linear)
}

fn degree_range(
    ring: &Quotient,
    gens: &[Polynomial],
) -> Result<Option<(u32, u32)>, AlgebraError> {
    let minimal = minimalize_ideal(ring, gens)?;
    if minimal.is_empty() {
        return Ok(None);
    }
    let mut lo = u32::MAX;
    let mut hi = 0;
    for g in &minimal {
        let d = g.homogeneous_degree().unwrap();
        lo = lo.min(d);
        hi = hi.max(d);
    }
    Ok(Some((lo, hi)))
}

/// The direct definition: every component ideal `I_<j>` for `j` between the
/// extreme generator degrees must have a `j`-linear resolution. Higher
/// components are multiples of the top one by the irrelevant ideal; one
/// extra check at `max + 1` covers them.
pub fn check_cwl_direct(
    pres: &VeronesePresentation,
    gens: &[Polynomial],
    imax: usize,
    jmax: Option<u32>,
) -> Result<CwlVerdict, AlgebraError> {
    let ring = pres.ring();
    let range = degree_range(ring, gens)?;
    let mut verdict = CwlVerdict {
        verdict: Verdict::ComponentwiseLinear,
        method: Method::Direct,
        imax,
        jmax: jmax.unwrap_or(0),
        min_degree: range.map(|(lo, _)| lo),
        max_degree: range.map(|(_, hi)| hi),
        witness: None,
        table_self: None,
        table_gin: None,
        certificate: None,
    };
    let Some((lo, hi)) = range else {
        return Ok(verdict); // the zero ideal is componentwise linear
    };
    let mut inconclusive = false;
    for j in lo..=hi + 1 {
        let component = pres.component_ideal(gens, j)?;
        if component.is_empty() {
            continue;
        }
        match check_linear_resolution(ring, &component, imax, jmax)? {
            LinearCheck::Linear => {}
            LinearCheck::NotLinear { i, j: bad } => {
                verdict.verdict = Verdict::NotComponentwiseLinear;
                verdict.witness = Some(Witness::Component { j, i, betti_degree: bad });
                return Ok(verdict);
            }
            LinearCheck::Inconclusive => inconclusive = true,
        }
    }
    if inconclusive {
        verdict.verdict = Verdict::InconclusiveAtBounds;
    }
    Ok(verdict)
}

fn betti_of_quotient(
    ring: &Quotient,
    gens: &[Polynomial],
    imax: usize,
    jmax: Option<u32>,
) -> Result<BettiTable, AlgebraError> {
    let pres = ModulePresentation::quotient_by_ideal(ring, gens);
    let (_, table) = minimal_resolution(ring, &pres, Truncation { imax, jmax })?;
    Ok(table)
}

fn first_mismatch(a: &BettiTable, b: &BettiTable) -> Option<(usize, u32, usize, usize)> {
    let mut keys: Vec<(usize, u32)> = a.entries.keys().chain(b.entries.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    for (i, j) in keys {
        if a.is_complete(i) && b.is_complete(i) && a.get(i, j) != b.get(i, j) {
            return Some((i, j, a.get(i, j), b.get(i, j)));
        }
    }
    None
}

/// The Betti-comparison criterion: `I` is componentwise linear iff
/// `R^(c)/I` and `R^(c)/ctr` have identical graded Betti tables, where `ctr`
/// is the contracted generic initial ideal of the expansion.
pub fn check_cwl_gin(
    pres: &VeronesePresentation,
    gens: &[Polynomial],
    imax: usize,
    jmax: Option<u32>,
    opts: GinOptions,
) -> Result<CwlVerdict, AlgebraError> {
    let ring = pres.ring();
    let (ctr, certificate) = gin_contraction(pres, gens, opts)?;
    let table_self = betti_of_quotient(ring, gens, imax, jmax)?;
    let table_gin = betti_of_quotient(ring, &ctr, imax, jmax)?;
    let range = degree_range(ring, gens)?;
    let incomplete = (0..=imax)
        .any(|i| !table_self.is_complete(i) || !table_gin.is_complete(i));
    let mismatch = first_mismatch(&table_self, &table_gin);
    let verdict = match (&mismatch, incomplete) {
        (Some(_), _) => Verdict::NotComponentwiseLinear,
        (None, true) => Verdict::InconclusiveAtBounds,
        (None, false) => Verdict::ComponentwiseLinear,
    };
    let module = ModulePresentation::quotient_by_ideal(ring, gens);
    let hash = fnv64(&module.content_string());
    let gin_module = ModulePresentation::quotient_by_ideal(ring, &ctr);
    let gin_hash = fnv64(&gin_module.content_string());
    Ok(CwlVerdict {
        verdict,
        method: Method::GinCriterion,
        imax,
        jmax: table_self.jmax.max(table_gin.jmax),
        min_degree: range.map(|(lo, _)| lo),
        max_degree: range.map(|(_, hi)| hi),
        witness: mismatch.map(|(i, j, lhs, rhs)| Witness::TableMismatch { i, j, lhs, rhs }),
        table_self: Some(table_self.record(&hash)),
        table_gin: Some(table_gin.record(&gin_hash)),
        certificate: Some(certificate),
    })
}

/// Entrywise inequality of the two quotient Betti tables over certified
/// columns.
pub fn prop_inequality_check(
    pres: &VeronesePresentation,
    gens: &[Polynomial],
    imax: usize,
    jmax: Option<u32>,
    opts: GinOptions,
) -> Result<bool, AlgebraError> {
    let ring = pres.ring();
    let (ctr, _) = gin_contraction(pres, gens, opts)?;
    let table_self = betti_of_quotient(ring, gens, imax, jmax)?;
    let table_gin = betti_of_quotient(ring, &ctr, imax, jmax)?;
    Ok(table_self.dominated_by_within_complete(&table_gin).is_ok())
}

/// One cell of the component Betti identity
/// `beta_(i, i+j)(I) = beta_i(I_<j>) - beta_i(m I_<j-1>)`.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentBettiCell {
    pub i: usize,
    pub j: u32,
    pub lhs: usize,
    pub component: usize,
    pub shifted_component: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentBettiReport {
    pub cells: Vec<ComponentBettiCell>,
    pub all_hold: bool,
}

/// Verifies the component Betti identity for a componentwise linear ideal,
/// with all three Betti numbers computed by independent resolutions. Refuses
/// input that is not componentwise linear.
pub fn component_betti_identity(
    pres: &VeronesePresentation,
    gens: &[Polynomial],
    imax: usize,
    jmax: Option<u32>,
) -> Result<ComponentBettiReport, AlgebraError> {
    let direct = check_cwl_direct(pres, gens, imax, jmax)?;
    if direct.verdict != Verdict::ComponentwiseLinear {
        return Err(AlgebraError::Precondition(
            "the component Betti identity is only claimed for componentwise linear ideals".into(),
        ));
    }
    let ring = pres.ring();
    let Some((lo, hi)) = degree_range(ring, gens)? else {
        return Ok(ComponentBettiReport { cells: Vec::new(), all_hold: true });
    };
    let minimal = minimalize_ideal(ring, gens)?;
    let ideal_table = ideal_betti_table(ring, &minimal, Truncation { imax, jmax })?;
    let mut cells = Vec::new();
    let mut all_hold = true;
    for j in lo..=hi + 1 {
        let component = pres.component_ideal(&minimal, j)?;
        let comp_table = ideal_betti_table(ring, &component, Truncation { imax, jmax })?;
        let shifted = if j >= 1 {
            let prev = pres.component_ideal(&minimal, j - 1)?;
            multiply_ideals(ring, &pres.irrelevant_ideal(), &prev)?
        } else {
            Vec::new()
        };
        let shifted_table = ideal_betti_table(ring, &shifted, Truncation { imax, jmax })?;
        for i in 0..=imax {
            let lhs = ideal_table.get(i, i as u32 + j);
            let component_total = comp_table.total(i);
            let shifted_total = shifted_table.total(i);
            let holds = lhs as i64 == component_total as i64 - shifted_total as i64;
            all_hold &= holds;
            cells.push(ComponentBettiCell {
                i,
                j,
                lhs,
                component: component_total,
                shifted_component: shifted_total,
                holds,
            });
        }
    }
    Ok(ComponentBettiReport { cells, all_hold })
}

/// Sufficiency report: a proper sequence forces componentwise linearity.
#[derive(Debug, Clone, Serialize)]
pub struct SufficiencyReport {
    pub proper: ProperSequenceReport,
    /// Present when the sufficient condition is met: the verdict that must
    /// then be componentwise-linear.
    pub verdict: Option<CwlVerdict>,
    pub consistent: bool,
}

pub fn sufficiency_check(
    pres: &VeronesePresentation,
    gens: &[Polynomial],
    imax: usize,
    jmax: Option<u32>,
    opts: GinOptions,
) -> Result<SufficiencyReport, AlgebraError> {
    let ring = pres.ring();
    let module = ModulePresentation::quotient_by_ideal(ring, gens);
    let forms = pres.generic_forms(pres.d, opts.seed, opts.bound)?;
    let proper = proper_sequence_check(ring, &module, &forms, imax, jmax)?;
    if !proper.proper {
        return Ok(SufficiencyReport { proper, verdict: None, consistent: true });
    }
    let verdict = check_cwl_gin(pres, gens, imax, jmax, opts)?;
    let consistent = verdict.verdict == Verdict::ComponentwiseLinear;
    Ok(SufficiencyReport { proper, verdict: Some(verdict), consistent })
}

/// Necessity report: for componentwise linear ideals the irrelevant ideal
/// annihilates the top-level homology (which holds for structural reasons
/// and is kept as a sanity gate), and the informative strengthened
/// diagnostic asks the same at every level.
#[derive(Debug, Clone, Serialize)]
pub struct NecessityReport {
    pub literal_holds: bool,
    pub strengthened_holds: bool,
    pub strengthened_failure: Option<(usize, usize, u32)>,
}

pub fn necessity_check(
    pres: &VeronesePresentation,
    gens: &[Polynomial],
    imax: usize,
    jmax: Option<u32>,
    opts: GinOptions,
) -> Result<NecessityReport, AlgebraError> {
    let direct = check_cwl_direct(pres, gens, imax, jmax)?;
    if direct.verdict != Verdict::ComponentwiseLinear {
        return Err(AlgebraError::Precondition(
            "the necessity check applies to componentwise linear ideals".into(),
        ));
    }
    let ring = pres.ring();
    let module = ModulePresentation::quotient_by_ideal(ring, gens);
    let forms = pres.generic_forms(pres.d, opts.seed, opts.bound)?;
    let res = resolve_for_homology(ring, &module, imax, jmax)?;
    if let Some((i, j)) = irrelevant_annihilates_level(ring, &res, &forms, pres.d, imax)? {
        return Err(AlgebraError::TheoremViolation(format!(
            "irrelevant ideal fails to annihilate top-level homology at (i={}, j={})",
            i, j
        )));
    }
    let mut strengthened_failure = None;
    for p in 1..pres.d {
        if let Some((i, j)) = irrelevant_annihilates_level(ring, &res, &forms, p, imax)? {
            strengthened_failure = Some((p, i, j));
            break;
        }
    }
    Ok(NecessityReport {
        literal_holds: true,
        strengthened_holds: strengthened_failure.is_none(),
        strengthened_failure,
    })
}

/// Strengthened annihilation diagnostic alone (no componentwise-linearity
/// precondition): whether the irrelevant ideal annihilates `H_i(p)` for all
/// levels `p < d`, `1 <= i <= imax`.
pub fn strengthened_annihilation(
    pres: &VeronesePresentation,
    gens: &[Polynomial],
    imax: usize,
    jmax: Option<u32>,
    opts: GinOptions,
) -> Result<Option<(usize, usize, u32)>, AlgebraError> {
    let ring = pres.ring();
    let module = ModulePresentation::quotient_by_ideal(ring, gens);
    let forms = pres.generic_forms(pres.d, opts.seed, opts.bound)?;
    let res = resolve_for_homology(ring, &module, imax, jmax)?;
    for p in 1..pres.d {
        if let Some((i, j)) = irrelevant_annihilates_level(ring, &res, &forms, p, imax)? {
            return Ok(Some((p, i, j)));
        }
    }
    Ok(None)
}

/// 64-bit FNV-1a, used as a stable content tag on serialized records.
pub fn fnv64(data: &str) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for b in data.as_bytes() {
        hash ^= *b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::veronese::t_poly;

    fn setup() -> VeronesePresentation {
        VeronesePresentation::build(2, 2)
    }

    #[test]
    fn degree_one_ideal_is_linear() {
        let pres = setup();
        let gens = [t_poly(&pres, "t1"), t_poly(&pres, "t2")];
        let check = check_linear_resolution(pres.ring(), &gens, 3, None).unwrap();
        assert_eq!(check, LinearCheck::Linear);
    }

    #[test]
    fn two_quadrics_fail_linearity_with_witness() {
        // (t1^2, t3^2): the relation sits in degree 4, so beta_(1,4) != 0.
        let pres = setup();
        let gens = [t_poly(&pres, "t1^2"), t_poly(&pres, "t3^2")];
        let check = check_linear_resolution(pres.ring(), &gens, 3, None).unwrap();
        assert_eq!(check, LinearCheck::NotLinear { i: 1, j: 4 });
    }

    #[test]
    fn zero_ideal_vacuously_linear() {
        let pres = setup();
        let check = check_linear_resolution(pres.ring(), &[], 3, None).unwrap();
        assert_eq!(check, LinearCheck::Linear);
        let verdict = check_cwl_direct(&pres, &[], 3, None).unwrap();
        assert_eq!(verdict.verdict, Verdict::ComponentwiseLinear);
    }

    #[test]
    fn direct_method_on_witnesses() {
        let pres = setup();
        let m2 = pres.irrelevant_ideal();
        let verdict = check_cwl_direct(&pres, &m2, 3, None).unwrap();
        assert_eq!(verdict.verdict, Verdict::ComponentwiseLinear);

        let bad = [t_poly(&pres, "t1^2"), t_poly(&pres, "t3^2")];
        let verdict = check_cwl_direct(&pres, &bad, 3, None).unwrap();
        assert_eq!(verdict.verdict, Verdict::NotComponentwiseLinear);
        match verdict.witness {
            Some(Witness::Component { j, .. }) => assert_eq!(j, 2),
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn gin_method_agrees_on_simple_cases() {
        let pres = setup();
        let opts = GinOptions::seeded(71);

        let good = [t_poly(&pres, "t1"), t_poly(&pres, "t2")];
        let v = check_cwl_gin(&pres, &good, 3, None, opts).unwrap();
        assert_eq!(v.verdict, Verdict::ComponentwiseLinear);
        assert!(v.table_self.is_some() && v.table_gin.is_some());

        let bad = [t_poly(&pres, "t1^2"), t_poly(&pres, "t3^2")];
        let v = check_cwl_gin(&pres, &bad, 3, None, opts).unwrap();
        assert_eq!(v.verdict, Verdict::NotComponentwiseLinear);
        assert!(matches!(v.witness, Some(Witness::TableMismatch { .. })));
        // The inequality still holds entrywise.
        assert!(prop_inequality_check(&pres, &bad, 3, None, opts).unwrap());
    }

    #[test]
    fn identity_refuses_non_cwl_input() {
        let pres = setup();
        let bad = [t_poly(&pres, "t1^2"), t_poly(&pres, "t3^2")];
        let err = component_betti_identity(&pres, &bad, 2, None).unwrap_err();
        assert!(matches!(err, AlgebraError::Precondition(_)));
    }

    #[test]
    fn identity_on_degree_one_ideal() {
        // For I generated in degree one the identity reduces to
        // beta_(i,i+1)(I) = beta_i(I).
        let pres = setup();
        let gens = [t_poly(&pres, "t1"), t_poly(&pres, "t2")];
        let report = component_betti_identity(&pres, &gens, 2, None).unwrap();
        assert!(report.all_hold);
    }
}
