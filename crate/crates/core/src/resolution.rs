//! Truncated minimal graded free resolutions and Betti tables.
//!
//! A module is presented as the cokernel of a map of free modules. Each
//! resolution step computes syzygies of the previous differential by the
//! Groebner route and then selects a minimal generating set degree by
//! degree, so every differential has entries in the irrelevant ideal and the
//! shift multisets read off the graded Betti numbers directly.
//!
//! Resolutions over the Veronese ring are infinite; every computation states
//! its truncation `(imax, jmax)`. The default internal-degree bound is
//! `regularity over the presenting polynomial ring + imax`, which certifies
//! complete columns because the ring is Koszul.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::AlgebraError;
use crate::poly::{Polynomial, Rational};
use crate::ring::Quotient;
use crate::syzygy::{
    assemble_map, free_module_dim, minimalize_generators, syzygies, vector_degree, VecPoly,
};

/// A finitely generated graded module presented as `coker(columns)` inside
/// the free module with the given shifts.
#[derive(Debug, Clone)]
pub struct ModulePresentation {
    pub ambient_shifts: Vec<u32>,
    pub columns: Vec<VecPoly>,
}

impl ModulePresentation {
    /// The cyclic module `ring/(gens)`.
    pub fn quotient_by_ideal(ring: &Quotient, gens: &[Polynomial]) -> Self {
        let columns = gens
            .iter()
            .map(|g| vec![ring.nf(g)])
            .filter(|v| !v[0].is_zero())
            .collect();
        ModulePresentation { ambient_shifts: vec![0], columns }
    }

    /// The free module of rank one.
    pub fn free_rank_one() -> Self {
        ModulePresentation { ambient_shifts: vec![0], columns: Vec::new() }
    }

    /// Stable content string used for hashing and cache keys.
    pub fn content_string(&self) -> String {
        let shifts: Vec<String> = self.ambient_shifts.iter().map(|s| s.to_string()).collect();
        let cols: Vec<String> = self
            .columns
            .iter()
            .map(|c| {
                let comps: Vec<String> = c.iter().map(|p| p.render()).collect();
                comps.join("|")
            })
            .collect();
        format!("shifts[{}];cols[{}]", shifts.join(","), cols.join(";"))
    }
}

/// One differential `F_i -> F_(i-1)`: the shifts of `F_i` and its columns.
#[derive(Debug, Clone)]
pub struct ResolutionStep {
    pub shifts: Vec<u32>,
    pub columns: Vec<VecPoly>,
}

/// A truncated minimal graded free resolution of a cokernel presentation.
#[derive(Debug, Clone)]
pub struct FreeResolution {
    pub ambient_shifts: Vec<u32>,
    pub steps: Vec<ResolutionStep>,
    pub imax: usize,
    pub jmax: u32,
    /// Whether all minimal generators at each homological index were kept
    /// (none dropped for exceeding `jmax`).
    pub complete: Vec<bool>,
    /// True when the final computed syzygy module was zero, i.e. the
    /// resolution is finite and fully computed.
    pub finished: bool,
}

impl FreeResolution {
    /// Shift multiset at homological index `i` (index 0 is the ambient free
    /// module).
    pub fn shifts_at(&self, i: usize) -> &[u32] {
        if i == 0 {
            &self.ambient_shifts
        } else {
            &self.steps[i - 1].shifts
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn betti_table(&self) -> BettiTable {
        let mut entries = BTreeMap::new();
        for (i, complete) in self.complete.iter().enumerate() {
            let _ = complete;
            if i > self.imax {
                break;
            }
            if i == 0 || i <= self.steps.len() {
                for &s in self.shifts_at(i) {
                    *entries.entry((i, s)).or_insert(0) += 1;
                }
            }
        }
        BettiTable {
            entries,
            imax: self.imax,
            jmax: self.jmax,
            column_complete: self.complete.clone(),
        }
    }

    /// Differential composition check: `d_i ( d_(i+1) ) = 0` exactly, modulo
    /// the quotient relations.
    pub fn check_composition(&self, ring: &Quotient) -> Result<(), AlgebraError> {
        for i in 1..self.steps.len() {
            let prev = &self.steps[i - 1];
            let next = &self.steps[i];
            let target_rank = self.shifts_at(i - 1).len();
            for col in &next.columns {
                let mut image: VecPoly =
                    vec![Polynomial::zero(ring.vars); target_rank];
                for (r, entry) in col.iter().enumerate() {
                    if entry.is_zero() {
                        continue;
                    }
                    for (tr, prev_entry) in prev.columns[r].iter().enumerate() {
                        image[tr] = image[tr].add(&entry.mul(prev_entry));
                    }
                }
                for comp in &image {
                    if !ring.is_zero(comp) {
                        return Err(AlgebraError::Internal(
                            "consecutive differentials do not compose to zero".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Minimality: every differential entry lies in the irrelevant ideal.
    pub fn check_minimality(&self) -> Result<(), AlgebraError> {
        for step in &self.steps {
            for col in &step.columns {
                for entry in col {
                    if !entry.is_zero() && entry.homogeneous_degree() == Some(0) {
                        return Err(AlgebraError::Internal(
                            "differential entry with a nonzero constant term".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Degreewise exactness at interior steps, verified by independent rank
    /// computations on the assembled degree maps.
    pub fn check_exactness(&self, ring: &Quotient) -> Result<(), AlgebraError> {
        for i in 1..self.steps.len() {
            if !self.complete[i.min(self.complete.len() - 1)] {
                continue;
            }
            let here = &self.steps[i - 1];
            let next = &self.steps[i];
            for deg in 0..=self.jmax {
                let d_i = assemble_map(
                    ring,
                    self.shifts_at(i - 1),
                    &here.shifts,
                    &here.columns,
                    deg,
                )?;
                let d_next =
                    assemble_map(ring, &here.shifts, &next.shifts, &next.columns, deg)?;
                let dim = free_module_dim(ring, &here.shifts, deg);
                let rank_i = d_i.rank();
                let rank_next = d_next.rank();
                if rank_i + rank_next != dim {
                    return Err(AlgebraError::Internal(format!(
                        "exactness fails at step {} degree {}: {} + {} != {}",
                        i, deg, rank_i, rank_next, dim
                    )));
                }
            }
        }
        if self.finished {
            // The last syzygy module is zero: the final differential must be
            // injective in every degree of the window.
            if let Some(last) = self.steps.last() {
                let i = self.steps.len() - 1;
                for deg in 0..=self.jmax {
                    let d = assemble_map(
                        ring,
                        self.shifts_at(i),
                        &last.shifts,
                        &last.columns,
                        deg,
                    )?;
                    if d.rank() != free_module_dim(ring, &last.shifts, deg) {
                        return Err(AlgebraError::Internal(format!(
                            "finished resolution has kernel at final step, degree {}",
                            deg
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Graded Betti numbers with truncation bounds and per-column completeness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, u32), usize>,
    pub imax: usize,
    pub jmax: u32,
    pub column_complete: Vec<bool>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: u32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries
            .iter()
            .filter(|((ii, _), _)| *ii == i)
            .map(|(_, v)| v)
            .sum()
    }

    pub fn is_complete(&self, i: usize) -> bool {
        self.column_complete.get(i).copied().unwrap_or(false)
    }

    /// Entrywise equality over columns certified complete in both tables.
    pub fn equals_within_complete(&self, other: &BettiTable) -> bool {
        let imax = self.imax.min(other.imax);
        for i in 0..=imax {
            if !self.is_complete(i) || !other.is_complete(i) {
                continue;
            }
            let mut degrees: Vec<u32> = Vec::new();
            degrees.extend(self.entries.keys().filter(|(ii, _)| *ii == i).map(|(_, j)| *j));
            degrees.extend(other.entries.keys().filter(|(ii, _)| *ii == i).map(|(_, j)| *j));
            degrees.sort();
            degrees.dedup();
            for j in degrees {
                if self.get(i, j) != other.get(i, j) {
                    return false;
                }
            }
        }
        true
    }

    /// Entrywise `<=` over columns certified complete in both tables; on
    /// failure returns the offending `(i, j)`.
    pub fn dominated_by_within_complete(&self, other: &BettiTable) -> Result<(), (usize, u32)> {
        let imax = self.imax.min(other.imax);
        for (&(i, j), &v) in &self.entries {
            if i > imax || !self.is_complete(i) || !other.is_complete(i) {
                continue;
            }
            if v > other.get(i, j) {
                return Err((i, j));
            }
        }
        Ok(())
    }

    /// First entry violating `beta_(i, i+expected) = 0` for some
    /// `expected != linear_degree`, i.e. a witness against linearity.
    pub fn nonlinear_witness(&self, linear_degree: u32) -> Option<(usize, u32)> {
        for (&(i, j), &v) in &self.entries {
            if v > 0 && j != linear_degree + i as u32 {
                return Some((i, j));
            }
        }
        None
    }

    pub fn record(&self, presentation_hash: &str) -> BettiRecord {
        BettiRecord {
            imax: self.imax,
            jmax: self.jmax,
            triples: self
                .entries
                .iter()
                .filter(|(_, v)| **v > 0)
                .map(|(&(i, j), &v)| (i, j, v))
                .collect(),
            column_complete: self.column_complete.clone(),
            presentation_hash: presentation_hash.to_string(),
        }
    }
}

/// Machine-readable Betti table record.
#[derive(Debug, Clone, Serialize)]
pub struct BettiRecord {
    pub imax: usize,
    pub jmax: u32,
    pub triples: Vec<(usize, u32, usize)>,
    pub column_complete: Vec<bool>,
    pub presentation_hash: String,
}

/// Splits off free summands wherever a differential entry is a nonzero
/// constant, by exact row/column operations; the cokernel is unchanged.
pub fn prune_presentation(ring: &Quotient, pres: &ModulePresentation) -> ModulePresentation {
    let mut shifts = pres.ambient_shifts.clone();
    let mut columns: Vec<VecPoly> = pres
        .columns
        .iter()
        .map(|c| c.iter().map(|p| ring.nf(p)).collect())
        .collect();
    'outer: loop {
        for k in 0..columns.len() {
            for r in 0..shifts.len() {
                let entry = &columns[k][r];
                if entry.is_zero() || entry.homogeneous_degree() != Some(0) {
                    continue;
                }
                let alpha: Rational = entry.terms().next().unwrap().1.clone();
                let pivot_col = columns[k].clone();
                for (kk, col) in columns.iter_mut().enumerate() {
                    if kk == k || col[r].is_zero() {
                        continue;
                    }
                    let factor = col[r].scale(&alpha.recip());
                    for (rr, comp) in col.iter_mut().enumerate() {
                        *comp = ring.nf(&comp.sub(&factor.mul(&pivot_col[rr])));
                    }
                }
                columns.remove(k);
                for col in columns.iter_mut() {
                    col.remove(r);
                }
                shifts.remove(r);
                continue 'outer;
            }
        }
        break;
    }
    columns.retain(|c| c.iter().any(|p| !p.is_zero()));
    ModulePresentation { ambient_shifts: shifts, columns }
}

/// Bounds for a resolution: homological steps and an internal degree cap.
#[derive(Debug, Clone, Copy)]
pub struct Truncation {
    pub imax: usize,
    /// Explicit cap; `None` selects `regularity + imax` via the presenting
    /// polynomial ring.
    pub jmax: Option<u32>,
}

/// Regularity of the module over the free polynomial ring on the same
/// variables (quotient relations are adjoined to the presentation), read off
/// its finite minimal resolution: `max(shift - index)`.
pub fn polynomial_regularity(
    ring: &Quotient,
    pres: &ModulePresentation,
) -> Result<u32, AlgebraError> {
    let free = Quotient::free(ring.vars);
    let mut columns = pres.columns.clone();
    let rank = pres.ambient_shifts.len();
    for q in &ring.gb.gens {
        for r in 0..rank {
            let mut col = vec![Polynomial::zero(ring.vars); rank];
            col[r] = q.clone();
            columns.push(col);
        }
    }
    let lifted = ModulePresentation { ambient_shifts: pres.ambient_shifts.clone(), columns };
    // Over d variables the resolution stops after at most d steps.
    let res = resolve(&free, &lifted, ring.vars.count + 1, Some(u32::MAX))?;
    let mut reg = 0i64;
    for i in 0..=res.steps.len() {
        for &s in res.shifts_at(i) {
            reg = reg.max(s as i64 - i as i64);
        }
    }
    Ok(reg.max(0) as u32)
}

fn resolve(
    ring: &Quotient,
    pres: &ModulePresentation,
    imax: usize,
    jmax: Option<u32>,
) -> Result<FreeResolution, AlgebraError> {
    let pruned = prune_presentation(ring, pres);
    let jmax = match jmax {
        Some(j) => j,
        None => polynomial_regularity(ring, &pruned)? + imax as u32,
    };
    let first = minimalize_generators(ring, &pruned.ambient_shifts, pruned.columns.clone())?;
    let mut complete = vec![true];
    let mut steps: Vec<ResolutionStep> = Vec::new();
    let mut finished = false;

    let mut current: Vec<VecPoly> = first;
    let mut current_ambient = pruned.ambient_shifts.clone();
    for i in 1..=imax {
        let mut dropped = false;
        let mut kept: Vec<VecPoly> = Vec::new();
        let mut kept_shifts: Vec<u32> = Vec::new();
        for v in current {
            let deg = vector_degree(&current_ambient, &v)?.expect("nonzero generator");
            if deg > jmax {
                dropped = true;
            } else {
                kept_shifts.push(deg);
                kept.push(v);
            }
        }
        complete.push(!dropped && complete[i - 1]);
        if kept.is_empty() {
            finished = true;
            steps.push(ResolutionStep { shifts: kept_shifts, columns: kept });
            break;
        }
        steps.push(ResolutionStep { shifts: kept_shifts.clone(), columns: kept.clone() });
        if i == imax {
            break;
        }
        current = syzygies(ring, &current_ambient, &kept)?;
        current_ambient = kept_shifts;
    }
    // Columns beyond a finished resolution are complete by definition.
    while complete.len() <= imax {
        let last = *complete.last().unwrap();
        complete.push(last && finished);
    }

    Ok(FreeResolution {
        ambient_shifts: pruned.ambient_shifts,
        steps,
        imax,
        jmax,
        complete,
        finished,
    })
}

/// Minimal free resolution of the cokernel of `pres`, with its Betti table.
pub fn minimal_resolution(
    ring: &Quotient,
    pres: &ModulePresentation,
    trunc: Truncation,
) -> Result<(FreeResolution, BettiTable), AlgebraError> {
    let res = resolve(ring, pres, trunc.imax, trunc.jmax)?;
    res.check_minimality()?;
    let table = res.betti_table();
    Ok((res, table))
}

/// Betti table of an ideal viewed as a module: computed from the resolution
/// of `ring/(gens)` by the index shift `beta_i(I) = beta_(i+1)(ring/I)`.
pub fn ideal_betti_table(
    ring: &Quotient,
    gens: &[Polynomial],
    trunc: Truncation,
) -> Result<BettiTable, AlgebraError> {
    let pres = ModulePresentation::quotient_by_ideal(ring, gens);
    let (res, quotient_table) = minimal_resolution(
        ring,
        &pres,
        Truncation { imax: trunc.imax + 1, jmax: trunc.jmax },
    )?;
    let mut entries = BTreeMap::new();
    for (&(i, j), &v) in &quotient_table.entries {
        if i >= 1 && i - 1 <= trunc.imax {
            entries.insert((i - 1, j), v);
        }
    }
    let column_complete: Vec<bool> = (0..=trunc.imax)
        .map(|i| res.complete.get(i + 1).copied().unwrap_or(false))
        .collect();
    Ok(BettiTable { entries, imax: trunc.imax, jmax: res.jmax, column_complete })
}

/// Degreewise alternating-sum identity for finished resolutions: the Hilbert
/// function of the module equals the signed sum of shifted copies of the
/// ring's Hilbert function.
pub fn hilbert_alternating_sum_checks(
    ring: &Quotient,
    res: &FreeResolution,
    module_dims: &dyn Fn(u32) -> usize,
    hi: u32,
) -> Result<(), AlgebraError> {
    if !res.finished {
        return Err(AlgebraError::Internal(
            "alternating-sum identity needs a finished resolution".into(),
        ));
    }
    for deg in 0..=hi {
        let mut sum: i64 = 0;
        for i in 0..=res.steps.len() {
            let sign = if i % 2 == 0 { 1i64 } else { -1i64 };
            for &s in res.shifts_at(i) {
                if deg >= s {
                    sum += sign * ring.dim(deg - s) as i64;
                }
            }
        }
        let expected = module_dims(deg) as i64;
        if sum != expected {
            return Err(AlgebraError::Internal(format!(
                "alternating sum {} != module dimension {} in degree {}",
                sum, expected, deg
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::VarSet;
    use crate::parse::parse_polynomial;
    use crate::veronese::{t_poly, VeronesePresentation};

    fn veronese_square() -> (VeronesePresentation, Quotient) {
        let pres = VeronesePresentation::build(2, 2);
        let ring = pres.ring().clone();
        (pres, ring)
    }

    #[test]
    fn free_module_resolution_is_trivial() {
        let (_, ring) = veronese_square();
        let (res, table) = minimal_resolution(
            &ring,
            &ModulePresentation::free_rank_one(),
            Truncation { imax: 3, jmax: Some(4) },
        )
        .unwrap();
        assert!(res.finished);
        assert_eq!(table.get(0, 0), 1);
        for i in 1..=3 {
            assert_eq!(table.total(i), 0);
            assert!(table.is_complete(i));
        }
    }

    #[test]
    fn two_variable_quotient_has_short_resolution() {
        // ring/(t1, t3): Betti numbers 1, 2, 1 in internal degrees 0, 1, 2.
        let (pres, ring) = veronese_square();
        let gens = [t_poly(&pres, "t1"), t_poly(&pres, "t3")];
        let (res, table) = minimal_resolution(
            &ring,
            &ModulePresentation::quotient_by_ideal(&ring, &gens),
            Truncation { imax: 3, jmax: None },
        )
        .unwrap();
        assert!(res.finished);
        assert_eq!(table.get(0, 0), 1);
        assert_eq!(table.get(1, 1), 2);
        assert_eq!(table.get(2, 2), 1);
        assert_eq!(table.total(3), 0);
        res.check_composition(&ring).unwrap();
        res.check_minimality().unwrap();
        res.check_exactness(&ring).unwrap();
        // Alternating sum reproduces the quotient dimensions 1, 1, 0, ...
        let q = ring.extend(&gens);
        hilbert_alternating_sum_checks(&ring, &res, &|d| q.dim(d), res.jmax).unwrap();
    }

    #[test]
    fn residue_field_over_quadric_hypersurface() {
        // beta_i(K) = 1, 3, 4, 4 over the coordinate ring of the quadric:
        // the expansion of (1+z)^2/(1-z).
        let (pres, ring) = veronese_square();
        let (res, table) = minimal_resolution(
            &ring,
            &ModulePresentation::quotient_by_ideal(&ring, &pres.irrelevant_ideal()),
            Truncation { imax: 3, jmax: None },
        )
        .unwrap();
        assert_eq!(
            (0..=3).map(|i| table.total(i)).collect::<Vec<_>>(),
            vec![1, 3, 4, 4]
        );
        // Linear resolution: beta_(i,j) = 0 unless j = i.
        for (&(i, j), &v) in &table.entries {
            if v > 0 {
                assert_eq!(j, i as u32);
            }
        }
        res.check_composition(&ring).unwrap();
        res.check_exactness(&ring).unwrap();
        assert!(table.is_complete(3));
    }

    #[test]
    fn koszul_complex_over_polynomial_ring() {
        let vars = VarSet::x(3);
        let ring = Quotient::free(vars);
        let gens: Vec<Polynomial> = (0..3).map(|i| Polynomial::variable(vars, i)).collect();
        let (res, table) = minimal_resolution(
            &ring,
            &ModulePresentation::quotient_by_ideal(&ring, &gens),
            Truncation { imax: 4, jmax: None },
        )
        .unwrap();
        assert!(res.finished);
        assert_eq!(
            (0..=4).map(|i| table.total(i)).collect::<Vec<_>>(),
            vec![1, 3, 3, 1, 0]
        );
    }

    #[test]
    fn prune_splits_constant_entries() {
        let vars = VarSet::x(2);
        let ring = Quotient::free(vars);
        let p = |s: &str| parse_polynomial(s, vars).unwrap();
        // F_0 = A(0) + A(-1); the column (x1, 1) of degree 1 splits off the
        // second summand, leaving the zero presentation of A(0)-ish rank 1.
        let pres = ModulePresentation {
            ambient_shifts: vec![0, 1],
            columns: vec![vec![p("x1"), Polynomial::one(vars)]],
        };
        let pruned = prune_presentation(&ring, &pres);
        assert_eq!(pruned.ambient_shifts, vec![0]);
        assert!(pruned.columns.is_empty());
    }

    #[test]
    fn ideal_betti_shift() {
        let (pres, ring) = veronese_square();
        let gens = [t_poly(&pres, "t1"), t_poly(&pres, "t3")];
        let table = ideal_betti_table(&ring, &gens, Truncation { imax: 2, jmax: None }).unwrap();
        assert_eq!(table.get(0, 1), 2);
        assert_eq!(table.get(1, 2), 1);
        assert_eq!(table.total(2), 0);
    }

    #[test]
    fn polynomial_regularity_of_complete_intersection() {
        // (t2^2 - t1 t3, t1^2, t3^2) is a regular sequence of quadrics in S:
        // regularity 3.
        let (pres, ring) = veronese_square();
        let m = ModulePresentation::quotient_by_ideal(
            &ring,
            &[t_poly(&pres, "t1^2"), t_poly(&pres, "t3^2")],
        );
        let reg = polynomial_regularity(&ring, &m).unwrap();
        assert_eq!(reg, 3);
    }
}
