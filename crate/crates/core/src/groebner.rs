//! Buchberger's algorithm, normal forms, initial ideals, and elimination.
//!
//! Computations in a quotient ring `S/Q` are always realized by lifting to
//! `S` and adjoining a fixed reduced Groebner basis of `Q`; there is no
//! separate quotient-ring division code.

use std::collections::BTreeSet;

use crate::monomial::{Monomial, VarSet};
use crate::order::TermOrder;
use crate::poly::Polynomial;

/// A reduced Groebner basis. `gens` always contains the combined reduced
/// basis; when `quotient` is present it records the quotient relations that
/// were adjoined to the input.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub order: TermOrder,
    pub gens: Vec<Polynomial>,
    pub quotient: Option<Vec<Polynomial>>,
}

impl GroebnerBasis {
    /// Leading monomials of the reduced basis (the minimal generators of the
    /// initial ideal).
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gens
            .iter()
            .filter_map(|g| g.leading_monomial(&self.order).cloned())
            .collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        normal_form_with(f, &self.gens, &self.order)
    }

    /// Membership of `f` in the ideal (in the quotient image when relations
    /// are present).
    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn vars(&self) -> Option<VarSet> {
        self.gens.first().map(|g| g.vars())
    }
}

/// Full normal form of `f` against `basis`: no remaining term is divisible by
/// any basis leading monomial. Deterministic: the first divisor in slice
/// order is used at every step.
pub fn normal_form_with(f: &Polynomial, basis: &[Polynomial], order: &TermOrder) -> Polynomial {
    let mut remainder = Polynomial::zero(f.vars());
    let mut work = f.clone();
    while !work.is_zero() {
        let (lm, lc) = {
            let (m, c) = work.leading_term(order).unwrap();
            (m.clone(), c.clone())
        };
        let mut reduced = false;
        for g in basis {
            let glm = match g.leading_monomial(order) {
                Some(m) => m,
                None => continue,
            };
            if let Some(q) = lm.checked_div(glm) {
                let glc = g.leading_term(order).unwrap().1.clone();
                let factor = &lc / &glc;
                work = work.sub(&g.mul_term(&q, &factor));
                reduced = true;
                break;
            }
        }
        if !reduced {
            remainder.add_term(lm.clone(), lc.clone());
            let single = Polynomial::from_term(f.vars(), lm, lc);
            work = work.sub(&single);
        }
    }
    remainder
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &TermOrder) -> Polynomial {
    let (fm, fc) = f.leading_term(order).unwrap();
    let (gm, gc) = g.leading_term(order).unwrap();
    let lcm = fm.lcm(gm);
    let fq = lcm.checked_div(fm).unwrap();
    let gq = lcm.checked_div(gm).unwrap();
    let finv = fc.recip();
    let ginv = gc.recip();
    f.mul_term(&fq, &finv).sub(&g.mul_term(&gq, &ginv))
}

/// Reduced Groebner basis of the ideal generated by `gens` (in the quotient
/// ring when `quotient` relations are supplied; the relations are adjoined in
/// the lift). Pair selection: smallest lcm degree first, ties by generator
/// index, which makes the output independent of reduction incidentals.
pub fn buchberger(
    gens: &[Polynomial],
    order: &TermOrder,
    quotient: Option<&[Polynomial]>,
) -> GroebnerBasis {
    let mut input: Vec<Polynomial> = Vec::new();
    if let Some(q) = quotient {
        input.extend(q.iter().cloned());
    }
    input.extend(gens.iter().cloned());

    let mut basis: Vec<Polynomial> = Vec::new();
    for g in input {
        if !g.is_zero() {
            basis.push(g.monic(order));
        }
    }

    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in 0..i {
            let lcm = basis[i]
                .leading_monomial(order)
                .unwrap()
                .lcm(basis[j].leading_monomial(order).unwrap());
            pairs.insert((lcm.degree(), j, i));
        }
    }

    while let Some(&(deg, i, j)) = pairs.iter().next() {
        pairs.remove(&(deg, i, j));
        done.insert((i, j));
        let fi = basis[i].leading_monomial(order).unwrap().clone();
        let fj = basis[j].leading_monomial(order).unwrap().clone();
        // First criterion: coprime leading monomials.
        if fi.gcd_is_one(&fj) {
            continue;
        }
        let lcm = fi.lcm(&fj);
        // Second (chain) criterion.
        let mut skip = false;
        for (k, g) in basis.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            if g.leading_monomial(order).unwrap().divides(&lcm)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
            {
                skip = true;
                break;
            }
        }
        if skip {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let nf = normal_form_with(&s, &basis, order);
        if !nf.is_zero() {
            let new_idx = basis.len();
            basis.push(nf.monic(order));
            for k in 0..new_idx {
                let lcm = basis[new_idx]
                    .leading_monomial(order)
                    .unwrap()
                    .lcm(basis[k].leading_monomial(order).unwrap());
                pairs.insert((lcm.degree(), k, new_idx));
            }
        }
    }

    let reduced = interreduce(basis, order);
    GroebnerBasis {
        order: order.clone(),
        gens: reduced,
        quotient: quotient.map(|q| q.to_vec()),
    }
}

/// Turns a Groebner basis into the reduced one: minimal leading monomials,
/// fully reduced tails, monic, sorted ascending by leading monomial.
fn interreduce(mut basis: Vec<Polynomial>, order: &TermOrder) -> Vec<Polynomial> {
    basis.retain(|g| !g.is_zero());
    // Drop generators whose leading monomial another one divides.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let lmi = basis[i].leading_monomial(order).unwrap().clone();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let lmj = basis[j].leading_monomial(order).unwrap();
            if lmj.divides(&lmi) && (lmi != *lmj || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<Polynomial> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();
    // Reduce each tail against the others until stable.
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter_map(|(j, g)| (j != i).then(|| g.clone()))
                .collect();
            let nf = normal_form_with(&minimal[i], &others, order).monic(order);
            if nf != minimal[i] {
                minimal[i] = nf;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    minimal.retain(|g| !g.is_zero());
    minimal.sort_by(|a, b| {
        order.cmp_unchecked(
            a.leading_monomial(order).unwrap(),
            b.leading_monomial(order).unwrap(),
        )
    });
    minimal
}

/// Minimal monomial generators of the initial ideal of `(gens)`.
pub fn initial_ideal(
    gens: &[Polynomial],
    order: &TermOrder,
    quotient: Option<&[Polynomial]>,
) -> Vec<Monomial> {
    buchberger(gens, order, quotient).leading_monomials()
}

/// Elimination: `gens` live in a joint ring whose first `drop_count`
/// variables are discarded; returns a reduced Groebner basis (degrevlex) of
/// the elimination ideal in the remaining variables.
pub fn eliminate(gens: &[Polynomial], drop_count: usize, kept: VarSet) -> Vec<Polynomial> {
    let order = TermOrder::eliminate_first(drop_count);
    let gb = buchberger(gens, &order, None);
    let mut kept_gens = Vec::new();
    for g in &gb.gens {
        let pure = g
            .terms()
            .all(|(m, _)| m.exps()[..drop_count].iter().all(|&e| e == 0));
        if pure {
            let total = g.vars().count;
            let map: Vec<usize> = (0..total)
                .map(|i| if i >= drop_count { i - drop_count } else { usize::MAX })
                .collect();
            // Safe: no term touches the dropped block.
            let mut out = Polynomial::zero(kept);
            for (m, c) in g.terms() {
                let mut exps = vec![0u32; kept.count];
                for (i, &e) in m.exps().iter().enumerate() {
                    if e > 0 {
                        exps[map[i]] += e;
                    }
                }
                out.add_term(Monomial::new(exps), c.clone());
            }
            kept_gens.push(out);
        }
    }
    let gb = buchberger(&kept_gens, &TermOrder::DegRevLex, None);
    gb.gens
}
