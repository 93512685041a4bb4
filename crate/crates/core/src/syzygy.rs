//! Syzygies of module presentations, computed by Groebner bases of an
//! augmented free module.
//!
//! To find the relations among columns `g_1..g_k` of a free module `F` over
//! `P/Q`, we work over `P` in `F (+) P^k` with the vectors `(g_i, e_i)`
//! together with `(q e_r, 0)` for every quotient relation `q` and position
//! `r`, under a block order in which every `F`-monomial dominates every tag
//! monomial. Basis elements with vanishing `F`-part carry exactly the
//! syzygies in their tags; projecting them modulo `Q` yields a generating
//! set over the quotient, which is certified complete by the elimination
//! property of the order.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::One;

use crate::error::AlgebraError;
use crate::matrix::{QMatrix, RowSpace};
use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::poly::{Polynomial, Rational};
use crate::ring::Quotient;

/// An element of a free module: one polynomial per position.
pub type VecPoly = Vec<Polynomial>;

/// Degree of a homogeneous vector with respect to position shifts; `None`
/// for the zero vector.
pub fn vector_degree(shifts: &[u32], v: &VecPoly) -> Result<Option<u32>, AlgebraError> {
    let mut deg = None;
    for (i, comp) in v.iter().enumerate() {
        if comp.is_zero() {
            continue;
        }
        let d = comp.homogeneous_degree().ok_or_else(|| {
            AlgebraError::NonHomogeneous(format!("component {} of a module vector", i))
        })? + shifts[i];
        match deg {
            None => deg = Some(d),
            Some(existing) if existing == d => {}
            Some(existing) => {
                return Err(AlgebraError::NonHomogeneous(format!(
                    "module vector mixes degrees {} and {}",
                    existing, d
                )))
            }
        }
    }
    Ok(deg)
}

struct ModOrder {
    ring_order: TermOrder,
    /// Positions below this bound dominate the rest (the tag block).
    front: usize,
}

impl ModOrder {
    fn cmp(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        let fa = a.0 < self.front;
        let fb = b.0 < self.front;
        match (fa, fb) {
            (true, false) => return Ordering::Greater,
            (false, true) => return Ordering::Less,
            _ => {}
        }
        match self.ring_order.cmp_unchecked(a.1, b.1) {
            Ordering::Equal => b.0.cmp(&a.0), // smaller position wins
            ord => ord,
        }
    }
}

#[derive(Clone)]
struct ModVec {
    comps: Vec<Polynomial>,
}

impl ModVec {
    fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    fn leading(&self, order: &ModOrder) -> Option<(usize, Monomial, Rational)> {
        let mut best: Option<(usize, Monomial, Rational)> = None;
        for (pos, comp) in self.comps.iter().enumerate() {
            if let Some((m, c)) = comp.leading_term(&order.ring_order) {
                let candidate = (pos, m.clone(), c.clone());
                best = match best {
                    None => Some(candidate),
                    Some(cur) => {
                        if order.cmp((candidate.0, &candidate.1), (cur.0, &cur.1))
                            == Ordering::Greater
                        {
                            Some(candidate)
                        } else {
                            Some(cur)
                        }
                    }
                };
            }
        }
        best
    }

    fn sub_scaled(&self, other: &ModVec, mono: &Monomial, coeff: &Rational) -> ModVec {
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.sub(&b.mul_term(mono, coeff)))
            .collect();
        ModVec { comps }
    }

    fn scale(&self, c: &Rational) -> ModVec {
        ModVec { comps: self.comps.iter().map(|p| p.scale(c)).collect() }
    }

    fn monic(&self, order: &ModOrder) -> ModVec {
        match self.leading(order) {
            None => self.clone(),
            Some((_, _, c)) => self.scale(&c.recip()),
        }
    }
}

/// Full normal form of `f` against `basis` in the module sense: a term is
/// reducible when some basis leading term sits in the same position with a
/// dividing monomial.
fn mod_reduce(f: &ModVec, basis: &[ModVec], order: &ModOrder) -> ModVec {
    let nvars = f
        .comps
        .iter()
        .map(|c| c.vars())
        .next()
        .expect("nonempty vector");
    let mut remainder = ModVec { comps: vec![Polynomial::zero(nvars); f.comps.len()] };
    let mut work = f.clone();
    'outer: while let Some((pos, m, c)) = work.leading(order) {
        for g in basis {
            if let Some((gpos, gm, gc)) = g.leading(order) {
                if gpos == pos {
                    if let Some(q) = m.checked_div(&gm) {
                        let factor = &c / &gc;
                        work = work.sub_scaled(g, &q, &factor);
                        continue 'outer;
                    }
                }
            }
        }
        // Irreducible leading term: move it to the remainder.
        remainder.comps[pos].add_term(m.clone(), c.clone());
        let single = Polynomial::from_term(work.comps[pos].vars(), m, c);
        work.comps[pos] = work.comps[pos].sub(&single);
    }
    remainder
}

fn mod_spair(f: &ModVec, g: &ModVec, order: &ModOrder) -> Option<ModVec> {
    let (fp, fm, fc) = f.leading(order)?;
    let (gp, gm, gc) = g.leading(order)?;
    if fp != gp {
        return None;
    }
    let lcm = fm.lcm(&gm);
    let fq = lcm.checked_div(&fm).unwrap();
    let gq = lcm.checked_div(&gm).unwrap();
    let one = Rational::one();
    let scaled_f = ModVec {
        comps: f.comps.iter().map(|p| p.mul_term(&fq, &(&one / &fc))).collect(),
    };
    Some(scaled_f.sub_scaled(g, &gq, &(&one / &gc)))
}

fn module_groebner(mut basis: Vec<ModVec>, order: &ModOrder) -> Vec<ModVec> {
    basis.retain(|v| !v.is_zero());
    for v in basis.iter_mut() {
        *v = v.monic(order);
    }
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let add_pairs =
        |pairs: &mut BTreeSet<(u32, usize, usize)>, basis: &[ModVec], new_idx: usize| {
            let Some((np, nm, _)) = basis[new_idx].leading(order) else { return };
            for (k, g) in basis.iter().enumerate().take(new_idx) {
                if let Some((gp, gm, _)) = g.leading(order) {
                    if gp == np {
                        pairs.insert((nm.lcm(&gm).degree(), k, new_idx));
                    }
                }
            }
        };
    for i in 0..basis.len() {
        add_pairs(&mut pairs, &basis, i);
    }
    while let Some(&(deg, i, j)) = pairs.iter().next() {
        pairs.remove(&(deg, i, j));
        let Some(s) = mod_spair(&basis[i], &basis[j], order) else { continue };
        let nf = mod_reduce(&s, &basis, order);
        if !nf.is_zero() {
            basis.push(nf.monic(order));
            add_pairs(&mut pairs, &basis, basis.len() - 1);
        }
    }
    basis
}

/// Generators of the syzygy module `{v : sum v_i g_i = 0}` of `columns`
/// inside the free module with the given position `shifts`, over the
/// quotient `ring`. Columns must be nonzero and homogeneous. The result is a
/// minimal homogeneous generating set.
pub fn syzygies(
    ring: &Quotient,
    shifts: &[u32],
    columns: &[VecPoly],
) -> Result<Vec<VecPoly>, AlgebraError> {
    if columns.is_empty() {
        return Ok(Vec::new());
    }
    let rank = shifts.len();
    let k = columns.len();
    let vars = ring.vars;
    for col in columns {
        assert_eq!(col.len(), rank, "column length must match ambient rank");
        if vector_degree(shifts, col)?.is_none() {
            return Err(AlgebraError::Internal("zero column in syzygy input".into()));
        }
    }

    let order = ModOrder { ring_order: TermOrder::DegRevLex, front: rank };
    let total = rank + k;
    let mut augmented: Vec<ModVec> = Vec::new();
    for (i, col) in columns.iter().enumerate() {
        let mut comps = vec![Polynomial::zero(vars); total];
        comps[..rank].clone_from_slice(col);
        comps[rank + i] = Polynomial::one(vars);
        augmented.push(ModVec { comps });
    }
    for q in &ring.gb.gens {
        for r in 0..rank {
            let mut comps = vec![Polynomial::zero(vars); total];
            comps[r] = q.clone();
            augmented.push(ModVec { comps });
        }
    }

    let gb = module_groebner(augmented, &order);
    let mut raw: Vec<VecPoly> = Vec::new();
    for v in &gb {
        if v.comps[..rank].iter().all(|c| c.is_zero()) {
            let tags: VecPoly = v.comps[rank..].iter().map(|c| ring.nf(c)).collect();
            if tags.iter().any(|c| !c.is_zero()) {
                raw.push(tags);
            }
        }
    }

    let col_shifts: Vec<u32> = columns
        .iter()
        .map(|c| vector_degree(shifts, c).unwrap().unwrap())
        .collect();
    minimalize_generators(ring, &col_shifts, raw)
}

/// Degree-`deg` piece dimension of the submodule generated by `vectors`
/// inside the free module with the given `shifts`.
pub fn span_dim(
    ring: &Quotient,
    shifts: &[u32],
    vectors: &[VecPoly],
    deg: u32,
) -> Result<usize, AlgebraError> {
    let mut space = RowSpace::new(free_module_dim(ring, shifts, deg));
    for v in vectors {
        let Some(d) = vector_degree(shifts, v)? else { continue };
        if d > deg {
            continue;
        }
        for u in ring.std_monomials(deg - d) {
            let scaled: VecPoly = v.iter().map(|c| ring.nf(&c.mul_monomial(&u))).collect();
            space.insert(vector_coords(ring, shifts, &scaled, deg)?);
        }
    }
    Ok(space.dim())
}

/// Selects a minimal generating subset of `vectors` (vectors in the free
/// module with `shifts`), degree by degree: at each degree the survivors
/// extend the span of lower-degree multiples.
pub fn minimalize_generators(
    ring: &Quotient,
    shifts: &[u32],
    vectors: Vec<VecPoly>,
) -> Result<Vec<VecPoly>, AlgebraError> {
    let mut with_deg: Vec<(u32, VecPoly)> = Vec::new();
    for v in vectors {
        if let Some(d) = vector_degree(shifts, &v)? {
            with_deg.push((d, v));
        }
    }
    with_deg.sort_by(|a, b| {
        a.0.cmp(&b.0).then_with(|| render_vec(&a.1).cmp(&render_vec(&b.1)))
    });
    let degrees: BTreeSet<u32> = with_deg.iter().map(|(d, _)| *d).collect();
    let mut selected: Vec<VecPoly> = Vec::new();
    for deg in degrees {
        let dim = free_module_dim(ring, shifts, deg);
        let mut covered = RowSpace::new(dim);
        for (d, v) in &with_deg {
            if *d >= deg {
                continue;
            }
            for u in ring.std_monomials(deg - d) {
                let scaled: VecPoly = v.iter().map(|c| ring.nf(&c.mul_monomial(&u))).collect();
                covered.insert(vector_coords(ring, shifts, &scaled, deg)?);
            }
        }
        for (d, v) in &with_deg {
            if *d != deg {
                continue;
            }
            let coords = vector_coords(ring, shifts, v, deg)?;
            if covered.insert(coords) {
                selected.push(v.clone());
            }
        }
    }
    Ok(selected)
}

/// Dimension of the degree-`deg` piece of the free module with `shifts`.
pub fn free_module_dim(ring: &Quotient, shifts: &[u32], deg: u32) -> usize {
    shifts
        .iter()
        .map(|&s| if deg >= s { ring.dim(deg - s) } else { 0 })
        .sum()
}

/// Coordinates of a homogeneous degree-`deg` vector in the concatenated
/// standard-monomial bases of the free module pieces.
pub fn vector_coords(
    ring: &Quotient,
    shifts: &[u32],
    v: &VecPoly,
    deg: u32,
) -> Result<Vec<Rational>, AlgebraError> {
    let mut out = Vec::new();
    for (i, comp) in v.iter().enumerate() {
        if deg >= shifts[i] {
            out.extend(ring.coords(comp, deg - shifts[i])?);
        } else if !comp.is_zero() {
            return Err(AlgebraError::NonHomogeneous(
                "component below its shift".into(),
            ));
        }
    }
    Ok(out)
}

/// Rebuilds a vector from coordinates produced by [`vector_coords`].
pub fn vector_from_coords(
    ring: &Quotient,
    shifts: &[u32],
    deg: u32,
    coords: &[Rational],
) -> VecPoly {
    let mut out = Vec::with_capacity(shifts.len());
    let mut offset = 0;
    for &s in shifts {
        if deg >= s {
            let d = ring.dim(deg - s);
            out.push(ring.from_coords(deg - s, &coords[offset..offset + d]));
            offset += d;
        } else {
            out.push(Polynomial::zero(ring.vars));
        }
    }
    debug_assert_eq!(offset, coords.len());
    out
}

/// Matrix of the presentation map `(+)_j A(-D_j) -> (+)_i A(-s_i)` sending
/// the j-th basis element to `columns[j]`, restricted to total degree `deg`.
pub fn assemble_map(
    ring: &Quotient,
    target_shifts: &[u32],
    col_shifts: &[u32],
    columns: &[VecPoly],
    deg: u32,
) -> Result<QMatrix, AlgebraError> {
    let rows = free_module_dim(ring, target_shifts, deg);
    let cols = free_module_dim(ring, col_shifts, deg);
    let mut m = QMatrix::zero(rows, cols);
    let mut col_offset = 0;
    for (j, col) in columns.iter().enumerate() {
        if deg < col_shifts[j] {
            continue;
        }
        let source_deg = deg - col_shifts[j];
        for u in ring.std_monomials(source_deg).iter() {
            let image: VecPoly = col.iter().map(|c| ring.nf(&c.mul_monomial(u))).collect();
            let coords = vector_coords(ring, target_shifts, &image, deg)?;
            let col_index = col_offset;
            for (row, val) in coords.into_iter().enumerate() {
                m.set(row, col_index, val);
            }
            col_offset += 1;
        }
    }
    debug_assert_eq!(col_offset, cols);
    Ok(m)
}

fn render_vec(v: &VecPoly) -> String {
    let parts: Vec<String> = v.iter().map(|p| p.render()).collect();
    format!("({})", parts.join(", "))
}
