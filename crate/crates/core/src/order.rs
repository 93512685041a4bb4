//! Term orders on monomials.

use std::cmp::Ordering;

use crate::error::AlgebraError;
use crate::monomial::Monomial;

/// A multiplicative total order on monomials of a fixed variable count.
///
/// * `Lex` — pure lexicographic, `x1 > x2 > ...`.
/// * `DegRevLex` — total degree first, ties by reverse lexicographic
///   (smaller exponent on the last distinguishing variable wins).
/// * `Elimination` — block order: the first `block` variables are compared
///   first (with `outer`), ties by the remaining variables (with `inner`).
///   Any monomial involving the first block dominates every monomial that
///   avoids it, which is what elimination needs.
/// * `VeroneseCompatible` — compares t-monomials by the `DegRevLex` order of
///   their images in the ambient x-ring, ties by lex on t-exponents. This is
///   a term order on `S` compatible with the degrevlex order on `R`.
/// * `Permuted` — applies a variable priority permutation before comparing:
///   `perm[k]` is the variable that plays the role of position `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermOrder {
    Lex,
    DegRevLex,
    Elimination {
        block: usize,
        outer: Box<TermOrder>,
        inner: Box<TermOrder>,
    },
    VeroneseCompatible { images: Vec<Monomial> },
    Permuted { perm: Vec<usize>, inner: Box<TermOrder> },
}

impl TermOrder {
    /// Standard elimination order discarding the first `block` variables,
    /// degrevlex within each block.
    pub fn eliminate_first(block: usize) -> Self {
        TermOrder::Elimination {
            block,
            outer: Box::new(TermOrder::DegRevLex),
            inner: Box::new(TermOrder::DegRevLex),
        }
    }

    /// Compares two monomials, checking that variable counts agree.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering, AlgebraError> {
        if a.nvars() != b.nvars() {
            return Err(AlgebraError::DimensionMismatch { expected: a.nvars(), got: b.nvars() });
        }
        Ok(self.cmp_unchecked(a, b))
    }

    /// Comparison assuming equal variable counts.
    pub fn cmp_unchecked(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Lex => cmp_lex(a.exps(), b.exps()),
            TermOrder::DegRevLex => cmp_degrevlex(a.exps(), b.exps()),
            TermOrder::Elimination { block, outer, inner } => {
                let (a1, a2) = split(a, *block);
                let (b1, b2) = split(b, *block);
                match outer.cmp_unchecked(&a1, &b1) {
                    Ordering::Equal => inner.cmp_unchecked(&a2, &b2),
                    ord => ord,
                }
            }
            TermOrder::VeroneseCompatible { images } => {
                let ia = apply_images(a, images);
                let ib = apply_images(b, images);
                match cmp_degrevlex(ia.exps(), ib.exps()) {
                    Ordering::Equal => cmp_lex(a.exps(), b.exps()),
                    ord => ord,
                }
            }
            TermOrder::Permuted { perm, inner } => {
                let pa: Vec<u32> = perm.iter().map(|&k| a.exp(k)).collect();
                let pb: Vec<u32> = perm.iter().map(|&k| b.exp(k)).collect();
                inner.cmp_unchecked(&Monomial::new(pa), &Monomial::new(pb))
            }
        }
    }

    pub fn max<'m>(&self, a: &'m Monomial, b: &'m Monomial) -> &'m Monomial {
        if self.cmp_unchecked(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

fn cmp_lex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

fn cmp_degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // At equal degree the monomial with the smaller exponent on the last
    // distinguishing variable is the larger one.
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord.reverse(),
        }
    }
    Ordering::Equal
}

fn split(m: &Monomial, block: usize) -> (Monomial, Monomial) {
    let exps = m.exps();
    (
        Monomial::new(exps[..block].to_vec()),
        Monomial::new(exps[block..].to_vec()),
    )
}

/// Image of a t-monomial under `t_i -> images[i]` (a monomial in the x-ring).
pub fn apply_images(m: &Monomial, images: &[Monomial]) -> Monomial {
    let nx = images[0].nvars();
    let mut exps = vec![0u32; nx];
    for (i, &e) in m.exps().iter().enumerate() {
        if e > 0 {
            for (k, &img_e) in images[i].exps().iter().enumerate() {
                exps[k] += e * img_e;
            }
        }
    }
    Monomial::new(exps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::degree_monomials_lex_desc;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn degrevlex_basics() {
        let o = TermOrder::DegRevLex;
        // x1 > x2 (forced by variable priority)
        assert_eq!(o.compare(&m(&[1, 0]), &m(&[0, 1])).unwrap(), Ordering::Greater);
        // x2^2 > x1 x3 at equal degree: smaller last-variable exponent wins
        assert_eq!(
            o.compare(&m(&[0, 2, 0]), &m(&[1, 0, 1])).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn lex_basics() {
        let o = TermOrder::Lex;
        // x1 x3 > x2^2
        assert_eq!(
            o.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn mismatched_counts_error() {
        let o = TermOrder::DegRevLex;
        assert!(o.compare(&m(&[1, 0]), &m(&[1, 0, 0])).is_err());
    }

    #[test]
    fn elimination_dominance() {
        // Joint ring [x1, t1, t2]: any monomial containing x1 beats any without.
        let o = TermOrder::eliminate_first(1);
        assert_eq!(
            o.compare(&m(&[1, 0, 0]), &m(&[0, 3, 3])).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn veronese_compatible_is_multiplicative() {
        // Images of (n=2, c=2): t1 -> x1^2, t2 -> x1 x2, t3 -> x2^2.
        let images = degree_monomials_lex_desc(2, 2);
        let o = TermOrder::VeroneseCompatible { images };
        let mons = degree_monomials_lex_desc(3, 2);
        for a in &mons {
            for b in &mons {
                let ord = o.cmp_unchecked(a, b);
                if ord == Ordering::Equal {
                    assert_eq!(a, b);
                }
                for w in degree_monomials_lex_desc(3, 1) {
                    let aw = a.mul(&w);
                    let bw = b.mul(&w);
                    assert_eq!(o.cmp_unchecked(&aw, &bw), ord);
                }
            }
        }
    }

    #[test]
    fn permuted_priority() {
        // Priority x2 > x1: under the permuted lex order x2 beats x1.
        let o = TermOrder::Permuted { perm: vec![1, 0], inner: Box::new(TermOrder::Lex) };
        assert_eq!(o.compare(&m(&[0, 1]), &m(&[1, 0])).unwrap(), Ordering::Greater);
    }
}
