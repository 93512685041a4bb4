//! Monomials as dense exponent vectors with a cached total degree.

use std::fmt;

use crate::error::AlgebraError;

/// Which family of variables a ring uses. `X` is the ambient polynomial ring
/// `R = K[x1..xn]`, `T` the presentation ring `S = K[t1..td]`, and `Joint`
/// the product ring used for elimination, with the x-block first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    X,
    T,
    Joint { x_count: usize },
}

/// A variable set: the kind plus how many variables there are.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet {
    pub kind: VarKind,
    pub count: usize,
}

impl VarSet {
    pub fn x(n: usize) -> Self {
        VarSet { kind: VarKind::X, count: n }
    }

    pub fn t(d: usize) -> Self {
        VarSet { kind: VarKind::T, count: d }
    }

    pub fn joint(n: usize, d: usize) -> Self {
        VarSet { kind: VarKind::Joint { x_count: n }, count: n + d }
    }

    /// Printable name of variable `i` (0-based).
    pub fn var_name(&self, i: usize) -> String {
        match self.kind {
            VarKind::X => format!("x{}", i + 1),
            VarKind::T => format!("t{}", i + 1),
            VarKind::Joint { x_count } => {
                if i < x_count {
                    format!("x{}", i + 1)
                } else {
                    format!("t{}", i - x_count + 1)
                }
            }
        }
    }
}

/// A monomial: exponent vector plus cached total degree. The variable set is
/// carried by the enclosing polynomial; a bare monomial only knows its length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars], degree: 0 }
    }

    /// The monomial `x_i` (0-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps, degree: 1 }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Monomial { exps, degree: self.degree + other.degree }
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        if !other.divides(self) {
            return None;
        }
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a - b)
            .collect();
        Some(Monomial::new(exps))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.degree <= other.degree
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial::new(exps)
    }

    pub fn gcd_is_one(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Replaces one occurrence of variable `j` by variable `i` (the Borel
    /// exchange `m x_i / x_j`). Requires `x_j` to divide the monomial.
    pub fn exchange(&self, j: usize, i: usize) -> Monomial {
        assert!(self.exps[j] > 0, "exchange requires the divided variable");
        let mut exps = self.exps.clone();
        exps[j] -= 1;
        exps[i] += 1;
        Monomial::new(exps)
    }

    pub fn check_nvars(&self, expected: usize) -> Result<(), AlgebraError> {
        if self.nvars() != expected {
            return Err(AlgebraError::DimensionMismatch { expected, got: self.nvars() });
        }
        Ok(())
    }

    /// Renders against a variable set, e.g. `x1^2*x3`.
    pub fn render(&self, vars: &VarSet) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 1 {
                parts.push(vars.var_name(i));
            } else if e > 1 {
                parts.push(format!("{}^{}", vars.var_name(i), e));
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("v{}", i + 1)
                } else {
                    format!("v{}^{}", i + 1, e)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// All degree-`c` monomials in `n` variables, sorted lex-descending, together
/// with their count `binomial(n+c-1, n-1)`.
pub fn degree_monomials_lex_desc(n: usize, c: u32) -> Vec<Monomial> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fill_lex_desc(&mut out, &mut current, 0, c);
    out
}

fn fill_lex_desc(out: &mut Vec<Monomial>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Monomial::new(current.clone()));
        current[pos] = 0;
        return;
    }
    // Larger exponent on the earlier variable is lex-larger.
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill_lex_desc(out, current, pos + 1, remaining - e);
        current[pos] = 0;
    }
}

/// All monomials of total degree exactly `deg` in `nvars` variables,
/// lex-descending.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    degree_monomials_lex_desc(nvars, deg)
}
