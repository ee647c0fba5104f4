//! Sparse multivariate polynomials over an exact coefficient ring.
//!
//! Representation: map from exponent vector (length `nvars`) to nonzero
//! coefficient. The map is a `BTreeMap`, so term iteration is deterministic
//! (ascending lexicographic on exponent vectors) and printing is canonical.

use crate::coeff::{displays_negative, Coeff, Ring};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("mismatched variable count or ring")]
    ArityMismatch,
    #[error("term budget exceeded")]
    BudgetExceeded,
}

/// Sparse polynomial; the zero polynomial is the empty term map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Coeff>,
}

impl Polynomial {
    pub fn zero(ring: Ring, nvars: usize) -> Self {
        Polynomial {
            ring,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: Ring, nvars: usize, c: Coeff) -> Self {
        let mut p = Self::zero(ring, nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(ring: Ring, nvars: usize) -> Self {
        let c = ring.one();
        Self::constant(ring, nvars, c)
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn variable(ring: Ring, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0u32; nvars];
        e[i] = 1;
        let c = ring.one();
        Self::monomial(ring, nvars, e, c)
    }

    pub fn monomial(ring: Ring, nvars: usize, exps: Vec<u32>, c: Coeff) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(ring, nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(
        ring: Ring,
        nvars: usize,
        items: impl IntoIterator<Item = (Vec<u32>, Coeff)>,
    ) -> Self {
        let mut p = Self::zero(ring, nvars);
        for (e, c) in items {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Coeff)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.terms.keys()
    }

    pub fn coeff(&self, exps: &[u32]) -> Coeff {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    /// `true` when every term only uses variables from `vars` (zero-based).
    pub fn supported_on(&self, vars: &[usize]) -> bool {
        self.terms.keys().all(|e| {
            e.iter()
                .enumerate()
                .all(|(i, &ei)| ei == 0 || vars.contains(&i))
        })
    }

    /// `true` when no term involves variable `i`.
    pub fn omits_var(&self, i: usize) -> bool {
        self.terms.keys().all(|e| e[i] == 0)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exps) {
            None => {
                self.terms.insert(exps, c);
            }
            Some(old) => {
                let sum = self.ring.add(&old, &c);
                if !sum.is_zero() {
                    self.terms.insert(exps, sum);
                }
            }
        }
    }

    fn check_compat(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars || self.ring != other.ring {
            Err(PolyError::ArityMismatch)
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (e, c) in other.terms.iter() {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.ring, self.nvars);
        for (e, c) in self.terms.iter() {
            out.terms.insert(e.clone(), self.ring.neg(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.mul_budgeted(other, None)
    }

    pub fn mul_budgeted(&self, other: &Self, budget: Option<usize>) -> Result<Self, PolyError> {
        self.check_compat(other)?;
        let mut out = Self::zero(self.ring, self.nvars);
        for (ea, ca) in self.terms.iter() {
            for (eb, cb) in other.terms.iter() {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, self.ring.mul(ca, cb));
                if let Some(cap) = budget {
                    if out.terms.len() > cap {
                        return Err(PolyError::BudgetExceeded);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &Coeff) -> Self {
        let mut out = Self::zero(self.ring, self.nvars);
        for (e, v) in self.terms.iter() {
            let prod = self.ring.mul(v, c);
            if !prod.is_zero() {
                out.terms.insert(e.clone(), prod);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        self.pow_budgeted(e, None).expect("unbudgeted pow")
    }

    pub fn pow_budgeted(&self, e: u32, budget: Option<usize>) -> Result<Self, PolyError> {
        let mut acc = Self::one(self.ring, self.nvars);
        for _ in 0..e {
            acc = acc.mul_budgeted(self, budget)?;
        }
        Ok(acc)
    }

    /// Substitutes the tuple components for the variables of `self`:
    /// `self(f_1, ..., f_r)`. `self` must have exactly `r` variables.
    pub fn substitute(&self, comps: &[Polynomial]) -> Result<Self, PolyError> {
        self.substitute_budgeted(comps, None)
    }

    pub fn substitute_budgeted(
        &self,
        comps: &[Polynomial],
        budget: Option<usize>,
    ) -> Result<Self, PolyError> {
        if comps.len() != self.nvars {
            return Err(PolyError::ArityMismatch);
        }
        let (tr, tn) = if comps.is_empty() {
            (self.ring, 0)
        } else {
            (*comps[0].ring(), comps[0].nvars())
        };
        for c in comps {
            if *c.ring() != tr || c.nvars() != tn {
                return Err(PolyError::ArityMismatch);
            }
        }
        if self.ring != tr {
            return Err(PolyError::ArityMismatch);
        }

        // Memoized powers of each component, filled on demand.
        let mut pows: Vec<Vec<Polynomial>> = comps
            .iter()
            .map(|c| vec![Polynomial::one(tr, tn), c.clone()])
            .collect();
        let mut out = Polynomial::zero(tr, tn);
        for (e, c) in self.terms.iter() {
            let mut term = Polynomial::constant(tr, tn, c.clone());
            for (i, &ei) in e.iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                while pows[i].len() <= ei as usize {
                    let next = pows[i].last().unwrap().mul_budgeted(&comps[i], budget)?;
                    pows[i].push(next);
                }
                term = term.mul_budgeted(&pows[i][ei as usize], budget)?;
            }
            out = out.add(&term)?;
            if let Some(cap) = budget {
                if out.terms.len() > cap {
                    return Err(PolyError::BudgetExceeded);
                }
            }
        }
        Ok(out)
    }

    /// Formal partial derivative with respect to variable `i` (zero-based).
    pub fn partial(&self, i: usize) -> Self {
        assert!(i < self.nvars);
        let mut out = Self::zero(self.ring, self.nvars);
        for (e, c) in self.terms.iter() {
            if e[i] == 0 {
                continue;
            }
            let factor = self.ring.from_i64(e[i] as i64);
            let prod = self.ring.mul(c, &factor);
            if prod.is_zero() {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, prod);
        }
        out
    }

    /// Nonzero-divisor test in the polynomial ring over the coefficient ring.
    ///
    /// Over a domain this is `f != 0`. Over Z/m a polynomial is a zero
    /// divisor exactly when some nonzero scalar annihilates every
    /// coefficient, i.e. when gcd(m, all coefficients) > 1.
    pub fn is_nonzerodivisor(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        match self.ring {
            Ring::Rationals | Ring::PrimeField(_) => true,
            Ring::ModRing(m) => {
                let mut g = m;
                for c in self.terms.values() {
                    let r = c.residue().expect("modular coefficient");
                    g = num_integer::gcd(g, r);
                    if g == 1 {
                        return true;
                    }
                }
                g == 1
            }
        }
    }

    /// Reinterprets `self` in a larger variable ring, padding exponents
    /// with zeros.
    pub fn embed(&self, new_nvars: usize) -> Result<Self, PolyError> {
        if new_nvars < self.nvars {
            return Err(PolyError::ArityMismatch);
        }
        let mut out = Self::zero(self.ring, new_nvars);
        for (e, c) in self.terms.iter() {
            let mut e2 = e.clone();
            e2.resize(new_nvars, 0);
            out.terms.insert(e2, c.clone());
        }
        Ok(out)
    }

    /// Renames variables: `x_j` becomes `x_{pi[j]}`; `pi` must be a
    /// permutation of `0..nvars`.
    pub fn permute_vars(&self, pi: &[usize]) -> Self {
        assert_eq!(pi.len(), self.nvars);
        let mut out = Self::zero(self.ring, self.nvars);
        for (e, c) in self.terms.iter() {
            let mut e2 = vec![0u32; self.nvars];
            for (j, &ej) in e.iter().enumerate() {
                e2[pi[j]] = ej;
            }
            out.terms.insert(e2, c.clone());
        }
        out
    }

    /// Maximum exponent appearing for any variable.
    pub fn max_exponent(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|e| e.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// Total degree in the ordinary sense, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Leading term first: iterate descending lexicographic.
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = displays_negative(c);
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = if neg { self.ring.neg(c) } else { c.clone() };
            let is_const = e.iter().all(|&x| x == 0);
            let one = self.ring.one();
            let mut wrote = false;
            if mag != one || is_const {
                write!(f, "{mag}")?;
                wrote = true;
            }
            for (i, &ei) in e.iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                write!(f, "x{}", i + 1)?;
                if ei > 1 {
                    write!(f, "^{ei}")?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}

/// Tuple of polynomials sharing a ring and variable count; the component
/// count may differ from the variable count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoTuple {
    components: Vec<Polynomial>,
}

impl EndoTuple {
    pub fn new(components: Vec<Polynomial>) -> Result<Self, PolyError> {
        if components.is_empty() {
            return Err(PolyError::ArityMismatch);
        }
        let r = *components[0].ring();
        let n = components[0].nvars();
        for c in &components {
            if *c.ring() != r || c.nvars() != n {
                return Err(PolyError::ArityMismatch);
            }
        }
        Ok(EndoTuple { components })
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        EndoTuple {
            components: (0..n).map(|i| Polynomial::variable(ring, n, i)).collect(),
        }
    }

    pub fn ring(&self) -> &Ring {
        self.components[0].ring()
    }

    pub fn nvars(&self) -> usize {
        self.components[0].nvars()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn is_identity(&self) -> bool {
        self.len() == self.nvars()
            && self
                .components
                .iter()
                .enumerate()
                .all(|(i, c)| *c == Polynomial::variable(*self.ring(), self.nvars(), i))
    }

    /// Applies the tuple to `g` as a substitution map: `g(f_1, ..., f_r)`.
    pub fn apply(&self, g: &Polynomial) -> Result<Polynomial, PolyError> {
        g.substitute(&self.components)
    }

    /// Composition `self . other`, i.e. apply `other` first:
    /// component `i` of the result is `other_i(self)`.
    pub fn compose(&self, other: &EndoTuple) -> Result<EndoTuple, PolyError> {
        if self.len() != other.nvars() {
            return Err(PolyError::ArityMismatch);
        }
        let comps = other
            .components
            .iter()
            .map(|g| self.apply(g))
            .collect::<Result<Vec<_>, _>>()?;
        EndoTuple::new(comps)
    }

    pub fn with_component(&self, i: usize, p: Polynomial) -> Self {
        let mut comps = self.components.clone();
        comps[i] = p;
        EndoTuple { components: comps }
    }

    /// Jacobi matrix entries `d f_i / d x_j`.
    pub fn jacobian(&self) -> Vec<Vec<Polynomial>> {
        self.components
            .iter()
            .map(|f| (0..self.nvars()).map(|j| f.partial(j)).collect())
            .collect()
    }
}

/// Determinant of a square polynomial matrix by Laplace expansion;
/// intended for the small sizes arising from Jacobi matrices.
pub fn det(matrix: &[Vec<Polynomial>]) -> Result<Polynomial, PolyError> {
    let n = matrix.len();
    assert!(n > 0 && matrix.iter().all(|r| r.len() == n));
    let ring = *matrix[0][0].ring();
    let nv = matrix[0][0].nvars();
    if n == 1 {
        return Ok(matrix[0][0].clone());
    }
    let mut acc = Polynomial::zero(ring, nv);
    for j in 0..n {
        if matrix[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = matrix[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let cof = matrix[0][j].mul(&det(&minor)?)?;
        acc = if j % 2 == 0 {
            acc.add(&cof)?
        } else {
            acc.sub(&cof)?
        };
    }
    Ok(acc)
}
