//! Weighted degrees over the lexicographically ordered group Z^r:
//! degree values with a bottom element, weights, initial forms,
//! multidegrees and wedge (differential-form) degrees.

use crate::coeff::Ring;
use crate::poly::{det, EndoTuple, PolyError, Polynomial};
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DegError {
    #[error("mismatched variable count or ring")]
    ArityMismatch,
    #[error("zero component where a nonzero polynomial is required")]
    ZeroComponent,
    #[error("independence test inconclusive in positive characteristic")]
    Inconclusive,
    #[error("operation requires field coefficients")]
    NotAField,
}

impl From<PolyError> for DegError {
    fn from(_: PolyError) -> Self {
        DegError::ArityMismatch
    }
}

/// Element of Z^r under the lexicographic order (first coordinate
/// dominant). Addition is componentwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LexVec {
    coords: Vec<i64>,
}

impl LexVec {
    pub fn new(coords: Vec<i64>) -> Self {
        assert!(!coords.is_empty(), "rank must be positive");
        LexVec { coords }
    }

    pub fn scalar(v: i64) -> Self {
        LexVec { coords: vec![v] }
    }

    pub fn zero(rank: usize) -> Self {
        LexVec {
            coords: vec![0; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn is_positive(&self) -> bool {
        *self > LexVec::zero(self.rank())
    }

    pub fn is_nonneg(&self) -> bool {
        *self >= LexVec::zero(self.rank())
    }

    pub fn add(&self, other: &LexVec) -> LexVec {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        LexVec {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.checked_add(*b).expect("degree overflow"))
                .collect(),
        }
    }

    pub fn sub(&self, other: &LexVec) -> LexVec {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LexVec {
        LexVec {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> LexVec {
        LexVec {
            coords: self
                .coords
                .iter()
                .map(|a| a.checked_mul(k).expect("degree overflow"))
                .collect(),
        }
    }

    /// `true` when every coordinate is divisible by `k`.
    pub fn divisible_by(&self, k: i64) -> bool {
        k != 0 && self.coords.iter().all(|c| c % k == 0)
    }
}

impl PartialOrd for LexVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LexVec {
    fn cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        self.coords.cmp(&other.coords)
    }
}

impl fmt::Display for LexVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank() == 1 {
            write!(f, "{}", self.coords[0])
        } else {
            write!(f, "(")?;
            for (i, c) in self.coords.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")
        }
    }
}

/// Degree value: a group element, or the bottom element for the zero
/// polynomial. The bottom element absorbs addition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Deg {
    MinusInf,
    Fin(LexVec),
}

impl Deg {
    pub fn fin(v: LexVec) -> Self {
        Deg::Fin(v)
    }

    pub fn scalar(v: i64) -> Self {
        Deg::Fin(LexVec::scalar(v))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Deg::Fin(_))
    }

    pub fn finite(&self) -> Option<&LexVec> {
        match self {
            Deg::Fin(v) => Some(v),
            Deg::MinusInf => None,
        }
    }

    pub fn add(&self, other: &Deg) -> Deg {
        match (self, other) {
            (Deg::Fin(a), Deg::Fin(b)) => Deg::Fin(a.add(b)),
            _ => Deg::MinusInf,
        }
    }
}

impl PartialOrd for Deg {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Deg {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Deg::MinusInf, Deg::MinusInf) => Ordering::Equal,
            (Deg::MinusInf, Deg::Fin(_)) => Ordering::Less,
            (Deg::Fin(_), Deg::MinusInf) => Ordering::Greater,
            (Deg::Fin(a), Deg::Fin(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Deg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Deg::MinusInf => write!(f, "-inf"),
            Deg::Fin(v) => write!(f, "{v}"),
        }
    }
}

/// An n-tuple of group elements, one per variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight {
    entries: Vec<LexVec>,
    all_nonneg: bool,
    all_pos: bool,
}

impl Weight {
    pub fn new(entries: Vec<LexVec>) -> Result<Self, String> {
        if entries.is_empty() {
            return Err("weight must have at least one entry".into());
        }
        let rank = entries[0].rank();
        if entries.iter().any(|e| e.rank() != rank) {
            return Err("weight entries must share a rank".into());
        }
        let all_nonneg = entries.iter().all(|e| e.is_nonneg());
        let all_pos = entries.iter().all(|e| e.is_positive());
        Ok(Weight {
            entries,
            all_nonneg,
            all_pos,
        })
    }

    pub fn from_ints(vs: &[i64]) -> Self {
        Weight::new(vs.iter().map(|&v| LexVec::scalar(v)).collect()).unwrap()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.entries[0].rank()
    }

    pub fn entry(&self, i: usize) -> &LexVec {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[LexVec] {
        &self.entries
    }

    pub fn all_nonneg(&self) -> bool {
        self.all_nonneg
    }

    pub fn all_pos(&self) -> bool {
        self.all_pos
    }

    /// Sum of the entries.
    pub fn total(&self) -> LexVec {
        let mut acc = LexVec::zero(self.rank());
        for e in &self.entries {
            acc = acc.add(e);
        }
        acc
    }

    /// Dot product with a nonnegative exponent vector.
    pub fn dot(&self, exps: &[u32]) -> LexVec {
        assert_eq!(exps.len(), self.len(), "exponent arity mismatch");
        let mut acc = LexVec::zero(self.rank());
        for (e, w) in exps.iter().zip(&self.entries) {
            if *e != 0 {
                acc = acc.add(&w.scale(*e as i64));
            }
        }
        acc
    }

    /// Reordered weight `(w_{sigma(1)}, ..., w_{sigma(n)})`, `sigma`
    /// zero-based.
    pub fn permuted(&self, sigma: &[usize]) -> Weight {
        Weight::new(sigma.iter().map(|&i| self.entries[i].clone()).collect()).unwrap()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank() == 1 {
            let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
            write!(f, "{}", parts.join(","))
        } else {
            write!(f, "[")?;
            for (i, e) in self.entries.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")
        }
    }
}

/// Componentwise degrees of a tuple, plus their sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multidegree {
    entries: Vec<Deg>,
    total: Deg,
}

impl Multidegree {
    pub fn new(entries: Vec<Deg>) -> Self {
        let rank = entries
            .iter()
            .find_map(|d| d.finite().map(|v| v.rank()))
            .unwrap_or(1);
        let mut total = Deg::Fin(LexVec::zero(rank));
        for e in &entries {
            total = total.add(e);
        }
        Multidegree { entries, total }
    }

    pub fn entries(&self) -> &[Deg] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &Deg {
        &self.entries[i]
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> &Deg {
        &self.total
    }

    /// `true` when the entries are exactly the weight entries in some
    /// order (counted with multiplicity).
    pub fn is_permutation_of(&self, w: &Weight) -> bool {
        if self.entries.len() != w.len() {
            return false;
        }
        let mut got: Vec<&LexVec> = match self
            .entries
            .iter()
            .map(|d| d.finite())
            .collect::<Option<Vec<_>>>()
        {
            Some(v) => v,
            None => return false,
        };
        let mut want: Vec<&LexVec> = w.entries().iter().collect();
        got.sort();
        want.sort();
        got == want
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Weighted degree of `f`: maximum of `exponent . w` over the support,
/// bottom for the zero polynomial.
pub fn deg(f: &Polynomial, w: &Weight) -> Result<Deg, DegError> {
    if f.nvars() != w.len() {
        return Err(DegError::ArityMismatch);
    }
    Ok(f.support()
        .map(|e| Deg::Fin(w.dot(e)))
        .max()
        .unwrap_or(Deg::MinusInf))
}

/// Sum of the terms of `f` attaining the weighted degree; zero maps to
/// zero. The result is weighted-homogeneous.
pub fn initial_form(f: &Polynomial, w: &Weight) -> Result<Polynomial, DegError> {
    if f.nvars() != w.len() {
        return Err(DegError::ArityMismatch);
    }
    let d = deg(f, w)?;
    let top = match d {
        Deg::MinusInf => return Ok(f.clone()),
        Deg::Fin(v) => v,
    };
    Ok(Polynomial::from_terms(
        *f.ring(),
        f.nvars(),
        f.terms()
            .filter(|(e, _)| w.dot(e) == top)
            .map(|(e, c)| (e.clone(), c.clone())),
    ))
}

/// Componentwise weighted degrees of a tuple.
pub fn mdeg(t: &EndoTuple, w: &Weight) -> Result<Multidegree, DegError> {
    let entries = t
        .components()
        .iter()
        .map(|f| deg(f, w))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Multidegree::new(entries))
}

/// Componentwise initial forms; every component must be nonzero.
pub fn initial_tuple(t: &EndoTuple, w: &Weight) -> Result<EndoTuple, DegError> {
    if t.components().iter().any(|f| f.is_zero()) {
        return Err(DegError::ZeroComponent);
    }
    let comps = t
        .components()
        .iter()
        .map(|f| initial_form(f, w))
        .collect::<Result<Vec<_>, _>>()?;
    EndoTuple::new(comps).map_err(DegError::from)
}

/// Weighted degree of the wedge of the differentials of `fs`: the maximum
/// over index sets of `deg(minor . x_{i_1} ... x_{i_r})`, bottom when all
/// minors vanish.
pub fn wedge_deg(fs: &[Polynomial], w: &Weight) -> Result<Deg, DegError> {
    if fs.is_empty() {
        return Err(DegError::ArityMismatch);
    }
    let n = fs[0].nvars();
    let r = fs.len();
    if r > n || n != w.len() {
        return Err(DegError::ArityMismatch);
    }
    for f in fs {
        if f.nvars() != n || f.ring() != fs[0].ring() {
            return Err(DegError::ArityMismatch);
        }
    }
    let jac: Vec<Vec<Polynomial>> = fs
        .iter()
        .map(|f| (0..n).map(|j| f.partial(j)).collect())
        .collect();
    let mut best = Deg::MinusInf;
    for idx in subsets_of_size(n, r) {
        let minor_mat: Vec<Vec<Polynomial>> = jac
            .iter()
            .map(|row| idx.iter().map(|&j| row[j].clone()).collect())
            .collect();
        let minor = det(&minor_mat)?;
        if minor.is_zero() {
            continue;
        }
        let mut shift = LexVec::zero(w.rank());
        for &j in &idx {
            shift = shift.add(w.entry(j));
        }
        let d = match deg(&minor, w)? {
            Deg::Fin(v) => Deg::Fin(v.add(&shift)),
            Deg::MinusInf => Deg::MinusInf,
        };
        if d > best {
            best = d;
        }
    }
    Ok(best)
}

/// All size-`r` subsets of `0..n` in lexicographic order.
pub fn subsets_of_size(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(0, n, r, &mut cur, &mut out);
    out
}

/// Jacobian test for algebraic independence of the component initial
/// forms of a square tuple.
///
/// Exact in characteristic zero. In positive characteristic a nonzero
/// Jacobian still certifies independence, but a vanishing one is
/// reported as `Inconclusive`.
pub fn initial_injective(t: &EndoTuple, w: &Weight) -> Result<bool, DegError> {
    if t.len() != t.nvars() {
        return Err(DegError::ArityMismatch);
    }
    match t.ring() {
        Ring::Rationals | Ring::PrimeField(_) => {}
        Ring::ModRing(m) if Ring::ModRing(*m).is_field() => {}
        Ring::ModRing(_) => return Err(DegError::NotAField),
    }
    let init = initial_tuple(t, w)?;
    let d = det(&init.jacobian())?;
    if !d.is_zero() {
        Ok(true)
    } else if t.ring().characteristic() == 0 {
        Ok(false)
    } else {
        Err(DegError::Inconclusive)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Ring;
    use crate::parse::parse_polynomial;

    fn q(n: usize, s: &str) -> Polynomial {
        parse_polynomial(s, n, Ring::Rationals).unwrap()
    }

    #[test]
    fn variable_degree_is_weight_entry() {
        let w = Weight::from_ints(&[2, 3]);
        assert_eq!(deg(&q(2, "x1"), &w).unwrap(), Deg::scalar(2));
        assert_eq!(deg(&q(2, "x2"), &w).unwrap(), Deg::scalar(3));
    }

    #[test]
    fn zero_polynomial_has_bottom_degree() {
        let w = Weight::from_ints(&[2, 1]);
        let z = Polynomial::zero(Ring::Rationals, 2);
        assert_eq!(deg(&z, &w).unwrap(), Deg::MinusInf);
        assert!(initial_form(&z, &w).unwrap().is_zero());
    }

    #[test]
    fn degree_picks_maximum() {
        let w = Weight::from_ints(&[2, 1]);
        assert_eq!(deg(&q(2, "x1 + x2^3"), &w).unwrap(), Deg::scalar(3));
    }

    #[test]
    fn initial_form_keeps_top_terms() {
        let f = q(2, "x1 + x2^2");
        let both = Weight::from_ints(&[2, 1]);
        assert_eq!(initial_form(&f, &both).unwrap(), f);
        let w11 = Weight::from_ints(&[1, 1]);
        assert_eq!(initial_form(&f, &w11).unwrap(), q(2, "x2^2"));
        // Idempotence on homogeneous input.
        let h = initial_form(&f, &w11).unwrap();
        assert_eq!(initial_form(&h, &w11).unwrap(), h);
    }

    #[test]
    fn mdeg_of_identity_and_triangular() {
        let ring = Ring::Rationals;
        let id = EndoTuple::identity(ring, 3);
        let w = Weight::from_ints(&[2, 3, 5]);
        let m = mdeg(&id, &w).unwrap();
        assert_eq!(
            m.entries(),
            &[Deg::scalar(2), Deg::scalar(3), Deg::scalar(5)]
        );
        assert_eq!(m.total(), &Deg::scalar(10));

        let t = EndoTuple::new(vec![
            q(3, "x1"),
            q(3, "x2 + x1^2"),
            q(3, "x3 + x1^3"),
        ])
        .unwrap();
        let w1 = Weight::from_ints(&[1, 1, 1]);
        let m = mdeg(&t, &w1).unwrap();
        assert_eq!(
            m.entries(),
            &[Deg::scalar(1), Deg::scalar(2), Deg::scalar(3)]
        );
    }

    #[test]
    fn nagata_multidegree() {
        // Nagata's map has multidegree (5,3,1) for the all-ones weight.
        let a = "x1 - 2*x2*(x2^2 + x1*x3) - x3*(x2^2 + x1*x3)^2";
        let t = EndoTuple::new(vec![
            q(3, a),
            q(3, "x2 + x3*(x2^2 + x1*x3)"),
            q(3, "x3"),
        ])
        .unwrap();
        let w = Weight::from_ints(&[1, 1, 1]);
        let m = mdeg(&t, &w).unwrap();
        assert_eq!(
            m.entries(),
            &[Deg::scalar(5), Deg::scalar(3), Deg::scalar(1)]
        );
    }

    #[test]
    fn wedge_degree_cases() {
        let w = Weight::from_ints(&[3, 1]);
        let fs = [q(2, "x1"), q(2, "x2")];
        assert_eq!(wedge_deg(&fs, &w).unwrap(), Deg::scalar(4));
        let dep = [q(2, "x1"), q(2, "x1^2")];
        assert_eq!(wedge_deg(&dep, &w).unwrap(), Deg::MinusInf);
        let fs2 = [q(2, "x1 + x2^2"), q(2, "x2")];
        assert_eq!(wedge_deg(&fs2, &w).unwrap(), Deg::scalar(4));
    }

    #[test]
    fn initial_tuple_examples() {
        let w = Weight::from_ints(&[1, 1]);
        let t = EndoTuple::new(vec![q(2, "x1 + 1"), q(2, "x2")]).unwrap();
        let init = initial_tuple(&t, &w).unwrap();
        assert_eq!(init.components(), &[q(2, "x1"), q(2, "x2")]);

        // For weight (1,2) both terms of x2 + x1^2 attain degree 2, so the
        // initial form keeps them both.
        let w12 = Weight::from_ints(&[1, 2]);
        let t2 = EndoTuple::new(vec![q(2, "x1 + x2"), q(2, "x2 + x1^2")]).unwrap();
        let init2 = initial_tuple(&t2, &w12).unwrap();
        assert_eq!(init2.components(), &[q(2, "x2"), q(2, "x1^2 + x2")]);

        let with_zero = EndoTuple::new(vec![Polynomial::zero(Ring::Rationals, 2), q(2, "x2")])
            .unwrap();
        assert_eq!(
            initial_tuple(&with_zero, &w).unwrap_err(),
            DegError::ZeroComponent
        );
    }

    #[test]
    fn injectivity_of_initial_tuples() {
        let w = Weight::from_ints(&[1, 1]);
        let id = EndoTuple::identity(Ring::Rationals, 2);
        assert!(initial_injective(&id, &w).unwrap());
        let t = EndoTuple::new(vec![q(2, "x1*x2"), q(2, "x1*x2 + 1")]).unwrap();
        assert!(!initial_injective(&t, &w).unwrap());
    }

    #[test]
    fn lex_order_is_first_coordinate_dominant() {
        let a = LexVec::new(vec![1, -5]);
        let b = LexVec::new(vec![0, 100]);
        assert!(a > b);
        assert!(Deg::MinusInf < Deg::Fin(b));
    }

    #[test]
    fn rank_two_weight_degrees() {
        let w = Weight::new(vec![LexVec::new(vec![0, 1]), LexVec::new(vec![1, 0])]).unwrap();
        let f = q(2, "x1 + x2");
        // deg x2 = (1,0) beats deg x1 = (0,1) lexicographically.
        assert_eq!(deg(&f, &w).unwrap(), Deg::Fin(LexVec::new(vec![1, 0])));
        assert_eq!(initial_form(&f, &w).unwrap(), q(2, "x2"));
    }
}
