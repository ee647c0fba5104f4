//! Homogeneous subalgebra membership, elementary-reduction search, the
//! six-condition reduction-pair checker with its derived properties, and
//! the initial-form proportionality inequality verifier.

use crate::coeff::{Coeff, Ring};
use crate::poly::{EndoTuple, PolyError, Polynomial};
use crate::wapprox::{strict_positive_vector, StrictVector, WapproxError};
use crate::worder::{deg, initial_form, wedge_deg, Deg, DegError, LexVec, Weight};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SuredError {
    #[error("operation requires field coefficients")]
    NotAField,
    #[error("degree enumeration is unbounded (nonpositive generator degrees)")]
    Unbounded,
    #[error("no membership witness provided and the bounded search failed")]
    MissingWitness,
    #[error("witness does not reconstruct the polynomial")]
    BadWitness,
    #[error("polynomials are algebraically dependent")]
    NotIndependent,
    #[error("unsupported in positive characteristic")]
    Unsupported,
    #[error("mismatched variable count or ring")]
    ArityMismatch,
}

impl From<PolyError> for SuredError {
    fn from(_: PolyError) -> Self {
        SuredError::ArityMismatch
    }
}

impl From<DegError> for SuredError {
    fn from(e: DegError) -> Self {
        match e {
            DegError::NotAField => SuredError::NotAField,
            _ => SuredError::ArityMismatch,
        }
    }
}

impl From<WapproxError> for SuredError {
    fn from(_: WapproxError) -> Self {
        SuredError::Unbounded
    }
}

/// Result of a homogeneous membership test: when `inside`, the
/// combination maps generator exponent tuples to coefficients and
/// reconstructs the tested polynomial exactly.
#[derive(Debug, Clone)]
pub struct MembershipResult {
    pub inside: bool,
    pub combination: Option<BTreeMap<Vec<u32>, Coeff>>,
}

/// Exponent tuples `(a_1,...,a_k)` with `sum a_i * d_i = target`, all
/// `d_i` strictly positive.
fn degree_tuples(target: &LexVec, degs: &[LexVec]) -> Result<Vec<Vec<u32>>, SuredError> {
    let zero = LexVec::zero(target.rank());
    if degs.iter().any(|d| *d <= zero) {
        return Err(SuredError::Unbounded);
    }
    let rows: Vec<Vec<i64>> = degs.iter().map(|d| d.coords().to_vec()).collect();
    let lambda = match strict_positive_vector(&rows) {
        StrictVector::Found(v) => v,
        StrictVector::Infeasible => return Err(SuredError::Unbounded),
    };
    let ldot = |v: &LexVec| -> i128 {
        v.coords()
            .iter()
            .zip(&lambda)
            .map(|(a, b)| (*a as i128) * (*b as i128))
            .sum()
    };
    let budget = ldot(target);
    let vals: Vec<i128> = degs.iter().map(ldot).collect();
    let mut out = Vec::new();
    let mut acc = vec![0u32; degs.len()];
    fn rec(
        idx: usize,
        rem: &LexVec,
        budget: i128,
        degs: &[LexVec],
        vals: &[i128],
        acc: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if idx == degs.len() {
            if rem.is_zero() {
                out.push(acc.clone());
            }
            return;
        }
        let mut k = 0u32;
        let mut cur = rem.clone();
        while vals[idx] * k as i128 <= budget {
            acc[idx] = k;
            rec(
                idx + 1,
                &cur,
                budget - vals[idx] * k as i128,
                degs,
                vals,
                acc,
                out,
            );
            cur = cur.sub(&degs[idx]);
            k += 1;
        }
        acc[idx] = 0;
    }
    if budget >= 0 {
        rec(0, target, budget, degs, &vals, &mut acc, &mut out);
    }
    Ok(out)
}

/// Solves `sum c_k * columns_k = target` exactly over a field.
fn solve_linear(
    ring: &Ring,
    columns: &[Polynomial],
    target: &Polynomial,
) -> Result<Option<Vec<Coeff>>, SuredError> {
    if !ring.is_field() {
        return Err(SuredError::NotAField);
    }
    let mut points: Vec<Vec<u32>> = Vec::new();
    for p in columns.iter().chain(std::iter::once(target)) {
        for e in p.support() {
            points.push(e.clone());
        }
    }
    points.sort();
    points.dedup();
    let rows = points.len();
    let cols = columns.len();
    let mut mat: Vec<Vec<Coeff>> = points
        .iter()
        .map(|pt| {
            let mut row: Vec<Coeff> = columns.iter().map(|c| c.coeff(pt)).collect();
            row.push(target.coeff(pt));
            row
        })
        .collect();

    let mut pivot_row = 0usize;
    let mut pivots: Vec<Option<usize>> = vec![None; cols];
    for col in 0..cols {
        let mut sel = None;
        for (r, row) in mat.iter().enumerate().skip(pivot_row) {
            if !row[col].is_zero() {
                sel = Some(r);
                break;
            }
        }
        let Some(sel) = sel else { continue };
        mat.swap(pivot_row, sel);
        let inv = ring
            .try_inverse(&mat[pivot_row][col])
            .map_err(|_| SuredError::NotAField)?;
        for v in mat[pivot_row].iter_mut() {
            *v = ring.mul(v, &inv);
        }
        for r in 0..rows {
            if r != pivot_row && !mat[r][col].is_zero() {
                let factor = mat[r][col].clone();
                for k in 0..=cols {
                    let sub = ring.mul(&factor, &mat[pivot_row][k]);
                    mat[r][k] = ring.sub(&mat[r][k], &sub);
                }
            }
        }
        pivots[col] = Some(pivot_row);
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    for row in mat.iter().skip(pivot_row) {
        if row[..cols].iter().all(|v| v.is_zero()) && !row[cols].is_zero() {
            return Ok(None);
        }
    }
    let mut sol = vec![ring.zero(); cols];
    for (col, pr) in pivots.iter().enumerate() {
        if let Some(r) = pr {
            sol[col] = mat[*r][cols].clone();
        }
    }
    // Free variables are zero; confirm the candidate actually solves the
    // system.
    let mut acc = Polynomial::zero(*ring, target.nvars());
    for (c, col) in sol.iter().zip(columns) {
        acc = acc.add(&col.scalar_mul(c))?;
    }
    if acc != *target {
        return Ok(None);
    }
    Ok(Some(sol))
}

/// Membership of a weighted-homogeneous polynomial in the algebra
/// generated by the initial forms of the generators, with matching
/// degree: enumerates all exponent tuples of the right degree and solves
/// the exact linear system.
pub fn homog_membership_multi(
    h: &Polynomial,
    gens: &[Polynomial],
    w: &Weight,
) -> Result<MembershipResult, SuredError> {
    let ring = *h.ring();
    if !ring.is_field() {
        return Err(SuredError::NotAField);
    }
    let dh = match deg(h, w)? {
        Deg::Fin(v) => v,
        Deg::MinusInf => {
            return Ok(MembershipResult {
                inside: true,
                combination: Some(BTreeMap::new()),
            })
        }
    };
    let inits: Vec<Polynomial> = gens
        .iter()
        .map(|g| initial_form(g, w))
        .collect::<Result<_, _>>()?;
    let degs: Vec<LexVec> = gens
        .iter()
        .map(|g| match deg(g, w) {
            Ok(Deg::Fin(v)) => Ok(v),
            _ => Err(SuredError::Unbounded),
        })
        .collect::<Result<_, _>>()?;
    let tuples = degree_tuples(&dh, &degs)?;
    if tuples.is_empty() {
        return Ok(MembershipResult {
            inside: false,
            combination: None,
        });
    }
    let mut columns = Vec::with_capacity(tuples.len());
    for t in &tuples {
        let mut prod = Polynomial::one(ring, h.nvars());
        for (g, &e) in inits.iter().zip(t) {
            if e > 0 {
                prod = prod.mul(&g.pow(e))?;
            }
        }
        columns.push(prod);
    }
    match solve_linear(&ring, &columns, h)? {
        None => Ok(MembershipResult {
            inside: false,
            combination: None,
        }),
        Some(sol) => {
            let combination = tuples
                .into_iter()
                .zip(sol)
                .filter(|(_, c)| !c.is_zero())
                .collect();
            Ok(MembershipResult {
                inside: true,
                combination: Some(combination),
            })
        }
    }
}

/// Two-generator membership test (see [`homog_membership_multi`]).
pub fn homog_membership(
    h: &Polynomial,
    g1: &Polynomial,
    g2: &Polynomial,
    w: &Weight,
) -> Result<MembershipResult, SuredError> {
    homog_membership_multi(h, &[g1.clone(), g2.clone()], w)
}

/// A successful elementary-reduction step.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub index: usize,
    /// Polynomial in the other components with
    /// `deg(f_i - replacement) < deg f_i`.
    pub replacement: Polynomial,
    pub reduced: EndoTuple,
    pub old_deg: Deg,
    pub new_deg: Deg,
}

/// Outcome of the reduction search; a budget stop is distinguished from
/// a definitive no.
#[derive(Debug, Clone)]
pub enum ReductionOutcome {
    Found(Reduction),
    NoneDefinitive,
    NoneBudget,
}

/// Searches for an elementary reduction: for each component, greedily
/// cancels its top form by degree-matched combinations of the other
/// components' initial forms, lifting each combination and subtracting.
/// Each membership solve costs one budget unit.
pub fn elementary_reduction(
    t: &EndoTuple,
    w: &Weight,
    budget: usize,
) -> Result<ReductionOutcome, SuredError> {
    let ring = *t.ring();
    if !ring.is_field() {
        return Err(SuredError::NotAField);
    }
    if !w.all_pos() {
        return Err(SuredError::Unbounded);
    }
    let n = t.len();
    let mut remaining = budget;
    let mut budget_hit = false;
    for i in 0..n {
        let others: Vec<Polynomial> = (0..n)
            .filter(|&j| j != i)
            .map(|j| t.component(j).clone())
            .collect();
        let old_deg = deg(t.component(i), w)?;
        let mut cur = t.component(i).clone();
        let mut total = Polynomial::zero(ring, t.nvars());
        loop {
            if cur.is_zero() {
                break;
            }
            if remaining == 0 {
                budget_hit = true;
                break;
            }
            let top = initial_form(&cur, w)?;
            remaining -= 1;
            let membership = homog_membership_multi(&top, &others, w)?;
            let Some(comb) = membership.combination.filter(|_| membership.inside) else {
                break;
            };
            if comb.is_empty() {
                break;
            }
            let mut lift = Polynomial::zero(ring, t.nvars());
            for (exps, c) in &comb {
                let mut prod = Polynomial::one(ring, t.nvars());
                for (g, &e) in others.iter().zip(exps) {
                    if e > 0 {
                        prod = prod.mul(&g.pow(e))?;
                    }
                }
                lift = lift.add(&prod.scalar_mul(c))?;
            }
            cur = cur.sub(&lift)?;
            total = total.add(&lift)?;
        }
        let new_deg = deg(&cur, w)?;
        if new_deg < old_deg {
            return Ok(ReductionOutcome::Found(Reduction {
                index: i,
                replacement: total,
                reduced: t.with_component(i, cur),
                old_deg,
                new_deg,
            }));
        }
    }
    Ok(if budget_hit {
        ReductionOutcome::NoneBudget
    } else {
        ReductionOutcome::NoneDefinitive
    })
}

/// `p = lambda * q` for a scalar `lambda`, returned when it exists.
pub fn proportional(p: &Polynomial, q: &Polynomial) -> Option<Coeff> {
    if p.is_zero() || q.is_zero() {
        return None;
    }
    let ring = *p.ring();
    let (e0, c0) = q.terms().next().unwrap();
    let pc = p.coeff(e0);
    if pc.is_zero() {
        return None;
    }
    let inv = ring.try_inverse(c0).ok()?;
    let lambda = ring.mul(&pc, &inv);
    if *p == q.scalar_mul(&lambda) {
        Some(lambda)
    } else {
        None
    }
}

/// Candidate reduction pair with the structural scalars and the optional
/// membership witness `q` (two variables) for the third component:
/// `g3 - f3 = q(g1, g2)`.
#[derive(Debug, Clone)]
pub struct SuWitness {
    pub f: EndoTuple,
    pub g: EndoTuple,
    pub a: Coeff,
    pub b: Coeff,
    pub c: Coeff,
    pub q: Option<Polynomial>,
}

/// Per-condition evaluation; `None` marks an undecided membership (the
/// bounded fallback for the first condition is incomplete).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuReport {
    pub su: [Option<bool>; 6],
    pub proportionality_exponent: Option<u32>,
    pub p1: Option<bool>,
    pub p5: Option<bool>,
    pub p6: Option<bool>,
    pub p7: Option<bool>,
    /// All six conditions hold but a derived property fails.
    pub theorem_violated: bool,
}

impl SuReport {
    pub fn all_su_pass(&self) -> bool {
        self.su.iter().all(|c| *c == Some(true))
    }

    /// Name of the first definitively failing condition.
    pub fn first_refuted(&self) -> Option<&'static str> {
        const NAMES: [&str; 6] = ["SU1", "SU2", "SU3", "SU4", "SU5", "SU6"];
        self.su
            .iter()
            .enumerate()
            .find(|(_, c)| **c == Some(false))
            .map(|(i, _)| NAMES[i])
    }
}

fn halfable(v: &LexVec) -> bool {
    v.coords().iter().all(|c| c % 2 == 0)
}

/// Evaluates the six reduction-pair conditions exactly, plus the derived
/// properties when all six hold.
pub fn su_check(witness: &SuWitness, w: &Weight) -> Result<SuReport, SuredError> {
    let ring = *witness.f.ring();
    if ring.characteristic() != 0 {
        return Err(SuredError::Unsupported);
    }
    if witness.f.len() != 3 || witness.g.len() != 3 || w.len() != 3 {
        return Err(SuredError::ArityMismatch);
    }
    if !w.all_pos() {
        return Err(SuredError::Unbounded);
    }
    let f = &witness.f;
    let g = &witness.g;
    let (f1, f2, f3) = (f.component(0), f.component(1), f.component(2));
    let (g1, g2, g3) = (g.component(0), g.component(1), g.component(2));

    // SU1: structural scalars plus membership of g3 - f3 in k[g1, g2].
    let f3sq = f3.mul(f3)?;
    let lhs1 = f1
        .add(&f3sq.scalar_mul(&witness.a))?
        .add(&f3.scalar_mul(&witness.c))?;
    let lhs2 = f2.add(&f3.scalar_mul(&witness.b))?;
    let scalars_ok = lhs1 == *g1 && lhs2 == *g2;
    let diff = g3.sub(f3)?;
    let su1 = if !scalars_ok {
        Some(false)
    } else if diff.is_zero() {
        Some(true)
    } else if let Some(q) = &witness.q {
        if q.nvars() != 2 {
            return Err(SuredError::BadWitness);
        }
        Some(q.substitute(&[g1.clone(), g2.clone()])? == diff)
    } else {
        // Bounded fallback: greedy top-form reduction against the
        // initial forms of g1, g2; sound when it reaches zero, silent
        // otherwise.
        match bounded_subalgebra_witness(&diff, g1, g2, w, 64)? {
            Some(_) => Some(true),
            None => None,
        }
    };

    let df = [deg(f1, w)?, deg(f2, w)?, deg(f3, w)?];
    let dg = [deg(g1, w)?, deg(g2, w)?, deg(g3, w)?];
    let su2 = Some(df[0] <= dg[0] && df[1] == dg[1]);

    // SU3: (g1^w)^2 proportional to (g2^w)^s, s odd and at least 3. The
    // degree equation pins s uniquely.
    let g1w = initial_form(g1, w)?;
    let g2w = initial_form(g2, w)?;
    let mut s_found: Option<u32> = None;
    if let (Deg::Fin(a), Deg::Fin(b)) = (&dg[0], &dg[1]) {
        let doubled = a.scale(2);
        if let Some(s) = crate::tamecert::int_multiple(&doubled, b) {
            if s >= 3 && s % 2 == 1 {
                let lhs = g1w.mul(&g1w)?;
                let rhs = g2w.pow(s);
                if proportional(&lhs, &rhs).is_some() {
                    s_found = Some(s);
                }
            }
        }
    }
    let su3 = Some(s_found.is_some());

    // SU4: deg f3 <= deg g1 and the initial form of f3 stays outside the
    // initial-form algebra of g1, g2.
    let f3w = initial_form(f3, w)?;
    let member = homog_membership(&f3w, g1, g2, w)?;
    let su4 = Some(df[2] <= dg[0] && !member.inside);

    let su5 = Some(dg[2] < df[2]);

    // SU6: deg g3 < deg g1 - deg g2 + deg dg1 ^ dg2.
    let wedge = wedge_deg(&[g1.clone(), g2.clone()], w)?;
    let su6 = Some(match (&dg[0], &dg[1], &wedge) {
        (Deg::Fin(a), Deg::Fin(b), Deg::Fin(ww)) => {
            let bound = a.sub(b).add(ww);
            dg[2] < Deg::Fin(bound)
        }
        _ => false,
    });

    let su = [su1, su2, su3, su4, su5, su6];
    let all_pass = su.iter().all(|c| *c == Some(true));

    let (mut p1, mut p5, mut p6, mut p7) = (None, None, None, None);
    if all_pass {
        let s = s_found.unwrap();
        let d_g2 = dg[1].finite().unwrap().clone();
        p1 = Some(halfable(&d_g2));
        // P5 antecedent: strict degree growth for the first component.
        p5 = Some(if df[0] < dg[0] {
            let mut ok = s == 3;
            let f3w_sq = f3w.mul(&f3w)?;
            ok &= proportional(&g1w, &f3w_sq).is_some();
            if let Deg::Fin(d3) = &df[2] {
                ok &= d3.scale(4) == d_g2.scale(3);
            } else {
                ok = false;
            }
            match (&df[0], &wedge) {
                (Deg::Fin(d1), Deg::Fin(ww)) => {
                    ok &= d1.scale(4) >= d_g2.scale(5).add(&ww.scale(4));
                }
                _ => ok = false,
            }
            ok
        } else {
            true
        });
        let total_f = df
            .iter()
            .fold(Deg::Fin(LexVec::zero(w.rank())), |a, b| a.add(b));
        let total_g = dg
            .iter()
            .fold(Deg::Fin(LexVec::zero(w.rank())), |a, b| a.add(b));
        p6 = Some(total_g < total_f);
        p7 = Some({
            let mut ok = df[1] < df[0] && df[2] <= df[0];
            for di in &df {
                match di {
                    Deg::Fin(v) => {
                        ok &= v.scale(2) > d_g2 && v.scale(2) <= d_g2.scale(s as i64);
                    }
                    Deg::MinusInf => ok = false,
                }
            }
            ok
        });
    }
    let theorem_violated = all_pass && [p1, p5, p6, p7].iter().any(|p| *p == Some(false));
    Ok(SuReport {
        su,
        proportionality_exponent: s_found,
        p1,
        p5,
        p6,
        p7,
        theorem_violated,
    })
}

/// Greedy top-form reduction of `target` against `k[g1, g2]`; returns a
/// reconstruction witness in two variables when it terminates at zero.
pub fn bounded_subalgebra_witness(
    target: &Polynomial,
    g1: &Polynomial,
    g2: &Polynomial,
    w: &Weight,
    budget: usize,
) -> Result<Option<Polynomial>, SuredError> {
    let ring = *target.ring();
    let mut cur = target.clone();
    let mut q = Polynomial::zero(ring, 2);
    let mut remaining = budget;
    while !cur.is_zero() {
        if remaining == 0 {
            return Ok(None);
        }
        remaining -= 1;
        let top = initial_form(&cur, w)?;
        let membership = homog_membership(&top, g1, g2, w)?;
        let Some(comb) = membership.combination.filter(|_| membership.inside) else {
            return Ok(None);
        };
        let mut lift = Polynomial::zero(ring, target.nvars());
        for (exps, c) in &comb {
            let prod = g1.pow(exps[0]).mul(&g2.pow(exps[1]))?;
            lift = lift.add(&prod.scalar_mul(c))?;
            q = q.add(&Polynomial::monomial(
                ring,
                2,
                vec![exps[0], exps[1]],
                c.clone(),
            ))?;
        }
        let next = cur.sub(&lift)?;
        if deg(&next, w)? >= deg(&cur, w)? {
            return Ok(None);
        }
        cur = next;
    }
    Ok(Some(q))
}

/// Verdict of the reduction-pair refutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SuVerdict {
    Refuted(&'static str),
    TheoremViolated,
}

/// Checks a candidate pair against the reduction conditions after
/// permuting the components; the base tuple must have the
/// bounded-third-component shape (total degree above the weight total,
/// last component a unit multiple of the last variable plus a plane
/// polynomial of bounded degree).
pub fn refute_su_reduction(
    f: &EndoTuple,
    sigma: &[usize],
    witness: &SuWitness,
    w: &Weight,
) -> Result<SuVerdict, SuredError> {
    check_s_shape(f, w)?;
    let fs = EndoTuple::new(sigma.iter().map(|&i| f.component(i).clone()).collect())?;
    if fs != witness.f {
        return Err(SuredError::BadWitness);
    }
    let report = su_check(witness, w)?;
    if let Some(name) = report.first_refuted() {
        return Ok(SuVerdict::Refuted(name));
    }
    if report.all_su_pass() {
        return Ok(SuVerdict::TheoremViolated);
    }
    Err(SuredError::MissingWitness)
}

/// Shape check: total degree above the weight total and third component
/// `a x3 + p(x1, x2)` with `deg p <= w3`.
pub fn check_s_shape(f: &EndoTuple, w: &Weight) -> Result<(), SuredError> {
    if f.len() != 3 || w.len() != 3 {
        return Err(SuredError::ArityMismatch);
    }
    let m = crate::worder::mdeg(f, w)?;
    if *m.total() <= Deg::Fin(w.total()) {
        return Err(SuredError::BadWitness);
    }
    let f3 = f.component(2);
    let ring = *f.ring();
    let mut has_x3 = false;
    let mut plane = Polynomial::zero(ring, 3);
    for (e, c) in f3.terms() {
        if e[2] == 1 && e[0] == 0 && e[1] == 0 {
            if !ring.is_unit(c) {
                return Err(SuredError::BadWitness);
            }
            has_x3 = true;
        } else if e[2] == 0 {
            plane = plane.add(&Polynomial::monomial(ring, 3, e.clone(), c.clone()))?;
        } else {
            return Err(SuredError::BadWitness);
        }
    }
    if !has_x3 {
        return Err(SuredError::BadWitness);
    }
    if deg(&plane, w)? > Deg::Fin(w.entry(2).clone()) {
        return Err(SuredError::BadWitness);
    }
    Ok(())
}

/// Expression witness: `p = sum c_ij f^i g^j` with explicit
/// coefficients.
#[derive(Debug, Clone)]
pub struct ExprWitness {
    pub f: Polynomial,
    pub g: Polynomial,
    pub p: Polynomial,
    pub coeffs: BTreeMap<(u32, u32), Coeff>,
}

impl ExprWitness {
    fn reconstruct(&self) -> Result<Polynomial, SuredError> {
        let ring = *self.f.ring();
        let mut acc = Polynomial::zero(ring, self.f.nvars());
        for ((i, j), c) in &self.coeffs {
            let prod = self.f.pow(*i).mul(&self.g.pow(*j))?;
            acc = acc.add(&prod.scalar_mul(c))?;
        }
        Ok(acc)
    }
}

/// Maximum of `deg(f^i g^j)` over the nonzero witness coefficients;
/// checks the reconstruction first.
pub fn expr_deg(witness: &ExprWitness, w: &Weight) -> Result<Deg, SuredError> {
    if witness.reconstruct()? != witness.p {
        return Err(SuredError::BadWitness);
    }
    let df = deg(&witness.f, w)?;
    let dg = deg(&witness.g, w)?;
    let mut best = Deg::MinusInf;
    for ((i, j), c) in &witness.coeffs {
        if c.is_zero() {
            continue;
        }
        let (Deg::Fin(a), Deg::Fin(b)) = (&df, &dg) else {
            return Err(SuredError::BadWitness);
        };
        let d = Deg::Fin(a.scale(*i as i64).add(&b.scale(*j as i64)));
        if d > best {
            best = d;
        }
    }
    Ok(best)
}

/// Verdict of the proportionality-inequality check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IneqVerdict {
    /// Hypothesis empty: the expression degree does not exceed the
    /// polynomial degree.
    VacuouslyTrue,
    Holds { l: u32, m: u32 },
    TheoremViolated(String),
}

/// When the expression degree strictly exceeds the polynomial degree,
/// finds the coprime proportionality pair for the initial forms and
/// verifies the degree inequality exactly.
pub fn su_inequality_check(witness: &ExprWitness, w: &Weight) -> Result<IneqVerdict, SuredError> {
    let ring = *witness.f.ring();
    if ring.characteristic() != 0 {
        return Err(SuredError::Unsupported);
    }
    let ds = expr_deg(witness, w)?;
    let dp = deg(&witness.p, w)?;
    if ds <= dp {
        return Ok(IneqVerdict::VacuouslyTrue);
    }
    let wedge = wedge_deg(&[witness.f.clone(), witness.g.clone()], w)?;
    let Deg::Fin(wedge) = wedge else {
        return Err(SuredError::NotIndependent);
    };
    let (Deg::Fin(df), Deg::Fin(dg)) = (deg(&witness.f, w)?, deg(&witness.g, w)?) else {
        return Err(SuredError::BadWitness);
    };
    // l * deg g = m * deg f with gcd(l, m) = 1; the degree vectors pin
    // the primitive pair when one exists.
    let Some((l, m)) = primitive_pair(&df, &dg) else {
        return Ok(IneqVerdict::TheoremViolated(
            "no positive proportionality pair for the degrees".into(),
        ));
    };
    let fw = initial_form(&witness.f, w)?;
    let gw = initial_form(&witness.g, w)?;
    if proportional(&gw.pow(l), &fw.pow(m)).is_none() {
        return Ok(IneqVerdict::TheoremViolated(
            "initial forms are not proportional at the degree-matched powers".into(),
        ));
    }
    // deg p >= m deg f - deg f - deg g + deg df ^ dg
    let rhs = df.scale(m as i64).sub(&df).sub(&dg).add(&wedge);
    let Deg::Fin(dpv) = dp else {
        return Ok(IneqVerdict::TheoremViolated("zero polynomial".into()));
    };
    if dpv >= rhs {
        Ok(IneqVerdict::Holds { l, m })
    } else {
        Ok(IneqVerdict::TheoremViolated(format!(
            "inequality fails: {dpv} < {rhs}"
        )))
    }
}

/// Smallest positive `(l, m)` with `l * dg = m * df`, coprime.
fn primitive_pair(df: &LexVec, dg: &LexVec) -> Option<(u32, u32)> {
    let idx = df
        .coords()
        .iter()
        .zip(dg.coords())
        .position(|(a, b)| *a != 0 || *b != 0)?;
    let a = df.coords()[idx];
    let b = dg.coords()[idx];
    if a == 0 || b == 0 || (a > 0) != (b > 0) {
        return None;
    }
    let g = num_integer::gcd(a.abs(), b.abs());
    let l = (a.abs() / g) as u32;
    let m = (b.abs() / g) as u32;
    if dg.scale(l as i64) == df.scale(m as i64) {
        Some((l, m))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: usize, s: &str) -> Polynomial {
        parse_polynomial(s, n, Ring::Rationals).unwrap()
    }

    #[test]
    fn membership_square_of_generator() {
        let w = Weight::from_ints(&[1, 1, 1]);
        let g1 = q(3, "x1 + x2");
        let g2 = q(3, "x3");
        let h = q(3, "x1^2 + 2*x1*x2 + x2^2");
        let res = homog_membership(&h, &g1, &g2, &w).unwrap();
        assert!(res.inside);
        let comb = res.combination.unwrap();
        assert_eq!(comb.len(), 1);
        assert_eq!(comb.get(&vec![2, 0]), Some(&Ring::Rationals.one()));
    }

    #[test]
    fn membership_missing_variable() {
        let w = Weight::from_ints(&[1, 1, 1]);
        let res = homog_membership(&q(3, "x3"), &q(3, "x1"), &q(3, "x2"), &w).unwrap();
        assert!(!res.inside);
    }

    #[test]
    fn membership_mixed_product() {
        let w = Weight::from_ints(&[1, 1]);
        let g1 = q(2, "x1^2");
        let g2 = q(2, "x1*x2");
        let h = q(2, "x1^3*x2");
        let res = homog_membership(&h, &g1, &g2, &w).unwrap();
        assert!(res.inside);
        let comb = res.combination.unwrap();
        assert_eq!(comb.get(&vec![1, 1]), Some(&Ring::Rationals.one()));
    }

    #[test]
    fn membership_planted_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let w = Weight::from_ints(&[1, 2]);
        let ring = Ring::Rationals;
        for _ in 0..100 {
            let g1 = q(2, "x1^2 + x2");
            let g2 = q(2, "x1^3");
            let a = rng.gen_range(0..3u32);
            let b = rng.gen_range(0..2u32);
            let c = ring.from_i64(rng.gen_range(1..4));
            let h = g1.pow(a).mul(&g2.pow(b)).unwrap().scalar_mul(&c);
            let hw = initial_form(&h, &w).unwrap();
            let res = homog_membership(&hw, &g1, &g2, &w).unwrap();
            assert!(res.inside);
        }
    }

    #[test]
    fn reduction_found_for_triangular_map() {
        let w = Weight::from_ints(&[1, 1, 1]);
        let t = EndoTuple::new(vec![q(3, "x1"), q(3, "x2 + x1^2"), q(3, "x3")]).unwrap();
        match elementary_reduction(&t, &w, 16).unwrap() {
            ReductionOutcome::Found(red) => {
                assert_eq!(red.index, 1);
                assert_eq!(red.replacement, q(3, "x1^2"));
                assert_eq!(red.new_deg, Deg::scalar(1));
            }
            other => panic!("expected reduction, got {other:?}"),
        }
    }

    #[test]
    fn identity_admits_no_reduction() {
        let w = Weight::from_ints(&[1, 1, 1]);
        let t = EndoTuple::identity(Ring::Rationals, 3);
        assert!(matches!(
            elementary_reduction(&t, &w, 16).unwrap(),
            ReductionOutcome::NoneDefinitive
        ));
    }

    fn simple_witness(f: EndoTuple, g: EndoTuple, q2: Option<Polynomial>) -> SuWitness {
        let ring = Ring::Rationals;
        SuWitness {
            f,
            g,
            a: ring.zero(),
            b: ring.zero(),
            c: ring.zero(),
            q: q2,
        }
    }

    #[test]
    fn identical_pair_fails_strict_decrease() {
        let w = Weight::from_ints(&[1, 1, 1]);
        let f = EndoTuple::new(vec![q(3, "x1"), q(3, "x2"), q(3, "x3")]).unwrap();
        let wit = simple_witness(f.clone(), f, Some(Polynomial::zero(Ring::Rationals, 2)));
        let report = su_check(&wit, &w).unwrap();
        assert_eq!(report.su[4], Some(false));
    }

    #[test]
    fn planted_odd_proportionality_passes_su3() {
        // g1 = x1^3, g2 = x1^2: (g1^w)^2 = (g2^w)^3 with s = 3.
        let w = Weight::from_ints(&[1, 1, 1]);
        let f = EndoTuple::new(vec![q(3, "x1^3"), q(3, "x1^2"), q(3, "x3 + x1")]).unwrap();
        let g = EndoTuple::new(vec![q(3, "x1^3"), q(3, "x1^2"), q(3, "x3")]).unwrap();
        let mut wit = simple_witness(f, g, None);
        wit.q = Some(Polynomial::zero(Ring::Rationals, 2));
        let report = su_check(&wit, &w).unwrap();
        assert_eq!(report.su[2], Some(true));
        assert_eq!(report.proportionality_exponent, Some(3));
    }

    #[test]
    fn refutation_on_s_shaped_tuple() {
        let w = Weight::from_ints(&[1, 1, 1]);
        // deg F = 4 > 3, f3 = x3: the bounded-third-component shape.
        let f = EndoTuple::new(vec![q(3, "x1 + x2^2"), q(3, "x2"), q(3, "x3")]).unwrap();
        let sigma = vec![0usize, 1, 2];
        let wit = simple_witness(
            f.clone(),
            f.clone(),
            Some(Polynomial::zero(Ring::Rationals, 2)),
        );
        let verdict = refute_su_reduction(&f, &sigma, &wit, &w).unwrap();
        assert!(matches!(verdict, SuVerdict::Refuted(_)));
    }

    #[test]
    fn expr_witness_degree_gap() {
        // p = f^2 - g with f = x1, g = x1^2 + x2: p = -x2.
        let ring = Ring::Rationals;
        let f = q(2, "x1");
        let g = q(2, "x1^2 + x2");
        let p = q(2, "-x2");
        let mut coeffs = BTreeMap::new();
        coeffs.insert((2, 0), ring.one());
        coeffs.insert((0, 1), ring.from_i64(-1));
        let wit = ExprWitness { f, g, p, coeffs };
        let w = Weight::from_ints(&[1, 1]);
        assert_eq!(expr_deg(&wit, &w).unwrap(), Deg::scalar(2));
        match su_inequality_check(&wit, &w).unwrap() {
            IneqVerdict::Holds { l, m } => {
                assert_eq!((l, m), (1, 2));
            }
            other => panic!("expected the inequality to hold, got {other:?}"),
        }
    }

    #[test]
    fn expr_witness_vacuous_case() {
        let ring = Ring::Rationals;
        let f = q(2, "x1");
        let g = q(2, "x2 + x1^2");
        let mut coeffs = BTreeMap::new();
        coeffs.insert((1, 0), ring.one());
        let wit = ExprWitness {
            f: f.clone(),
            g,
            p: f,
            coeffs,
        };
        let w = Weight::from_ints(&[1, 2]);
        assert_eq!(
            su_inequality_check(&wit, &w).unwrap(),
            IneqVerdict::VacuouslyTrue
        );
    }

    #[test]
    fn bad_witness_rejected() {
        let ring = Ring::Rationals;
        let f = q(2, "x1");
        let g = q(2, "x2");
        let mut coeffs = BTreeMap::new();
        coeffs.insert((1, 0), ring.one());
        let wit = ExprWitness {
            f,
            g,
            p: q(2, "x2"),
            coeffs,
        };
        let w = Weight::from_ints(&[1, 1]);
        assert_eq!(expr_deg(&wit, &w), Err(SuredError::BadWitness));
    }

    #[test]
    fn membership_verdicts_match_dense_oracle() {
        use num_rational::BigRational;
        use num_traits::Zero;
        // Independent dense row reduction over the rationals.
        fn oracle(cols: &[Polynomial], target: &Polynomial) -> bool {
            let mut points: Vec<Vec<u32>> = Vec::new();
            for p in cols.iter().chain([target]) {
                points.extend(p.support().cloned());
            }
            points.sort();
            points.dedup();
            let mut m: Vec<Vec<BigRational>> = points
                .iter()
                .map(|pt| {
                    let mut row: Vec<BigRational> = cols
                        .iter()
                        .map(|c| {
                            c.coeff(pt)
                                .as_rational()
                                .cloned()
                                .unwrap_or_else(BigRational::zero)
                        })
                        .collect();
                    row.push(
                        target
                            .coeff(pt)
                            .as_rational()
                            .cloned()
                            .unwrap_or_else(BigRational::zero),
                    );
                    row
                })
                .collect();
            let rows = m.len();
            let cols_n = cols.len();
            let mut pr = 0;
            for c in 0..cols_n {
                let Some(sel) = (pr..rows).find(|&r| !m[r][c].is_zero()) else {
                    continue;
                };
                m.swap(pr, sel);
                let inv = m[pr][c].clone();
                for v in m[pr].iter_mut() {
                    *v = v.clone() / inv.clone();
                }
                for r in 0..rows {
                    if r != pr && !m[r][c].is_zero() {
                        let f = m[r][c].clone();
                        for k in 0..=cols_n {
                            let s = f.clone() * m[pr][k].clone();
                            m[r][k] = m[r][k].clone() - s;
                        }
                    }
                }
                pr += 1;
            }
            !(pr..rows)
                .any(|r| m[r][..cols_n].iter().all(|v| v.is_zero()) && !m[r][cols_n].is_zero())
        }

        let w = Weight::from_ints(&[1, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let gens_pool = ["x1^2", "x1*x2", "x2^2", "x1^2 + x2^2", "x1^2 - x1*x2"];
        let mut agree = 0;
        for _ in 0..300 {
            let g1 = q(2, gens_pool[rng.gen_range(0..gens_pool.len())]);
            let g2 = q(2, gens_pool[rng.gen_range(0..gens_pool.len())]);
            if g1 == g2 {
                continue;
            }
            // random homogeneous target of degree 4
            let mut h = Polynomial::zero(Ring::Rationals, 2);
            for k in 0..=4u32 {
                let c = Ring::Rationals.from_i64(rng.gen_range(-2..=2));
                h = h
                    .add(&Polynomial::monomial(Ring::Rationals, 2, vec![k, 4 - k], c))
                    .unwrap();
            }
            if h.is_zero() {
                continue;
            }
            let got = homog_membership(&h, &g1, &g2, &w).unwrap();
            // candidate columns of degree 4: (a,b) with 2a + 2b = 4
            let cols: Vec<Polynomial> = [(2u32, 0u32), (1, 1), (0, 2)]
                .iter()
                .map(|(a, b)| g1.pow(*a).mul(&g2.pow(*b)).unwrap())
                .collect();
            let want = oracle(&cols, &h);
            assert_eq!(got.inside, want);
            if let Some(comb) = got.combination {
                let mut acc = Polynomial::zero(Ring::Rationals, 2);
                for (e, c) in comb {
                    let prod = g1.pow(e[0]).mul(&g2.pow(e[1])).unwrap();
                    acc = acc.add(&prod.scalar_mul(&c)).unwrap();
                }
                assert_eq!(acc, h);
            }
            agree += 1;
        }
        assert!(agree > 200);
    }
}
