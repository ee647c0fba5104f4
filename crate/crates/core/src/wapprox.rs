//! Integer weight approximation: strict feasibility of linear forms by
//! exact rational Fourier-Motzkin elimination, replacement of a weight by
//! an integer vector inducing the same support comparisons, monomializing
//! and iterated-initial-form weights, and semigroup membership.

use crate::poly::Polynomial;
use crate::worder::{deg, initial_form, Deg, LexVec, Weight};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WapproxError {
    #[error("semigroup enumeration is unbounded (no strictly positive functional on the generators)")]
    UnboundedSemigroup,
    #[error("approximation system unexpectedly infeasible")]
    InternalInfeasible,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroComponent,
    #[error("weight rank does not match the data")]
    RankMismatch,
}

/// Outcome of the strict-feasibility search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrictVector {
    Found(Vec<i64>),
    Infeasible,
}

impl StrictVector {
    pub fn found(&self) -> Option<&Vec<i64>> {
        match self {
            StrictVector::Found(v) => Some(v),
            StrictVector::Infeasible => None,
        }
    }
}

/// One linear constraint `sum coeffs[i] * v_i >= rhs`.
#[derive(Debug, Clone)]
struct Constraint {
    coeffs: Vec<BigRational>,
    rhs: BigRational,
}

/// Finds an integer vector `v` with `a . v >= 1` for every `a` in `rows`,
/// by Fourier-Motzkin elimination over the rationals followed by
/// back-substitution and denominator clearing. Feasibility of the scaled
/// system is equivalent to feasibility of `a . v > 0`.
pub fn strict_positive_vector(rows: &[Vec<i64>]) -> StrictVector {
    if rows.is_empty() {
        return StrictVector::Found(vec![]);
    }
    let n = rows[0].len();
    assert!(rows.iter().all(|r| r.len() == n), "mixed dimensions");
    if n == 0 {
        return StrictVector::Infeasible;
    }
    let sys: Vec<Constraint> = rows
        .iter()
        .map(|r| Constraint {
            coeffs: r.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
            rhs: BigRational::one(),
        })
        .collect();

    // stages[k] constrains variables v_0..v_k.
    let mut stages: Vec<Vec<Constraint>> = Vec::with_capacity(n);
    stages.push(sys);
    for var in (1..n).rev() {
        let next = eliminate_last(stages.last().unwrap(), var);
        stages.push(next);
    }

    // Feasibility at the single-variable stage, then back-substitute.
    let mut values: Vec<BigRational> = Vec::with_capacity(n);
    for (k, stage) in stages.iter().rev().enumerate() {
        // stage constrains v_0..v_k; values holds v_0..v_{k-1}.
        match choose_value(stage, &values, k) {
            Some(v) => values.push(v),
            None => return StrictVector::Infeasible,
        }
    }

    // Clear denominators; scaling by a positive integer preserves a.v >= 1.
    let mut lcm = BigInt::one();
    for v in &values {
        lcm = num_integer::lcm(lcm, v.denom().clone());
    }
    let ints: Vec<i64> = values
        .iter()
        .map(|v| {
            (v * BigRational::from_integer(lcm.clone()))
                .to_integer()
                .to_i64()
                .expect("feasible vector exceeds i64")
        })
        .collect();
    debug_assert!(rows
        .iter()
        .all(|a| a.iter().zip(&ints).map(|(x, y)| (*x as i128) * (*y as i128)).sum::<i128>() >= 1));
    StrictVector::Found(ints)
}

/// Eliminates variable `var` (the highest index present), pairing
/// opposite-sign rows.
fn eliminate_last(sys: &[Constraint], var: usize) -> Vec<Constraint> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut out = Vec::new();
    for c in sys {
        let s = c.coeffs[var].clone();
        if s.is_zero() {
            out.push(Constraint {
                coeffs: c.coeffs[..var].to_vec(),
                rhs: c.rhs.clone(),
            });
        } else if s.is_positive() {
            pos.push(c);
        } else {
            neg.push(c);
        }
    }
    // Each (lower bound, upper bound) pair yields one projected row.
    for p in &pos {
        for q in &neg {
            let pp = &p.coeffs[var];
            let qq = &q.coeffs[var];
            // p: pp*x >= rhs_p - rest_p ; q: qq*x >= rhs_q - rest_q, qq < 0.
            // Combine: (rhs_p - rest_p)/pp <= x <= (rest_q - rhs_q)/(-qq).
            let mut coeffs = Vec::with_capacity(var);
            for i in 0..var {
                // rest terms move across; derived constraint:
                // (-qq)*rest_p + pp*rest_q >= (-qq)*rhs_p + pp*rhs_q
                let ci = -qq.clone() * p.coeffs[i].clone() + pp.clone() * q.coeffs[i].clone();
                coeffs.push(ci);
            }
            let rhs = -qq.clone() * p.rhs.clone() + pp.clone() * q.rhs.clone();
            out.push(Constraint { coeffs, rhs });
        }
    }
    out
}

/// Picks a value for variable `k` given fixed earlier values; `stage`
/// constrains `v_0..v_k`.
fn choose_value(stage: &[Constraint], values: &[BigRational], k: usize) -> Option<BigRational> {
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    for c in stage {
        let mut rest = c.rhs.clone();
        for i in 0..k {
            rest -= c.coeffs[i].clone() * values[i].clone();
        }
        let s = &c.coeffs[k];
        if s.is_zero() {
            if rest.is_positive() {
                return None;
            }
        } else if s.is_positive() {
            let bound = rest / s.clone();
            lo = Some(match lo {
                None => bound,
                Some(old) => old.max(bound),
            });
        } else {
            let bound = rest / s.clone();
            hi = Some(match hi {
                None => bound,
                Some(old) => old.min(bound),
            });
        }
    }
    match (&lo, &hi) {
        (Some(l), Some(h)) if l > h => return None,
        _ => {}
    }
    Some(match (lo, hi) {
        (Some(l), Some(h)) => (l + h) / BigRational::from_integer(2.into()),
        (Some(l), None) => l,
        (None, Some(h)) => h,
        (None, None) => BigRational::zero(),
    })
}

/// An integer vector inducing the same dot-product comparisons as `w` on
/// every pair from `support`; the defining property is checked
/// exhaustively before returning.
#[derive(Debug, Clone)]
pub struct EquivWitness {
    pub v: Vec<i64>,
    pub support: Vec<Vec<i64>>,
}

impl EquivWitness {
    /// Exhaustive pair check of the comparison equivalence.
    pub fn verify(&self, w: &Weight) -> bool {
        equiv_on(&self.support, w, &self.v)
    }
}

fn dot_i64(a: &[i64], v: &[i64]) -> i128 {
    a.iter().zip(v).map(|(x, y)| (*x as i128) * (*y as i128)).sum()
}

fn dot_weight(a: &[i64], w: &Weight) -> LexVec {
    let mut acc = LexVec::zero(w.rank());
    for (c, e) in a.iter().zip(w.entries()) {
        acc = acc.add(&e.scale(*c));
    }
    acc
}

/// `true` when `w` and `v` order all pairs of `support` identically:
/// `a.w >= b.w` exactly when `a.v >= b.v`.
pub fn equiv_on(support: &[Vec<i64>], w: &Weight, v: &[i64]) -> bool {
    for a in support {
        for b in support {
            let ge_w = dot_weight(a, w) >= dot_weight(b, w);
            let ge_v = dot_i64(a, v) >= dot_i64(b, v);
            if ge_w != ge_v {
                return false;
            }
        }
    }
    true
}

/// Replaces `w` by an integer vector `v` with the same dot-product order
/// on `support`. With `sign_preserving` the comparison set is augmented
/// by the origin and the unit vectors, so each `v_i` has the sign of
/// `w_i`.
pub fn approximate_weight(
    support: &[Vec<i64>],
    w: &Weight,
    sign_preserving: bool,
) -> Result<EquivWitness, WapproxError> {
    let n = w.len();
    if support.iter().any(|a| a.len() != n) {
        return Err(WapproxError::RankMismatch);
    }
    let mut pts: Vec<Vec<i64>> = support.to_vec();
    if sign_preserving {
        pts.push(vec![0; n]);
        for i in 0..n {
            let mut e = vec![0i64; n];
            e[i] = 1;
            pts.push(e);
        }
    }
    pts.sort();
    pts.dedup();

    let r = w.rank();
    // Differences with strictly larger w-value; equal-value differences
    // vanish automatically after the basis projection below.
    let mut strict: Vec<Vec<i64>> = Vec::new();
    for a in &pts {
        for b in &pts {
            if dot_weight(a, w) > dot_weight(b, w) {
                let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                // Project onto the group coordinates: row = W * diff.
                let mut row = vec![0i64; r];
                for (c, e) in diff.iter().zip(w.entries()) {
                    for (ri, coord) in e.coords().iter().enumerate() {
                        row[ri] = row[ri]
                            .checked_add(coord.checked_mul(*c).expect("overflow"))
                            .expect("overflow");
                    }
                }
                strict.push(row);
            }
        }
    }
    strict.sort();
    strict.dedup();

    let vprime = match strict_positive_vector(&strict) {
        StrictVector::Found(v) => v,
        StrictVector::Infeasible => return Err(WapproxError::InternalInfeasible),
    };
    // v = W^T v' : v_i = <w_i, v'>.
    let v: Vec<i64> = w
        .entries()
        .iter()
        .map(|e| {
            e.coords()
                .iter()
                .zip(&vprime)
                .map(|(c, x)| (*c as i128) * (*x as i128))
                .sum::<i128>()
                .try_into()
                .expect("approximation exceeds i64")
        })
        .collect();
    let witness = EquivWitness {
        v,
        support: pts,
    };
    if !witness.verify(w) {
        return Err(WapproxError::InternalInfeasible);
    }
    Ok(witness)
}

/// A rank-one weight making every `f_i` initial form a single term:
/// the dominance vector `v_j = (B+1)^(j-1)` with `B` exceeding every
/// exponent, which is injective on the support box.
pub fn monomializing_weight(fs: &[Polynomial]) -> Result<Weight, WapproxError> {
    if fs.is_empty() {
        return Err(WapproxError::ZeroComponent);
    }
    if fs.iter().any(|f| f.is_zero()) {
        return Err(WapproxError::ZeroComponent);
    }
    let n = fs[0].nvars();
    let b = fs.iter().map(|f| f.max_exponent()).max().unwrap_or(0) as i64 + 1;
    let mut vs = Vec::with_capacity(n);
    let mut cur: i64 = 1;
    for _ in 0..n {
        vs.push(cur);
        cur = cur.checked_mul(b + 1).expect("dominance weight overflow");
    }
    Ok(Weight::from_ints(&vs))
}

/// A single integer weight whose initial forms equal the `s`-fold
/// iterated initial forms for the given weight sequence. When the first
/// weight is strictly positive the result is strictly positive.
pub fn refine_weight(ws: &[Weight], fs: &[Polynomial]) -> Result<Weight, WapproxError> {
    if ws.is_empty() {
        return Err(WapproxError::RankMismatch);
    }
    if fs.iter().any(|f| f.is_zero()) {
        return Err(WapproxError::ZeroComponent);
    }
    let n = ws[0].len();
    if fs.iter().any(|f| f.nvars() != n) || ws.iter().any(|w| w.len() != n) {
        return Err(WapproxError::RankMismatch);
    }
    let support: Vec<Vec<i64>> = {
        let mut pts: Vec<Vec<i64>> = fs
            .iter()
            .flat_map(|f| {
                f.support()
                    .map(|e| e.iter().map(|&x| x as i64).collect::<Vec<i64>>())
                    .collect::<Vec<_>>()
            })
            .collect();
        pts.sort();
        pts.dedup();
        pts
    };

    if ws.len() == 1 {
        let wit = approximate_weight(&support, &ws[0], true)?;
        return Ok(Weight::from_ints(&wit.v));
    }

    let head = refine_weight(&ws[..ws.len() - 1], fs)?;
    let vprime: Vec<i64> = head.entries().iter().map(|e| e.coords()[0]).collect();
    let tail = approximate_weight(&support, ws.last().unwrap(), true)?;
    let vsecond = tail.v;

    // v(t) = v' + t v''; find the exact rational threshold below which the
    // v'-initial forms stay dominant, then take the midpoint t0/2.
    let wv = Weight::from_ints(&vprime);
    let mut t0: Option<BigRational> = None;
    let mut shrink = |num: i128, den: i128| {
        // constraint: valid for t < num/den with den > 0
        let bound = BigRational::new(BigInt::from(num), BigInt::from(den));
        t0 = Some(match t0.take() {
            None => bound,
            Some(old) => old.min(bound),
        });
    };
    for f in fs {
        let top = initial_form(f, &wv).map_err(|_| WapproxError::RankMismatch)?;
        let dtop = match deg(f, &wv).unwrap() {
            Deg::Fin(v) => v.coords()[0],
            Deg::MinusInf => unreachable!("nonzero polynomial"),
        };
        let amax: i128 = top
            .support()
            .map(|e| dot_i64(&e.iter().map(|&x| x as i64).collect::<Vec<_>>(), &vsecond))
            .max()
            .unwrap();
        let rest = f.sub(&top).expect("same arity");
        for e in rest.support() {
            let ei: Vec<i64> = e.iter().map(|&x| x as i64).collect();
            let bv = dot_i64(&ei, &vprime);
            let bs = dot_i64(&ei, &vsecond);
            // need: dtop + t*amax > bv + t*bs  for chosen t > 0
            let gap = dtop as i128 - bv; // > 0 at t = 0
            debug_assert!(gap > 0);
            let slope = amax - bs;
            if slope < 0 {
                shrink(gap, -slope);
            }
        }
    }
    // Keep positivity when the head weight is strictly positive.
    if ws[0].all_pos() {
        for (p, s) in vprime.iter().zip(&vsecond) {
            if *s < 0 {
                shrink(*p as i128, -(*s as i128));
            }
        }
    }
    let t = match t0 {
        None => BigRational::one(),
        Some(bound) => bound / BigRational::from_integer(2.into()),
    };
    // v = den*v' + num*v'' cleared to integers.
    let num = t.numer().to_i64().expect("threshold numerator overflow");
    let den = t.denom().to_i64().expect("threshold denominator overflow");
    let v: Vec<i64> = vprime
        .iter()
        .zip(&vsecond)
        .map(|(p, s)| {
            p.checked_mul(den)
                .and_then(|x| s.checked_mul(num).map(|y| (x, y)))
                .map(|(x, y)| x.checked_add(y))
                .flatten()
                .expect("refined weight overflow")
        })
        .collect();
    let out = Weight::from_ints(&v);

    // The defining property is checked exactly before returning.
    for f in fs {
        let mut iter = f.clone();
        for w in ws {
            iter = initial_form(&iter, w).map_err(|_| WapproxError::RankMismatch)?;
        }
        let direct = initial_form(f, &out).map_err(|_| WapproxError::RankMismatch)?;
        if iter != direct {
            return Err(WapproxError::InternalInfeasible);
        }
    }
    Ok(out)
}

/// Nonnegative-combination membership `d = sum a_i g_i`, returning the
/// lexicographically smallest coefficient vector.
///
/// Rank one uses a reachability table per generator suffix; higher ranks
/// enumerate under a strictly positive functional found for the
/// generators. Generators equal to zero are dropped (their coefficient is
/// normalized to zero).
pub fn semigroup_member(
    d: &LexVec,
    gens: &[LexVec],
) -> Result<Option<Vec<u64>>, WapproxError> {
    let rank = d.rank();
    if gens.iter().any(|g| g.rank() != rank) {
        return Err(WapproxError::RankMismatch);
    }
    let zero = LexVec::zero(rank);
    let live: Vec<(usize, &LexVec)> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .collect();

    let mut out = vec![0u64; gens.len()];
    if d.is_zero() {
        return Ok(Some(out));
    }
    if live.is_empty() {
        return Ok(None);
    }

    if rank == 1 && live.iter().all(|(_, g)| **g > zero) && *d > zero {
        let target = d.coords()[0] as u64;
        if target > 5_000_000 {
            return Err(WapproxError::UnboundedSemigroup);
        }
        let steps: Vec<u64> = live.iter().map(|(_, g)| g.coords()[0] as u64).collect();
        // reach[i][v]: v representable using generators i.. .
        let k = steps.len();
        let mut reach = vec![vec![false; target as usize + 1]; k + 1];
        reach[k][0] = true;
        for i in (0..k).rev() {
            for v in 0..=target {
                let mut ok = reach[i + 1][v as usize];
                if !ok && v >= steps[i] {
                    ok = reach[i][(v - steps[i]) as usize];
                }
                reach[i][v as usize] = ok;
            }
        }
        if !reach[0][target as usize] {
            return Ok(None);
        }
        let mut rem = target;
        for i in 0..k {
            let mut a = 0u64;
            while !reach[i + 1][rem as usize] {
                rem -= steps[i];
                a += 1;
            }
            out[live[i].0] = a;
        }
        return Ok(Some(out));
    }

    // General rank: bound coefficients by a strictly positive functional.
    let rows: Vec<Vec<i64>> = live.iter().map(|(_, g)| g.coords().to_vec()).collect();
    let lambda = match strict_positive_vector(&rows) {
        StrictVector::Found(v) => v,
        StrictVector::Infeasible => return Err(WapproxError::UnboundedSemigroup),
    };
    let budget = dot_i64(d.coords(), &lambda);
    if budget < 0 {
        return Ok(None);
    }
    let vals: Vec<i128> = rows.iter().map(|g| dot_i64(g, &lambda)).collect();
    // Depth-first search, smallest coefficient first, gives the smallest
    // lexicographic solution directly.
    fn dfs(
        idx: usize,
        rem: &LexVec,
        budget: i128,
        live: &[(usize, &LexVec)],
        vals: &[i128],
        acc: &mut Vec<u64>,
    ) -> bool {
        if idx == live.len() {
            return rem.is_zero();
        }
        let mut count = 0u64;
        let mut cur = rem.clone();
        loop {
            let spent = vals[idx] * count as i128;
            if spent > budget {
                break;
            }
            acc[idx] = count;
            if dfs(idx + 1, &cur, budget - spent, live, vals, acc) {
                return true;
            }
            cur = cur.sub(live[idx].1);
            count += 1;
        }
        acc[idx] = 0;
        false
    }
    let mut acc = vec![0u64; live.len()];
    if dfs(0, d, budget, &live, &vals, &mut acc) {
        for (slot, (orig, _)) in acc.iter().zip(&live) {
            out[*orig] = *slot;
        }
        Ok(Some(out))
    } else {
        Ok(None)
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
    fn strict_vector_simple_cases() {
        let got = strict_positive_vector(&[vec![1, 0], vec![0, 1]]);
        let v = got.found().unwrap();
        assert!(v[0] >= 1 && v[1] >= 1);
        assert_eq!(
            strict_positive_vector(&[vec![1, 0], vec![-1, 0]]),
            StrictVector::Infeasible
        );
        let got = strict_positive_vector(&[vec![2, -1], vec![-1, 2]]);
        let v = got.found().unwrap();
        assert!(2 * v[0] - v[1] >= 1 && -v[0] + 2 * v[1] >= 1);
    }

    #[test]
    fn strict_vector_agrees_with_box_search() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(1..=3);
            let m = rng.gen_range(1..=5);
            let rows: Vec<Vec<i64>> = (0..m)
                .map(|_| (0..n).map(|_| rng.gen_range(-4..=4)).collect())
                .collect();
            let fm = strict_positive_vector(&rows);
            let box_hit = box_search(&rows, 5);
            match fm {
                StrictVector::Found(v) => {
                    assert!(rows.iter().all(|a| dot_i64(a, &v) >= 1));
                }
                StrictVector::Infeasible => {
                    assert!(box_hit.is_none(), "rows {rows:?}");
                }
            }
        }
    }

    fn box_search(rows: &[Vec<i64>], k: i64) -> Option<Vec<i64>> {
        let n = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut v = vec![-k; n];
        loop {
            if rows.iter().all(|a| dot_i64(a, &v) >= 1) {
                return Some(v);
            }
            let mut i = 0;
            loop {
                if i == n {
                    return None;
                }
                v[i] += 1;
                if v[i] <= k {
                    break;
                }
                v[i] = -k;
                i += 1;
            }
        }
    }

    #[test]
    fn approximation_identity_for_rank_one() {
        let w = Weight::from_ints(&[3, 5]);
        let support = vec![vec![1, 0], vec![0, 1], vec![2, 1]];
        let wit = approximate_weight(&support, &w, false).unwrap();
        assert!(wit.verify(&w));
    }

    #[test]
    fn approximation_rank_two_example() {
        // w = ((0,1),(1,0)) lex: x2 dominates; v must give v1 < 2 v1 < v2.
        let w = Weight::new(vec![LexVec::new(vec![0, 1]), LexVec::new(vec![1, 0])]).unwrap();
        let support = vec![vec![1, 0], vec![0, 1], vec![2, 0]];
        let wit = approximate_weight(&support, &w, false).unwrap();
        assert!(wit.verify(&w));
        let v = &wit.v;
        assert!(v[0] < 2 * v[0] && 2 * v[0] < v[1]);
    }

    #[test]
    fn approximation_preserves_signs() {
        let w = Weight::new(vec![
            LexVec::new(vec![0, 1]),
            LexVec::new(vec![-1, 0]),
            LexVec::new(vec![0, 0]),
        ])
        .unwrap();
        let support = vec![vec![1, 1, 0], vec![0, 2, 1]];
        let wit = approximate_weight(&support, &w, true).unwrap();
        assert!(wit.v[0] > 0);
        assert!(wit.v[1] < 0);
        assert_eq!(wit.v[2], 0);
    }

    #[test]
    fn monomializing_single_term() {
        let f = q(2, "x1 + x2");
        let w = monomializing_weight(&[f.clone()]).unwrap();
        assert_eq!(initial_form(&f, &w).unwrap().num_terms(), 1);
        let g = q(2, "x1^2 + x1*x2 + x2^2");
        let w = monomializing_weight(&[g.clone()]).unwrap();
        assert_eq!(initial_form(&g, &w).unwrap().num_terms(), 1);
    }

    #[test]
    fn monomial_inputs_stay_fixed() {
        let f = q(2, "3*x1^2*x2");
        let w = monomializing_weight(&[f.clone()]).unwrap();
        assert_eq!(initial_form(&f, &w).unwrap(), f);
    }

    #[test]
    fn refine_matches_iterated_forms() {
        let f = q(2, "x1 + x2 + x2^2");
        let w1 = Weight::from_ints(&[1, 1]);
        let w2 = Weight::from_ints(&[0, 1]);
        let w = refine_weight(&[w1, w2], &[f.clone()]).unwrap();
        assert_eq!(initial_form(&f, &w).unwrap(), q(2, "x2^2"));
    }

    #[test]
    fn refine_keeps_positivity() {
        let f = q(2, "x1^3 + x1*x2 + x2");
        let w1 = Weight::from_ints(&[1, 2]);
        let w2 = Weight::from_ints(&[5, 1]);
        let w = refine_weight(&[w1, w2], &[f]).unwrap();
        assert!(w.all_pos());
    }

    #[test]
    fn coin_membership() {
        let d = LexVec::scalar(6);
        let gens = [LexVec::scalar(2), LexVec::scalar(3)];
        assert_eq!(semigroup_member(&d, &gens).unwrap(), Some(vec![0, 2]));
        assert_eq!(
            semigroup_member(&LexVec::scalar(1), &gens).unwrap(),
            None
        );
        assert_eq!(
            semigroup_member(&LexVec::scalar(2), &gens).unwrap(),
            Some(vec![1, 0])
        );
    }

    #[test]
    fn membership_cross_checked_by_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let k = rng.gen_range(1..=3);
            let gens: Vec<LexVec> = (0..k)
                .map(|_| LexVec::scalar(rng.gen_range(1..=9)))
                .collect();
            let d = LexVec::scalar(rng.gen_range(0..=30));
            let got = semigroup_member(&d, &gens).unwrap();
            let want = brute_member(d.coords()[0], &gens);
            assert_eq!(got.is_some(), want, "d={d:?} gens={gens:?}");
            if let Some(coeffs) = got {
                let mut acc = 0i64;
                for (c, g) in coeffs.iter().zip(&gens) {
                    acc += *c as i64 * g.coords()[0];
                }
                assert_eq!(acc, d.coords()[0]);
            }
        }
    }

    fn brute_member(d: i64, gens: &[LexVec]) -> bool {
        fn rec(d: i64, gens: &[i64]) -> bool {
            if gens.is_empty() {
                return d == 0;
            }
            let g = gens[0];
            let mut v = d;
            while v >= 0 {
                if rec(v, &gens[1..]) {
                    return true;
                }
                v -= g;
            }
            false
        }
        let gs: Vec<i64> = gens.iter().map(|g| g.coords()[0]).collect();
        rec(d, &gs)
    }

    #[test]
    fn rank_two_membership() {
        let g1 = LexVec::new(vec![1, 0]);
        let g2 = LexVec::new(vec![0, 1]);
        let d = LexVec::new(vec![2, 3]);
        assert_eq!(
            semigroup_member(&d, &[g1, g2]).unwrap(),
            Some(vec![2, 3])
        );
    }

    #[test]
    fn unbounded_when_no_positive_functional() {
        let gens = [LexVec::scalar(2), LexVec::scalar(-3)];
        assert_eq!(
            semigroup_member(&LexVec::scalar(5), &gens),
            Err(WapproxError::UnboundedSemigroup)
        );
    }
}
