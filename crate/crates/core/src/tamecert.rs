//! Constructive realizers: stable-coordinate degree witnesses,
//! factorization of minimal-degree automorphisms into affine and
//! elementary generators, plane (two-variable) multidegree realization,
//! elementary chains hitting a target multidegree, and realizers that fix
//! the last variable.
//!
//! Every emitted word is wrapped in a [`Certificate`] that re-verifies
//! the target multidegree and the nonzero-divisor property of the
//! component initial forms at construction time.

use crate::autmap::{aut_w_member, AutError, AutWord, Generator};
use crate::coeff::{Coeff, Ring};
use crate::poly::{EndoTuple, PolyError, Polynomial};
use crate::wapprox::{semigroup_member, WapproxError};
use crate::worder::{deg, initial_form, mdeg, Deg, DegError, LexVec, Weight};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RealizeError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("no construction case applies: {0}")]
    NoCaseApplies(String),
    #[error("emitted word failed verification: {0}")]
    ConstructionFailed(String),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Semigroup(#[from] WapproxError),
    #[error("mismatched variable count or ring")]
    ArityMismatch,
}

impl From<PolyError> for RealizeError {
    fn from(e: PolyError) -> Self {
        RealizeError::Aut(AutError::from(e))
    }
}

impl From<DegError> for RealizeError {
    fn from(_: DegError) -> Self {
        RealizeError::ArityMismatch
    }
}

fn precond(msg: impl Into<String>) -> RealizeError {
    RealizeError::PreconditionFailed(msg.into())
}

/// Verified postconditions of a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertChecks {
    pub mdeg_matches: bool,
    pub initials_nonzerodivisors: bool,
    pub elementary_word: bool,
    /// Components at and after this index verified to equal the
    /// corresponding variables.
    pub fixed_tail_from: Option<usize>,
}

/// A word plus its verified postconditions; re-runnable via
/// [`Certificate::reverify`].
#[derive(Debug, Clone)]
pub struct Certificate {
    pub word: AutWord,
    pub target: Vec<LexVec>,
    pub weight: Weight,
    pub checks: CertChecks,
}

impl Certificate {
    /// Wraps a word, verifying the target multidegree, the
    /// nonzero-divisor property of initial forms, and an optional fixed
    /// tail. Fails instead of producing an unverified certificate.
    pub fn build(
        word: AutWord,
        weight: &Weight,
        target: &[LexVec],
        fixed_tail_from: Option<usize>,
        require_elementary: bool,
    ) -> Result<Certificate, RealizeError> {
        let m = mdeg(word.tuple(), weight)?;
        let want: Vec<Deg> = target.iter().map(|v| Deg::Fin(v.clone())).collect();
        if m.entries() != &want[..] {
            return Err(RealizeError::ConstructionFailed(format!(
                "multidegree {m} does not match target {want:?}"
            )));
        }
        let initials = aut_w_member(word.tuple(), weight).map_err(RealizeError::from)?;
        if !initials {
            return Err(RealizeError::ConstructionFailed(
                "a component initial form is a zero divisor".into(),
            ));
        }
        let elementary = word.is_elementary_word();
        if require_elementary && !elementary {
            return Err(RealizeError::ConstructionFailed(
                "word contains an affine generator".into(),
            ));
        }
        if let Some(k) = fixed_tail_from {
            let ring = *word.ring();
            let n = word.nvars();
            for i in k..n {
                if *word.tuple().component(i) != Polynomial::variable(ring, n, i) {
                    return Err(RealizeError::ConstructionFailed(format!(
                        "component {} does not fix its variable",
                        i + 1
                    )));
                }
            }
        }
        Ok(Certificate {
            word,
            target: target.to_vec(),
            weight: weight.clone(),
            checks: CertChecks {
                mdeg_matches: true,
                initials_nonzerodivisors: true,
                elementary_word: elementary,
                fixed_tail_from,
            },
        })
    }

    /// Recomputes every recorded check from scratch.
    pub fn reverify(&self) -> bool {
        let m = match mdeg(self.word.tuple(), &self.weight) {
            Ok(m) => m,
            Err(_) => return false,
        };
        let want: Vec<Deg> = self.target.iter().map(|v| Deg::Fin(v.clone())).collect();
        if m.entries() != &want[..] {
            return false;
        }
        if !matches!(aut_w_member(self.word.tuple(), &self.weight), Ok(true)) {
            return false;
        }
        if self.checks.elementary_word && !self.word.is_elementary_word() {
            return false;
        }
        if let Some(k) = self.checks.fixed_tail_from {
            let ring = *self.word.ring();
            let n = self.word.nvars();
            for i in k..n {
                if *self.word.tuple().component(i) != Polynomial::variable(ring, n, i) {
                    return false;
                }
            }
        }
        true
    }
}

/// `d = l * base` for a positive integer `l`, when one exists.
pub fn int_multiple(d: &LexVec, base: &LexVec) -> Option<u32> {
    if base.is_zero() {
        return if d.is_zero() { Some(1) } else { None };
    }
    let (idx, &bc) = base
        .coords()
        .iter()
        .enumerate()
        .find(|(_, &c)| c != 0)
        .unwrap();
    let dc = d.coords()[idx];
    if bc == 0 || dc % bc != 0 {
        return None;
    }
    let l = dc / bc;
    if l < 1 || l > u32::MAX as i64 {
        return None;
    }
    if *d == base.scale(l) {
        Some(l as u32)
    } else {
        None
    }
}

fn monic_monomial(ring: Ring, n: usize, exps: Vec<u32>) -> Polynomial {
    let one = ring.one();
    Polynomial::monomial(ring, n, exps, one)
}

/// Witness that a degree is attained by a stable coordinate: either a
/// plain variable, or `x_i + prod_{j != i} x_j^{a_j}`.
#[derive(Debug, Clone)]
pub struct CoordWitness {
    pub index: usize,
    pub exponents: Option<Vec<u64>>,
    pub coordinate: Polynomial,
    pub word: AutWord,
    pub degree: LexVec,
}

/// Searches for a coordinate of the given degree: representability of
/// `d` as a combination of the other weights (with `d >= w_i`) yields
/// `x_i + prod x_j^{a_j}`; otherwise a bare variable when `d` equals
/// some weight entry. `None` means no stable coordinate of that degree
/// exists.
pub fn stable_coordinate_witness(
    d: &LexVec,
    w: &Weight,
    ring: Ring,
) -> Result<Option<CoordWitness>, RealizeError> {
    if !w.all_nonneg() {
        return Err(precond("weight must be nonnegative"));
    }
    let n = w.len();
    for i in 0..n {
        if d < w.entry(i) {
            continue;
        }
        let gens: Vec<LexVec> = (0..n)
            .filter(|&j| j != i)
            .map(|j| w.entry(j).clone())
            .collect();
        if let Some(coeffs) = semigroup_member(d, &gens)? {
            let mut exps = vec![0u64; n];
            for (slot, j) in (0..n).filter(|&j| j != i).enumerate() {
                exps[j] = coeffs[slot];
            }
            let e32: Vec<u32> = exps
                .iter()
                .map(|&a| u32::try_from(a).map_err(|_| precond("exponent too large")))
                .collect::<Result<_, _>>()?;
            let p = monic_monomial(ring, n, e32);
            let gen = Generator::elementary(i, ring.one(), p)?;
            let word = AutWord::new(ring, n, vec![gen])?;
            let coordinate = word.tuple().component(i).clone();
            if deg(&coordinate, w)? != Deg::Fin(d.clone()) {
                return Err(RealizeError::ConstructionFailed(
                    "witness degree mismatch".into(),
                ));
            }
            return Ok(Some(CoordWitness {
                index: i,
                exponents: Some(exps),
                coordinate,
                word,
                degree: d.clone(),
            }));
        }
    }
    for i in 0..n {
        if d == w.entry(i) {
            let word = AutWord::identity(ring, n);
            return Ok(Some(CoordWitness {
                index: i,
                exponents: None,
                coordinate: Polynomial::variable(ring, n, i),
                word,
                degree: d.clone(),
            }));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------
// Two-variable realization
// ---------------------------------------------------------------------

/// Construction plan for a two-variable multidegree target. Fields name
/// the tuple position `i` carrying the large component and the base
/// variable `r` (both zero-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoVarPlan {
    Identity,
    Swap,
    /// `g_j = x_s + x_r^l`, `g_i = x_r + (x_s + x_r^l)^u`.
    Power { i: usize, r: usize, l: u32, u: u32 },
    /// `g_j = x_s + x_r^l`, `g_i = x_r` (the i-entry equals `w_r`).
    PowerBase { i: usize, r: usize, l: u32 },
    /// `g_j = x_r`, `g_i = x_s + x_r^u` with `u w_r > w_s`.
    VariableBase { i: usize, r: usize, u: u32 },
}

/// Decides attainability of `(d0, d1)` as a two-variable multidegree
/// over `w` and returns an emission plan; `None` when the target fails
/// the divisibility structure forced by the plane automorphism theory.
pub fn plan_2var(d0: &LexVec, d1: &LexVec, w: &Weight) -> Option<TwoVarPlan> {
    assert_eq!(w.len(), 2);
    let d = [d0.clone(), d1.clone()];
    if d[0] == *w.entry(0) && d[1] == *w.entry(1) {
        return Some(TwoVarPlan::Identity);
    }
    if d[0] == *w.entry(1) && d[1] == *w.entry(0) {
        return Some(TwoVarPlan::Swap);
    }
    for i in 0..2usize {
        let j = 1 - i;
        for r in 0..2usize {
            let s = 1 - r;
            let wr = w.entry(r);
            let ws = w.entry(s);
            // base component j carries x_s + x_r^l
            if let Some(l) = int_multiple(&d[j], wr) {
                if d[j] >= *ws {
                    if d[i] == *wr {
                        return Some(TwoVarPlan::PowerBase { i, r, l });
                    }
                    if let Some(u) = int_multiple(&d[i], &d[j]) {
                        return Some(TwoVarPlan::Power { i, r, l, u });
                    }
                }
            }
            // base component j is the bare variable x_r
            if d[j] == *wr {
                if let Some(u) = int_multiple(&d[i], wr) {
                    if d[i] > *ws {
                        return Some(TwoVarPlan::VariableBase { i, r, u });
                    }
                }
            }
        }
    }
    None
}

/// Emits the two-variable word for a plan.
pub fn emit_2var(plan: &TwoVarPlan, ring: Ring) -> Result<AutWord, RealizeError> {
    let one = ring.one();
    let word = match plan {
        TwoVarPlan::Identity => AutWord::identity(ring, 2),
        TwoVarPlan::Swap => AutWord::new(ring, 2, vec![Generator::permutation(vec![1, 0])?])?,
        TwoVarPlan::Power { i, r, l, u } => {
            let s = 1 - r;
            let mut e_rl = vec![0u32; 2];
            e_rl[*r] = *l;
            let g1 = Generator::elementary(s, one.clone(), monic_monomial(ring, 2, e_rl))?;
            let mut e_su = vec![0u32; 2];
            e_su[s] = *u;
            let g2 = Generator::elementary(*r, one.clone(), monic_monomial(ring, 2, e_su))?;
            let mut gens = vec![g1, g2];
            // the large component sits at slot r; move it to position i
            if *i != *r {
                gens.push(Generator::permutation(vec![1, 0])?);
            }
            AutWord::new(ring, 2, gens)?
        }
        TwoVarPlan::PowerBase { i, r, l } => {
            let s = 1 - r;
            let mut e_rl = vec![0u32; 2];
            e_rl[*r] = *l;
            let g1 = Generator::elementary(s, one.clone(), monic_monomial(ring, 2, e_rl))?;
            let mut gens = vec![g1];
            // slot r carries the bare variable; move it to position i
            if *i != *r {
                gens.push(Generator::permutation(vec![1, 0])?);
            }
            AutWord::new(ring, 2, gens)?
        }
        TwoVarPlan::VariableBase { i, r, u } => {
            let s = 1 - r;
            let mut e_ru = vec![0u32; 2];
            e_ru[*r] = *u;
            let g1 = Generator::elementary(s, one.clone(), monic_monomial(ring, 2, e_ru))?;
            let mut gens = vec![g1];
            // slot s carries the large component; move it to position i
            if *i != s {
                gens.push(Generator::permutation(vec![1, 0])?);
            }
            AutWord::new(ring, 2, gens)?
        }
    };
    Ok(word)
}

/// Realizes a two-entry multidegree over a two-entry nonnegative weight,
/// or returns `None` when the divisibility structure rules it out.
pub fn realize_2var(
    d: &[LexVec; 2],
    w: &Weight,
    ring: Ring,
) -> Result<Option<Certificate>, RealizeError> {
    if w.len() != 2 {
        return Err(RealizeError::ArityMismatch);
    }
    if !w.all_nonneg() {
        return Err(precond("weight must be nonnegative"));
    }
    let plan = match plan_2var(&d[0], &d[1], w) {
        Some(p) => p,
        None => return Ok(None),
    };
    let word = emit_2var(&plan, ring)?;
    let cert = Certificate::build(word, w, d, None, true)?;
    Ok(Some(cert))
}

/// Extends a word over fewer variables by fixing the remaining ones.
pub fn embed_word(word: &AutWord, n: usize) -> Result<AutWord, RealizeError> {
    let small = word.nvars();
    if small > n {
        return Err(RealizeError::ArityMismatch);
    }
    let ring = *word.ring();
    let gens = word
        .generators()
        .iter()
        .map(|g| embed_generator(g, n))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AutWord::new(ring, n, gens)?)
}

fn embed_generator(g: &Generator, n: usize) -> Result<Generator, RealizeError> {
    Ok(match g {
        Generator::Elementary { var, unit, p } => Generator::Elementary {
            var: *var,
            unit: unit.clone(),
            p: p.embed(n)?,
        },
        Generator::Permutation { sigma } => {
            let mut s = sigma.clone();
            for i in sigma.len()..n {
                s.push(i);
            }
            Generator::Permutation { sigma: s }
        }
        Generator::Affine { matrix, shift } => {
            let small = matrix.len();
            let is_rat = matches!(
                shift.first().or_else(|| matrix.first().and_then(|r| r.first())),
                Some(Coeff::Rat(_))
            );
            let zero = if is_rat {
                Ring::Rationals.zero()
            } else {
                Coeff::Res(0)
            };
            let one = if is_rat {
                Ring::Rationals.one()
            } else {
                Coeff::Res(1)
            };
            let mut m = vec![vec![zero.clone(); n]; n];
            for (i, row) in matrix.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    m[i][j] = c.clone();
                }
            }
            for i in small..n {
                m[i][i] = one.clone();
            }
            let mut sh = shift.clone();
            sh.resize(n, zero);
            Generator::Affine {
                matrix: m,
                shift: sh,
            }
        }
    })
}

/// Realizes a target whose tail entries equal the tail weights, fixing
/// the tail variables: the first two entries are realized in the plane.
pub fn realize_fixed_tail(
    d: &[LexVec],
    w: &Weight,
    ring: Ring,
) -> Result<Certificate, RealizeError> {
    let n = w.len();
    if d.len() != n || n < 2 {
        return Err(RealizeError::ArityMismatch);
    }
    if !w.all_nonneg() {
        return Err(precond("weight must be nonnegative"));
    }
    for i in 2..n {
        if d[i] != *w.entry(i) {
            return Err(precond(format!(
                "(c): tail entry {} must equal its weight",
                i + 1
            )));
        }
    }
    let plane_w = Weight::new(vec![w.entry(0).clone(), w.entry(1).clone()]).unwrap();
    let plan = plan_2var(&d[0], &d[1], &plane_w)
        .ok_or_else(|| precond("(a)/(b): plane target is not attainable"))?;
    let plane_word = emit_2var(&plan, ring)?;
    let word = embed_word(&plane_word, n)?;
    let tail = if n > 2 { Some(2) } else { None };
    Certificate::build(word, w, d, tail, true)
}

// ---------------------------------------------------------------------
// Elementary chains
// ---------------------------------------------------------------------

/// Appends elementary steps to `psi` so that the composition attains the
/// multidegree `d`. `sigma`, `tau` are zero-based permutations and `r`
/// the number of active chain steps; entries past `r` must match
/// directly. The hypothesis is checked step by step via semigroup
/// membership.
pub fn chain_realize(
    psi: &AutWord,
    sigma: &[usize],
    tau: &[usize],
    r: usize,
    d: &[LexVec],
    e: &[LexVec],
    w: &Weight,
) -> Result<Certificate, RealizeError> {
    let n = w.len();
    let ring = *psi.ring();
    if psi.nvars() != n || sigma.len() != n || tau.len() != n || d.len() != n || e.len() != n {
        return Err(RealizeError::ArityMismatch);
    }
    if r > n {
        return Err(precond("r exceeds the variable count"));
    }
    let m = mdeg(psi.tuple(), w)?;
    let e_deg: Vec<Deg> = e.iter().map(|v| Deg::Fin(v.clone())).collect();
    if m.entries() != &e_deg[..] {
        return Err(precond("base word multidegree does not match e"));
    }
    if !aut_w_member(psi.tuple(), w).map_err(RealizeError::from)? {
        return Err(precond("base word has a zero-divisor initial form"));
    }

    let dd: Vec<LexVec> = sigma.iter().map(|&i| d[i].clone()).collect();
    let ee: Vec<LexVec> = tau.iter().map(|&i| e[i].clone()).collect();
    for i in r..n {
        if dd[i] != ee[i] {
            return Err(precond(format!(
                "entry {} must match its base degree when past the chain",
                i + 1
            )));
        }
    }

    let one = ring.one();
    let mut gens: Vec<Generator> = vec![Generator::permutation(tau.to_vec())?];
    for i in 0..r {
        if dd[i] < ee[i] {
            return Err(precond(format!("chain step {}: target below base", i + 1)));
        }
        let gens_list: Vec<LexVec> = dd[..i]
            .iter()
            .cloned()
            .chain(ee[i + 1..].iter().cloned())
            .collect();
        let coeffs = semigroup_member(&dd[i], &gens_list)?
            .ok_or_else(|| precond(format!("chain step {}: membership fails", i + 1)))?;
        if dd[i] > ee[i] {
            let mut exps = vec![0u32; n];
            for (slot, a) in coeffs.iter().enumerate() {
                let j = if slot < i { slot } else { slot + 1 };
                exps[j] =
                    u32::try_from(*a).map_err(|_| precond("decomposition exponent too large"))?;
            }
            gens.push(Generator::elementary(
                i,
                one.clone(),
                monic_monomial(ring, n, exps),
            )?);
        }
    }
    let mut sigma_inv = vec![0usize; n];
    for (i, &s) in sigma.iter().enumerate() {
        sigma_inv[s] = i;
    }
    gens.push(Generator::permutation(sigma_inv)?);

    let phi = AutWord::new(ring, n, gens)?;
    let word = psi.compose(&phi)?;
    Certificate::build(word, w, d, None, psi.is_elementary_word())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out.sort();
    out
}

/// Realizes a three-entry target over a strictly positive weight from
/// the chained memberships `d1 in <w2,w3>`, `d2 in <d1,w3>`,
/// `d3 in <d1,d2>` plus one of the side conditions; the concrete
/// permutation data is found by sweeping the chain hypothesis.
pub fn realize_triple(d: &[LexVec], w: &Weight, ring: Ring) -> Result<Certificate, RealizeError> {
    if w.len() != 3 || d.len() != 3 {
        return Err(RealizeError::ArityMismatch);
    }
    if !w.all_pos() {
        return Err(precond("weight must be strictly positive"));
    }
    let span = |target: &LexVec, a: &LexVec, b: &LexVec| -> Result<bool, RealizeError> {
        Ok(semigroup_member(target, &[a.clone(), b.clone()])?.is_some())
    };
    if !span(&d[0], w.entry(1), w.entry(2))? {
        return Err(precond("membership of the first entry in <w2,w3> fails"));
    }
    if !span(&d[1], &d[0], w.entry(2))? {
        return Err(precond("membership of the second entry in <d1,w3> fails"));
    }
    if !span(&d[2], &d[0], &d[1])? {
        return Err(precond("membership of the third entry in <d1,d2> fails"));
    }
    let cond_a = d[0] <= d[1];
    let cond_b = d[1] >= *w.entry(1);
    let cond_c = d[1] == *w.entry(2);
    let cond_d = semigroup_member(&d[0], &[w.entry(2).clone()])?.is_some()
        || semigroup_member(&d[0], &[w.entry(1).clone(), d[1].clone()])?.is_some();
    if !(cond_a || cond_b || cond_c || cond_d) {
        return Err(precond("none of the side conditions (a)-(d) holds"));
    }

    let e: Vec<LexVec> = w.entries().to_vec();
    let psi = AutWord::identity(ring, 3);
    let perms = permutations(3);
    for r in 0..=3usize {
        for sigma in &perms {
            'tau: for tau in &perms {
                let dd: Vec<LexVec> = sigma.iter().map(|&i| d[i].clone()).collect();
                let ee: Vec<LexVec> = tau.iter().map(|&i| e[i].clone()).collect();
                for i in r..3 {
                    if dd[i] != ee[i] {
                        continue 'tau;
                    }
                }
                for i in 0..r {
                    if dd[i] < ee[i] {
                        continue 'tau;
                    }
                    let gens_list: Vec<LexVec> = dd[..i]
                        .iter()
                        .cloned()
                        .chain(ee[i + 1..].iter().cloned())
                        .collect();
                    if semigroup_member(&dd[i], &gens_list)?.is_none() {
                        continue 'tau;
                    }
                }
                return chain_realize(&psi, sigma, tau, r, d, &e, w);
            }
        }
    }
    Err(RealizeError::NoCaseApplies(
        "no permutation pair satisfies the chain hypothesis".into(),
    ))
}

/// Realizes an ascending target all of whose entries are positive
/// multiples of a common degree `dparam`; `l`, `m` are the zero-based
/// pivot indices of the hypothesis (`m >= 1`).
pub fn realize_common_divisor(
    d: &[LexVec],
    w: &Weight,
    dparam: &LexVec,
    l: usize,
    m: usize,
    ring: Ring,
) -> Result<Certificate, RealizeError> {
    let n = w.len();
    if d.len() != n || l >= n || m == 0 || m >= n {
        return Err(RealizeError::ArityMismatch);
    }
    if !w.all_pos() {
        return Err(precond("weight must be strictly positive"));
    }
    for i in 1..n {
        if w.entry(i) < w.entry(i - 1) {
            return Err(precond("weight must be ascending"));
        }
        if d[i] < d[i - 1] {
            return Err(precond("target must be ascending"));
        }
    }
    for i in 0..n {
        if d[i] < *w.entry(i) {
            return Err(precond(format!("entry {} is below its weight", i + 1)));
        }
    }
    // (a) common-divisor structure
    let mut es = Vec::with_capacity(n);
    for (i, di) in d.iter().enumerate() {
        let e = int_multiple(di, dparam).ok_or_else(|| {
            precond(format!("(a): entry {} is not a multiple of the pivot", i + 1))
        })?;
        es.push(e);
    }
    // (b) the pivot degree is a weight entry or representable without it
    let base_exps: Option<Vec<u32>> = if *dparam == *w.entry(l) {
        None
    } else {
        if dparam <= w.entry(l) {
            return Err(precond("(b): pivot degree must be at least its weight"));
        }
        let gens: Vec<LexVec> = (0..n)
            .filter(|&j| j != l)
            .map(|j| w.entry(j).clone())
            .collect();
        let coeffs = semigroup_member(dparam, &gens)?
            .ok_or_else(|| precond("(b): pivot degree not representable by the other weights"))?;
        let mut e = vec![0u32; n];
        for (slot, j) in (0..n).filter(|&j| j != l).enumerate() {
            e[j] = u32::try_from(coeffs[slot])
                .map_err(|_| precond("decomposition exponent too large"))?;
        }
        Some(e)
    };
    // (c) prefix membership at m
    let prefix: Vec<LexVec> = d[..m].to_vec();
    let cs = semigroup_member(&d[m], &prefix)?
        .ok_or_else(|| precond("(c): prefix membership fails at the pivot"))?;
    // (d) shift window
    if l < m {
        for i in l..m {
            if d[i] < *w.entry(i + 1) {
                return Err(precond("(d): window entry below the next weight"));
            }
        }
    }

    // Cycle sending the pivot slot to l, shifting the window.
    let mut rho: Vec<usize> = (0..n).collect();
    if l < m {
        for i in l..m {
            rho[i] = i + 1;
        }
        rho[m] = l;
    } else if m < l {
        for i in (m + 1)..=l {
            rho[i] = i - 1;
        }
        rho[m] = l;
    }
    let mut rho_inv = vec![0usize; n];
    for (i, &v) in rho.iter().enumerate() {
        rho_inv[v] = i;
    }

    let one = ring.one();
    let mut gens: Vec<Generator> = vec![Generator::permutation(rho.clone())?];
    // pre-permuted coordinate polynomial sits at slot m
    if let Some(exps) = &base_exps {
        let mut pe = vec![0u32; n];
        for (j, &a) in exps.iter().enumerate() {
            if a > 0 {
                pe[rho_inv[j]] = a;
            }
        }
        gens.push(Generator::elementary(
            m,
            one.clone(),
            monic_monomial(ring, n, pe),
        )?);
    }
    for i in 0..n {
        if i == m {
            continue;
        }
        let flag = if i < l.min(m) || i > l.max(m) {
            d[i] > *w.entry(i)
        } else if m < i && i <= l {
            d[i] > *w.entry(i - 1)
        } else {
            // l <= i < m
            d[i] > *w.entry(i + 1)
        };
        if flag {
            let mut pe = vec![0u32; n];
            pe[m] = es[i];
            gens.push(Generator::elementary(
                i,
                one.clone(),
                monic_monomial(ring, n, pe),
            )?);
        }
    }
    // final corrective step at the pivot
    if *d[m].coords() != *dparam.coords() {
        let mut pe = vec![0u32; n];
        for (j, &c) in cs.iter().enumerate() {
            pe[j] = u32::try_from(c).map_err(|_| precond("decomposition exponent too large"))?;
        }
        gens.push(Generator::elementary(
            m,
            one.clone(),
            monic_monomial(ring, n, pe),
        )?);
    }
    let word = AutWord::new(ring, n, gens)?;
    Certificate::build(word, w, d, None, true)
}

// ---------------------------------------------------------------------
// Realizers fixing the last variable
// ---------------------------------------------------------------------

/// Structural case data for the third-variable-fixing realizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThirdFixedCase {
    /// Minimal total degree; the word is a permutation fixing the third
    /// slot.
    Permutation,
    /// The middle initial form lives in the plane: plane realization
    /// plus identity tail.
    PlaneInitial,
    /// Middle component splits as a plane part plus a dominating part in
    /// the algebra of the ends: `d2 = l1 d1 + l3 w3`; the plane-part
    /// degree may be supplied.
    Split { h1_deg: Option<LexVec> },
    /// Membership route: entry `i` lies in the span of the other two
    /// target entries.
    Member { i: usize },
}

#[derive(Debug, Clone)]
pub struct ThirdFixedRequest {
    pub w: Weight,
    pub target: Vec<LexVec>,
    pub ring: Ring,
    pub case: ThirdFixedCase,
}

/// Realizes a three-entry target by a word whose third component is
/// exactly the third variable.
pub fn realize_third_fixed(req: &ThirdFixedRequest) -> Result<Certificate, RealizeError> {
    let w = &req.w;
    let d = &req.target;
    let ring = req.ring;
    if w.len() != 3 || d.len() != 3 {
        return Err(RealizeError::ArityMismatch);
    }
    if !w.all_nonneg() {
        return Err(precond("weight must be nonnegative"));
    }
    if d[2] != *w.entry(2) {
        return Err(precond("third entry must equal the third weight"));
    }
    match &req.case {
        ThirdFixedCase::Permutation => {
            for sigma in [[0usize, 1], [1, 0]] {
                if d[0] == *w.entry(sigma[0]) && d[1] == *w.entry(sigma[1]) {
                    let word = AutWord::new(
                        ring,
                        3,
                        vec![Generator::permutation(vec![sigma[0], sigma[1], 2])?],
                    )?;
                    return Certificate::build(word, w, d, Some(2), true);
                }
            }
            Err(precond("target is not a permutation of the weight"))
        }
        ThirdFixedCase::PlaneInitial => realize_fixed_tail(d, w, ring),
        ThirdFixedCase::Split { h1_deg } => {
            // d2 = l1 d1 + l3 w3.
            let (l1, l3) = split_exponents(&d[1], &d[0], w.entry(2))
                .ok_or_else(|| precond("middle entry not representable over the ends"))?;
            let plane_w = Weight::new(vec![w.entry(0).clone(), w.entry(1).clone()]).unwrap();
            let mut candidates: Vec<LexVec> = Vec::new();
            if let Some(e) = h1_deg {
                candidates.push(e.clone());
            }
            candidates.push(w.entry(0).clone());
            candidates.push(w.entry(1).clone());
            candidates.push(d[0].clone());
            candidates.dedup();
            for e in candidates {
                if e > d[1] {
                    continue;
                }
                let plan = match plan_2var(&d[0], &e, &plane_w) {
                    Some(p) => p,
                    None => continue,
                };
                let plane = embed_word(&emit_2var(&plan, ring)?, 3)?;
                let word = if e == d[1] {
                    plane
                } else {
                    let mut pe = vec![0u32; 3];
                    pe[0] = l1;
                    pe[2] = l3;
                    let gen = Generator::elementary(1, ring.one(), monic_monomial(ring, 3, pe))?;
                    plane.compose(&AutWord::new(ring, 3, vec![gen])?)?
                };
                if let Ok(cert) = Certificate::build(word, w, d, Some(2), true) {
                    return Ok(cert);
                }
            }
            Err(RealizeError::NoCaseApplies(
                "no admissible plane degree for the split".into(),
            ))
        }
        ThirdFixedCase::Member { i } => realize_member_route(*i, d, w, ring),
    }
}

/// Finds `(l1, l3)` with `target = l1 * a + l3 * b`, preferring a
/// decomposition that genuinely uses `b`.
fn split_exponents(target: &LexVec, a: &LexVec, b: &LexVec) -> Option<(u32, u32)> {
    let mut fallback = None;
    for l1 in 0..=64u32 {
        let rest = target.sub(&a.scale(l1 as i64));
        if rest.is_zero() {
            fallback = fallback.or(Some((l1, 0)));
            continue;
        }
        if rest < LexVec::zero(target.rank()) {
            break;
        }
        if let Some(l3) = int_multiple(&rest, b) {
            return Some((l1, l3));
        }
    }
    fallback
}

fn realize_member_route(
    i: usize,
    d: &[LexVec],
    w: &Weight,
    ring: Ring,
) -> Result<Certificate, RealizeError> {
    let one = ring.one();
    match i {
        0 | 1 => {
            let oth = 1 - i;
            let (l2, l3) = split_exponents(&d[i], &d[oth], w.entry(2))
                .ok_or_else(|| precond("membership of the chosen entry fails"))?;
            for r in 0..2usize {
                let s = 1 - r;
                let (a, b) = match split_exponents(&d[oth], w.entry(r), w.entry(2)) {
                    Some(x) => x,
                    None => continue,
                };
                if d[i] < *w.entry(r) || d[oth] < *w.entry(s) {
                    continue;
                }
                let alpha = d[i] > *w.entry(r);
                let beta = d[oth] > *w.entry(s);
                let mut gens: Vec<Generator> = Vec::new();
                if beta {
                    let mut pe = vec![0u32; 3];
                    pe[r] = a;
                    pe[2] = b;
                    gens.push(Generator::elementary(
                        s,
                        one.clone(),
                        monic_monomial(ring, 3, pe),
                    )?);
                }
                if alpha {
                    let mut pe = vec![0u32; 3];
                    pe[s] = l2;
                    pe[2] = l3;
                    gens.push(Generator::elementary(
                        r,
                        one.clone(),
                        monic_monomial(ring, 3, pe),
                    )?);
                }
                // component i carries the slot-r content
                let sigma = if i == 0 {
                    vec![r, s, 2]
                } else {
                    vec![s, r, 2]
                };
                if sigma != [0, 1, 2] {
                    gens.push(Generator::permutation(sigma)?);
                }
                let word = AutWord::new(ring, 3, gens)?;
                if let Ok(cert) = Certificate::build(word, w, d, Some(2), true) {
                    return Ok(cert);
                }
            }
            Err(RealizeError::NoCaseApplies(
                "no variable assignment validates the membership route".into(),
            ))
        }
        2 => {
            // A companion entry equal to the third weight lets the rest
            // be realized in the plane, topping the companion up with
            // the third variable when its plane degree falls short.
            let l = if d[0] <= d[2] {
                0
            } else if d[1] <= d[2] {
                1
            } else {
                return Err(precond(
                    "membership at the third entry needs a small companion",
                ));
            };
            if d[l] != *w.entry(2) {
                return Err(precond("companion entry must equal the third weight"));
            }
            let oth = 1 - l;
            let plane_w = Weight::new(vec![w.entry(0).clone(), w.entry(1).clone()]).unwrap();
            for e in [
                w.entry(0).clone(),
                w.entry(1).clone(),
                d[l].clone(),
            ] {
                if e > d[l] {
                    continue;
                }
                let (first, second) = if l == 0 {
                    (e.clone(), d[oth].clone())
                } else {
                    (d[oth].clone(), e.clone())
                };
                let plan = match plan_2var(&first, &second, &plane_w) {
                    Some(p) => p,
                    None => continue,
                };
                let mut word = embed_word(&emit_2var(&plan, ring)?, 3)?;
                if e < d[l] {
                    let gen =
                        Generator::elementary(l, one.clone(), Polynomial::variable(ring, 3, 2))?;
                    word = word.compose(&AutWord::new(ring, 3, vec![gen])?)?;
                }
                if let Ok(cert) = Certificate::build(word, w, d, Some(2), true) {
                    return Ok(cert);
                }
            }
            Err(RealizeError::NoCaseApplies(
                "no plane realization fits the third-entry membership route".into(),
            ))
        }
        _ => Err(RealizeError::ArityMismatch),
    }
}

/// Extracts third-fixed case data from a tuple by support inspection.
/// The split branch cannot recover the plane degree and leaves it open.
pub fn analyze_third_fixed(t: &EndoTuple, w: &Weight) -> Result<ThirdFixedCase, RealizeError> {
    let m = mdeg(t, w)?;
    let total_w = Deg::Fin(w.total());
    if *m.total() == total_w {
        return Ok(ThirdFixedCase::Permutation);
    }
    let f2w = initial_form(t.component(1), w)?;
    if f2w.supported_on(&[0, 1]) {
        return Ok(ThirdFixedCase::PlaneInitial);
    }
    let d: Vec<LexVec> = m
        .entries()
        .iter()
        .map(|x| x.finite().cloned().ok_or(RealizeError::ArityMismatch))
        .collect::<Result<_, _>>()?;
    for i in 0..2 {
        if split_exponents(&d[i], &d[1 - i], w.entry(2)).is_some() {
            return Ok(ThirdFixedCase::Member { i });
        }
    }
    Ok(ThirdFixedCase::Split { h1_deg: None })
}

// ---------------------------------------------------------------------
// Factorization of minimal-degree automorphisms
// ---------------------------------------------------------------------

/// Factors an automorphism tuple of minimal weighted degree (total
/// degree equal to the weight total) into affine, elementary and
/// permutation generators whose recomposition is exactly the input.
pub fn factor_min_degree(t: &EndoTuple, w: &Weight) -> Result<AutWord, RealizeError> {
    let n = t.nvars();
    let ring = *t.ring();
    if t.len() != n || w.len() != n {
        return Err(RealizeError::ArityMismatch);
    }
    if !ring.is_field() {
        return Err(precond("field coefficients required"));
    }
    if !w.all_pos() {
        return Err(precond("weight must be strictly positive"));
    }
    let m = mdeg(t, w)?;
    if *m.total() != Deg::Fin(w.total()) {
        return Err(precond("total degree must equal the weight total"));
    }

    // Sort: rho orders the weight ascending, tau matches components to
    // the sorted weights by degree.
    let mut rho: Vec<usize> = (0..n).collect();
    rho.sort_by(|&a, &b| w.entry(a).cmp(w.entry(b)).then(a.cmp(&b)));
    let w_asc = w.permuted(&rho);
    let degs: Vec<LexVec> = m
        .entries()
        .iter()
        .map(|x| x.finite().cloned().ok_or(RealizeError::ArityMismatch))
        .collect::<Result<_, _>>()?;
    let mut tau: Vec<usize> = (0..n).collect();
    tau.sort_by(|&a, &b| degs[a].cmp(&degs[b]).then(a.cmp(&b)));
    for i in 0..n {
        if degs[tau[i]] != *w_asc.entry(i) {
            return Err(precond("multidegree is not a permutation of the weight"));
        }
    }
    let mut rho_inv = vec![0usize; n];
    for (i, &v) in rho.iter().enumerate() {
        rho_inv[v] = i;
    }

    let sorted = EndoTuple::new(
        tau.iter()
            .map(|&i| t.component(i).permute_vars(&rho_inv))
            .collect(),
    )?;
    let inner = factor_sorted(&sorted, &w_asc)?;

    let mut gens = vec![Generator::permutation(rho.clone())?];
    gens.extend(inner.generators().iter().cloned());
    let mut tau_inv = vec![0usize; n];
    for (i, &v) in tau.iter().enumerate() {
        tau_inv[v] = i;
    }
    gens.push(Generator::permutation(tau_inv)?);
    let word = AutWord::new(ring, n, gens)?;
    if word.tuple() != t {
        return Err(RealizeError::ConstructionFailed(
            "recomposition does not reproduce the input".into(),
        ));
    }
    Ok(word)
}

/// Core recursion: ascending weights, component degrees equal to the
/// weights entrywise.
fn factor_sorted(t: &EndoTuple, w: &Weight) -> Result<AutWord, RealizeError> {
    let n = t.nvars();
    let ring = *t.ring();
    // Start of the last constant weight block.
    let mut l = n - 1;
    while l > 0 && w.entry(l - 1) == w.entry(n - 1) {
        l -= 1;
    }
    if l == 0 {
        // Single weight value: the tuple must be affine.
        let (matrix, shift) = extract_affine(t)?;
        let gen = Generator::affine(&ring, matrix, shift).map_err(RealizeError::from)?;
        return AutWord::new(ring, n, vec![gen]).map_err(RealizeError::from);
    }

    // Components below the block generate the smaller ring.
    let lower_vars: Vec<usize> = (0..l).collect();
    for i in 0..l {
        if !t.component(i).supported_on(&lower_vars) {
            return Err(precond(
                "a low-degree component escapes the lower variables",
            ));
        }
    }
    let f0 = EndoTuple::new(
        (0..l)
            .map(|i| contract(t.component(i), l))
            .collect::<Result<Vec<_>, _>>()?,
    )?;
    let w0 = Weight::new(w.entries()[..l].to_vec()).unwrap();

    // Top-block components split as a linear top part plus a lower tail.
    let mut a_block = vec![vec![ring.zero(); n]; n];
    let mut tails: Vec<Polynomial> = Vec::with_capacity(n - l);
    for (i, row) in a_block.iter_mut().enumerate().take(l) {
        row[i] = ring.one();
    }
    for i in l..n {
        let mut tail = Polynomial::zero(ring, n);
        for (e, c) in t.component(i).terms() {
            let total: u32 = e[l..].iter().sum();
            if total == 0 {
                tail = tail.add(&Polynomial::monomial(ring, n, e.clone(), c.clone()))?;
            } else if total == 1 && e[..l].iter().all(|&x| x == 0) {
                let j = l + e[l..].iter().position(|&x| x == 1).unwrap();
                a_block[i][j] = c.clone();
            } else {
                return Err(precond(
                    "a top-block component is not linear in the top variables",
                ));
            }
        }
        if !tail.supported_on(&lower_vars) {
            return Err(precond("a top-block tail escapes the lower variables"));
        }
        tails.push(tail);
    }
    let affine_gen =
        Generator::affine(&ring, a_block, vec![ring.zero(); n]).map_err(RealizeError::from)?;

    let inner = factor_sorted(&f0, &w0)?;
    let inner_embedded: Vec<Generator> = inner
        .generators()
        .iter()
        .map(|g| embed_generator(g, n))
        .collect::<Result<_, _>>()?;

    let f0_inv = inner.invert()?;
    let mut gens = vec![affine_gen];
    gens.extend(inner_embedded);
    for (k, tail) in tails.iter().enumerate() {
        if tail.is_zero() {
            continue;
        }
        let small = contract(tail, l)?;
        let q = f0_inv.tuple().apply(&small)?.embed(n)?;
        gens.push(Generator::elementary(l + k, ring.one(), q)?);
    }
    let word = AutWord::new(ring, n, gens)?;
    if word.tuple() != t {
        return Err(RealizeError::ConstructionFailed(
            "inner recomposition mismatch".into(),
        ));
    }
    Ok(word)
}

fn contract(p: &Polynomial, nvars: usize) -> Result<Polynomial, RealizeError> {
    let ring = *p.ring();
    let mut out = Polynomial::zero(ring, nvars);
    for (e, c) in p.terms() {
        if e[nvars..].iter().any(|&x| x != 0) {
            return Err(precond("polynomial does not fit the smaller ring"));
        }
        out = out.add(&Polynomial::monomial(
            ring,
            nvars,
            e[..nvars].to_vec(),
            c.clone(),
        ))?;
    }
    Ok(out)
}

fn extract_affine(t: &EndoTuple) -> Result<(Vec<Vec<Coeff>>, Vec<Coeff>), RealizeError> {
    let n = t.nvars();
    let ring = *t.ring();
    let mut matrix = vec![vec![ring.zero(); n]; n];
    let mut shift = vec![ring.zero(); n];
    for i in 0..n {
        for (e, c) in t.component(i).terms() {
            let total: u32 = e.iter().sum();
            match total {
                0 => shift[i] = c.clone(),
                1 => {
                    let j = e.iter().position(|&x| x == 1).unwrap();
                    matrix[i][j] = c.clone();
                }
                _ => return Err(precond("component is not affine")),
            }
        }
    }
    Ok((matrix, shift))
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

    fn lv(v: i64) -> LexVec {
        LexVec::scalar(v)
    }

    #[test]
    fn coordinate_witness_examples() {
        let w = Weight::from_ints(&[2, 3]);
        // 6 = 2*3 over the complement of index 0 (smallest index wins);
        // x2 + x1^3 would witness the same degree.
        let wit = stable_coordinate_witness(&lv(6), &w, Ring::Rationals)
            .unwrap()
            .unwrap();
        assert_eq!(wit.coordinate, q(2, "x1 + x2^2"));
        assert_eq!(wit.index, 0);
        assert_eq!(wit.degree, lv(6));

        let wit = stable_coordinate_witness(&lv(2), &w, Ring::Rationals)
            .unwrap()
            .unwrap();
        assert_eq!(wit.coordinate, q(2, "x1"));

        assert!(stable_coordinate_witness(&lv(1), &w, Ring::Rationals)
            .unwrap()
            .is_none());
    }

    #[test]
    fn two_var_targets() {
        let w = Weight::from_ints(&[1, 1]);
        let cert = realize_2var(&[lv(1), lv(1)], &w, Ring::Rationals)
            .unwrap()
            .unwrap();
        assert!(cert.word.tuple().is_identity());

        let cert = realize_2var(&[lv(1), lv(2)], &w, Ring::Rationals)
            .unwrap()
            .unwrap();
        assert!(cert.reverify());

        // 2 and 3 violate the divisibility structure in the plane.
        assert!(realize_2var(&[lv(2), lv(3)], &w, Ring::Rationals)
            .unwrap()
            .is_none());

        let cert = realize_2var(&[lv(6), lv(2)], &w, Ring::Rationals)
            .unwrap()
            .unwrap();
        assert!(cert.reverify());
    }

    #[test]
    fn two_var_cross_ring() {
        let w = Weight::from_ints(&[2, 3]);
        for ring in [
            Ring::Rationals,
            Ring::PrimeField(5),
            Ring::ModRing(4),
            Ring::ModRing(6),
        ] {
            let cert = realize_2var(&[lv(4), lv(2)], &w, ring).unwrap().unwrap();
            assert!(cert.reverify(), "ring {ring:?}");
        }
    }

    #[test]
    fn fixed_tail_realization() {
        let w = Weight::from_ints(&[1, 1, 2]);
        let d = vec![lv(2), lv(1), lv(2)];
        let cert = realize_fixed_tail(&d, &w, Ring::Rationals).unwrap();
        assert_eq!(cert.checks.fixed_tail_from, Some(2));
        assert!(cert.reverify());
    }

    #[test]
    fn chain_identity_case() {
        let w = Weight::from_ints(&[1, 1, 1]);
        let psi = AutWord::identity(Ring::Rationals, 3);
        let e = vec![lv(1), lv(1), lv(1)];
        let d = e.clone();
        let id: Vec<usize> = (0..3).collect();
        let cert = chain_realize(&psi, &id, &id, 0, &d, &e, &w).unwrap();
        assert!(cert.word.tuple().is_identity());
    }

    #[test]
    fn chain_triangular_case() {
        let w = Weight::from_ints(&[1, 1, 1]);
        let psi = AutWord::identity(Ring::Rationals, 3);
        let e = vec![lv(1), lv(1), lv(1)];
        let d = vec![lv(1), lv(2), lv(3)];
        let id: Vec<usize> = (0..3).collect();
        let cert = chain_realize(&psi, &id, &id, 3, &d, &e, &w).unwrap();
        assert!(cert.reverify());
    }

    #[test]
    fn triple_realizer_examples() {
        let w = Weight::from_ints(&[1, 1, 1]);
        let cert = realize_triple(&[lv(1), lv(1), lv(1)], &w, Ring::Rationals).unwrap();
        assert!(cert.reverify());

        let cert = realize_triple(&[lv(2), lv(3), lv(5)], &w, Ring::Rationals).unwrap();
        assert!(cert.reverify());
    }

    #[test]
    fn triple_cross_ring() {
        let w = Weight::from_ints(&[1, 2, 2]);
        let d = [lv(2), lv(4), lv(6)];
        for ring in [
            Ring::Rationals,
            Ring::PrimeField(5),
            Ring::ModRing(4),
            Ring::ModRing(6),
        ] {
            let cert = realize_triple(&d, &w, ring).unwrap();
            assert!(cert.reverify(), "ring {ring:?}");
        }
    }

    #[test]
    fn common_divisor_realizer() {
        // weights (1,2,3), degrees (2,4,6), pivot degree 2 = w_2
        // (l = 1 zero-based), m = 1: d_2 = 2 d_1.
        let w = Weight::from_ints(&[1, 2, 3]);
        let d = vec![lv(2), lv(4), lv(6)];
        let cert = realize_common_divisor(&d, &w, &lv(2), 1, 1, Ring::Rationals).unwrap();
        assert!(cert.reverify());
    }

    #[test]
    fn common_divisor_near_identity() {
        let w = Weight::from_ints(&[2, 2, 2]);
        let d = vec![lv(2), lv(2), lv(2)];
        let cert = realize_common_divisor(&d, &w, &lv(2), 0, 1, Ring::Rationals).unwrap();
        assert!(cert.reverify());
    }

    #[test]
    fn third_fixed_permutation_case() {
        let w = Weight::from_ints(&[1, 2, 3]);
        let req = ThirdFixedRequest {
            w: w.clone(),
            target: vec![lv(2), lv(1), lv(3)],
            ring: Ring::Rationals,
            case: ThirdFixedCase::Permutation,
        };
        let cert = realize_third_fixed(&req).unwrap();
        assert!(cert.reverify());
    }

    #[test]
    fn third_fixed_plane_case() {
        let w = Weight::from_ints(&[1, 1, 1]);
        let req = ThirdFixedRequest {
            w: w.clone(),
            target: vec![lv(1), lv(2), lv(1)],
            ring: Ring::Rationals,
            case: ThirdFixedCase::PlaneInitial,
        };
        let cert = realize_third_fixed(&req).unwrap();
        assert_eq!(
            cert.word.tuple().component(2),
            &Polynomial::variable(Ring::Rationals, 3, 2)
        );
    }

    #[test]
    fn third_fixed_member_route() {
        // d = (5, 2, 1) over w = (1,1,1): d1 = 2*d2 + 1*w3 = 5.
        let w = Weight::from_ints(&[1, 1, 1]);
        let req = ThirdFixedRequest {
            w: w.clone(),
            target: vec![lv(5), lv(2), lv(1)],
            ring: Ring::ModRing(6),
            case: ThirdFixedCase::Member { i: 0 },
        };
        let cert = realize_third_fixed(&req).unwrap();
        assert!(cert.reverify());
        assert_eq!(cert.checks.fixed_tail_from, Some(2));
    }

    #[test]
    fn factor_affine_and_identity() {
        let ring = Ring::Rationals;
        let w = Weight::from_ints(&[2, 2]);
        let id = EndoTuple::identity(ring, 2);
        let word = factor_min_degree(&id, &w).unwrap();
        assert_eq!(word.tuple(), &id);

        let aff = EndoTuple::new(vec![q(2, "x1 + 2*x2 + 1"), q(2, "x2 - 3")]).unwrap();
        let word = factor_min_degree(&aff, &w).unwrap();
        assert_eq!(word.tuple(), &aff);
    }

    #[test]
    fn factor_triangular_example() {
        // mdeg (1,2,2) for weight (1,2,2): minimal.
        let t = EndoTuple::new(vec![
            q(3, "x1"),
            q(3, "x3 + x1^2"),
            q(3, "x2 + x1^2 - x3"),
        ])
        .unwrap();
        let w = Weight::from_ints(&[1, 2, 2]);
        let word = factor_min_degree(&t, &w).unwrap();
        assert_eq!(word.tuple(), &t);
    }

    #[test]
    fn factor_random_minimal_words() {
        // Random minimal-degree automorphisms: elementary tails of lower
        // degree plus mixing inside the top weight block.
        let ring = Ring::Rationals;
        let w = Weight::from_ints(&[1, 2, 2]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..25 {
            let mut gens: Vec<Generator> = Vec::new();
            for _ in 0..4 {
                match rng.gen_range(0..3) {
                    0 => {
                        let c = ring.from_i64(rng.gen_range(-2..=2));
                        let p = q(3, "x1^2").scalar_mul(&c);
                        gens.push(Generator::elementary(1, ring.one(), p).unwrap());
                    }
                    1 => {
                        let c = ring.from_i64(rng.gen_range(-2..=2));
                        let p = q(3, "x1^2 + x1").scalar_mul(&c);
                        gens.push(Generator::elementary(2, ring.one(), p).unwrap());
                    }
                    _ => {
                        let c = ring.from_i64(rng.gen_range(-2..=2));
                        let p = Polynomial::variable(ring, 3, 1).scalar_mul(&c);
                        gens.push(Generator::elementary(2, ring.one(), p).unwrap());
                    }
                }
            }
            let word = AutWord::new(ring, 3, gens).unwrap();
            let factored = factor_min_degree(word.tuple(), &w).unwrap();
            assert_eq!(factored.tuple(), word.tuple());
        }
    }
}
