//! Restricted t-metric heights: the infimum of L_t norms over factorizations
//! of a target with parts drawn from a finite candidate set, computed exactly
//! with a certified witness.
//!
//! Values are *restricted* to the given set; they equal the unrestricted
//! t-metric height only when the set replaces the whole group at t.

use crate::lattice;
use crate::norms::{lt_norm, same_norm_function, HeightVector, TParam, ENTRY_TOL};
use crate::rational::{weil_height, FactoredRational, Factorization};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// Default node budget for the branch-and-bound search.
pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

/// Absolute window within which two values count as tied; ties fall through
/// to the part-count and lexicographic tie-breaks.
const TIE_EPS: f64 = 1e-12;

/// A finite set of group elements with precomputed heights.
///
/// Construction always inserts the identity and closes the set under
/// inversion, so search witnesses may use inverse parts freely.
#[derive(Debug, Clone)]
pub struct CandidateSet {
    elements: BTreeMap<FactoredRational, f64>,
    delta: f64,
}

impl CandidateSet {
    /// Builds a candidate set with heights from an arbitrary height oracle.
    /// The oracle must be inversion-symmetric and nonnegative.
    pub fn new_with_heights(
        elements: impl IntoIterator<Item = FactoredRational>,
        phi: impl Fn(&FactoredRational) -> f64,
    ) -> Self {
        let mut map = BTreeMap::new();
        map.insert(FactoredRational::one(), phi(&FactoredRational::one()));
        for e in elements {
            let inv = e.inverse();
            let h = phi(&e);
            let h_inv = phi(&inv);
            assert!(h >= 0.0 && h_inv >= 0.0, "heights must be nonnegative");
            map.insert(e, h);
            map.insert(inv, h_inv);
        }
        let delta = map
            .values()
            .copied()
            .filter(|&h| h > 0.0)
            .fold(f64::INFINITY, f64::min);
        let delta = if delta.is_finite() { delta } else { 0.0 };
        CandidateSet { elements: map, delta }
    }

    /// Builds a candidate set with the Weil height.
    pub fn with_weil_heights(elements: impl IntoIterator<Item = FactoredRational>) -> Self {
        Self::new_with_heights(elements, weil_height)
    }

    /// `inf φ(S \ φ⁻¹(0))`, or 0 when every element has height zero.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, q: &FactoredRational) -> bool {
        self.elements.contains_key(q)
    }

    pub fn height_of(&self, q: &FactoredRational) -> Option<f64> {
        self.elements.get(q).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FactoredRational, f64)> {
        self.elements.iter().map(|(q, &h)| (q, h))
    }
}

/// `{±1} ∪ {±d, ±1/d : d | n, d > 1}` with Weil heights.
pub fn divisor_candidate_set(n: i64) -> Result<CandidateSet> {
    if n == 0 {
        return Err(Error::ZeroElement);
    }
    let primes = crate::factor::factor_integer(n.unsigned_abs())?;
    let mut divisors = vec![1u64];
    let mut grouped: Vec<(u64, usize)> = Vec::new();
    for p in primes {
        match grouped.last_mut() {
            Some((q, k)) if *q == p => *k += 1,
            _ => grouped.push((p, 1)),
        }
    }
    for (p, k) in grouped {
        let base = divisors.clone();
        let mut power = 1u64;
        for _ in 0..k {
            power *= p;
            divisors.extend(base.iter().map(|d| d * power));
        }
    }
    let mut elements = vec![FactoredRational::minus_one()];
    for d in divisors {
        if d > 1 {
            let q: FactoredRational = d.to_string().parse()?;
            elements.push(q.clone());
            elements.push(FactoredRational::minus_one().mul(&q));
        }
    }
    Ok(CandidateSet::with_weil_heights(elements))
}

/// The maximum number of nonzero-height parts any factorization with value at
/// most `phi_alpha` can use: `⌊(φ(α)/δ)^u⌋`, for any upper bound `u` on t.
pub fn search_bound(phi_alpha: f64, s: &CandidateSet, u: f64) -> Result<u64> {
    if !(phi_alpha >= 0.0) {
        return Err(Error::InvalidParam(format!("phi_alpha must be >= 0, got {phi_alpha}")));
    }
    if !(u > 0.0) {
        return Err(Error::InvalidParam(format!("u must be positive, got {u}")));
    }
    if phi_alpha == 0.0 {
        return Ok(0);
    }
    if s.delta == 0.0 {
        return Err(Error::UnboundedPartCount);
    }
    let b = (phi_alpha / s.delta).powf(u) + 1e-9;
    Ok(if b >= u64::MAX as f64 { u64::MAX } else { b.floor() as u64 })
}

/// Upper bound for the collapsed Weil-height infimum at `t > 1`:
/// `n^{1/t − 1} · h(α)`, the L_t norm of n equal parts of height h(α)/n.
/// Tends to 0 as n grows, witnessing that the infimum is not attained.
pub fn collapse_bound(h_alpha: f64, n: u64, t: TParam) -> Result<f64> {
    let t = match t {
        TParam::Finite(t) if t > 1.0 => t,
        _ => return Err(Error::InvalidParam("bound only valid for finite t > 1".into())),
    };
    if n == 0 {
        return Err(Error::InvalidParam("n must be positive".into()));
    }
    if !(h_alpha >= 0.0) {
        return Err(Error::InvalidParam("h_alpha must be >= 0".into()));
    }
    Ok((n as f64).powf(1.0 / t - 1.0) * h_alpha)
}

/// A restricted t-metric value with its witnessing factorization.
#[derive(Debug, Clone)]
pub struct TMetricResult {
    pub value: f64,
    pub witness: Factorization,
    /// Heights of the witness parts as a vector; its L_t norm is `value`.
    pub height_vector: HeightVector,
    /// Always true here: the minimum over a finite search is attained.
    pub attained: bool,
}

// ---------------------------------------------------------------------------
// Internal problem representation: sign classes over the prime support.
// ---------------------------------------------------------------------------

/// Elements of equal exponent vector and height, split by available sign.
#[derive(Debug, Clone)]
struct SignClass {
    vector: Vec<i64>,
    height: f64,
    pos: Option<FactoredRational>,
    neg: Option<FactoredRational>,
    inverse: usize,
}

impl SignClass {
    fn both_signs(&self) -> bool {
        self.pos.is_some() && self.neg.is_some()
    }

    fn neg_only(&self) -> bool {
        self.pos.is_none()
    }
}

struct Problem {
    classes: Vec<SignClass>,
    target: Vec<i64>,
    target_parity: bool,
    /// −1 is available at height zero, so sign fixes are free.
    free_sign_flip: bool,
    delta: f64,
    /// Per prime: the largest |exponent| any class carries, and the smallest
    /// height among classes touching it. Used for completion lower bounds.
    max_abs: Vec<i64>,
    min_touch_height: Vec<f64>,
}

fn build_problem(alpha: &FactoredRational, s: &CandidateSet) -> Result<Problem> {
    let mut prime_set: std::collections::BTreeSet<u64> = alpha.factors().keys().copied().collect();
    for (q, _) in s.iter() {
        prime_set.extend(q.factors().keys().copied());
    }
    let primes: Vec<u64> = prime_set.into_iter().collect();
    let index_of: BTreeMap<u64, usize> = primes.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let as_vector = |q: &FactoredRational| {
        let mut v = vec![0i64; primes.len()];
        for (&p, &e) in q.factors() {
            v[index_of[&p]] = e;
        }
        v
    };

    let mut free_sign_flip = false;
    let mut by_key: BTreeMap<(Vec<i64>, u64), (Option<FactoredRational>, Option<FactoredRational>, f64)> =
        BTreeMap::new();
    for (q, h) in s.iter() {
        if q.is_torsion() {
            if q.is_negative() && h == 0.0 {
                free_sign_flip = true;
            }
            if h == 0.0 {
                continue;
            }
        }
        if h == 0.0 {
            return Err(Error::InvalidParam(format!(
                "candidate set element {q} has height zero but is not torsion; \
                 part counts would be unbounded"
            )));
        }
        let v = as_vector(q);
        let entry = by_key.entry((v, h.to_bits())).or_insert((None, None, h));
        if q.is_negative() {
            entry.1 = Some(q.clone());
        } else {
            entry.0 = Some(q.clone());
        }
    }

    let mut classes: Vec<SignClass> = by_key
        .into_iter()
        .map(|((vector, _), (pos, neg, height))| SignClass { vector, height, pos, neg, inverse: 0 })
        .collect();
    classes.sort_by(|a, b| {
        a.height
            .partial_cmp(&b.height)
            .unwrap()
            .then_with(|| a.vector.cmp(&b.vector))
    });
    let lookup: BTreeMap<(Vec<i64>, u64), usize> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| ((c.vector.clone(), c.height.to_bits()), i))
        .collect();
    for i in 0..classes.len() {
        let inv_vec: Vec<i64> = classes[i].vector.iter().map(|&e| -e).collect();
        let key = (inv_vec, classes[i].height.to_bits());
        classes[i].inverse = *lookup
            .get(&key)
            .expect("candidate set is closed under inversion");
    }

    let mut max_abs = vec![0i64; primes.len()];
    let mut min_touch_height = vec![f64::INFINITY; primes.len()];
    for c in &classes {
        for (p, &e) in c.vector.iter().enumerate() {
            if e != 0 {
                max_abs[p] = max_abs[p].max(e.abs());
                min_touch_height[p] = min_touch_height[p].min(c.height);
            }
        }
    }

    Ok(Problem {
        classes,
        target: as_vector(alpha),
        target_parity: alpha.is_negative(),
        free_sign_flip,
        delta: s.delta,
        max_abs,
        min_touch_height,
    })
}

impl Problem {
    /// Parity of the forced sign contributions of a signed class-count vector.
    fn parity_of(&self, counts: &[i64]) -> bool {
        let sum: i64 = counts
            .iter()
            .zip(&self.classes)
            .filter(|(_, c)| c.neg_only())
            .map(|(&k, _)| k)
            .sum();
        sum % 2 != 0
    }

    /// Solves the exponent lattice for the target, including sign
    /// reachability, and returns one signed solution over classes.
    fn span_solution(&self, allowed: usize) -> Result<Vec<i64>> {
        let columns: Vec<Vec<i64>> = self.classes[..allowed]
            .iter()
            .map(|c| c.vector.clone())
            .collect();
        let sol = lattice::solve(&columns, &self.target).ok_or(Error::NotSpanned)?;
        let mut c0 = sol.particular;
        let any_both = self.classes[..allowed].iter().any(SignClass::both_signs);
        if self.free_sign_flip || any_both {
            c0.resize(self.classes.len(), 0);
            return Ok(c0);
        }
        if self.parity_of(&c0) != self.target_parity {
            // Try to flip parity with a kernel vector of odd forced parity.
            match sol.kernel.iter().find(|k| self.parity_of(k)) {
                Some(k) => {
                    for (ci, ki) in c0.iter_mut().zip(k) {
                        *ci += ki;
                    }
                }
                None => return Err(Error::NotSpanned),
            }
        }
        c0.resize(self.classes.len(), 0);
        Ok(c0)
    }

    /// Converts a signed class solution into nonnegative multiset counts,
    /// sending negative coefficients through inverse classes.
    fn counts_from_signed(&self, signed: &[i64]) -> Vec<u32> {
        let mut counts = vec![0u32; self.classes.len()];
        for (i, &c) in signed.iter().enumerate() {
            if c > 0 {
                counts[i] += c as u32;
            } else if c < 0 {
                counts[self.classes[i].inverse] += (-c) as u32;
            }
        }
        counts
    }

    /// Whether a completed multiset can realize the target sign without
    /// adding parts of positive height.
    fn sign_feasible(&self, counts: &[u32]) -> bool {
        if self.free_sign_flip {
            return true;
        }
        if counts
            .iter()
            .zip(&self.classes)
            .any(|(&k, c)| k > 0 && c.both_signs())
        {
            return true;
        }
        let parity: u64 = counts
            .iter()
            .zip(&self.classes)
            .filter(|(_, c)| c.neg_only())
            .map(|(&k, _)| k as u64)
            .sum();
        (parity % 2 != 0) == self.target_parity
    }

    /// Concrete parts for a feasible multiset, choosing signs so the product
    /// is exactly the target sign. A −1 part is appended when it provides the
    /// flip.
    fn assign_signs(&self, counts: &[u32]) -> Option<Vec<FactoredRational>> {
        let mut parts = Vec::new();
        let mut parity = false;
        for (i, &k) in counts.iter().enumerate() {
            let class = &self.classes[i];
            for _ in 0..k {
                match (&class.pos, &class.neg) {
                    (Some(p), _) => parts.push(p.clone()),
                    (None, Some(n)) => {
                        parts.push(n.clone());
                        parity = !parity;
                    }
                    (None, None) => unreachable!("class without representative"),
                }
            }
        }
        if parity != self.target_parity {
            if self.free_sign_flip {
                parts.push(FactoredRational::minus_one());
            } else if let Some((i, _)) = counts
                .iter()
                .zip(&self.classes)
                .enumerate()
                .find(|(_, (&k, c))| k > 0 && c.both_signs())
                .map(|(i, _)| (i, ()))
            {
                let class = &self.classes[i];
                let pos = class.pos.as_ref().unwrap();
                let slot = parts.iter().position(|p| p == pos).unwrap();
                parts[slot] = class.neg.clone().unwrap();
            } else {
                return None;
            }
        }
        Some(parts)
    }

    /// Least number of additional parts any completion of `residual` needs,
    /// from per-prime coverage; `usize::MAX` when a prime is untouchable.
    fn needed_parts(&self, residual: &[i64], allowed: usize) -> usize {
        let _ = allowed;
        let mut needed = 0usize;
        for (p, &r) in residual.iter().enumerate() {
            if r != 0 {
                if self.max_abs[p] == 0 {
                    return usize::MAX;
                }
                let np = ((r.unsigned_abs() + self.max_abs[p] as u64 - 1)
                    / self.max_abs[p] as u64) as usize;
                needed = needed.max(np);
            }
        }
        needed
    }

    /// Lower bound on the extra `Σ h^t` any completion of `residual` incurs.
    fn completion_lb_pow(&self, residual: &[i64], t: f64) -> f64 {
        let mut lb = 0.0f64;
        for (p, &r) in residual.iter().enumerate() {
            if r != 0 {
                if self.max_abs[p] == 0 {
                    return f64::INFINITY;
                }
                let np = (r.unsigned_abs() + self.max_abs[p] as u64 - 1) / self.max_abs[p] as u64;
                lb = lb.max(np as f64 * self.min_touch_height[p].powf(t));
            }
        }
        lb
    }
}

// ---------------------------------------------------------------------------
// Candidates and the tie-break order.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
struct Candidate {
    value: f64,
    nonzero_parts: usize,
    heights_desc: Vec<f64>,
    parts: Vec<FactoredRational>,
}

impl Candidate {
    fn from_parts(parts: Vec<FactoredRational>, heights: Vec<f64>, t: TParam) -> Self {
        let mut heights_desc = heights;
        heights_desc.retain(|&h| h > 0.0);
        heights_desc.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let hv = HeightVector::new(heights_desc.clone());
        Candidate {
            value: lt_norm(&hv, t),
            nonzero_parts: heights_desc.len(),
            heights_desc,
            parts,
        }
    }
}

/// Strictly-better comparison: smaller value, then fewer nonzero-height
/// parts, then lexicographically smaller descending height vector.
fn better(a: &Candidate, b: &Candidate) -> bool {
    if a.value < b.value - TIE_EPS {
        return true;
    }
    if a.value > b.value + TIE_EPS {
        return false;
    }
    if a.nonzero_parts != b.nonzero_parts {
        return a.nonzero_parts < b.nonzero_parts;
    }
    for (x, y) in a.heights_desc.iter().zip(&b.heights_desc) {
        if (x - y).abs() > ENTRY_TOL {
            return x < y;
        }
    }
    false
}

fn result_from_candidate(mut cand: Candidate, alpha: &FactoredRational, t: TParam) -> TMetricResult {
    cand.parts.sort_by(|a, b| {
        weil_height(a)
            .partial_cmp(&weil_height(b))
            .unwrap()
            .then_with(|| a.cmp(b))
    });
    let height_vector = HeightVector::new(cand.heights_desc.clone());
    let witness = Factorization::new(cand.parts, alpha.clone());
    debug_assert!(witness.verify());
    TMetricResult { value: lt_norm(&height_vector, t), witness, height_vector, attained: true }
}

// ---------------------------------------------------------------------------
// Branch and bound, finite t.
// ---------------------------------------------------------------------------

struct FiniteSearch<'a> {
    prob: &'a Problem,
    t: f64,
    pow_t: Vec<f64>,
    budget: usize,
    nodes: usize,
    allow_inverse_pairs: bool,
    incumbent: Candidate,
    threshold_pow: f64,
    depth_cap: usize,
    counts: Vec<u32>,
    heights: Vec<f64>,
    residual: Vec<i64>,
    sum_pow: f64,
}

impl<'a> FiniteSearch<'a> {
    fn refresh_bounds(&mut self) {
        self.threshold_pow = (self.incumbent.value + TIE_EPS).powf(self.t);
        let cap = (self.incumbent.value / self.prob.delta).powf(self.t) + 1e-9;
        self.depth_cap = if cap >= usize::MAX as f64 { usize::MAX } else { cap.floor() as usize };
    }

    fn offer(&mut self) {
        if !self.prob.sign_feasible(&self.counts) {
            return;
        }
        let Some(parts) = self.prob.assign_signs(&self.counts) else { return };
        let cand = Candidate::from_parts(parts, self.heights.clone(), TParam::Finite(self.t));
        if better(&cand, &self.incumbent) {
            self.incumbent = cand;
            self.refresh_bounds();
        }
    }

    fn dfs(&mut self, start: usize, depth: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            let best = result_from_candidate(
                self.incumbent.clone(),
                &FactoredRational::one(),
                TParam::Finite(self.t),
            );
            return Err(Error::BudgetExceeded { best: Some(Box::new(best)) });
        }
        if self.residual.iter().all(|&r| r == 0) && depth > 0 {
            // Any extension adds positive mass and more parts, so it can
            // never win a tie; stop descending here.
            self.offer();
            return Ok(());
        }
        if depth >= self.depth_cap {
            return Ok(());
        }
        for idx in start..self.prob.classes.len() {
            let class = &self.prob.classes[idx];
            if !self.allow_inverse_pairs
                && class.inverse != idx
                && self.counts[class.inverse] > 0
            {
                continue;
            }
            let new_sum = self.sum_pow + self.pow_t[idx];
            if new_sum > self.threshold_pow {
                break; // classes are sorted by height; later ones only cost more
            }
            for (r, &e) in self.residual.iter_mut().zip(&class.vector) {
                *r -= e;
            }
            let needed = self.prob.needed_parts(&self.residual, self.prob.classes.len());
            let feasible_depth =
                needed != usize::MAX && depth + 1 + needed <= self.depth_cap;
            let lb = if feasible_depth {
                self.prob.completion_lb_pow(&self.residual, self.t)
            } else {
                f64::INFINITY
            };
            if feasible_depth && new_sum + lb <= self.threshold_pow {
                self.counts[idx] += 1;
                self.heights.push(class.height);
                let saved = self.sum_pow;
                self.sum_pow = new_sum;
                let r = self.dfs(idx, depth + 1);
                self.sum_pow = saved;
                self.heights.pop();
                self.counts[idx] -= 1;
                r?;
            }
            for (r, &e) in self.residual.iter_mut().zip(&class.vector) {
                *r += e;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// t = ∞: height-threshold prefix search.
// ---------------------------------------------------------------------------

struct InfinitySearch<'a> {
    prob: &'a Problem,
    allowed: usize,
    budget: usize,
    nodes: usize,
    allow_inverse_pairs: bool,
    best: Option<Candidate>,
    counts: Vec<u32>,
    heights: Vec<f64>,
    residual: Vec<i64>,
}

impl<'a> InfinitySearch<'a> {
    fn dfs_exact(&mut self, start: usize, remaining: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            let best = self.best.clone().map(|c| {
                Box::new(result_from_candidate(c, &FactoredRational::one(), TParam::Infinity))
            });
            return Err(Error::BudgetExceeded { best });
        }
        if remaining == 0 {
            if self.residual.iter().all(|&r| r == 0) && self.prob.sign_feasible(&self.counts) {
                if let Some(parts) = self.prob.assign_signs(&self.counts) {
                    let cand = Candidate::from_parts(parts, self.heights.clone(), TParam::Infinity);
                    if self.best.as_ref().map_or(true, |b| better(&cand, b)) {
                        self.best = Some(cand);
                    }
                }
            }
            return Ok(());
        }
        let needed = self.prob.needed_parts(&self.residual, self.allowed);
        if needed == usize::MAX || needed > remaining {
            return Ok(());
        }
        for idx in start..self.allowed {
            let class = &self.prob.classes[idx];
            if !self.allow_inverse_pairs
                && class.inverse != idx
                && class.inverse < self.allowed
                && self.counts[class.inverse] > 0
            {
                continue;
            }
            for (r, &e) in self.residual.iter_mut().zip(&class.vector) {
                *r -= e;
            }
            self.counts[idx] += 1;
            self.heights.push(class.height);
            let r = self.dfs_exact(idx, remaining - 1);
            self.heights.pop();
            self.counts[idx] -= 1;
            for (r, &e) in self.residual.iter_mut().zip(&class.vector) {
                *r += e;
            }
            r?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Public entry points.
// ---------------------------------------------------------------------------

/// [`restricted_tmetric`] with an explicit node budget.
pub fn restricted_tmetric_with_budget(
    alpha: &FactoredRational,
    s: &CandidateSet,
    t: TParam,
    budget: usize,
) -> Result<TMetricResult> {
    if alpha.is_torsion() {
        let parts = if alpha.is_one() {
            Vec::new()
        } else if s.contains(&FactoredRational::minus_one())
            && s.height_of(&FactoredRational::minus_one()) == Some(0.0)
        {
            vec![FactoredRational::minus_one()]
        } else {
            return non_torsion_search(alpha, s, t, budget);
        };
        return Ok(TMetricResult {
            value: 0.0,
            witness: Factorization::new(parts, alpha.clone()),
            height_vector: HeightVector::empty(),
            attained: true,
        });
    }
    non_torsion_search(alpha, s, t, budget)
}

fn non_torsion_search(
    alpha: &FactoredRational,
    s: &CandidateSet,
    t: TParam,
    budget: usize,
) -> Result<TMetricResult> {
    let prob = build_problem(alpha, s)?;
    if prob.delta == 0.0 && !alpha.is_torsion() {
        return Err(Error::UnboundedPartCount);
    }
    let signed = prob.span_solution(prob.classes.len())?;

    // Seed incumbent: the lattice solution, improved by the trivial witness
    // when the target itself is a candidate.
    let seed_counts = prob.counts_from_signed(&signed);
    let mut seed_counts = seed_counts;
    if prob.assign_signs(&seed_counts).is_none() {
        // Sign fix needs an inverse pair through a both-sign class.
        let pair = prob
            .classes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.both_signs())
            .min_by(|a, b| a.1.height.partial_cmp(&b.1.height).unwrap())
            .map(|(i, c)| (i, c.inverse));
        match pair {
            Some((i, j)) => {
                seed_counts[i] += 1;
                seed_counts[j] += 1;
            }
            None => return Err(Error::NotSpanned),
        }
    }
    let seed_parts = prob.assign_signs(&seed_counts).expect("seed must be sign-feasible");
    let seed_heights: Vec<f64> = seed_counts
        .iter()
        .enumerate()
        .flat_map(|(i, &k)| std::iter::repeat(prob.classes[i].height).take(k as usize))
        .collect();
    let mut incumbent = Candidate::from_parts(seed_parts, seed_heights, t);
    if let Some(h) = s.height_of(alpha) {
        let trivial =
            Candidate::from_parts(vec![alpha.clone()], vec![h], t);
        if better(&trivial, &incumbent) {
            incumbent = trivial;
        }
    }

    let allow_inverse_pairs =
        !prob.free_sign_flip && prob.classes.iter().any(SignClass::both_signs);

    match t {
        TParam::Finite(tf) => {
            let pow_t: Vec<f64> = prob.classes.iter().map(|c| c.height.powf(tf)).collect();
            let mut search = FiniteSearch {
                prob: &prob,
                t: tf,
                pow_t,
                budget,
                nodes: 0,
                allow_inverse_pairs,
                incumbent,
                threshold_pow: 0.0,
                depth_cap: 0,
                counts: vec![0; prob.classes.len()],
                heights: Vec::new(),
                residual: prob.target.clone(),
                sum_pow: 0.0,
            };
            search.refresh_bounds();
            match search.dfs(0, 0) {
                Ok(()) => Ok(result_from_candidate(search.incumbent, alpha, t)),
                Err(Error::BudgetExceeded { .. }) => {
                    let best = result_from_candidate(search.incumbent, alpha, t);
                    Err(Error::BudgetExceeded { best: Some(Box::new(best)) })
                }
                Err(e) => Err(e),
            }
        }
        TParam::Infinity => {
            // Find the least height level whose prefix of classes spans the
            // target, then the fewest-parts witness inside that prefix.
            let mut nodes = 0usize;
            let mut level_end = 0usize;
            let mut spanned: Option<(usize, Vec<i64>)> = None;
            while level_end < prob.classes.len() {
                let level_height = prob.classes[level_end].height;
                let mut end = level_end + 1;
                while end < prob.classes.len()
                    && prob.classes[end].height <= level_height + ENTRY_TOL
                {
                    end += 1;
                }
                if let Ok(c0) = prob.span_solution(end) {
                    spanned = Some((end, c0));
                    break;
                }
                level_end = end;
            }
            let (allowed, c0) = spanned.ok_or(Error::NotSpanned)?;
            let mut seed_counts = prob.counts_from_signed(&c0);
            if prob.assign_signs(&seed_counts).is_none() {
                let pair = prob.classes[..allowed]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.both_signs())
                    .min_by(|a, b| a.1.height.partial_cmp(&b.1.height).unwrap())
                    .map(|(i, c)| (i, c.inverse));
                match pair {
                    Some((i, j)) => {
                        seed_counts[i] += 1;
                        seed_counts[j] += 1;
                    }
                    None => return Err(Error::NotSpanned),
                }
            }
            let max_parts: usize = seed_counts.iter().map(|&k| k as usize).sum();
            let mut search = InfinitySearch {
                prob: &prob,
                allowed,
                budget,
                nodes: 0,
                allow_inverse_pairs,
                best: None,
                counts: vec![0; prob.classes.len()],
                heights: Vec::new(),
                residual: prob.target.clone(),
            };
            for m in 1..=max_parts {
                search.nodes = nodes;
                search.dfs_exact(0, m)?;
                nodes = search.nodes;
                if search.best.is_some() {
                    break;
                }
            }
            let mut best = search.best.expect("prefix spans target, so a witness exists");
            // The incumbent may beat the minimal-prefix witness only through
            // tie-breaks at equal value.
            if better(&incumbent, &best) {
                best = incumbent;
            }
            Ok(result_from_candidate(best, alpha, t))
        }
    }
}

/// The restricted t-metric height of `alpha` over `s` at `t`, with witness.
///
/// Runs a depth-first branch and bound over part multisets from the candidate
/// set, pruned by the incumbent value and the part-count bound; ties resolve
/// to fewer parts, then the lexicographically smaller descending height
/// vector.
pub fn restricted_tmetric(
    alpha: &FactoredRational,
    s: &CandidateSet,
    t: TParam,
) -> Result<TMetricResult> {
    restricted_tmetric_with_budget(alpha, s, t, DEFAULT_NODE_BUDGET)
}

/// Exhaustive enumeration of all part multisets up to `max_parts`; the
/// independent oracle for [`restricted_tmetric`].
pub fn brute_force_tmetric(
    alpha: &FactoredRational,
    s: &CandidateSet,
    t: TParam,
    max_parts: usize,
) -> Result<TMetricResult> {
    if alpha.is_torsion() {
        return restricted_tmetric_with_budget(alpha, s, t, DEFAULT_NODE_BUDGET);
    }
    let prob = build_problem(alpha, s)?;
    // Enumeration size: multisets of at most max_parts from the classes.
    let k = prob.classes.len() as f64;
    let mut estimate = 1.0f64;
    for i in 0..max_parts {
        estimate *= (k + i as f64) / (i as f64 + 1.0);
        if estimate > 1e7 {
            return Err(Error::BudgetExceeded { best: None });
        }
    }

    struct Brute<'a> {
        prob: &'a Problem,
        t: TParam,
        best: Option<Candidate>,
        counts: Vec<u32>,
        heights: Vec<f64>,
        residual: Vec<i64>,
    }
    impl<'a> Brute<'a> {
        fn run(&mut self, start: usize, remaining: usize) {
            if self.residual.iter().all(|&r| r == 0)
                && !self.heights.is_empty()
                && self.prob.sign_feasible(&self.counts)
            {
                if let Some(parts) = self.prob.assign_signs(&self.counts) {
                    let cand = Candidate::from_parts(parts, self.heights.clone(), self.t);
                    if self.best.as_ref().map_or(true, |b| better(&cand, b)) {
                        self.best = Some(cand);
                    }
                }
            }
            if remaining == 0 {
                return;
            }
            for idx in start..self.prob.classes.len() {
                let class = &self.prob.classes[idx];
                for (r, &e) in self.residual.iter_mut().zip(&class.vector) {
                    *r -= e;
                }
                self.counts[idx] += 1;
                self.heights.push(class.height);
                self.run(idx, remaining - 1);
                self.heights.pop();
                self.counts[idx] -= 1;
                for (r, &e) in self.residual.iter_mut().zip(&class.vector) {
                    *r += e;
                }
            }
        }
    }

    let mut brute = Brute {
        prob: &prob,
        t,
        best: None,
        counts: vec![0; prob.classes.len()],
        heights: Vec::new(),
        residual: prob.target.clone(),
    };
    brute.run(0, max_parts);
    match brute.best {
        Some(best) => Ok(result_from_candidate(best, alpha, t)),
        None => Err(Error::NotSpanned),
    }
}

/// One row of a t-metric profile.
#[derive(Debug, Clone)]
pub struct ProfilePoint {
    pub t: TParam,
    pub value: f64,
    /// Index into [`TMetricProfile::witnesses`].
    pub witness_id: usize,
}

/// Restricted values over a t grid with witnesses deduplicated by norm
/// function.
#[derive(Debug, Clone)]
pub struct TMetricProfile {
    pub points: Vec<ProfilePoint>,
    pub witnesses: Vec<(Factorization, HeightVector)>,
}

/// Evaluates the restricted t-metric along an increasing t grid.
pub fn tmetric_profile(
    alpha: &FactoredRational,
    s: &CandidateSet,
    grid: &[TParam],
    budget: usize,
) -> Result<TMetricProfile> {
    if grid.is_empty() {
        return Err(Error::InvalidParam("t grid must be nonempty".into()));
    }
    for pair in grid.windows(2) {
        let increasing = match (pair[0], pair[1]) {
            (TParam::Finite(a), TParam::Finite(b)) => a < b,
            (TParam::Finite(_), TParam::Infinity) => true,
            (TParam::Infinity, _) => false,
        };
        if !increasing {
            return Err(Error::InvalidParam("t grid must be strictly increasing".into()));
        }
    }
    let mut points = Vec::with_capacity(grid.len());
    let mut witnesses: Vec<(Factorization, HeightVector)> = Vec::new();
    for &t in grid {
        let result = restricted_tmetric_with_budget(alpha, s, t, budget)?;
        let id = witnesses
            .iter()
            .position(|(_, hv)| same_norm_function(hv, &result.height_vector))
            .unwrap_or_else(|| {
                witnesses.push((result.witness.clone(), result.height_vector.clone()));
                witnesses.len() - 1
            });
        points.push(ProfilePoint { t, value: result.value, witness_id: id });
    }
    Ok(TMetricProfile { points, witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;

    fn fr(s: &str) -> FactoredRational {
        parse_rational(s).unwrap()
    }

    const LOG2: f64 = std::f64::consts::LN_2;

    #[test]
    fn divisor_set_contents() {
        let s = divisor_candidate_set(12).unwrap();
        for d in ["2", "3", "4", "6", "12"] {
            assert!(s.contains(&fr(d)), "missing {d}");
            assert!(s.contains(&fr(&format!("-{d}"))));
            assert!(s.contains(&fr(&format!("1/{d}"))));
            assert!(s.contains(&fr(&format!("-1/{d}"))));
        }
        assert!(s.contains(&FactoredRational::one()));
        assert!(s.contains(&FactoredRational::minus_one()));
        assert_eq!(s.len(), 22);
        assert!((s.delta() - LOG2).abs() < 1e-15);

        let one = divisor_candidate_set(1).unwrap();
        assert_eq!(one.len(), 2);

        let p = divisor_candidate_set(97).unwrap();
        assert_eq!(p.len(), 6);
        assert!(divisor_candidate_set(0).is_err());
    }

    #[test]
    fn search_bound_examples() {
        let s = divisor_candidate_set(12).unwrap();
        assert_eq!(search_bound(12f64.ln(), &s, 2.0).unwrap(), 12);
        assert_eq!(search_bound(0.0, &s, 2.0).unwrap(), 0);
        assert_eq!(search_bound(LOG2, &s, 1.0).unwrap(), 1);

        let torsion_only = CandidateSet::with_weil_heights(vec![FactoredRational::minus_one()]);
        assert!(matches!(
            search_bound(1.0, &torsion_only, 1.0),
            Err(Error::UnboundedPartCount)
        ));
    }

    #[test]
    fn twelve_at_two_matches_enumeration() {
        let s = divisor_candidate_set(12).unwrap();
        let r = restricted_tmetric(&fr("12"), &s, TParam::Finite(2.0)).unwrap();
        let expected = (2.0 * LOG2 * LOG2 + 3f64.ln() * 3f64.ln()).sqrt();
        assert!((r.value - expected).abs() < 1e-12, "got {}", r.value);
        assert!((r.value - 1.472364).abs() < 1e-6);
        assert!(r.witness.verify());
        assert_eq!(r.witness.parts.len(), 3);
        assert_eq!(r.witness.to_string(), "2 * 2 * 3");
        assert!(r.attained);
    }

    #[test]
    fn identity_needs_no_parts() {
        let s = divisor_candidate_set(12).unwrap();
        let r = restricted_tmetric(&fr("1"), &s, TParam::Finite(2.0)).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.witness.parts.is_empty());
    }

    #[test]
    fn tie_breaks_prefer_fewer_parts() {
        let s = divisor_candidate_set(4).unwrap();
        let r = restricted_tmetric(&fr("4"), &s, TParam::Finite(1.0)).unwrap();
        assert!((r.value - 4f64.ln()).abs() < 1e-12);
        assert_eq!(r.witness.to_string(), "4");
    }

    #[test]
    fn infinity_splits_into_small_parts() {
        let s = divisor_candidate_set(4).unwrap();
        let r = restricted_tmetric(&fr("4"), &s, TParam::Infinity).unwrap();
        assert!((r.value - LOG2).abs() < 1e-15);
        assert_eq!(r.witness.to_string(), "2 * 2");

        let b = brute_force_tmetric(&fr("4"), &s, TParam::Infinity, 4).unwrap();
        assert!((b.value - LOG2).abs() < 1e-15);
        assert_eq!(b.witness.to_string(), "2 * 2");
    }

    #[test]
    fn brute_force_matches_on_example() {
        let s = divisor_candidate_set(12).unwrap();
        let b = brute_force_tmetric(&fr("12"), &s, TParam::Finite(2.0), 5).unwrap();
        assert!((b.value - 1.4723637252083061).abs() < 1e-10);
    }

    #[test]
    fn profile_values_for_twelve() {
        let s = divisor_candidate_set(12).unwrap();
        let grid = [TParam::Finite(1.0), TParam::Finite(2.0), TParam::Infinity];
        let profile = tmetric_profile(&fr("12"), &s, &grid, DEFAULT_NODE_BUDGET).unwrap();
        let values: Vec<f64> = profile.points.iter().map(|p| p.value).collect();
        assert!((values[0] - 12f64.ln()).abs() < 1e-12);
        assert!((values[1] - 1.4723637252083061).abs() < 1e-12);
        assert!((values[2] - 3f64.ln()).abs() < 1e-12);
        // The t=1 witness (12) and the t=2 / t=∞ witness (2,2,3) dedup to 2.
        assert_eq!(profile.witnesses.len(), 2);
        assert_eq!(profile.points[1].witness_id, profile.points[2].witness_id);
    }

    #[test]
    fn profile_of_identity_is_zero() {
        let s = divisor_candidate_set(6).unwrap();
        let grid = [TParam::Finite(0.5), TParam::Finite(2.0)];
        let profile = tmetric_profile(&fr("1"), &s, &grid, DEFAULT_NODE_BUDGET).unwrap();
        assert!(profile.points.iter().all(|p| p.value == 0.0));
    }

    #[test]
    fn single_generator_profile_is_flat() {
        let s = CandidateSet::with_weil_heights(vec![fr("2"), fr("-1")]);
        for t in [TParam::Finite(0.5), TParam::Finite(1.0), TParam::Finite(2.0)] {
            let r = restricted_tmetric(&fr("2"), &s, t).unwrap();
            assert!((r.value - LOG2).abs() < 1e-15);
        }
    }

    #[test]
    fn span_failures_are_reported() {
        let s = divisor_candidate_set(12).unwrap();
        assert!(matches!(
            restricted_tmetric(&fr("5"), &s, TParam::Finite(1.0)),
            Err(Error::NotSpanned)
        ));
        // Sign unreachable: positives only cannot produce -2.
        let pos = CandidateSet::with_weil_heights(vec![fr("2")]);
        assert!(matches!(
            restricted_tmetric(&fr("-2"), &pos, TParam::Finite(1.0)),
            Err(Error::NotSpanned)
        ));
    }

    #[test]
    fn negative_targets_get_exact_witnesses() {
        let s = divisor_candidate_set(12).unwrap();
        let r = restricted_tmetric(&fr("-12"), &s, TParam::Finite(2.0)).unwrap();
        assert!(r.witness.verify());
        assert!((r.value - 1.4723637252083061).abs() < 1e-12);
    }

    #[test]
    fn inversion_symmetry_is_exact() {
        let s = divisor_candidate_set(12).unwrap();
        for t in [TParam::Finite(0.5), TParam::Finite(2.0), TParam::Infinity] {
            let a = restricted_tmetric(&fr("12"), &s, t).unwrap();
            let b = restricted_tmetric(&fr("1/12"), &s, t).unwrap();
            assert_eq!(a.value, b.value);
        }
    }

    #[test]
    fn sign_flip_through_both_sign_class_without_minus_one() {
        // S = closure of {2, -2} without a free -1: parity fixes must spend
        // a pair. -1 = (-2)·(1/2) costs two parts of height log 2.
        let s = CandidateSet::with_weil_heights(vec![fr("2"), fr("-2")]);
        let r = restricted_tmetric(&fr("-1"), &s, TParam::Finite(2.0)).unwrap();
        assert!(r.witness.verify());
        assert!((r.value - (2.0f64 * LOG2 * LOG2).sqrt()).abs() < 1e-12);

        let r = restricted_tmetric(&fr("-2"), &s, TParam::Finite(1.0)).unwrap();
        assert!(r.witness.verify());
        assert!((r.value - LOG2).abs() < 1e-15);
        assert_eq!(r.witness.to_string(), "-2");
    }

    #[test]
    fn budget_exhaustion_carries_incumbent() {
        let s = divisor_candidate_set(360).unwrap();
        match restricted_tmetric_with_budget(&fr("360"), &s, TParam::Finite(2.0), 3) {
            Err(Error::BudgetExceeded { best: Some(b) }) => {
                assert!(b.value > 0.0);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn zero_height_non_torsion_is_rejected() {
        let s = CandidateSet::new_with_heights(vec![fr("2")], |_| 0.0);
        assert!(matches!(
            restricted_tmetric(&fr("2"), &s, TParam::Finite(1.0)),
            Err(Error::InvalidParam(_)) | Err(Error::UnboundedPartCount)
        ));
    }

    #[test]
    fn oracle_equivalence_small() {
        for n in [4i64, 6, 9, 12, 30] {
            let s = divisor_candidate_set(n).unwrap();
            let alpha = fr(&n.to_string());
            for t in [TParam::Finite(1.0), TParam::Finite(2.0)] {
                let a = restricted_tmetric(&alpha, &s, t).unwrap();
                let b = brute_force_tmetric(&alpha, &s, t, 6).unwrap();
                assert!(
                    (a.value - b.value).abs() < 1e-10,
                    "n={n} t={t:?}: {} vs {}",
                    a.value,
                    b.value
                );
                assert!(same_norm_function(&a.height_vector, &b.height_vector));
            }
        }
    }

    #[test]
    fn upper_bound_by_trivial_factorization() {
        let s = divisor_candidate_set(30).unwrap();
        for t in [TParam::Finite(0.5), TParam::Finite(1.0), TParam::Finite(3.0), TParam::Infinity]
        {
            let r = restricted_tmetric(&fr("30"), &s, t).unwrap();
            assert!(r.value <= weil_height(&fr("30")) + 1e-12);
        }
    }

    #[test]
    fn t_triangle_sampled_on_divisor_set() {
        let s = divisor_candidate_set(60).unwrap();
        for t in [1.0, 2.0, 4.0] {
            let va = restricted_tmetric(&fr("4"), &s, TParam::Finite(t)).unwrap().value;
            let vb = restricted_tmetric(&fr("15"), &s, TParam::Finite(t)).unwrap().value;
            let vab = restricted_tmetric(&fr("60"), &s, TParam::Finite(t)).unwrap().value;
            assert!(vab.powf(t) <= va.powf(t) + vb.powf(t) + 1e-9);
        }
    }

    #[test]
    fn collapse_bound_examples() {
        let b = collapse_bound(LOG2, 4, TParam::Finite(2.0)).unwrap();
        assert!((b - LOG2 / 2.0).abs() < 1e-15);
        let b = collapse_bound(LOG2, 1, TParam::Finite(2.0)).unwrap();
        assert!((b - LOG2).abs() < 1e-15);
        assert_eq!(collapse_bound(0.0, 17, TParam::Finite(3.0)).unwrap(), 0.0);
        assert!(collapse_bound(LOG2, 4, TParam::Finite(1.0)).is_err());
        assert!(collapse_bound(LOG2, 4, TParam::Infinity).is_err());
        assert!(collapse_bound(LOG2, 0, TParam::Finite(2.0)).is_err());
    }

    #[test]
    fn minus_one_target_with_free_flip() {
        let s = divisor_candidate_set(6).unwrap();
        let r = restricted_tmetric(&fr("-1"), &s, TParam::Finite(1.0)).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.witness.to_string(), "-1");
        assert!(r.witness.verify());
    }
}
