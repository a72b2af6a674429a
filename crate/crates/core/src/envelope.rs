//! Analysis of finite families of norm functions `t ↦ ‖x‖_t`: zeros of the
//! exponential sums formed by their differences, intersection points, the
//! piecewise lower envelope with its exceptional points, and the coordinate
//! filtering that yields the asymptotic minimizer.

use crate::norms::{lt_norm, same_norm_function, HeightVector, TParam, ENTRY_TOL};
use crate::{Error, Result};

/// Breakpoints closer than this are treated as one point and flagged.
pub const BREAKPOINT_MERGE_TOL: f64 = 1e-9;

/// Default bisection tolerance on t for zero isolation.
pub const DEFAULT_ZERO_TOL: f64 = 1e-12;

const MAX_GRID_CELLS: usize = 1 << 16;

/// An exponential sum `F(t) = Σ a_k b_k^t` with strictly decreasing positive
/// bases and nonzero coefficients.
#[derive(Debug, Clone)]
pub struct ExpSum {
    /// `(coefficient, base)` pairs, bases strictly decreasing.
    terms: Vec<(f64, f64)>,
}

impl ExpSum {
    /// Merges duplicate bases (within [`ENTRY_TOL`]) and drops cancelled
    /// coefficients. Errors when everything cancels or a base is invalid.
    pub fn new(terms: impl Into<Vec<(f64, f64)>>) -> Result<Self> {
        let mut terms: Vec<(f64, f64)> = terms.into();
        for &(a, b) in &terms {
            if !(b > 0.0) || !b.is_finite() || !a.is_finite() {
                return Err(Error::InvalidParam(format!("invalid exponential-sum term ({a}, {b})")));
            }
        }
        terms.sort_by(|x, y| y.1.partial_cmp(&x.1).unwrap());
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(terms.len());
        for (a, b) in terms {
            match merged.last_mut() {
                Some((ma, mb)) if (*mb - b).abs() <= ENTRY_TOL => *ma += a,
                _ => merged.push((a, b)),
            }
        }
        merged.retain(|&(a, _)| a != 0.0);
        if merged.is_empty() {
            return Err(Error::InvalidParam("exponential sum is identically zero".into()));
        }
        Ok(ExpSum { terms: merged })
    }

    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    /// Direct evaluation; may overflow for large t with bases above 1.
    pub fn eval(&self, t: f64) -> f64 {
        self.terms.iter().map(|&(a, b)| a * b.powf(t)).sum()
    }

    /// `F(t) / b_1^t`, which has the same sign and zeros as `F` but never
    /// overflows: every base ratio is at most 1.
    pub fn eval_scaled(&self, t: f64) -> f64 {
        let b1 = self.terms[0].1;
        self.terms.iter().map(|&(a, b)| a * (b / b1).powf(t)).sum()
    }

    /// Sum of |coefficient ratios| at t, for tangency scale estimates.
    fn scale_at(&self, t: f64) -> f64 {
        let b1 = self.terms[0].1;
        self.terms.iter().map(|&(a, b)| (a * (b / b1).powf(t)).abs()).sum()
    }

    /// Number of sign changes in the coefficients ordered by descending base;
    /// an upper bound for the count of positive real zeros.
    pub fn descartes_bound(&self) -> usize {
        self.terms
            .windows(2)
            .filter(|w| (w[0].0 > 0.0) != (w[1].0 > 0.0))
            .count()
    }
}

/// Builds `F(t) = ‖x‖_t^t − ‖y‖_t^t` from the entries of two vectors with
/// distinct norm functions.
pub fn exp_sum_from_pair(x: &HeightVector, y: &HeightVector) -> Result<ExpSum> {
    if same_norm_function(x, y) {
        return Err(Error::DegeneratePair);
    }
    let mut terms: Vec<(f64, f64)> = x.entries().iter().map(|&e| (1.0, e)).collect();
    terms.extend(y.entries().iter().map(|&e| (-1.0, e)));
    ExpSum::new(terms)
}

/// A bound `T*` such that all zeros of `F` lie in `(0, T*]`: beyond it the
/// leading term dominates the tail.
pub fn zero_upper_bound(f: &ExpSum) -> f64 {
    if f.terms.len() < 2 {
        return 0.0;
    }
    let (a1, b1) = f.terms[0];
    let b2 = f.terms[1].1;
    let tail: f64 = f.terms[1..].iter().map(|&(a, _)| (a / a1).abs()).sum();
    (tail.ln() / (b1 / b2).ln()).max(0.0) + 1e-6
}

/// Zeros of an exponential sum located in `(lo, T*]`, plus flagged suspected
/// tangencies (near-zero local minima without a sign change).
#[derive(Debug, Clone, Default)]
pub struct ZeroScan {
    pub zeros: Vec<f64>,
    pub tangency_suspects: Vec<f64>,
}

/// Locates all sign-change zeros of `f` in `(lo, T*]` by an adaptive grid
/// scan (512 cells, doubled until the count stabilizes within the Descartes
/// bound) followed by bisection to `tol`.
pub fn exp_sum_zeros(f: &ExpSum, lo: f64, tol: f64) -> ZeroScan {
    debug_assert!(lo > 0.0, "lo must be positive");
    let tol = tol.max(1e-13);
    let hi = zero_upper_bound(f);
    if hi <= lo {
        return ZeroScan::default();
    }
    let descartes = f.descartes_bound();

    let mut cells = 512usize;
    let mut brackets: Vec<(f64, f64)> = Vec::new();
    let mut exact: Vec<f64> = Vec::new();
    let mut prev_count = usize::MAX;
    let mut suspects: Vec<f64> = Vec::new();
    loop {
        brackets.clear();
        exact.clear();
        suspects.clear();
        let step = (hi - lo) / cells as f64;
        let values: Vec<f64> = (0..=cells).map(|i| f.eval_scaled(lo + i as f64 * step)).collect();
        for i in 0..cells {
            let (va, vb) = (values[i], values[i + 1]);
            if va == 0.0 {
                if i > 0 {
                    exact.push(lo + i as f64 * step);
                }
            } else if vb != 0.0 && va.signum() != vb.signum() {
                brackets.push((lo + i as f64 * step, lo + (i + 1) as f64 * step));
            }
        }
        if values[cells] == 0.0 {
            exact.push(hi);
        }
        // Near-zero interior minima of |F| without a sign change.
        for i in 1..cells {
            let m = values[i].abs();
            if m <= values[i - 1].abs()
                && m <= values[i + 1].abs()
                && m < tol * f.scale_at(lo + i as f64 * step)
                && values[i] != 0.0
                && values[i - 1].signum() == values[i + 1].signum()
            {
                suspects.push(lo + i as f64 * step);
            }
        }
        let count = brackets.len() + exact.len();
        if (count == prev_count && count <= descartes) || cells >= MAX_GRID_CELLS {
            break;
        }
        prev_count = count;
        cells *= 2;
    }

    let mut zeros = exact;
    for (mut a, mut b) in brackets {
        let fa = f.eval_scaled(a);
        while b - a > tol {
            let mid = 0.5 * (a + b);
            let fm = f.eval_scaled(mid);
            if fm == 0.0 {
                a = mid;
                b = mid;
                break;
            }
            if fm.signum() == fa.signum() {
                a = mid;
            } else {
                b = mid;
            }
        }
        zeros.push(0.5 * (a + b));
    }
    zeros.sort_by(|a, b| a.partial_cmp(b).unwrap());
    zeros.dedup_by(|a, b| (*a - *b).abs() < BREAKPOINT_MERGE_TOL);
    ZeroScan { zeros, tangency_suspects: suspects }
}

/// The t values where the norm functions of `x` and `y` cross; empty when the
/// functions are identical.
pub fn intersection_points(x: &HeightVector, y: &HeightVector, lo: f64) -> Vec<f64> {
    match exp_sum_from_pair(x, y) {
        Ok(f) => exp_sum_zeros(&f, lo, DEFAULT_ZERO_TOL).zeros,
        Err(_) => Vec::new(),
    }
}

/// A finite family of height vectors with pairwise distinct norm functions.
#[derive(Debug, Clone)]
pub struct VectorSet {
    members: Vec<HeightVector>,
}

impl VectorSet {
    /// Deduplicates by norm function, keeping first occurrences. Errors on an
    /// empty family.
    pub fn new(vectors: impl IntoIterator<Item = HeightVector>) -> Result<Self> {
        let mut members: Vec<HeightVector> = Vec::new();
        for v in vectors {
            if !members.iter().any(|m| same_norm_function(m, &v)) {
                members.push(v);
            }
        }
        if members.is_empty() {
            return Err(Error::InvalidParam("vector set must be nonempty".into()));
        }
        Ok(VectorSet { members })
    }

    pub fn members(&self) -> &[HeightVector] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Result of the coordinatewise minimum filtering.
#[derive(Debug, Clone, Copy)]
pub struct AsymptoticMin {
    /// Index of the selected member in the [`VectorSet`].
    pub member: usize,
    /// Number of filtering rounds performed.
    pub rounds: usize,
}

/// Filters the family coordinate by coordinate, keeping at each step the
/// members whose next entry is minimal, until one survives. Equivalently the
/// lexicographic minimum of the descending-sorted vectors; the envelope's
/// active member for all sufficiently large t.
pub fn asymptotic_min(set: &VectorSet) -> AsymptoticMin {
    let mut survivors: Vec<usize> = (0..set.members.len()).collect();
    let mut rounds = 0usize;
    let max_len = set.members.iter().map(HeightVector::len).max().unwrap_or(0);
    for k in 0..=max_len {
        if survivors.len() <= 1 {
            break;
        }
        let entry = |i: usize| set.members[i].entries().get(k).copied().unwrap_or(0.0);
        let m = survivors.iter().map(|&i| entry(i)).fold(f64::INFINITY, f64::min);
        survivors.retain(|&i| entry(i) - m <= ENTRY_TOL);
        rounds += 1;
    }
    AsymptoticMin { member: survivors[0], rounds }
}

/// One maximal subinterval on which a single member is active.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub t_lo: f64,
    /// `f64::INFINITY` for the unbounded final piece.
    pub t_hi: f64,
    /// Index into [`PiecewiseEnvelope::members`].
    pub member: usize,
}

/// The lower envelope `t ↦ min_x ‖x‖_t` over `(lo, hi)` as a piecewise
/// structure.
#[derive(Debug, Clone)]
pub struct PiecewiseEnvelope {
    pub t_lo: f64,
    /// `f64::INFINITY` encodes an unbounded interval.
    pub t_hi: f64,
    /// The deduplicated family, indexed by the pieces.
    pub members: Vec<HeightVector>,
    /// All pairwise intersection points found inside the interval.
    pub breakpoints: Vec<f64>,
    /// Breakpoints that coincided within [`BREAKPOINT_MERGE_TOL`] and were
    /// merged into one.
    pub coincident: Vec<f64>,
    /// Suspected tangential contacts, flagged but not treated as crossings.
    pub tangency_suspects: Vec<f64>,
    /// Maximal runs with a fixed active member; breakpoints fall to the
    /// right piece.
    pub pieces: Vec<Piece>,
    /// Breakpoints where the active member changes.
    pub exceptional: Vec<f64>,
}

impl PiecewiseEnvelope {
    /// Index of the active member at `t` (clamped into the interval).
    pub fn active_at(&self, t: f64) -> usize {
        for piece in &self.pieces {
            if t < piece.t_hi {
                return piece.member;
            }
        }
        self.pieces.last().expect("envelope has at least one piece").member
    }

    /// Envelope value at `t`.
    pub fn value_at(&self, t: f64) -> f64 {
        lt_norm(&self.members[self.active_at(t)], TParam::Finite(t))
    }
}

fn argmin_at(members: &[HeightVector], t: f64) -> usize {
    let mut best = 0usize;
    let mut best_val = f64::INFINITY;
    for (i, m) in members.iter().enumerate() {
        let v = lt_norm(m, TParam::Finite(t));
        if v < best_val {
            best_val = v;
            best = i;
        }
    }
    best
}

/// Builds the lower envelope of the family over `(lo, hi)`; pass
/// `f64::INFINITY` for an unbounded interval, whose final piece is the
/// asymptotic minimizer.
pub fn lower_envelope(set: &VectorSet, lo: f64, hi: f64) -> Result<PiecewiseEnvelope> {
    if !(lo > 0.0) || !(hi > lo) {
        return Err(Error::InvalidParam(format!("need 0 < lo < hi, got ({lo}, {hi})")));
    }
    let members = set.members.clone();

    let mut raw: Vec<f64> = Vec::new();
    let mut tangency_suspects: Vec<f64> = Vec::new();
    let mut global_tstar = lo;
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let f = exp_sum_from_pair(&members[i], &members[j])
                .expect("vector set members have distinct norm functions");
            global_tstar = global_tstar.max(zero_upper_bound(&f));
            let scan = exp_sum_zeros(&f, lo, DEFAULT_ZERO_TOL);
            raw.extend(scan.zeros.into_iter().filter(|&z| z > lo && z < hi));
            tangency_suspects.extend(scan.tangency_suspects);
        }
    }
    raw.sort_by(|a, b| a.partial_cmp(b).unwrap());
    tangency_suspects.sort_by(|a, b| a.partial_cmp(b).unwrap());
    tangency_suspects.dedup_by(|a, b| (*a - *b).abs() < BREAKPOINT_MERGE_TOL);

    let mut breakpoints: Vec<f64> = Vec::new();
    let mut coincident: Vec<f64> = Vec::new();
    for z in raw {
        match breakpoints.last() {
            Some(&last) if z - last < BREAKPOINT_MERGE_TOL => {
                if coincident.last() != Some(&last) {
                    coincident.push(last);
                }
            }
            _ => breakpoints.push(z),
        }
    }

    // Active member per subinterval, by evaluation at interior points.
    let unbounded = hi.is_infinite();
    let asym = asymptotic_min(set);
    let mut boundaries = vec![lo];
    boundaries.extend(&breakpoints);
    let n_sub = boundaries.len();
    let mut active: Vec<usize> = Vec::with_capacity(n_sub);
    for k in 0..n_sub {
        let left = boundaries[k];
        let is_last = k + 1 == n_sub;
        if is_last && unbounded {
            // Beyond every crossing the ranking is frozen; the filtering
            // result is the active member there. Cross-check by evaluation.
            let probe = global_tstar.max(left) + 1.0;
            let by_eval = argmin_at(&members, probe);
            let vm = lt_norm(&members[asym.member], TParam::Finite(probe));
            let ve = lt_norm(&members[by_eval], TParam::Finite(probe));
            assert!(
                (vm - ve).abs() <= 1e-9 * (1.0 + ve),
                "asymptotic minimizer disagrees with evaluation at t={probe}"
            );
            active.push(asym.member);
        } else {
            let right = if is_last { hi } else { boundaries[k + 1] };
            active.push(argmin_at(&members, 0.5 * (left + right)));
        }
    }

    // Merge adjacent subintervals with the same active member.
    let mut pieces: Vec<Piece> = Vec::new();
    let mut exceptional: Vec<f64> = Vec::new();
    for k in 0..n_sub {
        let right = if k + 1 == n_sub { hi } else { boundaries[k + 1] };
        match pieces.last_mut() {
            Some(p) if p.member == active[k] => p.t_hi = right,
            _ => {
                if k > 0 {
                    exceptional.push(boundaries[k]);
                }
                pieces.push(Piece { t_lo: boundaries[k], t_hi: right, member: active[k] });
            }
        }
    }

    Ok(PiecewiseEnvelope {
        t_lo: lo,
        t_hi: hi,
        members,
        breakpoints,
        coincident,
        tangency_suspects,
        pieces,
        exceptional,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const LOG2: f64 = std::f64::consts::LN_2;

    fn hv(entries: &[f64]) -> HeightVector {
        HeightVector::new(entries.to_vec())
    }

    #[test]
    fn pair_sum_reads_off_entries() {
        let f = exp_sum_from_pair(&hv(&[4f64.ln()]), &hv(&[LOG2, LOG2])).unwrap();
        assert_eq!(f.terms().len(), 2);
        assert!((f.terms()[0].0 - 1.0).abs() < 1e-15 && (f.terms()[0].1 - 4f64.ln()).abs() < 1e-15);
        assert!((f.terms()[1].0 + 2.0).abs() < 1e-15 && (f.terms()[1].1 - LOG2).abs() < 1e-15);

        let f = exp_sum_from_pair(&hv(&[2.0]), &hv(&[1.0])).unwrap();
        assert_eq!(f.terms(), &[(1.0, 2.0), (-1.0, 1.0)]);

        // Shared base cancels.
        let f = exp_sum_from_pair(&hv(&[2.0, 1.0]), &hv(&[2.0])).unwrap();
        assert_eq!(f.terms(), &[(1.0, 1.0)]);
    }

    #[test]
    fn identical_pair_is_degenerate() {
        let e = exp_sum_from_pair(&hv(&[1.0, 1.0]), &hv(&[1.0, 1.0]));
        assert!(matches!(e, Err(Error::DegeneratePair)));
    }

    #[test]
    fn zero_bound_examples() {
        let f = ExpSum::new(vec![(-1.0, 2.0 * LOG2), (2.0, LOG2)]).unwrap();
        let t = zero_upper_bound(&f);
        assert!((t - 1.0).abs() < 1e-5, "got {t}");

        let single = ExpSum::new(vec![(1.0, 2.0)]).unwrap();
        assert_eq!(zero_upper_bound(&single), 0.0);

        let f = ExpSum::new(vec![(1.0, 3.0), (-1.0, 1.0)]).unwrap();
        assert!(zero_upper_bound(&f) <= 1e-5);
        assert!(exp_sum_zeros(&f, 0.1, 1e-12).zeros.is_empty());
    }

    #[test]
    fn finds_simple_crossing_at_one() {
        let f = ExpSum::new(vec![(-1.0, 2.0 * LOG2), (2.0, LOG2)]).unwrap();
        let scan = exp_sum_zeros(&f, 0.1, 1e-12);
        assert_eq!(scan.zeros.len(), 1);
        assert!((scan.zeros[0] - 1.0).abs() < 1e-9, "got {}", scan.zeros[0]);
    }

    #[test]
    fn quadratic_substitution_zero() {
        // 4^t - 3·2^t + 1 = 0 with s = 2^t: s² - 3s + 1 = 0.
        let f = ExpSum::new(vec![(1.0, 4.0), (-3.0, 2.0), (1.0, 1.0)]).unwrap();
        let scan = exp_sum_zeros(&f, 0.05, 1e-12);
        let expected = ((3.0 + 5f64.sqrt()) / 2.0).ln() / LOG2;
        assert_eq!(scan.zeros.len(), 1);
        assert!((scan.zeros[0] - expected).abs() < 1e-9);
        assert!(scan.zeros.len() <= f.descartes_bound());
        // Beyond T*, the sign is the leading coefficient's.
        let tstar = zero_upper_bound(&f);
        assert!(f.eval_scaled(tstar + 1.0) > 0.0);
    }

    #[test]
    fn intersection_point_examples() {
        let pts = intersection_points(&hv(&[4f64.ln()]), &hv(&[LOG2, LOG2]), 0.1);
        assert_eq!(pts.len(), 1);
        assert!((pts[0] - 1.0).abs() < 1e-9);

        assert!(intersection_points(&hv(&[1.0, 1.0]), &hv(&[1.0, 1.0]), 0.1).is_empty());

        let pts = intersection_points(&hv(&[2.0]), &hv(&[1.0, 1.0]), 0.1);
        assert_eq!(pts.len(), 1);
        assert!((pts[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn vector_set_dedups() {
        let set = VectorSet::new(vec![hv(&[1.0, 2.0]), hv(&[2.0, 1.0]), hv(&[3.0])]).unwrap();
        assert_eq!(set.len(), 2);
        assert!(VectorSet::new(Vec::<HeightVector>::new()).is_err());
    }

    #[test]
    fn asymptotic_min_examples() {
        let set = VectorSet::new(vec![hv(&[4f64.ln()]), hv(&[LOG2, LOG2])]).unwrap();
        let m = asymptotic_min(&set);
        assert_eq!(m.member, 1);

        let set = VectorSet::new(vec![hv(&[3.0, 1.0]), hv(&[2.0, 2.0])]).unwrap();
        assert_eq!(asymptotic_min(&set).member, 1);

        let set = VectorSet::new(vec![hv(&[2.0, 1.0]), hv(&[2.0, 0.5, 0.5])]).unwrap();
        let m = asymptotic_min(&set);
        assert_eq!(m.member, 1);
        assert!(m.rounds >= 2);
    }

    #[test]
    fn envelope_of_crossing_pair() {
        let set = VectorSet::new(vec![hv(&[4f64.ln()]), hv(&[LOG2, LOG2])]).unwrap();
        let env = lower_envelope(&set, 0.25, 4.0).unwrap();
        assert_eq!(env.pieces.len(), 2);
        assert_eq!(env.pieces[0].member, 0);
        assert_eq!(env.pieces[1].member, 1);
        assert_eq!(env.exceptional.len(), 1);
        assert!((env.exceptional[0] - 1.0).abs() < 1e-9);
        assert_eq!(env.pieces[0].t_lo, 0.25);
        assert_eq!(env.pieces[1].t_hi, 4.0);
    }

    #[test]
    fn envelope_of_singleton() {
        let set = VectorSet::new(vec![hv(&[5.0])]).unwrap();
        let env = lower_envelope(&set, 0.5, 10.0).unwrap();
        assert_eq!(env.pieces.len(), 1);
        assert!(env.exceptional.is_empty());
        assert!(env.breakpoints.is_empty());
    }

    #[test]
    fn inactive_member_leaves_no_exceptional_point() {
        let set =
            VectorSet::new(vec![hv(&[4f64.ln()]), hv(&[LOG2, LOG2]), hv(&[10.0])]).unwrap();
        let env = lower_envelope(&set, 0.25, f64::INFINITY).unwrap();
        assert_eq!(env.exceptional.len(), 1);
        assert!((env.exceptional[0] - 1.0).abs() < 1e-9);
        let last = env.pieces.last().unwrap();
        assert!(last.t_hi.is_infinite());
        assert_eq!(last.member, 1);
        // (10) crosses the others but never becomes active.
        assert!(env.breakpoints.len() >= 1);
        assert!(env.pieces.iter().all(|p| p.member != 2));
    }

    #[test]
    fn envelope_matches_pointwise_min() {
        let set = VectorSet::new(vec![
            hv(&[2.0, 0.4]),
            hv(&[1.6, 1.0, 0.3]),
            hv(&[1.4, 1.4]),
            hv(&[3.0]),
        ])
        .unwrap();
        let env = lower_envelope(&set, 0.2, 20.0).unwrap();
        for i in 0..200 {
            let t = 0.2 + (20.0 - 0.2) * (i as f64 + 0.5) / 200.0;
            let direct = set
                .members()
                .iter()
                .map(|m| lt_norm(m, TParam::Finite(t)))
                .fold(f64::INFINITY, f64::min);
            let via_env = env.value_at(t);
            assert!(
                (direct - via_env).abs() <= 1e-10 * (1.0 + direct),
                "t={t}: {direct} vs {via_env}"
            );
        }
    }

    #[test]
    fn exceptional_points_are_intersection_points() {
        let set = VectorSet::new(vec![
            hv(&[2.0, 0.4]),
            hv(&[1.6, 1.0, 0.3]),
            hv(&[1.4, 1.4]),
        ])
        .unwrap();
        let env = lower_envelope(&set, 0.2, f64::INFINITY).unwrap();
        for e in &env.exceptional {
            assert!(env.breakpoints.iter().any(|b| (b - e).abs() < 1e-12));
        }
    }

    #[test]
    fn envelope_is_deterministic() {
        let set = VectorSet::new(vec![hv(&[2.0, 0.4]), hv(&[1.6, 1.0, 0.3])]).unwrap();
        let a = lower_envelope(&set, 0.2, f64::INFINITY).unwrap();
        let b = lower_envelope(&set, 0.2, f64::INFINITY).unwrap();
        let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(&a.breakpoints), bits(&b.breakpoints));
        assert_eq!(a.pieces, b.pieces);
    }

    #[test]
    fn rejects_bad_interval() {
        let set = VectorSet::new(vec![hv(&[1.0])]).unwrap();
        assert!(lower_envelope(&set, 0.0, 4.0).is_err());
        assert!(lower_envelope(&set, 2.0, 1.0).is_err());
    }
}
