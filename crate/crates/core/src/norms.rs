//! L_t norms on finitely supported nonnegative vectors, identity testing for
//! the induced norm functions `t ↦ ‖x‖_t`, and executable height-axiom checks.

use crate::{Error, Result};
use std::fmt;

/// Absolute tolerance for matching vector entries when comparing multisets.
///
/// Heights at desk scale are O(10), so an absolute tolerance is adequate.
pub const ENTRY_TOL: f64 = 1e-12;

/// The norm exponent: a finite positive real or ∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TParam {
    Finite(f64),
    Infinity,
}

impl TParam {
    /// A finite exponent; must be positive and finite.
    pub fn finite(t: f64) -> Result<Self> {
        if t.is_finite() && t > 0.0 {
            Ok(TParam::Finite(t))
        } else {
            Err(Error::InvalidParam(format!("t must be positive and finite, got {t}")))
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, TParam::Infinity)
    }

    /// The exponent as an `f64`, with ∞ mapped to `f64::INFINITY`.
    pub fn as_f64(self) -> f64 {
        match self {
            TParam::Finite(t) => t,
            TParam::Infinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for TParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TParam::Finite(t) => write!(f, "{t}"),
            TParam::Infinity => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for TParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(TParam::Infinity);
        }
        let t: f64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("invalid t value: {s:?}")))?;
        TParam::finite(t)
    }
}

/// A finitely supported vector of nonnegative reals (natural-log units),
/// stored sorted descending with zero entries stripped.
///
/// The empty vector represents `(0, 0, …)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightVector {
    entries: Vec<f64>,
}

impl HeightVector {
    /// Builds a vector from arbitrary-order entries. Zero entries are
    /// dropped, the rest sorted descending.
    ///
    /// Panics on negative or non-finite entries; those never arise from
    /// heights and indicate a caller bug.
    pub fn new(entries: impl Into<Vec<f64>>) -> Self {
        let mut entries = entries.into();
        for &e in &entries {
            assert!(e.is_finite() && e >= 0.0, "height entries must be finite and >= 0, got {e}");
        }
        entries.retain(|&e| e > 0.0);
        entries.sort_by(|a, b| b.partial_cmp(a).unwrap());
        HeightVector { entries }
    }

    pub fn empty() -> Self {
        HeightVector { entries: Vec::new() }
    }

    /// Entries sorted descending; all strictly positive.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest entry, or 0 for the empty vector.
    pub fn max_entry(&self) -> f64 {
        self.entries.first().copied().unwrap_or(0.0)
    }
}

impl fmt::Display for HeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// The L_t norm `(Σ x_n^t)^{1/t}`, with the max for t = ∞ and 0 for the
/// empty vector.
///
/// Evaluation scales by the largest entry so that `x^t` never overflows for
/// large t.
pub fn lt_norm(x: &HeightVector, t: TParam) -> f64 {
    let m = x.max_entry();
    if m == 0.0 {
        return 0.0;
    }
    match t {
        TParam::Infinity => m,
        TParam::Finite(t) => {
            let sum: f64 = x.entries.iter().map(|&e| (e / m).powf(t)).sum();
            m * sum.powf(1.0 / t)
        }
    }
}

/// Whether `t ↦ ‖x‖_t` and `t ↦ ‖y‖_t` are the same function.
///
/// Distinct exponentials are linearly independent, so the two norm functions
/// coincide exactly when the multisets of nonzero entries coincide. Entries
/// match within [`ENTRY_TOL`].
pub fn same_norm_function(x: &HeightVector, y: &HeightVector) -> bool {
    same_norm_function_with_tol(x, y, ENTRY_TOL)
}

/// [`same_norm_function`] with an explicit absolute entry-matching tolerance.
pub fn same_norm_function_with_tol(x: &HeightVector, y: &HeightVector, tol: f64) -> bool {
    x.entries.len() == y.entries.len()
        && x.entries
            .iter()
            .zip(&y.entries)
            .all(|(a, b)| (a - b).abs() <= tol)
}

/// One failed height-axiom check.
#[derive(Debug, Clone, PartialEq)]
pub enum AxiomViolation {
    /// φ(identity) was nonzero.
    IdentityNotZero { value: f64 },
    /// φ(α) ≠ φ(α⁻¹) for the sample element at `index`.
    InversionAsymmetry { index: usize, forward: f64, backward: f64 },
}

/// Report from [`check_height_axioms`]; empty means the axioms hold on the
/// sample.
#[derive(Debug, Clone, Default)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the height axioms φ(e) = 0 and φ(α) = φ(α⁻¹) on a sample.
///
/// The sample should include the identity and be closed under inversion so
/// every evaluated value is also cross-checked.
pub fn check_height_axioms<E>(
    sample: &[E],
    identity: &E,
    inverse: impl Fn(&E) -> E,
    phi: impl Fn(&E) -> f64,
    tol: f64,
) -> AxiomReport {
    let mut report = AxiomReport::default();
    let at_identity = phi(identity);
    if at_identity.abs() > tol {
        report.violations.push(AxiomViolation::IdentityNotZero { value: at_identity });
    }
    for (index, elem) in sample.iter().enumerate() {
        let forward = phi(elem);
        let backward = phi(&inverse(elem));
        if (forward - backward).abs() > tol {
            report
                .violations
                .push(AxiomViolation::InversionAsymmetry { index, forward, backward });
        }
    }
    report
}

/// Checks the t-triangle inequality `φ(αβ) ≤ ‖(φ(α), φ(β))‖_t` on a list of
/// triples `(φ(αβ), φ(α), φ(β))`, within an absolute slack of 1e-12.
pub fn check_t_triangle(triples: &[(f64, f64, f64)], t: TParam) -> bool {
    triples.iter().all(|&(product, a, b)| {
        let rhs = lt_norm(&HeightVector::new(vec![a, b]), t);
        product <= rhs + 1e-12
    })
}
