//! Mahler measure and Weil height of algebraic numbers from an integer
//! minimal polynomial, via simultaneous complex root finding.

use crate::{Error, Result};
use num_complex::Complex64;
use std::fmt;

/// Default absolute tolerance for root locations.
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

const MIN_ROOT_TOL: f64 = 1e-14;
const MAX_ITERATIONS: usize = 400;

/// A univariate polynomial with integer coefficients, ascending degree order,
/// nonzero leading coefficient, degree ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        let mut coeffs = coeffs;
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::InvalidParam(
                "polynomial must have degree at least 1".into(),
            ));
        }
        Ok(IntPolynomial { coeffs })
    }

    /// Coefficients ascending: `coeffs()[k]` multiplies x^k.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> i64 {
        *self.coeffs.last().unwrap()
    }

    pub fn constant(&self) -> i64 {
        self.coeffs[0]
    }

    /// Horner evaluation at a complex point.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c as f64)
    }

    /// Derivative value at a complex point.
    pub fn eval_derivative(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (k, &c)| acc * z + (k as f64) * c as f64)
    }

    /// The reversal x^n·p(1/x); roots map to inverses.
    pub fn reciprocal(&self) -> Result<Self> {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        IntPolynomial::new(coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl std::str::FromStr for IntPolynomial {
    type Err = Error;

    /// Comma-separated integer coefficients, ascending: `"-1,-1,1"` is x²−x−1.
    fn from_str(s: &str) -> Result<Self> {
        let coeffs: Result<Vec<i64>> = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("invalid coefficient: {part:?}")))
            })
            .collect();
        IntPolynomial::new(coeffs?)
    }
}

/// All complex roots with multiplicity, each carrying a certified absolute
/// error bound.
#[derive(Debug, Clone)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    pub bounds: Vec<f64>,
}

/// Finds all complex roots by the Aberth–Ehrlich simultaneous iteration.
///
/// Each returned root carries the Newton proximity bound
/// `deg · |p(z)| / |p'(z)|`, which encloses a true root; the iteration keeps
/// refining until every bound is below `tol` or errors out with the best
/// residual seen.
pub fn poly_roots(p: &IntPolynomial, tol: f64) -> Result<RootSet> {
    if tol < MIN_ROOT_TOL {
        return Err(Error::InvalidParam(format!("root tolerance must be >= {MIN_ROOT_TOL}, got {tol}")));
    }
    let mut roots = Vec::with_capacity(p.degree());
    let mut bounds = Vec::with_capacity(p.degree());

    // Strip zero roots exactly; they are their own certificate.
    let zero_count = p.coeffs.iter().take_while(|&&c| c == 0).count();
    for _ in 0..zero_count {
        roots.push(Complex64::new(0.0, 0.0));
        bounds.push(0.0);
    }
    let reduced = IntPolynomial { coeffs: p.coeffs[zero_count..].to_vec() };
    if reduced.coeffs.len() == 1 {
        return Ok(RootSet { roots, bounds });
    }
    if reduced.degree() == 1 {
        let root = -reduced.coeffs[0] as f64 / reduced.coeffs[1] as f64;
        roots.push(Complex64::new(root, 0.0));
        bounds.push(f64::EPSILON * root.abs());
        return Ok(RootSet { roots, bounds });
    }

    let n = reduced.degree();
    let lead = reduced.leading() as f64;
    // Cauchy bound on root magnitudes gives the initial circle.
    let radius = 1.0
        + reduced.coeffs[..n]
            .iter()
            .map(|&c| (c as f64 / lead).abs())
            .fold(0.0f64, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = std::f64::consts::TAU * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(0.7 * radius, angle)
        })
        .collect();

    let mut best_residual = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let pz = reduced.eval(z[i]);
            let dpz = reduced.eval_derivative(z[i]);
            if pz.norm() == 0.0 {
                continue;
            }
            let w = if dpz.norm() == 0.0 {
                // Perturb off a critical point.
                Complex64::new(1e-8, 1e-8)
            } else {
                pz / dpz
            };
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).finv())
                .sum();
            let denom = Complex64::new(1.0, 0.0) - w * repulsion;
            let step = if denom.norm() < 1e-300 { w } else { w / denom };
            z[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < tol * 1e-2 {
            break;
        }
    }

    // Certify: Newton proximity bound per root.
    let mut worst = 0.0f64;
    let mut certified = Vec::with_capacity(n);
    for &zi in &z {
        let pz = reduced.eval(zi);
        let dpz = reduced.eval_derivative(zi);
        best_residual = best_residual.min(pz.norm());
        let bound = if pz.norm() == 0.0 {
            0.0
        } else if dpz.norm() == 0.0 {
            f64::INFINITY
        } else {
            n as f64 * (pz / dpz).norm()
        };
        worst = worst.max(bound);
        certified.push(bound);
    }
    if worst > tol {
        return Err(Error::NonConverged { residual: best_residual });
    }
    roots.extend(z);
    bounds.extend(certified);
    Ok(RootSet { roots, bounds })
}

/// Result of a Mahler-measure computation.
#[derive(Debug, Clone)]
pub struct MahlerResult {
    /// The measure (or height, for [`weil_height_algebraic`]) in natural logs.
    pub value: f64,
    /// Estimated absolute error, including ambiguity from roots the certified
    /// bounds cannot place on either side of the unit circle.
    pub error_estimate: f64,
    pub degree: usize,
    /// Set when the cheap reducibility screen finds a factor; the value is
    /// still that of the polynomial as given.
    pub reducible_hint: bool,
    pub roots: RootSet,
}

/// Logarithmic Mahler measure `log|lead| + Σ log⁺|root|` of the polynomial.
///
/// The caller is responsible for irreducibility when interpreting this as
/// `m(α)` for a root α; a cheap screen sets [`MahlerResult::reducible_hint`].
pub fn mahler_measure(p: &IntPolynomial, tol: f64) -> Result<MahlerResult> {
    let roots = poly_roots(p, tol)?;
    let mut value = (p.leading().unsigned_abs() as f64).ln();
    let mut error_estimate = 0.0;
    for (z, &bound) in roots.roots.iter().zip(&roots.bounds) {
        let r = z.norm();
        if r - bound > 1.0 {
            value += r.ln();
            error_estimate += bound / (r - bound);
        } else if r + bound >= 1.0 {
            // Within the certified bound of the unit circle: clamp, record
            // the ambiguity.
            value += r.ln().max(0.0);
            error_estimate += r.ln().abs() + bound;
        }
        // r + bound < 1: contributes log+ = 0 exactly.
    }
    Ok(MahlerResult {
        value,
        error_estimate,
        degree: p.degree(),
        reducible_hint: reducibility_hint(p),
        roots,
    })
}

/// Weil height of a root of `p`: `mahler_measure(p) / degree(p)`.
pub fn weil_height_algebraic(p: &IntPolynomial, tol: f64) -> Result<MahlerResult> {
    let mut m = mahler_measure(p, tol)?;
    m.value /= m.degree as f64;
    m.error_estimate /= m.degree as f64;
    Ok(m)
}

/// Cheap exact reducibility screen: content/zero-constant checks, a rational
/// root search, and for monic (up to sign) quartics a quadratic-pair factor
/// search. Misses are possible; hits are certain.
pub fn reducibility_hint(p: &IntPolynomial) -> bool {
    if p.degree() == 1 {
        return false;
    }
    if p.constant() == 0 {
        return true; // divisible by x
    }
    if has_rational_root(p) {
        return true;
    }
    if p.degree() == 4 && p.leading().abs() == 1 && monic_quartic_splits(p) {
        return true;
    }
    false
}

fn divisors_of(n: u64) -> Vec<u64> {
    let mut ds = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            ds.push(d);
            if d != n / d {
                ds.push(n / d);
            }
        }
        d += 1;
    }
    ds
}

fn has_rational_root(p: &IntPolynomial) -> bool {
    // Candidate roots ±a/b with a | constant, b | leading; evaluated exactly
    // in i128 as Σ c_k a^k b^(n-k).
    let n = p.degree();
    for a in divisors_of(p.constant().unsigned_abs()) {
        for b in divisors_of(p.leading().unsigned_abs()) {
            for sign in [1i128, -1] {
                let a = sign * a as i128;
                let b = b as i128;
                let mut acc = 0i128;
                for (k, &c) in p.coeffs.iter().enumerate() {
                    let mut term = c as i128;
                    for _ in 0..k {
                        term = term.checked_mul(a).unwrap_or(i128::MAX / 2);
                    }
                    for _ in k..n {
                        term = term.checked_mul(b).unwrap_or(i128::MAX / 2);
                    }
                    acc = acc.saturating_add(term);
                }
                if acc == 0 {
                    return true;
                }
            }
        }
    }
    false
}

fn monic_quartic_splits(p: &IntPolynomial) -> bool {
    // x^4+ax^3+bx^2+cx+d = (x^2+px+q)(x^2+rx+s): enumerate integer (q, s)
    // with qs = d and solve the linear conditions for p, r.
    let sign = p.leading().signum() as i128;
    let c: Vec<i128> = p.coeffs.iter().map(|&x| sign * x as i128).collect();
    let (d0, c1, b2, a3) = (c[0], c[1], c[2], c[3]);
    let mut qs_pairs = Vec::new();
    for q in divisors_of(d0.unsigned_abs() as u64) {
        let q = q as i128;
        if q != 0 && d0 % q == 0 {
            qs_pairs.push((q, d0 / q));
            qs_pairs.push((-q, -(d0 / q)));
        }
    }
    for (q, s) in qs_pairs {
        // p + r = a3, q + s + p·r = b2, p·s + r·q = c1.
        // Solve p·r = b2 - q - s with p + r = a3 over integers.
        let prod = b2 - q - s;
        let disc = a3 * a3 - 4 * prod;
        if disc < 0 {
            continue;
        }
        let sq = (disc as f64).sqrt().round() as i128;
        if sq * sq != disc {
            continue;
        }
        for root in [(a3 + sq) / 2, (a3 - sq) / 2] {
            if (a3 + sq) % 2 != 0 && (a3 - sq) % 2 != 0 {
                continue;
            }
            let pp = root;
            let rr = a3 - pp;
            if pp * rr == prod && pp * s + rr * q == c1 {
                return true;
            }
        }
    }
    false
}
