//! Exact arithmetic in the multiplicative group ℚ^× using fully factored
//! representations, and the Weil height computed from prime exponents.

use crate::factor::factor_integer;
use crate::norms::HeightVector;
use crate::{Error, Result};
use num_bigint::BigUint;
use std::collections::BTreeMap;
use std::fmt;

/// A nonzero rational as sign times a product of prime powers.
///
/// The identity is `sign = +1` with an empty exponent map. Every stored
/// exponent is nonzero and every key prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactoredRational {
    negative: bool,
    factors: BTreeMap<u64, i64>,
}

impl FactoredRational {
    /// The group identity, 1.
    pub fn one() -> Self {
        FactoredRational { negative: false, factors: BTreeMap::new() }
    }

    /// Minus one, the nontrivial torsion element of ℚ^×.
    pub fn minus_one() -> Self {
        FactoredRational { negative: true, factors: BTreeMap::new() }
    }

    /// Builds from an explicit sign and prime→exponent map. Zero exponents
    /// are dropped; keys are trusted to be prime (debug-checked).
    pub fn from_parts(negative: bool, factors: BTreeMap<u64, i64>) -> Self {
        let factors: BTreeMap<u64, i64> = factors.into_iter().filter(|&(_, e)| e != 0).collect();
        debug_assert!(factors.keys().all(|&p| crate::factor::is_prime(p)));
        FactoredRational { negative, factors }
    }

    pub fn is_one(&self) -> bool {
        !self.negative && self.factors.is_empty()
    }

    /// True for ±1, the elements of height zero.
    pub fn is_torsion(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// Prime → exponent view, ascending by prime.
    pub fn factors(&self) -> &BTreeMap<u64, i64> {
        &self.factors
    }

    pub fn inverse(&self) -> Self {
        FactoredRational {
            negative: self.negative,
            factors: self.factors.iter().map(|(&p, &e)| (p, -e)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (&p, &e) in &other.factors {
            let entry = factors.entry(p).or_insert(0);
            *entry += e;
            if *entry == 0 {
                factors.remove(&p);
            }
        }
        FactoredRational { negative: self.negative ^ other.negative, factors }
    }

    pub fn pow(&self, n: i64) -> Self {
        if n == 0 {
            return FactoredRational::one();
        }
        FactoredRational {
            negative: self.negative && n % 2 != 0,
            factors: self.factors.iter().map(|(&p, &e)| (p, e * n)).collect(),
        }
    }

    /// Numerator of the reduced fraction |self| as a big integer.
    pub fn numerator(&self) -> BigUint {
        self.factors
            .iter()
            .filter(|&(_, &e)| e > 0)
            .fold(BigUint::from(1u32), |acc, (&p, &e)| acc * BigUint::from(p).pow(e as u32))
    }

    /// Denominator of the reduced fraction |self| as a big integer.
    pub fn denominator(&self) -> BigUint {
        self.factors
            .iter()
            .filter(|&(_, &e)| e < 0)
            .fold(BigUint::from(1u32), |acc, (&p, &e)| acc * BigUint::from(p).pow((-e) as u32))
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        let den = self.denominator();
        if den == BigUint::from(1u32) {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "{}/{}", self.numerator(), den)
        }
    }
}

impl std::str::FromStr for FactoredRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s)
    }
}

fn parse_component(text: &str) -> Result<(bool, u64)> {
    let text = text.trim();
    let (negative, digits) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("invalid integer: {text:?}")));
    }
    let magnitude: u64 = digits
        .parse()
        .map_err(|_| Error::TooLarge(text.to_string()))?;
    if magnitude > i64::MAX as u64 {
        return Err(Error::TooLarge(text.to_string()));
    }
    Ok((negative, magnitude))
}

/// Parses `"n"`, `"-n"`, or `"p/q"` (components up to 2^63 − 1 in magnitude)
/// into the exact factored form in lowest terms. Zero is rejected.
pub fn parse_rational(text: &str) -> Result<FactoredRational> {
    let text = text.trim();
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let (num_neg, num) = parse_component(num_text)?;
    let (den_neg, den) = match den_text {
        Some(d) => parse_component(d)?,
        None => (false, 1),
    };
    if num == 0 {
        return Err(Error::ZeroElement);
    }
    if den == 0 {
        return Err(Error::Parse("denominator is zero".into()));
    }
    let mut factors: BTreeMap<u64, i64> = BTreeMap::new();
    for p in factor_integer(num)? {
        *factors.entry(p).or_insert(0) += 1;
    }
    for p in factor_integer(den)? {
        let entry = factors.entry(p).or_insert(0);
        *entry -= 1;
        if *entry == 0 {
            factors.remove(&p);
        }
    }
    Ok(FactoredRational { negative: num_neg ^ den_neg, factors })
}

/// Exact product of a sequence of factored rationals; empty input gives 1.
pub fn product(parts: &[FactoredRational]) -> FactoredRational {
    parts.iter().fold(FactoredRational::one(), |acc, p| acc.mul(p))
}

/// The logarithmic Weil height on ℚ^×: `log max(|num|, |den|)` in lowest
/// terms, computed from the exponents so nothing overflows.
pub fn weil_height(q: &FactoredRational) -> f64 {
    let mut num_mass = 0.0f64;
    let mut den_mass = 0.0f64;
    for (&p, &e) in &q.factors {
        let lp = (p as f64).ln();
        if e > 0 {
            num_mass += e as f64 * lp;
        } else {
            den_mass += (-e) as f64 * lp;
        }
    }
    num_mass.max(den_mass)
}

/// A factorization of `target` into `parts`, with the product invariant kept
/// checkable.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    pub parts: Vec<FactoredRational>,
    pub target: FactoredRational,
}

impl Factorization {
    pub fn new(parts: Vec<FactoredRational>, target: FactoredRational) -> Self {
        Factorization { parts, target }
    }

    /// Whether the product of the parts equals the target exactly.
    pub fn verify(&self) -> bool {
        product(&self.parts) == self.target
    }

    /// Height vector of the parts under the given height.
    pub fn heights(&self, phi: impl Fn(&FactoredRational) -> f64) -> HeightVector {
        HeightVector::new(self.parts.iter().map(&phi).collect::<Vec<_>>())
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "1");
        }
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            write!(f, "{part}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fr(s: &str) -> FactoredRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        let twelve = fr("12");
        assert!(!twelve.is_negative());
        assert_eq!(twelve.factors().get(&2), Some(&2));
        assert_eq!(twelve.factors().get(&3), Some(&1));

        let neg = fr("-3/2");
        assert!(neg.is_negative());
        assert_eq!(neg.factors().get(&3), Some(&1));
        assert_eq!(neg.factors().get(&2), Some(&-1));

        assert!(fr("1").is_one());
        assert_eq!(fr("6/4"), fr("3/2"));
        assert_eq!(fr("-3/-2"), fr("3/2"));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(parse_rational("0"), Err(Error::ZeroElement)));
        assert!(matches!(parse_rational("0/5"), Err(Error::ZeroElement)));
        assert!(parse_rational("3/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
        assert!(matches!(parse_rational("9223372036854775808"), Err(Error::TooLarge(_))));
    }

    #[test]
    fn product_examples() {
        let a = fr("2");
        let b = fr("6");
        assert_eq!(product(&[a.clone(), b]), fr("12"));
        assert!(product(&[a.clone(), a.inverse()]).is_one());
        assert!(product(&[]).is_one());
    }

    #[test]
    fn weil_height_examples() {
        // Independent place-sum oracle on q = p1/p2 in lowest terms:
        // archimedean log+|q| plus, for each denominator prime, -e_p log p.
        let place_sum = |q: &FactoredRational| {
            let num: f64 = q
                .factors()
                .iter()
                .filter(|&(_, &e)| e > 0)
                .map(|(&p, &e)| e as f64 * (p as f64).ln())
                .sum();
            let den: f64 = q
                .factors()
                .iter()
                .filter(|&(_, &e)| e < 0)
                .map(|(&p, &e)| -e as f64 * (p as f64).ln())
                .sum();
            (num - den).max(0.0) + den
        };

        let two = fr("2");
        assert!((weil_height(&two) - 2f64.ln()).abs() < 1e-15);
        assert!((weil_height(&two) - place_sum(&two)).abs() < 1e-12);

        assert_eq!(weil_height(&fr("-1")), 0.0);

        let q = fr("3/2");
        assert!((weil_height(&q) - 3f64.ln()).abs() < 1e-15);
        assert!((weil_height(&q) - place_sum(&q)).abs() < 1e-12);
    }

    #[test]
    fn axioms_hold_for_weil_on_sample() {
        let sample: Vec<FactoredRational> =
            ["1", "2", "1/2", "3/2", "2/3"].iter().map(|s| fr(s)).collect();
        let report = crate::norms::check_height_axioms(
            &sample,
            &FactoredRational::one(),
            FactoredRational::inverse,
            weil_height,
            1e-12,
        );
        assert!(report.is_clean());
    }

    #[test]
    fn display_round_trips() {
        for s in ["12", "-3/2", "1", "-1", "97/96"] {
            assert_eq!(fr(s).to_string(), *s);
        }
    }

    #[test]
    fn factorization_verifies() {
        let f = Factorization::new(vec![fr("2"), fr("2"), fr("3")], fr("12"));
        assert!(f.verify());
        let bad = Factorization::new(vec![fr("2")], fr("12"));
        assert!(!bad.verify());
    }

    proptest! {
        #[test]
        fn parse_reconstruct_round_trip(n in 1u64..1_000_000, d in 1u64..1_000_000, neg: bool) {
            let text = if neg { format!("-{n}/{d}") } else { format!("{n}/{d}") };
            let q = parse_rational(&text).unwrap();
            let g = num_integer_gcd(n, d);
            prop_assert_eq!(q.numerator(), BigUint::from(n / g));
            prop_assert_eq!(q.denominator(), BigUint::from(d / g));
            prop_assert_eq!(q.is_negative(), neg);
        }

        #[test]
        fn height_is_inversion_symmetric(n in 1u64..1_000_000, d in 1u64..1_000_000, neg: bool) {
            let text = if neg { format!("-{n}/{d}") } else { format!("{n}/{d}") };
            let q = parse_rational(&text).unwrap();
            prop_assert_eq!(weil_height(&q), weil_height(&q.inverse()));
        }

        #[test]
        fn height_scales_under_powers(n in 2u64..10_000, d in 1u64..10_000, k in -5i64..=5) {
            let q = parse_rational(&format!("{n}/{d}")).unwrap();
            let lhs = weil_height(&q.pow(k));
            let rhs = k.unsigned_abs() as f64 * weil_height(&q);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs));
        }
    }

    fn num_integer_gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let t = b;
            b = a % b;
            a = t;
        }
        a
    }
}
