//! 64-bit integer factorization: trial division for small factors, then
//! Pollard rho (Brent variant) with deterministic Miller–Rabin primality.

use crate::{Error, Result};

const TRIAL_LIMIT: u64 = 1_000_000;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Deterministic Miller–Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    // This base set decides primality for every n < 3.3e24, so for all u64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Finds one nontrivial factor of composite odd `n` via Brent's cycle variant.
fn pollard_rho(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime(n) && n % 2 == 1);
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let mut count = 0u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
            count += 1;
            if count > 1 << 22 {
                break;
            }
        }
        if d != n && d != 1 {
            return d;
        }
        c += 1;
    }
}

fn factor_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

/// The multiset of primes whose product is `n`, sorted ascending.
/// `n = 1` yields the empty multiset; `n = 0` is an error.
pub fn factor_integer(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::ZeroElement);
    }
    let mut rest = n;
    let mut primes = Vec::new();
    while rest % 2 == 0 {
        primes.push(2);
        rest /= 2;
    }
    let mut p = 3u64;
    while p <= TRIAL_LIMIT && p * p <= rest {
        while rest % p == 0 {
            primes.push(p);
            rest /= p;
        }
        p += 2;
    }
    if rest > 1 {
        if rest <= TRIAL_LIMIT * TRIAL_LIMIT {
            // Trial division already removed every prime <= 10^6.
            primes.push(rest);
        } else {
            factor_into(rest, &mut primes);
        }
    }
    primes.sort_unstable();
    debug_assert_eq!(primes.iter().product::<u64>(), n);
    Ok(primes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        assert_eq!(factor_integer(12).unwrap(), vec![2, 2, 3]);
        assert_eq!(factor_integer(1).unwrap(), Vec::<u64>::new());
        assert_eq!(factor_integer(97).unwrap(), vec![97]);
        assert!(factor_integer(0).is_err());
    }

    #[test]
    fn primality_edge_cases() {
        assert!(!is_prime(0));
        assert!(!is_prime(1));
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(!is_prime(3215031751)); // strong pseudoprime to bases 2,3,5,7
        assert!(is_prime(18446744073709551557)); // largest u64 prime
    }

    #[test]
    fn factors_large_semiprime() {
        let n = 1_000_003u64 * 1_000_033;
        let fs = factor_integer(n).unwrap();
        assert_eq!(fs, vec![1_000_003, 1_000_033]);
    }

    #[test]
    fn factors_large_prime_power() {
        let p = 2_147_483_647u64; // 2^31 - 1
        let fs = factor_integer(p * p).unwrap();
        assert_eq!(fs, vec![p, p]);
    }

    #[test]
    fn product_round_trip_exhaustive_to_hundred_thousand() {
        // The 10^6 exhaustive sweep lives in the acceptance-adjacent
        // integration tests; this keeps the unit suite fast.
        for n in 1..=100_000u64 {
            let fs = factor_integer(n).unwrap();
            assert_eq!(fs.iter().product::<u64>(), n, "n={n}");
            assert!(fs.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}
