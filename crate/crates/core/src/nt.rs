//! Small integer number theory used throughout the crate.

use num_bigint::BigUint;
use num_traits::One;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// `base^exp`, or `None` on overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Exact integer square root if `n` is a perfect square.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let s = isqrt(n);
    (s * s == n).then_some(s)
}

/// Exact integer `k`-th root if `n` is a perfect `k`-th power.
pub fn exact_root(n: u64, k: u32) -> Option<u64> {
    if k == 0 {
        return None;
    }
    let guess = (n as f64).powf(1.0 / k as f64).round() as u64;
    (guess.saturating_sub(1)..=guess + 1).find(|&c| checked_pow(c, k) == Some(n))
}

/// Legendre symbol (a | p) for an odd prime p.
pub fn legendre(a: i64, p: u64) -> i8 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Multiplicative order of `a` modulo `n` (requires gcd(a, n) = 1).
pub fn mult_order(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    if gcd(a, n) != 1 {
        return None;
    }
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * a as u128) % n as u128) as u64;
        k += 1;
    }
    Some(k)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Largest `k` with `p^k | n`; `n` must be a power of `p` for the result to be its exponent.
pub fn prime_power_exponent(n: u64, p: u64) -> Option<u32> {
    let mut k = 0;
    let mut x = n;
    while x > 1 {
        if !x.is_multiple_of(p) {
            return None;
        }
        x /= p;
        k += 1;
    }
    Some(k)
}
