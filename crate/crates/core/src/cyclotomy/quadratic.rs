use crate::error::{Error, Result};
use crate::nt;

fn check_l(l: u64) -> Result<()> {
    if l == 3 || l % 4 != 3 || !nt::is_prime(l) {
        return Err(Error::BadL(l));
    }
    Ok(())
}

/// Class number of Q(√-L) for a prime L ≡ 3 (mod 4), L ≠ 3, by counting reduced
/// primitive forms (a, b, c) with b² - 4ac = -L, |b| ≤ a ≤ c, and b ≥ 0
/// whenever |b| = a or a = c.
pub fn class_number_imag_quadratic(l: u64) -> Result<u64> {
    check_l(l)?;
    let mut count = 0;
    let mut a = 1u64;
    while 3 * a * a <= l {
        for b in -(a as i64)..=(a as i64) {
            let num = (b * b) as u64 + l;
            if !num.is_multiple_of(4 * a) {
                continue;
            }
            let c = num / (4 * a);
            if c < a || ((b.unsigned_abs() == a || a == c) && b < 0) {
                continue;
            }
            if nt::gcd(nt::gcd(a, b.unsigned_abs()), c) == 1 {
                count += 1;
            }
        }
        a += 1;
    }
    Ok(count)
}

/// The pair (a, b) with a² + L b² = 4p^h, b > 0, p ∤ b and
/// a ≡ -2 p^((L-1+2h)/4) (mod L), by exhaustive search over |a| ≤ 2 p^(h/2).
pub fn solve_index2_ab(l: u64, p: u64, h: u64) -> Result<(i64, i64)> {
    check_l(l)?;
    let target = nt::checked_pow(p, h as u32)
        .and_then(|x| x.checked_mul(4))
        .ok_or_else(|| Error::NoDiophantineSolution(format!("4*{p}^{h} overflows")))?;
    let exponent = (l - 1 + 2 * h) / 4;
    let residue = (l - 2 * nt::pow_mod(p, exponent, l) % l) % l;
    let bound = nt::isqrt(target) as i64;
    (-bound..=bound)
        .find_map(|a| {
            let rest = target - (a * a) as u64;
            if rest == 0 || !rest.is_multiple_of(l) || (a.rem_euclid(l as i64) as u64) != residue {
                return None;
            }
            let b = nt::exact_sqrt(rest / l)?;
            (b % p != 0).then_some((a, b as i64))
        })
        .ok_or_else(|| Error::NoDiophantineSolution(format!("a^2 + {l} b^2 = 4*{p}^{h}")))
}
