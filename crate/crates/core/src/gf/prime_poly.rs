//! Dense polynomials over the prime field GF(p), ascending coefficients.

use crate::nt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePoly {
    p: u32,
    coeffs: Vec<u32>,
}

impl PrimePoly {
    pub fn new(p: u32, coeffs: impl Into<Vec<u32>>) -> Self {
        let mut poly = PrimePoly { p, coeffs: coeffs.into() };
        for c in &mut poly.coeffs {
            *c %= p;
        }
        poly.trim();
        poly
    }

    pub fn x(p: u32) -> Self {
        PrimePoly::new(p, vec![0, 1])
    }

    pub fn one(p: u32) -> Self {
        PrimePoly::new(p, vec![1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    fn mul_mod_p(&self, a: u32, b: u32) -> u32 {
        (a as u64 * b as u64 % self.p as u64) as u32
    }

    fn inv_mod_p(&self, a: u32) -> u32 {
        nt::pow_mod(a as u64, self.p as u64 - 2, self.p as u64) as u32
    }

    pub fn sub(&self, other: &PrimePoly) -> PrimePoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let out = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect::<Vec<_>>();
        PrimePoly::new(self.p, out)
    }

    pub fn mul(&self, other: &PrimePoly) -> PrimePoly {
        if self.is_zero() || other.is_zero() {
            return PrimePoly::new(self.p, vec![]);
        }
        let p = self.p as u64;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % p;
            }
        }
        PrimePoly::new(self.p, out.into_iter().map(|c| c as u32).collect::<Vec<_>>())
    }

    /// Remainder of division by a nonzero divisor.
    pub fn rem(&self, divisor: &PrimePoly) -> PrimePoly {
        let d = divisor.degree().expect("division by zero polynomial");
        let lead_inv = self.inv_mod_p(divisor.coeffs[d]);
        let mut r = self.coeffs.clone();
        while r.len() > d {
            let top = *r.last().unwrap();
            if top != 0 {
                let factor = self.mul_mod_p(top, lead_inv);
                let shift = r.len() - 1 - d;
                for (i, &c) in divisor.coeffs.iter().enumerate() {
                    let sub = self.mul_mod_p(factor, c);
                    r[shift + i] = (r[shift + i] + self.p - sub) % self.p;
                }
            }
            r.pop();
        }
        PrimePoly::new(self.p, r)
    }

    pub fn mul_mod(&self, other: &PrimePoly, modulus: &PrimePoly) -> PrimePoly {
        self.mul(other).rem(modulus)
    }

    pub fn pow_mod(&self, mut exp: u128, modulus: &PrimePoly) -> PrimePoly {
        let mut base = self.rem(modulus);
        let mut acc = PrimePoly::one(self.p).rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            base = base.mul_mod(&base, modulus);
            exp >>= 1;
        }
        acc
    }

    pub fn gcd(&self, other: &PrimePoly) -> PrimePoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> PrimePoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lead) => {
                let inv = self.inv_mod_p(lead);
                let c = self.coeffs.iter().map(|&c| self.mul_mod_p(c, inv)).collect::<Vec<_>>();
                PrimePoly::new(self.p, c)
            }
        }
    }

    /// x^(p^k) mod self, by k successive p-th powerings.
    fn frobenius_power_of_x(&self, k: usize) -> PrimePoly {
        let mut acc = PrimePoly::x(self.p).rem(self);
        for _ in 0..k {
            acc = acc.pow_mod(self.p as u128, self);
        }
        acc
    }

    /// Deterministic irreducibility test: x^(p^d) = x mod f, and
    /// gcd(x^(p^(d/l)) - x, f) = 1 for each prime l dividing d.
    pub fn is_irreducible(&self) -> bool {
        let d = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(d) => d,
        };
        let x = PrimePoly::x(self.p);
        if self.frobenius_power_of_x(d) != x.rem(self) {
            return false;
        }
        nt::prime_factors(d as u64).into_iter().all(|l| {
            let h = self.frobenius_power_of_x(d / l as usize).sub(&x);
            self.gcd(&h).degree() == Some(0)
        })
    }

    /// True if x has multiplicative order p^d - 1 modulo this (irreducible) polynomial.
    pub fn x_is_primitive(&self) -> bool {
        let d = match self.degree() {
            None | Some(0) => return false,
            Some(d) => d,
        };
        let order = (self.p as u128).pow(d as u32) - 1;
        let x = PrimePoly::x(self.p);
        let one = PrimePoly::one(self.p);
        if x.pow_mod(order, self) != one {
            return false;
        }
        nt::prime_factors(order as u64)
            .into_iter()
            .all(|l| x.pow_mod(order / l as u128, self) != one)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_examples() {
        // x^3 + 2x + 1 over GF(3)
        assert!(PrimePoly::new(3, vec![1, 2, 0, 1]).is_irreducible());
        // x^2 - 1 = (x - 1)(x + 1)
        assert!(!PrimePoly::new(3, vec![2, 0, 1]).is_irreducible());
        // x^6 + x^5 + 1 over GF(2)
        assert!(PrimePoly::new(2, vec![1, 0, 0, 0, 0, 1, 1]).is_irreducible());
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 over GF(2): passes no gcd test
        assert!(!PrimePoly::new(2, vec![1, 0, 1, 0, 1]).is_irreducible());
    }

    #[test]
    fn primitivity() {
        // x^4 + x^3 + x^2 + x + 1 is irreducible over GF(2) but x has order 5
        let f = PrimePoly::new(2, vec![1, 1, 1, 1, 1]);
        assert!(f.is_irreducible());
        assert!(!f.x_is_primitive());
        assert!(PrimePoly::new(2, vec![1, 1, 0, 0, 1]).x_is_primitive());
    }

    #[test]
    fn brute_force_irreducible_count() {
        // number of monic irreducible quartics over GF(3) is (3^4 - 3^2) / 4 = 18
        let count = (0..81u32)
            .filter(|&k| {
                let c = vec![k % 3, k / 3 % 3, k / 9 % 3, k / 27 % 3, 1];
                PrimePoly::new(3, c).is_irreducible()
            })
            .count();
        assert_eq!(count, 18);
    }
}
