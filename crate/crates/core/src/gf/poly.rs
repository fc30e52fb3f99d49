use super::{Elem, FieldTower};
use crate::error::{Error, Result};
use std::fmt::Write as _;

/// Polynomial with coefficients in GF(r), ascending degree. The polynomials the
/// crate produces (minimal polynomials, h(x), g(x)) have every coefficient in GF(q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubfieldPolynomial {
    coeffs: Vec<Elem>,
}

impl SubfieldPolynomial {
    pub fn new(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SubfieldPolynomial { coeffs }
    }

    pub fn one(tower: &FieldTower) -> Self {
        SubfieldPolynomial::new(vec![tower.one()])
    }

    /// x^n - 1
    pub fn x_pow_minus_one(tower: &FieldTower, n: usize) -> Self {
        let mut c = vec![Elem::ZERO; n + 1];
        c[0] = tower.neg(tower.one());
        c[n] = tower.one();
        SubfieldPolynomial::new(c)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &Self, tower: &FieldTower) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return SubfieldPolynomial::new(vec![]);
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = tower.add(out[i + j], tower.mul(a, b));
            }
        }
        SubfieldPolynomial::new(out)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, divisor: &Self, tower: &FieldTower) -> (Self, Self) {
        let d = divisor.degree().expect("division by zero polynomial");
        let lead_inv = tower.inv(divisor.coeffs[d]).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let qlen = rem.len().saturating_sub(d);
        let mut quot = vec![Elem::ZERO; qlen];
        for k in (0..qlen).rev() {
            let factor = tower.mul(rem[k + d], lead_inv);
            quot[k] = factor;
            if factor.is_zero() {
                continue;
            }
            for (i, &c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = tower.sub(rem[k + i], tower.mul(factor, c));
            }
        }
        rem.truncate(d);
        (SubfieldPolynomial::new(quot), SubfieldPolynomial::new(rem))
    }

    /// Exact division, or `DivisionNotExact`.
    pub fn div_exact(&self, divisor: &Self, tower: &FieldTower) -> Result<Self> {
        let (q, r) = self.div_rem(divisor, tower);
        if r.coeffs.is_empty() {
            Ok(q)
        } else {
            Err(Error::DivisionNotExact)
        }
    }

    pub fn eval(&self, x: Elem, tower: &FieldTower) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| tower.add(tower.mul(acc, x), c))
    }

    pub fn is_over_base_field(&self, tower: &FieldTower) -> bool {
        self.coeffs.iter().all(|&c| tower.in_base_field(c))
    }

    /// Coefficients as integers in [0, p) when every coefficient lies in GF(p).
    pub fn prime_coefficients(&self, tower: &FieldTower) -> Option<Vec<u32>> {
        self.coeffs
            .iter()
            .map(|&c| (c.raw() < tower.p()).then_some(c.raw()))
            .collect()
    }

    /// Comma-separated ascending coefficients, using [`FieldTower::format_base_elem`].
    pub fn to_coefficient_string(&self, tower: &FieldTower) -> String {
        self.coeffs
            .iter()
            .map(|&c| tower.format_base_elem(c))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Conventional rendering, highest degree first, e.g. `x^6 + 2x^4 + 2x^2 + 2`.
    pub fn display(&self, tower: &FieldTower) -> String {
        let mut out = String::new();
        for (deg, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let coef = tower.format_base_elem(c);
            let is_one = c == tower.one();
            match deg {
                0 => out.push_str(&coef),
                _ => {
                    if !is_one {
                        let _ = write!(out, "{coef}");
                        if tower.s() > 1 {
                            out.push('*');
                        }
                    }
                    out.push('x');
                    if deg > 1 {
                        let _ = write!(out, "^{deg}");
                    }
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Minimal polynomial of a nonzero `beta` over GF(q): the product of
/// (X - beta^(q^j)) over its distinct q-power conjugates.
pub fn min_poly(tower: &FieldTower, beta: Elem) -> SubfieldPolynomial {
    let mut conjugates = vec![beta];
    let mut c = tower.pow(beta, tower.q());
    while c != beta {
        conjugates.push(c);
        c = tower.pow(c, tower.q());
    }
    let poly = conjugates.iter().fold(SubfieldPolynomial::one(tower), |acc, &root| {
        acc.mul(&SubfieldPolynomial::new(vec![tower.neg(root), tower.one()]), tower)
    });
    debug_assert!(poly.is_over_base_field(tower));
    poly
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::cyclotomic_coset;

    fn tower27() -> FieldTower {
        FieldTower::build(3, 1, 3, Some(&[1, 2, 0, 1])).unwrap()
    }

    #[test]
    fn minimal_polynomials_of_small_tower() {
        let t = tower27();
        let h1 = min_poly(&t, t.gamma_pow(26 - 1));
        assert_eq!(h1.prime_coefficients(&t).unwrap(), vec![1, 0, 2, 1]);
        assert_eq!(h1.display(&t), "x^3 + 2x^2 + 1");
        let h2 = min_poly(&t, t.gamma_pow(26 - 14));
        assert_eq!(h2.prime_coefficients(&t).unwrap(), vec![2, 0, 1, 1]);
        assert_eq!(min_poly(&t, t.one()).prime_coefficients(&t).unwrap(), vec![2, 1]);
    }

    #[test]
    fn min_poly_vanishes_and_is_conjugation_invariant() {
        let t = FieldTower::build(2, 2, 3, None).unwrap();
        for k in 0..t.r() - 1 {
            let beta = t.gamma_pow(k);
            let f = min_poly(&t, beta);
            assert!(f.eval(beta, &t).is_zero());
            assert!(f.is_over_base_field(&t));
            assert_eq!(f, min_poly(&t, t.pow(beta, t.q())));
            assert_eq!(f.degree().unwrap(), cyclotomic_coset(k, t.q(), t.r()).len());
        }
    }

    #[test]
    fn division() {
        let t = tower27();
        let x26 = SubfieldPolynomial::x_pow_minus_one(&t, 26);
        let h = min_poly(&t, t.gamma_pow(25));
        let g = x26.div_exact(&h, &t).unwrap();
        assert_eq!(g.mul(&h, &t), x26);
        let x5 = SubfieldPolynomial::x_pow_minus_one(&t, 5);
        assert_eq!(x5.div_exact(&h, &t).unwrap_err(), Error::DivisionNotExact);
    }
}
