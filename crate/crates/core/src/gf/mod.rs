//! Exact arithmetic in the tower GF(p) ⊂ GF(q) ⊂ GF(r), q = p^s, r = q^m.
//!
//! Elements are stored as their coefficient vector over GF(p) packed in base p
//! (coefficient of γ^i is the i-th base-p digit). Multiplication goes through
//! discrete-log tables and addition through a Zech-logarithm table, so both are
//! O(1) lookups. The tables are built once and the tower is immutable afterwards.
//!
//! Polynomials cross the crate boundary as comma-separated GF(p) coefficients in
//! ascending degree, e.g. `x^3 + 2x + 1` over GF(3) is `"1,2,0,1"`.

mod poly;
mod prime_poly;

pub use poly::{min_poly, SubfieldPolynomial};
pub use prime_poly::PrimePoly;

use crate::error::{Error, Result};
use crate::nt;
use serde::{Deserialize, Serialize};

/// Default limit on the field order r (tables are O(r)).
pub const DEFAULT_TABLE_CAP: u64 = 1 << 21;

const NO_LOG: u32 = u32::MAX;

/// An element of GF(r), packed as base-p digits of its coefficient vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The packed base-p encoding.
    pub fn raw(self) -> u32 {
        self.0
    }
}

/// Target of a trace map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subfield {
    /// GF(q)
    Base,
    /// GF(p)
    Prime,
}

#[derive(Debug, Clone)]
pub struct FieldTower {
    p: u32,
    s: u32,
    m: u32,
    q: u64,
    r: u64,
    modulus: PrimePoly,
    /// exp[k] = γ^k, 0 <= k < r-1
    exp: Vec<u32>,
    /// log[x] = k with γ^k = x; NO_LOG at 0
    log: Vec<u32>,
    /// zech[k] = log(1 + γ^k), or NO_LOG when 1 + γ^k = 0
    zech: Vec<u32>,
    /// Tr_{r/q}(γ^k), packed
    trace_base: Vec<u32>,
    /// Tr_{r/p}(γ^k) in [0, p)
    trace_prime: Vec<u32>,
}

/// Parses `"1,2,0,1"` into ascending coefficients.
pub fn parse_coefficients(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u32>()
                .map_err(|_| Error::BadModulus(format!("cannot parse coefficient {tok:?}")))
        })
        .collect()
}

pub fn format_coefficients(coeffs: &[u32]) -> String {
    coeffs.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// The q-cyclotomic coset {a q^j mod (r-1)} in increasing order.
pub fn cyclotomic_coset(a: u64, q: u64, r: u64) -> Vec<u64> {
    let modulus = r - 1;
    let start = a % modulus;
    let mut coset = vec![start];
    let mut x = (start as u128 * q as u128 % modulus as u128) as u64;
    while x != start {
        coset.push(x);
        x = (x as u128 * q as u128 % modulus as u128) as u64;
    }
    coset.sort_unstable();
    coset
}

fn lex_candidates(p: u32, degree: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (p as u64).pow(degree as u32);
    // c0 is the most significant digit, so candidates come out ordered by
    // (c0, c1, ..., c_{d-1}) lexicographically.
    (0..total).map(move |mut idx| {
        let mut c = vec![0u32; degree + 1];
        for i in (0..degree).rev() {
            c[i] = (idx % p as u64) as u32;
            idx /= p as u64;
        }
        c[degree] = 1;
        c
    })
}

impl FieldTower {
    /// Builds the tower with the default table cap.
    pub fn build(p: u32, s: u32, m: u32, modulus: Option<&[u32]>) -> Result<FieldTower> {
        Self::build_with_cap(p, s, m, modulus, DEFAULT_TABLE_CAP)
    }

    pub fn build_with_cap(p: u32, s: u32, m: u32, modulus: Option<&[u32]>, cap: u64) -> Result<FieldTower> {
        if !nt::is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if s == 0 || m == 0 {
            return Err(Error::InvalidField("s and m must be at least 1".into()));
        }
        let degree = s.checked_mul(m).ok_or_else(|| Error::InvalidField("s*m overflows".into()))?;
        let order = (p as u128).checked_pow(degree).unwrap_or(u128::MAX);
        if order > cap as u128 {
            return Err(Error::TowerTooLarge { order, cap });
        }
        let r = order as u64;
        let q = (p as u64).pow(s);

        let modulus = match modulus {
            Some(coeffs) => {
                if coeffs.len() != degree as usize + 1 {
                    return Err(Error::BadModulus(format!(
                        "expected {} coefficients (degree {degree}), got {}",
                        degree + 1,
                        coeffs.len()
                    )));
                }
                if let Some(&c) = coeffs.iter().find(|&&c| c >= p) {
                    return Err(Error::BadModulus(format!("coefficient {c} is not in [0, {p})")));
                }
                if coeffs[degree as usize] != 1 {
                    return Err(Error::BadModulus("modulus must be monic".into()));
                }
                let poly = PrimePoly::new(p, coeffs.to_vec());
                if !poly.is_irreducible() {
                    return Err(Error::ModulusNotIrreducible(p));
                }
                if !poly.x_is_primitive() {
                    return Err(Error::GammaNotPrimitive);
                }
                poly
            }
            None => Self::default_modulus(p, degree as usize),
        };

        let mut tower = FieldTower {
            p,
            s,
            m,
            q,
            r,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            zech: Vec::new(),
            trace_base: Vec::new(),
            trace_prime: Vec::new(),
        };
        tower.build_tables()?;
        Ok(tower)
    }

    /// Smallest primitive polynomial in ascending-coefficient lexicographic order.
    /// Over a prime field the modulus is x - g for the least primitive root g.
    fn default_modulus(p: u32, degree: usize) -> PrimePoly {
        if degree == 1 {
            let g = (1..p)
                .find(|&g| nt::mult_order(g as u64, p as u64) == Some(p as u64 - 1))
                .expect("every prime field has a primitive root");
            return PrimePoly::new(p, vec![(p - g) % p, 1]);
        }
        lex_candidates(p, degree)
            .map(|c| PrimePoly::new(p, c))
            .find(|f| f.coeffs()[0] != 0 && f.is_irreducible() && f.x_is_primitive())
            .expect("primitive polynomials exist in every degree")
    }

    fn build_tables(&mut self) -> Result<()> {
        let d = self.degree() as usize;
        let n = (self.r - 1) as usize;
        let p = self.p;
        let modc = self.modulus.coeffs().to_vec();
        let mut exp = vec![0u32; n];
        let mut log = vec![NO_LOG; self.r as usize];
        let mut cur = vec![0u32; d];
        cur[0] = 1 % p;
        for (k, slot) in exp.iter_mut().enumerate() {
            let code = self.encode(&cur);
            if log[code as usize] != NO_LOG {
                return Err(Error::GammaNotPrimitive);
            }
            log[code as usize] = k as u32;
            *slot = code;
            // multiply by x and reduce by the monic modulus
            let top = cur[d - 1];
            for i in (1..d).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..d {
                    let sub = (top as u64 * modc[i] as u64 % p as u64) as u32;
                    cur[i] = (cur[i] + p - sub) % p;
                }
            }
        }
        let zech = exp
            .iter()
            .map(|&code| {
                let c0 = code % p;
                let shifted = code - c0 + (c0 + 1) % p;
                log[shifted as usize]
            })
            .collect();
        self.exp = exp;
        self.log = log;
        self.zech = zech;

        let q_log_step = self.q;
        let (trace_base, trace_prime): (Vec<u32>, Vec<u32>) = (0..n as u64)
            .map(|k| {
                let base = self.conjugate_sum(k, q_log_step, self.m);
                let prime = self.conjugate_sum(k, p as u64, self.degree());
                (self.elem_of_lz(base).0, self.elem_of_lz(prime).0)
            })
            .unzip();
        debug_assert!(trace_prime.iter().all(|&t| t < p));
        self.trace_base = trace_base;
        self.trace_prime = trace_prime;
        Ok(())
    }

    /// Σ_{i<count} γ^(k·step^i) in log-zero form.
    fn conjugate_sum(&self, k: u64, step: u64, count: u32) -> u32 {
        let ord = self.r - 1;
        let mut acc = 0u32;
        let mut exponent = k % ord;
        for _ in 0..count {
            acc = self.lz_add(acc, exponent as u32 + 1);
            exponent = (exponent as u128 * step as u128 % ord as u128) as u64;
        }
        acc
    }

    fn encode(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0u32, |acc, &c| acc * self.p + c)
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn s(&self) -> u32 {
        self.s
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn r(&self) -> u64 {
        self.r
    }
    /// Extension degree s·m of GF(r) over GF(p).
    pub fn degree(&self) -> u32 {
        self.s * self.m
    }

    /// The defining polynomial, ascending coefficients, monic.
    pub fn modulus(&self) -> &[u32] {
        self.modulus.coeffs()
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem(self.exp[0])
    }

    pub fn gamma(&self) -> Elem {
        self.gamma_pow(1)
    }

    pub fn gamma_pow(&self, k: u64) -> Elem {
        Elem(self.exp[(k % (self.r - 1)) as usize])
    }

    /// Discrete logarithm base γ; `None` for zero.
    pub fn dlog(&self, x: Elem) -> Option<u64> {
        match self.log[x.0 as usize] {
            NO_LOG => None,
            k => Some(k as u64),
        }
    }

    /// Element with the given GF(p) coefficients (ascending powers of γ).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() > self.degree() as usize {
            return Err(Error::BadModulus("too many coefficients for this tower".into()));
        }
        if coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::BadModulus("coefficient out of range".into()));
        }
        Ok(Elem(self.encode(coeffs)))
    }

    pub fn coeffs(&self, x: Elem) -> Vec<u32> {
        let mut v = x.0;
        (0..self.degree())
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    /// The prime-subfield element c mod p.
    pub fn from_int(&self, c: u64) -> Elem {
        Elem((c % self.p as u64) as u32)
    }

    /// Every element in packed order (zero first).
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.r as u32).map(Elem)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.elem_of_lz(self.lz_add(self.lz_of(a), self.lz_of(b)))
    }

    pub fn neg(&self, a: Elem) -> Elem {
        match self.dlog(a) {
            None => a,
            Some(k) if self.p == 2 => self.gamma_pow(k),
            Some(k) => self.gamma_pow(k + (self.r - 1) / 2),
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match (self.dlog(a), self.dlog(b)) {
            (Some(i), Some(j)) => self.gamma_pow(i + j),
            _ => Elem::ZERO,
        }
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        self.dlog(a).map(|k| self.gamma_pow(self.r - 1 - k))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        match self.dlog(a) {
            None if e == 0 => self.one(),
            None => Elem::ZERO,
            Some(k) => {
                let ord = self.r - 1;
                self.gamma_pow((k as u128 * e as u128 % ord as u128) as u64)
            }
        }
    }

    /// x ↦ x^p
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p as u64)
    }

    /// Tr_{r/q} or Tr_{r/p}. The result lies in the target subfield.
    pub fn trace(&self, x: Elem, target: Subfield) -> Elem {
        match (self.dlog(x), target) {
            (None, _) => Elem::ZERO,
            (Some(k), Subfield::Base) => Elem(self.trace_base[k as usize]),
            (Some(k), Subfield::Prime) => Elem(self.trace_prime[k as usize]),
        }
    }

    /// Tr_{r/p}(x) as an integer in [0, p).
    pub fn absolute_trace(&self, x: Elem) -> u32 {
        self.trace(x, Subfield::Prime).0
    }

    /// x^q == x
    pub fn in_base_field(&self, x: Elem) -> bool {
        self.pow(x, self.q) == x
    }

    /// ω = γ^((r-1)/(q-1)), a generator of GF(q)^*.
    pub fn base_field_generator(&self) -> Elem {
        self.gamma_pow((self.r - 1) / (self.q - 1))
    }

    /// Prints a GF(q) element: its integer value when q = p, else `w^k` in terms
    /// of [`FieldTower::base_field_generator`] (zero prints as `0`).
    pub fn format_base_elem(&self, x: Elem) -> String {
        if self.s == 1 {
            return x.0.to_string();
        }
        match self.dlog(x) {
            None => "0".to_string(),
            Some(k) => format!("w^{}", k / ((self.r - 1) / (self.q - 1))),
        }
    }

    // ---- log-zero encoding: 0 is zero, k + 1 is γ^k ----

    #[inline]
    pub(crate) fn lz_of(&self, x: Elem) -> u32 {
        match self.log[x.0 as usize] {
            NO_LOG => 0,
            k => k + 1,
        }
    }

    #[inline]
    pub(crate) fn elem_of_lz(&self, a: u32) -> Elem {
        if a == 0 {
            Elem::ZERO
        } else {
            Elem(self.exp[(a - 1) as usize])
        }
    }

    #[inline]
    pub(crate) fn lz_add(&self, a: u32, b: u32) -> u32 {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let ord = (self.r - 1) as u32;
        let (i, j) = (a - 1, b - 1);
        let diff = if j >= i { j - i } else { j + ord - i };
        match self.zech[diff as usize] {
            NO_LOG => 0,
            z => {
                let s = i + z;
                (if s >= ord { s - ord } else { s }) + 1
            }
        }
    }

    /// a · γ^k for k < r - 1.
    #[inline]
    pub(crate) fn lz_scale(&self, a: u32, k: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let ord = (self.r - 1) as u32;
        let s = a - 1 + k;
        (if s >= ord { s - ord } else { s }) + 1
    }

    #[inline]
    pub(crate) fn lz_trace_base_nonzero(&self, a: u32) -> bool {
        a != 0 && self.trace_base[(a - 1) as usize] != 0
    }
}
