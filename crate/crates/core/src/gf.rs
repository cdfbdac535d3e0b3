//! Arithmetic in the tower `F_p ⊂ F = F_q ⊂ K = F_{q^n}`.
//!
//! `K` is realized as `F_p[x]/(modulus)` with the lexicographically least
//! monic irreducible modulus of degree `r·n`. Elements are stored as their
//! integer encoding: the coefficient vector read as a base-`p` integer with
//! the constant term as least significant digit. Multiplication goes through
//! discrete log tables built from the least primitive element; addition for
//! odd `p` goes through a Zech logarithm table.
//!
//! The subfield `F` is never materialized as its own field: it is the fixed
//! field of `σ: x ↦ x^q` inside `K`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on `|K|` accepted by [`FieldTower::new`].
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 24;

/// An element of `K`, identified by its integer encoding.
#[derive(
    Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn encoding(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serializable description of a tower: the triple plus the modulus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerSpec {
    pub p: u32,
    pub r: u32,
    pub n: u32,
    pub modulus: Vec<u32>,
}

#[derive(Clone)]
pub struct FieldTower {
    p: u32,
    r: u32,
    n: u32,
    degree: usize,
    q: u64,
    size: u32,
    modulus: Vec<u32>,
    pow_p: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    // zech[i] = log(1 + α^i), or NO_LOG when 1 + α^i = 0; odd p only
    zech: Vec<u32>,
    primitive: Elem,
    // q^j mod (|K| - 1) for j in 0..n
    frob_exp: Vec<u64>,
}

const NO_LOG: u32 = u32::MAX;

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTower")
            .field("p", &self.p)
            .field("r", &self.r)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.r == other.r && self.n == other.n && self.modulus == other.modulus
    }
}

impl Eq for FieldTower {}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FieldTower {
    /// Builds the canonical tower for `(p, r, n)` with the default size bound.
    pub fn new(p: u32, r: u32, n: u32) -> Result<Self> {
        Self::with_bound(p, r, n, DEFAULT_FIELD_BOUND)
    }

    pub fn with_bound(p: u32, r: u32, n: u32, bound: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > 65_521 {
            // keeps every product of two residues inside u32
            return Err(Error::InvalidParameters(format!("characteristic {p} too large")));
        }
        if r == 0 || n == 0 {
            return Err(Error::InvalidParameters(format!("r = {r} and n = {n} must be positive")));
        }
        let degree = (r as usize)
            .checked_mul(n as usize)
            .ok_or_else(|| Error::InvalidParameters("degree overflow".into()))?;
        let size = (p as u64).checked_pow(degree as u32).unwrap_or(u64::MAX);
        if size > bound || size > u32::MAX as u64 / 2 {
            return Err(Error::FieldTooLarge { size, bound });
        }
        let size = size as u32;
        let q = (p as u64).pow(r);
        let pow_p: Vec<u32> = (0..=degree).map(|i| p.pow(i as u32)).collect();
        let modulus = fp::least_irreducible(p, degree);
        let primitive = fp::least_primitive(p, &modulus, size);

        let order = size - 1;
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![NO_LOG; size as usize];
        // multiplication by the primitive element as an F_p-linear map
        let g = fp::decode(primitive, p, degree);
        let g_times_basis: Vec<Vec<u32>> = (0..degree)
            .map(|i| {
                let mut xi = vec![0u32; i + 1];
                xi[i] = 1;
                fp::mul_mod(&xi, &g, &modulus, p)
            })
            .collect();
        let gx_enc: Vec<u32> = g_times_basis.iter().map(|v| fp::encode(v, p)).collect();
        let mut cur = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = cur;
            log[cur as usize] = i as u32;
            cur = if p == 2 {
                let mut acc = 0u32;
                let mut bits = cur;
                let mut idx = 0;
                while bits != 0 {
                    if bits & 1 == 1 {
                        acc ^= gx_enc[idx];
                    }
                    bits >>= 1;
                    idx += 1;
                }
                acc
            } else {
                let digits = fp::decode(cur, p, degree);
                let mut acc = vec![0u32; degree];
                for (c, row) in digits.iter().zip(&g_times_basis) {
                    if *c == 0 {
                        continue;
                    }
                    for (a, b) in acc.iter_mut().zip(row) {
                        *a = (*a + c * b) % p;
                    }
                }
                fp::encode(&acc, p)
            };
        }
        debug_assert_eq!(cur, 1, "primitive element has wrong order");

        let zech = if p == 2 {
            Vec::new()
        } else {
            let mut z = vec![NO_LOG; order as usize];
            for (i, slot) in z.iter_mut().enumerate() {
                let v = exp[i];
                // 1 + v: only the constant digit changes
                let c0 = v % p;
                let w = v - c0 + (c0 + 1) % p;
                *slot = if w == 0 { NO_LOG } else { log[w as usize] };
            }
            z
        };

        let frob_exp = (0..n as u64)
            .map(|j| {
                let mut e = 1u64;
                for _ in 0..j {
                    e = e * (q % order.max(1) as u64) % order.max(1) as u64;
                }
                e
            })
            .collect();

        Ok(FieldTower {
            p,
            r,
            n,
            degree,
            q,
            size,
            modulus,
            pow_p,
            exp,
            log,
            zech,
            primitive: Elem(primitive),
            frob_exp,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    /// `q = p^r = |F|`.
    pub fn q(&self) -> u64 {
        self.q
    }
    /// `|K| = q^n`.
    pub fn size(&self) -> u32 {
        self.size
    }
    /// Degree of `K` over the prime field, `r·n`.
    pub fn degree(&self) -> usize {
        self.degree
    }
    /// `s = (q^n - 1)/(q - 1)`, the order of the norm kernel.
    pub fn s(&self) -> u64 {
        (self.size as u64 - 1) / (self.q - 1)
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn spec(&self) -> TowerSpec {
        TowerSpec { p: self.p, r: self.r, n: self.n, modulus: self.modulus.clone() }
    }

    /// All elements of `K` in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.size).map(Elem)
    }

    /// Nonzero elements in encoding order.
    pub fn units(&self) -> impl Iterator<Item = Elem> {
        (1..self.size).map(Elem)
    }

    /// The element `x`, the class of the generator of the modulus.
    pub fn generator(&self) -> Elem {
        if self.degree == 1 {
            // K = F_p[x]/(x - c): x is the constant c
            Elem((self.p - self.modulus[0]) % self.p)
        } else {
            Elem(self.p)
        }
    }

    /// The prime-field constant `c mod p`.
    pub fn constant(&self, c: i64) -> Elem {
        Elem(c.rem_euclid(self.p as i64) as u32)
    }

    /// `F_p`-basis `1, x, x^2, …` of `K`, as encodings `p^i`.
    pub fn prime_basis(&self) -> Vec<Elem> {
        self.pow_p[..self.degree].iter().map(|&e| Elem(e)).collect()
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        fp::decode(a.0, self.p, self.degree)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() > self.degree || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Parse(format!("{coeffs:?} is not a coefficient vector of K")));
        }
        Ok(Elem(fp::encode(coeffs, self.p)))
    }

    pub fn from_encoding(&self, e: u64) -> Result<Elem> {
        if e >= self.size as u64 {
            return Err(Error::Parse(format!("encoding {e} out of range for a field of order {}", self.size)));
        }
        Ok(Elem(e as u32))
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let order = self.size - 1;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let d = if lb >= la { lb - la } else { lb + order - la };
        let z = self.zech[d as usize];
        if z == NO_LOG {
            return Elem::ZERO;
        }
        Elem(self.exp[((la as u64 + z as u64) % order as u64) as usize])
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        let order = self.size - 1;
        let l = self.log[a.0 as usize] as u64 + (order / 2) as u64;
        Elem(self.exp[(l % order as u64) as usize])
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let order = (self.size - 1) as u64;
        let l = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        Elem(self.exp[(l % order) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        let order = self.size - 1;
        let l = self.log[a.0 as usize];
        Some(Elem(self.exp[((order - l) % order) as usize]))
    }

    /// `a / b`. Panics if `b` is zero.
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b).expect("division by zero in K"))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let order = (self.size - 1) as u64;
        let l = (self.log[a.0 as usize] as u64 * (e % order)) % order;
        Elem(self.exp[l as usize])
    }

    /// Discrete log to the base of the primitive element; `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    /// `α^e` for the primitive element `α`.
    pub fn exp(&self, e: u64) -> Elem {
        Elem(self.exp[(e % (self.size as u64 - 1)) as usize])
    }

    /// `σ^j(a) = a^{q^j}`; `j` is reduced mod `n`.
    pub fn frobenius(&self, a: Elem, j: i64) -> Elem {
        if a.0 == 0 {
            return a;
        }
        let j = j.rem_euclid(self.n as i64) as usize;
        if j == 0 {
            return a;
        }
        let order = (self.size - 1) as u64;
        let l = (self.log[a.0 as usize] as u64 * self.frob_exp[j]) % order;
        Elem(self.exp[l as usize])
    }

    /// `N_{K/F}(a) = ∏_{j<n} σ^j(a)`.
    pub fn norm(&self, a: Elem) -> Elem {
        (0..self.n as i64).fold(Elem::ONE, |acc, j| self.mul(acc, self.frobenius(a, j)))
    }

    /// Whether `a` lies in `F = Fix(σ)`.
    pub fn in_base(&self, a: Elem) -> bool {
        self.frobenius(a, 1) == a
    }

    /// `F = Fix(σ)` in encoding order, zero included.
    pub fn base_elements(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.in_base(a)).collect()
    }

    /// `F^×` in encoding order.
    pub fn base_units(&self) -> Vec<Elem> {
        self.units().filter(|&a| self.in_base(a)).collect()
    }

    /// `ker(N_{K/F})` in encoding order; it has exactly `s` elements.
    pub fn norm_kernel(&self) -> Vec<Elem> {
        self.units().filter(|&a| self.norm(a) == Elem::ONE).collect()
    }

    /// The least generator of `K^×` under the encoding order.
    pub fn primitive_element(&self) -> Elem {
        self.primitive
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: Elem) -> Option<u64> {
        let l = self.log(a)? as u64;
        let order = self.size as u64 - 1;
        Some(order / gcd(l, order))
    }

    /// Whether a nonzero `a ∈ F^×` is an `e`-th power in `F^×`.
    pub fn is_base_power(&self, a: Elem, e: u64) -> bool {
        if a.0 == 0 {
            return false;
        }
        let qm1 = self.q - 1;
        let g = gcd(e, qm1);
        self.pow(a, qm1 / g) == Elem::ONE
    }

    /// Human-readable polynomial form in the generator `x`, e.g. `2x+1`.
    pub fn format_symbolic(&self, a: Elem) -> String {
        if a.0 == 0 {
            return "0".into();
        }
        let digits = self.coeffs(a);
        let mut parts = Vec::new();
        for (i, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            parts.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        parts.join("+")
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Dense polynomial arithmetic over `F_p`, used only while building a tower.
pub(crate) mod fp {
    pub fn decode(mut e: u32, p: u32, len: usize) -> Vec<u32> {
        let mut out = vec![0u32; len];
        for slot in out.iter_mut() {
            *slot = e % p;
            e /= p;
        }
        out
    }

    pub fn encode(digits: &[u32], p: u32) -> u32 {
        digits.iter().rev().fold(0u32, |acc, &d| acc * p + d)
    }

    fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    /// Remainder of `a` modulo a nonzero `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut m = m.to_vec();
        trim(&mut a);
        trim(&mut m);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while a.len() > dm {
            let da = a.len() - 1;
            let c = a[da] * lead_inv % p;
            if c != 0 {
                for (i, &mi) in m.iter().enumerate() {
                    let idx = da - dm + i;
                    a[idx] = (a[idx] + p - c * mi % p) % p;
                }
            }
            a.pop();
            trim(&mut a);
        }
        a
    }

    /// `a·b mod m`, padded to `deg m` digits.
    pub fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut prod = vec![0u32; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let mut r = rem(&prod, m, p);
        r.resize(m.len() - 1, 0);
        r
    }

    fn pow_mod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let d = m.len() - 1;
        let mut result = vec![0u32; d.max(1)];
        result[0] = 1;
        result = rem(&result, m, p);
        result.resize(d, 0);
        let mut b = rem(base, m, p);
        b.resize(d, 0);
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(&result, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            e >>= 1;
        }
        result
    }

    fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Ben-Or: a monic `f` of degree `d` is irreducible iff
    /// `gcd(x^{p^i} - x, f) = 1` for `1 <= i <= d/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let d = f.len() - 1;
        if d == 1 {
            return true;
        }
        if f[0] == 0 {
            return false;
        }
        let x = vec![0, 1];
        let mut h = rem(&x, f, p);
        for _ in 0..d / 2 {
            h = pow_mod(&h, p as u64, f, p);
            let mut diff = h.clone();
            diff.resize(d.max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            let g = gcd(f, &diff, p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }

    /// Least monic irreducible polynomial of degree `d`, comparing the
    /// coefficient vectors lexicographically from the constant term upward.
    pub fn least_irreducible(p: u32, d: usize) -> Vec<u32> {
        let total = (p as u64).pow(d as u32);
        for idx in 0..total {
            // most significant digit of idx is the constant term
            let mut f = vec![0u32; d + 1];
            let mut rest = idx;
            for i in (0..d).rev() {
                f[i] = (rest % p as u64) as u32;
                rest /= p as u64;
            }
            f[d] = 1;
            if is_irreducible(&f, p) {
                return f;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// Least encoding generating `(F_p[x]/(m))^×`.
    pub fn least_primitive(p: u32, m: &[u32], size: u32) -> u32 {
        let order = size as u64 - 1;
        if order == 1 {
            return 1;
        }
        let d = m.len() - 1;
        let factors = super::prime_factors(order);
        let one = {
            let mut v = vec![0u32; d];
            v[0] = 1;
            v
        };
        for cand in 1..size {
            let g = decode(cand, p, d);
            if factors.iter().all(|&l| pow_mod(&g, order / l, m, p) != one) {
                return cand;
            }
        }
        unreachable!("finite fields have cyclic unit groups")
    }
}
