//! The twisted polynomial ring `K[t;σ^e]`, where `t·a = σ^e(a)·t`.
//!
//! The usual ring has twist `e = 1`; `e = -1` gives `K[t;σ^{-1}]`, which is
//! needed to realize opposite algebras.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldTower};

/// A twisted polynomial, coefficient `i` belonging to `t^i`.
///
/// Always normalized: the highest stored coefficient is nonzero, and the zero
/// polynomial has no coefficients. Its degree is `None`, which orders below
/// every `Some(d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SkewPoly {
    coeffs: Vec<Elem>,
}

impl SkewPoly {
    pub fn new(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SkewPoly { coeffs }
    }

    pub fn zero() -> Self {
        SkewPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        SkewPoly { coeffs: vec![Elem::ONE] }
    }

    pub fn constant(c: Elem) -> Self {
        SkewPoly::new(vec![c])
    }

    /// `c·t^i`.
    pub fn monomial(c: Elem, i: usize) -> Self {
        let mut coeffs = vec![Elem::ZERO; i + 1];
        coeffs[i] = c;
        SkewPoly::new(coeffs)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Elem::ONE)
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn leading(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficients padded with zeros to length `len`.
    pub fn dense(&self, len: usize) -> Vec<Elem> {
        let mut v = self.coeffs.clone();
        v.resize(len.max(v.len()), Elem::ZERO);
        v
    }

    /// Canonical text with integer encodings, e.g. `2 + 1*t^2`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{i}"),
            })
            .collect();
        terms.join(" + ")
    }
}

#[derive(Clone, Debug)]
pub struct SkewRing {
    tower: Arc<FieldTower>,
    twist: i64,
}

impl PartialEq for SkewRing {
    fn eq(&self, other: &Self) -> bool {
        self.twist.rem_euclid(self.tower.n() as i64) == other.twist.rem_euclid(other.tower.n() as i64)
            && *self.tower == *other.tower
    }
}

impl SkewRing {
    /// `K[t;σ]`.
    pub fn new(tower: Arc<FieldTower>) -> Self {
        SkewRing { tower, twist: 1 }
    }

    /// `K[t;σ^twist]`.
    pub fn with_twist(tower: Arc<FieldTower>, twist: i64) -> Self {
        SkewRing { tower, twist }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn tower_arc(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    /// The ring automorphism `ρ = σ^twist` applied `i` times.
    pub fn rho(&self, a: Elem, i: i64) -> Elem {
        self.tower.frobenius(a, self.twist * i)
    }

    pub fn add(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        let len = f.coeffs.len().max(g.coeffs.len());
        SkewPoly::new((0..len).map(|i| self.tower.add(f.coeff(i), g.coeff(i))).collect())
    }

    pub fn neg(&self, f: &SkewPoly) -> SkewPoly {
        SkewPoly::new(f.coeffs.iter().map(|&c| self.tower.neg(c)).collect())
    }

    pub fn sub(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        self.add(f, &self.neg(g))
    }

    /// `c·f` (scalar on the left).
    pub fn scale_left(&self, c: Elem, f: &SkewPoly) -> SkewPoly {
        SkewPoly::new(f.coeffs.iter().map(|&a| self.tower.mul(c, a)).collect())
    }

    /// `Σ a_i t^i · Σ b_j t^j = Σ a_i ρ^i(b_j) t^{i+j}`.
    pub fn mul(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        if f.is_zero() || g.is_zero() {
            return SkewPoly::zero();
        }
        let t = &*self.tower;
        let mut out = vec![Elem::ZERO; f.coeffs.len() + g.coeffs.len() - 1];
        for (i, &a) in f.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in g.coeffs.iter().enumerate() {
                out[i + j] = t.add(out[i + j], t.mul(a, self.rho(b, i as i64)));
            }
        }
        SkewPoly::new(out)
    }

    /// Right division: `g = q·f + r` with `deg r < deg f`.
    pub fn right_divmod(&self, g: &SkewPoly, f: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        let df = f.degree().ok_or(Error::DivisionByZero)?;
        let t = &*self.tower;
        let lead = f.leading().expect("nonzero");
        let mut rem = g.coeffs.clone();
        let mut quot = vec![Elem::ZERO; rem.len().saturating_sub(df)];
        while rem.len() > df {
            let d = rem.len() - 1;
            let c = rem[d];
            if !c.is_zero() {
                // e·t^{d-df}·f has leading term e·ρ^{d-df}(lead)·t^d
                let shift = d - df;
                let e = t.div(c, self.rho(lead, shift as i64));
                quot[shift] = e;
                for (i, &a) in f.coeffs.iter().enumerate() {
                    let term = t.mul(e, self.rho(a, shift as i64));
                    rem[shift + i] = t.sub(rem[shift + i], term);
                }
            }
            rem.pop();
        }
        Ok((SkewPoly::new(quot), SkewPoly::new(rem)))
    }

    /// Left division: `g = f·q + r` with `deg r < deg f`.
    pub fn left_divmod(&self, g: &SkewPoly, f: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        let df = f.degree().ok_or(Error::DivisionByZero)?;
        let t = &*self.tower;
        let lead = f.leading().expect("nonzero");
        let mut rem = g.coeffs.clone();
        let mut quot = vec![Elem::ZERO; rem.len().saturating_sub(df)];
        while rem.len() > df {
            let d = rem.len() - 1;
            let c = rem[d];
            if !c.is_zero() {
                // f·e·t^{d-df} has leading term lead·ρ^{df}(e)·t^d
                let shift = d - df;
                let e = self.rho(t.div(c, lead), -(df as i64));
                quot[shift] = e;
                for (i, &a) in f.coeffs.iter().enumerate() {
                    let term = t.mul(a, self.rho(e, i as i64));
                    rem[shift + i] = t.sub(rem[shift + i], term);
                }
            }
            rem.pop();
        }
        Ok((SkewPoly::new(quot), SkewPoly::new(rem)))
    }

    pub fn rem_right(&self, g: &SkewPoly, f: &SkewPoly) -> Result<SkewPoly> {
        self.right_divmod(g, f).map(|(_, r)| r)
    }

    /// All monic polynomials of degree `d`, lower coefficients ranging over
    /// `K^d` in encoding order (constant term varies fastest).
    pub fn monic_of_degree(&self, d: usize) -> impl Iterator<Item = SkewPoly> + '_ {
        let size = self.tower.size() as u64;
        let total = size.pow(d as u32);
        (0..total).map(move |mut idx| {
            let mut coeffs = Vec::with_capacity(d + 1);
            for _ in 0..d {
                coeffs.push(Elem((idx % size) as u32));
                idx /= size;
            }
            coeffs.push(Elem::ONE);
            SkewPoly::new(coeffs)
        })
    }

    /// A monic right factor of `f` of degree `1..deg f`, if one exists.
    ///
    /// Every factorization `f = g·h` with proper degrees yields one after
    /// scaling `h` to be monic, so `None` means `f` is irreducible.
    pub fn find_right_factor(&self, f: &SkewPoly) -> Result<Option<SkewPoly>> {
        let m = f.degree().filter(|&d| d >= 1).ok_or(Error::DegreeTooSmall { min: 1, got: f.degree() })?;
        for d in 1..m {
            for h in self.monic_of_degree(d) {
                if self.rem_right(f, &h)?.is_zero() {
                    return Ok(Some(h));
                }
            }
        }
        Ok(None)
    }

    pub fn is_irreducible(&self, f: &SkewPoly) -> Result<bool> {
        Ok(self.find_right_factor(f)?.is_none())
    }

    /// Whether `Rf` is a two-sided ideal: `f·t` and `f·b` lie in `Rf` for
    /// every `b` in an `F_p`-basis of `K`.
    pub fn is_right_invariant(&self, f: &SkewPoly) -> bool {
        if f.is_zero() {
            return true;
        }
        let t_poly = SkewPoly::monomial(Elem::ONE, 1);
        let probes = std::iter::once(t_poly)
            .chain(self.tower.prime_basis().into_iter().map(SkewPoly::constant));
        probes.into_iter().all(|b| {
            self.rem_right(&self.mul(f, &b), f).expect("f nonzero").is_zero()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u32, r: u32, n: u32) -> SkewRing {
        SkewRing::new(Arc::new(FieldTower::new(p, r, n).unwrap()))
    }

    fn t_minus(ring: &SkewRing, a: Elem, m: usize) -> SkewPoly {
        let mut c = vec![Elem::ZERO; m + 1];
        c[0] = ring.tower().neg(a);
        c[m] = Elem::ONE;
        SkewPoly::new(c)
    }

    #[test]
    fn t_times_scalar_twists() {
        let r = ring(2, 1, 2);
        let t = SkewPoly::monomial(Elem::ONE, 1);
        let x = r.tower().generator();
        for a in r.tower().elements() {
            let lhs = r.mul(&t, &SkewPoly::constant(a));
            assert_eq!(lhs, SkewPoly::monomial(r.tower().frobenius(a, 1), 1));
        }
        let lhs = r.mul(&t, &SkewPoly::constant(x));
        assert_eq!(lhs, SkewPoly::monomial(r.tower().from_coeffs(&[1, 1]).unwrap(), 1));
    }

    #[test]
    fn unital() {
        let r = ring(3, 1, 2);
        let f = SkewPoly::new(vec![Elem(4), Elem(0), Elem(7)]);
        assert_eq!(r.mul(&f, &SkewPoly::one()), f);
        assert_eq!(r.mul(&SkewPoly::one(), &f), f);
    }

    #[test]
    fn division_examples() {
        let r = ring(2, 1, 2);
        let x = r.tower().generator();
        let f = t_minus(&r, x, 2);
        assert_eq!(r.right_divmod(&f, &f).unwrap(), (SkewPoly::one(), SkewPoly::zero()));
        assert_eq!(r.left_divmod(&f, &f).unwrap(), (SkewPoly::one(), SkewPoly::zero()));
        let t2 = SkewPoly::monomial(Elem::ONE, 2);
        assert_eq!(r.right_divmod(&t2, &f).unwrap(), (SkewPoly::one(), SkewPoly::constant(x)));
        let small = SkewPoly::new(vec![Elem(2), Elem(3)]);
        assert_eq!(r.right_divmod(&small, &f).unwrap(), (SkewPoly::zero(), small.clone()));
        assert_eq!(r.left_divmod(&small, &f).unwrap(), (SkewPoly::zero(), small));
        assert_eq!(r.right_divmod(&f, &SkewPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn irreducibility_examples() {
        let r = ring(2, 1, 2);
        let x = r.tower().generator();
        assert!(r.is_irreducible(&t_minus(&r, x, 2)).unwrap());
        assert!(!r.is_irreducible(&t_minus(&r, Elem::ONE, 2)).unwrap());
        let r9 = ring(3, 1, 2);
        for a in r9.tower().elements().filter(|&a| !r9.tower().in_base(a)) {
            assert!(r9.is_irreducible(&t_minus(&r9, a, 2)).unwrap());
        }
        assert!(matches!(r.is_irreducible(&SkewPoly::one()), Err(Error::DegreeTooSmall { .. })));
    }

    #[test]
    fn right_invariance_examples() {
        let r = ring(3, 1, 2);
        let tw = r.tower();
        let x = tw.generator();
        assert!(!r.is_right_invariant(&t_minus(&r, x, 2)));
        assert!(!r.is_right_invariant(&SkewPoly::new(vec![Elem::ONE, x, Elem::ONE])));
        // n = m: t^2 - a with a in F is central
        assert!(r.is_right_invariant(&t_minus(&r, tw.constant(2), 2)));
        assert!(!r.is_irreducible(&t_minus(&r, tw.constant(1), 2)).unwrap());
        // degree below n, coefficients in F
        let r3 = ring(2, 1, 3);
        assert!(!r3.is_right_invariant(&SkewPoly::new(vec![Elem::ONE, Elem::ONE, Elem::ONE])));
    }

    #[test]
    fn associativity_over_f4_degree_le_2() {
        let r = ring(2, 1, 2);
        let polys: Vec<SkewPoly> = (0..64u32)
            .map(|i| SkewPoly::new(vec![Elem(i % 4), Elem((i / 4) % 4), Elem(i / 16)]))
            .collect();
        for a in &polys {
            for b in &polys {
                let ab = r.mul(a, b);
                if !a.is_zero() && !b.is_zero() {
                    assert_eq!(ab.degree().unwrap(), a.degree().unwrap() + b.degree().unwrap());
                }
                for c in polys.iter().step_by(7) {
                    assert_eq!(r.mul(&ab, c), r.mul(a, &r.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn twisted_ring_inverse_twist() {
        let tower = Arc::new(FieldTower::new(2, 1, 3).unwrap());
        let r = SkewRing::with_twist(tower.clone(), -1);
        let t = SkewPoly::monomial(Elem::ONE, 1);
        let a = tower.generator();
        assert_eq!(r.mul(&t, &SkewPoly::constant(a)), SkewPoly::monomial(tower.frobenius(a, -1), 1));
    }

    #[test]
    fn text_form() {
        let f = SkewPoly::new(vec![Elem(2), Elem(0), Elem(1)]);
        assert_eq!(f.to_text(), "2 + 1*t^2");
        assert_eq!(SkewPoly::zero().to_text(), "0");
        assert_eq!(SkewPoly::zero().degree(), None);
        assert!(SkewPoly::zero().degree() < Some(0));
    }
}
