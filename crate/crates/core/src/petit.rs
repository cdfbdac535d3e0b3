//! Petit algebras `S_f = R_m` with `g∘h = gh mod_r f`, and the left
//! version `_fS` with `g∘h = gh mod_l f`.

use std::sync::Arc;

use crate::algebra::{nuclei, structured_search, Element, FiniteAlgebra, Nuclei};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldTower};
use crate::linalg::Matrix;
use crate::skewpoly::{SkewPoly, SkewRing};

/// Multiplication of `R_m` reduced by right or left division by `f`.
struct Quotient {
    ring: SkewRing,
    m: usize,
    left: bool,
    // t^k mod f for k = m..=2m-2, dense
    reductions: Vec<Vec<Elem>>,
}

impl Quotient {
    fn new(ring: SkewRing, f: &SkewPoly, left: bool) -> Result<Self> {
        let m = check_f(&ring, f)?;
        let reductions = (m..=2 * m - 2)
            .map(|k| {
                let tk = SkewPoly::monomial(Elem::ONE, k);
                let r = if left { ring.left_divmod(&tk, f)?.1 } else { ring.rem_right(&tk, f)? };
                Ok(r.dense(m))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Quotient { ring, m, left, reductions })
    }
}

impl FiniteAlgebra for Quotient {
    fn tower(&self) -> &FieldTower {
        self.ring.tower()
    }

    fn width(&self) -> usize {
        self.m
    }

    fn mul(&self, a: &[Elem], b: &[Elem]) -> Element {
        let t = self.ring.tower();
        let m = self.m;
        let mut prod = vec![Elem::ZERO; 2 * m - 1];
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] = t.add(prod[i + j], t.mul(x, self.ring.rho(y, i as i64)));
                }
            }
        }
        let mut out = prod[..m].to_vec();
        for (idx, &c) in prod[m..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let red = &self.reductions[idx];
            if self.left {
                // c·t^k = t^k·ρ^{-k}(c), and r_k·e = Σ r_{k,j} ρ^j(e) t^j
                let e = self.ring.rho(c, -((m + idx) as i64));
                for (j, (o, &r)) in out.iter_mut().zip(red).enumerate() {
                    *o = t.add(*o, t.mul(r, self.ring.rho(e, j as i64)));
                }
            } else {
                for (o, &r) in out.iter_mut().zip(red) {
                    *o = t.add(*o, t.mul(c, r));
                }
            }
        }
        out
    }
}

fn check_f(ring: &SkewRing, f: &SkewPoly) -> Result<usize> {
    let m = f.degree().filter(|&d| d >= 2).ok_or(Error::DegreeTooSmall { min: 2, got: f.degree() })?;
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if ring.twist().rem_euclid(ring.tower().n() as i64) == 0 {
        return Err(Error::Hypothesis("the twisting automorphism is the identity".into()));
    }
    Ok(m)
}

pub struct PetitAlgebra {
    core: Quotient,
    f: SkewPoly,
    irreducible: bool,
    right_invariant: bool,
    nuclei: Nuclei,
}

impl PetitAlgebra {
    pub fn new(ring: SkewRing, f: SkewPoly) -> Result<Self> {
        let core = Quotient::new(ring, &f, false)?;
        let irreducible = core.ring.is_irreducible(&f)?;
        let right_invariant = core.ring.is_right_invariant(&f);
        let nuclei = nuclei(&core);
        Ok(PetitAlgebra { core, f, irreducible, right_invariant, nuclei })
    }

    /// `S_f` over `K[t;σ]`.
    pub fn from_tower(tower: Arc<FieldTower>, f: SkewPoly) -> Result<Self> {
        Self::new(SkewRing::new(tower), f)
    }

    /// `S_f` for `f = t^m - a`.
    pub fn cyclic(tower: Arc<FieldTower>, m: usize, a: Elem) -> Result<Self> {
        let f = t_m_minus(&tower, m, a);
        Self::from_tower(tower, f)
    }

    pub fn ring(&self) -> &SkewRing {
        &self.core.ring
    }

    pub fn tower_arc(&self) -> &Arc<FieldTower> {
        self.core.ring.tower_arc()
    }

    pub fn f(&self) -> &SkewPoly {
        &self.f
    }

    pub fn m(&self) -> usize {
        self.core.m
    }

    /// `a_i` in `f = t^m - Σ a_i t^i`.
    pub fn a(&self, i: usize) -> Elem {
        self.tower().neg(self.f.coeff(i))
    }

    pub fn is_irreducible(&self) -> bool {
        self.irreducible
    }

    pub fn is_right_invariant(&self) -> bool {
        self.right_invariant
    }

    /// Irreducible and not right invariant, i.e. a proper semifield.
    pub fn is_proper_semifield(&self) -> bool {
        self.irreducible && !self.right_invariant
    }

    pub fn nuclei(&self) -> &Nuclei {
        &self.nuclei
    }

    /// `gh mod_r f` via the generic ring operations; the oracle for `mul`.
    pub fn mul_by_division(&self, a: &[Elem], b: &[Elem]) -> Element {
        let ring = self.ring();
        let prod = ring.mul(&SkewPoly::new(a.to_vec()), &SkewPoly::new(b.to_vec()));
        ring.rem_right(&prod, &self.f).expect("f nonzero").dense(self.m())
    }
}

pub fn t_m_minus(tower: &FieldTower, m: usize, a: Elem) -> SkewPoly {
    let mut c = vec![Elem::ZERO; m + 1];
    c[0] = tower.neg(a);
    c[m] = Elem::ONE;
    SkewPoly::new(c)
}

impl FiniteAlgebra for PetitAlgebra {
    fn tower(&self) -> &FieldTower {
        self.core.tower()
    }

    fn width(&self) -> usize {
        self.core.m
    }

    fn mul(&self, a: &[Elem], b: &[Elem]) -> Element {
        self.core.mul(a, b)
    }
}

/// `_fS`: polynomials of degree `< m` with `g∘h = gh mod_l f`.
pub struct LeftPetitAlgebra {
    core: Quotient,
    f: SkewPoly,
}

impl LeftPetitAlgebra {
    pub fn new(ring: SkewRing, f: SkewPoly) -> Result<Self> {
        Ok(LeftPetitAlgebra { core: Quotient::new(ring, &f, true)?, f })
    }

    pub fn ring(&self) -> &SkewRing {
        &self.core.ring
    }

    pub fn f(&self) -> &SkewPoly {
        &self.f
    }

    pub fn m(&self) -> usize {
        self.core.m
    }

    pub fn mul_by_division(&self, a: &[Elem], b: &[Elem]) -> Element {
        let ring = self.ring();
        let prod = ring.mul(&SkewPoly::new(a.to_vec()), &SkewPoly::new(b.to_vec()));
        ring.left_divmod(&prod, &self.f).expect("f nonzero").1.dense(self.m())
    }
}

impl FiniteAlgebra for LeftPetitAlgebra {
    fn tower(&self) -> &FieldTower {
        self.core.tower()
    }

    fn width(&self) -> usize {
        self.core.m
    }

    fn mul(&self, a: &[Elem], b: &[Elem]) -> Element {
        self.core.mul(a, b)
    }
}

/// `_fS` together with the Petit algebra `S_g` over `K[t;ρ^{-1}]` whose
/// opposite it is, via `ψ(Σ x_i t^i) = Σ ρ^{-i}(x_i) t^i`.
pub struct OppositeBridge {
    pub left: LeftPetitAlgebra,
    pub partner: PetitAlgebra,
    /// `ψ: _fS → S_g`, with `ψ(a∘b) = ψ(b)∘ψ(a)`.
    pub psi: Matrix,
}

impl OppositeBridge {
    pub fn new(ring: SkewRing, f: SkewPoly) -> Result<Self> {
        let tower = ring.tower_arc().clone();
        let twist = ring.twist();
        let g = SkewPoly::new(
            f.coeffs().iter().enumerate().map(|(i, &c)| ring.rho(c, -(i as i64))).collect(),
        );
        let partner = PetitAlgebra::new(SkewRing::with_twist(tower, -twist), g)?;
        let left = LeftPetitAlgebra::new(ring, f)?;
        let images: Vec<Element> = left
            .fp_basis()
            .iter()
            .map(|x| x.iter().enumerate().map(|(i, &c)| left.ring().rho(c, -(i as i64))).collect())
            .collect();
        let psi = crate::algebra::matrix_of(&partner, &images);
        Ok(OppositeBridge { left, partner, psi })
    }

    pub fn g(&self) -> &SkewPoly {
        self.partner.f()
    }

    /// Checks `ψ(a∘b) = ψ(b)∘ψ(a)` on all basis pairs.
    pub fn verify(&self) -> bool {
        let basis = self.left.fp_basis();
        basis.iter().all(|a| {
            basis.iter().all(|b| {
                let lhs = self.left.apply(&self.psi, &self.left.mul(a, b));
                let rhs = self.partner.mul(&self.left.apply(&self.psi, b), &self.left.apply(&self.psi, a));
                lhs == rhs
            })
        })
    }

    /// Searches the monic polynomials `h` of degree `m` over `K[t;ρ^{-1}]`
    /// for one with `S_h ≅ _fS`, returning the first in encoding order.
    pub fn find_isomorphic_petit(&self, bound: u128) -> Result<Option<SkewPoly>> {
        let ring = self.partner.ring();
        let tower = ring.tower_arc().clone();
        let ln = crate::algebra::nuclei(&self.left);
        for h in ring.monic_of_degree(self.left.m()) {
            let cand = PetitAlgebra::new(SkewRing::with_twist(tower.clone(), ring.twist()), h.clone())?;
            let cn = cand.nuclei();
            if cn.f_dims() != ln.f_dims() || cn.center.fp_dim != ln.center.fp_dim {
                continue;
            }
            if !(0..3).any(|s| cn.k_equal[s] && ln.k_equal[s]) {
                // the structured search would not be complete; nothing to certify
                continue;
            }
            if !structured_search(&cand, &self.left, bound)?.is_empty() {
                return Ok(Some(h));
            }
        }
        Ok(None)
    }
}
