//! Automorphisms of Petit algebras: the structured maps `H_{τ,k}`,
//! inner automorphisms `G_c`, and brute-force oracles.

use serde::Serialize;

use crate::algebra::{gl_search, matrix_of, structured_search, Element, FiniteAlgebra, MulChecker};
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::linalg::{solve, Matrix};
use crate::petit::PetitAlgebra;

/// Default bound on the number of algebra elements for brute-force searches.
pub const DEFAULT_ORACLE_BOUND: u128 = 2401;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AutKind {
    /// `H_{σ^j,k}`.
    Structured { j: u32, k: Elem },
    /// `G_c(x) = (c_l x) c` for `c` in the nucleus.
    Inner { c: Vec<Elem> },
    Raw,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutMap {
    pub kind: AutKind,
    pub matrix: Matrix,
}

/// `H_{σ^j,k}(Σ x_i t^i) = Σ σ^j(x_i) (∏_{l<i} ρ^l(k)) t^i`.
pub fn h_map(alg: &PetitAlgebra, j: u32, k: Elem) -> Matrix {
    let t = alg.tower();
    let ring = alg.ring();
    let mut scale = Elem::ONE;
    let mut images = Vec::with_capacity(alg.dim_fp());
    for i in 0..alg.m() {
        for b in t.prime_basis() {
            images.push(alg.coord(t.mul(t.frobenius(b, j as i64), scale), i));
        }
        scale = t.mul(scale, ring.rho(k, i as i64));
    }
    matrix_of(alg, &images)
}

/// `∏_{l=i}^{m-1} ρ^l(k)`.
pub fn tail_product(alg: &PetitAlgebra, k: Elem, i: usize) -> Elem {
    let t = alg.tower();
    (i..alg.m()).fold(Elem::ONE, |acc, l| t.mul(acc, alg.ring().rho(k, l as i64)))
}

/// Whether `σ^j(a_i) = ∏_{l=i}^{m-1} ρ^l(k) · a_i` for every `i`.
pub fn aut_condition_holds(alg: &PetitAlgebra, j: u32, k: Elem) -> bool {
    let t = alg.tower();
    (0..alg.m()).all(|i| {
        let a = alg.a(i);
        t.frobenius(a, j as i64) == t.mul(tail_product(alg, k, i), a)
    })
}

pub struct StructuredAuts {
    /// `(j, k)` pairs in search order: `j` ascending, then `k` by encoding.
    pub pairs: Vec<(u32, Elem)>,
    /// The maps, sorted by matrix.
    pub maps: Vec<AutMap>,
    /// `n ≥ m - 1`, so the list is all of `Aut_F(S_f)`; otherwise only a
    /// subgroup is guaranteed.
    pub complete: bool,
}

pub fn structured_automorphisms(alg: &PetitAlgebra) -> Result<StructuredAuts> {
    if !alg.is_proper_semifield() {
        return Err(Error::Hypothesis("f must be irreducible and not right invariant".into()));
    }
    let t = alg.tower();
    let checker = MulChecker::new(alg, alg);
    let mut pairs = Vec::new();
    let mut maps = Vec::new();
    for j in 0..t.n() {
        for k in t.units() {
            if aut_condition_holds(alg, j, k) {
                let matrix = h_map(alg, j, k);
                assert!(checker.is_isomorphism(&matrix), "H_(σ^{j},{k}) failed verification");
                pairs.push((j, k));
                maps.push(AutMap { kind: AutKind::Structured { j, k }, matrix });
            }
        }
    }
    maps.sort_by(|a, b| a.matrix.cmp(&b.matrix));
    Ok(StructuredAuts { pairs, maps, complete: t.n() as usize + 1 >= alg.m() })
}

/// `H_{τ,k}^{-1} = H_{τ^{-1}, τ^{-1}(k^{-1})}`.
pub fn h_inverse(alg: &PetitAlgebra, j: u32, k: Elem) -> (u32, Elem) {
    let t = alg.tower();
    let jn = (t.n() - j % t.n()) % t.n();
    let kinv = t.inv(k).expect("k nonzero");
    (jn, t.frobenius(kinv, jn as i64))
}

/// `H_{τ,k} ∘ H_{τ',k'} = H_{ττ', k·τ(k')}`.
pub fn h_compose(alg: &PetitAlgebra, (j, k): (u32, Elem), (j2, k2): (u32, Elem)) -> (u32, Elem) {
    let t = alg.tower();
    ((j + j2) % t.n(), t.mul(k, t.frobenius(k2, j as i64)))
}

/// All automorphisms found by the structured oracle.
pub fn brute_force_aut<A: FiniteAlgebra + ?Sized>(alg: &A, bound: u128) -> Result<Vec<AutMap>> {
    Ok(structured_search(alg, alg, bound)?
        .into_iter()
        .map(|matrix| AutMap { kind: AutKind::Raw, matrix })
        .collect())
}

/// Every unital automorphism, by enumerating matrices fixing `1`.
pub fn gl_search_aut<A: FiniteAlgebra + ?Sized>(alg: &A, max_candidates: u128) -> Result<Vec<AutMap>> {
    Ok(gl_search(alg, max_candidates)?
        .into_iter()
        .map(|matrix| AutMap { kind: AutKind::Raw, matrix })
        .collect())
}

/// Left inverse `c_l` with `c_l∘c = 1`, solved as a linear system.
pub fn left_inverse<A: FiniteAlgebra + ?Sized>(alg: &A, c: &[Elem]) -> Option<Element> {
    let p = alg.tower().p();
    let cols: Vec<Vec<u32>> = alg.fp_basis().iter().map(|b| alg.to_fp(&alg.mul(b, c))).collect();
    solve(&cols, &alg.to_fp(&alg.one()), p).map(|y| alg.from_fp(&y))
}

/// `G_c(x) = (c_l∘x)∘c`.
pub fn inner_map<A: FiniteAlgebra + ?Sized>(alg: &A, c: &[Elem]) -> Option<Matrix> {
    let cl = left_inverse(alg, c)?;
    let images: Vec<Element> = alg.fp_basis().iter().map(|x| alg.mul(&alg.mul(&cl, x), c)).collect();
    Some(matrix_of(alg, &images))
}

/// The distinct inner automorphisms `G_c`, `c` invertible in the nucleus.
pub fn inner_auts<A: FiniteAlgebra + ?Sized>(alg: &A, nucleus: &crate::algebra::Subspace) -> Vec<AutMap> {
    let p = alg.tower().p();
    let mut out: Vec<AutMap> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for v in nucleus.elements(p) {
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let c = alg.from_fp(&v);
        if let Some(matrix) = inner_map(alg, &c) {
            if seen.insert(matrix.key()) {
                out.push(AutMap { kind: AutKind::Inner { c }, matrix });
            }
        }
    }
    out.sort_by(|a, b| a.matrix.cmp(&b.matrix));
    out
}

pub fn matrices(maps: &[AutMap]) -> Vec<Matrix> {
    maps.iter().map(|m| m.matrix.clone()).collect()
}
