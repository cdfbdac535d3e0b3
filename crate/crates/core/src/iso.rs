//! Isomorphisms between Petit algebras, norm-based non-isomorphism
//! certificates, and classification of the nonassociative cyclic algebras
//! `(K/F, σ, a)`.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{FiniteAlgebra, MulChecker};
use crate::aut::{h_map, matrices, structured_automorphisms};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldTower};
use crate::group::{canonical_exponent, identify, Group, GroupId, GroupTag};
use crate::linalg::Matrix;
use crate::petit::PetitAlgebra;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    pub j: u32,
    pub k: Elem,
    #[serde(skip)]
    pub matrix: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NonIso {
    DifferentDegree { m_f: usize, m_g: usize },
    /// `a_i = 0` but `b_i ≠ 0`, or the reverse.
    ZeroPattern { i: usize },
    /// No `G_{τ,k}` exists. Definitive when `n ≥ m - 1` and both algebras
    /// are proper semifields; otherwise only structured maps were excluded.
    NoWitness { definitive: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum IsoVerdict {
    Isomorphic(IsoWitness),
    NotIsomorphic(NonIso),
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }
}

fn same_ring(fa: &PetitAlgebra, ga: &PetitAlgebra) -> Result<()> {
    if fa.ring() != ga.ring() {
        return Err(Error::Hypothesis("algebras are over different twisted rings".into()));
    }
    Ok(())
}

/// `σ^j(a_i) = ∏_{l=i}^{m-1} ρ^l(k) · b_i` for every `i`.
pub fn iso_condition_holds(fa: &PetitAlgebra, ga: &PetitAlgebra, j: u32, k: Elem) -> bool {
    let t = fa.tower();
    (0..fa.m()).all(|i| {
        t.frobenius(fa.a(i), j as i64) == t.mul(crate::aut::tail_product(fa, k, i), ga.a(i))
    })
}

/// Searches `j` ascending, then `k` by encoding, for an isomorphism
/// `G_{σ^j,k}: S_f → S_g`; every witness is re-verified.
pub fn iso_test(fa: &PetitAlgebra, ga: &PetitAlgebra) -> Result<IsoVerdict> {
    same_ring(fa, ga)?;
    if fa.m() != ga.m() {
        return Ok(IsoVerdict::NotIsomorphic(NonIso::DifferentDegree { m_f: fa.m(), m_g: ga.m() }));
    }
    let t = fa.tower();
    let complete = t.n() as usize + 1 >= fa.m() && fa.is_proper_semifield() && ga.is_proper_semifield();
    if complete {
        if let Some(i) = (0..fa.m()).find(|&i| fa.a(i).is_zero() != ga.a(i).is_zero()) {
            return Ok(IsoVerdict::NotIsomorphic(NonIso::ZeroPattern { i }));
        }
    }
    let checker = MulChecker::new(fa, ga);
    for j in 0..t.n() {
        for k in t.units() {
            if iso_condition_holds(fa, ga, j, k) {
                let matrix = h_map(fa, j, k);
                assert!(checker.is_isomorphism(&matrix), "G_(σ^{j},{k}) failed verification");
                return Ok(IsoVerdict::Isomorphic(IsoWitness { j, k, matrix }));
            }
        }
    }
    Ok(IsoVerdict::NotIsomorphic(NonIso::NoWitness { definitive: complete }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "certificate", rename_all = "snake_case")]
pub enum Certificate {
    /// `b_i ≠ 0` and `N(a_i/b_i)` is not an `(m-i)`-th power in `F^×`.
    NormRatio { i: usize },
    /// `N(a_0) ≠ N(b_0)` modulo `m`-th powers.
    ConstantNorm,
    /// `m = n` and exactly one of `a_0, b_0` lies in `F^×`, the other in `K \ F`.
    ConstantField { swapped: bool },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub certificates: Vec<Certificate>,
    pub notes: Vec<String>,
}

pub const TOP_RATIO_NOTE: &str = "top-coefficient norm test skipped: the condition \
N(a_{m-1}/b_{m-1}) outside F^x cannot hold for nonzero coefficients";

/// Norm-based certificates that `S_f` and `S_g` are not isomorphic.
pub fn noniso_certificates(fa: &PetitAlgebra, ga: &PetitAlgebra) -> Result<CertificateReport> {
    same_ring(fa, ga)?;
    let t = fa.tower();
    let m = fa.m();
    if (t.n() as usize) + 1 < m {
        return Err(Error::Hypothesis("certificates need n >= m - 1".into()));
    }
    if ga.m() != m {
        return Err(Error::Hypothesis("certificates need equal degrees".into()));
    }
    let mut report = CertificateReport::default();
    for i in 0..m {
        let (a, b) = (fa.a(i), ga.a(i));
        if b.is_zero() {
            continue;
        }
        let nr = t.norm(t.div(a, b));
        if nr.is_zero() || !t.is_base_power(nr, (m - i) as u64) {
            report.certificates.push(Certificate::NormRatio { i });
        }
    }
    let (a0, b0) = (fa.a(0), ga.a(0));
    if !a0.is_zero() && !b0.is_zero() {
        let ratio = t.div(t.norm(a0), t.norm(b0));
        if !t.is_base_power(ratio, m as u64) {
            report.certificates.push(Certificate::ConstantNorm);
        }
    }
    if ga.a(m - 1) != Elem::ZERO {
        report.notes.push(TOP_RATIO_NOTE.into());
    }
    if t.n() as usize == m {
        let in_f = |x: Elem| !x.is_zero() && t.in_base(x);
        if in_f(a0) && !t.in_base(b0) {
            report.certificates.push(Certificate::ConstantField { swapped: false });
        } else if in_f(b0) && !t.in_base(a0) {
            report.certificates.push(Certificate::ConstantField { swapped: true });
        }
    }
    Ok(report)
}

/// For `f = t^m - a`, `g = t^m - b` with `m = n`: the first `(j, k)` with
/// `σ^j(a) = N(k)·b`.
pub fn cyclic_iso_witness(tower: &FieldTower, a: Elem, b: Elem) -> Option<(u32, Elem)> {
    for j in 0..tower.n() {
        let ta = tower.frobenius(a, j as i64);
        for k in tower.units() {
            if ta == tower.mul(tower.norm(k), b) {
                return Some((j, k));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicClass {
    pub representative: Elem,
    pub size: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub p: u32,
    pub q: u64,
    pub m: u32,
    pub classes: Vec<CyclicClass>,
    pub count: u64,
    /// Predicted count, when a formula applies.
    pub formula: Option<u64>,
    pub formula_case: String,
    pub matches: Option<bool>,
}

fn is_prime_u64(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// The predicted number of classes and which case applies.
pub fn class_count_formula(q: u64, m: u64) -> (Option<u64>, String) {
    let qm = q.pow(m as u32);
    if (q - 1) % m != 0 {
        ((Some((qm - q) / (m * (q - 1)))), "m does not divide q-1".into())
    } else if is_prime_u64(m) {
        let rest = qm - q - (q - 1) * (m - 1);
        (Some(m - 1 + rest / (m * (q - 1))), "m prime and divides q-1".into())
    } else {
        (None, "m divides q-1 but is not prime; no formula asserted".into())
    }
}

/// Partitions `K \ F` by `a ~ b ⟺ σ^i(a) = c·b` for some `i` and `c ∈ F^×`.
pub fn classify_cyclic(tower: &FieldTower) -> ClassificationReport {
    let t = tower;
    let base = t.base_units();
    let mut seen = vec![false; t.size() as usize];
    let mut classes = Vec::new();
    for a in t.elements().filter(|&a| !t.in_base(a)) {
        if seen[a.0 as usize] {
            continue;
        }
        let mut orbit = BTreeSet::new();
        for i in 0..t.n() {
            let s = t.frobenius(a, i as i64);
            for &c in &base {
                orbit.insert(t.mul(c, s));
            }
        }
        for e in &orbit {
            seen[e.0 as usize] = true;
        }
        classes.push(CyclicClass { representative: a, size: orbit.len() as u64 });
    }
    let count = classes.len() as u64;
    let (formula, formula_case) = class_count_formula(t.q(), t.n() as u64);
    ClassificationReport {
        p: t.p(),
        q: t.q(),
        m: t.n(),
        classes,
        count,
        formula,
        formula_case,
        matches: formula.map(|f| f == count),
    }
}

/// The least `d ∈ K \ F` with `d^m ∈ F`, when `m = n` divides `q - 1`.
pub fn kummer_generator(tower: &FieldTower) -> Option<Elem> {
    let m = tower.n() as u64;
    if (tower.q() - 1) % m != 0 {
        return None;
    }
    tower.elements().find(|&d| !tower.in_base(d) && tower.in_base(tower.pow(d, m)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub statement: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicProfile {
    pub a: Elem,
    /// `σ(a) ∈ F^×·a`, i.e. `a = λ d^i`.
    pub eigenvector: bool,
    pub order: u64,
    pub group: GroupId,
    pub claims: Vec<Claim>,
}

/// Automorphism group of `(K/F, σ, a)` with the case-specific claims checked.
pub fn cyclic_aut_profile(tower: Arc<FieldTower>, a: Elem) -> Result<CyclicProfile> {
    let t = tower.clone();
    if t.in_base(a) {
        return Err(Error::Hypothesis("a must lie in K \\ F".into()));
    }
    let m = t.n() as usize;
    let alg = PetitAlgebra::cyclic(tower, m, a)?;
    if !alg.is_irreducible() {
        return Err(Error::Hypothesis("t^m - a is reducible".into()));
    }
    let sol = structured_automorphisms(&alg)?;
    let group = Group::from_maps(matrices(&sol.maps), t.p())?;
    let id = identify(&group);
    let q = t.q();
    let s = t.s();
    let mu = m as u64;
    let order = group.order() as u64;
    let eigenvector = t.in_base(t.div(t.frobenius(a, 1), a));
    let mut claims = Vec::new();
    let mut claim = |statement: String, holds: bool| claims.push(Claim { statement, holds });
    let divides = (q - 1) % mu == 0;
    if eigenvector && divides && (mu % 2 == 1 || ((q - 1) / mu) % 2 == 0) {
        claim(format!("|Aut| = ms = {}", mu * s), order == mu * s);
    }
    if eigenvector && divides && is_prime_u64(mu) {
        let expected = if mu == 2 {
            GroupTag::Dicyclic((q + 1) / 2)
        } else {
            let a_ = s / mu;
            GroupTag::Semidirect { a: a_, b: mu * mu, l: canonical_exponent(q % a_, a_, mu * mu) }
        };
        claim(format!("Aut ≅ {expected}"), id.tag == expected);
    }
    if !eigenvector {
        let only_id = sol.pairs.iter().all(|&(j, _)| j == 0);
        claim(format!("Aut is cyclic of order s = {s}"), only_id && order == s && group.is_cyclic());
    }
    Ok(CyclicProfile { a, eigenvector, order, group: id, claims })
}

/// `m | s` and `m² ∤ l·s` for `l = 1..m-1`, for `m | q - 1` with `m` odd
/// or `(q-1)/m` even.
pub fn lemma_holds(q: u64, m: u64) -> Option<bool> {
    if m < 2 || (q - 1) % m != 0 || !(m % 2 == 1 || ((q - 1) / m) % 2 == 0) {
        return None;
    }
    let s: u64 = (0..m).map(|i| q.pow(i as u32)).sum();
    Some(s % m == 0 && (1..m).all(|l| (l * s) % (m * m) != 0))
}

/// Prime powers up to `bound`.
pub fn prime_powers(bound: u64) -> Vec<u64> {
    (2..=bound)
        .filter(|&q| {
            let p = (2..=q).find(|d| q % d == 0).expect("q >= 2");
            let mut x = q;
            while x % p == 0 {
                x /= p;
            }
            x == 1
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_elem, parse_poly};

    fn tower(p: u32, r: u32, n: u32) -> Arc<FieldTower> {
        Arc::new(FieldTower::new(p, r, n).unwrap())
    }

    fn build(t: &Arc<FieldTower>, f: &str) -> PetitAlgebra {
        PetitAlgebra::from_tower(t.clone(), parse_poly(t, f).unwrap()).unwrap()
    }

    #[test]
    fn f4_quaternions_are_isomorphic_via_sigma() {
        let t4 = tower(2, 1, 2);
        let v = iso_test(&build(&t4, "t^2 - x"), &build(&t4, "t^2 - (x+1)")).unwrap();
        match v {
            IsoVerdict::Isomorphic(w) => assert_eq!((w.j, w.k), (1, Elem::ONE)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn identical_algebras_give_identity_witness() {
        let t9 = tower(3, 1, 2);
        let a = build(&t9, "t^2 - x*t - (x+1)");
        let v = iso_test(&a, &a).unwrap();
        assert_eq!(v, IsoVerdict::Isomorphic(IsoWitness { j: 0, k: Elem::ONE, matrix: Matrix::identity(4) }));
        assert!(noniso_certificates(&a, &a).unwrap().certificates.is_empty());
    }

    fn first_proper(t: &Arc<FieldTower>, pred: impl Fn(&PetitAlgebra) -> bool) -> PetitAlgebra {
        let ring = crate::SkewRing::new(t.clone());
        let found = ring
            .monic_of_degree(2)
            .map(|f| PetitAlgebra::from_tower(t.clone(), f).unwrap())
            .find(|a| a.is_proper_semifield() && pred(a))
            .unwrap();
        found
    }

    #[test]
    fn zero_pattern_and_certificates() {
        let t9 = tower(3, 1, 2);
        let f = build(&t9, "t^2 - x");
        let g = first_proper(&t9, |a| !a.a(0).is_zero() && !a.a(1).is_zero());
        assert!(f.is_proper_semifield());
        assert_eq!(
            iso_test(&f, &g).unwrap(),
            IsoVerdict::NotIsomorphic(NonIso::ZeroPattern { i: 1 })
        );
        let c = noniso_certificates(&f, &g).unwrap();
        assert!(c.certificates.contains(&Certificate::NormRatio { i: 1 }));
    }

    #[test]
    fn constant_in_base_versus_outside() {
        let t9 = tower(3, 1, 2);
        let f = first_proper(&t9, |a| t9.in_base(a.a(0)) && !a.a(1).is_zero());
        let g = first_proper(&t9, |a| !t9.in_base(a.a(0)) && !a.a(1).is_zero());
        let c = noniso_certificates(&f, &g).unwrap();
        assert!(c.certificates.contains(&Certificate::ConstantField { swapped: false }));
        assert!(!iso_test(&f, &g).unwrap().is_iso());
        let c = noniso_certificates(&g, &f).unwrap();
        assert!(c.certificates.contains(&Certificate::ConstantField { swapped: true }));
    }

    #[test]
    fn classification_counts() {
        let r = classify_cyclic(&tower(2, 1, 2));
        assert_eq!(r.count, 1);
        let r = classify_cyclic(&tower(3, 1, 2));
        let t9 = tower(3, 1, 2);
        assert_eq!(r.count, 2);
        assert_eq!(r.matches, Some(true));
        let reps: Vec<Elem> = r.classes.iter().map(|c| c.representative).collect();
        assert_eq!(reps, vec![parse_elem(&t9, "x").unwrap(), parse_elem(&t9, "x+1").unwrap()]);
        assert_eq!(classify_cyclic(&tower(2, 1, 3)).count, 2);
    }

    #[test]
    fn formula_cases() {
        assert_eq!(class_count_formula(2, 2).0, Some(1));
        assert_eq!(class_count_formula(3, 2).0, Some(2));
        assert_eq!(class_count_formula(4, 3).0, Some(8));
        assert_eq!(class_count_formula(5, 4).0, None);
    }

    #[test]
    fn lemma_examples() {
        assert_eq!(lemma_holds(7, 3), Some(true));
        assert_eq!(lemma_holds(5, 2), Some(true));
        assert_eq!(lemma_holds(3, 2), None);
        assert_eq!(prime_powers(10), vec![2, 3, 4, 5, 7, 8, 9]);
    }

    #[test]
    fn cyclic_profiles_over_f9() {
        let t9 = tower(3, 1, 2);
        let x = parse_elem(&t9, "x").unwrap();
        let px = cyclic_aut_profile(t9.clone(), x).unwrap();
        assert!(px.eigenvector);
        assert_eq!(px.group.tag, GroupTag::Dicyclic(2));
        assert!(px.claims.iter().all(|c| c.holds));
        let px1 = cyclic_aut_profile(t9.clone(), parse_elem(&t9, "x+1").unwrap()).unwrap();
        assert!(!px1.eigenvector);
        assert_eq!(px1.group.tag, GroupTag::Cyclic(4));
        assert!(px1.claims.iter().all(|c| c.holds));
        assert!(cyclic_aut_profile(t9, Elem(2)).is_err());
    }
}
