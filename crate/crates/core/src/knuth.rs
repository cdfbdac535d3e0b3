//! The Hughes-Kleinfeld and Knuth semifields on `K ⊕ K`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{gl_search, is_division, matrix_of, nuclei, structured_search, Element, FiniteAlgebra, MulChecker};
use crate::aut::{matrices, structured_automorphisms, AutKind, AutMap};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldTower};
use crate::group::{identify, Group, GroupId};
use crate::linalg::Matrix;
use crate::petit::OppositeBridge;
use crate::skewpoly::{SkewPoly, SkewRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Hk,
    Kn1,
    Kn2,
    Kn3,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Hk, Family::Kn1, Family::Kn2, Family::Kn3];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Hk => "hk",
            Family::Kn1 => "kn1",
            Family::Kn2 => "kn2",
            Family::Kn3 => "kn3",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hk" => Ok(Family::Hk),
            "kn1" => Ok(Family::Kn1),
            "kn2" => Ok(Family::Kn2),
            "kn3" => Ok(Family::Kn3),
            _ => Err(Error::Parse(format!("unknown family {s:?} (expected hk, kn1, kn2 or kn3)"))),
        }
    }
}

/// `K ⊕ K` with one of the four multiplications; `(x, y)` is stored as the
/// coordinates `[x, y]`, matching `x + y·t` in the Petit picture.
pub struct FamilyAlgebra {
    tower: Arc<FieldTower>,
    family: Family,
    eta: Elem,
    mu: Elem,
}

impl FamilyAlgebra {
    pub fn new(tower: Arc<FieldTower>, family: Family, eta: Elem, mu: Elem) -> Result<Self> {
        if eta.is_zero() {
            return Err(Error::InvalidParameters("eta must be nonzero".into()));
        }
        if tower.n() < 2 {
            return Err(Error::Hypothesis("σ must be nontrivial (n >= 2)".into()));
        }
        Ok(FamilyAlgebra { tower, family, eta, mu })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn eta(&self) -> Elem {
        self.eta
    }

    pub fn mu(&self) -> Elem {
        self.mu
    }

    pub fn tower_arc(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    /// `t^2 - μt - η ∈ K[t;σ]`.
    pub fn f(&self) -> SkewPoly {
        let t = &self.tower;
        SkewPoly::new(vec![t.neg(self.eta), t.neg(self.mu), Elem::ONE])
    }

    /// Division algebra iff `f` is irreducible.
    pub fn f_irreducible(&self) -> bool {
        SkewRing::new(self.tower.clone()).is_irreducible(&self.f()).expect("degree 2")
    }

    /// Whether the four families coincide (`σ^2 = id` and `μ = 0`).
    pub fn families_coincide(&self) -> bool {
        2 % self.tower.n() == 0 && self.mu.is_zero()
    }
}

impl FiniteAlgebra for FamilyAlgebra {
    fn tower(&self) -> &FieldTower {
        &self.tower
    }

    fn width(&self) -> usize {
        2
    }

    fn mul(&self, a: &[Elem], b: &[Elem]) -> Element {
        let t = &*self.tower;
        let (x, y, u, v) = (a[0], a[1], b[0], b[1]);
        let s = |e: Elem, j: i64| t.frobenius(e, j);
        let m = |a: Elem, b: Elem| t.mul(a, b);
        let (eta, mu) = (self.eta, self.mu);
        let (first, second) = match self.family {
            Family::Kn1 => (
                t.add(m(x, u), m(eta, m(s(v, 1), s(y, -2)))),
                t.add(t.add(m(v, x), m(y, s(u, 1))), m(mu, m(s(v, 1), s(y, -1)))),
            ),
            Family::Kn2 => (
                t.add(m(x, u), m(eta, m(s(v, -1), s(y, -2)))),
                t.add(t.add(m(v, x), m(y, s(u, 1))), m(mu, m(v, s(y, -1)))),
            ),
            Family::Kn3 => (
                t.add(m(x, u), m(eta, m(s(v, -1), y))),
                t.add(t.add(m(v, x), m(y, s(u, 1))), m(mu, m(v, y))),
            ),
            Family::Hk => (
                t.add(m(x, u), m(eta, m(y, s(v, 1)))),
                t.add(t.add(m(x, v), m(y, s(u, 1))), m(mu, m(y, s(v, 1)))),
            ),
        };
        vec![first, second]
    }
}

/// `(x, y) ↦ (σ^j(x), c·σ^j(y))`.
pub fn diagonal_map(alg: &FamilyAlgebra, j: u32, c: Elem) -> Matrix {
    let t = alg.tower();
    let basis = t.prime_basis();
    let images: Vec<Element> = basis
        .iter()
        .map(|&b| vec![t.frobenius(b, j as i64), Elem::ZERO])
        .chain(basis.iter().map(|&b| vec![Elem::ZERO, t.mul(c, t.frobenius(b, j as i64))]))
        .collect();
    matrix_of(alg, &images)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub family: Family,
    /// `F`-dimensions of the left, middle, right nucleus.
    pub dims: [usize; 3],
    /// Whether `K·1` lies in the left, middle, right nucleus.
    pub k_in: [bool; 3],
    pub center_dim: usize,
}

pub fn fingerprint(alg: &FamilyAlgebra) -> Fingerprint {
    let nu = nuclei(alg);
    Fingerprint { family: alg.family, dims: nu.f_dims(), k_in: nu.k_in, center_dim: nu.center.f_dim }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FingerprintReport {
    pub eta: Elem,
    pub mu: Elem,
    /// `σ^2 = id` and `μ = 0`: all four multiplications agree.
    pub coincide: bool,
    pub fingerprints: Vec<Fingerprint>,
    pub pairwise_distinct: bool,
}

pub fn family_fingerprints(tower: Arc<FieldTower>, eta: Elem, mu: Elem) -> Result<FingerprintReport> {
    let algs = Family::ALL
        .iter()
        .map(|&fam| FamilyAlgebra::new(tower.clone(), fam, eta, mu))
        .collect::<Result<Vec<_>>>()?;
    let fingerprints: Vec<Fingerprint> = algs.iter().map(fingerprint).collect();
    let key = |f: &Fingerprint| (f.dims, f.k_in, f.center_dim);
    let pairwise_distinct = fingerprints
        .iter()
        .enumerate()
        .all(|(i, a)| fingerprints[i + 1..].iter().all(|b| key(a) != key(b)));
    Ok(FingerprintReport { eta, mu, coincide: algs[0].families_coincide(), fingerprints, pairwise_distinct })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyAutReport {
    pub family: Family,
    /// `(j, c)`: the map `(x, y) ↦ (σ^j x, c·σ^j y)`.
    pub pairs: Vec<(u32, Elem)>,
    #[serde(skip)]
    pub maps: Vec<AutMap>,
    pub group: GroupId,
    pub method: String,
    /// Whether the list is known to be all automorphisms.
    pub complete: bool,
}

fn report(alg: &FamilyAlgebra, pairs: Vec<(u32, Elem)>, method: &str, complete: bool) -> Result<FamilyAutReport> {
    let checker = MulChecker::new(alg, alg);
    let mut maps: Vec<AutMap> = pairs
        .iter()
        .map(|&(j, c)| AutMap { kind: AutKind::Structured { j, k: c }, matrix: diagonal_map(alg, j, c) })
        .collect();
    for m in &maps {
        assert!(checker.is_isomorphism(&m.matrix), "{} map failed verification", alg.family);
    }
    maps.sort_by(|a, b| a.matrix.cmp(&b.matrix));
    let group = identify(&Group::from_maps(matrices(&maps), alg.tower().p())?);
    Ok(FamilyAutReport { family: alg.family, pairs, maps, group, method: method.into(), complete })
}

fn require_division(alg: &FamilyAlgebra) -> Result<()> {
    if !alg.f_irreducible() {
        return Err(Error::Hypothesis("t^2 - mu t - eta is reducible; not a division algebra".into()));
    }
    Ok(())
}

/// Solutions `k` of the defining equations, for each `j`, `k` by encoding.
fn solve_pairs(alg: &FamilyAlgebra, eqs: impl Fn(u32, Elem) -> bool) -> Vec<(u32, Elem)> {
    let t = alg.tower();
    let mut out = Vec::new();
    for j in 0..t.n() {
        out.extend(t.units().filter(|&k| eqs(j, k)).map(|k| (j, k)));
    }
    out
}

/// All automorphisms of HK, Kn_2 and Kn_3; the restricted ones for Kn_1.
pub fn family_automorphisms(alg: &FamilyAlgebra) -> Result<FamilyAutReport> {
    require_division(alg)?;
    let t = alg.tower();
    let (eta, mu) = (alg.eta, alg.mu);
    let s = |e: Elem, j: i64| t.frobenius(e, j);
    match alg.family {
        Family::Hk => {
            // ηkσ(k) = τ(η), μσ(k) = τ(μ)
            let pairs = solve_pairs(alg, |j, k| {
                t.mul(eta, t.mul(k, s(k, 1))) == s(eta, j as i64) && t.mul(mu, s(k, 1)) == s(mu, j as i64)
            });
            report(alg, pairs, "equations", true)
        }
        Family::Kn3 => {
            // ησ^{-1}(k)σ^{-2}(k) = τ(η), μσ^{-1}(k) = τ(μ); the map scales y by σ^{-1}(k)
            let pairs = solve_pairs(alg, |j, k| {
                t.mul(eta, t.mul(s(k, -1), s(k, -2))) == s(eta, j as i64)
                    && t.mul(mu, s(k, -1)) == s(mu, j as i64)
            });
            let pairs = pairs.into_iter().map(|(j, k)| (j, s(k, -1))).collect();
            report(alg, pairs, "equations", true)
        }
        Family::Kn2 => {
            let bridge = OppositeBridge::new(SkewRing::new(alg.tower.clone()), alg.f())?;
            let sol = structured_automorphisms(&bridge.partner)?;
            // ψ^{-1} H_{τ,k} ψ acts as (x, y) ↦ (τx, σ(k)τy)
            let pairs = sol.pairs.iter().map(|&(j, k)| (j, s(k, 1))).collect();
            report(alg, pairs, "opposite Petit algebra", true)
        }
        Family::Kn1 => {
            let pairs = kn1_restricted_pairs(alg);
            report(alg, pairs, "restricted to K only", false)
        }
    }
}

/// Maps `(x, y) ↦ (τx, kτy)` of Kn_1: `τ(η) = ησ(k)σ^{-2}(k)` and
/// `τ(μ)k = μσ(k)σ^{-1}(k)`.
pub fn kn1_restricted_pairs(alg: &FamilyAlgebra) -> Vec<(u32, Elem)> {
    let t = alg.tower();
    let (eta, mu) = (alg.eta, alg.mu);
    let s = |e: Elem, j: i64| t.frobenius(e, j);
    solve_pairs(alg, |j, k| {
        s(eta, j as i64) == t.mul(eta, t.mul(s(k, 1), s(k, -2)))
            && t.mul(s(mu, j as i64), k) == t.mul(mu, t.mul(s(k, 1), s(k, -1)))
    })
}

/// Pairs satisfying the variant `ησ^{-1}(k)σ^{-2}(k) =
/// τ(η)` and `μσ(k)σ^{-1}(k) = τ(μ)k`, and how many of their maps are
/// actually automorphisms.
pub fn kn1_alternate_conditions(alg: &FamilyAlgebra) -> (Vec<(u32, Elem)>, usize) {
    let t = alg.tower();
    let (eta, mu) = (alg.eta, alg.mu);
    let s = |e: Elem, j: i64| t.frobenius(e, j);
    let pairs = solve_pairs(alg, |j, k| {
        t.mul(eta, t.mul(s(k, -1), s(k, -2))) == s(eta, j as i64)
            && t.mul(mu, t.mul(s(k, 1), s(k, -1))) == t.mul(s(mu, j as i64), k)
    });
    let checker = MulChecker::new(alg, alg);
    let good = pairs.iter().filter(|&&(j, k)| checker.is_isomorphism(&diagonal_map(alg, j, k))).count();
    (pairs, good)
}

/// Brute-force automorphisms: the structured search when some nucleus is
/// `K·1`, otherwise a full linear search (tiny orders over a prime field).
pub fn family_brute_force(alg: &FamilyAlgebra, bound: u128) -> Result<Vec<Matrix>> {
    match structured_search(alg, alg, bound) {
        Err(Error::Hypothesis(_)) => gl_search(alg, 1 << 16),
        other => other,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerCheck {
    pub c: Elem,
    pub stabilizer: Vec<u32>,
    pub automorphism_taus: Vec<u32>,
    pub bijective: bool,
}

/// With `μ ≠ 0`, `H_{τ,k} ↦ τ` should be a bijection onto the stabilizer of
/// `c = μσ(μ)/σ(η)`.
pub fn stabilizer_check(alg: &FamilyAlgebra, auts: &FamilyAutReport) -> Result<StabilizerCheck> {
    if alg.mu.is_zero() {
        return Err(Error::Hypothesis("mu must be nonzero".into()));
    }
    let t = alg.tower();
    let c = t.div(t.mul(alg.mu, t.frobenius(alg.mu, 1)), t.frobenius(alg.eta, 1));
    let stabilizer: Vec<u32> = (0..t.n()).filter(|&j| t.frobenius(c, j as i64) == c).collect();
    let mut taus: Vec<u32> = auts.pairs.iter().map(|&(j, _)| j).collect();
    taus.sort();
    let injective = taus.windows(2).all(|w| w[0] != w[1]);
    Ok(StabilizerCheck { c, bijective: injective && taus == stabilizer, stabilizer, automorphism_taus: taus })
}

/// Whether the family algebra is a division algebra by direct scan.
pub fn family_is_division(alg: &FamilyAlgebra, bound: u128) -> Result<bool> {
    is_division(alg, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::petit::PetitAlgebra;
    use crate::text::parse_elem;

    fn tower(p: u32, r: u32, n: u32) -> Arc<FieldTower> {
        Arc::new(FieldTower::new(p, r, n).unwrap())
    }

    fn sorted(mut v: Vec<Matrix>) -> Vec<Matrix> {
        v.sort();
        v
    }

    #[test]
    fn hk_is_the_petit_algebra() {
        let t4 = tower(2, 1, 2);
        let x = t4.generator();
        let hk = FamilyAlgebra::new(t4.clone(), Family::Hk, x, Elem::ZERO).unwrap();
        let sf = PetitAlgebra::from_tower(t4.clone(), hk.f()).unwrap();
        for i in 0..hk.order() {
            for j in 0..hk.order() {
                let (a, b) = (hk.element_at(i), hk.element_at(j));
                assert_eq!(hk.mul(&a, &b), sf.mul(&a, &b));
            }
        }
    }

    #[test]
    fn kn2_is_the_left_petit_algebra() {
        let t9 = tower(3, 1, 2);
        let eta = parse_elem(&t9, "x+1").unwrap();
        let mu = parse_elem(&t9, "x").unwrap();
        let kn2 = FamilyAlgebra::new(t9.clone(), Family::Kn2, eta, mu).unwrap();
        let bridge = OppositeBridge::new(SkewRing::new(t9.clone()), kn2.f()).unwrap();
        for i in 0..kn2.order() {
            for j in (0..kn2.order()).step_by(3) {
                let (a, b) = (kn2.element_at(i), kn2.element_at(j));
                assert_eq!(kn2.mul(&a, &b), bridge.left.mul(&a, &b));
            }
        }
    }

    #[test]
    fn families_coincide_when_sigma_squared_is_id_and_mu_zero() {
        let t9 = tower(3, 1, 2);
        let eta = parse_elem(&t9, "x").unwrap();
        let algs: Vec<_> =
            Family::ALL.iter().map(|&f| FamilyAlgebra::new(t9.clone(), f, eta, Elem::ZERO).unwrap()).collect();
        for i in (0..81).step_by(4) {
            for j in 0..81 {
                let (a, b) = (algs[0].element_at(i), algs[0].element_at(j));
                let prods: Vec<_> = algs.iter().map(|g| g.mul(&a, &b)).collect();
                assert!(prods.windows(2).all(|w| w[0] == w[1]));
            }
        }
        assert!(family_fingerprints(t9, eta, Elem::ZERO).unwrap().coincide);
    }

    #[test]
    fn automorphisms_match_brute_force() {
        let t9 = tower(3, 1, 2);
        let mut checked = 0;
        for eta in t9.units() {
            for mu in t9.elements() {
                for fam in [Family::Hk, Family::Kn2, Family::Kn3] {
                    let alg = FamilyAlgebra::new(t9.clone(), fam, eta, mu).unwrap();
                    if !alg.f_irreducible() {
                        continue;
                    }
                    let rep = family_automorphisms(&alg).unwrap();
                    let brute = family_brute_force(&alg, 2401).unwrap();
                    assert_eq!(sorted(matrices(&rep.maps)), brute, "{fam} eta={eta} mu={mu}");
                    checked += 1;
                }
            }
        }
        assert!(checked >= 30);
    }

    #[test]
    fn rejects_zero_eta_and_reducible_f() {
        let t4 = tower(2, 1, 2);
        assert!(FamilyAlgebra::new(t4.clone(), Family::Hk, Elem::ZERO, Elem::ONE).is_err());
        // t^2 - 1 = (t - 1)(t + 1) style factorization
        let alg = FamilyAlgebra::new(t4, Family::Hk, Elem::ONE, Elem::ZERO).unwrap();
        assert!(!alg.f_irreducible());
        assert!(matches!(family_automorphisms(&alg), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
        assert!("kn4".parse::<Family>().is_err());
    }
}
