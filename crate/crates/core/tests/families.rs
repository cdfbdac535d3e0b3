use std::sync::Arc;

use semifield::algebra::{gl_search, is_division, nuclei, MulChecker};
use semifield::aut::matrices;
use semifield::knuth::*;
use semifield::{Elem, FieldTower, FiniteAlgebra, Matrix};

fn tower(p: u32, r: u32, n: u32) -> Arc<FieldTower> {
    Arc::new(FieldTower::new(p, r, n).unwrap())
}

fn sorted(mut v: Vec<Matrix>) -> Vec<Matrix> {
    v.sort();
    v
}

/// Every irreducible `(η, μ)` instance of a family over `t`.
fn instances(t: &Arc<FieldTower>, fam: Family) -> Vec<FamilyAlgebra> {
    let mut out = Vec::new();
    for eta in t.units() {
        for mu in t.elements() {
            let alg = FamilyAlgebra::new(t.clone(), fam, eta, mu).unwrap();
            if alg.f_irreducible() {
                out.push(alg);
            }
        }
    }
    out
}

#[test]
fn kn2_bridge_matches_full_linear_search_at_order_16() {
    let t4 = tower(2, 1, 2);
    let algs = instances(&t4, Family::Kn2);
    assert!(!algs.is_empty());
    for alg in algs {
        let rep = family_automorphisms(&alg).unwrap();
        let all = gl_search(&alg, 1 << 12).unwrap();
        assert_eq!(sorted(matrices(&rep.maps)), all, "eta={} mu={}", alg.eta(), alg.mu());
    }
}

#[test]
fn every_family_is_division_iff_f_irreducible() {
    for (p, n) in [(2, 2), (3, 2), (2, 3)] {
        let t = tower(p, 1, n);
        for fam in Family::ALL {
            for eta in t.units() {
                for mu in t.elements() {
                    let alg = FamilyAlgebra::new(t.clone(), fam, eta, mu).unwrap();
                    assert_eq!(is_division(&alg, 1 << 12).unwrap(), alg.f_irreducible(), "{fam} {eta} {mu}");
                }
            }
        }
    }
}

#[test]
fn kn1_restricted_maps_against_linear_search_at_order_16() {
    let t4 = tower(2, 1, 2);
    let x = t4.generator();
    let first = FamilyAlgebra::new(t4.clone(), Family::Kn1, x, Elem::ZERO).unwrap();
    assert!(first.f_irreducible());
    let algs = instances(&t4, Family::Kn1);
    assert!(algs.iter().any(|a| a.eta() == x && a.mu().is_zero()));
    for alg in algs {
        let rep = family_automorphisms(&alg).unwrap();
        assert!(!rep.complete);
        let restricted = sorted(matrices(&rep.maps));
        let all = gl_search(&alg, 1 << 12).unwrap();
        assert!(restricted.iter().all(|m| all.binary_search(m).is_ok()));
        assert!(restricted.contains(&Matrix::identity(alg.dim_fp())));
        assert_eq!(restricted, all, "eta={} mu={}", alg.eta(), alg.mu());
    }
}

#[test]
fn kn1_conditions_are_exactly_the_diagonal_automorphisms() {
    for (p, n) in [(3, 2), (3, 3), (2, 3)] {
        let t = tower(p, 1, n);
        for alg in instances(&t, Family::Kn1) {
            let checker = MulChecker::new(&alg, &alg);
            let mut diagonal = Vec::new();
            for j in 0..n {
                diagonal.extend(t.units().filter(|&k| checker.is_isomorphism(&diagonal_map(&alg, j, k))).map(|k| (j, k)));
            }
            assert_eq!(kn1_restricted_pairs(&alg), diagonal);
        }
    }
}

#[test]
fn kn1_alternate_conditions_fail_once_sigma_inverse_differs_from_sigma() {
    // n = 2: σ^{-1} = σ and the two readings coincide
    for alg in instances(&tower(3, 1, 2), Family::Kn1) {
        let (alternate, good) = kn1_alternate_conditions(&alg);
        assert_eq!(alternate, kn1_restricted_pairs(&alg));
        assert_eq!(good, alternate.len());
    }
    let bad = instances(&tower(3, 1, 3), Family::Kn1)
        .iter()
        .filter(|alg| {
            let (alternate, good) = kn1_alternate_conditions(alg);
            good < alternate.len()
        })
        .count();
    assert!(bad > 0);
}

#[test]
fn kn1_nonempty_when_mu_zero_and_eta_in_base() {
    let t = tower(3, 1, 3);
    let eta = t.constant(2);
    let alg = FamilyAlgebra::new(t.clone(), Family::Kn1, eta, Elem::ZERO).unwrap();
    assert!(alg.f_irreducible());
    let pairs = kn1_restricted_pairs(&alg);
    assert!(pairs.contains(&(0, Elem::ONE)));
    assert!(pairs.len() >= t.n() as usize);
}

#[test]
fn multipliers_have_norm_plus_minus_one() {
    for (p, n) in [(3, 2), (3, 3), (5, 2)] {
        let t = tower(p, 1, n);
        let minus_one = t.constant(-1);
        for fam in [Family::Hk, Family::Kn2, Family::Kn3] {
            for alg in instances(&t, fam) {
                for &(_, c) in &family_automorphisms(&alg).unwrap().pairs {
                    let norm = t.norm(c);
                    if alg.mu().is_zero() {
                        assert!(norm == Elem::ONE || norm == minus_one);
                    } else {
                        assert_eq!(norm, Elem::ONE);
                    }
                }
            }
        }
    }
}

#[test]
fn stabilizer_bijection_on_every_f27_instance() {
    let t = tower(3, 1, 3);
    for fam in [Family::Hk, Family::Kn2, Family::Kn3] {
        for alg in instances(&t, fam).into_iter().filter(|a| !a.mu().is_zero()) {
            let rep = family_automorphisms(&alg).unwrap();
            assert!(stabilizer_check(&alg, &rep).unwrap().bijective, "{fam} {} {}", alg.eta(), alg.mu());
        }
    }
}

#[test]
fn nuclei_patterns() {
    let t27 = tower(3, 1, 3);
    let t9 = tower(3, 1, 2);
    // σ^2 ≠ id with μ = 0, and σ^2 = id with μ ≠ 0
    let cases = [
        (t27.clone(), instances(&t27, Family::Hk).into_iter().find(|a| a.mu().is_zero()).unwrap().eta(), Elem::ZERO),
        (t9.clone(), t9.constant(1), t9.constant(1)),
    ];
    for (t, eta, mu) in cases {
        let kn3 = FamilyAlgebra::new(t.clone(), Family::Kn3, eta, mu).unwrap();
        let nu = nuclei(&kn3);
        assert_eq!(nu.k_equal, [true, false, true]);
        assert!(!nu.k_in[1]);
        let kn2 = FamilyAlgebra::new(t.clone(), Family::Kn2, eta, mu).unwrap();
        let nu = nuclei(&kn2);
        assert_eq!(nu.k_equal, [false, true, true]);
        // left nucleus ≅ F_{q^2}
        assert_eq!(nu.left.fp_dim, 2 * t.r() as usize);
        let kn1 = FamilyAlgebra::new(t.clone(), Family::Kn1, eta, mu).unwrap();
        assert_eq!(nuclei(&kn1).k_in, [false, false, false]);
        let report = family_fingerprints(t.clone(), eta, mu).unwrap();
        assert!(report.pairwise_distinct && !report.coincide);
    }
}

#[test]
fn all_hk_automorphisms_over_f25_match_the_oracle() {
    let t = tower(5, 1, 2);
    for alg in instances(&t, Family::Hk).into_iter().step_by(7) {
        let rep = family_automorphisms(&alg).unwrap();
        assert_eq!(sorted(matrices(&rep.maps)), family_brute_force(&alg, 625).unwrap());
    }
}
