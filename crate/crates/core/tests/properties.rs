use std::sync::Arc;

use proptest::prelude::*;
use semifield::algebra::MulChecker;
use semifield::aut::{h_compose, h_map, structured_automorphisms};
use semifield::iso::{classify_cyclic, iso_test, IsoVerdict};
use semifield::{Elem, FieldTower, FiniteAlgebra, PetitAlgebra, SkewPoly, SkewRing};

const TOWERS: [(u32, u32, u32); 6] = [(2, 1, 2), (3, 1, 2), (2, 2, 2), (2, 1, 3), (5, 1, 2), (3, 1, 3)];

fn towers() -> impl Strategy<Value = Arc<FieldTower>> {
    prop::sample::select(TOWERS.to_vec()).prop_map(|(p, r, n)| Arc::new(FieldTower::new(p, r, n).unwrap()))
}

fn elem(t: &FieldTower) -> impl Strategy<Value = Elem> + Clone {
    (0..t.size()).prop_map(Elem)
}

fn poly(t: &FieldTower, max_len: usize) -> impl Strategy<Value = SkewPoly> + Clone {
    prop::collection::vec(elem(t), 0..max_len).prop_map(SkewPoly::new)
}

fn monic(t: &FieldTower, deg: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = SkewPoly> {
    let size = t.size();
    deg.prop_flat_map(move |d| prop::collection::vec((0..size).prop_map(Elem), d)).prop_map(|mut c| {
        c.push(Elem::ONE);
        SkewPoly::new(c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((t, a, b, c) in towers().prop_flat_map(|t| {
        let e = elem(&t);
        (Just(t.clone()), e.clone(), e.clone(), e)
    })) {
        prop_assert_eq!(t.mul(a, t.add(b, c)), t.add(t.mul(a, b), t.mul(a, c)));
        prop_assert_eq!(t.mul(t.mul(a, b), c), t.mul(a, t.mul(b, c)));
        prop_assert_eq!(t.add(a, t.neg(a)), Elem::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(t.mul(a, t.inv(a).unwrap()), Elem::ONE);
        }
        // σ is a ring automorphism fixing F, with σ^n = id
        prop_assert_eq!(t.frobenius(t.mul(a, b), 1), t.mul(t.frobenius(a, 1), t.frobenius(b, 1)));
        prop_assert_eq!(t.frobenius(a, t.n() as i64), a);
        prop_assert!(t.in_base(t.norm(a)));
    }

    #[test]
    fn skew_ring_laws((t, f, g, h) in towers().prop_flat_map(|t| {
        let p = poly(&t, 4);
        (Just(t.clone()), p.clone(), p.clone(), p)
    })) {
        let ring = SkewRing::new(t.clone());
        prop_assert_eq!(ring.mul(&ring.mul(&f, &g), &h), ring.mul(&f, &ring.mul(&g, &h)));
        prop_assert_eq!(ring.mul(&f, &ring.add(&g, &h)), ring.add(&ring.mul(&f, &g), &ring.mul(&f, &h)));
        // t·a = σ(a)·t
        let a = f.coeff(0);
        let t1 = SkewPoly::monomial(Elem::ONE, 1);
        prop_assert_eq!(ring.mul(&t1, &SkewPoly::constant(a)), SkewPoly::monomial(t.frobenius(a, 1), 1));
    }

    #[test]
    fn division_algorithms((t, g, f) in towers().prop_flat_map(|t| {
        (Just(t.clone()), poly(&t, 6), monic(&t, 1..=3))
    })) {
        let ring = SkewRing::new(t.clone());
        let m = f.degree().unwrap();
        let (q, r) = ring.right_divmod(&g, &f).unwrap();
        prop_assert_eq!(ring.add(&ring.mul(&q, &f), &r), g.clone());
        prop_assert!(r.degree().map_or(true, |d| d < m));
        let (q, r) = ring.left_divmod(&g, &f).unwrap();
        prop_assert_eq!(ring.add(&ring.mul(&f, &q), &r), g);
        prop_assert!(r.degree().map_or(true, |d| d < m));
    }

    #[test]
    fn petit_product_matches_division((t, f, x, y) in towers().prop_flat_map(|t| {
        let t2 = t.clone();
        (Just(t.clone()), monic(&t, 2..=3)).prop_flat_map(move |(t, f)| {
            let m = f.degree().unwrap();
            let v = prop::collection::vec(elem(&t2), m);
            (Just(t), Just(f), v.clone(), v)
        })
    })) {
        let alg = PetitAlgebra::from_tower(t.clone(), f).unwrap();
        prop_assert_eq!(alg.mul(&x, &y), alg.mul_by_division(&x, &y));
        prop_assert_eq!(alg.mul(&alg.one(), &x), x.clone());
        prop_assert_eq!(alg.mul(&x, &alg.one()), x);
    }

    #[test]
    fn h_maps_compose_by_formula((t, f, j1, k1, j2, k2) in towers().prop_flat_map(|t| {
        let n = t.n();
        let u = (1..t.size()).prop_map(Elem);
        (Just(t.clone()), monic(&t, 2..=3), 0..n, u.clone(), 0..n, u)
    })) {
        let alg = PetitAlgebra::from_tower(t.clone(), f).unwrap();
        let p = t.p();
        let (j, k) = h_compose(&alg, (j1, k1), (j2, k2));
        prop_assert_eq!(h_map(&alg, j1, k1).compose(&h_map(&alg, j2, k2), p), h_map(&alg, j, k));
    }

    #[test]
    fn structured_automorphisms_form_verified_group((t, f) in towers().prop_flat_map(|t| {
        (Just(t.clone()), monic(&t, 2..=2))
    })) {
        let alg = PetitAlgebra::from_tower(t.clone(), f).unwrap();
        prop_assume!(alg.is_proper_semifield());
        let sol = structured_automorphisms(&alg).unwrap();
        let checker = MulChecker::new(&alg, &alg);
        prop_assert!(sol.maps.iter().all(|m| checker.is_isomorphism(&m.matrix)));
        let g = semifield::Group::from_maps(semifield::aut::matrices(&sol.maps), t.p()).unwrap();
        prop_assert_eq!(g.order(), sol.maps.len());
    }

    #[test]
    fn iso_is_symmetric_and_witnesses_verify((t, f, g) in towers().prop_flat_map(|t| {
        (Just(t.clone()), monic(&t, 2..=2), monic(&t, 2..=2))
    })) {
        let fa = PetitAlgebra::from_tower(t.clone(), f).unwrap();
        let ga = PetitAlgebra::from_tower(t.clone(), g).unwrap();
        prop_assume!(fa.is_proper_semifield() && ga.is_proper_semifield());
        let fg = iso_test(&fa, &ga).unwrap();
        let gf = iso_test(&ga, &fa).unwrap();
        prop_assert_eq!(fg.is_iso(), gf.is_iso());
        if let IsoVerdict::Isomorphic(w) = fg {
            prop_assert!(MulChecker::new(&fa, &ga).is_isomorphism(&w.matrix));
        }
        prop_assert!(iso_test(&fa, &fa).unwrap().is_iso());
    }
}

#[test]
fn classes_partition_k_minus_f() {
    for (p, r, n) in TOWERS {
        let t = FieldTower::new(p, r, n).unwrap();
        let rep = classify_cyclic(&t);
        let total: u64 = rep.classes.iter().map(|c| c.size).sum();
        assert_eq!(total, t.size() as u64 - t.q());
        let reps: Vec<u32> = rep.classes.iter().map(|c| c.representative.0).collect();
        assert!(reps.windows(2).all(|w| w[0] < w[1]));
    }
}
