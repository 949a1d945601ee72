mod common;

use common::*;
use cpair_core::algebra::{RatFun, RfMatrix};
use cpair_core::connection::christoffel;
use cpair_core::exterior::{Form, SpaceRef, VectorField};
use cpair_core::fixture::load_bundled;
use cpair_core::pair::VerifiedPair;
use cpair_core::structure::{build_phi, is_decomposable, verify_structure, ContactPairStructure, SubbundleComplexStructure};
use proptest::prelude::*;
use rand::Rng;

fn space_for(seed: u64, frame: bool) -> SpaceRef {
    if frame {
        nilpotent_frame(&mut rng(seed ^ 0x5eed), 5, 3)
    } else {
        chart3()
    }
}

fn random_form(r: &mut rand_chacha::ChaCha8Rng, s: &SpaceRef, p: usize) -> Form {
    if s.is_chart() {
        form(r, s, p)
    } else {
        let terms: Vec<(Vec<usize>, RatFun)> = cpair_core::exterior::multi::index_tuples(s.dim(), p)
            .into_iter()
            .map(|t| (t, RatFun::from_int(r.random_range(-2..=2))))
            .collect();
        Form::from_terms(s, p, terms).unwrap()
    }
}

fn random_field(r: &mut rand_chacha::ChaCha8Rng, s: &SpaceRef) -> VectorField {
    if s.is_chart() {
        field(r, s)
    } else {
        constant_field(r, s)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ratfun_field_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (poly(&mut r, 3, 3, 2), poly(&mut r, 3, 3, 2), poly(&mut r, 3, 3, 2));
        let q = match b.recip() { Some(inv) => &a * &inv, None => a.clone() };
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&q * &b) * &c, &q * &(&b * &c));
        prop_assert_eq!(&q * &(&b + &c), &(&q * &b) + &(&q * &c));
        prop_assert_eq!(&q - &q, RatFun::zero());
        if let Some(inv) = q.recip() {
            prop_assert!((&q * &inv).is_one());
        }
    }

    #[test]
    fn gcd_recovers_common_factors(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (poly(&mut r, 3, 3, 2), poly(&mut r, 3, 3, 2), poly(&mut r, 3, 2, 2));
        let (a, b, c) = (a.numer().clone(), b.numer().clone(), c.numer().clone());
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        let g = (&a * &c).gcd(&(&b * &c));
        prop_assert!(g.div_exact(&c).is_some(), "gcd {:?} misses {:?}", g, c);
        prop_assert!((&a * &c).div_exact(&g).is_some() && (&b * &c).div_exact(&g).is_some());
    }

    #[test]
    fn d_squared_vanishes(seed in any::<u64>(), frame in any::<bool>(), p in 0usize..3) {
        let s = space_for(seed, frame);
        let w = random_form(&mut rng(seed), &s, p);
        prop_assert!(w.ext_d().ext_d().is_zero());
    }

    #[test]
    fn leibniz_rule(seed in any::<u64>(), frame in any::<bool>(), p in 0usize..3) {
        let s = space_for(seed, frame);
        let mut r = rng(seed);
        let a = random_form(&mut r, &s, p);
        let b = random_form(&mut r, &s, 1);
        let lhs = a.wedge(&b).unwrap().ext_d();
        let second = a.wedge(&b.ext_d()).unwrap();
        let first = a.ext_d().wedge(&b).unwrap();
        let rhs = if p % 2 == 0 { first.add(&second) } else { first.sub(&second) }.unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cartan_formula(seed in any::<u64>(), frame in any::<bool>(), p in 1usize..3) {
        let s = space_for(seed, frame);
        let mut r = rng(seed);
        let w = random_form(&mut r, &s, p);
        let x = random_field(&mut r, &s);
        let rhs = w.ext_d().interior(&x).unwrap().add(&w.interior(&x).unwrap().ext_d()).unwrap();
        prop_assert_eq!(w.lie_derivative(&x).unwrap(), rhs);
    }

    #[test]
    fn bracket_jacobi(seed in any::<u64>(), frame in any::<bool>()) {
        let s = space_for(seed, frame);
        let mut r = rng(seed);
        let (x, y, z) = (random_field(&mut r, &s), random_field(&mut r, &s), random_field(&mut r, &s));
        let j = x.bracket(&y.bracket(&z).unwrap()).unwrap()
            .add(&y.bracket(&z.bracket(&x).unwrap()).unwrap()).unwrap()
            .add(&z.bracket(&x.bracket(&y).unwrap()).unwrap()).unwrap();
        prop_assert!(j.is_zero());
        prop_assert_eq!(x.bracket(&y).unwrap(), y.bracket(&x).unwrap().scale(&RatFun::from_int(-1)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn levi_civita_on_charts(seed in any::<u64>()) {
        let s = chart3();
        let mut r = rng(seed);
        let g = chart_metric(&mut r, &s);
        let cd = christoffel(&g).unwrap();
        prop_assert!(cd.check_torsion_free().is_verified());
        prop_assert!(cd.check_metric_compatibility(&g).is_verified());
        let (x, y, w) = (affine_field(&mut r, &s), affine_field(&mut r, &s), affine_field(&mut r, &s));
        prop_assert!(cd.torsion(&x, &y).unwrap().is_zero());
        let lhs = x.derive(&g.apply(&y, &w).unwrap());
        let rhs = &g.apply(&cd.covariant_derivative(&x, &y).unwrap(), &w).unwrap() + &g.apply(&y, &cd.covariant_derivative(&x, &w).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn levi_civita_on_frames(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = nilpotent_frame(&mut r, 5, 3);
        let g = spd_metric(&mut r, &s);
        let cd = christoffel(&g).unwrap();
        prop_assert!(cd.check_torsion_free().is_verified());
        prop_assert!(cd.check_metric_compatibility(&g).is_verified());
        let (x, y, w) = (constant_field(&mut r, &s), constant_field(&mut r, &s), constant_field(&mut r, &s));
        let rhs = &g.apply(&cd.covariant_derivative(&x, &y).unwrap(), &w).unwrap() + &g.apply(&y, &cd.covariant_derivative(&x, &w).unwrap()).unwrap();
        prop_assert!(rhs.is_zero());
    }
}

/// Unit lower-triangular integer matrix, optionally block diagonal.
fn unimodular(r: &mut rand_chacha::ChaCha8Rng, m: usize, blocks: Option<usize>) -> RfMatrix {
    RfMatrix::from_fn(m, m, |i, j| {
        let same_block = blocks.is_none_or(|b| (i < b) == (j < b));
        if i == j {
            RatFun::one()
        } else if i > j && same_block {
            RatFun::from_int(r.random_range(-2..=2))
        } else {
            RatFun::zero()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn build_phi_gives_a_structure(seed in any::<u64>(), fixture in prop::sample::select(vec!["local_model_1_1", "nilpotent_g6", "r6_example"]), split in any::<bool>()) {
        let m = load_bundled(fixture).unwrap();
        let vp = VerifiedPair::new(m.pair.clone()).unwrap();
        let frame = vp.tg_sum();
        let n1 = vp.tg(1).len();
        let mut r = rng(seed);
        let p = unimodular(&mut r, frame.len(), split.then_some(n1));
        let j0 = SubbundleComplexStructure::standard_blocks(frame.clone()).unwrap();
        let j = &(&p * j0.matrix()) * &p.inverse().unwrap();
        let j = SubbundleComplexStructure::new(frame, j).unwrap();
        let phi = build_phi(&vp, &j).unwrap();
        prop_assert!(verify_structure(&vp, &phi).all().is_verified());
        if split {
            let cps = ContactPairStructure::new(vp, phi).unwrap();
            prop_assert!(is_decomposable(&cps).is_verified());
        }
    }
}
