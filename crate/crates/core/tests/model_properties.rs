mod common;

use common::*;
use rand::Rng;
use roadwidth::model::{classify, eigenvalues, Region, SONIC_TOL};

#[test]
fn eigenvalue_ordering_by_region() {
    let mut r = rng(1);
    for _ in 0..10_000 {
        let g = random_gamma(&mut r);
        let p = params(g);
        let s = random_d1(&mut r, g, 1.0);
        let (l1, l2, l3) = eigenvalues(&s, &p);
        assert!(l1 < l3 && l3 < l2, "D1 ordering fails at {s:?}");
        assert_eq!(classify(&s, &p, SONIC_TOL), Region::D1);

        let s = random_d2(&mut r, g, 1.0);
        let (l1, l2, l3) = eigenvalues(&s, &p);
        assert!(l2 > l1 && l1 > l3, "D2 ordering fails at {s:?}");
        assert_eq!(classify(&s, &p, SONIC_TOL), Region::D2);
    }
}

#[test]
fn positive_states_fall_in_exactly_one_region() {
    let mut r = rng(2);
    for _ in 0..10_000 {
        let g = random_gamma(&mut r);
        let p = params(g);
        let s = st(r.gen_range(1e-6..5.0), r.gen_range(1e-6..3.0), 1.0);
        let gap = s.u - g * s.rho.powf(g);
        let expected = if gap > 0.0 { Region::D2 } else { Region::D1 };
        assert_eq!(classify(&s, &p, 0.0), expected);
    }
}

#[test]
fn lambda1_is_locally_lipschitz() {
    let mut r = rng(3);
    for _ in 0..1000 {
        let g = random_gamma(&mut r);
        let p = params(g);
        let s = st(r.gen_range(0.0..3.0), r.gen_range(0.01..2.0), 1.0);
        let h = 1e-7;
        let t = st(s.u + h, s.rho + h, 1.0);
        let bound = h * (1.0 + g * g * (s.rho + h).powf(g - 1.0)) * 1.01;
        assert!((eigenvalues(&s, &p).0 - eigenvalues(&t, &p).0).abs() <= bound);
    }
}
