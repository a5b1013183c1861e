use proptest::prelude::*;
use swcalc::chambers::{classify_chamber, is_c_good, ChamberSide, PeriodRay};
use swcalc::rational::{q, ratio, Q};
use swcalc::topology::{ManifoldTopology, Sign, TripleCup};

/// `<1> ⊕ <−1> ⊕ <−1>`: b₊ = 1, b₋ = 2, every vector is characteristic mod w2 = (1,1,1).
fn blowup() -> ManifoldTopology {
    ManifoldTopology {
        name: "CP2#2CP2bar".into(),
        b1: 0,
        bplus: 1,
        bminus: 2,
        euler: 5,
        signature: -1,
        form: vec![vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]],
        w2: vec![true, true, true],
        tors2_order: 1,
        triple_cup: TripleCup::zeros(0, 3),
    }
}

fn odd() -> impl Strategy<Value = i64> {
    (-6i64..6).prop_map(|x| 2 * x + 1)
}

fn rat() -> impl Strategy<Value = Q> {
    (-20i64..20, 1i64..5).prop_map(|(n, d)| ratio(n, d))
}

fn positive_ray() -> impl Strategy<Value = Vec<Q>> {
    // h = (t, x, y) with t² > x² + y².
    (rat(), rat(), 1i64..4).prop_map(|(x, y, s)| {
        let t = num_abs(&x) + num_abs(&y) + q(s);
        vec![t, x, y]
    })
}

fn num_abs(x: &Q) -> Q {
    if *x < q(0) {
        -x.clone()
    } else {
        x.clone()
    }
}

proptest! {
    #[test]
    fn scale_and_flip(c in (odd(), odd(), odd()), b in proptest::collection::vec(rat(), 3),
                      h in positive_ray(), k in 1i64..7) {
        let m = blowup();
        let c = m.characteristic(vec![c.0, c.1, c.2]).unwrap();
        let ray = PeriodRay::new(&m, h.clone(), Sign::Plus).unwrap();
        let scaled = PeriodRay::new(&m, h.iter().map(|x| x * q(k)).collect(), Sign::Plus).unwrap();
        let neg = PeriodRay::new(&m, h.iter().map(|x| -x).collect(), Sign::Plus).unwrap();
        let side = classify_chamber(&m, &c, &ray, &b).unwrap();
        prop_assert_eq!(classify_chamber(&m, &c, &scaled, &b).unwrap(), side);
        prop_assert_eq!(classify_chamber(&m, &c, &neg, &b).unwrap(), side.flip());
        prop_assert_eq!(is_c_good(&m, &c, &ray, &b).unwrap(), side != ChamberSide::OnWall);
    }

    #[test]
    fn wall_is_affine_hyperplane(c in (odd(), odd(), odd()), h in positive_ray(),
                                 u in proptest::collection::vec(rat(), 2),
                                 v in proptest::collection::vec(rat(), 2),
                                 t in 0i64..=8) {
        let m = blowup();
        let cvec = vec![c.0, c.1, c.2];
        let c = m.characteristic(cvec.clone()).unwrap();
        let ray = PeriodRay::new(&m, h.clone(), Sign::Plus).unwrap();
        // Solve (c − b)·Q·h = 0 for b₀ given free b₁, b₂. Q·h = (h₀, −h₁, −h₂).
        let on_wall = |free: &[Q]| -> Vec<Q> {
            let rest = (q(cvec[1]) - &free[0]) * -&h[1] + (q(cvec[2]) - &free[1]) * -&h[2];
            let b0 = q(cvec[0]) + rest / &h[0];
            vec![b0, free[0].clone(), free[1].clone()]
        };
        let b = on_wall(&u);
        let b2 = on_wall(&v);
        prop_assert_eq!(classify_chamber(&m, &c, &ray, &b).unwrap(), ChamberSide::OnWall);
        let s = ratio(t, 8);
        let mix: Vec<Q> = b.iter().zip(&b2).map(|(x, y)| &s * x + (q(1) - &s) * y).collect();
        prop_assert_eq!(classify_chamber(&m, &c, &ray, &mix).unwrap(), ChamberSide::OnWall);
        prop_assert!(!is_c_good(&m, &c, &ray, &mix).unwrap());
    }
}
