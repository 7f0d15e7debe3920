use ideal_space::idealspace::{
    change_transversal_restrict, change_transversal_section, ideal_from_points,
    monomial_transversal, quotient_algebra, subspace_distance, wspec_from_algebra,
};
use ideal_space::kergin::InterpolationOperator;
use ideal_space::polycalc::multi_index::below_degree;
use ideal_space::polycalc::{MultiIndex, MultivariatePolynomial};
use ideal_space::{Tolerances, WeightedConfig};
use proptest::prelude::*;

fn polynomial(m: usize, max_deg: u32) -> impl Strategy<Value = MultivariatePolynomial> {
    let exps = prop::collection::vec(0..=max_deg, m);
    prop::collection::vec((exps, -2.0..2.0f64), 1..6).prop_map(move |terms| {
        MultivariatePolynomial::from_terms(
            m,
            terms.into_iter().map(|(a, c)| (MultiIndex::new(a), c)),
        )
        .unwrap()
    })
}

fn point(m: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0..1.0f64, m)
}

fn separated(points: &[Vec<f64>], gap: f64) -> bool {
    points.iter().enumerate().all(|(i, p)| {
        points[..i].iter().all(|q| {
            p.iter()
                .zip(q)
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
                .sqrt()
                > gap
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn evaluation_is_a_ring_homomorphism(p in polynomial(2, 3), q in polynomial(2, 3), x in point(2)) {
        let (a, b) = (p.eval(&x).unwrap(), q.eval(&x).unwrap());
        let scale = 1.0 + a.abs() * b.abs() + a.abs() + b.abs();
        prop_assert!(((&p * &q).eval(&x).unwrap() - a * b).abs() < 1e-12 * scale);
        prop_assert!(((&p + &q).eval(&x).unwrap() - (a + b)).abs() < 1e-12 * scale);
    }

    #[test]
    fn interpolation_is_a_projector(
        pts in prop::collection::vec(point(2), 1..4),
        weights in prop::collection::vec(1u32..3, 3),
        f in polynomial(2, 4),
    ) {
        prop_assume!(separated(&pts, 0.3));
        let clusters = pts.iter().zip(&weights).map(|(p, &k)| (p.clone(), k)).collect();
        let config = WeightedConfig::new(clusters).unwrap();
        let n = config.clusters().iter().map(|c| c.1).sum();
        let op = InterpolationOperator::with_default_complement(config.coalesced_tuples(), &below_degree(2, n), &Tolerances::default()).unwrap();
        let once = op.interpolate(&f).unwrap();
        let twice = op.interpolate(&once).unwrap();
        let diff = (&twice - &once).max_abs_coeff();
        prop_assert!(diff <= 1e-9 * (1.0 + once.max_abs_coeff()), "{diff}");
        prop_assert!(op.jet_residual(&f).unwrap() < 1e-7);
    }

    #[test]
    fn interpolation_ignores_point_order(
        pts in prop::collection::vec(point(2), 2..5),
        f in polynomial(2, 3),
        rotate in 0usize..4,
    ) {
        prop_assume!(separated(&pts, 0.3));
        let tol = Tolerances::default();
        let config = WeightedConfig::from_points(&pts).unwrap();
        let op = InterpolationOperator::with_default_complement(config.coalesced_tuples(), &below_degree(2, pts.len() as u32), &tol).unwrap();
        let mut tuples = config.coalesced_tuples();
        let r = rotate % tuples.len();
        tuples.rotate_left(r);
        let permuted = InterpolationOperator::from_tuples(tuples, op.basis().to_vec(), &tol).unwrap();
        let a = op.interpolate(&f).unwrap();
        let b = permuted.interpolate(&f).unwrap();
        prop_assert!((&a - &b).max_abs_coeff() <= 1e-9 * (1.0 + a.max_abs_coeff()));
    }

    #[test]
    fn configurations_are_canonical(pts in prop::collection::vec(point(2), 1..6), seed in any::<u64>()) {
        let mut shuffled = pts.clone();
        let n = shuffled.len();
        for i in (1..n).rev() {
            shuffled.swap(i, (seed as usize >> (i % 32)) % (i + 1));
        }
        let a = WeightedConfig::from_points(&pts).unwrap();
        let b = WeightedConfig::from_points(&shuffled).unwrap();
        prop_assert_eq!(a.clusters(), b.clusters());
        prop_assert_eq!(a.clusters().iter().map(|c| c.1).sum::<u32>() as usize, n);
    }

    #[test]
    fn point_ideals_are_certified_and_recover_their_points(pts in prop::collection::vec(point(2), 1..4)) {
        prop_assume!(separated(&pts, 0.3));
        let tol = Tolerances::default();
        let f = monomial_transversal(2, 3).unwrap();
        let p = ideal_from_points(&f, &pts, &tol).unwrap();
        prop_assert!(p.certified());
        prop_assert_eq!(p.codim(), pts.len());
        prop_assert!(subspace_distance(p.subspace(), p.subspace()).unwrap() < 1e-12);

        let q = quotient_algebra(&p, &tol).unwrap();
        prop_assert!(q.is_commutative());
        let y = wspec_from_algebra(&q, &tol).unwrap();
        let expected = WeightedConfig::from_points(&pts).unwrap();
        prop_assert!(y.distance_to(&expected).unwrap() < 1e-7);
    }

    #[test]
    fn subspace_distance_is_symmetric(a in prop::collection::vec(point(1), 1..4), b in prop::collection::vec(point(1), 1..4)) {
        prop_assume!(separated(&a, 0.2) && separated(&b, 0.2) && a.len() == b.len());
        let tol = Tolerances::default();
        let f = monomial_transversal(1, 4).unwrap();
        let p = ideal_from_points(&f, &a, &tol).unwrap();
        let q = ideal_from_points(&f, &b, &tol).unwrap();
        let d = subspace_distance(p.subspace(), q.subspace()).unwrap();
        let e = subspace_distance(q.subspace(), p.subspace()).unwrap();
        prop_assert!((d - e).abs() < 1e-12);
        prop_assert!((0.0..=std::f64::consts::FRAC_PI_2 + 1e-12).contains(&d));
    }

    #[test]
    fn transversal_change_round_trips(pts in prop::collection::vec(point(1), 1..3)) {
        prop_assume!(separated(&pts, 0.3));
        let tol = Tolerances::default();
        let small = monomial_transversal(1, 3).unwrap();
        let big = monomial_transversal(1, 5).unwrap();
        let p = ideal_from_points(&small, &pts, &tol).unwrap();
        let lifted = change_transversal_section(&big, &p, &tol).unwrap();
        prop_assert!(lifted.certified());
        let direct = ideal_from_points(&big, &pts, &tol).unwrap();
        prop_assert!(subspace_distance(lifted.subspace(), direct.subspace()).unwrap() < 1e-9);
        let back = change_transversal_restrict(&small, &lifted, &tol).unwrap();
        prop_assert!(subspace_distance(back.subspace(), p.subspace()).unwrap() < 1e-9);
    }
}
