use fkpp_core::kernel::{green_spatial, green_spectral};
use fkpp_core::spectral::{convolve_direct, convolve_spectral, Transform};
use fkpp_core::successive::FunctionalSequence;
use fkpp_core::zeroth::{binomial_series_spectral, first_order_spectral, zeroth_spectral, zeta};
use fkpp_core::{Axis, ModelParams, SpaceTimeGrid};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = ModelParams> {
    (0.2..4.0_f64, 0.2..4.0_f64, -0.5..0.5_f64).prop_map(|(d, b, r)| ModelParams::new(d, b, r).unwrap())
}

fn signal(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0..10.0_f64, n)
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transform_round_trip(v in signal(64), start in -5.0..0.0_f64, width in 1.0..20.0_f64) {
        let axis = Axis::periodic(start, start + width, 64).unwrap();
        let tr = Transform::new(axis).unwrap();
        let back = tr.inverse(&tr.forward(&v).unwrap()).unwrap();
        let err = v.iter().zip(&back).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
        prop_assert!(err <= 1e-12 * max_abs(&v).max(1.0), "{err:e}");
    }

    #[test]
    fn parseval(v in signal(128), width in 1.0..30.0_f64) {
        let axis = Axis::periodic(-width / 2.0, width / 2.0, 128).unwrap();
        let spec = Transform::new(axis).unwrap().forward(&v).unwrap();
        let space: f64 = v.iter().map(|x| x * x).sum::<f64>() * axis.step();
        let freq: f64 = spec.iter().map(|z| z.norm_sqr()).sum::<f64>() * axis.frequency_step();
        prop_assert!((space - freq).abs() <= 1e-12 * space.max(1.0));
    }

    #[test]
    fn direct_convolution_commutes(f in signal(48), g in signal(48)) {
        let axis = Axis::periodic(-3.0, 3.0, 48).unwrap();
        let fg = convolve_direct(&axis, &f, &g).unwrap().values;
        let gf = convolve_direct(&axis, &g, &f).unwrap().values;
        let scale = max_abs(&fg).max(1.0);
        for (a, b) in fg.iter().zip(&gf) {
            prop_assert!((a - b).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn spectral_convolution_is_linear(f in signal(32), g in signal(32), h in signal(32), c in -3.0..3.0_f64) {
        let axis = Axis::periodic(-2.0, 2.0, 32).unwrap();
        let mixed: Vec<f64> = g.iter().zip(&h).map(|(a, b)| a + c * b).collect();
        let lhs = convolve_spectral(&axis, &f, &mixed).unwrap();
        let a = convolve_spectral(&axis, &f, &g).unwrap();
        let b = convolve_spectral(&axis, &f, &h).unwrap();
        let scale = max_abs(&lhs).max(max_abs(&a)).max(1.0);
        for i in 0..32 {
            prop_assert!((lhs[i] - a[i] - c * b[i]).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn green_semigroup(p in params(), t1 in 0.2..1.0_f64, t2 in 0.2..1.0_f64) {
        // G(t1) * G(t2) = G(t1 + t2), including the exp(-bt) decay
        let half = 12.0 * (p.d() * (t1 + t2)).sqrt().max(1.0);
        let axis = Axis::periodic(-half, half, 1024).unwrap();
        let g = |t: f64| axis.points().map(|x| green_spatial(&p, x, t).unwrap()).collect::<Vec<_>>();
        let conv = convolve_direct(&axis, &g(t1), &g(t2)).unwrap().values;
        let want = g(t1 + t2);
        let err = conv.iter().zip(&want).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
        prop_assert!(err <= 1e-6 * max_abs(&want), "{err:e}");
    }

    #[test]
    fn spectral_semigroup(p in params(), s in -5.0..5.0_f64, t1 in 0.0..2.0_f64, t2 in 0.0..2.0_f64) {
        let lhs = green_spectral(&p, s, t1) * green_spectral(&p, s, t2);
        let rhs = green_spectral(&p, s, t1 + t2);
        prop_assert!((lhs - rhs).abs() <= 1e-15 + 1e-13 * rhs);
    }

    #[test]
    fn first_order_starts_at_one(p in params(), s in -50.0..50.0_f64) {
        prop_assert_eq!(first_order_spectral(&p, s, 0.0), 1.0);
    }

    #[test]
    fn series_within_truncation_bound(p in params(), s in -2.0..2.0_f64, t in 0.0..3.0_f64, order in 0usize..20) {
        let q = (p.r() * zeta(&p, s, t)).abs();
        prop_assume!(q < 0.9);
        let g = green_spectral(&p, s, t);
        let series = binomial_series_spectral(&p, s, t, order).unwrap();
        let exact = zeroth_spectral(&p, s, t).unwrap();
        let bound = g * q.powi(order as i32 + 1) / (1.0 - q);
        prop_assert!((series - exact).abs() <= bound * (1.0 + 1e-9) + 1e-14, "{} > {bound:e}", (series - exact).abs());
    }

    #[test]
    fn successive_factors_at_least_one(r in 0.01..0.3_f64, b in 0.7..2.0_f64) {
        let p = ModelParams::new(1.0, b, r).unwrap();
        let grid = SpaceTimeGrid::new(-3.0, 3.0, 16, 0.0, 1.0, 129).unwrap();
        let mut seq = FunctionalSequence::new(p, grid).unwrap().with_quadrature_tolerance(f64::INFINITY);
        seq.push_unit().unwrap();
        seq.push_unit().unwrap();
        for member in &seq.members()[1..] {
            for z in member.values() {
                prop_assert!(z.re >= 1.0 - 1e-12, "{}", z.re);
            }
        }
    }
}
