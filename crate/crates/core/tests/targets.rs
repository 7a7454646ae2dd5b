#![allow(clippy::excessive_precision)]

use fnnrhn::data::{grid_points, make_synthetic, split, Dataset, TargetFunction};
use fnnrhn::error::Error;
use fnnrhn::param_gen::rng_from_seed;
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::Rng;

// 50-digit reference values.
const OSC1D: [(f64, f64); 17] = [
    (0.0, 0.0),
    (0.05, 0.0020561561618918501494),
    (0.125, -0.0097251858399114263052),
    (0.2, -0.025911788059031262562),
    (0.25, 0.032548895611828343939),
    (0.3, 0.086147736292197522267),
    (0.375, -0.10334294688421420014),
    (0.4, -0.15999403324328656609),
    (0.45, -0.010056633821383979565),
    (0.5, 0.24998109683268841055),
    (0.55, -0.032468535075290396424),
    (0.625, -0.12812759184371519637),
    (0.7, 0.26262283952636372488),
    (0.75, -0.56106277238549533733),
    (0.875, -0.57702249704253444361),
    (0.9, -0.71185838122600878608),
    (1.0, -0.81836568846785893743),
];

const PEAKS: [(f64, f64); 17] = [
    (0.0, 2.2507034943851822903e-8),
    (0.05, 9.5702347842580200386e-7),
    (0.125, 0.00010391493643096769635),
    (0.2, 0.0036631615382992534635),
    (0.25, 0.32107984491237286736),
    (0.3, 0.07357592199484086376),
    (0.375, 0.18788261256269515722),
    (0.4, 0.2),
    (0.45, 0.15576021288186831599),
    (0.5, 0.57357588823428846432),
    (0.55, 0.021079901179960198901),
    (0.625, 0.0012659430854971493154),
    (0.7, 0.000024681960817335975665),
    (0.75, 9.5702347842580181792e-7),
    (0.875, 3.1787820189032733057e-11),
    (0.9, 2.7775887729927979514e-12),
    (1.0, 4.6390456604871387766e-17),
];

const OSC2D: [([f64; 2], f64); 6] = [
    ([0.0, 0.0], 0.0),
    ([0.25, 0.75], -0.52851387677366699339),
    ([0.5, 0.5], 0.4999621936653768211),
    ([1.0, 0.3], -0.73221795217566141516),
    ([0.9, 0.1], -0.71297872206733751193),
    ([1.0, 1.0], -1.6367313769357178749),
];

fn close(got: f64, want: f64) -> bool {
    (got - want).abs() <= 1e-12 * want.abs().max(1.0)
}

#[test]
fn matches_reference_values() {
    for (x, want) in OSC1D {
        let got = TargetFunction::Osc1D.eval(&[x]).unwrap();
        assert!(close(got, want), "osc1d({x}) = {got}, want {want}");
    }
    for (x, want) in PEAKS {
        let got = TargetFunction::Peaks1D.eval(&[x]).unwrap();
        assert!(close(got, want), "peaks({x}) = {got}, want {want}");
    }
    for (x, want) in OSC2D {
        let got = TargetFunction::Osc2D.eval(&x).unwrap();
        assert!(close(got, want), "osc2d({x:?}) = {got}, want {want}");
    }
}

#[test]
fn documented_points() {
    assert_eq!(TargetFunction::Osc1D.eval(&[0.0]).unwrap(), 0.0);
    assert_eq!(TargetFunction::Osc2D.eval(&[0.0, 0.0]).unwrap(), 0.0);
    assert!((TargetFunction::Peaks1D.eval(&[0.4]).unwrap() - 0.2).abs() < 1e-12);
    assert!((TargetFunction::Peaks1D.eval(&[0.5]).unwrap() - 0.5736).abs() < 1e-4);
}

fn rewritten(tf: TargetFunction, x: &[f64]) -> f64 {
    let wave = |t: f64| f64::sin(20.0 * f64::exp(t)) * t.powi(2);
    match tf {
        TargetFunction::Osc1D => wave(x[0]),
        TargetFunction::Osc2D => wave(x[1]) + wave(x[0]),
        TargetFunction::Peaks1D => {
            let t = x[0];
            let d1 = 10.0 * (t - 0.4);
            let d2 = 80.0 * (t - 0.5);
            let d3 = 80.0 * (t - 0.25);
            0.3 * f64::exp(-d3 * d3) + 0.5 * f64::exp(-d2 * d2) + 0.2 * f64::exp(-d1 * d1)
        }
    }
}

#[test]
fn agrees_with_rewritten_formulas_at_random_points() {
    let mut rng = rng_from_seed(1000);
    for tf in [TargetFunction::Osc1D, TargetFunction::Osc2D, TargetFunction::Peaks1D] {
        for _ in 0..1000 {
            let x: Vec<f64> = (0..tf.dim()).map(|_| rng.gen::<f64>()).collect();
            let (a, b) = (tf.eval(&x).unwrap(), rewritten(tf, &x));
            assert!(close(a, b), "{tf} at {x:?}: {a} vs {b}");
            assert_eq!(a, tf.eval(&x).unwrap());
        }
    }
}

#[test]
fn outside_domain_rejected() {
    assert!(matches!(TargetFunction::Osc1D.eval(&[1.5]), Err(Error::Contract(_))));
    assert!(matches!(
        TargetFunction::Peaks1D.eval(&[-0.01]),
        Err(Error::Contract(_))
    ));
    assert!(matches!(TargetFunction::Osc2D.eval(&[0.5]), Err(Error::Contract(_))));
}

#[test]
fn noise_free_targets_are_exact() {
    let ds = make_synthetic(TargetFunction::Peaks1D, 1000, 0.0, 3).unwrap();
    for l in 0..ds.len() {
        assert_eq!(ds.y[l], TargetFunction::Peaks1D.eval(&[ds.x[(l, 0)]]).unwrap());
    }
}

fn noise(ds: &Dataset, tf: TargetFunction) -> Vec<f64> {
    (0..ds.len())
        .map(|l| {
            let x: Vec<f64> = ds.x.row(l).iter().copied().collect();
            ds.y[l] - tf.eval(&x).unwrap()
        })
        .collect()
}

#[test]
fn noise_is_bounded_and_centred() {
    let ds = make_synthetic(TargetFunction::Osc1D, 5000, 0.2, 11).unwrap();
    assert!(noise(&ds, TargetFunction::Osc1D).iter().all(|e| e.abs() <= 0.2));
    for tf in [TargetFunction::Osc1D, TargetFunction::Osc2D, TargetFunction::Peaks1D] {
        let ds = make_synthetic(tf, 10_000, 0.2, 12).unwrap();
        let e = noise(&ds, tf);
        let mean = e.iter().sum::<f64>() / e.len() as f64;
        assert!(mean.abs() <= 0.01, "{tf}: noise mean {mean}");
        assert!(ds.x.iter().all(|v| (0.0..=1.0).contains(v)));
    }
    assert_eq!(
        make_synthetic(TargetFunction::Osc2D, 50, 0.2, 4).unwrap(),
        make_synthetic(TargetFunction::Osc2D, 50, 0.2, 4).unwrap()
    );
}

#[test]
fn grids() {
    assert_eq!(
        grid_points(1, 3).unwrap(),
        DMatrix::from_column_slice(3, 1, &[0.0, 0.5, 1.0])
    );
    let g = grid_points(1, 300).unwrap();
    assert_eq!(g.nrows(), 300);
    assert_eq!((g[(0, 0)], g[(299, 0)]), (0.0, 1.0));
    assert!((g[(1, 0)] - 1.0 / 299.0).abs() < 1e-15);
    let g = grid_points(2, 3).unwrap();
    assert_eq!(g.nrows(), 9);
    for corner in [[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]] {
        assert!(g.row_iter().any(|r| r[0] == corner[0] && r[1] == corner[1]));
    }
}

proptest! {
    #[test]
    fn noise_never_exceeds_width(seed in any::<u64>(), w in 0.0f64..1.0, n in 1usize..200) {
        let ds = make_synthetic(TargetFunction::Osc2D, n, w, seed).unwrap();
        prop_assert!(noise(&ds, TargetFunction::Osc2D).iter().all(|e| e.abs() <= w + 1e-15));
    }

    #[test]
    fn split_is_a_partition(n in 2usize..200, f in 0.05f64..0.95, seed in any::<u64>()) {
        let x = DMatrix::from_fn(n, 1, |i, _| i as f64);
        let y = DVector::from_fn(n, |i, _| i as f64);
        let ds = Dataset::new(x, y, vec!["i".into()], "index").unwrap();
        let expected_train = (f * n as f64).round() as usize;
        match split(&ds, f, seed) {
            Ok((a, b)) => {
                prop_assert_eq!(a.len(), expected_train);
                prop_assert_eq!(a.len() + b.len(), n);
                let mut all: Vec<usize> = a.y.iter().chain(b.y.iter()).map(|v| *v as usize).collect();
                all.sort_unstable();
                prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
                prop_assert_eq!(split(&ds, f, seed).unwrap().0, a);
            }
            Err(e) => {
                prop_assert!(matches!(e, Error::Config(_)));
                prop_assert!(expected_train == 0 || expected_train == n);
            }
        }
    }
}
