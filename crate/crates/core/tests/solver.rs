use critpoint::critical::*;
use critpoint::homotopy::*;
use critpoint::poly::*;
use num::complex::Complex64;
use num::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TROTT: &str = "144*x1^4+144*x2^4-225*x1^2-225*x2^2+350*x1^2*x2^2+81";

fn ev(p: &Polynomial, x: &[Complex64]) -> Complex64 {
    p.evaluate(x).unwrap()
}

fn dist2(u: &[Rational]) -> impl Fn(&[f64]) -> Option<f64> + '_ {
    move |x| Some(x.iter().zip(u).map(|(a, b)| (a - b.to_f64().unwrap()).powi(2)).sum())
}

fn trott_counts(u: [Rational; 2], form: EdForm) -> (usize, usize) {
    let r = Ring::standard(2);
    let f = parse(TROTT, &r).unwrap();
    let m = ModelSpec::new(vec![f.clone()], 1).unwrap();
    let sys = build_ed_system_with(&m, &u, form).unwrap();
    let set = solve(&sys, &TrackerConfig::default()).unwrap();
    let (f1, f2) = (f.differentiate(0), f.differentiate(1));
    let uf: Vec<f64> = u.iter().map(|v| v.to_f64().unwrap()).collect();
    for s in &set.solutions {
        assert!(s.residual < 1e-8);
        let x = s.head(2);
        // on the curve, and x - u parallel to the gradient
        let scale = 1.0 + x.iter().map(|z| z.norm()).fold(0.0, f64::max).powi(4);
        assert!(ev(&f, x).norm() < 1e-8 * scale);
        let par = (x[0] - uf[0]) * ev(&f2, x) - (x[1] - uf[1]) * ev(&f1, x);
        assert!(par.norm() < 1e-7 * scale, "{par}");
    }
    (set.len(), set.count_real())
}

#[test]
fn trott_curve_counts() {
    for form in [EdForm::Auto, EdForm::Multiplier] {
        assert_eq!(trott_counts([rat(7, 8), rat(1, 100)], form), (16, 10));
        assert_eq!(trott_counts([int(2), rat(1, 100)], form), (16, 12));
        assert_eq!(trott_counts([rat(1, 50), rat(1, 70)], form), (16, 8));
    }
}

#[test]
fn circle_minimizer() {
    let r = Ring::standard(2);
    let m = ModelSpec::new(vec![parse("x1^2 + x2^2 - 1", &r).unwrap()], 1).unwrap();
    let u = [int(2), int(0)];
    let set = solve(&build_ed_system(&m, &u).unwrap(), &TrackerConfig::default()).unwrap();
    assert_eq!(set.len(), 2);
    let best = set.select_minimizer(dist2(&u)).unwrap();
    assert!((best.point[0].re - 1.0).abs() < 1e-10 && best.point[1].re.abs() < 1e-10);
}

#[test]
fn space_curve_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let r3 = Ring::standard(3);
    for (d1, d2) in [(2u64, 2u64), (2, 3), (3, 3)] {
        let f1 = random::dense_poly(&r3, d1 as u32, false, &mut rng);
        let f2 = random::dense_poly(&r3, d2 as u32, false, &mut rng);
        let m = ModelSpec::new(vec![f1.clone(), f2.clone()], 2).unwrap();
        let u = random::rational_vector(3, &mut rng);
        let set = solve(&build_ed_system(&m, &u).unwrap(), &TrackerConfig::default()).unwrap();
        let want = d1 * d2 * (d1 + d2 - 1);
        assert_eq!(set.len() as u64, want);
        // degree d and genus from the plane-section count
        let (d, g) = (d1 * d2, d1 * d2 * (d1 + d2 - 4) / 2 + 1);
        assert_eq!(3 * d + 2 * g - 2, want);
        let uf: Vec<Complex64> = u.iter().map(|v| Complex64::new(v.to_f64().unwrap(), 0.0)).collect();
        for s in &set.solutions {
            let x = s.head(3);
            let g1: Vec<Complex64> = (0..3).map(|i| ev(&f1.differentiate(i), x)).collect();
            let g2: Vec<Complex64> = (0..3).map(|i| ev(&f2.differentiate(i), x)).collect();
            let v: Vec<Complex64> = (0..3).map(|i| x[i] - uf[i]).collect();
            let det = v[0] * (g1[1] * g2[2] - g1[2] * g2[1]) - v[1] * (g1[0] * g2[2] - g1[2] * g2[0])
                + v[2] * (g1[0] * g2[1] - g1[1] * g2[0]);
            let scale = 1.0 + x.iter().map(|z| z.norm()).fold(0.0, f64::max).powi(6);
            assert!(det.norm() < 1e-7 * scale, "{det}");
            assert!(ev(&f1, x).norm() < 1e-8 * scale && ev(&f2, x).norm() < 1e-8 * scale);
        }
    }
}

#[test]
fn polar_degrees_of_surfaces() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let r3 = Ring::standard(3);
    for (d, want) in [(2u32, [2usize, 2, 2]), (3, [12, 6, 3])] {
        let f = random::dense_poly(&r3, d, false, &mut rng);
        let m = ModelSpec::new(vec![f], 1).unwrap();
        let mut got = [0; 3];
        for i in 1..=3 {
            let sys = build_linear_section_system(&m, i, &mut rng).unwrap();
            got[i - 1] = solve(&sys, &TrackerConfig::default()).unwrap().len();
        }
        assert_eq!(got, want);
        let d = d as usize;
        assert_eq!(got.iter().sum::<usize>(), d * d * d - d * d + d);
    }
}

/// Root of a decreasing function on (0, 1) by bisection.
fn bisect(f: impl Fn(f64) -> f64) -> f64 {
    let (mut lo, mut hi) = (1e-15, 1.0 - 1e-15);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn mle(model: &ModelSpec, u: &[Rational]) -> Vec<f64> {
    let set = solve(&build_discrete_mle(model, u).unwrap(), &TrackerConfig::default()).unwrap();
    assert_eq!(set.len(), 1);
    set.select_minimizer(negative_log_likelihood(u)).unwrap().real_parts()[..u.len()].to_vec()
}

#[test]
fn independence_model_mle() {
    let p4 = Ring::with_prefix("p", 4);
    let m = ModelSpec::new(vec![parse("p1*p4 - p2*p3", &p4).unwrap()], 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut data = vec![[int(4), int(2), int(2), int(1)]];
    for _ in 0..3 {
        let v = random::positive_vector(4, &mut rng);
        data.push([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]);
    }
    for u in data {
        let p = mle(&m, &u);
        let cf = closed_form_mle_independence(&u).unwrap();
        // p = (ab, a(1-b), (1-a)b, (1-a)(1-b)); the likelihood splits over a and b
        let uf: Vec<f64> = u.iter().map(|v| v.to_f64().unwrap()).collect();
        let a = bisect(|a| (uf[0] + uf[1]) / a - (uf[2] + uf[3]) / (1.0 - a));
        let b = bisect(|b| (uf[0] + uf[2]) / b - (uf[1] + uf[3]) / (1.0 - b));
        let oracle = [a * b, a * (1.0 - b), (1.0 - a) * b, (1.0 - a) * (1.0 - b)];
        for j in 0..4 {
            assert!((p[j] - cf[j].to_f64().unwrap()).abs() < 1e-10);
            assert!((p[j] - oracle[j]).abs() < 1e-10);
        }
    }
    let cf = closed_form_mle_independence(&[int(4), int(2), int(2), int(1)]).unwrap();
    assert_eq!(cf, [rat(36, 81), rat(18, 81), rat(18, 81), rat(9, 81)]);
}

#[test]
fn coin_model_mle() {
    let p3 = Ring::with_prefix("p", 3);
    let m = ModelSpec::new(vec![parse("p1*p3 - p1*p2 - p2^2", &p3).unwrap()], 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..4 {
        let v = random::positive_vector(3, &mut rng);
        let u = [v[0].clone(), v[1].clone(), v[2].clone()];
        let p = mle(&m, &u);
        let cf = closed_form_mle_coin(&u).unwrap();
        // s ↦ (s², s(1-s), 1-s)
        let uf: Vec<f64> = u.iter().map(|v| v.to_f64().unwrap()).collect();
        let s = bisect(|s| (2.0 * uf[0] + uf[1]) / s - (uf[1] + uf[2]) / (1.0 - s));
        let oracle = [s * s, s * (1.0 - s), 1.0 - s];
        for j in 0..3 {
            assert!((p[j] - cf[j].to_f64().unwrap()).abs() < 1e-10);
            assert!((p[j] - oracle[j]).abs() < 1e-10);
        }
    }
}

#[test]
fn discrete_space_curve() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let p4 = Ring::with_prefix("p", 4);
    let f1 = random::dense_poly(&p4, 2, true, &mut rng);
    let f2 = random::dense_poly(&p4, 2, true, &mut rng);
    let m = ModelSpec::new(vec![f1, f2], 2).unwrap();
    let u = random::positive_vector(4, &mut rng);
    let set = solve(&build_discrete_mle(&m, &u).unwrap(), &TrackerConfig::default()).unwrap();
    assert_eq!(set.len(), 2 * 2 * (2 + 2 + 1));
    for s in &set.solutions {
        assert!(s.head(4).iter().all(|z| z.norm() > 1e-8));
    }
}

#[test]
fn cegm_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (k, m, want) in [(2, 5, 2), (2, 6, 6), (3, 5, 2)] {
        let u = random_mandelstam(k, m, &mut rng).unwrap();
        let sys = build_cegm_scattering(k, m, &u).unwrap();
        let set = solve(&sys, &TrackerConfig::default()).unwrap();
        assert_eq!(set.len(), want, "k={k} m={m}");
        let minors = cegm_minors(k, m).unwrap();
        for s in &set.solutions {
            assert!(minors.iter().all(|(_, p)| ev(p, &s.point).norm() > 1e-8));
            assert!(scattering_residual(k, m, &u, &s.point).unwrap() < 1e-8);
        }
    }
}

#[test]
fn seeds_change_paths_not_answers() {
    let r = Ring::standard(2);
    let m = ModelSpec::new(vec![parse(TROTT, &r).unwrap()], 1).unwrap();
    let sys = build_ed_system(&m, &[rat(7, 8), rat(1, 100)]).unwrap();
    let a = solve(&sys, &TrackerConfig::with_seed(0)).unwrap();
    let b = solve(&sys, &TrackerConfig::with_seed(99)).unwrap();
    assert_eq!(a.len(), b.len());
    for (x, y) in a.solutions.iter().zip(&b.solutions) {
        for (p, q) in x.point.iter().zip(&y.point) {
            assert!((p - q).norm() < 1e-8);
        }
    }
}
