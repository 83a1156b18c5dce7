use critpoint::critical::random::{dense_poly, small_rational};
use critpoint::pde::*;
use critpoint::poly::{int, parse, rat, Polynomial, Rational, Ring};
use num::complex::Complex64;
use num::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn x3() -> Ring {
    Ring::standard(3)
}

fn z3() -> Ring {
    Ring::with_prefix("z", 3)
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

/// The three PDE checked with plain polynomial derivatives, bypassing the
/// exponential-polynomial machinery.
fn solves_directly(phi: &Polynomial) -> bool {
    let d = |e: [u32; 3]| phi.differentiate_multi(&e);
    d([2, 0, 0]).is_zero() && d([0, 2, 0]).is_zero() && (&d([1, 0, 1]) - &d([0, 1, 2])).is_zero()
}

fn random_univariate(rng: &mut ChaCha8Rng) -> Polynomial {
    let t = Ring::new(["t"]);
    let deg = rng.random_range(0..=5);
    dense_poly(&t, deg, false, rng)
}

#[test]
fn general_solution_passes_for_seeded_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let (xi, psi) = (random_univariate(&mut rng), random_univariate(&mut rng));
        let (alpha, beta) = (small_rational(&mut rng), small_rational(&mut rng));
        let phi = general_solution(&xi, &psi, &alpha, &beta).unwrap();
        assert!(solves_directly(&phi));
        assert!(verify_general_solution(&xi, &psi, &alpha, &beta).unwrap());
    }
}

#[test]
fn general_solution_small_cases() {
    let t = Ring::new(["t"]);
    let xi = parse("t^3", &t).unwrap();
    let psi = parse("t^2", &t).unwrap();
    assert!(verify_general_solution(&xi, &psi, &int(1), &int(2)).unwrap());
    let phi = general_solution(&xi, &psi, &int(1), &int(2)).unwrap();
    assert_eq!(phi, parse("z3^3 + z2*z3^2 + 2*z1*z3 + z1*z2 + 2*z1", &z3()).unwrap());
    let zero = Polynomial::zero(&t);
    assert!(verify_general_solution(&zero, &zero, &int(0), &int(0)).unwrap());

    // adding z1^2 breaks the first equation
    let bad = &phi + &parse("z1^2", &z3()).unwrap();
    let m = PdeModule::from_ideal(&axis_scheme_ideal());
    assert!(!solves_directly(&bad));
    assert!(!is_module_solution(&m, &[ExpPoly::polynomial(bad)]).unwrap());
}

#[test]
fn diffop_examples() {
    let r = x3();
    let ops = DiffOp::from_json(r#"[{"coeff": "x3", "partial": [1,0,0]}, {"coeff": "1", "partial": [0,1,0]}]"#, &r).unwrap();
    assert!(apply_diffop(&ops, &parse("x1 - x2*x3", &r).unwrap()).unwrap().is_zero());
    let d1 = DiffOp::partial(&r, vec![1, 0, 0]).unwrap();
    assert_eq!(apply_diffop(&d1, &parse("x1^2", &r).unwrap()).unwrap(), parse("2*x1", &r).unwrap());
    let f = parse("x1*x2 + 5*x3^2", &r).unwrap();
    assert_eq!(apply_diffop(&DiffOp::identity(&r), &f).unwrap(), f);
}

fn first_component_ops() -> Vec<(DiffOp, LinearPrime)> {
    noetherian_operators().into_iter().take(2).collect()
}

#[test]
fn membership_in_first_component() {
    let r = x3();
    let ops = first_component_ops();
    assert!(membership(&ops, &parse("x1^2", &r).unwrap()).unwrap());
    assert!(!membership(&ops, &parse("x1", &r).unwrap()).unwrap());
    assert!(membership(&ops, &Polynomial::zero(&r)).unwrap());
    let (q1, _) = primary_components();
    for g in q1.polys() {
        assert!(membership(&ops, g).unwrap(), "{g}");
    }
}

/// `⟨x1², x2², x3⟩` is a monomial ideal: a polynomial belongs iff each of
/// its terms is divisible by a generator.
fn in_monomial_component(f: &Polynomial) -> bool {
    f.terms().all(|(m, _)| {
        let e = m.exponents();
        e[0] >= 2 || e[1] >= 2 || e[2] >= 1
    })
}

fn random_member(rng: &mut ChaCha8Rng) -> Polynomial {
    let r = x3();
    let (q1, q2) = primary_components();
    // products of generators of the two components lie in their intersection
    let mut gens: Vec<Polynomial> = Vec::new();
    for a in q1.polys() {
        for b in q2.polys() {
            gens.push(a * b);
        }
    }
    gens.extend(axis_scheme_ideal().polys().iter().cloned());
    let mut f = Polynomial::zero(&r);
    for g in &gens {
        if rng.random_bool(0.6) {
            let deg = rng.random_range(0..=2);
            f = &f + &(g * &dense_poly(&r, deg, false, rng));
        }
    }
    f
}

#[test]
fn membership_matches_constructed_members_and_non_members() {
    let r = x3();
    let ops = noetherian_operators();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let outside = ["x1", "x2", "x1*x2", "1"];
    let mut members = 0;
    while members < 10 {
        let f = random_member(&mut rng);
        if f.is_zero() {
            continue;
        }
        members += 1;
        assert!(membership(&ops, &f).unwrap(), "{f}");

        // not in the monomial component, hence not in the intersection
        let m = parse(outside[members % 4], &r).unwrap();
        let g = &f + &m;
        assert!(!in_monomial_component(&g));
        assert!(!membership(&ops, &g).unwrap(), "{g}");

        // a pure power of x3 does not vanish on the x3-axis
        let k = rng.random_range(1..=3);
        let h = &f + &Polynomial::var(&r, 2).pow(k);
        assert!(!h.set_to_zero(&[0, 1]).is_zero());
        assert!(!membership(&ops, &h).unwrap(), "{h}");
    }
}

#[test]
fn ideal_is_closed_under_multiplication() {
    let r = x3();
    let ops = noetherian_operators();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let f = parse("x1*x3 - x2*x3^2", &r).unwrap();
    assert!(membership(&ops, &f).unwrap());
    for _ in 0..20 {
        let deg = rng.random_range(0..=3);
        let g = dense_poly(&r, deg, false, &mut rng);
        assert!(membership(&ops, &(&f * &g)).unwrap());
    }
}

#[test]
fn operator_counts_per_prime() {
    let ops = noetherian_operators();
    let line = ops.iter().filter(|(_, p)| p.vars() == [0, 1]).count();
    let origin = ops.iter().filter(|(_, p)| p.vars() == [0, 1, 2]).count();
    // arithmetic lengths two and two
    assert_eq!((line, origin), (2, 2));
    assert_eq!(hankel_syzygies().len(), 3);
}

#[test]
fn axis_points_give_exponential_solutions() {
    let i = axis_scheme_ideal();
    let m = PdeModule::from_ideal(&i);
    for t in [int(0), int(3), rat(-5, 2)] {
        let a = vec![int(0), int(0), t.clone()];
        assert!(is_exponential_solution(&i, &a).unwrap());
        assert!(is_module_solution(&m, &[ExpPoly::exponential(&z3(), a).unwrap()]).unwrap());
    }
    assert!(!is_exponential_solution(&i, &ints(&[1, 0, 0])).unwrap());
}

#[test]
fn exponential_criterion_agrees_with_operator_action() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let i = axis_scheme_ideal();
    let m = PdeModule::from_ideal(&i);
    for trial in 0..40 {
        // half the points on the axis, half off
        let a: Vec<Rational> = if trial % 2 == 0 {
            vec![int(0), int(0), small_rational(&mut rng)]
        } else {
            (0..3).map(|_| small_rational(&mut rng)).collect()
        };
        let exact = is_exponential_solution(&i, &a).unwrap();
        let by_pde = is_module_solution(&m, &[ExpPoly::exponential(&z3(), a.clone()).unwrap()]).unwrap();
        let af: Vec<Complex64> = a.iter().map(|v| Complex64::new(v.to_f64().unwrap(), 0.0)).collect();
        let approx = is_exponential_solution_approx(&i, &af).unwrap();
        assert_eq!(exact, by_pde);
        assert_eq!(exact, approx);
        if trial % 2 == 0 {
            assert!(exact);
        }
    }
}

#[test]
fn noetherian_multiplier_solutions_of_first_component() {
    let (q1, _) = primary_components();
    let m = PdeModule::from_ideal(&q1);
    for t in [int(0), int(2), rat(1, 3), int(-4)] {
        let e = ExpPoly::exponential(&z3(), vec![int(0), int(0), t.clone()]).unwrap();
        assert!(is_module_solution(&m, &[e]).unwrap());
        let lin = &parse("z2", &z3()).unwrap() + &parse("z1", &z3()).unwrap().scale(&t);
        let b2 = ExpPoly::term(lin, vec![int(0), int(0), t.clone()]).unwrap();
        assert!(is_module_solution(&m, &[b2]).unwrap());
    }
    // mismatched multiplier and frequency
    let wrong = ExpPoly::term(parse("z2 + 2*z1", &z3()).unwrap(), ints(&[0, 0, 3])).unwrap();
    assert!(!is_module_solution(&m, &[wrong]).unwrap());
}

fn geometric(r: i64) -> Vec<Rational> {
    (0..7).map(|i| int(r.pow(i))).collect()
}

#[test]
fn hankel_ranks() {
    assert_eq!(hankel_rank(&geometric(2)).unwrap(), 1);
    assert_eq!(hankel_rank(&ints(&[1, 0, 0, 0, 0, 0, 0])).unwrap(), 1);
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let u: Vec<Rational> = (0..7).map(|_| small_rational(&mut rng)).collect();
    assert_eq!(hankel_rank(&u).unwrap(), 4);
    assert!(matches!(build_wave_solution(&u, &Polynomial::one(&Ring::standard(0))), Err(PdeError::FullRank)));
}

#[test]
fn wave_solution_of_geometric_sequence() {
    let u = geometric(2);
    let m = hankel_module();
    let zeta = Ring::with_prefix("w", 3);
    let psi = parse("w1*w2*w3", &zeta).unwrap();
    let forms = vec![ints(&[2, -1, 0, 0]), ints(&[0, 2, -1, 0]), ints(&[0, 0, 2, -1])];
    let phi = build_wave_solution_with(&u, &forms, &psi).unwrap();
    assert!(is_module_solution(&m, &phi).unwrap());
    // ψ is the product of the three wave forms, scaled by u_j
    let z = Ring::with_prefix("z", 4);
    let prod = parse("(2*z1 - z2)*(2*z2 - z3)*(2*z3 - z4)", &z).unwrap();
    for (f, uj) in phi.iter().zip(&u) {
        assert_eq!(f, &ExpPoly::polynomial(prod.scale(uj)));
    }

    assert_eq!(wave_forms(&u).unwrap().len(), 3);
    let phi = build_wave_solution(&u, &psi).unwrap();
    assert!(is_module_solution(&m, &phi).unwrap());
    let phi = build_wave_solution(&u, &Polynomial::one(&zeta)).unwrap();
    assert!(is_module_solution(&m, &phi).unwrap());

    let off = vec![ints(&[1, 0, 0, 0]), ints(&[0, 2, -1, 0]), ints(&[0, 0, 2, -1])];
    assert_eq!(build_wave_solution_with(&u, &off, &psi), Err(PdeError::NotInKernel));
}

#[test]
fn wave_solution_on_the_secant_variety() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let m = hankel_module();
    for _ in 0..5 {
        let (a, b) = loop {
            let a = rng.random_range(-4..=4i64);
            let b = rng.random_range(-4..=4i64);
            if a != b {
                break (a, b);
            }
        };
        let (s, t) = (small_rational(&mut rng), small_rational(&mut rng));
        if s.is_zero() || t.is_zero() {
            continue;
        }
        let u: Vec<Rational> = geometric(a).iter().zip(geometric(b)).map(|(x, y)| x * &s + y * &t).collect();
        assert_eq!(hankel_rank(&u).unwrap(), 2);
        let forms = wave_forms(&u).unwrap();
        assert_eq!(forms.len(), 2);
        let w = Ring::with_prefix("w", 2);
        let psi = dense_poly(&w, 3, false, &mut rng);
        assert!(is_module_solution(&m, &build_wave_solution(&u, &psi).unwrap()).unwrap());
    }
}

#[test]
fn multiplier_rows_are_syzygies() {
    let m = hankel_module();
    for row in hankel_syzygies() {
        for p in m.pairings(&row).unwrap() {
            assert!(p.is_zero(), "{p}");
        }
    }
}

fn partial(f: &Polynomial, idx: &[usize]) -> Polynomial {
    let mut e = vec![0u32; 4];
    for &i in idx {
        e[i - 1] += 1;
    }
    f.differentiate_multi(&e)
}

#[test]
fn syzygy_solution_matches_subscript_formula() {
    let z = Ring::with_prefix("z", 4);
    let f = parse("z1^3*z2*z3*z4", &z).unwrap();
    let row = &hankel_syzygies()[0];
    let phi = syzygy_solution(row, &f).unwrap();
    assert!(is_module_solution(&hankel_module(), &phi).unwrap());

    let d = |idx: &[usize]| partial(&f, idx);
    let want = [
        &(&(&d(&[2, 2, 2, 2]) - &d(&[1, 2, 2, 3]).scale(&int(3))) + &d(&[1, 1, 3, 3])) + &d(&[1, 1, 2, 4]).scale(&int(2)),
        &(&d(&[1, 1, 2, 3]).scale(&int(2)) - &d(&[1, 2, 2, 2])) - &d(&[1, 1, 1, 4]),
        &d(&[1, 1, 2, 2]) - &d(&[1, 1, 1, 3]),
        -&d(&[1, 1, 1, 2]),
        d(&[1, 1, 1, 1]),
        Polynomial::zero(&z),
        Polynomial::zero(&z),
    ];
    for (got, w) in phi.iter().zip(want) {
        assert_eq!(got, &ExpPoly::polynomial(w));
    }
    assert!(phi.iter().any(|p| !p.is_zero()));
}

#[test]
fn solutions_form_a_vector_space() {
    let m = hankel_module();
    let z = Ring::with_prefix("z", 4);
    let w = Ring::with_prefix("w", 3);
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let wave = build_wave_solution(&geometric(2), &dense_poly(&w, 2, false, &mut rng)).unwrap();
    let rows = hankel_syzygies();
    let syz = syzygy_solution(&rows[1], &dense_poly(&z, 6, false, &mut rng)).unwrap();
    for _ in 0..5 {
        let (a, b) = (small_rational(&mut rng), small_rational(&mut rng));
        let combo: Vec<ExpPoly> = wave.iter().zip(&syz).map(|(p, q)| p.scale(&a).add(&q.scale(&b)).unwrap()).collect();
        assert!(is_module_solution(&m, &combo).unwrap());
    }
}

#[test]
fn random_vectors_are_not_solutions() {
    let m = hankel_module();
    let z = Ring::with_prefix("z", 4);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..10 {
        let phi: Vec<ExpPoly> = (0..7).map(|_| ExpPoly::polynomial(dense_poly(&z, 2, false, &mut rng))).collect();
        assert!(!is_module_solution(&m, &phi).unwrap());
    }
    // constants are killed by first-order operators
    let u = geometric(3);
    let consts: Vec<ExpPoly> = u.iter().map(|c| ExpPoly::polynomial(Polynomial::constant(&z, c.clone()))).collect();
    assert!(is_module_solution(&m, &consts).unwrap());
}
