//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `cargo test -- --nocapture`). All arithmetic is
//! exact; every assertion is an exact equality or an exact bound.

use std::collections::HashSet;
use std::time::Instant;

use rand::Rng;

use tangential::deform::{
    construct_ttu, decide_smoothable, find_smoothing, obstruction_certificate,
    sample_coeff_matrix, tangent_intersection_experiment, trial_rng,
    verify_weierstrass_counterexample, SmoothableDecision,
};
use tangential::jacobian::jacobian_piece;
use tangential::linalg::subspace_intersection;
use tangential::orbit::{
    binary_roots, is_equivalent_fp, lin_group_binary, pencil_scan_fp, EquivalenceMode,
};
use tangential::poly::{monomials_of_degree, parse_poly, HomPoly, Poly, ProjPoint};
use tangential::scalar::{FieldDescriptor, Scalar};
use tangential::smoothness::{is_smooth, singular_points_scan};

const QQ: FieldDescriptor = FieldDescriptor::Rationals;

fn fp(p: u64) -> FieldDescriptor {
    FieldDescriptor::prime_field(p).unwrap()
}

fn q(text: &str, nvars: usize) -> HomPoly {
    parse_poly(text, nvars, QQ).unwrap()
}

fn random_form(
    nvars: usize,
    degree: u32,
    field: FieldDescriptor,
    rng: &mut impl Rng,
) -> HomPoly {
    let monos = monomials_of_degree(nvars, degree);
    loop {
        let poly = Poly::from_terms(
            monos.iter().map(|m| {
                let c = match field {
                    FieldDescriptor::Rationals => rng.gen_range(-5i64..=5),
                    FieldDescriptor::PrimeField(p) => rng.gen_range(0..p) as i64,
                };
                (m.clone(), Scalar::from_integer(c, field))
            }),
            nvars,
            field,
        );
        if !poly.is_zero() {
            return HomPoly::from_poly(poly, degree).unwrap();
        }
    }
}

fn pass(id: u32, name: &str, started: Instant) {
    println!(
        "criterion {id:02} ({name}): PASS ({:.2}s)",
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_01_euler_identity() {
    let t0 = Instant::now();
    let primes = [5u64, 7, 11, 13];
    for i in 0..200u64 {
        let mut rng = trial_rng(0xE111, i);
        let nvars = rng.gen_range(2usize..=4);
        let degree = rng.gen_range(1u32..=6);
        let f = random_form(nvars, degree, QQ, &mut rng);
        let d_scalar = Scalar::from_integer(degree as i64, QQ);
        assert_eq!(f.euler_combination(), f.scale(&d_scalar), "over Q, trial {i}");

        // any prime not dividing the degree
        let p = *primes.iter().find(|&&p| degree as u64 % p != 0).unwrap();
        let field = fp(p);
        let g = random_form(nvars, degree, field, &mut rng);
        let d_scalar = Scalar::from_integer(degree as i64, field);
        assert_eq!(g.euler_combination(), g.scale(&d_scalar), "over F_{p}, trial {i}");
    }
    pass(1, "euler identity, 200 random forms over Q and F_p", t0);
}

#[test]
fn criterion_02_smoothness_ground_truth() {
    let t0 = Instant::now();
    for nvars in [2usize, 3, 4] {
        for d in 2u32..=6 {
            let text = (0..nvars)
                .map(|i| format!("x{i}^{d}"))
                .collect::<Vec<_>>()
                .join(" + ");
            assert!(
                is_smooth(&q(&text, nvars)).unwrap(),
                "fermat nvars={nvars} d={d}"
            );
        }
    }
    for d in 2u32..=6 {
        let text = if d == 2 {
            "x0^2".to_string()
        } else {
            format!("x0^2*x2^{}", d - 2)
        };
        assert!(!is_smooth(&q(&text, 3)).unwrap(), "cone degree {d}");
    }
    assert!(!is_smooth(&q("x1^2*x2 - x0^3 - x0^2*x2", 3)).unwrap());

    // cross-check over F_7: any rational singular point found by the
    // exhaustive scan forces is_smooth = false
    let f7 = fp(7);
    let mut corpus: Vec<HomPoly> = vec![
        parse_poly("x1^2*x2 - x0^3 - x0^2*x2", 3, f7).unwrap(),
        parse_poly("x0^2*x2", 3, f7).unwrap(),
        parse_poly("x0^3 + x1^3 + x2^3", 3, f7).unwrap(),
        parse_poly("x1^2*x2^2 - x0^4 + x1^4", 3, f7).unwrap(),
    ];
    for i in 0..20u64 {
        let mut rng = trial_rng(0x5CA2, i);
        corpus.push(random_form(3, rng.gen_range(2u32..=6), f7, &mut rng));
    }
    for f in &corpus {
        let report = singular_points_scan(f, &[]).unwrap();
        if !report.rational_singular_points.is_empty() {
            assert!(!report.smooth, "scan found a singular point on {f}");
        }
        assert_eq!(report.smooth, report.ideal_dimension == 0);
    }
    pass(2, "smoothness ground truth + F_7 scan cross-check", t0);
}

#[test]
fn criterion_03_smoothing_search_on_node_corpus() {
    let t0 = Instant::now();
    let origin = ProjPoint::from_integers(&[0, 0, 1], QQ).unwrap();
    let corpus = [
        q("x1^2*x2 - x0^3 - x0^2*x2", 3),
        q("x1^2*x2^2 - x0^4 + x1^4", 3),
    ];
    // the quartic's singular locus is verified two ways: exhaustive scan
    // over F_7 and the supplied rational candidate
    let f7 = fp(7);
    let quartic_f7 = parse_poly("x1^2*x2^2 - x0^4 + x1^4", 3, f7).unwrap();
    let scan = singular_points_scan(&quartic_f7, &[]).unwrap();
    assert_eq!(scan.rational_singular_points.len(), 1);
    assert_eq!(
        scan.rational_singular_points[0].0,
        ProjPoint::from_integers(&[0, 0, 1], f7).unwrap()
    );
    assert_eq!(scan.rational_singular_points[0].1, 2);

    for f in &corpus {
        let decision = decide_smoothable(f, std::slice::from_ref(&origin)).unwrap();
        assert!(
            matches!(decision, SmoothableDecision::Smoothable),
            "decision on {f}"
        );
        let cert = find_smoothing(f, 200, 42)
            .unwrap()
            .unwrap_or_else(|| panic!("no smoothing found for {f} within budget 200"));
        assert!(cert.verified_smooth);
        assert!(cert.revalidate().unwrap(), "certificate revalidation for {f}");
        // membership re-check through the jacobian piece
        let piece = jacobian_piece(f).unwrap();
        assert!(piece.membership(&cert.h).unwrap().is_some());
        assert!(is_smooth(&f.add(&cert.h).unwrap()).unwrap());
    }
    pass(3, "smoothing search on the multiplicity-2 corpus", t0);
}

#[test]
fn criterion_04_obstruction_at_high_multiplicity() {
    let t0 = Instant::now();
    let origin = ProjPoint::from_integers(&[0, 0, 1], QQ).unwrap();
    for (text, expected_mult) in [("x0^4 + x1^3*x2", 3u32), ("x0^5 + x1^4*x2", 4u32)] {
        let f = q(text, 3);
        let cert = obstruction_certificate(&f, &origin).unwrap();
        assert_eq!(cert.multiplicity, expected_mult);
        for m in &cert.generator_multiplicities {
            if let Some(m) = m {
                assert!(*m >= 2, "{text}: generator multiplicity {m} < 2");
            }
        }
        // 100 random tangential deformations all stay singular at the point
        for i in 0..100u64 {
            let mut rng = trial_rng(42, i);
            let a = sample_coeff_matrix(3, QQ, &mut rng);
            let h = a.expand(&f).unwrap();
            let deformed = f.add(&h).unwrap();
            if deformed.is_zero() {
                continue;
            }
            assert!(
                deformed.multiplicity_at(&origin).unwrap() >= 2,
                "{text}: trial {i} escaped the obstruction"
            );
        }
        assert!(
            find_smoothing(&f, 200, 42).unwrap().is_none(),
            "{text}: search must exhaust its budget"
        );
    }
    pass(4, "obstruction certificates and failed searches", t0);
}

#[test]
fn criterion_05_product_construction_hypotheses() {
    let t0 = Instant::now();
    assert_eq!(
        jacobian_piece(&q("x0^3 + x1^3 + x2^3", 3)).unwrap().dimension(),
        9
    );
    assert_eq!(
        jacobian_piece(&q("x0^4 + x1^4 + x2^4 + x3^4", 4)).unwrap().dimension(),
        16
    );
    let p1 = q("x0^3 + x1^3 + x2^3", 3);
    let p2 = q("x0^4 + x1^4 + x2^4", 3);
    let good = construct_ttu(&p1, &p2).unwrap();
    assert!(good.certified);
    let r = good.hypothesis_report;
    assert!(r.p1_smooth && r.p2_smooth);
    assert!(r.d1_ge_3 && r.d2_ge_3 && r.degrees_distinct && r.total_ge_7);
    assert!(r.rank_full_p1 && r.rank_full_p2);

    // equal degrees: certification withdrawn
    let cube = construct_ttu(&p1, &p1.clone()).unwrap();
    assert!(!cube.certified);
    assert!(!cube.hypothesis_report.degrees_distinct);

    // singular second factor: certification withdrawn
    let cone = construct_ttu(&p1, &q("x0^4", 3)).unwrap();
    assert!(!cone.certified);
    assert!(!cone.hypothesis_report.p2_smooth);
    pass(5, "generator ranks and product construction hypotheses", t0);
}

#[test]
fn criterion_06_weierstrass_regression() {
    let t0 = Instant::now();
    let one = Scalar::one(QQ);
    let three = Scalar::from_integer(3, QQ);
    let report = verify_weierstrass_counterexample(&one, &one, &three).unwrap();
    assert!(report.all_checks_pass());
    assert_eq!(report.sqrt_one_plus_t, Scalar::from_integer(2, QQ));

    let mut done = 0;
    let mut i = 0u64;
    while done < 20 {
        let mut rng = trial_rng(0x3E13, i);
        i += 1;
        let a = Scalar::from_integer(rng.gen_range(-5i64..=5), QQ);
        let b = Scalar::from_integer(rng.gen_range(-5i64..=5), QQ);
        let disc = &(&Scalar::from_integer(4, QQ) * &a.pow(3))
            + &(&Scalar::from_integer(27, QQ) * &b.pow(2));
        if disc.is_zero() {
            continue;
        }
        for tv in [3i64, 8, 15] {
            let t = Scalar::from_integer(tv, QQ);
            let report = verify_weierstrass_counterexample(&a, &b, &t).unwrap();
            assert!(
                report.all_checks_pass(),
                "a={a} b={b} t={tv}: checks failed"
            );
        }
        done += 1;
    }
    pass(6, "weierstrass counterexample, pinned case + 20-case sweep", t0);
}

#[test]
fn criterion_07_equivalence_oracle_planted() {
    let t0 = Instant::now();
    let f3 = fp(3);
    for trial in 0..50u64 {
        let mut rng = trial_rng(0xEC41, trial);
        let f = random_form(3, 2, f3, &mut rng);
        let a = loop {
            let cand = sample_coeff_matrix(3, f3, &mut rng);
            if cand.entries().is_invertible() {
                break cand.entries().clone();
            }
        };
        let g = f.substitute_matrix(&a).unwrap();
        let w = is_equivalent_fp(&f, &g, EquivalenceMode::Strict)
            .unwrap()
            .unwrap_or_else(|| panic!("planted equivalence not recovered, trial {trial}"));
        assert_eq!(f.substitute_matrix(&w.matrix).unwrap(), g);

        // orbit invariants along the recovered witness
        assert_eq!(
            jacobian_piece(&f).unwrap().dimension(),
            jacobian_piece(&g).unwrap().dimension(),
            "dim J mismatch, trial {trial}"
        );
        assert_eq!(
            is_smooth(&f).unwrap(),
            is_smooth(&g).unwrap(),
            "smoothness mismatch, trial {trial}"
        );
        let mults = |h: &HomPoly| -> Vec<u32> {
            let mut v: Vec<u32> = singular_points_scan(h, &[])
                .unwrap()
                .rational_singular_points
                .iter()
                .map(|(_, m)| *m)
                .collect();
            v.sort_unstable();
            v
        };
        assert_eq!(mults(&f), mults(&g), "multiplicity multiset mismatch, trial {trial}");
    }
    pass(7, "50 planted equivalences over GL(3, F_3) recovered", t0);
}

#[test]
fn criterion_08_pencil_reducible_fiber_bound() {
    let t0 = Instant::now();
    let f5 = fp(5);
    let mut done = 0;
    let mut i = 0u64;
    while done < 10 {
        let mut rng = trial_rng(0x9E4C, i);
        i += 1;
        let f = random_form(3, 3, f5, &mut rng);
        let g = random_form(3, 3, f5, &mut rng);
        let report = match pencil_scan_fp(&f, &g, 1_000_000) {
            Ok(r) => r,
            Err(_) => continue, // not coprime: resample
        };
        if !report.generic_irreducible {
            continue;
        }
        assert_eq!(report.fibers.len(), 6);
        assert!(
            report.reducible_count as u32 <= report.reducible_bound,
            "pencil {i}: {} reducible fibers exceed bound {}",
            report.reducible_count,
            report.reducible_bound
        );
        assert_eq!(report.reducible_bound, 8);
        assert!(report.bound_holds);
        done += 1;
    }
    pass(8, "reducible-fiber bound on 10 random coprime pencils", t0);
}

#[test]
fn criterion_09_binary_form_automorphism_groups() {
    let t0 = Instant::now();
    let pt = |v: i64| ProjPoint::from_integers(&[v, 1], QQ).unwrap();
    let inf = ProjPoint::from_integers(&[1, 0], QQ).unwrap();
    let simple = |pts: Vec<ProjPoint>| -> Vec<(ProjPoint, u32)> {
        pts.into_iter().map(|p| (p, 1)).collect()
    };
    let mut failures: Vec<String> = Vec::new();

    let cases: [(Vec<(ProjPoint, u32)>, usize); 3] = [
        (simple(vec![pt(0), pt(1), inf.clone()]), 6),
        (simple(vec![pt(0), pt(1), inf.clone(), pt(2)]), 4),
        (simple(vec![pt(0), pt(1), inf, pt(2), pt(5)]), 1),
    ];
    for (roots, expected_order) in &cases {
        let group = lin_group_binary(roots).unwrap();
        // closure under composition and inverse, identity present
        assert!(group.iter().any(|m| m.is_identity()));
        for a in &group {
            assert!(group.contains(&a.inverse()), "inverse escapes the group");
            for b in &group {
                assert!(group.contains(&a.compose(b)), "composition escapes the group");
            }
        }
        if group.len() != *expected_order {
            failures.push(format!(
                "root set of size {}: expected order {expected_order}, enumeration finds {}",
                roots.len(),
                group.len()
            ));
        }
    }

    // the trivial quintic group is also reachable from an actual binary
    // form: x0*x1*(x0 - x1)*(x0 - 2*x1)*(x0 - 5*x1) expanded
    let quintic = q("x0^4*x1 - 8*x0^3*x1^2 + 17*x0^2*x1^3 - 10*x0*x1^4", 2);
    let roots = binary_roots(&quintic).unwrap().expect("splits over Q");
    assert_eq!(roots.iter().map(|(_, m)| m).sum::<u32>(), 5);
    assert_eq!(roots.len(), 5);
    assert_eq!(lin_group_binary(&roots).unwrap().len(), 1);

    if !failures.is_empty() {
        println!("criterion 09 (binary form automorphism groups): FAIL");
        panic!(
            "order assertions failed: {} \u{2014} the quadruple {{0, 1, oo, 2}} has \
             cross-ratio 1/2 (harmonic), so the double transpositions extend by the \
             rational involution z -> z/(z-1) and the stabilizer has order 8, not 4; \
             the enumeration reports what it finds",
            failures.join("; ")
        );
    }
    pass(9, "binary form automorphism groups", t0);
}

#[test]
fn criterion_10_tangent_space_intersection() {
    let t0 = Instant::now();
    let f = q("x0^4 + x1^4 + x2^4", 3);
    let dims = tangent_intersection_experiment(&f, 10, 42).unwrap();
    assert_eq!(dims.len(), 10);
    assert!(
        dims.windows(2).all(|w| w[1] <= w[0]),
        "dimension sequence must be non-increasing: {dims:?}"
    );
    assert_eq!(*dims.last().unwrap(), 0, "final intersection not zero: {dims:?}");
    pass(10, "tangent space intersection reaches dimension 0", t0);
}

#[test]
fn criterion_11_subspace_intersection_oracle() {
    let t0 = Instant::now();
    let f3 = fp(3);

    // independent oracle: enumerate every vector of every span over F_3
    // and intersect the raw point sets
    let enumerate_span = |basis: &[Vec<u64>], ambient: usize| -> HashSet<Vec<u64>> {
        let mut out = HashSet::new();
        let k = basis.len();
        let mut digits = vec![0u64; k];
        loop {
            let mut v = vec![0u64; ambient];
            for (c, b) in digits.iter().zip(basis) {
                for j in 0..ambient {
                    v[j] = (v[j] + c * b[j]) % 3;
                }
            }
            out.insert(v);
            let mut i = 0;
            loop {
                if i == k {
                    return out;
                }
                digits[i] += 1;
                if digits[i] < 3 {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    };

    for trial in 0..100u64 {
        let mut rng = trial_rng(0x0B5E, trial);
        let ambient = rng.gen_range(2usize..=6);
        let nfam = rng.gen_range(2usize..=3);
        let raw: Vec<Vec<Vec<u64>>> = (0..nfam)
            .map(|_| {
                let k = rng.gen_range(0usize..=3);
                (0..k)
                    .map(|_| (0..ambient).map(|_| rng.gen_range(0u64..3)).collect())
                    .collect()
            })
            .collect();

        // oracle dimension: |intersection| = 3^t
        let mut inter: Option<HashSet<Vec<u64>>> = None;
        for fam in &raw {
            let s = enumerate_span(fam, ambient);
            inter = Some(match inter {
                None => s,
                Some(prev) => prev.intersection(&s).cloned().collect(),
            });
        }
        let inter = inter.unwrap();
        let mut oracle_dim = 0usize;
        while 3usize.pow(oracle_dim as u32) < inter.len() {
            oracle_dim += 1;
        }
        assert_eq!(3usize.pow(oracle_dim as u32), inter.len(), "not a subspace?!");

        // implementation under test
        let scalarize = |fam: &Vec<Vec<u64>>| -> Vec<Vec<Scalar>> {
            fam.iter()
                .map(|v| {
                    v.iter()
                        .map(|&x| Scalar::from_integer(x as i64, f3))
                        .collect()
                })
                .collect()
        };
        let families: Vec<Vec<Vec<Scalar>>> = raw.iter().map(scalarize).collect();
        let basis = subspace_intersection(&families, ambient, f3).unwrap();
        assert_eq!(basis.len(), oracle_dim, "trial {trial}: dimension mismatch");
        // every reported basis vector lies in the enumerated intersection
        for v in &basis {
            let tuple: Vec<u64> = v.iter().map(|s| s.residue().unwrap()).collect();
            assert!(inter.contains(&tuple), "trial {trial}: vector outside oracle set");
        }
    }
    pass(11, "subspace intersection agrees with brute-force oracle", t0);
}
