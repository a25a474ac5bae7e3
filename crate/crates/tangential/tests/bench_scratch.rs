use tangential::deform::{sample_coeff_matrix, trial_rng};
use tangential::linalg::DenseMatrix;
use tangential::orbit::{is_equivalent_fp, EquivalenceMode, MatrixEnumerator};
use tangential::poly::{monomials_of_degree, HomPoly, Poly};
use tangential::scalar::{FieldDescriptor, Scalar};
use rand::Rng;

#[test]
fn bench_equivalence_plants() {
    let f3 = FieldDescriptor::prime_field(3).unwrap();
    let t0 = std::time::Instant::now();
    let monos = monomials_of_degree(3, 2);
    let mut found = 0;
    for trial in 0..50u64 {
        let mut rng = trial_rng(99, trial);
        // random nonzero quadratic over F_3
        let f = loop {
            let p = Poly::from_terms(
                monos.iter().map(|m| (m.clone(), Scalar::from_integer(rng.gen_range(0..3), f3))),
                3, f3,
            );
            if !p.is_zero() { break HomPoly::from_poly(p, 2).unwrap(); }
        };
        // random invertible matrix
        let a = loop {
            let m = sample_coeff_matrix(3, f3, &mut rng);
            if m.entries().is_invertible() { break m.entries().clone(); }
        };
        let g = f.substitute_matrix(&a).unwrap();
        let w = is_equivalent_fp(&f, &g, EquivalenceMode::Strict).unwrap().expect("planted");
        assert_eq!(f.substitute_matrix(&w.matrix).unwrap(), g);
        found += 1;
    }
    eprintln!("50 planted equivalences recovered in {:?} (found={found})", t0.elapsed());
    let _ = DenseMatrix::identity(2, f3);
    let count = MatrixEnumerator::new(3, f3).unwrap().count();
    eprintln!("matrix enumeration count: {count}");
}
