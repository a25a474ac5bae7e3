//! The Weierstrass cubic f = z*y^2 - (x^3 + a*z^2*x + b*z^3) is a smooth
//! plane cubic that is NOT totally tangentially unstable: h = z*y^2 lies in
//! J_{f,3}, is independent of f, and f + t*h equals f composed with the
//! y-scaling by sqrt(1+t) whenever 1+t is a square.
//!
//! Run with: cargo run --example weierstrass_cubic

use tangential::deform::verify_weierstrass_counterexample;
use tangential::scalar::{FieldDescriptor, Scalar};

fn main() -> tangential::Result<()> {
    let field = FieldDescriptor::Rationals;
    let a = Scalar::from_integer(1, field);
    let b = Scalar::from_integer(1, field);
    for tv in [0i64, 3, 8, 15] {
        let t = Scalar::from_integer(tv, field);
        let report = verify_weierstrass_counterexample(&a, &b, &t)?;
        println!(
            "t = {tv:2}: sqrt(1+t) = {}, membership = {}, substitution = {}, h independent of f = {}",
            report.sqrt_one_plus_t,
            report.membership.is_some(),
            report.substitution_matches,
            report.independent_of_f,
        );
        assert!(report.all_checks_pass());
    }
    println!("all checks pass: h = z*y^2 is a tangentially trivial deformation not proportional to f");
    Ok(())
}
