//! Decide smoothness with the Groebner zero-dimensionality criterion and
//! scan F_7 exhaustively for rational singular points.
//!
//! Run with: cargo run --example smoothness_check

use tangential::poly::parse_poly;
use tangential::scalar::FieldDescriptor;
use tangential::smoothness::{is_smooth, singular_points_scan};

fn main() -> tangential::Result<()> {
    let qq = FieldDescriptor::Rationals;
    for text in [
        "x0^4 + x1^4 + x2^4",            // Fermat: smooth
        "x1^2*x2 - x0^3 - x0^2*x2",      // nodal cubic
        "x0^2*x2",                       // double line: non-isolated
    ] {
        let f = parse_poly(text, 3, qq)?;
        println!("{text}  ->  smooth over closure: {}", is_smooth(&f)?);
    }

    // over a finite field the singular locus scan is exhaustive
    let f7 = FieldDescriptor::prime_field(7)?;
    let nodal = parse_poly("x1^2*x2 - x0^3 - x0^2*x2", 3, f7)?;
    let report = singular_points_scan(&nodal, &[])?;
    println!(
        "nodal cubic over F_7: smooth = {}, gradient ideal dimension = {}",
        report.smooth, report.ideal_dimension
    );
    for (p, mult) in &report.rational_singular_points {
        println!("  singular point {p} with multiplicity {mult}");
    }
    Ok(())
}
