//! Certify a totally tangentially unstable polynomial as a product of two
//! smooth forms of distinct degrees >= 3 with total degree >= 7. The
//! certificate is the hypothesis check of the proved construction; flipping
//! any hypothesis withdraws it.
//!
//! Run with: cargo run --example ttu_construction

use tangential::deform::construct_ttu;
use tangential::poly::parse_poly;
use tangential::scalar::FieldDescriptor;

fn main() -> tangential::Result<()> {
    let field = FieldDescriptor::Rationals;
    let p1 = parse_poly("x0^3 + x1^3 + x2^3", 3, field)?;
    let p2 = parse_poly("x0^4 + x1^4 + x2^4", 3, field)?;

    let c = construct_ttu(&p1, &p2)?;
    println!("f = ({p1}) * ({p2})");
    println!("  = {}", c.f);
    println!("degrees: {} + {} = {}", c.d1, c.d2, c.d1 + c.d2);
    println!("hypotheses: {:?}", c.hypothesis_report);
    println!("certified totally tangentially unstable: {}", c.certified);
    assert!(c.certified);

    // a singular factor withdraws certification
    let cone = parse_poly("x0^4", 3, field)?;
    let bad = construct_ttu(&p1, &cone)?;
    println!(
        "with the cone x0^4 instead: certified = {} (p2_smooth = {})",
        bad.certified, bad.hypothesis_report.p2_smooth
    );
    Ok(())
}
