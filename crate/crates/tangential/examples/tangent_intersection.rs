//! Intersect the Jacobian pieces of nearby random perturbations of a
//! smooth quartic: the tangent space to the orbit varies so strongly that
//! a handful of perturbations already intersect in 0.
//!
//! Run with: cargo run --example tangent_intersection

use tangential::deform::tangent_intersection_experiment;
use tangential::poly::parse_poly;
use tangential::scalar::FieldDescriptor;

fn main() -> tangential::Result<()> {
    let f = parse_poly("x0^4 + x1^4 + x2^4", 3, FieldDescriptor::Rationals)?;
    let count = 10; // (n+1)^2 + 1 for n = 2
    let dims = tangent_intersection_experiment(&f, count, 42)?;
    println!("f = {f}");
    println!("running intersection dimensions over {count} perturbations:");
    for (i, d) in dims.iter().enumerate() {
        println!("  after g_{}: {}", i + 1, d);
    }
    assert_eq!(*dims.last().unwrap(), 0);
    println!("intersection is empty (dimension 0)");
    Ok(())
}
