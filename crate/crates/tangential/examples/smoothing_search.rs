//! Decide that a nodal hypersurface is tangentially smoothable and find an
//! explicit smoothing deformation h in J_{f,d} with f + h smooth.
//!
//! Run with: cargo run --example smoothing_search

use tangential::deform::{decide_smoothable, find_smoothing, SmoothableDecision};
use tangential::poly::{parse_poly, ProjPoint};
use tangential::scalar::FieldDescriptor;

fn main() -> tangential::Result<()> {
    let field = FieldDescriptor::Rationals;
    let f = parse_poly("x1^2*x2 - x0^3 - x0^2*x2", 3, field)?;
    let node = ProjPoint::from_integers(&[0, 0, 1], field)?;

    match decide_smoothable(&f, &[node])? {
        SmoothableDecision::Smoothable => println!("{f} is tangentially smoothable"),
        other => panic!("unexpected decision: {other:?}"),
    }

    let cert = find_smoothing(&f, 200, 42)?.expect("search succeeds within budget");
    println!(
        "found after {} trial(s) with seed {}:",
        cert.trials_used, cert.seed
    );
    println!("  h     = {}", cert.h);
    println!("  f + h = {}", cert.f.add(&cert.h)?);
    println!("  coefficient matrix:\n{}", cert.coeffs.entries());
    assert!(cert.revalidate()?);
    Ok(())
}
