//! Classify every fiber of a pencil of plane cubics over F_5 by searching
//! for low-degree divisors with exact linear solves. When at least one
//! fiber is irreducible, the number of reducible fibers obeys the d^2 - 1
//! bound.
//!
//! Run with: cargo run --example pencil_scan

use tangential::orbit::pencil_scan_fp;
use tangential::poly::parse_poly;
use tangential::scalar::FieldDescriptor;

fn main() -> tangential::Result<()> {
    let f5 = FieldDescriptor::prime_field(5)?;
    let f = parse_poly("x0^3 + x1^3 + x2^3", 3, f5)?;
    let g = parse_poly("x0*x1*x2", 3, f5)?;

    let report = pencil_scan_fp(&f, &g, 1_000_000)?;
    println!("pencil spanned by {f} and {g} over F_5:");
    for fb in &report.fibers {
        println!(
            "  ({}:{})  reducible: {:5}  {}",
            fb.lambda,
            fb.mu,
            fb.reducible,
            match &fb.factor_witness {
                Some(w) => format!("factor {w}"),
                None => String::new(),
            }
        );
    }
    println!(
        "{} of {} fibers reducible; bound d^2 - 1 = {}; bound holds: {}",
        report.reducible_count,
        report.fibers.len(),
        report.reducible_bound,
        report.bound_holds
    );
    assert!(report.bound_holds);
    Ok(())
}
