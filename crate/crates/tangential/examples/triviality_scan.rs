//! Finite-field analogue of tangential triviality: for a binary quartic f
//! over F_13 and the scalar deformation h = f, decide for every t whether
//! f + t*f lies in the orbit of f. Strict orbit membership tracks the
//! fourth powers of F_13; up to scalar every fiber is trivially equivalent.
//!
//! Run with: cargo run --example triviality_scan

use tangential::orbit::{triviality_scan_fp, EquivalenceMode, MatrixMode};
use tangential::poly::parse_poly;
use tangential::scalar::FieldDescriptor;

fn main() -> tangential::Result<()> {
    let f13 = FieldDescriptor::prime_field(13)?;
    let f = parse_poly("x0^4 + x1^4", 2, f13)?;

    let scan = triviality_scan_fp(
        &f,
        std::slice::from_ref(&f),
        MatrixMode::InvertibleOnly,
        EquivalenceMode::Strict,
    )?;
    let cand = &scan.tested[0];
    println!("f = {f} over F_13, candidate h = f");
    for fb in &cand.fibers {
        let status = if fb.degenerate {
            "degenerate (zero fiber)".to_string()
        } else {
            match &fb.witness {
                Some(w) => format!("in orbit, witness lambda = {}", w.lambda),
                None => "NOT in orbit".to_string(),
            }
        };
        println!("  t = {:2}: {status}", fb.t);
    }
    println!("passes for all non-degenerate t: {}", cand.passes);
    Ok(())
}
