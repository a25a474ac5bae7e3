//! Exhaustive projective equivalence over a small prime field: plant
//! g = f o A with a random invertible A over F_3 and recover a witness by
//! enumerating all of GL(3, F_3).
//!
//! Run with: cargo run --example equivalence_oracle

use tangential::deform::{sample_coeff_matrix, trial_rng};
use tangential::orbit::{is_equivalent_fp, EquivalenceMode};
use tangential::poly::parse_poly;
use tangential::scalar::FieldDescriptor;

fn main() -> tangential::Result<()> {
    let f3 = FieldDescriptor::prime_field(3)?;
    let f = parse_poly("x0^2 + x0*x1 + x1*x2", 3, f3)?;

    let mut rng = trial_rng(7, 0);
    let a = loop {
        let cand = sample_coeff_matrix(3, f3, &mut rng);
        if cand.entries().is_invertible() {
            break cand.entries().clone();
        }
    };
    let g = f.substitute_matrix(&a)?;
    println!("f = {f}");
    println!("g = f o A = {g}");

    let w = is_equivalent_fp(&f, &g, EquivalenceMode::Strict)?.expect("planted equivalence");
    println!("recovered witness (first in enumeration order):\n{}", w.matrix);
    assert_eq!(f.substitute_matrix(&w.matrix)?, g);

    // forms with different factor structure are never equivalent
    let lines = parse_poly("x0*x1", 3, f3)?;
    let double = parse_poly("x0^2", 3, f3)?;
    let none = is_equivalent_fp(&lines, &double, EquivalenceMode::Strict)?;
    println!("x0*x1 ~ x0^2 over F_3: {}", none.is_some());
    Ok(())
}
