//! Compute the degree-d piece of a Jacobian ideal: generators, dimension,
//! and membership with an explicit coefficient-matrix witness.
//!
//! Run with: cargo run --example jacobian_piece

use tangential::jacobian::{jacobian_piece, CoeffMatrix};
use tangential::poly::parse_poly;
use tangential::scalar::FieldDescriptor;

fn main() -> tangential::Result<()> {
    let field = FieldDescriptor::Rationals;
    let f = parse_poly("x0^3 + x1^3 + x2^3", 3, field)?;
    let piece = jacobian_piece(&f)?;

    println!("f = {f}");
    println!("dim J_{{f,3}} = {} (ambient dim {})", piece.dimension(), piece.monomials().len());
    println!("first generators x_beta * df/dx_gamma:");
    for (beta, gamma, g) in piece.generators().iter().take(4) {
        println!("  ({beta},{gamma}) -> {g}");
    }

    // f itself always lies in its Jacobian piece when the characteristic
    // does not divide d, with witness (1/d) * Identity.
    let witness = piece.membership(&f)?.expect("f in J_{f,d}");
    println!("membership witness for f:\n{}", witness.entries());
    assert_eq!(witness, CoeffMatrix::euler_witness(&f)?);

    // a monomial outside the span is rejected
    let outside = parse_poly("x0*x1*x2", 3, field)?;
    println!("x0*x1*x2 member: {}", piece.membership(&outside)?.is_some());
    Ok(())
}
