//! The group of projective-line automorphisms preserving the root divisor
//! of a binary form, by exhaustive Mobius-map enumeration. Three simple
//! roots give all of S_3; four generic roots give the Klein four-group;
//! four roots with harmonic cross-ratio pick up an extra involution
//! (order 8); five generic roots leave only the identity.
//!
//! Run with: cargo run --example lin_group

use tangential::orbit::{binary_roots, lin_group_binary};
use tangential::poly::parse_poly;
use tangential::scalar::FieldDescriptor;

fn main() -> tangential::Result<()> {
    let field = FieldDescriptor::Rationals;
    let cases = [
        // x0*x1*(x0 - x1): roots {0, 1, oo}
        ("x0^2*x1 - x0*x1^2", "cubic {0, 1, oo}"),
        // x0*x1*(x0 - x1)*(x0 - 3*x1): cross-ratio 2/3, generic
        ("x0^3*x1 - 4*x0^2*x1^2 + 3*x0*x1^3", "quartic {0, 1, oo, 3} (generic)"),
        // x0*x1*(x0 - x1)*(x0 - 2*x1): cross-ratio 1/2, harmonic
        ("x0^3*x1 - 3*x0^2*x1^2 + 2*x0*x1^3", "quartic {0, 1, oo, 2} (harmonic)"),
        // x0*x1*(x0 - x1)*(x0 - 2*x1)*(x0 - 5*x1)
        (
            "x0^4*x1 - 8*x0^3*x1^2 + 17*x0^2*x1^3 - 10*x0*x1^4",
            "quintic {0, 1, oo, 2, 5}",
        ),
    ];
    for (text, label) in cases {
        let f = parse_poly(text, 2, field)?;
        let roots = binary_roots(&f)?.expect("splits over Q");
        let group = lin_group_binary(&roots)?;
        println!("{label}: group order {}", group.len());
        for m in &group {
            let rows: Vec<String> = (0..2)
                .map(|i| {
                    format!(
                        "{} {}",
                        m.matrix().get(i, 0),
                        m.matrix().get(i, 1)
                    )
                })
                .collect();
            println!("    [{} | {}]", rows[0], rows[1]);
        }
    }
    Ok(())
}
