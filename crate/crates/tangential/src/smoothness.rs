//! Buchberger's algorithm (reduced Groebner bases under grevlex) and the
//! smoothness machinery built on it: zero-dimensionality of the gradient
//! ideal, combinatorial ideal dimension, and singular point scans.
//!
//! Smoothness over Q is decided purely by the Groebner zero-dimensionality
//! criterion, which is correct over the algebraic closure. Rational point
//! scans are exhaustive over F_p and candidate-verification over Q.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::poly::{HomPoly, Monomial, Poly, ProjPoint};
use crate::scalar::{FieldDescriptor, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    Grevlex,
}

/// A Groebner basis under grevlex. After `buchberger` completes the basis
/// is reduced: monic generators, no leading term divides another, tails
/// fully reduced.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    generators: Vec<Poly>,
    order: MonomialOrder,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.generators
            .iter()
            .filter_map(|g| g.leading_term().map(|(m, _)| m))
            .collect()
    }
}

/// Full reduction of `p` modulo `basis`: no term of the remainder is
/// divisible by any leading monomial of the basis. Deterministic; the
/// remainder is canonical when the basis is reduced.
fn reduce_full(p: &Poly, basis: &[Poly]) -> Poly {
    let mut work = p.clone();
    let mut remainder = Poly::zero(p.nvars(), p.field());
    'outer: while let Some((lm, lc)) = work.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        for g in basis {
            let Some((gm, gc)) = g.leading_term() else {
                continue;
            };
            if let Some(q) = gm.quotient_of(&lm) {
                let factor = lc.div(gc).expect("leading coefficient nonzero");
                work = &work - &g.mul_monomial(&q).scale(&factor);
                continue 'outer;
            }
        }
        // leading term irreducible: move it to the remainder
        remainder.add_term(lm.clone(), lc.clone());
        let mut rest = Poly::zero(p.nvars(), p.field());
        for (m, c) in work.terms() {
            if m != &lm {
                rest.add_term(m.clone(), c.clone());
            }
        }
        work = rest;
    }
    remainder
}

fn s_polynomial(f: &Poly, g: &Poly) -> Poly {
    let (fm, fc) = f.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let l = fm.lcm(gm);
    let uf = fm.quotient_of(&l).expect("lcm divisible");
    let ug = gm.quotient_of(&l).expect("lcm divisible");
    // Cross-multiplied form keeps integer coefficients integral over Q.
    let lhs = f.mul_monomial(&uf).scale(gc);
    let rhs = g.mul_monomial(&ug).scale(fc);
    &lhs - &rhs
}

/// Buchberger's algorithm with the normal selection strategy (minimal lcm
/// degree, then lexicographic pair index) and the coprime-leading-term and
/// chain criteria. Returns the reduced basis.
pub fn buchberger(gens: &[Poly]) -> GroebnerBasis {
    let mut basis: Vec<Poly> = Vec::new();
    let (mut nvars, mut field) = (0usize, FieldDescriptor::Rationals);
    for g in gens {
        nvars = g.nvars();
        field = g.field();
        if !g.is_zero() {
            basis.push(g.normalized_primitive());
        }
    }
    if basis.is_empty() {
        return GroebnerBasis {
            generators: Vec::new(),
            order: MonomialOrder::Grevlex,
            reduced: true,
        };
    }

    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pending.insert((i, j));
        }
    }

    while !pending.is_empty() {
        // Normal strategy: smallest lcm total degree, ties by pair index.
        let &(i, j) = pending
            .iter()
            .min_by_key(|(i, j)| {
                let (mi, _) = basis[*i].leading_term().unwrap();
                let (mj, _) = basis[*j].leading_term().unwrap();
                (mi.lcm(mj).degree(), *i, *j)
            })
            .unwrap();
        pending.remove(&(i, j));

        let (mi, _) = basis[i].leading_term().unwrap();
        let (mj, _) = basis[j].leading_term().unwrap();
        if mi.is_coprime_with(mj) {
            continue; // Buchberger's first criterion
        }
        let lcm_ij = mi.lcm(mj);
        // Chain criterion: some k with lm_k | lcm(i,j) and both remaining
        // pairs already handled.
        let chain = (0..basis.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            let (mk, _) = basis[k].leading_term().unwrap();
            mk.divides(&lcm_ij)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        let s = s_polynomial(&basis[i], &basis[j]);
        let r = reduce_full(&s, &basis);
        if r.is_zero() {
            continue;
        }
        let r = r.normalized_primitive();
        let new_idx = basis.len();
        basis.push(r);
        for k in 0..new_idx {
            pending.insert((k, new_idx));
        }
    }

    GroebnerBasis {
        generators: interreduce(basis, nvars, field),
        order: MonomialOrder::Grevlex,
        reduced: true,
    }
}

/// Minimalizes and tail-reduces a completed basis, normalizing every
/// generator to leading coefficient 1, sorted by leading monomial.
fn interreduce(mut basis: Vec<Poly>, _nvars: usize, _field: FieldDescriptor) -> Vec<Poly> {
    // Drop generators whose leading monomial is divisible by another's.
    basis.sort_by(|a, b| {
        a.leading_term()
            .map(|(m, _)| m.clone())
            .cmp(&b.leading_term().map(|(m, _)| m.clone()))
    });
    let mut keep: Vec<Poly> = Vec::new();
    for g in &basis {
        let (gm, _) = g.leading_term().unwrap();
        if !keep
            .iter()
            .any(|h| h.leading_term().unwrap().0.divides(gm))
        {
            keep.push(g.clone());
        }
    }
    // Tail-reduce each against the others.
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Poly> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .collect();
        out.push(reduce_full(&keep[i], &others).monic());
    }
    out.sort_by(|a, b| {
        a.leading_term()
            .map(|(m, _)| m.clone())
            .cmp(&b.leading_term().map(|(m, _)| m.clone()))
    });
    out
}

/// Canonical normal form of `h` modulo the basis; zero iff `h` lies in the
/// ideal generated by the basis.
pub fn normal_form(h: &Poly, gb: &GroebnerBasis) -> Poly {
    reduce_full(h, &gb.generators)
}

/// Groebner basis of the gradient ideal (df/dx_0, ..., df/dx_n).
pub fn gradient_basis(f: &HomPoly) -> GroebnerBasis {
    let gens: Vec<Poly> = f
        .gradient()
        .into_iter()
        .map(|g| g.into_poly())
        .collect();
    buchberger(&gens)
}

fn has_pure_power_for_every_variable(gb: &GroebnerBasis, nvars: usize) -> bool {
    // A leading monomial 1 means the ideal is the unit ideal: empty zero set.
    let lms = gb.leading_monomials();
    if lms.iter().any(|m| m.degree() == 0) {
        return true;
    }
    (0..nvars).all(|i| {
        lms.iter().any(|m| {
            m.exponent(i) > 0
                && m.exponents()
                    .iter()
                    .enumerate()
                    .all(|(j, &e)| j == i || e == 0)
        })
    })
}

/// Decides smoothness of the hypersurface f = 0 over the algebraic closure:
/// true iff the gradient ideal vanishes only at the affine origin, detected
/// by pure powers of every variable among the leading terms of its reduced
/// Groebner basis. Requires characteristic 0 or p > deg f.
pub fn is_smooth(f: &HomPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    f.field().check_characteristic(f.degree())?;
    let gb = gradient_basis(f);
    Ok(has_pure_power_for_every_variable(&gb, f.nvars()))
}

/// Krull dimension of the affine zero set of the ideal generated by
/// homogeneous `gens`, computed combinatorially from the leading-term
/// ideal: the maximal size of a variable subset S such that no leading
/// monomial is supported entirely inside S.
pub fn ideal_dimension(gens: &[HomPoly]) -> usize {
    let Some(first) = gens.first() else {
        return 0;
    };
    let nvars = first.nvars();
    let polys: Vec<Poly> = gens.iter().map(|g| g.as_poly().clone()).collect();
    let gb = buchberger(&polys);
    dimension_of_leading_terms(&gb, nvars)
}

fn dimension_of_leading_terms(gb: &GroebnerBasis, nvars: usize) -> usize {
    let lms = gb.leading_monomials();
    let mut best = 0usize;
    for mask in 0u32..(1 << nvars) {
        let inside = |i: usize| mask & (1 << i) != 0;
        let ok = lms.iter().all(|m| {
            // reject S if the full support of m lies inside S
            !(0..nvars).all(|i| m.exponent(i) == 0 || inside(i))
        });
        if ok {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

/// True when the singular locus of the (singular) hypersurface consists of
/// finitely many points: the gradient ideal's affine zero set is the cone
/// over them, of dimension <= 1.
pub fn has_isolated_singularities(f: &HomPoly) -> Result<bool> {
    if is_smooth(f)? {
        return Err(Error::NotSingular);
    }
    Ok(ideal_dimension(&f.gradient()) <= 1)
}

/// Report of a singular locus computation. `smooth` always comes from the
/// Groebner criterion and is authoritative over the algebraic closure;
/// the point list is exhaustive over F_p and candidate-verified over Q.
#[derive(Debug, Clone)]
pub struct SingularLocusReport {
    pub smooth: bool,
    pub rational_singular_points: Vec<(ProjPoint, u32)>,
    pub ideal_dimension: usize,
    pub exhaustive_over: Option<FieldDescriptor>,
}

/// All points of P^n(F_p), normalized so the last nonzero coordinate is 1,
/// enumerated chart by chart: (p^{n+1} - 1)/(p - 1) points.
pub fn projective_points(nvars: usize, p: u64, field: FieldDescriptor) -> Vec<ProjPoint> {
    let mut out = Vec::new();
    for chart in 0..nvars {
        let mut digits = vec![0u64; chart];
        loop {
            let mut coords = Vec::with_capacity(nvars);
            for &d in &digits {
                coords.push(Scalar::from_integer(d as i64, field));
            }
            coords.push(Scalar::one(field));
            coords.resize(nvars, Scalar::zero(field));
            out.push(ProjPoint::new(coords).expect("last coordinate is 1"));
            // odometer
            let mut i = 0;
            loop {
                if i == digits.len() {
                    break;
                }
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
    }
    out
}

/// Scans for rational singular points. Over F_p every projective rational
/// point is tested for gradient vanishing (exhaustive); over Q the caller
/// supplies candidates and each is verified. Points are annotated with
/// their multiplicity.
pub fn singular_points_scan(
    f: &HomPoly,
    candidates: &[ProjPoint],
) -> Result<SingularLocusReport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    f.field().check_characteristic(f.degree())?;
    let smooth = is_smooth(f)?;
    let dim = ideal_dimension(&f.gradient());
    let grad = f.gradient();
    let mut found = Vec::new();
    match f.field() {
        FieldDescriptor::PrimeField(p) => {
            for pt in projective_points(f.nvars(), p, f.field()) {
                let vanishes = grad
                    .iter()
                    .all(|g| g.is_zero() || g.evaluate(&pt).unwrap().is_zero());
                let on_hypersurface = f.evaluate(&pt)?.is_zero();
                if vanishes && on_hypersurface {
                    let mult = f.multiplicity_at(&pt)?;
                    found.push((pt, mult));
                }
            }
        }
        FieldDescriptor::Rationals => {
            for pt in candidates {
                let mult = f.multiplicity_at(pt)?;
                if mult >= 2 {
                    found.push((pt.clone(), mult));
                }
            }
        }
    }
    Ok(SingularLocusReport {
        smooth,
        rational_singular_points: found,
        ideal_dimension: dim,
        exhaustive_over: match f.field() {
            FieldDescriptor::PrimeField(_) => Some(f.field()),
            FieldDescriptor::Rationals => None,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    const QQ: FieldDescriptor = FieldDescriptor::Rationals;

    fn q(text: &str, nvars: usize) -> HomPoly {
        parse_poly(text, nvars, QQ).unwrap()
    }

    fn gb_of(texts: &[&str], nvars: usize) -> GroebnerBasis {
        let gens: Vec<Poly> = texts
            .iter()
            .map(|t| q(t, nvars).as_poly().clone())
            .collect();
        buchberger(&gens)
    }

    #[test]
    fn single_generator_basis() {
        let gb = gb_of(&["x0"], 2);
        assert_eq!(gb.generators().len(), 1);
        assert_eq!(gb.generators()[0].to_string(), "x0");
    }

    #[test]
    fn empty_input_empty_basis() {
        let gb = buchberger(&[]);
        assert!(gb.generators().is_empty());
        assert!(gb.is_reduced());
    }

    #[test]
    fn spoly_produces_pure_power() {
        // S-polynomial of (x0*x1, x0^2 - x1^2) reduces to x1^3; the
        // leading-term ideal then contains pure powers of both variables.
        let gb = gb_of(&["x0*x1", "x0^2 - x1^2"], 2);
        let lms = gb.leading_monomials();
        assert!(lms.iter().any(|m| m.exponents() == [2, 0]));
        assert!(lms.iter().any(|m| m.exponents() == [0, 3]));
    }

    #[test]
    fn normal_form_examples() {
        let gb = gb_of(&["x0*x1", "x0^2 - x1^2"], 2);
        for g in gb.generators() {
            assert!(normal_form(g, &gb).is_zero());
        }
        let one = Poly::constant(Scalar::one(QQ), 3);
        let vars = gb_of(&["x0", "x1", "x2"], 3);
        assert_eq!(normal_form(&one, &vars), one);
        let sq = q("x0^2", 2).as_poly().clone();
        let just_x0 = gb_of(&["x0"], 2);
        assert!(normal_form(&sq, &just_x0).is_zero());
    }

    #[test]
    fn buchberger_criterion_audit() {
        // every S-polynomial of the completed basis reduces to zero
        for texts in [
            vec!["x0*x1", "x0^2 - x1^2"],
            vec!["x0^2 + x1*x2", "x1^2 - x0*x2", "x2^2 + x0*x1"],
        ] {
            let gb = gb_of(&texts, 3.min(texts.len() + 1).max(3));
            let gens = gb.generators();
            for i in 0..gens.len() {
                for j in (i + 1)..gens.len() {
                    let s = s_polynomial(&gens[i], &gens[j]);
                    assert!(reduce_full(&s, gens).is_zero());
                }
            }
        }
    }

    #[test]
    fn fermat_family_is_smooth() {
        for nvars in [2usize, 3, 4] {
            for d in 2u32..=6 {
                let text = (0..nvars)
                    .map(|i| format!("x{i}^{d}"))
                    .collect::<Vec<_>>()
                    .join(" + ");
                let f = q(&text, nvars);
                assert!(is_smooth(&f).unwrap(), "fermat n+1={nvars} d={d}");
            }
        }
    }

    #[test]
    fn singular_examples_detected() {
        assert!(!is_smooth(&q("x0^2*x2", 3)).unwrap());
        assert!(!is_smooth(&q("x1^2*x2 - x0^3 - x0^2*x2", 3)).unwrap());
        assert!(!is_smooth(&q("x0^4 + x1^3*x2", 3)).unwrap());
    }

    #[test]
    fn weierstrass_smooth_iff_discriminant_nonzero() {
        // a=0, b=1: 4a^3 + 27b^2 = 27 != 0, cross-validated by Groebner.
        let f = q("x2*x1^2 - x0^3 - x2^3", 3);
        assert!(is_smooth(&f).unwrap());
        // a=0, b=0: cuspidal cubic, discriminant zero.
        let g = q("x2*x1^2 - x0^3", 3);
        assert!(!is_smooth(&g).unwrap());
    }

    #[test]
    fn characteristic_guard() {
        let f3 = FieldDescriptor::prime_field(3).unwrap();
        let f = parse_poly("x0^3 + x1^3 + x2^3", 3, f3).unwrap();
        assert!(matches!(
            is_smooth(&f),
            Err(Error::CharacteristicTooSmall { .. })
        ));
    }

    #[test]
    fn ideal_dimension_examples() {
        let fermat = q("x0^3 + x1^3 + x2^3", 3);
        assert_eq!(ideal_dimension(&fermat.gradient()), 0);
        assert_eq!(ideal_dimension(&[q("x0", 3), q("x1", 3)]), 1);
        assert_eq!(ideal_dimension(&[]), 0);
        // zero ideal in 3 variables: handled via an explicit zero generator
        assert_eq!(ideal_dimension(&[HomPoly::zero(3, 1, QQ)]), 3);
    }

    #[test]
    fn smooth_iff_dimension_zero() {
        for text in [
            "x0^3 + x1^3 + x2^3",
            "x1^2*x2 - x0^3 - x0^2*x2",
            "x0^2*x2",
            "x0^4 + x1^3*x2",
            "x2*x1^2 - x0^3 - x2^3",
        ] {
            let f = q(text, 3);
            assert_eq!(
                is_smooth(&f).unwrap(),
                ideal_dimension(&f.gradient()) == 0,
                "{text}"
            );
        }
    }

    #[test]
    fn isolated_singularities() {
        assert!(has_isolated_singularities(&q("x1^2*x2 - x0^3 - x0^2*x2", 3)).unwrap());
        assert!(has_isolated_singularities(&q("x0^4 + x1^3*x2", 3)).unwrap());
        assert!(!has_isolated_singularities(&q("x0^2*x2^2", 3)).unwrap());
        assert_eq!(
            has_isolated_singularities(&q("x0^3 + x1^3 + x2^3", 3)),
            Err(Error::NotSingular)
        );
    }

    #[test]
    fn projective_point_counts() {
        let f7 = FieldDescriptor::prime_field(7).unwrap();
        assert_eq!(projective_points(3, 7, f7).len(), 57);
        let f3 = FieldDescriptor::prime_field(3).unwrap();
        assert_eq!(projective_points(2, 3, f3).len(), 4);
    }

    #[test]
    fn scan_nodal_cubic_over_f7() {
        let f7 = FieldDescriptor::prime_field(7).unwrap();
        let f = parse_poly("x1^2*x2 - x0^3 - x0^2*x2", 3, f7).unwrap();
        let report = singular_points_scan(&f, &[]).unwrap();
        assert!(!report.smooth);
        assert_eq!(report.exhaustive_over, Some(f7));
        assert_eq!(report.rational_singular_points.len(), 1);
        let (pt, mult) = &report.rational_singular_points[0];
        assert_eq!(pt, &ProjPoint::from_integers(&[0, 0, 1], f7).unwrap());
        assert_eq!(*mult, 2);
    }

    #[test]
    fn scan_fermat_cubic_over_f7() {
        let f7 = FieldDescriptor::prime_field(7).unwrap();
        let f = parse_poly("x0^3 + x1^3 + x2^3", 3, f7).unwrap();
        let report = singular_points_scan(&f, &[]).unwrap();
        assert!(report.smooth);
        assert!(report.rational_singular_points.is_empty());
        assert_eq!(report.ideal_dimension, 0);
    }

    #[test]
    fn scan_verifies_rational_candidates() {
        let f = q("x0^4 + x1^3*x2", 3);
        let p = ProjPoint::from_integers(&[0, 0, 1], QQ).unwrap();
        let not_singular = ProjPoint::from_integers(&[1, 1, 1], QQ).unwrap();
        let report = singular_points_scan(&f, &[p.clone(), not_singular]).unwrap();
        assert_eq!(report.rational_singular_points, vec![(p, 3)]);
        assert_eq!(report.exhaustive_over, None);
    }

    #[test]
    fn smoothness_is_gl_invariant() {
        use crate::linalg::DenseMatrix;
        let a = DenseMatrix::from_rows(
            &[
                vec![
                    Scalar::from_integer(1, QQ),
                    Scalar::from_integer(2, QQ),
                    Scalar::from_integer(1, QQ),
                ],
                vec![
                    Scalar::from_integer(0, QQ),
                    Scalar::from_integer(1, QQ),
                    Scalar::from_integer(1, QQ),
                ],
                vec![
                    Scalar::from_integer(1, QQ),
                    Scalar::from_integer(0, QQ),
                    Scalar::from_integer(1, QQ),
                ],
            ],
            QQ,
        )
        .unwrap();
        assert!(a.is_invertible());
        for text in ["x0^3 + x1^3 + x2^3", "x1^2*x2 - x0^3 - x0^2*x2", "x0^2*x2"] {
            let f = q(text, 3);
            let g = f.substitute_matrix(&a).unwrap();
            assert_eq!(is_smooth(&f).unwrap(), is_smooth(&g).unwrap(), "{text}");
        }
    }
}
