//! Tangential deformation theory: the smoothability decision for isolated
//! singularities, randomized smoothing search with certificates, structural
//! obstruction certificates at points of multiplicity >= 3, the product
//! construction of totally tangentially unstable polynomials, the
//! Weierstrass cubic counterexample, and the tangent-space intersection
//! experiment.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::jacobian::{coordinates, jacobian_piece, CoeffMatrix};
use crate::linalg::{span_basis, subspace_intersection, DenseMatrix};
use crate::poly::{monomials_of_degree, HomPoly, Poly, ProjPoint};
use crate::scalar::{ensure_same_field, FieldDescriptor, Scalar};
use crate::smoothness::{has_isolated_singularities, is_smooth, singular_points_scan};

/// Witness that f + h is smooth for an explicit h in J_{f,d}.
#[derive(Debug, Clone)]
pub struct SmoothingCertificate {
    pub f: HomPoly,
    pub coeffs: CoeffMatrix,
    pub h: HomPoly,
    pub verified_smooth: bool,
    pub trials_used: u64,
    pub seed: u64,
}

impl SmoothingCertificate {
    /// Re-runs both checks backing the certificate: the coefficient matrix
    /// expands exactly to h, and f + h is smooth.
    pub fn revalidate(&self) -> Result<bool> {
        let expanded = self.coeffs.expand(&self.f)?;
        if expanded != self.h {
            return Ok(false);
        }
        is_smooth(&self.f.add(&self.h)?)
    }
}

/// Witness that f cannot be tangentially smoothed: a point of multiplicity
/// >= 3, where consequently every generator x_beta * df/dx_gamma has
/// multiplicity >= 2 (None marks zero generators, i.e. multiplicity
/// infinity).
#[derive(Debug, Clone)]
pub struct ObstructionCertificate {
    pub f: HomPoly,
    pub point: ProjPoint,
    pub multiplicity: u32,
    pub generator_multiplicities: Vec<Option<u32>>,
}

/// Outcome of the smoothability decision.
#[derive(Debug, Clone)]
pub enum SmoothableDecision {
    Smoothable,
    Obstructed(Box<ObstructionCertificate>),
    NotApplicable(String),
}

/// Decides tangential smoothability of a singular f with isolated
/// singularities: smoothable iff every singular point has multiplicity
/// exactly 2. `singular_points` must be the complete list of rational
/// singular points (over F_p this is cross-checked against the exhaustive
/// scan; over Q the supplied candidates are verified individually).
pub fn decide_smoothable(
    f: &HomPoly,
    singular_points: &[ProjPoint],
) -> Result<SmoothableDecision> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if is_smooth(f)? {
        return Err(Error::NotSingular);
    }
    for p in singular_points {
        let mult = f.multiplicity_at(p)?;
        if mult < 2 {
            return Err(Error::IncompletePointList(format!(
                "{p} has multiplicity {mult}, not a singular point"
            )));
        }
    }
    if let FieldDescriptor::PrimeField(_) = f.field() {
        let scan = singular_points_scan(f, &[])?;
        for (pt, _) in &scan.rational_singular_points {
            if !singular_points.contains(pt) {
                return Err(Error::IncompletePointList(format!(
                    "exhaustive scan found {pt}, missing from the supplied list"
                )));
            }
        }
    }
    if !has_isolated_singularities(f)? {
        return Ok(SmoothableDecision::NotApplicable(
            "singular locus has positive dimension".into(),
        ));
    }
    for p in singular_points {
        if f.multiplicity_at(p)? >= 3 {
            return Ok(SmoothableDecision::Obstructed(Box::new(
                obstruction_certificate(f, p)?,
            )));
        }
    }
    Ok(SmoothableDecision::Smoothable)
}

/// Deterministic per-trial generator: every trial derives its own stream
/// from (seed, index), so trial ranges can be partitioned freely without
/// changing the outcome.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha20Rng {
    let mut z = seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    ChaCha20Rng::seed_from_u64(z ^ (z >> 31))
}

/// Samples a coefficient matrix with entries uniform on the integers
/// [-3, 3] over Q, uniform on all residues over F_p.
pub fn sample_coeff_matrix(
    nvars: usize,
    field: FieldDescriptor,
    rng: &mut ChaCha20Rng,
) -> CoeffMatrix {
    let mut m = DenseMatrix::zeros(nvars, nvars, field);
    for i in 0..nvars {
        for j in 0..nvars {
            let v = match field {
                FieldDescriptor::Rationals => Scalar::from_integer(rng.gen_range(-3i64..=3), field),
                FieldDescriptor::PrimeField(p) => {
                    Scalar::from_integer(rng.gen_range(0..p) as i64, field)
                }
            };
            m.set(i, j, v);
        }
    }
    CoeffMatrix::new(m).expect("square by construction")
}

/// Randomized search for a smoothing deformation: samples coefficient
/// matrices, forms h = sum a_{beta,gamma} x_beta df/dx_gamma and accepts
/// the first h with f + h smooth. Returns None after `budget` failed
/// trials. Reproducible from (seed, budget).
pub fn find_smoothing(f: &HomPoly, budget: u64, seed: u64) -> Result<Option<SmoothingCertificate>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if is_smooth(f)? {
        return Err(Error::NotSingular);
    }
    let piece = jacobian_piece(f)?;
    for trial in 0..budget {
        let mut rng = trial_rng(seed, trial);
        let coeffs = sample_coeff_matrix(f.nvars(), f.field(), &mut rng);
        let h = coeffs.expand(f)?;
        let candidate = f.add(&h)?;
        if candidate.is_zero() {
            continue;
        }
        if is_smooth(&candidate)? {
            debug_assert!(piece.membership(&h)?.is_some());
            return Ok(Some(SmoothingCertificate {
                f: f.clone(),
                coeffs,
                h,
                verified_smooth: true,
                trials_used: trial + 1,
                seed,
            }));
        }
    }
    Ok(None)
}

/// Certificate for Prop-7.2-style obstructions: multiplicity >= 3 at the
/// point forces every Jacobian generator into the square of the maximal
/// ideal there, so no tangential deformation can smooth it.
pub fn obstruction_certificate(f: &HomPoly, p: &ProjPoint) -> Result<ObstructionCertificate> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let multiplicity = f.multiplicity_at(p)?;
    if multiplicity < 3 {
        return Err(Error::MultiplicityTooLow(multiplicity));
    }
    let piece = jacobian_piece(f)?;
    let mut generator_multiplicities = Vec::with_capacity(piece.generators().len());
    for (_, _, g) in piece.generators() {
        if g.is_zero() {
            generator_multiplicities.push(None);
        } else {
            let m = g.multiplicity_at(p)?;
            assert!(
                m >= 2,
                "generator multiplicity {m} < 2 contradicts the obstruction mechanism"
            );
            generator_multiplicities.push(Some(m));
        }
    }
    Ok(ObstructionCertificate {
        f: f.clone(),
        point: p.clone(),
        multiplicity,
        generator_multiplicities,
    })
}

/// At a multiplicity-2 point, searches all (n+1)^2 generator pairs for one
/// whose generator g = x_beta * df/dx_gamma makes f + g nonsingular at the
/// point (multiplicity <= 1 there). Returns the first hit in (beta, gamma)
/// lexicographic order.
pub fn smoothing_generator_at(
    f: &HomPoly,
    p: &ProjPoint,
) -> Result<Option<(usize, usize, HomPoly)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mult = f.multiplicity_at(p)?;
    if mult != 2 {
        return Err(Error::MultiplicityMismatch {
            expected: 2,
            got: mult,
        });
    }
    let piece = jacobian_piece(f)?;
    for (beta, gamma, g) in piece.generators() {
        let h = f.add(g)?;
        if h.is_zero() {
            continue;
        }
        if h.multiplicity_at(p)? <= 1 {
            return Ok(Some((*beta, *gamma, g.clone())));
        }
    }
    Ok(None)
}

/// The per-hypothesis verification flags of the product construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HypothesisReport {
    pub p1_smooth: bool,
    pub p2_smooth: bool,
    pub d1_ge_3: bool,
    pub d2_ge_3: bool,
    pub degrees_distinct: bool,
    pub total_ge_7: bool,
    pub rank_full_p1: bool,
    pub rank_full_p2: bool,
}

impl HypothesisReport {
    pub fn all_hold(&self) -> bool {
        self.p1_smooth
            && self.p2_smooth
            && self.d1_ge_3
            && self.d2_ge_3
            && self.degrees_distinct
            && self.total_ge_7
            && self.rank_full_p1
            && self.rank_full_p2
    }
}

/// A product f = p1 * p2 together with the hypothesis checks that certify
/// total tangential instability. Certification is by verifying the
/// hypotheses of the proved construction, not by an orbit search.
#[derive(Debug, Clone)]
pub struct TtuConstruction {
    pub p1: HomPoly,
    pub p2: HomPoly,
    pub f: HomPoly,
    pub d1: u32,
    pub d2: u32,
    pub hypothesis_report: HypothesisReport,
    pub certified: bool,
}

/// Builds f = p1 * p2 and verifies the hypotheses: both factors smooth of
/// degree >= 3, distinct degrees summing to >= 7, and full generator rank
/// (n+1)^2 for both factors.
pub fn construct_ttu(p1: &HomPoly, p2: &HomPoly) -> Result<TtuConstruction> {
    if p1.nvars() != p2.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {} variables",
            p1.nvars(),
            p2.nvars()
        )));
    }
    if p1.nvars() < 3 {
        return Err(Error::DimensionMismatch(
            "construction requires n >= 2 (at least 3 variables)".into(),
        ));
    }
    if p1.field() != p2.field() {
        return Err(Error::MixedFields);
    }
    if p1.is_zero() || p2.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let nv = p1.nvars();
    let full = nv * nv;
    let (d1, d2) = (p1.degree(), p2.degree());
    let report = HypothesisReport {
        p1_smooth: is_smooth(p1)?,
        p2_smooth: is_smooth(p2)?,
        d1_ge_3: d1 >= 3,
        d2_ge_3: d2 >= 3,
        degrees_distinct: d1 != d2,
        total_ge_7: d1 + d2 >= 7,
        rank_full_p1: jacobian_piece(p1)?.dimension() == full,
        rank_full_p2: jacobian_piece(p2)?.dimension() == full,
    };
    Ok(TtuConstruction {
        p1: p1.clone(),
        p2: p2.clone(),
        f: p1.mul(p2)?,
        d1,
        d2,
        certified: report.all_hold(),
        hypothesis_report: report,
    })
}

/// Outcome of the Weierstrass cubic verification.
#[derive(Debug, Clone)]
pub struct WeierstrassReport {
    pub f: HomPoly,
    pub h: HomPoly,
    pub t: Scalar,
    pub sqrt_one_plus_t: Scalar,
    pub membership: Option<CoeffMatrix>,
    pub substitution_matches: bool,
    pub independent_of_f: bool,
}

impl WeierstrassReport {
    pub fn all_checks_pass(&self) -> bool {
        self.membership.is_some() && self.substitution_matches && self.independent_of_f
    }
}

/// Verifies the Weierstrass-cubic counterexample to total tangential
/// instability at (n, d) = (2, 3): for f = z*y^2 - (x^3 + a*z^2*x + b*z^3)
/// and h = z*y^2, the deformation f + t*h equals f composed with the
/// y-scaling by sqrt(1+t), so h is a tangentially trivial deformation that
/// is not a multiple of f. Requires 1 + t to be a square and the cubic to
/// be nonsingular (4a^3 + 27b^2 != 0).
pub fn verify_weierstrass_counterexample(
    a: &Scalar,
    b: &Scalar,
    t: &Scalar,
) -> Result<WeierstrassReport> {
    ensure_same_field(a, b)?;
    ensure_same_field(a, t)?;
    let field = a.descriptor();
    let four = Scalar::from_integer(4, field);
    let twenty_seven = Scalar::from_integer(27, field);
    let disc = &(&four * &a.pow(3)) + &(&twenty_seven * &b.pow(2));
    if disc.is_zero() {
        return Err(Error::SingularCubic);
    }
    let one = Scalar::one(field);
    let s = (&one + t).sqrt().ok_or(Error::NotASquare)?;

    // x = x0, y = x1, z = x2
    let nv = 3;
    let mono = |e: [u32; 3]| crate::poly::Monomial::new(e.to_vec());
    let mut fp = Poly::zero(nv, field);
    fp.add_term(mono([0, 2, 1]), one.clone()); // z*y^2
    fp.add_term(mono([3, 0, 0]), -&one); // -x^3
    fp.add_term(mono([1, 0, 2]), -a); // -a*z^2*x
    fp.add_term(mono([0, 0, 3]), -b); // -b*z^3
    let f = HomPoly::from_poly(fp, 3)?;
    let h = HomPoly::monomial(mono([0, 2, 1]), one.clone());

    // (i) h lies in J_{f,3}
    let piece = jacobian_piece(&f)?;
    let membership = piece.membership(&h)?;

    // (ii) f + t*h = f o diag(1, s, 1) exactly
    let mut diag = DenseMatrix::zeros(nv, nv, field);
    diag.set(0, 0, one.clone());
    diag.set(1, 1, s.clone());
    diag.set(2, 2, one.clone());
    let lhs = f.add(&h.scale(t))?;
    let rhs = f.substitute_matrix(&diag)?;
    let substitution_matches = lhs == rhs;

    // (iii) h is not a scalar multiple of f
    let monomials = monomials_of_degree(nv, 3);
    let rows = vec![coordinates(&f, &monomials), coordinates(&h, &monomials)];
    let independent_of_f = span_basis(&rows, monomials.len(), field)?.len() == 2;

    Ok(WeierstrassReport {
        f,
        h,
        t: t.clone(),
        sqrt_one_plus_t: s,
        membership,
        substitution_matches,
        independent_of_f,
    })
}

/// Intersects the Jacobian pieces of `count` nearby perturbations
/// g_i = f + (1/(10+i)) * r_i of a smooth f over Q, where r_i are random
/// degree-d forms with integer coefficients in [-3, 3]. Returns the
/// dimension of the running intersection after each step; the local
/// variation statement predicts final dimension 0 once count exceeds
/// (n+1)^2.
pub fn tangent_intersection_experiment(
    f: &HomPoly,
    count: u64,
    seed: u64,
) -> Result<Vec<usize>> {
    if !f.field().is_rationals() {
        return Err(Error::InvalidArgument(
            "the intersection experiment runs over the rationals".into(),
        ));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !is_smooth(f)? {
        return Err(Error::NotSmooth);
    }
    if count == 0 {
        return Err(Error::InvalidArgument("count must be >= 1".into()));
    }
    let nv = f.nvars();
    let monomials = monomials_of_degree(nv, f.degree());
    let ambient = monomials.len();
    let field = f.field();

    let mut dims = Vec::with_capacity(count as usize);
    let mut current: Option<Vec<Vec<Scalar>>> = None;
    for i in 1..=count {
        let mut rng = trial_rng(seed, i);
        let g = loop {
            let r = Poly::from_terms(
                monomials.iter().map(|m| {
                    (
                        m.clone(),
                        Scalar::from_integer(rng.gen_range(-3i64..=3), field),
                    )
                }),
                nv,
                field,
            );
            let eps = Scalar::from_ratio(1, 10 + i as i64, field)?;
            let g = f.add(&HomPoly::from_poly(r, f.degree())?.scale(&eps))?;
            if !g.is_zero() {
                break g;
            }
        };
        let piece = jacobian_piece(&g)?;
        let basis: Vec<Vec<Scalar>> = piece.basis().to_vec();
        current = Some(match current {
            None => basis,
            Some(prev) => subspace_intersection(&[prev, basis], ambient, field)?,
        });
        dims.push(current.as_ref().unwrap().len());
    }
    Ok(dims)
}
