//! Brute-force finite-field oracles: projective equivalence under
//! GL(n+1, F_p), tangential-triviality scans, divisor search and pencil
//! reducibility scans, binary-form root extraction and the group of
//! projective-line automorphisms preserving a root divisor.
//!
//! These scans are heuristic analogues of the characteristic-zero
//! statements: "for all sufficiently small t" becomes "for all t in F_p",
//! and characteristic-p artifacts (d-th power obstructions, missing square
//! roots) show up in the reports instead of being hidden. Cost guards are
//! hard preconditions; nothing is silently truncated.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::jacobian::{coordinates, jacobian_piece};
use crate::linalg::{solve, span_basis, DenseMatrix};
use crate::poly::{monomials_of_degree, HomPoly, Poly, ProjPoint};
use crate::scalar::{FieldDescriptor, Scalar};

/// Comparison mode for orbit membership: `Strict` matches f o A = g
/// exactly (the group action); `Projective` allows f o A = lambda * g.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceMode {
    Strict,
    Projective,
}

/// Which matrices the scans range over: the group GL(n+1, F_p), or every
/// matrix (the orbit-closure analogue).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixMode {
    InvertibleOnly,
    AllMatrices,
}

/// An explicit matrix A (with scalar lambda in projective mode) certifying
/// f o A = lambda * g. Always re-validated by exact substitution before
/// being returned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub matrix: DenseMatrix,
    pub lambda: Scalar,
    pub mode: EquivalenceMode,
}

/// Hard cost guard for full GL enumerations: p^{(n+1)^2} substitution
/// candidates must stay at desk scale.
fn check_enumeration_guard(nvars: usize, p: u64) -> Result<()> {
    let n = nvars - 1;
    let ok = matches!((n, p), (1, _) if p <= 13)
        || matches!((n, p), (2, _) if p <= 5)
        || matches!((n, p), (3, _) if p <= 3);
    if ok {
        Ok(())
    } else {
        Err(Error::BudgetExceeded(format!(
            "matrix enumeration over F_{p} with n = {n} exceeds the cost guard \
             (allowed: n=1 with p<=13, n=2 with p<=5, n=3 with p<=3)"
        )))
    }
}

fn require_prime_field(f: &HomPoly) -> Result<u64> {
    match f.field() {
        FieldDescriptor::PrimeField(p) => Ok(p),
        FieldDescriptor::Rationals => Err(Error::InvalidArgument(
            "this oracle enumerates a finite field; use --field fp:P".into(),
        )),
    }
}

/// Row-major odometer over all (n+1) x (n+1) matrices with entries in F_p.
/// Entry (0,0) varies fastest; fully deterministic.
pub struct MatrixEnumerator {
    nvars: usize,
    p: u64,
    field: FieldDescriptor,
    digits: Vec<u64>,
    done: bool,
}

impl MatrixEnumerator {
    pub fn new(nvars: usize, field: FieldDescriptor) -> Result<Self> {
        let FieldDescriptor::PrimeField(p) = field else {
            return Err(Error::InvalidArgument(
                "matrix enumeration needs a finite field".into(),
            ));
        };
        Ok(MatrixEnumerator {
            nvars,
            p,
            field,
            digits: vec![0; nvars * nvars],
            done: false,
        })
    }
}

impl Iterator for MatrixEnumerator {
    type Item = DenseMatrix;

    fn next(&mut self) -> Option<DenseMatrix> {
        if self.done {
            return None;
        }
        let entries: Vec<Scalar> = self
            .digits
            .iter()
            .map(|&d| Scalar::from_integer(d as i64, self.field))
            .collect();
        let m = DenseMatrix::new(self.nvars, self.nvars, entries, self.field)
            .expect("enumerator dimensions consistent");
        let mut i = 0;
        loop {
            if i == self.digits.len() {
                self.done = true;
                break;
            }
            self.digits[i] += 1;
            if self.digits[i] < self.p {
                break;
            }
            self.digits[i] = 0;
            i += 1;
        }
        Some(m)
    }
}

/// Finds lambda with u = lambda * v, if any (both nonzero).
fn proportionality(u: &HomPoly, v: &HomPoly) -> Option<Scalar> {
    if u.num_terms() != v.num_terms() {
        return None;
    }
    let (m0, c0) = v.terms().next()?;
    let lambda = u.coeff(m0).div(c0).ok()?;
    if lambda.is_zero() {
        return None;
    }
    for (m, c) in v.terms() {
        if u.coeff(m) != c * &lambda {
            return None;
        }
    }
    Some(lambda)
}

fn match_target(
    image: &HomPoly,
    target: &HomPoly,
    mode: EquivalenceMode,
) -> Option<Scalar> {
    match mode {
        EquivalenceMode::Strict => (image == target).then(|| Scalar::one(target.field())),
        EquivalenceMode::Projective => proportionality(image, target),
    }
}

/// Exhaustive search for A in GL(n+1, F_p) with f o A = g (or lambda * g).
/// Returns the first witness in the deterministic enumeration order, or
/// None when the orbits differ.
pub fn is_equivalent_fp(
    f: &HomPoly,
    g: &HomPoly,
    mode: EquivalenceMode,
) -> Result<Option<EquivalenceWitness>> {
    let p = require_prime_field(f)?;
    if f.field() != g.field() {
        return Err(Error::MixedFields);
    }
    if f.nvars() != g.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {} variables",
            f.nvars(),
            g.nvars()
        )));
    }
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            expected: f.degree(),
            got: g.degree(),
        });
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    check_enumeration_guard(f.nvars(), p)?;
    for a in MatrixEnumerator::new(f.nvars(), f.field())? {
        if !a.is_invertible() {
            continue;
        }
        let image = f.substitute_matrix(&a)?;
        if let Some(lambda) = match_target(&image, g, mode) {
            return Ok(Some(EquivalenceWitness {
                matrix: a,
                lambda,
                mode,
            }));
        }
    }
    Ok(None)
}

/// One deformation parameter value in a triviality scan.
#[derive(Debug, Clone)]
pub struct FiberScan {
    pub t: Scalar,
    /// f + t*h collapsed to the zero polynomial; excluded from pass/fail.
    pub degenerate: bool,
    pub witness: Option<EquivalenceWitness>,
}

/// Scan result for one candidate deformation h.
#[derive(Debug, Clone)]
pub struct CandidateScan {
    pub h: HomPoly,
    /// Every non-degenerate fiber admits a witness.
    pub passes: bool,
    pub fibers: Vec<FiberScan>,
}

/// Finite-field analogue of the tangential-triviality locus: for each
/// candidate h and every t in F_p, decide whether f + t*h lies in the
/// orbit of f (InvertibleOnly) or in {f o A : A any matrix} (AllMatrices).
#[derive(Debug, Clone)]
pub struct TrivialityScan {
    pub f: HomPoly,
    pub matrix_mode: MatrixMode,
    pub eq_mode: EquivalenceMode,
    pub tested: Vec<CandidateScan>,
}

/// Runs the scan. With an empty candidate list the echelonized basis of
/// J_{f,d} is scanned, covering every tangential direction.
pub fn triviality_scan_fp(
    f: &HomPoly,
    candidates: &[HomPoly],
    matrix_mode: MatrixMode,
    eq_mode: EquivalenceMode,
) -> Result<TrivialityScan> {
    let p = require_prime_field(f)?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    check_enumeration_guard(f.nvars(), p)?;
    let candidates: Vec<HomPoly> = if candidates.is_empty() {
        jacobian_piece(f)?.basis_polys()
    } else {
        candidates.to_vec()
    };
    let mut tested = Vec::with_capacity(candidates.len());
    for h in candidates {
        if h.field() != f.field() {
            return Err(Error::MixedFields);
        }
        let mut fibers = Vec::with_capacity(p as usize);
        let mut passes = true;
        for tv in 0..p {
            let t = Scalar::from_integer(tv as i64, f.field());
            let deformed = f.add(&h.scale(&t))?;
            if deformed.is_zero() {
                fibers.push(FiberScan {
                    t,
                    degenerate: true,
                    witness: None,
                });
                continue;
            }
            let mut witness = None;
            for a in MatrixEnumerator::new(f.nvars(), f.field())? {
                if matrix_mode == MatrixMode::InvertibleOnly && !a.is_invertible() {
                    continue;
                }
                let image = f.substitute_matrix(&a)?;
                if let Some(lambda) = match_target(&image, &deformed, eq_mode) {
                    witness = Some(EquivalenceWitness {
                        matrix: a,
                        lambda,
                        mode: eq_mode,
                    });
                    break;
                }
            }
            passes &= witness.is_some();
            fibers.push(FiberScan {
                t,
                degenerate: false,
                witness,
            });
        }
        tested.push(CandidateScan { h, passes, fibers });
    }
    Ok(TrivialityScan {
        f: f.clone(),
        matrix_mode,
        eq_mode,
        tested,
    })
}

/// Exact quotient F / g as a linear solve in the quotient's coefficients,
/// None when g does not divide F.
pub fn divides_exactly(big_f: &HomPoly, g: &HomPoly) -> Result<Option<HomPoly>> {
    if g.is_zero() || big_f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if g.degree() > big_f.degree() {
        return Ok(None);
    }
    let nv = big_f.nvars();
    let field = big_f.field();
    let qdeg = big_f.degree() - g.degree();
    let target_monos = monomials_of_degree(nv, big_f.degree());
    let q_monos = monomials_of_degree(nv, qdeg);
    // Column j holds the coordinates of g * q_monos[j].
    let cols: Vec<Vec<Scalar>> = q_monos
        .iter()
        .map(|m| {
            let shifted = g.as_poly().mul_monomial(m);
            target_monos.iter().map(|t| shifted.coeff(t)).collect()
        })
        .collect();
    let matrix = DenseMatrix::from_rows(&cols, field)?.transpose();
    let rhs = coordinates(big_f, &target_monos);
    let Some(x) = solve(&matrix, &rhs)? else {
        return Ok(None);
    };
    let quotient = HomPoly::from_poly(
        Poly::from_terms(q_monos.into_iter().zip(x), nv, field),
        qdeg,
    )?;
    debug_assert_eq!(g.mul(&quotient)?, *big_f);
    Ok(Some(quotient))
}

/// Normalized (first nonzero coefficient 1) degree-k forms over F_p, in
/// deterministic order; (p^M - 1)/(p - 1) of them with M = dim S_{n,k}.
fn normalized_forms(nvars: usize, degree: u32, field: FieldDescriptor) -> Result<Vec<HomPoly>> {
    let FieldDescriptor::PrimeField(p) = field else {
        return Err(Error::InvalidArgument(
            "form enumeration needs a finite field".into(),
        ));
    };
    let monos = monomials_of_degree(nvars, degree);
    let m = monos.len();
    let mut out = Vec::new();
    for lead in 0..m {
        let free = m - lead - 1;
        let mut digits = vec![0u64; free];
        loop {
            let mut coeffs = vec![Scalar::zero(field); m];
            coeffs[lead] = Scalar::one(field);
            for (i, &d) in digits.iter().enumerate() {
                coeffs[lead + 1 + i] = Scalar::from_integer(d as i64, field);
            }
            out.push(
                HomPoly::from_poly(
                    Poly::from_terms(
                        monos.iter().cloned().zip(coeffs),
                        nvars,
                        field,
                    ),
                    degree,
                )
                .expect("degree-homogeneous by construction"),
            );
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
    Ok(out)
}

/// Number of normalized degree-k forms, used against the enumeration cap.
fn enumeration_count(nvars: usize, degree: u32, p: u64) -> u128 {
    let m = monomials_of_degree(nvars, degree).len() as u32;
    let mut total = 0u128;
    let mut power = 1u128;
    for _ in 0..m {
        total += power;
        power = power.saturating_mul(p as u128);
    }
    total
}

/// Searches for a degree-k divisor of F over F_p by enumerating normalized
/// forms and testing divisibility with a linear solve. Returns the first
/// divisor in enumeration order.
pub fn divisor_search(big_f: &HomPoly, k: u32, cap: u64) -> Result<Option<HomPoly>> {
    let p = require_prime_field(big_f)?;
    if big_f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if k < 1 || k > big_f.degree() / 2 {
        return Err(Error::InvalidArgument(format!(
            "divisor degree k = {k} outside 1..={}",
            big_f.degree() / 2
        )));
    }
    let count = enumeration_count(big_f.nvars(), k, p);
    if count > cap as u128 {
        return Err(Error::BudgetExceeded(format!(
            "{count} candidate divisors of degree {k} exceed the cap {cap}"
        )));
    }
    for g in normalized_forms(big_f.nvars(), k, big_f.field())? {
        if divides_exactly(big_f, &g)?.is_some() {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// One member of a pencil, classified by reducibility.
#[derive(Debug, Clone)]
pub struct FiberReport {
    pub lambda: Scalar,
    pub mu: Scalar,
    pub fiber: HomPoly,
    pub reducible: bool,
    pub factor_witness: Option<HomPoly>,
}

/// Classification of all p+1 fibers of the pencil lambda*f + mu*g over
/// P^1(F_p), with the reducible-fiber bound d^2 - 1 recorded whenever at
/// least one fiber is irreducible.
#[derive(Debug, Clone)]
pub struct PencilReport {
    pub f: HomPoly,
    pub g: HomPoly,
    pub fibers: Vec<FiberReport>,
    pub reducible_count: usize,
    pub generic_irreducible: bool,
    pub reducible_bound: u32,
    pub bound_holds: bool,
}

/// Scans the full pencil. Coprimality is enforced first: proportional
/// inputs and any common divisor of degree <= d/2 raise NotCoprime.
pub fn pencil_scan_fp(f: &HomPoly, g: &HomPoly, cap: u64) -> Result<PencilReport> {
    let p = require_prime_field(f)?;
    if f.field() != g.field() {
        return Err(Error::MixedFields);
    }
    if f.nvars() != g.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {} variables",
            f.nvars(),
            g.nvars()
        )));
    }
    if f.nvars() < 3 {
        return Err(Error::DimensionMismatch(
            "pencil scan requires n >= 2 (at least 3 variables)".into(),
        ));
    }
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            expected: f.degree(),
            got: g.degree(),
        });
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = f.degree();
    // proportional pencils have a fixed component (and a zero fiber)
    let monos = monomials_of_degree(f.nvars(), d);
    let rows = vec![coordinates(f, &monos), coordinates(g, &monos)];
    if span_basis(&rows, monos.len(), f.field())?.len() < 2 {
        return Err(Error::NotCoprime);
    }
    // common divisor of degree <= d/2
    for k in 1..=(d / 2) {
        let count = enumeration_count(f.nvars(), k, p);
        if count > cap as u128 {
            return Err(Error::BudgetExceeded(format!(
                "{count} coprimality candidates of degree {k} exceed the cap {cap}"
            )));
        }
        for h in normalized_forms(f.nvars(), k, f.field())? {
            if divides_exactly(f, &h)?.is_some() && divides_exactly(g, &h)?.is_some() {
                return Err(Error::NotCoprime);
            }
        }
    }

    let one = Scalar::one(f.field());
    let zero = Scalar::zero(f.field());
    let mut fibers = Vec::with_capacity(p as usize + 1);
    let mut pairs: Vec<(Scalar, Scalar)> = (0..p)
        .map(|t| (one.clone(), Scalar::from_integer(t as i64, f.field())))
        .collect();
    pairs.push((zero, one.clone()));
    for (lambda, mu) in pairs {
        let fiber = f.scale(&lambda).add(&g.scale(&mu))?;
        let mut witness = None;
        for k in 1..=(d / 2) {
            if let Some(w) = divisor_search(&fiber, k, cap)? {
                witness = Some(w);
                break;
            }
        }
        fibers.push(FiberReport {
            lambda,
            mu,
            reducible: witness.is_some(),
            factor_witness: witness,
            fiber,
        });
    }
    let reducible_count = fibers.iter().filter(|f| f.reducible).count();
    let generic_irreducible = fibers.iter().any(|f| !f.reducible);
    let reducible_bound = d * d - 1;
    let bound_holds = !generic_irreducible || reducible_count as u32 <= reducible_bound;
    Ok(PencilReport {
        f: f.clone(),
        g: g.clone(),
        fibers,
        reducible_count,
        generic_irreducible,
        reducible_bound,
        bound_holds,
    })
}

/// Roots of a binary form over the base field with multiplicities, or None
/// when the form does not split completely. The point (1:0) carries the
/// multiplicity of the x1factor; finite roots (r:1) come from the
/// dehomogenization.
pub fn binary_roots(f: &HomPoly) -> Result<Option<Vec<(ProjPoint, u32)>>> {
    if f.nvars() != 2 {
        return Err(Error::NotBinaryForm);
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field();
    let d = f.degree();
    let x1_val: u32 = f.terms().map(|(m, _)| m.exponent(1)).min().unwrap();
    // u(x) = (f / x1^{x1_val})(x, 1), degree d - x1_val with nonzero lead
    let udeg = (d - x1_val) as usize;
    let mut u = vec![Scalar::zero(field); udeg + 1];
    for (m, c) in f.terms() {
        u[m.exponent(0) as usize] = c.clone();
    }
    let mut roots: Vec<(ProjPoint, u32)> = Vec::new();
    let mut accounted = 0u32;
    if x1_val > 0 {
        roots.push((
            ProjPoint::from_integers(&[1, 0], field)?,
            x1_val,
        ));
        accounted += x1_val;
    }
    let candidates: Vec<Scalar> = match field {
        FieldDescriptor::PrimeField(p) => {
            (0..p).map(|r| Scalar::from_integer(r as i64, field)).collect()
        }
        FieldDescriptor::Rationals => rational_root_candidates(&u)?,
    };
    for r in candidates {
        let mut mult = 0u32;
        while eval_univariate(&u, &r).is_zero() && degree_of(&u) > Some(0) {
            synthetic_divide(&mut u, &r);
            mult += 1;
        }
        if mult > 0 {
            roots.push((
                ProjPoint::new(vec![r, Scalar::one(field)])?,
                mult,
            ));
            accounted += mult;
        }
    }
    if accounted < d {
        return Ok(None);
    }
    Ok(Some(roots))
}

fn degree_of(u: &[Scalar]) -> Option<u32> {
    u.iter().rposition(|c| !c.is_zero()).map(|d| d as u32)
}

fn eval_univariate(u: &[Scalar], x: &Scalar) -> Scalar {
    let field = x.descriptor();
    let mut acc = Scalar::zero(field);
    for c in u.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// In-place division by (X - r), assuming r is a root.
fn synthetic_divide(u: &mut Vec<Scalar>, r: &Scalar) {
    let d = degree_of(u).expect("nonzero") as usize;
    let field = r.descriptor();
    let mut q = vec![Scalar::zero(field); d];
    let mut carry = Scalar::zero(field);
    for i in (0..d).rev() {
        carry = &u[i + 1] + &(&carry * r);
        q[i] = carry.clone();
    }
    debug_assert!((&u[0] + &(&carry * r)).is_zero());
    *u = q;
}

/// Rational root candidates p/q with p | constant and q | leading term of
/// the primitive integer scaling (rational root theorem).
fn rational_root_candidates(u: &[Scalar]) -> Result<Vec<Scalar>> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed, ToPrimitive, Zero};
    let field = FieldDescriptor::Rationals;
    let Some(d) = degree_of(u) else {
        return Ok(Vec::new());
    };
    if d == 0 {
        return Ok(Vec::new());
    }
    let mut den_lcm = BigInt::one();
    for c in u {
        if let Scalar::Rat(r) = c {
            den_lcm = den_lcm.lcm(r.denom());
        }
    }
    let ints: Vec<BigInt> = u
        .iter()
        .map(|c| match c {
            Scalar::Rat(r) => r.numer() * &den_lcm / r.denom(),
            _ => unreachable!(),
        })
        .collect();
    // strip zero roots (positive valuation in x)
    let val = ints.iter().position(|c| !c.is_zero()).unwrap();
    let a0 = ints[val].abs();
    let lead = ints[degree_of(u).unwrap() as usize].abs();
    let small = |n: &BigInt| -> Result<u128> {
        n.to_u128().ok_or_else(|| {
            Error::BudgetExceeded("coefficients too large for rational root enumeration".into())
        })
    };
    let div_a0 = divisors(small(&a0)?);
    let div_lead = divisors(small(&lead)?);
    let mut out = vec![Scalar::zero(field)];
    for p in &div_a0 {
        for q in &div_lead {
            for sign in [1i64, -1] {
                let r = Scalar::Rat(num_rational::BigRational::new(
                    BigInt::from(sign) * BigInt::from(*p),
                    BigInt::from(*q),
                ));
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    Ok(out)
}

fn divisors(n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            if i != n / i {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// An automorphism of the projective line: an invertible 2x2 matrix up to
/// scalar, normalized so the first nonzero entry (row-major) is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusMap {
    matrix: DenseMatrix,
}

impl MobiusMap {
    pub fn new(matrix: DenseMatrix) -> Result<Self> {
        if matrix.rows() != 2 || matrix.cols() != 2 {
            return Err(Error::DimensionMismatch(
                "Mobius maps are 2x2 matrices".into(),
            ));
        }
        if !matrix.is_invertible() {
            return Err(Error::InvalidArgument(
                "Mobius matrix must be invertible".into(),
            ));
        }
        let first = (0..4)
            .map(|i| matrix.get(i / 2, i % 2))
            .find(|c| !c.is_zero())
            .expect("invertible matrix is nonzero")
            .clone();
        let inv = first.inv()?;
        let field = matrix.field();
        let entries: Vec<Scalar> = (0..4)
            .map(|i| matrix.get(i / 2, i % 2) * &inv)
            .collect();
        Ok(MobiusMap {
            matrix: DenseMatrix::new(2, 2, entries, field)?,
        })
    }

    pub fn identity(field: FieldDescriptor) -> Self {
        MobiusMap {
            matrix: DenseMatrix::identity(2, field),
        }
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == DenseMatrix::identity(2, self.matrix.field())
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let v = self
            .matrix
            .mul_vec(p.coordinates())
            .expect("2x2 times length-2");
        ProjPoint::new(v).expect("image of a point is a point")
    }

    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        MobiusMap::new(self.matrix.mul_mat(&other.matrix).expect("2x2"))
            .expect("product of invertible maps")
    }

    pub fn inverse(&self) -> MobiusMap {
        MobiusMap::new(self.matrix.inverse().expect("invertible")).expect("inverse invertible")
    }
}

/// The unique matrix (up to scalar) sending (1:0), (0:1), (1:1) to the
/// three given distinct points.
fn standard_triple_map(pts: [&ProjPoint; 3]) -> Result<DenseMatrix> {
    let field = pts[0].field();
    let v0 = pts[0].coordinates();
    let v1 = pts[1].coordinates();
    let v2 = pts[2].coordinates();
    // alpha*v0 + beta*v1 = v2
    let m = DenseMatrix::new(
        2,
        2,
        vec![v0[0].clone(), v1[0].clone(), v0[1].clone(), v1[1].clone()],
        field,
    )?;
    let ab = solve(&m, v2)?.ok_or_else(|| {
        Error::InvalidArgument("degenerate point triple for Mobius interpolation".into())
    })?;
    DenseMatrix::new(
        2,
        2,
        vec![
            &ab[0] * &v0[0],
            &ab[1] * &v1[0],
            &ab[0] * &v0[1],
            &ab[1] * &v1[1],
        ],
        field,
    )
}

/// The Mobius map sending the ordered triple `from` to `to`.
pub fn mobius_through(from: [&ProjPoint; 3], to: [&ProjPoint; 3]) -> Result<MobiusMap> {
    let tq = standard_triple_map(from)?;
    let tr = standard_triple_map(to)?;
    let tq_inv = tq.inverse().ok_or_else(|| {
        Error::InvalidArgument("degenerate point triple for Mobius interpolation".into())
    })?;
    MobiusMap::new(tr.mul_mat(&tq_inv)?)
}

/// Enumerates the group of Mobius maps preserving a root multiset with
/// multiplicities: every map sending the first three distinct roots to
/// some ordered triple of roots is constructed, and those preserving the
/// full weighted multiset are kept. The result always contains the
/// identity and is closed under composition and inverses.
pub fn lin_group_binary(roots: &[(ProjPoint, u32)]) -> Result<Vec<MobiusMap>> {
    let mut seen: Vec<&ProjPoint> = Vec::new();
    let mut mult_of: BTreeMap<String, u32> = BTreeMap::new();
    for (p, m) in roots {
        if seen.contains(&p) {
            return Err(Error::InvalidArgument(format!(
                "duplicate root {p} in multiset input"
            )));
        }
        seen.push(p);
        mult_of.insert(p.to_string(), *m);
    }
    if seen.len() < 3 {
        return Err(Error::TooFewPoints(seen.len()));
    }
    let base = [seen[0], seen[1], seen[2]];
    let mut group = Vec::new();
    for r0 in &seen {
        for r1 in &seen {
            if r1 == r0 {
                continue;
            }
            for r2 in &seen {
                if r2 == r0 || r2 == r1 {
                    continue;
                }
                let map = mobius_through(base, [r0, r1, r2])?;
                let preserves = roots.iter().all(|(p, m)| {
                    let image = map.apply(p);
                    mult_of.get(&image.to_string()) == Some(m)
                });
                if preserves && !group.contains(&map) {
                    group.push(map);
                }
            }
        }
    }
    Ok(group)
}
