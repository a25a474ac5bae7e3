//! Monomials, sparse multivariate polynomials, homogeneous forms, affine
//! localizations and projective points.
//!
//! `Poly` is the general sparse representation (a BTreeMap keyed by monomial
//! in graded reverse lexicographic order); `HomPoly` wraps it with the
//! homogeneity invariant and is the type every geometric operation works
//! with. Term maps never store zero coefficients, so equality of normalized
//! forms is structural equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::scalar::{ensure_same_field, FieldDescriptor, Scalar};

/// Exponent vector of length n+1. Total degree is the exponent sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn constant(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn variable(i: usize, nvars: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// other / self, when self divides other.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial {
                exps: other
                    .exps
                    .iter()
                    .zip(&self.exps)
                    .map(|(b, a)| b - a)
                    .collect(),
            })
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn is_coprime_with(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Graded reverse lexicographic order: compare total degree first; on ties
/// the monomial with the smaller exponent at the rightmost differing
/// variable is the greater one.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.exps.len()).rev() {
            if self.exps[i] != other.exps[i] {
                return other.exps[i].cmp(&self.exps[i]);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of the given total degree, in decreasing grevlex order
/// (the canonical coordinate basis of S_{n,d} used throughout).
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            prefix.push(degree);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=degree {
            prefix.push(e);
            rec(nvars, degree - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        return out;
    }
    rec(nvars, degree, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// dim S_{n,d} = C(n+d, n) for nvars = n+1.
pub fn space_dimension(nvars: usize, degree: u32) -> usize {
    let n = (nvars - 1) as u128;
    let d = degree as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 1..=n {
        num *= d + i;
        den *= i;
    }
    (num / den) as usize
}

/// Sparse multivariate polynomial with no homogeneity constraint. Shared
/// representation behind `HomPoly` and `AffinePoly`, and the form the
/// Groebner engine reduces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    field: FieldDescriptor,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize, field: FieldDescriptor) -> Self {
        Poly {
            nvars,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar, nvars: usize) -> Self {
        let field = c.descriptor();
        let mut p = Poly::zero(nvars, field);
        p.add_term(Monomial::constant(nvars), c);
        p
    }

    pub fn from_terms<I>(terms: I, nvars: usize, field: FieldDescriptor) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Poly::zero(nvars, field);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    /// Accumulates `c * m` into the term map, dropping cancellations.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert_eq!(m.nvars(), self.nvars);
        debug_assert_eq!(c.descriptor(), self.field);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Leading term under grevlex, None for the zero polynomial.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.last_key_value()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars, self.field);
        }
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "nvars mismatch");
        assert_eq!(self.field, other.field, "field mismatch");
        let mut out = Poly::zero(self.nvars, self.field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(Scalar::one(self.field), self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars, self.field);
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            let factor = Scalar::from_integer(e as i64, self.field);
            out.add_term(Monomial::new(exps), c * &factor);
        }
        out
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "polynomial in {} variables evaluated at {} coordinates",
                self.nvars,
                point.len()
            )));
        }
        let mut acc = Scalar::zero(self.field);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &point[i].pow(e);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Scales to the canonical representative used inside the Groebner
    /// engine: over Q, integer coefficients with content 1 and positive
    /// leading coefficient; over F_p, monic. Keeps coefficient growth under
    /// control during reductions.
    pub fn normalized_primitive(&self) -> Poly {
        let Some((_, lc)) = self.leading_term() else {
            return self.clone();
        };
        match self.field {
            FieldDescriptor::PrimeField(_) => self.monic(),
            FieldDescriptor::Rationals => {
                let mut den_lcm = BigInt::one();
                for (_, c) in &self.terms {
                    if let Scalar::Rat(r) = c {
                        den_lcm = den_lcm.lcm(r.denom());
                    }
                }
                let mut num_gcd = BigInt::zero();
                for (_, c) in &self.terms {
                    if let Scalar::Rat(r) = c {
                        num_gcd = num_gcd.gcd(&(r.numer() * &den_lcm / r.denom()));
                    }
                }
                let mut factor = Scalar::Rat(BigRational::new(den_lcm, num_gcd));
                if (lc * &factor).is_negative() {
                    factor = -factor;
                }
                self.scale(&factor)
            }
        }
    }

    /// Monic form: leading coefficient 1.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, lc)) => self.scale(&lc.inv().expect("leading coefficient nonzero")),
        }
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "nvars mismatch");
        assert_eq!(self.field, rhs.field, "field mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "nvars mismatch");
        assert_eq!(self.field, rhs.field, "field mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// Canonical text form: terms in decreasing grevlex order, `a/b` rational
/// coefficients in lowest terms, unit coefficients and unit exponents
/// suppressed.
fn write_terms(f: &mut fmt::Formatter<'_>, poly: &Poly) -> fmt::Result {
    if poly.is_zero() {
        return write!(f, "0");
    }
    for (idx, (m, c)) in poly.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let mag = if neg { -c } else { c.clone() };
        if idx == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let factors: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("x{i}")
                } else {
                    format!("x{i}^{e}")
                }
            })
            .collect();
        if factors.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{}", factors.join("*"))?;
        } else {
            write!(f, "{}*{}", mag, factors.join("*"))?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self)
    }
}

/// Homogeneous polynomial of a fixed degree: an element of S_{n,d}. The
/// degree is retained as metadata even when the polynomial is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomPoly {
    poly: Poly,
    degree: u32,
}

impl HomPoly {
    pub fn zero(nvars: usize, degree: u32, field: FieldDescriptor) -> Self {
        HomPoly {
            poly: Poly::zero(nvars, field),
            degree,
        }
    }

    /// Wraps a general polynomial after checking that every term has the
    /// stated degree.
    pub fn from_poly(poly: Poly, degree: u32) -> Result<Self> {
        let bad: Vec<u32> = poly
            .terms()
            .map(|(m, _)| m.degree())
            .filter(|&d| d != degree)
            .collect();
        if !bad.is_empty() {
            return Err(Error::NotHomogeneous(bad));
        }
        Ok(HomPoly { poly, degree })
    }

    /// Wraps a general polynomial, inferring the degree from its terms.
    pub fn infer(poly: Poly) -> Result<Self> {
        let degree = poly.max_degree().unwrap_or(0);
        HomPoly::from_poly(poly, degree)
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let degree = m.degree();
        let nvars = m.nvars();
        let field = c.descriptor();
        HomPoly {
            poly: Poly::from_terms([(m, c)], nvars, field),
            degree,
        }
    }

    pub fn as_poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> FieldDescriptor {
        self.poly.field()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn num_terms(&self) -> usize {
        self.poly.num_terms()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.poly.terms()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.poly.coeff(m)
    }

    fn check_compatible(&self, other: &HomPoly) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} variables",
                self.nvars(),
                other.nvars()
            )));
        }
        if self.field() != other.field() {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    pub fn add(&self, other: &HomPoly) -> Result<HomPoly> {
        self.check_compatible(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        Ok(HomPoly {
            poly: &self.poly + &other.poly,
            degree: self.degree.max(other.degree),
        })
    }

    pub fn sub(&self, other: &HomPoly) -> Result<HomPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HomPoly {
        HomPoly {
            poly: -&self.poly,
            degree: self.degree,
        }
    }

    pub fn scale(&self, c: &Scalar) -> HomPoly {
        HomPoly {
            poly: self.poly.scale(c),
            degree: self.degree,
        }
    }

    pub fn mul(&self, other: &HomPoly) -> Result<HomPoly> {
        self.check_compatible(other)?;
        Ok(HomPoly {
            poly: self.poly.mul(&other.poly),
            degree: self.degree + other.degree,
        })
    }

    /// d/dx_i, homogeneous of degree d-1 (or zero).
    pub fn partial_derivative(&self, i: usize) -> Result<HomPoly> {
        if i >= self.nvars() {
            return Err(Error::IndexOutOfRange {
                index: i,
                nvars: self.nvars(),
            });
        }
        Ok(HomPoly {
            poly: self.poly.derivative(i),
            degree: self.degree.saturating_sub(1),
        })
    }

    /// All n+1 partial derivatives, in variable order.
    pub fn gradient(&self) -> Vec<HomPoly> {
        (0..self.nvars())
            .map(|i| self.partial_derivative(i).expect("index in range"))
            .collect()
    }

    /// Sum of x_i * df/dx_i. Equals d*f whenever the characteristic does
    /// not divide d (Euler's identity); returned as computed in all cases.
    pub fn euler_combination(&self) -> HomPoly {
        let mut acc = Poly::zero(self.nvars(), self.field());
        for i in 0..self.nvars() {
            let di = self.poly.derivative(i);
            acc = &acc + &di.mul_monomial(&Monomial::variable(i, self.nvars()));
        }
        HomPoly {
            poly: acc,
            degree: self.degree,
        }
    }

    /// (f o A)(X) = f(A X), by exact expansion. The matrix need not be
    /// invertible; the result is homogeneous of the same degree (or zero).
    pub fn substitute_matrix(&self, a: &DenseMatrix) -> Result<HomPoly> {
        let nv = self.nvars();
        if a.rows() != nv || a.cols() != nv {
            return Err(Error::DimensionMismatch(format!(
                "substitution matrix must be {nv}x{nv}, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        if a.field() != self.field() {
            return Err(Error::MixedFields);
        }
        // Row i of A gives the image of x_i as a linear form.
        let images: Vec<Poly> = (0..nv)
            .map(|i| {
                Poly::from_terms(
                    (0..nv).map(|j| (Monomial::variable(j, nv), a.get(i, j).clone())),
                    nv,
                    self.field(),
                )
            })
            .collect();
        let mut max_exp = vec![0u32; nv];
        for (m, _) in self.poly.terms() {
            for i in 0..nv {
                max_exp[i] = max_exp[i].max(m.exponent(i));
            }
        }
        // powers[i][k] = images[i]^k, precomputed once per substitution.
        let powers: Vec<Vec<Poly>> = (0..nv)
            .map(|i| {
                let mut v = vec![Poly::constant(Scalar::one(self.field()), nv)];
                for k in 1..=max_exp[i] {
                    v.push(v[(k - 1) as usize].mul(&images[i]));
                }
                v
            })
            .collect();
        let mut out = Poly::zero(nv, self.field());
        for (m, c) in self.poly.terms() {
            let mut t = Poly::constant(c.clone(), nv);
            for i in 0..nv {
                let e = m.exponent(i);
                if e > 0 {
                    t = t.mul(&powers[i][e as usize]);
                }
            }
            out = &out + &t;
        }
        Ok(HomPoly {
            poly: out,
            degree: self.degree,
        })
    }

    pub fn evaluate(&self, point: &ProjPoint) -> Result<Scalar> {
        self.poly.evaluate(point.coordinates())
    }

    /// Local form of f at p: dehomogenize in the chart where p's last
    /// nonzero coordinate is 1 and translate p to the origin of that chart.
    /// The result vanishes at the chart origin iff f(p) = 0.
    pub fn localize_at(&self, p: &ProjPoint) -> Result<AffinePoly> {
        let nv = self.nvars();
        if p.coordinates().len() != nv {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, polynomial has {} variables",
                p.coordinates().len(),
                nv
            )));
        }
        if p.field() != self.field() {
            return Err(Error::MixedFields);
        }
        let chart = p.chart();
        // x_chart -> 1, x_i -> x_i + p_i elsewhere.
        let mut max_exp = vec![0u32; nv];
        for (m, _) in self.poly.terms() {
            for i in 0..nv {
                max_exp[i] = max_exp[i].max(m.exponent(i));
            }
        }
        let shifted: Vec<Poly> = (0..nv)
            .map(|i| {
                let mut q = Poly::zero(nv, self.field());
                if i != chart {
                    q.add_term(Monomial::variable(i, nv), Scalar::one(self.field()));
                }
                q.add_term(
                    Monomial::constant(nv),
                    if i == chart {
                        Scalar::one(self.field())
                    } else {
                        p.coordinates()[i].clone()
                    },
                );
                q
            })
            .collect();
        let powers: Vec<Vec<Poly>> = (0..nv)
            .map(|i| {
                let mut v = vec![Poly::constant(Scalar::one(self.field()), nv)];
                for k in 1..=max_exp[i] {
                    v.push(v[(k - 1) as usize].mul(&shifted[i]));
                }
                v
            })
            .collect();
        let mut out = Poly::zero(nv, self.field());
        for (m, c) in self.poly.terms() {
            let mut t = Poly::constant(c.clone(), nv);
            for i in 0..nv {
                let e = m.exponent(i);
                if e > 0 {
                    t = t.mul(&powers[i][e as usize]);
                }
            }
            out = &out + &t;
        }
        Ok(AffinePoly {
            poly: out,
            chart,
            base_point: p.clone(),
        })
    }

    /// Least total degree of the local expansion of f at p: 0 iff f(p) != 0,
    /// >= 2 iff p is a singular point of H_f (characteristic 0 or p > d).
    pub fn multiplicity_at(&self, p: &ProjPoint) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let local = self.localize_at(p)?;
        Ok(local
            .poly
            .min_degree()
            .expect("localization of a nonzero form is nonzero"))
    }

    /// Monic gcd of two binary forms: the shared power of x1 times the
    /// homogenization of the Euclidean gcd of the dehomogenizations.
    pub fn binary_gcd(&self, other: &HomPoly) -> Result<HomPoly> {
        self.check_compatible(other)?;
        if self.nvars() != 2 {
            return Err(Error::NotBinaryForm);
        }
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let field = self.field();
        let split = |f: &HomPoly| -> (u32, Vec<Scalar>) {
            let x1_val = f.terms().map(|(m, _)| m.exponent(1)).min().unwrap();
            let deg = f.degree() - x1_val;
            let mut coeffs = vec![Scalar::zero(field); (deg + 1) as usize];
            for (m, c) in f.terms() {
                coeffs[m.exponent(0) as usize] = c.clone();
            }
            (x1_val, coeffs)
        };
        let (vf, uf) = split(self);
        let (vg, ug) = split(other);
        let gcd_u = univariate_gcd(uf, ug)?;
        let e = (gcd_u.len() - 1) as u32;
        let mut out = Poly::zero(2, field);
        for (j, c) in gcd_u.into_iter().enumerate() {
            out.add_term(
                Monomial::new(vec![j as u32, e - j as u32 + vf.min(vg)]),
                c,
            );
        }
        HomPoly::from_poly(out, e + vf.min(vg))
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.poly)
    }
}

fn univariate_degree(v: &[Scalar]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero())
}

/// Monic gcd of dense univariate polynomials by the Euclidean algorithm.
fn univariate_gcd(mut a: Vec<Scalar>, mut b: Vec<Scalar>) -> Result<Vec<Scalar>> {
    loop {
        let Some(db) = univariate_degree(&b) else {
            let da = univariate_degree(&a).ok_or(Error::ZeroPolynomial)?;
            let lead_inv = a[da].inv()?;
            let mut out: Vec<Scalar> = a[..=da].iter().map(|c| c * &lead_inv).collect();
            out.truncate(da + 1);
            return Ok(out);
        };
        // a <- a mod b
        let lead_inv = b[db].inv()?;
        while let Some(da) = univariate_degree(&a) {
            if da < db {
                break;
            }
            let factor = &a[da] * &lead_inv;
            for j in 0..=db {
                let v = &a[da - db + j] - &(&factor * &b[j]);
                a[da - db + j] = v;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
}

/// Dehomogenized local form of a homogeneous polynomial, together with the
/// chart and base point that produced it. Terms of mixed degree permitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePoly {
    poly: Poly,
    chart: usize,
    base_point: ProjPoint,
}

impl AffinePoly {
    pub fn as_poly(&self) -> &Poly {
        &self.poly
    }

    pub fn chart(&self) -> usize {
        self.chart
    }

    pub fn base_point(&self) -> &ProjPoint {
        &self.base_point
    }

    /// Least total degree of a nonzero term; None for the zero polynomial.
    pub fn min_degree(&self) -> Option<u32> {
        self.poly.min_degree()
    }

    pub fn constant_term(&self) -> Scalar {
        self.poly.coeff(&Monomial::constant(self.poly.nvars()))
    }
}

impl fmt::Display for AffinePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.poly)
    }
}

/// Point of projective n-space with canonically normalized coordinates:
/// the last nonzero coordinate is 1, so two points are equal iff their
/// coordinate vectors are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjPoint {
    coords: Vec<Scalar>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Scalar>) -> Result<Self> {
        let Some(k) = coords.iter().rposition(|c| !c.is_zero()) else {
            return Err(Error::InvalidArgument(
                "projective point needs a nonzero coordinate".into(),
            ));
        };
        for c in &coords {
            ensure_same_field(c, &coords[k])?;
        }
        let inv = coords[k].inv()?;
        Ok(ProjPoint {
            coords: coords.iter().map(|c| c * &inv).collect(),
        })
    }

    pub fn from_integers(coords: &[i64], field: FieldDescriptor) -> Result<Self> {
        ProjPoint::new(
            coords
                .iter()
                .map(|&c| Scalar::from_integer(c, field))
                .collect(),
        )
    }

    /// Parses "(a:b:...:c)" with scalars in the field's text form.
    pub fn parse(text: &str, field: FieldDescriptor) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::SyntaxError {
                position: 0,
                message: format!("point '{t}' must be wrapped in parentheses"),
            })?;
        let coords: Result<Vec<Scalar>> = inner
            .split(':')
            .map(|part| Scalar::parse(part, field))
            .collect();
        ProjPoint::new(coords?)
    }

    pub fn coordinates(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn field(&self) -> FieldDescriptor {
        self.coords[0].descriptor()
    }

    /// Index of the last nonzero coordinate (which is 1 after
    /// normalization); the affine chart used by `localize_at`.
    pub fn chart(&self) -> usize {
        self.coords
            .iter()
            .rposition(|c| !c.is_zero())
            .expect("normalized point is nonzero")
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(":"))
    }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Lexer<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::SyntaxError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn read_uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("integer too large"))
    }
}

/// Parses the polynomial grammar
///
/// ```text
/// poly   := ['-'] term (('+'|'-') term)*
/// term   := coeff ['*' factors] | factors
/// factors:= factor ('*' factor)*
/// factor := 'x' INDEX ['^' EXP]
/// coeff  := INT ['/' INT]
/// ```
///
/// into a homogeneous polynomial, verifying homogeneity of the raw terms
/// (before cancellation) and collecting like terms.
pub fn parse_poly(text: &str, nvars: usize, field: FieldDescriptor) -> Result<HomPoly> {
    let mut lx = Lexer::new(text);
    let mut out = Poly::zero(nvars, field);
    let mut raw_degrees: Vec<u32> = Vec::new();

    let mut sign = match lx.peek() {
        Some(b'-') => {
            lx.bump();
            -1i64
        }
        _ => 1,
    };
    loop {
        let (m, c) = parse_term(&mut lx, nvars, field)?;
        raw_degrees.push(m.degree());
        let signed = if sign < 0 { -&c } else { c };
        out.add_term(m, signed);
        match lx.peek() {
            None => break,
            Some(b'+') => {
                lx.bump();
                sign = 1;
            }
            Some(b'-') => {
                lx.bump();
                sign = -1;
            }
            Some(c) => return Err(lx.error(format!("unexpected character '{}'", c as char))),
        }
    }

    let d0 = raw_degrees[0];
    if raw_degrees.iter().any(|&d| d != d0) {
        return Err(Error::NotHomogeneous(raw_degrees));
    }
    HomPoly::from_poly(out, d0)
}

fn parse_term(lx: &mut Lexer, nvars: usize, field: FieldDescriptor) -> Result<(Monomial, Scalar)> {
    let mut coeff = Scalar::one(field);
    let mut exps = vec![0u32; nvars];

    match lx.peek() {
        Some(c) if c.is_ascii_digit() => {
            let num = lx.read_uint()?;
            let mut c = Scalar::from_integer(num as i64, field);
            if lx.peek() == Some(b'/') {
                lx.bump();
                let den = lx.read_uint()?;
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                c = c.div(&Scalar::from_integer(den as i64, field))?;
            }
            coeff = c;
            if lx.peek() == Some(b'*') {
                lx.bump();
            } else {
                // bare constant term
                return Ok((Monomial::new(exps), coeff));
            }
        }
        Some(b'x') => {}
        Some(c) => return Err(lx.error(format!("unexpected character '{}'", c as char))),
        None => return Err(lx.error("unexpected end of input")),
    }

    loop {
        match lx.peek() {
            Some(b'x') => {
                lx.bump();
                let idx = lx.read_uint()? as usize;
                if idx >= nvars {
                    return Err(lx.error(format!(
                        "variable x{idx} out of range for {nvars} variables"
                    )));
                }
                let mut exp = 1u32;
                if lx.peek() == Some(b'^') {
                    lx.bump();
                    exp = u32::try_from(lx.read_uint()?)
                        .map_err(|_| lx.error("exponent too large"))?;
                }
                exps[idx] += exp;
            }
            _ => return Err(lx.error("expected a variable factor")),
        }
        if lx.peek() == Some(b'*') {
            lx.bump();
        } else {
            break;
        }
    }
    Ok((Monomial::new(exps), coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DenseMatrix;
    use proptest::prelude::*;

    const QQ: FieldDescriptor = FieldDescriptor::Rationals;

    pub(crate) fn q(text: &str, nvars: usize) -> HomPoly {
        parse_poly(text, nvars, QQ).unwrap()
    }

    #[test]
    fn grevlex_standard_example() {
        // x0*x1^2 > x0^2*x2 in grevlex with x0 > x1 > x2
        let a = Monomial::new(vec![1, 2, 0]);
        let b = Monomial::new(vec![2, 0, 1]);
        assert!(a > b);
        // degree dominates
        assert!(Monomial::new(vec![3, 0]) > Monomial::new(vec![1, 1]));
    }

    #[test]
    fn monomial_basis_counts() {
        assert_eq!(monomials_of_degree(3, 3).len(), 10);
        assert_eq!(space_dimension(3, 3), 10);
        assert_eq!(space_dimension(4, 4), 35);
        let basis = monomials_of_degree(3, 2);
        let mut sorted = basis.clone();
        sorted.sort_by(|a, b| b.cmp(a));
        assert_eq!(basis, sorted);
    }

    #[test]
    fn parse_fermat_cubic() {
        let f = q("x0^3 + x1^3 + x2^3", 3);
        assert_eq!(f.degree(), 3);
        assert_eq!(f.num_terms(), 3);
    }

    #[test]
    fn parse_cancellation_gives_zero() {
        let f = q("x0*x1 - x1*x0", 2);
        assert!(f.is_zero());
        assert_eq!(f.degree(), 2);
    }

    #[test]
    fn parse_rejects_inhomogeneous() {
        let err = parse_poly("x0^2 + x1", 2, QQ).unwrap_err();
        assert!(matches!(err, Error::NotHomogeneous(_)));
    }

    #[test]
    fn parse_reports_position() {
        let err = parse_poly("x0^2 + y", 2, QQ).unwrap_err();
        match err {
            Error::SyntaxError { position, .. } => assert_eq!(position, 7),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_unknown_variable_index() {
        assert!(parse_poly("x5^2", 2, QQ).is_err());
    }

    #[test]
    fn display_round_trip() {
        let f = q("2/3*x0^2*x1 - x1^3 + 5*x0*x1*x2", 3);
        let again = parse_poly(&f.to_string(), 3, QQ).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn derivative_power_rule() {
        let f = q("x0^3", 2);
        assert_eq!(f.partial_derivative(0).unwrap(), q("3*x0^2", 2));
        assert!(f.partial_derivative(1).unwrap().is_zero());
        assert!(f.partial_derivative(5).is_err());
    }

    #[test]
    fn derivative_drops_in_characteristic() {
        let f2 = FieldDescriptor::prime_field(2).unwrap();
        let f = parse_poly("x0^4", 2, f2).unwrap();
        assert!(f.partial_derivative(0).unwrap().is_zero());
    }

    #[test]
    fn euler_identity_examples() {
        let f = q("x0^3", 1);
        assert_eq!(f.euler_combination(), f.scale(&Scalar::from_integer(3, QQ)));
        let g = q("x0^2*x1", 2);
        assert_eq!(g.euler_combination(), g.scale(&Scalar::from_integer(3, QQ)));
        let f3 = FieldDescriptor::prime_field(3).unwrap();
        let h = parse_poly("x0^3", 1, f3).unwrap();
        assert!(h.euler_combination().is_zero());
    }

    #[test]
    fn substitute_identity_and_swap() {
        let f = q("x0*x1", 2);
        let id = DenseMatrix::identity(2, QQ);
        assert_eq!(f.substitute_matrix(&id).unwrap(), f);
        let swap = DenseMatrix::from_rows(
            &[
                vec![Scalar::zero(QQ), Scalar::one(QQ)],
                vec![Scalar::one(QQ), Scalar::zero(QQ)],
            ],
            QQ,
        )
        .unwrap();
        assert_eq!(f.substitute_matrix(&swap).unwrap(), f);
    }

    #[test]
    fn substitute_weierstrass_scaling() {
        // (x2*x1^2 - x0^3 - x0*x2^2 - x2^3) o diag(1,2,1) scales the x1^2
        // term by 4 (paper's y -> y*sqrt(1+t) substitution with t = 3).
        let f = q("x2*x1^2 - x0^3 - x0*x2^2 - x2^3", 3);
        let a = DenseMatrix::from_rows(
            &[
                vec![Scalar::one(QQ), Scalar::zero(QQ), Scalar::zero(QQ)],
                vec![Scalar::zero(QQ), Scalar::from_integer(2, QQ), Scalar::zero(QQ)],
                vec![Scalar::zero(QQ), Scalar::zero(QQ), Scalar::one(QQ)],
            ],
            QQ,
        )
        .unwrap();
        let expected = q("4*x2*x1^2 - x0^3 - x0*x2^2 - x2^3", 3);
        assert_eq!(f.substitute_matrix(&a).unwrap(), expected);
    }

    #[test]
    fn substitution_functoriality() {
        let f = q("x0^2*x1 + x1^2*x2 - x2^3", 3);
        let a = DenseMatrix::from_rows(
            &[
                vec![Scalar::from_integer(1, QQ), Scalar::from_integer(2, QQ), Scalar::zero(QQ)],
                vec![Scalar::zero(QQ), Scalar::from_integer(1, QQ), Scalar::from_integer(-1, QQ)],
                vec![Scalar::from_integer(3, QQ), Scalar::zero(QQ), Scalar::from_integer(1, QQ)],
            ],
            QQ,
        )
        .unwrap();
        let b = DenseMatrix::from_rows(
            &[
                vec![Scalar::from_integer(0, QQ), Scalar::from_integer(1, QQ), Scalar::from_integer(1, QQ)],
                vec![Scalar::from_integer(1, QQ), Scalar::from_integer(0, QQ), Scalar::from_integer(2, QQ)],
                vec![Scalar::from_integer(0, QQ), Scalar::from_integer(0, QQ), Scalar::from_integer(1, QQ)],
            ],
            QQ,
        )
        .unwrap();
        let lhs = f
            .substitute_matrix(&a)
            .unwrap()
            .substitute_matrix(&b)
            .unwrap();
        let rhs = f.substitute_matrix(&a.mul_mat(&b).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn localize_dehomogenizes() {
        let f = q("x0^2 + x1*x2", 3);
        let p = ProjPoint::from_integers(&[0, 0, 1], QQ).unwrap();
        let local = f.localize_at(&p).unwrap();
        assert_eq!(local.chart(), 2);
        assert_eq!(local.to_string(), "x0^2 + x1");
    }

    #[test]
    fn localize_translates_nonvanishing_point() {
        let f = q("x0*x1", 2);
        let p = ProjPoint::from_integers(&[1, 1], QQ).unwrap();
        let local = f.localize_at(&p).unwrap();
        assert_eq!(local.constant_term(), Scalar::one(QQ));
        assert_eq!(local.min_degree(), Some(0));
    }

    #[test]
    fn localize_nodal_cubic() {
        let f = q("x1^2*x2 - x0^3 - x0^2*x2", 3);
        let p = ProjPoint::from_integers(&[0, 0, 1], QQ).unwrap();
        let local = f.localize_at(&p).unwrap();
        assert_eq!(local.min_degree(), Some(2));
        assert_eq!(local.to_string(), "-x0^3 - x0^2 + x1^2");
    }

    #[test]
    fn multiplicity_examples() {
        let fermat = q("x0^3 + x1^3 + x2^3", 3);
        let p100 = ProjPoint::from_integers(&[1, 0, 0], QQ).unwrap();
        assert_eq!(fermat.multiplicity_at(&p100).unwrap(), 0);

        let nodal = q("x1^2*x2 - x0^3 - x0^2*x2", 3);
        let p001 = ProjPoint::from_integers(&[0, 0, 1], QQ).unwrap();
        assert_eq!(nodal.multiplicity_at(&p001).unwrap(), 2);

        let triple = q("x0^4 + x1^3*x2", 3);
        assert_eq!(triple.multiplicity_at(&p001).unwrap(), 3);

        let zero = HomPoly::zero(3, 3, QQ);
        assert_eq!(zero.multiplicity_at(&p001), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn binary_gcd_examples() {
        let f = q("x0^2*x1", 2);
        let g = q("x0*x1^2", 2);
        assert_eq!(f.binary_gcd(&g).unwrap(), q("x0*x1", 2));

        let f = q("x0^2 - x1^2", 2);
        let g = q("x0 - x1", 2);
        assert_eq!(f.binary_gcd(&g).unwrap(), q("x0 - x1", 2));

        let f = q("3*x0^2 - 3*x1^2", 2);
        assert_eq!(f.binary_gcd(&f).unwrap(), q("x0^2 - x1^2", 2));

        let tri = q("x0*x1*x2", 3);
        assert_eq!(tri.binary_gcd(&tri), Err(Error::NotBinaryForm));
    }

    #[test]
    fn proj_point_normalization() {
        let p = ProjPoint::from_integers(&[2, 4, 2], QQ).unwrap();
        assert_eq!(p.to_string(), "(1:2:1)");
        assert_eq!(p.chart(), 2);
        let q_pt = ProjPoint::from_integers(&[3, 0, 0], QQ).unwrap();
        assert_eq!(q_pt.to_string(), "(1:0:0)");
        assert_eq!(q_pt.chart(), 0);
        assert!(ProjPoint::from_integers(&[0, 0, 0], QQ).is_err());
        assert_eq!(
            ProjPoint::parse("(0:0:1)", QQ).unwrap(),
            ProjPoint::from_integers(&[0, 0, 1], QQ).unwrap()
        );
    }

    fn arb_hompoly(nvars: usize, degree: u32) -> impl Strategy<Value = HomPoly> {
        let monos = monomials_of_degree(nvars, degree);
        let len = monos.len();
        proptest::collection::vec(-4i64..=4, len).prop_map(move |coeffs| {
            let poly = Poly::from_terms(
                monos
                    .iter()
                    .cloned()
                    .zip(coeffs.iter().map(|&c| Scalar::from_integer(c, QQ))),
                nvars,
                QQ,
            );
            HomPoly::from_poly(poly, degree).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn euler_identity_random(f in arb_hompoly(3, 4)) {
            let lhs = f.euler_combination();
            let rhs = f.scale(&Scalar::from_integer(4, QQ));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn derivation_product_rule(i in 0usize..2, f in arb_hompoly(2, 2), g in arb_hompoly(2, 3)) {
            let prod = f.mul(&g).unwrap();
            let lhs = prod.partial_derivative(i).unwrap();
            let rhs = f.partial_derivative(i).unwrap().mul(&g).unwrap()
                .add(&f.mul(&g.partial_derivative(i).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn display_parse_round_trip(f in arb_hompoly(3, 3)) {
            if !f.is_zero() {
                let text = f.to_string();
                let back = parse_poly(&text, 3, QQ).unwrap();
                prop_assert_eq!(f, back);
            }
        }

        #[test]
        fn vanishing_iff_positive_multiplicity(f in arb_hompoly(3, 3), c0 in -2i64..=2, c1 in -2i64..=2) {
            prop_assume!(!f.is_zero());
            let p = ProjPoint::from_integers(&[c0, c1, 1], QQ).unwrap();
            let value = f.evaluate(&p).unwrap();
            let mult = f.multiplicity_at(&p).unwrap();
            prop_assert_eq!(value.is_zero(), mult >= 1);
        }
    }
}
