//! The degree-d graded piece J_{f,d} of the Jacobian ideal: its (n+1)^2
//! spanning generators x_beta * df/dx_gamma, an echelonized basis, and
//! membership tests returning explicit coefficient matrices.

use crate::error::{Error, Result};
use crate::linalg::{rref, solve, DenseMatrix};
use crate::poly::{monomials_of_degree, HomPoly, Monomial, Poly};
use crate::scalar::Scalar;

/// Coefficient matrix (a_{beta,gamma}) encoding
/// h = sum a_{beta,gamma} * x_beta * df/dx_gamma for an associated f.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffMatrix {
    entries: DenseMatrix,
}

impl CoeffMatrix {
    pub fn new(entries: DenseMatrix) -> Result<Self> {
        if entries.rows() != entries.cols() {
            return Err(Error::DimensionMismatch(format!(
                "coefficient matrix must be square, got {}x{}",
                entries.rows(),
                entries.cols()
            )));
        }
        Ok(CoeffMatrix { entries })
    }

    /// (1/d) * Identity: the Euler witness for f itself when the
    /// characteristic does not divide d.
    pub fn euler_witness(f: &HomPoly) -> Result<Self> {
        let d = Scalar::from_integer(f.degree() as i64, f.field());
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = d.inv()?;
        let n = f.nvars();
        let mut m = DenseMatrix::zeros(n, n, f.field());
        for i in 0..n {
            m.set(i, i, inv.clone());
        }
        CoeffMatrix::new(m)
    }

    pub fn entries(&self) -> &DenseMatrix {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.rows()
    }

    /// Expands sum a_{beta,gamma} * x_beta * df/dx_gamma exactly.
    pub fn expand(&self, f: &HomPoly) -> Result<HomPoly> {
        let nv = f.nvars();
        if self.size() != nv {
            return Err(Error::DimensionMismatch(format!(
                "coefficient matrix is {}x{}, polynomial has {nv} variables",
                self.size(),
                self.size()
            )));
        }
        if self.entries.field() != f.field() {
            return Err(Error::MixedFields);
        }
        let grad = f.gradient();
        let mut acc = HomPoly::zero(nv, f.degree(), f.field());
        for beta in 0..nv {
            for gamma in 0..nv {
                let a = self.entries.get(beta, gamma);
                if a.is_zero() {
                    continue;
                }
                let term = HomPoly::monomial(Monomial::variable(beta, nv), a.clone())
                    .mul(&grad[gamma])?;
                acc = acc.add(&term)?;
            }
        }
        Ok(acc)
    }
}

/// The degree-d piece of the Jacobian ideal of f, with its generator list
/// (all (n+1)^2 of them, zeros included), coordinates in the monomial basis
/// of S_{n,d}, and an echelonized basis.
#[derive(Debug, Clone)]
pub struct JacobianPiece {
    f: HomPoly,
    monomials: Vec<Monomial>,
    generators: Vec<(usize, usize, HomPoly)>,
    generator_coords: Vec<Vec<Scalar>>,
    basis: Vec<Vec<Scalar>>,
    dimension: usize,
}

/// Coordinates of f in the listed monomial basis.
pub fn coordinates(f: &HomPoly, monomials: &[Monomial]) -> Vec<Scalar> {
    monomials.iter().map(|m| f.coeff(m)).collect()
}

/// Reassembles a polynomial from coordinates in the listed basis.
pub fn from_coordinates(
    coords: &[Scalar],
    monomials: &[Monomial],
    f: &HomPoly,
) -> HomPoly {
    let poly = Poly::from_terms(
        monomials.iter().cloned().zip(coords.iter().cloned()),
        f.nvars(),
        f.field(),
    );
    HomPoly::from_poly(poly, f.degree()).expect("basis monomials share the degree")
}

/// Computes all (n+1)^2 generators x_beta * df/dx_gamma (beta-major order)
/// and echelonizes their span.
pub fn jacobian_piece(f: &HomPoly) -> Result<JacobianPiece> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() < 1 {
        return Err(Error::InvalidArgument(
            "jacobian piece needs degree >= 1".into(),
        ));
    }
    let nv = f.nvars();
    let monomials = monomials_of_degree(nv, f.degree());
    let grad = f.gradient();
    let mut generators = Vec::with_capacity(nv * nv);
    let mut generator_coords = Vec::with_capacity(nv * nv);
    for beta in 0..nv {
        for gamma in 0..nv {
            let g = HomPoly::monomial(
                Monomial::variable(beta, nv),
                Scalar::one(f.field()),
            )
            .mul(&grad[gamma])?;
            generator_coords.push(coordinates(&g, &monomials));
            generators.push((beta, gamma, g));
        }
    }
    let matrix = DenseMatrix::from_rows(&generator_coords, f.field())?;
    let red = rref(&matrix);
    let basis: Vec<Vec<Scalar>> = (0..red.rank)
        .map(|i| red.reduced.row(i).to_vec())
        .collect();
    Ok(JacobianPiece {
        f: f.clone(),
        monomials,
        generators,
        generator_coords,
        dimension: red.rank,
        basis,
    })
}

/// Rank of the full generator set {x_i * dp/dx_j}; equals (n+1)^2 exactly
/// when those products are linearly independent, which holds for smooth p
/// of degree >= 3 in characteristic 0.
pub fn generators_rank(p: &HomPoly) -> Result<usize> {
    Ok(jacobian_piece(p)?.dimension())
}

impl JacobianPiece {
    pub fn f(&self) -> &HomPoly {
        &self.f
    }

    /// Monomial basis of S_{n,d} indexing all coordinate vectors.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn generators(&self) -> &[(usize, usize, HomPoly)] {
        &self.generators
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Echelonized basis as coordinate vectors.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Echelonized basis as polynomials.
    pub fn basis_polys(&self) -> Vec<HomPoly> {
        self.basis
            .iter()
            .map(|v| from_coordinates(v, &self.monomials, &self.f))
            .collect()
    }

    /// Decides h in J_{f,d} and returns the deterministic coefficient
    /// matrix found by the linear solve (free coefficients zeroed), or
    /// None when h lies outside the span. Every returned matrix is
    /// re-expanded and checked against h before being handed out.
    pub fn membership(&self, h: &HomPoly) -> Result<Option<CoeffMatrix>> {
        let nv = self.f.nvars();
        if h.nvars() != nv {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} variables",
                h.nvars(),
                nv
            )));
        }
        if h.field() != self.f.field() {
            return Err(Error::MixedFields);
        }
        if h.degree() != self.f.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.f.degree(),
                got: h.degree(),
            });
        }
        // Columns are the generators, rows the monomials of S_{n,d}.
        let cols = DenseMatrix::from_rows(&self.generator_coords, self.f.field())?.transpose();
        let target = coordinates(h, &self.monomials);
        let Some(x) = solve(&cols, &target)? else {
            return Ok(None);
        };
        let a = CoeffMatrix::new(DenseMatrix::new(nv, nv, x, self.f.field())?)?;
        let check = a.expand(&self.f)?;
        assert_eq!(&check, h, "membership witness failed re-expansion");
        Ok(Some(a))
    }
}
