//! Exact field arithmetic over the two supported coefficient fields:
//! arbitrary-precision rationals and prime fields F_p with p <= 2^31.
//!
//! Rationals are kept in lowest terms with positive denominator (the
//! `BigRational` invariant); prime-field elements are residues in [0, p).
//! Values are immutable and cheap to clone at desk scale.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Identifies the coefficient field of every scalar, polynomial and matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    PrimeField(u64),
}

impl FieldDescriptor {
    /// Validating constructor for F_p. `p` must be prime and at most 2^31
    /// so that products of residues fit in 64-bit intermediates.
    pub fn prime_field(p: u64) -> Result<Self> {
        if p > (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidCharacteristic(p));
        }
        Ok(FieldDescriptor::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Rationals => 0,
            FieldDescriptor::PrimeField(p) => *p,
        }
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self, FieldDescriptor::Rationals)
    }

    /// Guard for operations that need characteristic 0 or p > d (Euler's
    /// identity, gradient-vanishing <=> multiplicity >= 2).
    pub fn check_characteristic(&self, degree: u32) -> Result<()> {
        match self {
            FieldDescriptor::Rationals => Ok(()),
            FieldDescriptor::PrimeField(p) if *p > degree as u64 => Ok(()),
            FieldDescriptor::PrimeField(p) => {
                Err(Error::CharacteristicTooSmall { p: *p, degree })
            }
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "q"),
            FieldDescriptor::PrimeField(p) => write!(f, "fp:{p}"),
        }
    }
}

/// Accepts the CLI syntax: `q` for the rationals, `fp:P` for F_P.
impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "q" || s == "Q" {
            return Ok(FieldDescriptor::Rationals);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p.parse().map_err(|_| Error::SyntaxError {
                position: 3,
                message: format!("invalid prime '{p}'"),
            })?;
            return FieldDescriptor::prime_field(p);
        }
        Err(Error::SyntaxError {
            position: 0,
            message: format!("unknown field '{s}' (expected 'q' or 'fp:P')"),
        })
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element: a reduced fraction over Q, or a residue in F_p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp { val: u64, p: u64 },
}

impl Scalar {
    pub fn zero(field: FieldDescriptor) -> Self {
        Scalar::from_integer(0, field)
    }

    pub fn one(field: FieldDescriptor) -> Self {
        Scalar::from_integer(1, field)
    }

    /// Canonical ring homomorphism Z -> field.
    pub fn from_integer(n: i64, field: FieldDescriptor) -> Self {
        match field {
            FieldDescriptor::Rationals => Scalar::Rat(BigRational::from_integer(n.into())),
            FieldDescriptor::PrimeField(p) => Scalar::Fp {
                val: n.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    pub fn from_ratio(num: i64, den: i64, field: FieldDescriptor) -> Result<Self> {
        let d = Scalar::from_integer(den, field);
        Scalar::from_integer(num, field).div(&d)
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            Scalar::Rat(_) => FieldDescriptor::Rationals,
            Scalar::Fp { p, .. } => FieldDescriptor::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { val, .. } => *val == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Fp { val, p } => Scalar::Fp {
                val: mod_pow(*val, *p - 2, *p),
                p: *p,
            },
        })
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        ensure_same_field(self, rhs)?;
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one(self.descriptor());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact square root when one exists in the field.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => {
                if r.is_negative() {
                    return None;
                }
                let (num, den) = (r.numer(), r.denom());
                let sn = num.sqrt();
                let sd = den.sqrt();
                if &(&sn * &sn) == num && &(&sd * &sd) == den {
                    Some(Scalar::Rat(BigRational::new(sn, sd)))
                } else {
                    None
                }
            }
            Scalar::Fp { val, p } => tonelli_shanks(*val, *p).map(|s| Scalar::Fp { val: s, p: *p }),
        }
    }

    /// Parses the per-field text form: `a` or `a/b` over Q, a decimal
    /// residue (optionally signed or written as a fraction) over F_p.
    pub fn parse(text: &str, field: FieldDescriptor) -> Result<Scalar> {
        let text = text.trim();
        let bad = |msg: String| Error::SyntaxError {
            position: 0,
            message: msg,
        };
        let parse_int = |s: &str| -> Result<BigInt> {
            BigInt::from_str(s.trim()).map_err(|_| bad(format!("invalid integer '{s}'")))
        };
        let (num, den) = match text.split_once('/') {
            Some((a, b)) => (parse_int(a)?, parse_int(b)?),
            None => (parse_int(text)?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match field {
            FieldDescriptor::Rationals => Ok(Scalar::Rat(BigRational::new(num, den))),
            FieldDescriptor::PrimeField(p) => {
                let reduce = |n: &BigInt| -> u64 {
                    let r = n % p;
                    let r: BigInt = if r < BigInt::zero() { r + p } else { r };
                    u64::try_from(r).expect("residue fits u64")
                };
                let n = Scalar::Fp { val: reduce(&num), p };
                let d = Scalar::Fp { val: reduce(&den), p };
                n.div(&d)
            }
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Fp { val, .. } => Some(*val),
        }
    }

    /// True for negative rationals; prime-field residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }
}

pub fn ensure_same_field(a: &Scalar, b: &Scalar) -> Result<()> {
    if a.descriptor() == b.descriptor() {
        Ok(())
    } else {
        Err(Error::MixedFields)
    }
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Square root mod a prime, None for non-residues.
fn tonelli_shanks(n: u64, p: u64) -> Option<u64> {
    if n == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(n % 2);
    }
    if mod_pow(n, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(mod_pow(n, (p + 1) / 4, p));
    }
    // Write p - 1 = q * 2^s with q odd.
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| mod_pow(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = mod_pow(z, q, p);
    let mut t = mod_pow(n, q, p);
    let mut r = mod_pow(n, (q + 1) / 2, p);
    while t != 1 {
        let i = (1..m).find(|&i| mod_pow(t, 1 << i, p) == 1)?;
        let b = mod_pow(c, 1 << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    Some(r)
}

fn fp_add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn fp_sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn fp_mul(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt, $fp_fn:ident) => {
        impl std::ops::$trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a $op b),
                    (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, p: q }) => {
                        assert_eq!(p, q, "mixed prime fields");
                        Scalar::Fp { val: $fp_fn(*a, *b, *p), p: *p }
                    }
                    _ => panic!("mixed fields in scalar arithmetic"),
                }
            }
        }
        impl std::ops::$trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +, fp_add);
scalar_binop!(Sub, sub, -, fp_sub);
scalar_binop!(Mul, mul, *, fp_mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { val, p } => Scalar::Fp {
                val: if *val == 0 { 0 } else { p - val },
                p: *p,
            },
        }
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { val, .. } => write!(f, "{val}"),
        }
    }
}
