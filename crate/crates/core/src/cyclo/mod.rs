//! Exact arithmetic in cyclotomic fields `Q(ζ_m)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(m)-1}` and kept
//! reduced modulo the `m`-th cyclotomic polynomial, so equality of scalars is
//! equality of coefficient vectors.

mod linalg;
mod poly;
mod roots;

pub use linalg::{express, CycloMatrix, SparseVec, Subspace};
pub use roots::roots_in_field;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `Φ_m` as integer coefficients, lowest degree first.
///
/// Computed by dividing `x^m - 1` by `Φ_d` for every proper divisor `d` of `m`.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    assert!(m >= 1, "cyclotomic polynomial index must be positive");
    let m = m as usize;
    let mut num = vec![0i64; m + 1];
    num[0] = -1;
    num[m] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = exact_div_int(&num, &cyclotomic_polynomial(d as u32));
        }
    }
    num
}

// Division of integer polynomials by a monic divisor with zero remainder.
fn exact_div_int(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let qlen = rem.len() - dd;
    let mut q = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

/// Euler's totient.
pub fn totient(m: u32) -> usize {
    (1..=m).filter(|&k| k.gcd(&m) == 1).count()
}

/// The field `Q(ζ_m)` together with the reduction data needed by its scalars.
#[derive(Debug)]
pub struct CycloField {
    modulus: u32,
    degree: usize,
    phi: Vec<i64>,
    // x^k mod Φ_m for k in 0..max(m, 2·degree - 1)
    powers: Vec<Vec<i64>>,
}

impl PartialEq for CycloField {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}

impl Eq for CycloField {}

impl CycloField {
    fn new(modulus: u32) -> Self {
        let phi = cyclotomic_polynomial(modulus);
        let degree = phi.len() - 1;
        let count = (modulus as usize).max(2 * degree - 1).max(1);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[degree - 1];
            for j in (1..degree).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..degree {
                    cur[j] -= top * phi[j];
                }
            }
        }
        CycloField {
            modulus,
            degree,
            phi,
            powers,
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// `φ(m)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn minimal_polynomial(&self) -> &[i64] {
        &self.phi
    }
}

/// Shared handle on `Q(ζ_m)`; fields are cached per modulus.
pub fn field(modulus: u32) -> Arc<CycloField> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
    assert!(modulus >= 1, "cyclotomic modulus must be positive");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("field cache poisoned");
    guard
        .entry(modulus)
        .or_insert_with(|| Arc::new(CycloField::new(modulus)))
        .clone()
}

/// Exact element of `Q(ζ_m)`.
#[derive(Clone)]
pub struct CycloScalar {
    field: Arc<CycloField>,
    coeffs: Vec<BigRational>,
}

/// Field operation selector for [`scalar_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field operation; fails on modulus mismatch or division by zero.
pub fn scalar_arith(a: &CycloScalar, b: &CycloScalar, op: ArithOp) -> Result<CycloScalar> {
    a.check_same(b)?;
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a * &b.inverse()?,
    })
}

/// `ζ_m^k` in reduced form.
pub fn zeta(modulus: u32, k: i64) -> CycloScalar {
    CycloScalar::zeta(&field(modulus), k)
}

impl CycloScalar {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        CycloScalar {
            field: field.clone(),
            coeffs: vec![BigRational::zero(); field.degree],
        }
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_int(field: &Arc<CycloField>, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(field: &Arc<CycloField>, r: BigRational) -> Self {
        let mut s = Self::zero(field);
        s.coeffs[0] = r;
        s
    }

    /// Builds a scalar from power-basis coordinates; vectors longer than
    /// `φ(m)` are reduced modulo `Φ_m`.
    pub fn from_coeffs(field: &Arc<CycloField>, coeffs: Vec<BigRational>) -> Self {
        let mut s = Self::zero(field);
        for (k, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < field.degree {
                s.coeffs[k] += c;
            } else {
                s.add_power_multiple(k, &c);
            }
        }
        s
    }

    pub fn zeta(field: &Arc<CycloField>, k: i64) -> Self {
        let m = field.modulus as i64;
        let e = k.rem_euclid(m) as usize;
        let pow = &field.powers[e];
        CycloScalar {
            field: field.clone(),
            coeffs: pow
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    fn add_power_multiple(&mut self, k: usize, c: &BigRational) {
        let field = self.field.clone();
        if k < field.powers.len() {
            for (j, &pj) in field.powers[k].iter().enumerate() {
                if pj != 0 {
                    self.coeffs[j] += c * BigRational::from_integer(BigInt::from(pj));
                }
            }
        } else {
            let reduced = Self::zeta(&field, k as i64 % field.modulus as i64);
            for (j, rj) in reduced.coeffs.iter().enumerate() {
                if !rj.is_zero() {
                    self.coeffs[j] += c * rj;
                }
            }
        }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn modulus(&self) -> u32 {
        self.field.modulus
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value if the scalar lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub(crate) fn check_same(&self, other: &CycloScalar) -> Result<()> {
        if self.field.modulus != other.field.modulus {
            return Err(Error::ModulusMismatch {
                left: self.field.modulus,
                right: other.field.modulus,
            });
        }
        Ok(())
    }

    /// Multiplicative inverse via the extended Euclidean algorithm modulo `Φ_m`.
    pub fn inverse(&self) -> Result<CycloScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(&self.field, r.recip()));
        }
        let modp: Vec<BigRational> = self
            .field
            .phi
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let inv = poly::inverse_mod(&self.coeffs, &modp);
        Ok(Self::from_coeffs(&self.field, inv))
    }

    /// Image under `Q(ζ_a) → Q(ζ_M)`, `ζ_a ↦ ζ_M^{M/a}`; requires `a | M`.
    pub fn embed_into(&self, target: &Arc<CycloField>) -> Result<CycloScalar> {
        let a = self.field.modulus;
        let big = target.modulus;
        if !big.is_multiple_of(a) {
            return Err(Error::ModulusMismatch { left: a, right: big });
        }
        let step = (big / a) as usize;
        let mut out = Self::zero(target);
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_power_multiple((j * step) % big as usize, c);
            }
        }
        Ok(out)
    }

    /// Value under the complex embedding `ζ_m ↦ e^{2πik/m}`.
    pub fn to_complex(&self, k: u32) -> Complex64 {
        let m = self.field.modulus as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let angle = 2.0 * std::f64::consts::PI * (k as f64) * (j as f64) / m;
                Complex64::from_polar(1.0, angle) * c.to_f64().unwrap_or(f64::NAN)
            })
            .sum()
    }

    fn mul_ref(&self, rhs: &CycloScalar) -> CycloScalar {
        assert_eq!(
            self.field.modulus, rhs.field.modulus,
            "cyclotomic modulus mismatch"
        );
        if let Some(r) = rhs.as_rational() {
            return self.scale(r);
        }
        if let Some(r) = self.as_rational() {
            return rhs.scale(r);
        }
        let d = self.field.degree;
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut out = Self::zero(&self.field);
        for (k, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < d {
                out.coeffs[k] += c;
            } else {
                out.add_power_multiple(k, &c);
            }
        }
        out
    }

    pub fn scale(&self, r: &BigRational) -> CycloScalar {
        CycloScalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.modulus == other.field.modulus && self.coeffs == other.coeffs
    }
}

impl Eq for CycloScalar {}

impl Hash for CycloScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.modulus.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{}", abs)?,
                (_, true) => write!(f, "z{}^{}", self.field.modulus, k)?,
                (_, false) => write!(f, "{}*z{}^{}", abs, self.field.modulus, k)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: &CycloScalar) -> CycloScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for CycloScalar {
    type Output = CycloScalar;
    fn add(mut self, rhs: CycloScalar) -> CycloScalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&CycloScalar> for CycloScalar {
    fn add_assign(&mut self, rhs: &CycloScalar) {
        assert_eq!(
            self.field.modulus, rhs.field.modulus,
            "cyclotomic modulus mismatch"
        );
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl<'a> Sub<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: &CycloScalar) -> CycloScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for CycloScalar {
    type Output = CycloScalar;
    fn sub(mut self, rhs: CycloScalar) -> CycloScalar {
        self -= &rhs;
        self
    }
}

impl SubAssign<&CycloScalar> for CycloScalar {
    fn sub_assign(&mut self, rhs: &CycloScalar) {
        assert_eq!(
            self.field.modulus, rhs.field.modulus,
            "cyclotomic modulus mismatch"
        );
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl<'a> Mul<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: &CycloScalar) -> CycloScalar {
        self.mul_ref(rhs)
    }
}

impl Mul for CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: CycloScalar) -> CycloScalar {
        self.mul_ref(&rhs)
    }
}

impl MulAssign<&CycloScalar> for CycloScalar {
    fn mul_assign(&mut self, rhs: &CycloScalar) {
        *self = self.mul_ref(rhs);
    }
}

/// Panics on division by zero; use [`scalar_arith`] for a checked variant.
impl<'a> Div<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn div(self, rhs: &CycloScalar) -> CycloScalar {
        self.mul_ref(&rhs.inverse().expect("division by zero in Q(ζ_m)"))
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(mut self) -> CycloScalar {
        for c in &mut self.coeffs {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        -self.clone()
    }
}

/// Least common multiple, used to pick a common cyclotomic modulus.
pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}
