use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Scalar};
use crate::error::{Error, Result};

/// An element of K[x^m, x^-m], stored sparsely as `k -> c_k` for the term `c_k x^(k m)`.
///
/// Zero coefficients are never stored, so the zero polynomial is the empty map.
/// The homogeneous component of degree `d` is `K x^d` when `m | d` and zero otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    field: Field,
    step: u32,
    terms: BTreeMap<i64, Scalar>,
}

impl LaurentPoly {
    pub fn zero(field: Field, step: u32) -> Self {
        assert!(step >= 1, "Laurent step must be positive");
        LaurentPoly {
            field,
            step,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: Field, step: u32) -> Self {
        Self::constant(field.one(), step)
    }

    pub fn constant(c: Scalar, step: u32) -> Self {
        Self::monomial(c, 0, step)
    }

    /// `c x^(k m)`.
    pub fn monomial(c: Scalar, k: i64, step: u32) -> Self {
        let mut p = Self::zero(c.field(), step);
        if !c.is_zero() {
            p.terms.insert(k, c);
        }
        p
    }

    /// `c x^e`; `e` must be a multiple of the step.
    pub fn with_exponent(c: Scalar, exponent: i64, step: u32) -> Result<Self> {
        if exponent.rem_euclid(step as i64) != 0 {
            return Err(Error::Precondition(format!(
                "exponent {exponent} is not a multiple of step {step}"
            )));
        }
        Ok(Self::monomial(c, exponent / step as i64, step))
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms(
        field: Field,
        step: u32,
        terms: impl IntoIterator<Item = (i64, Scalar)>,
    ) -> Result<Self> {
        let mut p = Self::zero(field, step);
        for (e, c) in terms {
            let t = Self::with_exponent(c, e, step)?;
            p = p.checked_add(&t)?;
        }
        Ok(p)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn step(&self) -> u32 {
        self.step
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(Scalar::is_one)
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> + '_ {
        let m = self.step as i64;
        self.terms.iter().map(move |(k, c)| (k * m, c))
    }

    /// Coefficient of `x^exponent` (zero if absent or off-lattice).
    pub fn coeff(&self, exponent: i64) -> Scalar {
        let m = self.step as i64;
        if exponent.rem_euclid(m) != 0 {
            return self.field.zero();
        }
        self.terms
            .get(&(exponent / m))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// The degree-`d` homogeneous component.
    pub fn component(&self, d: i64) -> LaurentPoly {
        let c = self.coeff(d);
        if c.is_zero() {
            Self::zero(self.field, self.step)
        } else {
            Self::monomial(c, d / self.step as i64, self.step)
        }
    }

    /// Exponent of a single-term polynomial; `None` for zero or several terms.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        if self.terms.len() == 1 {
            self.terms().next().map(|(e, _)| e)
        } else {
            None
        }
    }

    /// Leading coefficient of a single-term polynomial.
    pub fn single_coeff(&self) -> Option<&Scalar> {
        if self.terms.len() == 1 {
            self.terms.values().next()
        } else {
            None
        }
    }

    /// Units of a Laurent ring over a field are exactly the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn inverse(&self) -> Option<LaurentPoly> {
        if !self.is_unit() {
            return None;
        }
        let (k, c) = self.terms.iter().next()?;
        Some(Self::monomial(c.inv()?, -k, self.step))
    }

    /// Constant term when the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Scalar) -> LaurentPoly {
        let mut out = Self::zero(self.field, self.step);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(*k, v * c);
        }
        out
    }

    fn compatible(&self, rhs: &LaurentPoly) -> Result<()> {
        if self.step != rhs.step {
            return Err(Error::StepMismatch(self.step, rhs.step));
        }
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(
                self.field.to_string(),
                rhs.field.to_string(),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &LaurentPoly) -> Result<LaurentPoly> {
        self.compatible(rhs)?;
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            accumulate(&mut out.terms, *k, c);
        }
        Ok(out)
    }

    /// Exact product; steps (and fields) must agree.
    pub fn checked_mul(&self, rhs: &LaurentPoly) -> Result<LaurentPoly> {
        self.compatible(rhs)?;
        let mut out = Self::zero(self.field, self.step);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                accumulate(&mut out.terms, ka + kb, &(ca * cb));
            }
        }
        Ok(out)
    }
}

fn accumulate(terms: &mut BTreeMap<i64, Scalar>, k: i64, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&k) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                terms.remove(&k);
            }
        }
        None => {
            terms.insert(k, c.clone());
        }
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("incompatible Laurent polynomials")
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("incompatible Laurent polynomials")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = -&*v;
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative_literal();
            let mag = if neg { -c } else { c.clone() };
            if i > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{e}")?,
                (_, false) => write!(f, "{mag}x^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_i64(Field::Rational, n)
    }

    #[test]
    fn inverse_monomials_multiply_to_one() {
        let a = LaurentPoly::with_exponent(q(1), 2, 2).unwrap();
        let b = LaurentPoly::with_exponent(q(1), -2, 2).unwrap();
        assert!(a.checked_mul(&b).unwrap().is_one());
    }

    #[test]
    fn square_in_characteristic_two() {
        // (1 + x^2)^2 = 1 + 2x^2 + x^4 = 1 + x^4 over F_2
        let f = Field::Prime(2);
        let a = LaurentPoly::from_terms(f, 2, [(0, f.one()), (2, f.one())]).unwrap();
        let sq = a.checked_mul(&a).unwrap();
        let want = LaurentPoly::from_terms(f, 2, [(0, f.one()), (4, f.one())]).unwrap();
        assert_eq!(sq, want);
    }

    #[test]
    fn zero_absorbs() {
        let a = LaurentPoly::from_terms(Field::Rational, 1, [(3, q(2)), (-1, q(5))]).unwrap();
        let z = LaurentPoly::zero(Field::Rational, 1);
        assert!(a.checked_mul(&z).unwrap().is_zero());
    }

    #[test]
    fn step_mismatch_is_an_error() {
        let a = LaurentPoly::one(Field::Rational, 1);
        let b = LaurentPoly::one(Field::Rational, 2);
        assert_eq!(a.checked_mul(&b), Err(Error::StepMismatch(1, 2)));
        assert!(LaurentPoly::with_exponent(q(1), 3, 2).is_err());
    }

    #[test]
    fn components() {
        let a = LaurentPoly::from_terms(Field::Rational, 2, [(2, q(3)), (4, q(1))]).unwrap();
        assert_eq!(a.component(4), LaurentPoly::with_exponent(q(1), 4, 2).unwrap());
        assert!(a.component(3).is_zero());
        assert!(a.component(0).is_zero());
        assert!(LaurentPoly::zero(Field::Rational, 2).component(6).is_zero());
    }

    #[test]
    fn units_are_monomials() {
        let a = LaurentPoly::with_exponent(q(5), -4, 2).unwrap();
        assert!(a.is_unit());
        assert!(a.checked_mul(&a.inverse().unwrap()).unwrap().is_one());
        let b = LaurentPoly::from_terms(Field::Rational, 2, [(0, q(1)), (2, q(1))]).unwrap();
        assert!(!b.is_unit());
        assert!(b.inverse().is_none());
        assert!(!LaurentPoly::zero(Field::Rational, 2).is_unit());
    }

    #[test]
    fn one_plus_x2_has_no_inverse_of_bounded_support() {
        // Brute force over F_3: no polynomial with exponents in [-6, 6] inverts 1 + x^2.
        let f = Field::Prime(3);
        let a = LaurentPoly::from_terms(f, 2, [(0, f.one()), (2, f.one())]).unwrap();
        let exps: Vec<i64> = (-3..=3).map(|k| 2 * k).collect();
        let n = exps.len() as u32;
        for code in 0..3u64.pow(n) {
            let mut c = code;
            let mut b = LaurentPoly::zero(f, 2);
            for &e in &exps {
                let t = LaurentPoly::with_exponent(Scalar::from_i64(f, (c % 3) as i64), e, 2).unwrap();
                b = &b + &t;
                c /= 3;
            }
            assert!(!a.checked_mul(&b).unwrap().is_one());
        }
    }

    #[test]
    fn display() {
        let a = LaurentPoly::from_terms(Field::Rational, 1, [(-1, q(-2)), (0, q(1)), (3, q(1))]).unwrap();
        assert_eq!(a.to_string(), "-2x^-1 + 1 + x^3");
    }
}
