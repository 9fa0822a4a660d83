//! Graded matrix rings M_n(R)(γ1,…,γn) over R = K (trivially graded) or
//! R = K[x^m, x^-m].
//!
//! Grading law: a matrix of degree δ has its (i,j) entry in R_{δ − γi + γj},
//! so `x^t e_ij` is homogeneous of degree `t + γi − γj`.

mod decide;
mod slice;
mod witness;

pub use decide::{
    graded_exchange_ring, is_graded_clean_ring, normalize_shifts, residue_multiplicities,
    zero_component_structure,
};
pub use slice::HomogeneousSlice;
pub use witness::{graded_exchange_witness, right_inverse_one_minus, ExchangeWitness};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::coeff::{Field, LaurentPoly, Scalar};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Base {
    /// The field K with trivial grading.
    Field,
    /// K[x^m, x^-m] with deg x = 1.
    Laurent { m: u32 },
}

impl Base {
    /// Step of the Laurent lattice; 1 for the trivially graded field.
    pub fn step(self) -> u32 {
        match self {
            Base::Field => 1,
            Base::Laurent { m } => m,
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Field => write!(f, "K"),
            Base::Laurent { m: 1 } => write!(f, "K[x,x^-1]"),
            Base::Laurent { m } => write!(f, "K[x^{m},x^-{m}]"),
        }
    }
}

impl FromStr for Base {
    type Err = Error;

    /// `k` or `laurent:M`.
    fn from_str(s: &str) -> Result<Base> {
        let t = s.trim().to_ascii_lowercase();
        if t == "k" || t == "field" {
            return Ok(Base::Field);
        }
        let m = t
            .strip_prefix("laurent:")
            .ok_or_else(|| Error::Precondition(format!("unknown base `{s}`")))?;
        let m: u32 = m
            .parse()
            .map_err(|_| Error::Precondition(format!("bad Laurent step in `{s}`")))?;
        if m == 0 {
            return Err(Error::Precondition("Laurent step must be positive".into()));
        }
        Ok(Base::Laurent { m })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedMatrixRing {
    n: usize,
    base: Base,
    shifts: Vec<i64>,
}

impl GradedMatrixRing {
    pub fn new(base: Base, shifts: Vec<i64>) -> Result<Self> {
        if shifts.is_empty() {
            return Err(Error::Shape("matrix size must be at least 1".into()));
        }
        if base == (Base::Laurent { m: 0 }) {
            return Err(Error::Precondition("Laurent step must be positive".into()));
        }
        Ok(GradedMatrixRing {
            n: shifts.len(),
            base,
            shifts,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn step(&self) -> u32 {
        self.base.step()
    }

    /// Exponent of x needed at position (i,j) for degree δ, if that position can be nonzero.
    pub fn exponent_at(&self, i: usize, j: usize, degree: i64) -> Option<i64> {
        let t = degree - self.shifts[i] + self.shifts[j];
        match self.base {
            Base::Field => (t == 0).then_some(0),
            Base::Laurent { m } => (t.rem_euclid(m as i64) == 0).then_some(t),
        }
    }
}

impl fmt::Display for GradedMatrixRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.shifts.iter().map(i64::to_string).collect();
        write!(f, "M_{}({})({})", self.n, self.base, s.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Degree {
    Zero,
    Homogeneous(i64),
    Inhomogeneous,
}

/// A matrix over the base ring of a graded matrix ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GMatrix {
    ring: GradedMatrixRing,
    field: Field,
    entries: Vec<LaurentPoly>,
}

impl GMatrix {
    pub fn zero(ring: &GradedMatrixRing, field: Field) -> Self {
        let n = ring.n;
        GMatrix {
            ring: ring.clone(),
            field,
            entries: vec![LaurentPoly::zero(field, ring.step()); n * n],
        }
    }

    pub fn identity(ring: &GradedMatrixRing, field: Field) -> Self {
        let mut a = Self::zero(ring, field);
        for i in 0..ring.n {
            a.entries[i * ring.n + i] = LaurentPoly::one(field, ring.step());
        }
        a
    }

    /// `c x^t e_ij`.
    pub fn unit(ring: &GradedMatrixRing, c: Scalar, t: i64, i: usize, j: usize) -> Result<Self> {
        let mut a = Self::zero(ring, c.field());
        a.set(i, j, LaurentPoly::with_exponent(c, t, ring.step())?)?;
        Ok(a)
    }

    /// Builds from rows; entries must lie in the base ring.
    pub fn from_rows(ring: &GradedMatrixRing, field: Field, rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let n = ring.n;
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("expected a {n}x{n} matrix")));
        }
        let mut a = Self::zero(ring, field);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                a.set(i, j, v)?;
            }
        }
        Ok(a)
    }

    /// Convenience: entries given as `(exponent, integer coefficient)` term lists.
    pub fn from_int_terms(ring: &GradedMatrixRing, field: Field, rows: &[Vec<Vec<(i64, i64)>>]) -> Result<Self> {
        let step = ring.step();
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|ts| {
                        LaurentPoly::from_terms(
                            field,
                            step,
                            ts.iter().map(|&(e, c)| (e, Scalar::from_i64(field, c))),
                        )
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(ring, field, rows)
    }

    pub fn ring(&self) -> &GradedMatrixRing {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.ring.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.ring.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) -> Result<()> {
        if v.step() != self.ring.step() {
            return Err(Error::StepMismatch(self.ring.step(), v.step()));
        }
        if v.field() != self.field {
            return Err(Error::FieldMismatch(self.field.to_string(), v.field().to_string()));
        }
        if self.ring.base == Base::Field && v.as_constant().is_none() {
            return Err(Error::Precondition(format!("entry `{v}` is not in K")));
        }
        self.entries[i * self.ring.n + j] = v;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.ring, self.field)
    }

    fn compatible(&self, rhs: &GMatrix) -> Result<()> {
        if self.ring != rhs.ring {
            return Err(Error::Shape(format!("ring mismatch: {} vs {}", self.ring, rhs.ring)));
        }
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(self.field.to_string(), rhs.field.to_string()));
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &GMatrix) -> Result<GMatrix> {
        self.compatible(rhs)?;
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a = &*a + b;
        }
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &GMatrix) -> Result<GMatrix> {
        self.compatible(rhs)?;
        let n = self.ring.n;
        let mut out = Self::zero(&self.ring, self.field);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * n + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Panics on a ring or field mismatch; see [`checked_add`](Self::checked_add).
    pub fn add(&self, rhs: &GMatrix) -> GMatrix {
        self.checked_add(rhs).expect("matrices from different rings")
    }

    pub fn sub(&self, rhs: &GMatrix) -> GMatrix {
        self.add(&rhs.neg())
    }

    /// Panics on a ring or field mismatch; see [`checked_mul`](Self::checked_mul).
    pub fn mul(&self, rhs: &GMatrix) -> GMatrix {
        self.checked_mul(rhs).expect("matrices from different rings")
    }

    pub fn neg(&self) -> GMatrix {
        let mut out = self.clone();
        for a in &mut out.entries {
            *a = -&*a;
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> GMatrix {
        let mut out = self.clone();
        for a in &mut out.entries {
            *a = &*a * c;
        }
        out
    }

    /// `1 - self`.
    pub fn one_minus(&self) -> GMatrix {
        Self::identity(&self.ring, self.field).sub(self)
    }

    pub fn pow(&self, k: u32) -> GMatrix {
        let mut acc = Self::identity(&self.ring, self.field);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    pub fn degree(&self) -> Degree {
        let n = self.ring.n;
        let mut found: Option<i64> = None;
        for i in 0..n {
            for j in 0..n {
                let v = self.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let Some(t) = v.homogeneous_degree() else {
                    return Degree::Inhomogeneous;
                };
                let d = t + self.ring.shifts[i] - self.ring.shifts[j];
                match found {
                    None => found = Some(d),
                    Some(prev) if prev != d => return Degree::Inhomogeneous,
                    Some(_) => {}
                }
            }
        }
        found.map_or(Degree::Zero, Degree::Homogeneous)
    }

    /// The degree-δ homogeneous component.
    pub fn component(&self, degree: i64) -> GMatrix {
        let n = self.ring.n;
        let mut out = Self::zero(&self.ring, self.field);
        for i in 0..n {
            for j in 0..n {
                let t = degree - self.ring.shifts[i] + self.ring.shifts[j];
                out.entries[i * n + j] = self.get(i, j).component(t);
            }
        }
        out
    }

    /// Determinant by Laplace expansion with memoization over column sets.
    pub fn determinant(&self) -> LaurentPoly {
        let n = self.ring.n;
        let all: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut memo = HashMap::new();
        self.det_rec(0, all, &mut memo)
    }

    fn det_rec(&self, row: usize, cols: u64, memo: &mut HashMap<u64, LaurentPoly>) -> LaurentPoly {
        let n = self.ring.n;
        if row == n {
            return LaurentPoly::one(self.field, self.ring.step());
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc = LaurentPoly::zero(self.field, self.ring.step());
        let mut sign_neg = false;
        for j in 0..n {
            if cols & (1 << j) == 0 {
                continue;
            }
            let a = self.get(row, j);
            if !a.is_zero() {
                let minor = self.det_rec(row + 1, cols & !(1 << j), memo);
                let term = a * &minor;
                acc = if sign_neg { &acc - &term } else { &acc + &term };
            }
            sign_neg = !sign_neg;
        }
        memo.insert(cols, acc.clone());
        acc
    }

    /// Two-sided inverse via the adjugate, when the determinant is a unit of the base.
    pub fn inverse(&self) -> Option<GMatrix> {
        let det = self.determinant();
        let dinv = det.inverse()?;
        let n = self.ring.n;
        let mut out = Self::zero(&self.ring, self.field);
        for i in 0..n {
            for j in 0..n {
                // (adj A)_{ji} = (-1)^{i+j} det(A without row i and column j)
                let minor = self.minor(i, j);
                let mut c = minor.determinant_entries(n - 1, self.field, self.ring.step());
                if (i + j) % 2 == 1 {
                    c = -&c;
                }
                out.entries[j * n + i] = &c * &dinv;
            }
        }
        Some(out)
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Minor {
        let n = self.ring.n;
        let mut entries = Vec::with_capacity((n - 1) * (n - 1));
        for i in (0..n).filter(|&i| i != skip_row) {
            for j in (0..n).filter(|&j| j != skip_col) {
                entries.push(self.get(i, j).clone());
            }
        }
        Minor { entries }
    }

    /// Homogeneous and invertible.
    pub fn is_graded_unit(&self) -> bool {
        matches!(self.degree(), Degree::Homogeneous(_)) && self.determinant().is_unit()
    }
}

struct Minor {
    entries: Vec<LaurentPoly>,
}

impl Minor {
    fn determinant_entries(&self, n: usize, field: Field, step: u32) -> LaurentPoly {
        if n == 0 {
            return LaurentPoly::one(field, step);
        }
        let ring = GradedMatrixRing {
            n,
            base: Base::Laurent { m: step },
            shifts: vec![0; n],
        };
        let m = GMatrix {
            ring,
            field,
            entries: self.entries.clone(),
        };
        m.determinant()
    }
}

impl fmt::Display for GMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.ring.n;
        write!(f, "[")?;
        for i in 0..n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for GMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
