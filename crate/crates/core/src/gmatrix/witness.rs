use serde::Serialize;

use super::{graded_exchange_ring, zero_component_structure, Base, Degree, GMatrix};
use crate::coeff::{LaurentPoly, Scalar};
use crate::error::{Error, Result};
use crate::linalg::KMatrix;

/// `e` idempotent of degree 0 with `e = a r` and `1 - e = (1 - a) s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExchangeWitness {
    pub e: GMatrix,
    pub r: GMatrix,
    pub s: GMatrix,
}

impl ExchangeWitness {
    /// Exact check of every defining identity.
    pub fn verify(&self, a: &GMatrix) -> Result<()> {
        let fail = |what: &str| Err(Error::InvariantViolation(format!("exchange witness: {what}")));
        if !self.e.is_idempotent() {
            return fail("e is not idempotent");
        }
        if !matches!(self.e.degree(), Degree::Zero | Degree::Homogeneous(0)) {
            return fail("e is not of degree 0");
        }
        if a.mul(&self.r) != self.e {
            return fail("e != a r");
        }
        if a.one_minus().mul(&self.s) != self.e.one_minus() {
            return fail("1 - e != (1 - a) s");
        }
        Ok(())
    }
}

/// Exchange witness for a homogeneous element of a ring decided graded exchange.
///
/// Over K[x^m, x^-m] with distinct shift residues a homogeneous matrix is a
/// weighted partial permutation; its index map splits into full cycles and
/// chains. On the cycles `a` is invertible and `e` is the identity there; on
/// the chains `a` is nilpotent and `1 - a` is inverted by a finite geometric
/// series. Over K, a matrix of nonzero degree is nilpotent, and in degree 0
/// each block of equal shifts is split by a projection onto the column space of `a`.
pub fn graded_exchange_witness(a: &GMatrix) -> Result<ExchangeWitness> {
    let degree = match a.degree() {
        Degree::Inhomogeneous => {
            return Err(Error::Precondition("inhomogeneous input".into()));
        }
        Degree::Zero => None,
        Degree::Homogeneous(d) => Some(d),
    };
    let ring = a.ring();
    if !graded_exchange_ring(ring).is_yes() {
        return Err(Error::NoConstructiveProcedure(format!(
            "no constructive procedure available for {ring}"
        )));
    }
    let field = a.field();
    let w = match (degree, ring.base()) {
        (None, _) => ExchangeWitness {
            e: GMatrix::zero(ring, field),
            r: GMatrix::zero(ring, field),
            s: GMatrix::identity(ring, field),
        },
        (Some(_), Base::Laurent { .. }) => laurent_witness(a),
        (Some(0), Base::Field) => field_degree_zero_witness(a)?,
        (Some(_), Base::Field) => ExchangeWitness {
            e: GMatrix::zero(ring, field),
            r: GMatrix::zero(ring, field),
            s: geometric_series(a),
        },
    };
    w.verify(a)?;
    Ok(w)
}

/// `sum_{t=0}^{n} a^t`, the inverse of `1 - a` when `a^(n+1) = 0`.
fn geometric_series(a: &GMatrix) -> GMatrix {
    let mut acc = GMatrix::identity(a.ring(), a.field());
    let mut p = acc.clone();
    for _ in 0..a.n() {
        p = p.mul(a);
        if p.is_zero() {
            break;
        }
        acc = acc.add(&p);
    }
    acc
}

/// For each row the unique nonzero column, if any.
fn partial_permutation(a: &GMatrix) -> Vec<Option<usize>> {
    let n = a.n();
    (0..n)
        .map(|i| {
            let cols: Vec<usize> = (0..n).filter(|&j| !a.get(i, j).is_zero()).collect();
            debug_assert!(cols.len() <= 1, "homogeneous with distinct residues");
            cols.first().copied()
        })
        .collect()
}

/// Marks indices lying on a closed orbit of the partial map.
fn on_cycle(next: &[Option<usize>]) -> Vec<bool> {
    let n = next.len();
    (0..n)
        .map(|i| {
            let mut at = i;
            for _ in 0..n {
                match next[at] {
                    Some(j) if j == i => return true,
                    Some(j) => at = j,
                    None => return false,
                }
            }
            false
        })
        .collect()
}

fn laurent_witness(a: &GMatrix) -> ExchangeWitness {
    let ring = a.ring();
    let field = a.field();
    let n = a.n();
    let next = partial_permutation(a);
    let cyc = on_cycle(&next);
    let mut e = GMatrix::zero(ring, field);
    let mut r = GMatrix::zero(ring, field);
    let mut chain = GMatrix::zero(ring, field);
    for i in 0..n {
        if cyc[i] {
            let j = next[i].expect("cycle index has an image");
            let inv = a.get(i, j).inverse().expect("nonzero monomial");
            e.set(i, i, LaurentPoly::one(field, ring.step())).expect("fits");
            r.set(j, i, inv).expect("fits");
        } else if let Some(j) = next[i] {
            chain.set(i, j, a.get(i, j).clone()).expect("fits");
        }
    }
    let s = geometric_series(&chain).mul(&e.one_minus());
    ExchangeWitness { e, r, s }
}

fn to_kmatrix(a: &GMatrix, idx: &[usize]) -> KMatrix {
    let rows = idx
        .iter()
        .map(|&i| {
            idx.iter()
                .map(|&j| a.get(i, j).as_constant().expect("degree-0 entry over K"))
                .collect()
        })
        .collect();
    KMatrix::from_rows(a.field(), rows)
}

fn place(target: &mut GMatrix, idx: &[usize], m: &KMatrix) {
    for (bi, &i) in idx.iter().enumerate() {
        for (bj, &j) in idx.iter().enumerate() {
            let v = LaurentPoly::constant(m.get(bi, bj).clone(), 1);
            target.set(i, j, v).expect("constant entry");
        }
    }
}

fn field_degree_zero_witness(a: &GMatrix) -> Result<ExchangeWitness> {
    let ring = a.ring();
    let field = a.field();
    let mut e = GMatrix::zero(ring, field);
    let mut r = GMatrix::zero(ring, field);
    let mut s = GMatrix::zero(ring, field);
    for block in zero_component_structure(ring) {
        let b = block.len();
        let am = to_kmatrix(a, &block);
        let id = KMatrix::identity(field, b);
        let bm = id.sub(&am);
        // basis of col(a), extended to K^b by columns of 1 - a
        let (_, pivots) = am.rref();
        let mut cols: Vec<Vec<Scalar>> = pivots.iter().map(|&j| am.column(j)).collect();
        let k = cols.len();
        for j in 0..b {
            if cols.len() == b {
                break;
            }
            let mut trial = cols.clone();
            trial.push(bm.column(j));
            if KMatrix::from_columns(field, b, &trial).rank() == trial.len() {
                cols = trial;
            }
        }
        let p = KMatrix::from_columns(field, b, &cols);
        let pinv = p
            .inverse()
            .ok_or_else(|| Error::InvariantViolation("col(a) + col(1-a) is not everything".into()))?;
        let mut d = KMatrix::zeros(field, b, b);
        for i in 0..k {
            d.set(i, i, field.one());
        }
        let em = p.mul(&d).mul(&pinv);
        let rm = am
            .solve(&em)
            .ok_or_else(|| Error::InvariantViolation("e not in a R".into()))?;
        let sm = bm
            .solve(&id.sub(&em))
            .ok_or_else(|| Error::InvariantViolation("1 - e not in (1 - a) R".into()))?;
        place(&mut e, &block, &em);
        place(&mut r, &block, &rm);
        place(&mut s, &block, &sm);
    }
    Ok(ExchangeWitness { e, r, s })
}

/// Right inverse of `1 - a` for homogeneous `a` whose degree is not a multiple of m.
///
/// Chains of the index map are eliminated one variable at a time, which
/// amounts to the finite series `sum a^t`. If every index lies on a full
/// cycle, `a` itself is invertible and the inverse is reported in the error.
pub fn right_inverse_one_minus(a: &GMatrix) -> Result<GMatrix> {
    let ring = a.ring();
    let degree = match a.degree() {
        Degree::Zero => return Ok(GMatrix::identity(ring, a.field())),
        Degree::Inhomogeneous => return Err(Error::Precondition("inhomogeneous input".into())),
        Degree::Homogeneous(d) => d,
    };
    if degree.rem_euclid(ring.step() as i64) == 0 {
        return Err(Error::Contract(
            "degree is a multiple of the step: use the diagonal case".into(),
        ));
    }
    if ring.base() == Base::Field {
        return Ok(geometric_series(a));
    }
    if !graded_exchange_ring(ring).is_yes() {
        return Err(Error::Precondition("shift residues must be distinct".into()));
    }
    let next = partial_permutation(a);
    let cyc = on_cycle(&next);
    if cyc.iter().all(|&c| c) {
        let inv = a.inverse().expect("weighted permutation matrix");
        return Err(Error::Invertible {
            inverse: inv.to_string(),
        });
    }
    if cyc.iter().any(|&c| c) {
        return Err(Error::NotRightInvertible(
            "a has both a full cycle and a chain; neither a nor 1 - a is right invertible".into(),
        ));
    }
    let b = geometric_series(a);
    if a.one_minus().mul(&b).is_identity() {
        Ok(b)
    } else {
        Err(Error::InvariantViolation("(1 - a) b != 1".into()))
    }
}
