//! Exhaustive searches over finite homogeneous components of graded matrix
//! rings over F_p. Every negative answer is either certified exactly or
//! reported as inconclusive.

use serde::Serialize;

use crate::coeff::{Field, Scalar};
use crate::error::{Error, Result};
use crate::gmatrix::{Degree, ExchangeWitness, GMatrix, GradedMatrixRing, HomogeneousSlice};
use crate::linalg::KMatrix;

/// Prime field, degree range of the elements searched, and the exponent
/// range allowed in Laurent entries. `powers` bounds the length of the
/// geometric series tried for `1 - e ∈ (1 - x)R`; `None` means the matrix
/// size, which is always enough.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchWindow {
    pub p: u32,
    pub d_lo: i64,
    pub d_hi: i64,
    pub e_lo: i64,
    pub e_hi: i64,
    pub powers: Option<usize>,
}

impl SearchWindow {
    pub const DEFAULT_EXPONENT: i64 = 16;

    pub fn new(p: u32, d_lo: i64, d_hi: i64) -> Result<Self> {
        Field::prime(p)?;
        if d_lo > d_hi {
            return Err(Error::Precondition(format!(
                "empty degree window [{d_lo}, {d_hi}]"
            )));
        }
        Ok(SearchWindow {
            p,
            d_lo,
            d_hi,
            e_lo: -Self::DEFAULT_EXPONENT,
            e_hi: Self::DEFAULT_EXPONENT,
            powers: None,
        })
    }

    pub fn with_exponents(mut self, e_lo: i64, e_hi: i64) -> Result<Self> {
        if e_lo > e_hi {
            return Err(Error::Precondition(format!(
                "empty exponent window [{e_lo}, {e_hi}]"
            )));
        }
        self.e_lo = e_lo;
        self.e_hi = e_hi;
        Ok(self)
    }

    pub fn with_powers(mut self, powers: usize) -> Self {
        self.powers = Some(powers);
        self
    }

    /// `N` for `[-N, N]`, or `LO:HI`.
    pub fn parse_degrees(s: &str) -> Result<(i64, i64)> {
        let bad = || Error::Precondition(format!("bad degree window `{s}`"));
        let t = s.trim();
        let (lo, hi) = match t.split_once(':') {
            Some((a, b)) => (
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ),
            None => {
                let n: i64 = t.parse().map_err(|_| bad())?;
                if n < 0 {
                    return Err(bad());
                }
                (-n, n)
            }
        };
        if lo > hi {
            return Err(bad());
        }
        Ok((lo, hi))
    }

    pub fn field(&self) -> Field {
        Field::Prime(self.p)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.d_lo..=self.d_hi
    }

    fn admits(&self, t: i64) -> bool {
        (self.e_lo..=self.e_hi).contains(&t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    NotFound,
    Inconclusive(String),
}

impl<T> Outcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }

    pub fn found(&self) -> Option<&T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Found(_) => "found",
            Outcome::NotFound => "none",
            Outcome::Inconclusive(_) => "inconclusive",
        }
    }
}

/// Degree-δ matrices whose entries lie in the window, in lexicographic order
/// of their coordinates (zero first).
pub struct HomogeneousIter {
    slice: HomogeneousSlice,
    field: Field,
    digits: Vec<u32>,
    done: bool,
}

impl Iterator for HomogeneousIter {
    type Item = GMatrix;

    fn next(&mut self) -> Option<GMatrix> {
        if self.done {
            return None;
        }
        let coords: Vec<Scalar> = self
            .digits
            .iter()
            .map(|&v| Scalar::from_i64(self.field, v as i64))
            .collect();
        let out = self.slice.element(self.field, &coords);
        let p = self.field.characteristic();
        // odometer, last coordinate fastest
        self.done = true;
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < p {
                self.done = false;
                break;
            }
            *d = 0;
        }
        Some(out)
    }
}

fn window_slice(ring: &GradedMatrixRing, d: i64, w: &SearchWindow) -> (HomogeneousSlice, bool) {
    let full = HomogeneousSlice::new(ring, d);
    let kept: Vec<(usize, usize, i64)> = full
        .positions()
        .iter()
        .copied()
        .filter(|&(_, _, t)| w.admits(t))
        .collect();
    let truncated = kept.len() < full.dim();
    (HomogeneousSlice::from_positions(ring, d, kept), truncated)
}

pub fn enumerate_homogeneous(ring: &GradedMatrixRing, d: i64, w: &SearchWindow) -> HomogeneousIter {
    let (slice, _) = window_slice(ring, d, w);
    let dim = slice.dim();
    HomogeneousIter {
        slice,
        field: w.field(),
        digits: vec![0; dim],
        done: false,
    }
}

/// Whether the exponent window hides some position of the degree-δ component.
pub fn is_truncated(ring: &GradedMatrixRing, d: i64, w: &SearchWindow) -> bool {
    window_slice(ring, d, w).1
}

fn degree_of(x: &GMatrix) -> Result<Option<i64>> {
    match x.degree() {
        Degree::Zero => Ok(None),
        Degree::Homogeneous(d) => Ok(Some(d)),
        Degree::Inhomogeneous => Err(Error::Precondition(format!("`{x}` is not homogeneous"))),
    }
}

fn check_ring(ring: &GradedMatrixRing, x: &GMatrix, w: &SearchWindow) -> Result<()> {
    if x.ring() != ring {
        return Err(Error::Shape(format!("`{x}` is not in {ring}")));
    }
    if x.field() != w.field() {
        return Err(Error::FieldMismatch(w.field().to_string(), x.field().to_string()));
    }
    Ok(())
}

/// Homogeneous `s` with `Σ g_i s_i = y` for homogeneous `g_i` and `y`.
///
/// For a homogeneous target only the degree `deg y - deg g_i` component of
/// each `s_i` contributes, so a finite linear solve over the slices decides
/// membership exactly.
pub fn solve_right_multiples(gens: &[GMatrix], y: &GMatrix) -> Result<Option<Vec<GMatrix>>> {
    let Some(first) = gens.first() else {
        return Ok(y.is_zero().then(Vec::new));
    };
    let ring = first.ring();
    let field = first.field();
    let zeros = || gens.iter().map(|_| GMatrix::zero(ring, field)).collect::<Vec<_>>();
    let Some(dy) = degree_of(y)? else {
        return Ok(Some(zeros()));
    };
    let target = HomogeneousSlice::new(ring, dy);
    let rhs = target.coords(y).expect("y lies in its own component");
    let mut columns: Vec<Vec<Scalar>> = Vec::new();
    let mut layout: Vec<(usize, HomogeneousSlice)> = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        let Some(dg) = degree_of(g)? else { continue };
        let s = HomogeneousSlice::new(ring, dy - dg);
        for c in 0..s.dim() {
            let mut unit = vec![field.zero(); s.dim()];
            unit[c] = field.one();
            let img = g.mul(&s.element(field, &unit));
            columns.push(target.coords(&img).expect("degrees add"));
        }
        layout.push((k, s));
    }
    if target.dim() == 0 {
        return Ok(Some(zeros()));
    }
    if columns.is_empty() {
        return Ok(None);
    }
    let m = KMatrix::from_columns(field, target.dim(), &columns);
    let Some(sol) = m.solve_vector(&rhs) else {
        return Ok(None);
    };
    let mut out = zeros();
    let mut at = 0;
    for (k, s) in layout {
        out[k] = s.element(field, &sol[at..at + s.dim()]);
        at += s.dim();
    }
    Ok(Some(out))
}

/// Membership in the graded right ideal generated by homogeneous `gens`,
/// decided component by component.
pub fn in_graded_right_ideal(gens: &[GMatrix], y: &GMatrix) -> Result<bool> {
    for d in support_degrees(y) {
        if solve_right_multiples(gens, &y.component(d))?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Degrees of the nonzero homogeneous components, ascending.
pub fn support_degrees(y: &GMatrix) -> Vec<i64> {
    let ring = y.ring();
    let n = ring.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (t, _) in y.get(i, j).terms() {
                out.push(t + ring.shifts()[i] - ring.shifts()[j]);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Degree-0 idempotents in enumeration order, and whether the window saw
/// the whole degree-0 component.
pub struct IdempotentTable {
    pub idempotents: Vec<GMatrix>,
    pub complete: bool,
}

impl IdempotentTable {
    pub fn new(ring: &GradedMatrixRing, w: &SearchWindow) -> Self {
        IdempotentTable {
            idempotents: enumerate_homogeneous(ring, 0, w)
                .filter(GMatrix::is_idempotent)
                .collect(),
            complete: !is_truncated(ring, 0, w),
        }
    }

    fn exhausted<T>(&self) -> Outcome<T> {
        if self.complete {
            Outcome::NotFound
        } else {
            Outcome::Inconclusive("exponent window hides part of the degree-0 component".into())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CleanDecomposition {
    pub u: GMatrix,
    pub e: GMatrix,
}

pub fn brute_graded_clean(
    ring: &GradedMatrixRing,
    x: &GMatrix,
    w: &SearchWindow,
) -> Result<Outcome<CleanDecomposition>> {
    clean_with(&IdempotentTable::new(ring, w), ring, x, w)
}

/// First degree-0 idempotent `e` with `x - e` a homogeneous unit.
pub fn clean_with(
    table: &IdempotentTable,
    ring: &GradedMatrixRing,
    x: &GMatrix,
    w: &SearchWindow,
) -> Result<Outcome<CleanDecomposition>> {
    check_ring(ring, x, w)?;
    degree_of(x)?;
    for e in &table.idempotents {
        let u = x.sub(e);
        if u.is_graded_unit() {
            return Ok(Outcome::Found(CleanDecomposition { u, e: e.clone() }));
        }
    }
    Ok(table.exhausted())
}

pub fn brute_graded_exchange(
    ring: &GradedMatrixRing,
    x: &GMatrix,
    w: &SearchWindow,
) -> Result<Outcome<ExchangeWitness>> {
    exchange_with(&IdempotentTable::new(ring, w), ring, x, w)
}

/// First degree-0 idempotent `e` with `e ∈ xR` and `1 - e ∈ (1 - x)R`.
///
/// For `deg x = d ≠ 0` the components of `(1 - x)s = 1 - e` force
/// `s = Σ_j x^j (1 - e)` with `x^J (1 - e) = 0` for some `J`, and if such
/// `J` exists then `J ≤ n` works. For `d = 0` both memberships are degree-0 solves.
pub fn exchange_with(
    table: &IdempotentTable,
    ring: &GradedMatrixRing,
    x: &GMatrix,
    w: &SearchWindow,
) -> Result<Outcome<ExchangeWitness>> {
    check_ring(ring, x, w)?;
    let d = degree_of(x)?;
    let field = x.field();
    let one = GMatrix::identity(ring, field);
    let bound = ring.n();
    let powers = w.powers.unwrap_or(bound);
    let mut short = false;
    for e in &table.idempotents {
        let Some(r) = solve_right_multiples(std::slice::from_ref(x), e)?.map(|mut v| v.remove(0)) else {
            continue;
        };
        let rest = one.sub(e);
        let s = match d {
            None | Some(0) => solve_right_multiples(&[x.one_minus()], &rest)?.map(|mut v| v.remove(0)),
            Some(_) => {
                let lim = powers.min(bound);
                let mut s = GMatrix::zero(ring, field);
                let mut term = rest;
                for _ in 0..lim {
                    if term.is_zero() {
                        break;
                    }
                    s = s.add(&term);
                    term = x.mul(&term);
                }
                if term.is_zero() {
                    Some(s)
                } else {
                    short |= powers < bound;
                    None
                }
            }
        };
        if let Some(s) = s {
            let wit = ExchangeWitness { e: e.clone(), r, s };
            wit.verify(x)?;
            return Ok(Outcome::Found(wit));
        }
    }
    if short {
        return Ok(Outcome::Inconclusive(format!(
            "power bound {powers} is below the matrix size {bound}"
        )));
    }
    Ok(table.exhausted())
}

/// A degree-0 idempotent `e` with `e - x` in the graded right ideal generated
/// by `gens`, given `x - x²` in that ideal. An exhaustive miss contradicts
/// idempotent lifting and is reported as an invariant violation.
pub fn lift_idempotent_check(
    ring: &GradedMatrixRing,
    x: &GMatrix,
    gens: &[GMatrix],
    w: &SearchWindow,
) -> Result<Outcome<GMatrix>> {
    check_ring(ring, x, w)?;
    degree_of(x)?;
    for g in gens {
        check_ring(ring, g, w)?;
        degree_of(g)?;
    }
    if !in_graded_right_ideal(gens, &x.sub(&x.mul(x)))? {
        return Err(Error::Precondition("x - x^2 is not in the ideal".into()));
    }
    if x.is_idempotent() {
        return Ok(Outcome::Found(x.clone()));
    }
    let table = IdempotentTable::new(ring, w);
    for e in &table.idempotents {
        if in_graded_right_ideal(gens, &e.sub(x))? {
            return Ok(Outcome::Found(e.clone()));
        }
    }
    match table.exhausted::<GMatrix>() {
        Outcome::NotFound => Err(Error::InvariantViolation(format!(
            "no idempotent lifts `{x}` modulo the ideal generated by {} element(s)",
            gens.len()
        ))),
        other => Ok(other),
    }
}

/// Result of running a search on every element of the window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sweep {
    AllFound { checked: usize },
    /// The first element with an exact negative answer.
    Fails { x: GMatrix },
    Inconclusive { x: GMatrix, reason: String },
}

impl Sweep {
    pub fn all_found(&self) -> bool {
        matches!(self, Sweep::AllFound { .. })
    }
}

fn sweep<T>(
    ring: &GradedMatrixRing,
    w: &SearchWindow,
    mut search: impl FnMut(&IdempotentTable, &GMatrix) -> Result<Outcome<T>>,
) -> Result<Sweep> {
    let table = IdempotentTable::new(ring, w);
    let mut checked = 0;
    let mut pending: Option<(GMatrix, String)> = None;
    for d in w.degrees() {
        for x in enumerate_homogeneous(ring, d, w) {
            checked += 1;
            match search(&table, &x)? {
                Outcome::Found(_) => {}
                Outcome::NotFound => return Ok(Sweep::Fails { x }),
                Outcome::Inconclusive(reason) => {
                    pending.get_or_insert((x, reason));
                }
            }
        }
    }
    Ok(match pending {
        Some((x, reason)) => Sweep::Inconclusive { x, reason },
        None => Sweep::AllFound { checked },
    })
}

pub fn sweep_graded_clean(ring: &GradedMatrixRing, w: &SearchWindow) -> Result<Sweep> {
    sweep(ring, w, |t, x| clean_with(t, ring, x, w))
}

pub fn sweep_graded_exchange(ring: &GradedMatrixRing, w: &SearchWindow) -> Result<Sweep> {
    sweep(ring, w, |t, x| exchange_with(t, ring, x, w))
}

/// One oracle run, as emitted on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub ring: String,
    pub field: String,
    pub property: String,
    pub x: String,
    pub outcome: String,
    pub witness: Option<serde_json::Value>,
    pub reason: Option<String>,
}

impl Evidence {
    pub fn new<T: Serialize>(ring: &GradedMatrixRing, property: &str, x: &GMatrix, outcome: &Outcome<T>) -> Self {
        Evidence {
            ring: ring.to_string(),
            field: x.field().to_string(),
            property: property.to_string(),
            x: x.to_string(),
            outcome: outcome.label().to_string(),
            witness: outcome
                .found()
                .map(|t| serde_json::to_value(t).expect("witness serializes")),
            reason: match outcome {
                Outcome::Inconclusive(r) => Some(r.clone()),
                _ => None,
            },
        }
    }
}
