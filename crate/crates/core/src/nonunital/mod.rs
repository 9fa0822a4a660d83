//! Finite, possibly nonunital rings given by Cayley tables, together with the
//! ∗ / ∘ monoids, the standard unitization, and exhaustive property checks.

mod props;

pub use props::{
    circ, df_report, exchange_star_form_same_element, exchange_witness_general, is_clean, is_exchange, is_regular, is_sr1,
    is_unit_regular, star, star_unit_regular_check, star_units, unitization_mul,
    unitization_units, DfReport, ExchangeCheck, RingProperties, UnitizationElement,
    DEFAULT_WINDOW,
};

use std::collections::BTreeMap;

use crate::coeff::is_prime;
use crate::error::{Error, Result};

/// Element of a [`FiniteRing`]: an index into its carrier.
pub type Elem = usize;

/// Largest carrier whose axioms are verified exhaustively at construction.
const AXIOM_CHECK_LIMIT: usize = 271;

#[derive(Debug, Clone)]
pub struct FiniteRing {
    name: String,
    labels: Vec<String>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    zero: Elem,
    /// Homogeneous components by degree; a trivially graded ring has only degree 0.
    components: BTreeMap<i64, Vec<Elem>>,
}

impl FiniteRing {
    /// Tabulates the operations and checks the ring axioms on small carriers.
    pub fn from_ops(
        name: impl Into<String>,
        labels: Vec<String>,
        add: impl Fn(Elem, Elem) -> Elem,
        mul: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Precondition("empty carrier".into()));
        }
        let mut at = Vec::with_capacity(n * n);
        let mut mt = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                at.push(add(a, b));
                mt.push(mul(a, b));
            }
        }
        let zero = (0..n)
            .find(|&z| (0..n).all(|a| at[z * n + a] == a && at[a * n + z] == a))
            .ok_or_else(|| Error::InvariantViolation("no additive identity".into()))?;
        let neg = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| at[a * n + b] == zero)
                    .ok_or_else(|| Error::InvariantViolation("missing additive inverse".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let ring = FiniteRing {
            name: name.into(),
            labels,
            add: at,
            mul: mt,
            neg,
            zero,
            components: BTreeMap::from([(0, (0..n).collect())]),
        };
        if n <= AXIOM_CHECK_LIMIT {
            ring.check_axioms()?;
        }
        Ok(ring)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.size();
        let bad = |what: &str| Err(Error::InvariantViolation(format!("{}: {what}", self.name)));
        for a in 0..n {
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return bad("addition is not commutative");
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return bad("addition is not associative");
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return bad("multiplication is not associative");
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c))
                        || self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c))
                    {
                        return bad("distributivity fails");
                    }
                }
            }
        }
        Ok(())
    }

    /// F_p.
    pub fn prime_field(p: u32) -> Result<Self> {
        Self::matrix_support(p, 1, &[(0, 0)])
    }

    /// F_p with identically zero multiplication.
    pub fn zero_multiplication(p: u32) -> Result<Self> {
        check_prime(p)?;
        let pu = p as usize;
        Self::from_ops(
            format!("F{p} with zero product"),
            (0..pu).map(|v| v.to_string()).collect(),
            |a, b| (a + b) % pu,
            |_, _| 0,
        )
    }

    /// The subring of M_n(F_p) of matrices supported on the given positions.
    ///
    /// The position set must be closed under multiplication of matrix units.
    pub fn matrix_support(p: u32, n: usize, support: &[(usize, usize)]) -> Result<Self> {
        check_prime(p)?;
        let mut support: Vec<(usize, usize)> = support.to_vec();
        support.sort_unstable();
        support.dedup();
        if support.iter().any(|&(i, j)| i >= n || j >= n) {
            return Err(Error::Shape("support position out of range".into()));
        }
        for &(i, j) in &support {
            for &(k, l) in &support {
                if j == k && !support.contains(&(i, l)) {
                    return Err(Error::Precondition(format!(
                        "support not closed: e{i}{j} e{k}{l} = e{i}{l}"
                    )));
                }
            }
        }
        let k = support.len();
        let size = (p as usize)
            .checked_pow(k as u32)
            .filter(|&s| s <= 1 << 16)
            .ok_or_else(|| Error::Precondition("carrier too large".into()))?;
        let pu = p as usize;
        let decode = |mut x: usize| -> Vec<usize> {
            (0..k)
                .map(|_| {
                    let c = x % pu;
                    x /= pu;
                    c
                })
                .collect()
        };
        let encode = |cs: &[usize]| cs.iter().rev().fold(0, |acc, &c| acc * pu + c);
        let pos: BTreeMap<(usize, usize), usize> =
            support.iter().enumerate().map(|(idx, &ij)| (ij, idx)).collect();
        let labels = (0..size)
            .map(|x| {
                let cs = decode(x);
                let rows: Vec<String> = (0..n)
                    .map(|i| {
                        let row: Vec<String> = (0..n)
                            .map(|j| pos.get(&(i, j)).map_or(0, |&t| cs[t]).to_string())
                            .collect();
                        row.join(" ")
                    })
                    .collect();
                format!("[{}]", rows.join("; "))
            })
            .collect();
        let add = |a: Elem, b: Elem| {
            let (x, y) = (decode(a), decode(b));
            let s: Vec<usize> = x.iter().zip(&y).map(|(u, v)| (u + v) % pu).collect();
            encode(&s)
        };
        let mul = |a: Elem, b: Elem| {
            let (x, y) = (decode(a), decode(b));
            let mut out = vec![0usize; k];
            for (t1, &(i, j)) in support.iter().enumerate() {
                for (t2, &(j2, l)) in support.iter().enumerate() {
                    if j == j2 {
                        let t = pos[&(i, l)];
                        out[t] = (out[t] + x[t1] * y[t2]) % pu;
                    }
                }
            }
            encode(&out)
        };
        let name = if n == 1 {
            format!("F{p}")
        } else {
            format!("M{n}(F{p}) on {support:?}")
        };
        Self::from_ops(name, labels, add, mul)
    }

    /// M_n(F_p).
    pub fn full_matrices(p: u32, n: usize) -> Result<Self> {
        let support: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        Self::matrix_support(p, n, &support)
    }

    /// Strictly upper triangular n×n matrices over F_p.
    pub fn strictly_upper(p: u32, n: usize) -> Result<Self> {
        let support: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Self::matrix_support(p, n, &support)
    }

    /// Matrices over F_p supported on the first row.
    pub fn first_row(p: u32, n: usize) -> Result<Self> {
        let support: Vec<(usize, usize)> = (0..n).map(|j| (0, j)).collect();
        Self::matrix_support(p, n, &support)
    }

    /// A matrix-support ring graded by shifts: `e_ij` has degree `γi − γj`.
    pub fn graded_matrix_support(
        p: u32,
        shifts: &[i64],
        support: &[(usize, usize)],
    ) -> Result<Self> {
        let n = shifts.len();
        let mut ring = Self::matrix_support(p, n, support)?;
        let mut sorted: Vec<(usize, usize)> = support.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let pu = p as usize;
        let mut components: BTreeMap<i64, Vec<Elem>> = BTreeMap::new();
        for &(i, j) in &sorted {
            components.entry(shifts[i] - shifts[j]).or_default();
        }
        components.entry(0).or_default();
        for x in 0..ring.size() {
            let mut c = x;
            let mut degrees: Vec<i64> = Vec::new();
            for &(i, j) in &sorted {
                if c % pu != 0 {
                    degrees.push(shifts[i] - shifts[j]);
                }
                c /= pu;
            }
            degrees.sort_unstable();
            degrees.dedup();
            match degrees.as_slice() {
                [] => {
                    for comp in components.values_mut() {
                        comp.push(x);
                    }
                }
                [d] => components.get_mut(d).expect("degree registered").push(x),
                _ => {}
            }
        }
        let s: Vec<String> = shifts.iter().map(i64::to_string).collect();
        ring.name = format!("{} graded by ({})", ring.name, s.join(","));
        ring.components = components;
        Ok(ring)
    }

    /// The corner `eRe` for an idempotent `e`, graded when `e` has degree 0.
    pub fn corner(&self, e: Elem) -> Result<Self> {
        if self.mul(e, e) != e {
            return Err(Error::Contract("corner requires an idempotent".into()));
        }
        let mut members: Vec<Elem> = (0..self.size())
            .map(|x| self.mul(self.mul(e, x), e))
            .collect();
        members.sort_unstable();
        members.dedup();
        let index: BTreeMap<Elem, usize> = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let labels = members.iter().map(|&x| self.labels[x].clone()).collect();
        let mut ring = Self::from_ops(
            format!("{} cornered by {}", self.name, self.labels[e]),
            labels,
            |a, b| index[&self.add(members[a], members[b])],
            |a, b| index[&self.mul(members[a], members[b])],
        )?;
        if self.is_homogeneous_of(e, 0) {
            ring.components = self
                .components
                .iter()
                .map(|(&d, comp)| {
                    let c: Vec<Elem> = comp.iter().filter_map(|x| index.get(x).copied()).collect();
                    (d, c)
                })
                .collect();
        }
        Ok(ring)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size()
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x]
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.size() + b]
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.size() + b]
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a]
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// `k·x` for an integer `k`.
    pub fn times(&self, k: i64, x: Elem) -> Elem {
        let base = if k < 0 { self.neg(x) } else { x };
        (0..k.unsigned_abs()).fold(self.zero, |acc, _| self.add(acc, base))
    }

    pub fn identity(&self) -> Option<Elem> {
        self.elements()
            .find(|&u| self.elements().all(|x| self.mul(u, x) == x && self.mul(x, u) == x))
    }

    pub fn idempotents(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.mul(x, x) == x).collect()
    }

    /// Degrees with a homogeneous component, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        self.components.keys().copied().collect()
    }

    pub fn component(&self, d: i64) -> &[Elem] {
        self.components.get(&d).map_or(&[], Vec::as_slice)
    }

    pub fn is_homogeneous_of(&self, x: Elem, d: i64) -> bool {
        self.component(d).contains(&x)
    }

    /// `{x r : r ∈ R}` as a membership mask.
    pub fn right_ideal_of(&self, x: Elem) -> Vec<bool> {
        let mut mask = vec![false; self.size()];
        for r in self.elements() {
            mask[self.mul(x, r)] = true;
        }
        mask
    }
}

/// The desk-scale instances used by the audits: fields, matrix rings,
/// nilpotent and one-sided-unital subrings, a zero-product ring, and graded
/// matrix rings. Carriers have at most 81 elements.
pub fn catalog() -> Vec<FiniteRing> {
    let build = || -> Result<Vec<FiniteRing>> {
        Ok(vec![
            FiniteRing::prime_field(2)?,
            FiniteRing::prime_field(3)?,
            FiniteRing::prime_field(5)?,
            FiniteRing::zero_multiplication(2)?,
            FiniteRing::zero_multiplication(3)?,
            FiniteRing::full_matrices(2, 2)?,
            FiniteRing::full_matrices(3, 2)?,
            FiniteRing::strictly_upper(2, 2)?,
            FiniteRing::strictly_upper(3, 2)?,
            FiniteRing::strictly_upper(2, 3)?,
            FiniteRing::first_row(2, 2)?,
            FiniteRing::first_row(3, 2)?,
            FiniteRing::matrix_support(2, 2, &[(0, 0), (0, 1), (1, 1)])?,
            FiniteRing::graded_matrix_support(2, &[0, 1], &[(0, 0), (0, 1), (1, 0), (1, 1)])?,
            FiniteRing::graded_matrix_support(3, &[0, 1], &[(0, 0), (0, 1), (1, 0), (1, 1)])?,
            FiniteRing::graded_matrix_support(2, &[0, 1], &[(0, 0), (0, 1), (1, 1)])?,
            FiniteRing::graded_matrix_support(2, &[0, 1, 2], &[(0, 1), (0, 2), (1, 2)])?,
            FiniteRing::graded_matrix_support(3, &[0, 1], &[(0, 0), (0, 1)])?,
        ])
    };
    build().expect("catalog rings are valid")
}

fn check_prime(p: u32) -> Result<()> {
    if is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::NotPrime(p as u64))
    }
}
