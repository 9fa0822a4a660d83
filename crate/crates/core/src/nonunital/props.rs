use serde::Serialize;

use super::{Elem, FiniteRing};
use crate::error::{Error, Result};

/// Default half-width of the integer window for unitization components.
pub const DEFAULT_WINDOW: i64 = 3;

/// `x ∗ y = x + y + xy`.
pub fn star(r: &FiniteRing, x: Elem, y: Elem) -> Elem {
    r.add(r.add(x, y), r.mul(x, y))
}

/// `x ∘ y = x + y − xy`.
pub fn circ(r: &FiniteRing, x: Elem, y: Elem) -> Elem {
    r.sub(r.add(x, y), r.mul(x, y))
}

/// `(x, k)` in the standard unitization `R ⊕ Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct UnitizationElement {
    pub x: Elem,
    pub k: i64,
}

impl UnitizationElement {
    pub fn one(r: &FiniteRing) -> Self {
        UnitizationElement { x: r.zero(), k: 1 }
    }
}

/// `(x, k)(y, l) = (xy + l x + k y, k l)`.
pub fn unitization_mul(r: &FiniteRing, a: UnitizationElement, b: UnitizationElement) -> UnitizationElement {
    let x = r.add(r.add(r.mul(a.x, b.x), r.times(b.k, a.x)), r.times(a.k, b.x));
    UnitizationElement { x, k: a.k * b.k }
}

/// The group of units of `(R, ∗)`, ascending.
pub fn star_units(r: &FiniteRing) -> Vec<Elem> {
    let z = r.zero();
    r.elements()
        .filter(|&x| r.elements().any(|y| star(r, x, y) == z && star(r, y, x) == z))
        .collect()
}

fn window_elements(r: &FiniteRing, window: i64) -> Vec<UnitizationElement> {
    (-window..=window)
        .flat_map(|k| r.elements().map(move |x| UnitizationElement { x, k }))
        .collect()
}

/// Invertible elements of the unitization with integer part in `-window..=window`.
pub fn unitization_units(r: &FiniteRing, window: i64) -> Vec<UnitizationElement> {
    let one = UnitizationElement::one(r);
    let all = window_elements(r, window);
    all.iter()
        .copied()
        .filter(|&a| {
            all.iter()
                .any(|&b| unitization_mul(r, a, b) == one && unitization_mul(r, b, a) == one)
        })
        .collect()
}

/// Direct finiteness read three ways: in `(R, ∗)`, in `(R, ∘)`, and in the unitization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DfReport {
    pub star: bool,
    pub circ: bool,
    pub unitization: bool,
    pub window: i64,
}

impl DfReport {
    pub fn holds(&self) -> bool {
        self.star
    }
}

fn monoid_df(r: &FiniteRing, op: impl Fn(Elem, Elem) -> Elem) -> bool {
    let z = r.zero();
    r.elements()
        .all(|x| r.elements().all(|y| op(x, y) != z || op(y, x) == z))
}

/// Errors if the three readings disagree, or if a one-sided inverse pair
/// in the unitization has integer part other than ±1.
pub fn df_report(r: &FiniteRing, window: i64) -> Result<DfReport> {
    if window < 1 {
        return Err(Error::Precondition("unitization window must contain ±1".into()));
    }
    let s = monoid_df(r, |x, y| star(r, x, y));
    let c = monoid_df(r, |x, y| circ(r, x, y));
    let one = UnitizationElement::one(r);
    let all = window_elements(r, window);
    let mut u = true;
    for &a in &all {
        for &b in &all {
            if unitization_mul(r, a, b) != one {
                continue;
            }
            if a.k.abs() != 1 {
                return Err(Error::InvariantViolation(format!(
                    "one-sided unit with integer part {}",
                    a.k
                )));
            }
            if unitization_mul(r, b, a) != one {
                u = false;
            }
        }
    }
    let report = DfReport {
        star: s,
        circ: c,
        unitization: u,
        window,
    };
    if s != c || s != u {
        return Err(Error::InvariantViolation(format!(
            "direct finiteness readings disagree on {}: {report:?}",
            r.name()
        )));
    }
    Ok(report)
}

/// The admissible idempotents of degree 0 for `x` under each equivalent
/// exchange condition, plus the least one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExchangeCheck {
    pub witness: Option<Elem>,
    /// `e ∈ xR` and `e ∈ x∘R`.
    pub circ_form: Vec<Elem>,
    /// `e ∈ −x'R` and `−e ∈ x'∗R` for `x' = −x`.
    pub star_form: Vec<Elem>,
    /// `e ∈ xR` and `(−e, 1) ∈ (−x, 1)R^u`.
    pub unitization_form: Vec<Elem>,
}

/// Least idempotent `e` of degree 0 with `e ∈ xR` and `e ∈ x∘R`, cross-checked
/// against the ∗-form and the unitization form; any disagreement is an error.
pub fn exchange_witness_general(r: &FiniteRing, x: Elem) -> Result<ExchangeCheck> {
    if !r.degrees().iter().any(|&d| r.is_homogeneous_of(x, d)) {
        return Err(Error::Precondition(format!(
            "`{}` is not homogeneous",
            r.label(x)
        )));
    }
    let n = r.size();
    let x_r = r.right_ideal_of(x);
    let mut x_circ = vec![false; n];
    for y in r.elements() {
        x_circ[circ(r, x, y)] = true;
    }
    let xp = r.neg(x);
    let neg_xp_r = r.right_ideal_of(r.neg(xp));
    let mut xp_star = vec![false; n];
    for y in r.elements() {
        xp_star[star(r, xp, y)] = true;
    }
    // (−x, 1)(y, 1) = (y − x − xy, 1); any k ≠ 1 cannot reach integer part 1
    let mut unit_reach = vec![false; n];
    let minus_x = UnitizationElement { x: r.neg(x), k: 1 };
    for y in r.elements() {
        let p = unitization_mul(r, minus_x, UnitizationElement { x: y, k: 1 });
        unit_reach[p.x] = true;
    }
    let idem: Vec<Elem> = r
        .component(0)
        .iter()
        .copied()
        .filter(|&e| r.mul(e, e) == e)
        .collect();
    let pick = |pred: &dyn Fn(Elem) -> bool| -> Vec<Elem> {
        let mut v: Vec<Elem> = idem.iter().copied().filter(|&e| pred(e)).collect();
        v.sort_unstable();
        v
    };
    let circ_form = pick(&|e| x_r[e] && x_circ[e]);
    let star_form = pick(&|e| neg_xp_r[e] && xp_star[r.neg(e)]);
    let unitization_form = pick(&|e| x_r[e] && unit_reach[r.neg(e)]);
    if circ_form != star_form || circ_form != unitization_form {
        return Err(Error::InvariantViolation(format!(
            "exchange conditions disagree for `{}` in {}",
            r.label(x),
            r.name()
        )));
    }
    Ok(ExchangeCheck {
        witness: circ_form.first().copied(),
        circ_form,
        star_form,
        unitization_form,
    })
}

/// The ∗-form read with the same `x`: `e ∈ −xR` and `e ∈ x∗R`. This is
/// not equivalent to the ∘-form element by element, nor ring-wide (F_3 fails it).
pub fn exchange_star_form_same_element(r: &FiniteRing, x: Elem) -> Option<Elem> {
    let neg_x_r = r.right_ideal_of(r.neg(x));
    let mut x_star = vec![false; r.size()];
    for y in r.elements() {
        x_star[star(r, x, y)] = true;
    }
    r.component(0)
        .iter()
        .copied()
        .filter(|&e| r.mul(e, e) == e && neg_x_r[e] && x_star[e])
        .min()
}

/// Least `u ∈ U(∗)` with `x = x u x + x²`.
pub fn star_unit_regular_check(r: &FiniteRing, x: Elem) -> Option<Elem> {
    let x2 = r.mul(x, x);
    star_units(r)
        .into_iter()
        .find(|&u| r.add(r.mul(r.mul(x, u), x), x2) == x)
}

pub fn is_unit_regular(r: &FiniteRing) -> bool {
    let units = star_units(r);
    r.elements().all(|x| {
        let x2 = r.mul(x, x);
        units.iter().any(|&u| r.add(r.mul(r.mul(x, u), x), x2) == x)
    })
}

pub fn is_regular(r: &FiniteRing) -> bool {
    r.elements()
        .all(|x| r.elements().any(|y| r.mul(r.mul(x, y), x) == x))
}

/// Stable range one in the ∗-form: whenever `0 ∈ x∗R + yR` there is `z`
/// with `0 ∈ (x + yz)∗R`.
pub fn is_sr1(r: &FiniteRing) -> bool {
    let z0 = r.zero();
    let n = r.size();
    // w with 0 ∈ w∗R
    let good: Vec<bool> = r
        .elements()
        .map(|w| r.elements().any(|u| star(r, w, u) == z0))
        .collect();
    let ideals: Vec<Vec<bool>> = r.elements().map(|y| r.right_ideal_of(y)).collect();
    for x in 0..n {
        let xs: Vec<Elem> = r.elements().map(|u| star(r, x, u)).collect();
        for y in 0..n {
            let hyp = xs.iter().any(|&s| ideals[y][r.neg(s)]);
            if hyp && !r.elements().any(|z| good[r.add(x, r.mul(y, z))]) {
                return false;
            }
        }
    }
    true
}

/// Every element is an idempotent plus a unit of `(R, ∗)`.
pub fn is_clean(r: &FiniteRing) -> bool {
    let units = star_units(r);
    let idem = r.idempotents();
    r.elements()
        .all(|x| idem.iter().any(|&f| units.contains(&r.sub(x, f))))
}

/// Every element has an idempotent `e ∈ xR` with `e ∈ x∘R`.
pub fn is_exchange(r: &FiniteRing) -> bool {
    let idem = r.idempotents();
    r.elements().all(|x| {
        let xr = r.right_ideal_of(x);
        idem.iter()
            .any(|&e| xr[e] && r.elements().any(|y| circ(r, x, y) == e))
    })
}

/// All nonunital cancellation properties of a finite ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RingProperties {
    pub reg: bool,
    pub ur: bool,
    pub sr1: bool,
    pub df: bool,
    pub cln: bool,
    pub exch: bool,
}

impl RingProperties {
    pub fn compute(r: &FiniteRing) -> Result<Self> {
        Ok(RingProperties {
            reg: is_regular(r),
            ur: is_unit_regular(r),
            sr1: is_sr1(r),
            df: df_report(r, DEFAULT_WINDOW)?.holds(),
            cln: is_clean(r),
            exch: is_exchange(r),
        })
    }

    /// Arrows among the nonunital properties that fail on this ring.
    pub fn implication_violations(&self) -> Vec<&'static str> {
        let arrows: [(&str, bool, bool); 5] = [
            ("Reg+sr=1 => UR", self.reg && self.sr1, self.ur),
            ("Reg+sr=1 => Cln", self.reg && self.sr1, self.cln),
            ("sr=1 => DF", self.sr1, self.df),
            ("Cln => Exch", self.cln, self.exch),
            ("UR => Reg", self.ur, self.reg),
        ];
        arrows
            .iter()
            .filter(|(_, a, b)| *a && !*b)
            .map(|(name, _, _)| *name)
            .collect()
    }
}
