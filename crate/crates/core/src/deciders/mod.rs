//! Graph conditions paired with ring properties of L_K(E), plus the finite
//! no-exit decomposition into graded matrix rings.

mod decompose;

pub use decompose::{
    cycle_summand, sink_summand, structural_decomposition, DecompositionDescriptor, Summand,
};

use std::fmt;
use std::ops::RangeInclusive;

use serde::ser::{SerializeMap, SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gmatrix::{graded_exchange_ring, is_graded_clean_ring, Base};
use crate::graph::{
    check_edl, graph_shape, has_condition_k, is_acyclic, is_acyclic_or_isolated_cycles, is_no_exit,
    sinks_isolated, Graph, GraphShape,
};
use crate::lpa::component_dimension_no_exit;
use crate::verdict::{Truth, Verdict};

pub const REPORT_SCHEMA: &str = "gradcan.report/v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Reg,
    Ur,
    Sr1,
    Df,
    Cln,
    Exch,
    RegGr,
    UrGr,
    Sr1Gr,
    DfGr,
    ClnGr,
    ExchGr,
    UrEps,
    Sr1Eps,
    DfEps,
    ClnEps,
    ExchEps,
}

impl Property {
    pub const ALL: [Property; 17] = [
        Property::Reg,
        Property::Ur,
        Property::Sr1,
        Property::Df,
        Property::Cln,
        Property::Exch,
        Property::RegGr,
        Property::UrGr,
        Property::Sr1Gr,
        Property::DfGr,
        Property::ClnGr,
        Property::ExchGr,
        Property::UrEps,
        Property::Sr1Eps,
        Property::DfEps,
        Property::ClnEps,
        Property::ExchEps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Reg => "Reg",
            Property::Ur => "UR",
            Property::Sr1 => "sr=1",
            Property::Df => "DF",
            Property::Cln => "Cln",
            Property::Exch => "Exch",
            Property::RegGr => "Reg_gr",
            Property::UrGr => "UR_gr",
            Property::Sr1Gr => "sr=1_gr",
            Property::DfGr => "DF_gr",
            Property::ClnGr => "Cln_gr",
            Property::ExchGr => "Exch_gr",
            Property::UrEps => "UR_eps",
            Property::Sr1Eps => "sr=1_eps",
            Property::DfEps => "DF_eps",
            Property::ClnEps => "Cln_eps",
            Property::ExchEps => "Exch_eps",
        }
    }

    /// The only properties allowed to come out `Unknown`.
    pub fn may_be_unknown(self) -> bool {
        matches!(self, Property::Cln | Property::ExchGr)
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `premises ⇒ conclusion`, premises read as a conjunction.
#[derive(Debug, Clone, Copy)]
pub struct Arrow {
    pub premises: &'static [Property],
    pub conclusion: Property,
}

use Property as P;

/// Implications among ungraded properties of any ring.
pub const RING_ARROWS: &[Arrow] = &[
    Arrow { premises: &[P::Reg, P::Sr1], conclusion: P::Ur },
    Arrow { premises: &[P::Reg, P::Sr1], conclusion: P::Cln },
    Arrow { premises: &[P::Sr1], conclusion: P::Df },
    Arrow { premises: &[P::Cln], conclusion: P::Exch },
    Arrow { premises: &[P::Ur], conclusion: P::Reg },
];

/// Implications among graded and ε-properties of a unital Leavitt path algebra.
pub const GRADED_ARROWS: &[Arrow] = &[
    Arrow { premises: &[P::UrGr], conclusion: P::Sr1Gr },
    Arrow { premises: &[P::Sr1Gr], conclusion: P::UrGr },
    Arrow { premises: &[P::UrGr], conclusion: P::DfGr },
    Arrow { premises: &[P::DfGr], conclusion: P::RegGr },
    Arrow { premises: &[P::ClnGr], conclusion: P::UrGr },
    Arrow { premises: &[P::ClnGr], conclusion: P::ExchGr },
    Arrow { premises: &[P::ExchGr], conclusion: P::DfGr },
    Arrow { premises: &[P::ExchGr], conclusion: P::RegGr },
    Arrow { premises: &[P::UrGr], conclusion: P::UrEps },
    Arrow { premises: &[P::Sr1Gr], conclusion: P::Sr1Eps },
    Arrow { premises: &[P::DfGr], conclusion: P::DfEps },
    Arrow { premises: &[P::ClnGr], conclusion: P::ClnEps },
    Arrow { premises: &[P::ExchGr], conclusion: P::ExchEps },
];

impl Arrow {
    /// A Yes premise forces a Yes conclusion; a No conclusion forces a No premise.
    pub fn holds(&self, get: impl Fn(Property) -> Truth) -> bool {
        let prem: Vec<Truth> = self.premises.iter().map(|&p| get(p)).collect();
        let all_yes = prem.iter().all(|&t| t == Truth::Yes);
        let some_no = prem.contains(&Truth::No);
        let c = get(self.conclusion);
        !(all_yes && c != Truth::Yes) && !(c == Truth::No && !some_no)
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.premises.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, " => {}", self.conclusion)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeSummary {
    pub name: String,
    pub source: String,
    pub range: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSummary>,
}

impl GraphSummary {
    pub fn of(g: &Graph) -> Self {
        GraphSummary {
            vertices: g.vertices().map(|v| g.vertex_name(v).to_string()).collect(),
            edges: g
                .edges()
                .map(|e| EdgeSummary {
                    name: g.edge_name(e).to_string(),
                    source: g.vertex_name(g.source(e)).to_string(),
                    range: g.vertex_name(g.range(e)).to_string(),
                })
                .collect(),
        }
    }
}

/// Verdicts for every property of L_K(E). Only built through a constructor
/// that rejects reports breaking an implication arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    graph: GraphSummary,
    unital: bool,
    verdicts: Vec<Verdict>,
    decomposition: Option<DecompositionDescriptor>,
    notes: Vec<String>,
}

impl PropertyReport {
    /// `verdicts` in `Property::ALL` order.
    pub fn new(
        graph: GraphSummary,
        unital: bool,
        verdicts: Vec<Verdict>,
        decomposition: Option<DecompositionDescriptor>,
        notes: Vec<String>,
    ) -> Result<Self> {
        if verdicts.len() != Property::ALL.len() {
            return Err(Error::Shape(format!(
                "expected {} verdicts, got {}",
                Property::ALL.len(),
                verdicts.len()
            )));
        }
        let report = PropertyReport {
            graph,
            unital,
            verdicts,
            decomposition,
            notes,
        };
        for p in Property::ALL {
            if report.truth(p) == Truth::Unknown && !p.may_be_unknown() {
                return Err(Error::InvariantViolation(format!("{p} cannot be Unknown")));
            }
        }
        let broken = report.implication_violations();
        if !broken.is_empty() {
            return Err(Error::InvariantViolation(format!(
                "report breaks {}",
                broken.join(", ")
            )));
        }
        Ok(report)
    }

    pub fn get(&self, p: Property) -> &Verdict {
        let i = Property::ALL.iter().position(|&q| q == p).expect("listed");
        &self.verdicts[i]
    }

    pub fn truth(&self, p: Property) -> Truth {
        self.get(p).verdict
    }

    pub fn iter(&self) -> impl Iterator<Item = (Property, &Verdict)> + '_ {
        Property::ALL.iter().copied().zip(self.verdicts.iter())
    }

    pub fn graph(&self) -> &GraphSummary {
        &self.graph
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    pub fn decomposition(&self) -> Option<&DecompositionDescriptor> {
        self.decomposition.as_ref()
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn has_unknown(&self) -> bool {
        self.verdicts.iter().any(|v| v.verdict == Truth::Unknown)
    }

    /// Every arrow of both diagrams that this report breaks.
    pub fn implication_violations(&self) -> Vec<String> {
        RING_ARROWS
            .iter()
            .chain(GRADED_ARROWS)
            .filter(|a| !a.holds(|p| self.truth(p)))
            .map(|a| a.to_string())
            .collect()
    }

    /// Pretty JSON with a trailing newline; key order is fixed.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

struct Properties<'a>(&'a PropertyReport);

impl Serialize for Properties<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(Property::ALL.len()))?;
        for (p, v) in self.0.iter() {
            map.serialize_entry(p.name(), v)?;
        }
        map.end()
    }
}

impl Serialize for PropertyReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PropertyReport", 6)?;
        st.serialize_field("schema", REPORT_SCHEMA)?;
        st.serialize_field("graph", &self.graph)?;
        st.serialize_field("unital", &self.unital)?;
        st.serialize_field("properties", &Properties(self))?;
        st.serialize_field("decomposition", &self.decomposition)?;
        st.serialize_field("notes", &self.notes)?;
        st.end()
    }
}

/// Verdict for every property of L_K(E) from the graph conditions that characterize it.
pub fn analyze_graph(g: &Graph) -> Result<PropertyReport> {
    let acyclic = is_acyclic(g);
    let no_exit = is_no_exit(g);
    let cond_k = has_condition_k(g);
    let yes_no = |b: bool, key: &str| Verdict::new(Truth::from_bool(b), key);
    let mut notes = vec![
        "graphs are finite, so E is row-finite and L_K(E) is unital".to_string(),
    ];

    let reg = yes_no(acyclic, "lpa.regular_iff_acyclic");
    let ur = yes_no(acyclic, "lpa.unit_regular_iff_acyclic");
    let sr1 = yes_no(acyclic, "lpa.stable_range_one_iff_acyclic");
    let df = yes_no(no_exit, "lpa.directly_finite_iff_no_exit");
    let cln = if acyclic {
        Verdict::new(Truth::Yes, "lpa.clean_from_acyclic")
    } else if !cond_k {
        Verdict::new(Truth::No, "lpa.clean_needs_condition_k")
    } else {
        notes.push("Cln: cycles with Condition (K); clean Leavitt path algebras are not characterized here".into());
        Verdict::new(Truth::Unknown, "lpa.clean_open")
    };
    let exch = yes_no(cond_k, "lpa.exchange_iff_condition_k");

    let reg_gr = Verdict::new(Truth::Yes, "lpa.graded_regular_always");
    let df_gr = yes_no(no_exit, "lpa.graded_directly_finite_iff_no_exit");
    let shape = graph_shape(g);
    let cln_gr = yes_no(
        matches!(shape, GraphShape::DisjointVertices | GraphShape::SingleLoop),
        "lpa.graded_clean_iff_vertices_or_loop",
    );
    let ur_cond = no_exit && sinks_isolated(g) && check_edl(g).unwrap_or(false);
    let ur_gr = yes_no(ur_cond, "lpa.graded_unit_regular_iff_edl");
    let sr1_gr = yes_no(ur_cond, "lpa.graded_stable_range_one_iff_edl");

    let decomposition = if no_exit {
        Some(structural_decomposition(g)?)
    } else {
        None
    };
    let exch_gr = if !no_exit {
        Verdict::new(Truth::No, "lpa.graded_exchange_needs_no_exit")
    } else if is_acyclic_or_isolated_cycles(g) {
        Verdict::new(Truth::Yes, "lpa.graded_exchange_from_acyclic_and_cycles")
    } else {
        let open: Vec<String> = decomposition
            .iter()
            .flat_map(|d| &d.summands)
            .filter(|s| !graded_exchange_ring(&s.ring).is_yes())
            .map(|s| s.ring.to_string())
            .collect();
        notes.push(format!(
            "Exch_gr: no-exit but not a disjoint union of acyclic graphs and single cycles; summands with a repeated residue: {}",
            open.join(", ")
        ));
        Verdict::new(Truth::Unknown, "lpa.graded_exchange_open")
    };

    let eps = |key: &str| Verdict::new(Truth::Yes, key);
    let verdicts = vec![
        reg,
        ur,
        sr1,
        df,
        cln,
        exch,
        reg_gr,
        ur_gr,
        sr1_gr,
        df_gr,
        cln_gr,
        exch_gr,
        eps("lpa.epsilon_unit_regular_always"),
        eps("lpa.epsilon_stable_range_one_always"),
        eps("lpa.epsilon_directly_finite_always"),
        eps("lpa.epsilon_clean_always"),
        eps("lpa.epsilon_exchange_always"),
    ];
    PropertyReport::new(GraphSummary::of(g), true, verdicts, decomposition, notes)
}

/// Checks the graph-level verdicts against the matrix-ring deciders applied to
/// the decomposition, and LPA basis counts against summand dimensions.
pub fn decomposition_cross_check(g: &Graph, degrees: RangeInclusive<i64>) -> Result<()> {
    let report = analyze_graph(g)?;
    let dec = structural_decomposition(g)?;
    let fail = |what: String| Err(Error::InvariantViolation(what));

    let all_clean = dec
        .summands
        .iter()
        .all(|s| is_graded_clean_ring(&s.ring).is_yes());
    let laurent = dec
        .summands
        .iter()
        .any(|s| matches!(s.ring.base(), Base::Laurent { .. }));
    let clean = all_clean && !(dec.summands.len() > 1 && laurent);
    if Truth::from_bool(clean) != report.truth(Property::ClnGr) {
        return fail(format!("Cln_gr disagrees with the summands of {g:?}"));
    }
    let all_exch = dec
        .summands
        .iter()
        .all(|s| graded_exchange_ring(&s.ring).is_yes());
    if all_exch != (report.truth(Property::ExchGr) == Truth::Yes) {
        return fail(format!("Exch_gr disagrees with the summands of {g:?}"));
    }
    for d in degrees {
        let lpa = component_dimension_no_exit(g, d);
        let mat = dec.component_dimension(d);
        if lpa != mat {
            return fail(format!(
                "degree {d}: {lpa} basis monomials, {mat} matrix positions"
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests;
