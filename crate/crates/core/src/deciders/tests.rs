use super::*;
use crate::gmatrix::GradedMatrixRing;
use crate::graph::examples::*;
use crate::graph::{enumerate_cycles, Cycle};
use proptest::prelude::*;

fn truths(r: &PropertyReport, ps: &[Property]) -> Vec<Truth> {
    ps.iter().map(|&p| r.truth(p)).collect()
}

fn ring(base: Base, shifts: &[i64]) -> GradedMatrixRing {
    GradedMatrixRing::new(base, shifts.to_vec()).unwrap()
}

#[test]
fn single_loop_report() {
    let r = analyze_graph(&single_loop()).unwrap();
    use Truth::*;
    assert_eq!(
        truths(&r, &[P::ClnGr, P::UrGr, P::ExchGr, P::Df, P::Exch, P::Cln]),
        [Yes, Yes, Yes, Yes, No, No]
    );
    assert_eq!(r.get(P::Exch).citation, "lpa.exchange_iff_condition_k");
}

#[test]
fn rose_report() {
    let r = analyze_graph(&rose()).unwrap();
    use Truth::*;
    assert_eq!(
        truths(&r, &[P::Exch, P::ExchGr, P::Df, P::RegGr, P::Cln, P::DfGr]),
        [Yes, No, No, Yes, Unknown, No]
    );
    assert!(r.decomposition().is_none());
}

#[test]
fn isolated_vertices_report() {
    let r = analyze_graph(&isolated(2)).unwrap();
    assert!(r.iter().all(|(_, v)| v.verdict == Truth::Yes));
    assert!(!r.has_unknown());
}

#[test]
fn cycle_with_entrance_report() {
    let r = analyze_graph(&two_cycle_entrance()).unwrap();
    use Truth::*;
    assert_eq!(
        truths(&r, &[P::UrGr, P::Sr1Gr, P::ExchGr, P::DfGr, P::ClnGr]),
        [No, No, Unknown, Yes, No]
    );
    assert!(r.notes().iter().any(|n| n.contains("K[x^2,x^-2]")));
}

#[test]
fn single_edge_and_two_cycle() {
    use Truth::*;
    let e = analyze_graph(&single_edge()).unwrap();
    assert_eq!(
        truths(&e, &[P::Reg, P::Ur, P::Cln, P::ClnGr, P::UrGr, P::ExchGr]),
        [Yes, Yes, Yes, No, No, Yes]
    );
    let c = analyze_graph(&two_cycle()).unwrap();
    assert_eq!(
        truths(&c, &[P::Reg, P::Exch, P::ClnGr, P::UrGr, P::ExchGr]),
        [No, No, No, Yes, Yes]
    );
}

#[test]
fn decompositions_of_named_graphs() {
    let norm = |g: &Graph| structural_decomposition(g).unwrap().normalized();
    assert_eq!(norm(&single_loop()), [ring(Base::Laurent { m: 1 }, &[0])]);
    assert_eq!(norm(&two_cycle()), [ring(Base::Laurent { m: 2 }, &[0, 1])]);
    assert_eq!(norm(&single_edge()), [ring(Base::Field, &[0, 1])]);
    assert_eq!(norm(&isolated(3)).len(), 3);
    assert!(matches!(
        structural_decomposition(&rose()),
        Err(Error::Contract(_))
    ));
}

#[test]
fn decomposition_json_shape() {
    let d = structural_decomposition(&two_cycle_entrance()).unwrap();
    let v = serde_json::to_value(&d).unwrap();
    assert_eq!(
        v,
        serde_json::json!([
            {"base": "laurent", "m": 2, "n": 3, "shifts": [0, 1, 1], "anchor": "v", "cycle": "[a b]"}
        ])
    );
    let e = serde_json::to_value(structural_decomposition(&single_edge()).unwrap()).unwrap();
    assert_eq!(e[0]["base"], "k");
    assert!(e[0]["m"].is_null());
}

#[test]
fn report_json_keeps_property_order() {
    let json = analyze_graph(&single_loop()).unwrap().to_json();
    let keys: Vec<usize> = Property::ALL
        .iter()
        .map(|p| json.find(&format!("\"{}\":", p.name())).unwrap())
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    assert!(json.starts_with("{\n  \"schema\": \"gradcan.report/v1\""));
    assert!(json.ends_with("}\n"));
}

#[test]
fn constructor_rejects_broken_arrows() {
    let good = analyze_graph(&single_loop()).unwrap();
    let mut verdicts: Vec<Verdict> = good.iter().map(|(_, v)| v.clone()).collect();
    let idx = |p: Property| Property::ALL.iter().position(|&q| q == p).unwrap();
    verdicts[idx(P::ExchGr)] = Verdict::new(Truth::No, "tampered");
    let bad = PropertyReport::new(good.graph().clone(), true, verdicts.clone(), None, vec![]);
    assert!(matches!(bad, Err(Error::InvariantViolation(_))));
    verdicts[idx(P::ExchGr)] = Verdict::new(Truth::Yes, "tampered");
    verdicts[idx(P::UrGr)] = Verdict::new(Truth::Unknown, "tampered");
    let bad = PropertyReport::new(good.graph().clone(), true, verdicts, None, vec![]);
    assert!(matches!(bad, Err(Error::InvariantViolation(_))));
    assert!(PropertyReport::new(good.graph().clone(), true, vec![], None, vec![]).is_err());
}

#[test]
fn three_valued_arrows() {
    let a = Arrow { premises: &[P::Cln], conclusion: P::Exch };
    let t = |c: Truth, e: Truth| move |p: Property| if p == P::Cln { c } else { e };
    assert!(a.holds(t(Truth::Unknown, Truth::Yes)));
    assert!(a.holds(t(Truth::No, Truth::No)));
    assert!(!a.holds(t(Truth::Yes, Truth::Unknown)));
    assert!(!a.holds(t(Truth::Unknown, Truth::No)));
    let conj = RING_ARROWS[0];
    assert_eq!(conj.to_string(), "Reg+sr=1 => UR");
}

#[test]
fn cross_check_on_named_no_exit_graphs() {
    for g in [single_loop(), two_cycle(), single_edge(), isolated(2), two_cycle_entrance()] {
        decomposition_cross_check(&g, -3..=3).unwrap();
    }
}

#[test]
fn cross_check_on_every_tiny_graph() {
    for g in all_small_graphs(3, 3) {
        let r = analyze_graph(&g).unwrap();
        assert!(r.implication_violations().is_empty());
        if is_no_exit(&g) {
            decomposition_cross_check(&g, -3..=3).unwrap();
        }
    }
}

fn same_summand_any_base(g: &Graph, c: &Cycle) -> bool {
    let rings: Vec<GradedMatrixRing> = c
        .vertices(g)
        .into_iter()
        .map(|v| crate::gmatrix::normalize_shifts(&cycle_summand(g, c, v).unwrap().ring))
        .collect();
    rings.windows(2).all(|w| w[0] == w[1])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn reports_always_consistent(n in 1usize..5, arcs in prop::collection::vec((0usize..4, 0usize..4), 0..6)) {
        let arcs: Vec<(usize, usize)> = arcs.into_iter().map(|(s, r)| (s % n, r % n)).collect();
        let g = numbered(n, &arcs);
        let r = analyze_graph(&g).unwrap();
        prop_assert!(r.implication_violations().is_empty());
        prop_assert_eq!(r.decomposition().is_some(), is_no_exit(&g));
        if is_no_exit(&g) {
            for c in enumerate_cycles(&g) {
                prop_assert!(same_summand_any_base(&g, &c));
            }
        }
    }
}
