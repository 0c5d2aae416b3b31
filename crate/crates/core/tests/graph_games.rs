use nlsym::graph::{
    classify, disjoint_auto_correlation, find_disjoint_automorphisms, is_winning, table2, Graph, GraphVerdict, Rule,
};
use nlsym::locality::decide_local;

#[test]
fn table2_verdicts_match() {
    let rows = table2().unwrap();
    for r in &rows {
        assert!(r.matches(), "row {} {}: {:?}", r.index, r.name, r.classification.verdict);
    }
    let attested: Vec<usize> = rows.iter().filter(|r| r.classification.attested).map(|r| r.index).collect();
    assert_eq!(attested, vec![1, 10]);
}

#[test]
fn disjoint_constructions_are_certified() {
    for name in ["3K2", "2C4", "2K4", "3K3", "5K2", "C10(4)"] {
        let g = Graph::from_name(name).unwrap();
        let s = find_disjoint_automorphisms(&g, 3).unwrap().unwrap();
        let c = disjoint_auto_correlation(&g, &s).unwrap();
        assert!(is_winning(&g, &c.correlation), "{name}");
        let auts = nlsym::graph::automorphisms(&g).unwrap();
        let v = decide_local(&c.correlation, &auts).unwrap();
        assert!(v.is_nonlocal() && v.certificate_verified, "{name}");
    }
}

#[test]
fn classification_is_complement_invariant() {
    for name in ["K5", "3K2", "Q3", "2C5", "C5", "K4", "2K3", "petersen", "C6"] {
        let g = Graph::from_name(name).unwrap();
        assert_eq!(classify(&g).unwrap().verdict, classify(&g.complement()).unwrap().verdict, "{name}");
    }
}

#[test]
fn five_vertex_rules() {
    let k5 = classify(&Graph::complete(5).unwrap()).unwrap();
    assert_eq!((k5.verdict, k5.rule), (GraphVerdict::Nonlocal, Rule::CompleteOnFive));
    let c5 = classify(&Graph::cycle(5).unwrap()).unwrap();
    assert_eq!(c5.verdict, GraphVerdict::NoNonlocal);
    assert!(c5.attested);
}
