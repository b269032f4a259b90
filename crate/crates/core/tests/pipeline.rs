use asmtree::asymptotics::analyze;
use asmtree::enumerator::count_edge_rule;
use asmtree::graph::{build_h_graph, family, Family, HSpec};
use asmtree::rational::{factorial, frac, int};
use asmtree::recurrence::{guess, sequence_from_json, sequence_to_json, PRecurrence};
use asmtree::series::{
    clique_independent_join, complete_multipartite_template, count_from_egf, hgraph_egf,
    separable_diagonal,
};
use num_bigint::BigUint;

#[test]
fn diagonal_to_recurrence_to_growth() {
    let diag = separable_diagonal(&clique_independent_join(), 24).unwrap();
    let rec = guess(diag.coeffs(), 2, 3).unwrap().expect("a recurrence");
    let text = rec.to_json();
    let back = PRecurrence::from_json(&text).unwrap();
    assert_eq!(back.to_json(), text);

    let report = analyze(&back, &diag.coeffs()[..back.offset() + back.order()], 20_000).unwrap();
    assert!((report.lambda - 13.5).abs() < 1e-6);
    assert_eq!(report.theta, -2.0);
}

#[test]
fn diagonal_counts_match_blown_up_graphs() {
    let spec = clique_independent_join();
    // counts() weights by n!; a two-variable diagonal needs (n!)².
    let counts = separable_diagonal(&spec, 5).unwrap().counts().unwrap();
    for (n, count) in counts.iter().enumerate().skip(1) {
        let blown = HSpec::new(spec.base.clone(), spec.phi.clone(), vec![n, n]).unwrap();
        let direct = count_edge_rule(&build_h_graph(&blown).unwrap()).unwrap();
        assert_eq!(direct, count * factorial(n), "n = {n}");
    }
}

#[test]
fn tripartite_cells() {
    let egf = hgraph_egf(&complete_multipartite_template(3).unwrap(), &[2, 2, 2]).unwrap();
    let k222 = family(Family::CompleteMultipartite, &[2, 2, 2]).unwrap();
    assert_eq!(egf.coeff(&[2, 2, 2]).unwrap(), &int(84));
    assert_eq!(count_from_egf(&egf, &[2, 2, 2]).unwrap(), BigUint::from(672u32));
    assert_eq!(count_edge_rule(&k222).unwrap(), BigUint::from(672u32));
}

#[test]
fn sequence_json_round_trip() {
    let seq = vec![int(0), int(1), frac(35, 2)];
    let text = sequence_to_json(&seq).to_string();
    assert_eq!(text, r#"["0","1","35/2"]"#);
    assert_eq!(sequence_from_json(&text).unwrap(), seq);
}
