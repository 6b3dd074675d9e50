mod common;

use common::*;
use wordrep::decomposition::{
    comparability_split, decompose_min_nonwr_product, decompose_power_k, decompose_power_two_comparability,
    decompose_product_general, decompose_product_tight, decompose_product_two, power_non_wr_witness,
    product_non_wr_witness, Decomposition, Provenance,
};
use wordrep::lex::lex_product;
use wordrep::recognition::{
    check_transitive, comparability_decide, mu_exact, mu_verify, mu_verify_detailed, wr_decide, Certificate, MuConfig,
};
use wordrep::{graph_union, Error, Graph, MappedGraph};

fn cover_of(g: &Graph) -> Decomposition {
    mu_exact(g, &MuConfig::default()).unwrap().decomposition
}

fn union_of(d: &Decomposition) -> Graph {
    let parts: Vec<MappedGraph> =
        d.parts.iter().map(|p| MappedGraph { graph: p.graph.clone(), map: (0..p.graph.n()).collect() }).collect();
    graph_union(&parts).unwrap().graph
}

#[test]
fn mu_of_small_graphs() {
    let cfg = MuConfig::default();
    let c5 = mu_exact(&Graph::cycle(5), &cfg).unwrap();
    assert_eq!((c5.value, c5.exact), (1, true));
    let w5 = mu_exact(&Graph::wheel(5), &cfg).unwrap();
    assert_eq!((w5.value, w5.exact, w5.lower_bound), (2, true, 2));
    assert!(mu_verify(&Graph::wheel(5), &w5.decomposition));
    let h = Graph::eight_vertex_extremal();
    let mh = mu_exact(&h, &cfg).unwrap();
    assert_eq!((mh.value, mh.exact), (2, true));
    assert!(mu_verify(&h, &mh.decomposition));
}

#[test]
fn mu_verify_rejects_a_cover_missing_an_edge() {
    let h = Graph::eight_vertex_extremal();
    let mut d = cover_of(&h);
    d.parts.pop();
    assert!(!mu_verify(&h, &d));
    let err = mu_verify_detailed(&h, &d).unwrap_err().to_string();
    assert!(err.contains("is not covered"), "{err}");
}

#[test]
fn two_part_product_cover() {
    let p = lex_product(&Graph::path(3), &Graph::cycle(5));
    let d = decompose_product_two(&p).unwrap();
    assert_eq!(d.len(), 2);
    assert!(mu_verify(&p.product, &d));
    assert_eq!(union_of(&d), p.product);
    assert!(!wr_decide(&p.product).representable);

    let k4 = lex_product(&Graph::complete(2), &Graph::complete(2));
    assert_eq!(decompose_product_two(&k4).unwrap().len(), 2);

    let bad = lex_product(&Graph::cycle(5), &Graph::wheel(5));
    assert!(matches!(decompose_product_two(&bad), Err(Error::Precondition(_))));
}

#[test]
fn power_covers() {
    let c5 = Graph::cycle(5);
    let d2 = decompose_power_k(&c5, 2).unwrap();
    assert_eq!((d2.host.n(), d2.len()), (25, 2));
    let d3 = decompose_power_k(&c5, 3).unwrap();
    assert_eq!(d3.host.n(), 125);
    assert!(d3.len() <= 3 && mu_verify(&d3.host, &d3));
    assert_eq!(d3.provenance, Provenance::Power);
    assert!(decompose_power_k(&Graph::wheel(5), 2).is_err());
}

#[test]
fn power_lower_bound_witness() {
    let c5 = Graph::cycle(5);
    let w = power_non_wr_witness(&c5, 2).unwrap().unwrap();
    let host = decompose_power_k(&c5, 2).unwrap().host;
    w.verify_non_representable(&host).unwrap();
    assert!(power_non_wr_witness(&Graph::path(3), 2).unwrap().is_none());
}

#[test]
fn power_comparability_covers() {
    let c5 = Graph::cycle(5);
    let (a, b) = c5_two_path_split();
    for (k, n) in [(2, 25), (3, 125)] {
        let d = decompose_power_two_comparability(&c5, (&a, &b), k).unwrap();
        assert_eq!((d.host.n(), d.len()), (n, 2));
        for part in &d.parts {
            let Certificate::Transitive(o) = &part.certificate else { panic!("part is not transitive") };
            assert!(check_transitive(o));
        }
        assert!(mu_verify(&d.host, &d));
    }
    let short = &b[..2];
    assert!(decompose_power_two_comparability(&c5, (&a, short), 2).is_err());
}

#[test]
fn general_product_covers() {
    let w5 = Graph::wheel(5);
    let c5 = Graph::cycle(5);
    let k2 = Graph::complete(2);
    let p = lex_product(&w5, &w5);
    let d = decompose_product_general(&p, &cover_of(&w5), &cover_of(&w5)).unwrap();
    assert_eq!((d.host.n(), d.len()), (36, 4));
    assert!(mu_verify(&p.product, &d));

    let p = lex_product(&c5, &w5);
    let d = decompose_product_general(&p, &cover_of(&c5), &cover_of(&w5)).unwrap();
    assert_eq!(d.len(), 3);
    assert!(mu_verify(&p.product, &d));

    let p = lex_product(&k2, &k2);
    let d = decompose_product_general(&p, &cover_of(&k2), &cover_of(&k2)).unwrap();
    assert_eq!(d.len(), 2);
    assert_eq!(union_of(&d), Graph::complete(4));
}

#[test]
fn tight_product_covers() {
    let w5 = Graph::wheel(5);
    let c5 = Graph::cycle(5);
    let (a, b) = c5_two_path_split();
    let p = lex_product(&w5, &c5);
    let d = decompose_product_tight(&p, &cover_of(&w5), &[a.clone(), b.clone()]).unwrap();
    assert_eq!((d.host.n(), d.len()), (30, 2));
    assert!(mu_verify(&p.product, &d));
    product_non_wr_witness(&p).unwrap().unwrap().verify_non_representable(&p.product).unwrap();

    let p3 = Graph::path(3);
    let p = lex_product(&c5, &p3);
    let d = decompose_product_tight(&p, &cover_of(&c5), &[p3.edges()]).unwrap();
    assert_eq!(d.len(), 1);
    assert_eq!(d.parts[0].graph, p.product);

    let p = lex_product(&c5, &c5);
    assert!(matches!(decompose_product_tight(&p, &cover_of(&c5), &[a, b]), Err(Error::Precondition(_))));
}

#[test]
fn minimal_product_covers() {
    let w5 = Graph::wheel(5);
    let p = lex_product(&w5, &w5);
    for roots in [vec![0; 6], vec![3; 6]] {
        for r in 0..6 {
            let d = decompose_min_nonwr_product(&p, r, &roots, None).unwrap();
            assert_eq!(d.len(), 3);
            assert!(d.pairwise_edge_disjoint());
            assert!(mu_verify(&p.product, &d));
        }
    }
    let d = decompose_min_nonwr_product(&p, 2, &[1, 2, 3, 4, 5, 0], Some(4)).unwrap();
    assert!(mu_verify(&p.product, &d));

    let bad = lex_product(&w5, &Graph::cycle(5));
    assert!(matches!(decompose_min_nonwr_product(&bad, 0, &[0; 6], None), Err(Error::Precondition(_))));
}

#[test]
fn comparability_splits() {
    let split = comparability_split(&Graph::cycle(5), 2, None).unwrap();
    assert_eq!(split.len(), 2);
    for edges in &split {
        assert!(comparability_decide(&Graph::cycle(5).spanning_subgraph(edges).unwrap()).representable);
    }
    assert!(comparability_split(&Graph::cycle(5), 1, None).is_err());
}

#[test]
fn search_settles_the_product_of_two_wheels() {
    let w5 = Graph::wheel(5);
    let h = lex_product(&w5, &w5).product;
    let r = mu_exact(&h, &MuConfig { budget: Some(20_000), ..MuConfig::default() }).unwrap();
    assert_eq!((r.value, r.lower_bound, r.exact), (2, 2, true));
    assert!(mu_verify(&h, &r.decomposition));
    match r.lower_witness {
        Some(Certificate::Witness(s)) => {
            let sub = wordrep::induced_subgraph(&h, &s).unwrap();
            assert!(!wr_decide(&sub).representable);
        }
        other => panic!("expected a witness, got {other:?}"),
    }
}
