//! End-to-end acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use wordrep::decomposition::{
    decompose_min_nonwr_product, decompose_power_k, decompose_power_two_comparability, decompose_product_general,
    decompose_product_tight, power_non_wr_witness, product_non_wr_witness,
};
use wordrep::extremal::{eta, labeled_graphs, tau_exhaustive, verify_no_wr_subgraph, verify_power_bound, SampleConfig};
use wordrep::lex::{lex_map, lex_product, product_wr_characterize, special_subgraph, Confirmation};
use wordrep::recognition::{
    check_semi_transitive, check_transitive, comparability_decide, is_minimal_non_wr, mu_exact, mu_verify, wr_decide,
    Certificate, MuConfig,
};
use wordrep::{induced_subgraph, Graph, Orientation, VertexSet};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn figure_graph() -> Outcome {
    let h = Graph::eight_vertex_extremal();
    ensure(h.edge_count() == 18, "fixture must have 18 edges")?;
    let e = eta(&h);
    ensure(e.value == 6, format!("eta(H) = {}, expected 6", e.value))?;
    ensure(verify_no_wr_subgraph(&h, 7), "some 7-vertex induced subgraph is word-representable")?;
    Ok("eta(H) = 6; all eight 7-subsets are non-representable".into())
}

fn product_table() -> Outcome {
    let p3 = Graph::path(3);
    let c5 = Graph::cycle(5);
    let rows = [
        (&p3, &p3, (true, true, 1)),
        (&p3, &c5, (false, false, 2)),
        (&c5, &p3, (true, false, 1)),
        (&c5, &c5, (false, false, 2)),
    ];
    for (g1, g2, expected) in rows {
        let r = product_wr_characterize(g1, g2).map_err(|e| e.to_string())?;
        ensure((r.h_wr, r.h_comp, r.mu_h) == expected, format!("row {expected:?} got {r:?}"))?;
        let n = g1.n() * g2.n();
        if n <= 12 {
            ensure(r.confirmation == Confirmation::Direct, "small product not confirmed directly")?;
            let h = lex_product(g1, g2).product;
            ensure(wr_decide(&h).representable == expected.0, "direct wr_decide disagrees")?;
            ensure(comparability_decide(&h).representable == expected.1, "direct comparability disagrees")?;
        }
    }
    Ok("four rows match; P3∘P3 re-confirmed directly".into())
}

fn power_cover() -> Outcome {
    let c5 = Graph::cycle(5);
    let mut sizes = Vec::new();
    for k in [2, 3] {
        let d = decompose_power_k(&c5, k).map_err(|e| e.to_string())?;
        ensure(d.len() <= k, format!("k = {k}: {} parts", d.len()))?;
        ensure(mu_verify(&d.host, &d), format!("k = {k}: cover does not verify"))?;
        let w = power_non_wr_witness(&c5, k).map_err(|e| e.to_string())?.ok_or("no lower-bound witness")?;
        let Certificate::Witness(set) = &w else { return Err("witness has the wrong kind".into()) };
        ensure(set.len() == 6, format!("witness has {} vertices", set.len()))?;
        w.verify_non_representable(&d.host).map_err(|e| e.to_string())?;
        sizes.push(format!("C5^[{k}]: {} parts", d.len()));
    }
    Ok(format!("{}; 6-vertex witness certifies >= 2", sizes.join(", ")))
}

fn power_comparability() -> Outcome {
    let c5 = Graph::cycle(5);
    let (a, b) = c5_two_path_split();
    for k in [2, 3] {
        let d = decompose_power_two_comparability(&c5, (&a, &b), k).map_err(|e| e.to_string())?;
        ensure(d.len() == 2, format!("k = {k}: {} parts", d.len()))?;
        for p in &d.parts {
            let Certificate::Transitive(o) = &p.certificate else { return Err("part is not transitive".into()) };
            ensure(check_transitive(o), "part orientation is not transitive")?;
        }
        ensure(mu_verify(&d.host, &d), "cover does not verify")?;
        ensure(power_non_wr_witness(&c5, k).map_err(|e| e.to_string())?.is_some(), "no lower bound")?;
    }
    Ok("two transitive parts for k = 2, 3; μ(C5^[k]) = 2".into())
}

fn product_bounds() -> Outcome {
    let w5 = Graph::wheel(5);
    let c5 = Graph::cycle(5);
    let dw = mu_exact(&w5, &MuConfig::default()).map_err(|e| e.to_string())?.decomposition;
    ensure(dw.len() == 2, "W5 cover should have 2 parts")?;
    let p = lex_product(&w5, &w5);
    let general = decompose_product_general(&p, &dw, &dw).map_err(|e| e.to_string())?;
    ensure(general.len() == 4 && mu_verify(&p.product, &general), "general product cover")?;

    let (a, b) = c5_two_path_split();
    let p = lex_product(&w5, &c5);
    let tight = decompose_product_tight(&p, &dw, &[a, b]).map_err(|e| e.to_string())?;
    ensure(tight.len() == 2 && mu_verify(&p.product, &tight), "tight product cover")?;
    let lower = product_non_wr_witness(&p).map_err(|e| e.to_string())?.ok_or("no witness")?;
    let Certificate::Witness(w) = &lower else { return Err("wrong witness kind".into()) };
    let copy = induced_subgraph(&p.product, w).map_err(|e| e.to_string())?;
    ensure(copy == w5, "lower-bound witness is not a copy of W5")?;
    Ok("W5∘W5: 4 parts; W5∘C5: 2 parts with an induced W5, so μ = 2".into())
}

fn minimal_product() -> Outcome {
    let w5 = Graph::wheel(5);
    ensure(is_minimal_non_wr(&w5), "W5 is not minimal non-representable")?;
    let p = lex_product(&w5, &w5);
    for r in 0..6 {
        let d = decompose_min_nonwr_product(&p, r, &[0; 6], None).map_err(|e| e.to_string())?;
        ensure(d.len() == 3, format!("r = {r}: {} parts", d.len()))?;
        ensure(d.pairwise_edge_disjoint(), format!("r = {r}: parts overlap"))?;
        ensure(mu_verify(&p.product, &d), format!("r = {r}: cover does not verify"))?;
    }
    Ok("W5 minimal; 3 disjoint verified parts for all 6 choices of V_r".into())
}

fn power_bound() -> Outcome {
    let h = Graph::eight_vertex_extremal();
    let r = verify_power_bound(&h, 2, 6, SampleConfig { samples: 50, seed: 0 }).map_err(|e| e.to_string())?;
    ensure(r.bound == 36, "bound should be 36")?;
    ensure(r.combinations_checked == 8, "expected C(8,7) = 8 combinations")?;
    ensure(r.samples_checked == 400, "expected 50 samples per combination")?;
    ensure(r.max_check_ms < 1000.0, format!("slowest check took {:.1} ms", r.max_check_ms))?;
    Ok(format!("η(H^[2]) <= 36; 400 samples, slowest {:.2} ms", r.max_check_ms))
}

fn oracle_equivalence() -> Outcome {
    let mut checked = 0usize;
    for n in 0..=5 {
        for g in labelled(n) {
            for arcs in all_orientations(&g) {
                let o = Orientation::new(g.clone(), &arcs).map_err(|e| e.to_string())?;
                if check_semi_transitive(&o) != semi_transitive_oracle(n, &arcs) {
                    return Err(format!("disagreement on {g:?} with {arcs:?}"));
                }
                checked += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in [6, 7] {
        for _ in 0..10_000 {
            let p = rng.random_range(0.2..0.9);
            let g = random_graph(n, p, &mut rng);
            let arcs = random_orientation(&g, &mut rng);
            let o = Orientation::new(g.clone(), &arcs).map_err(|e| e.to_string())?;
            if check_semi_transitive(&o) != semi_transitive_oracle(n, &arcs) {
                return Err(format!("disagreement on {g:?} with {arcs:?}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} orientations agree with the path-enumeration oracle"))
}

fn small_world() -> Outcome {
    let mut total = 0;
    for n in 1..=5 {
        let graphs: Vec<Graph> = labeled_graphs(n).map_err(|e| e.to_string())?.collect();
        if let Some(g) = graphs.iter().find(|g| !wr_decide(g).representable) {
            return Err(format!("{g:?} is not word-representable"));
        }
        let tau = tau_exhaustive(n, &graphs, false).map_err(|e| e.to_string())?;
        ensure(tau.value == n, format!("τ({n}) = {}", tau.value))?;
        total += graphs.len();
    }
    Ok(format!("all {total} labelled graphs on 1..=5 vertices are representable; τ(n) = n"))
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);

    for _ in 0..1000 {
        let n = rng.random_range(4..=9);
        let g = random_graph(n, rng.random_range(0.3..0.8), &mut rng);
        let s = VertexSet::from_members(n, (0..n).filter(|_| rng.random_bool(0.6))).unwrap();
        let sub = induced_subgraph(&g, &s).unwrap();
        if wr_decide(&g).representable {
            ensure(wr_decide(&sub).representable, format!("hereditarity fails on {g:?} / {s:?}"))?;
        }
        if comparability_decide(&g).representable {
            ensure(comparability_decide(&sub).representable, format!("comparability hereditarity fails on {g:?}"))?;
        }
    }

    for _ in 0..500 {
        let n = rng.random_range(3..=8);
        let g = random_graph(n, rng.random_range(0.2..0.9), &mut rng);
        let apex = g.with_apex();
        ensure(
            wr_decide(&apex).representable == comparability_decide(&g).representable,
            format!("dominating-vertex law fails on {g:?}"),
        )?;
    }

    let small: Vec<Graph> = (1..=3).flat_map(labelled).collect();
    for a in &small {
        for b in &small {
            let ab = lex_product(a, b).product;
            for c in &small {
                let left = lex_product(&ab, c).product;
                let right = lex_product(a, &lex_product(b, c).product).product;
                ensure(left == right, "lexicographic product is not associative")?;
            }
        }
    }

    for _ in 0..200 {
        let outer = random_graph(rng.random_range(3..=5), 0.6, &mut rng);
        let inner = random_graph(rng.random_range(1..=4), 0.5, &mut rng);
        let p = lex_product(&outer, &inner);
        let selected: Vec<_> = outer.edges().into_iter().filter(|_| rng.random_bool(0.7)).collect();
        let m = lex_map(&p, &selected).unwrap();
        let sel_comp = comparability_decide(&m.selected).representable;
        ensure(
            sel_comp == comparability_decide(&m.graph).representable,
            format!("lexicographic-map comparability equivalence fails for {selected:?}"),
        )?;
        if !wr_decide(&m.selected).representable {
            continue;
        }
        let fills: Vec<Graph> = (0..outer.n())
            .map(|_| {
                let keep: Vec<_> = inner.edges().into_iter().filter(|_| rng.random_bool(0.6)).collect();
                let f = inner.spanning_subgraph(&keep).unwrap();
                if comparability_decide(&f).representable {
                    f
                } else {
                    Graph::empty(inner.n())
                }
            })
            .collect();
        let s = special_subgraph(&m, &fills, Some(&inner)).unwrap();
        ensure(
            comparability_decide(&s.graph).representable == sel_comp,
            "special-subgraph comparability equivalence fails",
        )?;
    }
    Ok("hereditarity x1000, dominating vertex x500, associativity over 1331 triples, map/special x200".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("eight-vertex extremal graph: η = 6, no representable 7-set", figure_graph),
        ("product classification table", product_table),
        ("recursive power cover of C5^[k]", power_cover),
        ("two comparability parts for C5^[k]", power_comparability),
        ("general and tight product covers", product_bounds),
        ("three-part cover of W5∘W5", minimal_product),
        ("structural bound for H^[2]", power_bound),
        ("semi-transitivity oracle equivalence", oracle_equivalence),
        ("every graph on <= 5 vertices is representable", small_world),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    let mut total = Duration::ZERO;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        total += took;
        match outcome {
            Ok(detail) => println!("[PASS] criterion {}: {name} ({:.2}s) {detail}", i + 1, took.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {}: {name} ({:.2}s) {why}", i + 1, took.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria passed in {:.2}s", criteria.len() - failed, criteria.len(), total.as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
