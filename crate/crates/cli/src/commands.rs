use std::time::Instant;

use clap::ValueEnum;
use serde_json::{json, Value};
use wordrep::decomposition::{
    comparability_split, decompose_min_nonwr_product, decompose_power_k, decompose_power_two_comparability,
    decompose_product_general, decompose_product_tight, decompose_product_two, power_non_wr_witness,
    product_non_wr_witness, Decomposition,
};
use wordrep::document::{
    verify_document, CertRecord, CertificateDocument, DeletionRecord, DocResult, Property, VerifyLimits, VerifyStatus,
};
use wordrep::extremal::{eta_with, labeled_graphs, tau_exhaustive, verify_power_bound, SampleConfig};
use wordrep::formats::{from_graph6, to_dot, to_graph6};
use wordrep::lex::{lex_map, lex_power, lex_product, special_subgraph, LexProduct};
use wordrep::recognition::{
    comparability_decide_with, find_word_with, mu_exact, wr_decide_with, Budget, Certificate, MuConfig,
};
use wordrep::{Error, Graph, Result};

use crate::input::{parse_edges, parse_fill, read_corpus, read_graph, read_text};
use crate::{emit, exit, CheckArgs, Cli, Command, Construction, EtaArgs, Format, LexCommand, MuArgs};

pub fn run(cli: &Cli) -> Result<u8> {
    let start = Instant::now();
    let doc = match &cli.command {
        Command::Check(a) => check(cli, a)?,
        Command::Mu(a) => mu(cli, a)?,
        Command::Lex(l) => return lex(cli, l),
        Command::Eta(a) => eta_doc(a)?,
        Command::Verify(a) => return verify(&a.input, a.witness_cap),
        Command::Tau(a) => tau(a.n, a.corpus.as_deref(), a.allow_large)?,
        Command::PowerBound(a) => power_bound(cli, &a.input, a.k, a.cap, a.samples)?,
    };
    let mut doc = doc;
    doc.timing.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    if !matches!(cli.format, None | Some(Format::Json)) {
        return Err(Error::Invalid("certificate documents are only written as JSON".into()));
    }
    emit(&doc.to_json());
    Ok(exit::OK)
}

fn document(command: &str, host: &Graph, result: DocResult, certificates: Vec<CertRecord>) -> CertificateDocument {
    CertificateDocument::new(command, host, result, certificates, 0.0)
}

fn orientation_arcs(c: &Certificate, ids: &[usize]) -> Vec<[usize; 2]> {
    match CertRecord::from_certificate(c, Some(ids), Property::WordRepresentable) {
        CertRecord::SemiTransitiveOrientation(r) | CertRecord::TransitiveOrientation(r) => r.arcs,
        _ => unreachable!("a representable graph comes with an orientation"),
    }
}

fn check(cli: &Cli, a: &CheckArgs) -> Result<CertificateDocument> {
    let g = read_graph(&a.input)?;
    let mut budget = Budget::new(cli.budget);
    let (property, value, certs) = if a.comparability {
        let d = comparability_decide_with(&g, &mut budget)?;
        let c = CertRecord::from_certificate(&d.certificate, None, Property::Comparability);
        (Property::Comparability, d.representable, vec![c])
    } else if a.wr {
        let d = wr_decide_with(&g, &mut budget)?;
        let mut certs = vec![CertRecord::from_certificate(&d.certificate, None, Property::WordRepresentable)];
        if let (true, Some(k)) = (d.representable, cli.max_occurrence) {
            match find_word_with(&g, k, &mut budget) {
                Ok(Some(w)) => certs.push(CertRecord::from_certificate(&Certificate::Word(w), None, Property::WordRepresentable)),
                Ok(None) => eprintln!("note: no word with at most {k} occurrences per letter"),
                Err(e) => eprintln!("note: word search stopped: {e}"),
            }
        }
        (Property::WordRepresentable, d.representable, certs)
    } else {
        let (value, certs) = minimality(&g, &mut budget)?;
        (Property::MinimalNonWordRepresentable, value, certs)
    };
    Ok(document(&format!("check --{}", flag_name(property)), &g, DocResult::Check { property, value }, certs))
}

fn flag_name(p: Property) -> &'static str {
    match p {
        Property::WordRepresentable => "wr",
        Property::Comparability => "comparability",
        Property::MinimalNonWordRepresentable => "minimal",
    }
}

fn minimality(g: &Graph, budget: &mut Budget) -> Result<(bool, Vec<CertRecord>)> {
    let d = wr_decide_with(g, budget)?;
    let whole = CertRecord::from_certificate(&d.certificate, None, Property::WordRepresentable);
    let full_witness = matches!(&d.certificate, Certificate::Witness(w) if w.len() == g.n());
    if !full_witness {
        return Ok((false, vec![whole]));
    }
    let mut deletions = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let ids: Vec<usize> = (0..g.n()).filter(|&u| u != v).collect();
        let dv = wr_decide_with(&g.delete_vertex(v)?, budget)?;
        if !dv.representable {
            let proper = CertRecord::from_certificate(&dv.certificate, Some(&ids), Property::WordRepresentable);
            return Ok((false, vec![proper]));
        }
        deletions.push(DeletionRecord { vertex: v, arcs: orientation_arcs(&dv.certificate, &ids) });
    }
    Ok((true, vec![whole, CertRecord::VertexDeletions { deletions }]))
}

fn mu_config(cli: &Cli) -> MuConfig {
    let default = MuConfig::default();
    MuConfig { budget: cli.budget.or(default.budget), ..default }
}

fn mu(cli: &Cli, a: &MuArgs) -> Result<CertificateDocument> {
    let Some(mode) = a.constructive else {
        let input = a.input.as_deref().ok_or_else(|| Error::Invalid("mu needs an input graph".into()))?;
        let g = read_graph(input)?;
        let m = mu_exact(&g, &mu_config(cli))?;
        if !m.exact {
            eprintln!("note: budget exhausted; μ lies in [{}, {}]", m.lower_bound, m.value);
        }
        return Ok(mu_document("mu", &m.decomposition, m.lower_witness.as_ref(), m.lower_bound, m.exact));
    };
    let sidecar = a.structure.as_deref().map(read_sidecar).transpose()?;
    let field = |flag: &Option<String>, key: &str| -> Result<Graph> {
        if let Some(s) = flag {
            return read_graph(s);
        }
        match sidecar.as_ref().and_then(|v| v.get(key)).and_then(Value::as_str) {
            Some(g6) => from_graph6(g6),
            None => Err(Error::Invalid(format!("--constructive needs --{key} or a sidecar naming it"))),
        }
    };
    let power_k = || -> Result<usize> {
        a.k.or_else(|| sidecar.as_ref().and_then(|v| v.get("k")).and_then(Value::as_u64).map(|k| k as usize))
            .ok_or_else(|| Error::Invalid("power constructions need --k".into()))
    };
    let product = || -> Result<LexProduct> { Ok(lex_product(&field(&a.outer, "outer")?, &field(&a.inner, "inner")?)) };

    let (d, witness) = match mode {
        Construction::ProductTwo => {
            let p = product()?;
            (decompose_product_two(&p)?, product_non_wr_witness(&p)?)
        }
        Construction::Power => {
            let (g, k) = (field(&a.base, "base")?, power_k()?);
            (decompose_power_k(&g, k)?, power_non_wr_witness(&g, k)?)
        }
        Construction::PowerComparability => {
            let (g, k) = (field(&a.base, "base")?, power_k()?);
            let (first, second) = match &a.split {
                Some(s) => {
                    let first = parse_edges(s)?;
                    let norm: Vec<_> = first.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
                    let rest = g.edges().into_iter().filter(|e| !norm.contains(e)).collect();
                    (first, rest)
                }
                None => {
                    let mut parts = comparability_split(&g, 2, cli.budget)?;
                    let second = parts.pop().expect("two parts");
                    (parts.pop().expect("two parts"), second)
                }
            };
            (decompose_power_two_comparability(&g, (&first, &second), k)?, power_non_wr_witness(&g, k)?)
        }
        Construction::ProductGeneral => {
            let p = product()?;
            let cfg = mu_config(cli);
            let d1 = mu_exact(&p.outer, &cfg)?.decomposition;
            let d2 = mu_exact(&p.inner, &cfg)?.decomposition;
            (decompose_product_general(&p, &d1, &d2)?, product_non_wr_witness(&p)?)
        }
        Construction::ProductTight => {
            let p = product()?;
            let d1 = mu_exact(&p.outer, &mu_config(cli))?.decomposition;
            let split = smallest_comparability_split(&p.inner, d1.len(), cli.budget)?;
            (decompose_product_tight(&p, &d1, &split)?, product_non_wr_witness(&p)?)
        }
        Construction::MinimalProduct => {
            let p = product()?;
            let roots = match &a.roots {
                Some(s) => s
                    .split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("--roots: {e}"))))
                    .collect::<Result<Vec<_>>>()?,
                None => vec![0; p.outer.n()],
            };
            (decompose_min_nonwr_product(&p, a.r, &roots, a.deleted)?, product_non_wr_witness(&p)?)
        }
    };
    let lower = if witness.is_some() { 2 } else { 1 };
    let exact = lower == d.len();
    if !exact {
        eprintln!("note: μ lies in [{lower}, {}]", d.len());
    }
    let name = mode.to_possible_value().expect("named").get_name().to_string();
    Ok(mu_document(&format!("mu --constructive {name}"), &d, witness.as_ref(), lower, exact))
}

fn smallest_comparability_split(g: &Graph, max: usize, budget: Option<u64>) -> Result<Vec<Vec<(usize, usize)>>> {
    for k in 1..=max {
        match comparability_split(g, k, budget) {
            Ok(s) => return Ok(s),
            Err(Error::Invalid(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Precondition(format!("the inner graph does not split into {max} comparability graphs")))
}

fn mu_document(
    command: &str,
    d: &Decomposition,
    witness: Option<&Certificate>,
    lower_bound: usize,
    exact: bool,
) -> CertificateDocument {
    let result = DocResult::Mu { value: d.len(), exact, lower_bound, provenance: d.provenance.as_str().into() };
    let mut certs = vec![CertRecord::cover(d)];
    if let Some(w) = witness {
        certs.push(CertRecord::from_certificate(w, None, Property::WordRepresentable));
    }
    document(command, &d.host, result, certs)
}

fn read_sidecar(arg: &str) -> Result<Value> {
    serde_json::from_str(&read_text(arg)?).map_err(|e| Error::Parse(format!("structure sidecar: {e}")))
}

fn lex(cli: &Cli, l: &LexCommand) -> Result<u8> {
    let product_sidecar = |kind: &str, p: &LexProduct| {
        json!({
            "kind": kind,
            "outer_n": p.outer.n(),
            "inner_n": p.inner.n(),
            "chain": [p.outer.n(), p.inner.n()],
            "outer": to_graph6(&p.outer),
            "inner": to_graph6(&p.inner),
        })
    };
    let (graph, mut sidecar, path) = match l {
        LexCommand::Product(f) => {
            let p = lex_product(&read_graph(&f.outer)?, &read_graph(&f.inner)?);
            let s = product_sidecar("product", &p);
            (p.product, s, &f.sidecar)
        }
        LexCommand::Power { input, k, sidecar } => {
            let g = read_graph(input)?;
            let power = lex_power(&g, *k)?;
            let inner_n = if *k == 1 { 1 } else { power.right_structure(*k)?.inner_n };
            let s = json!({
                "kind": "power",
                "outer_n": g.n(),
                "inner_n": inner_n,
                "chain": vec![g.n(); *k],
                "base": to_graph6(&g),
                "k": k,
            });
            (power.graph().clone(), s, sidecar)
        }
        LexCommand::Map { factors, edges } => {
            let p = lex_product(&read_graph(&factors.outer)?, &read_graph(&factors.inner)?);
            let edges = parse_edges(edges)?;
            let m = lex_map(&p, &edges)?;
            let mut s = product_sidecar("map", &p);
            s["edges"] = json!(m.selected.edges());
            (m.graph, s, &factors.sidecar)
        }
        LexCommand::Special { factors, edges, fill } => {
            let p = lex_product(&read_graph(&factors.outer)?, &read_graph(&factors.inner)?);
            let m = lex_map(&p, &parse_edges(edges)?)?;
            let mut fills = vec![Graph::empty(p.inner.n()); p.outer.n()];
            for f in fill {
                let (i, e) = parse_fill(f)?;
                let slot = fills
                    .get_mut(i)
                    .ok_or_else(|| Error::Invalid(format!("fill index {i} is not a supervertex")))?;
                *slot = p.inner.spanning_subgraph(&e)?;
            }
            let s = special_subgraph(&m, &fills, Some(&p.inner))?;
            let mut side = product_sidecar("special", &p);
            side["edges"] = json!(m.selected.edges());
            side["fills"] = json!(fills.iter().map(Graph::edges).collect::<Vec<_>>());
            (s.graph, side, &factors.sidecar)
        }
    };
    sidecar["n"] = json!(graph.n());
    if let Some(path) = path {
        let text = serde_json::to_string_pretty(&sidecar).expect("json");
        std::fs::write(path, text + "\n").map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
    }
    match cli.format.unwrap_or(Format::G6) {
        Format::G6 => emit(&to_graph6(&graph)),
        Format::Dot => emit(to_dot(&graph).trim_end()),
        Format::Json => {
            let out = json!({ "graph6": to_graph6(&graph), "structure": sidecar });
            emit(&serde_json::to_string_pretty(&out).expect("json"));
        }
    }
    Ok(exit::OK)
}

fn eta_doc(a: &EtaArgs) -> Result<CertificateDocument> {
    let g = read_graph(&a.input)?;
    let (value, certs) = eta_records(&g, a.blockers);
    Ok(document(if a.blockers { "eta --blockers" } else { "eta" }, &g, DocResult::Eta { value }, certs))
}

fn eta_records(g: &Graph, blockers: bool) -> (usize, Vec<CertRecord>) {
    let e = eta_with(g, blockers);
    let mut certs =
        vec![CertRecord::from_certificate(&e.certificate, Some(&e.witness.members()), Property::WordRepresentable)];
    if let Some(b) = &e.blockers {
        certs.push(CertRecord::blockers(e.value + 1, b));
    }
    (e.value, certs)
}

fn verify(input: &str, witness_cap: usize) -> Result<u8> {
    let doc = CertificateDocument::from_json(&read_text(input)?)?;
    let report = verify_document(&doc, VerifyLimits { witness_cap })?;
    let (status, message, code) = match &report.status {
        VerifyStatus::Valid => ("valid", None, exit::OK),
        VerifyStatus::Invalid(m) => ("invalid", Some(m.as_str()), exit::VERIFY_FAILED),
        VerifyStatus::Unknown(m) => ("unknown", Some(m.as_str()), exit::UNKNOWN),
    };
    let out = json!({
        "status": status,
        "message": message,
        "certificates_checked": report.certificates_checked,
        "notes": report.notes,
    });
    emit(&serde_json::to_string_pretty(&out).expect("json"));
    if let Some(m) = message {
        eprintln!("{status}: {m}");
    }
    Ok(code)
}

fn tau(n: usize, corpus: Option<&str>, allow_large: bool) -> Result<CertificateDocument> {
    let graphs: Vec<Graph> = match corpus {
        Some(c) => read_corpus(c)?,
        None => labeled_graphs(n)?.collect(),
    };
    let t = tau_exhaustive(n, &graphs, allow_large)?;
    let host = &graphs[t.argmin];
    let (_, certs) = eta_records(host, true);
    let result = DocResult::Tau { n, value: t.value, graphs: t.graphs, argmin: t.argmin };
    Ok(document("tau", host, result, certs))
}

fn power_bound(cli: &Cli, input: &str, k: usize, cap: usize, samples: usize) -> Result<CertificateDocument> {
    let g = read_graph(input)?;
    let r = verify_power_bound(&g, k, cap, SampleConfig { samples, seed: cli.seed })?;
    let bound = u64::try_from(r.bound).map_err(|_| Error::Invalid(format!("bound {} does not fit in 64 bits", r.bound)))?;
    let (value, certs) = eta_records(&g, true);
    let certs = if value == cap { certs } else { Vec::new() };
    let result = DocResult::PowerBound {
        k,
        cap,
        bound,
        combinations_checked: r.combinations_checked,
        samples_checked: r.samples_checked,
        max_check_ms: r.max_check_ms,
    };
    Ok(document("power-bound", &g, result, certs))
}
