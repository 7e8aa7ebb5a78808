use proptest::prelude::*;

use thresholdlab::bipartite::{bipartite_oracle, is_bipartite_threshold, BipartiteGraph};
use thresholdlab::counting::shared_table;
use thresholdlab::graph::{encode, forbidden_subgraph_oracle, is_threshold, CreationCode, Graph};
use thresholdlab::io::{self, GraphFile};
use thresholdlab::measures::{set_measure_distance, StepLinearCdf, UpperSet};
use thresholdlab::rng::RngState;
use thresholdlab::samplers::{sample, sample_degrees, BlockLaw, ModelSpec};
use thresholdlab::spectrum::{ferrers_check, laplacian_spectrum, verify_eigenpairs};

fn code(max_len: usize) -> impl Strategy<Value = CreationCode> {
    prop::collection::vec(any::<bool>(), 0..max_len).prop_map(CreationCode::new)
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn coded_graph(max_len: usize) -> impl Strategy<Value = (CreationCode, Graph)> {
    code(max_len).prop_flat_map(|c| {
        let n = c.order();
        permutation(n).prop_map(move |p| (c.clone(), c.decode().relabel(&p)))
    })
}

/// Atoms and uniform pieces on [0, 1], normalised to mass 1.
fn measure() -> impl Strategy<Value = StepLinearCdf> {
    let atoms = prop::collection::vec((0.0..=1.0f64, 0.01..1.0f64), 0..4);
    let pieces = prop::collection::vec((0.0..0.9f64, 0.05..0.5f64, 0.01..1.0f64), 0..4);
    (atoms, pieces)
        .prop_filter("some mass", |(a, p)| !a.is_empty() || !p.is_empty())
        .prop_map(|(atoms, pieces)| {
            let pieces: Vec<(f64, f64, f64)> =
                pieces.into_iter().map(|(a, w, m)| (a, (a + w).min(1.0), m)).collect();
            let total: f64 =
                atoms.iter().map(|a| a.1).sum::<f64>() + pieces.iter().map(|p| p.2).sum::<f64>();
            let atoms: Vec<(f64, f64)> = atoms.into_iter().map(|(x, m)| (x, m / total)).collect();
            let pieces: Vec<(f64, f64, f64)> =
                pieces.into_iter().map(|(a, b, m)| (a, b, m / total)).collect();
            StepLinearCdf::from_components(&atoms, &pieces).unwrap()
        })
}

fn one_part_model() -> impl Strategy<Value = ModelSpec> {
    (1usize..40, 0.0..=1.0f64, 0u8..6).prop_map(|(n, p, kind)| match kind {
        0 => ModelSpec::UniformUnlabeled { n },
        1 => ModelSpec::UniformLabeled { n },
        2 => ModelSpec::Blocks { law: BlockLaw::Labeled, n },
        3 => ModelSpec::Attachment { n, p },
        4 => ModelSpec::AttachmentShuffled { n, p },
        _ => ModelSpec::UpperSetModel { n, set: UpperSet::triangle() },
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn encode_recovers_code_and_order((c, g) in coded_graph(40)) {
        let e = encode(&g).unwrap();
        prop_assert_eq!(&e.code, &c);
        prop_assert_eq!(e.code.decode().relabel(&e.order), g);
    }

    #[test]
    fn code_degrees_match_graph(c in code(60)) {
        prop_assert_eq!(c.degrees(), c.decode().degrees());
    }

    #[test]
    fn flipped_code_is_complement(c in code(40)) {
        prop_assert_eq!(c.flipped().decode(), c.decode().complement());
    }

    #[test]
    fn extended_code_round_trips(c in code(40)) {
        prop_assume!(c.order() >= 2);
        let ext = c.extend().unwrap();
        prop_assert_eq!(ext.code(), c.clone());
        prop_assert_eq!(ext.blocks().code(), c.clone());
        prop_assert_eq!(ext.blocks().order(), c.order());
    }

    #[test]
    fn recognition_matches_forbidden_subgraphs(n in 1usize..8, mask in any::<u64>()) {
        let pairs = n * (n - 1) / 2;
        let mask = if pairs == 64 { mask } else { mask & ((1u64 << pairs) - 1) };
        let g = Graph::from_edge_mask(n, mask);
        prop_assert_eq!(is_threshold(&g), forbidden_subgraph_oracle(&g).unwrap());
    }

    #[test]
    fn bipartite_recognition_matches_oracle(n1 in 1usize..5, n2 in 1usize..5, mask in any::<u64>()) {
        let b = BipartiteGraph::from_edge_mask(n1, n2, mask & ((1u64 << (n1 * n2)) - 1));
        prop_assert_eq!(is_bipartite_threshold(&b), bipartite_oracle(&b));
    }

    #[test]
    fn isolated_counts_sum_to_total(n in 2usize..60) {
        let table = shared_table(n);
        let mut sum = num_bigint::BigUint::from(0u32);
        for j in 0..=n {
            sum += table.t_isolated(n, j).unwrap();
        }
        prop_assert_eq!(&sum, table.t(n));
    }

    #[test]
    fn dagger_is_an_involution(mu in measure()) {
        prop_assert!(mu.dagger().dagger().approx_eq(&mu, 1e-9));
        // the increasing set of μ† is the reflection of that of μ
        let d = set_measure_distance(&mu.dagger().upper_set(), &mu.upper_set().reflect());
        prop_assert!(d < 1e-9, "distance {d}");
        prop_assert!((mu.dagger().edge_density() - mu.edge_density()).abs() < 1e-9);
    }

    #[test]
    fn quantile_and_cdf_form_a_galois_pair(mu in measure(), x in 0.0..1.0f64, t in 0.0..=1.0f64) {
        let q = mu.quantile(x);
        let f = mu.cdf(t);
        if f > x + 1e-12 {
            prop_assert!(q <= t + 1e-9, "F({t}) = {f} > {x} but Q = {q}");
        }
        if q < t - 1e-9 {
            prop_assert!(f > x - 1e-12, "Q({x}) = {q} < {t} but F = {f}");
        }
    }

    #[test]
    fn samplers_give_threshold_graphs(spec in one_part_model(), seed in any::<u64>()) {
        let g = sample(&spec, &mut RngState::new(seed)).unwrap().graph().unwrap();
        prop_assert_eq!(g.n(), spec.order());
        prop_assert!(is_threshold(&g));
        let d = sample_degrees(&spec, &mut RngState::new(seed)).unwrap();
        prop_assert_eq!(d, g.degrees());
    }

    #[test]
    fn spectrum_identities((_, g) in coded_graph(30)) {
        let s = laplacian_spectrum(&g).unwrap();
        prop_assert_eq!(s.len(), g.n());
        prop_assert!(s.satisfies_trace_identities(&g));
        prop_assert!(verify_eigenpairs(&g).unwrap());
        prop_assert!(ferrers_check(&g).unwrap());
    }

    #[test]
    fn file_formats_round_trip(n in 0usize..9, mask in any::<u64>(), c in code(20)) {
        let pairs = n * n.saturating_sub(1) / 2;
        let g = Graph::from_edge_mask(n, mask & ((1u64 << pairs) - 1));
        for f in [GraphFile::Graph(g), GraphFile::Code(c)] {
            prop_assert_eq!(io::parse(&io::to_text(&f)).unwrap(), f.clone());
            prop_assert_eq!(io::parse(&io::to_json(&f)).unwrap(), f);
        }
    }
}
