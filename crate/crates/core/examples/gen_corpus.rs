//! Writes `corpus/inputs`, `corpus/invalid` and `corpus/cases`.
//!
//! ```text
//! cargo run -p catkit --example gen_corpus -- crates/core/corpus
//! cargo run -p catkit -- corpus bless --dir crates/core/corpus
//! ```

use std::path::Path;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use catkit::bicat::{Elem, FinMatrix, FinSpan};
use catkit::descent::{em_diagram, FinMonad};
use catkit::fincat::builder::{chain, discrete, divisibility, cyclic_group, parallel_pair, poset, terminal, walking_idempotent};
use catkit::fincat::{enumerate_functors, CatRef, FinCat, FinGraph, FunctorFile, GraphData};
use catkit::mates::{beck_chevalley, random_square, reflection, BeckChevalley, MateSquare};
use catkit::present::{Computad2, Presentation};
use catkit::random::poset_from_matrix;

fn write<T: Serialize>(dir: &Path, name: &str, v: &T) {
    let mut s = serde_json::to_string_pretty(v).unwrap();
    s.push('\n');
    std::fs::write(dir.join(format!("{name}.json")), s).unwrap();
}

fn graph(nodes: &[&str], edges: &[(&str, &str, &str)]) -> FinGraph {
    let d: GraphData = serde_json::from_value(json!({
        "nodes": nodes,
        "edges": edges.iter().map(|(id, s, t)| json!({"id": id, "src": s, "tgt": t})).collect::<Vec<_>>(),
    }))
    .unwrap();
    FinGraph::new(&d).unwrap()
}

fn computad(g: FinGraph, rels: &[(&str, &str, &str)], groupoidal: bool) -> Value {
    let p = Presentation::tight(Computad2::from_texts(g, rels, groupoidal).unwrap());
    serde_json::to_value(p.to_data()).unwrap()
}

fn chain_poset(n: usize) -> catkit::random::RandomPoset {
    poset_from_matrix((0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect())
}

fn main() {
    let root = std::env::args().nth(1).unwrap_or_else(|| "crates/core/corpus".into());
    let root = Path::new(&root);
    let inputs = root.join("inputs");
    let invalid = root.join("invalid");
    let cases = root.join("cases");
    for d in [&inputs, &invalid, &cases] {
        std::fs::create_dir_all(d).unwrap();
    }

    let cats: Vec<(&str, FinCat)> = vec![
        ("terminal", terminal()),
        ("discrete2", discrete(2)),
        ("chain2", chain(2)),
        ("chain3", chain(3)),
        ("arrow_ab", poset(&["a", "b"], |i, j| i <= j)),
        ("divisibility", divisibility(&[1, 2, 3, 6])),
        ("z3", cyclic_group(3)),
        ("walking_idempotent", walking_idempotent()),
        ("parallel_pair", parallel_pair()),
        ("cospan", poset(&["a", "b", "c"], |i, j| i == j || j == 2)),
    ];
    for (name, c) in &cats {
        write(&inputs, name, &c.to_data());
    }
    let cat = |n: &str| -> CatRef { Arc::new(cats.iter().find(|(k, _)| *k == n).unwrap().1.clone()) };

    let one = graph(&["o"], &[("a", "o", "o"), ("b", "o", "o")]);
    write(&inputs, "torus", &computad(one.clone(), &[("comm", "ab", "ba")], true));
    write(&inputs, "comm_monoid", &computad(one.clone(), &[("comm", "ab", "ba")], false));
    let loop1 = graph(&["o"], &[("a", "o", "o")]);
    write(&inputs, "a_trivial", &computad(loop1.clone(), &[("kill", "a", "")], true));
    write(&inputs, "z3_group", &computad(loop1, &[("order", "aaa", "")], true));
    write(&inputs, "klein", &computad(one, &[("twist", "abab'", "")], true));
    let two = graph(&["p", "q", "r"], &[("x", "p", "p"), ("y", "q", "r"), ("z", "q", "r")]);
    write(&inputs, "two_components", &computad(two, &[("xx", "xx", ""), ("yz", "y", "z")], true));

    let (p, c) = (0..)
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = catkit::random::random_poset(&mut rng, 5, 0.4);
            let c = catkit::random::random_closure(&mut rng, &p);
            (p, c)
        })
        .find(|(_, c)| c.iter().enumerate().filter(|&(x, &y)| x != y).count() >= 2)
        .unwrap();
    let closure = FinMonad::closure(&p, &c);
    write(&inputs, "closure_monad", &closure.to_wire());
    write(&inputs, "identity_monad", &FinMonad::identity(&cat("chain3")).to_wire());
    let round_up_monad = FinMonad::closure(&chain_poset(4), &[1, 1, 3, 3]);
    write(&inputs, "round_up_monad", &round_up_monad.to_wire());
    write(&inputs, "em_diagram", &em_diagram(&closure).to_wire());

    let round_up = reflection(chain_poset(4), &[1, 1, 3, 3]);
    write(&inputs, "round_up", &round_up.adj.to_wire());

    let violated = (0..)
        .find_map(|seed| {
            let sq = random_square(&mut ChaCha8Rng::seed_from_u64(seed), 4);
            matches!(beck_chevalley(&sq).unwrap(), BeckChevalley::Violated { .. }).then_some(sq)
        })
        .unwrap();
    write(&inputs, "bc_violated", &violated.to_wire());
    let id = catkit::fincat::Functor::identity(&cat("chain3"));
    write(&inputs, "bc_trivial", &MateSquare::trivial(&id).to_wire());

    let functor = |j: &str, c: &str, k: usize| FunctorFile::from_functor(&enumerate_functors(&cat(j), &cat(c))[k]);
    write(&inputs, "cospan_in_divisibility", &functor("cospan", "divisibility", 5));
    write(&inputs, "pair_in_z3", &functor("parallel_pair", "z3", 1));
    write(&inputs, "ran_along", &functor("discrete2", "chain2", 1));
    write(&inputs, "ran_of", &functor("discrete2", "chain3", 2));

    write(&inputs, "graph_square", &json!({
        "nodes": ["a", "b", "c", "d"],
        "edges": [
            {"id": "f", "src": "a", "tgt": "b"}, {"id": "g", "src": "b", "tgt": "d"},
            {"id": "h", "src": "a", "tgt": "c"}, {"id": "k", "src": "c", "tgt": "d"},
            {"id": "l", "src": "d", "tgt": "d"}
        ]
    }));

    let e = |s: &str| Elem::atom(s);
    let s1 = FinSpan::new(
        vec![e("x"), e("y")],
        vec![e("u"), e("v")],
        vec![(e("m1"), e("x"), e("u")), (e("m2"), e("x"), e("v")), (e("m3"), e("y"), e("v"))],
    )
    .unwrap();
    let s2 = FinSpan::new(
        vec![e("u"), e("v")],
        vec![e("p")],
        vec![(e("n1"), e("u"), e("p")), (e("n2"), e("v"), e("p")), (e("n3"), e("v"), e("p"))],
    )
    .unwrap();
    write(&inputs, "span_first", &s1.to_data());
    write(&inputs, "span_second", &s2.to_data());
    let m1 = FinMatrix::new(
        vec![e("x"), e("y")],
        vec![e("u"), e("v")],
        vec![(e("x"), e("u"), vec![e("a")]), (e("x"), e("v"), vec![e("b"), e("c")]), (e("y"), e("v"), vec![e("d")])],
    )
    .unwrap();
    let m2 = FinMatrix::new(
        vec![e("u"), e("v")],
        vec![e("p")],
        vec![(e("u"), e("p"), vec![e("p1")]), (e("v"), e("p"), vec![e("q1"), e("q2")])],
    )
    .unwrap();
    write(&inputs, "matrix_first", &m1.to_data());
    write(&inputs, "matrix_second", &m2.to_data());

    let mut broken = serde_json::to_value(chain(3).to_data()).unwrap();
    broken["compose"][2]["result"] = json!("0->1");
    write(&invalid, "broken_chain3", &broken);
    let mut dangling = serde_json::to_value(chain(2).to_data()).unwrap();
    dangling["morphisms"][0]["src"] = json!("nowhere");
    write(&invalid, "dangling", &dangling);
    write(&invalid, "malformed_fincat", &json!({"schema": "fincat/v1", "objects": 3}));
    write(&invalid, "malformed_computad", &json!({"schema": "computad/v1", "graph": {"nodes": ["o"]}, "relations": []}));
    write(&invalid, "wrong_schema", &json!({"schema": "fincat/v9", "objects": [], "morphisms": [], "identities": {}, "compose": []}));
    let mut bad_monad = serde_json::to_value(round_up_monad.to_wire()).unwrap();
    bad_monad["mult"] = bad_monad["unit"].clone();
    write(&invalid, "bad_monad", &bad_monad);
    let mut bad_adj = serde_json::to_value(round_up.adj.to_wire()).unwrap();
    bad_adj["unit"]["components"]["p0"] = json!("p0->p3");
    write(&invalid, "bad_adjunction", &bad_adj);
    write(&invalid, "malformed_span", &json!({"schema": "span/v1", "left": ["x"], "right": ["u"], "mid": [{"elem": "m", "left": "z", "right": "u"}]}));

    let case = |name: &str, args: &[&str], exit: i32| {
        write(&cases, name, &json!({"schema": "case/v1", "args": args, "exit": exit}));
    };
    case("fincat_validate_chain3", &["fincat", "validate", "--in", "inputs/chain3.json"], 0);
    case("fincat_validate_broken", &["fincat", "validate", "--in", "invalid/broken_chain3.json"], 2);
    case("fincat_validate_dangling", &["fincat", "validate", "--in", "invalid/dangling.json"], 2);
    case("fincat_validate_malformed", &["fincat", "validate", "--in", "invalid/malformed_fincat.json"], 2);
    case("fincat_validate_wrong_schema", &["fincat", "validate", "--in", "invalid/wrong_schema.json"], 2);
    case("fincat_compose_divisibility", &["fincat", "compose", "--in", "inputs/divisibility.json", "--g", "2->6", "--f", "1->2"], 0);
    case("fincat_paths_square", &["fincat", "paths", "--in", "inputs/graph_square.json", "--from", "a", "--to", "d", "--maxlen", "4"], 0);
    case("fincat_functor_cat", &["fincat", "functor-cat", "--in", "inputs/chain2.json", "--in", "inputs/chain3.json"], 0);
    case("fincat_functor_cat_dot", &["fincat", "functor-cat", "--in", "inputs/chain2.json", "--in", "inputs/chain2.json", "--format", "dot"], 0);
    case("fincat_functor_cat_budget", &["fincat", "functor-cat", "--in", "inputs/chain3.json", "--in", "inputs/chain3.json", "--budget", "4,64"], 2);
    case("fincat_limit_cospan", &["fincat", "limit", "--in", "inputs/cospan_in_divisibility.json"], 0);
    case("fincat_limit_none", &["fincat", "limit", "--in", "inputs/pair_in_z3.json"], 0);
    case("fincat_ran", &["fincat", "ran", "--in", "inputs/ran_along.json", "--in", "inputs/ran_of.json"], 0);
    case("fincat_iso_chain_arrow", &["fincat", "iso", "--in", "inputs/chain2.json", "--in", "inputs/arrow_ab.json"], 0);
    case("fincat_iso_negative", &["fincat", "iso", "--in", "inputs/chain3.json", "--in", "inputs/z3.json"], 0);
    case("fincat_dot_idempotent", &["fincat", "dot", "--in", "inputs/walking_idempotent.json"], 0);
    case("present_word_eq_commute", &["present", "word-eq", "--in", "inputs/comm_monoid.json", "--lhs", "abab", "--rhs", "aabb", "--bound", "6"], 0);
    case("present_word_eq_distinct", &["present", "word-eq", "--in", "inputs/comm_monoid.json", "--lhs", "ab", "--rhs", "aab", "--bound", "6"], 0);
    case("present_word_eq_torus", &["present", "word-eq", "--in", "inputs/torus.json", "--lhs", "aba'", "--rhs", "b", "--bound", "6"], 0);
    case("present_deficiency_torus", &["present", "deficiency", "--in", "inputs/torus.json"], 0);
    case("present_abelianize_klein", &["present", "abelianize", "--in", "inputs/klein.json"], 0);
    case("present_abelianize_components", &["present", "abelianize", "--in", "inputs/two_components.json"], 0);
    case("present_thin_torus", &["present", "thin", "--in", "inputs/torus.json"], 0);
    case("present_thin_trivial", &["present", "thin", "--in", "inputs/a_trivial.json"], 0);
    case("present_malformed", &["present", "deficiency", "--in", "invalid/malformed_computad.json"], 2);
    case("descent_em_check_closure", &["descent", "em-check", "--in", "inputs/closure_monad.json"], 0);
    case("descent_em_check_identity", &["descent", "em-check", "--in", "inputs/identity_monad.json"], 0);
    case("descent_em_check_seeded", &["descent", "em-check", "--seed", "42"], 0);
    case("descent_em_check_bad_monad", &["descent", "em-check", "--in", "invalid/bad_monad.json"], 2);
    case("descent_colax_em", &["descent", "colax", "--in", "inputs/em_diagram.json"], 0);
    case("descent_strict_em", &["descent", "strict", "--in", "inputs/em_diagram.json"], 0);
    case("descent_monad_homs", &["descent", "monad-homs", "--in", "inputs/round_up_monad.json", "--in", "inputs/identity_monad.json"], 0);
    case("mates_check_round_up", &["mates", "check", "--in", "inputs/round_up.json"], 0);
    case("mates_check_bad", &["mates", "check", "--in", "invalid/bad_adjunction.json"], 2);
    case("mates_mate_violated", &["mates", "mate", "--in", "inputs/bc_violated.json"], 0);
    case("mates_bc_violated", &["mates", "bc", "--in", "inputs/bc_violated.json"], 0);
    case("mates_bc_trivial", &["mates", "bc", "--in", "inputs/bc_trivial.json"], 0);
    case("mates_random", &["mates", "random", "--seed", "11", "--count", "50"], 0);
    case("bicat_span_compose", &["bicat", "span-compose", "--in", "inputs/span_first.json", "--in", "inputs/span_second.json"], 0);
    case("bicat_mat_compose", &["bicat", "mat-compose", "--in", "inputs/matrix_first.json", "--in", "inputs/matrix_second.json"], 0);
    case("bicat_span_malformed", &["bicat", "span-compose", "--in", "invalid/malformed_span.json", "--in", "inputs/span_second.json"], 2);
    case("bicat_roundtrip_divisibility", &["bicat", "roundtrip", "--in", "inputs/divisibility.json"], 0);
    case("bicat_roundtrip_idempotent", &["bicat", "roundtrip", "--in", "inputs/walking_idempotent.json"], 0);
    case("topo_realize_torus", &["topo", "realize", "--in", "inputs/torus.json"], 0);
    case("topo_realize_dot", &["topo", "realize", "--in", "inputs/klein.json", "--format", "dot"], 0);
    case("topo_chi_components", &["topo", "chi", "--in", "inputs/two_components.json"], 0);
    case("topo_homology_klein", &["topo", "homology", "--in", "inputs/klein.json"], 0);
    case("topo_homology_z3", &["topo", "homology", "--in", "inputs/z3_group.json"], 0);
    case("topo_pi1_torus", &["topo", "pi1", "--in", "inputs/torus.json"], 0);
    case("usage_missing_input", &["fincat", "validate"], 1);
    case("usage_dot_unsupported", &["present", "deficiency", "--in", "inputs/torus.json", "--format", "dot"], 1);
}
