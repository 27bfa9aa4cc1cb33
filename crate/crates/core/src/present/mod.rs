//! Computads, presentations of categories and groupoids, the bounded word
//! problem, coinserters as presentations and deficiency.

mod computad;
mod invariants;
mod rewrite;
mod word;

pub use computad::{coinserter, presentation_from_graph, Computad2, ComputadData, Presentation, Relation, RelationData};
pub use invariants::{
    abelianization, component_euler, deficiency, thinness_obstruction, AbelianGroup, ComponentGroup, Thinness,
};
pub use rewrite::{word_eq, WordEq, STATE_CAP};
pub use word::{Letter, Word, WordDisplay};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use proptest::prelude::*;

    use super::*;
    use crate::fincat::builder::{discrete, terminal};
    use crate::fincat::{FinGraph, Functor};
    use crate::topo::{euler_characteristic, homology_by_component, realize2};

    #[test]
    fn coinserter_of_identities_on_the_point() {
        let one = Arc::new(terminal());
        let id = Functor::identity(&one);
        let p = coinserter(&id, &id).unwrap();
        let g = p.graph();
        assert_eq!(g.edges().len(), 2);
        let (q, _) = p.eliminate_identity_edges().unwrap();
        assert_eq!(q.graph().edges().len(), 1);
        assert!(q.computad.relations.is_empty());
        let x = Word::parse(g, "alpha_*", None).unwrap();
        assert_eq!(word_eq(&p, &x, &x.then(&x)).unwrap(), WordEq::Distinct);
    }

    #[test]
    fn coinserter_of_swap() {
        let two = Arc::new(discrete(2));
        let id = Functor::identity(&two);
        let swap = Functor::from_ids(two.clone(), two.clone(), &[("0", "1"), ("1", "0")], &[] as &[(&str, &str)]).unwrap();
        let (q, _) = coinserter(&id, &swap).unwrap().eliminate_identity_edges().unwrap();
        let g = q.graph();
        assert_eq!(g.nodes().len(), 2);
        let crossing: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.src, e.tgt)).collect();
        assert_eq!(crossing, vec![(0, 1), (1, 0)]);
        assert!(q.computad.relations.is_empty());
    }

    #[test]
    fn coinserter_of_empty_diagram_is_the_table() {
        let b = Arc::new(crate::fincat::builder::chain(2));
        let empty = Arc::new(discrete(0));
        let f = Functor::from_ids(empty.clone(), b.clone(), &[] as &[(&str, &str)], &[] as &[(&str, &str)]).unwrap();
        let p = coinserter(&f, &f).unwrap();
        assert_eq!(p.graph().edges().len(), b.num_morphisms());
        let g = p.graph();
        let lhs = Word::parse(g, "id_0 0->1", None).unwrap();
        let rhs = Word::parse(g, "0->1", None).unwrap();
        assert_eq!(word_eq(&p, &lhs, &rhs).unwrap(), WordEq::Equal);
    }

    #[test]
    fn empty_graph() {
        let g = FinGraph::from_parts::<&str, &str>(&[], &[]).unwrap();
        let p = presentation_from_graph(g, true);
        assert!(abelianization(&p).unwrap().is_empty());
        assert_eq!(deficiency(&p).unwrap(), 0);
    }

    #[test]
    fn wire_roundtrip() {
        let g = FinGraph::from_parts(&["*"], &[("a", "*", "*"), ("b", "*", "*")]).unwrap();
        let p = Presentation::new(Computad2::from_texts(g, &[("t", "ab", "ba")], true).unwrap(), 6).unwrap();
        let data = p.to_data();
        let json = serde_json::to_string(&data).unwrap();
        let back = Presentation::from_data(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, p);
        assert!(Presentation::new(p.computad.clone(), 1).is_err());
    }

    /// Random groupoidal computads on up to 3 nodes with short relators.
    fn computad() -> impl Strategy<Value = Computad2> {
        (1usize..=3, 0usize..=4).prop_flat_map(|(n, ne)| {
            let edges = proptest::collection::vec((0..n, 0..n), ne);
            (Just(n), edges, proptest::collection::vec((any::<u64>(), 0usize..=5), 0..=3))
        })
        .prop_map(|(n, edges, rels)| {
            let nodes: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let es: Vec<(String, String, String)> = edges
                .iter()
                .enumerate()
                .map(|(i, &(s, t))| (format!("e{i}"), nodes[s].clone(), nodes[t].clone()))
                .collect();
            let g = FinGraph::from_parts(&nodes, &es).unwrap();
            let mut relations = Vec::new();
            for (k, (seed, len)) in rels.into_iter().enumerate() {
                // a closed walk: random steps, then back along the way taken
                let mut state = seed;
                let start = (seed as usize) % n;
                let mut w = Word::empty(start);
                let mut at = start;
                for _ in 0..len {
                    let options: Vec<Letter> = (0..g.edges().len())
                        .flat_map(|e| [Letter::forward(e), Letter::backward(e)])
                        .filter(|l| l.source(&g) == at)
                        .collect();
                    if options.is_empty() {
                        break;
                    }
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let l = options[(state >> 33) as usize % options.len()];
                    w.letters.push(l);
                    at = l.target(&g);
                }
                // keep only walks that happen to close up
                let lhs = w.reduce();
                if lhs.end(&g) == start {
                    relations.push(Relation {
                        id: format!("r{k}"),
                        lhs,
                        rhs: Word::empty(start),
                    });
                }
            }
            Computad2::new(g, relations, true).unwrap()
        })
    }

    proptest! {
        #[test]
        fn abelianization_matches_first_homology(c in computad()) {
            let p = Presentation::tight(c.clone());
            let ab: Vec<AbelianGroup> = abelianization(&p).unwrap().into_iter().map(|g| g.group).collect();
            let x = realize2(&c);
            prop_assert_eq!(ab, homology_by_component(&x).unwrap());
            prop_assert_eq!(component_euler(&p), euler_characteristic(&x).per_component);
            if x.num_components() == 1 {
                prop_assert_eq!(euler_characteristic(&x).total, 1 - deficiency(&p).unwrap());
            }
        }

        #[test]
        fn deficiency_bookkeeping(c in computad()) {
            let p = Presentation::tight(c.clone());
            let d = deficiency(&p).unwrap();
            let mut more = c.clone();
            more.relations.push(Relation { id: "extra".into(), lhs: Word::empty(0), rhs: Word::empty(0) });
            prop_assert_eq!(deficiency(&Presentation::tight(more)).unwrap(), d - 1);
            let mut data = c.graph.to_data();
            data.nodes.push("fresh".into());
            data.edges.push(crate::fincat::EdgeSpec { id: "fresh_edge".into(), src: "fresh".into(), tgt: data.nodes[0].clone() });
            let g = FinGraph::new(&data).unwrap();
            let rels = c.relations.iter().map(|r| {
                let fix = |w: &Word| Word {
                    start: g.node(&c.graph.nodes()[w.start]).unwrap(),
                    letters: w.letters.iter().map(|l| Letter { edge: g.edge(&c.graph.edges()[l.edge].id).unwrap(), inverse: l.inverse }).collect(),
                };
                Relation { id: r.id.clone(), lhs: fix(&r.lhs), rhs: fix(&r.rhs) }
            }).collect();
            let grown = Computad2::new(g, rels, true).unwrap();
            prop_assert_eq!(deficiency(&Presentation::tight(grown)).unwrap(), d);
        }

        #[test]
        fn redundant_relation_keeps_abelianization(c in computad()) {
            let p = Presentation::tight(c.clone());
            let before = abelianization(&p).unwrap();
            let mut more = c.clone();
            for r in &c.relations {
                // the square of a relator is derivable from the relator
                let w = r.lhs.then(&r.lhs);
                more.relations.push(Relation { id: format!("{}^2", r.id), lhs: w.reduce(), rhs: r.rhs.clone() });
            }
            prop_assert_eq!(abelianization(&Presentation::tight(more)).unwrap(), before);
        }

        #[test]
        fn equal_is_symmetric_and_stable(c in computad(), k in 0usize..3) {
            let p = Presentation::tight(c.clone());
            let g = &c.graph;
            for r in &c.relations {
                let (a, b) = (&r.lhs, &r.rhs);
                let big = Presentation::new(c.clone(), p.bound + 2 * k + 2).unwrap();
                prop_assert_eq!(word_eq(&big, a, b).unwrap(), WordEq::Equal);
                prop_assert_eq!(word_eq(&big, b, a).unwrap(), WordEq::Equal);
                let loops: Vec<usize> = (0..g.edges().len()).filter(|&e| g.edges()[e].src == a.start && g.edges()[e].tgt == a.start).collect();
                if let Some(&e) = loops.first() {
                    let pre = Word { start: a.start, letters: vec![Letter::forward(e); k] };
                    prop_assert_eq!(word_eq(&big, &pre.then(a).reduce(), &pre.then(b).reduce()).unwrap(), WordEq::Equal);
                    prop_assert_eq!(word_eq(&big, &a.then(&pre).reduce(), &b.then(&pre).reduce()).unwrap(), WordEq::Equal);
                }
            }
        }
    }
}
