//! Finite categories, functors, natural transformations, paths in graphs,
//! limits, pointwise Kan extensions and isomorphism search.
//!
//! Every enumeration is emitted in lexicographic id order, so results are
//! deterministic byte for byte.

pub mod builder;
mod category;
pub mod dot;
mod functor;
mod graph;
mod iso;
mod limit;
mod search;
mod wire;

pub use category::{Budget, CatRef, CompositeSpec, FinCat, FinCatData, MorphismData, MorphismSpec, Mor, Obj};
pub use functor::{
    enumerate_functors, enumerate_transformations, functor_category, functor_category_with_budget, Functor,
    FunctorCategory, NatTrans,
};
pub use graph::{Edge, EdgeSpec, FinGraph, GraphData, Path};
pub use wire::{FunctorData, FunctorFile, NatTransData};
pub use iso::{iso_search, iso_search_with_budget, Isomorphism};
pub use limit::{
    all_cones, comma, cones_with_apex, factorizations, is_limiting, limit, right_kan_extension, verify_ran_universal,
    CommaCategory, Cone, KanExtension,
};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use proptest::prelude::*;

    use super::builder::*;
    use super::*;
    use crate::error::Error;
    use crate::report::ViolationKind;

    #[test]
    fn terminal_category_validates() {
        assert!(terminal().validate().is_empty());
    }

    #[test]
    fn rewired_chain_reports_boundary_violation() {
        let mut data = chain(3).to_data();
        for c in &mut data.compose {
            if c.g == "1->2" && c.f == "0->1" {
                c.result = "id_0".into();
            }
        }
        let c = FinCat::from_data(&data).unwrap();
        assert!(c.validate().has(ViolationKind::Boundary));
    }

    #[test]
    fn compose_in_chain() {
        let c = chain(3);
        assert_eq!(c.compose_ids("id_1", "0->1").unwrap(), "0->1");
        assert_eq!(c.compose_ids("1->2", "0->1").unwrap(), "0->2");
        assert!(matches!(c.compose_ids("0->1", "1->2"), Err(Error::NotComposable { .. })));
    }

    #[test]
    fn malformed_inputs_rejected() {
        let mut data = chain(2).to_data();
        data.morphisms.push(data.morphisms[0].clone());
        assert!(matches!(FinCat::from_data(&data), Err(Error::MalformedInput(_))));
        let mut data = chain(2).to_data();
        data.morphisms[0].src = "nowhere".into();
        assert!(matches!(FinCat::from_data(&data), Err(Error::MalformedInput(_))));
        let mut data = chain(2).to_data();
        data.identities.insert("ghost".into(), "id_0".into());
        assert!(matches!(FinCat::from_data(&data), Err(Error::MalformedInput(_))));
    }

    #[test]
    fn budget_rejects_large_categories() {
        let data = chain(10).to_data();
        let b = Budget {
            max_objects: 64,
            max_morphisms: 20,
        };
        assert!(matches!(
            FinCat::from_data_with_budget(&data, b),
            Err(Error::SizeLimitExceeded(_))
        ));
        assert_eq!(Budget::parse("8,100").unwrap().max_objects, 8);
        assert_eq!(Budget::parse("100").unwrap().max_morphisms, 100);
        assert!(Budget::parse("x").is_err());
    }

    #[test]
    fn wire_roundtrip() {
        let c = divisibility(&[1, 2, 3, 6]);
        let json = serde_json::to_string(&c.to_data()).unwrap();
        let back: FinCatData = serde_json::from_str(&json).unwrap();
        assert_eq!(FinCat::from_data(&back).unwrap(), c);
    }

    fn corpus() -> Vec<FinCat> {
        vec![
            terminal(),
            chain(2),
            chain(3),
            discrete(2),
            divisibility(&[1, 2, 3, 6]),
            cyclic_group(2),
            cyclic_group(3),
            walking_idempotent(),
            parallel_pair(),
        ]
    }

    #[test]
    fn functor_category_from_terminal_is_isomorphic() {
        let one = Arc::new(terminal());
        for b in corpus() {
            let b = Arc::new(b);
            let fc = functor_category(&one, &b).unwrap();
            let iso = iso_search(&fc.cat, &b).unwrap().expect("[1, b] ≅ b");
            assert!(iso.verify());
        }
    }

    proptest! {
        #[test]
        // restricted to categories whose every table entry is forced by thinness
        // or a unit law; a monoid table can mutate into another monoid
        fn mutated_table_entry_detected(which in 0usize..4, pick in 0usize..100, target in 0usize..100) {
            let c = &corpus()[[1, 2, 4, 8][which]];
            let mut data = c.to_data();
            let i = pick % data.compose.len();
            let choices: Vec<String> = data.morphisms.iter().map(|m| m.id.clone()).collect();
            let new = choices[target % choices.len()].clone();
            prop_assume!(new != data.compose[i].result);
            data.compose[i].result = new;
            let mutated = FinCat::from_data(&data).unwrap();
            prop_assert!(!mutated.validate().is_empty());
        }

        #[test]
        fn path_counts_are_monotone(n_edges in 0usize..5, seed in 0u64..1000, len in 0usize..4) {
            let nodes = ["a", "b", "c"];
            let edges: Vec<(String, &str, &str)> = (0..n_edges)
                .map(|i| {
                    let s = nodes[((seed >> (2 * i)) % 3) as usize];
                    let t = nodes[((seed >> (2 * i + 1)) % 3) as usize];
                    (format!("e{i}"), s, t)
                })
                .collect();
            let g = FinGraph::from_parts(&nodes, &edges.iter().map(|(e, s, t)| (e.as_str(), *s, *t)).collect::<Vec<_>>()).unwrap();
            for a in nodes {
                for b in nodes {
                    let short = g.enumerate_paths(a, b, len).unwrap();
                    let long = g.enumerate_paths(a, b, len + 1).unwrap();
                    prop_assert!(short.len() <= long.len());
                    prop_assert!(short.iter().all(|p| long.contains(p)));
                    for p in &short {
                        prop_assert!(g.is_path(p));
                        for c in nodes {
                            for q in g.enumerate_paths(b, c, len).unwrap() {
                                let pq = g.concat(p, &q).unwrap();
                                prop_assert!(g.is_path(&pq));
                                prop_assert_eq!(g.path_end(&pq), g.node(c).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }
}
