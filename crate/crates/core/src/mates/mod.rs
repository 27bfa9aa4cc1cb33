//! Adjunctions between finite categories, their composition, the mate
//! correspondence and the Beck–Chevalley condition.

mod adjunction;
mod random;
mod square;

pub use adjunction::{check_adjunction, compose_adjunctions, require_adjunction, AdjunctionData, AdjunctionWire};
pub use random::{random_reflection, random_square, reflection, square_between, Reflection};
pub use square::{beck_chevalley, mate, mate_inverse, paste, paste_mates, BeckChevalley, MateSquare, MateSquareWire};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::fincat::builder::{chain, cyclic_group};
    use crate::fincat::{CatRef, Functor, NatTrans};

    #[test]
    fn identity_square() {
        let c: CatRef = Arc::new(chain(3));
        let sq = MateSquare::trivial(&Functor::identity(&c));
        let t = mate(&sq).unwrap();
        assert_eq!(t, NatTrans::identity(&Functor::identity(&c)));
        assert_eq!(beck_chevalley(&sq).unwrap(), BeckChevalley::Satisfied);
        assert_eq!(mate_inverse(&sq, &t).unwrap(), sq.alpha);
    }

    #[test]
    fn mate_of_identity_is_identity_via_triangles() {
        let r = reflection(
            crate::random::poset_from_matrix(vec![
                vec![true, true, true],
                vec![false, true, true],
                vec![false, false, true],
            ]),
            &[0, 2, 2],
        );
        assert!(check_adjunction(&r.adj).is_empty());
        let sq = MateSquare {
            adj_lu: r.adj.clone(),
            adj_fg: r.adj.clone(),
            m: Functor::identity(&r.small.cat),
            n: Functor::identity(&r.big.cat),
            alpha: NatTrans::identity(&r.adj.g),
        };
        let t = mate(&sq).unwrap();
        assert_eq!(t, NatTrans::identity(&r.adj.f));
    }

    #[test]
    fn non_thin_mate() {
        // Id ⊣ Id on ℤ/2 with α = r1: the mate is r1 again, and invertible
        let c: CatRef = Arc::new(cyclic_group(2));
        let mut sq = MateSquare::trivial(&Functor::identity(&c));
        sq.alpha.components[0] = c.mor("r1").unwrap();
        let t = mate(&sq).unwrap();
        assert_eq!(c.mor_id(t.components[0]), "r1");
        assert_eq!(mate_inverse(&sq, &t).unwrap(), sq.alpha);
        assert_eq!(beck_chevalley(&sq).unwrap(), BeckChevalley::Satisfied);
    }

    #[test]
    fn boundary_mismatch() {
        let c: CatRef = Arc::new(chain(2));
        let mut sq = MateSquare::trivial(&Functor::identity(&c));
        sq.alpha = NatTrans::identity(&Functor::constant(&c, &c, c.obj("0").unwrap()));
        assert!(matches!(mate(&sq), Err(crate::Error::BoundaryMismatch(_))));
    }

    #[test]
    fn random_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let sq = random_square(&mut rng, 5);
            assert!(sq.alpha.validate().is_empty());
            let t = mate(&sq).unwrap();
            assert!(t.validate().is_empty());
            assert_eq!(mate_inverse(&sq, &t).unwrap(), sq.alpha);
        }
    }

    #[test]
    fn beck_chevalley_violation_found() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let found = (0..500).find_map(|_| {
            let sq = random_square(&mut rng, 5);
            match beck_chevalley(&sq).unwrap() {
                BeckChevalley::Violated { object, component } => Some((sq, object, component)),
                BeckChevalley::Satisfied => None,
            }
        });
        let (sq, object, component) = found.expect("some random square violates the condition");
        let t = mate(&sq).unwrap();
        let w = &t.dom.dom;
        let first_bad = w.objects().find(|&o| !t.dom.cod.is_iso(t.at(o))).unwrap();
        assert_eq!(w.obj_id(first_bad), object);
        assert_eq!(t.dom.cod.mor_id(t.at(first_bad)), component);
    }

    #[test]
    fn pasting_commutes_with_mates() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let a = random_reflection(&mut rng, 4);
            let b = random_reflection(&mut rng, 4);
            let c = random_reflection(&mut rng, 4);
            let s1 = square_between(&mut rng, &a, &b);
            let s2 = square_between(&mut rng, &b, &c);
            let pasted = paste(&s1, &s2).unwrap();
            let direct = mate(&pasted).unwrap();
            let composite = paste_mates(&s1, &s2, &mate(&s1).unwrap(), &mate(&s2).unwrap()).unwrap();
            assert_eq!(direct, composite);
        }
    }

    #[test]
    fn composition_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let a = random_reflection(&mut rng, 5);
            let b = reflection(a.small.clone(), &crate::random::random_closure(&mut rng, &a.small));
            let c = reflection(b.small.clone(), &crate::random::random_closure(&mut rng, &b.small));
            let left = compose_adjunctions(&c.adj, &compose_adjunctions(&b.adj, &a.adj).unwrap()).unwrap();
            let right = compose_adjunctions(&compose_adjunctions(&c.adj, &b.adj).unwrap(), &a.adj).unwrap();
            assert!(check_adjunction(&left).is_empty());
            assert_eq!(left.counit.components, right.counit.components);
            assert_eq!(left.unit.components, right.unit.components);
        }
    }
}
