//! Colax and strict descent categories of `Δℓᶜ`-shaped diagrams, monads and
//! their Eilenberg–Moore categories, and categories of monad morphisms.
//!
//! The Associativity equation is read in the only order the boundaries
//! allow: `σ21 ∘ ∂²(ξ) ∘ σ01 ∘ ∂⁰(ξ) = ∂¹(ξ) ∘ σ00`. On [`em_diagram`] it is
//! the algebra axiom `a∘T(a) = a∘μ`, and the Identity equation is `a∘η = id`.
//!
//! For monad morphisms the structure cell `φ: f∘T_Y ⇒ T_Z∘f` plays the role of
//! `ξ`, so `d⁰f = f∘T_Y` and `d¹f = T_Z∘f`; see [`monad_morphism_diagram`].

mod cells;
mod colax;
mod diagram;
mod monad;
mod morphisms;

pub use colax::{colax_descent_category, descent_category, descent_equations, DescentCategory, DescentEquations, DescentObject};
pub use diagram::{em_diagram, validate_descent_input, DescentInput, DescentWire};
pub use monad::{eilenberg_moore, monad_from_adjunction, Algebra, AlgebraCategory, FinMonad, MonadWire};
pub use morphisms::{
    is_monad_morphism, is_monad_transformation, monad_morphism_category, monad_morphism_diagram, MonadMorphism,
    MonadMorphismCategory,
};

use crate::error::Result;
use crate::fincat::{iso_search, Isomorphism};

/// Computes the category of algebras and the colax descent category of
/// [`em_diagram`] independently and searches for an isomorphism between them.
pub fn em_equivalence_check(m: &FinMonad) -> Result<Option<Isomorphism>> {
    let em = eilenberg_moore(m)?;
    let colax = colax_descent_category(&em_diagram(m))?;
    iso_search(&em.cat, &colax.cat)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::fincat::builder::{chain, cyclic_group, discrete, terminal};
    use crate::fincat::{CatRef, Functor, NatTrans};
    use crate::mates::{reflection, AdjunctionData};
    use crate::random::{poset_from_matrix, random_closure, random_poset};
    use crate::report::ViolationKind;

    fn chain3_closure() -> FinMonad {
        let p = poset_from_matrix((0..3).map(|i| (0..3).map(|j| i <= j).collect()).collect());
        FinMonad::closure(&p, &[0, 2, 2])
    }

    #[test]
    fn constant_diagram_on_the_point() {
        let one: CatRef = Arc::new(terminal());
        let d = DescentInput::constant(&one);
        assert!(validate_descent_input(&d).is_empty());
        assert_eq!(colax_descent_category(&d).unwrap().cat.num_morphisms(), 1);
        assert_eq!(descent_category(&d).unwrap().cat.num_objects(), 1);
        assert_eq!(em_diagram(&FinMonad::identity(&one)), d);
    }

    #[test]
    fn rewired_sigma_is_a_boundary_violation() {
        let mut d = em_diagram(&chain3_closure());
        d.sigma00 = d.sigma21.clone();
        let r = validate_descent_input(&d);
        assert!(r.has(ViolationKind::Boundary));
        assert!(matches!(colax_descent_category(&d), Err(crate::Error::InvalidInput(_))));
    }

    #[test]
    fn identity_monad() {
        let c: CatRef = Arc::new(chain(3));
        let m = FinMonad::identity(&c);
        let colax = colax_descent_category(&em_diagram(&m)).unwrap();
        assert!(colax.pairs.iter().all(|p| c.is_identity(p.xi)));
        assert!(iso_search(&colax.cat, &c).unwrap().is_some());
        let strict = descent_category(&em_diagram(&m)).unwrap();
        assert_eq!(strict.cat.num_morphisms(), colax.cat.num_morphisms());
        assert!(em_equivalence_check(&m).unwrap().unwrap().verify());
    }

    #[test]
    fn closure_monad() {
        let m = chain3_closure();
        assert!(m.validate().is_empty());
        let em = eilenberg_moore(&m).unwrap();
        let carriers: Vec<&str> = em.algebras.iter().map(|a| m.base.obj_id(a.carrier)).collect();
        assert_eq!(carriers, vec!["p0", "p2"]);
        assert!(iso_search(&em.cat, &Arc::new(chain(2))).unwrap().is_some());
        assert!(em_equivalence_check(&m).unwrap().unwrap().verify());
        // both structure maps are identities, and the subcategory is full
        let strict = descent_category(&em_diagram(&m)).unwrap();
        assert!(iso_search(&strict.cat, &Arc::new(chain(2))).unwrap().is_some());
    }

    #[test]
    fn constant_monad_on_two_points() {
        let c: CatRef = Arc::new(discrete(2));
        let t = Functor::constant(&c, &c, c.obj("0").unwrap());
        let mult = NatTrans::new(t.after(&t).unwrap(), t.clone(), vec![c.mor("id_0").unwrap(); 2]);
        // η at 1 would need a morphism 1 → 0; there is none, so no monad
        let unit = NatTrans::new(Functor::identity(&c), t.clone(), vec![c.mor("id_0").unwrap(), c.mor("id_1").unwrap()]);
        assert!(!FinMonad::new(t, mult, unit).validate().is_empty());
    }

    #[test]
    fn constant_monad_at_the_top() {
        let c: CatRef = Arc::new(chain(2));
        let t = Functor::constant(&c, &c, c.obj("1").unwrap());
        let mult = NatTrans::new(t.after(&t).unwrap(), t.clone(), vec![c.mor("id_1").unwrap(); 2]);
        let unit = NatTrans::new(Functor::identity(&c), t.clone(), vec![c.mor("0->1").unwrap(), c.mor("id_1").unwrap()]);
        let m = FinMonad::new(t, mult, unit);
        assert!(m.validate().is_empty());
        let em = eilenberg_moore(&m).unwrap();
        assert!(iso_search(&em.cat, &Arc::new(terminal())).unwrap().is_some());
    }

    #[test]
    fn non_thin_monad() {
        // T = Id on ℤ/2 with η = μ = r1 is a monad whose only algebra is r1
        let c: CatRef = Arc::new(cyclic_group(2));
        let id = Functor::identity(&c);
        let r1 = c.mor("r1").unwrap();
        let m = FinMonad::new(id.clone(), NatTrans::new(id.clone(), id.clone(), vec![r1]), NatTrans::new(id.clone(), id, vec![r1]));
        assert!(m.validate().is_empty());
        let em = eilenberg_moore(&m).unwrap();
        assert_eq!(em.algebras.len(), 1);
        assert_eq!(em.algebras[0].action, r1);
        assert_eq!(em.cat.num_morphisms(), 2);
        assert!(em_equivalence_check(&m).unwrap().unwrap().verify());
    }

    #[test]
    fn equations_specialize_to_the_algebra_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..10 {
            let n = rng.gen_range(1..=6);
            let p = random_poset(&mut rng, n, 0.4);
            let c = random_closure(&mut rng, &p);
            let m = FinMonad::closure(&p, &c);
            let d = em_diagram(&m);
            let b = &m.base;
            for x in b.objects() {
                for &a in b.hom(m.t.ob(x), x) {
                    let e = descent_equations(&d, x, a);
                    assert_eq!(e.assoc_lhs, b.compose(a, m.t.mor(a)));
                    assert_eq!(e.assoc_rhs, b.compose(a, m.mult.at(x)));
                    assert_eq!(e.identity_lhs, b.compose(a, m.unit.at(x)));
                    assert_eq!(e.identity_rhs, b.id(x));
                }
            }
        }
    }

    #[test]
    fn random_closures_satisfy_the_theorem() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let n = rng.gen_range(1..=6);
            let p = random_poset(&mut rng, n, 0.4);
            let c = random_closure(&mut rng, &p);
            let m = FinMonad::closure(&p, &c);
            assert!(validate_descent_input(&em_diagram(&m)).is_empty());
            assert!(em_equivalence_check(&m).unwrap().unwrap().verify());
            let colax = colax_descent_category(&em_diagram(&m)).unwrap();
            let strict = descent_category(&em_diagram(&m)).unwrap();
            // full subcategory on the invertible pairs, closed under isomorphism
            for (k, pair) in strict.pairs.iter().enumerate() {
                let o = colax.cat.obj(strict.cat.obj_id(crate::fincat::Obj(k))).unwrap();
                assert_eq!(colax.pairs[o.0], *pair);
            }
            for iso in colax.cat.morphisms().filter(|&m| colax.cat.is_iso(m)) {
                let (x, y) = (colax.cat.src(iso), colax.cat.tgt(iso));
                let inside = |o| strict.cat.obj(colax.cat.obj_id(o)).is_ok();
                assert_eq!(inside(x), inside(y));
            }
        }
    }

    #[test]
    fn monad_from_galois_connection() {
        let p = poset_from_matrix((0..3).map(|i| (0..3).map(|j| i <= j).collect()).collect());
        let r = reflection(p, &[0, 2, 2]);
        let m = monad_from_adjunction(&r.adj).unwrap();
        assert_eq!(m, chain3_closure());
        let id = monad_from_adjunction(&AdjunctionData::identity(&r.big.cat)).unwrap();
        assert_eq!(id, FinMonad::identity(&r.big.cat));
    }

    #[test]
    fn random_adjunctions_give_monads() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let r = crate::mates::random_reflection(&mut rng, 6);
            assert!(monad_from_adjunction(&r.adj).unwrap().validate().is_empty());
        }
    }

    #[test]
    fn monad_morphisms_match_descent_pairs() {
        let one: CatRef = Arc::new(terminal());
        let mm = monad_morphism_category(&FinMonad::identity(&one), &FinMonad::identity(&one)).unwrap();
        assert_eq!(mm.cat.num_morphisms(), 1);

        let m = chain3_closure();
        let mm = monad_morphism_category(&m, &m).unwrap();
        let id = Functor::identity(&m.base);
        assert!(mm
            .objects
            .iter()
            .any(|x| x.f == id && x.phi.components.iter().all(|&c| m.base.is_identity(c))));
        let (d, _) = monad_morphism_diagram(&m, &m).unwrap();
        assert!(validate_descent_input(&d).is_empty());
        let colax = colax_descent_category(&d).unwrap();
        assert_eq!(colax.cat.to_data(), mm.cat.to_data());
    }

    #[test]
    fn monad_morphisms_between_random_closures() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..6 {
            let (np, nq) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let p = random_poset(&mut rng, np, 0.5);
            let q = random_poset(&mut rng, nq, 0.5);
            let y = FinMonad::closure(&p, &random_closure(&mut rng, &p));
            let z = FinMonad::closure(&q, &random_closure(&mut rng, &q));
            let mm = monad_morphism_category(&y, &z).unwrap();
            let (d, _) = monad_morphism_diagram(&y, &z).unwrap();
            let colax = colax_descent_category(&d).unwrap();
            assert_eq!(colax.cat.to_data(), mm.cat.to_data());
        }
    }
}
