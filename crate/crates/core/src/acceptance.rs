//! The acceptance checks, each an exact computation over the corpus or over
//! seeded random instances. Every check reports pass/fail and a short detail.

use std::path::Path;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bicat::{cat_to_mat_monad, cat_to_span_monad, mat_monad_to_cat, span_monad_to_cat};
use crate::corpus::{load_cases, render_cases, Corpus};
use crate::descent::{
    colax_descent_category, descent_equations, eilenberg_moore, em_diagram, monad_morphism_category,
    monad_morphism_diagram, FinMonad,
};
use crate::error::Result;
use crate::fincat::builder::{chain, discrete, parallel_pair, poset, terminal};
use crate::fincat::{
    all_cones, enumerate_functors, enumerate_transformations, iso_search, limit, right_kan_extension,
    verify_ran_universal, CatRef, Cone, Functor,
};
use crate::mates::{
    beck_chevalley, mate, mate_inverse, paste, paste_mates, random_reflection, random_square, square_between,
    BeckChevalley, MateSquare,
};
use crate::present::{abelianization, deficiency, thinness_obstruction, AbelianGroup, Thinness};
use crate::random::{random_closure, random_poset};
use crate::topo::{euler_characteristic, homology_by_component, realize2};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn finish(id: u8, name: &'static str, r: Result<std::result::Result<String, String>>) -> Check {
    let (pass, detail) = match r {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, format!("error: {e}")),
    };
    Check { id, name, pass, detail }
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Ok(Err(format!($($fmt)*)));
        }
    };
}

fn closure_monad(rng: &mut ChaCha8Rng, max: usize) -> FinMonad {
    let n = rng.gen_range(1..=max);
    let p = random_poset(rng, n, 0.4);
    let c = random_closure(rng, &p);
    FinMonad::closure(&p, &c)
}

/// Algebras of the identity monad on each corpus category and of 20 random
/// closure monads are isomorphic to the colax descent category of `em_diagram`.
pub fn em_as_descent(corpus: &Corpus) -> Check {
    finish(1, "EM category is the colax descent category", (|| {
        let mut monads: Vec<(String, FinMonad)> =
            corpus.categories.iter().map(|(n, c)| (format!("Id on {n}"), FinMonad::identity(c))).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for i in 0..20 {
            monads.push((format!("closure #{i}"), closure_monad(&mut rng, 8)));
        }
        for (name, m) in &monads {
            let em = eilenberg_moore(m)?;
            let colax = colax_descent_category(&em_diagram(m))?;
            let iso = iso_search(&em.cat, &colax.cat)?;
            ensure!(iso.is_some_and(|i| i.verify()), "no isomorphism for {name}");
        }
        Ok(Ok(format!("{} monads", monads.len())))
    })())
}

/// `mate_inverse ∘ mate` and `mate ∘ mate_inverse` are identities on every
/// 2-cell of 100 random squares, and mates respect pasting on 25 pairs.
pub fn mate_bijection() -> Check {
    finish(2, "mate correspondence is a bijection and respects pasting", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut cells = 0;
        for _ in 0..100 {
            let sq = random_square(&mut rng, 5);
            let nu = sq.n.after(&sq.adj_lu.g)?;
            let gm = sq.adj_fg.g.after(&sq.m)?;
            for alpha in enumerate_transformations(&nu, &gm) {
                let s = MateSquare { alpha: alpha.clone(), ..sq.clone() };
                ensure!(mate_inverse(&s, &mate(&s)?)? == alpha, "mate_inverse ∘ mate is not the identity");
                cells += 1;
            }
            let fnn = sq.adj_fg.f.after(&sq.n)?;
            let ml = sq.m.after(&sq.adj_lu.f)?;
            for beta in enumerate_transformations(&fnn, &ml) {
                let s = MateSquare { alpha: mate_inverse(&sq, &beta)?, ..sq.clone() };
                ensure!(mate(&s)? == beta, "mate ∘ mate_inverse is not the identity");
                cells += 1;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..25 {
            let a = random_reflection(&mut rng, 4);
            let b = random_reflection(&mut rng, 4);
            let c = random_reflection(&mut rng, 4);
            let s1 = square_between(&mut rng, &a, &b);
            let s2 = square_between(&mut rng, &b, &c);
            let direct = mate(&paste(&s1, &s2)?)?;
            ensure!(direct == paste_mates(&s1, &s2, &mate(&s1)?, &mate(&s2)?)?, "pasting not respected");
        }
        Ok(Ok(format!("{cells} 2-cells on 100 squares, 25 pastings")))
    })())
}

/// The corpus square `bc_violated` fails Beck–Chevalley at a component that
/// is verified non-invertible, and an identity square satisfies it.
pub fn beck_chevalley_witness(corpus: &Corpus) -> Check {
    finish(3, "Beck-Chevalley witness", (|| {
        let Some(sq) = corpus.square("bc_violated") else {
            return Ok(Err("corpus has no bc_violated square".into()));
        };
        let BeckChevalley::Violated { object, component } = beck_chevalley(sq)? else {
            return Ok(Err("bc_violated satisfies the condition".into()));
        };
        let t = mate(sq)?;
        let w = &t.dom.dom;
        let y = &t.dom.cod;
        let o = w.obj(&object)?;
        ensure!(y.mor_id(t.at(o)) == component, "reported component is not the mate's");
        ensure!(y.inverse(t.at(o)).is_none(), "reported component {component} is invertible");
        let c: CatRef = Arc::new(chain(3));
        let id = MateSquare::trivial(&Functor::identity(&c));
        ensure!(beck_chevalley(&id)? == BeckChevalley::Satisfied, "identity square violates the condition");
        Ok(Ok(format!("violated at {object} by {component}; identity square satisfied")))
    })())
}

/// Span and matrix monad round trips reproduce every corpus category.
pub fn span_mat_round_trips(corpus: &Corpus) -> Check {
    finish(4, "Span/Mat monad round trips", (|| {
        let mut n = 0;
        for (name, c) in corpus.categories.iter().filter(|(_, c)| c.num_objects() <= 6) {
            let s = span_monad_to_cat(&cat_to_span_monad(c))?;
            let m = mat_monad_to_cat(&cat_to_mat_monad(c))?;
            ensure!(s == **c && s.validate().is_empty(), "span round trip changed {name}");
            ensure!(m == **c && m.validate().is_empty(), "matrix round trip changed {name}");
            n += 1;
        }
        ensure!(n > 0, "no corpus categories");
        Ok(Ok(format!("{n} categories")))
    })())
}

/// Abelianization against `H₁` of the realization, component counts, and
/// `χ = 1 − deficiency`, plus the torus and `⟨a | a⟩` instances.
pub fn topology_coherence(corpus: &Corpus) -> Check {
    finish(5, "topology and presentations agree", (|| {
        let mut n = 0;
        for (name, p) in corpus.presentations.iter().filter(|(_, p)| p.computad.groupoidal) {
            let ab = abelianization(p)?;
            let x = realize2(&p.computad);
            let h1 = homology_by_component(&x)?;
            ensure!(ab.len() == x.num_components(), "{name}: component counts differ");
            let groups: Vec<&AbelianGroup> = ab.iter().map(|c| &c.group).collect();
            ensure!(groups == h1.iter().collect::<Vec<_>>(), "{name}: abelianization differs from H1");
            let chi = euler_characteristic(&x);
            if ab.len() == 1 {
                ensure!(chi.total == 1 - deficiency(p)?, "{name}: χ ≠ 1 − deficiency");
            }
            n += 1;
        }
        let torus = corpus.presentation("torus").ok_or_else(|| crate::Error::UnknownObject("torus".into()))?;
        let x = realize2(&torus.computad);
        ensure!(euler_characteristic(&x).total == 0, "torus: χ ≠ 0");
        ensure!(homology_by_component(&x)? == vec![AbelianGroup { rank: 2, torsion: vec![] }], "torus: H1 ≠ Z^2");
        ensure!(matches!(thinness_obstruction(torus)?, Thinness::NotThin { .. }), "torus: not flagged");
        let a = corpus.presentation("a_trivial").ok_or_else(|| crate::Error::UnknownObject("a_trivial".into()))?;
        let x = realize2(&a.computad);
        ensure!(euler_characteristic(&x).total == 1, "⟨a | a⟩: χ ≠ 1");
        ensure!(homology_by_component(&x)?.iter().all(AbelianGroup::is_trivial), "⟨a | a⟩: H1 nontrivial");
        ensure!(deficiency(a)? == 0, "⟨a | a⟩: deficiency ≠ 0");
        Ok(Ok(format!("{n} groupoidal computads")))
    })())
}

/// On `em_diagram` the descent equations are the algebra axioms, for 10
/// random monads.
pub fn descent_specialization() -> Check {
    finish(6, "descent equations specialize to the algebra axioms", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut pairs = 0;
        for _ in 0..10 {
            let m = closure_monad(&mut rng, 6);
            let d = em_diagram(&m);
            let b = &m.base;
            for x in b.objects() {
                for &a in b.hom(m.t.ob(x), x) {
                    let e = descent_equations(&d, x, a);
                    ensure!(e.assoc_lhs == b.compose(a, m.t.mor(a)), "a∘T(a) mismatch");
                    ensure!(e.assoc_rhs == b.compose(a, m.mult.at(x)), "a∘μ mismatch");
                    ensure!(e.identity_lhs == b.compose(a, m.unit.at(x)), "a∘η mismatch");
                    ensure!(e.identity_rhs == b.id(x), "id mismatch");
                    pairs += 1;
                }
            }
        }
        Ok(Ok(format!("10 monads, {pairs} candidate pairs")))
    })())
}

/// Monad morphisms between 5 pairs of closure monads form the colax descent
/// category of the instantiated diagram.
pub fn monad_morphisms() -> Check {
    finish(7, "monad morphisms are colax descent data", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let mut objects = 0;
        for i in 0..5 {
            let y = closure_monad(&mut rng, 3);
            let z = closure_monad(&mut rng, 3);
            let mm = monad_morphism_category(&y, &z)?;
            let (d, _) = monad_morphism_diagram(&y, &z)?;
            let colax = colax_descent_category(&d)?;
            ensure!(colax.cat.to_data() == mm.cat.to_data(), "pair {i}: categories differ");
            ensure!(iso_search(&colax.cat, &mm.cat)?.is_some(), "pair {i}: not isomorphic");
            objects += mm.objects.len();
        }
        Ok(Ok(format!("5 pairs, {objects} monad morphisms")))
    })())
}

/// Counts factorizations of `other` through `lim` directly from composites.
fn factor_count(d: &Functor, lim: &Cone, other: &Cone) -> usize {
    let c = &d.cod;
    c.hom(other.apex, lim.apex)
        .iter()
        .filter(|&&u| d.dom.objects().all(|j| c.compose(lim.legs[j.0], u) == other.legs[j.0]))
        .count()
}

/// Limits factor every cone exactly once (and a missing limit has no
/// universal cone); right Kan extensions satisfy their universal property.
pub fn universal_properties(corpus: &Corpus) -> Check {
    finish(8, "limits and Kan extensions are universal", (|| {
        let arc = |c| -> CatRef { Arc::new(c) };
        let cospan = poset(&["a", "b", "c"], |i, j| i == j || j == 2);
        let shapes = [arc(discrete(0)), arc(terminal()), arc(discrete(2)), arc(parallel_pair()), arc(cospan)];
        let small: Vec<&(String, CatRef)> = corpus.categories.iter().filter(|(_, c)| c.num_objects() <= 4).collect();
        let (mut limits, mut absent, mut rans) = (0, 0, 0);
        for (name, c) in &small {
            for j in &shapes {
                for d in enumerate_functors(j, c) {
                    let cones = all_cones(&d);
                    match limit(&d) {
                        Some(l) => {
                            ensure!(cones.iter().all(|k| factor_count(&d, &l, k) == 1), "limit over {name} not universal");
                            limits += 1;
                        }
                        None => {
                            let universal = cones.iter().any(|l| cones.iter().all(|k| factor_count(&d, l, k) == 1));
                            ensure!(!universal, "a limit over {name} was missed");
                            absent += 1;
                        }
                    }
                }
            }
        }
        let pairs = [(arc(discrete(2)), arc(chain(2))), (arc(chain(2)), arc(chain(3))), (arc(discrete(0)), arc(terminal()))];
        for (name, c) in &small {
            for (a, b) in &pairs {
                for k in enumerate_functors(a, b) {
                    for f in enumerate_functors(a, c) {
                        if let Some(ext) = right_kan_extension(&k, &f)? {
                            ensure!(verify_ran_universal(&k, &f, &ext)?, "Ran into {name} not universal");
                            rans += 1;
                        }
                    }
                }
            }
        }
        Ok(Ok(format!("{limits} limits, {absent} diagrams without limit, {rans} Kan extensions")))
    })())
}

/// Two runs over every corpus case give identical outputs.
pub fn determinism(dir: &Path) -> Check {
    finish(9, "corpus outputs are deterministic", (|| {
        let cases = load_cases(dir)?;
        let first = render_cases(dir, &cases);
        let second = render_cases(dir, &cases);
        ensure!(first == second, "outputs differ between runs");
        Ok(Ok(format!("{} cases", cases.len())))
    })())
}

pub fn run_all(dir: &Path, corpus: &Corpus) -> Vec<Check> {
    vec![
        em_as_descent(corpus),
        mate_bijection(),
        beck_chevalley_witness(corpus),
        span_mat_round_trips(corpus),
        topology_coherence(corpus),
        descent_specialization(),
        monad_morphisms(),
        universal_properties(corpus),
        determinism(dir),
    ]
}
