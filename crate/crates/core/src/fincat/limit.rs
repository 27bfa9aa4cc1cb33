use std::collections::HashMap;
use std::sync::Arc;

use super::builder::CatBuilder;
use super::category::{CatRef, Mor, Obj};
use super::functor::{enumerate_functors, enumerate_transformations, Functor, NatTrans};
use super::search::backtrack;
use crate::error::{Error, Result};

/// A cone over a diagram `d: J → C`: an apex and one leg per object of `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub apex: Obj,
    pub legs: Vec<Mor>,
}

/// All cones over `d` with the given apex, legs in lexicographic order.
pub fn cones_with_apex(d: &Functor, apex: Obj) -> Vec<Cone> {
    let (j, c) = (&d.dom, &d.cod);
    let cands: Vec<Vec<usize>> = j.objects().map(|x| c.hom(apex, d.ob(x)).iter().map(|m| m.0).collect()).collect();
    let mut squares: Vec<Vec<Mor>> = vec![Vec::new(); j.num_objects()];
    for m in j.morphisms() {
        squares[j.src(m).0.max(j.tgt(m).0)].push(m);
    }
    let mut out = Vec::new();
    backtrack(
        &cands,
        |legs| {
            squares[legs.len() - 1]
                .iter()
                .all(|&m| c.compose(d.mor(m), Mor(legs[j.src(m).0])) == Mor(legs[j.tgt(m).0]))
        },
        |legs| {
            out.push(Cone {
                apex,
                legs: legs.iter().map(|&i| Mor(i)).collect(),
            });
            true
        },
    );
    out
}

pub fn all_cones(d: &Functor) -> Vec<Cone> {
    d.cod.objects().flat_map(|c| cones_with_apex(d, c)).collect()
}

/// Morphisms `u: other.apex → limit.apex` with `limit.legs[j] ∘ u = other.legs[j]` for all `j`.
pub fn factorizations(d: &Functor, limit: &Cone, other: &Cone) -> Vec<Mor> {
    let c = &d.cod;
    c.hom(other.apex, limit.apex)
        .iter()
        .copied()
        .filter(|&u| {
            limit
                .legs
                .iter()
                .zip(&other.legs)
                .all(|(&l, &o)| c.compose(l, u) == o)
        })
        .collect()
}

/// Whether every cone over `d` factors through `candidate` exactly once.
pub fn is_limiting(d: &Functor, candidate: &Cone, cones: &[Cone]) -> bool {
    cones.iter().all(|k| factorizations(d, candidate, k).len() == 1)
}

/// A limiting cone over `d`, or `None` when no limit exists. The first
/// limiting cone in (apex, legs) order is returned.
pub fn limit(d: &Functor) -> Option<Cone> {
    let cones = all_cones(d);
    cones.iter().find(|l| is_limiting(d, l, &cones)).cloned()
}

/// The comma category `b ↓ k` together with its projection to `dom(k)`.
#[derive(Debug, Clone)]
pub struct CommaCategory {
    pub cat: CatRef,
    pub projection: Functor,
    /// `(a, u: b → k a)` behind each object.
    pub objects: Vec<(Obj, Mor)>,
    index: HashMap<(Obj, Mor), Obj>,
}

impl CommaCategory {
    pub fn object_of(&self, a: Obj, u: Mor) -> Option<Obj> {
        self.index.get(&(a, u)).copied()
    }
}

/// Materializes `b ↓ k`: objects `(a, u: b → k a)`, morphisms `m: a → a'`
/// with `k(m) ∘ u = u'`.
pub fn comma(b: Obj, k: &Functor) -> Result<CommaCategory> {
    let (a_cat, b_cat) = (&k.dom, &k.cod);
    let mut pairs: Vec<(String, Obj, Mor)> = Vec::new();
    for a in a_cat.objects() {
        for &u in b_cat.hom(b, k.ob(a)) {
            pairs.push((format!("({},{})", a_cat.obj_id(a), b_cat.mor_id(u)), a, u));
        }
    }
    pairs.sort_by(|x, y| x.0.cmp(&y.0));
    let index: HashMap<(Obj, Mor), Obj> = pairs.iter().enumerate().map(|(i, p)| ((p.1, p.2), Obj(i))).collect();
    let mor_name = |m: Mor, src: usize| format!("{}@{}", a_cat.mor_id(m), pairs[src].0);

    let mut builder = CatBuilder::new();
    for (i, (name, a, _)) in pairs.iter().enumerate() {
        builder = builder.object_with_identity(name.clone(), mor_name(a_cat.id(*a), i));
    }
    // (name, underlying morphism, source index, target index)
    let mut arrows: Vec<(String, Mor, usize, usize)> = Vec::new();
    for (i, &(_, a, u)) in pairs.iter().enumerate() {
        for &m in a_cat.out_of(a) {
            let target = (a_cat.tgt(m), b_cat.compose(k.mor(m), u));
            let t = index[&target].0;
            arrows.push((mor_name(m, i), m, i, t));
            if !a_cat.is_identity(m) {
                builder = builder.morphism(mor_name(m, i), pairs[i].0.clone(), pairs[t].0.clone());
            }
        }
    }
    let by_source: HashMap<(usize, Mor), usize> = arrows.iter().enumerate().map(|(n, x)| ((x.2, x.1), n)).collect();
    for (name_f, f, s, mid) in &arrows {
        for &g in a_cat.out_of(a_cat.tgt(*f)) {
            let name_g = &arrows[by_source[&(*mid, g)]].0;
            let name_gf = &arrows[by_source[&(*s, a_cat.compose(g, *f))]].0;
            builder = builder.composite(name_g.clone(), name_f.clone(), name_gf.clone());
        }
    }
    let cat = Arc::new(builder.build()?);
    let objects: Vec<(Obj, Mor)> = pairs.iter().map(|p| (p.1, p.2)).collect();
    let omap = cat.objects().map(|o| objects[o.0].0).collect();
    let under: HashMap<&str, Mor> = arrows.iter().map(|x| (x.0.as_str(), x.1)).collect();
    let mmap = cat.morphisms().map(|m| under[cat.mor_id(m)]).collect();
    let projection = Functor::new(cat.clone(), a_cat.clone(), omap, mmap);
    Ok(CommaCategory {
        cat,
        projection,
        objects,
        index,
    })
}

/// A right Kan extension `Ran_k f` with its universal transformation
/// `counit: Ran_k f ∘ k ⇒ f`.
#[derive(Debug, Clone)]
pub struct KanExtension {
    pub functor: Functor,
    pub counit: NatTrans,
}

/// Pointwise right Kan extension of `f: A → C` along `k: A → B`.
/// `Ok(None)` when some pointwise limit does not exist.
pub fn right_kan_extension(k: &Functor, f: &Functor) -> Result<Option<KanExtension>> {
    if !(Arc::ptr_eq(&k.dom, &f.dom) || *k.dom == *f.dom) {
        return Err(Error::BoundaryMismatch("k and f must share a domain".into()));
    }
    let (b_cat, c_cat) = (&k.cod, &f.cod);
    let mut commas = Vec::new();
    let mut limits = Vec::new();
    for b in b_cat.objects() {
        let cm = comma(b, k)?;
        let diagram = f.after(&cm.projection)?;
        let Some(l) = limit(&diagram) else {
            return Ok(None);
        };
        limits.push((l, diagram));
        commas.push(cm);
    }
    let omap: Vec<Obj> = limits.iter().map(|(l, _)| l.apex).collect();
    let mut mmap = Vec::with_capacity(b_cat.num_morphisms());
    for beta in b_cat.morphisms() {
        let (b, b2) = (b_cat.src(beta), b_cat.tgt(beta));
        let (target, diagram) = &limits[b2.0];
        let (source, _) = &limits[b.0];
        // restrict the cone at `b` along precomposition with `beta`
        let legs = commas[b2.0]
            .objects
            .iter()
            .map(|&(a, u)| {
                let o = commas[b.0]
                    .object_of(a, b_cat.compose(u, beta))
                    .expect("precomposite lies in the comma category");
                source.legs[o.0]
            })
            .collect();
        let cone = Cone {
            apex: source.apex,
            legs,
        };
        let u = factorizations(diagram, target, &cone);
        debug_assert_eq!(u.len(), 1);
        mmap.push(u[0]);
    }
    let functor = Functor::new(b_cat.clone(), c_cat.clone(), omap, mmap);
    let ran_k = functor.after(k)?;
    let comps = k
        .dom
        .objects()
        .map(|a| {
            let kb = k.ob(a);
            let o = commas[kb.0].object_of(a, b_cat.id(kb)).expect("identity object in comma");
            limits[kb.0].0.legs[o.0]
        })
        .collect();
    let counit = NatTrans::new(ran_k, f.clone(), comps);
    Ok(Some(KanExtension { functor, counit }))
}

/// Checks the universal property of `ext` against every functor `G: B → C`
/// and every `γ: G∘k ⇒ f`: exactly one `δ: G ⇒ Ran` with `counit ∘ δk = γ`.
pub fn verify_ran_universal(k: &Functor, f: &Functor, ext: &KanExtension) -> Result<bool> {
    if !ext.functor.validate().is_empty() || !ext.counit.validate().is_empty() {
        return Ok(false);
    }
    for g in enumerate_functors(&k.cod, &f.cod) {
        let gk = g.after(k)?;
        let deltas = enumerate_transformations(&g, &ext.functor);
        for gamma in enumerate_transformations(&gk, f) {
            let mut hits = 0;
            for d in &deltas {
                if ext.counit.vcomp(&d.whisker_right(k)?)? == gamma {
                    hits += 1;
                }
            }
            if hits != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::builder::{chain, discrete, divisibility, poset};
    use crate::fincat::category::FinCat;

    fn arc(c: FinCat) -> CatRef {
        Arc::new(c)
    }

    #[test]
    fn empty_diagram_limit_is_terminal() {
        let c = arc(divisibility(&[1, 2, 3, 6]));
        let j = arc(discrete(0));
        let d = Functor::new(j, c.clone(), vec![], vec![]);
        let l = limit(&d).unwrap();
        assert_eq!(c.obj_id(l.apex), "6");
    }

    #[test]
    fn product_in_divisibility_is_gcd() {
        let c = arc(divisibility(&[1, 2, 3, 6]));
        let j = arc(discrete(2));
        let d = Functor::from_ids(j, c.clone(), &[("0", "2"), ("1", "3")], &[] as &[(&str, &str)]).unwrap();
        let l = limit(&d).unwrap();
        assert_eq!(c.obj_id(l.apex), "1");
        for k in all_cones(&d) {
            assert_eq!(factorizations(&d, &l, &k).len(), 1);
        }
    }

    #[test]
    fn no_product_in_discrete_category() {
        let c = arc(discrete(2));
        let d = Functor::identity(&c);
        assert!(limit(&d).is_none());
    }

    #[test]
    fn comma_category_is_valid() {
        let b = arc(chain(3));
        let k = Functor::identity(&b);
        let cm = comma(Obj(0), &k).unwrap();
        assert!(cm.cat.validate().is_empty());
        assert_eq!(cm.cat.num_objects(), 3);
        assert!(cm.projection.validate().is_empty());
    }

    #[test]
    fn kan_extension_along_identity() {
        let a = arc(chain(2));
        let c = arc(chain(3));
        let f = Functor::from_ids(a.clone(), c, &[("0", "1"), ("1", "2")], &[("0->1", "1->2")]).unwrap();
        let k = Functor::identity(&a);
        let ext = right_kan_extension(&k, &f).unwrap().unwrap();
        assert_eq!(ext.functor, f);
        assert!(verify_ran_universal(&k, &f, &ext).unwrap());
    }

    fn wedge() -> CatRef {
        // t ≤ x, t ≤ y
        arc(poset(&["t", "x", "y"], |i, j| i == j || i == 0))
    }

    #[test]
    fn kan_extension_meet_at_apex() {
        let a = arc(discrete(2));
        let b = wedge();
        let k = Functor::from_ids(a.clone(), b.clone(), &[("0", "x"), ("1", "y")], &[] as &[(&str, &str)]).unwrap();
        let c = arc(divisibility(&[1, 2, 3, 6]));
        let f = Functor::from_ids(a, c.clone(), &[("0", "2"), ("1", "3")], &[] as &[(&str, &str)]).unwrap();
        let ext = right_kan_extension(&k, &f).unwrap().unwrap();
        assert_eq!(c.obj_id(ext.functor.ob(b.obj("t").unwrap())), "1");
        assert_eq!(c.obj_id(ext.functor.ob(b.obj("x").unwrap())), "2");
        assert!(ext.counit.validate().is_empty());
        assert!(verify_ran_universal(&k, &f, &ext).unwrap());
    }

    #[test]
    fn kan_extension_missing_meet() {
        let a = arc(discrete(2));
        let b = wedge();
        let k = Functor::from_ids(a.clone(), b, &[("0", "x"), ("1", "y")], &[] as &[(&str, &str)]).unwrap();
        let c = arc(discrete(2));
        let f = Functor::identity(&c);
        let f = Functor::new(a, c, f.omap, f.mmap);
        assert!(right_kan_extension(&k, &f).unwrap().is_none());
    }
}
