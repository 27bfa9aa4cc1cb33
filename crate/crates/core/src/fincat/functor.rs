use std::collections::HashMap;
use std::sync::Arc;

use super::builder::CatBuilder;
use super::category::{Budget, CatRef, Mor, Obj};
use super::search::backtrack;
use crate::error::{Error, Result};
use crate::report::{ValidationReport, ViolationKind};

fn same_cat(a: &CatRef, b: &CatRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A functor between finite categories, stored as object and morphism maps.
#[derive(Debug, Clone)]
pub struct Functor {
    pub dom: CatRef,
    pub cod: CatRef,
    pub omap: Vec<Obj>,
    pub mmap: Vec<Mor>,
}

impl PartialEq for Functor {
    fn eq(&self, other: &Self) -> bool {
        self.omap == other.omap
            && self.mmap == other.mmap
            && same_cat(&self.dom, &other.dom)
            && same_cat(&self.cod, &other.cod)
    }
}

impl Eq for Functor {}

impl Functor {
    pub fn new(dom: CatRef, cod: CatRef, omap: Vec<Obj>, mmap: Vec<Mor>) -> Functor {
        Functor { dom, cod, omap, mmap }
    }

    /// Builds a functor from id maps; missing morphism entries for identities
    /// are filled with the identity of the image object.
    pub fn from_ids(
        dom: CatRef,
        cod: CatRef,
        omap: &[(impl AsRef<str>, impl AsRef<str>)],
        mmap: &[(impl AsRef<str>, impl AsRef<str>)],
    ) -> Result<Functor> {
        let mut om = vec![None; dom.num_objects()];
        for (a, b) in omap {
            om[dom.obj(a.as_ref())?.0] = Some(cod.obj(b.as_ref())?);
        }
        let om: Vec<Obj> = om
            .into_iter()
            .enumerate()
            .map(|(i, o)| o.ok_or_else(|| Error::MalformedInput(format!("object `{}` unmapped", dom.obj_id(Obj(i))))))
            .collect::<Result<_>>()?;
        let mut mm = vec![None; dom.num_morphisms()];
        for (f, g) in mmap {
            mm[dom.mor(f.as_ref())?.0] = Some(cod.mor(g.as_ref())?);
        }
        for o in dom.objects() {
            let i = dom.id(o);
            if mm[i.0].is_none() {
                mm[i.0] = Some(cod.id(om[o.0]));
            }
        }
        let mm: Vec<Mor> = mm
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.ok_or_else(|| Error::MalformedInput(format!("morphism `{}` unmapped", dom.mor_id(Mor(i))))))
            .collect::<Result<_>>()?;
        Ok(Functor::new(dom, cod, om, mm))
    }

    pub fn identity(c: &CatRef) -> Functor {
        Functor::new(c.clone(), c.clone(), c.objects().collect(), c.morphisms().collect())
    }

    /// The functor constant at object `x`.
    pub fn constant(dom: &CatRef, cod: &CatRef, x: Obj) -> Functor {
        Functor::new(
            dom.clone(),
            cod.clone(),
            vec![x; dom.num_objects()],
            vec![cod.id(x); dom.num_morphisms()],
        )
    }

    pub fn ob(&self, o: Obj) -> Obj {
        self.omap[o.0]
    }

    pub fn mor(&self, m: Mor) -> Mor {
        self.mmap[m.0]
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &Functor) -> Result<Functor> {
        if !same_cat(&inner.cod, &self.dom) {
            return Err(Error::BoundaryMismatch("functor composition: codomain ≠ domain".into()));
        }
        Ok(Functor::new(
            inner.dom.clone(),
            self.cod.clone(),
            inner.omap.iter().map(|&o| self.ob(o)).collect(),
            inner.mmap.iter().map(|&m| self.mor(m)).collect(),
        ))
    }

    /// Checks preservation of boundaries, identities and composition.
    pub fn validate(&self) -> ValidationReport {
        let (a, b) = (&self.dom, &self.cod);
        let mut r = ValidationReport::new();
        if self.omap.len() != a.num_objects() || self.mmap.len() != a.num_morphisms() {
            r.push(ViolationKind::Boundary, "functor maps have the wrong length");
            return r;
        }
        for f in a.morphisms() {
            let g = self.mor(f);
            if b.src(g) != self.ob(a.src(f)) || b.tgt(g) != self.ob(a.tgt(f)) {
                r.push(
                    ViolationKind::Boundary,
                    format!("image of {} has the wrong boundary", a.mor_id(f)),
                );
            }
        }
        if !r.is_empty() {
            return r;
        }
        for o in a.objects() {
            if self.mor(a.id(o)) != b.id(self.ob(o)) {
                r.push(ViolationKind::Identity, format!("identity of {} not preserved", a.obj_id(o)));
            }
        }
        for f in a.morphisms() {
            for &g in a.out_of(a.tgt(f)) {
                if b.try_compose(self.mor(g), self.mor(f)) != Some(self.mor(a.compose(g, f))) {
                    r.push(
                        ViolationKind::Composition,
                        format!("F({} ∘ {}) ≠ F{} ∘ F{}", a.mor_id(g), a.mor_id(f), a.mor_id(g), a.mor_id(f)),
                    );
                }
            }
        }
        r
    }
}

/// A natural transformation `dom ⇒ cod` given by its components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTrans {
    pub dom: Functor,
    pub cod: Functor,
    pub components: Vec<Mor>,
}

impl NatTrans {
    pub fn new(dom: Functor, cod: Functor, components: Vec<Mor>) -> NatTrans {
        NatTrans { dom, cod, components }
    }

    pub fn from_ids(dom: Functor, cod: Functor, components: &[(impl AsRef<str>, impl AsRef<str>)]) -> Result<NatTrans> {
        let (a, b) = (dom.dom.clone(), dom.cod.clone());
        let mut comps = vec![None; a.num_objects()];
        for (o, m) in components {
            comps[a.obj(o.as_ref())?.0] = Some(b.mor(m.as_ref())?);
        }
        let comps = comps
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.ok_or_else(|| Error::MalformedInput(format!("no component at `{}`", a.obj_id(Obj(i))))))
            .collect::<Result<_>>()?;
        Ok(NatTrans::new(dom, cod, comps))
    }

    pub fn identity(f: &Functor) -> NatTrans {
        let comps = f.dom.objects().map(|o| f.cod.id(f.ob(o))).collect();
        NatTrans::new(f.clone(), f.clone(), comps)
    }

    pub fn at(&self, o: Obj) -> Mor {
        self.components[o.0]
    }

    fn cat(&self) -> &CatRef {
        &self.dom.cod
    }

    /// Vertical composite `self · inner : inner.dom ⇒ self.cod`.
    pub fn vcomp(&self, inner: &NatTrans) -> Result<NatTrans> {
        if inner.cod != self.dom {
            return Err(Error::BoundaryMismatch("vertical composition: codomain ≠ domain".into()));
        }
        let c = self.cat();
        let comps = inner
            .components
            .iter()
            .zip(&self.components)
            .map(|(&f, &g)| c.compose(g, f))
            .collect();
        Ok(NatTrans::new(inner.dom.clone(), self.cod.clone(), comps))
    }

    /// Left whiskering `h · self : h∘F ⇒ h∘G`.
    pub fn whisker_left(&self, h: &Functor) -> Result<NatTrans> {
        let dom = h.after(&self.dom)?;
        let cod = h.after(&self.cod)?;
        let comps = self.components.iter().map(|&m| h.mor(m)).collect();
        Ok(NatTrans::new(dom, cod, comps))
    }

    /// Right whiskering `self · k : F∘k ⇒ G∘k`.
    pub fn whisker_right(&self, k: &Functor) -> Result<NatTrans> {
        let dom = self.dom.after(k)?;
        let cod = self.cod.after(k)?;
        let comps = k.omap.iter().map(|&o| self.at(o)).collect();
        Ok(NatTrans::new(dom, cod, comps))
    }

    /// Checks component boundaries and every naturality square.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        if !same_cat(&self.dom.dom, &self.cod.dom) || !same_cat(&self.dom.cod, &self.cod.cod) {
            r.push(ViolationKind::Boundary, "transformation between non-parallel functors");
            return r;
        }
        let (a, b) = (&self.dom.dom, &self.dom.cod);
        if self.components.len() != a.num_objects() {
            r.push(ViolationKind::Boundary, "wrong number of components");
            return r;
        }
        for o in a.objects() {
            let c = self.at(o);
            if b.src(c) != self.dom.ob(o) || b.tgt(c) != self.cod.ob(o) {
                r.push(
                    ViolationKind::Boundary,
                    format!("component at {} is {} with the wrong boundary", a.obj_id(o), b.mor_id(c)),
                );
            }
        }
        if !r.is_empty() {
            return r;
        }
        for m in a.morphisms() {
            let (x, y) = (a.src(m), a.tgt(m));
            let lhs = b.compose(self.cod.mor(m), self.at(x));
            let rhs = b.compose(self.at(y), self.dom.mor(m));
            if lhs != rhs {
                r.push(
                    ViolationKind::Naturality,
                    format!("naturality square for {} does not commute", a.mor_id(m)),
                );
            }
        }
        r
    }

    /// Invertible in every component.
    pub fn is_invertible(&self) -> bool {
        self.components.iter().all(|&m| self.cat().is_iso(m))
    }
}

/// Every functor `a → b`, in lexicographic order of (object map, morphism map).
pub fn enumerate_functors(a: &CatRef, b: &CatRef) -> Vec<Functor> {
    let mut out = Vec::new();
    for_each_functor(a, b, |f| {
        out.push(f);
        true
    });
    out
}

pub(crate) fn for_each_functor(a: &CatRef, b: &CatRef, mut visit: impl FnMut(Functor) -> bool) {
    let n = a.num_objects();
    let obj_cands = vec![(0..b.num_objects()).collect::<Vec<_>>(); n];
    // non-identity morphisms of `a`, grouped by the later endpoint so that
    // the object search can check hom-set emptiness incrementally
    let non_id: Vec<Mor> = a.morphisms().filter(|&m| !a.is_identity(m)).collect();
    let position: HashMap<Mor, usize> = non_id.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    // triples (g, f, g∘f) checked once all three images are known
    let mut checks: Vec<Vec<(Mor, Mor, Mor)>> = vec![Vec::new(); non_id.len()];
    for f in a.morphisms() {
        for &g in a.out_of(a.tgt(f)) {
            let h = a.compose(g, f);
            let last = [f, g, h].iter().filter_map(|m| position.get(m)).max().copied();
            if let Some(k) = last {
                checks[k].push((g, f, h));
            }
        }
    }
    backtrack(
        &obj_cands,
        |om| {
            let k = om.len() - 1;
            a.objects().take(k + 1).all(|x| {
                [(x, Obj(k)), (Obj(k), x)].iter().all(|&(s, t)| {
                    a.hom(s, t).is_empty() || !b.hom(Obj(om[s.0]), Obj(om[t.0])).is_empty()
                })
            })
        },
        |om| {
            let omap: Vec<Obj> = om.iter().map(|&i| Obj(i)).collect();
            let mor_cands: Vec<Vec<usize>> = non_id
                .iter()
                .map(|&m| b.hom(omap[a.src(m).0], omap[a.tgt(m).0]).iter().map(|x| x.0).collect())
                .collect();
            let image = |mm: &[usize], m: Mor| -> Mor {
                if a.is_identity(m) {
                    b.id(omap[a.src(m).0])
                } else {
                    Mor(mm[position[&m]])
                }
            };
            backtrack(
                &mor_cands,
                |mm| {
                    checks[mm.len() - 1]
                        .iter()
                        .all(|&(g, f, h)| b.try_compose(image(mm, g), image(mm, f)) == Some(image(mm, h)))
                },
                |mm| {
                    let mmap = a.morphisms().map(|m| image(mm, m)).collect();
                    visit(Functor::new(a.clone(), b.clone(), omap.clone(), mmap))
                },
            )
        },
    );
}

/// Every natural transformation `f ⇒ g`, in lexicographic component order.
pub fn enumerate_transformations(f: &Functor, g: &Functor) -> Vec<NatTrans> {
    let (a, b) = (&f.dom, &f.cod);
    let cands: Vec<Vec<usize>> = a
        .objects()
        .map(|o| b.hom(f.ob(o), g.ob(o)).iter().map(|m| m.0).collect())
        .collect();
    // naturality squares, each checked when its later endpoint is assigned
    let mut squares: Vec<Vec<Mor>> = vec![Vec::new(); a.num_objects()];
    for m in a.morphisms() {
        squares[a.src(m).0.max(a.tgt(m).0)].push(m);
    }
    let mut out = Vec::new();
    backtrack(
        &cands,
        |cs| {
            squares[cs.len() - 1].iter().all(|&m| {
                let (x, y) = (a.src(m), a.tgt(m));
                b.compose(g.mor(m), Mor(cs[x.0])) == b.compose(Mor(cs[y.0]), f.mor(m))
            })
        },
        |cs| {
            out.push(NatTrans::new(f.clone(), g.clone(), cs.iter().map(|&i| Mor(i)).collect()));
            true
        },
    );
    out
}

/// The category `[a, b]` of functors and natural transformations, with the
/// data needed to translate between its ids and the underlying functors.
#[derive(Debug, Clone)]
pub struct FunctorCategory {
    pub cat: CatRef,
    /// Functor behind object `i` of `cat`.
    pub functors: Vec<Functor>,
    /// Transformation behind morphism `i` of `cat`.
    pub transformations: Vec<NatTrans>,
    functor_index: HashMap<(Vec<Obj>, Vec<Mor>), Obj>,
    trans_index: HashMap<(Obj, Obj, Vec<Mor>), Mor>,
}

fn padded(prefix: &str, i: usize, n: usize) -> String {
    let width = n.max(1).to_string().len();
    format!("{prefix}{i:0width$}")
}

impl FunctorCategory {
    /// Object of `cat` standing for functor `f`.
    pub fn object_of(&self, f: &Functor) -> Option<Obj> {
        self.functor_index.get(&(f.omap.clone(), f.mmap.clone())).copied()
    }

    /// Morphism of `cat` standing for transformation `t`.
    pub fn morphism_of(&self, t: &NatTrans) -> Option<Mor> {
        let s = self.object_of(&t.dom)?;
        let e = self.object_of(&t.cod)?;
        self.trans_index.get(&(s, e, t.components.clone())).copied()
    }

    pub fn functor(&self, o: Obj) -> &Functor {
        &self.functors[o.0]
    }

    pub fn transformation(&self, m: Mor) -> &NatTrans {
        &self.transformations[m.0]
    }
}

/// Builds `[a, b]`: objects are functors named `F<i>`, morphisms natural
/// transformations named `F<i>=>F<j>#<k>`, composed componentwise.
pub fn functor_category(a: &CatRef, b: &CatRef) -> Result<FunctorCategory> {
    functor_category_with_budget(a, b, Budget::default())
}

pub fn functor_category_with_budget(a: &CatRef, b: &CatRef, budget: Budget) -> Result<FunctorCategory> {
    let functors = enumerate_functors(a, b);
    budget.check(functors.len(), 0)?;
    let n = functors.len();
    let names: Vec<String> = (0..n).map(|i| padded("F", i, n)).collect();
    let mut all: Vec<(String, NatTrans)> = Vec::new();
    for (i, f) in functors.iter().enumerate() {
        for (j, g) in functors.iter().enumerate() {
            let ts = enumerate_transformations(f, g);
            let len = ts.len();
            for (k, t) in ts.into_iter().enumerate() {
                all.push((format!("{}=>{}#{}", names[i], names[j], padded("", k, len)), t));
            }
            budget.check(n, all.len())?;
        }
    }
    all.sort_by(|x, y| x.0.cmp(&y.0));
    let functor_index: HashMap<(Vec<Obj>, Vec<Mor>), Obj> = functors
        .iter()
        .enumerate()
        .map(|(i, f)| ((f.omap.clone(), f.mmap.clone()), Obj(i)))
        .collect();
    let obj_of = |f: &Functor| functor_index[&(f.omap.clone(), f.mmap.clone())];
    let trans_index: HashMap<(Obj, Obj, Vec<Mor>), Mor> = all
        .iter()
        .enumerate()
        .map(|(i, (_, t))| ((obj_of(&t.dom), obj_of(&t.cod), t.components.clone()), Mor(i)))
        .collect();

    let mut builder = CatBuilder::new();
    for (i, f) in functors.iter().enumerate() {
        let id = NatTrans::identity(f);
        let idx = trans_index[&(Obj(i), Obj(i), id.components)];
        builder = builder.object_with_identity(names[i].clone(), all[idx.0].0.clone());
    }
    for (name, t) in &all {
        if t.dom == t.cod && t.components == NatTrans::identity(&t.dom).components {
            continue;
        }
        builder = builder.morphism(name.clone(), names[obj_of(&t.dom).0].clone(), names[obj_of(&t.cod).0].clone());
    }
    for (n1, t) in &all {
        for (n2, s) in &all {
            if obj_of(&t.cod) != obj_of(&s.dom) {
                continue;
            }
            let st = s.vcomp(t)?;
            let r = trans_index[&(obj_of(&st.dom), obj_of(&st.cod), st.components)];
            builder = builder.composite(n2.clone(), n1.clone(), all[r.0].0.clone());
        }
    }
    let cat = Arc::new(builder.build()?);
    debug_assert!(cat.objects().all(|o| cat.obj_id(o) == names[o.0]));
    let transformations = all.into_iter().map(|(_, t)| t).collect();
    Ok(FunctorCategory {
        cat,
        functors,
        transformations,
        functor_index,
        trans_index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCat;
    use crate::fincat::builder::{chain, cyclic_group, discrete, terminal, walking_idempotent};

    fn arc(c: FinCat) -> CatRef {
        Arc::new(c)
    }

    #[test]
    fn functors_between_chains_are_monotone_maps() {
        let two = arc(chain(2));
        let three = arc(chain(3));
        assert_eq!(enumerate_functors(&two, &two).len(), 3);
        assert_eq!(enumerate_functors(&two, &three).len(), 6);
        assert_eq!(enumerate_functors(&three, &three).len(), 10);
        for f in enumerate_functors(&three, &two) {
            assert!(f.validate().is_empty());
        }
    }

    #[test]
    fn group_endofunctors_are_homomorphisms() {
        let z3 = arc(cyclic_group(3));
        assert_eq!(enumerate_functors(&z3, &z3).len(), 3);
        let z2 = arc(cyclic_group(2));
        // only the trivial homomorphism ℤ/3 → ℤ/2
        assert_eq!(enumerate_functors(&z3, &z2).len(), 1);
    }

    #[test]
    fn idempotent_functors() {
        let e = arc(walking_idempotent());
        // e ↦ id or e ↦ e
        assert_eq!(enumerate_functors(&e, &e).len(), 2);
    }

    #[test]
    fn broken_functor_reported() {
        let two = arc(chain(2));
        let mut f = Functor::identity(&two);
        f.mmap[two.mor("0->1").unwrap().0] = two.mor("id_0").unwrap();
        assert!(f.validate().has(ViolationKind::Boundary));
    }

    #[test]
    fn naturality_violation_reported() {
        let z2 = arc(cyclic_group(2));
        let id = Functor::identity(&z2);
        let t = NatTrans::new(id.clone(), id.clone(), vec![z2.mor("r1").unwrap()]);
        assert!(t.validate().is_empty());
        let two = arc(chain(2));
        let c0 = Functor::constant(&two, &two, Obj(0));
        let c1 = Functor::constant(&two, &two, Obj(1));
        assert!(enumerate_transformations(&c1, &c0).is_empty());
        assert_eq!(enumerate_transformations(&c0, &c1).len(), 1);
    }

    #[test]
    fn functor_category_of_terminal_domain_has_same_size() {
        let b = arc(chain(3));
        let fc = functor_category(&arc(terminal()), &b).unwrap();
        assert_eq!(fc.cat.num_objects(), 3);
        assert_eq!(fc.cat.num_morphisms(), 6);
        assert!(fc.cat.validate().is_empty());
    }

    #[test]
    fn functor_category_sizes() {
        let two = arc(chain(2));
        let fc = functor_category(&two, &two).unwrap();
        assert_eq!((fc.cat.num_objects(), fc.cat.num_morphisms()), (3, 6));
        let fc = functor_category(&arc(discrete(2)), &two).unwrap();
        assert_eq!((fc.cat.num_objects(), fc.cat.num_morphisms()), (4, 9));
        assert!(fc.cat.validate().is_empty());
        for m in fc.cat.morphisms() {
            assert_eq!(fc.morphism_of(fc.transformation(m)), Some(m));
        }
    }
}
