use super::cells::Cells;
use super::diagram::DescentInput;
use super::monad::FinMonad;
use crate::error::{Error, Result};
use crate::fincat::{functor_category, CatRef, Functor, FunctorCategory, NatTrans, Obj};

/// A functor `f: Y → Z` with a colax structure `φ: f∘T_Y ⇒ T_Z∘f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonadMorphism {
    pub f: Functor,
    pub phi: NatTrans,
}

/// Colax monad morphisms `y → z` and the transformations between them.
#[derive(Debug, Clone)]
pub struct MonadMorphismCategory {
    pub cat: CatRef,
    /// The monad morphism behind each object of `cat`.
    pub objects: Vec<MonadMorphism>,
    /// The transformation behind each morphism of `cat`.
    pub transformations: Vec<NatTrans>,
    /// The functor category `[Y, Z]` the cells live in.
    pub functors: FunctorCategory,
}

/// `φ ∘ fμ = μf ∘ Tφ ∘ φT` and `φ ∘ fη = ηf`, componentwise.
pub fn is_monad_morphism(y: &FinMonad, z: &FinMonad, f: &Functor, phi: &NatTrans) -> bool {
    let zc = &z.base;
    y.base.objects().all(|o| {
        let fo = f.ob(o);
        let mult_lhs = zc.compose(phi.at(o), f.mor(y.mult.at(o)));
        let mult_rhs = zc.compose_path(phi.at(y.t.ob(o)), &[z.t.mor(phi.at(o)), z.mult.at(fo)]);
        let unit_lhs = zc.compose(phi.at(o), f.mor(y.unit.at(o)));
        mult_lhs == mult_rhs && unit_lhs == z.unit.at(fo)
    })
}

/// `T·𝔪 ∘ φ = ψ ∘ 𝔪·T`, componentwise.
pub fn is_monad_transformation(y: &FinMonad, z: &FinMonad, s: &MonadMorphism, t: &MonadMorphism, m: &NatTrans) -> bool {
    let zc = &z.base;
    y.base.objects().all(|o| {
        zc.compose(z.t.mor(m.at(o)), s.phi.at(o)) == zc.compose(t.phi.at(o), m.at(y.t.ob(o)))
    })
}

fn check_pair(y: &FinMonad, z: &FinMonad) -> Result<()> {
    y.require_valid()?;
    z.require_valid()?;
    Ok(())
}

/// Enumerates colax monad morphisms and their transformations directly from
/// the equations. Objects are named `(F<i>,<φ>)` after the objects and
/// morphisms of `[Y, Z]`.
pub fn monad_morphism_category(y: &FinMonad, z: &FinMonad) -> Result<MonadMorphismCategory> {
    check_pair(y, z)?;
    let fc = functor_category(&y.base, &z.base)?;
    let cat = &fc.cat;
    let mut objects = Vec::new();
    for o in cat.objects() {
        let f = fc.functor(o);
        let (Some(s), Some(t)) = (fc.object_of(&f.after(&y.t)?), fc.object_of(&z.t.after(f)?)) else {
            return Err(Error::BoundaryMismatch("whiskered functor missing from [Y, Z]".into()));
        };
        for &phi in cat.hom(s, t) {
            if is_monad_morphism(y, z, f, fc.transformation(phi)) {
                objects.push((o, phi));
            }
        }
    }
    let mut cells = Cells::new(cat);
    for &(o, phi) in &objects {
        cells.object(format!("({},{})", cat.obj_id(o), cat.mor_id(phi)), cat.id(o));
    }
    let mm = |(o, phi): (Obj, crate::fincat::Mor)| MonadMorphism {
        f: fc.functor(o).clone(),
        phi: fc.transformation(phi).clone(),
    };
    for (i, &s) in objects.iter().enumerate() {
        for (j, &t) in objects.iter().enumerate() {
            for &m in cat.hom(s.0, t.0) {
                if is_monad_transformation(y, z, &mm(s), &mm(t), fc.transformation(m)) {
                    cells.arrow(m, i, j);
                }
            }
        }
    }
    let (built, underlying) = cells.build()?;
    let mut named: Vec<(String, MonadMorphism)> = objects
        .iter()
        .map(|&(o, phi)| (format!("({},{})", cat.obj_id(o), cat.mor_id(phi)), mm((o, phi))))
        .collect();
    named.sort_by(|a, b| a.0.cmp(&b.0));
    let transformations = underlying.iter().map(|&m| fc.transformation(m).clone()).collect();
    Ok(MonadMorphismCategory {
        cat: built,
        objects: named.into_iter().map(|(_, m)| m).collect(),
        transformations,
        functors: fc,
    })
}

/// The diagram whose colax descent category is the category of monad
/// morphisms `y → z`. All three categories are `[Y, Z]`, and for `f` in it
///
/// * `d⁰f = f∘T_Y`, `d¹f = T_Z∘f`, `∂⁰g = g∘T_Y`, `∂¹ = s⁰ = Id`, `∂²g = T_Z∘g`,
/// * `σ00_f = fμ_Y`, `σ01_f = id`, `σ21_f = μ_Z f`, `n0_f = fη_Y`, `n1_f = η_Z f`.
///
/// A descent pair `(f, ξ)` is then exactly a monad morphism `(f, φ = ξ)`.
pub fn monad_morphism_diagram(y: &FinMonad, z: &FinMonad) -> Result<(DescentInput, FunctorCategory)> {
    check_pair(y, z)?;
    let fc = functor_category(&y.base, &z.base)?;
    let cat = fc.cat.clone();
    let missing = || Error::BoundaryMismatch("whiskered cell missing from [Y, Z]".into());
    let on_functor_category = |pre: bool| -> Result<Functor> {
        let mut omap = Vec::new();
        for o in cat.objects() {
            let f = fc.functor(o);
            let g = if pre { f.after(&y.t)? } else { z.t.after(f)? };
            omap.push(fc.object_of(&g).ok_or_else(missing)?);
        }
        let mut mmap = Vec::new();
        for m in cat.morphisms() {
            let t = fc.transformation(m);
            let w = if pre { t.whisker_right(&y.t)? } else { t.whisker_left(&z.t)? };
            mmap.push(fc.morphism_of(&w).ok_or_else(missing)?);
        }
        Ok(Functor::new(cat.clone(), cat.clone(), omap, mmap))
    };
    let pre = on_functor_category(true)?;
    let post = on_functor_category(false)?;
    let id = Functor::identity(&cat);
    let cell = |dom: Functor, cod: Functor, at: &dyn Fn(&Functor) -> Result<NatTrans>| -> Result<NatTrans> {
        let mut comps = Vec::new();
        for o in cat.objects() {
            comps.push(fc.morphism_of(&at(fc.functor(o))?).ok_or_else(missing)?);
        }
        Ok(NatTrans::new(dom, cod, comps))
    };
    let pp = pre.after(&pre)?;
    let qq = post.after(&post)?;
    let pq = pre.after(&post)?;
    let sigma00 = cell(pp, pre.clone(), &|f| y.mult.whisker_left(f))?;
    let sigma01 = NatTrans::identity(&pq);
    let sigma21 = cell(qq, post.clone(), &|f| z.mult.whisker_right(f))?;
    let n0 = cell(id.clone(), pre.clone(), &|f| y.unit.whisker_left(f))?;
    let n1 = cell(id.clone(), post.clone(), &|f| z.unit.whisker_right(f))?;
    let d = DescentInput {
        c1: cat.clone(),
        c2: cat.clone(),
        c3: cat.clone(),
        d0: pre.clone(),
        d1: post.clone(),
        s0: id.clone(),
        p0: pre,
        p1: id,
        p2: post,
        sigma00,
        sigma01,
        sigma21,
        n0,
        n1,
    };
    Ok((d, fc))
}
