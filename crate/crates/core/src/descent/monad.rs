use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::cells::Cells;
use crate::error::{Error, Result};
use crate::fincat::{CatRef, FinCat, FinCatData, Functor, FunctorData, Mor, NatTrans, NatTransData, Obj};
use crate::mates::{require_adjunction, AdjunctionData};
use crate::random::RandomPoset;
use crate::report::{ValidationReport, ViolationKind};

/// A monad `(T, μ, η)` on a finite category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinMonad {
    pub base: CatRef,
    pub t: Functor,
    pub mult: NatTrans,
    pub unit: NatTrans,
}

/// Wire form `monad/v1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonadWire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub base: FinCatData,
    pub functor: FunctorData,
    pub mult: NatTransData,
    pub unit: NatTransData,
}

/// An Eilenberg–Moore algebra `a: T x → x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Algebra {
    pub carrier: Obj,
    pub action: Mor,
}

/// The category of algebras with the underlying data of its cells.
#[derive(Debug, Clone)]
pub struct AlgebraCategory {
    pub cat: CatRef,
    /// Algebra behind each object of `cat`.
    pub algebras: Vec<Algebra>,
    /// Base morphism behind each morphism of `cat`.
    pub underlying: Vec<Mor>,
}

impl FinMonad {
    pub fn new(t: Functor, mult: NatTrans, unit: NatTrans) -> FinMonad {
        FinMonad {
            base: t.dom.clone(),
            t,
            mult,
            unit,
        }
    }

    /// `Id` with identity multiplication and unit.
    pub fn identity(c: &CatRef) -> FinMonad {
        let id = Functor::identity(c);
        FinMonad::new(id.clone(), NatTrans::identity(&id), NatTrans::identity(&id))
    }

    /// The monad of a closure operator on a poset (given by element indices).
    pub fn closure(p: &RandomPoset, c: &[usize]) -> FinMonad {
        let t = p.functor_to(p, c);
        let tt = t.after(&t).expect("endofunctor");
        let base = p.cat.clone();
        let mult = NatTrans::new(tt, t.clone(), base.objects().map(|o| base.id(t.ob(o))).collect());
        let unit = NatTrans::new(
            Functor::identity(&base),
            t.clone(),
            base.objects().map(|o| base.hom(o, t.ob(o))[0]).collect(),
        );
        FinMonad::new(t, mult, unit)
    }

    /// Structural checks, then associativity `μ∘Tμ = μ∘μT` and the unit laws
    /// `μ∘Tη = id = μ∘ηT` at every object.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        let c = &self.base;
        r.extend(self.t.validate().within("functor"));
        if !r.is_empty() {
            return r;
        }
        if *self.t.cod != **c {
            r.push(ViolationKind::Boundary, "T is not an endofunctor");
            return r;
        }
        let id = Functor::identity(c);
        let tt = self.t.after(&self.t).expect("endofunctor");
        if self.mult.dom != tt || self.mult.cod != self.t {
            r.push(ViolationKind::Boundary, "multiplication is not T∘T ⇒ T");
        }
        if self.unit.dom != id || self.unit.cod != self.t {
            r.push(ViolationKind::Boundary, "unit is not Id ⇒ T");
        }
        if !r.is_empty() {
            return r;
        }
        r.extend(self.mult.validate().within("multiplication"));
        r.extend(self.unit.validate().within("unit"));
        if !r.is_empty() {
            return r;
        }
        for x in c.objects() {
            let tx = self.t.ob(x);
            let mu = self.mult.at(x);
            let lhs = c.compose(mu, self.t.mor(mu));
            let rhs = c.compose(mu, self.mult.at(tx));
            if lhs != rhs {
                r.push(ViolationKind::MonadAssociativity, format!("at {}", c.obj_id(x)));
            }
            let left = c.compose(mu, self.t.mor(self.unit.at(x)));
            let right = c.compose(mu, self.unit.at(tx));
            if left != c.id(tx) || right != c.id(tx) {
                r.push(ViolationKind::MonadUnit, format!("at {}", c.obj_id(x)));
            }
        }
        r
    }

    pub fn require_valid(&self) -> Result<()> {
        let r = self.validate();
        if r.is_empty() {
            Ok(())
        } else {
            Err(Error::NotAMonad(r.to_string().trim_end().to_string()))
        }
    }

    pub fn from_wire(w: &MonadWire) -> Result<FinMonad> {
        if let Some(s) = &w.schema {
            if s != "monad/v1" {
                return Err(Error::UnsupportedSchema(s.clone()));
            }
        }
        let base: CatRef = Arc::new(FinCat::new_valid(&w.base)?);
        let t = w.functor.to_functor(&base, &base)?;
        let mult = w.mult.to_transformation(&t.after(&t)?, &t)?;
        let unit = w.unit.to_transformation(&Functor::identity(&base), &t)?;
        Ok(FinMonad::new(t, mult, unit))
    }

    pub fn to_wire(&self) -> MonadWire {
        MonadWire {
            schema: Some("monad/v1".into()),
            base: self.base.to_data(),
            functor: FunctorData::from_functor(&self.t),
            mult: NatTransData::from_transformation(&self.mult),
            unit: NatTransData::from_transformation(&self.unit),
        }
    }

    /// `a∘T(a) = a∘μ_x` and `a∘η_x = id_x`.
    pub fn is_algebra(&self, x: Obj, a: Mor) -> bool {
        let c = &self.base;
        c.src(a) == self.t.ob(x)
            && c.tgt(a) == x
            && c.compose(a, self.t.mor(a)) == c.compose(a, self.mult.at(x))
            && c.compose(a, self.unit.at(x)) == c.id(x)
    }
}

/// The monad `g∘f` of an adjunction, with `μ = gεf` and unit `η`.
pub fn monad_from_adjunction(adj: &AdjunctionData) -> Result<FinMonad> {
    require_adjunction(adj)?;
    let t = adj.g.after(&adj.f)?;
    let y = adj.y();
    let mult = NatTrans::new(
        t.after(&t)?,
        t.clone(),
        y.objects().map(|o| adj.g.mor(adj.counit.at(adj.f.ob(o)))).collect(),
    );
    let m = FinMonad::new(t, mult, adj.unit.clone());
    m.require_valid()?;
    Ok(m)
}

/// Algebras and their homomorphisms, found by exhaustive enumeration of
/// pairs `(x, a: Tx → x)` and of base morphisms `m` with `m∘a = a'∘T(m)`.
/// Objects are named `(x,a)` and morphisms `m:(x,a)->(y,b)`.
pub fn eilenberg_moore(m: &FinMonad) -> Result<AlgebraCategory> {
    m.require_valid()?;
    let c = &m.base;
    let mut algebras = Vec::new();
    for x in c.objects() {
        for &a in c.hom(m.t.ob(x), x) {
            if m.is_algebra(x, a) {
                algebras.push(Algebra { carrier: x, action: a });
            }
        }
    }
    let mut cells = Cells::new(c);
    for al in &algebras {
        cells.object(format!("({},{})", c.obj_id(al.carrier), c.mor_id(al.action)), c.id(al.carrier));
    }
    for (i, s) in algebras.iter().enumerate() {
        for (j, t) in algebras.iter().enumerate() {
            for &h in c.hom(s.carrier, t.carrier) {
                if c.compose(h, s.action) == c.compose(t.action, m.t.mor(h)) {
                    cells.arrow(h, i, j);
                }
            }
        }
    }
    let (cat, underlying) = cells.build()?;
    let mut ordered: Vec<(String, Algebra)> = algebras
        .iter()
        .map(|a| (format!("({},{})", c.obj_id(a.carrier), c.mor_id(a.action)), *a))
        .collect();
    ordered.sort();
    Ok(AlgebraCategory {
        cat,
        algebras: ordered.into_iter().map(|(_, a)| a).collect(),
        underlying,
    })
}
