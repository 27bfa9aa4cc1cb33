use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::monad::FinMonad;
use crate::error::{Error, Result};
use crate::fincat::{CatRef, FinCat, FinCatData, Functor, FunctorData, NatTrans, NatTransData};
use crate::report::{ValidationReport, ViolationKind};

/// A diagram of shape `Δℓᶜ` in finite categories: categories `d1, d2, d3`,
/// functors `d0, d1f: d1 → d2`, `s0: d2 → d1`, `p0, p1, p2: d2 → d3` (the
/// faces `∂⁰, ∂¹, ∂²`) and 2-cells
///
/// * `sigma00: ∂⁰d⁰ ⇒ ∂¹d⁰`, `sigma01: ∂⁰d¹ ⇒ ∂²d⁰`, `sigma21: ∂²d¹ ⇒ ∂¹d¹`,
/// * `n0: Id ⇒ s⁰d⁰`, `n1: Id ⇒ s⁰d¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentInput {
    pub c1: CatRef,
    pub c2: CatRef,
    pub c3: CatRef,
    pub d0: Functor,
    pub d1: Functor,
    pub s0: Functor,
    pub p0: Functor,
    pub p1: Functor,
    pub p2: Functor,
    pub sigma00: NatTrans,
    pub sigma01: NatTrans,
    pub sigma21: NatTrans,
    pub n0: NatTrans,
    pub n1: NatTrans,
}

/// Wire form `descent/v1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentWire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub c1: FinCatData,
    pub c2: FinCatData,
    pub c3: FinCatData,
    pub d0: FunctorData,
    pub d1: FunctorData,
    pub s0: FunctorData,
    pub p0: FunctorData,
    pub p1: FunctorData,
    pub p2: FunctorData,
    pub sigma00: NatTransData,
    pub sigma01: NatTransData,
    pub sigma21: NatTransData,
    pub n0: NatTransData,
    pub n1: NatTransData,
}

impl DescentInput {
    /// Every functor an identity (or the unique functor between copies of one
    /// category) and every 2-cell an identity.
    pub fn constant(c: &CatRef) -> DescentInput {
        let id = Functor::identity(c);
        let t = NatTrans::identity(&id);
        DescentInput {
            c1: c.clone(),
            c2: c.clone(),
            c3: c.clone(),
            d0: id.clone(),
            d1: id.clone(),
            s0: id.clone(),
            p0: id.clone(),
            p1: id.clone(),
            p2: id,
            sigma00: t.clone(),
            sigma01: t.clone(),
            sigma21: t.clone(),
            n0: t.clone(),
            n1: t,
        }
    }

    pub fn from_wire(w: &DescentWire) -> Result<DescentInput> {
        if let Some(s) = &w.schema {
            if s != "descent/v1" {
                return Err(Error::UnsupportedSchema(s.clone()));
            }
        }
        let cat = |d: &FinCatData| -> Result<CatRef> { Ok(Arc::new(FinCat::new_valid(d)?)) };
        let (c1, c2, c3) = (cat(&w.c1)?, cat(&w.c2)?, cat(&w.c3)?);
        let d0 = w.d0.to_functor(&c1, &c2)?;
        let d1 = w.d1.to_functor(&c1, &c2)?;
        let s0 = w.s0.to_functor(&c2, &c1)?;
        let p0 = w.p0.to_functor(&c2, &c3)?;
        let p1 = w.p1.to_functor(&c2, &c3)?;
        let p2 = w.p2.to_functor(&c2, &c3)?;
        let id1 = Functor::identity(&c1);
        Ok(DescentInput {
            sigma00: w.sigma00.to_transformation(&p0.after(&d0)?, &p1.after(&d0)?)?,
            sigma01: w.sigma01.to_transformation(&p0.after(&d1)?, &p2.after(&d0)?)?,
            sigma21: w.sigma21.to_transformation(&p2.after(&d1)?, &p1.after(&d1)?)?,
            n0: w.n0.to_transformation(&id1, &s0.after(&d0)?)?,
            n1: w.n1.to_transformation(&id1, &s0.after(&d1)?)?,
            c1,
            c2,
            c3,
            d0,
            d1,
            s0,
            p0,
            p1,
            p2,
        })
    }

    pub fn to_wire(&self) -> DescentWire {
        let f = FunctorData::from_functor;
        let t = NatTransData::from_transformation;
        DescentWire {
            schema: Some("descent/v1".into()),
            c1: self.c1.to_data(),
            c2: self.c2.to_data(),
            c3: self.c3.to_data(),
            d0: f(&self.d0),
            d1: f(&self.d1),
            s0: f(&self.s0),
            p0: f(&self.p0),
            p1: f(&self.p1),
            p2: f(&self.p2),
            sigma00: t(&self.sigma00),
            sigma01: t(&self.sigma01),
            sigma21: t(&self.sigma21),
            n0: t(&self.n0),
            n1: t(&self.n1),
        }
    }
}

fn same(a: &CatRef, b: &CatRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Checks that every functor is a functor between the right categories and
/// every 2-cell is natural with exactly the boundary listed on
/// [`DescentInput`].
pub fn validate_descent_input(d: &DescentInput) -> ValidationReport {
    let mut r = ValidationReport::new();
    let functors = [
        ("d0", &d.d0, &d.c1, &d.c2),
        ("d1", &d.d1, &d.c1, &d.c2),
        ("s0", &d.s0, &d.c2, &d.c1),
        ("p0", &d.p0, &d.c2, &d.c3),
        ("p1", &d.p1, &d.c2, &d.c3),
        ("p2", &d.p2, &d.c2, &d.c3),
    ];
    for (name, f, a, b) in functors {
        if !same(&f.dom, a) || !same(&f.cod, b) {
            r.push(ViolationKind::Boundary, format!("{name} has the wrong domain or codomain"));
        } else {
            r.extend(f.validate().within(name));
        }
    }
    if !r.is_empty() {
        return r;
    }
    let after = |g: &Functor, f: &Functor| g.after(f).expect("checked above");
    let id1 = Functor::identity(&d.c1);
    let cells = [
        ("sigma00", &d.sigma00, after(&d.p0, &d.d0), after(&d.p1, &d.d0)),
        ("sigma01", &d.sigma01, after(&d.p0, &d.d1), after(&d.p2, &d.d0)),
        ("sigma21", &d.sigma21, after(&d.p2, &d.d1), after(&d.p1, &d.d1)),
        ("n0", &d.n0, id1.clone(), after(&d.s0, &d.d0)),
        ("n1", &d.n1, id1, after(&d.s0, &d.d1)),
    ];
    for (name, t, dom, cod) in cells {
        if t.dom != dom || t.cod != cod {
            r.push(ViolationKind::Boundary, format!("{name} has the wrong boundary"));
        } else {
            r.extend(t.validate().within(name));
        }
    }
    r
}

/// The diagram whose colax descent category is the category of algebras:
/// all three categories are the base, `d⁰ = ∂⁰ = T`, every other functor the
/// identity, `σ00 = μ`, `n0 = η` and the remaining 2-cells identities.
pub fn em_diagram(m: &FinMonad) -> DescentInput {
    let c = &m.base;
    let id = Functor::identity(c);
    let idt = NatTrans::identity(&id);
    let idtt = NatTrans::identity(&m.t);
    DescentInput {
        c1: c.clone(),
        c2: c.clone(),
        c3: c.clone(),
        d0: m.t.clone(),
        d1: id.clone(),
        s0: id.clone(),
        p0: m.t.clone(),
        p1: id.clone(),
        p2: id,
        sigma00: m.mult.clone(),
        sigma01: idtt.clone(),
        sigma21: idt.clone(),
        n0: m.unit.clone(),
        n1: idt,
    }
}
