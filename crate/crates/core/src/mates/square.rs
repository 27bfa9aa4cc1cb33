use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::adjunction::{require_adjunction, AdjunctionData};
use crate::error::{Error, Result};
use super::adjunction::AdjunctionWire;
use crate::fincat::{CatRef, Functor, FunctorData, NatTrans, NatTransData};

/// A square with `l ⊣ u` (`l: W → X`) on one side, `f ⊣ g` (`f: Z → Y`) on the
/// other, functors `m: X → Y`, `n: W → Z` and a 2-cell `α: n∘u ⇒ g∘m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MateSquare {
    pub adj_lu: AdjunctionData,
    pub adj_fg: AdjunctionData,
    pub m: Functor,
    pub n: Functor,
    pub alpha: NatTrans,
}

/// Outcome of the Beck–Chevalley test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum BeckChevalley {
    Satisfied,
    /// The first object (in id order) whose mate component is not invertible.
    Violated { object: String, component: String },
}

/// Wire form `square/v1`. `l ⊣ u` is `lu` (`l: W → X`), `f ⊣ g` is `fg`
/// (`f: Z → Y`); `m: X → Y`, `n: W → Z` and `alpha: n∘u ⇒ g∘m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MateSquareWire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub lu: AdjunctionWire,
    pub fg: AdjunctionWire,
    pub m: FunctorData,
    pub n: FunctorData,
    pub alpha: NatTransData,
}

impl MateSquare {
    fn l(&self) -> &Functor {
        &self.adj_lu.f
    }

    fn u(&self) -> &Functor {
        &self.adj_lu.g
    }

    fn f(&self) -> &Functor {
        &self.adj_fg.f
    }

    fn g(&self) -> &Functor {
        &self.adj_fg.g
    }

    /// Checks that the four functors fit together and that `α` has boundary
    /// `n∘u ⇒ g∘m`; does not check the adjunctions.
    pub fn check_boundaries(&self) -> Result<()> {
        let mismatch = |what: &str| Err(Error::BoundaryMismatch(what.into()));
        if !same(&self.m.dom, &self.l().cod) || !same(&self.m.cod, &self.f().cod) {
            return mismatch("m must go from the codomain of l to the codomain of f");
        }
        if !same(&self.n.dom, &self.l().dom) || !same(&self.n.cod, &self.f().dom) {
            return mismatch("n must go from the domain of l to the domain of f");
        }
        let (Ok(nu), Ok(gm)) = (self.n.after(self.u()), self.g().after(&self.m)) else {
            return mismatch("functors in the square do not compose");
        };
        if self.alpha.dom != nu || self.alpha.cod != gm {
            return mismatch("alpha must be n∘u ⇒ g∘m");
        }
        Ok(())
    }

    pub fn from_wire(w: &MateSquareWire) -> Result<MateSquare> {
        if let Some(s) = &w.schema {
            if s != "square/v1" {
                return Err(Error::UnsupportedSchema(s.clone()));
            }
        }
        let adj_lu = AdjunctionData::from_wire(&w.lu)?;
        let adj_fg = AdjunctionData::from_wire(&w.fg)?;
        let m = w.m.to_functor(adj_lu.z(), adj_fg.z())?;
        let n = w.n.to_functor(adj_lu.y(), adj_fg.y())?;
        let alpha = w.alpha.to_transformation(&n.after(&adj_lu.g)?, &adj_fg.g.after(&m)?)?;
        Ok(MateSquare {
            adj_lu,
            adj_fg,
            m,
            n,
            alpha,
        })
    }

    pub fn to_wire(&self) -> MateSquareWire {
        MateSquareWire {
            schema: Some("square/v1".into()),
            lu: self.adj_lu.to_wire(),
            fg: self.adj_fg.to_wire(),
            m: FunctorData::from_functor(&self.m),
            n: FunctorData::from_functor(&self.n),
            alpha: NatTransData::from_transformation(&self.alpha),
        }
    }

    fn require(&self) -> Result<()> {
        self.check_boundaries()?;
        require_adjunction(&self.adj_lu)?;
        require_adjunction(&self.adj_fg)
    }

    /// Identity adjunctions on `c` and `d`, `α = id` for an `m: c → d` with
    /// `n = m`.
    pub fn trivial(m: &Functor) -> MateSquare {
        MateSquare {
            adj_lu: AdjunctionData::identity(&m.dom),
            adj_fg: AdjunctionData::identity(&m.cod),
            m: m.clone(),
            n: m.clone(),
            alpha: NatTrans::identity(m),
        }
    }
}

fn same(a: &CatRef, b: &CatRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// The mate `f∘n ⇒ m∘l` of `α`: at `w` it is
/// `ε_{m l w} ∘ f(α_{l w}) ∘ f(n(η_w))`, with `η` the unit of `l ⊣ u` and `ε`
/// the counit of `f ⊣ g`.
pub fn mate(sq: &MateSquare) -> Result<NatTrans> {
    sq.require()?;
    let (l, f, m, n) = (sq.l(), sq.f(), &sq.m, &sq.n);
    let y = &f.cod;
    let eta = &sq.adj_lu.unit;
    let eps = &sq.adj_fg.counit;
    let comps = l
        .dom
        .objects()
        .map(|w| {
            let lw = l.ob(w);
            let a = f.mor(n.mor(eta.at(w)));
            let b = f.mor(sq.alpha.at(lw));
            let c = eps.at(m.ob(lw));
            y.compose(c, y.compose(b, a))
        })
        .collect();
    Ok(NatTrans::new(f.after(n)?, m.after(l)?, comps))
}

/// Inverse of [`mate`]: from `β: f∘n ⇒ m∘l` back to `n∘u ⇒ g∘m`, at `x`
/// `g(m(μ_x)) ∘ g(β_{u x}) ∘ η'_{n u x}` with `μ` the counit of `l ⊣ u` and
/// `η'` the unit of `f ⊣ g`. The `alpha` field of `sq` is ignored apart from
/// boundary checks.
pub fn mate_inverse(sq: &MateSquare, beta: &NatTrans) -> Result<NatTrans> {
    sq.require()?;
    let (l, u, f, g, m, n) = (sq.l(), sq.u(), sq.f(), sq.g(), &sq.m, &sq.n);
    if beta.dom != f.after(n)? || beta.cod != m.after(l)? {
        return Err(Error::BoundaryMismatch("beta must be f∘n ⇒ m∘l".into()));
    }
    let z = &n.cod;
    let mu = &sq.adj_lu.counit;
    let eta = &sq.adj_fg.unit;
    let comps = u
        .dom
        .objects()
        .map(|x| {
            let ux = u.ob(x);
            let a = eta.at(n.ob(ux));
            let b = g.mor(beta.at(ux));
            let c = g.mor(m.mor(mu.at(x)));
            z.compose(c, z.compose(b, a))
        })
        .collect();
    Ok(NatTrans::new(n.after(u)?, g.after(m)?, comps))
}

/// Satisfied iff every component of the mate is an isomorphism.
pub fn beck_chevalley(sq: &MateSquare) -> Result<BeckChevalley> {
    let t = mate(sq)?;
    let (w, y) = (&t.dom.dom, &t.dom.cod);
    for o in w.objects() {
        if !y.is_iso(t.at(o)) {
            return Ok(BeckChevalley::Violated {
                object: w.obj_id(o).to_string(),
                component: y.mor_id(t.at(o)).to_string(),
            });
        }
    }
    Ok(BeckChevalley::Satisfied)
}

/// Horizontal pasting of `first` with `second`, where the left adjunction of
/// `second` is the right adjunction of `first`: `m = m₂m₁`, `n = n₂n₁` and
/// `α` at `x` is `α₂_{m₁ x} ∘ n₂(α₁_x)`.
pub fn paste(first: &MateSquare, second: &MateSquare) -> Result<MateSquare> {
    if second.adj_lu != first.adj_fg {
        return Err(Error::BoundaryMismatch("squares do not share an adjunction".into()));
    }
    first.check_boundaries()?;
    second.check_boundaries()?;
    let m = second.m.after(&first.m)?;
    let n = second.n.after(&first.n)?;
    let u = first.u();
    let z = &n.cod;
    let comps = u
        .dom
        .objects()
        .map(|x| z.compose(second.alpha.at(first.m.ob(x)), second.n.mor(first.alpha.at(x))))
        .collect();
    let alpha = NatTrans::new(n.after(u)?, second.g().after(&m)?, comps);
    Ok(MateSquare {
        adj_lu: first.adj_lu.clone(),
        adj_fg: second.adj_fg.clone(),
        m,
        n,
        alpha,
    })
}

/// The composite of the mates of two pasted squares: at `w`,
/// `m₂(mate₁_w) ∘ mate₂_{n₁ w}`.
pub fn paste_mates(first: &MateSquare, second: &MateSquare, mate1: &NatTrans, mate2: &NatTrans) -> Result<NatTrans> {
    let y = &second.m.cod;
    let w = &first.n.dom;
    let comps = w
        .objects()
        .map(|o| y.compose(second.m.mor(mate1.at(o)), mate2.at(first.n.ob(o))))
        .collect();
    let f = second.f().after(&second.n.after(&first.n)?)?;
    let ml = second.m.after(&first.m)?.after(first.l())?;
    Ok(NatTrans::new(f, ml, comps))
}
