use super::cells::Cells;
use super::diagram::{validate_descent_input, DescentInput};
use crate::error::{Error, Result};
use crate::fincat::{CatRef, Mor, Obj};

/// An object `f` of `c1` with a morphism `ξ: d⁰f → d¹f` of `c2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DescentObject {
    pub f: Obj,
    pub xi: Mor,
}

/// Both sides of the two descent equations at a candidate pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DescentEquations {
    /// `σ21_f ∘ ∂²(ξ) ∘ σ01_f ∘ ∂⁰(ξ)` in `c3`.
    pub assoc_lhs: Mor,
    /// `∂¹(ξ) ∘ σ00_f` in `c3`.
    pub assoc_rhs: Mor,
    /// `s⁰(ξ) ∘ n0_f` in `c1`.
    pub identity_lhs: Mor,
    /// `n1_f` in `c1`.
    pub identity_rhs: Mor,
}

impl DescentEquations {
    pub fn hold(&self) -> bool {
        self.assoc_lhs == self.assoc_rhs && self.identity_lhs == self.identity_rhs
    }
}

/// A descent category with the pair behind each object and the `c1`
/// morphism behind each morphism.
#[derive(Debug, Clone)]
pub struct DescentCategory {
    pub cat: CatRef,
    pub pairs: Vec<DescentObject>,
    pub underlying: Vec<Mor>,
}

/// Evaluates the Associativity and Identity equations at `(f, ξ)`.
pub fn descent_equations(d: &DescentInput, f: Obj, xi: Mor) -> DescentEquations {
    let c3 = &d.c3;
    let c1 = &d.c1;
    let assoc_lhs = c3.compose_path(
        d.p0.mor(xi),
        &[d.sigma01.at(f), d.p2.mor(xi), d.sigma21.at(f)],
    );
    let assoc_rhs = c3.compose(d.p1.mor(xi), d.sigma00.at(f));
    DescentEquations {
        assoc_lhs,
        assoc_rhs,
        identity_lhs: c1.compose(d.s0.mor(xi), d.n0.at(f)),
        identity_rhs: d.n1.at(f),
    }
}

fn build(d: &DescentInput, keep: impl Fn(Mor) -> bool) -> Result<DescentCategory> {
    let report = validate_descent_input(d);
    if !report.is_empty() {
        return Err(Error::InvalidInput(report));
    }
    let (c1, c2) = (&d.c1, &d.c2);
    let mut pairs = Vec::new();
    for f in c1.objects() {
        for &xi in c2.hom(d.d0.ob(f), d.d1.ob(f)) {
            if keep(xi) && descent_equations(d, f, xi).hold() {
                pairs.push(DescentObject { f, xi });
            }
        }
    }
    let name = |p: &DescentObject| format!("({},{})", c1.obj_id(p.f), c2.mor_id(p.xi));
    let mut cells = Cells::new(c1);
    for p in &pairs {
        cells.object(name(p), c1.id(p.f));
    }
    for (i, s) in pairs.iter().enumerate() {
        for (j, t) in pairs.iter().enumerate() {
            for &m in c1.hom(s.f, t.f) {
                if c2.compose(d.d1.mor(m), s.xi) == c2.compose(t.xi, d.d0.mor(m)) {
                    cells.arrow(m, i, j);
                }
            }
        }
    }
    let (cat, underlying) = cells.build()?;
    let mut named: Vec<(String, DescentObject)> = pairs.iter().map(|p| (name(p), *p)).collect();
    named.sort();
    Ok(DescentCategory {
        cat,
        pairs: named.into_iter().map(|(_, p)| p).collect(),
        underlying,
    })
}

/// Objects are pairs `(f, ξ)` satisfying
///
/// * Associativity: `σ21_f ∘ ∂²(ξ) ∘ σ01_f ∘ ∂⁰(ξ) = ∂¹(ξ) ∘ σ00_f`,
/// * Identity: `s⁰(ξ) ∘ n0_f = n1_f`;
///
/// morphisms `(f, ξ) → (h, ζ)` are `m: f → h` in `c1` with
/// `d¹(m) ∘ ξ = ζ ∘ d⁰(m)`. Objects are named `(f,ξ)` and morphisms
/// `m:(f,ξ)->(h,ζ)`.
pub fn colax_descent_category(d: &DescentInput) -> Result<DescentCategory> {
    build(d, |_| true)
}

/// The full subcategory of [`colax_descent_category`] on pairs with `ξ`
/// invertible.
pub fn descent_category(d: &DescentInput) -> Result<DescentCategory> {
    build(d, |xi| d.c2.is_iso(xi))
}
