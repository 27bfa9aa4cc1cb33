use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{CatRef, FinCat, FinCatData, Functor, FunctorData, NatTrans, NatTransData};
use crate::report::{ValidationReport, ViolationKind};

/// An adjunction `f ⊣ g` with `f: Y → Z`, counit `ε: f∘g ⇒ Id_Z` and unit
/// `η: Id_Y ⇒ g∘f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjunctionData {
    pub f: Functor,
    pub g: Functor,
    pub counit: NatTrans,
    pub unit: NatTrans,
}

/// Wire form `adjunction/v1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjunctionWire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub y: FinCatData,
    pub z: FinCatData,
    pub left: FunctorData,
    pub right: FunctorData,
    pub counit: NatTransData,
    pub unit: NatTransData,
}

impl AdjunctionData {
    /// Assembles the data without checking anything beyond shapes.
    pub fn new(f: Functor, g: Functor, counit: NatTrans, unit: NatTrans) -> AdjunctionData {
        AdjunctionData { f, g, counit, unit }
    }

    /// `Id ⊣ Id` on `c` with identity unit and counit.
    pub fn identity(c: &CatRef) -> AdjunctionData {
        let id = Functor::identity(c);
        AdjunctionData {
            f: id.clone(),
            g: id.clone(),
            counit: NatTrans::identity(&id),
            unit: NatTrans::identity(&id),
        }
    }

    pub fn y(&self) -> &CatRef {
        &self.f.dom
    }

    pub fn z(&self) -> &CatRef {
        &self.f.cod
    }

    pub fn from_wire(w: &AdjunctionWire) -> Result<AdjunctionData> {
        if let Some(s) = &w.schema {
            if s != "adjunction/v1" {
                return Err(Error::UnsupportedSchema(s.clone()));
            }
        }
        let y: CatRef = Arc::new(FinCat::new_valid(&w.y)?);
        let z: CatRef = Arc::new(FinCat::new_valid(&w.z)?);
        let f = w.left.to_functor(&y, &z)?;
        let g = w.right.to_functor(&z, &y)?;
        let counit = w.counit.to_transformation(&f.after(&g)?, &Functor::identity(&z))?;
        let unit = w.unit.to_transformation(&Functor::identity(&y), &g.after(&f)?)?;
        Ok(AdjunctionData { f, g, counit, unit })
    }

    pub fn to_wire(&self) -> AdjunctionWire {
        AdjunctionWire {
            schema: Some("adjunction/v1".into()),
            y: self.y().to_data(),
            z: self.z().to_data(),
            left: FunctorData::from_functor(&self.f),
            right: FunctorData::from_functor(&self.g),
            counit: NatTransData::from_transformation(&self.counit),
            unit: NatTransData::from_transformation(&self.unit),
        }
    }
}

/// Checks the functors, the boundaries and naturality of unit and counit, and
/// both triangle identities at every object.
pub fn check_adjunction(a: &AdjunctionData) -> ValidationReport {
    let mut r = ValidationReport::new();
    r.extend(a.f.validate().within("left adjoint"));
    r.extend(a.g.validate().within("right adjoint"));
    if !r.is_empty() {
        return r;
    }
    let (y, z) = (a.y(), a.z());
    let (Ok(fg), Ok(gf)) = (a.f.after(&a.g), a.g.after(&a.f)) else {
        r.push(ViolationKind::Boundary, "adjoints are not opposite functors");
        return r;
    };
    if a.counit.dom != fg || a.counit.cod != Functor::identity(z) {
        r.push(ViolationKind::Boundary, "counit is not f∘g ⇒ Id");
    }
    if a.unit.dom != Functor::identity(y) || a.unit.cod != gf {
        r.push(ViolationKind::Boundary, "unit is not Id ⇒ g∘f");
    }
    if !r.is_empty() {
        return r;
    }
    r.extend(a.counit.validate().within("counit"));
    r.extend(a.unit.validate().within("unit"));
    if !r.is_empty() {
        return r;
    }
    for o in y.objects() {
        let fo = a.f.ob(o);
        let lhs = z.compose(a.counit.at(fo), a.f.mor(a.unit.at(o)));
        if lhs != z.id(fo) {
            r.push(
                ViolationKind::TriangleUnit,
                format!("ε_f ∘ f(η) ≠ id at {}", y.obj_id(o)),
            );
        }
    }
    for o in z.objects() {
        let go = a.g.ob(o);
        let lhs = y.compose(a.g.mor(a.counit.at(o)), a.unit.at(go));
        if lhs != y.id(go) {
            r.push(
                ViolationKind::TriangleCounit,
                format!("g(ε) ∘ η_g ≠ id at {}", z.obj_id(o)),
            );
        }
    }
    r
}

/// `Err(NotAnAdjunction)` unless the report is empty.
pub fn require_adjunction(a: &AdjunctionData) -> Result<()> {
    let r = check_adjunction(a);
    if r.is_empty() {
        Ok(())
    } else {
        Err(Error::NotAnAdjunction(r))
    }
}

/// Composite of `f₁ ⊣ g₁` (`X → Y`) followed by `f₂ ⊣ g₂` (`Y → Z`):
/// `f₂f₁ ⊣ g₁g₂` with `ε₃ = ε₂ ∘ f₂ε₁g₂` and `η₃ = g₁η₂f₁ ∘ η₁`.
pub fn compose_adjunctions(a2: &AdjunctionData, a1: &AdjunctionData) -> Result<AdjunctionData> {
    if **a1.z() != **a2.y() {
        return Err(Error::NotComposable {
            g: "second adjunction".into(),
            f: "first adjunction".into(),
        });
    }
    let f = a2.f.after(&a1.f)?;
    let g = a1.g.after(&a2.g)?;
    let (x, z) = (a1.y(), a2.z());
    let counit = z
        .objects()
        .map(|o| z.compose(a2.counit.at(o), a2.f.mor(a1.counit.at(a2.g.ob(o)))))
        .collect();
    let unit = x
        .objects()
        .map(|o| x.compose(a1.g.mor(a2.unit.at(a1.f.ob(o))), a1.unit.at(o)))
        .collect();
    let fg = f.after(&g)?;
    let gf = g.after(&f)?;
    Ok(AdjunctionData {
        counit: NatTrans::new(fg, Functor::identity(z), counit),
        unit: NatTrans::new(Functor::identity(x), gf, unit),
        f,
        g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::builder::{chain, cyclic_group, poset};

    /// Round-up `0≤1≤2 → {0,2}` left adjoint to the inclusion.
    pub(crate) fn round_up() -> AdjunctionData {
        let y: CatRef = Arc::new(chain(3));
        let z: CatRef = Arc::new(poset(&["0", "2"], |i, j| i <= j));
        let f = Functor::from_ids(
            y.clone(),
            z.clone(),
            &[("0", "0"), ("1", "2"), ("2", "2")],
            &[("0->1", "0->2"), ("0->2", "0->2"), ("1->2", "id_2")],
        )
        .unwrap();
        let g = Functor::from_ids(z.clone(), y.clone(), &[("0", "0"), ("2", "2")], &[("0->2", "0->2")]).unwrap();
        let counit = NatTrans::from_ids(f.after(&g).unwrap(), Functor::identity(&z), &[("0", "id_0"), ("2", "id_2")]).unwrap();
        let unit = NatTrans::from_ids(
            Functor::identity(&y),
            g.after(&f).unwrap(),
            &[("0", "id_0"), ("1", "1->2"), ("2", "id_2")],
        )
        .unwrap();
        AdjunctionData::new(f, g, counit, unit)
    }

    #[test]
    fn identity_adjunctions() {
        for c in [chain(3), cyclic_group(3)] {
            assert!(check_adjunction(&AdjunctionData::identity(&Arc::new(c))).is_empty());
        }
    }

    #[test]
    fn galois_connection() {
        let a = round_up();
        assert!(check_adjunction(&a).is_empty());
        let wire = a.to_wire();
        let json = serde_json::to_string(&wire).unwrap();
        let back = AdjunctionData::from_wire(&serde_json::from_str(&json).unwrap()).unwrap();
        assert!(check_adjunction(&back).is_empty());
    }

    #[test]
    fn rewired_unit_detected() {
        // in ℤ/2 with Id ⊣ Id, a unit r1 with counit r0 breaks both triangles
        let c: CatRef = Arc::new(cyclic_group(2));
        let mut a = AdjunctionData::identity(&c);
        a.unit.components[0] = c.mor("r1").unwrap();
        let r = check_adjunction(&a);
        assert!(r.has(ViolationKind::TriangleUnit));
        assert!(r.has(ViolationKind::TriangleCounit));
    }

    #[test]
    fn rewired_boundary_detected() {
        let mut a = round_up();
        let y = a.y().clone();
        a.unit.components[1] = y.mor("id_1").unwrap();
        assert!(!check_adjunction(&a).is_empty());
    }

    #[test]
    fn composition_with_identity() {
        let a = round_up();
        let left = compose_adjunctions(&AdjunctionData::identity(a.z()), &a).unwrap();
        let right = compose_adjunctions(&a, &AdjunctionData::identity(a.y())).unwrap();
        for c in [&left, &right] {
            assert!(check_adjunction(c).is_empty());
            assert_eq!(c.counit.components, a.counit.components);
            assert_eq!(c.unit.components, a.unit.components);
            assert_eq!(c.f, a.f);
        }
    }

    #[test]
    fn mismatched_composition_rejected() {
        let a = round_up();
        assert!(matches!(compose_adjunctions(&a, &a), Err(Error::NotComposable { .. })));
    }
}
