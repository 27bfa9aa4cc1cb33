use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::category::CatRef;
use super::functor::{Functor, NatTrans};
use crate::error::Result;

/// Wire form of a functor between two categories named by the enclosing
/// document. Identity morphisms may be omitted from `morphisms`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorData {
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, String>,
}

/// Wire form of a natural transformation: one component per object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NatTransData {
    pub components: BTreeMap<String, String>,
}

impl FunctorData {
    pub fn from_functor(f: &Functor) -> FunctorData {
        FunctorData {
            objects: f
                .dom
                .objects()
                .map(|o| (f.dom.obj_id(o).to_string(), f.cod.obj_id(f.ob(o)).to_string()))
                .collect(),
            morphisms: f
                .dom
                .morphisms()
                .filter(|&m| !f.dom.is_identity(m))
                .map(|m| (f.dom.mor_id(m).to_string(), f.cod.mor_id(f.mor(m)).to_string()))
                .collect(),
        }
    }

    /// Resolves ids; the result is structurally sound but not validated.
    pub fn to_functor(&self, dom: &CatRef, cod: &CatRef) -> Result<Functor> {
        let om: Vec<(&str, &str)> = self.objects.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let mm: Vec<(&str, &str)> = self.morphisms.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        Functor::from_ids(dom.clone(), cod.clone(), &om, &mm)
    }
}

impl NatTransData {
    pub fn from_transformation(t: &NatTrans) -> NatTransData {
        let (a, b) = (&t.dom.dom, &t.dom.cod);
        NatTransData {
            components: a
                .objects()
                .map(|o| (a.obj_id(o).to_string(), b.mor_id(t.at(o)).to_string()))
                .collect(),
        }
    }

    pub fn to_transformation(&self, dom: &Functor, cod: &Functor) -> Result<NatTrans> {
        let cs: Vec<(&str, &str)> = self.components.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        NatTrans::from_ids(dom.clone(), cod.clone(), &cs)
    }
}

/// Wire form `functor/v1`: a functor together with its two categories.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub dom: super::category::FinCatData,
    pub cod: super::category::FinCatData,
    pub functor: FunctorData,
}

impl FunctorFile {
    pub fn from_functor(f: &Functor) -> FunctorFile {
        FunctorFile {
            schema: Some("functor/v1".into()),
            dom: f.dom.to_data(),
            cod: f.cod.to_data(),
            functor: FunctorData::from_functor(f),
        }
    }

    /// Validates both categories and the functor.
    pub fn to_functor(&self) -> Result<Functor> {
        if let Some(s) = &self.schema {
            if s != "functor/v1" {
                return Err(crate::error::Error::UnsupportedSchema(s.clone()));
            }
        }
        let dom: CatRef = std::sync::Arc::new(super::category::FinCat::new_valid(&self.dom)?);
        let cod: CatRef = std::sync::Arc::new(super::category::FinCat::new_valid(&self.cod)?);
        let f = self.functor.to_functor(&dom, &cod)?;
        let r = f.validate();
        if !r.is_empty() {
            return Err(crate::error::Error::InvalidInput(r));
        }
        Ok(f)
    }
}
