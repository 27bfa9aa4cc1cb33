use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{ValidationReport, ViolationKind};

/// Index of an object inside a [`FinCat`]. Indices follow lexicographic id order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Obj(pub usize);

/// Index of a morphism inside a [`FinCat`]. Indices follow lexicographic id order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mor(pub usize);

pub type CatRef = Arc<FinCat>;

/// Upper bounds on category size accepted by constructions and searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_objects: usize,
    pub max_morphisms: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_objects: 64,
            max_morphisms: 4096,
        }
    }
}

impl Budget {
    /// Parses `"O,M"` (objects, morphisms) or a bare `"M"` (morphisms only).
    pub fn parse(s: &str) -> Result<Budget> {
        let bad = || Error::MalformedInput(format!("bad budget `{s}`"));
        let mut b = Budget::default();
        match s.split_once(',') {
            Some((o, m)) => {
                b.max_objects = o.trim().parse().map_err(|_| bad())?;
                b.max_morphisms = m.trim().parse().map_err(|_| bad())?;
            }
            None => b.max_morphisms = s.trim().parse().map_err(|_| bad())?,
        }
        Ok(b)
    }

    /// The default budget, overridden by `CATKIT_BUDGET` when set.
    pub fn from_env() -> Result<Budget> {
        match std::env::var("CATKIT_BUDGET") {
            Ok(s) => Budget::parse(&s),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub fn check(&self, objects: usize, morphisms: usize) -> Result<()> {
        if objects > self.max_objects || morphisms > self.max_morphisms {
            return Err(Error::SizeLimitExceeded(format!(
                "{objects} objects / {morphisms} morphisms exceeds budget {} / {}",
                self.max_objects, self.max_morphisms
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismSpec {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeSpec {
    pub g: String,
    pub f: String,
    pub result: String,
}

/// Wire form of a finite category (`fincat/v1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinCatData {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismSpec>,
    pub identities: BTreeMap<String, String>,
    pub compose: Vec<CompositeSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismData {
    pub id: String,
    pub src: Obj,
    pub tgt: Obj,
}

/// A finite category given by an explicit composition table.
///
/// A `FinCat` is always structurally well formed (unique ids, no dangling
/// references) but may still violate the category axioms; use
/// [`FinCat::validate`] or [`FinCat::new_valid`] when that matters.
#[derive(Clone)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<MorphismData>,
    identity: Vec<Mor>,
    table: HashMap<(Mor, Mor), Mor>,
    obj_index: HashMap<String, Obj>,
    mor_index: HashMap<String, Mor>,
    homs: Vec<Vec<Mor>>,
    outs: Vec<Vec<Mor>>,
    ins: Vec<Vec<Mor>>,
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identity == other.identity
            && self.table == other.table
    }
}

impl Eq for FinCat {}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCat")
            .field("objects", &self.objects)
            .field(
                "morphisms",
                &self
                    .morphisms
                    .iter()
                    .map(|m| format!("{}: {} -> {}", m.id, self.objects[m.src.0], self.objects[m.tgt.0]))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

fn check_unique<'a>(what: &str, ids: impl Iterator<Item = &'a String>) -> Result<()> {
    let mut seen = BTreeSet::new();
    for id in ids {
        if !seen.insert(id.as_str()) {
            return Err(Error::MalformedInput(format!("duplicate {what} id `{id}`")));
        }
    }
    Ok(())
}

impl FinCat {
    /// Builds a category from wire data, checking only structure and budget.
    pub fn from_data(data: &FinCatData) -> Result<FinCat> {
        FinCat::from_data_with_budget(data, Budget::default())
    }

    pub fn from_data_with_budget(data: &FinCatData, budget: Budget) -> Result<FinCat> {
        if let Some(schema) = &data.schema {
            if schema != "fincat/v1" {
                return Err(Error::UnsupportedSchema(schema.clone()));
            }
        }
        budget.check(data.objects.len(), data.morphisms.len())?;
        check_unique("object", data.objects.iter())?;
        check_unique("morphism", data.morphisms.iter().map(|m| &m.id))?;

        let mut objects = data.objects.clone();
        objects.sort();
        let obj_index: HashMap<String, Obj> =
            objects.iter().enumerate().map(|(i, o)| (o.clone(), Obj(i))).collect();
        let obj = |name: &str| {
            obj_index
                .get(name)
                .copied()
                .ok_or_else(|| Error::MalformedInput(format!("dangling object `{name}`")))
        };

        let mut specs: Vec<&MorphismSpec> = data.morphisms.iter().collect();
        specs.sort_by(|a, b| a.id.cmp(&b.id));
        let mut morphisms = Vec::with_capacity(specs.len());
        for m in specs {
            morphisms.push(MorphismData {
                id: m.id.clone(),
                src: obj(&m.src)?,
                tgt: obj(&m.tgt)?,
            });
        }
        let mor_index: HashMap<String, Mor> = morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| (m.id.clone(), Mor(i)))
            .collect();
        let mor = |name: &str| {
            mor_index
                .get(name)
                .copied()
                .ok_or_else(|| Error::MalformedInput(format!("dangling morphism `{name}`")))
        };

        let mut identity = Vec::with_capacity(objects.len());
        for o in &objects {
            let id = data
                .identities
                .get(o)
                .ok_or_else(|| Error::MalformedInput(format!("object `{o}` has no identity")))?;
            identity.push(mor(id)?);
        }
        for o in data.identities.keys() {
            obj(o)?;
        }

        let mut table = HashMap::new();
        for c in &data.compose {
            let key = (mor(&c.g)?, mor(&c.f)?);
            let result = mor(&c.result)?;
            if let Some(prev) = table.insert(key, result) {
                if prev != result {
                    return Err(Error::MalformedInput(format!(
                        "conflicting composite for ({}, {})",
                        c.g, c.f
                    )));
                }
            }
        }
        Ok(FinCat::assemble(objects, morphisms, identity, table, obj_index, mor_index))
    }

    /// Builds from wire data and rejects anything that is not a category.
    pub fn new_valid(data: &FinCatData) -> Result<FinCat> {
        let c = FinCat::from_data(data)?;
        let report = c.validate();
        if !report.is_empty() {
            return Err(Error::InvalidInput(report));
        }
        Ok(c)
    }

    fn assemble(
        objects: Vec<String>,
        morphisms: Vec<MorphismData>,
        identity: Vec<Mor>,
        table: HashMap<(Mor, Mor), Mor>,
        obj_index: HashMap<String, Obj>,
        mor_index: HashMap<String, Mor>,
    ) -> FinCat {
        let n = objects.len();
        let mut homs = vec![Vec::new(); n * n];
        let mut outs = vec![Vec::new(); n];
        let mut ins = vec![Vec::new(); n];
        for (i, m) in morphisms.iter().enumerate() {
            homs[m.src.0 * n + m.tgt.0].push(Mor(i));
            outs[m.src.0].push(Mor(i));
            ins[m.tgt.0].push(Mor(i));
        }
        FinCat {
            objects,
            morphisms,
            identity,
            table,
            obj_index,
            mor_index,
            homs,
            outs,
            ins,
        }
    }

    pub fn to_data(&self) -> FinCatData {
        let mut compose: Vec<CompositeSpec> = self
            .table
            .iter()
            .map(|(&(g, f), &r)| CompositeSpec {
                g: self.mor_id(g).to_string(),
                f: self.mor_id(f).to_string(),
                result: self.mor_id(r).to_string(),
            })
            .collect();
        compose.sort_by(|a, b| (&a.g, &a.f).cmp(&(&b.g, &b.f)));
        FinCatData {
            schema: Some("fincat/v1".into()),
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| MorphismSpec {
                    id: m.id.clone(),
                    src: self.obj_id(m.src).to_string(),
                    tgt: self.obj_id(m.tgt).to_string(),
                })
                .collect(),
            identities: self
                .objects
                .iter()
                .zip(&self.identity)
                .map(|(o, &i)| (o.clone(), self.mor_id(i).to_string()))
                .collect(),
            compose,
        }
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = Obj> + '_ {
        (0..self.objects.len()).map(Obj)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = Mor> + '_ {
        (0..self.morphisms.len()).map(Mor)
    }

    pub fn obj_id(&self, o: Obj) -> &str {
        &self.objects[o.0]
    }

    pub fn mor_id(&self, m: Mor) -> &str {
        &self.morphisms[m.0].id
    }

    pub fn obj(&self, id: &str) -> Result<Obj> {
        self.obj_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownObject(id.to_string()))
    }

    pub fn mor(&self, id: &str) -> Result<Mor> {
        self.mor_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownMorphism(id.to_string()))
    }

    pub fn src(&self, m: Mor) -> Obj {
        self.morphisms[m.0].src
    }

    pub fn tgt(&self, m: Mor) -> Obj {
        self.morphisms[m.0].tgt
    }

    pub fn id(&self, o: Obj) -> Mor {
        self.identity[o.0]
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        self.identity[self.src(m).0] == m
    }

    /// Morphisms `a -> b`, in id order.
    pub fn hom(&self, a: Obj, b: Obj) -> &[Mor] {
        &self.homs[a.0 * self.objects.len() + b.0]
    }

    /// Raw table lookup for `g ∘ f`; `None` when not composable or missing.
    pub fn try_compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        self.table.get(&(g, f)).copied()
    }

    /// `g ∘ f`. Panics when the pair is not composable; use [`FinCat::compose_checked`]
    /// for untrusted input.
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        match self.table.get(&(g, f)) {
            Some(&h) => h,
            None => panic!(
                "no composite {} ∘ {} in category",
                self.mor_id(g),
                self.mor_id(f)
            ),
        }
    }

    /// Composes a chain in application order: `compose_path(f, &[g, h]) = h ∘ g ∘ f`.
    pub fn compose_path(&self, first: Mor, rest: &[Mor]) -> Mor {
        rest.iter().fold(first, |acc, &m| self.compose(m, acc))
    }

    pub fn compose_checked(&self, g: Mor, f: Mor) -> Result<Mor> {
        if self.tgt(f) != self.src(g) {
            return Err(Error::NotComposable {
                g: self.mor_id(g).to_string(),
                f: self.mor_id(f).to_string(),
            });
        }
        self.try_compose(g, f).ok_or_else(|| {
            Error::MalformedInput(format!(
                "composition table has no entry for ({}, {})",
                self.mor_id(g),
                self.mor_id(f)
            ))
        })
    }

    /// `compose` by ids.
    pub fn compose_ids(&self, g: &str, f: &str) -> Result<&str> {
        let h = self.compose_checked(self.mor(g)?, self.mor(f)?)?;
        Ok(self.mor_id(h))
    }

    /// Inverse of `m`, if one exists.
    pub fn inverse(&self, m: Mor) -> Option<Mor> {
        let (a, b) = (self.src(m), self.tgt(m));
        self.hom(b, a).iter().copied().find(|&n| {
            self.try_compose(n, m) == Some(self.id(a)) && self.try_compose(m, n) == Some(self.id(b))
        })
    }

    pub fn is_iso(&self, m: Mor) -> bool {
        self.inverse(m).is_some()
    }

    /// Checks every instance of the category axioms by brute force.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        for o in self.objects() {
            let i = self.id(o);
            if self.src(i) != o || self.tgt(i) != o {
                r.push(
                    ViolationKind::Boundary,
                    format!("identity {} of {} is not an endomorphism of it", self.mor_id(i), self.obj_id(o)),
                );
            }
        }
        for (&(g, f), &h) in &self.table {
            if self.tgt(f) != self.src(g) {
                r.push(
                    ViolationKind::Boundary,
                    format!("table entry for non-composable ({}, {})", self.mor_id(g), self.mor_id(f)),
                );
            } else if self.src(h) != self.src(f) || self.tgt(h) != self.tgt(g) {
                r.push(
                    ViolationKind::Boundary,
                    format!(
                        "{} ∘ {} = {} has wrong boundary",
                        self.mor_id(g),
                        self.mor_id(f),
                        self.mor_id(h)
                    ),
                );
            }
        }
        for f in self.morphisms() {
            for &g in self.out_of(self.tgt(f)) {
                if self.try_compose(g, f).is_none() {
                    r.push(
                        ViolationKind::MissingComposite,
                        format!("no composite {} ∘ {}", self.mor_id(g), self.mor_id(f)),
                    );
                }
            }
        }
        if !r.is_empty() {
            r.violations.sort_by(|a, b| a.detail.cmp(&b.detail));
            return r;
        }
        for f in self.morphisms() {
            let (a, b) = (self.src(f), self.tgt(f));
            if self.compose(self.id(b), f) != f {
                r.push(ViolationKind::LeftUnit, format!("id ∘ {} ≠ {}", self.mor_id(f), self.mor_id(f)));
            }
            if self.compose(f, self.id(a)) != f {
                r.push(ViolationKind::RightUnit, format!("{} ∘ id ≠ {}", self.mor_id(f), self.mor_id(f)));
            }
            for &g in self.out_of(b) {
                let gf = self.compose(g, f);
                for &h in self.out_of(self.tgt(g)) {
                    let lhs = self.compose(h, gf);
                    let rhs = self.compose(self.compose(h, g), f);
                    if lhs != rhs {
                        r.push(
                            ViolationKind::Associativity,
                            format!(
                                "({} ∘ {}) ∘ {} ≠ {} ∘ ({} ∘ {})",
                                self.mor_id(h),
                                self.mor_id(g),
                                self.mor_id(f),
                                self.mor_id(h),
                                self.mor_id(g),
                                self.mor_id(f)
                            ),
                        );
                    }
                }
            }
        }
        r
    }

    /// All morphisms with source `a`, in id order.
    pub fn out_of(&self, a: Obj) -> &[Mor] {
        &self.outs[a.0]
    }

    /// All morphisms with target `b`, in id order.
    pub fn incoming(&self, b: Obj) -> &[Mor] {
        &self.ins[b.0]
    }
}
