use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Result;
use crate::fincat::builder::CatBuilder;
use crate::fincat::{CatRef, FinCat, Mor};

/// A category whose objects are labelled structures over a base category and
/// whose morphisms are base morphisms between them, composed in the base.
pub(crate) struct Cells<'a> {
    base: &'a FinCat,
    objects: Vec<String>,
    identity: Vec<Mor>,
    arrows: Vec<(Mor, usize, usize)>,
}

impl<'a> Cells<'a> {
    pub(crate) fn new(base: &'a FinCat) -> Self {
        Cells {
            base,
            objects: Vec::new(),
            identity: Vec::new(),
            arrows: Vec::new(),
        }
    }

    /// Adds an object over a base object whose identity is `id`.
    pub(crate) fn object(&mut self, name: String, id: Mor) -> usize {
        self.objects.push(name);
        self.identity.push(id);
        self.objects.len() - 1
    }

    pub(crate) fn arrow(&mut self, h: Mor, from: usize, to: usize) {
        self.arrows.push((h, from, to));
    }

    fn arrow_name(&self, h: Mor, from: usize, to: usize) -> String {
        format!("{}:{}->{}", self.base.mor_id(h), self.objects[from], self.objects[to])
    }

    /// Builds the category; morphism `k` of the result lies over `underlying[k]`.
    pub(crate) fn build(self) -> Result<(CatRef, Vec<Mor>)> {
        let mut b = CatBuilder::new();
        for (i, name) in self.objects.iter().enumerate() {
            b = b.object_with_identity(name.clone(), self.arrow_name(self.identity[i], i, i));
        }
        let mut index: HashMap<(Mor, usize, usize), String> = HashMap::new();
        for &(h, i, j) in &self.arrows {
            let name = self.arrow_name(h, i, j);
            if !(i == j && h == self.identity[i]) {
                b = b.morphism(name.clone(), self.objects[i].clone(), self.objects[j].clone());
            }
            index.insert((h, i, j), name);
        }
        let mut out_of: HashMap<usize, Vec<(Mor, usize)>> = HashMap::new();
        for &(h, i, j) in &self.arrows {
            out_of.entry(i).or_default().push((h, j));
        }
        for &(h1, i1, j1) in &self.arrows {
            for &(h2, j2) in out_of.get(&j1).map_or(&[][..], |v| &v[..]) {
                let h = self.base.compose(h2, h1);
                let result = self.arrow_name(h, i1, j2);
                b = b.composite(index[&(h2, j1, j2)].clone(), index[&(h1, i1, j1)].clone(), result);
            }
        }
        let cat: CatRef = Arc::new(b.build()?);
        let mut underlying = vec![Mor(0); cat.num_morphisms()];
        for (&(h, _, _), name) in &index {
            underlying[cat.mor(name)?.0] = h;
        }
        Ok((cat, underlying))
    }
}
