use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::elem::{position, Elem};
use super::matrix::{mat_associator, mat_compose, mat_hcomp, mat_left_unitor, mat_right_unitor, FinMatrix, MatCell};
use super::span::{span_associator, span_compose, span_hcomp, span_left_unitor, span_right_unitor, FinSpan, SpanCell};
use crate::error::{Error, Result};
use crate::fincat::{FinCat, FinCatData, MorphismSpec, CompositeSpec};
use crate::report::{ValidationReport, ViolationKind};

/// A monad in `Span(FinSet)`, that is, an internal category: objects,
/// arrows, `dom`/`cod`, composition on the canonical pullback of `cod` and
/// `dom`, and identities.
///
/// `comp[k]` is the composite of the `k`-th composable pair `(f, g)` (first
/// `f`, then `g`) in the order of [`span_compose`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanMonad {
    pub objects: Vec<Elem>,
    pub arrows: Vec<Elem>,
    pub dom: Vec<usize>,
    pub cod: Vec<usize>,
    pub comp: Vec<usize>,
    pub ident: Vec<usize>,
}

/// A monad in `FinSet-Mat`, that is, a category enriched in finite sets.
///
/// `comp[a][c][k]` is the composite of the `k`-th element of
/// `(hom∘hom)(a, c)`, whose elements are `b:(f,g)` with `f: a → b`, `g: b → c`.
/// `ident[a]` indexes the identity in `hom(a, a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatMonad {
    pub objects: Vec<Elem>,
    pub hom: FinMatrix,
    pub comp: Vec<Vec<Vec<usize>>>,
    pub ident: Vec<usize>,
}

impl SpanMonad {
    /// `objects <-dom- arrows -cod-> objects`.
    pub fn span(&self) -> FinSpan {
        FinSpan {
            left: self.objects.clone(),
            mid: self.arrows.clone(),
            right: self.objects.clone(),
            leg_l: self.dom.clone(),
            leg_r: self.cod.clone(),
        }
    }

    /// Multiplication `s∘s ⇒ s` and unit `1 ⇒ s` as cells of spans.
    pub fn cells(&self) -> Result<(SpanCell, SpanCell)> {
        let s = self.span();
        if !s.is_well_formed() {
            return Err(Error::MalformedInput("span monad has a dangling leg".into()));
        }
        let mult = SpanCell::new(span_compose(&s, &s)?, s.clone(), self.comp.clone())?;
        let unit = SpanCell::new(FinSpan::identity(&self.objects), s, self.ident.clone())?;
        Ok((mult, unit))
    }

    /// The associativity square through the canonical reassociation and the
    /// two unit triangles, compared element by element.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        let (mult, unit) = match self.cells() {
            Ok(c) => c,
            Err(e) => {
                r.push(ViolationKind::Boundary, e.to_string());
                return r;
            }
        };
        let s = self.span();
        let id = SpanCell::identity(&s);
        let squares = (|| -> Result<_> {
            let left = span_hcomp(&mult, &id)?.then(&mult)?;
            let right = span_associator(&s, &s, &s)?.then(&span_hcomp(&id, &mult)?)?.then(&mult)?;
            let lu = span_hcomp(&unit, &id)?.then(&mult)?;
            let ru = span_hcomp(&id, &unit)?.then(&mult)?;
            Ok((left, right, lu, span_left_unitor(&s)?, ru, span_right_unitor(&s)?))
        })();
        let (left, right, lu, l, ru, rho) = match squares {
            Ok(x) => x,
            Err(e) => {
                r.push(ViolationKind::Boundary, e.to_string());
                return r;
            }
        };
        for (i, e) in left.from.mid.iter().enumerate() {
            if left.map[i] != right.map[i] {
                r.push(ViolationKind::MonadAssociativity, format!("at {e}"));
            }
        }
        for (i, e) in lu.from.mid.iter().enumerate() {
            if lu.map[i] != l.map[i] {
                r.push(ViolationKind::MonadUnit, format!("left unit at {e}"));
            }
        }
        for (i, e) in ru.from.mid.iter().enumerate() {
            if ru.map[i] != rho.map[i] {
                r.push(ViolationKind::MonadUnit, format!("right unit at {e}"));
            }
        }
        r
    }

    /// Size of the canonical pullback of `cod` and `dom`.
    pub fn pullback_size(&self) -> usize {
        let s = self.span();
        let into: Vec<usize> = s.right_fibers();
        let out: Vec<usize> = s.left_fibers();
        into.iter().zip(&out).map(|(a, b)| a * b).sum()
    }
}

impl MatMonad {
    pub fn cells(&self) -> Result<(MatCell, MatCell)> {
        if !self.hom.is_well_formed() || self.hom.rows != self.objects || self.hom.cols != self.objects {
            return Err(Error::MalformedInput("hom matrix is not indexed by the objects".into()));
        }
        let mult = MatCell::new(mat_compose(&self.hom, &self.hom)?, self.hom.clone(), self.comp.clone())?;
        let one = FinMatrix::identity(&self.objects);
        let n = self.objects.len();
        if self.ident.len() != n {
            return Err(Error::BoundaryMismatch("one identity per object expected".into()));
        }
        let maps = (0..n)
            .map(|i| (0..n).map(|j| if i == j { vec![self.ident[i]] } else { Vec::new() }).collect())
            .collect();
        let unit = MatCell::new(one, self.hom.clone(), maps)?;
        Ok((mult, unit))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        let (mult, unit) = match self.cells() {
            Ok(c) => c,
            Err(e) => {
                r.push(ViolationKind::Boundary, e.to_string());
                return r;
            }
        };
        let h = &self.hom;
        let id = MatCell::identity(h);
        let squares = (|| -> Result<_> {
            let left = mat_hcomp(&mult, &id)?.then(&mult)?;
            let right = mat_associator(h, h, h)?.then(&mat_hcomp(&id, &mult)?)?.then(&mult)?;
            let lu = mat_hcomp(&unit, &id)?.then(&mult)?;
            let ru = mat_hcomp(&id, &unit)?.then(&mult)?;
            Ok((left, right, lu, mat_left_unitor(h)?, ru, mat_right_unitor(h)?))
        })();
        let (left, right, lu, l, ru, rho) = match squares {
            Ok(x) => x,
            Err(e) => {
                r.push(ViolationKind::Boundary, e.to_string());
                return r;
            }
        };
        let compare = |r: &mut ValidationReport, a: &MatCell, b: &MatCell, kind: ViolationKind, what: &str| {
            for (i, row) in a.from.entries.iter().enumerate() {
                for (j, entry) in row.iter().enumerate() {
                    for (k, e) in entry.iter().enumerate() {
                        if a.maps[i][j][k] != b.maps[i][j][k] {
                            r.push(kind, format!("{what}at {e}"));
                        }
                    }
                }
            }
        };
        compare(&mut r, &left, &right, ViolationKind::MonadAssociativity, "");
        compare(&mut r, &lu, &l, ViolationKind::MonadUnit, "left unit ");
        compare(&mut r, &ru, &rho, ViolationKind::MonadUnit, "right unit ");
        r
    }
}

fn require(r: ValidationReport) -> Result<()> {
    if r.is_empty() {
        Ok(())
    } else {
        Err(Error::NotAMonad(r.to_string().trim_end().to_string()))
    }
}

/// Objects and morphisms become atoms named by their ids; composition is read
/// off the table on the canonical pullback. `c` must be a valid category.
pub fn cat_to_span_monad(c: &FinCat) -> SpanMonad {
    let objects: Vec<Elem> = c.objects().map(|o| Elem::atom(c.obj_id(o))).collect();
    let arrows: Vec<Elem> = c.morphisms().map(|m| Elem::atom(c.mor_id(m))).collect();
    let dom: Vec<usize> = c.morphisms().map(|m| c.src(m).0).collect();
    let cod: Vec<usize> = c.morphisms().map(|m| c.tgt(m).0).collect();
    let mut comp = Vec::new();
    for f in c.morphisms() {
        for g in c.morphisms() {
            if cod[f.0] == dom[g.0] {
                comp.push(c.compose(g, f).0);
            }
        }
    }
    let s = SpanMonad {
        objects,
        arrows,
        dom,
        cod,
        comp,
        ident: c.objects().map(|o| c.id(o).0).collect(),
    };
    debug_assert!(s.validate().is_empty());
    s
}

fn unique_names(names: &[String]) -> bool {
    let mut seen = HashSet::new();
    names.iter().all(|n| seen.insert(n.as_str()))
}

fn build(objects: &[Elem], mor: Vec<(String, usize, usize)>, ident: Vec<usize>, compose: Vec<(usize, usize, usize)>) -> Result<FinCat> {
    let obj_names: Vec<String> = objects.iter().map(|o| o.to_string()).collect();
    if !unique_names(&obj_names) {
        return Err(Error::MalformedInput("object names collide".into()));
    }
    let data = FinCatData {
        schema: Some("fincat/v1".into()),
        objects: obj_names.clone(),
        morphisms: mor
            .iter()
            .map(|(id, s, t)| MorphismSpec {
                id: id.clone(),
                src: obj_names[*s].clone(),
                tgt: obj_names[*t].clone(),
            })
            .collect(),
        identities: ident.iter().enumerate().map(|(o, &m)| (obj_names[o].clone(), mor[m].0.clone())).collect(),
        compose: compose
            .into_iter()
            .map(|(g, f, h)| CompositeSpec {
                g: mor[g].0.clone(),
                f: mor[f].0.clone(),
                result: mor[h].0.clone(),
            })
            .collect(),
    };
    FinCat::new_valid(&data)
}

/// Decodes an internal category. Morphism ids are the arrow names.
pub fn span_monad_to_cat(s: &SpanMonad) -> Result<FinCat> {
    require(s.validate())?;
    let names: Vec<String> = s.arrows.iter().map(|a| a.to_string()).collect();
    if !unique_names(&names) {
        return Err(Error::MalformedInput("arrow names collide".into()));
    }
    let mor = names.into_iter().enumerate().map(|(i, n)| (n, s.dom[i], s.cod[i])).collect();
    let ss = span_compose(&s.span(), &s.span())?;
    let mut compose = Vec::new();
    for (k, e) in ss.mid.iter().enumerate() {
        let (f, g) = e.as_pair().expect("pullback element");
        let f = position(&s.arrows, f).expect("arrow");
        let g = position(&s.arrows, g).expect("arrow");
        compose.push((g, f, s.comp[k]));
    }
    build(&s.objects, mor, s.ident.clone(), compose)
}

/// `hom(a, b)` is the hom-set as atoms named by morphism ids.
pub fn cat_to_mat_monad(c: &FinCat) -> MatMonad {
    let objects: Vec<Elem> = c.objects().map(|o| Elem::atom(c.obj_id(o))).collect();
    let entries: Vec<Vec<Vec<Elem>>> = c
        .objects()
        .map(|a| c.objects().map(|b| c.hom(a, b).iter().map(|&m| Elem::atom(c.mor_id(m))).collect()).collect())
        .collect();
    let hom = FinMatrix {
        rows: objects.clone(),
        cols: objects.clone(),
        entries,
    };
    let index = |a, b, m| c.hom(a, b).iter().position(|&x| x == m).expect("hom-set member");
    let mut comp = Vec::new();
    for a in c.objects() {
        let mut row = Vec::new();
        for z in c.objects() {
            let mut m = Vec::new();
            for b in c.objects() {
                for &f in c.hom(a, b) {
                    for &g in c.hom(b, z) {
                        m.push(index(a, z, c.compose(g, f)));
                    }
                }
            }
            row.push(m);
        }
        comp.push(row);
    }
    let ident = c.objects().map(|a| index(a, a, c.id(a))).collect();
    let m = MatMonad {
        objects,
        hom,
        comp,
        ident,
    };
    debug_assert!(m.validate().is_empty());
    m
}

/// Decodes an enriched category. Morphisms keep their element names when
/// these are distinct across hom-sets and are named `e@a->b` otherwise.
pub fn mat_monad_to_cat(m: &MatMonad) -> Result<FinCat> {
    require(m.validate())?;
    let n = m.objects.len();
    let mut index = vec![vec![Vec::new(); n]; n];
    let mut mor = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for e in &m.hom.entries[a][b] {
                index[a][b].push(mor.len());
                mor.push((e, a, b));
            }
        }
    }
    let plain: Vec<String> = mor.iter().map(|(e, _, _)| e.to_string()).collect();
    let names = if unique_names(&plain) {
        plain
    } else {
        mor.iter().map(|(e, a, b)| format!("{e}@{}->{}", m.objects[*a], m.objects[*b])).collect()
    };
    let mor: Vec<(String, usize, usize)> = names.into_iter().zip(&mor).map(|(s, &(_, a, b))| (s, a, b)).collect();
    let mut compose = Vec::new();
    for a in 0..n {
        for z in 0..n {
            let mut k = 0;
            for b in 0..n {
                for &f in &index[a][b] {
                    for &g in &index[b][z] {
                        compose.push((g, f, index[a][z][m.comp[a][z][k]]));
                        k += 1;
                    }
                }
            }
        }
    }
    let ident = (0..n).map(|a| index[a][a][m.ident[a]]).collect();
    build(&m.objects, mor, ident, compose)
}
