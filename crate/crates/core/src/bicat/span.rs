use serde::{Deserialize, Serialize};

use super::elem::{compose_maps, into_set, is_bijection, is_set, lookup, position, Elem};
use crate::error::{Error, Result};

/// A span `left ← mid → right` of finite sets. Sets are sorted and the legs
/// are index tables into `left` and `right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSpan {
    pub left: Vec<Elem>,
    pub mid: Vec<Elem>,
    pub right: Vec<Elem>,
    pub leg_l: Vec<usize>,
    pub leg_r: Vec<usize>,
}

/// One element of the apex with its two images.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanElemData {
    pub elem: Elem,
    pub left: Elem,
    pub right: Elem,
}

/// Wire form `span/v1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanData {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub left: Vec<Elem>,
    pub right: Vec<Elem>,
    pub mid: Vec<SpanElemData>,
}

/// A map of spans with the same feet, commuting with both legs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanCell {
    pub from: FinSpan,
    pub to: FinSpan,
    pub map: Vec<usize>,
}

impl FinSpan {
    /// Builds a span from `(elem, left image, right image)` triples.
    pub fn new(left: Vec<Elem>, right: Vec<Elem>, mid: Vec<(Elem, Elem, Elem)>) -> Result<FinSpan> {
        let left = into_set(left, "left foot")?;
        let right = into_set(right, "right foot")?;
        let mut mid = mid;
        mid.sort();
        if let Some(w) = mid.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::MalformedInput(format!("apex lists `{}` twice", w[0].0)));
        }
        let mut leg_l = Vec::with_capacity(mid.len());
        let mut leg_r = Vec::with_capacity(mid.len());
        for (_, l, r) in &mid {
            leg_l.push(lookup(&left, l, "the left foot")?);
            leg_r.push(lookup(&right, r, "the right foot")?);
        }
        Ok(FinSpan {
            left,
            mid: mid.into_iter().map(|(e, _, _)| e).collect(),
            right,
            leg_l,
            leg_r,
        })
    }

    /// `set ← set → set` with identity legs.
    pub fn identity(set: &[Elem]) -> FinSpan {
        let ids: Vec<usize> = (0..set.len()).collect();
        FinSpan {
            left: set.to_vec(),
            mid: set.to_vec(),
            right: set.to_vec(),
            leg_l: ids.clone(),
            leg_r: ids,
        }
    }

    pub fn is_well_formed(&self) -> bool {
        is_set(&self.left)
            && is_set(&self.mid)
            && is_set(&self.right)
            && self.leg_l.len() == self.mid.len()
            && self.leg_r.len() == self.mid.len()
            && self.leg_l.iter().all(|&i| i < self.left.len())
            && self.leg_r.iter().all(|&i| i < self.right.len())
    }

    /// Number of apex elements over each element of the right foot.
    pub fn right_fibers(&self) -> Vec<usize> {
        let mut n = vec![0; self.right.len()];
        for &r in &self.leg_r {
            n[r] += 1;
        }
        n
    }

    /// Number of apex elements over each element of the left foot.
    pub fn left_fibers(&self) -> Vec<usize> {
        let mut n = vec![0; self.left.len()];
        for &l in &self.leg_l {
            n[l] += 1;
        }
        n
    }

    pub fn from_data(d: &SpanData) -> Result<FinSpan> {
        if let Some(s) = &d.schema {
            if s != "span/v1" {
                return Err(Error::UnsupportedSchema(s.clone()));
            }
        }
        FinSpan::new(
            d.left.clone(),
            d.right.clone(),
            d.mid.iter().map(|m| (m.elem.clone(), m.left.clone(), m.right.clone())).collect(),
        )
    }

    pub fn to_data(&self) -> SpanData {
        SpanData {
            schema: Some("span/v1".into()),
            left: self.left.clone(),
            right: self.right.clone(),
            mid: self
                .mid
                .iter()
                .enumerate()
                .map(|(i, e)| SpanElemData {
                    elem: e.clone(),
                    left: self.left[self.leg_l[i]].clone(),
                    right: self.right[self.leg_r[i]].clone(),
                })
                .collect(),
        }
    }
}

impl SpanCell {
    pub fn new(from: FinSpan, to: FinSpan, map: Vec<usize>) -> Result<SpanCell> {
        if from.left != to.left || from.right != to.right {
            return Err(Error::BoundaryMismatch("spans have different feet".into()));
        }
        if map.len() != from.mid.len() || map.iter().any(|&j| j >= to.mid.len()) {
            return Err(Error::BoundaryMismatch("map is not total on the apex".into()));
        }
        for (i, &j) in map.iter().enumerate() {
            if from.leg_l[i] != to.leg_l[j] || from.leg_r[i] != to.leg_r[j] {
                return Err(Error::BoundaryMismatch(format!(
                    "`{}` ↦ `{}` does not commute with the legs",
                    from.mid[i], to.mid[j]
                )));
            }
        }
        Ok(SpanCell { from, to, map })
    }

    /// The cell sending each apex element `e` to `f(e)`.
    pub fn from_fn(from: FinSpan, to: FinSpan, f: impl Fn(&Elem) -> Option<Elem>) -> Result<SpanCell> {
        let mut map = Vec::with_capacity(from.mid.len());
        for e in &from.mid {
            let image = f(e).and_then(|x| position(&to.mid, &x));
            map.push(image.ok_or_else(|| Error::BoundaryMismatch(format!("no image for `{e}`")))?);
        }
        SpanCell::new(from, to, map)
    }

    pub fn identity(s: &FinSpan) -> SpanCell {
        SpanCell {
            from: s.clone(),
            to: s.clone(),
            map: (0..s.mid.len()).collect(),
        }
    }

    pub fn apply(&self, e: &Elem) -> Option<&Elem> {
        position(&self.from.mid, e).map(|i| &self.to.mid[self.map[i]])
    }

    /// Vertical composite `next ∘ self`.
    pub fn then(&self, next: &SpanCell) -> Result<SpanCell> {
        if self.to != next.from {
            return Err(Error::BoundaryMismatch("cells are not vertically composable".into()));
        }
        Ok(SpanCell {
            from: self.from.clone(),
            to: next.to.clone(),
            map: compose_maps(&next.map, &self.map),
        })
    }

    pub fn is_invertible(&self) -> bool {
        is_bijection(&self.map, self.to.mid.len())
    }
}

/// `n ∘ m` by the canonical pullback: pairs `(p, q)` with
/// `m.legR(p) = n.legL(q)` in lexicographic order.
pub fn span_compose(n: &FinSpan, m: &FinSpan) -> Result<FinSpan> {
    if m.right != n.left {
        return Err(Error::BoundaryMismatch("right foot of the first span is not the left foot of the second".into()));
    }
    let mut mid = Vec::new();
    let mut leg_l = Vec::new();
    let mut leg_r = Vec::new();
    for (p, x) in m.mid.iter().enumerate() {
        for (q, y) in n.mid.iter().enumerate() {
            if m.leg_r[p] == n.leg_l[q] {
                mid.push(Elem::pair(x.clone(), y.clone()));
                leg_l.push(m.leg_l[p]);
                leg_r.push(n.leg_r[q]);
            }
        }
    }
    Ok(FinSpan {
        left: m.left.clone(),
        mid,
        right: n.right.clone(),
        leg_l,
        leg_r,
    })
}

/// Horizontal composite `φ * ψ: n∘m ⇒ n'∘m'` of `φ: n ⇒ n'` and `ψ: m ⇒ m'`.
pub fn span_hcomp(phi: &SpanCell, psi: &SpanCell) -> Result<SpanCell> {
    let from = span_compose(&phi.from, &psi.from)?;
    let to = span_compose(&phi.to, &psi.to)?;
    SpanCell::from_fn(from, to, |e| {
        let (x, y) = e.as_pair()?;
        Some(Elem::pair(psi.apply(x)?.clone(), phi.apply(y)?.clone()))
    })
}

/// `(h∘g)∘f ⇒ h∘(g∘f)`, sending `(x,(y,z))` to `((x,y),z)`.
pub fn span_associator(h: &FinSpan, g: &FinSpan, f: &FinSpan) -> Result<SpanCell> {
    let from = span_compose(&span_compose(h, g)?, f)?;
    let to = span_compose(h, &span_compose(g, f)?)?;
    SpanCell::from_fn(from, to, |e| {
        let (x, yz) = e.as_pair()?;
        let (y, z) = yz.as_pair()?;
        Some(Elem::pair(Elem::pair(x.clone(), y.clone()), z.clone()))
    })
}

/// `1∘f ⇒ f`, sending `(x,b)` to `x`.
pub fn span_left_unitor(f: &FinSpan) -> Result<SpanCell> {
    let from = span_compose(&FinSpan::identity(&f.right), f)?;
    SpanCell::from_fn(from, f.clone(), |e| e.as_pair().map(|(x, _)| x.clone()))
}

/// `f∘1 ⇒ f`, sending `(a,x)` to `x`.
pub fn span_right_unitor(f: &FinSpan) -> Result<SpanCell> {
    let from = span_compose(f, &FinSpan::identity(&f.left))?;
    SpanCell::from_fn(from, f.clone(), |e| e.as_pair().map(|(_, x)| x.clone()))
}

/// Compares the two composites `((kh)g)f ⇒ k(h(gf))` built from associators.
pub fn span_pentagon(k: &FinSpan, h: &FinSpan, g: &FinSpan, f: &FinSpan) -> Result<bool> {
    let kh = span_compose(k, h)?;
    let hg = span_compose(h, g)?;
    let gf = span_compose(g, f)?;
    let top = span_associator(&kh, g, f)?.then(&span_associator(k, h, &gf)?)?;
    let bottom = span_hcomp(&span_associator(k, h, g)?, &SpanCell::identity(f))?
        .then(&span_associator(k, &hg, f)?)?
        .then(&span_hcomp(&SpanCell::identity(k), &span_associator(h, g, f)?)?)?;
    Ok(top == bottom)
}

/// Compares `(1_g * l_f) ∘ a_{g,1,f}` with `r_g * 1_f`.
pub fn span_triangle(g: &FinSpan, f: &FinSpan) -> Result<bool> {
    let one = FinSpan::identity(&f.right);
    let lhs = span_associator(g, &one, f)?.then(&span_hcomp(&SpanCell::identity(g), &span_left_unitor(f)?)?)?;
    let rhs = span_hcomp(&span_right_unitor(g)?, &SpanCell::identity(f))?;
    Ok(lhs == rhs)
}
