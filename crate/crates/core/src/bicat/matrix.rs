use serde::{Deserialize, Serialize};

use super::elem::{compose_maps, into_set, is_bijection, is_set, lookup, position, Elem};
use crate::error::{Error, Result};

/// A matrix of finite sets indexed by `rows × cols`; `entries[i][j]` is sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinMatrix {
    pub rows: Vec<Elem>,
    pub cols: Vec<Elem>,
    pub entries: Vec<Vec<Vec<Elem>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryData {
    pub row: Elem,
    pub col: Elem,
    pub elems: Vec<Elem>,
}

/// Wire form `matrix/v1`; entries left out are empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixData {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub rows: Vec<Elem>,
    pub cols: Vec<Elem>,
    pub entries: Vec<EntryData>,
}

/// An entrywise family of maps between matrices of the same shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatCell {
    pub from: FinMatrix,
    pub to: FinMatrix,
    pub maps: Vec<Vec<Vec<usize>>>,
}

impl FinMatrix {
    /// Builds a matrix from `(row, col, entry)` triples; missing entries are empty.
    pub fn new(rows: Vec<Elem>, cols: Vec<Elem>, entries: Vec<(Elem, Elem, Vec<Elem>)>) -> Result<FinMatrix> {
        let rows = into_set(rows, "rows")?;
        let cols = into_set(cols, "columns")?;
        let mut table = vec![vec![None; cols.len()]; rows.len()];
        for (r, c, elems) in entries {
            let i = lookup(&rows, &r, "the rows")?;
            let j = lookup(&cols, &c, "the columns")?;
            if table[i][j].is_some() {
                return Err(Error::MalformedInput(format!("entry ({r},{c}) given twice")));
            }
            table[i][j] = Some(into_set(elems, &format!("entry ({r},{c})"))?);
        }
        let entries = table
            .into_iter()
            .map(|row| row.into_iter().map(Option::unwrap_or_default).collect())
            .collect();
        Ok(FinMatrix { rows, cols, entries })
    }

    /// A singleton `*` on the diagonal and `∅` elsewhere.
    pub fn identity(set: &[Elem]) -> FinMatrix {
        let n = set.len();
        FinMatrix {
            rows: set.to_vec(),
            cols: set.to_vec(),
            entries: (0..n)
                .map(|i| (0..n).map(|j| if i == j { vec![Elem::atom("*")] } else { Vec::new() }).collect())
                .collect(),
        }
    }

    pub fn zero(rows: &[Elem], cols: &[Elem]) -> FinMatrix {
        FinMatrix {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            entries: vec![vec![Vec::new(); cols.len()]; rows.len()],
        }
    }

    pub fn is_well_formed(&self) -> bool {
        is_set(&self.rows)
            && is_set(&self.cols)
            && self.entries.len() == self.rows.len()
            && self.entries.iter().all(|r| r.len() == self.cols.len() && r.iter().all(|e| is_set(e)))
    }

    pub fn sizes(&self) -> Vec<Vec<usize>> {
        self.entries.iter().map(|r| r.iter().map(Vec::len).collect()).collect()
    }

    pub fn from_data(d: &MatrixData) -> Result<FinMatrix> {
        if let Some(s) = &d.schema {
            if s != "matrix/v1" {
                return Err(Error::UnsupportedSchema(s.clone()));
            }
        }
        FinMatrix::new(
            d.rows.clone(),
            d.cols.clone(),
            d.entries.iter().map(|e| (e.row.clone(), e.col.clone(), e.elems.clone())).collect(),
        )
    }

    /// Lists every entry, empty ones included, row by row.
    pub fn to_data(&self) -> MatrixData {
        let mut entries = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            for (j, c) in self.cols.iter().enumerate() {
                entries.push(EntryData {
                    row: r.clone(),
                    col: c.clone(),
                    elems: self.entries[i][j].clone(),
                });
            }
        }
        MatrixData {
            schema: Some("matrix/v1".into()),
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries,
        }
    }
}

impl MatCell {
    pub fn new(from: FinMatrix, to: FinMatrix, maps: Vec<Vec<Vec<usize>>>) -> Result<MatCell> {
        if from.rows != to.rows || from.cols != to.cols {
            return Err(Error::BoundaryMismatch("matrices have different shapes".into()));
        }
        let total = maps.len() == from.rows.len()
            && maps.iter().enumerate().all(|(i, row)| {
                row.len() == from.cols.len()
                    && row.iter().enumerate().all(|(j, m)| {
                        m.len() == from.entries[i][j].len() && m.iter().all(|&k| k < to.entries[i][j].len())
                    })
            });
        if !total {
            return Err(Error::BoundaryMismatch("maps are not total on every entry".into()));
        }
        Ok(MatCell { from, to, maps })
    }

    /// The cell sending each element `e` of entry `(i, j)` to `f(i, j, e)`.
    pub fn from_fn(from: FinMatrix, to: FinMatrix, f: impl Fn(usize, usize, &Elem) -> Option<Elem>) -> Result<MatCell> {
        if from.rows != to.rows || from.cols != to.cols {
            return Err(Error::BoundaryMismatch("matrices have different shapes".into()));
        }
        let mut maps = Vec::with_capacity(from.rows.len());
        for i in 0..from.rows.len() {
            let mut row = Vec::with_capacity(from.cols.len());
            for j in 0..from.cols.len() {
                let mut m = Vec::with_capacity(from.entries[i][j].len());
                for e in &from.entries[i][j] {
                    let image = f(i, j, e).and_then(|x| position(&to.entries[i][j], &x));
                    m.push(image.ok_or_else(|| Error::BoundaryMismatch(format!("no image for `{e}`")))?);
                }
                row.push(m);
            }
            maps.push(row);
        }
        Ok(MatCell { from, to, maps })
    }

    pub fn identity(m: &FinMatrix) -> MatCell {
        MatCell {
            from: m.clone(),
            to: m.clone(),
            maps: m.entries.iter().map(|r| r.iter().map(|e| (0..e.len()).collect()).collect()).collect(),
        }
    }

    pub fn apply(&self, i: usize, j: usize, e: &Elem) -> Option<&Elem> {
        position(&self.from.entries[i][j], e).map(|k| &self.to.entries[i][j][self.maps[i][j][k]])
    }

    /// Vertical composite `next ∘ self`.
    pub fn then(&self, next: &MatCell) -> Result<MatCell> {
        if self.to != next.from {
            return Err(Error::BoundaryMismatch("cells are not vertically composable".into()));
        }
        let maps = self
            .maps
            .iter()
            .zip(&next.maps)
            .map(|(a, b)| a.iter().zip(b).map(|(f, g)| compose_maps(g, f)).collect())
            .collect();
        Ok(MatCell {
            from: self.from.clone(),
            to: next.to.clone(),
            maps,
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.maps
            .iter()
            .zip(&self.to.entries)
            .all(|(r, t)| r.iter().zip(t).all(|(m, e)| is_bijection(m, e.len())))
    }
}

/// `n ∘ m` with `(n∘m)(i,j) = ⊔_k m(i,k) × n(k,j)`, elements `k:(x,y)` in
/// lexicographic order.
pub fn mat_compose(n: &FinMatrix, m: &FinMatrix) -> Result<FinMatrix> {
    if m.cols != n.rows {
        return Err(Error::BoundaryMismatch("columns of the first matrix are not the rows of the second".into()));
    }
    let mut entries = Vec::with_capacity(m.rows.len());
    for i in 0..m.rows.len() {
        let mut row = Vec::with_capacity(n.cols.len());
        for j in 0..n.cols.len() {
            let mut e = Vec::new();
            for (k, tag) in m.cols.iter().enumerate() {
                for x in &m.entries[i][k] {
                    for y in &n.entries[k][j] {
                        e.push(Elem::tagged(tag.clone(), Elem::pair(x.clone(), y.clone())));
                    }
                }
            }
            row.push(e);
        }
        entries.push(row);
    }
    Ok(FinMatrix {
        rows: m.rows.clone(),
        cols: n.cols.clone(),
        entries,
    })
}

/// Horizontal composite `φ * ψ: n∘m ⇒ n'∘m'` of `φ: n ⇒ n'` and `ψ: m ⇒ m'`.
pub fn mat_hcomp(phi: &MatCell, psi: &MatCell) -> Result<MatCell> {
    let from = mat_compose(&phi.from, &psi.from)?;
    let to = mat_compose(&phi.to, &psi.to)?;
    let mid = psi.from.cols.clone();
    MatCell::from_fn(from, to, |i, j, e| {
        let (tag, p) = e.as_tagged()?;
        let (x, y) = p.as_pair()?;
        let k = position(&mid, tag)?;
        Some(Elem::tagged(tag.clone(), Elem::pair(psi.apply(i, k, x)?.clone(), phi.apply(k, j, y)?.clone())))
    })
}

/// `(h∘g)∘f ⇒ h∘(g∘f)`, sending `b:(x, c:(y,z))` to `c:(b:(x,y), z)`.
pub fn mat_associator(h: &FinMatrix, g: &FinMatrix, f: &FinMatrix) -> Result<MatCell> {
    let from = mat_compose(&mat_compose(h, g)?, f)?;
    let to = mat_compose(h, &mat_compose(g, f)?)?;
    MatCell::from_fn(from, to, |_, _, e| {
        let (b, p) = e.as_tagged()?;
        let (x, q) = p.as_pair()?;
        let (c, r) = q.as_tagged()?;
        let (y, z) = r.as_pair()?;
        let inner = Elem::tagged(b.clone(), Elem::pair(x.clone(), y.clone()));
        Some(Elem::tagged(c.clone(), Elem::pair(inner, z.clone())))
    })
}

/// `1∘f ⇒ f`, sending `j:(x,*)` to `x`.
pub fn mat_left_unitor(f: &FinMatrix) -> Result<MatCell> {
    let from = mat_compose(&FinMatrix::identity(&f.cols), f)?;
    MatCell::from_fn(from, f.clone(), |_, _, e| {
        let (_, p) = e.as_tagged()?;
        p.as_pair().map(|(x, _)| x.clone())
    })
}

/// `f∘1 ⇒ f`, sending `i:(*,x)` to `x`.
pub fn mat_right_unitor(f: &FinMatrix) -> Result<MatCell> {
    let from = mat_compose(f, &FinMatrix::identity(&f.rows))?;
    MatCell::from_fn(from, f.clone(), |_, _, e| {
        let (_, p) = e.as_tagged()?;
        p.as_pair().map(|(_, x)| x.clone())
    })
}

/// Compares the two composites `((kh)g)f ⇒ k(h(gf))` built from associators.
pub fn mat_pentagon(k: &FinMatrix, h: &FinMatrix, g: &FinMatrix, f: &FinMatrix) -> Result<bool> {
    let kh = mat_compose(k, h)?;
    let hg = mat_compose(h, g)?;
    let gf = mat_compose(g, f)?;
    let top = mat_associator(&kh, g, f)?.then(&mat_associator(k, h, &gf)?)?;
    let bottom = mat_hcomp(&mat_associator(k, h, g)?, &MatCell::identity(f))?
        .then(&mat_associator(k, &hg, f)?)?
        .then(&mat_hcomp(&MatCell::identity(k), &mat_associator(h, g, f)?)?)?;
    Ok(top == bottom)
}

/// Compares `(1_g * l_f) ∘ a_{g,1,f}` with `r_g * 1_f`.
pub fn mat_triangle(g: &FinMatrix, f: &FinMatrix) -> Result<bool> {
    let one = FinMatrix::identity(&f.cols);
    let lhs = mat_associator(g, &one, f)?.then(&mat_hcomp(&MatCell::identity(g), &mat_left_unitor(f)?)?)?;
    let rhs = mat_hcomp(&mat_right_unitor(g)?, &MatCell::identity(f))?;
    Ok(lhs == rhs)
}
