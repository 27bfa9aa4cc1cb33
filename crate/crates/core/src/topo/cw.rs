use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::snf::{smith_normal_form, IntMatrix};
use crate::error::{Error, Result};
use crate::fincat::{EdgeSpec, FinGraph, GraphData};
use crate::present::{AbelianGroup, Computad2, Presentation, Relation, Word};

/// A 2-cell attached along a closed, cyclically reduced word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell2 {
    pub id: String,
    pub boundary: Word,
}

/// A 2-dimensional CW complex given by its cells: the 1-skeleton is a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CWComplex2 {
    pub skeleton: FinGraph,
    pub cells2: Vec<Cell2>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell2Data {
    pub id: String,
    pub base: String,
    pub boundary: Vec<(String, i8)>,
}

/// Wire form `cw/v1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CWData {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub cells0: Vec<String>,
    pub cells1: Vec<EdgeSpec>,
    pub cells2: Vec<Cell2Data>,
}

/// Euler characteristic of each connected component and of the whole complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerCharacteristic {
    pub per_component: Vec<i64>,
    pub total: i64,
}

/// Integral homology in degrees 0 and 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homology {
    pub h0_rank: usize,
    pub h1: AbelianGroup,
}

impl CWComplex2 {
    pub fn new(skeleton: FinGraph, cells2: Vec<Cell2>) -> Result<CWComplex2> {
        for c in &cells2 {
            let w = &c.boundary;
            if w.start >= skeleton.nodes().len() || w.letters.iter().any(|l| l.edge >= skeleton.edges().len()) {
                return Err(Error::MalformedInput(format!("2-cell `{}` refers to unknown cells", c.id)));
            }
            if !w.is_composable(&skeleton) || w.end(&skeleton) != w.start {
                return Err(Error::MalformedInput(format!("boundary of `{}` is not a closed walk", c.id)));
            }
        }
        Ok(CWComplex2 { skeleton, cells2 })
    }

    pub fn from_data(data: &CWData) -> Result<CWComplex2> {
        if let Some(s) = &data.schema {
            if s != "cw/v1" {
                return Err(Error::UnsupportedSchema(s.clone()));
            }
        }
        let skeleton = FinGraph::new(&GraphData {
            nodes: data.cells0.clone(),
            edges: data.cells1.clone(),
        })?;
        let mut cells = Vec::new();
        for c in &data.cells2 {
            let start = skeleton.node(&c.base)?;
            let mut letters = Vec::new();
            for (e, o) in &c.boundary {
                let edge = skeleton
                    .edge(e)
                    .ok_or_else(|| Error::MalformedInput(format!("dangling 1-cell `{e}`")))?;
                letters.push(crate::present::Letter {
                    edge,
                    inverse: match o {
                        1 => false,
                        -1 => true,
                        _ => return Err(Error::MalformedInput(format!("orientation must be +1 or -1, got {o}"))),
                    },
                });
            }
            cells.push(Cell2 {
                id: c.id.clone(),
                boundary: Word { start, letters },
            });
        }
        CWComplex2::new(skeleton, cells)
    }

    pub fn to_data(&self) -> CWData {
        let g = &self.skeleton;
        let gd = g.to_data();
        CWData {
            schema: Some("cw/v1".into()),
            cells0: gd.nodes,
            cells1: gd.edges,
            cells2: self
                .cells2
                .iter()
                .map(|c| Cell2Data {
                    id: c.id.clone(),
                    base: g.nodes()[c.boundary.start].clone(),
                    boundary: c
                        .boundary
                        .letters
                        .iter()
                        .map(|l| (g.edges()[l.edge].id.clone(), if l.inverse { -1 } else { 1 }))
                        .collect(),
                })
                .collect(),
        }
    }

    fn component_of(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let comps = self.skeleton.components();
        let mut comp_of = vec![0; self.skeleton.nodes().len()];
        for (k, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = k;
            }
        }
        (comps, comp_of)
    }

    /// `∂₁`: vertices × edges, column `e` is `tgt(e) − src(e)`.
    pub fn boundary1(&self) -> IntMatrix {
        let g = &self.skeleton;
        let mut m = IntMatrix::zeros(g.nodes().len(), g.edges().len());
        for (i, e) in g.edges().iter().enumerate() {
            if e.src != e.tgt {
                m.set(e.tgt, i, 1);
                m.set(e.src, i, -1);
            }
        }
        m
    }

    /// `∂₂`: edges × 2-cells, column `c` is the signed edge count of its boundary.
    pub fn boundary2(&self) -> IntMatrix {
        let ne = self.skeleton.edges().len();
        let mut m = IntMatrix::zeros(ne, self.cells2.len());
        for (c, cell) in self.cells2.iter().enumerate() {
            for (r, x) in cell.boundary.abelian_image(ne).into_iter().enumerate() {
                m.set(r, c, x);
            }
        }
        m
    }

    /// Restriction to the cells of one component.
    pub fn component(&self, k: usize) -> Result<CWComplex2> {
        let (comps, comp_of) = self.component_of();
        let g = &self.skeleton;
        let nodes: Vec<String> = comps[k].iter().map(|&v| g.nodes()[v].clone()).collect();
        let edges: Vec<EdgeSpec> = g
            .edges()
            .iter()
            .filter(|e| comp_of[e.src] == k)
            .map(|e| EdgeSpec {
                id: e.id.clone(),
                src: g.nodes()[e.src].clone(),
                tgt: g.nodes()[e.tgt].clone(),
            })
            .collect();
        let sub = FinGraph::new(&GraphData { nodes, edges })?;
        let cells = self
            .cells2
            .iter()
            .filter(|c| comp_of[c.boundary.start] == k)
            .map(|c| Cell2 {
                id: c.id.clone(),
                boundary: Word {
                    start: sub.node(&g.nodes()[c.boundary.start]).expect("node kept"),
                    letters: c
                        .boundary
                        .letters
                        .iter()
                        .map(|l| crate::present::Letter {
                            edge: sub.edge(&g.edges()[l.edge].id).expect("edge kept"),
                            inverse: l.inverse,
                        })
                        .collect(),
                },
            })
            .collect();
        CWComplex2::new(sub, cells)
    }

    pub fn num_components(&self) -> usize {
        self.skeleton.components().len()
    }

    pub fn to_dot(&self) -> String {
        let g = &self.skeleton;
        let mut s = String::from("digraph cw {\n");
        for n in g.nodes() {
            let _ = writeln!(s, "  \"{n}\";");
        }
        for e in g.edges() {
            let _ = writeln!(s, "  \"{}\" -> \"{}\" [label=\"{}\"];", g.nodes()[e.src], g.nodes()[e.tgt], e.id);
        }
        for c in &self.cells2 {
            let _ = writeln!(
                s,
                "  \"{}\" [shape=box, label=\"{}: {}\"];",
                c.id,
                c.id,
                c.boundary.display(g)
            );
            let _ = writeln!(s, "  \"{}\" -> \"{}\" [style=dashed];", c.id, g.nodes()[c.boundary.start]);
        }
        s.push_str("}\n");
        s
    }
}

/// 0-cells are nodes, 1-cells are edges and each relation `l = r` attaches a
/// 2-cell along `l·r⁻¹`, cyclically reduced.
pub fn realize2(c: &Computad2) -> CWComplex2 {
    let g = &c.graph;
    let cells2 = c
        .relations
        .iter()
        .map(|r| Cell2 {
            id: r.id.clone(),
            boundary: r.lhs.then(&r.rhs.inverse(g)).cyclically_reduce(g),
        })
        .collect();
    CWComplex2 {
        skeleton: g.clone(),
        cells2,
    }
}

/// 2-cells count towards the component of their base vertex.
pub fn euler_characteristic(x: &CWComplex2) -> EulerCharacteristic {
    let (comps, comp_of) = x.component_of();
    let mut chi: Vec<i64> = comps.iter().map(|c| c.len() as i64).collect();
    for e in x.skeleton.edges() {
        chi[comp_of[e.src]] -= 1;
    }
    for c in &x.cells2 {
        chi[comp_of[c.boundary.start]] += 1;
    }
    EulerCharacteristic {
        total: chi.iter().sum(),
        per_component: chi,
    }
}

/// `H₀` has rank `#components`; `H₁ = ker ∂₁ / im ∂₂` has free rank
/// `|E| − rank ∂₁ − rank ∂₂` and torsion the invariant factors of `∂₂`.
pub fn homology(x: &CWComplex2) -> Result<Homology> {
    let d1 = smith_normal_form(&x.boundary1())?;
    let d2 = smith_normal_form(&x.boundary2())?;
    Ok(Homology {
        h0_rank: x.skeleton.nodes().len() - d1.rank,
        h1: AbelianGroup {
            rank: x.skeleton.edges().len() - d1.rank - d2.rank,
            torsion: d2.diagonal.into_iter().filter(|&d| d > 1).collect(),
        },
    })
}

/// `H₁` of every connected component, listed by least vertex.
pub fn homology_by_component(x: &CWComplex2) -> Result<Vec<AbelianGroup>> {
    (0..x.num_components()).map(|k| Ok(homology(&x.component(k)?)?.h1)).collect()
}

/// One object per vertex, every 1-cell a generator and every 2-cell the
/// relation `boundary = 1`. No spanning tree is collapsed.
pub fn fundamental_groupoid_presentation(x: &CWComplex2) -> Result<Presentation> {
    let relations = x
        .cells2
        .iter()
        .map(|c| Relation {
            id: c.id.clone(),
            lhs: c.boundary.clone(),
            rhs: Word::empty(c.boundary.start),
        })
        .collect();
    Ok(Presentation::tight(Computad2::new(x.skeleton.clone(), relations, true)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::present::abelianization;

    fn one_node(edges: &[&str], rels: &[(&str, &str, &str)]) -> Computad2 {
        let e: Vec<(&str, &str, &str)> = edges.iter().map(|&e| (e, "*", "*")).collect();
        let g = FinGraph::from_parts(&["*"], &e).unwrap();
        Computad2::from_texts(g, rels, true).unwrap()
    }

    #[test]
    fn torus() {
        let x = realize2(&one_node(&["a", "b"], &[("t", "ab", "ba")]));
        assert_eq!(x.cells2[0].boundary.display(&x.skeleton).to_string(), "a.b.a'.b'");
        assert_eq!(euler_characteristic(&x).total, 0);
        let h = homology(&x).unwrap();
        assert_eq!(h.h0_rank, 1);
        assert_eq!(h.h1, AbelianGroup { rank: 2, torsion: vec![] });
    }

    #[test]
    fn disk_and_circle() {
        let disk = realize2(&one_node(&["a"], &[("d", "a", "")]));
        assert!(homology(&disk).unwrap().h1.is_trivial());
        assert_eq!(euler_characteristic(&disk).total, 1);
        let circle = realize2(&one_node(&["a"], &[]));
        assert_eq!(homology(&circle).unwrap().h1.rank, 1);
        assert_eq!(euler_characteristic(&circle).per_component, vec![0]);
        let p = fundamental_groupoid_presentation(&circle).unwrap();
        assert_eq!(abelianization(&p).unwrap()[0].group.rank, 1);
    }

    #[test]
    fn point() {
        let g = FinGraph::from_parts::<&str, &str>(&["p"], &[]).unwrap();
        let x = CWComplex2::new(g, vec![]).unwrap();
        assert_eq!(euler_characteristic(&x).total, 1);
        assert_eq!(homology(&x).unwrap().h0_rank, 1);
    }

    #[test]
    fn projective_plane_has_torsion() {
        let x = realize2(&one_node(&["a"], &[("rp2", "aa", "")]));
        assert_eq!(homology(&x).unwrap().h1, AbelianGroup { rank: 0, torsion: vec![2] });
    }

    #[test]
    fn components_split() {
        let g = FinGraph::from_parts(&["p", "q", "r"], &[("e", "p", "q"), ("l", "r", "r")]).unwrap();
        let x = CWComplex2::new(g, vec![]).unwrap();
        assert_eq!(euler_characteristic(&x).per_component, vec![1, 0]);
        let hs = homology_by_component(&x).unwrap();
        assert!(hs[0].is_trivial());
        assert_eq!(hs[1].rank, 1);
        assert_eq!(homology(&x).unwrap().h0_rank, 2);
    }

    #[test]
    fn wire_roundtrip() {
        let x = realize2(&one_node(&["a", "b"], &[("t", "ab", "ba")]));
        let back = CWComplex2::from_data(&x.to_data()).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn open_boundary_rejected() {
        let g = FinGraph::from_parts(&["p", "q"], &[("e", "p", "q")]).unwrap();
        let cell = Cell2 {
            id: "c".into(),
            boundary: Word {
                start: 0,
                letters: vec![crate::present::Letter::forward(0)],
            },
        };
        assert!(CWComplex2::new(g, vec![cell]).is_err());
    }
}
