use std::fmt;

use serde::{Deserialize, Serialize};

use super::computad::Presentation;
use crate::error::{Error, Result};
use crate::topo::snf::{smith_normal_form, IntMatrix};

/// A finitely generated abelian group `ℤ^rank ⊕ ℤ/t₁ ⊕ … ⊕ ℤ/tₖ` with
/// `t₁ | … | tₖ`, all `tᵢ > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<i64>,
}

impl AbelianGroup {
    pub fn trivial() -> AbelianGroup {
        AbelianGroup {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Quotient of `ℤ^n` by the column span of `relations` (an `n × k` matrix).
    pub fn cokernel(relations: &IntMatrix) -> Result<AbelianGroup> {
        let snf = smith_normal_form(relations)?;
        Ok(AbelianGroup {
            rank: relations.rows - snf.rank,
            torsion: snf.diagonal.into_iter().filter(|&d| d > 1).collect(),
        })
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Abelianized vertex group of one connected component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentGroup {
    pub nodes: Vec<String>,
    pub group: AbelianGroup,
}

fn require_groupoidal(p: &Presentation) -> Result<()> {
    if p.computad.groupoidal {
        Ok(())
    } else {
        Err(Error::NotGroupoidal)
    }
}

/// Per component, the free abelian group on the edges outside a BFS spanning
/// forest modulo the images of the relations.
pub fn abelianization(p: &Presentation) -> Result<Vec<ComponentGroup>> {
    require_groupoidal(p)?;
    let g = p.graph();
    let tree = g.spanning_forest();
    let ne = g.edges().len();
    let mut comp_of = vec![0; g.nodes().len()];
    let comps = g.components();
    for (k, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = k;
        }
    }
    let mut out = Vec::new();
    for (k, nodes) in comps.iter().enumerate() {
        let gens: Vec<usize> = (0..ne)
            .filter(|&e| !tree.contains(&e) && comp_of[g.edges()[e].src] == k)
            .collect();
        let rels: Vec<Vec<i64>> = p
            .computad
            .relations
            .iter()
            .filter(|r| comp_of[r.lhs.start] == k)
            .map(|r| {
                let (a, b) = (r.lhs.abelian_image(ne), r.rhs.abelian_image(ne));
                gens.iter().map(|&e| a[e] - b[e]).collect()
            })
            .collect();
        let mut m = IntMatrix::zeros(gens.len(), rels.len());
        for (c, v) in rels.iter().enumerate() {
            for (r, &x) in v.iter().enumerate() {
                m.set(r, c, x);
            }
        }
        out.push(ComponentGroup {
            nodes: nodes.iter().map(|&v| g.nodes()[v].clone()).collect(),
            group: AbelianGroup::cokernel(&m)?,
        });
    }
    Ok(out)
}

/// `(|E| − |V| + #components) − |R|`: rank of the free groupoid on the graph
/// minus the number of relations.
pub fn deficiency(p: &Presentation) -> Result<i64> {
    require_groupoidal(p)?;
    let g = p.graph();
    let rank = g.edges().len() as i64 - g.nodes().len() as i64 + g.components().len() as i64;
    Ok(rank - p.computad.relations.len() as i64)
}

/// Verdict of the Euler characteristic test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum Thinness {
    /// Some component has `χ < 1`; its least node is reported.
    NotThin { component: String, euler: i64 },
    Inconclusive,
}

/// Euler characteristic `|V| − |E| + |R|` of each component, in the order of
/// [`crate::fincat::FinGraph::components`].
pub fn component_euler(p: &Presentation) -> Vec<i64> {
    let g = p.graph();
    let comps = g.components();
    let mut comp_of = vec![0; g.nodes().len()];
    for (k, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = k;
        }
    }
    let mut chi: Vec<i64> = comps.iter().map(|c| c.len() as i64).collect();
    for e in g.edges() {
        chi[comp_of[e.src]] -= 1;
    }
    for r in &p.computad.relations {
        chi[comp_of[r.lhs.start]] += 1;
    }
    chi
}

/// A component with Euler characteristic below 1 cannot present a thin
/// groupoid. The converse does not hold, hence `Inconclusive`.
pub fn thinness_obstruction(p: &Presentation) -> Result<Thinness> {
    require_groupoidal(p)?;
    let g = p.graph();
    let comps = g.components();
    for (k, chi) in component_euler(p).into_iter().enumerate() {
        if chi < 1 {
            return Ok(Thinness::NotThin {
                component: g.nodes()[comps[k][0]].clone(),
                euler: chi,
            });
        }
    }
    Ok(Thinness::Inconclusive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinGraph;
    use crate::present::computad::Computad2;

    fn one_node(edges: &[&str], rels: &[(&str, &str, &str)]) -> Presentation {
        let e: Vec<(&str, &str, &str)> = edges.iter().map(|&e| (e, "*", "*")).collect();
        let g = FinGraph::from_parts(&["*"], &e).unwrap();
        Presentation::tight(Computad2::from_texts(g, rels, true).unwrap())
    }

    fn group(p: &Presentation) -> AbelianGroup {
        let mut a = abelianization(p).unwrap();
        assert_eq!(a.len(), 1);
        a.remove(0).group
    }

    #[test]
    fn torus() {
        let p = one_node(&["a", "b"], &[("t", "a b a' b'", "")]);
        assert_eq!(group(&p), AbelianGroup { rank: 2, torsion: vec![] });
        assert_eq!(deficiency(&p).unwrap(), 1);
        assert_eq!(
            thinness_obstruction(&p).unwrap(),
            Thinness::NotThin {
                component: "*".into(),
                euler: 0
            }
        );
    }

    #[test]
    fn killed_generator() {
        let p = one_node(&["a"], &[("k", "a", "")]);
        assert!(group(&p).is_trivial());
        assert_eq!(deficiency(&p).unwrap(), 0);
        assert_eq!(thinness_obstruction(&p).unwrap(), Thinness::Inconclusive);
    }

    #[test]
    fn cyclic_of_order_three() {
        let p = one_node(&["a"], &[("c", "aaa", "")]);
        assert_eq!(group(&p), AbelianGroup { rank: 0, torsion: vec![3] });
        assert_eq!(group(&p).to_string(), "Z/3");
    }

    #[test]
    fn free_loop() {
        let p = one_node(&["x"], &[]);
        assert_eq!(group(&p).to_string(), "Z");
        assert_eq!(deficiency(&p).unwrap(), 1);
        assert!(matches!(thinness_obstruction(&p).unwrap(), Thinness::NotThin { euler: 0, .. }));
    }

    #[test]
    fn components_are_separate() {
        let g = FinGraph::from_parts(&["p", "q", "r"], &[("e", "p", "q"), ("l", "r", "r")]).unwrap();
        let p = Presentation::tight(Computad2::new(g, vec![], true).unwrap());
        let a = abelianization(&p).unwrap();
        assert_eq!(a.len(), 2);
        assert!(a[0].group.is_trivial());
        assert_eq!(a[1].group.rank, 1);
        assert_eq!(component_euler(&p), vec![1, 0]);
        assert_eq!(deficiency(&p).unwrap(), 1);
    }

    #[test]
    fn category_presentations_rejected() {
        let g = FinGraph::from_parts(&["*"], &[("x", "*", "*")]).unwrap();
        let p = Presentation::tight(Computad2::new(g, vec![], false).unwrap());
        assert!(matches!(abelianization(&p), Err(Error::NotGroupoidal)));
    }
}
