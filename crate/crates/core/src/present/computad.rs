use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::word::{Letter, Word};
use crate::error::{Error, Result};
use crate::fincat::{EdgeSpec, FinGraph, Functor, GraphData};

/// A relation `lhs = rhs` between parallel words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub id: String,
    pub lhs: Word,
    pub rhs: Word,
}

/// A graph with relations between parallel words. In groupoidal mode words
/// may traverse edges backwards and present a groupoid; otherwise they are
/// paths and present a category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Computad2 {
    pub graph: FinGraph,
    pub relations: Vec<Relation>,
    pub groupoidal: bool,
}

/// Wire form of a relation; `start` is only needed when both sides are empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationData {
    pub id: String,
    pub lhs: Vec<(String, i8)>,
    pub rhs: Vec<(String, i8)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<String>,
}

/// Wire form `computad/v1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputadData {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub graph: GraphData,
    pub groupoidal: bool,
    pub relations: Vec<RelationData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
}

fn letters_to_data(g: &FinGraph, w: &Word) -> Vec<(String, i8)> {
    w.letters
        .iter()
        .map(|l| (g.edges()[l.edge].id.clone(), if l.inverse { -1 } else { 1 }))
        .collect()
}

fn letters_from_data(g: &FinGraph, data: &[(String, i8)]) -> Result<Vec<Letter>> {
    data.iter()
        .map(|(e, o)| {
            let edge = g
                .edge(e)
                .ok_or_else(|| Error::MalformedInput(format!("dangling edge `{e}` in relation")))?;
            match o {
                1 => Ok(Letter::forward(edge)),
                -1 => Ok(Letter::backward(edge)),
                _ => Err(Error::MalformedInput(format!("orientation must be +1 or -1, got {o}"))),
            }
        })
        .collect()
}

impl Computad2 {
    /// Checks that every relation is between parallel composable words, positive
    /// in category mode and reduced in groupoid mode.
    pub fn new(graph: FinGraph, relations: Vec<Relation>, groupoidal: bool) -> Result<Computad2> {
        let mut seen = std::collections::BTreeSet::new();
        for r in &relations {
            if !seen.insert(r.id.as_str()) {
                return Err(Error::MalformedInput(format!("duplicate relation id `{}`", r.id)));
            }
            for w in [&r.lhs, &r.rhs] {
                if w.start >= graph.nodes().len() || w.letters.iter().any(|l| l.edge >= graph.edges().len()) {
                    return Err(Error::MalformedInput(format!("relation `{}` refers to unknown cells", r.id)));
                }
                if !w.is_composable(&graph) {
                    return Err(Error::MalformedInput(format!("relation `{}` has a non-composable side", r.id)));
                }
                if !groupoidal && !w.is_positive() {
                    return Err(Error::MalformedInput(format!(
                        "relation `{}` uses an inverse edge in a non-groupoidal computad",
                        r.id
                    )));
                }
                if groupoidal && !w.is_reduced() {
                    return Err(Error::MalformedInput(format!("relation `{}` has an unreduced side", r.id)));
                }
            }
            if r.lhs.start != r.rhs.start || r.lhs.end(&graph) != r.rhs.end(&graph) {
                return Err(Error::NotParallel(format!("relation `{}`", r.id)));
            }
        }
        Ok(Computad2 {
            graph,
            relations,
            groupoidal,
        })
    }

    pub fn from_data(data: &ComputadData) -> Result<Computad2> {
        if let Some(s) = &data.schema {
            if s != "computad/v1" {
                return Err(Error::UnsupportedSchema(s.clone()));
            }
        }
        let graph = FinGraph::new(&data.graph)?;
        let mut relations = Vec::new();
        for r in &data.relations {
            let lhs = letters_from_data(&graph, &r.lhs)?;
            let rhs = letters_from_data(&graph, &r.rhs)?;
            let start = match (&r.start, lhs.first(), rhs.first()) {
                (Some(s), _, _) => graph.node(s)?,
                (None, Some(l), _) | (None, None, Some(l)) => l.source(&graph),
                (None, None, None) => {
                    return Err(Error::MalformedInput(format!(
                        "relation `{}` has two empty sides and no start",
                        r.id
                    )))
                }
            };
            relations.push(Relation {
                id: r.id.clone(),
                lhs: Word { start, letters: lhs },
                rhs: Word { start, letters: rhs },
            });
        }
        Computad2::new(graph, relations, data.groupoidal)
    }

    pub fn to_data(&self) -> ComputadData {
        ComputadData {
            schema: Some("computad/v1".into()),
            graph: self.graph.to_data(),
            groupoidal: self.groupoidal,
            relations: self
                .relations
                .iter()
                .map(|r| RelationData {
                    id: r.id.clone(),
                    lhs: letters_to_data(&self.graph, &r.lhs),
                    rhs: letters_to_data(&self.graph, &r.rhs),
                    start: (r.lhs.is_empty() && r.rhs.is_empty()).then(|| self.graph.nodes()[r.lhs.start].clone()),
                })
                .collect(),
            bound: None,
        }
    }

    /// Longest relation side.
    pub fn max_relation_length(&self) -> usize {
        self.relations.iter().map(|r| r.lhs.len().max(r.rhs.len())).max().unwrap_or(0)
    }

    /// Convenience constructor from word texts, e.g. `("comm", "ab", "ba")`.
    pub fn from_texts(graph: FinGraph, relations: &[(&str, &str, &str)], groupoidal: bool) -> Result<Computad2> {
        let mut rels = Vec::new();
        for (id, l, r) in relations {
            let (lw, rw) = match (l.is_empty(), r.is_empty()) {
                (false, _) => {
                    let lw = Word::parse(&graph, l, None)?;
                    let start = graph.nodes()[lw.start].clone();
                    (lw, Word::parse(&graph, r, Some(&start))?)
                }
                (true, false) => {
                    let rw = Word::parse(&graph, r, None)?;
                    let start = graph.nodes()[rw.start].clone();
                    (Word::parse(&graph, l, Some(&start))?, rw)
                }
                (true, true) => return Err(Error::MalformedInput("relation with two empty sides".into())),
            };
            rels.push(Relation {
                id: id.to_string(),
                lhs: lw,
                rhs: rw,
            });
        }
        Computad2::new(graph, rels, groupoidal)
    }
}

/// A computad together with the word-length bound used for saturation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub computad: Computad2,
    pub bound: usize,
}

impl Presentation {
    pub fn new(computad: Computad2, bound: usize) -> Result<Presentation> {
        if bound < computad.max_relation_length() {
            return Err(Error::MalformedInput(format!(
                "bound {bound} is shorter than a relation side ({})",
                computad.max_relation_length()
            )));
        }
        Ok(Presentation { computad, bound })
    }

    /// Uses the longest relation side as the bound.
    pub fn tight(computad: Computad2) -> Presentation {
        let bound = computad.max_relation_length();
        Presentation { computad, bound }
    }

    pub fn from_data(data: &ComputadData) -> Result<Presentation> {
        let c = Computad2::from_data(data)?;
        match data.bound {
            Some(b) => Presentation::new(c, b),
            None => Ok(Presentation::tight(c)),
        }
    }

    pub fn to_data(&self) -> ComputadData {
        let mut d = self.computad.to_data();
        d.bound = Some(self.bound);
        d
    }

    pub fn graph(&self) -> &FinGraph {
        &self.computad.graph
    }

    /// Removes every loop `e` related to the empty word (`e = 1`), substituting
    /// the empty word for it, and drops relations that become trivial. Returns
    /// the new presentation and, for each old edge, its index in the new graph
    /// (`None` when eliminated).
    pub fn eliminate_identity_edges(&self) -> Result<(Presentation, Vec<Option<usize>>)> {
        let g = &self.computad.graph;
        let mut killed = vec![false; g.edges().len()];
        loop {
            let mut changed = false;
            for r in &self.computad.relations {
                let strip = |w: &Word| -> Vec<Letter> { w.letters.iter().copied().filter(|l| !killed[l.edge]).collect() };
                let (l, rr) = (strip(&r.lhs), strip(&r.rhs));
                for (one, other) in [(&l, &rr), (&rr, &l)] {
                    if one.len() == 1 && other.is_empty() {
                        let e = &g.edges()[one[0].edge];
                        if e.src == e.tgt && !killed[one[0].edge] {
                            killed[one[0].edge] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut map = vec![None; g.edges().len()];
        let mut edges = Vec::new();
        for (i, e) in g.edges().iter().enumerate() {
            if !killed[i] {
                edges.push(EdgeSpec {
                    id: e.id.clone(),
                    src: g.nodes()[e.src].clone(),
                    tgt: g.nodes()[e.tgt].clone(),
                });
            }
        }
        let graph = FinGraph::new(&GraphData {
            nodes: g.nodes().to_vec(),
            edges,
        })?;
        for (i, e) in g.edges().iter().enumerate() {
            if !killed[i] {
                map[i] = graph.edge(&e.id);
            }
        }
        let translate = |w: &Word| -> Word {
            let letters = w
                .letters
                .iter()
                .filter_map(|l| map[l.edge].map(|edge| Letter { edge, inverse: l.inverse }))
                .collect();
            let w = Word { start: w.start, letters };
            if self.computad.groupoidal {
                w.reduce()
            } else {
                w
            }
        };
        let relations = self
            .computad
            .relations
            .iter()
            .map(|r| Relation {
                id: r.id.clone(),
                lhs: translate(&r.lhs),
                rhs: translate(&r.rhs),
            })
            .filter(|r| r.lhs != r.rhs)
            .collect();
        let computad = Computad2::new(graph, relations, self.computad.groupoidal)?;
        Ok((
            Presentation {
                computad,
                bound: self.bound,
            },
            map,
        ))
    }

    /// Maps a word of this presentation through an edge renumbering from
    /// [`Presentation::eliminate_identity_edges`].
    pub fn translate_word(&self, w: &Word, map: &[Option<usize>]) -> Word {
        let letters = w
            .letters
            .iter()
            .filter_map(|l| map[l.edge].map(|edge| Letter { edge, inverse: l.inverse }))
            .collect();
        let w = Word { start: w.start, letters };
        if self.computad.groupoidal {
            w.reduce()
        } else {
            w
        }
    }
}

/// The free category (or free groupoid) on `g`: no relations.
pub fn presentation_from_graph(g: FinGraph, groupoidal: bool) -> Presentation {
    Presentation::tight(Computad2 {
        graph: g,
        relations: Vec::new(),
        groupoidal,
    })
}

/// Presentation of the coinserter of `f0, f1: A → B`: the graph of `B` with a
/// fresh edge `α_a: f0(a) → f1(a)` per object of `A`, related by the composition
/// table of `B`, identity edges set equal to empty paths, and one naturality
/// relation `α_{a'}·f0(m) = f1(m)·α_a` per morphism `m: a → a'`.
pub fn coinserter(f0: &Functor, f1: &Functor) -> Result<Presentation> {
    if f0.dom != f1.dom || f0.cod != f1.cod {
        return Err(Error::BoundaryMismatch("coinserter needs a parallel pair".into()));
    }
    let (a, b) = (&f0.dom, &f0.cod);
    let alpha = |x| format!("alpha_{}", a.obj_id(x));
    let mut edges: Vec<EdgeSpec> = b
        .morphisms()
        .map(|m| EdgeSpec {
            id: b.mor_id(m).to_string(),
            src: b.obj_id(b.src(m)).to_string(),
            tgt: b.obj_id(b.tgt(m)).to_string(),
        })
        .collect();
    for x in a.objects() {
        edges.push(EdgeSpec {
            id: alpha(x),
            src: b.obj_id(f0.ob(x)).to_string(),
            tgt: b.obj_id(f1.ob(x)).to_string(),
        });
    }
    let graph = FinGraph::new(&GraphData {
        nodes: b.objects().map(|o| b.obj_id(o).to_string()).collect(),
        edges,
    })?;
    let e = |id: &str| Letter::forward(graph.edge(id).expect("edge was just added"));
    let node = |id: &str| graph.node(id).expect("node was just added");
    let mut relations = Vec::new();
    let mut names = BTreeMap::new();
    let mut fresh = |base: String| {
        let n = names.entry(base.clone()).or_insert(0usize);
        *n += 1;
        if *n == 1 {
            base
        } else {
            format!("{base}#{n}")
        }
    };
    for f in b.morphisms() {
        for &g in b.out_of(b.tgt(f)) {
            let start = node(b.obj_id(b.src(f)));
            relations.push(Relation {
                id: fresh(format!("comp({},{})", b.mor_id(g), b.mor_id(f))),
                lhs: Word {
                    start,
                    letters: vec![e(b.mor_id(f)), e(b.mor_id(g))],
                },
                rhs: Word {
                    start,
                    letters: vec![e(b.mor_id(b.compose(g, f)))],
                },
            });
        }
    }
    for o in b.objects() {
        let start = node(b.obj_id(o));
        relations.push(Relation {
            id: fresh(format!("unit({})", b.obj_id(o))),
            lhs: Word {
                start,
                letters: vec![e(b.mor_id(b.id(o)))],
            },
            rhs: Word::empty(start),
        });
    }
    for m in a.morphisms() {
        let (x, y) = (a.src(m), a.tgt(m));
        let start = node(b.obj_id(f0.ob(x)));
        relations.push(Relation {
            id: fresh(format!("nat({})", a.mor_id(m))),
            lhs: Word {
                start,
                letters: vec![e(b.mor_id(f0.mor(m))), e(&alpha(y))],
            },
            rhs: Word {
                start,
                letters: vec![e(&alpha(x)), e(b.mor_id(f1.mor(m)))],
            },
        });
    }
    let computad = Computad2::new(graph, relations, false)?;
    Ok(Presentation::tight(computad))
}
