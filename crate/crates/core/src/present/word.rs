use std::fmt;

use crate::error::{Error, Result};
use crate::fincat::{FinGraph, Path};

/// An edge traversed forwards (`inverse == false`) or backwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub edge: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn forward(edge: usize) -> Letter {
        Letter { edge, inverse: false }
    }

    pub fn backward(edge: usize) -> Letter {
        Letter { edge, inverse: true }
    }

    pub fn inv(self) -> Letter {
        Letter {
            edge: self.edge,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn source(self, g: &FinGraph) -> usize {
        let e = &g.edges()[self.edge];
        if self.inverse {
            e.tgt
        } else {
            e.src
        }
    }

    pub fn target(self, g: &FinGraph) -> usize {
        let e = &g.edges()[self.edge];
        if self.inverse {
            e.src
        } else {
            e.tgt
        }
    }
}

/// A composable sequence of oriented edges starting at `start`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub start: usize,
    pub letters: Vec<Letter>,
}

impl From<Path> for Word {
    fn from(p: Path) -> Word {
        Word {
            start: p.start,
            letters: p.steps.into_iter().map(Letter::forward).collect(),
        }
    }
}

impl Word {
    pub fn empty(start: usize) -> Word {
        Word {
            start,
            letters: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn end(&self, g: &FinGraph) -> usize {
        self.letters.last().map_or(self.start, |l| l.target(g))
    }

    /// Node reached after the first `i` letters.
    pub fn node_at(&self, g: &FinGraph, i: usize) -> usize {
        if i == 0 {
            self.start
        } else {
            self.letters[i - 1].target(g)
        }
    }

    pub fn is_composable(&self, g: &FinGraph) -> bool {
        let mut at = self.start;
        for l in &self.letters {
            if l.source(g) != at {
                return false;
            }
            at = l.target(g);
        }
        true
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| !l.inverse)
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[1] != w[0].inv())
    }

    pub fn inverse(&self, g: &FinGraph) -> Word {
        Word {
            start: self.end(g),
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// Concatenation; the caller guarantees composability.
    pub fn then(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend(&other.letters);
        Word {
            start: self.start,
            letters,
        }
    }

    /// Cancels adjacent `e e⁻¹` pairs.
    pub fn reduce(mut self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for l in self.letters.drain(..) {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        self.letters = out;
        self
    }

    /// Free reduction followed by cancellation across the ends. The result is
    /// a closed word based at the node where the reduced cycle starts.
    pub fn cyclically_reduce(self, g: &FinGraph) -> Word {
        let mut w = self.reduce();
        while w.letters.len() >= 2 && w.letters[0] == w.letters[w.letters.len() - 1].inv() {
            w.letters.pop();
            let first = w.letters.remove(0);
            w.start = first.target(g);
        }
        w
    }

    /// Signed edge counts.
    pub fn abelian_image(&self, num_edges: usize) -> Vec<i64> {
        let mut v = vec![0; num_edges];
        for l in &self.letters {
            v[l.edge] += l.sign();
        }
        v
    }

    pub fn display<'a>(&'a self, g: &'a FinGraph) -> WordDisplay<'a> {
        WordDisplay { word: self, graph: g }
    }

    /// Parses text such as `abab`, `a.b.a'.b'` or `x y^-1`. Tokens are
    /// matched greedily against edge ids; `'`, `^-1` and `⁻¹` mark inverses.
    /// An empty text (or `1`, `ε`) is the empty word at `start`.
    pub fn parse(g: &FinGraph, text: &str, start: Option<&str>) -> Result<Word> {
        let mut letters = Vec::new();
        let mut rest = text.trim();
        if rest == "1" || rest == "ε" {
            rest = "";
        }
        let mut ids: Vec<(usize, &str)> = g.edges().iter().enumerate().map(|(i, e)| (i, e.id.as_str())).collect();
        ids.sort_by_key(|(_, id)| std::cmp::Reverse(id.len()));
        while !rest.is_empty() {
            let trimmed = rest.trim_start_matches([' ', '.', '*', '·']);
            if trimmed.len() != rest.len() {
                rest = trimmed;
                continue;
            }
            let Some(&(edge, id)) = ids.iter().find(|(_, id)| !id.is_empty() && rest.starts_with(id)) else {
                return Err(Error::MalformedInput(format!("cannot parse word at `{rest}`")));
            };
            rest = &rest[id.len()..];
            let mut inverse = false;
            for marker in ["^-1", "⁻¹", "'"] {
                if let Some(r) = rest.strip_prefix(marker) {
                    rest = r;
                    inverse = true;
                    break;
                }
            }
            letters.push(Letter { edge, inverse });
        }
        let start = match (start, letters.first()) {
            (Some(s), _) => g.node(s)?,
            (None, Some(l)) => l.source(g),
            (None, None) => {
                return Err(Error::MalformedInput("empty word needs an explicit start node".into()));
            }
        };
        let w = Word { start, letters };
        if !w.is_composable(g) {
            return Err(Error::MalformedInput(format!("word `{text}` is not composable")));
        }
        Ok(w)
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    graph: &'a FinGraph,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.letters.is_empty() {
            return write!(f, "1_{}", self.graph.nodes()[self.word.start]);
        }
        for (i, l) in self.word.letters.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{}", self.graph.edges()[l.edge].id)?;
            if l.inverse {
                write!(f, "'")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus() -> FinGraph {
        FinGraph::from_parts(&["*"], &[("a", "*", "*"), ("b", "*", "*")]).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let g = torus();
        let w = Word::parse(&g, "ab a'b^-1", None).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.display(&g).to_string(), "a.b.a'.b'");
        assert!(Word::parse(&g, "", None).is_err());
        assert!(Word::parse(&g, "", Some("*")).unwrap().is_empty());
        assert!(Word::parse(&g, "c", None).is_err());
    }

    #[test]
    fn reductions() {
        let g = torus();
        let w = Word::parse(&g, "a b b' a'", None).unwrap();
        assert!(w.clone().reduce().is_empty());
        let w = Word::parse(&g, "b a b'", None).unwrap().cyclically_reduce(&g);
        assert_eq!(w.display(&g).to_string(), "a");
    }

    #[test]
    fn composability_across_nodes() {
        let g = FinGraph::from_parts(&["p", "q"], &[("e", "p", "q")]).unwrap();
        assert!(Word::parse(&g, "e e'", None).unwrap().is_composable(&g));
        assert!(Word::parse(&g, "e e", None).is_err());
    }
}
