use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::computad::Presentation;
use super::word::{Letter, Word};
use crate::error::{Error, Result};
use crate::fincat::FinGraph;
use crate::topo::snf::{solve_integer, IntMatrix};

/// Outcome of the bounded word problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WordEq {
    Equal,
    Distinct,
    Unknown,
}

/// Words explored per search direction before giving up on rewriting.
pub const STATE_CAP: usize = 200_000;

/// A rewrite `from → to`, applicable at positions whose node is `node` when
/// `from` is empty.
#[derive(Debug, Clone)]
struct Rule {
    node: usize,
    from: Vec<Letter>,
    to: Vec<Letter>,
}

fn rules(p: &Presentation) -> Vec<Rule> {
    let g = p.graph();
    let mut out = Vec::new();
    for r in &p.computad.relations {
        if p.computad.groupoidal {
            let relator = r.lhs.then(&r.rhs.inverse(g)).cyclically_reduce(g);
            for cyc in [relator.clone(), relator.inverse(g)] {
                let n = cyc.len();
                if n == 0 {
                    continue;
                }
                for rot in 0..n {
                    let letters: Vec<Letter> = cyc.letters[rot..].iter().chain(&cyc.letters[..rot]).copied().collect();
                    let node = cyc.letters[rot].source(g);
                    for cut in 0..=n {
                        let (pre, post) = letters.split_at(cut);
                        out.push(Rule {
                            node,
                            from: pre.to_vec(),
                            to: post.iter().rev().map(|l| l.inv()).collect(),
                        });
                    }
                }
            }
        } else {
            out.push(Rule {
                node: r.lhs.start,
                from: r.lhs.letters.clone(),
                to: r.rhs.letters.clone(),
            });
            out.push(Rule {
                node: r.lhs.start,
                from: r.rhs.letters.clone(),
                to: r.lhs.letters.clone(),
            });
        }
    }
    out
}

fn neighbours(g: &FinGraph, groupoidal: bool, rules: &[Rule], w: &Word, bound: usize, out: &mut Vec<Word>) {
    for rule in rules {
        let k = rule.from.len();
        if k > w.len() {
            continue;
        }
        for i in 0..=w.len() - k {
            if w.letters[i..i + k] != rule.from[..] || (k == 0 && w.node_at(g, i) != rule.node) {
                continue;
            }
            let mut letters = w.letters[..i].to_vec();
            letters.extend(&rule.to);
            letters.extend(&w.letters[i + k..]);
            let mut next = Word { start: w.start, letters };
            if groupoidal {
                next = next.reduce();
            }
            if next.len() <= bound {
                out.push(next);
            }
        }
    }
}

/// Breadth-first search from both ends over words of length at most `bound`.
/// `Some(true)` when the searches meet, `Some(false)` when both closures were
/// exhausted without meeting, `None` when the state cap was hit.
fn bidirectional(p: &Presentation, w1: &Word, w2: &Word, bound: usize) -> Option<bool> {
    let g = p.graph();
    let rules = rules(p);
    let mut seen = [HashSet::from([w1.clone()]), HashSet::from([w2.clone()])];
    let mut frontier = [VecDeque::from([w1.clone()]), VecDeque::from([w2.clone()])];
    let mut buf = Vec::new();
    loop {
        let side = match (frontier[0].is_empty(), frontier[1].is_empty()) {
            (true, true) => return Some(false),
            (false, true) => 0,
            (true, false) => 1,
            (false, false) => usize::from(frontier[1].len() < frontier[0].len()),
        };
        // expand one whole layer of the smaller side
        let layer: Vec<Word> = frontier[side].drain(..).collect();
        for w in layer {
            buf.clear();
            neighbours(g, p.computad.groupoidal, &rules, &w, bound, &mut buf);
            for n in buf.drain(..) {
                if seen[1 - side].contains(&n) {
                    return Some(true);
                }
                if seen[side].insert(n.clone()) {
                    if seen[side].len() > STATE_CAP {
                        return None;
                    }
                    frontier[side].push_back(n);
                }
            }
        }
    }
}

/// `true` when the abelianized images of `w1` and `w2` differ modulo the
/// lattice spanned by the relations.
fn abelian_separates(p: &Presentation, w1: &Word, w2: &Word) -> Result<bool> {
    let e = p.graph().edges().len();
    let rel: Vec<Vec<i64>> = p
        .computad
        .relations
        .iter()
        .map(|r| {
            let (a, b) = (r.lhs.abelian_image(e), r.rhs.abelian_image(e));
            a.iter().zip(&b).map(|(x, y)| x - y).collect()
        })
        .collect();
    let mut m = IntMatrix::zeros(e, rel.len());
    for (c, v) in rel.iter().enumerate() {
        for (r, &x) in v.iter().enumerate() {
            m.set(r, c, x);
        }
    }
    let (a, b) = (w1.abelian_image(e), w2.abelian_image(e));
    let diff: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
    Ok(solve_integer(&m, &diff)?.is_none())
}

/// Decides `w1 = w2` in the structure presented by `p` as far as it can.
///
/// Identity loops (relations `e = 1`) are eliminated first. Rewriting then
/// explores words up to `max(p.bound, |w1|, |w2|)` letters; if it does not
/// connect the words, the abelianization is tried as a separating invariant.
pub fn word_eq(p: &Presentation, w1: &Word, w2: &Word) -> Result<WordEq> {
    let g = p.graph();
    for w in [w1, w2] {
        if w.start >= g.nodes().len() || w.letters.iter().any(|l| l.edge >= g.edges().len()) || !w.is_composable(g) {
            return Err(Error::MalformedInput("word is not a composable word of the graph".into()));
        }
        if !p.computad.groupoidal && !w.is_positive() {
            return Err(Error::MalformedInput("inverse letter in a category presentation".into()));
        }
    }
    if w1.start != w2.start || w1.end(g) != w2.end(g) {
        return Err(Error::NotParallel(format!(
            "{} and {}",
            w1.display(g),
            w2.display(g)
        )));
    }
    let (q, map) = p.eliminate_identity_edges()?;
    let (mut v1, mut v2) = (p.translate_word(w1, &map), p.translate_word(w2, &map));
    if q.computad.groupoidal {
        v1 = v1.reduce();
        v2 = v2.reduce();
    }
    if v1 == v2 {
        return Ok(WordEq::Equal);
    }
    let bound = q.bound.max(v1.len()).max(v2.len());
    if bidirectional(&q, &v1, &v2, bound) == Some(true) {
        return Ok(WordEq::Equal);
    }
    if abelian_separates(&q, &v1, &v2)? {
        return Ok(WordEq::Distinct);
    }
    Ok(WordEq::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::present::computad::Computad2;

    fn one_node(edges: &[&str], rels: &[(&str, &str, &str)], groupoidal: bool) -> Presentation {
        let e: Vec<(&str, &str, &str)> = edges.iter().map(|&e| (e, "*", "*")).collect();
        let g = FinGraph::from_parts(&["*"], &e).unwrap();
        Presentation::tight(Computad2::from_texts(g, rels, groupoidal).unwrap())
    }

    fn check(p: &Presentation, a: &str, b: &str) -> WordEq {
        let g = p.graph();
        word_eq(p, &Word::parse(g, a, Some("*")).unwrap(), &Word::parse(g, b, Some("*")).unwrap()).unwrap()
    }

    #[test]
    fn commuting_generators() {
        let p = one_node(&["a", "b"], &[("comm", "ab", "ba")], false);
        assert_eq!(check(&p, "abab", "aabb"), WordEq::Equal);
        assert_eq!(check(&p, "abab", "abab"), WordEq::Equal);
        assert_eq!(check(&p, "ab", "aab"), WordEq::Distinct);
        let p = one_node(&["a", "b"], &[("comm", "ab", "ba")], true);
        assert_eq!(check(&p, "abab", "bbaa"), WordEq::Equal);
        assert_eq!(check(&p, "a b a' b'", ""), WordEq::Equal);
    }

    #[test]
    fn free_loop() {
        let p = one_node(&["x"], &[], false);
        assert_eq!(check(&p, "x", "xx"), WordEq::Distinct);
        let p = one_node(&["x"], &[], true);
        assert_eq!(check(&p, "x x'", ""), WordEq::Equal);
        assert_eq!(check(&p, "x", "x'"), WordEq::Distinct);
    }

    #[test]
    fn torsion_relation() {
        let p = one_node(&["a"], &[("cube", "aaa", "")], true);
        assert_eq!(check(&p, "aaaa", "a"), WordEq::Equal);
        assert_eq!(check(&p, "a'", "aa"), WordEq::Equal);
        assert_eq!(check(&p, "a", "aa"), WordEq::Distinct);
    }

    #[test]
    fn identity_loop_eliminated() {
        let p = one_node(&["a", "i"], &[("unit", "i", "")], false);
        assert_eq!(check(&p, "a i a", "aa"), WordEq::Equal);
        assert_eq!(check(&p, "i", ""), WordEq::Equal);
    }

    #[test]
    fn unknown_when_abelianization_is_blind() {
        // the commutator is nontrivial in the free group but abelianizes to 0
        let p = one_node(&["a", "b"], &[], true);
        assert_eq!(check(&p, "a b a' b'", ""), WordEq::Unknown);
    }

    #[test]
    fn parallel_required() {
        let g = FinGraph::from_parts(&["p", "q"], &[("e", "p", "q")]).unwrap();
        let p = Presentation::tight(Computad2::new(g.clone(), vec![], false).unwrap());
        let w = Word::parse(&g, "e", None).unwrap();
        assert!(matches!(word_eq(&p, &w, &Word::empty(0)), Err(Error::NotParallel(_))));
    }
}
