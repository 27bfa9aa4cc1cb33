use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of a finite set. Composites build nested elements: pullbacks
/// pair their factors and matrix products tag each pair with the index it
/// was summed over.
///
/// On the wire an atom is a string, a pair a two-element array and a tagged
/// element an object `{"tag": .., "elem": ..}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Elem {
    Atom(String),
    Pair(Box<Elem>, Box<Elem>),
    Tagged { tag: Box<Elem>, elem: Box<Elem> },
}

impl Elem {
    pub fn atom(s: impl Into<String>) -> Elem {
        Elem::Atom(s.into())
    }

    pub fn pair(a: Elem, b: Elem) -> Elem {
        Elem::Pair(Box::new(a), Box::new(b))
    }

    pub fn tagged(tag: Elem, elem: Elem) -> Elem {
        Elem::Tagged {
            tag: Box::new(tag),
            elem: Box::new(elem),
        }
    }

    pub fn as_pair(&self) -> Option<(&Elem, &Elem)> {
        match self {
            Elem::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_tagged(&self) -> Option<(&Elem, &Elem)> {
        match self {
            Elem::Tagged { tag, elem } => Some((tag, elem)),
            _ => None,
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Atom(s) => write!(f, "{s}"),
            Elem::Pair(a, b) => write!(f, "({a},{b})"),
            Elem::Tagged { tag, elem } => write!(f, "{tag}:{elem}"),
        }
    }
}

/// `n` atoms named by a prefix and an index.
pub fn atoms(prefix: &str, n: usize) -> Vec<Elem> {
    let mut v: Vec<Elem> = (0..n).map(|i| Elem::atom(format!("{prefix}{i}"))).collect();
    v.sort();
    v
}

/// Sorts a set, rejecting repeated elements.
pub(crate) fn into_set(mut v: Vec<Elem>, what: &str) -> Result<Vec<Elem>> {
    v.sort();
    if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::MalformedInput(format!("{what} lists `{}` twice", w[0])));
    }
    Ok(v)
}

pub(crate) fn is_set(v: &[Elem]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

pub(crate) fn position(set: &[Elem], e: &Elem) -> Option<usize> {
    set.binary_search(e).ok()
}

pub(crate) fn lookup(set: &[Elem], e: &Elem, what: &str) -> Result<usize> {
    position(set, e).ok_or_else(|| Error::MalformedInput(format!("`{e}` is not an element of {what}")))
}

/// `g∘f` of two maps given as index tables.
pub(crate) fn compose_maps(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&i| g[i]).collect()
}

pub(crate) fn is_bijection(map: &[usize], target: usize) -> bool {
    let mut seen = vec![false; target];
    map.len() == target
        && map.iter().all(|&j| {
            let fresh = !seen[j];
            seen[j] = true;
            fresh
        })
}
