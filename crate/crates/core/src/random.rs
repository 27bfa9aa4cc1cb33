//! Seeded generators for random finite posets, monotone maps and closure
//! operators, used by the property harnesses.

use std::sync::Arc;

use rand::Rng;

use crate::fincat::builder::poset;
use crate::fincat::{CatRef, Functor, Obj};

/// A finite poset with a least and a greatest element. Element `i` is named
/// `p<i>` (zero padded) and `leq[i][j]` implies `i ≤ j` as integers.
#[derive(Debug, Clone)]
pub struct RandomPoset {
    pub leq: Vec<Vec<bool>>,
    pub cat: CatRef,
    objs: Vec<Obj>,
}

impl RandomPoset {
    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn obj(&self, i: usize) -> Obj {
        self.objs[i]
    }

    /// Element index of an object of `cat`.
    pub fn index(&self, o: Obj) -> usize {
        self.objs.iter().position(|&x| x == o).expect("object of this poset")
    }

    /// The functor `P → Q` of a monotone map given by element indices.
    pub fn functor_to(&self, q: &RandomPoset, map: &[usize]) -> Functor {
        let (a, b) = (&self.cat, &q.cat);
        let omap: Vec<Obj> = a.objects().map(|o| q.obj(map[self.index(o)])).collect();
        let mmap = a
            .morphisms()
            .map(|m| b.hom(omap[a.src(m).0], omap[a.tgt(m).0])[0])
            .collect();
        Functor::new(a.clone(), b.clone(), omap, mmap)
    }
}

/// Random poset on `n ≥ 1` elements: each pair `i < j` is related with
/// probability `density`, then the transitive closure is taken and element 0
/// (resp. `n-1`) made least (resp. greatest).
pub fn random_poset(rng: &mut impl Rng, n: usize, density: f64) -> RandomPoset {
    assert!(n >= 1);
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
        for (j, cell) in row.iter_mut().enumerate().skip(i + 1) {
            *cell = i == 0 || j == n - 1 || rng.gen_bool(density);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    poset_from_matrix(leq)
}

/// Wraps an order matrix (reflexive, transitive, antisymmetric).
pub fn poset_from_matrix(leq: Vec<Vec<bool>>) -> RandomPoset {
    let n = leq.len();
    let width = n.saturating_sub(1).to_string().len();
    let names: Vec<String> = (0..n).map(|i| format!("p{i:0width$}")).collect();
    let cat = Arc::new(poset(&names, |i, j| leq[i][j]));
    let objs = names.iter().map(|s| cat.obj(s).expect("named element")).collect();
    RandomPoset { leq, cat, objs }
}

/// A random monotone map `p → q` (element indices), built in index order,
/// which is a linear extension of `p`.
pub fn random_monotone(rng: &mut impl Rng, p: &RandomPoset, q: &RandomPoset) -> Vec<usize> {
    let mut map: Vec<usize> = Vec::with_capacity(p.len());
    for x in 0..p.len() {
        let lower: Vec<usize> = (0..x).filter(|&w| p.leq[w][x]).map(|w| map[w]).collect();
        let options: Vec<usize> = (0..q.len()).filter(|&y| lower.iter().all(|&l| q.leq[l][y])).collect();
        map.push(options[rng.gen_range(0..options.len())]);
    }
    map
}

/// A random closure operator (monotone, extensive, idempotent) on `p`, as
/// the map to least elements above in a random meet-closed subset.
pub fn random_closure(rng: &mut impl Rng, p: &RandomPoset) -> Vec<usize> {
    let n = p.len();
    let mut fixed: Vec<bool> = (0..n).map(|i| i == n - 1 || rng.gen_bool(0.4)).collect();
    let least_above = |fixed: &[bool], x: usize| -> Option<usize> {
        let up: Vec<usize> = (0..n).filter(|&y| fixed[y] && p.leq[x][y]).collect();
        up.iter().copied().find(|&m| up.iter().all(|&y| p.leq[m][y]))
    };
    loop {
        let bad = (0..n).find(|&x| least_above(&fixed, x).is_none());
        match bad {
            Some(x) => fixed[x] = true,
            None => break,
        }
    }
    (0..n).map(|x| least_above(&fixed, x).expect("closure system")).collect()
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn generated_structures_are_lawful() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..=6);
            let p = random_poset(&mut rng, n, 0.4);
            assert!(p.cat.validate().is_empty());
            let c = random_closure(&mut rng, &p);
            for x in 0..n {
                assert!(p.leq[x][c[x]]);
                assert_eq!(c[c[x]], c[x]);
                for y in 0..n {
                    if p.leq[x][y] {
                        assert!(p.leq[c[x]][c[y]]);
                    }
                }
            }
            let q = random_poset(&mut rng, 3, 0.5);
            let f = random_monotone(&mut rng, &p, &q);
            assert!(p.functor_to(&q, &f).validate().is_empty());
        }
    }
}
