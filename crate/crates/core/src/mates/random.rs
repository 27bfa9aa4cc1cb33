use rand::Rng;

use super::adjunction::AdjunctionData;
use super::square::MateSquare;
use crate::fincat::{Functor, NatTrans};
use crate::random::{poset_from_matrix, random_closure, random_monotone, random_poset, RandomPoset};

/// A closure operator on `big` seen as the reflection `l ⊣ u` onto its fixed
/// points `small`; `incl[k]` is the element of `big` underlying `k`.
#[derive(Debug, Clone)]
pub struct Reflection {
    pub big: RandomPoset,
    pub small: RandomPoset,
    pub incl: Vec<usize>,
    pub adj: AdjunctionData,
}

/// The unique morphism `a → b` of a poset category.
fn arrow(p: &RandomPoset, a: usize, b: usize) -> crate::fincat::Mor {
    p.cat.hom(p.obj(a), p.obj(b))[0]
}

/// Builds the reflection of `big` onto the image of the closure `c`.
pub fn reflection(big: RandomPoset, c: &[usize]) -> Reflection {
    let incl: Vec<usize> = (0..big.len()).filter(|&x| c[x] == x).collect();
    let leq = incl.iter().map(|&a| incl.iter().map(|&b| big.leq[a][b]).collect()).collect();
    let small = poset_from_matrix(leq);
    let pos = |x: usize| incl.iter().position(|&k| k == x).expect("fixed point");
    let lmap: Vec<usize> = (0..big.len()).map(|x| pos(c[x])).collect();
    let l = big.functor_to(&small, &lmap);
    let u = small.functor_to(&big, &incl);
    let lu = l.after(&u).expect("composable");
    let ul = u.after(&l).expect("composable");
    let counit = NatTrans::new(
        lu,
        Functor::identity(&small.cat),
        small.cat.objects().map(|o| small.cat.id(o)).collect(),
    );
    let unit = NatTrans::new(
        Functor::identity(&big.cat),
        ul,
        big.cat.objects().map(|o| arrow(&big, big.index(o), c[big.index(o)])).collect(),
    );
    Reflection {
        adj: AdjunctionData::new(l, u, counit, unit),
        big,
        small,
        incl,
    }
}

/// A reflection of a random poset with `1..=max` elements.
pub fn random_reflection(rng: &mut impl Rng, max: usize) -> Reflection {
    let n = rng.gen_range(1..=max);
    let p = random_poset(rng, n, 0.4);
    let c = random_closure(rng, &p);
    reflection(p, &c)
}

/// A square with `l ⊣ u` from `lu` and `f ⊣ g` from `fg`, random monotone
/// `m` and `n`, and `α` the unique 2-cell `n∘u ⇒ g∘m`. When a random `n` does
/// not lie below `g∘m`, `n` is replaced by the constant map at the least
/// element.
pub fn square_between(rng: &mut impl Rng, lu: &Reflection, fg: &Reflection) -> MateSquare {
    let mmap = random_monotone(rng, &lu.small, &fg.small);
    let mut nmap = random_monotone(rng, &lu.big, &fg.big);
    let below = |nmap: &[usize]| (0..lu.small.len()).all(|k| fg.big.leq[nmap[lu.incl[k]]][fg.incl[mmap[k]]]);
    if !below(&nmap) {
        nmap = vec![0; lu.big.len()];
    }
    let m = lu.small.functor_to(&fg.small, &mmap);
    let n = lu.big.functor_to(&fg.big, &nmap);
    let nu = n.after(&lu.adj.g).expect("composable");
    let gm = fg.adj.g.after(&m).expect("composable");
    let comps = lu
        .small
        .cat
        .objects()
        .map(|o| {
            let k = lu.small.index(o);
            arrow(&fg.big, nmap[lu.incl[k]], fg.incl[mmap[k]])
        })
        .collect();
    MateSquare {
        adj_lu: lu.adj.clone(),
        adj_fg: fg.adj.clone(),
        m,
        n,
        alpha: NatTrans::new(nu, gm, comps),
    }
}

/// A random square of poset reflections on at most `max` elements each.
pub fn random_square(rng: &mut impl Rng, max: usize) -> MateSquare {
    let lu = random_reflection(rng, max);
    let fg = random_reflection(rng, max);
    square_between(rng, &lu, &fg)
}
