use std::collections::HashMap;

use super::category::{Budget, CatRef, Mor, Obj};
use super::functor::Functor;
use super::search::backtrack;
use crate::error::Result;

/// A pair of mutually inverse functors.
#[derive(Debug, Clone)]
pub struct Isomorphism {
    pub forward: Functor,
    pub backward: Functor,
}

impl Isomorphism {
    /// Both composites are identities and both sides are functors.
    pub fn verify(&self) -> bool {
        let ok = |f: &Functor| f.validate().is_empty();
        if !ok(&self.forward) || !ok(&self.backward) {
            return false;
        }
        let (Ok(there), Ok(back)) = (self.backward.after(&self.forward), self.forward.after(&self.backward)) else {
            return false;
        };
        there == Functor::identity(&self.forward.dom) && back == Functor::identity(&self.forward.cod)
    }
}

/// Per-object invariant used to prune the object bijection search.
fn signature(c: &CatRef, o: Obj) -> (usize, Vec<usize>, Vec<usize>) {
    let mut outs: Vec<usize> = c.objects().map(|x| c.hom(o, x).len()).collect();
    let mut ins: Vec<usize> = c.objects().map(|x| c.hom(x, o).len()).collect();
    outs.sort_unstable();
    ins.sort_unstable();
    (c.hom(o, o).len(), outs, ins)
}

/// Searches for an isomorphism `a ≅ b` by backtracking over object bijections
/// that respect hom-set cardinalities, then over hom-set bijections that
/// respect composition. `Ok(None)` means no isomorphism exists.
pub fn iso_search(a: &CatRef, b: &CatRef) -> Result<Option<Isomorphism>> {
    iso_search_with_budget(a, b, Budget::default())
}

pub fn iso_search_with_budget(a: &CatRef, b: &CatRef, budget: Budget) -> Result<Option<Isomorphism>> {
    budget.check(a.num_objects(), a.num_morphisms())?;
    budget.check(b.num_objects(), b.num_morphisms())?;
    if a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms() {
        return Ok(None);
    }
    let sig_b: Vec<_> = b.objects().map(|o| signature(b, o)).collect();
    let obj_cands: Vec<Vec<usize>> = a
        .objects()
        .map(|o| {
            let s = signature(a, o);
            b.objects().filter(|x| sig_b[x.0] == s).map(|x| x.0).collect()
        })
        .collect();

    let non_id: Vec<Mor> = a.morphisms().filter(|&m| !a.is_identity(m)).collect();
    let position: HashMap<Mor, usize> = non_id.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut checks: Vec<Vec<(Mor, Mor, Mor)>> = vec![Vec::new(); non_id.len()];
    for f in a.morphisms() {
        for &g in a.out_of(a.tgt(f)) {
            let h = a.compose(g, f);
            if let Some(k) = [f, g, h].iter().filter_map(|m| position.get(m)).max().copied() {
                checks[k].push((g, f, h));
            }
        }
    }

    let mut found = None;
    backtrack(
        &obj_cands,
        |om| {
            let k = om.len() - 1;
            if om[..k].contains(&om[k]) {
                return false;
            }
            (0..=k).all(|i| {
                a.hom(Obj(i), Obj(k)).len() == b.hom(Obj(om[i]), Obj(om[k])).len()
                    && a.hom(Obj(k), Obj(i)).len() == b.hom(Obj(om[k]), Obj(om[i])).len()
            })
        },
        |om| {
            let omap: Vec<Obj> = om.iter().map(|&i| Obj(i)).collect();
            let cands: Vec<Vec<usize>> = non_id
                .iter()
                .map(|&m| {
                    b.hom(omap[a.src(m).0], omap[a.tgt(m).0])
                        .iter()
                        .filter(|&&x| !b.is_identity(x))
                        .map(|x| x.0)
                        .collect()
                })
                .collect();
            let image = |mm: &[usize], m: Mor| {
                if a.is_identity(m) {
                    b.id(omap[a.src(m).0])
                } else {
                    Mor(mm[position[&m]])
                }
            };
            let completed = backtrack(
                &cands,
                |mm| {
                    let k = mm.len() - 1;
                    !mm[..k].contains(&mm[k])
                        && checks[k]
                            .iter()
                            .all(|&(g, f, h)| b.try_compose(image(mm, g), image(mm, f)) == Some(image(mm, h)))
                },
                |mm| {
                    let mmap: Vec<Mor> = a.morphisms().map(|m| image(mm, m)).collect();
                    let mut inv_o = vec![Obj(0); b.num_objects()];
                    for (i, o) in omap.iter().enumerate() {
                        inv_o[o.0] = Obj(i);
                    }
                    let mut inv_m = vec![Mor(0); b.num_morphisms()];
                    for (i, m) in mmap.iter().enumerate() {
                        inv_m[m.0] = Mor(i);
                    }
                    found = Some(Isomorphism {
                        forward: Functor::new(a.clone(), b.clone(), omap.clone(), mmap),
                        backward: Functor::new(b.clone(), a.clone(), inv_o, inv_m),
                    });
                    false
                },
            );
            completed
        },
    );
    Ok(found)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::builder::{chain, cyclic_group, discrete, parallel_pair, product, walking_idempotent};
    use crate::fincat::functor::functor_category;

    fn arc<T>(c: T) -> Arc<T> {
        Arc::new(c)
    }

    #[test]
    fn self_isomorphism() {
        for c in [chain(3), cyclic_group(3), parallel_pair(), walking_idempotent()] {
            let c = arc(c);
            let iso = iso_search(&c, &c).unwrap().unwrap();
            assert!(iso.verify());
        }
    }

    #[test]
    fn chain_matches_functor_category() {
        let two = arc(chain(2));
        let fc = functor_category(&two, &two).unwrap();
        let iso = iso_search(&arc(chain(3)), &fc.cat).unwrap().unwrap();
        assert!(iso.verify());
    }

    #[test]
    fn discrete_functors_into_two_form_a_square() {
        let fc = functor_category(&arc(discrete(2)), &arc(chain(2))).unwrap();
        let square = arc(product(&chain(2), &chain(2)));
        assert!(iso_search(&fc.cat, &square).unwrap().unwrap().verify());
    }

    #[test]
    fn non_isomorphic() {
        assert!(iso_search(&arc(discrete(2)), &arc(chain(2))).unwrap().is_none());
        assert!(iso_search(&arc(cyclic_group(2)), &arc(walking_idempotent())).unwrap().is_none());
    }

    #[test]
    fn budget_enforced() {
        let c = arc(chain(4));
        let small = Budget {
            max_objects: 3,
            max_morphisms: 100,
        };
        assert!(iso_search_with_budget(&c, &c, small).is_err());
    }
}
