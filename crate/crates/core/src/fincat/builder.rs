use std::collections::BTreeMap;

use super::category::{CompositeSpec, FinCat, FinCatData, MorphismSpec};
use crate::error::Result;

/// Incremental construction of a [`FinCat`].
///
/// Every object gets an identity named `id_<object>`; unit-law entries of the
/// composition table are filled in automatically, so callers only list
/// composites of non-identity morphisms.
#[derive(Debug, Clone, Default)]
pub struct CatBuilder {
    objects: Vec<String>,
    morphisms: Vec<MorphismSpec>,
    identities: BTreeMap<String, String>,
    composites: Vec<CompositeSpec>,
}

impl CatBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(mut self, name: impl Into<String>) -> Self {
        let name = name.into();
        let id = format!("id_{name}");
        self.morphisms.push(MorphismSpec {
            id: id.clone(),
            src: name.clone(),
            tgt: name.clone(),
        });
        self.identities.insert(name.clone(), id);
        self.objects.push(name);
        self
    }

    /// Adds an object whose identity morphism has the given id.
    pub fn object_with_identity(mut self, name: impl Into<String>, identity: impl Into<String>) -> Self {
        let name = name.into();
        let identity = identity.into();
        self.morphisms.push(MorphismSpec {
            id: identity.clone(),
            src: name.clone(),
            tgt: name.clone(),
        });
        self.identities.insert(name.clone(), identity);
        self.objects.push(name);
        self
    }

    pub fn morphism(mut self, id: impl Into<String>, src: impl Into<String>, tgt: impl Into<String>) -> Self {
        self.morphisms.push(MorphismSpec {
            id: id.into(),
            src: src.into(),
            tgt: tgt.into(),
        });
        self
    }

    /// Records `g ∘ f = result`.
    pub fn composite(mut self, g: impl Into<String>, f: impl Into<String>, result: impl Into<String>) -> Self {
        self.composites.push(CompositeSpec {
            g: g.into(),
            f: f.into(),
            result: result.into(),
        });
        self
    }

    pub fn into_data(self) -> FinCatData {
        let mut compose = self.composites;
        for m in &self.morphisms {
            let (Some(is), Some(it)) = (self.identities.get(&m.src), self.identities.get(&m.tgt)) else {
                continue;
            };
            let left = CompositeSpec {
                g: it.clone(),
                f: m.id.clone(),
                result: m.id.clone(),
            };
            let right = CompositeSpec {
                g: m.id.clone(),
                f: is.clone(),
                result: m.id.clone(),
            };
            for c in [left, right] {
                if !compose.iter().any(|x| x.g == c.g && x.f == c.f) {
                    compose.push(c);
                }
            }
        }
        FinCatData {
            schema: Some("fincat/v1".into()),
            objects: self.objects,
            morphisms: self.morphisms,
            identities: self.identities,
            compose,
        }
    }

    /// Structural build; the result may still violate associativity.
    pub fn build(self) -> Result<FinCat> {
        FinCat::from_data(&self.into_data())
    }

    pub fn build_valid(self) -> Result<FinCat> {
        FinCat::new_valid(&self.into_data())
    }
}

/// The poset on `elements` ordered by `leq` (must be reflexive, transitive and
/// antisymmetric). The morphism `a ≤ b` is named `a->b`.
pub fn poset<S: AsRef<str>>(elements: &[S], leq: impl Fn(usize, usize) -> bool) -> FinCat {
    let name = |i: usize| elements[i].as_ref().to_string();
    let arrow = |i: usize, j: usize| {
        if i == j {
            format!("id_{}", name(i))
        } else {
            format!("{}->{}", name(i), name(j))
        }
    };
    let n = elements.len();
    let mut b = CatBuilder::new();
    for i in 0..n {
        b = b.object(name(i));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && leq(i, j) {
                b = b.morphism(arrow(i, j), name(i), name(j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i != j && j != k && leq(i, j) && leq(j, k) {
                    b = b.composite(arrow(j, k), arrow(i, j), arrow(i, k));
                }
            }
        }
    }
    b.build().expect("poset construction is well formed")
}

/// The chain `0 → 1 → … → n-1`.
pub fn chain(n: usize) -> FinCat {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    poset(&names, |i, j| i <= j)
}

/// The terminal category 𝟙 with object `*`.
pub fn terminal() -> FinCat {
    poset(&["*"], |_, _| true)
}

/// The discrete category on objects `0..n`.
pub fn discrete(n: usize) -> FinCat {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    poset(&names, |i, j| i == j)
}

/// Divisors ordered by divisibility: `a -> b` iff `a | b`.
pub fn divisibility(values: &[u64]) -> FinCat {
    let names: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    poset(&names, |i, j| values[j] % values[i] == 0)
}

/// The cyclic group ℤ/n as a one-object category; `r0` is the identity.
pub fn cyclic_group(n: usize) -> FinCat {
    let mut b = CatBuilder::new().object_with_identity("*", "r0");
    for i in 1..n {
        b = b.morphism(format!("r{i}"), "*", "*");
    }
    for i in 1..n {
        for j in 1..n {
            b = b.composite(format!("r{i}"), format!("r{j}"), format!("r{}", (i + j) % n));
        }
    }
    b.build().expect("cyclic group construction is well formed")
}

/// One object with a non-identity idempotent `e`.
pub fn walking_idempotent() -> FinCat {
    CatBuilder::new()
        .object("x")
        .morphism("e", "x", "x")
        .composite("e", "e", "e")
        .build()
        .expect("well formed")
}

/// Two parallel arrows `u, v: a → b`.
pub fn parallel_pair() -> FinCat {
    CatBuilder::new()
        .object("a")
        .object("b")
        .morphism("u", "a", "b")
        .morphism("v", "a", "b")
        .build()
        .expect("well formed")
}

/// The product category; objects `(x,y)`, morphisms `(f,g)`.
pub fn product(a: &FinCat, b: &FinCat) -> FinCat {
    let pair = |x: &str, y: &str| format!("({x},{y})");
    let mut builder = CatBuilder::new();
    for x in a.objects() {
        for y in b.objects() {
            let o = pair(a.obj_id(x), b.obj_id(y));
            let id = pair(a.mor_id(a.id(x)), b.mor_id(b.id(y)));
            builder = builder.object_with_identity(o, id);
        }
    }
    for f in a.morphisms() {
        for g in b.morphisms() {
            if a.is_identity(f) && b.is_identity(g) {
                continue;
            }
            builder = builder.morphism(
                pair(a.mor_id(f), b.mor_id(g)),
                pair(a.obj_id(a.src(f)), b.obj_id(b.src(g))),
                pair(a.obj_id(a.tgt(f)), b.obj_id(b.tgt(g))),
            );
        }
    }
    for f in a.morphisms() {
        for &f2 in a.out_of(a.tgt(f)) {
            for g in b.morphisms() {
                for &g2 in b.out_of(b.tgt(g)) {
                    builder = builder.composite(
                        pair(a.mor_id(f2), b.mor_id(g2)),
                        pair(a.mor_id(f), b.mor_id(g)),
                        pair(a.mor_id(a.compose(f2, f)), b.mor_id(b.compose(g2, g))),
                    );
                }
            }
        }
    }
    builder.build().expect("product of well-formed categories is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_categories_validate() {
        for c in [
            terminal(),
            chain(3),
            discrete(2),
            divisibility(&[1, 2, 3, 6]),
            cyclic_group(3),
            walking_idempotent(),
            parallel_pair(),
            product(&chain(2), &chain(2)),
        ] {
            assert!(c.validate().is_empty(), "{c:?}: {}", c.validate());
        }
    }

    #[test]
    fn chain_counts() {
        let c = chain(3);
        assert_eq!(c.num_objects(), 3);
        assert_eq!(c.num_morphisms(), 6);
    }
}
