use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use super::args::*;
use super::{resolve, Fail, Rendered};
use crate::bicat::{
    cat_to_mat_monad, cat_to_span_monad, mat_compose, mat_monad_to_cat, span_compose, span_monad_to_cat, FinMatrix,
    FinSpan,
};
use crate::descent::{
    colax_descent_category, descent_category, em_equivalence_check, monad_morphism_category,
    monad_morphism_diagram, DescentCategory, DescentInput, FinMonad,
};
use crate::error::Error;
use crate::fincat::dot::category_to_dot;
use crate::fincat::{
    functor_category_with_budget, iso_search_with_budget, limit, right_kan_extension, verify_ran_universal, Budget,
    CatRef, FinCat, FinCatData, FinGraph, Functor, FunctorData, FunctorFile, NatTransData,
};
use crate::mates::{beck_chevalley, check_adjunction, mate, mate_inverse, random_square, AdjunctionData, MateSquare};
use crate::present::{abelianization, component_euler, deficiency, thinness_obstruction, word_eq, Presentation, Word};
use crate::random::{random_closure, random_poset};
use crate::topo::{
    euler_characteristic, fundamental_groupoid_presentation, homology, homology_by_component, realize2, CWComplex2,
    CWData,
};

type Res = Result<Rendered, Fail>;

struct Ctx<'a> {
    base: &'a Path,
    common: &'a Common,
    budget: Budget,
}

impl Ctx<'_> {
    fn input(&self, i: usize, what: &str) -> Result<PathBuf, Fail> {
        let p = self
            .common
            .inputs
            .get(i)
            .ok_or_else(|| Fail::Usage(format!("missing --in for the {what}")))?;
        Ok(resolve(self.base, p))
    }

    fn expect_inputs(&self, n: usize) -> Result<(), Fail> {
        if self.common.inputs.len() != n {
            return Err(Fail::Usage(format!("expected {n} --in file(s), got {}", self.common.inputs.len())));
        }
        Ok(())
    }

    fn read<T: DeserializeOwned>(&self, i: usize, what: &str) -> Result<T, Fail> {
        let path = self.input(i, what)?;
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Fail::Usage(format!("cannot read {}: {e}", path.display())))?;
        Ok(serde_json::from_str(&text).map_err(Error::from)?)
    }

    fn category(&self, i: usize) -> Result<CatRef, Fail> {
        let data: FinCatData = self.read(i, "category")?;
        let c = FinCat::from_data_with_budget(&data, self.budget)?;
        let r = c.validate();
        if !r.is_empty() {
            return Err(Error::InvalidInput(r).into());
        }
        Ok(Arc::new(c))
    }

    fn functor(&self, i: usize) -> Result<Functor, Fail> {
        let f: FunctorFile = self.read(i, "functor")?;
        Ok(f.to_functor()?)
    }

    fn presentation(&self, i: usize) -> Result<Presentation, Fail> {
        let p = Presentation::from_data(&self.read(i, "presentation")?)?;
        Ok(match self.common.bound {
            Some(b) => Presentation::new(p.computad, b)?,
            None => p,
        })
    }

    fn monad(&self, i: usize) -> Result<FinMonad, Fail> {
        let m = FinMonad::from_wire(&self.read(i, "monad")?)?;
        m.require_valid()?;
        Ok(m)
    }

    /// A CW complex given directly or realized from a computad.
    fn cw(&self, i: usize) -> Result<CWComplex2, Fail> {
        let v: Value = self.read(i, "complex")?;
        if v.get("cells0").is_some() {
            let d: CWData = serde_json::from_value(v).map_err(Error::from)?;
            Ok(CWComplex2::from_data(&d)?)
        } else {
            let p = Presentation::from_data(&serde_json::from_value(v).map_err(Error::from)?)?;
            Ok(realize2(&p.computad))
        }
    }

    fn json_only(&self) -> Result<(), Fail> {
        if self.common.format == Format::Dot {
            return Err(Fail::Usage("DOT output is not available for this verb".into()));
        }
        Ok(())
    }

    fn seed(&self) -> u64 {
        self.common.seed.unwrap_or(0)
    }
}

pub(crate) fn dispatch(base: &Path, cli: &Cli) -> Res {
    if let Command::Corpus { op } = &cli.command {
        return crate::corpus::command(base, op);
    }
    let common = cli.common().expect("non-corpus verb");
    let budget = match &common.budget {
        Some(s) => Budget::parse(s).map_err(|e| Fail::Usage(e.to_string()))?,
        None => Budget::from_env().map_err(|e| Fail::Usage(e.to_string()))?,
    };
    let ctx = Ctx { base, common, budget };
    match &cli.command {
        Command::Fincat { op } => fincat(&ctx, op),
        Command::Present { op } => present(&ctx, op),
        Command::Descent { op } => descent(&ctx, op),
        Command::Mates { op } => mates(&ctx, op),
        Command::Bicat { op } => bicat(&ctx, op),
        Command::Topo { op } => topo(&ctx, op),
        Command::Corpus { .. } => unreachable!(),
    }
}

fn functor_json(f: &Functor) -> Value {
    json!(FunctorData::from_functor(f))
}

fn fincat(ctx: &Ctx, op: &FincatOp) -> Res {
    match op {
        FincatOp::Validate(_) => {
            ctx.json_only()?;
            ctx.expect_inputs(1)?;
            let data: FinCatData = ctx.read(0, "category")?;
            let c = FinCat::from_data_with_budget(&data, ctx.budget)?;
            let r = c.validate();
            Ok(Rendered::check(&json!({ "valid": r.is_empty(), "violations": r.violations }), r.is_empty()))
        }
        FincatOp::Compose { g, f, .. } => {
            ctx.json_only()?;
            ctx.expect_inputs(1)?;
            let c = ctx.category(0)?;
            Ok(Rendered::json(&json!({ "result": c.compose_ids(g, f)? })))
        }
        FincatOp::Paths { from, to, maxlen, .. } => {
            ctx.json_only()?;
            ctx.expect_inputs(1)?;
            let g = FinGraph::new(&ctx.read(0, "graph")?)?;
            let paths: Vec<String> = g.enumerate_paths(from, to, *maxlen)?.iter().map(|p| g.render(p)).collect();
            Ok(Rendered::json(&json!({ "paths": paths })))
        }
        FincatOp::FunctorCat(_) => {
            ctx.expect_inputs(2)?;
            let (a, b) = (ctx.category(0)?, ctx.category(1)?);
            let fc = functor_category_with_budget(&a, &b, ctx.budget)?;
            if ctx.common.format == Format::Dot {
                return Ok(Rendered::ok(category_to_dot(&fc.cat).into_bytes()));
            }
            let functors: BTreeMap<String, Value> = fc
                .cat
                .objects()
                .map(|o| (fc.cat.obj_id(o).to_string(), functor_json(fc.functor(o))))
                .collect();
            let transformations: BTreeMap<String, Value> = fc
                .cat
                .morphisms()
                .map(|m| (fc.cat.mor_id(m).to_string(), json!(NatTransData::from_transformation(fc.transformation(m)))))
                .collect();
            Ok(Rendered::json(&json!({
                "category": fc.cat.to_data(),
                "functors": functors,
                "transformations": transformations,
            })))
        }
        FincatOp::Limit(_) => {
            ctx.json_only()?;
            ctx.expect_inputs(1)?;
            let d = ctx.functor(0)?;
            let out = limit(&d).map(|l| {
                let legs: BTreeMap<&str, &str> =
                    d.dom.objects().map(|j| (d.dom.obj_id(j), d.cod.mor_id(l.legs[j.0]))).collect();
                json!({ "apex": d.cod.obj_id(l.apex), "legs": legs })
            });
            Ok(Rendered::json(&json!({ "limit": out })))
        }
        FincatOp::Ran(_) => {
            ctx.json_only()?;
            ctx.expect_inputs(2)?;
            let (k, f) = (ctx.functor(0)?, ctx.functor(1)?);
            let ext = right_kan_extension(&k, &f)?;
            let out = match &ext {
                None => json!({ "extension": null }),
                Some(e) => json!({
                    "extension": {
                        "functor": functor_json(&e.functor),
                        "counit": NatTransData::from_transformation(&e.counit),
                    },
                    "universal": verify_ran_universal(&k, &f, e)?,
                }),
            };
            Ok(Rendered::json(&out))
        }
        FincatOp::Iso(_) => {
            ctx.json_only()?;
            ctx.expect_inputs(2)?;
            let (a, b) = (ctx.category(0)?, ctx.category(1)?);
            let iso = iso_search_with_budget(&a, &b, ctx.budget)?;
            Ok(Rendered::json(&json!({
                "isomorphic": iso.is_some(),
                "forward": iso.as_ref().map(|i| functor_json(&i.forward)),
            })))
        }
        FincatOp::Dot(_) => {
            ctx.expect_inputs(1)?;
            Ok(Rendered::ok(category_to_dot(&*ctx.category(0)?).into_bytes()))
        }
    }
}

fn present(ctx: &Ctx, op: &PresentOp) -> Res {
    ctx.json_only()?;
    ctx.expect_inputs(1)?;
    let p = ctx.presentation(0)?;
    match op {
        PresentOp::WordEq { lhs, rhs, start, .. } => {
            let g = p.graph();
            let w1 = Word::parse(g, lhs, start.as_deref())?;
            let w2 = Word::parse(g, rhs, start.as_deref())?;
            Ok(Rendered::json(&json!({ "verdict": word_eq(&p, &w1, &w2)? })))
        }
        PresentOp::Deficiency(_) => Ok(Rendered::json(&json!({ "deficiency": deficiency(&p)? }))),
        PresentOp::Abelianize(_) => {
            let comps: Vec<Value> = abelianization(&p)?
                .into_iter()
                .map(|c| json!({ "nodes": c.nodes, "group": c.group.to_string(), "rank": c.group.rank, "torsion": c.group.torsion }))
                .collect();
            Ok(Rendered::json(&json!({ "components": comps })))
        }
        PresentOp::Thin(_) => Ok(Rendered::json(&json!({
            "result": thinness_obstruction(&p)?,
            "component_euler": component_euler(&p),
            "scope": "per_component",
        }))),
    }
}

fn descent_json(d: &DescentCategory, input: &DescentInput) -> Value {
    let objects: Vec<Value> = d
        .pairs
        .iter()
        .map(|p| json!({ "f": input.c1.obj_id(p.f), "xi": input.c2.mor_id(p.xi) }))
        .collect();
    json!({ "objects": objects, "category": d.cat.to_data() })
}

fn random_closure_monad(seed: u64) -> FinMonad {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=8);
    let p = random_poset(&mut rng, n, 0.4);
    let c = random_closure(&mut rng, &p);
    FinMonad::closure(&p, &c)
}

fn descent(ctx: &Ctx, op: &DescentOp) -> Res {
    ctx.json_only()?;
    match op {
        DescentOp::Colax(_) | DescentOp::Strict(_) => {
            ctx.expect_inputs(1)?;
            let d = DescentInput::from_wire(&ctx.read(0, "diagram")?)?;
            let cat = match op {
                DescentOp::Colax(_) => colax_descent_category(&d)?,
                _ => descent_category(&d)?,
            };
            Ok(Rendered::json(&descent_json(&cat, &d)))
        }
        DescentOp::EmCheck(_) => {
            let m = match (ctx.common.inputs.len(), ctx.common.seed) {
                (1, _) => ctx.monad(0)?,
                (0, Some(s)) => random_closure_monad(s),
                _ => return Err(Fail::Usage("give one --in monad or a --seed".into())),
            };
            let iso = em_equivalence_check(&m)?;
            let verified = iso.as_ref().is_some_and(|i| i.verify());
            Ok(Rendered::check(
                &json!({
                    "isomorphic": verified,
                    "base": m.base.to_data(),
                    "witness": iso.as_ref().map(|i| functor_json(&i.forward)),
                }),
                verified,
            ))
        }
        DescentOp::MonadHoms(_) => {
            ctx.expect_inputs(2)?;
            let (y, z) = (ctx.monad(0)?, ctx.monad(1)?);
            let mm = monad_morphism_category(&y, &z)?;
            let (d, _) = monad_morphism_diagram(&y, &z)?;
            let colax = colax_descent_category(&d)?;
            let same = colax.cat.to_data() == mm.cat.to_data();
            let objects: Vec<Value> = mm
                .objects
                .iter()
                .map(|o| json!({ "functor": functor_json(&o.f), "phi": NatTransData::from_transformation(&o.phi) }))
                .collect();
            Ok(Rendered::check(
                &json!({ "category": mm.cat.to_data(), "objects": objects, "matches_descent": same }),
                same,
            ))
        }
    }
}

fn mates(ctx: &Ctx, op: &MatesOp) -> Res {
    ctx.json_only()?;
    let square = |ctx: &Ctx| -> Result<MateSquare, Fail> {
        ctx.expect_inputs(1)?;
        Ok(MateSquare::from_wire(&ctx.read(0, "square")?)?)
    };
    match op {
        MatesOp::Check(_) => {
            ctx.expect_inputs(1)?;
            let a = AdjunctionData::from_wire(&ctx.read(0, "adjunction")?)?;
            let r = check_adjunction(&a);
            Ok(Rendered::check(&json!({ "valid": r.is_empty(), "violations": r.violations }), r.is_empty()))
        }
        MatesOp::Mate(_) => {
            let sq = square(ctx)?;
            let t = mate(&sq)?;
            let back = mate_inverse(&sq, &t)? == sq.alpha;
            Ok(Rendered::check(
                &json!({ "mate": NatTransData::from_transformation(&t), "round_trip": back }),
                back,
            ))
        }
        MatesOp::Bc(_) => Ok(Rendered::json(&beck_chevalley(&square(ctx)?)?)),
        MatesOp::Random { count, .. } => {
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed());
            let (mut round_trips, mut violated) = (0, 0);
            for _ in 0..*count {
                let sq = random_square(&mut rng, 5);
                let t = mate(&sq)?;
                if mate_inverse(&sq, &t)? == sq.alpha {
                    round_trips += 1;
                }
                if !t.is_invertible() {
                    violated += 1;
                }
            }
            Ok(Rendered::check(
                &json!({
                    "seed": ctx.seed(),
                    "squares": count,
                    "round_trips": round_trips,
                    "beck_chevalley_violations": violated,
                }),
                round_trips == *count,
            ))
        }
    }
}

fn bicat(ctx: &Ctx, op: &BicatOp) -> Res {
    ctx.json_only()?;
    match op {
        BicatOp::SpanCompose(_) => {
            ctx.expect_inputs(2)?;
            let m = FinSpan::from_data(&ctx.read(0, "first span")?)?;
            let n = FinSpan::from_data(&ctx.read(1, "second span")?)?;
            Ok(Rendered::json(&span_compose(&n, &m)?.to_data()))
        }
        BicatOp::MatCompose(_) => {
            ctx.expect_inputs(2)?;
            let m = FinMatrix::from_data(&ctx.read(0, "first matrix")?)?;
            let n = FinMatrix::from_data(&ctx.read(1, "second matrix")?)?;
            Ok(Rendered::json(&mat_compose(&n, &m)?.to_data()))
        }
        BicatOp::Roundtrip(_) => {
            ctx.expect_inputs(1)?;
            let c = ctx.category(0)?;
            let s = cat_to_span_monad(&c);
            let m = cat_to_mat_monad(&c);
            let from_span = span_monad_to_cat(&s)?;
            let from_mat = mat_monad_to_cat(&m)?;
            let (span_ok, mat_ok) = (from_span == *c, from_mat == *c);
            Ok(Rendered::check(
                &json!({
                    "span": {
                        "objects": s.objects.len(),
                        "arrows": s.arrows.len(),
                        "pullback": s.pullback_size(),
                        "round_trip": span_ok,
                    },
                    "matrix": {
                        "sizes": m.hom.sizes(),
                        "round_trip": mat_ok,
                    },
                }),
                span_ok && mat_ok,
            ))
        }
    }
}

fn topo(ctx: &Ctx, op: &TopoOp) -> Res {
    ctx.expect_inputs(1)?;
    let x = ctx.cw(0)?;
    if ctx.common.format == Format::Dot {
        return match op {
            TopoOp::Realize(_) => Ok(Rendered::ok(x.to_dot().into_bytes())),
            _ => Err(Fail::Usage("DOT output is only available for `topo realize`".into())),
        };
    }
    match op {
        TopoOp::Realize(_) => Ok(Rendered::json(&x.to_data())),
        TopoOp::Chi(_) => Ok(Rendered::json(&euler_characteristic(&x))),
        TopoOp::Homology(_) => {
            let h = homology(&x)?;
            let comps: Vec<String> = homology_by_component(&x)?.iter().map(|g| g.to_string()).collect();
            Ok(Rendered::json(&json!({
                "h0_rank": h.h0_rank,
                "h1": h.h1.to_string(),
                "h1_rank": h.h1.rank,
                "h1_torsion": h.h1.torsion,
                "h1_by_component": comps,
            })))
        }
        TopoOp::Pi1(_) => Ok(Rendered::json(&fundamental_groupoid_presentation(&x)?.to_data())),
    }
}
