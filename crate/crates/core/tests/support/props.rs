//! Property suites over the a4 category, shared by the test harness and the
//! acceptance runner. Every suite runs 256 cases from a fixed seed.

use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestRunner};

use exangulate::exactalg::Field;
use exangulate::exangulated::{
    homotopy_equivalent, is_chain_map, is_complex, lift_space, mapping_cone, realize, resolve_generators, ClusterTilting, GeneratorSpec, ModuleCategory, Mor, Obj,
    Realizer,
};
use exangulate::localization::{check_mr, k_subfunctor, Fractions, FbarMode, IdealQuotient, MorphismClass, QuotientRealizer, Roof, UniverseBounds};
use exangulate::quiverrep::{Algebra, Quiver, Relation, DEFAULT_SEED};

const SEED: u64 = 0x00c0_ffee;

fn config() -> Config {
    Config { cases: 256, rng_seed: RngSeed::Fixed(SEED), failure_persistence: None, ..Config::default() }
}

struct Localized {
    q: IdealQuotient,
    f: MorphismClass,
}

struct Ctx {
    ct: ClusterTilting,
    locs: Vec<Localized>,
}

fn a4(p: u32) -> ClusterTilting {
    let f = Field::new(p).unwrap();
    let q = Quiver::new(4, &[("a", 1, 2), ("b", 2, 3), ("c", 3, 4)]).unwrap();
    let r = Relation::parse(&q, f, "abc").unwrap();
    let alg = Algebra::new(f, q, vec![r], 16).unwrap();
    let gens = resolve_generators(&alg, &[GeneratorSpec::ProjInj], DEFAULT_SEED).unwrap();
    ClusterTilting::new(ModuleCategory::new(alg, 2, gens).unwrap(), 2)
}

fn localized(ct: &ClusterTilting, nf: &[usize]) -> Localized {
    let q0 = IdealQuotient::new(ct.pres(), nf).unwrap();
    let f = MorphismClass::new(&q0, FbarMode::Iso, &[], UniverseBounds::default()).unwrap();
    let k = k_subfunctor(&q0, &f).unwrap();
    Localized { q: q0.with_extensions(&k.basis).unwrap(), f }
}

/// a4 over F_3, localized at isomorphisms modulo N = 0, add(2/3/4) and
/// add(2/3/4 ⊕ 1/2/3).
fn ctx() -> &'static Ctx {
    static CTX: OnceLock<Ctx> = OnceLock::new();
    CTX.get_or_init(|| {
        let ct = a4(3);
        let locs = [vec![], vec![2], vec![2, 3]].iter().map(|nf| localized(&ct, nf)).collect();
        Ctx { ct, locs }
    })
}

fn pick<T: Clone>(xs: &[T], i: usize) -> T {
    xs[i % xs.len()].clone()
}

fn vector(fl: Field, d: usize, seed: &[u32]) -> Vec<u32> {
    (0..d).map(|i| seed[i % seed.len()] % fl.p()).collect()
}

/// A roof `C ⇐ C ⇢ A ⇐ A` with automorphisms as denominators.
fn roof(l: &Localized, c: &Obj, a: &Obj, seed: &[u32], ti: usize, si: usize) -> Roof {
    let cat = l.q.category();
    let delta = vector(cat.field(), cat.ext_dim(c, a), seed);
    Roof { t: pick(l.f.members(c, c), ti), delta, s: pick(l.f.members(a, a), si) }
}

/// `(t∘v \ v^* u_* δ / u∘s)` for automorphisms `u` of `X` and `v` of `Z`.
fn rewrite(l: &Localized, r: &Roof, ui: usize, vi: usize) -> Roof {
    let cat = l.q.category();
    let u = pick(l.f.members(r.x(), r.x()), ui);
    let v = pick(l.f.members(r.z(), r.z()), vi);
    let delta = cat.pull_ext(&v, r.x(), &cat.push_ext(&u, r.z(), &r.delta));
    Roof { t: cat.compose(&v, &r.t), delta, s: cat.compose(&r.s, &u) }
}

/// Universe objects of `l` with a nonzero extension between them, so the
/// roofs are not all trivial.
fn ends(l: &Localized, i: usize, j: usize) -> (Obj, Obj) {
    let cat = l.q.category();
    let u = l.f.universe();
    let pairs: Vec<(Obj, Obj)> = u.iter().flat_map(|c| u.iter().map(move |a| (c.clone(), a.clone()))).filter(|(c, a)| cat.ext_dim(c, a) > 0).collect();
    if pairs.is_empty() {
        (pick(u, i), pick(u, j))
    } else {
        pick(&pairs, i.wrapping_mul(31).wrapping_add(j))
    }
}

type Indices = (usize, usize, usize, Vec<u32>, [usize; 4]);

fn indices() -> impl Strategy<Value = Indices> {
    (0usize..3, 0usize..1000, 0usize..1000, proptest::collection::vec(0u32..3, 1..5), proptest::array::uniform4(0usize..100))
}

fn morphism(ct: &ClusterTilting, x: &Obj, y: &Obj, seed: &[u32]) -> Mor {
    let p = ct.pres();
    p.from_flat(x, y, &vector(p.field(), p.hom_dim(x, y), seed))
}

pub fn rewriting_a_roof_preserves_its_class() -> Result<(), String> {
    TestRunner::new(config())
        .run(&indices(), |(k, i, j, seed, ix)| {
            let l = &ctx().locs[k];
            let fr = Fractions::new(&l.q, &l.f);
            let (c, a) = ends(l, i, j);
            let r = roof(l, &c, &a, &seed, ix[0], ix[1]);
            let r2 = rewrite(l, &r, ix[2], ix[3]);
            prop_assert!(fr.roof_equal(&r, &r).unwrap());
            prop_assert!(fr.roof_equal(&r, &r2).unwrap());
            prop_assert!(fr.roof_equal(&r2, &r).unwrap());
            let r3 = rewrite(l, &r2, ix[1], ix[0]);
            prop_assert!(fr.roof_equal(&r, &r3).unwrap());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn mu_bar_separates_distinct_classes() -> Result<(), String> {
    TestRunner::new(config())
        .run(&indices(), |(k, i, j, seed, ix)| {
            let l = &ctx().locs[k];
            let fr = Fractions::new(&l.q, &l.f);
            let (c, a) = ends(l, i, j);
            let cat = l.q.category();
            let d = cat.ext_dim(&c, &a);
            let d1 = vector(cat.field(), d, &seed);
            let d2 = vector(cat.field(), d, &[ix[0] as u32, ix[1] as u32, ix[2] as u32]);
            let same = fr.roof_equal(&fr.mu_bar(&c, &a, &d1), &fr.mu_bar(&c, &a, &d2)).unwrap();
            prop_assert_eq!(same, d1 == d2);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn addition_is_independent_of_the_common_denominator() -> Result<(), String> {
    TestRunner::new(config())
        .run(&indices(), |(k, i, j, seed, ix)| {
            let l = &ctx().locs[k];
            let fr = Fractions::new(&l.q, &l.f);
            let (c, a) = ends(l, i, j);
            let r1 = roof(l, &c, &a, &seed, ix[0], ix[1]);
            let r2 = roof(l, &c, &a, &[ix[2] as u32, 1, ix[3] as u32], ix[3], ix[2]);
            let r3 = rewrite(l, &r2, ix[0], ix[3]);
            let s0 = fr.roof_add_with(&r1, &r2, 0).unwrap();
            let s1 = fr.roof_add_with(&rewrite(l, &r1, ix[2], ix[1]), &r3, 1).unwrap();
            prop_assert!(fr.roof_equal(&s0, &s1).unwrap());
            let zero = fr.zero(&c, &a);
            prop_assert!(fr.roof_equal(&fr.roof_add(&r1, &zero).unwrap(), &r1).unwrap());
            prop_assert!(fr.roof_equal(&fr.roof_add(&r1, &fr.neg(&r1)).unwrap(), &zero).unwrap());
            let left = fr.roof_add(&fr.roof_add(&r1, &r2).unwrap(), &r3).unwrap();
            let right = fr.roof_add(&r1, &fr.roof_add(&r2, &r3).unwrap()).unwrap();
            prop_assert!(fr.roof_equal(&left, &right).unwrap());
            prop_assert!(fr.roof_equal(&fr.roof_add(&r1, &r2).unwrap(), &fr.roof_add(&r2, &r1).unwrap()).unwrap());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn realization_respects_roof_equality() -> Result<(), String> {
    TestRunner::new(config())
        .run(&indices(), |(k, i, j, seed, ix)| {
            let cx = ctx();
            let l = &cx.locs[k];
            let fr = Fractions::new(&l.q, &l.f);
            let qr = QuotientRealizer::new(&l.q, &cx.ct).unwrap();
            let (c, a) = ends(l, i, j);
            let r = roof(l, &c, &a, &seed, ix[0], ix[1]);
            let r2 = rewrite(l, &r, ix[2], ix[3]);
            let x = fr.s_tilde(&qr, &r).unwrap();
            let y = fr.s_tilde(&qr, &r2).unwrap();
            prop_assert!(homotopy_equivalent(l.q.category(), &x, &y, 256));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn ideal_projection_is_a_functor() -> Result<(), String> {
    TestRunner::new(config())
        .run(&indices(), |(k, i, j, seed, ix)| {
            let cx = ctx();
            let l = &cx.locs[k];
            let u = l.f.universe();
            let base = cx.ct.pres();
            let (x, y, z) = (pick(u, i), pick(u, j), pick(u, ix[0]));
            let f = morphism(&cx.ct, &x, &y, &seed);
            let g = morphism(&cx.ct, &y, &z, &[ix[1] as u32, ix[2] as u32, 2]);
            let cat = l.q.category();
            prop_assert_eq!(l.q.project(&base.compose(&f, &g)), cat.compose(&l.q.project(&f), &l.q.project(&g)));
            prop_assert_eq!(l.q.project(&base.identity(&x)), cat.identity(&x));
            prop_assert_eq!(l.q.project(&base.add(&f, &f)), cat.add(&l.q.project(&f), &l.q.project(&f)));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn lifts_are_chain_maps_with_exact_cones() -> Result<(), String> {
    TestRunner::new(config())
        .run(&(0usize..1000, 0usize..1000, proptest::collection::vec(0u32..3, 1..5), proptest::array::uniform4(0usize..100)), |(i, j, seed, ix)| {
            let ct = &ctx().ct;
            let p = ct.pres();
            let g = p.generator_count();
            let pairs: Vec<(usize, usize)> = (0..g).flat_map(|c| (0..g).map(move |a| (c, a))).filter(|&(c, a)| p.ext_dim_gen(c, a) > 0).collect();
            let (c, a) = pick(&pairs, i);
            let (co, ao) = (vec![c], vec![a]);
            let mut delta = vector(p.field(), p.ext_dim_gen(c, a), &seed);
            if delta.iter().all(|&v| v == 0) {
                delta[0] = 1;
            }
            let x = realize(ct, &ao, &co, &delta).unwrap();
            let c2 = vec![j % g];
            let cm = morphism(ct, &c2, &co, &[ix[0] as u32, ix[1] as u32]);
            let rho = p.pull_ext(&cm, &ao, &delta);
            let y = realize(ct, &ao, &c2, &rho).unwrap();
            let id = p.identity(&ao);
            let space = lift_space(p, &y, &x, &id, &cm);
            prop_assert!(space.is_some());
            let space = space.unwrap();
            let coeffs = vector(p.field(), space.directions.len(), &[ix[2] as u32, ix[3] as u32, 1]);
            let f = space.element(p, &coeffs);
            prop_assert!(is_chain_map(p, &y, &x, &f));
            prop_assert_eq!(&f.components[0], &id);
            prop_assert_eq!(f.components.last().unwrap(), &cm);
            let cone = mapping_cone(p, &y, &x, &f).unwrap();
            prop_assert!(is_complex(p, &cone));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Every subset `N` of the generators: when the multiplicative system
/// checks pass, `K` computed by push-forwards and by pull-backs agree and
/// `Ē` vanishes on `N`.
pub fn k_characterizations_agree_under_mr() {
    let ct = &ctx().ct;
    let p = ct.pres();
    let mut passing = Vec::new();
    for mask in 0u32..64 {
        let nf: Vec<usize> = (0..6).filter(|b| mask >> b & 1 == 1).collect();
        let q = IdealQuotient::new(p, &nf).unwrap();
        let f = MorphismClass::new(&q, FbarMode::Iso, &[], UniverseBounds::default()).unwrap();
        if !check_mr(&q, &f, ct, UniverseBounds::default()).unwrap().iter().all(|v| v.pass) {
            continue;
        }
        passing.push(mask);
        let k = k_subfunctor(&q, &f).unwrap_or_else(|e| panic!("N = {nf:?}: {e}"));
        let q = q.with_extensions(&k.basis).unwrap();
        for &n in &nf {
            for x in 0..6 {
                assert_eq!(q.ext_quotient(n, x).unwrap().dim(), 0);
                assert_eq!(q.ext_quotient(x, n).unwrap().dim(), 0);
            }
        }
        for c in 0..6 {
            for a in 0..6 {
                assert_eq!(q.ext_quotient(c, a).unwrap().dim() + k.dim(c, a), p.ext_dim_gen(c, a));
            }
        }
    }
    // 0, add(2/3/4), add(1/2/3), add(2/3/4 ⊕ 1/2/3) and everything.
    assert_eq!(passing, [0, 4, 8, 12, 63]);
}
