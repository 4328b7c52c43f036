//! Checks of (M0), (MR1), (MR2) and (MR3) over the bounded universe.

use crate::error::{Error, Result};
use crate::exangulated::axioms::{AxiomVerdict, ExtRecord, MorRecord, Witness};
use crate::exangulated::realize::ENUM_LIMIT;
use crate::exangulated::{lift_space, realize, Complex, Mor, Obj, Realizer};

use super::fbar::{FbarMode, MorphismClass, UniverseBounds};
use super::quotient::IdealQuotient;

fn morphism_witness(q: &IdealQuotient, detail: String, ms: &[&Mor]) -> Witness {
    Witness { detail, morphisms: ms.iter().map(|m| MorRecord::new(q.category(), m)).collect(), ..Witness::default() }
}

fn fits(x: &Obj, bounds: UniverseBounds) -> bool {
    x.len() <= bounds.summands && x.iter().all(|g| x.iter().filter(|h| *h == g).count() <= bounds.multiplicity)
}

/// (M0): isomorphisms, composites and direct sums of members are members,
/// and `N` is exactly the set of generators `G` with `G → 0` and `0 → G`
/// in `F̄`.
pub fn check_m0(q: &IdealQuotient, f: &MorphismClass, bounds: UniverseBounds) -> AxiomVerdict {
    let cat = q.category();
    let mut v = AxiomVerdict::new("M0");
    for x in f.universe() {
        let Some(all) = cat.all_morphisms(x, x, ENUM_LIMIT) else { continue };
        for m in all.iter().filter(|m| cat.is_iso(m)) {
            v.checked += 1;
            if !f.contains(q, m) {
                v.fail(morphism_witness(q, "isomorphism outside F̄".into(), &[m]));
            }
        }
    }
    let members = f.all_members();
    for fm in &members {
        for g in f.universe().iter().flat_map(|z| f.members(&fm.dst, z)) {
            v.checked += 1;
            let h = cat.compose(fm, g);
            if !f.contains(q, &h) {
                v.fail(morphism_witness(q, "composite of members outside F̄".into(), &[fm, g, &h]));
            }
        }
        for g in &members {
            let h = cat.direct_sum(fm, g);
            if fits(&h.src, bounds) && fits(&h.dst, bounds) {
                v.checked += 1;
                if !f.contains(q, &h) {
                    v.fail(morphism_witness(q, "direct sum of members outside F̄".into(), &[fm, g, &h]));
                }
            }
        }
    }
    let empty: Obj = Vec::new();
    for i in 0..cat.generator_count() {
        let x = vec![i];
        v.checked += 1;
        let both = f.contains(q, &cat.zero(&x, &empty)) && f.contains(q, &cat.zero(&empty, &x));
        if both != q.is_nf(i) {
            let detail = if both {
                format!("{} → 0 and 0 → {} lie in F̄ but {} is not in N", cat.label(i), cat.label(i), cat.label(i))
            } else {
                format!("{} is in N but {} → 0 or 0 → {} is not in F̄", cat.label(i), cat.label(i), cat.label(i))
            };
            v.fail(Witness { detail, objects: vec![cat.label(i).to_string()], ..Witness::default() });
        }
    }
    v
}

/// (MR1): for composable `f`, `g` with one of them in `F̄`, the other lies in
/// `F̄` exactly when `g ∘ f` does.
pub fn check_mr1(q: &IdealQuotient, f: &MorphismClass) -> AxiomVerdict {
    let cat = q.category();
    let mut v = AxiomVerdict::new("MR1");
    if f.mode() == FbarMode::Iso {
        // Composing with an isomorphism neither creates nor destroys one.
        for fm in f.all_members() {
            v.checked += 1;
            if !f.contains(q, fm) {
                v.fail(morphism_witness(q, "member of F̄ is not invertible".into(), &[fm]));
            }
        }
        return v;
    }
    for fm in f.all_members() {
        for z in f.universe() {
            let Some(all) = cat.all_morphisms(&fm.dst, z, ENUM_LIMIT) else { continue };
            for g in &all {
                v.checked += 1;
                let h = cat.compose(fm, g);
                let (gin, hin) = (f.contains(q, g), f.contains(q, &h));
                if gin != hin {
                    let detail = if hin { "f and g∘f lie in F̄ but g does not" } else { "f and g lie in F̄ but g∘f does not" };
                    v.fail(morphism_witness(q, detail.into(), &[fm, g, &h]));
                }
            }
        }
        for w in f.universe() {
            let Some(all) = cat.all_morphisms(w, &fm.src, ENUM_LIMIT) else { continue };
            for e in &all {
                v.checked += 1;
                let h = cat.compose(e, fm);
                let (ein, hin) = (f.contains(q, e), f.contains(q, &h));
                if ein != hin {
                    let detail = if hin { "g and g∘f lie in F̄ but f does not" } else { "f and g lie in F̄ but g∘f does not" };
                    v.fail(morphism_witness(q, detail.into(), &[e, fm, &h]));
                }
            }
        }
    }
    v
}

/// (MR2): Ore completions on both sides and cancellation on both sides.
pub fn check_mr2(q: &IdealQuotient, f: &MorphismClass) -> Result<AxiomVerdict> {
    let cat = q.category();
    let mut v = AxiomVerdict::new("MR2");
    let members = f.all_members();
    if f.mode() == FbarMode::Iso {
        // Invertible members complete every square with `(a∘s⁻¹, 1)` and
        // satisfy both cancellation laws outright.
        for s in &members {
            v.checked += 1;
            if cat.inverse(s).is_none() {
                v.fail(morphism_witness(q, "member of F̄ is not invertible".into(), &[s]));
            }
        }
        return Ok(v);
    }
    for s in &members {
        for d in f.universe() {
            let Some(all) = cat.all_morphisms(&s.src, d, ENUM_LIMIT) else { continue };
            for a in &all {
                v.checked += 1;
                match f.ore_push(q, s, a, 0) {
                    Ok((a2, s2)) => {
                        if cat.compose(s, &a2) != cat.compose(a, &s2) || !f.contains(q, &s2) {
                            return Err(Error::Internal("Ore completion does not commute".into()));
                        }
                    }
                    Err(Error::OreNotFound(m)) => v.fail(morphism_witness(q, format!("no left Ore square: {m}"), &[s, a])),
                    Err(e) => return Err(e),
                }
            }
        }
        for e in f.universe() {
            let Some(all) = cat.all_morphisms(e, &s.dst, ENUM_LIMIT) else { continue };
            for c in &all {
                v.checked += 1;
                match f.ore_pull(q, s, c, 0) {
                    Ok((c2, t2)) => {
                        if cat.compose(&c2, s) != cat.compose(&t2, c) || !f.contains(q, &t2) {
                            return Err(Error::Internal("Ore completion does not commute".into()));
                        }
                    }
                    Err(Error::OreNotFound(m)) => v.fail(morphism_witness(q, format!("no right Ore square: {m}"), &[s, c])),
                    Err(e) => return Err(e),
                }
            }
        }
    }
    for s in &members {
        // s ∘ h = 0 must be matched by h ∘ t = 0 for some t in F̄.
        for x in f.universe() {
            let Some(all) = cat.all_morphisms(x, &s.src, ENUM_LIMIT) else { continue };
            for h in all.iter().filter(|h| !cat.is_zero(h) && cat.is_zero(&cat.compose(h, s))) {
                v.checked += 1;
                let ok = f.universe().iter().any(|w| f.members(w, x).iter().any(|t| cat.is_zero(&cat.compose(t, h))));
                if !ok {
                    v.fail(morphism_witness(q, "s∘h = 0 with s in F̄ but no t in F̄ has h∘t = 0".into(), &[h, s]));
                }
            }
        }
        // h ∘ t = 0 must be matched by s ∘ h = 0 for some s in F̄.
        for y in f.universe() {
            let Some(all) = cat.all_morphisms(&s.dst, y, ENUM_LIMIT) else { continue };
            for h in all.iter().filter(|h| !cat.is_zero(h) && cat.is_zero(&cat.compose(s, h))) {
                v.checked += 1;
                let ok = f.universe().iter().any(|w| f.members(y, w).iter().any(|u| cat.is_zero(&cat.compose(h, u))));
                if !ok {
                    v.fail(morphism_witness(q, "h∘t = 0 with t in F̄ but no s in F̄ has s∘h = 0".into(), &[s, h]));
                }
            }
        }
    }
    Ok(v)
}

/// A distinguished n-exangle of `C` between generators.
struct Distinguished {
    a: usize,
    c: usize,
    delta: Vec<u32>,
    x: Complex,
}

fn generator_exangles<R: Realizer + ?Sized>(r: &R) -> Result<Vec<Distinguished>> {
    let p = r.pres();
    let g = p.generator_count();
    let mut out = Vec::new();
    for c in 0..g {
        for a in 0..g {
            let Some(all) = p.field().all_vectors(p.ext_dim_gen(c, a), ENUM_LIMIT) else { continue };
            for delta in all {
                let x = realize(r, &vec![a], &vec![c], &delta)?;
                out.push(Distinguished { a, c, delta, x });
            }
        }
    }
    Ok(out)
}

/// (MR3): for distinguished n-exangles between generators and `(a, c)` with
/// `ā, c̄ ∈ F̄` and `a_*δ = c^*δ'`, some filler `b_1, …, b_n` in `F̄` makes
/// every square commute in `C̄`.
pub fn check_mr3<R: Realizer + ?Sized>(q: &IdealQuotient, f: &MorphismClass, r: &R) -> Result<AxiomVerdict> {
    let base = q.base();
    let cat = q.category();
    let mut v = AxiomVerdict::new("MR3");
    let exs = generator_exangles(r)?;
    for x in &exs {
        for y in &exs {
            let (ax, cx, ay, cy) = (vec![x.a], vec![x.c], vec![y.a], vec![y.c]);
            let Some(amaps) = base.all_morphisms(&ax, &ay, ENUM_LIMIT) else { continue };
            let Some(cmaps) = base.all_morphisms(&cx, &cy, ENUM_LIMIT) else { continue };
            let amaps: Vec<Mor> = amaps.into_iter().filter(|a| f.contains(q, &q.project(a))).collect();
            let cmaps: Vec<Mor> = cmaps.into_iter().filter(|c| f.contains(q, &q.project(c))).collect();
            if amaps.is_empty() || cmaps.is_empty() {
                continue;
            }
            let (xb, yb) = (q.project_complex(&x.x), q.project_complex(&y.x));
            for a in &amaps {
                let pushed = base.push_ext(a, &cx, &x.delta);
                for c in &cmaps {
                    if pushed != base.pull_ext(c, &ay, &y.delta) {
                        continue;
                    }
                    v.checked += 1;
                    if !has_filler(q, f, &xb, &yb, &q.project(a), &q.project(c)) {
                        v.fail(Witness {
                            detail: "no filler in F̄ makes the squares commute in C̄".into(),
                            objects: xb.terms.iter().chain(&yb.terms).map(|t| cat.object_label(t)).collect(),
                            morphisms: vec![MorRecord::new(base, a), MorRecord::new(base, c)],
                            extension: Some(ExtRecord::new(base, &cx, &ax, &x.delta)),
                            failure: None,
                        });
                    }
                }
            }
        }
    }
    Ok(v)
}

fn has_filler(q: &IdealQuotient, f: &MorphismClass, x: &Complex, y: &Complex, a: &Mor, c: &Mor) -> bool {
    let cat = q.category();
    let Some(space) = lift_space(cat, x, y, a, c) else { return false };
    let Some(coeffs) = cat.field().all_vectors(space.directions.len(), ENUM_LIMIT) else { return false };
    let n = x.n();
    coeffs.iter().any(|k| {
        let m = space.element(cat, k);
        (1..=n).all(|i| f.contains(q, &m.components[i]))
    })
}

/// (M0), (MR1), (MR2), (MR3) in this order.
pub fn check_mr<R: Realizer + ?Sized>(q: &IdealQuotient, f: &MorphismClass, r: &R, bounds: UniverseBounds) -> Result<Vec<AxiomVerdict>> {
    Ok(vec![check_m0(q, f, bounds), check_mr1(q, f), check_mr2(q, f)?, check_mr3(q, f, r)?])
}
