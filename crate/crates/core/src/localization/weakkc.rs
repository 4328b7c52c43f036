//! The weak kernel-cokernel condition: images of distinguished n-exangles
//! are Hom-exact at their inner terms in the localization.

use crate::error::Result;
use crate::exangulated::axioms::{AxiomVerdict, ExtRecord, FailureRecord, Witness};
use crate::exangulated::realize::ENUM_LIMIT;
use crate::exangulated::{inner_exactness_failures, realize, Complex, ExactnessFailure, Mor, Obj, Realizer, Side};

use super::fbar::{FbarMode, MorphismClass};
use super::quotient::IdealQuotient;

/// Verdict together with every failure found, not only the first.
#[derive(Clone, Debug)]
pub struct WeakKcOutcome {
    pub verdict: AxiomVerdict,
    pub failures: Vec<Witness>,
}

/// Checks every nonzero `δ ∈ E(G_c, G_a)`: the image of `s(δ)` must be
/// Hom-exact at `X_1, …, X_n` against every generator.
pub fn check_weak_kc<R: Realizer + ?Sized>(q: &IdealQuotient, f: &MorphismClass, r: &R) -> Result<WeakKcOutcome> {
    let base = q.base();
    let cat = q.category();
    let g = base.generator_count();
    let mut verdict = AxiomVerdict::new("weak-kc");
    let mut failures = Vec::new();
    for c in 0..g {
        for a in 0..g {
            let Some(all) = base.field().all_vectors(base.ext_dim_gen(c, a), ENUM_LIMIT) else { continue };
            for delta in all.iter().filter(|d| d.iter().any(|&v| v != 0)) {
                verdict.checked += 1;
                let x = q.project_complex(&realize(r, &vec![a], &vec![c], delta)?);
                for e in exangle_failures(q, f, &x) {
                    let w = Witness {
                        detail: format!("not Hom-exact at X_{} on the {} side", e.position, e.side),
                        objects: x.terms.iter().map(|t| base.object_label(t)).collect(),
                        extension: Some(ExtRecord::new(base, &vec![c], &vec![a], delta)),
                        failure: Some(FailureRecord::new(cat, &e)),
                        ..Witness::default()
                    };
                    verdict.fail(w.clone());
                    failures.push(w);
                }
            }
        }
    }
    Ok(WeakKcOutcome { verdict, failures })
}

/// Every inner Hom-exactness failure of a complex of `C̄` in the
/// localization. In iso mode the localization is `C̄` itself.
pub fn exangle_failures(q: &IdealQuotient, f: &MorphismClass, x: &Complex) -> Vec<ExactnessFailure> {
    match f.mode() {
        FbarMode::Iso => inner_exactness_failures(q.category(), x),
        FbarMode::Saturate => fraction_failures(q, f, x),
    }
}

/// Inner Hom-exactness in the localization, with morphisms written as
/// fractions over `F̄`. A morphism `T → X_i` is `a ∘ t⁻¹` with `t: T' → T`
/// in `F̄`; a morphism `X_i → T` is `u⁻¹ ∘ a` with `u: T → T'` in `F̄`.
pub fn fraction_failures(q: &IdealQuotient, f: &MorphismClass, x: &Complex) -> Vec<ExactnessFailure> {
    let cat = q.category();
    let n = x.n();
    let mut out = Vec::new();
    for pos in 1..=n {
        for t in 0..cat.generator_count() {
            if !contra_exact(q, f, x, pos, t) {
                out.push(ExactnessFailure { side: Side::Contravariant, position: pos, test_object: t });
            }
        }
        for t in 0..cat.generator_count() {
            if !co_exact(q, f, x, pos, t) {
                out.push(ExactnessFailure { side: Side::Covariant, position: pos, test_object: t });
            }
        }
    }
    out
}

/// `u ∘ h = 0` for some `u ∈ F̄` out of the target of `h`.
fn killed_after(q: &IdealQuotient, f: &MorphismClass, h: &Mor) -> bool {
    let cat = q.category();
    if cat.is_zero(h) {
        return true;
    }
    let (y, k) = (q.canonical(&h.dst), q.to_canonical(&h.dst));
    let hk = cat.compose(h, &k);
    f.universe().iter().any(|w| f.members(&y, w).iter().any(|u| cat.is_zero(&cat.compose(&hk, u))))
}

/// `h ∘ t = 0` for some `t ∈ F̄` into the source of `h`.
fn killed_before(q: &IdealQuotient, f: &MorphismClass, h: &Mor) -> bool {
    let cat = q.category();
    if cat.is_zero(h) {
        return true;
    }
    let (y, k) = (q.canonical(&h.src), q.from_canonical(&h.src));
    let kh = cat.compose(&k, h);
    f.universe().iter().any(|w| f.members(w, &y).iter().any(|t| cat.is_zero(&cat.compose(t, &kh))))
}

/// Universe objects with a member of `F̄` into (`into = true`) or out of `T`.
fn roof_tops(f: &MorphismClass, t: &Obj, into: bool) -> Vec<Obj> {
    f.universe().iter().filter(|w| if into { !f.members(w, t).is_empty() } else { !f.members(t, w).is_empty() }).cloned().collect()
}

fn contra_exact(q: &IdealQuotient, f: &MorphismClass, x: &Complex, pos: usize, t: usize) -> bool {
    let cat = q.category();
    let tt = q.canonical(&vec![t]);
    let (prev, next) = (&x.diffs[pos - 1], &x.diffs[pos]);
    for top in roof_tops(f, &tt, true) {
        let Some(all) = cat.all_morphisms(&top, &x.terms[pos], ENUM_LIMIT) else { return false };
        for a in &all {
            if !killed_after(q, f, &cat.compose(a, next)) {
                continue;
            }
            // a ∘ s = d ∘ b for some s ∈ F̄ into `top`.
            let hit = f.universe().iter().any(|w| {
                let m = cat.post_matrix(prev, w);
                f.members(w, &top).iter().any(|s| m.solve_vec(&cat.flat(&cat.compose(s, a))).is_some())
            });
            if !hit {
                return false;
            }
        }
    }
    true
}

fn co_exact(q: &IdealQuotient, f: &MorphismClass, x: &Complex, pos: usize, t: usize) -> bool {
    let cat = q.category();
    let tt = q.canonical(&vec![t]);
    let (prev, next) = (&x.diffs[pos - 1], &x.diffs[pos]);
    for top in roof_tops(f, &tt, false) {
        let Some(all) = cat.all_morphisms(&x.terms[pos], &top, ENUM_LIMIT) else { return false };
        for a in &all {
            if !killed_before(q, f, &cat.compose(prev, a)) {
                continue;
            }
            // u ∘ a = b ∘ d for some u ∈ F̄ out of `top`.
            let hit = f.universe().iter().any(|w| {
                let m = cat.pre_matrix(next, w);
                f.members(&top, w).iter().any(|u| m.solve_vec(&cat.flat(&cat.compose(a, u))).is_some())
            });
            if !hit {
                return false;
            }
        }
    }
    true
}
