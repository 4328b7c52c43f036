//! Verdicts for (C1), (C2), (C2′), (C3), (C3′), (C4) and the (WIC)
//! condition, quantified over generators and basis data.

use std::collections::HashMap;
use std::sync::Mutex;

use serde::Serialize;

use crate::error::{Error, Result};

use super::exangle::{is_n_exangle, lift_space, mapping_cocone, mapping_cone, split_complex, ExactnessFailure, Side};
use super::presentation::{unit, Mor, Obj, Presentation};
use super::realize::{find_deflation, find_inflation, realize, Realizer, ENUM_LIMIT};

/// A morphism in report form: generator labels and block coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorRecord {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub coords: Vec<u32>,
}

impl MorRecord {
    pub fn new(p: &Presentation, f: &Mor) -> Self {
        MorRecord { source: labels(p, &f.src), target: labels(p, &f.dst), coords: p.flat(f) }
    }
}

/// An extension in report form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtRecord {
    pub c: Vec<String>,
    pub a: Vec<String>,
    pub coords: Vec<u32>,
}

impl ExtRecord {
    pub fn new(p: &Presentation, c: &Obj, a: &Obj, delta: &[u32]) -> Self {
        ExtRecord { c: labels(p, c), a: labels(p, a), coords: delta.to_vec() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureRecord {
    pub side: Side,
    pub position: usize,
    pub test_object: String,
}

impl FailureRecord {
    pub fn new(p: &Presentation, f: &ExactnessFailure) -> Self {
        FailureRecord { side: f.side, position: f.position, test_object: p.label(f.test_object).to_string() }
    }
}

/// The datum behind a failed check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub objects: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub morphisms: Vec<MorRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extension: Option<ExtRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<FailureRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomVerdict {
    pub axiom: String,
    pub pass: bool,
    /// Number of data examined.
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl AxiomVerdict {
    pub fn new(axiom: &str) -> Self {
        AxiomVerdict { axiom: axiom.into(), pass: true, checked: 0, witness: None }
    }

    pub fn fail(&mut self, w: Witness) {
        if self.pass {
            self.pass = false;
            self.witness = Some(w);
        }
    }
}

pub fn labels(p: &Presentation, x: &Obj) -> Vec<String> {
    x.iter().map(|&i| p.label(i).to_string()).collect()
}

/// Caches inflation and deflation verdicts per morphism.
pub struct ConflationOracle<'r, R: Realizer + ?Sized> {
    r: &'r R,
    max_summands: usize,
    inflations: Mutex<HashMap<Mor, bool>>,
    deflations: Mutex<HashMap<Mor, bool>>,
}

impl<'r, R: Realizer + ?Sized> ConflationOracle<'r, R> {
    pub fn new(r: &'r R, max_summands: usize) -> Self {
        ConflationOracle { r, max_summands, inflations: Mutex::new(HashMap::new()), deflations: Mutex::new(HashMap::new()) }
    }

    pub fn is_inflation(&self, f: &Mor) -> Result<bool> {
        if let Some(&v) = self.inflations.lock().expect("lock").get(f) {
            return Ok(v);
        }
        let v = find_inflation(self.r, f, self.max_summands)?.is_some();
        self.inflations.lock().expect("lock").insert(f.clone(), v);
        Ok(v)
    }

    pub fn is_deflation(&self, g: &Mor) -> Result<bool> {
        if let Some(&v) = self.deflations.lock().expect("lock").get(g) {
            return Ok(v);
        }
        let v = find_deflation(self.r, g, self.max_summands)?.is_some();
        self.deflations.lock().expect("lock").insert(g.clone(), v);
        Ok(v)
    }
}

/// Bounds for the axiom searches.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct AxiomBounds {
    /// Third terms searched when certifying inflations and deflations.
    pub conflation_summands: usize,
}

impl Default for AxiomBounds {
    fn default() -> Self {
        AxiomBounds { conflation_summands: 2 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoreReport {
    pub verdicts: Vec<AxiomVerdict>,
}

impl CoreReport {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomVerdict> {
        self.verdicts.iter().find(|v| v.axiom == axiom)
    }

    /// Pass status of (C1), (C2), (C2′), (C3), (C3′).
    pub fn weakly_pass(&self) -> bool {
        ["C1", "C2", "C2'", "C3", "C3'"].iter().all(|a| self.get(a).is_some_and(|v| v.pass))
    }
}

/// Runs every check in the order (C1), (C2), (C2′), (C3), (C3′), (C4), WIC.
pub fn check_core_axioms<R: Realizer + ?Sized>(r: &R, bounds: AxiomBounds) -> Result<CoreReport> {
    let oracle = ConflationOracle::new(r, bounds.conflation_summands);
    let verdicts = vec![check_c1(r)?, check_c2(r, false)?, check_c2(r, true)?, check_c3(r)?, check_c3_dual(r)?, check_c4(r, &oracle)?, check_wic(r, &oracle)?];
    Ok(CoreReport { verdicts })
}

pub fn basis_extensions(p: &Presentation) -> Vec<(usize, usize, Vec<u32>)> {
    let g = p.generator_count();
    let mut out = Vec::new();
    for c in 0..g {
        for a in 0..g {
            let d = p.ext_dim_gen(c, a);
            for k in 0..d {
                out.push((c, a, unit(d, k)));
            }
        }
    }
    out
}

fn realize_or_witness<R: Realizer + ?Sized>(r: &R, a: &Obj, c: &Obj, delta: &[u32], v: &mut AxiomVerdict) -> Result<Option<super::exangle::Complex>> {
    match realize(r, a, c, delta) {
        Ok(x) => Ok(Some(x)),
        Err(e @ Error::NoRealization(_)) => {
            let p = r.pres();
            v.fail(Witness { detail: e.to_string(), extension: Some(ExtRecord::new(p, c, a, delta)), ..Witness::default() });
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// (C1): every realized basis extension is an n-exangle.
pub fn check_c1<R: Realizer + ?Sized>(r: &R) -> Result<AxiomVerdict> {
    let p = r.pres();
    let mut v = AxiomVerdict::new("C1");
    for (c, a, delta) in basis_extensions(p) {
        v.checked += 1;
        let (ao, co) = (vec![a], vec![c]);
        let Some(x) = realize_or_witness(r, &ao, &co, &delta, &mut v)? else { continue };
        let verdict = is_n_exangle(p, &x, &delta);
        if !verdict.ok() {
            let detail = if !verdict.is_complex {
                "realization is not a complex".to_string()
            } else if let Some(f) = &verdict.failure {
                format!("realization fails {} exactness at position {} with test object {}", f.side, f.position, p.label(f.test_object))
            } else {
                "realization is not attached to its extension".to_string()
            };
            v.fail(Witness {
                detail,
                objects: x.terms.iter().map(|t| p.object_label(t)).collect(),
                morphisms: x.diffs.iter().map(|d| MorRecord::new(p, d)).collect(),
                extension: Some(ExtRecord::new(p, &co, &ao, &delta)),
                failure: verdict.failure.as_ref().map(|f| FailureRecord::new(p, f)),
            });
        }
    }
    Ok(v)
}

/// (C2) for `dual = false`: `s(_A0_0)` is `A → A → 0 …`; (C2′) dually.
pub fn check_c2<R: Realizer + ?Sized>(r: &R, dual: bool) -> Result<AxiomVerdict> {
    let p = r.pres();
    let mut v = AxiomVerdict::new(if dual { "C2'" } else { "C2" });
    for i in 0..p.generator_count() {
        v.checked += 1;
        let (a, c) = if dual { (Vec::new(), vec![i]) } else { (vec![i], Vec::new()) };
        let split = split_complex(p, p.n(), &a, &c);
        let zero: Vec<u32> = Vec::new();
        let ok = r.realizes(&split, &zero)? && is_n_exangle(p, &split, &zero).ok();
        if !ok {
            v.fail(Witness { detail: "split complex is not the realization of zero".into(), objects: vec![p.label(i).to_string()], ..Witness::default() });
        }
    }
    Ok(v)
}

/// (C3): for basis `δ ∈ E(G_c, G_a)` and basis `u ∈ Hom(G_a, G_b)`, some
/// lift of `(u, id)` has a distinguished cocone with `(d_n^Y)^*δ`.
pub fn check_c3<R: Realizer + ?Sized>(r: &R) -> Result<AxiomVerdict> {
    let p = r.pres();
    let n = p.n();
    let mut v = AxiomVerdict::new("C3");
    for (c, a, delta) in basis_extensions(p) {
        let (ao, co) = (vec![a], vec![c]);
        let Some(x) = realize_or_witness(r, &ao, &co, &delta, &mut v)? else { continue };
        for b in 0..p.generator_count() {
            let bo = vec![b];
            for u in p.hom_basis_gen(a, b) {
                v.checked += 1;
                let rho = p.push_ext(&u, &co, &delta);
                let Some(y) = realize_or_witness(r, &bo, &co, &rho, &mut v)? else { continue };
                let ext = p.pull_ext(&y.diffs[n], &ao, &delta);
                let good = good_lift(r, &x, &y, &u, &p.identity(&co), &ext, true)?;
                if !good {
                    v.fail(Witness {
                        detail: "no lift of (u, id) has a distinguished mapping cocone".into(),
                        morphisms: vec![MorRecord::new(p, &u)],
                        extension: Some(ExtRecord::new(p, &co, &ao, &delta)),
                        ..Witness::default()
                    });
                }
            }
        }
    }
    Ok(v)
}

/// (C3′): for basis `δ ∈ E(G_c, G_a)` and basis `w ∈ Hom(G_d, G_c)`, some
/// lift of `(id, w)` has a distinguished mapping cone with `(d_0^X)_*δ`.
pub fn check_c3_dual<R: Realizer + ?Sized>(r: &R) -> Result<AxiomVerdict> {
    let p = r.pres();
    let mut v = AxiomVerdict::new("C3'");
    for (c, a, delta) in basis_extensions(p) {
        let (ao, co) = (vec![a], vec![c]);
        let Some(y) = realize_or_witness(r, &ao, &co, &delta, &mut v)? else { continue };
        for d in 0..p.generator_count() {
            let dobj = vec![d];
            for w in p.hom_basis_gen(d, c) {
                v.checked += 1;
                let pulled = p.pull_ext(&w, &ao, &delta);
                let Some(x) = realize_or_witness(r, &ao, &dobj, &pulled, &mut v)? else { continue };
                let ext = p.push_ext(&x.diffs[0], &co, &delta);
                let good = good_lift(r, &x, &y, &p.identity(&ao), &w, &ext, false)?;
                if !good {
                    v.fail(Witness {
                        detail: "no lift of (id, w) has a distinguished mapping cone".into(),
                        morphisms: vec![MorRecord::new(p, &w)],
                        extension: Some(ExtRecord::new(p, &co, &ao, &delta)),
                        ..Witness::default()
                    });
                }
            }
        }
    }
    Ok(v)
}

/// Enumerates lifts of `(a, c)` and tests the cocone (`cocone = true`) or
/// cone against `ext`.
fn good_lift<R: Realizer + ?Sized>(
    r: &R,
    x: &super::exangle::Complex,
    y: &super::exangle::Complex,
    a: &Mor,
    c: &Mor,
    ext: &[u32],
    cocone: bool,
) -> Result<bool> {
    let p = r.pres();
    let Some(space) = lift_space(p, x, y, a, c) else { return Ok(false) };
    let Some(coeffs) = p.field().all_vectors(space.directions.len(), ENUM_LIMIT) else {
        return Err(Error::Unsupported("lift space too large to enumerate".into()));
    };
    for cv in coeffs {
        let f = space.element(p, &cv);
        let m = if cocone { mapping_cocone(p, x, y, &f)? } else { mapping_cone(p, x, y, &f)? };
        if r.realizes(&m, ext)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Every element of `Hom(G_i, G_j)`.
fn gen_morphisms(p: &Presentation, i: usize, j: usize) -> Result<Vec<Mor>> {
    p.all_morphisms(&vec![i], &vec![j], ENUM_LIMIT).ok_or_else(|| Error::Unsupported(format!("Hom({}, {}) too large to enumerate", p.label(i), p.label(j))))
}

/// (C4): composites of inflations (deflations) between generators are
/// inflations (deflations).
pub fn check_c4<R: Realizer + ?Sized>(r: &R, o: &ConflationOracle<'_, R>) -> Result<AxiomVerdict> {
    let p = r.pres();
    let g = p.generator_count();
    let mut v = AxiomVerdict::new("C4");
    for i in 0..g {
        for j in 0..g {
            let fs = gen_morphisms(p, i, j)?;
            for k in 0..g {
                let gs = gen_morphisms(p, j, k)?;
                for f in &fs {
                    for h in &gs {
                        v.checked += 1;
                        let comp = p.compose(f, h);
                        if o.is_inflation(f)? && o.is_inflation(h)? && !o.is_inflation(&comp)? {
                            v.fail(composite_witness(p, f, h, "both factors are inflations but the composite is not"));
                        }
                        if o.is_deflation(f)? && o.is_deflation(h)? && !o.is_deflation(&comp)? {
                            v.fail(composite_witness(p, f, h, "both factors are deflations but the composite is not"));
                        }
                    }
                }
            }
        }
    }
    Ok(v)
}

/// (WIC): `g∘f` a deflation forces `g` a deflation; `g∘f` an inflation
/// forces `f` an inflation.
pub fn check_wic<R: Realizer + ?Sized>(r: &R, o: &ConflationOracle<'_, R>) -> Result<AxiomVerdict> {
    let p = r.pres();
    let g = p.generator_count();
    let mut v = AxiomVerdict::new("WIC");
    for i in 0..g {
        for j in 0..g {
            let fs = gen_morphisms(p, i, j)?;
            for k in 0..g {
                let gs = gen_morphisms(p, j, k)?;
                for f in &fs {
                    for h in &gs {
                        v.checked += 1;
                        let comp = p.compose(f, h);
                        if o.is_deflation(&comp)? && !o.is_deflation(h)? {
                            v.fail(composite_witness(p, f, h, "composite is a deflation but the second factor is not"));
                        }
                        if o.is_inflation(&comp)? && !o.is_inflation(f)? {
                            v.fail(composite_witness(p, f, h, "composite is an inflation but the first factor is not"));
                        }
                    }
                }
            }
        }
    }
    Ok(v)
}

fn composite_witness(p: &Presentation, f: &Mor, g: &Mor, detail: &str) -> Witness {
    Witness { detail: detail.into(), morphisms: vec![MorRecord::new(p, f), MorRecord::new(p, g)], ..Witness::default() }
}
