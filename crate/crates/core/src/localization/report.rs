//! The full localization run and its report.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exangulated::axioms::{basis_extensions, check_core_axioms, AxiomBounds, AxiomVerdict, CoreReport, ExtRecord, FailureRecord, MorRecord, Witness};
use crate::exangulated::presentation::unit;
use crate::exangulated::realize::{ENUM_LIMIT, HOMOTOPY_LIMIT};
use crate::exangulated::{homotopy_equivalent, is_n_exangle, realize, Complex, Mor, Obj, Realizer};

use super::fbar::{FbarMode, MorphismClass, UniverseBounds};
use super::kfun::k_subfunctor;
use super::mr::check_mr;
use super::quotient::IdealQuotient;
use super::roof::{Fractions, QuotientRealizer};
use super::weakkc::check_weak_kc;

pub const SCHEMA: u32 = 1;

/// Exit code of a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// The localization is n-exangulated.
    Exangulated,
    /// Weakly n-exangulated, (C4) fails or was not evaluated.
    Weakly,
    FailsWeakKc,
    /// (M0)–(MR3) fail, or the base category fails the axioms.
    NotApplicable,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Exangulated => 0,
            Outcome::Weakly => 10,
            Outcome::FailsWeakKc => 20,
            Outcome::NotApplicable => 30,
        }
    }
}

/// A sequence to evaluate against the base category. Without a complex the
/// realization of `delta` is used.
#[derive(Clone, Debug)]
pub struct SequenceSpec {
    pub name: String,
    pub a: Obj,
    pub c: Obj,
    pub delta: Vec<u32>,
    pub complex: Option<Complex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceRecord {
    pub name: String,
    pub terms: Vec<String>,
    pub extension: ExtRecord,
    pub is_complex: bool,
    pub attached: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<FailureRecord>,
    pub n_exangle: bool,
    /// The complex is homotopy equivalent to the realization of its extension.
    pub distinguished: bool,
}

/// Evaluates named sequences against a realization.
pub fn evaluate_sequences<R: Realizer + ?Sized>(r: &R, seqs: &[SequenceSpec]) -> Result<Vec<SequenceRecord>> {
    let p = r.pres();
    seqs.iter()
        .map(|s| {
            let x = match &s.complex {
                Some(x) => x.clone(),
                None => realize(r, &s.a, &s.c, &s.delta)?,
            };
            if x.first() != &s.a || x.last() != &s.c || s.delta.len() != p.ext_dim(&s.c, &s.a) {
                return Err(Error::InvalidInput(format!("sequence {} does not match its extension", s.name)));
            }
            let v = is_n_exangle(p, &x, &s.delta);
            let distinguished = v.ok() && r.realizes(&x, &s.delta)?;
            Ok(SequenceRecord {
                name: s.name.clone(),
                terms: x.terms.iter().map(|t| p.object_label(t)).collect(),
                extension: ExtRecord::new(p, &s.c, &s.a, &s.delta),
                is_complex: v.is_complex,
                attached: v.attached,
                failure: v.failure.as_ref().map(|f| FailureRecord::new(p, f)),
                n_exangle: v.ok(),
                distinguished,
            })
        })
        .collect()
}

/// Result of `check`: the core axioms of one category.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub schema: u32,
    pub n: usize,
    pub prime: u32,
    pub generators: Vec<String>,
    pub bounds: AxiomBounds,
    pub verdict: String,
    pub exit_code: i32,
    pub axioms: Vec<AxiomVerdict>,
    pub sequences: Vec<SequenceRecord>,
}

/// Runs (C1)–(C4) and WIC on `r` and evaluates the sequences.
pub fn check<R: Realizer + ?Sized>(r: &R, bounds: AxiomBounds, seqs: &[SequenceSpec]) -> Result<CheckReport> {
    let p = r.pres();
    let core = check_core_axioms(r, bounds)?;
    let outcome = core_outcome(&core);
    let verdict = match outcome {
        Outcome::Exangulated => format!("{}-exangulated", p.n()),
        Outcome::Weakly => format!("weakly {}-exangulated", p.n()),
        _ => "fails the axioms".to_string(),
    };
    let exit_code = match outcome {
        Outcome::Exangulated | Outcome::Weakly => outcome.exit_code(),
        _ => Outcome::FailsWeakKc.exit_code(),
    };
    Ok(CheckReport {
        schema: SCHEMA,
        n: p.n(),
        prime: p.field().p(),
        generators: p.labels().to_vec(),
        bounds,
        verdict,
        exit_code,
        axioms: core.verdicts,
        sequences: evaluate_sequences(r, seqs)?,
    })
}

fn core_outcome(core: &CoreReport) -> Outcome {
    if !core.weakly_pass() {
        Outcome::NotApplicable
    } else if core.get("C4").is_some_and(|v| v.pass) {
        Outcome::Exangulated
    } else {
        Outcome::Weakly
    }
}

/// Everything `localize` needs besides the base realization.
#[derive(Clone, Debug)]
pub struct LocalizeOptions {
    pub nf: Vec<usize>,
    pub mode: FbarMode,
    /// Seed morphisms of `C` (saturate mode).
    pub seeds: Vec<Mor>,
    pub universe: UniverseBounds,
    pub axioms: AxiomBounds,
    pub sequences: Vec<SequenceSpec>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsRecord {
    pub multiplicity: usize,
    pub summands: usize,
    pub conflation_summands: usize,
    pub enumeration_limit: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FbarRecord {
    pub mode: FbarMode,
    pub universe_objects: usize,
    pub members: usize,
    pub truncated: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtDims {
    pub c: String,
    pub a: String,
    pub e: usize,
    pub k: usize,
    pub ebar: usize,
}

/// `(Q, μ)` as an exact functor.
#[derive(Clone, Debug, Serialize)]
pub struct FunctorRecord {
    /// `p(g ∘ f) = p(g) ∘ p(f)` and `p(id) = id` on basis morphisms.
    pub functor: bool,
    /// `μ̄` commutes with push-forwards and pull-backs on basis data.
    pub natural: bool,
    /// `s̃(μ δ) ≃ Q(s(δ))` on basis extensions; iso mode only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<bool>,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// `(C̄, Ē, s̄) ≃ (C̃, Ẽ, s̃)` in iso mode.
#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceRecord {
    pub pass: bool,
    pub pairs: usize,
    /// `μ̄` is a bijection `Ē(G_c, G_a) → Ẽ(G_c, G_a)` on every pair.
    pub mu_bijective: bool,
    /// `s̃(μ̄ δ̄) ≃ s̄(δ̄)` for every basis `δ̄`.
    pub realizations_agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalizationReport {
    pub schema: u32,
    pub n: usize,
    pub prime: u32,
    pub generators: Vec<String>,
    pub nf: Vec<String>,
    pub fbar: FbarRecord,
    pub bounds: BoundsRecord,
    pub verdict: String,
    pub exit_code: i32,
    pub base_axioms: Vec<AxiomVerdict>,
    pub mr: Vec<AxiomVerdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub extensions: Vec<ExtDims>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weak_kc: Option<AxiomVerdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub weak_kc_failures: Vec<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub localized_axioms: Vec<AxiomVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub functor: Option<FunctorRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivalence: Option<EquivalenceRecord>,
    pub sequences: Vec<SequenceRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl LocalizationReport {
    pub fn outcome(&self) -> Outcome {
        match self.exit_code {
            0 => Outcome::Exangulated,
            10 => Outcome::Weakly,
            20 => Outcome::FailsWeakKc,
            _ => Outcome::NotApplicable,
        }
    }
}

/// Localizes the category realized by `r` at `F = p⁻¹(F̄)`.
pub fn localize<R: Realizer + ?Sized>(r: &R, opts: &LocalizeOptions) -> Result<LocalizationReport> {
    let base = r.pres();
    let n = base.n();
    let mut notes = Vec::new();
    let core = check_core_axioms(r, opts.axioms)?;
    let sequences = evaluate_sequences(r, &opts.sequences)?;
    let q0 = IdealQuotient::new(base, &opts.nf)?;
    let seeds: Vec<Mor> = opts.seeds.iter().map(|s| q0.project(s)).collect();
    let fc = MorphismClass::new(&q0, opts.mode, &seeds, opts.universe)?;
    if fc.truncated() {
        notes.push(format!("some Hom spaces exceed {ENUM_LIMIT} elements and were not enumerated"));
    }
    let mut report = LocalizationReport {
        schema: SCHEMA,
        n,
        prime: base.field().p(),
        generators: base.labels().to_vec(),
        nf: q0.nf_generators().iter().map(|&i| base.label(i).to_string()).collect(),
        fbar: FbarRecord { mode: opts.mode, universe_objects: fc.universe().len(), members: fc.member_count(), truncated: fc.truncated() },
        bounds: BoundsRecord {
            multiplicity: opts.universe.multiplicity,
            summands: opts.universe.summands,
            conflation_summands: opts.axioms.conflation_summands,
            enumeration_limit: ENUM_LIMIT,
        },
        verdict: String::new(),
        exit_code: 0,
        base_axioms: core.verdicts.clone(),
        mr: Vec::new(),
        extensions: Vec::new(),
        weak_kc: None,
        weak_kc_failures: Vec::new(),
        localized_axioms: Vec::new(),
        functor: None,
        equivalence: None,
        sequences,
        notes,
    };
    if core_outcome(&core) != Outcome::Exangulated {
        return Ok(finish(report, Outcome::NotApplicable, "base category is not n-exangulated".into()));
    }
    report.mr = check_mr(&q0, &fc, r, opts.universe)?;
    if report.mr.iter().any(|v| !v.pass) {
        return Ok(finish(report, Outcome::NotApplicable, "MR precondition failed".into()));
    }

    let k = k_subfunctor(&q0, &fc)?;
    let q = q0.with_extensions(&k.basis)?;
    // Members are stored as morphisms of C̄, which extensions do not affect.
    let g = base.generator_count();
    for c in 0..g {
        for a in 0..g {
            let e = base.ext_dim_gen(c, a);
            if e > 0 {
                let kd = k.dim(c, a);
                report.extensions.push(ExtDims { c: base.label(c).into(), a: base.label(a).into(), e, k: kd, ebar: e - kd });
            }
        }
    }

    let wkc = check_weak_kc(&q, &fc, r)?;
    let weak_pass = wkc.verdict.pass;
    report.weak_kc = Some(wkc.verdict);
    report.weak_kc_failures = wkc.failures;

    let fr = Fractions::new(&q, &fc);
    let qr = QuotientRealizer::new(&q, r)?;
    report.functor = Some(functor_record(&q, &fr, &qr, r)?);

    let outcome = match opts.mode {
        FbarMode::Iso => {
            let loc = check_core_axioms(&qr, opts.axioms)?;
            let loc_outcome = core_outcome(&loc);
            report.localized_axioms = loc.verdicts;
            report.equivalence = Some(equivalence_record(&q, &fr, &qr)?);
            if !weak_pass {
                Outcome::FailsWeakKc
            } else {
                match loc_outcome {
                    Outcome::NotApplicable => {
                        return Err(Error::Internal("weak-kc passes but the localized category fails (C1)-(C3)".into()));
                    }
                    o => o,
                }
            }
        }
        FbarMode::Saturate => {
            report.notes.push("(C4) is not evaluated on the localization in saturate mode".into());
            if weak_pass {
                Outcome::Weakly
            } else {
                Outcome::FailsWeakKc
            }
        }
    };
    let verdict = match outcome {
        Outcome::Exangulated => format!("{n}-exangulated"),
        Outcome::Weakly => format!("weakly {n}-exangulated"),
        Outcome::FailsWeakKc => "fails weak-kc".into(),
        Outcome::NotApplicable => "MR precondition failed".into(),
    };
    Ok(finish(report, outcome, verdict))
}

fn finish(mut report: LocalizationReport, outcome: Outcome, verdict: String) -> LocalizationReport {
    report.verdict = verdict;
    report.exit_code = outcome.exit_code();
    report
}

fn functor_record<R: Realizer + ?Sized>(q: &IdealQuotient, fr: &Fractions<'_>, qr: &QuotientRealizer<'_, R>, r: &R) -> Result<FunctorRecord> {
    let base = q.base();
    let cat = q.category();
    let g = base.generator_count();
    let mut rec = FunctorRecord { functor: true, natural: true, exact: None, checked: 0, witness: None };
    for i in 0..g {
        rec.checked += 1;
        let id = base.identity(&vec![i]);
        if q.project(&id) != cat.identity(&vec![i]) {
            rec.functor = false;
            set_witness(&mut rec.witness, Witness { detail: "p does not preserve an identity".into(), morphisms: vec![MorRecord::new(base, &id)], ..Witness::default() });
        }
        for j in 0..g {
            for k in 0..g {
                for f in base.hom_basis_gen(i, j) {
                    for h in base.hom_basis_gen(j, k) {
                        rec.checked += 1;
                        if q.project(&base.compose(&f, &h)) != cat.compose(&q.project(&f), &q.project(&h)) {
                            rec.functor = false;
                            set_witness(
                                &mut rec.witness,
                                Witness { detail: "p does not preserve a composite".into(), morphisms: vec![MorRecord::new(base, &f), MorRecord::new(base, &h)], ..Witness::default() },
                            );
                        }
                    }
                }
            }
        }
    }
    // μ̄ against push-forwards and pull-backs along basis morphisms of C̄.
    for (c, a, d) in basis_extensions(cat) {
        let (co, ao) = (vec![c], vec![a]);
        let m = fr.mu_bar(&co, &ao, &d);
        for a2 in 0..g {
            for u in cat.hom_basis_gen(a, a2) {
                rec.checked += 1;
                let lhs = fr.roof_push(&m, &u, &cat.identity(&vec![a2]), 0)?;
                let rhs = fr.mu_bar(&co, &vec![a2], &cat.push_ext(&u, &co, &d));
                if !fr.roof_equal(&lhs, &rhs)? {
                    rec.natural = false;
                    set_witness(
                        &mut rec.witness,
                        Witness {
                            detail: "μ̄ does not commute with a push-forward".into(),
                            morphisms: vec![MorRecord::new(cat, &u)],
                            extension: Some(ExtRecord::new(cat, &co, &ao, &d)),
                            ..Witness::default()
                        },
                    );
                }
            }
        }
        for c2 in 0..g {
            for v in cat.hom_basis_gen(c2, c) {
                rec.checked += 1;
                let lhs = fr.roof_pull(&m, &v, &cat.identity(&vec![c2]), 0)?;
                let rhs = fr.mu_bar(&vec![c2], &ao, &cat.pull_ext(&v, &ao, &d));
                if !fr.roof_equal(&lhs, &rhs)? {
                    rec.natural = false;
                    set_witness(
                        &mut rec.witness,
                        Witness {
                            detail: "μ̄ does not commute with a pull-back".into(),
                            morphisms: vec![MorRecord::new(cat, &v)],
                            extension: Some(ExtRecord::new(cat, &co, &ao, &d)),
                            ..Witness::default()
                        },
                    );
                }
            }
        }
    }
    if fr.f.mode() == FbarMode::Iso {
        let mut exact = true;
        for (c, a, d) in basis_extensions(base) {
            let (co, ao) = (vec![c], vec![a]);
            rec.checked += 1;
            let image = q.project_complex(&realize(r, &ao, &co, &d)?);
            let mu = q.project_ext(&co, &ao, &d);
            let tilde = fr.s_tilde(qr, &fr.mu_bar(&co, &ao, &mu))?;
            if !homotopy_equivalent(cat, &image, &tilde, HOMOTOPY_LIMIT) {
                exact = false;
                set_witness(
                    &mut rec.witness,
                    Witness { detail: "s̃(μ δ) is not equivalent to Q(s(δ))".into(), extension: Some(ExtRecord::new(base, &co, &ao, &d)), ..Witness::default() },
                );
            }
        }
        rec.exact = Some(exact);
    }
    Ok(rec)
}

fn equivalence_record<R: Realizer + ?Sized>(q: &IdealQuotient, fr: &Fractions<'_>, qr: &QuotientRealizer<'_, R>) -> Result<EquivalenceRecord> {
    let cat = q.category();
    let g = cat.generator_count();
    let mut rec = EquivalenceRecord { pass: true, pairs: 0, mu_bijective: true, realizations_agree: true, witness: None };
    for c in 0..g {
        for a in 0..g {
            rec.pairs += 1;
            let grp = fr.etilde_group(c, a)?;
            if !grp.mu_bijective() {
                rec.mu_bijective = false;
                set_witness(
                    &mut rec.witness,
                    Witness {
                        detail: format!("μ̄ is not a bijection: |Ē| = {}, |Ẽ| = {}", grp.ebar.len(), grp.order()),
                        objects: vec![cat.label(c).into(), cat.label(a).into()],
                        ..Witness::default()
                    },
                );
            }
            let d = cat.ext_dim_gen(c, a);
            for k in 0..d {
                let delta = unit(d, k);
                let (co, ao) = (vec![c], vec![a]);
                let bar = realize(qr, &ao, &co, &delta)?;
                let tilde = fr.s_tilde(qr, &fr.mu_bar(&co, &ao, &delta))?;
                if !homotopy_equivalent(cat, &bar, &tilde, HOMOTOPY_LIMIT) {
                    rec.realizations_agree = false;
                    set_witness(
                        &mut rec.witness,
                        Witness { detail: "s̃(μ̄ δ̄) is not equivalent to s̄(δ̄)".into(), extension: Some(ExtRecord::new(cat, &co, &ao, &delta)), ..Witness::default() },
                    );
                }
            }
        }
    }
    rec.pass = rec.mu_bijective && rec.realizations_agree;
    Ok(rec)
}

fn set_witness(slot: &mut Option<Witness>, w: Witness) {
    if slot.is_none() {
        *slot = Some(w);
    }
}

/// Serializes a report deterministically with a trailing newline.
pub fn to_json<T: Serialize>(report: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}
