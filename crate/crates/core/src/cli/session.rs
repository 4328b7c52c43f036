//! A configured category ready for checks: algebra, generators and the
//! realization backend.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::Field;
use crate::exangulated::axioms::{labels, AxiomBounds};
use crate::exangulated::{resolve_generators, ClusterTilting, Complex, Declared, DeclaredEntry, GeneratorSpec, ModuleCategory, Mor, NExangle, Obj, Presentation, Realizer};
use crate::localization::{check, localize, to_json, CheckReport, LocalizationReport, LocalizeOptions, SequenceSpec, UniverseBounds};
use crate::quiverrep::{Algebra, Quiver, Relation, DEFAULT_SEED};

use super::config::{Backend, MorphismStanza, SequenceStanza, SessionConfig};

/// Overrides applied on top of a session file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SessionOptions {
    pub prime: Option<u32>,
    pub multiplicity: Option<usize>,
    /// Seed of the randomized decomposition search.
    pub seed: u64,
}

impl Default for SessionOptions {
    fn default() -> Self {
        SessionOptions { prime: None, multiplicity: None, seed: DEFAULT_SEED }
    }
}

enum Engine {
    Cluster(ClusterTilting),
    Declared(ModuleCategory, Vec<DeclaredEntry>),
}

pub struct Session {
    cfg: SessionConfig,
    multiplicity: usize,
    engine: Engine,
}

impl Session {
    pub fn new(cfg: SessionConfig, opts: SessionOptions) -> Result<Self> {
        let p = opts.prime.unwrap_or(cfg.field.p);
        let field = Field::new(p)?;
        let arrows: Vec<(&str, usize, usize)> = cfg.quiver.arrows.iter().map(|a| (a.name.as_str(), a.source, a.target)).collect();
        let quiver = Quiver::new(cfg.quiver.vertices, &arrows).map_err(semantic)?;
        let rels = cfg.quiver.relations.iter().map(|r| Relation::parse(&quiver, field, r).map_err(semantic)).collect::<Result<Vec<_>>>()?;
        let alg = Algebra::new(field, quiver, rels, cfg.bounds.path_length)?;
        let specs = cfg.category.generators.iter().map(|g| GeneratorSpec::parse(g)).collect::<Result<Vec<_>>>()?;
        let gens = resolve_generators(&alg, &specs, opts.seed)?;
        let cat = ModuleCategory::new(alg, cfg.category.n, gens)?;
        let multiplicity = opts.multiplicity.unwrap_or(cfg.bounds.multiplicity);
        if multiplicity == 0 {
            return Err(Error::Semantic("the multiplicity bound must be positive".into()));
        }
        let engine = match cfg.category.backend {
            Backend::ClusterTilting => Engine::Cluster(ClusterTilting::new(cat, multiplicity)),
            Backend::Declared => {
                let p = cat.presentation();
                let entries = cfg
                    .realizations
                    .iter()
                    .map(|s| {
                        let x = complex(p, s)?;
                        let (a, c) = match (x.first().as_slice(), x.last().as_slice()) {
                            ([a], [c]) => (*a, *c),
                            _ => return Err(Error::Semantic("declared realizations must start and end at generators".into())),
                        };
                        Ok(DeclaredEntry { c, a, exangle: NExangle { complex: x, delta: s.extension.clone() } })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Declared::new(p, entries.clone())?;
                Engine::Declared(cat, entries)
            }
        };
        Ok(Session { cfg, multiplicity, engine })
    }

    pub fn config(&self) -> &SessionConfig {
        &self.cfg
    }

    pub fn category(&self) -> &ModuleCategory {
        match &self.engine {
            Engine::Cluster(ct) => ct.category(),
            Engine::Declared(cat, _) => cat,
        }
    }

    pub fn presentation(&self) -> &Presentation {
        self.category().presentation()
    }

    /// Runs `f` with the configured realization.
    pub fn with_realizer<T>(&self, f: impl FnOnce(&dyn Realizer) -> Result<T>) -> Result<T> {
        match &self.engine {
            Engine::Cluster(ct) => f(ct),
            Engine::Declared(cat, entries) => f(&Declared::new(cat.presentation(), entries.clone())?),
        }
    }

    /// Parses `A + B + …` over generator labels; `0` is the zero object.
    pub fn object(&self, text: &str) -> Result<Obj> {
        object(self.presentation(), text)
    }

    pub fn sequences(&self) -> Result<Vec<SequenceSpec>> {
        let p = self.presentation();
        self.cfg
            .sequences
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let x = complex(p, s)?;
                Ok(SequenceSpec {
                    name: s.name.clone().unwrap_or_else(|| format!("sequence {}", i + 1)),
                    a: x.first().clone(),
                    c: x.last().clone(),
                    delta: s.extension.clone(),
                    complex: Some(x),
                })
            })
            .collect()
    }

    pub fn check(&self) -> Result<CheckReport> {
        let seqs = self.sequences()?;
        self.with_realizer(|r| check(r, AxiomBounds::default(), &seqs))
    }

    pub fn localize_options(&self) -> Result<LocalizeOptions> {
        let p = self.presentation();
        let mut nf = Vec::new();
        for o in &self.cfg.nf.objects {
            nf.extend(self.object(o)?);
        }
        nf.sort_unstable();
        nf.dedup();
        let seeds = self.cfg.fbar.seeds.iter().map(|s| morphism(p, s)).collect::<Result<Vec<_>>>()?;
        Ok(LocalizeOptions {
            nf,
            mode: self.cfg.fbar.mode,
            seeds,
            universe: UniverseBounds { multiplicity: self.multiplicity, summands: self.cfg.bounds.summands },
            axioms: AxiomBounds::default(),
            sequences: self.sequences()?,
        })
    }

    pub fn localize(&self) -> Result<LocalizationReport> {
        let opts = self.localize_options()?;
        self.with_realizer(|r| localize(r, &opts))
    }

    pub fn hom(&self, x: &str, y: &str) -> Result<DimReport> {
        let p = self.presentation();
        let (xo, yo) = (self.object(x)?, self.object(y)?);
        Ok(DimReport { schema: crate::localization::report::SCHEMA, kind: "hom", first: labels(p, &xo), second: labels(p, &yo), dim: p.hom_dim(&xo, &yo) })
    }

    /// `dim E(C, A)`, the first argument being `C`.
    pub fn ext(&self, c: &str, a: &str) -> Result<DimReport> {
        let p = self.presentation();
        let (co, ao) = (self.object(c)?, self.object(a)?);
        Ok(DimReport { schema: crate::localization::report::SCHEMA, kind: "ext", first: labels(p, &co), second: labels(p, &ao), dim: p.ext_dim(&co, &ao) })
    }
}

/// A Hom or Ext dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimReport {
    pub schema: u32,
    pub kind: &'static str,
    pub first: Vec<String>,
    pub second: Vec<String>,
    pub dim: usize,
}

impl DimReport {
    pub fn to_json(&self) -> Result<String> {
        to_json(self)
    }
}

fn semantic(e: Error) -> Error {
    match e {
        Error::Semantic(_) => e,
        other => Error::Semantic(other.to_string()),
    }
}

pub fn object(p: &Presentation, text: &str) -> Result<Obj> {
    let t = text.trim();
    if t.is_empty() || t == "0" {
        return Ok(Vec::new());
    }
    t.split('+')
        .map(|s| {
            let s = s.trim();
            p.generator_index(s).ok_or_else(|| Error::Semantic(format!("unknown object `{s}`; generators are {}", p.labels().join(", "))))
        })
        .collect()
}

fn morphism_between(p: &Presentation, x: &Obj, y: &Obj, coords: Option<&[u32]>) -> Result<Mor> {
    let d = p.hom_dim(x, y);
    let v = match coords {
        Some(c) if c.len() == d => c.to_vec(),
        Some(c) => return Err(Error::Semantic(format!("{} coordinates for Hom({}, {}) of dimension {d}", c.len(), p.object_label(x), p.object_label(y)))),
        None if d == 1 => vec![1],
        None => {
            return Err(Error::Semantic(format!("Hom({}, {}) has dimension {d}; give coordinates", p.object_label(x), p.object_label(y))));
        }
    };
    let fl = p.field();
    if v.iter().any(|&c| c >= fl.p()) {
        return Err(Error::Semantic(format!("coordinates must lie in 0..{}", fl.p())));
    }
    Ok(p.from_flat(x, y, &v))
}

fn morphism(p: &Presentation, s: &MorphismStanza) -> Result<Mor> {
    morphism_between(p, &object(p, &s.src)?, &object(p, &s.dst)?, s.coords.as_deref())
}

fn complex(p: &Presentation, s: &SequenceStanza) -> Result<Complex> {
    let terms = s.terms.iter().map(|t| object(p, t)).collect::<Result<Vec<_>>>()?;
    let diffs = terms
        .windows(2)
        .enumerate()
        .map(|(i, w)| morphism_between(p, &w[0], &w[1], s.maps.as_ref().map(|m| m[i].as_slice())))
        .collect::<Result<Vec<_>>>()?;
    let x = Complex::new(terms, diffs)?;
    if s.extension.len() != p.ext_dim(x.last(), x.first()) {
        return Err(Error::Semantic(format!(
            "extension has {} coordinates but E({}, {}) has dimension {}",
            s.extension.len(),
            p.object_label(x.last()),
            p.object_label(x.first()),
            p.ext_dim(x.last(), x.first())
        )));
    }
    Ok(x)
}
