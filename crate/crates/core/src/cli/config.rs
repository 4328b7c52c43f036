//! The `.exg` input format: TOML stanzas with strict keys.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::localization::FbarMode;

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FieldStanza {
    #[serde(default = "default_prime")]
    pub p: u32,
}

impl Default for FieldStanza {
    fn default() -> Self {
        FieldStanza { p: default_prime() }
    }
}

fn default_prime() -> u32 {
    2
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ArrowStanza {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct QuiverStanza {
    pub vertices: usize,
    #[serde(default)]
    pub arrows: Vec<ArrowStanza>,
    #[serde(default)]
    pub relations: Vec<String>,
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    #[default]
    ClusterTilting,
    Declared,
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CategoryStanza {
    pub n: usize,
    #[serde(default)]
    pub backend: Backend,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct NfStanza {
    #[serde(default)]
    pub objects: Vec<String>,
}

/// A morphism between objects named by generator labels. Without
/// coordinates the Hom space must be one-dimensional.
#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MorphismStanza {
    pub src: String,
    pub dst: String,
    pub coords: Option<Vec<u32>>,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FbarStanza {
    #[serde(default)]
    pub mode: FbarMode,
    #[serde(default)]
    pub seeds: Vec<MorphismStanza>,
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct BoundsStanza {
    #[serde(default = "two")]
    pub multiplicity: usize,
    #[serde(default = "sixteen")]
    pub path_length: usize,
    #[serde(default = "two")]
    pub summands: usize,
}

impl Default for BoundsStanza {
    fn default() -> Self {
        BoundsStanza { multiplicity: 2, path_length: 16, summands: 2 }
    }
}

fn two() -> usize {
    2
}

fn sixteen() -> usize {
    16
}

/// A complex `terms[0] → … → terms[n+1]` with an extension of its last
/// term by its first. Without `maps` every consecutive Hom space must be
/// one-dimensional.
#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SequenceStanza {
    pub name: Option<String>,
    pub terms: Vec<String>,
    pub maps: Option<Vec<Vec<u32>>>,
    pub extension: Vec<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    field: Option<FieldStanza>,
    quiver: Option<QuiverStanza>,
    category: Option<CategoryStanza>,
    nf: Option<NfStanza>,
    fbar: Option<FbarStanza>,
    bounds: Option<BoundsStanza>,
    #[serde(default)]
    realization: Vec<SequenceStanza>,
    #[serde(default)]
    sequence: Vec<SequenceStanza>,
}

/// A parsed session file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionConfig {
    pub field: FieldStanza,
    pub quiver: QuiverStanza,
    pub category: CategoryStanza,
    pub nf: NfStanza,
    pub fbar: FbarStanza,
    pub bounds: BoundsStanza,
    pub realizations: Vec<SequenceStanza>,
    pub sequences: Vec<SequenceStanza>,
}

/// Parses a session file. Syntax errors carry the 1-based line and column.
pub fn parse_input(text: &str) -> Result<SessionConfig> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map(|s| line_column(text, s.start)).unwrap_or((1, 1));
        Error::Syntax { line, column, message: e.message().to_string() }
    })?;
    let quiver = raw.quiver.ok_or_else(|| Error::Semantic("missing [quiver]".into()))?;
    let category = raw.category.ok_or_else(|| Error::Semantic("missing [category]".into()))?;
    let cfg = SessionConfig {
        field: raw.field.unwrap_or_default(),
        quiver,
        category,
        nf: raw.nf.unwrap_or_default(),
        fbar: raw.fbar.unwrap_or_default(),
        bounds: raw.bounds.unwrap_or_default(),
        realizations: raw.realization,
        sequences: raw.sequence,
    };
    validate(&cfg)?;
    Ok(cfg)
}

fn validate(cfg: &SessionConfig) -> Result<()> {
    let q = &cfg.quiver;
    if q.vertices == 0 {
        return Err(Error::Semantic("the quiver needs at least one vertex".into()));
    }
    for a in &q.arrows {
        for v in [a.source, a.target] {
            if v == 0 || v > q.vertices {
                return Err(Error::Semantic(format!("arrow {} uses vertex {v}, outside 1..={}", a.name, q.vertices)));
            }
        }
    }
    if cfg.category.n == 0 {
        return Err(Error::Semantic("[category] n must be at least 1".into()));
    }
    if cfg.category.generators.is_empty() {
        return Err(Error::Semantic("[category] needs at least one generator".into()));
    }
    if cfg.category.backend == Backend::Declared && cfg.realizations.is_empty() {
        return Err(Error::Semantic("the declared backend needs [[realization]] entries".into()));
    }
    if cfg.category.backend == Backend::ClusterTilting && !cfg.realizations.is_empty() {
        return Err(Error::Semantic("[[realization]] entries need backend = \"declared\"".into()));
    }
    if cfg.fbar.mode == FbarMode::Iso && !cfg.fbar.seeds.is_empty() {
        return Err(Error::Semantic("[fbar] seeds need mode = \"saturate\"".into()));
    }
    let b = &cfg.bounds;
    if b.multiplicity == 0 || b.summands == 0 || b.path_length == 0 {
        return Err(Error::Semantic("[bounds] values must be positive".into()));
    }
    for s in cfg.realizations.iter().chain(&cfg.sequences) {
        if s.terms.len() != cfg.category.n + 2 {
            return Err(Error::Semantic(format!("a sequence of {} terms does not have n + 2 = {} terms", s.terms.len(), cfg.category.n + 2)));
        }
        if let Some(m) = &s.maps {
            if m.len() + 1 != s.terms.len() {
                return Err(Error::Semantic(format!("{} maps for {} terms", m.len(), s.terms.len())));
            }
        }
    }
    Ok(())
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}
