//! Quivers, admissible-style relations and the finite path basis of the
//! quotient algebra.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactalg::{quotient_with_section, Field, Matrix, Quotient};

/// Hard cap on the number of paths enumerated while certifying finite
/// dimension.
const MAX_PATHS: usize = 50_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    /// 0-based.
    pub source: usize,
    /// 0-based.
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// `arrows` use 1-based vertex numbers, as written in input files.
    pub fn new(vertex_count: usize, arrows: &[(&str, usize, usize)]) -> Result<Self> {
        let mut out = Vec::with_capacity(arrows.len());
        for &(name, s, t) in arrows {
            if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::Semantic(format!("bad arrow name {name:?}")));
            }
            if name.chars().all(|c| c.is_ascii_digit()) {
                return Err(Error::Semantic(format!("arrow name {name:?} must not be numeric")));
            }
            if s == 0 || t == 0 || s > vertex_count || t > vertex_count {
                return Err(Error::Semantic(format!("arrow {name}: vertex out of range 1..{vertex_count}")));
            }
            if out.iter().any(|a: &Arrow| a.name == name) {
                return Err(Error::Semantic(format!("duplicate arrow name {name}")));
            }
            out.push(Arrow { name: name.to_string(), source: s - 1, target: t - 1 });
        }
        Ok(Quiver { vertex_count, arrows: out })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Parses a left-to-right arrow word. Names may be separated by `.`, `*`
    /// or spaces; otherwise the word is split greedily by longest arrow name.
    pub fn parse_path(&self, word: &str) -> Result<Vec<usize>> {
        let word = word.trim();
        let mut out = Vec::new();
        if word.contains(['.', '*', ' ']) {
            for tok in word.split(['.', '*', ' ']).filter(|t| !t.is_empty()) {
                out.push(self.arrow_index(tok).ok_or_else(|| Error::Semantic(format!("unknown arrow {tok:?}")))?);
            }
        } else {
            let mut rest = word;
            while !rest.is_empty() {
                let best = self
                    .arrows
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| rest.starts_with(a.name.as_str()))
                    .max_by_key(|(_, a)| a.name.len())
                    .ok_or_else(|| Error::Semantic(format!("unknown arrow in {word:?} at {rest:?}")))?;
                out.push(best.0);
                rest = &rest[best.1.name.len()..];
            }
        }
        if out.is_empty() {
            return Err(Error::Semantic("empty path".into()));
        }
        for w in out.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(Error::Semantic(format!(
                    "path {word:?} is not composable at {}{}",
                    self.arrows[w[0]].name, self.arrows[w[1]].name
                )));
            }
        }
        Ok(out)
    }

    pub fn path_source(&self, arrows: &[usize]) -> usize {
        self.arrows[arrows[0]].source
    }

    pub fn path_target(&self, arrows: &[usize]) -> usize {
        self.arrows[*arrows.last().expect("nonempty path")].target
    }

    pub fn path_name(&self, arrows: &[usize]) -> String {
        arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("")
    }
}

/// A linear combination of parallel paths, each of length at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(u32, Vec<usize>)>,
}

impl Relation {
    /// Parses `abc`, `ab - cd`, `ab + 2 cd` and similar.
    pub fn parse(quiver: &Quiver, field: Field, text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        let mut sign: i64 = 1;
        let mut pending = String::new();
        let flush = |pending: &mut String, sign: i64, terms: &mut Vec<(u32, Vec<usize>)>| -> Result<()> {
            let t = pending.trim();
            if t.is_empty() {
                return Ok(());
            }
            let digits: String = t.chars().take_while(|c| c.is_ascii_digit()).collect();
            let coeff: i64 = if digits.is_empty() {
                1
            } else {
                digits.parse().map_err(|_| Error::Semantic(format!("bad coefficient in {t:?}")))?
            };
            let word = t[digits.len()..].trim().trim_start_matches('*');
            let path = quiver.parse_path(word)?;
            terms.push((field.reduce(sign * coeff), path));
            pending.clear();
            Ok(())
        };
        for ch in text.chars() {
            match ch {
                '+' | '-' => {
                    flush(&mut pending, sign, &mut terms)?;
                    sign = if ch == '-' { -1 } else { 1 };
                }
                _ => pending.push(ch),
            }
        }
        flush(&mut pending, sign, &mut terms)?;
        let rel = Relation { terms: terms.into_iter().filter(|(c, _)| *c != 0).collect() };
        rel.validate(quiver, text)?;
        Ok(rel)
    }

    fn validate(&self, quiver: &Quiver, text: &str) -> Result<()> {
        let Some((_, first)) = self.terms.first() else {
            return Err(Error::Semantic(format!("relation {text:?} is zero")));
        };
        let (s, t) = (quiver.path_source(first), quiver.path_target(first));
        for (_, p) in &self.terms {
            if p.len() < 2 {
                return Err(Error::Semantic(format!("relation {text:?} has a path of length < 2")));
            }
            if quiver.path_source(p) != s || quiver.path_target(p) != t {
                return Err(Error::Semantic(format!("relation {text:?} mixes non-parallel paths")));
            }
        }
        Ok(())
    }
}

/// A path of the quiver. Trivial paths have no arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Finite-dimensional quotient of a path algebra.
#[derive(Clone, Debug)]
pub struct Algebra {
    field: Field,
    quiver: Quiver,
    relations: Vec<Relation>,
    /// Every path of length `nil_length` lies in the ideal.
    nil_length: usize,
    paths: Vec<Path>,
    index: HashMap<(usize, Vec<usize>), usize>,
    quotient: Quotient,
    /// For each global quotient coordinate: (source, target, local index).
    coord_owner: Vec<(usize, usize, usize)>,
    /// Basis paths per (source, target), as indices into `paths`.
    pair_basis: Vec<Vec<Vec<usize>>>,
}

impl Algebra {
    pub fn new(field: Field, quiver: Quiver, relations: Vec<Relation>, path_length_bound: usize) -> Result<Self> {
        for nil in 1..=path_length_bound.max(1) {
            let paths = enumerate_paths(&quiver, nil)?;
            let index: HashMap<(usize, Vec<usize>), usize> =
                paths.iter().enumerate().map(|(i, p)| ((p.source, p.arrows.clone()), i)).collect();
            let ideal = ideal_span(field, &quiver, &relations, &paths, &index, nil);
            let q = quotient_with_section(field, paths.len(), &ideal)?;
            let escapes = paths.iter().enumerate().any(|(i, p)| {
                if p.len() != nil {
                    return false;
                }
                let mut e = vec![0u32; paths.len()];
                e[i] = 1;
                !q.contains(&e)
            });
            if escapes {
                continue;
            }
            return Ok(Self::assemble(field, quiver, relations, nil, paths, index, q));
        }
        Err(Error::NotFiniteDimensional(format!("paths of length {path_length_bound} escape the relation ideal")))
    }

    fn assemble(
        field: Field,
        quiver: Quiver,
        relations: Vec<Relation>,
        nil_length: usize,
        paths: Vec<Path>,
        index: HashMap<(usize, Vec<usize>), usize>,
        quotient: Quotient,
    ) -> Self {
        let nv = quiver.vertex_count();
        let mut pair_basis = vec![vec![Vec::new(); nv]; nv];
        let mut coord_owner = Vec::with_capacity(quotient.dim());
        for k in 0..quotient.dim() {
            let col = quotient.section.column(k);
            let pi = col.iter().position(|&v| v != 0).expect("section columns are standard vectors");
            let (s, t) = (paths[pi].source, paths[pi].target);
            coord_owner.push((s, t, pair_basis[s][t].len()));
            pair_basis[s][t].push(pi);
        }
        Algebra { field, quiver, relations, nil_length, paths, index, quotient, coord_owner, pair_basis }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn nil_length(&self) -> usize {
        self.nil_length
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Basis paths from `source` to `target`.
    pub fn basis_paths(&self, source: usize, target: usize) -> Vec<&Path> {
        self.pair_basis[source][target].iter().map(|&i| &self.paths[i]).collect()
    }

    pub fn pair_dim(&self, source: usize, target: usize) -> usize {
        self.pair_basis[source][target].len()
    }

    /// Coordinates of a path in the basis of paths from its source to its
    /// target. Paths at or beyond the nilpotency length are zero.
    pub fn reduce(&self, source: usize, arrows: &[usize]) -> Vec<u32> {
        let target = if arrows.is_empty() { source } else { self.quiver.path_target(arrows) };
        let local = self.pair_dim(source, target);
        let mut out = vec![0u32; local];
        if arrows.len() >= self.nil_length {
            return out;
        }
        let pi = self.index[&(source, arrows.to_vec())];
        let mut e = vec![0u32; self.paths.len()];
        e[pi] = 1;
        let global = self.quotient.project(&e);
        for (k, v) in global.into_iter().enumerate() {
            if v != 0 {
                let (s, t, l) = self.coord_owner[k];
                debug_assert_eq!((s, t), (source, target));
                out[l] = v;
            }
        }
        out
    }

    /// Matrix of `p ↦ p·α` from paths `i→source(α)` to paths `i→target(α)`.
    pub fn right_multiplication(&self, i: usize, arrow: usize) -> Matrix {
        let a = &self.quiver.arrows()[arrow];
        let cols: Vec<Vec<u32>> = self
            .basis_paths(i, a.source)
            .iter()
            .map(|p| {
                let mut w = p.arrows.clone();
                w.push(arrow);
                self.reduce(i, &w)
            })
            .collect();
        Matrix::from_columns(self.field, self.pair_dim(i, a.target), &cols)
    }

    /// Matrix of `q ↦ α·q` from paths `target(α)→i` to paths `source(α)→i`.
    pub fn left_multiplication(&self, i: usize, arrow: usize) -> Matrix {
        let a = &self.quiver.arrows()[arrow];
        let cols: Vec<Vec<u32>> = self
            .basis_paths(a.target, i)
            .iter()
            .map(|q| {
                let mut w = vec![arrow];
                w.extend_from_slice(&q.arrows);
                self.reduce(a.source, &w)
            })
            .collect();
        Matrix::from_columns(self.field, self.pair_dim(a.source, i), &cols)
    }

    /// The opposite algebra: arrows reversed, relation words reversed.
    pub fn opposite(&self) -> Result<Algebra> {
        let arrows: Vec<(String, usize, usize)> =
            self.quiver.arrows().iter().map(|a| (a.name.clone(), a.target + 1, a.source + 1)).collect();
        let borrowed: Vec<(&str, usize, usize)> = arrows.iter().map(|(n, s, t)| (n.as_str(), *s, *t)).collect();
        let quiver = Quiver::new(self.vertex_count(), &borrowed)?;
        let relations = self
            .relations
            .iter()
            .map(|r| Relation {
                terms: r.terms.iter().map(|(c, p)| (*c, p.iter().rev().copied().collect())).collect(),
            })
            .collect();
        Algebra::new(self.field, quiver, relations, self.nil_length.max(1))
    }
}

/// Per-(source, target) path bases of the algebra, as arrow-name words; the
/// trivial path at vertex `i` is written `e{i}` (1-based).
pub fn path_basis(alg: &Algebra) -> Vec<Vec<Vec<String>>> {
    let nv = alg.vertex_count();
    (0..nv)
        .map(|s| {
            (0..nv)
                .map(|t| {
                    alg.basis_paths(s, t)
                        .iter()
                        .map(|p| if p.is_empty() { format!("e{}", s + 1) } else { alg.quiver().path_name(&p.arrows) })
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn enumerate_paths(quiver: &Quiver, max_len: usize) -> Result<Vec<Path>> {
    let mut out: Vec<Path> = (0..quiver.vertex_count()).map(|v| Path { source: v, target: v, arrows: vec![] }).collect();
    let mut frontier = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for (ai, a) in quiver.arrows().iter().enumerate() {
                if a.source == p.target {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path { source: p.source, target: a.target, arrows });
                }
            }
        }
        out.extend(next.iter().cloned());
        if out.len() > MAX_PATHS {
            return Err(Error::NotFiniteDimensional(format!("more than {MAX_PATHS} paths")));
        }
        frontier = next;
    }
    Ok(out)
}

/// Spans `u·r·v` for all relations `r`, truncated at length `max_len`.
fn ideal_span(
    field: Field,
    quiver: &Quiver,
    relations: &[Relation],
    paths: &[Path],
    index: &HashMap<(usize, Vec<usize>), usize>,
    max_len: usize,
) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for r in relations {
        let (_, first) = &r.terms[0];
        let (rs, rt) = (quiver.path_source(first), quiver.path_target(first));
        let shortest = r.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0);
        for u in paths.iter().filter(|u| u.target == rs) {
            for v in paths.iter().filter(|v| v.source == rt) {
                if u.len() + v.len() + shortest > max_len {
                    continue;
                }
                let mut vec = vec![0u32; paths.len()];
                for (c, p) in &r.terms {
                    if u.len() + p.len() + v.len() > max_len {
                        continue;
                    }
                    let mut w = u.arrows.clone();
                    w.extend_from_slice(p);
                    w.extend_from_slice(&v.arrows);
                    let i = index[&(u.source, w)];
                    vec[i] = field.add(vec[i], *c);
                }
                out.push(vec);
            }
        }
    }
    out
}
