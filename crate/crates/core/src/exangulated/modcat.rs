//! Additive subcategories of `mod Λ` generated by finitely many
//! indecomposables, with `E = Ext^n` restricted to them.

use crate::error::{Error, Result};
use crate::exactalg::Matrix;
use crate::quiverrep::{
    check_exact_sequence, composition_label, decompose, indecomposable_iso, interval_module, lift_map, pull_matrix,
    push_matrix, resolution, standard_module, Algebra, ExtSpace, HomSpace, ModMorphism, Module, Resolution, StandardKind,
};

use super::exangle::Complex;
use super::presentation::{Mor, Obj, Presentation, PresentationData};

/// How a generator is named in input files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    /// Every indecomposable projective and injective, `P_n, …, P_1` then
    /// `I_n, …, I_1`, skipping isomorphic repeats.
    ProjInj,
    Standard(StandardKind, usize),
    /// Composition series `top/…/socle`.
    Interval(Vec<usize>),
}

impl GeneratorSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "proj+inj" {
            return Ok(GeneratorSpec::ProjInj);
        }
        let bad = || Error::Semantic(format!("unrecognized generator `{t}`"));
        let mut chars = t.chars();
        let head = chars.next().ok_or_else(bad)?;
        let kind = match head {
            'P' => Some(StandardKind::Projective),
            'I' => Some(StandardKind::Injective),
            'S' => Some(StandardKind::Simple),
            _ => None,
        };
        if let Some(kind) = kind {
            let v: usize = chars.as_str().parse().map_err(|_| bad())?;
            return Ok(GeneratorSpec::Standard(kind, v));
        }
        let verts = t.split('/').map(|p| p.trim().parse::<usize>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
        Ok(GeneratorSpec::Interval(verts))
    }
}

/// Expands generator specs into pairwise non-isomorphic indecomposables with
/// labels.
pub fn resolve_generators(alg: &Algebra, specs: &[GeneratorSpec], seed: u64) -> Result<Vec<(String, Module)>> {
    let mut out: Vec<(String, Module)> = Vec::new();
    let nv = alg.vertex_count();
    let label = |m: &Module, fallback: String| composition_label(alg, m).unwrap_or(fallback);
    for spec in specs {
        let mut batch: Vec<(String, Module, bool)> = Vec::new();
        match spec {
            GeneratorSpec::ProjInj => {
                for v in (1..=nv).rev() {
                    let m = standard_module(alg, StandardKind::Projective, v)?;
                    batch.push((label(&m, format!("P{v}")), m, true));
                }
                for v in (1..=nv).rev() {
                    let m = standard_module(alg, StandardKind::Injective, v)?;
                    batch.push((label(&m, format!("I{v}")), m, true));
                }
            }
            GeneratorSpec::Standard(kind, v) => {
                let m = standard_module(alg, *kind, *v)?;
                let tag = match kind {
                    StandardKind::Projective => "P",
                    StandardKind::Injective => "I",
                    StandardKind::Simple => "S",
                };
                batch.push((label(&m, format!("{tag}{v}")), m, false));
            }
            GeneratorSpec::Interval(vs) => {
                let m = interval_module(alg, vs)?;
                let name = vs.iter().map(ToString::to_string).collect::<Vec<_>>().join("/");
                batch.push((name, m, false));
            }
        }
        for (name, m, lenient) in batch {
            if m.is_zero() {
                continue;
            }
            if decompose(alg, &m, seed)?.len() != 1 {
                return Err(Error::Semantic(format!("generator {name} is decomposable")));
            }
            if out.iter().any(|(_, g)| indecomposable_iso(alg, g, &m).is_some()) {
                if lenient {
                    continue;
                }
                return Err(Error::Semantic(format!("generator {name} repeats an earlier generator up to isomorphism")));
            }
            out.push((name, m));
        }
    }
    Ok(out)
}

/// The subcategory `add{G_1, …, G_g}` of `mod Λ` with `E = Ext^n`.
#[derive(Clone, Debug)]
pub struct ModuleCategory {
    alg: Algebra,
    modules: Vec<Module>,
    hom: Vec<Vec<HomSpace>>,
    resolutions: Vec<Resolution>,
    ext: Vec<Vec<ExtSpace>>,
    pres: Presentation,
}

impl ModuleCategory {
    pub fn new(alg: Algebra, n: usize, generators: Vec<(String, Module)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("n must be at least 1".into()));
        }
        let f = alg.field();
        let g = generators.len();
        let (labels, modules): (Vec<String>, Vec<Module>) = generators.into_iter().unzip();
        let hom: Vec<Vec<HomSpace>> = (0..g).map(|i| (0..g).map(|j| HomSpace::new(&alg, &modules[i], &modules[j])).collect()).collect();
        let resolutions = modules.iter().map(|m| resolution(&alg, m, n + 1)).collect::<Result<Vec<_>>>()?;
        let ext = (0..g)
            .map(|c| (0..g).map(|a| ExtSpace::with_resolution(&alg, &resolutions[c], n, &modules[a])).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let hom_dim: Vec<Vec<usize>> = hom.iter().map(|r| r.iter().map(HomSpace::dim).collect()).collect();
        let ext_dim: Vec<Vec<usize>> = ext.iter().map(|r| r.iter().map(ExtSpace::dim).collect()).collect();
        let mut comp = vec![vec![vec![Vec::new(); g]; g]; g];
        for i in 0..g {
            for j in 0..g {
                for k in 0..g {
                    comp[i][j][k] = hom[j][k]
                        .basis
                        .iter()
                        .map(|b| {
                            let cols: Vec<Vec<u32>> = hom[i][j].basis.iter().map(|e| hom[i][k].coordinates(&e.then(b))).collect();
                            Matrix::from_columns(f, hom_dim[i][k], &cols)
                        })
                        .collect();
                }
            }
        }
        let identity = (0..g).map(|i| hom[i][i].coordinates(&ModMorphism::identity(f, &modules[i]))).collect();
        let mut push = vec![vec![vec![Vec::new(); g]; g]; g];
        for c in 0..g {
            for a in 0..g {
                for a2 in 0..g {
                    push[c][a][a2] = hom[a][a2].basis.iter().map(|u| push_matrix(&alg, &ext[c][a], u, &ext[c][a2])).collect::<Result<Vec<_>>>()?;
                }
            }
        }
        let mut pull = vec![vec![vec![Vec::new(); g]; g]; g];
        for c2 in 0..g {
            for c in 0..g {
                for a in 0..g {
                    pull[c2][c][a] = hom[c2][c].basis.iter().map(|v| pull_matrix(&alg, &ext[c][a], v, &ext[c2][a])).collect::<Result<Vec<_>>>()?;
                }
            }
        }
        let pres = Presentation::new(PresentationData { field: f, n, labels, hom_dim, comp, identity, ext_dim, push, pull })?;
        Ok(ModuleCategory { alg, modules, hom, resolutions, ext, pres })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn modules(&self) -> &[Module] {
        &self.modules
    }

    pub fn hom_space(&self, i: usize, j: usize) -> &HomSpace {
        &self.hom[i][j]
    }

    pub fn ext_space(&self, c: usize, a: usize) -> &ExtSpace {
        &self.ext[c][a]
    }

    /// The direct sum module of an object with its inclusions and projections.
    pub fn object_module(&self, x: &Obj) -> (Module, Vec<ModMorphism>, Vec<ModMorphism>) {
        let parts: Vec<Module> = x.iter().map(|&i| self.modules[i].clone()).collect();
        Module::direct_sum(&self.alg, &parts)
    }

    pub fn to_module_morphism(&self, f: &Mor) -> ModMorphism {
        let fl = self.alg.field();
        let (sm, _, sp) = self.object_module(&f.src);
        let (tm, ti, _) = self.object_module(&f.dst);
        let mut acc = ModMorphism::zero(fl, &sm, &tm);
        for (r, &y) in f.dst.iter().enumerate() {
            for (c, &x) in f.src.iter().enumerate() {
                let blk = &f.blocks[r][c];
                if blk.iter().all(|&v| v == 0) {
                    continue;
                }
                let m = self.hom[x][y].morphism(fl, blk);
                acc = acc.add(&sp[c].then(&m).then(&ti[r]));
            }
        }
        acc
    }

    /// Block coordinates of a module morphism between two objects.
    pub fn from_module_morphism(&self, x: &Obj, y: &Obj, phi: &ModMorphism) -> Mor {
        let (_, si, _) = self.object_module(x);
        let (_, _, tp) = self.object_module(y);
        let mut m = self.pres.zero(x, y);
        for (r, &gy) in y.iter().enumerate() {
            for (c, &gx) in x.iter().enumerate() {
                m.blocks[r][c] = self.hom[gx][gy].coordinates(&si[c].then(phi).then(&tp[r]));
            }
        }
        m
    }

    pub fn module_sequence(&self, x: &Complex) -> Vec<ModMorphism> {
        x.diffs.iter().map(|d| self.to_module_morphism(d)).collect()
    }

    /// `Ok(())` when `0 → X_0 → … → X_{n+1} → 0` is exact as modules.
    pub fn check_module_exact(&self, x: &Complex) -> Result<()> {
        check_exact_sequence(&self.module_sequence(x))
    }

    /// Class of a module-exact complex in `E(X_{n+1}, X_0)`, block by block:
    /// the `(i, j)` block lifts the inclusion of the `j`-th summand of
    /// `X_{n+1}` and pushes along the `i`-th projection of `X_0`.
    pub fn yoneda_class(&self, x: &Complex) -> Result<Vec<u32>> {
        let seq = self.module_sequence(x);
        check_exact_sequence(&seq)?;
        let n = x.n();
        let (a, c) = (x.first(), x.last());
        let (_, _, ap) = self.object_module(a);
        let (_, ci, _) = self.object_module(c);
        let mut blocks = vec![vec![Vec::new(); c.len()]; a.len()];
        for (j, &gc) in c.iter().enumerate() {
            let g = lift_map(&self.alg, &seq, &self.resolutions[gc], &ci[j])?;
            for (i, &ga) in a.iter().enumerate() {
                blocks[i][j] = self.ext[gc][ga].class_of(&g[n].then(&ap[i]))?;
            }
        }
        Ok(self.pres.ext_from_blocks(c, a, &|i, j| blocks[i][j].clone()))
    }

    /// Dimension vector of an object.
    pub fn dim_vector(&self, x: &Obj) -> Vec<usize> {
        let mut v = vec![0usize; self.alg.vertex_count()];
        for &i in x {
            for (a, b) in v.iter_mut().zip(self.modules[i].dims()) {
                *a += b;
            }
        }
        v
    }
}
