//! The ideal quotient `C̄ = C/[N]` and, once `K` is known, `Ē = E/K`.

use crate::error::{Error, Result};
use crate::exactalg::{quotient_with_section, Matrix, Quotient};
use crate::exangulated::{Complex, Mor, Obj, Presentation, PresentationData};

/// `C̄` with its projection `p` and a section of every quotient Hom space.
/// The extension part is `Ē` after [`IdealQuotient::with_extensions`], and
/// zero before.
#[derive(Clone, Debug)]
pub struct IdealQuotient {
    base: Presentation,
    nf: Vec<bool>,
    hom: Vec<Vec<Quotient>>,
    ext: Option<Vec<Vec<Quotient>>>,
    cat: Presentation,
}

impl IdealQuotient {
    /// Quotient by the morphisms factoring through the generators in `nf`.
    pub fn new(base: &Presentation, nf: &[usize]) -> Result<Self> {
        let g = base.generator_count();
        let fl = base.field();
        let mut mask = vec![false; g];
        for &i in nf {
            if i >= g {
                return Err(Error::InvalidInput(format!("generator index {i} out of range")));
            }
            mask[i] = true;
        }
        let mut hom = Vec::with_capacity(g);
        for i in 0..g {
            let mut row = Vec::with_capacity(g);
            for j in 0..g {
                let mut span = Vec::new();
                for (m, _) in mask.iter().enumerate().filter(|(_, &b)| b) {
                    for f in 0..base.hom_dim_gen(i, m) {
                        let fv = unit(base.hom_dim_gen(i, m), f);
                        for h in 0..base.hom_dim_gen(m, j) {
                            span.push(base.compose_vec(i, m, j, &fv, &unit(base.hom_dim_gen(m, j), h)));
                        }
                    }
                }
                row.push(quotient_with_section(fl, base.hom_dim_gen(i, j), &span)?);
            }
            hom.push(row);
        }
        let cat = build(base, &hom, None)?;
        Ok(IdealQuotient { base: base.clone(), nf: mask, hom, ext: None, cat })
    }

    /// Replaces the extension part by `E/K` given a basis of `K(G_c, G_a)`
    /// for every generator pair. Fails when push-forwards or pull-backs do
    /// not descend.
    pub fn with_extensions(&self, k: &[Vec<Vec<Vec<u32>>>]) -> Result<Self> {
        let g = self.base.generator_count();
        let fl = self.base.field();
        let mut ext = Vec::with_capacity(g);
        for c in 0..g {
            let mut row = Vec::with_capacity(g);
            for a in 0..g {
                row.push(quotient_with_section(fl, self.base.ext_dim_gen(c, a), &k[c][a])?);
            }
            ext.push(row);
        }
        let cat = build(&self.base, &self.hom, Some(&ext))?;
        let q = IdealQuotient { base: self.base.clone(), nf: self.nf.clone(), hom: self.hom.clone(), ext: Some(ext), cat };
        q.check_descent()?;
        Ok(q)
    }

    /// `ū_* ∘ ℘ = ℘ ∘ u_*` and `v̄^* ∘ ℘ = ℘ ∘ v^*` on every basis morphism.
    fn check_descent(&self) -> Result<()> {
        let ext = self.ext.as_ref().expect("extensions present");
        let g = self.base.generator_count();
        for c in 0..g {
            for a in 0..g {
                for a2 in 0..g {
                    for u in 0..self.base.hom_dim_gen(a, a2) {
                        let uv = unit(self.base.hom_dim_gen(a, a2), u);
                        let lhs = ext[c][a2].projection.mul(&self.base.push_gen(c, a, a2, &uv));
                        let rhs = self.cat.push_gen(c, a, a2, &self.hom[a][a2].project(&uv)).mul(&ext[c][a].projection);
                        if lhs != rhs {
                            return Err(Error::Internal(format!(
                                "push-forward along {} → {} does not descend to the quotient",
                                self.base.label(a),
                                self.base.label(a2)
                            )));
                        }
                    }
                }
            }
        }
        for c2 in 0..g {
            for c in 0..g {
                for a in 0..g {
                    for v in 0..self.base.hom_dim_gen(c2, c) {
                        let vv = unit(self.base.hom_dim_gen(c2, c), v);
                        let lhs = ext[c2][a].projection.mul(&self.base.pull_gen(c2, c, a, &vv));
                        let rhs = self.cat.pull_gen(c2, c, a, &self.hom[c2][c].project(&vv)).mul(&ext[c][a].projection);
                        if lhs != rhs {
                            return Err(Error::Internal(format!(
                                "pull-back along {} → {} does not descend to the quotient",
                                self.base.label(c2),
                                self.base.label(c)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &Presentation {
        &self.base
    }

    /// `C̄` with `Ē` (or zero extensions before `K` is known).
    pub fn category(&self) -> &Presentation {
        &self.cat
    }

    pub fn has_extensions(&self) -> bool {
        self.ext.is_some()
    }

    pub fn is_nf(&self, i: usize) -> bool {
        self.nf[i]
    }

    pub fn nf_generators(&self) -> Vec<usize> {
        (0..self.nf.len()).filter(|&i| self.nf[i]).collect()
    }

    /// `dim [N](G_i, G_j)`.
    pub fn ideal_dim(&self, i: usize, j: usize) -> usize {
        self.hom[i][j].subspace.rows()
    }

    pub fn hom_quotient(&self, i: usize, j: usize) -> &Quotient {
        &self.hom[i][j]
    }

    pub fn ext_quotient(&self, c: usize, a: usize) -> Option<&Quotient> {
        self.ext.as_ref().map(|e| &e[c][a])
    }

    /// The functor `p` on a morphism.
    pub fn project(&self, f: &Mor) -> Mor {
        let blocks = f
            .dst
            .iter()
            .zip(&f.blocks)
            .map(|(&r, row)| f.src.iter().zip(row).map(|(&c, b)| self.hom[c][r].project(b)).collect())
            .collect();
        Mor { src: f.src.clone(), dst: f.dst.clone(), blocks }
    }

    /// A preimage under `p`, block by block through the chosen sections.
    pub fn lift(&self, f: &Mor) -> Mor {
        let blocks = f
            .dst
            .iter()
            .zip(&f.blocks)
            .map(|(&r, row)| f.src.iter().zip(row).map(|(&c, b)| self.hom[c][r].lift(b)).collect())
            .collect();
        Mor { src: f.src.clone(), dst: f.dst.clone(), blocks }
    }

    pub fn project_complex(&self, x: &Complex) -> Complex {
        Complex { terms: x.terms.clone(), diffs: x.diffs.iter().map(|d| self.project(d)).collect() }
    }

    /// `℘: E(C, A) → Ē(C, A)`.
    pub fn project_ext(&self, c: &Obj, a: &Obj, delta: &[u32]) -> Vec<u32> {
        let ext = self.ext.as_ref().expect("extensions present");
        self.cat.ext_from_blocks(c, a, &|i, j| ext[c[j]][a[i]].project(self.base.ext_block(c, a, delta, i, j)))
    }

    /// A preimage under `℘`.
    pub fn lift_ext(&self, c: &Obj, a: &Obj, delta: &[u32]) -> Vec<u32> {
        let ext = self.ext.as_ref().expect("extensions present");
        self.base.ext_from_blocks(c, a, &|i, j| ext[c[j]][a[i]].lift(self.cat.ext_block(c, a, delta, i, j)))
    }

    /// `X` with the summands in `N` removed; isomorphic to `X` in `C̄`.
    pub fn strip(&self, x: &Obj) -> Obj {
        x.iter().copied().filter(|&i| !self.nf[i]).collect()
    }

    /// Sorted form of [`strip`](Self::strip).
    pub fn canonical(&self, x: &Obj) -> Obj {
        let mut v = self.strip(x);
        v.sort_unstable();
        v
    }

    /// The isomorphism `X → canonical(X)` in `C̄`.
    pub fn to_canonical(&self, x: &Obj) -> Mor {
        let y = self.canonical(x);
        let mut m = self.cat.zero(x, &y);
        let mut used = vec![false; x.len()];
        for (r, &gy) in y.iter().enumerate() {
            let c = (0..x.len()).find(|&c| !used[c] && x[c] == gy).expect("canonical form is a sub-multiset");
            used[c] = true;
            m.blocks[r][c] = self.cat.identity_gen(gy).to_vec();
        }
        m
    }

    /// The isomorphism `canonical(X) → X` in `C̄`.
    pub fn from_canonical(&self, x: &Obj) -> Mor {
        let y = self.canonical(x);
        let mut m = self.cat.zero(&y, x);
        let mut used = vec![false; x.len()];
        for (c, &gy) in y.iter().enumerate() {
            let r = (0..x.len()).find(|&r| !used[r] && x[r] == gy).expect("canonical form is a sub-multiset");
            used[r] = true;
            m.blocks[r][c] = self.cat.identity_gen(gy).to_vec();
        }
        m
    }

    /// `f` transported to canonical ends.
    pub fn canonical_mor(&self, f: &Mor) -> Mor {
        let p = &self.cat;
        p.compose(&p.compose(&self.from_canonical(&f.src), f), &self.to_canonical(&f.dst))
    }
}

fn unit(d: usize, k: usize) -> Vec<u32> {
    crate::exangulated::presentation::unit(d, k)
}

/// Structure constants of `C̄` (and `Ē` when given).
fn build(base: &Presentation, hom: &[Vec<Quotient>], ext: Option<&Vec<Vec<Quotient>>>) -> Result<Presentation> {
    let g = base.generator_count();
    let fl = base.field();
    let hom_dim: Vec<Vec<usize>> = hom.iter().map(|r| r.iter().map(Quotient::dim).collect()).collect();
    let mut comp = vec![vec![vec![Vec::new(); g]; g]; g];
    for i in 0..g {
        for j in 0..g {
            for k in 0..g {
                comp[i][j][k] = (0..hom_dim[j][k])
                    .map(|b| {
                        let bl = hom[j][k].lift(&unit(hom_dim[j][k], b));
                        let cols: Vec<Vec<u32>> =
                            (0..hom_dim[i][j]).map(|e| hom[i][k].project(&base.compose_vec(i, j, k, &hom[i][j].lift(&unit(hom_dim[i][j], e)), &bl))).collect();
                        Matrix::from_columns(fl, hom_dim[i][k], &cols)
                    })
                    .collect();
            }
        }
    }
    let identity = (0..g).map(|i| hom[i][i].project(base.identity_gen(i))).collect();
    let ext_dim: Vec<Vec<usize>> = match ext {
        Some(e) => e.iter().map(|r| r.iter().map(Quotient::dim).collect()).collect(),
        None => vec![vec![0; g]; g],
    };
    let mut push = vec![vec![vec![Vec::new(); g]; g]; g];
    let mut pull = vec![vec![vec![Vec::new(); g]; g]; g];
    for c in 0..g {
        for a in 0..g {
            for x in 0..g {
                push[c][a][x] = (0..hom_dim[a][x])
                    .map(|u| match ext {
                        Some(e) => e[c][x].projection.mul(&base.push_gen(c, a, x, &hom[a][x].lift(&unit(hom_dim[a][x], u)))).mul(&e[c][a].section),
                        None => Matrix::zeros(fl, 0, 0),
                    })
                    .collect();
            }
        }
    }
    for c2 in 0..g {
        for c in 0..g {
            for a in 0..g {
                pull[c2][c][a] = (0..hom_dim[c2][c])
                    .map(|v| match ext {
                        Some(e) => e[c2][a].projection.mul(&base.pull_gen(c2, c, a, &hom[c2][c].lift(&unit(hom_dim[c2][c], v)))).mul(&e[c][a].section),
                        None => Matrix::zeros(fl, 0, 0),
                    })
                    .collect();
            }
        }
    }
    Presentation::new(PresentationData { field: fl, n: base.n(), labels: base.labels().to_vec(), hom_dim, comp, identity, ext_dim, push, pull })
}
