//! A Krull–Schmidt `F_p`-linear category with an extension bifunctor,
//! presented by finitely many indecomposable generators.
//!
//! Objects are ordered lists of generator indices. A morphism `X → Y` is a
//! block matrix whose `(r, c)` block holds coordinates in
//! `Hom(G_{x_c}, G_{y_r})`. An extension in `E(C, A)` is a block vector whose
//! `(i, j)` block holds coordinates in `E(G_{c_j}, G_{a_i})`.

use crate::error::{Error, Result};
use crate::exactalg::{Field, Matrix};

pub type Obj = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mor {
    pub src: Obj,
    pub dst: Obj,
    /// `blocks[r][c]`: coordinates of the component `src[c] → dst[r]`.
    pub blocks: Vec<Vec<Vec<u32>>>,
}

/// Structure constants of the category.
#[derive(Clone, Debug)]
pub struct Presentation {
    field: Field,
    n: usize,
    labels: Vec<String>,
    hom_dim: Vec<Vec<usize>>,
    /// `comp[i][j][k][b]`: matrix of `b ∘ −` from `Hom(i,j)` to `Hom(i,k)`
    /// for the basis element `b` of `Hom(j,k)`.
    comp: Vec<Vec<Vec<Vec<Matrix>>>>,
    identity: Vec<Vec<u32>>,
    ext_dim: Vec<Vec<usize>>,
    /// `push[c][a][a2][u]`: `E(c,a) → E(c,a2)` for the basis element `u` of
    /// `Hom(a,a2)`.
    push: Vec<Vec<Vec<Vec<Matrix>>>>,
    /// `pull[c2][c][a][v]`: `E(c,a) → E(c2,a)` for the basis element `v` of
    /// `Hom(c2,c)`.
    pull: Vec<Vec<Vec<Vec<Matrix>>>>,
}

/// Raw data for [`Presentation::new`].
#[derive(Clone, Debug)]
pub struct PresentationData {
    pub field: Field,
    pub n: usize,
    pub labels: Vec<String>,
    pub hom_dim: Vec<Vec<usize>>,
    pub comp: Vec<Vec<Vec<Vec<Matrix>>>>,
    pub identity: Vec<Vec<u32>>,
    pub ext_dim: Vec<Vec<usize>>,
    pub push: Vec<Vec<Vec<Vec<Matrix>>>>,
    pub pull: Vec<Vec<Vec<Vec<Matrix>>>>,
}

impl Presentation {
    /// Validates shapes, identities and associativity on basis elements.
    pub fn new(d: PresentationData) -> Result<Self> {
        let g = d.labels.len();
        let bad = |m: &str| Err(Error::InvalidInput(format!("presentation: {m}")));
        if d.n == 0 {
            return bad("n must be at least 1");
        }
        if d.hom_dim.len() != g || d.ext_dim.len() != g || d.identity.len() != g || d.comp.len() != g {
            return bad("table sizes do not match the generator count");
        }
        for i in 0..g {
            for j in 0..g {
                for k in 0..g {
                    let ms = &d.comp[i][j][k];
                    if ms.len() != d.hom_dim[j][k] {
                        return bad("composition table has the wrong number of matrices");
                    }
                    if ms.iter().any(|m| m.rows() != d.hom_dim[i][k] || m.cols() != d.hom_dim[i][j]) {
                        return bad("composition matrix of the wrong shape");
                    }
                }
            }
            if d.identity[i].len() != d.hom_dim[i][i] {
                return bad("identity of the wrong length");
            }
        }
        for c in 0..g {
            for a in 0..g {
                for a2 in 0..g {
                    let ms = &d.push[c][a][a2];
                    if ms.len() != d.hom_dim[a][a2] || ms.iter().any(|m| m.rows() != d.ext_dim[c][a2] || m.cols() != d.ext_dim[c][a]) {
                        return bad("push-forward table has the wrong shape");
                    }
                }
            }
        }
        for c2 in 0..g {
            for c in 0..g {
                for a in 0..g {
                    let ms = &d.pull[c2][c][a];
                    if ms.len() != d.hom_dim[c2][c] || ms.iter().any(|m| m.rows() != d.ext_dim[c2][a] || m.cols() != d.ext_dim[c][a]) {
                        return bad("pull-back table has the wrong shape");
                    }
                }
            }
        }
        let p = Presentation {
            field: d.field,
            n: d.n,
            labels: d.labels,
            hom_dim: d.hom_dim,
            comp: d.comp,
            identity: d.identity,
            ext_dim: d.ext_dim,
            push: d.push,
            pull: d.pull,
        };
        p.validate_laws()?;
        Ok(p)
    }

    fn validate_laws(&self) -> Result<()> {
        let g = self.generator_count();
        for i in 0..g {
            for j in 0..g {
                for b in 0..self.hom_dim[i][j] {
                    let e = unit(self.hom_dim[i][j], b);
                    if self.compose_vec(i, i, j, &self.identity[i], &e) != e || self.compose_vec(i, j, j, &e, &self.identity[j]) != e {
                        return Err(Error::InvalidInput("presentation: identity law fails".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generator_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn object_label(&self, x: &Obj) -> String {
        if x.is_empty() {
            "0".into()
        } else {
            x.iter().map(|&i| self.labels[i].as_str()).collect::<Vec<_>>().join(" + ")
        }
    }

    pub fn generator_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn hom_dim_gen(&self, i: usize, j: usize) -> usize {
        self.hom_dim[i][j]
    }

    pub fn ext_dim_gen(&self, c: usize, a: usize) -> usize {
        self.ext_dim[c][a]
    }

    pub fn identity_gen(&self, i: usize) -> &[u32] {
        &self.identity[i]
    }

    pub fn comp_table(&self, i: usize, j: usize, k: usize) -> &[Matrix] {
        &self.comp[i][j][k]
    }

    pub fn push_table(&self, c: usize, a: usize, a2: usize) -> &[Matrix] {
        &self.push[c][a][a2]
    }

    pub fn pull_table(&self, c2: usize, c: usize, a: usize) -> &[Matrix] {
        &self.pull[c2][c][a]
    }

    pub fn hom_dim(&self, x: &Obj, y: &Obj) -> usize {
        y.iter().map(|&r| x.iter().map(|&c| self.hom_dim[c][r]).sum::<usize>()).sum()
    }

    pub fn ext_dim(&self, c: &Obj, a: &Obj) -> usize {
        a.iter().map(|&i| c.iter().map(|&j| self.ext_dim[j][i]).sum::<usize>()).sum()
    }

    /// `g ∘ f` for `f ∈ Hom(i,j)` and `g ∈ Hom(j,k)`.
    pub fn compose_vec(&self, i: usize, j: usize, k: usize, f: &[u32], g: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.hom_dim[i][k]];
        let fl = self.field;
        for (b, &gb) in g.iter().enumerate() {
            if gb == 0 {
                continue;
            }
            let v = self.comp[i][j][k][b].mul_vec(f);
            for (o, x) in out.iter_mut().zip(v) {
                *o = fl.add(*o, fl.mul(gb, x));
            }
        }
        out
    }

    /// `u_*` on `E(c,a) → E(c,a2)` for `u ∈ Hom(a,a2)`.
    pub fn push_gen(&self, c: usize, a: usize, a2: usize, u: &[u32]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.ext_dim[c][a2], self.ext_dim[c][a]);
        for (b, &ub) in u.iter().enumerate() {
            m.add_scaled(&self.push[c][a][a2][b], ub);
        }
        m
    }

    /// `v^*` on `E(c,a) → E(c2,a)` for `v ∈ Hom(c2,c)`.
    pub fn pull_gen(&self, c2: usize, c: usize, a: usize, v: &[u32]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.ext_dim[c2][a], self.ext_dim[c][a]);
        for (b, &vb) in v.iter().enumerate() {
            m.add_scaled(&self.pull[c2][c][a][b], vb);
        }
        m
    }

    // ---- morphisms between objects ----

    pub fn zero(&self, x: &Obj, y: &Obj) -> Mor {
        Mor {
            src: x.clone(),
            dst: y.clone(),
            blocks: y.iter().map(|&r| x.iter().map(|&c| vec![0u32; self.hom_dim[c][r]]).collect()).collect(),
        }
    }

    pub fn identity(&self, x: &Obj) -> Mor {
        let mut m = self.zero(x, x);
        for (k, &i) in x.iter().enumerate() {
            m.blocks[k][k] = self.identity[i].clone();
        }
        m
    }

    /// The morphism `G_i → G_j` with the given coordinates.
    pub fn gen_mor(&self, i: usize, j: usize, coords: &[u32]) -> Mor {
        Mor { src: vec![i], dst: vec![j], blocks: vec![vec![coords.to_vec()]] }
    }

    pub fn compose(&self, f: &Mor, g: &Mor) -> Mor {
        assert_eq!(f.dst, g.src, "composition of incompatible morphisms");
        let fl = self.field;
        let mut out = self.zero(&f.src, &g.dst);
        for (t, &k) in g.dst.iter().enumerate() {
            for (s, &i) in f.src.iter().enumerate() {
                let acc = &mut out.blocks[t][s];
                for (r, &j) in f.dst.iter().enumerate() {
                    let v = self.compose_vec(i, j, k, &f.blocks[r][s], &g.blocks[t][r]);
                    for (a, x) in acc.iter_mut().zip(v) {
                        *a = fl.add(*a, x);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, f: &Mor, g: &Mor) -> Mor {
        self.combine(f, g, |a, b| self.field.add(a, b))
    }

    pub fn sub(&self, f: &Mor, g: &Mor) -> Mor {
        self.combine(f, g, |a, b| self.field.sub(a, b))
    }

    fn combine(&self, f: &Mor, g: &Mor, op: impl Fn(u32, u32) -> u32) -> Mor {
        assert_eq!((&f.src, &f.dst), (&g.src, &g.dst), "sum of morphisms with different ends");
        let blocks = f
            .blocks
            .iter()
            .zip(&g.blocks)
            .map(|(fr, gr)| fr.iter().zip(gr).map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| op(x, y)).collect()).collect())
            .collect();
        Mor { src: f.src.clone(), dst: f.dst.clone(), blocks }
    }

    pub fn scale(&self, f: &Mor, s: u32) -> Mor {
        let fl = self.field;
        Mor {
            src: f.src.clone(),
            dst: f.dst.clone(),
            blocks: f.blocks.iter().map(|row| row.iter().map(|b| b.iter().map(|&x| fl.mul(x, s)).collect()).collect()).collect(),
        }
    }

    pub fn neg(&self, f: &Mor) -> Mor {
        self.scale(f, self.field.p() - 1)
    }

    pub fn flat(&self, f: &Mor) -> Vec<u32> {
        f.blocks.iter().flat_map(|row| row.iter().flat_map(|b| b.iter().copied())).collect()
    }

    pub fn from_flat(&self, x: &Obj, y: &Obj, v: &[u32]) -> Mor {
        let mut m = self.zero(x, y);
        let mut off = 0;
        for row in m.blocks.iter_mut() {
            for b in row.iter_mut() {
                let l = b.len();
                b.copy_from_slice(&v[off..off + l]);
                off += l;
            }
        }
        debug_assert_eq!(off, v.len());
        m
    }

    pub fn is_zero(&self, f: &Mor) -> bool {
        f.blocks.iter().all(|row| row.iter().all(|b| b.iter().all(|&x| x == 0)))
    }

    /// Matrix of `g ∘ −: Hom(T, Y) → Hom(T, Z)` for `g: Y → Z`.
    pub fn post_matrix(&self, g: &Mor, t: &Obj) -> Matrix {
        let din = self.hom_dim(t, &g.src);
        let cols: Vec<Vec<u32>> = (0..din).map(|k| self.flat(&self.compose(&self.from_flat(t, &g.src, &unit(din, k)), g))).collect();
        Matrix::from_columns(self.field, self.hom_dim(t, &g.dst), &cols)
    }

    /// Matrix of `− ∘ f: Hom(Y, T) → Hom(X, T)` for `f: X → Y`.
    pub fn pre_matrix(&self, f: &Mor, t: &Obj) -> Matrix {
        let din = self.hom_dim(&f.dst, t);
        let cols: Vec<Vec<u32>> = (0..din).map(|k| self.flat(&self.compose(f, &self.from_flat(&f.dst, t, &unit(din, k))))).collect();
        Matrix::from_columns(self.field, self.hom_dim(&f.src, t), &cols)
    }

    /// Block offsets of `E(C, A)`, indexed `[i][j]` for `a_i`, `c_j`.
    fn ext_offsets(&self, c: &Obj, a: &Obj) -> Vec<Vec<usize>> {
        let mut off = 0;
        a.iter()
            .map(|&i| {
                c.iter()
                    .map(|&j| {
                        let o = off;
                        off += self.ext_dim[j][i];
                        o
                    })
                    .collect()
            })
            .collect()
    }

    /// `u_*δ` for `u: A → A'` and `δ ∈ E(C, A)`.
    pub fn push_ext(&self, u: &Mor, c: &Obj, delta: &[u32]) -> Vec<u32> {
        let a = &u.src;
        let a2 = &u.dst;
        let src_off = self.ext_offsets(c, a);
        let dst_off = self.ext_offsets(c, a2);
        let mut out = vec![0u32; self.ext_dim(c, a2)];
        let fl = self.field;
        for (i2, &ai2) in a2.iter().enumerate() {
            for (i, &ai) in a.iter().enumerate() {
                let ublk = &u.blocks[i2][i];
                if ublk.iter().all(|&x| x == 0) {
                    continue;
                }
                for (j, &cj) in c.iter().enumerate() {
                    let (d1, d2) = (self.ext_dim[cj][ai], self.ext_dim[cj][ai2]);
                    if d1 == 0 || d2 == 0 {
                        continue;
                    }
                    let blk = &delta[src_off[i][j]..src_off[i][j] + d1];
                    let v = self.push_gen(cj, ai, ai2, ublk).mul_vec(blk);
                    for (k, x) in v.into_iter().enumerate() {
                        let o = &mut out[dst_off[i2][j] + k];
                        *o = fl.add(*o, x);
                    }
                }
            }
        }
        out
    }

    /// `v^*δ` for `v: C' → C` and `δ ∈ E(C, A)`.
    pub fn pull_ext(&self, v: &Mor, a: &Obj, delta: &[u32]) -> Vec<u32> {
        let c = &v.dst;
        let c2 = &v.src;
        let src_off = self.ext_offsets(c, a);
        let dst_off = self.ext_offsets(c2, a);
        let mut out = vec![0u32; self.ext_dim(c2, a)];
        let fl = self.field;
        for (i, &ai) in a.iter().enumerate() {
            for (j2, &cj2) in c2.iter().enumerate() {
                for (j, &cj) in c.iter().enumerate() {
                    let vblk = &v.blocks[j][j2];
                    let (d1, d2) = (self.ext_dim[cj][ai], self.ext_dim[cj2][ai]);
                    if d1 == 0 || d2 == 0 || vblk.iter().all(|&x| x == 0) {
                        continue;
                    }
                    let blk = &delta[src_off[i][j]..src_off[i][j] + d1];
                    let w = self.pull_gen(cj2, cj, ai, vblk).mul_vec(blk);
                    for (k, x) in w.into_iter().enumerate() {
                        let o = &mut out[dst_off[i][j2] + k];
                        *o = fl.add(*o, x);
                    }
                }
            }
        }
        out
    }

    /// The `(i, j)` block of `δ ∈ E(C, A)`.
    pub fn ext_block<'a>(&self, c: &Obj, a: &Obj, delta: &'a [u32], i: usize, j: usize) -> &'a [u32] {
        let off = self.ext_offsets(c, a);
        &delta[off[i][j]..off[i][j] + self.ext_dim[c[j]][a[i]]]
    }

    /// Assembles `δ ∈ E(C, A)` from blocks.
    pub fn ext_from_blocks(&self, c: &Obj, a: &Obj, blocks: &dyn Fn(usize, usize) -> Vec<u32>) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.ext_dim(c, a));
        for (i, &ai) in a.iter().enumerate() {
            for (j, &cj) in c.iter().enumerate() {
                let b = blocks(i, j);
                debug_assert_eq!(b.len(), self.ext_dim[cj][ai]);
                out.extend(b);
            }
        }
        out
    }

    /// Matrix of `δ ↦ u_*δ` on `E(C, A) → E(C, A')`.
    pub fn push_matrix(&self, u: &Mor, c: &Obj) -> Matrix {
        let d = self.ext_dim(c, &u.src);
        let cols: Vec<Vec<u32>> = (0..d).map(|k| self.push_ext(u, c, &unit(d, k))).collect();
        Matrix::from_columns(self.field, self.ext_dim(c, &u.dst), &cols)
    }

    /// Matrix of `δ ↦ v^*δ` on `E(C, A) → E(C', A)`.
    pub fn pull_matrix(&self, v: &Mor, a: &Obj) -> Matrix {
        let d = self.ext_dim(&v.dst, a);
        let cols: Vec<Vec<u32>> = (0..d).map(|k| self.pull_ext(v, a, &unit(d, k))).collect();
        Matrix::from_columns(self.field, self.ext_dim(&v.src, a), &cols)
    }

    /// `δ♯` at `T`: `Hom(T, C) → E(T, A)`, `f ↦ f^*δ`.
    pub fn delta_contra(&self, c: &Obj, a: &Obj, delta: &[u32], t: &Obj) -> Matrix {
        let din = self.hom_dim(t, c);
        let cols: Vec<Vec<u32>> = (0..din).map(|k| self.pull_ext(&self.from_flat(t, c, &unit(din, k)), a, delta)).collect();
        Matrix::from_columns(self.field, self.ext_dim(t, a), &cols)
    }

    /// `δ♯` at `T`: `Hom(A, T) → E(C, T)`, `g ↦ g_*δ`.
    pub fn delta_co(&self, c: &Obj, a: &Obj, delta: &[u32], t: &Obj) -> Matrix {
        let din = self.hom_dim(a, t);
        let cols: Vec<Vec<u32>> = (0..din).map(|k| self.push_ext(&self.from_flat(a, t, &unit(din, k)), c, delta)).collect();
        Matrix::from_columns(self.field, self.ext_dim(c, t), &cols)
    }

    /// Two-sided inverse, if `f` is an isomorphism.
    pub fn inverse(&self, f: &Mor) -> Option<Mor> {
        let (x, y) = (&f.src, &f.dst);
        // g ∘ f = id_X is linear in g.
        let pre = self.pre_matrix(f, x);
        let g = pre.solve_vec(&self.flat(&self.identity(x)))?;
        let g = self.from_flat(y, x, &g);
        let back = self.compose(&g, f);
        (back == self.identity(y)).then_some(g)
    }

    pub fn is_iso(&self, f: &Mor) -> bool {
        self.inverse(f).is_some()
    }

    /// Every element of `Hom(X, Y)`, when there are at most `limit`.
    pub fn all_morphisms(&self, x: &Obj, y: &Obj, limit: usize) -> Option<Vec<Mor>> {
        let d = self.hom_dim(x, y);
        self.field.all_vectors(d, limit).map(|vs| vs.into_iter().map(|v| self.from_flat(x, y, &v)).collect())
    }

    /// Basis morphisms of `Hom(G_i, G_j)`.
    pub fn hom_basis_gen(&self, i: usize, j: usize) -> Vec<Mor> {
        let d = self.hom_dim[i][j];
        (0..d).map(|k| self.gen_mor(i, j, &unit(d, k))).collect()
    }

    /// Block-diagonal sum `f ⊕ g`.
    pub fn direct_sum(&self, f: &Mor, g: &Mor) -> Mor {
        let src: Obj = f.src.iter().chain(&g.src).copied().collect();
        let dst: Obj = f.dst.iter().chain(&g.dst).copied().collect();
        let mut m = self.zero(&src, &dst);
        for (r, row) in f.blocks.iter().enumerate() {
            for (c, b) in row.iter().enumerate() {
                m.blocks[r][c] = b.clone();
            }
        }
        for (r, row) in g.blocks.iter().enumerate() {
            for (c, b) in row.iter().enumerate() {
                m.blocks[f.dst.len() + r][f.src.len() + c] = b.clone();
            }
        }
        m
    }

    /// Assembles a morphism `⊕ X_c → ⊕ Y_r` from a grid of morphisms.
    pub fn from_grid(&self, srcs: &[Obj], dsts: &[Obj], grid: &[Vec<Mor>]) -> Mor {
        let src: Obj = srcs.iter().flatten().copied().collect();
        let dst: Obj = dsts.iter().flatten().copied().collect();
        let mut m = self.zero(&src, &dst);
        let mut r0 = 0;
        for (r, y) in dsts.iter().enumerate() {
            let mut c0 = 0;
            for (c, x) in srcs.iter().enumerate() {
                let part = &grid[r][c];
                debug_assert_eq!((&part.src, &part.dst), (x, y));
                for (rr, row) in part.blocks.iter().enumerate() {
                    for (cc, b) in row.iter().enumerate() {
                        m.blocks[r0 + rr][c0 + cc] = b.clone();
                    }
                }
                c0 += x.len();
            }
            r0 += y.len();
        }
        m
    }

    /// Permutation isomorphism `X → Y` when `Y` is a reordering of `X`.
    pub fn permutation(&self, x: &Obj, y: &Obj) -> Option<Mor> {
        let mut used = vec![false; x.len()];
        let mut m = self.zero(x, y);
        for (r, &gy) in y.iter().enumerate() {
            let c = (0..x.len()).find(|&c| !used[c] && x[c] == gy)?;
            used[c] = true;
            m.blocks[r][c] = self.identity[gy].clone();
        }
        used.iter().all(|&u| u).then_some(m)
    }
}

pub fn unit(d: usize, k: usize) -> Vec<u32> {
    let mut v = vec![0u32; d];
    v[k] = 1;
    v
}

/// Sorted multiset form of an object.
pub fn normalize(x: &Obj) -> Obj {
    let mut v = x.clone();
    v.sort_unstable();
    v
}

/// `x` minus `y` as multisets, if `y ⊆ x`.
pub fn multiset_difference(x: &Obj, y: &Obj) -> Option<Obj> {
    let mut rest = normalize(x);
    for g in y {
        let pos = rest.iter().position(|h| h == g)?;
        rest.remove(pos);
    }
    Some(rest)
}
