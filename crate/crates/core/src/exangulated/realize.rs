//! Realizations `s(δ)`: the cluster-tilting search backend, the declared
//! table backend, and inflation/deflation witnesses shared by all backends.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::exactalg::Matrix;

use super::exangle::{homotopy_equivalent, is_attached, reindex_ends, split_complex, sum_complex, Complex, NExangle};
use super::modcat::ModuleCategory;
use super::presentation::{multiset_difference, Mor, Obj, Presentation};

/// Cap on enumerated elements of a single Hom or Ext space.
pub const ENUM_LIMIT: usize = 4096;
/// Cap on chain-map lifts tried in a homotopy-equivalence test.
pub const HOMOTOPY_LIMIT: usize = 256;

/// A realization of `E` on a presented category.
pub trait Realizer: Sync {
    fn pres(&self) -> &Presentation;

    /// A representative of `s(δ)` for `δ ∈ E(G_c, G_a)`, `δ ≠ 0`.
    fn realize_gen(&self, c: usize, a: usize, delta: &[u32]) -> Result<Complex>;

    /// Representatives for extensions between sums that do not split into
    /// generator blocks. The default gives up.
    fn realize_general(&self, a: &Obj, c: &Obj, _delta: &[u32]) -> Result<Complex> {
        let p = self.pres();
        Err(Error::NoRealization(format!("{} → {} is not block-monomial", p.object_label(a), p.object_label(c))))
    }

    /// `s(δ) = [X]`.
    fn realizes(&self, x: &Complex, delta: &[u32]) -> Result<bool> {
        let r = realize(self, x.first(), x.last(), delta)?;
        Ok(homotopy_equivalent(self.pres(), x, &r, HOMOTOPY_LIMIT))
    }
}

/// A representative of `s(δ)` for `δ ∈ E(C, A)`: split for `δ = 0`, a
/// direct sum when `δ` has at most one nonzero block per row and column,
/// and the backend's general search otherwise.
pub fn realize<R: Realizer + ?Sized>(r: &R, a: &Obj, c: &Obj, delta: &[u32]) -> Result<Complex> {
    let p = r.pres();
    let n = p.n();
    if delta.len() != p.ext_dim(c, a) {
        return Err(Error::DimensionMismatch(format!("extension of length {} for E({}, {})", delta.len(), p.object_label(c), p.object_label(a))));
    }
    if delta.iter().all(|&v| v == 0) {
        return Ok(split_complex(p, n, a, c));
    }
    let Some((col_of_row, row_used)) = block_pattern(p, a, c, delta) else {
        if let Some((u, w, rho)) = monomialize(p, a, c, delta) {
            let x = reindex_ends(p, &realize(r, a, c, &rho)?, &u, &w);
            if is_attached(p, &x, delta) {
                return Ok(x);
            }
        }
        return r.realize_general(a, c, delta);
    };
    if a.len() == 1 && c.len() == 1 {
        return r.realize_gen(c[0], a[0], delta);
    }
    let mut acc: Option<Complex> = None;
    // Column of `C` behind each summand of the assembled last term.
    let mut order = Vec::with_capacity(c.len());
    let mut push = |x: Complex| {
        acc = Some(match acc.take() {
            None => x,
            Some(y) => sum_complex(p, &y, &x),
        })
    };
    for (i, slot) in col_of_row.iter().enumerate() {
        match slot {
            Some(j) => {
                order.push(*j);
                push(r.realize_gen(c[*j], a[i], p.ext_block(c, a, delta, i, *j))?)
            }
            None => push(split_complex(p, n, &vec![a[i]], &Vec::new())),
        }
    }
    for (j, used) in row_used.iter().enumerate() {
        if !used {
            order.push(j);
            push(split_complex(p, n, &Vec::new(), &vec![c[j]]));
        }
    }
    let x = acc.expect("at least one nonzero block");
    let mut perm = p.zero(x.last(), c);
    for (k, &j) in order.iter().enumerate() {
        perm.blocks[j][k] = p.identity_gen(c[j]).to_vec();
    }
    Ok(reindex_ends(p, &x, &p.identity(a), &perm))
}

/// For a block-monomial `δ ∈ E(C, A)`: the nonzero column of each row and
/// which columns are used. `None` when some row or column has two nonzero
/// blocks.
pub fn block_pattern(p: &Presentation, a: &Obj, c: &Obj, delta: &[u32]) -> Option<(Vec<Option<usize>>, Vec<bool>)> {
    let mut col_of_row = vec![None; a.len()];
    let mut col_used = vec![false; c.len()];
    for (i, slot) in col_of_row.iter_mut().enumerate() {
        for (j, used) in col_used.iter_mut().enumerate() {
            if p.ext_block(c, a, delta, i, j).iter().any(|&v| v != 0) {
                if slot.is_some() || *used {
                    return None;
                }
                *slot = Some(j);
                *used = true;
            }
        }
    }
    Some((col_of_row, col_used))
}

/// Automorphisms `u` of `A` and `w` of `C` with `ρ = w^* u_* δ`
/// block-monomial, found by greedy elimination with elementary
/// automorphisms `1 + λh`, `h` a basis morphism between distinct summands.
/// A realization of `ρ` with ends reindexed by `u` and `w` realizes `δ`.
pub fn monomialize(p: &Presentation, a: &Obj, c: &Obj, delta: &[u32]) -> Option<(Mor, Mor, Vec<u32>)> {
    let (mut u, mut w, mut rho) = (p.identity(a), p.identity(c), delta.to_vec());
    let a_moves = elementary_automorphisms(p, a);
    let c_moves = elementary_automorphisms(p, c);
    loop {
        if block_pattern(p, a, c, &rho).is_some() {
            return Some((u, w, rho));
        }
        let score = nonzero_blocks(p, a, c, &rho);
        if let Some((e, next)) = a_moves.iter().map(|e| (e, p.push_ext(e, c, &rho))).find(|(_, v)| nonzero_blocks(p, a, c, v) < score) {
            u = p.compose(&u, e);
            rho = next;
        } else if let Some((e, next)) = c_moves.iter().map(|e| (e, p.pull_ext(e, a, &rho))).find(|(_, v)| nonzero_blocks(p, a, c, v) < score) {
            w = p.compose(e, &w);
            rho = next;
        } else {
            return None;
        }
    }
}

fn nonzero_blocks(p: &Presentation, a: &Obj, c: &Obj, delta: &[u32]) -> usize {
    (0..a.len()).flat_map(|i| (0..c.len()).map(move |j| (i, j))).filter(|&(i, j)| p.ext_block(c, a, delta, i, j).iter().any(|&v| v != 0)).count()
}

fn elementary_automorphisms(p: &Presentation, x: &Obj) -> Vec<Mor> {
    let fl = p.field();
    let mut out = Vec::new();
    for i in 0..x.len() {
        for j in (0..x.len()).filter(|&j| j != i) {
            for h in p.hom_basis_gen(x[i], x[j]) {
                for lambda in 1..fl.p() {
                    let mut e = p.identity(x);
                    e.blocks[j][i] = h.blocks[0][0].iter().map(|&v| fl.mul(v, lambda)).collect();
                    out.push(e);
                }
            }
        }
    }
    out
}

/// Rescales a realization of `δ` into one of `λδ` by replacing `d_0` with
/// `λ^{-1} d_0`.
pub fn rescale(p: &Presentation, x: &Complex, lambda: u32) -> Complex {
    let mut y = x.clone();
    y.diffs[0] = p.scale(&x.diffs[0], p.field().inv(lambda));
    y
}

/// `λ` with `target = λ · base`, if any.
pub fn scalar_multiple(p: &Presentation, base: &[u32], target: &[u32]) -> Option<u32> {
    let k = base.iter().position(|&v| v != 0)?;
    let fl = p.field();
    let lambda = fl.mul(target[k], fl.inv(base[k]));
    (lambda != 0 && base.iter().zip(target).all(|(&b, &t)| fl.mul(b, lambda) == t)).then_some(lambda)
}

// ---------------------------------------------------------------------------
// Cluster-tilting backend

/// Generator of `C`, generator of `A`, coordinates of `δ`.
type CacheKey = (usize, usize, Vec<u32>);

/// Distinguished n-exangles are module-exact complexes with terms in the
/// subcategory whose Yoneda class is `δ`.
pub struct ClusterTilting {
    cat: ModuleCategory,
    multiplicity_bound: usize,
    budget: usize,
    cache: Mutex<HashMap<CacheKey, Complex>>,
}

/// Multiplicity vectors `0..=bound` per generator, as objects.
pub fn universe(g: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..g {
        let mut next = Vec::with_capacity(out.len() * (bound + 1));
        for v in &out {
            for m in 0..=bound {
                let mut w = v.clone();
                w.push(m);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

pub fn object_of(mults: &[usize]) -> Obj {
    mults.iter().enumerate().flat_map(|(i, &m)| std::iter::repeat_n(i, m)).collect()
}

impl ClusterTilting {
    pub const DEFAULT_BUDGET: usize = 200_000;

    pub fn new(cat: ModuleCategory, multiplicity_bound: usize) -> Self {
        ClusterTilting { cat, multiplicity_bound, budget: Self::DEFAULT_BUDGET, cache: Mutex::new(HashMap::new()) }
    }

    pub fn category(&self) -> &ModuleCategory {
        &self.cat
    }

    pub fn multiplicity_bound(&self) -> usize {
        self.multiplicity_bound
    }

    /// Bounded search: inner terms ordered by total dimension, then
    /// lexicographic multiplicities; maps enumerated in coordinate order.
    pub fn search(&self, a: &Obj, c: &Obj, delta: &[u32]) -> Result<Complex> {
        let p = self.cat.presentation();
        let n = p.n();
        let g = p.generator_count();
        let none = || Error::NoRealization(format!("E({}, {}) ∋ {:?}", p.object_label(c), p.object_label(a), delta));
        let uni = universe(g, self.multiplicity_bound);
        let dv = |m: &Vec<usize>| self.cat.dim_vector(&object_of(m));
        let dims: Vec<Vec<usize>> = uni.iter().map(dv).collect();
        let mut by_dv: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for (k, d) in dims.iter().enumerate() {
            by_dv.entry(d.clone()).or_default().push(k);
        }
        let (da, dc) = (self.cat.dim_vector(a), self.cat.dim_vector(c));
        // X_1..X_{n−1} range freely; X_n is pinned by Σ (−1)^i dv(X_i) = 0.
        let free = n - 1;
        if (uni.len() as f64).powi(free as i32) > 4.0e6 {
            return Err(Error::NoRealization(format!("search space too large for n = {n} at multiplicity bound {}", self.multiplicity_bound)));
        }
        let mut tuples: Vec<Vec<usize>> = Vec::new();
        let mut prefix: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..free {
            let mut next = Vec::new();
            for pre in &prefix {
                for k in 0..uni.len() {
                    let mut w = pre.clone();
                    w.push(k);
                    next.push(w);
                }
            }
            prefix = next;
        }
        for pre in prefix {
            let mut s: Vec<i64> = da.iter().map(|&x| x as i64).collect();
            for (idx, &k) in pre.iter().enumerate() {
                let sign = if (idx + 1) % 2 == 0 { 1 } else { -1 };
                for (t, &x) in s.iter_mut().zip(&dims[k]) {
                    *t += sign * x as i64;
                }
            }
            let sign_c = if (n + 1).is_multiple_of(2) { 1 } else { -1 };
            for (t, &x) in s.iter_mut().zip(&dc) {
                *t += sign_c * x as i64;
            }
            // s + (−1)^n dv(X_n) = 0
            let target: Option<Vec<usize>> = s
                .iter()
                .map(|&t| {
                    let v = if n.is_multiple_of(2) { -t } else { t };
                    usize::try_from(v).ok()
                })
                .collect();
            let Some(target) = target else { continue };
            let Some(ks) = by_dv.get(&target) else { continue };
            for &k in ks {
                let mut t = pre.clone();
                t.push(k);
                let first = &dims[t[0]];
                let last = &dims[t[n - 1]];
                if da.iter().zip(first).any(|(x, y)| x > y) || dc.iter().zip(last).any(|(x, y)| x > y) {
                    continue;
                }
                tuples.push(t);
            }
        }
        tuples.sort_by_key(|t| {
            let total: usize = t.iter().map(|&k| dims[k].iter().sum::<usize>()).sum();
            let lex: Vec<usize> = t.iter().flat_map(|&k| uni[k].iter().copied()).collect();
            (total, lex)
        });
        let mut budget = self.budget;
        for t in tuples {
            let mut terms = vec![a.clone()];
            terms.extend(t.iter().map(|&k| object_of(&uni[k])));
            terms.push(c.clone());
            let d0s: Vec<Mor> = match p.all_morphisms(&terms[0], &terms[1], ENUM_LIMIT) {
                Some(v) => v.into_iter().filter(|m| self.cat.to_module_morphism(m).is_mono()).collect(),
                None => continue,
            };
            if d0s.is_empty() {
                continue;
            }
            let dns: Vec<Mor> = match p.all_morphisms(&terms[n], &terms[n + 1], ENUM_LIMIT) {
                Some(v) => v.into_iter().filter(|m| self.cat.to_module_morphism(m).is_epi()).collect(),
                None => continue,
            };
            for d0 in &d0s {
                for dn in &dns {
                    if n == 1 {
                        if budget == 0 {
                            return Err(none());
                        }
                        budget -= 1;
                        if let Some(x) = self.try_candidate(&terms, vec![d0.clone(), dn.clone()], delta) {
                            return Ok(x);
                        }
                        continue;
                    }
                    if let Some(x) = self.fill_middle(&terms, vec![d0.clone()], dn, delta, &mut budget)? {
                        return Ok(x);
                    }
                }
            }
        }
        Err(none())
    }

    fn fill_middle(&self, terms: &[Obj], diffs: Vec<Mor>, dn: &Mor, delta: &[u32], budget: &mut usize) -> Result<Option<Complex>> {
        let p = self.cat.presentation();
        let n = p.n();
        let i = diffs.len();
        if i == n {
            if *budget == 0 {
                return Err(Error::NoRealization("search budget exhausted".into()));
            }
            *budget -= 1;
            let mut all = diffs;
            all.push(dn.clone());
            return Ok(self.try_candidate(terms, all, delta));
        }
        // d_i: X_i → X_{i+1} with d_i d_{i−1} = 0 and, at the last step, d_n d_i = 0.
        let prev = &diffs[i - 1];
        let mut m = p.pre_matrix(prev, &terms[i + 1]);
        if i == n - 1 {
            m = m.vstack(&p.post_matrix(dn, &terms[i]));
        }
        let ker = m.kernel_basis();
        let Some(coeffs) = p.field().all_vectors(ker.len(), ENUM_LIMIT) else {
            return Ok(None);
        };
        let km = Matrix::from_columns(p.field(), p.hom_dim(&terms[i], &terms[i + 1]), &ker);
        for cv in coeffs {
            let d = p.from_flat(&terms[i], &terms[i + 1], &km.mul_vec(&cv));
            let mut next = diffs.clone();
            next.push(d);
            if let Some(x) = self.fill_middle(terms, next, dn, delta, budget)? {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }

    fn try_candidate(&self, terms: &[Obj], diffs: Vec<Mor>, delta: &[u32]) -> Option<Complex> {
        let p = self.cat.presentation();
        let x = Complex { terms: terms.to_vec(), diffs };
        let class = self.cat.yoneda_class(&x).ok()?;
        let lambda = scalar_multiple(p, &class, delta)?;
        Some(rescale(p, &x, lambda))
    }
}

impl Realizer for ClusterTilting {
    fn pres(&self) -> &Presentation {
        self.cat.presentation()
    }

    fn realize_gen(&self, c: usize, a: usize, delta: &[u32]) -> Result<Complex> {
        let key = (c, a, delta.to_vec());
        if let Some(x) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(x.clone());
        }
        let x = self.search(&vec![a], &vec![c], delta)?;
        self.cache.lock().expect("cache lock").insert(key, x.clone());
        Ok(x)
    }

    fn realize_general(&self, a: &Obj, c: &Obj, delta: &[u32]) -> Result<Complex> {
        self.search(a, c, delta)
    }

    fn realizes(&self, x: &Complex, delta: &[u32]) -> Result<bool> {
        if self.cat.check_module_exact(x).is_err() {
            return Ok(false);
        }
        Ok(self.cat.yoneda_class(x)? == delta)
    }
}

// ---------------------------------------------------------------------------
// Declared backend

/// One declared realization of a generator-level extension.
#[derive(Clone, Debug)]
pub struct DeclaredEntry {
    pub c: usize,
    pub a: usize,
    pub exangle: NExangle,
}

/// Realizations read from a table, extended by scalars, direct sums and
/// split padding. Distinguished means homotopy equivalent to the table
/// entry with identity ends.
pub struct Declared<'a> {
    pres: &'a Presentation,
    table: Vec<DeclaredEntry>,
}

impl<'a> Declared<'a> {
    pub fn new(pres: &'a Presentation, table: Vec<DeclaredEntry>) -> Result<Self> {
        for e in &table {
            let x = &e.exangle.complex;
            if x.first() != &vec![e.a] || x.last() != &vec![e.c] || x.n() != pres.n() {
                return Err(Error::Semantic(format!(
                    "declared realization for E({}, {}) has the wrong ends or length",
                    pres.label(e.c),
                    pres.label(e.a)
                )));
            }
            if e.exangle.delta.len() != pres.ext_dim_gen(e.c, e.a) {
                return Err(Error::Semantic("declared extension has the wrong length".into()));
            }
        }
        Ok(Declared { pres, table })
    }

    pub fn table(&self) -> &[DeclaredEntry] {
        &self.table
    }
}

impl Realizer for Declared<'_> {
    fn pres(&self) -> &Presentation {
        self.pres
    }

    fn realize_gen(&self, c: usize, a: usize, delta: &[u32]) -> Result<Complex> {
        for e in self.table.iter().filter(|e| e.c == c && e.a == a) {
            if let Some(lambda) = scalar_multiple(self.pres, &e.exangle.delta, delta) {
                return Ok(rescale(self.pres, &e.exangle.complex, lambda));
            }
        }
        Err(Error::NoRealization(format!("no declared realization for {:?} in E({}, {})", delta, self.pres.label(c), self.pres.label(a))))
    }
}

// ---------------------------------------------------------------------------
// Inflations and deflations

/// Objects with at most `max_summands` generator summands, sorted.
pub fn small_objects(g: usize, max_summands: usize) -> Vec<Obj> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Obj> = vec![Vec::new()];
    for _ in 0..max_summands {
        let mut next = Vec::new();
        for o in &layer {
            let start = o.last().copied().unwrap_or(0);
            for i in start..g {
                let mut w = o.clone();
                w.push(i);
                next.push(w);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// A conflation `⟨X, δ'⟩` with `d_0^X = f`, searched among realizations of
/// `δ ∈ E(C', A)` for small `C'`, padded by `K →1 K` in degrees 1, 2 and
/// transported along an isomorphism `X_1 ≅ B`.
pub fn find_inflation<R: Realizer + ?Sized>(r: &R, f: &Mor, max_summands: usize) -> Result<Option<NExangle>> {
    let p = r.pres();
    let n = p.n();
    let (a, b) = (&f.src, &f.dst);
    for c2 in small_objects(p.generator_count(), max_summands) {
        let Some(deltas) = p.field().all_vectors(p.ext_dim(&c2, a), ENUM_LIMIT) else { continue };
        for delta in deltas {
            if block_pattern(p, a, &c2, &delta).is_none() {
                continue;
            }
            let rc = match realize(r, a, &c2, &delta) {
                Ok(x) => x,
                Err(Error::NoRealization(_)) => continue,
                Err(e) => return Err(e),
            };
            let Some(k) = multiset_difference(b, &rc.terms[1]) else { continue };
            let r1k: Obj = rc.terms[1].iter().chain(&k).copied().collect();
            let incl = p.from_grid(&[rc.terms[1].clone()], &[rc.terms[1].clone(), k.clone()], &[vec![p.identity(&rc.terms[1])], vec![p.zero(&rc.terms[1], &k)]]);
            let d0 = p.compose(&rc.diffs[0], &incl);
            for phi in affine_solutions(p, &p.pre_matrix(&d0, b), &p.flat(f), &r1k, b) {
                let Some(phi_inv) = p.inverse(&phi) else { continue };
                let idk = p.identity(&k);
                let mut terms = rc.terms.clone();
                terms[1] = b.clone();
                let mut diffs = rc.diffs.clone();
                diffs[0] = f.clone();
                let d1 = p.compose(&phi_inv, &p.direct_sum(&rc.diffs[1], &idk));
                terms[2] = rc.terms[2].iter().chain(&k).copied().collect();
                diffs[1] = d1;
                let delta2 = if n >= 2 {
                    let zero_k = p.zero(&k, &rc.terms[3]);
                    diffs[2] = p.from_grid(&[rc.terms[2].clone(), k.clone()], &[rc.terms[3].clone()], &[vec![rc.diffs[2].clone(), zero_k]]);
                    delta.clone()
                } else {
                    let c3 = &terms[2];
                    p.ext_from_blocks(c3, a, &|i, j| if j < c2.len() { p.ext_block(&c2, a, &delta, i, j).to_vec() } else { vec![0; p.ext_dim_gen(c3[j], a[i])] })
                };
                let x = Complex { terms, diffs };
                if r.realizes(&x, &delta2)? {
                    return Ok(Some(NExangle { complex: x, delta: delta2 }));
                }
            }
        }
    }
    Ok(None)
}

/// Dual of [`find_inflation`]: a conflation with `d_n^X = g`.
pub fn find_deflation<R: Realizer + ?Sized>(r: &R, g: &Mor, max_summands: usize) -> Result<Option<NExangle>> {
    let p = r.pres();
    let n = p.n();
    let (b, c) = (&g.src, &g.dst);
    for a2 in small_objects(p.generator_count(), max_summands) {
        let Some(deltas) = p.field().all_vectors(p.ext_dim(c, &a2), ENUM_LIMIT) else { continue };
        for delta in deltas {
            if block_pattern(p, &a2, c, &delta).is_none() {
                continue;
            }
            let rc = match realize(r, &a2, c, &delta) {
                Ok(x) => x,
                Err(Error::NoRealization(_)) => continue,
                Err(e) => return Err(e),
            };
            let rn = &rc.terms[n];
            let Some(k) = multiset_difference(b, rn) else { continue };
            let rnk: Obj = rn.iter().chain(&k).copied().collect();
            let proj = p.from_grid(&[rn.clone(), k.clone()], std::slice::from_ref(rn), &[vec![p.identity(rn), p.zero(&k, rn)]]);
            let dn = p.compose(&proj, &rc.diffs[n]);
            for phi in affine_solutions(p, &p.post_matrix(&dn, b), &p.flat(g), b, &rnk) {
                let Some(phi_inv) = p.inverse(&phi) else { continue };
                let idk = p.identity(&k);
                let mut terms = rc.terms.clone();
                terms[n] = b.clone();
                let mut diffs = rc.diffs.clone();
                diffs[n] = g.clone();
                terms[n - 1] = rc.terms[n - 1].iter().chain(&k).copied().collect();
                diffs[n - 1] = p.compose(&p.direct_sum(&rc.diffs[n - 1], &idk), &phi_inv);
                let delta2 = if n >= 2 {
                    let zero_k = p.zero(&rc.terms[n - 2], &k);
                    diffs[n - 2] = p.from_grid(&[rc.terms[n - 2].clone()], &[rc.terms[n - 1].clone(), k.clone()], &[vec![rc.diffs[n - 2].clone()], vec![zero_k]]);
                    delta.clone()
                } else {
                    let a3 = &terms[0];
                    p.ext_from_blocks(c, a3, &|i, j| if i < a2.len() { p.ext_block(c, &a2, &delta, i, j).to_vec() } else { vec![0; p.ext_dim_gen(c[j], a3[i])] })
                };
                let x = Complex { terms, diffs };
                if r.realizes(&x, &delta2)? {
                    return Ok(Some(NExangle { complex: x, delta: delta2 }));
                }
            }
        }
    }
    Ok(None)
}

/// Morphisms `φ: X → Y` with `M · flat(φ) = rhs`, enumerated up to
/// [`ENUM_LIMIT`].
fn affine_solutions(p: &Presentation, m: &Matrix, rhs: &[u32], x: &Obj, y: &Obj) -> Vec<Mor> {
    let Ok(sol) = crate::exactalg::rref_solve(m, rhs) else { return Vec::new() };
    let Some(part) = sol.particular else { return Vec::new() };
    let Some(coeffs) = p.field().all_vectors(sol.nullspace.len(), ENUM_LIMIT) else { return Vec::new() };
    let fl = p.field();
    coeffs
        .into_iter()
        .map(|cv| {
            let mut v = part.clone();
            for (basis, &cc) in sol.nullspace.iter().zip(&cv) {
                for (t, &b) in v.iter_mut().zip(basis) {
                    *t = fl.add(*t, fl.mul(cc, b));
                }
            }
            p.from_flat(x, y, &v)
        })
        .collect()
}
