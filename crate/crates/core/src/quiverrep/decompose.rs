//! Krull–Schmidt decomposition by idempotents, isomorphism tests and
//! composition-series labels.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactalg::Matrix;

use super::algebra::Algebra;
use super::module::{hom_basis, image, kernel, HomSpace, ModMorphism, Module};

/// End rings up to this dimension are enumerated exhaustively.
const ENUMERATE_END_DIM: usize = 6;
/// Cap on the number of enumerated endomorphisms.
const ENUMERATE_LIMIT: usize = 1 << 16;
/// Random endomorphisms tried before a module is declared indecomposable.
const FITTING_TRIES: usize = 64;
/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Module,
    pub inclusion: ModMorphism,
    pub projection: ModMorphism,
}

/// Splits `m` into indecomposable summands. Inclusions and projections
/// satisfy `π_i ι_j = δ_ij` and `Σ ι_i π_i = id`.
pub fn decompose(alg: &Algebra, m: &Module, seed: u64) -> Result<Vec<Summand>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut budget = 4 * m.total_dim() + 8;
    split_rec(alg, m, &ModMorphism::identity(alg.field(), m), &ModMorphism::identity(alg.field(), m), &mut rng, &mut out, &mut budget)?;
    Ok(out)
}

fn split_rec(
    alg: &Algebra,
    m: &Module,
    incl: &ModMorphism,
    proj: &ModMorphism,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Summand>,
    budget: &mut usize,
) -> Result<()> {
    if m.is_zero() {
        return Ok(());
    }
    if *budget == 0 {
        return Err(Error::DecompositionFailed(format!("module of dimension {}", m.total_dim())));
    }
    *budget -= 1;
    match find_splitting(alg, m, rng) {
        None => {
            out.push(Summand { module: m.clone(), inclusion: incl.clone(), projection: proj.clone() });
            Ok(())
        }
        Some(e) => {
            let f = alg.field();
            let one_minus = ModMorphism::identity(f, m).sub(&e);
            for idem in [e, one_minus] {
                let (u, epi, ui) = image(alg, &idem);
                split_rec(alg, &u, &ui.then(incl), &proj.then(&epi), rng, out, budget)?;
            }
            Ok(())
        }
    }
}

/// A nontrivial idempotent of `End(m)`, if one is found.
fn find_splitting(alg: &Algebra, m: &Module, rng: &mut ChaCha8Rng) -> Option<ModMorphism> {
    let f = alg.field();
    let end = hom_basis(alg, m, m);
    let d = end.len();
    if d <= 1 {
        return None;
    }
    if d <= ENUMERATE_END_DIM {
        if let Some(all) = f.all_vectors(d, ENUMERATE_LIMIT) {
            for v in all {
                let e = combine(alg, m, &end, &v);
                if e.is_zero() || e.is_identity() {
                    continue;
                }
                if e.then(&e) == e {
                    return Some(e);
                }
            }
            return None;
        }
    }
    for _ in 0..FITTING_TRIES {
        let v: Vec<u32> = (0..d).map(|_| rng.random_range(0..f.p())).collect();
        let phi = combine(alg, m, &end, &v);
        if let Some(e) = fitting_idempotent(alg, m, &phi) {
            return Some(e);
        }
    }
    None
}

fn combine(alg: &Algebra, m: &Module, basis: &[ModMorphism], coeffs: &[u32]) -> ModMorphism {
    let mut acc = ModMorphism::zero(alg.field(), m, m);
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

/// Projection onto `im φ^N` along `ker φ^N`, unless that splitting is
/// trivial.
fn fitting_idempotent(alg: &Algebra, m: &Module, phi: &ModMorphism) -> Option<ModMorphism> {
    let mut power = phi.clone();
    let mut k = 1;
    while k < m.total_dim() {
        power = power.then(&power);
        k *= 2;
    }
    if power.is_zero() || power.is_iso() {
        return None;
    }
    let (_, _, im_incl) = image(alg, &power);
    let (_, ker_incl) = kernel(alg, &power);
    let f = alg.field();
    let maps: Vec<Matrix> = (0..alg.vertex_count())
        .map(|v| {
            let a = im_incl.at(v);
            let b = ker_incl.at(v);
            let basis = a.hstack(b);
            let inv = basis.inverse().expect("Fitting summands are complementary");
            let mut keep = Matrix::zeros(f, basis.cols(), basis.cols());
            for i in 0..a.cols() {
                keep.set(i, i, 1);
            }
            basis.mul(&keep).mul(&inv)
        })
        .collect();
    Some(ModMorphism::new_unchecked(m.clone(), m.clone(), maps))
}

/// An isomorphism between two indecomposable modules, if any.
pub fn indecomposable_iso(alg: &Algebra, m: &Module, n: &Module) -> Option<ModMorphism> {
    if m.dims() != n.dims() {
        return None;
    }
    let fwd = hom_basis(alg, m, n);
    let back = hom_basis(alg, n, m);
    for f in &fwd {
        if f.is_iso() {
            return Some(f.clone());
        }
        if back.iter().any(|g| f.then(g).is_iso()) {
            return Some(f.clone());
        }
    }
    None
}

/// An isomorphism `m → n`, found by matching indecomposable summands.
pub fn find_isomorphism(alg: &Algebra, m: &Module, n: &Module, seed: u64) -> Result<Option<ModMorphism>> {
    if m.dims() != n.dims() {
        return Ok(None);
    }
    let sm = decompose(alg, m, seed)?;
    let sn = decompose(alg, n, seed)?;
    if sm.len() != sn.len() {
        return Ok(None);
    }
    let mut used = vec![false; sn.len()];
    let mut acc = ModMorphism::zero(alg.field(), m, n);
    for a in &sm {
        let mut matched = false;
        for (j, b) in sn.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(iso) = indecomposable_iso(alg, &a.module, &b.module) {
                used[j] = true;
                acc = acc.add(&a.projection.then(&iso).then(&b.inclusion));
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(None);
        }
    }
    Ok(Some(acc))
}

/// Submodule spanned by the given per-vertex column bases, with its
/// inclusion. The bases must already be closed under the arrows.
pub fn submodule(alg: &Algebra, m: &Module, bases: Vec<Matrix>) -> (Module, ModMorphism) {
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| bases[a.target].solve_matrix(&m.map(ai).mul(&bases[a.source])).expect("basis is arrow-closed"))
        .collect();
    let sub = Module::new_unchecked(dims, maps);
    let incl = ModMorphism::new_unchecked(sub.clone(), m.clone(), bases);
    (sub, incl)
}

/// Radical layers `rad^k M / rad^{k+1} M` as dimension vectors.
pub fn radical_layers(alg: &Algebra, m: &Module) -> Vec<Vec<usize>> {
    let mut layers = Vec::new();
    let mut cur = m.clone();
    while !cur.is_zero() {
        let rad = cur.radical_basis(alg);
        let bases: Vec<Matrix> = rad.iter().zip(cur.dims()).map(|(b, &d)| Matrix::from_columns(alg.field(), d, b)).collect();
        layers.push(cur.top_dims(alg));
        let (next, _) = submodule(alg, &cur, bases);
        if next.total_dim() == cur.total_dim() {
            break;
        }
        cur = next;
    }
    layers
}

/// `top/…/socle` when every radical layer is a single simple, e.g. `2/3/4`.
pub fn composition_label(alg: &Algebra, m: &Module) -> Option<String> {
    let layers = radical_layers(alg, m);
    if layers.is_empty() {
        return Some("0".into());
    }
    let mut parts = Vec::new();
    for l in &layers {
        if l.iter().sum::<usize>() != 1 {
            return None;
        }
        parts.push((l.iter().position(|&d| d == 1)? + 1).to_string());
    }
    Some(parts.join("/"))
}

/// Hom space helper re-exported for callers that only need dimensions.
pub fn hom_dim(alg: &Algebra, m: &Module, n: &Module) -> usize {
    HomSpace::new(alg, m, n).dim()
}
