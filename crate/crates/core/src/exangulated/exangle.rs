//! Complexes, attached extensions, Hom-exactness, cones, cocones and lifts.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{rref_solve, Matrix};

use super::presentation::{Mor, Obj, Presentation};

/// An `(n+2)`-term complex `X_0 → X_1 → … → X_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    pub terms: Vec<Obj>,
    pub diffs: Vec<Mor>,
}

impl Complex {
    pub fn new(terms: Vec<Obj>, diffs: Vec<Mor>) -> Result<Self> {
        if terms.len() != diffs.len() + 1 || diffs.is_empty() {
            return Err(Error::DimensionMismatch(format!("{} terms but {} differentials", terms.len(), diffs.len())));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.src != terms[i] || d.dst != terms[i + 1] {
                return Err(Error::DimensionMismatch(format!("differential {i} has the wrong ends")));
            }
        }
        Ok(Complex { terms, diffs })
    }

    /// `n` for an `(n+2)`-term complex.
    pub fn n(&self) -> usize {
        self.diffs.len() - 1
    }

    pub fn first(&self) -> &Obj {
        &self.terms[0]
    }

    pub fn last(&self) -> &Obj {
        self.terms.last().expect("nonempty complex")
    }
}

/// A complex together with `δ ∈ E(X_{n+1}, X_0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NExangle {
    pub complex: Complex,
    pub delta: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Contravariant,
    Covariant,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Contravariant => "contravariant",
            Side::Covariant => "covariant",
        })
    }
}

/// First place where a Hom sequence fails to be exact. `position` is the
/// index of the term `X_i` whose Hom space is not exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessFailure {
    pub side: Side,
    pub position: usize,
    pub test_object: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExangleVerdict {
    pub is_complex: bool,
    pub attached: bool,
    pub failure: Option<ExactnessFailure>,
}

impl ExangleVerdict {
    pub fn ok(&self) -> bool {
        self.is_complex && self.attached && self.failure.is_none()
    }
}

/// `d_{i+1} ∘ d_i = 0` for every `i`.
pub fn is_complex(p: &Presentation, x: &Complex) -> bool {
    x.diffs.windows(2).all(|w| p.is_zero(&p.compose(&w[0], &w[1])))
}

/// `(d_0)_*δ = 0` and `(d_n)^*δ = 0`.
pub fn is_attached(p: &Presentation, x: &Complex, delta: &[u32]) -> bool {
    let n = x.n();
    let push = p.push_ext(&x.diffs[0], x.last(), delta);
    let pull = p.pull_ext(&x.diffs[n], x.first(), delta);
    push.iter().all(|&v| v == 0) && pull.iter().all(|&v| v == 0)
}

/// `ker(out) = im(inc)` given `out ∘ inc = 0` is checked separately.
fn exact_pair(inc: &Matrix, out: &Matrix) -> bool {
    out.mul(inc).is_zero() && inc.rank() + out.rank() == inc.rows()
}

/// Contravariant Hom sequence at `T` and term `i ∈ 1..=n+1`.
fn contra_exact(p: &Presentation, x: &Complex, delta: &[u32], t: &Obj, i: usize) -> bool {
    let n = x.n();
    let inc = p.post_matrix(&x.diffs[i - 1], t);
    let out = if i <= n { p.post_matrix(&x.diffs[i], t) } else { p.delta_contra(x.last(), x.first(), delta, t) };
    exact_pair(&inc, &out)
}

/// Covariant Hom sequence at `T` and term `i ∈ 0..=n`.
fn co_exact(p: &Presentation, x: &Complex, delta: &[u32], t: &Obj, i: usize) -> bool {
    let inc = p.pre_matrix(&x.diffs[i], t);
    let out = if i >= 1 { p.pre_matrix(&x.diffs[i - 1], t) } else { p.delta_co(x.last(), x.first(), delta, t) };
    exact_pair(&inc, &out)
}

/// Checks both Hom sequences ending in `δ♯` at every generator. Positions
/// are scanned in increasing order, contravariant before covariant, and
/// generators in index order; the first failure is reported.
pub fn is_n_exangle(p: &Presentation, x: &Complex, delta: &[u32]) -> ExangleVerdict {
    let n = x.n();
    let complex = is_complex(p, x);
    let attached = is_attached(p, x, delta);
    let mut failure = None;
    'outer: for pos in 0..=n + 1 {
        if pos >= 1 {
            for t in 0..p.generator_count() {
                if !contra_exact(p, x, delta, &vec![t], pos) {
                    failure = Some(ExactnessFailure { side: Side::Contravariant, position: pos, test_object: t });
                    break 'outer;
                }
            }
        }
        if pos <= n {
            for t in 0..p.generator_count() {
                if !co_exact(p, x, delta, &vec![t], pos) {
                    failure = Some(ExactnessFailure { side: Side::Covariant, position: pos, test_object: t });
                    break 'outer;
                }
            }
        }
    }
    ExangleVerdict { is_complex: complex, attached, failure }
}

/// Every failure of Hom-exactness at the inner terms `1..=n`, in the same
/// order as [`is_n_exangle`]. The extension is not involved.
pub fn inner_exactness_failures(p: &Presentation, x: &Complex) -> Vec<ExactnessFailure> {
    let n = x.n();
    let mut out = Vec::new();
    for pos in 1..=n {
        for t in 0..p.generator_count() {
            let tt = vec![t];
            if !exact_pair(&p.post_matrix(&x.diffs[pos - 1], &tt), &p.post_matrix(&x.diffs[pos], &tt)) {
                out.push(ExactnessFailure { side: Side::Contravariant, position: pos, test_object: t });
            }
        }
        for t in 0..p.generator_count() {
            let tt = vec![t];
            if !exact_pair(&p.pre_matrix(&x.diffs[pos], &tt), &p.pre_matrix(&x.diffs[pos - 1], &tt)) {
                out.push(ExactnessFailure { side: Side::Covariant, position: pos, test_object: t });
            }
        }
    }
    out
}

/// A degreewise morphism `f_•: X → Y` of complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub components: Vec<Mor>,
}

/// All squares `f_{i+1} d_i^X = d_i^Y f_i` commute.
pub fn is_chain_map(p: &Presentation, x: &Complex, y: &Complex, f: &ChainMap) -> bool {
    (0..=x.n()).all(|i| p.compose(&x.diffs[i], &f.components[i + 1]) == p.compose(&f.components[i], &y.diffs[i]))
}

/// Mapping cone of `f: X → Y` with `f_0 = id`:
/// `X_1 → X_2⊕Y_1 → … → X_{n+1}⊕Y_n → Y_{n+1}`.
pub fn mapping_cone(p: &Presentation, x: &Complex, y: &Complex, f: &ChainMap) -> Result<Complex> {
    let n = x.n();
    if f.components[0] != p.identity(x.first()) || x.first() != y.first() {
        return Err(Error::ConeNotIdentity);
    }
    let mut terms = vec![x.terms[1].clone()];
    for i in 1..=n {
        terms.push(x.terms[i + 1].iter().chain(&y.terms[i]).copied().collect());
    }
    terms.push(y.terms[n + 1].clone());
    let mut diffs = Vec::with_capacity(n + 1);
    diffs.push(p.from_grid(&[x.terms[1].clone()], &[x.terms[2].clone(), y.terms[1].clone()], &[vec![p.neg(&x.diffs[1])], vec![f.components[1].clone()]]));
    for i in 1..n {
        let src = [x.terms[i + 1].clone(), y.terms[i].clone()];
        let dst = [x.terms[i + 2].clone(), y.terms[i + 1].clone()];
        let grid = vec![
            vec![p.neg(&x.diffs[i + 1]), p.zero(&y.terms[i], &x.terms[i + 2])],
            vec![f.components[i + 1].clone(), y.diffs[i].clone()],
        ];
        diffs.push(p.from_grid(&src, &dst, &grid));
    }
    diffs.push(p.from_grid(&[x.terms[n + 1].clone(), y.terms[n].clone()], &[y.terms[n + 1].clone()], &[vec![f.components[n + 1].clone(), y.diffs[n].clone()]]));
    Complex::new(terms, diffs)
}

/// Mapping cocone of `f: X → Y` with `f_{n+1} = id`:
/// `X_0 → X_1⊕Y_0 → … → X_n⊕Y_{n−1} → Y_n`.
pub fn mapping_cocone(p: &Presentation, x: &Complex, y: &Complex, f: &ChainMap) -> Result<Complex> {
    let n = x.n();
    if f.components[n + 1] != p.identity(x.last()) || x.last() != y.last() {
        return Err(Error::ConeNotIdentity);
    }
    let mut terms = vec![x.terms[0].clone()];
    for i in 1..=n {
        terms.push(x.terms[i].iter().chain(&y.terms[i - 1]).copied().collect());
    }
    terms.push(y.terms[n].clone());
    let mut diffs = Vec::with_capacity(n + 1);
    diffs.push(p.from_grid(&[x.terms[0].clone()], &[x.terms[1].clone(), y.terms[0].clone()], &[vec![p.neg(&x.diffs[0])], vec![f.components[0].clone()]]));
    for i in 1..n {
        let src = [x.terms[i].clone(), y.terms[i - 1].clone()];
        let dst = [x.terms[i + 1].clone(), y.terms[i].clone()];
        let grid = vec![
            vec![p.neg(&x.diffs[i]), p.zero(&y.terms[i - 1], &x.terms[i + 1])],
            vec![f.components[i].clone(), y.diffs[i - 1].clone()],
        ];
        diffs.push(p.from_grid(&src, &dst, &grid));
    }
    diffs.push(p.from_grid(&[x.terms[n].clone(), y.terms[n - 1].clone()], &[y.terms[n].clone()], &[vec![f.components[n].clone(), y.diffs[n - 1].clone()]]));
    Complex::new(terms, diffs)
}

/// Affine space of lifts `(a, f_1, …, f_n, c)` of `(a, c)` from `X` to `Y`.
#[derive(Clone, Debug)]
pub struct LiftSpace {
    pub particular: ChainMap,
    /// Directions `(0, g_1, …, g_n, 0)` spanning the homogeneous solutions.
    pub directions: Vec<ChainMap>,
}

/// Solves the `n+1` commuting squares jointly for `f_1, …, f_n`.
/// Returns `None` when the system is inconsistent.
pub fn lift_space(p: &Presentation, x: &Complex, y: &Complex, a: &Mor, c: &Mor) -> Option<LiftSpace> {
    let n = x.n();
    let var_dims: Vec<usize> = (1..=n).map(|i| p.hom_dim(&x.terms[i], &y.terms[i])).collect();
    let eq_dims: Vec<usize> = (0..=n).map(|i| p.hom_dim(&x.terms[i], &y.terms[i + 1])).collect();
    let nvars: usize = var_dims.iter().sum();
    let neqs: usize = eq_dims.iter().sum();
    // Equation i: f_{i+1} d_i^X − d_i^Y f_i = 0, with f_0 = a and f_{n+1} = c.
    let residual = |comps: &[Mor]| -> Vec<u32> {
        let mut v = Vec::with_capacity(neqs);
        for i in 0..=n {
            let lhs = p.compose(&x.diffs[i], &comps[i + 1]);
            let rhs = p.compose(&comps[i], &y.diffs[i]);
            v.extend(p.flat(&p.sub(&lhs, &rhs)));
        }
        v
    };
    let zero_comps = |a0: Mor, c0: Mor| -> Vec<Mor> {
        let mut v = vec![a0];
        for i in 1..=n {
            v.push(p.zero(&x.terms[i], &y.terms[i]));
        }
        v.push(c0);
        v
    };
    let base = residual(&zero_comps(a.clone(), c.clone()));
    let mut cols = Vec::with_capacity(nvars);
    for i in 1..=n {
        for k in 0..var_dims[i - 1] {
            let mut comps = zero_comps(p.zero(&x.terms[0], &y.terms[0]), p.zero(&x.terms[n + 1], &y.terms[n + 1]));
            let mut e = vec![0u32; var_dims[i - 1]];
            e[k] = 1;
            comps[i] = p.from_flat(&x.terms[i], &y.terms[i], &e);
            cols.push(residual(&comps));
        }
    }
    let fl = p.field();
    let m = Matrix::from_columns(fl, neqs, &cols);
    let rhs: Vec<u32> = base.iter().map(|&v| fl.neg(v)).collect();
    let sol = rref_solve(&m, &rhs).ok()?;
    let part = sol.particular?;
    let to_map = |v: &[u32], a0: Mor, c0: Mor| -> ChainMap {
        let mut comps = vec![a0];
        let mut off = 0;
        for i in 1..=n {
            comps.push(p.from_flat(&x.terms[i], &y.terms[i], &v[off..off + var_dims[i - 1]]));
            off += var_dims[i - 1];
        }
        comps.push(c0);
        ChainMap { components: comps }
    };
    let particular = to_map(&part, a.clone(), c.clone());
    let directions = sol
        .nullspace
        .iter()
        .map(|v| to_map(v, p.zero(&x.terms[0], &y.terms[0]), p.zero(&x.terms[n + 1], &y.terms[n + 1])))
        .collect();
    Some(LiftSpace { particular, directions })
}

impl LiftSpace {
    /// `particular + Σ coeffs_k · directions_k`.
    pub fn element(&self, p: &Presentation, coeffs: &[u32]) -> ChainMap {
        let mut comps = self.particular.components.clone();
        for (d, &c) in self.directions.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            for (acc, g) in comps.iter_mut().zip(&d.components) {
                *acc = p.add(acc, &p.scale(g, c));
            }
        }
        ChainMap { components: comps }
    }
}

/// A lift of `(a, c)` between `⟨X, δ⟩` and `⟨Y, ρ⟩`, after checking
/// `a_*δ = c^*ρ`.
pub fn lift_morphism(p: &Presentation, x: &NExangle, y: &NExangle, a: &Mor, c: &Mor) -> Result<ChainMap> {
    let lhs = p.push_ext(a, x.complex.last(), &x.delta);
    let rhs = p.pull_ext(c, y.complex.first(), &y.delta);
    if lhs != rhs {
        return Err(Error::LiftPrecondition);
    }
    lift_space(p, &x.complex, &y.complex, a, c)
        .map(|s| s.particular)
        .ok_or_else(|| Error::NoLift(format!("{} → {}", p.object_label(x.complex.first()), p.object_label(y.complex.last()))))
}

/// Is `f − g` null-homotopic: `f_i − g_i = h_{i+1} d_i^X + d_{i−1}^Y h_i`
/// with `h_i: X_i → Y_{i−1}` for `i = 1..=n+1`?
pub fn homotopic(p: &Presentation, x: &Complex, y: &Complex, f: &ChainMap, g: &ChainMap) -> bool {
    let n = x.n();
    let target: Vec<u32> = (0..=n + 1).flat_map(|i| p.flat(&p.sub(&f.components[i], &g.components[i]))).collect();
    let h_dims: Vec<usize> = (1..=n + 1).map(|i| p.hom_dim(&x.terms[i], &y.terms[i - 1])).collect();
    let mut cols = Vec::new();
    for i in 1..=n + 1 {
        for k in 0..h_dims[i - 1] {
            let mut e = vec![0u32; h_dims[i - 1]];
            e[k] = 1;
            let h = p.from_flat(&x.terms[i], &y.terms[i - 1], &e);
            // h contributes h∘d_{i-1}^X at degree i−1 and d_{i−1}^Y∘h at degree i.
            let mut v = Vec::with_capacity(target.len());
            for j in 0..=n + 1 {
                let part = if j == i - 1 {
                    p.compose(&x.diffs[i - 1], &h)
                } else if j == i {
                    p.compose(&h, &y.diffs[i - 1])
                } else {
                    p.zero(&x.terms[j], &y.terms[j])
                };
                v.extend(p.flat(&part));
            }
            cols.push(v);
        }
    }
    let m = Matrix::from_columns(p.field(), target.len(), &cols);
    m.solve_vec(&target).is_some()
}

/// Searches for chain maps `X ⇄ Y` with identity ends whose composites are
/// homotopic to the identities. `limit` caps the enumerated lifts.
pub fn homotopy_equivalent(p: &Presentation, x: &Complex, y: &Complex, limit: usize) -> bool {
    if x.first() != y.first() || x.last() != y.last() {
        return false;
    }
    let (ia, ic) = (p.identity(x.first()), p.identity(x.last()));
    let Some(fwd) = lift_space(p, x, y, &ia, &ic) else { return false };
    let Some(back) = lift_space(p, y, x, &ia, &ic) else { return false };
    let idx = ChainMap { components: x.terms.iter().map(|t| p.identity(t)).collect() };
    let idy = ChainMap { components: y.terms.iter().map(|t| p.identity(t)).collect() };
    let fl = p.field();
    let Some(fs) = fl.all_vectors(fwd.directions.len(), limit) else { return false };
    let Some(bs) = fl.all_vectors(back.directions.len(), limit) else { return false };
    // g∘f ~ id only depends on the homotopy class of f, so one f and one g
    // suffice when lifts are unique up to homotopy; the loops cover the
    // general bounded case.
    for fc in &fs {
        let f = fwd.element(p, fc);
        for gc in &bs {
            let g = back.element(p, gc);
            let gf = compose_chain(p, &f, &g);
            if !homotopic(p, x, x, &gf, &idx) {
                continue;
            }
            let fg = compose_chain(p, &g, &f);
            if homotopic(p, y, y, &fg, &idy) {
                return true;
            }
        }
    }
    false
}

/// `g ∘ f` degreewise.
pub fn compose_chain(p: &Presentation, f: &ChainMap, g: &ChainMap) -> ChainMap {
    ChainMap { components: f.components.iter().zip(&g.components).map(|(a, b)| p.compose(a, b)).collect() }
}

/// The split complex `A →1 A → 0 → … → 0 → C →1 C` (for `n = 1`,
/// `A → A⊕C → C`).
pub fn split_complex(p: &Presentation, n: usize, a: &Obj, c: &Obj) -> Complex {
    if n == 1 {
        let mid: Obj = a.iter().chain(c).copied().collect();
        let d0 = p.from_grid(std::slice::from_ref(a), &[a.clone(), c.clone()], &[vec![p.identity(a)], vec![p.zero(a, c)]]);
        let d1 = p.from_grid(&[a.clone(), c.clone()], std::slice::from_ref(c), &[vec![p.zero(a, c), p.identity(c)]]);
        return Complex { terms: vec![a.clone(), mid, c.clone()], diffs: vec![d0, d1] };
    }
    let mut terms = vec![a.clone(), a.clone()];
    for _ in 2..n {
        terms.push(Vec::new());
    }
    terms.push(c.clone());
    terms.push(c.clone());
    let mut diffs = vec![p.identity(a)];
    for i in 1..n {
        diffs.push(p.zero(&terms[i], &terms[i + 1]));
    }
    diffs.push(p.identity(c));
    Complex { terms, diffs }
}

/// Direct sum of complexes of the same length.
pub fn sum_complex(p: &Presentation, x: &Complex, y: &Complex) -> Complex {
    let terms = x.terms.iter().zip(&y.terms).map(|(a, b)| a.iter().chain(b).copied().collect()).collect();
    let diffs = x.diffs.iter().zip(&y.diffs).map(|(f, g)| p.direct_sum(f, g)).collect();
    Complex { terms, diffs }
}

/// Replaces `X_0` and `X_{n+1}` through isomorphisms `α: A' → X_0` and
/// `γ: X_{n+1} → C'`.
pub fn reindex_ends(p: &Presentation, x: &Complex, alpha: &Mor, gamma: &Mor) -> Complex {
    let n = x.n();
    let mut terms = x.terms.clone();
    terms[0] = alpha.src.clone();
    terms[n + 1] = gamma.dst.clone();
    let mut diffs = x.diffs.clone();
    diffs[0] = p.compose(alpha, &diffs[0]);
    diffs[n] = p.compose(&diffs[n], gamma);
    Complex { terms, diffs }
}
