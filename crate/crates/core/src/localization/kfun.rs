//! The subfunctor `K ⊆ E` of extensions killed by some member of `F`.

use crate::error::{Error, Result};
use crate::exactalg::Matrix;
use crate::exangulated::realize::ENUM_LIMIT;
use crate::exangulated::{Mor, Presentation};

use super::fbar::MorphismClass;
use super::quotient::IdealQuotient;

/// Bases of `K(G_c, G_a)` for every generator pair, indexed `[c][a]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KSubfunctor {
    pub basis: Vec<Vec<Vec<Vec<u32>>>>,
}

impl KSubfunctor {
    pub fn dim(&self, c: usize, a: usize) -> usize {
        self.basis[c][a].len()
    }
}

/// `{δ : s_*δ = 0 for some s ∈ F(A, B)}` and the dual set, both as reduced
/// bases. Errors when they differ or are not subspaces.
pub fn k_subgroup(q: &IdealQuotient, f: &MorphismClass, c: usize, a: usize) -> Result<Vec<Vec<u32>>> {
    let s_side = killed(q, f, c, a, Side::Push)?;
    let t_side = killed(q, f, c, a, Side::Pull)?;
    if s_side != t_side {
        let base = q.base();
        return Err(Error::CharacterizationsDisagree(format!(
            "K({}, {}) has dimension {} by push-forwards and {} by pull-backs",
            base.label(c),
            base.label(a),
            s_side.len(),
            t_side.len()
        )));
    }
    Ok(s_side)
}

/// `K` on every generator pair.
pub fn k_subfunctor(q: &IdealQuotient, f: &MorphismClass) -> Result<KSubfunctor> {
    let g = q.base().generator_count();
    let basis = (0..g).map(|c| (0..g).map(|a| k_subgroup(q, f, c, a)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    Ok(KSubfunctor { basis })
}

#[derive(Clone, Copy)]
enum Side {
    Push,
    Pull,
}

/// Morphisms of `C` between `x` and universe objects whose image lies in
/// `F̄`. `N`-summands of the far end never enlarge a kernel, so the far end
/// ranges over the universe only.
fn f_members(q: &IdealQuotient, f: &MorphismClass, x: usize, side: Side) -> Vec<Mor> {
    let base = q.base();
    let mut out = Vec::new();
    for y in f.universe() {
        let (src, dst) = match side {
            Side::Push => (vec![x], y.clone()),
            Side::Pull => (y.clone(), vec![x]),
        };
        if let Some(all) = base.all_morphisms(&src, &dst, ENUM_LIMIT) {
            out.extend(all.into_iter().filter(|m| f.contains(q, &q.project(m))));
        }
    }
    out
}

fn killed(q: &IdealQuotient, f: &MorphismClass, c: usize, a: usize, side: Side) -> Result<Vec<Vec<u32>>> {
    let base = q.base();
    let fl = base.field();
    let d = base.ext_dim_gen(c, a);
    let maps: Vec<Matrix> = match side {
        Side::Push => f_members(q, f, a, side).iter().map(|s| base.push_matrix(s, &vec![c])).collect(),
        Side::Pull => f_members(q, f, c, side).iter().map(|t| base.pull_matrix(t, &vec![a])).collect(),
    };
    let all = fl.all_vectors(d, ENUM_LIMIT).ok_or_else(|| Error::Unsupported(format!("extension space of dimension {d} is too large to enumerate")))?;
    let hit: Vec<Vec<u32>> = all.into_iter().filter(|v| maps.iter().any(|m| m.mul_vec(v).iter().all(|&x| x == 0))).collect();
    let basis = reduced_basis(base, d, &hit);
    let span = (fl.p() as u128).pow(basis.len() as u32);
    if span != hit.len() as u128 {
        return Err(Error::CharacterizationsDisagree(format!(
            "the extensions of E({}, {}) killed by {} are not a subgroup",
            base.label(c),
            base.label(a),
            match side {
                Side::Push => "push-forwards",
                Side::Pull => "pull-backs",
            }
        )));
    }
    Ok(basis)
}

/// Reduced row echelon basis of the span of `vs`.
pub fn reduced_basis(p: &Presentation, d: usize, vs: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let rows: Vec<u32> = vs.iter().flatten().copied().collect();
    let m = Matrix::from_rows(p.field(), vs.len(), d, &rows);
    let (r, piv) = m.rref();
    (0..piv.len()).map(|i| r.row(i).to_vec()).collect()
}
