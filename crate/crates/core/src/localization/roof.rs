//! Roofs `(t\δ/s)` representing elements of `Ẽ(C, A)`, their calculus of
//! common denominators, and the realization `s̃`.

use crate::error::{Error, Result};
use crate::exangulated::realize::ENUM_LIMIT;
use crate::exangulated::{realize, Complex, Mor, Obj, Presentation, Realizer};

use super::fbar::MorphismClass;
use super::quotient::IdealQuotient;

/// `C ⇐t Z ⇢δ X ⇐s A` with `t, s ∈ F̄` and `δ ∈ Ē(Z, X)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Roof {
    pub t: Mor,
    pub delta: Vec<u32>,
    pub s: Mor,
}

impl Roof {
    pub fn a(&self) -> &Obj {
        &self.s.src
    }

    pub fn x(&self) -> &Obj {
        &self.s.dst
    }

    pub fn z(&self) -> &Obj {
        &self.t.src
    }

    pub fn c(&self) -> &Obj {
        &self.t.dst
    }
}

/// Roofs rewritten over one pair of denominators.
#[derive(Clone, Debug)]
pub struct CommonDenominator {
    pub t: Mor,
    pub s: Mor,
    pub rhos: Vec<Vec<u32>>,
}

/// The calculus of fractions of `F̄` acting on `Ē`.
#[derive(Clone, Copy)]
pub struct Fractions<'a> {
    pub q: &'a IdealQuotient,
    pub f: &'a MorphismClass,
}

impl<'a> Fractions<'a> {
    pub fn new(q: &'a IdealQuotient, f: &'a MorphismClass) -> Self {
        Fractions { q, f }
    }

    pub fn cat(&self) -> &'a Presentation {
        self.q.category()
    }

    /// A roof after checking both denominators.
    pub fn roof(&self, t: Mor, delta: Vec<u32>, s: Mor) -> Result<Roof> {
        let cat = self.cat();
        if !self.f.contains(self.q, &t) || !self.f.contains(self.q, &s) {
            return Err(Error::InvalidInput("roof denominators must lie in F̄".into()));
        }
        if delta.len() != cat.ext_dim(&t.src, &s.dst) {
            return Err(Error::DimensionMismatch("roof extension has the wrong length".into()));
        }
        Ok(Roof { t, delta, s })
    }

    /// `μ̄(δ̄) = [id\δ̄/id]`.
    pub fn mu_bar(&self, c: &Obj, a: &Obj, delta: &[u32]) -> Roof {
        let cat = self.cat();
        Roof { t: cat.identity(c), delta: delta.to_vec(), s: cat.identity(a) }
    }

    /// `[id\0/id]`.
    pub fn zero(&self, c: &Obj, a: &Obj) -> Roof {
        self.mu_bar(c, a, &vec![0; self.cat().ext_dim(c, a)])
    }

    pub fn neg(&self, r: &Roof) -> Roof {
        let fl = self.cat().field();
        Roof { t: r.t.clone(), delta: r.delta.iter().map(|&x| fl.neg(x)).collect(), s: r.s.clone() }
    }

    /// Common denominators: `s = u_i ∘ s_i`, `t = t_i ∘ v_i` and
    /// `ρ_i = v_i^* (u_i)_* δ_i`. `variant` picks other Ore completions.
    pub fn common_denominator(&self, roofs: &[Roof], variant: usize) -> Result<CommonDenominator> {
        let cat = self.cat();
        let first = roofs.first().ok_or_else(|| Error::InvalidInput("no roofs".into()))?;
        if roofs.iter().any(|r| r.a() != first.a() || r.c() != first.c()) {
            return Err(Error::InvalidInput("roofs with different ends".into()));
        }
        let mut s = first.s.clone();
        let mut us = vec![cat.identity(first.x())];
        let mut t = first.t.clone();
        let mut vs = vec![cat.identity(first.z())];
        for r in &roofs[1..] {
            let (a2, s2) = self.f.ore_push(self.q, &s, &r.s, variant)?;
            for u in us.iter_mut() {
                *u = cat.compose(u, &a2);
            }
            us.push(s2);
            s = cat.compose(&s, &a2);
            let (c2, t2) = self.f.ore_pull(self.q, &t, &r.t, variant)?;
            for v in vs.iter_mut() {
                *v = cat.compose(&c2, v);
            }
            vs.push(t2);
            t = cat.compose(&c2, &t);
        }
        if !self.f.contains(self.q, &s) || !self.f.contains(self.q, &t) {
            return Err(Error::OreNotFound("common denominator left F̄".into()));
        }
        let rhos = roofs
            .iter()
            .zip(us.iter().zip(&vs))
            .map(|(r, (u, v))| cat.pull_ext(v, &s.dst, &cat.push_ext(u, r.z(), &r.delta)))
            .collect();
        Ok(CommonDenominator { t, s, rhos })
    }

    pub fn roof_equal(&self, r1: &Roof, r2: &Roof) -> Result<bool> {
        let cd = self.common_denominator(&[r1.clone(), r2.clone()], 0)?;
        Ok(cd.rhos[0] == cd.rhos[1])
    }

    pub fn roof_add_with(&self, r1: &Roof, r2: &Roof, variant: usize) -> Result<Roof> {
        let fl = self.cat().field();
        let cd = self.common_denominator(&[r1.clone(), r2.clone()], variant)?;
        let delta = cd.rhos[0].iter().zip(&cd.rhos[1]).map(|(&x, &y)| fl.add(x, y)).collect();
        Ok(Roof { t: cd.t, delta, s: cd.s })
    }

    pub fn roof_add(&self, r1: &Roof, r2: &Roof) -> Result<Roof> {
        self.roof_add_with(r1, r2, 0)
    }

    /// `α_*` for `α = Q(u)^{-1} Q(a)` with `a: A → D` and `u: A' → D` in `F̄`.
    pub fn roof_push(&self, r: &Roof, a: &Mor, u: &Mor, variant: usize) -> Result<Roof> {
        let cat = self.cat();
        if a.src != *r.a() || a.dst != u.dst || !self.f.contains(self.q, u) {
            return Err(Error::InvalidInput("push-forward fraction does not match the roof".into()));
        }
        let (a2, s2) = self.f.ore_push(self.q, &r.s, a, variant)?;
        Ok(Roof { t: r.t.clone(), delta: cat.push_ext(&a2, r.z(), &r.delta), s: cat.compose(u, &s2) })
    }

    /// `γ^*` for `γ = Q(c) Q(v)^{-1}` with `c: E → C` and `v: E → C'` in `F̄`.
    pub fn roof_pull(&self, r: &Roof, c: &Mor, v: &Mor, variant: usize) -> Result<Roof> {
        let cat = self.cat();
        if c.dst != *r.c() || c.src != v.src || !self.f.contains(self.q, v) {
            return Err(Error::InvalidInput("pull-back fraction does not match the roof".into()));
        }
        let (c2, t2) = self.f.ore_pull(self.q, &r.t, c, variant)?;
        Ok(Roof { t: cat.compose(&t2, v), delta: cat.pull_ext(&c2, r.x(), &r.delta), s: r.s.clone() })
    }

    /// Every roof between generators `G_c ⇐ Z ⇢ X ⇐ G_a` with `Z`, `X` in
    /// the universe.
    pub fn enumerate_roofs(&self, c: usize, a: usize) -> Result<Vec<Roof>> {
        let cat = self.cat();
        let (ao, co) = (vec![a], vec![c]);
        let (ac, cc) = (self.q.canonical(&ao), self.q.canonical(&co));
        let (ka, kc) = (self.q.to_canonical(&ao), self.q.from_canonical(&co));
        let mut out = Vec::new();
        for z in self.f.universe() {
            for tm in self.f.members(z, &cc) {
                let t = cat.compose(tm, &kc);
                for x in self.f.universe() {
                    let d = cat.ext_dim(z, x);
                    let Some(deltas) = cat.field().all_vectors(d, ENUM_LIMIT) else { continue };
                    for sm in self.f.members(&ac, x) {
                        let s = cat.compose(&ka, sm);
                        for delta in &deltas {
                            out.push(Roof { t: t.clone(), delta: delta.clone(), s: s.clone() });
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `Ẽ(G_c, G_a)` as classes of roofs with its addition table.
    pub fn etilde_group(&self, c: usize, a: usize) -> Result<EtildeGroup> {
        let cat = self.cat();
        let roofs = self.enumerate_roofs(c, a)?;
        let mut reps: Vec<Roof> = Vec::new();
        let mut class_of = Vec::with_capacity(roofs.len());
        for r in &roofs {
            let mut k = None;
            for (i, rep) in reps.iter().enumerate() {
                if self.roof_equal(rep, r)? {
                    k = Some(i);
                    break;
                }
            }
            class_of.push(match k {
                Some(i) => i,
                None => {
                    reps.push(r.clone());
                    reps.len() - 1
                }
            });
        }
        let find = |r: &Roof, reps: &[Roof]| -> Result<usize> {
            for (i, rep) in reps.iter().enumerate() {
                if self.roof_equal(rep, r)? {
                    return Ok(i);
                }
            }
            Err(Error::Internal("roof outside the enumerated classes".into()))
        };
        let mut add = vec![vec![0; reps.len()]; reps.len()];
        for i in 0..reps.len() {
            for j in 0..reps.len() {
                add[i][j] = find(&self.roof_add(&reps[i], &reps[j])?, &reps)?;
            }
        }
        let (ao, co) = (vec![a], vec![c]);
        let zero = find(&self.zero(&co, &ao), &reps)?;
        let d = cat.ext_dim_gen(c, a);
        let ebar = cat.field().all_vectors(d, ENUM_LIMIT).ok_or_else(|| Error::Unsupported("extension space too large".into()))?;
        let mu = ebar.iter().map(|e| find(&self.mu_bar(&co, &ao, e), &reps)).collect::<Result<Vec<_>>>()?;
        Ok(EtildeGroup { c, a, roofs, class_of, reps, add, zero, ebar, mu })
    }

    /// `s̃([t\δ/s]) = [A → X_1 → … → X_n → C]` with end maps `x_0 ∘ s` and
    /// `t ∘ x_n`, where `X` realizes `δ` over `C̄`.
    pub fn s_tilde<R: Realizer + ?Sized>(&self, r: &R, roof: &Roof) -> Result<Complex> {
        let cat = self.cat();
        let x = realize(r, roof.x(), roof.z(), &roof.delta)?;
        let n = x.n();
        let mut y = x.clone();
        y.terms[0] = roof.a().clone();
        y.terms[n + 1] = roof.c().clone();
        y.diffs[0] = cat.compose(&roof.s, &x.diffs[0]);
        y.diffs[n] = cat.compose(&x.diffs[n], &roof.t);
        Ok(y)
    }
}

/// A finite presentation of `Ẽ(G_c, G_a)`.
#[derive(Clone, Debug)]
pub struct EtildeGroup {
    pub c: usize,
    pub a: usize,
    pub roofs: Vec<Roof>,
    /// Class index of each enumerated roof.
    pub class_of: Vec<usize>,
    /// One representative per class.
    pub reps: Vec<Roof>,
    /// `add[i][j]`: class of `reps[i] + reps[j]`.
    pub add: Vec<Vec<usize>>,
    pub zero: usize,
    /// Elements of `Ē(G_c, G_a)` in enumeration order.
    pub ebar: Vec<Vec<u32>>,
    /// Class of `μ̄` of each element of `ebar`.
    pub mu: Vec<usize>,
}

impl EtildeGroup {
    pub fn order(&self) -> usize {
        self.reps.len()
    }

    /// `μ̄` is injective and onto the classes.
    pub fn mu_bijective(&self) -> bool {
        self.mu_injective() && self.mu.len() == self.reps.len()
    }

    pub fn mu_injective(&self) -> bool {
        let mut seen = vec![false; self.reps.len()];
        for &k in &self.mu {
            if seen[k] {
                return false;
            }
            seen[k] = true;
        }
        true
    }
}

/// `s̄`: realizations over `C̄` obtained by lifting `δ̄` to `E` and applying
/// `p` to a realization in `C`.
pub struct QuotientRealizer<'a, R: Realizer + ?Sized> {
    q: &'a IdealQuotient,
    base: &'a R,
}

impl<'a, R: Realizer + ?Sized> QuotientRealizer<'a, R> {
    pub fn new(q: &'a IdealQuotient, base: &'a R) -> Result<Self> {
        if !q.has_extensions() {
            return Err(Error::Internal("quotient extensions not computed".into()));
        }
        Ok(QuotientRealizer { q, base })
    }
}

impl<R: Realizer + ?Sized> Realizer for QuotientRealizer<'_, R> {
    fn pres(&self) -> &Presentation {
        self.q.category()
    }

    fn realize_gen(&self, c: usize, a: usize, delta: &[u32]) -> Result<Complex> {
        self.realize_general(&vec![a], &vec![c], delta)
    }

    fn realize_general(&self, a: &Obj, c: &Obj, delta: &[u32]) -> Result<Complex> {
        let lifted = self.q.lift_ext(c, a, delta);
        Ok(self.q.project_complex(&realize(self.base, a, c, &lifted)?))
    }
}
