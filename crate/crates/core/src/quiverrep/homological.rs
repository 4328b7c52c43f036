//! Projective covers and resolutions, `Ext^n` with cocycle representatives,
//! functoriality, Yoneda classes of exact sequences and splicing.

use crate::error::{Error, Result};
use crate::exactalg::{quotient_with_section, CoordinateSystem, Matrix, Quotient};

use super::algebra::Algebra;
use super::module::{cokernel, exact_at, factor_through, factor_through_source, kernel, HomSpace, ModMorphism, Module};
use super::standard::{standard_module, StandardKind};

/// Projective cover `P ↠ M`. The summands of `P` are ordered by vertex.
pub fn projective_cover(alg: &Algebra, m: &Module) -> Result<ModMorphism> {
    let f = alg.field();
    let nv = alg.vertex_count();
    let rad = m.radical_basis(alg);
    let mut copies: Vec<(usize, Vec<u32>)> = Vec::new();
    for v in 0..nv {
        let q = quotient_with_section(f, m.dims()[v], &rad[v])?;
        for k in 0..q.dim() {
            copies.push((v, q.section.column(k)));
        }
    }
    let mut parts = Vec::with_capacity(copies.len());
    for (v, _) in &copies {
        parts.push(standard_module(alg, StandardKind::Projective, v + 1)?);
    }
    let (p, _, _) = Module::direct_sum(alg, &parts);
    let maps = (0..nv)
        .map(|w| {
            let mut cols = Vec::new();
            for (v, gen) in &copies {
                for path in alg.basis_paths(*v, w) {
                    cols.push(m.path_action(alg, *v, &path.arrows).mul_vec(gen));
                }
            }
            Matrix::from_columns(f, m.dims()[w], &cols)
        })
        .collect();
    ModMorphism::new(alg, p, m.clone(), maps)
}

/// `P_len → … → P_0 ↠ M`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: Module,
    pub terms: Vec<Module>,
    pub augmentation: ModMorphism,
    /// `differentials[k - 1] = d_k : P_k → P_{k-1}`.
    pub differentials: Vec<ModMorphism>,
}

impl Resolution {
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn differential(&self, k: usize) -> &ModMorphism {
        &self.differentials[k - 1]
    }
}

pub fn resolution(alg: &Algebra, m: &Module, length: usize) -> Result<Resolution> {
    let aug = projective_cover(alg, m)?;
    let mut terms = vec![aug.source().clone()];
    let mut differentials = Vec::with_capacity(length);
    let (_, mut incl) = kernel(alg, &aug);
    for _ in 0..length {
        let cover = projective_cover(alg, incl.source())?;
        let d = cover.then(&incl);
        terms.push(d.source().clone());
        let (_, next) = kernel(alg, &d);
        differentials.push(d);
        incl = next;
    }
    let res = Resolution { module: m.clone(), terms, augmentation: aug, differentials };
    debug_assert!(res.is_exact());
    Ok(res)
}

impl Resolution {
    /// Rank bookkeeping at every inner term.
    pub fn is_exact(&self) -> bool {
        if !self.augmentation.is_epi() {
            return false;
        }
        if let Some(d1) = self.differentials.first() {
            if !exact_at(d1, &self.augmentation) {
                return false;
            }
        }
        self.differentials.windows(2).all(|w| exact_at(&w[1], &w[0]))
    }
}

/// An element of `Ext^n(C, A)` with a cocycle `P_n → A`.
#[derive(Clone, Debug)]
pub struct ExtElement {
    pub n: usize,
    pub end_c: Module,
    pub end_a: Module,
    pub coords: Vec<u32>,
    pub cocycle: ModMorphism,
}

/// `Ext^n(C, A)` as cohomology of `Hom(P_•, A)` at degree `n`.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub n: usize,
    pub resolution: Resolution,
    pub a: Module,
    hom_n: HomSpace,
    cycles: Option<CoordinateSystem>,
    quotient: Quotient,
}

pub fn ext_group(alg: &Algebra, n: usize, c: &Module, a: &Module) -> Result<ExtSpace> {
    let res = resolution(alg, c, n + 1)?;
    ExtSpace::with_resolution(alg, &res, n, a)
}

impl ExtSpace {
    pub fn with_resolution(alg: &Algebra, res: &Resolution, n: usize, a: &Module) -> Result<Self> {
        if n == 0 {
            return Err(Error::DegreeMismatch("Ext degree must be at least 1".into()));
        }
        if res.length() < n + 1 {
            return Err(Error::DegreeMismatch(format!("resolution of length {} is too short for Ext^{n}", res.length())));
        }
        let f = alg.field();
        let hom_n = HomSpace::new(alg, &res.terms[n], a);
        let hom_next_len = res.terms[n + 1].dims().iter().zip(a.dims()).map(|(x, y)| x * y).sum();
        let d_next = res.differential(n + 1);
        let cols: Vec<Vec<u32>> = hom_n.basis.iter().map(|b| d_next.then(b).flatten()).collect();
        let cocycle_map = Matrix::from_columns(f, hom_next_len, &cols);
        let z = cocycle_map.kernel_basis();
        let hom_prev = HomSpace::new(alg, &res.terms[n - 1], a);
        let d_n = res.differential(n);
        let (cycles, bounds_in_z) = if z.is_empty() {
            (None, Vec::new())
        } else {
            let cs = CoordinateSystem::new(Matrix::from_columns(f, hom_n.dim(), &z))?;
            let bz = hom_prev
                .basis
                .iter()
                .map(|b| {
                    let h = hom_n.coordinates(&d_n.then(b));
                    cs.coordinates(&h).ok_or_else(|| Error::Internal("coboundary is not a cocycle".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            (Some(cs), bz)
        };
        let quotient = quotient_with_section(f, z.len(), &bounds_in_z)?;
        Ok(ExtSpace { n, resolution: res.clone(), a: a.clone(), hom_n, cycles, quotient })
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn c(&self) -> &Module {
        &self.resolution.module
    }

    /// Class of a cocycle `P_n → A`.
    pub fn class_of(&self, cocycle: &ModMorphism) -> Result<Vec<u32>> {
        let h = self.hom_n.coordinates(cocycle);
        match &self.cycles {
            None if h.iter().all(|&x| x == 0) => Ok(Vec::new()),
            None => Err(Error::Internal("not a cocycle".into())),
            Some(cs) => {
                let z = cs.coordinates(&h).ok_or_else(|| Error::Internal("not a cocycle".into()))?;
                Ok(self.quotient.project(&z))
            }
        }
    }

    /// The chosen cocycle representative of a class.
    pub fn cocycle(&self, alg: &Algebra, coords: &[u32]) -> ModMorphism {
        let f = alg.field();
        match &self.cycles {
            None => ModMorphism::zero(f, &self.resolution.terms[self.n], &self.a),
            Some(cs) => {
                let z = self.quotient.lift(coords);
                let h = cs.basis().mul_vec(&z);
                self.hom_n.morphism(f, &h)
            }
        }
    }

    pub fn element(&self, alg: &Algebra, coords: &[u32]) -> ExtElement {
        ExtElement {
            n: self.n,
            end_c: self.c().clone(),
            end_a: self.a.clone(),
            coords: coords.to_vec(),
            cocycle: self.cocycle(alg, coords),
        }
    }

    pub fn basis(&self, alg: &Algebra) -> Vec<ExtElement> {
        (0..self.dim())
            .map(|k| {
                let mut e = vec![0u32; self.dim()];
                e[k] = 1;
                self.element(alg, &e)
            })
            .collect()
    }
}

/// `a_*δ` for `a: A → A'`; `target` is `Ext^n(C, A')` over the same
/// resolution.
pub fn push(alg: &Algebra, source: &ExtSpace, coords: &[u32], a: &ModMorphism, target: &ExtSpace) -> Result<Vec<u32>> {
    check_push(source, a, target)?;
    target.class_of(&source.cocycle(alg, coords).then(a))
}

fn check_push(source: &ExtSpace, a: &ModMorphism, target: &ExtSpace) -> Result<()> {
    if source.n != target.n {
        return Err(Error::DegreeMismatch(format!("Ext^{} against Ext^{}", source.n, target.n)));
    }
    if a.source() != &source.a || a.target() != &target.a || source.c() != target.c() {
        return Err(Error::DimensionMismatch("push-forward endpoints do not match".into()));
    }
    Ok(())
}

/// Matrix of `a_*` on coordinates.
pub fn push_matrix(alg: &Algebra, source: &ExtSpace, a: &ModMorphism, target: &ExtSpace) -> Result<Matrix> {
    check_push(source, a, target)?;
    let cols = (0..source.dim())
        .map(|k| {
            let mut e = vec![0u32; source.dim()];
            e[k] = 1;
            target.class_of(&source.cocycle(alg, &e).then(a))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(alg.field(), target.dim(), &cols))
}

/// Chain map `P'_• → P_•` lifting `c: C' → C`, components `0..=upto`.
pub fn comparison_map(alg: &Algebra, src: &Resolution, dst: &Resolution, c: &ModMorphism, upto: usize) -> Result<Vec<ModMorphism>> {
    let no_lift = || Error::Internal("comparison map does not lift".into());
    let mut out = Vec::with_capacity(upto + 1);
    let h0 = src.augmentation.then(c);
    out.push(factor_through(alg, &h0, &dst.augmentation).ok_or_else(no_lift)?);
    for k in 1..=upto {
        let h = src.differential(k).then(&out[k - 1]);
        out.push(factor_through(alg, &h, dst.differential(k)).ok_or_else(no_lift)?);
    }
    Ok(out)
}

/// `c^*δ` for `c: C' → C`.
pub fn pull(alg: &Algebra, source: &ExtSpace, coords: &[u32], c: &ModMorphism, target: &ExtSpace) -> Result<Vec<u32>> {
    let m = pull_matrix(alg, source, c, target)?;
    Ok(m.mul_vec(coords))
}

/// Matrix of `c^*` on coordinates.
pub fn pull_matrix(alg: &Algebra, source: &ExtSpace, c: &ModMorphism, target: &ExtSpace) -> Result<Matrix> {
    if source.n != target.n {
        return Err(Error::DegreeMismatch(format!("Ext^{} against Ext^{}", source.n, target.n)));
    }
    if c.target() != source.c() || c.source() != target.c() || source.a != target.a {
        return Err(Error::DimensionMismatch("pull-back endpoints do not match".into()));
    }
    let n = source.n;
    let chain = comparison_map(alg, &target.resolution, &source.resolution, c, n)?;
    let cols = (0..source.dim())
        .map(|k| {
            let mut e = vec![0u32; source.dim()];
            e[k] = 1;
            target.class_of(&chain[n].then(&source.cocycle(alg, &e)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(alg.field(), target.dim(), &cols))
}

/// Checks that `0 → X_0 → … → X_{n+1} → 0` is exact; the error names the
/// first failing term.
pub fn check_exact_sequence(seq: &[ModMorphism]) -> Result<()> {
    let Some(first) = seq.first() else {
        return Err(Error::NotExact { position: 0 });
    };
    let euler: i64 = {
        let mut terms: Vec<&Module> = seq.iter().map(ModMorphism::source).collect();
        terms.push(seq.last().expect("nonempty").target());
        terms.iter().enumerate().map(|(i, m)| if i % 2 == 0 { m.total_dim() as i64 } else { -(m.total_dim() as i64) }).sum()
    };
    if !first.is_mono() {
        return Err(Error::NotExact { position: 0 });
    }
    for (i, w) in seq.windows(2).enumerate() {
        if !exact_at(&w[0], &w[1]) {
            return Err(Error::NotExact { position: i + 1 });
        }
    }
    if !seq.last().expect("nonempty").is_epi() {
        return Err(Error::NotExact { position: seq.len() });
    }
    debug_assert_eq!(euler, 0);
    Ok(())
}

/// Class in `Ext^n(C, A)` of an exact sequence `A → X_1 → … → X_n → C`
/// given by its `n+1` maps, computed by lifting `id_C` along `P_• → X_•`.
pub fn yoneda_class(alg: &Algebra, seq: &[ModMorphism], ext: &ExtSpace) -> Result<Vec<u32>> {
    let n = seq.len() - 1;
    if n != ext.n {
        return Err(Error::DegreeMismatch(format!("sequence of length {} for Ext^{}", n + 2, ext.n)));
    }
    check_exact_sequence(seq)?;
    if seq[n].target() != ext.c() || seq[0].source() != &ext.a {
        return Err(Error::DimensionMismatch("sequence ends do not match the Ext space".into()));
    }
    let lift = lift_identity(alg, seq, &ext.resolution)?;
    ext.class_of(&lift[n])
}

/// Components `g_k: P_k → X_{n-k}` of a lift of `id_C`.
pub fn lift_identity(alg: &Algebra, seq: &[ModMorphism], res: &Resolution) -> Result<Vec<ModMorphism>> {
    lift_map(alg, seq, res, &ModMorphism::identity(alg.field(), &res.module))
}

/// Components `g_k: P_k → X_{n-k}` of a lift of `c: C' → C`, where `res`
/// resolves `C'` and the sequence ends in `C`.
pub fn lift_map(alg: &Algebra, seq: &[ModMorphism], res: &Resolution, c: &ModMorphism) -> Result<Vec<ModMorphism>> {
    let n = seq.len() - 1;
    let no_lift = || Error::Internal("map does not lift to the sequence".into());
    let mut g = Vec::with_capacity(n + 1);
    g.push(factor_through(alg, &res.augmentation.then(c), &seq[n]).ok_or_else(no_lift)?);
    for k in 1..=n {
        let h = res.differential(k).then(&g[k - 1]);
        g.push(factor_through(alg, &h, &seq[n - k]).ok_or_else(no_lift)?);
    }
    Ok(g)
}

/// Exact sequence `A → E → P_{n-2} → … → P_0 → C` whose class is the given
/// one, `E` being the pushout of `P_n → P_{n-1}` along the cocycle.
pub fn splice(alg: &Algebra, ext: &ExtSpace, coords: &[u32]) -> Result<Vec<ModMorphism>> {
    let n = ext.n;
    let res = &ext.resolution;
    let phi = ext.cocycle(alg, coords);
    let p_prev = &res.terms[n - 1];
    let (_, incl, proj) = Module::direct_sum(alg, &[ext.a.clone(), p_prev.clone()]);
    let psi = phi.then(&incl[0]).sub(&res.differential(n).then(&incl[1]));
    let (_, pi) = cokernel(alg, &psi);
    let mut seq = vec![incl[0].then(&pi)];
    let onward = if n >= 2 { res.differential(n - 1).clone() } else { res.augmentation.clone() };
    let h = proj[1].then(&onward);
    let out = factor_through_source(alg, &h, &pi).ok_or_else(|| Error::Internal("pushout map does not descend".into()))?;
    seq.push(out);
    for k in (1..n - 1).rev() {
        seq.push(res.differential(k).clone());
    }
    if n >= 2 {
        seq.push(res.augmentation.clone());
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Field;
    use crate::quiverrep::algebra::{Quiver, Relation};

    fn a4() -> Algebra {
        let f = Field::new(2).unwrap();
        let q = Quiver::new(4, &[("a", 1, 2), ("b", 2, 3), ("c", 3, 4)]).unwrap();
        let r = Relation::parse(&q, f, "abc").unwrap();
        Algebra::new(f, q, vec![r], 16).unwrap()
    }

    fn std(alg: &Algebra, k: StandardKind, v: usize) -> Module {
        standard_module(alg, k, v).unwrap()
    }

    #[test]
    fn cover_of_simple() {
        let alg = a4();
        let s1 = std(&alg, StandardKind::Simple, 1);
        let cov = projective_cover(&alg, &s1).unwrap();
        assert_eq!(cov.source().dims(), &[1, 1, 1, 0]);
        let (k, _) = kernel(&alg, &cov);
        assert_eq!(k.dims(), &[0, 1, 1, 0]);
        let p2 = std(&alg, StandardKind::Projective, 2);
        assert!(projective_cover(&alg, &p2).unwrap().is_iso());
        assert!(projective_cover(&alg, &Module::zero(&alg)).unwrap().source().is_zero());
    }

    #[test]
    fn resolution_of_s1() {
        let alg = a4();
        let res = resolution(&alg, &std(&alg, StandardKind::Simple, 1), 2).unwrap();
        let dims: Vec<&[usize]> = res.terms.iter().map(|t| t.dims()).collect();
        assert_eq!(dims, vec![&[1, 1, 1, 0][..], &[0, 1, 1, 1][..], &[0, 0, 0, 1][..]]);
        assert!(res.is_exact());
        let res = resolution(&alg, &std(&alg, StandardKind::Projective, 3), 2).unwrap();
        assert!(res.terms[1].is_zero() && res.terms[2].is_zero());
    }

    #[test]
    fn ext_dimensions() {
        let alg = a4();
        let s1 = std(&alg, StandardKind::Simple, 1);
        let s2 = std(&alg, StandardKind::Simple, 2);
        let s4 = std(&alg, StandardKind::Simple, 4);
        let p1 = std(&alg, StandardKind::Projective, 1);
        assert_eq!(ext_group(&alg, 2, &s1, &s4).unwrap().dim(), 1);
        assert_eq!(ext_group(&alg, 2, &p1, &s4).unwrap().dim(), 0);
        assert_eq!(ext_group(&alg, 1, &s1, &s2).unwrap().dim(), 1);
    }

    #[test]
    fn hand_sequence_has_nonzero_class() {
        let alg = a4();
        let s1 = std(&alg, StandardKind::Simple, 1);
        let s4 = std(&alg, StandardKind::Simple, 4);
        let p1 = std(&alg, StandardKind::Projective, 1);
        let p2 = std(&alg, StandardKind::Projective, 2);
        let f = alg.field();
        let h = |m: &Module, n: &Module| crate::quiverrep::module::hom_basis(&alg, m, n)[0].clone();
        let seq = vec![h(&s4, &p2), h(&p2, &p1), h(&p1, &s1)];
        let ext = ext_group(&alg, 2, &s1, &s4).unwrap();
        assert_eq!(yoneda_class(&alg, &seq, &ext).unwrap(), vec![1]);
        let bad = vec![ModMorphism::zero(f, &s4, &p2), h(&p2, &p1), h(&p1, &s1)];
        assert!(matches!(yoneda_class(&alg, &bad, &ext), Err(Error::NotExact { .. })));
    }

    #[test]
    fn splice_round_trip() {
        let alg = a4();
        let s1 = std(&alg, StandardKind::Simple, 1);
        let s4 = std(&alg, StandardKind::Simple, 4);
        let ext = ext_group(&alg, 2, &s1, &s4).unwrap();
        let seq = splice(&alg, &ext, &[1]).unwrap();
        assert_eq!(yoneda_class(&alg, &seq, &ext).unwrap(), vec![1]);
    }

    #[test]
    fn functoriality() {
        let alg = a4();
        let s1 = std(&alg, StandardKind::Simple, 1);
        let s4 = std(&alg, StandardKind::Simple, 4);
        let p3 = std(&alg, StandardKind::Projective, 3);
        let f = alg.field();
        let ext = ext_group(&alg, 2, &s1, &s4).unwrap();
        let id = ModMorphism::identity(f, &s4);
        assert_eq!(push(&alg, &ext, &[1], &id, &ext).unwrap(), vec![1]);
        let zero = ModMorphism::zero(f, &s4, &s4);
        assert_eq!(push(&alg, &ext, &[1], &zero, &ext).unwrap(), vec![0]);
        let id_c = ModMorphism::identity(f, &s1);
        assert_eq!(pull(&alg, &ext, &[1], &id_c, &ext).unwrap(), vec![1]);
        // S_4 ↪ P_3 pushes the generator to the class of the spliced pushout.
        let incl = crate::quiverrep::module::hom_basis(&alg, &s4, &p3)[0].clone();
        let target = ExtSpace::with_resolution(&alg, &ext.resolution, 2, &p3).unwrap();
        let pushed = push(&alg, &ext, &[1], &incl, &target).unwrap();
        assert_eq!(target.dim(), 1);
        assert_eq!(pushed, vec![1]);
    }
}
