//! Representations of a bound quiver and the morphisms between them.

use crate::error::{Error, Result};
use crate::exactalg::{quotient_with_section, CoordinateSystem, Field, Matrix};

use super::algebra::Algebra;

/// A vector space per vertex and a matrix per arrow
/// (`dims[target] x dims[source]`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Module {
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Module {
    pub fn new(alg: &Algebra, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let q = alg.quiver();
        if dims.len() != q.vertex_count() || maps.len() != q.arrows().len() {
            return Err(Error::DimensionMismatch("module shape does not match the quiver".into()));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] || m.field() != alg.field() {
                return Err(Error::DimensionMismatch(format!("arrow {} has a matrix of the wrong shape", a.name)));
            }
        }
        let m = Module { dims, maps };
        for r in alg.relations() {
            let (_, first) = &r.terms[0];
            let (s, t) = (q.path_source(first), q.path_target(first));
            let mut acc = Matrix::zeros(alg.field(), m.dims[t], m.dims[s]);
            for (c, p) in &r.terms {
                acc.add_scaled(&m.path_action(alg, s, p), *c);
            }
            if !acc.is_zero() {
                return Err(Error::Semantic("module does not satisfy the relations".into()));
            }
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        Module { dims, maps }
    }

    pub fn zero(alg: &Algebra) -> Self {
        let f = alg.field();
        Module {
            dims: vec![0; alg.vertex_count()],
            maps: alg.quiver().arrows().iter().map(|_| Matrix::zeros(f, 0, 0)).collect(),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Action of a left-to-right path starting at `source`: `M(a_m)⋯M(a_1)`.
    pub fn path_action(&self, alg: &Algebra, source: usize, arrows: &[usize]) -> Matrix {
        let mut acc = Matrix::identity(alg.field(), self.dims[source]);
        for &a in arrows {
            acc = self.maps[a].mul(&acc);
        }
        acc
    }

    /// Direct sum with the canonical inclusions and projections.
    pub fn direct_sum(alg: &Algebra, parts: &[Module]) -> (Module, Vec<ModMorphism>, Vec<ModMorphism>) {
        let f = alg.field();
        let nv = alg.vertex_count();
        let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let maps: Vec<Matrix> = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let mut m = Matrix::zeros(f, dims[a.target], dims[a.source]);
                let (mut r0, mut c0) = (0, 0);
                for p in parts {
                    m.set_block(r0, c0, &p.maps[ai]);
                    r0 += p.dims[a.target];
                    c0 += p.dims[a.source];
                }
                m
            })
            .collect();
        let sum = Module { dims: dims.clone(), maps };
        let mut offsets = vec![0usize; nv];
        let mut incl = Vec::new();
        let mut proj = Vec::new();
        for p in parts {
            let mut i_maps = Vec::with_capacity(nv);
            let mut p_maps = Vec::with_capacity(nv);
            for v in 0..nv {
                let mut i = Matrix::zeros(f, dims[v], p.dims[v]);
                i.set_block(offsets[v], 0, &Matrix::identity(f, p.dims[v]));
                p_maps.push(i.transpose());
                i_maps.push(i);
                offsets[v] += p.dims[v];
            }
            incl.push(ModMorphism::new_unchecked(p.clone(), sum.clone(), i_maps));
            proj.push(ModMorphism::new_unchecked(sum.clone(), p.clone(), p_maps));
        }
        (sum, incl, proj)
    }

    /// Vector-space dual on the opposite algebra: transposed arrow matrices.
    pub fn dual(&self, op: &Algebra) -> Result<Module> {
        Module::new(op, self.dims.clone(), self.maps.iter().map(Matrix::transpose).collect())
    }

    /// Radical `Σ im M(α)` at each vertex, as a basis of column vectors.
    pub fn radical_basis(&self, alg: &Algebra) -> Vec<Vec<Vec<u32>>> {
        let q = alg.quiver();
        (0..self.dims.len())
            .map(|v| {
                let mut cols = Vec::new();
                for (ai, a) in q.arrows().iter().enumerate() {
                    if a.target == v {
                        cols.extend(self.maps[ai].columns());
                    }
                }
                let m = Matrix::from_columns(alg.field(), self.dims[v], &cols);
                m.column_space().columns()
            })
            .collect()
    }

    /// Dimension vector of the top `M / rad M`.
    pub fn top_dims(&self, alg: &Algebra) -> Vec<usize> {
        self.radical_basis(alg).iter().zip(&self.dims).map(|(r, &d)| d - r.len()).collect()
    }

    /// Dimension vector of the socle (common kernel of outgoing arrows).
    pub fn socle_dims(&self, alg: &Algebra) -> Vec<usize> {
        let q = alg.quiver();
        (0..self.dims.len())
            .map(|v| {
                let mut stacked = Matrix::zeros(alg.field(), 0, self.dims[v]);
                for (ai, a) in q.arrows().iter().enumerate() {
                    if a.source == v {
                        stacked = stacked.vstack(&self.maps[ai]);
                    }
                }
                self.dims[v] - stacked.rank()
            })
            .collect()
    }
}

/// A module homomorphism, one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModMorphism {
    source: Module,
    target: Module,
    maps: Vec<Matrix>,
}

impl ModMorphism {
    pub fn new(alg: &Algebra, source: Module, target: Module, maps: Vec<Matrix>) -> Result<Self> {
        if maps.len() != alg.vertex_count() {
            return Err(Error::DimensionMismatch("one matrix per vertex expected".into()));
        }
        for (v, m) in maps.iter().enumerate() {
            if m.rows() != target.dims[v] || m.cols() != source.dims[v] {
                return Err(Error::DimensionMismatch(format!("vertex {} matrix has the wrong shape", v + 1)));
            }
        }
        for (ai, a) in alg.quiver().arrows().iter().enumerate() {
            let lhs = maps[a.target].mul(&source.maps[ai]);
            let rhs = target.maps[ai].mul(&maps[a.source]);
            if lhs != rhs {
                return Err(Error::Semantic(format!("morphism does not commute with arrow {}", a.name)));
            }
        }
        Ok(ModMorphism { source, target, maps })
    }

    pub(crate) fn new_unchecked(source: Module, target: Module, maps: Vec<Matrix>) -> Self {
        ModMorphism { source, target, maps }
    }

    pub fn zero(field: Field, source: &Module, target: &Module) -> Self {
        let maps = source.dims.iter().zip(&target.dims).map(|(&s, &t)| Matrix::zeros(field, t, s)).collect();
        ModMorphism { source: source.clone(), target: target.clone(), maps }
    }

    pub fn identity(field: Field, m: &Module) -> Self {
        ModMorphism { source: m.clone(), target: m.clone(), maps: m.dims.iter().map(|&d| Matrix::identity(field, d)).collect() }
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn at(&self, v: usize) -> &Matrix {
        &self.maps[v]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModMorphism) -> ModMorphism {
        assert_eq!(self.target.dims, other.source.dims, "composition of incompatible morphisms");
        ModMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            maps: self.maps.iter().zip(&other.maps).map(|(f, g)| g.mul(f)).collect(),
        }
    }

    pub fn add(&self, other: &ModMorphism) -> ModMorphism {
        ModMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &ModMorphism) -> ModMorphism {
        ModMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, s: u32) -> ModMorphism {
        ModMorphism { source: self.source.clone(), target: self.target.clone(), maps: self.maps.iter().map(|m| m.scale(s)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.maps.iter().all(Matrix::is_identity)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.maps.iter().map(Matrix::rank).collect()
    }

    pub fn is_mono(&self) -> bool {
        self.ranks().iter().zip(&self.source.dims).all(|(r, d)| r == d)
    }

    pub fn is_epi(&self) -> bool {
        self.ranks().iter().zip(&self.target.dims).all(|(r, d)| r == d)
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    /// Entries of all vertex matrices, vertex-major and row-major.
    pub fn flatten(&self) -> Vec<u32> {
        self.maps.iter().flat_map(|m| m.data().iter().copied()).collect()
    }

    pub fn from_flat(field: Field, source: &Module, target: &Module, v: &[u32]) -> ModMorphism {
        let mut maps = Vec::with_capacity(source.dims.len());
        let mut off = 0;
        for (&s, &t) in source.dims.iter().zip(&target.dims) {
            maps.push(Matrix::from_rows(field, t, s, &v[off..off + s * t]));
            off += s * t;
        }
        ModMorphism { source: source.clone(), target: target.clone(), maps }
    }

    pub fn inverse(&self) -> Option<ModMorphism> {
        let maps: Option<Vec<Matrix>> = self.maps.iter().map(Matrix::inverse).collect();
        maps.map(|maps| ModMorphism { source: self.target.clone(), target: self.source.clone(), maps })
    }
}

/// `Hom(M, N)` with a fixed basis and a coordinate map.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Module,
    pub target: Module,
    pub basis: Vec<ModMorphism>,
    coords: CoordinateSystem,
}

impl HomSpace {
    pub fn new(alg: &Algebra, source: &Module, target: &Module) -> Self {
        let basis = hom_basis(alg, source, target);
        let len = flat_len(source, target);
        let cols: Vec<Vec<u32>> = basis.iter().map(ModMorphism::flatten).collect();
        let coords = CoordinateSystem::new(Matrix::from_columns(alg.field(), len, &cols)).expect("hom basis is independent");
        HomSpace { source: source.clone(), target: target.clone(), basis, coords }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coordinates(&self, f: &ModMorphism) -> Vec<u32> {
        self.coords.coordinates(&f.flatten()).expect("morphism lies in the Hom space")
    }

    pub fn morphism(&self, field: Field, coords: &[u32]) -> ModMorphism {
        let mut acc = ModMorphism::zero(field, &self.source, &self.target);
        for (b, &c) in self.basis.iter().zip(coords) {
            if c != 0 {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }
}

fn flat_len(m: &Module, n: &Module) -> usize {
    m.dims.iter().zip(&n.dims).map(|(a, b)| a * b).sum()
}

/// Basis of `Hom(M, N)`: the null space of the stacked commuting-square
/// constraints, in the order produced by [`Matrix::kernel_basis`].
pub fn hom_basis(alg: &Algebra, m: &Module, n: &Module) -> Vec<ModMorphism> {
    let f = alg.field();
    let nv = alg.vertex_count();
    let mut offsets = Vec::with_capacity(nv);
    let mut total = 0;
    for v in 0..nv {
        offsets.push(total);
        total += m.dims[v] * n.dims[v];
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (ai, a) in alg.quiver().arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let ma = &m.maps[ai];
        let na = &n.maps[ai];
        // (φ_t M(a) - N(a) φ_s)[r, c] = 0
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut row = vec![0u32; total];
                for k in 0..m.dims[t] {
                    let idx = offsets[t] + r * m.dims[t] + k;
                    row[idx] = f.add(row[idx], ma.get(k, c));
                }
                for k in 0..n.dims[s] {
                    let idx = offsets[s] + k * m.dims[s] + c;
                    row[idx] = f.sub(row[idx], na.get(r, k));
                }
                rows.push(row);
            }
        }
    }
    let flat: Vec<u32> = rows.iter().flatten().copied().collect();
    let constraints = Matrix::from_rows(f, rows.len(), total, &flat);
    constraints.kernel_basis().into_iter().map(|v| ModMorphism::from_flat(f, m, n, &v)).collect()
}

/// Kernel of `f` with its inclusion.
pub fn kernel(alg: &Algebra, f: &ModMorphism) -> (Module, ModMorphism) {
    let field = alg.field();
    let bases: Vec<Matrix> = f.maps.iter().map(Matrix::kernel_matrix).collect();
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let image = f.source.maps[ai].mul(&bases[a.source]);
            bases[a.target].solve_matrix(&image).expect("kernel is a submodule")
        })
        .collect();
    let k = Module { dims, maps };
    let incl = ModMorphism { source: k.clone(), target: f.source.clone(), maps: bases };
    debug_assert!(incl.maps.iter().all(|m| m.field() == field));
    (k, incl)
}

/// Cokernel of `f` with its projection.
pub fn cokernel(alg: &Algebra, f: &ModMorphism) -> (Module, ModMorphism) {
    let field = alg.field();
    let quots: Vec<_> = f
        .maps
        .iter()
        .zip(&f.target.dims)
        .map(|(m, &d)| quotient_with_section(field, d, &m.columns()).expect("shapes agree"))
        .collect();
    let dims: Vec<usize> = quots.iter().map(|q| q.dim()).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| quots[a.target].projection.mul(&f.target.maps[ai]).mul(&quots[a.source].section))
        .collect();
    let c = Module { dims, maps };
    let proj = ModMorphism { source: f.target.clone(), target: c.clone(), maps: quots.into_iter().map(|q| q.projection).collect() };
    (c, proj)
}

/// Image of `f`, with the epi onto it and the inclusion into the target.
pub fn image(alg: &Algebra, f: &ModMorphism) -> (Module, ModMorphism, ModMorphism) {
    let bases: Vec<Matrix> = f.maps.iter().map(Matrix::column_space).collect();
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let moved = f.target.maps[ai].mul(&bases[a.source]);
            bases[a.target].solve_matrix(&moved).expect("image is a submodule")
        })
        .collect();
    let im = Module { dims, maps };
    let epi_maps = f.maps.iter().zip(&bases).map(|(m, b)| b.solve_matrix(m).expect("lies in the image")).collect();
    let epi = ModMorphism { source: f.source.clone(), target: im.clone(), maps: epi_maps };
    let incl = ModMorphism { source: im.clone(), target: f.target.clone(), maps: bases };
    (im, epi, incl)
}

/// Whether `M --f--> N --g--> L` is exact at `N` (vertexwise rank check).
pub fn exact_at(f: &ModMorphism, g: &ModMorphism) -> bool {
    if !f.then(g).is_zero() {
        return false;
    }
    let (rf, rg) = (f.ranks(), g.ranks());
    f.target.dims.iter().enumerate().all(|(v, &d)| rf[v] + rg[v] == d)
}

/// Finds `φ: X → Y` with `g ∘ φ = h`, where `g: Y → Z` and `h: X → Z`.
pub fn factor_through(alg: &Algebra, h: &ModMorphism, g: &ModMorphism) -> Option<ModMorphism> {
    let space = HomSpace::new(alg, h.source(), g.source());
    let cols: Vec<Vec<u32>> = space.basis.iter().map(|b| b.then(g).flatten()).collect();
    let a = Matrix::from_columns(alg.field(), h.flatten().len(), &cols);
    let x = a.solve_vec(&h.flatten())?;
    Some(space.morphism(alg.field(), &x))
}

/// Finds `φ: Y → Z` with `φ ∘ g = h`, where `g: X → Y` and `h: X → Z`.
pub fn factor_through_source(alg: &Algebra, h: &ModMorphism, g: &ModMorphism) -> Option<ModMorphism> {
    let space = HomSpace::new(alg, g.target(), h.target());
    let cols: Vec<Vec<u32>> = space.basis.iter().map(|b| g.then(b).flatten()).collect();
    let a = Matrix::from_columns(alg.field(), h.flatten().len(), &cols);
    let x = a.solve_vec(&h.flatten())?;
    Some(space.morphism(alg.field(), &x))
}
