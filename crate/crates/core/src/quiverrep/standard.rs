//! Simples, indecomposable projectives and injectives, and interval modules.

use crate::error::{Error, Result};
use crate::exactalg::Matrix;

use super::algebra::Algebra;
use super::module::Module;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardKind {
    Simple,
    Projective,
    Injective,
}

/// `S_i`, `P_i` (paths starting at `i`) or `I_i` (dual of paths ending at
/// `i`). `vertex` is 1-based.
pub fn standard_module(alg: &Algebra, kind: StandardKind, vertex: usize) -> Result<Module> {
    let nv = alg.vertex_count();
    if vertex == 0 || vertex > nv {
        return Err(Error::Semantic(format!("vertex {vertex} out of range 1..{nv}")));
    }
    let i = vertex - 1;
    let f = alg.field();
    let arrows = alg.quiver().arrows();
    let (dims, maps) = match kind {
        StandardKind::Simple => {
            let dims: Vec<usize> = (0..nv).map(|v| usize::from(v == i)).collect();
            let maps = arrows.iter().map(|a| Matrix::zeros(f, dims[a.target], dims[a.source])).collect();
            (dims, maps)
        }
        StandardKind::Projective => {
            let dims = (0..nv).map(|v| alg.pair_dim(i, v)).collect();
            let maps = (0..arrows.len()).map(|a| alg.right_multiplication(i, a)).collect();
            (dims, maps)
        }
        StandardKind::Injective => {
            let dims = (0..nv).map(|v| alg.pair_dim(v, i)).collect();
            let maps = (0..arrows.len()).map(|a| alg.left_multiplication(i, a).transpose()).collect();
            (dims, maps)
        }
    };
    Module::new(alg, dims, maps)
}

/// The module written `top/…/socle`: one dimension at each listed vertex
/// (1-based), identity along the unique arrow between consecutive vertices
/// and zero elsewhere.
pub fn interval_module(alg: &Algebra, vertices: &[usize]) -> Result<Module> {
    let nv = alg.vertex_count();
    let f = alg.field();
    let mut dims = vec![0usize; nv];
    for &v in vertices {
        if v == 0 || v > nv {
            return Err(Error::Semantic(format!("vertex {v} out of range 1..{nv}")));
        }
        if dims[v - 1] != 0 {
            return Err(Error::Semantic(format!("vertex {v} repeated in composition series")));
        }
        dims[v - 1] = 1;
    }
    let arrows = alg.quiver().arrows();
    let mut maps: Vec<Matrix> = arrows.iter().map(|a| Matrix::zeros(f, dims[a.target], dims[a.source])).collect();
    for w in vertices.windows(2) {
        let (u, v) = (w[0] - 1, w[1] - 1);
        let candidates: Vec<usize> = (0..arrows.len()).filter(|&k| arrows[k].source == u && arrows[k].target == v).collect();
        match candidates.as_slice() {
            [k] => maps[*k] = Matrix::identity(f, 1),
            [] => return Err(Error::Semantic(format!("no arrow {} -> {} for composition series", w[0], w[1]))),
            _ => return Err(Error::Semantic(format!("several arrows {} -> {}; composition series is ambiguous", w[0], w[1]))),
        }
    }
    Module::new(alg, dims, maps)
}
