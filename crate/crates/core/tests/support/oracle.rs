//! An independent oracle for the a4 fixtures. It shares no code with the
//! library: modules are explicit representations of 1 → 2 → 3 → 4 with
//! abc = 0, Hom spaces are null spaces of the intertwining equations, Ext²
//! comes from syzygies, and realizations are found by enumerating exact
//! sequences. The binary's answers must agree.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

// ---------------------------------------------------------------------------
// Linear algebra over F_p, row-major dense matrices.

#[derive(Clone, Debug, PartialEq, Eq)]
struct Mat {
    r: usize,
    c: usize,
    a: Vec<u32>,
}

impl Mat {
    fn zero(r: usize, c: usize) -> Mat {
        Mat { r, c, a: vec![0; r * c] }
    }

    fn eye(n: usize) -> Mat {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.a[i * n + i] = 1;
        }
        m
    }

    fn at(&self, i: usize, j: usize) -> u32 {
        self.a[i * self.c + j]
    }

    fn mul(&self, o: &Mat, p: u32) -> Mat {
        assert_eq!(self.c, o.r);
        let mut m = Mat::zero(self.r, o.c);
        for i in 0..self.r {
            for k in 0..self.c {
                let x = self.at(i, k);
                if x == 0 {
                    continue;
                }
                for j in 0..o.c {
                    m.a[i * o.c + j] = (m.a[i * o.c + j] + x * o.at(k, j)) % p;
                }
            }
        }
        m
    }
}

fn inv(x: u32, p: u32) -> u32 {
    (1..p).find(|y| x * y % p == 1).unwrap()
}

/// Row reduction; returns the pivot columns.
fn reduce(rows: &mut [Vec<u32>], p: u32) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][col] != 0) else { continue };
        rows.swap(r, k);
        let s = inv(rows[r][col], p);
        for x in rows[r].iter_mut() {
            *x = *x * s % p;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][col] != 0 {
                let f = rows[k][col];
                for j in 0..ncols {
                    rows[k][j] = (rows[k][j] + (p - f) * rows[r][j]) % p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

fn rank(vs: &[Vec<u32>], p: u32) -> usize {
    let mut rows = vs.to_vec();
    reduce(&mut rows, p).len()
}

/// Basis of `{x : Σ_j eqs[i][j] x_j = 0}`.
fn null_space(eqs: &[Vec<u32>], n: usize, p: u32) -> Vec<Vec<u32>> {
    let mut rows = eqs.to_vec();
    let pivots = reduce(&mut rows, p);
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0; n];
            x[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = (p - rows[r][f]) % p;
            }
            x
        })
        .collect()
}

/// Does `target` lie in the span of `vs`?
fn in_span(vs: &[Vec<u32>], target: &[u32], p: u32) -> bool {
    let mut with = vs.to_vec();
    with.push(target.to_vec());
    rank(&with, p) == rank(vs, p)
}

fn all_vectors(d: usize, p: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out.into_iter().flat_map(|v| (0..p).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

// ---------------------------------------------------------------------------
// Representations of 1 → 2 → 3 → 4.

const ARROWS: [(usize, usize); 3] = [(0, 1), (1, 2), (2, 3)];

#[derive(Clone, Debug)]
struct Rep {
    dims: [usize; 4],
    maps: [Mat; 3],
}

/// The interval module with top `i` and socle `j` (1-based).
fn interval(i: usize, j: usize) -> Rep {
    let mut dims = [0; 4];
    for d in dims.iter_mut().take(j).skip(i - 1) {
        *d = 1;
    }
    let maps = ARROWS.map(|(s, t)| if dims[s] == 1 && dims[t] == 1 { Mat::eye(1) } else { Mat::zero(dims[t], dims[s]) });
    Rep { dims, maps }
}

fn parse(label: &str) -> Rep {
    let v: Vec<usize> = label.split('/').map(|x| x.parse().unwrap()).collect();
    interval(v[0], *v.last().unwrap())
}

fn sum(ms: &[Rep]) -> Rep {
    let mut dims = [0; 4];
    for m in ms {
        for v in 0..4 {
            dims[v] += m.dims[v];
        }
    }
    let maps = ARROWS.map(|(s, t)| {
        let mut out = Mat::zero(dims[t], dims[s]);
        let (mut r0, mut c0) = (0, 0);
        for m in ms {
            let k = ARROWS.iter().position(|&a| a == (s, t)).unwrap();
            for i in 0..m.dims[t] {
                for j in 0..m.dims[s] {
                    out.a[(r0 + i) * dims[s] + c0 + j] = m.maps[k].at(i, j);
                }
            }
            r0 += m.dims[t];
            c0 += m.dims[s];
        }
        out
    });
    Rep { dims, maps }
}

/// A morphism as one matrix per vertex.
type Hom = [Mat; 4];

fn unflatten(m: &Rep, n: &Rep, x: &[u32]) -> Hom {
    let mut off = 0;
    std::array::from_fn(|v| {
        let (r, c) = (n.dims[v], m.dims[v]);
        let a = x[off..off + r * c].to_vec();
        off += r * c;
        Mat { r, c, a }
    })
}

fn flatten(f: &Hom) -> Vec<u32> {
    f.iter().flat_map(|m| m.a.clone()).collect()
}

/// Basis of Hom(M, N): `f_t M_α = N_α f_s` for every arrow.
fn hom_basis(m: &Rep, n: &Rep, p: u32) -> Vec<Hom> {
    let offs: Vec<usize> = (0..4).scan(0, |o, v| {
        let here = *o;
        *o += n.dims[v] * m.dims[v];
        Some(here)
    }).collect();
    let total: usize = (0..4).map(|v| n.dims[v] * m.dims[v]).sum();
    let var = |v: usize, i: usize, j: usize| offs[v] + i * m.dims[v] + j;
    let mut eqs = Vec::new();
    for (k, &(s, t)) in ARROWS.iter().enumerate() {
        // Entry (i, j) of f_t M_α − N_α f_s, an n_t × m_s matrix.
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                let mut e = vec![0u32; total];
                for l in 0..m.dims[t] {
                    e[var(t, i, l)] = (e[var(t, i, l)] + m.maps[k].at(l, j)) % p;
                }
                for l in 0..n.dims[s] {
                    e[var(s, l, j)] = (e[var(s, l, j)] + p - n.maps[k].at(i, l)) % p;
                }
                eqs.push(e);
            }
        }
    }
    null_space(&eqs, total, p).iter().map(|x| unflatten(m, n, x)).collect()
}

/// `g ∘ f`.
fn compose(f: &Hom, g: &Hom, p: u32) -> Hom {
    std::array::from_fn(|v| g[v].mul(&f[v], p))
}

fn combination(basis: &[Hom], coeffs: &[u32], p: u32) -> Hom {
    let mut out = basis[0].clone();
    for (v, m) in out.iter_mut().enumerate() {
        for (x, y) in m.a.iter_mut().enumerate() {
            *y = basis.iter().zip(coeffs).map(|(b, &c)| b[v].a[x] * c).sum::<u32>() % p;
        }
    }
    out
}

fn mat_rank(m: &Mat, p: u32) -> usize {
    let rows: Vec<Vec<u32>> = (0..m.r).map(|i| (0..m.c).map(|j| m.at(i, j)).collect()).collect();
    if m.c == 0 {
        0
    } else {
        rank(&rows, p)
    }
}

/// Is `f` injective at every vertex?
fn is_mono(m: &Rep, f: &Hom, p: u32) -> bool {
    (0..4).all(|v| mat_rank(&f[v], p) == m.dims[v])
}

// ---------------------------------------------------------------------------
// Ext² through syzygies.

/// The projective cover of M and the kernel inclusion Ω(M) → P(M).
fn syzygy(m: &Rep, p: u32) -> (Rep, Rep, Hom) {
    if m.dims.iter().all(|&d| d == 0) {
        let z = sum(&[]);
        return (z.clone(), z, std::array::from_fn(|_| Mat::zero(0, 0)));
    }
    // Tops of M: vertices not hit by an incoming arrow, counted with
    // multiplicity.
    let mut tops = Vec::new();
    for v in 0..4 {
        let hit = if v == 0 { 0 } else { mat_rank(&m.maps[v - 1], p) };
        for _ in 0..m.dims[v] - hit {
            tops.push(interval(v + 1, (v + 3).min(4)));
        }
    }
    let cover = sum(&tops);
    // A surjection P → M among all morphisms.
    let basis = hom_basis(&cover, m, p);
    let pi = all_vectors(basis.len(), p)
        .into_iter()
        .filter(|c| c.iter().any(|&x| x != 0))
        .map(|c| combination(&basis, &c, p))
        .find(|f| (0..4).all(|v| mat_rank(&f[v], p) == m.dims[v]))
        .expect("projective cover");
    // The kernel: pointwise null spaces, carried by the structure maps.
    let mut kdims = [0; 4];
    let mut kbases: Vec<Vec<Vec<u32>>> = Vec::new();
    for v in 0..4 {
        let rows: Vec<Vec<u32>> = (0..pi[v].r).map(|i| (0..pi[v].c).map(|j| pi[v].at(i, j)).collect()).collect();
        let b = null_space(&rows, cover.dims[v], p);
        kdims[v] = b.len();
        kbases.push(b);
    }
    let incl: Hom = std::array::from_fn(|v| {
        let (r, c) = (cover.dims[v], kdims[v]);
        let mut a = vec![0; r * c];
        for (j, b) in kbases[v].iter().enumerate() {
            for i in 0..r {
                a[i * c + j] = b[i];
            }
        }
        Mat { r, c, a }
    });
    // Structure maps of the kernel: solve incl_t K_α = P_α incl_s.
    let maps = ARROWS.map(|(s, t)| {
        let k = ARROWS.iter().position(|&a| a == (s, t)).unwrap();
        let img = cover.maps[k].mul(&incl[s], p);
        let mut out = Mat::zero(kdims[t], kdims[s]);
        for j in 0..kdims[s] {
            let col: Vec<u32> = (0..img.r).map(|i| img.at(i, j)).collect();
            // Coordinates of `col` in the kernel basis at t.
            let n = kdims[t];
            let eqs: Vec<Vec<u32>> = (0..cover.dims[t]).map(|i| {
                let mut e: Vec<u32> = (0..n).map(|l| kbases[t][l][i]).collect();
                e.push((p - col[i]) % p);
                e
            }).collect();
            let sol = null_space(&eqs, n + 1, p).into_iter().find(|x| x[n] != 0).expect("kernel is a submodule");
            let s_inv = inv(sol[n], p);
            for l in 0..n {
                out.a[l * kdims[s] + j] = sol[l] * s_inv % p;
            }
        }
        out
    });
    (cover, Rep { dims: kdims, maps }, incl)
}

/// dim Ext²(C, A) = dim coker(Hom(P₁, A) → Hom(Ω²C, A)) with P₁ the
/// projective cover of ΩC.
fn ext2_dim(c: &Rep, a: &Rep, p: u32) -> usize {
    let (_, omega, _) = syzygy(c, p);
    let (p1, omega2, incl) = syzygy(&omega, p);
    let target = hom_basis(&omega2, a, p);
    let restricted: Vec<Vec<u32>> = hom_basis(&p1, a, p).iter().map(|f| flatten(&compose(&incl, f, p))).collect();
    target.len() - rank(&restricted, p)
}

// ---------------------------------------------------------------------------
// Realizations and the weak kernel-cokernel condition.

const GENERATORS: [&str; 6] = ["4", "3/4", "2/3/4", "1/2/3", "1/2", "1"];

struct Sequence {
    terms: [Vec<usize>; 4],
    mods: [Rep; 4],
    d: [Hom; 3],
}

fn object(ix: &[usize]) -> Rep {
    sum(&ix.iter().map(|&i| parse(GENERATORS[i])).collect::<Vec<_>>())
}

fn exact(m: &[Rep; 4], d: &[Hom; 3], p: u32) -> bool {
    (0..4).all(|v| {
        let r: Vec<usize> = d.iter().map(|f| mat_rank(&f[v], p)).collect();
        let zero = |f: &Hom, g: &Hom| compose(f, g, p)[v].a.iter().all(|&x| x == 0);
        zero(&d[0], &d[1]) && zero(&d[1], &d[2]) && r[0] == m[0].dims[v] && r[0] + r[1] == m[1].dims[v] && r[1] + r[2] == m[2].dims[v] && r[2] == m[3].dims[v]
    })
}

fn split_mono(a: &Rep, x1: &Rep, d0: &Hom, p: u32) -> bool {
    let id: Vec<u32> = flatten(&std::array::from_fn(|v| Mat::eye(a.dims[v])));
    let vs: Vec<Vec<u32>> = hom_basis(x1, a, p).iter().map(|r| flatten(&compose(d0, r, p))).collect();
    !vs.is_empty() && in_span(&vs, &id, p)
}

/// An exact sequence `0 → A → X₁ → X₂ → C → 0` with terms in add of the
/// generators and `A → X₁` not split, fewest summands first.
fn realization(c: usize, a: usize, p: u32) -> Sequence {
    let singles: Vec<Vec<usize>> = (0..6).map(|i| vec![i]).collect();
    let pairs: Vec<Vec<usize>> = (0..6).flat_map(|i| (i..6).map(move |j| vec![i, j])).collect();
    let objs: Vec<Vec<usize>> = singles.into_iter().chain(pairs).collect();
    let mut candidates: Vec<(Vec<usize>, Vec<usize>)> = objs.iter().flat_map(|x| objs.iter().map(move |y| (x.clone(), y.clone()))).collect();
    candidates.sort_by_key(|(x, y)| x.len() + y.len());
    let (ma, mc) = (object(&[a]), object(&[c]));
    for (x1, x2) in candidates {
        let (m1, m2) = (object(&x1), object(&x2));
        let (b0, b1, b2) = (hom_basis(&ma, &m1, p), hom_basis(&m1, &m2, p), hom_basis(&m2, &mc, p));
        if b0.is_empty() || b1.is_empty() || b2.is_empty() {
            continue;
        }
        for c0 in all_vectors(b0.len(), p).into_iter().filter(|v| v.iter().any(|&x| x != 0)) {
            let d0 = combination(&b0, &c0, p);
            if !is_mono(&ma, &d0, p) || split_mono(&ma, &m1, &d0, p) {
                continue;
            }
            for c1 in all_vectors(b1.len(), p) {
                let d1 = combination(&b1, &c1, p);
                for c2 in all_vectors(b2.len(), p) {
                    let d2 = combination(&b2, &c2, p);
                    let mods = [ma.clone(), m1.clone(), m2.clone(), mc.clone()];
                    let d = [d0.clone(), d1.clone(), d2];
                    if exact(&mods, &d, p) {
                        return Sequence { terms: [vec![a], x1, x2, vec![c]], mods, d };
                    }
                }
            }
        }
    }
    panic!("no realization of E({}, {})", GENERATORS[c], GENERATORS[a]);
}

/// Morphisms X → Y factoring through add(N), as flat vectors.
fn ideal(x: &Rep, y: &Rep, nf: &[usize], p: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for &k in nf {
        let n = object(&[k]);
        for f in hom_basis(x, &n, p) {
            for g in hom_basis(&n, y, p) {
                out.push(flatten(&compose(&f, &g, p)));
            }
        }
    }
    out
}

/// dim of `{c : Σ c_i v_i ∈ span(w)}`.
fn preimage_dim(vs: &[Vec<u32>], w: &[Vec<u32>], p: u32) -> usize {
    let both: Vec<Vec<u32>> = vs.iter().chain(w).cloned().collect();
    vs.len() - (rank(&both, p) - rank(w, p))
}

/// Hom-exactness of the sequence in C/[N] at X₁, X₂ against generator T.
/// Inside Hom(T, X) the kernel contains image + N, so exactness is
/// equality of dimensions.
fn failures(s: &Sequence, nf: &[usize], p: u32) -> Vec<(&'static str, usize, usize)> {
    let mut out = Vec::new();
    for pos in 1..=2 {
        let (prev, next) = (&s.d[pos - 1], &s.d[pos]);
        let (xp, x, xn) = (&s.mods[pos - 1], &s.mods[pos], &s.mods[pos + 1]);
        for t in 0..6 {
            let mt = object(&[t]);
            // Hom(T, X_{pos-1}) → Hom(T, X_pos) → Hom(T, X_{pos+1}).
            let after: Vec<Vec<u32>> = hom_basis(&mt, x, p).iter().map(|f| flatten(&compose(f, next, p))).collect();
            let kernel = preimage_dim(&after, &ideal(&mt, xn, nf, p), p);
            let image: Vec<Vec<u32>> = hom_basis(&mt, xp, p).iter().map(|g| flatten(&compose(g, prev, p))).chain(ideal(&mt, x, nf, p)).collect();
            if kernel != rank(&image, p) {
                out.push(("contravariant", pos, t));
            }
            // Hom(X_{pos+1}, T) → Hom(X_pos, T) → Hom(X_{pos-1}, T).
            let before: Vec<Vec<u32>> = hom_basis(x, &mt, p).iter().map(|f| flatten(&compose(prev, f, p))).collect();
            let kernel = preimage_dim(&before, &ideal(xp, &mt, nf, p), p);
            let image: Vec<Vec<u32>> = hom_basis(xn, &mt, p).iter().map(|g| flatten(&compose(next, g, p))).chain(ideal(x, &mt, nf, p)).collect();
            if kernel != rank(&image, p) {
                out.push(("covariant", pos, t));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Comparison with the binary.

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn binary(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_exangulate")).args(args).env_remove("EXANGULATE_SEED").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

type Failure = (String, String, String, usize, String);

fn oracle_failures(nf: &[usize], p: u32) -> (BTreeSet<Failure>, usize) {
    let mut set = BTreeSet::new();
    let mut count = 0;
    for c in 0..6 {
        for a in 0..6 {
            if ext2_dim(&object(&[c]), &object(&[a]), p) == 0 {
                continue;
            }
            let s = realization(c, a, p);
            assert_eq!(s.terms[0], vec![a]);
            let f = failures(&s, nf, p);
            // Every nonzero multiple of δ has the same realization up to a
            // scalar on d₀, hence the same failures.
            count += f.len() * (p as usize - 1);
            for (side, pos, t) in f {
                set.insert((GENERATORS[c].to_string(), GENERATORS[a].to_string(), side.to_string(), pos, GENERATORS[t].to_string()));
            }
        }
    }
    (set, count)
}

fn engine_failures(file: &str, p: u32) -> (BTreeSet<Failure>, usize) {
    let path = fixture(file);
    let prime = p.to_string();
    let (code, json) = binary(&["--prime", &prime, "--json", "-", "localize", path.to_str().unwrap()]);
    assert_eq!(code, 20);
    let v: Value = serde_json::from_str(&json).unwrap();
    let list = v["weak_kc_failures"].as_array().unwrap();
    let set = list
        .iter()
        .map(|w| {
            let s = |x: &Value| x.as_str().unwrap().to_string();
            let e = &w["extension"];
            let f = &w["failure"];
            (s(&e["c"][0]), s(&e["a"][0]), s(&f["side"]), f["position"].as_u64().unwrap() as usize, s(&f["test_object"]))
        })
        .collect();
    (set, list.len())
}

/// Hom and Ext² dimensions of every generator pair over F_2 and F_3.
pub fn hom_and_ext_dimensions_agree() {
    let path = fixture("a4-cluster.exg");
    let file = path.to_str().unwrap();
    for p in [2u32, 3] {
        let prime = p.to_string();
        for x in 0..6 {
            for y in 0..6 {
                let (mx, my) = (object(&[x]), object(&[y]));
                let (gx, gy) = (GENERATORS[x], GENERATORS[y]);
                let hom = hom_basis(&mx, &my, p).len();
                let ext = ext2_dim(&mx, &my, p);
                let (_, out) = binary(&["--prime", &prime, "hom", file, gx, gy]);
                assert_eq!(out, format!("dim Hom({gx}, {gy}) = {hom}\n"));
                let (_, out) = binary(&["--prime", &prime, "ext", file, gx, gy]);
                assert_eq!(out, format!("dim E({gx}, {gy}) = {ext}\n"));
            }
        }
    }
    // The oracle's own sanity: Ext² between generators is nonzero exactly
    // for three pairs.
    let nonzero: Vec<(usize, usize)> = (0..6).flat_map(|c| (0..6).map(move |a| (c, a))).filter(|&(c, a)| ext2_dim(&object(&[c]), &object(&[a]), 2) > 0).collect();
    assert_eq!(nonzero, [(4, 0), (5, 0), (5, 1)]);
}

/// Weak kernel-cokernel failures of both fixtures over F_2 and F_3.
pub fn weak_kc_failures_agree() {
    for p in [2u32, 3] {
        for (file, nf, expected) in [("a4-cluster.exg", vec![2], 5), ("a4-projinj.exg", vec![2, 3], 2)] {
            let (oracle, count) = oracle_failures(&nf, p);
            let (engine, engine_count) = engine_failures(file, p);
            assert_eq!(oracle, engine, "{file} over F_{p}");
            assert_eq!(count, engine_count, "{file} over F_{p}");
            assert_eq!(oracle.len(), expected, "{file}");
        }
    }
}

pub fn oracle_sees_no_failures_without_n() {
    assert!(oracle_failures(&[], 2).0.is_empty());
}
