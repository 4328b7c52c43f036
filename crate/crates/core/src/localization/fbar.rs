//! The class `F̄` of morphisms of `C̄`, its bounded universe, and Ore
//! completions inside that universe.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exangulated::realize::ENUM_LIMIT;
use crate::exangulated::{Mor, Obj, Presentation};

use super::quotient::IdealQuotient;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FbarMode {
    /// `F̄` is the class of isomorphisms of `C̄`.
    #[default]
    Iso,
    /// `F̄` is generated by seed morphisms and the isomorphisms under
    /// composition and finite direct sums.
    Saturate,
}

/// Size of the object universe used by every existential search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UniverseBounds {
    /// Largest multiplicity of a generator in an object.
    pub multiplicity: usize,
    /// Largest number of summands in an object.
    pub summands: usize,
}

impl Default for UniverseBounds {
    fn default() -> Self {
        UniverseBounds { multiplicity: 2, summands: 2 }
    }
}

/// Objects of `C̄` without summands in `N`, sorted, within the bounds.
pub fn universe(q: &IdealQuotient, bounds: UniverseBounds) -> Vec<Obj> {
    let gens: Vec<usize> = (0..q.base().generator_count()).filter(|&i| !q.is_nf(i)).collect();
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Obj> = vec![Vec::new()];
    for _ in 0..bounds.summands {
        let mut next = Vec::new();
        for o in &layer {
            let start = o.last().copied().unwrap_or(0);
            for &i in gens.iter().filter(|&&i| i >= start) {
                if o.iter().filter(|&&x| x == i).count() < bounds.multiplicity {
                    let mut w = o.clone();
                    w.push(i);
                    next.push(w);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// `F̄` restricted to the universe, with membership for arbitrary
/// morphisms of `C̄`.
#[derive(Clone, Debug)]
pub struct MorphismClass {
    mode: FbarMode,
    universe: Vec<Obj>,
    index: HashMap<Obj, usize>,
    /// Members between universe objects, keyed by universe indices.
    members: HashMap<(usize, usize), Vec<Mor>>,
    set: HashSet<Mor>,
    /// Hom spaces too large to enumerate were skipped.
    truncated: bool,
}

impl MorphismClass {
    /// Builds `F̄`. In saturate mode `seeds` are morphisms of `C̄` whose
    /// canonical forms must lie in the universe.
    pub fn new(q: &IdealQuotient, mode: FbarMode, seeds: &[Mor], bounds: UniverseBounds) -> Result<Self> {
        let cat = q.category();
        let universe = universe(q, bounds);
        let index: HashMap<Obj, usize> = universe.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
        let mut truncated = false;
        let mut fc = MorphismClass { mode, universe, index, members: HashMap::new(), set: HashSet::new(), truncated: false };
        let mut queue = VecDeque::new();
        for (k, x) in fc.universe.iter().enumerate() {
            let Some(all) = cat.all_morphisms(x, x, ENUM_LIMIT) else {
                truncated = true;
                continue;
            };
            for f in all.into_iter().filter(|f| cat.is_iso(f)) {
                fc.members.entry((k, k)).or_default().push(f.clone());
                fc.set.insert(f.clone());
                queue.push_back(f);
            }
        }
        if mode == FbarMode::Saturate {
            for s in seeds {
                let f = q.canonical_mor(s);
                if !fc.index.contains_key(&f.src) || !fc.index.contains_key(&f.dst) {
                    return Err(Error::Semantic(format!("seed {} → {} lies outside the bounded universe", cat.object_label(&s.src), cat.object_label(&s.dst))));
                }
                if fc.insert(f.clone()) {
                    queue.push_back(f);
                }
            }
            fc.close(cat, bounds, queue);
        }
        fc.truncated = truncated;
        Ok(fc)
    }

    /// Closes under composition and direct sums inside the universe.
    fn close(&mut self, cat: &Presentation, bounds: UniverseBounds, mut queue: VecDeque<Mor>) {
        while let Some(f) = queue.pop_front() {
            let (fs, fd) = (self.index[&f.src], self.index[&f.dst]);
            let mut fresh = Vec::new();
            for ((s, d), ms) in &self.members {
                for m in ms {
                    if *s == fd {
                        fresh.push(cat.compose(&f, m));
                    }
                    if *d == fs {
                        fresh.push(cat.compose(m, &f));
                    }
                    for h in [cat.direct_sum(&f, m), cat.direct_sum(m, &f)] {
                        if fits(&h.src, bounds) && fits(&h.dst, bounds) {
                            fresh.push(sort_ends(cat, &h));
                        }
                    }
                }
            }
            for h in fresh {
                if self.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
        }
    }

    fn insert(&mut self, f: Mor) -> bool {
        if self.set.contains(&f) {
            return false;
        }
        let key = (self.index[&f.src], self.index[&f.dst]);
        self.members.entry(key).or_default().push(f.clone());
        self.set.insert(f);
        true
    }

    pub fn mode(&self) -> FbarMode {
        self.mode
    }

    pub fn universe(&self) -> &[Obj] {
        &self.universe
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn index_of(&self, x: &Obj) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Members between two universe objects.
    pub fn members(&self, x: &Obj, y: &Obj) -> &[Mor] {
        match (self.index.get(x), self.index.get(y)) {
            (Some(&i), Some(&j)) => self.members.get(&(i, j)).map(Vec::as_slice).unwrap_or(&[]),
            _ => &[],
        }
    }

    /// Every member, in universe order.
    pub fn all_members(&self) -> Vec<&Mor> {
        let n = self.universe.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if let Some(ms) = self.members.get(&(i, j)) {
                    out.extend(ms.iter());
                }
            }
        }
        out
    }

    pub fn member_count(&self) -> usize {
        self.set.len()
    }

    /// Membership of a morphism of `C̄` with arbitrary ends.
    pub fn contains(&self, q: &IdealQuotient, f: &Mor) -> bool {
        match self.mode {
            FbarMode::Iso => {
                let (x, y) = (q.canonical(&f.src), q.canonical(&f.dst));
                x == y && q.category().is_iso(f)
            }
            FbarMode::Saturate => self.set.contains(&q.canonical_mor(f)),
        }
    }

    /// Ore completion on the left: for `s: A → X` in `F̄` and `a: A → D`,
    /// returns `(a', s')` with `s': D → W` in `F̄` and `a' ∘ s = s' ∘ a`.
    /// `variant` selects a later completion when several exist.
    pub fn ore_push(&self, q: &IdealQuotient, s: &Mor, a: &Mor, variant: usize) -> Result<(Mor, Mor)> {
        let cat = q.category();
        let d = &a.dst;
        let mut found = Vec::new();
        match self.mode {
            FbarMode::Iso => {
                let sinv = cat.inverse(s).ok_or_else(|| Error::OreNotFound("denominator is not invertible".into()))?;
                for phi in self.automorphisms(q, d, variant + 1) {
                    let a2 = cat.compose(&cat.compose(&sinv, a), &phi);
                    found.push((a2, phi));
                    if found.len() > variant {
                        break;
                    }
                }
            }
            FbarMode::Saturate => {
                let dc = q.canonical(d);
                let kd = q.to_canonical(d);
                'outer: for w in &self.universe {
                    let pre = cat.pre_matrix(s, w);
                    for m in self.members(&dc, w) {
                        let s2 = cat.compose(&kd, m);
                        let rhs = cat.flat(&cat.compose(a, &s2));
                        if let Some(sol) = pre.solve_vec(&rhs) {
                            found.push((cat.from_flat(&s.dst, w, &sol), s2));
                            if found.len() > variant {
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        found.pop().ok_or_else(|| Error::OreNotFound(format!("no square completing {} → {}", cat.object_label(&a.src), cat.object_label(d))))
    }

    /// Ore completion on the right: for `t: Z → C` in `F̄` and `c: E → C`,
    /// returns `(c', t')` with `t': W → E` in `F̄` and `t ∘ c' = c ∘ t'`.
    pub fn ore_pull(&self, q: &IdealQuotient, t: &Mor, c: &Mor, variant: usize) -> Result<(Mor, Mor)> {
        let cat = q.category();
        let e = &c.src;
        let mut found = Vec::new();
        match self.mode {
            FbarMode::Iso => {
                let tinv = cat.inverse(t).ok_or_else(|| Error::OreNotFound("denominator is not invertible".into()))?;
                for phi in self.automorphisms(q, e, variant + 1) {
                    let c2 = cat.compose(&cat.compose(&phi, c), &tinv);
                    found.push((c2, phi));
                    if found.len() > variant {
                        break;
                    }
                }
            }
            FbarMode::Saturate => {
                let ec = q.canonical(e);
                let ke = q.from_canonical(e);
                'outer: for w in &self.universe {
                    let post = cat.post_matrix(t, w);
                    for m in self.members(w, &ec) {
                        let t2 = cat.compose(m, &ke);
                        let rhs = cat.flat(&cat.compose(&t2, c));
                        if let Some(sol) = post.solve_vec(&rhs) {
                            found.push((cat.from_flat(w, &t.src, &sol), t2));
                            if found.len() > variant {
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        found.pop().ok_or_else(|| Error::OreNotFound(format!("no square completing {} → {}", cat.object_label(e), cat.object_label(&c.dst))))
    }

    /// Up to `count` automorphisms of `X` in `C̄`, the identity first.
    fn automorphisms(&self, q: &IdealQuotient, x: &Obj, count: usize) -> Vec<Mor> {
        let cat = q.category();
        let mut out = vec![cat.identity(x)];
        if count > 1 {
            let (to, from) = (q.to_canonical(x), q.from_canonical(x));
            for m in self.members(&q.canonical(x), &q.canonical(x)) {
                let phi = cat.compose(&cat.compose(&to, m), &from);
                if !out.contains(&phi) {
                    out.push(phi);
                }
                if out.len() >= count {
                    break;
                }
            }
        }
        out
    }
}

fn fits(x: &Obj, bounds: UniverseBounds) -> bool {
    x.len() <= bounds.summands && x.iter().all(|g| x.iter().filter(|h| *h == g).count() <= bounds.multiplicity)
}

/// `f` conjugated by the permutations sorting its ends.
fn sort_ends(cat: &Presentation, f: &Mor) -> Mor {
    let mut xs = f.src.clone();
    xs.sort_unstable();
    let mut ys = f.dst.clone();
    ys.sort_unstable();
    let px = cat.permutation(&xs, &f.src).expect("reordering");
    let py = cat.permutation(&f.dst, &ys).expect("reordering");
    cat.compose(&cat.compose(&px, f), &py)
}
