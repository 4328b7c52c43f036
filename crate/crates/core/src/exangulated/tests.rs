use super::*;
use crate::exactalg::Field;
use crate::quiverrep::{Algebra, Quiver, Relation, DEFAULT_SEED};

pub(crate) fn a4_category(p: u32) -> ModuleCategory {
    let f = Field::new(p).unwrap();
    let q = Quiver::new(4, &[("a", 1, 2), ("b", 2, 3), ("c", 3, 4)]).unwrap();
    let r = Relation::parse(&q, f, "abc").unwrap();
    let alg = Algebra::new(f, q, vec![r], 16).unwrap();
    let gens = resolve_generators(&alg, &[GeneratorSpec::ProjInj], DEFAULT_SEED).unwrap();
    ModuleCategory::new(alg, 2, gens).unwrap()
}

fn idx(p: &Presentation, l: &str) -> usize {
    p.generator_index(l).unwrap()
}

/// The complex through the given generators using the unique nonzero
/// morphism between consecutive terms.
fn chain(p: &Presentation, ls: &[&str]) -> Complex {
    let terms: Vec<Obj> = ls.iter().map(|l| vec![idx(p, l)]).collect();
    let diffs = terms
        .windows(2)
        .map(|w| {
            assert_eq!(p.hom_dim(&w[0], &w[1]), 1, "{:?}", w);
            p.from_flat(&w[0], &w[1], &[1])
        })
        .collect();
    Complex::new(terms, diffs).unwrap()
}

#[test]
fn a4_generators() {
    let cat = a4_category(2);
    let p = cat.presentation();
    assert_eq!(p.labels(), &["4", "3/4", "2/3/4", "1/2/3", "1/2", "1"]);
    assert_eq!(p.ext_dim_gen(idx(p, "1"), idx(p, "4")), 1);
    assert_eq!(p.ext_dim_gen(idx(p, "1"), idx(p, "3/4")), 1);
    assert_eq!(p.ext_dim_gen(idx(p, "1/2"), idx(p, "4")), 1);
    let total: usize = (0..6).flat_map(|c| (0..6).map(move |a| (c, a))).map(|(c, a)| p.ext_dim_gen(c, a)).sum();
    assert_eq!(total, 3);
}

#[test]
fn corrected_and_printed_sequences() {
    let cat = a4_category(2);
    let p = cat.presentation();
    let good = chain(p, &["4", "2/3/4", "1/2/3", "1"]);
    assert!(cat.check_module_exact(&good).is_ok());
    let delta = cat.yoneda_class(&good).unwrap();
    assert_eq!(delta, vec![1]);
    assert!(is_n_exangle(p, &good, &delta).ok());
    let printed = chain(p, &["4", "2/3/4", "1/2", "1"]);
    let v = is_n_exangle(p, &printed, &[1]);
    let f = v.failure.unwrap();
    assert_eq!((f.side, f.position, p.label(f.test_object)), (Side::Contravariant, 1, "3/4"));
}

#[test]
fn realization_search_finds_minimal_sequence() {
    let cat = a4_category(2);
    let ct = ClusterTilting::new(cat, 2);
    let p = ct.pres();
    let x = realize(&ct, &vec![idx(p, "4")], &vec![idx(p, "1")], &[1]).unwrap();
    let names: Vec<String> = x.terms.iter().map(|t| p.object_label(t)).collect();
    assert_eq!(names, ["4", "2/3/4", "1/2/3", "1"]);
    assert!(ct.realizes(&x, &[1]).unwrap());
}

#[test]
fn a4_core_axioms() {
    let cat = a4_category(2);
    let ct = ClusterTilting::new(cat, 2);
    let rep = check_core_axioms(&ct, AxiomBounds::default()).unwrap();
    for v in &rep.verdicts {
        assert!(v.pass, "{:?}", v);
    }
}

#[test]
fn inflations_are_monos_on_a4() {
    let cat = a4_category(2);
    let ct = ClusterTilting::new(cat, 2);
    let p = ct.pres();
    let o = ConflationOracle::new(&ct, 2);
    let mut infl = 0;
    let mut defl = 0;
    for i in 0..6 {
        for j in 0..6 {
            for f in p.all_morphisms(&vec![i], &vec![j], 64).unwrap() {
                let m = ct.category().to_module_morphism(&f);
                let a = o.is_inflation(&f).unwrap();
                let b = o.is_deflation(&f).unwrap();
                assert_eq!(a, m.is_mono(), "{} → {} {:?}", p.label(i), p.label(j), f);
                assert_eq!(b, m.is_epi(), "{} → {} {:?}", p.label(i), p.label(j), f);
                infl += usize::from(a);
                defl += usize::from(b);
            }
        }
    }
    eprintln!("inflations {infl} deflations {defl}");
    assert!(infl > 6 && defl > 6);
}
