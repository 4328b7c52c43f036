use super::*;
use crate::exactalg::Field;
use crate::exangulated::axioms::AxiomBounds;
use crate::exangulated::{inner_exactness_failures, realize, resolve_generators, Side, ClusterTilting, GeneratorSpec, ModuleCategory, Presentation, Realizer};
use crate::quiverrep::{Algebra, Quiver, Relation, DEFAULT_SEED};

fn a4() -> ClusterTilting {
    let f = Field::new(2).unwrap();
    let q = Quiver::new(4, &[("a", 1, 2), ("b", 2, 3), ("c", 3, 4)]).unwrap();
    let r = Relation::parse(&q, f, "abc").unwrap();
    let alg = Algebra::new(f, q, vec![r], 16).unwrap();
    let gens = resolve_generators(&alg, &[GeneratorSpec::ProjInj], DEFAULT_SEED).unwrap();
    ClusterTilting::new(ModuleCategory::new(alg, 2, gens).unwrap(), 2)
}

fn idx(p: &Presentation, l: &str) -> usize {
    p.generator_index(l).unwrap()
}

fn opts(nf: Vec<usize>) -> LocalizeOptions {
    LocalizeOptions { nf, mode: FbarMode::Iso, seeds: vec![], universe: UniverseBounds::default(), axioms: AxiomBounds::default(), sequences: vec![] }
}

#[test]
fn trivial_localization_is_exangulated() {
    let ct = a4();
    let rep = localize(&ct, &opts(vec![])).unwrap();
    assert_eq!(rep.exit_code, 0, "{}", to_json(&rep).unwrap());
    assert_eq!(rep.verdict, "2-exangulated");
    assert!(rep.equivalence.as_ref().unwrap().pass);
}

#[test]
fn killing_projective_injective_fails_weak_kc() {
    let ct = a4();
    let p = ct.pres();
    let rep = localize(&ct, &opts(vec![idx(p, "2/3/4")])).unwrap();
    assert_eq!(rep.exit_code, 20, "{}", to_json(&rep).unwrap());
    assert_eq!(rep.verdict, "fails weak-kc");
    let first = rep.weak_kc_failures.iter().find(|w| w.extension.as_ref().unwrap().c == ["1"]).unwrap();
    assert_eq!(first.objects, ["4", "2/3/4", "1/2/3", "1"]);
    let f = first.failure.clone().unwrap();
    assert_eq!((f.side, f.position, f.test_object.as_str()), (Side::Covariant, 2, "1/2/3"));
}

#[test]
fn fraction_search_matches_quotient_exactness_in_iso_mode() {
    let ct = a4();
    let p = ct.pres();
    for nf in [vec![], vec![idx(p, "2/3/4")], vec![idx(p, "2/3/4"), idx(p, "1/2/3")]] {
        let q = IdealQuotient::new(p, &nf).unwrap();
        let f = MorphismClass::new(&q, FbarMode::Iso, &[], UniverseBounds::default()).unwrap();
        for (c, a, d) in crate::exangulated::axioms::basis_extensions(p) {
            let x = q.project_complex(&realize(&ct, &vec![a], &vec![c], &d).unwrap());
            assert_eq!(fraction_failures(&q, &f, &x), inner_exactness_failures(q.category(), &x));
        }
    }
}

#[test]
fn saturate_without_two_out_of_three_violates_mr1() {
    let ct = a4();
    let p = ct.pres();
    let (x, y, z) = (vec![idx(p, "4")], vec![idx(p, "3/4")], vec![idx(p, "2/3/4")]);
    let mut o = opts(vec![]);
    o.mode = FbarMode::Saturate;
    o.seeds = vec![p.from_flat(&x, &y, &[1]), p.from_flat(&x, &z, &[1])];
    let rep = localize(&ct, &o).unwrap();
    assert_eq!(rep.exit_code, 30, "{}", to_json(&rep).unwrap());
    assert!(!rep.mr[1].pass);
}
