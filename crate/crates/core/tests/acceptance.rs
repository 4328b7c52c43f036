//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero when any
//! criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::Instant;

use exangulate::cli::{load, Session, SessionOptions};
use exangulate::exangulated::Side;

#[path = "support/props.rs"]
mod props;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
type Suite = (&'static str, fn() -> Result<(), String>);

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn session(name: &str) -> Result<Session, String> {
    load(&fixture(name), SessionOptions::default()).map_err(|e| e.to_string())
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn generators() -> Outcome {
    let s = session("a4-cluster.exg")?;
    let expected: [(&str, [usize; 4]); 6] =
        [("4", [0, 0, 0, 1]), ("3/4", [0, 0, 1, 1]), ("2/3/4", [0, 1, 1, 1]), ("1/2/3", [1, 1, 1, 0]), ("1/2", [1, 1, 0, 0]), ("1", [1, 0, 0, 0])];
    let labels = s.presentation().labels();
    let dims: Vec<Vec<usize>> = s.category().modules().iter().map(|m| m.dims().to_vec()).collect();
    ensure(labels.len() == 6, format!("{} generators", labels.len()))?;
    for (i, (l, d)) in expected.iter().enumerate() {
        ensure(labels[i] == *l && dims[i] == d, format!("generator {i} is {} with dimension vector {:?}", labels[i], dims[i]))?;
    }
    Ok(labels.join(", "))
}

fn ext_s1_s4() -> Outcome {
    let d = session("a4-cluster.exg")?.ext("1", "4").map_err(|e| e.to_string())?.dim;
    ensure(d == 1, format!("dim = {d}"))?;
    Ok("dim Ext²(1, 4) = 1".into())
}

fn core_axioms() -> Outcome {
    let rep = session("a4-cluster.exg")?.check().map_err(|e| e.to_string())?;
    let failed: Vec<&str> = rep.axioms.iter().filter(|v| !v.pass).map(|v| v.axiom.as_str()).collect();
    ensure(failed.is_empty() && rep.exit_code == 0, format!("failed: {failed:?}"))?;
    Ok(rep.axioms.iter().map(|v| v.axiom.as_str()).collect::<Vec<_>>().join(" "))
}

fn weak_kc_fails() -> Outcome {
    let rep = session("a4-cluster.exg")?.localize().map_err(|e| e.to_string())?;
    ensure(rep.exit_code == 20 && rep.verdict == "fails weak-kc", format!("verdict {} (exit {})", rep.verdict, rep.exit_code))?;
    let w = rep
        .weak_kc_failures
        .iter()
        .find(|w| w.extension.as_ref().is_some_and(|e| e.c == ["1"] && e.a == ["4"]))
        .ok_or("no witness for E(1, 4)")?;
    ensure(w.objects == ["4", "2/3/4", "1/2/3", "1"], format!("witness objects {:?}", w.objects))?;
    let f = w.failure.as_ref().ok_or("witness without failure")?;
    ensure(f.side == Side::Covariant && f.position == 2 && f.test_object == "1/2/3", format!("{f:?}"))?;
    let printed = rep.sequences.iter().find(|s| s.name == "printed").ok_or("no printed sequence")?;
    let pf = printed.failure.as_ref().ok_or("printed sequence has no failure")?;
    ensure(!printed.n_exangle && pf.side == Side::Contravariant && pf.position == 1 && pf.test_object == "3/4", format!("printed: {printed:?}"))?;
    let corrected = rep.sequences.iter().find(|s| s.name == "corrected").ok_or("no corrected sequence")?;
    ensure(corrected.distinguished, "corrected sequence is not distinguished")?;
    Ok("fails weak-kc at X_2 against 1/2/3 on 4 → 2/3/4 → 1/2/3 → 1; printed sequence fails at X_1 against 3/4; corrected is distinguished".into())
}

fn trivial_localization() -> Outcome {
    let rep = session("a4-trivial.exg")?.localize().map_err(|e| e.to_string())?;
    ensure(rep.exit_code == 0 && rep.verdict == "2-exangulated", format!("verdict {} (exit {})", rep.verdict, rep.exit_code))?;
    let eq = rep.equivalence.as_ref().ok_or("no equivalence record")?;
    ensure(eq.pass, format!("{eq:?}"))?;
    Ok(format!("2-exangulated, equivalence on {} pairs", eq.pairs))
}

fn property_suites() -> Outcome {
    let suites: [Suite; 6] = [
        ("roof rewriting", props::rewriting_a_roof_preserves_its_class),
        ("μ̄ injective", props::mu_bar_separates_distinct_classes),
        ("roof addition", props::addition_is_independent_of_the_common_denominator),
        ("s̃ well defined", props::realization_respects_roof_equality),
        ("projection functor", props::ideal_projection_is_a_functor),
        ("lifts and cones", props::lifts_are_chain_maps_with_exact_cones),
    ];
    for (name, f) in suites {
        f().map_err(|e| format!("{name}: {e}"))?;
    }
    props::k_characterizations_agree_under_mr();
    Ok("6 suites x 256 cases, K over all 64 subsets".into())
}

fn independent_oracle() -> Outcome {
    oracle::hom_and_ext_dimensions_agree();
    oracle::weak_kc_failures_agree();
    oracle::oracle_sees_no_failures_without_n();
    Ok("Hom, Ext² and weak-kc agree on a4-cluster and a4-projinj over F_2 and F_3".into())
}

fn main() {
    std::panic::set_hook(Box::new(|_| {}));
    let criteria: [Criterion; 7] = [
        ("six generators with their dimension vectors", generators),
        ("dim Ext²(S1, S4) = 1", ext_s1_s4),
        ("core axioms hold on a4", core_axioms),
        ("N = add(2/3/4) fails weak-kc", weak_kc_fails),
        ("N = 0 localizes to a 2-exangulated category", trivial_localization),
        ("property suites", property_suites),
        ("independent oracle agrees", independent_oracle),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("PASS {} {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
