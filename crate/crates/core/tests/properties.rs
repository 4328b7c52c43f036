//! Property suites over the a4 category with a fixed RNG seed.

#[path = "support/props.rs"]
mod props;

#[test]
fn rewriting_a_roof_preserves_its_class() {
    props::rewriting_a_roof_preserves_its_class().unwrap();
}

#[test]
fn mu_bar_separates_distinct_classes() {
    props::mu_bar_separates_distinct_classes().unwrap();
}

#[test]
fn addition_is_independent_of_the_common_denominator() {
    props::addition_is_independent_of_the_common_denominator().unwrap();
}

#[test]
fn realization_respects_roof_equality() {
    props::realization_respects_roof_equality().unwrap();
}

#[test]
fn ideal_projection_is_a_functor() {
    props::ideal_projection_is_a_functor().unwrap();
}

#[test]
fn lifts_are_chain_maps_with_exact_cones() {
    props::lifts_are_chain_maps_with_exact_cones().unwrap();
}

#[test]
fn k_characterizations_agree_under_mr() {
    props::k_characterizations_agree_under_mr();
}
