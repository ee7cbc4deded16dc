//! Randomized invariant suites, each run with at least 100 cases and exact
//! assertions throughout.

mod common;

#[test]
fn reduced_basis_is_permutation_invariant() {
    common::check_gb_permutation_invariance(120, 0xA1);
}

#[test]
fn buchberger_post_criterion() {
    common::check_buchberger_post_criterion(120, 0xA2);
}

#[test]
fn colon_agrees_with_linear_algebra_oracle() {
    common::check_colon_la_oracle(100, 0xA3);
}

#[test]
fn colon_agrees_with_syzygy_route() {
    common::check_colon_syzygy_route(100, 0xA4);
}

#[test]
fn membership_certificates_recombine() {
    common::check_membership_certificates(120, 0xA5);
}

#[test]
fn ideal_equality_is_an_equivalence() {
    common::check_ideal_equal_equivalence(120, 0xA6);
}

#[test]
fn hilbert_inclusion_exclusion_agrees() {
    common::check_hilbert_incl_excl(100, 0xA7);
}

#[test]
fn fitting_ideals_are_presentation_invariant() {
    common::check_fitting_invariance(100, 0xA8);
}

#[test]
fn resolutions_compose_to_zero() {
    common::check_resolution_compositions(100, 0xA9);
}

#[test]
fn ezd_verification_is_symmetric() {
    common::check_ezd_symmetry(120, 0xAA);
}

#[test]
fn length_is_additive_over_extensions() {
    common::check_length_additivity(100, 0xAB);
}

#[test]
fn engines_agree_on_artinian_fixtures() {
    common::check_engine_agreement(100, 0xAC);
}

#[test]
fn normal_form_is_linear_and_idempotent() {
    common::check_normal_form_linearity(120, 0xAD);
}

#[test]
fn division_identity_holds() {
    common::check_division_identity(120, 0xAE);
}

#[test]
fn member_resolutions_are_entrywise_periodic() {
    common::check_member_period_entrywise(60, 0xAF);
}

#[test]
fn family_parameters_with_distinct_residues_separate() {
    common::check_family_separation(30, 0xB0);
}

#[test]
fn certificates_are_sound_against_brute_force() {
    common::check_certificate_soundness(1 << 20);
}
