mod common;

#[test]
fn ring_axioms_over_several_conductors() {
    for n in [5, 8, 12, 24] {
        common::check_ring_axioms(n, 1000).unwrap();
    }
}

#[test]
fn promotion_is_a_homomorphism() {
    common::check_promotion_homomorphism(300).unwrap();
}

#[test]
fn conjugation_is_an_involutive_automorphism() {
    common::check_conjugation(300).unwrap();
}

#[test]
fn matrix_inverse_power_and_commutator_laws() {
    common::check_matrix_laws(200).unwrap();
}

#[test]
fn braid_relation_holds_for_every_constructed_rep() {
    common::check_braid_relation_all().unwrap();
}

#[test]
fn projective_order_ignores_scaling() {
    common::check_po_scaling(500).unwrap();
}

#[test]
fn central_scalar_scales_by_sixth_power() {
    common::check_central_scalar_scaling(200).unwrap();
}
