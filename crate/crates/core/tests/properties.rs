mod common;

use common::props;

#[test]
fn boundary_squares_to_zero() {
    props::boundary_squares_to_zero(200).unwrap();
}

#[test]
fn smith_form_postconditions() {
    props::smith_form_postconditions(200).unwrap();
}

#[test]
fn betti_numbers_are_isometry_invariant() {
    props::betti_invariant_under_isometries(50).unwrap();
}

#[test]
fn first_betti_number_of_triangle_free_images() {
    props::first_betti_of_graphs(200).unwrap();
}

#[test]
fn searched_certificates_reverify() {
    props::searched_certificates_reverify(200).unwrap();
}

#[test]
fn serialization_round_trips() {
    props::serialization_round_trips(200).unwrap();
}

#[test]
fn determinant_oracle() {
    let m =
        dtopo::homology::IntMatrix::from_rows(vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]])
            .unwrap();
    assert_eq!(props::determinant(&m.to_big()), 18.into());
    let s = props::sample(props::grid_image(5));
    assert!(!s.is_empty());
}
