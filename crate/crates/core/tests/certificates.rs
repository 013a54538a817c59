use dtopo::certificates as cert;
use dtopo::homotopy::{verify_contraction, verify_obstruction};
use dtopo::io;
use dtopo::motion::{
    verify_cat_witness, verify_tc_witness, verify_tcn_witness, PathAdjacency, SectionFailure,
};
use dtopo::reproduce::contraction_from;
use dtopo::{fixtures, DigitalImage};

fn image_for(name: &str) -> DigitalImage {
    let stem = name.split('_').next().unwrap();
    match (stem, name) {
        (_, "msc4_8_contraction" | "msc4_8_global") => fixtures::msc4(8),
        ("msc4", _) => fixtures::msc4(4),
        ("interval", _) => fixtures::interval(1),
        ("square", _) => fixtures::interval_power(1, 2),
        ("wedge", _) => fixtures::wedge_msc6p(),
        _ => fixtures::lookup(stem).unwrap(),
    }
}

/// Value each certificate certifies, or `None` for the one known to fail.
fn expected(name: &str) -> Option<usize> {
    match name {
        "theta_tc2" => None,
        n if n.ends_with("two_part") => Some(2),
        _ => Some(1),
    }
}

#[test]
fn every_shipped_certificate_checks_out() {
    for &name in cert::NAMES {
        let x = image_for(name);
        let text = cert::get(name).unwrap();
        let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
        let keyword = header.split_whitespace().next().unwrap();
        let got = match keyword {
            "homotopy" => {
                let c = contraction_from(&x, text).unwrap();
                verify_contraction(&c).map(|_| 1).map_err(|e| e.to_string())
            }
            "obstruction" => {
                let o = io::read_obstruction(&x, text).unwrap();
                Ok(if verify_obstruction(&x, &o) { 1 } else { 0 })
            }
            "cat" => {
                let w = io::read_cat_witness(&x, text).unwrap();
                verify_cat_witness(&x, &w).map_err(|e| e.to_string())
            }
            "cover" if header.contains("arity") => {
                let w = io::read_tcn_witness(&x, text).unwrap();
                verify_tcn_witness(&x, &w, PathAdjacency::Adjacent).map_err(|e| e.to_string())
            }
            "cover" => {
                let w = io::read_tc_witness(&x, text).unwrap();
                verify_tc_witness(&x, &w, PathAdjacency::Adjacent).map_err(|e| e.to_string())
            }
            other => panic!("{name}: unknown kind {other}"),
        };
        match expected(name) {
            Some(v) => assert_eq!(got, Ok(v), "{name}"),
            None => assert!(got.is_err(), "{name}"),
        }
    }
}

#[test]
fn figure_eight_certificate_fails_on_its_first_part() {
    let x = fixtures::theta();
    let w = io::read_tc_witness(&x, cert::THETA_TC2).unwrap();
    let e = verify_tc_witness(&x, &w, PathAdjacency::Adjacent).unwrap_err();
    assert_eq!(e.part, Some(0));
    assert!(matches!(e.failure, SectionFailure::Discontinuous { .. }));
    // the second part alone is a valid rule on alpha x alpha
    let tail = dtopo::motion::TcWitness {
        parts: vec![w.parts[1].clone()],
    };
    let e = verify_tc_witness(&x, &tail, PathAdjacency::Adjacent).unwrap_err();
    assert!(matches!(e.failure, SectionFailure::NotCovered { .. }));
}

#[test]
fn certificates_round_trip_through_the_writers() {
    let x = fixtures::ring8();
    let w = io::read_tc_witness(&x, cert::RING8_TWO_PART).unwrap();
    assert_eq!(
        io::read_tc_witness(&x, &io::write_tc_witness(&x, &w)).unwrap(),
        w
    );
    let sq = fixtures::interval_power(1, 2);
    let c = io::read_cat_witness(&sq, cert::SQUARE_CAT).unwrap();
    let again = io::read_cat_witness(&sq, &io::write_cat_witness(&sq, &c)).unwrap();
    assert_eq!(verify_cat_witness(&sq, &again), Ok(1));
}
