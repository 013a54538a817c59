//! Property checks shared by the proptest suite and the acceptance run.
//! Each check drives a seeded proptest runner and reports the first
//! counterexample as an error string.

use std::collections::BTreeSet;

use dtopo::homology::{betti_numbers, clique_complex, smith_normal_form, IntMatrix, Matrix};
use dtopo::homotopy::{
    find_contraction, find_obstruction, verify_contraction, verify_obstruction, ContractionSearch,
};
use dtopo::io;
use dtopo::motion::{
    all_tuples, synthesize_section, tc_is_one, verify_section, verify_tc_witness, PathAdjacency,
    SynthesisOptions, TcOne,
};
use dtopo::{fixtures, AdjacencyKind, DigitalImage, Point};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub type Check = std::result::Result<(), String>;

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S, F>(cases: u32, strategy: S, test: F) -> Check
where
    S: Strategy,
    S::Value: std::fmt::Debug,
    F: Fn(S::Value) -> std::result::Result<(), TestCaseError>,
{
    runner(cases)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

fn grid_points(dim: usize, max: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec(prop::collection::vec(0i64..4, dim), 1..=max).prop_map(|v| {
        v.into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .map(Point::new)
            .collect()
    })
}

/// Images of at most `max` points under every c_k adjacency in dimensions
/// one to three.
pub fn grid_image(max: usize) -> impl Strategy<Value = DigitalImage> {
    (1usize..=3)
        .prop_flat_map(move |dim| (Just(dim), 1..=dim, grid_points(dim, max)))
        .prop_map(|(dim, k, pts)| {
            DigitalImage::new(AdjacencyKind::new(dim, k).unwrap(), pts).unwrap()
        })
}

/// Images with an arbitrary explicit edge relation.
pub fn edge_image(max: usize) -> impl Strategy<Value = DigitalImage> {
    (1usize..=max)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..=3 * n)))
        .prop_map(|(n, pairs)| {
            let pt = |i: usize| Point::from([i as i64]);
            let entries = (0..n).map(|i| (pt(i), None)).collect();
            let edges: Vec<(Point, Point)> = pairs
                .into_iter()
                .filter(|(a, b)| a != b)
                .map(|(a, b)| (pt(a), pt(b)))
                .collect();
            DigitalImage::from_edges(1, entries, &edges).unwrap()
        })
}

pub fn any_image(max: usize) -> impl Strategy<Value = DigitalImage> {
    prop_oneof![3 => grid_image(max), 1 => edge_image(max)]
}

/// Images whose adjacency has no triangles: c_1 in any dimension.
pub fn triangle_free_image(max: usize) -> impl Strategy<Value = DigitalImage> {
    (1usize..=3)
        .prop_flat_map(move |dim| (Just(dim), grid_points(dim, max)))
        .prop_map(|(dim, pts)| DigitalImage::new(AdjacencyKind::new(dim, 1).unwrap(), pts).unwrap())
}

pub fn boundary_squares_to_zero(cases: u32) -> Check {
    run(cases, any_image(20), |x| {
        let k = clique_complex(&x);
        for q in 1..=k.top_dim() {
            let prod = k
                .boundary(q)
                .unwrap()
                .mul(&k.boundary(q + 1).unwrap())
                .unwrap();
            prop_assert!(prod.is_zero(), "d{} d{} != 0 on {:?}", q, q + 1, x.points());
        }
        Ok(())
    })
}

fn sparse_matrix(max: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max)
        .prop_flat_map(|(r, c)| {
            prop::collection::vec(
                prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -4i64..=4], c),
                r,
            )
        })
        .prop_map(|rows| IntMatrix::from_rows(rows).unwrap())
}

/// Determinant by fraction-free elimination.
pub fn determinant(m: &Matrix<BigInt>) -> BigInt {
    let n = m.rows();
    let mut a: Vec<Vec<BigInt>> = m.to_rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn smith_form_postconditions(cases: u32) -> Check {
    run(cases, sparse_matrix(30), |a| {
        let s = smith_normal_form(&a);
        let (u, v) = (s.u.as_ref().unwrap(), s.v.as_ref().unwrap());
        let uav = u.clone();
        let uav = multiply(&multiply(&uav, &a.to_big()), v);
        prop_assert_eq!(&uav, &s.d);
        prop_assert_eq!(determinant(u).abs(), BigInt::one());
        prop_assert_eq!(determinant(v).abs(), BigInt::one());
        let (r, c) = s.d.shape();
        for i in 0..r {
            for j in 0..c {
                let e = s.d.get(i, j);
                if i != j || i >= s.rank {
                    prop_assert!(e.is_zero());
                } else {
                    prop_assert!(e.is_positive());
                }
            }
        }
        for i in 1..s.rank {
            prop_assert!((s.d.get(i, i) % s.d.get(i - 1, i - 1)).is_zero());
        }
        Ok(())
    })
}

fn multiply(a: &Matrix<BigInt>, b: &Matrix<BigInt>) -> Matrix<BigInt> {
    let rows = (0..a.rows())
        .map(|i| {
            (0..b.cols())
                .map(|j| (0..a.cols()).map(|k| a.get(i, k) * b.get(k, j)).sum())
                .collect()
        })
        .collect();
    Matrix::from_rows(rows).unwrap()
}

/// Signed coordinate permutation followed by a translation.
fn isometry(dim: usize) -> impl Strategy<Value = (Vec<usize>, Vec<bool>, Vec<i64>)> {
    (
        Just((0..dim).collect::<Vec<_>>()).prop_shuffle(),
        prop::collection::vec(any::<bool>(), dim),
        prop::collection::vec(-5i64..=5, dim),
    )
}

pub fn isometry_fixtures() -> Vec<(&'static str, DigitalImage)> {
    vec![
        ("mss6", fixtures::mss6()),
        ("msc4", fixtures::msc4(4)),
        ("msc4_8", fixtures::msc4(8)),
        ("wedge_msc6p", fixtures::wedge_msc6p()),
        ("theta", fixtures::theta()),
        ("ring8", fixtures::ring8()),
        ("hexcurve6", fixtures::hex_curve6()),
        ("interval1^2", fixtures::interval_power(1, 2)),
        ("genus1", fixtures::genus1()),
    ]
}

pub fn betti_invariant_under_isometries(per_fixture: u32) -> Check {
    for (name, x) in isometry_fixtures() {
        let want = betti_numbers(&x, 2);
        run(per_fixture, isometry(x.dim()), |(perm, flip, shift)| {
            let y = x
                .map_points(|p| {
                    let c = p.coords();
                    Point::new(
                        (0..c.len())
                            .map(|i| if flip[i] { -c[perm[i]] } else { c[perm[i]] } + shift[i])
                            .collect::<Vec<_>>(),
                    )
                })
                .unwrap();
            prop_assert_eq!(y.edge_count(), x.edge_count());
            prop_assert_eq!(betti_numbers(&y, 2), want.clone());
            Ok(())
        })
        .map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

pub fn first_betti_of_graphs(cases: u32) -> Check {
    run(cases, triangle_free_image(20), |x| {
        let (e, v, c) = (x.edge_count(), x.len(), x.components().len());
        prop_assert_eq!(betti_numbers(&x, 1)[1], e + c - v);
        Ok(())
    })
}

fn small_connected(max: usize) -> impl Strategy<Value = DigitalImage> {
    grid_image(max).prop_filter("connected", |x| x.is_connected())
}

pub fn searched_certificates_reverify(cases: u32) -> Check {
    run(cases, small_connected(7), |x| {
        let contraction = find_contraction(&x, 32, 200_000);
        if let ContractionSearch::Found(c) = &contraction {
            prop_assert!(verify_contraction(c).is_ok());
        }
        if let Some(o) = find_obstruction(&x, 200_000) {
            prop_assert!(verify_obstruction(&x, &o));
            prop_assert!(!contraction.is_found());
        }
        let opts = SynthesisOptions::default();
        match tc_is_one(&x, &opts) {
            TcOne::Yes(w) => {
                prop_assert_eq!(verify_tc_witness(&x, &w, PathAdjacency::Adjacent), Ok(1))
            }
            TcOne::No(_) => prop_assert!(!contraction.is_found()),
            TcOne::Unknown => {}
        }
        let members: Vec<Vec<usize>> = all_tuples(&x, 2)
            .into_iter()
            .filter(|u| u[0] <= u[1])
            .collect();
        if let Some(rules) = synthesize_section(&x, &members, &opts).found() {
            prop_assert!(verify_section(&x, &members, &rules, PathAdjacency::Adjacent).is_ok());
        }
        Ok(())
    })
}

pub fn serialization_round_trips(cases: u32) -> Check {
    run(cases, any_image(20), |x| {
        let back = io::read_image(&io::write_image(&x)).unwrap();
        prop_assert_eq!(&back, &x);
        let table: Vec<usize> = (0..x.len()).map(|i| (i * 7 + 3) % x.len()).collect();
        prop_assert_eq!(
            io::read_map(&x, &x, &io::write_map(&x, &x, &table)).unwrap(),
            table
        );
        if x.is_connected() && x.len() <= 8 {
            if let ContractionSearch::Found(c) = find_contraction(&x, 32, 100_000) {
                let w = dtopo::motion::section_from_contraction(&c);
                prop_assert_eq!(
                    io::read_tc_witness(&x, &io::write_tc_witness(&x, &w)).unwrap(),
                    w
                );
                let w3 = dtopo::motion::spider_rule_from_contraction(&c, 3);
                prop_assert_eq!(
                    io::read_tcn_witness(&x, &io::write_tcn_witness(&x, &w3)).unwrap(),
                    w3
                );
                let text =
                    io::write_script(&x, &x, &(0..x.len()).collect::<Vec<_>>(), c.script.steps());
                let s = io::read_script(&x, &x, &text).unwrap();
                prop_assert_eq!(s.full_tables(x.len()).unwrap(), c.script.steps().to_vec());
            }
            if let Some(o) = find_obstruction(&x, 100_000) {
                prop_assert_eq!(
                    io::read_obstruction(&x, &io::write_obstruction(&x, &o)).unwrap(),
                    o
                );
            }
        }
        Ok(())
    })
}

/// One shrunk value, for smoke-testing the strategies.
#[allow(dead_code)]
pub fn sample<S: Strategy>(s: S) -> S::Value {
    s.new_tree(&mut runner(1)).unwrap().current()
}
