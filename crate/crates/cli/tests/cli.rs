use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dtopo::motion::GroupTable;
use dtopo::{fixtures, io};

fn dtopo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dtopo"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn certificate(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/certificates")
        .join(format!("{name}.txt"))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn cube_cohomology_golden() {
    let o = dtopo(&["reproduce", "prop2.2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("H^0 = Z\nH^1 = Z^5\n"), "{out}");
    assert!(out.ends_with("PASS\n"));
    assert_eq!(stdout(&dtopo(&["reproduce", "prop2.2"])), out);
}

#[test]
fn reproduce_reports_failures_with_status_one() {
    let o = dtopo(&["reproduce", "ex3.3"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("b_1 = 2"));
    assert!(out.ends_with("FAIL\n"));
    assert_eq!(dtopo(&["reproduce", "ex3.5"]).status.code(), Some(0));
    assert_eq!(dtopo(&["reproduce", "nope"]).status.code(), Some(2));
}

#[test]
fn genus_of_the_shipped_surfaces() {
    let o = dtopo(&["genus", "@genus2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "M3 = 8\nM4 = 174\nM5 = 16\nM6 = 0\ngenus = 2\n");
    assert!(stdout(&dtopo(&["genus", "@genus0"])).ends_with("genus = 0\n"));
}

#[test]
fn homology_and_betti() {
    assert_eq!(
        stdout(&dtopo(&["betti", "@theta", "--max-dim", "1"])),
        "b_0 = 1\nb_1 = 2\n"
    );
    let h = stdout(&dtopo(&["homology", "@msc4", "--coeff", "p2"]));
    assert!(h.starts_with("H_0 = F_2\nH_1 = F_2\n"), "{h}");
    let c = stdout(&dtopo(&[
        "cohomology",
        "@mss6",
        "--order",
        "p7 p4 p6 p5 p0 p3 p1 p2",
    ]));
    assert_eq!(c, "H^0 = Z\nH^1 = Z^5\n");
}

#[test]
fn malformed_files_exit_two_with_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.img");
    std::fs::write(&bad, "dim 2 adjacency 4\n0 0\n1 x\n").unwrap();
    let o = dtopo(&["info", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(dtopo(&["info", "@nope"]).status.code(), Some(2));
    assert_eq!(dtopo(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn product_and_wedge_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("square.img");
    assert!(
        dtopo(&["product", "@interval1", "@interval1", "-o", s(&out)])
            .status
            .success()
    );
    let x = io::read_image(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(x, fixtures::interval_power(1, 2));
    let w = dtopo(&["wedge", "@msc6p", "@msc6p", "--at", "0,0,0"]);
    assert_eq!(w.status.code(), Some(1));
}

#[test]
fn contraction_search_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("c.txt");
    let o = dtopo(&["contract-search", "@wedge_msc6p", "-o", s(&script)]);
    assert!(o.status.success());
    let v = dtopo(&[
        "verify-homotopy",
        "@wedge_msc6p",
        "@wedge_msc6p",
        s(&script),
        "--contraction",
    ]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    let shipped = certificate("wedge_contraction");
    let v = dtopo(&[
        "verify-homotopy",
        "@wedge_msc6p",
        "@wedge_msc6p",
        s(&shipped),
        "--contraction",
    ]);
    assert_eq!(stdout(&v), "contraction to (0,0,0) in 3 steps\n");
    assert_eq!(dtopo(&["contract-search", "@theta"]).status.code(), Some(1));
}

#[test]
fn tc_one_decision_writes_a_checkable_witness() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.txt");
    assert!(dtopo(&["tc1-decide", "@msc4_8", "-o", s(&w)])
        .status
        .success());
    assert_eq!(stdout(&dtopo(&["tc-bound", "@msc4_8", s(&w)])), "TC <= 1\n");
    let o = dtopo(&["tc1-decide", "@ring8"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn section_checks_on_the_figure_eight() {
    let cert = certificate("theta_tc2");
    let cover = dtopo(&["verify-cover", "@theta", s(&cert)]);
    assert_eq!(cover.status.code(), Some(0));
    let o = dtopo(&["verify-section", "@theta", s(&cert)]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("part 1: FAILED"));
    assert!(out.contains("part 2: ok"));
    let o = dtopo(&[
        "synthesize-section",
        "@theta",
        "--cover",
        s(&cert),
        "--part",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("no rule"));
}

#[test]
fn path_adjacency_switch() {
    let cert = certificate("theta_tc2");
    let o = dtopo(&[
        "tc-bound",
        "@theta",
        s(&cert),
        "--path-adjacency",
        "component",
    ]);
    assert_eq!(stdout(&o), "TC <= 2\n");
}

#[test]
fn three_fold_rules_on_the_unit_interval() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w3.txt");
    assert!(dtopo(&[
        "synthesize-section",
        "@interval1",
        "--arity",
        "3",
        "-o",
        s(&w)
    ])
    .status
    .success());
    assert_eq!(
        stdout(&dtopo(&["tcn-verify", "@interval1", s(&w)])),
        "TC_3 <= 1\n"
    );
    let shipped = certificate("interval_tc3");
    assert_eq!(
        stdout(&dtopo(&[
            "tcn-verify",
            "@interval1",
            s(&shipped),
            "--sequential"
        ])),
        "TC_3 <= 1\n"
    );
}

#[test]
fn group_law_and_category_bound() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("xor.txt");
    std::fs::write(
        &g,
        io::write_group(&fixtures::interval(1), &GroupTable::cyclic(2)),
    )
    .unwrap();
    let o = dtopo(&["group-check", "@interval1", s(&g)]);
    assert_eq!(stdout(&o), "continuous group law\n");
    let cat = certificate("square_cat");
    let o = dtopo(&[
        "group-check",
        "@interval1",
        s(&g),
        "--n",
        "3",
        "--cat",
        s(&cat),
    ]);
    assert_eq!(stdout(&o), "TC_3 <= 1\n");
    let o = dtopo(&["cat-verify", "@interval1^2", s(&cat)]);
    assert_eq!(stdout(&o), "cat <= 1\n");
    let h = fixtures::interval(2);
    std::fs::write(&g, io::write_group(&h, &GroupTable::cyclic(3))).unwrap();
    assert_eq!(
        dtopo(&["group-check", "@interval2", s(&g)]).status.code(),
        Some(1)
    );
}

#[test]
fn induced_maps() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("diag.txt");
    std::fs::write(&m, "0 -> 0,0,0\n1 -> 1,1,1\n").unwrap();
    let o = dtopo(&["induced-map", "@interval1", "@mss6", s(&m)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not digitally continuous"));
    let o = dtopo(&["induced-map", "@interval1", "@interval1^3", s(&m)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("H^1: source dim 0"));
}

#[test]
fn exports() {
    let obj = stdout(&dtopo(&["export-obj", "@mss6"]));
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 27);
    assert!(obj.lines().any(|l| l.starts_with("f ")));
    let csv = stdout(&dtopo(&["export-obj", "@msc4", "--csv"]));
    assert_eq!(csv, "0,0\n0,1\n1,0\n1,1\n");
}

#[test]
fn cup_products() {
    assert_eq!(stdout(&dtopo(&["cup", "@mss6"])), "cup length: 1\n");
    let o = dtopo(&["cup", "@mss6", "--left", "1:0", "--right", "1:9"]);
    assert_eq!(o.status.code(), Some(2));
}
