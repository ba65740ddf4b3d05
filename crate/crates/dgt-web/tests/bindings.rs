use dgt_web::{hyper, report, zlattice};

#[test]
fn exports_return_json() {
    assert_eq!(hyper("s^2 - 5*s + 6", "", false), r#"{"certificates":["2","3"]}"#);
    assert_eq!(zlattice("t\nx\nx + t\n", 1, "t"), r#"{"lattice":[],"dim":0}"#);
    let sys = r#"{"parameters": ["t"], "matrix": [["t","0"],["0","x+t"]]}"#;
    let out = report(sys, "t = 3");
    assert!(out.starts_with(r#"{"verdict":"preserved""#), "{out}");
    let out = report(sys, "t=-1");
    assert!(out.starts_with(r#"{"verdict":"degenerated","witness":[2,0]"#), "{out}");
}

#[test]
fn errors_are_json() {
    let out = hyper("s +", "", false);
    assert!(out.starts_with(r#"{"error":"SyntaxError""#), "{out}");
    let out = report("{", "t=1");
    assert!(out.starts_with(r#"{"error":"InvalidInput""#), "{out}");
}
