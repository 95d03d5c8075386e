use std::path::Path;
use std::process::Command;

use bisym::cktsolve::KillingBasis;
use bisym::symalg::LieElement;
use bisym::tensorcalc::SymTensorField;
use bisym::{DiffOp, Polynomial, VarSpace};
use serde_json::Value;

fn bisym(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bisym")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write_json(path: &Path, v: &Value) {
    std::fs::write(path, serde_json::to_string(v).unwrap()).unwrap();
}

#[test]
fn basis_file_is_deterministic_and_parses() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let (code, _, err) = bisym(&["basis", "--n", "3", "--s", "1", "--kind", "ckt", "--out", p.to_str().unwrap()]);
        assert_eq!(code, 0, "{err}");
    }
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    let basis = KillingBasis::from_json(&serde_json::from_slice(&bytes).unwrap()).unwrap();
    assert_eq!(basis.dimension(), 10);
    assert_eq!(KillingBasis::from_json(&basis.to_json()).unwrap(), basis);
}

#[test]
fn gckt_scalar_basis() {
    let (code, out, _) = bisym(&["basis", "--n", "3", "--t", "0", "--kind", "gckt"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dimension"], 14);
}

#[test]
fn build_op_with_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("dilation.json");
    write_json(&input, &LieElement::dilation(3).vector_field().to_json());
    let (code, out, err) = bisym(&["build-op", "--kind", "dv", "--input", input.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["weight"], "1/2");
    let op = DiffOp::from_json(&v["operator"]).unwrap();
    let delta = DiffOp::from_json(&v["certificate"]).unwrap();
    let l2 = DiffOp::bilaplacian(VarSpace::base(3));
    assert_eq!(delta.compose(&l2), l2.compose(&op));
}

#[test]
fn build_op_constant_w() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("w.json");
    let b = VarSpace::base(3);
    write_json(&input, &SymTensorField::scalar(3, Polynomial::from_int(b, 2)).to_json());
    let (code, out, _) = bisym(&["build-op", "--kind", "dw", "--input", input.to_str().unwrap(), "--w", "3/7"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let op = DiffOp::from_json(&v["operator"]).unwrap();
    assert_eq!(op, DiffOp::laplacian(b).scale(&bisym::rational::int(2)));
    assert!(v.get("certificate").is_none());
}

#[test]
fn build_op_rejects_non_killing() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.json");
    let b = VarSpace::base(3);
    let mut v = SymTensorField::zero(3, 1);
    v.set(&[0], Polynomial::coord(b, 0).pow(2));
    write_json(&input, &v.to_json());
    let (code, _, err) = bisym(&["build-op", "--kind", "dv", "--input", input.to_str().unwrap()]);
    assert_eq!(code, 4, "{err}");
    assert!(err.contains("residual"), "{err}");
}

#[test]
fn missing_input_is_io_error() {
    let (code, _, _) = bisym(&["build-op", "--kind", "dv", "--input", "/nonexistent/t.json"]);
    assert_eq!(code, 3);
}

#[test]
fn verify_counterexample_suite() {
    let (code, out, _) = bisym(&["verify", "--suite", "counterexample", "--n", "3", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["failed"], 0);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["check"] == "counterexample.unit.mixed_trace_multiple"));
    for c in checks {
        assert_eq!(c["status"], "pass");
        assert_eq!(c["n"], 3);
    }
}

#[test]
fn verify_rejects_small_n() {
    assert_eq!(bisym(&["verify", "--n", "2"]).0, 2);
}
