macro_rules! example {
    ($m:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $m {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(polynomials, "polynomials.rs");
example!(killing_tensors, "killing_tensors.rs");
example!(symmetry_certificate, "symmetry_certificate.rs");
example!(ambient_induction, "ambient_induction.rs");
example!(composition_law, "composition_law.rs");
example!(gg_decomposition, "gg_decomposition.rs");
example!(counterexample, "counterexample.rs");
example!(enumerate_second_order, "enumerate_second_order.rs");

#[test]
fn examples_run() {
    polynomials::run_example().unwrap();
    killing_tensors::run_example().unwrap();
    symmetry_certificate::run_example().unwrap();
    ambient_induction::run_example().unwrap();
    composition_law::run_example().unwrap();
    gg_decomposition::run_example().unwrap();
    counterexample::run_example().unwrap();
    enumerate_second_order::run_example().unwrap();
}
