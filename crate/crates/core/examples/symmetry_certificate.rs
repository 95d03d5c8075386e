// A second-order symmetry of the bilaplacian and the operator δ with
// Δ² D = δ Δ².

use bisym::suite::{bilaplacian_weight, symmetry_certificate};
use bisym::symalg::{canonical_dv, flat_cartan_product, LieElement};

pub fn run_example() -> bisym::Result<()> {
    let n = 3;
    let w = bilaplacian_weight(n);
    let x = LieElement::dilation(n).vector_field();
    let y = LieElement::inversion(n, 0).vector_field();
    let v = flat_cartan_product(&x, &y);
    println!("V = {v}");
    let d = canonical_dv(&v, &w)?;
    println!("D_V = {}", d.op);
    match symmetry_certificate(&d.op) {
        Some(delta) => println!("delta = {delta}"),
        None => println!("not a symmetry"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> bisym::Result<()> {
    run_example()
}
