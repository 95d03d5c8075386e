// Exact polynomials and differential operators in normal form.

use bisym::rational::rat;
use bisym::weylop::MultiIndex;
use bisym::{DiffOp, Polynomial, VarSpace};

pub fn run_example() -> bisym::Result<()> {
    let s = VarSpace::base(3);
    let x1 = Polynomial::coord(s, 0);
    let x2 = Polynomial::coord(s, 1);
    let f = &(&x1.pow(3) + &x2.scale(&rat(2, 3))) * &x2;
    println!("f = {f}");
    println!("df/dx1 = {}", f.partial(0));

    // x1 ∂_2 composed with ∂_1: the Leibniz term appears in normal form
    let a = DiffOp::term(MultiIndex::unit(3, 1), x1.clone());
    let b = DiffOp::partial(s, 0);
    println!("(x1 d2)(d1) = {}", a.compose(&b));
    println!("(d1)(x1 d2) = {}", b.compose(&a));

    let lap = DiffOp::laplacian(s);
    println!("laplacian f = {}", lap.apply(&f));
    println!("operator JSON: {}", lap.to_json());
    Ok(())
}

#[allow(dead_code)]
fn main() -> bisym::Result<()> {
    run_example()
}
